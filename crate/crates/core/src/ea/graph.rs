use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::rees::{FiniteGroup, ReesMatrixSemigroup, Sandwich};
use super::EaError;

/// A vertex of the incidence graph: an index into `A` or into `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    A(usize),
    B(usize),
}

/// Edge `(b, a)` for a non-zero sandwich entry, labelled `C(b, a)`.
/// Traversed from `a` to `b` it reads `C(b, a)⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub b: usize,
    pub a: usize,
    pub label: usize,
}

/// Bipartite graph on `A ⊎ B` with group-labelled edges in `b`-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    a_count: usize,
    b_count: usize,
    edges: Vec<Edge>,
    group: FiniteGroup,
}

impl IncidenceGraph {
    pub fn new(r: &ReesMatrixSemigroup) -> Self {
        let (a_count, b_count) = (r.a_indices().len(), r.b_indices().len());
        let mut edges = Vec::new();
        for b in 0..b_count {
            for a in 0..a_count {
                if let Sandwich::Group(label) = r.sandwich(b, a) {
                    edges.push(Edge { b, a, label });
                }
            }
        }
        IncidenceGraph { a_count, b_count, edges, group: r.group().clone() }
    }

    /// A graph with the given edges; labels must be group indices.
    pub fn from_edges(a_count: usize, b_count: usize, edges: Vec<Edge>, group: FiniteGroup) -> Self {
        debug_assert!(edges.iter().all(|e| e.a < a_count && e.b < b_count && e.label < group.order()));
        IncidenceGraph { a_count, b_count, edges, group }
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    pub fn vertex_count(&self) -> usize {
        self.a_count + self.b_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Dense vertex number: `A` first, then `B`.
    pub fn vertex_id(&self, v: Vertex) -> usize {
        match v {
            Vertex::A(a) => a,
            Vertex::B(b) => self.a_count + b,
        }
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        if id < self.a_count {
            Vertex::A(id)
        } else {
            Vertex::B(id - self.a_count)
        }
    }

    /// Label read when walking `edge` starting at `from`.
    pub fn label_from(&self, edge: &Edge, from: Vertex) -> usize {
        if from == Vertex::B(edge.b) {
            edge.label
        } else {
            self.group.inv(edge.label)
        }
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `x` and `y`; false if they were already one.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut x, mut y) = (self.find(x), self.find(y));
        if x == y {
            return false;
        }
        if self.size[x] < self.size[y] {
            core::mem::swap(&mut x, &mut y);
        }
        self.parent[y] = x;
        self.size[x] += self.size[y];
        true
    }
}

/// Order in which edges are offered to the forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeOrder {
    /// `b`-major, then `a`.
    Lexicographic,
    Reversed,
    /// A permutation of edge indices.
    Custom(Vec<usize>),
}

/// Greedy spanning forest: an edge is kept iff its endpoints are not yet
/// connected by earlier edges. Returns kept edge indices, ascending.
pub fn spanning_forest(ig: &IncidenceGraph, order: &EdgeOrder) -> Vec<usize> {
    let m = ig.edges.len();
    let sequence: Vec<usize> = match order {
        EdgeOrder::Lexicographic => (0..m).collect(),
        EdgeOrder::Reversed => (0..m).rev().collect(),
        EdgeOrder::Custom(p) => {
            assert!(
                p.len() == m && {
                    let mut seen = vec![false; m];
                    p.iter().all(|&i| i < m && !core::mem::replace(&mut seen[i], true))
                },
                "custom edge order must be a permutation"
            );
            p.clone()
        }
    };
    let mut dsu = DisjointSets::new(ig.vertex_count());
    let mut kept: Vec<usize> = sequence
        .into_iter()
        .filter(|&i| {
            let e = ig.edges[i];
            dsu.union(ig.vertex_id(Vertex::B(e.b)), ig.vertex_id(Vertex::A(e.a)))
        })
        .collect();
    kept.sort_unstable();
    kept
}

/// A non-forest edge whose cycle has a non-trivial label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleFailure {
    pub bridge: Edge,
    /// Closed walk starting and ending at `B(bridge.b)`: the bridge, then
    /// the forest path back.
    pub cycle: Vec<Vertex>,
    /// Product of the labels along `cycle`.
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub bridges: usize,
    pub failure: Option<CycleFailure>,
}

impl CycleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that every cycle closed by a non-forest edge has label 1.
///
/// Each tree is rooted at its least vertex with potential 1; walking a tree
/// edge multiplies by its label, and a bridge `(b, a)` passes iff
/// `pot(b) C(b, a) = pot(a)`. The first failing bridge in edge order is
/// reported.
pub fn cycle_check(ig: &IncidenceGraph, forest: &[usize]) -> Result<CycleReport, EaError> {
    let nv = ig.vertex_count();
    let m = ig.edges.len();
    let mut in_forest = vec![false; m];
    let mut dsu = DisjointSets::new(nv);
    for &i in forest {
        if i >= m || in_forest[i] {
            return Err(EaError::NotAForest);
        }
        in_forest[i] = true;
        let e = ig.edges[i];
        if !dsu.union(ig.vertex_id(Vertex::B(e.b)), ig.vertex_id(Vertex::A(e.a))) {
            return Err(EaError::NotAForest);
        }
    }
    // spanning: every other edge must stay inside one tree
    for (i, e) in ig.edges.iter().enumerate() {
        if !in_forest[i] && dsu.find(ig.vertex_id(Vertex::B(e.b))) != dsu.find(ig.vertex_id(Vertex::A(e.a))) {
            return Err(EaError::NotAForest);
        }
    }

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &i in forest {
        let e = ig.edges[i];
        adjacency[ig.vertex_id(Vertex::B(e.b))].push(i);
        adjacency[ig.vertex_id(Vertex::A(e.a))].push(i);
    }
    let group = &ig.group;
    let mut pot = vec![usize::MAX; nv];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut depth = vec![0usize; nv];
    for root in 0..nv {
        if pot[root] != usize::MAX {
            continue;
        }
        pot[root] = group.identity();
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &i in &adjacency[u] {
                let e = ig.edges[i];
                let (ub, ua) = (ig.vertex_id(Vertex::B(e.b)), ig.vertex_id(Vertex::A(e.a)));
                let v = if u == ub { ua } else { ub };
                if pot[v] != usize::MAX {
                    continue;
                }
                pot[v] = group.mul(pot[u], ig.label_from(&e, ig.vertex(u)));
                parent[v] = Some((u, i));
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }

    let mut bridges = 0;
    let mut failure = None;
    for (i, e) in ig.edges.iter().enumerate() {
        if in_forest[i] {
            continue;
        }
        bridges += 1;
        let (vb, va) = (ig.vertex_id(Vertex::B(e.b)), ig.vertex_id(Vertex::A(e.a)));
        if failure.is_none() && group.mul(pot[vb], e.label) != pot[va] {
            // cycle label read from b: C(b, a) pot(a)^-1 pot(b)
            let label = group.mul(group.mul(e.label, group.inv(pot[va])), pot[vb]);
            let cycle = tree_path(&parent, &depth, va, vb)
                .into_iter()
                .map(|v| ig.vertex(v));
            let mut walk = vec![Vertex::B(e.b)];
            walk.extend(cycle);
            failure = Some(CycleFailure { bridge: *e, cycle: walk, label });
        }
    }
    Ok(CycleReport { bridges, failure })
}

// Vertices on the tree path from `u` to `v`, both included.
fn tree_path(parent: &[Option<(usize, usize)>], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut x, mut y) = (u, v);
    let mut up = vec![x];
    let mut down = vec![y];
    while depth[x] > depth[y] {
        x = parent[x].expect("non-root").0;
        up.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y].expect("non-root").0;
        down.push(y);
    }
    while x != y {
        x = parent[x].expect("non-root").0;
        y = parent[y].expect("non-root").0;
        up.push(x);
        down.push(y);
    }
    down.pop();
    up.extend(down.into_iter().rev());
    up
}
