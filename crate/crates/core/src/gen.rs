//! Instance generators: the reachability reduction, random transformation
//! semigroups and DFA transition semigroups.
//!
//! Maps compose left to right: `(f g)(x) = g(f(x))`, so a word acts on a
//! state the way a DFA reads it.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Element, PartialGroupoid};

pub const DEFAULT_SIZE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("closure exceeds {cap} elements")]
    SizeCap { cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Simple undirected graph on vertices `0..v` with two distinguished,
/// distinct, non-adjacent vertices `s` and `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    v: usize,
    edges: BTreeSet<(usize, usize)>,
    s: usize,
    t: usize,
}

impl UndirectedGraph {
    pub fn new(
        v: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        s: usize,
        t: usize,
    ) -> Result<Self, GenError> {
        let bad = |m: String| Err(GenError::InvalidGraph(m));
        if s >= v || t >= v {
            return bad(format!("s = {s} or t = {t} is not a vertex of 0..{v}"));
        }
        if s == t {
            return bad(String::from("s and t must differ"));
        }
        let mut set = BTreeSet::new();
        for (x, y) in edges {
            if x >= v || y >= v {
                return bad(format!("edge ({x}, {y}) leaves 0..{v}"));
            }
            if x == y {
                return bad(format!("loop at {x}"));
            }
            set.insert((x.min(y), x.max(y)));
        }
        if set.contains(&(s.min(t), s.max(t))) {
            return bad(String::from("s and t must not be adjacent"));
        }
        Ok(UndirectedGraph { v, edges: set, s, t })
    }

    /// Each pair is an edge with probability `p`; `s` and `t` are drawn
    /// among the non-adjacent pairs, redrawing the edges if there is none.
    pub fn random<R: Rng + ?Sized>(v: usize, p: f64, rng: &mut R) -> Result<Self, GenError> {
        if v < 2 {
            return Err(GenError::InvalidParameters(String::from("need at least two vertices")));
        }
        if !(0.0..1.0).contains(&p) {
            return Err(GenError::InvalidParameters(format!("edge probability {p} not in [0, 1)")));
        }
        loop {
            let mut edges = Vec::new();
            let mut free = Vec::new();
            for x in 0..v {
                for y in x + 1..v {
                    if rng.random_bool(p) {
                        edges.push((x, y));
                    } else {
                        free.push((x, y));
                    }
                }
            }
            if free.is_empty() {
                continue;
            }
            let (x, y) = free[rng.random_range(0..free.len())];
            let (s, t) = if rng.random_bool(0.5) { (x, y) } else { (y, x) };
            return UndirectedGraph::new(v, edges, s, t);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    /// Edges as `(min, max)` pairs, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x.min(y), x.max(y)))
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Whether `t` is reachable from `s`.
    pub fn s_reaches_t(&self) -> bool {
        let mut seen = vec![false; self.v];
        let mut queue = VecDeque::from([self.s]);
        seen[self.s] = true;
        while let Some(x) = queue.pop_front() {
            for y in 0..self.v {
                if !seen[y] && self.has_edge(x, y) {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen[self.t]
    }
}

/// Rees matrix semigroup over `C₂ = {1, a}` with index sets `V` on both
/// sides and sandwich `C(v, w) = 1` if `v = w` or `{v, w}` is an edge,
/// `a` if `{v, w} = {s, t}`, zero otherwise. It lies in the class of
/// semigroups with aperiodic idempotent-generated part iff `t` is not
/// reachable from `s`.
#[derive(Clone, Debug)]
pub struct GrahamSemigroup {
    pub groupoid: PartialGroupoid,
    v: usize,
}

impl GrahamSemigroup {
    /// Id of `(v, g, w)` with `g = 0` for 1 and `g = 1` for `a`.
    pub fn element(&self, v: usize, g: usize, w: usize) -> Element {
        1 + (v * 2 + g) * self.v + w
    }

    pub fn zero(&self) -> Element {
        2 * self.v * self.v + 1
    }

    /// Inverse of [`element`](Self::element); `None` for zero.
    pub fn coordinates(&self, x: Element) -> Option<(usize, usize, usize)> {
        if x == self.zero() {
            return None;
        }
        let k = x - 1;
        Some((k / (2 * self.v), (k / self.v) % 2, k % self.v))
    }
}

pub fn graham_semigroup(g: &UndirectedGraph) -> GrahamSemigroup {
    let v = g.vertex_count();
    let st = (g.s.min(g.t), g.s.max(g.t));
    let sandwich = |x: usize, y: usize| -> Option<usize> {
        if x == y || g.has_edge(x, y) {
            Some(0)
        } else if (x.min(y), x.max(y)) == st {
            Some(1)
        } else {
            None
        }
    };
    let zero = 2 * v * v + 1;
    let split = |x: usize| {
        let k = x - 1;
        (k / (2 * v), (k / v) % 2, k % v)
    };
    let groupoid = PartialGroupoid::from_fn(zero, |x, y| {
        if x == zero || y == zero {
            return Some(zero);
        }
        let (v1, g1, w1) = split(x);
        let (v2, g2, w2) = split(y);
        Some(match sandwich(w1, v2) {
            Some(c) => 1 + (v1 * 2 + (g1 + c + g2) % 2) * v + w2,
            None => zero,
        })
    })
    .expect("valid table");
    debug_assert!(groupoid.is_associative());
    GrahamSemigroup { groupoid, v }
}

/// A semigroup of self-maps of `0..k` with its elements' maps.
#[derive(Clone, Debug)]
pub struct TransformationSemigroup {
    pub groupoid: PartialGroupoid,
    /// `maps[i]` is the map of element `i + 1`.
    pub maps: Vec<Vec<usize>>,
    /// Element of each generator, in input order.
    pub generators: Vec<Element>,
}

/// Closes `gens` (maps of `0..k`, given as value lists) under composition.
/// Elements are numbered in discovery order: distinct generators first,
/// then breadth-first by right multiplication with generators.
pub fn transformation_semigroup(
    gens: &[Vec<usize>],
    cap: usize,
) -> Result<TransformationSemigroup, GenError> {
    let Some(k) = gens.first().map(Vec::len) else {
        return Err(GenError::InvalidParameters(String::from("no generators")));
    };
    if k == 0 || gens.iter().any(|g| g.len() != k || g.iter().any(|&x| x >= k)) {
        return Err(GenError::InvalidParameters(format!("generators must map 0..{k} into itself")));
    }
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    // how each non-generator element was found: element * generator
    let mut origin: Vec<Option<(usize, usize)>> = Vec::new();
    let mut gen_ids: Vec<usize> = Vec::new();
    let mut distinct_gens: Vec<usize> = Vec::new();
    for g in gens {
        let id = match index.get(g) {
            Some(&i) => i,
            None => {
                if maps.len() == cap {
                    return Err(GenError::SizeCap { cap });
                }
                index.insert(g.clone(), maps.len());
                maps.push(g.clone());
                origin.push(None);
                distinct_gens.push(maps.len() - 1);
                maps.len() - 1
            }
        };
        gen_ids.push(id);
    }
    let m = distinct_gens.len();
    let mut right: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < maps.len() {
        for (j, &g) in distinct_gens.iter().enumerate() {
            let product: Vec<usize> = maps[i].iter().map(|&x| maps[g][x]).collect();
            let id = match index.get(&product) {
                Some(&id) => id,
                None => {
                    if maps.len() == cap {
                        return Err(GenError::SizeCap { cap });
                    }
                    index.insert(product.clone(), maps.len());
                    maps.push(product);
                    origin.push(Some((i, j)));
                    maps.len() - 1
                }
            };
            right.push(id);
        }
        i += 1;
    }
    let n = maps.len();
    let gen_slot: BTreeMap<usize, usize> = distinct_gens.iter().enumerate().map(|(j, &g)| (g, j)).collect();
    // x * y = (x * p) * g when y was found as p * g
    let mut table = vec![0usize; n * n];
    for y in 0..n {
        for x in 0..n {
            table[x * n + y] = match origin[y] {
                None => right[x * m + gen_slot[&y]],
                Some((p, j)) => right[table[x * n + p] * m + j],
            };
        }
    }
    let groupoid =
        PartialGroupoid::from_flat(n, table.into_iter().map(|v| v + 1).collect()).expect("valid table");
    Ok(TransformationSemigroup {
        groupoid,
        maps,
        generators: gen_ids.into_iter().map(|g| g + 1).collect(),
    })
}

/// `m` uniformly random self-maps of `0..k`, closed under composition.
/// Deterministic in `seed`.
pub fn random_transformation_semigroup(
    k: usize,
    m: usize,
    seed: u64,
    cap: usize,
) -> Result<TransformationSemigroup, GenError> {
    if k == 0 || m == 0 {
        return Err(GenError::InvalidParameters(String::from("need k >= 1 and m >= 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens: Vec<Vec<usize>> = (0..m).map(|_| (0..k).map(|_| rng.random_range(0..k)).collect()).collect();
    transformation_semigroup(&gens, cap)
}

/// Complete deterministic automaton; states are `0..states`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    states: usize,
    letters: Vec<char>,
    /// `delta[l][q]`: successor of state `q` under letter `l`.
    delta: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn new(states: usize, letters: Vec<char>, delta: Vec<Vec<usize>>) -> Result<Self, GenError> {
        let bad = |m: String| Err(GenError::InvalidParameters(m));
        if states == 0 || letters.is_empty() {
            return bad(String::from("need at least one state and one letter"));
        }
        let distinct: BTreeSet<char> = letters.iter().copied().collect();
        if distinct.len() != letters.len() {
            return bad(String::from("repeated letter"));
        }
        if delta.len() != letters.len()
            || delta.iter().any(|row| row.len() != states || row.iter().any(|&q| q >= states))
        {
            return bad(format!("transition function must map 0..{states} for every letter"));
        }
        Ok(Dfa { states, letters, delta })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn step(&self, letter: usize, q: usize) -> usize {
        self.delta[letter][q]
    }
}

/// Transition semigroup of a DFA and the element of each letter.
#[derive(Clone, Debug)]
pub struct DfaSemigroup {
    pub semigroup: TransformationSemigroup,
    pub letters: Vec<(char, Element)>,
}

pub fn dfa_transition_semigroup(d: &Dfa, cap: usize) -> Result<DfaSemigroup, GenError> {
    let semigroup = transformation_semigroup(&d.delta, cap)?;
    let letters = d.letters.iter().copied().zip(semigroup.generators.iter().copied()).collect();
    Ok(DfaSemigroup { semigroup, letters })
}
