//! Brute-force checkers computed straight from the multiplication table.

use fomember_core::catalog::{Congruence, Operator};
use fomember_core::ea::{Edge, IncidenceGraph, Vertex};
use fomember_core::gen::random_transformation_semigroup;
use fomember_core::{Partition, PartialGroupoid};

pub fn table(rows: &[&[usize]]) -> PartialGroupoid {
    PartialGroupoid::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn c2() -> PartialGroupoid {
    table(&[&[1, 2], &[2, 1]])
}

pub fn rz2() -> PartialGroupoid {
    table(&[&[1, 2], &[1, 2]])
}

pub fn n2() -> PartialGroupoid {
    table(&[&[1, 1], &[1, 1]])
}

/// Brandt monoid without identity: 1 is zero, then e11, e12, e21, e22.
pub fn b2() -> PartialGroupoid {
    let unit = [None, None, Some((1, 1)), Some((1, 2)), Some((2, 1)), Some((2, 2))];
    let id = |i: usize, j: usize| 2 + (i - 1) * 2 + (j - 1);
    PartialGroupoid::from_fn(5, |x, y| match (unit[x], unit[y]) {
        (Some((i, j)), Some((k, l))) if j == k => Some(id(i, l)),
        _ => Some(1),
    })
    .unwrap()
}

/// Every associative operation on `{1, .., n}`, in code order.
pub fn all_semigroups(n: usize) -> Vec<PartialGroupoid> {
    let cells = n * n;
    (0..n.pow(cells as u32))
        .filter_map(|code| {
            let mut c = code;
            let entries = (0..cells)
                .map(|_| {
                    let v = c % n + 1;
                    c /= n;
                    v
                })
                .collect();
            let g = PartialGroupoid::from_flat(n, entries).unwrap();
            def_semigroup(&g).then_some(g)
        })
        .collect()
}

/// 100 semigroups of order at most 15: every one of order at most 2, B2,
/// then seeded transformation semigroups.
pub fn corpus() -> Vec<PartialGroupoid> {
    let mut out = all_semigroups(1);
    out.extend(all_semigroups(2));
    out.push(b2());
    out.extend(all_semigroups(3).into_iter().step_by(8));
    let mut seed = 0u64;
    while out.len() < 100 {
        seed += 1;
        let k = 2 + (seed as usize % 3);
        let m = 1 + (seed as usize % 3);
        if let Ok(t) = random_transformation_semigroup(k, m, seed, 15) {
            if t.groupoid.order() >= 4 {
                out.push(t.groupoid);
            }
        }
    }
    out
}

pub fn mul(g: &PartialGroupoid, x: usize, y: usize) -> usize {
    g.product(x, y).expect("total")
}

pub fn def_semigroup(g: &PartialGroupoid) -> bool {
    let e = g.elements();
    e.clone().all(|x| e.clone().all(|y| g.product(x, y).is_some()))
        && e.clone().all(|x| {
            e.clone().all(|y| e.clone().all(|z| mul(g, mul(g, x, y), z) == mul(g, x, mul(g, y, z))))
        })
}

pub fn leq_r(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    x == y || g.elements().any(|q| mul(g, y, q) == x)
}

pub fn leq_l(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    x == y || g.elements().any(|p| mul(g, p, y) == x)
}

pub fn leq_j(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    leq_r(g, x, y) || leq_l(g, x, y) || g.elements().any(|p| g.elements().any(|q| mul(g, mul(g, p, y), q) == x))
}

pub fn r_rel(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    leq_r(g, x, y) && leq_r(g, y, x)
}

pub fn l_rel(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    leq_l(g, x, y) && leq_l(g, y, x)
}

pub fn h_rel(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    r_rel(g, x, y) && l_rel(g, x, y)
}

pub fn j_rel(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    leq_j(g, x, y) && leq_j(g, y, x)
}

pub fn idempotents(g: &PartialGroupoid) -> Vec<usize> {
    g.elements().filter(|&x| mul(g, x, x) == x).collect()
}

pub fn identity_element(g: &PartialGroupoid) -> Option<usize> {
    g.elements().find(|&e| g.elements().all(|y| mul(g, e, y) == y && mul(g, y, e) == y))
}

pub fn def_monoid(g: &PartialGroupoid) -> bool {
    def_semigroup(g) && identity_element(g).is_some()
}

pub fn def_trivial(g: &PartialGroupoid) -> bool {
    def_semigroup(g) && g.order() == 1
}

pub fn def_group(g: &PartialGroupoid) -> bool {
    def_semigroup(g)
        && identity_element(g)
            .is_some_and(|e| g.elements().all(|x| g.elements().any(|y| mul(g, x, y) == e && mul(g, y, x) == e)))
}

pub fn def_band(g: &PartialGroupoid) -> bool {
    def_semigroup(g) && idempotents(g).len() == g.order()
}

pub fn def_aperiodic(g: &PartialGroupoid) -> bool {
    def_semigroup(g) && g.elements().all(|x| g.elements().all(|y| x == y || !h_rel(g, x, y)))
}

pub fn def_d(g: &PartialGroupoid) -> bool {
    def_semigroup(g) && idempotents(g).iter().all(|&e| g.elements().all(|x| mul(g, e, x) == e))
}

pub fn def_k(g: &PartialGroupoid) -> bool {
    def_semigroup(g) && idempotents(g).iter().all(|&e| g.elements().all(|x| mul(g, x, e) == e))
}

pub fn def_nilpotent(g: &PartialGroupoid) -> bool {
    def_semigroup(g) && idempotents(g).iter().all(|&e| g.elements().all(|x| mul(g, e, x) == e && mul(g, x, e) == e))
}

pub fn def_orthodox(g: &PartialGroupoid) -> bool {
    let es = idempotents(g);
    def_semigroup(g) && es.iter().all(|&e| es.iter().all(|&f| es.contains(&mul(g, e, f))))
}

pub fn definitional(name: &str) -> fn(&PartialGroupoid) -> bool {
    match name {
        "S" => def_semigroup,
        "I" => def_trivial,
        "M" => def_monoid,
        "G" => def_group,
        "B" => def_band,
        "A" => def_aperiodic,
        "D" => def_d,
        "K" => def_k,
        "N" => def_nilpotent,
        "O" => def_orthodox,
        _ => panic!("no checker for {name}"),
    }
}

/// Sub-structure on `subset` keeping only products that land inside.
pub fn restrict(g: &PartialGroupoid, subset: &[usize]) -> PartialGroupoid {
    let pos = |x: usize| subset.iter().position(|&y| y == x);
    PartialGroupoid::from_fn(subset.len(), |a, b| g.product(subset[a - 1], subset[b - 1]).and_then(pos).map(|i| i + 1))
        .unwrap()
}

/// `<E>` by closure, then H-triviality of the induced semigroup.
pub fn ea_by_closure(g: &PartialGroupoid) -> bool {
    let mut set = idempotents(g);
    let mut i = 0;
    while i < set.len() {
        for j in 0..=i {
            for p in [mul(g, set[i], set[j]), mul(g, set[j], set[i])] {
                if !set.contains(&p) {
                    set.push(p);
                }
            }
        }
        i += 1;
    }
    set.sort_unstable();
    def_aperiodic(&restrict(g, &set))
}

/// The idempotent picked out by Green's relations: among idempotents `t`
/// with `xt R t` and `tx L t`, the one above all others in `<=_H`.
/// `None` unless exactly one candidate is maximal.
pub fn omega_by_green(g: &PartialGroupoid, x: usize) -> Option<usize> {
    let n = g.order();
    let mut lr = vec![vec![false; n + 1]; n + 1];
    let mut ll = vec![vec![false; n + 1]; n + 1];
    for a in g.elements() {
        lr[a][a] = true;
        ll[a][a] = true;
        for q in g.elements() {
            lr[mul(g, a, q)][a] = true;
            ll[mul(g, q, a)][a] = true;
        }
    }
    let r = |a: usize, b: usize| lr[a][b] && lr[b][a];
    let l = |a: usize, b: usize| ll[a][b] && ll[b][a];
    let leq_h = |a: usize, b: usize| lr[a][b] && ll[a][b];
    let candidates: Vec<usize> = idempotents(g)
        .into_iter()
        .filter(|&t| r(mul(g, x, t), t) && l(mul(g, t, x), t))
        .collect();
    let maximal: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&t| !candidates.iter().any(|&u| u != t && leq_h(t, u) && !leq_h(u, t)))
        .collect();
    match maximal[..] {
        [t] => Some(t),
        _ => None,
    }
}

fn rho(g: &PartialGroupoid, x: usize) -> bool {
    idempotents(g).iter().any(|&e| j_rel(g, e, x))
}

/// The Mal'cev congruences, read directly.
pub fn congruence_def(c: Congruence, g: &PartialGroupoid, s: usize, t: usize) -> bool {
    let m = |a, b| mul(g, a, b);
    let j = |a, b| j_rel(g, a, b);
    let rm = || g.elements().all(|x| !rho(g, x) || !(j(m(x, s), x) || j(m(x, t), x)) || m(x, s) == m(x, t));
    let lm = || g.elements().all(|x| !rho(g, x) || !(j(m(s, x), x) || j(m(t, x), x)) || m(s, x) == m(t, x));
    let two = |aggm: bool| {
        g.elements().all(|x| {
            g.elements().all(|y| {
                if !(rho(g, x) && j(x, y)) {
                    return true;
                }
                let (p, q) = (m(m(x, s), y), m(m(x, t), y));
                if aggm {
                    j(p, x) == j(q, x)
                } else {
                    !(j(p, x) || j(q, x)) || p == q
                }
            })
        })
    };
    match c {
        Congruence::Rm => rm(),
        Congruence::Lm => lm(),
        Congruence::RmLm => rm() && lm(),
        Congruence::Ggm => two(false),
        Congruence::Aggm => two(true),
    }
}

fn regular_j_classes(g: &PartialGroupoid) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order() + 1];
    let mut out = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        let class: Vec<usize> = g.elements().filter(|&y| j_rel(g, x, y)).collect();
        for &y in &class {
            seen[y] = true;
        }
        if class.iter().any(|&y| mul(g, y, y) == y) {
            out.push(class);
        }
    }
    out
}

/// Membership in `op(inner)` by building the structures the operator talks
/// about and testing them with the definitional checker.
pub fn operator_oracle(op: Operator, inner: &str, g: &PartialGroupoid) -> bool {
    let v = definitional(inner);
    match op {
        Operator::D => regular_j_classes(g).iter().all(|j| v(&restrict(g, j))),
        Operator::L => idempotents(g).iter().all(|&e| {
            let mut ese: Vec<usize> = g.elements().map(|z| mul(g, mul(g, e, z), e)).collect();
            ese.sort_unstable();
            ese.dedup();
            v(&restrict(g, &ese))
        }),
        Operator::Hbar => idempotents(g).iter().all(|&e| {
            let h: Vec<usize> = g.elements().filter(|&y| h_rel(g, e, y)).collect();
            v(&restrict(g, &h))
        }),
        _ => {
            let c = malcev_congruence(op);
            let p = Partition::from_equivalence(g.order(), |s, t| congruence_def(c, g, s, t)).unwrap();
            v(&g.quotient(&p, true).unwrap())
        }
    }
}

pub fn malcev_congruence(op: Operator) -> Congruence {
    match op {
        Operator::MalcevK => Congruence::Rm,
        Operator::MalcevD => Congruence::Lm,
        Operator::MalcevN => Congruence::RmLm,
        Operator::MalcevLI => Congruence::Ggm,
        Operator::MalcevLG => Congruence::Aggm,
        _ => panic!("{op:?} is not a Mal'cev operator"),
    }
}

/// Checks each non-forest edge in edge order by walking the forest from
/// `A(a)` back to `B(b)`. Returns the first edge whose cycle label is not
/// the identity, with that label.
pub fn first_bad_bridge(ig: &IncidenceGraph, forest: &[usize]) -> Option<(Edge, usize)> {
    let grp = ig.group();
    let ends = |e: &Edge| (ig.vertex_id(Vertex::B(e.b)), ig.vertex_id(Vertex::A(e.a)));
    for (i, bridge) in ig.edges().iter().enumerate() {
        if forest.contains(&i) {
            continue;
        }
        let (vb, va) = ends(bridge);
        // depth-first search for the unique forest path va -> vb
        let mut stack = vec![(va, grp.identity(), usize::MAX)];
        let mut found = None;
        let mut visited = vec![false; ig.vertex_count()];
        while let Some((u, label, via)) = stack.pop() {
            if u == vb {
                found = Some(label);
                break;
            }
            visited[u] = true;
            for &k in forest {
                if k == via {
                    continue;
                }
                let e = ig.edges()[k];
                let (eb, ea) = ends(&e);
                let next = if eb == u {
                    ea
                } else if ea == u {
                    eb
                } else {
                    continue;
                };
                if !visited[next] {
                    stack.push((next, grp.mul(label, ig.label_from(&e, ig.vertex(u))), k));
                }
            }
        }
        let path = found.expect("bridge endpoints share a tree");
        let label = grp.mul(ig.label_from(bridge, Vertex::B(bridge.b)), path);
        if label != grp.identity() {
            return Some((*bridge, label));
        }
    }
    None
}

/// Product of labels along a closed walk of vertices.
pub fn walk_label(ig: &IncidenceGraph, walk: &[Vertex]) -> usize {
    let grp = ig.group();
    walk.windows(2).fold(grp.identity(), |acc, w| {
        let e = ig
            .edges()
            .iter()
            .find(|e| {
                let ends = [Vertex::A(e.a), Vertex::B(e.b)];
                ends.contains(&w[0]) && ends.contains(&w[1])
            })
            .expect("walk follows edges");
        grp.mul(acc, ig.label_from(e, w[0]))
    })
}
