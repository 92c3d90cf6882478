#![allow(dead_code)]

use fomember_core::gen::random_transformation_semigroup;
use fomember_core::{PartialGroupoid, Semigroup};

pub fn table(rows: &[&[usize]]) -> PartialGroupoid {
    let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
    PartialGroupoid::from_rows(&rows).unwrap()
}

pub fn sg(g: PartialGroupoid) -> Semigroup {
    Semigroup::new(g).unwrap()
}

pub fn trivial() -> PartialGroupoid {
    table(&[&[1]])
}

/// {1, a} with identity 1.
pub fn c2() -> PartialGroupoid {
    table(&[&[1, 2], &[2, 1]])
}

/// xy = y.
pub fn rz2() -> PartialGroupoid {
    table(&[&[1, 2], &[1, 2]])
}

/// xy = x.
pub fn lz2() -> PartialGroupoid {
    table(&[&[1, 1], &[2, 2]])
}

/// Zero 1 and x = 2 with all products 1.
pub fn n2() -> PartialGroupoid {
    table(&[&[1, 1], &[1, 1]])
}

// Brandt ids: 1 = 0, 2 = e11, 3 = e12, 4 = e21, 5 = e22.
pub const B2_ZERO: usize = 1;
pub const E11: usize = 2;
pub const E12: usize = 3;
pub const E21: usize = 4;
pub const E22: usize = 5;

pub fn b2() -> PartialGroupoid {
    let unit = |x: usize| match x {
        E11 => Some((1, 1)),
        E12 => Some((1, 2)),
        E21 => Some((2, 1)),
        E22 => Some((2, 2)),
        _ => None,
    };
    let id = |i: usize, j: usize| match (i, j) {
        (1, 1) => E11,
        (1, 2) => E12,
        (2, 1) => E21,
        _ => E22,
    };
    PartialGroupoid::from_fn(5, |x, y| match (unit(x), unit(y)) {
        (Some((i, j)), Some((k, l))) if j == k => Some(id(i, l)),
        _ => Some(B2_ZERO),
    })
    .unwrap()
}

/// All labelled semigroups on `n` elements (`n <= 3`).
pub fn all_semigroups(n: usize) -> Vec<PartialGroupoid> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let entries: Vec<usize> = (0..cells)
            .map(|_| {
                let v = c % n + 1;
                c /= n;
                v
            })
            .collect();
        let g = PartialGroupoid::from_flat(n, entries).unwrap();
        if g.is_associative() {
            out.push(g);
        }
    }
    out
}

/// Every semigroup of order at most 3, the named examples, and seeded
/// transformation semigroups of order at most 15.
pub fn corpus() -> Vec<PartialGroupoid> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.extend(all_semigroups(n));
    }
    out.push(b2());
    let mut seed = 0;
    let mut sampled = 0;
    while sampled < 40 {
        seed += 1;
        let k = 2 + (seed as usize % 3);
        let m = 1 + (seed as usize % 2);
        if let Ok(t) = random_transformation_semigroup(k, m, seed, 15) {
            if t.groupoid.order() >= 4 {
                out.push(t.groupoid);
                sampled += 1;
            }
        }
    }
    out
}

// ---- definitional oracles, written from scratch on the raw table ----

pub fn mul(g: &PartialGroupoid, x: usize, y: usize) -> usize {
    g.product(x, y).expect("total")
}

/// Brute-force `x <= y` in the given one-sided or two-sided sense.
pub fn leq_r(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    x == y || g.elements().any(|q| g.product(y, q) == Some(x))
}

pub fn leq_l(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    x == y || g.elements().any(|p| g.product(p, y) == Some(x))
}

pub fn leq_j(g: &PartialGroupoid, x: usize, y: usize) -> bool {
    leq_r(g, x, y)
        || leq_l(g, x, y)
        || g.elements().any(|p| {
            g.product(p, y).is_some_and(|py| g.elements().any(|q| g.product(py, q) == Some(x)))
        })
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
    g.elements().filter(|&x| g.product(x, x) == Some(x)).collect()
}

pub fn identity_element(g: &PartialGroupoid) -> Option<usize> {
    g.elements().find(|&e| g.elements().all(|y| g.product(e, y) == Some(y) && g.product(y, e) == Some(y)))
}

pub fn def_semigroup(g: &PartialGroupoid) -> bool {
    g.elements().all(|x| g.elements().all(|y| g.product(x, y).is_some()))
        && g.elements().all(|x| {
            g.elements().all(|y| {
                g.elements().all(|z| {
                    let xy = mul(g, x, y);
                    let yz = mul(g, y, z);
                    mul(g, xy, z) == mul(g, x, yz)
                })
            })
        })
}

pub fn def_trivial(g: &PartialGroupoid) -> bool {
    def_semigroup(g) && g.order() == 1
}

pub fn def_monoid(g: &PartialGroupoid) -> bool {
    def_semigroup(g) && identity_element(g).is_some()
}

pub fn def_group(g: &PartialGroupoid) -> bool {
    def_semigroup(g)
        && identity_element(g).is_some_and(|e| {
            g.elements().all(|x| g.elements().any(|y| g.product(x, y) == Some(e) && g.product(y, x) == Some(e)))
        })
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
    def_semigroup(g)
        && idempotents(g)
            .iter()
            .all(|&e| g.elements().all(|x| mul(g, e, x) == e && mul(g, x, e) == e))
}

pub fn def_orthodox(g: &PartialGroupoid) -> bool {
    let es = idempotents(g);
    def_semigroup(g) && es.iter().all(|&e| es.iter().all(|&f| es.contains(&mul(g, e, f))))
}

/// Definitional checker by catalog name.
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
        _ => panic!("no oracle for {name}"),
    }
}

/// The sub-structure on `subset` with parent products that stay inside.
pub fn restrict(g: &PartialGroupoid, subset: &[usize]) -> PartialGroupoid {
    let pos = |x: usize| subset.iter().position(|&y| y == x);
    PartialGroupoid::from_fn(subset.len(), |a, b| {
        g.product(subset[a - 1], subset[b - 1]).and_then(pos).map(|i| i + 1)
    })
    .unwrap()
}
