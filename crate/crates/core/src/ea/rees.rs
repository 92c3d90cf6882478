use alloc::vec;
use alloc::vec::Vec;

use super::EaError;
use crate::algebra::{Element, GreenRelation, PartialGroupoid, Semigroup};

/// A finite group stored by index, `0..order()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<Element>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Parent element ids, ascending; index `i` is group element `i`.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order() + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn index_of(&self, x: Element) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }
}

/// Entry of the sandwich matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sandwich {
    Zero,
    /// A group index.
    Group(usize),
}

/// Rees coordinates of a regular J-class: every element is `a g b` for a
/// unique `a` in `A`, `g` in the structure group and `b` in `B`.
///
/// `A` holds the least element of each H-class in the L-class of the
/// chosen idempotent `e`, `B` the same for its R-class, and the group is the
/// H-class of `e`. The sandwich entry `C(b, a)` is `ba` when `ba H e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesMatrixSemigroup {
    idempotent: Element,
    j_class: Vec<Element>,
    a: Vec<Element>,
    b: Vec<Element>,
    group: FiniteGroup,
    sandwich: Vec<Sandwich>,
}

/// Position `(a, g, b)`: indices into `A`, the group and `B`.
pub type Triple = (usize, usize, usize);

impl ReesMatrixSemigroup {
    pub fn idempotent(&self) -> Element {
        self.idempotent
    }

    pub fn j_class(&self) -> &[Element] {
        &self.j_class
    }

    pub fn a_indices(&self) -> &[Element] {
        &self.a
    }

    pub fn b_indices(&self) -> &[Element] {
        &self.b
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `C(b, a)` for indices into `B` and `A`.
    pub fn sandwich(&self, b: usize, a: usize) -> Sandwich {
        self.sandwich[b * self.a.len() + a]
    }

    /// `(a1, g1 C(b1, a2) g2, b2)`, or `None` for zero.
    pub fn multiply(&self, x: Triple, y: Triple) -> Option<Triple> {
        match self.sandwich(x.2, y.0) {
            Sandwich::Zero => None,
            Sandwich::Group(c) => {
                let g = self.group.mul(self.group.mul(x.1, c), y.1);
                Some((x.0, g, y.2))
            }
        }
    }

    /// The element `a g b` of the parent.
    pub fn to_parent(&self, s: &Semigroup, t: Triple) -> Element {
        s.mul(s.mul(self.a[t.0], self.group.elements[t.1]), self.b[t.2])
    }

    /// The table of `A × G × B ∪ {0}`: triple `(a, g, b)` gets id
    /// `1 + (a |G| + g) |B| + b` and zero is the last element.
    pub fn to_groupoid(&self) -> PartialGroupoid {
        let (na, ng, nb) = (self.a.len(), self.group.order(), self.b.len());
        let zero = na * ng * nb + 1;
        let decode = |x: usize| {
            let k = x - 1;
            (k / (ng * nb), (k / nb) % ng, k % nb)
        };
        let encode = |t: Triple| 1 + (t.0 * ng + t.1) * nb + t.2;
        PartialGroupoid::from_fn(zero, |x, y| {
            if x == zero || y == zero {
                return Some(zero);
            }
            Some(self.multiply(decode(x), decode(y)).map_or(zero, encode))
        })
        .expect("valid table")
    }
}

fn class_reps(s: &Semigroup, class: &[Element]) -> Vec<Element> {
    // least element of each H-class, ascending
    let mut reps: Vec<Element> = class
        .iter()
        .copied()
        .filter(|&x| class.iter().all(|&y| y >= x || !s.green().holds(GreenRelation::H, x, y)))
        .collect();
    reps.sort_unstable();
    reps
}

/// Rees coordinates of the J-class of the idempotent `e`.
pub fn rees_representation(s: &Semigroup, e: Element) -> Result<ReesMatrixSemigroup, EaError> {
    if !s.contains(e) {
        return Err(EaError::ElementOutOfRange(e));
    }
    if !s.is_idempotent(e) {
        return Err(EaError::NotIdempotent(e));
    }
    let green = s.green();
    let members = |rel| -> Vec<Element> { s.elements().filter(|&x| green.holds(rel, x, e)).collect() };
    let j_class = members(GreenRelation::J);
    let a = class_reps(s, &members(GreenRelation::L));
    let b = class_reps(s, &members(GreenRelation::R));
    let h = members(GreenRelation::H);

    let k = h.len();
    let index = |x: Element| h.binary_search(&x).ok();
    let mut table = vec![0; k * k];
    for (i, &x) in h.iter().enumerate() {
        for (j, &y) in h.iter().enumerate() {
            table[i * k + j] = index(s.mul(x, y)).expect("H-class of an idempotent is a group");
        }
    }
    let identity = index(e).expect("e in its H-class");
    let inverse = (0..k)
        .map(|i| (0..k).find(|&j| table[i * k + j] == identity).expect("group inverse"))
        .collect();
    let group = FiniteGroup { elements: h, table, identity, inverse };

    let mut sandwich = Vec::with_capacity(a.len() * b.len());
    for &bj in &b {
        for &ai in &a {
            let ba = s.mul(bj, ai);
            sandwich.push(match group.index_of(ba) {
                Some(g) => Sandwich::Group(g),
                None => Sandwich::Zero,
            });
        }
    }
    Ok(ReesMatrixSemigroup { idempotent: e, j_class, a, b, group, sandwich })
}
