use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::groupoid::PartialGroupoid;
use super::partition::Partition;
use super::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GreenRelation {
    LeqR,
    LeqL,
    LeqJ,
    LeqH,
    R,
    L,
    J,
    H,
}

impl GreenRelation {
    pub const ALL: [GreenRelation; 8] = [
        GreenRelation::LeqR,
        GreenRelation::LeqL,
        GreenRelation::LeqJ,
        GreenRelation::LeqH,
        GreenRelation::R,
        GreenRelation::L,
        GreenRelation::J,
        GreenRelation::H,
    ];

    /// The preorder underlying this relation.
    pub fn preorder(self) -> GreenRelation {
        use GreenRelation::*;
        match self {
            LeqR | R => LeqR,
            LeqL | L => LeqL,
            LeqJ | J => LeqJ,
            LeqH | H => LeqH,
        }
    }

    /// The equivalence induced by this relation's preorder.
    pub fn equivalence(self) -> GreenRelation {
        use GreenRelation::*;
        match self {
            LeqR | R => R,
            LeqL | L => L,
            LeqJ | J => J,
            LeqH | H => H,
        }
    }

    pub fn is_preorder(self) -> bool {
        self.preorder() == self
    }

    /// Surface syntax used by the formula language.
    pub fn symbol(self) -> &'static str {
        use GreenRelation::*;
        match self {
            LeqR => "<=R",
            LeqL => "<=L",
            LeqJ => "<=J",
            LeqH => "<=H",
            R => "R",
            L => "L",
            J => "J",
            H => "H",
        }
    }
}

impl fmt::Display for GreenRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for GreenRelation {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        GreenRelation::ALL.into_iter().find(|r| r.symbol() == s).ok_or(())
    }
}

/// Whether operations that assume associativity reject other tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    #[default]
    Strict,
    Lenient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, bits: vec![0; words * n] }
    }

    #[inline]
    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words + col / 64] |= 1 << (col % 64);
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words + col / 64] & (1 << (col % 64)) != 0
    }
}

/// Precomputed `<=R`, `<=L` and `<=J` for all pairs; the remaining
/// relations are derived from these. Uses the same definitions as
/// [`PartialGroupoid::green_holds`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenTables {
    n: usize,
    // row y, column x: x <= y
    leq_r: BitMatrix,
    leq_l: BitMatrix,
    leq_j: BitMatrix,
}

impl GreenTables {
    pub fn new(g: &PartialGroupoid) -> Self {
        let n = g.order();
        let mut leq_r = BitMatrix::new(n);
        let mut leq_l = BitMatrix::new(n);
        let mut leq_j = BitMatrix::new(n);
        for y in g.elements() {
            let row = y - 1;
            leq_r.set(row, row);
            leq_l.set(row, row);
            leq_j.set(row, row);
            for z in g.elements() {
                if let Some(yz) = g.product(y, z) {
                    leq_r.set(row, yz - 1);
                    leq_j.set(row, yz - 1);
                }
                if let Some(zy) = g.product(z, y) {
                    leq_l.set(row, zy - 1);
                    leq_j.set(row, zy - 1);
                    for w in g.elements() {
                        if let Some(zyw) = g.product(zy, w) {
                            leq_j.set(row, zyw - 1);
                        }
                    }
                }
            }
        }
        GreenTables { n, leq_r, leq_l, leq_j }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn leq(&self, m: &BitMatrix, x: Element, y: Element) -> bool {
        m.get(y - 1, x - 1)
    }

    #[inline]
    pub fn holds(&self, rel: GreenRelation, x: Element, y: Element) -> bool {
        use GreenRelation::*;
        match rel {
            LeqR => self.leq(&self.leq_r, x, y),
            LeqL => self.leq(&self.leq_l, x, y),
            LeqJ => self.leq(&self.leq_j, x, y),
            LeqH => self.leq(&self.leq_r, x, y) && self.leq(&self.leq_l, x, y),
            R | L | J | H => {
                let p = rel.preorder();
                self.holds(p, x, y) && self.holds(p, y, x)
            }
        }
    }

    /// Connected components of the symmetric relation `rel` (for
    /// semigroups these are exactly its equivalence classes).
    pub fn components(&self, rel: GreenRelation) -> Partition {
        let rel = rel.equivalence();
        let mut label = vec![usize::MAX; self.n + 1];
        let mut classes: Vec<Vec<Element>> = Vec::new();
        for start in 1..=self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < class.len() {
                let x = class[i];
                for y in 1..=self.n {
                    if label[y] == usize::MAX && self.holds(rel, x, y) {
                        label[y] = id;
                        class.push(y);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        Partition::from_classes(self.n, classes).expect("components partition the elements")
    }
}
