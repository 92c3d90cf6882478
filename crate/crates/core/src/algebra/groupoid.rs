use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Deref, RangeInclusive};

use super::green::{GreenRelation, GreenTables, Strictness};
use super::partition::Partition;
use super::{AlgebraError, Element, SemigroupViolation};

/// A finite partial groupoid: elements `1..=n` and an `n x n` table whose
/// entry `0` marks an undefined product.
#[derive(Clone, Debug)]
pub struct PartialGroupoid {
    n: usize,
    table: Vec<u32>,
    name: Option<String>,
}

/// Tables are equal when their contents are; the name is metadata.
impl PartialEq for PartialGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}

impl Eq for PartialGroupoid {}

impl PartialGroupoid {
    /// Builds a table from row-major entries in `0..=n`.
    pub fn from_flat(n: usize, entries: Vec<usize>) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if n > u32::MAX as usize {
            return Err(AlgebraError::ElementOutOfRange(n));
        }
        let expected = n.checked_mul(n).ok_or(AlgebraError::ElementOutOfRange(n))?;
        if entries.len() != expected {
            return Err(AlgebraError::TableSize { expected, found: entries.len() });
        }
        let mut table = Vec::with_capacity(expected);
        for (i, &value) in entries.iter().enumerate() {
            if value > n {
                return Err(AlgebraError::EntryOutOfRange {
                    row: i / n + 1,
                    col: i % n + 1,
                    value,
                    n,
                });
            }
            table.push(value as u32);
        }
        Ok(PartialGroupoid { n, table, name: None })
    }

    /// Builds a table from its rows; the order is the number of rows.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(AlgebraError::TableSize { expected: n * n, found: n * row.len() });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat)
    }

    /// Builds a table by evaluating `f` on every pair.
    pub fn from_fn<F>(n: usize, mut f: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(Element, Element) -> Option<Element>,
    {
        let mut flat = Vec::with_capacity(n * n);
        for x in 1..=n {
            for y in 1..=n {
                flat.push(f(x, y).unwrap_or(0));
            }
        }
        Self::from_flat(n, flat)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> RangeInclusive<Element> {
        1..=self.n
    }

    pub fn contains(&self, x: Element) -> bool {
        (1..=self.n).contains(&x)
    }

    pub(crate) fn check(&self, x: Element) -> Result<(), AlgebraError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::ElementOutOfRange(x))
        }
    }

    /// Raw table entry, `0` when undefined.
    #[inline]
    pub fn entry(&self, x: Element, y: Element) -> usize {
        self.table[(x - 1) * self.n + (y - 1)] as usize
    }

    #[inline]
    pub fn product(&self, x: Element, y: Element) -> Option<Element> {
        match self.entry(x, y) {
            0 => None,
            p => Some(p),
        }
    }

    /// Row-major entries, `0` for undefined.
    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().map(|&v| v as usize)
    }

    pub fn row(&self, x: Element) -> Vec<usize> {
        self.table[(x - 1) * self.n..x * self.n].iter().map(|&v| v as usize).collect()
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(|&v| v != 0)
    }

    /// First violation of totality or associativity in lexicographic
    /// order of the witnesses.
    pub fn semigroup_violation(&self) -> Option<SemigroupViolation> {
        for x in self.elements() {
            for y in self.elements() {
                if self.entry(x, y) == 0 {
                    return Some(SemigroupViolation::Undefined { x, y });
                }
            }
        }
        for x in self.elements() {
            for y in self.elements() {
                let xy = self.entry(x, y);
                for z in self.elements() {
                    if self.entry(xy, z) != self.entry(x, self.entry(y, z)) {
                        return Some(SemigroupViolation::NotAssociative { x, y, z });
                    }
                }
            }
        }
        None
    }

    /// Total and associative.
    pub fn is_associative(&self) -> bool {
        self.semigroup_violation().is_none()
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.entry(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<Element> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// The unique idempotent among the right powers `x, x*x, (x*x)*x, ...`,
    /// or `None` if the powers contain no idempotent or several.
    pub fn omega(&self, x: Element) -> Option<Element> {
        let mut seen = vec![false; self.n + 1];
        let mut found = None;
        let mut cur = x;
        loop {
            if seen[cur] {
                break;
            }
            seen[cur] = true;
            if self.is_idempotent(cur) {
                if found.is_some() {
                    return None;
                }
                found = Some(cur);
            }
            match self.product(cur, x) {
                Some(next) => cur = next,
                None => break,
            }
        }
        found
    }

    /// Green's relation evaluated from its definition, adjoining an identity
    /// by allowing the multipliers to be absent.
    ///
    /// On non-associative tables `x <=J y` reads `x = p (y q)` bracketed as
    /// `(p y) q`.
    pub fn green_holds(&self, rel: GreenRelation, x: Element, y: Element) -> bool {
        use GreenRelation::*;
        match rel {
            LeqR => x == y || self.elements().any(|z| self.entry(y, z) == x),
            LeqL => x == y || self.elements().any(|z| self.entry(z, y) == x),
            LeqJ => {
                self.green_holds(LeqL, x, y)
                    || self.green_holds(LeqR, x, y)
                    || self.elements().any(|z| {
                        let zy = self.entry(z, y);
                        zy != 0 && self.elements().any(|w| self.entry(zy, w) == x)
                    })
            }
            LeqH => self.green_holds(LeqR, x, y) && self.green_holds(LeqL, x, y),
            R | L | J | H => {
                let leq = rel.preorder();
                self.green_holds(leq, x, y) && self.green_holds(leq, y, x)
            }
        }
    }

    pub fn green_tables(&self) -> GreenTables {
        GreenTables::new(self)
    }

    /// J-classes sorted by their minimal element, optionally only those
    /// containing an idempotent.
    ///
    /// In strict mode a non-semigroup is rejected. In lenient mode the
    /// classes are the connected components of mutual `<=J`, which need not
    /// behave like J-classes.
    pub fn j_classes(
        &self,
        regular_only: bool,
        strictness: Strictness,
    ) -> Result<Vec<Vec<Element>>, AlgebraError> {
        if strictness == Strictness::Strict {
            if let Some(v) = self.semigroup_violation() {
                return Err(AlgebraError::NotASemigroup(v));
            }
        }
        let tables = self.green_tables();
        let classes = tables.components(GreenRelation::J);
        Ok(classes
            .into_classes()
            .into_iter()
            .filter(|c| !regular_only || c.iter().any(|&x| self.is_idempotent(x)))
            .collect())
    }
}

/// A partial groupoid known to be total and associative.
///
/// Green's tables and the ω-operator are computed once on construction.
#[derive(Clone, Debug)]
pub struct Semigroup {
    table: PartialGroupoid,
    green: GreenTables,
    omega: Vec<u32>,
}

impl PartialEq for Semigroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for Semigroup {}

impl Deref for Semigroup {
    type Target = PartialGroupoid;

    fn deref(&self) -> &PartialGroupoid {
        &self.table
    }
}

impl TryFrom<PartialGroupoid> for Semigroup {
    type Error = AlgebraError;

    fn try_from(g: PartialGroupoid) -> Result<Self, AlgebraError> {
        Semigroup::new(g)
    }
}

impl Semigroup {
    pub fn new(table: PartialGroupoid) -> Result<Self, AlgebraError> {
        if let Some(v) = table.semigroup_violation() {
            return Err(AlgebraError::NotASemigroup(v));
        }
        let green = GreenTables::new(&table);
        let omega = table
            .elements()
            .map(|x| table.omega(x).expect("finite semigroups have omega powers") as u32)
            .collect();
        Ok(Semigroup { table, green, omega })
    }

    pub fn groupoid(&self) -> &PartialGroupoid {
        &self.table
    }

    pub fn into_groupoid(self) -> PartialGroupoid {
        self.table
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table.entry(x, y)
    }

    #[inline]
    pub fn omega(&self, x: Element) -> Element {
        self.omega[x - 1] as usize
    }

    pub fn green(&self) -> &GreenTables {
        &self.green
    }

    /// Classes of an equivalence among R, L, J, H (a preorder kind selects
    /// its associated equivalence).
    pub fn classes(&self, rel: GreenRelation) -> Partition {
        self.green.components(rel.equivalence())
    }

    pub fn j_classes(&self, regular_only: bool) -> Vec<Vec<Element>> {
        self.classes(GreenRelation::J)
            .into_classes()
            .into_iter()
            .filter(|c| !regular_only || c.iter().any(|&x| self.is_idempotent(x)))
            .collect()
    }

    /// Members of the H-class of `x`.
    pub fn h_class(&self, x: Element) -> Vec<Element> {
        self.elements().filter(|&y| self.green.holds(GreenRelation::H, x, y)).collect()
    }
}
