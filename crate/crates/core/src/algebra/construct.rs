use alloc::vec;
use alloc::vec::Vec;

use super::groupoid::{PartialGroupoid, Semigroup};
use super::partition::Partition;
use super::{AlgebraError, Element};

/// A structure built on a subset of a parent table, with the translation
/// between local ids `1..=k` and parent ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub groupoid: PartialGroupoid,
    /// `ids[i]` is the parent id of local element `i + 1`; ascending.
    pub ids: Vec<Element>,
}

impl Induced {
    pub fn to_parent(&self, local: Element) -> Element {
        self.ids[local - 1]
    }

    pub fn to_local(&self, parent: Element) -> Option<Element> {
        self.ids.binary_search(&parent).ok().map(|i| i + 1)
    }
}

fn normalize_subset(g: &PartialGroupoid, subset: &[Element]) -> Result<Vec<Element>, AlgebraError> {
    let mut ids = subset.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.is_empty() {
        return Err(AlgebraError::EmptySubset);
    }
    for &x in &ids {
        g.check(x)?;
    }
    Ok(ids)
}

impl PartialGroupoid {
    /// The partial groupoid on `subset` whose products are those of `self`
    /// that stay inside the subset; everything else becomes undefined.
    pub fn induced_partial(&self, subset: &[Element]) -> Result<Induced, AlgebraError> {
        let ids = normalize_subset(self, subset)?;
        let mut local = vec![0usize; self.order() + 1];
        for (i, &x) in ids.iter().enumerate() {
            local[x] = i + 1;
        }
        let groupoid = PartialGroupoid::from_fn(ids.len(), |a, b| {
            self.product(ids[a - 1], ids[b - 1]).and_then(|p| match local[p] {
                0 => None,
                l => Some(l),
            })
        })?;
        Ok(Induced { groupoid, ids })
    }

    /// Closure of `gens` under the defined products, ascending.
    pub fn generated_subset(&self, gens: &[Element]) -> Result<Vec<Element>, AlgebraError> {
        let mut members = normalize_subset(self, gens)?;
        let mut inside = vec![false; self.order() + 1];
        for &x in &members {
            inside[x] = true;
        }
        // every pair is multiplied once: new elements are paired with all
        // earlier ones when they are reached in the queue
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for j in 0..=i {
                let y = members[j];
                for p in [self.product(x, y), self.product(y, x)].into_iter().flatten() {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Ok(members)
    }

    /// Whether all defined products of members stay inside `subset`.
    pub fn is_closed(&self, subset: &[Element]) -> bool {
        let mut inside = vec![false; self.order() + 1];
        for &x in subset {
            inside[x] = true;
        }
        subset.iter().all(|&x| {
            subset.iter().all(|&y| self.product(x, y).map_or(true, |p| inside[p]))
        })
    }

    /// The table on the classes of `p`, with `[x][y] = [xy]` computed from
    /// class representatives (minimal members).
    ///
    /// With `verify`, every pair of representatives is checked first and a
    /// violating pair is reported.
    pub fn quotient(&self, p: &Partition, verify: bool) -> Result<PartialGroupoid, AlgebraError> {
        if p.order() != self.order() {
            return Err(AlgebraError::InvalidPartition("partition of a different set".into()));
        }
        let class_of = |x: usize| if x == 0 { None } else { Some(p.class_of(x)) };
        if verify {
            for x in self.elements() {
                let rx = p.classes()[p.class_of(x)][0];
                for y in self.elements() {
                    let ry = p.classes()[p.class_of(y)][0];
                    if class_of(self.entry(x, y)) != class_of(self.entry(rx, ry)) {
                        return Err(AlgebraError::NotACongruence { x: rx, x2: x, y: ry, y2: y });
                    }
                }
            }
        }
        PartialGroupoid::from_fn(p.len(), |a, b| {
            let ra = p.classes()[a - 1][0];
            let rb = p.classes()[b - 1][0];
            self.product(ra, rb).map(|xy| p.class_of(xy) + 1)
        })
    }
}

impl Semigroup {
    /// The monoid `eSe` as a substructure.
    pub fn local_monoid(&self, e: Element) -> Result<Induced, AlgebraError> {
        self.check(e)?;
        if !self.is_idempotent(e) {
            return Err(AlgebraError::NotIdempotent(e));
        }
        let mut members: Vec<Element> = self.elements().map(|z| self.mul(self.mul(e, z), e)).collect();
        members.sort_unstable();
        members.dedup();
        self.induced_partial(&members)
    }
}

/// Componentwise product; `(a, b)` gets id `(a - 1) * |t| + b`.
pub fn direct_product(s: &PartialGroupoid, t: &PartialGroupoid) -> PartialGroupoid {
    let nt = t.order();
    let split = |x: Element| ((x - 1) / nt + 1, (x - 1) % nt + 1);
    PartialGroupoid::from_fn(s.order() * nt, |x, y| {
        let (a, b) = split(x);
        let (c, d) = split(y);
        let ac = s.product(a, c)?;
        let bd = t.product(b, d)?;
        Some((ac - 1) * nt + bd)
    })
    .expect("product of valid tables is valid")
}
