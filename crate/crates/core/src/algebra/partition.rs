use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{AlgebraError, Element};

/// A partition of `1..=n` into non-empty classes.
///
/// Classes are kept sorted ascending and ordered by their minimal member,
/// so two partitions of the same set compare equal iff they are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    classes: Vec<Vec<Element>>,
    class_of: Vec<usize>,
}

impl Partition {
    pub fn from_classes(n: usize, mut classes: Vec<Vec<Element>>) -> Result<Self, AlgebraError> {
        let mut class_of = vec![usize::MAX; n + 1];
        for class in classes.iter_mut() {
            if class.is_empty() {
                return Err(AlgebraError::InvalidPartition("empty class".into()));
            }
            class.sort_unstable();
        }
        classes.sort_unstable_by_key(|c| c[0]);
        for (i, class) in classes.iter().enumerate() {
            for &x in class {
                if x == 0 || x > n {
                    return Err(AlgebraError::ElementOutOfRange(x));
                }
                if class_of[x] != usize::MAX {
                    return Err(AlgebraError::InvalidPartition(format!(
                        "element {x} occurs in two classes"
                    )));
                }
                class_of[x] = i;
            }
        }
        if let Some(x) = (1..=n).find(|&x| class_of[x] == usize::MAX) {
            return Err(AlgebraError::InvalidPartition(format!("element {x} is not covered")));
        }
        Ok(Partition { n, classes, class_of })
    }

    /// Groups elements by a key; equal keys share a class.
    pub fn from_key<K: PartialEq>(n: usize, mut key: impl FnMut(Element) -> K) -> Self {
        let mut keys: Vec<K> = Vec::new();
        let mut classes: Vec<Vec<Element>> = Vec::new();
        for x in 1..=n {
            let k = key(x);
            match keys.iter().position(|other| *other == k) {
                Some(i) => classes[i].push(x),
                None => {
                    keys.push(k);
                    classes.push(vec![x]);
                }
            }
        }
        Partition::from_classes(n, classes).expect("keys partition the elements")
    }

    /// Classes of an equivalence relation given as a predicate; fails with
    /// a witness if the relation is not reflexive, symmetric and transitive.
    pub fn from_equivalence(
        n: usize,
        mut related: impl FnMut(Element, Element) -> bool,
    ) -> Result<Self, AlgebraError> {
        let mut matrix = vec![false; (n + 1) * (n + 1)];
        for x in 1..=n {
            for y in 1..=n {
                matrix[x * (n + 1) + y] = related(x, y);
            }
        }
        let rel = |x: usize, y: usize| matrix[x * (n + 1) + y];
        for x in 1..=n {
            if !rel(x, x) {
                return Err(AlgebraError::InvalidPartition(format!("not reflexive at {x}")));
            }
            for y in 1..=n {
                if rel(x, y) != rel(y, x) {
                    return Err(AlgebraError::InvalidPartition(format!(
                        "not symmetric at ({x}, {y})"
                    )));
                }
            }
        }
        for x in 1..=n {
            for y in 1..=n {
                if !rel(x, y) {
                    continue;
                }
                if let Some(z) = (1..=n).find(|&z| rel(y, z) && !rel(x, z)) {
                    return Err(AlgebraError::InvalidPartition(format!(
                        "not transitive at ({x}, {y}, {z})"
                    )));
                }
            }
        }
        Ok(Partition::from_key(n, |x| {
            (1..=n).find(|&y| rel(x, y)).expect("reflexive")
        }))
    }

    pub fn singletons(n: usize) -> Self {
        Partition::from_key(n, |x| x)
    }

    pub fn full(n: usize) -> Self {
        Partition::from_key(n, |_| ())
    }

    /// Size of the partitioned set.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index (0-based) of the class containing `x`.
    pub fn class_of(&self, x: Element) -> usize {
        self.class_of[x]
    }

    pub fn same_class(&self, x: Element, y: Element) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn classes(&self) -> &[Vec<Element>] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<Vec<Element>> {
        self.classes
    }

    /// Meet of two partitions of the same set.
    pub fn intersect(&self, other: &Partition) -> Partition {
        Partition::from_key(self.n, |x| (self.class_of(x), other.class_of(x)))
    }
}
