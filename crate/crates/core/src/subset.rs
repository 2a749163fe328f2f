use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported ground set: subsets are machine words.
pub const MAX_VERTICES: usize = 64;

/// A subset of `[m] = {1, ..., m}` packed into a `u64`; label `i` lives in bit `i - 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES);
        if m == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << m) - 1)
        }
    }

    /// Builds a set from 1-based labels. Panics on label 0 or > 64.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut s = VertexSet::EMPTY;
        for &l in labels {
            s.insert(l);
        }
        s
    }

    pub fn singleton(label: usize) -> Self {
        Self::from_labels(&[label])
    }

    #[inline]
    pub fn insert(&mut self, label: usize) {
        assert!((1..=MAX_VERTICES).contains(&label), "vertex label {label} out of range");
        self.0 |= 1 << (label - 1);
    }

    #[inline]
    pub fn contains(self, label: usize) -> bool {
        (1..=MAX_VERTICES).contains(&label) && self.0 & (1 << (label - 1)) != 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn without(self, label: usize) -> VertexSet {
        VertexSet(self.0 & !(1 << (label - 1)))
    }

    #[inline]
    pub fn with(self, label: usize) -> VertexSet {
        let mut s = self;
        s.insert(label);
        s
    }

    /// Largest label in the set (0 for the empty set).
    pub fn max_label(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Number of elements strictly smaller than `label`.
    #[inline]
    pub fn rank_of(self, label: usize) -> usize {
        let below = if label <= 1 { 0 } else { (1u64 << (label - 1)) - 1 };
        (self.0 & below).count_ones() as usize
    }

    /// Labels in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }

    pub fn labels(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing order of their bit patterns.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some(cur.wrapping_sub(mask) & mask)
            };
            Some(VertexSet(cur))
        })
    }

    /// Subsets of `self` ordered by size, then lexicographically by label list.
    pub fn subsets_by_size(self) -> Vec<VertexSet> {
        let mut all: Vec<VertexSet> = self.subsets().collect();
        all.sort_by_cached_key(|s| (s.len(), s.labels()));
        all
    }

    /// Ordering key: size first, then label list.
    pub fn graded_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.labels())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::EMPTY;
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        if let Some(bad) = labels.iter().find(|&&l| l == 0 || l > MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex label {bad} out of range")));
        }
        Ok(VertexSet::from_labels(&labels))
    }
}
