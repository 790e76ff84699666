//! Fixed-universe id sets used for vertex sets, edge sets and ground sets.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

/// A subset of `{0, .., universe - 1}`.
///
/// Two sets compare equal only when they have the same universe and members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdSet {
    bits: FixedBitSet,
}

pub type VertexSet = IdSet;
pub type EdgeSet = IdSet;

impl IdSet {
    pub fn empty(universe: usize) -> Self {
        IdSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        IdSet { bits }
    }

    /// Panics if an id is outside the universe.
    pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Self {
        let mut s = IdSet::empty(universe);
        for id in ids {
            s.insert(id);
        }
        s
    }

    /// Members `members[i]` for every set bit `i` of `mask`.
    pub fn from_mask(universe: usize, members: &[usize], mask: u64) -> Self {
        let mut s = IdSet::empty(universe);
        for (i, &m) in members.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.insert(m);
            }
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.bits.contains(id)
    }

    pub fn insert(&mut self, id: usize) {
        assert!(id < self.universe(), "id {id} outside universe {}", self.universe());
        self.bits.insert(id);
    }

    pub fn remove(&mut self, id: usize) {
        if id < self.universe() {
            self.bits.set(id, false);
        }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &IdSet) -> IdSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        IdSet { bits }
    }

    pub fn intersection(&self, other: &IdSet) -> IdSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        IdSet { bits }
    }

    pub fn difference(&self, other: &IdSet) -> IdSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        IdSet { bits }
    }

    pub fn is_subset(&self, other: &IdSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn with(&self, id: usize) -> IdSet {
        let mut s = self.clone();
        s.insert(id);
        s
    }

    pub fn without(&self, id: usize) -> IdSet {
        let mut s = self.clone();
        s.remove(id);
        s
    }
}

impl fmt::Debug for IdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for IdSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
