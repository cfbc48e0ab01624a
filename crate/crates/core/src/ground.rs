//! Ground sets split into disjoint groups, and the element-set type every
//! algorithm works on.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Elements `0..n`, each assigned to exactly one of `N` non-empty groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedGroundSet {
    group_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl PartitionedGroundSet {
    /// Builds the partition from per-element group labels. The group count is
    /// `max(label) + 1` and every group in that range must be non-empty.
    pub fn new(group_of: Vec<usize>) -> Result<Self> {
        if group_of.is_empty() {
            return Err(Error::InvalidInstance("ground set is empty".into()));
        }
        let groups = group_of.iter().copied().max().unwrap_or(0) + 1;
        Self::with_groups(group_of, groups)
    }

    /// Like [`PartitionedGroundSet::new`] but with an explicit group count.
    pub fn with_groups(group_of: Vec<usize>, groups: usize) -> Result<Self> {
        if group_of.is_empty() {
            return Err(Error::InvalidInstance("ground set is empty".into()));
        }
        if groups == 0 {
            return Err(Error::InvalidInstance("at least one group is required".into()));
        }
        let mut members = vec![Vec::new(); groups];
        for (x, &g) in group_of.iter().enumerate() {
            if g >= groups {
                return Err(Error::InvalidInstance(format!(
                    "element {x} has group {g}, but only {groups} groups exist"
                )));
            }
            members[g].push(x);
        }
        if let Some(empty) = members.iter().position(Vec::is_empty) {
            return Err(Error::InvalidInstance(format!("group {empty} has no elements")));
        }
        Ok(Self { group_of, members })
    }

    /// A single group holding every element.
    pub fn single_group(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.group_of.len()
    }

    pub fn groups(&self) -> usize {
        self.members.len()
    }

    pub fn group_of(&self, x: usize) -> usize {
        self.group_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.group_of
    }

    /// Elements of group `j` in ascending order.
    pub fn members(&self, j: usize) -> &[usize] {
        &self.members[j]
    }

    pub fn group_size(&self, j: usize) -> usize {
        self.members[j].len()
    }

    /// Per-group counts `|S ∩ U_j|`.
    pub fn counts<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> Vec<usize> {
        let mut counts = vec![0; self.groups()];
        for &x in set {
            counts[self.group_of[x]] += 1;
        }
        counts
    }
}

/// A subset of `0..n`, kept sorted, with O(1) membership.
///
/// Objectives read `as_slice()` in ascending order, so evaluation does not
/// depend on the order elements were inserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    sorted: Vec<usize>,
    mask: Vec<bool>,
}

impl ElementSet {
    pub fn new(n: usize) -> Self {
        Self {
            sorted: Vec::new(),
            mask: vec![false; n],
        }
    }

    pub fn from_elements(n: usize, elements: &[usize]) -> Self {
        let mut set = Self::new(n);
        for &x in elements {
            set.insert(x);
        }
        set
    }

    /// Builds the set whose members are the set bits of `bits`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        let mut set = Self::new(n);
        for x in 0..n {
            if bits >> x & 1 == 1 {
                set.sorted.push(x);
                set.mask[x] = true;
            }
        }
        set
    }

    pub fn universe(n: usize) -> Self {
        Self {
            sorted: (0..n).collect(),
            mask: vec![true; n],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.mask.len()
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Returns `false` when `x` was already present.
    pub fn insert(&mut self, x: usize) -> bool {
        if self.mask[x] {
            return false;
        }
        self.mask[x] = true;
        let pos = self.sorted.partition_point(|&y| y < x);
        self.sorted.insert(pos, x);
        true
    }

    /// Returns `false` when `x` was not present.
    pub fn remove(&mut self, x: usize) -> bool {
        if !self.mask[x] {
            return false;
        }
        self.mask[x] = false;
        let pos = self.sorted.partition_point(|&y| y < x);
        self.sorted.remove(pos);
        true
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.sorted
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.sorted.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.sorted.clone()
    }
}
