use alloc::format;
use alloc::vec::Vec;

use crate::{ElementSet, Error, Result, SetFunction};

/// `f(S) = |⋃_{s∈S} tags(s)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct SetCoverObjective {
    tags_of: Vec<Vec<u32>>,
    universe: usize,
    masks: Option<Vec<u64>>,
}

impl SetCoverObjective {
    pub fn new(tags_of: Vec<Vec<u32>>, universe: usize) -> Result<Self> {
        check_tags(&tags_of, universe)?;
        let masks = small_masks(&tags_of, universe);
        Ok(Self {
            tags_of,
            universe,
            masks,
        })
    }

    pub fn tags_of(&self, x: usize) -> &[u32] {
        &self.tags_of[x]
    }

    pub fn universe(&self) -> usize {
        self.universe
    }
}

impl SetFunction for SetCoverObjective {
    fn ground_size(&self) -> usize {
        self.tags_of.len()
    }

    fn eval(&self, set: &ElementSet) -> Result<f64> {
        if let Some(masks) = &self.masks {
            return Ok(covered_mask(masks, set).count_ones() as f64);
        }
        Ok(covered_tags(&self.tags_of, set).len() as f64)
    }

    fn eval_bits(&self, bits: u64) -> Option<Result<f64>> {
        let masks = self.masks.as_ref()?;
        Some(Ok(covered_bits(masks, bits).count_ones() as f64))
    }
}

/// `f(S) = Σ_{t ∈ ⋃ tags(s)} weight(t)`, summed in ascending tag order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCoverObjective {
    tags_of: Vec<Vec<u32>>,
    weights: Vec<f64>,
    masks: Option<Vec<u64>>,
}

impl WeightedCoverObjective {
    pub fn new(tags_of: Vec<Vec<u32>>, weights: Vec<f64>) -> Result<Self> {
        check_tags(&tags_of, weights.len())?;
        if let Some(t) = weights.iter().position(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidInstance(format!(
                "tag {t} has weight {}, expected a finite non-negative value",
                weights[t]
            )));
        }
        let masks = small_masks(&tags_of, weights.len());
        Ok(Self {
            tags_of,
            weights,
            masks,
        })
    }

    pub fn tags_of(&self, x: usize) -> &[u32] {
        &self.tags_of[x]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn weight_of(&self, mut covered: u64) -> f64 {
        let mut total = 0.0;
        while covered != 0 {
            total += self.weights[covered.trailing_zeros() as usize];
            covered &= covered - 1;
        }
        total
    }
}

impl SetFunction for WeightedCoverObjective {
    fn ground_size(&self) -> usize {
        self.tags_of.len()
    }

    fn eval(&self, set: &ElementSet) -> Result<f64> {
        if let Some(masks) = &self.masks {
            return Ok(self.weight_of(covered_mask(masks, set)));
        }
        Ok(covered_tags(&self.tags_of, set)
            .into_iter()
            .map(|t| self.weights[t as usize])
            .sum())
    }

    fn eval_bits(&self, bits: u64) -> Option<Result<f64>> {
        let masks = self.masks.as_ref()?;
        Some(Ok(self.weight_of(covered_bits(masks, bits))))
    }
}

fn check_tags(tags_of: &[Vec<u32>], universe: usize) -> Result<()> {
    if tags_of.is_empty() {
        return Err(Error::InvalidInstance("cover objective has no elements".into()));
    }
    for (x, tags) in tags_of.iter().enumerate() {
        if let Some(&t) = tags.iter().find(|&&t| t as usize >= universe) {
            return Err(Error::InvalidInstance(format!(
                "element {x} references tag {t} outside a universe of {universe}"
            )));
        }
    }
    Ok(())
}

/// Per-element tag bit masks when the universe fits in one word. Both
/// evaluation paths visit covered tags in ascending order, so they agree
/// bit for bit.
fn small_masks(tags_of: &[Vec<u32>], universe: usize) -> Option<Vec<u64>> {
    (universe <= 64).then(|| {
        tags_of
            .iter()
            .map(|tags| tags.iter().fold(0u64, |m, &t| m | 1 << t))
            .collect()
    })
}

fn covered_mask(masks: &[u64], set: &ElementSet) -> u64 {
    set.iter().fold(0, |m, x| m | masks[x])
}

fn covered_bits(masks: &[u64], mut bits: u64) -> u64 {
    let mut covered = 0;
    while bits != 0 {
        covered |= masks[bits.trailing_zeros() as usize];
        bits &= bits - 1;
    }
    covered
}

fn covered_tags(tags_of: &[Vec<u32>], set: &ElementSet) -> Vec<u32> {
    let mut covered: Vec<u32> = set.iter().flat_map(|x| tags_of[x].iter().copied()).collect();
    covered.sort_unstable();
    covered.dedup();
    covered
}
