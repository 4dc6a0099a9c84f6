//! Additive tallies of field operations and transform invocations.
//!
//! A [`CostCounter`] is always supplied by the caller and owned by one call
//! tree at a time; nothing in this crate keeps global state. Costs are
//! additive: the counter of a composite call equals the sum of the counters
//! of its parts, which is what the per-node accounting tests rely on.

use alloc::collections::BTreeMap;

/// Tally of field multiplications/additions/divisions plus per-length
/// counts of forward and inverse transforms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CostCounter {
    pub field_mults: u64,
    pub field_adds: u64,
    pub field_divs: u64,
    /// transform length -> (forward invocations, inverse invocations)
    pub transforms: BTreeMap<usize, (u64, u64)>,
}

impl CostCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn mults(&mut self, n: u64) {
        self.field_mults += n;
    }

    #[inline]
    pub fn adds(&mut self, n: u64) {
        self.field_adds += n;
    }

    #[inline]
    pub fn divs(&mut self, n: u64) {
        self.field_divs += n;
    }

    pub fn record_forward(&mut self, len: usize) {
        self.transforms.entry(len).or_insert((0, 0)).0 += 1;
    }

    pub fn record_inverse(&mut self, len: usize) {
        self.transforms.entry(len).or_insert((0, 0)).1 += 1;
    }

    /// Total number of transform invocations of any length and direction.
    pub fn transforms_total(&self) -> u64 {
        self.transforms.values().map(|(f, i)| f + i).sum()
    }

    /// Forward + inverse invocations at one length.
    pub fn transforms_at(&self, len: usize) -> (u64, u64) {
        self.transforms.get(&len).copied().unwrap_or((0, 0))
    }

    /// Butterfly-calibrated weight: each length-n transform contributes
    /// (n/2)*log2(n), the number of multiplications it performs.
    pub fn weighted_transforms(&self) -> u64 {
        self.transforms
            .iter()
            .map(|(&n, &(f, i))| (f + i) * (n as u64 / 2) * n.trailing_zeros() as u64)
            .sum()
    }

    /// Merge another counter into this one.
    pub fn absorb(&mut self, other: &CostCounter) {
        self.field_mults += other.field_mults;
        self.field_adds += other.field_adds;
        self.field_divs += other.field_divs;
        for (&len, &(f, i)) in &other.transforms {
            let e = self.transforms.entry(len).or_insert((0, 0));
            e.0 += f;
            e.1 += i;
        }
    }
}
