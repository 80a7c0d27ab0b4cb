//! Sorted eigenvalue multisets with provenance.

use serde::Serialize;

use crate::scalar::Real;

/// Default absolute tolerance for merging coincident eigenvalues.
pub const DEFAULT_MERGE_TOLERANCE: f64 = 1e-9;

/// One contributor to a spectrum: a value with its multiplicity and the
/// quantum numbers that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Contribution<T: Real, L> {
    pub value: T,
    pub multiplicity: usize,
    pub label: L,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry<T: Real, L> {
    pub value: T,
    pub multiplicity: usize,
    pub contributors: Vec<L>,
}

/// Eigenvalues with `|value| <= cutoff`, ascending, coincident values merged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum<T: Real, L> {
    pub entries: Vec<SpectrumEntry<T, L>>,
    pub cutoff: T,
    pub merge_tolerance: T,
}

impl<T: Real, L: Clone> Spectrum<T, L> {
    /// Sorts and merges raw contributions. Values whose consecutive gaps are
    /// at most `merge_tolerance` land in one entry whose value is the
    /// multiplicity-weighted mean.
    pub fn from_contributions(
        mut raw: Vec<Contribution<T, L>>,
        cutoff: T,
        merge_tolerance: T,
    ) -> Self {
        raw.retain(|c| c.value.abs() <= cutoff);
        raw.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite eigenvalues"));
        let mut entries: Vec<SpectrumEntry<T, L>> = Vec::new();
        let mut sums: Vec<T> = Vec::new();
        let mut last = T::neg_infinity();
        for c in raw {
            let join = !entries.is_empty() && c.value - last <= merge_tolerance;
            if join {
                let e = entries.last_mut().unwrap();
                e.multiplicity += c.multiplicity;
                e.contributors.push(c.label);
                *sums.last_mut().unwrap() += c.value * T::from_usize(c.multiplicity).unwrap();
            } else {
                entries.push(SpectrumEntry {
                    value: c.value,
                    multiplicity: c.multiplicity,
                    contributors: vec![c.label],
                });
                sums.push(c.value * T::from_usize(c.multiplicity).unwrap());
            }
            last = c.value;
        }
        for (e, s) in entries.iter_mut().zip(sums) {
            e.value = s / T::from_usize(e.multiplicity).unwrap();
        }
        Self {
            entries,
            cutoff,
            merge_tolerance,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Sum of multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Entry with the smallest `|value|`.
    pub fn smallest_abs(&self) -> Option<&SpectrumEntry<T, L>> {
        self.entries
            .iter()
            .min_by(|a, b| a.value.abs().partial_cmp(&b.value.abs()).unwrap())
    }

    /// Smallest strictly positive value (greater than the merge tolerance).
    pub fn smallest_positive(&self) -> Option<T> {
        self.entries
            .iter()
            .map(|e| e.value)
            .find(|v| *v > self.merge_tolerance)
    }

    /// Entry whose value lies within the merge tolerance of `value`.
    pub fn find(&self, value: T) -> Option<&SpectrumEntry<T, L>> {
        self.entries
            .iter()
            .find(|e| (e.value - value).abs() <= self.merge_tolerance)
    }

    /// Multiplicity at `value`, zero if absent.
    pub fn multiplicity_at(&self, value: T) -> usize {
        self.find(value).map_or(0, |e| e.multiplicity)
    }

    /// Flat list of values repeated by multiplicity.
    pub fn expanded(&self) -> Vec<T> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect()
    }

    /// Entries restricted to `|value| <= bound`.
    pub fn window(&self, bound: T) -> Vec<(T, usize)> {
        self.entries
            .iter()
            .filter(|e| e.value.abs() <= bound)
            .map(|e| (e.value, e.multiplicity))
            .collect()
    }
}
