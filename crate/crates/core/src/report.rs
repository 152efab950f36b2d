use alloc::string::String;
use alloc::vec::Vec;

use crate::finring::Elem;

/// Maximum number of violating tuples kept per report.
pub const WITNESS_LIMIT: usize = 16;

/// Outcome of a predicate scan, with the violating tuples in ascending
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckReport {
    pub predicate: String,
    pub pass: bool,
    pub witnesses: Vec<Vec<Elem>>,
    pub counts: Counts,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Counts {
    pub checked: u64,
    pub violations: u64,
}

impl CheckReport {
    pub fn passed(predicate: &str, checked: u64) -> Self {
        CheckReport {
            predicate: predicate.into(),
            pass: true,
            witnesses: Vec::new(),
            counts: Counts { checked, violations: 0 },
        }
    }

    /// Merges partial reports of the same predicate produced over disjoint,
    /// ascending slices of the tuple space.
    pub fn merge(predicate: &str, parts: impl IntoIterator<Item = CheckReport>) -> Self {
        let mut tally = Tally::new(predicate);
        for part in parts {
            tally.checked += part.counts.checked;
            tally.violations += part.counts.violations;
            for w in part.witnesses {
                if tally.witnesses.len() < WITNESS_LIMIT {
                    tally.witnesses.push(w);
                }
            }
        }
        tally.finish()
    }

    /// Conjunction of several predicates; witnesses keep the order of `parts`.
    pub fn all(predicate: &str, parts: impl IntoIterator<Item = CheckReport>) -> Self {
        Self::merge(predicate, parts)
    }

    pub fn first_witness(&self) -> Option<&[Elem]> {
        self.witnesses.first().map(Vec::as_slice)
    }
}

/// Accumulates a scan; callers visit tuples in ascending order.
pub(crate) struct Tally {
    predicate: String,
    witnesses: Vec<Vec<Elem>>,
    checked: u64,
    violations: u64,
}

impl Tally {
    pub(crate) fn new(predicate: &str) -> Self {
        Tally { predicate: predicate.into(), witnesses: Vec::new(), checked: 0, violations: 0 }
    }

    #[inline]
    pub(crate) fn check<const N: usize>(&mut self, ok: bool, witness: [Elem; N]) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witnesses.len() < WITNESS_LIMIT {
                self.witnesses.push(witness.to_vec());
            }
        }
    }

    pub(crate) fn finish(self) -> CheckReport {
        CheckReport {
            predicate: self.predicate,
            pass: self.violations == 0,
            witnesses: self.witnesses,
            counts: Counts { checked: self.checked, violations: self.violations },
        }
    }
}
