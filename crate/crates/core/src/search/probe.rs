use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::enumerate::{Enumerator, FilterSet};
use crate::error::{Error, Result};
use crate::finring::{Elem, MatrixRingView, RingTable};
use crate::maps::{corner_relation_holds, is_additive, MapTable};

/// Multiplicative maps that are not additive.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexamples {
    pub maps: Vec<MapTable>,
    /// Every branch was searched to the end and the limit was not reached.
    pub exhaustive: bool,
}

/// Enumerates multiplicative maps and keeps the non-additive ones, up to
/// `limit`. On a 2x2 matrix domain every hit must also fail the corner
/// relation; a hit that does not is reported as [`Error::Inconsistent`].
pub fn find_counterexamples(
    dom: Arc<RingTable>,
    cod: Arc<RingTable>,
    limit: usize,
    node_cap: Option<u64>,
) -> Result<Counterexamples> {
    let e = Enumerator::new(dom.clone(), cod, FilterSet::default())?;
    let on_matrices = MatrixRingView::of_2x2(&dom).is_ok();
    let mut maps = Vec::new();
    let mut exhaustive = true;
    let mut failure = None;
    for prefix in e.branches() {
        let r = e.for_each_in_branch(&prefix, node_cap, &mut |img| {
            let m = e.to_map(img.to_vec());
            if !is_additive(&m).pass {
                if on_matrices && corner_relation_holds(&m).map(|c| c.pass).unwrap_or(false) {
                    failure = Some(m);
                    return false;
                }
                if maps.len() == limit {
                    return false;
                }
                maps.push(m);
            }
            true
        });
        if let Some(m) = failure {
            return Err(Error::Inconsistent(alloc::format!(
                "non-additive map satisfies the corner relation: {:?}",
                m.img()
            )));
        }
        exhaustive &= !r.capped;
        if maps.len() == limit && limit > 0 {
            // Stopped early or exactly full: cannot tell whether more exist.
            exhaustive = false;
            break;
        }
    }
    Ok(Counterexamples { maps, exhaustive })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IsomorphismEntry {
    pub img: Vec<Elem>,
    pub additive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UniqueAdditionReport {
    pub dom: String,
    pub cod: String,
    pub isomorphisms: Vec<IsomorphismEntry>,
    pub additive_count: usize,
    /// Every multiplicative isomorphism found is additive.
    pub all_additive: bool,
    pub complete: bool,
}

/// Enumerates the isomorphisms `(R, ·) -> (S, ·)` and reports which are
/// additive.
pub fn unique_addition_probe(r: Arc<RingTable>, s: Arc<RingTable>, node_cap: Option<u64>) -> Result<UniqueAdditionReport> {
    if r.size() != s.size() {
        return Err(Error::SizeMismatch { left: r.size(), right: s.size() });
    }
    // A multiplicative bijection fixes the identity, so `unital` only prunes.
    let filters = FilterSet { unital: true, injective: true, ..Default::default() };
    let e = Enumerator::new(r.clone(), s.clone(), filters)?;
    let out = e.run(u64::MAX - 1, node_cap);
    let isomorphisms: Vec<IsomorphismEntry> = out
        .maps
        .into_iter()
        .map(|img| {
            let additive = is_additive(&e.to_map(img.clone())).pass;
            IsomorphismEntry { img, additive }
        })
        .collect();
    let additive_count = isomorphisms.iter().filter(|i| i.additive).count();
    Ok(UniqueAdditionReport {
        dom: r.label().into(),
        cod: s.label().into(),
        all_additive: additive_count == isomorphisms.len(),
        additive_count,
        isomorphisms,
        complete: out.complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_gaussian, make_matrix_ring, make_zmod, DEFAULT_SIZE_CAP};
    use crate::maps::{determinant_map, power_map};

    fn z(n: u32) -> Arc<RingTable> {
        Arc::new(make_zmod(n).unwrap())
    }

    #[test]
    fn determinant_is_a_counterexample() {
        let v = make_matrix_ring(&z(2), 2, DEFAULT_SIZE_CAP).unwrap();
        let det = determinant_map(&v).unwrap();
        let found = find_counterexamples(v.ring().clone(), z(2), 1000, None).unwrap();
        assert!(found.exhaustive);
        assert!(found.maps.contains(&det));
    }

    #[test]
    fn cube_and_constant_one() {
        let found = find_counterexamples(z(4), z(4), 1000, None).unwrap();
        assert!(found.maps.contains(&power_map(&z(4), 3)));
        let found = find_counterexamples(z(2), z(2), 10, None).unwrap();
        assert_eq!(found.maps.len(), 1);
        assert_eq!(found.maps[0].img(), &[1, 1]);
        let capped = find_counterexamples(z(4), z(4), 1, None).unwrap();
        assert_eq!(capped.maps.len(), 1);
        assert!(!capped.exhaustive);
    }

    #[test]
    fn unique_addition_small() {
        let r = unique_addition_probe(z(2), z(2), None).unwrap();
        assert_eq!(r.isomorphisms, alloc::vec![IsomorphismEntry { img: alloc::vec![0, 1], additive: true }]);
        assert!(r.all_additive && r.complete);
        let r = unique_addition_probe(z(4), z(4), None).unwrap();
        assert!(r.all_additive);
        assert_eq!(r.isomorphisms.len(), 1);
        let g = Arc::new(make_gaussian(3).unwrap());
        // (F9, ·) has four automorphisms x -> x^k, k odd; only k = 1, 3 are additive.
        let r = unique_addition_probe(g.clone(), g, None).unwrap();
        assert_eq!(r.isomorphisms.len(), 4);
        assert_eq!(r.additive_count, 2);
        assert!(!r.all_additive);
        assert!(matches!(unique_addition_probe(z(4), z(2), None), Err(Error::SizeMismatch { left: 4, right: 2 })));
    }
}
