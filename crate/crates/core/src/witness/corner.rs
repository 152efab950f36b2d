use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::finring::{mat2_mul, Elem, MatrixRingView, RingTable};
use crate::maps::{corner_relation_holds, i_relation_holds, is_additive, is_multiplicative, MapTable};
use crate::report::{CheckReport, Tally};

/// `[[1,a],[0,0]]·[[b,0],[1,0]] = [[a+b,0],[0,0]]` for `a` in `rows`, all `b`.
pub fn corner_product_identity_rows(ring: &RingTable, rows: Range<Elem>) -> CheckReport {
    let (zero, one) = (ring.zero(), ring.one());
    let mut t = Tally::new("corner_product_identity");
    for a in rows {
        let left = [one, a, zero, zero];
        for b in ring.elements() {
            let prod = mat2_mul(ring, &left, &[b, zero, one, zero]);
            t.check(prod == [ring.add(a, b), zero, zero, zero], [a, b]);
        }
    }
    t.finish()
}

pub fn corner_product_identity_check(ring: &RingTable) -> CheckReport {
    corner_product_identity_rows(ring, ring.elements())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CornerCheck {
    pub row: usize,
    pub col: usize,
    pub pass: bool,
}

/// Evidence that a multiplicative map satisfying the corner relation is
/// additive: it splits over matrix corners and is additive on each corner.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CornerCertificate {
    pub dom: String,
    pub cod: String,
    pub decomposition_pass: bool,
    pub corners: Vec<CornerCheck>,
    /// First failure: `[x]` for the decomposition, `[i, j, a, b]` for a corner.
    pub violation: Option<Vec<Elem>>,
    pub pass: bool,
    /// Independent full additivity scan of the same map.
    pub additive: bool,
}

/// Peels `φ(x) = Σ φ(x_ij ⊗ e_ij)` and checks additivity corner by corner.
pub fn extract_additivity(phi: &MapTable) -> Result<CornerCertificate> {
    let view = MatrixRingView::of_2x2(phi.dom())?;
    let mult = is_multiplicative(phi);
    let corner = corner_relation_holds(phi)?;
    if !mult.pass || !corner.pass {
        let which = if mult.pass { "corner relation" } else { "multiplicativity" };
        return Err(Error::PreconditionFailed(alloc::format!("{which} does not hold")));
    }
    let base = view.base();
    let cod = phi.cod();
    let mut violation = None;

    let mut decomposition_pass = true;
    for x in phi.dom().elements() {
        let e = view.decode(x);
        let pieces = (0..4).map(|p| phi.apply(view.single(e[p], p / 2, p % 2)));
        if phi.apply(x) != cod.sum(pieces) {
            decomposition_pass = false;
            violation.get_or_insert_with(|| vec![x]);
            break;
        }
    }

    let mut corners = Vec::new();
    for p in 0..4 {
        let (i, j) = (p / 2, p % 2);
        let mut pass = true;
        'scan: for a in base.elements() {
            let fa = phi.apply(view.single(a, i, j));
            for b in base.elements() {
                let lhs = cod.add(fa, phi.apply(view.single(b, i, j)));
                if lhs != phi.apply(view.single(base.add(a, b), i, j)) {
                    pass = false;
                    violation.get_or_insert_with(|| vec![i as Elem, j as Elem, a, b]);
                    break 'scan;
                }
            }
        }
        corners.push(CornerCheck { row: i, col: j, pass });
    }

    let pass = decomposition_pass && corners.iter().all(|c| c.pass);
    let additive = is_additive(phi).pass;
    if pass && !additive {
        return Err(Error::Inconsistent("corner certificate passed but the map is not additive".into()));
    }
    Ok(CornerCertificate {
        dom: phi.dom().label().into(),
        cod: cod.label().into(),
        decomposition_pass,
        corners,
        violation,
        pass,
        additive,
    })
}

/// Quantities involved in raising the i-relation to the fourth power.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FourthPowerReport {
    /// `φ(e11)`
    pub p: Elem,
    /// `φ(e22)`
    pub q: Elem,
    /// `φ(0)`
    pub z: Elem,
    /// `(iP + iQ)^4 = φ(1)`
    pub fourth_power_ok: bool,
    /// `(P + Q)^4 = P + Q`
    pub idempotent_sum: bool,
    pub zero_fixed: bool,
    pub corner_holds: bool,
    /// `φ(0) ≠ 0`, so the implication says nothing; reported for review.
    pub flagged: bool,
    pub report: CheckReport,
}

/// Checks that the i-relation forces the corner relation. Both preconditions
/// are verified first.
pub fn fourth_power_reduction(phi: &MapTable) -> Result<FourthPowerReport> {
    if !is_multiplicative(phi).pass {
        return Err(Error::PreconditionFailed("map is not multiplicative".into()));
    }
    if !i_relation_holds(phi)?.pass {
        return Err(Error::PreconditionFailed("i-relation does not hold".into()));
    }
    fourth_power_values(phi)
}

/// [`fourth_power_reduction`] for maps already known to be multiplicative
/// and to satisfy the i-relation, such as enumeration output.
pub fn fourth_power_values(phi: &MapTable) -> Result<FourthPowerReport> {
    let view = MatrixRingView::of_2x2(phi.dom())?;
    let ci = phi.cod().require_i()?;
    phi.dom().require_i()?;
    let c = &**phi.cod();
    let p = phi.apply(view.unit(0, 0));
    let q = phi.apply(view.unit(1, 1));
    let z = phi.apply(phi.dom().zero());
    let one_img = phi.apply(phi.dom().one());
    let ipq = c.add(c.mul(ci, p), c.mul(ci, q));
    let pq = c.add(p, q);
    let corner = corner_relation_holds(phi)?;
    let corner_holds = corner.pass;
    let zero_fixed = z == c.zero();
    let mut report = corner;
    report.predicate = "fourth_power_reduction".into();
    Ok(FourthPowerReport {
        p,
        q,
        z,
        fourth_power_ok: c.pow(ipq, 4) == one_img,
        idempotent_sum: c.pow(pq, 4) == pq,
        zero_fixed,
        corner_holds,
        flagged: !zero_fixed,
        report,
    })
}
