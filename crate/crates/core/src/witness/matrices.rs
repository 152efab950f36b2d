use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::finring::{make_matrix_ring, mat2_mul, mat_inverse_scan, units, Elem, Pool, RingTable};
use crate::maps::{tensor_id_into, MapTable};
use crate::report::{CheckReport, Tally};

pub type Mat2 = [Elem; 4];

fn is_unit_by_scan(ring: &RingTable, m: &Mat2, cap: usize) -> Option<bool> {
    mat_inverse_scan(ring, 2, m, cap).map(|inv| inv.is_some())
}

/// The matrices `γ_c = [[c,λ],[λ,0]]`, `α_a = [[1,a],[0,λ]]`,
/// `β_b = [[b,λ],[1,0]]` with their invertibility in `M_2(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WitnessMatrices {
    pub gamma: Mat2,
    pub alpha: Mat2,
    pub beta: Mat2,
    /// `None` when `|R|^4` exceeds the scan cap.
    pub gamma_unit: Option<bool>,
    pub alpha_unit: Option<bool>,
    pub beta_unit: Option<bool>,
}

impl WitnessMatrices {
    pub fn all_invertible(&self) -> bool {
        [self.gamma_unit, self.alpha_unit, self.beta_unit].iter().all(|u| *u == Some(true))
    }
}

pub fn invertible_witness_matrices(
    ring: &RingTable,
    lambda: Elem,
    a: Elem,
    b: Elem,
    c: Elem,
    cap: usize,
) -> Result<WitnessMatrices> {
    let (zero, one) = (ring.zero(), ring.one());
    let is_unit = ring.elements().any(|y| ring.mul(lambda, y) == one && ring.mul(y, lambda) == one);
    if !is_unit {
        return Err(Error::NotAUnit(lambda));
    }
    let gamma = [c, lambda, lambda, zero];
    let alpha = [one, a, zero, lambda];
    let beta = [b, lambda, one, zero];
    Ok(WitnessMatrices {
        gamma_unit: is_unit_by_scan(ring, &gamma, cap),
        alpha_unit: is_unit_by_scan(ring, &alpha, cap),
        beta_unit: is_unit_by_scan(ring, &beta, cap),
        gamma,
        alpha,
        beta,
    })
}

/// `u = [[1,a],[-a*,1]]`, `v = [[b,-1],[1,b*]]` and their product.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UvPair {
    pub u: Mat2,
    pub v: Mat2,
    pub uv: Mat2,
    /// Upper-left entry of `uv` equals `a + b`.
    pub corner_ok: bool,
    /// `uv = [[a+b, -1+ab*], [1-a*b, a*+b*]]`.
    pub product_ok: bool,
    pub u_unit: Option<bool>,
    pub v_unit: Option<bool>,
}

fn uv_matrices(ring: &RingTable, star: &[Elem], a: Elem, b: Elem) -> (Mat2, Mat2, Mat2, Mat2) {
    let s = |x: Elem| star[x as usize];
    let (one, m1) = (ring.one(), ring.neg(ring.one()));
    let u = [one, a, ring.neg(s(a)), one];
    let v = [b, m1, one, s(b)];
    let uv = mat2_mul(ring, &u, &v);
    let expected = [
        ring.add(a, b),
        ring.add(m1, ring.mul(a, s(b))),
        ring.sub(one, ring.mul(s(a), b)),
        ring.add(s(a), s(b)),
    ];
    (u, v, uv, expected)
}

pub fn build_uv_pair(ring: &RingTable, a: Elem, b: Elem, cap: usize) -> Result<UvPair> {
    let star = ring.require_star()?;
    let (u, v, uv, expected) = uv_matrices(ring, star, a, b);
    Ok(UvPair {
        corner_ok: uv[0] == ring.add(a, b),
        product_ok: uv == expected,
        u_unit: is_unit_by_scan(ring, &u, cap),
        v_unit: is_unit_by_scan(ring, &v, cap),
        u,
        v,
        uv,
    })
}

/// Product identity of [`build_uv_pair`] for `a` in `rows` and all `b`,
/// without the invertibility scans.
pub fn uv_identity_rows(ring: &RingTable, rows: Range<Elem>) -> Result<CheckReport> {
    let star = ring.require_star()?;
    let mut t = Tally::new("uv_product_identity");
    for a in rows {
        for b in ring.elements() {
            let (_, _, uv, expected) = uv_matrices(ring, star, a, b);
            t.check(uv[0] == ring.add(a, b) && uv == expected, [a, b]);
        }
    }
    Ok(t.finish())
}

pub fn uv_identity_check(ring: &RingTable) -> Result<CheckReport> {
    uv_identity_rows(ring, ring.elements())
}

/// Checks that `φ ⊗ id_k` (k = 1 or 2) sends the pool of `M_k(dom)` into the
/// pool of `M_k(cod)` and is multiplicative there.
pub fn group_hom_restriction_check(phi: &MapTable, k: usize, pool: Pool, cap: usize) -> Result<CheckReport> {
    let lifted;
    let phi_k = match k {
        1 => phi,
        2 => {
            let dom = make_matrix_ring(phi.dom(), 2, cap)?;
            let cod = make_matrix_ring(phi.cod(), 2, cap)?;
            lifted = tensor_id_into(phi, &dom, &cod)?;
            &lifted
        }
        _ => return Err(Error::InvalidParameter(alloc::format!("group restriction supports k = 1, 2, got {k}"))),
    };
    let (d, c) = (&**phi_k.dom(), &**phi_k.cod());
    let dom_pool = pool.elements(d)?;
    let mut in_cod = alloc::vec![false; c.size()];
    let cod_pool: Vec<Elem> = match pool {
        Pool::Units => units_among(c, dom_pool.iter().map(|&u| phi_k.apply(u))),
        Pool::Unitaries => pool.elements(c)?,
    };
    for u in cod_pool {
        in_cod[u as usize] = true;
    }
    let mut t = Tally::new("group_hom_restriction");
    for &u in &dom_pool {
        let fu = phi_k.apply(u);
        t.check(in_cod[fu as usize], [u]);
        for &v in &dom_pool {
            t.check(phi_k.apply(d.mul(u, v)) == c.mul(fu, phi_k.apply(v)), [u, v]);
        }
    }
    Ok(t.finish())
}

/// Which of the candidate elements are units; avoids a full unit scan of a
/// large codomain.
fn units_among(ring: &RingTable, candidates: impl Iterator<Item = Elem>) -> Vec<Elem> {
    if ring.size() <= 4096 {
        return units(ring);
    }
    let one = ring.one();
    let mut out: Vec<Elem> = candidates
        .filter(|&x| ring.elements().any(|y| ring.mul(x, y) == one && ring.mul(y, x) == one))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
