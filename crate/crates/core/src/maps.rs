//! Arbitrary total maps between finite rings and the predicates that
//! classify them.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::finring::{make_matrix_ring, Elem, MatrixRingView, RingTable};
use crate::report::{CheckReport, Tally};

pub use crate::report::{Counts, WITNESS_LIMIT};

/// A total function `dom -> cod` stored as its image array.
#[derive(Debug, Clone)]
pub struct MapTable {
    dom: Arc<RingTable>,
    cod: Arc<RingTable>,
    img: Vec<Elem>,
}

impl MapTable {
    pub fn new(dom: Arc<RingTable>, cod: Arc<RingTable>, img: Vec<Elem>) -> Result<Self> {
        if img.len() != dom.size() {
            return Err(Error::InvalidMap(format!(
                "{} images for a domain of {} elements",
                img.len(),
                dom.size()
            )));
        }
        if let Some(bad) = img.iter().find(|&&y| y as usize >= cod.size()) {
            return Err(Error::InvalidMap(format!("image {bad} outside a codomain of {} elements", cod.size())));
        }
        Ok(MapTable { dom, cod, img })
    }

    pub fn from_fn(dom: Arc<RingTable>, cod: Arc<RingTable>, f: impl FnMut(Elem) -> Elem) -> Result<Self> {
        let img = dom.elements().map(f).collect();
        Self::new(dom, cod, img)
    }

    pub fn identity(ring: Arc<RingTable>) -> Self {
        let img = ring.elements().collect();
        MapTable { dom: ring.clone(), cod: ring, img }
    }

    pub fn zero(dom: Arc<RingTable>, cod: Arc<RingTable>) -> Self {
        let img = alloc::vec![cod.zero(); dom.size()];
        MapTable { dom, cod, img }
    }

    pub fn dom(&self) -> &Arc<RingTable> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<RingTable> {
        &self.cod
    }

    pub fn img(&self) -> &[Elem] {
        &self.img
    }

    pub fn into_img(self) -> Vec<Elem> {
        self.img
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.img[x as usize]
    }
}

impl PartialEq for MapTable {
    fn eq(&self, other: &Self) -> bool {
        self.dom.label() == other.dom.label() && self.cod.label() == other.cod.label() && self.img == other.img
    }
}

/// `φ(xy) = φ(x)φ(y)` for `x` in `rows` and all `y`.
pub fn is_multiplicative_rows(phi: &MapTable, rows: Range<Elem>) -> CheckReport {
    let (d, c) = (&*phi.dom, &*phi.cod);
    let mut t = Tally::new("multiplicative");
    for x in rows {
        let fx = phi.apply(x);
        for y in d.elements() {
            t.check(phi.apply(d.mul(x, y)) == c.mul(fx, phi.apply(y)), [x, y]);
        }
    }
    t.finish()
}

pub fn is_multiplicative(phi: &MapTable) -> CheckReport {
    is_multiplicative_rows(phi, phi.dom.elements())
}

/// `φ(x+y) = φ(x)+φ(y)` for `x` in `rows` and all `y`.
pub fn is_additive_rows(phi: &MapTable, rows: Range<Elem>) -> CheckReport {
    let (d, c) = (&*phi.dom, &*phi.cod);
    let mut t = Tally::new("additive");
    for x in rows {
        let fx = phi.apply(x);
        for y in d.elements() {
            t.check(phi.apply(d.add(x, y)) == c.add(fx, phi.apply(y)), [x, y]);
        }
    }
    t.finish()
}

pub fn is_additive(phi: &MapTable) -> CheckReport {
    is_additive_rows(phi, phi.dom.elements())
}

/// Multiplicative and additive. No unitality is required.
pub fn is_ring_hom(phi: &MapTable) -> CheckReport {
    CheckReport::all("ring_hom", [is_multiplicative(phi), is_additive(phi)])
}

/// `φ(1) = 1`, kept apart from the homomorphism predicates.
pub fn is_unital(phi: &MapTable) -> CheckReport {
    let mut t = Tally::new("unital");
    t.check(phi.apply(phi.dom.one()) == phi.cod.one(), [phi.dom.one()]);
    t.finish()
}

pub fn respects_star(phi: &MapTable) -> Result<CheckReport> {
    let ds = phi.dom.require_star()?;
    let cs = phi.cod.require_star()?;
    let mut t = Tally::new("star");
    for x in phi.dom.elements() {
        t.check(phi.apply(ds[x as usize]) == cs[phi.apply(x) as usize], [x]);
    }
    Ok(t.finish())
}

/// `φ(1) = φ(e11) + φ(e22)` on a 2x2 matrix domain.
pub fn corner_relation_holds(phi: &MapTable) -> Result<CheckReport> {
    let view = MatrixRingView::of_2x2(&phi.dom)?;
    let (one, e11, e22) = (phi.dom.one(), view.unit(0, 0), view.unit(1, 1));
    let mut t = Tally::new("corner_relation");
    t.check(phi.apply(one) == phi.cod.add(phi.apply(e11), phi.apply(e22)), [one, e11, e22]);
    Ok(t.finish())
}

/// `φ(i·1) = iφ(e11) + iφ(e22)` on a 2x2 matrix domain.
pub fn i_relation_holds(phi: &MapTable) -> Result<CheckReport> {
    let view = MatrixRingView::of_2x2(&phi.dom)?;
    let di = phi.dom.require_i()?;
    let ci = phi.cod.require_i()?;
    let c = &*phi.cod;
    let (e11, e22) = (view.unit(0, 0), view.unit(1, 1));
    let rhs = c.add(c.mul(ci, phi.apply(e11)), c.mul(ci, phi.apply(e22)));
    let mut t = Tally::new("i_relation");
    t.check(phi.apply(di) == rhs, [di, e11, e22]);
    Ok(t.finish())
}

/// `φ ⊗ id_{M_k}`: applies `φ` entrywise to `k x k` matrices.
pub fn tensor_id(phi: &MapTable, k: usize, cap: usize) -> Result<MapTable> {
    let dom = make_matrix_ring(&phi.dom, k, cap)?;
    let cod = make_matrix_ring(&phi.cod, k, cap)?;
    tensor_id_into(phi, &dom, &cod)
}

/// [`tensor_id`] with prebuilt matrix rings over `φ`'s domain and codomain.
pub fn tensor_id_into(phi: &MapTable, dom: &MatrixRingView, cod: &MatrixRingView) -> Result<MapTable> {
    let same = |a: &RingTable, b: &RingTable| a.label() == b.label() && a.size() == b.size();
    if dom.k() != cod.k() || !same(dom.base(), &phi.dom) || !same(cod.base(), &phi.cod) {
        return Err(Error::InvalidParameter("matrix rings do not match the map".into()));
    }
    let img = dom
        .ring()
        .elements()
        .map(|x| {
            let entries: Vec<Elem> = dom.decode(x).iter().map(|&a| phi.apply(a)).collect();
            cod.encode(&entries)
        })
        .collect();
    MapTable::new(dom.ring().clone(), cod.ring().clone(), img)
}

/// `ad - bc` on a 2x2 matrix ring, into the base ring. Multiplicative only
/// when the base is commutative.
pub fn determinant_map(view: &MatrixRingView) -> Result<MapTable> {
    if view.k() != 2 {
        return Err(Error::NotAMatrixRing(view.ring().label().into()));
    }
    let b = view.base().clone();
    MapTable::from_fn(view.ring().clone(), b.clone(), |x| {
        let e = view.decode(x);
        b.sub(b.mul(e[0], e[3]), b.mul(e[1], e[2]))
    })
}

/// `x -> x^e` on a ring.
pub fn power_map(ring: &Arc<RingTable>, e: u32) -> MapTable {
    MapTable { dom: ring.clone(), cod: ring.clone(), img: ring.elements().map(|x| ring.pow(x, e)).collect() }
}

/// Finite stand-in for homogeneity over a ground field.
///
/// On a matrix domain the scalars are base-ring elements acting as scalar
/// matrices; otherwise they are domain elements. Checks
/// `φ(λx) = φ(λ·1)φ(x)` for every scalar and element, and on 2x2 domains
/// additivity of `φ` on the span `{λ e11 + μ e22}` of the scalars.
pub fn scalar_linearity_holds(phi: &MapTable, scalars: &[Elem]) -> Result<CheckReport> {
    let d = &*phi.dom;
    let c = &*phi.cod;
    let view = MatrixRingView::of(&phi.dom);
    let (lift, scalar_ring): (Vec<Elem>, &RingTable) = match &view {
        Some(v) => (scalars.iter().map(|&s| v.scalar(s)).collect(), &**v.base()),
        None => (scalars.to_vec(), d),
    };
    for &s in scalars {
        if s as usize >= scalar_ring.size() {
            return Err(Error::InvalidParameter(format!("scalar {s} out of range")));
        }
        if !scalar_ring.is_central(s) {
            return Err(Error::NonCentralScalar(s));
        }
    }
    let mut t = Tally::new("scalar_linearity");
    for (&s, &ls) in scalars.iter().zip(&lift) {
        let fl = phi.apply(ls);
        for x in d.elements() {
            t.check(phi.apply(d.mul(ls, x)) == c.mul(fl, phi.apply(x)), [s, x]);
        }
    }
    if let Some(v) = view.filter(|v| v.k() == 2) {
        let mut span: Vec<Elem> = Vec::new();
        for &l in scalars {
            for &m in scalars {
                span.push(d.add(v.single(l, 0, 0), v.single(m, 1, 1)));
            }
        }
        span.sort_unstable();
        span.dedup();
        for &s in &span {
            for &u in &span {
                t.check(phi.apply(d.add(s, u)) == c.add(phi.apply(s), phi.apply(u)), [s, u]);
            }
        }
    }
    Ok(t.finish())
}
