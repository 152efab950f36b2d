use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{check_cap, Arith, Elem, RingTable};
use crate::error::{Error, Result};

/// Largest supported matrix dimension.
pub const MAX_MATRIX_DIM: usize = 8;

/// Row-major digit layout of a matrix ring over `base`.
///
/// The raw index of an array is its base-`|base|` numeral with entry (0,0)
/// as the most significant digit. Raw index 1 and the identity matrix swap
/// places so that one is index 1.
#[derive(Debug, Clone)]
pub(crate) struct MatrixLayout {
    pub(crate) base: Arc<RingTable>,
    pub(crate) k: usize,
    entries: Vec<Elem>,
    place: Vec<usize>,
    identity_raw: usize,
}

impl MatrixLayout {
    #[inline]
    fn swap(&self, x: usize) -> usize {
        if self.identity_raw <= 1 {
            x
        } else if x == 1 {
            self.identity_raw
        } else if x == self.identity_raw {
            1
        } else {
            x
        }
    }

    #[inline]
    pub(crate) fn decode(&self, x: Elem) -> &[Elem] {
        let kk = self.k * self.k;
        &self.entries[x as usize * kk..(x as usize + 1) * kk]
    }

    #[inline]
    pub(crate) fn encode(&self, entries: &[Elem]) -> Elem {
        let raw: usize = entries.iter().zip(&self.place).map(|(&e, &p)| e as usize * p).sum();
        self.swap(raw) as Elem
    }

    #[inline]
    pub(crate) fn add(&self, x: Elem, y: Elem) -> Elem {
        let (a, b) = (self.decode(x), self.decode(y));
        if self.k == 2 {
            let (ad, p) = (|x, y| self.base.add(x, y), &self.place);
            let raw = ad(a[0], b[0]) as usize * p[0]
                + ad(a[1], b[1]) as usize * p[1]
                + ad(a[2], b[2]) as usize * p[2]
                + ad(a[3], b[3]) as usize;
            return self.swap(raw) as Elem;
        }
        let mut raw = 0;
        for p in 0..a.len() {
            raw += self.base.add(a[p], b[p]) as usize * self.place[p];
        }
        self.swap(raw) as Elem
    }

    #[inline]
    pub(crate) fn mul(&self, x: Elem, y: Elem) -> Elem {
        let (a, b) = (self.decode(x), self.decode(y));
        let k = self.k;
        let base = &*self.base;
        if k == 2 {
            let (m, ad) = (|x, y| base.mul(x, y), |x, y| base.add(x, y));
            let p = &self.place;
            let raw = ad(m(a[0], b[0]), m(a[1], b[2])) as usize * p[0]
                + ad(m(a[0], b[1]), m(a[1], b[3])) as usize * p[1]
                + ad(m(a[2], b[0]), m(a[3], b[2])) as usize * p[2]
                + ad(m(a[2], b[1]), m(a[3], b[3])) as usize * p[3];
            return self.swap(raw) as Elem;
        }
        let mut raw = 0;
        for i in 0..k {
            for j in 0..k {
                let mut acc = base.zero();
                for l in 0..k {
                    acc = base.add(acc, base.mul(a[i * k + l], b[l * k + j]));
                }
                raw += acc as usize * self.place[i * k + j];
            }
        }
        self.swap(raw) as Elem
    }
}

/// The ring `M_k(base)` together with its entry/index conversion.
#[derive(Debug, Clone)]
pub struct MatrixRingView {
    ring: Arc<RingTable>,
}

/// Builds `M_k(base)` with row-by-column products, conjugate-transpose
/// involution and `i * identity` as imaginary unit when the base has them.
pub fn make_matrix_ring(base: &Arc<RingTable>, k: usize, cap: usize) -> Result<MatrixRingView> {
    if k == 0 || k > MAX_MATRIX_DIM {
        return Err(Error::InvalidParameter(format!("matrix dimension {k} outside 1..={MAX_MATRIX_DIM}")));
    }
    let kk = k * k;
    let n = base.size();
    let size = (n as u128)
        .checked_pow(kk as u32)
        .map_or(Err(Error::SizeCapExceeded { size: u128::MAX, cap }), |s| check_cap(s, cap))?;

    let mut place = alloc::vec![1usize; kk];
    for p in (0..kk.saturating_sub(1)).rev() {
        place[p] = place[p + 1] * n;
    }
    let identity_raw: usize = (0..kk)
        .filter(|p| p / k == p % k)
        .map(|p| base.one() as usize * place[p])
        .sum();

    let mut layout = MatrixLayout { base: base.clone(), k, entries: Vec::new(), place, identity_raw };
    let mut entries = alloc::vec![0 as Elem; size * kk];
    for raw in 0..size {
        let x = layout.swap(raw);
        let mut rest = raw;
        for p in 0..kk {
            entries[x * kk + p] = (rest / layout.place[p]) as Elem;
            rest %= layout.place[p];
        }
    }
    layout.entries = entries;

    let neg = (0..size as Elem)
        .map(|x| {
            let e: Vec<Elem> = layout.decode(x).iter().map(|&a| base.neg(a)).collect();
            layout.encode(&e)
        })
        .collect();
    let star = base.star_table().map(|bs| {
        (0..size as Elem)
            .map(|x| {
                let a = layout.decode(x);
                let t: Vec<Elem> = (0..kk).map(|p| bs[a[(p % k) * k + p / k] as usize]).collect();
                layout.encode(&t)
            })
            .collect()
    });
    let scalar = |s: Elem| {
        let d: Vec<Elem> = (0..kk).map(|p| if p / k == p % k { s } else { base.zero() }).collect();
        layout.encode(&d)
    };
    let one = scalar(base.one());
    let zero = layout.encode(&alloc::vec![base.zero(); kk]);
    let i_elem = base.i_elem().map(scalar);

    let mut ring = RingTable {
        size,
        zero,
        one,
        neg,
        star,
        i_elem,
        label: format!("mat:{k}:{}", base.label()),
        arith: Arith::Matrix,
        matrix: Some(layout),
    };
    ring.materialize();
    Ok(MatrixRingView { ring: Arc::new(ring) })
}

impl MatrixRingView {
    /// Recovers the matrix structure of a ring built by [`make_matrix_ring`].
    pub fn of(ring: &Arc<RingTable>) -> Option<MatrixRingView> {
        ring.matrix_layout().map(|_| MatrixRingView { ring: ring.clone() })
    }

    /// Like [`MatrixRingView::of`] but only for `2 x 2` matrix rings.
    pub fn of_2x2(ring: &Arc<RingTable>) -> Result<MatrixRingView> {
        match Self::of(ring) {
            Some(v) if v.k() == 2 => Ok(v),
            _ => Err(Error::NotAMatrixRing(ring.label().into())),
        }
    }

    fn layout(&self) -> &MatrixLayout {
        self.ring.layout()
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<RingTable> {
        &self.layout().base
    }

    pub fn k(&self) -> usize {
        self.layout().k
    }

    pub fn encode(&self, entries: &[Elem]) -> Elem {
        assert_eq!(entries.len(), self.k() * self.k(), "wrong number of matrix entries");
        self.layout().encode(entries)
    }

    pub fn decode(&self, x: Elem) -> &[Elem] {
        self.layout().decode(x)
    }

    /// Entry `(i, j)`, zero-based.
    pub fn entry(&self, x: Elem, i: usize, j: usize) -> Elem {
        self.decode(x)[i * self.k() + j]
    }

    /// `a ⊗ e_ij`: the matrix with `a` at `(i, j)` and zeros elsewhere.
    pub fn single(&self, a: Elem, i: usize, j: usize) -> Elem {
        let k = self.k();
        let mut e = alloc::vec![self.base().zero(); k * k];
        e[i * k + j] = a;
        self.layout().encode(&e)
    }

    /// Matrix unit `e_ij`, zero-based.
    pub fn unit(&self, i: usize, j: usize) -> Elem {
        self.single(self.base().one(), i, j)
    }

    pub fn scalar(&self, lambda: Elem) -> Elem {
        let k = self.k();
        let e: Vec<Elem> = (0..k * k)
            .map(|p| if p / k == p % k { lambda } else { self.base().zero() })
            .collect();
        self.layout().encode(&e)
    }
}
