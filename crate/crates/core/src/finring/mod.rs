//! Finite rings as dense index tables.
//!
//! Elements are the indices `0..size`. Constructed rings are relabeled so
//! that zero is index 0 and one is index 1 whenever the ring has at least two
//! elements. Small rings carry full addition and multiplication tables;
//! larger matrix rings compute products entrywise from their base ring.

mod axioms;
mod matrix;
mod units;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use axioms::{check_axioms, check_matrix_view, AxiomPlan, AxiomReport, FULL_TRIPLE_LIMIT};
pub use matrix::{make_matrix_ring, MatrixRingView, MAX_MATRIX_DIM};
pub use units::{sum_of_units_decompose, unitaries, units, Pool};

pub(crate) use matrix::MatrixLayout;

/// Index of a ring element.
pub type Elem = u32;

/// Default upper bound on the number of elements of a constructed ring.
pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

/// Rings up to this many elements store full operation tables.
pub(crate) const TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone)]
enum Arith {
    Table { add: Vec<Elem>, mul: Vec<Elem> },
    Zmod(u64),
    Gauss(u64),
    Matrix,
}

/// A finite ring with optional involution and imaginary unit.
#[derive(Debug, Clone)]
pub struct RingTable {
    size: usize,
    zero: Elem,
    one: Elem,
    neg: Vec<Elem>,
    star: Option<Vec<Elem>>,
    i_elem: Option<Elem>,
    label: String,
    arith: Arith,
    matrix: Option<MatrixLayout>,
}

fn check_cap(size: u128, cap: usize) -> Result<usize> {
    if size > cap as u128 {
        Err(Error::SizeCapExceeded { size, cap })
    } else {
        Ok(size as usize)
    }
}

/// `Z/nZ` with the identity involution.
pub fn make_zmod(n: u32) -> Result<RingTable> {
    make_zmod_capped(n, DEFAULT_SIZE_CAP)
}

pub fn make_zmod_capped(n: u32, cap: usize) -> Result<RingTable> {
    if n == 0 {
        return Err(Error::InvalidParameter("zmod modulus must be positive".into()));
    }
    let size = check_cap(n as u128, cap)?;
    let m = n as u64;
    let neg = (0..m).map(|x| ((m - x) % m) as Elem).collect();
    let i_elem = (0..m).find(|&x| (x * x) % m == (m - 1) % m).map(|x| x as Elem);
    let mut ring = RingTable {
        size,
        zero: 0,
        one: (1 % m) as Elem,
        neg,
        star: Some((0..n).collect()),
        i_elem,
        label: format!("zmod:{n}"),
        arith: Arith::Zmod(m),
        matrix: None,
    };
    ring.materialize();
    Ok(ring)
}

/// `Z_n[x]/(x^2 + 1)` with conjugation; `a + b i` has index `a + b n`.
pub fn make_gaussian(n: u32) -> Result<RingTable> {
    make_gaussian_capped(n, DEFAULT_SIZE_CAP)
}

pub fn make_gaussian_capped(n: u32, cap: usize) -> Result<RingTable> {
    if n == 0 {
        return Err(Error::InvalidParameter("gauss modulus must be positive".into()));
    }
    let size = check_cap((n as u128) * (n as u128), cap)?;
    let m = n as u64;
    let split = |x: usize| ((x as u64) % m, (x as u64) / m);
    let join = |a: u64, b: u64| ((a % m) + (b % m) * m) as Elem;
    let neg = (0..size)
        .map(|x| {
            let (a, b) = split(x);
            join(m - a, m - b)
        })
        .collect();
    let star = (0..size)
        .map(|x| {
            let (a, b) = split(x);
            join(a, m - b)
        })
        .collect();
    let mut ring = RingTable {
        size,
        zero: 0,
        one: join(1, 0),
        neg,
        star: Some(star),
        i_elem: Some(join(0, 1)),
        label: format!("gauss:{n}"),
        arith: Arith::Gauss(m),
        matrix: None,
    };
    ring.materialize();
    Ok(ring)
}

impl RingTable {
    /// Builds a ring from explicit tables. Only shapes and index ranges are
    /// validated; the ring axioms are left to [`check_axioms`].
    pub fn from_tables(
        label: &str,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        star: Option<Vec<Elem>>,
        i_elem: Option<Elem>,
    ) -> Result<RingTable> {
        let size = (1..=add.len()).find(|s| s * s >= add.len()).unwrap_or(0);
        if size == 0 || size * size != add.len() || mul.len() != add.len() {
            return Err(Error::InvalidParameter("tables must be square and of equal size".into()));
        }
        let in_range = |x: &Elem| (*x as usize) < size;
        let scalars_ok = in_range(&zero) && in_range(&one) && i_elem.as_ref().is_none_or(in_range);
        let star_ok = star.as_ref().is_none_or(|s| s.len() == size && s.iter().all(in_range));
        if !add.iter().all(in_range) || !mul.iter().all(in_range) || !scalars_ok || !star_ok {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        let neg = (0..size)
            .map(|x| {
                (0..size)
                    .find(|&y| add[x * size + y] == zero)
                    .unwrap_or(zero as usize) as Elem
            })
            .collect();
        Ok(RingTable {
            size,
            zero,
            one,
            neg,
            star,
            i_elem,
            label: label.into(),
            arith: Arith::Table { add, mul },
            matrix: None,
        })
    }

    /// Replaces computed arithmetic with lookup tables for small rings.
    fn materialize(&mut self) {
        if self.size > TABLE_LIMIT || matches!(self.arith, Arith::Table { .. }) {
            return;
        }
        let n = self.size as Elem;
        let mut add = Vec::with_capacity(self.size * self.size);
        let mut mul = Vec::with_capacity(self.size * self.size);
        for x in 0..n {
            for y in 0..n {
                add.push(self.add(x, y));
                mul.push(self.mul(x, y));
            }
        }
        self.arith = Arith::Table { add, mul };
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.size as Elem
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.arith {
            Arith::Table { add, .. } => add[x as usize * self.size + y as usize],
            Arith::Zmod(m) => ((x as u64 + y as u64) % m) as Elem,
            Arith::Gauss(m) => {
                let (a, b) = (x as u64 % m, x as u64 / m);
                let (c, d) = (y as u64 % m, y as u64 / m);
                (((a + c) % m) + ((b + d) % m) * m) as Elem
            }
            Arith::Matrix => self.layout().add(x, y),
        }
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.arith {
            Arith::Table { mul, .. } => mul[x as usize * self.size + y as usize],
            Arith::Zmod(m) => ((x as u64 * y as u64) % m) as Elem,
            Arith::Gauss(m) => {
                let (a, b) = (x as u64 % m, x as u64 / m);
                let (c, d) = (y as u64 % m, y as u64 / m);
                let re = (a * c + (m - b * d % m)) % m;
                let im = (a * d + b * c) % m;
                (re + im * m) as Elem
            }
            Arith::Matrix => self.layout().mul(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x as usize]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// Sum of a sequence of elements; zero for the empty sequence.
    pub fn sum(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.zero, |acc, x| self.add(acc, x))
    }

    pub fn pow(&self, x: Elem, e: u32) -> Elem {
        (0..e).fold(self.one, |acc, _| self.mul(acc, x))
    }

    #[inline]
    pub fn star(&self, x: Elem) -> Option<Elem> {
        self.star.as_ref().map(|s| s[x as usize])
    }

    pub fn star_table(&self) -> Option<&[Elem]> {
        self.star.as_deref()
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    pub(crate) fn require_star(&self) -> Result<&[Elem]> {
        self.star.as_deref().ok_or_else(|| Error::MissingInvolution(self.label.clone()))
    }

    pub fn i_elem(&self) -> Option<Elem> {
        self.i_elem
    }

    pub(crate) fn require_i(&self) -> Result<Elem> {
        self.i_elem.ok_or_else(|| Error::MissingImaginaryUnit(self.label.clone()))
    }

    pub fn is_central(&self, x: Elem) -> bool {
        self.elements().all(|y| self.mul(x, y) == self.mul(y, x))
    }

    pub(crate) fn layout(&self) -> &MatrixLayout {
        self.matrix.as_ref().expect("matrix arithmetic without layout")
    }

    pub(crate) fn matrix_layout(&self) -> Option<&MatrixLayout> {
        self.matrix.as_ref()
    }

    /// Converts a ring into an `Arc`, the form shared by views and maps.
    pub fn shared(self) -> Arc<RingTable> {
        Arc::new(self)
    }
}

impl PartialEq for RingTable {
    /// Rings compare by their structure: size, constants and operation tables.
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.star == other.star
            && self.i_elem == other.i_elem
            && self.elements().all(|x| {
                self.elements().all(|y| self.add(x, y) == other.add(x, y) && self.mul(x, y) == other.mul(x, y))
            })
    }
}

/// Entrywise arithmetic on `k x k` arrays over a base ring, used where the
/// full matrix ring would be too large to index.
pub fn mat_mul(base: &RingTable, k: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![base.zero(); k * k];
    for i in 0..k {
        for j in 0..k {
            let mut acc = base.zero();
            for l in 0..k {
                acc = base.add(acc, base.mul(a[i * k + l], b[l * k + j]));
            }
            out[i * k + j] = acc;
        }
    }
    out
}

/// [`mat_mul`] for `2 x 2` arrays, without allocating.
#[inline]
pub fn mat2_mul(base: &RingTable, a: &[Elem; 4], b: &[Elem; 4]) -> [Elem; 4] {
    let dot = |p, q, r, s| base.add(base.mul(p, q), base.mul(r, s));
    [dot(a[0], b[0], a[1], b[2]), dot(a[0], b[1], a[1], b[3]), dot(a[2], b[0], a[3], b[2]), dot(a[2], b[1], a[3], b[3])]
}

pub fn mat_add(base: &RingTable, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| base.add(x, y)).collect()
}

pub fn mat_identity(base: &RingTable, k: usize) -> Vec<Elem> {
    (0..k * k)
        .map(|p| if p / k == p % k { base.one() } else { base.zero() })
        .collect()
}

/// Two-sided inverse of a `k x k` array by exhaustive scan over all arrays.
///
/// Returns `None` when `|base|^(k^2)` exceeds `cap`, `Some(None)` when the
/// array is not invertible.
pub fn mat_inverse_scan(base: &RingTable, k: usize, m: &[Elem], cap: usize) -> Option<Option<Vec<Elem>>> {
    let n = base.size() as u128;
    let total = n.checked_pow((k * k) as u32)?;
    if total > cap as u128 {
        return None;
    }
    let id = mat_identity(base, k);
    let mut cand = vec![0 as Elem; k * k];
    for _ in 0..total {
        if mat_mul(base, k, m, &cand) == id && mat_mul(base, k, &cand, m) == id {
            return Some(Some(cand));
        }
        // odometer, last entry fastest
        for p in (0..k * k).rev() {
            cand[p] += 1;
            if (cand[p] as usize) < base.size() {
                break;
            }
            cand[p] = 0;
        }
    }
    Some(None)
}
