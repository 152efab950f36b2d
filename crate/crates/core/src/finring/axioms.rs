//! Ring-axiom scans.
//!
//! Rings up to [`FULL_TRIPLE_LIMIT`] elements are scanned over all pairs and
//! triples. Above that, one argument of each law ranges over a generating
//! set, which decides the same property:
//!
//! - associativity: the middle elements that associate with every outer pair
//!   form a submonoid, so multiplicative generators suffice (likewise for +);
//! - commutativity and `(x + y)* = x* + y*`: the admissible `y` are closed
//!   under addition once + is associative;
//! - distributivity: left and right multiplication by a product is the
//!   composite of the factors' multiplications, and the summands preserved by
//!   one of them are closed under addition, so the multiplier ranges over
//!   multiplicative generators and the summand over additive ones;
//! - `(xy)* = y*x*`: the admissible `y` form a submonoid.
//!
//! The reduced verdicts for distributivity and the involution rely on the
//! associativity verdicts reported alongside them.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use super::{Elem, MatrixRingView, RingTable};
use crate::report::{CheckReport, Tally};
use crate::search::{irredundant_generators, Operation};

pub const FULL_TRIPLE_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AxiomReport {
    pub ring: String,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
    /// Properties reported but not required of a ring.
    pub informational: Vec<CheckReport>,
}

/// Precomputed middle-argument sets for a row-partitioned axiom scan.
#[derive(Debug, Clone)]
pub struct AxiomPlan<'a> {
    ring: &'a RingTable,
    mul_middle: Vec<Elem>,
    add_middle: Vec<Elem>,
    reduced: bool,
}

impl<'a> AxiomPlan<'a> {
    pub fn new(ring: &'a RingTable) -> Self {
        if ring.size() <= FULL_TRIPLE_LIMIT {
            let all: Vec<Elem> = ring.elements().collect();
            return AxiomPlan { ring, mul_middle: all.clone(), add_middle: all, reduced: false };
        }
        let mut m = irredundant_generators(ring, Operation::Mul).gens;
        m.push(ring.one());
        m.sort_unstable();
        m.dedup();
        let mut a = irredundant_generators(ring, Operation::Add).gens;
        a.sort_unstable();
        AxiomPlan { ring, mul_middle: m, add_middle: a, reduced: true }
    }

    pub fn ring(&self) -> &RingTable {
        self.ring
    }

    /// Scans every property whose first argument lies in `rows`.
    pub fn scan(&self, rows: Range<Elem>) -> AxiomReport {
        let r = self.ring;
        let all = r.elements();
        let (zero, one) = (r.zero(), r.one());
        let mut checks = Vec::new();

        // Rows of the middle elements, reused for every outer x.
        let middle_rows = |middle: &[Elem], op: fn(&RingTable, Elem, Elem) -> Elem| -> Vec<Vec<Elem>> {
            middle.iter().map(|&g| all.clone().map(|z| op(r, g, z)).collect()).collect()
        };

        let mut t = Tally::new("add_associative");
        let g_rows = middle_rows(&self.add_middle, RingTable::add);
        for x in rows.clone() {
            for (&g, gz) in self.add_middle.iter().zip(&g_rows) {
                let xg = r.add(x, g);
                for z in all.clone() {
                    t.check(r.add(xg, z) == r.add(x, gz[z as usize]), [x, g, z]);
                }
            }
        }
        checks.push(t.finish());

        let add_second: Vec<Elem> = if self.reduced { self.add_middle.clone() } else { all.clone().collect() };
        let mul_second: Vec<Elem> = if self.reduced { self.mul_middle.clone() } else { all.clone().collect() };

        let mut t = Tally::new("add_commutative");
        for x in rows.clone() {
            for &y in &add_second {
                t.check(r.add(x, y) == r.add(y, x), [x, y]);
            }
        }
        checks.push(t.finish());

        let mut t = Tally::new("add_identity");
        for x in rows.clone() {
            t.check(r.add(x, zero) == x && r.add(zero, x) == x, [x]);
        }
        checks.push(t.finish());

        let mut t = Tally::new("add_inverse");
        for x in rows.clone() {
            t.check(all.clone().any(|y| r.add(x, y) == zero), [x]);
        }
        checks.push(t.finish());

        let mut t = Tally::new("mul_associative");
        let g_rows = middle_rows(&self.mul_middle, RingTable::mul);
        for x in rows.clone() {
            for (&g, gz) in self.mul_middle.iter().zip(&g_rows) {
                let xg = r.mul(x, g);
                for z in all.clone() {
                    t.check(r.mul(xg, z) == r.mul(x, gz[z as usize]), [x, g, z]);
                }
            }
        }
        checks.push(t.finish());

        let mut t = Tally::new("mul_identity");
        for x in rows.clone() {
            t.check(r.mul(x, one) == x && r.mul(one, x) == x, [x]);
        }
        checks.push(t.finish());

        let mut left = Tally::new("left_distributive");
        let mut right = Tally::new("right_distributive");
        if self.reduced {
            // Row element as the first summand, multiplier from the generators.
            for y in rows.clone() {
                for &g in &self.mul_middle {
                    let (gy, yg) = (r.mul(g, y), r.mul(y, g));
                    for &h in &self.add_middle {
                        let yh = r.add(y, h);
                        left.check(r.mul(g, yh) == r.add(gy, r.mul(g, h)), [g, y, h]);
                        right.check(r.mul(yh, g) == r.add(yg, r.mul(h, g)), [g, y, h]);
                    }
                }
            }
        } else {
            for x in rows.clone() {
                for y in all.clone() {
                    let (xy, yx) = (r.mul(x, y), r.mul(y, x));
                    for &h in &self.add_middle {
                        let yh = r.add(y, h);
                        left.check(r.mul(x, yh) == r.add(xy, r.mul(x, h)), [x, y, h]);
                        right.check(r.mul(yh, x) == r.add(yx, r.mul(h, x)), [x, y, h]);
                    }
                }
            }
        }
        checks.push(left.finish());
        checks.push(right.finish());

        let mut informational = Vec::new();
        if let Some(star) = r.star_table() {
            let s = |x: Elem| star[x as usize];
            let mut t = Tally::new("star_involutive");
            for x in rows.clone() {
                t.check(s(s(x)) == x, [x]);
            }
            checks.push(t.finish());

            let mut anti = Tally::new("star_antimultiplicative");
            let mut additive = Tally::new("star_additive");
            for x in rows.clone() {
                for &y in &mul_second {
                    anti.check(s(r.mul(x, y)) == r.mul(s(y), s(x)), [x, y]);
                }
                for &y in &add_second {
                    additive.check(s(r.add(x, y)) == r.add(s(x), s(y)), [x, y]);
                }
            }
            checks.push(anti.finish());
            checks.push(additive.finish());

            let mut t = Tally::new("star_unital");
            if rows.contains(&one) {
                t.check(s(one) == one, [one]);
            }
            checks.push(t.finish());
        }
        if let Some(i) = r.i_elem() {
            let mut t = Tally::new("i_square");
            if rows.contains(&i) {
                t.check(r.mul(i, i) == r.neg(one), [i]);
            }
            checks.push(t.finish());
            if let Some(star) = r.star_table() {
                let mut t = Tally::new("i_star_skew");
                if rows.contains(&i) {
                    t.check(star[i as usize] == r.neg(i), [i]);
                }
                informational.push(t.finish());
            }
        }
        finish(r.label().into(), checks, informational)
    }

    /// Combines scans over consecutive row ranges.
    pub fn merge(&self, parts: Vec<AxiomReport>) -> AxiomReport {
        let Some(first) = parts.first() else {
            return self.scan(0..0);
        };
        let merge_lists = |pick: fn(&AxiomReport) -> &Vec<CheckReport>| -> Vec<CheckReport> {
            (0..pick(first).len())
                .map(|i| {
                    let name = pick(first)[i].predicate.clone();
                    CheckReport::merge(&name, parts.iter().map(|p| pick(p)[i].clone()))
                })
                .collect()
        };
        let checks = merge_lists(|p| &p.checks);
        let informational = merge_lists(|p| &p.informational);
        finish(first.ring.clone(), checks, informational)
    }
}

fn finish(ring: String, checks: Vec<CheckReport>, informational: Vec<CheckReport>) -> AxiomReport {
    AxiomReport { ring, pass: checks.iter().all(|c| c.pass), checks, informational }
}

/// Full axiom scan of a ring, single-threaded.
pub fn check_axioms(ring: &RingTable) -> AxiomReport {
    AxiomPlan::new(ring).scan(ring.elements())
}

/// Structural checks of a matrix ring: index bijection, matrix-unit
/// relations, `1 = Σ e_ii` and conjugate-transpose involution.
pub fn check_matrix_view(view: &MatrixRingView) -> Vec<CheckReport> {
    let r = view.ring();
    let base = view.base();
    let k = view.k();
    let mut out = Vec::new();

    let mut t = Tally::new("encode_decode_bijection");
    for x in r.elements() {
        let d = view.decode(x);
        t.check(view.encode(d) == x && d.iter().all(|&e| (e as usize) < base.size()), [x]);
    }
    out.push(t.finish());

    let mut t = Tally::new("matrix_unit_relations");
    for i in 0..k {
        for j in 0..k {
            for kk in 0..k {
                for l in 0..k {
                    let expected = if j == kk { view.unit(i, l) } else { r.zero() };
                    let w = [i as Elem, j as Elem, kk as Elem, l as Elem];
                    t.check(r.mul(view.unit(i, j), view.unit(kk, l)) == expected, w);
                }
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("identity_is_sum_of_diagonal_units");
    t.check(r.sum((0..k).map(|i| view.unit(i, i))) == r.one(), [r.one()]);
    out.push(t.finish());

    if let (Some(rs), Some(bs)) = (r.star_table(), base.star_table()) {
        let mut t = Tally::new("star_is_conjugate_transpose");
        for x in r.elements() {
            let d = view.decode(x);
            let ok = (0..k * k).all(|p| {
                let (i, j) = (p / k, p % k);
                view.entry(rs[x as usize], i, j) == bs[d[j * k + i] as usize]
            });
            t.check(ok, [x]);
        }
        out.push(t.finish());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_gaussian, make_matrix_ring, make_zmod, DEFAULT_SIZE_CAP};
    use alloc::sync::Arc;
    use alloc::vec;

    #[test]
    fn small_rings_pass() {
        for n in 1..=8 {
            let report = check_axioms(&make_zmod(n).unwrap());
            assert!(report.pass, "{:?}", report);
        }
        for n in 1..=4 {
            assert!(check_axioms(&make_gaussian(n).unwrap()).pass);
        }
    }

    #[test]
    fn z5_square_root_of_minus_one_is_not_skew() {
        let report = check_axioms(&make_zmod(5).unwrap());
        assert!(report.pass);
        assert!(!report.informational[0].pass);
    }

    #[test]
    fn broken_tables_are_detected() {
        // Z2 addition with a multiplication that is not distributive: 1*1 = 0 and 0*0 = 1.
        let bad = RingTable::from_tables("bad", vec![0, 1, 1, 0], vec![1, 0, 0, 0], 0, 1, None, None).unwrap();
        let report = check_axioms(&bad);
        assert!(!report.pass);
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.predicate.as_str()).collect();
        assert!(failed.contains(&"mul_identity"));
    }

    fn reduced_plan(ring: &RingTable) -> AxiomPlan<'_> {
        let mut m = irredundant_generators(ring, Operation::Mul).gens;
        m.push(ring.one());
        AxiomPlan { ring, mul_middle: m, add_middle: irredundant_generators(ring, Operation::Add).gens, reduced: true }
    }

    #[test]
    fn reduced_scan_matches_full_scan_verdicts() {
        let v = make_matrix_ring(&Arc::new(make_zmod(3).unwrap()), 2, DEFAULT_SIZE_CAP).unwrap();
        let full = check_axioms(v.ring());
        let reduced = reduced_plan(v.ring()).scan(v.ring().elements());
        assert!(full.pass && reduced.pass);
        for (f, r) in full.checks.iter().zip(&reduced.checks) {
            assert_eq!(f.predicate, r.predicate);
            assert!(r.counts.checked <= f.counts.checked);
        }
    }

    #[test]
    fn reduced_scan_catches_single_corruptions() {
        // Z_12 with one product entry altered, scanned with the reduced plan.
        let n = 12u32;
        let add: Vec<Elem> = (0..n * n).map(|p| (p / n + p % n) % n).collect();
        let mul: Vec<Elem> = (0..n * n).map(|p| (p / n) * (p % n) % n).collect();
        for (x, y) in [(5, 7), (2, 6), (11, 11), (3, 4)] {
            let mut bad = mul.clone();
            let at = (x * n + y) as usize;
            bad[at] = (bad[at] + 1) % n;
            let ring = RingTable::from_tables("bad", add.clone(), bad, 0, 1, None, None).unwrap();
            assert!(!reduced_plan(&ring).scan(ring.elements()).pass, "({x},{y})");
        }
        let good = RingTable::from_tables("z12", add, mul, 0, 1, None, None).unwrap();
        assert!(reduced_plan(&good).scan(good.elements()).pass);
    }

    #[test]
    fn split_scan_merges_to_whole() {
        let v = make_matrix_ring(&Arc::new(make_gaussian(2).unwrap()), 2, DEFAULT_SIZE_CAP).unwrap();
        let plan = AxiomPlan::new(v.ring());
        let whole = plan.scan(v.ring().elements());
        let parts = vec![plan.scan(0..100), plan.scan(100..101), plan.scan(101..256)];
        assert_eq!(plan.merge(parts), whole);
    }

    #[test]
    fn matrix_views_pass_structure_checks() {
        for base in [make_zmod(2).unwrap(), make_gaussian(3).unwrap()] {
            let v = make_matrix_ring(&Arc::new(base), 2, DEFAULT_SIZE_CAP).unwrap();
            assert!(check_matrix_view(&v).iter().all(|c| c.pass));
        }
    }
}
