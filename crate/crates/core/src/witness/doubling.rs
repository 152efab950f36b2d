//! Doubling recursion: pairwise additivity on a pool of invertible elements
//! is pushed to sums of `2^d` pool elements, one level at a time.
//!
//! Level `d` pairs up the elements certified at level `d - 1` and asserts
//! `φ(a + b) = φ(a) + φ(b)`, the upper-left corner of `φ₂(u)φ₂(v) = φ₂(uv)`.
//! Nothing larger than `M_2(dom)` is ever built.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finring::{mat_inverse_scan, Elem, Pool, RingTable};
use crate::maps::MapTable;
use crate::report::{CheckReport, Tally};

pub const MAX_DOUBLING_DEPTH: u32 = 4;
pub const CONFLICT_LIMIT: usize = 16;

const BITMAP_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DoublingOptions {
    pub pool: Pool,
    pub depth: u32,
    pub zero_padding: bool,
    /// Constraints kept verbatim in the trace; all of them are counted.
    pub record_limit: usize,
    /// Upper bound on `|dom|^4` for the level-1 invertibility scans.
    pub inverse_scan_cap: usize,
}

impl DoublingOptions {
    pub fn new(pool: Pool, depth: u32) -> Self {
        DoublingOptions { pool, depth, zero_padding: true, record_limit: 10_000, inverse_scan_cap: 1 << 16 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Constraint {
    pub level: u32,
    pub a: Elem,
    pub b: Elem,
    pub sum: Elem,
    /// `φ(a) + φ(b)`
    pub asserted: Elem,
    /// `φ(a + b)`
    pub table: Elem,
    /// Whether `u` and `v` built from `(a, b)` are both units of `M_2(dom)`;
    /// level 1 only, `None` when not scanned.
    pub witnesses_invertible: Option<bool>,
}

impl Constraint {
    pub fn holds(&self) -> bool {
        self.asserted == self.table
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtensionEntry {
    pub element: Elem,
    pub value: Elem,
    pub level: u32,
    /// Certifying pair, absent for pool elements.
    pub left: Option<Elem>,
    pub right: Option<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LevelSummary {
    pub level: u32,
    pub frontier: usize,
    pub constraints: u64,
    pub conflicts: u64,
    pub new_elements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DoublingTrace {
    pub dom: String,
    pub cod: String,
    pub options: DoublingOptions,
    pub pool: Vec<Elem>,
    pub levels: Vec<LevelSummary>,
    pub constraints: Vec<Constraint>,
    pub constraint_count: u64,
    pub conflicts: Vec<Constraint>,
    pub conflict_count: u64,
    pub extension: Vec<ExtensionEntry>,
    pub pass: bool,
}

impl DoublingTrace {
    pub fn extension_value(&self, x: Elem) -> Option<Elem> {
        self.extension.binary_search_by_key(&x, |e| e.element).ok().map(|i| self.extension[i].value)
    }
}

enum PairSeen {
    Bitmap(Vec<u64>, usize),
    Set(BTreeSet<(Elem, Elem)>),
}

impl PairSeen {
    fn new(n: usize) -> Self {
        if n <= BITMAP_LIMIT {
            PairSeen::Bitmap(vec![0; (n * n).div_ceil(64)], n)
        } else {
            PairSeen::Set(BTreeSet::new())
        }
    }

    /// Returns true the first time a pair is seen.
    fn insert(&mut self, a: Elem, b: Elem) -> bool {
        match self {
            PairSeen::Bitmap(bits, n) => {
                let idx = a as usize * *n + b as usize;
                let (w, m) = (idx / 64, 1u64 << (idx % 64));
                let fresh = bits[w] & m == 0;
                bits[w] |= m;
                fresh
            }
            PairSeen::Set(set) => set.insert((a, b)),
        }
    }
}

fn witness_pair_invertible(ring: &RingTable, a: Elem, b: Elem, cap: usize) -> Option<bool> {
    let star = ring.star_table()?;
    let (one, m1) = (ring.one(), ring.neg(ring.one()));
    let u = [one, a, ring.neg(star[a as usize]), one];
    let v = [b, m1, one, star[b as usize]];
    let u_ok = mat_inverse_scan(ring, 2, &u, cap)?.is_some();
    let v_ok = mat_inverse_scan(ring, 2, &v, cap)?.is_some();
    Some(u_ok && v_ok)
}

fn pool_multiplicativity(phi: &MapTable, pool: &[Elem]) -> CheckReport {
    let (d, c) = (phi.dom(), phi.cod());
    let mut t = Tally::new("pool_multiplicative");
    for &u in pool {
        for &v in pool {
            t.check(phi.apply(d.mul(u, v)) == c.mul(phi.apply(u), phi.apply(v)), [u, v]);
        }
    }
    t.finish()
}

pub fn doubling_additivity_closure(phi: &MapTable, opts: DoublingOptions) -> Result<DoublingTrace> {
    if !(1..=MAX_DOUBLING_DEPTH).contains(&opts.depth) {
        return Err(Error::InvalidParameter(alloc::format!("depth must be 1..=4, got {}", opts.depth)));
    }
    let (d, c) = (&**phi.dom(), &**phi.cod());
    let pool = opts.pool.elements(d)?;
    let pre = pool_multiplicativity(phi, &pool);
    if !pre.pass {
        return Err(Error::PreconditionFailed(alloc::format!(
            "map is not multiplicative on the {} of {}",
            opts.pool.name(),
            d.label()
        )));
    }

    let n = d.size();
    let mut ext: Vec<Option<ExtensionEntry>> = vec![None; n];
    for &u in &pool {
        ext[u as usize] = Some(ExtensionEntry { element: u, value: phi.apply(u), level: 0, left: None, right: None });
    }
    let mut seen = PairSeen::new(n);
    let mut frontier = pool.clone();
    let mut levels = Vec::new();
    let mut constraints = Vec::new();
    let mut conflicts = Vec::new();
    let (mut constraint_count, mut conflict_count) = (0u64, 0u64);

    for level in 1..=opts.depth {
        let mut summary = LevelSummary { level, frontier: frontier.len(), constraints: 0, conflicts: 0, new_elements: 0 };
        let mut in_next = vec![false; n];
        if opts.zero_padding {
            for &s in &frontier {
                in_next[s as usize] = true;
            }
        }
        for (i, &a) in frontier.iter().enumerate() {
            for &b in &frontier[i..] {
                let sum = d.add(a, b);
                in_next[sum as usize] = true;
                if !seen.insert(a, b) {
                    continue;
                }
                let asserted = c.add(phi.apply(a), phi.apply(b));
                let con = Constraint {
                    level,
                    a,
                    b,
                    sum,
                    asserted,
                    table: phi.apply(sum),
                    witnesses_invertible: if level == 1 {
                        witness_pair_invertible(d, a, b, opts.inverse_scan_cap)
                    } else {
                        None
                    },
                };
                summary.constraints += 1;
                if !con.holds() {
                    summary.conflicts += 1;
                    if conflicts.len() < CONFLICT_LIMIT {
                        conflicts.push(con);
                    }
                }
                if constraints.len() < opts.record_limit {
                    constraints.push(con);
                }
                if ext[sum as usize].is_none() {
                    summary.new_elements += 1;
                    ext[sum as usize] =
                        Some(ExtensionEntry { element: sum, value: asserted, level, left: Some(a), right: Some(b) });
                }
            }
        }
        constraint_count += summary.constraints;
        conflict_count += summary.conflicts;
        levels.push(summary);
        frontier = (0..n as Elem).filter(|&x| in_next[x as usize]).collect();
    }

    Ok(DoublingTrace {
        dom: d.label().into(),
        cod: c.label().into(),
        options: opts,
        pool,
        levels,
        constraints,
        constraint_count,
        conflicts,
        conflict_count,
        extension: ext.into_iter().flatten().collect(),
        pass: conflict_count == 0,
    })
}

/// Re-derives every recorded constraint from `φ` and re-runs the closure;
/// passes iff both agree with the stored trace.
pub fn verify_trace(phi: &MapTable, trace: &DoublingTrace) -> Result<CheckReport> {
    let (d, c) = (phi.dom(), phi.cod());
    if d.label() != trace.dom || c.label() != trace.cod {
        return Err(Error::InvalidParameter(alloc::format!(
            "trace is for {} -> {}, map is {} -> {}",
            trace.dom,
            trace.cod,
            d.label(),
            c.label()
        )));
    }
    let size = d.size() as Elem;
    let mut t = Tally::new("trace_replay");
    for con in trace.constraints.iter().chain(&trace.conflicts) {
        if con.a >= size || con.b >= size || con.sum >= size {
            t.check(false, [con.level, con.a, con.b]);
            continue;
        }
        let ok = con.sum == d.add(con.a, con.b)
            && con.asserted == c.add(phi.apply(con.a), phi.apply(con.b))
            && con.table == phi.apply(con.sum);
        t.check(ok, [con.level, con.a, con.b]);
    }
    let rerun = doubling_additivity_closure(phi, trace.options)?;
    t.check(&rerun == trace, [u32::MAX, 0, 0]);
    Ok(t.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_gaussian, make_zmod, sum_of_units_decompose};
    use crate::maps::power_map;
    use alloc::sync::Arc;

    fn z4() -> Arc<RingTable> {
        Arc::new(make_zmod(4).unwrap())
    }

    #[test]
    fn identity_on_z4_covers_everything() {
        let t = doubling_additivity_closure(&MapTable::identity(z4()), DoublingOptions::new(Pool::Units, 4)).unwrap();
        assert!(t.pass);
        assert_eq!(t.conflict_count, 0);
        assert_eq!(t.extension.len(), 4);
        for x in 0..4 {
            assert_eq!(t.extension_value(x), Some(x));
        }
        assert_eq!(t.levels.len(), 4);
    }

    #[test]
    fn cube_on_z4_conflicts_at_one_one() {
        let cube = power_map(&z4(), 3);
        let t = doubling_additivity_closure(&cube, DoublingOptions::new(Pool::Units, 1)).unwrap();
        assert!(!t.pass);
        let first = t.conflicts[0];
        assert_eq!((first.a, first.b, first.sum), (1, 1, 2));
        assert_eq!((first.asserted, first.table), (2, 0));
        // u = [[1,1],[3,1]] has determinant 2 over Z4
        assert_eq!(first.witnesses_invertible, Some(false));
    }

    #[test]
    fn gaussian_identity_with_unitaries() {
        let g3 = Arc::new(make_gaussian(3).unwrap());
        let t =
            doubling_additivity_closure(&MapTable::identity(g3.clone()), DoublingOptions::new(Pool::Unitaries, 2)).unwrap();
        assert!(t.pass);
        for x in g3.elements() {
            assert!(sum_of_units_decompose(&g3, x, 4, Pool::Unitaries).unwrap().is_some());
            assert_eq!(t.extension_value(x), Some(x));
        }
    }

    #[test]
    fn padding_changes_reach() {
        let mut opts = DoublingOptions::new(Pool::Units, 1);
        opts.zero_padding = false;
        let t = doubling_additivity_closure(&MapTable::identity(z4()), opts).unwrap();
        let mut padded = opts;
        padded.zero_padding = true;
        padded.depth = 2;
        opts.depth = 2;
        let a = doubling_additivity_closure(&MapTable::identity(z4()), opts).unwrap();
        let b = doubling_additivity_closure(&MapTable::identity(z4()), padded).unwrap();
        assert!(t.pass && a.pass && b.pass);
        assert!(b.constraint_count >= a.constraint_count);
    }

    #[test]
    fn bad_parameters() {
        let id = MapTable::identity(z4());
        assert!(matches!(doubling_additivity_closure(&id, DoublingOptions::new(Pool::Units, 0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(doubling_additivity_closure(&id, DoublingOptions::new(Pool::Units, 5)), Err(Error::InvalidParameter(_))));
        // x -> 2 is not multiplicative on {1, 3}
        let bad = MapTable::from_fn(z4(), z4(), |_| 2).unwrap();
        assert!(matches!(doubling_additivity_closure(&bad, DoublingOptions::new(Pool::Units, 1)), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn replay_detects_tampering() {
        let cube = power_map(&z4(), 3);
        let mut t = doubling_additivity_closure(&cube, DoublingOptions::new(Pool::Units, 3)).unwrap();
        assert!(verify_trace(&cube, &t).unwrap().pass);
        t.constraints[0].asserted ^= 1;
        assert!(!verify_trace(&cube, &t).unwrap().pass);
        assert!(verify_trace(&MapTable::identity(Arc::new(make_zmod(3).unwrap())), &t).is_err());
    }

    #[test]
    fn record_limit_keeps_counts() {
        let g3 = Arc::new(make_gaussian(3).unwrap());
        let mut opts = DoublingOptions::new(Pool::Units, 4);
        opts.record_limit = 3;
        let t = doubling_additivity_closure(&MapTable::identity(g3), opts).unwrap();
        assert_eq!(t.constraints.len(), 3);
        assert!(t.constraint_count > 3);
    }
}
