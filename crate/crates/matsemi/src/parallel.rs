//! Worker pools with schedule-independent results.
//!
//! Work is cut into chunks whose boundaries depend only on the problem size,
//! never on the worker count, and partial results are merged in chunk order.

use std::ops::Range;

use matsemi_core::finring::{units, AxiomPlan, AxiomReport};
use matsemi_core::maps::{is_additive_rows, is_multiplicative_rows, MapTable};
use matsemi_core::search::{BranchResult, Enumerator, Outcome};
use matsemi_core::witness::{corner_product_identity_rows, uv_identity_rows};
use matsemi_core::{CheckReport, Elem, RingTable};
use rayon::prelude::*;

use crate::error::{AppError, AppResult};

/// Target number of chunks for row-partitioned scans.
const CHUNKS: u32 = 256;

pub struct Workers {
    pool: rayon::ThreadPool,
    threads: usize,
}

/// Splits `0..n` into at most [`CHUNKS`] consecutive ranges.
pub fn row_chunks(n: Elem) -> Vec<Range<Elem>> {
    let step = n.div_ceil(CHUNKS).max(1);
    (0..n).step_by(step as usize).map(|s| s..(s + step).min(n)).collect()
}

impl Workers {
    pub fn new(threads: usize) -> AppResult<Self> {
        if threads == 0 {
            return Err(AppError::Usage("--workers must be at least 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| AppError::Usage(format!("cannot start worker pool: {e}")))?;
        Ok(Workers { pool, threads })
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    /// Maps `f` over `items` in parallel, keeping input order.
    pub fn map<T: Sync, R: Send>(&self, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
        self.pool.install(|| items.par_iter().map(f).collect())
    }

    /// Runs `f` on each row chunk of `0..n`, results in row order.
    pub fn rows<R: Send>(&self, n: Elem, f: impl Fn(Range<Elem>) -> R + Sync + Send) -> Vec<R> {
        let chunks = row_chunks(n);
        self.map(&chunks, |r| f(r.clone()))
    }

    pub fn check_axioms(&self, ring: &RingTable) -> AxiomReport {
        let plan = AxiomPlan::new(ring);
        let parts = self.rows(ring.size() as Elem, |r| plan.scan(r));
        plan.merge(parts)
    }

    pub fn multiplicative(&self, phi: &MapTable) -> CheckReport {
        let parts = self.rows(phi.dom().size() as Elem, |r| is_multiplicative_rows(phi, r));
        CheckReport::merge("multiplicative", parts)
    }

    pub fn additive(&self, phi: &MapTable) -> CheckReport {
        let parts = self.rows(phi.dom().size() as Elem, |r| is_additive_rows(phi, r));
        CheckReport::merge("additive", parts)
    }

    pub fn corner_product_identity(&self, ring: &RingTable) -> CheckReport {
        let parts = self.rows(ring.size() as Elem, |r| corner_product_identity_rows(ring, r));
        CheckReport::merge("corner_product_identity", parts)
    }

    pub fn uv_identity(&self, ring: &RingTable) -> AppResult<CheckReport> {
        let parts = self.rows(ring.size() as Elem, |r| uv_identity_rows(ring, r));
        let parts = parts.into_iter().collect::<Result<Vec<_>, _>>()?;
        Ok(CheckReport::merge("uv_product_identity", parts))
    }

    pub fn units(&self, ring: &RingTable) -> Vec<Elem> {
        if ring.size() <= 1024 {
            return units(ring);
        }
        let one = ring.one();
        let parts = self.rows(ring.size() as Elem, |r| {
            r.filter(|&x| ring.elements().any(|y| ring.mul(x, y) == one && ring.mul(y, x) == one)).collect::<Vec<_>>()
        });
        parts.concat()
    }

    /// Runs every top-level branch and merges them in order.
    pub fn enumerate(&self, e: &Enumerator, limit: u64, node_cap: Option<u64>) -> Outcome {
        let branches = e.branches();
        let results: Vec<BranchResult> = self.map(&branches, |p| e.run_branch(p, limit, node_cap));
        Enumerator::merge(results, limit)
    }

    /// Folds each branch's maps into a per-branch accumulator; results in
    /// branch order together with whether the branch hit the node cap.
    pub fn fold_branches<S: Send>(
        &self,
        e: &Enumerator,
        node_cap: Option<u64>,
        init: impl Fn() -> S + Sync + Send,
        visit: impl Fn(&mut S, &[Elem]) + Sync + Send,
    ) -> Vec<(S, bool)> {
        let branches = e.branches();
        self.map(&branches, |p| {
            let mut acc = init();
            let r = e.for_each_in_branch(p, node_cap, &mut |img| {
                visit(&mut acc, img);
                true
            });
            (acc, r.capped)
        })
    }
}
