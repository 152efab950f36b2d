//! Verification suites behind `matsemi verify`.

use std::fmt::Write;
use std::sync::Arc;

use matsemi_core::finring::{make_matrix_ring, sum_of_units_decompose, MatrixRingView};
use matsemi_core::maps::{corner_relation_holds, is_additive, is_multiplicative, is_ring_hom, tensor_id_into, MapTable};
use matsemi_core::search::{Enumerator, FilterSet};
use matsemi_core::witness::{
    doubling_additivity_closure, extract_additivity, fourth_power_values, invertible_witness_matrices, verify_trace,
    DoublingOptions, DoublingTrace,
};
use matsemi_core::{CheckReport, Counts, Elem, Error, RingTable};
use serde::Serialize;

use crate::error::{AppError, AppResult};
use crate::io::{MapFile, ReplayFile};
use crate::parallel::Workers;
use crate::render::{check_csv_row, check_text, checks_csv, join, Render, CHECK_CSV_HEADER};

/// Largest number of self-maps the tensor suite walks.
pub const TENSOR_FUNCTION_LIMIT: u64 = 1 << 20;

const KEEP: usize = matsemi_core::report::WITNESS_LIMIT;

pub struct Ctx {
    pub workers: Workers,
    pub cap: usize,
    pub node_cap: Option<u64>,
}

/// Collects a capped, ordered list of violating tuples with full counts.
#[derive(Default)]
struct Acc {
    checked: u64,
    violations: u64,
    witnesses: Vec<Vec<Elem>>,
}

impl Acc {
    fn check(&mut self, ok: bool, w: impl FnOnce() -> Vec<Elem>) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witnesses.len() < KEEP {
                self.witnesses.push(w());
            }
        }
    }

    fn absorb(&mut self, other: Acc) {
        self.checked += other.checked;
        self.violations += other.violations;
        for w in other.witnesses {
            if self.witnesses.len() < KEEP {
                self.witnesses.push(w);
            }
        }
    }

    fn report(self, predicate: &str) -> CheckReport {
        CheckReport {
            predicate: predicate.into(),
            pass: self.violations == 0,
            witnesses: self.witnesses,
            counts: Counts { checked: self.checked, violations: self.violations },
        }
    }
}

// ---------------------------------------------------------------------------
// prop1: multiplicative maps on M_2(R) with the corner relation are additive

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop1Report {
    pub dom: String,
    pub cod: String,
    pub multiplicative: u64,
    pub corner_relation: u64,
    pub additive: u64,
    pub sets_equal: bool,
    /// Maps in exactly one of the two sets, as image arrays.
    pub mismatches: CheckReport,
    /// Corner certificates of the maps with the corner relation.
    pub certificates: CheckReport,
    pub counterexamples: u64,
    pub exhaustive: bool,
    pub pass: bool,
}

#[derive(Default)]
struct Prop1Acc {
    mult: u64,
    corner: u64,
    additive: u64,
    counterexamples: u64,
    mismatches: Acc,
    certificates: Acc,
}

pub fn prop1(ctx: &Ctx, dom: Arc<RingTable>, cod: Arc<RingTable>) -> AppResult<Prop1Report> {
    MatrixRingView::of_2x2(&dom)?;
    let e = Enumerator::new(dom.clone(), cod.clone(), FilterSet::default())?;
    let parts = ctx.workers.fold_branches(&e, ctx.node_cap, Prop1Acc::default, |acc, img| {
        let m = e.to_map(img.to_vec());
        let corner = corner_relation_holds(&m).map(|r| r.pass).unwrap_or(false);
        let additive = is_additive(&m).pass;
        acc.mult += 1;
        acc.corner += corner as u64;
        acc.additive += additive as u64;
        acc.counterexamples += !additive as u64;
        acc.mismatches.check(corner == additive, || img.to_vec());
        if corner {
            let ok = matches!(extract_additivity(&m), Ok(c) if c.pass && c.additive);
            acc.certificates.check(ok, || img.to_vec());
        }
    });
    let mut total = Prop1Acc::default();
    let mut exhaustive = true;
    for (p, capped) in parts {
        exhaustive &= !capped;
        total.mult += p.mult;
        total.corner += p.corner;
        total.additive += p.additive;
        total.counterexamples += p.counterexamples;
        total.mismatches.absorb(p.mismatches);
        total.certificates.absorb(p.certificates);
    }
    let mismatches = total.mismatches.report("corner_iff_additive");
    let certificates = total.certificates.report("corner_certificate");
    let sets_equal = mismatches.pass;
    Ok(Prop1Report {
        dom: dom.label().into(),
        cod: cod.label().into(),
        multiplicative: total.mult,
        corner_relation: total.corner,
        additive: total.additive,
        sets_equal,
        pass: sets_equal && certificates.pass,
        mismatches,
        certificates,
        counterexamples: total.counterexamples,
        exhaustive,
    })
}

impl Render for Prop1Report {
    fn csv(&self) -> String {
        format!(
            "dom,cod,multiplicative,corner_relation,additive,sets_equal,certificates_pass,counterexamples,exhaustive,pass\n{},{},{},{},{},{},{},{},{},{}\n",
            self.dom,
            self.cod,
            self.multiplicative,
            self.corner_relation,
            self.additive,
            self.sets_equal,
            self.certificates.pass,
            self.counterexamples,
            self.exhaustive,
            self.pass
        )
    }

    fn text(&self) -> String {
        format!(
            "{} -> {}\nmaps: {} multiplicative, {} with corner relation, {} additive, sets {}\ncertificates: {}/{} pass\n{}\nsearch: {}\n",
            self.dom,
            self.cod,
            self.multiplicative,
            self.corner_relation,
            self.additive,
            if self.sets_equal { "equal" } else { "differ" },
            self.certificates.counts.checked - self.certificates.counts.violations,
            self.certificates.counts.checked,
            check_text(&self.mismatches),
            if self.exhaustive { "exhaustive" } else { "not exhaustive (node cap reached)" }
        )
    }
}

/// Corner certificate for a single map, in replayable form.
pub fn corner_certificate(map: &MapTable) -> AppResult<ReplayFile> {
    let certificate = extract_additivity(map)?;
    Ok(ReplayFile::Corner { map: MapFile::from_map(map)?, certificate })
}

// ---------------------------------------------------------------------------
// tensor: φ ⊗ id_2 is multiplicative exactly for ring homomorphisms

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorReport {
    pub ring: String,
    pub functions: u64,
    pub ring_homs: u64,
    pub tensor_multiplicative: u64,
    pub sets_equal: bool,
    pub mismatches: CheckReport,
    pub pass: bool,
}

fn nth_function(index: u64, n: u64, len: usize) -> Vec<Elem> {
    let mut img = vec![0; len];
    let mut rest = index;
    for slot in img.iter_mut().rev() {
        *slot = (rest % n) as Elem;
        rest /= n;
    }
    img
}

pub fn tensor(ctx: &Ctx, ring: Arc<RingTable>) -> AppResult<TensorReport> {
    let n = ring.size() as u64;
    let total = (n as u128).pow(ring.size() as u32);
    if total > TENSOR_FUNCTION_LIMIT as u128 {
        return Err(Error::InvalidParameter(format!("{} has {total} self-maps; limit is {TENSOR_FUNCTION_LIMIT}", ring.label())).into());
    }
    let total = total as u64;
    let view = make_matrix_ring(&ring, 2, ctx.cap)?;
    let step = total.div_ceil(256).max(1);
    let chunks: Vec<(u64, u64)> = (0..total).step_by(step as usize).map(|s| (s, (s + step).min(total))).collect();
    let parts = ctx.workers.map(&chunks, |&(lo, hi)| {
        let (mut homs, mut tmult) = (0u64, 0u64);
        let mut acc = Acc::default();
        for idx in lo..hi {
            let img = nth_function(idx, n, ring.size());
            let phi = MapTable::new(ring.clone(), ring.clone(), img.clone()).unwrap();
            let hom = is_ring_hom(&phi).pass;
            let lifted = tensor_id_into(&phi, &view, &view).unwrap();
            let mult = is_multiplicative(&lifted).pass;
            homs += hom as u64;
            tmult += mult as u64;
            acc.check(hom == mult, || img);
        }
        (homs, tmult, acc)
    });
    let (mut homs, mut tmult, mut acc) = (0, 0, Acc::default());
    for (h, t, a) in parts {
        homs += h;
        tmult += t;
        acc.absorb(a);
    }
    let mismatches = acc.report("tensor_multiplicative_iff_ring_hom");
    Ok(TensorReport {
        ring: ring.label().into(),
        functions: total,
        ring_homs: homs,
        tensor_multiplicative: tmult,
        sets_equal: mismatches.pass,
        pass: mismatches.pass,
        mismatches,
    })
}

impl Render for TensorReport {
    fn csv(&self) -> String {
        format!(
            "ring,functions,ring_homs,tensor_multiplicative,sets_equal,pass\n{},{},{},{},{},{}\n",
            self.ring, self.functions, self.ring_homs, self.tensor_multiplicative, self.sets_equal, self.pass
        )
    }

    fn text(&self) -> String {
        format!(
            "{}: {} self-maps, {} ring homomorphisms, {} with multiplicative 2x2 lift, sets {}\n{}\n",
            self.ring,
            self.functions,
            self.ring_homs,
            self.tensor_multiplicative,
            if self.sets_equal { "equal" } else { "differ" },
            check_text(&self.mismatches)
        )
    }
}

// ---------------------------------------------------------------------------
// i-relation: the fourth power of the i-relation gives the corner relation

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlaggedFinding {
    pub p: Elem,
    pub q: Elem,
    pub z: Elem,
    pub corner_relation: bool,
    pub fourth_power_ok: bool,
    pub idempotent_sum: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourthPowerSuite {
    pub dom: String,
    pub cod: String,
    pub filters: Vec<&'static str>,
    pub maps: u64,
    pub zero_fixed: u64,
    pub fourth_power_ok: u64,
    /// Maps with `φ(0) = 0` must satisfy the corner relation; witnesses are `[p, q, z]`.
    pub implication: CheckReport,
    /// Maps with `φ(0) ≠ 0`. Reported, never failed.
    pub flagged: Vec<FlaggedFinding>,
    pub flagged_count: u64,
    pub exhaustive: bool,
    pub capped_branches: u64,
    pub node_cap: Option<u64>,
    pub pass: bool,
}

#[derive(Default)]
struct FourthAcc {
    maps: u64,
    zero_fixed: u64,
    fourth_ok: u64,
    implication: Acc,
    flagged: Vec<FlaggedFinding>,
    flagged_count: u64,
}

pub fn i_relation(ctx: &Ctx, dom: Arc<RingTable>, cod: Arc<RingTable>) -> AppResult<FourthPowerSuite> {
    let filters = FilterSet { star: true, i_relation: true, ..Default::default() };
    let e = Enumerator::new(dom.clone(), cod.clone(), filters)?;
    let parts = ctx.workers.fold_branches(&e, ctx.node_cap, FourthAcc::default, |acc, img| {
        let m = e.to_map(img.to_vec());
        let r = fourth_power_values(&m).expect("structure checked when planning");
        acc.maps += 1;
        acc.fourth_ok += r.fourth_power_ok as u64;
        if r.zero_fixed {
            acc.zero_fixed += 1;
            acc.implication.check(r.corner_holds, || vec![r.p, r.q, r.z]);
        } else {
            acc.flagged_count += 1;
            if acc.flagged.len() < KEEP {
                acc.flagged.push(FlaggedFinding {
                    p: r.p,
                    q: r.q,
                    z: r.z,
                    corner_relation: r.corner_holds,
                    fourth_power_ok: r.fourth_power_ok,
                    idempotent_sum: r.idempotent_sum,
                });
            }
        }
    });
    let mut t = FourthAcc::default();
    let mut capped_branches = 0;
    for (p, capped) in parts {
        capped_branches += capped as u64;
        t.maps += p.maps;
        t.zero_fixed += p.zero_fixed;
        t.fourth_ok += p.fourth_ok;
        t.implication.absorb(p.implication);
        t.flagged_count += p.flagged_count;
        for f in p.flagged {
            if t.flagged.len() < KEEP {
                t.flagged.push(f);
            }
        }
    }
    let implication = t.implication.report("zero_fixed_implies_corner_relation");
    Ok(FourthPowerSuite {
        dom: dom.label().into(),
        cod: cod.label().into(),
        filters: {
            let mut f = vec!["multiplicative"];
            f.extend(filters.names());
            f
        },
        maps: t.maps,
        zero_fixed: t.zero_fixed,
        fourth_power_ok: t.fourth_ok,
        pass: implication.pass,
        implication,
        flagged: t.flagged,
        flagged_count: t.flagged_count,
        exhaustive: capped_branches == 0,
        capped_branches,
        node_cap: ctx.node_cap,
    })
}

impl Render for FourthPowerSuite {
    fn csv(&self) -> String {
        format!(
            "dom,cod,maps,zero_fixed,fourth_power_ok,implication_violations,flagged,exhaustive,capped_branches,pass\n{},{},{},{},{},{},{},{},{},{}\n",
            self.dom,
            self.cod,
            self.maps,
            self.zero_fixed,
            self.fourth_power_ok,
            self.implication.counts.violations,
            self.flagged_count,
            self.exhaustive,
            self.capped_branches,
            self.pass
        )
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{} -> {} with filters {}\nmaps: {} found, {} with phi(0) = 0, {} with (iP+iQ)^4 = phi(1)\n{}\nflagged (phi(0) != 0): {}\n",
            self.dom,
            self.cod,
            self.filters.join(", "),
            self.maps,
            self.zero_fixed,
            self.fourth_power_ok,
            check_text(&self.implication),
            self.flagged_count
        );
        for f in &self.flagged {
            let _ = writeln!(s, "  P={} Q={} z={} corner relation {}", f.p, f.q, f.z, if f.corner_relation { "holds" } else { "fails" });
        }
        let _ = writeln!(
            s,
            "search: {}",
            if self.exhaustive {
                "exhaustive".to_string()
            } else {
                format!("not exhaustive, {} branches hit the node cap", self.capped_branches)
            }
        );
        s
    }
}

// ---------------------------------------------------------------------------
// witnesses: corner product, uv product and invertible witness matrices

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub ring: String,
    pub units: u64,
    pub corner_product: CheckReport,
    /// Absent when the ring has no involution.
    pub uv_product: Option<CheckReport>,
    /// Witnesses are `[λ, parameter, matrix]` with matrix 0 = γ, 1 = α, 2 = β.
    /// Absent when `|R|^4` exceeds the size cap.
    pub witness_matrices: Option<CheckReport>,
    pub pass: bool,
}

pub fn witnesses(ctx: &Ctx, ring: Arc<RingTable>) -> AppResult<WitnessReport> {
    let corner_product = ctx.workers.corner_product_identity(&ring);
    let uv_product = if ring.has_star() { Some(ctx.workers.uv_identity(&ring)?) } else { None };
    let units = ctx.workers.units(&ring);
    let scan_fits = (ring.size() as u128).pow(4) <= ctx.cap as u128;
    let witness_matrices = if scan_fits {
        let jobs: Vec<(Elem, Elem)> = units.iter().flat_map(|&l| ring.elements().map(move |p| (l, p))).collect();
        let parts = ctx.workers.map(&jobs, |&(l, p)| {
            let w = invertible_witness_matrices(&ring, l, p, p, p, ctx.cap).expect("λ is a unit");
            [w.gamma_unit, w.alpha_unit, w.beta_unit].map(|u| u == Some(true))
        });
        let mut acc = Acc::default();
        for (&(l, p), flags) in jobs.iter().zip(parts) {
            for (which, ok) in flags.into_iter().enumerate() {
                acc.check(ok, || vec![l, p, which as Elem]);
            }
        }
        Some(acc.report("witness_matrices_invertible"))
    } else {
        None
    };
    let pass = corner_product.pass
        && uv_product.as_ref().is_none_or(|r| r.pass)
        && witness_matrices.as_ref().is_none_or(|r| r.pass);
    Ok(WitnessReport {
        ring: ring.label().into(),
        units: units.len() as u64,
        corner_product,
        uv_product,
        witness_matrices,
        pass,
    })
}

impl WitnessReport {
    fn checks(&self) -> Vec<&CheckReport> {
        [Some(&self.corner_product), self.uv_product.as_ref(), self.witness_matrices.as_ref()]
            .into_iter()
            .flatten()
            .collect()
    }
}

impl Render for WitnessReport {
    fn csv(&self) -> String {
        let mut s = format!("ring,{CHECK_CSV_HEADER}\n");
        for r in self.checks() {
            let _ = writeln!(s, "{},{}", self.ring, check_csv_row(r));
        }
        s
    }

    fn text(&self) -> String {
        let mut s = format!("{} ({} units)\n", self.ring, self.units);
        for r in self.checks() {
            s += &check_text(r);
            s.push('\n');
        }
        if self.uv_product.is_none() {
            s += "uv_product_identity          skipped (no involution)\n";
        }
        if self.witness_matrices.is_none() {
            s += "witness_matrices_invertible  skipped (|R|^4 above the size cap)\n";
        }
        s
    }
}

// ---------------------------------------------------------------------------
// doubling: pairwise additivity on a pool pushed to sums of 2^d pool elements

/// Elements of the form `u_1 + ... + u_m`, `m ≤ kmax`, must carry `φ`'s value
/// in the extension. Without zero padding only the extension's own entries
/// are compared.
fn extension_agreement(map: &MapTable, trace: &DoublingTrace) -> AppResult<CheckReport> {
    let mut acc = Acc::default();
    if trace.options.zero_padding {
        let kmax = 1usize << trace.options.depth;
        for x in map.dom().elements() {
            if sum_of_units_decompose(map.dom(), x, kmax, trace.options.pool)?.is_some() {
                acc.check(trace.extension_value(x) == Some(map.apply(x)), || vec![x]);
            }
        }
    } else {
        for e in &trace.extension {
            acc.check(e.value == map.apply(e.element), || vec![e.element]);
        }
    }
    Ok(acc.report("extension_agrees"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingFile {
    pub kind: &'static str,
    pub map: MapFile,
    pub trace: DoublingTrace,
    pub agreement: CheckReport,
}

impl DoublingFile {
    pub fn pass(&self) -> bool {
        self.trace.pass && self.agreement.pass
    }
}

pub fn doubling_single(map: &MapTable, opts: DoublingOptions) -> AppResult<DoublingFile> {
    let trace = doubling_additivity_closure(map, opts)?;
    let agreement = extension_agreement(map, &trace)?;
    Ok(DoublingFile { kind: "doubling", map: MapFile::from_map(map)?, trace, agreement })
}

impl Render for DoublingFile {
    fn csv(&self) -> String {
        doubling_rows_csv(&[DoublingRow::of(self.map.img.clone(), &self.trace, &self.agreement)])
    }

    fn text(&self) -> String {
        let t = &self.trace;
        let mut s = format!(
            "{} -> {}, pool {} ({} elements), depth {}, zero padding {}\n",
            t.dom,
            t.cod,
            t.options.pool.name(),
            t.pool.len(),
            t.options.depth,
            if t.options.zero_padding { "on" } else { "off" }
        );
        for l in &t.levels {
            let _ = writeln!(
                s,
                "level {}: {} frontier, {} constraints, {} conflicts, {} new elements",
                l.level, l.frontier, l.constraints, l.conflicts, l.new_elements
            );
        }
        for c in &t.conflicts {
            let _ = writeln!(
                s,
                "conflict at ({},{}): phi({}) asserted {} but table has {}",
                c.a, c.b, c.sum, c.asserted, c.table
            );
        }
        let _ = writeln!(s, "extension covers {} elements", t.extension.len());
        s + &check_text(&self.agreement) + "\n"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingRow {
    pub img: Vec<Elem>,
    pub pass: bool,
    pub constraints: u64,
    pub conflicts: u64,
    pub first_conflict: Option<[Elem; 2]>,
    pub extension_size: usize,
    pub agreement: bool,
}

impl DoublingRow {
    fn of(img: Vec<Elem>, t: &DoublingTrace, agreement: &CheckReport) -> Self {
        DoublingRow {
            img,
            pass: t.pass && agreement.pass,
            constraints: t.constraint_count,
            conflicts: t.conflict_count,
            first_conflict: t.conflicts.first().map(|c| [c.a, c.b]),
            extension_size: t.extension.len(),
            agreement: agreement.pass,
        }
    }
}

fn doubling_rows_csv(rows: &[DoublingRow]) -> String {
    let mut s = String::from("img,pass,constraints,conflicts,first_conflict,extension_size,agreement\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            join(&r.img),
            r.pass,
            r.constraints,
            r.conflicts,
            r.first_conflict.map(|c| join(&c)).unwrap_or_default(),
            r.extension_size,
            r.agreement
        );
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingSuite {
    pub ring: String,
    pub options: DoublingOptions,
    pub ring_homs: u64,
    pub results: Vec<DoublingRow>,
    pub exhaustive: bool,
    pub pass: bool,
}

/// Runs the closure on every ring homomorphism `R -> R`.
pub fn doubling_ring(ctx: &Ctx, ring: Arc<RingTable>, opts: DoublingOptions) -> AppResult<DoublingSuite> {
    let e = Enumerator::new(ring.clone(), ring.clone(), FilterSet::default())?;
    let out = ctx.workers.enumerate(&e, u64::MAX - 1, ctx.node_cap);
    let homs: Vec<MapTable> = out.maps.into_iter().map(|img| e.to_map(img)).filter(|m| is_additive(m).pass).collect();
    let rows = ctx.workers.map(&homs, |m| -> AppResult<DoublingRow> {
        let trace = doubling_additivity_closure(m, opts)?;
        let agreement = extension_agreement(m, &trace)?;
        Ok(DoublingRow::of(m.img().to_vec(), &trace, &agreement))
    });
    let results = rows.into_iter().collect::<AppResult<Vec<_>>>()?;
    Ok(DoublingSuite {
        ring: ring.label().into(),
        options: opts,
        ring_homs: results.len() as u64,
        pass: results.iter().all(|r| r.pass),
        results,
        exhaustive: out.complete,
    })
}

impl Render for DoublingSuite {
    fn csv(&self) -> String {
        doubling_rows_csv(&self.results)
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{}: {} ring homomorphisms, pool {}, depth {}\n",
            self.ring,
            self.ring_homs,
            self.options.pool.name(),
            self.options.depth
        );
        for r in &self.results {
            let _ = writeln!(
                s,
                "[{}] {}  {} constraints, {} conflicts, extension {} elements",
                join(&r.img),
                if r.pass { "PASS" } else { "FAIL" },
                r.constraints,
                r.conflicts,
                r.extension_size
            );
        }
        s
    }
}

// ---------------------------------------------------------------------------
// replay

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub kind: &'static str,
    pub dom: String,
    pub cod: String,
    pub check: CheckReport,
    pub pass: bool,
}

pub fn replay(file: &ReplayFile, cap: usize) -> AppResult<ReplayReport> {
    let (kind, map, check) = match file {
        ReplayFile::Doubling { map, trace } => {
            let m = map.build(cap)?;
            let check = verify_trace(&m, trace)?;
            ("doubling", m, check)
        }
        ReplayFile::Corner { map, certificate } => {
            let m = map.build(cap)?;
            let mut acc = Acc::default();
            let rerun = extract_additivity(&m);
            acc.check(matches!(&rerun, Ok(c) if c == certificate), Vec::new);
            ("corner", m, acc.report("certificate_replay"))
        }
    };
    Ok(ReplayReport { kind, dom: map.dom().label().into(), cod: map.cod().label().into(), pass: check.pass, check })
}

impl Render for ReplayReport {
    fn csv(&self) -> String {
        checks_csv([&self.check])
    }

    fn text(&self) -> String {
        format!("{} replay {} -> {}\n{}\n", self.kind, self.dom, self.cod, check_text(&self.check))
    }
}

pub fn require_map(map: Option<MapTable>) -> AppResult<MapTable> {
    map.ok_or_else(|| AppError::Usage("--map is required".into()))
}
