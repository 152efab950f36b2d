//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matsemi_core::finring::{check_matrix_view, unitaries, MatrixRingView, Pool, DEFAULT_SIZE_CAP};
use matsemi_core::maps::{corner_relation_holds, i_relation_holds, is_unital, respects_star};
use matsemi_core::search::{find_counterexamples, unique_addition_probe, EnumerationQuery, Enumerator};
use matsemi_core::witness::DoublingOptions;
use matsemi_core::{CheckReport, Elem, RingSpec, RingTable};
use serde::Serialize;

use crate::error::{AppError, AppResult, Status};
use crate::io::{load_map, load_query, read_json, write_ndjson, MapFile, ReplayFile};
use crate::parallel::Workers;
use crate::render::{check_csv_row, check_text, join, render, Format, Render, CHECK_CSV_HEADER};
use crate::verify::{self, Ctx};

#[derive(Debug, Parser)]
#[command(name = "matsemi", version, about = "Exhaustive checks of multiplicative maps between finite rings")]
pub struct Cli {
    /// Output format; JSON is canonical.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads. Output does not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Largest ring (in elements) that may be built.
    #[arg(long, global = true, env = "MATSEMI_SIZE_CAP", default_value_t = DEFAULT_SIZE_CAP)]
    pub size_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ring construction and axiom scans.
    #[command(subcommand)]
    Ring(RingCommand),
    /// Predicate checks on a stored map.
    #[command(subcommand)]
    Map(MapCommand),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Stream multiplicative maps as NDJSON.
    Enumerate(EnumerateArgs),
    /// Multiplicative maps that are not additive.
    Counterexamples(CounterexampleArgs),
    /// Multiplicative isomorphisms and whether they are additive.
    UniqueAddition(PairArgs),
    /// Shortest sum of pool elements equal to an element.
    Decompose(DecomposeArgs),
}

#[derive(Debug, Subcommand)]
pub enum RingCommand {
    /// Size, distinguished elements and axiom scans of a ring.
    Info {
        /// Ring spec, e.g. `mat:2:zmod:2`.
        spec: Option<String>,
        /// Same as the positional spec.
        #[arg(long)]
        ring: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MapCommand {
    /// Check predicates on a map file; multiplicativity when none is given.
    Check(MapCheckArgs),
}

#[derive(Debug, Args)]
pub struct MapCheckArgs {
    /// Map file `{dom, cod, img}`.
    #[arg(long)]
    pub map: PathBuf,
    /// phi(xy) = phi(x)phi(y).
    #[arg(long)]
    pub mult: bool,
    /// phi(x + y) = phi(x) + phi(y).
    #[arg(long)]
    pub add: bool,
    /// Multiplicative and additive.
    #[arg(long)]
    pub ring_hom: bool,
    /// phi(x*) = phi(x)*.
    #[arg(long)]
    pub star: bool,
    /// phi(1) = phi(e11) + phi(e22) on a 2x2 matrix domain.
    #[arg(long)]
    pub corner: bool,
    /// The i-relation on a 2x2 matrix domain.
    #[arg(long)]
    pub i_rel: bool,
    /// phi(1) = 1.
    #[arg(long)]
    pub unital: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Prop1,
    Tensor,
    IRelation,
    Witnesses,
    DoublingUnitary,
    DoublingGl,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Not needed with --replay.
    #[arg(value_enum, required_unless_present = "replay")]
    pub suite: Option<Suite>,
    /// Domain ring spec.
    #[arg(long)]
    pub dom: Option<String>,
    /// Codomain ring spec.
    #[arg(long)]
    pub cod: Option<String>,
    /// Ring for single-ring suites.
    #[arg(long)]
    pub ring: Option<String>,
    /// Check one map file instead of every map the suite enumerates.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Doubling depth, 1 to 4.
    #[arg(long, default_value_t = 4)]
    pub depth: u32,
    /// Only sums of exactly 2^d pool elements at level d.
    #[arg(long)]
    pub no_padding: bool,
    /// Search nodes allowed per branch before giving up on exhaustiveness.
    #[arg(long)]
    pub node_cap: Option<u64>,
    /// Re-check a trace or certificate written by an earlier run.
    #[arg(long)]
    pub replay: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Domain ring spec.
    #[arg(long)]
    pub dom: Option<String>,
    /// Codomain ring spec.
    #[arg(long)]
    pub cod: Option<String>,
    /// unital, star, corner_relation, i_relation (repeatable).
    #[arg(long = "filter")]
    pub filters: Vec<String>,
    /// Stop after this many maps.
    #[arg(long)]
    pub limit: Option<u64>,
    /// Search nodes allowed per branch.
    #[arg(long)]
    pub node_cap: Option<u64>,
    /// Query file; flags given alongside override its fields.
    #[arg(long)]
    pub query: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Domain ring spec.
    #[arg(long)]
    pub dom: String,
    /// Codomain ring spec.
    #[arg(long)]
    pub cod: String,
    /// Search nodes allowed per branch.
    #[arg(long)]
    pub node_cap: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Stop after this many maps.
    #[arg(long, default_value_t = 1000)]
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PoolArg {
    Units,
    Unitaries,
}

impl From<PoolArg> for Pool {
    fn from(p: PoolArg) -> Pool {
        match p {
            PoolArg::Units => Pool::Units,
            PoolArg::Unitaries => Pool::Unitaries,
        }
    }
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Ring spec.
    #[arg(long)]
    pub ring: String,
    /// Element index.
    #[arg(long)]
    pub element: Elem,
    /// Most summands allowed.
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    #[arg(long, value_enum, default_value = "units")]
    pub pool: PoolArg,
}

/// Rendered output of a command.
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

impl Output {
    fn report<T: Render>(r: &T, format: Format, pass: bool) -> Self {
        Output { stdout: render(r, format), stderr: String::new(), status: Status::from_pass(pass) }
    }
}

fn parse_spec(s: &str) -> AppResult<RingSpec> {
    Ok(s.parse::<RingSpec>()?)
}

fn build(s: &str, cap: usize) -> AppResult<Arc<RingTable>> {
    Ok(parse_spec(s)?.build(cap)?)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> AppResult<&'a str> {
    v.as_deref().ok_or_else(|| AppError::Usage(format!("{flag} is required")))
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { Status::Usage.code() } else { Status::Pass.code() };
        }
    };
    match run(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            let _ = err.write_all(o.stderr.as_bytes());
            o.status.code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status().code()
        }
    }
}

pub fn run(cli: &Cli) -> AppResult<Output> {
    if cli.size_cap == 0 {
        return Err(AppError::Usage("--size-cap must be positive".into()));
    }
    let cap = cli.size_cap;
    let workers = Workers::new(cli.workers)?;
    match &cli.command {
        Command::Ring(RingCommand::Info { spec, ring }) => {
            let spec = spec.as_ref().or(ring.as_ref()).ok_or_else(|| AppError::Usage("ring spec is required".into()))?;
            let info = ring_info(&workers, build(spec, cap)?);
            let pass = info.pass;
            Ok(Output::report(&info, cli.format, pass))
        }
        Command::Map(MapCommand::Check(a)) => map_check(a, cap, &workers, cli.format),
        Command::Verify(a) => run_verify(a, cap, workers, cli.format),
        Command::Enumerate(a) => enumerate(a, cap, &workers, cli.format),
        Command::Counterexamples(a) => {
            let (d, c) = (build(&a.pair.dom, cap)?, build(&a.pair.cod, cap)?);
            let found = find_counterexamples(d.clone(), c.clone(), a.limit, a.pair.node_cap)?;
            let r = MapList {
                dom: d.label().into(),
                cod: c.label().into(),
                maps: found.maps.iter().map(|m| m.img().to_vec()).collect(),
                exhaustive: found.exhaustive,
            };
            Ok(Output::report(&r, cli.format, true))
        }
        Command::UniqueAddition(a) => {
            let r = unique_addition_probe(build(&a.dom, cap)?, build(&a.cod, cap)?, a.node_cap)?;
            Ok(Output::report(&r, cli.format, true))
        }
        Command::Decompose(a) => {
            let ring = build(&a.ring, cap)?;
            if a.element as usize >= ring.size() {
                return Err(AppError::Usage(format!("element {} is outside {}", a.element, ring.label())));
            }
            let pool: Pool = a.pool.into();
            let summands = matsemi_core::finring::sum_of_units_decompose(&ring, a.element, a.kmax, pool)?;
            let found = summands.is_some();
            let r = Decomposition { ring: ring.label().into(), element: a.element, kmax: a.kmax, pool, summands };
            Ok(Output::report(&r, cli.format, found))
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RingInfo {
    pub ring: String,
    pub size: usize,
    pub zero: Elem,
    pub one: Elem,
    pub units_count: usize,
    pub units: Vec<Elem>,
    pub unitaries_count: Option<usize>,
    pub has_star: bool,
    pub i_elem: Option<Elem>,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
    pub informational: Vec<CheckReport>,
}

pub fn ring_info(workers: &Workers, ring: Arc<RingTable>) -> RingInfo {
    let axioms = workers.check_axioms(&ring);
    let mut checks = axioms.checks;
    if let Some(view) = MatrixRingView::of(&ring) {
        checks.extend(check_matrix_view(&view));
    }
    let units = workers.units(&ring);
    RingInfo {
        ring: ring.label().into(),
        size: ring.size(),
        zero: ring.zero(),
        one: ring.one(),
        units_count: units.len(),
        units,
        unitaries_count: unitaries(&ring).ok().map(|u| u.len()),
        has_star: ring.has_star(),
        i_elem: ring.i_elem(),
        pass: checks.iter().all(|c| c.pass),
        checks,
        informational: axioms.informational,
    }
}

impl Render for RingInfo {
    fn csv(&self) -> String {
        let mut s = format!("ring,{CHECK_CSV_HEADER}\n");
        for c in self.checks.iter().chain(&self.informational) {
            s += &format!("{},{}\n", self.ring, check_csv_row(c));
        }
        s
    }

    fn text(&self) -> String {
        let shown: Vec<Elem> = self.units.iter().copied().take(32).collect();
        let more = if self.units.len() > shown.len() { " ..." } else { "" };
        let mut s = format!(
            "ring {}\nsize {}, zero {}, one {}\nunits: {} ({}{})\n",
            self.ring,
            self.size,
            self.zero,
            self.one,
            self.units_count,
            join(&shown),
            more
        );
        if let Some(n) = self.unitaries_count {
            s += &format!("unitaries: {n}\n");
        }
        s += &format!("involution: {}\n", if self.has_star { "yes" } else { "no" });
        s += &match self.i_elem {
            Some(i) => format!("i: {i}\n"),
            None => "i: none\n".into(),
        };
        for c in &self.checks {
            s += &check_text(c);
            s.push('\n');
        }
        for c in &self.informational {
            s += &format!("{} (informational)\n", check_text(c));
        }
        s
    }
}

fn map_check(a: &MapCheckArgs, cap: usize, workers: &Workers, format: Format) -> AppResult<Output> {
    let m = load_map(&a.map, cap)?;
    let none = !(a.mult || a.add || a.ring_hom || a.star || a.corner || a.i_rel || a.unital);
    let mut reports = Vec::new();
    if a.mult || none {
        reports.push(workers.multiplicative(&m));
    }
    if a.add {
        reports.push(workers.additive(&m));
    }
    if a.ring_hom {
        reports.push(CheckReport::all("ring_hom", [workers.multiplicative(&m), workers.additive(&m)]));
    }
    if a.star {
        reports.push(respects_star(&m)?);
    }
    if a.corner {
        reports.push(corner_relation_holds(&m)?);
    }
    if a.i_rel {
        reports.push(i_relation_holds(&m)?);
    }
    if a.unital {
        reports.push(is_unital(&m));
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(Output::report(&reports, format, pass))
}

fn run_verify(a: &VerifyArgs, cap: usize, workers: Workers, format: Format) -> AppResult<Output> {
    if let Some(path) = &a.replay {
        let file: ReplayFile = read_json(path)?;
        let r = verify::replay(&file, cap)?;
        return Ok(Output::report(&r, format, r.pass));
    }
    let map = a.map.as_ref().map(|p| load_map(p, cap)).transpose()?;
    let ctx = Ctx { workers, cap, node_cap: a.node_cap };
    let suite = a.suite.ok_or_else(|| AppError::Usage("a suite is required".into()))?;
    match suite {
        Suite::Prop1 => {
            if let Some(m) = map {
                let file = verify::corner_certificate(&m)?;
                let pass = matches!(&file, ReplayFile::Corner { certificate, .. } if certificate.pass);
                return Ok(Output { stdout: render_replay(&file, format), stderr: String::new(), status: Status::from_pass(pass) });
            }
            let r = verify::prop1(&ctx, build(required(&a.dom, "--dom")?, cap)?, build(required(&a.cod, "--cod")?, cap)?)?;
            Ok(Output::report(&r, format, r.pass))
        }
        Suite::Tensor => {
            let ring = a.ring.as_deref().unwrap_or("zmod:4");
            let r = verify::tensor(&ctx, build(ring, cap)?)?;
            Ok(Output::report(&r, format, r.pass))
        }
        Suite::IRelation => {
            let dom = build(a.dom.as_deref().unwrap_or("mat:2:gauss:3"), cap)?;
            let cod = match &a.cod {
                Some(c) => build(c, cap)?,
                None => MatrixRingView::of_2x2(&dom)?.base().clone(),
            };
            let r = verify::i_relation(&ctx, dom, cod)?;
            Ok(Output::report(&r, format, r.pass))
        }
        Suite::Witnesses => {
            let r = verify::witnesses(&ctx, build(required(&a.ring, "--ring")?, cap)?)?;
            Ok(Output::report(&r, format, r.pass))
        }
        Suite::DoublingUnitary | Suite::DoublingGl => {
            let pool = if suite == Suite::DoublingGl { Pool::Units } else { Pool::Unitaries };
            let opts = DoublingOptions { zero_padding: !a.no_padding, ..DoublingOptions::new(pool, a.depth) };
            match map {
                Some(m) => {
                    let f = verify::doubling_single(&m, opts)?;
                    Ok(Output::report(&f, format, f.pass()))
                }
                None => {
                    let ring = build(required(&a.ring, "--ring or --map")?, cap)?;
                    let r = verify::doubling_ring(&ctx, ring, opts)?;
                    Ok(Output::report(&r, format, r.pass))
                }
            }
        }
    }
}

fn render_replay(file: &ReplayFile, format: Format) -> String {
    match (format, file) {
        (Format::Json, _) => serde_json::to_string_pretty(file).expect("serializes") + "\n",
        (_, ReplayFile::Corner { map, certificate }) => {
            let mut s = if format == Format::Csv {
                String::from("dom,cod,decomposition_pass,corners_pass,pass,additive\n")
            } else {
                String::new()
            };
            let corners = certificate.corners.iter().all(|c| c.pass);
            if format == Format::Csv {
                s += &format!(
                    "{},{},{},{},{},{}\n",
                    map.dom, map.cod, certificate.decomposition_pass, corners, certificate.pass, certificate.additive
                );
            } else {
                s += &format!(
                    "{} -> {}\ndecomposition: {}\ncorners: {}\ncertificate: {}, additive: {}\n",
                    map.dom,
                    map.cod,
                    certificate.decomposition_pass,
                    corners,
                    if certificate.pass { "PASS" } else { "FAIL" },
                    certificate.additive
                );
            }
            s
        }
        (_, ReplayFile::Doubling { .. }) => unreachable!("doubling files are rendered through DoublingFile"),
    }
}

fn enumerate(a: &EnumerateArgs, cap: usize, workers: &Workers, format: Format) -> AppResult<Output> {
    let mut q = match &a.query {
        Some(p) => load_query(p)?,
        None => EnumerationQuery::new(parse_spec(required(&a.dom, "--dom")?)?, parse_spec(required(&a.cod, "--cod")?)?),
    };
    if a.query.is_some() {
        if let Some(d) = &a.dom {
            q.dom = parse_spec(d)?;
        }
        if let Some(c) = &a.cod {
            q.cod = parse_spec(c)?;
        }
    }
    for f in &a.filters {
        q.filters.insert_name(f)?;
    }
    if let Some(l) = a.limit {
        q.limit = l;
    }
    if a.node_cap.is_some() {
        q.node_cap = a.node_cap;
    }
    let e = Enumerator::from_query(&q, cap)?;
    let out = workers.enumerate(&e, q.limit, q.node_cap);
    let summary = EnumerationSummary {
        query: q.clone(),
        maps: out.maps.len() as u64,
        complete: out.complete,
        truncated: out.truncated,
        capped_branches: out.capped_branches,
    };
    let (dom, cod) = (e.dom().label().to_string(), e.cod().label().to_string());
    let mut stdout = Vec::new();
    let mut stderr = String::new();
    match format {
        Format::Json => {
            let files = out.maps.into_iter().map(|img| MapFile { dom: q.dom.clone(), cod: q.cod.clone(), img });
            write_ndjson(&mut stdout, files).expect("writing to memory");
            stderr = serde_json::to_string(&summary).expect("serializes") + "\n";
        }
        Format::Csv => {
            writeln!(stdout, "index,dom,cod,img").unwrap();
            for (i, img) in out.maps.iter().enumerate() {
                writeln!(stdout, "{i},{dom},{cod},{}", join(img)).unwrap();
            }
            stderr = summary.text();
        }
        Format::Text => {
            for img in &out.maps {
                writeln!(stdout, "[{}]", join(img)).unwrap();
            }
            write!(stdout, "{}", summary.text()).unwrap();
        }
    }
    Ok(Output { stdout: String::from_utf8(stdout).expect("utf-8"), stderr, status: Status::Pass })
}

#[derive(Debug, Serialize)]
pub struct EnumerationSummary {
    pub query: EnumerationQuery,
    pub maps: u64,
    pub complete: bool,
    pub truncated: bool,
    pub capped_branches: u64,
}

impl EnumerationSummary {
    fn text(&self) -> String {
        format!(
            "{} maps {} -> {}{}; search {}\n",
            self.maps,
            self.query.dom,
            self.query.cod,
            if self.truncated { " (limit reached)" } else { "" },
            match (self.truncated, self.complete) {
                (true, _) => "stopped early",
                (false, true) => "exhaustive",
                (false, false) => "not exhaustive (node cap reached)",
            }
        )
    }
}

#[derive(Debug, Serialize)]
pub struct MapList {
    pub dom: String,
    pub cod: String,
    pub maps: Vec<Vec<Elem>>,
    pub exhaustive: bool,
}

impl Render for MapList {
    fn csv(&self) -> String {
        let mut s = String::from("index,dom,cod,img\n");
        for (i, m) in self.maps.iter().enumerate() {
            s += &format!("{i},{},{},{}\n", self.dom, self.cod, join(m));
        }
        s
    }

    fn text(&self) -> String {
        let mut s = format!("{} non-additive multiplicative maps {} -> {}\n", self.maps.len(), self.dom, self.cod);
        for m in &self.maps {
            s += &format!("[{}]\n", join(m));
        }
        s + if self.exhaustive { "search: exhaustive\n" } else { "search: stopped at the limit or node cap\n" }
    }
}

impl Render for matsemi_core::search::UniqueAdditionReport {
    fn csv(&self) -> String {
        let mut s = String::from("index,dom,cod,img,additive\n");
        for (i, m) in self.isomorphisms.iter().enumerate() {
            s += &format!("{i},{},{},{},{}\n", self.dom, self.cod, join(&m.img), m.additive);
        }
        s
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{} -> {}: {} multiplicative isomorphisms, {} additive\n",
            self.dom,
            self.cod,
            self.isomorphisms.len(),
            self.additive_count
        );
        for m in &self.isomorphisms {
            s += &format!("[{}] {}\n", join(&m.img), if m.additive { "additive" } else { "not additive" });
        }
        s + if self.all_additive { "every multiplicative isomorphism is additive\n" } else { "some multiplicative isomorphism is not additive\n" }
    }
}

#[derive(Debug, Serialize)]
pub struct Decomposition {
    pub ring: String,
    pub element: Elem,
    pub kmax: usize,
    pub pool: Pool,
    pub summands: Option<Vec<Elem>>,
}

impl Render for Decomposition {
    fn csv(&self) -> String {
        format!(
            "ring,element,kmax,pool,summands\n{},{},{},{},{}\n",
            self.ring,
            self.element,
            self.kmax,
            self.pool.name(),
            self.summands.as_deref().map(join).unwrap_or_default()
        )
    }

    fn text(&self) -> String {
        match &self.summands {
            Some(s) => format!("{} = {} in {} ({})\n", self.element, s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" + "), self.ring, self.pool.name()),
            None => format!("{} is not a sum of at most {} {} in {}\n", self.element, self.kmax, self.pool.name(), self.ring),
        }
    }
}
