//! Argument parsing and subcommand dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use planecode::analyze::analyze;
use planecode::antipodal::{antipodal_from_pg24, cyclic_antipodal, validate_antipodal, PartialLinearSpace};
use planecode::codes::{code_of_plane, is_dual_word, DualVerdict, DEFAULT_ENUM_BUDGET};
use planecode::construct::{
    antipodal_diff, baer_diff, disjoint_image, line_diff, subplane_diff, transform_embedding, WordRecipe,
};
use planecode::field::prime_power;
use planecode::geometry::{baer_subfield_subplane, subplane_from_points, subplane_search};
use planecode::search::{SearchOptions, SearchStatus, DEFAULT_NODE_BUDGET};
use planecode::{CodeWord, Field, Plane, SubplaneResult};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::formats::{read_plane, read_pls, read_word, write_plane, write_pls, write_word};
use crate::parallel::{embed_search_parallel, pool, thread_count};
use crate::record::RunRecord;
use crate::report;
use crate::suite::{run_acceptance, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "planecode", version, about = "Projective planes, their codes, and embedded antipodal planes")]
pub struct Cli {
    /// Write the JSON run record to this file instead of stdout.
    #[arg(long, global = true)]
    pub record: Option<PathBuf>,
    /// Worker threads (falls back to PLANECODE_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or validate plane files.
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Codes of planes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Build dual-code words.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Analyze a dual-code word.
    Analyze(AnalyzeArgs),
    /// Antipodal plane models.
    #[command(subcommand)]
    Antipodal(AntipodalCmd),
    /// Search for embeddings of a partial linear space into a plane.
    Embed(EmbedArgs),
    /// Reproducibility suites.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Subcommand)]
pub enum PlaneCmd {
    /// Write PG(2,q) as a plane file.
    Build {
        /// Field as "p^h" or "q".
        #[arg(long)]
        field: String,
        /// Modulus coefficients, lowest degree first, comma separated.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a plane file against the axioms.
    Validate {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CodeCmd {
    /// Dimension of the p-ary code.
    Dim(CodeArgs),
    /// Minimum weight by full enumeration.
    MinWeight {
        #[command(flatten)]
        code: CodeArgs,
        /// Enumerate the dual code instead.
        #[arg(long)]
        dual: bool,
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        budget: u64,
    },
    /// Is a word in the dual code?
    Check {
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        plane: String,
    },
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Plane file, or a field as "p^h" for PG(2,p^h).
    #[arg(long)]
    pub plane: String,
    /// Characteristic; defaults to the prime dividing the order.
    #[arg(long)]
    pub p: Option<u32>,
    /// Allow a prime that does not divide the order.
    #[arg(long)]
    pub allow_mismatch: bool,
}

#[derive(Debug, Args)]
pub struct WordOut {
    /// Write the word file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Keep the raw scalar instead of scaling the first symbol to 1.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    /// Difference of two lines.
    LineDiff {
        #[arg(long)]
        plane: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: WordOut,
    },
    /// Baer subplane minus a secant line.
    BaerDiff {
        #[arg(long)]
        plane: String,
        /// Subplane points ("baer" for the subfield subplane, or a comma list).
        #[arg(long, default_value = "baer")]
        subplane: String,
        /// Secant line; defaults to the first one.
        #[arg(long)]
        secant: Option<usize>,
        #[command(flatten)]
        out: WordOut,
    },
    /// Difference of two disjoint subplanes.
    SubplaneDiff {
        #[arg(long)]
        plane: String,
        #[arg(long)]
        p: Option<u32>,
        /// "baer", "moved:<seed>" (a disjoint image of the first), or a comma list.
        #[arg(long, default_value = "baer")]
        first: String,
        #[arg(long, default_value = "moved:0")]
        second: String,
        #[command(flatten)]
        out: WordOut,
    },
    /// Difference of an embedded antipodal plane and a disjoint image of it.
    AntipodalDiff {
        #[arg(long)]
        plane: String,
        /// pls file, builtin:mk or builtin:ap3.
        #[arg(long, default_value = "builtin:mk")]
        pls: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: WordOut,
    },
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub word: PathBuf,
    #[arg(long)]
    pub plane: String,
    /// Analyze a word outside the dual code (checks become not-applicable).
    #[arg(long)]
    pub allow_non_dual: bool,
}

#[derive(Debug, Subcommand)]
pub enum AntipodalCmd {
    /// Write a model as a pls file.
    Build {
        #[arg(long, conflicts_with = "from_pg24", required_unless_present = "from_pg24")]
        order: Option<usize>,
        /// The complement of the subfield Fano subplane of PG(2,4).
        #[arg(long)]
        from_pg24: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the antipodal-plane axioms.
    Validate {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// pls file, builtin:mk or builtin:ap3.
    #[arg(long)]
    pub pls: String,
    #[arg(long)]
    pub plane: String,
    #[arg(long, default_value_t = 1)]
    pub cap: usize,
    /// Node budget per root branch.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub no_normalize: bool,
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    /// Run every acceptance criterion.
    Acceptance {
        /// Node budget per root branch for the embedding rows.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random dual words per plane in the analyzer row.
        #[arg(long, default_value_t = 500)]
        random_words: usize,
        /// Extra plane files to ingest.
        #[arg(long)]
        plane_file: Vec<PathBuf>,
    },
}

/// A failure that maps to exit code 1 and a structured record error.
#[derive(Debug)]
pub struct DomainError {
    pub kind: &'static str,
    pub message: String,
}

impl DomainError {
    fn new(kind: &'static str, message: impl ToString) -> DomainError {
        DomainError { kind, message: message.to_string() }
    }
}

type Res<T> = Result<T, DomainError>;

const SUBPLANE_QUADRANGLE_BUDGET: u64 = 5_000_000;

fn io<T>(r: std::io::Result<T>, path: &Path) -> Res<T> {
    r.map_err(|e| DomainError::new("io", format!("{}: {e}", path.display())))
}

fn read_input(path: &Path, rec: &mut RunRecord) -> Res<String> {
    let text = io(std::fs::read_to_string(path), path)?;
    rec.add_input(&path.display().to_string(), text.as_bytes());
    Ok(text)
}

fn write_output(path: &Path, text: &str) -> Res<()> {
    io(std::fs::write(path, text), path)
}

fn parse_field(spec: &str, modulus: Option<&[u32]>) -> Res<Field> {
    let (p, h) = Field::from_order_str(spec)
        .and_then(|(p, h)| if h == 1 { prime_power(p).map(|(p, k)| (p, k)) } else { Some((p, h)) })
        .ok_or_else(|| DomainError::new("field", format!("'{spec}' is not p^h or a prime power")))?;
    Field::new(p, h, modulus).map_err(|e| DomainError::new("field", e))
}

/// A plane file if `spec` names an existing file, otherwise PG(2, spec).
fn load_plane(spec: &str, rec: &mut RunRecord) -> Res<Plane> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = read_input(path, rec)?;
        let id = format!("sha256:{}", &crate::record::sha256_hex(text.as_bytes())[..16]);
        return read_plane(&text, &id).map_err(|e| DomainError::new("plane", e));
    }
    let field = parse_field(spec, None)?;
    Plane::pg2(&field).map_err(|e| DomainError::new("plane", e))
}

fn load_pls(spec: &str, rec: &mut RunRecord) -> Res<PartialLinearSpace> {
    match spec {
        "builtin:mk" => Ok(cyclic_antipodal(2).expect("model")),
        "builtin:ap3" => Ok(cyclic_antipodal(3).expect("model")),
        "builtin:pg24" => Ok(antipodal_from_pg24()),
        file => {
            let text = read_input(Path::new(file), rec)?;
            read_pls(&text).map_err(|e| DomainError::new("pls", e))
        }
    }
}

fn load_word(path: &Path, rec: &mut RunRecord) -> Res<CodeWord> {
    let text = read_input(path, rec)?;
    read_word(&text).map_err(|e| DomainError::new("word", e))
}

fn characteristic(plane: &Plane, p: Option<u32>) -> Res<u32> {
    if let Some(p) = p {
        return Ok(p);
    }
    prime_power(plane.order() as u32)
        .map(|(p, _)| p)
        .ok_or_else(|| DomainError::new("code", format!("order {} is not a prime power; pass --p", plane.order())))
}

fn plane_summary(plane: &Plane) -> Value {
    json!({
        "order": plane.order(),
        "points": plane.num_points(),
        "generated": plane.is_generated(),
        "modulus": plane.field().map(|f| f.modulus().to_vec()),
    })
}

fn emit_word(w: &CodeWord, out: &WordOut) -> Res<CodeWord> {
    let w = if out.raw { w.clone() } else { w.normalized() };
    if let Some(path) = &out.out {
        write_output(path, &write_word(&w))?;
    }
    Ok(w)
}

fn verdict_json(v: DualVerdict) -> Value {
    match v {
        DualVerdict::Dual => json!({ "dual": true }),
        DualVerdict::Violated { line, dot } => json!({ "dual": false, "line": line, "dot": dot }),
    }
}

fn subplane_arg(plane: &Plane, spec: &str, first: Option<&SubplaneResult>) -> Res<SubplaneResult> {
    let err = |e: &dyn ToString| DomainError::new("subplane", e.to_string());
    if spec == "baer" {
        if plane.is_generated() {
            return baer_subfield_subplane(plane).map_err(|e| err(&e));
        }
        // no coordinates: take the first Baer subplane closed from a quadrangle
        let m = (1..=plane.order()).find(|m| m * m >= plane.order()).unwrap_or(1);
        if m * m != plane.order() {
            return Err(DomainError::new("subplane", format!("order {} is not a square", plane.order())));
        }
        let found = subplane_search(plane, m, 1, SUBPLANE_QUADRANGLE_BUDGET).map_err(|e| err(&e))?;
        return found
            .subplanes
            .into_iter()
            .next()
            .ok_or_else(|| DomainError::new("subplane", "no Baer subplane found"));
    }
    if let Some(seed) = spec.strip_prefix("moved:") {
        let seed: u64 = seed.parse().map_err(|_| DomainError::new("subplane", format!("bad seed in '{spec}'")))?;
        let base = first.ok_or_else(|| DomainError::new("subplane", "moved: needs a first subplane"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = disjoint_image(plane, &base.points, &mut rng, 10_000)
            .ok_or_else(|| DomainError::new("subplane", "no disjoint image found"))?;
        let pts: Vec<usize> = base.points.iter().map(|&x| c.apply_point(plane, x).expect("point")).collect();
        return subplane_from_points(plane, &pts).map_err(|e| err(&e));
    }
    let pts = spec
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| DomainError::new("subplane", format!("bad point list '{spec}'")))?;
    subplane_from_points(plane, &pts).map_err(|e| err(&e))
}

fn construct(cmd: &ConstructCmd, rec: &mut RunRecord) -> Res<(Value, String)> {
    let cerr = |e: planecode::construct::ConstructError| DomainError::new("construct", e);
    let (plane, w, recipe, verdict, out) = match cmd {
        ConstructCmd::LineDiff { plane, p, l, m, out } => {
            let plane = load_plane(plane, rec)?;
            let p = characteristic(&plane, *p)?;
            let w = line_diff(&plane, p, *l, *m).map_err(cerr)?;
            let v = is_dual_word(&w, &plane).map_err(|e| DomainError::new("code", e))?;
            (plane, w, WordRecipe::LineDiff { l: *l, m: *m }, v, out)
        }
        ConstructCmd::BaerDiff { plane, subplane, secant, out } => {
            let plane = load_plane(plane, rec)?;
            let (p, _) = prime_power(plane.order() as u32).ok_or_else(|| DomainError::new("construct", "order is not a prime power"))?;
            let b = subplane_arg(&plane, subplane, None)?;
            let (w, l) = baer_diff(&plane, p, &b, *secant).map_err(cerr)?;
            let v = is_dual_word(&w, &plane).map_err(|e| DomainError::new("code", e))?;
            (plane, w, WordRecipe::BaerDiff { subplane: b.points, secant: l }, v, out)
        }
        ConstructCmd::SubplaneDiff { plane, p, first, second, out } => {
            let plane = load_plane(plane, rec)?;
            let p = characteristic(&plane, *p)?;
            let a = subplane_arg(&plane, first, None)?;
            let b = subplane_arg(&plane, second, Some(&a))?;
            let (w, v) = subplane_diff(&plane, p, &a, &b).map_err(cerr)?;
            (plane, w, WordRecipe::SubplaneDiff { first: a.points, second: b.points }, v, out)
        }
        ConstructCmd::AntipodalDiff { plane, pls, seed, out } => {
            let plane = load_plane(plane, rec)?;
            let pls = load_pls(pls, rec)?;
            let ap = validate_antipodal(&pls).map_err(|e| DomainError::new("antipodal", e))?;
            let p = ap.order() as u32 + 1;
            let found = planecode::search::embed_search(&pls, &plane, SearchOptions::default());
            let e = found
                .embeddings
                .first()
                .ok_or_else(|| DomainError::new("search", format!("no embedding: {}", found.status.as_str())))?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let c = disjoint_image(&plane, &e.point_map, &mut rng, 10_000)
                .ok_or_else(|| DomainError::new("construct", "no disjoint image found"))?;
            let f = transform_embedding(&plane, &c, e).ok_or_else(|| DomainError::new("construct", "plane has no coordinates"))?;
            let (w, v) = antipodal_diff(&plane, p, (&pls, e), (&pls, &f)).map_err(cerr)?;
            let recipe = WordRecipe::AntipodalDiff { first: e.point_map.clone(), second: f.point_map.clone() };
            (plane, w, recipe, v, out)
        }
    };
    let emitted = emit_word(&w, out)?;
    let ingredients = match &recipe {
        WordRecipe::LineDiff { l, m } => json!({ "l": l, "m": m }),
        WordRecipe::BaerDiff { subplane, secant } => json!({ "subplane": subplane, "secant": secant }),
        WordRecipe::SubplaneDiff { first, second } | WordRecipe::AntipodalDiff { first, second } => {
            json!({ "first": first, "second": second })
        }
    };
    let summary = format!("{}: weight {}, dual {}", recipe.kind(), w.weight(), verdict.is_dual());
    let outcome = json!({
        "recipe": recipe.kind(),
        "ingredients": ingredients,
        "plane": plane_summary(&plane),
        "weight": w.weight(),
        "verdict": verdict_json(verdict),
        "dual": verdict.is_dual(),
        "word": report::word(&emitted),
    });
    Ok((outcome, summary))
}

fn dispatch(cli: &Cli, rec: &mut RunRecord) -> Res<(Value, String, bool)> {
    let threads = thread_count(cli.threads);
    let ok = |v: Value, s: String| Ok((v, s, true));
    match &cli.command {
        Command::Plane(PlaneCmd::Build { field, modulus, out }) => {
            let f = parse_field(field, modulus.as_deref())?;
            let plane = Plane::pg2(&f).map_err(|e| DomainError::new("plane", e))?;
            let text = write_plane(&plane);
            if let Some(path) = out {
                write_output(path, &text)?;
            }
            let s = format!("PG(2,{}): {} points", plane.order(), plane.num_points());
            ok(json!({ "field": field, "plane": plane_summary(&plane), "sha256": crate::record::sha256_hex(text.as_bytes()) }), s)
        }
        Command::Plane(PlaneCmd::Validate { file }) => {
            let plane = load_plane(&file.display().to_string(), rec)?;
            ok(json!({ "valid": true, "plane": plane_summary(&plane) }), format!("valid plane of order {}", plane.order()))
        }
        Command::Code(CodeCmd::Dim(args)) => {
            let plane = load_plane(&args.plane, rec)?;
            let p = characteristic(&plane, args.p)?;
            let code = code_of_plane(&plane, p, args.allow_mismatch).map_err(|e| DomainError::new("code", e))?;
            let d = code.dimension();
            ok(json!({ "p": p, "length": code.length(), "dimension": d, "dual_dimension": code.length() - d }), format!("dimension {d}"))
        }
        Command::Code(CodeCmd::MinWeight { code, dual, budget }) => {
            let plane = load_plane(&code.plane, rec)?;
            let p = characteristic(&plane, code.p)?;
            let mut c = code_of_plane(&plane, p, code.allow_mismatch).map_err(|e| DomainError::new("code", e))?;
            if *dual {
                c = c.dual();
            }
            let mw = c.enumerate_min_weight(*budget).map_err(|e| DomainError::new("code", e))?;
            let words: Vec<Value> = mw.words.iter().map(report::word).collect();
            let s = format!("minimum weight {} ({} words)", mw.weight, words.len());
            ok(json!({ "p": p, "dual": dual, "dimension": c.dimension(), "weight": mw.weight, "count": words.len(), "words": words }), s)
        }
        Command::Code(CodeCmd::Check { word, plane }) => {
            let w = load_word(word, rec)?;
            let plane = load_plane(plane, rec)?;
            let v = is_dual_word(&w, &plane).map_err(|e| DomainError::new("code", e))?;
            ok(verdict_json(v), format!("dual: {}", v.is_dual()))
        }
        Command::Construct(cmd) => {
            let (v, s) = construct(cmd, rec)?;
            ok(v, s)
        }
        Command::Analyze(args) => {
            let w = load_word(&args.word, rec)?;
            let plane = load_plane(&args.plane, rec)?;
            let a = analyze(&w, &plane, args.allow_non_dual).map_err(|e| DomainError::new("analyze", e))?;
            let fails = a.failures().count();
            let s = format!("weight {}, {}, {} failed checks", a.weight, a.classification, fails);
            ok(report::analysis(&a), s)
        }
        Command::Antipodal(AntipodalCmd::Build { order, from_pg24, out }) => {
            let pls = if *from_pg24 {
                antipodal_from_pg24()
            } else {
                cyclic_antipodal(order.expect("clap enforces")).map_err(|e| DomainError::new("antipodal", e))?
            };
            let ap = validate_antipodal(&pls).map_err(|e| DomainError::new("antipodal", e))?;
            let text = write_pls(&pls);
            if let Some(path) = out {
                write_output(path, &text)?;
            }
            ok(json!({ "order": ap.order(), "points": pls.num_points(), "lines": pls.num_lines() }), format!("antipodal plane of order {}", ap.order()))
        }
        Command::Antipodal(AntipodalCmd::Validate { file }) => {
            let pls = load_pls(&file.display().to_string(), rec)?;
            let ap = validate_antipodal(&pls).map_err(|e| DomainError::new("antipodal", e))?;
            let perp: Vec<usize> = (0..pls.num_points()).map(|x| ap.perp_point(x)).collect();
            ok(json!({ "valid": true, "order": ap.order(), "perp_points": perp }), format!("antipodal plane of order {}", ap.order()))
        }
        Command::Embed(args) => {
            let pls = load_pls(&args.pls, rec)?;
            let plane = load_plane(&args.plane, rec)?;
            let opts = SearchOptions { cap: args.cap, budget: args.budget, normalize: !args.no_normalize };
            let out = embed_search_parallel(&pls, &plane, opts, &pool(threads));
            let s = format!("{} ({} nodes)", out.status.as_str(), out.stats.nodes);
            // running out of budget is not an answer
            let answered = out.status != SearchStatus::BudgetExceeded;
            Ok((report::search_outcome(&out), s, answered))
        }
        Command::Suite(SuiteCmd::Acceptance { budget, seed, random_words, plane_file }) => {
            let mut files = Vec::new();
            for path in plane_file {
                files.push((path.display().to_string(), read_input(path, rec)?));
            }
            let cfg = SuiteConfig { budget: *budget, threads, seed: *seed, random_words: *random_words, plane_files: files };
            let rows = run_acceptance(&cfg, |r| eprintln!("{}", r.line()));
            let passed = rows.iter().all(|r| r.passed);
            let failed = rows.iter().filter(|r| !r.passed).count();
            let s = if passed { "all rows pass".to_string() } else { format!("{failed} rows FAILED") };
            Ok((json!({ "passed": passed, "rows": rows }), s, passed))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Plane(PlaneCmd::Build { .. }) => "plane build",
        Command::Plane(PlaneCmd::Validate { .. }) => "plane validate",
        Command::Code(CodeCmd::Dim(_)) => "code dim",
        Command::Code(CodeCmd::MinWeight { .. }) => "code min-weight",
        Command::Code(CodeCmd::Check { .. }) => "code check",
        Command::Construct(ConstructCmd::LineDiff { .. }) => "construct line-diff",
        Command::Construct(ConstructCmd::BaerDiff { .. }) => "construct baer-diff",
        Command::Construct(ConstructCmd::SubplaneDiff { .. }) => "construct subplane-diff",
        Command::Construct(ConstructCmd::AntipodalDiff { .. }) => "construct antipodal-diff",
        Command::Analyze(_) => "analyze",
        Command::Antipodal(AntipodalCmd::Build { .. }) => "antipodal build",
        Command::Antipodal(AntipodalCmd::Validate { .. }) => "antipodal validate",
        Command::Embed(_) => "embed",
        Command::Suite(SuiteCmd::Acceptance { .. }) => "suite acceptance",
    }
}

/// The result of one invocation.
#[derive(Debug)]
pub struct Invocation {
    pub code: i32,
    /// None for `--help` and `--version`.
    pub record: Option<RunRecord>,
    /// Where `--record` asked for the record to go.
    pub record_path: Option<PathBuf>,
}

impl Invocation {
    /// Writes the record to the `--record` file, or to stdout.
    pub fn emit(&self) -> std::io::Result<()> {
        let Some(rec) = &self.record else {
            return Ok(());
        };
        let text = serde_json::to_string_pretty(rec).expect("serializable") + "\n";
        match &self.record_path {
            Some(path) => std::fs::write(path, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Parses `argv` and runs the command.
pub fn run(argv: Vec<String>) -> Invocation {
    use clap::error::ErrorKind;
    let start = Instant::now();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Invocation { code: 0, record: None, record_path: None };
            }
            let mut rec = RunRecord::new("usage", argv, Value::Null);
            rec.fail("usage", e.kind().to_string());
            rec.finish(start.elapsed());
            return Invocation { code: 2, record: Some(rec), record_path: None };
        }
    };
    let config = json!({ "threads": thread_count(cli.threads), "command": format!("{:?}", cli.command) });
    let mut rec = RunRecord::new(command_name(&cli.command), argv, config);
    let code = match dispatch(&cli, &mut rec) {
        Ok((outcome, summary, answered)) => {
            eprintln!("{}: {summary}", rec.command);
            rec.outcome = outcome;
            if answered {
                0
            } else {
                rec.ok = false;
                1
            }
        }
        Err(e) => {
            eprintln!("{}: error ({}): {}", rec.command, e.kind, e.message);
            rec.fail(e.kind, e.message);
            1
        }
    };
    rec.finish(start.elapsed());
    Invocation { code, record: Some(rec), record_path: cli.record.clone() }
}
