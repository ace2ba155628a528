//! The acceptance battery: one row per criterion, each with its own
//! tolerance, plus a plane-ingestion row.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use planecode::analyze::{analyze, extract_baer, CheckStatus, Classification};
use planecode::antipodal::{antipodal_from_pg24, cyclic_antipodal, find_isomorphism, validate_antipodal};
use planecode::codes::{code_of_plane, is_dual_word, DEFAULT_ENUM_BUDGET};
use planecode::construct::{baer_diff, line_diff};
use planecode::geometry::{baer_subfield_subplane, ceva_product, menelaos_product, subplane_from_points, Collineation};
use planecode::search::{verify_embedding, SearchOptions, SearchStatus, DEFAULT_NODE_BUDGET};
use planecode::{CodeWord, Field, Plane};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::formats::{read_plane, write_plane};
use crate::parallel::{embed_search_parallel, pool, thread_count};

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Node budget per root branch for the embedding rows.
    pub budget: u64,
    pub threads: usize,
    pub seed: u64,
    /// Random dual words per plane in the analyzer row.
    pub random_words: usize,
    /// Extra plane files for the ingestion row, as (name, contents).
    pub plane_files: Vec<(String, String)>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: DEFAULT_NODE_BUDGET,
            threads: thread_count(None),
            seed: 0,
            random_words: 500,
            plane_files: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub id: String,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Row {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>6}  {} ({:.1}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.detail
        )
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pg(p: u32, h: u32) -> Plane {
    Plane::pg2(&Field::new(p, h, None).expect("field")).expect("plane")
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

/// Dual words gathered by the construction and analyzer rows, for the
/// Bagchi row: (plane order, p, word).
#[derive(Default)]
struct Collected {
    words: Vec<(usize, u32, CodeWord)>,
}

fn dimension_formula() -> Outcome {
    let start = Instant::now();
    let cases = [(2, 1, 4), (3, 1, 7), (2, 2, 10), (5, 1, 16), (7, 1, 29), (2, 3, 28), (3, 2, 37), (2, 4, 82), (5, 2, 226)];
    for (p, h, dim) in cases {
        let formula = ((p * (p + 1) / 2) as usize).pow(h) + 1;
        ensure(formula == dim, || format!("formula gives {formula} for {p}^{h}"))?;
        let code = code_of_plane(&pg(p, h), p, false).map_err(|e| e.to_string())?;
        ensure(code.dimension() == dim, || format!("q={}: rank {} != {dim}", p.pow(h), code.dimension()))?;
    }
    within(Duration::from_secs(60), start)?;
    Ok("9 ranks match".into())
}

fn primal_min_weight() -> Outcome {
    for (p, h) in [(2, 1), (3, 1), (2, 2)] {
        let plane = pg(p, h);
        let mw = code_of_plane(&plane, p, false)
            .and_then(|c| c.enumerate_min_weight(DEFAULT_ENUM_BUDGET))
            .map_err(|e| e.to_string())?;
        let n = plane.order();
        ensure(mw.weight == n + 1, || format!("q={n}: min weight {}", mw.weight))?;
        let mut lines: Vec<CodeWord> = (0..plane.num_lines())
            .flat_map(|l| {
                let w = CodeWord::line(p, &plane, l).expect("line");
                (1..p).map(move |s| w.scale(s))
            })
            .collect();
        lines.sort_by(|a, b| a.values().cmp(b.values()));
        ensure(mw.words == lines, || format!("q={n}: minimum words are not the line multiples"))?;
    }
    Ok("weights 3, 4, 5; words = scalar multiples of lines".into())
}

fn dual_min_weight(cases: &[(u32, u32, usize, usize)]) -> Outcome {
    let mut parts = Vec::new();
    for &(p, h, words, weight) in cases {
        let dual = code_of_plane(&pg(p, h), p, false).map_err(|e| e.to_string())?.dual();
        let q = p.pow(h);
        let count = (p as usize).pow(dual.dimension() as u32);
        ensure(count == words, || format!("q={q}: {count} words, expected {words}"))?;
        let mw = dual.enumerate_min_weight(DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
        ensure(mw.weight == weight, || format!("q={q}: dual minimum weight {} != {weight}", mw.weight))?;
        parts.push(format!("q={q}: {weight}"));
    }
    Ok(parts.join(", "))
}

fn analyzer_failures(w: &CodeWord, plane: &Plane) -> Result<Vec<String>, String> {
    let a = analyze(w, plane, false).map_err(|e| e.to_string())?;
    Ok(a.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect())
}

fn baer_witnesses(collected: &mut Collected) -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (p, weight) in [(3u32, 15usize), (5, 45), (7, 91)] {
        let plane = pg(p, 2);
        let b = baer_subfield_subplane(&plane).map_err(|e| e.to_string())?;
        let (w, _) = baer_diff(&plane, p, &b, None).map_err(|e| e.to_string())?;
        ensure(w.weight() == weight, || format!("p={p}: weight {}", w.weight()))?;
        let dual = is_dual_word(&w, &plane).map_err(|e| e.to_string())?;
        ensure(dual.is_dual(), || format!("p={p}: not dual ({dual:?})"))?;
        let fails = analyzer_failures(&w, &plane)?;
        ensure(fails.is_empty(), || format!("p={p}: {}", fails.join("; ")))?;
        collected.words.push((plane.order(), p, w));
        parts.push(format!("PG(2,{}): {weight}", p * p));
    }
    within(Duration::from_secs(300), start)?;
    Ok(parts.join(", "))
}

fn random_collineation(plane: &Plane, rng: &mut ChaCha8Rng) -> Collineation {
    let field = plane.field().expect("generated");
    loop {
        let m = [[0u8; 3]; 3].map(|r| r.map(|_| field.element(rng.random_range(0..field.order())).expect("in range")));
        if let Ok(c) = Collineation::new(field, m) {
            return c;
        }
    }
}

fn baer_round_trip(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trips = 0;
    for p in [3u32, 5, 7] {
        let plane = pg(p, 2);
        let base = baer_subfield_subplane(&plane).map_err(|e| e.to_string())?;
        let mut subplanes = vec![base.clone()];
        for _ in 0..2 {
            let c = random_collineation(&plane, &mut rng);
            let pts: Vec<usize> = base.points.iter().map(|&x| c.apply_point(&plane, x).expect("point")).collect();
            subplanes.push(subplane_from_points(&plane, &pts).map_err(|e| e.to_string())?);
        }
        for b in &subplanes {
            for &l in [b.lines[0], b.lines[b.lines.len() / 2], *b.lines.last().expect("lines")].iter() {
                let (w, _) = baer_diff(&plane, p, b, Some(l)).map_err(|e| e.to_string())?;
                let scaled = w.scale(rng.random_range(1..p));
                let e = extract_baer(&scaled, &plane).map_err(|e| format!("p={p}: {e}"))?;
                ensure(&e.subplane == b && e.secant == l, || format!("p={p}: recovered a different subplane or secant"))?;
                trips += 1;
            }
        }
    }
    Ok(format!("{trips} round trips"))
}

fn truth_table(budget: u64, threads: usize) -> Outcome {
    let start = Instant::now();
    let pool = pool(threads);
    let mk = cyclic_antipodal(2).map_err(|e| e.to_string())?;
    let ap3 = cyclic_antipodal(3).map_err(|e| e.to_string())?;
    let mk_cells = [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)];
    let ap3_cells = [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)];
    let mut table = Vec::new();
    let opts = SearchOptions { budget, ..SearchOptions::default() };
    let cells = mk_cells.iter().map(|&c| ("mk", &mk, c)).chain(ap3_cells.iter().map(|&c| ("ap3", &ap3, c)));
    for (name, pls, (p, h)) in cells {
        let plane = pg(p, h);
        let q = plane.order() as u32;
        let expected = if name == "mk" {
            let mut r = q;
            while r % 3 == 0 {
                r /= 3;
            }
            r == 1 || (q - 1) % 3 == 0
        } else {
            q.is_power_of_two() && q.trailing_zeros() % 2 == 0
        };
        let out = embed_search_parallel(pls, &plane, opts, &pool);
        match (expected, out.status) {
            (true, SearchStatus::Found) => {
                verify_embedding(pls, &plane, &out.embeddings[0]).map_err(|v| format!("{name} q={q}: {v}"))?;
            }
            (false, SearchStatus::ExhaustedNone) => {}
            (_, status) => {
                return Err(format!(
                    "{name} q={q}: expected {}, got {}",
                    if expected { "found" } else { "exhausted-none" },
                    status.as_str()
                ))
            }
        }
        table.push(format!("{name}/{q}:{}", if expected { "yes" } else { "no" }));
    }
    within(Duration::from_secs(1800), start)?;
    Ok(table.join(" "))
}

fn menelaos_ceva() -> Outcome {
    let mut counted = 0;
    for (p, h) in [(3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
        let plane = pg(p, h);
        let field = plane.field().expect("generated");
        let minus_one = field.neg(field.one());
        let q = field.order() as usize;
        let (mut lines, mut points) = (0, 0);
        for l in 0..plane.num_lines() {
            if let Ok(t) = menelaos_product(&plane, l) {
                ensure(t == minus_one, || format!("q={q}: Menelaos product {t} on line {l}"))?;
                lines += 1;
            }
        }
        for x in 0..plane.num_points() {
            if let Ok(t) = ceva_product(&plane, x) {
                ensure(t == field.one(), || format!("q={q}: Ceva product {t} at point {x}"))?;
                points += 1;
            }
        }
        let admissible = (q - 1) * (q - 1);
        ensure(lines == admissible && points == admissible, || format!("q={q}: covered {lines} lines, {points} points"))?;
        counted += lines + points;
    }
    Ok(format!("{counted} products checked"))
}

fn antipodal_models() -> Outcome {
    let mut parts = Vec::new();
    for s in [2usize, 3] {
        let pls = cyclic_antipodal(s).map_err(|e| e.to_string())?;
        let ap = validate_antipodal(&pls).map_err(|e| e.to_string())?;
        let n = s * s + s + 2;
        ensure(ap.order() == s && pls.num_points() == n && pls.num_lines() == n, || format!("cyclic order {s}: wrong parameters"))?;
        parts.push(format!("cyclic s={s}: {n} points"));
    }
    let complement = antipodal_from_pg24();
    let models = [cyclic_antipodal(2).expect("model"), cyclic_antipodal(3).expect("model"), complement.clone()];
    let mut perps = 0;
    for pls in &models {
        let ap = validate_antipodal(pls).map_err(|e| e.to_string())?;
        for x in 0..pls.num_points() {
            ensure(ap.perp_point(ap.perp_point(x)) == x, || format!("point {x}: perp is not an involution"))?;
            perps += 1;
        }
        for l in 0..pls.num_lines() {
            ensure(ap.perp_line(ap.perp_line(l)) == l, || format!("line {l}: perp is not an involution"))?;
            for &x in pls.line(l) {
                ensure(pls.incident(ap.perp_point(x as usize), ap.perp_line(l)), || format!("perp collinearity fails at {x}, {l}"))?;
            }
            perps += 1;
        }
    }
    let ap = validate_antipodal(&complement).map_err(|e| e.to_string())?;
    ensure(ap.order() == 3, || "PG(2,4) complement has the wrong order".into())?;
    ensure(find_isomorphism(&complement, &models[1]).is_some(), || "PG(2,4) complement is not the cyclic model".into())?;
    parts.push("PG(2,4) complement isomorphic to cyclic s=3".into());
    parts.push(format!("{perps} perp checks"));
    Ok(parts.join("; "))
}

fn analyzer_suite(cfg: &SuiteConfig, collected: &mut Collected) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut total = 0;
    let mut applicable = 0;
    let from_criterion5: Vec<(usize, u32, CodeWord)> = collected.words.clone();
    for (p, h) in [(2u32, 2u32), (3, 2), (5, 2)] {
        let plane = pg(p, h);
        let q = plane.order();
        let mut words = Vec::new();
        for (l, m) in [(0, 1), (0, q + 1), (5, 17)] {
            words.push(line_diff(&plane, p, l, m).map_err(|e| e.to_string())?);
        }
        let b = baer_subfield_subplane(&plane).map_err(|e| e.to_string())?;
        for &l in b.lines.iter().take(3) {
            words.push(baer_diff(&plane, p, &b, Some(l)).map_err(|e| e.to_string())?.0);
        }
        let constructed = words.len();
        let dual = code_of_plane(&plane, p, false).map_err(|e| e.to_string())?.dual();
        words.extend((0..cfg.random_words).map(|_| dual.random_word(&mut rng)));
        for (i, w) in words.into_iter().enumerate() {
            let a = analyze(&w, &plane, false).map_err(|e| format!("q={q} word {i}: {e}"))?;
            if let Some(c) = a.failures().next() {
                return Err(format!("q={q} word {i}: {} failed: {}", c.name, c.detail));
            }
            if i < constructed && a.weight == 2 * (p as usize).pow(2) - p as usize && p > 2 {
                ensure(a.classification == Classification::Baer, || format!("q={q}: Baer word classified {}", a.classification))?;
            }
            applicable += a.checks.iter().filter(|c| c.status != CheckStatus::NotApplicable).count();
            total += 1;
            if !w.is_zero() {
                collected.words.push((q, p, w));
            }
        }
    }
    for (q, p, w) in &from_criterion5 {
        let plane = pg(*p, 2);
        let fails = analyzer_failures(w, &plane)?;
        ensure(fails.is_empty(), || format!("q={q}: {}", fails.join("; ")))?;
        total += 1;
    }
    within(Duration::from_secs(600), start)?;
    Ok(format!("{total} words, {applicable} applicable checks, 0 failures"))
}

fn bagchi(collected: &Collected) -> Outcome {
    ensure(!collected.words.is_empty(), || "no words collected".into())?;
    for (q, p, w) in &collected.words {
        let bound = 2 * (q + 1 - q / *p as usize);
        ensure(w.weight() >= bound, || format!("q={q}: weight {} below {bound}", w.weight()))?;
    }
    Ok(format!("{} words", collected.words.len()))
}

fn ingestion(cfg: &SuiteConfig) -> Outcome {
    for (p, h) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let plane = pg(p, h);
        let text = write_plane(&plane);
        let back = read_plane(&text, "round-trip").map_err(|e| e.to_string())?;
        ensure(back == plane && write_plane(&back) == text, || format!("q={}: round trip differs", plane.order()))?;
    }
    for (name, text) in &cfg.plane_files {
        read_plane(text, name).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("7 generated planes, {} supplied files", cfg.plane_files.len()))
}

fn row(id: &str, title: &'static str, f: impl FnOnce() -> Outcome) -> Row {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Row {
        id: id.to_string(),
        title,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs every row in order, calling `progress` after each.
pub fn run_acceptance(cfg: &SuiteConfig, mut progress: impl FnMut(&Row)) -> Vec<Row> {
    let mut rows = Vec::new();
    let mut collected = Collected::default();
    let mut push = |r: Row, rows: &mut Vec<Row>| {
        progress(&r);
        rows.push(r);
    };
    push(row("ingest", "plane files round-trip and validate", || ingestion(cfg)), &mut rows);
    push(row("1", "dimension formula", dimension_formula), &mut rows);
    push(row("2", "primal minimum weight", primal_min_weight), &mut rows);
    push(row("3", "dual minimum weight, even q", || dual_min_weight(&[(2, 1, 8, 4), (2, 2, 2048, 6)])), &mut rows);
    push(row("4", "dual minimum weight, prime q", || dual_min_weight(&[(3, 1, 729, 6)])), &mut rows);
    push(row("5", "Baer-difference witnesses", || baer_witnesses(&mut collected)), &mut rows);
    push(row("6", "Baer extraction round trip", || baer_round_trip(cfg.seed)), &mut rows);
    push(row("7", "embedding truth table", || truth_table(cfg.budget, cfg.threads)), &mut rows);
    push(row("8", "Menelaos and Ceva products", menelaos_ceva), &mut rows);
    push(row("9", "antipodal models", antipodal_models), &mut rows);
    push(row("10", "analyzer checks", || analyzer_suite(cfg, &mut collected)), &mut rows);
    push(row("11", "Bagchi bound", || bagchi(&collected)), &mut rows);
    rows
}
