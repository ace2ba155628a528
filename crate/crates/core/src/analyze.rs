//! Structural analysis of dual-code words of a plane: colour classes,
//! secant profiles, the μ identities, the colour graph, a battery of
//! inequality checks, and recovery of Baer and antipodal structure from
//! two-colour words.
//!
//! Notation: `c` is the word, `S` its support, `K_λ` the points with symbol
//! `λ`, `x_A`, `y_A`, `z_A` the numbers of 2-, 3- and 4-secants to `S`
//! through `A`, and for a plane of order `p^2`, `ε = w − (2p^2 − 2p + 2)`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::antipodal::{induced_structure, validate_antipodal, AntipodalPlane, PartialLinearSpace};
use crate::codes::{is_dual_word, CodeError, CodeWord, DualVerdict};
use crate::construct::baer_diff;
use crate::geometry::{subplane_from_points, Plane, SubplaneResult};
use crate::search::{verify_embedding, Embedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("the word is not in the dual code: line {line} has dot product {dot}")]
    NotDualWord { line: usize, dot: u8 },
    #[error("structure mismatch at step '{step}': {detail}")]
    StructureMismatch { step: &'static str, detail: String },
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn mismatch(step: &'static str, detail: impl Into<String>) -> AnalyzeError {
    AnalyzeError::StructureMismatch {
        step,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not-applicable",
        }
    }
}

/// One evaluated identity or inequality. `detail` holds the witness of a
/// failure or the reason a check does not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, witness: impl FnOnce() -> String) -> Check {
        Check {
            name,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: if ok { String::new() } else { witness() },
        }
    }

    fn na(name: &'static str, why: &str) -> Check {
        Check {
            name,
            status: CheckStatus::NotApplicable,
            detail: why.to_string(),
        }
    }
}

/// Names of all checks, in report order.
pub const CHECK_NAMES: [&str; 14] = [
    "summu",
    "clmod",
    "cmod",
    "2secants",
    "cor_even",
    "boundmu",
    "0ofp",
    "nrsecants",
    "kvsx_i",
    "kvsx_ii",
    "kvsx_iii",
    "kvsx_iv",
    "colour_graph",
    "no_tangents",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    None,
    Baer,
    Antipodal,
    TwoColourOther,
    MultiColour,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::None => "none",
            Classification::Baer => "baer",
            Classification::Antipodal => "antipodal",
            Classification::TwoColourOther => "two-colour-other",
            Classification::MultiColour => "multi-colour",
        })
    }
}

/// Secant data at a support point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointProfile {
    pub point: usize,
    pub colour: u8,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// `|ℓ ∩ S|` for every line `ℓ` through the point, ascending.
    pub secants: Vec<usize>,
}

/// The graph on `1..p−1` with `α ~ β` iff `α + β ∈ {p, p+1}`, and its
/// subgraph induced by a colour set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColourGraph {
    pub p: u32,
    pub vertices: Vec<u32>,
    pub components: Vec<Vec<u32>>,
}

impl ColourGraph {
    pub fn adjacent(p: u32, a: u32, b: u32) -> bool {
        a + b == p || a + b == p + 1
    }

    /// Degree of `a` in the full graph; a loop counts once.
    pub fn full_degree(p: u32, a: u32) -> usize {
        (1..p).filter(|&b| Self::adjacent(p, a, b)).count()
    }

    /// The subgraph induced on `vertices`, with components sorted.
    pub fn induced(p: u32, vertices: &[u32]) -> ColourGraph {
        let mut vs: Vec<u32> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut seen = vec![false; vs.len()];
        let mut components = Vec::new();
        for s in 0..vs.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![vs[s]];
            let mut stack = vec![s];
            while let Some(i) = stack.pop() {
                for j in 0..vs.len() {
                    if !seen[j] && Self::adjacent(p, vs[i], vs[j]) {
                        seen[j] = true;
                        comp.push(vs[j]);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        ColourGraph {
            p,
            vertices: vs,
            components,
        }
    }

    /// The full graph on `1..p−1`.
    pub fn full(p: u32) -> ColourGraph {
        let all: Vec<u32> = (1..p).collect();
        Self::induced(p, &all)
    }

    /// Vertices with a loop (`2α = p + 1` or `2α = p`).
    pub fn loops(&self) -> Vec<u32> {
        self.vertices
            .iter()
            .copied()
            .filter(|&a| Self::adjacent(self.p, a, a))
            .collect()
    }
}

/// Recovered Baer structure: `c = scalar · (B − ℓ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaerExtraction {
    pub subplane: SubplaneResult,
    pub secant: usize,
    pub scalar: u32,
}

/// One colour class read as an embedded antipodal plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodalClass {
    pub colour: u8,
    pub structure: AntipodalPlane,
    pub embedding: Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extraction {
    Baer(BaerExtraction),
    Antipodal(Vec<AntipodalClass>),
    Failed(AnalyzeError),
}

/// Everything the analyzer computes about a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordAnalysis {
    pub p: u32,
    pub order: usize,
    pub weight: usize,
    /// Set when the plane order is `p^2`.
    pub epsilon: Option<i64>,
    /// `1 <= ε <= p − 2`.
    pub in_band: bool,
    pub dual: bool,
    /// The scalar applied to reach the canonical word.
    pub scale: u32,
    pub canonical: CodeWord,
    /// `(colour, |K_colour|)` for the canonical word, by colour.
    pub colours: Vec<(u8, usize)>,
    pub profiles: Vec<PointProfile>,
    pub tangents: usize,
    pub mu: u64,
    pub mu_neg: u64,
    pub colour_graph: ColourGraph,
    pub checks: Vec<Check>,
    pub classification: Classification,
    pub extraction: Option<Extraction>,
}

impl WordAnalysis {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn class_size(&self, colour: u8) -> usize {
        self.colours
            .iter()
            .find(|&&(c, _)| c == colour)
            .map_or(0, |&(_, n)| n)
    }
}

fn line_hits(word: &CodeWord, plane: &Plane) -> Vec<usize> {
    (0..plane.num_lines())
        .map(|l| {
            plane
                .points_on(l)
                .iter()
                .filter(|&&x| word.value(x as usize) != 0)
                .count()
        })
        .collect()
}

fn profiles(word: &CodeWord, plane: &Plane, hits: &[usize]) -> Vec<PointProfile> {
    word.support()
        .iter()
        .map(|&a| {
            let mut secants: Vec<usize> = plane.lines_through(a).iter().map(|&l| hits[l as usize]).collect();
            secants.sort_unstable();
            let count = |k| secants.iter().filter(|&&s| s == k).count();
            PointProfile {
                point: a,
                colour: word.value(a),
                x: count(2),
                y: count(3),
                z: count(4),
                secants,
            }
        })
        .collect()
}

/// The scaling used for classification: colour 1 is used and, if possible,
/// some point of `K_{p−1}` has the least `x` over the support; ties go to
/// the lexicographically least word.
fn canonical_scale(word: &CodeWord, profiles: &[PointProfile]) -> u32 {
    let p = word.p();
    if word.is_zero() {
        return 1;
    }
    let min_x = profiles.iter().map(|pr| pr.x).min().unwrap_or(0);
    let minimal: Vec<usize> = profiles.iter().filter(|pr| pr.x == min_x).map(|pr| pr.point).collect();
    let mut best: Option<(bool, Vec<u8>, u32)> = None;
    for lambda in 1..p {
        let w = word.scale(lambda);
        if !w.values().contains(&1) {
            continue;
        }
        let good = minimal.iter().any(|&q| w.value(q) as u32 == p - 1);
        let key = (!good, w.values().to_vec(), lambda);
        if best.as_ref().is_none_or(|b| (key.0, &key.1) < (b.0, &b.1)) {
            best = Some(key);
        }
    }
    best.map_or(1, |b| b.2)
}

/// Analyzes a word of `plane`. Non-dual words are refused unless
/// `allow_non_dual` is set, in which case every check is reported as not
/// applicable.
pub fn analyze(word: &CodeWord, plane: &Plane, allow_non_dual: bool) -> Result<WordAnalysis, AnalyzeError> {
    let verdict = is_dual_word(word, plane)?;
    if let DualVerdict::Violated { line, dot } = verdict {
        if !allow_non_dual {
            return Err(AnalyzeError::NotDualWord { line, dot });
        }
    }
    let dual = verdict.is_dual();
    let p = word.p();
    let pu = p as usize;
    let order = plane.order();
    let square = order == pu * pu;
    let hits = line_hits(word, plane);
    let raw_profiles = profiles(word, plane, &hits);
    let scale = canonical_scale(word, &raw_profiles);
    let canonical = word.scale(scale);
    let profiles = profiles(&canonical, plane, &hits);
    let w = word.weight();
    let epsilon = square.then(|| w as i64 - (2 * pu * pu - 2 * pu + 2) as i64);
    let in_band = epsilon.is_some_and(|e| e >= 1 && e <= pu as i64 - 2);
    let classes = canonical.colour_classes();
    let colours: Vec<(u8, usize)> = (1..p as u8)
        .filter(|&c| !classes[c as usize].is_empty())
        .map(|c| (c, classes[c as usize].len()))
        .collect();
    let tangents = hits.iter().filter(|&&h| h == 1).count();
    let colour_set: Vec<u32> = colours.iter().map(|&(c, _)| c as u32).collect();
    let colour_graph = ColourGraph::induced(p, &colour_set);
    let mut analysis = WordAnalysis {
        p,
        order,
        weight: w,
        epsilon,
        in_band,
        dual,
        scale,
        mu: canonical.mu(),
        mu_neg: canonical.neg().mu(),
        canonical,
        colours,
        profiles,
        tangents,
        colour_graph,
        checks: Vec::new(),
        classification: Classification::None,
        extraction: None,
    };
    analysis.checks = if dual {
        run_checks(&analysis, plane)
    } else {
        CHECK_NAMES
            .iter()
            .map(|&n| Check::na(n, "word is not in the dual code"))
            .collect()
    };
    analysis.classification = classify(&analysis);
    analysis.extraction = match analysis.classification {
        Classification::Baer if dual => Some(
            extract_baer(word, plane).map_or_else(Extraction::Failed, Extraction::Baer),
        ),
        Classification::Antipodal if dual => Some(
            extract_antipodal(word, plane).map_or_else(Extraction::Failed, Extraction::Antipodal),
        ),
        _ => None,
    };
    Ok(analysis)
}

fn classify(a: &WordAnalysis) -> Classification {
    let pu = a.p as usize;
    let square = a.order == pu * pu;
    let sizes: Vec<usize> = a.colours.iter().map(|&(_, n)| n).collect();
    let opposite = a.colours.len() == 2 && a.colours[0].0 as u32 + a.colours[1].0 as u32 == a.p;
    let baer = square
        && opposite
        && a.weight == 2 * pu * pu - pu
        && sizes.contains(&(pu * pu))
        && sizes.contains(&(pu * pu - pu));
    let antipodal = square && opposite && sizes.iter().all(|&n| n == pu * pu - pu + 2);
    debug_assert!(!(baer && antipodal));
    match a.colours.len() {
        0 | 1 => Classification::None,
        2 if baer => Classification::Baer,
        2 if antipodal => Classification::Antipodal,
        2 => Classification::TwoColourOther,
        _ => Classification::MultiColour,
    }
}

fn run_checks(a: &WordAnalysis, plane: &Plane) -> Vec<Check> {
    let c = &a.canonical;
    let p = a.p as i64;
    let pu = a.p as usize;
    let w = a.weight as i64;
    let square = a.order == pu * pu;
    let size = |lambda: i64| a.class_size(lambda.rem_euclid(p) as u8) as i64;
    let mut out = Vec::with_capacity(CHECK_NAMES.len());

    out.push(Check::new("summu", (a.mu + a.mu_neg) as i64 == p * w, || {
        alloc::format!("mu(c)={} mu(-c)={} p*w={}", a.mu, a.mu_neg, p * w)
    }));

    let bad_line = (0..plane.num_lines()).find(|&l| c.mu_on(plane.points_on(l)) % a.p as u64 != 0);
    out.push(Check::new("clmod", bad_line.is_none(), || {
        alloc::format!("line {}", bad_line.unwrap_or(0))
    }));

    if a.order % pu == 0 || a.weight < plane.num_points() {
        out.push(Check::new("cmod", a.mu % a.p as u64 == 0, || {
            alloc::format!("mu(c)={}", a.mu)
        }));
    } else {
        out.push(Check::na("cmod", "p does not divide the order and the support is everything"));
    }

    let eps = a.epsilon.unwrap_or(0);
    if square && a.in_band {
        let bound = 2 * p + 1 - eps;
        let bad = a.profiles.iter().find(|pr| (pr.x as i64) < bound);
        out.push(Check::new("2secants", bad.is_none(), || {
            let pr = bad.expect("failure");
            alloc::format!("point {} has x={} < {}", pr.point, pr.x, bound)
        }));
    } else {
        out.push(Check::na("2secants", "needs plane order p^2 and 1 <= eps <= p-2"));
    }

    if a.p % 2 == 1 && a.weight > 0 && a.profiles.iter().all(|pr| pr.x > 0) {
        let unpaired = a.colours.iter().find(|&&(col, _)| size(p - col as i64) == 0);
        let even = a.colours.len() % 2 == 0;
        out.push(Check::new("cor_even", unpaired.is_none() && even, || match unpaired {
            Some(&(col, _)) => alloc::format!("colour {col} has no opposite"),
            None => alloc::format!("{} colours", a.colours.len()),
        }));
    } else {
        out.push(Check::na("cor_even", "needs p odd and a 2-secant through every support point"));
    }

    let has = |col: i64| size(col) > 0;
    if square && has(1) && has(p - 1) {
        let diff = (a.mu as i64 - a.mu_neg as i64).abs();
        out.push(Check::new("boundmu", diff <= eps * p, || {
            alloc::format!("|mu(c)-mu(-c)|={} > eps*p={}", diff, eps * p)
        }));
    } else {
        out.push(Check::na("boundmu", "needs plane order p^2 with colours 1 and p-1 present"));
    }

    if square && a.p >= 3 && a.colours.len() == 2 && has(1) && has(p - 1) && eps <= p - 2 {
        let gap = (size(1) - size(p - 1)).abs();
        let ok = (gap == 0 || gap == p) && (gap != p || eps == p - 2);
        out.push(Check::new("0ofp", ok, || alloc::format!("gap {gap} with eps {eps}")));
    } else {
        out.push(Check::na("0ofp", "needs plane order p^2, colours exactly {1,p-1}, eps <= p-2"));
    }

    if square {
        let pp = p * p;
        let bad = a.profiles.iter().find_map(|pr| {
            let (x, y, z) = (pr.x as i64, pr.y as i64, pr.z as i64);
            let excess: i64 = pr.secants.iter().filter(|&&s| s >= 4).map(|&s| s as i64 - 3).sum();
            if 2 * x + y < pp + 2 * p + 2 - eps {
                Some(alloc::format!("point {}: 2x+y={}", pr.point, 2 * x + y))
            } else if 3 * x + 2 * y + z < 2 * pp + 2 * p + 3 - eps {
                Some(alloc::format!("point {}: 3x+2y+z={}", pr.point, 3 * x + 2 * y + z))
            } else if x != 2 * p + 1 - eps + excess {
                Some(alloc::format!("point {}: x={} but identity gives {}", pr.point, x, 2 * p + 1 - eps + excess))
            } else {
                None
            }
        });
        out.push(Check::new("nrsecants", bad.is_none(), || bad.clone().unwrap_or_default()));
    } else {
        out.push(Check::na("nrsecants", "needs plane order p^2"));
    }

    let bad = a.profiles.iter().find(|pr| pr.x as i64 > size(p - pr.colour as i64));
    out.push(Check::new("kvsx_i", bad.is_none(), || {
        let pr = bad.expect("failure");
        alloc::format!("point {} colour {} has x={}", pr.point, pr.colour, pr.x)
    }));

    out.extend(kvsx_implications(a, plane, square, eps));

    if square && a.p >= 7 && (eps == 1 || eps == 2) {
        let comps = a.colour_graph.components.len();
        let r2 = a.colours.len() as u32;
        let mid = a.p.div_ceil(2);
        let ok = comps <= 2
            && (comps < 2 || a.colour_graph.vertices.contains(&mid))
            && 3 * r2 < a.p;
        out.push(Check::new("colour_graph", ok, || {
            alloc::format!("{comps} components, |K|={r2}")
        }));
    } else {
        out.push(Check::na("colour_graph", "needs plane order p^2, p >= 7, eps in {1,2}"));
    }

    out.push(Check::new("no_tangents", a.tangents == 0, || {
        alloc::format!("{} tangent lines", a.tangents)
    }));
    out
}

fn kvsx_implications(a: &WordAnalysis, plane: &Plane, square: bool, eps: i64) -> [Check; 3] {
    // for p = 2 the point itself lies in K_{p-λ} and the counts shift by one
    if !square || a.p == 2 {
        return ["kvsx_ii", "kvsx_iii", "kvsx_iv"].map(|n| Check::na(n, "needs plane order p^2 with p odd"));
    }
    let p = a.p as i64;
    let pp = p * p;
    let size = |lambda: i64| a.class_size(lambda.rem_euclid(p) as u8) as i64;
    let lo = 2 * p + 1 - eps;

    // (ii) |K_{p−λ}| = 2p+1−ε  ⇒  x_P = 2p+1−ε on K_λ
    let hyp: Vec<&PointProfile> = a.profiles.iter().filter(|pr| size(p - pr.colour as i64) == lo).collect();
    let ii = if hyp.is_empty() {
        Check::na("kvsx_ii", "hypothesis never holds")
    } else {
        let bad = hyp.iter().find(|pr| pr.x as i64 != lo);
        Check::new("kvsx_ii", bad.is_none(), || {
            let pr = bad.expect("failure");
            alloc::format!("point {} has x={}", pr.point, pr.x)
        })
    };

    // (iii) x_P = 2p+1−ε  ⇒  |K_{p−λ}| = 2p+1−ε, only 2- and 3-secants at P,
    // and K_{p−λ} is exactly the set of points on 2-secants through P
    let hyp: Vec<&PointProfile> = a.profiles.iter().filter(|pr| pr.x as i64 == lo).collect();
    let iii = if hyp.is_empty() {
        Check::na("kvsx_iii", "hypothesis never holds")
    } else {
        let c = &a.canonical;
        let bad = hyp.iter().find_map(|pr| {
            let opp = (p - pr.colour as i64) as u8;
            if size(opp as i64) != lo {
                return Some(alloc::format!("point {}: |K_{}|={}", pr.point, opp, size(opp as i64)));
            }
            if pr.secants.iter().any(|&s| s != 2 && s != 3) {
                return Some(alloc::format!("point {} is on a line other than a 2- or 3-secant", pr.point));
            }
            let mut partners: Vec<usize> = Vec::new();
            for &l in plane.lines_through(pr.point) {
                let on: Vec<usize> = plane
                    .points_on(l as usize)
                    .iter()
                    .map(|&x| x as usize)
                    .filter(|&x| x != pr.point && c.value(x) != 0)
                    .collect();
                if on.len() == 1 {
                    partners.push(on[0]);
                }
            }
            partners.sort_unstable();
            let mut class: Vec<usize> = c.support().iter().copied().filter(|&x| c.value(x) == opp).collect();
            class.sort_unstable();
            (partners != class).then(|| alloc::format!("point {}: 2-secant partners differ from K_{}", pr.point, opp))
        });
        Check::new("kvsx_iii", bad.is_none(), || bad.clone().unwrap_or_default())
    };

    // (iv) |K_{p−λ}| = 2p+2−ε  ⇒  on K_λ: x = 2p+2−ε, y = p²−2p−2+ε, one 4-secant
    let hi = lo + 1;
    let hyp: Vec<&PointProfile> = a.profiles.iter().filter(|pr| size(p - pr.colour as i64) == hi).collect();
    let iv = if hyp.is_empty() {
        Check::na("kvsx_iv", "hypothesis never holds")
    } else {
        let bad = hyp.iter().find(|pr| {
            pr.x as i64 != hi
                || pr.y as i64 != pp - 2 * p - 2 + eps
                || pr.z != 1
                || pr.secants.iter().any(|&s| s > 4)
        });
        Check::new("kvsx_iv", bad.is_none(), || {
            let pr = bad.expect("failure");
            alloc::format!("point {}: x={} y={} z={}", pr.point, pr.x, pr.y, pr.z)
        })
    };
    [ii, iii, iv]
}

fn two_opposite_classes(word: &CodeWord) -> Option<[(u8, Vec<usize>); 2]> {
    let classes = word.colour_classes();
    let used: Vec<u8> = (1..word.p() as u8).filter(|&c| !classes[c as usize].is_empty()).collect();
    if used.len() != 2 {
        return None;
    }
    Some([
        (used[0], classes[used[0] as usize].clone()),
        (used[1], classes[used[1] as usize].clone()),
    ])
}

/// Recovers the Baer subplane `B` and secant `ℓ` with `c = λ(B − ℓ)` from a
/// dual word of weight `2p^2 − p` with classes of sizes `p^2` and
/// `p^2 − p`, following the structure argument step by step.
pub fn extract_baer(word: &CodeWord, plane: &Plane) -> Result<BaerExtraction, AnalyzeError> {
    let p = word.p();
    let pu = p as usize;
    let pre = "precondition";
    if plane.order() != pu * pu {
        return Err(mismatch(pre, "plane order is not p^2"));
    }
    if word.weight() != 2 * pu * pu - pu {
        return Err(mismatch(pre, alloc::format!("weight {} is not 2p^2-p", word.weight())));
    }
    let Some([a, b]) = two_opposite_classes(word) else {
        return Err(mismatch(pre, "the word does not use exactly two symbols"));
    };
    let (big, small) = if a.1.len() >= b.1.len() { (a, b) } else { (b, a) };
    if big.1.len() != pu * pu || small.1.len() != pu * pu - pu {
        return Err(mismatch(
            pre,
            alloc::format!("class sizes {} and {}", big.1.len(), small.1.len()),
        ));
    }
    if let DualVerdict::Violated { line, .. } = is_dual_word(word, plane)? {
        return Err(mismatch(pre, alloc::format!("not dual (line {line})")));
    }
    if big.0 as u32 + small.0 as u32 != p {
        return Err(mismatch("opposite colours", alloc::format!("colours {} and {}", big.0, small.0)));
    }
    let q = small.1[0];
    let l = plane
        .line_through(q, small.1[1])
        .map_err(|e| mismatch("single line", e.to_string()))?;
    if let Some(&x) = small.1.iter().find(|&&x| !plane.incident(x, l)) {
        return Err(mismatch(
            "single line",
            alloc::format!("no line through {q} holds the smaller class (point {x} is off line {l})"),
        ));
    }
    if let Some(&x) = big.1.iter().find(|&&x| plane.incident(x, l)) {
        return Err(mismatch("line avoids larger class", alloc::format!("point {x} on line {l}")));
    }
    let mut points = big.1.clone();
    points.extend(
        plane
            .points_on(l)
            .iter()
            .map(|&x| x as usize)
            .filter(|&x| word.value(x) == 0),
    );
    let subplane = subplane_from_points(plane, &points).map_err(|e| mismatch("subplane", e.to_string()))?;
    if subplane.order != pu {
        return Err(mismatch("subplane", alloc::format!("order {}", subplane.order)));
    }
    let (rebuilt, _) = baer_diff(plane, p, &subplane, Some(l)).map_err(|e| mismatch("reproduce", e.to_string()))?;
    let scalar = big.0 as u32;
    if rebuilt.scale(scalar) != *word {
        return Err(mismatch("reproduce", "B - l does not match the word up to scalar"));
    }
    Ok(BaerExtraction {
        subplane,
        secant: l,
        scalar,
    })
}

/// Reads both colour classes of a two-colour dual word with classes of size
/// `p^2 − p + 2` as antipodal planes of order `p − 1`, with the plane lines
/// meeting a class in `p` points as lines.
pub fn extract_antipodal(word: &CodeWord, plane: &Plane) -> Result<Vec<AntipodalClass>, AnalyzeError> {
    let p = word.p();
    let pu = p as usize;
    let pre = "precondition";
    if plane.order() != pu * pu {
        return Err(mismatch(pre, "plane order is not p^2"));
    }
    let Some(classes) = two_opposite_classes(word) else {
        return Err(mismatch(pre, "the word does not use exactly two symbols"));
    };
    let want = pu * pu - pu + 2;
    if classes.iter().any(|c| c.1.len() != want) {
        return Err(mismatch(
            pre,
            alloc::format!("class sizes {} and {}, expected {want}", classes[0].1.len(), classes[1].1.len()),
        ));
    }
    if let DualVerdict::Violated { line, .. } = is_dual_word(word, plane)? {
        return Err(mismatch(pre, alloc::format!("not dual (line {line})")));
    }
    let mut out = Vec::with_capacity(2);
    for (colour, points) in classes {
        let (pls, line_map): (PartialLinearSpace, Vec<usize>) =
            induced_structure(plane, &points, pu).map_err(|e| mismatch("induced structure", e.to_string()))?;
        let structure = validate_antipodal(&pls).map_err(|e| mismatch("antipodal axioms", e.to_string()))?;
        if structure.order() != pu - 1 {
            return Err(mismatch("antipodal axioms", alloc::format!("order {}", structure.order())));
        }
        let embedding = Embedding {
            point_map: points,
            line_map,
        };
        verify_embedding(&pls, plane, &embedding).map_err(|e| mismatch("embedding", e.to_string()))?;
        out.push(AntipodalClass {
            colour,
            structure,
            embedding,
        });
    }
    Ok(out)
}
