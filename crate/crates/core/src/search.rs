//! Embeddings of partial linear spaces into projective planes: verification,
//! frame normalization, a complete backtracking search, and slope-product
//! certificates for embedded antipodal planes.
//!
//! An embedding must preserve incidence and non-incidence between the
//! mapped points and the mapped lines. Two non-collinear points may still
//! land on a common plane line, provided that line is not the image of a
//! line of the structure.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::antipodal::{good_triangles, is_good_triangle, AntipodalPlane, PartialLinearSpace};
use crate::field::FieldElement;
use crate::geometry::{slope, Collineation, Plane, Vertex};

/// Default node budget per root branch.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no triangle with a fourth point off its sides exists in the structure")]
    NoQuadrangle,
    #[error("the plane has no coordinates")]
    NotGenerated,
    #[error("the embedding is invalid: {0}")]
    InvalidEmbedding(EmbeddingViolation),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("branch {0} does not exist")]
    NoSuchBranch(usize),
}

/// Point and line maps of an embedding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    pub point_map: Vec<usize>,
    pub line_map: Vec<usize>,
}

/// The first violated condition found by [`verify_embedding`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    DomainMismatch(String),
    NonInjectivePoints { a: usize, b: usize },
    NonInjectiveLines { a: usize, b: usize },
    IncidenceBroken { point: usize, line: usize },
    NonIncidenceBroken { point: usize, line: usize },
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingViolation::DomainMismatch(m) => write!(f, "domain mismatch: {m}"),
            EmbeddingViolation::NonInjectivePoints { a, b } => {
                write!(f, "points {a} and {b} have the same image")
            }
            EmbeddingViolation::NonInjectiveLines { a, b } => {
                write!(f, "lines {a} and {b} have the same image")
            }
            EmbeddingViolation::IncidenceBroken { point, line } => {
                write!(f, "point {point} is on line {line} but its image is not")
            }
            EmbeddingViolation::NonIncidenceBroken { point, line } => {
                write!(f, "point {point} is off line {line} but its image is on it")
            }
        }
    }
}

/// Checks injectivity and preservation of incidence and non-incidence over
/// all point-line pairs.
pub fn verify_embedding(
    pls: &PartialLinearSpace,
    plane: &Plane,
    e: &Embedding,
) -> Result<(), EmbeddingViolation> {
    use EmbeddingViolation::*;
    if e.point_map.len() != pls.num_points() || e.line_map.len() != pls.num_lines() {
        return Err(DomainMismatch(alloc::format!(
            "maps have sizes {}/{}, structure has {}/{}",
            e.point_map.len(),
            e.line_map.len(),
            pls.num_points(),
            pls.num_lines()
        )));
    }
    if let Some(&x) = e.point_map.iter().find(|&&x| x >= plane.num_points()) {
        return Err(DomainMismatch(alloc::format!("point image {x} out of range")));
    }
    if let Some(&x) = e.line_map.iter().find(|&&x| x >= plane.num_lines()) {
        return Err(DomainMismatch(alloc::format!("line image {x} out of range")));
    }
    for a in 0..e.point_map.len() {
        for b in a + 1..e.point_map.len() {
            if e.point_map[a] == e.point_map[b] {
                return Err(NonInjectivePoints { a, b });
            }
        }
    }
    for a in 0..e.line_map.len() {
        for b in a + 1..e.line_map.len() {
            if e.line_map[a] == e.line_map[b] {
                return Err(NonInjectiveLines { a, b });
            }
        }
    }
    for (line, &img) in e.line_map.iter().enumerate() {
        for (point, &x) in e.point_map.iter().enumerate() {
            match (pls.incident(point, line), plane.incident(x, img)) {
                (true, false) => return Err(IncidenceBroken { point, line }),
                (false, true) => return Err(NonIncidenceBroken { point, line }),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Four points `a, b, c, d` of the structure whose images in any embedding
/// form a frame: `a, b, c` pairwise joined by distinct lines of the
/// structure and `d` on none of those three lines. The lexicographically
/// least such tuple is chosen.
pub fn normalize_frame(pls: &PartialLinearSpace) -> Result<[usize; 4], SearchError> {
    let n = pls.num_points();
    for a in 0..n {
        for b in a + 1..n {
            let Some(ab) = pls.line_of(a, b) else { continue };
            for c in b + 1..n {
                let (Some(ac), Some(bc)) = (pls.line_of(a, c), pls.line_of(b, c)) else {
                    continue;
                };
                if ac == ab {
                    continue;
                }
                let off = |d: usize| {
                    d != a
                        && d != b
                        && d != c
                        && !pls.incident(d, ab)
                        && !pls.incident(d, ac)
                        && !pls.incident(d, bc)
                };
                if let Some(d) = (0..n).find(|&d| off(d)) {
                    return Ok([a, b, c, d]);
                }
            }
        }
    }
    Err(SearchError::NoQuadrangle)
}

/// The standard frame `(1,0,0), (0,1,0), (0,0,1), (1,1,1)`.
pub fn standard_frame(plane: &Plane) -> Result<[usize; 4], SearchError> {
    let f = |c| plane.point_from_ints(c).ok_or(SearchError::NotGenerated);
    Ok([f([1, 0, 0])?, f([0, 1, 0])?, f([0, 0, 1])?, f([1, 1, 1])?])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Stop after this many embeddings.
    pub cap: usize,
    /// Node limit for each root branch.
    pub budget: u64,
    /// Fix a frame first; ignored for planes without coordinates.
    pub normalize: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: 1,
            budget: DEFAULT_NODE_BUDGET,
            normalize: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::ExhaustedNone => "exhausted-none",
            SearchStatus::BudgetExceeded => "budget-exceeded",
        }
    }
}

/// Candidate rejections, by the constraint that fired.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PruneCounts {
    /// Image point already taken.
    pub point_used: u64,
    /// Image off an already determined line image.
    pub incidence: u64,
    /// Image on the image of a line not containing the point.
    pub non_incidence: u64,
    /// Forced line image already taken.
    pub line_used: u64,
    /// Forced line image passes through a placed non-member.
    pub forced_line: u64,
    /// Some unplaced point has no consistent forced image left.
    pub forward: u64,
    /// Leaf failed the global check (never expected).
    pub leaf: u64,
}

impl PruneCounts {
    fn absorb(&mut self, o: &PruneCounts) {
        self.point_used += o.point_used;
        self.incidence += o.incidence;
        self.non_incidence += o.non_incidence;
        self.line_used += o.line_used;
        self.forced_line += o.forced_line;
        self.forward += o.forward;
        self.leaf += o.leaf;
    }

    pub fn total(&self) -> u64 {
        self.point_used
            + self.incidence
            + self.non_incidence
            + self.line_used
            + self.forced_line
            + self.forward
            + self.leaf
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: PruneCounts,
    /// Every branch ran to completion (no budget truncation).
    pub complete: bool,
    pub branches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub embeddings: Vec<Embedding>,
    pub stats: SearchStats,
    /// The structure points fixed to the standard frame, if normalized.
    pub seed: Option<[usize; 4]>,
}

/// Result of one root branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchOutcome {
    pub embeddings: Vec<Embedding>,
    pub nodes: u64,
    pub prunes: PruneCounts,
    pub budget_exceeded: bool,
}

/// A prepared search: the seed placement and the root branching, which can
/// be run branch by branch (for example on several threads) and merged in
/// branch order with [`SearchPlan::merge`].
#[derive(Debug, Clone)]
pub struct SearchPlan<'a> {
    pls: &'a PartialLinearSpace,
    plane: &'a Plane,
    options: SearchOptions,
    seed: Option<[usize; 4]>,
    // (structure point, plane point) placed before branching
    prefix: Vec<(usize, usize)>,
    branches: Vec<(usize, usize)>,
    trivially_empty: bool,
}

impl<'a> SearchPlan<'a> {
    pub fn new(
        pls: &'a PartialLinearSpace,
        plane: &'a Plane,
        options: SearchOptions,
    ) -> SearchPlan<'a> {
        let mut plan = SearchPlan {
            pls,
            plane,
            options,
            seed: None,
            prefix: Vec::new(),
            branches: Vec::new(),
            trivially_empty: false,
        };
        if pls.num_points() > plane.num_points() || pls.num_lines() > plane.num_lines() {
            plan.trivially_empty = true;
            return plan;
        }
        if options.normalize && plane.is_generated() {
            if let (Ok(seed), Ok(frame)) = (normalize_frame(pls), standard_frame(plane)) {
                plan.seed = Some(seed);
                plan.prefix = seed.iter().copied().zip(frame).collect();
            }
        }
        let mut s = Searcher::new(pls, plane, u64::MAX, usize::MAX);
        for &(p, x) in &plan.prefix {
            if !s.place(p, x) {
                plan.trivially_empty = true;
                return plan;
            }
        }
        if s.placed == pls.num_points() {
            plan.branches.push((usize::MAX, usize::MAX));
            return plan;
        }
        if !s.forward_ok() {
            plan.trivially_empty = true;
            return plan;
        }
        let var = s.choose();
        plan.branches = s.candidates(var).into_iter().map(|x| (var, x)).collect();
        plan
    }

    pub fn seed(&self) -> Option<[usize; 4]> {
        self.seed
    }

    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }

    /// Runs one root branch with the plan's per-branch budget and cap.
    pub fn run_branch(&self, index: usize) -> Result<BranchOutcome, SearchError> {
        let &(var, x) = self
            .branches
            .get(index)
            .ok_or(SearchError::NoSuchBranch(index))?;
        let mut s = Searcher::new(self.pls, self.plane, self.options.budget, self.options.cap);
        for &(p, y) in &self.prefix {
            let ok = s.place(p, y);
            debug_assert!(ok);
        }
        if var == usize::MAX {
            s.leaf();
        } else {
            s.nodes += 1;
            if s.place(var, x) {
                if s.forward_ok() {
                    s.dfs();
                } else {
                    s.prunes.forward += 1;
                }
                s.unplace(var);
            }
        }
        Ok(BranchOutcome {
            embeddings: s.found,
            nodes: s.nodes,
            prunes: s.prunes,
            budget_exceeded: s.budget_hit,
        })
    }

    /// Combines branch outcomes given in branch order. Only the outcomes up
    /// to the point where `cap` embeddings are known need to be supplied.
    pub fn merge(&self, outcomes: &[BranchOutcome]) -> SearchOutcome {
        let mut stats = SearchStats {
            branches: self.branches.len(),
            complete: true,
            ..SearchStats::default()
        };
        let mut embeddings = Vec::new();
        let mut budget_hit = false;
        for o in outcomes {
            stats.nodes += o.nodes;
            stats.prunes.absorb(&o.prunes);
            budget_hit |= o.budget_exceeded;
            for e in &o.embeddings {
                if embeddings.len() < self.options.cap {
                    embeddings.push(e.clone());
                }
            }
        }
        let covered = outcomes.len() == self.branches.len() || embeddings.len() >= self.options.cap;
        stats.complete = !budget_hit && covered;
        let status = if !embeddings.is_empty() {
            SearchStatus::Found
        } else if budget_hit || !covered {
            SearchStatus::BudgetExceeded
        } else {
            SearchStatus::ExhaustedNone
        };
        SearchOutcome {
            status,
            embeddings,
            stats,
            seed: self.seed,
        }
    }

    /// Runs the branches in order until `cap` embeddings are found.
    pub fn run(&self) -> SearchOutcome {
        if self.trivially_empty {
            return SearchOutcome {
                status: SearchStatus::ExhaustedNone,
                embeddings: Vec::new(),
                stats: SearchStats {
                    complete: true,
                    ..SearchStats::default()
                },
                seed: self.seed,
            };
        }
        let mut outcomes = Vec::new();
        let mut count = 0;
        for i in 0..self.branches.len() {
            let o = self.run_branch(i).expect("index in range");
            count += o.embeddings.len();
            outcomes.push(o);
            if count >= self.options.cap {
                break;
            }
        }
        self.merge(&outcomes)
    }

    pub fn is_trivially_empty(&self) -> bool {
        self.trivially_empty
    }
}

/// Searches for embeddings of `pls` into `plane`. With normalization on and
/// a generated plane, a frame of the structure is fixed to the standard
/// frame first; otherwise every assignment is explored.
pub fn embed_search(pls: &PartialLinearSpace, plane: &Plane, options: SearchOptions) -> SearchOutcome {
    SearchPlan::new(pls, plane, options).run()
}

#[derive(Clone, Copy)]
enum Candidates {
    All,
    OnLine(usize),
    One(usize),
}

impl Candidates {
    fn iter(self, plane: &Plane) -> impl Iterator<Item = usize> + '_ {
        let (range, line, one) = match self {
            Candidates::All => (0..plane.num_points(), &[][..], None),
            Candidates::OnLine(l) => (0..0, plane.points_on(l), None),
            Candidates::One(x) => (0..0, &[][..], Some(x)),
        };
        range
            .chain(line.iter().map(|&x| x as usize))
            .chain(one)
    }
}

struct Searcher<'a> {
    pls: &'a PartialLinearSpace,
    plane: &'a Plane,
    img_p: Vec<u32>,
    img_l: Vec<u32>,
    placed_on: Vec<u32>,
    owner: Vec<u32>,
    line_owner: Vec<u32>,
    placed: usize,
    // lines determined by placements, newest last; `mark[p]` is where the
    // entries of point `p` start
    trail: Vec<u32>,
    mark: Vec<u32>,
    nodes: u64,
    budget: u64,
    cap: usize,
    budget_hit: bool,
    found: Vec<Embedding>,
    prunes: PruneCounts,
}

impl<'a> Searcher<'a> {
    fn new(pls: &'a PartialLinearSpace, plane: &'a Plane, budget: u64, cap: usize) -> Self {
        Searcher {
            pls,
            plane,
            img_p: vec![NONE; pls.num_points()],
            img_l: vec![NONE; pls.num_lines()],
            placed_on: vec![0; pls.num_lines()],
            owner: vec![NONE; plane.num_points()],
            line_owner: vec![NONE; plane.num_lines()],
            placed: 0,
            trail: Vec::with_capacity(pls.num_lines()),
            mark: vec![0; pls.num_points()],
            nodes: 0,
            budget,
            cap,
            budget_hit: false,
            found: Vec::new(),
            prunes: PruneCounts::default(),
        }
    }

    fn stop(&self) -> bool {
        self.budget_hit || self.found.len() >= self.cap
    }

    /// Unplaced point with the most determined lines, then the most lines
    /// holding a placed point, then the lowest index.
    fn choose(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (0usize, 0usize);
        for p in 0..self.pls.num_points() {
            if self.img_p[p] != NONE {
                continue;
            }
            let mut det = 0;
            let mut touched = 0;
            for &l in self.pls.lines_through(p) {
                if self.img_l[l as usize] != NONE {
                    det += 1;
                }
                if self.placed_on[l as usize] > 0 {
                    touched += 1;
                }
            }
            if best == usize::MAX || (det, touched) > key {
                best = p;
                key = (det, touched);
            }
        }
        best
    }

    fn candidates(&self, p: usize) -> Vec<usize> {
        self.candidate_set(p).iter(self.plane).collect()
    }

    fn candidate_set(&self, p: usize) -> Candidates {
        let mut det = self
            .pls
            .lines_through(p)
            .iter()
            .map(|&l| self.img_l[l as usize])
            .filter(|&x| x != NONE);
        match (det.next(), det.next()) {
            (None, _) => Candidates::All,
            (Some(a), None) => Candidates::OnLine(a as usize),
            (Some(a), Some(b)) => Candidates::One(self.plane.meet_fast(a as usize, b as usize)),
        }
    }

    /// Places `p` at `x` if every local constraint holds; on failure the
    /// state is unchanged.
    fn place(&mut self, p: usize, x: usize) -> bool {
        if self.owner[x] != NONE {
            self.prunes.point_used += 1;
            return false;
        }
        for &l in self.pls.lines_through(p) {
            let img = self.img_l[l as usize];
            if img != NONE && !self.plane.incident(x, img as usize) {
                self.prunes.incidence += 1;
                return false;
            }
        }
        for &pl in self.plane.lines_through(x) {
            let own = self.line_owner[pl as usize];
            if own != NONE && !self.pls.incident(p, own as usize) {
                self.prunes.non_incidence += 1;
                return false;
            }
        }
        self.img_p[p] = x as u32;
        self.owner[x] = p as u32;
        let start = self.trail.len();
        let mut ok = true;
        for &l in self.pls.lines_through(p) {
            let l = l as usize;
            if self.placed_on[l] != 1 {
                continue;
            }
            let y = self
                .pls
                .line(l)
                .iter()
                .map(|&q| q as usize)
                .find(|&q| q != p && self.img_p[q] != NONE)
                .expect("one placed point");
            let img = self.plane.join_fast(x, self.img_p[y] as usize);
            if self.line_owner[img] != NONE {
                self.prunes.line_used += 1;
                ok = false;
                break;
            }
            let clash = self.plane.points_on(img).iter().any(|&z| {
                let o = self.owner[z as usize];
                o != NONE && !self.pls.incident(o as usize, l)
            });
            if clash {
                self.prunes.forced_line += 1;
                ok = false;
                break;
            }
            self.img_l[l] = img as u32;
            self.line_owner[img] = l as u32;
            self.trail.push(l as u32);
        }
        if !ok {
            self.pop_lines(start);
            self.owner[x] = NONE;
            self.img_p[p] = NONE;
            return false;
        }
        for &l in self.pls.lines_through(p) {
            self.placed_on[l as usize] += 1;
        }
        self.mark[p] = start as u32;
        self.placed += 1;
        true
    }

    fn pop_lines(&mut self, start: usize) {
        while self.trail.len() > start {
            let l = self.trail.pop().expect("nonempty") as usize;
            let img = self.img_l[l] as usize;
            self.line_owner[img] = NONE;
            self.img_l[l] = NONE;
        }
    }

    fn unplace(&mut self, p: usize) {
        for &l in self.pls.lines_through(p) {
            self.placed_on[l as usize] -= 1;
        }
        self.pop_lines(self.mark[p] as usize);
        let x = self.img_p[p] as usize;
        self.owner[x] = NONE;
        self.img_p[p] = NONE;
        self.placed -= 1;
    }

    /// Every unplaced point on two determined lines must still have a
    /// consistent forced image.
    fn forward_ok(&self) -> bool {
        for q in 0..self.pls.num_points() {
            if self.img_p[q] != NONE {
                continue;
            }
            let mut det = self
                .pls
                .lines_through(q)
                .iter()
                .map(|&l| self.img_l[l as usize])
                .filter(|&x| x != NONE);
            let (Some(a), Some(b)) = (det.next(), det.next()) else {
                continue;
            };
            let x = self.plane.meet_fast(a as usize, b as usize);
            if self.owner[x] != NONE {
                return false;
            }
            if det.any(|c| !self.plane.incident(x, c as usize)) {
                return false;
            }
            let bad = self.plane.lines_through(x).iter().any(|&pl| {
                let own = self.line_owner[pl as usize];
                own != NONE && !self.pls.incident(q, own as usize)
            });
            if bad {
                return false;
            }
        }
        true
    }

    fn leaf(&mut self) {
        let e = Embedding {
            point_map: self.img_p.iter().map(|&x| x as usize).collect(),
            line_map: self.img_l.iter().map(|&x| x as usize).collect(),
        };
        if verify_embedding(self.pls, self.plane, &e).is_ok() {
            self.found.push(e);
        } else {
            self.prunes.leaf += 1;
        }
    }

    fn dfs(&mut self) {
        if self.placed == self.pls.num_points() {
            self.leaf();
            return;
        }
        let p = self.choose();
        let plane = self.plane;
        for x in self.candidate_set(p).iter(plane) {
            if self.stop() {
                return;
            }
            if self.nodes >= self.budget {
                self.budget_hit = true;
                return;
            }
            self.nodes += 1;
            if !self.place(p, x) {
                continue;
            }
            if self.forward_ok() {
                self.dfs();
            } else {
                self.prunes.forward += 1;
            }
            self.unplace(p);
        }
    }
}

/// Slope products for an antipodal plane embedded in a generated plane,
/// in coordinates where the triangle is the fundamental triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeReport {
    pub triangle: [usize; 3],
    pub line: usize,
    /// Products of the slopes of the non-side lines through each vertex.
    pub t: [FieldElement; 3],
    pub product: FieldElement,
    /// Whether the product is `-1`.
    pub holds: bool,
}

/// Computes `T1 T2 T3` for a good triangle and a line of the structure
/// avoiding the triangle and its antipodes. Defaults: the first good
/// triangle and the first such line.
pub fn slope_certificate(
    ap: &AntipodalPlane,
    plane: &Plane,
    e: &Embedding,
    triangle: Option<[usize; 3]>,
    line: Option<usize>,
) -> Result<SlopeReport, SearchError> {
    let field = plane.field().ok_or(SearchError::NotGenerated)?;
    let pls = ap.pls();
    verify_embedding(pls, plane, e).map_err(SearchError::InvalidEmbedding)?;
    let tri = match triangle {
        Some(t) => t,
        None => good_triangles(ap)
            .next()
            .ok_or_else(|| SearchError::Precondition("no good triangle exists".into()))?,
    };
    if !is_good_triangle(ap, tri) {
        return Err(SearchError::Precondition(alloc::format!(
            "{tri:?} is not a good triangle"
        )));
    }
    let k: Vec<usize> = tri
        .iter()
        .flat_map(|&a| [a, ap.perp_point(a)])
        .collect();
    let avoids = |l: usize| pls.line(l).iter().all(|&x| !k.contains(&(x as usize)));
    let l = match line {
        Some(l) if l < pls.num_lines() => l,
        Some(l) => return Err(SearchError::Precondition(alloc::format!("no line {l}"))),
        None => (0..pls.num_lines())
            .find(|&l| avoids(l))
            .ok_or_else(|| SearchError::Precondition("no line avoids the triangle and its antipodes".into()))?,
    };
    if !avoids(l) {
        return Err(SearchError::Precondition(alloc::format!(
            "line {l} meets a vertex or an antipode of the triangle"
        )));
    }
    let cols = tri.map(|a| {
        plane
            .point_coords(e.point_map[a])
            .expect("generated plane")
            .coords()
    });
    let to_frame = Collineation::from_columns(field, cols)
        .map_err(|_| SearchError::Precondition("triangle images are collinear".into()))?
        .inverse(field);
    let mut t = [field.one(); 3];
    for (i, (&a, v)) in tri.iter().zip(Vertex::ALL).enumerate() {
        let sides: Vec<usize> = tri
            .iter()
            .filter(|&&b| b != a)
            .map(|&b| pls.line_of(a, b).expect("good triangle"))
            .collect();
        for &m in pls.lines_through(a) {
            let m = m as usize;
            if sides.contains(&m) {
                continue;
            }
            let img = to_frame
                .apply_line(plane, e.line_map[m])
                .map_err(|_| SearchError::NotGenerated)?;
            let s = slope(plane, v, img).map_err(|err| {
                SearchError::Precondition(alloc::format!("slope of line {m} at vertex {a}: {err}"))
            })?;
            t[i] = field.mul(t[i], s);
        }
    }
    let product = field.mul(t[0], field.mul(t[1], t[2]));
    Ok(SlopeReport {
        triangle: tri,
        line: l,
        t,
        product,
        holds: product == field.neg(field.one()),
    })
}

/// Certificates for every good triangle and every admissible line.
pub fn all_slope_certificates(
    ap: &AntipodalPlane,
    plane: &Plane,
    e: &Embedding,
) -> Result<Vec<SlopeReport>, SearchError> {
    let mut out = Vec::new();
    for tri in good_triangles(ap) {
        let k: Vec<usize> = tri.iter().flat_map(|&a| [a, ap.perp_point(a)]).collect();
        for l in 0..ap.pls().num_lines() {
            if ap.pls().line(l).iter().all(|&x| !k.contains(&(x as usize))) {
                out.push(slope_certificate(ap, plane, e, Some(tri), Some(l))?);
            }
        }
    }
    Ok(out)
}
