//! Projective planes: PG(2,q) from a field, ingestion from incidence rows,
//! axiom validation, subplanes, and slopes relative to the fundamental
//! triangle.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::bits::BitSet;
use crate::field::{Field, FieldElement};

/// Ingested planes are validated only up to this order.
pub const MAX_INGEST_ORDER: usize = 49;
/// Generated planes keep dense join/meet tables, which bounds the order.
pub const MAX_GENERATED_ORDER: usize = 64;

const NONE16: u16 = u16::MAX;

/// The projective-plane axiom a structure failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// A line does not have `n + 1` points.
    LineSize,
    /// A point is not on `n + 1` lines.
    PointDegree,
    /// Two distinct points lie on more than one common line.
    UniqueJoin,
    /// Two distinct lines do not meet in exactly one point.
    UniqueMeet,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::LineSize => "every line has n+1 points",
            Axiom::PointDegree => "every point is on n+1 lines",
            Axiom::UniqueJoin => "two points lie on exactly one line",
            Axiom::UniqueMeet => "two lines meet in exactly one point",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("axiom violated ({axiom}); witness {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },
    #[error("plane order {0} is outside the supported range")]
    UnsupportedOrder(usize),
    #[error("the two points coincide")]
    SamePoint,
    #[error("the two lines coincide")]
    SameLine,
    #[error("index {0} is out of range")]
    OutOfRange(usize),
    #[error("the plane carries no coordinates")]
    NotGenerated,
    #[error("the plane is not defined over a quadratic extension GF(p^2)")]
    NotSquareOrder,
    #[error("the line does not pass through the vertex")]
    NotThroughVertex,
    #[error("the line is a side of the fundamental triangle")]
    TriangleSide,
    #[error("the line passes through a vertex of the fundamental triangle")]
    LineThroughVertex,
    #[error("the point lies on a side of the fundamental triangle")]
    PointOnSide,
    #[error("the point set is not a subplane: {0}")]
    NotASubplane(String),
    #[error("subplane order must be at least 2")]
    BadSubplaneOrder,
    #[error("the matrix is singular")]
    Singular,
}

/// A point of PG(2,q) with first nonzero coordinate 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomogeneousPoint(pub [FieldElement; 3]);

impl HomogeneousPoint {
    /// Normalizes a nonzero triple; `None` for the zero vector.
    pub fn new(field: &Field, raw: [FieldElement; 3]) -> Option<HomogeneousPoint> {
        let lead = raw.iter().copied().find(|c| !c.is_zero())?;
        let inv = field.inv(lead).ok()?;
        Some(HomogeneousPoint(raw.map(|c| field.mul(c, inv))))
    }

    pub fn coords(&self) -> [FieldElement; 3] {
        self.0
    }
}

/// Where a plane came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneSource {
    Generated(Field),
    Ingested(String),
}

#[derive(Debug, Clone)]
struct Coordinates {
    field: Field,
    points: Vec<HomogeneousPoint>,
    lines: Vec<HomogeneousPoint>,
    // encoded triple -> index
    point_index: Vec<u32>,
    line_index: Vec<u32>,
}

impl Coordinates {
    fn encode(&self, t: &HomogeneousPoint) -> usize {
        let q = self.field.order() as usize;
        let [a, b, c] = t.0;
        (a.index() as usize * q + b.index() as usize) * q + c.index() as usize
    }
}

/// A projective plane of order `n`: `n^2 + n + 1` points and lines, stored
/// as sorted point lists per line plus dense join and meet tables.
#[derive(Debug, Clone)]
pub struct Plane {
    order: usize,
    lines: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
    join: Vec<u16>,
    meet: Vec<u16>,
    incidence: Vec<BitSet>,
    source: PlaneSource,
    coords: Option<Coordinates>,
}

impl PartialEq for Plane {
    /// Equality as incidence relations with the same indexing.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.lines == other.lines
    }
}

impl Plane {
    /// The Desarguesian plane PG(2,q) over `field`, with points and lines
    /// indexed lexicographically by normalized coordinates.
    pub fn pg2(field: &Field) -> Result<Plane, GeometryError> {
        let q = field.order() as usize;
        if q > MAX_GENERATED_ORDER {
            return Err(GeometryError::UnsupportedOrder(q));
        }
        let triples = normalized_triples(field);
        let mut coords = Coordinates {
            field: field.clone(),
            points: triples.clone(),
            lines: triples,
            point_index: vec![u32::MAX; q * q * q],
            line_index: vec![u32::MAX; q * q * q],
        };
        for (i, t) in coords.points.iter().enumerate() {
            let k = coords.encode(t);
            coords.point_index[k] = i as u32;
            coords.line_index[k] = i as u32;
        }
        let lines: Vec<Vec<u32>> = coords
            .lines
            .iter()
            .map(|l| {
                coords
                    .points
                    .iter()
                    .enumerate()
                    .filter(|(_, pt)| dot(field, &l.0, &pt.0).is_zero())
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect();
        let mut plane = Plane::build(q, lines, PlaneSource::Generated(field.clone()))?;
        plane.coords = Some(coords);
        Ok(plane)
    }

    /// Builds and validates a plane of order `n` from one row of point
    /// indices per line. Rows are sorted; line order is kept.
    pub fn from_incidence(
        rows: &[Vec<usize>],
        n: usize,
        id: impl Into<String>,
    ) -> Result<Plane, GeometryError> {
        if n < 2 {
            return Err(GeometryError::BadShape(alloc::format!(
                "order {n} is below 2"
            )));
        }
        if n > MAX_INGEST_ORDER {
            return Err(GeometryError::UnsupportedOrder(n));
        }
        let total = n * n + n + 1;
        if rows.len() != total {
            return Err(GeometryError::BadShape(alloc::format!(
                "expected {total} lines, got {}",
                rows.len()
            )));
        }
        let mut lines = Vec::with_capacity(total);
        for (l, row) in rows.iter().enumerate() {
            let mut r: Vec<u32> = Vec::with_capacity(row.len());
            for &pt in row {
                if pt >= total {
                    return Err(GeometryError::BadShape(alloc::format!(
                        "line {l} mentions point {pt}, but there are only {total} points"
                    )));
                }
                r.push(pt as u32);
            }
            r.sort_unstable();
            if r.windows(2).any(|w| w[0] == w[1]) {
                return Err(GeometryError::BadShape(alloc::format!(
                    "line {l} repeats a point"
                )));
            }
            lines.push(r);
        }
        Plane::build(n, lines, PlaneSource::Ingested(id.into()))
    }

    fn build(n: usize, lines: Vec<Vec<u32>>, source: PlaneSource) -> Result<Plane, GeometryError> {
        let total = n * n + n + 1;
        for (l, row) in lines.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(GeometryError::AxiomViolation {
                    axiom: Axiom::LineSize,
                    witness: vec![l],
                });
            }
        }
        let mut join = vec![NONE16; total * total];
        for (l, row) in lines.iter().enumerate() {
            for (i, &a) in row.iter().enumerate() {
                for &b in &row[i + 1..] {
                    let (a, b) = (a as usize, b as usize);
                    let prev = join[a * total + b];
                    if prev != NONE16 {
                        return Err(GeometryError::AxiomViolation {
                            axiom: Axiom::UniqueJoin,
                            witness: vec![a, b, prev as usize, l],
                        });
                    }
                    join[a * total + b] = l as u16;
                    join[b * total + a] = l as u16;
                }
            }
        }
        let mut point_lines = vec![Vec::with_capacity(n + 1); total];
        for (l, row) in lines.iter().enumerate() {
            for &pt in row {
                point_lines[pt as usize].push(l as u32);
            }
        }
        for (pt, ls) in point_lines.iter().enumerate() {
            if ls.len() != n + 1 {
                return Err(GeometryError::AxiomViolation {
                    axiom: Axiom::PointDegree,
                    witness: vec![pt],
                });
            }
        }
        let mut meet = vec![NONE16; total * total];
        for (pt, ls) in point_lines.iter().enumerate() {
            for (i, &a) in ls.iter().enumerate() {
                for &b in &ls[i + 1..] {
                    let (a, b) = (a as usize, b as usize);
                    if meet[a * total + b] != NONE16 {
                        return Err(GeometryError::AxiomViolation {
                            axiom: Axiom::UniqueMeet,
                            witness: vec![a, b],
                        });
                    }
                    meet[a * total + b] = pt as u16;
                    meet[b * total + a] = pt as u16;
                }
            }
        }
        // With the counts above these are implied, but a direct check is cheap.
        for a in 0..total {
            for b in a + 1..total {
                if join[a * total + b] == NONE16 {
                    return Err(GeometryError::AxiomViolation {
                        axiom: Axiom::UniqueJoin,
                        witness: vec![a, b],
                    });
                }
                if meet[a * total + b] == NONE16 {
                    return Err(GeometryError::AxiomViolation {
                        axiom: Axiom::UniqueMeet,
                        witness: vec![a, b],
                    });
                }
            }
        }
        let incidence = lines
            .iter()
            .map(|row| BitSet::from_indices(total, row.iter().map(|&x| x as usize)))
            .collect();
        Ok(Plane {
            order: n,
            lines,
            point_lines,
            join,
            meet,
            incidence,
            source,
            coords: None,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn num_points(&self) -> usize {
        self.lines.len()
    }

    #[inline]
    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn source(&self) -> &PlaneSource {
        &self.source
    }

    /// Points of a line, ascending.
    #[inline]
    pub fn points_on(&self, line: usize) -> &[u32] {
        &self.lines[line]
    }

    /// Lines through a point, ascending.
    #[inline]
    pub fn lines_through(&self, point: usize) -> &[u32] {
        &self.point_lines[point]
    }

    #[inline]
    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.incidence[line].contains(point)
    }

    /// Incidence vector of a line as a bitset over points.
    pub fn line_bits(&self, line: usize) -> &BitSet {
        &self.incidence[line]
    }

    /// The rows (one sorted point list per line) in line order.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.lines
            .iter()
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// Unique line through two distinct points.
    pub fn line_through(&self, a: usize, b: usize) -> Result<usize, GeometryError> {
        let n = self.num_points();
        if a >= n || b >= n {
            return Err(GeometryError::OutOfRange(a.max(b)));
        }
        if a == b {
            return Err(GeometryError::SamePoint);
        }
        Ok(self.join[a * n + b] as usize)
    }

    /// Unique common point of two distinct lines.
    pub fn meet(&self, l: usize, m: usize) -> Result<usize, GeometryError> {
        let n = self.num_lines();
        if l >= n || m >= n {
            return Err(GeometryError::OutOfRange(l.max(m)));
        }
        if l == m {
            return Err(GeometryError::SameLine);
        }
        Ok(self.meet[l * n + m] as usize)
    }

    /// Unchecked join for hot loops; `a != b`, both in range.
    #[inline]
    pub(crate) fn join_fast(&self, a: usize, b: usize) -> usize {
        self.join[a * self.num_points() + b] as usize
    }

    /// Unchecked meet for hot loops; `l != m`, both in range.
    #[inline]
    pub(crate) fn meet_fast(&self, l: usize, m: usize) -> usize {
        self.meet[l * self.num_lines() + m] as usize
    }

    pub fn is_generated(&self) -> bool {
        self.coords.is_some()
    }

    /// Coordinate field of a generated plane.
    pub fn field(&self) -> Option<&Field> {
        self.coords.as_ref().map(|c| &c.field)
    }

    pub fn point_coords(&self, point: usize) -> Option<HomogeneousPoint> {
        self.coords.as_ref().and_then(|c| c.points.get(point).copied())
    }

    /// Dual coordinates `[a, b, c]` of the line `aX1 + bX2 + cX3 = 0`.
    pub fn line_coords(&self, line: usize) -> Option<HomogeneousPoint> {
        self.coords.as_ref().and_then(|c| c.lines.get(line).copied())
    }

    /// Index of the point with the given (not necessarily normalized)
    /// coordinates.
    pub fn point_index(&self, raw: [FieldElement; 3]) -> Option<usize> {
        let c = self.coords.as_ref()?;
        let t = HomogeneousPoint::new(&c.field, raw)?;
        let k = c.point_index[c.encode(&t)];
        (k != u32::MAX).then_some(k as usize)
    }

    /// Index of the line with the given dual coordinates.
    pub fn line_index(&self, raw: [FieldElement; 3]) -> Option<usize> {
        let c = self.coords.as_ref()?;
        let t = HomogeneousPoint::new(&c.field, raw)?;
        let k = c.line_index[c.encode(&t)];
        (k != u32::MAX).then_some(k as usize)
    }

    /// Point index for small integer coordinates (interpreted in the prime
    /// subfield), a convenience for tests and fixed configurations.
    pub fn point_from_ints(&self, xs: [i64; 3]) -> Option<usize> {
        let f = self.field()?;
        self.point_index(xs.map(|x| f.from_int(x)))
    }
}

fn dot(field: &Field, a: &[FieldElement; 3], b: &[FieldElement; 3]) -> FieldElement {
    let mut acc = field.mul(a[0], b[0]);
    acc = field.add(acc, field.mul(a[1], b[1]));
    field.add(acc, field.mul(a[2], b[2]))
}

fn normalized_triples(field: &Field) -> Vec<HomogeneousPoint> {
    let zero = field.zero();
    let one = field.one();
    let mut out = Vec::new();
    out.push(HomogeneousPoint([zero, zero, one]));
    for z in field.elements() {
        out.push(HomogeneousPoint([zero, one, z]));
    }
    for y in field.elements() {
        for z in field.elements() {
            out.push(HomogeneousPoint([one, y, z]));
        }
    }
    out
}

/// A subplane: its points, the ambient lines meeting it in `order + 1`
/// points, and its order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubplaneResult {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
    pub order: usize,
}

impl SubplaneResult {
    pub fn contains(&self, point: usize) -> bool {
        self.points.binary_search(&point).is_ok()
    }

    pub fn is_disjoint(&self, other: &SubplaneResult) -> bool {
        self.points.iter().all(|p| !other.contains(*p))
    }
}

/// Checks that `points` span a subplane and returns it.
pub fn subplane_from_points(
    plane: &Plane,
    points: &[usize],
) -> Result<SubplaneResult, GeometryError> {
    let mut pts: Vec<usize> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if let Some(&bad) = pts.iter().find(|&&p| p >= plane.num_points()) {
        return Err(GeometryError::OutOfRange(bad));
    }
    let k = pts.len();
    let m = (1..=plane.order())
        .find(|m| m * m + m + 1 >= k)
        .filter(|m| m * m + m + 1 == k && *m >= 2)
        .ok_or_else(|| {
            GeometryError::NotASubplane(alloc::format!("{k} points is not m^2+m+1 for m >= 2"))
        })?;
    let mut counts = vec![0usize; plane.num_lines()];
    let mut lines = Vec::new();
    for &p in &pts {
        for &l in plane.lines_through(p) {
            let c = &mut counts[l as usize];
            *c += 1;
            if *c == 2 {
                lines.push(l as usize);
            }
        }
    }
    lines.sort_unstable();
    if let Some(&bad) = lines.iter().find(|&&l| counts[l] != m + 1) {
        return Err(GeometryError::NotASubplane(alloc::format!(
            "line {bad} meets the set in {} points",
            counts[bad]
        )));
    }
    if lines.len() != k {
        return Err(GeometryError::NotASubplane(alloc::format!(
            "{} secant lines instead of {k}",
            lines.len()
        )));
    }
    let set = BitSet::from_indices(plane.num_points(), pts.iter().copied());
    for (i, &a) in lines.iter().enumerate() {
        for &b in &lines[i + 1..] {
            let x = plane.meet_fast(a, b);
            if !set.contains(x) {
                return Err(GeometryError::NotASubplane(alloc::format!(
                    "lines {a} and {b} meet outside the set"
                )));
            }
        }
    }
    Ok(SubplaneResult {
        points: pts,
        lines,
        order: m,
    })
}

/// Closes `seed` under joins and meets. Returns `None` as soon as the point
/// or line count exceeds `max`.
pub fn closure(plane: &Plane, seed: &[usize], max: usize) -> Option<Vec<usize>> {
    let mut in_pts = BitSet::new(plane.num_points());
    let mut in_lines = BitSet::new(plane.num_lines());
    let mut pts: Vec<usize> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    for &s in seed {
        if in_pts.insert(s) {
            pts.push(s);
        }
    }
    if pts.len() > max {
        return None;
    }
    // Points [0, pdone) have been joined with every earlier point; likewise
    // for lines.
    let mut pdone = 0;
    let mut ldone = 0;
    loop {
        let mut progress = false;
        while pdone < pts.len() {
            let a = pts[pdone];
            for &b in &pts[..pdone] {
                let l = plane.join_fast(a, b);
                if in_lines.insert(l) {
                    lines.push(l);
                    if lines.len() > max {
                        return None;
                    }
                }
            }
            pdone += 1;
            progress = true;
        }
        while ldone < lines.len() {
            let a = lines[ldone];
            for &b in &lines[..ldone] {
                let x = plane.meet_fast(a, b);
                if in_pts.insert(x) {
                    pts.push(x);
                    if pts.len() > max {
                        return None;
                    }
                }
            }
            ldone += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    pts.sort_unstable();
    Some(pts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubplaneSearchStatus {
    /// Every quadrangle was examined.
    Exhausted,
    /// Stopped after `limit` subplanes.
    LimitReached,
    /// Stopped after examining `budget` quadrangles.
    BudgetExceeded,
}

#[derive(Debug, Clone)]
pub struct SubplaneSearch {
    pub subplanes: Vec<SubplaneResult>,
    pub status: SubplaneSearchStatus,
    pub quadrangles: u64,
}

/// Finds up to `limit` distinct subplanes of order `m` by closing every
/// quadrangle `a < b < c < d` under joins and meets. Results are sorted by
/// point set.
pub fn subplane_search(
    plane: &Plane,
    m: usize,
    limit: usize,
    budget: u64,
) -> Result<SubplaneSearch, GeometryError> {
    if m < 2 {
        return Err(GeometryError::BadSubplaneOrder);
    }
    let target = m * m + m + 1;
    let n = plane.num_points();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut quadrangles = 0u64;
    let mut status = SubplaneSearchStatus::Exhausted;
    let mut out = Vec::new();
    'outer: for a in 0..n {
        for b in a + 1..n {
            let ab = plane.join_fast(a, b);
            for c in b + 1..n {
                if plane.incident(c, ab) {
                    continue;
                }
                let ac = plane.join_fast(a, c);
                let bc = plane.join_fast(b, c);
                for d in c + 1..n {
                    if plane.incident(d, ab) || plane.incident(d, ac) || plane.incident(d, bc) {
                        continue;
                    }
                    if quadrangles >= budget {
                        status = SubplaneSearchStatus::BudgetExceeded;
                        break 'outer;
                    }
                    quadrangles += 1;
                    let Some(pts) = closure(plane, &[a, b, c, d], target) else {
                        continue;
                    };
                    if pts.len() != target || found.contains(&pts) {
                        continue;
                    }
                    if let Ok(sub) = subplane_from_points(plane, &pts) {
                        found.insert(pts);
                        out.push(sub);
                        if out.len() >= limit {
                            status = SubplaneSearchStatus::LimitReached;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(SubplaneSearch {
        subplanes: out,
        status,
        quadrangles,
    })
}

/// The Baer subplane of PG(2,p^2) formed by the points with coordinates in
/// the prime field.
pub fn baer_subfield_subplane(plane: &Plane) -> Result<SubplaneResult, GeometryError> {
    let field = plane.field().ok_or(GeometryError::NotGenerated)?;
    if field.degree() != 2 {
        return Err(GeometryError::NotSquareOrder);
    }
    let pts: Vec<usize> = (0..plane.num_points())
        .filter(|&i| {
            let c = plane.point_coords(i).expect("generated plane");
            c.0.iter().all(|&x| field.in_prime_subfield(x))
        })
        .collect();
    subplane_from_points(plane, &pts)
}

/// A vertex of the fundamental triangle `A1 = (1,0,0)`, `A2 = (0,1,0)`,
/// `A3 = (0,0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vertex {
    A1,
    A2,
    A3,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A1, Vertex::A2, Vertex::A3];

    pub fn coords(self, field: &Field) -> [FieldElement; 3] {
        let (z, o) = (field.zero(), field.one());
        match self {
            Vertex::A1 => [o, z, z],
            Vertex::A2 => [z, o, z],
            Vertex::A3 => [z, z, o],
        }
    }

    /// Dual coordinates of the opposite side (`A2A3` is `X1 = 0`, ...).
    fn opposite_side(self, field: &Field) -> [FieldElement; 3] {
        self.coords(field)
    }
}

/// Slope of a line through a vertex: `t1` in `X3 = t1 X2` at `A1`, `t2` in
/// `X1 = t2 X3` at `A2`, `t3` in `X2 = t3 X1` at `A3`. The triangle sides
/// have no slope.
pub fn slope(plane: &Plane, vertex: Vertex, line: usize) -> Result<FieldElement, GeometryError> {
    let field = plane.field().ok_or(GeometryError::NotGenerated)?;
    let [a, b, c] = plane
        .line_coords(line)
        .ok_or(GeometryError::OutOfRange(line))?
        .0;
    let (on, u, v) = match vertex {
        // t1 = -b/c
        Vertex::A1 => (a, b, c),
        // t2 = -c/a
        Vertex::A2 => (b, c, a),
        // t3 = -a/b
        Vertex::A3 => (c, a, b),
    };
    if !on.is_zero() {
        return Err(GeometryError::NotThroughVertex);
    }
    if u.is_zero() || v.is_zero() {
        return Err(GeometryError::TriangleSide);
    }
    Ok(field.neg(field.div(u, v).expect("nonzero")))
}

fn vertex_point(plane: &Plane, v: Vertex) -> Result<usize, GeometryError> {
    let field = plane.field().ok_or(GeometryError::NotGenerated)?;
    Ok(plane.point_index(v.coords(field)).expect("vertex exists"))
}

fn side_line(plane: &Plane, opposite: Vertex) -> Result<usize, GeometryError> {
    let field = plane.field().ok_or(GeometryError::NotGenerated)?;
    Ok(plane
        .line_index(opposite.opposite_side(field))
        .expect("side exists"))
}

/// `(A1B1)(A2B2)(A3B3)` where `Bi` is the meet of `line` with the side
/// opposite `Ai`. `line` must avoid the three vertices.
pub fn menelaos_product(plane: &Plane, line: usize) -> Result<FieldElement, GeometryError> {
    let field = plane.field().ok_or(GeometryError::NotGenerated)?;
    let mut acc = field.one();
    for v in Vertex::ALL {
        if plane.incident(vertex_point(plane, v)?, line) {
            return Err(GeometryError::LineThroughVertex);
        }
    }
    for v in Vertex::ALL {
        let b = plane.meet(line, side_line(plane, v)?)?;
        let l = plane.line_through(vertex_point(plane, v)?, b)?;
        acc = field.mul(acc, slope(plane, v, l)?);
    }
    Ok(acc)
}

/// `(A1X)(A2X)(A3X)` for a point off the triangle sides.
pub fn ceva_product(plane: &Plane, point: usize) -> Result<FieldElement, GeometryError> {
    let field = plane.field().ok_or(GeometryError::NotGenerated)?;
    for v in Vertex::ALL {
        if plane.incident(point, side_line(plane, v)?) {
            return Err(GeometryError::PointOnSide);
        }
    }
    let mut acc = field.one();
    for v in Vertex::ALL {
        let l = plane.line_through(vertex_point(plane, v)?, point)?;
        acc = field.mul(acc, slope(plane, v, l)?);
    }
    Ok(acc)
}

/// A projectivity `x -> M x` of a generated plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collineation {
    m: [[FieldElement; 3]; 3],
}

impl Collineation {
    pub fn new(field: &Field, m: [[FieldElement; 3]; 3]) -> Result<Collineation, GeometryError> {
        if det(field, &m).is_zero() {
            return Err(GeometryError::Singular);
        }
        Ok(Collineation { m })
    }

    /// The projectivity sending `e1, e2, e3` to the given points (columns).
    pub fn from_columns(
        field: &Field,
        cols: [[FieldElement; 3]; 3],
    ) -> Result<Collineation, GeometryError> {
        let mut m = [[field.zero(); 3]; 3];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = col[i];
            }
        }
        Collineation::new(field, m)
    }

    pub fn inverse(&self, field: &Field) -> Collineation {
        let m = &self.m;
        let d = field.inv(det(field, m)).expect("nonsingular");
        let mut out = [[field.zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                // adjugate: cofactor of (j, i)
                let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                let cof = field.sub(
                    field.mul(m[r0][c0], m[r1][c1]),
                    field.mul(m[r0][c1], m[r1][c0]),
                );
                *slot = field.mul(cof, d);
            }
        }
        Collineation { m: out }
    }

    pub fn apply_coords(&self, field: &Field, x: [FieldElement; 3]) -> [FieldElement; 3] {
        let mut out = [field.zero(); 3];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = dot(field, &self.m[i], &x);
        }
        out
    }

    pub fn apply_point(&self, plane: &Plane, point: usize) -> Result<usize, GeometryError> {
        let field = plane.field().ok_or(GeometryError::NotGenerated)?;
        let c = plane
            .point_coords(point)
            .ok_or(GeometryError::OutOfRange(point))?;
        plane
            .point_index(self.apply_coords(field, c.0))
            .ok_or(GeometryError::Singular)
    }

    pub fn apply_line(&self, plane: &Plane, line: usize) -> Result<usize, GeometryError> {
        let pts = plane.points_on(line);
        let a = self.apply_point(plane, pts[0] as usize)?;
        let b = self.apply_point(plane, pts[1] as usize)?;
        plane.line_through(a, b)
    }
}

fn det(field: &Field, m: &[[FieldElement; 3]; 3]) -> FieldElement {
    let term = |a: usize, b: usize, c: usize| field.mul(m[0][a], field.mul(m[1][b], m[2][c]));
    let pos = field.add(field.add(term(0, 1, 2), term(1, 2, 0)), term(2, 0, 1));
    let neg = field.add(field.add(term(0, 2, 1), term(1, 0, 2)), term(2, 1, 0));
    field.sub(pos, neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(p: u32, h: u32) -> Plane {
        Plane::pg2(&Field::new(p, h, None).unwrap()).unwrap()
    }

    #[test]
    fn fano_and_counts() {
        let fano = pg(2, 1);
        assert_eq!(fano.num_points(), 7);
        assert_eq!(fano.num_lines(), 7);
        assert!((0..7).all(|l| fano.points_on(l).len() == 3));
        assert_eq!(pg(3, 2).num_points(), 91);
        assert_eq!(pg(2, 2).num_points(), 21);
    }

    #[test]
    fn indexing_is_lexicographic() {
        let plane = pg(3, 1);
        let f = plane.field().unwrap().clone();
        let coords: Vec<_> = (0..plane.num_points())
            .map(|i| plane.point_coords(i).unwrap())
            .collect();
        assert!(coords.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(coords[0].0, [f.zero(), f.zero(), f.one()]);
        for (i, c) in coords.iter().enumerate() {
            assert_eq!(plane.point_index(c.0), Some(i));
        }
    }

    #[test]
    fn join_and_meet() {
        let fano = pg(2, 1);
        for a in 0..7 {
            for b in 0..7 {
                if a == b {
                    assert_eq!(fano.line_through(a, b), Err(GeometryError::SamePoint));
                    continue;
                }
                let l = fano.line_through(a, b).unwrap();
                assert_eq!(Ok(l), fano.line_through(b, a));
                assert!(fano.incident(a, l) && fano.incident(b, l));
            }
        }
        let p4 = pg(2, 2);
        for l in 0..21 {
            for m in 0..21 {
                if l == m {
                    assert_eq!(p4.meet(l, m), Err(GeometryError::SameLine));
                    continue;
                }
                let x = p4.meet(l, m).unwrap();
                assert!(p4.incident(x, l) && p4.incident(x, m));
            }
        }
        let p9 = pg(3, 2);
        let (p, q) = (0, 50);
        let l = p9.line_through(p, q).unwrap();
        let other = *p9.lines_through(p).iter().find(|&&m| m as usize != l).unwrap();
        assert_eq!(p9.meet(l, other as usize), Ok(p));
    }

    #[test]
    fn ingestion_round_trip_and_failures() {
        let p3 = pg(3, 1);
        let again = Plane::from_incidence(&p3.rows(), 3, "rt").unwrap();
        assert_eq!(again, p3);

        let fano = pg(2, 1);
        let mut rows = fano.rows();
        rows[1] = rows[0].clone();
        match Plane::from_incidence(&rows, 2, "bad") {
            Err(GeometryError::AxiomViolation { axiom, .. }) => assert_eq!(axiom, Axiom::UniqueJoin),
            other => panic!("unexpected {other:?}"),
        }
        let short = &fano.rows()[..6];
        assert!(matches!(
            Plane::from_incidence(short, 2, "short"),
            Err(GeometryError::BadShape(_))
        ));
        let mut rows = fano.rows();
        rows[0].pop();
        assert!(matches!(
            Plane::from_incidence(&rows, 2, "x"),
            Err(GeometryError::AxiomViolation { axiom: Axiom::LineSize, .. })
        ));
        assert!(matches!(
            Plane::from_incidence(&fano.rows(), 50, "x"),
            Err(GeometryError::UnsupportedOrder(50))
        ));
    }

    #[test]
    fn baer_subplanes() {
        let b9 = baer_subfield_subplane(&pg(3, 2)).unwrap();
        assert_eq!((b9.points.len(), b9.order), (13, 3));
        let b4 = baer_subfield_subplane(&pg(2, 2)).unwrap();
        assert_eq!((b4.points.len(), b4.order), (7, 2));
        assert_eq!(
            baer_subfield_subplane(&pg(2, 3)),
            Err(GeometryError::NotSquareOrder)
        );
        let ingested = Plane::from_incidence(&pg(2, 2).rows(), 4, "x").unwrap();
        assert_eq!(
            baer_subfield_subplane(&ingested),
            Err(GeometryError::NotGenerated)
        );
    }

    #[test]
    fn subplane_search_in_pg24() {
        let plane = pg(2, 2);
        let out = subplane_search(&plane, 2, 1000, u64::MAX).unwrap();
        assert_eq!(out.status, SubplaneSearchStatus::Exhausted);
        // 360 Fano subplanes in PG(2,4)
        assert_eq!(out.subplanes.len(), 360);
        assert!(out.subplanes.iter().all(|s| s.order == 2));
        let baer = baer_subfield_subplane(&plane).unwrap();
        assert!(out.subplanes.contains(&baer));
    }

    #[test]
    fn slopes() {
        let plane = pg(7, 1);
        let f = plane.field().unwrap().clone();
        // X3 = X2 through A1
        let l = plane.line_index([f.zero(), f.one(), f.from_int(-1)]).unwrap();
        assert_eq!(slope(&plane, Vertex::A1, l), Ok(f.one()));
        let a2 = plane.point_from_ints([0, 1, 0]).unwrap();
        let x = plane.point_from_ints([1, 0, 3]).unwrap();
        let l = plane.line_through(a2, x).unwrap();
        assert_eq!(slope(&plane, Vertex::A2, l), Ok(f.from_int(5)));
        assert_eq!(
            slope(&plane, Vertex::A1, l),
            Err(GeometryError::NotThroughVertex)
        );
        let side = plane.line_index([f.zero(), f.zero(), f.one()]).unwrap();
        assert_eq!(
            slope(&plane, Vertex::A1, side),
            Err(GeometryError::TriangleSide)
        );
    }

    #[test]
    fn unit_point_ceva() {
        let plane = pg(5, 1);
        let f = plane.field().unwrap().clone();
        let unit = plane.point_from_ints([1, 1, 1]).unwrap();
        assert_eq!(ceva_product(&plane, unit), Ok(f.one()));
        let a1 = plane.point_from_ints([1, 0, 0]).unwrap();
        assert_eq!(ceva_product(&plane, a1), Err(GeometryError::PointOnSide));
    }

    #[test]
    fn collineation_inverse() {
        let plane = pg(5, 1);
        let f = plane.field().unwrap().clone();
        let e = |x: i64| f.from_int(x);
        let c = Collineation::new(&f, [[e(1), e(2), e(0)], [e(0), e(1), e(3)], [e(2), e(0), e(1)]])
            .unwrap();
        let inv = c.inverse(&f);
        for pt in 0..plane.num_points() {
            let img = c.apply_point(&plane, pt).unwrap();
            assert_eq!(inv.apply_point(&plane, img).unwrap(), pt);
        }
        for l in 0..plane.num_lines() {
            let img = c.apply_line(&plane, l).unwrap();
            for &pt in plane.points_on(l) {
                assert!(plane.incident(c.apply_point(&plane, pt as usize).unwrap(), img));
            }
        }
    }
}
