//! Partial linear spaces and antipodal planes: validation, perp maps, the
//! explicit models of orders 2 and 3, good triangles, and isomorphism.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::geometry::{baer_subfield_subplane, HomogeneousPoint, Plane, SubplaneResult};

const NO_LINE: u32 = u32::MAX;

/// The defining property an incidence structure failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntipodalAxiom {
    /// The structure has no lines, so no order can be read off.
    Empty,
    /// `|P| != s^2 + s + 2`.
    PointCount,
    /// `|L| != s^2 + s + 2`.
    LineCount,
    /// A line without `s + 1` points.
    LineSize,
    /// A point not on `s + 1` lines.
    PointDegree,
    /// A point without a unique non-collinear point.
    PointAntipode,
    /// A line without a unique disjoint line.
    LineAntipode,
    /// `P⊥⊥ != P` or `ℓ⊥⊥ != ℓ`.
    Involution,
    /// `P ∈ ℓ` but `P⊥ ∉ ℓ⊥`.
    PerpCollinearity,
}

impl fmt::Display for AntipodalAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AntipodalAxiom::Empty => "structure has no lines",
            AntipodalAxiom::PointCount => "point count is s^2+s+2",
            AntipodalAxiom::LineCount => "line count is s^2+s+2",
            AntipodalAxiom::LineSize => "every line has s+1 points",
            AntipodalAxiom::PointDegree => "every point is on s+1 lines",
            AntipodalAxiom::PointAntipode => "every point has a unique antipode",
            AntipodalAxiom::LineAntipode => "every line has a unique antipodal line",
            AntipodalAxiom::Involution => "perp is an involution",
            AntipodalAxiom::PerpCollinearity => "P on l implies P-perp on l-perp",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntipodalError {
    #[error("not a partial linear space: {0}")]
    NotPartialLinearSpace(String),
    #[error("not an antipodal plane ({axiom}); witness {witness:?}")]
    NotAntipodal {
        axiom: AntipodalAxiom,
        witness: Vec<usize>,
    },
    #[error("no model of order {0}")]
    UnsupportedOrder(usize),
    #[error("the given element is not a root of x^2 - x + 1")]
    NotARoot,
    #[error("good triangles are only guaranteed for order at least 3, got {0}")]
    OrderTooSmall(usize),
    #[error("no good triangle found")]
    NotFound,
    #[error("the plane has no coordinates")]
    NotGenerated,
}

/// Points `0..num_points` and lines as sorted point lists; two points share
/// at most one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLinearSpace {
    num_points: usize,
    lines: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
    // line through a pair, or NO_LINE
    join: Vec<u32>,
}

impl PartialLinearSpace {
    pub fn new(num_points: usize, lines: &[Vec<usize>]) -> Result<PartialLinearSpace, AntipodalError> {
        let bad = |m: String| AntipodalError::NotPartialLinearSpace(m);
        let mut sorted = Vec::with_capacity(lines.len());
        for (l, row) in lines.iter().enumerate() {
            let mut r: Vec<u32> = Vec::with_capacity(row.len());
            for &x in row {
                if x >= num_points {
                    return Err(bad(alloc::format!("line {l} mentions point {x} of {num_points}")));
                }
                r.push(x as u32);
            }
            r.sort_unstable();
            r.dedup();
            if r.len() != row.len() {
                return Err(bad(alloc::format!("line {l} repeats a point")));
            }
            if r.len() < 2 {
                return Err(bad(alloc::format!("line {l} has fewer than two points")));
            }
            sorted.push(r);
        }
        let mut join = vec![NO_LINE; num_points * num_points];
        let mut point_lines = vec![Vec::new(); num_points];
        for (l, row) in sorted.iter().enumerate() {
            for (i, &a) in row.iter().enumerate() {
                point_lines[a as usize].push(l as u32);
                for &b in &row[i + 1..] {
                    let (a, b) = (a as usize, b as usize);
                    if join[a * num_points + b] != NO_LINE {
                        return Err(bad(alloc::format!(
                            "points {a} and {b} lie on lines {} and {l}",
                            join[a * num_points + b]
                        )));
                    }
                    join[a * num_points + b] = l as u32;
                    join[b * num_points + a] = l as u32;
                }
            }
        }
        Ok(PartialLinearSpace {
            num_points,
            lines: sorted,
            point_lines,
            join,
        })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    /// Points of a line, ascending.
    pub fn line(&self, l: usize) -> &[u32] {
        &self.lines[l]
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    /// Lines through a point, ascending.
    pub fn lines_through(&self, p: usize) -> &[u32] {
        &self.point_lines[p]
    }

    /// The line joining two distinct points, if any.
    pub fn line_of(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        let l = self.join[a * self.num_points + b];
        (l != NO_LINE).then_some(l as usize)
    }

    pub fn collinear(&self, a: usize, b: usize) -> bool {
        self.line_of(a, b).is_some()
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.lines[l].binary_search(&(p as u32)).is_ok()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.lines
            .iter()
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }
}

/// A validated antipodal plane with its derived perp maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodalPlane {
    pls: PartialLinearSpace,
    order: usize,
    perp_point: Vec<usize>,
    perp_line: Vec<usize>,
}

impl AntipodalPlane {
    pub fn pls(&self) -> &PartialLinearSpace {
        &self.pls
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn perp_point(&self, p: usize) -> usize {
        self.perp_point[p]
    }

    pub fn perp_line(&self, l: usize) -> usize {
        self.perp_line[l]
    }
}

/// Checks the antipodal-plane axioms and derives `P⊥` and `ℓ⊥`.
pub fn validate_antipodal(pls: &PartialLinearSpace) -> Result<AntipodalPlane, AntipodalError> {
    let fail = |axiom, witness: Vec<usize>| Err(AntipodalError::NotAntipodal { axiom, witness });
    let Some(first) = pls.lines.first() else {
        return fail(AntipodalAxiom::Empty, vec![]);
    };
    let s = first.len() - 1;
    let total = s * s + s + 2;
    if pls.num_points() != total {
        return fail(AntipodalAxiom::PointCount, vec![pls.num_points()]);
    }
    if pls.num_lines() != total {
        return fail(AntipodalAxiom::LineCount, vec![pls.num_lines()]);
    }
    if let Some(l) = (0..total).find(|&l| pls.line(l).len() != s + 1) {
        return fail(AntipodalAxiom::LineSize, vec![l]);
    }
    if let Some(p) = (0..total).find(|&p| pls.lines_through(p).len() != s + 1) {
        return fail(AntipodalAxiom::PointDegree, vec![p]);
    }
    let mut perp_point = Vec::with_capacity(total);
    for p in 0..total {
        let far: Vec<usize> = (0..total).filter(|&x| x != p && !pls.collinear(p, x)).collect();
        if far.len() != 1 {
            let mut w = vec![p];
            w.extend(far);
            return fail(AntipodalAxiom::PointAntipode, w);
        }
        perp_point.push(far[0]);
    }
    let mut perp_line = Vec::with_capacity(total);
    for l in 0..total {
        let far: Vec<usize> = (0..total)
            .filter(|&m| m != l && pls.line(m).iter().all(|&x| !pls.incident(x as usize, l)))
            .collect();
        if far.len() != 1 {
            let mut w = vec![l];
            w.extend(far);
            return fail(AntipodalAxiom::LineAntipode, w);
        }
        perp_line.push(far[0]);
    }
    if let Some(p) = (0..total).find(|&p| perp_point[perp_point[p]] != p) {
        return fail(AntipodalAxiom::Involution, vec![p]);
    }
    if let Some(l) = (0..total).find(|&l| perp_line[perp_line[l]] != l) {
        return fail(AntipodalAxiom::Involution, vec![l]);
    }
    for l in 0..total {
        for &p in pls.line(l) {
            if !pls.incident(perp_point[p as usize], perp_line[l]) {
                return fail(AntipodalAxiom::PerpCollinearity, vec![p as usize, l]);
            }
        }
    }
    Ok(AntipodalPlane {
        pls: pls.clone(),
        order: s,
        perp_point,
        perp_line,
    })
}

/// The circulant models: lines `{i, i+1, i+3}` mod 8 for order 2 and
/// `{i, i+1, i+4, i+6}` mod 14 for order 3.
pub fn cyclic_antipodal(order: usize) -> Result<PartialLinearSpace, AntipodalError> {
    let (n, offsets): (usize, &[usize]) = match order {
        2 => (8, &[0, 1, 3]),
        3 => (14, &[0, 1, 4, 6]),
        _ => return Err(AntipodalError::UnsupportedOrder(order)),
    };
    let lines: Vec<Vec<usize>> = (0..n)
        .map(|i| offsets.iter().map(|d| (i + d) % n).collect())
        .collect();
    PartialLinearSpace::new(n, &lines)
}

/// The structure induced on `points` (in the given order) by the plane lines
/// meeting it in at least `min_size` points. Returns the structure and the
/// plane line behind each of its lines.
pub fn induced_structure(
    plane: &Plane,
    points: &[usize],
    min_size: usize,
) -> Result<(PartialLinearSpace, Vec<usize>), AntipodalError> {
    let mut local = vec![usize::MAX; plane.num_points()];
    for (i, &p) in points.iter().enumerate() {
        local[p] = i;
    }
    let mut lines = Vec::new();
    let mut line_map = Vec::new();
    for l in 0..plane.num_lines() {
        let row: Vec<usize> = plane
            .points_on(l)
            .iter()
            .map(|&x| local[x as usize])
            .filter(|&i| i != usize::MAX)
            .collect();
        if row.len() >= min_size.max(2) {
            lines.push(row);
            line_map.push(l);
        }
    }
    Ok((PartialLinearSpace::new(points.len(), &lines)?, line_map))
}

/// The complement of a Fano subplane in a plane of order 4, with the lines
/// that are not extended subplane lines. Also returns the ambient point and
/// line of each element.
pub fn fano_complement(
    plane: &Plane,
    fano: &SubplaneResult,
) -> Result<(PartialLinearSpace, Vec<usize>, Vec<usize>), AntipodalError> {
    let points: Vec<usize> = (0..plane.num_points()).filter(|&p| !fano.contains(p)).collect();
    let mut local = vec![usize::MAX; plane.num_points()];
    for (i, &p) in points.iter().enumerate() {
        local[p] = i;
    }
    let mut lines = Vec::new();
    let mut line_map = Vec::new();
    for l in 0..plane.num_lines() {
        if fano.lines.binary_search(&l).is_ok() {
            continue;
        }
        let row: Vec<usize> = plane
            .points_on(l)
            .iter()
            .map(|&x| local[x as usize])
            .filter(|&i| i != usize::MAX)
            .collect();
        lines.push(row);
        line_map.push(l);
    }
    Ok((PartialLinearSpace::new(points.len(), &lines)?, points, line_map))
}

/// The order-3 antipodal plane on the complement of the subfield Fano
/// subplane of PG(2,4).
pub fn antipodal_from_pg24() -> PartialLinearSpace {
    let field = Field::new(2, 2, None).expect("GF(4)");
    let plane = Plane::pg2(&field).expect("PG(2,4)");
    let fano = baer_subfield_subplane(&plane).expect("Fano subplane");
    fano_complement(&plane, &fano).expect("partial linear space").0
}

/// The eight Möbius–Kantor points `(1,0,0), (0,1,0), (0,0,1), (1,1,0),
/// (0,1,ω), (1,1,1), (ω,1,1), (1,0,1-ω)` for a root `ω` of `x^2 - x + 1`.
pub fn mobius_kantor_points(
    field: &Field,
    omega: FieldElement,
) -> Result<[HomogeneousPoint; 8], AntipodalError> {
    let (z, o) = (field.zero(), field.one());
    let lhs = field.add(field.sub(field.mul(omega, omega), omega), o);
    if !lhs.is_zero() {
        return Err(AntipodalError::NotARoot);
    }
    let raw = [
        [o, z, z],
        [z, o, z],
        [z, z, o],
        [o, o, z],
        [z, o, omega],
        [o, o, o],
        [omega, o, o],
        [o, z, field.sub(o, omega)],
    ];
    Ok(raw.map(|r| HomogeneousPoint::new(field, r).expect("nonzero")))
}

/// Roots of `x^2 - x + 1` in the field, ascending.
pub fn mobius_kantor_roots(field: &Field) -> Vec<FieldElement> {
    field.solve_monic_quadratic(field.neg(field.one()), field.one())
}

/// The Möbius–Kantor configuration in a generated plane: point indices in
/// the listed order and the structure induced by the lines through three of
/// them.
pub fn mobius_kantor_in(
    plane: &Plane,
    omega: FieldElement,
) -> Result<(PartialLinearSpace, Vec<usize>, Vec<usize>), AntipodalError> {
    let field = plane.field().ok_or(AntipodalError::NotGenerated)?;
    let pts = mobius_kantor_points(field, omega)?;
    let idx: Vec<usize> = pts
        .iter()
        .map(|p| plane.point_index(p.coords()).expect("point exists"))
        .collect();
    let (pls, lines) = induced_structure(plane, &idx, 3)?;
    Ok((pls, idx, lines))
}

/// A triangle whose sides are lines of the structure and whose antipodes lie
/// off all three sides.
pub fn is_good_triangle(ap: &AntipodalPlane, t: [usize; 3]) -> bool {
    let pls = ap.pls();
    let n = pls.num_points();
    let [a, b, c] = t;
    if a >= n || b >= n || c >= n || a == b || b == c || a == c {
        return false;
    }
    let (Some(ab), Some(ac), Some(bc)) = (pls.line_of(a, b), pls.line_of(a, c), pls.line_of(b, c))
    else {
        return false;
    };
    if ab == ac {
        return false;
    }
    t.iter()
        .all(|&v| [ab, ac, bc].iter().all(|&l| !pls.incident(ap.perp_point(v), l)))
}

/// The lexicographically first good triangle. Such a triangle exists for
/// every order `s >= 3`.
pub fn find_good_triangle(ap: &AntipodalPlane) -> Result<[usize; 3], AntipodalError> {
    if ap.order() < 3 {
        return Err(AntipodalError::OrderTooSmall(ap.order()));
    }
    good_triangles(ap).next().ok_or(AntipodalError::NotFound)
}

/// All good triangles `a < b < c`, lexicographically.
pub fn good_triangles(ap: &AntipodalPlane) -> impl Iterator<Item = [usize; 3]> + '_ {
    let n = ap.pls().num_points();
    (0..n).flat_map(move |a| {
        (a + 1..n).flat_map(move |b| {
            (b + 1..n)
                .map(move |c| [a, b, c])
                .filter(move |&t| is_good_triangle(ap, t))
        })
    })
}

/// An isomorphism `a -> b` as (point map, line map), found by backtracking
/// over point images with collinearity pruning.
pub fn find_isomorphism(
    a: &PartialLinearSpace,
    b: &PartialLinearSpace,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if a.num_points() != b.num_points() || a.num_lines() != b.num_lines() {
        return None;
    }
    let mut da: Vec<usize> = (0..a.num_points()).map(|p| a.lines_through(p).len()).collect();
    let mut db: Vec<usize> = (0..b.num_points()).map(|p| b.lines_through(p).len()).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    let n = a.num_points();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !iso_extend(a, b, 0, &mut map, &mut used) {
        return None;
    }
    let mut line_map = Vec::with_capacity(a.num_lines());
    for row in a.lines() {
        let img = b.line_of(map[row[0] as usize], map[row[1] as usize])?;
        let mut want: Vec<u32> = row.iter().map(|&x| map[x as usize] as u32).collect();
        want.sort_unstable();
        if b.line(img) != want.as_slice() {
            return None;
        }
        line_map.push(img);
    }
    Some((map, line_map))
}

fn iso_extend(
    a: &PartialLinearSpace,
    b: &PartialLinearSpace,
    next: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if next == a.num_points() {
        return true;
    }
    for cand in 0..b.num_points() {
        if used[cand] || a.lines_through(next).len() != b.lines_through(cand).len() {
            continue;
        }
        let ok = (0..next).all(|x| {
            let la = a.line_of(next, x);
            let lb = b.line_of(cand, map[x]);
            if la.is_some() != lb.is_some() {
                return false;
            }
            // collinear triples must correspond
            match (la, lb) {
                (Some(la), Some(lb)) => (0..next)
                    .filter(|&y| y != x)
                    .all(|y| a.incident(y, la) == b.incident(map[y], lb)),
                _ => true,
            }
        });
        if !ok {
            continue;
        }
        map[next] = cand;
        used[cand] = true;
        if iso_extend(a, b, next + 1, map, used) {
            return true;
        }
        used[cand] = false;
        map[next] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_models_validate() {
        let a2 = validate_antipodal(&cyclic_antipodal(2).unwrap()).unwrap();
        assert_eq!((a2.order(), a2.pls().num_points()), (2, 8));
        let a3 = validate_antipodal(&cyclic_antipodal(3).unwrap()).unwrap();
        assert_eq!((a3.order(), a3.pls().num_points()), (3, 14));
        assert_eq!(cyclic_antipodal(4), Err(AntipodalError::UnsupportedOrder(4)));
    }

    #[test]
    fn fano_is_not_antipodal() {
        let fano = Plane::pg2(&Field::prime(2).unwrap()).unwrap();
        let pls = PartialLinearSpace::new(7, &fano.rows()).unwrap();
        assert!(matches!(
            validate_antipodal(&pls),
            Err(AntipodalError::NotAntipodal {
                axiom: AntipodalAxiom::PointCount,
                ..
            })
        ));
    }

    #[test]
    fn pg24_complement_is_the_order_three_model() {
        let pls = antipodal_from_pg24();
        assert_eq!((pls.num_points(), pls.num_lines()), (14, 14));
        assert!(pls.lines().iter().all(|l| l.len() == 4));
        assert_eq!(validate_antipodal(&pls).unwrap().order(), 3);
        let (pm, lm) = find_isomorphism(&pls, &cyclic_antipodal(3).unwrap()).unwrap();
        assert_eq!((pm.len(), lm.len()), (14, 14));
    }

    #[test]
    fn mobius_kantor_over_gf7() {
        let f = Field::prime(7).unwrap();
        assert_eq!(mobius_kantor_roots(&f), vec![f.from_int(3), f.from_int(5)]);
        let plane = Plane::pg2(&f).unwrap();
        let (pls, _, lines) = mobius_kantor_in(&plane, f.from_int(3)).unwrap();
        assert_eq!(lines.len(), 8);
        assert!(pls.lines().iter().all(|l| l.len() == 3));
        assert_eq!(validate_antipodal(&pls).unwrap().order(), 2);
        assert!(find_isomorphism(&pls, &cyclic_antipodal(2).unwrap()).is_some());
        assert_eq!(
            mobius_kantor_points(&Field::prime(5).unwrap(), FieldElement::ONE),
            Err(AntipodalError::NotARoot)
        );
    }

    #[test]
    fn good_triangles_order_three() {
        let ap = validate_antipodal(&cyclic_antipodal(3).unwrap()).unwrap();
        let t = find_good_triangle(&ap).unwrap();
        assert!(is_good_triangle(&ap, t));
        assert!(!is_good_triangle(&ap, [0, 0, 1]));
        let a2 = validate_antipodal(&cyclic_antipodal(2).unwrap()).unwrap();
        assert_eq!(find_good_triangle(&a2), Err(AntipodalError::OrderTooSmall(2)));
    }

    #[test]
    fn non_isomorphic_sizes() {
        let a = cyclic_antipodal(2).unwrap();
        let b = cyclic_antipodal(3).unwrap();
        assert!(find_isomorphism(&a, &b).is_none());
    }
}
