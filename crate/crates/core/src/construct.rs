//! Explicit dual-code words: differences of lines, of a Baer subplane and a
//! secant, of two subplanes, and of two embedded antipodal planes.

use alloc::vec::Vec;

use rand::Rng;
use thiserror::Error;

use crate::antipodal::{validate_antipodal, PartialLinearSpace};
use crate::codes::{is_dual_word, CodeError, CodeWord, DualVerdict};
use crate::field::FieldElement;
use crate::geometry::{Collineation, Plane, SubplaneResult};
use crate::search::{verify_embedding, Embedding, EmbeddingViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("the two lines coincide")]
    SameLine,
    #[error("line {line} meets the subplane in {meets} points, not {expected}")]
    NotSecant {
        line: usize,
        meets: usize,
        expected: usize,
    },
    #[error("the point sets are not disjoint (common point {0})")]
    NotDisjoint(usize),
    #[error("the subplanes have different orders {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("expected a Baer subplane of order {expected}, got order {got}")]
    NotBaer { expected: usize, got: usize },
    #[error("plane order {order} is not {p}^2")]
    NotSquareOrder { order: usize, p: u32 },
    #[error("embedding {index} is not valid: {violation}")]
    NotVerifiedEmbedding {
        index: usize,
        violation: EmbeddingViolation,
    },
    #[error("structure {index} is not an antipodal plane of order {expected}")]
    NotAntipodal { index: usize, expected: usize },
    #[error("index {0} is out of range")]
    OutOfRange(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// How a word was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordRecipe {
    LineDiff { l: usize, m: usize },
    BaerDiff { subplane: Vec<usize>, secant: usize },
    SubplaneDiff { first: Vec<usize>, second: Vec<usize> },
    AntipodalDiff { first: Vec<usize>, second: Vec<usize> },
}

impl WordRecipe {
    pub fn kind(&self) -> &'static str {
        match self {
            WordRecipe::LineDiff { .. } => "line-diff",
            WordRecipe::BaerDiff { .. } => "baer-diff",
            WordRecipe::SubplaneDiff { .. } => "subplane-diff",
            WordRecipe::AntipodalDiff { .. } => "antipodal-diff",
        }
    }
}

/// `ℓ − m`, a dual word of weight `2n`.
pub fn line_diff(plane: &Plane, p: u32, l: usize, m: usize) -> Result<CodeWord, ConstructError> {
    if l >= plane.num_lines() || m >= plane.num_lines() {
        return Err(ConstructError::OutOfRange(l.max(m)));
    }
    if l == m {
        return Err(ConstructError::SameLine);
    }
    Ok(CodeWord::line(p, plane, l)?.diff(&CodeWord::line(p, plane, m)?)?)
}

/// `B − ℓ` for a Baer subplane `B` of a plane of order `p^2` and a line `ℓ`
/// meeting it in `p + 1` points (by default the first such line). Returns
/// the word and the secant used.
pub fn baer_diff(
    plane: &Plane,
    p: u32,
    baer: &SubplaneResult,
    secant: Option<usize>,
) -> Result<(CodeWord, usize), ConstructError> {
    let pu = p as usize;
    if plane.order() != pu * pu {
        return Err(ConstructError::NotSquareOrder {
            order: plane.order(),
            p,
        });
    }
    if baer.order != pu {
        return Err(ConstructError::NotBaer {
            expected: pu,
            got: baer.order,
        });
    }
    let l = secant.unwrap_or(baer.lines[0]);
    if l >= plane.num_lines() {
        return Err(ConstructError::OutOfRange(l));
    }
    let meets = plane
        .points_on(l)
        .iter()
        .filter(|&&x| baer.contains(x as usize))
        .count();
    if meets != pu + 1 {
        return Err(ConstructError::NotSecant {
            line: l,
            meets,
            expected: pu + 1,
        });
    }
    let b = CodeWord::indicator(p, plane.num_points(), &baer.points)?;
    Ok((b.diff(&CodeWord::line(p, plane, l)?)?, l))
}

fn set_diff(
    plane: &Plane,
    p: u32,
    first: &[usize],
    second: &[usize],
) -> Result<(CodeWord, DualVerdict), ConstructError> {
    let n = plane.num_points();
    let a = CodeWord::indicator(p, n, first)?;
    if let Some(&x) = second.iter().find(|&&x| x < n && a.value(x) != 0) {
        return Err(ConstructError::NotDisjoint(x));
    }
    let w = a.diff(&CodeWord::indicator(p, n, second)?)?;
    let verdict = is_dual_word(&w, plane)?;
    Ok((w, verdict))
}

/// `π1 − π2` for disjoint subplanes of equal order, with its dual verdict.
pub fn subplane_diff(
    plane: &Plane,
    p: u32,
    first: &SubplaneResult,
    second: &SubplaneResult,
) -> Result<(CodeWord, DualVerdict), ConstructError> {
    if first.order != second.order {
        return Err(ConstructError::OrderMismatch(first.order, second.order));
    }
    set_diff(plane, p, &first.points, &second.points)
}

/// The difference of the point images of two embedded antipodal planes of
/// order `p − 1` with disjoint images, with its dual verdict.
pub fn antipodal_diff(
    plane: &Plane,
    p: u32,
    first: (&PartialLinearSpace, &Embedding),
    second: (&PartialLinearSpace, &Embedding),
) -> Result<(CodeWord, DualVerdict), ConstructError> {
    for (index, (pls, e)) in [first, second].into_iter().enumerate() {
        let expected = p as usize - 1;
        match validate_antipodal(pls) {
            Ok(ap) if ap.order() == expected => {}
            _ => return Err(ConstructError::NotAntipodal { index, expected }),
        }
        verify_embedding(pls, plane, e)
            .map_err(|violation| ConstructError::NotVerifiedEmbedding { index, violation })?;
    }
    set_diff(plane, p, &first.1.point_map, &second.1.point_map)
}

/// Applies a collineation to an embedding.
pub fn transform_embedding(
    plane: &Plane,
    c: &Collineation,
    e: &Embedding,
) -> Option<Embedding> {
    let point_map = e
        .point_map
        .iter()
        .map(|&x| c.apply_point(plane, x).ok())
        .collect::<Option<Vec<_>>>()?;
    let line_map = e
        .line_map
        .iter()
        .map(|&l| c.apply_line(plane, l).ok())
        .collect::<Option<Vec<_>>>()?;
    Some(Embedding {
        point_map,
        line_map,
    })
}

/// A random collineation moving `points` off themselves, trying at most
/// `tries` matrices.
pub fn disjoint_image<R: Rng + ?Sized>(
    plane: &Plane,
    points: &[usize],
    rng: &mut R,
    tries: usize,
) -> Option<Collineation> {
    let field = plane.field()?;
    let q = field.order();
    for _ in 0..tries {
        let mut m = [[FieldElement::ZERO; 3]; 3];
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = field.element(rng.random_range(0..q)).expect("in range");
            }
        }
        let Ok(c) = Collineation::new(field, m) else {
            continue;
        };
        let moved: Option<Vec<usize>> = points.iter().map(|&x| c.apply_point(plane, x).ok()).collect();
        if moved.is_some_and(|img| img.iter().all(|y| !points.contains(y))) {
            return Some(c);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::geometry::baer_subfield_subplane;

    #[test]
    fn line_diff_weights() {
        let plane = Plane::pg2(&Field::new(3, 2, None).unwrap()).unwrap();
        let w = line_diff(&plane, 3, 0, 1).unwrap();
        assert_eq!(w.weight(), 18);
        assert!(is_dual_word(&w, &plane).unwrap().is_dual());
        assert_eq!(line_diff(&plane, 3, 4, 4), Err(ConstructError::SameLine));
    }

    #[test]
    fn baer_diff_pg29() {
        let plane = Plane::pg2(&Field::new(3, 2, None).unwrap()).unwrap();
        let b = baer_subfield_subplane(&plane).unwrap();
        let (w, secant) = baer_diff(&plane, 3, &b, None).unwrap();
        assert_eq!(secant, b.lines[0]);
        assert_eq!(w.weight(), 15);
        assert!(is_dual_word(&w, &plane).unwrap().is_dual());
        let classes = w.colour_classes();
        assert_eq!((classes[1].len(), classes[2].len()), (9, 6));
        let tangent = (0..plane.num_lines())
            .find(|l| b.lines.binary_search(l).is_err())
            .unwrap();
        assert!(matches!(
            baer_diff(&plane, 3, &b, Some(tangent)),
            Err(ConstructError::NotSecant { meets: 1, .. })
        ));
    }

    #[test]
    fn subplane_diff_rejects_overlap() {
        let plane = Plane::pg2(&Field::new(3, 2, None).unwrap()).unwrap();
        let b = baer_subfield_subplane(&plane).unwrap();
        assert!(matches!(
            subplane_diff(&plane, 3, &b, &b),
            Err(ConstructError::NotDisjoint(_))
        ));
    }
}
