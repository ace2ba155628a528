//! Exact linear algebra over GF(p) and the p-ary code of a projective plane.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;
use thiserror::Error;

use crate::field::{is_prime, prime_power};
use crate::geometry::Plane;

/// Default cap on the number of messages `enumerate_min_weight` visits.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("{0} is not a prime below 256")]
    BadPrime(u32),
    #[error("plane order {order} is not a power of {p}")]
    PrimeMismatch { order: usize, p: u32 },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("position {0} is out of range")]
    PositionOutOfRange(usize),
    #[error("enumerating {p}^{k} words exceeds the budget; use constructions for bounds instead")]
    BudgetExceeded { k: usize, p: u32 },
}

/// Modular helpers for a prime below 256.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Gfp {
    p: u8,
    inv: Vec<u8>,
}

impl Gfp {
    fn new(p: u32) -> Result<Gfp, CodeError> {
        if p >= 256 || !is_prime(p) {
            return Err(CodeError::BadPrime(p));
        }
        let mut inv = vec![0u8; p as usize];
        for a in 1..p {
            let b = (1..p).find(|b| a * b % p == 1).expect("prime field");
            inv[a as usize] = b as u8;
        }
        Ok(Gfp { p: p as u8, inv })
    }

    #[inline]
    fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    #[inline]
    fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn add(&self, a: u8, b: u8) -> u8 {
        let s = a as u16 + b as u16;
        if s >= self.p as u16 {
            (s - self.p as u16) as u8
        } else {
            s as u8
        }
    }
}

/// A dense matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfpMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GfpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<GfpMatrix, CodeError> {
        Gfp::new(p)?;
        Ok(GfpMatrix {
            p: p as u8,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    /// Builds a matrix from rows, reducing entries mod p.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u8>]) -> Result<GfpMatrix, CodeError> {
        let mut m = GfpMatrix::zeros(p, 0, cols)?;
        for r in rows {
            if r.len() != cols {
                return Err(CodeError::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            m.data.extend(r.iter().map(|&x| x % m.p));
            m.rows += 1;
        }
        Ok(m)
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduces to reduced row echelon form in place, drops zero rows, and
    /// returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = Gfp::new(self.p as u32).expect("validated");
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for k in c..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let lead = self.get(r, c);
            if lead != 1 {
                let s = f.inv[lead as usize];
                for k in c..cols {
                    let v = &mut self.data[r * cols + k];
                    *v = f.mul(*v, s);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let pivot_row = &pivot_row[c..];
            let nz: Vec<usize> = (0..pivot_row.len()).filter(|&k| pivot_row[k] != 0).collect();
            let eliminate = |row: &mut [u8]| {
                let x = row[c];
                if x == 0 {
                    return;
                }
                let row = &mut row[c..];
                if f.p == 2 {
                    for &k in &nz {
                        row[k] ^= 1;
                    }
                } else {
                    let m = f.neg(x);
                    for &k in &nz {
                        row[k] = f.add(row[k], f.mul(m, pivot_row[k]));
                    }
                }
            };
            before.chunks_exact_mut(cols).for_each(eliminate);
            after.chunks_exact_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        self.rows = r;
        self.data.truncate(r * cols);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// A linear code over GF(p), held as an RREF generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: GfpMatrix,
    pivots: Vec<usize>,
    supports: Vec<Vec<usize>>,
}

impl LinearCode {
    /// The code spanned by `rows`.
    pub fn from_generators(p: u32, length: usize, rows: &[Vec<u8>]) -> Result<LinearCode, CodeError> {
        let mut g = GfpMatrix::from_rows(p, length, rows)?;
        let pivots = g.rref();
        Ok(LinearCode::from_rref(g, pivots))
    }

    fn from_rref(generator: GfpMatrix, pivots: Vec<usize>) -> LinearCode {
        let supports = (0..generator.rows)
            .map(|r| {
                let row = generator.row(r);
                (0..row.len()).filter(|&c| row[c] != 0).collect()
            })
            .collect();
        LinearCode {
            generator,
            pivots,
            supports,
        }
    }

    pub fn p(&self) -> u32 {
        self.generator.p as u32
    }

    pub fn length(&self) -> usize {
        self.generator.cols
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows
    }

    pub fn generator(&self) -> &GfpMatrix {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The dual code. Every basis word is checked against every generator
    /// row before returning.
    pub fn dual(&self) -> LinearCode {
        let f = Gfp::new(self.p()).expect("validated");
        let n = self.length();
        let mut is_pivot = vec![false; n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let mut rows = Vec::with_capacity(n - self.dimension());
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; n];
            v[free] = 1;
            for (i, &pc) in self.pivots.iter().enumerate() {
                v[pc] = f.neg(self.generator.get(i, free));
            }
            rows.push(v);
        }
        for v in &rows {
            for r in 0..self.dimension() {
                assert_eq!(dot(&f, v, self.generator.row(r)), 0, "dual basis not orthogonal");
            }
        }
        LinearCode::from_generators(self.p(), n, &rows).expect("validated")
    }

    /// Whether `w` lies in the code.
    pub fn contains(&self, w: &CodeWord) -> Result<bool, CodeError> {
        self.check_word(w)?;
        let f = Gfp::new(self.p()).expect("validated");
        let mut v = w.values.clone();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let x = v[pc];
            if x == 0 {
                continue;
            }
            let m = f.neg(x);
            for &c in &self.supports[i] {
                v[c] = f.add(v[c], f.mul(m, self.generator.get(i, c)));
            }
        }
        Ok(v.iter().all(|&x| x == 0))
    }

    /// `Σ msg[i] · G[i]`.
    pub fn encode(&self, msg: &[u8]) -> Result<CodeWord, CodeError> {
        if msg.len() != self.dimension() {
            return Err(CodeError::LengthMismatch {
                expected: self.dimension(),
                got: msg.len(),
            });
        }
        let f = Gfp::new(self.p()).expect("validated");
        let mut v = vec![0u8; self.length()];
        for (i, &m) in msg.iter().enumerate() {
            let m = m % f.p;
            if m == 0 {
                continue;
            }
            for &c in &self.supports[i] {
                v[c] = f.add(v[c], f.mul(m, self.generator.get(i, c)));
            }
        }
        Ok(CodeWord::from_values(self.p(), v).expect("validated"))
    }

    /// A uniformly random code word.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R) -> CodeWord {
        let p = self.generator.p;
        let msg: Vec<u8> = (0..self.dimension()).map(|_| rng.random_range(0..p)).collect();
        self.encode(&msg).expect("dimension matches")
    }

    /// Minimum nonzero weight and every word attaining it, by visiting all
    /// `p^k` messages in modular Gray-code order. Words come out sorted
    /// lexicographically by value vector.
    pub fn enumerate_min_weight(&self, budget: u64) -> Result<MinWeight, CodeError> {
        let k = self.dimension();
        let p = self.p();
        let total = (p as u64)
            .checked_pow(k as u32)
            .filter(|&t| t <= budget)
            .ok_or(CodeError::BudgetExceeded { k, p })?;
        let f = Gfp::new(p).expect("validated");
        let n = self.length();
        let mut word = vec![0u8; n];
        let mut weight = 0usize;
        let mut digits = vec![0u8; k];
        let mut best = usize::MAX;
        let mut found: Vec<Vec<u8>> = Vec::new();
        for _ in 1..total {
            let mut j = 0;
            while digits[j] == f.p - 1 {
                digits[j] = 0;
                j += 1;
            }
            digits[j] += 1;
            for &c in &self.supports[j] {
                let old = word[c];
                let new = f.add(old, self.generator.get(j, c));
                word[c] = new;
                match (old == 0, new == 0) {
                    (true, false) => weight += 1,
                    (false, true) => weight -= 1,
                    _ => {}
                }
            }
            match weight.cmp(&best) {
                Ordering::Less => {
                    best = weight;
                    found.clear();
                    found.push(word.clone());
                }
                Ordering::Equal => found.push(word.clone()),
                Ordering::Greater => {}
            }
        }
        found.sort_unstable();
        Ok(MinWeight {
            weight: if k == 0 { 0 } else { best },
            words: found
                .into_iter()
                .map(|v| CodeWord::from_values(p, v).expect("validated"))
                .collect(),
        })
    }

    fn check_word(&self, w: &CodeWord) -> Result<(), CodeError> {
        if w.p() != self.p() {
            return Err(CodeError::CharacteristicMismatch(self.p(), w.p()));
        }
        if w.len() != self.length() {
            return Err(CodeError::LengthMismatch {
                expected: self.length(),
                got: w.len(),
            });
        }
        Ok(())
    }
}

/// Result of exhaustive minimum-weight enumeration. For the zero code the
/// weight is 0 and `words` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinWeight {
    pub weight: usize,
    pub words: Vec<CodeWord>,
}

fn dot(f: &Gfp, a: &[u8], b: &[u8]) -> u8 {
    let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
    (s % f.p as u64) as u8
}

/// The GF(p) span of the line incidence vectors of `plane`. Fails unless the
/// order is a power of `p`, or `allow_mismatch` is set.
pub fn code_of_plane(plane: &Plane, p: u32, allow_mismatch: bool) -> Result<LinearCode, CodeError> {
    Gfp::new(p)?;
    let order = plane.order();
    let matches = prime_power(order as u32).is_some_and(|(q, _)| q == p);
    if !matches && !allow_mismatch {
        return Err(CodeError::PrimeMismatch { order, p });
    }
    let n = plane.num_points();
    let rows: Vec<Vec<u8>> = (0..plane.num_lines())
        .map(|l| {
            let mut v = vec![0u8; n];
            for &pt in plane.points_on(l) {
                v[pt as usize] = 1;
            }
            v
        })
        .collect();
    LinearCode::from_generators(p, n, &rows)
}

/// A vector over GF(p) with cached support. Symbols are the
/// representatives `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeWord {
    p: u8,
    values: Vec<u8>,
    support: Vec<usize>,
}

impl PartialOrd for CodeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CodeWord {
    /// By weight, then lexicographically by values.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight(), &self.values, self.p).cmp(&(other.weight(), &other.values, other.p))
    }
}

impl CodeWord {
    /// Wraps a value vector, reducing entries mod p.
    pub fn from_values(p: u32, mut values: Vec<u8>) -> Result<CodeWord, CodeError> {
        let f = Gfp::new(p)?;
        for v in values.iter_mut() {
            *v %= f.p;
        }
        let support = (0..values.len()).filter(|&i| values[i] != 0).collect();
        Ok(CodeWord {
            p: f.p,
            values,
            support,
        })
    }

    /// Builds a word from `(position, symbol)` pairs.
    pub fn from_pairs(
        p: u32,
        len: usize,
        pairs: impl IntoIterator<Item = (usize, u8)>,
    ) -> Result<CodeWord, CodeError> {
        let mut v = vec![0u8; len];
        for (pos, val) in pairs {
            *v.get_mut(pos).ok_or(CodeError::PositionOutOfRange(pos))? = val;
        }
        CodeWord::from_values(p, v)
    }

    pub fn zero(p: u32, len: usize) -> Result<CodeWord, CodeError> {
        CodeWord::from_values(p, vec![0; len])
    }

    /// The 0/1 vector of a point set.
    pub fn indicator(p: u32, len: usize, points: &[usize]) -> Result<CodeWord, CodeError> {
        CodeWord::from_pairs(p, len, points.iter().map(|&i| (i, 1)))
    }

    /// The incidence vector of a line of `plane`.
    pub fn line(p: u32, plane: &Plane, line: usize) -> Result<CodeWord, CodeError> {
        let pts: Vec<usize> = plane.points_on(line).iter().map(|&x| x as usize).collect();
        CodeWord::indicator(p, plane.num_points(), &pts)
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn value(&self, pos: usize) -> u8 {
        self.values[pos]
    }

    /// Nonzero positions, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn scale(&self, lambda: u32) -> CodeWord {
        let f = Gfp::new(self.p()).expect("validated");
        let l = (lambda % self.p()) as u8;
        let v = self.values.iter().map(|&x| f.mul(x, l)).collect();
        CodeWord::from_values(self.p(), v).expect("validated")
    }

    pub fn neg(&self) -> CodeWord {
        self.scale(self.p() - 1)
    }

    pub fn add(&self, other: &CodeWord) -> Result<CodeWord, CodeError> {
        self.check(other)?;
        let f = Gfp::new(self.p()).expect("validated");
        let v = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        CodeWord::from_values(self.p(), v)
    }

    /// `self − other`.
    pub fn diff(&self, other: &CodeWord) -> Result<CodeWord, CodeError> {
        self.add(&other.neg())
    }

    /// Sum of all symbols as integers in `0..p`.
    pub fn mu(&self) -> u64 {
        self.values.iter().map(|&x| x as u64).sum()
    }

    /// `mu` of the restriction to the given positions.
    pub fn mu_on(&self, positions: &[u32]) -> u64 {
        positions.iter().map(|&i| self.values[i as usize] as u64).sum()
    }

    /// The scalar multiple whose first nonzero symbol is 1.
    pub fn normalized(&self) -> CodeWord {
        match self.support.first() {
            None => self.clone(),
            Some(&i) => {
                let f = Gfp::new(self.p()).expect("validated");
                self.scale(f.inv[self.values[i] as usize] as u32)
            }
        }
    }

    /// Whether `other` is a nonzero scalar multiple of `self`.
    pub fn same_up_to_scalar(&self, other: &CodeWord) -> bool {
        self.p == other.p && self.len() == other.len() && self.normalized() == other.normalized()
    }

    /// Colour classes: entry `λ` lists the positions carrying symbol `λ`
    /// (entry 0 is always empty).
    pub fn colour_classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.p as usize];
        for &i in &self.support {
            out[self.values[i] as usize].push(i);
        }
        out
    }

    /// Dot product with the 0/1 vector of `positions`.
    pub fn dot_indicator(&self, positions: &[u32]) -> u8 {
        (self.mu_on(positions) % self.p as u64) as u8
    }

    fn check(&self, other: &CodeWord) -> Result<(), CodeError> {
        if self.p != other.p {
            return Err(CodeError::CharacteristicMismatch(self.p(), other.p()));
        }
        if self.len() != other.len() {
            return Err(CodeError::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }
}

/// Outcome of a dual-code membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualVerdict {
    Dual,
    /// The first line whose dot product with the word is nonzero.
    Violated { line: usize, dot: u8 },
}

impl DualVerdict {
    pub fn is_dual(self) -> bool {
        self == DualVerdict::Dual
    }
}

/// Tests `w` against every line of `plane`.
pub fn is_dual_word(w: &CodeWord, plane: &Plane) -> Result<DualVerdict, CodeError> {
    if w.len() != plane.num_points() {
        return Err(CodeError::LengthMismatch {
            expected: plane.num_points(),
            got: w.len(),
        });
    }
    for l in 0..plane.num_lines() {
        let d = w.dot_indicator(plane.points_on(l));
        if d != 0 {
            return Ok(DualVerdict::Violated { line: l, dot: d });
        }
    }
    Ok(DualVerdict::Dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn pg(p: u32, h: u32) -> Plane {
        Plane::pg2(&Field::new(p, h, None).unwrap()).unwrap()
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(code_of_plane(&pg(2, 1), 2, false).unwrap().dimension(), 4);
        assert_eq!(code_of_plane(&pg(3, 1), 3, false).unwrap().dimension(), 7);
        let c4 = code_of_plane(&pg(2, 2), 2, false).unwrap();
        assert_eq!(c4.dimension(), 10);
        assert_eq!(c4.dual().dimension(), 11);
        assert_eq!(
            code_of_plane(&pg(2, 2), 3, false),
            Err(CodeError::PrimeMismatch { order: 4, p: 3 })
        );
        assert!(code_of_plane(&pg(2, 2), 3, true).is_ok());
    }

    #[test]
    fn rref_is_canonical() {
        let rows = vec![vec![2, 1, 0, 1], vec![1, 2, 1, 0], vec![0, 0, 1, 1]];
        let mut m = GfpMatrix::from_rows(3, 4, &rows).unwrap();
        let piv = m.rref();
        assert_eq!(piv.len(), m.rows());
        for (i, &c) in piv.iter().enumerate() {
            for r in 0..m.rows() {
                assert_eq!(m.get(r, c), u8::from(r == i));
            }
        }
    }

    #[test]
    fn dual_membership() {
        let plane = pg(3, 1);
        let z = CodeWord::zero(3, 13).unwrap();
        assert!(is_dual_word(&z, &plane).unwrap().is_dual());
        let l0 = CodeWord::line(3, &plane, 0).unwrap();
        assert_eq!(
            is_dual_word(&l0, &plane).unwrap(),
            DualVerdict::Violated { line: 0, dot: 1 }
        );
        let l1 = CodeWord::line(3, &plane, 1).unwrap();
        let d = l0.diff(&l1).unwrap();
        assert!(is_dual_word(&d, &plane).unwrap().is_dual());
        assert!(l0.diff(&l0).unwrap().is_zero());
        let code = code_of_plane(&plane, 3, false).unwrap();
        assert!(code.dual().contains(&d).unwrap());
        assert!(!code.dual().contains(&l0).unwrap());
        assert!(code.contains(&l0).unwrap());
        assert!(matches!(
            is_dual_word(&CodeWord::zero(3, 7).unwrap(), &plane),
            Err(CodeError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn word_arithmetic() {
        let w = CodeWord::from_values(5, vec![0, 1, 4, 3, 0, 2]).unwrap();
        assert_eq!(w.weight(), 4);
        assert_eq!(w.mu() + w.neg().mu(), 5 * 4);
        assert_eq!(w.normalized().values()[1], 1);
        assert!(w.same_up_to_scalar(&w.scale(3)));
        assert!(w.scale(0).is_zero());
        let cls = w.colour_classes();
        assert_eq!(cls[4], vec![2]);
    }

    #[test]
    fn fano_min_weights() {
        let code = code_of_plane(&pg(2, 1), 2, false).unwrap();
        let mw = code.enumerate_min_weight(DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!((mw.weight, mw.words.len()), (3, 7));
        let dual = code.dual().enumerate_min_weight(DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(dual.weight, 4);
        assert_eq!(
            code.enumerate_min_weight(4),
            Err(CodeError::BudgetExceeded { k: 4, p: 2 })
        );
    }
}
