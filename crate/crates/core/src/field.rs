//! Arithmetic in GF(p^h).
//!
//! Elements are stored as a single integer `c_0 + c_1 p + ... + c_{h-1} p^{h-1}`
//! where `c_0 + c_1 x + ...` is the canonical residue modulo the field's
//! defining polynomial. Multiplication goes through exp/log tables built from
//! the smallest primitive element, addition through base-p digits (or a full
//! table for small fields).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Largest field order supported.
pub const MAX_ORDER: u32 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{h} exceeds 2^16")]
    TooLarge { p: u32, h: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients in [0, p)")]
    BadModulus { expected: u32 },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient vector does not describe an element of GF({p}^{h})")]
    BadCoefficients { p: u32, h: u32 },
}

/// An element of some [`Field`], in canonical integer encoding.
///
/// Comparison and hashing are on the encoding, so they only make sense for
/// elements of the same field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The canonical encoding, in `[0, q)`.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^h) with an explicit monic irreducible modulus.
#[derive(Clone)]
pub struct Field {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: FieldElement,
    // exp has length 2(q-1) so log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^h). `modulus` is a coefficient list, lowest degree first,
    /// of length `h + 1` with leading coefficient 1. When omitted, the
    /// lexicographically smallest monic irreducible of degree `h` is used
    /// (for `h = 1` that is `x`).
    pub fn new(p: u32, h: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if h == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = checked_pow(p, h)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::TooLarge { p, h })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != h as usize + 1 || m[h as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus { expected: h });
                }
                if !poly::is_irreducible(m, p) {
                    return Err(FieldError::ReducibleModulus { p });
                }
                m.to_vec()
            }
            None => default_modulus(p, h),
        };
        Ok(Self::build(p, h, q, modulus))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    /// Parses `"p^h"` (or a bare `"p"`) into `(p, h)`.
    pub fn from_order_str(s: &str) -> Option<(u32, u32)> {
        let s = s.trim();
        let (p, h) = match s.split_once('^') {
            Some((p, h)) => (p.trim().parse().ok()?, h.trim().parse().ok()?),
            None => (s.parse().ok()?, 1),
        };
        Some((p, h))
    }

    fn build(p: u32, h: u32, q: u32, modulus: Vec<u32>) -> Field {
        let neg = (0..q)
            .map(|a| {
                let mut out = 0;
                let mut pw = 1;
                let mut a = a;
                for _ in 0..h {
                    let d = a % p;
                    a /= p;
                    out += ((p - d) % p) * pw;
                    pw *= p;
                }
                out
            })
            .collect();
        let mut field = Field {
            p,
            h,
            q,
            modulus,
            primitive: FieldElement::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            neg,
            add: None,
        };
        if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b) as u16;
                }
            }
            field.add = Some(table);
        }
        let g = field.find_primitive();
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = field.slow_mul(cur, g);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        field.exp = exp;
        field.log = log;
        field.primitive = FieldElement(g);
        field
    }

    fn find_primitive(&self) -> u32 {
        if self.q == 2 {
            return 1;
        }
        let n = self.q - 1;
        let factors = prime_factors(n);
        (1..self.q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, n / r) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn to_poly(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.h as usize);
        let mut a = a;
        for _ in 0..self.h {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn from_poly(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly::mul(&self.to_poly(a), &self.to_poly(b), self.p);
        let r = poly::rem(&prod, &self.modulus, self.p);
        let mut r = r;
        r.resize(self.h as usize, 0);
        self.from_poly(&r)
    }

    fn slow_pow(&self, a: u32, mut e: u32) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        if self.h == 1 {
            return (a + b) % self.p;
        }
        let mut out = 0;
        let mut pw = 1;
        for _ in 0..self.h {
            out += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        out
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.h
    }

    /// Number of elements, `p^h`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element used for the log tables.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    /// Element with encoding `index`, if `index < q`.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.q).then_some(FieldElement(index))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    /// Coefficient vector, lowest degree first, length `h`.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.to_poly(a.0)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<FieldElement, FieldError> {
        if c.len() > self.h as usize || c.iter().any(|&d| d >= self.p) {
            return Err(FieldError::BadCoefficients {
                p: self.p,
                h: self.h,
            });
        }
        Ok(FieldElement(self.from_poly(c)))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.add {
            Some(t) => FieldElement(t[(a.0 * self.q + b.0) as usize] as u32),
            None => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents need `a != 0`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return match e.signum() {
                0 => Ok(FieldElement::ONE),
                1 => Ok(FieldElement::ZERO),
                _ => Err(FieldError::DivisionByZero),
            };
        }
        let order = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        let k = (l * e.rem_euclid(order)).rem_euclid(order);
        Ok(FieldElement(self.exp[k as usize]))
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as i64).expect("nonnegative exponent")
    }

    /// Whether `a` lies in the subfield GF(p^d). `d` must divide `h`.
    pub fn in_subfield(&self, a: FieldElement, d: u32) -> bool {
        if d == 0 || self.h % d != 0 {
            return false;
        }
        let mut x = a;
        for _ in 0..d {
            x = self.frobenius(x);
        }
        x == a
    }

    /// Whether `a` lies in the prime field GF(p).
    pub fn in_prime_subfield(&self, a: FieldElement) -> bool {
        a.0 < self.p
    }

    /// All roots of `x^2 + b x + c`, by evaluating at every element.
    pub fn solve_monic_quadratic(&self, b: FieldElement, c: FieldElement) -> Vec<FieldElement> {
        self.elements()
            .filter(|&x| {
                let v = self.add(self.mul(x, self.add(x, b)), c);
                v.is_zero()
            })
            .collect()
    }
}

/// Trial division; fine for the sizes used here.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// If `n = p^h` for a prime `p`, returns `(p, h)`.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut h = 0;
    while m % p == 0 {
        m /= p;
        h += 1;
    }
    (m == 1).then_some((p, h))
}

fn checked_pow(p: u32, h: u32) -> Option<u32> {
    let mut acc: u32 = 1;
    for _ in 0..h {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn default_modulus(p: u32, h: u32) -> Vec<u32> {
    if h == 1 {
        return vec![0, 1];
    }
    // Candidates in lexicographic order of (c_0, c_1, ..., c_{h-1}).
    let total = checked_pow(p, h).expect("checked by caller");
    let mut cand = vec![0u32; h as usize + 1];
    cand[h as usize] = 1;
    for n in 0..total {
        let mut n = n;
        for i in (0..h as usize).rev() {
            cand[i] = n % p;
            n /= p;
        }
        if poly::is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Dense polynomials over GF(p), lowest degree first.
mod poly {
    use alloc::vec;
    use alloc::vec::Vec;

    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime, so a^(p-2).
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|v| v as u32).collect())
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let f = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &c) in m.iter().enumerate() {
                let sub = (f as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `base^(p^k) mod m` by repeated p-th powering.
    fn frobenius_iter(base: &[u32], k: u32, m: &[u32], p: u32) -> Vec<u32> {
        let mut x = rem(base, m, p);
        for _ in 0..k {
            x = pow_mod(&x, p, m, p);
        }
        x
    }

    fn pow_mod(a: &[u32], mut e: u32, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin's test: `f` (monic, degree h) is irreducible iff
    /// `x^(p^h) = x mod f` and `gcd(x^(p^(h/r)) - x, f) = 1` for every
    /// prime `r | h`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let h = (f.len() - 1) as u32;
        if h == 1 {
            return true;
        }
        let x = vec![0u32, 1];
        let full = frobenius_iter(&x, h, &f, p);
        if sub(&full, &x, p) != Vec::<u32>::new() {
            return false;
        }
        super::prime_factors(h).into_iter().all(|r| {
            let partial = frobenius_iter(&x, h / r, &f, p);
            let g = gcd(&f, &sub(&partial, &x, p), p);
            g.len() == 1
        })
    }
}
