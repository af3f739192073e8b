//! Arithmetic in `F_q` for odd prime powers `q = p^l`.
//!
//! Elements are identified by their index `Σ c_k p^k`, where `c_k` are the
//! coefficients of the residue polynomial modulo the field's fixed
//! irreducible polynomial. The index is the canonical order used for
//! choosing the nonsquare, labelling vertices, and ordering reports.
//!
//! Addition and multiplication tables are filled once from polynomial
//! arithmetic; they only cache what [`poly_mul_mod`] computes.

use serde::Serialize;
use thiserror::Error;

/// Largest field order accepted by [`Field::new`] unless a caller asks for
/// more through [`Field::with_cap`].
pub const DEFAULT_MAX_ORDER: u32 = 729;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("characteristic {0} is even; only odd prime powers are supported")]
    EvenCharacteristic(u32),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {order} exceeds the configured maximum {max}")]
    TooLarge { order: u64, max: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element index {index} is not below the field order {order}")]
    OutOfRange { index: u32, order: u32 },
}

/// `p`, `l` and the monic modulus `(c_0, …, c_{l-1}, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub p: u32,
    pub l: u32,
    /// Coefficients `c_0..c_{l-1}` of the modulus; the leading 1 is implicit.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u32 {
        self.p.pow(self.l)
    }
}

/// An element of `F_q`, stored as its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn from_index_unchecked(index: u32) -> Self {
        FieldElement(index)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, l)` with `q = p^l`, `p` prime.
pub fn prime_power(q: u32) -> Result<(u32, u32), GfError> {
    if q < 2 {
        return Err(GfError::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap_or(q);
    let (mut rest, mut l) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        l += 1;
    }
    if rest != 1 {
        return Err(GfError::NotPrimePower(q));
    }
    Ok((p, l))
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`
/// (coefficient lists, lowest degree first).
pub fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1);
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (k, &c) in m.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// `a·b mod m` over `F_p`.
pub fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, m, p)
}

/// Monic polynomials of degree `d` over `F_p`, in lexicographic order of
/// their low coefficients `(c_0, …, c_{d-1})`.
fn monic_polys(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(d);
    (0..count).map(move |mut idx| {
        // Lexicographic in (c_0, ..., c_{d-1}) means c_0 is the most
        // significant digit.
        let mut low = vec![0u32; d as usize];
        for k in (0..d as usize).rev() {
            low[k] = idx % p;
            idx /= p;
        }
        low.push(1);
        low
    })
}

/// Irreducibility by trial division against every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for divisor in monic_polys(p, d) {
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `l`.
pub fn canonical_modulus(p: u32, l: u32) -> Vec<u32> {
    monic_polys(p, l)
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial of every degree exists over F_p")
}

/// `F_q` with cached operation tables.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl Field {
    /// `F_{p^l}` with the canonical modulus and the default order cap.
    pub fn new(p: u32, l: u32) -> Result<Field, GfError> {
        Field::with_cap(p, l, DEFAULT_MAX_ORDER)
    }

    /// `F_q` from the order alone.
    pub fn with_order(q: u32) -> Result<Field, GfError> {
        let (p, l) = prime_power(q)?;
        Field::new(p, l)
    }

    pub fn with_cap(p: u32, l: u32, max_order: u32) -> Result<Field, GfError> {
        if p % 2 == 0 {
            return Err(GfError::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if l == 0 {
            return Err(GfError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(l).unwrap_or(u64::MAX);
        if order > max_order as u64 || order > u16::MAX as u64 {
            return Err(GfError::TooLarge { order, max: max_order });
        }
        let modulus = canonical_modulus(p, l);
        let spec = FieldSpec { p, l, modulus: modulus[..l as usize].to_vec() };
        Ok(Field::from_spec(spec, modulus))
    }

    fn from_spec(spec: FieldSpec, modulus: Vec<u32>) -> Field {
        let (p, l) = (spec.p, spec.l as usize);
        let q = spec.order();
        let qs = q as usize;
        let coeffs: Vec<Vec<u32>> = (0..q).map(|i| index_to_coeffs(i, p, l)).collect();
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let sum: Vec<u32> =
                    coeffs[a].iter().zip(&coeffs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = coeffs_to_index(&sum, p) as u16;
                let prod = poly_mul_mod(&trim(coeffs[a].clone()), &trim(coeffs[b].clone()), &modulus, p);
                mul[a * qs + b] = coeffs_to_index(&prod, p) as u16;
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16)
            .collect();
        let inv = (0..qs)
            .map(|a| if a == 0 { 0 } else { (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u16 })
            .collect();
        Field { spec, q, add, mul, neg, inv }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.l
    }

    /// Element with the given index.
    pub fn element(&self, index: u32) -> Result<FieldElement, GfError> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(GfError::OutOfRange { index, order: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        index_to_coeffs(a.0, self.spec.p, self.spec.l as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        let p = self.spec.p;
        if coeffs.len() > self.spec.l as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(GfError::OutOfRange { index: u32::MAX, order: self.q });
        }
        Ok(FieldElement(coeffs_to_index(coeffs, p)))
    }

    /// The image of the integer `n` under `Z → F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.spec.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[(a.0 * self.q + b.0) as usize] as u32)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[(a.0 * self.q + b.0) as usize] as u32)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize] as u32)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.0 == 0 {
            Err(GfError::ZeroInverse)
        } else {
            Ok(FieldElement(self.inv[a.0 as usize] as u32))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let (mut base, mut acc) = (a, FieldElement::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion: `a^((q-1)/2) ∈ {0, 1}`.
    pub fn is_square(&self, a: FieldElement) -> bool {
        let t = self.pow(a, ((self.q - 1) / 2) as u64);
        t == FieldElement::ZERO || t == FieldElement::ONE
    }

    /// The nonsquare of smallest index.
    pub fn find_nonsquare(&self) -> FieldElement {
        self.elements()
            .find(|&a| !self.is_square(a))
            .expect("odd order fields have nonsquares")
    }
}

fn index_to_coeffs(mut index: u32, p: u32, l: usize) -> Vec<u32> {
    let mut out = vec![0u32; l];
    for c in out.iter_mut() {
        *c = index % p;
        index /= p;
    }
    out
}

fn coeffs_to_index(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(i: u32) -> FieldElement {
        FieldElement(i)
    }

    #[test]
    fn prime_field_modulus_is_t() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.spec().modulus, vec![0]);
        assert_eq!(f.order(), 3);
    }

    #[test]
    fn f9_modulus_is_t_squared_plus_one() {
        // Oracle: scan the nine monic quadratics t^2 + c1 t + c0 over F_3 in
        // (c0, c1) order and test for roots directly.
        let first = (0..3u32)
            .flat_map(|c0| (0..3u32).map(move |c1| (c0, c1)))
            .find(|&(c0, c1)| (0..3u32).all(|x| (x * x + c1 * x + c0) % 3 != 0))
            .unwrap();
        assert_eq!(first, (1, 0));
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.spec().modulus, vec![1, 0]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(2, 1).unwrap_err(), GfError::EvenCharacteristic(2));
        assert_eq!(Field::new(9, 1).unwrap_err(), GfError::NotPrime(9));
        assert!(matches!(Field::new(3, 7), Err(GfError::TooLarge { .. })));
        assert_eq!(Field::new(3, 0).unwrap_err(), GfError::ZeroDegree);
        assert_eq!(prime_power(15).unwrap_err(), GfError::NotPrimePower(15));
        assert_eq!(prime_power(9).unwrap(), (3, 2));
    }

    #[test]
    fn small_products() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.mul(fe(2), fe(2)), fe(1));
        let f9 = Field::new(3, 2).unwrap();
        // t has index 3; t·t = -1 = 2.
        assert_eq!(f9.mul(fe(3), fe(3)), fe(2));
        for a in f9.elements() {
            assert_eq!(f9.add(a, FieldElement::ZERO), a);
        }
    }

    #[test]
    fn inverses() {
        let f3 = Field::new(3, 1).unwrap();
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f3.inv(fe(2)).unwrap(), fe(2));
        assert_eq!(f5.inv(fe(2)).unwrap(), fe(3));
        assert_eq!(f5.inv(FieldElement::ZERO).unwrap_err(), GfError::ZeroInverse);
    }

    #[test]
    fn squares_and_nonsquares() {
        let f3 = Field::new(3, 1).unwrap();
        let f5 = Field::new(5, 1).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        assert!(f3.is_square(FieldElement::ZERO));
        assert!(!f3.is_square(fe(2)));
        assert!(f5.is_square(fe(4)));
        assert_eq!(f3.find_nonsquare(), fe(2));
        assert_eq!(f5.find_nonsquare(), fe(2));
        // -1 is a square in F_9, so t (with t² = -1) is one too.
        let squares: Vec<FieldElement> = f9.elements().map(|a| f9.square(a)).collect();
        assert!(squares.contains(&fe(3)));
        assert_eq!(f9.find_nonsquare(), fe(4));
        assert!(!squares.contains(&fe(4)));
    }

    #[test]
    fn field_axioms_exhaustive_up_to_nine() {
        for (p, l) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = Field::new(p, l).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                if a != FieldElement::ZERO {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn half_of_nonzero_elements_are_squares() {
        for (p, l) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (5, 2), (3, 3)] {
            let f = Field::new(p, l).unwrap();
            // Oracle: the set of b^2 for b ≠ 0.
            let mut sq: Vec<u32> = f.elements().skip(1).map(|b| f.square(b).index()).collect();
            sq.sort_unstable();
            sq.dedup();
            assert_eq!(sq.len() as u32, (f.order() - 1) / 2);
            for a in f.elements().skip(1) {
                assert_eq!(f.is_square(a), sq.binary_search(&a.index()).is_ok());
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let f = Field::new(3, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
        assert!(f.element(27).is_err());
    }
}
