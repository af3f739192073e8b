//! The cyclic group `F_q ∪ {∞}` of order `q + 1` under
//!
//! ```text
//! ψ(i, j) = (ij + δ)/(i + j)   if i, j finite and i + j ≠ 0
//!         = ∞                  if j = -i
//!         = i                  if j = ∞
//!         = j                  if i = ∞
//! ```
//!
//! with `δ = (16ε)^-1`. This is the value for which `ψ(i, j)` is the index
//! `k` with `c_{Y_i Y_j}^{Y_k} = 1`, given the basic sets built in
//! [`crate::construction`]. The map is a group for every nonsquare `δ`;
//! [`PsiGroup::with_delta`] builds the variant for any other `δ`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::gf::{Field, FieldElement};

/// A member of `F_q^∞`. `∞` is its own variant, never a field value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedIndex {
    Finite(FieldElement),
    Infinity,
}

impl ExtendedIndex {
    pub fn finite(self) -> Option<FieldElement> {
        match self {
            ExtendedIndex::Finite(i) => Some(i),
            ExtendedIndex::Infinity => None,
        }
    }
}

/// Finite values by element index, `∞` last.
impl Ord for ExtendedIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedIndex::Finite(a), ExtendedIndex::Finite(b)) => a.cmp(b),
            (ExtendedIndex::Finite(_), ExtendedIndex::Infinity) => Ordering::Less,
            (ExtendedIndex::Infinity, ExtendedIndex::Finite(_)) => Ordering::Greater,
            (ExtendedIndex::Infinity, ExtendedIndex::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedIndex::Finite(i) => write!(f, "{}", i.index()),
            ExtendedIndex::Infinity => f.write_str("inf"),
        }
    }
}

/// Element index, or the string `"inf"`.
impl Serialize for ExtendedIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedIndex::Finite(i) => s.serialize_u32(i.index()),
            ExtendedIndex::Infinity => s.serialize_str("inf"),
        }
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

#[derive(Debug, Clone, Copy)]
pub struct PsiGroup<'a> {
    field: &'a Field,
    delta: FieldElement,
}

impl<'a> PsiGroup<'a> {
    /// The group for the nonsquare `epsilon`, `δ = (16ε)^-1`.
    pub fn new(field: &'a Field, epsilon: FieldElement) -> Self {
        let sixteen = field.from_int(16);
        let delta = field
            .inv(field.mul(sixteen, epsilon))
            .expect("16ε ≠ 0 for odd characteristic and ε ≠ 0");
        PsiGroup { field, delta }
    }

    pub fn with_delta(field: &'a Field, delta: FieldElement) -> Self {
        PsiGroup { field, delta }
    }

    pub fn delta(&self) -> FieldElement {
        self.delta
    }

    pub fn order(&self) -> u64 {
        self.field.order() as u64 + 1
    }

    /// All members: finite values by index, then `∞`.
    pub fn elements(&self) -> Vec<ExtendedIndex> {
        self.field
            .elements()
            .map(ExtendedIndex::Finite)
            .chain(std::iter::once(ExtendedIndex::Infinity))
            .collect()
    }

    pub fn psi(&self, i: ExtendedIndex, j: ExtendedIndex) -> ExtendedIndex {
        use ExtendedIndex::*;
        let f = self.field;
        match (i, j) {
            (Infinity, _) => j,
            (_, Infinity) => i,
            (Finite(a), Finite(b)) => {
                let s = f.add(a, b);
                match f.inv(s) {
                    Err(_) => Infinity,
                    Ok(s_inv) => Finite(f.mul(f.add(f.mul(a, b), self.delta), s_inv)),
                }
            }
        }
    }

    /// The inverse: `-i`, and `∞ ↦ ∞`.
    pub fn chi(&self, i: ExtendedIndex) -> ExtendedIndex {
        match i {
            ExtendedIndex::Finite(a) => ExtendedIndex::Finite(self.field.neg(a)),
            ExtendedIndex::Infinity => ExtendedIndex::Infinity,
        }
    }

    /// `i^m` in the ψ-group; `i^0 = ∞`.
    pub fn power(&self, i: ExtendedIndex, m: u64) -> ExtendedIndex {
        let (mut base, mut acc, mut e) = (i, ExtendedIndex::Infinity, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.psi(acc, base);
            }
            base = self.psi(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, i: ExtendedIndex) -> u64 {
        let mut x = i;
        let mut k = 1;
        while x != ExtendedIndex::Infinity {
            x = self.psi(x, i);
            k += 1;
        }
        k
    }

    /// Elements of order `q + 1`, by element index. Never contains `∞`.
    pub fn generators(&self) -> Vec<FieldElement> {
        self.field
            .elements()
            .filter(|&i| self.element_order(ExtendedIndex::Finite(i)) == self.order())
            .collect()
    }

    /// Exponents `m ∈ [1, q+1)` coprime to `q + 1`; each gives the
    /// automorphism `i ↦ i^m`.
    pub fn automorphism_exponents(&self) -> Vec<u64> {
        let n = self.order();
        (1..n).filter(|&m| gcd(m, n) == 1).collect()
    }

    /// The automorphism `i ↦ i^m`, or `None` if `gcd(m, q+1) ≠ 1`.
    pub fn automorphism(&self, m: u64) -> Option<impl Fn(ExtendedIndex) -> ExtendedIndex + '_> {
        (gcd(m, self.order()) == 1).then_some(move |i| self.power(i, m))
    }

    /// Checks closure, identity, inverses and associativity on the full
    /// table. Returns the first violated law.
    pub fn verify_axioms(&self) -> Result<(), String> {
        let els = self.elements();
        for &a in &els {
            if self.psi(a, ExtendedIndex::Infinity) != a || self.psi(ExtendedIndex::Infinity, a) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.psi(a, self.chi(a)) != ExtendedIndex::Infinity {
                return Err(format!("chi({a}) is not the inverse of {a}"));
            }
            for &b in &els {
                let ab = self.psi(a, b);
                if ab != self.psi(b, a) {
                    return Err(format!("not commutative at ({a},{b})"));
                }
                for &c in &els {
                    if self.psi(ab, c) != self.psi(a, self.psi(b, c)) {
                        return Err(format!("not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}
