//! The Heisenberg group `H_3(q)` of upper unitriangular 3×3 matrices.
//!
//! The triple `(x, y, z)` stands for the matrix with `x` and `y` on the
//! superdiagonal and `z` in the corner:
//!
//! ```text
//! | 1 x z |
//! | 0 1 y |
//! | 0 0 1 |
//! ```
//!
//! so `(x1,y1,z1)·(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1·y2)`.

use serde::{Serialize, Serializer};

use crate::gf::{Field, FieldElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub x: FieldElement,
    pub y: FieldElement,
    pub z: FieldElement,
}

impl GroupElement {
    pub const IDENTITY: GroupElement =
        GroupElement { x: FieldElement::ZERO, y: FieldElement::ZERO, z: FieldElement::ZERO };

    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Self {
        GroupElement { x, y, z }
    }
}

/// Serialized as `[ix, iy, iz]`.
impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x.index(), self.y.index(), self.z.index()].serialize(s)
    }
}

/// `H_3(q)` together with its vertex indexing
/// `index(x,y,z) = ix·q² + iy·q + iz`.
#[derive(Debug, Clone)]
pub struct Heisenberg {
    field: Field,
}

impl Heisenberg {
    pub fn new(field: Field) -> Self {
        Heisenberg { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// `q³`.
    pub fn order(&self) -> usize {
        (self.q() as usize).pow(3)
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let f = &self.field;
        GroupElement {
            x: f.add(a.x, b.x),
            y: f.add(a.y, b.y),
            z: f.add(f.add(a.z, b.z), f.mul(a.x, b.y)),
        }
    }

    /// `(x,y,z)^-1 = (-x, -y, xy - z)`.
    pub fn inv(&self, a: GroupElement) -> GroupElement {
        let f = &self.field;
        GroupElement { x: f.neg(a.x), y: f.neg(a.y), z: f.sub(f.mul(a.x, a.y), a.z) }
    }

    pub fn index(&self, g: GroupElement) -> u32 {
        let q = self.q();
        (g.x.index() * q + g.y.index()) * q + g.z.index()
    }

    pub fn element(&self, index: u32) -> GroupElement {
        let q = self.q();
        debug_assert!((index as usize) < self.order());
        GroupElement {
            x: FieldElement::from_index_unchecked(index / (q * q)),
            y: FieldElement::from_index_unchecked(index / q % q),
            z: FieldElement::from_index_unchecked(index % q),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as u32).map(move |i| self.element(i))
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.index(self.mul(self.element(a), self.element(b)))
    }

    #[inline]
    pub fn inv_idx(&self, a: u32) -> u32 {
        self.index(self.inv(self.element(a)))
    }

    /// `u·v^-1` on indices; the Cayley digraph test `v·u^-1 ∈ X` is
    /// `right_quotient_idx(v, u)`.
    #[inline]
    pub fn right_quotient_idx(&self, u: u32, v: u32) -> u32 {
        self.mul_idx(u, self.inv_idx(v))
    }

    pub fn is_central(&self, g: GroupElement) -> bool {
        g.x == FieldElement::ZERO && g.y == FieldElement::ZERO
    }

    /// `Z(G) = {(0,0,z)}` in index order.
    pub fn center(&self) -> Vec<GroupElement> {
        self.field
            .elements()
            .map(|z| GroupElement::new(FieldElement::ZERO, FieldElement::ZERO, z))
            .collect()
    }

    /// Identifier of the coset `Zg`; two elements share it iff their `(x, y)`
    /// components agree.
    pub fn coset_id(&self, g: GroupElement) -> u32 {
        g.x.index() * self.q() + g.y.index()
    }

    pub fn coset_id_idx(&self, index: u32) -> u32 {
        index / self.q()
    }
}
