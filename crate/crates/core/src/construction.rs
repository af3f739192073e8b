//! The automorphism group `K`, the basic sets `Y_i`, the connection sets
//! `X_i = Y_i ∪ {e}` and the Cayley digraphs `Γ_i = Cay(G, X_i)`.
//!
//! For `M = (α β; εβ α)`, `ρ(M)` sends `(x, y, z)` to
//! `(αx + εβy, βx + αy, F_{α,β}(x, y, z))` with
//!
//! ```text
//! F_{α,β}(x,y,z) = αβ(x²/2 + εy²/2) + εβ²xy + (α² - εβ²)z
//! ```
//!
//! and `Y_i = {(α, β, γ_i(α,β)) : (α,β) ≠ (0,0)}` where
//! `γ_i(α,β) = αβ/2 + (α² - εβ²)i`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::gf::{Field, FieldElement};
use crate::heisenberg::{GroupElement, Heisenberg};
use crate::psi::PsiGroup;
use crate::Error;

/// The matrix `(α β; εβ α)`; `(α, β) ≠ (0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatrixM {
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

/// `ρ(M)` as a permutation of vertex indices.
#[derive(Debug, Clone)]
pub struct Automorphism {
    pub matrix: MatrixM,
    pub perm: Vec<u32>,
}

/// Largest group for which `build_k` checks the homomorphism law on all
/// pairs; above it a fixed-seed sample is used.
const EXHAUSTIVE_HOM_CHECK: usize = 343;
const SAMPLED_HOM_PAIRS: usize = 20_000;

/// Everything attached to one `q`: the field, the group, `ε` and `1/2`.
#[derive(Debug, Clone)]
pub struct Construction {
    group: Heisenberg,
    epsilon: FieldElement,
    half: FieldElement,
}

impl Construction {
    pub fn new(q: u32) -> Result<Self, Error> {
        Ok(Construction::from_field(Field::with_order(q)?))
    }

    pub fn from_field(field: Field) -> Self {
        let epsilon = field.find_nonsquare();
        let half = field.inv(field.from_int(2)).expect("odd characteristic");
        Construction { group: Heisenberg::new(field), epsilon, half }
    }

    pub fn group(&self) -> &Heisenberg {
        &self.group
    }

    pub fn field(&self) -> &Field {
        self.group.field()
    }

    pub fn q(&self) -> u32 {
        self.group.q()
    }

    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn epsilon(&self) -> FieldElement {
        self.epsilon
    }

    pub fn psi_group(&self) -> PsiGroup<'_> {
        PsiGroup::new(self.field(), self.epsilon)
    }

    /// The set `I` of generators of the ψ-group.
    pub fn generators_i(&self) -> Vec<FieldElement> {
        self.psi_group().generators()
    }

    /// The `q² - 1` matrices of `𝓜(ε)`, by `(α, β)` index.
    pub fn matrices(&self) -> Vec<MatrixM> {
        let f = self.field();
        f.elements()
            .flat_map(|alpha| f.elements().map(move |beta| MatrixM { alpha, beta }))
            .filter(|m| (m.alpha, m.beta) != (FieldElement::ZERO, FieldElement::ZERO))
            .collect()
    }

    fn f_alpha_beta(&self, m: MatrixM, g: GroupElement) -> FieldElement {
        let f = self.field();
        let (a, b, e) = (m.alpha, m.beta, self.epsilon);
        let x2 = f.mul(f.square(g.x), self.half);
        let ey2 = f.mul(e, f.mul(f.square(g.y), self.half));
        let first = f.mul(f.mul(a, b), f.add(x2, ey2));
        let eb2 = f.mul(e, f.square(b));
        let second = f.mul(eb2, f.mul(g.x, g.y));
        let third = f.mul(f.sub(f.square(a), eb2), g.z);
        f.add(f.add(first, second), third)
    }

    pub fn rho_apply(&self, m: MatrixM, g: GroupElement) -> GroupElement {
        let f = self.field();
        GroupElement {
            x: f.add(f.mul(m.alpha, g.x), f.mul(self.epsilon, f.mul(m.beta, g.y))),
            y: f.add(f.mul(m.beta, g.x), f.mul(m.alpha, g.y)),
            z: self.f_alpha_beta(m, g),
        }
    }

    /// All `ρ(M)`, each checked to be a bijective homomorphism.
    pub fn build_k(&self) -> Result<Vec<Automorphism>, Error> {
        let h = &self.group;
        let n = self.n();
        let mut out = Vec::with_capacity(n);
        let mut rng = ChaCha8Rng::seed_from_u64(0x4b);
        for m in self.matrices() {
            let perm: Vec<u32> = h.elements().map(|g| h.index(self.rho_apply(m, g))).collect();
            let mut seen = vec![false; n];
            for &v in &perm {
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::NotAutomorphism(format!("rho{m:?} is not injective")));
                }
            }
            let hom = |a: u32, b: u32| perm[h.mul_idx(a, b) as usize] == h.mul_idx(perm[a as usize], perm[b as usize]);
            let ok = if n <= EXHAUSTIVE_HOM_CHECK {
                (0..n as u32).all(|a| (0..n as u32).all(|b| hom(a, b)))
            } else {
                (0..SAMPLED_HOM_PAIRS).all(|_| hom(rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)))
            };
            if !ok {
                return Err(Error::NotAutomorphism(format!("rho{m:?} is not a homomorphism")));
            }
            out.push(Automorphism { matrix: m, perm });
        }
        Ok(out)
    }

    /// Orbits of `K` on `G`, each sorted, ordered by smallest member.
    pub fn k_orbits(&self, k: &[Automorphism]) -> Vec<Vec<u32>> {
        let n = self.n();
        let mut orbit_of = vec![u32::MAX; n];
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        for v in 0..n as u32 {
            if orbit_of[v as usize] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let mut orbit: Vec<u32> = k.iter().map(|a| a.perm[v as usize]).chain([v]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &w in &orbit {
                orbit_of[w as usize] = id;
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// `γ_i(α, β) = αβ/2 + (α² - εβ²)i`.
    pub fn gamma(&self, i: FieldElement, alpha: FieldElement, beta: FieldElement) -> FieldElement {
        let f = self.field();
        let norm = f.sub(f.square(alpha), f.mul(self.epsilon, f.square(beta)));
        f.add(f.mul(f.mul(alpha, beta), self.half), f.mul(norm, i))
    }

    /// `Y_i` as sorted vertex indices.
    pub fn build_y(&self, i: FieldElement) -> Vec<u32> {
        let mut y: Vec<u32> = self
            .matrices()
            .into_iter()
            .map(|m| self.group.index(GroupElement::new(m.alpha, m.beta, self.gamma(i, m.alpha, m.beta))))
            .collect();
        y.sort_unstable();
        y
    }

    /// `X_i = Y_i ∪ {e}`, sorted.
    pub fn build_x(&self, i: FieldElement) -> Vec<u32> {
        let mut x = self.build_y(i);
        x.insert(0, 0);
        x
    }

    /// `Z^#` as sorted vertex indices.
    pub fn center_nontrivial(&self) -> Vec<u32> {
        self.group.center().into_iter().skip(1).map(|z| self.group.index(z)).collect()
    }

    /// `Cay(G, S)`: arc `(u, v)` iff `v·u^-1 ∈ S`.
    pub fn cayley(&self, connection: &[u32]) -> Digraph {
        let h = &self.group;
        let n = self.n();
        let mut g = Digraph::empty(n);
        for u in 0..n as u32 {
            for &x in connection {
                g.set_arc(u as usize, h.mul_idx(x, u) as usize, true);
            }
        }
        g
    }

    /// `Γ_i = Cay(G, X_i)` (loop at every vertex), or the loopless
    /// `Cay(G, Y_i)`.
    pub fn build_cayley(&self, i: FieldElement, include_identity: bool) -> Digraph {
        let set = if include_identity { self.build_x(i) } else { self.build_y(i) };
        let name = if include_identity { "Gamma" } else { "Gamma_loopless" };
        self.cayley(&set).with_label(format!("{name}_{} (q={})", i.index(), self.q()))
    }
}
