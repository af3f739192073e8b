//! S-rings over `H_3(q)`: basic-set partitions, structure constants by
//! convolution, the closed forms for `cyc(K, G)` and its algebraic
//! automorphisms.
//!
//! `c_{XY}^Z = |{(x, y) ∈ X × Y : xy = z}|` for any fixed `z ∈ Z`.
//! The cyclotomic ring is laid out as `{e}, Y_0, …, Y_{q-1}, Z^#` (Y by
//! element index).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coherent::{verify_algebraic_map, CoherentConfiguration};
use crate::construction::Construction;
use crate::heisenberg::Heisenberg;
use crate::isotest::{self, Budget, IsoCertificate};
use crate::psi::{ExtendedIndex, PsiGroup};
use crate::Error;

/// Largest rank accepted by [`algebraic_automorphisms`].
pub const MAX_AUTOMORPHISM_RANK: usize = 32;

#[derive(Debug, Clone)]
pub struct SRing {
    group: Heisenberg,
    cells: Vec<Vec<u32>>,
    names: Vec<String>,
    cell_of: Vec<u32>,
    inverse: Vec<usize>,
}

impl SRing {
    /// Checks that `cells` partition the group, that cell 0 is `{e}` and
    /// that the inverse of every cell is a cell.
    pub fn new(group: Heisenberg, mut cells: Vec<Vec<u32>>, names: Vec<String>) -> Result<SRing, Error> {
        let n = group.order();
        let bad = |m: &str| Err(Error::NotAnSRing(m.to_string()));
        if names.len() != cells.len() {
            return bad("one name per cell required");
        }
        if cells.first() != Some(&vec![0]) {
            return bad("cell 0 must be {e}");
        }
        let mut cell_of = vec![u32::MAX; n];
        for (c, cell) in cells.iter_mut().enumerate() {
            cell.sort_unstable();
            for &g in cell.iter() {
                if g as usize >= n || cell_of[g as usize] != u32::MAX {
                    return bad("cells overlap or leave the group");
                }
                cell_of[g as usize] = c as u32;
            }
        }
        if cell_of.contains(&u32::MAX) {
            return bad("cells do not cover the group");
        }
        let mut inverse = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut inv: Vec<u32> = cell.iter().map(|&g| group.inv_idx(g)).collect();
            inv.sort_unstable();
            match cells.iter().position(|c| *c == inv) {
                Some(i) => inverse.push(i),
                None => return bad("inverse of a cell is not a cell"),
            }
        }
        Ok(SRing { group, cells, names, cell_of, inverse })
    }

    /// `𝒜 = cyc(K, G)`, with the analytic basic sets.
    pub fn cyclotomic(c: &Construction) -> SRing {
        let mut cells = vec![vec![0u32]];
        let mut names = vec!["e".to_string()];
        for i in c.field().elements() {
            cells.push(c.build_y(i));
            names.push(format!("Y{}", i.index()));
        }
        cells.push(c.center_nontrivial());
        names.push("Z#".to_string());
        SRing::new(c.group().clone(), cells, names).expect("basic sets of cyc(K, G) form an S-ring partition")
    }

    /// Cells of the partition `g ~ h ⇔ c(e, g) = c(e, h)` of a coherent
    /// configuration on the group, `{e}` first, others by colour.
    pub fn from_configuration(group: Heisenberg, cc: &CoherentConfiguration) -> Result<SRing, Error> {
        let mut cells: Vec<Vec<u32>> = cc.as_sring_partition().into_iter().map(|(_, m)| m).collect();
        cells.sort_by_key(|m| m != &vec![0]);
        let names = (0..cells.len()).map(|i| format!("C{i}")).collect();
        SRing::new(group, cells, names)
    }

    pub fn group(&self) -> &Heisenberg {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<u32>] {
        &self.cells
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cell_of(&self, g: u32) -> usize {
        self.cell_of[g as usize] as usize
    }

    /// The cell `X^(-1)`.
    pub fn inverse_cell(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.cells.iter().map(|c| c.len() as u32).collect()
    }

    /// The Cayley scheme as a pair colouring: `(u, v)` gets the cell of
    /// `v·u^-1`.
    pub fn scheme_coloring(&self) -> Vec<u32> {
        let n = self.group.order();
        let mut colors = vec![0u32; n * n];
        for u in 0..n as u32 {
            let u_inv = self.group.inv_idx(u);
            for v in 0..n as u32 {
                colors[u as usize * n + v as usize] = self.cell_of[self.group.mul_idx(v, u_inv) as usize];
            }
        }
        colors
    }
}

/// Cell index of `Y_k` in the cyclotomic layout; `Y_∞ = Z^#`.
pub fn cyclotomic_cell(q: u32, k: ExtendedIndex) -> usize {
    match k {
        ExtendedIndex::Finite(i) => 1 + i.index() as usize,
        ExtendedIndex::Infinity => q as usize + 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantsMode {
    /// Convolution at every `z` of every cell.
    Full,
    /// The first element of each cell plus up to `checks` more, drawn with
    /// a fixed seed.
    Sampled { checks: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    sizes: Vec<u32>,
    inverse: Vec<usize>,
    c: Vec<u32>,
}

impl StructureConstants {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn inverse_cell(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `c_{XY}^Z`.
    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        self.c[(x * self.rank + y) * self.rank + z]
    }

    /// Nonzero entries `[X, Y, Z, c]` in index order.
    pub fn nonzero(&self) -> Vec<[u32; 4]> {
        let r = self.rank;
        let mut out = Vec::new();
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    let c = self.get(x, y, z);
                    if c != 0 {
                        out.push([x as u32, y as u32, z as u32, c]);
                    }
                }
            }
        }
        out
    }

    /// `|Z|·c_{XY}^{Z*} = |X|·c_{YZ}^{X*} = |Y|·c_{ZX}^{Y*}` for all triples;
    /// returns the first failing triple.
    pub fn check_triangle_identity(&self) -> Result<(), (usize, usize, usize)> {
        let r = self.rank;
        let s = |x: usize| self.sizes[x] as u64;
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    let a = s(z) * self.get(x, y, self.inverse[z]) as u64;
                    let b = s(x) * self.get(y, z, self.inverse[x]) as u64;
                    let c = s(y) * self.get(z, x, self.inverse[y]) as u64;
                    if a != b || b != c {
                        return Err((x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ_Z c_{XY}^Z·|Z| = |X|·|Y|`; returns the first failing pair.
    pub fn check_mass_conservation(&self) -> Result<(), (usize, usize)> {
        for x in 0..self.rank {
            for y in 0..self.rank {
                let total: u64 = (0..self.rank).map(|z| self.get(x, y, z) as u64 * self.sizes[z] as u64).sum();
                if total != self.sizes[x] as u64 * self.sizes[y] as u64 {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }

    /// Whether the cell bijection `phi` preserves every constant.
    pub fn preserved_by(&self, phi: &[usize]) -> bool {
        let r = self.rank;
        phi.len() == r
            && (0..r).all(|x| (0..r).all(|y| (0..r).all(|z| self.get(x, y, z) == self.get(phi[x], phi[y], phi[z]))))
    }
}

/// Convolution counts `[X][Y]` of pairs `(x, y)` with `xy = z`.
fn convolve_at(ring: &SRing, z: u32, out: &mut [u32]) {
    let h = &ring.group;
    let r = ring.rank();
    out.fill(0);
    for x in 0..h.order() as u32 {
        let y = h.mul_idx(h.inv_idx(x), z);
        out[ring.cell_of(x) * r + ring.cell_of(y)] += 1;
    }
}

pub fn structure_constants(ring: &SRing, mode: ConstantsMode) -> Result<StructureConstants, Error> {
    let r = ring.rank();
    let mut c = vec![0u32; r * r * r];
    let mut first = vec![0u32; r * r];
    let mut other = vec![0u32; r * r];
    let mut rng = match mode {
        ConstantsMode::Sampled { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        ConstantsMode::Full => None,
    };
    for (zc, cell) in ring.cells.iter().enumerate() {
        convolve_at(ring, cell[0], &mut first);
        for xy in 0..r * r {
            c[xy * r + zc] = first[xy];
        }
        let checks: Vec<u32> = match (&mode, rng.as_mut()) {
            (ConstantsMode::Sampled { checks, .. }, Some(rng)) => {
                cell[1..].choose_multiple(rng, *checks).copied().collect()
            }
            _ => cell[1..].to_vec(),
        };
        for z in checks {
            convolve_at(ring, z, &mut other);
            if other != first {
                return Err(Error::NotAnSRing(format!(
                    "constants for cell {} differ between elements {} and {z}",
                    ring.names[zc], cell[0]
                )));
            }
        }
    }
    Ok(StructureConstants { rank: r, sizes: ring.sizes(), inverse: ring.inverse.clone(), c })
}

/// The closed form of `c_{Y_i Y_j}^{Y_k}` (`k` finite) or
/// `c_{Y_i Y_j}^{Z^#}` (`k = ∞`).
pub fn closed_form(psi: &PsiGroup<'_>, q: u32, i: ExtendedIndex, j: ExtendedIndex, k: ExtendedIndex) -> u32 {
    let neg_i = psi.chi(i);
    if k == ExtendedIndex::Infinity {
        return if j == neg_i { 0 } else { q + 1 };
    }
    if j == neg_i {
        return if k != i && k != neg_i {
            q
        } else if i != neg_i {
            q - 1
        } else {
            q - 2
        };
    }
    if k == psi.psi(i, j) {
        1
    } else if k == i && k == j {
        q - 1
    } else if k == i || k == j {
        q
    } else {
        q + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub x: String,
    pub y: String,
    pub z: String,
    pub expected: u32,
    pub actual: u32,
}

/// Compares every `c_{Y_i Y_j}^{Y_k}` and `c_{Y_i Y_j}^{Z^#}` of the
/// cyclotomic ring with its closed form. `q²(q+1)` comparisons.
pub fn verify_consts(c: &Construction, sc: &StructureConstants, psi: &PsiGroup<'_>) -> (usize, Vec<Mismatch>) {
    let q = c.q();
    let ext: Vec<ExtendedIndex> = psi.elements();
    let name = |k: ExtendedIndex| match k {
        ExtendedIndex::Finite(i) => format!("Y{}", i.index()),
        ExtendedIndex::Infinity => "Z#".to_string(),
    };
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for &i in ext.iter().filter(|k| k.finite().is_some()) {
        for &j in ext.iter().filter(|k| k.finite().is_some()) {
            for &k in &ext {
                let expected = closed_form(psi, q, i, j, k);
                let actual = sc.get(cyclotomic_cell(q, i), cyclotomic_cell(q, j), cyclotomic_cell(q, k));
                checked += 1;
                if expected != actual {
                    mismatches.push(Mismatch { x: name(i), y: name(j), z: name(k), expected, actual });
                }
            }
        }
    }
    (checked, mismatches)
}

#[derive(Debug, Clone, Serialize)]
pub struct TransversalReport {
    pub i: u32,
    /// Coefficients of `X_i·X_i^(-1)` at `e`, the minimum and maximum on
    /// `Z^#`, and the minimum and maximum off `Z`.
    pub forward: [u32; 5],
    pub mirrored: [u32; 5],
    pub forward_holds: bool,
    pub mirrored_holds: bool,
}

/// `X_i·X_i^(-1) = q²e + q(G - Z)` by full convolution; the mirrored
/// product `X_i^(-1)·X_i` is computed and reported alongside.
pub fn verify_transversal(c: &Construction, i: crate::FieldElement) -> TransversalReport {
    let h = c.group();
    let n = c.n();
    let x = c.build_x(i);
    let mut fwd = vec![0u32; n];
    let mut mir = vec![0u32; n];
    for &a in &x {
        for &b in &x {
            fwd[h.right_quotient_idx(a, b) as usize] += 1;
            mir[h.mul_idx(h.inv_idx(a), b) as usize] += 1;
        }
    }
    let summarize = |m: &[u32]| {
        let mut s = [m[0], u32::MAX, 0, u32::MAX, 0];
        for g in 1..n as u32 {
            let v = m[g as usize];
            let (lo, hi) = if h.is_central(h.element(g)) { (1, 2) } else { (3, 4) };
            s[lo] = s[lo].min(v);
            s[hi] = s[hi].max(v);
        }
        s
    };
    let q = c.q();
    let holds = |s: &[u32; 5]| *s == [q * q, 0, 0, q, q];
    let (forward, mirrored) = (summarize(&fwd), summarize(&mir));
    TransversalReport {
        i: i.index(),
        forward,
        mirrored,
        forward_holds: holds(&forward),
        mirrored_holds: holds(&mirrored),
    }
}

/// All cell bijections preserving sizes, inversion and every structure
/// constant, in lexicographic order. The identity comes first.
pub fn algebraic_automorphisms(sc: &StructureConstants) -> Result<Vec<Vec<usize>>, Error> {
    let r = sc.rank();
    if r > MAX_AUTOMORPHISM_RANK {
        return Err(Error::SearchCapExceeded(format!("rank {r} exceeds {MAX_AUTOMORPHISM_RANK}")));
    }
    let mut out = Vec::new();
    let mut phi = vec![usize::MAX; r];
    let mut used = vec![false; r];
    extend(sc, 0, &mut phi, &mut used, &mut out);
    Ok(out)
}

fn extend(sc: &StructureConstants, x: usize, phi: &mut [usize], used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let r = sc.rank();
    if x == r {
        out.push(phi.to_vec());
        return;
    }
    if phi[x] != usize::MAX {
        // Already forced as the inverse partner of an earlier cell.
        if consistent(sc, phi, x) {
            extend(sc, x + 1, phi, used, out);
        }
        return;
    }
    for t in 0..r {
        if used[t] || sc.sizes[t] != sc.sizes[x] {
            continue;
        }
        let xi = sc.inverse[x];
        let ti = sc.inverse[t];
        if (xi == x) != (ti == t) {
            continue;
        }
        if xi != x && (phi[xi] != usize::MAX || used[ti]) {
            continue;
        }
        phi[x] = t;
        used[t] = true;
        if xi != x {
            phi[xi] = ti;
            used[ti] = true;
        }
        if consistent(sc, phi, x) {
            extend(sc, x + 1, phi, used, out);
        }
        if xi != x {
            phi[xi] = usize::MAX;
            used[ti] = false;
        }
        phi[x] = usize::MAX;
        used[t] = false;
    }
}

/// Every constant among assigned cells, restricted to triples involving
/// `x`, is preserved.
fn consistent(sc: &StructureConstants, phi: &[usize], x: usize) -> bool {
    let r = sc.rank();
    let assigned: Vec<usize> = (0..r).filter(|&a| phi[a] != usize::MAX).collect();
    for &a in &assigned {
        for &b in &assigned {
            for (u, v, w) in [(x, a, b), (a, x, b), (a, b, x)] {
                if sc.get(u, v, w) != sc.get(phi[u], phi[v], phi[w]) {
                    return false;
                }
            }
        }
    }
    true
}

/// `τ̂` for `τ : k ↦ k^m`: `{e} ↦ {e}`, `Y_k ↦ Y_{k^m}`, `Y_∞ = Z^#`.
pub fn tau_hat(c: &Construction, psi: &PsiGroup<'_>, m: u64) -> Result<Vec<usize>, Error> {
    let tau = psi.automorphism(m).ok_or(Error::InvalidExponent { m, order: psi.order() })?;
    let q = c.q();
    let mut phi = vec![0usize; q as usize + 2];
    for k in psi.elements() {
        phi[cyclotomic_cell(q, k)] = cyclotomic_cell(q, tau(k));
    }
    Ok(phi)
}

/// Whether a list of permutations is closed under composition.
pub fn is_closed_group(maps: &[Vec<usize>]) -> bool {
    maps.iter().all(|a| {
        maps.iter().all(|b| {
            let ab: Vec<usize> = b.iter().map(|&y| a[y]).collect();
            maps.contains(&ab)
        })
    })
}

/// For a configuration whose `e`-row partition is the cyclotomic layout,
/// the colour of each cell.
pub fn cell_colors(ring: &SRing, cc: &CoherentConfiguration) -> Option<Vec<u32>> {
    let colors: Vec<u32> = ring.cells.iter().map(|cell| cc.color(0, cell[0] as usize)).collect();
    let consistent = ring.cells.iter().zip(&colors).all(|(cell, &k)| cell.iter().all(|&g| cc.color(0, g as usize) == k));
    let mut distinct = colors.clone();
    distinct.sort_unstable();
    distinct.dedup();
    (consistent && distinct.len() == colors.len() && colors.len() == cc.rank()).then_some(colors)
}

/// Carries a cell map of the ring to a colour map between two closures
/// whose `e`-rows realise the ring; then checks it with
/// [`verify_algebraic_map`].
pub fn transport(
    ring: &SRing,
    cc1: &CoherentConfiguration,
    cc2: &CoherentConfiguration,
    phi: &[usize],
) -> Result<Option<Vec<u32>>, Error> {
    let (Some(k1), Some(k2)) = (cell_colors(ring, cc1), cell_colors(ring, cc2)) else {
        return Ok(None);
    };
    let mut sigma = vec![0u32; cc1.rank()];
    for (x, &col) in k1.iter().enumerate() {
        sigma[col as usize] = k2[phi[x]];
    }
    Ok(verify_algebraic_map(cc1, cc2, &sigma)?.then_some(sigma))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inducedness {
    Induced,
    NotInduced,
    Undetermined,
}

/// Whether some permutation of `G` carries each basis relation `r(X)` of
/// the Cayley scheme onto `r(phi(X))`.
pub fn is_induced(ring: &SRing, phi: &[usize], budget: Budget) -> Inducedness {
    let n = ring.group.order();
    let base = ring.scheme_coloring();
    let mapped: Vec<u32> = base.iter().map(|&c| phi[c as usize] as u32).collect();
    match isotest::are_isomorphic_colored(n, &mapped, &base, budget) {
        IsoCertificate::Isomorphic { .. } => Inducedness::Induced,
        IsoCertificate::NonIsomorphic { .. } => Inducedness::NotInduced,
        IsoCertificate::Undetermined { .. } => Inducedness::Undetermined,
    }
}

#[derive(Debug, Serialize)]
pub struct CellInfo {
    pub name: String,
    pub size: u32,
}

#[derive(Debug, Serialize)]
pub struct ConstantsReport {
    pub q: u32,
    pub cells: Vec<CellInfo>,
    pub constants: Vec<[u32; 4]>,
    pub closed_form_mismatches: Vec<Mismatch>,
}

pub fn constants_report(c: &Construction, ring: &SRing, sc: &StructureConstants) -> ConstantsReport {
    let psi = c.psi_group();
    ConstantsReport {
        q: c.q(),
        cells: ring.names.iter().zip(ring.sizes()).map(|(name, size)| CellInfo { name: name.clone(), size }).collect(),
        constants: sc.nonzero(),
        closed_form_mismatches: verify_consts(c, sc, &psi).1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::wl_close;
    use crate::gf::FieldElement;
    use crate::psi::euler_phi;

    fn setup(q: u32) -> (Construction, SRing) {
        let c = Construction::new(q).unwrap();
        let ring = SRing::cyclotomic(&c);
        (c, ring)
    }

    #[test]
    fn cyclotomic_layout() {
        let (c, ring) = setup(3);
        assert_eq!(ring.rank(), 5);
        assert_eq!(ring.names(), ["e", "Y0", "Y1", "Y2", "Z#"]);
        assert_eq!(ring.sizes(), vec![1, 8, 8, 8, 2]);
        // Y_i^(-1) = Y_{-i}
        assert_eq!(ring.inverse_cell(2), 3);
        assert_eq!(ring.inverse_cell(1), 1);
        assert_eq!(ring.inverse_cell(4), 4);
        let h = c.group().clone();
        assert!(SRing::new(h.clone(), vec![(0..27).collect()], vec!["all".into()]).is_err());
        let mut cells = ring.cells().to_vec();
        cells[1].push(1);
        assert!(SRing::new(h, cells, ring.names().to_vec()).is_err());
    }

    /// Independent triple loop over `G × G`.
    fn brute_force(ring: &SRing) -> Vec<u32> {
        let h = ring.group();
        let r = ring.rank();
        let n = h.order() as u32;
        let mut count = vec![0u32; r * r * r];
        for x in 0..n {
            for y in 0..n {
                let z = h.mul_idx(x, y);
                count[(ring.cell_of(x) * r + ring.cell_of(y)) * r + ring.cell_of(z)] += 1;
            }
        }
        for (zc, size) in ring.sizes().into_iter().enumerate() {
            for xy in 0..r * r {
                count[xy * r + zc] /= size;
            }
        }
        count
    }

    #[test]
    fn full_mode_matches_triple_loop() {
        let (_, ring) = setup(3);
        let sc = structure_constants(&ring, ConstantsMode::Full).unwrap();
        assert_eq!(sc.c, brute_force(&ring));
        for x in 0..ring.rank() {
            assert_eq!(sc.get(0, x, x), 1);
            assert_eq!(sc.get(x, 0, x), 1);
        }
    }

    #[test]
    fn non_sring_partition_is_detected() {
        let (c, _) = setup(3);
        let h = c.group().clone();
        // {x, x^-1, y, y^-1} squared hits (1,1,1) but misses (0,0,1).
        let gens = vec![3, 6, 9, 18];
        let rest: Vec<u32> = (1..27).filter(|g| !gens.contains(g)).collect();
        let ring = SRing::new(h, vec![vec![0], gens, rest], vec!["e".into(), "a".into(), "b".into()]).unwrap();
        assert!(matches!(structure_constants(&ring, ConstantsMode::Full), Err(Error::NotAnSRing(_))));
    }

    #[test]
    fn closed_forms_hold() {
        for q in [3u32, 5, 7] {
            let (c, ring) = setup(q);
            let mode = if q == 3 { ConstantsMode::Full } else { ConstantsMode::Sampled { checks: 8, seed: 1 } };
            let sc = structure_constants(&ring, mode).unwrap();
            let (checked, mismatches) = verify_consts(&c, &sc, &c.psi_group());
            assert_eq!(checked as u32, q * q * (q + 1));
            assert!(mismatches.is_empty(), "q={q}: {mismatches:?}");
            sc.check_triangle_identity().unwrap();
            sc.check_mass_conservation().unwrap();
        }
    }

    #[test]
    fn specific_constants() {
        let (_, ring) = setup(5);
        let sc = structure_constants(&ring, ConstantsMode::Full).unwrap();
        // c_{Y1 Y1}^{Y1} = q - 1
        assert_eq!(sc.get(2, 2, 2), 4);
        let (_, ring) = setup(3);
        let sc = structure_constants(&ring, ConstantsMode::Full).unwrap();
        // c_{Y0 Y0}^{Y0} = q - 2
        assert_eq!(sc.get(1, 1, 1), 1);
        // c_{Y1 Y2}^{Z#} = 0, c_{Y1 Y1}^{Z#} = q + 1
        assert_eq!(sc.get(2, 3, 4), 0);
        assert_eq!(sc.get(2, 2, 4), 4);
    }

    /// With `δ = ε/16` the unit constant `c_{Y_i Y_j}^{Y_k} = 1` is not at
    /// `k = ψ(i, j)` once `ε² ≠ 1`.
    #[test]
    fn literal_delta_misplaces_the_unit_constant() {
        let (c, ring) = setup(5);
        let f = c.field();
        let literal = f.mul(c.epsilon(), f.inv(f.from_int(16)).unwrap());
        assert_ne!(literal, c.psi_group().delta());
        let psi = PsiGroup::with_delta(f, literal);
        let sc = structure_constants(&ring, ConstantsMode::Full).unwrap();
        assert!(!verify_consts(&c, &sc, &psi).1.is_empty());
        assert!(verify_consts(&c, &sc, &c.psi_group()).1.is_empty());
    }

    #[test]
    fn transversal_identity() {
        for q in [3u32, 5] {
            let c = Construction::new(q).unwrap();
            for i in c.field().elements() {
                let r = verify_transversal(&c, i);
                assert!(r.forward_holds && r.mirrored_holds, "{r:?}");
                assert_eq!(r.forward[0], q * q);
            }
        }
    }

    #[test]
    fn tau_hat_maps() {
        let (c, ring) = setup(3);
        let psi = c.psi_group();
        let sc = structure_constants(&ring, ConstantsMode::Full).unwrap();
        assert_eq!(tau_hat(&c, &psi, 1).unwrap(), vec![0, 1, 2, 3, 4]);
        assert!(matches!(tau_hat(&c, &psi, 2), Err(Error::InvalidExponent { .. })));
        for q in [3u32, 5, 7] {
            let (c, ring) = setup(q);
            let psi = c.psi_group();
            let sc = structure_constants(&ring, ConstantsMode::Sampled { checks: 4, seed: 3 }).unwrap();
            let gens = c.generators_i();
            for m in psi.automorphism_exponents() {
                let phi = tau_hat(&c, &psi, m).unwrap();
                assert!(sc.preserved_by(&phi), "q={q} m={m}");
                assert_eq!(phi[0], 0);
            }
            for &i in &gens {
                for &j in &gens {
                    let hit = psi.automorphism_exponents().into_iter().any(|m| {
                        tau_hat(&c, &psi, m).unwrap()[cyclotomic_cell(q, ExtendedIndex::Finite(i))]
                            == cyclotomic_cell(q, ExtendedIndex::Finite(j))
                    });
                    assert!(hit);
                }
            }
        }
        assert!(sc.preserved_by(&tau_hat(&c, &psi, 3).unwrap()));
    }

    #[test]
    fn algebraic_automorphism_enumeration() {
        for q in [3u32, 5, 7] {
            let (c, ring) = setup(q);
            let psi = c.psi_group();
            let sc = structure_constants(&ring, ConstantsMode::Sampled { checks: 4, seed: 5 }).unwrap();
            let autos = algebraic_automorphisms(&sc).unwrap();
            assert_eq!(autos[0], (0..ring.rank()).collect::<Vec<_>>());
            assert!(autos.len() as u64 >= euler_phi(q as u64 + 1));
            assert!(is_closed_group(&autos));
            for m in psi.automorphism_exponents() {
                assert!(autos.contains(&tau_hat(&c, &psi, m).unwrap()));
            }
            for phi in &autos {
                assert_eq!(phi[0], 0);
                assert!(sc.preserved_by(phi));
            }
        }
    }

    #[test]
    fn transport_to_wl_closures() {
        let (c, ring) = setup(3);
        let psi = c.psi_group();
        let one = FieldElement::ONE;
        let two = c.field().element(2).unwrap();
        let cc1 = wl_close(&c.build_cayley(one, true)).unwrap();
        let cc2 = wl_close(&c.build_cayley(two, true)).unwrap();
        // 1^3 = 2 in the ψ-group of order 4.
        let phi = tau_hat(&c, &psi, 3).unwrap();
        assert_eq!(phi[2], 3);
        let sigma = transport(&ring, &cc1, &cc2, &phi).unwrap().unwrap();
        let arcs1 = cc1.color(0, ring.cells()[2][0] as usize);
        let arcs2 = cc2.color(0, ring.cells()[3][0] as usize);
        assert_eq!(sigma[arcs1 as usize], arcs2);
        let cc0 = wl_close(&c.build_cayley(FieldElement::ZERO, true)).unwrap();
        assert!(cell_colors(&ring, &cc0).is_none());
    }

    #[test]
    fn configuration_partition_round_trip() {
        let (c, ring) = setup(3);
        let cc = wl_close(&c.build_cayley(FieldElement::ONE, true)).unwrap();
        let from_cc = SRing::from_configuration(c.group().clone(), &cc).unwrap();
        let mut a = from_cc.cells().to_vec();
        let mut b = ring.cells().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn report_json() {
        let (c, ring) = setup(3);
        let sc = structure_constants(&ring, ConstantsMode::Full).unwrap();
        let json = serde_json::to_value(constants_report(&c, &ring, &sc)).unwrap();
        assert_eq!(json["q"], 3);
        assert_eq!(json["cells"][4]["name"], "Z#");
        assert_eq!(json["closed_form_mismatches"].as_array().unwrap().len(), 0);
    }
}
