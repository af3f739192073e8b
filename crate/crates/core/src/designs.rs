//! Divisible designs: common-neighbour counts of a digraph against a class
//! partition, the development `dev(X_i)`, and the explicit isomorphism
//! `dev(X_0) ≅ dev(X_i)`.
//!
//! The maps are
//!
//! ```text
//! f(α, β, γ) = (α, β, γ + (α² - εβ²)i)
//! h = H^-1,  H(α'', β'', γ'') = (α'' - δ', β'' - σ, γ'' + (α''-δ')(β''-σ)/2 - α''β''/2 + (α''² - εβ''²)i)
//! δ' = 4iεβ'',  σ = 4iα''
//! ```
//!
//! and the claim is `g ∈ X_0·g_0 ⇔ f(g) ∈ X_i·h(g_0)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construction::Construction;
use crate::digraph::Digraph;
use crate::gf::FieldElement;
use crate::heisenberg::GroupElement;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DddParameters {
    pub v: u64,
    pub k: u64,
    pub lambda1: u64,
    pub lambda2: u64,
    pub m: u64,
    pub n: u64,
}

impl DddParameters {
    /// `(q³, q², 0, q, q², q)`.
    pub fn expected(q: u32) -> Self {
        let q = q as u64;
        DddParameters { v: q * q * q, k: q * q, lambda1: 0, lambda2: q, m: q * q, n: q }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    All,
    /// Unordered pairs drawn with replacement from a fixed seed.
    Sampled { pairs: usize, seed: u64 },
}

/// Distinct values seen for one count, each with the first pair that
/// showed it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Observed {
    pub values: Vec<(u32, [u32; 2])>,
}

impl Observed {
    fn record(&mut self, value: u32, a: usize, b: usize) {
        if !self.values.iter().any(|(v, _)| *v == value) {
            self.values.push((value, [a as u32, b as u32]));
            self.values.sort_unstable();
        }
    }

    pub fn is_constant(&self, value: u32) -> bool {
        self.values.iter().all(|(v, _)| *v == value)
    }

    pub fn distinct(&self) -> Vec<u32> {
        self.values.iter().map(|(v, _)| *v).collect()
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PairCounts {
    /// Common dominators.
    pub c_in: Observed,
    /// Common dominated vertices.
    pub c_out: Observed,
    /// Vertices dominating both or dominated by both.
    pub union: Observed,
    pub pairs: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DddReport {
    pub graph: String,
    pub n: usize,
    pub has_loops: bool,
    pub asymmetric: bool,
    pub out_degrees: Vec<u32>,
    pub in_degrees: Vec<u32>,
    pub same_class: PairCounts,
    pub cross_class: PairCounts,
    pub expected_degree: u32,
    pub expected_lambda1: u32,
    pub expected_lambda2: u32,
    /// Regular of the expected degree, asymmetric off the diagonal, and the
    /// per-direction counts constant at the expected values.
    pub holds: bool,
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

fn popcount_union_of_ands(a: &[u64], b: &[u64], c: &[u64], d: &[u64]) -> u32 {
    (0..a.len()).map(|w| ((a[w] & b[w]) | (c[w] & d[w])).count_ones()).sum()
}

/// Common-neighbour counts of every unordered pair of distinct vertices
/// (or a sample), split by whether the two share a class.
pub fn verify_ddd(
    g: &Digraph,
    class_of: &[u32],
    expected_degree: u32,
    lambda1: u32,
    lambda2: u32,
    mode: PairMode,
) -> DddReport {
    let n = g.n();
    let outs = g.out_bitsets();
    let ins = g.in_bitsets();
    let mut same = PairCounts::default();
    let mut cross = PairCounts::default();
    let mut visit = |a: usize, b: usize| {
        let c_out = popcount_and(&outs[a], &outs[b]);
        let c_in = popcount_and(&ins[a], &ins[b]);
        let union = popcount_union_of_ands(&outs[a], &outs[b], &ins[a], &ins[b]);
        let slot = if class_of[a] == class_of[b] { &mut same } else { &mut cross };
        slot.c_out.record(c_out, a, b);
        slot.c_in.record(c_in, a, b);
        slot.union.record(union, a, b);
        slot.pairs += 1;
    };
    match mode {
        PairMode::All => {
            for a in 0..n {
                for b in a + 1..n {
                    visit(a, b);
                }
            }
        }
        PairMode::Sampled { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut done = 0;
            while done < pairs {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if a != b {
                    visit(a.min(b), a.max(b));
                    done += 1;
                }
            }
        }
    }
    let distinct = |mut v: Vec<u32>| {
        v.sort_unstable();
        v.dedup();
        v
    };
    let out_degrees = distinct((0..n).map(|u| g.out_degree(u) as u32).collect());
    let in_degrees = distinct((0..n).map(|u| g.in_degree(u) as u32).collect());
    let asymmetric = g.without_loops().is_asymmetric();
    let holds = out_degrees == [expected_degree]
        && in_degrees == [expected_degree]
        && asymmetric
        && same.c_in.is_constant(lambda1)
        && same.c_out.is_constant(lambda1)
        && cross.c_in.is_constant(lambda2)
        && cross.c_out.is_constant(lambda2);
    DddReport {
        graph: g.label().unwrap_or("digraph").to_string(),
        n,
        has_loops: g.has_loops(),
        asymmetric,
        out_degrees,
        in_degrees,
        same_class: same,
        cross_class: cross,
        expected_degree,
        expected_lambda1: lambda1,
        expected_lambda2: lambda2,
        holds,
    }
}

/// Class of each vertex under the partition into `Z`-cosets.
pub fn coset_classes(c: &Construction) -> Vec<u32> {
    (0..c.n() as u32).map(|g| c.group().coset_id_idx(g)).collect()
}

/// Points `G`, blocks `X·g` indexed by `g`.
#[derive(Debug, Clone)]
pub struct IncidenceStructure {
    points: usize,
    blocks: Vec<Vec<u32>>,
}

impl IncidenceStructure {
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Row `b`, column `p` set iff point `p` lies in block `b`.
    pub fn incidence_matrix(&self) -> Digraph {
        let mut m = Digraph::empty(self.points);
        for (b, block) in self.blocks.iter().enumerate() {
            for &p in block {
                m.set_arc(b, p as usize, true);
            }
        }
        m
    }

    /// Number of blocks through each point.
    pub fn point_degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.points];
        for block in &self.blocks {
            for &p in block {
                d[p as usize] += 1;
            }
        }
        d
    }
}

pub fn dev(c: &Construction, i: FieldElement) -> IncidenceStructure {
    let h = c.group();
    let x = c.build_x(i);
    let blocks = (0..c.n() as u32)
        .map(|g| {
            let mut block: Vec<u32> = x.iter().map(|&s| h.mul_idx(s, g)).collect();
            block.sort_unstable();
            block
        })
        .collect();
    IncidenceStructure { points: c.n(), blocks }
}

#[derive(Debug, Clone)]
pub struct DesisoMaps {
    pub f: Vec<u32>,
    pub h: Vec<u32>,
    /// `det(A) = 1 - 16εi²`.
    pub det_a: FieldElement,
}

/// `det(A)` for the linear part of `H`.
pub fn det_a(c: &Construction, i: FieldElement) -> FieldElement {
    let f = c.field();
    let sixteen_eps = f.mul(f.from_int(16), c.epsilon());
    f.sub(FieldElement::ONE, f.mul(sixteen_eps, f.square(i)))
}

pub fn desiso_maps(c: &Construction, i: FieldElement) -> Result<DesisoMaps, Error> {
    let fl = c.field();
    let grp = c.group();
    let eps = c.epsilon();
    let half = fl.inv(fl.from_int(2))?;
    let four_i = fl.mul(fl.from_int(4), i);
    let norm_i = |a: FieldElement, b: FieldElement| fl.mul(fl.sub(fl.square(a), fl.mul(eps, fl.square(b))), i);

    let f_map: Vec<u32> = grp
        .elements()
        .map(|g| grp.index(GroupElement::new(g.x, g.y, fl.add(g.z, norm_i(g.x, g.y)))))
        .collect();

    let forward: Vec<u32> = grp
        .elements()
        .map(|g| {
            let (a2, b2, c2) = (g.x, g.y, g.z);
            let delta_prime = fl.mul(four_i, fl.mul(eps, b2));
            let sigma = fl.mul(four_i, a2);
            let a0 = fl.sub(a2, delta_prime);
            let b0 = fl.sub(b2, sigma);
            let c0 = fl.add(
                fl.sub(fl.add(c2, fl.mul(fl.mul(a0, b0), half)), fl.mul(fl.mul(a2, b2), half)),
                norm_i(a2, b2),
            );
            grp.index(GroupElement::new(a0, b0, c0))
        })
        .collect();
    let mut h_map = vec![u32::MAX; c.n()];
    for (g2, &g0) in forward.iter().enumerate() {
        if h_map[g0 as usize] != u32::MAX {
            return Err(Error::InternalConsistency(format!("H is not injective (det A = {})", det_a(c, i).index())));
        }
        h_map[g0 as usize] = g2 as u32;
    }
    let det = det_a(c, i);
    if det == FieldElement::ZERO {
        return Err(Error::InternalConsistency("det A = 0".into()));
    }
    Ok(DesisoMaps { f: f_map, h: h_map, det_a: det })
}

/// `g ∈ X_0·g_0` via `γ - γ_0 = (α - α_0)(β + β_0)/2`.
pub fn descond(c: &Construction, g: GroupElement, g0: GroupElement) -> bool {
    let f = c.field();
    let half = f.inv(f.from_int(2)).expect("odd characteristic");
    let lhs = f.sub(g.z, g0.z);
    let rhs = f.mul(f.mul(f.sub(g.x, g0.x), f.add(g.y, g0.y)), half);
    lhs == rhs
}

#[derive(Debug, Clone, Serialize)]
pub struct DesignIsoReport {
    pub q: u32,
    pub i: u32,
    pub crit_holds: bool,
    #[serde(rename = "det_A_nonzero")]
    pub det_a_nonzero: bool,
    pub pairs_checked: u64,
}

/// Checks `g ∈ X_0·g_0 ⇔ f(g) ∈ X_i·h(g_0)` over all `(g, g_0)` or a
/// fixed-seed sample.
pub fn verify_design_iso(c: &Construction, i: FieldElement, mode: PairMode) -> Result<DesignIsoReport, Error> {
    let maps = desiso_maps(c, i)?;
    let grp = c.group();
    let n = c.n();
    let mut in_xi = vec![false; n];
    for g in c.build_x(i) {
        in_xi[g as usize] = true;
    }
    let check = |g: u32, g0: u32| {
        let lhs = descond(c, grp.element(g), grp.element(g0));
        let rhs = in_xi[grp.right_quotient_idx(maps.f[g as usize], maps.h[g0 as usize]) as usize];
        lhs == rhs
    };
    let mut pairs = 0u64;
    let mut holds = true;
    match mode {
        PairMode::All => {
            for g in 0..n as u32 {
                for g0 in 0..n as u32 {
                    holds &= check(g, g0);
                    pairs += 1;
                }
            }
        }
        PairMode::Sampled { pairs: count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                holds &= check(rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
                pairs += 1;
            }
        }
    }
    Ok(DesignIsoReport {
        q: c.q(),
        i: i.index(),
        crit_holds: holds,
        det_a_nonzero: maps.det_a != FieldElement::ZERO,
        pairs_checked: pairs,
    })
}

/// Whether `f` carries every block `X_0·g_0` onto the block `X_i·h(g_0)`,
/// compared as sets.
pub fn blocks_map_onto(c: &Construction, i: FieldElement) -> Result<bool, Error> {
    let maps = desiso_maps(c, i)?;
    let d0 = dev(c, FieldElement::ZERO);
    let di = dev(c, i);
    Ok(d0.blocks().iter().enumerate().all(|(g0, block)| {
        let mut image: Vec<u32> = block.iter().map(|&p| maps.f[p as usize]).collect();
        image.sort_unstable();
        image == di.blocks()[maps.h[g0] as usize]
    }))
}

/// Whether the shortcut agrees with `g·g_0^-1 ∈ X_0` on all pairs or a
/// sample.
pub fn descond_agrees(c: &Construction, mode: PairMode) -> bool {
    let grp = c.group();
    let n = c.n();
    let mut in_x0 = vec![false; n];
    for g in c.build_x(FieldElement::ZERO) {
        in_x0[g as usize] = true;
    }
    let agree = |g: u32, g0: u32| {
        descond(c, grp.element(g), grp.element(g0)) == in_x0[grp.right_quotient_idx(g, g0) as usize]
    };
    match mode {
        PairMode::All => (0..n as u32).all(|g| (0..n as u32).all(|g0| agree(g, g0))),
        PairMode::Sampled { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..pairs).all(|_| agree(rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)))
        }
    }
}
