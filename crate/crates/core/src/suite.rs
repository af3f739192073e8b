//! The verification suite behind `ddwl verify`: every check for one `q`,
//! with a status and the numbers it rests on.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coherent::{self, CoherentConfiguration};
use crate::construction::Construction;
use crate::designs::{self, DddParameters, PairMode};
use crate::digraph::Digraph;
use crate::gf::{FieldElement, FieldSpec};
use crate::isotest::{self, Budget};
use crate::psi::{euler_phi, ExtendedIndex};
use crate::srings::{self, ConstantsMode, Inducedness, SRing};
use crate::Error;

pub const DEFAULT_SEED: u64 = 0xdd;

/// Check names in report order.
pub const CHECKS: [&str; 16] = [
    "field_axioms",
    "group_axioms",
    "psi_group",
    "dds_identity",
    "k_automorphisms",
    "ddd_loopless",
    "ddd_looped",
    "structure_constants",
    "wl_closure",
    "wl_equivalence",
    "wl_relabel_invariance",
    "algebraic_automorphisms",
    "automorphism_order",
    "iso_classes",
    "design_isomorphism",
    "one_point_extension",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Full,
    /// Fixed-seed samples in place of exhaustive pair loops; the expensive
    /// searches only for small `q`.
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

impl Status {
    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub data: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub name: &'static str,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub field: FieldSpec,
    pub q: u32,
    pub suite: Mode,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl RunReport {
    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// State shared between checks.
struct Ctx<'a> {
    c: &'a Construction,
    mode: Mode,
    seed: u64,
    generators: Vec<FieldElement>,
    ring: SRing,
    closures: Option<Vec<CoherentConfiguration>>,
}

impl Ctx<'_> {
    fn q(&self) -> u32 {
        self.c.q()
    }

    fn full(&self) -> bool {
        self.mode == Mode::Full
    }

    fn gamma(&self, i: FieldElement) -> Digraph {
        self.c.build_cayley(i, true)
    }

    fn pair_mode(&self, exhaustive_up_to: u32, samples: usize) -> PairMode {
        if self.full() || self.q() <= exhaustive_up_to {
            PairMode::All
        } else {
            PairMode::Sampled { pairs: samples, seed: self.seed }
        }
    }

    /// Joint WL closures of `Γ_i` for `i ∈ I`, in the order of `I`.
    fn closures(&mut self) -> Result<&[CoherentConfiguration], Error> {
        if self.closures.is_none() {
            let n = self.c.n();
            let inits = self.generators.iter().map(|&i| coherent::initial_coloring(&self.gamma(i))).collect();
            let closures = coherent::refine_jointly(n, inits)
                .into_iter()
                .map(CoherentConfiguration::from_coloring)
                .collect::<Result<Vec<_>, _>>()?;
            self.closures = Some(closures);
        }
        Ok(self.closures.as_deref().unwrap())
    }
}

pub fn run(c: &Construction, mode: Mode, seed: u64) -> RunReport {
    let mut ctx = Ctx {
        c,
        mode,
        seed,
        generators: c.generators_i(),
        ring: SRing::cyclotomic(c),
        closures: None,
    };
    let mut checks = Vec::with_capacity(CHECKS.len());
    let mut timings = Vec::with_capacity(CHECKS.len());
    for name in CHECKS {
        let start = Instant::now();
        let (status, data) = match run_check(&mut ctx, name) {
            Ok(r) => r,
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        };
        timings.push(Timing { name, millis: start.elapsed().as_millis() });
        checks.push(Check { name, status, data });
    }
    RunReport {
        tool: "ddwl",
        version: env!("CARGO_PKG_VERSION"),
        field: c.field().spec().clone(),
        q: c.q(),
        suite: mode,
        seed,
        checks,
        timings: Some(timings),
    }
}

fn run_check(ctx: &mut Ctx<'_>, name: &str) -> Result<(Status, Value), Error> {
    match name {
        "field_axioms" => Ok(field_axioms(ctx)),
        "group_axioms" => Ok(group_axioms(ctx)),
        "psi_group" => Ok(psi_group(ctx)),
        "dds_identity" => Ok(dds_identity(ctx)),
        "k_automorphisms" => k_automorphisms(ctx),
        "ddd_loopless" => Ok(ddd(ctx, false)),
        "ddd_looped" => Ok(ddd(ctx, true)),
        "structure_constants" => structure_constants(ctx),
        "wl_closure" => wl_closure(ctx),
        "wl_equivalence" => wl_equivalence(ctx),
        "wl_relabel_invariance" => wl_relabel_invariance(ctx),
        "algebraic_automorphisms" => algebraic_automorphisms(ctx),
        "automorphism_order" => Ok(automorphism_order(ctx)),
        "iso_classes" => Ok(iso_classes(ctx)),
        "design_isomorphism" => design_isomorphism(ctx),
        "one_point_extension" => one_point_extension(ctx),
        _ => unreachable!("unknown check {name}"),
    }
}

fn skipped(reason: &str) -> (Status, Value) {
    (Status::Undetermined, json!({ "skipped": reason }))
}

fn field_axioms(ctx: &Ctx<'_>) -> (Status, Value) {
    let f = ctx.c.field();
    let q = f.order();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut violations = Vec::new();
    for a in f.elements() {
        if f.add(a, FieldElement::ZERO) != a || f.mul(a, FieldElement::ONE) != a || f.add(a, f.neg(a)) != FieldElement::ZERO {
            violations.push(json!({ "law": "identity/negation", "a": a.index() }));
        }
        if a != FieldElement::ZERO && f.mul(a, f.inv(a).unwrap()) != FieldElement::ONE {
            violations.push(json!({ "law": "inverse", "a": a.index() }));
        }
    }
    let exhaustive = q <= 13;
    let triples: Vec<[u32; 3]> = if exhaustive {
        (0..q).flat_map(|a| (0..q).flat_map(move |b| (0..q).map(move |c| [a, b, c]))).collect()
    } else {
        (0..20_000).map(|_| [rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q)]).collect()
    };
    for &[a, b, c] in &triples {
        let (a, b, c) = (f.element(a).unwrap(), f.element(b).unwrap(), f.element(c).unwrap());
        let ok = f.add(a, b) == f.add(b, a)
            && f.mul(a, b) == f.mul(b, a)
            && f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
        if !ok && violations.len() < 10 {
            violations.push(json!({ "law": "ring", "triple": [a.index(), b.index(), c.index()] }));
        }
    }
    let data = json!({ "exhaustive": exhaustive, "triples": triples.len(), "violations": violations });
    (Status::from_bool(violations.is_empty()), data)
}

fn group_axioms(ctx: &Ctx<'_>) -> (Status, Value) {
    let h = ctx.c.group();
    let n = h.order() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut violations = Vec::new();
    for a in 0..n {
        if h.mul_idx(a, 0) != a || h.mul_idx(0, a) != a || h.mul_idx(a, h.inv_idx(a)) != 0 {
            violations.push(json!({ "law": "identity/inverse", "a": a }));
        }
    }
    let exhaustive = n <= 125;
    let mut triples = 0u64;
    let mut assoc = |a: u32, b: u32, c: u32| {
        triples += 1;
        if h.mul_idx(h.mul_idx(a, b), c) != h.mul_idx(a, h.mul_idx(b, c)) && violations.len() < 10 {
            violations.push(json!({ "law": "associativity", "triple": [a, b, c] }));
        }
    };
    if exhaustive {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assoc(a, b, c);
                }
            }
        }
    } else {
        for _ in 0..100_000 {
            assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        }
    }
    let center = h.center().len();
    let ok = violations.is_empty() && center == ctx.q() as usize;
    (Status::from_bool(ok), json!({ "exhaustive": exhaustive, "triples": triples, "center_size": center, "violations": violations }))
}

fn psi_group(ctx: &Ctx<'_>) -> (Status, Value) {
    let psi = ctx.c.psi_group();
    let axioms = psi.verify_axioms();
    let witness = ctx.generators.first().map(|g| g.index());
    let ok = axioms.is_ok() && witness.is_some() && ctx.generators.len() as u64 == euler_phi(psi.order());
    let data = json!({
        "order": psi.order(),
        "delta": psi.delta().index(),
        "axioms": axioms.err(),
        "generator_of_full_order": witness,
        "generators": ctx.generators.iter().map(|g| g.index()).collect::<Vec<_>>(),
    });
    (Status::from_bool(ok), data)
}

fn dds_identity(ctx: &Ctx<'_>) -> (Status, Value) {
    let reports: Vec<_> = ctx.c.field().elements().map(|i| srings::verify_transversal(ctx.c, i)).collect();
    let ok = reports.iter().all(|r| r.forward_holds);
    (Status::from_bool(ok), json!({ "expected": [ctx.q().pow(2), 0, ctx.q()], "per_i": reports }))
}

fn k_automorphisms(ctx: &Ctx<'_>) -> Result<(Status, Value), Error> {
    let k = ctx.c.build_k()?;
    let orbits = ctx.c.k_orbits(&k);
    let mut cells = ctx.ring.cells().to_vec();
    cells.sort();
    let orbits_match = orbits == cells;
    let graphs: Vec<Digraph> = ctx.c.field().elements().map(|i| ctx.gamma(i)).collect();
    let failing: Vec<Value> = k
        .iter()
        .flat_map(|a| {
            let perm: Vec<usize> = a.perm.iter().map(|&v| v as usize).collect();
            graphs
                .iter()
                .enumerate()
                .filter(move |(_, g)| !g.is_isomorphism_to(g, &perm))
                .map(move |(i, _)| json!({ "matrix": [a.matrix.alpha.index(), a.matrix.beta.index()], "i": i }))
        })
        .take(10)
        .collect();
    let ok = orbits_match && failing.is_empty();
    Ok((Status::from_bool(ok), json!({ "k_order": k.len(), "orbits": orbits.len(), "orbits_match_cells": orbits_match, "not_automorphisms": failing })))
}

fn ddd(ctx: &Ctx<'_>, looped: bool) -> (Status, Value) {
    let q = ctx.q();
    let classes = designs::coset_classes(ctx.c);
    let k = if looped { q * q } else { q * q - 1 };
    let mode = ctx.pair_mode(5, 20_000);
    let reports: Vec<_> = ctx
        .generators
        .iter()
        .map(|&i| designs::verify_ddd(&ctx.c.build_cayley(i, looped), &classes, k, 0, q, mode))
        .collect();
    let ok = reports.iter().all(|r| r.holds);
    let data = json!({
        "loops": looped,
        "parameters": DddParameters::expected(q),
        "sampled": matches!(mode, PairMode::Sampled { .. }),
        "per_i": reports,
    });
    (Status::from_bool(ok), data)
}

fn structure_constants(ctx: &Ctx<'_>) -> Result<(Status, Value), Error> {
    let mode = if ctx.full() || ctx.q() <= 3 { ConstantsMode::Full } else { ConstantsMode::Sampled { checks: 64, seed: ctx.seed } };
    let sc = srings::structure_constants(&ctx.ring, mode)?;
    let psi = ctx.c.psi_group();
    let (checked, mismatches) = srings::verify_consts(ctx.c, &sc, &psi);
    let triangle = sc.check_triangle_identity().err();
    let mass = sc.check_mass_conservation().err();
    let ok = mismatches.is_empty() && triangle.is_none() && mass.is_none();
    let data = json!({
        "full_convolution": mode == ConstantsMode::Full,
        "closed_forms_checked": checked,
        "mismatches": mismatches,
        "triangle_violation": triangle,
        "mass_violation": mass,
    });
    Ok((Status::from_bool(ok), data))
}

fn wl_closure(ctx: &mut Ctx<'_>) -> Result<(Status, Value), Error> {
    let q = ctx.q();
    let mut cells = ctx.ring.cells().to_vec();
    cells.sort();
    let generators = ctx.generators.clone();
    let closures = ctx.closures()?;
    let per_i: Vec<Value> = generators
        .iter()
        .zip(closures)
        .map(|(i, cc)| {
            let mut row: Vec<Vec<u32>> = cc.as_sring_partition().into_iter().map(|(_, m)| m).collect();
            row.sort();
            json!({ "i": i.index(), "rank": cc.rank(), "rounds": cc.coloring().rounds(), "row_partition_is_cyclotomic": row == cells })
        })
        .collect();
    let ok = per_i.iter().all(|r| r["rank"] == q as usize + 2 && r["row_partition_is_cyclotomic"] == true);
    Ok((Status::from_bool(ok), json!({ "expected_rank": q + 2, "per_i": per_i })))
}

fn wl_equivalence(ctx: &mut Ctx<'_>) -> Result<(Status, Value), Error> {
    let c = ctx.c;
    let (full, q) = (ctx.full(), ctx.q());
    let psi = c.psi_group();
    let ring = ctx.ring.clone();
    let generators = ctx.generators.clone();
    let closures = ctx.closures()?;
    let base = &closures[0];
    let i0 = ExtendedIndex::Finite(generators[0]);
    let mut pairs = Vec::new();
    let mut ok = true;
    for (j, cc) in closures.iter().enumerate() {
        let histogram = cc.color_multiset() == base.color_multiset() && cc.tensor() == base.tensor();
        let target = ExtendedIndex::Finite(generators[j]);
        let m = psi.automorphism_exponents().into_iter().find(|&m| psi.power(i0, m) == target);
        let tau_ok = match m {
            Some(m) => {
                let phi = srings::tau_hat(c, &psi, m)?;
                let arc_from = base.color(0, ring.cells()[srings::cyclotomic_cell(q, i0)][0] as usize);
                let arc_to = cc.color(0, ring.cells()[srings::cyclotomic_cell(q, target)][0] as usize);
                srings::transport(&ring, base, cc, &phi)?.is_some_and(|sigma| sigma[arc_from as usize] == arc_to)
            }
            None => false,
        };
        ok &= histogram && tau_ok;
        pairs.push(json!({ "i": generators[0].index(), "j": generators[j].index(), "exponent": m, "joint_histograms_equal": histogram, "tau_hat_verified": tau_ok }));
    }
    // The disjoint-union route for one pair, as a cross-check.
    let union = if generators.len() > 1 && (full || q <= 5) {
        let w = coherent::wl_compare(&c.build_cayley(generators[0], true), &c.build_cayley(generators[generators.len() - 1], true));
        ok &= w.equivalent;
        Some(w)
    } else {
        None
    };
    Ok((Status::from_bool(ok), json!({ "pairs": pairs, "disjoint_union_first_last": union })))
}

fn wl_relabel_invariance(ctx: &mut Ctx<'_>) -> Result<(Status, Value), Error> {
    let rounds = if ctx.full() && ctx.c.n() <= 343 { 10 } else { 2 };
    let g = ctx.gamma(ctx.generators[0]);
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let seed = ctx.seed;
    let base = &ctx.closures()?[0];
    let mut failures = 0;
    for _ in 0..rounds {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let other = coherent::wl_close(&g.permuted(&perm))?;
        let same = other.rank() == base.rank()
            && other.tensor() == base.tensor()
            && (0..n).all(|u| (0..n).all(|v| other.color(perm[u], perm[v]) == base.color(u, v)));
        failures += usize::from(!same);
    }
    Ok((Status::from_bool(failures == 0), json!({ "relabelings": rounds, "seed": seed, "failures": failures })))
}

fn algebraic_automorphisms(ctx: &Ctx<'_>) -> Result<(Status, Value), Error> {
    let q = ctx.q();
    let sc = srings::structure_constants(&ctx.ring, ConstantsMode::Sampled { checks: 16, seed: ctx.seed })?;
    let autos = srings::algebraic_automorphisms(&sc)?;
    let psi = ctx.c.psi_group();
    let phi_bound = euler_phi(psi.order());
    let taus_found = psi
        .automorphism_exponents()
        .into_iter()
        .map(|m| srings::tau_hat(ctx.c, &psi, m))
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .all(|t| autos.contains(t));
    let log_bound = 2 * ctx.c.field().degree() as usize;
    let (induced, induced_ok) = if q <= 5 {
        let verdicts: Vec<Inducedness> = autos.iter().map(|phi| srings::is_induced(&ctx.ring, phi, Budget::default())).collect();
        let count = verdicts.iter().filter(|v| **v == Inducedness::Induced).count();
        let decided = !verdicts.contains(&Inducedness::Undetermined);
        (json!({ "verdicts": verdicts, "count": count, "bound": log_bound }), decided && count <= log_bound)
    } else {
        (Value::Null, true)
    };
    let ok = autos.len() as u64 >= phi_bound && taus_found && srings::is_closed_group(&autos) && induced_ok;
    let data = json!({ "count": autos.len(), "phi_q_plus_1": phi_bound, "tau_hats_present": taus_found, "induced": induced });
    Ok((Status::from_bool(ok), data))
}

fn automorphism_order(ctx: &Ctx<'_>) -> (Status, Value) {
    let q = ctx.q() as u128;
    if ctx.c.n() > 343 && !ctx.full() {
        return skipped("fast suite searches automorphisms only up to q = 7");
    }
    let expected = q.pow(3) * (q * q - 1);
    let i = ctx.generators[0];
    match isotest::automorphism_group(&ctx.gamma(i), Budget::default()) {
        Ok(aut) => {
            let data = json!({ "i": i.index(), "order": aut.order.to_string(), "expected": expected.to_string(), "orbit_sizes": aut.orbit_sizes, "nodes": aut.nodes });
            (Status::from_bool(aut.order == expected), data)
        }
        Err(e) => (Status::Undetermined, json!({ "i": i.index(), "budget_exceeded_after": e.nodes })),
    }
}

fn iso_classes(ctx: &Ctx<'_>) -> (Status, Value) {
    if ctx.c.n() > 343 && !ctx.full() {
        return skipped("fast suite compares graphs only up to q = 7");
    }
    let graphs: Vec<Digraph> = ctx.generators.iter().map(|&i| ctx.gamma(i)).collect();
    let count = isotest::iso_class_count(&graphs, Budget::default());
    let l = ctx.c.field().degree() as u64;
    let bound = euler_phi(ctx.c.psi_group().order()) / (2 * l);
    let psi = ctx.c.psi_group();
    let chi_pairs: Vec<bool> = ctx
        .generators
        .iter()
        .enumerate()
        .filter_map(|(k, &i)| {
            let minus = psi.chi(ExtendedIndex::Finite(i)).finite()?;
            let m = ctx.generators.iter().position(|&g| g == minus)?;
            Some(count.classes.iter().any(|cl| cl.contains(&k) && cl.contains(&m)))
        })
        .collect();
    let status = if count.lower_bound as u64 >= bound {
        Status::Pass
    } else if count.exact.is_none() {
        Status::Undetermined
    } else {
        Status::Fail
    };
    let generators: Vec<u32> = ctx.generators.iter().map(|g| g.index()).collect();
    let data = json!({
        "generators": generators,
        "lower_bound_claimed": bound,
        "gamma_i_iso_gamma_minus_i": chi_pairs.iter().all(|&b| b),
        "count": count,
    });
    (status, data)
}

fn design_isomorphism(ctx: &Ctx<'_>) -> Result<(Status, Value), Error> {
    let q = ctx.q();
    let mode = if q <= 5 || (ctx.full() && q <= 7) {
        PairMode::All
    } else {
        PairMode::Sampled { pairs: 1_000_000, seed: ctx.seed }
    };
    let reports = ctx
        .c
        .field()
        .elements()
        .map(|i| designs::verify_design_iso(ctx.c, i, mode))
        .collect::<Result<Vec<_>, _>>()?;
    let blocks = if q <= 5 {
        let all = ctx.c.field().elements().map(|i| designs::blocks_map_onto(ctx.c, i)).collect::<Result<Vec<_>, _>>()?;
        Some(all.into_iter().all(|b| b))
    } else {
        None
    };
    let shortcut_mode = if q <= 3 { PairMode::All } else { PairMode::Sampled { pairs: 20_000, seed: ctx.seed } };
    let shortcut = designs::descond_agrees(ctx.c, shortcut_mode);
    let ok = reports.iter().all(|r| r.crit_holds && r.det_a_nonzero) && blocks != Some(false) && shortcut;
    let data = json!({
        "exhaustive": mode == PairMode::All,
        "per_i": reports,
        "block_images_match": blocks,
        "membership_shortcut_agrees": shortcut,
    });
    Ok((Status::from_bool(ok), data))
}

fn one_point_extension(ctx: &mut Ctx<'_>) -> Result<(Status, Value), Error> {
    if ctx.q() > 5 {
        return Ok(skipped("one-point extension is examined for q <= 5"));
    }
    let c = ctx.c;
    let ring = ctx.ring.clone();
    let ext = ctx.closures()?[0].one_point_extension(0)?;
    Ok(one_point_report(c, &ring, &ext))
}

/// Fibers against the cyclotomic cells, valency-1 colours in `Y_0 × Y_j`,
/// and the restriction to `Y_0`.
pub fn one_point_report(c: &Construction, ring: &SRing, ext: &CoherentConfiguration) -> (Status, Value) {
    let q = c.q();
    let mut cells = ring.cells().to_vec();
    cells.sort();
    let mut fibers: Vec<Vec<u32>> = ext.fibers().iter().map(|(_, m)| m.clone()).collect();
    fibers.sort();
    let fibers_match = fibers == cells;
    let fiber_id = |set: &[u32]| ext.fibers().iter().find(|(_, m)| m.as_slice() == set).map(|(id, _)| *id);
    let y = |j: u32| &ring.cells()[srings::cyclotomic_cell(q, ExtendedIndex::Finite(c.field().element(j).unwrap()))];
    let y0 = fiber_id(y(0));
    let mut valency_one = Vec::new();
    let mut restriction_regular = false;
    if let Some(f0) = y0 {
        for j in 1..q {
            let found = fiber_id(y(j)).is_some_and(|fj| (0..ext.rank() as u32).any(|c| ext.color_fibers(c) == (f0, fj) && ext.valency(c) == 1));
            valency_one.push(found);
        }
        let inside: Vec<u32> = (0..ext.rank() as u32).filter(|&c| ext.color_fibers(c) == (f0, f0)).collect();
        restriction_regular = inside.iter().all(|&c| ext.valency(c) == 1) && inside.len() == y(0).len();
    }
    let ok = fibers_match && valency_one.iter().all(|&b| b) && valency_one.len() == q as usize - 1 && restriction_regular;
    let data = json!({
        "rank": ext.rank(),
        "fibers": fibers.len(),
        "fibers_are_basic_sets": fibers_match,
        "valency_one_in_y0_yj": valency_one,
        "y0_restriction_regular": restriction_regular,
    });
    (Status::from_bool(ok), data)
}
