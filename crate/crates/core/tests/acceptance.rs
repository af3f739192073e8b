//! Acceptance checks. Runs every criterion, prints one PASS/FAIL line for
//! each and exits non-zero if any failed.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ddwl_core::coherent::{wl_close, wl_equivalent, CoherentConfiguration};
use ddwl_core::designs::{self, coset_classes, verify_ddd, PairMode};
use ddwl_core::gf::prime_power;
use ddwl_core::isotest::{self, Budget};
use ddwl_core::psi::{euler_phi, ExtendedIndex};
use ddwl_core::srings::{self, ConstantsMode, Inducedness};
use ddwl_core::{Construction, Digraph, FieldElement, SRing};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn con(q: u32) -> Construction {
    Construction::new(q).unwrap()
}

fn sorted_cells(c: &Construction) -> Vec<Vec<u32>> {
    let mut cells = vec![vec![0u32], c.center_nontrivial()];
    cells.extend(c.field().elements().map(|j| {
        let mut y = c.build_y(j);
        y.sort_unstable();
        y
    }));
    cells.sort();
    cells
}

fn ddd_counts(looped: bool) -> Outcome {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for q in [3u32, 5, 7] {
        let c = con(q);
        let classes = coset_classes(&c);
        let degree = if looped { q * q } else { q * q - 1 };
        let start = Instant::now();
        for i in c.generators_i() {
            let r = verify_ddd(&c.build_cayley(i, looped), &classes, degree, 0, q, PairMode::All);
            let summary = format!(
                "q={q} i={} deg={:?} same(in {:?}, out {:?}) cross(in {:?}, out {:?})",
                i.index(),
                r.out_degrees,
                r.same_class.c_in.distinct(),
                r.same_class.c_out.distinct(),
                r.cross_class.c_in.distinct(),
                r.cross_class.c_out.distinct()
            );
            if !r.holds {
                failures.push(summary);
            } else if notes.len() < 3 {
                notes.push(summary);
            }
        }
        if q == 7 && start.elapsed() > Duration::from_secs(60) {
            failures.push(format!("q=7 took {:?}", start.elapsed()));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(notes.join("; "))
}

fn dds_identity() -> Outcome {
    for q in [3u32, 5, 7, 9] {
        let c = con(q);
        let h = c.group();
        let n = c.n();
        for i in c.field().elements() {
            let x = c.build_x(i);
            let mut coeff = vec![0u32; n];
            for &a in &x {
                let ainv = h.inv(h.element(a));
                for &b in &x {
                    let g = h.mul(h.element(b), ainv);
                    coeff[h.index(g) as usize] += 1;
                }
            }
            for g in 0..n as u32 {
                let e = h.element(g);
                let want = if g == 0 {
                    q * q
                } else if e.x == FieldElement::ZERO && e.y == FieldElement::ZERO {
                    0
                } else {
                    q
                };
                ensure(coeff[g as usize] == want, || format!("q={q} i={} g={g}: {} != {want}", i.index(), coeff[g as usize]))?;
            }
        }
    }
    Ok("(q², 0, q) at (e, Z#, rest) for every i, q = 3,5,7,9".into())
}

fn psi_cyclic() -> Outcome {
    let mut orders = Vec::new();
    for q in [3u32, 5, 7, 9] {
        let c = con(q);
        let psi = c.psi_group();
        psi.verify_axioms().map_err(|e| format!("q={q}: {e}"))?;
        let full = psi.elements().into_iter().find(|&g| psi.element_order(g) == q as u64 + 1);
        let g = full.ok_or_else(|| format!("q={q}: no element of order {}", q + 1))?;
        let mut seen: Vec<ExtendedIndex> = (0..=q as u64).map(|m| psi.power(g, m)).collect();
        seen.sort();
        seen.dedup();
        ensure(seen.len() == q as usize + 1, || format!("q={q}: powers of {g} miss elements"))?;
        orders.push(format!("q={q}: {g} has order {}", q + 1));
    }
    Ok(orders.join(", "))
}

fn structure_constants() -> Outcome {
    let mut notes = Vec::new();
    for q in [3u32, 5, 7] {
        let c = con(q);
        let ring = SRing::cyclotomic(&c);
        let sc = srings::structure_constants(&ring, ConstantsMode::Full).map_err(|e| e.to_string())?;
        let (checked, mismatches) = srings::verify_consts(&c, &sc, &c.psi_group());
        ensure(mismatches.is_empty(), || format!("q={q}: {:?}", &mismatches[..mismatches.len().min(3)]))?;
        notes.push(format!("q={q}: {checked} constants"));
    }
    Ok(notes.join(", "))
}

fn wl_closure() -> Outcome {
    let mut notes = Vec::new();
    for q in [3u32, 5, 7] {
        let c = con(q);
        let cells = sorted_cells(&c);
        for i in c.generators_i() {
            let cc = wl_close(&c.build_cayley(i, true)).map_err(|e| e.to_string())?;
            ensure(cc.rank() == q as usize + 2, || format!("q={q} i={}: rank {}", i.index(), cc.rank()))?;
            let mut row: Vec<Vec<u32>> = cc.as_sring_partition().into_iter().map(|(_, m)| m).collect();
            row.sort();
            ensure(row == cells, || format!("q={q} i={}: e-row partition differs", i.index()))?;
        }
        notes.push(format!("q={q}: rank {} for I = {:?}", q + 2, c.generators_i().iter().map(|g| g.index()).collect::<Vec<_>>()));
    }
    Ok(notes.join(", "))
}

fn wl_equivalence() -> Outcome {
    let mut notes = Vec::new();
    for q in [3u32, 5, 7] {
        let c = con(q);
        let psi = c.psi_group();
        let ring = SRing::cyclotomic(&c);
        let gens = c.generators_i();
        let graphs: Vec<Digraph> = gens.iter().map(|&i| c.build_cayley(i, true)).collect();
        let closures: Vec<CoherentConfiguration> = graphs.iter().map(|g| wl_close(g).unwrap()).collect();
        for a in 0..gens.len() {
            for b in a + 1..gens.len() {
                ensure(wl_equivalent(&graphs[a], &graphs[b]), || format!("q={q}: Γ_{} vs Γ_{}", gens[a].index(), gens[b].index()))?;
            }
        }
        let from = ExtendedIndex::Finite(gens[0]);
        for (j, &target) in gens.iter().enumerate() {
            let target = ExtendedIndex::Finite(target);
            let m = psi
                .automorphism_exponents()
                .into_iter()
                .find(|&m| psi.power(from, m) == target)
                .ok_or_else(|| format!("q={q}: no τ reaches {target}"))?;
            let phi = srings::tau_hat(&c, &psi, m).map_err(|e| e.to_string())?;
            let sigma = srings::transport(&ring, &closures[0], &closures[j], &phi)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("q={q}: τ̂ for m={m} is not an algebraic isomorphism"))?;
            let mut image: Vec<u32> = closures[0].arc_colors(&graphs[0]).iter().map(|&k| sigma[k as usize]).collect();
            image.sort_unstable();
            ensure(image == closures[j].arc_colors(&graphs[j]), || format!("q={q}: τ̂ misses the arc colour of Γ_{target}"))?;
        }
        notes.push(format!("q={q}: {} graphs", gens.len()));
    }
    Ok(notes.join(", "))
}

fn non_isomorphism() -> Outcome {
    let mut notes = Vec::new();
    for q in [3u32, 5, 7] {
        let c = con(q);
        let gens = c.generators_i();
        let graphs: Vec<Digraph> = gens.iter().map(|&i| c.build_cayley(i, true)).collect();
        let start = Instant::now();
        let count = isotest::iso_class_count(&graphs, Budget::default());
        let took = start.elapsed();
        let exact = count.exact.ok_or_else(|| format!("q={q}: undecided comparisons {:?}", count.comparisons))?;
        if q == 7 {
            ensure(exact >= 2, || format!("q=7: only {exact} class"))?;
            ensure(took < Duration::from_secs(600), || format!("q=7 took {took:?}"))?;
        }
        let classes: Vec<Vec<u32>> = count.classes.iter().map(|cl| cl.iter().map(|&k| gens[k].index()).collect()).collect();
        notes.push(format!("q={q}: {exact} classes {classes:?} in {:.1}s", took.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn automorphisms() -> Outcome {
    let mut notes = Vec::new();
    for (q, want) in [(3u32, 216u128), (5, 3000)] {
        let c = con(q);
        let g = c.build_cayley(c.generators_i()[0], true);
        let order = isotest::automorphism_order(&g, Budget::default()).map_err(|e| format!("q={q}: budget exceeded after {}", e.nodes))?;
        ensure(order == want, || format!("q={q}: |Aut| = {order}, want {want}"))?;
        notes.push(format!("|Aut|={order} at q={q}"));
    }
    for q in [3u32, 5, 7, 9] {
        let c = con(q);
        let k = c.build_k().map_err(|e| e.to_string())?;
        for i in c.field().elements() {
            let g = c.build_cayley(i, true);
            for a in &k {
                let perm: Vec<usize> = a.perm.iter().map(|&v| v as usize).collect();
                ensure(g.is_isomorphism_to(&g, &perm), || format!("q={q} i={}: K element {:?} is not an automorphism", i.index(), a.matrix))?;
            }
        }
        notes.push(format!("|K|={} at q={q}", k.len()));
    }
    Ok(notes.join(", "))
}

fn algebraic_automorphisms() -> Outcome {
    let mut notes = Vec::new();
    for q in [3u32, 5, 7] {
        let c = con(q);
        let ring = SRing::cyclotomic(&c);
        let sc = srings::structure_constants(&ring, ConstantsMode::Full).map_err(|e| e.to_string())?;
        let autos = srings::algebraic_automorphisms(&sc).map_err(|e| e.to_string())?;
        let bound = euler_phi(q as u64 + 1);
        ensure(autos.len() as u64 >= bound, || format!("q={q}: {} < φ(q+1) = {bound}", autos.len()))?;
        let mut note = format!("q={q}: {} ≥ {bound}", autos.len());
        if q <= 5 {
            let (_, l) = prime_power(q).unwrap();
            let verdicts: Vec<Inducedness> = autos.iter().map(|phi| srings::is_induced(&ring, phi, Budget::default())).collect();
            ensure(!verdicts.contains(&Inducedness::Undetermined), || format!("q={q}: inducedness undecided"))?;
            let induced = verdicts.iter().filter(|v| **v == Inducedness::Induced).count();
            ensure(induced <= 2 * l as usize, || format!("q={q}: {induced} induced > {}", 2 * l))?;
            note += &format!(", {induced} induced");
        }
        notes.push(note);
    }
    Ok(notes.join("; "))
}

fn design_isomorphism() -> Outcome {
    for (q, mode) in [
        (3u32, PairMode::All),
        (5, PairMode::All),
        (7, PairMode::Sampled { pairs: 1_000_000, seed: 0x5eed }),
    ] {
        let c = con(q);
        for i in c.field().elements() {
            let r = designs::verify_design_iso(&c, i, mode).map_err(|e| e.to_string())?;
            ensure(r.crit_holds, || format!("q={q} i={}: membership criterion fails", i.index()))?;
        }
    }
    let mut supported = 0;
    for q in (3..=729u32).step_by(2).filter(|&q| prime_power(q).is_ok()) {
        let c = con(q);
        for i in c.field().elements() {
            ensure(designs::det_a(&c, i) != FieldElement::ZERO, || format!("q={q} i={}: det A = 0", i.index()))?;
        }
        supported += 1;
    }
    Ok(format!("exhaustive q=3,5; 10^6 pairs per i at q=7; det A ≠ 0 for {supported} field orders up to 729"))
}

fn one_point_extension() -> Outcome {
    let mut notes = Vec::new();
    for q in [3u32, 5] {
        let c = con(q);
        let cc = wl_close(&c.build_cayley(c.generators_i()[0], true)).map_err(|e| e.to_string())?;
        let ext = cc.one_point_extension(0).map_err(|e| e.to_string())?;
        let mut fibers: Vec<Vec<u32>> = ext.fibers().iter().map(|(_, m)| m.clone()).collect();
        fibers.sort();
        ensure(fibers == sorted_cells(&c), || format!("q={q}: fibers are not the basic sets"))?;
        let fiber_of = |set: &[u32]| {
            let mut s = set.to_vec();
            s.sort_unstable();
            ext.fibers().iter().find(|(_, m)| *m == s).map(|(id, _)| *id).unwrap()
        };
        let y0 = fiber_of(&c.build_y(FieldElement::ZERO));
        for j in c.field().elements().skip(1) {
            let yj = fiber_of(&c.build_y(j));
            let found = (0..ext.rank() as u32).any(|k| ext.color_fibers(k) == (y0, yj) && ext.valency(k) == 1);
            ensure(found, || format!("q={q}: no valency-1 colour in Y_0 × Y_{}", j.index()))?;
        }
        let inside: Vec<u32> = (0..ext.rank() as u32).filter(|&k| ext.color_fibers(k) == (y0, y0)).collect();
        ensure(inside.iter().all(|&k| ext.valency(k) == 1), || format!("q={q}: restriction to Y_0 has valency > 1"))?;
        ensure(inside.len() == q as usize * q as usize - 1, || format!("q={q}: restriction to Y_0 has {} colours", inside.len()))?;
        notes.push(format!("q={q}: rank {} with {} fibers", ext.rank(), fibers.len()));
    }
    Ok(notes.join(", "))
}

fn engine_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut graphs: Vec<Digraph> = Vec::new();
    for q in [3u32, 5] {
        let c = con(q);
        graphs.extend(c.field().elements().take(2).map(|i| c.build_cayley(i, true)));
    }
    graphs.push(Digraph::from_fn(20, |u, v| (u * 7 + v * 3) % 5 == 0 && u != v));
    for g in &graphs {
        let base = wl_close(g).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            let other = wl_close(&g.permuted(&perm)).map_err(|e| e.to_string())?;
            let same = other.tensor() == base.tensor()
                && (0..g.n()).all(|u| (0..g.n()).all(|v| other.color(perm[u], perm[v]) == base.color(u, v)));
            ensure(same, || format!("{}: relabeling changed the closure", g.label().unwrap_or("digraph")))?;
        }
        coherent_tensor_laws(&base)?;
    }
    for q in [3u32, 5, 7, 9] {
        let ring = SRing::cyclotomic(&con(q));
        let sc = srings::structure_constants(&ring, ConstantsMode::Full).map_err(|e| e.to_string())?;
        ensure(sc.check_triangle_identity().is_ok(), || format!("q={q}: triangle identity"))?;
        ensure(sc.check_mass_conservation().is_ok(), || format!("q={q}: mass conservation"))?;
    }
    for q in [3u32, 5, 7, 9, 11, 25, 27] {
        let c = con(q);
        let f = c.field();
        let els: Vec<FieldElement> = f.elements().collect();
        for &a in &els {
            for &b in &els {
                ensure(f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a), || format!("F_{q}: commutativity"))?;
                for &d in els.iter().take(9) {
                    ensure(f.mul(a, f.add(b, d)) == f.add(f.mul(a, b), f.mul(a, d)), || format!("F_{q}: distributivity"))?;
                    ensure(f.mul(f.mul(a, b), d) == f.mul(a, f.mul(b, d)), || format!("F_{q}: associativity"))?;
                }
            }
            if a != FieldElement::ZERO {
                ensure(f.mul(a, f.inv(a).unwrap()) == FieldElement::ONE, || format!("F_{q}: inverse"))?;
            }
        }
        let h = c.group();
        let n = (c.n() as u32).min(125);
        for a in 0..n {
            ensure(h.mul_idx(a, h.inv_idx(a)) == 0, || format!("H_3({q}): inverse"))?;
            for b in 0..n {
                for d in (0..n).step_by(7) {
                    ensure(h.mul_idx(h.mul_idx(a, b), d) == h.mul_idx(a, h.mul_idx(b, d)), || format!("H_3({q}): associativity"))?;
                }
            }
        }
    }
    Ok(format!("{} graphs × 10 relabelings; tensors and axiom suites consistent", graphs.len()))
}

/// `Σ_s c^t_{rs} = valency(r)` whenever `r` and `t` leave the same fiber.
fn coherent_tensor_laws(cc: &CoherentConfiguration) -> Result<(), String> {
    let r = cc.rank() as u32;
    for t in 0..r {
        let (ft, _) = cc.color_fibers(t);
        for a in 0..r {
            if cc.color_fibers(a).0 != ft {
                continue;
            }
            let sum: u32 = (0..r).map(|s| cc.intersection_number(a, s, t)).sum();
            ensure(sum == cc.valency(a), || format!("row sum for ({a}, {t}) is {sum}"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Criterion); 13] = [
        ("DDD parameters on loopless Γ_i (q=3,5,7)", || ddd_counts(false)),
        ("DDD parameters on Γ_i with loops (q=3,5,7)", || ddd_counts(true)),
        ("difference-set identity X_i X_i^-1", dds_identity),
        ("ψ is a cyclic group of order q+1", psi_cyclic),
        ("structure constants match closed forms", structure_constants),
        ("WL closure is the cyclotomic scheme", wl_closure),
        ("WL-equivalence and τ̂ transport", wl_equivalence),
        ("non-isomorphism classes", non_isomorphism),
        ("automorphism orders and K", automorphisms),
        ("algebraic automorphisms and inducedness", algebraic_automorphisms),
        ("design isomorphism dev(X_0) ≅ dev(X_i)", design_isomorphism),
        ("one-point extension structure", one_point_extension),
        ("engine properties", engine_properties),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} [{secs:.1}s]: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
