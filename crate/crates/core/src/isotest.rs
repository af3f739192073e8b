//! Isomorphism testing and automorphism groups by individualization and
//! refinement.
//!
//! Pair colours come from a joint 2-WL refinement of the inputs, so equal
//! ids mean the same thing on both sides. Inside the search only vertex
//! colours are refined: a vertex `w` is recoloured by its colour and the
//! multiset of `(c(v,w), c(w,v), vc(v))`. Both sides are refined in lockstep
//! and a branch dies as soon as their colour histograms differ.
//!
//! The automorphism group is built level by level along the first path of
//! the search tree (base `b_0, b_1, …`): the orbit of `b_m` under the
//! pointwise stabilizer of `b_0..b_{m-1}` is collected from the deepest level
//! up, and the group order is the product of the orbit sizes.

use std::collections::HashMap;

use serde::Serialize;

use crate::coherent::{initial_coloring, refine, refine_jointly};
use crate::digraph::Digraph;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Refinement calls allowed before the search gives up.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: DEFAULT_NODE_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantDiff {
    pub invariant: String,
    pub left: serde_json::Value,
    pub right: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum IsoCertificate {
    /// `mapping[u]` is the image of vertex `u`.
    Isomorphic { mapping: Vec<u32> },
    NonIsomorphic { invariant_diff: InvariantDiff },
    Undetermined { nodes: u64 },
}

impl IsoCertificate {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoCertificate::Isomorphic { .. })
    }

    pub fn is_non_isomorphic(&self) -> bool {
        matches!(self, IsoCertificate::NonIsomorphic { .. })
    }
}

/// A stable pair colouring with a transposed copy for row access to
/// `c(w, v)` and `c(v, w)` alike.
struct Colored {
    n: usize,
    c: Vec<u32>,
    ct: Vec<u32>,
}

const FIELD_BITS: u32 = 21;

impl Colored {
    fn new(n: usize, c: Vec<u32>) -> Colored {
        assert!(n < 1 << FIELD_BITS && c.iter().all(|&x| x < 1 << FIELD_BITS));
        let mut ct = vec![0u32; n * n];
        for u in 0..n {
            for v in 0..n {
                ct[v * n + u] = c[u * n + v];
            }
        }
        Colored { n, c, ct }
    }

    fn diagonal(&self) -> Vec<u32> {
        (0..self.n).map(|v| self.c[v * self.n + v]).collect()
    }

    fn signature(&self, vc: &[u32], w: usize, buf: &mut Vec<u64>) -> Vec<(u64, u32)> {
        let n = self.n;
        buf.clear();
        let into_w = &self.ct[w * n..(w + 1) * n];
        let out_of_w = &self.c[w * n..(w + 1) * n];
        for v in 0..n {
            buf.push(((into_w[v] as u64) << (2 * FIELD_BITS)) | ((out_of_w[v] as u64) << FIELD_BITS) | vc[v] as u64);
        }
        buf.sort_unstable();
        let mut sig: Vec<(u64, u32)> = Vec::new();
        for &k in buf.iter() {
            match sig.last_mut() {
                Some((last, c)) if *last == k => *c += 1,
                _ => sig.push((k, 1)),
            }
        }
        sig
    }
}

fn color_count(vc: &[u32]) -> usize {
    vc.iter().max().map_or(0, |&m| m as usize + 1)
}

fn histogram(vc: &[u32], k: usize) -> Vec<u32> {
    let mut h = vec![0u32; k];
    for &c in vc {
        h[c as usize] += 1;
    }
    h
}

/// Refines `va` against `a` and `vb` against `b` in lockstep. Ids stay
/// canonical and contiguous. Returns false once the histograms differ.
fn refine_pair(a: &Colored, b: &Colored, va: &mut [u32], vb: &mut [u32]) -> bool {
    let n = a.n;
    let mut count = color_count(va).max(color_count(vb));
    if histogram(va, count) != histogram(vb, count) {
        return false;
    }
    let mut buf = Vec::with_capacity(n);
    loop {
        let mut interned: HashMap<(u32, Vec<(u64, u32)>), u32> = HashMap::new();
        let mut temp_a = vec![0u32; n];
        let mut temp_b = vec![0u32; n];
        for (side, vc, temp) in [(a, &*va, &mut temp_a), (b, &*vb, &mut temp_b)] {
            for w in 0..n {
                let sig = side.signature(vc, w, &mut buf);
                let next = interned.len() as u32;
                temp[w] = *interned.entry((vc[w], sig)).or_insert(next);
            }
        }
        let mut keys: Vec<_> = interned.into_iter().collect();
        keys.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        let mut canonical = vec![0u32; keys.len()];
        for (new, (_, t)) in keys.iter().enumerate() {
            canonical[*t as usize] = new as u32;
        }
        for w in 0..n {
            va[w] = canonical[temp_a[w] as usize];
            vb[w] = canonical[temp_b[w] as usize];
        }
        if histogram(va, keys.len()) != histogram(vb, keys.len()) {
            return false;
        }
        if keys.len() == count {
            return true;
        }
        count = keys.len();
    }
}

/// Smallest non-singleton cell, ties by lowest colour id.
fn target_cell(vc: &[u32]) -> Option<u32> {
    let h = histogram(vc, color_count(vc));
    (0..h.len() as u32).filter(|&c| h[c as usize] > 1).min_by_key(|&c| (h[c as usize], c))
}

fn members(vc: &[u32], color: u32) -> Vec<usize> {
    (0..vc.len()).filter(|&v| vc[v] == color).collect()
}

#[derive(Clone, Copy)]
enum Prune<'a> {
    None,
    /// The target prefix so far is `aut.base[..depth]`.
    OnBase { aut: &'a AutGroup, depth: usize },
}

struct Searcher<'a> {
    a: &'a Colored,
    b: &'a Colored,
    nodes: u64,
    budget: u64,
}

/// Vertex colourings of source and target after individualizing and refining.
type RefinedPair = (Vec<u32>, Vec<u32>);

impl Searcher<'_> {
    fn descend(&mut self, va: &[u32], vb: &[u32], x: usize, y: usize) -> Result<Option<RefinedPair>, BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExceeded { nodes: self.nodes });
        }
        let k = color_count(va) as u32;
        let (mut na, mut nb) = (va.to_vec(), vb.to_vec());
        na[x] = k;
        nb[y] = k;
        Ok(refine_pair(self.a, self.b, &mut na, &mut nb).then_some((na, nb)))
    }

    fn leaf(&self, va: &[u32], vb: &[u32]) -> Option<Vec<u32>> {
        let n = self.a.n;
        let mut by_color = vec![0u32; n];
        for (v, &c) in vb.iter().enumerate() {
            by_color[c as usize] = v as u32;
        }
        let map: Vec<u32> = va.iter().map(|&c| by_color[c as usize]).collect();
        let ok = (0..n).all(|u| {
            let fu = map[u] as usize;
            (0..n).all(|v| self.a.c[u * n + v] == self.b.c[fu * n + map[v] as usize])
        });
        ok.then_some(map)
    }

    fn search(&mut self, va: &[u32], vb: &[u32], prune: Prune<'_>) -> Result<Option<Vec<u32>>, BudgetExceeded> {
        let Some(color) = target_cell(va) else {
            return Ok(self.leaf(va, vb));
        };
        let x = members(va, color)[0];
        let cands = members(vb, color);
        let (order, base_child) = match prune {
            Prune::OnBase { aut, depth } if depth < aut.base.len() => {
                let labels = &aut.level_orbits[depth];
                let b = aut.base[depth] as usize;
                let mut order = Vec::new();
                let mut seen: Vec<u32> = Vec::new();
                if cands.contains(&b) {
                    order.push(b);
                    seen.push(labels[b]);
                }
                for &y in &cands {
                    if !seen.contains(&labels[y]) {
                        seen.push(labels[y]);
                        order.push(y);
                    }
                }
                (order, Some((aut, depth, b)))
            }
            _ => (cands, None),
        };
        for y in order {
            if let Some((na, nb)) = self.descend(va, vb, x, y)? {
                let child = match base_child {
                    Some((aut, depth, b)) if b == y => Prune::OnBase { aut, depth: depth + 1 },
                    _ => Prune::None,
                };
                if let Some(map) = self.search(&na, &nb, child)? {
                    return Ok(Some(map));
                }
            }
        }
        Ok(None)
    }
}

/// The automorphism group of a pair colouring, as a base with the orbit
/// data of its stabilizer chain.
#[derive(Debug, Clone, Serialize)]
pub struct AutGroup {
    /// Saturates at `u128::MAX`.
    pub order: u128,
    pub base: Vec<u32>,
    /// `orbit_sizes[m]` is the orbit of `base[m]` under the pointwise
    /// stabilizer of `base[..m]`.
    pub orbit_sizes: Vec<usize>,
    pub generators: Vec<Vec<u32>>,
    /// Level at which each generator was found; it fixes `base[..level]`.
    pub generator_levels: Vec<usize>,
    /// `level_orbits[m][v]`: smallest vertex in the orbit of `v` under the
    /// pointwise stabilizer of `base[..m]`.
    #[serde(skip)]
    pub level_orbits: Vec<Vec<u32>>,
    pub nodes: u64,
}

impl AutGroup {
    /// Orbits of the stabilizer of `base[..m]`, each sorted, by smallest
    /// member.
    pub fn orbits(&self, m: usize) -> Vec<Vec<u32>> {
        let mut out: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for (v, &l) in self.level_orbits[m].iter().enumerate() {
            out.entry(l).or_default().push(v as u32);
        }
        out.into_values().collect()
    }

    /// Order of the stabilizer of `base[0]`.
    pub fn point_stabilizer_order(&self) -> u128 {
        self.orbit_sizes.iter().skip(1).fold(1u128, |acc, &s| acc.saturating_mul(s as u128))
    }
}

fn orbit_labels(n: usize, gens: &[&Vec<u32>]) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for g in gens {
        for v in 0..n as u32 {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g[v as usize]));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi as usize] = lo;
            }
        }
    }
    (0..n as u32).map(|v| find(&mut parent, v)).collect()
}

fn automorphism_group_of(p: &Colored, budget: Budget) -> Result<AutGroup, BudgetExceeded> {
    let n = p.n;
    let mut s = Searcher { a: p, b: p, nodes: 0, budget: budget.max_nodes };
    let mut root = p.diagonal();
    let mut root_b = root.clone();
    refine_pair(p, p, &mut root, &mut root_b);
    let mut partitions = vec![root];
    let mut base: Vec<usize> = Vec::new();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    while let Some(color) = target_cell(partitions.last().expect("root")) {
        let last = partitions.last().expect("root");
        let cell = members(last, color);
        let x = cell[0];
        let (next, _) = s.descend(last, last, x, x)?.expect("a vertex against itself never fails");
        base.push(x);
        cells.push(cell);
        partitions.push(next);
    }
    let k = base.len();
    let mut gens: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut orbit_sizes = vec![1usize; k];
    for m in (0..k).rev() {
        let mut labels = orbit_labels(n, &gens.iter().map(|(_, g)| g).collect::<Vec<_>>());
        let mut failed = vec![false; n];
        for &w in &cells[m] {
            if labels[w] == labels[base[m]] || failed[w] {
                continue;
            }
            let found = match s.descend(&partitions[m], &partitions[m], base[m], w)? {
                Some((na, nb)) => s.search(&na, &nb, Prune::None)?,
                None => None,
            };
            match found {
                Some(g) => {
                    gens.push((m, g));
                    labels = orbit_labels(n, &gens.iter().map(|(_, g)| g).collect::<Vec<_>>());
                }
                None => {
                    let l = labels[w];
                    for v in 0..n {
                        if labels[v] == l {
                            failed[v] = true;
                        }
                    }
                }
            }
        }
        orbit_sizes[m] = labels.iter().filter(|&&l| l == labels[base[m]]).count();
    }
    let level_orbits = (0..=k)
        .map(|m| orbit_labels(n, &gens.iter().filter(|(l, _)| *l >= m).map(|(_, g)| g).collect::<Vec<_>>()))
        .collect();
    Ok(AutGroup {
        order: orbit_sizes.iter().fold(1u128, |acc, &s| acc.saturating_mul(s as u128)),
        base: base.iter().map(|&b| b as u32).collect(),
        orbit_sizes,
        generator_levels: gens.iter().map(|(l, _)| *l).collect(),
        generators: gens.into_iter().map(|(_, g)| g).collect(),
        level_orbits,
        nodes: s.nodes,
    })
}

/// Automorphisms of a pair colouring (`n × n`, row-major).
pub fn automorphism_group_colored(n: usize, colors: &[u32], budget: Budget) -> Result<AutGroup, BudgetExceeded> {
    let stable = refine(n, colors.to_vec());
    automorphism_group_of(&Colored::new(n, stable.colors().to_vec()), budget)
}

pub fn automorphism_group(g: &Digraph, budget: Budget) -> Result<AutGroup, BudgetExceeded> {
    let aut = automorphism_group_colored(g.n(), &initial_coloring(g), budget)?;
    for gen in &aut.generators {
        let map: Vec<usize> = gen.iter().map(|&v| v as usize).collect();
        assert!(g.is_isomorphism_to(g, &map), "emitted generator is not an automorphism");
    }
    Ok(aut)
}

pub fn automorphism_order(g: &Digraph, budget: Budget) -> Result<u128, BudgetExceeded> {
    automorphism_group(g, budget).map(|a| a.order)
}

fn diff(invariant: &str, left: impl Serialize, right: impl Serialize) -> IsoCertificate {
    IsoCertificate::NonIsomorphic {
        invariant_diff: InvariantDiff {
            invariant: invariant.to_string(),
            left: serde_json::to_value(left).expect("serializable"),
            right: serde_json::to_value(right).expect("serializable"),
        },
    }
}

/// Isomorphism between two pair colourings: a bijection `f` with
/// `c2(f(u), f(v)) = c1(u, v)`. `aut2`, if given, must be the group of the
/// second colouring; it prunes the search.
pub fn are_isomorphic_colored_with(
    n: usize,
    c1: &[u32],
    c2: &[u32],
    aut2: Option<&AutGroup>,
    budget: Budget,
) -> IsoCertificate {
    let stable = refine_jointly(n, vec![c1.to_vec(), c2.to_vec()]);
    let hist = |c: &[u32]| {
        let mut h: Vec<(u32, u64)> = Vec::new();
        let mut sorted = c.to_vec();
        sorted.sort_unstable();
        for x in sorted {
            match h.last_mut() {
                Some((k, m)) if *k == x => *m += 1,
                _ => h.push((x, 1)),
            }
        }
        h
    };
    let (h1, h2) = (hist(stable[0].colors()), hist(stable[1].colors()));
    if h1 != h2 {
        return diff("wl-colour-histogram", h1, h2);
    }
    let a = Colored::new(n, stable[0].colors().to_vec());
    let b = Colored::new(n, stable[1].colors().to_vec());
    let mut s = Searcher { a: &a, b: &b, nodes: 0, budget: budget.max_nodes };
    let (mut va, mut vb) = (a.diagonal(), b.diagonal());
    if !refine_pair(&a, &b, &mut va, &mut vb) {
        return diff("vertex-refinement", hist(&va), hist(&vb));
    }
    let prune = aut2.map_or(Prune::None, |aut| Prune::OnBase { aut, depth: 0 });
    match s.search(&va, &vb, prune) {
        Ok(Some(mapping)) => IsoCertificate::Isomorphic { mapping },
        Ok(None) => diff("exhaustive-search-nodes", s.nodes, s.nodes),
        Err(e) => IsoCertificate::Undetermined { nodes: e.nodes },
    }
}

pub fn are_isomorphic_colored(n: usize, c1: &[u32], c2: &[u32], budget: Budget) -> IsoCertificate {
    are_isomorphic_colored_with(n, c1, c2, None, budget)
}

pub fn are_isomorphic_with(g1: &Digraph, g2: &Digraph, aut2: Option<&AutGroup>, budget: Budget) -> IsoCertificate {
    if g1.n() != g2.n() {
        return diff("vertex-count", g1.n(), g2.n());
    }
    if g1.arc_count() != g2.arc_count() {
        return diff("arc-count", g1.arc_count(), g2.arc_count());
    }
    let cert = are_isomorphic_colored_with(g1.n(), &initial_coloring(g1), &initial_coloring(g2), aut2, budget);
    if let IsoCertificate::Isomorphic { mapping } = &cert {
        let map: Vec<usize> = mapping.iter().map(|&v| v as usize).collect();
        assert!(g1.is_isomorphism_to(g2, &map), "emitted isomorphism fails the arc check");
    }
    cert
}

pub fn are_isomorphic(g1: &Digraph, g2: &Digraph, budget: Budget) -> IsoCertificate {
    are_isomorphic_with(g1, g2, None, budget)
}

#[derive(Debug, Clone, Serialize)]
pub struct PairResult {
    pub left: usize,
    pub right: usize,
    pub result: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassCount {
    /// Input indices grouped by isomorphism class.
    pub classes: Vec<Vec<usize>>,
    /// Number of classes if every comparison was decided.
    pub exact: Option<usize>,
    /// Classes certainly pairwise non-isomorphic.
    pub lower_bound: usize,
    /// Every comparison the count rests on.
    pub comparisons: Vec<PairResult>,
    pub automorphism_orders: Vec<Option<u128>>,
}

/// Isomorphism classes by comparing each graph with one representative of
/// every class found so far.
pub fn iso_class_count(graphs: &[Digraph], budget: Budget) -> ClassCount {
    let auts: Vec<Option<AutGroup>> = graphs.iter().map(|g| automorphism_group(g, budget).ok()).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut comparisons = Vec::new();
    let mut undecided: Vec<(usize, usize)> = Vec::new();
    for (k, g) in graphs.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            let rep = class[0];
            let cert = match (&auts[rep], &auts[k]) {
                (Some(a), Some(b)) if a.order != b.order => diff("automorphism-order", a.order, b.order),
                _ => are_isomorphic_with(g, &graphs[rep], auts[rep].as_ref(), budget),
            };
            let result = match cert {
                IsoCertificate::Isomorphic { .. } => "isomorphic",
                IsoCertificate::NonIsomorphic { .. } => "non-isomorphic",
                IsoCertificate::Undetermined { .. } => "undetermined",
            };
            comparisons.push(PairResult { left: rep, right: k, result });
            if result == "isomorphic" {
                class.push(k);
                placed = true;
                break;
            }
            if result == "undetermined" {
                undecided.push((rep, k));
            }
        }
        if !placed {
            classes.push(vec![k]);
        }
    }
    // Greedy set of class representatives with no undecided pair among them.
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let mut chosen: Vec<usize> = Vec::new();
    for &r in &reps {
        if chosen.iter().all(|&c| !undecided.contains(&(c, r)) && !undecided.contains(&(r, c))) {
            chosen.push(r);
        }
    }
    ClassCount {
        exact: undecided.is_empty().then_some(classes.len()),
        lower_bound: chosen.len(),
        classes,
        comparisons,
        automorphism_orders: auts.iter().map(|a| a.as_ref().map(|a| a.order)).collect(),
    }
}
