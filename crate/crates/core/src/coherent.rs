//! 2-dimensional Weisfeiler-Leman refinement and the coherent
//! configurations it produces.
//!
//! A round recolours `(u, v)` by its old colour together with the multiset of
//! pairs `(c(u,w), c(w,v))` over all `w`. New colour ids are assigned by
//! sorting the distinct `(old, signature)` keys, so ids are canonical: two
//! runs on isomorphic inputs give the same ids on corresponding pairs.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::Error;

/// Pair colours of the initial partition of a digraph.
pub const INIT_NON_ARC: u32 = 0;
pub const INIT_ARC: u32 = 1;
pub const INIT_DIAG: u32 = 2;
pub const INIT_DIAG_LOOP: u32 = 3;

/// Dense counting is used while `rank²` stays below this; larger ranks sort
/// the keys instead.
const DENSE_COUNT_LIMIT: usize = 1 << 20;

/// Colours sampled per class when checking that intersection numbers do not
/// depend on the representative pair.
const SPOT_CHECKS: usize = 100;
const FULL_CHECK_MAX_N: usize = 27;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairColoring {
    n: usize,
    colors: Vec<u32>,
    rank: usize,
    rounds: usize,
}

impl PairColoring {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> u32 {
        self.colors[u * self.n + v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Refinement rounds until the partition stopped splitting.
    pub fn rounds(&self) -> usize {
        self.rounds
    }
}

/// The initial colouring of a digraph: non-arc, arc, diagonal, looped
/// diagonal.
pub fn initial_coloring(g: &Digraph) -> Vec<u32> {
    let n = g.n();
    let mut c = vec![0u32; n * n];
    for u in 0..n {
        for v in 0..n {
            c[u * n + v] = match (u == v, g.has_arc(u, v)) {
                (false, false) => INIT_NON_ARC,
                (false, true) => INIT_ARC,
                (true, false) => INIT_DIAG,
                (true, true) => INIT_DIAG_LOOP,
            };
        }
    }
    c
}

/// Renames the values of `colors` to `0..r` preserving their order.
fn compress(colors: &mut [u32]) -> usize {
    let mut used: Vec<u32> = colors.to_vec();
    used.sort_unstable();
    used.dedup();
    if used.last().is_some_and(|&m| m as usize + 1 == used.len()) {
        return used.len();
    }
    let rename: HashMap<u32, u32> = used.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    for c in colors.iter_mut() {
        *c = rename[c];
    }
    used.len()
}

type Signature = Vec<(u64, u32)>;

struct SignatureBuilder {
    rank: u64,
    dense: Option<(Vec<u32>, Vec<u64>)>,
    keys: Vec<u64>,
}

impl SignatureBuilder {
    fn new(rank: usize, n: usize) -> Self {
        let dense = (rank * rank <= DENSE_COUNT_LIMIT).then(|| (vec![0u32; rank * rank], Vec::with_capacity(n)));
        SignatureBuilder { rank: rank as u64, dense, keys: Vec::with_capacity(n) }
    }

    /// Multiset of `(row[w], col[w])`, sorted by key.
    fn build(&mut self, row: &[u32], col: &[u32]) -> Signature {
        let r = self.rank;
        match &mut self.dense {
            Some((counts, touched)) => {
                for (&a, &b) in row.iter().zip(col) {
                    let k = a as u64 * r + b as u64;
                    let slot = &mut counts[k as usize];
                    if *slot == 0 {
                        touched.push(k);
                    }
                    *slot += 1;
                }
                touched.sort_unstable();
                let sig = touched.iter().map(|&k| (k, std::mem::take(&mut counts[k as usize]))).collect();
                touched.clear();
                sig
            }
            None => {
                self.keys.clear();
                self.keys.extend(row.iter().zip(col).map(|(&a, &b)| a as u64 * r + b as u64));
                self.keys.sort_unstable();
                let mut sig: Signature = Vec::new();
                for &k in &self.keys {
                    match sig.last_mut() {
                        Some((last, c)) if *last == k => *c += 1,
                        _ => sig.push((k, 1)),
                    }
                }
                sig
            }
        }
    }
}

/// Refines an arbitrary pair colouring (row-major, `n × n`) to the coarsest
/// stable one below it.
pub fn refine(n: usize, colors: Vec<u32>) -> PairColoring {
    refine_jointly(n, vec![colors]).pop().expect("one colouring in, one out")
}

/// Refines several colourings of `n × n` in lockstep with one shared table
/// of canonical ids, so equal ids mean equal refinement history across
/// inputs. Stops when no input splits any further. With more than one
/// input the ids of a single output need not be contiguous.
pub fn refine_jointly(n: usize, mut colorings: Vec<Vec<u32>>) -> Vec<PairColoring> {
    assert!(colorings.iter().all(|c| c.len() == n * n));
    let mut all: Vec<u32> = colorings.concat();
    let mut rank = compress(&mut all);
    for (k, c) in colorings.iter_mut().enumerate() {
        c.copy_from_slice(&all[k * n * n..(k + 1) * n * n]);
    }
    drop(all);
    let mut rounds = 0;
    let mut transposed = vec![0u32; n * n];
    let mut temps = vec![vec![0u32; n * n]; colorings.len()];
    loop {
        let mut builder = SignatureBuilder::new(rank, n);
        let mut interned: HashMap<(u32, Signature), u32> = HashMap::new();
        for (colors, temp) in colorings.iter().zip(temps.iter_mut()) {
            for u in 0..n {
                for v in 0..n {
                    transposed[v * n + u] = colors[u * n + v];
                }
            }
            for u in 0..n {
                let row = &colors[u * n..(u + 1) * n];
                for v in 0..n {
                    let sig = builder.build(row, &transposed[v * n..(v + 1) * n]);
                    let next = interned.len() as u32;
                    temp[u * n + v] = *interned.entry((row[v], sig)).or_insert(next);
                }
            }
        }
        rounds += 1;
        if interned.len() == rank {
            break;
        }
        let mut keys: Vec<((u32, Signature), u32)> = interned.into_iter().collect();
        keys.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut canonical = vec![0u32; keys.len()];
        for (new, (_, temp_id)) in keys.iter().enumerate() {
            canonical[*temp_id as usize] = new as u32;
        }
        for (colors, temp) in colorings.iter_mut().zip(&temps) {
            for (c, t) in colors.iter_mut().zip(temp) {
                *c = canonical[*t as usize];
            }
        }
        rank = keys.len();
    }
    colorings
        .into_iter()
        .map(|colors| {
            let mut used = colors.clone();
            used.sort_unstable();
            used.dedup();
            PairColoring { n, colors, rank: used.len(), rounds }
        })
        .collect()
}

/// Intersection numbers as sorted nonzero `(r, s, t, c)` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tensor {
    entries: Vec<[u32; 4]>,
}

impl Tensor {
    pub fn get(&self, r: u32, s: u32, t: u32) -> u32 {
        // Entries are sorted by (t, r, s).
        self.entries
            .binary_search_by(|e| (e[2], e[0], e[1]).cmp(&(t, r, s)))
            .map_or(0, |i| self.entries[i][3])
    }

    /// Entries in `(t, r, s)` order.
    pub fn entries(&self) -> &[[u32; 4]] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CoherentConfiguration {
    coloring: PairColoring,
    valencies: Vec<u32>,
    transpose: Vec<u32>,
    /// Left and right fiber (as a diagonal colour) of each colour.
    color_fibers: Vec<(u32, u32)>,
    fibers: Vec<(u32, Vec<u32>)>,
    tensor: Tensor,
    representatives: Vec<(u32, u32)>,
}

#[derive(Debug, Serialize)]
pub struct TensorExport<'a> {
    pub rank: usize,
    pub valencies: &'a [u32],
    pub tensor: Vec<[u32; 4]>,
}

impl CoherentConfiguration {
    /// Builds the configuration from a stable colouring and checks that
    /// intersection numbers are well defined (all pairs when `n ≤ 27`,
    /// otherwise a fixed-seed sample per colour).
    pub fn from_coloring(mut coloring: PairColoring) -> Result<Self, Error> {
        // Colourings from a joint refinement may skip ids.
        coloring.rank = compress(&mut coloring.colors);
        let n = coloring.n;
        let rank = coloring.rank;
        let mut representatives = vec![(u32::MAX, u32::MAX); rank];
        let mut class_size = vec![0u64; rank];
        for u in 0..n {
            for v in 0..n {
                let c = coloring.color(u, v) as usize;
                if representatives[c].0 == u32::MAX {
                    representatives[c] = (u as u32, v as u32);
                }
                class_size[c] += 1;
            }
        }
        let mut fibers: Vec<(u32, Vec<u32>)> = Vec::new();
        for v in 0..n {
            let d = coloring.color(v, v);
            match fibers.iter_mut().find(|(c, _)| *c == d) {
                Some((_, members)) => members.push(v as u32),
                None => fibers.push((d, vec![v as u32])),
            }
        }
        fibers.sort_unstable();
        let fiber_size = |d: u32| fibers.iter().find(|(c, _)| *c == d).map_or(0, |(_, m)| m.len() as u64);

        let mut transpose = vec![0u32; rank];
        let mut color_fibers = vec![(0u32, 0u32); rank];
        let mut valencies = vec![0u32; rank];
        for (c, &(u, v)) in representatives.iter().enumerate() {
            let (u, v) = (u as usize, v as usize);
            transpose[c] = coloring.color(v, u);
            color_fibers[c] = (coloring.color(u, u), coloring.color(v, v));
            valencies[c] = (class_size[c] / fiber_size(color_fibers[c].0)) as u32;
        }

        let mut entries = Vec::new();
        for (t, &(u, v)) in representatives.iter().enumerate() {
            for ((r, s), c) in triangle_counts(&coloring, u as usize, v as usize) {
                entries.push([r, s, t as u32, c]);
            }
        }
        let cc = CoherentConfiguration {
            coloring,
            valencies,
            transpose,
            color_fibers,
            fibers,
            tensor: Tensor { entries },
            representatives,
        };
        cc.check_well_defined()?;
        Ok(cc)
    }

    fn check_well_defined(&self) -> Result<(), Error> {
        let n = self.n();
        let check = |u: usize, v: usize| -> Result<(), Error> {
            let t = self.coloring.color(u, v);
            for ((r, s), c) in triangle_counts(&self.coloring, u, v) {
                if self.tensor.get(r, s, t) != c {
                    return Err(Error::InternalConsistency(format!(
                        "intersection number c[{r}][{s}][{t}] differs at ({u},{v})"
                    )));
                }
            }
            Ok(())
        };
        if n <= FULL_CHECK_MAX_N {
            for u in 0..n {
                for v in 0..n {
                    check(u, v)?;
                }
            }
            return Ok(());
        }
        let mut by_color: Vec<Vec<(u32, u32)>> = vec![Vec::new(); self.rank()];
        let mut rng = ChaCha8Rng::seed_from_u64(0x2f1);
        // Reservoir sample per colour.
        let mut seen = vec![0usize; self.rank()];
        for u in 0..n {
            for v in 0..n {
                let c = self.coloring.color(u, v) as usize;
                seen[c] += 1;
                if by_color[c].len() < SPOT_CHECKS {
                    by_color[c].push((u as u32, v as u32));
                } else {
                    let j = rng.gen_range(0..seen[c]);
                    if j < SPOT_CHECKS {
                        by_color[c][j] = (u as u32, v as u32);
                    }
                }
            }
        }
        for (u, v) in by_color.into_iter().flatten() {
            check(u as usize, v as usize)?;
        }
        Ok(())
    }

    pub fn coloring(&self) -> &PairColoring {
        &self.coloring
    }

    pub fn n(&self) -> usize {
        self.coloring.n
    }

    pub fn rank(&self) -> usize {
        self.coloring.rank
    }

    pub fn color(&self, u: usize, v: usize) -> u32 {
        self.coloring.color(u, v)
    }

    pub fn valency(&self, c: u32) -> u32 {
        self.valencies[c as usize]
    }

    pub fn valencies(&self) -> &[u32] {
        &self.valencies
    }

    /// The colour of `(v, u)` for any `(u, v)` of colour `c`.
    pub fn transpose(&self, c: u32) -> u32 {
        self.transpose[c as usize]
    }

    /// `(left, right)` fibers of colour `c`, named by their diagonal colour.
    pub fn color_fibers(&self, c: u32) -> (u32, u32) {
        self.color_fibers[c as usize]
    }

    /// Diagonal colour and member vertices of each fiber.
    pub fn fibers(&self) -> &[(u32, Vec<u32>)] {
        &self.fibers
    }

    pub fn is_homogeneous(&self) -> bool {
        self.fibers.len() == 1
    }

    pub fn representative(&self, c: u32) -> (usize, usize) {
        let (u, v) = self.representatives[c as usize];
        (u as usize, v as usize)
    }

    pub fn tensor(&self) -> &Tensor {
        &self.tensor
    }

    /// `c_{rs}^t`.
    pub fn intersection_number(&self, r: u32, s: u32, t: u32) -> u32 {
        self.tensor.get(r, s, t)
    }

    /// Colours `{c(u, v) : v}` occurring in row `u`.
    pub fn row_colors(&self, u: usize) -> Vec<u32> {
        let mut c: Vec<u32> = (0..self.n()).map(|v| self.color(u, v)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Groups the vertices by `c(u, v)`; cells in colour order.
    pub fn row_partition(&self, u: usize) -> Vec<(u32, Vec<u32>)> {
        let mut cells: Vec<(u32, Vec<u32>)> = Vec::new();
        for v in 0..self.n() {
            let c = self.color(u, v);
            match cells.iter_mut().find(|(k, _)| *k == c) {
                Some((_, m)) => m.push(v as u32),
                None => cells.push((c, vec![v as u32])),
            }
        }
        cells.sort_unstable();
        cells
    }

    /// The cells `{g : c(e, g) = s}` for `e` = vertex 0. For the closure of a
    /// Cayley digraph these are the basic sets of its S-ring.
    pub fn as_sring_partition(&self) -> Vec<(u32, Vec<u32>)> {
        self.row_partition(0)
    }

    /// The colours whose class contains an arc of `g`.
    pub fn arc_colors(&self, g: &Digraph) -> Vec<u32> {
        let mut c: Vec<u32> = (0..self.n())
            .flat_map(|u| (0..self.n()).filter(move |&v| g.has_arc(u, v)).map(move |v| (u, v)))
            .map(|(u, v)| self.color(u, v))
            .collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// The one-point extension at `v`: refinement restarted with `(v, v)`
    /// in a colour of its own.
    pub fn one_point_extension(&self, v: usize) -> Result<CoherentConfiguration, Error> {
        let mut colors = self.coloring.colors.clone();
        colors[v * self.n() + v] = self.rank() as u32;
        CoherentConfiguration::from_coloring(refine(self.n(), colors))
    }

    /// Number of pairs of each colour.
    pub fn color_multiset(&self) -> Vec<u64> {
        let mut m = vec![0u64; self.rank()];
        for &c in &self.coloring.colors {
            m[c as usize] += 1;
        }
        m
    }

    pub fn export(&self) -> TensorExport<'_> {
        let mut tensor = self.tensor.entries.clone();
        tensor.sort_unstable();
        TensorExport { rank: self.rank(), valencies: &self.valencies, tensor }
    }
}

/// `((r, s), |{w : c(u,w) = r, c(w,v) = s}|)` for all nonzero counts.
fn triangle_counts(coloring: &PairColoring, u: usize, v: usize) -> Vec<((u32, u32), u32)> {
    let n = coloring.n;
    let mut keys: Vec<(u32, u32)> = (0..n).map(|w| (coloring.color(u, w), coloring.color(w, v))).collect();
    keys.sort_unstable();
    let mut out: Vec<((u32, u32), u32)> = Vec::new();
    for k in keys {
        match out.last_mut() {
            Some((last, c)) if *last == k => *c += 1,
            _ => out.push((k, 1)),
        }
    }
    out
}

pub fn wl_close(g: &Digraph) -> Result<CoherentConfiguration, Error> {
    wl_close_colored(g.n(), initial_coloring(g))
}

pub fn wl_close_colored(n: usize, colors: Vec<u32>) -> Result<CoherentConfiguration, Error> {
    CoherentConfiguration::from_coloring(refine(n, colors))
}

/// Outcome of the disjoint-union WL comparison.
#[derive(Debug, Clone, Serialize)]
pub struct WlComparison {
    pub equivalent: bool,
    pub union_rank: usize,
    pub rounds: usize,
}

/// WL-equivalence by refining the disjoint union: both arc relations start
/// in the same colour, cross pairs in a colour of their own, and the graphs
/// are equivalent iff the stable colour multisets on `V1×V1` and `V2×V2`
/// agree.
pub fn wl_compare(g1: &Digraph, g2: &Digraph) -> WlComparison {
    let (n1, n2) = (g1.n(), g2.n());
    let n = n1 + n2;
    const CROSS: u32 = INIT_DIAG_LOOP + 1;
    let mut colors = vec![CROSS; n * n];
    let (i1, i2) = (initial_coloring(g1), initial_coloring(g2));
    for u in 0..n1 {
        colors[u * n..u * n + n1].copy_from_slice(&i1[u * n1..(u + 1) * n1]);
    }
    for u in 0..n2 {
        let row = (n1 + u) * n + n1;
        colors[row..row + n2].copy_from_slice(&i2[u * n2..(u + 1) * n2]);
    }
    let stable = refine(n, colors);
    let mut m1 = vec![0u64; stable.rank];
    let mut m2 = vec![0u64; stable.rank];
    for u in 0..n1 {
        for v in 0..n1 {
            m1[stable.color(u, v) as usize] += 1;
        }
    }
    for u in n1..n {
        for v in n1..n {
            m2[stable.color(u, v) as usize] += 1;
        }
    }
    WlComparison { equivalent: n1 == n2 && m1 == m2, union_rank: stable.rank, rounds: stable.rounds }
}

pub fn wl_equivalent(g1: &Digraph, g2: &Digraph) -> bool {
    wl_compare(g1, g2).equivalent
}

/// Whether `sigma` (colour of `cc1` to colour of `cc2`) is a bijection that
/// carries every intersection number of `cc1` to the same number in `cc2`.
pub fn verify_algebraic_map(
    cc1: &CoherentConfiguration,
    cc2: &CoherentConfiguration,
    sigma: &[u32],
) -> Result<bool, Error> {
    if cc1.rank() != cc2.rank() {
        return Err(Error::RankMismatch(cc1.rank(), cc2.rank()));
    }
    if sigma.len() != cc1.rank() {
        return Ok(false);
    }
    let mut hit = vec![false; cc2.rank()];
    for &s in sigma {
        if s as usize >= hit.len() || std::mem::replace(&mut hit[s as usize], true) {
            return Ok(false);
        }
    }
    if cc1.tensor.len() != cc2.tensor.len() {
        return Ok(false);
    }
    let map = |c: u32| sigma[c as usize];
    Ok(cc1.tensor.entries.iter().all(|&[r, s, t, c]| cc2.tensor.get(map(r), map(s), map(t)) == c))
}
