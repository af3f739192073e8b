//! Dense digraphs on `0..n` and their 0/1 text form.
//!
//! Text format: the first line holds `n`, then `n` lines of `n` characters
//! `'0'`/`'1'`, row `u` column `v` set iff `(u, v)` is an arc. Lines end in
//! `\n` only.

use std::fmt::Write as _;

use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<bool>,
    label: Option<String>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph { n, arcs: vec![false; n * n], label: None }
    }

    pub fn from_fn(n: usize, mut arc: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                g.arcs[u * n + v] = arc(u, v);
            }
        }
        g
    }

    /// Every ordered pair of distinct vertices is an arc.
    pub fn complete(n: usize) -> Self {
        Digraph::from_fn(n, |u, v| u != v)
    }

    pub fn directed_cycle(n: usize) -> Self {
        Digraph::from_fn(n, |u, v| (u + 1) % n == v)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn without_label(mut self) -> Self {
        self.label = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs[u * self.n + v]
    }

    pub fn set_arc(&mut self, u: usize, v: usize, present: bool) {
        self.arcs[u * self.n + v] = present;
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().filter(|&&a| a).count()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has_arc(u, v)).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_arc(u, v)).count()
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_arc(u, v))
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|u| self.has_arc(u, u))
    }

    pub fn without_loops(&self) -> Digraph {
        let mut g = self.clone();
        for u in 0..self.n {
            g.set_arc(u, u, false);
        }
        g
    }

    pub fn reverse(&self) -> Digraph {
        Digraph { label: self.label.clone(), ..Digraph::from_fn(self.n, |u, v| self.has_arc(v, u)) }
    }

    /// No pair of distinct vertices is joined in both directions.
    pub fn is_asymmetric(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| !(self.has_arc(u, v) && self.has_arc(v, u))))
    }

    /// The digraph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        let mut g = Digraph::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_arc(u, v) {
                    g.set_arc(perm[u], perm[v], true);
                }
            }
        }
        g.label = self.label.clone();
        g
    }

    /// Rows as bitsets, for popcount-based neighbourhood intersections.
    pub fn out_bitsets(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        (0..self.n)
            .map(|u| {
                let mut row = vec![0u64; words];
                for v in self.out_neighbors(u) {
                    row[v / 64] |= 1 << (v % 64);
                }
                row
            })
            .collect()
    }

    pub fn in_bitsets(&self) -> Vec<Vec<u64>> {
        self.reverse().out_bitsets()
    }

    /// Whether `map` is an isomorphism from `self` onto `other`, checked on
    /// every ordered pair.
    pub fn is_isomorphism_to(&self, other: &Digraph, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &m in map {
            if m >= self.n || std::mem::replace(&mut seen[m], true) {
                return false;
            }
        }
        (0..self.n).all(|u| (0..self.n).all(|v| self.has_arc(u, v) == other.has_arc(map[u], map[v])))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1) + 8);
        let _ = writeln!(s, "{}", self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                s.push(if self.has_arc(u, v) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Digraph, Error> {
        let mut lines = text.lines();
        let n: usize = lines
            .next()
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| Error::Parse("missing vertex count".into()))?;
        let mut g = Digraph::empty(n);
        for u in 0..n {
            let row = lines.next().ok_or_else(|| Error::Parse(format!("missing row {u}")))?;
            if row.len() != n {
                return Err(Error::Parse(format!("row {u} has length {} instead of {n}", row.len())));
            }
            for (v, c) in row.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => g.set_arc(u, v, true),
                    _ => return Err(Error::Parse(format!("bad character in row {u}"))),
                }
            }
        }
        Ok(g)
    }
}
