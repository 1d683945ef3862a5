//! Digraphs with optional fiber labels and the Bi-Cayley constructor.
//!
//! Arc sets are irreflexive and simple (no loops, no parallel arcs).
//! Adjacency is stored in both directions so in- and out-neighborhood
//! queries cost O(degree). Digraphs are immutable after construction.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup};

/// `(element, fiber)` tag for a Bi-Cayley vertex; fiber 0 holds the tail
/// copies of the group, fiber 1 the head copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexLabel {
    pub element: usize,
    pub fiber: u8,
}

/// The `(G, T0, T1)` triple defining `BD(G, T0, T1)`.
#[derive(Debug, Clone)]
pub struct BiCayleySpec {
    pub group: Arc<FiniteGroup>,
    pub t0: ElementSet,
    pub t1: ElementSet,
}

impl BiCayleySpec {
    /// Both connection sets must be subsets of the group. Emptiness is
    /// allowed here; the strong-connectivity criterion diagnoses it.
    pub fn new(group: Arc<FiniteGroup>, t0: ElementSet, t1: ElementSet) -> Result<Self> {
        group.check_set(&t0)?;
        group.check_set(&t1)?;
        Ok(BiCayleySpec { group, t0, t1 })
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.group.order()
    }

    /// `min(|T0|, |T1|)` — the minimum degree of the built digraph.
    pub fn min_degree(&self) -> usize {
        self.t0.len().min(self.t1.len())
    }

    /// Short display form `label T0={..} T1={..}` used in reports.
    pub fn fingerprint(&self) -> String {
        format!("{} T0={} T1={}", self.group.label(), self.t0, self.t1)
    }
}

/// A simple digraph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    labels: Option<Vec<VertexLabel>>,
}

impl Digraph {
    /// Build from an arc list. Loops are rejected (arc sets are irreflexive);
    /// duplicate arcs collapse.
    pub fn from_arcs(
        vertex_count: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut out_adj = vec![Vec::new(); vertex_count];
        let mut in_adj = vec![Vec::new(); vertex_count];
        for (u, v) in arcs {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidArgument(format!(
                    "arc ({u},{v}) has an endpoint >= vertex count {vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!(
                    "loop arc ({u},{u}) is not allowed"
                )));
            }
            out_adj[u].push(v);
        }
        for adj in &mut out_adj {
            adj.sort_unstable();
            adj.dedup();
        }
        for (u, adj) in out_adj.iter().enumerate() {
            for &v in adj {
                in_adj[v].push(u);
            }
        }
        for adj in &mut in_adj {
            adj.sort_unstable();
        }
        Ok(Digraph {
            out_adj,
            in_adj,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.arc_count());
        for (u, adj) in self.out_adj.iter().enumerate() {
            for &v in adj {
                out.push((u, v));
            }
        }
        out
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// `(δ⁺, δ⁻, δ)` with `δ = min(δ⁺, δ⁻)`.
    pub fn min_degrees(&self) -> (usize, usize, usize) {
        let dp = self.out_adj.iter().map(Vec::len).min().unwrap_or(0);
        let dm = self.in_adj.iter().map(Vec::len).min().unwrap_or(0);
        (dp, dm, dp.min(dm))
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    /// Digraph with every arc flipped. Labels are kept: vertices do not move.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Subdigraph induced by a vertex set. Vertices are renumbered
    /// `0..|A|` in increasing order of their original ids.
    pub fn induced(&self, vertices: &[usize]) -> Result<Digraph> {
        let keep = ElementSet::new(vertices.iter().copied());
        if let Some(&max) = keep.members().last() {
            if max >= self.vertex_count() {
                return Err(Error::InvalidArgument(format!(
                    "vertex {max} out of range for induced subdigraph"
                )));
            }
        }
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (new, old) in keep.members().iter().enumerate() {
            index[*old] = new;
        }
        let mut arcs = Vec::new();
        for &u in keep.members() {
            for &v in &self.out_adj[u] {
                if index[v] != usize::MAX {
                    arcs.push((index[u], index[v]));
                }
            }
        }
        let sub = Digraph::from_arcs(keep.len(), arcs)?;
        match &self.labels {
            Some(labels) => {
                sub.with_labels(keep.members().iter().map(|&old| labels[old]).collect())
            }
            None => Ok(sub),
        }
    }

    fn reach_count(&self, start: usize, forward: bool) -> usize {
        let adj = if forward { &self.out_adj } else { &self.in_adj };
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count
    }

    /// BFS from vertex 0 in both arc directions. The trivial digraph is
    /// strongly connected; so is the empty one, vacuously.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        n <= 1 || (self.reach_count(0, true) == n && self.reach_count(0, false) == n)
    }

    /// Connectivity of the digraph with arc orientations ignored.
    pub fn is_weakly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.out_adj[u].iter().chain(self.in_adj[u].iter()) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Every arc has its reverse.
    pub fn is_symmetric(&self) -> bool {
        self.arcs().iter().all(|&(u, v)| self.has_arc(v, u))
    }

    /// Strongly connected with every in- and out-degree equal to 1.
    /// The 2-vertex digraph with both arcs qualifies (it is a 2-cycle).
    pub fn is_directed_cycle(&self) -> bool {
        self.vertex_count() >= 2
            && (0..self.vertex_count()).all(|v| self.out_degree(v) == 1 && self.in_degree(v) == 1)
            && self.is_strongly_connected()
    }

    /// Symmetric digraph whose underlying undirected graph is a single cycle.
    /// Needs at least 3 vertices: the 2-vertex symmetric digraph is
    /// classified as complete symmetric, not as a cycle.
    pub fn is_symmetric_cycle(&self) -> bool {
        self.vertex_count() >= 3
            && self.is_symmetric()
            && (0..self.vertex_count()).all(|v| self.out_degree(v) == 2)
            && self.is_weakly_connected()
    }

    /// Arc set is all ordered pairs of distinct vertices.
    pub fn is_complete_symmetric(&self) -> bool {
        let n = self.vertex_count();
        self.arc_count() == n * n.saturating_sub(1)
    }
}

/// Build `BD(G, T0, T1)`: vertex `(g,0)` gets index `g`, vertex `(g,1)` gets
/// index `|G| + g`. Arcs run `(g,0) -> (t0·g, 1)` and `(t1·g, 1) -> (g,0)`;
/// every arc crosses fibers, so the digraph is bipartite and loop-free even
/// when the identity is a connection element.
pub fn build_bicayley(spec: &BiCayleySpec) -> Digraph {
    let g = &spec.group;
    let n = g.order();
    let mut arcs = Vec::with_capacity(n * (spec.t0.len() + spec.t1.len()));
    for x in 0..n {
        for t in spec.t0.iter() {
            arcs.push((x, n + g.mul(t, x)));
        }
        for t in spec.t1.iter() {
            arcs.push((n + g.mul(t, x), x));
        }
    }
    let labels = (0..2 * n)
        .map(|v| VertexLabel {
            element: v % n,
            fiber: (v >= n) as u8,
        })
        .collect();
    Digraph::from_arcs(2 * n, arcs)
        .and_then(|d| d.with_labels(labels))
        .expect("Bi-Cayley arcs are in range and never loops")
}

/// The vertex permutation `(g,i) -> (g·a, i)`.
pub fn right_translation(spec: &BiCayleySpec, a: usize) -> Result<Vec<usize>> {
    spec.group.check_element(a)?;
    let n = spec.group.order();
    let mut perm = vec![0usize; 2 * n];
    for g in 0..n {
        perm[g] = spec.group.mul(g, a);
        perm[n + g] = n + spec.group.mul(g, a);
    }
    Ok(perm)
}

/// Does the permutation preserve the arc set? `perm` must be a bijection on
/// the vertices; since the arc set is finite, image-of-every-arc-is-an-arc
/// already forces arc-set equality.
pub fn is_arc_automorphism(x: &Digraph, perm: &[usize]) -> Result<bool> {
    let n = x.vertex_count();
    if perm.len() != n {
        return Err(Error::InvalidArgument(format!(
            "permutation has length {}, digraph has {n} vertices",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidArgument(
                "not a bijection on the vertex set".into(),
            ));
        }
        seen[p] = true;
    }
    Ok(x.arcs().iter().all(|&(u, v)| x.has_arc(perm[u], perm[v])))
}
