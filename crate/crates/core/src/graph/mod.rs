//! Simple undirected graphs on at most 32 vertices.
//!
//! Adjacency is stored as one `u32` bitset per vertex, which keeps graphs
//! cheap to copy and makes neighborhood intersections single instructions.

mod graph6;
mod name;

pub use graph6::{parse_graph6, write_graph6};
pub use name::parse_name;

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of vertices a [`Graph`] can hold.
pub const MAX_ORDER: usize = 32;

#[derive(Clone, Default)]
pub struct Graph {
    order: usize,
    adj: [u32; MAX_ORDER],
    name: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.rows() == other.rows()
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.rows().hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Graph");
        s.field("order", &self.order).field("edges", &self.edges());
        if let Some(name) = &self.name {
            s.field("name", name);
        }
        s.finish()
    }
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub u32);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderOutOfRange(order));
        }
        Ok(Graph { order, adj: [0; MAX_ORDER], name: None })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidVertex { vertex: u, order });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows. Rows must be symmetric and loop-free.
    pub(crate) fn from_rows(order: usize, rows: &[u32]) -> Self {
        debug_assert!(order <= MAX_ORDER && rows.len() >= order);
        let mut adj = [0; MAX_ORDER];
        adj[..order].copy_from_slice(&rows[..order]);
        let g = Graph { order, adj, name: None };
        debug_assert!(g.is_well_formed());
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub(crate) fn rows(&self) -> &[u32] {
        &self.adj[..self.order]
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn vertex_mask(&self) -> u32 {
        low_mask(self.order)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        Bits(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order {
            for v in Bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, order: self.order })
        }
    }

    /// Adds edge `uv` in place. Panics on loops or out-of-range vertices.
    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.order && v < self.order);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidVertex { vertex: u, order: self.order });
        }
        let mut g = self.clone();
        g.name = None;
        g.add_edge(u, v);
        Ok(g)
    }

    /// Removes edge `uv`; isolated vertices are kept.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.name = None;
        g.remove_edge(u, v);
        Ok(g)
    }

    /// Removes vertex `v` and its edges; later vertices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced(self.vertex_mask() & !(1 << v)))
    }

    /// Subgraph induced by `keep`, relabelled in increasing vertex order.
    pub fn induced(&self, keep: u32) -> Graph {
        let keep = keep & self.vertex_mask();
        let verts: Vec<usize> = Bits(keep).collect();
        let mut pos = [usize::MAX; MAX_ORDER];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut rows = [0u32; MAX_ORDER];
        for (i, &v) in verts.iter().enumerate() {
            for w in Bits(self.adj[v] & keep) {
                rows[i] |= 1 << pos[w];
            }
        }
        Graph::from_rows(verts.len(), &rows)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut rows = [0u32; MAX_ORDER];
        for v in 0..self.order {
            let mut r = 0;
            for w in Bits(self.adj[v]) {
                r |= 1 << perm[w];
            }
            rows[perm[v]] = r;
        }
        Graph::from_rows(self.order, &rows)
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        let rows: Vec<u32> = (0..self.order).map(|v| !self.adj[v] & full & !(1 << v)).collect();
        Graph::from_rows(self.order, &rows)
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u32> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen >> s & 1 == 1 {
                continue;
            }
            let comp = self.reach(s, self.vertex_mask());
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` inside `allowed` (which must contain `s`).
    pub(crate) fn reach(&self, s: usize, allowed: u32) -> u32 {
        let mut comp = 1u32 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Removes isolated vertices.
    pub fn without_isolated(&self) -> Graph {
        let keep = (0..self.order).filter(|&v| self.adj[v] != 0).fold(0u32, |m, v| m | 1 << v);
        let mut g = self.induced(keep);
        g.name = self.name.clone();
        g
    }

    /// Repeatedly replaces a degree-2 vertex whose neighbors are distinct and
    /// non-adjacent by an edge between those neighbors, then drops isolated
    /// vertices. The result is homeomorphic to the input.
    pub fn suppress_degree2(&self) -> Graph {
        let mut g = self.clone();
        g.name = None;
        loop {
            let found = (0..g.order).find(|&v| {
                if g.degree(v) != 2 {
                    return false;
                }
                let mut it = Bits(g.adj[v]);
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                !g.has_edge(a, b)
            });
            let Some(v) = found else { break };
            let mut it = Bits(g.adj[v]);
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            g.remove_edge(v, a);
            g.remove_edge(v, b);
            g.add_edge(a, b);
            g = g.induced(g.vertex_mask() & !(1 << v));
        }
        g.without_isolated()
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order + other.order;
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.order, v + self.order);
        }
        Ok(g)
    }

    pub(crate) fn is_well_formed(&self) -> bool {
        (0..self.order).all(|v| {
            self.adj[v] >> v & 1 == 0
                && self.adj[v] & !self.vertex_mask() == 0
                && Bits(self.adj[v]).all(|w| self.adj[w] >> v & 1 == 1)
        }) && self.adj[self.order..].iter().all(|&r| r == 0)
    }
}

pub fn make_complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    let full = g.vertex_mask();
    for v in 0..n {
        g.adj[v] = full & !(1 << v);
    }
    Ok(g.with_name(format!("K{n}")))
}

/// `K_{m,n}` with parts `0..m` and `m..m+n`.
pub fn make_complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    let mut g = Graph::empty(m + n)?;
    for u in 0..m {
        for v in m..m + n {
            g.add_edge(u, v);
        }
    }
    Ok(g.with_name(format!("K{m},{n}")))
}

pub fn make_path(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    Ok(g.with_name(format!("P{n}")))
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    let mut g = make_path(n)?;
    if n >= 3 {
        g.add_edge(0, n - 1);
    }
    Ok(g.with_name(format!("C{n}")))
}

/// Identifies vertex `v1` of `g1` with vertex `v2` of `g2`. Vertices of `g1`
/// keep their labels; the remaining vertices of `g2` follow in order.
pub fn one_vertex_join(g1: &Graph, g2: &Graph, v1: usize, v2: usize) -> Result<Graph> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let n = g1.order + g2.order - 1;
    let mut g = Graph::empty(n)?;
    for (a, b) in g1.edges() {
        g.add_edge(a, b);
    }
    let map = |w: usize| -> usize {
        match w.cmp(&v2) {
            std::cmp::Ordering::Equal => v1,
            std::cmp::Ordering::Less => g1.order + w,
            std::cmp::Ordering::Greater => g1.order + w - 1,
        }
    };
    for (a, b) in g2.edges() {
        g.add_edge(map(a), map(b));
    }
    Ok(g)
}
