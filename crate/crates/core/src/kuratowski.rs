//! Subdivisions of K5 and K3,3 inside a host graph.
//!
//! A subdivision is determined by its edge set: branch vertices are the
//! vertices of degree at least three and the paths between them follow. The
//! enumerator picks branch vertices among vertices of large enough degree and
//! then backtracks over internally disjoint path systems, so every subgraph is
//! produced exactly once.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::canon::is_isomorphic;
use crate::graph::{make_complete, make_complete_bipartite, Bits, Graph};

pub const DEFAULT_POOL_LIMIT: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

impl std::fmt::Display for KuratowskiKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KuratowskiKind::K5 => "K5",
            KuratowskiKind::K33 => "K33",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KuratowskiSubgraph {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    /// Branch paths as host vertex sequences, each from its smaller end.
    pub paths: Vec<Vec<usize>>,
    /// Sorted host edges `(u, v)` with `u < v`.
    pub edges: Vec<(usize, usize)>,
}

impl KuratowskiSubgraph {
    /// Rebuilds branch vertices and paths from an edge set; `None` unless the
    /// edges form a subdivision of K5 or K3,3.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Option<Self> {
        let g = Graph::from_edges(order, edges).ok()?;
        let kind = classify(&g)?;
        let branch: Vec<usize> = (0..order).filter(|&v| g.degree(v) >= 3).collect();
        let branch_mask = branch.iter().fold(0u32, |m, &v| m | 1 << v);
        let mut paths = Vec::new();
        for &b in &branch {
            for first in g.neighbors(b) {
                let mut path = vec![b, first];
                let (mut prev, mut cur) = (b, first);
                while branch_mask >> cur & 1 == 0 {
                    let next = Bits(g.row(cur) & !(1 << prev)).next()?;
                    path.push(next);
                    (prev, cur) = (cur, next);
                }
                if b < cur {
                    paths.push(path);
                }
            }
        }
        paths.sort();
        let mut edges = g.edges();
        edges.sort_unstable();
        Some(KuratowskiSubgraph { kind, branch_vertices: branch, paths, edges })
    }

    pub fn graph(&self, order: usize) -> Graph {
        Graph::from_edges(order, &self.edges).expect("edges fit the host order")
    }
}

/// `Some(kind)` iff the non-isolated part of `g` is a subdivision of K5 or
/// K3,3.
pub fn classify(g: &Graph) -> Option<KuratowskiKind> {
    let h = g.without_isolated();
    if h.order() < 5 || !h.is_connected() {
        return None;
    }
    let degrees = h.degrees();
    let count = |d: usize| degrees.iter().filter(|&&x| x == d).count();
    let twos = count(2);
    let kind = if count(4) == 5 && twos + 5 == h.order() {
        KuratowskiKind::K5
    } else if count(3) == 6 && twos + 6 == h.order() {
        KuratowskiKind::K33
    } else {
        return None;
    };
    let core = h.suppress_degree2();
    let model = match kind {
        KuratowskiKind::K5 => make_complete(5),
        KuratowskiKind::K33 => make_complete_bipartite(3, 3),
    }
    .expect("small model graph");
    is_isomorphic(&core, &model).then_some(kind)
}

/// Output of [`enumerate_kuratowski`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KuratowskiEnumeration {
    pub subgraphs: Vec<KuratowskiSubgraph>,
    /// The limit was hit; `subgraphs` holds the first `limit` found.
    pub truncated: bool,
}

/// All Kuratowski subgraphs of `g`, sorted by edge list. With a limit the
/// enumeration stops after that many and reports truncation.
pub fn enumerate_kuratowski(g: &Graph, limit: Option<usize>) -> KuratowskiEnumeration {
    let edges = g.edges();
    let mut found: Vec<(KuratowskiKind, Vec<u64>)> = Vec::new();
    let mut truncated = false;
    for_each_kuratowski(g, |kind, bits| {
        if limit.is_some_and(|l| found.len() >= l) {
            truncated = true;
            return ControlFlow::Break(());
        }
        found.push((kind, bits.to_vec()));
        ControlFlow::Continue(())
    });
    let mut subgraphs: Vec<KuratowskiSubgraph> = found
        .into_iter()
        .map(|(_, bits)| {
            let es: Vec<(usize, usize)> = edge_bits_iter(&bits).map(|i| edges[i]).collect();
            KuratowskiSubgraph::from_edges(g.order(), &es).expect("enumerator yields subdivisions")
        })
        .collect();
    subgraphs.sort_by(|a, b| a.edges.cmp(&b.edges));
    subgraphs.dedup_by(|a, b| a.edges == b.edges);
    KuratowskiEnumeration { subgraphs, truncated }
}

pub fn contains_kuratowski(g: &Graph) -> bool {
    let mut any = false;
    for_each_kuratowski(g, |_, _| {
        any = true;
        ControlFlow::Break(())
    });
    any
}

/// Iterates set bit positions of a multiword bitset.
pub fn edge_bits_iter(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                None
            } else {
                let i = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(64 * w + i)
            }
        })
    })
}

/// Streams every Kuratowski subgraph of `g` as an edge bitset over the
/// indices of `g.edges()`, in a fixed generation order.
pub fn for_each_kuratowski<F>(g: &Graph, mut f: F)
where
    F: FnMut(KuratowskiKind, &[u64]) -> ControlFlow<()>,
{
    let mut e = Enumerator::new(g);
    let deg4 = (0..g.order()).filter(|&v| g.degree(v) >= 4).fold(0u32, |m, v| m | 1 << v);
    let deg3 = (0..g.order()).filter(|&v| g.degree(v) >= 3).fold(0u32, |m, v| m | 1 << v);
    let mut stop = false;
    for_each_subset(deg4, 5, &mut |b| {
        let verts: Vec<usize> = Bits(b).collect();
        let mut pairs = Vec::with_capacity(10);
        for i in 0..5 {
            for j in i + 1..5 {
                pairs.push((verts[i], verts[j]));
            }
        }
        stop = e.paths(&pairs, b, KuratowskiKind::K5, &mut f).is_break();
        !stop
    });
    if stop {
        return;
    }
    for_each_subset(deg3, 6, &mut |s| {
        let verts: Vec<usize> = Bits(s).collect();
        // the side holding the smallest vertex is listed first
        for i in 1..6 {
            for j in i + 1..6 {
                let side_a = [verts[0], verts[i], verts[j]];
                let side_b: Vec<usize> = verts.iter().copied().filter(|v| !side_a.contains(v)).collect();
                let mut pairs = Vec::with_capacity(9);
                for &a in &side_a {
                    for &b in &side_b {
                        pairs.push((a, b));
                    }
                }
                if e.paths(&pairs, s, KuratowskiKind::K33, &mut f).is_break() {
                    return false;
                }
            }
        }
        true
    });
}

/// Calls `f` for every `k`-subset of `pool` in increasing bitmask-lexicographic
/// order until it returns false.
fn for_each_subset(pool: u32, k: usize, f: &mut dyn FnMut(u32) -> bool) {
    fn rec(rest: u32, k: usize, acc: u32, f: &mut dyn FnMut(u32) -> bool) -> bool {
        if k == 0 {
            return f(acc);
        }
        if (rest.count_ones() as usize) < k {
            return true;
        }
        let v = rest.trailing_zeros();
        let rest = rest & (rest - 1);
        rec(rest, k - 1, acc | 1 << v, f) && rec(rest, k, acc, f)
    }
    rec(pool, k, 0, f);
}

struct Enumerator<'g> {
    g: &'g Graph,
    index: [[u16; 32]; 32],
    bits: Vec<u64>,
}

impl<'g> Enumerator<'g> {
    fn new(g: &'g Graph) -> Self {
        let mut index = [[u16::MAX; 32]; 32];
        for (i, (u, v)) in g.edges().into_iter().enumerate() {
            index[u][v] = i as u16;
            index[v][u] = i as u16;
        }
        Enumerator { g, index, bits: vec![0; g.edge_count().div_ceil(64).max(1)] }
    }

    fn toggle(&mut self, u: usize, v: usize) {
        let i = self.index[u][v] as usize;
        self.bits[i / 64] ^= 1 << (i % 64);
    }

    /// Routes `pairs[..]` by internally disjoint paths avoiding `used`.
    fn paths<F>(&mut self, pairs: &[(usize, usize)], used: u32, kind: KuratowskiKind, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(KuratowskiKind, &[u64]) -> ControlFlow<()>,
    {
        let Some((&(a, b), rest)) = pairs.split_first() else {
            return f(kind, &self.bits);
        };
        // every remaining pair must still be connectable
        if !rest.iter().all(|&(x, y)| self.g.has_edge(x, y) || self.reachable(x, y, used)) {
            return ControlFlow::Continue(());
        }
        self.walk(a, b, used, rest, kind, f)
    }

    fn reachable(&self, x: usize, y: usize, used: u32) -> bool {
        let free = self.g.vertex_mask() & !used;
        let start = self.g.row(x) & free;
        if start == 0 {
            return false;
        }
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            if Bits(frontier).any(|v| self.g.has_edge(v, y)) {
                return true;
            }
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.g.row(v);
            }
            next &= free & !seen;
            seen |= next;
            frontier = next;
        }
        false
    }

    /// Extends a path currently ending at `at` towards `target`.
    fn walk<F>(
        &mut self,
        at: usize,
        target: usize,
        used: u32,
        rest: &[(usize, usize)],
        kind: KuratowskiKind,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(KuratowskiKind, &[u64]) -> ControlFlow<()>,
    {
        if self.g.has_edge(at, target) {
            self.toggle(at, target);
            let r = self.paths(rest, used, kind, f);
            self.toggle(at, target);
            r?;
        }
        for w in Bits(self.g.row(at) & !used) {
            self.toggle(at, w);
            let r = self.walk(w, target, used | 1 << w, rest, kind, f);
            self.toggle(at, w);
            r?;
        }
        ControlFlow::Continue(())
    }
}
