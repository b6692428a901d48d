//! Canonical labelling by partition refinement and individualization, with
//! pruning by discovered automorphisms.
//!
//! The search tree is built from label-invariant choices only, so the
//! lexicographically smallest relabelled adjacency over all leaves is a
//! canonical form. Automorphisms are recorded whenever two leaves produce the
//! same relabelled graph; they prune sibling subtrees and also generate the
//! automorphism group, which canonical augmentation relies on.

use std::hash::{Hash, Hasher};

use crate::graph::{Bits, Graph, MAX_ORDER};

/// A relabelling of a graph that is identical for all graphs in an
/// isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: u8,
    rows: Vec<u32>,
}

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalForm({})", crate::graph::write_graph6(&self.graph()))
    }
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// The canonically relabelled graph.
    pub fn graph(&self) -> Graph {
        Graph::from_rows(self.order as usize, &self.rows)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.graph().edges()
    }

    /// 64-bit hash of the form, stable within a build.
    pub fn hash_key(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }
}

/// Result of a canonical labelling run.
#[derive(Clone, Debug)]
pub struct Labelling {
    /// `labels[v]` is the canonical label of vertex `v`.
    pub labels: Vec<usize>,
    /// Generators of the automorphism group (as vertex permutations).
    pub generators: Vec<Vec<usize>>,
    pub form: CanonicalForm,
}

impl Labelling {
    /// Orbits of the automorphism group on vertices, as a representative map.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let n = self.labels.len();
        let mut uf = UnionFind::new(n);
        for g in &self.generators {
            for (v, &w) in g.iter().enumerate() {
                uf.union(v, w);
            }
        }
        (0..n).map(|v| uf.find(v)).collect()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labelling(g).form
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && {
            let mut da = a.degrees();
            let mut db = b.degrees();
            da.sort_unstable();
            db.sort_unstable();
            da == db
        }
        && canonical_form(a) == canonical_form(b)
}

pub fn canonical_labelling(g: &Graph) -> Labelling {
    let n = g.order();
    if n == 0 {
        return Labelling { labels: vec![], generators: vec![], form: CanonicalForm { order: 0, rows: vec![] } };
    }
    let mut search = Search { g, n, first: None, best: None, autos: Vec::new(), path: Vec::new() };
    let root = Partition::unit(n).refined(g);
    search.descend(root);
    let (best_cert, best_labels, _) = search.best.unwrap();
    Labelling {
        labels: best_labels.to_vec()[..n].to_vec(),
        generators: search.autos,
        form: CanonicalForm { order: n as u8, rows: best_cert[..n].to_vec() },
    }
}

type Cert = [u32; MAX_ORDER];
type Perm = [usize; MAX_ORDER];

#[derive(Clone)]
struct Partition {
    /// Cells in order; concatenated they list every vertex once.
    cells: Vec<Vec<u8>>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        Partition { cells: vec![(0..n as u8).collect()] }
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Equitable refinement. Vertices of a cell are grouped by their counts of
    /// neighbors in every cell; groups are ordered by that count vector.
    fn refined(mut self, g: &Graph) -> Self {
        let n = g.order();
        loop {
            let k = self.cells.len();
            if k == n {
                return self;
            }
            let masks: Vec<u32> = self.cells.iter().map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
            let mut next: Vec<Vec<u8>> = Vec::with_capacity(n);
            let mut split = false;
            let mut sig = vec![0u8; k];
            for cell in &self.cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u8>, u8)> = cell
                    .iter()
                    .map(|&v| {
                        let row = g.row(v as usize);
                        for (s, m) in sig.iter_mut().zip(&masks) {
                            *s = (row & m).count_ones() as u8;
                        }
                        (sig.clone(), v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
                if !next.is_empty() && keyed[0].0 != keyed[keyed.len() - 1].0 {
                    split = true;
                }
            }
            self.cells = next;
            if !split {
                return self;
            }
        }
    }

    /// Target cell for individualization: the first smallest non-singleton.
    fn target(&self) -> usize {
        let mut best = usize::MAX;
        let mut idx = 0;
        for (i, c) in self.cells.iter().enumerate() {
            if c.len() > 1 && c.len() < best {
                best = c.len();
                idx = i;
            }
        }
        idx
    }

    fn individualize(&self, cell: usize, v: u8) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        cells.extend_from_slice(&self.cells[..cell]);
        cells.push(vec![v]);
        cells.push(self.cells[cell].iter().copied().filter(|&w| w != v).collect());
        cells.extend_from_slice(&self.cells[cell + 1..]);
        Partition { cells }
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    /// First leaf: certificate, labels, individualization path.
    first: Option<(Cert, Perm, Vec<u8>)>,
    best: Option<(Cert, Perm, Vec<u8>)>,
    autos: Vec<Vec<usize>>,
    path: Vec<u8>,
}

impl Search<'_> {
    /// Returns `Some(level)` to unwind to the node at depth `level`.
    fn descend(&mut self, p: Partition) -> Option<usize> {
        if p.is_discrete() {
            return self.leaf(&p);
        }
        let t = p.target();
        let mut cell = p.cells[t].clone();
        cell.sort_unstable();
        let depth = self.path.len();
        let mut tried: Vec<u8> = Vec::new();
        for &v in &cell {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried) {
                continue;
            }
            tried.push(v);
            self.path.push(v);
            let child = p.individualize(t, v).refined(self.g);
            let jump = self.descend(child);
            self.path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    /// Whether `v` shares an orbit with a tried vertex under the automorphisms
    /// that fix the current path pointwise.
    fn equivalent_to_tried(&self, v: u8, tried: &[u8]) -> bool {
        let mut uf = UnionFind::new(self.n);
        let mut any = false;
        for a in &self.autos {
            if self.path.iter().all(|&p| a[p as usize] == p as usize) {
                any = true;
                for (x, &y) in a.iter().enumerate().take(self.n) {
                    uf.union(x, y);
                }
            }
        }
        any && tried.iter().any(|&t| uf.find(t as usize) == uf.find(v as usize))
    }

    fn leaf(&mut self, p: &Partition) -> Option<usize> {
        let n = self.n;
        let mut labels: Perm = [0; MAX_ORDER];
        for (i, c) in p.cells.iter().enumerate() {
            labels[c[0] as usize] = i;
        }
        let mut cert: Cert = [0; MAX_ORDER];
        for v in 0..n {
            let mut r = 0u32;
            for w in Bits(self.g.row(v)) {
                r |= 1 << labels[w];
            }
            cert[labels[v]] = r;
        }
        let Some((first_cert, first_labels, first_path)) = &self.first else {
            self.first = Some((cert, labels, self.path.clone()));
            self.best = Some((cert, labels, self.path.clone()));
            return None;
        };
        if cert[..n] == first_cert[..n] {
            let auto = compose_auto(&labels, first_labels, n);
            let level = common_prefix(&self.path, first_path);
            self.autos.push(auto);
            return Some(level);
        }
        let (best_cert, best_labels, best_path) = self.best.as_ref().unwrap();
        match cert[..n].cmp(&best_cert[..n]) {
            std::cmp::Ordering::Equal => {
                let auto = compose_auto(&labels, best_labels, n);
                let level = common_prefix(&self.path, best_path);
                self.autos.push(auto);
                Some(level)
            }
            std::cmp::Ordering::Less => {
                self.best = Some((cert, labels, self.path.clone()));
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }
}

/// Automorphism sending each vertex `x` to the vertex that `reference`
/// labels the way `current` labels `x`.
fn compose_auto(current: &Perm, reference: &Perm, n: usize) -> Vec<usize> {
    let mut inv = [0usize; MAX_ORDER];
    for v in 0..n {
        inv[reference[v]] = v;
    }
    (0..n).map(|x| inv[current[x]]).collect()
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
