//! Minimal forbidden subgraphs: checking a single graph and generating every
//! obstruction of a given order.
//!
//! Generation adds edges one at a time by canonical augmentation. A parent
//! contributes one child per orbit of its automorphism group on non-edges,
//! and a child is kept only if the added edge is equivalent to its canonical
//! deletion edge, so every isomorphism class shows up once. Graphs that fail
//! to embed are not extended: any proper supergraph of them keeps a failing
//! subgraph after deleting an edge outside it. Levels are processed in order
//! of edge count, so the deletion checks of an obstruction hit results that
//! are already memoized.

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_labelling, is_isomorphic, Labelling, UnionFind};
use crate::corpus::named_obstructions;
use crate::embed::{Engine, Surface};
use crate::error::{Error, Result};
use crate::graph::{write_graph6, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDeletion {
    pub edge: (usize, usize),
    pub embeds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObstructionRecord {
    #[serde(skip)]
    pub graph: Graph,
    pub graph6: String,
    pub surface: Surface,
    pub embeds: bool,
    pub minimal: bool,
    /// One entry per edge; empty when the graph itself embeds.
    pub deletions: Vec<EdgeDeletion>,
    pub catalog_id: String,
    /// Name of an isomorphic corpus graph, if any.
    pub known_as: Option<String>,
}

/// Checks whether `g` fails `surface` while every single-edge deletion
/// (isolated vertices dropped) embeds.
pub fn is_obstruction(engine: &Engine, g: &Graph, surface: Surface) -> Result<ObstructionRecord> {
    let embeds = engine.embeds(g, surface)?;
    let mut deletions = Vec::new();
    if !embeds {
        for (u, v) in g.edges() {
            let h = g.delete_edge(u, v)?.without_isolated();
            deletions.push(EdgeDeletion { edge: (u, v), embeds: engine.embeds(&h, surface)? });
        }
    }
    let minimal = !embeds && deletions.iter().all(|d| d.embeds);
    let graph6 = write_graph6(g);
    Ok(ObstructionRecord {
        graph: g.clone(),
        catalog_id: g.name().map(str::to_string).unwrap_or_else(|| graph6.clone()),
        graph6,
        surface,
        embeds,
        minimal,
        deletions,
        known_as: g.name().map(str::to_string),
    })
}

/// A graph together with its canonical labelling.
#[derive(Clone, Debug)]
pub struct Node {
    pub graph: Graph,
    pub labelling: Labelling,
}

impl Node {
    pub fn new(graph: Graph) -> Self {
        let labelling = canonical_labelling(&graph);
        Node { graph, labelling }
    }
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * n + b
}

/// Canonical children of `parent` obtained by adding one edge.
pub fn children(parent: &Node) -> Vec<Node> {
    let g = &parent.graph;
    let n = g.order();
    let mut uf = UnionFind::new(n * n);
    for perm in &parent.labelling.generators {
        for u in 0..n {
            for v in u + 1..n {
                if !g.has_edge(u, v) {
                    uf.union(pair_index(n, u, v), pair_index(n, perm[u], perm[v]));
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; n * n];
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let root = uf.find(pair_index(n, u, v));
            if std::mem::replace(&mut seen[root], true) {
                continue;
            }
            let child = g.with_edge(u, v).expect("non-edge of the parent");
            let labelling = canonical_labelling(&child);
            if is_canonical_addition(&child, &labelling, (u, v)) {
                out.push(Node { graph: child, labelling });
            }
        }
    }
    out
}

/// True iff `added` lies in the automorphism orbit of the edge whose
/// canonical image is lexicographically largest.
fn is_canonical_addition(g: &Graph, lab: &Labelling, added: (usize, usize)) -> bool {
    let key = |(u, v): (usize, usize)| {
        let (a, b) = (lab.labels[u], lab.labels[v]);
        (a.max(b), a.min(b))
    };
    let best = g.edges().into_iter().max_by_key(|&e| key(e)).expect("child has an edge");
    if best == added {
        return true;
    }
    if lab.generators.is_empty() {
        return false;
    }
    let n = g.order();
    let mut uf = UnionFind::new(n * n);
    for perm in &lab.generators {
        for (u, v) in g.edges() {
            uf.union(pair_index(n, u, v), pair_index(n, perm[u], perm[v]));
        }
    }
    uf.find(pair_index(n, best.0, best.1)) == uf.find(pair_index(n, added.0, added.1))
}

/// Number of isomorphism classes of graphs on `order` vertices, by edge count.
pub fn count_graphs(order: usize) -> Result<Vec<usize>> {
    if order > 10 {
        return Err(Error::Unsupported(format!("counting graphs of order {order}")));
    }
    let mut counts = Vec::new();
    let mut level = vec![Node::new(Graph::empty(order)?)];
    while !level.is_empty() {
        counts.push(level.len());
        level = next_level(&level, |_, _| true);
    }
    Ok(counts)
}

/// Children of every node selected by `expand` (called with the node's
/// position), in canonical-form order.
pub fn next_level<F>(level: &[Node], expand: F) -> Vec<Node>
where
    F: Fn(usize, &Node) -> bool + Sync,
{
    let mut out: Vec<Node> =
        level.par_iter().enumerate().filter(|(i, p)| expand(*i, p)).flat_map_iter(|(_, p)| children(p)).collect();
    out.par_sort_by(|a, b| a.labelling.form.cmp(&b.labelling.form));
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelProgress {
    pub order: usize,
    pub edges: usize,
    pub graphs: usize,
    pub extended: usize,
    pub obstructions: usize,
}

/// Every obstruction for `surface` among connected graphs of minimum degree
/// at least three on `order` vertices, one per isomorphism class.
pub fn generate_obstructions(engine: &Engine, order: usize, surface: Surface) -> Result<Vec<ObstructionRecord>> {
    generate_obstructions_with(engine, order, surface, |_| {})
}

pub fn generate_obstructions_with<P>(
    engine: &Engine,
    order: usize,
    surface: Surface,
    mut progress: P,
) -> Result<Vec<ObstructionRecord>>
where
    P: FnMut(LevelProgress),
{
    if order > 10 {
        return Err(Error::Unsupported(format!("order {order} is above 10")));
    }
    if surface.euler_genus() > 6 {
        return Err(Error::Unsupported(format!("{surface} has Euler genus above 6")));
    }
    let started = Instant::now();
    let mut found: Vec<ObstructionRecord> = Vec::new();
    let mut level = vec![Node::new(Graph::empty(order)?)];
    let mut edges = 0;
    while !level.is_empty() {
        let verdicts: Vec<Result<(bool, Option<ObstructionRecord>)>> = level
            .par_iter()
            .map(|node| {
                let g = &node.graph;
                if engine.embeds(g, surface)? {
                    return Ok((true, None));
                }
                if g.min_degree() < 3 || !g.is_connected() {
                    return Ok((false, None));
                }
                let record = is_obstruction(engine, g, surface)?;
                Ok((false, record.minimal.then_some(record)))
            })
            .collect();
        let mut extend = vec![false; level.len()];
        for (i, v) in verdicts.into_iter().enumerate() {
            let (embeds, record) = v?;
            extend[i] = embeds;
            found.extend(record);
        }
        let report = LevelProgress {
            order,
            edges,
            graphs: level.len(),
            extended: extend.iter().filter(|&&x| x).count(),
            obstructions: found.len(),
        };
        info!(
            "order {order} {surface}: {} edges, {} graphs, {} extended, {} obstructions so far ({:.1}s)",
            report.edges,
            report.graphs,
            report.extended,
            report.obstructions,
            started.elapsed().as_secs_f64()
        );
        progress(report);
        level = next_level(&level, |i, _| extend[i]);
        edges += 1;
    }
    finish_catalog(&mut found, order, surface);
    Ok(found)
}

/// Sorts by (edge count, canonical form), assigns catalog ids and attaches
/// corpus names.
fn finish_catalog(found: &mut [ObstructionRecord], order: usize, surface: Surface) {
    found.sort_by_cached_key(|r| (r.graph.edge_count(), canonical_labelling(&r.graph).form));
    let named = named_obstructions(surface, order);
    for (i, r) in found.iter_mut().enumerate() {
        r.catalog_id = format!("{surface}-v{order}-{:03}", i + 1);
        r.known_as = named.iter().find(|e| is_isomorphic(&e.graph(), &r.graph)).map(|e| e.name.to_string());
        let mut g = canonical_labelling(&r.graph).form.graph();
        g.set_name(Some(r.catalog_id.clone()));
        r.graph6 = write_graph6(&g);
        r.graph = g;
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogMeta {
    surface: Surface,
    order: usize,
    count: usize,
    generated_at_unix: u64,
    entries: Vec<CatalogEntryMeta>,
}

#[derive(Serialize, Deserialize)]
struct CatalogEntryMeta {
    catalog_id: String,
    surface: Surface,
    edges: usize,
    graph6: String,
    known_as: Option<String>,
}

/// Writes `<surface>-v<order>.g6` (one graph6 line per obstruction) and a
/// `.json` sidecar with ids and metadata. Returns both paths.
pub fn write_catalog(
    dir: &Path,
    order: usize,
    surface: Surface,
    records: &[ObstructionRecord],
) -> std::io::Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir)?;
    let stem = format!("{surface}-v{order}");
    let g6_path = dir.join(format!("{stem}.g6"));
    let meta_path = dir.join(format!("{stem}.json"));
    let mut lines = String::new();
    for r in records {
        lines.push_str(&r.graph6);
        lines.push('\n');
    }
    std::fs::write(&g6_path, lines)?;
    let meta = CatalogMeta {
        surface,
        order,
        count: records.len(),
        generated_at_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        entries: records
            .iter()
            .map(|r| CatalogEntryMeta {
                catalog_id: r.catalog_id.clone(),
                surface: r.surface,
                edges: r.graph.edge_count(),
                graph6: r.graph6.clone(),
                known_as: r.known_as.clone(),
            })
            .collect(),
    };
    std::fs::write(&meta_path, serde_json::to_string_pretty(&meta).expect("catalog metadata serializes"))?;
    Ok((g6_path, meta_path))
}
