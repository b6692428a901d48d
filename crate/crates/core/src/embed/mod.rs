//! Surface embeddability.
//!
//! [`Engine::embeds`] reduces the graph (drops vertices of degree at most one
//! and suppresses or removes degree-2 vertices), answers planar inputs
//! directly, and otherwise runs an exact backtracking search per connected
//! component. Results for connected pieces are memoized by canonical form.

mod oracle;
mod planarity;
mod scheme;
mod search;

pub use oracle::{oracle_embeds, oracle_embeds_capped, oracle_genera, scheme_count, OracleGenera, DEFAULT_ORACLE_CAP};
pub use planarity::is_planar;
pub use scheme::{euler_genus_of_scheme, is_orientable_scheme, trace_faces, EmbeddingScheme, FaceCensus};

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};
use search::{Search, Target};

/// A closed surface: `Orientable(g)` is the sphere with `g` handles,
/// `Nonorientable(k)` the sphere with `k >= 1` crosscaps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Surface {
    Orientable(u32),
    Nonorientable(u32),
}

impl Surface {
    pub const fn sphere() -> Self {
        Surface::Orientable(0)
    }

    pub const fn torus() -> Self {
        Surface::Orientable(1)
    }

    pub const fn projective_plane() -> Self {
        Surface::Nonorientable(1)
    }

    pub const fn klein_bottle() -> Self {
        Surface::Nonorientable(2)
    }

    pub fn nonorientable(k: usize) -> Result<Self> {
        if k == 0 || k > u32::MAX as usize {
            return Err(Error::InvalidGenusParameter(k));
        }
        Ok(Surface::Nonorientable(k as u32))
    }

    pub fn euler_genus(self) -> u32 {
        match self {
            Surface::Orientable(g) => 2 * g,
            Surface::Nonorientable(k) => k,
        }
    }

    pub fn is_orientable(self) -> bool {
        matches!(self, Surface::Orientable(_))
    }

    pub fn genus(self) -> u32 {
        match self {
            Surface::Orientable(g) | Surface::Nonorientable(g) => g,
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Surface::Orientable(0) => f.write_str("sphere"),
            Surface::Orientable(1) => f.write_str("torus"),
            Surface::Orientable(g) => write!(f, "s{g}"),
            Surface::Nonorientable(k) => write!(f, "n{k}"),
        }
    }
}

impl FromStr for Surface {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "sphere" | "plane" => return Ok(Surface::sphere()),
            "torus" => return Ok(Surface::torus()),
            "projective" | "projective-plane" => return Ok(Surface::projective_plane()),
            "klein" | "klein-bottle" => return Ok(Surface::klein_bottle()),
            _ => {}
        }
        let parse = |digits: &str| digits.parse::<u32>().ok();
        if let Some(g) = t.strip_prefix('s').and_then(parse) {
            return Ok(Surface::Orientable(g));
        }
        if let Some(k) = t.strip_prefix('n').and_then(parse) {
            if k == 0 {
                return Err(Error::InvalidSurface("n0 does not exist; use sphere".into()));
            }
            return Ok(Surface::Nonorientable(k));
        }
        Err(Error::UnknownSurface(s.to_string()))
    }
}

impl TryFrom<String> for Surface {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Surface> for String {
    fn from(s: Surface) -> String {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Per-search node limit; `None` means exact and unbounded.
    pub node_limit: Option<u64>,
    /// Worker threads for callers that fan out independent queries.
    pub jobs: usize,
    /// Maximum number of memo entries; `None` is unbounded.
    pub cache_cap: Option<usize>,
    pub memo: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_limit: None, jobs: 1, cache_cap: None, memo: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub queries: u64,
    pub searches: u64,
    pub nodes: u64,
    pub memo_hits: u64,
    pub memo_entries: u64,
}

/// Memoizing embeddability oracle. Safe to share between threads.
#[derive(Default)]
pub struct Engine {
    config: SearchConfig,
    memo: DashMap<(CanonicalForm, Surface), bool>,
    queries: AtomicU64,
    searches: AtomicU64,
    nodes: AtomicU64,
    memo_hits: AtomicU64,
}

impl Engine {
    pub fn new(config: SearchConfig) -> Self {
        Engine { config, ..Engine::default() }
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            queries: self.queries.load(Ordering::Relaxed),
            searches: self.searches.load(Ordering::Relaxed),
            nodes: self.nodes.load(Ordering::Relaxed),
            memo_hits: self.memo_hits.load(Ordering::Relaxed),
            memo_entries: self.memo.len() as u64,
        }
    }

    pub fn clear_memo(&self) {
        self.memo.clear();
    }

    /// Snapshot of the memo as `(graph6 of canonical form, surface, result)`.
    pub fn memo_entries(&self) -> Vec<(String, Surface, bool)> {
        let mut out: Vec<_> =
            self.memo.iter().map(|e| (crate::graph::write_graph6(&e.key().0.graph()), e.key().1, *e.value())).collect();
        out.sort();
        out
    }

    /// Seeds the memo; each graph is re-canonicalized before insertion.
    pub fn preload(&self, entries: impl IntoIterator<Item = (Graph, Surface, bool)>) {
        for (g, s, r) in entries {
            self.remember(canonical_form(&g), s, r);
        }
    }

    fn remember(&self, key: CanonicalForm, surface: Surface, value: bool) {
        if !self.config.memo {
            return;
        }
        if self.config.cache_cap.is_some_and(|cap| self.memo.len() >= cap) {
            return;
        }
        self.memo.insert((key, surface), value);
    }

    /// Whether `g` embeds in `surface`. Exact unless a node limit is set, in
    /// which case an undecided search yields [`Error::BudgetExhausted`].
    pub fn embeds(&self, g: &Graph, surface: Surface) -> Result<bool> {
        if let Surface::Nonorientable(0) = surface {
            return Err(Error::InvalidSurface("n0".into()));
        }
        self.queries.fetch_add(1, Ordering::Relaxed);
        let r = reduce_for_embedding(g);
        if r.edge_count() == 0 || is_planar(&r) {
            return Ok(true);
        }
        if surface == Surface::sphere() {
            return Ok(false);
        }
        let budget = surface.euler_genus();
        if euler_genus_lower_bound(&r) > budget {
            return Ok(false);
        }
        let comps: Vec<Graph> =
            r.components().into_iter().map(|c| r.induced(c)).filter(|c| c.edge_count() > 0).collect();
        if comps.len() == 1 {
            return self.embeds_connected(&comps[0], surface);
        }
        self.embeds_components(&comps, surface)
    }

    /// Combines per-component genera: orientable Euler genera add up, and a
    /// nonorientable target needs one nonorientable component unless the
    /// orientable total leaves room for a crosscap.
    fn embeds_components(&self, comps: &[Graph], surface: Surface) -> Result<bool> {
        let budget = surface.euler_genus();
        let over = budget + 1;
        let mut parts = Vec::with_capacity(comps.len());
        for c in comps {
            let planar = is_planar(c);
            let mut o = if planar { 0 } else { over };
            if !planar {
                let mut h = euler_genus_lower_bound(c).div_ceil(2);
                while 2 * h <= budget {
                    if self.embeds_connected(c, Surface::Orientable(h))? {
                        o = 2 * h;
                        break;
                    }
                    h += 1;
                }
            }
            let mut n = if planar { 1 } else { over };
            if !surface.is_orientable() && !planar {
                for k in euler_genus_lower_bound(c).max(1)..=budget {
                    if self.embeds_connected(c, Surface::Nonorientable(k))? {
                        n = k;
                        break;
                    }
                }
            }
            parts.push((o, n));
        }
        let total_o: u32 = parts.iter().map(|p| p.0).sum();
        Ok(match surface {
            Surface::Orientable(h) => total_o <= 2 * h,
            Surface::Nonorientable(k) => {
                let cheapest: u32 = parts.iter().map(|&(o, n)| o.min(n)).sum();
                let crosscapped = parts.iter().map(|&(o, n)| cheapest - o.min(n) + n).min().unwrap_or(1);
                total_o < k || crosscapped <= k
            }
        })
    }

    fn embeds_connected(&self, c: &Graph, surface: Surface) -> Result<bool> {
        if is_planar(c) {
            return Ok(true);
        }
        if surface == Surface::sphere() {
            return Ok(false);
        }
        let budget = surface.euler_genus();
        let lb = euler_genus_lower_bound(c);
        if lb > budget {
            return Ok(false);
        }
        let key = if self.config.memo { Some(canonical_form(c)) } else { None };
        if let Some(k) = &key {
            if let Some(hit) = self.memo.get(&(k.clone(), surface)) {
                self.memo_hits.fetch_add(1, Ordering::Relaxed);
                return Ok(*hit);
            }
        }
        let target = Target { max_euler_genus: budget, orientable: surface.is_orientable() };
        let mut search = Search::new(c, target, self.config.node_limit);
        let result = search.run();
        self.searches.fetch_add(1, Ordering::Relaxed);
        self.nodes.fetch_add(search.nodes, Ordering::Relaxed);
        let result = result?;
        if let Some(k) = key {
            self.remember(k, surface, result);
        }
        Ok(result)
    }

    /// Smallest `g` with `g` embedding in the orientable surface of genus `g`.
    pub fn orientable_genus(&self, g: &Graph) -> Result<u32> {
        let mut h = euler_genus_lower_bound(g).div_ceil(2);
        while !self.embeds(g, Surface::Orientable(h))? {
            h += 1;
        }
        Ok(h)
    }

    /// Smallest `k >= 1` with `g` embedding in `N_k`; planar graphs report
    /// genus 0 with the `planar` flag set.
    pub fn nonorientable_genus(&self, g: &Graph) -> Result<NonorientableGenus> {
        if self.embeds(g, Surface::sphere())? {
            return Ok(NonorientableGenus { genus: 0, planar: true });
        }
        let mut k = euler_genus_lower_bound(g).max(1);
        while !self.embeds(g, Surface::Nonorientable(k))? {
            k += 1;
        }
        Ok(NonorientableGenus { genus: k, planar: false })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonorientableGenus {
    pub genus: u32,
    pub planar: bool,
}

/// One-shot query with a fresh engine.
pub fn embeds(g: &Graph, surface: Surface, config: &SearchConfig) -> Result<bool> {
    Engine::new(config.clone()).embeds(g, surface)
}

pub fn orientable_genus(g: &Graph) -> Result<u32> {
    Engine::default().orientable_genus(g)
}

pub fn nonorientable_genus(g: &Graph) -> Result<NonorientableGenus> {
    Engine::default().nonorientable_genus(g)
}

/// An explicit embedding of the connected graph `g` in `surface`, found by
/// running the search on `g` itself (no reductions). `None` when there is none.
pub fn find_embedding(g: &Graph, surface: Surface, node_limit: Option<u64>) -> Result<Option<EmbeddingScheme>> {
    if let Surface::Nonorientable(0) = surface {
        return Err(Error::InvalidSurface("n0".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.edge_count() == 0 {
        return Ok(Some(EmbeddingScheme::sorted(g)));
    }
    let target = Target { max_euler_genus: surface.euler_genus(), orientable: surface.is_orientable() };
    let mut search = Search::new(g, target, node_limit);
    Ok(if search.run()? { Some(search.scheme()) } else { None })
}

/// Sum over components with at least three vertices of
/// `max(0, ceil(E/3 - V + 2))`.
pub fn euler_genus_lower_bound(g: &Graph) -> u32 {
    g.components()
        .into_iter()
        .map(|c| {
            let v = c.count_ones() as i64;
            if v < 3 {
                return 0;
            }
            let e = Bits(c).map(|x| (g.row(x) & c).count_ones() as i64).sum::<i64>() / 2;
            let excess = e - 3 * v + 6;
            if excess <= 0 {
                0
            } else {
                ((excess + 2) / 3) as u32
            }
        })
        .sum()
}

/// Removes vertices of degree at most one, deletes degree-2 vertices whose
/// neighbors are adjacent and suppresses the remaining degree-2 vertices,
/// until none apply. Embeddability in every surface is unchanged.
pub fn reduce_for_embedding(g: &Graph) -> Graph {
    let mut rows: Vec<u32> = g.rows().to_vec();
    let mut alive = g.vertex_mask();
    loop {
        let mut changed = false;
        for v in Bits(alive) {
            let d = rows[v].count_ones();
            if d <= 1 {
                if d == 1 {
                    let w = rows[v].trailing_zeros() as usize;
                    rows[w] &= !(1 << v);
                }
                rows[v] = 0;
                alive &= !(1 << v);
                changed = true;
            } else if d == 2 {
                let a = rows[v].trailing_zeros() as usize;
                let b = 31 - rows[v].leading_zeros() as usize;
                rows[a] &= !(1 << v);
                rows[b] &= !(1 << v);
                rows[a] |= 1 << b;
                rows[b] |= 1 << a;
                rows[v] = 0;
                alive &= !(1 << v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut full = Graph::empty(g.order()).expect("same order");
    for v in Bits(alive) {
        for w in Bits(rows[v]) {
            if v < w {
                full = full.with_edge(v, w).expect("valid vertices");
            }
        }
    }
    full.induced(alive)
}
