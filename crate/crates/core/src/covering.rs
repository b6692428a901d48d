//! Kuratowski coverings: `g̃ + 1` Kuratowski subgraphs whose union is the
//! host, where every pair union fails the projective plane and every triple
//! union fails the Klein bottle (`g̃ >= 2`) and the torus (`g̃ >= 3`).

use std::collections::HashMap;
use std::ops::ControlFlow;

use log::debug;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::embed::{Engine, SearchConfig, Surface};
use crate::error::{Error, Result};
use crate::graph::{write_graph6, Graph};
use crate::kuratowski::{edge_bits_iter, for_each_kuratowski, KuratowskiKind, KuratowskiSubgraph, DEFAULT_POOL_LIMIT};

pub const CERTIFICATE_FORMAT: &str = "kcover-certificate/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringConditions {
    pub gtilde: u32,
    pub arity: usize,
    pub pair_surface: Surface,
    pub triple_surfaces: Vec<Surface>,
}

impl CoveringConditions {
    pub fn new(gtilde: usize) -> Result<Self> {
        if gtilde == 0 || gtilde > u32::MAX as usize {
            return Err(Error::InvalidGenusParameter(gtilde));
        }
        let mut triple_surfaces = Vec::new();
        if gtilde >= 2 {
            triple_surfaces.push(Surface::klein_bottle());
        }
        if gtilde >= 3 {
            triple_surfaces.push(Surface::torus());
        }
        Ok(CoveringConditions {
            gtilde: gtilde as u32,
            arity: gtilde + 1,
            pair_surface: Surface::projective_plane(),
            triple_surfaces,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionResult {
    pub members: Vec<usize>,
    pub surface: Surface,
    pub embeds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub arity_ok: bool,
    /// Per member: a Kuratowski subgraph of the host with the declared kind.
    pub members_valid: Vec<bool>,
    pub coverage_ok: bool,
    pub uncovered: Vec<(usize, usize)>,
    pub pairs_ok: bool,
    pub triples_ok: bool,
    pub pair_results: Vec<UnionResult>,
    pub triple_results: Vec<UnionResult>,
    /// Human-readable list of violated conditions.
    pub violations: Vec<String>,
    pub pass: bool,
}

impl CheckReport {
    pub fn members_ok(&self) -> bool {
        self.members_valid.iter().all(|&b| b)
    }
}

fn union_graph(order: usize, members: &[&KuratowskiSubgraph]) -> Graph {
    let mut g = Graph::empty(order).expect("host order");
    for m in members {
        for &(u, v) in &m.edges {
            g = g.with_edge(u, v).expect("member edges fit the host order");
        }
    }
    g
}

fn member_is_valid(host: &Graph, m: &KuratowskiSubgraph) -> bool {
    if m.edges.iter().any(|&(u, v)| !host.has_edge(u, v)) {
        return false;
    }
    match KuratowskiSubgraph::from_edges(host.order(), &m.edges) {
        Some(rebuilt) => {
            let mut paths = m.paths.clone();
            paths.sort();
            let mut branch = m.branch_vertices.clone();
            branch.sort_unstable();
            rebuilt.kind == m.kind && rebuilt.branch_vertices == branch && rebuilt.paths == paths
        }
        None => false,
    }
}

/// Checks every condition independently; failures are reported, not raised.
pub fn check_covering(
    engine: &Engine,
    g: &Graph,
    members: &[KuratowskiSubgraph],
    gtilde: usize,
) -> Result<CheckReport> {
    let cond = CoveringConditions::new(gtilde)?;
    let mut violations = Vec::new();
    let arity_ok = members.len() == cond.arity;
    if !arity_ok {
        violations.push(format!("arity: {} members, expected {}", members.len(), cond.arity));
    }
    let members_valid: Vec<bool> = members.iter().map(|m| member_is_valid(g, m)).collect();
    for (i, ok) in members_valid.iter().enumerate() {
        if !ok {
            violations.push(format!("member {i}: not a Kuratowski subgraph of the host"));
        }
    }
    let covered = union_graph(g.order(), &members.iter().collect::<Vec<_>>());
    let uncovered: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(u, v)| !covered.has_edge(u, v)).collect();
    let foreign = covered.edges().iter().filter(|&&(u, v)| !g.has_edge(u, v)).count();
    let coverage_ok = uncovered.is_empty() && foreign == 0;
    if !uncovered.is_empty() {
        violations.push(format!("coverage: {} host edges uncovered", uncovered.len()));
    }
    if foreign > 0 {
        violations.push(format!("coverage: {foreign} member edges are not host edges"));
    }
    let mut pair_results = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let u = union_graph(g.order(), &[&members[i], &members[j]]);
            let embeds = engine.embeds(&u, cond.pair_surface)?;
            if embeds {
                violations.push(format!("pair ({i}, {j}): union embeds in {}", cond.pair_surface));
            }
            pair_results.push(UnionResult { members: vec![i, j], surface: cond.pair_surface, embeds });
        }
    }
    let mut triple_results = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            for k in j + 1..members.len() {
                let u = union_graph(g.order(), &[&members[i], &members[j], &members[k]]);
                for &s in &cond.triple_surfaces {
                    let embeds = engine.embeds(&u, s)?;
                    if embeds {
                        violations.push(format!("triple ({i}, {j}, {k}): union embeds in {s}"));
                    }
                    triple_results.push(UnionResult { members: vec![i, j, k], surface: s, embeds });
                }
            }
        }
    }
    let pairs_ok = pair_results.iter().all(|r| !r.embeds);
    let triples_ok = triple_results.iter().all(|r| !r.embeds);
    let pass = arity_ok && members_valid.iter().all(|&b| b) && coverage_ok && pairs_ok && triples_ok;
    Ok(CheckReport {
        arity_ok,
        members_valid,
        coverage_ok,
        uncovered,
        pairs_ok,
        triples_ok,
        pair_results,
        triple_results,
        violations,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverConfig {
    /// Maximum number of Kuratowski subgraphs kept in the member pool.
    pub pool_limit: usize,
    pub search: SearchConfig,
}

impl Default for CoverConfig {
    fn default() -> Self {
        CoverConfig { pool_limit: DEFAULT_POOL_LIMIT, search: SearchConfig::default() }
    }
}

#[derive(Clone, Debug)]
pub enum CoverOutcome {
    Found(Box<CoveringCertificate>),
    /// The whole pool was searched without success.
    NoCovering {
        pool_size: usize,
    },
    /// The pool hit its limit and no covering exists among the kept members.
    PoolLimitReached {
        pool_size: usize,
    },
}

impl CoverOutcome {
    pub fn certificate(&self) -> Option<&CoveringCertificate> {
        match self {
            CoverOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoverStats {
    pub pool_size: usize,
    pub nodes: u64,
    pub pair_checks: u64,
    pub triple_checks: u64,
}

/// Member pool as packed edge bitsets over the host's edge indices.
struct Pool {
    words: usize,
    bits: Vec<u64>,
    kinds: Vec<KuratowskiKind>,
}

impl Pool {
    fn len(&self) -> usize {
        self.kinds.len()
    }

    fn member(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }
}

struct Cover<'a> {
    engine: &'a Engine,
    host: &'a Graph,
    edges: Vec<(usize, usize)>,
    cond: CoveringConditions,
    pool: Pool,
    /// How many pool members contain each host edge.
    frequency: Vec<u32>,
    pairs: HashMap<(u32, u32), bool>,
    chosen: Vec<u32>,
    stats: CoverStats,
}

impl Cover<'_> {
    fn union_of(&self, idx: &[u32]) -> Graph {
        let mut g = Graph::empty(self.host.order()).expect("host order");
        for &i in idx {
            for e in edge_bits_iter(self.pool.member(i as usize)) {
                let (u, v) = self.edges[e];
                g = g.with_edge(u, v).expect("host edge");
            }
        }
        g
    }

    fn pair_fails(&mut self, a: u32, b: u32) -> Result<bool> {
        let key = (a.min(b), a.max(b));
        if let Some(&r) = self.pairs.get(&key) {
            return Ok(r);
        }
        self.stats.pair_checks += 1;
        let u = self.union_of(&[a, b]);
        let fails = !self.engine.embeds(&u, self.cond.pair_surface)?;
        self.pairs.insert(key, fails);
        Ok(fails)
    }

    /// Triples formed by `c` with two already chosen members.
    fn triples_fail(&mut self, c: u32) -> Result<bool> {
        if self.cond.triple_surfaces.is_empty() {
            return Ok(true);
        }
        for i in 0..self.chosen.len() {
            for j in i + 1..self.chosen.len() {
                self.stats.triple_checks += 1;
                let u = self.union_of(&[self.chosen[i], self.chosen[j], c]);
                for s in self.cond.triple_surfaces.clone() {
                    if self.engine.embeds(&u, s)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn dfs(&mut self, uncovered: &[u64]) -> Result<bool> {
        self.stats.nodes += 1;
        let remaining = self.cond.arity - self.chosen.len();
        let left: usize = uncovered.iter().map(|w| w.count_ones() as usize).sum();
        if remaining == 0 {
            return Ok(left == 0);
        }
        // a subdivision of K5 on n vertices has n + 5 edges, K3,3 has n + 3
        let max_edges = self.host.order() + 5;
        if left > remaining * max_edges {
            return Ok(false);
        }
        // branch on the uncovered edge that the fewest members contain; with
        // nothing left to cover, any new member will do
        let target = edge_bits_iter(uncovered).min_by_key(|&e| (self.frequency[e], e));
        let mut candidates: Vec<(u32, u32)> = Vec::new();
        for i in 0..self.pool.len() {
            let m = self.pool.member(i);
            if let Some(e) = target {
                if m[e / 64] >> (e % 64) & 1 == 0 {
                    continue;
                }
            }
            if self.chosen.contains(&(i as u32)) {
                continue;
            }
            let gain: u32 = m.iter().zip(uncovered).map(|(a, b)| (a & b).count_ones()).sum();
            if remaining == 1 && gain as usize != left {
                continue;
            }
            candidates.push((gain, i as u32));
        }
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        'next: for (_, c) in candidates {
            for k in 0..self.chosen.len() {
                let other = self.chosen[k];
                if !self.pair_fails(other, c)? {
                    continue 'next;
                }
            }
            if !self.triples_fail(c)? {
                continue;
            }
            let rest: Vec<u64> = uncovered.iter().zip(self.pool.member(c as usize)).map(|(u, m)| u & !m).collect();
            self.chosen.push(c);
            if self.dfs(&rest)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Depth-first search for a covering among the Kuratowski subgraphs of `g`.
pub fn find_covering(engine: &Engine, g: &Graph, gtilde: usize, config: &CoverConfig) -> Result<CoverOutcome> {
    find_covering_with_stats(engine, g, gtilde, config).map(|(o, _)| o)
}

pub fn find_covering_with_stats(
    engine: &Engine,
    g: &Graph,
    gtilde: usize,
    config: &CoverConfig,
) -> Result<(CoverOutcome, CoverStats)> {
    let cond = CoveringConditions::new(gtilde)?;
    let edges = g.edges();
    let words = edges.len().div_ceil(64).max(1);
    let mut pool = Pool { words, bits: Vec::new(), kinds: Vec::new() };
    let mut truncated = false;
    for_each_kuratowski(g, |kind, bits| {
        if pool.kinds.len() >= config.pool_limit {
            truncated = true;
            return ControlFlow::Break(());
        }
        pool.bits.extend_from_slice(bits);
        pool.kinds.push(kind);
        ControlFlow::Continue(())
    });
    let mut frequency = vec![0u32; edges.len()];
    for i in 0..pool.len() {
        for e in edge_bits_iter(pool.member(i)) {
            frequency[e] += 1;
        }
    }
    debug!("covering pool: {} members (truncated: {truncated})", pool.len());
    let pool_size = pool.len();
    let mut cover = Cover {
        engine,
        host: g,
        edges: edges.clone(),
        cond,
        pool,
        frequency,
        pairs: HashMap::new(),
        chosen: Vec::new(),
        stats: CoverStats { pool_size, ..CoverStats::default() },
    };
    let mut all = vec![0u64; words];
    for e in 0..edges.len() {
        all[e / 64] |= 1 << (e % 64);
    }
    let found = pool_size > 0 && cover.dfs(&all)?;
    let stats = cover.stats;
    if !found {
        let outcome = if truncated {
            CoverOutcome::PoolLimitReached { pool_size }
        } else {
            CoverOutcome::NoCovering { pool_size }
        };
        return Ok((outcome, stats));
    }
    let members: Vec<KuratowskiSubgraph> = cover
        .chosen
        .iter()
        .map(|&i| {
            let es: Vec<(usize, usize)> = edge_bits_iter(cover.pool.member(i as usize)).map(|e| edges[e]).collect();
            KuratowskiSubgraph::from_edges(g.order(), &es).expect("pool members are subdivisions")
        })
        .collect();
    let report = check_covering(engine, g, &members, gtilde)?;
    debug_assert!(report.pass, "search result must satisfy the checker: {:?}", report.violations);
    let cert = CoveringCertificate::new(g, gtilde as u32, members, &report, config);
    Ok((CoverOutcome::Found(Box::new(cert)), stats))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostRecord {
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
    pub name: Option<String>,
    pub graph6: String,
    /// Hex SHA-256 of the graph6 string.
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateMember {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    pub format: String,
    pub host: HostRecord,
    pub gtilde: u32,
    pub members: Vec<CertificateMember>,
    /// For each host edge (in `host.edges` order), a member containing it.
    pub edge_cover: Vec<usize>,
    pub pair_results: Vec<UnionResult>,
    pub triple_results: Vec<UnionResult>,
    pub engine_version: String,
    pub config: CoverConfig,
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl HostRecord {
    pub fn new(g: &Graph) -> Self {
        let graph6 = write_graph6(g);
        HostRecord {
            order: g.order(),
            edges: g.edges(),
            name: g.name().map(str::to_string),
            sha256: sha256_hex(&graph6),
            graph6,
        }
    }
}

impl CoveringCertificate {
    fn new(
        g: &Graph,
        gtilde: u32,
        members: Vec<KuratowskiSubgraph>,
        report: &CheckReport,
        config: &CoverConfig,
    ) -> Self {
        let edge_cover = g
            .edges()
            .iter()
            .map(|e| members.iter().position(|m| m.edges.binary_search(e).is_ok()).unwrap_or(usize::MAX))
            .collect();
        CoveringCertificate {
            format: CERTIFICATE_FORMAT.to_string(),
            host: HostRecord::new(g),
            gtilde,
            members: members
                .into_iter()
                .map(|m| CertificateMember { kind: m.kind, branch_vertices: m.branch_vertices, paths: m.paths })
                .collect(),
            edge_cover,
            pair_results: report.pair_results.clone(),
            triple_results: report.triple_results.clone(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }

    /// Host graph after checking that edges, graph6 and hash agree.
    pub fn host_graph(&self) -> Result<Graph> {
        let h = &self.host;
        let g = Graph::from_edges(h.order, &h.edges).map_err(|e| Error::MalformedCertificate(format!("host: {e}")))?;
        if write_graph6(&g) != h.graph6 {
            return Err(Error::MalformedCertificate("host edges do not match graph6".into()));
        }
        if sha256_hex(&h.graph6) != h.sha256 {
            return Err(Error::MalformedCertificate("host hash mismatch".into()));
        }
        Ok(match &h.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }

    /// Members with edge sets rebuilt from their paths.
    pub fn member_subgraphs(&self) -> Result<Vec<KuratowskiSubgraph>> {
        self.members
            .iter()
            .map(|m| {
                let mut edges = Vec::new();
                for p in &m.paths {
                    for w in p.windows(2) {
                        if w[0] >= self.host.order || w[1] >= self.host.order || w[0] == w[1] {
                            return Err(Error::MalformedCertificate(format!("path vertex out of range in {p:?}")));
                        }
                        edges.push((w[0].min(w[1]), w[0].max(w[1])));
                    }
                }
                edges.sort_unstable();
                edges.dedup();
                Ok(KuratowskiSubgraph {
                    kind: m.kind,
                    branch_vertices: m.branch_vertices.clone(),
                    paths: m.paths.clone(),
                    edges,
                })
            })
            .collect()
    }
}

/// Re-checks a certificate from scratch with a fresh engine. The report also
/// fails when the recorded pair or triple outcomes disagree with the
/// recomputed ones.
pub fn verify_certificate(text: &str) -> Result<CheckReport> {
    let cert = CoveringCertificate::from_json(text)?;
    if cert.format != CERTIFICATE_FORMAT {
        return Err(Error::MalformedCertificate(format!("unknown format {:?}", cert.format)));
    }
    let g = cert.host_graph()?;
    let members = cert.member_subgraphs()?;
    let engine = Engine::new(SearchConfig { node_limit: None, ..cert.config.search.clone() });
    let mut report = check_covering(&engine, &g, &members, cert.gtilde as usize)?;
    if report.pair_results != cert.pair_results || report.triple_results != cert.triple_results {
        report.violations.push("recorded results: pair or triple outcomes differ from recomputation".into());
        report.pass = false;
    }
    let cover_ok = cert.edge_cover.len() == g.edge_count()
        && cert.edge_cover.iter().zip(g.edges()).all(|(&i, e)| members.get(i).is_some_and(|m| m.edges.contains(&e)));
    if !cover_ok {
        report.violations.push("edge cover: recorded witness does not match the members".into());
        report.pass = false;
    }
    Ok(report)
}
