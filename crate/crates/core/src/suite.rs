//! Staged acceptance pipeline behind `kcover corpus`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use log::info;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::is_isomorphic;
use crate::corpus::{corpus, named_obstructions, Role};
use crate::covering::{check_covering, find_covering, CoverConfig, CoverOutcome};
use crate::embed::{
    euler_genus_of_scheme, find_embedding, is_orientable_scheme, oracle_genera, trace_faces, Engine, SearchConfig,
    Surface, DEFAULT_ORACLE_CAP,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::kuratowski::contains_kuratowski;
use crate::obstruction::{generate_obstructions, is_obstruction, next_level, Node};

/// Tiers are cumulative: `order8` includes `quick`, `full` includes both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Quick,
    Order8,
    Full,
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Tier::Quick),
            "order8" => Ok(Tier::Order8),
            "full" => Ok(Tier::Full),
            _ => Err(Error::Unsupported(format!("suite {s:?} (expected quick, order8 or full)"))),
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Quick => "quick",
            Tier::Order8 => "order8",
            Tier::Full => "full",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub tier: Tier,
    pub title: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>2} {:<6} {:<4} {:<44} {} ({:.1}s)",
            self.id,
            self.tier,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.seconds
        )
    }
}

/// All graphs on `order` vertices with at most `max_edges` edges, one per
/// isomorphism class.
pub fn graphs_up_to(order: usize, max_edges: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut level = vec![Node::new(Graph::empty(order)?)];
    for _ in 0..=max_edges {
        if level.is_empty() {
            break;
        }
        out.extend(level.iter().map(|n| n.graph.clone()));
        level = next_level(&level, |_, _| true);
    }
    Ok(out)
}

fn subdivide(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    if g.order() >= MAX_ORDER {
        return Err(Error::OrderOutOfRange(g.order() + 1));
    }
    let mut edges: Vec<_> = g.edges().into_iter().filter(|&e| e != (u.min(v), u.max(v))).collect();
    let w = g.order();
    edges.push((u, w));
    edges.push((v, w));
    Graph::from_edges(w + 1, &edges)
}

fn timed(id: u32, tier: Tier, title: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let t = Instant::now();
    let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let r = CriterionResult { id, tier, title: title.into(), pass, detail, seconds: t.elapsed().as_secs_f64() };
    info!("{r}");
    r
}

/// Runs every criterion of `tier` and the tiers below it, in order.
pub fn run_suite(tier: Tier) -> Vec<CriterionResult> {
    let mut out = vec![
        timed(1, Tier::Quick, "sphere obstructions are K5 and K3,3", planar_baseline),
        timed(2, Tier::Quick, "search agrees with exhaustive oracle", oracle_equivalence),
        timed(3, Tier::Quick, "embedding properties on named graphs", property_checks),
    ];
    if tier >= Tier::Order8 {
        let engine = Engine::new(SearchConfig::default());
        out.push(timed(4, Tier::Order8, "order-8 torus obstructions", || {
            catalog_matches(&engine, 8, Surface::torus(), 3)
        }));
        out.push(timed(5, Tier::Order8, "order-8 Klein bottle obstructions", || {
            catalog_matches(&engine, 8, Surface::klein_bottle(), 5)
        }));
        out.push(timed(6, Tier::Order8, "order-8 N3 obstruction and covering", || {
            covered_catalog(&engine, 8, 3, Some(1))
        }));
        out.push(timed(7, Tier::Order8, "N4 obstructions K9-K1,2, K9-2K2 covered", || n4_targets(&engine)));
    }
    if tier >= Tier::Full {
        let engine = Engine::new(SearchConfig::default());
        out.push(timed(8, Tier::Full, "order-9 N3 obstructions all covered", || {
            covered_catalog(&engine, 9, 3, Some(16))
        }));
        out.push(timed(9, Tier::Full, "order-9 Klein bottle obstruction count", || {
            let found = generate_obstructions(&engine, 9, Surface::klein_bottle())?;
            Ok((found.len() == 63, format!("found {}, expected 63", found.len())))
        }));
    }
    out
}

fn planar_baseline() -> Result<(bool, String)> {
    let engine = Engine::new(SearchConfig::default());
    let mut checked = 0;
    let mut mismatches = 0;
    for n in 1..=6 {
        for g in graphs_up_to(n, n * (n - 1) / 2)? {
            if g.order() < 5 || !g.is_connected() || g.min_degree() < 3 {
                continue;
            }
            checked += 1;
            if engine.embeds(&g, Surface::sphere())? == contains_kuratowski(&g) {
                mismatches += 1;
            }
        }
    }
    let mut obstructions = Vec::new();
    for n in 5..=6 {
        obstructions.extend(generate_obstructions(&engine, n, Surface::sphere())?);
    }
    let named = [crate::graph::parse_name("K5")?, crate::graph::parse_name("K3,3")?];
    let named_ok = named.iter().all(|g| is_obstruction(&engine, g, Surface::sphere()).is_ok_and(|r| r.minimal));
    let catalog_ok =
        obstructions.len() == 2 && named.iter().all(|g| obstructions.iter().any(|r| is_isomorphic(&r.graph, g)));
    Ok((
        mismatches == 0 && named_ok && catalog_ok,
        format!("{checked} graphs, {mismatches} mismatches, {} sphere obstructions", obstructions.len()),
    ))
}

/// The surfaces the oracle is compared on.
pub const ORACLE_SURFACES: [Surface; 4] =
    [Surface::Orientable(0), Surface::Nonorientable(1), Surface::Orientable(1), Surface::Nonorientable(2)];

/// Answers for [`ORACLE_SURFACES`] from exhaustive scheme enumeration of a
/// connected graph.
pub fn oracle_answers(g: &Graph) -> Result<[bool; 4]> {
    let o = oracle_genera(g, DEFAULT_ORACLE_CAP)?;
    let n = o.nonorientable.unwrap_or(usize::MAX);
    Ok([o.orientable == 0, n <= 1 || o.orientable < 1, o.orientable <= 2, n <= 2 || o.orientable < 2])
}

fn oracle_equivalence() -> Result<(bool, String)> {
    let cold = Engine::new(SearchConfig { memo: false, ..SearchConfig::default() });
    let mut graphs = Vec::new();
    for n in 3..=8 {
        graphs.extend(graphs_up_to(n, 11)?.into_iter().filter(|g| g.is_connected() && g.min_degree() >= 2));
    }
    let per_graph: Vec<Result<Vec<String>>> = graphs
        .par_iter()
        .map(|g| {
            let want = oracle_answers(g)?;
            let mut bad = Vec::new();
            for (s, want) in ORACLE_SURFACES.into_iter().zip(want) {
                if cold.embeds(g, s)? != want {
                    bad.push(format!("{} on {s}", crate::graph::write_graph6(g)));
                }
            }
            Ok(bad)
        })
        .collect();
    let mut mismatches = Vec::new();
    for r in per_graph {
        mismatches.extend(r?);
    }
    let checks = graphs.len() * ORACLE_SURFACES.len();
    Ok((
        mismatches.is_empty(),
        format!("{} graphs, {checks} queries, {} mismatches {:?}", graphs.len(), mismatches.len(), mismatches),
    ))
}

fn property_checks() -> Result<(bool, String)> {
    let engine = Engine::new(SearchConfig::default());
    let mut failures = Vec::new();
    let mut checks = 0;
    for entry in corpus() {
        let g = entry.graph();
        let mut fail = |what: &str| failures.push(format!("{}: {what}", entry.name));
        // witnesses on the named surface for G - e, traced independently
        let (u, v) = g.edges()[0];
        let h = g.delete_edge(u, v)?;
        checks += 1;
        match find_embedding(&h, entry.surface, None)? {
            Some(s) => {
                let census = trace_faces(&h, &s)?;
                let eg = euler_genus_of_scheme(&h, &s)? as u32;
                if census.side_count() != 2 * h.edge_count() {
                    fail("face sides");
                }
                if is_orientable_scheme(&h, &s)? && !eg.is_multiple_of(2) {
                    fail("orientable Euler genus is odd");
                }
                if eg > entry.surface.euler_genus() {
                    fail("witness exceeds the surface");
                }
            }
            None => fail("G - e has no witness"),
        }
        // crosscap monotonicity
        let k = entry.surface.euler_genus().max(1);
        checks += 1;
        if engine.embeds(&g, Surface::Nonorientable(k))? && !engine.embeds(&g, Surface::Nonorientable(k + 1))? {
            fail("crosscap monotonicity");
        }
        // suppression invariance
        checks += 1;
        let sub = subdivide(&g, u, v)?;
        if engine.embeds(&sub, entry.surface)? != engine.embeds(&g, entry.surface)? {
            fail("subdivision changed the answer");
        }
        // subgraph monotonicity
        checks += 1;
        if engine.embeds(&g, entry.surface)? || !engine.embeds(&h, entry.surface)? {
            fail("not an edge-minimal obstruction");
        }
    }
    Ok((failures.is_empty(), format!("{checks} checks, failures {failures:?}")))
}

fn catalog_matches(engine: &Engine, order: usize, surface: Surface, expected: usize) -> Result<(bool, String)> {
    let found = generate_obstructions(engine, order, surface)?;
    let named = named_obstructions(surface, order);
    let matched = named.iter().filter(|e| found.iter().any(|r| is_isomorphic(&r.graph, &e.graph()))).count();
    Ok((
        found.len() == expected && matched == named.len() && named.len() == expected,
        format!("found {}, expected {expected}, {matched} match named graphs", found.len()),
    ))
}

fn covered_catalog(engine: &Engine, order: usize, gtilde: usize, expected: Option<usize>) -> Result<(bool, String)> {
    let surface = Surface::Nonorientable(gtilde as u32);
    let found = generate_obstructions(engine, order, surface)?;
    let config = CoverConfig::default();
    let mut covered = 0;
    for r in &found {
        if let CoverOutcome::Found(cert) = find_covering(engine, &r.graph, gtilde, &config)? {
            let cold = Engine::new(SearchConfig::default());
            let report = check_covering(&cold, &r.graph, &cert.member_subgraphs()?, gtilde)?;
            if report.pass && cert.members.len() == gtilde + 1 {
                covered += 1;
            }
        }
    }
    let count_ok = expected.is_none_or(|n| n == found.len());
    Ok((
        count_ok && covered == found.len(),
        format!(
            "found {} (expected {}), {covered} covered",
            found.len(),
            expected.map_or("-".into(), |n| n.to_string())
        ),
    ))
}

fn n4_targets(engine: &Engine) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for entry in corpus() {
        let Role::CoveringTarget(gtilde) = entry.role else { continue };
        let g = entry.graph();
        let minimal = is_obstruction(engine, &g, entry.surface)?.minimal;
        let outcome = find_covering(engine, &g, gtilde as usize, &CoverConfig::default())?;
        let pass = match outcome.certificate() {
            Some(cert) => {
                let cold = Engine::new(SearchConfig::default());
                let report = check_covering(&cold, &g, &cert.member_subgraphs()?, gtilde as usize)?;
                report.pass && cert.members.len() == gtilde as usize + 1
            }
            None => false,
        };
        ok &= minimal && pass;
        parts.push(format!("{}: obstruction {minimal}, covering {pass}", entry.name));
    }
    Ok((ok && !parts.is_empty(), parts.join("; ")))
}
