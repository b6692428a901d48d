//! Exhaustive embeddability by enumerating every rotation system and every
//! signature with a fixed all-positive spanning tree. Exponential; only for
//! cross-checking the search on small graphs.

use super::scheme::{trace_faces, EmbeddingScheme};
use super::Surface;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_ORACLE_CAP: u128 = 10_000_000;

/// Smallest Euler genus over orientable and over nonorientable schemes of a
/// connected graph, with a witness for each.
#[derive(Clone, Debug)]
pub struct OracleGenera {
    pub orientable: usize,
    pub orientable_witness: EmbeddingScheme,
    /// `None` for graphs without cycles (every signature switches to `+1`).
    pub nonorientable: Option<usize>,
    pub nonorientable_witness: Option<EmbeddingScheme>,
}

pub fn scheme_count(g: &Graph) -> u128 {
    let mut total: u128 = 1;
    for v in 0..g.order() {
        for k in 2..g.degree(v) {
            total = total.saturating_mul(k as u128);
        }
    }
    let cycles = g.edge_count() + g.components().len() - g.order();
    total.saturating_mul(1u128 << cycles.min(100))
}

pub fn oracle_genera(g: &Graph, cap: u128) -> Result<OracleGenera> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let count = scheme_count(g);
    if count > cap {
        return Err(Error::OracleTooLarge(count));
    }
    let n = g.order();
    let edges = g.edges();
    let tree = spanning_tree(g, &edges);
    let free: Vec<usize> = (0..edges.len()).filter(|&i| !tree[i]).collect();
    let base: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut perms: Vec<Vec<usize>> = base.iter().map(|r| (0..r.len()).collect()).collect();
    let mut best: Option<OracleGenera> = None;
    let mut orientable_best = usize::MAX;
    let mut nonorientable_best = usize::MAX;
    loop {
        let rotation: Vec<Vec<usize>> = (0..n).map(|v| perms[v].iter().map(|&i| base[v][i]).collect()).collect();
        for mask in 0u64..1 << free.len() {
            let mut signature = vec![1i8; edges.len()];
            for (bit, &e) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    signature[e] = -1;
                }
            }
            let scheme = EmbeddingScheme { rotation: rotation.clone(), signature };
            let faces = trace_faces(g, &scheme)?.face_count;
            let eg = (2 + edges.len() as i64 - n as i64 - faces as i64) as usize;
            let state = best.get_or_insert_with(|| OracleGenera {
                orientable: usize::MAX,
                orientable_witness: scheme.clone(),
                nonorientable: None,
                nonorientable_witness: None,
            });
            if mask == 0 {
                if eg < orientable_best {
                    orientable_best = eg;
                    state.orientable = eg;
                    state.orientable_witness = scheme;
                }
            } else if eg < nonorientable_best {
                nonorientable_best = eg;
                state.nonorientable = Some(eg);
                state.nonorientable_witness = Some(scheme);
            }
        }
        if !next_rotation(&mut perms) {
            break;
        }
    }
    Ok(best.unwrap_or(OracleGenera {
        orientable: 0,
        orientable_witness: EmbeddingScheme::sorted(g),
        nonorientable: None,
        nonorientable_witness: None,
    }))
}

/// Exhaustive decision with the same contract as `Engine::embeds`.
pub fn oracle_embeds(g: &Graph, surface: Surface) -> Result<bool> {
    oracle_embeds_capped(g, surface, DEFAULT_ORACLE_CAP)
}

pub fn oracle_embeds_capped(g: &Graph, surface: Surface, cap: u128) -> Result<bool> {
    let g = g.without_isolated();
    // (orientable genus, nonorientable genus) per component, planar -> N1
    let mut parts = Vec::new();
    for comp in g.components() {
        let c = g.induced(comp);
        if c.edge_count() == 0 {
            continue;
        }
        let r = oracle_genera(&c, cap)?;
        let nonor = match r.nonorientable {
            Some(k) => k.min(r.orientable + 1),
            None => r.orientable + 1,
        };
        parts.push((r.orientable, nonor));
    }
    let orientable_total: usize = parts.iter().map(|p| p.0).sum();
    Ok(match surface {
        Surface::Orientable(h) => orientable_total <= 2 * h as usize,
        Surface::Nonorientable(k) => {
            let k = k as usize;
            let cheapest: usize = parts.iter().map(|&(o, n)| o.min(n)).sum();
            let with_crosscap = parts.iter().map(|&(o, n)| cheapest - o.min(n) + n).min().unwrap_or(1);
            orientable_total < k || with_crosscap <= k
        }
    })
}

fn spanning_tree(g: &Graph, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut in_tree = vec![false; edges.len()];
    let mut uf = crate::canon::UnionFind::new(g.order());
    for (i, &(u, v)) in edges.iter().enumerate() {
        if uf.find(u) != uf.find(v) {
            uf.union(u, v);
            in_tree[i] = true;
        }
    }
    in_tree
}

/// Advances the odometer of per-vertex cyclic orders (first entry fixed).
fn next_rotation(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut() {
        if p.len() > 2 && next_permutation(&mut p[1..]) {
            return true;
        }
        if p.len() > 2 {
            p[1..].sort_unstable();
        }
    }
    false
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::scheme::euler_genus_of_scheme;
    use crate::graph::{make_complete, make_complete_bipartite};

    #[test]
    fn k5_and_k33() {
        let k5 = make_complete(5).unwrap();
        assert_eq!(scheme_count(&k5), 7776 * 64);
        let r = oracle_genera(&k5, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.orientable, 2);
        assert_eq!(r.nonorientable, Some(1));
        let w = r.nonorientable_witness.unwrap();
        assert_eq!(euler_genus_of_scheme(&k5, &w).unwrap(), 1);
        assert!(oracle_embeds(&k5, Surface::Nonorientable(1)).unwrap());
        assert!(!oracle_embeds(&k5, Surface::Orientable(0)).unwrap());

        let k33 = make_complete_bipartite(3, 3).unwrap();
        assert!(!oracle_embeds(&k33, Surface::Orientable(0)).unwrap());
        assert!(oracle_embeds(&k33, Surface::Orientable(1)).unwrap());
        assert!(oracle_embeds(&make_complete(4).unwrap(), Surface::Orientable(0)).unwrap());
    }

    #[test]
    fn triangle_schemes() {
        // all 4 signatures of K3 (rotations are trivial): genus 0 or 1
        let k3 = make_complete(3).unwrap();
        let r = oracle_genera(&k3, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.orientable, 0);
        assert_eq!(r.nonorientable, Some(1));
    }

    #[test]
    fn cap_and_disconnected() {
        let k8 = make_complete(8).unwrap();
        assert!(matches!(oracle_embeds(&k8, Surface::Orientable(5)), Err(Error::OracleTooLarge(_))));
        let two_k5 = make_complete(5).unwrap().disjoint_union(&make_complete(5).unwrap()).unwrap();
        assert!(!oracle_embeds(&two_k5, Surface::Nonorientable(1)).unwrap());
        assert!(oracle_embeds(&two_k5, Surface::Nonorientable(2)).unwrap());
        assert!(!oracle_embeds(&two_k5, Surface::Orientable(1)).unwrap());
        assert!(oracle_embeds(&two_k5, Surface::Orientable(2)).unwrap());
    }
}
