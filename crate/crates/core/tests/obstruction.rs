mod common;

use kcover::canon::is_isomorphic;
use kcover::embed::{find_embedding, is_orientable_scheme, Engine, SearchConfig, Surface};
use kcover::graph::{make_complete, parse_graph6, parse_name, Graph};
use kcover::obstruction::{generate_obstructions, is_obstruction, write_catalog};
use kcover::suite::graphs_up_to;

fn cold() -> Engine {
    Engine::new(SearchConfig { memo: false, ..SearchConfig::default() })
}

/// Without the degree and connectivity restriction, every minimal graph of
/// order <= 7 must reduce to a restricted obstruction of at most that order.
fn restriction_is_sound(surface: Surface) {
    let engine = Engine::default();
    let restricted: Vec<Vec<Graph>> = (0..=7)
        .map(|n| generate_obstructions(&engine, n, surface).unwrap().into_iter().map(|r| r.graph).collect())
        .collect();
    let mut unrestricted = 0;
    for n in 1..=7 {
        for g in graphs_up_to(n, 21).unwrap() {
            if (0..n).any(|v| g.degree(v) == 0) || !is_obstruction(&engine, &g, surface).unwrap().minimal {
                continue;
            }
            unrestricted += 1;
            let core = g.suppress_degree2();
            assert!(core.min_degree() >= 3 && core.is_connected(), "{g:?} reduces to {core:?}");
            let listed = restricted[core.order()].iter().any(|r| is_isomorphic(r, &core));
            assert!(listed, "{g:?} reduces to an unlisted graph {core:?}");
            if g.min_degree() >= 3 {
                assert_eq!(core.order(), n);
            }
        }
    }
    let total: usize = restricted.iter().map(Vec::len).sum();
    assert!(unrestricted >= total);
}

#[test]
fn restriction_is_sound_for_the_sphere() {
    restriction_is_sound(Surface::sphere());
}

#[test]
fn restriction_is_sound_for_the_projective_plane() {
    restriction_is_sound(Surface::projective_plane());
}

#[test]
fn small_sphere_catalog() {
    let counts: Vec<usize> =
        (1..=7).map(|n| generate_obstructions(&Engine::default(), n, Surface::sphere()).unwrap().len()).collect();
    assert_eq!(counts, vec![0, 0, 0, 0, 1, 1, 0]);
}

#[test]
fn torus_records_reverify_without_memo() {
    let records = generate_obstructions(&Engine::default(), 8, Surface::torus()).unwrap();
    assert_eq!(records.len(), 3);
    let engine = cold();
    for (i, r) in records.iter().enumerate() {
        assert!(!r.embeds && r.minimal);
        assert_eq!(r.deletions.len(), r.graph.edge_count());
        assert!(r.known_as.is_some(), "{} has no corpus name", r.catalog_id);
        assert_eq!(r.catalog_id, format!("torus-v8-{:03}", i + 1));
        assert_eq!(parse_graph6(&r.graph6).unwrap().edges(), r.graph.edges());
        let again = is_obstruction(&engine, &r.graph, Surface::torus()).unwrap();
        assert!(again.minimal);
        for other in &records[i + 1..] {
            assert!(!is_isomorphic(&r.graph, &other.graph));
        }
    }
}

#[test]
fn non_minimal_and_embeddable_graphs() {
    let engine = cold();
    let k6 = make_complete(6).unwrap();
    let rec = is_obstruction(&engine, &k6, Surface::sphere()).unwrap();
    assert!(!rec.embeds && !rec.minimal);
    assert!(rec.deletions.iter().all(|d| !d.embeds));
    let k5 = parse_name("K5").unwrap();
    let rec = is_obstruction(&engine, &k5, Surface::projective_plane()).unwrap();
    assert!(rec.embeds && !rec.minimal && rec.deletions.is_empty());
    // K7 misses the Klein bottle but K7-e has a nonorientable Euler genus 2 witness
    let k7 = make_complete(7).unwrap();
    let rec = is_obstruction(&engine, &k7, Surface::klein_bottle()).unwrap();
    assert!(!rec.embeds && rec.minimal);
    let h = k7.delete_edge(0, 1).unwrap();
    let scheme = find_embedding(&h, Surface::klein_bottle(), None).unwrap().unwrap();
    let edges = h.edges();
    let faces = common::face_count(&scheme.rotation, |a, b| {
        scheme.signature[edges.binary_search(&(a.min(b), a.max(b))).unwrap()]
    });
    assert_eq!(2 + h.edge_count() - h.order() - faces, 2);
    assert!(!is_orientable_scheme(&h, &scheme).unwrap());
}

#[test]
fn generation_limits() {
    assert!(generate_obstructions(&Engine::default(), 11, Surface::sphere()).is_err());
    assert!(generate_obstructions(&Engine::default(), 8, Surface::Nonorientable(7)).is_err());
}

#[test]
fn catalog_files() {
    let dir = tempfile::tempdir().unwrap();
    let records = generate_obstructions(&Engine::default(), 6, Surface::sphere()).unwrap();
    let (g6, meta) = write_catalog(dir.path(), 6, Surface::sphere(), &records).unwrap();
    let lines: Vec<String> = std::fs::read_to_string(&g6).unwrap().lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 1);
    assert!(is_isomorphic(&parse_graph6(&lines[0]).unwrap(), &parse_name("K3,3").unwrap()));
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(meta).unwrap()).unwrap();
    assert_eq!(meta["count"], 1);
    assert_eq!(meta["entries"][0]["known_as"], "K3,3");
}
