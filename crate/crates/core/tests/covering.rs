use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use kcover::covering::{
    check_covering, find_covering, verify_certificate, CoverConfig, CoverOutcome, CoveringCertificate,
};
use kcover::embed::{Engine, SearchConfig};
use kcover::graph::{parse_name, Graph};
use kcover::kuratowski::classify;
use kcover::Error;

fn cold() -> Engine {
    Engine::new(SearchConfig { memo: false, ..SearchConfig::default() })
}

fn host() -> Graph {
    parse_name("K8-K2").unwrap()
}

fn certificate() -> CoveringCertificate {
    let out = find_covering(&Engine::default(), &host(), 3, &CoverConfig::default()).unwrap();
    *match out {
        CoverOutcome::Found(c) => c,
        other => panic!("expected a covering, got {other:?}"),
    }
}

fn tampered(cert: &CoveringCertificate, edit: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(&cert.to_json()).unwrap();
    edit(&mut v);
    v.to_string()
}

#[test]
fn certificate_is_sound() {
    let cert = certificate();
    let g = cert.host_graph().unwrap();
    assert_eq!(g.edges(), host().edges());
    let members = cert.member_subgraphs().unwrap();
    assert_eq!(members.len(), 4);
    for m in &members {
        assert_eq!(classify(&m.graph(g.order())), Some(m.kind));
        assert!(m.edges.iter().all(|&(u, v)| g.has_edge(u, v)));
        // paths run between branch vertices
        for p in &m.paths {
            assert!(m.branch_vertices.contains(&p[0]) && m.branch_vertices.contains(p.last().unwrap()));
        }
    }
    for e in g.edges() {
        assert!(members.iter().any(|m| m.edges.contains(&e)), "{e:?} uncovered");
    }
    assert_eq!(cert.pair_results.len(), 6);
    assert!(cert.pair_results.iter().chain(&cert.triple_results).all(|r| !r.embeds));
    let report = verify_certificate(&cert.to_json()).unwrap();
    assert!(report.pass, "{:?}", report.violations);
}

#[test]
fn member_order_does_not_matter() {
    let cert = certificate();
    let g = cert.host_graph().unwrap();
    let mut members = cert.member_subgraphs().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..3 {
        members.shuffle(&mut rng);
        let r = check_covering(&cold(), &g, &members, 3).unwrap();
        assert!(r.pass, "{:?}", r.violations);
    }
}

#[test]
fn every_member_is_needed() {
    let cert = certificate();
    let g = cert.host_graph().unwrap();
    let members = cert.member_subgraphs().unwrap();
    for drop in 0..members.len() {
        let mut fewer = members.clone();
        fewer.remove(drop);
        let r = check_covering(&Engine::default(), &g, &fewer, 3).unwrap();
        assert!(!r.pass && !r.arity_ok);
    }
    // repeating a member keeps the arity but breaks the pair condition
    let mut repeated = members.clone();
    repeated[1] = repeated[0].clone();
    let r = check_covering(&Engine::default(), &g, &repeated, 3).unwrap();
    assert!(!r.pass);
}

#[test]
fn tampering_is_detected() {
    let cert = certificate();
    let wrong_gtilde = tampered(&cert, |v| v["gtilde"] = 4.into());
    assert!(!verify_certificate(&wrong_gtilde).unwrap().pass);

    let flipped = tampered(&cert, |v| v["pair_results"][0]["embeds"] = true.into());
    let r = verify_certificate(&flipped).unwrap();
    assert!(!r.pass && r.violations.iter().any(|s| s.starts_with("recorded results")));

    let first = cert.host.edges[0];
    let other = cert.member_subgraphs().unwrap().iter().position(|m| !m.edges.contains(&first)).unwrap();
    let bad_cover = tampered(&cert, |v| v["edge_cover"][0] = other.into());
    let r = verify_certificate(&bad_cover).unwrap();
    assert!(!r.pass && r.violations.iter().any(|s| s.starts_with("edge cover")));

    let short_path = tampered(&cert, |v| {
        let p = v["members"][0]["paths"][0].as_array_mut().unwrap();
        p.pop();
    });
    assert!(!verify_certificate(&short_path).unwrap().pass);
}

#[test]
fn host_mismatches_are_malformed() {
    let cert = certificate();
    let hash = tampered(&cert, |v| v["host"]["sha256"] = "00".into());
    assert!(matches!(verify_certificate(&hash), Err(Error::MalformedCertificate(_))));
    let g6 = tampered(&cert, |v| v["host"]["graph6"] = "G~~~~{".into());
    assert!(matches!(verify_certificate(&g6), Err(Error::MalformedCertificate(_))));
    let format = tampered(&cert, |v| v["format"] = "other/1".into());
    assert!(matches!(verify_certificate(&format), Err(Error::MalformedCertificate(_))));
    let out_of_range = tampered(&cert, |v| v["members"][0]["paths"][0][0] = 40.into());
    assert!(matches!(verify_certificate(&out_of_range), Err(Error::MalformedCertificate(_))));
    assert!(matches!(verify_certificate("{"), Err(Error::MalformedCertificate(_))));
}

#[test]
fn json_round_trip() {
    let cert = certificate();
    let v: Value = serde_json::from_str(&cert.to_json()).unwrap();
    assert_eq!(v["format"], "kcover-certificate/1");
    assert_eq!(CoveringCertificate::from_json(&cert.to_json()).unwrap(), cert);
}

#[test]
fn pool_limit_and_empty_pool() {
    let small = CoverConfig { pool_limit: 2, ..CoverConfig::default() };
    let out = find_covering(&Engine::default(), &host(), 3, &small).unwrap();
    assert!(matches!(out, CoverOutcome::PoolLimitReached { pool_size: 2 }));
    let k33 = parse_name("K3,3").unwrap();
    let out = find_covering(&Engine::default(), &k33, 1, &CoverConfig::default()).unwrap();
    assert!(matches!(out, CoverOutcome::NoCovering { pool_size: 1 }));
}
