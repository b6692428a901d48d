#![allow(dead_code)]

//! Test-side reference code that shares nothing with the library's
//! embedding machinery: its own face tracer and scheme enumeration.

use kcover::embed::Surface;
use kcover::graph::Graph;

/// Faces of the scheme given by per-vertex rotations and per-edge signs
/// (`sign(u, v)`), for a connected graph. Counts orbits of the
/// (vertex, position, orientation) walk; each face shows up once per
/// direction.
pub fn face_count(rot: &[Vec<usize>], sign: impl Fn(usize, usize) -> i8) -> usize {
    let n = rot.len();
    let offset: Vec<usize> = rot
        .iter()
        .scan(0, |acc, r| {
            let o = *acc;
            *acc += r.len();
            Some(o)
        })
        .collect();
    let darts = offset.last().map_or(0, |o| o + rot[n - 1].len());
    let mut seen = vec![false; 2 * darts];
    let mut orbits = 0;
    for start in 0..2 * darts {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut state = start;
        while !seen[state] {
            seen[state] = true;
            let (dart, positive) = (state / 2, state % 2 == 0);
            let u = offset.partition_point(|&o| o <= dart) - 1;
            let i = dart - offset[u];
            let w = rot[u][i];
            let s = if positive { 1 } else { -1 } * sign(u, w);
            let d = rot[w].len() as isize;
            let j = rot[w].iter().position(|&x| x == u).expect("symmetric rotation") as isize;
            let k = (j + s as isize).rem_euclid(d) as usize;
            state = 2 * (offset[w] + k) + usize::from(s < 0);
        }
    }
    orbits / 2
}

/// Minimum Euler genus over orientable schemes and over nonorientable
/// schemes (`None` for forests) of a connected graph, by exhaustive
/// enumeration. Stops early once both minima reach the face-size bound.
pub fn brute_genera(g: &Graph) -> (usize, Option<usize>) {
    assert!(g.is_connected());
    let n = g.order();
    let edges = g.edges();
    let (v, e) = (n as i64, edges.len() as i64);
    // spanning tree edges keep sign +1
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(c: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    let mut free = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
        if ra == rb {
            free.push(i);
        } else {
            comp[ra] = rb;
        }
    }
    let mut rot: Vec<Vec<usize>> = (0..n).map(|x| g.neighbors(x).collect()).collect();
    let mut best_o = usize::MAX;
    let mut best_n: Option<usize> = None;
    // with a cycle present every face has at least three sides
    let floor = if free.is_empty() { 0 } else { (2 - v + (e + 2) / 3).max(0) as usize };
    let floor_o = floor + floor % 2;
    let floor_n = floor.max(1);
    let mut signs = vec![1i8; edges.len()];
    let index = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).unwrap();
    let mut visit = |rot: &Vec<Vec<usize>>| -> bool {
        for mask in 0u64..1 << free.len() {
            for (bit, &ei) in free.iter().enumerate() {
                signs[ei] = if mask >> bit & 1 == 1 { -1 } else { 1 };
            }
            let f = face_count(rot, |a, b| signs[index(a, b)]) as i64;
            let eg = (2 - v + e - f) as usize;
            if mask == 0 {
                best_o = best_o.min(eg);
            } else if best_n.is_none_or(|b| eg < b) {
                best_n = Some(eg);
            }
        }
        best_o == floor_o && (free.is_empty() || best_n == Some(floor_n))
    };
    permute_all(&mut rot, 0, &mut visit);
    (best_o, best_n)
}

/// Calls `f` on every rotation system (first neighbor of each vertex
/// fixed); stops when `f` returns true.
fn permute_all(rot: &mut Vec<Vec<usize>>, v: usize, f: &mut impl FnMut(&Vec<Vec<usize>>) -> bool) -> bool {
    if v == rot.len() {
        return f(rot);
    }
    let d = rot[v].len();
    if d <= 3 {
        if permute_all(rot, v + 1, f) {
            return true;
        }
        if d == 3 {
            rot[v].swap(1, 2);
            let stop = permute_all(rot, v + 1, f);
            rot[v].swap(1, 2);
            return stop;
        }
        return false;
    }
    let tail: Vec<usize> = rot[v][1..].to_vec();
    let mut stop = false;
    for_each_permutation(&tail, &mut |p| {
        rot[v][1..].copy_from_slice(p);
        stop = permute_all(rot, v + 1, f);
        stop
    });
    stop
}

fn for_each_permutation(items: &[usize], f: &mut impl FnMut(&[usize]) -> bool) {
    fn go(a: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if k == a.len() {
            return f(a);
        }
        for i in k..a.len() {
            a.swap(k, i);
            if go(a, k + 1, f) {
                a.swap(k, i);
                return true;
            }
            a.swap(k, i);
        }
        false
    }
    go(&mut items.to_vec(), 0, f);
}

/// Reference answer for a connected graph: orientable Euler genus `o` and
/// nonorientable `nk` decide S_h by `o <= 2h` and N_k by `nk <= k or o < k`.
pub fn brute_embeds(genera: (usize, Option<usize>), s: Surface) -> bool {
    let (o, nk) = genera;
    match s {
        Surface::Orientable(h) => o <= 2 * h as usize,
        Surface::Nonorientable(k) => nk.is_some_and(|x| x <= k as usize) || o < k as usize,
    }
}

/// Every labelled graph on `n` vertices, as edge bitmasks over the pairs in
/// lexicographic order.
pub fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let es: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        Graph::from_edges(n, &es).unwrap()
    })
}

/// Isomorphism by trying every permutation.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let n = a.order();
    let ids: Vec<usize> = (0..n).collect();
    let mut found = false;
    for_each_permutation(&ids, &mut |p| {
        found = a.edges().iter().all(|&(u, v)| b.has_edge(p[u], p[v]));
        found
    });
    found
}

pub fn subdivide(g: &Graph, u: usize, v: usize) -> Graph {
    let w = g.order();
    let mut es: Vec<(usize, usize)> = g.edges().into_iter().filter(|&e| e != (u.min(v), u.max(v))).collect();
    es.push((u, w));
    es.push((v, w));
    Graph::from_edges(w + 1, &es).unwrap()
}
