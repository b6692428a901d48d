//! Planarity by Demoucron–Malgrange–Pertuiset on each biconnected block.

use crate::graph::{Bits, Graph};

pub fn is_planar(g: &Graph) -> bool {
    let n = g.order();
    if n <= 4 {
        return true;
    }
    if g.edge_count() > 3 * n - 6 {
        return false;
    }
    blocks(g).into_iter().all(|b| block_is_planar(&g.induced_edges(&b)))
}

impl Graph {
    /// Subgraph with the given edges on the vertices they touch.
    pub(crate) fn induced_edges(&self, edges: &[(usize, usize)]) -> Graph {
        let mut rows = vec![0u32; self.order()];
        for &(u, v) in edges {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        let touched = rows.iter().enumerate().filter(|(_, r)| **r != 0).fold(0u32, |m, (v, _)| m | 1 << v);
        Graph::from_rows(self.order(), &rows).induced(touched)
    }
}

/// Edge sets of the biconnected blocks (Hopcroft–Tarjan).
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        // iterative DFS: (vertex, parent, remaining neighbors)
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut frames: Vec<(usize, usize, u32)> = vec![(root, usize::MAX, g.row(root))];
        while let Some(frame) = frames.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            if frame.2 != 0 {
                let w = frame.2.trailing_zeros() as usize;
                frame.2 &= frame.2 - 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, g.row(w)));
                } else if disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(pf) = frames.last() {
                    let p = pf.0;
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn block_is_planar(g: &Graph) -> bool {
    let n = g.order();
    let m = g.edge_count();
    if n <= 4 || m <= n + 2 {
        // at most three independent cycles: never contains K5 or K3,3
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    let cycle = find_cycle(g);
    let mut emb_v = 0u32;
    let mut emb_adj = vec![0u32; n];
    let mut embedded_edges = 0;
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        emb_v |= 1 << a;
        emb_adj[a] |= 1 << b;
        emb_adj[b] |= 1 << a;
        embedded_edges += 1;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    while embedded_edges < m {
        let fragments = fragments(g, emb_v, &emb_adj);
        let face_masks: Vec<u32> = faces.iter().map(|f| f.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&k| face_masks[k] & frag.attach == frag.attach).collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("fragments exist while edges remain");
        let path = fragment_path(g, &fragments[fi], emb_v);
        for w in path.windows(2) {
            emb_adj[w[0]] |= 1 << w[1];
            emb_adj[w[1]] |= 1 << w[0];
            embedded_edges += 1;
        }
        for &v in &path {
            emb_v |= 1 << v;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    true
}

fn find_cycle(g: &Graph) -> Vec<usize> {
    // in a block every edge lies on a cycle; close edge 0-x by a shortest path
    let u = (0..g.order()).find(|&v| g.degree(v) > 0).unwrap();
    let v = g.neighbors(u).next().unwrap();
    let path = bfs_path(g, v, 1 << u, g.vertex_mask(), Some((v, u)));
    path.expect("block edge lies on a cycle")
}

/// Shortest path from `s` to any vertex in `targets` through `allowed`,
/// optionally refusing to traverse one edge.
fn bfs_path(g: &Graph, s: usize, targets: u32, allowed: u32, forbidden: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let n = g.order();
    let mut parent = vec![usize::MAX; n];
    let mut seen = 1u32 << s;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for y in Bits(g.row(x)) {
            if forbidden.is_some_and(|(a, b)| (x, y) == (a, b) || (x, y) == (b, a)) {
                continue;
            }
            if seen >> y & 1 == 1 {
                continue;
            }
            if targets >> y & 1 == 1 {
                let mut path = vec![y, x];
                let mut c = x;
                while parent[c] != usize::MAX {
                    c = parent[c];
                    path.push(c);
                }
                path.reverse();
                return Some(path);
            }
            if allowed >> y & 1 == 0 {
                continue;
            }
            seen |= 1 << y;
            parent[y] = x;
            queue.push_back(y);
        }
    }
    None
}

struct Fragment {
    /// Non-embedded vertices of the fragment (empty for a chord).
    inner: u32,
    attach: u32,
    chord: Option<(usize, usize)>,
}

fn fragments(g: &Graph, emb_v: u32, emb_adj: &[u32]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for u in Bits(emb_v) {
        for v in Bits(g.row(u) & emb_v & !emb_adj[u]) {
            if u < v {
                out.push(Fragment { inner: 0, attach: 1 << u | 1 << v, chord: Some((u, v)) });
            }
        }
    }
    let rest = g.vertex_mask() & !emb_v;
    let mut seen = 0u32;
    for s in Bits(rest) {
        if seen >> s & 1 == 1 {
            continue;
        }
        let comp = g.reach(s, rest);
        seen |= comp;
        let attach = Bits(comp).fold(0u32, |m, v| m | g.row(v)) & emb_v;
        out.push(Fragment { inner: comp, attach, chord: None });
    }
    out
}

fn fragment_path(g: &Graph, frag: &Fragment, emb_v: u32) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = frag.attach.trailing_zeros() as usize;
    let others = frag.attach & !(1 << a);
    // a -> inner vertices -> another attachment
    let starts = g.row(a) & frag.inner;
    let s = starts.trailing_zeros() as usize;
    let mut path = bfs_path(g, s, others, frag.inner, None).expect("fragment of a block has two attachments");
    debug_assert!(path.iter().skip(1).take(path.len().saturating_sub(2)).all(|&v| emb_v >> v & 1 == 0));
    path.insert(0, a);
    path
}

/// Splits a face cycle by a path whose endpoints lie on it.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (a, b) = (path[0], *path.last().unwrap());
    let k = face.len();
    let i = face.iter().position(|&v| v == a).unwrap();
    let j = face.iter().position(|&v| v == b).unwrap();
    let interior = &path[1..path.len() - 1];
    // a .. b along the face, then back to a through the path
    let mut f1 = Vec::new();
    let mut x = i;
    loop {
        f1.push(face[x]);
        if x == j {
            break;
        }
        x = (x + 1) % k;
    }
    f1.extend(interior.iter().rev());
    let mut f2 = Vec::new();
    let mut x = j;
    loop {
        f2.push(face[x]);
        if x == i {
            break;
        }
        x = (x + 1) % k;
    }
    f2.extend(interior.iter());
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_complete_bipartite, make_cycle, parse_name};

    #[test]
    fn classic_cases() {
        assert!(is_planar(&make_complete(4).unwrap()));
        assert!(!is_planar(&make_complete(5).unwrap()));
        assert!(!is_planar(&make_complete_bipartite(3, 3).unwrap()));
        assert!(is_planar(&make_complete(5).unwrap().delete_edge(0, 1).unwrap()));
        assert!(is_planar(&make_complete_bipartite(3, 3).unwrap().delete_edge(0, 3).unwrap()));
        assert!(is_planar(&make_cycle(9).unwrap()));
        assert!(is_planar(&make_complete_bipartite(2, 9).unwrap()));
        assert!(!is_planar(&parse_name("K9-2K2").unwrap()));
    }

    #[test]
    fn subdivided_and_glued() {
        // Petersen graph
        let mut p = Graph::empty(10).unwrap();
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5);
            p.add_edge(i, i + 5);
            p.add_edge(i + 5, (i + 2) % 5 + 5);
        }
        assert!(!is_planar(&p));
        // two K4s sharing a cut vertex
        let k4 = make_complete(4).unwrap();
        let g = crate::graph::one_vertex_join(&k4, &k4, 3, 0).unwrap();
        assert!(is_planar(&g));
        // icosahedron-like: octahedron is planar
        let oct = parse_name("K6-3K2").unwrap();
        assert!(is_planar(&oct));
        assert!(!is_planar(&parse_name("K6-2K2").unwrap()));
    }
}
