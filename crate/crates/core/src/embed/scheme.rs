//! Rotation systems with edge signatures, and face tracing on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A general (possibly nonorientable) embedding: a cyclic order of neighbors
/// at every vertex plus a sign on every edge. `signature[i]` belongs to
/// `graph.edges()[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingScheme {
    pub rotation: Vec<Vec<usize>>,
    pub signature: Vec<i8>,
}

/// Faces of an embedding; each face is a closed walk of directed edge-sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCensus {
    pub faces: Vec<Vec<(usize, usize)>>,
    pub face_count: usize,
}

impl FaceCensus {
    pub fn side_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }
}

impl EmbeddingScheme {
    /// All-positive scheme with neighbors in increasing order.
    pub fn sorted(g: &Graph) -> Self {
        EmbeddingScheme {
            rotation: (0..g.order()).map(|v| g.neighbors(v).collect()).collect(),
            signature: vec![1; g.edge_count()],
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.rotation.len() != g.order() {
            return Err(Error::SchemeMismatch(format!("{} rotations for {} vertices", self.rotation.len(), g.order())));
        }
        if self.signature.len() != g.edge_count() {
            return Err(Error::SchemeMismatch(format!("{} signs for {} edges", self.signature.len(), g.edge_count())));
        }
        if let Some(s) = self.signature.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::SchemeMismatch(format!("signature value {s}")));
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            let expected: Vec<usize> = g.neighbors(v).collect();
            if sorted != expected {
                return Err(Error::SchemeMismatch(format!(
                    "rotation at vertex {v} is not a permutation of its neighbors"
                )));
            }
        }
        Ok(())
    }
}

fn edge_index_table(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut idx = vec![vec![usize::MAX; n]; n];
    for (i, (u, v)) in g.edges().into_iter().enumerate() {
        idx[u][v] = i;
        idx[v][u] = i;
    }
    idx
}

/// Traces faces: leaving `v` towards its `i`-th rotation neighbor with local
/// orientation `s`, the walk arrives at `w`, multiplies `s` by the edge sign,
/// and continues with the successor (`s = +1`) or predecessor (`s = -1`) of
/// `v` in the rotation at `w`. Each face is traced once.
pub fn trace_faces(g: &Graph, scheme: &EmbeddingScheme) -> Result<FaceCensus> {
    scheme.validate(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.order() == 1 {
        return Ok(FaceCensus { faces: vec![], face_count: 1 });
    }
    if g.min_degree() == 0 {
        return Err(Error::SchemeMismatch("isolated vertex".into()));
    }
    let n = g.order();
    let eidx = edge_index_table(g);
    let pos: Vec<Vec<usize>> = {
        let mut pos = vec![vec![usize::MAX; n]; n];
        for (v, rot) in scheme.rotation.iter().enumerate() {
            for (i, &w) in rot.iter().enumerate() {
                pos[v][w] = i;
            }
        }
        pos
    };
    // corner (w, j) sits between rotation positions j and j+1 at w
    let mut corner_face: Vec<Vec<usize>> = scheme.rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let mut visited: Vec<Vec<[bool; 2]>> = scheme.rotation.iter().map(|r| vec![[false; 2]; r.len()]).collect();
    let step = |v: usize, i: usize, s: i8| -> (usize, usize, i8, usize) {
        let w = scheme.rotation[v][i];
        let s2 = s * scheme.signature[eidx[v][w]];
        let j = pos[w][v];
        let d = scheme.rotation[w].len();
        if s2 > 0 {
            (w, (j + 1) % d, s2, j)
        } else {
            let k = (j + d - 1) % d;
            (w, k, s2, k)
        }
    };
    let mut faces = Vec::new();
    for v in 0..n {
        for i in 0..scheme.rotation[v].len() {
            for s in [1i8, -1] {
                let si = (s < 0) as usize;
                if visited[v][i][si] {
                    continue;
                }
                let (w0, _, _, c0) = step(v, i, s);
                let fresh = corner_face[w0][c0] == usize::MAX;
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut cv, mut ci, mut cs) = (v, i, s);
                while !visited[cv][ci][(cs < 0) as usize] {
                    visited[cv][ci][(cs < 0) as usize] = true;
                    let (w, ni, ns, c) = step(cv, ci, cs);
                    if fresh {
                        corner_face[w][c] = id;
                        walk.push((cv, w));
                    }
                    (cv, ci, cs) = (w, ni, ns);
                }
                if fresh {
                    faces.push(walk);
                }
            }
        }
    }
    let face_count = faces.len();
    Ok(FaceCensus { faces, face_count })
}

/// `2 - V + E - F` of the cellular embedding described by `scheme`.
pub fn euler_genus_of_scheme(g: &Graph, scheme: &EmbeddingScheme) -> Result<usize> {
    let census = trace_faces(g, scheme)?;
    let chi = g.order() as i64 - g.edge_count() as i64 + census.face_count as i64;
    Ok((2 - chi) as usize)
}

/// True iff the signature is switching-equivalent to all `+1`.
pub fn is_orientable_scheme(g: &Graph, scheme: &EmbeddingScheme) -> Result<bool> {
    scheme.validate(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let eidx = edge_index_table(g);
    let n = g.order();
    let mut potential = vec![0i8; n];
    if n == 0 {
        return Ok(true);
    }
    potential[0] = 1;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            let s = scheme.signature[eidx[v][w]];
            if potential[w] == 0 {
                potential[w] = potential[v] * s;
                queue.push_back(w);
            } else if potential[w] != potential[v] * s {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
