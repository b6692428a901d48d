//! Exact embeddability of a connected graph by building an embedding one edge
//! at a time.
//!
//! Vertices are placed in a fixed order. The first edge to a new vertex is a
//! pendant edge dropped into a corner of an already placed vertex; every
//! other edge joins a corner at each endpoint, with a sign. Relative to the
//! faces of the partial embedding an edge either splits a face (Euler genus
//! unchanged), twists within a face (+1), or merges two faces (+2). Euler
//! genus never decreases along a branch, so branches over budget are cut.
//!
//! Two further cuts apply once no merge is affordable. Splits only refine
//! faces and twists keep a face's vertex set, so every remaining edge must
//! already have both (placed) endpoints on a common face, and every unplaced
//! vertex must see all of its placed neighbors on one face.

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

const NONE: u16 = u16::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Target {
    pub max_euler_genus: u32,
    /// Orientable surface: only positive signs are allowed.
    pub orientable: bool,
}

impl Target {
    /// Budget for a branch whose partial embedding is (still) orientable.
    fn orientable_budget(&self) -> i64 {
        if self.orientable {
            self.max_euler_genus as i64
        } else {
            // N_k needs orientable Euler genus at most k - 1
            self.max_euler_genus as i64 - 1
        }
    }
}

#[derive(Clone, Copy)]
struct Move {
    at_a: u16,
    at_b: u16,
    sign: i8,
    cost: u8,
}

pub(crate) struct Search<'g> {
    g: &'g Graph,
    target: Target,
    /// Edge `i` joins `ends[i].0` (placed) to `ends[i].1`.
    ends: Vec<(u8, u8)>,
    pendant: Vec<bool>,
    next: Vec<u16>,
    prev: Vec<u16>,
    sign: Vec<i8>,
    any_dart: Vec<u16>,
    placed: u32,
    placed_count: u32,
    negative: u32,
    // face scratch
    corner_face: Vec<u16>,
    corner_orient: Vec<i8>,
    face_mask: Vec<u32>,
    visited: Vec<bool>,
    pub nodes: u64,
    limit: u64,
}

impl<'g> Search<'g> {
    /// `g` must be connected with at least one edge.
    pub(crate) fn new(g: &'g Graph, target: Target, limit: Option<u64>) -> Self {
        let (ends, pendant) = insertion_order(g);
        let m = ends.len();
        Search {
            g,
            target,
            ends,
            pendant,
            next: vec![NONE; 2 * m],
            prev: vec![NONE; 2 * m],
            sign: vec![1; m],
            any_dart: vec![NONE; g.order()],
            placed: 0,
            placed_count: 0,
            negative: 0,
            corner_face: vec![NONE; 2 * m],
            corner_orient: vec![1; 2 * m],
            face_mask: Vec::with_capacity(2 * m),
            visited: vec![false; 4 * m],
            nodes: 0,
            limit: limit.unwrap_or(u64::MAX),
        }
    }

    pub(crate) fn run(&mut self) -> Result<bool> {
        if self.ends.is_empty() {
            return Ok(true);
        }
        let root = self.ends[0].0 as usize;
        self.placed = 1 << root;
        self.placed_count = 1;
        self.descend(0, None)
    }

    /// Rotation and signature of the current (complete) embedding, keyed by
    /// vertex. Only meaningful after `run` returned true.
    pub(crate) fn scheme(&self) -> super::EmbeddingScheme {
        let n = self.g.order();
        let mut rotation = vec![Vec::new(); n];
        for (v, rot) in rotation.iter_mut().enumerate() {
            let start = self.any_dart[v];
            if start == NONE {
                continue;
            }
            let mut d = start;
            loop {
                rot.push(self.head(d) as usize);
                d = self.next[d as usize];
                if d == start {
                    break;
                }
            }
        }
        let edges = self.g.edges();
        let mut signature = vec![1i8; edges.len()];
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            let k = edges.iter().position(|&e| e == (u as usize, v as usize)).unwrap();
            signature[k] = self.sign[i];
        }
        super::EmbeddingScheme { rotation, signature }
    }

    #[inline]
    fn tail(&self, d: u16) -> u8 {
        let (a, b) = self.ends[(d >> 1) as usize];
        if d & 1 == 0 {
            a
        } else {
            b
        }
    }

    fn head(&self, d: u16) -> u8 {
        self.tail(d ^ 1)
    }

    /// Traces the faces of the embedding made of edges `0..depth`; fills the
    /// corner tables and returns the face count.
    fn trace(&mut self, depth: usize) -> u32 {
        if depth == 0 {
            self.face_mask.clear();
            self.face_mask.push(self.placed);
            return 1;
        }
        let darts = 2 * depth;
        self.corner_face[..darts].fill(NONE);
        self.visited[..2 * darts].fill(false);
        self.face_mask.clear();
        for start in 0..darts as u16 {
            for s0 in [1i8, -1] {
                let state = |d: u16, s: i8| 2 * d as usize + (s < 0) as usize;
                if self.visited[state(start, s0)] {
                    continue;
                }
                let first_corner = self.advance(start, s0).2;
                let fresh = self.corner_face[first_corner as usize] == NONE;
                let id = self.face_mask.len() as u16;
                let mut mask = 0u32;
                let (mut d, mut s) = (start, s0);
                while !self.visited[state(d, s)] {
                    self.visited[state(d, s)] = true;
                    let (nd, ns, c) = self.advance(d, s);
                    if fresh {
                        self.corner_face[c as usize] = id;
                        self.corner_orient[c as usize] = ns;
                        mask |= 1 << self.tail(nd);
                    }
                    d = nd;
                    s = ns;
                }
                if fresh {
                    self.face_mask.push(mask);
                }
            }
        }
        self.face_mask.len() as u32
    }

    /// One face-walk step from dart `d` with local orientation `s`; returns
    /// the next dart, the new orientation and the corner passed.
    #[inline]
    fn advance(&self, d: u16, s: i8) -> (u16, i8, u16) {
        let t = d ^ 1;
        let ns = s * self.sign[(d >> 1) as usize];
        if ns > 0 {
            (self.next[t as usize], ns, t)
        } else {
            let p = self.prev[t as usize];
            (p, ns, p)
        }
    }

    fn insert_dart(&mut self, d: u16, v: usize, after: u16) {
        if after == NONE {
            self.next[d as usize] = d;
            self.prev[d as usize] = d;
            self.any_dart[v] = d;
        } else {
            let nx = self.next[after as usize];
            self.next[d as usize] = nx;
            self.prev[d as usize] = after;
            self.prev[nx as usize] = d;
            self.next[after as usize] = d;
        }
    }

    fn remove_dart(&mut self, d: u16, v: usize) {
        let nx = self.next[d as usize];
        if nx == d {
            self.any_dart[v] = NONE;
        } else {
            let pv = self.prev[d as usize];
            self.next[pv as usize] = nx;
            self.prev[nx as usize] = pv;
            if self.any_dart[v] == d {
                self.any_dart[v] = nx;
            }
        }
    }

    fn darts_at(&self, v: usize) -> Vec<u16> {
        let start = self.any_dart[v];
        let mut out = Vec::new();
        if start == NONE {
            return out;
        }
        let mut d = start;
        loop {
            out.push(d);
            d = self.next[d as usize];
            if d == start {
                break;
            }
        }
        out
    }

    fn on_common_face(&self, mask: u32) -> bool {
        self.face_mask.iter().any(|&f| f & mask == mask)
    }

    /// `expected_faces` is the face count the parent predicted for this move.
    fn descend(&mut self, depth: usize, expected_faces: Option<i64>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExhausted(self.limit));
        }
        let faces = self.trace(depth) as i64;
        if let Some(expected) = expected_faces {
            debug_assert_eq!(faces, expected, "face count after insertion at depth {depth}");
        }
        let euler_genus = 2 - self.placed_count as i64 + depth as i64 - faces;
        let budget =
            if self.negative == 0 { self.target.orientable_budget() } else { self.target.max_euler_genus as i64 };
        if euler_genus > budget {
            return Ok(false);
        }
        if depth == self.ends.len() {
            return Ok(true);
        }
        let slack = self.target.max_euler_genus as i64 - euler_genus;
        if slack < 2 && !self.cofacial_constraints_hold(depth) {
            return Ok(false);
        }

        let moves = self.moves(depth, slack);
        let (a, b) = self.ends[depth];
        let (a, b) = (a as usize, b as usize);
        let (da, db) = (2 * depth as u16, 2 * depth as u16 + 1);
        let pendant = self.pendant[depth];
        for mv in moves {
            self.insert_dart(da, a, mv.at_a);
            self.insert_dart(db, b, mv.at_b);
            self.sign[depth] = mv.sign;
            if mv.sign < 0 {
                self.negative += 1;
            }
            if pendant {
                self.placed |= 1 << b;
                self.placed_count += 1;
            }
            let delta = if pendant { 0 } else { 1 - mv.cost as i64 };
            let found = self.descend(depth + 1, Some(faces + delta));
            if !matches!(found, Ok(false)) {
                return found;
            }
            if pendant {
                self.placed &= !(1 << b);
                self.placed_count -= 1;
            }
            if mv.sign < 0 {
                self.negative -= 1;
            }
            self.sign[depth] = 1;
            self.remove_dart(db, b);
            self.remove_dart(da, a);
        }
        Ok(false)
    }

    fn cofacial_constraints_hold(&self, depth: usize) -> bool {
        for i in depth..self.ends.len() {
            if self.pendant[i] {
                continue;
            }
            let (a, b) = self.ends[i];
            let mask = 1u32 << a | 1u32 << b;
            if self.placed & mask == mask && !self.on_common_face(mask) {
                return false;
            }
        }
        for z in Bits(self.g.vertex_mask() & !self.placed) {
            let seen = self.g.row(z) & self.placed;
            if seen.count_ones() > 1 && !self.on_common_face(seen) {
                return false;
            }
        }
        true
    }

    fn moves(&self, depth: usize, slack: i64) -> Vec<Move> {
        let (a, b) = self.ends[depth];
        let (a, b) = (a as usize, b as usize);
        let mut moves = Vec::new();
        if self.pendant[depth] {
            let needed = self.g.row(b) & self.placed;
            let corners = self.darts_at(a);
            if corners.is_empty() {
                moves.push(Move { at_a: NONE, at_b: NONE, sign: 1, cost: 0 });
            }
            for x in corners {
                if slack < 2 {
                    let f = self.face_mask[self.corner_face[x as usize] as usize];
                    if f & needed != needed {
                        continue;
                    }
                }
                moves.push(Move { at_a: x, at_b: NONE, sign: 1, cost: 0 });
            }
            return moves;
        }
        let at_a = self.darts_at(a);
        let at_b = self.darts_at(b);
        let orientable = self.target.orientable;
        for &x in &at_a {
            let (fx, ox) = (self.corner_face[x as usize], self.corner_orient[x as usize]);
            for &y in &at_b {
                let (fy, oy) = (self.corner_face[y as usize], self.corner_orient[y as usize]);
                if fx == fy {
                    let split = ox * oy;
                    if !orientable || split > 0 {
                        moves.push(Move { at_a: x, at_b: y, sign: split, cost: 0 });
                    }
                    if !orientable && slack >= 1 {
                        moves.push(Move { at_a: x, at_b: y, sign: -split, cost: 1 });
                    }
                } else if slack >= 2 {
                    moves.push(Move { at_a: x, at_b: y, sign: 1, cost: 2 });
                    if !orientable {
                        moves.push(Move { at_a: x, at_b: y, sign: -1, cost: 2 });
                    }
                }
            }
        }
        moves.sort_by_key(|m| m.cost);
        moves
    }
}

/// Vertex order: start at a vertex of maximum degree, then repeatedly take
/// the vertex with the most placed neighbors (ties: higher degree, lower
/// index). Each new vertex contributes a pendant edge to its first placed
/// neighbor followed by edges to its other placed neighbors.
fn insertion_order(g: &Graph) -> (Vec<(u8, u8)>, Vec<bool>) {
    let n = g.order();
    let mut ends = Vec::with_capacity(g.edge_count());
    let mut pendant = Vec::with_capacity(g.edge_count());
    if g.edge_count() == 0 {
        return (ends, pendant);
    }
    let start = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
    let mut placed = 1u32 << start;
    let mut prev = start;
    for _ in 1..n {
        let z = (0..n)
            .filter(|&v| placed >> v & 1 == 0 && g.row(v) & placed != 0)
            .max_by_key(|&v| ((g.row(v) & placed).count_ones(), g.degree(v), std::cmp::Reverse(v)));
        let Some(z) = z else { break };
        let nb = g.row(z) & placed;
        // prefer the most recently placed neighbor as the anchor
        let anchor = if nb >> prev & 1 == 1 { prev } else { nb.trailing_zeros() as usize };
        ends.push((anchor as u8, z as u8));
        pendant.push(true);
        for w in Bits(nb & !(1 << anchor)) {
            ends.push((w as u8, z as u8));
            pendant.push(false);
        }
        placed |= 1 << z;
        prev = z;
    }
    (ends, pendant)
}
