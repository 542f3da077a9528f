//! Brute-force ground truth on materialized desk-scale digraphs.
//!
//! Cycle covers are enumerated by backtracking over the out-edge choice of
//! each vertex with full forced-edge propagation: committing an edge fills
//! the head's in-slot and excludes the tail's siblings, and any vertex left
//! with a single live out- or in-candidate is committed in turn. Hamiltonian
//! cycles are exactly the covers consisting of a single cycle, so the same
//! search drives both enumerators. Counts are exact; stored witnesses are
//! capped.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::construct::{CycleCover, HamCycle};
use crate::grid::{TorusDigraph, Vertex};
use crate::{Error, Result};

/// Enumeration refuses digraphs with more vertices than this by default.
pub const DEFAULT_ORACLE_LIMIT: u64 = 64;

/// Exact count plus up to `cap` canonicalized witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration<W> {
    pub count: u64,
    pub witnesses: Vec<W>,
}

/// Counts the directed hamiltonian cycles of `g` (each counted once, not per
/// rotation) and returns up to `cap` of them in canonical form.
pub fn enumerate_ham_cycles(g: &TorusDigraph, cap: usize) -> Result<Enumeration<HamCycle>> {
    enumerate_ham_cycles_with_limit(g, cap, DEFAULT_ORACLE_LIMIT)
}

/// As [`enumerate_ham_cycles`] with an explicit vertex-count limit.
pub fn enumerate_ham_cycles_with_limit(
    g: &TorusDigraph,
    cap: usize,
    size_limit: u64,
) -> Result<Enumeration<HamCycle>> {
    let mat = Materialized::build(g, size_limit)?;
    let mut count = 0;
    let mut witnesses = Vec::new();
    mat.for_each_cover(|succ| {
        if let Some(order) = single_cycle_order(succ) {
            count += 1;
            if witnesses.len() < cap {
                let seq: Vec<Vertex> = order.iter().map(|&u| mat.verts[u as usize]).collect();
                witnesses.push(HamCycle::new(seq, g).expect("enumerated cover is a valid cycle"));
            }
        }
    });
    Ok(Enumeration { count, witnesses })
}

/// Counts the vertex-disjoint cycle covers of `g` and returns up to `cap`
/// witnesses. The empty digraph has no covers by convention.
pub fn enumerate_cycle_covers(g: &TorusDigraph, cap: usize) -> Result<Enumeration<CycleCover>> {
    enumerate_cycle_covers_with_limit(g, cap, DEFAULT_ORACLE_LIMIT)
}

/// As [`enumerate_cycle_covers`] with an explicit vertex-count limit.
pub fn enumerate_cycle_covers_with_limit(
    g: &TorusDigraph,
    cap: usize,
    size_limit: u64,
) -> Result<Enumeration<CycleCover>> {
    let mat = Materialized::build(g, size_limit)?;
    let mut count = 0;
    let mut witnesses = Vec::new();
    mat.for_each_cover(|succ| {
        count += 1;
        if witnesses.len() < cap {
            witnesses.push(mat.cover_from_succ(g, succ));
        }
    });
    Ok(Enumeration { count, witnesses })
}

/// If the successor map is one cycle through all vertices, returns the visit
/// order starting at vertex 0.
fn single_cycle_order(succ: &[u32]) -> Option<Vec<u32>> {
    let mut order = Vec::with_capacity(succ.len());
    let mut cur = 0u32;
    loop {
        order.push(cur);
        cur = succ[cur as usize];
        if cur == 0 {
            break;
        }
        if order.len() == succ.len() {
            return None;
        }
    }
    (order.len() == succ.len()).then_some(order)
}

const UNDECIDED: u8 = u8::MAX;

/// Adjacency lists with cross-references between each edge's position in its
/// tail's out-list and its head's in-list.
struct Materialized {
    verts: Vec<Vertex>,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    out_in_pos: Vec<Vec<u8>>,
    in_out_pos: Vec<Vec<u8>>,
}

#[derive(Clone)]
struct State {
    out_choice: Vec<u8>,
    out_alive: Vec<u8>,
    in_choice: Vec<u8>,
    in_alive: Vec<u8>,
}

impl Materialized {
    fn build(g: &TorusDigraph, size_limit: u64) -> Result<Self> {
        if g.vertex_count() > size_limit {
            return Err(Error::SizeLimitExceeded {
                actual: BigInt::from(g.vertex_count()),
                limit: BigInt::from(size_limit),
            });
        }
        let verts: Vec<Vertex> = g.vertices().collect();
        let index: HashMap<Vertex, u32> = verts
            .iter()
            .enumerate()
            .map(|(k, v)| (*v, k as u32))
            .collect();
        let n = verts.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut out_in_pos = vec![Vec::new(); n];
        let mut in_out_pos = vec![Vec::new(); n];
        for (u, v) in verts.iter().enumerate() {
            for head in g.out_neighbors(*v).expect("v survives deletion") {
                let w = index[&head] as usize;
                let k = out[u].len() as u8;
                let j = inn[w].len() as u8;
                out[u].push(w as u32);
                out_in_pos[u].push(j);
                inn[w].push(u as u32);
                in_out_pos[w].push(k);
            }
        }
        Ok(Self {
            verts,
            out,
            inn,
            out_in_pos,
            in_out_pos,
        })
    }

    /// Runs the backtracking search, invoking `on_cover` once per cover with
    /// the successor map in vertex-index space. Deterministic order.
    fn for_each_cover(&self, mut on_cover: impl FnMut(&[u32])) {
        let n = self.verts.len();
        if n == 0 {
            return;
        }
        let mut st = State {
            out_choice: vec![UNDECIDED; n],
            out_alive: Vec::with_capacity(n),
            in_choice: vec![UNDECIDED; n],
            in_alive: Vec::with_capacity(n),
        };
        for u in 0..n {
            if self.out[u].is_empty() || self.inn[u].is_empty() {
                return;
            }
            st.out_alive.push((1u16 << self.out[u].len()) as u8 - 1);
            st.in_alive.push((1u16 << self.inn[u].len()) as u8 - 1);
        }
        // Valence-1 vertices force their edges up front.
        for u in 0..n {
            if self.out[u].len() == 1 && !self.commit(&mut st, u, 0) {
                return;
            }
            if self.inn[u].len() == 1 {
                let t = self.inn[u][0] as usize;
                let k = self.in_out_pos[u][0];
                if !self.commit(&mut st, t, k) {
                    return;
                }
            }
        }
        self.dfs(&st, &mut on_cover);
    }

    fn dfs(&self, st: &State, on_cover: &mut impl FnMut(&[u32])) {
        match st.out_choice.iter().position(|&c| c == UNDECIDED) {
            None => {
                let succ: Vec<u32> = st
                    .out_choice
                    .iter()
                    .enumerate()
                    .map(|(u, &k)| self.out[u][k as usize])
                    .collect();
                on_cover(&succ);
            }
            Some(u) => {
                let mut mask = st.out_alive[u];
                while mask != 0 {
                    let k = mask.trailing_zeros() as u8;
                    mask &= mask - 1;
                    let mut branch = st.clone();
                    if self.commit(&mut branch, u, k) {
                        self.dfs(&branch, on_cover);
                    }
                }
            }
        }
    }

    /// Commits edge `(u, k)`; excludes the tail's sibling out-edges and the
    /// head's sibling in-edges, cascading forced commits. Returns false on
    /// contradiction.
    fn commit(&self, st: &mut State, u: usize, k: u8) -> bool {
        if st.out_choice[u] != UNDECIDED {
            return st.out_choice[u] == k;
        }
        if st.out_alive[u] & (1 << k) == 0 {
            return false;
        }
        let w = self.out[u][k as usize] as usize;
        let j = self.out_in_pos[u][k as usize];
        if st.in_choice[w] != UNDECIDED && st.in_choice[w] != j {
            return false;
        }
        st.out_choice[u] = k;
        st.in_choice[w] = j;
        let mut others = st.out_alive[u] & !(1 << k);
        while others != 0 {
            let k2 = others.trailing_zeros() as u8;
            others &= others - 1;
            if !self.remove_edge(st, u, k2) {
                return false;
            }
        }
        let mut others = st.in_alive[w] & !(1 << j);
        while others != 0 {
            let j2 = others.trailing_zeros() as u8;
            others &= others - 1;
            let t = self.inn[w][j2 as usize] as usize;
            let k2 = self.in_out_pos[w][j2 as usize];
            if !self.remove_edge(st, t, k2) {
                return false;
            }
        }
        true
    }

    /// Excludes edge `(u, k)` from both endpoint masks, committing any vertex
    /// left with a single candidate. Returns false on contradiction.
    fn remove_edge(&self, st: &mut State, u: usize, k: u8) -> bool {
        if st.out_alive[u] & (1 << k) == 0 {
            return true;
        }
        if st.out_choice[u] == k {
            return false;
        }
        let w = self.out[u][k as usize] as usize;
        let j = self.out_in_pos[u][k as usize];
        if st.in_choice[w] == j {
            return false;
        }
        st.out_alive[u] &= !(1 << k);
        st.in_alive[w] &= !(1 << j);
        if st.out_choice[u] == UNDECIDED {
            match st.out_alive[u].count_ones() {
                0 => return false,
                1 => {
                    let forced = st.out_alive[u].trailing_zeros() as u8;
                    if !self.commit(st, u, forced) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        if st.in_choice[w] == UNDECIDED {
            match st.in_alive[w].count_ones() {
                0 => return false,
                1 => {
                    let j2 = st.in_alive[w].trailing_zeros() as u8;
                    let t = self.inn[w][j2 as usize] as usize;
                    let k2 = self.in_out_pos[w][j2 as usize];
                    if !self.commit(st, t, k2) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn cover_from_succ(&self, g: &TorusDigraph, succ: &[u32]) -> CycleCover {
        const NO_SUCC: u32 = u32::MAX;
        let n = g.n();
        let grid_idx = |v: Vertex| (v.i * n + v.j) as usize;
        let mut grid = vec![NO_SUCC; (g.m() * n) as usize];
        for (u, &s) in succ.iter().enumerate() {
            grid[grid_idx(self.verts[u])] = grid_idx(self.verts[s as usize]) as u32;
        }
        CycleCover::from_succ(g.m(), n, grid)
    }
}
