//! Concrete model of the directed torus `C_m x C_n`, its pushed variant, and
//! rectangle deletion.
//!
//! The digraph is represented implicitly: adjacency is computed from modular
//! arithmetic, so instances occupy O(1) memory regardless of `m * n`. The
//! oracle materializes adjacency lists on top of this when it enumerates.

use std::fmt;

use num_bigint::BigInt;

use crate::{Error, Result};

/// A vertex of `Z_m x Z_n` in canonical representation
/// (`0 <= i < m`, `0 <= j < n`).
///
/// Ordering is lexicographic, `i` first; this fixes cycle serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub i: u64,
    pub j: u64,
}

impl Vertex {
    pub fn new(i: u64, j: u64) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// An `a x b` rectangle of vertices, anchored at `origin`.
///
/// The member set is `origin + {0..a-1} x {0..b-1}` with componentwise
/// wraparound; membership is O(1) arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rectangle {
    pub origin: Vertex,
    pub a: u64,
    pub b: u64,
}

impl Rectangle {
    pub fn new(origin: Vertex, a: u64, b: u64) -> Self {
        Self { origin, a, b }
    }

    /// The standard placement at the group identity.
    pub fn at_origin(a: u64, b: u64) -> Self {
        Self::new(Vertex::new(0, 0), a, b)
    }

    /// Membership test on the `m x n` torus.
    pub fn contains(&self, v: Vertex, m: u64, n: u64) -> bool {
        let di = (v.i + m - self.origin.i % m) % m;
        let dj = (v.j + n - self.origin.j % n) % n;
        di < self.a && dj < self.b
    }
}

/// The Cartesian product of directed cycles `C_m x C_n`, optionally pushed at
/// one vertex and optionally with a rectangle of vertices deleted.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusDigraph {
    m: u64,
    n: u64,
    pushed_at: Option<Vertex>,
    deleted: Option<Rectangle>,
}

impl TorusDigraph {
    /// The plain product, with directed edges `v -> v + (1,0)` and
    /// `v -> v + (0,1)`.
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::InvalidModuli {
                m: BigInt::from(m),
                n: BigInt::from(n),
            });
        }
        m.checked_mul(n).ok_or(Error::SizeLimitExceeded {
            actual: BigInt::from(m) * BigInt::from(n),
            limit: BigInt::from(u64::MAX),
        })?;
        Ok(Self {
            m,
            n,
            pushed_at: None,
            deleted: None,
        })
    }

    /// Reverses the orientation of every directed edge incident with `v`.
    pub fn pushed_at(mut self, v: Vertex) -> Self {
        self.pushed_at = Some(self.reduce(v));
        self
    }

    /// Deletes the rectangle's vertices and every edge incident with them.
    pub fn with_deleted_rect(mut self, rect: Rectangle) -> Result<Self> {
        if rect.a < 1 || rect.b < 1 || rect.a > self.m || rect.b > self.n {
            return Err(Error::InvalidRectangle {
                a: BigInt::from(rect.a),
                b: BigInt::from(rect.b),
                m: BigInt::from(self.m),
                n: BigInt::from(self.n),
            });
        }
        self.deleted = Some(Rectangle::new(self.reduce(rect.origin), rect.a, rect.b));
        Ok(self)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn push_location(&self) -> Option<Vertex> {
        self.pushed_at
    }

    pub fn deleted_rect(&self) -> Option<Rectangle> {
        self.deleted
    }

    fn reduce(&self, v: Vertex) -> Vertex {
        Vertex::new(v.i % self.m, v.j % self.n)
    }

    /// `v + (di, dj)` with componentwise wraparound.
    pub fn offset(&self, v: Vertex, di: i64, dj: i64) -> Vertex {
        let m = self.m as i128;
        let n = self.n as i128;
        let i = (v.i as i128 + di as i128).rem_euclid(m) as u64;
        let j = (v.j as i128 + dj as i128).rem_euclid(n) as u64;
        Vertex::new(i, j)
    }

    fn is_deleted(&self, v: Vertex) -> bool {
        self.deleted
            .map(|r| r.contains(v, self.m, self.n))
            .unwrap_or(false)
    }

    /// Whether `v` survives deletion.
    pub fn contains(&self, v: Vertex) -> bool {
        v.i < self.m && v.j < self.n && !self.is_deleted(v)
    }

    /// Number of surviving vertices: `m * n`, minus `a * b` after deletion.
    pub fn vertex_count(&self) -> u64 {
        let total = self.m * self.n;
        match self.deleted {
            Some(r) => total - r.a * r.b,
            None => total,
        }
    }

    /// Surviving vertices in lexicographic order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.m)
            .flat_map(move |i| (0..self.n).map(move |j| Vertex::new(i, j)))
            .filter(move |v| !self.is_deleted(*v))
    }

    /// Heads of the directed edges leaving `v`, accounting for pushing and
    /// deletion. Errors if `v` itself is deleted.
    pub fn out_neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        let v = self.reduce(v);
        if self.is_deleted(v) {
            return Err(Error::DeletedVertex(v.i, v.j));
        }
        let mut heads = Vec::with_capacity(3);
        match self.pushed_at {
            Some(p) if p == v => {
                // All four incident edges are reversed, so the out-edges of
                // the pushed vertex go to v - (1,0) and v - (0,1).
                heads.push(self.offset(v, -1, 0));
                heads.push(self.offset(v, 0, -1));
            }
            pushed => {
                for (di, dj) in [(1, 0), (0, 1)] {
                    let w = self.offset(v, di, dj);
                    if pushed != Some(w) {
                        heads.push(w);
                    }
                }
                if let Some(p) = pushed {
                    // The reversed out-edges of the pushed vertex end here.
                    if self.offset(p, 1, 0) == v || self.offset(p, 0, 1) == v {
                        heads.push(p);
                    }
                }
            }
        }
        heads.sort_unstable();
        heads.dedup();
        heads.retain(|w| !self.is_deleted(*w));
        Ok(heads)
    }

    /// Whether the directed edge `u -> w` is present.
    pub fn has_edge(&self, u: Vertex, w: Vertex) -> bool {
        self.out_neighbors(u)
            .map(|heads| heads.contains(&self.reduce(w)))
            .unwrap_or(false)
    }

    /// Materialized edge set, for desk-scale comparisons.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges = Vec::new();
        for v in self.vertices() {
            for w in self.out_neighbors(v).expect("v survives") {
                edges.push((v, w));
            }
        }
        edges.sort_unstable();
        edges
    }
}
