//! Explicit construction of cycle covers and hamiltonian cycles.
//!
//! The rectangle-deleted torus `(C_m x C_n) \ R_{2,2}` has at most one
//! vertex-disjoint cycle cover. When it exists, the cover is described by two
//! travel vectors: every vertex steps to `v + (1,0)` or to `v + (0,1)`, and
//! the `(1,0)`-travelers form two runs along the `(1,-1)` direction starting
//! at `(1,-1)` and `(0,-1)`. [`build_cycle_cover`] materializes that cover,
//! [`knot_class`] reads off the pair `(x/m, y/n)` that decides whether the
//! cover is a single cycle, and [`build_pushed_ham_cycles`] turns the covers
//! of both orientations into the two hamiltonian cycles of the pushed product
//! by splicing a six-vertex walk through the pushed region.

use num_bigint::BigInt;

use crate::arith::Moduli;
use crate::characterize::{is_deleted_rect_hamiltonian, is_pushed_product_hamiltonian};
use crate::grid::{Rectangle, TorusDigraph, Vertex};
use crate::{Error, Result};

/// Explicit construction refuses instances with more vertices than this.
pub const DEFAULT_CONSTRUCTION_LIMIT: u64 = 10_000_000;

const NO_SUCC: u32 = u32::MAX;

/// Successor map of a vertex-disjoint cycle cover on an `m x n` torus with
/// the four vertices of `R_{2,2}` (at the origin) possibly deleted.
///
/// Every surviving vertex has invalence and outvalence exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCover {
    m: u64,
    n: u64,
    succ: Vec<u32>,
}

impl CycleCover {
    pub(crate) fn from_succ(m: u64, n: u64, succ: Vec<u32>) -> Self {
        debug_assert_eq!(succ.len() as u64, m * n);
        Self { m, n, succ }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    fn idx(&self, v: Vertex) -> usize {
        (v.i * self.n + v.j) as usize
    }

    fn vertex(&self, idx: u32) -> Vertex {
        Vertex::new(idx as u64 / self.n, idx as u64 % self.n)
    }

    /// Successor of `v`, or `None` if `v` is not covered.
    pub fn successor(&self, v: Vertex) -> Option<Vertex> {
        if v.i >= self.m || v.j >= self.n {
            return None;
        }
        match self.succ[self.idx(v)] {
            NO_SUCC => None,
            s => Some(self.vertex(s)),
        }
    }

    /// Number of covered vertices.
    pub fn covered_count(&self) -> u64 {
        self.succ.iter().filter(|&&s| s != NO_SUCC).count() as u64
    }

    /// Decomposition into directed cycles. Each cycle starts at its least
    /// vertex; cycles are ordered by those start vertices.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.succ.len()];
        let mut cycles = Vec::new();
        for start in 0..self.succ.len() {
            if seen[start] || self.succ[start] == NO_SUCC {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start as u32;
            while !seen[cur as usize] {
                seen[cur as usize] = true;
                cycle.push(self.vertex(cur));
                cur = self.succ[cur as usize];
                assert_ne!(cur, NO_SUCC, "successor chain leaves the cover");
            }
            assert_eq!(cur as usize, start, "successor chain is not a cycle");
            cycles.push(cycle);
        }
        cycles
    }

    /// Counts `(x, y)`: how many vertices travel by `(1,0)` and by `(0,1)`.
    ///
    /// Panics if some successor step is neither, i.e. the cover does not come
    /// from a travel assignment.
    pub fn travel_counts(&self) -> (u64, u64) {
        let mut x = 0;
        let mut y = 0;
        for idx in 0..self.succ.len() {
            let s = self.succ[idx];
            if s == NO_SUCC {
                continue;
            }
            let v = self.vertex(idx as u32);
            let w = self.vertex(s);
            if w == Vertex::new((v.i + 1) % self.m, v.j) {
                x += 1;
            } else if w == Vertex::new(v.i, (v.j + 1) % self.n) {
                y += 1;
            } else {
                panic!("cover step {v} -> {w} is not a travel vector");
            }
        }
        (x, y)
    }

    /// Checks that every successor edge exists in `g` and that invalences
    /// are 1; for use in tests and the oracle-verification sweep.
    pub fn validate_against(&self, g: &TorusDigraph) -> Result<()> {
        let mut indeg = vec![0u8; self.succ.len()];
        let mut covered = 0u64;
        for idx in 0..self.succ.len() {
            let s = self.succ[idx];
            if s == NO_SUCC {
                continue;
            }
            covered += 1;
            let v = self.vertex(idx as u32);
            let w = self.vertex(s);
            if !g.has_edge(v, w) {
                return Err(Error::NotHamiltonian {
                    reason: format!("cover uses non-edge {v} -> {w}"),
                });
            }
            indeg[s as usize] += 1;
        }
        if covered != g.vertex_count() || indeg.iter().any(|&d| d > 1) {
            return Err(Error::NotHamiltonian {
                reason: "cover is not spanning with invalence 1".to_string(),
            });
        }
        Ok(())
    }
}

/// The travel assignment behind the unique cycle cover of
/// `(C_m x C_n) \ R_{2,2}`.
///
/// The instance is worked on in its *construction orientation*: transposed
/// when `<-2|0> < <0|-2>`, so that the oriented `<0|-2>` is the smaller of
/// the two. `run_length` is the common length of the two `(1,-1)`-runs in
/// that orientation, and the number of vertices traveling by `(1,0)` there is
/// exactly `2 * run_length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TravelAssignment {
    caller_m: u64,
    caller_n: u64,
    oriented_m: u64,
    oriented_n: u64,
    run_length: u64,
    transposed: bool,
}

impl TravelAssignment {
    /// Computes the travel assignment, or reports that no cycle cover exists.
    pub fn for_deleted_product(moduli: &Moduli) -> Result<Self> {
        let (m, n) = moduli.to_desk_scale(u64::MAX)?;
        if m == 2 && n == 2 {
            // R_{2,2} deletes every vertex; nothing to cover.
            return Err(Error::NoCycleCover {
                m: moduli.m().clone(),
                n: moduli.n().clone(),
            });
        }

        let c20 = crt_u64(-2, 0, moduli);
        let c02 = crt_u64(0, -2, moduli);
        let (Some(c20), Some(c02)) = (c20, c02) else {
            // gcd(m, n) >= 3: the required residues are unrealizable.
            return Err(Error::NoCycleCover {
                m: moduli.m().clone(),
                n: moduli.n().clone(),
            });
        };

        if m >= 3 && n >= 3 {
            // Existence criterion: min{<-2|0>, <0|-2>} < min{<0|-1>, <-1|0>},
            // nonexistent right-hand terms ignored. Instances with a cycle of
            // length 2 always admit the (unique) cover and skip this test.
            let bound = [crt_u64(0, -1, moduli), crt_u64(-1, 0, moduli)]
                .into_iter()
                .flatten()
                .min();
            if let Some(bound) = bound {
                if c20.min(c02) >= bound {
                    return Err(Error::NoCycleCover {
                        m: moduli.m().clone(),
                        n: moduli.n().clone(),
                    });
                }
            }
        }

        let transposed = c20 < c02;
        assert_ne!(c20, c02, "orientation tie is impossible for m*n > 4");
        let (om, on) = if transposed { (n, m) } else { (m, n) };
        let oriented = Moduli::from_u64(om, on).expect("moduli already validated");

        // run_length = min k >= 1 with (1,-1) + k(1,-1) in R_{2,2}, solved by
        // expressing the four rectangle cells as multiples of (1,-1).
        let run_length = [(-1, -2), (0, -2), (-1, -1), (0, -1)]
            .into_iter()
            .flat_map(|(i, j)| crt_u64(i, j, &oriented))
            .min()
            .expect("<-1|-1> always exists");
        // The run from (0,-1) has the same length.
        let from_second = [(0, -2), (1, -2), (0, -1), (1, -1)]
            .into_iter()
            .flat_map(|(i, j)| crt_u64(i, j, &oriented))
            .min()
            .expect("<1|-1> always exists");
        assert_eq!(run_length, from_second, "the two runs must have equal length");
        if om >= 3 && on >= 3 {
            assert_eq!(run_length, c20.min(c02), "run length must be the oriented <0|-2>");
        }

        Ok(Self {
            caller_m: m,
            caller_n: n,
            oriented_m: om,
            oriented_n: on,
            run_length,
            transposed,
        })
    }

    /// Length of each of the two `(1,-1)`-runs, in the construction
    /// orientation.
    pub fn run_length(&self) -> u64 {
        self.run_length
    }

    /// Whether the construction orientation interchanges `m` and `n`.
    pub fn transposed(&self) -> bool {
        self.transposed
    }

    /// Whether `v` (caller coordinates) travels by `(1,0)` in the cover.
    /// Deleted vertices yield `false`. O(1) arithmetic.
    pub fn travels_by_one(&self, v: Vertex) -> bool {
        if v.i >= self.caller_m || v.j >= self.caller_n || (v.i < 2 && v.j < 2) {
            return false;
        }
        let vo = if self.transposed {
            Vertex::new(v.j, v.i)
        } else {
            v
        };
        // In oriented coordinates the (1,0)-travelers are the two runs; a
        // caller (1,0)-step is an oriented (0,1)-step when transposed.
        let in_runs = self.oriented_run_contains(vo);
        if self.transposed {
            !in_runs
        } else {
            in_runs
        }
    }

    fn oriented_run_contains(&self, vo: Vertex) -> bool {
        let (om, on) = (self.oriented_m, self.oriented_n);
        let oriented = Moduli::from_u64(om, on).expect("validated");
        for start in [Vertex::new(1, on - 1), Vertex::new(0, on - 1)] {
            if vo == start {
                return true;
            }
            // vo = start + k(1,-1) with 1 <= k < run_length?
            let di = (vo.i + om - start.i) % om;
            let dj = (start.j + on - vo.j) % on;
            if let Some(k) = crt_u64(di as i64, dj as i64, &oriented) {
                if k < self.run_length {
                    return true;
                }
            }
        }
        false
    }
}

fn crt_u64(i: i64, j: i64, moduli: &Moduli) -> Option<u64> {
    crate::arith::crt_i64(i, j, moduli)
        .into_value()
        .map(|v| u64::try_from(v).expect("bounded by lcm <= m*n"))
}

/// Builds the unique vertex-disjoint cycle cover of `(C_m x C_n) \ R_{2,2}`
/// (rectangle at the origin), or reports that none exists.
pub fn build_cycle_cover(moduli: &Moduli) -> Result<CycleCover> {
    build_cycle_cover_with_limit(moduli, DEFAULT_CONSTRUCTION_LIMIT)
}

/// As [`build_cycle_cover`], refusing instances with more than `limit`
/// vertices.
pub fn build_cycle_cover_with_limit(moduli: &Moduli, limit: u64) -> Result<CycleCover> {
    let (m, n) = moduli.to_desk_scale(limit)?;
    let travel = TravelAssignment::for_deleted_product(moduli)?;
    let (om, on) = (travel.oriented_m, travel.oriented_n);
    let r = travel.run_length;

    let oidx = |i: u64, j: u64| (i * on + j) as usize;
    let in_rect = |i: u64, j: u64| i < 2 && j < 2;

    // Walk the two (1,-1)-runs to mark the (1,0)-travelers.
    let mut one_traveler = vec![false; (om * on) as usize];
    for start in [(1u64, on - 1), (0u64, on - 1)] {
        let (mut i, mut j) = start;
        for _ in 0..r {
            assert!(!in_rect(i, j), "run enters the deleted rectangle early");
            one_traveler[oidx(i, j)] = true;
            i = (i + 1) % om;
            j = (j + on - 1) % on;
        }
        assert!(in_rect(i, j), "run must terminate on the deleted rectangle");
    }

    // Successor map in caller coordinates.
    let mut succ = vec![NO_SUCC; (m * n) as usize];
    let mut indeg = vec![0u8; (m * n) as usize];
    let cidx = |i: u64, j: u64| (i * n + j) as usize;
    for i in 0..om {
        for j in 0..on {
            if in_rect(i, j) {
                continue;
            }
            let (ti, tj) = if one_traveler[oidx(i, j)] {
                ((i + 1) % om, j)
            } else {
                (i, (j + 1) % on)
            };
            assert!(!in_rect(ti, tj), "travel step enters the deleted rectangle");
            let (src, dst) = if travel.transposed {
                (cidx(j, i), cidx(tj, ti))
            } else {
                (cidx(i, j), cidx(ti, tj))
            };
            succ[src] = dst as u32;
            indeg[dst] += 1;
        }
    }
    for i in 0..m {
        for j in 0..n {
            let expect = u8::from(!in_rect(i, j));
            assert_eq!(
                indeg[cidx(i, j)],
                expect,
                "invalence of ({i}, {j}) must be {expect}"
            );
        }
    }
    Ok(CycleCover::from_succ(m, n, succ))
}

/// The knot class of a cover: `x` and `y` count the `(1,0)`- and
/// `(0,1)`-travelers, with exact quotients `p = x/m` and `q = y/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnotClass {
    pub x: u64,
    pub y: u64,
    pub p: u64,
    pub q: u64,
}

/// Reads the knot class off a travel cover of a rectangle-deleted product.
///
/// Panics if the quotients are not integers; that signals a bug, not a user
/// error.
pub fn knot_class(cover: &CycleCover) -> KnotClass {
    let (x, y) = cover.travel_counts();
    assert_eq!(x % cover.m(), 0, "x = {x} must be divisible by m = {}", cover.m());
    assert_eq!(y % cover.n(), 0, "y = {y} must be divisible by n = {}", cover.n());
    KnotClass {
        x,
        y,
        p: x / cover.m(),
        q: y / cover.n(),
    }
}

/// Whether a cover with this knot class consists of a single cycle:
/// `gcd(x/m, y/n) = 1`.
pub fn is_single_cycle(k: &KnotClass) -> bool {
    num_integer::gcd(k.p, k.q) == 1
}

/// A directed hamiltonian cycle, stored as a closed vertex sequence in
/// canonical rotation (lexicographically least vertex first). The edge from
/// the last vertex back to the first is implied.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HamCycle {
    vertices: Vec<Vertex>,
}

impl HamCycle {
    /// Validates that `vertices` visits every surviving vertex of `g` exactly
    /// once along directed edges, then canonicalizes the rotation.
    pub fn new(vertices: Vec<Vertex>, g: &TorusDigraph) -> Result<Self> {
        if vertices.len() as u64 != g.vertex_count() || vertices.is_empty() {
            return Err(Error::NotHamiltonian {
                reason: format!(
                    "sequence length {} differs from vertex count {}",
                    vertices.len(),
                    g.vertex_count()
                ),
            });
        }
        let mut seen = vec![false; (g.m() * g.n()) as usize];
        for v in &vertices {
            if !g.contains(*v) {
                return Err(Error::NotHamiltonian {
                    reason: format!("vertex {v} is not in the digraph"),
                });
            }
            let idx = (v.i * g.n() + v.j) as usize;
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::NotHamiltonian {
                    reason: format!("vertex {v} is visited twice"),
                });
            }
        }
        for k in 0..vertices.len() {
            let u = vertices[k];
            let w = vertices[(k + 1) % vertices.len()];
            if !g.has_edge(u, w) {
                return Err(Error::NotHamiltonian {
                    reason: format!("missing edge {u} -> {w}"),
                });
            }
        }
        let least = vertices
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map(|(k, _)| k)
            .expect("nonempty");
        let mut vertices = vertices;
        vertices.rotate_left(least);
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Traces the unique cycle cover of `(C_m x C_n) \ R_{2,2}` into the
/// hamiltonian cycle of `m*n - 4` vertices. Requires `m, n >= 3` and a
/// passing fast verdict.
pub fn build_deleted_ham_cycle(moduli: &Moduli) -> Result<HamCycle> {
    build_deleted_ham_cycle_with_limit(moduli, DEFAULT_CONSTRUCTION_LIMIT)
}

/// As [`build_deleted_ham_cycle`] with an explicit size limit.
pub fn build_deleted_ham_cycle_with_limit(moduli: &Moduli, limit: u64) -> Result<HamCycle> {
    let three = BigInt::from(3);
    if *moduli.m() < three || *moduli.n() < three {
        return Err(Error::DomainTooSmall {
            what: "build_deleted_ham_cycle",
            bound: 3,
            m: moduli.m().clone(),
            n: moduli.n().clone(),
        });
    }
    let verdict = is_deleted_rect_hamiltonian(moduli, &BigInt::from(2), &BigInt::from(2))?;
    if !verdict.hamiltonian() {
        return Err(Error::NotHamiltonian {
            reason: format!(
                "failed condition: {}",
                verdict
                    .failed_condition()
                    .expect("non-hamiltonian verdicts carry a condition")
            ),
        });
    }
    let cover = build_cycle_cover_with_limit(moduli, limit)?;
    let (m, n) = moduli.to_desk_scale(limit)?;

    let start = Vertex::new(0, 2);
    let expected = m * n - 4;
    let mut seq = Vec::with_capacity(expected as usize);
    let mut cur = start;
    loop {
        seq.push(cur);
        cur = cover
            .successor(cur)
            .expect("cover successor chains stay inside the cover");
        if cur == start {
            break;
        }
        assert!(
            seq.len() as u64 <= expected,
            "successor trace exceeds the vertex count"
        );
    }
    assert_eq!(
        seq.len() as u64,
        expected,
        "cover must be a single cycle when the verdict passes"
    );
    let g = TorusDigraph::new(m, n)?.with_deleted_rect(Rectangle::at_origin(2, 2))?;
    HamCycle::new(seq, &g)
}

/// Builds both hamiltonian cycles of `P(C_m x C_n)` pushed at `v = (0, 1)`,
/// with the deleted rectangle of the underlying construction at the origin.
pub fn build_pushed_ham_cycles(moduli: &Moduli) -> Result<(HamCycle, HamCycle)> {
    build_pushed_ham_cycles_with_limit(moduli, DEFAULT_CONSTRUCTION_LIMIT)
}

/// As [`build_pushed_ham_cycles`] with an explicit size limit.
pub fn build_pushed_ham_cycles_with_limit(
    moduli: &Moduli,
    limit: u64,
) -> Result<(HamCycle, HamCycle)> {
    let three = BigInt::from(3);
    if *moduli.m() < three || *moduli.n() < three {
        return Err(Error::DomainTooSmall {
            what: "build_pushed_ham_cycles",
            bound: 3,
            m: moduli.m().clone(),
            n: moduli.n().clone(),
        });
    }
    let verdict = is_pushed_product_hamiltonian(moduli);
    if !verdict.hamiltonian() {
        return Err(Error::NotHamiltonian {
            reason: format!(
                "failed condition: {}",
                verdict
                    .failed_condition()
                    .expect("non-hamiltonian verdicts carry a condition")
            ),
        });
    }
    let (m, n) = moduli.to_desk_scale(limit)?;
    let push = Vertex::new(0, 1);
    let g = TorusDigraph::new(m, n)?.pushed_at(push);

    // First cycle: splice the walk into the deleted-product cycle directly.
    let base = build_deleted_ham_cycle_with_limit(moduli, limit)?;
    let first = splice_walk(base.vertices(), m);

    // Second cycle: the reflected construction. Build in the transposed
    // instance, transpose back, and translate the transposed push location
    // (1, 0) onto (0, 1).
    let swapped = build_deleted_ham_cycle_with_limit(&moduli.swapped(), limit)?;
    let reflected = splice_walk(swapped.vertices(), n);
    let second: Vec<Vertex> = reflected
        .into_iter()
        .map(|v| Vertex::new((v.j + m - 1) % m, (v.i + 1) % n))
        .collect();

    let first = HamCycle::new(first, &g)?;
    let second = HamCycle::new(second, &g)?;
    assert_ne!(first, second, "the two constructed cycles must differ");
    Ok((first, second))
}

/// Replaces the forced edge `(M-1, 0) -> (M-1, 1)` of a cycle in the
/// `R_{2,2}`-deleted `M x N` torus with the walk through the four deleted
/// vertices, yielding a closed sequence on all `M * N` vertices. Relative to
/// the pushed vertex `v = (0, 1)` the walk is
/// `v-(1,1), v-(0,1), v+(1,-1), v+(1,0), v, v-(1,0)`.
fn splice_walk(cycle: &[Vertex], big_m: u64) -> Vec<Vertex> {
    let tail = Vertex::new(big_m - 1, 0);
    let head = Vertex::new(big_m - 1, 1);
    let pos = cycle
        .iter()
        .position(|&v| v == tail)
        .expect("cycle visits every surviving vertex");
    assert_eq!(
        cycle[(pos + 1) % cycle.len()],
        head,
        "the deleted-product cycle must use the forced edge"
    );
    let mut out = Vec::with_capacity(cycle.len() + 4);
    out.extend_from_slice(&cycle[..=pos]);
    out.extend_from_slice(&[
        Vertex::new(0, 0),
        Vertex::new(1, 0),
        Vertex::new(1, 1),
        Vertex::new(0, 1),
    ]);
    out.extend_from_slice(&cycle[pos + 1..]);
    out
}
