//! Exact hamiltonicity machinery for directed torus digraphs.
//!
//! The objects of study are the Cartesian product of two directed cycles
//! `C_m x C_n` (a directed torus), the digraph obtained from it by *pushing*
//! at a vertex (reversing every directed edge incident with that vertex), and
//! the digraph obtained by deleting a rectangle of vertices.
//!
//! The crate provides three independent routes to the same questions:
//!
//! * [`characterize`] — number-theoretic verdicts that run in time polynomial
//!   in the digit length of `m` and `n`, built on the two-modulus residue
//!   arithmetic in [`arith`].
//! * [`construct`] — explicit construction of the unique vertex-disjoint
//!   cycle cover of the rectangle-deleted torus, its knot class, and the two
//!   hamiltonian cycles of the pushed torus obtained by edge surgery.
//! * [`oracle`] — exhaustive enumeration of hamiltonian cycles and cycle
//!   covers on materialized desk-scale instances, used to certify the fast
//!   routes.

pub mod arith;
pub mod characterize;
pub mod construct;
pub mod grid;
pub mod oracle;

pub use num_bigint::BigInt;

pub use arith::{crt, gcd, lcm, CrtValue, Moduli};
pub use characterize::{
    is_deleted_rect_hamiltonian, is_pushed_product_hamiltonian, pushed_equals_deleted,
    FailedCondition, Verdict,
};
pub use construct::{
    build_cycle_cover, build_cycle_cover_with_limit, build_deleted_ham_cycle,
    build_deleted_ham_cycle_with_limit, build_pushed_ham_cycles,
    build_pushed_ham_cycles_with_limit, is_single_cycle, knot_class, CycleCover, HamCycle,
    KnotClass, TravelAssignment, DEFAULT_CONSTRUCTION_LIMIT,
};
pub use grid::{Rectangle, TorusDigraph, Vertex};
pub use oracle::{
    enumerate_cycle_covers, enumerate_cycle_covers_with_limit, enumerate_ham_cycles,
    enumerate_ham_cycles_with_limit, Enumeration, DEFAULT_ORACLE_LIMIT,
};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Cycle lengths below 2 do not describe directed cycles.
    #[error("invalid moduli: require m >= 2 and n >= 2, got m = {m}, n = {n}")]
    InvalidModuli { m: BigInt, n: BigInt },

    /// `lcm` is undefined for a zero argument.
    #[error("lcm requires nonzero arguments")]
    LcmOfZero,

    /// An operation needs cycle lengths above a module-specific bound.
    #[error("{what} requires m >= {bound} and n >= {bound}, got m = {m}, n = {n}")]
    DomainTooSmall {
        what: &'static str,
        bound: u64,
        m: BigInt,
        n: BigInt,
    },

    /// Rectangle dimensions must satisfy 1 <= a <= m and 1 <= b <= n.
    #[error("invalid rectangle: {a} x {b} does not fit a {m} x {n} torus")]
    InvalidRectangle {
        a: BigInt,
        b: BigInt,
        m: BigInt,
        n: BigInt,
    },

    /// Rectangles spanning a full row or column dimension are rejected by the
    /// fast tests: the criterion is not validated there.
    #[error("degenerate rectangle: a = m or b = n is not supported (a = {a}, b = {b})")]
    DegenerateRectangle { a: BigInt, b: BigInt },

    /// Queried a vertex that was deleted from the digraph.
    #[error("vertex ({0}, {1}) is deleted")]
    DeletedVertex(u64, u64),

    /// The rectangle-deleted torus has no vertex-disjoint cycle cover.
    #[error("no vertex-disjoint cycle cover exists for m = {m}, n = {n}")]
    NoCycleCover { m: BigInt, n: BigInt },

    /// Construction was requested for a digraph the fast test rejects.
    #[error("digraph is not hamiltonian ({reason})")]
    NotHamiltonian { reason: String },

    /// Explicit construction and enumeration refuse oversized instances.
    #[error("instance has {actual} vertices, exceeding the limit of {limit}")]
    SizeLimitExceeded { actual: BigInt, limit: BigInt },
}

pub type Result<T> = std::result::Result<T, Error>;
