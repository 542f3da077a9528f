//! Fast number-theoretic hamiltonicity decisions.
//!
//! [`is_pushed_product_hamiltonian`] decides whether the pushed product
//! `P(C_m x C_n)` is hamiltonian from three arithmetic conditions (with a
//! closed-form rule when `min(m, n) = 2`). [`is_deleted_rect_hamiltonian`]
//! decides the general rectangle-deleted product `(C_m x C_n) \ R_{a,b}`,
//! trying both orientations of the instance. Verdicts expose every
//! intermediate residue as a named witness.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{crt, crt_i64, gcd, is_one, CrtValue, Moduli};
use crate::{Error, Result};

/// Which arithmetic condition ruled the instance out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCondition {
    /// `gcd(m, n) != 1`.
    Coprimality,
    /// `min{<0|-2>, <-2|0>}` is not below `min{<0|-1>, <-1|0>}`.
    MinInequality,
    /// The knot-class gcd is not 1.
    KnotGcd,
    /// `<-a|0>` does not exist.
    CrtNonexistence,
    /// `<-a|0>` does not attain the minimum over the rectangle's residue lists.
    MinAttainment,
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailedCondition::Coprimality => "coprimality",
            FailedCondition::MinInequality => "min-inequality",
            FailedCondition::KnotGcd => "knot-gcd",
            FailedCondition::CrtNonexistence => "crt-nonexistence",
            FailedCondition::MinAttainment => "min-attainment",
        };
        f.write_str(s)
    }
}

/// Structured result of a hamiltonicity test.
///
/// `hamiltonian()` is true exactly when no condition failed. Every witness
/// value is recomputable from `(m, n, a, b)` alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    hamiltonian: bool,
    failed_condition: Option<FailedCondition>,
    witnesses: BTreeMap<String, BigInt>,
    swapped_orientation: bool,
}

impl Verdict {
    fn pass(witnesses: BTreeMap<String, BigInt>, swapped: bool) -> Self {
        Self {
            hamiltonian: true,
            failed_condition: None,
            witnesses,
            swapped_orientation: swapped,
        }
    }

    fn fail(
        condition: FailedCondition,
        witnesses: BTreeMap<String, BigInt>,
        swapped: bool,
    ) -> Self {
        Self {
            hamiltonian: false,
            failed_condition: Some(condition),
            witnesses,
            swapped_orientation: swapped,
        }
    }

    pub fn hamiltonian(&self) -> bool {
        self.hamiltonian
    }

    pub fn failed_condition(&self) -> Option<FailedCondition> {
        self.failed_condition
    }

    pub fn witnesses(&self) -> &BTreeMap<String, BigInt> {
        &self.witnesses
    }

    /// Whether the passing orientation interchanged `m` with `n` (and `a`
    /// with `b`).
    pub fn swapped_orientation(&self) -> bool {
        self.swapped_orientation
    }
}

/// Decides whether `P(C_m x C_n)` (the product pushed at one vertex) is
/// hamiltonian.
///
/// For `m, n >= 3` the three conditions are, short-circuiting in order:
/// `gcd(m, n) = 1`; `min{<0|-2>, <-2|0>} < min{<0|-1>, <-1|0>}`; and
/// `gcd(<0|-4>/m, <-4|0>/n) = 1`. When `min(m, n) = 2` the product is
/// hamiltonian if and only if the other cycle length is 2 or 3.
///
/// Runs in time polynomial in the digit length of `m` and `n`.
pub fn is_pushed_product_hamiltonian(moduli: &Moduli) -> Verdict {
    let two = BigInt::from(2);
    if *moduli.m() == two || *moduli.n() == two {
        return small_cycle_case(moduli);
    }
    square_rect_conditions(moduli)
}

/// The `min(m, n) = 2` closed form: hamiltonian iff the other length is 2
/// or 3. For even partners the coprimality condition fails; for odd partners
/// at least 5 the minimum inequality fails.
fn small_cycle_case(moduli: &Moduli) -> Verdict {
    let mut witnesses = BTreeMap::new();
    witnesses.insert("m".to_string(), moduli.m().clone());
    witnesses.insert("n".to_string(), moduli.n().clone());
    let other = moduli.m().max(moduli.n());
    if *other <= BigInt::from(3) {
        return Verdict::pass(witnesses, false);
    }
    let condition = if moduli.gcd() > BigInt::one() {
        FailedCondition::Coprimality
    } else {
        FailedCondition::MinInequality
    };
    Verdict::fail(condition, witnesses, false)
}

/// The three conditions for the 2 x 2 rectangle, in closed form.
fn square_rect_conditions(moduli: &Moduli) -> Verdict {
    let mut witnesses = BTreeMap::new();
    let g = moduli.gcd();
    witnesses.insert("gcd(m,n)".to_string(), g.clone());
    if !is_one(&g) {
        return Verdict::fail(FailedCondition::Coprimality, witnesses, false);
    }

    // gcd(m, n) = 1, so every residue pair is realized.
    let c02 = take(crt_i64(0, -2, moduli));
    let c20 = take(crt_i64(-2, 0, moduli));
    let c01 = take(crt_i64(0, -1, moduli));
    let c10 = take(crt_i64(-1, 0, moduli));
    witnesses.insert("⟨0|-2⟩".to_string(), c02.clone());
    witnesses.insert("⟨-2|0⟩".to_string(), c20.clone());
    witnesses.insert("⟨0|-1⟩".to_string(), c01.clone());
    witnesses.insert("⟨-1|0⟩".to_string(), c10.clone());
    if c02.min(c20) >= c01.min(c10) {
        return Verdict::fail(FailedCondition::MinInequality, witnesses, false);
    }

    let c04 = take(crt_i64(0, -4, moduli));
    let c40 = take(crt_i64(-4, 0, moduli));
    let (p, rm) = c04.div_mod_floor(moduli.m());
    let (q, rn) = c40.div_mod_floor(moduli.n());
    debug_assert!(rm.is_zero() && rn.is_zero());
    witnesses.insert("⟨0|-4⟩".to_string(), c04);
    witnesses.insert("⟨-4|0⟩".to_string(), c40);
    witnesses.insert("⟨0|-4⟩/m".to_string(), p.clone());
    witnesses.insert("⟨-4|0⟩/n".to_string(), q.clone());
    let knot = gcd(&p, &q);
    witnesses.insert("knot_gcd".to_string(), knot.clone());
    if !is_one(&knot) {
        return Verdict::fail(FailedCondition::KnotGcd, witnesses, false);
    }
    Verdict::pass(witnesses, false)
}

fn take(v: CrtValue) -> BigInt {
    v.into_value().expect("residues exist when gcd(m,n) = 1")
}

/// Decides whether `(C_m x C_n) \ R_{a,b}` is hamiltonian.
///
/// Evaluates the general rectangle conditions in the given orientation and,
/// if they fail, after interchanging `m` with `n` and `a` with `b`;
/// `swapped_orientation` on the verdict records which orientation passed.
/// Rectangles with `a = m` or `b = n` are rejected: the criterion is not
/// validated for them.
///
/// The minimum condition scans the two residue lists term by term, so the
/// cost grows linearly in `a + b` (each term is one polylog CRT solve).
pub fn is_deleted_rect_hamiltonian(moduli: &Moduli, a: &BigInt, b: &BigInt) -> Result<Verdict> {
    if a < &BigInt::one() || b < &BigInt::one() || a > moduli.m() || b > moduli.n() {
        return Err(Error::InvalidRectangle {
            a: a.clone(),
            b: b.clone(),
            m: moduli.m().clone(),
            n: moduli.n().clone(),
        });
    }
    if a == moduli.m() || b == moduli.n() {
        return Err(Error::DegenerateRectangle {
            a: a.clone(),
            b: b.clone(),
        });
    }

    let original = rect_conditions(moduli, a, b);
    if original.failed.is_none() {
        return Ok(Verdict::pass(original.witnesses, false));
    }
    let swapped = rect_conditions(&moduli.swapped(), b, a);
    if swapped.failed.is_none() {
        return Ok(Verdict::pass(swapped.witnesses, true));
    }
    Ok(Verdict::fail(
        original.failed.expect("checked"),
        original.witnesses,
        false,
    ))
}

struct RectOutcome {
    failed: Option<FailedCondition>,
    witnesses: BTreeMap<String, BigInt>,
}

/// One orientation of the general rectangle criterion: `<-a|0>` exists,
/// attains the minimum over the two residue lists of the rectangle boundary
/// (nonexistent terms ignored), and the knot gcd is 1.
fn rect_conditions(moduli: &Moduli, a: &BigInt, b: &BigInt) -> RectOutcome {
    let mut witnesses = BTreeMap::new();
    witnesses.insert("gcd(m,n)".to_string(), moduli.gcd());

    let ca0 = crt(&-a.clone(), &BigInt::zero(), moduli);
    let Some(ca0) = ca0.into_value() else {
        return RectOutcome {
            failed: Some(FailedCondition::CrtNonexistence),
            witnesses,
        };
    };
    witnesses.insert("⟨-a|0⟩".to_string(), ca0.clone());

    // Row list <-a|j> for j in [-b, 0], column list <i|-b> for i in [-a, 0].
    // <-a|0> sits in the row list, so the condition reduces to: no existing
    // term lies strictly below it.
    let row = |k: &BigInt| crt(&-a.clone(), &-k.clone(), moduli);
    let col = |k: &BigInt| crt(&-k.clone(), &-b.clone(), moduli);
    for (list, len) in [(&row as &dyn Fn(&BigInt) -> CrtValue, b), (&col, a)] {
        let mut k = BigInt::zero();
        while k <= *len {
            if let Some(v) = list(&k).into_value() {
                if v < ca0 {
                    witnesses.insert("min_violator".to_string(), v);
                    return RectOutcome {
                        failed: Some(FailedCondition::MinAttainment),
                        witnesses,
                    };
                }
            }
            k += 1;
        }
    }
    witnesses.insert("min".to_string(), ca0.clone());

    // gcd( n - b - b*floor(<-a|0>/m), b * <-a|0>/n ) = 1; the first argument
    // may be negative, the gcd is taken on absolute values.
    let floor_m = ca0.div_floor(moduli.m());
    let lhs = moduli.n() - b - b * &floor_m;
    let (exact_n, r) = ca0.div_mod_floor(moduli.n());
    debug_assert!(r.is_zero());
    let rhs = b * exact_n;
    witnesses.insert("n-b-b⌊⟨-a|0⟩/m⌋".to_string(), lhs.clone());
    witnesses.insert("b⟨-a|0⟩/n".to_string(), rhs.clone());
    let knot = gcd(&lhs, &rhs);
    witnesses.insert("knot_gcd".to_string(), knot.clone());
    if !is_one(&knot) {
        return RectOutcome {
            failed: Some(FailedCondition::KnotGcd),
            witnesses,
        };
    }
    RectOutcome {
        failed: None,
        witnesses,
    }
}

/// Self-check: the pushed-product verdict agrees with the 2 x 2
/// rectangle-deletion verdict. Always true for `m, n >= 3`.
pub fn pushed_equals_deleted(moduli: &Moduli) -> Result<bool> {
    let three = BigInt::from(3);
    if *moduli.m() < three || *moduli.n() < three {
        return Err(Error::DomainTooSmall {
            what: "pushed_equals_deleted",
            bound: 3,
            m: moduli.m().clone(),
            n: moduli.n().clone(),
        });
    }
    let pushed = is_pushed_product_hamiltonian(moduli);
    let deleted = is_deleted_rect_hamiltonian(moduli, &BigInt::from(2), &BigInt::from(2))?;
    Ok(pushed.hamiltonian() == deleted.hamiltonian())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moduli(m: u64, n: u64) -> Moduli {
        Moduli::from_u64(m, n).unwrap()
    }

    fn pushed(m: u64, n: u64) -> Verdict {
        is_pushed_product_hamiltonian(&moduli(m, n))
    }

    fn deleted(m: u64, n: u64, a: u64, b: u64) -> Result<Verdict> {
        is_deleted_rect_hamiltonian(&moduli(m, n), &BigInt::from(a), &BigInt::from(b))
    }

    fn witness(v: &Verdict, key: &str) -> i64 {
        i64::try_from(v.witnesses()[key].clone()).unwrap()
    }

    #[test]
    fn pushed_3_5_is_hamiltonian_with_witnesses() {
        let v = pushed(3, 5);
        assert!(v.hamiltonian());
        assert_eq!(v.failed_condition(), None);
        // Frozen from the linear-scan residue oracle.
        assert_eq!(witness(&v, "⟨0|-2⟩"), 3);
        assert_eq!(witness(&v, "⟨-2|0⟩"), 10);
        assert_eq!(witness(&v, "⟨0|-1⟩"), 9);
        assert_eq!(witness(&v, "⟨-1|0⟩"), 5);
        assert_eq!(witness(&v, "⟨0|-4⟩/m"), 2);
        assert_eq!(witness(&v, "⟨-4|0⟩/n"), 1);
    }

    #[test]
    fn pushed_4_6_fails_coprimality() {
        let v = pushed(4, 6);
        assert!(!v.hamiltonian());
        assert_eq!(v.failed_condition(), Some(FailedCondition::Coprimality));
    }

    #[test]
    fn pushed_3_4_fails_min_inequality() {
        let v = pushed(3, 4);
        assert!(!v.hamiltonian());
        assert_eq!(v.failed_condition(), Some(FailedCondition::MinInequality));
    }

    #[test]
    fn pushed_small_cycle_rule() {
        assert!(pushed(2, 3).hamiltonian());
        assert!(pushed(2, 2).hamiltonian());
        assert!(pushed(3, 2).hamiltonian());
        let even = pushed(2, 4);
        assert_eq!(even.failed_condition(), Some(FailedCondition::Coprimality));
        let odd = pushed(2, 5);
        assert_eq!(
            odd.failed_condition(),
            Some(FailedCondition::MinInequality)
        );
        assert!(!pushed(2, 1000).hamiltonian());
    }

    #[test]
    fn pushed_5_7_is_hamiltonian() {
        assert!(pushed(5, 7).hamiltonian());
    }

    #[test]
    fn deleted_3_5_square_passes_in_swapped_orientation() {
        let v = deleted(3, 5, 2, 2).unwrap();
        assert!(v.hamiltonian());
        assert!(v.swapped_orientation());
        // Swapped instance (m, n) = (5, 3): <-2|0> = 3 attains the minimum
        // and gcd(3 - 2 - 2*floor(3/5), 2*3/3) = gcd(1, 2) = 1.
        assert_eq!(witness(&v, "⟨-a|0⟩"), 3);
        assert_eq!(witness(&v, "n-b-b⌊⟨-a|0⟩/m⌋"), 1);
        assert_eq!(witness(&v, "b⟨-a|0⟩/n"), 2);
    }

    #[test]
    fn deleted_3_5_unit_square_passes_directly() {
        let v = deleted(3, 5, 1, 1).unwrap();
        assert!(v.hamiltonian());
        assert!(!v.swapped_orientation());
        assert_eq!(witness(&v, "⟨-a|0⟩"), 5);
        assert_eq!(witness(&v, "min"), 5);
    }

    #[test]
    fn deleted_4_6_square_fails() {
        let v = deleted(4, 6, 2, 2).unwrap();
        assert!(!v.hamiltonian());
        assert!(v.failed_condition().is_some());
    }

    #[test]
    fn deleted_rejects_degenerate_rectangles() {
        assert!(matches!(
            deleted(3, 5, 3, 2),
            Err(Error::DegenerateRectangle { .. })
        ));
        assert!(matches!(
            deleted(3, 5, 2, 5),
            Err(Error::DegenerateRectangle { .. })
        ));
        assert!(matches!(
            deleted(3, 5, 0, 2),
            Err(Error::InvalidRectangle { .. })
        ));
        assert!(matches!(
            deleted(3, 5, 2, 6),
            Err(Error::InvalidRectangle { .. })
        ));
    }

    #[test]
    fn pushed_equals_deleted_examples() {
        assert!(pushed_equals_deleted(&moduli(3, 5)).unwrap());
        assert!(pushed_equals_deleted(&moduli(3, 4)).unwrap());
        assert!(pushed_equals_deleted(&moduli(7, 9)).unwrap());
        assert!(pushed_equals_deleted(&moduli(2, 5)).is_err());
    }

    #[test]
    fn verdict_is_symmetric_in_m_and_n() {
        for m in 2..40u64 {
            for n in 2..40u64 {
                assert_eq!(
                    pushed(m, n).hamiltonian(),
                    pushed(n, m).hamiltonian(),
                    "symmetry at ({m}, {n})"
                );
            }
        }
    }

    #[test]
    fn m3_row_closed_form_small_range() {
        for n in 4..=60u64 {
            assert_eq!(pushed(3, n).hamiltonian(), n % 3 == 2, "n = {n}");
        }
    }

    #[test]
    fn coprime_failure_blocks_everything() {
        for m in 3..=30u64 {
            for n in 3..=30u64 {
                if num_integer::gcd(m, n) > 1 {
                    assert!(!pushed(m, n).hamiltonian());
                }
            }
        }
    }
}
