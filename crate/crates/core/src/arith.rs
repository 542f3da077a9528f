//! Two-modulus residue arithmetic on arbitrary-precision integers.
//!
//! The central operation is [`crt`]: given residues `i` mod `m` and `j`
//! mod `n`, it returns the unique integer in `[1, lcm(m, n)]` satisfying both
//! congruences, or reports that none exists. Everything runs in time
//! polynomial in the digit length of the inputs.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Bezout data for a fixed pair of moduli: `coeff_m * m + coeff_n * n = g`.
/// Computed once per [`Moduli`]; every residue solve reuses it.
#[derive(Debug, Clone)]
struct CrtBasis {
    g: BigInt,
    coeff_m: BigInt,
    n_over_g: BigInt,
    lcm: BigInt,
}

/// The pair of cycle lengths `(m, n)`, both at least 2.
#[derive(Debug, Clone)]
pub struct Moduli {
    m: BigInt,
    n: BigInt,
    basis: OnceLock<CrtBasis>,
}

impl PartialEq for Moduli {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n
    }
}

impl Eq for Moduli {}

impl Moduli {
    pub fn new(m: BigInt, n: BigInt) -> Result<Self> {
        let two = BigInt::from(2);
        if m < two || n < two {
            return Err(Error::InvalidModuli { m, n });
        }
        Ok(Self {
            m,
            n,
            basis: OnceLock::new(),
        })
    }

    /// Convenience constructor for machine-sized moduli.
    pub fn from_u64(m: u64, n: u64) -> Result<Self> {
        Self::new(BigInt::from(m), BigInt::from(n))
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    /// The same pair with the roles of `m` and `n` interchanged.
    pub fn swapped(&self) -> Self {
        Self {
            m: self.n.clone(),
            n: self.m.clone(),
            basis: OnceLock::new(),
        }
    }

    fn basis(&self) -> &CrtBasis {
        self.basis.get_or_init(|| {
            let (g, coeff_m) = extended_gcd(&self.m, &self.n);
            let n_over_g = &self.n / &g;
            let lcm = &self.m * &n_over_g;
            CrtBasis {
                g,
                coeff_m,
                n_over_g,
                lcm,
            }
        })
    }

    pub fn gcd(&self) -> BigInt {
        self.basis().g.clone()
    }

    pub fn lcm(&self) -> BigInt {
        self.basis().lcm.clone()
    }

    pub fn product(&self) -> BigInt {
        &self.m * &self.n
    }

    /// Solve `x = i (mod m)`, `x = j (mod n)` into `[1, lcm(m, n)]`.
    pub fn crt(&self, i: &BigInt, j: &BigInt) -> CrtValue {
        crt(i, j, self)
    }

    /// Both moduli as `u64`, provided the product does not exceed `limit`.
    pub fn to_desk_scale(&self, limit: u64) -> Result<(u64, u64)> {
        if self.product() > BigInt::from(limit) {
            return Err(Error::SizeLimitExceeded {
                actual: self.product(),
                limit: BigInt::from(limit),
            });
        }
        let m = u64::try_from(&self.m).expect("bounded by limit");
        let n = u64::try_from(&self.n).expect("bounded by limit");
        Ok((m, n))
    }
}

/// Solution of a two-congruence system, confined to `[1, lcm(m, n)]`.
///
/// The value exists if and only if `i = j (mod gcd(m, n))`; when the pair of
/// residues is `(0, 0)` the value is `lcm(m, n)` itself, per the range
/// convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtValue(Option<BigInt>);

impl CrtValue {
    pub fn exists(&self) -> bool {
        self.0.is_some()
    }

    pub fn value(&self) -> Option<&BigInt> {
        self.0.as_ref()
    }

    pub fn into_value(self) -> Option<BigInt> {
        self.0
    }

    /// Unwraps the value; panics if the residue system was inconsistent.
    pub fn expect_value(&self, what: &str) -> &BigInt {
        self.0.as_ref().unwrap_or_else(|| {
            panic!("CRT value {what} does not exist");
        })
    }
}

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
///
/// Arguments may be negative; the gcd is taken on absolute values.
pub fn gcd(x: &BigInt, y: &BigInt) -> BigInt {
    x.gcd(y)
}

/// Positive least common multiple of two nonzero integers.
pub fn lcm(x: &BigInt, y: &BigInt) -> Result<BigInt> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::LcmOfZero);
    }
    Ok(x.lcm(y))
}

/// The unique `x` in `[1, lcm(m, n)]` with `x = i (mod m)` and
/// `x = j (mod n)`, or nonexistent when `i != j (mod gcd(m, n))`.
///
/// Residues may be arbitrary integers; they are reduced into canonical range
/// first. Solved by extended Euclid, not by scanning.
pub fn crt(i: &BigInt, j: &BigInt, moduli: &Moduli) -> CrtValue {
    let m = moduli.m();
    let n = moduli.n();
    let i = i.mod_floor(m);
    let j = j.mod_floor(n);

    let basis = moduli.basis();
    let (diff_q, diff_r) = (&j - &i).div_mod_floor(&basis.g);
    if !diff_r.is_zero() {
        return CrtValue(None);
    }

    // coeff_m * m + coeff_n * n = g, so (m / g) * coeff_m = 1 (mod n / g);
    // x = i + m * t with t = coeff_m * (j - i) / g (mod n / g) solves both
    // congruences.
    let t = (&basis.coeff_m * diff_q).mod_floor(&basis.n_over_g);
    let x = (i + m * t).mod_floor(&basis.lcm);
    CrtValue(Some(if x.is_zero() {
        basis.lcm.clone()
    } else {
        x
    }))
}

/// Shorthand for small constant residues, used heavily by the verdicts.
pub(crate) fn crt_i64(i: i64, j: i64, moduli: &Moduli) -> CrtValue {
    crt(&BigInt::from(i), &BigInt::from(j), moduli)
}

/// Extended gcd for positive inputs, by Lehmer's method: most quotients are
/// simulated on the leading 64 bits of the operands and applied in batches as
/// a 2x2 matrix, so the cost stays near one word operation per word-sized
/// chunk of the quotient sequence. Returns `(g, x)` with
/// `x * m + y * n = g = gcd(m, n)` for some `y`.
///
/// The Bezout identity of the result is verified before returning; a failure
/// would be a bug, not an input error.
fn extended_gcd(m: &BigInt, n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(m.is_positive() && n.is_positive());
    // Rows satisfy a = xa * m + ya * n and b = xb * m + yb * n throughout.
    let (mut a, mut b) = (m.clone(), n.clone());
    let (mut xa, mut ya) = (BigInt::one(), BigInt::zero());
    let (mut xb, mut yb) = (BigInt::zero(), BigInt::one());
    if a < b {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut xa, &mut xb);
        std::mem::swap(&mut ya, &mut yb);
    }

    while !b.is_zero() {
        if a.bits() <= 64 {
            // Word-sized tail: plain Euclid.
            let (mut sa, mut sb) = (
                u64::try_from(&a).expect("fits"),
                u64::try_from(&b).expect("fits"),
            );
            while sb != 0 {
                let q = sa / sb;
                (sa, sb) = (sb, sa - q * sb);
                let nxb = &xa - BigInt::from(q) * &xb;
                let nyb = &ya - BigInt::from(q) * &yb;
                xa = std::mem::replace(&mut xb, nxb);
                ya = std::mem::replace(&mut yb, nyb);
            }
            a = BigInt::from(sa);
            break;
        }

        // Simulate Euclid on the leading 64 bits; (qa..qd) accumulates the
        // quotient steps that are provably correct for the full operands.
        let shift = a.bits() - 64;
        let mut u = u64::try_from(&a >> shift).expect("64 bits") as i128;
        let mut v = u64::try_from(&b >> shift).expect("64 bits") as i128;
        let (mut qa, mut qb, mut qc, mut qd): (i128, i128, i128, i128) = (1, 0, 0, 1);
        loop {
            if v + qc <= 0 || v + qd <= 0 {
                break;
            }
            let q1 = (u + qa).div_euclid(v + qc);
            let q2 = (u + qb).div_euclid(v + qd);
            if q1 != q2 {
                break;
            }
            let bound = 1i128 << 62;
            let (Some(tc), Some(td)) = (q1.checked_mul(qc), q1.checked_mul(qd)) else {
                break;
            };
            let (nc, nd) = (qa - tc, qb - td);
            if nc.abs() > bound || nd.abs() > bound {
                break;
            }
            (qa, qc) = (qc, nc);
            (qb, qd) = (qd, nd);
            (u, v) = (v, u - q1 * v);
        }

        if qb == 0 {
            // No simulated progress; take one full-precision step.
            let (q, r) = a.div_mod_floor(&b);
            a = std::mem::replace(&mut b, r);
            let nxb = &xa - &q * &xb;
            let nyb = &ya - q * &yb;
            xa = std::mem::replace(&mut xb, nxb);
            ya = std::mem::replace(&mut yb, nyb);
        } else {
            let apply = |p: &BigInt, q: &BigInt, c0: i128, c1: i128| {
                BigInt::from(c0) * p + BigInt::from(c1) * q
            };
            let (na, nb) = (apply(&a, &b, qa, qb), apply(&a, &b, qc, qd));
            assert!(!na.is_negative() && !nb.is_negative() && nb < na);
            let (nxa, nxb) = (apply(&xa, &xb, qa, qb), apply(&xa, &xb, qc, qd));
            let (nya, nyb) = (apply(&ya, &yb, qa, qb), apply(&ya, &yb, qc, qd));
            (a, b, xa, xb, ya, yb) = (na, nb, nxa, nxb, nya, nyb);
        }
    }

    assert_eq!(&xa * m + &ya * n, a, "Bezout identity must hold");
    (a, xa)
}

pub(crate) fn is_one(x: &BigInt) -> bool {
    x.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn moduli(m: u64, n: u64) -> Moduli {
        Moduli::from_u64(m, n).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Independent oracle: scan k = 1..=lcm checking both congruences.
    fn crt_scan(i: i64, j: i64, m: u64, n: u64) -> Option<u64> {
        let l = num_integer::lcm(m, n);
        let im = i.rem_euclid(m as i64) as u64;
        let jn = j.rem_euclid(n as i64) as u64;
        (1..=l).find(|k| k % m == im && k % n == jn)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&big(6), &big(0)), big(6));
        assert_eq!(gcd(&big(-3), &big(4)), big(1));
        assert_eq!(gcd(&big(2), &big(3)), big(1));
        assert_eq!(gcd(&big(0), &big(0)), big(0));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm(&big(3), &big(5)).unwrap(), big(15));
        assert_eq!(lcm(&big(4), &big(6)).unwrap(), big(12));
        assert_eq!(lcm(&big(7), &big(7)).unwrap(), big(7));
        assert_eq!(lcm(&big(0), &big(5)), Err(Error::LcmOfZero));
    }

    #[test]
    fn crt_examples() {
        let m35 = moduli(3, 5);
        assert_eq!(m35.crt(&big(1), &big(1)).value(), Some(&big(1)));
        // <-1|-1> = lcm(m, n) - 1
        assert_eq!(m35.crt(&big(-1), &big(-1)).value(), Some(&big(14)));
        // Frozen from the linear-scan oracle.
        assert_eq!(crt_scan(0, -2, 3, 5), Some(3));
        assert_eq!(m35.crt(&big(0), &big(-2)).value(), Some(&big(3)));
        // <-2|-2> = mn - 2 under gcd(m, n) = 1
        assert_eq!(m35.crt(&big(-2), &big(-2)).value(), Some(&big(13)));

        let m24 = moduli(2, 4);
        assert!(!m24.crt(&big(1), &big(0)).exists());
    }

    #[test]
    fn crt_all_zero_pair_is_lcm() {
        assert_eq!(moduli(3, 5).crt(&big(0), &big(0)).value(), Some(&big(15)));
        assert_eq!(moduli(4, 6).crt(&big(0), &big(0)).value(), Some(&big(12)));
    }

    #[test]
    fn invalid_moduli_rejected() {
        assert!(Moduli::from_u64(1, 5).is_err());
        assert!(Moduli::from_u64(3, 0).is_err());
    }

    #[test]
    fn matches_linear_scan_up_to_40() {
        for m in 2..=40u64 {
            for n in 2..=40u64 {
                let md = moduli(m, n);
                for i in 0..m as i64 {
                    for j in 0..n as i64 {
                        let fast = md.crt(&big(i), &big(j));
                        let slow = crt_scan(i, j, m, n);
                        assert_eq!(
                            fast.into_value().map(|v| u64::try_from(v).unwrap()),
                            slow,
                            "crt({i}, {j}) mod ({m}, {n})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn batched_extended_gcd_matches_naive() {
        // Deterministic pseudo-random operands across the size range where
        // the word-batched path, the fallback step, and the tail all fire.
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for bits in [8u64, 63, 64, 65, 128, 200, 1000, 4096] {
            for _ in 0..25 {
                let draw = |next: &mut dyn FnMut() -> u64| {
                    let limbs = (bits as usize).div_ceil(64);
                    let mut v = BigInt::zero();
                    for _ in 0..limbs {
                        v = (v << 64) + BigInt::from(next());
                    }
                    (v % (BigInt::one() << bits)) + 1
                };
                let m = draw(&mut next);
                let n = draw(&mut next);
                let (g, x) = extended_gcd(&m, &n);
                let reference = m.extended_gcd(&n);
                assert_eq!(g, reference.gcd, "gcd mismatch at {bits} bits");
                // Bezout coefficients are unique only modulo n / g.
                let n_over_g = &n / &g;
                assert_eq!(
                    x.mod_floor(&n_over_g),
                    reference.x.mod_floor(&n_over_g),
                    "coefficient mismatch at {bits} bits"
                );
            }
        }
    }

    #[test]
    fn huge_integers_round_trip() {
        // 10^5 decimal digits must survive parse -> print exactly.
        let digits: String = std::iter::once('7')
            .chain((0..99_999).map(|k| char::from(b'0' + ((k * 37 + 11) % 10) as u8)))
            .collect();
        let parsed: BigInt = digits.parse().unwrap();
        assert_eq!(parsed.to_string(), digits);
    }

    proptest! {
        #[test]
        fn crt_satisfies_both_congruences(
            m in 2u64..5000, n in 2u64..5000, i in -10_000i64..10_000, j in -10_000i64..10_000
        ) {
            let md = moduli(m, n);
            let v = md.crt(&big(i), &big(j));
            let g = md.gcd();
            let consistent = (big(i) - big(j)).mod_floor(&g).is_zero();
            prop_assert_eq!(v.exists(), consistent);
            if let Some(x) = v.value() {
                prop_assert!(*x >= big(1) && *x <= md.lcm());
                prop_assert_eq!(x.mod_floor(&big(m as i64)), big(i).mod_floor(&big(m as i64)));
                prop_assert_eq!(x.mod_floor(&big(n as i64)), big(j).mod_floor(&big(n as i64)));
            }
        }

        #[test]
        fn shift_identity(m in 2u64..2000, n in 2u64..2000, i in -500i64..500, j in -500i64..500) {
            // <i-1|j-1> = <i|j> - 1 whenever both sides exist and <i|j> >= 2.
            let md = moduli(m, n);
            let hi = md.crt(&big(i), &big(j));
            let lo = md.crt(&big(i - 1), &big(j - 1));
            if let (Some(hi), Some(lo)) = (hi.value(), lo.value()) {
                if *hi >= big(2) {
                    prop_assert_eq!(lo.clone(), hi - 1);
                }
            }
        }

        #[test]
        fn complement_identity(m in 2u64..2000, n in 2u64..2000, i in -500i64..500, j in -500i64..500) {
            // For gcd(m, n) = 1 and (i, j) not congruent to (0, 0):
            // <i|j> + <-i|-j> = mn.
            let md = moduli(m, n);
            prop_assume!(md.gcd() == big(1));
            let zero_pair = big(i).mod_floor(&big(m as i64)).is_zero()
                && big(j).mod_floor(&big(n as i64)).is_zero();
            prop_assume!(!zero_pair);
            let a = md.crt(&big(i), &big(j));
            let b = md.crt(&big(-i), &big(-j));
            prop_assert_eq!(a.expect_value("a") + b.expect_value("b"), md.product());
        }
    }
}
