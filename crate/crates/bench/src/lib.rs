//! Shared helpers for the benchmark targets.

use hamtorus::BigInt;

/// Deterministic pseudo-random decimal string of the given length, leading
/// digit nonzero.
pub fn pseudo_random_digits(digits: usize, seed: u64) -> BigInt {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut s = String::with_capacity(digits);
    s.push(char::from(b'1' + (next() % 9) as u8));
    for _ in 1..digits {
        s.push(char::from(b'0' + (next() % 10) as u8));
    }
    s.parse().expect("digits parse")
}

/// A deterministic coprime pair of the given digit length (consecutive
/// integers are coprime).
pub fn coprime_pair(digits: usize, seed: u64) -> (BigInt, BigInt) {
    let m = pseudo_random_digits(digits, seed);
    let n = &m + 1;
    (m, n)
}
