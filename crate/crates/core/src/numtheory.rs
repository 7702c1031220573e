//! Prime lookup, modular exponentiation and the per-position shift terms.
//!
//! The shift added at position `i` is `0` for `i = 0` and
//! `power_ex^i mod P` otherwise, where `P` is the `n`-th prime for
//! `n = power_ex · code · 10`.

use crate::error::{Error, Result};

/// Largest prime index accepted by [`nth_prime`].
pub const MAX_PRIME_INDEX: u64 = 10_000_000;

/// Upper bound on the `n`-th prime (Rosser's bound, valid for `n >= 6`).
fn prime_upper_bound(n: u64) -> u64 {
    if n < 6 {
        return 13;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 1
}

/// Returns the `n`-th prime, 1-indexed: `nth_prime(1) == 2`.
pub fn nth_prime(n: u64) -> Result<u64> {
    if n == 0 || n > MAX_PRIME_INDEX {
        return Err(Error::IndexOutOfRange {
            n,
            max: MAX_PRIME_INDEX,
        });
    }
    if n == 1 {
        return Ok(2);
    }
    let limit = prime_upper_bound(n);
    // Odd-only bitset: bit k stands for 2k + 1.
    let bits = (limit / 2 + 1) as usize;
    let mut composite = vec![0u64; bits / 64 + 1];
    let is_set = |c: &[u64], k: usize| c[k / 64] >> (k % 64) & 1 == 1;

    let mut count = 1; // the prime 2
    let mut k = 1;
    while k < bits {
        if !is_set(&composite, k) {
            let p = 2 * k as u64 + 1;
            count += 1;
            if count == n {
                return Ok(p);
            }
            let mut m = p * p;
            while m <= limit {
                let j = (m / 2) as usize;
                composite[j / 64] |= 1 << (j % 64);
                m += 2 * p;
            }
        }
        k += 1;
    }
    unreachable!("upper bound {limit} holds fewer than {n} primes")
}

/// `base^exponent mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, exponent: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "modulus must be at least 2");
    if modulus <= u64::from(u32::MAX) {
        return Reducer::new(modulus).pow(base, exponent);
    }
    let m = u128::from(modulus);
    let mut result: u128 = 1;
    let mut b = u128::from(base) % m;
    let mut e = exponent;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// Operational key material: the additive base shift, the exponent base,
/// and the prime modulus that keeps the exponent terms bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CipherParams {
    code: u64,
    power_ex: u64,
    prime_index: u64,
    modulus: u64,
    reducer: Reducer,
    // squares[k] = power_ex^(2^k) mod modulus
    squares: [u64; 32],
}

impl CipherParams {
    /// Builds parameters from `code` and `power_ex`, looking up the
    /// `power_ex · code · 10`-th prime as the modulus.
    pub fn new(code: u64, power_ex: u64) -> Result<Self> {
        let out_of_range = Error::IndexOutOfRange {
            n: u64::MAX,
            max: MAX_PRIME_INDEX,
        };
        if code == 0 || power_ex == 0 {
            return Err(Error::IndexOutOfRange {
                n: 0,
                max: MAX_PRIME_INDEX,
            });
        }
        let prime_index = power_ex
            .checked_mul(code)
            .and_then(|v| v.checked_mul(10))
            .ok_or(out_of_range)?;
        let modulus = nth_prime(prime_index)?;
        let reducer = Reducer::new(modulus);
        let mut squares = [0u64; 32];
        squares[0] = power_ex % modulus;
        for k in 1..squares.len() {
            squares[k] = reducer.reduce(squares[k - 1] * squares[k - 1]);
        }
        Ok(CipherParams {
            code,
            power_ex,
            prime_index,
            modulus,
            reducer,
            squares,
        })
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn power_ex(&self) -> u64 {
        self.power_ex
    }

    pub fn prime_index(&self) -> u64 {
        self.prime_index
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// True when every term from position 1 on is the same value, which
    /// turns the cipher into a plain Caesar shift.
    pub fn is_weak(&self) -> bool {
        self.power_ex == 1
    }
}

pub fn params_from_derivation(code: u64, power_ex: u64) -> Result<CipherParams> {
    CipherParams::new(code, power_ex)
}

/// Shift term at absolute position `i`, computed directly.
pub fn shift_term_at(params: &CipherParams, i: u64) -> u64 {
    if i == 0 {
        0
    } else {
        // The modulus is a prime above power_ex, so power_ex^(P-1) = 1 and
        // the exponent can be taken mod P - 1, which is below 2^32.
        let mut e = (i - 1) % (params.modulus - 1) + 1;
        let mut term = 1;
        let mut k = 0;
        while e > 0 {
            if e & 1 == 1 {
                term = params.reducer.reduce(term * params.squares[k]);
            }
            e >>= 1;
            k += 1;
        }
        term
    }
}

/// Reduction modulo a fixed `modulus` by a precomputed reciprocal,
/// avoiding a hardware divide per call. Exact for any `x: u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Reducer {
    modulus: u64,
    // floor(2^64 / modulus)
    reciprocal: u64,
}

impl Reducer {
    fn new(modulus: u64) -> Self {
        debug_assert!(modulus >= 2);
        Reducer {
            modulus,
            reciprocal: ((1u128 << 64) / u128::from(modulus)) as u64,
        }
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        // The quotient estimate is floor(x / modulus) or one less.
        let q = ((u128::from(x) * u128::from(self.reciprocal)) >> 64) as u64;
        let r = x - q * self.modulus;
        if r >= self.modulus {
            r - self.modulus
        } else {
            r
        }
    }

    /// Square-and-multiply; residues stay below 2^32 so products fit.
    fn pow(&self, base: u64, mut exponent: u64) -> u64 {
        debug_assert!(self.modulus <= u64::from(u32::MAX));
        let mut result = 1 % self.modulus;
        let mut b = base % self.modulus;
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = self.reduce(result * b);
            }
            b = self.reduce(b * b);
            exponent >>= 1;
        }
        result
    }
}

/// Sequential shift-term generator; one multiply-and-reduce per position.
#[derive(Debug, Clone)]
pub struct ShiftStream {
    power_ex: u64,
    reducer: Reducer,
    position: u64,
    // Term to be emitted at `position`.
    next_term: u64,
}

impl ShiftStream {
    pub fn new(params: &CipherParams) -> Self {
        Self::starting_at(params, 0)
    }

    /// A stream whose first emission is the term for `position`.
    pub fn starting_at(params: &CipherParams, position: u64) -> Self {
        ShiftStream {
            power_ex: params.power_ex % params.modulus,
            reducer: params.reducer,
            position,
            next_term: shift_term_at(params, position),
        }
    }

    /// Absolute position of the next term.
    pub fn position(&self) -> u64 {
        self.position
    }

    #[inline]
    pub fn next_term(&mut self) -> u64 {
        let term = self.next_term;
        self.next_term = if self.position == 0 {
            self.power_ex
        } else {
            self.reducer.reduce(term * self.power_ex)
        };
        self.position += 1;
        term
    }
}

impl Iterator for ShiftStream {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        Some(self.next_term())
    }
}

/// Free-function form of [`ShiftStream::new`].
pub fn shift_stream(params: &CipherParams) -> ShiftStream {
    ShiftStream::new(params)
}
