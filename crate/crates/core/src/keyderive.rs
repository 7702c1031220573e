//! Turns a pass-key into the two integers that drive the cipher.
//!
//! The key bytes are folded into a position-weighted checksum
//! `csum = Σ key[i] · len · 2^i`, whose decimal digit sum is the
//! `pseudo_code`. From that:
//!
//! * `code = pseudo_code mod 16`, or `pseudo_code` itself when the residue is 0;
//! * `power_ex = digit_sum(pseudo_code) mod code`, replaced by `code` when the
//!   residue is 0 or 1.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Longest key accepted, in bytes.
pub const MAX_KEY_LEN: usize = 4096;

/// A validated pass-key: 1..=4096 raw bytes, no text encoding assumed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Key(Vec<u8>);

impl Key {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::EmptyKey);
        }
        if bytes.len() > MAX_KEY_LEN {
            return Err(Error::KeyTooLong {
                len: bytes.len(),
                max: MAX_KEY_LEN,
            });
        }
        Ok(Key(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

// Keys are secrets; keep them out of debug output.
impl std::fmt::Debug for Key {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Key({} bytes)", self.0.len())
    }
}

impl TryFrom<&[u8]> for Key {
    type Error = Error;

    fn try_from(bytes: &[u8]) -> Result<Self> {
        Key::new(bytes)
    }
}

impl TryFrom<&str> for Key {
    type Error = Error;

    fn try_from(s: &str) -> Result<Self> {
        Key::new(s.as_bytes())
    }
}

/// Every intermediate produced while deriving `code` and `power_ex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyDerivationTrace {
    pub csum: BigUint,
    pub pseudo_code: u64,
    pub temporary_power_ex: u64,
    pub code: u64,
    pub power_ex: u64,
}

/// `Σ key[i] · len · 2^i` in exact arithmetic.
pub fn weighted_checksum(key: &Key) -> BigUint {
    let len = key.len() as u64;
    let mut csum = BigUint::zero();
    for (i, &b) in key.as_bytes().iter().enumerate() {
        csum += BigUint::from(u64::from(b) * len) << i;
    }
    csum
}

/// Sum of the base-10 digits of `value`, single pass.
pub fn digit_sum(value: &BigUint) -> u64 {
    if value.is_zero() {
        return 0;
    }
    value.to_radix_le(10).iter().map(|&d| u64::from(d)).sum()
}

fn digit_sum_u64(mut value: u64) -> u64 {
    let mut sum = 0;
    while value != 0 {
        sum += value % 10;
        value /= 10;
    }
    sum
}

pub fn derive_code(pseudo_code: u64) -> Result<u64> {
    match pseudo_code {
        0 => Err(Error::DegenerateKey),
        p if p % 16 == 0 => Ok(p),
        p => Ok(p % 16),
    }
}

/// `digit_sum(pseudo_code) mod code`, with residues 0 and 1 mapped to `code`.
///
/// `code` must be at least 1.
pub fn derive_power_ex(pseudo_code: u64, code: u64) -> u64 {
    assert!(code >= 1, "code must be positive");
    match digit_sum_u64(pseudo_code) % code {
        0 | 1 => code,
        r => r,
    }
}

pub fn derive_key(key: &Key) -> Result<KeyDerivationTrace> {
    let csum = weighted_checksum(key);
    let pseudo_code = digit_sum(&csum);
    let code = derive_code(pseudo_code)?;
    let temporary_power_ex = digit_sum_u64(pseudo_code);
    let power_ex = derive_power_ex(pseudo_code, code);
    Ok(KeyDerivationTrace {
        csum,
        pseudo_code,
        temporary_power_ex,
        code,
        power_ex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn key(s: &str) -> Key {
        Key::try_from(s).unwrap()
    }

    #[test]
    fn checksum_examples() {
        assert_eq!(
            weighted_checksum(&key("hello world")),
            BigUint::from(2_344_166u32)
        );
        assert_eq!(weighted_checksum(&key("a")), BigUint::from(97u32));
        assert_eq!(weighted_checksum(&key("ab")), BigUint::from(586u32));
    }

    #[test]
    fn key_length_bounds() {
        assert_eq!(Key::new(Vec::new()), Err(Error::EmptyKey));
        assert!(Key::new(vec![0xff; MAX_KEY_LEN]).is_ok());
        assert_eq!(
            Key::new(vec![1; MAX_KEY_LEN + 1]),
            Err(Error::KeyTooLong {
                len: 4097,
                max: 4096
            })
        );
    }

    #[test]
    fn key_debug_hides_bytes() {
        assert_eq!(format!("{:?}", key("secret")), "Key(6 bytes)");
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum(&BigUint::from(2_344_166u32)), 26);
        assert_eq!(digit_sum(&BigUint::zero()), 0);
        assert_eq!(digit_sum(&BigUint::from(999u32)), 27);
    }

    #[test]
    fn code_examples() {
        assert_eq!(derive_code(26), Ok(10));
        assert_eq!(derive_code(16), Ok(16));
        assert_eq!(derive_code(19), Ok(3));
        assert_eq!(derive_code(0), Err(Error::DegenerateKey));
    }

    #[test]
    fn power_ex_examples() {
        assert_eq!(derive_power_ex(26, 10), 8);
        assert_eq!(derive_power_ex(19, 3), 3);
        assert_eq!(derive_power_ex(16, 16), 7);
    }

    #[test]
    fn hello_world_trace() {
        // Published worked example quotes power_ex = 4 here; running the
        // derivation rules themselves gives 8, and the rules win.
        let t = derive_key(&key("hello world")).unwrap();
        assert_eq!(t.csum, BigUint::from(2_344_166u32));
        assert_eq!(t.pseudo_code, 26);
        assert_eq!(t.temporary_power_ex, 8);
        assert_eq!(t.code, 10);
        assert_eq!(t.power_ex, 8);
    }

    #[test]
    fn single_byte_trace_uses_code_fallback() {
        let t = derive_key(&key("a")).unwrap();
        assert_eq!(
            (t.pseudo_code, t.temporary_power_ex, t.code, t.power_ex),
            (16, 7, 16, 7)
        );
    }

    #[test]
    fn permutation_changes_checksum() {
        assert_ne!(weighted_checksum(&key("ab")), weighted_checksum(&key("ba")));
    }

    #[test]
    fn longest_key_derives() {
        let t = derive_key(&Key::new(vec![0xff; MAX_KEY_LEN]).unwrap()).unwrap();
        assert!(t.power_ex >= 1 && t.power_ex <= t.code);
    }

    /// Literal transcription of the published step list: accumulate
    /// `p[i] * strlen * 2^i`, then peel decimal digits off with mod/div.
    fn steps_oracle(pwd: &[u8]) -> (u64, u64, u64) {
        let len = pwd.len() as u64;
        let mut csum: u64 = 0;
        let mut i = 0;
        while i < pwd.len() {
            let pp = 1u64 << i;
            csum += u64::from(pwd[i]) * len * pp;
            i += 1;
        }
        let mut pseudo_code = 0;
        while csum != 0 {
            pseudo_code += csum % 10;
            csum /= 10;
        }
        let mut code = pseudo_code % 16;
        if code == 0 {
            code = pseudo_code;
        }
        let mut t = 0;
        let mut p = pseudo_code;
        while p != 0 {
            t += p % 10;
            p /= 10;
        }
        let mut power_ex = t % code;
        if power_ex == 0 || power_ex == 1 {
            power_ex = code;
        }
        (pseudo_code, code, power_ex)
    }

    #[test]
    fn matches_step_transcription_on_short_keys() {
        let alphabet = [97u8, 98, 99];
        let mut keys: Vec<Vec<u8>> = Vec::new();
        for len in 1..=3u32 {
            for idx in 0..3usize.pow(len) {
                let mut k = Vec::new();
                let mut x = idx;
                for _ in 0..len {
                    k.push(alphabet[x % 3]);
                    x /= 3;
                }
                keys.push(k);
            }
        }
        assert_eq!(keys.len(), 39);
        for k in keys {
            let t = derive_key(&Key::new(k.clone()).unwrap()).unwrap();
            assert_eq!(
                (t.pseudo_code, t.code, t.power_ex),
                steps_oracle(&k),
                "key {k:?}"
            );
        }
    }

    proptest! {
        #[test]
        fn derived_params_in_range(k in proptest::collection::vec(any::<u8>(), 1..256)) {
            let key = Key::new(k).unwrap();
            let t = derive_key(&key).unwrap();
            prop_assert!(t.code >= 1);
            prop_assert!(t.power_ex >= 1 && t.power_ex <= t.code);
            prop_assert_eq!(t.pseudo_code, digit_sum(&weighted_checksum(&key)));
            prop_assert_eq!(derive_key(&key).unwrap(), t);
        }

        #[test]
        fn digit_sum_casts_out_nines(v in proptest::collection::vec(any::<u32>(), 0..8)) {
            let n = BigUint::new(v);
            let nine = BigUint::from(9u32);
            prop_assert_eq!(BigUint::from(digit_sum(&n)) % &nine, n % nine);
        }

        #[test]
        fn last_byte_flip_changes_checksum(
            k in proptest::collection::vec(any::<u8>(), 1..128),
            delta in 1u8..=255,
        ) {
            let mut flipped = k.clone();
            let last = flipped.len() - 1;
            flipped[last] = flipped[last].wrapping_add(delta);
            prop_assert_ne!(
                weighted_checksum(&Key::new(k).unwrap()),
                weighted_checksum(&Key::new(flipped).unwrap())
            );
        }
    }
}
