//! Byte-wise encryption and decryption.
//!
//! Ciphertext byte `i` is `(plain[i] + code + t_i) mod 256`, where `t_i` is
//! the shift term at the global position `i`. Decryption subtracts the same
//! amount. The transform is length-preserving and each position is
//! independent of every other, so messages can be processed in chunks or
//! in parallel ranges as long as each range starts its stream at the right
//! offset.

use crate::error::Result;
use crate::keyderive::{derive_key, Key};
use crate::numtheory::{CipherParams, ShiftStream};

/// Stateful cipher over a byte stream. Feeding a message through in any
/// chunking gives the same result as a single call.
#[derive(Debug, Clone)]
pub struct StreamCipher {
    code: u8,
    shifts: ShiftStream,
}

impl StreamCipher {
    pub fn new(params: &CipherParams) -> Self {
        Self::starting_at(params, 0)
    }

    /// A cipher whose next byte is treated as message position `position`.
    pub fn starting_at(params: &CipherParams, position: u64) -> Self {
        StreamCipher {
            code: (params.code() % 256) as u8,
            shifts: ShiftStream::starting_at(params, position),
        }
    }

    pub fn position(&self) -> u64 {
        self.shifts.position()
    }

    pub fn encrypt_in_place(&mut self, buf: &mut [u8]) {
        for b in buf {
            let shift = self.code.wrapping_add(self.shifts.next_term() as u8);
            *b = b.wrapping_add(shift);
        }
    }

    pub fn decrypt_in_place(&mut self, buf: &mut [u8]) {
        for b in buf {
            let shift = self.code.wrapping_add(self.shifts.next_term() as u8);
            *b = b.wrapping_sub(shift);
        }
    }
}

pub fn encrypt(params: &CipherParams, plaintext: &[u8]) -> Vec<u8> {
    let mut out = plaintext.to_vec();
    StreamCipher::new(params).encrypt_in_place(&mut out);
    out
}

pub fn decrypt(params: &CipherParams, ciphertext: &[u8]) -> Vec<u8> {
    let mut out = ciphertext.to_vec();
    StreamCipher::new(params).decrypt_in_place(&mut out);
    out
}

/// Encrypts `buf` in place as the slice of a larger message starting at
/// byte `offset`.
pub fn encrypt_at(params: &CipherParams, offset: u64, buf: &mut [u8]) {
    StreamCipher::starting_at(params, offset).encrypt_in_place(buf);
}

pub fn decrypt_at(params: &CipherParams, offset: u64, buf: &mut [u8]) {
    StreamCipher::starting_at(params, offset).decrypt_in_place(buf);
}

/// Derives the parameters for `key`.
pub fn params_for_key(key: &Key) -> Result<CipherParams> {
    let trace = derive_key(key)?;
    CipherParams::new(trace.code, trace.power_ex)
}

pub fn encrypt_with_key(key: &Key, plaintext: &[u8]) -> Result<Vec<u8>> {
    Ok(encrypt(&params_for_key(key)?, plaintext))
}

pub fn decrypt_with_key(key: &Key, ciphertext: &[u8]) -> Result<Vec<u8>> {
    Ok(decrypt(&params_for_key(key)?, ciphertext))
}
