//! SD-REE: a Caesar-style byte cipher whose shift grows with position.
//!
//! A pass-key is reduced to two small integers, `code` and `power_ex`.
//! Byte `i` of the message is shifted by `code + power_ex^i mod P` (with
//! no exponent term at position 0), where `P` is a prime chosen from the
//! two integers. Repeated plaintext bytes therefore encrypt to different
//! ciphertext bytes.
//!
//! This is a classical, educational cipher. It offers no protection
//! against a competent attacker.
//!
//! ```
//! use sdree::{Key, encrypt_with_key, decrypt_with_key};
//!
//! let key = Key::try_from("hello world").unwrap();
//! let ct = encrypt_with_key(&key, b"aaaa").unwrap();
//! assert_eq!(ct, [0x6b, 0x73, 0xab, 0x6b]);
//! assert_eq!(decrypt_with_key(&key, &ct).unwrap(), b"aaaa");
//! ```

pub mod analysis;
pub mod cipher;
pub mod error;
pub mod keyderive;
pub mod numtheory;

pub use analysis::{analyze, render_report, AnalysisReport, ByteHistogram, ReportFormat};
pub use cipher::{
    decrypt, decrypt_with_key, encrypt, encrypt_with_key, params_for_key, StreamCipher,
};
pub use error::{Error, Result};
pub use keyderive::{derive_key, Key, KeyDerivationTrace};
pub use numtheory::{nth_prime, shift_term_at, CipherParams, ShiftStream};
