//! Streaming wrappers for the `raw`, `hex` and `base64` ciphertext encodings.

use std::io::{self, Read, Write};

use base64::engine::general_purpose::{GeneralPurpose, STANDARD};
use base64::read::DecoderReader;
use base64::write::EncoderWriter;
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Raw,
    Hex,
    Base64,
}

/// Marker error: the input is not valid in the selected encoding.
#[derive(Debug)]
pub struct Malformed(pub String);

impl std::fmt::Display for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Malformed {}

pub fn malformed(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, Malformed(msg.into()))
}

/// True when `err` came from bad encoded input rather than the OS.
pub fn is_malformed(err: &io::Error) -> bool {
    err.kind() == io::ErrorKind::InvalidData
        && err
            .get_ref()
            .is_some_and(|e| e.is::<Malformed>() || e.is::<base64::DecodeError>())
}

/// Writer applying an output encoding. Call [`Encoder::finish`] so base64
/// padding errors are not lost on drop.
pub enum Encoder<W: Write> {
    Raw(W),
    Hex(W),
    Base64(Box<EncoderWriter<'static, GeneralPurpose, W>>),
}

impl<W: Write> Encoder<W> {
    pub fn new(format: Format, out: W) -> Self {
        match format {
            Format::Raw => Encoder::Raw(out),
            Format::Hex => Encoder::Hex(out),
            Format::Base64 => Encoder::Base64(Box::new(EncoderWriter::new(out, &STANDARD))),
        }
    }

    pub fn finish(self) -> io::Result<W> {
        let mut out = match self {
            Encoder::Raw(w) | Encoder::Hex(w) => w,
            Encoder::Base64(mut w) => w.finish()?,
        };
        out.flush()?;
        Ok(out)
    }
}

impl<W: Write> Write for Encoder<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Encoder::Raw(w) => w.write(buf),
            Encoder::Hex(w) => {
                w.write_all(hex::encode(buf).as_bytes())?;
                Ok(buf.len())
            }
            Encoder::Base64(w) => w.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Encoder::Raw(w) | Encoder::Hex(w) => w.flush(),
            Encoder::Base64(w) => w.flush(),
        }
    }
}

pub fn decoder<'a, R: Read + 'a>(format: Format, input: R) -> Box<dyn Read + 'a> {
    match format {
        Format::Raw => Box::new(input),
        Format::Hex => Box::new(HexReader::new(input)),
        Format::Base64 => Box::new(DecoderReader::new(SkipWhitespace(input), &STANDARD)),
    }
}

/// Hex decoder accepting either case and ignoring ASCII whitespace.
struct HexReader<R> {
    inner: R,
    pending: Option<u8>,
    scratch: Vec<u8>,
}

impl<R: Read> HexReader<R> {
    fn new(inner: R) -> Self {
        HexReader {
            inner,
            pending: None,
            scratch: vec![0; 16 * 1024],
        }
    }
}

fn nibble(c: u8) -> Option<u8> {
    match c {
        b'0'..=b'9' => Some(c - b'0'),
        b'a'..=b'f' => Some(c - b'a' + 10),
        b'A'..=b'F' => Some(c - b'A' + 10),
        _ => None,
    }
}

impl<R: Read> Read for HexReader<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        if buf.is_empty() {
            return Ok(0);
        }
        let want = (buf.len() * 2).min(self.scratch.len());
        loop {
            let n = self.inner.read(&mut self.scratch[..want])?;
            if n == 0 {
                return match self.pending {
                    Some(_) => Err(malformed("hex input has an odd number of digits")),
                    None => Ok(0),
                };
            }
            let mut written = 0;
            for &c in &self.scratch[..n] {
                if c.is_ascii_whitespace() {
                    continue;
                }
                let v = nibble(c)
                    .ok_or_else(|| malformed(format!("invalid hex digit {:?}", c as char)))?;
                match self.pending.take() {
                    Some(hi) => {
                        buf[written] = hi << 4 | v;
                        written += 1;
                    }
                    None => self.pending = Some(v),
                }
            }
            if written > 0 {
                return Ok(written);
            }
        }
    }
}

struct SkipWhitespace<R>(R);

impl<R: Read> Read for SkipWhitespace<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        loop {
            let n = self.0.read(buf)?;
            if n == 0 {
                return Ok(0);
            }
            let mut kept = 0;
            for i in 0..n {
                if !buf[i].is_ascii_whitespace() {
                    buf[kept] = buf[i];
                    kept += 1;
                }
            }
            if kept > 0 {
                return Ok(kept);
            }
        }
    }
}
