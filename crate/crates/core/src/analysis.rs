//! Byte-frequency statistics used to check whether repeated plaintext
//! bytes survive encryption as visible repetition.
//!
//! The index of coincidence is the raw probability that two distinct
//! positions hold the same byte (1.0 for constant input, about 1/256 for
//! uniform noise); it is not multiplied by the alphabet size.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

/// Printed in place of a metric whose input is too short to define it.
pub const UNDEFINED: &str = "undefined";

const CHART_WIDTH: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ByteHistogram {
    counts: [u64; 256],
    total: u64,
}

impl Default for ByteHistogram {
    fn default() -> Self {
        ByteHistogram {
            counts: [0; 256],
            total: 0,
        }
    }
}

impl ByteHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `data` to the running counts.
    pub fn update(&mut self, data: &[u8]) {
        for &b in data {
            self.counts[b as usize] += 1;
        }
        self.total += data.len() as u64;
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn count(&self, byte: u8) -> u64 {
        self.counts[byte as usize]
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

pub fn histogram(data: &[u8]) -> ByteHistogram {
    let mut h = ByteHistogram::new();
    h.update(data);
    h
}

pub fn index_of_coincidence(h: &ByteHistogram) -> Result<f64> {
    if h.total < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: h.total,
        });
    }
    let same: u128 = h
        .counts
        .iter()
        .map(|&c| u128::from(c) * u128::from(c.saturating_sub(1)))
        .sum();
    let pairs = u128::from(h.total) * u128::from(h.total - 1);
    Ok(same as f64 / pairs as f64)
}

/// Pearson chi-square statistic against the uniform distribution over
/// all 256 byte values.
pub fn chi_square_uniform(h: &ByteHistogram) -> Result<f64> {
    if h.total == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    // Σ (c - N/256)² / (N/256) = (256 Σ c² - N²) / N, exact in integers.
    let n = u128::from(h.total);
    let sum_sq: u128 = h
        .counts
        .iter()
        .map(|&c| u128::from(c) * u128::from(c))
        .sum();
    Ok((256 * sum_sq - n * n) as f64 / n as f64)
}

pub fn max_run_length(data: &[u8]) -> u64 {
    let mut t = RunTracker::default();
    t.update(data);
    t.max_run()
}

/// Longest-run tracker for input that arrives in chunks.
#[derive(Debug, Clone, Default)]
pub struct RunTracker {
    prev: Option<u8>,
    run: u64,
    best: u64,
}

impl RunTracker {
    pub fn update(&mut self, data: &[u8]) {
        for &b in data {
            if self.prev == Some(b) {
                self.run += 1;
            } else {
                self.run = 1;
                self.prev = Some(b);
            }
            self.best = self.best.max(self.run);
        }
    }

    pub fn max_run(&self) -> u64 {
        self.best
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub histogram: ByteHistogram,
    /// `None` when fewer than two bytes were analyzed.
    pub index_of_coincidence: Option<f64>,
    /// `None` for empty input.
    pub chi_square_uniform: Option<f64>,
    pub max_run_length: u64,
    pub distinct_bytes: usize,
}

impl AnalysisReport {
    /// Assembles a report from statistics gathered elsewhere, e.g. while
    /// streaming a file.
    pub fn from_parts(histogram: ByteHistogram, max_run_length: u64) -> Self {
        AnalysisReport {
            index_of_coincidence: index_of_coincidence(&histogram).ok(),
            chi_square_uniform: chi_square_uniform(&histogram).ok(),
            distinct_bytes: histogram.distinct(),
            max_run_length,
            histogram,
        }
    }
}

pub fn analyze(data: &[u8]) -> AnalysisReport {
    AnalysisReport::from_parts(histogram(data), max_run_length(data))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    AsciiChart,
}

struct Metric(Option<f64>);

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => f.write_str(UNDEFINED),
        }
    }
}

pub fn render_report(report: &AnalysisReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => render_csv(report),
        ReportFormat::AsciiChart => render_chart(report),
    }
}

fn render_csv(r: &AnalysisReport) -> String {
    let mut out = String::with_capacity(256 * 8 + 128);
    out.push_str("byte,count\n");
    for (b, c) in r.histogram.counts.iter().enumerate() {
        let _ = writeln!(out, "{b},{c}");
    }
    let _ = writeln!(out, "total,{}", r.histogram.total);
    let _ = writeln!(out, "distinct,{}", r.distinct_bytes);
    let _ = writeln!(out, "max_run,{}", r.max_run_length);
    let _ = writeln!(out, "ic,{}", Metric(r.index_of_coincidence));
    let _ = writeln!(out, "chi2,{}", Metric(r.chi_square_uniform));
    out
}

/// Bar length for `count` when the tallest bin is `max`; never zero for a
/// nonzero count.
pub fn bar_length(count: u64, max: u64) -> usize {
    if count == 0 || max == 0 {
        return 0;
    }
    let scaled = (u128::from(count) * CHART_WIDTH as u128 + u128::from(max) / 2) / u128::from(max);
    (scaled as usize).max(1)
}

fn render_chart(r: &AnalysisReport) -> String {
    let h = &r.histogram;
    let max = h.counts.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# bytes={} distinct={} max_run={} ic(raw, unnormalized)={} chi2(uniform)={}",
        h.total,
        r.distinct_bytes,
        r.max_run_length,
        Metric(r.index_of_coincidence),
        Metric(r.chi_square_uniform),
    );
    for (b, &c) in h.counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let glyph = if (0x20..0x7f).contains(&b) {
            b as u8 as char
        } else {
            '.'
        };
        let _ = writeln!(
            out,
            "{b:3} {glyph} |{:<width$}| {c}",
            "#".repeat(bar_length(c, max)),
            width = CHART_WIDTH
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn histogram_examples() {
        let h = histogram(b"aab");
        assert_eq!((h.count(b'a'), h.count(b'b'), h.total()), (2, 1, 3));
        let h = histogram(b"");
        assert!(h.counts().iter().all(|&c| c == 0));
        assert_eq!(h.total(), 0);
        let h = histogram(&[b'a'; 512]);
        assert_eq!((h.count(b'a'), h.distinct()), (512, 1));
    }

    #[test]
    fn ic_examples() {
        assert!((index_of_coincidence(&histogram(b"aab")).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(index_of_coincidence(&histogram(&[7; 2])).unwrap(), 1.0);
        assert_eq!(index_of_coincidence(&histogram(&[b'a'; 512])).unwrap(), 1.0);
        let all: Vec<u8> = (0..=255).collect();
        assert_eq!(index_of_coincidence(&histogram(&all)).unwrap(), 0.0);
        assert_eq!(
            index_of_coincidence(&histogram(b"x")),
            Err(Error::InsufficientData { needed: 2, got: 1 })
        );
    }

    #[test]
    fn chi_square_examples() {
        let all: Vec<u8> = (0..=255).collect();
        assert_eq!(chi_square_uniform(&histogram(&all)).unwrap(), 0.0);
        assert_eq!(chi_square_uniform(&histogram(&[3; 256])).unwrap(), 65280.0);
        assert!(chi_square_uniform(&histogram(b"")).is_err());
    }

    #[test]
    fn chi_square_matches_textbook_formula() {
        let data = b"the quick brown fox jumps over the lazy dog";
        let h = histogram(data);
        let e = data.len() as f64 / 256.0;
        let direct: f64 = h.counts().iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
        assert!((chi_square_uniform(&h).unwrap() - direct).abs() < 1e-9);
    }

    #[test]
    fn run_examples() {
        assert_eq!(max_run_length(b"aaabba"), 3);
        assert_eq!(max_run_length(b""), 0);
        assert_eq!(max_run_length(&[b'a'; 512]), 512);
    }

    #[test]
    fn analyze_examples() {
        let r = analyze(&[b'a'; 512]);
        assert_eq!(r.index_of_coincidence, Some(1.0));
        assert_eq!((r.max_run_length, r.distinct_bytes), (512, 1));

        let r = analyze(b"");
        assert_eq!((r.histogram.total(), r.max_run_length), (0, 0));
        assert_eq!(r.index_of_coincidence, None);
        assert_eq!(r.chi_square_uniform, None);
    }

    #[test]
    fn csv_layout() {
        let csv = render_report(&analyze(b"aab"), ReportFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "byte,count");
        assert_eq!(lines.len(), 1 + 256 + 5);
        assert_eq!(lines[1 + 97], "97,2");
        assert_eq!(lines[1 + 98], "98,1");
        // chi2 = (256 * (2² + 1²) - 3²) / 3
        assert_eq!(
            &lines[257..],
            [
                "total,3".to_string(),
                "distinct,2".to_string(),
                "max_run,2".to_string(),
                "ic,0.3333333333333333".to_string(),
                format!("chi2,{}", 1271.0 / 3.0),
            ]
        );
    }

    #[test]
    fn csv_of_empty_input() {
        let csv = render_report(&analyze(b""), ReportFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[1..257]
            .iter()
            .enumerate()
            .all(|(b, l)| *l == format!("{b},0")));
        assert_eq!(
            &lines[257..],
            [
                "total,0",
                "distinct,0",
                "max_run,0",
                "ic,undefined",
                "chi2,undefined"
            ]
        );
    }

    #[test]
    fn csv_constant_input_footer() {
        let csv = render_report(&analyze(&[b'a'; 512]), ReportFormat::Csv);
        assert!(csv.contains("\nmax_run,512\n"));
        assert!(csv.contains("\nic,1\n"));
    }

    #[test]
    fn chart_shows_nonzero_bins_only() {
        let chart = render_report(&analyze(b"aaab"), ReportFormat::AsciiChart);
        let lines: Vec<&str> = chart.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("# bytes=4"));
        assert!(lines[1].starts_with(" 97 a |"));
        assert!(lines[1].ends_with("| 3"));
        assert_eq!(lines[1].matches('#').count(), 60);
        assert_eq!(lines[2].matches('#').count(), 20);
    }

    fn permuted(data: &[u8], perm: &[u8]) -> Vec<u8> {
        data.iter().map(|&b| perm[b as usize]).collect()
    }

    proptest! {
        #[test]
        fn counts_sum_to_length(data in proptest::collection::vec(any::<u8>(), 0..2000)) {
            let r = analyze(&data);
            prop_assert_eq!(r.histogram.counts().iter().sum::<u64>(), data.len() as u64);
            prop_assert_eq!(r.histogram.total(), data.len() as u64);
            prop_assert!(r.max_run_length <= r.histogram.total());
            prop_assert_eq!(analyze(&data), r);
        }

        #[test]
        fn chi_square_ignores_label_permutation(
            data in proptest::collection::vec(any::<u8>(), 1..2000),
            perm in Just((0..=255u8).collect::<Vec<u8>>()).prop_shuffle(),
        ) {
            let a = chi_square_uniform(&histogram(&data)).unwrap();
            let b = chi_square_uniform(&histogram(&permuted(&data, &perm))).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn ic_of_byte_permutation_is_zero(
            perm in Just((0..=255u8).collect::<Vec<u8>>()).prop_shuffle(),
        ) {
            prop_assert_eq!(index_of_coincidence(&histogram(&perm)).unwrap(), 0.0);
            prop_assert_eq!(chi_square_uniform(&histogram(&perm)).unwrap(), 0.0);
        }

        #[test]
        fn concatenation_never_shortens_runs(
            a in proptest::collection::vec(0u8..4, 0..300),
            b in proptest::collection::vec(0u8..4, 0..300),
        ) {
            let joined = [a.as_slice(), b.as_slice()].concat();
            prop_assert!(max_run_length(&joined) >= max_run_length(&a).max(max_run_length(&b)));
        }

        #[test]
        fn run_tracker_matches_one_shot(
            data in proptest::collection::vec(0u8..3, 0..600),
            cut in any::<prop::sample::Index>(),
        ) {
            let c = if data.is_empty() { 0 } else { cut.index(data.len()) };
            let mut t = RunTracker::default();
            t.update(&data[..c]);
            t.update(&data[c..]);
            prop_assert_eq!(t.max_run(), max_run_length(&data));
        }

        #[test]
        fn bar_length_monotone(a in 0u64..10_000, b in 0u64..10_000, max in 1u64..10_000) {
            let (lo, hi) = (a.min(b).min(max), a.max(b).min(max));
            prop_assert!(bar_length(lo, max) <= bar_length(hi, max));
            prop_assert!(bar_length(hi, max) <= 60);
        }
    }
}
