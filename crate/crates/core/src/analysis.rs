//! Growth tables: how big `P` gets as the seed lengthens, and how the gap
//! ratio tracks `t·P + q_1 - 1` as the shift is repeated.
//!
//! Both tables are exact. CSV output has a fixed header and LF line endings;
//! rationals are written as separate numerator and denominator columns.

use std::io::Write;

use num_traits::Zero;

use crate::construction::{
    check_threshold, construct, difference_product, e_power_upper_bound, sylvester_seed,
    SeedSequence,
};
use crate::error::{Error, Result};
use crate::numtheory::Rational;
use crate::Natural;

/// Largest seed length accepted by [`p_growth_table`].
pub const MAX_GROWTH_N: usize = 16;

pub const GROWTH_HEADER: [&str; 5] = ["n", "q1", "P_bits", "superfactorial_bits", "e_n_bits"];
pub const GAP_HEADER: [&str; 6] = [
    "t",
    "gap_ratio_num",
    "gap_ratio_den",
    "predicted",
    "relative_error_num",
    "relative_error_den",
];

/// Highest set bit position plus one; `bit_length(0) = 0`, `bit_length(1) = 1`.
pub fn bit_length(x: &Natural) -> u64 {
    x.bits()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    pub q1: Natural,
    pub p_bits: u64,
    pub superfactorial_bits: u64,
    /// Bit length of `⌊E^n⌋` with `E` the rational over-approximation of `e`.
    pub e_n_bits: u64,
}

/// One row per `n` in `n_min..=n_max`, each from the Sylvester-style seed
/// starting at `q1`.
pub fn p_growth_table(
    q1: impl Into<Natural>,
    n_min: usize,
    n_max: usize,
) -> Result<Vec<GrowthRow>> {
    let q1 = q1.into();
    if !(3 <= n_min && n_min <= n_max && n_max <= MAX_GROWTH_N) {
        return Err(Error::RangeViolation(format!(
            "need 3 <= n_min <= n_max <= {MAX_GROWTH_N}, got {n_min}..{n_max}"
        )));
    }
    (n_min..=n_max)
        .map(|n| {
            let seed = sylvester_seed(q1.clone(), n)?;
            let p = difference_product(&seed);
            let sf = crate::construction::superfactorial_bound(n)?;
            let e_n = e_power_upper_bound(n as u32).floor();
            Ok(GrowthRow {
                n,
                q1: q1.clone(),
                p_bits: bit_length(&p),
                superfactorial_bits: bit_length(&sf),
                e_n_bits: e_n.bits(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapRow {
    pub t: Natural,
    pub gap_ratio: Rational,
    /// `t·P + q_1 - 1`
    pub predicted: Natural,
    /// `|gap_ratio - predicted| / predicted`
    pub relative_error: Rational,
}

pub fn gap_table(seed: &SeedSequence, k: usize, t_values: &[Natural]) -> Result<Vec<GapRow>> {
    check_threshold(k, seed.len())?;
    t_values
        .iter()
        .map(|t| {
            let moduli = construct(seed, t.clone())?;
            let b = crate::construction::bounds(&moduli, k)?;
            let predicted = moduli.shift() + seed.first() - 1u32;
            debug_assert!(!predicted.is_zero());
            let pred = Rational::from_natural(&predicted);
            let relative_error = (&b.gap_ratio - &pred).abs() / pred;
            Ok(GapRow {
                t: t.clone(),
                gap_ratio: b.gap_ratio,
                predicted,
                relative_error,
            })
        })
        .collect()
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Csv(e.to_string())
}

pub fn write_growth_csv<W: Write>(rows: &[GrowthRow], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(GROWTH_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.q1.to_string(),
            r.p_bits.to_string(),
            r.superfactorial_bits.to_string(),
            r.e_n_bits.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

pub fn write_gap_csv<W: Write>(rows: &[GapRow], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(GAP_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.t.to_string(),
            r.gap_ratio.numerator().to_string(),
            r.gap_ratio.denominator().to_string(),
            r.predicted.to_string(),
            r.relative_error.numerator().to_string(),
            r.relative_error.denominator().to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}
