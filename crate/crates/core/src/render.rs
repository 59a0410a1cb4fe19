//! Byte-stable rendering of computation results.
//!
//! Machine records are one per line with exactly three tab-separated fields:
//! record type, comma-joined integers (a component index first where the
//! command produces several series, then the exponent vector), and the value
//! in lowest terms with the sign on the numerator (`num/den`, or a bare
//! integer when the denominator is 1). Ray and component indices are 0-based.
//! `VOLUME` records carry `-` in the middle field. `RESIDUAL` records carry
//! the tested component then the operator degree, and value `0` on a pass or
//! the lowest-degree surviving coefficient on a failure. `LOGQ` records list
//! the series part of each component; the leading `log y_a` term (always
//! coefficient 1) is implicit.
//!
//! Everything iterates in sorted order, so output is identical across runs.

use std::fmt::Write as _;

use num::One;

use crate::gkz::GkzReport;
use crate::series::{Coeff, LogSeries, MultiSeries};

/// `num/den` in lowest terms, bare integer when the denominator is 1.
pub fn rational_string(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn index_field(index: Option<usize>, expo: &[u32]) -> String {
    let mut parts: Vec<String> = Vec::with_capacity(expo.len() + 1);
    if let Some(i) = index {
        parts.push(i.to_string());
    }
    parts.extend(expo.iter().map(|e| e.to_string()));
    parts.join(",")
}

/// Machine records of one series, in total-degree-then-lex order.
pub fn series_records(kind: &str, index: Option<usize>, s: &MultiSeries) -> String {
    let mut out = String::new();
    for (expo, c) in s.terms_by_degree() {
        let _ = writeln!(
            out,
            "{kind}\t{}\t{}",
            index_field(index, &expo),
            rational_string(&c)
        );
    }
    out
}

/// Machine record of a volume.
pub fn volume_record(volume: u64) -> String {
    format!("VOLUME\t-\t{volume}\n")
}

/// Machine records of a GKZ report, one per (component, degree) pair.
pub fn residual_records(report: &GkzReport) -> String {
    let mut out = String::new();
    for entry in &report.entries {
        let mut field: Vec<String> = vec![entry.component.to_string()];
        field.extend(entry.degree.0.iter().map(|d| d.to_string()));
        let value = if entry.passed() {
            "0".to_string()
        } else {
            first_surviving_coefficient(&entry.residual)
        };
        let _ = writeln!(out, "RESIDUAL\t{}\t{value}", field.join(","));
    }
    out
}

fn first_surviving_coefficient(residual: &LogSeries) -> String {
    let mut best: Option<(u32, Vec<u32>, Coeff)> = None;
    for (_, series) in residual.iter() {
        for (expo, c) in series.terms_by_degree() {
            let deg = expo.iter().sum();
            let key = (deg, expo.clone(), c.clone());
            if best.as_ref().is_none_or(|b| (key.0, &key.1) < (b.0, &b.1)) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, _, c)| rational_string(&c))
        .unwrap_or_else(|| "0".to_string())
}

/// Human-readable exponent tuple: `(1,0)`.
pub fn exponent_tuple(expo: &[u32]) -> String {
    let inner: Vec<String> = expo.iter().map(|e| e.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Two-column table of series terms for interactive output.
pub fn series_table(s: &MultiSeries) -> String {
    let mut out = String::new();
    if s.is_zero() {
        out.push_str("  (zero series)\n");
        return out;
    }
    for (expo, c) in s.terms_by_degree() {
        let _ = writeln!(out, "  {:<12} {}", exponent_tuple(&expo), rational_string(&c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, rat_int};

    #[test]
    fn rational_formatting() {
        assert_eq!(rational_string(&rat_int(5)), "5");
        assert_eq!(rational_string(&rat_int(-5)), "-5");
        assert_eq!(rational_string(&rat(10, -4)), "-5/2");
        assert_eq!(rational_string(&rat(0, 3)), "0");
    }

    #[test]
    fn records_are_degree_sorted_and_tab_separated() {
        let s = MultiSeries::from_terms(
            2,
            3,
            [
                (vec![2, 0], rat_int(7)),
                (vec![0, 1], rat(-1, 2)),
                (vec![1, 0], rat_int(3)),
            ],
        );
        assert_eq!(
            series_records("GEN", None, &s),
            "GEN\t0,1\t-1/2\nGEN\t1,0\t3\nGEN\t2,0\t7\n"
        );
        assert_eq!(
            series_records("XI", Some(4), &s),
            "XI\t4,0,1\t-1/2\nXI\t4,1,0\t3\nXI\t4,2,0\t7\n"
        );
    }

    #[test]
    fn volume_record_shape() {
        assert_eq!(volume_record(3), "VOLUME\t-\t3\n");
    }
}
