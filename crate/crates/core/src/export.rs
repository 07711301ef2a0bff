//! Flat row types for CSV and JSON output.
//!
//! Floating-point fields are pre-rendered decimal strings with
//! [`FLOAT_DIGITS`] significant digits, so both formats carry the same text.

use serde::{Deserialize, Serialize};

use crate::analysis::{DTable, FitResult, Series};
use crate::mpnum::BigFloat;
use crate::recursion::EstimateResult;

pub use crate::characters::{table_rows as char_table_rows, CharTableRow};

pub const FLOAT_DIGITS: usize = 17;

pub fn render_big(x: &BigFloat) -> String {
    x.to_sci_string(FLOAT_DIGITS)
}

pub fn render_f64(x: f64) -> String {
    format!("{:.*e}", FLOAT_DIGITS - 1, x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub n: usize,
    pub s: u32,
    pub modulus: u64,
    pub label: u64,
    pub target: u64,
    pub rounded: String,
    pub estimate: String,
    pub error: String,
    pub margin: String,
    pub residual_re: String,
    pub residual_im: String,
    pub prec_bits: u32,
    pub status: String,
}

impl From<&EstimateResult> for EstimateRow {
    fn from(e: &EstimateResult) -> Self {
        EstimateRow {
            n: e.n,
            s: e.s,
            modulus: e.modulus,
            label: e.label,
            target: e.target,
            rounded: e.rounded.to_string(),
            estimate: render_big(&e.estimate),
            error: render_big(&e.error),
            margin: render_big(&e.margin),
            residual_re: render_big(&e.residual.re),
            residual_im: render_big(&e.residual.im),
            prec_bits: e.prec_bits,
            status: e.status.as_str().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub n: usize,
    pub s: u32,
    pub modulus: u64,
    pub label: u64,
    pub neg_log_error: String,
}

pub fn series_rows(series: &Series) -> Vec<SeriesRow> {
    series
        .points
        .iter()
        .map(|p| SeriesRow {
            n: series.n,
            s: p.s,
            modulus: series.modulus,
            label: series.label,
            neg_log_error: render_big(&p.y),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitRow {
    pub n: usize,
    pub a: String,
    pub b: String,
    pub r: String,
    pub s_min: u32,
    pub s_max: u32,
    pub n_points: usize,
    pub n_excluded: usize,
}

impl From<&FitResult> for FitRow {
    fn from(f: &FitResult) -> Self {
        FitRow {
            n: f.n,
            a: render_f64(f.a),
            b: render_f64(f.b),
            r: render_f64(f.r),
            s_min: f.s_min,
            s_max: f.s_max,
            n_points: f.n_points,
            n_excluded: f.n_excluded,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DTableRow {
    pub modulus: u64,
    pub label: u64,
    pub n: usize,
    pub d_value: String,
    pub status: String,
}

pub fn dtable_rows(t: &DTable) -> Vec<DTableRow> {
    t.rows
        .iter()
        .flat_map(|row| {
            row.cells.iter().map(move |c| DTableRow {
                modulus: row.modulus,
                label: row.label,
                n: c.n,
                d_value: render_big(&c.value),
                status: c.status.as_str().to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::keller_one;
    use crate::recursion::estimate;

    #[test]
    fn estimate_row_reparses_through_csv() {
        let row = EstimateRow::from(&estimate(2, 50, &keller_one()).unwrap());
        let mut w = csv::Writer::from_writer(vec![]);
        w.serialize(&row).unwrap();
        let bytes = w.into_inner().unwrap();
        let mut r = csv::Reader::from_reader(bytes.as_slice());
        let back: EstimateRow = r.deserialize().next().unwrap().unwrap();
        assert_eq!(back, row);
        assert_eq!(back.rounded, "5");
        assert!(back.error.parse::<f64>().unwrap() < 1e-3);
    }

    #[test]
    fn f64_rendering_has_17_digits() {
        assert_eq!(render_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(render_f64(-1.0).parse::<f64>().unwrap(), -1.0);
    }
}
