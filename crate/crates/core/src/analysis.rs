//! Convergence studies: `-ln E` series, least-squares fits and the table of
//! error differences across characters.
//!
//! Grid points are evaluated in parallel and collected by index, so output
//! is identical to a sequential run.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

use crate::characters::{enumerate_characters, keller_one, DirichletCharacter};
use crate::error::{domain, Error, Result};
use crate::mpnum::BigFloat;
use crate::recursion::{estimate_with, precision_for, EstimateResult, EstimateStatus};

/// Largest `s` accepted by [`neg_log_series`].
pub const MAX_SERIES_S: u32 = 2000;

/// Default fit window; below 20 the early terms dominate and the points
/// bend away from the line.
pub const DEFAULT_FIT_WINDOW: RangeInclusive<u32> = 20..=150;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPoint {
    pub s: u32,
    /// `-ln E(n, s, chi)` at the working precision of `(n, s)`.
    pub y: BigFloat,
}

impl SeriesPoint {
    pub fn y_f64(&self) -> f64 {
        self.y.to_f64()
    }
}

/// `-ln E` over a range of `s` for one `(n, chi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub n: usize,
    pub modulus: u64,
    pub label: u64,
    pub points: Vec<SeriesPoint>,
    /// Values of `s` where the error vanished at working precision.
    pub excluded: Vec<u32>,
}

impl Series {
    pub fn get(&self, s: u32) -> Option<&SeriesPoint> {
        self.points.iter().find(|p| p.s == s)
    }
}

fn estimate_at(
    n: usize,
    s: u32,
    chi: &DirichletCharacter,
    prec_override: Option<u32>,
) -> Result<EstimateResult> {
    estimate_with(n, s, chi, &precision_for(n, s, prec_override)?)
}

pub fn neg_log_series(
    n: usize,
    s_range: RangeInclusive<u32>,
    chi: &DirichletCharacter,
) -> Result<Series> {
    neg_log_series_with(n, s_range, chi, None)
}

/// [`neg_log_series`] with every point evaluated at `prec_override` bits
/// when given (rejected if below the required precision of any point).
pub fn neg_log_series_with(
    n: usize,
    s_range: RangeInclusive<u32>,
    chi: &DirichletCharacter,
    prec_override: Option<u32>,
) -> Result<Series> {
    let (lo, hi) = (*s_range.start(), *s_range.end());
    if lo == 0 || hi > MAX_SERIES_S || lo > hi {
        return domain(format!(
            "s range {lo}..={hi} must lie within 1..={MAX_SERIES_S}"
        ));
    }
    let evaluated: Vec<Result<(u32, Option<BigFloat>)>> = s_range
        .into_par_iter()
        .map(|s| {
            let ctx = precision_for(n, s, prec_override)?;
            let est = estimate_with(n, s, chi, &ctx)?;
            if est.error.is_zero() {
                return Ok((s, None));
            }
            Ok((s, Some(est.error.ln(&ctx)?.neg())))
        })
        .collect();

    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for item in evaluated {
        match item? {
            (s, Some(y)) => points.push(SeriesPoint { s, y }),
            (s, None) => excluded.push(s),
        }
    }
    if points.is_empty() {
        return Err(Error::EmptySeries(format!(
            "every error vanished for n={n}, {}",
            chi.name()
        )));
    }
    Ok(Series {
        n,
        modulus: chi.modulus(),
        label: chi.label(),
        points,
        excluded,
    })
}

/// Ordinary least-squares line `y = a x + b` with Pearson correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub a: f64,
    pub b: f64,
    /// Zero when the ordinates are all equal.
    pub r: f64,
    pub n_points: usize,
}

pub fn linear_fit(points: &[(f64, f64)]) -> Result<LineFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "{} point(s); need at least 2",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all abscissae are equal".into()));
    }
    let a = sxy / sxx;
    let b = my - a * mx;
    let r = if syy == 0.0 {
        0.0
    } else {
        (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)
    };
    Ok(LineFit {
        a,
        b,
        r,
        n_points: points.len(),
    })
}

/// A fit of `-ln E(n, s)` against `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub r: f64,
    pub s_min: u32,
    pub s_max: u32,
    pub n_points: usize,
    pub n_excluded: usize,
}

/// Fits the points of `series` whose `s` falls in `window` (all points when
/// `None`).
pub fn fit_series(series: &Series, window: Option<RangeInclusive<u32>>) -> Result<FitResult> {
    let keep = |s: u32| window.as_ref().is_none_or(|w| w.contains(&s));
    let pts: Vec<(f64, f64)> = series
        .points
        .iter()
        .filter(|p| keep(p.s))
        .map(|p| (p.s as f64, p.y_f64()))
        .collect();
    let fit = linear_fit(&pts)?;
    let used: Vec<u32> = series.points.iter().map(|p| p.s).filter(|&s| keep(s)).collect();
    Ok(FitResult {
        n: series.n,
        a: fit.a,
        b: fit.b,
        r: fit.r,
        s_min: *used.iter().min().expect("fit has points"),
        s_max: *used.iter().max().expect("fit has points"),
        n_points: fit.n_points,
        n_excluded: series.excluded.iter().filter(|&&s| keep(s)).count(),
    })
}

/// One fit of `-ln E_n(s)` per `n`, constant-one character, ascending `n`.
pub fn slope_series(
    n_range: RangeInclusive<usize>,
    s_range: RangeInclusive<u32>,
) -> Result<Vec<(usize, FitResult)>> {
    slope_series_with(n_range, s_range, None)
}

pub fn slope_series_with(
    n_range: RangeInclusive<usize>,
    s_range: RangeInclusive<u32>,
    prec_override: Option<u32>,
) -> Result<Vec<(usize, FitResult)>> {
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo < 2 || hi > 30 || lo > hi {
        return domain(format!("n range {lo}..={hi} must lie within 2..=30"));
    }
    let one = keller_one();
    n_range
        .map(|n| {
            let series = neg_log_series_with(n, s_range.clone(), &one, prec_override)?;
            Ok((n, fit_series(&series, None)?))
        })
        .collect()
}

/// Which characters of a modulus enter a [`d_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModulusSelection {
    pub modulus: u64,
    /// Keep only characters with a non-real value.
    pub complex_only: bool,
}

impl ModulusSelection {
    pub fn all(modulus: u64) -> Self {
        ModulusSelection {
            modulus,
            complex_only: false,
        }
    }

    pub fn complex(modulus: u64) -> Self {
        ModulusSelection {
            modulus,
            complex_only: true,
        }
    }

    pub fn characters(&self) -> Result<Vec<DirichletCharacter>> {
        let group = enumerate_characters(self.modulus)?;
        Ok(group
            .iter()
            .filter(|c| !self.complex_only || !c.is_real())
            .cloned()
            .collect())
    }
}

impl FromStr for ModulusSelection {
    type Err = Error;

    /// `"8"` selects every character mod 8; `"9:complex"` only the non-real ones.
    fn from_str(s: &str) -> Result<Self> {
        let (m, rest) = match s.split_once(':') {
            Some((m, r)) => (m, Some(r)),
            None => (s, None),
        };
        let modulus = m
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Domain(format!("bad modulus `{m}`")))?;
        match rest.map(str::trim) {
            None => Ok(ModulusSelection::all(modulus)),
            Some("complex") => Ok(ModulusSelection::complex(modulus)),
            Some(other) => domain(format!("unknown character filter `{other}`")),
        }
    }
}

impl fmt::Display for ModulusSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complex_only {
            write!(f, "{}:complex", self.modulus)
        } else {
            write!(f, "{}", self.modulus)
        }
    }
}

/// Flags carried by a table cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CellStatus {
    pub principal: bool,
    pub target_zero: bool,
}

impl CellStatus {
    pub fn as_str(&self) -> &'static str {
        match (self.principal, self.target_zero) {
            (false, false) => "ok",
            (true, false) => "principal",
            (false, true) => "chi_target_zero",
            (true, true) => "principal+chi_target_zero",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DCell {
    pub n: usize,
    /// Signed `E(n, s, 1) - E(n, s, chi)`.
    pub value: BigFloat,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DRow {
    pub modulus: u64,
    pub label: u64,
    pub cells: Vec<DCell>,
}

impl DRow {
    pub fn cell(&self, n: usize) -> Option<&DCell> {
        self.cells.iter().find(|c| c.n == n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DTable {
    pub s: u32,
    pub n_list: Vec<usize>,
    pub rows: Vec<DRow>,
}

impl DTable {
    pub fn row(&self, modulus: u64, label: u64) -> Option<&DRow> {
        self.rows
            .iter()
            .find(|r| r.modulus == modulus && r.label == label)
    }
}

/// Error differences for every selected character and every `n`.
pub fn d_table(n_list: &[usize], s: u32, selections: &[ModulusSelection]) -> Result<DTable> {
    d_table_with(n_list, s, selections, None)
}

pub fn d_table_with(
    n_list: &[usize],
    s: u32,
    selections: &[ModulusSelection],
    prec_override: Option<u32>,
) -> Result<DTable> {
    if s < 2 {
        return domain("d_table needs s >= 2");
    }
    let mut chars = Vec::new();
    for sel in selections {
        chars.extend(sel.characters()?);
    }

    let one = keller_one();
    let base: Vec<BigFloat> = n_list
        .par_iter()
        .map(|&n| Ok(estimate_at(n, s, &one, prec_override)?.error))
        .collect::<Result<_>>()?;

    let grid: Vec<(usize, usize)> = (0..chars.len())
        .flat_map(|c| (0..n_list.len()).map(move |i| (c, i)))
        .collect();
    let cells: Vec<DCell> = grid
        .par_iter()
        .map(|&(c, i)| {
            let chi = &chars[c];
            let n = n_list[i];
            let est = estimate_at(n, s, chi, prec_override)?;
            Ok(DCell {
                n,
                value: base[i].sub_exact(&est.error),
                status: CellStatus {
                    principal: chi.modulus() > 1 && chi.is_principal(),
                    target_zero: est.status == EstimateStatus::TargetCharacterZero,
                },
            })
        })
        .collect::<Result<_>>()?;

    let mut cells = cells.into_iter();
    let rows = chars
        .iter()
        .map(|chi| DRow {
            modulus: chi.modulus(),
            label: chi.label(),
            cells: cells.by_ref().take(n_list.len()).collect(),
        })
        .collect();
    Ok(DTable {
        s,
        n_list: n_list.to_vec(),
        rows,
    })
}
