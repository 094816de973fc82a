//! Grid evaluation of the measure, figure-preset datasets, and CSV output.
//!
//! Grids expand row-major (coupling outer, field middle, temperature inner)
//! and evaluate in parallel into an order-preserving buffer, so the output
//! is bit-identical for any worker count. The figure presets bundle the
//! parameter ranges used by the crate's example datasets: measure-vs-T
//! curves per field regime, measure-vs-B profiles at fixed temperatures,
//! and one (B, T) surface.

use rayon::prelude::*;
use serde::Serialize;
use std::io;

use crate::dimer::{DimerParams, FieldSpec};
use crate::entanglement::{measure, Regime};
use crate::numfmt::{format_sig, SIG_DIGITS};
use crate::thermal::ThermalPoint;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SweepError {
    #[error("{0} values must be finite")]
    NonFinite(&'static str),
    #[error("{0} must contain at least one value")]
    EmptyAxis(&'static str),
    #[error("range count must be at least 1")]
    ZeroCount,
    #[error("range start {0} exceeds stop {1}")]
    Backwards(f64, f64),
    #[error("a single-point range needs start == stop, got {0} and {1}")]
    SinglePointMismatch(f64, f64),
    #[error("temperatures must be positive, got {0}")]
    NonPositiveTemperature(f64),
    #[error("unknown figure preset {0:?} (expected fig2..fig6)")]
    UnknownFigure(String),
    #[error("preset {0} has no {1} series to override")]
    BadOverride(FigureId, &'static str),
}

/// Inclusive endpoint-pinned linear grid.
///
/// Endpoints are returned exactly; interior points are the convex
/// combination `(start (n-1-k) + stop k)/(n-1)`, which is exactly
/// antisymmetric when `stop == -start`, so symmetric field grids straddle
/// zero without rounding skew.
pub(crate) fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n)
            .map(|k| {
                if k == 0 {
                    start
                } else if k == n - 1 {
                    stop
                } else {
                    (start * ((n - 1 - k) as f64) + stop * (k as f64)) / ((n - 1) as f64)
                }
            })
            .collect(),
    }
}

/// `start:stop:count` axis with inclusive endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range1D {
    start: f64,
    stop: f64,
    count: usize,
}

impl Range1D {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self, SweepError> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(SweepError::NonFinite("range endpoints"));
        }
        if count == 0 {
            return Err(SweepError::ZeroCount);
        }
        if start > stop {
            return Err(SweepError::Backwards(start, stop));
        }
        if count == 1 && start != stop {
            return Err(SweepError::SinglePointMismatch(start, stop));
        }
        Ok(Self { start, stop, count })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }
}

/// A full sweep domain: explicit coupling values crossed with field and
/// temperature ranges.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    j_values: Vec<f64>,
    b_range: Range1D,
    t_range: Range1D,
}

impl GridSpec {
    pub fn new(j_values: Vec<f64>, b_range: Range1D, t_range: Range1D) -> Result<Self, SweepError> {
        if j_values.is_empty() {
            return Err(SweepError::EmptyAxis("coupling"));
        }
        if !j_values.iter().all(|j| j.is_finite()) {
            return Err(SweepError::NonFinite("coupling"));
        }
        if t_range.start() <= 0.0 {
            return Err(SweepError::NonPositiveTemperature(t_range.start()));
        }
        Ok(Self {
            j_values,
            b_range,
            t_range,
        })
    }

    pub fn j_values(&self) -> &[f64] {
        &self.j_values
    }

    pub fn b_range(&self) -> Range1D {
        self.b_range
    }

    pub fn t_range(&self) -> Range1D {
        self.t_range
    }

    pub fn row_count(&self) -> usize {
        self.j_values.len() * self.b_range.count() * self.t_range.count()
    }
}

/// One evaluated grid point, in CSV column order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub j_kelvin: f64,
    pub b_kelvin: f64,
    pub t_kelvin: f64,
    pub entanglement: f64,
    pub regime: Regime,
    pub t_c_kelvin: Option<f64>,
}

/// Evaluates every grid point, row-major, in parallel.
///
/// The rows land in a pre-ordered buffer indexed by grid position, so two
/// runs (or runs under different worker counts) produce identical values.
pub fn evaluate_grid(spec: &GridSpec) -> Vec<SweepRow> {
    let b_values = spec.b_range.values();
    let t_values = spec.t_range.values();
    let mut points = Vec::with_capacity(spec.row_count());
    for &j in &spec.j_values {
        for &b in &b_values {
            for &t in &t_values {
                points.push((j, b, t));
            }
        }
    }
    points
        .par_iter()
        .map(|&(j, b, t)| {
            let p = DimerParams::new(j).expect("spec validated");
            let f = FieldSpec::new(b).expect("spec validated");
            let tp = ThermalPoint::new(t).expect("spec validated");
            let r = measure(&p, &f, &tp);
            SweepRow {
                j_kelvin: j,
                b_kelvin: b,
                t_kelvin: t,
                entanglement: r.value,
                regime: r.regime,
                t_c_kelvin: r.t_c_kelvin,
            }
        })
        .collect()
}

/// Writes rows as CSV: fixed header, 12 significant digits, LF endings,
/// trailing newline, empty decoherence column for ferromagnetic rows.
pub fn write_csv(rows: &[SweepRow], w: &mut impl io::Write) -> io::Result<()> {
    w.write_all(b"j_kelvin,b_kelvin,t_kelvin,entanglement,regime,t_c_kelvin\n")?;
    for row in rows {
        let t_c = match row.t_c_kelvin {
            Some(t_c) => format_sig(t_c, SIG_DIGITS),
            None => String::new(),
        };
        writeln!(
            w,
            "{},{},{},{},{},{}",
            format_sig(row.j_kelvin, SIG_DIGITS),
            format_sig(row.b_kelvin, SIG_DIGITS),
            format_sig(row.t_kelvin, SIG_DIGITS),
            format_sig(row.entanglement, SIG_DIGITS),
            row.regime.label(),
            t_c,
        )?;
    }
    Ok(())
}

/// The five bundled dataset presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }
}

impl std::fmt::Display for FigureId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FigureId {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        match s.to_ascii_lowercase().as_str() {
            "fig2" => Ok(FigureId::Fig2),
            "fig3" => Ok(FigureId::Fig3),
            "fig4" => Ok(FigureId::Fig4),
            "fig5" => Ok(FigureId::Fig5),
            "fig6" => Ok(FigureId::Fig6),
            other => Err(SweepError::UnknownFigure(other.to_string())),
        }
    }
}

/// One dataset of a preset: a grid plus the file it belongs in.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSeries {
    pub label: String,
    pub file_name: String,
    pub spec: GridSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: FigureId,
    pub series: Vec<FigureSeries>,
}

const PRESET_J: f64 = -10.0;

fn t_axis() -> Range1D {
    Range1D::new(0.01, 12.0, 600).expect("static range")
}

fn series(id: FigureId, label: String, spec: GridSpec) -> FigureSeries {
    FigureSeries {
        file_name: format!("{id}_{label}.csv"),
        label,
        spec,
    }
}

fn curve_in_t(id: FigureId, j: f64, b: f64, t: Range1D) -> Result<FigureSeries, SweepError> {
    let label = format!(
        "J{}_B{}",
        format_sig(j, SIG_DIGITS),
        format_sig(b, SIG_DIGITS)
    );
    let spec = GridSpec::new(vec![j], Range1D::new(b, b, 1)?, t)?;
    Ok(series(id, label, spec))
}

fn curve_in_b(id: FigureId, j: f64, t: f64, b: Range1D) -> Result<FigureSeries, SweepError> {
    let label = format!(
        "J{}_T{}",
        format_sig(j, SIG_DIGITS),
        format_sig(t, SIG_DIGITS)
    );
    let spec = GridSpec::new(vec![j], b, Range1D::new(t, t, 1)?)?;
    Ok(series(id, label, spec))
}

/// The preset with its default series.
pub fn figure_preset(id: FigureId) -> FigurePreset {
    figure_preset_with(id, None, None).expect("default presets are valid")
}

/// The preset with the series axis replaced: field series for the
/// measure-vs-T figures (fig2, fig4), temperature series for the
/// measure-vs-B figure (fig5). Presets without that degree of freedom
/// reject the override.
pub fn figure_preset_with(
    id: FigureId,
    b_series: Option<&[f64]>,
    t_series: Option<&[f64]>,
) -> Result<FigurePreset, SweepError> {
    if b_series.is_some() && !matches!(id, FigureId::Fig2 | FigureId::Fig4) {
        return Err(SweepError::BadOverride(id, "field"));
    }
    if t_series.is_some() && id != FigureId::Fig5 {
        return Err(SweepError::BadOverride(id, "temperature"));
    }
    if let Some(values) = b_series {
        if values.is_empty() {
            return Err(SweepError::EmptyAxis("field series"));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(SweepError::NonFinite("field series"));
        }
    }
    if let Some(values) = t_series {
        if values.is_empty() {
            return Err(SweepError::EmptyAxis("temperature series"));
        }
    }

    let series = match id {
        FigureId::Fig2 => {
            let fields: &[f64] = b_series.unwrap_or(&[0.0, 2.5, 5.0, 7.5]);
            fields
                .iter()
                .map(|&b| curve_in_t(id, PRESET_J, b, t_axis()))
                .collect::<Result<Vec<_>, _>>()?
        }
        FigureId::Fig3 => {
            let mut out = Vec::new();
            for &j in &[-5.0, -10.0] {
                for &b in &[0.0, -j] {
                    out.push(curve_in_t(id, j, b, t_axis())?);
                }
            }
            out
        }
        FigureId::Fig4 => {
            let fields: &[f64] = b_series.unwrap_or(&[12.5, 15.0, 20.0, 30.0]);
            fields
                .iter()
                .map(|&b| curve_in_t(id, PRESET_J, b, t_axis()))
                .collect::<Result<Vec<_>, _>>()?
        }
        FigureId::Fig5 => {
            let temps: &[f64] = t_series.unwrap_or(&[1.0, 3.0, 5.0, 7.0]);
            let b = Range1D::new(-40.0, 40.0, 801)?;
            temps
                .iter()
                .map(|&t| curve_in_b(id, PRESET_J, t, b))
                .collect::<Result<Vec<_>, _>>()?
        }
        FigureId::Fig6 => {
            let spec = GridSpec::new(
                vec![PRESET_J],
                Range1D::new(-40.0, 40.0, 161)?,
                Range1D::new(0.01, 12.0, 241)?,
            )?;
            vec![series(id, "J-10_surface".to_string(), spec)]
        }
    };
    Ok(FigurePreset { id, series })
}

/// Scans the measure's field profile for the curvature sign change.
///
/// Second central differences of `B -> E` on `(0, 5|J|)` with step
/// `|J|/1000`; returns the midpoint of the first step where the sign
/// flips between consecutive nonzero differences. A diagnostic, not a
/// calibrated quantity: the location drifts with temperature and only
/// approaches `|J|` as `T -> 0`. `None` when the profile has no curvature
/// change (ferromagnetic coupling, or at and above the decoherence
/// temperature where the profile is identically zero).
pub fn find_inflection_b(params: &DimerParams, point: &ThermalPoint) -> Option<f64> {
    let h = params.j_kelvin().abs() / 1000.0;
    if h == 0.0 {
        return None;
    }
    let steps = 5000_usize;
    let e: Vec<f64> = (0..=steps)
        .map(|k| {
            let f = FieldSpec::new(k as f64 * h).expect("finite field");
            measure(params, &f, point).value
        })
        .collect();
    let mut prev: Option<(usize, f64)> = None;
    for k in 1..steps {
        let d2 = e[k + 1] - 2.0 * e[k] + e[k - 1];
        if d2 == 0.0 {
            continue;
        }
        if let Some((k_prev, d2_prev)) = prev {
            if d2_prev.signum() != d2.signum() {
                let b_prev = k_prev as f64 * h;
                let b_here = k as f64 * h;
                return Some(0.5 * (b_prev + b_here));
            }
        }
        prev = Some((k, d2));
    }
    None
}
