//! CSV ingestion, JSON reports, and the spec strings used on the command
//! line (`gaussian:0,1`, `poisson:2`, ...).

use std::io::{Read, Write};

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::ensemble::{self, EnsembleSummary, IrregularComparison};
use crate::error::{Error, Result};
use crate::estimators::{self, FitResult};
use crate::inference;
use crate::series::{SampleSeries, EQUIDISTANT_TOL};
use crate::synth::{GridKind, GridSpec, NoiseFamily, NoiseSpec};
use crate::walk::{self, DataWalk};

pub const SCHEMA_VERSION: u32 = 1;

/// Reads a `x,y` CSV. Rows may come in any order; they are sorted by `x`.
pub fn read_series<R: Read>(reader: R) -> Result<SampleSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let header = rdr.headers().map_err(|e| csv_error(e, 1))?.clone();
    if header.len() != 2 || &header[0] != "x" || &header[1] != "y" {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header `x,y`, got `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut rows: Vec<(f64, f64, u64)> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(e, 0))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields, got {}", record.len()),
            });
        }
        let field = |i: usize| -> Result<f64> {
            let v: f64 = record[i].parse().map_err(|_| Error::Parse {
                line,
                message: format!("cannot parse `{}` as a number", &record[i]),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line,
                    message: format!("non-finite value `{}`", &record[i]),
                });
            }
            Ok(v)
        };
        rows.push((field(0)?, field(1)?, line));
    }
    if rows.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: rows.len(),
        });
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        let (first, second) = (w[0].2.min(w[1].2), w[0].2.max(w[1].2));
        return Err(Error::DuplicateX {
            x: w[0].0,
            first,
            second,
        });
    }
    let (xs, ys) = rows.iter().map(|r| (r.0, r.1)).unzip();
    SampleSeries::new(xs, ys)
}

fn csv_error(e: csv::Error, fallback_line: u64) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(fallback_line);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io.to_string()),
        other => Error::Parse {
            line,
            message: format!("{other:?}"),
        },
    }
}

pub fn write_series<W: Write>(mut out: W, series: &SampleSeries) -> Result<()> {
    writeln!(out, "x,y")?;
    for (x, y) in series.xs().iter().zip(series.ys()) {
        writeln!(out, "{x},{y}")?;
    }
    Ok(())
}

/// Writes `j,z` rows for `z_0..z_N`, plus a `reference` column when given.
pub fn write_walk<W: Write>(mut out: W, walk: &DataWalk, reference: Option<&[f64]>) -> Result<()> {
    match reference {
        Some(r) => {
            writeln!(out, "j,z,reference")?;
            for (j, z) in walk.positions().iter().enumerate() {
                let refz = if j == 0 { 0.0 } else { r[j - 1] };
                writeln!(out, "{j},{z},{refz}")?;
            }
        }
        None => {
            writeln!(out, "j,z")?;
            for (j, z) in walk.positions().iter().enumerate() {
                writeln!(out, "{j},{z}")?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportMethod {
    Dw,
    Lls,
    Both,
}

/// Everything `fit` reports about one series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub n: usize,
    pub method: ReportMethod,
    pub equidistant: bool,
    pub slope: f64,
    pub intercept: f64,
    pub area: f64,
    pub reference_area: f64,
    pub ssr: f64,
    pub sigma_noise: Option<f64>,
    pub sigma_area: Option<f64>,
    pub t_area: Option<f64>,
    pub t_ls: Option<f64>,
    pub perfect_fit: bool,
    pub zero_crossings_raw: usize,
    pub zero_crossings_residual: usize,
    pub slope_dw: Option<f64>,
    pub slope_lls: Option<f64>,
    /// `|dw - lls| / max(1, |lls|)`, only for `both`.
    pub slope_discrepancy: Option<f64>,
}

impl TrendReport {
    /// Significant when the fit is perfect or `|t_area| >= threshold`.
    pub fn is_significant(&self, threshold: f64) -> bool {
        self.perfect_fit || self.t_area.is_some_and(|t| t.abs() >= threshold)
    }
}

pub fn trend_report(series: &SampleSeries, method: ReportMethod) -> Result<TrendReport> {
    let n = series.len();
    let equidistant = series.is_equidistant(EQUIDISTANT_TOL);
    let walk = walk::build_walk(series)?;
    let area = walk::signed_area(&walk);

    let lls = match method {
        ReportMethod::Lls | ReportMethod::Both => Some(estimators::lls_slope_general(series)?),
        ReportMethod::Dw => None,
    };
    let dw = match method {
        ReportMethod::Dw => Some(estimators::fit_dw(series)?),
        ReportMethod::Both if equidistant => Some(estimators::fit_dw(series)?),
        _ => None,
    };
    let slope_dw = match (&dw, method) {
        (Some(f), _) => Some(f.slope),
        // approximate walk slope on an irregular grid
        (None, ReportMethod::Both) => ensemble::area_ratio_slope(series)?,
        _ => None,
    };
    let slope_lls = lls.as_ref().map(|f| f.slope);
    let slope_discrepancy = match (method, slope_dw, slope_lls) {
        (ReportMethod::Both, Some(d), Some(l)) => Some((d - l).abs() / l.abs().max(1.0)),
        _ => None,
    };
    let fit: FitResult = dw.or(lls).expect("one fit is always computed");

    let residual_walk = DataWalk::from_values(&fit.residuals)?;
    let (sigma_noise, sigma_area, t_area, t_ls, perfect_fit) = if n < 3 {
        (None, None, None, None, true)
    } else if equidistant {
        let sig = inference::t_statistics(series)?;
        (
            Some(sig.sigma_noise),
            Some(sig.sigma_area),
            sig.t_area,
            sig.t_ls,
            sig.perfect_fit,
        )
    } else {
        let s1 = inference::estimate_sigma(&fit.residuals, n - 1)?;
        let s2 = inference::estimate_sigma(&fit.residuals, n - 2)?;
        let sa = inference::sigma_area(n, s1);
        let mx = series.mean_x();
        let sxx: f64 = series.xs().iter().map(|x| (x - mx) * (x - mx)).sum();
        let scale = series.ys().iter().fold(0.0f64, |m, y| m.max(y.abs()));
        let perfect = (fit.ssr / n as f64).sqrt() <= inference::PERFECT_FIT_RTOL * scale;
        if perfect {
            (Some(s1), Some(sa), None, None, true)
        } else {
            (
                Some(s1),
                Some(sa),
                Some(area / sa),
                Some(fit.slope / (s2 / sxx.sqrt())),
                false,
            )
        }
    };

    Ok(TrendReport {
        n,
        method,
        equidistant,
        slope: fit.slope,
        intercept: fit.intercept,
        area,
        reference_area: walk::reference_area_f64(n)?,
        ssr: fit.ssr,
        sigma_noise,
        sigma_area,
        t_area,
        t_ls,
        perfect_fit,
        zero_crossings_raw: walk::count_interior_zeros(&walk),
        zero_crossings_residual: walk::count_interior_zeros(&residual_walk),
        slope_dw,
        slope_lls,
        slope_discrepancy,
    })
}

/// Versioned JSON wrapper around every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub report_type: String,
    pub payload: T,
}

pub trait Reportable: Serialize + DeserializeOwned {
    const REPORT_TYPE: &'static str;
}

impl Reportable for TrendReport {
    const REPORT_TYPE: &'static str = "trend";
}

impl Reportable for EnsembleSummary {
    const REPORT_TYPE: &'static str = "area_ensemble";
}

impl Reportable for IrregularComparison {
    const REPORT_TYPE: &'static str = "irregular_comparison";
}

pub fn to_json<T: Reportable>(payload: &T) -> Result<String> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        report_type: T::REPORT_TYPE.to_string(),
        payload,
    };
    serde_json::to_string_pretty(&env).map_err(|e| Error::Io(e.to_string()))
}

pub fn from_json<T: Reportable>(text: &str) -> Result<T> {
    let env: Envelope<T> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse {
            line: 1,
            message: format!("unsupported schema_version {}", env.schema_version),
        });
    }
    if env.report_type != T::REPORT_TYPE {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected report_type `{}`, got `{}`",
                T::REPORT_TYPE,
                env.report_type
            ),
        });
    }
    Ok(env.payload)
}

// --- spec strings ---------------------------------------------------------

/// Positions in diagnostics are 1-based character columns.
fn spec_err(position: usize, message: impl Into<String>) -> Error {
    Error::SpecString {
        position: position + 1,
        message: message.into(),
    }
}

/// Splits `name:a,b,...` into the name and `(offset, token)` parameters.
fn split_spec(s: &str) -> Result<(&str, Vec<(usize, &str)>)> {
    let (name, rest, offset) = match s.find(':') {
        Some(i) => (&s[..i], &s[i + 1..], i + 1),
        None => (s, "", s.len()),
    };
    if name.is_empty() {
        return Err(spec_err(0, "missing name before `:`"));
    }
    let mut params = Vec::new();
    if s.contains(':') {
        let mut pos = offset;
        for tok in rest.split(',') {
            params.push((pos, tok));
            pos += tok.len() + 1;
        }
    }
    Ok((name, params))
}

fn number(at: usize, tok: &str) -> Result<f64> {
    let v: f64 = tok
        .trim()
        .parse()
        .map_err(|_| spec_err(at, format!("`{tok}` is not a number")))?;
    if !v.is_finite() {
        return Err(spec_err(at, format!("`{tok}` is not finite")));
    }
    Ok(v)
}

fn arity(s: &str, name: &str, params: &[(usize, &str)], want: usize) -> Result<()> {
    if params.len() != want {
        let at = params.get(want).map(|p| p.0).unwrap_or(s.len());
        return Err(spec_err(
            at,
            format!("`{name}` takes {want} parameter(s), got {}", params.len()),
        ));
    }
    Ok(())
}

/// `gaussian:mean,variance`, `beta:alpha,beta`, `uniform:lo,hi` or
/// `discrete:v1@w1,v2@w2,...` (weights optional, default equal).
pub fn parse_noise(s: &str, seed: u64) -> Result<NoiseSpec> {
    let (name, params) = split_spec(s)?;
    let family = match name {
        "gaussian" | "beta" | "uniform" => {
            arity(s, name, &params, 2)?;
            let a = number(params[0].0, params[0].1)?;
            let b = number(params[1].0, params[1].1)?;
            match name {
                "gaussian" => NoiseFamily::Gaussian {
                    mean: a,
                    variance: b,
                },
                "beta" => NoiseFamily::Beta { alpha: a, beta: b },
                _ => NoiseFamily::Uniform { lo: a, hi: b },
            }
        }
        "discrete" => {
            if params.is_empty() {
                return Err(spec_err(s.len(), "`discrete` needs at least one value"));
            }
            let mut values = Vec::new();
            let mut weights = Vec::new();
            for &(at, tok) in &params {
                match tok.split_once('@') {
                    Some((v, w)) => {
                        values.push(number(at, v)?);
                        weights.push(number(at + v.len() + 1, w)?);
                    }
                    None => values.push(number(at, tok)?),
                }
            }
            if weights.is_empty() {
                weights = vec![1.0 / values.len() as f64; values.len()];
            } else if weights.len() != values.len() {
                return Err(spec_err(
                    params[0].0,
                    "give a weight for every value or for none",
                ));
            }
            NoiseFamily::Discrete { values, weights }
        }
        other => return Err(spec_err(0, format!("unknown noise family `{other}`"))),
    };
    family
        .validate()
        .map_err(|e| spec_err(name.len(), e.to_string()))?;
    Ok(NoiseSpec { family, seed })
}

/// `unit`, `equidistant:x0,span` or `poisson:rate`.
pub fn parse_grid(s: &str, n: usize, seed: u64) -> Result<GridSpec> {
    let (name, params) = split_spec(s)?;
    let kind = match name {
        "unit" => {
            arity(s, name, &params, 0)?;
            GridKind::EquidistantUnit
        }
        "equidistant" => {
            arity(s, name, &params, 2)?;
            GridKind::Equidistant {
                x0: number(params[0].0, params[0].1)?,
                span: number(params[1].0, params[1].1)?,
            }
        }
        "poisson" => {
            arity(s, name, &params, 1)?;
            GridKind::Poisson {
                rate: number(params[0].0, params[0].1)?,
                seed,
            }
        }
        other => return Err(spec_err(0, format!("unknown grid kind `{other}`"))),
    };
    GridSpec::new(kind, n).map_err(|e| spec_err(name.len(), e.to_string()))
}
