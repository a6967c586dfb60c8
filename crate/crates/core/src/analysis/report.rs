use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    check_strang_fix, effective_order, fit_decay, measure_convergence, predict_order, snap_decay, test_reproduction,
    Decay, GridExperiment, LadderRow, OrderTag, ReproductionGrid, SF_LATTICE, SF_MAX_M,
};
use crate::error::{Error, Result};
use crate::schemes::{SchemeId, SchemeParams};

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub max_m: usize,
    pub lattice: usize,
    pub decay_range: (f64, f64),
    pub decay_samples: usize,
    pub reproduction_window: usize,
    pub reproduction_grid: ReproductionGrid,
    pub experiment: GridExperiment,
    pub convergence: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            max_m: SF_MAX_M,
            lattice: SF_LATTICE,
            decay_range: (20.0, 200.0),
            decay_samples: 1801,
            reproduction_window: 120,
            reproduction_grid: ReproductionGrid::default(),
            experiment: GridExperiment::sine(),
            convergence: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproductionCheck {
    pub degree: usize,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeReport {
    pub scheme: SchemeId,
    pub params: SchemeParams,
    pub sf_degree: i32,
    pub reproduction_degree: i32,
    pub reproduction: Vec<ReproductionCheck>,
    pub decay: Option<Decay>,
    /// Fitted exponent of `|psi|`; absent for compact support.
    pub decay_exponent: Option<f64>,
    pub decay_half_width: Option<f64>,
    /// Degree used in the order prediction, at most `sf_degree`.
    pub effective_degree: Option<u32>,
    /// Decay gap; absent when unbounded.
    pub ell: Option<f64>,
    pub predicted_order: Option<OrderTag>,
    pub empirical_order: Option<f64>,
    pub empirical_half_width: Option<f64>,
    pub ladder: Vec<LadderRow>,
    pub flags: Vec<String>,
}

fn reproduction_tolerance(decay: Option<&Decay>, degree: usize, window: usize) -> f64 {
    match decay {
        Some(Decay::Algebraic(f)) => {
            let rate = snap_decay(-f.exponent);
            let gap = rate - degree as f64 - 1.0;
            let tail = 2.0 * f.constant * (window as f64).powf(-gap) / gap;
            (10.0 * tail).max(1e-8)
        }
        _ => 1e-10,
    }
}

/// Full certification of one scheme.
pub fn certify(params: &SchemeParams, opts: &CertifyOptions) -> Result<SchemeReport> {
    let q = params.build()?;
    let mut flags = Vec::new();
    let sf_degree = check_strang_fix(&q, opts.max_m, opts.lattice);

    let decay = match fit_decay(&q, opts.decay_range.0, opts.decay_range.1, opts.decay_samples) {
        Ok(d) => Some(d),
        Err(e @ Error::BelowNoiseFloor(_)) => {
            flags.push(e.to_string());
            None
        }
        Err(e) => return Err(e),
    };
    let rate = decay.as_ref().and_then(|d| d.rate());
    let (decay_exponent, decay_half_width) = match &decay {
        Some(Decay::Algebraic(f)) => (Some(f.exponent), Some(f.half_width)),
        _ => (None, None),
    };

    let mut reproduction = Vec::new();
    let mut reproduction_degree = -1;
    if decay.is_some() {
        for degree in 0..=sf_degree.max(0) as usize {
            let tolerance = reproduction_tolerance(decay.as_ref(), degree, opts.reproduction_window);
            match test_reproduction(&q, degree, opts.reproduction_window, opts.reproduction_grid, rate.map(snap_decay)) {
                Ok(residual) => {
                    reproduction.push(ReproductionCheck { degree, residual, tolerance });
                    if residual > tolerance {
                        break;
                    }
                    reproduction_degree = degree as i32;
                }
                Err(e @ Error::SummabilityViolation { .. }) => {
                    flags.push(e.to_string());
                    break;
                }
                Err(e) => return Err(e),
            }
        }
    }

    let eff = if decay.is_some() { effective_order(sf_degree, rate, 1) } else { None };
    let predicted_order = match eff {
        Some((m, ell)) => Some(predict_order(m, ell, 1)?),
        None => None,
    };
    if let Some((m, _)) = eff {
        if (m as i32) < sf_degree {
            flags.push(format!("decay too slow for degree {sf_degree}; order predicted with degree {m}"));
        }
    }

    let (mut empirical_order, mut empirical_half_width, mut ladder) = (None, None, Vec::new());
    if opts.convergence {
        match measure_convergence(&q, &opts.experiment) {
            Ok(r) => {
                empirical_order = r.slope;
                empirical_half_width = r.slope.map(|_| r.half_width);
                if r.exact {
                    flags.push(format!("exact on {}", opts.experiment.name));
                }
                ladder = r.ladder;
            }
            Err(e @ Error::WindowTooSmall(_)) => flags.push(e.to_string()),
            Err(e) => return Err(e),
        }
    }

    Ok(SchemeReport {
        scheme: params.id,
        params: params.clone(),
        sf_degree,
        reproduction_degree,
        reproduction,
        decay,
        decay_exponent,
        decay_half_width,
        effective_degree: eff.map(|e| e.0),
        ell: eff.map(|e| e.1).filter(|l| l.is_finite()),
        predicted_order,
        empirical_order,
        empirical_half_width,
        ladder,
        flags,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableId {
    Tps,
    Mq,
    Fourier,
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tps" | "1" => Ok(TableId::Tps),
            "mq" | "2" => Ok(TableId::Mq),
            "fourier" | "3" => Ok(TableId::Fourier),
            _ => Err(Error::Config(format!("unknown table '{s}'"))),
        }
    }
}

struct ReferenceRow {
    scheme: SchemeId,
    label: &'static str,
    lambdas: &'static str,
    reproduction: &'static str,
    decay: &'static str,
    order: &'static str,
}

const fn row(
    scheme: SchemeId,
    label: &'static str,
    lambdas: &'static str,
    reproduction: &'static str,
    decay: &'static str,
    order: &'static str,
) -> ReferenceRow {
    ReferenceRow { scheme, label, lambdas, reproduction, decay, order }
}

const TPS_ROWS: [ReferenceRow; 3] = [
    row(SchemeId::TpsCardinal, "Cardinal", "Infinite", "P2", "-4", "h^3 log(1/h)"),
    row(SchemeId::TpsInfinite, "(2-2cos)^(3/2)", "Infinite", "P1", "-4", "h^2"),
    row(SchemeId::TpsIntermediate, "P |sin|", "Infinite", "P2", "-2", "h log(1/h)"),
];
const MQ_ROWS: [ReferenceRow; 4] = [
    row(SchemeId::GmqBasic, "(r^2+c^2)^(3/2)", "Finite", "P1", "-5", "h^2"),
    row(SchemeId::GmqImproved, "(r^2+c^2)^(3/2)", "Finite*", "P3", "-5", "h^4 log(1/h)"),
    row(SchemeId::BsplineBasic, "Cubic B-spline", "Finite", "P1", "compact", "h^2"),
    row(SchemeId::BsplineImproved, "Cubic B-spline", "Finite*", "P3", "compact", "h^4"),
];
const FOURIER_ROWS: [ReferenceRow; 1] =
    [row(SchemeId::FourierProfile, "exp(p) |sin/xi|^3", "Infinite", "P2", "-4", "h^3 log(1/h)")];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub scheme: SchemeId,
    pub label: String,
    pub lambdas: String,
    pub reproduction: String,
    pub decay: String,
    pub order: String,
    pub measured_reproduction: String,
    pub measured_decay: String,
    pub measured_order: String,
    pub measured_slope: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub id: TableId,
    pub title: String,
    pub rows: Vec<TableRow>,
}

const HEADER: [&str; 10] = [
    "scheme",
    "lambdas",
    "reproduction",
    "decay",
    "order",
    "measured reproduction",
    "measured decay",
    "predicted order",
    "measured slope",
    "note",
];

impl Table {
    fn cells(r: &TableRow) -> [String; 10] {
        [
            r.label.clone(),
            r.lambdas.clone(),
            r.reproduction.clone(),
            r.decay.clone(),
            r.order.clone(),
            r.measured_reproduction.clone(),
            r.measured_decay.clone(),
            r.measured_order.clone(),
            r.measured_slope.clone(),
            r.note.clone(),
        ]
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("### {}\n\n| {} |\n|{}\n", self.title, HEADER.join(" | "), "---|".repeat(HEADER.len()));
        for r in &self.rows {
            let cells: Vec<String> = Self::cells(r).iter().map(|c| c.replace('|', "\\|")).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        let mut out = format!("table,{}\n", HEADER.map(quote).join(","));
        for r in &self.rows {
            let cells: Vec<String> = Self::cells(r).iter().map(|c| quote(c)).collect();
            let _ = writeln!(out, "{},{}", self.title_key(), cells.join(","));
        }
        out
    }

    fn title_key(&self) -> &'static str {
        match self.id {
            TableId::Tps => "tps",
            TableId::Mq => "mq",
            TableId::Fourier => "fourier",
        }
    }
}

fn measured_row(p: &ReferenceRow, opts: &CertifyOptions) -> TableRow {
    let mut row = TableRow {
        scheme: p.scheme,
        label: p.label.into(),
        lambdas: p.lambdas.into(),
        reproduction: p.reproduction.into(),
        decay: p.decay.into(),
        order: p.order.into(),
        measured_reproduction: String::new(),
        measured_decay: String::new(),
        measured_order: String::new(),
        measured_slope: String::new(),
        note: String::new(),
    };
    match certify(&SchemeParams::new(p.scheme), opts) {
        Ok(r) => {
            row.measured_reproduction = format!("P{}", r.sf_degree);
            row.measured_decay = match &r.decay {
                Some(Decay::Algebraic(f)) => format!("{:.2} +- {:.2}", f.exponent, f.half_width),
                Some(Decay::CompactSupport { .. }) => "compact".into(),
                None => "n/a".into(),
            };
            row.measured_order = r.predicted_order.map(|o| o.to_string()).unwrap_or_else(|| "n/a".into());
            row.measured_slope = r.empirical_order.map(|s| format!("{s:.2}")).unwrap_or_else(|| "n/a".into());
            row.note = r.flags.join("; ");
        }
        Err(e) => row.note = format!("failed: {e}"),
    }
    row
}

/// Tables of reference values beside measured ones; an empty filter is an error.
pub fn tables(only: Option<&[TableId]>, opts: &CertifyOptions) -> Result<Vec<Table>> {
    let ids: Vec<TableId> = match only {
        Some([]) => return Err(Error::Config("empty table filter".into())),
        Some(ids) => ids.to_vec(),
        None => vec![TableId::Tps, TableId::Mq, TableId::Fourier],
    };
    Ok(ids
        .into_iter()
        .map(|id| {
            let (title, rows): (&str, &[ReferenceRow]) = match id {
                TableId::Tps => ("Thin-plate spline r^2 log r", &TPS_ROWS),
                TableId::Mq => ("Multiquadric and cubic B-spline", &MQ_ROWS),
                TableId::Fourier => ("Fourier-domain construction", &FOURIER_ROWS),
            };
            Table { id, title: title.into(), rows: rows.iter().map(|p| measured_row(p, opts)).collect() }
        })
        .collect())
}
