//! Sweeps over `n`: Mertens values, spectral norms and the normalised
//! exponent `w = ln ||M|| / ln n - 1/2`, with CSV output.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::builders::build_m_direct;
use crate::classes::{isqrt, ClassStructure};
use crate::error::{Error, Result};
use crate::sieve::{memory_cap_from_env, MertensTable};
use crate::spectral::{self, Method, PowerSettings, DEFAULT_MAX_ITER, DEFAULT_SEED, DEFAULT_TOL};

pub const CSV_HEADER: &str = "n,s,mertens_n,norm,ratio,w,restricted_form,converged";

/// Whether `n` is `k²`, `k² + k`, or neither. These are exactly the `n` at
/// which the matrix dimension grows by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RestrictedForm {
    Square,
    SquarePlusRoot,
    Other,
}

impl RestrictedForm {
    pub fn of(n: u64) -> Self {
        let k = isqrt(n);
        if k * k == n {
            RestrictedForm::Square
        } else if k * k + k == n {
            RestrictedForm::SquarePlusRoot
        } else {
            RestrictedForm::Other
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RestrictedForm::Square => "SQUARE",
            RestrictedForm::SquarePlusRoot => "SQUARE_PLUS_ROOT",
            RestrictedForm::Other => "OTHER",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub n: u64,
    pub s: usize,
    pub mertens_n: i64,
    pub norm: f64,
    pub ratio: f64,
    pub w: f64,
    pub restricted_form: RestrictedForm,
    pub converged: bool,
}

impl SweepRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.s,
            self.mertens_n,
            format_significant(self.norm, 15),
            format_significant(self.ratio, 15),
            format_significant(self.w, 15),
            self.restricted_form.as_str(),
            self.converged,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_from: u64,
    pub n_to: u64,
    pub n_step: u64,
    /// Keep only `n = k²` and `n = k² + k`; the step is ignored.
    pub restrict: bool,
    pub method: Method,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub memory_cap: u64,
    pub output_path: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(n_from: u64, n_to: u64) -> Self {
        Self {
            n_from,
            n_to,
            n_step: 1,
            restrict: false,
            method: Method::Power,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            seed: DEFAULT_SEED,
            memory_cap: memory_cap_from_env(),
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_from < 2 {
            return Err(Error::InvalidParameter("sweep must start at n >= 2 (w is undefined at n = 1)".into()));
        }
        if self.n_from > self.n_to {
            return Err(Error::InvalidParameter(format!("from ({}) exceeds to ({})", self.n_from, self.n_to)));
        }
        if self.n_step == 0 {
            return Err(Error::InvalidParameter("step must be positive".into()));
        }
        Ok(())
    }

    /// The `n` values this configuration visits, ascending.
    pub fn values(&self) -> Vec<u64> {
        if self.restrict {
            restricted_values(self.n_from, self.n_to)
        } else {
            let step = self.n_step.max(1) as usize;
            (self.n_from..=self.n_to).step_by(step).collect()
        }
    }
}

/// All `k²` and `k² + k` in `[n_from, n_to]`, ascending.
pub fn restricted_values(n_from: u64, n_to: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = isqrt(n_from.saturating_sub(1)).max(1);
    loop {
        let sq = k * k;
        if sq > n_to {
            break;
        }
        for v in [sq, sq + k] {
            if (n_from..=n_to).contains(&v) {
                out.push(v);
            }
        }
        k += 1;
    }
    out
}

/// Record for a single `n` against a prebuilt table.
pub fn measure(n: u64, table: &MertensTable, method: Method, settings: &PowerSettings<f64>) -> Result<SweepRecord> {
    let cs = ClassStructure::new(n)?;
    let m = build_m_direct::<i64>(&cs, table)?;
    let est = spectral::spectral_norm(&m, method, settings)?;
    let norm = est.norm;
    let ln_n = (n as f64).ln();
    Ok(SweepRecord {
        n,
        s: cs.s(),
        mertens_n: table.mertens(n),
        norm,
        ratio: norm / (n as f64).sqrt(),
        w: norm.ln() / ln_n - 0.5,
        restricted_form: RestrictedForm::of(n),
        converged: est.converged,
    })
}

/// Runs the sweep on the rayon pool. One sieve, sized to `n_to`, is shared
/// by every task; records come back in ascending `n`.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let table = MertensTable::with_cap(config.n_to, config.memory_cap)?;
    run_sweep_with_table(config, &table)
}

pub fn run_sweep_with_table(config: &SweepConfig, table: &MertensTable) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    table.require(config.n_to)?;
    let settings = PowerSettings { tol: config.tol, max_iter: config.max_iter, seed: config.seed };
    let records: Vec<SweepRecord> = config
        .values()
        .into_par_iter()
        .map(|n| measure(n, table, config.method, &settings))
        .collect::<Result<_>>()?;
    if let Some(path) = &config.output_path {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        write_csv(&records, &mut w)?;
        w.flush()?;
    }
    Ok(records)
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: &mut W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.to_csv_row())?;
    }
    Ok(())
}

pub fn to_csv_string(records: &[SweepRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Median of `w` over converged records on the first and last decade of
/// the swept range, and whether every converged `w` is positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendSummary {
    pub all_w_positive: bool,
    pub first_decade_median: f64,
    pub last_decade_median: f64,
    pub first_decade_count: usize,
    pub last_decade_count: usize,
}

impl TrendSummary {
    pub fn decreasing(&self) -> bool {
        self.last_decade_median < self.first_decade_median
    }
}

pub fn trend_summary(records: &[SweepRecord], n_from: u64, n_to: u64) -> TrendSummary {
    let converged: Vec<&SweepRecord> = records.iter().filter(|r| r.converged).collect();
    let first: Vec<f64> = converged
        .iter()
        .filter(|r| r.n >= n_from && r.n < n_from.saturating_mul(10))
        .map(|r| r.w)
        .collect();
    let last: Vec<f64> = converged.iter().filter(|r| r.n > n_to / 10 && r.n <= n_to).map(|r| r.w).collect();
    TrendSummary {
        all_w_positive: converged.iter().all(|r| r.w > 0.0),
        first_decade_median: median(&first),
        last_decade_median: median(&last),
        first_decade_count: first.len(),
        last_decade_count: last.len(),
    }
}

fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Formats like C's `%.{digits}g`: fixed notation for exponents in
/// `[-5, digits)`, scientific otherwise, trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let all: String = mantissa.chars().filter(|c| *c != '.').collect();

    if exp < -5 || exp >= digits as i32 {
        let mut m = format!("{}.{}", &all[..1], &all[1..]);
        trim_fraction(&mut m);
        let esign = if exp < 0 { '-' } else { '+' };
        return format!("{sign}{m}e{esign}{:02}", exp.abs());
    }
    let mut body = if exp >= 0 {
        let split = exp as usize + 1;
        format!("{}.{}", &all[..split], &all[split..])
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), all)
    };
    trim_fraction(&mut body);
    format!("{sign}{body}")
}

fn trim_fraction(s: &mut String) {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
}
