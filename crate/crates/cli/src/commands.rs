//! The `fit`, `tables`, `curves` and `sample` commands.

use std::thread;

use anyhow::{bail, ensure, Context, Result};
use clap::ValueEnum;
use epl_core::competitors::{fit_competitor, CompetitorModel, Family};
use epl_core::estimation::{fit_mle, FitConfig};
use epl_core::gof::{ks_test_with, PValueMethod};
use epl_core::moments::{cv_ratio, mean, order_stat_moment, order_stat_moment_quadrature, variance, OrderStatSpec};
use epl_core::{datasets, DataSet, EplParams, SeriesConfig};

use crate::format::{opt, sig, TextTable};
use crate::published;
use crate::report::{Cell, CurvePoint, FitRecord, Record, RunReport, TableRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Epl,
    Eg,
    Ep,
    El,
    Weibull,
    Gamma,
    All,
}

/// One fitted model family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Epl,
    Other(Family),
}

impl Model {
    pub const ALL: [Model; 6] = [
        Model::Epl,
        Model::Other(Family::ExpGeometric),
        Model::Other(Family::ExpPoisson),
        Model::Other(Family::ExpLogarithmic),
        Model::Other(Family::Weibull),
        Model::Other(Family::Gamma),
    ];

    pub fn key(self) -> &'static str {
        match self {
            Model::Epl => "epl",
            Model::Other(Family::ExpGeometric) => "eg",
            Model::Other(Family::ExpPoisson) => "ep",
            Model::Other(Family::ExpLogarithmic) => "el",
            Model::Other(Family::Weibull) => "weibull",
            Model::Other(Family::WeibullPrinted) => "weibull-printed",
            Model::Other(Family::Gamma) => "gamma",
        }
    }

    pub fn shape_name(self) -> &'static str {
        match self {
            Model::Epl => "theta",
            Model::Other(f) => f.shape_name(),
        }
    }
}

impl FamilyArg {
    pub fn models(self) -> Vec<Model> {
        match self {
            FamilyArg::All => Model::ALL.to_vec(),
            other => Model::ALL.into_iter().filter(|m| m.key() == other.key()).collect(),
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            FamilyArg::Epl => "epl",
            FamilyArg::Eg => "eg",
            FamilyArg::Ep => "ep",
            FamilyArg::El => "el",
            FamilyArg::Weibull => "weibull",
            FamilyArg::Gamma => "gamma",
            FamilyArg::All => "all",
        }
    }
}

/// Fitted parameters of either kind.
#[derive(Debug, Clone, Copy)]
pub enum Fitted {
    Epl(EplParams),
    Other(CompetitorModel),
}

impl Fitted {
    fn family(&self) -> &'static str {
        match self {
            Fitted::Epl(_) => Model::Epl.key(),
            Fitted::Other(m) => Model::Other(m.family()).key(),
        }
    }

    pub fn cdf(&self, x: f64) -> Option<f64> {
        match self {
            Fitted::Epl(p) => p.cdf(x).ok(),
            Fitted::Other(m) => m.cdf(x).ok(),
        }
    }

    pub fn pdf(&self, x: f64) -> Option<f64> {
        match self {
            Fitted::Epl(p) if x == 0.0 => Some(p.density_at_origin()),
            Fitted::Epl(p) => p.pdf(x).ok(),
            Fitted::Other(m) => m.pdf(x).ok(),
        }
        .filter(|v| v.is_finite())
    }

    pub fn hazard(&self, x: f64) -> Option<f64> {
        match self {
            Fitted::Epl(p) if x == 0.0 => Some(p.density_at_origin()),
            Fitted::Epl(p) => p.hazard(x).ok(),
            Fitted::Other(m) => {
                let s = 1.0 - m.cdf(x).ok()?;
                m.pdf(x).ok().filter(|_| s > 0.0).map(|f| f / s)
            }
        }
        .filter(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    pub tol: f64,
    pub max_iters: usize,
    pub p_value: PValueMethod,
}

impl Default for FitOptions {
    fn default() -> Self {
        let d = FitConfig::default();
        Self { tol: d.grad_tol, max_iters: d.max_iters, p_value: PValueMethod::Exact }
    }
}

impl FitOptions {
    fn config(&self) -> FitConfig {
        FitConfig { grad_tol: self.tol, max_iters: self.max_iters, ..FitConfig::default() }
    }
}

pub fn method_name(m: PValueMethod) -> &'static str {
    match m {
        PValueMethod::Exact => "exact",
        PValueMethod::Asymptotic => "asymptotic",
    }
}

/// Result of one command: the structured report, its text rendering and
/// whether every requested fit converged.
#[derive(Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub text: String,
    pub ok: bool,
}

pub fn fit_model(data: &DataSet, model: Model, opts: &FitOptions) -> (FitRecord, Option<Fitted>) {
    let cfg = opts.config();
    let fitted = match model {
        Model::Epl => fit_mle(data, &cfg).map(|f| {
            let se = f.std_errors;
            (Fitted::Epl(f.params), f.loglik, se, f.converged, f.iterations)
        }),
        Model::Other(family) => fit_competitor(data, family, &cfg).map(|f| {
            let se = f.std_errors;
            (Fitted::Other(f.params), f.loglik, se, f.converged, f.iterations)
        }),
    };
    let mut rec = FitRecord {
        data: data.label().into(),
        n: data.len(),
        family: model.key().into(),
        beta: None,
        shape_name: model.shape_name().into(),
        shape: None,
        loglik: None,
        se_beta: None,
        se_shape: None,
        ks_statistic: None,
        p_value: None,
        p_value_method: method_name(opts.p_value).into(),
        converged: false,
        iterations: 0,
        error: None,
    };
    match fitted {
        Ok((m, loglik, se, converged, iterations)) => {
            let (beta, shape) = match m {
                Fitted::Epl(p) => (p.beta(), p.theta()),
                Fitted::Other(c) => (c.beta(), c.shape()),
            };
            rec.beta = Some(beta);
            rec.shape = Some(shape);
            rec.loglik = Some(loglik).filter(|l| l.is_finite());
            rec.se_beta = se.map(|s| s[0]);
            rec.se_shape = se.map(|s| s[1]);
            rec.converged = converged;
            rec.iterations = iterations;
            if !converged {
                rec.error = Some("fit did not converge".into());
            }
            match ks_test_with(data, |x| m.cdf(x).unwrap_or(f64::NAN), opts.p_value) {
                Ok(ks) => {
                    rec.ks_statistic = Some(ks.statistic);
                    rec.p_value = Some(ks.p_value);
                }
                Err(e) => rec.error = Some(format!("KS test: {e}")),
            }
            (rec, Some(m))
        }
        Err(e) => {
            rec.error = Some(e.to_string());
            (rec, None)
        }
    }
}

/// Fits `models` concurrently; results come back in the order given.
pub fn fit_all(data: &DataSet, models: &[Model], opts: &FitOptions) -> Vec<(FitRecord, Option<Fitted>)> {
    thread::scope(|s| {
        let handles: Vec<_> = models.iter().map(|&m| s.spawn(move || fit_model(data, m, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("fit thread panicked")).collect()
    })
}

fn fit_text(records: &[FitRecord]) -> String {
    let mut t = TextTable::new([
        "family", "beta", "shape", "", "loglik", "se(beta)", "se(shape)", "KS", "p-value", "converged",
    ]);
    for r in records {
        t.row([
            r.family.clone(),
            opt(r.beta),
            r.shape_name.clone(),
            opt(r.shape),
            opt(r.loglik),
            opt(r.se_beta),
            opt(r.se_shape),
            opt(r.ks_statistic),
            opt(r.p_value),
            if r.converged { "yes".into() } else { "no".into() },
        ]);
    }
    let mut out = t.render();
    for r in records.iter().filter(|r| r.error.is_some()) {
        out.push_str(&format!("{}: {}\n", r.family, r.error.as_deref().unwrap_or_default()));
    }
    out
}

pub fn cmd_fit(data: &DataSet, family: FamilyArg, opts: &FitOptions) -> Outcome {
    let results = fit_all(data, &family.models(), opts);
    let records: Vec<FitRecord> = results.into_iter().map(|(r, _)| r).collect();
    let ok = records.iter().all(|r| r.converged && r.error.is_none());
    let mut report = RunReport::new("fit")
        .input("data", data.label())
        .input("family", family.key())
        .input("tol", opts.tol)
        .input("max_iters", opts.max_iters)
        .input("p_value", method_name(opts.p_value));
    let text = format!("data: {} (n = {})\n{}", data.label(), data.len(), fit_text(&records));
    report.outputs = records.into_iter().map(Record::Fit).collect();
    Outcome { report, text, ok }
}

fn table_text(rows: &[TableRow]) -> String {
    let mut t = TextTable::new(["row", "column", "published", "computed", "abs diff"]);
    for r in rows {
        for c in &r.cells {
            t.row([r.row.clone(), c.column.clone(), opt(c.published), opt(c.computed), opt(c.abs_diff)]);
        }
    }
    let mut out = t.render();
    for r in rows {
        if let Some(n) = &r.note {
            out.push_str(&format!("{}: {n}\n", r.row));
        }
    }
    out
}

fn table_1() -> Vec<TableRow> {
    published::TABLE_1
        .iter()
        .map(|&(theta, m, v, cv)| {
            let p = EplParams::new(1.0, theta).expect("valid parameters");
            TableRow {
                table: 1,
                row: format!("theta={theta}"),
                cells: vec![
                    Cell::new("mean", Some(m), Some(mean(&p))),
                    Cell::new("variance", Some(v), Some(variance(&p))),
                    Cell::new("cv", Some(cv), Some(cv_ratio(&p))),
                ],
                note: None,
            }
        })
        .collect()
}

fn table_2(series: &SeriesConfig) -> Vec<TableRow> {
    let p = EplParams::new(published::TABLE_2_BETA, published::TABLE_2_THETA).expect("valid parameters");
    let mut rows = Vec::new();
    for (&(i, expr), &(_, num)) in published::TABLE_2_SERIES.iter().zip(&published::TABLE_2_NUMERICAL) {
        let mut cells = Vec::new();
        let mut worst = 0.0f64;
        for r in 1..=4u32 {
            let spec = OrderStatSpec::new(i, published::TABLE_2_N, r).expect("valid order statistic");
            let s = order_stat_moment(spec, &p, series).ok().map(|m| m.value);
            let q = order_stat_moment_quadrature(spec, &p).ok();
            if let (Some(s), Some(q)) = (s, q) {
                worst = worst.max((s - q).abs() / q.abs());
            }
            cells.push(Cell::new(format!("series r={r}"), Some(expr[r as usize - 1]), s));
            cells.push(Cell::new(format!("quadrature r={r}"), Some(num[r as usize - 1]), q));
        }
        let note = (worst > 1e-3).then(|| {
            format!(
                "series (j <= {}) and quadrature differ by up to {} relative; quadrature is exact",
                series.max_terms,
                sig(worst)
            )
        });
        rows.push(TableRow { table: 2, row: format!("i={i}"), cells, note });
    }
    rows
}

fn fitted_table(table: u8, data: &DataSet, rows: &[published::FitRow], opts: &FitOptions) -> (Vec<TableRow>, bool) {
    let models: Vec<Model> = rows.iter().map(|r| r.model).collect();
    let fits = fit_all(data, &models, opts);
    let ok = fits.iter().all(|(r, _)| r.converged && r.error.is_none());
    let out = rows
        .iter()
        .zip(fits)
        .map(|(p, (f, _))| TableRow {
            table,
            row: p.model.key().into(),
            cells: vec![
                Cell::new("beta", Some(p.beta), f.beta),
                Cell::new(f.shape_name.clone(), Some(p.shape), f.shape),
                Cell::new("KS", Some(p.ks), f.ks_statistic),
                Cell::new("p-value", Some(p.p_value), f.p_value),
            ],
            note: f.error,
        })
        .collect();
    (out, ok)
}

pub fn cmd_tables(which: u8, series: &SeriesConfig, opts: &FitOptions) -> Result<Outcome> {
    let (rows, ok) = match which {
        1 => (table_1(), true),
        2 => (table_2(series), true),
        3 => fitted_table(3, &datasets::aircon(), &published::TABLE_3, opts),
        4 => fitted_table(4, &datasets::vinyl_chloride(), &published::TABLE_4, opts),
        _ => bail!("no table {which}; choose 1, 2, 3 or 4"),
    };
    let mut report = RunReport::new("tables").input("table", which);
    if which == 2 {
        report = report.input("series_max_terms", series.max_terms);
    }
    if which >= 3 {
        report = report.input("p_value", method_name(opts.p_value));
    }
    let text = format!("table {which}\n{}", table_text(&rows));
    report.outputs = rows.into_iter().map(Record::Table).collect();
    Ok(Outcome { report, text, ok })
}

/// Evenly spaced grid `lo:hi:points`, both ends included.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    ensure!(parts.len() == 3, "grid must be lo:hi:points, got `{spec}`");
    let lo: f64 = parts[0].parse().with_context(|| format!("bad grid start `{}`", parts[0]))?;
    let hi: f64 = parts[1].parse().with_context(|| format!("bad grid end `{}`", parts[1]))?;
    let n: usize = parts[2].parse().with_context(|| format!("bad point count `{}`", parts[2]))?;
    ensure!(lo.is_finite() && hi.is_finite() && lo >= 0.0, "grid bounds must be finite and non-negative");
    ensure!(n >= 1, "grid needs at least one point");
    ensure!(hi > lo || (hi == lo && n == 1), "grid end must exceed its start");
    if n == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|k| if k == n - 1 { hi } else { lo + k as f64 * step }).collect())
}

fn empirical_cdf(sorted: &[f64], x: f64) -> f64 {
    sorted.partition_point(|&v| v <= x) as f64 / sorted.len() as f64
}

pub enum CurveSource<'a> {
    Params(EplParams),
    Data { data: &'a DataSet, family: FamilyArg },
}

pub fn cmd_curves(source: CurveSource<'_>, grid: Option<&str>, opts: &FitOptions) -> Result<Outcome> {
    let mut report = RunReport::new("curves");
    let mut ok = true;
    let mut fit_records = Vec::new();
    let (models, sorted, default_hi) = match source {
        CurveSource::Params(p) => {
            report = report.input("beta", p.beta()).input("theta", p.theta());
            (vec![Fitted::Epl(p)], None, p.quantile(0.99)?)
        }
        CurveSource::Data { data, family } => {
            report = report.input("data", data.label()).input("family", family.key());
            let fits = fit_all(data, &family.models(), opts);
            let mut models = Vec::new();
            for (rec, m) in fits {
                ok &= rec.converged && rec.error.is_none();
                models.extend(m);
                fit_records.push(rec);
            }
            let sorted = data.sorted();
            let hi = *sorted.last().expect("data sets are non-empty");
            (models, Some(sorted), hi)
        }
    };
    let grid = match grid {
        Some(g) => parse_grid(g)?,
        None => parse_grid(&format!("0:{default_hi}:200"))?,
    };
    report = report.input("grid", format!("{}:{}:{}", grid[0], grid[grid.len() - 1], grid.len()));

    let mut t = TextTable::new(["family", "x", "pdf", "hazard", "cdf", "empirical cdf"]);
    for m in &models {
        for &x in &grid {
            let point = CurvePoint {
                family: m.family().into(),
                x,
                pdf: m.pdf(x),
                hazard: m.hazard(x),
                cdf: m.cdf(x),
                empirical_cdf: sorted.as_deref().map(|s| empirical_cdf(s, x)),
            };
            t.row([
                point.family.clone(),
                sig(x),
                opt(point.pdf),
                opt(point.hazard),
                opt(point.cdf),
                opt(point.empirical_cdf),
            ]);
            report.outputs.push(Record::Curve(point));
        }
    }
    let mut text = String::new();
    if !fit_records.is_empty() {
        text.push_str(&fit_text(&fit_records));
        text.push('\n');
    }
    text.push_str(&t.render());
    let fits = fit_records.into_iter().map(Record::Fit);
    report.outputs.splice(0..0, fits);
    Ok(Outcome { report, text, ok })
}

pub fn cmd_sample(n: usize, beta: f64, theta: f64, seed: u64) -> Result<Outcome> {
    ensure!(n >= 1, "sample size must be at least 1");
    let p = EplParams::new(beta, theta)?;
    let draws = p.sample(n, seed)?.into_values();
    let mut text = String::with_capacity(n * 20);
    for v in &draws {
        text.push_str(&format!("{v}\n"));
    }
    let mut report = RunReport::new("sample")
        .input("n", n)
        .input("beta", beta)
        .input("theta", theta)
        .input("seed", seed);
    report.outputs = draws.into_iter().map(|value| Record::Draw { value }).collect();
    Ok(Outcome { report, text, ok: true })
}
