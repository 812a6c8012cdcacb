//! One- and two-dimensional parameter grids written as CSV determinacy maps.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{analyze_point, canonical_param, Family, ModelPoint, ParamSet};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Axis {
    pub fn new(name: &str, start: f64, stop: f64, step: f64) -> Self {
        Self {
            name: canonical_param(name),
            start,
            stop,
            step,
        }
    }

    /// Grid values from `start` to `stop` inclusive. When the range is not a
    /// whole number of steps the last value is `stop` itself.
    pub fn values(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let ratio = span / self.step;
        let n = ratio.round();
        let whole = (ratio - n).abs() <= 1e-9 * ratio.abs().max(1.0);
        let count = if whole { n as usize } else { ratio.floor() as usize };
        let mut v: Vec<f64> = (0..=count)
            .map(|i| self.start + i as f64 * self.step)
            .collect();
        if whole {
            *v.last_mut().unwrap() = self.stop;
        } else {
            v.push(self.stop);
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: Family,
    pub fixed: ParamSet,
    pub axes: Vec<Axis>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidSweep(format!(
                "expected 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return Err(Error::InvalidSweep(format!(
                "axis {} given twice",
                self.axes[0].name
            )));
        }
        let names = self.family.param_names();
        for a in &self.axes {
            if !(a.step.is_finite() && a.step > 0.0) {
                return Err(Error::InvalidSweep(format!(
                    "step of {} must be > 0, got {}",
                    a.name, a.step
                )));
            }
            if !(a.start.is_finite() && a.stop.is_finite() && a.start <= a.stop) {
                return Err(Error::InvalidSweep(format!(
                    "axis {} needs start <= stop, got {}..{}",
                    a.name, a.start, a.stop
                )));
            }
            if self.fixed.contains_key(&a.name) {
                return Err(Error::InvalidSweep(format!(
                    "{} is both fixed and swept",
                    a.name
                )));
            }
            if !names.contains(&a.name.as_str()) {
                return Err(Error::InvalidSweep(format!(
                    "{} is not a parameter of {}",
                    a.name, self.family
                )));
            }
        }
        for k in self.fixed.keys() {
            if !names.contains(&k.as_str()) {
                return Err(Error::InvalidSweep(format!(
                    "{k} is not a parameter of {}",
                    self.family
                )));
            }
        }
        for n in names {
            if !self.fixed.contains_key(*n) && !self.axes.iter().any(|a| a.name == *n) {
                return Err(Error::InvalidSweep(format!("{n} is not assigned")));
            }
        }
        Ok(())
    }

    /// Grid points in row-major order (the first axis varies slowest).
    pub fn points(&self) -> Vec<Vec<f64>> {
        let first = self.axes[0].values();
        match self.axes.get(1) {
            None => first.into_iter().map(|x| vec![x]).collect(),
            Some(second) => {
                let second = second.values();
                first
                    .iter()
                    .flat_map(|x| second.iter().map(move |y| vec![*x, *y]))
                    .collect()
            }
        }
    }

    pub fn header(&self) -> Vec<String> {
        let mut h: Vec<String> = self.axes.iter().map(|a| a.name.clone()).collect();
        for c in ["verdict", "inside", "outside", "boundary", "condition"] {
            h.push(c.to_string());
        }
        h
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    /// An outcome token, or `invalid`.
    pub verdict: String,
    pub counts: Option<(usize, usize, usize)>,
    pub condition: String,
}

fn evaluate(spec: &SweepSpec, coords: &[f64], tol: &Tolerances) -> SweepRow {
    let mut params = spec.fixed.clone();
    for (a, v) in spec.axes.iter().zip(coords) {
        params.insert(a.name.clone(), *v);
    }
    let report = ModelPoint::from_params(spec.family, &params).and_then(|p| analyze_point(&p, tol));
    match report {
        Ok(r) => SweepRow {
            coords: coords.to_vec(),
            verdict: r.outcome.token().to_string(),
            counts: Some((
                r.detail.profile.inside,
                r.detail.profile.outside,
                r.detail.profile.boundary,
            )),
            condition: r.condition,
        },
        Err(e) => SweepRow {
            coords: coords.to_vec(),
            verdict: "invalid".to_string(),
            counts: None,
            condition: e.to_string(),
        },
    }
}

/// Evaluates every grid point. Points run in parallel; rows come back in
/// grid order.
pub fn run_sweep(spec: &SweepSpec, tol: &Tolerances) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(spec
        .points()
        .par_iter()
        .map(|c| evaluate(spec, c, tol))
        .collect())
}

/// `%.17g`: enough digits for any `f64` to round-trip.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".to_string() } else { x.to_string() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let m = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

pub fn write_csv<W: Write>(spec: &SweepSpec, rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(spec.header())?;
    for r in rows {
        let mut rec: Vec<String> = r.coords.iter().map(|v| format_g17(*v)).collect();
        rec.push(r.verdict.clone());
        match r.counts {
            Some((i, o, b)) => {
                rec.extend([i.to_string(), o.to_string(), b.to_string()]);
            }
            None => rec.extend([String::new(), String::new(), String::new()]),
        }
        rec.push(r.condition.clone());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs the sweep and writes the CSV to `path`. Returns the row count.
pub fn sweep_to_path(spec: &SweepSpec, tol: &Tolerances, path: &Path) -> Result<usize> {
    let rows = run_sweep(spec, tol)?;
    let file = std::fs::File::create(path)?;
    write_csv(spec, &rows, std::io::BufWriter::new(file))?;
    Ok(rows.len())
}
