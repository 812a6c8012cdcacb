//! Run settings: built-in defaults, then an optional `key = value` file,
//! then command line flags.

use std::path::Path;

use nkdet_core::tolerance::{DEFAULT_BOUNDARY_TOL, DEFAULT_ZERO_TOL};
use nkdet_core::Tolerances;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportConfig {
    pub zero_tol: f64,
    pub boundary_tol: f64,
    pub seed: u64,
    pub samples: usize,
    pub exact: bool,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            zero_tol: DEFAULT_ZERO_TOL,
            boundary_tol: DEFAULT_BOUNDARY_TOL,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            exact: false,
        }
    }
}

/// Overrides from one source; `None` leaves the value alone.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub zero_tol: Option<f64>,
    pub boundary_tol: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub exact: Option<bool>,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("config line {line}: invalid value {value:?} for {key}"))
}

impl Overrides {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped;
    /// keys may use `-` or `_`.
    pub fn parse_file(text: &str) -> Result<Self, String> {
        let mut o = Overrides::default();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {n}: expected key = value"))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            match key.as_str() {
                "zero_tol" => o.zero_tol = Some(parse(&key, value, n)?),
                "boundary_tol" => o.boundary_tol = Some(parse(&key, value, n)?),
                "seed" => o.seed = Some(parse(&key, value, n)?),
                "samples" => o.samples = Some(parse(&key, value, n)?),
                "exact" => o.exact = Some(parse(&key, value, n)?),
                _ => return Err(format!("config line {n}: unknown key {key:?}")),
            }
        }
        Ok(o)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse_file(&text)
    }
}

impl ReportConfig {
    pub fn apply(mut self, o: &Overrides) -> Self {
        if let Some(v) = o.zero_tol {
            self.zero_tol = v;
        }
        if let Some(v) = o.boundary_tol {
            self.boundary_tol = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.samples {
            self.samples = v;
        }
        if let Some(v) = o.exact {
            self.exact = v;
        }
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.zero_tol.is_finite() && self.zero_tol > 0.0) {
            return Err(format!("--zero-tol must be > 0, got {}", self.zero_tol));
        }
        if !(self.boundary_tol.is_finite() && self.boundary_tol > 0.0) {
            return Err(format!("--boundary-tol must be > 0, got {}", self.boundary_tol));
        }
        if self.samples == 0 {
            return Err("--samples must be >= 1".into());
        }
        Ok(())
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances::default()
            .with_zero_tol(self.zero_tol)
            .with_boundary_tol(self.boundary_tol)
            .with_exact(self.exact)
    }
}
