//! Flat `key = value` configuration with grid syntax and overrides.
//!
//! Lines are `key = value`; `#` starts a comment; blank lines are
//! skipped. Grids are a single number, a comma list, or `start:stop:step`
//! (inclusive of `stop` up to rounding). Unknown keys are errors.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Largest number of points a single grid may expand to.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelSelector {
    Full,
    Transformed,
    Effective,
    Network,
}

impl ModelSelector {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "transformed" => Ok(Self::Transformed),
            "effective" => Ok(Self::Effective),
            "network" => Ok(Self::Network),
            other => Err(Error::Config { line: 0, reason: format!("unknown model '{other}'") }),
        }
    }
}

impl fmt::Display for ModelSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Full => "full",
            Self::Transformed => "transformed",
            Self::Effective => "effective",
            Self::Network => "network",
        })
    }
}

/// How the two-mode correlation M follows from N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MPolicy {
    Perfect,
    Explicit(f64),
}

impl fmt::Display for MPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Perfect => f.write_str("perfect"),
            Self::Explicit(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub model: ModelSelector,
    pub epsilon: Vec<f64>,
    pub n: Vec<f64>,
    pub m_policy: MPolicy,
    pub filter: bool,
    pub s: Vec<f64>,
    pub quad_order: usize,
    pub g: f64,
    pub kappa: f64,
    pub tol: f64,
    pub max_steps: usize,
    pub n_max: Vec<usize>,
    pub tail_limit: f64,
    pub ideal: bool,
    pub out: Option<PathBuf>,
    pub summary_out: Option<PathBuf>,
}

pub const KEYS: [&str; 16] = [
    "model",
    "epsilon",
    "n",
    "m",
    "filter",
    "s",
    "quad_order",
    "g",
    "kappa",
    "tol",
    "max_steps",
    "n_max",
    "tail_limit",
    "ideal",
    "out",
    "summary_out",
];

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            model: ModelSelector::Effective,
            epsilon: expand_range(0.0, 0.5, 0.01),
            n: expand_range(0.1, 2.0, 0.05),
            m_policy: MPolicy::Perfect,
            filter: true,
            s: expand_range(0.0, 0.5, 0.1),
            quad_order: 15,
            g: 0.1,
            kappa: 1.0,
            tol: 1e-9,
            max_steps: 2_000_000,
            n_max: vec![6],
            tail_limit: 1e-6,
            ideal: false,
            out: None,
            summary_out: None,
        }
    }
}

impl SweepConfig {
    /// Defaults overlaid with the contents of a config file.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = split_pair(line).map_err(|reason| Error::Config { line: idx + 1, reason })?;
            cfg.set(key, value).map_err(|e| at_line(e, idx + 1))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            line: 0,
            reason: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    /// Applies a single `key=value` override without validating the
    /// result; call [`SweepConfig::validate`] after the last override.
    pub fn apply_override(&mut self, pair: &str) -> Result<()> {
        let (key, value) = split_pair(pair.trim()).map_err(|reason| Error::Config { line: 0, reason })?;
        self.set(key, value)
    }

    /// Applies overrides in order, then validates.
    pub fn apply_overrides<S: AsRef<str>>(&mut self, pairs: &[S]) -> Result<()> {
        for pair in pairs {
            self.apply_override(pair.as_ref())?;
        }
        self.validate()
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |reason: String| Error::Config { line: 0, reason: format!("{key}: {reason}") };
        match key {
            "model" => self.model = ModelSelector::parse(value)?,
            "epsilon" => self.epsilon = parse_grid(value).map_err(|e| bad(e.to_string()))?,
            "n" => self.n = parse_grid(value).map_err(|e| bad(e.to_string()))?,
            "m" => {
                self.m_policy = if value == "perfect" {
                    MPolicy::Perfect
                } else {
                    MPolicy::Explicit(parse_number(value).map_err(bad)?)
                }
            }
            "filter" => self.filter = parse_bool(value).map_err(bad)?,
            "s" => self.s = parse_grid(value).map_err(|e| bad(e.to_string()))?,
            "quad_order" => self.quad_order = parse_count(value).map_err(bad)?,
            "g" => self.g = parse_number(value).map_err(bad)?,
            "kappa" => self.kappa = parse_number(value).map_err(bad)?,
            "tol" => self.tol = parse_number(value).map_err(bad)?,
            "max_steps" => self.max_steps = parse_count(value).map_err(bad)?,
            "n_max" => {
                self.n_max = value
                    .split(',')
                    .map(|v| parse_count(v.trim()))
                    .collect::<std::result::Result<_, _>>()
                    .map_err(bad)?
            }
            "tail_limit" => self.tail_limit = parse_number(value).map_err(bad)?,
            "ideal" => self.ideal = parse_bool(value).map_err(bad)?,
            "out" => self.out = Some(parse_path(value).map_err(bad)?),
            "summary_out" => self.summary_out = Some(parse_path(value).map_err(bad)?),
            other => return Err(Error::Config { line: 0, reason: format!("unknown key '{other}'") }),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::Config { line: 0, reason });
        for (name, grid) in [("epsilon", &self.epsilon), ("n", &self.n), ("s", &self.s)] {
            if grid.is_empty() {
                return bad(format!("{name} grid is empty"));
            }
            if grid.iter().any(|v| !(*v >= 0.0)) {
                return bad(format!("{name} grid has negative entries"));
            }
        }
        if let MPolicy::Explicit(m) = self.m_policy {
            if !(m >= 0.0) {
                return bad(format!("m = {m} must be >= 0"));
            }
            let n_min = self.n.iter().copied().fold(f64::INFINITY, f64::min);
            let bound = (n_min * (n_min + 1.0)).sqrt();
            if m > bound + crate::models::SQUEEZING_BOUND_TOL {
                return bad(format!("m = {m} exceeds sqrt(N(N+1)) = {bound} at N = {n_min}"));
            }
        }
        if self.quad_order < 3 {
            return bad(format!("quad_order = {} must be >= 3", self.quad_order));
        }
        if !(self.g >= 0.0) || !self.g.is_finite() {
            return bad(format!("g = {} must be finite and >= 0", self.g));
        }
        if !(self.kappa > 0.0) || !self.kappa.is_finite() {
            return bad(format!("kappa = {} must be positive", self.kappa));
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol = {} must be positive", self.tol));
        }
        if !(self.tail_limit > 0.0) {
            return bad(format!("tail_limit = {} must be positive", self.tail_limit));
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive".into());
        }
        if self.n_max.is_empty() || self.n_max.iter().any(|&k| k < 2) {
            return bad("n_max entries must be >= 2".into());
        }
        Ok(())
    }

    /// Renders the configuration back to `key = value` lines.
    pub fn to_text(&self) -> String {
        let grid = |v: &[f64]| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        push("model", self.model.to_string());
        push("epsilon", grid(&self.epsilon));
        push("n", grid(&self.n));
        push("m", self.m_policy.to_string());
        push("filter", self.filter.to_string());
        push("s", grid(&self.s));
        push("quad_order", self.quad_order.to_string());
        push("g", format!("{}", self.g));
        push("kappa", format!("{}", self.kappa));
        push("tol", format!("{}", self.tol));
        push("max_steps", self.max_steps.to_string());
        push("n_max", self.n_max.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","));
        push("tail_limit", format!("{}", self.tail_limit));
        push("ideal", self.ideal.to_string());
        if let Some(p) = &self.out {
            push("out", p.display().to_string());
        }
        if let Some(p) = &self.summary_out {
            push("summary_out", p.display().to_string());
        }
        out
    }
}

fn at_line(e: Error, line: usize) -> Error {
    match e {
        Error::Config { reason, .. } => Error::Config { line, reason },
        other => other,
    }
}

fn split_pair(line: &str) -> std::result::Result<(&str, &str), String> {
    let (k, v) = line.split_once('=').ok_or_else(|| format!("expected key = value, got '{line}'"))?;
    let (k, v) = (k.trim(), v.trim());
    if k.is_empty() {
        return Err("empty key".into());
    }
    if v.is_empty() {
        return Err(format!("empty value for '{k}'"));
    }
    Ok((k, v))
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

fn parse_count(s: &str) -> std::result::Result<usize, String> {
    s.trim().parse().map_err(|_| format!("'{s}' is not a nonnegative integer"))
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("'{s}' is not a boolean")),
    }
}

fn parse_path(s: &str) -> std::result::Result<PathBuf, String> {
    if s.chars().any(|c| c.is_control() || c == '#') {
        return Err("path contains control characters or '#'".into());
    }
    Ok(PathBuf::from(s))
}

fn expand_range(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|k| snap(start + k as f64 * step)).collect()
}

/// Rounds to 13 significant digits so that 0.1 + 10·0.05 is exactly 0.6.
fn snap(x: f64) -> f64 {
    format!("{x:.12e}").parse().unwrap_or(x)
}

/// Parses `v`, `v1,v2,...` or `start:stop:step`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = |reason: String| Error::Config { line: 0, reason };
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty grid".into()));
    }
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("range '{s}' must be start:stop:step")));
        }
        let start = parse_number(parts[0]).map_err(bad)?;
        let stop = parse_number(parts[1]).map_err(bad)?;
        let step = parse_number(parts[2]).map_err(bad)?;
        if !(step > 0.0) {
            return Err(bad(format!("range step {step} must be positive")));
        }
        if stop < start {
            return Err(bad(format!("range stop {stop} is below start {start}")));
        }
        let count = (stop - start) / step;
        if !(count < MAX_GRID_POINTS as f64) {
            return Err(bad(format!("range '{s}' exceeds {MAX_GRID_POINTS} points")));
        }
        return Ok(expand_range(start, stop, step));
    }
    let values: Vec<f64> = s
        .split(',')
        .map(|v| parse_number(v.trim()))
        .collect::<std::result::Result<_, _>>()
        .map_err(bad)?;
    if values.len() > MAX_GRID_POINTS {
        return Err(bad(format!("grid exceeds {MAX_GRID_POINTS} points")));
    }
    Ok(values)
}
