//! Flat `key = value` experiment files. `#` starts a comment; paths are
//! relative to the file's directory.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dpcoh::exactlin::RingMode;
use dpcoh::fimod::FIDescriptor;
use dpcoh::gamma::PeriodicityClaim;

use crate::output::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    DpMul,
    DpHilbert,
    DpEpsilon,
    DpPeriod,
    DpShow,
    GammaTable,
    Nakaoka,
    Verify,
}

const EXPERIMENTS: [(Experiment, &str); 8] = [
    (Experiment::DpMul, "dp-mul"),
    (Experiment::DpHilbert, "dp-hilbert"),
    (Experiment::DpEpsilon, "dp-epsilon"),
    (Experiment::DpPeriod, "dp-period"),
    (Experiment::DpShow, "dp-show"),
    (Experiment::GammaTable, "gamma-table"),
    (Experiment::Nakaoka, "nakaoka"),
    (Experiment::Verify, "verify"),
];

impl Experiment {
    pub fn name(self) -> &'static str {
        EXPERIMENTS.iter().find(|(e, _)| *e == self).unwrap().1
    }
}

impl FromStr for Experiment {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        EXPERIMENTS.iter().find(|(_, n)| *n == s).map(|(e, _)| *e).ok_or_else(|| {
            let names: Vec<&str> = EXPERIMENTS.iter().map(|(_, n)| *n).collect();
            format!("unknown experiment '{s}' ({})", names.join(", "))
        })
    }
}

/// Which periodicity statement a table is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimSpec {
    Hemmer,
    Fi,
    Pd,
    Nakaoka,
    Explicit(PeriodicityClaim),
}

impl fmt::Display for ClaimSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimSpec::Hemmer => f.write_str("hemmer"),
            ClaimSpec::Fi => f.write_str("fi"),
            ClaimSpec::Pd => f.write_str("pd"),
            ClaimSpec::Nakaoka => f.write_str("nakaoka"),
            ClaimSpec::Explicit(c) => write!(f, "{c}"),
        }
    }
}

impl FromStr for ClaimSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "hemmer" => return Ok(ClaimSpec::Hemmer),
            "fi" => return Ok(ClaimSpec::Fi),
            "pd" => return Ok(ClaimSpec::Pd),
            "nakaoka" => return Ok(ClaimSpec::Nakaoka),
            _ => {}
        }
        let bad = || format!("bad claim '{s}' (hemmer, fi, pd, nakaoka, or onset=A;period=B)");
        let (mut onset, mut period) = (None, None);
        for part in s.split(';') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            match k.trim() {
                "onset" => onset = Some(v),
                "period" if v > 0 => period = Some(v),
                _ => return Err(bad()),
            }
        }
        match (onset, period) {
            (Some(onset), Some(period)) => Ok(ClaimSpec::Explicit(PeriodicityClaim { onset, period })),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Builtin(String),
    Missing,
}

/// Inclusive `a..b` (or `a..=b`).
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("bad range '{s}' (expected a..b)");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub experiment: Option<Experiment>,
    pub ring: Option<RingMode>,
    pub module: Option<FIDescriptor>,
    pub t: Option<usize>,
    pub nmax: Option<usize>,
    pub claim: Option<ClaimSpec>,
    pub truncate: bool,
    pub source: Option<Source>,
    pub range: Option<(usize, usize)>,
    pub operands: Option<(String, String)>,
    pub suite: Option<String>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

const KEYS: [&str; 16] = [
    "experiment", "ring", "module", "t", "nmax", "claim", "truncate", "file", "builtin", "n", "a", "b", "suite",
    "seed", "format", "output",
];

fn key_err(key: &str, msg: impl fmt::Display) -> String {
    format!("config key '{key}': {msg}")
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut c = Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        if let Some(Source::File(f)) = &mut c.source {
            *f = base.join(&*f);
        }
        if let Some(o) = &mut c.output {
            *o = base.join(&*o);
        }
        Ok(c)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut c = ExperimentConfig::default();
        let (mut a, mut b) = (None, None);
        let mut seen = std::collections::HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value, got '{line}'", i + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(key_err(k, format!("unknown key on line {} (known: {})", i + 1, KEYS.join(", "))));
            }
            if !seen.insert(k.to_string()) {
                return Err(key_err(k, format!("repeated on line {}", i + 1)));
            }
            let num = |v: &str| v.parse::<usize>().map_err(|_| key_err(k, format!("'{v}' is not a number")));
            match k {
                "experiment" => c.experiment = Some(v.parse().map_err(|e| key_err(k, e))?),
                "ring" => c.ring = Some(v.parse().map_err(|e| key_err(k, e))?),
                "module" => c.module = Some(v.parse().map_err(|e| key_err(k, e))?),
                "t" => c.t = Some(num(v)?),
                "nmax" => c.nmax = Some(num(v)?),
                "claim" => c.claim = Some(v.parse().map_err(|e| key_err(k, e))?),
                "truncate" => {
                    c.truncate = v.parse().map_err(|_| key_err(k, format!("'{v}' is not true or false")))?
                }
                "file" | "builtin" => {
                    if c.source.is_some() {
                        return Err(key_err(k, "give only one of file and builtin"));
                    }
                    c.source = Some(if k == "file" {
                        Source::File(PathBuf::from(v))
                    } else {
                        Source::Builtin(v.to_string())
                    });
                }
                "n" => c.range = Some(parse_range(v).map_err(|e| key_err(k, e))?),
                "a" => a = Some(v.to_string()),
                "b" => b = Some(v.to_string()),
                "suite" => c.suite = Some(v.to_string()),
                "seed" => c.seed = Some(v.parse().map_err(|_| key_err(k, format!("'{v}' is not a number")))?),
                "format" => c.format = Some(v.parse().map_err(|e| key_err(k, e))?),
                "output" => c.output = Some(PathBuf::from(v)),
                _ => unreachable!(),
            }
        }
        c.operands = match (a, b) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            (Some(_), None) => return Err(key_err("b", "required together with a")),
            (None, Some(_)) => return Err(key_err("a", "required together with b")),
        };
        Ok(c)
    }

    /// The first missing key the experiment needs.
    pub fn validate(&self) -> Result<Experiment, String> {
        let e = self.experiment.ok_or_else(|| key_err("experiment", "required"))?;
        let need = |ok: bool, key: &str| if ok { Ok(()) } else { Err(key_err(key, format!("required for {}", e.name()))) };
        match e {
            Experiment::Verify => need(self.suite.is_some(), "suite")?,
            Experiment::DpMul => {
                need(self.ring.is_some(), "ring")?;
                need(self.operands.is_some(), "a")?;
            }
            Experiment::DpHilbert | Experiment::DpEpsilon | Experiment::DpPeriod | Experiment::DpShow => {
                need(self.ring.is_some(), "ring")?;
                need(matches!(self.source, Some(Source::File(_) | Source::Builtin(_))), "file")?;
            }
            Experiment::GammaTable => {
                need(self.module.is_some(), "module")?;
                need(self.ring.is_some(), "ring")?;
                need(self.nmax.is_some(), "nmax")?;
            }
            Experiment::Nakaoka => {
                need(self.ring.is_some(), "ring")?;
                need(self.t.is_some(), "t")?;
                need(self.nmax.is_some(), "nmax")?;
            }
        }
        Ok(e)
    }
}

impl fmt::Display for ExperimentConfig {
    /// Parsing the output gives the same config back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(e) = self.experiment {
            writeln!(f, "experiment = {}", e.name())?;
        }
        if let Some(r) = self.ring {
            writeln!(f, "ring = {}", r.characteristic())?;
        }
        if let Some(m) = &self.module {
            writeln!(f, "module = {m}")?;
        }
        if let Some(t) = self.t {
            writeln!(f, "t = {t}")?;
        }
        if let Some(n) = self.nmax {
            writeln!(f, "nmax = {n}")?;
        }
        if let Some(c) = &self.claim {
            writeln!(f, "claim = {c}")?;
        }
        if self.truncate {
            writeln!(f, "truncate = true")?;
        }
        match &self.source {
            Some(Source::File(p)) => writeln!(f, "file = {}", p.display())?,
            Some(Source::Builtin(b)) => writeln!(f, "builtin = {b}")?,
            _ => {}
        }
        if let Some((a, b)) = self.range {
            writeln!(f, "n = {a}..{b}")?;
        }
        if let Some((a, b)) = &self.operands {
            writeln!(f, "a = {a}")?;
            writeln!(f, "b = {b}")?;
        }
        if let Some(s) = &self.suite {
            writeln!(f, "suite = {s}")?;
        }
        if let Some(s) = self.seed {
            writeln!(f, "seed = {s}")?;
        }
        if let Some(fm) = self.format {
            writeln!(f, "format = {}", fm.name())?;
        }
        if let Some(o) = &self.output {
            writeln!(f, "output = {}", o.display())?;
        }
        Ok(())
    }
}
