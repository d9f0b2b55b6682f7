//! Lattice configuration files and run parameters.

use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use susyva::charmod::Complex64;
use susyva::lattice::build_cocycle;
use susyva::opecalc::structures::Matrix;
use susyva::{Cocycle, Lattice, Rat, Scalar};

use crate::CliError;

/// A matrix entry: an integer or a string such as `"1/2"`, `"i"` or `"1-2*i"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum CocycleSpec {
    Named(String),
    Signs { signs: Vec<Vec<i8>> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    gram: Vec<Vec<i64>>,
    #[serde(default)]
    cocycle: Option<CocycleSpec>,
    #[serde(default)]
    n2: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    n4: Option<[Vec<Vec<Entry>>; 3]>,
}

/// A validated lattice with its cocycle and optional conformal data.
#[derive(Clone, Debug)]
pub struct Setup {
    pub lattice: Lattice,
    pub cocycle: Cocycle,
    pub signs: Option<Vec<Vec<i8>>>,
    pub n2: Option<Matrix>,
    pub n4: Option<[Matrix; 3]>,
}

fn scalar(e: &Entry) -> Result<Scalar, CliError> {
    match e {
        Entry::Int(k) => Ok(Scalar::int(*k)),
        Entry::Text(s) => {
            let t = s.trim();
            let t = match t {
                "i" | "+i" => "0+1*i",
                "-i" => "0-1*i",
                other => other,
            };
            Scalar::from_str(t).map_err(|e| CliError::Config(format!("entry `{s}`: {e}")))
        }
    }
}

fn matrix(m: &[Vec<Entry>]) -> Result<Matrix, CliError> {
    m.iter().map(|row| row.iter().map(scalar).collect()).collect()
}

impl Setup {
    pub fn new(gram: Vec<Vec<i64>>, signs: Option<Vec<Vec<i8>>>) -> Result<Self, CliError> {
        let lattice = Lattice::new(gram)?;
        let cocycle = build_cocycle(&lattice, signs.clone())?;
        Ok(Setup { lattice, cocycle, signs, n2: None, n4: None })
    }

    pub fn from_json(src: &str) -> Result<Self, CliError> {
        let raw: RawConfig = serde_json::from_str(src).map_err(|e| CliError::Config(e.to_string()))?;
        let signs = match raw.cocycle {
            None => None,
            Some(CocycleSpec::Named(n)) if n == "default" => None,
            Some(CocycleSpec::Named(n)) => return Err(CliError::Config(format!("unknown cocycle `{n}`"))),
            Some(CocycleSpec::Signs { signs }) => Some(signs),
        };
        let mut setup = Setup::new(raw.gram, signs)?;
        setup.n2 = raw.n2.as_deref().map(matrix).transpose()?;
        if let Some([a, b, c]) = &raw.n4 {
            setup.n4 = Some([matrix(a)?, matrix(b)?, matrix(c)?]);
        }
        Ok(setup)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let src = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }
}

/// Numerical and truncation parameters shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub e_max: Rat,
    pub order: Rat,
    pub taus: Vec<Complex64>,
    pub tol: f64,
    pub seed: u64,
    /// Largest Fock truncation the characters suite will enumerate.
    pub max_states: usize,
}

pub const DEFAULT_SEED: u64 = 0x5eed_5eed;
pub const DEFAULT_MAX_STATES: usize = 50_000;

/// The five sample points used when no `--tau` is given.
pub fn default_taus() -> Vec<Complex64> {
    vec![
        Complex64::new(0.0, 1.0),
        Complex64::new(0.25, 0.75),
        Complex64::new(0.1, 0.5),
        Complex64::new(-1.0 / 3.0, 2.0),
        Complex64::new(0.6, 0.2),
    ]
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { e_max: Rat::new(7, 2), order: Rat::from(8), taus: default_taus(), tol: 1e-6, seed: DEFAULT_SEED, max_states: DEFAULT_MAX_STATES }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.e_max <= Rat::from(0) {
            return Err(CliError::Usage(format!("e_max must be positive, got {}", self.e_max)));
        }
        if self.order <= Rat::from(0) {
            return Err(CliError::Usage(format!("order must be positive, got {}", self.order)));
        }
        if let Some(t) = self.taus.iter().find(|t| t.im <= 0.0) {
            return Err(CliError::Usage(format!("tau must lie in the upper half plane, got {t}")));
        }
        Ok(())
    }

    /// Integer depth covering `order`.
    pub fn depth(&self) -> u32 {
        self.order.ceil().to_integer() as u32
    }
}

/// Parse a positive rational such as `7/2` or `3`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    Rat::from_str(s.trim()).map_err(|e| format!("invalid rational `{s}`: {e}"))
}

/// Parse `RE,IM` where each part is a decimal or `p/q`.
pub fn parse_tau(s: &str) -> Result<Complex64, String> {
    let part = |p: &str| -> Result<f64, String> {
        let p = p.trim();
        if let Some((a, b)) = p.split_once('/') {
            let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| p.to_string())?, b.trim().parse().map_err(|_| p.to_string())?);
            Ok(a / b)
        } else {
            p.parse().map_err(|_| p.to_string())
        }
    };
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected RE,IM, got `{s}`"))?;
    Ok(Complex64::new(part(re).map_err(|e| format!("invalid number `{e}`"))?, part(im).map_err(|e| format!("invalid number `{e}`"))?))
}
