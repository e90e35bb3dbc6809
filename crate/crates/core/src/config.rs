// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Case configuration.
//!
//! The file format is flat `key = value` lines; `#` starts a comment. Keys:
//!
//! | key            | meaning                                                   |
//! |----------------|-----------------------------------------------------------|
//! | `case`         | `ade`, `poiseuille`, `couette` or `cavity` (required)     |
//! | `nx`, `ny`     | grid size                                                 |
//! | `steps`        | number of time steps                                      |
//! | `tau`          | relaxation time (at most one of `tau`, `nu`, `diffusion`) |
//! | `nu`           | kinematic viscosity, `tau = 3 nu + 0.5`                   |
//! | `diffusion`    | diffusion coefficient (ade), `tau = 3 D + 0.5`            |
//! | `re`, `umax`   | Reynolds number and reference speed used to derive `nu`   |
//! | `fb_x`, `fb_y` | body force; `fb_x = auto` uses `8 nu umax / ny²`          |
//! | `uw`           | moving-wall speed (couette top wall, cavity lid)          |
//! | `adv_x`, `adv_y` | advection velocity (ade)                                |
//! | `c0`, `sigma0` | Gaussian hill amplitude and width (ade)                   |
//! | `engine`       | `quantum`, `classical-linear` or `classical-full`         |
//! | `out_dir`      | artifact directory                                        |
//! | `seed`, `shots`| measurement-sampling study of the final state             |
//! | `tolerance`    | max quantum-vs-classical deviation before FAILED          |
//! | `output_every` | snapshot interval for `fields.csv` (final step always)    |
//!
//! Unknown or repeated keys are errors.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Largest register (including the ancilla) accepted for a run.
pub const MAX_QUBITS: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    Ade,
    Poiseuille,
    Couette,
    Cavity,
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ade" => Ok(CaseId::Ade),
            "poiseuille" => Ok(CaseId::Poiseuille),
            "couette" => Ok(CaseId::Couette),
            "cavity" => Ok(CaseId::Cavity),
            _ => Err(Error::config(format!("unknown case `{s}`"))),
        }
    }
}

impl CaseId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseId::Ade => "ade",
            CaseId::Poiseuille => "poiseuille",
            CaseId::Couette => "couette",
            CaseId::Cavity => "cavity",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Quantum,
    ClassicalLinear,
    ClassicalFull,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantum" => Ok(Engine::Quantum),
            "classical-linear" => Ok(Engine::ClassicalLinear),
            "classical-full" => Ok(Engine::ClassicalFull),
            _ => Err(Error::config(format!("unknown engine `{s}`"))),
        }
    }
}

impl Engine {
    /// Short tag used in CSV column names.
    pub fn tag(&self) -> &'static str {
        match self {
            Engine::Quantum => "quantum",
            Engine::ClassicalLinear => "classical_linear",
            Engine::ClassicalFull => "classical_full",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ForceSpec {
    Auto,
    Value(f64),
}

/// Unresolved settings; `None` means "use the case default".
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawConfig {
    pub case: Option<CaseId>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub steps: Option<usize>,
    pub tau: Option<f64>,
    pub nu: Option<f64>,
    pub diffusion: Option<f64>,
    pub re: Option<f64>,
    pub umax: Option<f64>,
    pub fb_x: Option<ForceSpec>,
    pub fb_y: Option<f64>,
    pub uw: Option<f64>,
    pub adv_x: Option<f64>,
    pub adv_y: Option<f64>,
    pub c0: Option<f64>,
    pub sigma0: Option<f64>,
    pub engine: Option<Engine>,
    pub out_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub shots: Option<u64>,
    pub tolerance: Option<f64>,
    pub output_every: Option<usize>,
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::config(format!("invalid value `{v}` for `{key}`")))
}

impl FromStr for RawConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut raw = RawConfig::default();
        let mut seen = BTreeSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, v) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(Error::config(format!("duplicate key `{key}`")));
            }
            match key {
                "case" => raw.case = Some(v.parse()?),
                "nx" => raw.nx = Some(parse_value(key, v)?),
                "ny" => raw.ny = Some(parse_value(key, v)?),
                "steps" => raw.steps = Some(parse_value(key, v)?),
                "tau" => raw.tau = Some(parse_value(key, v)?),
                "nu" => raw.nu = Some(parse_value(key, v)?),
                "diffusion" => raw.diffusion = Some(parse_value(key, v)?),
                "re" => raw.re = Some(parse_value(key, v)?),
                "umax" => raw.umax = Some(parse_value(key, v)?),
                "fb_x" => {
                    raw.fb_x = Some(if v == "auto" {
                        ForceSpec::Auto
                    } else {
                        ForceSpec::Value(parse_value(key, v)?)
                    })
                }
                "fb_y" => raw.fb_y = Some(parse_value(key, v)?),
                "uw" => raw.uw = Some(parse_value(key, v)?),
                "adv_x" => raw.adv_x = Some(parse_value(key, v)?),
                "adv_y" => raw.adv_y = Some(parse_value(key, v)?),
                "c0" => raw.c0 = Some(parse_value(key, v)?),
                "sigma0" => raw.sigma0 = Some(parse_value(key, v)?),
                "engine" => raw.engine = Some(v.parse()?),
                "out_dir" => raw.out_dir = Some(PathBuf::from(v)),
                "seed" => raw.seed = Some(parse_value(key, v)?),
                "shots" => raw.shots = Some(parse_value(key, v)?),
                "tolerance" => raw.tolerance = Some(parse_value(key, v)?),
                "output_every" => raw.output_every = Some(parse_value(key, v)?),
                _ => return Err(Error::config(format!("unknown key `{key}`"))),
            }
        }
        Ok(raw)
    }
}

/// Fully resolved case parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseConfig {
    pub case: CaseId,
    pub grid: GridSpec,
    pub steps: usize,
    pub tau: f64,
    /// Viscosity (flows) or diffusion coefficient (ade): `(tau − 0.5) / 3`.
    pub transport: f64,
    pub force: [f64; 2],
    pub wall_speed: f64,
    pub advection: [f64; 2],
    pub c0: f64,
    pub sigma0: f64,
    pub engine: Engine,
    pub out_dir: Option<PathBuf>,
    pub seed: u64,
    pub shots: Option<u64>,
    pub tolerance: f64,
    pub output_every: Option<usize>,
}

impl CaseConfig {
    pub fn preset(case: CaseId) -> Self {
        RawConfig {
            case: Some(case),
            ..RawConfig::default()
        }
        .resolve()
        .expect("presets are valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        text.parse()
    }

    /// Characteristic length used for the channel height and `Re`.
    pub fn height(&self) -> f64 {
        self.grid.ny as f64
    }
}

impl FromStr for CaseConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.parse::<RawConfig>()?.resolve()
    }
}

impl RawConfig {
    pub fn resolve(&self) -> Result<CaseConfig> {
        let case = self.case.ok_or_else(|| Error::config("missing `case`"))?;
        let (nx, ny, steps) = match case {
            CaseId::Ade => (10, 10, 100),
            CaseId::Poiseuille => (3, 8, 500),
            CaseId::Couette => (7, 16, 900),
            CaseId::Cavity => (10, 10, 1000),
        };
        let grid = GridSpec::new(self.nx.unwrap_or(nx), self.ny.unwrap_or(ny))
            .map_err(|e| Error::config(e.to_string()))?;
        if grid.n_qa() > MAX_QUBITS {
            let dim = 1u128 << grid.n_qa();
            let bytes = dim * dim * 16;
            return Err(Error::config(format!(
                "{}x{} grid needs {} qubits (limit {MAX_QUBITS}); one dense unitary alone would take {:.1} GiB",
                grid.nx,
                grid.ny,
                grid.n_qa(),
                bytes as f64 / (1u64 << 30) as f64
            )));
        }
        let steps = self.steps.unwrap_or(steps);
        if steps == 0 {
            return Err(Error::config("`steps` must be positive"));
        }

        let explicit = [
            self.tau.is_some(),
            self.nu.is_some(),
            self.diffusion.is_some(),
        ];
        if explicit.iter().filter(|&&b| b).count() > 1 {
            return Err(Error::config(
                "give at most one of `tau`, `nu`, `diffusion`",
            ));
        }
        if self.diffusion.is_some() && case != CaseId::Ade {
            return Err(Error::config("`diffusion` only applies to the ade case"));
        }
        let re = self.re.unwrap_or(10.0);
        let umax = self.umax.unwrap_or(0.1);
        let wall_speed = match case {
            CaseId::Couette | CaseId::Cavity => self.uw.unwrap_or(0.1),
            _ => {
                if self.uw.is_some() {
                    return Err(Error::config(format!(
                        "`uw` does not apply to {}",
                        case.as_str()
                    )));
                }
                0.0
            }
        };
        let transport = if let Some(tau) = self.tau {
            (tau - 0.5) / 3.0
        } else if let Some(nu) = self.nu.or(self.diffusion) {
            nu
        } else {
            match case {
                CaseId::Ade => 0.005,
                CaseId::Poiseuille | CaseId::Couette => umax * grid.ny as f64 / re,
                CaseId::Cavity => wall_speed * grid.nx as f64 / re,
            }
        };
        let tau = self.tau.unwrap_or(3.0 * transport + 0.5);
        if !(tau > 0.5) || !tau.is_finite() {
            return Err(Error::config(format!(
                "relaxation time {tau} must exceed 0.5"
            )));
        }

        let h = grid.ny as f64;
        let auto_force = 8.0 * transport * umax / (h * h);
        let fb_x = match (self.fb_x, case) {
            (Some(ForceSpec::Auto), _) => auto_force,
            (Some(ForceSpec::Value(v)), _) => v,
            (None, CaseId::Poiseuille) => auto_force,
            (None, _) => 0.0,
        };
        let force = [fb_x, self.fb_y.unwrap_or(0.0)];
        if case == CaseId::Ade && force != [0.0, 0.0] {
            return Err(Error::config("body force does not apply to the ade case"));
        }

        let advection = if case == CaseId::Ade {
            [self.adv_x.unwrap_or(0.1), self.adv_y.unwrap_or(0.1)]
        } else {
            if self.adv_x.is_some() || self.adv_y.is_some() {
                return Err(Error::config("`adv_x`/`adv_y` only apply to the ade case"));
            }
            [0.0, 0.0]
        };
        let sigma0 = self.sigma0.unwrap_or(2.0);
        if !(sigma0 > 0.0) {
            return Err(Error::config("`sigma0` must be positive"));
        }
        let tolerance = self.tolerance.unwrap_or(1e-7);
        if !(tolerance >= 0.0) {
            return Err(Error::config("`tolerance` must be non-negative"));
        }
        if self.shots == Some(0) {
            return Err(Error::config("`shots` must be positive"));
        }
        if self.output_every == Some(0) {
            return Err(Error::config("`output_every` must be positive"));
        }
        Ok(CaseConfig {
            case,
            grid,
            steps,
            tau,
            transport,
            force,
            wall_speed,
            advection,
            c0: self.c0.unwrap_or(1.0),
            sigma0,
            engine: self.engine.unwrap_or(Engine::Quantum),
            out_dir: self.out_dir.clone(),
            seed: self.seed.unwrap_or(0),
            shots: self.shots,
            tolerance,
            output_every: self.output_every,
        })
    }
}
