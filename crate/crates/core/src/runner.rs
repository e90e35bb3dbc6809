// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Runs a benchmark case end to end and scores it.

use std::time::Instant;

use nalgebra::Vector2;
use serde::Serialize;

use crate::config::{CaseConfig, CaseId, Engine};
use crate::error::{Error, Result};
use crate::factory::decompose_operator;
use crate::gates::{gate_count_estimate, GateEstimate};
use crate::grid::GridSpec;
use crate::lattice::{d2q9, LatticeModel};
use crate::operators::{
    advection_diffusion_kernel, build_collision_operator, build_streaming_operator,
    collision_kernel, forcing_vector, moments, moving_wall_correction, AffineCorrection, BcSpec,
    CollisionKernel, CorrectionKind, LbOperator,
};
use crate::oracle::{
    analytic_couette, analytic_gaussian_periodic, analytic_poiseuille, l2_relative_error,
    ClassicalStepper, EdfForm, EquilibriumModel, FlowFields, GaussianForm, GaussianParams,
};
use crate::qstate::{sample_counts, QuantumStepper};

/// Operators, affine terms and initial state of a case.
#[derive(Clone, Debug)]
pub struct CaseSetup {
    pub config: CaseConfig,
    pub lattice: LatticeModel,
    pub bc: BcSpec,
    pub kernel: CollisionKernel,
    pub collision: LbOperator,
    pub streaming: LbOperator,
    pub corrections: Vec<AffineCorrection>,
    pub initial: FlowFields,
}

impl CaseSetup {
    pub fn new(config: &CaseConfig) -> Result<Self> {
        let lat = d2q9();
        let g = config.grid;
        let bc = match config.case {
            CaseId::Ade => BcSpec::periodic(),
            CaseId::Poiseuille => BcSpec::channel(0.0),
            CaseId::Couette => BcSpec::channel(config.wall_speed),
            CaseId::Cavity => BcSpec::cavity(config.wall_speed),
        };
        let kernel = match config.case {
            CaseId::Ade => {
                let [ux, uy] = config.advection;
                advection_diffusion_kernel(&lat, config.tau, Vector2::new(ux, uy))?
            }
            _ => collision_kernel(&lat, config.tau)?,
        };
        let collision = build_collision_operator(&kernel, &g);
        let streaming = build_streaming_operator(&g, &bc, &lat)?;
        let corrections: Vec<AffineCorrection> = [
            forcing_vector(&g, &lat, config.force),
            moving_wall_correction(&g, &bc, &lat),
        ]
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
        let initial = match config.case {
            CaseId::Ade => {
                let p = gaussian_params(config);
                let u = config.advection;
                FlowFields::from_equilibrium(g, &lat, |x, y| {
                    let c = analytic_gaussian_periodic([x as f64, y as f64], 0.0, &p, extent(&g));
                    (c, u)
                })
            }
            _ => FlowFields::at_rest(g, &lat),
        };
        Ok(CaseSetup {
            config: config.clone(),
            lattice: lat,
            bc,
            kernel,
            collision,
            streaming,
            corrections,
            initial,
        })
    }

    pub fn grid(&self) -> GridSpec {
        self.config.grid
    }

    pub fn quantum_stepper(&self) -> Result<QuantumStepper> {
        QuantumStepper::new(
            self.grid(),
            decompose_operator(&self.collision)?,
            decompose_operator(&self.streaming)?,
            &self.corrections,
        )
    }

    pub fn classical_stepper(&self, form: EdfForm) -> ClassicalStepper {
        let model = match self.config.case {
            CaseId::Ade => EquilibriumModel::AdvectionDiffusion {
                velocity: self.config.advection,
            },
            _ => EquilibriumModel::Fluid,
        };
        ClassicalStepper {
            grid: self.grid(),
            bc: self.bc,
            lat: self.lattice.clone(),
            tau: self.config.tau,
            model,
            form,
            force: self.config.force,
        }
    }

    /// `S (C df + forcing) + wall term` with plain operator products.
    pub fn matrix_step(&self, df: &[f64]) -> Result<Vec<f64>> {
        let g = self.grid();
        let mut post = self.collision.apply(&g.pad(df))?;
        for c in self
            .corrections
            .iter()
            .filter(|c| c.kind == CorrectionKind::Forcing)
        {
            for (p, v) in post.iter_mut().zip(&c.values) {
                *p += v;
            }
        }
        let mut next = self.streaming.apply(&post)?;
        next.truncate(g.n_f());
        for c in self
            .corrections
            .iter()
            .filter(|c| c.kind == CorrectionKind::MovingWall)
        {
            for (p, v) in next.iter_mut().zip(&c.values) {
                *p += v;
            }
        }
        Ok(next)
    }
}

fn extent(g: &GridSpec) -> [f64; 2] {
    [g.nx as f64, g.ny as f64]
}

pub fn gaussian_params(cfg: &CaseConfig) -> GaussianParams {
    GaussianParams {
        c0: cfg.c0,
        sigma0: cfg.sigma0,
        diffusion: cfg.transport,
        velocity: cfg.advection,
        x0: [cfg.grid.nx as f64 / 2.0, cfg.grid.ny as f64 / 2.0],
        form: GaussianForm::Consistent,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplingSummary {
    pub shots: u64,
    pub seed: u64,
    /// Largest `|count/shots − |amp|²|` over all basis states.
    pub max_probability_error: f64,
    /// Three standard errors of the most likely outcome.
    pub expected_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub case: CaseId,
    pub engine: Engine,
    pub nx: usize,
    pub ny: usize,
    pub n_q: usize,
    pub n_qa: usize,
    pub steps: usize,
    pub tau: f64,
    pub force: [f64; 2],
    /// What `l2_error` is measured against.
    pub reference: &'static str,
    pub l2_error: f64,
    /// Ade only: the same norm against the hill with exponent denominator
    /// `2σ₀² + σ_D²`.
    pub l2_error_printed_formula: Option<f64>,
    /// Largest per-step max-norm deviation from the classical linear
    /// stepper, relative to its max-norm (quantum engine only).
    pub max_deviation: Option<f64>,
    pub tolerance: f64,
    pub alpha_collision: Option<f64>,
    pub alpha_streaming: Option<f64>,
    pub mass_initial: f64,
    pub mass_final: f64,
    pub seconds_per_step: f64,
    pub gates: GateEstimate,
    pub sampling: Option<SamplingSummary>,
    pub status: Status,
}

/// One-dimensional profile: coordinate, engine values, reference values.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub file: &'static str,
    pub axis: &'static str,
    pub quantity: &'static str,
    /// Column suffix naming the reference, e.g. `analytic`.
    pub reference_tag: &'static str,
    pub coords: Vec<f64>,
    pub values: Vec<f64>,
    pub reference: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: RunReport,
    pub snapshots: Vec<(usize, FlowFields)>,
    pub profiles: Vec<Profile>,
    pub streaming: LbOperator,
}

impl RunOutput {
    pub fn final_fields(&self) -> &FlowFields {
        &self
            .snapshots
            .last()
            .expect("final snapshot is always kept")
            .1
    }
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Evolves `df` for `steps` steps with `step`, recording snapshots.
fn evolve(
    df: &[f64],
    steps: usize,
    every: Option<usize>,
    g: GridSpec,
    mut step: impl FnMut(usize, &[f64]) -> Result<Vec<f64>>,
) -> Result<Vec<(usize, FlowFields)>> {
    let mut snaps = Vec::new();
    let mut cur = df.to_vec();
    for t in 1..=steps {
        cur = step(t, &cur)?;
        if cur.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if t == steps || every.is_some_and(|k| t % k == 0) {
            snaps.push((
                t,
                FlowFields {
                    grid: g,
                    df: cur.clone(),
                },
            ));
        }
    }
    Ok(snaps)
}

pub fn run_case(cfg: &CaseConfig) -> Result<RunOutput> {
    let setup = CaseSetup::new(cfg)?;
    let g = cfg.grid;
    let lat = &setup.lattice;
    let df0 = setup.initial.df.clone();

    let mut max_dev = None;
    let mut alphas = (None, None);
    let mut sampling = None;
    let started;
    let snapshots = match cfg.engine {
        Engine::Quantum => {
            let q = setup.quantum_stepper()?;
            alphas = (Some(q.collision().alpha), Some(q.streaming().alpha));
            let linear = setup.classical_stepper(EdfForm::Linear);
            let mut shadow = df0.clone();
            let mut worst: f64 = 0.0;
            let mut last_input = df0.clone();
            started = Instant::now();
            let snaps = evolve(&df0, cfg.steps, cfg.output_every, g, |_, df| {
                let next = q.step(df)?;
                shadow = linear.step(&shadow);
                let diff: Vec<f64> = next.iter().zip(&shadow).map(|(a, b)| a - b).collect();
                worst = worst.max(max_norm(&diff) / max_norm(&shadow).max(f64::MIN_POSITIVE));
                last_input = df.to_vec();
                Ok(next)
            })?;
            max_dev = Some(worst);
            if let Some(shots) = cfg.shots {
                let state = q.evolve(&last_input)?;
                let counts = sample_counts(&state, shots, cfg.seed)?;
                let mut err: f64 = 0.0;
                let mut pmax: f64 = 0.0;
                for (c, a) in counts.iter().zip(&state.amps) {
                    let p = a.norm_sqr();
                    pmax = pmax.max(p);
                    err = err.max((*c as f64 / shots as f64 - p).abs());
                }
                sampling = Some(SamplingSummary {
                    shots,
                    seed: cfg.seed,
                    max_probability_error: err,
                    expected_bound: 3.0 * (pmax * (1.0 - pmax) / shots as f64).sqrt(),
                });
            }
            snaps
        }
        Engine::ClassicalLinear | Engine::ClassicalFull => {
            let form = if cfg.engine == Engine::ClassicalLinear {
                EdfForm::Linear
            } else {
                EdfForm::Full
            };
            let s = setup.classical_stepper(form);
            started = Instant::now();
            evolve(&df0, cfg.steps, cfg.output_every, g, |_, df| Ok(s.step(df)))?
        }
    };
    let seconds_per_step = started.elapsed().as_secs_f64() / cfg.steps as f64;
    let final_df = &snapshots.last().expect("steps > 0").1.df;

    let (reference, profiles) = score(&setup, final_df)?;
    let l2_against = |form: GaussianForm| -> Result<f64> {
        let p = GaussianParams {
            form,
            ..gaussian_params(cfg)
        };
        let m = moments(&g, lat, final_df);
        let exact: Vec<f64> = (0..g.n_g())
            .map(|s| {
                let (x, y) = (s % g.nx, s / g.nx);
                analytic_gaussian_periodic([x as f64, y as f64], cfg.steps as f64, &p, extent(&g))
            })
            .collect();
        l2_relative_error(&exact, &m.rho)
    };
    let (l2_error, l2_error_printed_formula) = match cfg.case {
        CaseId::Ade => (
            l2_against(GaussianForm::Consistent)?,
            Some(l2_against(GaussianForm::Printed)?),
        ),
        _ => {
            let (mut r, mut v) = (Vec::new(), Vec::new());
            for p in &profiles {
                r.extend_from_slice(&p.reference);
                v.extend_from_slice(&p.values);
            }
            (l2_relative_error(&r, &v)?, None)
        }
    };

    let status = match max_dev {
        Some(d) if !(d <= cfg.tolerance) => Status::Failed,
        _ => Status::Pass,
    };
    let report = RunReport {
        case: cfg.case,
        engine: cfg.engine,
        nx: g.nx,
        ny: g.ny,
        n_q: g.n_q(),
        n_qa: g.n_qa(),
        steps: cfg.steps,
        tau: cfg.tau,
        force: cfg.force,
        reference,
        l2_error,
        l2_error_printed_formula,
        max_deviation: max_dev,
        tolerance: cfg.tolerance,
        alpha_collision: alphas.0,
        alpha_streaming: alphas.1,
        mass_initial: df0.iter().sum(),
        mass_final: final_df.iter().sum(),
        seconds_per_step,
        gates: gate_count_estimate(g.n_qa() as u32)?,
        sampling,
        status,
    };
    Ok(RunOutput {
        report,
        snapshots,
        profiles,
        streaming: setup.streaming,
    })
}

/// Profiles and reference for the final distribution.
fn score(setup: &CaseSetup, df: &[f64]) -> Result<(&'static str, Vec<Profile>)> {
    let cfg = &setup.config;
    let g = cfg.grid;
    let lat = &setup.lattice;
    let m = moments(&g, lat, df);
    let (ux, uy) = (m.ux(), m.uy());
    let at = |x: usize, y: usize| x + y * g.nx;
    let h = cfg.height();
    Ok(match cfg.case {
        CaseId::Ade => {
            let peak = (0..g.n_g())
                .max_by(|&a, &b| m.rho[a].total_cmp(&m.rho[b]))
                .unwrap_or(0);
            let row = peak / g.nx;
            let p = gaussian_params(cfg);
            let coords: Vec<f64> = (0..g.nx).map(|x| x as f64).collect();
            let reference = coords
                .iter()
                .map(|&x| {
                    analytic_gaussian_periodic([x, row as f64], cfg.steps as f64, &p, extent(&g))
                })
                .collect();
            let values = (0..g.nx).map(|x| m.rho[at(x, row)]).collect();
            (
                "analytic Gaussian hill over the whole field",
                vec![Profile {
                    file: "profile.csv",
                    axis: "x",
                    quantity: "c",
                    reference_tag: "analytic",
                    coords,
                    values,
                    reference,
                }],
            )
        }
        CaseId::Poiseuille | CaseId::Couette => {
            let x = g.nx / 2;
            let mu = cfg.transport;
            // A body force F acts like a pressure gradient G = −F.
            let grad = -cfg.force[0];
            let coords: Vec<f64> = (0..g.ny).map(|y| y as f64 + 0.5).collect();
            let reference = coords
                .iter()
                .map(|&y| match cfg.case {
                    CaseId::Poiseuille => analytic_poiseuille(y, grad, mu, h),
                    _ => analytic_couette(y, cfg.wall_speed, grad, mu, h),
                })
                .collect();
            let values = (0..g.ny).map(|y| ux[at(x, y)]).collect();
            (
                "analytic ux profile at x = nx/2",
                vec![Profile {
                    file: "profile.csv",
                    axis: "y",
                    quantity: "ux",
                    reference_tag: "analytic",
                    coords,
                    values,
                    reference,
                }],
            )
        }
        CaseId::Cavity => {
            // No closed form; the reference is the full-equilibrium stepper.
            let full = setup.classical_stepper(EdfForm::Full);
            let mut r = setup.initial.df.clone();
            for _ in 0..cfg.steps {
                r = full.step(&r);
            }
            let mr = moments(&g, lat, &r);
            let (rx, ry) = (mr.ux(), mr.uy());
            let (xc, yc) = (g.nx / 2, g.ny / 2);
            (
                "classical full-equilibrium centerlines",
                vec![
                    Profile {
                        file: "profile.csv",
                        axis: "y",
                        quantity: "ux",
                        reference_tag: "classical_full",
                        coords: (0..g.ny).map(|y| y as f64).collect(),
                        values: (0..g.ny).map(|y| ux[at(xc, y)]).collect(),
                        reference: (0..g.ny).map(|y| rx[at(xc, y)]).collect(),
                    },
                    Profile {
                        file: "profile_x.csv",
                        axis: "x",
                        quantity: "uy",
                        reference_tag: "classical_full",
                        coords: (0..g.nx).map(|x| x as f64).collect(),
                        values: (0..g.nx).map(|x| uy[at(x, yc)]).collect(),
                        reference: (0..g.nx).map(|x| ry[at(x, yc)]).collect(),
                    },
                ],
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RawConfig;

    fn cfg(case: CaseId, engine: Engine, steps: usize) -> CaseConfig {
        RawConfig {
            case: Some(case),
            engine: Some(engine),
            steps: Some(steps),
            ..RawConfig::default()
        }
        .resolve()
        .unwrap()
    }

    #[test]
    fn matrix_step_matches_loop_stepper() {
        for case in [
            CaseId::Ade,
            CaseId::Poiseuille,
            CaseId::Couette,
            CaseId::Cavity,
        ] {
            let s = CaseSetup::new(&cfg(case, Engine::Quantum, 1)).unwrap();
            let linear = s.classical_stepper(EdfForm::Linear);
            let mut df = s.initial.df.clone();
            for (k, v) in df.iter_mut().enumerate() {
                *v += 0.001 * ((k * 7) % 11) as f64;
            }
            let a = s.matrix_step(&df).unwrap();
            let b = linear.step(&df);
            let dev = a
                .iter()
                .zip(&b)
                .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            assert!(dev < 1e-14, "{case:?}: {dev}");
        }
    }

    #[test]
    fn short_quantum_run_passes() {
        let out = run_case(&cfg(CaseId::Couette, Engine::Quantum, 20)).unwrap();
        assert_eq!(out.report.status, Status::Pass);
        assert!(out.report.max_deviation.unwrap() < 1e-9);
        assert_eq!(out.snapshots.len(), 1);
    }

    #[test]
    fn tolerance_zero_can_fail() {
        let mut c = cfg(CaseId::Poiseuille, Engine::Quantum, 5);
        c.tolerance = 0.0;
        let out = run_case(&c).unwrap();
        // Floating-point round-off makes an exact match unlikely.
        if out.report.max_deviation.unwrap() > 0.0 {
            assert_eq!(out.report.status, Status::Failed);
        }
    }
}
