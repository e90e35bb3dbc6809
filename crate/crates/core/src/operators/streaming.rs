// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! Streaming with periodic wrap and halfway bounce-back.
//!
//! Walls sit half a link beyond the outermost nodes. A population whose pull
//! source `x − e_i` falls behind a wall is replaced by the opposite
//! population of the same node, so streaming stays a permutation. The
//! momentum a moving wall imparts is affine and lives in
//! [`moving_wall_correction`](super::moving_wall_correction).

use serde::Serialize;

use super::LbOperator;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::lattice::{LatticeModel, Q};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum EdgeKind {
    Periodic,
    /// Tangential wall velocity and wall density.
    Wall {
        velocity: [f64; 2],
        density: f64,
    },
}

impl EdgeKind {
    pub fn stationary_wall() -> Self {
        EdgeKind::Wall {
            velocity: [0.0, 0.0],
            density: 1.0,
        }
    }

    pub fn moving_wall(velocity: [f64; 2]) -> Self {
        EdgeKind::Wall {
            velocity,
            density: 1.0,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, EdgeKind::Periodic)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    Left,
    Right,
    Bottom,
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BcSpec {
    pub left: EdgeKind,
    pub right: EdgeKind,
    pub bottom: EdgeKind,
    pub top: EdgeKind,
}

impl BcSpec {
    pub fn periodic() -> Self {
        BcSpec {
            left: EdgeKind::Periodic,
            right: EdgeKind::Periodic,
            bottom: EdgeKind::Periodic,
            top: EdgeKind::Periodic,
        }
    }

    /// Periodic in x, walls at bottom and top. The top wall moves with
    /// `(top_speed, 0)`.
    pub fn channel(top_speed: f64) -> Self {
        BcSpec {
            left: EdgeKind::Periodic,
            right: EdgeKind::Periodic,
            bottom: EdgeKind::stationary_wall(),
            top: EdgeKind::moving_wall([top_speed, 0.0]),
        }
    }

    /// Closed box with a lid moving at `(lid_speed, 0)`.
    pub fn cavity(lid_speed: f64) -> Self {
        BcSpec {
            left: EdgeKind::stationary_wall(),
            right: EdgeKind::stationary_wall(),
            bottom: EdgeKind::stationary_wall(),
            top: EdgeKind::moving_wall([lid_speed, 0.0]),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.left.is_periodic() != self.right.is_periodic() {
            return Err(Error::InvalidBoundary(
                "left and right edges must both be periodic or both walls".into(),
            ));
        }
        if self.bottom.is_periodic() != self.top.is_periodic() {
            return Err(Error::InvalidBoundary(
                "bottom and top edges must both be periodic or both walls".into(),
            ));
        }
        for e in [self.left, self.right, self.bottom, self.top] {
            if let EdgeKind::Wall { velocity, density } = e {
                if !(velocity[0].is_finite() && velocity[1].is_finite() && density.is_finite()) {
                    return Err(Error::InvalidBoundary("non-finite wall parameters".into()));
                }
            }
        }
        Ok(())
    }

    pub fn edge(&self, edge: Edge) -> EdgeKind {
        match edge {
            Edge::Left => self.left,
            Edge::Right => self.right,
            Edge::Bottom => self.bottom,
            Edge::Top => self.top,
        }
    }

    pub fn has_walls(&self) -> bool {
        !self.left.is_periodic() || !self.bottom.is_periodic()
    }

    pub fn has_moving_wall(&self) -> bool {
        [self.left, self.right, self.bottom, self.top]
            .iter()
            .any(|e| matches!(e, EdgeKind::Wall { velocity, .. } if velocity != &[0.0, 0.0]))
    }
}

/// Where the population `(x, y, i)` comes from during streaming.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PullSource {
    Site {
        x: usize,
        y: usize,
    },
    /// Bounced off the listed walls (at most two, at corners).
    Wall {
        first: Edge,
        second: Option<Edge>,
    },
}

pub(crate) fn pull_source(
    g: &GridSpec,
    bc: &BcSpec,
    lat: &LatticeModel,
    x: usize,
    y: usize,
    i: usize,
) -> PullSource {
    let [ex, ey] = lat.velocities[i];
    let (sx, crossed_x) = axis_source(x as i64 - ex, g.nx, Edge::Left, Edge::Right, bc);
    let (sy, crossed_y) = axis_source(y as i64 - ey, g.ny, Edge::Bottom, Edge::Top, bc);
    match (crossed_x, crossed_y) {
        (None, None) => PullSource::Site { x: sx, y: sy },
        (Some(a), b) => PullSource::Wall {
            first: a,
            second: b,
        },
        (None, Some(b)) => PullSource::Wall {
            first: b,
            second: None,
        },
    }
}

fn axis_source(s: i64, n: usize, low: Edge, high: Edge, bc: &BcSpec) -> (usize, Option<Edge>) {
    let n = n as i64;
    let crossed = if s < 0 {
        Some(low)
    } else if s >= n {
        Some(high)
    } else {
        None
    };
    match crossed {
        None => (s as usize, None),
        Some(edge) if bc.edge(edge).is_periodic() => (s.rem_euclid(n) as usize, None),
        Some(edge) => (0, Some(edge)),
    }
}

/// Streaming and boundary conditions as one permutation.
pub fn build_streaming_operator(
    g: &GridSpec,
    bc: &BcSpec,
    lat: &LatticeModel,
) -> Result<LbOperator> {
    bc.validate()?;
    let mut map: Vec<usize> = (0..g.padded_len()).collect();
    for i in 1..Q {
        for y in 0..g.ny {
            for x in 0..g.nx {
                let row = g.index_unchecked(x, y, i);
                map[row] = match pull_source(g, bc, lat, x, y, i) {
                    PullSource::Site { x: sx, y: sy } => g.index_unchecked(sx, sy, i),
                    PullSource::Wall { .. } => g.index_unchecked(x, y, lat.opposite[i]),
                };
            }
        }
    }
    LbOperator::permutation(map)
}
