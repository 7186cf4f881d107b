//! Godunov-type finite-volume time integration.
//!
//! Every step solves one interface problem per interface and updates each
//! cell from the flux at 0⁻ of its right interface and the flux at 0⁺ of
//! its left interface. The two fluxes differ only across bed jumps, which
//! is exactly how the topography source term enters the scheme.

use thiserror::Error;

use crate::mesh::{Grid, MeshError, Topography};
use crate::riemann;
use crate::scenarios::{ConfigError, SimulationConfig};
use crate::state::{FluxVector, PhysicsParams, PrimitiveState};

/// Depths below this are considered roundoff noise; anything more negative
/// is a genuine failure of the update.
const NEGATIVE_DEPTH_TOLERANCE: f64 = -1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SchemeError {
    #[error("every cell is dry; no wave speed bounds the time step")]
    AllDry,
    #[error("blow-up in cell {cell} at step {step} (t = {time} s)")]
    BlowUp { cell: usize, step: usize, time: f64 },
}

#[derive(Debug, Error, PartialEq)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Ghost-cell construction at the two domain ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryPolicy {
    /// Zero-gradient copy of the edge cell.
    Transmissive,
    /// Edge cell with the discharge negated (solid wall).
    Reflective,
}

/// Per-cell states together with the bed they sit on.
#[derive(Debug, Clone, PartialEq)]
pub struct CellArray {
    pub states: Vec<PrimitiveState>,
    pub topography: Topography,
}

impl CellArray {
    pub fn new(states: Vec<PrimitiveState>, topography: Topography) -> Result<Self, MeshError> {
        if states.len() != topography.len() {
            return Err(MeshError::LengthMismatch {
                got: topography.len(),
                expected: states.len(),
            });
        }
        Ok(Self { states, topography })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn total_mass(&self, dx: f64) -> f64 {
        self.states.iter().map(|w| w.h * dx).sum()
    }

    pub fn min_depth(&self) -> f64 {
        self.states.iter().map(|w| w.h).fold(f64::INFINITY, f64::min)
    }

    /// Largest |u| + c over wet cells; `None` when everything is dry.
    pub fn max_wave_speed(&self, params: &PhysicsParams) -> Option<f64> {
        self.states
            .iter()
            .filter(|w| !w.is_dry(params))
            .map(|w| w.velocity(params).abs() + w.celerity(params))
            .fold(None, |acc, s| Some(acc.map_or(s, |m: f64| m.max(s))))
    }
}

/// Record of one accepted step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDiagnostics {
    /// Time step taken (s).
    pub dt: f64,
    /// Cell wave-speed bound |u| + c after the step (m/s).
    pub max_wave_speed: f64,
    /// Total water volume per unit width (m²).
    pub total_mass: f64,
    /// Smallest depth after the step (m).
    pub min_depth: f64,
}

/// CFL-bounded time step, clamped so the step lands exactly on
/// `time_remaining` when within reach of it.
pub fn compute_dt(
    cells: &CellArray,
    cfl: f64,
    dx: f64,
    params: &PhysicsParams,
    time_remaining: f64,
) -> Result<f64, SchemeError> {
    let s_max = cells.max_wave_speed(params).ok_or(SchemeError::AllDry)?;
    let dt = cfl * dx / s_max;
    Ok(if dt < time_remaining { dt } else { time_remaining })
}

/// Ghost states (state, bed) just outside each end of the domain.
pub fn apply_boundary(
    cells: &CellArray,
    policy: BoundaryPolicy,
) -> ((PrimitiveState, f64), (PrimitiveState, f64)) {
    let first = cells.states[0];
    let last = cells.states[cells.len() - 1];
    let a_first = cells.topography.value(0);
    let a_last = cells.topography.value(cells.len() - 1);
    match policy {
        BoundaryPolicy::Transmissive => ((first, a_first), (last, a_last)),
        BoundaryPolicy::Reflective => (
            (PrimitiveState::new(first.h, -first.q), a_first),
            (PrimitiveState::new(last.h, -last.q), a_last),
        ),
    }
}

/// One forward-Euler update of all cells from two-sided interface fluxes.
///
/// `dt` must satisfy the CFL bound for the current cells. Depths that come
/// out below the dry threshold are flushed to exactly dry; depths below
/// the roundoff tolerance or non-finite values abort the step.
pub fn step(
    cells: &CellArray,
    dt: f64,
    dx: f64,
    policy: BoundaryPolicy,
    params: &PhysicsParams,
) -> Result<(CellArray, StepDiagnostics), SchemeError> {
    let n = cells.len();
    let (ghost_l, ghost_r) = apply_boundary(cells, policy);

    // interface i separates cell i-1 from cell i; 0 and n use ghosts
    let mut flux_minus = vec![FluxVector::ZERO; n + 1];
    let mut flux_plus = vec![FluxVector::ZERO; n + 1];
    for i in 0..=n {
        let (w_l, a_l) = if i == 0 {
            ghost_l
        } else {
            (cells.states[i - 1], cells.topography.value(i - 1))
        };
        let (w_r, a_r) = if i == n {
            ghost_r
        } else {
            (cells.states[i], cells.topography.value(i))
        };
        let fan = riemann::solve(w_l, a_l, w_r, a_r, params).map_err(|_| SchemeError::BlowUp {
            cell: i.min(n - 1),
            step: 0,
            time: 0.0,
        })?;
        flux_minus[i] = fan.flux_l;
        flux_plus[i] = fan.flux_r;
    }

    let ratio = dt / dx;
    let mut next = Vec::with_capacity(n);
    for j in 0..n {
        let w = cells.states[j];
        let mut h = w.h - ratio * (flux_minus[j + 1].mass - flux_plus[j].mass);
        let mut q = w.q - ratio * (flux_minus[j + 1].momentum - flux_plus[j].momentum);
        if !h.is_finite() || !q.is_finite() || h < NEGATIVE_DEPTH_TOLERANCE {
            return Err(SchemeError::BlowUp {
                cell: j,
                step: 0,
                time: 0.0,
            });
        }
        if h < params.eps_dry {
            h = 0.0;
            q = 0.0;
        }
        next.push(PrimitiveState::new(h, q));
    }

    let out = CellArray {
        states: next,
        topography: cells.topography.clone(),
    };
    let diag = StepDiagnostics {
        dt,
        max_wave_speed: out.max_wave_speed(params).unwrap_or(0.0),
        total_mass: out.total_mass(dx),
        min_depth: out.min_depth(),
    };
    Ok((out, diag))
}

/// One recorded instant of a run.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub time: f64,
    pub states: Vec<PrimitiveState>,
}

/// Full simulation output: grid, bed, snapshots, per-step diagnostics.
#[derive(Debug, Clone)]
pub struct SnapshotSeries {
    pub grid: Grid,
    pub topography: Topography,
    pub snapshots: Vec<Snapshot>,
    pub diagnostics: Vec<StepDiagnostics>,
}

/// Run a configuration to its end time. Snapshots are recorded at t = 0,
/// at every configured interior time, and at t = T. An all-dry domain
/// simply persists through the requested times.
pub fn run(config: &SimulationConfig) -> Result<SnapshotSeries, RunError> {
    let (grid, mut cells) = config.build()?;
    let params = config.physics;
    let dx = grid.dx();
    let end = config.end_time;

    let mut events: Vec<f64> = config
        .snapshot_times
        .iter()
        .copied()
        .filter(|t| t.is_finite() && *t > 0.0 && *t < end)
        .collect();
    events.push(end);
    events.sort_by(f64::total_cmp);
    events.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);

    let mut snapshots = vec![Snapshot {
        time: 0.0,
        states: cells.states.clone(),
    }];
    let mut diagnostics = Vec::new();
    let mut t = 0.0;
    let mut step_index: usize = 0;

    for &event in &events {
        if event <= t {
            continue;
        }
        loop {
            let remaining = event - t;
            if remaining <= 0.0 {
                break;
            }
            match compute_dt(&cells, config.cfl, dx, &params, remaining) {
                Ok(dt) => {
                    // a step too small to advance time means the wave speeds blew up
                    if !(dt > 0.0) || t + dt == t {
                        return Err(SchemeError::BlowUp {
                            cell: 0,
                            step: step_index,
                            time: t,
                        }
                        .into());
                    }
                    let (advanced, diag) =
                        step(&cells, dt, dx, config.boundary, &params).map_err(|e| match e {
                            SchemeError::BlowUp { cell, .. } => SchemeError::BlowUp {
                                cell,
                                step: step_index,
                                time: t,
                            },
                            other => other,
                        })?;
                    cells = advanced;
                    diagnostics.push(diag);
                    step_index += 1;
                    t = if dt >= remaining { event } else { t + dt };
                }
                Err(SchemeError::AllDry) => {
                    t = event;
                    break;
                }
                Err(other) => return Err(other.into()),
            }
        }
        snapshots.push(Snapshot {
            time: event,
            states: cells.states.clone(),
        });
    }

    Ok(SnapshotSeries {
        grid,
        topography: cells.topography,
        snapshots,
        diagnostics,
    })
}
