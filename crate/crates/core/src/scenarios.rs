//! Built-in benchmark configurations and simulation setup.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::mesh::{project_topography_regions, BedRegion, Grid, Topography};
use crate::scheme::{BoundaryPolicy, CellArray};
use crate::state::{PhysicsParams, PrimitiveState};

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// Stable, CLI-visible names of the built-in scenarios.
pub const SCENARIO_NAMES: [&str; 7] = [
    "test1",
    "test2",
    "test3",
    "test4",
    "test5",
    "lake_at_rest",
    "ritter_drybed",
];

/// Bed shape before projection onto a grid.
#[derive(Debug, Clone, PartialEq)]
pub enum TopographySpec {
    /// Constant bed elevation.
    Flat(f64),
    /// Piecewise-constant regions, exactly averaged onto cells.
    Steps(Vec<BedRegion>),
    /// Seeded per-cell random steps drawn uniformly from [lo, hi].
    RandomSteps { seed: u64, lo: f64, hi: f64 },
}

/// Initial depth of a region: a direct depth, or a free-surface elevation
/// from which the bed is subtracted (clamped at dry).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DepthSpec {
    Depth(f64),
    Surface(f64),
}

/// Piecewise-constant initial condition over [x_start, x_end).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialRegion {
    pub x_start: f64,
    pub x_end: f64,
    pub depth: DepthSpec,
    pub u: f64,
}

/// Everything needed to run a simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    /// Domain length L (m).
    pub length: f64,
    /// Number of cells N.
    pub cell_count: usize,
    /// CFL number in (0, 1].
    pub cfl: f64,
    /// End time T (s).
    pub end_time: f64,
    pub topography: TopographySpec,
    pub initial: Vec<InitialRegion>,
    pub boundary: BoundaryPolicy,
    /// Interior snapshot times; t = 0 and t = T are always recorded.
    pub snapshot_times: Vec<f64>,
    pub physics: PhysicsParams,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |msg: String| Err(ConfigError::Invalid(msg));
        if !self.length.is_finite() || self.length <= 0.0 {
            return invalid(format!("domain length must be positive, got {}", self.length));
        }
        if self.cell_count < 2 {
            return invalid(format!("cell count must be at least 2, got {}", self.cell_count));
        }
        if !self.cfl.is_finite() || self.cfl <= 0.0 || self.cfl > 1.0 {
            return invalid(format!("CFL must lie in (0, 1], got {}", self.cfl));
        }
        if !self.end_time.is_finite() || self.end_time < 0.0 {
            return invalid(format!("end time must be nonnegative, got {}", self.end_time));
        }
        if !(self.physics.gravity > 0.0)
            || !(self.physics.eps_dry > 0.0)
            || !(self.physics.eps_speed > 0.0)
        {
            return invalid("gravity and thresholds must be positive".into());
        }
        if self.initial.is_empty() {
            return invalid("initial condition has no regions".into());
        }
        for r in &self.initial {
            if !r.x_start.is_finite() || !r.x_end.is_finite() || r.x_start >= r.x_end {
                return invalid(format!(
                    "initial region [{}, {}) is empty or not finite",
                    r.x_start, r.x_end
                ));
            }
            if !r.u.is_finite() {
                return invalid("initial velocity must be finite".into());
            }
            match r.depth {
                DepthSpec::Depth(h) if !h.is_finite() || h < 0.0 => {
                    return invalid(format!("initial depth must be nonnegative, got {h}"));
                }
                DepthSpec::Surface(eta) if !eta.is_finite() => {
                    return invalid("initial surface elevation must be finite".into());
                }
                _ => {}
            }
        }
        if let TopographySpec::Steps(regions) = &self.topography {
            for r in regions {
                if !r.a.is_finite() || !r.x_start.is_finite() || !r.x_end.is_finite() {
                    return invalid("bed regions must be finite".into());
                }
            }
        }
        Ok(())
    }

    /// Project the configuration onto its grid: bed values and the initial
    /// cell states (each cell takes the region containing its center).
    pub fn build(&self) -> Result<(Grid, CellArray), ConfigError> {
        self.validate()?;
        let grid = Grid::new(self.length, self.cell_count)
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let topography = self.project_bed(&grid)?;

        let mut states = Vec::with_capacity(grid.cell_count());
        for j in 0..grid.cell_count() {
            let x = grid.cell_center(j);
            let region = self
                .initial
                .iter()
                .find(|r| r.x_start <= x && x < r.x_end)
                .ok_or_else(|| {
                    ConfigError::Invalid(format!("initial condition does not cover x = {x}"))
                })?;
            let a = topography.value(j);
            let h = match region.depth {
                DepthSpec::Depth(h) => h,
                DepthSpec::Surface(eta) => (eta - a).max(0.0),
            };
            let (h, q) = if h <= self.physics.eps_dry {
                (0.0, 0.0)
            } else {
                (h, h * region.u)
            };
            states.push(PrimitiveState::new(h, q));
        }
        let cells = CellArray::new(states, topography)
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok((grid, cells))
    }

    fn project_bed(&self, grid: &Grid) -> Result<Topography, ConfigError> {
        match &self.topography {
            TopographySpec::Flat(a) => {
                Topography::from_values(vec![*a; grid.cell_count()])
                    .map_err(|e| ConfigError::Invalid(e.to_string()))
            }
            TopographySpec::Steps(regions) => Ok(project_topography_regions(regions, grid)),
            TopographySpec::RandomSteps { seed, lo, hi } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let values = (0..grid.cell_count())
                    .map(|_| rng.gen_range(*lo..*hi))
                    .collect();
                Topography::from_values(values).map_err(|e| ConfigError::Invalid(e.to_string()))
            }
        }
    }
}

/// Built-in scenario by name; see [`SCENARIO_NAMES`].
pub fn builtin(name: &str) -> Result<SimulationConfig, ConfigError> {
    let dam_break = |h_left: f64, h_right: f64| {
        vec![
            InitialRegion {
                x_start: 0.0,
                x_end: 12.5,
                depth: DepthSpec::Depth(h_left),
                u: 0.0,
            },
            InitialRegion {
                x_start: 12.5,
                x_end: 25.0,
                depth: DepthSpec::Depth(h_right),
                u: 0.0,
            },
        ]
    };
    let step_bed = |a_left: f64, a_right: f64| {
        TopographySpec::Steps(vec![
            BedRegion { x_start: 0.0, x_end: 12.5, a: a_left },
            BedRegion { x_start: 12.5, x_end: 25.0, a: a_right },
        ])
    };
    let base = SimulationConfig {
        length: 25.0,
        cell_count: 1000,
        cfl: 0.8,
        end_time: 1.2,
        topography: TopographySpec::Flat(0.0),
        initial: dam_break(3.0, 4.0),
        boundary: BoundaryPolicy::Transmissive,
        snapshot_times: Vec::new(),
        physics: PhysicsParams::default(),
    };

    let config = match name {
        "test1" => base,
        "test2" => SimulationConfig {
            topography: step_bed(2.0, 0.0),
            ..base
        },
        "test3" => SimulationConfig {
            topography: step_bed(4.0, 0.0),
            cfl: 0.6,
            ..base
        },
        "test4" => SimulationConfig {
            cell_count: 500,
            cfl: 0.4,
            end_time: 2.0,
            topography: step_bed(0.0, 1.0),
            initial: dam_break(1.5, 0.0),
            ..base
        },
        "test5" => SimulationConfig {
            cell_count: 500,
            cfl: 0.4,
            end_time: 3.0,
            // rectangular obstacle rising above the 0.1 m ponds
            topography: TopographySpec::Steps(vec![
                BedRegion { x_start: 0.0, x_end: 10.5, a: 0.0 },
                BedRegion { x_start: 10.5, x_end: 14.5, a: 0.2 },
                BedRegion { x_start: 14.5, x_end: 25.0, a: 0.0 },
            ]),
            initial: vec![
                InitialRegion {
                    x_start: 0.0,
                    x_end: 7.5,
                    depth: DepthSpec::Depth(1.0),
                    u: 0.0,
                },
                InitialRegion {
                    x_start: 7.5,
                    x_end: 10.5,
                    depth: DepthSpec::Surface(0.1),
                    u: 0.0,
                },
                InitialRegion {
                    x_start: 10.5,
                    x_end: 14.5,
                    depth: DepthSpec::Depth(0.0),
                    u: 0.0,
                },
                InitialRegion {
                    x_start: 14.5,
                    x_end: 25.0,
                    depth: DepthSpec::Surface(0.1),
                    u: 0.0,
                },
            ],
            ..base
        },
        "lake_at_rest" => SimulationConfig {
            cell_count: 200,
            end_time: 8.0,
            topography: TopographySpec::RandomSteps {
                seed: 0x5eed_1a4e,
                lo: 0.0,
                hi: 2.0,
            },
            initial: vec![InitialRegion {
                x_start: 0.0,
                x_end: 25.0,
                depth: DepthSpec::Surface(5.0),
                u: 0.0,
            }],
            boundary: BoundaryPolicy::Reflective,
            ..base
        },
        "ritter_drybed" => SimulationConfig {
            cell_count: 500,
            cfl: 0.4,
            end_time: 1.0,
            initial: dam_break(1.5, 0.0),
            ..base
        },
        other => return Err(ConfigError::UnknownScenario(other.to_string())),
    };
    Ok(config)
}
