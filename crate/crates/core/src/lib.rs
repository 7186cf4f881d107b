//! One-dimensional Saint-Venant (shallow water) finite-volume engine.
//!
//! The solver advances depth/discharge cell averages with a Godunov-type
//! scheme whose interface fluxes come from a linearized Riemann solver
//! formulated in celerity-velocity variables `(2c, u, a)`. Wave-speed
//! corrections keep the intermediate celerities nonnegative, a stationary
//! wave carries the bed jump (so lake-at-rest states are preserved), and
//! dry cells are handled by dedicated wave-speed estimates.
//!
//! Modules:
//! - [`state`]: state vectors, variable changes, physical flux
//! - [`mesh`]: uniform grid and bed projection
//! - [`riemann`]: the interface solver
//! - [`scheme`]: CFL time stepping and the simulation loop
//! - [`oracle`]: exact flat-bottom dam-break solutions for validation
//! - [`scenarios`]: built-in benchmark configurations

pub mod mesh;
pub mod oracle;
pub mod riemann;
pub mod scenarios;
pub mod scheme;
pub mod state;

pub use mesh::{BedRegion, Grid, Topography};
pub use scenarios::{DepthSpec, InitialRegion, SimulationConfig, TopographySpec};
pub use scheme::{BoundaryPolicy, CellArray, Snapshot, SnapshotSeries, StepDiagnostics};
pub use state::{CelerityState, FluxVector, PhysicsParams, PrimitiveState};
