//! Uniform 1D grid and projection of bed profiles onto it.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeshError {
    #[error("cell count must be at least 2, got {0}")]
    TooFewCells(usize),
    #[error("domain length must be positive and finite, got {0}")]
    BadLength(f64),
    #[error("expected {expected} bed values, got {got}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("bed elevations must be finite")]
    NonFiniteBed,
}

/// Uniform subdivision of [0, L] into N cells of width dx = L/N.
///
/// Cell j spans [j·dx, (j+1)·dx] with center at (j + ½)·dx; interface i
/// sits at i·dx and separates cells i−1 and i.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    length: f64,
    cell_count: usize,
    dx: f64,
}

impl Grid {
    pub fn new(length: f64, cell_count: usize) -> Result<Self, MeshError> {
        if !length.is_finite() || length <= 0.0 {
            return Err(MeshError::BadLength(length));
        }
        if cell_count < 2 {
            return Err(MeshError::TooFewCells(cell_count));
        }
        Ok(Self {
            length,
            cell_count,
            dx: length / cell_count as f64,
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn cell_count(&self) -> usize {
        self.cell_count
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn cell_center(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.dx
    }

    pub fn interface(&self, i: usize) -> f64 {
        i as f64 * self.dx
    }

    pub fn cell_centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.cell_count).map(|j| self.cell_center(j))
    }
}

/// Piecewise-constant bed elevation, one value per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Topography {
    values: Vec<f64>,
}

impl Topography {
    pub fn flat(cell_count: usize) -> Self {
        Self {
            values: vec![0.0; cell_count],
        }
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self, MeshError> {
        if values.iter().any(|a| !a.is_finite()) {
            return Err(MeshError::NonFiniteBed);
        }
        Ok(Self { values })
    }

    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Constant bed elevation `a` over [x_start, x_end).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BedRegion {
    pub x_start: f64,
    pub x_end: f64,
    pub a: f64,
}

/// Project a bed profile onto the grid by midpoint sampling.
///
/// The midpoint rule reproduces the exact cell average for profiles that
/// are linear on each cell, and for piecewise-constant profiles whose
/// jumps fall on interfaces.
pub fn project_topography<F: Fn(f64) -> f64>(profile: F, grid: &Grid) -> Topography {
    Topography {
        values: grid.cell_centers().map(profile).collect(),
    }
}

/// Exact cell averages of a piecewise-constant profile given as regions.
///
/// Jumps need not align with interfaces; uncovered stretches count as
/// bed elevation zero.
pub fn project_topography_regions(regions: &[BedRegion], grid: &Grid) -> Topography {
    let dx = grid.dx();
    let values = (0..grid.cell_count())
        .map(|j| {
            let xl = grid.interface(j);
            let xr = grid.interface(j + 1);
            regions
                .iter()
                .map(|r| {
                    let overlap = (xr.min(r.x_end) - xl.max(r.x_start)).max(0.0);
                    r.a * overlap / dx
                })
                .sum()
        })
        .collect();
    Topography { values }
}
