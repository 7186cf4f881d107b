//! State vectors, changes of variables, and the physical flux.

/// Physical constants and numerical thresholds shared across the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicsParams {
    /// Gravitational acceleration g (m/s²).
    pub gravity: f64,
    /// Depths at or below this value are treated as exactly dry (m).
    pub eps_dry: f64,
    /// Wave speeds closer to zero than this are nudged away from zero
    /// before they enter a denominator (m/s).
    pub eps_speed: f64,
}

impl Default for PhysicsParams {
    fn default() -> Self {
        Self {
            gravity: 9.81,
            eps_dry: 1e-6,
            eps_speed: 1e-8,
        }
    }
}

/// Conserved pair on a cell: water depth and discharge per unit width.
///
/// Invariants: `h >= 0`, and a dry cell (`h = 0`) carries no discharge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveState {
    /// Water depth h (m).
    pub h: f64,
    /// Discharge q = h·u (m²/s).
    pub q: f64,
}

impl PrimitiveState {
    pub const DRY: Self = Self { h: 0.0, q: 0.0 };

    pub fn new(h: f64, q: f64) -> Self {
        Self { h, q }
    }

    /// Flow velocity u = q/h; zero on dry cells.
    pub fn velocity(&self, params: &PhysicsParams) -> f64 {
        if self.h > params.eps_dry {
            self.q / self.h
        } else {
            0.0
        }
    }

    /// Gravity-wave celerity c = sqrt(g·h); zero on dry cells.
    pub fn celerity(&self, params: &PhysicsParams) -> f64 {
        if self.h > params.eps_dry {
            (params.gravity * self.h).sqrt()
        } else {
            0.0
        }
    }

    pub fn is_dry(&self, params: &PhysicsParams) -> bool {
        self.h <= params.eps_dry
    }

    pub fn is_finite(&self) -> bool {
        self.h.is_finite() && self.q.is_finite()
    }
}

/// Interface-side state in celerity-velocity variables `(2c, u, a)`
/// with c = sqrt(g·h).
///
/// `two_c >= 0`; `two_c = 0` marks a dry state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CelerityState {
    /// Doubled celerity 2c (m/s).
    pub two_c: f64,
    /// Velocity u (m/s).
    pub u: f64,
    /// Bed elevation a (m).
    pub a: f64,
}

impl CelerityState {
    pub fn new(two_c: f64, u: f64, a: f64) -> Self {
        Self { two_c, u, a }
    }

    pub fn celerity(&self) -> f64 {
        0.5 * self.two_c
    }

    pub fn is_finite(&self) -> bool {
        self.two_c.is_finite() && self.u.is_finite() && self.a.is_finite()
    }
}

/// Flux of the conserved pair: mass flux q and momentum flux q²/h + g·h²/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxVector {
    pub mass: f64,
    pub momentum: f64,
}

impl FluxVector {
    pub const ZERO: Self = Self { mass: 0.0, momentum: 0.0 };

    pub fn is_finite(&self) -> bool {
        self.mass.is_finite() && self.momentum.is_finite()
    }
}

/// Change of variables (h, q) -> (2c, u, a). Dry states map to (0, 0, a).
pub fn primitive_to_celerity(w: PrimitiveState, a: f64, params: &PhysicsParams) -> CelerityState {
    if w.h > params.eps_dry {
        CelerityState {
            two_c: 2.0 * (params.gravity * w.h).sqrt(),
            u: w.q / w.h,
            a,
        }
    } else {
        CelerityState { two_c: 0.0, u: 0.0, a }
    }
}

/// Inverse change of variables: h = (2c)²/(4g), q = h·u.
pub fn celerity_to_primitive(y: CelerityState, params: &PhysicsParams) -> PrimitiveState {
    let h = y.two_c * y.two_c / (4.0 * params.gravity);
    PrimitiveState { h, q: h * y.u }
}

/// Physical flux F(w) = (q, q²/h + g·h²/2). Dry states carry no flux.
pub fn physical_flux(w: PrimitiveState, params: &PhysicsParams) -> FluxVector {
    if w.h > params.eps_dry {
        FluxVector {
            mass: w.q,
            momentum: w.q * w.q / w.h + 0.5 * params.gravity * w.h * w.h,
        }
    } else {
        FluxVector::ZERO
    }
}
