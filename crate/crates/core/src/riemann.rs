//! Linearized interface solver in celerity-velocity variables.
//!
//! Each interface problem is linearized around the arithmetic average of
//! the two side states. The eigenstructure splits the jump into a
//! stationary wave carrying the bed step and two gravity waves; the flow
//! regime (both waves on one side, or one on each) decides which waves
//! separate the two interface states. Where the raw linearized speeds
//! would produce a negative intermediate celerity, the speeds are moved
//! away from zero just far enough to restore nonnegativity, and when the
//! two rarefactions separate entirely the interface celerities drop to
//! zero. Interfaces with a dry side get dedicated wave-speed estimates,
//! and a dry bed standing above the wet free surface acts as a wall.

use thiserror::Error;

use crate::state::{
    celerity_to_primitive, physical_flux, primitive_to_celerity, CelerityState, FluxVector,
    PhysicsParams, PrimitiveState,
};

#[derive(Debug, Error, PartialEq)]
pub enum RiemannError {
    #[error("non-finite input state at the interface")]
    NonFiniteInput,
    #[error("wave speed too close to zero enters a denominator")]
    DegenerateSpeeds,
}

/// Flow configuration at an interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Both gravity waves move left.
    TorrentialLeft,
    /// Both gravity waves move right.
    TorrentialRight,
    /// Subcritical: one gravity wave on each side of the interface.
    Fluvial,
    /// Dry cell on the left, wet on the right.
    DryLeft,
    /// Dry cell on the right, wet on the left.
    DryRight,
    /// Both cells dry.
    BothDry,
    /// Dry bed standing at or above the wet free surface: reflecting wall.
    WallBlocked,
}

/// Wave speeds at an interface: the working (possibly corrected) pair and
/// the raw linearized pair they came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda1_hat: f64,
    pub lambda2_hat: f64,
}

impl WaveSpeeds {
    pub const ZERO: Self = Self {
        lambda1: 0.0,
        lambda2: 0.0,
        lambda1_hat: 0.0,
        lambda2_hat: 0.0,
    };
}

/// Jump coefficients of the wave decomposition, (Y_R − Y_L)·l_k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveStrengths {
    pub d_alpha0: f64,
    pub d_alpha1: f64,
    pub d_alpha2: f64,
}

/// Solved interface fan: regime, wave speeds, the states just left and
/// right of x/t = 0, and the physical fluxes they carry.
///
/// Both celerities are nonnegative, and `a_L = a_R` implies
/// `flux_l == flux_r` exactly.
#[derive(Debug, Clone, Copy)]
pub struct RiemannFan {
    pub regime: Regime,
    pub speeds: WaveSpeeds,
    pub y_star_l: CelerityState,
    pub y_star_r: CelerityState,
    pub flux_l: FluxVector,
    pub flux_r: FluxVector,
}

impl RiemannFan {
    /// Fluxes at 0⁻ and 0⁺.
    pub fn interface_fluxes(&self) -> (FluxVector, FluxVector) {
        (self.flux_l, self.flux_r)
    }
}

/// Which side of the interface is dry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrySide {
    Left,
    Right,
}

/// Average state of the linearization: the component-wise mean, which
/// satisfies the consistency condition on equal states.
pub fn roe_average(y_l: CelerityState, y_r: CelerityState) -> CelerityState {
    CelerityState {
        two_c: 0.5 * (y_l.two_c + y_r.two_c),
        u: 0.5 * (y_l.u + y_r.u),
        a: 0.5 * (y_l.a + y_r.a),
    }
}

/// Eigenvalues (0, û − ĉ, û + ĉ) of the linearized system at `y_hat`.
pub fn eigenvalues(y_hat: CelerityState) -> (f64, f64, f64) {
    let c = y_hat.celerity();
    (0.0, y_hat.u - c, y_hat.u + c)
}

/// Quasilinear system matrix A(Y) in (2c, u, a) variables.
pub fn system_matrix(y: CelerityState, g: f64) -> [[f64; 3]; 3] {
    let c = y.celerity();
    [[y.u, c, 0.0], [c, y.u, g], [0.0, 0.0, 0.0]]
}

/// Right eigenvector basis (r0, r1, r2) assembled from the supplied speeds.
pub fn right_eigenvectors(lambda1: f64, lambda2: f64, g: f64) -> [[f64; 3]; 3] {
    [
        [
            0.5 * g * (lambda2 - lambda1),
            -0.5 * g * (lambda2 + lambda1),
            lambda2 * lambda1,
        ],
        [-1.0, 1.0, 0.0],
        [1.0, 1.0, 0.0],
    ]
}

/// Left eigenvector basis (l0, l1, l2), dual to [`right_eigenvectors`]
/// for any nonzero speed pair.
pub fn left_eigenvectors(lambda1: f64, lambda2: f64, g: f64) -> [[f64; 3]; 3] {
    [
        [0.0, 0.0, 1.0 / (lambda2 * lambda1)],
        [-0.5, 0.5, 0.5 * g / lambda1],
        [0.5, 0.5, 0.5 * g / lambda2],
    ]
}

/// Replace a speed within `eps_speed` of zero by ±eps_speed carrying the
/// sign of the average velocity (+ if that velocity is zero).
fn nudge_speed(lambda: f64, u_hat: f64, eps_speed: f64) -> f64 {
    if lambda.abs() >= eps_speed {
        lambda
    } else if u_hat < 0.0 {
        -eps_speed
    } else {
        eps_speed
    }
}

/// Classify the interface flow from the linearized speeds. Speeds within
/// `eps_speed` of zero are nudged first, so the outcome is never ambiguous.
pub fn classify_regime(lambda1_hat: f64, lambda2_hat: f64, eps_speed: f64) -> Regime {
    let u_hat = 0.5 * (lambda1_hat + lambda2_hat);
    let l1 = nudge_speed(lambda1_hat, u_hat, eps_speed);
    let l2 = nudge_speed(lambda2_hat, u_hat, eps_speed);
    if l2 < 0.0 {
        Regime::TorrentialLeft
    } else if l1 > 0.0 {
        Regime::TorrentialRight
    } else {
        Regime::Fluvial
    }
}

/// Positivity-preserving speed corrections for wet-wet interfaces over a
/// bed jump. Each branch moves one speed away from zero exactly far
/// enough that the intermediate celerities stay nonnegative; on a flat
/// bottom the speeds pass through unchanged.
///
/// For the fluvial branch the caller must have ruled out vacuum formation
/// (u_R − u_L < 2(c_R + c_L)), as [`solve`] does.
pub fn correct_wave_speeds(
    regime: Regime,
    y_l: CelerityState,
    y_r: CelerityState,
    lambda1_hat: f64,
    lambda2_hat: f64,
    g: f64,
) -> WaveSpeeds {
    let da = y_r.a - y_l.a;
    let mut lambda1 = lambda1_hat;
    let mut lambda2 = lambda2_hat;
    if da != 0.0 {
        let c_l = y_l.celerity();
        let c_r = y_r.celerity();
        match regime {
            Regime::Fluvial => {
                let denom = 2.0 * (c_r + c_l) - (y_r.u - y_l.u);
                if denom > 0.0 {
                    let threshold = g * da / denom;
                    if da > 0.0 {
                        lambda2 = lambda2_hat.max(threshold);
                    } else {
                        lambda1 = lambda1_hat.min(threshold);
                    }
                }
            }
            Regime::TorrentialLeft if da > 0.0 => {
                let threshold = -g * da * lambda1_hat / (4.0 * c_r * lambda1_hat - g * da);
                lambda2 = lambda2_hat.min(threshold);
            }
            Regime::TorrentialRight if da < 0.0 => {
                let threshold = -g * da * lambda2_hat / (4.0 * c_l * lambda2_hat - g * da);
                lambda1 = lambda1_hat.max(threshold);
            }
            _ => {}
        }
    }
    WaveSpeeds {
        lambda1,
        lambda2,
        lambda1_hat,
        lambda2_hat,
    }
}

/// Jump coefficients (Y_R − Y_L)·l_k, with l_k assembled from the supplied
/// (possibly corrected) speeds. A flat bottom needs no division at all;
/// otherwise speeds below `eps_speed` in magnitude are rejected.
pub fn wave_strengths(
    y_l: CelerityState,
    y_r: CelerityState,
    lambda1: f64,
    lambda2: f64,
    g: f64,
    eps_speed: f64,
) -> Result<WaveStrengths, RiemannError> {
    let d_two_c = y_r.two_c - y_l.two_c;
    let du = y_r.u - y_l.u;
    let da = y_r.a - y_l.a;
    if da == 0.0 {
        return Ok(WaveStrengths {
            d_alpha0: 0.0,
            d_alpha1: 0.5 * (du - d_two_c),
            d_alpha2: 0.5 * (du + d_two_c),
        });
    }
    if lambda1.abs() < eps_speed || lambda2.abs() < eps_speed {
        return Err(RiemannError::DegenerateSpeeds);
    }
    Ok(WaveStrengths {
        d_alpha0: da / (lambda2 * lambda1),
        d_alpha1: 0.5 * (du - d_two_c) + 0.5 * g * da / lambda1,
        d_alpha2: 0.5 * (du + d_two_c) + 0.5 * g * da / lambda2,
    })
}

/// States at 0⁻ and 0⁺ from the wave decomposition evaluated at the
/// supplied speeds, for the three wet regimes.
///
/// In the fluvial regime, violation of the vacuum bound
/// u_R − u_L < 2(c_R + c_L) overrides the two celerities (the velocities
/// keep their decomposition values); in that case the caller passes the
/// uncorrected speeds, as [`solve`] does. Returned celerities are clamped
/// at zero to absorb floating-point cancellation.
pub fn intermediate_states(
    regime: Regime,
    y_l: CelerityState,
    y_r: CelerityState,
    speeds: &WaveSpeeds,
    g: f64,
) -> (CelerityState, CelerityState) {
    let (l1, l2) = (speeds.lambda1, speeds.lambda2);
    let d_two_c = y_r.two_c - y_l.two_c;
    let du = y_r.u - y_l.u;
    let da = y_r.a - y_l.a;
    // (2c, u) components of r0; the bed component is pinned to a_L / a_R
    // on the two sides of the stationary wave
    let r0 = [0.5 * g * (l2 - l1), -0.5 * g * (l2 + l1)];
    let d_alpha0 = if da == 0.0 { 0.0 } else { da / (l2 * l1) };

    let (mut star_l, mut star_r): ([f64; 2], [f64; 2]) = match regime {
        Regime::TorrentialLeft => {
            let r = [y_r.two_c, y_r.u];
            ([r[0] - d_alpha0 * r0[0], r[1] - d_alpha0 * r0[1]], r)
        }
        Regime::TorrentialRight => {
            let l = [y_l.two_c, y_l.u];
            (l, [l[0] + d_alpha0 * r0[0], l[1] + d_alpha0 * r0[1]])
        }
        Regime::Fluvial => {
            let bed_term = if da == 0.0 { 0.0 } else { 0.5 * g * da / l1 };
            let d_alpha1 = 0.5 * (du - d_two_c) + bed_term;
            let l = [y_l.two_c - d_alpha1, y_l.u + d_alpha1];
            let r = [l[0] + d_alpha0 * r0[0], l[1] + d_alpha0 * r0[1]];
            (l, r)
        }
        _ => panic!("intermediate_states is defined for wet-wet regimes only"),
    };

    if regime == Regime::Fluvial && !(du < 2.0 * (y_r.celerity() + y_l.celerity())) {
        // the rarefactions separate: only the celerities are overridden
        if da == 0.0 {
            star_l[0] = 0.0;
            star_r[0] = 0.0;
        } else if da > 0.0 {
            star_l[0] = -0.5 * g * da / l1;
            star_r[0] = 0.0;
        } else {
            star_l[0] = 0.0;
            star_r[0] = -0.5 * g * da / l2;
        }
    }

    (
        CelerityState {
            two_c: star_l[0].max(0.0),
            u: star_l[1],
            a: y_l.a,
        },
        CelerityState {
            two_c: star_r[0].max(0.0),
            u: star_r[1],
            a: y_r.a,
        },
    )
}

/// Wave-speed estimates when exactly one side is dry: a rarefaction fans
/// out toward the dry bed, whose edge travels at twice the wet celerity.
pub fn dry_bed_speeds(
    w_wet: PrimitiveState,
    dry_side: DrySide,
    params: &PhysicsParams,
) -> WaveSpeeds {
    let c = w_wet.celerity(params);
    let u = w_wet.velocity(params);
    let (lambda1, lambda2) = match dry_side {
        DrySide::Right => (u - c, u + 2.0 * c),
        DrySide::Left => (u - 2.0 * c, u + c),
    };
    WaveSpeeds {
        lambda1,
        lambda2,
        lambda1_hat: lambda1,
        lambda2_hat: lambda2,
    }
}

/// Solve the linearized interface problem between two cells.
///
/// Dispatches on the wet/dry configuration: both dry gives a zero fan; a
/// dry bed at or above the wet free surface acts as a reflecting wall;
/// an overtoppable dry side uses the dry-bed wave speeds; and wet-wet
/// interfaces run the full linearized decomposition with regime
/// classification and speed corrections. Both returned celerities are
/// nonnegative.
pub fn solve(
    w_l: PrimitiveState,
    a_l: f64,
    w_r: PrimitiveState,
    a_r: f64,
    params: &PhysicsParams,
) -> Result<RiemannFan, RiemannError> {
    if !(w_l.is_finite() && w_r.is_finite() && a_l.is_finite() && a_r.is_finite()) {
        return Err(RiemannError::NonFiniteInput);
    }
    let fan = match (w_l.is_dry(params), w_r.is_dry(params)) {
        (true, true) => both_dry_fan(a_l, a_r),
        (false, true) => {
            if w_l.h + a_l <= a_r {
                wall_blocked_fan(w_l, a_l, a_r, DrySide::Right, params)
            } else {
                one_sided_dry_fan(w_l, a_l, a_r, DrySide::Right, params)
            }
        }
        (true, false) => {
            if w_r.h + a_r <= a_l {
                wall_blocked_fan(w_r, a_r, a_l, DrySide::Left, params)
            } else {
                one_sided_dry_fan(w_r, a_r, a_l, DrySide::Left, params)
            }
        }
        (false, false) => wet_wet_fan(w_l, a_l, w_r, a_r, params),
    };
    Ok(fan)
}

fn fan_with_fluxes(
    regime: Regime,
    speeds: WaveSpeeds,
    y_star_l: CelerityState,
    y_star_r: CelerityState,
    params: &PhysicsParams,
) -> RiemannFan {
    RiemannFan {
        regime,
        speeds,
        y_star_l,
        y_star_r,
        flux_l: physical_flux(celerity_to_primitive(y_star_l, params), params),
        flux_r: physical_flux(celerity_to_primitive(y_star_r, params), params),
    }
}

fn wet_wet_fan(
    w_l: PrimitiveState,
    a_l: f64,
    w_r: PrimitiveState,
    a_r: f64,
    params: &PhysicsParams,
) -> RiemannFan {
    let g = params.gravity;
    let y_l = primitive_to_celerity(w_l, a_l, params);
    let y_r = primitive_to_celerity(w_r, a_r, params);
    let y_hat = roe_average(y_l, y_r);
    let (_, l1_raw, l2_raw) = eigenvalues(y_hat);
    let l1 = nudge_speed(l1_raw, y_hat.u, params.eps_speed);
    let l2 = nudge_speed(l2_raw, y_hat.u, params.eps_speed);
    let regime = classify_regime(l1_raw, l2_raw, params.eps_speed);

    let du = y_r.u - y_l.u;
    let vacuum = regime == Regime::Fluvial && !(du < 2.0 * (y_r.celerity() + y_l.celerity()));
    let mut speeds = if vacuum {
        // corrections assume the vacuum bound; here the celerities will be
        // overridden instead, at the uncorrected speeds
        WaveSpeeds {
            lambda1: l1,
            lambda2: l2,
            lambda1_hat: l1_raw,
            lambda2_hat: l2_raw,
        }
    } else {
        correct_wave_speeds(regime, y_l, y_r, l1, l2, g)
    };
    speeds.lambda1_hat = l1_raw;
    speeds.lambda2_hat = l2_raw;

    let (y_star_l, y_star_r) = intermediate_states(regime, y_l, y_r, &speeds, g);
    fan_with_fluxes(regime, speeds, y_star_l, y_star_r, params)
}

fn both_dry_fan(a_l: f64, a_r: f64) -> RiemannFan {
    RiemannFan {
        regime: Regime::BothDry,
        speeds: WaveSpeeds::ZERO,
        y_star_l: CelerityState::new(0.0, 0.0, a_l),
        y_star_r: CelerityState::new(0.0, 0.0, a_r),
        flux_l: FluxVector::ZERO,
        flux_r: FluxVector::ZERO,
    }
}

/// Fan for an overtoppable dry side: a two-wave decomposition against a
/// zero state at the dry-bed speeds, with no stationary-wave jump. The
/// single star state serves both sides, so the fluxes agree exactly and
/// the wetting front conserves mass.
fn one_sided_dry_fan(
    w_wet: PrimitiveState,
    a_wet: f64,
    a_dry: f64,
    dry_side: DrySide,
    params: &PhysicsParams,
) -> RiemannFan {
    let y_wet = primitive_to_celerity(w_wet, a_wet, params);
    let speeds = dry_bed_speeds(w_wet, dry_side, params);
    let star: [f64; 2] = if speeds.lambda1 >= 0.0 {
        // everything moves right
        match dry_side {
            DrySide::Right => [y_wet.two_c, y_wet.u],
            DrySide::Left => [0.0, 0.0],
        }
    } else if speeds.lambda2 <= 0.0 {
        // everything moves left
        match dry_side {
            DrySide::Right => [0.0, 0.0],
            DrySide::Left => [y_wet.two_c, y_wet.u],
        }
    } else {
        match dry_side {
            DrySide::Right => {
                let d_alpha1 = 0.5 * (y_wet.two_c - y_wet.u);
                [y_wet.two_c - d_alpha1, y_wet.u + d_alpha1]
            }
            DrySide::Left => {
                let d_alpha1 = 0.5 * (y_wet.u - y_wet.two_c);
                [-d_alpha1, d_alpha1]
            }
        }
    };
    let two_c = star[0].max(0.0);
    let (regime, a_l, a_r) = match dry_side {
        DrySide::Right => (Regime::DryRight, a_wet, a_dry),
        DrySide::Left => (Regime::DryLeft, a_dry, a_wet),
    };
    let y_star_l = CelerityState::new(two_c, star[1], a_l);
    let y_star_r = CelerityState::new(two_c, star[1], a_r);
    let flux = physical_flux(celerity_to_primitive(y_star_l, params), params);
    RiemannFan {
        regime,
        speeds,
        y_star_l,
        y_star_r,
        flux_l: flux,
        flux_r: flux,
    }
}

/// Fan for a dry bed standing at or above the wet free surface: the wet
/// side sees its own mirror image (a wall), and no water crosses.
fn wall_blocked_fan(
    w_wet: PrimitiveState,
    a_wet: f64,
    a_dry: f64,
    dry_side: DrySide,
    params: &PhysicsParams,
) -> RiemannFan {
    let mirror = PrimitiveState {
        h: w_wet.h,
        q: -w_wet.q,
    };
    let dry_state = CelerityState::new(0.0, 0.0, a_dry);
    match dry_side {
        DrySide::Right => {
            let inner = wet_wet_fan(w_wet, a_wet, mirror, a_wet, params);
            RiemannFan {
                regime: Regime::WallBlocked,
                speeds: inner.speeds,
                y_star_l: inner.y_star_l,
                y_star_r: dry_state,
                flux_l: inner.flux_l,
                flux_r: FluxVector::ZERO,
            }
        }
        DrySide::Left => {
            let inner = wet_wet_fan(mirror, a_wet, w_wet, a_wet, params);
            RiemannFan {
                regime: Regime::WallBlocked,
                speeds: inner.speeds,
                y_star_l: dry_state,
                y_star_r: inner.y_star_r,
                flux_l: FluxVector::ZERO,
                flux_r: inner.flux_r,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const P: PhysicsParams = PhysicsParams {
        gravity: 9.81,
        eps_dry: 1e-6,
        eps_speed: 1e-8,
    };
    const G: f64 = 9.81;

    fn y(two_c: f64, u: f64, a: f64) -> CelerityState {
        CelerityState::new(two_c, u, a)
    }

    /// Primitive state with a prescribed celerity c = sqrt(g h).
    fn w_from_celerity(c: f64, u: f64) -> PrimitiveState {
        let h = c * c / G;
        PrimitiveState::new(h, h * u)
    }

    #[test]
    fn roe_average_is_componentwise_mean() {
        assert_eq!(
            roe_average(y(4.0, 1.0, 0.0), y(2.0, 0.0, 0.5)),
            y(3.0, 0.5, 0.25)
        );
        let s = y(1.3, -0.4, 0.7);
        assert_eq!(roe_average(s, s), s);
        assert_eq!(roe_average(y(2.0, -1.0, 0.0), y(2.0, 1.0, 0.0)), y(2.0, 0.0, 0.0));
    }

    #[test]
    fn eigenvalue_triples() {
        assert_eq!(eigenvalues(y(3.0, 0.5, 0.0)), (0.0, -1.0, 2.0));
        assert_eq!(eigenvalues(y(2.0, 0.0, 0.0)), (0.0, -1.0, 1.0));
        assert_eq!(eigenvalues(y(0.0, 3.0, 0.0)), (0.0, 3.0, 3.0));
    }

    #[test]
    fn regime_classification() {
        assert_eq!(classify_regime(-1.0, 2.0, 1e-8), Regime::Fluvial);
        assert_eq!(classify_regime(1.0, 3.0, 1e-8), Regime::TorrentialRight);
        assert_eq!(classify_regime(-3.0, -1.0, 1e-8), Regime::TorrentialLeft);
        // degenerate speeds fall on the side of the average velocity
        assert_eq!(classify_regime(0.0, 2.0, 1e-8), Regime::TorrentialRight);
        assert_eq!(classify_regime(-2.0, 0.0, 1e-8), Regime::TorrentialLeft);
    }

    #[test]
    fn strengths_vanish_on_zero_jump() {
        let s = wave_strengths(y(4.0, 1.0, 0.5), y(4.0, 1.0, 0.5), -2.0, 3.0, G, 1e-8).unwrap();
        assert_eq!(s, WaveStrengths { d_alpha0: 0.0, d_alpha1: 0.0, d_alpha2: 0.0 });
    }

    #[test]
    fn strengths_flat_bottom_velocity_jump() {
        let s = wave_strengths(y(4.0, -5.0, 0.0), y(4.0, 5.0, 0.0), -2.0, 2.0, G, 1e-8).unwrap();
        assert_eq!(s.d_alpha0, 0.0);
        assert_eq!(s.d_alpha1, 5.0);
        assert_eq!(s.d_alpha2, 5.0);
    }

    #[test]
    fn strengths_bed_jump_match_linear_solve_oracle() {
        // frozen from an independent 3x3 linear solve R * alpha = dY
        // (see the acceptance suite for the randomized version)
        let s = wave_strengths(y(6.0, 0.0, 0.0), y(6.0, 0.0, 1.0), -3.0, 3.0, G, 1e-8).unwrap();
        assert_relative_eq!(s.d_alpha0, -1.0 / 9.0, max_relative = 1e-14);
        assert_relative_eq!(s.d_alpha1, -1.635, max_relative = 1e-14);
        assert_relative_eq!(s.d_alpha2, 1.635, max_relative = 1e-14);
    }

    #[test]
    fn strengths_reject_degenerate_speed_with_bed_jump() {
        assert_eq!(
            wave_strengths(y(6.0, 0.0, 0.0), y(6.0, 0.0, 1.0), 1e-12, 3.0, G, 1e-8).unwrap_err(),
            RiemannError::DegenerateSpeeds
        );
    }

    #[test]
    fn eigenvector_bases_are_dual() {
        for &(l1, l2) in &[(-3.0, -1.0), (-1.0, 2.0), (0.5, 4.0), (-2.5, 1e-6)] {
            let r = right_eigenvectors(l1, l2, G);
            let l = left_eigenvectors(l1, l2, G);
            for j in 0..3 {
                for k in 0..3 {
                    let dot: f64 = (0..3).map(|i| l[j][i] * r[k][i]).sum();
                    let expect = if j == k { 1.0 } else { 0.0 };
                    assert!(
                        (dot - expect).abs() <= 1e-10,
                        "l{j}·r{k} = {dot} for speeds ({l1}, {l2})"
                    );
                }
            }
        }
    }

    #[test]
    fn raw_bases_are_eigenvectors_of_the_system_matrix() {
        let y_hat = y(3.0, 0.5, 0.2);
        let (l0, l1, l2) = eigenvalues(y_hat);
        let a = system_matrix(y_hat, G);
        let r = right_eigenvectors(l1, l2, G);
        for (vec, lam) in [(r[0], l0), (r[1], l1), (r[2], l2)] {
            for row in 0..3 {
                let av: f64 = (0..3).map(|i| a[row][i] * vec[i]).sum();
                assert!(
                    (av - lam * vec[row]).abs() <= 1e-10,
                    "A·r != lambda·r in row {row} for eigenvalue {lam}"
                );
            }
        }
    }

    #[test]
    fn corrections_inactive_on_flat_bottom() {
        let s = correct_wave_speeds(Regime::Fluvial, y(4.0, 0.5, 1.0), y(3.0, -0.2, 1.0), -1.4, 2.1, G);
        assert_eq!((s.lambda1, s.lambda2), (-1.4, 2.1));
    }

    #[test]
    fn fluvial_correction_updates_only_when_threshold_binds() {
        // c_L = c_R = 3, u = 0 both sides, bed up-step of 1
        let yl = y(6.0, 0.0, 0.0);
        let yr = y(6.0, 0.0, 1.0);
        let s = correct_wave_speeds(Regime::Fluvial, yl, yr, -3.0, 3.0, G);
        assert_eq!(s.lambda1, -3.0);
        assert_relative_eq!(s.lambda2, 3.0, max_relative = 1e-14); // 9.81/12 < 3

        // c_L = c_R = 0.5: the threshold 9.81/2 overtakes the raw speed
        let yl = y(1.0, 0.0, 0.0);
        let yr = y(1.0, 0.0, 1.0);
        let s = correct_wave_speeds(Regime::Fluvial, yl, yr, -0.5, 0.5, G);
        assert_eq!(s.lambda1, -0.5);
        assert_relative_eq!(s.lambda2, 4.905, max_relative = 1e-14);
    }

    #[test]
    fn torrential_corrections_move_speeds_away_from_zero() {
        // both waves left, bed rising: lambda2 must not cross back over
        let yl = y(4.0, -5.0, 0.0);
        let yr = y(2.0, -4.0, 1.0);
        let (_, l1h, l2h) = eigenvalues(roe_average(yl, yr));
        assert!(l2h < 0.0);
        let s = correct_wave_speeds(Regime::TorrentialLeft, yl, yr, l1h, l2h, G);
        assert!(s.lambda2 <= l2h);
        assert!(s.lambda2 > s.lambda1);
        // celerity of the intermediate state is nonnegative afterwards
        let (star_l, _) = intermediate_states(Regime::TorrentialLeft, yl, yr, &s, G);
        assert!(star_l.two_c >= 0.0);

        // mirrored situation for both waves right over a down-step
        let yl = y(2.0, 4.0, 1.0);
        let yr = y(4.0, 5.0, 0.0);
        let (_, l1h, l2h) = eigenvalues(roe_average(yl, yr));
        assert!(l1h > 0.0);
        let s = correct_wave_speeds(Regime::TorrentialRight, yl, yr, l1h, l2h, G);
        assert!(s.lambda1 >= l1h);
        assert!(s.lambda2 > s.lambda1);
        let (_, star_r) = intermediate_states(Regime::TorrentialRight, yl, yr, &s, G);
        assert!(star_r.two_c >= 0.0);
    }

    #[test]
    fn intermediate_states_consistency() {
        let s = y(4.0, 0.3, 0.6);
        let speeds = WaveSpeeds {
            lambda1: -1.85,
            lambda2: 2.45,
            lambda1_hat: -1.85,
            lambda2_hat: 2.45,
        };
        let (l, r) = intermediate_states(Regime::Fluvial, s, s, &speeds, G);
        assert_eq!(l, s);
        assert_eq!(r, s);
    }

    #[test]
    fn lake_at_rest_interface_is_exact_to_roundoff() {
        // u = 0 both sides, h + a equal across the interface
        let g = G;
        let (h_l, a_l) = (3.0, 0.5);
        let (h_r, a_r) = (2.0, 1.5);
        let w_l = PrimitiveState::new(h_l, 0.0);
        let w_r = PrimitiveState::new(h_r, 0.0);
        let fan = solve(w_l, a_l, w_r, a_r, &P).unwrap();
        assert_eq!(fan.regime, Regime::Fluvial);
        let y_l = primitive_to_celerity(w_l, a_l, &P);
        let y_r = primitive_to_celerity(w_r, a_r, &P);
        assert_relative_eq!(fan.y_star_l.two_c, y_l.two_c, max_relative = 1e-12);
        assert!(fan.y_star_l.u.abs() <= 1e-12);
        assert_relative_eq!(fan.y_star_r.two_c, y_r.two_c, max_relative = 1e-12);
        assert!(fan.y_star_r.u.abs() <= 1e-12);
        // interface fluxes reduce to the hydrostatic pressures
        let (f_l, f_r) = fan.interface_fluxes();
        assert!(f_l.mass.abs() <= 1e-12);
        assert!(f_r.mass.abs() <= 1e-12);
        assert_relative_eq!(f_l.momentum, 0.5 * g * h_l * h_l, max_relative = 1e-12);
        assert_relative_eq!(f_r.momentum, 0.5 * g * h_r * h_r, max_relative = 1e-12);
    }

    #[test]
    fn vacuum_fallback_zeroes_celerities_on_flat_bottom() {
        // 2c = 4 on both sides, u_R - u_L = 10 >= 2(c_R + c_L) = 8
        let w_l = w_from_celerity(2.0, -5.0);
        let w_r = w_from_celerity(2.0, 5.0);
        let fan = solve(w_l, 0.0, w_r, 0.0, &P).unwrap();
        assert_eq!(fan.regime, Regime::Fluvial);
        assert_eq!(fan.y_star_l.two_c, 0.0);
        assert_eq!(fan.y_star_r.two_c, 0.0);
        assert_eq!(fan.flux_l, FluxVector::ZERO);
        assert_eq!(fan.flux_r, fan.flux_l);
    }

    #[test]
    fn vacuum_fallback_with_bed_jump_keeps_celerities_nonnegative() {
        let w_l = w_from_celerity(2.0, -5.0);
        let w_r = w_from_celerity(2.0, 5.0);
        let fan = solve(w_l, 0.0, w_r, 0.5, &P).unwrap();
        assert!(fan.y_star_l.two_c >= 0.0);
        assert_eq!(fan.y_star_r.two_c, 0.0);
        let fan = solve(w_l, 0.5, w_r, 0.0, &P).unwrap();
        assert_eq!(fan.y_star_l.two_c, 0.0);
        assert!(fan.y_star_r.two_c >= 0.0);
    }

    #[test]
    fn dry_bed_speed_estimates() {
        let w = w_from_celerity(2.0, 1.0);
        let s = dry_bed_speeds(w, DrySide::Right, &P);
        assert_relative_eq!(s.lambda1, -1.0, max_relative = 1e-12);
        assert_relative_eq!(s.lambda2, 5.0, max_relative = 1e-12);

        let w = w_from_celerity(2.0, -1.0);
        let s = dry_bed_speeds(w, DrySide::Left, &P);
        assert_relative_eq!(s.lambda1, -5.0, max_relative = 1e-12);
        assert_relative_eq!(s.lambda2, 1.0, max_relative = 1e-12);

        // still water against a dry bed: the front edge travels at 2c
        let w = w_from_celerity(3.0, 0.0);
        let s = dry_bed_speeds(w, DrySide::Right, &P);
        assert_relative_eq!(s.lambda1, -3.0, max_relative = 1e-12);
        assert_relative_eq!(s.lambda2, 6.0, max_relative = 1e-12);
    }

    #[test]
    fn solve_is_consistent_on_equal_states() {
        let w = PrimitiveState::new(2.0, 1.2);
        let fan = solve(w, 0.3, w, 0.3, &P).unwrap();
        let y_in = primitive_to_celerity(w, 0.3, &P);
        assert!((fan.y_star_l.two_c - y_in.two_c).abs() <= 1e-12);
        assert!((fan.y_star_l.u - y_in.u).abs() <= 1e-12);
        assert_eq!(fan.y_star_l, fan.y_star_r);
        assert_eq!(fan.flux_l, fan.flux_r);
        let f = physical_flux(w, &P);
        assert_relative_eq!(fan.flux_l.mass, f.mass, max_relative = 1e-12);
        assert_relative_eq!(fan.flux_l.momentum, f.momentum, max_relative = 1e-12);
    }

    #[test]
    fn solve_both_dry_is_the_zero_fan() {
        let fan = solve(PrimitiveState::DRY, 0.4, PrimitiveState::DRY, 1.1, &P).unwrap();
        assert_eq!(fan.regime, Regime::BothDry);
        assert_eq!(fan.y_star_l, y(0.0, 0.0, 0.4));
        assert_eq!(fan.y_star_r, y(0.0, 0.0, 1.1));
        assert_eq!(fan.flux_l, FluxVector::ZERO);
        assert_eq!(fan.flux_r, FluxVector::ZERO);
    }

    #[test]
    fn overtopping_a_lower_dry_step_pushes_water_onto_it() {
        // wet surface 1.5 above a dry bed at 1: water must flow right
        let w_l = PrimitiveState::new(1.5, 0.0);
        let fan = solve(w_l, 0.0, PrimitiveState::DRY, 1.0, &P).unwrap();
        assert_eq!(fan.regime, Regime::DryRight);
        assert!(fan.flux_r.mass > 0.0);
        assert_eq!(fan.flux_l, fan.flux_r);
        assert!(fan.y_star_l.two_c > 0.0);
    }

    #[test]
    fn dry_bed_above_the_free_surface_blocks_like_a_wall() {
        // pond of 0.1 against a bed step of 0.2: nothing crosses
        let w_l = PrimitiveState::new(0.1, 0.0);
        let fan = solve(w_l, 0.0, PrimitiveState::DRY, 0.2, &P).unwrap();
        assert_eq!(fan.regime, Regime::WallBlocked);
        assert_eq!(fan.flux_r, FluxVector::ZERO);
        assert_eq!(fan.flux_l.mass, 0.0);
        assert_relative_eq!(fan.flux_l.momentum, 0.5 * G * 0.1 * 0.1, max_relative = 1e-12);

        // mirrored: dry high bed on the left
        let fan = solve(PrimitiveState::DRY, 0.2, w_l, 0.0, &P).unwrap();
        assert_eq!(fan.regime, Regime::WallBlocked);
        assert_eq!(fan.flux_l, FluxVector::ZERO);
        assert_eq!(fan.flux_r.mass, 0.0);
    }

    #[test]
    fn receding_flow_leaves_the_dry_interface_dry() {
        // water pulling away from the dry side faster than 2c
        let w_l = w_from_celerity(1.0, -3.0);
        let fan = solve(w_l, 0.0, PrimitiveState::DRY, 0.0, &P).unwrap();
        assert_eq!(fan.regime, Regime::DryRight);
        assert_eq!(fan.y_star_l.two_c, 0.0);
        assert_eq!(fan.flux_l, FluxVector::ZERO);
    }

    #[test]
    fn solve_rejects_non_finite_inputs() {
        let w = PrimitiveState::new(f64::NAN, 0.0);
        assert_eq!(
            solve(w, 0.0, PrimitiveState::DRY, 0.0, &P).unwrap_err(),
            RiemannError::NonFiniteInput
        );
        let w = PrimitiveState::new(1.0, 0.0);
        assert_eq!(
            solve(w, f64::INFINITY, w, 0.0, &P).unwrap_err(),
            RiemannError::NonFiniteInput
        );
    }

    #[test]
    fn flat_bottom_fluxes_agree_exactly_in_every_regime() {
        let cases = [
            (w_from_celerity(2.0, 0.5), w_from_celerity(1.5, -0.3)), // fluvial
            (w_from_celerity(1.0, -4.0), w_from_celerity(1.2, -3.5)), // torrential left
            (w_from_celerity(1.0, 4.0), w_from_celerity(1.2, 3.5)),  // torrential right
            (w_from_celerity(2.0, -5.0), w_from_celerity(2.0, 5.0)), // vacuum
        ];
        for (w_l, w_r) in cases {
            let fan = solve(w_l, 0.7, w_r, 0.7, &P).unwrap();
            assert_eq!(fan.flux_l, fan.flux_r);
        }
    }
}
