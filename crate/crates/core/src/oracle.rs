//! Exact flat-bottom dam-break solutions used as validation references.
//!
//! Two closed references: the nonlinear two-wave solution between wet
//! states (star depth found by safeguarded Newton on the monotone depth
//! function) and the rarefaction onto a dry bed. Both are self-similar
//! and sampled by xi = x/t.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("vacuum forms between the states: u_R - u_L >= 2(c_L + c_R)")]
    VacuumFormation,
}

const STAR_TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 200;

/// Exact self-similar profile, sampled by the similarity coordinate xi = x/t.
#[derive(Debug, Clone)]
pub struct ExactProfile {
    gravity: f64,
    kind: ProfileKind,
}

#[derive(Debug, Clone)]
enum ProfileKind {
    TwoWave {
        h_l: f64,
        u_l: f64,
        h_r: f64,
        u_r: f64,
        h_star: f64,
        u_star: f64,
    },
    DryBed {
        h_l: f64,
    },
}

impl ExactProfile {
    /// Wet-wet dam-break solution between (h_l, u_l) and (h_r, u_r).
    pub fn stoker(h_l: f64, u_l: f64, h_r: f64, u_r: f64, gravity: f64) -> Result<Self, OracleError> {
        let (h_star, u_star) = solve_star_state(h_l, u_l, h_r, u_r, gravity)?;
        Ok(Self {
            gravity,
            kind: ProfileKind::TwoWave { h_l, u_l, h_r, u_r, h_star, u_star },
        })
    }

    /// Dam break of a lake of depth `h_l` at rest onto a dry bed to the right.
    pub fn ritter(h_l: f64, gravity: f64) -> Self {
        Self {
            gravity,
            kind: ProfileKind::DryBed { h_l },
        }
    }

    /// Depth of the star region, if the profile has one.
    pub fn h_star(&self) -> Option<f64> {
        match self.kind {
            ProfileKind::TwoWave { h_star, .. } => Some(h_star),
            ProfileKind::DryBed { .. } => None,
        }
    }

    /// Velocity of the star region, if the profile has one.
    pub fn u_star(&self) -> Option<f64> {
        match self.kind {
            ProfileKind::TwoWave { u_star, .. } => Some(u_star),
            ProfileKind::DryBed { .. } => None,
        }
    }

    /// (h, u) at similarity coordinate xi = x/t.
    pub fn sample(&self, xi: f64) -> (f64, f64) {
        let g = self.gravity;
        match self.kind {
            ProfileKind::DryBed { h_l } => {
                let c_l = (g * h_l).sqrt();
                if xi <= -c_l {
                    (h_l, 0.0)
                } else if xi <= 2.0 * c_l {
                    let c = (2.0 * c_l - xi) / 3.0;
                    (c * c / g, 2.0 * (xi + c_l) / 3.0)
                } else {
                    (0.0, 0.0)
                }
            }
            ProfileKind::TwoWave { h_l, u_l, h_r, u_r, h_star, u_star } => {
                let c_star = (g * h_star).sqrt();
                if h_star > h_l {
                    // left shock
                    let s = u_l - (g * h_star * (h_star + h_l) / (2.0 * h_l)).sqrt();
                    if xi <= s {
                        return (h_l, u_l);
                    }
                } else {
                    // left rarefaction: u + 2c invariant, u - c = xi inside
                    let c_l = (g * h_l).sqrt();
                    if xi <= u_l - c_l {
                        return (h_l, u_l);
                    }
                    if xi < u_star - c_star {
                        let c = (u_l + 2.0 * c_l - xi) / 3.0;
                        return (c * c / g, (u_l + 2.0 * c_l + 2.0 * xi) / 3.0);
                    }
                }
                if h_star > h_r {
                    // right shock
                    let s = u_r + (g * h_star * (h_star + h_r) / (2.0 * h_r)).sqrt();
                    if xi >= s {
                        return (h_r, u_r);
                    }
                } else {
                    // right rarefaction: u - 2c invariant, u + c = xi inside
                    let c_r = (g * h_r).sqrt();
                    if xi >= u_r + c_r {
                        return (h_r, u_r);
                    }
                    if xi > u_star + c_star {
                        let c = (xi - u_r + 2.0 * c_r) / 3.0;
                        return (c * c / g, (u_r - 2.0 * c_r + 2.0 * xi) / 3.0);
                    }
                }
                (h_star, u_star)
            }
        }
    }
}

/// Exact wet-wet dam-break sample at xi = x/t.
pub fn stoker_exact(
    h_l: f64,
    u_l: f64,
    h_r: f64,
    u_r: f64,
    gravity: f64,
    xi: f64,
) -> Result<(f64, f64), OracleError> {
    Ok(ExactProfile::stoker(h_l, u_l, h_r, u_r, gravity)?.sample(xi))
}

/// Exact dry-bed dam-break sample at xi = x/t.
pub fn ritter_exact(h_l: f64, gravity: f64, xi: f64) -> (f64, f64) {
    ExactProfile::ritter(h_l, gravity).sample(xi)
}

/// Depth-function branch connecting a candidate star depth `h` to a state
/// of depth `h_k`: shock branch for h > h_k, rarefaction branch otherwise.
fn wave_branch(h: f64, h_k: f64, g: f64) -> f64 {
    if h > h_k {
        (h - h_k) * (0.5 * g * (h + h_k) / (h * h_k)).sqrt()
    } else {
        2.0 * ((g * h).sqrt() - (g * h_k).sqrt())
    }
}

fn wave_branch_derivative(h: f64, h_k: f64, g: f64) -> f64 {
    if h > h_k {
        let a = (0.5 * g * (h + h_k) / (h * h_k)).sqrt();
        a - (h - h_k) * g / (4.0 * h * h * a)
    } else {
        (g / h).sqrt()
    }
}

/// Root of phi(h) = f(h, h_l) + f(h, h_r) + u_r - u_l by Newton iteration
/// safeguarded with bisection; phi is monotone increasing in h.
fn solve_star_state(
    h_l: f64,
    u_l: f64,
    h_r: f64,
    u_r: f64,
    g: f64,
) -> Result<(f64, f64), OracleError> {
    let c_l = (g * h_l).sqrt();
    let c_r = (g * h_r).sqrt();
    if u_r - u_l >= 2.0 * (c_l + c_r) {
        return Err(OracleError::VacuumFormation);
    }

    let phi = |h: f64| wave_branch(h, h_l, g) + wave_branch(h, h_r, g) + (u_r - u_l);
    let mut lo = h_l.min(h_r) * 1e-6;
    let mut hi = h_l.max(h_r) * 10.0;
    let mut h = 0.5 * (h_l + h_r);
    for _ in 0..MAX_ITERATIONS {
        let f = phi(h);
        if f.abs() <= STAR_TOLERANCE {
            break;
        }
        if f > 0.0 {
            hi = h;
        } else {
            lo = h;
        }
        let df = wave_branch_derivative(h, h_l, g) + wave_branch_derivative(h, h_r, g);
        let newton = h - f / df;
        h = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    let u_star = 0.5 * (u_l + u_r) + 0.5 * (wave_branch(h, h_r, g) - wave_branch(h, h_l, g));
    Ok((h, u_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const G: f64 = 9.81;

    #[test]
    fn constant_state_everywhere() {
        let profile = ExactProfile::stoker(2.0, 0.7, 2.0, 0.7, G).unwrap();
        for &xi in &[-10.0, -1.0, 0.0, 0.7, 5.0] {
            let (h, u) = profile.sample(xi);
            assert_relative_eq!(h, 2.0, max_relative = 1e-12);
            assert_relative_eq!(u, 0.7, max_relative = 1e-12);
        }
    }

    #[test]
    fn dam_break_star_depth_lies_between_the_depths() {
        let profile = ExactProfile::stoker(3.0, 0.0, 4.0, 0.0, G).unwrap();
        let h_star = profile.h_star().unwrap();
        assert!(h_star > 3.0 && h_star < 4.0, "h* = {h_star}");
        let residual = wave_branch(h_star, 3.0, G) + wave_branch(h_star, 4.0, G);
        assert!(residual.abs() <= 1e-12, "phi(h*) = {residual:e}");
        // water accelerates toward the shallow side
        assert!(profile.u_star().unwrap() < 0.0);
    }

    #[test]
    fn mirror_symmetry() {
        let profile = ExactProfile::stoker(3.0, 0.4, 4.0, -0.2, G).unwrap();
        let mirrored = ExactProfile::stoker(4.0, 0.2, 3.0, -0.4, G).unwrap();
        for &xi in &[-8.0, -2.0, -0.3, 0.0, 0.5, 3.0, 9.0] {
            let (h, u) = profile.sample(xi);
            let (hm, um) = mirrored.sample(-xi);
            assert_relative_eq!(h, hm, max_relative = 1e-10, epsilon = 1e-12);
            assert_relative_eq!(u, -um, max_relative = 1e-10, epsilon = 1e-12);
        }
    }

    #[test]
    fn rankine_hugoniot_holds_across_shocks() {
        // colliding streams produce two shocks: h* above both depths
        let (h_l, u_l, h_r, u_r) = (1.0, 2.5, 1.4, -1.8);
        let profile = ExactProfile::stoker(h_l, u_l, h_r, u_r, G).unwrap();
        let h_star = profile.h_star().unwrap();
        let u_star = profile.u_star().unwrap();
        assert!(h_star > h_l && h_star > h_r);

        let check = |h0: f64, u0: f64, s: f64| {
            let mass = s * (h_star - h0) - (h_star * u_star - h0 * u0);
            let mom = s * (h_star * u_star - h0 * u0)
                - (h_star * u_star * u_star + 0.5 * G * h_star * h_star
                    - h0 * u0 * u0
                    - 0.5 * G * h0 * h0);
            assert!(mass.abs() <= 1e-10, "mass RH residual {mass:e}");
            assert!(mom.abs() <= 1e-10, "momentum RH residual {mom:e}");
        };
        check(h_l, u_l, u_l - (G * h_star * (h_star + h_l) / (2.0 * h_l)).sqrt());
        check(h_r, u_r, u_r + (G * h_star * (h_star + h_r) / (2.0 * h_r)).sqrt());
    }

    #[test]
    fn riemann_invariant_constant_along_left_rarefaction() {
        // separating streams produce two rarefactions
        let profile = ExactProfile::stoker(2.0, -1.0, 2.0, 1.0, G).unwrap();
        let c_l = (G * 2.0_f64).sqrt();
        let head = -1.0 - c_l;
        let tail = profile.u_star().unwrap() - (G * profile.h_star().unwrap()).sqrt();
        let reference = -1.0 + 2.0 * c_l;
        let n = 50;
        for k in 0..=n {
            let xi = head + (tail - head) * k as f64 / n as f64;
            let (h, u) = profile.sample(xi);
            assert!((u + 2.0 * (G * h).sqrt() - reference).abs() <= 1e-10);
        }
    }

    #[test]
    fn vacuum_is_reported() {
        let c = (G * 1.0_f64).sqrt();
        assert_eq!(
            ExactProfile::stoker(1.0, -2.0 * c, 1.0, 2.0 * c, G).unwrap_err(),
            OracleError::VacuumFormation
        );
    }

    #[test]
    fn ritter_closed_form_values() {
        let h_l = 1.5;
        let c_l = (G * h_l).sqrt();

        let (h, u) = ritter_exact(h_l, G, -c_l);
        assert_relative_eq!(h, h_l, max_relative = 1e-12);
        assert_eq!(u, 0.0);

        let (h, u) = ritter_exact(h_l, G, 0.0);
        assert_relative_eq!(h, 4.0 * h_l / 9.0, max_relative = 1e-12);
        assert_relative_eq!(h, 0.6667, max_relative = 1e-4);
        assert_relative_eq!(u, 2.0 * c_l / 3.0, max_relative = 1e-12);
        assert_relative_eq!(u, 2.5573, max_relative = 1e-4);

        // front: h vanishes exactly at xi = 2 c_l, and 2 c_l is the front speed
        let (h, _) = ritter_exact(h_l, G, 2.0 * c_l);
        assert_eq!(h, 0.0);
        assert_relative_eq!(2.0 * c_l, 7.672, max_relative = 1e-3);
    }

    #[test]
    fn ritter_depth_is_continuous_at_both_kinks() {
        let h_l = 1.5;
        let c_l = (G * h_l).sqrt();
        let eps = 1e-9;
        for &xi in &[-c_l, 2.0 * c_l] {
            let (h_m, _) = ritter_exact(h_l, G, xi - eps);
            let (h_p, _) = ritter_exact(h_l, G, xi + eps);
            assert!((h_m - h_p).abs() <= 1e-7);
        }
        // velocity is continuous at the rarefaction foot (the front carries
        // h -> 0, where u is conventionally zero)
        let (_, u_m) = ritter_exact(h_l, G, -c_l - eps);
        let (_, u_p) = ritter_exact(h_l, G, -c_l + eps);
        assert!((u_m - u_p).abs() <= 1e-7);
    }

    #[test]
    fn stoker_converges_to_ritter_for_vanishing_right_depth() {
        let h_l = 1.5;
        let c_l = (G * h_l).sqrt();
        let stoker = ExactProfile::stoker(h_l, 0.0, 1e-8, 0.0, G).unwrap();
        let ritter = ExactProfile::ritter(h_l, G);
        let n = 200;
        for k in 0..=n {
            let xi = -c_l + (1.9 * c_l - -c_l) * k as f64 / n as f64;
            let (h_s, _) = stoker.sample(xi);
            let (h_r, _) = ritter.sample(xi);
            assert!(
                (h_s - h_r).abs() <= 1e-3,
                "xi = {xi}: stoker {h_s} vs ritter {h_r}"
            );
        }
    }
}
