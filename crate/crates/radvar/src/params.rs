//! Problem parameters for the radial weighted p-Dirichlet problem on an
//! annulus Ω = {x ∈ ℝ^d : a < |x| < b} (a = 0 gives the full ball).

use crate::error::{Error, Result};

/// Smallest admissible gap of p above 1. Below this the dual exponent
/// p' = p/(p-1) and the kernel exponent 1/(p-1) blow up too fast for
/// reliable floating-point work, so construction rejects such p outright.
pub const MIN_P_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    /// Space dimension d ≥ 1.
    pub d: u32,
    /// Growth exponent p > 1.
    pub p: f64,
    /// Inner radius a ≥ 0 (a = 0: Ω is the ball of radius b).
    pub a: f64,
    /// Outer radius b > a.
    pub b: f64,
}

impl ProblemParams {
    pub fn new(d: u32, p: f64, a: f64, b: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSpec("dimension d must be >= 1".into()));
        }
        if !p.is_finite() || p < 1.0 + MIN_P_GAP {
            return Err(Error::InvalidSpec(format!(
                "exponent p = {p} must satisfy p >= 1 + {MIN_P_GAP:e}"
            )));
        }
        if !(a.is_finite() && b.is_finite()) || a < 0.0 || b <= a {
            return Err(Error::InvalidSpec(format!(
                "radii must satisfy 0 <= a < b, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { d, p, a, b })
    }

    /// Dual exponent p' = p/(p-1).
    pub fn p_conj(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    /// Surface measure ω_d of the unit sphere S^{d-1} ⊂ ℝ^d.
    /// ω_1 = 2 (two points), ω_2 = 2π, ω_3 = 4π.
    pub fn omega_d(&self) -> f64 {
        unit_sphere_area(self.d)
    }
}

/// ω_d = 2 π^{d/2} / Γ(d/2), evaluated exactly via the integer /
/// half-integer Gamma recurrence (d is an integer dimension).
pub fn unit_sphere_area(d: u32) -> f64 {
    assert!(d >= 1, "dimension must be >= 1");
    2.0 * std::f64::consts::PI.powf(d as f64 / 2.0) / gamma_half_integer(d)
}

/// Γ(n/2) for an integer n ≥ 1.
fn gamma_half_integer(n: u32) -> f64 {
    // Γ(1/2) = √π, Γ(1) = 1, Γ(x+1) = x Γ(x).
    let mut x = if n % 2 == 1 {
        std::f64::consts::PI.sqrt()
    } else {
        1.0
    };
    let mut k = if n % 2 == 1 { 1 } else { 2 };
    while k < n {
        x *= k as f64 / 2.0;
        k += 2;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn sphere_areas_low_dimensions() {
        assert_relative_eq!(unit_sphere_area(1), 2.0, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_area(2), 2.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_area(3), 4.0 * PI, max_relative = 1e-15);
        // ω_4 = 2π², ω_5 = 8π²/3
        assert_relative_eq!(unit_sphere_area(4), 2.0 * PI * PI, max_relative = 1e-14);
        assert_relative_eq!(
            unit_sphere_area(5),
            8.0 * PI * PI / 3.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn conjugate_exponent() {
        let pr = ProblemParams::new(1, 2.0, 0.0, 1.0).unwrap();
        assert_relative_eq!(pr.p_conj(), 2.0);
        let pr = ProblemParams::new(2, 3.0, 0.5, 2.0).unwrap();
        assert_relative_eq!(pr.p_conj(), 1.5);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ProblemParams::new(0, 2.0, 0.0, 1.0).is_err());
        assert!(ProblemParams::new(1, 1.0, 0.0, 1.0).is_err());
        assert!(ProblemParams::new(1, 1.0 + 1e-9, 0.0, 1.0).is_err());
        assert!(ProblemParams::new(1, 2.0, -0.1, 1.0).is_err());
        assert!(ProblemParams::new(1, 2.0, 1.0, 1.0).is_err());
        assert!(ProblemParams::new(1, f64::NAN, 0.0, 1.0).is_err());
    }
}
