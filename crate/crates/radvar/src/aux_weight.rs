//! The auxiliary weight η̂_p built from a degeneracy decomposition.
//!
//! On each degeneracy interval (a_i, b_i), with q1 = (3a_i+b_i)/4,
//! mid = (a_i+b_i)/2, q2 = (a_i+3b_i)/4:
//!
//! * left band  (a_i, q1]: η̂_p(t) = (∫_t^{mid} K ds)^{-1}  — increasing;
//! * mid band   [q1, q2]:  the left-band value at q1 (constant);
//! * right band [q2, b_i): η̂_p(t) = (∫_{mid}^t K ds)^{-1} — decreasing;
//! * endpoints carry the one-sided limits (0 exactly when the kernel
//!   integral diverges there);
//! * η̂_p ≡ 0 off the closure of the intervals.
//!
//! For asymmetric kernels the right band does not match the mid constant at
//! q2; the jump is stored per interval and surfaced in reports. The
//! d-dimensional auxiliary weight is ŵ_p = ω_d^{-1} η̂_p(|x|).
//!
//! The struct owns its weight, parameters and decomposition, plus cumulative
//! kernel tables at the weight's breakpoints, so a point evaluation costs
//! one partial-segment kernel integral (closed form for constant/power
//! pieces, adaptive only within a single tabulated cell).

use crate::decompose::{decompose_degeneracy, DegeneracyDecomposition, IntervalInfo};
use crate::error::{Error, Result};
use crate::params::ProblemParams;
use crate::quadrature::{self, QuadratureConfig};
use crate::weight::RadialWeightSpec;

/// One-sided behaviour of η̂_p at an interval endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryBehavior {
    /// Kernel integral diverges: η̂_p → 0 (degenerate endpoint).
    VanishingLimit,
    /// Kernel integral converges: η̂_p extends continuously with a positive
    /// value.
    FiniteExtension,
}

/// Band data of η̂_p on one degeneracy interval.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxInterval {
    pub lo: f64,
    pub hi: f64,
    pub q1: f64,
    pub mid: f64,
    pub q2: f64,
    /// Constant value on [q1, q2] = left-band value at q1.
    pub mid_const: f64,
    /// lim_{t→lo+} η̂_p (0 iff the kernel diverges at lo).
    pub left_limit: f64,
    /// lim_{t→hi-} η̂_p.
    pub right_limit: f64,
    /// lim_{t→q2+} η̂_p - mid_const: zero for kernels symmetric about mid,
    /// a genuine jump otherwise (documented behaviour of the band repair).
    pub right_band_jump: f64,
    /// Kernel cumulative table: breakpoints of the weight inside [lo, hi]
    /// (lo, mid, hi always included) with signed ∫_{mid}^{b_j} K
    /// (±∞ allowed at the outer entries).
    cum_points: Vec<f64>,
    cum_values: Vec<f64>,
}

impl AuxInterval {
    pub fn contains_closed(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone)]
pub struct AuxWeight {
    spec: RadialWeightSpec,
    params: ProblemParams,
    decomp: DegeneracyDecomposition,
    cfg: QuadratureConfig,
    intervals: Vec<AuxInterval>,
}

impl AuxWeight {
    /// Decompose and build in one step.
    pub fn build(
        spec: &RadialWeightSpec,
        params: &ProblemParams,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        let decomp = decompose_degeneracy(spec, params, cfg)?;
        Self::from_decomposition(&decomp, spec, params, cfg)
    }

    pub fn from_decomposition(
        decomp: &DegeneracyDecomposition,
        spec: &RadialWeightSpec,
        params: &ProblemParams,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        spec.check_params(params)?;
        let mut intervals = Vec::with_capacity(decomp.n_eta());
        for iv in decomp.intervals() {
            intervals.push(build_interval(spec, params, iv, cfg)?);
        }
        Ok(Self {
            spec: spec.clone(),
            params: *params,
            decomp: decomp.clone(),
            cfg: *cfg,
            intervals,
        })
    }

    pub fn spec(&self) -> &RadialWeightSpec {
        &self.spec
    }

    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    pub fn decomposition(&self) -> &DegeneracyDecomposition {
        &self.decomp
    }

    pub fn quad_config(&self) -> &QuadratureConfig {
        &self.cfg
    }

    pub fn intervals(&self) -> &[AuxInterval] {
        &self.intervals
    }

    pub fn interval_index_at(&self, t: f64) -> Option<usize> {
        self.intervals.iter().position(|iv| iv.contains_closed(t))
    }

    /// K(t) = (t^{d-1} η(t))^{-1/(p-1)}.
    pub fn kernel(&self, t: f64) -> f64 {
        quadrature::kernel(&self.spec, &self.params, t)
    }

    /// ∫_{mid_i}^{t} K for t in the closed interval i (signed; ±∞ at
    /// degenerate endpoints). One cumulative-table lookup plus a partial
    /// segment integral.
    fn cum_from_mid(&self, i: usize, t: f64) -> Result<f64> {
        let iv = &self.intervals[i];
        debug_assert!(iv.contains_closed(t));
        let pts = &iv.cum_points;
        let j = match pts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(j) => return Ok(iv.cum_values[j]),
            Err(j) => j, // t between pts[j-1] and pts[j]
        };
        debug_assert!(j > 0 && j < pts.len());
        // Integrate the partial segment from whichever neighbour is finite
        // (the outer table entries may be ±∞).
        let (lo_pt, hi_pt) = (pts[j - 1], pts[j]);
        let (lo_cum, hi_cum) = (iv.cum_values[j - 1], iv.cum_values[j]);
        if t <= iv.mid {
            // Left side: cum(t) = cum(hi_pt) - ∫_t^{hi_pt}.
            if hi_cum.is_finite() {
                let part =
                    quadrature::integrate_inverse_kernel(&self.spec, &self.params, t, hi_pt, &self.cfg)?;
                Ok(hi_cum - part)
            } else {
                let part =
                    quadrature::integrate_inverse_kernel(&self.spec, &self.params, lo_pt, t, &self.cfg)?;
                Ok(lo_cum + part)
            }
        } else if lo_cum.is_finite() {
            let part =
                quadrature::integrate_inverse_kernel(&self.spec, &self.params, lo_pt, t, &self.cfg)?;
            Ok(lo_cum + part)
        } else {
            let part =
                quadrature::integrate_inverse_kernel(&self.spec, &self.params, t, hi_pt, &self.cfg)?;
            Ok(hi_cum - part)
        }
    }

    /// η̂_p(t). Total function: 0 off the closure of the intervals,
    /// one-sided limits at the endpoints.
    pub fn eval(&self, t: f64) -> f64 {
        let Some(i) = self.interval_index_at(t) else {
            return 0.0;
        };
        let iv = &self.intervals[i];
        if t == iv.lo {
            return iv.left_limit;
        }
        if t == iv.hi {
            return iv.right_limit;
        }
        if t > iv.q1 && t <= iv.q2 {
            return iv.mid_const;
        }
        // Monotone bands. The cumulative is finite for interior t.
        let cum = self
            .cum_from_mid(i, t)
            .expect("interior kernel integral must evaluate");
        if t <= iv.q1 {
            // ∫_t^{mid} = -cum(t), positive.
            1.0 / (-cum)
        } else {
            1.0 / cum
        }
    }

    /// ŵ_p(t) = ω_d^{-1} η̂_p(t): the weight that appears in the
    /// d-dimensional fidelity and Poincaré statements.
    pub fn w_hat(&self, t: f64) -> f64 {
        self.eval(t) / self.params.omega_d()
    }

    /// Truncated comparison weight min{η, η̂_p, 1}.
    pub fn truncated(&self, t: f64) -> f64 {
        self.spec.eval(t).min(self.eval(t)).min(1.0)
    }

    /// η̂_p'(t) on the open monotone bands:
    /// +η̂_p(t)² K(t) on (a_i, q1), -η̂_p(t)² K(t) on (q2, b_i).
    /// Everywhere else the identity does not apply (`OutsideMonotoneBand`).
    pub fn derivative(&self, t: f64) -> Result<f64> {
        let Some(i) = self.interval_index_at(t) else {
            return Err(Error::OutsideMonotoneBand(format!(
                "t = {t} lies outside every degeneracy interval"
            )));
        };
        let iv = &self.intervals[i];
        let h = self.eval(t);
        if t > iv.lo && t < iv.q1 {
            Ok(h * h * self.kernel(t))
        } else if t > iv.q2 && t < iv.hi {
            Ok(-h * h * self.kernel(t))
        } else {
            Err(Error::OutsideMonotoneBand(format!(
                "t = {t} is not strictly inside a monotone band of interval {i}"
            )))
        }
    }

    /// Endpoint behaviour of interval i on the given side.
    pub fn boundary_behavior(&self, i: usize, side: crate::decompose::Side) -> BoundaryBehavior {
        let iv = &self.intervals[i];
        let limit = match side {
            crate::decompose::Side::Right => iv.left_limit, // at lo, looking right
            crate::decompose::Side::Left => iv.right_limit, // at hi, looking left
        };
        if limit == 0.0 {
            BoundaryBehavior::VanishingLimit
        } else {
            BoundaryBehavior::FiniteExtension
        }
    }

    /// ω_d ∫_{a_i}^{b_i} r^{d-1} G(r) (scale · η̂_p(r))^{p-1} dr by adaptive
    /// panels split at every non-smooth point (band edges, weight
    /// breakpoints, caller-supplied nodes), end panels graded toward the
    /// endpoints. scale = 1/ω_d gives the fidelity-type ŵ_p^{p-1} form;
    /// scale = 1 the interval-Poincaré form.
    pub fn weighted_integral(
        &self,
        i: usize,
        g: &dyn Fn(f64) -> f64,
        extra_breaks: &[f64],
        scale: f64,
        cfg: &QuadratureConfig,
    ) -> Result<f64> {
        let iv = &self.intervals[i];
        let pm1 = self.params.p - 1.0;
        let dm1 = self.params.d as i32 - 1;
        let om = self.params.omega_d();
        let mut cuts: Vec<f64> = vec![iv.lo, iv.q1, iv.mid, iv.q2, iv.hi];
        cuts.extend(self.spec.breakpoints_in(iv.lo, iv.hi));
        cuts.extend(
            extra_breaks
                .iter()
                .copied()
                .filter(|t| *t > iv.lo && *t < iv.hi),
        );
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        let f = |r: f64| {
            let h = self.eval(r);
            if h == 0.0 {
                0.0
            } else {
                r.powi(dm1) * g(r) * (scale * h).powf(pm1)
            }
        };
        let mut total = 0.0;
        let ncells = cuts.len() - 1;
        for (c, w) in cuts.windows(2).enumerate() {
            let (x0, x1) = (w[0], w[1]);
            if x1 <= x0 {
                continue;
            }
            let v = if c == 0 {
                quadrature::adaptive_graded(f, x0, x1, true, cfg)?
            } else if c == ncells - 1 {
                quadrature::adaptive_graded(f, x0, x1, false, cfg)?
            } else {
                quadrature::adaptive(f, x0, x1, cfg)?
            };
            total += v;
            if !total.is_finite() {
                return Ok(f64::INFINITY);
            }
        }
        Ok(om * total)
    }
}

fn build_interval(
    spec: &RadialWeightSpec,
    params: &ProblemParams,
    iv: &IntervalInfo,
    cfg: &QuadratureConfig,
) -> Result<AuxInterval> {
    let (lo, hi) = (iv.lo, iv.hi);
    let mid = 0.5 * (lo + hi);
    let q1 = 0.75 * lo + 0.25 * hi;
    let q2 = 0.25 * lo + 0.75 * hi;

    // Cumulative kernel table at the weight's breakpoints (signed from mid).
    let mut pts: Vec<f64> = vec![lo, q1, mid, q2, hi];
    pts.extend(spec.breakpoints_in(lo, hi));
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let mid_idx = pts
        .iter()
        .position(|&x| x == mid)
        .expect("mid is in the table");
    let mut cum = vec![0.0f64; pts.len()];
    for j in (0..mid_idx).rev() {
        let part = quadrature::integrate_inverse_kernel(spec, params, pts[j], pts[j + 1], cfg)?;
        cum[j] = cum[j + 1] - part;
    }
    for j in mid_idx + 1..pts.len() {
        let part = quadrature::integrate_inverse_kernel(spec, params, pts[j - 1], pts[j], cfg)?;
        cum[j] = cum[j - 1] + part;
    }

    let q1_idx = pts.iter().position(|&x| x == q1).unwrap();
    let q2_idx = pts.iter().position(|&x| x == q2).unwrap();
    let left_half = -cum[0]; // ∫_{lo}^{mid} K, possibly +∞
    let right_half = *cum.last().unwrap(); // ∫_{mid}^{hi} K
    let int_q1_mid = -cum[q1_idx]; // ∫_{q1}^{mid} K
    let int_mid_q2 = cum[q2_idx]; // ∫_{mid}^{q2} K
    if !(int_q1_mid.is_finite() && int_q1_mid > 0.0) {
        return Err(Error::AnalysisInconclusive(format!(
            "kernel integral over the inner band of ({lo}, {hi}) is not finite-positive"
        )));
    }
    let mid_const = 1.0 / int_q1_mid;
    let left_limit = if left_half.is_finite() {
        1.0 / left_half
    } else {
        0.0
    };
    let right_limit = if right_half.is_finite() {
        1.0 / right_half
    } else {
        0.0
    };
    let right_band_jump = 1.0 / int_mid_q2 - mid_const;

    Ok(AuxInterval {
        lo,
        hi,
        q1,
        mid,
        q2,
        mid_const,
        left_limit,
        right_limit,
        right_band_jump,
        cum_points: pts,
        cum_values: cum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::Side;
    use crate::weight::WeightPiece;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    /// η ≡ 1 on (0,1), d = 1, p = 2: everything is explicit.
    fn flat_aux() -> AuxWeight {
        let params = ProblemParams::new(1, 2.0, 0.0, 1.25).unwrap();
        let spec = RadialWeightSpec::new(
            vec![WeightPiece::Constant {
                value: 1.0,
                lo: 0.0,
                hi: 1.0,
            }],
            &params,
        )
        .unwrap();
        AuxWeight::build(&spec, &params, &cfg()).unwrap()
    }

    #[test]
    fn flat_weight_band_structure() {
        let aux = flat_aux();
        assert_eq!(aux.intervals().len(), 1);
        let iv = &aux.intervals()[0];
        assert_relative_eq!(iv.q1, 0.25);
        assert_relative_eq!(iv.mid, 0.5);
        assert_relative_eq!(iv.q2, 0.75);
        // K ≡ 1: left band η̂ = 1/(0.5-t), mid constant 4, right 1/(t-0.5).
        assert_relative_eq!(iv.mid_const, 4.0, max_relative = 1e-12);
        assert_relative_eq!(aux.eval(0.125), 8.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(aux.eval(0.5), 4.0, max_relative = 1e-12);
        assert_relative_eq!(aux.eval(0.875), 8.0 / 3.0, max_relative = 1e-12);
        // Band continuity at q1 and q2 for this symmetric kernel.
        assert_relative_eq!(aux.eval(0.25), 4.0, max_relative = 1e-12);
        assert_relative_eq!(aux.eval(0.75), 4.0, max_relative = 1e-12);
        assert!(iv.right_band_jump.abs() < 1e-12);
        // Finite endpoint limits 1/0.5 = 2.
        assert_relative_eq!(aux.eval(0.0), 2.0, max_relative = 1e-12);
        assert_relative_eq!(aux.eval(1.0), 2.0, max_relative = 1e-12);
        assert_eq!(
            aux.boundary_behavior(0, Side::Right),
            BoundaryBehavior::FiniteExtension
        );
        // Off support.
        assert_eq!(aux.eval(1.1), 0.0);
        // Truncation: min{1, η̂, 1} = 1 inside.
        assert_relative_eq!(aux.truncated(0.5), 1.0);
        assert_relative_eq!(aux.truncated(0.125), 1.0);
    }

    #[test]
    fn flat_weight_derivative_identity() {
        let aux = flat_aux();
        // Left band: η̂' = η̂² K = (8/3)² = 64/9 at t = 0.125.
        assert_relative_eq!(
            aux.derivative(0.125).unwrap(),
            64.0 / 9.0,
            max_relative = 1e-12
        );
        // Right band: negative sign.
        assert_relative_eq!(
            aux.derivative(0.875).unwrap(),
            -64.0 / 9.0,
            max_relative = 1e-12
        );
        // Mid band and endpoints are outside the monotone bands.
        assert!(matches!(
            aux.derivative(0.5),
            Err(Error::OutsideMonotoneBand(_))
        ));
        assert!(matches!(
            aux.derivative(0.25),
            Err(Error::OutsideMonotoneBand(_))
        ));
        assert!(matches!(
            aux.derivative(2.0),
            Err(Error::OutsideMonotoneBand(_))
        ));
    }

    #[test]
    fn power_bump_matches_closed_form() {
        // Compensated bump: on the left band
        //   η̂_p(r) = (α_p - 1) m^{1/(p-1)} (r-lo)^{α_p-1}
        //            / (1 - (2(r-lo)/(hi-lo))^{α_p-1})            (α_p > 1)
        // via the explicit kernel antiderivative.
        let (m, alpha, lo, hi) = (2.0, 3.0, 0.2, 0.8);
        let p = 2.0;
        let params = ProblemParams::new(2, p, 0.0, 1.25).unwrap();
        let spec = RadialWeightSpec::new(
            vec![WeightPiece::PowerBump {
                m,
                alpha,
                lo,
                hi,
                radial_compensation: true,
            }],
            &params,
        )
        .unwrap();
        let aux = AuxWeight::build(&spec, &params, &cfg()).unwrap();
        let ap: f64 = alpha / (p - 1.0);
        let mq = m.powf(1.0 / (p - 1.0));
        let closed = |r: f64| {
            (ap - 1.0) * mq * (r - lo).powf(ap - 1.0)
                / (1.0 - (2.0 * (r - lo) / (hi - lo)).powf(ap - 1.0))
        };
        for r in [0.21, 0.25, 0.3, 0.34] {
            assert_relative_eq!(aux.eval(r), closed(r), max_relative = 1e-11);
        }
        // α_p = 3 > 1: kernel diverges at the endpoints, vanishing limits.
        assert_eq!(aux.eval(lo), 0.0);
        assert_eq!(aux.eval(hi), 0.0);
        assert_eq!(
            aux.boundary_behavior(0, Side::Right),
            BoundaryBehavior::VanishingLimit
        );
        assert_eq!(
            aux.boundary_behavior(0, Side::Left),
            BoundaryBehavior::VanishingLimit
        );
        // Monotone increasing on the left band.
        let mut prev = 0.0;
        for k in 1..40 {
            let r = lo + (aux.intervals()[0].q1 - lo) * k as f64 / 40.0;
            let v = aux.eval(r);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn scaling_law() {
        // η̂_p[λ η] = λ^{1/(p-1)} η̂_p[η].
        let p = 3.0;
        let params = ProblemParams::new(1, p, 0.0, 1.25).unwrap();
        let spec = RadialWeightSpec::new(
            vec![WeightPiece::PowerBump {
                m: 1.4,
                alpha: 2.0,
                lo: 0.1,
                hi: 0.9,
                radial_compensation: false,
            }],
            &params,
        )
        .unwrap();
        let lambda = 7.3;
        let aux = AuxWeight::build(&spec, &params, &cfg()).unwrap();
        let aux_l = AuxWeight::build(&spec.scaled(lambda), &params, &cfg()).unwrap();
        let factor = lambda.powf(1.0 / (p - 1.0));
        for r in [0.15, 0.3, 0.5, 0.62, 0.88] {
            assert_relative_eq!(aux_l.eval(r), factor * aux.eval(r), max_relative = 1e-10);
        }
    }

    #[test]
    fn asymmetric_kernel_has_documented_jump() {
        // Different constants left/right of the midpoint make the kernel
        // asymmetric: the mid band takes the left value at q1 and the right
        // band jumps at q2.
        let params = ProblemParams::new(1, 2.0, 0.0, 1.25).unwrap();
        let spec = RadialWeightSpec::new(
            vec![
                WeightPiece::Constant {
                    value: 1.0,
                    lo: 0.0,
                    hi: 0.5,
                },
                WeightPiece::Constant {
                    value: 4.0,
                    lo: 0.5,
                    hi: 1.0,
                },
            ],
            &params,
        )
        .unwrap();
        let aux = AuxWeight::build(&spec, &params, &cfg()).unwrap();
        assert_eq!(aux.intervals().len(), 1);
        let iv = &aux.intervals()[0];
        // Left band kernel ≡ 1: mid_const = 1/(0.5-0.25) = 4.
        assert_relative_eq!(iv.mid_const, 4.0, max_relative = 1e-12);
        // Right kernel ≡ 1/4: ∫_{0.5}^{0.75} = 1/16 ⇒ value 16 at q2+.
        assert_relative_eq!(iv.right_band_jump, 12.0, max_relative = 1e-11);
        assert_relative_eq!(aux.eval(0.75), 4.0, max_relative = 1e-12); // mid band owns q2
        assert_relative_eq!(aux.eval(0.75 + 1e-9), 16.0, max_relative = 1e-6);
    }

    #[test]
    fn empty_decomposition_gives_zero_weight() {
        let params = ProblemParams::new(1, 2.0, 0.0, 1.25).unwrap();
        let spec = RadialWeightSpec::new(
            vec![WeightPiece::Constant {
                value: 0.0,
                lo: 0.2,
                hi: 0.8,
            }],
            &params,
        )
        .unwrap();
        let aux = AuxWeight::build(&spec, &params, &cfg()).unwrap();
        assert!(aux.intervals().is_empty());
        for t in [0.1, 0.3, 0.5, 0.9] {
            assert_eq!(aux.eval(t), 0.0);
        }
    }

    #[test]
    fn boundedness_by_mid_const() {
        // η̂_p ≤ max(mid_const, right-band value at q2) on each interval.
        let params = ProblemParams::new(2, 1.7, 0.0, 1.25).unwrap();
        let spec = RadialWeightSpec::new(
            vec![WeightPiece::PowerBump {
                m: 0.8,
                alpha: 1.1,
                lo: 0.25,
                hi: 0.85,
                radial_compensation: false,
            }],
            &params,
        )
        .unwrap();
        let aux = AuxWeight::build(&spec, &params, &cfg()).unwrap();
        let iv = &aux.intervals()[0];
        let bound = iv.mid_const.max(iv.mid_const + iv.right_band_jump) * (1.0 + 1e-12);
        for k in 0..=200 {
            let t = iv.lo + (iv.hi - iv.lo) * k as f64 / 200.0;
            assert!(aux.eval(t) <= bound, "η̂ exceeded its band bound at {t}");
        }
    }
}
