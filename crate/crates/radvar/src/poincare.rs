//! Double-weight Poincaré verification.
//!
//! Pointwise form, left half of an interval (a_i < r_ζ ≤ r_x ≤ mid, anchor
//! ζ farther from the midpoint):
//!
//!   |v(x) - v(ζ)| · ω_d (ŵ_p(r_ζ))^{1/p'}
//!       ≤ (ω_d ∫_{r_ζ}^{r_x} |v'|^p r^{d-1} η dr)^{1/p}
//!
//! and the split companion
//!
//!   |v(ζ)|^p ω_d^p (ŵ_p(r_ζ))^{p-1}
//!       ≤ 2^{p-1} (|v(x)|^p ω_d^p (ŵ_p(r_ζ))^{p-1}
//!                  + ω_d ∫_{a_i}^{r_x} |v'|^p r^{d-1} η dr).
//!
//! The right half mirrors both. Interval form, per degeneracy interval:
//!
//!   lhs_i = (ω_d / (b_i - a_i)) ∫_{a_i}^{b_i} r^{d-1} |v - v(c_i)|^p
//!            η̂_p^{p-1} dr   ≤   rhs_i = ω_d ∫_{a_i}^{b_i} r^{d-1} |v'|^p η dr
//!
//! with c_i the interval midpoint. These inequalities are guaranteed for
//! supports inside the unit ball; the checks below are verifiers either way
//! and report signed margins.

use crate::aux_weight::AuxWeight;
use crate::error::{Error, Result};
use crate::profile::RadialProfile;
use crate::quadrature::{self, QuadratureConfig};

/// Both pointwise bounds at one (anchor, target) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointwiseBound {
    pub interval: usize,
    pub r_anchor: f64,
    pub r_target: f64,
    /// |v(x) - v(ζ)| ω_d (ŵ_p(ζ))^{1/p'}.
    pub lhs_difference: f64,
    /// (ω_d ∫ between |v'|^p r^{d-1} η)^{1/p}.
    pub rhs_difference: f64,
    /// |v(ζ)|^p ω_d^p (ŵ_p(ζ))^{p-1}.
    pub lhs_split: f64,
    /// 2^{p-1}(|v(x)|^p ω_d^p (ŵ_p(ζ))^{p-1} + energy from the interval
    /// endpoint to x).
    pub rhs_split: f64,
}

impl PointwiseBound {
    pub fn margin_difference(&self) -> f64 {
        self.rhs_difference - self.lhs_difference
    }

    pub fn margin_split(&self) -> f64 {
        self.rhs_split - self.lhs_split
    }

    /// Both inequalities hold up to a relative slack.
    pub fn satisfied(&self, rel_slack: f64) -> bool {
        let ok = |lhs: f64, rhs: f64| lhs <= rhs + rel_slack * rhs.abs().max(1.0);
        ok(self.lhs_difference, self.rhs_difference) && ok(self.lhs_split, self.rhs_split)
    }
}

/// Evaluate the pointwise bounds for anchor radius r_zeta and target radius
/// r_x. Both must lie in the same degeneracy interval and on the same side
/// of its midpoint, with the anchor no closer to the midpoint than the
/// target... anchor outward, target inward.
pub fn check_pointwise(
    profile: &RadialProfile,
    aux: &AuxWeight,
    r_zeta: f64,
    r_x: f64,
) -> Result<PointwiseBound> {
    let Some(i) = aux.interval_index_at(r_zeta) else {
        return Err(Error::OrderingViolated(format!(
            "anchor r = {r_zeta} lies in no degeneracy interval"
        )));
    };
    let iv = &aux.intervals()[i];
    if !iv.contains_closed(r_x) {
        return Err(Error::OrderingViolated(format!(
            "target r = {r_x} lies outside interval {i} = ({}, {})",
            iv.lo, iv.hi
        )));
    }
    let mid = iv.mid;
    let left_half = r_zeta <= mid && r_x <= mid && r_zeta <= r_x;
    let right_half = r_zeta >= mid && r_x >= mid && r_x <= r_zeta;
    if !(left_half || right_half) {
        return Err(Error::OrderingViolated(format!(
            "anchor {r_zeta} and target {r_x} must sit on one side of the midpoint {mid} with the anchor outward"
        )));
    }
    let params = aux.params();
    let (p, om) = (params.p, params.omega_d());
    let pc = params.p_conj();
    let w_hat_z = aux.w_hat(r_zeta);

    let (lo, hi) = (r_zeta.min(r_x), r_zeta.max(r_x));
    let between = quadrature::integrate_energy(profile, aux.spec(), params, (lo, hi));
    let rhs_difference = between.powf(1.0 / p);
    let dv = (profile.value(r_x) - profile.value(r_zeta)).abs();
    let lhs_difference = dv * om * w_hat_z.powf(1.0 / pc);

    // Split bound: the energy runs from the interval endpoint to the target.
    let from_edge = if left_half {
        quadrature::integrate_energy(profile, aux.spec(), params, (iv.lo, r_x))
    } else {
        quadrature::integrate_energy(profile, aux.spec(), params, (r_x, iv.hi))
    };
    let wpow = w_hat_z.powf(p - 1.0) * om.powf(p);
    let lhs_split = profile.value(r_zeta).abs().powf(p) * wpow;
    let rhs_split =
        2f64.powf(p - 1.0) * (profile.value(r_x).abs().powf(p) * wpow + from_edge);

    Ok(PointwiseBound {
        interval: i,
        r_anchor: r_zeta,
        r_target: r_x,
        lhs_difference,
        rhs_difference,
        lhs_split,
        rhs_split,
    })
}

/// Interval-form Poincaré data for one degeneracy interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareRow {
    pub interval: usize,
    /// Midpoint c_i used as the anchor point.
    pub c: f64,
    /// v(c_i).
    pub anchor_value: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl PoincareRow {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoincareReport {
    pub rows: Vec<PoincareRow>,
    pub lhs_total: f64,
    pub rhs_total: f64,
}

impl PoincareReport {
    pub fn margin_total(&self) -> f64 {
        self.rhs_total - self.lhs_total
    }

    /// Σ lhs_i ≤ Σ rhs_i up to a relative slack.
    pub fn satisfied(&self, rel_slack: f64) -> bool {
        self.lhs_total <= self.rhs_total + rel_slack * self.rhs_total.abs().max(1.0)
    }

    /// Every interval satisfies its own inequality up to the slack.
    pub fn satisfied_per_interval(&self, rel_slack: f64) -> bool {
        self.rows
            .iter()
            .all(|r| r.lhs <= r.rhs + rel_slack * r.rhs.abs().max(1.0))
    }
}

/// Radii where the piecewise-linear profile crosses the given level;
/// |v - level|^p has a kink there for non-even p, so quadrature panels must
/// not straddle these points.
fn level_crossings(profile: &RadialProfile, level: f64) -> Vec<f64> {
    let (g, v) = (profile.grid(), profile.values());
    let mut out = Vec::new();
    for j in 0..g.len() - 1 {
        let (a, b) = (v[j] - level, v[j + 1] - level);
        if a * b < 0.0 {
            out.push(g[j] + a / (a - b) * (g[j + 1] - g[j]));
        }
    }
    out
}

/// Interval-form check over every degeneracy interval.
pub fn check_poincare(
    profile: &RadialProfile,
    aux: &AuxWeight,
    cfg: &QuadratureConfig,
) -> Result<PoincareReport> {
    let params = aux.params();
    let p = params.p;
    let mut rows = Vec::with_capacity(aux.intervals().len());
    let mut lhs_total = 0.0;
    let mut rhs_total = 0.0;
    for (i, iv) in aux.intervals().iter().enumerate() {
        let c = iv.mid;
        let anchor_value = profile.value(c);
        let gfun = move |r: f64, prof: &RadialProfile| (prof.value(r) - anchor_value).abs().powf(p);
        let prof = profile.clone();
        let mut breaks = profile.grid().to_vec();
        breaks.extend(level_crossings(profile, anchor_value));
        let lhs = aux.weighted_integral(
            i,
            &move |r| gfun(r, &prof),
            &breaks,
            1.0,
            cfg,
        )? / iv.len();
        let rhs = quadrature::integrate_energy(profile, aux.spec(), params, (iv.lo, iv.hi));
        if !rhs.is_finite() || !lhs.is_finite() {
            return Err(Error::NotInDomain(format!(
                "energy is not finite on degeneracy interval {i} = ({}, {})",
                iv.lo, iv.hi
            )));
        }
        lhs_total += lhs;
        rhs_total += rhs;
        rows.push(PoincareRow {
            interval: i,
            c,
            anchor_value,
            lhs,
            rhs,
        });
    }
    Ok(PoincareReport {
        rows,
        lhs_total,
        rhs_total,
    })
}

/// lhs_i computed with a fixed, non-adaptive panel count per smooth cell —
/// the knob that demonstrates discretization slack shrinking under panel
/// doubling.
pub fn poincare_lhs_fixed(
    profile: &RadialProfile,
    aux: &AuxWeight,
    i: usize,
    panels_per_cell: usize,
) -> f64 {
    let params = aux.params();
    let (p, om) = (params.p, params.omega_d());
    let dm1 = params.d as i32 - 1;
    let iv = &aux.intervals()[i];
    let anchor = profile.value(iv.mid);
    let mut cuts: Vec<f64> = vec![iv.lo, iv.q1, iv.mid, iv.q2, iv.hi];
    cuts.extend(aux.spec().breakpoints_in(iv.lo, iv.hi));
    cuts.extend(
        profile
            .grid()
            .iter()
            .copied()
            .chain(level_crossings(profile, anchor))
            .filter(|t| *t > iv.lo && *t < iv.hi),
    );
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    let f = |r: f64| {
        let h = aux.eval(r);
        if h == 0.0 {
            0.0
        } else {
            r.powi(dm1) * (profile.value(r) - anchor).abs().powf(p) * h.powf(p - 1.0)
        }
    };
    let mut total = 0.0;
    for w in cuts.windows(2) {
        total += quadrature::fixed_panels(f, w[0], w[1], panels_per_cell);
    }
    om * total / iv.len()
}

/// Graph norm ‖v‖ = (‖v‖^p_{fid} + Dirichlet energy)^{1/p} where the first
/// term is the ŵ_p^{p-1}-weighted p-norm over the intervals.
pub fn w_norm(profile: &RadialProfile, aux: &AuxWeight, cfg: &QuadratureConfig) -> Result<f64> {
    let params = aux.params();
    let p = params.p;
    let scale = 1.0 / params.omega_d();
    let mut total = 0.0;
    let mut breaks = profile.grid().to_vec();
    breaks.extend(level_crossings(profile, 0.0));
    for (i, iv) in aux.intervals().iter().enumerate() {
        let prof = profile.clone();
        total += aux.weighted_integral(
            i,
            &move |r| prof.value(r).abs().powf(p),
            &breaks,
            scale,
            cfg,
        )?;
        total += quadrature::integrate_energy(profile, aux.spec(), params, (iv.lo, iv.hi));
        if !total.is_finite() {
            return Err(Error::NotInDomain(format!(
                "profile has non-finite norm contribution on interval ({}, {})",
                iv.lo, iv.hi
            )));
        }
    }
    Ok(total.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aux_weight::AuxWeight;
    use crate::params::ProblemParams;
    use crate::weight::{RadialWeightSpec, WeightPiece};
    use approx::assert_relative_eq;

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
        AuxWeight::build(&spec, &params, &QuadratureConfig::default()).unwrap()
    }

    #[test]
    fn pointwise_linear_profile_attains_equality() {
        // v(r) = r, η ≡ 1, d = 1, p = 2, ζ = 0.125, x = 0.5: the Hölder
        // factors are constant, so the difference bound is tight:
        // both sides equal √0.75.
        let aux = flat_aux();
        let prof = RadialProfile::new(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        let b = check_pointwise(&prof, &aux, 0.125, 0.5).unwrap();
        let expected = 0.75f64.sqrt();
        assert_relative_eq!(b.lhs_difference, expected, max_relative = 1e-12);
        assert_relative_eq!(b.rhs_difference, expected, max_relative = 1e-12);
        assert!(b.satisfied(1e-9));
        // Split bound strictly satisfied here.
        assert!(b.lhs_split <= b.rhs_split);
        // Mirrored pair on the right half.
        let b2 = check_pointwise(&prof, &aux, 0.875, 0.5).unwrap();
        assert_relative_eq!(
            b2.lhs_difference,
            b2.rhs_difference,
            max_relative = 1e-12
        );
    }

    #[test]
    fn pointwise_rejects_bad_ordering() {
        let aux = flat_aux();
        let prof = RadialProfile::new(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        // Straddling the midpoint.
        assert!(check_pointwise(&prof, &aux, 0.125, 0.875).is_err());
        // Anchor inward of target on the left half.
        assert!(check_pointwise(&prof, &aux, 0.4, 0.2).is_err());
        // Outside any interval.
        assert!(check_pointwise(&prof, &aux, 1.1, 1.2).is_err());
    }

    #[test]
    fn interval_form_matches_hand_computation() {
        // v(r) = r, η ≡ 1, d = 1, p = 2:
        // lhs = 2 ∫_0^1 (r-1/2)² η̂_2 dr = 11/24, rhs = 2.
        let aux = flat_aux();
        let prof = RadialProfile::new(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        let rep = check_poincare(&prof, &aux, &QuadratureConfig::default()).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert_relative_eq!(rep.rows[0].anchor_value, 0.5);
        assert_relative_eq!(rep.lhs_total, 11.0 / 24.0, max_relative = 1e-9);
        assert_relative_eq!(rep.rhs_total, 2.0, max_relative = 1e-12);
        assert!(rep.satisfied(1e-9) && rep.satisfied_per_interval(1e-9));
    }

    #[test]
    fn fixed_panel_lhs_converges_to_adaptive() {
        let aux = flat_aux();
        let grid: Vec<f64> = (0..=16).map(|k| k as f64 / 16.0).collect();
        let vals: Vec<f64> = grid.iter().map(|r| (3.0 * r).cos()).collect();
        let prof = RadialProfile::new(grid, vals).unwrap();
        let rep = check_poincare(&prof, &aux, &QuadratureConfig::default()).unwrap();
        let truth = rep.lhs_total;
        let e1 = (poincare_lhs_fixed(&prof, &aux, 0, 1) - truth).abs();
        let e2 = (poincare_lhs_fixed(&prof, &aux, 0, 2) - truth).abs();
        assert!(e2 <= e1 + 1e-15, "doubling panels must not grow the error");
    }

    #[test]
    fn w_norm_flat_weight_hand_value() {
        // v ≡ 1: ‖v‖^p = ∫ η̂_2 dr (= 2 + 2 ln 2) with zero energy.
        let aux = flat_aux();
        let prof = RadialProfile::constant(vec![0.0, 1.0], 1.0).unwrap();
        let n = w_norm(&prof, &aux, &QuadratureConfig::default()).unwrap();
        let expected = (2.0 + 2.0 * 2f64.ln()).sqrt();
        assert_relative_eq!(n, expected, max_relative = 1e-9);
    }

    #[test]
    fn fidelity_norm_flat_weight_hand_value() {
        // |v - g| ≡ 1 ⇒ same integral as above.
        let aux = flat_aux();
        let v = RadialProfile::constant(vec![0.0, 1.0], 2.0).unwrap();
        let g = RadialProfile::constant(vec![0.0, 1.0], 1.0).unwrap();
        let n = quadrature::integrate_fidelity(&v, &g, &aux, &QuadratureConfig::default()).unwrap();
        assert_relative_eq!(n, (2.0 + 2.0 * 2f64.ln()).sqrt(), max_relative = 1e-9);
    }

    #[test]
    fn zero_aux_weight_trivializes_everything() {
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
        let aux = AuxWeight::build(&spec, &params, &QuadratureConfig::default()).unwrap();
        let prof = RadialProfile::new(vec![0.0, 1.0], vec![5.0, -3.0]).unwrap();
        let rep = check_poincare(&prof, &aux, &QuadratureConfig::default()).unwrap();
        assert_eq!(rep.rows.len(), 0);
        assert_eq!(rep.lhs_total, 0.0);
        assert!(rep.satisfied(0.0));
        let n = w_norm(&prof, &aux, &QuadratureConfig::default()).unwrap();
        assert_eq!(n, 0.0);
    }
}
