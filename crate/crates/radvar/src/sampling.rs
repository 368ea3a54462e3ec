//! Seeded generators for the fuzz suites: random degenerate weights, random
//! piecewise-linear profiles, blow-up profiles matched to degenerate
//! endpoints, and non-radial polar competitors.
//!
//! All weight supports are kept strictly inside the unit ball — the interval
//! Poincaré inequality is only guaranteed there — and strictly inside the
//! annulus per the containment rules of the weight model.

use crate::aux_weight::AuxWeight;
use crate::decompose::Side;
use crate::error::{Error, Result};
use crate::params::ProblemParams;
use crate::profile::{graded_grid, RadialProfile};
use crate::solver::{uniform_angles, PolarField};
use crate::weight::{RadialWeightSpec, WeightPiece};
use rand::Rng;

/// The fixed desk-scale problem domain Ω = {0 < |x| < 1.25} used by the
/// fuzz suites; generated supports stay within (0.02, 0.95).
pub fn standard_params(d: u32, p: f64) -> ProblemParams {
    ProblemParams::new(d, p, 0.0, 1.25).expect("standard parameters are valid")
}

/// Random weight with 1–3 pieces (constants, power bumps straddling the
/// integrability threshold, positive tabulated profiles), with occasional
/// zero gaps between pieces. Support ⊆ (0.02, 0.95).
pub fn random_weight(rng: &mut impl Rng, params: &ProblemParams) -> RadialWeightSpec {
    loop {
        let a_s = 0.02 + rng.gen::<f64>() * 0.25;
        let b_s = 0.55 + rng.gen::<f64>() * 0.40;
        let k = rng.gen_range(1..=3usize);
        // Jittered partition of (a_s, b_s) into k slots.
        let mut bounds: Vec<f64> = (0..=k)
            .map(|i| a_s + (b_s - a_s) * i as f64 / k as f64)
            .collect();
        for b in bounds.iter_mut().skip(1).take(k - 1) {
            *b += (rng.gen::<f64>() - 0.5) * 0.3 * (b_s - a_s) / k as f64;
        }
        let mut pieces = Vec::new();
        for s in 0..k {
            let (lo, hi) = (bounds[s], bounds[s + 1]);
            if hi - lo < 0.08 {
                continue;
            }
            // Occasionally leave a zero gap to produce several intervals.
            if k > 1 && pieces.len() + (k - 1 - s) >= 1 && rng.gen_bool(0.2) {
                continue;
            }
            pieces.push(random_piece(rng, params, lo, hi));
        }
        if pieces.is_empty() {
            continue;
        }
        match RadialWeightSpec::new(pieces, params) {
            Ok(spec) => return spec,
            Err(_) => continue,
        }
    }
}

fn random_piece(rng: &mut impl Rng, params: &ProblemParams, lo: f64, hi: f64) -> WeightPiece {
    match rng.gen_range(0..3u8) {
        0 => WeightPiece::Constant {
            value: (rng.gen::<f64>() * 3.0 - 1.5).exp(),
            lo,
            hi,
        },
        1 => {
            // Half the bumps have an integrable kernel at the tip
            // (α_p < 1), half a divergent one.
            let ratio = if rng.gen_bool(0.5) {
                0.3 + rng.gen::<f64>() * 0.6
            } else {
                1.1 + rng.gen::<f64>() * 1.9
            };
            WeightPiece::PowerBump {
                m: (rng.gen::<f64>() * 2.0 - 1.0).exp(),
                alpha: ratio * (params.p - 1.0),
                lo,
                hi,
                radial_compensation: params.d > 1 && rng.gen_bool(0.3),
            }
        }
        _ => {
            let m = rng.gen_range(4..=8usize);
            let grid: Vec<f64> = (0..m)
                .map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64)
                .collect();
            let values: Vec<f64> = (0..m).map(|_| 0.05 + rng.gen::<f64>() * 2.95).collect();
            WeightPiece::Tabulated { grid, values }
        }
    }
}

/// Random piecewise-linear profile with 4–64 nodes spanning [lo, hi] and
/// values in [-10, 10].
pub fn random_profile(rng: &mut impl Rng, lo: f64, hi: f64) -> RadialProfile {
    let n = rng.gen_range(4..=64usize);
    let mut grid = vec![lo, hi];
    while grid.len() < n {
        let t = lo + rng.gen::<f64>() * (hi - lo);
        if grid.iter().all(|&x| (x - t).abs() > 1e-6 * (hi - lo)) {
            grid.push(t);
        }
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let values: Vec<f64> = (0..grid.len())
        .map(|_| rng.gen::<f64>() * 20.0 - 10.0)
        .collect();
    RadialProfile::new(grid, values).expect("generated grid is valid")
}

/// Profile blowing up like the log of the kernel antiderivative at one
/// endpoint of degeneracy interval `i`: v(r) = -ln η̂_p(r) on the band
/// adjacent to that endpoint, extended by its band-edge value over the
/// rest of the interval. Its energy is finite exactly when the endpoint
/// degeneracy is strict (for power-law tips, α_p > 1), while v itself is
/// unbounded whenever the endpoint is of vanishing type. Nodes are graded
/// toward the tip and the band edge sits exactly on a node, so the
/// interpolant's energy converges at second order in `n`.
pub fn blowup_profile(
    aux: &AuxWeight,
    i: usize,
    side: Side,
    n: usize,
) -> Result<RadialProfile> {
    let iv = aux
        .intervals()
        .get(i)
        .ok_or_else(|| Error::InvalidSpec(format!("no degeneracy interval {i}")))?;
    let eps = iv.len() * 1e-9;
    match side {
        Side::Left => {
            let mut grid = graded_grid(iv.lo + eps, iv.q1, n, 3.0);
            let mut values: Vec<f64> = grid
                .iter()
                .map(|&r| -aux.eval(r).max(1e-300).ln())
                .collect();
            grid.push(iv.hi);
            values.push(*values.last().unwrap());
            RadialProfile::new(grid, values)
        }
        Side::Right => {
            let mut grid = graded_grid(iv.q2, iv.hi - eps, n, 3.0);
            let mut values: Vec<f64> = grid
                .iter()
                .map(|&r| -aux.eval(r).max(1e-300).ln())
                .collect();
            // eval(q2) returns the mid-band constant; pin the right band's
            // continuous extension instead so the first cell carries no
            // artificial jump when the band repair leaves one at q2.
            values[0] = -(iv.mid_const + iv.right_band_jump).max(1e-300).ln();
            grid.insert(0, iv.lo);
            values.insert(0, values[0]);
            RadialProfile::new(grid, values)
        }
    }
}

/// u₀ plus a random trigonometric angular ripple: a genuinely non-radial
/// competitor on the given solver grid.
pub fn random_polar_competitor(
    rng: &mut impl Rng,
    u0: &RadialProfile,
    radii: Vec<f64>,
    d: u32,
) -> Result<PolarField> {
    let k = if d == 1 { 2 } else { rng.gen_range(4..=12usize) };
    let angles = uniform_angles(d, k)?;
    let freq = rng.gen_range(1..=3usize) as f64;
    let amp = rng.gen::<f64>();
    let phase = rng.gen::<f64>() * std::f64::consts::TAU;
    let (rlo, rhi) = (radii[0], *radii.last().unwrap());
    let values: Vec<Vec<f64>> = angles
        .iter()
        .map(|&th| {
            radii
                .iter()
                .map(|&r| {
                    let env = (std::f64::consts::PI * (r - rlo) / (rhi - rlo)).sin();
                    u0.value(r) + amp * (freq * th + phase).sin() * env
                })
                .collect()
        })
        .collect();
    PolarField::new(radii, angles, values)
}
