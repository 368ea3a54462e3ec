//! Check the interval-wise weighted Poincaré inequality and the pointwise
//! oscillation bounds for a hand-picked profile, including the equality
//! case v(r) = r against the flat weight.
//!
//!     cargo run --example poincare_margins

use radvar::{
    check_poincare, check_pointwise, AuxWeight, ProblemParams, QuadratureConfig, RadialProfile,
    RadialWeightSpec, WeightPiece,
};

fn main() {
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
    let cfg = QuadratureConfig::default();
    let aux = AuxWeight::build(&spec, &params, &cfg).unwrap();

    // v(r) = r: both sides are known in closed form (11/24 vs 2).
    let v = RadialProfile::new(vec![0.0, 1.25], vec![0.0, 1.25]).unwrap();
    let report = check_poincare(&v, &aux, &cfg).unwrap();
    for row in &report.rows {
        println!(
            "interval {}: lhs = {:.12}  rhs = {:.12}  margin = {:.6}",
            row.interval,
            row.lhs,
            row.rhs,
            row.margin()
        );
    }
    println!(
        "totals: {:.12} ≤ {:.12}  satisfied: {}",
        report.lhs_total,
        report.rhs_total,
        report.satisfied(1e-9)
    );

    // Pointwise oscillation bound anchored at ζ = 0.125 toward x = 0.5:
    // for v(r) = r and η ≡ 1 the un-split bound is attained exactly.
    let b = check_pointwise(&v, &aux, 0.125, 0.5).unwrap();
    println!(
        "pointwise at (ζ, x) = (0.125, 0.5): {:.12} ≤ {:.12} (difference form, equality case)",
        b.lhs_difference, b.rhs_difference
    );
    println!(
        "                                    {:.12} ≤ {:.12} (split form)",
        b.lhs_split, b.rhs_split
    );

    // A wiggly profile keeps a strict margin.
    let w = RadialProfile::new(
        vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.25],
        vec![1.0, -0.5, 2.0, 0.3, -1.2, 0.7],
    )
    .unwrap();
    let report = check_poincare(&w, &aux, &cfg).unwrap();
    println!(
        "piecewise-linear profile: {:.6} ≤ {:.6}  satisfied: {}",
        report.lhs_total,
        report.rhs_total,
        report.satisfied(1e-9)
    );
}
