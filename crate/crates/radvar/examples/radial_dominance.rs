//! Radial symmetry of the minimizer: non-radial polar-grid competitors never
//! beat u₀, and radializing a competitor (angular averaging) never raises H.
//!
//!     cargo run --release --example radial_dominance

use radvar::sampling::random_polar_competitor;
use radvar::{
    minimize_h, radial_dominance_check, solver_grid, AuxWeight, PolarField, ProblemParams,
    QuadratureConfig, RadialProfile, RadialWeightSpec, SolverConfig, WeightPiece,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let params = ProblemParams::new(2, 2.0, 0.0, 1.25).unwrap();
    let spec = RadialWeightSpec::new(
        vec![WeightPiece::Constant {
            value: 1.0,
            lo: 0.1,
            hi: 0.9,
        }],
        &params,
    )
    .unwrap();
    let qcfg = QuadratureConfig::default();
    let aux = AuxWeight::build(&spec, &params, &qcfg).unwrap();
    let g = RadialProfile::new(vec![0.0, 0.5, 1.25], vec![0.0, 1.0, -0.5]).unwrap();

    let cfg = SolverConfig::default();
    let res = minimize_h(&g, &aux, &cfg).unwrap();
    let radii = solver_grid(&aux, &cfg);
    println!("H(u0) = {:.10}", res.breakdown.h_value);

    // The radial competitor equal to u0 on every ray ties exactly.
    let tie = PolarField::from_radial(&res.profile, radii.clone(), params.d, 8).unwrap();
    let rep = radial_dominance_check(&res.profile, &tie, &g, &aux, &cfg).unwrap();
    println!(
        "radial tie:  H(z) = {:.10}  (H(z) - H(u0) = {:.2e})",
        rep.h_competitor,
        rep.h_competitor - rep.h_minimizer
    );

    // Random angular ripples always pay for their angular gradient.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..5 {
        let z = random_polar_competitor(&mut rng, &res.profile, radii.clone(), params.d).unwrap();
        let rep = radial_dominance_check(&res.profile, &z, &g, &aux, &cfg).unwrap();
        println!(
            "ripple {i}:  H(z) = {:>12.6}  H(radialized z) = {:>12.6}  dominated: {}",
            rep.h_competitor,
            rep.h_radialized,
            rep.minimizer_dominates(1e-9) && rep.radialization_dominates(1e-9)
        );
    }
}
