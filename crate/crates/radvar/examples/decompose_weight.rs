//! Decompose a weight with a touching zero between pieces and show how the
//! kernel-summability test decides whether adjacent intervals merge.
//!
//!     cargo run --example decompose_weight

use radvar::{decompose_degeneracy, ProblemParams, QuadratureConfig, RadialWeightSpec, WeightPiece};

fn main() {
    let params = ProblemParams::new(1, 2.0, 0.0, 1.25).unwrap();
    let cfg = QuadratureConfig::default();

    // Two constant plateaus joined by a power bump vanishing at its edges.
    // The kernel η^{-1/(p-1)} = η^{-1} behaves like dist^{-α} at the
    // touching zeros, so α decides mergeability: integrable for α < 1.
    for alpha in [0.5, 3.0] {
        let spec = RadialWeightSpec::new(
            vec![
                WeightPiece::Constant {
                    value: 1.0,
                    lo: 0.05,
                    hi: 0.3,
                },
                WeightPiece::PowerBump {
                    m: 1.0,
                    alpha,
                    lo: 0.3,
                    hi: 0.6,
                    radial_compensation: false,
                },
                WeightPiece::Constant {
                    value: 0.5,
                    lo: 0.6,
                    hi: 0.9,
                },
            ],
            &params,
        )
        .unwrap();
        let dec = decompose_degeneracy(&spec, &params, &cfg).unwrap();
        println!(
            "α = {alpha}: {} interval(s), class {:?}",
            dec.intervals().len(),
            dec.class()
        );
        for (i, iv) in dec.intervals().iter().enumerate() {
            println!(
                "  [{i}] ({:.3}, {:.3})  kernel integrable: left {}  right {}",
                iv.lo, iv.hi, iv.left_integrable, iv.right_integrable
            );
        }
    }
}
