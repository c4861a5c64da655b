//! Randomized structural identities on four-dimensional metric Lie algebras.
//!
//! Each sample is an almost-abelian algebra (an abelian ideal span{e1,e2,e3}
//! acted on by e4 through an arbitrary rational matrix, so the Jacobi
//! identity holds by construction) with a random nondegenerate symmetric
//! metric. The identities checked here hold for every metric Lie algebra,
//! so any failure is an engine bug, not a bad sample.

mod common;

use common::{build, check_identities, fe_rat, Sample};
use curv::curvature::CurvatureData;
use curv::exact::ConstraintSystem;
use curv::liealg::MetricLieAlgebra;
use curv::linalg::Mat;
use proptest::prelude::*;

/// Small rational strategy: numerators in -3..=3, denominators 1 or 2.
fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-3i64..=3, 1i64..=2)
}

fn sample() -> impl Strategy<Value = Sample> {
    (
        proptest::array::uniform3(proptest::array::uniform3(small_rat())),
        proptest::array::uniform10(small_rat()),
    )
        .prop_map(|(action, metric)| Sample { action, metric })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 100,
        failure_persistence: None,
        .. ProptestConfig::default()
    })]

    #[test]
    fn identities_hold_on_random_algebras(s in sample()) {
        let a = build(&s);
        check_identities(&a);
    }
}

/// Constant-curvature injections: [e_i, e_4] = λ e_i on an abelian ideal with
/// a diagonal metric gives a space of constant sectional curvature, hence an
/// Einstein metric; Einstein metrics must be Bach-flat.
#[test]
fn einstein_implies_bach_flat_on_constant_curvature() {
    let lambdas = [(1i64, 1i64), (-1, 1), (2, 1), (1, 2), (-3, 2), (5, 3)];
    let metrics: [[i64; 4]; 2] = [[1, 1, 1, -1], [1, 1, 1, 1]];
    let mut seen = 0;
    for sig in metrics {
        for (n, d) in lambdas {
            let cs = ConstraintSystem::new();
            let mut g = Mat::zeros(4, 4);
            for (i, &s) in sig.iter().enumerate() {
                g.set(i, i, fe_rat(s, 1));
            }
            let mut a = MetricLieAlgebra::new(4, cs, g).expect("diagonal metric");
            for i in 0..3 {
                a.set_bracket(i, 3, i, fe_rat(n, d)).expect("bracket");
            }
            assert!(a.is_lie_algebra());
            let cd = CurvatureData::compute(&a).expect("curvature pipeline");
            assert!(cd.is_einstein(&a), "constant curvature must be Einstein");
            assert!(cd.bach_is_zero(&a.cs), "Einstein must be Bach-flat");
            seen += 1;
        }
    }
    assert_eq!(seen, 12);
}
