//! Shared helpers for the randomized identity checks: almost-abelian sample
//! construction and the full list of structural identities every metric Lie
//! algebra must satisfy.

use curv::curvature::{div_weyl_cotton_constant, CurvatureData};
use curv::exact::{ConstraintSystem, FieldElement, Rat};
use curv::liealg::MetricLieAlgebra;
use curv::linalg::Mat;
use num_bigint::BigInt;

pub fn fe_rat(num: i64, den: i64) -> FieldElement {
    FieldElement::from_rat(Rat::new(BigInt::from(num), BigInt::from(den)))
}

/// An almost-abelian sample: an abelian ideal span{e1,e2,e3} acted on by e4
/// through an arbitrary matrix (Jacobi holds by construction) plus the upper
/// triangle of a symmetric metric.
#[derive(Debug)]
pub struct Sample {
    pub action: [[(i64, i64); 3]; 3],
    pub metric: [(i64, i64); 10],
}

/// Builds the algebra; the metric's diagonal is shifted by t·I for the
/// smallest t ≥ 0 making it nondegenerate (the determinant is a nonzero
/// polynomial in t, so a small shift always works).
pub fn build(s: &Sample) -> MetricLieAlgebra {
    let cs = ConstraintSystem::new();
    let mut idx = 0;
    let mut g = Mat::zeros(4, 4);
    for i in 0..4 {
        for j in i..4 {
            let (n, d) = s.metric[idx];
            idx += 1;
            g.set(i, j, fe_rat(n, d));
            if i != j {
                let v = g.at(i, j).clone();
                g.set(j, i, v);
            }
        }
    }
    for t in 0..40 {
        let mut shifted = g.clone();
        for i in 0..4 {
            let v = shifted.at(i, i).add(&fe_rat(t, 1), &cs);
            shifted.set(i, i, v);
        }
        if !shifted.det(&cs).is_zero(&cs) {
            g = shifted;
            break;
        }
    }
    let mut a = MetricLieAlgebra::new(4, cs, g).expect("nondegenerate metric");
    for i in 0..3 {
        for k in 0..3 {
            let (n, d) = s.action[k][i];
            a.set_bracket(i, 3, k, fe_rat(n, d)).expect("bracket");
        }
    }
    assert!(a.is_lie_algebra(), "almost-abelian construction must satisfy Jacobi");
    a
}

pub fn check_identities(a: &MetricLieAlgebra) {
    let cs = &a.cs;
    let cd = CurvatureData::compute(a).expect("curvature pipeline");
    let n = a.dim;

    // Levi-Civita: torsion-free and metric-compatible.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let skew = cd.conn.upper(i, j, k).sub(cd.conn.upper(j, i, k), cs);
                assert!(
                    skew.equal(a.bracket(i, j, k), cs),
                    "torsion at ({i},{j},{k})"
                );
                let compat = cd.conn.lower(i, j, k).add(cd.conn.lower(i, k, j), cs);
                assert!(compat.is_zero(cs), "metric compatibility at ({i},{j},{k})");
            }
        }
    }

    // Riemann symmetries and the first Bianchi identity.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let r = cd.r(i, j, k, l);
                    assert!(r.add(cd.r(j, i, k, l), cs).is_zero(cs), "skew in first pair");
                    assert!(r.add(cd.r(i, j, l, k), cs).is_zero(cs), "skew in second pair");
                    assert!(r.sub(cd.r(k, l, i, j), cs).is_zero(cs), "pair symmetry");
                    let bianchi = r.add(cd.r(j, k, i, l), cs).add(cd.r(k, i, j, l), cs);
                    assert!(bianchi.is_zero(cs), "first Bianchi identity");
                }
            }
        }
    }

    // Weyl and Bach are trace-free with respect to the metric.
    let ginv = a.metric.inverse(cs).expect("metric inverse");
    for j in 0..n {
        for l in 0..n {
            let mut tr = FieldElement::zero();
            for i in 0..n {
                for k in 0..n {
                    tr = tr.add(&ginv.at(i, k).mul(cd.w(i, j, k, l), cs), cs);
                }
            }
            assert!(tr.is_zero(cs), "Weyl trace at ({j},{l})");
        }
    }
    assert!(ginv.mul(&cd.bach, cs).trace(cs).is_zero(cs), "Bach trace");

    // The divergence of Weyl is a fixed multiple of the Cotton tensor.
    let kappa = FieldElement::from_rat(div_weyl_cotton_constant());
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                let want = kappa.mul(cd.c(j, k, l), cs);
                assert!(
                    cd.dw(j, k, l).equal(&want, cs),
                    "div(W) vs Cotton at ({j},{k},{l})"
                );
            }
        }
    }
}
