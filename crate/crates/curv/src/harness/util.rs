//! Shared construction and comparison helpers for the verification harness.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::curvature::{nabla_t2, CurvatureData};
use crate::error::{Error, Result};
use crate::exact::{
    ConstraintSystem, FieldElement, Instantiation, Polynomial, Rat, SymbolKind,
};
use crate::liealg::MetricLieAlgebra;
use crate::linalg::Mat;

pub fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

pub fn fq(n: i64, d: i64) -> FieldElement {
    FieldElement::from_rat(crate::exact::rat(n, d))
}

/// Pseudo-orthonormal pairing ⟨u₁,u₁⟩ = ⟨u₂,u₂⟩ = ⟨u₃,u₄⟩ = 1.
pub fn po_metric() -> Mat {
    let mut g = Mat::zeros(4, 4);
    g.set(0, 0, fe(1));
    g.set(1, 1, fe(1));
    g.set(2, 3, fe(1));
    g.set(3, 2, fe(1));
    g
}

/// Null-pair pairing ⟨u₁,u₂⟩ = ⟨u₃,u₃⟩ = ⟨u₄,u₄⟩ = 1.
pub fn np_metric() -> Mat {
    let mut g = Mat::zeros(4, 4);
    g.set(0, 1, fe(1));
    g.set(1, 0, fe(1));
    g.set(2, 2, fe(1));
    g.set(3, 3, fe(1));
    g
}

pub fn diag4(d: [i64; 4]) -> Mat {
    let mut g = Mat::zeros(4, 4);
    for (i, v) in d.into_iter().enumerate() {
        g.set(i, i, fe(v));
    }
    g
}

/// Builds a 4-dimensional metric Lie algebra from 0-based structure
/// constants [u_i, u_j] ∋ v·u_k (i < j) and validates Jacobi.
pub fn algebra(
    cs: ConstraintSystem,
    metric: Mat,
    brackets: &[(usize, usize, usize, FieldElement)],
) -> Result<MetricLieAlgebra> {
    let mut a = MetricLieAlgebra::new(4, cs, metric)?;
    for (i, j, k, v) in brackets {
        let cur = a.bracket(*i, *j, *k).clone();
        a.set_bracket(*i, *j, *k, cur.add(v, &a.cs))?;
    }
    Ok(a)
}

/// Pushes a whole algebra (metric, brackets, side conditions) through a
/// rational parameter assignment, returning the derived algebra and the map
/// itself so companion data can follow.
pub fn instantiate_algebra(
    a: &MetricLieAlgebra,
    values: &BTreeMap<String, Rat>,
) -> Result<(MetricLieAlgebra, Instantiation)> {
    let inst = Instantiation::new(&a.cs, values)?;
    let n = a.dim;
    let mut metric = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            metric.set(i, j, inst.apply(a.metric.at(i, j))?);
        }
    }
    let mut out = MetricLieAlgebra::new(n, inst.target.clone(), metric)?;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let v = inst.apply(a.bracket(i, j, k))?;
                if !v.numerator().is_zero() {
                    out.set_bracket(i, j, k, v)?;
                }
            }
        }
    }
    Ok((out, inst))
}

/// √c for a nonnegative rational, adjoining (or reusing) a constant-radicand
/// square root in the scope when c is not a perfect square.
pub fn sqrt_rat(cs: &mut ConstraintSystem, c: &Rat) -> Result<FieldElement> {
    if c.is_negative() {
        return Err(Error::NegativeRadicand(crate::exact::render_rat(c)));
    }
    if c.is_zero() {
        return Ok(FieldElement::zero());
    }
    // √(p/q) = √(pq)/q; split pq into square and squarefree parts
    let pq = c.numer() * c.denom();
    let mut square = num_bigint::BigInt::from(1);
    let mut rest = pq.clone();
    let mut d = num_bigint::BigInt::from(2);
    while &d * &d <= rest {
        let dd = &d * &d;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            square *= &d;
        }
        d += 1;
    }
    let scale = Rat::new(square, c.denom().clone());
    if num_traits::One::is_one(&rest) {
        return Ok(FieldElement::from_rat(scale));
    }
    let radicand = Polynomial::constant(Rat::from_integer(rest.clone()));
    for (i, info) in cs.symbols().iter().enumerate() {
        if let SymbolKind::Radical { radicand: r } = &info.kind {
            if *r == radicand {
                let v = FieldElement::var(crate::exact::Sym(i as u32));
                return Ok(v.scale(&scale, cs));
            }
        }
    }
    let s = cs.declare_radical(&format!("sqrt{rest}"), radicand)?;
    Ok(FieldElement::var(s).scale(&scale, cs))
}

/// Coefficient vectors (ascending degree) multiplied as polynomials.
pub fn poly_mul_coeffs(
    a: &[FieldElement],
    b: &[FieldElement],
    cs: &ConstraintSystem,
) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y, cs), cs);
        }
    }
    out
}

pub fn coeffs_equal(a: &[FieldElement], b: &[FieldElement], cs: &ConstraintSystem) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equal(y, cs))
}

/// All-rational coefficient vector, or None if some coefficient is not
/// parameter-free.
pub fn rat_coeffs(cp: &[FieldElement], cs: &ConstraintSystem) -> Option<Vec<Rat>> {
    cp.iter().map(|c| c.as_rat(cs)).collect()
}

pub fn mat_eq(a: &Mat, b: &Mat, cs: &ConstraintSystem) -> bool {
    if a.rows != b.rows || a.cols != b.cols {
        return false;
    }
    (0..a.rows).all(|i| (0..a.cols).all(|j| a.at(i, j).equal(b.at(i, j), cs)))
}

pub fn all_zero(v: &[FieldElement], cs: &ConstraintSystem) -> bool {
    v.iter().all(|x| x.is_zero(cs))
}

/// ∇ρ ≡ 0.
pub fn ricci_is_parallel(a: &MetricLieAlgebra, cd: &CurvatureData) -> bool {
    all_zero(&nabla_t2(a, &cd.conn, &cd.ricci), &a.cs)
}

/// The characteristic polynomial of diag(d₁,…,d₄): Π(x − dᵢ), ascending.
pub fn diag_charpoly(d: [i64; 4], cs: &ConstraintSystem) -> Vec<FieldElement> {
    let mut acc = vec![fe(1)];
    for v in d {
        acc = poly_mul_coeffs(&acc, &[fe(-v), fe(1)], cs);
    }
    acc
}

/// (M − r₁)(M − r₂)… for checking minimal-polynomial factor products.
pub fn shifted_product(m: &Mat, shifts: &[FieldElement], cs: &ConstraintSystem) -> Mat {
    let n = m.rows;
    let mut acc = Mat::identity(n);
    for s in shifts {
        let f = m.sub(&Mat::identity(n).scale(s, cs), cs);
        acc = acc.mul(&f, cs);
    }
    acc
}

pub fn render_sign(v: i32) -> String {
    if v >= 0 { "+1".into() } else { "-1".into() }
}

pub fn render_rat_str(c: &Rat) -> String {
    crate::exact::render_rat(c)
}
