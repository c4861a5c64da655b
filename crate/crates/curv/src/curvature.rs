//! The full curvature hierarchy of a metric Lie algebra in a left-invariant
//! frame: Levi-Civita connection, Riemann, Ricci, Schouten, Weyl, Cotton,
//! divergence of Weyl, Bach, the quadratic tensor Ř, and ∇R — all exact
//! tensors with constant components on the chosen basis.

use crate::error::{Error, Result};
use crate::exact::{rat, ConstraintSystem, FieldElement, Rat};
use crate::liealg::MetricLieAlgebra;
use crate::linalg::Mat;

/// Global constant of proportionality in div₄W = κ₄ · C, fixed once by the
/// contracted second Bianchi identity under this crate's conventions and
/// asserted on every example.
pub fn div_weyl_cotton_constant() -> Rat {
    rat(-1, 1)
}

/// Levi-Civita connection coefficients; constant since all data is
/// left-invariant.
#[derive(Debug, Clone)]
pub struct ConnectionCoefficients {
    pub dim: usize,
    /// Γ^k_{ij} with ∇_{u_i}u_j = Σ_k Γ^k_{ij} u_k, flattened (i·n + j)·n + k
    upper: Vec<FieldElement>,
    /// Γ_{ijk} = ⟨∇_{u_i}u_j, u_k⟩
    lower: Vec<FieldElement>,
}

impl ConnectionCoefficients {
    fn id3(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// Γ^k_{ij}
    pub fn upper(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        &self.upper[self.id3(i, j, k)]
    }

    /// Γ_{ijk} = ⟨∇_{u_i}u_j, u_k⟩
    pub fn lower(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        &self.lower[self.id3(i, j, k)]
    }

    /// ∇_x y for coefficient vectors.
    pub fn derive(
        &self,
        x: &[FieldElement],
        y: &[FieldElement],
        cs: &ConstraintSystem,
    ) -> Vec<FieldElement> {
        let n = self.dim;
        let mut out = vec![FieldElement::zero(); n];
        for i in 0..n {
            if x[i].numerator().is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].numerator().is_zero() {
                    continue;
                }
                let f = x[i].mul(&y[j], cs);
                for (k, o) in out.iter_mut().enumerate() {
                    let g = self.upper(i, j, k);
                    if !g.numerator().is_zero() {
                        *o = o.add(&f.mul(g, cs), cs);
                    }
                }
            }
        }
        out
    }
}

/// Koszul formula on a left-invariant frame:
/// 2⟨∇_{u_i}u_j, u_k⟩ = ⟨[u_i,u_j],u_k⟩ − ⟨[u_j,u_k],u_i⟩ + ⟨[u_k,u_i],u_j⟩.
pub fn levi_civita(a: &MetricLieAlgebra) -> Result<ConnectionCoefficients> {
    let n = a.dim;
    let cs = &a.cs;
    let ginv = a.metric.inverse(cs)?;
    // c_{ijk} = ⟨[u_i,u_j], u_k⟩
    let mut c = vec![FieldElement::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = FieldElement::zero();
                for m in 0..n {
                    let b = a.bracket(i, j, m);
                    if b.numerator().is_zero() || a.metric.at(m, k).numerator().is_zero() {
                        continue;
                    }
                    acc = acc.add(&b.mul(a.metric.at(m, k), cs), cs);
                }
                c[(i * n + j) * n + k] = acc;
            }
        }
    }
    let half = rat(1, 2);
    let mut lower = vec![FieldElement::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = c[(i * n + j) * n + k]
                    .sub(&c[(j * n + k) * n + i], cs)
                    .add(&c[(k * n + i) * n + j], cs)
                    .scale(&half, cs);
                lower[(i * n + j) * n + k] = v;
            }
        }
    }
    let mut upper = vec![FieldElement::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = FieldElement::zero();
                for l in 0..n {
                    let g = ginv.at(l, k);
                    if g.numerator().is_zero() || lower[(i * n + j) * n + l].numerator().is_zero()
                    {
                        continue;
                    }
                    acc = acc.add(&lower[(i * n + j) * n + l].mul(g, cs), cs);
                }
                upper[(i * n + j) * n + k] = acc;
            }
        }
    }
    Ok(ConnectionCoefficients { dim: n, upper, lower })
}

fn id4(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * n + j) * n + k) * n + l
}

fn id3(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

/// Lowered curvature tensor of R(X,Y)Z = ∇_X∇_YZ − ∇_Y∇_XZ − ∇_{[X,Y]}Z,
/// stored as R_{ijkl} = ⟨R(u_i,u_j)u_l, u_k⟩ so that a constant-curvature
/// space has R = c·(g ⊼ g)/2 and the sphere has positive Ricci.
pub fn riemann(a: &MetricLieAlgebra, conn: &ConnectionCoefficients) -> Vec<FieldElement> {
    let n = a.dim;
    let cs = &a.cs;
    let mut r = vec![FieldElement::zero(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    // R_{ijkl} = Σ_p (Γ^p_{ik}Γ_{jpl} − Γ^p_{jk}Γ_{ipl} + c^p_{ij}Γ_{pkl})
                    let mut acc = FieldElement::zero();
                    for p in 0..n {
                        let t1 = conn.upper(i, k, p);
                        if !t1.numerator().is_zero() && !conn.lower(j, p, l).numerator().is_zero()
                        {
                            acc = acc.add(&t1.mul(conn.lower(j, p, l), cs), cs);
                        }
                        let t2 = conn.upper(j, k, p);
                        if !t2.numerator().is_zero() && !conn.lower(i, p, l).numerator().is_zero()
                        {
                            acc = acc.sub(&t2.mul(conn.lower(i, p, l), cs), cs);
                        }
                        let t3 = a.bracket(i, j, p);
                        if !t3.numerator().is_zero() && !conn.lower(p, k, l).numerator().is_zero()
                        {
                            acc = acc.add(&t3.mul(conn.lower(p, k, l), cs), cs);
                        }
                    }
                    r[id4(n, i, j, k, l)] = acc;
                }
            }
        }
    }
    r
}

/// Ricci tensor ρ_{ij} = g^{ab}R_{aibj} (equivalently the trace of
/// Z ↦ R(Z,u_i)u_j), scalar curvature τ = g^{ij}ρ_{ij}, and the g-raised
/// Ricci operator (column convention).
pub fn ricci_scalar(
    a: &MetricLieAlgebra,
    r: &[FieldElement],
) -> Result<(Mat, FieldElement, Mat)> {
    let n = a.dim;
    let cs = &a.cs;
    let ginv = a.metric.inverse(cs)?;
    let mut rho = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = FieldElement::zero();
            for p in 0..n {
                for q in 0..n {
                    let g = ginv.at(p, q);
                    if g.numerator().is_zero() || r[id4(n, p, i, q, j)].numerator().is_zero() {
                        continue;
                    }
                    acc = acc.add(&g.mul(&r[id4(n, p, i, q, j)], cs), cs);
                }
            }
            rho.set(i, j, acc);
        }
    }
    let tau = ginv.mul(&rho, cs).trace(cs);
    let op = ginv.mul(&rho, cs);
    Ok((rho, tau, op))
}

/// Kulkarni–Nomizu product of two symmetric (0,2) tensors:
/// (A ⊼ B)_{ijkl} = A_{ik}B_{jl} + A_{jl}B_{ik} − A_{il}B_{jk} − A_{jk}B_{il}.
pub fn kulkarni_nomizu(a: &Mat, b: &Mat, cs: &ConstraintSystem) -> Vec<FieldElement> {
    let n = a.rows;
    let mut out = vec![FieldElement::zero(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = a
                        .at(i, k)
                        .mul(b.at(j, l), cs)
                        .add(&a.at(j, l).mul(b.at(i, k), cs), cs)
                        .sub(&a.at(i, l).mul(b.at(j, k), cs), cs)
                        .sub(&a.at(j, k).mul(b.at(i, l), cs), cs);
                    out[id4(n, i, j, k, l)] = v;
                }
            }
        }
    }
    out
}

/// Schouten tensor S = ½(ρ − (τ/6)g) and Weyl tensor W = R − g ⊼ S
/// (four-dimensional specialization; W is totally trace-free).
pub fn schouten_weyl(
    a: &MetricLieAlgebra,
    r: &[FieldElement],
    rho: &Mat,
    tau: &FieldElement,
) -> (Mat, Vec<FieldElement>) {
    let cs = &a.cs;
    let s = rho
        .sub(&a.metric.scale(&tau.scale(&rat(1, 6), cs), cs), cs)
        .scale(&FieldElement::from_int(1).scale(&rat(1, 2), cs), cs);
    let gs = kulkarni_nomizu(&a.metric, &s, cs);
    let w: Vec<FieldElement> = r
        .iter()
        .zip(gs.iter())
        .map(|(ri, gi)| ri.sub(gi, cs))
        .collect();
    (s, w)
}

/// Covariant derivative of a constant-component (0,2) tensor:
/// (∇_m T)_{ij} = −Σ_p (Γ^p_{mi} T_{pj} + Γ^p_{mj} T_{ip}).
pub fn nabla_t2(
    a: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    t: &Mat,
) -> Vec<FieldElement> {
    let n = a.dim;
    let cs = &a.cs;
    let mut out = vec![FieldElement::zero(); n * n * n];
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = FieldElement::zero();
                for p in 0..n {
                    let g1 = conn.upper(m, i, p);
                    if !g1.numerator().is_zero() && !t.at(p, j).numerator().is_zero() {
                        acc = acc.sub(&g1.mul(t.at(p, j), cs), cs);
                    }
                    let g2 = conn.upper(m, j, p);
                    if !g2.numerator().is_zero() && !t.at(i, p).numerator().is_zero() {
                        acc = acc.sub(&g2.mul(t.at(i, p), cs), cs);
                    }
                }
                out[id3(n, m, i, j)] = acc;
            }
        }
    }
    out
}

/// Covariant derivative of a constant-component (0,4) tensor, indexed
/// (m; i, j, k, l) with m outermost.
fn nabla_t4(
    a: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    t: &[FieldElement],
) -> Vec<FieldElement> {
    let n = a.dim;
    let cs = &a.cs;
    let mut out = vec![FieldElement::zero(); n * n * n * n * n];
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = FieldElement::zero();
                        for p in 0..n {
                            let slots: [(usize, usize); 4] = [
                                (i, id4(n, p, j, k, l)),
                                (j, id4(n, i, p, k, l)),
                                (k, id4(n, i, j, p, l)),
                                (l, id4(n, i, j, k, p)),
                            ];
                            for (slot, tid) in slots {
                                let g = conn.upper(m, slot, p);
                                if !g.numerator().is_zero() && !t[tid].numerator().is_zero() {
                                    acc = acc.sub(&g.mul(&t[tid], cs), cs);
                                }
                            }
                        }
                        out[id4(n, i, j, k, l) + m * n * n * n * n] = acc;
                    }
                }
            }
        }
    }
    out
}

/// Covariant derivative of the curvature tensor, (∇_m R)_{ijkl} with all five
/// slots covariant, indexed m outermost.
pub fn nabla_curvature(
    a: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    r: &[FieldElement],
) -> Vec<FieldElement> {
    nabla_t4(a, conn, r)
}

/// Cotton tensor C_{ijk} = (∇_i S)_{jk} − (∇_j S)_{ik}.
pub fn cotton(
    a: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    s: &Mat,
) -> Vec<FieldElement> {
    let n = a.dim;
    let cs = &a.cs;
    let ns = nabla_t2(a, conn, s);
    let mut out = vec![FieldElement::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[id3(n, i, j, k)] = ns[id3(n, i, j, k)].sub(&ns[id3(n, j, i, k)], cs);
            }
        }
    }
    out
}

/// Divergence of the Weyl tensor in its fourth slot:
/// dW_{jkl} = g^{am}(∇_a W)_{jklm}.
pub fn div_weyl(
    a: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    w: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    let n = a.dim;
    let cs = &a.cs;
    let ginv = a.metric.inverse(cs)?;
    let nw = nabla_t4(a, conn, w);
    let stride = n * n * n * n;
    let mut out = vec![FieldElement::zero(); n * n * n];
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                let mut acc = FieldElement::zero();
                for p in 0..n {
                    for m in 0..n {
                        let g = ginv.at(p, m);
                        let t = &nw[p * stride + id4(n, j, k, l, m)];
                        if g.numerator().is_zero() || t.numerator().is_zero() {
                            continue;
                        }
                        acc = acc.add(&g.mul(t, cs), cs);
                    }
                }
                out[id3(n, j, k, l)] = acc;
            }
        }
    }
    Ok(out)
}

/// Bach tensor B = div₂div₄W + ½W[ρ], with W[ρ]_{ij} = W_{iajb}ρ^{ab}.
/// Symmetric and trace-free in dimension four.
pub fn bach(
    a: &MetricLieAlgebra,
    conn: &ConnectionCoefficients,
    w: &[FieldElement],
    rho: &Mat,
) -> Result<Mat> {
    let n = a.dim;
    let cs = &a.cs;
    let ginv = a.metric.inverse(cs)?;
    let dw = div_weyl(a, conn, w)?;
    // (∇_b dW)_{jkl}, then contract b with the second slot k
    let mut div2 = Mat::zeros(n, n);
    for j in 0..n {
        for l in 0..n {
            let mut acc = FieldElement::zero();
            for b in 0..n {
                for k in 0..n {
                    let g = ginv.at(b, k);
                    if g.numerator().is_zero() {
                        continue;
                    }
                    let mut d = FieldElement::zero();
                    for p in 0..n {
                        let slots: [(usize, usize); 3] = [
                            (j, id3(n, p, k, l)),
                            (k, id3(n, j, p, l)),
                            (l, id3(n, j, k, p)),
                        ];
                        for (slot, tid) in slots {
                            let gam = conn.upper(b, slot, p);
                            if !gam.numerator().is_zero() && !dw[tid].numerator().is_zero() {
                                d = d.sub(&gam.mul(&dw[tid], cs), cs);
                            }
                        }
                    }
                    if !d.numerator().is_zero() {
                        acc = acc.add(&g.mul(&d, cs), cs);
                    }
                }
            }
            div2.set(j, l, acc);
        }
    }
    // ρ^{ab} = g^{ap} g^{bq} ρ_{pq}
    let rho_up = ginv.mul(rho, cs).mul(&ginv, cs);
    let mut b = div2;
    let half = rat(1, 2);
    for i in 0..n {
        for j in 0..n {
            let mut acc = FieldElement::zero();
            for p in 0..n {
                for q in 0..n {
                    let ru = rho_up.at(p, q);
                    let wt = &w[id4(n, i, p, j, q)];
                    if ru.numerator().is_zero() || wt.numerator().is_zero() {
                        continue;
                    }
                    acc = acc.add(&wt.mul(ru, cs), cs);
                }
            }
            let v = b.at(i, j).add(&acc.scale(&half, cs), cs);
            b.set(i, j, v);
        }
    }
    Ok(b)
}

/// Ř_{ij} = R_{iabc} R_j{}^{abc}, all three contractions raised with g.
pub fn r_check_tensor(a: &MetricLieAlgebra, r: &[FieldElement]) -> Result<Mat> {
    let n = a.dim;
    let cs = &a.cs;
    let ginv = a.metric.inverse(cs)?;
    // raise the last three slots of R once
    let mut raised = vec![FieldElement::zero(); n * n * n * n];
    for j in 0..n {
        for a1 in 0..n {
            for b1 in 0..n {
                for c1 in 0..n {
                    let mut acc = FieldElement::zero();
                    for p in 0..n {
                        let g1 = ginv.at(p, a1);
                        if g1.numerator().is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let g2 = ginv.at(q, b1);
                            if g2.numerator().is_zero() {
                                continue;
                            }
                            for t in 0..n {
                                let g3 = ginv.at(t, c1);
                                let rv = &r[id4(n, j, p, q, t)];
                                if g3.numerator().is_zero() || rv.numerator().is_zero() {
                                    continue;
                                }
                                acc = acc.add(
                                    &rv.mul(g1, cs).mul(g2, cs).mul(g3, cs),
                                    cs,
                                );
                            }
                        }
                    }
                    raised[id4(n, j, a1, b1, c1)] = acc;
                }
            }
        }
    }
    let mut out = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = FieldElement::zero();
            for a1 in 0..n {
                for b1 in 0..n {
                    for c1 in 0..n {
                        let x = &r[id4(n, i, a1, b1, c1)];
                        let y = &raised[id4(n, j, a1, b1, c1)];
                        if x.numerator().is_zero() || y.numerator().is_zero() {
                            continue;
                        }
                        acc = acc.add(&x.mul(y, cs), cs);
                    }
                }
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// The six index pairs (i<j) spanning Λ² in the order used by
/// `weyl_two_form_operator`.
pub fn two_form_basis(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((i, j));
        }
    }
    out
}

/// Matrix of the Weyl operator on Λ² in the basis {u_i ∧ u_j}_{i<j}, using
/// the induced inner product ⟨x∧y, z∧w⟩ = g(x,z)g(y,w) − g(x,w)g(y,z):
/// the bilinear form Ŵ_{AB} = W(e_A, e_B) raised by the Λ² Gram inverse.
pub fn weyl_two_form_operator(a: &MetricLieAlgebra, w: &[FieldElement]) -> Result<Mat> {
    let n = a.dim;
    let cs = &a.cs;
    let pairs = two_form_basis(n);
    let d = pairs.len();
    let mut gram = Mat::zeros(d, d);
    let mut wf = Mat::zeros(d, d);
    for (aa, &(i, j)) in pairs.iter().enumerate() {
        for (bb, &(k, l)) in pairs.iter().enumerate() {
            let g = a
                .metric
                .at(i, k)
                .mul(a.metric.at(j, l), cs)
                .sub(&a.metric.at(i, l).mul(a.metric.at(j, k), cs), cs);
            gram.set(aa, bb, g);
            wf.set(aa, bb, w[id4(n, i, j, k, l)].clone());
        }
    }
    Ok(gram.inverse(cs)?.mul(&wf, cs))
}

/// det(x·Id − Ric) as monic coefficients [c₀, …, cₙ]; in dimension four this
/// equals det(Ric − x·Id).
pub fn ricci_operator_charpoly(op: &Mat, cs: &ConstraintSystem) -> Vec<FieldElement> {
    op.charpoly(cs)
}

/// The homothety invariant ‖ρ‖²/τ² with ‖ρ‖² = g^{ia}g^{jb}ρ_{ij}ρ_{ab}.
pub fn homothetic_invariant(
    a: &MetricLieAlgebra,
    rho: &Mat,
    tau: &FieldElement,
) -> Result<FieldElement> {
    let cs = &a.cs;
    if tau.is_zero(cs) {
        return Err(Error::UndefinedInvariant);
    }
    let ginv = a.metric.inverse(cs)?;
    let op = ginv.mul(rho, cs);
    let norm2 = op.mul(&op, cs).trace(cs);
    norm2.div(&tau.mul(tau, cs), cs)
}

/// Everything downstream of the connection, computed once per algebra.
#[derive(Debug, Clone)]
pub struct CurvatureData {
    pub dim: usize,
    pub conn: ConnectionCoefficients,
    /// R_{ijkl}
    pub riemann: Vec<FieldElement>,
    pub ricci: Mat,
    pub scalar: FieldElement,
    pub ricci_operator: Mat,
    pub schouten: Mat,
    /// W_{ijkl}
    pub weyl: Vec<FieldElement>,
    /// C_{ijk}
    pub cotton: Vec<FieldElement>,
    /// dW_{jkl} = g^{am}(∇_aW)_{jklm}
    pub div_weyl: Vec<FieldElement>,
    pub bach: Mat,
    pub r_check: Mat,
    /// (∇_m R)_{ijkl}, m outermost
    pub nabla_r: Vec<FieldElement>,
}

impl CurvatureData {
    pub fn compute(a: &MetricLieAlgebra) -> Result<CurvatureData> {
        let conn = levi_civita(a)?;
        let riemann = riemann(a, &conn);
        let (ricci, scalar, ricci_operator) = ricci_scalar(a, &riemann)?;
        let (schouten, weyl) = schouten_weyl(a, &riemann, &ricci, &scalar);
        let cotton = cotton(a, &conn, &schouten);
        let dw = div_weyl(a, &conn, &weyl)?;
        let bach = bach(a, &conn, &weyl, &ricci)?;
        let r_check = r_check_tensor(a, &riemann)?;
        let nabla_r = nabla_curvature(a, &conn, &riemann);
        Ok(CurvatureData {
            dim: a.dim,
            conn,
            riemann,
            ricci,
            scalar,
            ricci_operator,
            schouten,
            weyl,
            cotton,
            div_weyl: dw,
            bach,
            r_check,
            nabla_r,
        })
    }

    pub fn r(&self, i: usize, j: usize, k: usize, l: usize) -> &FieldElement {
        &self.riemann[id4(self.dim, i, j, k, l)]
    }

    pub fn w(&self, i: usize, j: usize, k: usize, l: usize) -> &FieldElement {
        &self.weyl[id4(self.dim, i, j, k, l)]
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        &self.cotton[id3(self.dim, i, j, k)]
    }

    pub fn dw(&self, j: usize, k: usize, l: usize) -> &FieldElement {
        &self.div_weyl[id3(self.dim, j, k, l)]
    }

    pub fn nr(&self, m: usize, i: usize, j: usize, k: usize, l: usize) -> &FieldElement {
        let n = self.dim;
        &self.nabla_r[m * n * n * n * n + id4(n, i, j, k, l)]
    }

    pub fn is_flat(&self, cs: &ConstraintSystem) -> bool {
        self.riemann.iter().all(|v| v.is_zero(cs))
    }

    pub fn weyl_is_zero(&self, cs: &ConstraintSystem) -> bool {
        self.weyl.iter().all(|v| v.is_zero(cs))
    }

    pub fn cotton_is_zero(&self, cs: &ConstraintSystem) -> bool {
        self.cotton.iter().all(|v| v.is_zero(cs))
    }

    pub fn bach_is_zero(&self, cs: &ConstraintSystem) -> bool {
        self.bach.is_zero(cs)
    }

    pub fn nabla_r_is_zero(&self, cs: &ConstraintSystem) -> bool {
        self.nabla_r.iter().all(|v| v.is_zero(cs))
    }

    /// Is the metric Einstein, ρ = (τ/n)·g?
    pub fn is_einstein(&self, a: &MetricLieAlgebra) -> bool {
        let cs = &a.cs;
        let f = self.scalar.scale(&rat(1, self.dim as i64), cs);
        self.ricci.sub(&a.metric.scale(&f, cs), cs).is_zero(cs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, Polynomial};
    use crate::liealg::{diag_metric, heisenberg};

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn pvar(cs: &ConstraintSystem, name: &str) -> FieldElement {
        FieldElement::from_poly(Polynomial::var(cs.lookup(name).unwrap()))
    }

    /// ⟨u1,u1⟩ = ⟨u2,u2⟩ = ⟨u3,u4⟩ = 1, rest zero.
    fn pseudo_orthonormal_metric() -> Mat {
        let mut m = Mat::zeros(4, 4);
        m.set(0, 0, fe(1));
        m.set(1, 1, fe(1));
        m.set(2, 3, fe(1));
        m.set(3, 2, fe(1));
        m
    }

    /// Null-derived family: [u1,u2]=λ₁u3, [u1,u4]=γ₁u1+γ₂u2+γ₃u3,
    /// [u2,u4]=γ₄u1+γ₅u2+γ₆u3, [u3,u4]=(γ₁+γ₅)u3.
    fn null_derived_family() -> MetricLieAlgebra {
        let mut cs = ConstraintSystem::new();
        cs.declare_parameter("lambda_1", true, false).unwrap();
        for i in 1..=6 {
            cs.declare_parameter(&format!("gamma_{i}"), false, false).unwrap();
        }
        let mut a = MetricLieAlgebra::new(4, cs, pseudo_orthonormal_metric()).unwrap();
        let g = |k: usize, a: &MetricLieAlgebra| pvar(&a.cs, &format!("gamma_{k}"));
        a.set_bracket(0, 1, 2, pvar(&a.cs, "lambda_1")).unwrap();
        a.set_bracket(0, 3, 0, g(1, &a)).unwrap();
        a.set_bracket(0, 3, 1, g(2, &a)).unwrap();
        a.set_bracket(0, 3, 2, g(3, &a)).unwrap();
        a.set_bracket(1, 3, 0, g(4, &a)).unwrap();
        a.set_bracket(1, 3, 1, g(5, &a)).unwrap();
        a.set_bracket(1, 3, 2, g(6, &a)).unwrap();
        let s = g(1, &a).add(&g(5, &a), &a.cs);
        a.set_bracket(2, 3, 2, s).unwrap();
        assert!(a.is_lie_algebra());
        a
    }

    /// Second null-derived branch: [u1,u2]=λ₁u3, [u2,u3]=λ₃u3,
    /// [u1,u4]=γ₁λ₃u1+(γ₁−γ₂)λ₁u3, [u2,u4]=γ₃u1+γ₄u3, [u3,u4]=γ₂λ₃u3.
    fn null_derived_family_two(g1: Option<i64>, g3: Option<i64>) -> MetricLieAlgebra {
        let mut cs = ConstraintSystem::new();
        cs.declare_parameter("lambda_1", false, false).unwrap();
        cs.declare_parameter("lambda_3", true, false).unwrap();
        for i in 1..=4 {
            cs.declare_parameter(&format!("gamma_{i}"), false, false).unwrap();
        }
        let mut a = MetricLieAlgebra::new(4, cs, pseudo_orthonormal_metric()).unwrap();
        let l1 = pvar(&a.cs, "lambda_1");
        let l3 = pvar(&a.cs, "lambda_3");
        let gv1 = g1.map(fe).unwrap_or_else(|| pvar(&a.cs, "gamma_1"));
        let gv2 = pvar(&a.cs, "gamma_2");
        let gv3 = g3.map(fe).unwrap_or_else(|| pvar(&a.cs, "gamma_3"));
        let gv4 = pvar(&a.cs, "gamma_4");
        a.set_bracket(0, 1, 2, l1.clone()).unwrap();
        a.set_bracket(1, 2, 2, l3.clone()).unwrap();
        a.set_bracket(0, 3, 0, gv1.mul(&l3, &a.cs)).unwrap();
        a.set_bracket(0, 3, 2, gv1.sub(&gv2, &a.cs).mul(&l1, &a.cs)).unwrap();
        a.set_bracket(1, 3, 0, gv3).unwrap();
        a.set_bracket(1, 3, 2, gv4).unwrap();
        a.set_bracket(2, 3, 2, gv2.mul(&l3, &a.cs)).unwrap();
        assert!(a.is_lie_algebra());
        a
    }

    /// Spacelike-derived family (λ₃ = 1): [u1,u4]=γ₁u1, [u2,u3]=u1,
    /// [u2,u4]=γ₂u1+γ₃u2+γ₄u3, [u3,u4]=γ₅u1+γ₆u2+(γ₁−γ₃)u3.
    /// `gamma_2`: None keeps the free parameter, Some replaces it.
    fn spacelike_derived_family(gamma_2: Option<FieldElement>) -> MetricLieAlgebra {
        let mut cs = ConstraintSystem::new();
        for i in 1..=6 {
            cs.declare_parameter(&format!("gamma_{i}"), false, false).unwrap();
        }
        let mut a = MetricLieAlgebra::new(4, cs, pseudo_orthonormal_metric()).unwrap();
        let g = |k: usize, a: &MetricLieAlgebra| pvar(&a.cs, &format!("gamma_{k}"));
        let g2 = gamma_2.unwrap_or_else(|| g(2, &a));
        a.set_bracket(0, 3, 0, g(1, &a)).unwrap();
        a.set_bracket(1, 2, 0, fe(1)).unwrap();
        a.set_bracket(1, 3, 0, g2).unwrap();
        a.set_bracket(1, 3, 1, g(3, &a)).unwrap();
        a.set_bracket(1, 3, 2, g(4, &a)).unwrap();
        a.set_bracket(2, 3, 0, g(5, &a)).unwrap();
        a.set_bracket(2, 3, 1, g(6, &a)).unwrap();
        let d = g(1, &a).sub(&g(3, &a), &a.cs);
        a.set_bracket(2, 3, 2, d).unwrap();
        assert!(a.is_lie_algebra());
        a
    }

    #[test]
    fn abelian_is_flat() {
        let cs = ConstraintSystem::new();
        let m = diag_metric(&cs, &[fe(1), fe(1), fe(1), fe(-1)]);
        let a = MetricLieAlgebra::new(4, cs, m).unwrap();
        let data = CurvatureData::compute(&a).unwrap();
        let cs = &a.cs;
        assert!(data.is_flat(cs));
        assert!(data.scalar.is_zero(cs));
        assert!(data.weyl_is_zero(cs));
        assert!(data.cotton_is_zero(cs));
        assert!(data.bach_is_zero(cs));
        assert!(data.nabla_r_is_zero(cs));
        assert!(data.r_check.is_zero(cs));
    }

    #[test]
    fn heisenberg_koszul_coefficient() {
        // oracle: 2⟨∇_{v1}v2,v3⟩ = ⟨[v1,v2],v3⟩ − 0 + 0 = 1
        let cs = ConstraintSystem::new();
        let m = diag_metric(&cs, &[fe(1), fe(1), fe(1)]);
        let h = heisenberg(cs, m).unwrap();
        let conn = levi_civita(&h).unwrap();
        assert!(conn.lower(0, 1, 2).equal(&fe(1).scale(&rat(1, 2), &h.cs), &h.cs));
        // torsion-free and metric-compatible
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let t = conn
                        .upper(i, j, k)
                        .sub(conn.upper(j, i, k), &h.cs)
                        .sub(h.bracket(i, j, k), &h.cs);
                    assert!(t.is_zero(&h.cs));
                    let mc = conn.lower(i, j, k).add(conn.lower(i, k, j), &h.cs);
                    assert!(mc.is_zero(&h.cs));
                }
            }
        }
    }

    #[test]
    fn constant_curvature_weyl_and_bach_vanish() {
        // inject R = c·(g⊼g)/2 on abelian data
        let cs = ConstraintSystem::new();
        let m = diag_metric(&cs, &[fe(1), fe(1), fe(1), fe(1)]);
        let a = MetricLieAlgebra::new(4, cs, m).unwrap();
        let cs = &a.cs;
        let c = rat(3, 1);
        let half_c = FieldElement::from_int(1).scale(&(c.clone() / rat_int(2)), cs);
        let r: Vec<FieldElement> = kulkarni_nomizu(&a.metric, &a.metric, cs)
            .into_iter()
            .map(|v| v.mul(&half_c, cs))
            .collect();
        let (rho, tau, _) = ricci_scalar(&a, &r).unwrap();
        // ρ = 3c·g, τ = 12c
        assert!(rho.sub(&a.metric.scale(&fe(9), cs), cs).is_zero(cs));
        assert!(tau.equal(&fe(36), cs));
        let (_, w) = schouten_weyl(&a, &r, &rho, &tau);
        assert!(w.iter().all(|v| v.is_zero(cs)));
        // Einstein with W = 0: Cotton, div W and Bach all vanish
        let conn = levi_civita(&a).unwrap();
        let dw = div_weyl(&a, &conn, &w).unwrap();
        assert!(dw.iter().all(|v| v.is_zero(cs)));
        let b = bach(&a, &conn, &w, &rho).unwrap();
        assert!(b.is_zero(cs));
    }

    #[test]
    fn null_family_matches_printed_ricci() {
        let a = null_derived_family();
        let cs = &a.cs;
        let data = CurvatureData::compute(&a).unwrap();
        // ρ₄₄ = ½(λ₁² + 4γ₁γ₅ − (γ₂+γ₄)²), and no other nonzero component
        let l1 = pvar(cs, "lambda_1");
        let g1 = pvar(cs, "gamma_1");
        let g2 = pvar(cs, "gamma_2");
        let g4 = pvar(cs, "gamma_4");
        let g5 = pvar(cs, "gamma_5");
        let s = g2.add(&g4, cs);
        let expected = l1
            .mul(&l1, cs)
            .add(&g1.mul(&g5, cs).scale(&rat_int(4), cs), cs)
            .sub(&s.mul(&s, cs), cs)
            .scale(&rat(1, 2), cs);
        assert!(data.ricci.at(3, 3).equal(&expected, cs));
        for i in 0..4 {
            for j in 0..4 {
                if (i, j) != (3, 3) {
                    assert!(data.ricci.at(i, j).is_zero(cs), "rho[{i}][{j}] != 0");
                }
            }
        }
        assert!(data.scalar.is_zero(cs));
        // Bach vanishes identically on the whole family
        assert!(data.bach_is_zero(cs));
        // isotropic Ricci operator: squares to zero
        assert_eq!(data.ricci_operator.nilpotency_index(cs), Some(2));
    }

    #[test]
    fn second_null_family_matches_printed_bach() {
        let a = null_derived_family_two(None, None);
        let cs = &a.cs;
        let data = CurvatureData::compute(&a).unwrap();
        // only nonzero component: B₄₄ = ¼(γ₁²λ₃² + γ₃²)λ₃²
        let l3 = pvar(cs, "lambda_3");
        let g1 = pvar(cs, "gamma_1");
        let g3 = pvar(cs, "gamma_3");
        let l3sq = l3.mul(&l3, cs);
        let expected = g1
            .mul(&g1, cs)
            .mul(&l3sq, cs)
            .add(&g3.mul(&g3, cs), cs)
            .mul(&l3sq, cs)
            .scale(&rat(1, 4), cs);
        assert!(data.bach.at(3, 3).equal(&expected, cs));
        for i in 0..4 {
            for j in 0..4 {
                if (i, j) != (3, 3) {
                    assert!(data.bach.at(i, j).is_zero(cs), "B[{i}][{j}] != 0");
                }
            }
        }
    }

    #[test]
    fn second_null_family_reduction_is_symmetric_space() {
        // with γ₁ = γ₃ = 0 the metric is conformally flat and symmetric
        let a = null_derived_family_two(Some(0), Some(0));
        let cs = &a.cs;
        let data = CurvatureData::compute(&a).unwrap();
        assert!(data.bach_is_zero(cs));
        assert!(data.weyl_is_zero(cs));
        assert!(data.nabla_r_is_zero(cs));
    }

    #[test]
    fn spacelike_family_matches_printed_bach() {
        let a = spacelike_derived_family(None);
        let cs = &a.cs;
        let data = CurvatureData::compute(&a).unwrap();
        // B₃₃ = (1/12)(γ₆² − 8γ₅² + 16γ₂)
        let g2 = pvar(cs, "gamma_2");
        let g5 = pvar(cs, "gamma_5");
        let g6 = pvar(cs, "gamma_6");
        let expected = g6
            .mul(&g6, cs)
            .sub(&g5.mul(&g5, cs).scale(&rat_int(8), cs), cs)
            .add(&g2.scale(&rat_int(16), cs), cs)
            .scale(&rat(1, 12), cs);
        assert!(data.bach.at(2, 2).equal(&expected, cs));
    }

    #[test]
    fn spacelike_family_reduced_bach_components() {
        // substitute γ₂ = (8γ₅² − γ₆²)/16 and compare the printed components
        let a0 = spacelike_derived_family(None);
        let g5 = pvar(&a0.cs, "gamma_5");
        let g6 = pvar(&a0.cs, "gamma_6");
        let g2 = g5
            .mul(&g5, &a0.cs)
            .scale(&rat_int(8), &a0.cs)
            .sub(&g6.mul(&g6, &a0.cs), &a0.cs)
            .scale(&rat(1, 16), &a0.cs);
        let a = spacelike_derived_family(Some(g2));
        let cs = &a.cs;
        let data = CurvatureData::compute(&a).unwrap();
        let g = |k: usize| pvar(cs, &format!("gamma_{k}"));
        let (g1, g3, g4, g5, g6) = (g(1), g(3), g(4), g(5), g(6));
        let g6sq = g6.mul(&g6, cs);
        // −4B₁₂ = γ₆²(3γ₅γ₆ + 2γ₁ − 3γ₃)
        let b12 = g6sq.mul(
            &g5.mul(&g6, cs)
                .scale(&rat_int(3), cs)
                .add(&g1.scale(&rat_int(2), cs), cs)
                .sub(&g3.scale(&rat_int(3), cs), cs),
            cs,
        );
        assert!(data.bach.at(0, 1).scale(&rat_int(-4), cs).equal(&b12, cs));
        // −128B₁₁ = 21γ₆⁴ + 144γ₅²γ₆² + γ₅γ₆(64γ₁ − 288γ₃) − 80γ₁² + 240γ₃²
        //           − 160γ₁γ₃ + 96γ₄γ₆
        let b11 = g6sq
            .mul(&g6sq, cs)
            .scale(&rat_int(21), cs)
            .add(&g5.mul(&g5, cs).mul(&g6sq, cs).scale(&rat_int(144), cs), cs)
            .add(
                &g5.mul(&g6, cs).mul(
                    &g1.scale(&rat_int(64), cs).sub(&g3.scale(&rat_int(288), cs), cs),
                    cs,
                ),
                cs,
            )
            .sub(&g1.mul(&g1, cs).scale(&rat_int(80), cs), cs)
            .add(&g3.mul(&g3, cs).scale(&rat_int(240), cs), cs)
            .sub(&g1.mul(&g3, cs).scale(&rat_int(160), cs), cs)
            .add(&g4.mul(&g6, cs).scale(&rat_int(96), cs), cs);
        assert!(data.bach.at(0, 0).scale(&rat_int(-128), cs).equal(&b11, cs));
        // 128B₃₄ = 63γ₆⁴ + 144γ₅²γ₆² + γ₅γ₆(192γ₁ − 192γ₃) + 80γ₁² + 80γ₃²
        //          − 160γ₁γ₃ + 32γ₄γ₆
        let b34 = g6sq
            .mul(&g6sq, cs)
            .scale(&rat_int(63), cs)
            .add(&g5.mul(&g5, cs).mul(&g6sq, cs).scale(&rat_int(144), cs), cs)
            .add(
                &g5.mul(&g6, cs).mul(
                    &g1.sub(&g3, cs).scale(&rat_int(192), cs),
                    cs,
                ),
                cs,
            )
            .add(&g1.mul(&g1, cs).scale(&rat_int(80), cs), cs)
            .add(&g3.mul(&g3, cs).scale(&rat_int(80), cs), cs)
            .sub(&g1.mul(&g3, cs).scale(&rat_int(160), cs), cs)
            .add(&g4.mul(&g6, cs).scale(&rat_int(32), cs), cs);
        assert!(data.bach.at(2, 3).scale(&rat_int(128), cs).equal(&b34, cs));
    }

    #[test]
    fn curvature_symmetries_on_parametric_family() {
        let a = null_derived_family();
        let cs = &a.cs;
        let data = CurvatureData::compute(&a).unwrap();
        let n = 4;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r = data.r(i, j, k, l);
                        assert!(r.equal(&data.r(j, i, k, l).neg(), cs));
                        assert!(r.equal(&data.r(i, j, l, k).neg(), cs));
                        assert!(r.equal(data.r(k, l, i, j), cs));
                        // first Bianchi
                        let b = data
                            .r(i, j, k, l)
                            .add(data.r(j, k, i, l), cs)
                            .add(data.r(k, i, j, l), cs);
                        assert!(b.is_zero(cs));
                    }
                }
            }
        }
        // Weyl is totally trace-free
        let ginv = a.metric.inverse(cs).unwrap();
        for k in 0..n {
            for l in 0..n {
                for (s1, s2) in [(0usize, 2usize), (0, 3), (1, 2), (1, 3), (0, 1), (2, 3)] {
                    let mut tr = FieldElement::zero();
                    for p in 0..n {
                        for q in 0..n {
                            if ginv.at(p, q).numerator().is_zero() {
                                continue;
                            }
                            let mut ix = [k, l, 0, 0];
                            // place the contracted pair in slots s1, s2 and
                            // the free pair in the remaining slots
                            let mut free = vec![k, l].into_iter();
                            for (pos, v) in ix.iter_mut().enumerate() {
                                *v = if pos == s1 {
                                    p
                                } else if pos == s2 {
                                    q
                                } else {
                                    free.next().unwrap()
                                };
                            }
                            tr = tr.add(
                                &ginv.at(p, q).mul(data.w(ix[0], ix[1], ix[2], ix[3]), cs),
                                cs,
                            );
                        }
                    }
                    assert!(tr.is_zero(cs), "W trace over slots ({s1},{s2}) nonzero");
                }
            }
        }
        // Cotton antisymmetric and trace-free; Bach symmetric and trace-free
        for i in 0..n {
            for j in 0..n {
                assert!(data.bach.at(i, j).equal(data.bach.at(j, i), cs));
                for k in 0..n {
                    assert!(data.c(i, j, k).equal(&data.c(j, i, k).neg(), cs));
                }
            }
        }
        assert!(ginv.mul(&data.bach, cs).trace(cs).is_zero(cs));
        let mut ctr = FieldElement::zero();
        for p in 0..n {
            for q in 0..n {
                for k in 0..n {
                    if !ginv.at(p, q).numerator().is_zero() {
                        ctr = ctr.add(&ginv.at(p, q).mul(data.c(p, k, q), cs), cs);
                    }
                }
            }
        }
        assert!(ctr.is_zero(cs));
    }

    #[test]
    fn div_weyl_is_half_cotton() {
        let kappa = div_weyl_cotton_constant();
        let mut saw_nonzero_cotton = false;
        for a in [
            null_derived_family(),
            null_derived_family_two(None, None),
            spacelike_derived_family(None),
        ] {
            let cs = &a.cs;
            let data = CurvatureData::compute(&a).unwrap();
            saw_nonzero_cotton |= !data.cotton_is_zero(cs);
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let lhs = data.dw(j, k, l);
                        let rhs = data.c(j, k, l).scale(&kappa, cs);
                        assert!(lhs.equal(&rhs, cs), "dW != κ₄·C at ({j},{k},{l})");
                    }
                }
            }
        }
        // the constant is only pinned if some example has C ≠ 0
        assert!(saw_nonzero_cotton);
    }

    #[test]
    fn homothety_covariance() {
        // a curved solvable example: [u_i, u4] = u_i, diag(1,1,1,−1)
        let build = |kappa: Rat| {
            let cs = ConstraintSystem::new();
            let k = FieldElement::from_int(1).scale(&kappa, &cs);
            let m = diag_metric(
                &cs,
                &[k.clone(), k.clone(), k.clone(), k.neg()],
            );
            let mut a = MetricLieAlgebra::new(4, cs, m).unwrap();
            for i in 0..3 {
                a.set_bracket(i, 3, i, fe(1)).unwrap();
            }
            a
        };
        let base = build(rat_int(1));
        let bd = CurvatureData::compute(&base).unwrap();
        assert!(!bd.scalar.is_zero(&base.cs));
        let inv = homothetic_invariant(&base, &bd.ricci, &bd.scalar).unwrap();
        for kappa in [rat_int(2), rat(1, 3)] {
            let scaled = build(kappa.clone());
            let sd = CurvatureData::compute(&scaled).unwrap();
            let cs = &scaled.cs;
            // Ricci operator scales by 1/κ, the invariant not at all
            let expect = bd.ricci_operator.scale(
                &FieldElement::from_int(1).scale(&(rat_int(1) / kappa), cs),
                cs,
            );
            assert!(sd.ricci_operator.sub(&expect, cs).is_zero(cs));
            let si = homothetic_invariant(&scaled, &sd.ricci, &sd.scalar).unwrap();
            assert!(si.equal(&inv, cs));
        }
        // τ = 0 has no invariant
        let cs = ConstraintSystem::new();
        let m = diag_metric(&cs, &[fe(1), fe(1), fe(1), fe(1)]);
        let flat = MetricLieAlgebra::new(4, cs, m).unwrap();
        let fd = CurvatureData::compute(&flat).unwrap();
        assert!(matches!(
            homothetic_invariant(&flat, &fd.ricci, &fd.scalar),
            Err(Error::UndefinedInvariant)
        ));
    }

    #[test]
    fn weyl_operator_on_null_family() {
        // the null-derived family is a plane wave: the Weyl operator on Λ²
        // is two-step nilpotent
        let a = null_derived_family();
        let data = CurvatureData::compute(&a).unwrap();
        let op = weyl_two_form_operator(&a, &data.weyl).unwrap();
        let cs = &a.cs;
        let sq = op.mul(&op, cs);
        assert!(sq.is_zero(cs));
    }
}

