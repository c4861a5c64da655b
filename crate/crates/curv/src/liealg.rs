//! Metric Lie algebras: structure constants with an inner product, Jacobi
//! and derivation checks, signatures by congruence, basis changes, the
//! semidirect extension construction, and nilpotency/solvability series.

use serde::Deserialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{
    parse_expr, ConstraintSystem, FieldElement, SignAssignment,
};
use crate::linalg::Mat;

/// An endomorphism in a fixed basis: `matrix[k][i]` is the u_k-coefficient
/// of the image of u_i (column-vector convention).
pub type Endomorphism = Mat;

/// A Lie algebra of dimension 3 or 4 with an inner product, over an exact
/// scalar scope. Brackets are stored as c^k_{ij} with antisymmetry in (i,j)
/// maintained by construction.
#[derive(Debug, Clone)]
pub struct MetricLieAlgebra {
    pub dim: usize,
    pub cs: ConstraintSystem,
    brackets: Vec<FieldElement>,
    pub metric: Mat,
}

impl MetricLieAlgebra {
    pub fn new(dim: usize, cs: ConstraintSystem, metric: Mat) -> Result<Self> {
        if !(dim == 3 || dim == 4) {
            return Err(Error::Invalid(format!("unsupported dimension {dim}")));
        }
        if metric.rows != dim || metric.cols != dim {
            return Err(Error::Invalid("metric shape mismatch".into()));
        }
        if !metric.is_symmetric(&cs) {
            return Err(Error::Invalid("metric must be symmetric".into()));
        }
        let mut a = MetricLieAlgebra {
            dim,
            cs,
            brackets: vec![FieldElement::zero(); dim * dim * dim],
            metric,
        };
        // the metric must be nondegenerate on the whole region
        let det = a.metric.det(&a.cs);
        if det.is_zero(&a.cs) {
            return Err(Error::Invalid("metric is degenerate".into()));
        }
        if !det.is_recognized_nonzero(&a.cs) {
            a.cs.declare_nonzero(det.numerator().clone());
        }
        Ok(a)
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// c^k_{ij}, the u_k coefficient of [u_i, u_j] (0-based indices).
    pub fn bracket(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        &self.brackets[self.idx(i, j, k)]
    }

    /// Sets [u_i, u_j] ∋ v·u_k and its antisymmetric mirror.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: FieldElement) -> Result<()> {
        if i == j && !v.is_zero(&self.cs) {
            return Err(Error::Invalid("[x,x] must vanish".into()));
        }
        let id = self.idx(i, j, k);
        let mir = self.idx(j, i, k);
        self.brackets[id] = v.clone();
        self.brackets[mir] = v.neg();
        Ok(())
    }

    /// [x, y] for coefficient vectors in the algebra basis.
    pub fn bracket_vec(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.dim;
        let mut out = vec![FieldElement::zero(); n];
        for i in 0..n {
            if x[i].is_zero(&self.cs) {
                continue;
            }
            for j in 0..n {
                if i == j || y[j].is_zero(&self.cs) {
                    continue;
                }
                let f = x[i].mul(&y[j], &self.cs);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.bracket(i, j, k);
                    if !c.numerator().is_zero() {
                        *o = o.add(&f.mul(c, &self.cs), &self.cs);
                    }
                }
            }
        }
        out
    }

    /// g(x, y) for coefficient vectors.
    pub fn inner(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let mut acc = FieldElement::zero();
        for i in 0..self.dim {
            if x[i].is_zero(&self.cs) {
                continue;
            }
            for j in 0..self.dim {
                let g = self.metric.at(i, j);
                if g.numerator().is_zero() {
                    continue;
                }
                acc = acc.add(&x[i].mul(&y[j], &self.cs).mul(g, &self.cs), &self.cs);
            }
        }
        acc
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::zero(); self.dim];
        v[i] = FieldElement::one();
        v
    }

    /// Components of [[u_i,u_j],u_k] + [[u_j,u_k],u_i] + [[u_k,u_i],u_j];
    /// the brackets define a Lie algebra iff all vanish.
    pub fn jacobi_defect(&self) -> Vec<FieldElement> {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            let ui = self.basis_vector(i);
            for j in 0..n {
                let uj = self.basis_vector(j);
                for k in 0..n {
                    let uk = self.basis_vector(k);
                    let t1 = self.bracket_vec(&self.bracket_vec(&ui, &uj), &uk);
                    let t2 = self.bracket_vec(&self.bracket_vec(&uj, &uk), &ui);
                    let t3 = self.bracket_vec(&self.bracket_vec(&uk, &ui), &uj);
                    for l in 0..n {
                        out.push(t1[l].add(&t2[l], &self.cs).add(&t3[l], &self.cs));
                    }
                }
            }
        }
        out
    }

    pub fn is_lie_algebra(&self) -> bool {
        self.jacobi_defect().iter().all(|d| d.is_zero(&self.cs))
    }

    /// Pulls the algebra through a basis change: rows of `t` express the new
    /// basis vectors in the old one.
    pub fn apply_basis_change(&self, t: &Mat) -> Result<MetricLieAlgebra> {
        let n = self.dim;
        if t.rows != n || t.cols != n {
            return Err(Error::Invalid("basis change shape mismatch".into()));
        }
        let tinv = t.inverse(&self.cs)?;
        // new metric: g'_{ab} = t_a^i t_b^j g_{ij}
        let new_metric = t.mul(&self.metric, &self.cs).mul(&t.transpose(), &self.cs);
        let mut out = MetricLieAlgebra::new(n, self.cs.clone(), new_metric)?;
        for a in 0..n {
            for b in (a + 1)..n {
                // [ũ_a, ũ_b] in the old basis…
                let va: Vec<FieldElement> = t.row(a).to_vec();
                let vb: Vec<FieldElement> = t.row(b).to_vec();
                let w = self.bracket_vec(&va, &vb);
                // …re-expressed in the new basis via u_k = Σ_d (t⁻¹)_{kd} ũ_d
                for d in 0..n {
                    let mut c = FieldElement::zero();
                    for (k, wk) in w.iter().enumerate() {
                        if !wk.numerator().is_zero() {
                            c = c.add(&wk.mul(tinv.at(k, d), &out.cs), &out.cs);
                        }
                    }
                    out.set_bracket(a, b, d, c)?;
                }
            }
        }
        Ok(out)
    }
}

/// Which subspace to restrict the metric to.
pub enum Subspace {
    Full,
    BasisIndices(Vec<usize>),
    Vectors(Vec<Vec<FieldElement>>),
}

fn sign_of_fe(fe: &FieldElement, cs: &ConstraintSystem) -> Result<i32> {
    if fe.is_zero(cs) {
        return Ok(0);
    }
    if let Ok(s) = fe.sign(cs) {
        return Ok(s);
    }
    let p = fe.numerator().mul(fe.denominator());
    if cs.is_recognized_positive(&p) {
        return Ok(1);
    }
    if cs.is_recognized_positive(&p.neg()) {
        return Ok(-1);
    }
    Err(Error::RegionInstability)
}

/// Signature (positive, negative, zero) of the metric restricted to the
/// given subspace, by symmetric Gaussian reduction (congruence) — fully
/// exact, no eigenvalues.
pub fn metric_signature(
    a: &MetricLieAlgebra,
    subspace: Subspace,
) -> Result<(usize, usize, usize)> {
    let vectors: Vec<Vec<FieldElement>> = match subspace {
        Subspace::Full => (0..a.dim).map(|i| a.basis_vector(i)).collect(),
        Subspace::BasisIndices(ix) => ix.into_iter().map(|i| a.basis_vector(i)).collect(),
        Subspace::Vectors(vs) => vs,
    };
    signature_rec(a, vectors)
}

/// One congruence step on an explicit vector list; the Gram matrix is
/// recomputed each round, which keeps the two-sided updates honest.
fn signature_rec(
    a: &MetricLieAlgebra,
    vectors: Vec<Vec<FieldElement>>,
) -> Result<(usize, usize, usize)> {
    if vectors.is_empty() {
        return Ok((0, 0, 0));
    }
    let cs = &a.cs;
    let m = vectors.len();
    let gram: Vec<Vec<FieldElement>> = (0..m)
        .map(|i| (0..m).map(|j| a.inner(&vectors[i], &vectors[j])).collect())
        .collect();
    let sub = |x: &[FieldElement], f: &FieldElement, y: &[FieldElement]| -> Vec<FieldElement> {
        x.iter()
            .zip(y)
            .map(|(xi, yi)| xi.sub(&f.mul(yi, cs), cs))
            .collect()
    };
    // diagonal pivot of decided sign
    for i in 0..m {
        let s = sign_of_fe(&gram[i][i], cs)?;
        if s == 0 {
            continue;
        }
        let mut rest = Vec::with_capacity(m - 1);
        for j in 0..m {
            if j == i {
                continue;
            }
            let f = gram[j][i].div(&gram[i][i], cs)?;
            rest.push(sub(&vectors[j], &f, &vectors[i]));
        }
        let (p, q, r) = signature_rec(a, rest)?;
        return Ok(if s > 0 { (p + 1, q, r) } else { (p, q + 1, r) });
    }
    // diagonal is zero: hyperbolic pair on a nonzero off-diagonal entry
    for i in 0..m {
        for j in (i + 1)..m {
            if gram[i][j].is_zero(cs) {
                continue;
            }
            if !gram[i][j].is_recognized_nonzero(cs) {
                return Err(Error::RegionInstability);
            }
            let c = &gram[i][j];
            let mut rest = Vec::with_capacity(m - 2);
            for k in 0..m {
                if k == i || k == j {
                    continue;
                }
                let fi = gram[k][j].div(c, cs)?;
                let fj = gram[k][i].div(c, cs)?;
                let v = sub(&sub(&vectors[k], &fi, &vectors[i]), &fj, &vectors[j]);
                rest.push(v);
            }
            let (p, q, r) = signature_rec(a, rest)?;
            return Ok((p + 1, q + 1, r));
        }
    }
    // identically zero block
    Ok((0, 0, m))
}

/// D[x,y] − [Dx,y] − [x,Dy] on all basis pairs of a 3-dimensional algebra;
/// D is a derivation iff every component vanishes.
pub fn derivation_defect(sub: &MetricLieAlgebra, d: &Endomorphism) -> Result<Vec<FieldElement>> {
    let n = sub.dim;
    if d.rows != n || d.cols != n {
        return Err(Error::Invalid("endomorphism shape mismatch".into()));
    }
    let cs = &sub.cs;
    let apply = |x: &[FieldElement]| -> Vec<FieldElement> {
        (0..n)
            .map(|k| {
                let mut acc = FieldElement::zero();
                for (i, xi) in x.iter().enumerate() {
                    if !xi.numerator().is_zero() {
                        acc = acc.add(&d.at(k, i).mul(xi, cs), cs);
                    }
                }
                acc
            })
            .collect()
    };
    let mut out = Vec::new();
    for i in 0..n {
        let ui = sub.basis_vector(i);
        for j in (i + 1)..n {
            let uj = sub.basis_vector(j);
            let lhs = apply(&sub.bracket_vec(&ui, &uj));
            let t1 = sub.bracket_vec(&apply(&ui), &uj);
            let t2 = sub.bracket_vec(&ui, &apply(&uj));
            for k in 0..n {
                out.push(lhs[k].sub(&t1[k], cs).sub(&t2[k], cs));
            }
        }
    }
    Ok(out)
}

pub fn is_derivation(sub: &MetricLieAlgebra, d: &Endomorphism) -> Result<bool> {
    Ok(derivation_defect(sub, d)?.iter().all(|v| v.is_zero(&sub.cs)))
}

/// Extends a 3-dimensional algebra by a derivation D acting as the bracket
/// with the new direction: [x, u₄] = D(x). The Jacobi identity for the
/// result follows from D being a derivation.
pub fn semidirect_extension(
    sub: &MetricLieAlgebra,
    d: &Endomorphism,
    metric: Mat,
) -> Result<MetricLieAlgebra> {
    if sub.dim != 3 {
        return Err(Error::Invalid("semidirect extension needs a 3-dim base".into()));
    }
    if !is_derivation(sub, d)? {
        return Err(Error::NotADerivation);
    }
    let mut out = MetricLieAlgebra::new(4, sub.cs.clone(), metric)?;
    for i in 0..3 {
        for j in (i + 1)..3 {
            for k in 0..3 {
                out.set_bracket(i, j, k, sub.bracket(i, j, k).clone())?;
            }
        }
        // [u_i, u_4] = D(u_i)
        for k in 0..3 {
            out.set_bracket(i, 3, k, d.at(k, i).clone())?;
        }
    }
    Ok(out)
}

/// Lower-central / derived series data. Requires decidable span ranks, i.e.
/// instantiated (or sign-decided) structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyData {
    pub lower_central_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
    /// least k with g_{k+1} = 0 (so "k-step nilpotent"), None if the lower
    /// central series stabilizes away from zero
    pub nilpotency_class: Option<usize>,
    pub solvable: bool,
}

/// Row-reduces a list of coefficient vectors to a basis of their span.
fn span_basis(
    vectors: Vec<Vec<FieldElement>>,
    n: usize,
    cs: &ConstraintSystem,
) -> Result<Vec<Vec<FieldElement>>> {
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for mut v in vectors {
        // eliminate against existing pivots
        for row in &rows {
            let lead = row
                .iter()
                .position(|x| !x.is_zero(cs))
                .expect("stored rows are nonzero");
            if !v[lead].is_zero(cs) {
                let f = v[lead].div(&row[lead], cs)?;
                for k in 0..n {
                    let x = v[k].sub(&f.mul(&row[k], cs), cs);
                    v[k] = x;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero(cs)) {
            None => continue,
            Some(lead) => {
                if !v[lead].is_recognized_nonzero(cs) {
                    return Err(Error::RegionInstability);
                }
                rows.push(v);
                rows.sort_by_key(|r| r.iter().position(|x| !x.is_zero(cs)).unwrap());
            }
        }
    }
    Ok(rows)
}

fn bracket_span(
    a: &MetricLieAlgebra,
    left: &[Vec<FieldElement>],
    right: &[Vec<FieldElement>],
) -> Result<Vec<Vec<FieldElement>>> {
    let mut products = Vec::new();
    for x in left {
        for y in right {
            products.push(a.bracket_vec(x, y));
        }
    }
    span_basis(products, a.dim, &a.cs)
}

pub fn nilpotency_data(a: &MetricLieAlgebra) -> Result<NilpotencyData> {
    let full: Vec<Vec<FieldElement>> = (0..a.dim).map(|i| a.basis_vector(i)).collect();
    // lower central series: g_1 = g, g_{k+1} = [g, g_k]
    let mut lower = vec![a.dim];
    let mut current = full.clone();
    let mut class = None;
    loop {
        let next = bracket_span(a, &full, &current)?;
        let d = next.len();
        if d == 0 {
            class = Some(lower.len());
            lower.push(0);
            break;
        }
        if d == *lower.last().unwrap() {
            lower.push(d);
            break; // stabilized away from zero
        }
        lower.push(d);
        current = next;
    }
    // derived series
    let mut derived = vec![a.dim];
    let mut cur = full;
    let mut solvable = false;
    loop {
        let next = bracket_span(a, &cur, &cur)?;
        let d = next.len();
        if d == 0 {
            derived.push(0);
            solvable = true;
            break;
        }
        if d == *derived.last().unwrap() {
            derived.push(d);
            break;
        }
        derived.push(d);
        cur = next;
    }
    Ok(NilpotencyData {
        lower_central_dims: lower,
        derived_dims: derived,
        nilpotency_class: class,
        solvable,
    })
}

/// The 3-dimensional Heisenberg algebra [v₁,v₂] = v₃ with the given metric.
pub fn heisenberg(cs: ConstraintSystem, metric: Mat) -> Result<MetricLieAlgebra> {
    let mut h = MetricLieAlgebra::new(3, cs, metric)?;
    h.set_bracket(0, 1, 2, FieldElement::one())?;
    Ok(h)
}

// ---------------------------------------------------------------------------
// JSON algebra files
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ParamDecl {
    name: String,
    #[serde(default)]
    nonzero: bool,
    #[serde(default)]
    positive: bool,
}

#[derive(Deserialize)]
struct RadicalDecl {
    name: String,
    square: String,
}

#[derive(Deserialize)]
struct BracketDecl {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct AlgebraFile {
    #[allow(dead_code)]
    name: Option<String>,
    dimension: usize,
    #[serde(default)]
    parameters: Vec<ParamDecl>,
    #[serde(default)]
    radicals: Vec<RadicalDecl>,
    #[serde(default)]
    signs: Vec<String>,
    metric: Vec<Vec<String>>,
    #[serde(default)]
    brackets: Vec<BracketDecl>,
}

/// Loads the algebra JSON document. Indices in the file are 1-based;
/// omitted brackets are zero. Sign parameters must be assigned.
pub fn algebra_from_json(text: &str, signs: &SignAssignment) -> Result<MetricLieAlgebra> {
    let raw: AlgebraFile = serde_json::from_str(text)?;
    let n = raw.dimension;
    let mut cs = ConstraintSystem::new();
    for p in &raw.parameters {
        cs.declare_parameter(&p.name, p.nonzero, p.positive)?;
    }
    for r in &raw.radicals {
        let sq = crate::exact::parse_polynomial(&r.square, &cs, signs)?;
        cs.declare_radical(&r.name, sq)?;
    }
    for s in &raw.signs {
        cs.declare_sign(s)?;
    }
    if raw.metric.len() != n || raw.metric.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("metric must be dimension × dimension".into()));
    }
    let mut metric = Mat::zeros(n, n);
    for (i, row) in raw.metric.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            metric.set(i, j, parse_expr(e, &cs, signs)?);
        }
    }
    let mut a = MetricLieAlgebra::new(n, cs, metric)?;
    for b in &raw.brackets {
        if b.i == 0 || b.j == 0 || b.i > n || b.j > n {
            return Err(Error::Invalid(format!("bracket index ({}, {}) out of range", b.i, b.j)));
        }
        for (kst, expr) in &b.coeffs {
            let k: usize = kst
                .parse()
                .map_err(|_| Error::Invalid(format!("bad bracket target `{kst}`")))?;
            if k == 0 || k > n {
                return Err(Error::Invalid(format!("bracket target {k} out of range")));
            }
            let v = parse_expr(expr, &a.cs, signs)?;
            a.set_bracket(b.i - 1, b.j - 1, k - 1, v)?;
        }
    }
    if !a.is_lie_algebra() {
        return Err(Error::JacobiFails);
    }
    Ok(a)
}

/// Convenience used all over the harness: declares nothing, parses an
/// expression list into a metric.
pub fn diag_metric(cs: &ConstraintSystem, entries: &[FieldElement]) -> Mat {
    let n = entries.len();
    let _ = cs;
    let mut m = Mat::zeros(n, n);
    for (i, e) in entries.iter().enumerate() {
        m.set(i, i, e.clone());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, Polynomial};

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn h3_orthonormal() -> MetricLieAlgebra {
        let cs = ConstraintSystem::new();
        let metric = diag_metric(&cs, &[fe(1), fe(1), fe(1)]);
        heisenberg(cs, metric).unwrap()
    }

    #[test]
    fn heisenberg_is_lie() {
        let h = h3_orthonormal();
        assert!(h.is_lie_algebra());
    }

    #[test]
    fn jacobi_detects_bad_bracket() {
        // h3 x R with an extra bracket [u3, u4] = u2 breaks Jacobi
        let cs = ConstraintSystem::new();
        let metric = diag_metric(&cs, &[fe(1), fe(1), fe(1), fe(-1)]);
        let mut a = MetricLieAlgebra::new(4, cs, metric).unwrap();
        a.set_bracket(0, 1, 2, fe(1)).unwrap();
        assert!(a.is_lie_algebra());
        a.set_bracket(2, 3, 1, fe(1)).unwrap();
        assert!(!a.is_lie_algebra());
    }

    #[test]
    fn signatures() {
        let cs = ConstraintSystem::new();
        let metric = diag_metric(&cs, &[fe(1), fe(1), fe(1), fe(-1)]);
        let a = MetricLieAlgebra::new(4, cs, metric).unwrap();
        assert_eq!(metric_signature(&a, Subspace::Full).unwrap(), (3, 1, 0));
        // pseudo-orthonormal pair <u3,u4>=1 on a degenerate-restriction span
        let cs2 = ConstraintSystem::new();
        let mut m = Mat::zeros(4, 4);
        m.set(0, 0, fe(1));
        m.set(1, 1, fe(1));
        m.set(2, 3, fe(1));
        m.set(3, 2, fe(1));
        let b = MetricLieAlgebra::new(4, cs2, m).unwrap();
        assert_eq!(metric_signature(&b, Subspace::Full).unwrap(), (3, 1, 0));
        assert_eq!(
            metric_signature(&b, Subspace::BasisIndices(vec![0, 1, 2])).unwrap(),
            (2, 0, 1)
        );
    }

    #[test]
    fn derivations_of_h3() {
        // generic derivation of h3: free 2x2 block on span{v1,v2}, third row
        // free, (3,3) entry = a11 + a22, (1,3) = (2,3) = 0
        let mut cs = ConstraintSystem::new();
        let names = ["a11", "a12", "a21", "a22", "a31", "a32"];
        for nm in names {
            cs.declare_parameter(nm, false, false).unwrap();
        }
        let v = |nm: &str, cs: &ConstraintSystem| {
            FieldElement::from_poly(Polynomial::var(cs.lookup(nm).unwrap()))
        };
        let metric = diag_metric(&cs, &[fe(1), fe(1), fe(1)]);
        let h = heisenberg(cs, metric).unwrap();
        let cs = &h.cs;
        let d = Mat::from_rows(vec![
            vec![v("a11", cs), v("a12", cs), fe(0)],
            vec![v("a21", cs), v("a22", cs), fe(0)],
            vec![v("a31", cs), v("a32", cs), v("a11", cs).add(&v("a22", cs), cs)],
        ]);
        assert!(is_derivation(&h, &d).unwrap());
        // breaking the trace condition breaks the derivation law
        let mut bad = d.clone();
        bad.set(2, 2, v("a11", cs).add(&v("a22", cs), cs).add(&fe(1), cs));
        assert!(!is_derivation(&h, &bad).unwrap());
        // and semidirect extension refuses it
        let metric4 = diag_metric(cs, &[fe(1), fe(1), fe(1), fe(-1)]);
        assert!(matches!(
            semidirect_extension(&h, &bad, metric4.clone()),
            Err(Error::NotADerivation)
        ));
        let ext = semidirect_extension(&h, &d, metric4).unwrap();
        assert!(ext.is_lie_algebra());
        // [g, h3] ⊆ h3: no bracket lands on u4
        for i in 0..4 {
            for j in 0..4 {
                assert!(ext.bracket(i, j, 3).is_zero(&ext.cs));
            }
        }
    }

    #[test]
    fn basis_change_roundtrip() {
        let h = h3_orthonormal();
        let cs = &h.cs;
        let t = Mat::from_rows(vec![
            vec![fe(1), fe(2), fe(0)],
            vec![fe(0), fe(1), fe(0)],
            vec![fe(1), fe(0), fe(3)],
        ]);
        let b = h.apply_basis_change(&t).unwrap();
        assert!(b.is_lie_algebra());
        let back = b.apply_basis_change(&t.inverse(cs).unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(back.metric.at(i, j).equal(h.metric.at(i, j), cs));
                for k in 0..3 {
                    assert!(back.bracket(i, j, k).equal(h.bracket(i, j, k), cs));
                }
            }
        }
        // signature is basis-change invariant
        assert_eq!(
            metric_signature(&b, Subspace::Full).unwrap(),
            metric_signature(&h, Subspace::Full).unwrap()
        );
    }

    #[test]
    fn series_data() {
        // abelian R^4
        let cs = ConstraintSystem::new();
        let metric = diag_metric(&cs, &[fe(1), fe(1), fe(1), fe(1)]);
        let ab = MetricLieAlgebra::new(4, cs, metric).unwrap();
        let nd = nilpotency_data(&ab).unwrap();
        assert_eq!(nd.nilpotency_class, Some(1));
        assert!(nd.solvable);

        // H3 x R: two-step nilpotent
        let cs = ConstraintSystem::new();
        let metric = diag_metric(&cs, &[fe(1), fe(1), fe(1), fe(1)]);
        let mut hr = MetricLieAlgebra::new(4, cs, metric).unwrap();
        hr.set_bracket(0, 1, 2, fe(1)).unwrap();
        let nd = nilpotency_data(&hr).unwrap();
        assert_eq!(nd.nilpotency_class, Some(2));
        assert_eq!(nd.lower_central_dims, vec![4, 1, 0]);
    }

    #[test]
    fn json_loading() {
        let text = r#"{
            "name": "null-derived family",
            "dimension": 4,
            "parameters": [
                {"name": "lambda_1", "nonzero": true},
                {"name": "gamma_1"}
            ],
            "signs": ["eps"],
            "metric": [
                ["1", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "0", "eps"],
                ["0", "0", "eps", "0"]
            ],
            "brackets": [
                {"i": 1, "j": 2, "coeffs": {"3": "lambda_1"}},
                {"i": 1, "j": 4, "coeffs": {"3": "gamma_1"}}
            ]
        }"#;
        let mut signs = SignAssignment::new();
        signs.insert("eps".into(), 1);
        let a = algebra_from_json(text, &signs).unwrap();
        assert_eq!(a.dim, 4);
        assert!(a.is_lie_algebra());
        assert!(a
            .bracket(0, 1, 2)
            .equal(&FieldElement::from_poly(Polynomial::var(a.cs.lookup("lambda_1").unwrap())), &a.cs));
        assert!(a.bracket(1, 0, 2).equal(
            &FieldElement::from_poly(Polynomial::var(a.cs.lookup("lambda_1").unwrap())).neg(),
            &a.cs
        ));
        let _ = rat_int(0);
    }
}
