//! Small dense matrices over the exact scalar field: determinants,
//! inverses, characteristic polynomials, row reduction, and linear solving.
//! Dimensions in this crate are tiny (≤ 6), so cofactor expansion and
//! Faddeev–LeVerrier are the right tools.

use crate::error::{Error, Result};
use crate::exact::{ConstraintSystem, FieldElement, Rat};

#[derive(Debug, Clone)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElement>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![FieldElement::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.at(i, j).clone());
            }
        }
        m
    }

    pub fn add(&self, other: &Mat, cs: &ConstraintSystem) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = Mat::zeros(self.rows, self.cols);
        for i in 0..self.data.len() {
            m.data[i] = self.data[i].add(&other.data[i], cs);
        }
        m
    }

    pub fn sub(&self, other: &Mat, cs: &ConstraintSystem) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = Mat::zeros(self.rows, self.cols);
        for i in 0..self.data.len() {
            m.data[i] = self.data[i].sub(&other.data[i], cs);
        }
        m
    }

    pub fn scale(&self, k: &FieldElement, cs: &ConstraintSystem) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for i in 0..self.data.len() {
            m.data[i] = self.data[i].mul(k, cs);
        }
        m
    }

    pub fn mul(&self, other: &Mat, cs: &ConstraintSystem) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut m = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::zero();
                for k in 0..self.cols {
                    let a = self.at(i, k);
                    if a.numerator().is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(other.at(k, j), cs), cs);
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn trace(&self, cs: &ConstraintSystem) -> FieldElement {
        let mut acc = FieldElement::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.at(i, i), cs);
        }
        acc
    }

    pub fn is_zero(&self, cs: &ConstraintSystem) -> bool {
        self.data.iter().all(|v| v.is_zero(cs))
    }

    /// Cofactor-expansion determinant, skipping zero entries (the matrices
    /// here are small and usually sparse).
    pub fn det(&self, cs: &ConstraintSystem) -> FieldElement {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return FieldElement::one();
        }
        if n == 1 {
            return self.at(0, 0).clone();
        }
        // expand along the row with the most zeros
        let best = (0..n)
            .max_by_key(|&i| (0..n).filter(|&j| self.at(i, j).is_zero(cs)).count())
            .unwrap();
        let mut acc = FieldElement::zero();
        for j in 0..n {
            let a = self.at(best, j);
            if a.is_zero(cs) {
                continue;
            }
            let minor = self.minor(best, j);
            let mut t = a.mul(&minor.det(cs), cs);
            if (best + j) % 2 == 1 {
                t = t.neg();
            }
            acc = acc.add(&t, cs);
        }
        acc
    }

    fn minor(&self, ri: usize, rj: usize) -> Mat {
        let n = self.rows;
        let mut m = Mat::zeros(n - 1, n - 1);
        let mut a = 0;
        for i in 0..n {
            if i == ri {
                continue;
            }
            let mut b = 0;
            for j in 0..n {
                if j == rj {
                    continue;
                }
                m.set(a, b, self.at(i, j).clone());
                b += 1;
            }
            a += 1;
        }
        m
    }

    /// Inverse via adjugate / determinant; the determinant must be
    /// recognized nonzero.
    pub fn inverse(&self, cs: &ConstraintSystem) -> Result<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let d = self.det(cs);
        if d.is_zero(cs) {
            return Err(Error::SingularMatrix);
        }
        let dinv = d.inv(cs)?;
        let mut adj = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut c = self.minor(j, i).det(cs);
                if (i + j) % 2 == 1 {
                    c = c.neg();
                }
                adj.set(i, j, c.mul(&dinv, cs));
            }
        }
        Ok(adj)
    }

    /// Monic characteristic polynomial det(x·Id − M) by Faddeev–LeVerrier:
    /// returns [c₀, …, cₙ] with p(x) = Σ cᵢ xⁱ and cₙ = 1. Divisions are by
    /// integers only, so this stays in the field.
    pub fn charpoly(&self, cs: &ConstraintSystem) -> Vec<FieldElement> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![FieldElement::zero(); n + 1];
        coeffs[n] = FieldElement::one();
        let mut m = Mat::zeros(n, n); // M_0 = 0
        let mut c = FieldElement::one();
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·Id
            let mut am = self.mul(&m, cs);
            for i in 0..n {
                let v = am.at(i, i).add(&c, cs);
                am.set(i, i, v);
            }
            m = am;
            let t = self.mul(&m, cs).trace(cs);
            c = t
                .scale(&(-Rat::from_integer(1.into()) / Rat::from_integer((k as i64).into())), cs);
            coeffs[n - k] = c.clone();
        }
        coeffs
    }

    /// Least k ≤ rows with M^k = 0, or None when the size-bounded power is
    /// still nonzero.
    pub fn nilpotency_index(&self, cs: &ConstraintSystem) -> Option<usize> {
        assert_eq!(self.rows, self.cols);
        let mut p = Mat::identity(self.rows);
        for k in 1..=self.rows {
            p = p.mul(self, cs);
            if p.is_zero(cs) {
                return Some(k);
            }
        }
        None
    }

    pub fn is_diagonal(&self, cs: &ConstraintSystem) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| i == j || self.at(i, j).is_zero(cs))
        })
    }

    pub fn is_symmetric(&self, cs: &ConstraintSystem) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (i + 1..self.cols).all(|j| self.at(i, j).equal(self.at(j, i), cs))
            })
    }
}

/// Result of solving a linear system A·x = b over the scalar field.
#[derive(Debug, Clone)]
pub enum SolutionSet {
    /// No solution.
    Inconsistent,
    /// particular + span(homogeneous basis); an empty basis means unique.
    Affine { particular: Vec<FieldElement>, homogeneous: Vec<Vec<FieldElement>> },
}

impl SolutionSet {
    pub fn is_full_space(&self, dim: usize) -> bool {
        matches!(self, SolutionSet::Affine { homogeneous, .. } if homogeneous.len() == dim)
    }
}

/// Gauss–Jordan over the exact field. Pivots must be recognized nonzero;
/// an entry that is neither provably zero nor recognized nonzero makes the
/// reduction undecidable on the region.
pub fn solve(a: &Mat, b: &[FieldElement], cs: &ConstraintSystem) -> Result<SolutionSet> {
    assert_eq!(a.rows, b.len());
    let rows = a.rows;
    let cols = a.cols;
    let mut m: Vec<Vec<FieldElement>> = (0..rows)
        .map(|i| {
            let mut r: Vec<FieldElement> = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0;
    for col in 0..cols {
        // find a usable pivot
        let mut pivot = None;
        let mut undecided = false;
        for r in rank..rows {
            if m[r][col].is_zero(cs) {
                continue;
            }
            if m[r][col].is_recognized_nonzero(cs) {
                pivot = Some(r);
                break;
            }
            undecided = true;
        }
        if pivot.is_none() && undecided {
            return Err(Error::RegionInstability);
        }
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inv(cs)?;
        for j in col..=cols {
            m[rank][j] = m[rank][j].mul(&inv, cs);
        }
        for r in 0..rows {
            if r == rank || m[r][col].is_zero(cs) {
                continue;
            }
            let f = m[r][col].clone();
            for j in col..=cols {
                let v = m[r][j].sub(&f.mul(&m[rank][j], cs), cs);
                m[r][j] = v;
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // consistency
    for r in rank..rows {
        if !m[r][cols].is_zero(cs) {
            return Ok(SolutionSet::Inconsistent);
        }
    }
    let mut particular = vec![FieldElement::zero(); cols];
    for (col, p) in pivot_of_col.iter().enumerate() {
        if let Some(r) = p {
            particular[col] = m[*r][cols].clone();
        }
    }
    let mut homogeneous = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![FieldElement::zero(); cols];
        v[free] = FieldElement::one();
        for (col, p) in pivot_of_col.iter().enumerate() {
            if let Some(r) = p {
                v[col] = m[*r][free].neg();
            }
        }
        homogeneous.push(v);
    }
    Ok(SolutionSet::Affine { particular, homogeneous })
}

/// Rank of a matrix over the field (same pivoting contract as `solve`).
pub fn rank(a: &Mat, cs: &ConstraintSystem) -> Result<usize> {
    let zeros = vec![FieldElement::zero(); a.rows];
    match solve(a, &zeros, cs)? {
        SolutionSet::Affine { homogeneous, .. } => Ok(a.cols - homogeneous.len()),
        SolutionSet::Inconsistent => unreachable!("homogeneous system is consistent"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn cs() -> ConstraintSystem {
        ConstraintSystem::new()
    }

    #[test]
    fn det_and_inverse() {
        let cs = cs();
        let m = Mat::from_rows(vec![
            vec![fe(2), fe(1)],
            vec![fe(1), fe(1)],
        ]);
        assert!(m.det(&cs).equal(&fe(1), &cs));
        let inv = m.inverse(&cs).unwrap();
        assert!(m.mul(&inv, &cs).sub(&Mat::identity(2), &cs).is_zero(&cs));
    }

    #[test]
    fn charpoly_of_companion() {
        let cs = cs();
        // companion of x^2 - 3x + 2 -> roots 1, 2
        let m = Mat::from_rows(vec![
            vec![fe(0), fe(-2)],
            vec![fe(1), fe(3)],
        ]);
        let p = m.charpoly(&cs);
        assert!(p[0].equal(&fe(2), &cs));
        assert!(p[1].equal(&fe(-3), &cs));
        assert!(p[2].equal(&fe(1), &cs));
    }

    #[test]
    fn nilpotency() {
        let cs = cs();
        let m = Mat::from_rows(vec![
            vec![fe(0), fe(1), fe(0)],
            vec![fe(0), fe(0), fe(1)],
            vec![fe(0), fe(0), fe(0)],
        ]);
        assert_eq!(m.nilpotency_index(&cs), Some(3));
        assert_eq!(Mat::zeros(2, 2).nilpotency_index(&cs), Some(1));
        assert_eq!(Mat::identity(2).nilpotency_index(&cs), None);
    }

    #[test]
    fn solve_unique_and_inconsistent() {
        let cs = cs();
        let a = Mat::from_rows(vec![
            vec![fe(1), fe(1)],
            vec![fe(1), fe(-1)],
        ]);
        match solve(&a, &[fe(3), fe(1)], &cs).unwrap() {
            SolutionSet::Affine { particular, homogeneous } => {
                assert!(homogeneous.is_empty());
                assert!(particular[0].equal(&fe(2), &cs));
                assert!(particular[1].equal(&fe(1), &cs));
            }
            _ => panic!("expected unique solution"),
        }
        let b = Mat::from_rows(vec![
            vec![fe(1), fe(1)],
            vec![fe(2), fe(2)],
        ]);
        assert!(matches!(
            solve(&b, &[fe(1), fe(3)], &cs).unwrap(),
            SolutionSet::Inconsistent
        ));
        // underdetermined
        match solve(&b, &[fe(1), fe(2)], &cs).unwrap() {
            SolutionSet::Affine { homogeneous, .. } => assert_eq!(homogeneous.len(), 1),
            _ => panic!("expected affine set"),
        }
    }

    #[test]
    fn rank_with_parameters() {
        let mut cs = ConstraintSystem::new();
        let a = cs.declare_parameter("a", true, false).unwrap();
        let av = FieldElement::var(a);
        let m = Mat::from_rows(vec![
            vec![av.clone(), fe(0)],
            vec![av.scale(&rat(2, 1), &cs), fe(0)],
        ]);
        assert_eq!(rank(&m, &cs).unwrap(), 1);
        // undecidable pivot: parameter without nonzero hypothesis
        let mut cs2 = ConstraintSystem::new();
        let b = cs2.declare_parameter("b", false, false).unwrap();
        let m2 = Mat::from_rows(vec![vec![FieldElement::var(b)]]);
        assert!(rank(&m2, &cs2).is_err());
    }
}
