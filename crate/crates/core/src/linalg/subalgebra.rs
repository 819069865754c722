use num_traits::{One, Zero};

use super::echelon::{ExactEchelon, RowReducer};
use super::matrix::{commutator, trace_inner, Matrix, Rational};
use crate::error::{Error, Result};

/// Coordinates on so(N) with respect to the basis `E_ab − E_ba`, `a < b`,
/// in lexicographic order of `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntisymCoords {
    n: usize,
}

impl AntisymCoords {
    pub fn new(n: usize) -> Self {
        AntisymCoords { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b && b < self.n);
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    pub fn pair(&self, mut idx: usize) -> (usize, usize) {
        let mut a = 0;
        loop {
            let row_len = self.n - a - 1;
            if idx < row_len {
                return (a, a + 1 + idx);
            }
            idx -= row_len;
            a += 1;
        }
    }

    /// Coefficient of `X[a][b]` in terms of coordinates: `Some((idx, ±1))`,
    /// or `None` on the diagonal.
    pub fn entry(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => Some((self.index(a, b), 1)),
            Greater => Some((self.index(b, a), -1)),
            Equal => None,
        }
    }

    pub fn to_matrix(&self, coords: &[Rational]) -> Matrix {
        let triplets = coords
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .flat_map(|(k, v)| {
                let (a, b) = self.pair(k);
                [(a, b, v.clone()), (b, a, -v.clone())]
            });
        Matrix::from_triplets(self.n, self.n, triplets).expect("indices in range")
    }

    /// Upper-triangle coordinates of `m`. Only meaningful for antisymmetric `m`.
    pub fn of_matrix(&self, m: &Matrix) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.len()];
        for i in 0..m.rows() {
            for (j, v) in m.row_entries(i) {
                if i < j {
                    out[self.index(i, j)] = v.clone();
                }
            }
        }
        out
    }
}

/// Standard basis of so(N): `E_ab − E_ba` for `a < b`, lexicographic, with
/// entry `(a, b)` equal to `+1`.
pub fn antisym_basis(n: usize) -> Vec<Matrix> {
    let coords = AntisymCoords::new(n);
    (0..coords.len())
        .map(|k| {
            let (a, b) = coords.pair(k);
            Matrix::from_triplets(
                n,
                n,
                [(a, b, Rational::one()), (b, a, -Rational::one())],
            )
            .expect("indices in range")
        })
        .collect()
}

/// Solves `G x = b` exactly for square `G`. Returns `None` when `G` is singular.
pub fn solve_square(g: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = g.len();
    let mut aug: Vec<Vec<Rational>> = g
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, p);
        let inv = Rational::one() / &aug[col][col];
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Exact inverse of a square matrix given as rows, or `None` if singular.
pub fn invert(g: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = g.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| if i == k { Rational::one() } else { Rational::zero() })
            .collect();
        cols.push(solve_square(g, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|k| cols[k][i].clone()).collect()).collect())
}

pub fn gram_matrix(elements: &[Matrix]) -> Result<Vec<Vec<Rational>>> {
    elements
        .iter()
        .map(|a| elements.iter().map(|b| trace_inner(a, b)).collect())
        .collect()
}

/// Coefficients of the trace-orthogonal projection of `x` onto `span`.
pub fn span_coefficients(x: &Matrix, span: &[Matrix]) -> Result<Vec<Rational>> {
    let gram = gram_matrix(span)?;
    let rhs = span
        .iter()
        .map(|b| trace_inner(b, x))
        .collect::<Result<Vec<_>>>()?;
    solve_square(&gram, &rhs).ok_or(Error::DegenerateGram)
}

/// `x` minus its orthogonal projection onto `span` under `⟨A,B⟩ = tr(AᵀB)`.
/// The result is zero exactly when `x` lies in the span.
pub fn project_off_span(x: &Matrix, span: &[Matrix]) -> Result<Matrix> {
    let coeffs = span_coefficients(x, span)?;
    let mut out = x.clone();
    for (c, b) in coeffs.iter().zip(span) {
        if !c.is_zero() {
            out = out.checked_sub(&b.scale(c))?;
        }
    }
    Ok(out)
}

/// Linearly independent antisymmetric matrices spanning a subalgebra of so(N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraBasis {
    ambient_dim: usize,
    elements: Vec<Matrix>,
}

impl SubalgebraBasis {
    /// Checks antisymmetry and linear independence.
    pub fn new(ambient_dim: usize, elements: Vec<Matrix>) -> Result<Self> {
        for (k, e) in elements.iter().enumerate() {
            if e.rows() != ambient_dim || !e.is_square() {
                return Err(Error::DimensionMismatch(format!(
                    "element {k} is {}x{}, expected {ambient_dim}x{ambient_dim}",
                    e.rows(),
                    e.cols()
                )));
            }
            if !e.is_antisymmetric() {
                return Err(Error::NotABasis(format!("element {k} is not antisymmetric")));
            }
        }
        let coords = AntisymCoords::new(ambient_dim);
        let mut ech = ExactEchelon::new(coords.len());
        for e in &elements {
            if !ech.push_row(&sparse(&coords.of_matrix(e))) {
                return Err(Error::NotABasis("elements are linearly dependent".into()));
            }
        }
        Ok(SubalgebraBasis {
            ambient_dim,
            elements,
        })
    }

    pub(crate) fn from_verified(ambient_dim: usize, elements: Vec<Matrix>) -> Self {
        SubalgebraBasis {
            ambient_dim,
            elements,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    fn echelon(&self) -> (AntisymCoords, ExactEchelon) {
        let coords = AntisymCoords::new(self.ambient_dim);
        let mut ech = ExactEchelon::new(coords.len());
        for e in &self.elements {
            ech.push_row(&sparse(&coords.of_matrix(e)));
        }
        (coords, ech)
    }

    /// Exact span membership, decided by rank.
    pub fn contains(&self, x: &Matrix) -> bool {
        if !x.is_antisymmetric() || x.rows() != self.ambient_dim {
            return false;
        }
        let (coords, mut ech) = self.echelon();
        !ech.push_row(&sparse(&coords.of_matrix(x)))
    }

    /// Whether every bracket of basis elements lies in the span.
    pub fn is_closed_under_bracket(&self) -> bool {
        let (coords, ech) = self.echelon();
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                let c = commutator(a, b).expect("same size");
                if ech.clone().push_row(&sparse(&coords.of_matrix(&c))) {
                    return false;
                }
            }
        }
        true
    }

    /// Dimension of the intersection of the two spans.
    pub fn intersection_dim(&self, other: &SubalgebraBasis) -> usize {
        let (coords, mut ech) = self.echelon();
        let before = ech.rank();
        for e in &other.elements {
            ech.push_row(&sparse(&coords.of_matrix(e)));
        }
        before + other.dim() - ech.rank()
    }
}

pub(crate) fn sparse(v: &[Rational]) -> Vec<(usize, Rational)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::rat;

    fn e_minus(n: usize, a: usize, b: usize) -> Matrix {
        Matrix::from_triplets(n, n, [(a, b, rat(1)), (b, a, rat(-1))]).unwrap()
    }

    #[test]
    fn antisym_basis_sizes_and_sign() {
        let b2 = antisym_basis(2);
        assert_eq!(b2.len(), 1);
        assert_eq!(b2[0], Matrix::from_i64_rows(&[[0, 1], [-1, 0]]));
        assert_eq!(antisym_basis(4).len(), 6);
        assert_eq!(antisym_basis(16).len(), 120);
    }

    #[test]
    fn coords_round_trip() {
        let c = AntisymCoords::new(7);
        for k in 0..c.len() {
            let (a, b) = c.pair(k);
            assert_eq!(c.index(a, b), k);
        }
        let basis = antisym_basis(7);
        for (k, m) in basis.iter().enumerate() {
            let v = c.of_matrix(m);
            assert_eq!(v.iter().filter(|x| !x.is_zero()).count(), 1);
            assert_eq!(v[k], rat(1));
            assert_eq!(&c.to_matrix(&v), m);
        }
    }

    #[test]
    fn projection_of_member_vanishes() {
        let j = &e_minus(4, 0, 1) + &e_minus(4, 2, 3);
        assert!(project_off_span(&j, &[j.clone()]).unwrap().is_zero());
    }

    #[test]
    fn projection_of_orthogonal_is_identity() {
        let j = &e_minus(4, 0, 1) + &e_minus(4, 2, 3);
        let x = e_minus(4, 0, 2);
        assert_eq!(project_off_span(&x, &[j]).unwrap(), x);
    }

    #[test]
    fn projection_keeps_orthogonal_component() {
        // Gram system by hand: <J,J> = 4, <J, J + E> = 4, so the coefficient is 1.
        let j = &e_minus(4, 0, 1) + &e_minus(4, 2, 3);
        let e13 = e_minus(4, 0, 2);
        let x = &j + &e13;
        assert_eq!(project_off_span(&x, &[j]).unwrap(), e13);
    }

    #[test]
    fn projection_rejects_dependent_span() {
        let j = e_minus(3, 0, 1);
        let x = e_minus(3, 1, 2);
        assert_eq!(
            project_off_span(&x, &[j.clone(), j.scale(&rat(2))]),
            Err(Error::DegenerateGram)
        );
    }

    #[test]
    fn subalgebra_basis_validation() {
        let a = e_minus(3, 0, 1);
        assert!(SubalgebraBasis::new(3, vec![a.clone(), a.scale(&rat(3))]).is_err());
        assert!(SubalgebraBasis::new(3, vec![Matrix::identity(3)]).is_err());
        let so3 = SubalgebraBasis::new(3, antisym_basis(3)).unwrap();
        assert!(so3.is_closed_under_bracket());
        assert!(so3.contains(&e_minus(3, 1, 2)));
        let line = SubalgebraBasis::new(3, vec![a]).unwrap();
        assert!(!line.contains(&e_minus(3, 1, 2)));
        assert_eq!(so3.intersection_dim(&line), 1);
    }

    #[test]
    fn inverse_of_small_matrix() {
        let g = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = invert(&g).unwrap();
        assert_eq!(inv, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(2)]]);
        assert!(invert(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_none());
    }
}
