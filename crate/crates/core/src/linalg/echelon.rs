//! Row reduction: incremental sparse echelon forms (exact and floating point)
//! and a dense fraction-free Bareiss rank.
//!
//! The sparse reducers accept rows one at a time, so callers can generate
//! large condition systems lazily and never materialize the full matrix.
//! Each stored pivot row is keyed by its leading column; an incoming row is
//! reduced at its leading column until it either vanishes or lands on a
//! column without a pivot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{rational_to_f64, Matrix, Rational};

/// Default pivot threshold of the floating-point mode.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub trait RowReducer {
    fn ncols(&self) -> usize;

    /// Adds a sparse row (sorted or not; duplicates summed). Returns `true`
    /// when the row was independent of the rows seen so far.
    fn push_row(&mut self, row: &[(usize, Rational)]) -> bool;

    fn rank(&self) -> usize;

    fn nullity(&self) -> usize {
        self.ncols() - self.rank()
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Fraction-free sparse echelon form over the integers.
///
/// Rows are kept primitive (content 1, positive leading entry), which bounds
/// coefficient growth for the ±1-heavy systems this crate produces.
#[derive(Debug, Clone)]
pub struct ExactEchelon {
    ncols: usize,
    pivots: Vec<Option<IntRow>>,
    rank: usize,
}

impl ExactEchelon {
    pub fn new(ncols: usize) -> Self {
        ExactEchelon {
            ncols,
            pivots: vec![None; ncols],
            rank: 0,
        }
    }

    pub fn push_integer_row(&mut self, row: IntRow) -> bool {
        let mut row = canonical_int_row(row);
        while let Some(&(lead, _)) = row.first() {
            debug_assert!(lead < self.ncols, "column {lead} out of range");
            match &self.pivots[lead] {
                Some(pivot) => {
                    row = eliminate_int(&row, pivot);
                }
                None => {
                    self.pivots[lead] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivots[c].is_some()).collect()
    }

    /// Basis of the kernel of the rows pushed so far, one vector per free
    /// column with that coordinate equal to 1 (reduced row echelon convention).
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        // Back-substitute to reduced echelon form, last pivot first.
        let mut reduced: Vec<Option<IntRow>> = vec![None; self.ncols];
        for c in (0..self.ncols).rev() {
            let Some(mut row) = self.pivots[c].clone() else {
                continue;
            };
            loop {
                let target = row
                    .iter()
                    .skip(1)
                    .map(|e| e.0)
                    .find(|col| reduced[*col].is_some());
                match target {
                    Some(col) => row = eliminate_at(&row, reduced[col].as_ref().unwrap(), col),
                    None => break,
                }
            }
            reduced[c] = Some(row);
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| reduced[c].is_none()).collect();
        let mut index_of_free = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            index_of_free[f] = k;
        }
        let mut basis = vec![vec![Rational::zero(); self.ncols]; free.len()];
        for (k, &f) in free.iter().enumerate() {
            basis[k][f] = Rational::one();
        }
        for (c, row) in reduced.iter().enumerate() {
            let Some(row) = row else { continue };
            let lead = &row[0].1;
            for (col, v) in row.iter().skip(1) {
                let k = index_of_free[*col];
                debug_assert!(k != usize::MAX);
                basis[k][c] = -Rational::new(v.clone(), lead.clone());
            }
        }
        basis
    }
}

impl RowReducer for ExactEchelon {
    fn ncols(&self) -> usize {
        self.ncols
    }

    fn push_row(&mut self, row: &[(usize, Rational)]) -> bool {
        self.push_integer_row(clear_denominators(row))
    }

    fn rank(&self) -> usize {
        self.rank
    }
}

/// Scales a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[(usize, Rational)]) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    row.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (*j, v.numer() * (&lcm / v.denom())))
        .collect()
}

fn canonical_int_row(mut row: IntRow) -> IntRow {
    row.sort_by_key(|e| e.0);
    let mut merged: IntRow = Vec::with_capacity(row.len());
    for (j, v) in row {
        match merged.last_mut() {
            Some((lj, lv)) if *lj == j => *lv += v,
            _ => merged.push((j, v)),
        }
    }
    merged.retain(|e| !e.1.is_zero());
    make_primitive(&mut merged);
    merged
}

fn make_primitive(row: &mut IntRow) {
    let Some(first) = row.first() else { return };
    let negative = first.1.is_negative();
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_one() && !negative {
        return;
    }
    if negative {
        g = -g;
    }
    for (_, v) in row.iter_mut() {
        *v /= &g;
    }
}

fn eliminate_int(row: &IntRow, pivot: &IntRow) -> IntRow {
    eliminate_at(row, pivot, pivot[0].0)
}

/// Cancels column `col` of `row` against `pivot`, whose leading column is `col`.
fn eliminate_at(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let a = &pivot[0].1;
    let b = &row[row.binary_search_by_key(&col, |e| e.0).unwrap()].1;
    let g = a.gcd(b);
    let (ka, kb) = (a / &g, b / &g);
    // ka * row - kb * pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, &ka * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&kb * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &ka * &row[i - 1].1 - &kb * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(&mut out);
    out
}

/// Floating-point sparse echelon form with a pivot threshold.
///
/// Every stored row is scaled to unit max-norm; entries at or below the
/// threshold are dropped. When an incoming row has a larger leading entry
/// than the stored pivot the two swap roles (partial pivoting).
#[derive(Debug, Clone)]
pub struct FloatEchelon {
    ncols: usize,
    tolerance: f64,
    pivots: Vec<Option<Vec<(usize, f64)>>>,
    rank: usize,
}

impl FloatEchelon {
    pub fn new(ncols: usize, tolerance: f64) -> Self {
        FloatEchelon {
            ncols,
            tolerance,
            pivots: vec![None; ncols],
            rank: 0,
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn push_float_row(&mut self, mut row: Vec<(usize, f64)>) -> bool {
        row.sort_by_key(|e| e.0);
        let mut row = normalize_float(merge_float(row), self.tolerance);
        while let Some(&(lead, lead_val)) = row.first() {
            let Some(pivot) = self.pivots[lead].as_mut() else {
                self.pivots[lead] = Some(row);
                self.rank += 1;
                return true;
            };
            if lead_val.abs() > pivot[0].1.abs() {
                std::mem::swap(pivot, &mut row);
            }
            let k = -row[0].1 / pivot[0].1;
            row = normalize_float(axpy_float(&row, pivot, k), self.tolerance);
        }
        false
    }
}

fn normalize_float(mut row: Vec<(usize, f64)>, tolerance: f64) -> Vec<(usize, f64)> {
    let scale = row.iter().fold(0.0f64, |m, e| m.max(e.1.abs()));
    if scale <= tolerance {
        return Vec::new();
    }
    row.retain_mut(|e| {
        e.1 /= scale;
        e.1.abs() > tolerance
    });
    row
}

fn merge_float(row: Vec<(usize, f64)>) -> Vec<(usize, f64)> {
    let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
    for (j, v) in row {
        match merged.last_mut() {
            Some((lj, lv)) if *lj == j => *lv += v,
            _ => merged.push((j, v)),
        }
    }
    merged
}

/// `row + k * pivot`, with the leading column forced to cancel.
fn axpy_float(row: &[(usize, f64)], pivot: &[(usize, f64)], k: f64) -> Vec<(usize, f64)> {
    let lead = pivot[0].0;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, k * pivot[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (ci, row[i - 1].1 + k * pivot[j - 1].1)
        };
        if c != lead && v != 0.0 {
            out.push((c, v));
        }
    }
    out
}

impl RowReducer for FloatEchelon {
    fn ncols(&self) -> usize {
        self.ncols
    }

    fn push_row(&mut self, row: &[(usize, Rational)]) -> bool {
        self.push_float_row(row.iter().map(|(j, v)| (*j, rational_to_f64(v))).collect())
    }

    fn rank(&self) -> usize {
        self.rank
    }
}

/// Dense fraction-free (Bareiss) elimination. The pivot in each column is the
/// nonzero entry of smallest magnitude, which keeps intermediate minors small.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let pivot = (rank..nrows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let akk = &pivot_row[col];
        for row in tail.iter_mut() {
            let aik = row[col].clone();
            for j in col..ncols {
                let num = akk * &row[j] - &aik * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
        }
        prev = akk.clone();
        rank += 1;
    }
    rank
}

/// Exact rank over the rationals. Dense matrices go through Bareiss; sparse
/// ones through the sparse fraction-free echelon. Both give the same answer.
pub fn rank(m: &Matrix) -> usize {
    if m.is_sparse() {
        let mut ech = ExactEchelon::new(m.cols());
        for i in 0..m.rows() {
            let row: Vec<(usize, Rational)> = m.row_entries(i).map(|(j, v)| (j, v.clone())).collect();
            ech.push_row(&row);
        }
        ech.rank()
    } else {
        let rows = (0..m.rows())
            .map(|i| {
                let mut dense = vec![BigInt::zero(); m.cols()];
                let entries: Vec<(usize, Rational)> =
                    m.row_entries(i).map(|(j, v)| (j, v.clone())).collect();
                for (j, v) in clear_denominators(&entries) {
                    dense[j] = v;
                }
                dense
            })
            .collect();
        bareiss_rank(rows)
    }
}

/// Numerical rank with the given pivot threshold.
pub fn float_rank(m: &Matrix, tolerance: f64) -> usize {
    let mut ech = FloatEchelon::new(m.cols(), tolerance);
    for i in 0..m.rows() {
        ech.push_float_row(m.row_entries(i).map(|(j, v)| (j, rational_to_f64(v))).collect());
    }
    ech.rank()
}

/// Exact rational basis of `{v : Mv = 0}`.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let mut ech = ExactEchelon::new(m.cols());
    for i in 0..m.rows() {
        let row: Vec<(usize, Rational)> = m.row_entries(i).map(|(j, v)| (j, v.clone())).collect();
        ech.push_row(&row);
    }
    ech.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::rat;

    fn apply(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
        (0..m.rows())
            .map(|i| m.row_entries(i).map(|(j, a)| a * &v[j]).sum())
            .collect()
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
        assert_eq!(rank(&Matrix::zeros(3, 3).to_dense()), 0);
        assert_eq!(rank(&Matrix::identity(5)), 5);
        assert_eq!(rank(&Matrix::identity(5).to_dense()), 5);
    }

    #[test]
    fn rank_dependent_rows() {
        let m = Matrix::from_i64_rows(&[[1, 2], [2, 4]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&m.to_sparse()), 1);
        assert_eq!(float_rank(&m, DEFAULT_TOLERANCE), 1);
    }

    #[test]
    fn bareiss_handles_column_skips() {
        let m = Matrix::from_i64_rows(&[[0, 2, 4, 1], [0, 1, 2, 3], [0, 3, 6, 4]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&m.to_sparse()), 2);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(nullspace_basis(&Matrix::identity(4)).is_empty());
    }

    #[test]
    fn nullspace_of_zero_is_everything() {
        let basis = nullspace_basis(&Matrix::zeros(2, 3));
        assert_eq!(basis.len(), 3);
        let stacked: Vec<Vec<i64>> = basis
            .iter()
            .map(|v| v.iter().map(|x| x.to_integer().try_into().unwrap()).collect())
            .collect();
        assert_eq!(rank(&Matrix::from_i64_rows(&stacked)), 3);
    }

    #[test]
    fn nullspace_small_system() {
        // x + y = 0, z = 0  =>  span{(1, -1, 0)}
        let m = Matrix::from_i64_rows(&[[1, 1, 0], [0, 0, 1]]);
        let basis = nullspace_basis(&m);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!(apply(&m, v).iter().all(Zero::is_zero));
        // span equality with (1,-1,0): v is a nonzero multiple of it
        assert!(v[2].is_zero());
        assert_eq!(&v[0] + &v[1], rat(0));
        assert!(!v[0].is_zero());
    }

    #[test]
    fn nullspace_with_rational_entries() {
        let m = Matrix::from_dense(
            2,
            3,
            vec![
                Rational::new(1.into(), 2.into()),
                rat(1),
                rat(0),
                rat(0),
                Rational::new(1.into(), 3.into()),
                rat(1),
            ],
        )
        .unwrap();
        let basis = nullspace_basis(&m);
        assert_eq!(basis.len(), 1);
        assert!(apply(&m, &basis[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn float_echelon_respects_tolerance() {
        let mut ech = FloatEchelon::new(2, 1e-9);
        assert!(ech.push_float_row(vec![(0, 1.0), (1, 1.0)]));
        assert!(!ech.push_float_row(vec![(0, 1.0), (1, 1.0 + 1e-12)]));
        assert!(ech.push_float_row(vec![(0, 1.0), (1, 1.5)]));
        assert_eq!(ech.rank(), 2);
    }
}
