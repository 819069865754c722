use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => q.to_f64().unwrap_or(f64::NAN),
    }
}

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<Rational>),
    /// One sorted list of nonzero `(column, value)` pairs per row.
    Sparse(Vec<Vec<(usize, Rational)>>),
}

/// Exact rational matrix with a dense or a sparse (row-list) storage mode.
///
/// Values are immutable: every operation returns a new matrix. Equality is
/// entrywise and ignores the storage mode.
#[derive(Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            storage: Storage::Sparse(vec![Vec::new(); rows]),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_sparse_rows(n, (0..n).map(|i| vec![(i, Rational::one())]).collect())
    }

    /// Dense matrix from integer rows. Panics if the rows are ragged.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.iter().map(|&v| rat(v)));
        }
        Matrix {
            rows: rows.len(),
            cols,
            storage: Storage::Dense(data),
        }
    }

    pub fn from_dense(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            storage: Storage::Dense(data),
        })
    }

    /// Sparse matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut lists: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "triplet ({i},{j}) outside {rows}x{cols}"
                )));
            }
            lists[i].push((j, v));
        }
        for row in &mut lists {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
            for (j, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        Ok(Matrix {
            rows,
            cols,
            storage: Storage::Sparse(lists),
        })
    }

    /// Signed permutation: row `i` has the single entry `sign[i]` in column `perm[i]`.
    pub fn signed_permutation(perm: &[usize], signs: &[i64]) -> Self {
        assert_eq!(perm.len(), signs.len());
        Self::from_sparse_rows(
            perm.len(),
            perm.iter().zip(signs).map(|(&j, &s)| vec![(j, rat(s))]).collect(),
        )
    }

    fn from_sparse_rows(cols: usize, lists: Vec<Vec<(usize, Rational)>>) -> Self {
        Matrix {
            rows: lists.len(),
            cols,
            storage: Storage::Sparse(lists),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols + j].clone(),
            Storage::Sparse(s) => match s[i].binary_search_by_key(&j, |e| e.0) {
                Ok(k) => s[i][k].1.clone(),
                Err(_) => Rational::zero(),
            },
        }
    }

    /// Nonzero entries of row `i`, in increasing column order.
    pub fn row_entries(&self, i: usize) -> Box<dyn Iterator<Item = (usize, &Rational)> + '_> {
        match &self.storage {
            Storage::Dense(d) => Box::new(
                d[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero()),
            ),
            Storage::Sparse(s) => Box::new(s[i].iter().map(|(j, v)| (*j, v))),
        }
    }

    /// All nonzero entries in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Rational)> {
        (0..self.rows)
            .flat_map(|i| self.row_entries(i).map(move |(j, v)| (i, j, v.clone())))
            .collect()
    }

    pub fn nnz(&self) -> usize {
        (0..self.rows).map(|i| self.row_entries(i).count()).sum()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut data = vec![Rational::zero(); self.rows * self.cols];
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                data[i * self.cols + j] = v.clone();
            }
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            storage: Storage::Dense(data),
        }
    }

    pub fn to_sparse(&self) -> Matrix {
        let lists = (0..self.rows)
            .map(|i| self.row_entries(i).map(|(j, v)| (j, v.clone())).collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            storage: Storage::Sparse(lists),
        }
    }

    /// Row-major entries, zeros included.
    pub fn flatten(&self) -> Vec<Rational> {
        match self.to_dense().storage {
            Storage::Dense(d) => d,
            Storage::Sparse(_) => unreachable!(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut lists: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                lists[j].push((i, v.clone()));
            }
        }
        let t = Matrix::from_sparse_rows(self.rows, lists);
        if self.is_sparse() {
            t
        } else {
            t.to_dense()
        }
    }

    pub fn scale(&self, k: &Rational) -> Matrix {
        if k.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        self.map_entries(|v| v * k)
    }

    fn map_entries(&self, f: impl Fn(&Rational) -> Rational) -> Matrix {
        let storage = match &self.storage {
            Storage::Dense(d) => Storage::Dense(d.iter().map(&f).collect()),
            Storage::Sparse(s) => Storage::Sparse(
                s.iter()
                    .map(|row| row.iter().map(|(j, v)| (*j, f(v))).collect())
                    .collect(),
            ),
        };
        Matrix {
            rows: self.rows,
            cols: self.cols,
            storage,
        }
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, &Rational::one())
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, &-Rational::one())
    }

    /// `self + k * other`.
    fn combine(&self, other: &Matrix, k: &Rational) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let lists = (0..self.rows)
            .map(|i| merge_rows(self.row_entries(i), other.row_entries(i), k))
            .collect();
        let out = Matrix::from_sparse_rows(self.cols, lists);
        Ok(if self.is_sparse() && other.is_sparse() {
            out
        } else {
            out.to_dense()
        })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut lists = Vec::with_capacity(self.rows);
        let mut acc: Vec<Option<Rational>> = vec![None; other.cols];
        let mut touched = Vec::new();
        for i in 0..self.rows {
            for (k, a) in self.row_entries(i) {
                for (j, b) in other.row_entries(k) {
                    match &mut acc[j] {
                        Some(v) => *v += a * b,
                        slot @ None => {
                            *slot = Some(a * b);
                            touched.push(j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let row: Vec<(usize, Rational)> = touched
                .drain(..)
                .filter_map(|j| acc[j].take().filter(|v| !v.is_zero()).map(|v| (j, v)))
                .collect();
            lists.push(row);
        }
        let out = Matrix::from_sparse_rows(other.cols, lists);
        Ok(if self.is_sparse() && other.is_sparse() {
            out
        } else {
            out.to_dense()
        })
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rows).all(|i| self.row_entries(i).next().is_none())
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && (&self.transpose() + self).is_zero()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (p, q) = (other.rows, other.cols);
        let mut lists = Vec::with_capacity(self.rows * p);
        for i in 0..self.rows {
            let a_row: Vec<(usize, &Rational)> = self.row_entries(i).collect();
            for k in 0..p {
                let b_row: Vec<(usize, &Rational)> = other.row_entries(k).collect();
                let mut row = Vec::with_capacity(a_row.len() * b_row.len());
                for &(j, a) in &a_row {
                    for &(l, b) in &b_row {
                        row.push((j * q + l, a * b));
                    }
                }
                lists.push(row);
            }
        }
        Matrix::from_sparse_rows(self.cols * q, lists)
    }

    /// Block-diagonal matrix from square or rectangular blocks.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut lists = Vec::new();
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                lists.push(b.row_entries(i).map(|(j, v)| (j + offset, v.clone())).collect());
            }
            offset += b.cols;
        }
        Matrix::from_sparse_rows(cols, lists)
    }

    /// Principal submatrix on the index range `start..end`.
    pub fn principal_block(&self, start: usize, end: usize) -> Matrix {
        let lists = (start..end)
            .map(|i| {
                self.row_entries(i)
                    .filter(|(j, _)| (start..end).contains(j))
                    .map(|(j, v)| (j - start, v.clone()))
                    .collect()
            })
            .collect();
        Matrix::from_sparse_rows(end - start, lists)
    }

    /// Largest absolute entry, exactly.
    pub fn max_abs(&self) -> Rational {
        (0..self.rows)
            .flat_map(|i| self.row_entries(i).map(|(_, v)| v.abs()))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

fn merge_rows<'a>(
    a: impl Iterator<Item = (usize, &'a Rational)>,
    b: impl Iterator<Item = (usize, &'a Rational)>,
    k: &Rational,
) -> Vec<(usize, Rational)> {
    let mut out = Vec::new();
    let mut a = a.peekable();
    let mut b = b.peekable();
    loop {
        let next = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => a.next().map(|(j, v)| (j, v.clone())),
            (None, Some(_)) => b.next().map(|(j, v)| (j, v * k)),
            (Some(&(ja, _)), Some(&(jb, _))) => {
                if ja < jb {
                    a.next().map(|(j, v)| (j, v.clone()))
                } else if jb < ja {
                    b.next().map(|(j, v)| (j, v * k))
                } else {
                    let (_, va) = a.next().unwrap();
                    let (_, vb) = b.next().unwrap();
                    Some((ja, va + vb * k))
                }
            }
        };
        if let Some((j, v)) = next {
            if !v.is_zero() {
                out.push((j, v));
            }
        }
    }
    out
}

/// `AB − BA`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "commutator of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

/// Trace inner product `⟨A, B⟩ = tr(AᵀB)`.
pub fn trace_inner(a: &Matrix, b: &Matrix) -> Result<Rational> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch("trace inner product".into()));
    }
    let mut sum = Rational::zero();
    for i in 0..a.rows() {
        let row_b: Vec<(usize, &Rational)> = b.row_entries(i).collect();
        for (j, va) in a.row_entries(i) {
            if let Ok(k) = row_b.binary_search_by_key(&j, |e| e.0) {
                sum += va * row_b[k].1;
            }
        }
    }
    Ok(sum)
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| self.row_entries(i).eq(other.row_entries(i)))
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        if self.rows * self.cols <= 64 {
            let rows: Vec<Vec<String>> = (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
                .collect();
            write!(f, "{rows:?}")
        } else {
            write!(f, "({} nonzeros)", self.nnz())
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix add")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix sub")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix mul")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map_entries(|v| -v)
    }
}
