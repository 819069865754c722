//! Centralizer and normalizer of the spin image inside so(N).
//!
//! Both are kernels of sparse linear systems in the antisymmetric coordinates
//! of `X`. The conditions are imposed on the Lie generators `e_1e_j`, which
//! generate the whole image. For the normalizer, the projection of
//! `[X, J_l]` onto the span is rewritten through auxiliary unknowns
//! `y_k = ⟨X, J_k⟩`, using `⟨[X, J_l], J_k⟩ = ⟨X, [J_l, J_k]⟩`; this keeps each
//! condition row short.

use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::bounds::binom2;
use crate::clifford::Bivector;
use crate::error::{Error, Result};
use crate::linalg::{
    commutator, gram_matrix, invert, rat, trace_inner, AntisymCoords, ExactEchelon, FloatEchelon,
    Matrix, Rational, RowReducer, SubalgebraBasis, DEFAULT_TOLERANCE,
};
use crate::structure::{EvenCliffordStructure, Multiplicities};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Arithmetic {
    #[default]
    Exact,
    Float { tolerance: f64 },
}

impl Arithmetic {
    pub fn float() -> Self {
        Arithmetic::Float {
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Arithmetic::Exact)
    }
}

type Row = Vec<(usize, Rational)>;

fn add_entry(row: &mut Row, col: usize, v: Rational) {
    row.push((col, v));
}

fn merge(mut row: Row) -> Row {
    row.sort_by_key(|e| e.0);
    let mut out: Row = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Rows expressing `[X, J][a,b]` (`a < b`) in the coordinates of `X`.
fn commutator_rows(coords: &AntisymCoords, j: &Matrix) -> Vec<Row> {
    let n = coords.n();
    let rows: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|i| j.row_entries(i).map(|(c, v)| (c, v.clone())).collect())
        .collect();
    let mut out = Vec::with_capacity(coords.len());
    for a in 0..n {
        for b in a + 1..n {
            let mut row = Row::new();
            // Σ_k X[a,k] J[k,b] = −Σ_k X[a,k] J[b,k]
            for (k, v) in &rows[b] {
                if let Some((idx, s)) = coords.entry(a, *k) {
                    add_entry(&mut row, idx, -v * rat(s));
                }
            }
            // −Σ_k J[a,k] X[k,b]
            for (k, v) in &rows[a] {
                if let Some((idx, s)) = coords.entry(*k, b) {
                    add_entry(&mut row, idx, -v * rat(s));
                }
            }
            out.push(merge(row));
        }
    }
    out
}

fn generators(s: &EvenCliffordStructure) -> Vec<Matrix> {
    Bivector::lie_generators(s.r())
        .into_iter()
        .map(|b| s.j(b).clone())
        .collect()
}

fn centralizer_rows(s: &EvenCliffordStructure) -> impl Iterator<Item = Row> + '_ {
    let coords = AntisymCoords::new(s.n());
    generators(s)
        .into_iter()
        .flat_map(move |j| commutator_rows(&coords, &j))
        .filter(|r| !r.is_empty())
}

/// Linear system for the normalizer on `C(N,2) + k` unknowns, where `k` is the
/// number of independent `J` (auxiliary columns last).
struct NormalizerSystem {
    ncols: usize,
    x_len: usize,
    rows: Vec<Row>,
}

fn normalizer_system(s: &EvenCliffordStructure) -> Result<NormalizerSystem> {
    let coords = AntisymCoords::new(s.n());
    let x_len = coords.len();

    // Independent subset of the J spanning the image.
    let mut basis: Vec<Matrix> = Vec::new();
    let mut ech = ExactEchelon::new(x_len);
    for (_, m) in s.iter() {
        if ech.push_row(&crate::linalg::sparse(&coords.of_matrix(m))) {
            basis.push(m.clone());
        }
    }
    let k = basis.len();
    let ginv = invert(&gram_matrix(&basis)?).ok_or(Error::DegenerateGram)?;
    let ginv_nz: Vec<Vec<(usize, Rational)>> =
        ginv.iter().map(|row| crate::linalg::sparse(row)).collect();

    // Which basis elements are nonzero at each coordinate (a < b).
    let mut at: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); x_len];
    for (bi, m) in basis.iter().enumerate() {
        for (a, b, v) in m.triplets() {
            if a < b {
                at[coords.index(a, b)].push((bi, v));
            }
        }
    }

    let mut rows = Vec::new();
    // y_m − ⟨X, J_m⟩ = 0, with ⟨X, J⟩ = 2 Σ_{a<b} x_ab J[a,b].
    for (bi, m) in basis.iter().enumerate() {
        let mut row: Row = m
            .triplets()
            .into_iter()
            .filter(|(a, b, _)| a < b)
            .map(|(a, b, v)| (coords.index(a, b), -v * rat(2)))
            .collect();
        row.push((x_len + bi, rat(1)));
        rows.push(merge(row));
    }

    for l in generators(s) {
        // [J_l, J_k] = Σ_m w[k][m] J_m over the basis, checked exactly.
        let mut w = vec![vec![Rational::zero(); k]; k];
        for (ki, jk) in basis.iter().enumerate() {
            let c = commutator(&l, jk)?;
            let rhs: Vec<Rational> = basis
                .iter()
                .map(|b| trace_inner(b, &c))
                .collect::<Result<_>>()?;
            let coeffs: Vec<Rational> = (0..k)
                .map(|i| ginv_nz[i].iter().map(|(t, g)| g * &rhs[*t]).sum())
                .collect();
            let mut residual = c;
            for (cf, b) in coeffs.iter().zip(&basis) {
                if !cf.is_zero() {
                    residual = residual.checked_sub(&b.scale(cf))?;
                }
            }
            if !residual.is_zero() {
                return Err(Error::Construction(
                    "bracket of structure matrices leaves their span".into(),
                ));
            }
            w[ki] = coeffs;
        }
        // Projection coefficients c = G⁻¹ W y.
        let proj: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|mm| ginv_nz[i].iter().map(|(t, g)| g * &w[*t][mm]).sum())
                    .collect()
            })
            .collect();
        for (idx, row) in commutator_rows(&coords, &l).into_iter().enumerate() {
            let mut row = row;
            for (bi, v) in &at[idx] {
                for (mm, p) in proj[*bi].iter().enumerate() {
                    if !p.is_zero() {
                        row.push((x_len + mm, -(v * p)));
                    }
                }
            }
            let row = merge(row);
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    Ok(NormalizerSystem {
        ncols: x_len + k,
        x_len,
        rows,
    })
}

fn reducer(ncols: usize, mode: Arithmetic) -> Box<dyn RowReducer> {
    match mode {
        Arithmetic::Exact => Box::new(ExactEchelon::new(ncols)),
        Arithmetic::Float { tolerance } => Box::new(FloatEchelon::new(ncols, tolerance)),
    }
}

fn basis_from_nullspace(n: usize, x_len: usize, null: Vec<Vec<Rational>>) -> SubalgebraBasis {
    let coords = AntisymCoords::new(n);
    let elements = null
        .into_iter()
        .map(|v| coords.to_matrix(&v[..x_len]))
        .collect();
    SubalgebraBasis::from_verified(n, elements)
}

/// Exact basis of `{X ∈ so(N) : [X, J_ij] = 0 ∀ i<j}`.
pub fn centralizer_basis(s: &EvenCliffordStructure) -> SubalgebraBasis {
    let x_len = AntisymCoords::new(s.n()).len();
    let mut ech = ExactEchelon::new(x_len);
    for row in centralizer_rows(s) {
        ech.push_row(&row);
    }
    basis_from_nullspace(s.n(), x_len, ech.nullspace())
}

/// Exact basis of `{X ∈ so(N) : [X, J_ij] ∈ span{J_kl} ∀ i<j}`.
pub fn normalizer_basis(s: &EvenCliffordStructure) -> Result<SubalgebraBasis> {
    let sys = normalizer_system(s)?;
    let mut ech = ExactEchelon::new(sys.ncols);
    for row in &sys.rows {
        ech.push_row(row);
    }
    Ok(basis_from_nullspace(s.n(), sys.x_len, ech.nullspace()))
}

pub fn centralizer_dim(s: &EvenCliffordStructure, mode: Arithmetic) -> usize {
    let mut red = reducer(AntisymCoords::new(s.n()).len(), mode);
    for row in centralizer_rows(s) {
        red.push_row(&row);
    }
    red.nullity()
}

pub fn normalizer_dim(s: &EvenCliffordStructure, mode: Arithmetic) -> Result<usize> {
    let sys = normalizer_system(s)?;
    let mut red = reducer(sys.ncols, mode);
    for row in &sys.rows {
        red.push_row(row);
    }
    Ok(red.nullity())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDims {
    pub centralizer: u64,
    pub normalizer: u64,
}

/// Closed-form centralizer and normalizer dimensions for `r ≥ 3`.
pub fn expected_dims(r: u32, mult: Multiplicities) -> Result<ExpectedDims> {
    if r < 3 {
        return Err(Error::RankOutOfRange {
            rank: r,
            min: 3,
            max: crate::bounds::BOUNDS_MAX_RANK,
        });
    }
    mult.validate(r)?;
    let (m1, m2) = match mult {
        Multiplicities::Single(m) => (m as u64, 0),
        Multiplicities::Pair(a, b) => (a as u64, b as u64),
    };
    let centralizer = match r % 8 {
        0 => binom2(m1 as i64) + binom2(m2 as i64),
        1 | 7 => binom2(m1 as i64),
        2 | 6 => m1 * m1,
        3 | 5 => m1 * (2 * m1 + 1),
        4 => m1 * (2 * m1 + 1) + m2 * (2 * m2 + 1),
        _ => unreachable!(),
    };
    Ok(ExpectedDims {
        centralizer,
        normalizer: centralizer + binom2(r as i64),
    })
}

/// Dimension of the isotropy algebra at maximal symmetry: centralizer ⊕ spin(r).
pub fn isotropy_dim(r: u32, mult: Multiplicities) -> Result<u64> {
    Ok(expected_dims(r, mult)?.normalizer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{antisym_basis, commutator, nullspace_basis, project_off_span};
    use crate::structure::build;
    use Multiplicities::{Pair, Single};

    #[test]
    fn centralizer_examples() {
        for (r, m, dim) in [(3, Single(1), 3), (9, Single(1), 0), (6, Single(1), 1), (3, Single(2), 10)] {
            let s = build(r, m).unwrap();
            let c = centralizer_basis(&s);
            assert_eq!(c.dim(), dim, "r={r}");
            for x in c.elements() {
                for (_, j) in s.iter() {
                    assert!(commutator(x, j).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn normalizer_examples() {
        assert_eq!(normalizer_basis(&build(3, Single(1)).unwrap()).unwrap().dim(), 6);
        assert_eq!(normalizer_basis(&build(5, Single(1)).unwrap()).unwrap().dim(), 13);
    }

    #[test]
    fn normalizer_elements_map_into_span() {
        let s = build(4, Pair(1, 1)).unwrap();
        let span = s.matrices();
        let nb = normalizer_basis(&s).unwrap();
        assert_eq!(nb.dim(), 3 + 3 + 6);
        for x in nb.elements() {
            for j in &span {
                let c = commutator(x, j).unwrap();
                assert!(project_off_span(&c, &span).unwrap().is_zero());
            }
        }
        for j in &span {
            assert!(nb.contains(j));
        }
        let c = centralizer_basis(&s);
        let js = SubalgebraBasis::new(s.n(), span).unwrap();
        assert_eq!(c.intersection_dim(&js), 0);
        assert_eq!(nb.intersection_dim(&c), c.dim());
        assert!(c.is_closed_under_bracket());
        assert!(nb.is_closed_under_bracket());
    }

    /// Normalizer dimension straight from the definition: kernel of
    /// `X ↦ (project_off_span([X, J_ij]))_{i<j}` over all of so(N).
    fn direct_normalizer_dim(s: &EvenCliffordStructure) -> usize {
        let span = s.matrices();
        let basis = antisym_basis(s.n());
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        for e in &basis {
            let mut col = Vec::new();
            for j in &span {
                let p = project_off_span(&commutator(e, j).unwrap(), &span).unwrap();
                col.extend(p.flatten());
            }
            columns.push(col);
        }
        let rows = columns[0].len();
        let data = (0..rows)
            .flat_map(|i| columns.iter().map(move |c| c[i].clone()))
            .collect();
        nullspace_basis(&Matrix::from_dense(rows, basis.len(), data).unwrap()).len()
    }

    #[test]
    fn auxiliary_formulation_matches_definition() {
        for (r, m) in [(3, Single(2)), (5, Single(1)), (4, Pair(1, 1)), (6, Single(1)), (7, Single(1))] {
            let s = build(r, m).unwrap();
            assert_eq!(
                normalizer_basis(&s).unwrap().dim(),
                direct_normalizer_dim(&s),
                "r={r}"
            );
        }
    }

    #[test]
    fn float_mode_agrees_with_exact() {
        for (r, m) in [(3, Single(2)), (8, Pair(1, 1)), (6, Single(2))] {
            let s = build(r, m).unwrap();
            assert_eq!(centralizer_dim(&s, Arithmetic::float()), centralizer_dim(&s, Arithmetic::Exact));
            assert_eq!(
                normalizer_dim(&s, Arithmetic::float()).unwrap(),
                normalizer_dim(&s, Arithmetic::Exact).unwrap()
            );
        }
    }

    #[test]
    fn expected_dimension_values() {
        assert_eq!(expected_dims(3, Single(2)).unwrap().centralizer, 10);
        assert_eq!(
            expected_dims(8, Pair(1, 1)).unwrap(),
            ExpectedDims { centralizer: 0, normalizer: 28 }
        );
        assert_eq!(
            expected_dims(10, Single(1)).unwrap(),
            ExpectedDims { centralizer: 1, normalizer: 46 }
        );
        assert_eq!(isotropy_dim(3, Single(1)).unwrap(), 6);
        assert_eq!(isotropy_dim(9, Single(1)).unwrap(), 36);
        assert_eq!(isotropy_dim(16, Pair(1, 0)).unwrap(), 120);
        assert!(expected_dims(2, Single(1)).is_err());
    }

    #[test]
    fn bases_round_trip_through_json() {
        use crate::json::SubalgebraBasisJson;
        let c = centralizer_basis(&build(3, Single(2)).unwrap());
        let text = serde_json::to_string(&SubalgebraBasisJson::from_basis(&c)).unwrap();
        let back: SubalgebraBasisJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.dim, 10);
        assert_eq!(back.to_basis().unwrap(), c);
    }

    #[test]
    fn centralizer_formula_matches_bounds() {
        for r in 3..=17u32 {
            for a in 0..=6 {
                for b in 0..=6 {
                    let m = if r % 4 == 0 { Pair(a, b) } else { Single(a) };
                    if m.validate(r).is_err() || (r % 4 != 0 && b > 0) {
                        continue;
                    }
                    assert_eq!(
                        expected_dims(r, m).unwrap().centralizer,
                        crate::bounds::d_c(r, m).unwrap()
                    );
                }
            }
        }
    }
}
