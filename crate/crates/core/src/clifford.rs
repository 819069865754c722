//! Real irreducible representations of the even Clifford algebra Cl⁰_r as
//! explicit signed-permutation matrices, plus a symbolic Clifford product used
//! as an independent oracle for the bracket relations.
//!
//! Construction: Cl_{r−1} ≅ Cl⁰_r via f_i ↦ e_i e_r. A family G_1..G_{r−1} of
//! anticommuting antisymmetric signed permutations with G_i² = −I therefore
//! gives K_ir = G_i and K_ij = G_i G_j for i < j < r. The G_i come from left
//! multiplication in the Cayley–Dickson algebras (ℂ, ℍ, 𝕆) for fewer than eight
//! generators, and from the eight-fold tensor recursion beyond that.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat, ExactEchelon, Matrix, Rational, RowReducer};

/// Largest rank accepted by [`build_even_generators`] unless a larger limit is passed.
pub const DEFAULT_MAX_RANK: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldType {
    Real,
    Complex,
    Quaternionic,
}

impl FieldType {
    /// Real dimension of the field, which is also the dimension of the
    /// commutant of an irreducible representation of this type.
    pub fn dimension(self) -> u32 {
        match self {
            FieldType::Real => 1,
            FieldType::Complex => 2,
            FieldType::Quaternionic => 4,
        }
    }
}

impl fmt::Display for FieldType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldType::Real => "R",
            FieldType::Complex => "C",
            FieldType::Quaternionic => "H",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepInfo {
    pub r: u32,
    pub d_r: u64,
    pub v_r: u32,
    pub field_type: FieldType,
}

/// Dimension, count, and type of the irreducible real representations of Cl⁰_r.
pub fn irrep_info(r: u32) -> Result<IrrepInfo> {
    if !(2..=120).contains(&r) {
        return Err(Error::RankOutOfRange {
            rank: r,
            min: 2,
            max: 120,
        });
    }
    let half = r / 2;
    let (exp, field_type) = match r % 8 {
        1 | 7 => (half, FieldType::Real),
        2 | 6 => (half, FieldType::Complex),
        4 => (half, FieldType::Quaternionic),
        3 | 5 => (half + 1, FieldType::Quaternionic),
        0 => (half - 1, FieldType::Real),
        _ => unreachable!(),
    };
    Ok(IrrepInfo {
        r,
        d_r: 1u64 << exp,
        v_r: if r % 4 == 0 { 2 } else { 1 },
        field_type,
    })
}

/// Signed Clifford monomial `sign · e_{i_1} ⋯ e_{i_k}` with `i_1 < ⋯ < i_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CliffordMonomial {
    mask: u64,
    sign: i8,
}

impl CliffordMonomial {
    /// `indices` must be strictly increasing and lie in `1..=64`.
    pub fn new(indices: &[u32], sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Invalid(format!("monomial sign must be ±1, got {sign}")));
        }
        let mut mask = 0u64;
        let mut last = 0;
        for &i in indices {
            if i <= last || i > 64 {
                return Err(Error::Invalid(format!(
                    "index set {indices:?} is not strictly increasing within 1..=64"
                )));
            }
            mask |= 1 << (i - 1);
            last = i;
        }
        Ok(CliffordMonomial { mask, sign })
    }

    pub fn scalar(sign: i8) -> Self {
        CliffordMonomial { mask: 0, sign }
    }

    pub fn generator(i: u32) -> Self {
        Self::new(&[i], 1).expect("valid index")
    }

    pub fn bivector(i: u32, j: u32) -> Self {
        let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
        Self::new(&[lo, hi], s).expect("distinct indices")
    }

    pub fn indices(&self) -> Vec<u32> {
        (0..64).filter(|b| self.mask >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn grade(&self) -> u32 {
        self.mask.count_ones()
    }

    fn max_index(&self) -> u32 {
        64 - self.mask.leading_zeros()
    }
}

/// Clifford product under `e_j e_k + e_k e_j = −2δ_jk`.
///
/// Sorting `a·b` into increasing order costs one sign per inversion; each
/// repeated generator then contributes `e_i² = −1`.
pub fn clifford_product(a: CliffordMonomial, b: CliffordMonomial, r: u32) -> CliffordMonomial {
    assert!(
        a.max_index() <= r && b.max_index() <= r,
        "monomial indices exceed rank {r}"
    );
    let mut inversions = 0u32;
    let mut bm = b.mask;
    while bm != 0 {
        let j = bm.trailing_zeros();
        // generators of `a` with index greater than j
        inversions += (a.mask >> j >> 1).count_ones();
        bm &= bm - 1;
    }
    let squares = (a.mask & b.mask).count_ones();
    let flip = (inversions + squares) % 2 == 1;
    CliffordMonomial {
        mask: a.mask ^ b.mask,
        sign: if flip { -a.sign * b.sign } else { a.sign * b.sign },
    }
}

/// Bivector key `e_i e_j` with `1 ≤ i < j`; ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bivector(pub u32, pub u32);

impl Bivector {
    /// Canonical key and the sign relating `e_i e_j` to it.
    pub fn normalized(i: u32, j: u32) -> Option<(Bivector, i64)> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => Some((Bivector(i, j), 1)),
            Greater => Some((Bivector(j, i), -1)),
            Equal => None,
        }
    }

    pub fn all(r: u32) -> Vec<Bivector> {
        (1..=r)
            .flat_map(|i| (i + 1..=r).map(move |j| Bivector(i, j)))
            .collect()
    }

    /// `e_1 e_j` for `j = 2..=r`: these generate spin(r) as a Lie algebra,
    /// so linear conditions imposed on them propagate to every bivector.
    pub fn lie_generators(r: u32) -> Vec<Bivector> {
        (2..=r).map(|j| Bivector(1, j)).collect()
    }

    pub fn monomial(self) -> CliffordMonomial {
        CliffordMonomial::bivector(self.0, self.1)
    }

    fn from_mask(mask: u64) -> Option<Bivector> {
        if mask.count_ones() != 2 {
            return None;
        }
        let i = mask.trailing_zeros() + 1;
        let j = 64 - mask.leading_zeros();
        Some(Bivector(i, j))
    }
}

impl fmt::Display for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}e{}", self.0, self.1)
    }
}

/// Symbolic commutator `[e_i e_j, e_k e_l]` expanded in the bivector basis.
///
/// Returns `None` if a non-bivector term survives (which cannot happen for a
/// correct product; the check is kept so the oracle fails loudly).
pub fn bivector_bracket(a: Bivector, b: Bivector, r: u32) -> Option<Vec<(Bivector, i64)>> {
    let ab = clifford_product(a.monomial(), b.monomial(), r);
    let ba = clifford_product(b.monomial(), a.monomial(), r);
    let mut terms: BTreeMap<u64, i64> = BTreeMap::new();
    *terms.entry(ab.mask).or_default() += ab.sign as i64;
    *terms.entry(ba.mask).or_default() -= ba.sign as i64;
    let mut out = Vec::new();
    for (mask, c) in terms {
        if c == 0 {
            continue;
        }
        out.push((Bivector::from_mask(mask)?, c));
    }
    Some(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Half {
    Plus,
    Minus,
}

/// Images `K_ij` of the bivectors under an irreducible representation of Cl⁰_r.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    r: u32,
    dim: usize,
    generators: BTreeMap<Bivector, Matrix>,
    half: Option<Half>,
}

impl GammaSet {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half(&self) -> Option<Half> {
        self.half
    }

    /// `K_ij`; `K_ji` is returned as `−K_ij`.
    pub fn get(&self, i: u32, j: u32) -> Option<Matrix> {
        let (key, sign) = Bivector::normalized(i, j)?;
        let m = self.generators.get(&key)?;
        Some(if sign < 0 { -m } else { m.clone() })
    }

    pub fn generator(&self, b: Bivector) -> &Matrix {
        &self.generators[&b]
    }

    /// Generators in lexicographic bivector order.
    pub fn iter(&self) -> impl Iterator<Item = (Bivector, &Matrix)> {
        self.generators.iter().map(|(b, m)| (*b, m))
    }

    /// Image of the even volume element `K_12 K_34 ⋯ K_{r−1,r}` (r even).
    pub fn volume_element(&self) -> Option<Matrix> {
        if self.r % 2 != 0 {
            return None;
        }
        let mut w = Matrix::identity(self.dim);
        for k in (1..self.r).step_by(2) {
            w = &w * self.generator(Bivector(k, k + 1));
        }
        Some(w)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvenGenerators {
    Irreducible(GammaSet),
    /// `r ≡ 0 (mod 4)`: the two inequivalent half-spin representations.
    Split { plus: GammaSet, minus: GammaSet },
}

impl EvenGenerators {
    pub fn sets(&self) -> Vec<&GammaSet> {
        match self {
            EvenGenerators::Irreducible(g) => vec![g],
            EvenGenerators::Split { plus, minus } => vec![plus, minus],
        }
    }
}

/// Left multiplication by the imaginary units `e_1..e_{2^k − 1}` of the
/// Cayley–Dickson algebra of dimension `2^k` (k ≤ 3), as integer matrices.
fn cayley_dickson_left_mult(k: u32) -> Vec<Matrix> {
    let dim = 1usize << k;
    let unit = |i: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v
    };
    (1..dim)
        .map(|u| {
            let cols: Vec<Vec<i64>> = (0..dim).map(|j| cd_mul(&unit(u), &unit(j))).collect();
            let rows: Vec<Vec<i64>> = (0..dim)
                .map(|i| (0..dim).map(|j| cols[j][i]).collect())
                .collect();
            Matrix::from_i64_rows(&rows).to_sparse()
        })
        .collect()
}

fn cd_conj(x: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = x.iter().map(|v| -v).collect();
    out[0] = x[0];
    out
}

/// Cayley–Dickson product `(a,b)(c,d) = (ac − d̄b, da + bc̄)`.
fn cd_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    if x.len() == 1 {
        return vec![x[0] * y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    let mut out: Vec<i64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

/// The eight generators of Cl_8 on ℝ¹⁶: octonion left multiplications
/// tensored with diag(1,−1), plus I₈ ⊗ J₂.
fn cl8_generators() -> Vec<Matrix> {
    let reflection = Matrix::from_i64_rows(&[[1, 0], [0, -1]]).to_sparse();
    let rotation = Matrix::from_i64_rows(&[[0, 1], [-1, 0]]).to_sparse();
    let mut gens: Vec<Matrix> = cayley_dickson_left_mult(3)
        .iter()
        .map(|l| l.kron(&reflection))
        .collect();
    gens.push(Matrix::identity(8).kron(&rotation));
    gens
}

/// `n` anticommuting antisymmetric signed permutations squaring to −I, of the
/// minimal size admitting them.
pub fn clifford_generators(n: u32) -> Vec<Matrix> {
    match n {
        0 => Vec::new(),
        1 => cayley_dickson_left_mult(1),
        2 | 3 => cayley_dickson_left_mult(2).into_iter().take(n as usize).collect(),
        4..=7 => cayley_dickson_left_mult(3).into_iter().take(n as usize).collect(),
        _ => {
            let base = clifford_generators(n - 8);
            let base_dim = base.first().map_or(1, Matrix::rows);
            let eight = cl8_generators();
            let chirality = eight.iter().skip(1).fold(eight[0].clone(), |acc, g| &acc * g);
            let mut out: Vec<Matrix> = base.iter().map(|g| g.kron(&chirality)).collect();
            let id = Matrix::identity(base_dim);
            out.extend(eight.iter().map(|h| id.kron(h)));
            out
        }
    }
}

fn gamma_from_clifford(r: u32, g: &[Matrix], half: Option<Half>) -> GammaSet {
    let dim = g.first().map_or(1, Matrix::rows);
    let mut generators = BTreeMap::new();
    for i in 1..r {
        for j in i + 1..r {
            generators.insert(Bivector(i, j), &g[i as usize - 1] * &g[j as usize - 1]);
        }
        generators.insert(Bivector(i, r), g[i as usize - 1].clone());
    }
    GammaSet {
        r,
        dim,
        generators,
        half,
    }
}

pub fn build_even_generators(r: u32) -> Result<EvenGenerators> {
    build_even_generators_with_limit(r, DEFAULT_MAX_RANK)
}

pub fn build_even_generators_with_limit(r: u32, max_rank: u32) -> Result<EvenGenerators> {
    if r < 2 || r > max_rank {
        return Err(Error::RankOutOfRange {
            rank: r,
            min: 2,
            max: max_rank,
        });
    }
    let info = irrep_info(r)?;
    let g = clifford_generators(r - 1);
    let dim = g.first().map_or(1, Matrix::rows) as u64;
    if dim != info.d_r {
        return Err(Error::Construction(format!(
            "generator size {dim} differs from d_{r} = {}",
            info.d_r
        )));
    }
    if info.v_r == 1 {
        return Ok(EvenGenerators::Irreducible(gamma_from_clifford(r, &g, None)));
    }
    // G_i ↦ −G_i is e_r ↦ −e_r, which swaps the two half-spin modules.
    let negated: Vec<Matrix> = g.iter().map(|m| -m).collect();
    let first = gamma_from_clifford(r, &g, None);
    let second = gamma_from_clifford(r, &negated, None);
    let id = Matrix::identity(first.dim);
    let omega = first.volume_element().expect("r even");
    let (mut plus, mut minus) = if omega == id {
        (first, second)
    } else if omega == -&id {
        (second, first)
    } else {
        return Err(Error::Construction(format!(
            "volume element is not ±I for r = {r}"
        )));
    };
    plus.half = Some(Half::Plus);
    minus.half = Some(Half::Minus);
    Ok(EvenGenerators::Split { plus, minus })
}

/// Rows of the linear system `X·A − B·X = 0` in the unknowns `X[p][q]`
/// (row-major index `p·dim + q`).
pub(crate) fn intertwiner_rows(a: &Matrix, b: &Matrix) -> Vec<Vec<(usize, Rational)>> {
    let d = a.rows();
    let a_t = a.transpose();
    let mut rows = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            let mut row: Vec<(usize, Rational)> = Vec::new();
            // (XA)[p][q] = Σ_c X[p][c] A[c][q]
            for (c, v) in a_t.row_entries(q) {
                row.push((p * d + c, v.clone()));
            }
            // (BX)[p][q] = Σ_c B[p][c] X[c][q]
            for (c, v) in b.row_entries(p) {
                row.push((c * d + q, -v.clone()));
            }
            rows.push(row);
        }
    }
    rows
}

fn intertwiner_echelon(a: &GammaSet, b: &GammaSet) -> ExactEchelon {
    let d = a.dim;
    let mut ech = ExactEchelon::new(d * d);
    for key in Bivector::lie_generators(a.r) {
        for row in intertwiner_rows(a.generator(key), b.generator(key)) {
            ech.push_row(&row);
        }
    }
    ech
}

/// Basis of the commutant `{X : X K_ij = K_ij X}` in all `d × d` matrices.
pub fn commutant_basis(g: &GammaSet) -> Vec<Matrix> {
    let d = g.dim;
    intertwiner_echelon(g, g)
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_dense(d, d, v).expect("d*d entries").to_sparse())
        .collect()
}

/// Dimension of `{X : X K⁺_ij = K⁻_ij X}`; zero for inequivalent halves.
pub fn intertwiner_dim(a: &GammaSet, b: &GammaSet) -> usize {
    intertwiner_echelon(a, b).nullity()
}

/// Dimension of the commutant of the representation, checked against the
/// field type of the irreducible. A mismatch means the construction is wrong.
pub fn schur_check(g: &GammaSet) -> Result<u32> {
    let expected = irrep_info(g.r)?.field_type.dimension();
    let found = intertwiner_echelon(g, g).nullity() as u32;
    if found != expected {
        return Err(Error::Construction(format!(
            "commutant of the r = {} representation has dimension {found}, expected {expected}",
            g.r
        )));
    }
    Ok(found)
}

/// Builds the matrix image of a linear combination of bivectors.
pub fn image_of(g: &GammaSet, terms: &[(Bivector, i64)]) -> Matrix {
    terms
        .iter()
        .fold(Matrix::zeros(g.dim, g.dim), |acc, (b, c)| {
            &acc + &g.generator(*b).scale(&rat(*c))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::commutator;

    #[test]
    fn irrep_table_rows() {
        let i3 = irrep_info(3).unwrap();
        assert_eq!((i3.d_r, i3.v_r, i3.field_type), (4, 1, FieldType::Quaternionic));
        let i8 = irrep_info(8).unwrap();
        assert_eq!((i8.d_r, i8.v_r, i8.field_type), (8, 2, FieldType::Real));
        let i16 = irrep_info(16).unwrap();
        assert_eq!((i16.d_r, i16.v_r, i16.field_type), (128, 2, FieldType::Real));
        assert!(irrep_info(1).is_err());
    }

    #[test]
    fn product_examples() {
        let e1 = CliffordMonomial::generator(1);
        assert_eq!(clifford_product(e1, e1, 1), CliffordMonomial::scalar(-1));

        let e12 = CliffordMonomial::bivector(1, 2);
        let e23 = CliffordMonomial::bivector(2, 3);
        let neg_e13 = CliffordMonomial::new(&[1, 3], -1).unwrap();
        assert_eq!(clifford_product(e12, e23, 3), neg_e13);

        let e34 = CliffordMonomial::bivector(3, 4);
        let e1234 = CliffordMonomial::new(&[1, 2, 3, 4], 1).unwrap();
        assert_eq!(clifford_product(e12, e34, 4), e1234);
    }

    #[test]
    fn monomial_validation() {
        assert!(CliffordMonomial::new(&[2, 1], 1).is_err());
        assert!(CliffordMonomial::new(&[1, 1], 1).is_err());
        assert!(CliffordMonomial::new(&[1], 2).is_err());
        assert_eq!(CliffordMonomial::bivector(3, 1).sign(), -1);
        assert_eq!(CliffordMonomial::bivector(3, 1).indices(), vec![1, 3]);
    }

    #[test]
    fn clifford_generators_anticommute() {
        for n in 0..=17 {
            let g = clifford_generators(n);
            assert_eq!(g.len(), n as usize);
            if n == 0 {
                continue;
            }
            let d = g[0].rows();
            let minus_id = -&Matrix::identity(d);
            for (i, a) in g.iter().enumerate() {
                assert!(a.is_antisymmetric(), "n={n} G_{i} not antisymmetric");
                assert_eq!(&(a * a), &minus_id, "n={n} G_{i}^2 != -I");
                assert_eq!(a.nnz(), d);
                for b in &g[i + 1..] {
                    assert!((&(a * b) + &(b * a)).is_zero(), "n={n} not anticommuting");
                }
            }
        }
    }

    #[test]
    fn r2_is_a_complex_structure() {
        let EvenGenerators::Irreducible(g) = build_even_generators(2).unwrap() else {
            panic!("r=2 has a single irreducible");
        };
        assert_eq!(g.dim(), 2);
        let k = g.get(1, 2).unwrap();
        assert_eq!(&k * &k, -&Matrix::identity(2));
        assert_eq!(g.get(2, 1).unwrap(), -&k);
    }

    #[test]
    fn r3_brackets_match_oracle() {
        let EvenGenerators::Irreducible(g) = build_even_generators(3).unwrap() else {
            panic!()
        };
        assert_eq!(g.dim(), 4);
        for a in Bivector::all(3) {
            for b in Bivector::all(3) {
                let symbolic = bivector_bracket(a, b, 3).unwrap();
                let lhs = commutator(g.generator(a), g.generator(b)).unwrap();
                assert_eq!(lhs, image_of(&g, &symbolic), "[{a},{b}]");
            }
        }
    }

    #[test]
    fn r4_halves_have_opposite_volume_elements() {
        let EvenGenerators::Split { plus, minus } = build_even_generators(4).unwrap() else {
            panic!("r=4 splits")
        };
        assert_eq!((plus.dim(), minus.dim()), (4, 4));
        let id = Matrix::identity(4);
        assert_eq!(plus.volume_element().unwrap(), id);
        assert_eq!(minus.volume_element().unwrap(), -&id);
        assert_eq!(intertwiner_dim(&plus, &minus), 0);
    }

    #[test]
    fn schur_small_ranks() {
        for (r, expected) in [(2, 2), (3, 4), (5, 4), (6, 2), (7, 1)] {
            for g in build_even_generators(r).unwrap().sets() {
                assert_eq!(schur_check(g).unwrap(), expected, "r={r}");
            }
        }
    }

    #[test]
    fn commutant_elements_commute_with_every_generator() {
        let EvenGenerators::Irreducible(g) = build_even_generators(5).unwrap() else {
            panic!()
        };
        let basis = commutant_basis(&g);
        assert_eq!(basis.len(), 4);
        for x in &basis {
            for (_, k) in g.iter() {
                assert!(commutator(x, k).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rank_limits() {
        assert!(build_even_generators(1).is_err());
        assert!(build_even_generators(17).is_err());
        assert!(build_even_generators_with_limit(17, 17).is_ok());
    }
}
