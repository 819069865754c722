//! Even-Clifford hermitian structures on ℝ^N assembled from irreducible
//! blocks, and the checks that certify them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::clifford::{
    bivector_bracket, build_even_generators, irrep_info, Bivector, EvenGenerators, Half,
};
use crate::error::{Error, Result};
use crate::json::{matrix_triplets, JsonRational};
use crate::linalg::{commutator, rat, ratio, ExactEchelon, Matrix, Rational, RowReducer};

/// Multiplicity of the irreducible block(s): `m` copies of Δ_r, or `m1`
/// copies of Δ⁺_r and `m2` of Δ⁻_r when `r ≡ 0 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub enum Multiplicities {
    Single(u32),
    Pair(u32, u32),
}

impl Multiplicities {
    pub fn total(&self) -> u32 {
        match *self {
            Multiplicities::Single(m) => m,
            Multiplicities::Pair(a, b) => a + b,
        }
    }

    /// Checks the shape against `v_r` and rejects the empty structure.
    pub fn validate(&self, r: u32) -> Result<()> {
        let info = irrep_info(r)?;
        let err = |reason: &str| {
            Err(Error::IncompatibleMultiplicities {
                rank: r,
                class: r % 8,
                reason: reason.to_string(),
            })
        };
        match (*self, info.v_r) {
            (Multiplicities::Single(0), 1) => err("m must be at least 1"),
            (Multiplicities::Single(_), 1) => Ok(()),
            (Multiplicities::Pair(0, 0), 2) => err("m1 and m2 cannot both be zero"),
            (Multiplicities::Pair(..), 2) => Ok(()),
            (Multiplicities::Single(_), _) => err(
                "r ≡ 0 (mod 4) has two half-spin representations; pass a pair m1,m2",
            ),
            (Multiplicities::Pair(..), _) => err(
                "r ≢ 0 (mod 4) has a single irreducible representation; pass one m",
            ),
        }
    }
}

impl From<Multiplicities> for Vec<u32> {
    fn from(m: Multiplicities) -> Self {
        match m {
            Multiplicities::Single(a) => vec![a],
            Multiplicities::Pair(a, b) => vec![a, b],
        }
    }
}

impl TryFrom<Vec<u32>> for Multiplicities {
    type Error = String;
    fn try_from(v: Vec<u32>) -> std::result::Result<Self, String> {
        match v.as_slice() {
            [m] => Ok(Multiplicities::Single(*m)),
            [a, b] => Ok(Multiplicities::Pair(*a, *b)),
            _ => Err(format!("expected one or two multiplicities, got {}", v.len())),
        }
    }
}

impl FromStr for Multiplicities {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad multiplicity {p:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Multiplicities::try_from(parts)
    }
}

impl fmt::Display for Multiplicities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicities::Single(m) => write!(f, "{m}"),
            Multiplicities::Pair(a, b) => write!(f, "{a},{b}"),
        }
    }
}

/// A rank-r even-Clifford hermitian structure on ℝ^N: the images `J_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenCliffordStructure {
    r: u32,
    mult: Multiplicities,
    n: usize,
    j: BTreeMap<Bivector, Matrix>,
}

impl EvenCliffordStructure {
    /// Assembles a structure from raw matrices without checking anything;
    /// [`verify`] reports what holds.
    pub fn from_parts(r: u32, mult: Multiplicities, j: BTreeMap<Bivector, Matrix>) -> Result<Self> {
        let n = j.values().next().map_or(0, Matrix::rows);
        if j.values().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch("J matrices of different sizes".into()));
        }
        if j.keys().copied().collect::<Vec<_>>() != Bivector::all(r) {
            return Err(Error::Invalid(format!("expected one J per bivector of rank {r}")));
        }
        Ok(EvenCliffordStructure { r, mult, n, j })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn mult(&self) -> Multiplicities {
        self.mult
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `J_ij`, with `J_ji = −J_ij`.
    pub fn get(&self, i: u32, j: u32) -> Option<Matrix> {
        let (key, sign) = Bivector::normalized(i, j)?;
        let m = self.j.get(&key)?;
        Some(if sign < 0 { -m } else { m.clone() })
    }

    pub fn j(&self, b: Bivector) -> &Matrix {
        &self.j[&b]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bivector, &Matrix)> {
        self.j.iter().map(|(b, m)| (*b, m))
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.j.values().cloned().collect()
    }

    /// Index ranges of the Plus and Minus blocks (`r ≡ 0 mod 4` only).
    pub fn half_blocks(&self) -> Option<[(Half, std::ops::Range<usize>); 2]> {
        let Multiplicities::Pair(m1, _) = self.mult else {
            return None;
        };
        let d = irrep_info(self.r).ok()?.d_r as usize;
        let split = d * m1 as usize;
        Some([(Half::Plus, 0..split), (Half::Minus, split..self.n)])
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            r: self.r,
            mult: self.mult,
            n: self.n,
            j: self
                .j
                .iter()
                .flat_map(|(b, m)| {
                    matrix_triplets(m)
                        .into_iter()
                        .map(move |(row, col, v)| (b.0, b.1, row, col, v))
                })
                .collect(),
        }
    }

    pub fn from_json(js: &StructureJson) -> Result<Self> {
        let mut lists: BTreeMap<Bivector, Vec<(usize, usize, Rational)>> =
            Bivector::all(js.r).into_iter().map(|b| (b, Vec::new())).collect();
        for (i, j, row, col, v) in &js.j {
            let (key, sign) = Bivector::normalized(*i, *j)
                .ok_or_else(|| Error::Invalid(format!("degenerate bivector ({i},{j})")))?;
            let entry = lists
                .get_mut(&key)
                .ok_or_else(|| Error::Invalid(format!("bivector ({i},{j}) exceeds rank")))?;
            entry.push((*row, *col, if sign < 0 { -v.0.clone() } else { v.0.clone() }));
        }
        let j = lists
            .into_iter()
            .map(|(b, t)| Ok((b, Matrix::from_triplets(js.n, js.n, t)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut s = Self::from_parts(js.r, js.mult, j)?;
        s.n = js.n;
        Ok(s)
    }
}

/// `{r, mult, N, J}` with `J` a list of `(i, j, row, col, value)` triplets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureJson {
    pub r: u32,
    pub mult: Multiplicities,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "J")]
    pub j: Vec<(u32, u32, usize, usize, JsonRational)>,
}

/// `J_ij = K_ij ⊗ I_m`, or `blockdiag(K⁺_ij ⊗ I_m1, K⁻_ij ⊗ I_m2)`.
pub fn build(r: u32, mult: Multiplicities) -> Result<EvenCliffordStructure> {
    mult.validate(r)?;
    let gens = build_even_generators(r)?;
    let mut j = BTreeMap::new();
    match (&gens, mult) {
        (EvenGenerators::Irreducible(g), Multiplicities::Single(m)) => {
            let id = Matrix::identity(m as usize);
            for (b, k) in g.iter() {
                j.insert(b, k.kron(&id));
            }
        }
        (EvenGenerators::Split { plus, minus }, Multiplicities::Pair(m1, m2)) => {
            let (id1, id2) = (Matrix::identity(m1 as usize), Matrix::identity(m2 as usize));
            for (b, kp) in plus.iter() {
                let mut blocks = Vec::with_capacity(2);
                if m1 > 0 {
                    blocks.push(kp.kron(&id1));
                }
                if m2 > 0 {
                    blocks.push(minus.generator(b).kron(&id2));
                }
                j.insert(b, Matrix::block_diag(&blocks));
            }
        }
        _ => unreachable!("validated multiplicities"),
    }
    EvenCliffordStructure::from_parts(r, mult, j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub r: u32,
    pub mult: Multiplicities,
    #[serde(rename = "N")]
    pub n: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_ANTISYMMETRIC: &str = "antisymmetric";
pub const CHECK_SQUARE: &str = "square_minus_identity";
pub const CHECK_BRACKETS: &str = "bracket_table";
pub const CHECK_SPAN: &str = "span_dimension";

/// Runs the four structure checks: antisymmetry, `J² = −I`, the bracket
/// table against the symbolic Clifford product, and `dim span{J_ij} = C(r,2)`.
pub fn verify(s: &EvenCliffordStructure) -> VerifyReport {
    let minus_id = -&Matrix::identity(s.n);

    let bad_antisym: Vec<String> = s
        .iter()
        .filter(|(_, m)| !m.is_antisymmetric())
        .map(|(b, _)| b.to_string())
        .collect();
    let bad_square: Vec<String> = s
        .iter()
        .filter(|(_, m)| (*m * *m) != minus_id)
        .map(|(b, _)| b.to_string())
        .collect();

    let mut bad_brackets = Vec::new();
    let keys: Vec<Bivector> = s.j.keys().copied().collect();
    for (x, &a) in keys.iter().enumerate() {
        for &b in &keys[x + 1..] {
            let lhs = commutator(s.j(a), s.j(b)).expect("same size");
            let ok = match bivector_bracket(a, b, s.r) {
                Some(terms) => {
                    let rhs = terms.iter().fold(Matrix::zeros(s.n, s.n), |acc, (k, c)| {
                        &acc + &s.j(*k).scale(&rat(*c))
                    });
                    lhs == rhs
                }
                None => false,
            };
            if !ok {
                bad_brackets.push(format!("[{a},{b}]"));
            }
        }
    }

    let expected_span = keys.len();
    let span = span_dimension(s);

    let summarize = |bad: &[String], total: usize| {
        if bad.is_empty() {
            format!("{total} of {total} hold")
        } else {
            let shown: Vec<&str> = bad.iter().take(5).map(String::as_str).collect();
            format!("{} of {total} fail: {}", bad.len(), shown.join(", "))
        }
    };
    let pairs = expected_span * expected_span.saturating_sub(1) / 2;
    VerifyReport {
        r: s.r,
        mult: s.mult,
        n: s.n,
        checks: vec![
            CheckResult {
                name: CHECK_ANTISYMMETRIC.into(),
                passed: bad_antisym.is_empty(),
                detail: summarize(&bad_antisym, expected_span),
            },
            CheckResult {
                name: CHECK_SQUARE.into(),
                passed: bad_square.is_empty(),
                detail: summarize(&bad_square, expected_span),
            },
            CheckResult {
                name: CHECK_BRACKETS.into(),
                passed: bad_brackets.is_empty(),
                detail: summarize(&bad_brackets, pairs),
            },
            CheckResult {
                name: CHECK_SPAN.into(),
                passed: span == expected_span,
                detail: format!("dim span = {span}, C(r,2) = {expected_span}"),
            },
        ],
    }
}

/// Exact dimension of `span{J_ij}` inside all N×N matrices.
pub fn span_dimension(s: &EvenCliffordStructure) -> usize {
    let n = s.n;
    let mut ech = ExactEchelon::new(n * n);
    for (_, m) in s.iter() {
        let row: Vec<(usize, Rational)> =
            m.triplets().into_iter().map(|(i, j, v)| (i * n + j, v)).collect();
        ech.push_row(&row);
    }
    ech.rank()
}

/// Structure constants: `[J_a, J_b] = Σ_c coeff · J_c` for `a < b`, solved
/// through the trace-form Gram system. Fails if the J are dependent.
pub type StructureConstants = BTreeMap<(Bivector, Bivector), Vec<(Bivector, Rational)>>;

pub fn bracket_coefficients(s: &EvenCliffordStructure) -> Result<StructureConstants> {
    let keys: Vec<Bivector> = s.j.keys().copied().collect();
    let span = s.matrices();
    let mut out = BTreeMap::new();
    for (x, &a) in keys.iter().enumerate() {
        for &b in &keys[x + 1..] {
            let c = commutator(s.j(a), s.j(b))?;
            let coeffs = crate::linalg::span_coefficients(&c, &span)?;
            let terms = keys
                .iter()
                .zip(coeffs)
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (*k, v))
                .collect();
            out.insert((a, b), terms);
        }
    }
    Ok(out)
}

/// The two quaternionic triples of a rank-4 structure:
/// `J±_12 = ±½(J_14 ± J_23)`, `J±_31 = ±½(J_13 ∓ J_24)`, `J±_23 = ±½(J_12 ± J_34)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionicSplit {
    pub plus: [Matrix; 3],
    pub minus: [Matrix; 3],
    pub blocks: [(Half, std::ops::Range<usize>); 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    /// Block on which all three `J⁺` vanish, if exactly one.
    pub plus_vanishes_on: Option<Half>,
    pub minus_vanishes_on: Option<Half>,
    /// Dimension of the block supporting the `J⁺` (resp. `J⁻`) triple.
    pub plus_support_dim: Option<usize>,
    pub minus_support_dim: Option<usize>,
    /// Every `J±` restricted to its supporting block squares to `−I`.
    pub restrictions_square_to_minus_identity: bool,
    /// On its supporting block each triple anticommutes pairwise and the
    /// product of the first two is `±` the third.
    pub quaternionic_relations: bool,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        self.plus_vanishes_on.is_some()
            && self.minus_vanishes_on.is_some()
            && self.plus_vanishes_on != self.minus_vanishes_on
            && self.restrictions_square_to_minus_identity
            && self.quaternionic_relations
    }
}

pub fn r4_quaternionic_split(s: &EvenCliffordStructure) -> Result<QuaternionicSplit> {
    if s.r != 4 {
        return Err(Error::Invalid(format!("quaternionic split needs r = 4, got {}", s.r)));
    }
    match s.mult {
        Multiplicities::Pair(m1, m2) if m1 > 0 && m2 > 0 => {}
        m => {
            return Err(Error::IncompatibleMultiplicities {
                rank: 4,
                class: 4,
                reason: format!("both half-spin multiplicities must be positive, got {m}"),
            })
        }
    }
    let j = |a, b| s.get(a, b).expect("rank 4 bivector");
    let half = ratio(1, 2);
    let (j12, j13, j14, j23, j24, j34) = (j(1, 2), j(1, 3), j(1, 4), j(2, 3), j(2, 4), j(3, 4));
    let plus = [
        (&j14 + &j23).scale(&half),
        (&j13 - &j24).scale(&half),
        (&j12 + &j34).scale(&half),
    ];
    let minus = [
        (&j14 - &j23).scale(&-half.clone()),
        (&j13 + &j24).scale(&-half.clone()),
        (&j12 - &j34).scale(&-half),
    ];
    Ok(QuaternionicSplit {
        plus,
        minus,
        blocks: s.half_blocks().expect("pair multiplicities"),
    })
}

impl QuaternionicSplit {
    fn vanishes_on(m: &Matrix, block: &std::ops::Range<usize>) -> bool {
        m.triplets()
            .iter()
            .all(|(i, j, _)| !block.contains(i) && !block.contains(j))
    }

    fn triple_vanishes_on(&self, triple: &[Matrix; 3]) -> Option<(Half, usize)> {
        let hits: Vec<&(Half, std::ops::Range<usize>)> = self
            .blocks
            .iter()
            .filter(|(_, b)| triple.iter().all(|m| Self::vanishes_on(m, b)))
            .collect();
        match hits.as_slice() {
            [(h, _)] => {
                let other = self.blocks.iter().find(|(o, _)| o != h).unwrap();
                Some((*h, other.1.len()))
            }
            _ => None,
        }
    }

    fn triple_is_quaternionic(triple: &[Matrix; 3], block: &std::ops::Range<usize>) -> (bool, bool) {
        let r: Vec<Matrix> = triple
            .iter()
            .map(|m| m.principal_block(block.start, block.end))
            .collect();
        let minus_id = -&Matrix::identity(block.len());
        let squares = r.iter().all(|m| (m * m) == minus_id);
        let anti = (0..3).all(|a| ((a + 1)..3).all(|b| (&(&r[a] * &r[b]) + &(&r[b] * &r[a])).is_zero()));
        let ij = &r[0] * &r[1];
        let closes = ij == r[2] || ij == -&r[2];
        (squares, anti && closes)
    }

    pub fn check(&self) -> SplitReport {
        let plus = self.triple_vanishes_on(&self.plus);
        let minus = self.triple_vanishes_on(&self.minus);
        let support = |v: Option<(Half, usize)>| {
            v.and_then(|(h, _)| self.blocks.iter().find(|(o, _)| *o != h).map(|(_, b)| b.clone()))
        };
        let (mut squares, mut quat) = (true, true);
        for (triple, block) in [(&self.plus, support(plus)), (&self.minus, support(minus))] {
            match block {
                Some(b) => {
                    let (s, q) = Self::triple_is_quaternionic(triple, &b);
                    squares &= s;
                    quat &= q;
                }
                None => {
                    squares = false;
                    quat = false;
                }
            }
        }
        SplitReport {
            plus_vanishes_on: plus.map(|p| p.0),
            minus_vanishes_on: minus.map(|p| p.0),
            plus_support_dim: plus.map(|p| p.1),
            minus_support_dim: minus.map(|p| p.1),
            restrictions_square_to_minus_identity: squares,
            quaternionic_relations: quat,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_sizes() {
        let s = build(3, Multiplicities::Single(1)).unwrap();
        assert_eq!((s.n(), s.iter().count()), (4, 3));
        let s = build(4, Multiplicities::Pair(1, 0)).unwrap();
        assert_eq!(s.n(), 4);
        let s = build(8, Multiplicities::Pair(1, 1)).unwrap();
        assert_eq!(s.n(), 16);
        // block diagonal: nothing couples the two 8-dim halves
        for (_, m) in s.iter() {
            assert!(m.triplets().iter().all(|(i, j, _)| (*i < 8) == (*j < 8)));
        }
    }

    #[test]
    fn incompatible_multiplicities_are_rejected() {
        assert!(build(4, Multiplicities::Single(1)).is_err());
        assert!(build(5, Multiplicities::Pair(1, 1)).is_err());
        assert!(build(5, Multiplicities::Single(0)).is_err());
        assert!(build(8, Multiplicities::Pair(0, 0)).is_err());
    }

    #[test]
    fn multiplicity_parsing() {
        assert_eq!("3".parse::<Multiplicities>(), Ok(Multiplicities::Single(3)));
        assert_eq!("1, 0".parse::<Multiplicities>(), Ok(Multiplicities::Pair(1, 0)));
        assert!("1,2,3".parse::<Multiplicities>().is_err());
        assert!("x".parse::<Multiplicities>().is_err());
        assert_eq!(Multiplicities::Pair(2, 1).to_string(), "2,1");
    }

    #[test]
    fn built_structures_verify() {
        for (r, m) in [
            (2, Multiplicities::Single(2)),
            (3, Multiplicities::Single(1)),
            (5, Multiplicities::Single(2)),
            (8, Multiplicities::Pair(1, 1)),
        ] {
            let report = verify(&build(r, m).unwrap());
            assert!(report.all_passed(), "r={r}: {report:?}");
        }
    }

    #[test]
    fn negating_one_block_breaks_brackets() {
        let s = build(3, Multiplicities::Single(2)).unwrap();
        let mut j: BTreeMap<Bivector, Matrix> = s.iter().map(|(b, m)| (b, m.clone())).collect();
        // K_12 ⊗ diag(-1, 1): still antisymmetric with square -I
        let flip = Matrix::from_i64_rows(&[[-1, 0], [0, 1]]).to_sparse();
        let EvenGenerators::Irreducible(g) = build_even_generators(3).unwrap() else {
            panic!()
        };
        j.insert(Bivector(1, 2), g.generator(Bivector(1, 2)).kron(&flip));
        let mutated = EvenCliffordStructure::from_parts(3, s.mult(), j).unwrap();
        let report = verify(&mutated);
        assert!(report.check(CHECK_ANTISYMMETRIC).unwrap().passed);
        assert!(report.check(CHECK_SQUARE).unwrap().passed);
        assert!(!report.check(CHECK_BRACKETS).unwrap().passed);
    }

    #[test]
    fn identity_in_place_of_j12_fails_algebraic_checks() {
        let s = build(3, Multiplicities::Single(1)).unwrap();
        let mut j: BTreeMap<Bivector, Matrix> = s.iter().map(|(b, m)| (b, m.clone())).collect();
        j.insert(Bivector(1, 2), Matrix::identity(4));
        let report = verify(&EvenCliffordStructure::from_parts(3, s.mult(), j).unwrap());
        assert!(!report.check(CHECK_ANTISYMMETRIC).unwrap().passed);
        assert!(!report.check(CHECK_SQUARE).unwrap().passed);
    }

    #[test]
    fn structure_constants_do_not_depend_on_multiplicity() {
        let one = bracket_coefficients(&build(5, Multiplicities::Single(1)).unwrap()).unwrap();
        let three = bracket_coefficients(&build(5, Multiplicities::Single(3)).unwrap()).unwrap();
        assert_eq!(one, three);
    }

    #[test]
    fn json_round_trip() {
        let s = build(4, Multiplicities::Pair(1, 1)).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back: StructureJson = serde_json::from_str(&text).unwrap();
        assert_eq!(EvenCliffordStructure::from_json(&back).unwrap(), s);
        assert!(text.starts_with("{\"r\":4,\"mult\":[1,1],\"N\":8,\"J\":[[1,2,"));
    }

    #[test]
    fn r4_split_blocks() {
        for (m1, m2) in [(1, 1), (2, 1)] {
            let s = build(4, Multiplicities::Pair(m1, m2)).unwrap();
            let report = r4_quaternionic_split(&s).unwrap().check();
            assert!(report.passed(), "{report:?}");
            let mut dims = [report.plus_support_dim.unwrap(), report.minus_support_dim.unwrap()];
            dims.sort();
            let mut expected = [4 * m1 as usize, 4 * m2 as usize];
            expected.sort();
            assert_eq!(dims, expected);
        }
    }

    #[test]
    fn r4_split_preconditions() {
        let s = build(4, Multiplicities::Pair(1, 0)).unwrap();
        assert!(r4_quaternionic_split(&s).is_err());
        let s = build(3, Multiplicities::Single(1)).unwrap();
        assert!(r4_quaternionic_split(&s).is_err());
    }
}
