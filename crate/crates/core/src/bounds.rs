//! Dimension bounds for automorphism groups, the gap constraints, and the
//! arithmetic of the gap inequality.

use serde::{Deserialize, Serialize};

use crate::clifford::irrep_info;
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::structure::Multiplicities;

/// Largest rank accepted by the bound formulas.
pub const BOUNDS_MAX_RANK: u32 = 64;

/// `n(n−1)/2`, zero for `n ≤ 1` (negative arguments included).
pub fn binom2(n: i64) -> u64 {
    if n <= 1 {
        0
    } else {
        let n = n as u128;
        (n * (n - 1) / 2) as u64
    }
}

fn binom2_wide(n: u128) -> u128 {
    if n <= 1 {
        0
    } else {
        n * (n - 1) / 2
    }
}

fn narrow(v: u128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Invalid(format!("dimension {v} overflows u64")))
}

/// Rank class used by the tables: which row of the mod-8 periodicity applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Zero,
    OneSeven,
    TwoSix,
    ThreeFive,
    Four,
}

fn class(r: u32) -> Class {
    match r % 8 {
        0 => Class::Zero,
        1 | 7 => Class::OneSeven,
        2 | 6 => Class::TwoSix,
        3 | 5 => Class::ThreeFive,
        4 => Class::Four,
        _ => unreachable!(),
    }
}

/// Validated inputs: rank in range, multiplicities of the right shape.
struct Input {
    r: u32,
    d_r: u128,
    pair: (u128, u128),
    class: Class,
}

impl Input {
    fn new(r: u32, mult: Multiplicities) -> Result<Self> {
        if !(3..=BOUNDS_MAX_RANK).contains(&r) {
            return Err(Error::RankOutOfRange {
                rank: r,
                min: 3,
                max: BOUNDS_MAX_RANK,
            });
        }
        mult.validate(r)?;
        let pair = match mult {
            Multiplicities::Single(m) => (m as u128, 0),
            Multiplicities::Pair(a, b) => (a as u128, b as u128),
        };
        Ok(Input {
            r,
            d_r: irrep_info(r)?.d_r as u128,
            pair,
            class: class(r),
        })
    }

    fn m(&self) -> u128 {
        self.pair.0
    }

    fn spin(&self) -> u128 {
        binom2_wide(self.r as u128)
    }

    fn n(&self) -> u128 {
        self.d_r * (self.pair.0 + self.pair.1)
    }

    fn d_c(&self) -> u128 {
        let (m1, m2) = self.pair;
        match self.class {
            Class::Zero => binom2_wide(m1) + binom2_wide(m2),
            Class::OneSeven => binom2_wide(m1),
            Class::TwoSix => m1 * m1,
            Class::ThreeFive => binom2_wide(2 * m1 + 1),
            Class::Four => binom2_wide(2 * m1 + 1) + binom2_wide(2 * m2 + 1),
        }
    }
}

/// `N = d_r · (total multiplicity)`.
pub fn dimension(r: u32, mult: Multiplicities) -> Result<u64> {
    narrow(Input::new(r, mult)?.n())
}

/// Upper bound on the dimension of the automorphism group.
pub fn d_max(r: u32, mult: Multiplicities) -> Result<u64> {
    let i = Input::new(r, mult)?;
    narrow(i.d_c() + i.spin() + i.n())
}

/// `d_max − C(r,2)`: below this every non-maximal automorphism group must lie
/// when the gap constraints hold.
pub fn gap_threshold(r: u32, mult: Multiplicities) -> Result<u64> {
    let i = Input::new(r, mult)?;
    narrow(i.d_c() + i.n())
}

/// Multiplicity constraints under which the gap statement applies. Strict
/// inequalities evaluated exactly; the two-sided conditions reduce to a bound
/// on `min(m1, m2)`.
pub fn constraints_ok(r: u32, mult: Multiplicities) -> Result<bool> {
    let i = Input::new(r, mult)?;
    let c = rat(binom2(r as i64) as i64);
    let q = |v: u128| rat(v as i64);
    let lo = q(i.pair.0.min(i.pair.1));
    let even = |v: u128| v % 2 == 0;
    Ok(match i.class {
        Class::Zero => lo > c + rat(1) && even(i.pair.0) && even(i.pair.1),
        Class::OneSeven => q(i.m()) > c + rat(1) && even(i.m()),
        Class::TwoSix => q(i.m()) > c / rat(2) + Rational::new(1.into(), 2.into()) && even(i.m()),
        Class::ThreeFive => q(i.m()) > c / rat(4) + rat(1),
        Class::Four => lo > c / rat(4) + rat(1),
    })
}

/// Dimension of the centralizer of the spin image in so(N).
pub fn d_c(r: u32, mult: Multiplicities) -> Result<u64> {
    narrow(Input::new(r, mult)?.d_c())
}

/// Largest dimension of a proper maximal subalgebra of the centralizer.
/// Undefined when the centralizer is u(m) (`r ≡ ±2 mod 8`).
pub fn d_m(r: u32, mult: Multiplicities) -> Result<u64> {
    let i = Input::new(r, mult)?;
    let (m1, m2) = (i.pair.0 as i64, i.pair.1 as i64);
    let b = |n: i64| binom2(n) as u128;
    let v = match i.class {
        Class::Zero => (b(m1 - 1) + b(m2)).max(b(m1) + b(m2 - 1)),
        Class::OneSeven => b(m1 - 1),
        Class::TwoSix => {
            return Err(Error::UndefinedMaximalSubalgebra {
                rank: r,
                class: r % 8,
            })
        }
        Class::ThreeFive => b(2 * m1 - 1) + 3,
        Class::Four => (b(2 * m1 - 1) + 3 + b(2 * m2 + 1)).max(b(2 * m1 + 1) + b(2 * m2 - 1) + 3),
    };
    narrow(v)
}

/// `d_C > d_M + C(r,2)`.
pub fn gap_inequality_holds(r: u32, mult: Multiplicities) -> Result<bool> {
    let dm = d_m(r, mult)?;
    Ok(d_c(r, mult)? as u128 > dm as u128 + binom2(r as i64) as u128)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub r: u32,
    pub mult: Multiplicities,
    #[serde(rename = "N")]
    pub n: u64,
    pub d_max: u64,
    #[serde(rename = "d_C")]
    pub d_c: u64,
    #[serde(rename = "d_M")]
    pub d_m: Option<u64>,
    #[serde(rename = "d_M_reason")]
    pub d_m_reason: Option<String>,
    pub gap_threshold: u64,
    pub constraints_ok: bool,
    pub gap_inequality_ok: Option<bool>,
}

impl BoundsReport {
    pub fn new(r: u32, mult: Multiplicities) -> Result<Self> {
        let (d_m, d_m_reason) = match d_m(r, mult) {
            Ok(v) => (Some(v), None),
            Err(e @ Error::UndefinedMaximalSubalgebra { .. }) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        Ok(BoundsReport {
            r,
            mult,
            n: dimension(r, mult)?,
            d_max: d_max(r, mult)?,
            d_c: d_c(r, mult)?,
            d_m,
            d_m_reason,
            gap_threshold: gap_threshold(r, mult)?,
            constraints_ok: constraints_ok(r, mult)?,
            gap_inequality_ok: d_m.map(|_| gap_inequality_holds(r, mult)).transpose()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Multiplicities::{Pair, Single};

    #[test]
    fn binomials() {
        assert_eq!([binom2(-3), binom2(0), binom2(1), binom2(2), binom2(5)], [0, 0, 0, 1, 10]);
    }

    #[test]
    fn d_max_values() {
        for m in 1..=20u32 {
            let m64 = m as u64;
            assert_eq!(d_max(3, Single(m)).unwrap(), 2 * m64 * m64 + 5 * m64 + 3);
        }
        assert_eq!(d_max(9, Single(1)).unwrap(), 52);
        assert_eq!(d_max(10, Single(1)).unwrap(), 78);
        assert_eq!(d_max(12, Pair(1, 0)).unwrap(), 133);
        assert_eq!(d_max(16, Pair(1, 0)).unwrap(), 248);
    }

    #[test]
    fn thresholds() {
        assert_eq!(gap_threshold(3, Single(1)).unwrap(), 7);
        assert_eq!(gap_threshold(9, Single(1)).unwrap(), 16);
    }

    #[test]
    fn constraint_boundaries() {
        assert!(constraints_ok(3, Single(2)).unwrap());
        assert!(!constraints_ok(3, Single(1)).unwrap());
        assert!(!constraints_ok(7, Single(22)).unwrap());
        assert!(!constraints_ok(7, Single(23)).unwrap());
        assert!(constraints_ok(7, Single(24)).unwrap());
        // r = 6: 2m > 15 + 1
        assert!(!constraints_ok(6, Single(8)).unwrap());
        assert!(constraints_ok(6, Single(10)).unwrap());
        assert!(!constraints_ok(6, Single(9)).unwrap());
        // r = 5: 4m > 10 + 4
        assert!(!constraints_ok(5, Single(3)).unwrap());
        assert!(constraints_ok(5, Single(4)).unwrap());
        // r = 4: min(m1, m2) > 6/4 + 1
        assert!(constraints_ok(4, Pair(3, 5)).unwrap());
        assert!(!constraints_ok(4, Pair(2, 5)).unwrap());
        // r = 8: min > 29 and both even
        assert!(constraints_ok(8, Pair(30, 32)).unwrap());
        assert!(!constraints_ok(8, Pair(30, 31)).unwrap());
        assert!(!constraints_ok(8, Pair(28, 40)).unwrap());
    }

    #[test]
    fn maximal_subalgebra_values() {
        assert_eq!((d_c(3, Single(2)).unwrap(), d_m(3, Single(2)).unwrap()), (10, 6));
        assert_eq!((d_c(7, Single(24)).unwrap(), d_m(7, Single(24)).unwrap()), (276, 253));
        assert_eq!(
            d_m(6, Single(4)),
            Err(Error::UndefinedMaximalSubalgebra { rank: 6, class: 6 })
        );
        assert!(gap_inequality_holds(3, Single(2)).unwrap());
        assert!(!gap_inequality_holds(3, Single(1)).unwrap());
        assert!(gap_inequality_holds(7, Single(24)).unwrap());
        assert!(gap_inequality_holds(10, Single(4)).is_err());
    }

    #[test]
    fn rank_and_shape_errors() {
        assert!(d_max(2, Single(1)).is_err());
        assert!(d_max(4, Single(1)).is_err());
        assert!(d_max(5, Pair(1, 1)).is_err());
    }

    #[test]
    fn report_serializes_undefined_d_m_as_null() {
        let rep = BoundsReport::new(6, Single(4)).unwrap();
        let js = serde_json::to_value(&rep).unwrap();
        assert!(js["d_M"].is_null());
        assert!(js["d_M_reason"].as_str().unwrap().contains("undefined"));
        assert!(js["gap_inequality_ok"].is_null());
        let text = serde_json::to_string(&rep).unwrap();
        let back: BoundsReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    fn mult_strategy(max: u32) -> impl Strategy<Value = (u32, Multiplicities)> {
        (3u32..=17, 0..=max, 0..=max).prop_filter_map("empty structure", move |(r, a, b)| {
            let m = if r % 4 == 0 { Pair(a, b) } else { Single(a) };
            m.validate(r).ok().map(|_| (r, m))
        })
    }

    proptest! {
        #[test]
        fn constraints_imply_gap((r, m) in mult_strategy(200)) {
            if let Ok(gap) = gap_inequality_holds(r, m) {
                if constraints_ok(r, m).unwrap() {
                    prop_assert!(gap);
                }
            }
        }

        #[test]
        fn d_max_decomposes((r, m) in mult_strategy(50)) {
            let n = dimension(r, m).unwrap();
            prop_assert_eq!(d_max(r, m).unwrap(), n + d_c(r, m).unwrap() + binom2(r as i64));
            prop_assert!(gap_threshold(r, m).unwrap() < d_max(r, m).unwrap());
        }

        #[test]
        fn gap_margin_is_linear((r, m) in mult_strategy(200)) {
            if let Ok(dm) = d_m(r, m) {
                let margin = d_c(r, m).unwrap() as i64 - dm as i64;
                let (a, b) = match m { Single(a) => (a as i64, a as i64), Pair(a, b) => (a as i64, b as i64) };
                let expected = match r % 8 {
                    1 | 7 => a - 1,
                    3 | 5 => 4 * a - 4,
                    0 => if a == 0 || b == 0 { margin } else { (a - 1).min(b - 1) },
                    4 => if a == 0 || b == 0 { margin } else { (4 * a - 4).min(4 * b - 4) },
                    _ => unreachable!(),
                };
                prop_assert_eq!(margin, expected);
            }
        }
    }
}
