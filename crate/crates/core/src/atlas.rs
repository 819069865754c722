//! Catalog of the spaces with maximal automorphism group, each cross-checked
//! against the dimension bound.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::{binom2, d_max, dimension};
use crate::error::{Error, Result};
use crate::normalizer::isotropy_dim;
use crate::structure::{CheckResult, Multiplicities};

pub fn dim_so(n: u64) -> u64 {
    binom2(n as i64)
}

pub fn dim_su(n: u64) -> u64 {
    n * n - 1
}

pub fn dim_sp(n: u64) -> u64 {
    n * (2 * n + 1)
}

pub const DIM_F4: u64 = 52;
pub const DIM_E6: u64 = 78;
pub const DIM_E7: u64 = 133;
pub const DIM_E8: u64 = 248;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Flat,
    Compact,
    Noncompact,
    /// Product of a compact and a noncompact factor.
    Mixed,
}

/// One factor of a rank-4 product, itself a rank-3 model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub name: String,
    pub family: Family,
    pub m: u32,
    #[serde(rename = "dim_M")]
    pub dim_m: u64,
    #[serde(rename = "dim_G")]
    pub dim_g: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricSpaceModel {
    pub r: u32,
    pub name: String,
    pub family: Family,
    pub mult: Multiplicities,
    #[serde(rename = "dim_M")]
    pub dim_m: u64,
    #[serde(rename = "dim_G")]
    pub dim_g: u64,
    /// Rank-4 products only.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub factors: Vec<Factor>,
    /// Set on products mixing a flat and a curved factor.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flag: Option<String>,
}

fn flat_name(r: u32, mult: Multiplicities) -> String {
    match mult {
        Multiplicities::Single(m) => format!("(Δ_{r})^{m}"),
        Multiplicities::Pair(a, b) => format!("(Δ_{r}^+)^{a} ⊕ (Δ_{r}^-)^{b}"),
    }
}

fn flat_model(r: u32, mult: Multiplicities) -> Result<SymmetricSpaceModel> {
    let n = dimension(r, mult)?;
    Ok(SymmetricSpaceModel {
        r,
        name: flat_name(r, mult),
        family: Family::Flat,
        mult,
        dim_m: n,
        dim_g: n + isotropy_dim(r, mult)?,
        factors: Vec::new(),
        flag: None,
    })
}

fn pair_of(
    r: u32,
    mult: Multiplicities,
    dim_m: u64,
    dim_g: u64,
    compact: String,
    noncompact: String,
) -> [SymmetricSpaceModel; 2] {
    let model = |name, family| SymmetricSpaceModel {
        r,
        name,
        family,
        mult,
        dim_m,
        dim_g,
        factors: Vec::new(),
        flag: None,
    };
    [
        model(compact, Family::Compact),
        model(noncompact, Family::Noncompact),
    ]
}

fn rank3_factors(m: u32) -> Result<[Factor; 3]> {
    let k = m as u64;
    let flat = flat_model(3, Multiplicities::Single(m))?;
    let curved = |name: String, family| Factor {
        name,
        family,
        m,
        dim_m: 4 * k,
        dim_g: dim_sp(k + 1),
    };
    Ok([
        Factor {
            name: flat.name,
            family: Family::Flat,
            m,
            dim_m: flat.dim_m,
            dim_g: flat.dim_g,
        },
        curved(format!("Sp({})/(Sp({k})×Sp(1))", k + 1), Family::Compact),
        curved(format!("Sp({k},1)/(Sp({k})×Sp(1))"), Family::Noncompact),
    ])
}

fn product(r: u32, mult: Multiplicities, a: &Factor, b: &Factor) -> SymmetricSpaceModel {
    let curved: Vec<Family> = [a.family, b.family]
        .into_iter()
        .filter(|f| *f != Family::Flat)
        .collect();
    let family = if curved.iter().all(|f| *f == Family::Compact) {
        Family::Compact
    } else if curved.iter().all(|f| *f == Family::Noncompact) {
        Family::Noncompact
    } else {
        Family::Mixed
    };
    let flag = (curved.len() == 1).then(|| "product of a flat and a curved factor".to_string());
    SymmetricSpaceModel {
        r,
        name: format!("{} × {}", a.name, b.name),
        family,
        mult,
        dim_m: a.dim_m + b.dim_m,
        dim_g: a.dim_g + b.dim_g,
        factors: vec![a.clone(), b.clone()],
        flag,
    }
}

/// The flat model followed by every curved model of matching rank and
/// multiplicities.
pub fn models_for(r: u32, mult: Multiplicities) -> Result<Vec<SymmetricSpaceModel>> {
    let mut out = vec![flat_model(r, mult)?];
    let single = |m: Multiplicities| match m {
        Multiplicities::Single(k) => Some(k as u64),
        Multiplicities::Pair(..) => None,
    };
    match (r, mult) {
        (3, _) => {
            let k = single(mult).unwrap();
            out.extend(pair_of(
                r,
                mult,
                4 * k,
                dim_sp(k + 1),
                format!("Sp({})/(Sp({k})×Sp(1))", k + 1),
                format!("Sp({k},1)/(Sp({k})×Sp(1))"),
            ));
        }
        (4, Multiplicities::Pair(m1, m2)) if m1 > 0 && m2 > 0 => {
            let (f1, f2) = (rank3_factors(m1)?, rank3_factors(m2)?);
            for a in &f1 {
                for b in &f2 {
                    if a.family == Family::Flat && b.family == Family::Flat {
                        continue;
                    }
                    out.push(product(r, mult, a, b));
                }
            }
        }
        (5, _) => {
            let k = single(mult).unwrap();
            out.extend(pair_of(
                r,
                mult,
                8 * k,
                dim_sp(k + 2),
                format!("Sp({})/(Sp({k})×Sp(2))", k + 2),
                format!("Sp({k},2)/(Sp({k})×Sp(2))"),
            ));
        }
        (6, _) => {
            let k = single(mult).unwrap();
            out.extend(pair_of(
                r,
                mult,
                8 * k,
                dim_su(k + 4),
                format!("SU({})/S(U({k})×U(4))", k + 4),
                format!("SU({k},4)/S(U({k})×U(4))"),
            ));
        }
        (8, Multiplicities::Pair(a, b)) if a == 0 || b == 0 => {
            let k = (a + b) as u64;
            out.extend(pair_of(
                r,
                mult,
                8 * k,
                dim_so(k + 8),
                format!("SO({})/(SO({k})×SO(8))", k + 8),
                format!("SO({k},8)/(SO({k})×SO(8))"),
            ));
        }
        (9, Multiplicities::Single(1)) => out.extend(pair_of(
            r,
            mult,
            16,
            DIM_F4,
            "F4/Spin(9)".into(),
            "F4(-20)/Spin(9)".into(),
        )),
        (10, Multiplicities::Single(1)) => out.extend(pair_of(
            r,
            mult,
            32,
            DIM_E6,
            "E6/(Spin(10)·U(1))".into(),
            "E6(-14)/(Spin(10)·U(1))".into(),
        )),
        (12, Multiplicities::Pair(1, 0) | Multiplicities::Pair(0, 1)) => out.extend(pair_of(
            r,
            mult,
            64,
            DIM_E7,
            "E7/(Spin(12)·SU(2))".into(),
            "E7(-5)/(Spin(12)·SU(2))".into(),
        )),
        (16, Multiplicities::Pair(1, 0) | Multiplicities::Pair(0, 1)) => out.extend(pair_of(
            r,
            mult,
            128,
            DIM_E8,
            "E8/Spin+(16)".into(),
            "E8(8)/Spin+(16)".into(),
        )),
        _ => {}
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// `dim_G = d_max`, `dim_M = N`, and for products additivity over factors.
pub fn cross_check(model: &SymmetricSpaceModel) -> CrossCheckReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, expected: Result<u64>, actual: u64| {
        let (passed, detail) = match expected {
            Ok(e) => (e == actual, format!("expected {e}, stored {actual}")),
            Err(err) => (false, err.to_string()),
        };
        checks.push(CheckResult {
            name: name.into(),
            passed,
            detail,
        });
    };
    push("dim_G_equals_d_max", d_max(model.r, model.mult), model.dim_g);
    push("dim_M_equals_N", dimension(model.r, model.mult), model.dim_m);
    if !model.factors.is_empty() {
        let sum: Result<u64> = model
            .factors
            .iter()
            .map(|f| d_max(3, Multiplicities::Single(f.m)))
            .sum();
        push("dim_G_additive_over_factors", sum, model.dim_g);
        for (i, f) in model.factors.iter().enumerate() {
            push(
                &format!("factor_{}_dim_G_equals_d_max", i + 1),
                d_max(3, Multiplicities::Single(f.m)),
                f.dim_g,
            );
        }
    }
    CrossCheckReport {
        name: model.name.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Every catalog entry with parameters `k`, `m1`, `m2` up to `max_k`.
pub fn catalog(max_k: u32) -> Result<Vec<SymmetricSpaceModel>> {
    if max_k == 0 {
        return Err(Error::Invalid("catalog needs max_k ≥ 1".into()));
    }
    let mut out = Vec::new();
    let curved = |r, m| -> Result<Vec<SymmetricSpaceModel>> {
        Ok(models_for(r, m)?
            .into_iter()
            .filter(|x| x.family != Family::Flat)
            .collect())
    };
    for k in 1..=max_k {
        out.extend(curved(3, Multiplicities::Single(k))?);
    }
    for m1 in 1..=max_k {
        for m2 in 1..=max_k {
            out.extend(curved(4, Multiplicities::Pair(m1, m2))?);
        }
    }
    for r in [5, 6] {
        for k in 1..=max_k {
            out.extend(curved(r, Multiplicities::Single(k))?);
        }
    }
    for k in 1..=max_k {
        out.extend(curved(8, Multiplicities::Pair(k, 0))?);
    }
    out.extend(curved(9, Multiplicities::Single(1))?);
    out.extend(curved(10, Multiplicities::Single(1))?);
    out.extend(curved(12, Multiplicities::Pair(1, 0))?);
    out.extend(curved(16, Multiplicities::Pair(1, 0))?);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub model: SymmetricSpaceModel,
    pub d_max: u64,
    pub cross_check: CrossCheckReport,
}

pub fn catalog_entries(max_k: u32) -> Result<Vec<CatalogEntry>> {
    catalog(max_k)?
        .into_iter()
        .map(|model| {
            Ok(CatalogEntry {
                d_max: d_max(model.r, model.mult)?,
                cross_check: cross_check(&model),
                model,
            })
        })
        .collect()
}

fn family_label(f: Family) -> &'static str {
    match f {
        Family::Flat => "flat",
        Family::Compact => "compact",
        Family::Noncompact => "noncompact",
        Family::Mixed => "mixed",
    }
}

/// Text table grouped by rank.
pub fn render_text(entries: &[CatalogEntry]) -> String {
    let header = ["r", "M", "family", "mult", "dim M", "dim G", "d_max", "check"];
    let rows: Vec<[String; 8]> = entries
        .iter()
        .map(|e| {
            let mut name = e.model.name.clone();
            if e.model.flag.is_some() {
                name.push_str(" *");
            }
            [
                e.model.r.to_string(),
                name,
                family_label(e.model.family).to_string(),
                e.model.mult.to_string(),
                e.model.dim_m.to_string(),
                e.model.dim_g.to_string(),
                e.d_max.to_string(),
                if e.cross_check.passed { "ok" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let width = |i: usize| {
        rows.iter()
            .map(|r| r[i].chars().count())
            .chain([header[i].len()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..8).map(width).collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("| {} |", parts.join(" | "))
    };
    let rule = format!(
        "+{}+",
        widths.iter().map(|w| "-".repeat(w + 2)).collect::<Vec<_>>().join("+")
    );
    let mut out = String::new();
    let _ = writeln!(out, "{rule}");
    let _ = writeln!(out, "{}", line(&header.map(String::from)));
    let _ = writeln!(out, "{rule}");
    let mut last_r = None;
    for row in &rows {
        if last_r.is_some() && last_r != Some(row[0].clone()) {
            let _ = writeln!(out, "{rule}");
        }
        last_r = Some(row[0].clone());
        let _ = writeln!(out, "{}", line(row));
    }
    let _ = writeln!(out, "{rule}");
    if entries.iter().any(|e| e.model.flag.is_some()) {
        let _ = writeln!(out, "* product of a flat and a curved factor");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Multiplicities::{Pair, Single};

    #[test]
    fn exceptional_models() {
        let ms = models_for(9, Single(1)).unwrap();
        assert_eq!(ms.len(), 3);
        assert_eq!(ms[0].family, Family::Flat);
        assert_eq!((ms[1].name.as_str(), ms[1].dim_g, ms[1].dim_m), ("F4/Spin(9)", 52, 16));
        assert_eq!(ms[2].family, Family::Noncompact);
        let ms = models_for(16, Pair(1, 0)).unwrap();
        assert_eq!((ms[1].name.as_str(), ms[1].dim_g, ms[1].dim_m), ("E8/Spin+(16)", 248, 128));
        assert_eq!(models_for(11, Single(1)).unwrap().len(), 1);
        assert_eq!(models_for(9, Single(2)).unwrap().len(), 1);
    }

    #[test]
    fn classical_examples() {
        let ms = models_for(3, Single(3)).unwrap();
        assert_eq!(ms[1].dim_g, 36);
        assert!(cross_check(&ms[1]).passed);
        let ms = models_for(12, Pair(1, 0)).unwrap();
        assert_eq!(ms[1].dim_g, 133);
        assert!(cross_check(&ms[1]).passed);
        assert_eq!(models_for(8, Pair(0, 2)).unwrap()[1].name, "SO(10)/(SO(2)×SO(8))");
        assert_eq!(models_for(8, Pair(1, 1)).unwrap().len(), 1);
    }

    #[test]
    fn rank4_products() {
        let ms = models_for(4, Pair(2, 1)).unwrap();
        assert_eq!(ms.len(), 9);
        let flagged = ms.iter().filter(|m| m.flag.is_some()).count();
        assert_eq!(flagged, 4);
        assert_eq!(ms.iter().filter(|m| m.family == Family::Mixed).count(), 2);
        for m in &ms {
            let rep = cross_check(m);
            assert!(rep.passed, "{rep:?}");
        }
        assert_eq!(models_for(4, Pair(1, 0)).unwrap().len(), 1);
    }

    #[test]
    fn catalog_passes_and_pairs_are_dual() {
        let entries = catalog_entries(4).unwrap();
        for e in &entries {
            assert!(e.cross_check.passed, "{:?}", e.cross_check);
        }
        for e in entries.iter().filter(|e| e.model.family == Family::Compact) {
            let dual = entries.iter().find(|o| {
                o.model.family == Family::Noncompact
                    && o.model.r == e.model.r
                    && o.model.mult == e.model.mult
                    && o.model.factors.len() == e.model.factors.len()
                    && o.model.flag == e.model.flag
            });
            let dual = dual.expect("noncompact dual");
            assert_eq!((dual.model.dim_g, dual.model.dim_m), (e.model.dim_g, e.model.dim_m));
        }
    }

    #[test]
    fn cross_check_rejects_wrong_constant() {
        let mut m = models_for(9, Single(1)).unwrap().remove(1);
        m.dim_g = 51;
        assert!(!cross_check(&m).passed);
    }

    #[test]
    fn parametric_identities() {
        for k in 1..=50u64 {
            let ku = k as u32;
            assert_eq!(dim_sp(k + 1), d_max(3, Single(ku)).unwrap());
            assert_eq!(dim_sp(k + 1), 2 * k * k + 5 * k + 3);
            assert_eq!(dim_sp(k + 2), d_max(5, Single(ku)).unwrap());
            assert_eq!(dim_su(k + 4), d_max(6, Single(ku)).unwrap());
            assert_eq!(dim_so(k + 8), d_max(8, Pair(ku, 0)).unwrap());
            assert_eq!(dim_so(k + 8), d_max(8, Pair(0, ku)).unwrap());
        }
    }

    #[test]
    fn text_table_is_grouped() {
        let text = render_text(&catalog_entries(1).unwrap());
        assert!(text.contains("F4/Spin(9)"));
        assert!(text.contains("* product of a flat and a curved factor"));
        assert!(!text.contains("FAIL"));
    }
}
