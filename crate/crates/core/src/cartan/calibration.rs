//! Scalar constants for the closed-form expressions of the inverse Euclidean
//! Cartan matrix and the Weyl vector.
//!
//! Each expression is evaluated with its conventional prefactor ("printed"
//! value) and compared with the direct inverse. The ratio is a constant of
//! the form `c · |G|^e · f(d)`; fitting it on cyclic groups gives the table
//! below, which is then asserted on every other group.
//!
//! | formula                     | c  | e | f(d)          |
//! |-----------------------------|----|---|---------------|
//! | inverse-characters          | 1  | 1 | 1             |
//! | inverse-residue-series      | -1 | 1 | 1             |
//! | inverse-residue-numerators  | -1 | 1 | 1             |
//! | inverse-eta                 | 2  | 1 | (-1)^d σ      |
//! | inverse-sylvester           | 1  | 0 | 1             |
//! | inverse-derivative          | 1  | 0 | (-1)^d / d!   |
//! | weyl-eta                    | 2  | 1 | (-1)^d σ      |
//! | weyl-derivative             | 1  | 0 | (-1)^d / d!   |
//! | weyl-residue                | -1 | 1 | 1             |
//! | weyl-characters             | 1  | 1 | 1             |

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cg::{series_matrix, Kind, Sign};
use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};
use crate::groups::{make_cyclic_su2, GroupModel};
use crate::linalg::Matrix;
use crate::qseries::{QPoly, RatQ};
use crate::report::{IdentityCheck, Report};

use super::cm::{cm_data, CMData};
use super::{cartan_inverse, corner_combo, eta_sign, k_matrix, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Formula {
    InverseCharacters,
    InverseResidueSeries,
    InverseResidueNumerators,
    InverseEta,
    InverseSylvester,
    InverseDerivative,
    WeylEta,
    WeylDerivative,
    WeylResidue,
    WeylCharacters,
}

impl Formula {
    pub const ALL: [Formula; 10] = [
        Formula::InverseCharacters,
        Formula::InverseResidueSeries,
        Formula::InverseResidueNumerators,
        Formula::InverseEta,
        Formula::InverseSylvester,
        Formula::InverseDerivative,
        Formula::WeylEta,
        Formula::WeylDerivative,
        Formula::WeylResidue,
        Formula::WeylCharacters,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Formula::InverseCharacters => "inverse-characters",
            Formula::InverseResidueSeries => "inverse-residue-series",
            Formula::InverseResidueNumerators => "inverse-residue-numerators",
            Formula::InverseEta => "inverse-eta",
            Formula::InverseSylvester => "inverse-sylvester",
            Formula::InverseDerivative => "inverse-derivative",
            Formula::WeylEta => "weyl-eta",
            Formula::WeylDerivative => "weyl-derivative",
            Formula::WeylResidue => "weyl-residue",
            Formula::WeylCharacters => "weyl-characters",
        }
    }

    fn is_weyl(&self) -> bool {
        matches!(
            self,
            Formula::WeylEta | Formula::WeylDerivative | Formula::WeylResidue | Formula::WeylCharacters
        )
    }

    fn needs_cm(&self) -> bool {
        matches!(
            self,
            Formula::InverseResidueNumerators | Formula::InverseDerivative | Formula::WeylDerivative
        )
    }
}

/// Dimension-dependent part of a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DFactor {
    One,
    SignSigma,
    SignOverFactorial,
}

impl DFactor {
    pub fn value(&self, d: usize) -> Rational {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        match self {
            DFactor::One => Rational::one(),
            DFactor::SignSigma => Rational::from_integer(BigInt::from(sign * eta_sign(d))),
            DFactor::SignOverFactorial => {
                let f: BigInt = (1..=d).map(BigInt::from).product();
                Rational::new(BigInt::from(sign), f)
            }
        }
    }

    fn label(&self) -> &'static str {
        match self {
            DFactor::One => "",
            DFactor::SignSigma => " (-1)^d sigma",
            DFactor::SignOverFactorial => " (-1)^d/d!",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalibratedConstant {
    pub formula: Formula,
    pub coeff: Rational,
    pub g_power: i32,
    pub d_factor: DFactor,
}

impl CalibratedConstant {
    const fn frozen(formula: Formula, coeff: i64, g_power: i32, d_factor: DFactor) -> (Formula, i64, i32, DFactor) {
        (formula, coeff, g_power, d_factor)
    }

    pub fn value(&self, order: u64, d: usize) -> Rational {
        let g = Rational::from_integer(BigInt::from(order));
        let mut v = self.coeff.clone() * self.d_factor.value(d);
        for _ in 0..self.g_power.unsigned_abs() {
            v = if self.g_power > 0 { v * g.clone() } else { v / g.clone() };
        }
        v
    }
}

impl fmt::Display for CalibratedConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.g_power {
            0 => String::new(),
            1 => " |G|".to_string(),
            e => format!(" |G|^{e}"),
        };
        write!(f, "{}: {}{}{}", self.formula.name(), self.coeff, g, self.d_factor.label())
    }
}

/// The frozen constants, one per formula.
pub const FROZEN: [(Formula, i64, i32, DFactor); 10] = [
    CalibratedConstant::frozen(Formula::InverseCharacters, 1, 1, DFactor::One),
    CalibratedConstant::frozen(Formula::InverseResidueSeries, -1, 1, DFactor::One),
    CalibratedConstant::frozen(Formula::InverseResidueNumerators, -1, 1, DFactor::One),
    CalibratedConstant::frozen(Formula::InverseEta, 2, 1, DFactor::SignSigma),
    CalibratedConstant::frozen(Formula::InverseSylvester, 1, 0, DFactor::One),
    CalibratedConstant::frozen(Formula::InverseDerivative, 1, 0, DFactor::SignOverFactorial),
    CalibratedConstant::frozen(Formula::WeylEta, 2, 1, DFactor::SignSigma),
    CalibratedConstant::frozen(Formula::WeylDerivative, 1, 0, DFactor::SignOverFactorial),
    CalibratedConstant::frozen(Formula::WeylResidue, -1, 1, DFactor::One),
    CalibratedConstant::frozen(Formula::WeylCharacters, 1, 1, DFactor::One),
];

pub fn frozen_constant(f: Formula) -> CalibratedConstant {
    let (formula, c, e, d) = FROZEN.iter().copied().find(|x| x.0 == f).expect("every formula is frozen");
    CalibratedConstant {
        formula,
        coeff: Rational::from_integer(BigInt::from(c)),
        g_power: e,
        d_factor: d,
    }
}

fn ratio(n: i64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn row_sums(m: &Matrix<Cyclo>) -> Vec<Cyclo> {
    (0..m.rows()).map(|i| m.row(i).iter().cloned().sum()).collect()
}

/// The value the formula must reproduce: inverse entries or the Weyl vector.
fn target(g: &GroupModel, f: Formula) -> Result<Vec<Cyclo>> {
    let inv = cartan_inverse(g, Method::Direct)?;
    Ok(if f.is_weyl() {
        row_sums(&inv).iter().map(|x| x * &Cyclo::from_int(2)).collect()
    } else {
        inv.entries().to_vec()
    })
}

/// Per-entry quantities shared by several formulas, for the Euclidean block.
fn per_entry<T: Send>(n: usize, f: impl Fn(usize, usize) -> Result<T> + Sync) -> Result<Matrix<T>>
where
    T: Clone,
{
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let vals = cells
        .par_iter()
        .map(|&(i, j)| f(i + 1, j + 1))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(vals.chunks(n.max(1)).map(<[T]>::to_vec).collect())
}

/// d_i d_j-scaled corner combination of the S-series, its residue after
/// division by (1 - q).
fn residue_series(g: &GroupModel) -> Result<Matrix<Cyclo>> {
    let s = series_matrix(g, Kind::S, Sign::Plus)?.matrix;
    let dims = g.dims();
    let den = &s.den * &QPoly::one_minus_q_pow(1);
    per_entry(g.num_classes() - 1, |i, j| {
        let num = corner_combo(&dims, i, j, |a, b| s.num[(a, b)].clone())
            .iter()
            .fold(QPoly::zero(), |acc, (w, p)| &acc + &p.scale(w));
        RatQ::new(num, den.clone())?.laurent_residue_at_one()
    })
}

fn d_combo(g: &GroupModel, cm: &CMData, i: usize, j: usize) -> QPoly {
    corner_combo(&g.dims(), i, j, |a, b| cm.dr[(a, b)].clone())
        .iter()
        .fold(QPoly::zero(), |acc, (w, p)| &acc + &p.scale(w))
}

fn residue_numerators(g: &GroupModel, cm: &CMData) -> Result<Matrix<Cyclo>> {
    let den = &cm.denominator() * &QPoly::one_minus_q_pow(1);
    per_entry(g.num_classes() - 1, |i, j| {
        RatQ::new(d_combo(g, cm, i, j), den.clone())?.laurent_residue_at_one()
    })
}

fn derivative_at_one(g: &GroupModel, cm: &CMData) -> Result<Matrix<Cyclo>> {
    let d = g.dim_defining;
    per_entry(g.num_classes() - 1, |i, j| {
        let mut p = d_combo(g, cm, i, j);
        for _ in 0..d {
            p = p.derivative();
        }
        Ok(p.eval_at_one())
    })
}

/// Each formula evaluated with its conventional prefactor.
pub fn printed_value(g: &GroupModel, f: Formula, cm: Option<&CMData>) -> Result<Vec<Cyclo>> {
    g.require_free()?;
    let order = g.order;
    let d = g.dim_defining;
    let sigma_sign = (if d % 2 == 0 { 1 } else { -1 }) * eta_sign(d);
    let owned;
    let cm = if f.needs_cm() {
        match cm {
            Some(c) => Some(c),
            None => {
                owned = cm_data(g, None)?;
                Some(&owned)
            }
        }
    } else {
        None
    };
    let scale = |v: Vec<Cyclo>, r: Rational| v.iter().map(|x| x.scale(&r)).collect::<Vec<_>>();
    let k_combo = || -> Result<Matrix<Cyclo>> {
        let k = k_matrix(g)?;
        let dims = g.dims();
        per_entry(g.num_classes() - 1, |i, j| {
            Ok(corner_combo(&dims, i, j, |a, b| k[(a, b)].clone())
                .iter()
                .map(|(w, v)| w * v)
                .sum())
        })
    };
    // bare Σ_k |C_k| (χ_i - d_i)(conj χ_j - d_j) / det(E - R(g_k))
    let char_sum = || -> Result<Matrix<Cyclo>> {
        Ok(cartan_inverse(g, Method::Characters)?.scale(&Cyclo::from_int(order as i64)))
    };
    Ok(match f {
        Formula::InverseCharacters => scale(char_sum()?.entries().to_vec(), ratio(1, order * order)),
        Formula::InverseResidueSeries => scale(residue_series(g)?.entries().to_vec(), ratio(1, order)),
        Formula::InverseResidueNumerators => {
            scale(residue_numerators(g, cm.expect("cm"))?.entries().to_vec(), ratio(1, order))
        }
        Formula::InverseEta => scale(k_combo()?.entries().to_vec(), ratio(sigma_sign, 2 * order)),
        Formula::InverseSylvester => cartan_inverse(g, Method::SylvesterLimit)?.entries().to_vec(),
        Formula::InverseDerivative => {
            let cm = cm.expect("cm");
            scale(derivative_at_one(g, cm)?.entries().to_vec(), ratio(1, cm.degree_product()))
        }
        Formula::WeylEta => scale(row_sums(&k_combo()?), ratio(sigma_sign, order)),
        Formula::WeylDerivative => {
            let cm = cm.expect("cm");
            scale(row_sums(&derivative_at_one(g, cm)?), ratio(2, cm.degree_product()))
        }
        Formula::WeylResidue => scale(row_sums(&residue_series(g)?), ratio(2, order)),
        Formula::WeylCharacters => scale(row_sums(&char_sum()?), ratio(2, order * order)),
    })
}

/// The single scalar r with target = r · printed, if there is one.
fn uniform_ratio(target: &[Cyclo], printed: &[Cyclo]) -> Result<Rational> {
    let mut r: Option<Cyclo> = None;
    for (t, p) in target.iter().zip(printed) {
        if p.is_zero() {
            if !t.is_zero() {
                return Err(Error::Validation("printed value vanishes where the target does not".into()));
            }
            continue;
        }
        let x = t / p;
        match &r {
            None => r = Some(x),
            Some(y) if *y != x => return Err(Error::Validation("ratio is not constant across entries".into())),
            _ => {}
        }
    }
    r.and_then(|c| c.to_rational())
        .ok_or_else(|| Error::Validation("no rational ratio".into()))
}

/// Re-derives each constant from cyclic groups of order 2..=6 by fitting
/// `ratio / f(d) = c · m^e`.
pub fn calibrate_on_cyclic() -> Result<Vec<CalibratedConstant>> {
    let groups = (2..=6u64).map(make_cyclic_su2).collect::<Result<Vec<_>>>()?;
    let cms = groups.iter().map(|g| cm_data(g, None)).collect::<Result<Vec<_>>>()?;
    Formula::ALL
        .par_iter()
        .map(|&f| {
            let frozen = frozen_constant(f);
            let ratios = groups
                .iter()
                .zip(&cms)
                .map(|(g, cm)| {
                    let r = uniform_ratio(&target(g, f)?, &printed_value(g, f, Some(cm))?)?;
                    Ok(r / frozen.d_factor.value(g.dim_defining))
                })
                .collect::<Result<Vec<_>>>()?;
            for e in -4i32..=4 {
                let scaled: Vec<Rational> = groups
                    .iter()
                    .zip(&ratios)
                    .map(|(g, r)| {
                        let m = Rational::from_integer(BigInt::from(g.order));
                        let mut x = r.clone();
                        for _ in 0..e.unsigned_abs() {
                            x = if e > 0 { x / m.clone() } else { x * m.clone() };
                        }
                        x
                    })
                    .collect();
                if scaled.iter().all(|x| *x == scaled[0]) && !scaled[0].is_zero() {
                    return Ok(CalibratedConstant {
                        formula: f,
                        coeff: scaled[0].clone(),
                        g_power: e,
                        d_factor: frozen.d_factor,
                    });
                }
            }
            Err(Error::Validation(format!("{}: no constant of the form c |G|^e", f.name())))
        })
        .collect()
}

/// Checks target = frozen constant × printed value for every formula on `g`.
pub fn calibration_report(g: &GroupModel) -> Result<Report> {
    let cm = cm_data(g, None)?;
    let checks = Formula::ALL
        .par_iter()
        .map(|&f| -> Result<IdentityCheck> {
            let c = frozen_constant(f).value(g.order, g.dim_defining);
            let printed = printed_value(g, f, Some(&cm))?;
            let want = target(g, f)?;
            let bad = want
                .iter()
                .zip(&printed)
                .position(|(t, p)| *t != p.scale(&c));
            Ok(IdentityCheck::from_witness(format!("{} constant", f.name()), bad.map(|k| vec![k])))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report { checks })
}

/// Frozen constants whose cyclic fit disagrees with the table.
pub fn calibration_drift(fitted: &[CalibratedConstant]) -> Vec<Formula> {
    fitted
        .iter()
        .filter(|c| frozen_constant(c.formula) != **c)
        .map(|c| c.formula)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_binary_dihedral, make_binary_tetrahedral};

    #[test]
    fn cyclic_fit_matches_table() {
        let fitted = calibrate_on_cyclic().unwrap();
        assert!(calibration_drift(&fitted).is_empty(), "{:?}", fitted.iter().map(ToString::to_string).collect::<Vec<_>>());
    }

    #[test]
    fn constants_hold_elsewhere() {
        for g in [make_binary_dihedral(2).unwrap(), make_binary_tetrahedral().unwrap()] {
            let r = calibration_report(&g).unwrap();
            assert!(r.pass(), "{}: {r}", g.name);
        }
    }

    #[test]
    fn display() {
        assert_eq!(frozen_constant(Formula::InverseEta).to_string(), "inverse-eta: 2 |G| (-1)^d sigma");
        assert_eq!(frozen_constant(Formula::InverseDerivative).value(8, 2), ratio(1, 2));
    }
}
