//! Cohen-Macaulay numerators D[R], the degree search, and the identities
//! relating D[R] to the exterior series.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cg::{cg_matrix, series_matrix, FracMatrix, Kind, Sign};
use crate::error::{Error, Result};
use crate::exact::{cyclotomic_poly, Cyclo};
use crate::groups::{Family, GroupModel};
use crate::linalg::Matrix;
use crate::qseries::{QPoly, RatQ};
use crate::report::{first_failure, IdentityCheck, Report};

use super::{cartan_inverse, Method};

#[derive(Clone, Debug)]
pub struct CMData {
    pub hsop_degrees: Vec<u64>,
    /// D[R]_j^i at row i, column j.
    pub dr: Matrix<QPoly>,
    /// Sorted exponents of D[R]_j^0 for each j.
    pub exponents: Vec<Vec<usize>>,
    /// μ_j = D[R]_j^0(1).
    pub multiplicities: Vec<u64>,
    pub checks: Report,
}

impl CMData {
    /// Π n_k, which equals μ_0 |G|.
    pub fn degree_product(&self) -> u64 {
        self.hsop_degrees.iter().product()
    }

    /// (1 - q)^d D(R) = Π (1 - q^{n_k}).
    pub fn denominator(&self) -> QPoly {
        hsop_product(&self.hsop_degrees)
    }
}

fn hsop_product(degrees: &[u64]) -> QPoly {
    degrees
        .iter()
        .fold(QPoly::one(), |acc, &n| &acc * &QPoly::one_minus_q_pow(n as usize))
}

/// Degrees of primary invariants known for the family, or found by search.
pub fn default_hsop_degrees(g: &GroupModel) -> Result<Vec<u64>> {
    match g.family {
        Family::Cyclic(m) => Ok(vec![2, m]),
        Family::Symmetric(d) => Ok((1..=d as u64).collect()),
        _ if g.dim_defining == 2 => hsop_search(g),
        _ => Err(Error::InvalidArgument(format!(
            "{}: no default primary-invariant degrees; pass them explicitly",
            g.name
        ))),
    }
}

/// D[R]_j^0 = M[R_S(q)]_j^0 · Π(1 - q^{n_k}) for every j, if all are polynomials.
fn first_row(s: &FracMatrix, prod: &QPoly) -> Option<Vec<QPoly>> {
    (0..s.cols())
        .into_par_iter()
        .map(|j| (&s.num[(0, j)] * prod).exact_div(&s.den))
        .collect()
}

fn degree_check(g: &GroupModel, row: &[QPoly], product: u64) -> Option<String> {
    let dims = g.dims();
    for (j, p) in row.iter().enumerate() {
        if !p.has_nonneg_int_coeffs() {
            return Some(format!("D[R]_{j}^0 has a coefficient that is not a nonnegative integer"));
        }
        let mu = p.eval_at_one().to_integer().and_then(|x| x.to_u64()).unwrap_or(0);
        if mu * g.order != dims[j] * product {
            return Some(format!("mu_{j} |G| = {} but d_{j} n_1...n_d = {}", mu * g.order, dims[j] * product));
        }
    }
    None
}

pub fn cm_data(g: &GroupModel, hsop_degrees: Option<&[u64]>) -> Result<CMData> {
    let degrees = match hsop_degrees {
        Some(d) => d.to_vec(),
        None => default_hsop_degrees(g)?,
    };
    if degrees.len() != g.dim_defining || degrees.contains(&0) {
        return Err(Error::CohenMacaulay(format!(
            "need {} positive degrees, got {degrees:?}",
            g.dim_defining
        )));
    }
    let s = series_matrix(g, Kind::S, Sign::Plus)?.matrix;
    let prod = hsop_product(&degrees);
    let row = first_row(&s, &prod).ok_or_else(|| {
        Error::CohenMacaulay(format!("degrees {degrees:?} do not clear the denominators of M[R_S(q)]"))
    })?;
    let product: u64 = degrees.iter().product();
    if let Some(msg) = degree_check(g, &row, product) {
        return Err(Error::CohenMacaulay(msg));
    }
    let n = g.num_classes();
    let cgs = (0..n)
        .into_par_iter()
        .map(|i| cg_matrix(g, g.character(i)))
        .collect::<Result<Vec<_>>>()?;
    let dr = Matrix::par_from_fn(n, n, |i, j| {
        (0..n).fold(QPoly::zero(), |acc, k| {
            let c = &cgs[i][(k, j)];
            if c.is_zero() {
                acc
            } else {
                &acc + &row[k].scale(c)
            }
        })
    });
    let exponents = row.iter().map(|p| p.exponents().unwrap_or_default()).collect();
    let multiplicities = row
        .iter()
        .map(|p| p.eval_at_one().to_integer().and_then(|x| x.to_u64()).unwrap_or(0))
        .collect();

    let mut checks = Report::new();
    checks.push(IdentityCheck::from_witness(
        "D[R]_j^i nonnegative integer polynomials",
        first_failure(n, n, |i, j| dr[(i, j)].has_nonneg_int_coeffs()),
    ));
    checks.push(IdentityCheck::new(
        "mu_j |G| = d_j n_1...n_d",
        degree_check(g, &row, product).is_none(),
    ));
    checks.push(IdentityCheck::from_witness(
        "D[R]_j^i / ((1-q)^d D(R)) = M[R_S(q)]_j^i",
        first_failure(n, n, |i, j| &dr[(i, j)] * &s.den == &s.num[(i, j)] * &prod),
    ));
    Ok(CMData {
        hsop_degrees: degrees,
        dr,
        exponents,
        multiplicities,
        checks,
    })
}

fn cyclotomic(k: u64) -> QPoly {
    QPoly::new(cyclotomic_poly(k).into_iter().map(Cyclo::from_int).collect())
}

/// Exponent of Φ_k in `p` for every k ≤ `bound`; None if `p` has other factors.
fn cyclotomic_exponents(p: &QPoly, bound: u64) -> Option<Vec<u32>> {
    let mut rest = p.monic();
    let mut out = vec![0u32; bound as usize + 1];
    for k in 1..=bound {
        if rest.is_constant() {
            break;
        }
        let phi = cyclotomic(k);
        while let Some(q) = rest.exact_div(&phi) {
            rest = q;
            out[k as usize] += 1;
        }
    }
    rest.is_constant().then_some(out)
}

/// Lexicographically smallest (a, b) with a ≤ b ≤ 2|G| for which every
/// M[R_S(q)]_j^0 (1 - q^a)(1 - q^b) is a nonnegative integer polynomial and
/// μ_j |G| = d_j a b.
pub fn hsop_search(g: &GroupModel) -> Result<Vec<u64>> {
    if g.dim_defining != 2 {
        return Err(Error::InvalidArgument("degree search needs a 2-dimensional representation".into()));
    }
    let bound = 2 * g.order;
    let s = series_matrix(g, Kind::S, Sign::Plus)?.matrix;
    let n = g.num_classes();
    let dens = (0..n)
        .into_par_iter()
        .map(|j| RatQ::new(s.num[(0, j)].clone(), s.den.clone()).map(|r| r.den().clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut need = vec![0u32; bound as usize + 1];
    for d in &dens {
        let e = cyclotomic_exponents(d, bound).ok_or(Error::HsopNotFound { bound })?;
        for (n, x) in need.iter_mut().zip(e) {
            *n = (*n).max(x);
        }
    }
    let needed: Vec<(u64, u32)> = need
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| (k as u64, e))
        .collect();
    for a in 1..=bound {
        for b in a..=bound {
            let ok = needed
                .iter()
                .all(|&(k, e)| (a % k == 0) as u32 + (b % k == 0) as u32 >= e);
            if !ok || a * b * g.dims()[0] % g.order != 0 {
                continue;
            }
            let prod = hsop_product(&[a, b]);
            if let Some(row) = first_row(&s, &prod) {
                if degree_check(g, &row, a * b).is_none() {
                    return Ok(vec![a, b]);
                }
            }
        }
    }
    Err(Error::HsopNotFound { bound })
}

fn eval_derivative(m: &Matrix<QPoly>, k: usize) -> Matrix<Cyclo> {
    m.par_map(|p| {
        let mut p = p.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p.eval_at_one()
    })
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// The derivative/power identities between D[R] and M[R_A(-q)] at q = 1:
/// D^(i) A^{i+1} = 0 and D^{i+1} A^(i) = 0 for i < d, the i = d identity
/// D^(d) A^{d+1} = (-1)^d d! μ_0|G| A^d, its companion
/// D^{d+1} A^(d) = (-1)^d d! μ_0|G| D^d, and A^(d) = (-1)^d d! M[det R].
pub fn prop3_check(g: &GroupModel, cm: &CMData) -> Result<Report> {
    g.require_free()?;
    let d = g.dim_defining;
    let n = g.num_classes();
    let a = series_matrix(g, Kind::A, Sign::Minus)?
        .matrix
        .poly_entries()
        .ok_or_else(|| Error::NotPolynomial("M[R_A(-q)]".into()))?;
    let a1 = eval_derivative(&a, 0);
    let d1 = eval_derivative(&cm.dr, 0);
    let scalar = Cyclo::from_int(if d % 2 == 0 { 1 } else { -1 } * factorial(d) * cm.degree_product() as i64);
    let zero = Matrix::<Cyclo>::zeros(n, n);
    let mut rep = Report::new();
    let cmp = |x: &Matrix<Cyclo>, y: &Matrix<Cyclo>| first_failure(n, n, |i, j| x[(i, j)] == y[(i, j)]);
    for i in 0..d {
        let lhs = eval_derivative(&cm.dr, i).mul(&a1.pow(i as u32 + 1));
        rep.push(IdentityCheck::from_witness(format!("D^({i}) A^{} = 0", i + 1), cmp(&lhs, &zero)));
    }
    for i in 0..d {
        let lhs = d1.pow(i as u32 + 1).mul(&eval_derivative(&a, i));
        rep.push(IdentityCheck::from_witness(format!("D^{} A^({i}) = 0", i + 1), cmp(&lhs, &zero)));
    }
    let lhs = eval_derivative(&cm.dr, d).mul(&a1.pow(d as u32 + 1));
    let rhs = a1.pow(d as u32).scale(&scalar);
    rep.push(IdentityCheck::from_witness(
        format!("D^({d}) A^{} = (-1)^d d! mu_0|G| A^{d}", d + 1),
        cmp(&lhs, &rhs),
    ));
    let ad = eval_derivative(&a, d);
    let lhs = d1.pow(d as u32 + 1).mul(&ad);
    let rhs = d1.pow(d as u32).scale(&scalar);
    rep.push(IdentityCheck::from_witness(
        format!("D^{} A^({d}) = (-1)^d d! mu_0|G| D^{d}", d + 1),
        cmp(&lhs, &rhs),
    ));
    let sign = if d % 2 == 0 { 1 } else { -1 };
    let det_char: Vec<Cyclo> = g
        .class_kernels()?
        .iter()
        .map(|p| p.coeff(d).scale(&crate::exact::Rational::from_integer(BigInt::from(sign))))
        .collect();
    let m_det = cg_matrix(g, &det_char)?.scale(&Cyclo::from_int(sign * factorial(d)));
    rep.push(IdentityCheck::from_witness(format!("A^({d}) = (-1)^d d! M[det R]"), cmp(&ad, &m_det)));
    Ok(rep)
}

/// For cyclic groups of order m = n + 1: D[R]_j^0''(1)/2 = n(n+1)/2 - j(n-j+1)
/// and, for j ≥ 1, = n(n+1)/2 - (n+1) (M̃[R](1)^{-1})_j^j.
pub fn an_dprime_check(m: u64) -> Result<Report> {
    if m < 2 {
        return Err(Error::InvalidArgument("m must be at least 2".into()));
    }
    let g = crate::groups::make_cyclic_su2(m)?;
    let cm = cm_data(&g, Some(&[2, m]))?;
    let inv = cartan_inverse(&g, Method::Direct)?;
    let n = (m - 1) as i64;
    let half = crate::exact::Rational::new(BigInt::from(1), BigInt::from(2));
    let base = Cyclo::from_int(n * (n + 1) / 2);
    let mut first = None;
    let mut second = None;
    for j in 0..=n {
        let p = &cm.dr[(0, j as usize)];
        let dd = p.derivative().derivative().eval_at_one().scale(&half);
        if first.is_none() && dd != &base - &Cyclo::from_int(j * (n - j + 1)) {
            first = Some(vec![j as usize]);
        }
        if j >= 1 && second.is_none() {
            let jj = &inv[(j as usize - 1, j as usize - 1)];
            if dd != &base - &(jj * &Cyclo::from_int(n + 1)) {
                second = Some(vec![j as usize]);
            }
        }
    }
    let mut rep = Report::new();
    rep.push(IdentityCheck::from_witness("D''(1)/2 = n(n+1)/2 - j(n-j+1)", first));
    rep.push(IdentityCheck::from_witness("D''(1)/2 = n(n+1)/2 - (n+1) inv_jj", second));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_binary_dihedral, make_binary_icosahedral, make_binary_tetrahedral, make_cyclic_su2};

    #[test]
    fn cyclic_numerators() {
        for m in 2..=6u64 {
            let g = make_cyclic_su2(m).unwrap();
            let cm = cm_data(&g, None).unwrap();
            assert!(cm.checks.pass(), "{}", cm.checks);
            let n = m as usize - 1;
            for j in 0..=n {
                let mut want = vec![j, n - j + 1];
                want.sort();
                assert_eq!(cm.exponents[j], want, "m={m} j={j}");
            }
            assert_eq!(hsop_search(&g).unwrap(), vec![2, m]);
        }
        let z2 = cm_data(&make_cyclic_su2(2).unwrap(), None).unwrap();
        assert_eq!(z2.dr[(0, 0)], QPoly::from_ints(&[1, 0, 1]));
        assert_eq!(z2.multiplicities[0], 2);
    }

    #[test]
    fn icosahedral_degrees() {
        let g = make_binary_icosahedral().unwrap();
        assert_eq!(hsop_search(&g).unwrap(), vec![12, 20]);
        let cm = cm_data(&g, None).unwrap();
        let mut want = vec![0i64; 31];
        want[0] = 1;
        want[30] = 1;
        assert_eq!(cm.dr[(0, 0)], QPoly::from_ints(&want));
        assert!(cm.checks.pass());
    }

    #[test]
    fn bad_degrees_rejected() {
        let g = make_cyclic_su2(3).unwrap();
        assert!(matches!(cm_data(&g, Some(&[1, 1])), Err(Error::CohenMacaulay(_))));
        assert!(matches!(cm_data(&g, Some(&[2])), Err(Error::CohenMacaulay(_))));
    }

    #[test]
    fn prop3_small() {
        for g in [make_cyclic_su2(2).unwrap(), make_binary_tetrahedral().unwrap(), make_binary_dihedral(3).unwrap()] {
            let cm = cm_data(&g, None).unwrap();
            let r = prop3_check(&g, &cm).unwrap();
            assert!(r.pass(), "{}: {r}", g.name);
        }
    }

    #[test]
    fn an_dprime() {
        for m in 2..=6 {
            assert!(an_dprime_check(m).unwrap().pass());
        }
    }
}
