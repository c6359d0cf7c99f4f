//! Euclidean Cartan matrices, their inverses, η-invariants and the McKay check.

mod calibration;
mod cm;
mod weyl;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::cg::{cg_matrix, defining_cg, series_matrix, FracMatrix, Kind, Sign};
use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};
use crate::groups::GroupModel;
use crate::linalg::Matrix;
use crate::qseries::{QPoly, RatQ};
use crate::report::{first_failure, IdentityCheck, Report};

pub use calibration::{
    calibrate_on_cyclic, calibration_drift, calibration_report, frozen_constant, printed_value, CalibratedConstant,
    DFactor, Formula, FROZEN,
};
pub use cm::{an_dprime_check, cm_data, default_hsop_degrees, hsop_search, prop3_check, CMData};
pub use weyl::{positive_roots, weyl_agrees, weyl_oracle, weyl_vector, weyl_vector_from_cartan};

/// Where the Euclidean CG matrix is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum At {
    Formal,
    One,
}

#[derive(Clone, Debug)]
pub struct EuclideanMatrix {
    pub group: String,
    pub formal: FracMatrix,
}

impl EuclideanMatrix {
    pub fn at_one(&self) -> Result<Matrix<Cyclo>> {
        self.formal.eval(&Cyclo::one())
    }
}

/// M[R_A(-q)] with the trivial row and column removed.
pub fn euclidean_cg(g: &GroupModel) -> Result<EuclideanMatrix> {
    let a = series_matrix(g, Kind::A, Sign::Minus)?;
    Ok(EuclideanMatrix {
        group: g.name.clone(),
        formal: a.matrix.truncate_first(),
    })
}

/// The Euclidean Cartan matrix M̃[R](1).
pub fn euclidean_cartan(g: &GroupModel) -> Result<Matrix<Cyclo>> {
    euclidean_cg(g)?.at_one()
}

fn int_matrix(rows: &[Vec<i64>]) -> Matrix<Cyclo> {
    Matrix::from_ints(rows)
}

/// McKay correspondence: M[R_A(-1)] = 2E - M[R] equals the affine Cartan
/// matrix of the group's diagram, and the dimension vector is in its kernel.
pub fn mckay_check(g: &GroupModel) -> Result<Report> {
    let aff = g
        .family
        .affine_type()
        .ok_or_else(|| Error::InvalidArgument(format!("{} is not a built-in SU(2) family", g.name)))?;
    let n = g.num_classes();
    let a1 = series_matrix(g, Kind::A, Sign::Minus)?.matrix.eval(&Cyclo::one())?;
    let two_e = Matrix::<Cyclo>::identity(n).scale(&Cyclo::from_int(2));
    let mckay = two_e.sub(&defining_cg(g));
    let data = aff.data();
    let mut rep = Report::new();
    let expected = int_matrix(&data.affine);
    let w = if expected.rows() != n {
        Some(vec![])
    } else {
        first_failure(n, n, |i, j| a1[(i, j)] == mckay[(i, j)] && a1[(i, j)] == expected[(i, j)])
    };
    rep.push(IdentityCheck::from_witness(format!("affine {}", aff.finite_type()), w));
    let dims: Vec<Cyclo> = g.dims().into_iter().map(|d| Cyclo::from_int(d)).collect();
    let k = a1.mul_vec(&dims);
    let w = k.iter().position(|x| !x.is_zero()).map(|i| vec![i]);
    rep.push(IdentityCheck::from_witness("kernel", w));
    Ok(rep)
}

/// Inverse of the Euclidean character table: entry (k, j) for class k and
/// irreducible j (both ≥ 1) is (|C_k|/|G|)(conj χ_j(g_k) - d_j).
pub fn inverse_char_table(g: &GroupModel) -> Matrix<Cyclo> {
    let n = g.num_classes() - 1;
    let dims = g.dims();
    Matrix::from_fn(n, n, |k, j| {
        let (k, j) = (k + 1, j + 1);
        (&g.char_table[(j, k)].conj() - &Cyclo::from_int(dims[j]))
            .scale(&Rational::new(BigInt::from(g.class_sizes[k]), BigInt::from(g.order)))
    })
}

/// The Euclidean character table (irreducibles and classes 1..n).
pub fn euclidean_char_table(g: &GroupModel) -> Matrix<Cyclo> {
    g.char_table.truncate_first()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    Direct,
    Characters,
    Eta,
    Limit,
    SylvesterLimit,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Direct,
        Method::Characters,
        Method::Eta,
        Method::Limit,
        Method::SylvesterLimit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Characters => "characters",
            Method::Eta => "eta",
            Method::Limit => "limit",
            Method::SylvesterLimit => "sylvester-limit",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method '{s}'")))
    }
}

/// d_i d_j (x_00 - x_i0/d_i - x_0j/d_j + x_ij/(d_i d_j)), i.e.
/// x_00 d_i d_j - x_i0 d_j - x_0j d_i + x_ij.
fn corner_combo<T>(dims: &[u64], i: usize, j: usize, x: impl Fn(usize, usize) -> T) -> Vec<(Cyclo, T)> {
    let (di, dj) = (dims[i] as i64, dims[j] as i64);
    vec![
        (Cyclo::from_int(di * dj), x(0, 0)),
        (Cyclo::from_int(-dj), x(i, 0)),
        (Cyclo::from_int(-di), x(0, j)),
        (Cyclo::one(), x(i, j)),
    ]
}

fn combo_cyclo(terms: Vec<(Cyclo, Cyclo)>) -> Cyclo {
    terms.iter().map(|(w, v)| w * v).sum()
}

fn combo_poly(terms: Vec<(Cyclo, QPoly)>) -> QPoly {
    terms
        .iter()
        .fold(QPoly::zero(), |acc, (w, p)| &acc + &p.scale(w))
}

/// Unsigned class sums K_j^i = (1/|G|) Σ_{k ≥ 1} |C_k| χ_i(g_k) conj χ_j(g_k) / det(E - R(g_k)).
pub fn k_matrix(g: &GroupModel) -> Result<Matrix<Cyclo>> {
    g.require_free()?;
    let dets = g.fixed_point_dets()?;
    let weights: Vec<Cyclo> = (0..g.num_classes())
        .map(|k| -> Result<Cyclo> {
            if k == 0 {
                return Ok(Cyclo::zero());
            }
            Ok(dets[k]
                .inv()?
                .scale(&Rational::new(BigInt::from(g.class_sizes[k]), BigInt::from(g.order))))
        })
        .collect::<Result<_>>()?;
    let n = g.num_classes();
    Ok(Matrix::par_from_fn(n, n, |i, j| {
        (1..n)
            .map(|k| &weights[k] * &(&g.char_table[(i, k)] * &g.char_table[(j, k)].conj()))
            .sum()
    }))
}

/// The inverse Euclidean Cartan matrix (indices 1..n) by the chosen method.
pub fn cartan_inverse(g: &GroupModel, method: Method) -> Result<Matrix<Cyclo>> {
    let n = g.num_classes() - 1;
    let dims = g.dims();
    match method {
        Method::Direct => euclidean_cartan(g)?.inverse(),
        Method::Characters => {
            g.require_free()?;
            let dets = g.fixed_point_dets()?;
            let inv_dets = dets
                .iter()
                .skip(1)
                .map(Cyclo::inv)
                .collect::<Result<Vec<_>>>()?;
            let ord = Rational::new(BigInt::from(1), BigInt::from(g.order));
            Ok(Matrix::par_from_fn(n, n, |i, j| {
                let (i, j) = (i + 1, j + 1);
                let s: Cyclo = (1..=n)
                    .map(|k| {
                        let a = &g.char_table[(i, k)] - &Cyclo::from_int(dims[i]);
                        let b = &g.char_table[(j, k)].conj() - &Cyclo::from_int(dims[j]);
                        (&(&a * &b) * &inv_dets[k - 1]).scale(&Rational::from_integer(BigInt::from(g.class_sizes[k])))
                    })
                    .sum();
                s.scale(&ord)
            }))
        }
        Method::Eta => {
            let k = k_matrix(g)?;
            Ok(Matrix::from_fn(n, n, |i, j| {
                combo_cyclo(corner_combo(&dims, i + 1, j + 1, |a, b| k[(a, b)].clone()))
            }))
        }
        Method::Limit => {
            g.require_free()?;
            let s = series_matrix(g, Kind::S, Sign::Plus)?.matrix;
            let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
            let vals = cells
                .par_iter()
                .map(|&(i, j)| {
                    let num = combo_poly(corner_combo(&dims, i + 1, j + 1, |a, b| s.num[(a, b)].clone()));
                    RatQ::new(num, s.den.clone())?.limit_at_one()
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(vals.chunks(n.max(1)).map(<[Cyclo]>::to_vec).collect())
        }
        Method::SylvesterLimit => {
            g.require_free()?;
            let s = series_matrix(g, Kind::S, Sign::Plus)?.matrix;
            let n00 = s.num[(0, 0)].clone();
            let den = &s.den * &n00;
            let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
            let vals = cells
                .par_iter()
                .map(|&(i, j)| {
                    let (i, j) = (i + 1, j + 1);
                    let minor = &(&n00 * &s.num[(i, j)]) - &(&s.num[(0, j)] * &s.num[(i, 0)]);
                    RatQ::new(minor, den.clone())?.limit_at_one()
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(vals.chunks(n.max(1)).map(<[Cyclo]>::to_vec).collect())
        }
    }
}

/// The Ã_n closed form min(i, j) - ij/(n + 1).
pub fn an_closed_form(n: usize, i: usize, j: usize) -> Result<Rational> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Index(format!("indices ({i}, {j}) outside 1..={n}")));
    }
    Ok(Rational::from_integer(BigInt::from(i.min(j)))
        - Rational::new(BigInt::from(i * j), BigInt::from(n + 1)))
}

/// Sign attached to η-invariants: (-1)^{d/2} for even d, 1 for odd d.
pub fn eta_sign(d: usize) -> i64 {
    if d % 2 == 0 && (d / 2) % 2 == 1 {
        -1
    } else {
        1
    }
}

#[derive(Clone, Debug)]
pub struct EtaData {
    pub eta0: Vec<Cyclo>,
    pub eta: Matrix<Cyclo>,
    /// The unsigned sums K; η = σ K.
    pub k: Matrix<Cyclo>,
    pub sign_convention: i64,
    /// Whether R(G) lies in SU(d).
    pub special: bool,
    pub checks: Report,
}

/// η-invariants η_j^i = σ K_j^i with the definitional and residue identities checked.
pub fn eta_invariants(g: &GroupModel) -> Result<EtaData> {
    let k = k_matrix(g)?;
    let sigma = eta_sign(g.dim_defining);
    let sc = Cyclo::from_int(sigma);
    let eta = k.map(|x| x * &sc);
    let n = g.num_classes();
    let eta0: Vec<Cyclo> = (0..n).map(|j| eta[(0, j)].clone()).collect();

    let mut checks = Report::new();
    let mut w = None;
    'outer: for i in 0..n {
        let mi = cg_matrix(g, g.character(i))?;
        for j in 0..n {
            let v: Cyclo = (0..n).map(|kk| &mi[(kk, j)] * &eta0[kk]).sum();
            if v != eta[(i, j)] {
                w = Some(vec![i, j]);
                break 'outer;
            }
        }
    }
    checks.push(IdentityCheck::from_witness("eta_j^i = sum_k M[R_i]_j^k eta_k^0", w));

    let s = series_matrix(g, Kind::S, Sign::Plus)?.matrix;
    let one_minus_q = QPoly::one_minus_q_pow(1);
    let den = &s.den * &one_minus_q;
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let bad = cells
        .par_iter()
        .map(|&(i, j)| -> Result<Option<(usize, usize)>> {
            let r = RatQ::new(s.num[(i, j)].clone(), den.clone())?.laurent_residue_at_one()?;
            Ok((r != -&k[(i, j)]).then_some((i, j)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    checks.push(IdentityCheck::from_witness(
        "K_j^i = -Res M[R_S(q)]_j^i / (1 - q)",
        bad.map(|(i, j)| vec![i, j]),
    ));
    Ok(EtaData {
        eta0,
        eta,
        k,
        sign_convention: sigma,
        special: g.is_special()?,
        checks,
    })
}

/// Checks five-way agreement of `cartan_inverse` and that the direct inverse
/// really inverts the Euclidean Cartan matrix.
pub fn inverse_agreement(g: &GroupModel) -> Result<Report> {
    let cartan = euclidean_cartan(g)?;
    let direct = cartan_inverse(g, Method::Direct)?;
    let mut rep = Report::new();
    let n = direct.rows();
    for m in &Method::ALL[1..] {
        let other = cartan_inverse(g, *m)?;
        rep.push(IdentityCheck::from_witness(
            format!("{} = direct", m.name()),
            first_failure(n, n, |i, j| other[(i, j)] == direct[(i, j)]),
        ));
    }
    rep.push(IdentityCheck::new("direct * cartan = E", direct.mul(&cartan).is_identity()));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{
        make_binary_dihedral, make_binary_icosahedral, make_binary_tetrahedral, make_cyclic_su2,
    };

    fn frac(n: i64, d: i64) -> Cyclo {
        Cyclo::frac(n, d)
    }

    #[test]
    fn euclidean_examples() {
        let z2 = make_cyclic_su2(2).unwrap();
        let e = euclidean_cg(&z2).unwrap();
        assert_eq!(e.formal.entry(0, 0), RatQ::from_poly(QPoly::from_ints(&[1, 0, 1])));
        assert_eq!(e.at_one().unwrap(), Matrix::from_ints(&[vec![2]]));
        let z3 = make_cyclic_su2(3).unwrap();
        assert_eq!(euclidean_cartan(&z3).unwrap(), Matrix::from_ints(&[vec![2, -1], vec![-1, 2]]));
    }

    #[test]
    fn mckay_small() {
        let z2 = make_cyclic_su2(2).unwrap();
        assert_eq!(mckay_check(&z2).unwrap().to_string(), "affine A1: PASS, kernel: PASS");
        let q8 = make_binary_dihedral(2).unwrap();
        assert!(mckay_check(&q8).unwrap().pass());
        let t = make_binary_tetrahedral().unwrap();
        assert_eq!(mckay_check(&t).unwrap().to_string(), "affine E6: PASS, kernel: PASS");
    }

    #[test]
    fn inverse_char_table_products() {
        for g in [make_cyclic_su2(2).unwrap(), make_cyclic_su2(3).unwrap(), make_binary_tetrahedral().unwrap()] {
            let inv = inverse_char_table(&g);
            assert!(euclidean_char_table(&g).mul(&inv).is_identity(), "{}", g.name);
        }
        assert_eq!(inverse_char_table(&make_cyclic_su2(2).unwrap()), Matrix::from_ints(&[vec![-1]]));
    }

    #[test]
    fn inverse_methods_cyclic() {
        let z3 = make_cyclic_su2(3).unwrap();
        let want = Matrix::from_rows(vec![vec![frac(2, 3), frac(1, 3)], vec![frac(1, 3), frac(2, 3)]]).unwrap();
        for m in Method::ALL {
            assert_eq!(cartan_inverse(&z3, m).unwrap(), want, "{}", m.name());
        }
        assert_eq!(an_closed_form(3, 1, 3).unwrap(), Rational::new(BigInt::from(1), BigInt::from(4)));
        assert!(an_closed_form(3, 0, 1).is_err());
    }

    #[test]
    fn agreement_on_2i() {
        let g = make_binary_icosahedral().unwrap();
        let r = inverse_agreement(&g).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn eta_z2() {
        let g = make_cyclic_su2(2).unwrap();
        let e = eta_invariants(&g).unwrap();
        assert_eq!(e.k, Matrix::from_rows(vec![vec![frac(1, 8), frac(-1, 8)], vec![frac(-1, 8), frac(1, 8)]]).unwrap());
        assert_eq!(e.sign_convention, -1);
        assert!(e.checks.pass(), "{}", e.checks);
        assert!(e.special);
        let t = eta_invariants(&make_binary_tetrahedral().unwrap()).unwrap();
        assert!(t.checks.pass(), "{}", t.checks);
    }
}
