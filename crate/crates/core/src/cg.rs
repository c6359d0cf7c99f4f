//! Clebsch-Gordan matrices and the symmetric, exterior, tensor and Adams
//! series matrices of a group's defining representation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use once_cell::sync::OnceCell;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};
use crate::groups::GroupModel;
use crate::linalg::Matrix;
use crate::qseries::{CommonDen, QPoly, RatQ};
use crate::report::{first_failure, IdentityCheck, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    /// Symmetric powers, kernel 1/det(E - qR).
    S,
    /// Exterior powers, kernel det(E + qR).
    A,
    /// Tensor powers, kernel 1/(1 - q tr R).
    T,
    /// Adams operations, kernel tr (E - qR)^{-1}.
    P,
}

/// Whether the series is taken at `q` or at `-q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::S, Kind::A, Kind::T, Kind::P];
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::S => "S",
            Kind::A => "A",
            Kind::T => "T",
            Kind::P => "P",
        };
        f.write_str(s)
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(Kind::S),
            "A" | "a" => Ok(Kind::A),
            "T" | "t" => Ok(Kind::T),
            "P" | "p" => Ok(Kind::P),
            _ => Err(Error::InvalidArgument(format!("unknown series kind '{s}'"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "q",
            Sign::Minus => "-q",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "+q" | "+" => Ok(Sign::Plus),
            "-q" | "-" => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("unknown sign '{s}' (use q or -q)"))),
        }
    }
}

/// A matrix of rational functions stored over one common denominator.
#[derive(Clone, Debug)]
pub struct FracMatrix {
    pub num: Matrix<QPoly>,
    pub den: QPoly,
    reduced: OnceCell<Matrix<RatQ>>,
}

impl PartialEq for FracMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.mismatch(other).is_none()
    }
}

impl FracMatrix {
    pub fn new(num: Matrix<QPoly>, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero common denominator");
        FracMatrix {
            num,
            den,
            reduced: OnceCell::new(),
        }
    }

    pub fn from_poly(m: Matrix<QPoly>) -> Self {
        FracMatrix::new(m, QPoly::one())
    }

    pub fn from_cyclo(m: &Matrix<Cyclo>) -> Self {
        FracMatrix::from_poly(m.map(|c| QPoly::constant(c.clone())))
    }

    pub fn from_ratq(m: &Matrix<RatQ>) -> Self {
        let cd = CommonDen::new(m.entries());
        let nums = Matrix::from_rows(
            cd.nums
                .chunks(m.cols().max(1))
                .map(|c| c.to_vec())
                .collect(),
        )
        .expect("rectangular");
        FracMatrix::new(nums, cd.den)
    }

    pub fn identity(n: usize) -> Self {
        FracMatrix::from_poly(Matrix::identity(n))
    }

    pub fn rows(&self) -> usize {
        self.num.rows()
    }

    pub fn cols(&self) -> usize {
        self.num.cols()
    }

    /// Entries in canonical form (computed once).
    pub fn entries(&self) -> &Matrix<RatQ> {
        self.reduced.get_or_init(|| {
            self.num
                .par_map(|n| RatQ::new(n.clone(), self.den.clone()).expect("nonzero denominator"))
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> RatQ {
        self.entries()[(i, j)].clone()
    }

    pub fn mul(&self, o: &FracMatrix) -> FracMatrix {
        FracMatrix::new(self.num.mul(&o.num), &self.den * &o.den)
    }

    fn over(&self, den: &QPoly) -> Matrix<QPoly> {
        if &self.den == den {
            return self.num.clone();
        }
        let f = den.exact_div(&self.den).expect("common multiple");
        self.num.par_map(|x| x * &f)
    }

    fn common(&self, o: &FracMatrix) -> (Matrix<QPoly>, Matrix<QPoly>, QPoly) {
        let den = if self.den == o.den {
            self.den.clone()
        } else {
            QPoly::lcm(&self.den, &o.den)
        };
        (self.over(&den), o.over(&den), den)
    }

    pub fn add(&self, o: &FracMatrix) -> FracMatrix {
        let (a, b, d) = self.common(o);
        FracMatrix::new(a.add(&b), d)
    }

    pub fn sub(&self, o: &FracMatrix) -> FracMatrix {
        let (a, b, d) = self.common(o);
        FracMatrix::new(a.sub(&b), d)
    }

    pub fn scale(&self, p: &QPoly) -> FracMatrix {
        FracMatrix::new(self.num.par_map(|x| x * p), self.den.clone())
    }

    pub fn scale_cyclo(&self, c: &Cyclo) -> FracMatrix {
        FracMatrix::new(self.num.par_map(|x| x.scale(c)), self.den.clone())
    }

    /// Entrywise q-derivative.
    pub fn derivative(&self) -> FracMatrix {
        let dd = self.den.derivative();
        let num = self
            .num
            .par_map(|n| &(&n.derivative() * &self.den) - &(n * &dd));
        FracMatrix::new(num, &self.den * &self.den)
    }

    pub fn subst_neg(&self) -> FracMatrix {
        FracMatrix::new(self.num.par_map(QPoly::subst_neg), self.den.subst_neg())
    }

    pub fn truncate_first(&self) -> FracMatrix {
        FracMatrix::new(self.num.truncate_first(), self.den.clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FracMatrix {
        FracMatrix::new(self.num.submatrix(rows, cols), self.den.clone())
    }

    /// First entry where the two matrices differ, by cross-multiplication.
    pub fn mismatch(&self, o: &FracMatrix) -> Option<Vec<usize>> {
        if self.rows() != o.rows() || self.cols() != o.cols() {
            return Some(vec![]);
        }
        if self.den == o.den {
            return first_failure(self.rows(), self.cols(), |i, j| self.num[(i, j)] == o.num[(i, j)]);
        }
        first_failure(self.rows(), self.cols(), |i, j| {
            &self.num[(i, j)] * &o.den == &o.num[(i, j)] * &self.den
        })
    }

    /// Values at `q = x`; fails if the common denominator vanishes there.
    pub fn eval(&self, x: &Cyclo) -> Result<Matrix<Cyclo>> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return self.entries().eval(x);
        }
        let inv = d.inv()?;
        Ok(self.num.par_map(|n| &n.eval(x) * &inv))
    }

    pub fn is_polynomial(&self) -> bool {
        self.entries().entries().iter().all(RatQ::is_polynomial)
    }

    pub fn poly_entries(&self) -> Option<Matrix<QPoly>> {
        if self.den.is_constant() {
            let inv = self.den.coeff(0).inv().ok()?;
            return Some(self.num.map(|p| p.scale(&inv)));
        }
        self.is_polynomial()
            .then(|| self.entries().map(|r| r.as_polynomial().expect("polynomial entry")))
    }
}

#[derive(Clone, Debug)]
pub struct SeriesMatrix {
    pub kind: Kind,
    pub sign: Sign,
    pub matrix: FracMatrix,
}

impl SeriesMatrix {
    pub fn entry(&self, i: usize, j: usize) -> RatQ {
        self.matrix.entry(i, j)
    }

    pub fn entries(&self) -> &Matrix<RatQ> {
        self.matrix.entries()
    }

    pub fn label(&self) -> String {
        format!("M[R_{}({})]", self.kind, self.sign)
    }
}

fn check_class_fn(g: &GroupModel, x: &[Cyclo]) -> Result<()> {
    if x.len() != g.num_classes() {
        return Err(Error::LengthMismatch {
            expected: g.num_classes(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `|C_k| χ_i(g_k) conj χ_j(g_k) / |G|` for every class `k`.
fn weights(g: &GroupModel, i: usize, j: usize) -> Vec<Cyclo> {
    let inv = Rational::new(BigInt::from(1), BigInt::from(g.order));
    (0..g.num_classes())
        .map(|k| {
            (&g.char_table[(i, k)] * &g.char_table[(j, k)].conj())
                .scale(&(&inv * Rational::from_integer(BigInt::from(g.class_sizes[k]))))
        })
        .collect()
}

/// M[R_X]: entry (i, j) = (R_X ⊗ R_i, R_j) for the class function `x`.
pub fn cg_matrix(g: &GroupModel, x: &[Cyclo]) -> Result<Matrix<Cyclo>> {
    check_class_fn(g, x)?;
    let n = g.num_classes();
    Ok(Matrix::par_from_fn(n, n, |i, j| {
        weights(g, i, j)
            .iter()
            .zip(x)
            .map(|(w, xk)| w * xk)
            .sum()
    }))
}

/// CG matrix of the defining representation.
pub fn defining_cg(g: &GroupModel) -> Matrix<Cyclo> {
    cg_matrix(g, &g.defining_row).expect("defining row has one value per class")
}

/// Per-class kernel functions of the requested series.
pub fn class_kernels(g: &GroupModel, kind: Kind, sign: Sign) -> Result<Vec<RatQ>> {
    let polys = g.class_kernels()?;
    let d = Cyclo::from_int(g.dim_defining as i64);
    let ks = polys
        .iter()
        .zip(&g.defining_row)
        .map(|(p, tr)| -> Result<RatQ> {
            Ok(match kind {
                Kind::S => RatQ::recip_poly(p.clone())?,
                Kind::A => RatQ::from_poly(p.subst_neg()),
                Kind::T => RatQ::recip_poly(QPoly::new(vec![Cyclo::one(), -tr]))?,
                Kind::P => {
                    let num = &p.scale(&d) - &QPoly::q().mul_ref(&p.derivative());
                    RatQ::new(num, p.clone())?
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match sign {
        Sign::Plus => ks,
        Sign::Minus => ks.iter().map(RatQ::subst_neg).collect(),
    })
}

/// (1/|G|) Σ_k |C_k| f_k(q) χ_i(g_k) conj χ_j(g_k) over one common denominator.
pub fn class_sum(g: &GroupModel, kernels: &[RatQ]) -> Result<FracMatrix> {
    if kernels.len() != g.num_classes() {
        return Err(Error::LengthMismatch {
            expected: g.num_classes(),
            found: kernels.len(),
        });
    }
    let cd = CommonDen::new(kernels);
    let n = g.num_classes();
    let num = Matrix::par_from_fn(n, n, |i, j| {
        let w = weights(g, i, j);
        let mut acc = QPoly::zero();
        for (wk, nk) in w.iter().zip(&cd.nums) {
            if !wk.is_zero() && !nk.is_zero() {
                acc = &acc + &nk.scale(wk);
            }
        }
        acc
    });
    Ok(FracMatrix::new(num, cd.den))
}

pub fn series_matrix(g: &GroupModel, kind: Kind, sign: Sign) -> Result<SeriesMatrix> {
    let k = class_kernels(g, kind, sign)?;
    Ok(SeriesMatrix {
        kind,
        sign,
        matrix: class_sum(g, &k)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorResult {
    pub value: RatQ,
    pub agree: bool,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..n {
            if n - p < k - cur.len() {
                break;
            }
            cur.push(p);
            go(p + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All k-element index subsets of 0..n in lexicographic order.
pub fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// Evaluates minors of one series matrix by both routes with shared data.
pub struct MinorEngine<'g> {
    g: &'g GroupModel,
    matrix: FracMatrix,
    kernels: CommonDen,
}

impl<'g> MinorEngine<'g> {
    pub fn new(g: &'g GroupModel, kind: Kind, sign: Sign) -> Result<Self> {
        let k = class_kernels(g, kind, sign)?;
        let kernels = CommonDen::new(&k);
        let n = g.num_classes();
        let matrix = class_sum(g, &k)?;
        debug_assert_eq!(kernels.nums.len(), n);
        Ok(MinorEngine { g, matrix, kernels })
    }

    fn check_indices(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        let n = self.g.num_classes();
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::Index(format!(
                "minor needs equally many rows and columns, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        for set in [rows, cols] {
            let mut s = set.to_vec();
            s.sort_unstable();
            s.dedup();
            if s.len() != set.len() || s.iter().any(|&x| x >= n) {
                return Err(Error::Index(format!("bad index list {set:?} for {n} irreducibles")));
            }
        }
        Ok(())
    }

    /// Numerator over `den^k` from the character-minor sum.
    fn character_route(&self, rows: &[usize], cols: &[usize]) -> QPoly {
        let g = self.g;
        let k = rows.len();
        let n = g.num_classes();
        let inv = Rational::new(BigInt::from(1), BigInt::from(g.order));
        subsets(n, k)
            .par_iter()
            .map(|p| {
                let a = g.char_table.submatrix(rows, p).det();
                if a.is_zero() {
                    return QPoly::zero();
                }
                let b = g.char_table.submatrix(cols, p).det().conj();
                if b.is_zero() {
                    return QPoly::zero();
                }
                let mut w = &a * &b;
                let mut poly = QPoly::one();
                for &pm in p {
                    w = w.scale(&(&inv * Rational::from_integer(BigInt::from(g.class_sizes[pm]))));
                    poly = &poly * &self.kernels.nums[pm];
                }
                poly.scale(&w)
            })
            .reduce(QPoly::zero, |a, b| &a + &b)
    }

    /// Numerator over `den^k` from the determinant of the submatrix.
    fn direct_route(&self, rows: &[usize], cols: &[usize]) -> QPoly {
        let sub = self.matrix.num.submatrix(rows, cols);
        sub.det_bareiss(|x, y| x.exact_div(y).expect("Bareiss division is exact"))
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<MinorResult> {
        self.check_indices(rows, cols)?;
        let a = self.character_route(rows, cols);
        let b = self.direct_route(rows, cols);
        let den = self.kernels.den.pow(rows.len() as u32);
        debug_assert_eq!(self.kernels.den, self.matrix.den);
        Ok(MinorResult {
            agree: a == b,
            value: RatQ::new(a, den)?,
        })
    }

    /// True iff both routes agree, without reducing the value.
    pub fn agrees(&self, rows: &[usize], cols: &[usize]) -> Result<bool> {
        self.check_indices(rows, cols)?;
        Ok(self.character_route(rows, cols) == self.direct_route(rows, cols))
    }
}

/// Minor with rows `rows` and columns `cols`, computed both by the
/// character-table formula and by a direct determinant.
pub fn minor_series(g: &GroupModel, kind: Kind, sign: Sign, rows: &[usize], cols: &[usize]) -> Result<MinorResult> {
    let e = MinorEngine::new(g, kind, sign)?;
    let r = e.minor(rows, cols)?;
    if !r.agree {
        return Err(Error::MinorDisagreement {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
        });
    }
    Ok(r)
}

/// Row `i` as row 0 times the CG matrix of R_i.
pub fn row_via_first(g: &GroupModel, kind: Kind, sign: Sign, i: usize) -> Result<Vec<RatQ>> {
    Ok(row_via_first_frac(g, &series_matrix(g, kind, sign)?.matrix, i)?
        .entries()
        .row(0)
        .to_vec())
}

fn row_via_first_frac(g: &GroupModel, m: &FracMatrix, i: usize) -> Result<FracMatrix> {
    if i >= g.num_classes() {
        return Err(Error::Index(format!("irreducible {i} out of range")));
    }
    let ci = cg_matrix(g, g.character(i))?;
    let row0 = m.submatrix(&[0], &(0..g.num_classes()).collect::<Vec<_>>());
    Ok(row0.mul(&FracMatrix::from_cyclo(&ci)))
}

/// Checks row i == row 0 · M[R_i] for every i.
pub fn row_formula_check(g: &GroupModel, m: &FracMatrix) -> Result<IdentityCheck> {
    let n = g.num_classes();
    let all: Vec<usize> = (0..n).collect();
    for i in 0..n {
        let via = row_via_first_frac(g, m, i)?;
        let direct = m.submatrix(&[i], &all);
        if let Some(w) = via.mismatch(&direct) {
            return Ok(IdentityCheck::from_witness(
                "M^i = M^0 M[R_i]",
                Some(vec![i, w.get(1).copied().unwrap_or(0)]),
            ));
        }
    }
    Ok(IdentityCheck::new("M^i = M^0 M[R_i]", true))
}

/// The four series relations as exact matrix identities:
/// A(-q)·S(q) = E; (E - qM[R])·T(q) = E; A(q)·(P(-q) - dE) = -q A'(q);
/// S(q)·(P(q) - dE) = q S'(q). Here dE = M[ψ^0 R] since ψ^0 R has trace d.
pub fn relation_suite(g: &GroupModel) -> Result<Report> {
    let n = g.num_classes();
    let id = FracMatrix::identity(n);
    let s = series_matrix(g, Kind::S, Sign::Plus)?.matrix;
    let a_minus = series_matrix(g, Kind::A, Sign::Minus)?.matrix;
    let a = series_matrix(g, Kind::A, Sign::Plus)?.matrix;
    let t = series_matrix(g, Kind::T, Sign::Plus)?.matrix;
    let p = series_matrix(g, Kind::P, Sign::Plus)?.matrix;
    let p_minus = series_matrix(g, Kind::P, Sign::Minus)?.matrix;
    let m_r = FracMatrix::from_cyclo(&defining_cg(g));
    let d_e = id.scale_cyclo(&Cyclo::from_int(g.dim_defining as i64));
    let q = QPoly::q();

    let mut r = Report::new();
    r.push(IdentityCheck::from_witness("A(-q) S(q) = E", a_minus.mul(&s).mismatch(&id)));
    let lhs = id.sub(&m_r.scale(&q)).mul(&t);
    r.push(IdentityCheck::from_witness("(E - qM[R]) T(q) = E", lhs.mismatch(&id)));
    let lhs = a.mul(&p_minus.sub(&d_e));
    let rhs = a.derivative().scale(&-&q);
    r.push(IdentityCheck::from_witness("A(q) (P(-q) - P0) = -q A'(q)", lhs.mismatch(&rhs)));
    let lhs = s.mul(&p.sub(&d_e));
    let rhs = s.derivative().scale(&q);
    r.push(IdentityCheck::from_witness("S(q) (P(q) - P0) = q S'(q)", lhs.mismatch(&rhs)));
    Ok(r)
}

impl QPoly {
    fn mul_ref(&self, o: &QPoly) -> QPoly {
        self * o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_cyclic_su2, make_symmetric};

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    fn r(n: &[i64], d: &[i64]) -> RatQ {
        RatQ::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn z2_examples() {
        let g = make_cyclic_su2(2).unwrap();
        assert_eq!(defining_cg(&g), Matrix::from_ints(&[vec![0, 2], vec![2, 0]]));
        assert!(cg_matrix(&g, g.character(0)).unwrap().is_identity());
        let s = series_matrix(&g, Kind::S, Sign::Plus).unwrap();
        assert_eq!(s.entry(0, 0), r(&[1, 0, 1], &[1, 0, -2, 0, 1]));
        let a = series_matrix(&g, Kind::A, Sign::Minus).unwrap();
        assert_eq!(a.entry(0, 0), RatQ::from_poly(p(&[1, 0, 1])));
        assert_eq!(a.entry(0, 1), RatQ::from_poly(p(&[0, -2])));
        assert!(a.matrix.mul(&s.matrix).mismatch(&FracMatrix::identity(2)).is_none());
        let m = minor_series(&g, Kind::S, Sign::Plus, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(m.value, r(&[1], &[1, 0, -2, 0, 1]));
        let row = row_via_first(&g, Kind::S, Sign::Plus, 1).unwrap();
        assert_eq!(row[0], r(&[0, 2], &[1, 0, -2, 0, 1]));
        assert_eq!(row[1], r(&[1, 0, 1], &[1, 0, -2, 0, 1]));
    }

    #[test]
    fn s3_cg() {
        let g = make_symmetric(3).unwrap();
        let m = cg_matrix(&g, g.character(1)).unwrap();
        assert!(m.is_symmetric());
        assert_eq!(m[(1, 1)], Cyclo::one());
    }

    #[test]
    fn relations_small() {
        for g in [make_cyclic_su2(2).unwrap(), make_cyclic_su2(5).unwrap(), make_symmetric(3).unwrap()] {
            let rep = relation_suite(&g).unwrap();
            assert!(rep.pass(), "{}: {rep}", g.name);
        }
    }
}
