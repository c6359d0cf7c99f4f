//! Dense matrices over the exact scalar types.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};
use crate::qseries::{render, QPoly, RatQ};

/// Commutative ring operations needed by the generic matrix routines.
pub trait Ring: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

/// Rings with exact division by nonzero elements.
pub trait Field: Ring {
    fn div(&self, o: &Self) -> Result<Self>;
}

macro_rules! ring_via_refs {
    ($t:ty) => {
        impl Ring for $t {
            fn zero() -> Self {
                <$t as Zero>::zero()
            }
            fn one() -> Self {
                <$t as One>::one()
            }
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn add(&self, o: &Self) -> Self {
                self + o
            }
            fn sub(&self, o: &Self) -> Self {
                self - o
            }
            fn mul(&self, o: &Self) -> Self {
                self * o
            }
        }
    };
}

ring_via_refs!(Cyclo);
ring_via_refs!(QPoly);
ring_via_refs!(Rational);

impl Ring for RatQ {
    fn zero() -> Self {
        RatQ::zero()
    }
    fn one() -> Self {
        RatQ::one()
    }
    fn is_zero(&self) -> bool {
        RatQ::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Field for Cyclo {
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
}

impl Field for Rational {
    fn div(&self, o: &Self) -> Result<Self> {
        if Zero::is_zero(o) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / o)
    }
}

impl Field for RatQ {
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::LengthMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Drops row 0 and column 0.
    pub fn truncate_first(&self) -> Matrix<T> {
        let r: Vec<usize> = (1..self.rows).collect();
        let c: Vec<usize> = (1..self.cols).collect();
        self.submatrix(&r, &c)
    }
}

impl<T: Clone + Send + Sync> Matrix<T> {
    /// Entrywise parallel map.
    pub fn par_map<U: Clone + Send>(&self, f: impl Fn(&T) -> U + Sync + Send) -> Matrix<U> {
        use rayon::prelude::*;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.par_iter().map(f).collect(),
        }
    }

    /// Parallel construction from an index function.
    pub fn par_from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T + Sync + Send) -> Self {
        use rayon::prelude::*;
        let data = (0..rows * cols)
            .into_par_iter()
            .map(|k| f(k / cols.max(1), k % cols.max(1)))
            .collect();
        Matrix { rows, cols, data }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        *x == T::one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn add(&self, o: &Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].add(&o[(i, j)]))
    }

    pub fn sub(&self, o: &Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].sub(&o[(i, j)]))
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|x| x.mul(c))
    }

    pub fn mul(&self, o: &Self) -> Matrix<T> {
        assert_eq!(self.cols, o.rows, "matrix shapes do not compose");
        Matrix::par_from_fn(self.rows, o.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &o[(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    pub fn pow(&self, e: u32) -> Matrix<T> {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| acc.add(&self[(i, j)].mul(&v[j])))
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[T], m: &Matrix<T>) -> Vec<T> {
        assert_eq!(v.len(), m.rows);
        (0..m.cols)
            .map(|j| (0..m.rows).fold(T::zero(), |acc, i| acc.add(&v[i].mul(&m[(i, j)]))))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by cofactor-free Bareiss elimination; valid over integral
    /// domains with exact division.
    pub fn det_bareiss(&self, exact_div: impl Fn(&T, &T) -> T) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = T::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = !sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(k, k)].mul(&a[(i, j)]).sub(&a[(i, k)].mul(&a[(k, j)]));
                    a[(i, j)] = exact_div(&v, &prev);
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            d.neg()
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by Gaussian elimination over a field.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
                return T::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = det.neg();
            }
            let pivot = a[(k, k)].clone();
            det = det.mul(&pivot);
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].div(&pivot).expect("nonzero pivot");
                for j in k..n {
                    let v = a[(i, j)].sub(&f.mul(&a[(k, j)]));
                    a[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix<T>> {
        if !self.is_square() {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<T>::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&r| !a[(r, k)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pivot = a[(k, k)].clone();
            for j in 0..n {
                a[(k, j)] = a[(k, j)].div(&pivot)?;
                inv[(k, j)] = inv[(k, j)].div(&pivot)?;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let v = a[(i, j)].sub(&f.mul(&a[(k, j)]));
                    a[(i, j)] = v;
                    let w = inv[(i, j)].sub(&f.mul(&inv[(k, j)]));
                    inv[(i, j)] = w;
                }
            }
        }
        Ok(inv)
    }
}

impl Matrix<Cyclo> {
    pub fn conj(&self) -> Matrix<Cyclo> {
        self.map(Cyclo::conj)
    }

    pub fn trace(&self) -> Cyclo {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Matrix<Cyclo> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Cyclo::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    /// Coefficients `c_0 = 1, c_1, …, c_d` of `det(E - qA) = Σ c_k q^k`, by
    /// the Faddeev-LeVerrier recursion.
    pub fn det_one_minus_q(&self) -> QPoly {
        assert!(self.is_square());
        let n = self.rows;
        // characteristic polynomial det(xE - A) = Σ a_k x^{n-k}, a_0 = 1
        let mut coeffs = vec![Cyclo::one()];
        let mut m = Matrix::<Cyclo>::zeros(n, n);
        for k in 1..=n {
            let prev = coeffs[k - 1].clone();
            let shifted = Matrix::from_fn(n, n, |i, j| {
                let base = m[(i, j)].clone();
                if i == j {
                    &base + &prev
                } else {
                    base
                }
            });
            m = self.mul(&shifted);
            let c = m.trace().scale(&Rational::new((-1).into(), (k as i64).into()));
            coeffs.push(c);
        }
        // det(E - qA) = q^n det(q^{-1}E - A) = Σ a_k q^k
        QPoly::new(coeffs)
    }
}

impl Matrix<RatQ> {
    pub fn derivative(&self) -> Matrix<RatQ> {
        self.par_map(|x| x.derivative(1))
    }

    pub fn eval(&self, x: &Cyclo) -> Result<Matrix<Cyclo>> {
        let rows = self
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(|e| e.eval(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn subst_neg(&self) -> Matrix<RatQ> {
        self.map(RatQ::subst_neg)
    }

    pub fn from_cyclo(m: &Matrix<Cyclo>) -> Matrix<RatQ> {
        m.map(|c| RatQ::from_cyclo(c.clone()))
    }

    pub fn scale_cyclo(&self, c: &Cyclo) -> Matrix<RatQ> {
        self.map(|x| x.scale(c))
    }
}

pub fn matrix_json<T: Clone>(m: &Matrix<T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(&f).collect()))
            .collect(),
    )
}

pub fn cyclo_matrix_json(m: &Matrix<Cyclo>) -> Value {
    matrix_json(m, render::cyclo_json)
}

pub fn ratq_matrix_json(m: &Matrix<RatQ>) -> Value {
    matrix_json(m, render::ratq_json)
}

/// Aligned plain-text table.
pub fn matrix_text<T: Clone>(m: &Matrix<T>, f: impl Fn(&T) -> String) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(&f).collect()).collect();
    let mut widths = vec![0; m.cols()];
    for row in &cells {
        for (j, c) in row.iter().enumerate() {
            widths[j] = widths[j].max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{}{}", " ".repeat(widths[j] - c.chars().count()), c))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn matrix_latex<T: Clone>(m: &Matrix<T>, f: impl Fn(&T) -> String) -> String {
    let mut out = String::from("\\begin{pmatrix}\n");
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(&f).collect();
        out.push_str(&row.join(" & "));
        if i + 1 < m.rows() {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{pmatrix}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let a = Matrix::from_ints(&[vec![2, -1], vec![-1, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv[(0, 0)], Cyclo::frac(2, 3));
        assert_eq!(inv[(0, 1)], Cyclo::frac(1, 3));
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.det(), Cyclo::from_int(3));
        let s = Matrix::from_ints(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn faddeev_leverrier() {
        let r = Matrix::from_rows(vec![
            vec![Cyclo::root_of_unity(5, 1), Cyclo::zero()],
            vec![Cyclo::zero(), Cyclo::root_of_unity(5, 4)],
        ])
        .unwrap();
        let p = r.det_one_minus_q();
        let t = Cyclo::root_of_unity(5, 1) + Cyclo::root_of_unity(5, 4);
        assert_eq!(p, QPoly::new(vec![Cyclo::one(), -t, Cyclo::one()]));
        let perm = Matrix::from_ints(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(perm.det_one_minus_q(), QPoly::from_ints(&[1, 0, 0, -1]));
    }

    #[test]
    fn bareiss_matches_gauss() {
        let a = Matrix::from_ints(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        let b = a.det_bareiss(|x, y| x / y);
        assert_eq!(b, a.det());
        assert_eq!(b, Cyclo::from_int(-90));
    }
}
