use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};

/// Univariate polynomial in `q` with cyclotomic coefficients, low degree first.
/// Never stores a zero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<Cyclo>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Cyclo>) -> Self {
        while coeffs.last().is_some_and(Cyclo::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Cyclo::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Cyclo::one())
    }

    pub fn constant(c: Cyclo) -> Self {
        Self::new(vec![c])
    }

    /// `c q^k`
    pub fn monomial(c: Cyclo, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Cyclo::zero(); k + 1];
        v[k] = c;
        QPoly { coeffs: v }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(Cyclo::one(), 1)
    }

    /// `1 - q^k`
    pub fn one_minus_q_pow(k: usize) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut v = vec![Cyclo::zero(); k + 1];
        v[0] = Cyclo::one();
        v[k] = Cyclo::from_int(-1);
        QPoly { coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` stands for the degree of the zero polynomial (−∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Cyclo {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> Option<&Cyclo> {
        self.coeffs.last()
    }

    /// Nonzero terms as `(degree, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Cyclo)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Cyclo::is_rational)
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn has_nonneg_int_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| {
            c.to_integer()
                .is_some_and(|n| n >= num_bigint::BigInt::zero())
        })
    }

    /// Smallest conductor containing every coefficient.
    pub fn conductor(&self) -> u64 {
        self.coeffs.iter().fold(1, |m, c| m.lcm(&c.conductor()))
    }

    pub fn scale(&self, c: &Cyclo) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x.scale(r)).collect())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Cyclo::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        QPoly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Cyclo) -> Cyclo {
        let mut acc = Cyclo::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_at_one(&self) -> Cyclo {
        self.coeffs.iter().cloned().sum()
    }

    /// Substitutes `q ↦ -q`.
    pub fn subst_neg(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Substitutes `q ↦ q^k`.
    pub fn subst_pow(&self, k: usize) -> QPoly {
        if self.is_zero() || k == 0 {
            return QPoly::constant(self.eval_at_one());
        }
        let mut v = vec![Cyclo::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        QPoly::new(v)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Cyclo::from_int(k as i64))
                .collect(),
        )
    }

    pub fn conj(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(Cyclo::conj).collect())
    }

    /// Divides by the leading coefficient; returns the monic polynomial.
    pub fn monic(&self) -> QPoly {
        match self.lead() {
            None => QPoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.lead().unwrap().inv()?;
        if self.coeffs.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Cyclo::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lead_inv;
            for (j, dj) in d.coeffs.iter().enumerate().take(dd) {
                if !dj.is_zero() {
                    rem[i - dd + j] = &rem[i - dd + j] - &(&c * dj);
                }
            }
            rem[i] = Cyclo::zero();
            quo[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((QPoly::new(quo), QPoly::new(rem)))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (monic Euclidean algorithm).
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return QPoly::one();
        }
        let (mut r0, mut r1) = if a.coeffs.len() >= b.coeffs.len() {
            (a.monic(), b.monic())
        } else {
            (b.monic(), a.monic())
        };
        loop {
            let (_, r) = r0.div_rem(&r1).expect("nonzero divisor");
            if r.is_zero() {
                return r1;
            }
            if r.is_constant() {
                return QPoly::one();
            }
            r0 = r1;
            r1 = r.monic();
        }
    }

    pub fn lcm(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_zero() || b.is_zero() {
            return QPoly::zero();
        }
        let g = QPoly::gcd(a, b);
        let prod = &a.monic() * &b.monic();
        prod.exact_div(&g).expect("gcd divides the product")
    }

    /// Multiplicity of the root `q = 1`.
    pub fn order_at_one(&self) -> usize {
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() && p.eval_at_one().is_zero() {
            p = p.div_by_q_minus_one();
            k += 1;
        }
        k
    }

    /// Synthetic division by `(q - 1)`; the remainder is dropped.
    pub fn div_by_q_minus_one(&self) -> QPoly {
        let n = self.coeffs.len();
        if n <= 1 {
            return QPoly::zero();
        }
        let mut quo = vec![Cyclo::zero(); n - 1];
        let mut carry = Cyclo::zero();
        for i in (1..n).rev() {
            carry = &carry + &self.coeffs[i];
            quo[i - 1] = carry.clone();
        }
        QPoly::new(quo)
    }

    /// Lifts every coefficient to the rationals, if possible.
    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(Cyclo::to_rational).collect()
    }

    /// Exponent multiset: each degree repeated by its (nonnegative integer) coefficient.
    pub fn exponents(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            let n = c.to_integer()?;
            let n: usize = n.try_into().ok()?;
            out.extend(std::iter::repeat_n(k, n));
        }
        Some(out)
    }
}

impl From<Cyclo> for QPoly {
    fn from(c: Cyclo) -> Self {
        QPoly::constant(c)
    }
}

fn add_sub(a: &QPoly, b: &QPoly, sub: bool) -> QPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i);
        let y = b.coeffs.get(i);
        v.push(match (x, y) {
            (Some(x), Some(y)) => {
                if sub {
                    x - y
                } else {
                    x + y
                }
            }
            (Some(x), None) => x.clone(),
            (None, Some(y)) => {
                if sub {
                    -y
                } else {
                    y.clone()
                }
            }
            (None, None) => unreachable!(),
        });
    }
    QPoly::new(v)
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &'a QPoly) -> QPoly {
        add_sub(self, rhs, false)
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &'a QPoly) -> QPoly {
        add_sub(self, rhs, true)
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &'a QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Cyclo::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] = &v[i + j] + &(x * y);
                }
            }
        }
        QPoly::new(v)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $f(self, rhs: QPoly) -> QPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a QPoly> for QPoly {
            type Output = QPoly;
            fn $f(self, rhs: &'a QPoly) -> QPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly::one()
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Plain rendering, ascending powers, e.g. `1 - 2*q + q^2`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::poly_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        // (1-q^2)^2 and (1-q)^3 share (q-1)^2
        let a = QPoly::one_minus_q_pow(2).pow(2);
        let b = QPoly::one_minus_q_pow(1).pow(3);
        let g = QPoly::gcd(&a, &b);
        assert_eq!(g, QPoly::from_ints(&[1, -2, 1]));
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(a.order_at_one(), 2);
    }

    #[test]
    fn gcd_over_cyclotomic_coefficients() {
        // (q - ζ₃)(q - 2) and (q - ζ₃)(q + 1)
        let w = Cyclo::root_of_unity(3, 1);
        let lin = QPoly::new(vec![-&w, Cyclo::one()]);
        let a = &lin * &QPoly::from_ints(&[-2, 1]);
        let b = &lin * &QPoly::from_ints(&[1, 1]);
        assert_eq!(QPoly::gcd(&a, &b), lin);
    }

    #[test]
    fn derivative_and_substitution() {
        let p = QPoly::from_ints(&[1, 0, 1]);
        assert_eq!(p.derivative().derivative().eval_at_one(), Cyclo::from_int(2));
        assert_eq!(QPoly::from_ints(&[0, 1, 1]).subst_neg(), QPoly::from_ints(&[0, -1, 1]));
        assert_eq!(QPoly::from_ints(&[1, 1]).subst_pow(3), QPoly::from_ints(&[1, 0, 0, 1]));
        assert_eq!(QPoly::zero().degree(), None);
    }
}
