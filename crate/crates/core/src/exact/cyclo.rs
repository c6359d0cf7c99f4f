//! Elements of cyclotomic fields `Q(ζ_m)` in the power basis.
//!
//! A value is stored as `(num_0 + num_1 ζ + ... + num_{k} ζ^k) / den` with
//! `k < φ(m)`, reduced modulo the m-th cyclotomic polynomial. Conductors
//! congruent to 2 mod 4 are folded to `m/2` (the fields coincide) and values
//! with only a constant term always carry conductor 1, so rationals are
//! recognised structurally.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use super::Rational;
use crate::error::{Error, Result};

/// Cached data for one conductor.
#[derive(Debug)]
pub(crate) struct Field {
    pub(crate) phi: usize,
    /// Φ_m, low degree first, monic.
    pub(crate) poly: Vec<BigInt>,
}

static FIELDS: Lazy<RwLock<HashMap<u64, Arc<Field>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Returns the (cached) cyclotomic field data for conductor `m`.
pub(crate) fn field(m: u64) -> Arc<Field> {
    if let Some(f) = FIELDS.read().expect("field cache poisoned").get(&m) {
        return f.clone();
    }
    let poly = cyclotomic_poly(m);
    debug_assert_eq!(poly.len() - 1, euler_phi(m) as usize);
    let f = Arc::new(Field {
        phi: poly.len() - 1,
        poly,
    });
    FIELDS
        .write()
        .expect("field cache poisoned")
        .entry(m)
        .or_insert(f)
        .clone()
}

/// Φ_m by the division formula Φ_m = (x^m - 1) / Π_{d | m, d < m} Φ_d.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "conductor must be positive");
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let f = field(d);
            p = exact_div_monic(&p, &f.poly);
        }
    }
    p
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quo[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Reduces a dense coefficient vector modulo Φ_m (in place) and truncates to φ(m).
fn reduce_mod(v: &mut Vec<BigInt>, f: &Field) {
    let phi = f.phi;
    if v.len() > phi {
        for i in (phi..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[i]);
            for j in 0..phi {
                v[i - phi + j] -= &c * &f.poly[j];
            }
        }
        v.truncate(phi);
    }
}

/// An exact element of the cyclotomic field `Q(ζ_m)`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo {
            conductor: 1,
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        let (n, d) = (r.numer().clone(), r.denom().clone());
        Self::normalize(1, vec![n], d)
    }

    /// `n/d` as a field element.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(n.into(), d.into()))
    }

    /// ζ_m^k for any integer `k`.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        assert!(m >= 1);
        let e = k.rem_euclid(m as i64) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        let f = field(m);
        reduce_mod(&mut v, &f);
        Self::normalize(m, v, BigInt::one())
    }

    /// Σ c_k ζ_m^k from arbitrary exponents `k` (reduced modulo m first).
    pub fn from_terms(m: u64, terms: &[(i64, Rational)]) -> Self {
        assert!(m >= 1);
        let mut acc = Cyclo::zero();
        for (k, c) in terms {
            acc = &acc + &(&Cyclo::root_of_unity(m, *k) * &Cyclo::from_rational(c.clone()));
        }
        acc
    }

    fn normalize(m: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        while num.last().is_some_and(Zero::is_zero) {
            num.pop();
        }
        if num.is_empty() {
            return Cyclo::zero();
        }
        let mut g = den.clone();
        for c in &num {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den = &den / &g;
        }
        if num.len() == 1 {
            return Cyclo {
                conductor: 1,
                num,
                den,
            };
        }
        if m % 4 == 2 {
            return Self::fold_half(m, num, den);
        }
        Cyclo {
            conductor: m,
            num,
            den,
        }
    }

    /// Rewrites an element of Q(ζ_{2k}), k odd, in the basis of Q(ζ_k)
    /// using ζ_{2k} = -ζ_k^{(k+1)/2}.
    fn fold_half(m: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        let k = m / 2;
        let half = (k + 1) / 2;
        let mut v = vec![BigInt::zero(); k as usize];
        for (e, c) in num.into_iter().enumerate() {
            let e = e as u64;
            let target = ((e * half) % k) as usize;
            if e % 2 == 0 {
                v[target] += c;
            } else {
                v[target] -= c;
            }
        }
        let f = field(k);
        reduce_mod(&mut v, &f);
        Self::normalize(k, v, den)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.num.len() <= 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.num.len() {
            0 => Some(Rational::zero()),
            1 => Some(Rational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        r.is_integer().then(|| r.to_integer())
    }

    /// Nonzero power-basis coefficients `(k, c_k)` in the field of `self.conductor()`.
    pub fn terms(&self) -> Vec<(usize, Rational)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rational::new(c.clone(), self.den.clone())))
            .collect()
    }

    /// Power-basis coefficients after embedding into Q(ζ_target).
    /// `target` must be a multiple of the conductor.
    pub fn terms_in(&self, target: u64) -> Vec<(usize, Rational)> {
        let (num, den) = self.lift(target);
        num.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rational::new(c, den.clone())))
            .collect()
    }

    /// Numerators in Q(ζ_target), padded to φ(target), with the shared denominator.
    pub(crate) fn lift(&self, target: u64) -> (Vec<BigInt>, BigInt) {
        assert!(
            target % self.conductor == 0,
            "cannot embed conductor {} into {}",
            self.conductor,
            target
        );
        let f = field(target);
        if target == self.conductor {
            let mut v = self.num.clone();
            v.resize(f.phi, BigInt::zero());
            return (v, self.den.clone());
        }
        let step = (target / self.conductor) as usize;
        let top = (self.num.len().max(1) - 1) * step;
        let mut v = vec![BigInt::zero(); (top + 1).max(f.phi)];
        for (k, c) in self.num.iter().enumerate() {
            v[k * step] = c.clone();
        }
        reduce_mod(&mut v, &f);
        v.resize(f.phi, BigInt::zero());
        (v, self.den.clone())
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (u64, Vec<BigInt>, BigInt, Vec<BigInt>, BigInt) {
        if a.conductor == b.conductor {
            return (
                a.conductor,
                a.num.clone(),
                a.den.clone(),
                b.num.clone(),
                b.den.clone(),
            );
        }
        let m = a.conductor.lcm(&b.conductor);
        let (an, ad) = a.lift(m);
        let (bn, bd) = b.lift(m);
        (m, an, ad, bn, bd)
    }

    fn add_impl(a: &Cyclo, b: &Cyclo, negate_b: bool) -> Cyclo {
        if b.is_zero() {
            return a.clone();
        }
        if a.is_zero() {
            return if negate_b { -b } else { b.clone() };
        }
        let (m, an, ad, bn, bd) = Self::common(a, b);
        let l = ad.lcm(&bd);
        let fa = &l / &ad;
        let fb = &l / &bd;
        let len = an.len().max(bn.len());
        let mut v = Vec::with_capacity(len);
        for i in 0..len {
            let x = an.get(i).map(|c| c * &fa).unwrap_or_default();
            let y = bn.get(i).map(|c| c * &fb).unwrap_or_default();
            v.push(if negate_b { x - y } else { x + y });
        }
        Self::normalize(m, v, l)
    }

    fn mul_impl(a: &Cyclo, b: &Cyclo) -> Cyclo {
        if a.is_zero() || b.is_zero() {
            return Cyclo::zero();
        }
        if a.conductor == 1 || b.conductor == 1 {
            let (r, s) = if a.conductor == 1 { (a, b) } else { (b, a) };
            let c = &r.num[0];
            let v = s.num.iter().map(|x| x * c).collect();
            return Self::normalize(s.conductor, v, &r.den * &s.den);
        }
        let (m, an, ad, bn, bd) = Self::common(a, b);
        let an = trim(an);
        let bn = trim(bn);
        let mut v = vec![BigInt::zero(); an.len() + bn.len() - 1];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        reduce_mod(&mut v, &field(m));
        Self::normalize(m, v, ad * bd)
    }

    /// Scales by a rational.
    pub fn scale(&self, r: &Rational) -> Cyclo {
        let v = self.num.iter().map(|x| x * r.numer()).collect();
        Self::normalize(self.conductor, v, &self.den * r.denom())
    }

    /// Galois automorphism ζ_m ↦ ζ_m^k, `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclo {
        let m = self.conductor;
        if m == 1 {
            return self.clone();
        }
        let k = k.rem_euclid(m as i64) as u64;
        assert!(k.gcd(&m) == 1, "{k} is not a unit modulo {m}");
        let mut v = vec![BigInt::zero(); m as usize];
        for (e, c) in self.num.iter().enumerate() {
            v[((e as u64 * k) % m) as usize] += c;
        }
        reduce_mod(&mut v, &field(m));
        Self::normalize(m, v, self.den.clone())
    }

    /// Complex conjugation, ζ_m ↦ ζ_m^{m-1}.
    pub fn conj(&self) -> Cyclo {
        self.galois(-1)
    }

    /// Multiplicative inverse via the field norm: a⁻¹ = Π_{σ≠1} σ(a) / N(a).
    pub fn inv(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Cyclo::from_rational(r.recip()));
        }
        let m = self.conductor;
        let mut others = Cyclo::one();
        for k in 2..m {
            if k.gcd(&m) == 1 {
                others = &others * &self.galois(k as i64);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .expect("norm of a cyclotomic element is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Cyclo) -> Result<Cyclo> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Cyclo {
        let mut acc = Cyclo::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Floating-point value, for diagnostics and tests only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let m = self.conductor as f64;
        let den = bigint_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / m;
            let c = bigint_to_f64(c) / den;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigInt::zero());
    }
    v
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.num == other.num && self.den == other.den;
        }
        if self.is_rational() || other.is_rational() {
            return false;
        }
        let m = self.conductor.lcm(&other.conductor);
        self.lift(m) == other.lift(m)
    }
}

impl Eq for Cyclo {}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Cyclo::from_int(n)
    }
}

impl From<Rational> for Cyclo {
    fn from(r: Rational) -> Self {
        Cyclo::from_rational(r)
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::one()
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &'a Cyclo) -> Cyclo {
        Cyclo::add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &'a Cyclo) -> Cyclo {
        Cyclo::add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &'a Cyclo) -> Cyclo {
        Cyclo::mul_impl(self, rhs)
    }
}

/// Panics on division by zero; use [`Cyclo::checked_div`] to handle it.
impl<'a> Div<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn div(self, rhs: &'a Cyclo) -> Cyclo {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: Cyclo) -> Cyclo {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: &'a Cyclo) -> Cyclo {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |a, b| &a + &b)
    }
}

/// GAP-style rendering, e.g. `-1/2+3*E(5)^2`.
impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "E({})", self.conductor)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64, k: i64) -> Cyclo {
        Cyclo::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |m| {
            cyclotomic_poly(m)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(p(105).len() - 1, 48);
        assert!(p(105).contains(&-2));
    }

    #[test]
    fn examples_from_arith() {
        assert!((z(4, 1) + z(4, 3)).is_zero());
        assert_eq!(z(3, 1) * z(3, 1), -Cyclo::one() - z(3, 1));
        let inv = (Cyclo::one() + z(3, 1)).inv().unwrap();
        assert_eq!(inv, -z(3, 1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Cyclo::one().checked_div(&Cyclo::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(z(5, 1).conj(), z(5, 4));
        assert_eq!(Cyclo::frac(3, 7).conj(), Cyclo::frac(3, 7));
        let r = z(3, 1) + z(3, 2);
        assert_eq!(r.conj(), r);
        assert_eq!(r, Cyclo::from_int(-1));
    }

    #[test]
    fn conductor_folding_and_rationals() {
        // ζ₆ = -ζ₃²
        let x = z(6, 1);
        assert_eq!(x.conductor(), 3);
        assert_eq!(x, -z(3, 2));
        assert_eq!(z(2, 1), Cyclo::from_int(-1));
        assert!(z(2, 1).is_rational());
        // ζ₂₀⁴ = ζ₅
        assert_eq!(z(20, 4), z(5, 1));
        assert_eq!((z(20, 4) - z(5, 1)).conductor(), 1);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for m in 2..=30 {
            let s: Cyclo = (0..m as i64).map(|k| z(m, k)).sum();
            assert!(s.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn mixed_conductor_equality() {
        // √5 = 1 + 2(ζ₅ + ζ₅⁴); lift through Q(ζ₂₀).
        let s5 = Cyclo::one() + (z(5, 1) + z(5, 4)) * Cyclo::from_int(2);
        let s5_20 = Cyclo::one() + (z(20, 4) + z(20, 16)) * Cyclo::from_int(2);
        assert_eq!(s5, s5_20);
        assert_eq!(&s5 * &s5, Cyclo::from_int(5));
        let i = z(4, 1);
        assert_eq!(&(&s5 * &i) * &i, -s5.clone());
        assert_eq!((&s5 * &i).conductor(), 20);
    }

    #[test]
    fn inverse_in_large_field() {
        let a = Cyclo::from_int(3) + z(20, 1) - z(20, 7) * Cyclo::frac(2, 3);
        let b = a.inv().unwrap();
        assert!((a * b).is_one());
    }

    #[test]
    fn display_is_gap_like() {
        assert_eq!(z(5, 2).to_string(), "E(5)^2");
        let x = Cyclo::frac(-1, 2) + z(5, 1) * Cyclo::from_int(3);
        assert_eq!(x.to_string(), "-1/2+3*E(5)");
        assert_eq!(Cyclo::zero().to_string(), "0");
    }
}
