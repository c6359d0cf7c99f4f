use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};

use super::QPoly;

/// A rational function `num(q) / den(q)` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatQ {
    num: QPoly,
    den: QPoly,
}

impl RatQ {
    /// Builds the canonical form of `num / den`.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatQ::zero());
        }
        let g = QPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        Ok(Self::from_coprime(num, den))
    }

    /// `num / den` already known to be coprime; only normalises the leading coefficient.
    pub(crate) fn from_coprime(num: QPoly, den: QPoly) -> Self {
        let lead = den.lead().expect("nonzero denominator").clone();
        if lead.is_one() {
            return RatQ { num, den };
        }
        let inv = lead.inv().expect("nonzero leading coefficient");
        RatQ {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatQ {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatQ::from_poly(QPoly::one())
    }

    pub fn q() -> Self {
        RatQ::from_poly(QPoly::q())
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatQ {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_cyclo(c: Cyclo) -> Self {
        RatQ::from_poly(QPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatQ::from_cyclo(Cyclo::from_int(n))
    }

    /// `1 / p`
    pub fn recip_poly(p: QPoly) -> Result<Self> {
        RatQ::new(QPoly::one(), p)
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<QPoly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational() && self.den.is_rational()
    }

    pub fn conductor(&self) -> u64 {
        num_integer::Integer::lcm(&self.num.conductor(), &self.den.conductor())
    }

    pub fn scale(&self, c: &Cyclo) -> RatQ {
        if c.is_zero() {
            return RatQ::zero();
        }
        RatQ {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> RatQ {
        self.scale(&Cyclo::from_rational(r.clone()))
    }

    pub fn inv(&self) -> Result<RatQ> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatQ::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatQ) -> Result<RatQ> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> RatQ {
        RatQ::from_coprime(self.num.pow(e), self.den.pow(e))
    }

    pub fn conj(&self) -> RatQ {
        RatQ::from_coprime(self.num.conj(), self.den.conj())
    }

    /// Substitutes `q ↦ -q`.
    pub fn subst_neg(&self) -> RatQ {
        RatQ::from_coprime(self.num.subst_neg(), self.den.subst_neg())
    }

    /// Formal derivative iterated `order` times.
    pub fn derivative(&self, order: usize) -> RatQ {
        let mut cur = self.clone();
        for _ in 0..order {
            let n = &(&cur.num.derivative() * &cur.den) - &(&cur.num * &cur.den.derivative());
            let d = &cur.den * &cur.den;
            cur = RatQ::new(n, d).expect("nonzero denominator");
        }
        cur
    }

    pub fn eval(&self, x: &Cyclo) -> Result<Cyclo> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(x) / &d)
    }

    /// Exponent of `(1 - q)` in the factorisation of `self`; negative for poles.
    pub fn order_at_one(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("order of the zero function".into()));
        }
        Ok(self.num.order_at_one() as i64 - self.den.order_at_one() as i64)
    }

    /// `self · (1 - q)^{-k}`; for `k > 0` the factor must divide `self`.
    pub fn strip_factor(&self, k: i64) -> Result<RatQ> {
        if self.is_zero() || k == 0 {
            return Ok(self.clone());
        }
        if k > 0 {
            let present = self.order_at_one()?;
            if present < k {
                return Err(Error::StripFactor {
                    requested: k,
                    present: present.max(0),
                });
            }
            // (1-q)^k = (-1)^k (q-1)^k
            let mut num = self.num.clone();
            for _ in 0..k {
                num = num.div_by_q_minus_one();
            }
            if k % 2 == 1 {
                num = -num;
            }
            return Ok(RatQ::from_coprime(num, self.den.clone()));
        }
        let factor = QPoly::one_minus_q_pow(1).pow((-k) as u32);
        RatQ::new(&self.num * &factor, self.den.clone())
    }

    /// `lim_{q→1}` for functions without a pole at 1.
    pub fn limit_at_one(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Ok(Cyclo::zero());
        }
        let ord = self.order_at_one()?;
        if ord < 0 {
            return Err(Error::PoleOrder {
                expected: 0,
                found: ord,
            });
        }
        if ord > 0 {
            return Ok(Cyclo::zero());
        }
        self.eval(&Cyclo::one())
    }

    /// `lim_{q→1} (q - 1) self(q)` for a simple pole at 1.
    pub fn residue_at_one(&self) -> Result<Cyclo> {
        let ord = if self.is_zero() { 0 } else { self.order_at_one()? };
        if ord != -1 {
            return Err(Error::PoleOrder {
                expected: -1,
                found: ord,
            });
        }
        Ok(-self.strip_factor(-1)?.eval(&Cyclo::one())?)
    }

    /// Coefficient of `(q - 1)^{-1}` in the Laurent expansion at `q = 1`,
    /// for poles of any order.
    pub fn laurent_residue_at_one(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Ok(Cyclo::zero());
        }
        let ord = self.order_at_one()?;
        if ord >= 0 {
            return Ok(Cyclo::zero());
        }
        let p = (-ord) as usize;
        // self = (-1)^p g / (q - 1)^p with g regular at 1
        let g = self.strip_factor(ord)?;
        let mut val = g.derivative(p - 1).eval(&Cyclo::one())?;
        let fact: BigInt = (1..p).map(BigInt::from).product();
        val = val.scale(&Rational::new(BigInt::from(1), fact));
        Ok(if p % 2 == 1 { -val } else { val })
    }

    /// First `n + 1` Taylor coefficients at `q = 0`.
    pub fn series_prefix(&self, n: usize) -> Result<Vec<Cyclo>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let inv = d0.inv()?;
        let mut out: Vec<Cyclo> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for (j, dj) in self.den.coeffs().iter().enumerate().skip(1).take(k) {
                acc = &acc - &(dj * &out[k - j]);
            }
            out.push(&acc * &inv);
        }
        Ok(out)
    }

    /// Weighted sum Σ w_k f_k computed over one common denominator.
    pub fn weighted_sum(weights: &[Cyclo], items: &[RatQ]) -> RatQ {
        CommonDen::new(items).combine(weights)
    }
}

/// A family of rational functions written over one shared denominator, for
/// evaluating many linear combinations with a single gcd each.
#[derive(Clone, Debug)]
pub struct CommonDen {
    pub den: QPoly,
    pub nums: Vec<QPoly>,
}

impl CommonDen {
    pub fn new(items: &[RatQ]) -> Self {
        let mut den = QPoly::one();
        for it in items {
            if !it.den.is_one() && den.exact_div(&it.den).is_none() {
                den = QPoly::lcm(&den, &it.den);
            }
        }
        let nums = items
            .iter()
            .map(|it| {
                if it.den == den {
                    it.num.clone()
                } else {
                    &it.num * &den.exact_div(&it.den).expect("lcm is a multiple")
                }
            })
            .collect();
        CommonDen { den, nums }
    }

    pub fn combine(&self, weights: &[Cyclo]) -> RatQ {
        assert_eq!(weights.len(), self.nums.len());
        let mut acc = QPoly::zero();
        for (w, n) in weights.iter().zip(&self.nums) {
            if !w.is_zero() && !n.is_zero() {
                acc = &acc + &n.scale(w);
            }
        }
        RatQ::new(acc, self.den.clone()).expect("nonzero denominator")
    }
}

impl Default for RatQ {
    fn default() -> Self {
        RatQ::zero()
    }
}

impl From<QPoly> for RatQ {
    fn from(p: QPoly) -> Self {
        RatQ::from_poly(p)
    }
}

impl From<Cyclo> for RatQ {
    fn from(c: Cyclo) -> Self {
        RatQ::from_cyclo(c)
    }
}

fn add_impl(a: &RatQ, b: &RatQ, sub: bool) -> RatQ {
    let bnum = if sub { -&b.num } else { b.num.clone() };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return RatQ::from_coprime(bnum, b.den.clone());
    }
    if a.den == b.den {
        return RatQ::new(&a.num + &bnum, a.den.clone()).expect("nonzero");
    }
    // Henrici: only the gcd of the denominators can cancel.
    let g = QPoly::gcd(&a.den, &b.den);
    if g.is_one() {
        let num = &(&a.num * &b.den) + &(&bnum * &a.den);
        return RatQ::from_coprime(num, &a.den * &b.den);
    }
    let ad = a.den.exact_div(&g).expect("gcd divides");
    let bd = b.den.exact_div(&g).expect("gcd divides");
    let t = &(&a.num * &bd) + &(&bnum * &ad);
    if t.is_zero() {
        return RatQ::zero();
    }
    let g2 = QPoly::gcd(&t, &g);
    let num = t.exact_div(&g2).expect("gcd divides");
    let den = &(&ad * &bd) * &g.exact_div(&g2).expect("gcd divides");
    RatQ::from_coprime(num, den)
}

fn mul_impl(a: &RatQ, b: &RatQ) -> RatQ {
    if a.is_zero() || b.is_zero() {
        return RatQ::zero();
    }
    let g1 = QPoly::gcd(&a.num, &b.den);
    let g2 = QPoly::gcd(&b.num, &a.den);
    let an = a.num.exact_div(&g1).expect("gcd divides");
    let bd = b.den.exact_div(&g1).expect("gcd divides");
    let bn = b.num.exact_div(&g2).expect("gcd divides");
    let ad = a.den.exact_div(&g2).expect("gcd divides");
    RatQ::from_coprime(&an * &bn, &ad * &bd)
}

impl<'a> Add<&'a RatQ> for &'a RatQ {
    type Output = RatQ;
    fn add(self, rhs: &'a RatQ) -> RatQ {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a RatQ> for &'a RatQ {
    type Output = RatQ;
    fn sub(self, rhs: &'a RatQ) -> RatQ {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a RatQ> for &'a RatQ {
    type Output = RatQ;
    fn mul(self, rhs: &'a RatQ) -> RatQ {
        mul_impl(self, rhs)
    }
}

impl Neg for &RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        RatQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RatQ> for RatQ {
            type Output = RatQ;
            fn $f(self, rhs: RatQ) -> RatQ {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a RatQ> for RatQ {
            type Output = RatQ;
            fn $f(self, rhs: &'a RatQ) -> RatQ {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::ratq_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    fn r(n: &[i64], d: &[i64]) -> RatQ {
        RatQ::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = r(&[1], &[1, -1]);
        assert_eq!(&a * &RatQ::from_poly(p(&[1, -1])), RatQ::one());
        let b = r(&[1], &[1, 1]);
        assert_eq!(&a + &b, r(&[2], &[1, 0, -1]));
        let c = r(&[1, 0, 1], &[1, 0, -2, 0, 1]);
        assert!((&c - &c).is_zero());
        assert_eq!(RatQ::one().checked_div(&RatQ::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_form_has_monic_denominator() {
        let a = r(&[2, 2], &[3, 0, -3]);
        // 2(1+q) / 3(1-q)(1+q) = (-2/3) / (q - 1)
        assert_eq!(a.den(), &p(&[-1, 1]));
        assert_eq!(a.num(), &QPoly::constant(Cyclo::frac(-2, 3)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(RatQ::from_poly(p(&[0, 0, 1])).derivative(1), RatQ::from_poly(p(&[0, 2])));
        let second = RatQ::from_poly(p(&[1, 0, 1])).derivative(2);
        assert_eq!(second.eval(&Cyclo::one()).unwrap(), Cyclo::from_int(2));
        let g = r(&[1], &[1, -1]);
        assert_eq!(g.derivative(1), r(&[1], &[1, -2, 1]));
    }

    #[test]
    fn order_and_strip() {
        let a = r(&[1, 0, -2, 0, 1], &[1, 0, 1]);
        assert_eq!(a.order_at_one().unwrap(), 2);
        // 2(1-q)^2/(1+q)^2 with the factor removed is 2/(1+q)^2 = 1/2 at q=1
        let b = r(&[2, -4, 2], &[1, 2, 1]);
        let s = b.strip_factor(2).unwrap();
        assert_eq!(s.eval(&Cyclo::one()).unwrap(), Cyclo::frac(1, 2));
        assert_eq!(r(&[1], &[1, -1]).order_at_one().unwrap(), -1);
        assert!(matches!(b.strip_factor(3), Err(Error::StripFactor { .. })));
        assert_eq!(b.limit_at_one().unwrap(), Cyclo::zero());
    }

    #[test]
    fn residues() {
        assert_eq!(r(&[1], &[1, -1]).residue_at_one().unwrap(), Cyclo::from_int(-1));
        assert_eq!(r(&[1, 1], &[1, -1]).residue_at_one().unwrap(), Cyclo::from_int(-2));
        // partial fractions: 1/(1-q^2) = (1/2)/(1-q) + (1/2)/(1+q)
        assert_eq!(r(&[1], &[1, 0, -1]).residue_at_one().unwrap(), Cyclo::frac(-1, 2));
        assert!(matches!(
            r(&[1], &[1, -2, 1]).residue_at_one(),
            Err(Error::PoleOrder { expected: -1, found: -2 })
        ));
    }

    #[test]
    fn series_prefixes() {
        let ints = |v: Vec<Cyclo>| -> Vec<i64> {
            v.iter().map(|c| i64::try_from(c.to_integer().unwrap()).unwrap()).collect()
        };
        assert_eq!(ints(r(&[1], &[1, -1]).series_prefix(3).unwrap()), vec![1, 1, 1, 1]);
        // long-division oracle: (1+q²)/(1-q²)² = Σ (2k+1) q^{2k}
        let m = r(&[1, 0, 1], &[1, 0, -2, 0, 1]);
        assert_eq!(ints(m.series_prefix(4).unwrap()), vec![1, 0, 3, 0, 5]);
        assert_eq!(ints(RatQ::from_poly(p(&[0, 0, 1])).series_prefix(1).unwrap()), vec![0, 0]);
        assert_eq!(r(&[1], &[0, 1]).series_prefix(2), Err(Error::PoleAtZero));
    }

    #[test]
    fn common_denominator_sum_matches_pairwise() {
        let items = vec![r(&[1], &[1, -1]), r(&[1], &[1, 1]), r(&[0, 1], &[1, 0, 1])];
        let w = vec![Cyclo::from_int(2), Cyclo::frac(-1, 3), Cyclo::root_of_unity(3, 1)];
        let direct = items
            .iter()
            .zip(&w)
            .fold(RatQ::zero(), |acc, (it, w)| &acc + &it.scale(w));
        assert_eq!(RatQ::weighted_sum(&w, &items), direct);
    }

    #[test]
    fn laurent_residue() {
        let f = RatQ::new(QPoly::q(), QPoly::one_minus_q_pow(1).pow(2)).unwrap();
        assert_eq!(f.laurent_residue_at_one().unwrap(), Cyclo::one());
        let g = RatQ::new(QPoly::from_ints(&[3]), QPoly::one_minus_q_pow(1)).unwrap();
        assert_eq!(g.laurent_residue_at_one().unwrap(), g.residue_at_one().unwrap());
        let h = RatQ::new(QPoly::q().pow(2), QPoly::one_minus_q_pow(1).pow(3)).unwrap();
        assert_eq!(h.laurent_residue_at_one().unwrap(), Cyclo::from_int(-1));
    }
}
