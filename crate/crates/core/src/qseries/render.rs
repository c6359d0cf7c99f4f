//! Text, LaTeX and JSON renderings of cyclotomic numbers, polynomials and
//! rational functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exact::{Cyclo, Rational};

use super::{QPoly, RatQ};

/// JSON form of a scalar: integers as numbers (strings beyond i64), other
/// rationals as `"a/b"`, irrational values in `E(m)` notation.
pub fn cyclo_json(c: &Cyclo) -> Value {
    if let Some(n) = c.to_integer() {
        return match i64::try_from(&n) {
            Ok(v) => json!(v),
            Err(_) => json!(n.to_string()),
        };
    }
    json!(c.to_string())
}

fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
    }
}

pub fn cyclo_latex(c: &Cyclo) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let m = c.conductor();
    let mut out = String::new();
    for (i, (k, r)) in c.terms().into_iter().enumerate() {
        let neg = r.is_negative();
        let a = r.abs();
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        if k == 0 {
            out.push_str(&rational_latex(&a));
            continue;
        }
        if !a.is_one() {
            out.push_str(&rational_latex(&a));
        }
        out.push_str(&format!("\\zeta_{{{m}}}"));
        if k > 1 {
            out.push_str(&format!("^{{{k}}}"));
        }
    }
    out
}

fn power_text(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "q".into(),
        _ => format!("q^{k}"),
    }
}

fn power_latex(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "q".into(),
        _ => format!("q^{{{k}}}"),
    }
}

/// Joins signed terms as `a + b - c`, pulling a leading minus sign out of
/// rational coefficients and parenthesising irrational ones.
fn join_terms(
    p: &QPoly,
    scalar: impl Fn(&Cyclo) -> String,
    power: impl Fn(usize) -> String,
    times: &str,
) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in p.terms().enumerate() {
        let (neg, body) = match c.to_rational() {
            Some(r) => {
                let a = Cyclo::from_rational(r.abs());
                let body = if a.is_one() && k > 0 {
                    power(k)
                } else if k == 0 {
                    scalar(&a)
                } else {
                    format!("{}{times}{}", scalar(&a), power(k))
                };
                (r.is_negative(), body)
            }
            None => {
                let body = if k == 0 {
                    format!("({})", scalar(c))
                } else {
                    format!("({}){times}{}", scalar(c), power(k))
                };
                (false, body)
            }
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

/// Plain rendering, ascending powers, e.g. `1 - 2*q + q^2`.
pub fn poly_text(p: &QPoly) -> String {
    join_terms(p, |c| c.to_string(), power_text, "*")
}

pub fn poly_latex(p: &QPoly) -> String {
    join_terms(p, cyclo_latex, power_latex, " ")
}

pub fn poly_json(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(cyclo_json).collect())
}

fn coeff_denominators(p: &QPoly) -> BigInt {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        for (_, r) in c.terms() {
            l = l.lcm(r.denom());
        }
    }
    l
}

fn coeff_content(p: &QPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p.coeffs() {
        for (_, r) in c.terms() {
            g = g.gcd(r.numer());
        }
    }
    g
}

/// Numerator and denominator rescaled so all coefficients are integers with
/// no common factor and the lowest nonzero coefficient of the denominator is
/// positive, e.g. `1 / (1 - q)` instead of `-1 / (q - 1)`.
pub fn integer_normalized(r: &RatQ) -> (QPoly, QPoly) {
    let l = coeff_denominators(r.num()).lcm(&coeff_denominators(r.den()));
    let mut num = r.num().scale_rational(&Rational::from_integer(l.clone()));
    let mut den = r.den().scale_rational(&Rational::from_integer(l));
    let g = coeff_content(&num).gcd(&coeff_content(&den));
    if !g.is_zero() && !g.is_one() {
        let inv = Rational::new(BigInt::one(), g);
        num = num.scale_rational(&inv);
        den = den.scale_rational(&inv);
    }
    let low_negative = den
        .terms()
        .next()
        .and_then(|(_, c)| c.to_rational())
        .is_some_and(|x| x.is_negative());
    if low_negative {
        num = -num;
        den = -den;
    }
    (num, den)
}

fn wrap(s: String, p: &QPoly) -> String {
    if p.terms().count() > 1 {
        format!("({s})")
    } else {
        s
    }
}

/// `num(q) / den(q)`, or just the numerator when the denominator is 1.
pub fn ratq_text(r: &RatQ) -> String {
    let (num, den) = integer_normalized(r);
    if den.is_one() {
        return poly_text(&num);
    }
    format!("{} / {}", wrap(poly_text(&num), &num), wrap(poly_text(&den), &den))
}

pub fn ratq_latex(r: &RatQ) -> String {
    let (num, den) = integer_normalized(r);
    if den.is_one() {
        return poly_latex(&num);
    }
    format!("\\frac{{{}}}{{{}}}", poly_latex(&num), poly_latex(&den))
}

/// `{"num": [...], "den": [...]}` with ascending coefficient arrays.
pub fn ratq_json(r: &RatQ) -> Value {
    let (num, den) = integer_normalized(r);
    json!({ "num": poly_json(&num), "den": poly_json(&den) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_text() {
        assert_eq!(QPoly::from_ints(&[1, -2, 1]).to_string(), "1 - 2*q + q^2");
        assert_eq!(QPoly::from_ints(&[0, 0, 3]).to_string(), "3*q^2");
        assert_eq!(QPoly::from_ints(&[-1]).to_string(), "-1");
        assert_eq!(QPoly::zero().to_string(), "0");
        let p = QPoly::new(vec![Cyclo::one(), Cyclo::root_of_unity(3, 1)]);
        assert_eq!(p.to_string(), "1 + (E(3))*q");
    }

    #[test]
    fn rational_function_text() {
        let r = RatQ::new(QPoly::from_ints(&[1]), QPoly::from_ints(&[1, -1])).unwrap();
        assert_eq!(r.to_string(), "1 / (1 - q)");
        let r = RatQ::new(QPoly::from_ints(&[1, 0, 1]), QPoly::from_ints(&[1, 0, -2, 0, 1])).unwrap();
        assert_eq!(r.to_string(), "(1 + q^2) / (1 - 2*q^2 + q^4)");
        let r = RatQ::new(QPoly::constant(Cyclo::frac(2, 3)), QPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(r.to_string(), "2 / (3 + 3*q)");
        assert_eq!(RatQ::from_int(-4).to_string(), "-4");
    }

    #[test]
    fn latex_and_json() {
        let r = RatQ::new(QPoly::from_ints(&[0, 1]), QPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(ratq_latex(&r), "\\frac{q}{1 + q^{2}}");
        assert_eq!(ratq_json(&r), json!({"num": [0, 1], "den": [1, 0, 1]}));
        assert_eq!(cyclo_json(&Cyclo::frac(2, 3)), json!("2/3"));
        assert_eq!(cyclo_latex(&Cyclo::root_of_unity(5, 2)), "\\zeta_{5}^{2}");
    }
}
