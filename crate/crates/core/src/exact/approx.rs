//! Decimal rendering of cyclotomic values. Output formatting only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Cyclo;

const GUARD: usize = 12;

fn pow10(n: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), n)
}

/// atan(1/x) scaled by `scale`, by the alternating Taylor series.
fn atan_inv(x: u32, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = scale / &x;
    let mut sum = BigInt::zero();
    let mut n = 1u32;
    let mut sign = true;
    while !term.is_zero() {
        let t = &term / BigInt::from(n);
        if sign {
            sum += t;
        } else {
            sum -= t;
        }
        sign = !sign;
        term /= &x2;
        n += 2;
    }
    sum
}

/// π scaled by `scale` (Machin's formula).
fn pi(scale: &BigInt) -> BigInt {
    BigInt::from(16) * atan_inv(5, scale) - BigInt::from(4) * atan_inv(239, scale)
}

/// (cos θ, sin θ) scaled by `scale` for θ given scaled by `scale`, |θ| ≤ π.
fn cos_sin(theta: &BigInt, scale: &BigInt) -> (BigInt, BigInt) {
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut term = scale.clone();
    let mut n = 0u32;
    while !term.is_zero() {
        match n % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        n += 1;
        term = &term * theta / scale / BigInt::from(n);
    }
    (cos, sin)
}

fn round_scaled(v: &BigInt, guard: usize) -> BigInt {
    let unit = pow10(guard);
    let half = &unit / BigInt::from(2);
    if v.is_negative() {
        -((-v + &half).div_floor(&unit))
    } else {
        (v + &half).div_floor(&unit)
    }
}

fn format_fixed(v: &BigInt, digits: usize) -> String {
    let neg = v.is_negative();
    let a = v.abs();
    let unit = pow10(digits);
    let (int, frac) = a.div_rem(&unit);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if digits > 0 {
        let f = frac.to_string();
        s.push('.');
        s.push_str(&"0".repeat(digits - f.len()));
        s.push_str(&f);
    }
    s
}

/// Decimal approximation of `a` with `digits` places after the point,
/// `"re"` for real values and `"re±imi"` otherwise.
pub fn cyclo_approx(a: &Cyclo, digits: usize) -> String {
    let work = digits + GUARD;
    let scale = pow10(work);
    let m = a.conductor();
    let pi_s = pi(&scale);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (k, c) in a.terms() {
        // θ = 2πk/m folded into (-π, π]
        let mut num = 2 * k as i64;
        let den = m as i64;
        if num > den {
            num -= 2 * den;
        }
        let theta = &pi_s * BigInt::from(num) / BigInt::from(den);
        let (cs, sn) = cos_sin(&theta, &scale);
        re += cs * c.numer() / c.denom();
        im += sn * c.numer() / c.denom();
    }
    let real = a.conj() == *a;
    let re = round_scaled(&re, GUARD);
    let re = if re.is_zero() { BigInt::zero() } else { re };
    let mut out = format_fixed(&re, digits);
    if !real {
        let im = round_scaled(&im, GUARD);
        if im.is_negative() {
            out.push('-');
        } else {
            out.push('+');
        }
        out.push_str(&format_fixed(&im.abs(), digits));
        out.push('i');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_examples() {
        assert_eq!(cyclo_approx(&Cyclo::root_of_unity(4, 1), 4), "0.0000+1.0000i");
        assert_eq!(cyclo_approx(&Cyclo::frac(1, 2), 4), "0.5000");
        let golden = Cyclo::root_of_unity(5, 1) + Cyclo::root_of_unity(5, 4);
        assert_eq!(cyclo_approx(&golden, 4), "0.6180");
        // independent oracle: (√5 - 1)/2 by integer square root
        let digits = 30usize;
        let root = (BigInt::from(5) * pow10(2 * digits)).sqrt();
        let oracle = (root - pow10(digits)) / BigInt::from(2);
        let oracle = format_fixed(&round_scaled(&oracle, 10), digits - 10);
        assert_eq!(cyclo_approx(&golden, 20), oracle);
        assert_eq!(cyclo_approx(&Cyclo::root_of_unity(3, 1), 3), "-0.500+0.866i");
        assert_eq!(cyclo_approx(&Cyclo::from_int(-3), 0), "-3");
    }
}
