//! Symmetric functions through the lens of S_d: Kronecker coefficients,
//! principal specializations, Kostka-Foulkes polynomials by charge, and the
//! identities tying them to the Clebsch-Gordan series of S_d.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cartan::cm_data;
use crate::cg::{series_matrix, Kind, Sign};
use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};
use crate::groups::{make_symmetric, mn_character};
use crate::partition::Partition;
use crate::qseries::{QPoly, RatQ};
use crate::report::{IdentityCheck, Report};

/// How many variables a Schur function is specialized at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Range {
    /// `1, q, q^2, ...`
    Stable,
    /// `1, q, ..., q^{N-1}`
    Finite(usize),
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Range::Stable => f.write_str("stable"),
            Range::Finite(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for Range {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("stable") || s == "inf" {
            return Ok(Range::Stable);
        }
        s.parse()
            .map(Range::Finite)
            .map_err(|_| Error::InvalidArgument(format!("range must be 'stable' or a count, got '{s}'")))
    }
}

fn same_size(ps: &[&Partition]) -> Result<usize> {
    let d = ps[0].size();
    for p in &ps[1..] {
        if p.size() != d {
            return Err(Error::LengthMismatch { expected: d, found: p.size() });
        }
    }
    Ok(d)
}

fn rat_int(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// g_{λμν} = (1/d!) Σ_g χ^λ χ^μ χ^ν, summed over cycle types with weight 1/z_ρ.
pub fn kronecker_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let d = same_size(&[lambda, mu, nu])?;
    let mut total = Rational::zero();
    for rho in Partition::all(d) {
        let prod = mn_character(lambda, &rho) * mn_character(mu, &rho) * mn_character(nu, &rho);
        total += Rational::new(BigInt::from(prod), rho.z());
    }
    rat_int(&total)
        .and_then(|n| n.to_u64())
        .ok_or_else(|| Error::InvalidArgument(format!("Kronecker sum {total} is not a nonnegative integer")))
}

fn q_pow(k: usize) -> QPoly {
    QPoly::monomial(Cyclo::one(), k)
}

/// Schur function at `1, q, q^2, ...` (or its first `N` terms) by the hook-content formula.
pub fn principal_specialization(lambda: &Partition, range: Range) -> RatQ {
    let mut den = QPoly::one();
    for h in lambda.hooks() {
        den = den * QPoly::one_minus_q_pow(h);
    }
    let lead = q_pow(lambda.n());
    match range {
        Range::Stable => RatQ::new(lead, den).expect("nonzero hook product"),
        Range::Finite(n) => {
            if n < lambda.len() {
                return RatQ::zero();
            }
            let mut num = lead;
            for (i, j) in lambda.cells() {
                num = num * QPoly::one_minus_q_pow(n + j - i);
            }
            RatQ::new(num, den).expect("nonzero hook product")
        }
    }
}

/// (s_λ * s_μ) specialized: Σ_ν g_{λμν} s_ν(1, q, ...).
pub fn kron_specialized(lambda: &Partition, mu: &Partition, range: Range) -> Result<RatQ> {
    let d = same_size(&[lambda, mu])?;
    let mut total = RatQ::zero();
    for nu in Partition::all(d) {
        let g = kronecker_coefficient(lambda, mu, &nu)?;
        if g > 0 {
            total = total + principal_specialization(&nu, range).scale(&Cyclo::from_int(g));
        }
    }
    Ok(total)
}

/// Semistandard tableaux of shape `lambda` and content `mu`, as rows of entries (1-based letters).
pub fn semistandard_tableaux(lambda: &Partition, mu: &Partition) -> Result<Vec<Vec<Vec<usize>>>> {
    same_size(&[lambda, mu])?;
    let rows = lambda.len();
    let mut out = Vec::new();
    let mut tab: Vec<Vec<usize>> = vec![Vec::new(); rows];
    fill(lambda, mu.parts(), 0, &mut tab, &mut out);
    Ok(out)
}

fn fill(
    lambda: &Partition,
    content: &[usize],
    letter: usize,
    tab: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if letter == content.len() {
        out.push(tab.clone());
        return;
    }
    let old: Vec<usize> = tab.iter().map(Vec::len).collect();
    strip(lambda, &old, content[letter], 0, letter + 1, tab, &mut |t| {
        fill(lambda, content, letter + 1, t, out)
    });
}

/// Adds a horizontal strip of `left` copies of `letter`, row by row from `row` down.
fn strip(
    lambda: &Partition,
    old: &[usize],
    left: usize,
    row: usize,
    letter: usize,
    tab: &mut Vec<Vec<usize>>,
    k: &mut dyn FnMut(&mut Vec<Vec<usize>>),
) {
    if left == 0 {
        k(tab);
        return;
    }
    if row == old.len() {
        return;
    }
    let cap = if row == 0 { lambda.part(0) } else { lambda.part(row).min(old[row - 1]) };
    let room = cap.saturating_sub(old[row]).min(left);
    for a in (0..=room).rev() {
        tab[row].extend(std::iter::repeat(letter).take(a));
        strip(lambda, old, left - a, row + 1, letter, tab, k);
        let keep = tab[row].len() - a;
        tab[row].truncate(keep);
    }
}

/// Reading word: rows from the bottom up, each left to right.
pub fn reading_word(tableau: &[Vec<usize>]) -> Vec<usize> {
    tableau.iter().rev().flatten().copied().collect()
}

/// Lascoux-Schützenberger charge of a word with partition content.
pub fn charge(word: &[usize]) -> usize {
    let n = word.len();
    let mut used = vec![false; n];
    let mut remaining = n;
    let mut total = 0;
    while remaining > 0 {
        let Some(mut pos) = (0..n).rev().find(|&p| !used[p] && word[p] == 1) else {
            break;
        };
        used[pos] = true;
        remaining -= 1;
        let mut index = 0;
        let mut r = 1;
        loop {
            r += 1;
            let left = (0..pos).rev().find(|&p| !used[p] && word[p] == r);
            let next = match left {
                Some(p) => p,
                None => match (pos + 1..n).rev().find(|&p| !used[p] && word[p] == r) {
                    Some(p) => {
                        index += 1;
                        p
                    }
                    None => break,
                },
            };
            total += index;
            used[next] = true;
            remaining -= 1;
            pos = next;
        }
    }
    total
}

/// K_{λμ}(q) = Σ_T q^{charge(T)} over semistandard T of shape λ, content μ.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> Result<QPoly> {
    same_size(&[lambda, mu])?;
    if !lambda.dominates(mu) {
        return Ok(QPoly::zero());
    }
    let mut counts: Vec<i64> = Vec::new();
    for t in semistandard_tableaux(lambda, mu)? {
        let c = charge(&reading_word(&t));
        if counts.len() <= c {
            counts.resize(c + 1, 0);
        }
        counts[c] += 1;
    }
    Ok(QPoly::from_ints(&counts))
}

/// (q;q)_m
pub fn q_pochhammer(m: usize) -> QPoly {
    (1..=m).fold(QPoly::one(), |acc, j| acc * QPoly::one_minus_q_pow(j))
}

/// Σ_ν K_{λν} K_{μν} / Π_i (q;q)_{ν'_i - ν'_{i+1}}.
pub fn kf_sum(lambda: &Partition, mu: &Partition) -> Result<RatQ> {
    let d = same_size(&[lambda, mu])?;
    let mut total = RatQ::zero();
    for nu in Partition::all(d) {
        let a = kostka_foulkes(lambda, &nu)?;
        let b = kostka_foulkes(mu, &nu)?;
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let c = nu.conjugate();
        let den = (0..c.len()).fold(QPoly::one(), |acc, i| acc * q_pochhammer(c.part(i) - c.part(i + 1)));
        total = total + RatQ::new(a * b, den)?;
    }
    Ok(total)
}

pub fn kf_identity_check(lambda: &Partition, mu: &Partition) -> Result<Report> {
    let lhs = kron_specialized(lambda, mu, Range::Stable)?;
    let rhs = kf_sum(lambda, mu)?;
    let mut r = Report::new();
    let check = IdentityCheck::new(format!("s_{lambda} * s_{mu}(1,q,...) = sum K K / (q;q)"), lhs == rhs);
    r.push(if lhs == rhs { check } else { check.with_detail(format!("lhs {lhs}, rhs {rhs}")) });
    Ok(r)
}

/// K_{λμ}(q, q) recovered from the Kronecker specialization.
pub fn kostka_macdonald_qq(lambda: &Partition, mu: &Partition) -> Result<QPoly> {
    let s = kron_specialized(lambda, mu, Range::Stable)?;
    let hooks = mu.hooks().into_iter().fold(QPoly::one(), |acc, h| acc * QPoly::one_minus_q_pow(h));
    let v = s * RatQ::from_poly(hooks);
    match v.as_polynomial() {
        Some(p) if p.has_nonneg_int_coeffs() => Ok(p),
        _ => Err(Error::NotPolynomial(format!("K_({lambda}),({mu})(q,q) = {v}"))),
    }
}

fn rational_poly(r: &Rational) -> QPoly {
    QPoly::constant(Cyclo::from_rational(r.clone()))
}

/// The class sum with det(E + tR)/det(E - qR) against the hook product
/// Π (q^{i-1} + t q^{j-1}) / (1 - q^{h(i,j)}).
pub fn supersym_sides(mu: &Partition, t: &Rational) -> Result<(RatQ, RatQ)> {
    let d = mu.size();
    let mut lhs = RatQ::zero();
    let neg_t = -t.clone();
    for rho in Partition::all(d) {
        let chi = mn_character(mu, &rho);
        if chi == 0 {
            continue;
        }
        let mut num = QPoly::one();
        let mut den = QPoly::one();
        for &l in rho.parts() {
            let tl = num_traits::pow(neg_t.clone(), l);
            num = num * rational_poly(&(Rational::from_integer(1.into()) - tl));
            den = den * QPoly::one_minus_q_pow(l);
        }
        let w = Rational::new(BigInt::from(chi), rho.z());
        lhs = lhs + RatQ::new(num, den)?.scale_rational(&w);
    }
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for (i, j) in mu.cells() {
        num = num * (q_pow(i) + q_pow(j) * rational_poly(t));
        den = den * QPoly::one_minus_q_pow(mu.hook(i, j));
    }
    Ok((lhs, RatQ::new(num, den)?))
}

pub fn supersym_check(mu: &Partition, t: &Rational) -> Result<Report> {
    let (lhs, rhs) = supersym_sides(mu, t)?;
    let mut r = Report::new();
    let c = IdentityCheck::new(format!("supersymmetric hook product for {mu} at t = {t}"), lhs == rhs);
    r.push(if lhs == rhs { c } else { c.with_detail(format!("lhs {lhs}, rhs {rhs}")) });
    Ok(r)
}

/// D[R]_λ^0 of S_d with invariant degrees 1..d against K_{λ',(1^d)}(q).
pub fn fake_degree_check(d: usize) -> Result<Report> {
    let g = make_symmetric(d)?;
    let degrees: Vec<u64> = (1..=d as u64).collect();
    let cm = cm_data(&g, Some(&degrees))?;
    let column = Partition::single_column(d);
    let mut r = Report::new();
    for (j, lambda) in Partition::all(d).iter().enumerate() {
        let k = kostka_foulkes(&lambda.conjugate(), &column)?;
        let got = &cm.dr[(0, j)];
        let c = IdentityCheck::new(format!("D_({lambda})^0 = K_({lambda})',(1^{d})"), *got == k);
        r.push(if *got == k { c } else { c.with_detail(format!("D = {got}, K = {k}")) });
    }
    Ok(r)
}

/// Stable Kronecker specializations against the S_d series matrix M[R_S(q)].
pub fn kron_series_check(d: usize) -> Result<Report> {
    let g = make_symmetric(d)?;
    let m = series_matrix(&g, Kind::S, Sign::Plus)?;
    let parts = Partition::all(d);
    let mut witness = None;
    'outer: for (i, l) in parts.iter().enumerate() {
        for (j, mu) in parts.iter().enumerate() {
            if kron_specialized(l, mu, Range::Stable)? != m.entry(i, j) {
                witness = Some(vec![i, j]);
                break 'outer;
            }
        }
    }
    let mut r = Report::new();
    r.push(IdentityCheck::from_witness(
        format!("M[R_S(q)] of S_{d} = s_lambda * s_mu(1,q,...)"),
        witness,
    ));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_coefficient(&p("2,1"), &p("2,1"), &p("2,1")).unwrap(), 1);
        for d in 3..=4 {
            let all = Partition::all(d);
            for mu in &all {
                for nu in &all {
                    let triv = kronecker_coefficient(&Partition::single_row(d), mu, nu).unwrap();
                    assert_eq!(triv, u64::from(mu == nu));
                    let sign = kronecker_coefficient(&Partition::single_column(d), mu, nu).unwrap();
                    assert_eq!(sign, u64::from(*nu == mu.conjugate()));
                }
            }
        }
        assert!(kronecker_coefficient(&p("2"), &p("2,1"), &p("3")).is_err());
    }

    #[test]
    fn specializations() {
        let s = principal_specialization(&p("1,1"), Range::Stable);
        let want = RatQ::new(poly(&[0, 1]), poly(&[1, -1]) * poly(&[1, 0, -1])).unwrap();
        assert_eq!(s, want);
        assert!(principal_specialization(&p("3"), Range::Finite(1)).is_one());
        assert_eq!(
            principal_specialization(&p("2,1"), Range::Finite(2)).as_polynomial(),
            Some(poly(&[0, 1, 1]))
        );
        assert!(principal_specialization(&p("1,1,1"), Range::Finite(2)).is_zero());
    }

    #[test]
    fn kostka_foulkes_examples() {
        assert_eq!(kostka_foulkes(&p("2,1"), &p("1,1,1")).unwrap(), poly(&[0, 1, 1]));
        assert_eq!(kostka_foulkes(&p("2,2"), &p("1,1,1,1")).unwrap(), poly(&[0, 0, 1, 0, 1]));
        assert_eq!(kostka_foulkes(&p("2"), &p("1,1")).unwrap(), poly(&[0, 1]));
        assert_eq!(kostka_foulkes(&p("3,1"), &p("2,2")).unwrap(), poly(&[0, 1]));
        assert_eq!(kostka_foulkes(&p("4"), &p("2,2")).unwrap(), poly(&[0, 0, 1]));
        assert!(kostka_foulkes(&p("2,2"), &p("3,1")).unwrap().is_zero());
        for l in Partition::all(5) {
            assert!(kostka_foulkes(&l, &l).unwrap().is_one());
        }
    }

    #[test]
    fn kronecker_matches_series() {
        for d in 2..=4 {
            assert!(kron_series_check(d).unwrap().pass(), "d = {d}");
        }
        let k = kron_specialized(&p("1,1,1"), &p("2,1"), Range::Stable).unwrap();
        assert_eq!(k, principal_specialization(&p("2,1"), Range::Stable));
    }

    #[test]
    fn kf_identity() {
        for (l, m) in [("2", "2"), ("2,1", "2,1"), ("2,2", "2,1,1")] {
            let r = kf_identity_check(&p(l), &p(m)).unwrap();
            assert!(r.pass(), "{l} {m}: {:?}", r.checks[0].detail);
        }
    }

    #[test]
    fn macdonald_qq() {
        assert_eq!(kostka_macdonald_qq(&p("2"), &p("1,1")).unwrap(), poly(&[0, 1]));
        assert!(kostka_macdonald_qq(&p("1,1"), &p("1,1")).unwrap().is_one());
        assert!(kostka_macdonald_qq(&p("3"), &p("3")).unwrap().is_one());
        kostka_macdonald_qq(&p("2,1"), &p("2,1")).unwrap();
    }

    #[test]
    fn supersym() {
        let two = Rational::from_integer(2.into());
        assert!(supersym_check(&p("2"), &Rational::from_integer(1.into())).unwrap().pass());
        assert!(supersym_check(&p("2,1"), &two).unwrap().pass());
        let (l, _) = supersym_sides(&p("2,1"), &Rational::zero()).unwrap();
        assert_eq!(l, principal_specialization(&p("2,1"), Range::Stable));
    }

    #[test]
    fn fake_degrees() {
        for d in 2..=4 {
            let r = fake_degree_check(d).unwrap();
            assert!(r.pass(), "{r}");
        }
    }
}
