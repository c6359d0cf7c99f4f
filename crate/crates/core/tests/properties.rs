use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;

use clebsch::cartan::{an_closed_form, cartan_inverse, Method};
use clebsch::cg::relation_suite;
use clebsch::groups::make_cyclic_su2;
use clebsch::quiver::{preprojective_identities, Graph};
use clebsch::symfun::{kostka_foulkes, kronecker_coefficient, principal_specialization, Range};
use clebsch::{Cyclo, Partition, QPoly, RatQ, Rational};

fn cyclo(m: u64, coeffs: &[i64]) -> Cyclo {
    let terms: Vec<(i64, Rational)> = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| (k as i64, Rational::from_integer(BigInt::from(c))))
        .collect();
    Cyclo::from_terms(m, &terms)
}

fn arb_cyclo() -> impl Strategy<Value = Cyclo> {
    (prop::sample::select(vec![1u64, 3, 4, 5, 8, 12]), prop::collection::vec(-4i64..=4, 1..6))
        .prop_map(|(m, c)| cyclo(m, &c))
}

fn arb_poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-5i64..=5, 0..6).prop_map(|c| QPoly::from_ints(&c))
}

fn arb_partition(max: usize) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(|d| {
        let all = Partition::all(d);
        prop::sample::select(all)
    })
}

/// Semistandard fillings of `shape` with entries in 1..=n, cell by cell.
fn brute_ssyt(shape: &Partition, n: usize) -> Vec<Vec<usize>> {
    let cells: Vec<(usize, usize)> = shape.cells().collect();
    let mut out = Vec::new();
    let mut fill = vec![0usize; cells.len()];
    fn go(k: usize, cells: &[(usize, usize)], n: usize, fill: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cells.len() {
            out.push(fill.clone());
            return;
        }
        let (i, j) = cells[k];
        let at = |r: usize, c: usize, fill: &Vec<usize>| {
            cells.iter().position(|&x| x == (r, c)).map(|p| fill[p])
        };
        let left = if j > 0 { at(i, j - 1, fill).unwrap() } else { 1 };
        let above = if i > 0 { at(i - 1, j, fill).unwrap() + 1 } else { 1 };
        for v in left.max(above)..=n {
            fill[k] = v;
            go(k + 1, cells, n, fill, out);
        }
    }
    go(0, &cells, n, &mut fill, &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn polynomial_division(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        prop_assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
        let g = QPoly::gcd(&a, &b);
        prop_assert!(a.exact_div(&g).is_some() && b.exact_div(&g).is_some());
    }

    #[test]
    fn rational_functions_are_canonical(n in arb_poly(), d in arb_poly(), k in arb_poly(), e in arb_poly()) {
        prop_assume!(!d.is_zero() && !k.is_zero() && !e.is_zero());
        let x = RatQ::new(n.clone(), d.clone()).unwrap();
        prop_assert_eq!(RatQ::new(&n * &k, &d * &k).unwrap(), x.clone());
        let y = RatQ::new(k.clone(), e.clone()).unwrap();
        prop_assert_eq!((x.clone() + y.clone()) - y.clone(), x.clone());
        prop_assert_eq!((x.clone() * y.clone()).checked_div(&y).unwrap(), x.clone());
    }

    #[test]
    fn conjugation_is_an_involution(l in arb_partition(9)) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
        prop_assert_eq!(l.hooks().len(), l.size());
    }

    #[test]
    fn kronecker_is_symmetric(d in 1usize..=5, seed in any::<u64>()) {
        let all = Partition::all(d);
        let pick = |s: u64| all[(s % all.len() as u64) as usize].clone();
        let (l, m, n) = (pick(seed), pick(seed / 7), pick(seed / 49));
        let g = kronecker_coefficient(&l, &m, &n).unwrap();
        for (a, b, c) in [(&m, &l, &n), (&n, &m, &l), (&l, &n, &m), (&m, &n, &l), (&n, &l, &m)] {
            prop_assert_eq!(kronecker_coefficient(a, b, c).unwrap(), g);
        }
        prop_assert_eq!(
            kronecker_coefficient(&l.conjugate(), &m.conjugate(), &n).unwrap(),
            g
        );
    }

    #[test]
    fn kostka_at_one_counts_tableaux(l in arb_partition(6), seed in any::<u64>()) {
        let all = Partition::all(l.size());
        let mu = all[(seed % all.len() as u64) as usize].clone();
        let k = kostka_foulkes(&l, &mu).unwrap();
        let count = brute_ssyt(&l, mu.len())
            .into_iter()
            .filter(|t| (1..=mu.len()).all(|v| t.iter().filter(|&&x| x == v).count() == mu.part(v - 1)))
            .count();
        prop_assert_eq!(k.eval_at_one(), Cyclo::from_int(count as i64));
        prop_assert!(k.has_nonneg_int_coeffs());
        if !l.dominates(&mu) {
            prop_assert!(k.is_zero());
        }
    }

    #[test]
    fn finite_specialization_matches_tableaux(l in arb_partition(4), n in 1usize..=3) {
        let s = principal_specialization(&l, Range::Finite(n));
        let p = s.as_polynomial().expect("finite specialization is a polynomial");
        prop_assert!(p.has_nonneg_int_coeffs());
        let mut counts = vec![0i64; 1];
        for t in brute_ssyt(&l, n) {
            let w: usize = t.iter().map(|x| x - 1).sum();
            if counts.len() <= w {
                counts.resize(w + 1, 0);
            }
            counts[w] += 1;
        }
        prop_assert_eq!(p, QPoly::from_ints(&counts));
    }

    #[test]
    fn stable_specialization_prefix(l in arb_partition(4)) {
        let terms = 6;
        let prefix = principal_specialization(&l, Range::Stable).series_prefix(terms - 1).unwrap();
        let mut counts = vec![0i64; terms];
        for t in brute_ssyt(&l, terms + 1) {
            let w: usize = t.iter().map(|x| x - 1).sum();
            if w < terms {
                counts[w] += 1;
            }
        }
        let want: Vec<Cyclo> = counts.into_iter().map(Cyclo::from_int).collect();
        prop_assert_eq!(prefix, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cyclic_groups(m in 2u64..=9) {
        let g = make_cyclic_su2(m).unwrap();
        prop_assert!(relation_suite(&g).unwrap().pass());
        let inv = cartan_inverse(&g, Method::Direct).unwrap();
        let n = (m - 1) as usize;
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(
                    inv[(i, j)].clone(),
                    Cyclo::from_rational(an_closed_form(n, i + 1, j + 1).unwrap())
                );
            }
        }
    }

    #[test]
    fn random_graphs_invert(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let g = Graph::random(&mut rng, n, 0.5);
        let r = preprojective_identities(&g, 0).unwrap();
        prop_assert!(r.checks[0].pass && r.checks[1].pass, "{:?}", g.adjacency);
    }
}
