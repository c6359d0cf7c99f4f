//! Symmetric groups acting by permutation matrices, with characters from the
//! Murnaghan-Nakayama rule.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::Cyclo;
use crate::linalg::Matrix;
use crate::partition::Partition;

use super::GroupModel;

/// Environment variable overriding the largest admissible `d` for S_d.
pub const SYM_LIMIT_ENV: &str = "CLEBSCH_SYM_MAX";

const DEFAULT_SYM_LIMIT: usize = 8;

pub fn symmetric_limit() -> usize {
    std::env::var(SYM_LIMIT_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SYM_LIMIT)
}

/// Beta-set (first-column hook lengths) of λ with exactly `len` beads.
fn beta_set(lambda: &Partition, len: usize) -> Vec<usize> {
    (0..len).map(|i| lambda.part(i) + len - 1 - i).collect()
}

fn mn_rec(beta: &mut Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for idx in 0..beta.len() {
        let b = beta[idx];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        // removing a rim hook of length r moves bead b to b - r; the sign
        // counts the beads jumped over
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        beta[idx] = b - r;
        total += sign * mn_rec(beta, rest, memo);
        beta[idx] = b;
    }
    memo.insert(key, total);
    total
}

/// χ^λ(μ) by the Murnaghan-Nakayama rule.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.size(), mu.size(), "partitions of different sizes");
    let mut beta = beta_set(lambda, lambda.len().max(1));
    mn_rec(&mut beta, mu.parts(), &mut HashMap::new())
}

fn permutation_matrix(mu: &Partition) -> Matrix<Cyclo> {
    let d = mu.size();
    let mut image = vec![0usize; d];
    let mut start = 0;
    for &l in mu.parts() {
        for k in 0..l {
            image[start + k] = start + (k + 1) % l;
        }
        start += l;
    }
    Matrix::from_fn(d, d, |i, j| Cyclo::from_int(i64::from(image[j] == i)))
}

/// S_d acting on C^d by permuting coordinates. Irreducibles are ordered
/// reverse-lexicographically (trivial (d) first), classes lexicographically
/// by cycle type (identity (1^d) first).
pub fn make_symmetric(d: usize) -> Result<GroupModel> {
    let limit = symmetric_limit();
    if d < 1 || d > limit {
        return Err(Error::InvalidArgument(format!(
            "symmetric group degree {d} outside 1..={limit} (set {SYM_LIMIT_ENV} to raise)"
        )));
    }
    let irreps = Partition::all(d);
    let mut classes = irreps.clone();
    classes.reverse();
    let n = classes.len();
    let fact: BigInt = (1..=d).map(BigInt::from).product();
    let sizes: Vec<u64> = classes
        .iter()
        .map(|mu| (&fact / mu.z()).to_u64().expect("class size fits in u64"))
        .collect();
    let table = Matrix::from_fn(n, n, |i, k| Cyclo::from_int(mn_character(&irreps[i], &classes[k])));
    let defining: Vec<Cyclo> = classes
        .iter()
        .map(|mu| Cyclo::from_int(mu.multiplicity(1) as i64))
        .collect();
    let reps = classes.iter().map(permutation_matrix).collect();
    GroupModel::new(
        format!("sym:{d}"),
        fact.to_u64().expect("order fits in u64"),
        d,
        sizes,
        table,
        defining,
        Some(reps),
    )
    .with_labels(
        irreps.iter().map(ToString::to_string).collect(),
        classes.iter().map(ToString::to_string).collect(),
    )
    .validated()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table() {
        let g = make_symmetric(3).unwrap();
        let t: Vec<Vec<i64>> = vec![vec![1, 1, 1], vec![2, 0, -1], vec![1, -1, 1]];
        assert_eq!(g.char_table, Matrix::from_ints(&t));
        assert_eq!(g.class_sizes, vec![1, 3, 2]);
    }

    #[test]
    fn small_cases() {
        let g = make_symmetric(1).unwrap();
        assert_eq!(g.char_table, Matrix::from_ints(&[vec![1]]));
        let g4 = make_symmetric(4).unwrap();
        let idx = g4.class_labels.iter().position(|l| l == "2,1,1").unwrap();
        assert_eq!(g4.class_sizes[idx], 6);
        assert!(make_symmetric(0).is_err());
        assert!(make_symmetric(9).is_err());
    }

    #[test]
    fn mn_matches_hook_formula_on_identity() {
        for lambda in Partition::all(6) {
            let id = Partition::single_column(6);
            let hooks: u64 = lambda.hooks().iter().map(|&h| h as u64).product();
            assert_eq!(mn_character(&lambda, &id) as u64, 720 / hooks);
        }
        let l = Partition::new(vec![3, 1]);
        assert_eq!(mn_character(&l, &Partition::new(vec![4])), -1);
        assert_eq!(mn_character(&l, &Partition::new(vec![2, 2])), -1);
    }
}
