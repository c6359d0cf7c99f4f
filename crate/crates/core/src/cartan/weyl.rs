//! Weyl vectors: twice the row sums of the inverse Cartan matrix, and a
//! positive-root enumeration to check them against.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};
use crate::groups::GroupModel;
use crate::linalg::Matrix;

use super::{cartan_inverse, Method};

const MAX_HEIGHT: usize = 1000;

/// Positive roots in the simple-root basis, by height, using root strings.
/// Convention: `cartan[i][j] = <α_i^∨, α_j>`.
pub fn positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let mut all: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut out = simple.clone();
    let mut layer = simple;
    let mut height = 1;
    while !layer.is_empty() {
        height += 1;
        if height > MAX_HEIGHT {
            return Err(Error::RootHeight(MAX_HEIGHT));
        }
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] >= 0 && all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if all.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

/// Sum of the positive roots in the simple-root basis.
pub fn weyl_oracle(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let roots = positive_roots(cartan)?;
    let n = cartan.len();
    Ok((0..n).map(|i| roots.iter().map(|r| r[i]).sum()).collect())
}

fn twice_row_sums(inv: &Matrix<Cyclo>) -> Result<Vec<Rational>> {
    (0..inv.rows())
        .map(|i| {
            let s: Cyclo = inv.row(i).iter().cloned().sum();
            (&s * &Cyclo::from_int(2))
                .to_rational()
                .ok_or_else(|| Error::InvalidArgument("inverse Cartan matrix is not rational".into()))
        })
        .collect()
}

/// r_i = 2 Σ_j (M̃[R](1)^{-1})_i^j.
pub fn weyl_vector(g: &GroupModel) -> Result<Vec<Rational>> {
    twice_row_sums(&cartan_inverse(g, Method::Direct)?)
}

pub fn weyl_vector_from_cartan(cartan: &[Vec<i64>]) -> Result<Vec<Rational>> {
    twice_row_sums(&Matrix::from_ints(cartan).inverse()?)
}

/// True when the Weyl vector from the inverse matches the root sum.
pub fn weyl_agrees(cartan: &[Vec<i64>], r: &[Rational]) -> Result<bool> {
    let oracle = weyl_oracle(cartan)?;
    Ok(oracle.len() == r.len()
        && oracle
            .iter()
            .zip(r)
            .all(|(a, b)| Rational::from_integer(BigInt::from(*a)) == *b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_binary_icosahedral, FiniteType};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()
    }

    #[test]
    fn small_types() {
        assert_eq!(weyl_oracle(&FiniteType::A(1).cartan()).unwrap(), vec![1]);
        assert_eq!(weyl_oracle(&FiniteType::A(2).cartan()).unwrap(), vec![2, 2]);
        assert_eq!(weyl_vector_from_cartan(&FiniteType::A(2).cartan()).unwrap(), ints(&[2, 2]));
        for t in [FiniteType::D(5), FiniteType::E6, FiniteType::E7, FiniteType::E8] {
            let c = t.cartan();
            assert_eq!(positive_roots(&c).unwrap().len(), t.num_positive_roots(), "{t}");
            assert!(weyl_agrees(&c, &weyl_vector_from_cartan(&c).unwrap()).unwrap());
        }
    }

    #[test]
    fn e8_from_group() {
        let g = make_binary_icosahedral().unwrap();
        let r = weyl_vector(&g).unwrap();
        assert!(weyl_agrees(&FiniteType::E8.cartan(), &r).unwrap());
    }
}
