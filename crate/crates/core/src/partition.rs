use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// λ_i with zero padding (0-based index).
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((0..w).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Cells `(i, j)`, both 0-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    pub fn hook(&self, i: usize, j: usize) -> usize {
        let c = self.conjugate();
        self.part(i) - j + c.part(j) - i - 1
    }

    pub fn hooks(&self) -> Vec<usize> {
        let c = self.conjugate();
        self.cells().map(|(i, j)| self.part(i) - j + c.part(j) - i - 1).collect()
    }

    /// n(λ) = Σ (i - 1) λ_i.
    pub fn n(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Centralizer order z_μ = Π i^{m_i} m_i!.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mut m = 0;
            while i < self.0.len() && self.0[i] == p {
                m += 1;
                i += 1;
                z *= BigInt::from(p) * BigInt::from(m);
            }
        }
        z
    }

    /// Dominance order λ ⊵ μ.
    pub fn dominates(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        let mut a = 0;
        let mut b = 0;
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Multiplicity of the part `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    /// All partitions of `d`, reverse lexicographic: `(d)` first, `(1^d)` last.
    pub fn all(d: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(d, d, &mut Vec::new(), &mut out);
        out
    }

    pub fn single_row(d: usize) -> Partition {
        Partition::new(vec![d])
    }

    pub fn single_column(d: usize) -> Partition {
        Partition(vec![1; d])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses comma lists such as `3,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad partition part '{tok}'")))?;
            parts.push(p);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("partition '{s}' is not weakly decreasing")));
        }
        Ok(Partition::new(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_statistics() {
        let l: Partition = "3,2,1".parse().unwrap();
        assert_eq!(l.conjugate(), l);
        assert_eq!(l.hooks(), vec![5, 3, 1, 3, 1, 1]);
        assert_eq!(l.n(), 4);
        assert_eq!(Partition::new(vec![2, 1, 1]).z(), BigInt::from(4));
        assert_eq!(Partition::new(vec![1, 1, 1]).z(), BigInt::from(6));
        assert_eq!(l.to_string(), "3,2,1");
    }

    #[test]
    fn enumeration_order() {
        let p: Vec<String> = Partition::all(4).iter().map(ToString::to_string).collect();
        assert_eq!(p, vec!["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(Partition::all(8).len(), 22);
        assert!(Partition::new(vec![3]).dominates(&Partition::new(vec![2, 1])));
        assert!(!Partition::new(vec![2, 2]).dominates(&Partition::new(vec![3, 1])));
    }
}
