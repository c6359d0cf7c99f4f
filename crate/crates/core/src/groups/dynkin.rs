//! Finite and affine simply-laced Cartan matrices with the node orderings used
//! by the SU(2) models.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FiniteType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

/// Affine type named by its finite part: `A(n)` is Ã_n with n + 1 nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AffineType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinData {
    pub name: String,
    pub finite: Vec<Vec<i64>>,
    pub affine: Vec<Vec<i64>>,
    pub marks: Vec<u64>,
}

fn cartan_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(u, v) in edges {
        c[u][v] -= 1;
        c[v][u] -= 1;
    }
    c
}

impl AffineType {
    /// Edges of the affine diagram; node 0 is the extending node.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            AffineType::A(n) => {
                if n == 1 {
                    vec![(0, 1), (0, 1)]
                } else {
                    (0..=n).map(|i| (i, (i + 1) % (n + 1))).collect()
                }
            }
            AffineType::D(r) => {
                // r = n + 2 for the binary dihedral group of parameter n
                let n = r - 2;
                let mut e = vec![(0, 2), (1, 2)];
                e.extend((2..n).map(|i| (i, i + 1)));
                e.push((n, n + 1));
                e.push((n, n + 2));
                e
            }
            AffineType::E6 => vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)],
            AffineType::E7 => vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)],
            AffineType::E8 => vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)],
        }
    }

    pub fn num_nodes(&self) -> usize {
        match *self {
            AffineType::A(n) => n + 1,
            AffineType::D(r) => r + 1,
            AffineType::E6 => 7,
            AffineType::E7 => 8,
            AffineType::E8 => 9,
        }
    }

    pub fn marks(&self) -> Vec<u64> {
        match *self {
            AffineType::A(n) => vec![1; n + 1],
            AffineType::D(r) => {
                let mut m = vec![1, 1];
                m.extend(std::iter::repeat_n(2, r - 3));
                m.extend([1, 1]);
                m
            }
            AffineType::E6 => vec![1, 2, 3, 2, 1, 2, 1],
            AffineType::E7 => vec![1, 2, 3, 4, 3, 2, 1, 2],
            AffineType::E8 => vec![1, 2, 3, 4, 5, 6, 4, 2, 3],
        }
    }

    pub fn finite_type(&self) -> FiniteType {
        match *self {
            AffineType::A(n) => FiniteType::A(n),
            AffineType::D(n) => FiniteType::D(n),
            AffineType::E6 => FiniteType::E6,
            AffineType::E7 => FiniteType::E7,
            AffineType::E8 => FiniteType::E8,
        }
    }

    pub fn data(&self) -> DynkinData {
        let n = self.num_nodes();
        let affine = cartan_from_edges(n, &self.edges());
        let finite = affine[1..].iter().map(|r| r[1..].to_vec()).collect();
        DynkinData {
            name: format!("affine {self}"),
            finite,
            affine,
            marks: self.marks(),
        }
    }

    /// Adjacency matrix of the affine graph.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let n = self.num_nodes();
        let mut c = vec![vec![0u64; n]; n];
        for (u, v) in self.edges() {
            c[u][v] += 1;
            c[v][u] += 1;
        }
        c
    }

    /// Every affine ADE type with at most `max_nodes` nodes.
    pub fn all_up_to(max_nodes: usize) -> Vec<AffineType> {
        let mut out: Vec<AffineType> = (1..max_nodes).map(AffineType::A).collect();
        out.extend((4..max_nodes).map(AffineType::D));
        for t in [AffineType::E6, AffineType::E7, AffineType::E8] {
            if t.num_nodes() <= max_nodes {
                out.push(t);
            }
        }
        out
    }
}

impl FiniteType {
    pub fn rank(&self) -> usize {
        match *self {
            FiniteType::A(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            FiniteType::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            _ => AffineType::from(*self)
                .edges()
                .into_iter()
                .filter(|&(u, v)| u != 0 && v != 0)
                .map(|(u, v)| (u - 1, v - 1))
                .collect(),
        }
    }

    pub fn cartan(&self) -> Vec<Vec<i64>> {
        cartan_from_edges(self.rank(), &self.edges())
    }

    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let n = self.rank();
        let mut c = vec![vec![0u64; n]; n];
        for (u, v) in self.edges() {
            c[u][v] += 1;
            c[v][u] += 1;
        }
        c
    }

    /// Number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        match *self {
            FiniteType::A(n) => n * (n + 1) / 2,
            FiniteType::D(n) => n * (n - 1),
            FiniteType::E6 => 36,
            FiniteType::E7 => 63,
            FiniteType::E8 => 120,
        }
    }

    /// Every finite ADE type with rank at most `max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<FiniteType> {
        let mut out: Vec<FiniteType> = (1..=max_rank).map(FiniteType::A).collect();
        out.extend((4..=max_rank).map(FiniteType::D));
        for t in [FiniteType::E6, FiniteType::E7, FiniteType::E8] {
            if t.rank() <= max_rank {
                out.push(t);
            }
        }
        out
    }
}

impl From<FiniteType> for AffineType {
    fn from(t: FiniteType) -> Self {
        match t {
            FiniteType::A(n) => AffineType::A(n),
            FiniteType::D(n) => AffineType::D(n),
            FiniteType::E6 => AffineType::E6,
            FiniteType::E7 => AffineType::E7,
            FiniteType::E8 => AffineType::E8,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => write!(f, "E6"),
            FiniteType::E7 => write!(f, "E7"),
            FiniteType::E8 => write!(f, "E8"),
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.finite_type())
    }
}

impl FromStr for FiniteType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown Dynkin type '{s}'"));
        match s {
            "E6" => Ok(FiniteType::E6),
            "E7" => Ok(FiniteType::E7),
            "E8" => Ok(FiniteType::E8),
            _ => {
                let (head, rest) = s.split_at(1.min(s.len()));
                let n: usize = rest.parse().map_err(|_| bad())?;
                match head {
                    "A" if n >= 1 => Ok(FiniteType::A(n)),
                    "D" if n >= 4 => Ok(FiniteType::D(n)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl FromStr for AffineType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(AffineType::from(s.parse::<FiniteType>()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kernel_ok(t: AffineType) -> bool {
        let d = t.data();
        d.affine.iter().all(|row| {
            row.iter()
                .zip(&d.marks)
                .map(|(a, &m)| a * m as i64)
                .sum::<i64>()
                == 0
        })
    }

    #[test]
    fn marks_span_kernel() {
        for t in AffineType::all_up_to(10) {
            assert!(kernel_ok(t), "{t}");
        }
        assert_eq!(AffineType::A(1).data().affine, vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(AffineType::A(3).data().finite, FiniteType::A(3).cartan());
        assert_eq!(AffineType::E8.data().finite, FiniteType::E8.cartan());
    }

    #[test]
    fn parsing() {
        assert_eq!("A5".parse::<FiniteType>().unwrap(), FiniteType::A(5));
        assert_eq!("E8".parse::<AffineType>().unwrap(), AffineType::E8);
        assert!("D3".parse::<FiniteType>().is_err());
        assert!("X1".parse::<FiniteType>().is_err());
    }
}
