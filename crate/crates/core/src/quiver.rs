//! Poincaré series of preprojective algebras of graphs:
//! H = (E - qC + q²E)^{-1} for the adjacency matrix C.

use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cg::FracMatrix;
use crate::error::{Error, Result};
use crate::exact::Cyclo;
use crate::groups::{AffineType, FiniteType};
use crate::linalg::Matrix;
use crate::qseries::{tree_continued_fraction, QPoly, RatQ, RootedTree};
use crate::report::{first_failure, IdentityCheck, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub name: String,
    pub adjacency: Vec<Vec<u64>>,
    pub root: Option<usize>,
    /// Set for finite Dynkin diagrams built by [`Graph::finite`].
    pub dynkin: Option<FiniteType>,
}

/// On-disk layout: `{ "vertices": n, "edges": [[u, v, mult], ...], "root": r }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
}

impl Graph {
    pub fn from_adjacency(name: impl Into<String>, adjacency: Vec<Vec<u64>>, root: Option<usize>) -> Result<Self> {
        let n = adjacency.len();
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Schema(format!("adjacency row {i} has {} entries, expected {n}", row.len())));
            }
            if row[i] != 0 {
                return Err(Error::Schema(format!("loop at vertex {i}")));
            }
            for (j, &x) in row.iter().enumerate() {
                if adjacency[j][i] != x {
                    return Err(Error::Schema(format!("adjacency is not symmetric at ({i}, {j})")));
                }
            }
        }
        if root.is_some_and(|r| r >= n) {
            return Err(Error::Schema(format!("root outside 0..{n}")));
        }
        Ok(Graph {
            name: name.into(),
            adjacency,
            root,
            dynkin: None,
        })
    }

    pub fn from_file(name: impl Into<String>, f: &GraphFile) -> Result<Self> {
        let n = f.vertices;
        let mut adj = vec![vec![0u64; n]; n];
        for e in &f.edges {
            let (u, v, m) = match e.as_slice() {
                [u, v] => (*u as usize, *v as usize, 1),
                [u, v, m] => (*u as usize, *v as usize, *m),
                _ => return Err(Error::Schema(format!("edge {e:?} must be [u, v] or [u, v, mult]"))),
            };
            if u >= n || v >= n {
                return Err(Error::Schema(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Schema(format!("loop at vertex {u}")));
            }
            adj[u][v] += m;
            adj[v][u] += m;
        }
        Graph::from_adjacency(name, adj, f.root)
    }

    pub fn to_file(&self) -> GraphFile {
        let n = self.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacency[u][v] > 0 {
                    edges.push(vec![u as u64, v as u64, self.adjacency[u][v]]);
                }
            }
        }
        GraphFile {
            vertices: n,
            edges,
            root: self.root,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let f: GraphFile = serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
        Graph::from_file(path.display().to_string(), &f)
    }

    pub fn finite(t: FiniteType) -> Self {
        Graph {
            name: t.to_string(),
            adjacency: t.adjacency(),
            root: Some(0),
            dynkin: Some(t),
        }
    }

    pub fn affine(t: AffineType) -> Self {
        Graph {
            name: format!("affine {t}"),
            adjacency: t.adjacency(),
            root: Some(0),
            dynkin: None,
        }
    }

    /// A random multigraph on `n` vertices with edge multiplicities in 0..=2.
    pub fn random(rng: &mut impl Rng, n: usize, density: f64) -> Self {
        let mut adj = vec![vec![0u64; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(density) {
                    let m = if rng.random_bool(0.2) { 2 } else { 1 };
                    adj[u][v] = m;
                    adj[v][u] = m;
                }
            }
        }
        Graph {
            name: format!("random graph on {n} vertices"),
            adjacency: adj,
            root: None,
            dynkin: None,
        }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Simple edges as pairs; None when some multiplicity exceeds 1.
    pub fn simple_edges(&self) -> Option<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                match self.adjacency[u][v] {
                    0 => {}
                    1 => out.push((u, v)),
                    _ => return None,
                }
            }
        }
        Some(out)
    }

    /// E - qC + q²E.
    pub fn kernel_matrix(&self) -> Matrix<QPoly> {
        let n = self.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                QPoly::from_ints(&[1, 0, 1])
            } else {
                QPoly::from_ints(&[0, -(self.adjacency[i][j] as i64)])
            }
        })
    }
}

/// `dynkin:A5`, `affine:E8` or `gfile:PATH`.
pub fn graph_from_selector(sel: &str) -> Result<Graph> {
    if let Some(t) = sel.strip_prefix("dynkin:") {
        return Ok(Graph::finite(t.parse()?));
    }
    if let Some(t) = sel.strip_prefix("affine:") {
        return Ok(Graph::affine(t.parse::<FiniteType>()?.into()));
    }
    if let Some(p) = sel.strip_prefix("gfile:") {
        return Graph::load(p);
    }
    Err(Error::InvalidArgument(format!(
        "unknown graph selector '{sel}' (use dynkin:X, affine:X or gfile:PATH)"
    )))
}

fn bareiss_det(m: &Matrix<QPoly>) -> QPoly {
    if m.rows() == 0 {
        return QPoly::one();
    }
    m.det_bareiss(|a, b| a.exact_div(b).expect("Bareiss division is exact"))
}

/// H as adj(K)/det(K), with K·adj(K) = det(K)·E re-verified.
pub fn preprojective_h(g: &Graph) -> Result<FracMatrix> {
    let k = g.kernel_matrix();
    let n = g.len();
    let det = bareiss_det(&k);
    let idx: Vec<usize> = (0..n).collect();
    let adj = Matrix::par_from_fn(n, n, |i, j| {
        // adj(K)_{ij} = (-1)^{i+j} det K with row j and column i removed
        let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != j).collect();
        let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != i).collect();
        let minor = bareiss_det(&k.submatrix(&rows, &cols));
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    });
    let prod = k.mul(&adj);
    if let Some(w) = first_failure(n, n, |i, j| {
        if i == j {
            prod[(i, j)] == det
        } else {
            prod[(i, j)].is_zero()
        }
    }) {
        return Err(Error::Validation(format!("adjugate check failed at {w:?}")));
    }
    Ok(FracMatrix::new(adj, det))
}

/// det(E - qC + q²E).
pub fn kernel_det(g: &Graph) -> QPoly {
    bareiss_det(&g.kernel_matrix())
}

/// Vertex permutations preserving the adjacency matrix.
pub fn graph_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let k = perm.len();
        let n = g.len();
        if k == n {
            out.push(perm.clone());
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let fits = (0..k).all(|u| g.adjacency[u][k] == g.adjacency[perm[u]][v]);
            if fits {
                used[v] = true;
                perm.push(v);
                extend(g, perm, used, out);
                perm.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), &mut vec![false; g.len()], &mut out);
    out
}

/// For a finite Dynkin graph with Coxeter number h, the Poincaré series of
/// the preprojective algebra is (E + P q^h) H for the Nakayama permutation P.
/// Returns that polynomial matrix, trying each graph automorphism as P.
pub fn dynkin_hilbert_series(g: &Graph, coxeter: usize) -> Result<Option<Matrix<QPoly>>> {
    let h = preprojective_h(g)?;
    let n = g.len();
    for perm in graph_automorphisms(g) {
        let cells: Option<Vec<QPoly>> = (0..n * n)
            .into_par_iter()
            .map(|x| {
                let (i, j) = (x / n, x % n);
                let num = &h.num[(i, j)] + &h.num[(perm[i], j)].shift(coxeter);
                num.exact_div(&h.den)
            })
            .collect();
        if let Some(c) = cells {
            return Ok(Some(Matrix::from_rows(c.chunks(n.max(1)).map(<[QPoly]>::to_vec).collect())?));
        }
    }
    Ok(None)
}

pub fn coxeter_number(t: FiniteType) -> usize {
    2 * t.num_positive_roots() / t.rank()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finiteness {
    /// Every entry of H = (E - qC + q^2E)^{-1} is a polynomial.
    pub polynomial: bool,
    pub det_vanishes_at_one: bool,
    /// For finite Dynkin graphs: (E + P q^h) H is a polynomial matrix with
    /// nonnegative integer coefficients.
    pub dynkin_series_polynomial: Option<bool>,
}

pub fn dynkin_finiteness(g: &Graph) -> Result<Finiteness> {
    let h = preprojective_h(g)?;
    let dynkin_series_polynomial = match g.dynkin {
        Some(t) => Some(
            dynkin_hilbert_series(g, coxeter_number(t))?
                .is_some_and(|m| m.entries().iter().all(QPoly::has_nonneg_int_coeffs)),
        ),
        None => None,
    };
    Ok(Finiteness {
        polynomial: h.is_polynomial(),
        det_vanishes_at_one: kernel_det(g).eval_at_one().is_zero(),
        dynkin_series_polynomial,
    })
}

pub fn dynkin_finiteness_check(g: &Graph) -> Result<Report> {
    let f = dynkin_finiteness(g)?;
    let mut r = Report::new();
    r.push(IdentityCheck::new("H polynomial", f.polynomial));
    r.push(IdentityCheck::new("det(E - qC + q^2E) vanishes at 1", f.det_vanishes_at_one));
    if let Some(p) = f.dynkin_series_polynomial {
        r.push(IdentityCheck::new("(E + P q^h) H polynomial", p));
    }
    Ok(r)
}

/// K·H = E and H(0) = E, plus nonnegative integer series coefficients up to `terms`.
pub fn preprojective_identities(g: &Graph, terms: usize) -> Result<Report> {
    let h = preprojective_h(g)?;
    let n = g.len();
    let k = FracMatrix::from_poly(g.kernel_matrix());
    let mut r = Report::new();
    r.push(IdentityCheck::from_witness("(E - qC + q^2E) H = E", k.mul(&h).mismatch(&FracMatrix::identity(n))));
    let h0 = h.eval(&Cyclo::zero())?;
    r.push(IdentityCheck::new("H(0) = E", h0.is_identity()));
    let entries = h.entries();
    let bad = (0..n * n).into_par_iter().find_first(|&x| {
        entries.entries()[x]
            .series_prefix(terms)
            .map(|c| c.iter().any(|v| v.to_integer().is_none_or(|z| z < 0.into())))
            .unwrap_or(true)
    });
    r.push(IdentityCheck::from_witness(
        "series coefficients are nonnegative integers",
        bad.map(|x| vec![x / n, x % n]),
    ));
    Ok(r)
}

/// q·H_{rr} equals the branched continued fraction of the graph rooted at r.
pub fn continued_fraction_check(g: &Graph) -> Result<(RatQ, RatQ, bool)> {
    let root = g.root.unwrap_or(0);
    let edges = g
        .simple_edges()
        .ok_or_else(|| Error::InvalidArgument(format!("{} has multiple edges", g.name)))?;
    let tree = RootedTree::from_edges(g.len(), &edges, root)?;
    let cf = tree_continued_fraction(&tree)?;
    let h = preprojective_h(g)?;
    let qh = RatQ::new(&h.num[(root, root)] * &QPoly::q(), h.den.clone())?;
    let ok = qh == cf;
    Ok((qh, cf, ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_graphs() {
        let one = Graph::from_adjacency("pt", vec![vec![0]], None).unwrap();
        let h = preprojective_h(&one).unwrap();
        assert_eq!(h.entry(0, 0), RatQ::recip_poly(QPoly::from_ints(&[1, 0, 1])).unwrap());
        let a2 = Graph::finite(FiniteType::A(2));
        assert_eq!(kernel_det(&a2), &QPoly::from_ints(&[1, 0, 1]).pow(2) - &QPoly::from_ints(&[0, 0, 1]));
        let a3 = graph_from_selector("dynkin:A3").unwrap();
        let f = dynkin_finiteness(&a3).unwrap();
        assert!(!f.polynomial && !f.det_vanishes_at_one);
        assert_eq!(f.dynkin_series_polynomial, Some(true));
        for t in FiniteType::all_up_to(8) {
            let f = dynkin_finiteness(&Graph::finite(t)).unwrap();
            assert_eq!(f.dynkin_series_polynomial, Some(true), "{t}");
        }
        let tri = Graph::affine(AffineType::A(2));
        let f = dynkin_finiteness(&tri).unwrap();
        assert!(f.det_vanishes_at_one && !f.polynomial);
    }

    #[test]
    fn wild_double_edge() {
        let f = GraphFile {
            vertices: 2,
            edges: vec![vec![0, 1, 3]],
            root: None,
        };
        let g = Graph::from_file("wild", &f).unwrap();
        let fin = dynkin_finiteness(&g).unwrap();
        assert!(!fin.polynomial && !fin.det_vanishes_at_one);
        assert!(preprojective_identities(&g, 12).unwrap().pass());
    }

    #[test]
    fn e8_affine_continued_fraction() {
        let g = Graph::affine(AffineType::E8);
        let (_, _, ok) = continued_fraction_check(&g).unwrap();
        assert!(ok);
    }

    #[test]
    fn random_graphs_invert() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in [3, 4, 5] {
            let g = Graph::random(&mut rng, n, 0.5);
            let r = preprojective_identities(&g, 8).unwrap();
            assert!(r.checks[0].pass && r.checks[1].pass, "{:?}", g.adjacency);
        }
    }

    #[test]
    fn bad_files() {
        let f = GraphFile {
            vertices: 2,
            edges: vec![vec![0, 0, 1]],
            root: None,
        };
        assert!(matches!(Graph::from_file("x", &f), Err(Error::Schema(_))));
        let f = GraphFile {
            vertices: 2,
            edges: vec![vec![0, 5]],
            root: None,
        };
        assert!(Graph::from_file("x", &f).is_err());
    }
}
