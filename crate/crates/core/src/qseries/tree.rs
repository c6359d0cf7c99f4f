use crate::error::{Error, Result};

use super::{QPoly, RatQ};

/// A finite tree with a distinguished root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// Orients an undirected edge list away from `root`. Fails unless the
    /// edges form a spanning tree on `n` vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        if root >= n {
            return Err(Error::Index(format!("root {root} with {n} vertices")));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidArgument(format!(
                "{} edges cannot form a tree on {n} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidArgument(format!("bad tree edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    children[v].push(w);
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument("tree edges are not connected".into()));
        }
        for c in children.iter_mut() {
            c.sort_unstable();
        }
        Ok(RootedTree { root, children })
    }

    pub fn single() -> Self {
        RootedTree {
            root: 0,
            children: vec![Vec::new()],
        }
    }

    /// Path 0 - 1 - ... - (n-1) rooted at 0.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges, 0).expect("a path is a tree")
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }
}

/// Evaluates `f_v = 1 / (z - Σ_{c child of v} f_c)` bottom-up with
/// `z = q + 1/q`, returning `f_root`.
pub fn tree_continued_fraction(tree: &RootedTree) -> Result<RatQ> {
    fn go(tree: &RootedTree, v: usize) -> Result<RatQ> {
        let mut sum = RatQ::zero();
        for &c in tree.children(v) {
            sum = &sum + &go(tree, c)?;
        }
        // 1 / (z - s) = q / (q^2 + 1 - q s)
        let q = RatQ::q();
        let denom = &RatQ::from_poly(QPoly::from_ints(&[1, 0, 1])) - &(&q * &sum);
        if denom.is_zero() {
            return Err(Error::ContinuedFraction { vertex: v });
        }
        q.checked_div(&denom)
    }
    go(tree, tree.root())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_trees() {
        let f = tree_continued_fraction(&RootedTree::single()).unwrap();
        assert_eq!(f, RatQ::new(QPoly::from_ints(&[0, 1]), QPoly::from_ints(&[1, 0, 1])).unwrap());
        let f = tree_continued_fraction(&RootedTree::path(2)).unwrap();
        let expect = RatQ::new(QPoly::from_ints(&[0, 1, 0, 1]), QPoly::from_ints(&[1, 0, 1, 0, 1])).unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn rejects_non_trees() {
        assert!(RootedTree::from_edges(3, &[(0, 1), (1, 0)], 0).is_err());
        assert!(RootedTree::from_edges(3, &[(0, 1)], 0).is_err());
    }
}
