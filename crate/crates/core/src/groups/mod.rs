//! Finite groups given by conjugacy-class data, a character table and a
//! defining representation.

mod dynkin;
mod enumerate;
mod file;
mod su2;
mod symmetric;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use once_cell::sync::OnceCell;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};
use crate::linalg::Matrix;
use crate::partition::Partition;
use crate::qseries::QPoly;

pub use dynkin::{AffineType, DynkinData, FiniteType};
pub use enumerate::{enumerate_from_generators, matches_builtin, EnumeratedGroup};
pub use file::{cyclo_from_literal, cyclo_literal, load_group, save_group, GroupFile};
pub use su2::{
    make_binary_dihedral, make_binary_icosahedral, make_binary_octahedral, make_binary_tetrahedral,
    make_cyclic_su2, quaternion_matrix, su2_generators,
};
pub use symmetric::{make_symmetric, mn_character, symmetric_limit, SYM_LIMIT_ENV};

/// Which construction a model came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Cyclic(u64),
    BinaryDihedral(u64),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Symmetric(usize),
    Custom,
}

impl Family {
    /// The affine diagram the McKay correspondence attaches to an SU(2) family.
    pub fn affine_type(&self) -> Option<AffineType> {
        match *self {
            Family::Cyclic(m) => Some(AffineType::A(m as usize - 1)),
            Family::BinaryDihedral(n) => Some(AffineType::D(n as usize + 2)),
            Family::Tetrahedral => Some(AffineType::E6),
            Family::Octahedral => Some(AffineType::E7),
            Family::Icosahedral => Some(AffineType::E8),
            _ => None,
        }
    }

    pub fn is_su2(&self) -> bool {
        self.affine_type().is_some()
    }

    /// Recognises the canonical model names produced by the constructors.
    pub fn from_name(name: &str) -> Family {
        let num = |s: &str| s.parse::<u64>().ok();
        match name {
            "2T" => Family::Tetrahedral,
            "2O" => Family::Octahedral,
            "2I" => Family::Icosahedral,
            _ => {
                if let Some(m) = name.strip_prefix("cyclic:").and_then(num) {
                    Family::Cyclic(m)
                } else if let Some(n) = name.strip_prefix("bd:").and_then(num) {
                    Family::BinaryDihedral(n)
                } else if let Some(d) = name.strip_prefix("sym:").and_then(num) {
                    Family::Symmetric(d as usize)
                } else {
                    Family::Custom
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupModel {
    pub name: String,
    pub family: Family,
    pub order: u64,
    pub dim_defining: usize,
    pub class_sizes: Vec<u64>,
    /// Rows are irreducibles, columns are classes.
    pub char_table: Matrix<Cyclo>,
    pub defining_row: Vec<Cyclo>,
    pub class_reps: Option<Vec<Matrix<Cyclo>>>,
    pub irrep_labels: Vec<String>,
    pub class_labels: Vec<String>,
    kernels: OnceCell<Vec<QPoly>>,
}

/// One line of a validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: Option<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub group: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.pass { "PASS" } else { "FAIL" })?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl GroupModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        order: u64,
        dim_defining: usize,
        class_sizes: Vec<u64>,
        char_table: Matrix<Cyclo>,
        defining_row: Vec<Cyclo>,
        class_reps: Option<Vec<Matrix<Cyclo>>>,
    ) -> Self {
        let name = name.into();
        let n = class_sizes.len();
        GroupModel {
            family: Family::from_name(&name),
            name,
            order,
            dim_defining,
            class_sizes,
            char_table,
            defining_row,
            class_reps,
            irrep_labels: (0..n).map(|i| format!("R{i}")).collect(),
            class_labels: (0..n).map(|k| format!("C{k}")).collect(),
            kernels: OnceCell::new(),
        }
    }

    pub fn with_labels(mut self, irreps: Vec<String>, classes: Vec<String>) -> Self {
        self.irrep_labels = irreps;
        self.class_labels = classes;
        self
    }

    /// Runs the full invariant suite and fails on the first violation.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        match report.first_failure() {
            None => Ok(self),
            Some(c) => Err(Error::Validation(format!(
                "{}: {}{}",
                self.name,
                c.name,
                c.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
            ))),
        }
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn dims(&self) -> Vec<u64> {
        (0..self.num_classes())
            .map(|i| {
                self.char_table[(i, 0)]
                    .to_integer()
                    .and_then(|d| d.to_u64())
                    .unwrap_or(0)
            })
            .collect()
    }

    pub fn dim(&self, i: usize) -> u64 {
        self.dims()[i]
    }

    pub fn order_q(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.order))
    }

    /// Smallest conductor containing every table entry and representative.
    pub fn conductor(&self) -> u64 {
        let mut m = 1u64;
        for c in self.char_table.entries().iter().chain(&self.defining_row) {
            m = m.lcm(&c.conductor());
        }
        if let Some(reps) = &self.class_reps {
            for r in reps {
                for c in r.entries() {
                    m = m.lcm(&c.conductor());
                }
            }
        }
        m
    }

    pub fn character(&self, i: usize) -> &[Cyclo] {
        self.char_table.row(i)
    }

    /// (x, y) = (1/|G|) Σ |C_k| x(g_k) conj y(g_k).
    pub fn inner(&self, x: &[Cyclo], y: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero();
        for k in 0..self.num_classes() {
            let t = &(&x[k] * &y[k].conj()) * &Cyclo::from_int(self.class_sizes[k]);
            acc = &acc + &t;
        }
        acc.scale(&Rational::new(BigInt::from(1), BigInt::from(self.order)))
    }

    /// Multiplicities of each irreducible in the class function `x`.
    pub fn decompose(&self, x: &[Cyclo]) -> Vec<Cyclo> {
        (0..self.num_classes())
            .map(|i| self.inner(x, self.character(i)))
            .collect()
    }

    /// Multiplicities of the irreducibles in the defining representation.
    pub fn defining_multiplicities(&self) -> Result<Vec<u64>> {
        self.decompose(&self.defining_row)
            .into_iter()
            .map(|c| {
                c.to_integer()
                    .and_then(|n| n.to_u64())
                    .ok_or_else(|| Error::Validation(format!("defining multiplicity {c} is not a natural number")))
            })
            .collect()
    }

    /// Pointwise product of two class functions.
    pub fn product(x: &[Cyclo], y: &[Cyclo]) -> Vec<Cyclo> {
        x.iter().zip(y).map(|(a, b)| a * b).collect()
    }

    /// `det(E - qR(g_k))` for each class.
    pub fn class_kernels(&self) -> Result<&[QPoly]> {
        self.kernels
            .get_or_try_init(|| self.compute_kernels())
            .map(Vec::as_slice)
    }

    fn compute_kernels(&self) -> Result<Vec<QPoly>> {
        if let Family::Symmetric(d) = self.family {
            let parts = Partition::all(d);
            let mut classes = parts;
            classes.reverse();
            if classes.len() == self.num_classes() {
                return Ok(classes
                    .iter()
                    .map(|mu| {
                        mu.parts()
                            .iter()
                            .fold(QPoly::one(), |acc, &l| &acc * &QPoly::one_minus_q_pow(l))
                    })
                    .collect());
            }
        }
        if let Some(reps) = &self.class_reps {
            return Ok(reps.iter().map(Matrix::det_one_minus_q).collect());
        }
        match self.dim_defining {
            1 => Ok(self
                .defining_row
                .iter()
                .map(|c| QPoly::new(vec![Cyclo::one(), -c]))
                .collect()),
            // without representatives a 2-dimensional defining representation is taken to lie in SU(2)
            2 => Ok(self
                .defining_row
                .iter()
                .map(|t| QPoly::new(vec![Cyclo::one(), -t, Cyclo::one()]))
                .collect()),
            d => Err(Error::MissingData(format!(
                "{}: class representatives are needed for a {d}-dimensional defining representation",
                self.name
            ))),
        }
    }

    /// det(E - R(g_k)) for each class.
    pub fn fixed_point_dets(&self) -> Result<Vec<Cyclo>> {
        Ok(self.class_kernels()?.iter().map(QPoly::eval_at_one).collect())
    }

    /// True iff det(E - R(g)) ≠ 0 on every nonidentity class.
    pub fn is_free_action(&self) -> Result<bool> {
        Ok(self.fixed_point_dets()?.iter().skip(1).all(|d| !d.is_zero()))
    }

    pub fn require_free(&self) -> Result<()> {
        let dets = self.fixed_point_dets()?;
        match dets.iter().skip(1).position(Cyclo::is_zero) {
            Some(k) => Err(Error::NotFree { class: k + 1 }),
            None => Ok(()),
        }
    }

    /// True when every irreducible has det R(g) = 1 on the defining representation.
    pub fn is_special(&self) -> Result<bool> {
        let d = self.dim_defining as u32;
        Ok(self.class_kernels()?.iter().all(|p| {
            // leading coefficient of det(E - qR) is (-1)^d det R
            let lead = p.coeff(d as usize);
            if d % 2 == 0 {
                lead.is_one()
            } else {
                (-lead).is_one()
            }
        }))
    }

    /// Compares the mathematical content, ignoring labels.
    pub fn same_data(&self, other: &GroupModel) -> bool {
        self.name == other.name
            && self.order == other.order
            && self.dim_defining == other.dim_defining
            && self.class_sizes == other.class_sizes
            && self.char_table == other.char_table
            && self.defining_row == other.defining_row
            && self.class_reps == other.class_reps
    }

    /// Runs every invariant and reports each separately.
    pub fn validate(&self) -> ValidationReport {
        let n = self.num_classes();
        let mut checks = Vec::new();
        let shape_ok = self.char_table.rows() == n && self.char_table.cols() == n && self.defining_row.len() == n;
        checks.push(Check::new(
            "shape",
            shape_ok,
            (!shape_ok).then(|| {
                format!(
                    "{} classes, table {}x{}, defining row {}",
                    n,
                    self.char_table.rows(),
                    self.char_table.cols(),
                    self.defining_row.len()
                )
            }),
        ));
        if !shape_ok || n == 0 {
            return ValidationReport {
                group: self.name.clone(),
                checks,
            };
        }
        let total: u64 = self.class_sizes.iter().sum();
        checks.push(Check::new(
            "class sizes sum to order",
            total == self.order,
            (total != self.order).then(|| format!("sum {total} vs order {}", self.order)),
        ));
        checks.push(Check::new(
            "identity class first",
            self.class_sizes[0] == 1,
            None,
        ));
        let trivial = (0..n).all(|k| self.char_table[(0, k)].is_one());
        checks.push(Check::new("trivial character first", trivial, None));

        let mut dim_detail = None;
        let mut sum_sq = BigInt::zero();
        for i in 0..n {
            match self.char_table[(i, 0)].to_integer() {
                Some(d) if d > BigInt::zero() => sum_sq += &d * &d,
                _ => dim_detail = Some(format!("row {i} has non-integral degree")),
            }
        }
        if dim_detail.is_none() && sum_sq != BigInt::from(self.order) {
            dim_detail = Some(format!("sum of squared degrees {sum_sq}"));
        }
        checks.push(Check::new("sum of squared degrees", dim_detail.is_none(), dim_detail));

        let mut row_fail = None;
        'rows: for i in 0..n {
            for j in 0..=i {
                let v = self.inner(self.character(i), self.character(j));
                let ok = if i == j { v.is_one() } else { v.is_zero() };
                if !ok {
                    row_fail = Some(format!("rows ({i}, {j}) give {v}"));
                    break 'rows;
                }
            }
        }
        checks.push(Check::new("row orthogonality", row_fail.is_none(), row_fail));

        let mut col_fail = None;
        'cols: for k in 0..n {
            for l in 0..=k {
                let mut s = Cyclo::zero();
                for i in 0..n {
                    s = &s + &(&self.char_table[(i, k)] * &self.char_table[(i, l)].conj());
                }
                let expect = if k == l {
                    Cyclo::from_rational(Rational::new(
                        BigInt::from(self.order),
                        BigInt::from(self.class_sizes[k].max(1)),
                    ))
                } else {
                    Cyclo::zero()
                };
                if s != expect {
                    col_fail = Some(format!("columns ({k}, {l}) give {s}"));
                    break 'cols;
                }
            }
        }
        checks.push(Check::new("column orthogonality", col_fail.is_none(), col_fail));

        let def = self.defining_multiplicities();
        let def_ok = def.is_ok()
            && self.defining_row[0] == Cyclo::from_int(self.dim_defining as i64);
        checks.push(Check::new(
            "defining character",
            def_ok,
            (!def_ok).then(|| match def {
                Err(e) => e.to_string(),
                Ok(_) => format!("degree {} vs dim {}", self.defining_row[0], self.dim_defining),
            }),
        ));

        if let Some(reps) = &self.class_reps {
            let mut fail = None;
            if reps.len() != n {
                fail = Some(format!("{} representatives for {n} classes", reps.len()));
            } else {
                for (k, r) in reps.iter().enumerate() {
                    if r.rows() != self.dim_defining || !r.is_square() {
                        fail = Some(format!("representative {k} has the wrong shape"));
                        break;
                    }
                    if r.trace() != self.defining_row[k] {
                        fail = Some(format!("class {k}: trace {} vs {}", r.trace(), self.defining_row[k]));
                        break;
                    }
                }
                if fail.is_none() && !reps[0].is_identity() {
                    fail = Some("representative of class 0 is not the identity".into());
                }
            }
            checks.push(Check::new("representative traces", fail.is_none(), fail));
        }
        ValidationReport {
            group: self.name.clone(),
            checks,
        }
    }
}

/// Parses a group selector: `cyclic:N`, `bd:N`, `2T`, `2O`, `2I`, `sym:D`, `file:PATH`.
pub fn group_from_selector(sel: &str) -> Result<GroupModel> {
    let bad = || Error::InvalidArgument(format!("unknown group selector '{sel}'"));
    let int = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    match sel {
        "2T" => make_binary_tetrahedral(),
        "2O" => make_binary_octahedral(),
        "2I" => make_binary_icosahedral(),
        _ => {
            let (kind, arg) = sel.split_once(':').ok_or_else(bad)?;
            match kind {
                "cyclic" => make_cyclic_su2(int(arg)?),
                "bd" => make_binary_dihedral(int(arg)?),
                "sym" => make_symmetric(int(arg)? as usize),
                "file" => load_group(arg),
                _ => Err(bad()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(group_from_selector("cyclic:4").unwrap().order, 4);
        assert_eq!(group_from_selector("bd:3").unwrap().order, 12);
        assert_eq!(group_from_selector("sym:3").unwrap().order, 6);
        assert!(group_from_selector("nope").is_err());
        assert!(group_from_selector("cyclic:x").is_err());
    }

    #[test]
    fn free_actions() {
        assert!(make_cyclic_su2(4).unwrap().is_free_action().unwrap());
        assert!(!make_symmetric(3).unwrap().is_free_action().unwrap());
        assert!(make_binary_icosahedral().unwrap().is_free_action().unwrap());
    }
}
