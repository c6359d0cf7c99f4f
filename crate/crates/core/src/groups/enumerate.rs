//! Brute-force closure of a finite matrix group and its conjugacy classes.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::Cyclo;
use crate::linalg::Matrix;

use super::{Check, GroupModel, ValidationReport};

type Key = Vec<(Vec<BigInt>, BigInt)>;

fn key(m: &Matrix<Cyclo>, conductor: u64) -> Key {
    m.entries().iter().map(|c| c.lift(conductor)).collect()
}

#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    pub elements: Vec<Matrix<Cyclo>>,
    /// Element indices per class; class 0 holds the identity.
    pub classes: Vec<Vec<usize>>,
    conductor: u64,
    index: HashMap<Key, usize>,
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn find(&self, m: &Matrix<Cyclo>) -> Option<usize> {
        if m.entries().iter().any(|c| self.conductor % c.conductor() != 0) {
            return None;
        }
        self.index.get(&key(m, self.conductor)).copied()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&element))
            .expect("every element lies in a class")
    }
}

fn inverse_unitary(m: &Matrix<Cyclo>) -> Matrix<Cyclo> {
    m.transpose().conj()
}

/// Closes `gens` under multiplication (at most `cap` elements) and splits the
/// result into conjugacy classes. Generators must be unitary.
pub fn enumerate_from_generators(gens: &[Matrix<Cyclo>], cap: usize) -> Result<EnumeratedGroup> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
    let d = first.rows();
    let mut conductor = 4u64;
    for g in gens {
        if g.rows() != d || !g.is_square() {
            return Err(Error::InvalidArgument("generators of different shapes".into()));
        }
        if !g.mul(&inverse_unitary(g)).is_identity() {
            return Err(Error::InvalidArgument("generator is not unitary".into()));
        }
        for c in g.entries() {
            conductor = conductor.lcm(&c.conductor());
        }
    }
    let id = Matrix::<Cyclo>::identity(d);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(key(&id, conductor), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = elements[x].mul(g);
            let k = key(&y, conductor);
            if index.contains_key(&k) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(k, elements.len());
            queue.push_back(elements.len());
            elements.push(y);
        }
    }
    let inverses: Vec<Matrix<Cyclo>> = elements.iter().map(inverse_unitary).collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes = Vec::new();
    for x in 0..elements.len() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for (g, gi) in elements.iter().zip(&inverses) {
            let y = g.mul(&elements[x]).mul(gi);
            let j = index[&key(&y, conductor)];
            if class_of[j] == usize::MAX {
                class_of[j] = c;
                members.push(j);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(EnumeratedGroup {
        elements,
        classes,
        conductor,
        index,
    })
}

/// Compares a brute-force enumeration with a built-in model: order, class
/// count, and for each built-in representative its class size and trace.
pub fn matches_builtin(model: &GroupModel, gens: &[Matrix<Cyclo>], cap: usize) -> Result<ValidationReport> {
    let e = enumerate_from_generators(gens, cap)?;
    let mut checks = vec![
        Check::new(
            "order",
            e.order() as u64 == model.order,
            Some(format!("{} elements", e.order())),
        ),
        Check::new(
            "class count",
            e.classes.len() == model.num_classes(),
            Some(format!("{} classes", e.classes.len())),
        ),
    ];
    let reps = model
        .class_reps
        .as_ref()
        .ok_or_else(|| Error::MissingData(format!("{} has no class representatives", model.name)))?;
    let mut fail = None;
    let mut seen = Vec::new();
    for (k, r) in reps.iter().enumerate() {
        let Some(idx) = e.find(r) else {
            fail = Some(format!("representative {k} is not in the generated group"));
            break;
        };
        let c = e.class_of(idx);
        if seen.contains(&c) {
            fail = Some(format!("representatives share class {c}"));
            break;
        }
        seen.push(c);
        if e.classes[c].len() as u64 != model.class_sizes[k] {
            fail = Some(format!("class {k}: size {} vs {}", e.classes[c].len(), model.class_sizes[k]));
            break;
        }
        if let Some(bad) = e.classes[c].iter().find(|&&x| e.elements[x].trace() != model.defining_row[k]) {
            fail = Some(format!("class {k}: element {bad} has a different trace"));
            break;
        }
    }
    checks.push(Check::new("classes and traces", fail.is_none(), fail));
    Ok(ValidationReport {
        group: model.name.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{make_binary_dihedral, make_cyclic_su2, su2_generators};
    use super::*;

    #[test]
    fn quaternion_group() {
        let q8 = make_binary_dihedral(2).unwrap();
        let e = enumerate_from_generators(&su2_generators(&q8).unwrap(), 100).unwrap();
        assert_eq!(e.order(), 8);
        let mut sizes = e.class_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert!(matches_builtin(&q8, &su2_generators(&q8).unwrap(), 100).unwrap().pass());
    }

    #[test]
    fn cyclic_and_cap() {
        let z3 = make_cyclic_su2(3).unwrap();
        let gens = su2_generators(&z3).unwrap();
        let e = enumerate_from_generators(&gens, 10).unwrap();
        assert_eq!((e.order(), e.classes.len()), (3, 3));
        assert_eq!(
            enumerate_from_generators(&gens, 2).unwrap_err(),
            Error::CapExceeded { cap: 2 }
        );
    }
}
