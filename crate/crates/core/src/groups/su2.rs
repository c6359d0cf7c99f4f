//! Finite subgroups of SU(2): cyclic, binary dihedral, binary tetrahedral,
//! octahedral and icosahedral, with irreducibles in affine Dynkin node order.

use crate::error::{Error, Result};
use crate::exact::Cyclo;
use crate::linalg::Matrix;

use super::GroupModel;

fn z(m: u64, k: i64) -> Cyclo {
    Cyclo::root_of_unity(m, k)
}

fn int(n: i64) -> Cyclo {
    Cyclo::from_int(n)
}

fn diag2(a: Cyclo, b: Cyclo) -> Matrix<Cyclo> {
    Matrix::from_rows(vec![vec![a, Cyclo::zero()], vec![Cyclo::zero(), b]]).expect("2x2")
}

/// The matrix of the quaternion `a + b i + c j + d k` acting on C².
pub fn quaternion_matrix(a: &Cyclo, b: &Cyclo, c: &Cyclo, d: &Cyclo) -> Matrix<Cyclo> {
    let i = z(4, 1);
    Matrix::from_rows(vec![
        vec![a + &(b * &i), c + &(d * &i)],
        vec![&(-c) + &(d * &i), a - &(b * &i)],
    ])
    .expect("2x2")
}

fn quat(a: Cyclo, b: Cyclo, c: Cyclo, d: Cyclo) -> Matrix<Cyclo> {
    quaternion_matrix(&a, &b, &c, &d)
}

fn table(rows: Vec<Vec<Cyclo>>) -> Matrix<Cyclo> {
    Matrix::from_rows(rows).expect("square character table")
}

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Generators of the defining representation of each SU(2) family.
pub fn su2_generators(model: &GroupModel) -> Option<Vec<Matrix<Cyclo>>> {
    use super::Family::*;
    let half = Cyclo::frac(1, 2);
    Some(match model.family {
        Cyclic(m) => vec![diag2(z(m, 1), z(m, -1))],
        BinaryDihedral(n) => vec![
            diag2(z(2 * n, 1), z(2 * n, -1)),
            Matrix::from_ints(&[vec![0, 1], vec![-1, 0]]),
        ],
        Tetrahedral => vec![
            quat(Cyclo::zero(), Cyclo::one(), Cyclo::zero(), Cyclo::zero()),
            quat(half.clone(), half.clone(), half.clone(), half),
        ],
        Octahedral => {
            let r = &(z(8, 1) + z(8, -1)) * &half;
            vec![
                quat(r.clone(), r, Cyclo::zero(), Cyclo::zero()),
                quat(half.clone(), half.clone(), half.clone(), half),
            ]
        }
        Icosahedral => {
            let (t, _) = icosahedral_t();
            vec![t, quat(Cyclo::zero(), Cyclo::one(), Cyclo::zero(), Cyclo::zero())]
        }
        _ => return None,
    })
}

/// Cyclic group of order m embedded as diag(ζ^k, ζ^{-k}).
pub fn make_cyclic_su2(m: u64) -> Result<GroupModel> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("cyclic group order must be at least 2, got {m}")));
    }
    let n = m as usize;
    let mi = m as i64;
    let chars = Matrix::from_fn(n, n, |i, k| z(m, (i * k) as i64));
    let defining: Vec<Cyclo> = (0..mi).map(|k| &z(m, k) + &z(m, -k)).collect();
    let reps = (0..mi).map(|k| diag2(z(m, k), z(m, -k))).collect();
    GroupModel::new(
        format!("cyclic:{m}"),
        m,
        2,
        vec![1; n],
        chars,
        defining,
        Some(reps),
    )
    .with_labels(
        (0..n).map(|i| format!("chi{i}")).collect(),
        (0..n).map(|k| format!("g^{k}")).collect(),
    )
    .validated()
}

/// Binary dihedral group of order 4n generated by a = diag(ζ_{2n}, ζ_{2n}^{-1})
/// and b = [[0,1],[-1,0]]. Classes: E, a^1..a^{n-1}, a^n = -E, b, ab.
/// Irreducibles in D̃_{n+2} node order: trivial, the (ε_a = 1, χ(b) = -1)
/// character, ρ_1..ρ_{n-1}, then the two characters with χ(a) = -1.
pub fn make_binary_dihedral(n: u64) -> Result<GroupModel> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("binary dihedral parameter must be at least 2, got {n}")));
    }
    let m = 2 * n;
    let ni = n as i64;
    let nc = n as usize + 3;
    // class exponents of a for the rotation classes, then the two reflection classes
    let rot: Vec<i64> = (0..=ni).collect();
    let one_dim = |eps: i64, beta: Cyclo| -> Vec<Cyclo> {
        let mut row: Vec<Cyclo> = rot.iter().map(|&k| int(if k % 2 == 1 { eps } else { 1 })).collect();
        row.push(beta.clone());
        row.push(&beta * &int(eps));
        row
    };
    let (beta_plus, beta_minus) = if n % 2 == 0 {
        (int(1), int(-1))
    } else {
        (z(4, 1), z(4, -1))
    };
    let mut rows = vec![one_dim(1, int(1)), one_dim(1, int(-1))];
    for h in 1..ni {
        let mut row: Vec<Cyclo> = rot.iter().map(|&k| &z(m, h * k) + &z(m, -h * k)).collect();
        row.push(Cyclo::zero());
        row.push(Cyclo::zero());
        rows.push(row);
    }
    rows.push(one_dim(-1, beta_plus));
    rows.push(one_dim(-1, beta_minus));

    let a = diag2(z(m, 1), z(m, -1));
    let b = Matrix::from_ints(&[vec![0, 1], vec![-1, 0]]);
    let mut reps: Vec<Matrix<Cyclo>> = rot.iter().map(|&k| diag2(z(m, k), z(m, -k))).collect();
    reps.push(b.clone());
    reps.push(a.mul(&b));
    let defining = rows[2].clone();
    let mut sizes = vec![1u64];
    sizes.extend(std::iter::repeat_n(2, n as usize - 1));
    sizes.push(1);
    sizes.push(n);
    sizes.push(n);

    let mut irreps = vec!["chi0".to_string(), "chi0'".to_string()];
    irreps.extend((1..n).map(|h| format!("rho{h}")));
    irreps.push("chi1".into());
    irreps.push("chi1'".into());
    let mut classes: Vec<String> = rot.iter().map(|k| format!("a^{k}")).collect();
    classes.push("b".into());
    classes.push("ab".into());
    debug_assert_eq!(irreps.len(), nc);
    GroupModel::new(format!("bd:{n}"), 4 * n, 2, sizes, table(rows), defining, Some(reps))
        .with_labels(irreps, classes)
        .validated()
}

/// Binary tetrahedral group (order 24); irreducibles in Ẽ6 node order
/// [1, 2, 3, 2', 1', 2'', 1''].
pub fn make_binary_tetrahedral() -> Result<GroupModel> {
    let w = z(3, 1);
    let w2 = z(3, 2);
    let o = Cyclo::zero();
    let rows = vec![
        vec![int(1); 7],
        vec![int(2), int(-2), o.clone(), int(1), int(1), int(-1), int(-1)],
        vec![int(3), int(3), int(-1), o.clone(), o.clone(), o.clone(), o.clone()],
        vec![int(2), int(-2), o.clone(), w.clone(), w2.clone(), -&w2, -&w],
        vec![int(1), int(1), int(1), w.clone(), w2.clone(), w2.clone(), w.clone()],
        vec![int(2), int(-2), o.clone(), w2.clone(), w.clone(), -&w, -&w2],
        vec![int(1), int(1), int(1), w2.clone(), w.clone(), w.clone(), w2.clone()],
    ];
    let half = Cyclo::frac(1, 2);
    let i = quat(o.clone(), int(1), o.clone(), o.clone());
    let s = quat(half.clone(), half.clone(), half.clone(), half);
    let e = Matrix::<Cyclo>::identity(2);
    let reps = vec![
        e.clone(),
        e.scale(&int(-1)),
        i,
        s.clone(),
        s.pow(5),
        s.pow(2),
        s.pow(4),
    ];
    let defining = rows[1].clone();
    GroupModel::new("2T", 24, 2, vec![1, 1, 6, 4, 4, 4, 4], table(rows), defining, Some(reps))
        .with_labels(
            labels(&["1", "2", "3", "2'", "1'", "2''", "1''"]),
            labels(&["E", "-E", "i", "s", "s^5", "s^2", "s^4"]),
        )
        .validated()
}

/// Binary octahedral group (order 48); irreducibles in Ẽ7 node order
/// [1, 2, 3, 4, 3', 2', 1', 2''].
pub fn make_binary_octahedral() -> Result<GroupModel> {
    let r2 = &z(8, 1) + &z(8, -1);
    let o = Cyclo::zero();
    let rows = vec![
        vec![int(1); 8],
        vec![int(2), int(-2), o.clone(), int(1), int(-1), r2.clone(), -&r2, o.clone()],
        vec![int(3), int(3), int(-1), o.clone(), o.clone(), int(1), int(1), int(-1)],
        vec![int(4), int(-4), o.clone(), int(-1), int(1), o.clone(), o.clone(), o.clone()],
        vec![int(3), int(3), int(-1), o.clone(), o.clone(), int(-1), int(-1), int(1)],
        vec![int(2), int(-2), o.clone(), int(1), int(-1), -&r2, r2.clone(), o.clone()],
        vec![int(1), int(1), int(1), int(1), int(1), int(-1), int(-1), int(-1)],
        vec![int(2), int(2), int(2), int(-1), int(-1), o.clone(), o.clone(), o.clone()],
    ];
    let half = Cyclo::frac(1, 2);
    let e = Matrix::<Cyclo>::identity(2);
    let i = quat(o.clone(), int(1), o.clone(), o.clone());
    let j = quat(o.clone(), o.clone(), int(1), o.clone());
    let s = quat(half.clone(), half.clone(), half.clone(), half);
    let u = diag2(z(8, 1), z(8, -1));
    let reps = vec![
        e.clone(),
        e.scale(&int(-1)),
        i,
        s.clone(),
        s.pow(2),
        u.clone(),
        u.pow(3),
        u.mul(&j),
    ];
    let defining = rows[1].clone();
    GroupModel::new("2O", 48, 2, vec![1, 1, 6, 8, 8, 6, 6, 12], table(rows), defining, Some(reps))
        .with_labels(
            labels(&["1", "2", "3", "4", "3'", "2'", "1'", "2''"]),
            labels(&["E", "-E", "i", "s", "s^2", "u", "u^3", "uj"]),
        )
        .validated()
}

/// t = (φ + φ⁻¹ i + j)/2 and φ = (1 + √5)/2.
fn icosahedral_t() -> (Matrix<Cyclo>, Cyclo) {
    let phi = &(&Cyclo::one() + &z(5, 1)) + &z(5, 4);
    let half = Cyclo::frac(1, 2);
    let t = quat(
        &phi * &half,
        &phi.inv().expect("φ ≠ 0") * &half,
        half,
        Cyclo::zero(),
    );
    (t, phi)
}

/// Binary icosahedral group (order 120); irreducibles in Ẽ8 node order
/// [1, 2, 3, 4, 5, 6, 4', 2', 3'].
pub fn make_binary_icosahedral() -> Result<GroupModel> {
    let (t, a) = icosahedral_t();
    let b = &int(1) - &a;
    let o = Cyclo::zero();
    let rows = vec![
        vec![int(1); 9],
        vec![int(2), int(-2), a.clone(), -&b, b.clone(), -&a, int(1), int(-1), o.clone()],
        vec![int(3), int(3), a.clone(), b.clone(), b.clone(), a.clone(), o.clone(), o.clone(), int(-1)],
        vec![int(4), int(-4), int(1), int(-1), int(1), int(-1), int(-1), int(1), o.clone()],
        vec![int(5), int(5), o.clone(), o.clone(), o.clone(), o.clone(), int(-1), int(-1), int(1)],
        vec![int(6), int(-6), int(-1), int(1), int(-1), int(1), o.clone(), o.clone(), o.clone()],
        vec![int(4), int(4), int(-1), int(-1), int(-1), int(-1), int(1), int(1), o.clone()],
        vec![int(2), int(-2), b.clone(), -&a, a.clone(), -&b, int(1), int(-1), o.clone()],
        vec![int(3), int(3), b.clone(), a.clone(), a.clone(), b.clone(), o.clone(), o.clone(), int(-1)],
    ];
    let half = Cyclo::frac(1, 2);
    let e = Matrix::<Cyclo>::identity(2);
    let i = quat(o.clone(), int(1), o.clone(), o.clone());
    let s = quat(half.clone(), half.clone(), half.clone(), half);
    let reps = vec![
        e.clone(),
        e.scale(&int(-1)),
        t.clone(),
        t.pow(2),
        t.pow(3),
        t.pow(4),
        s.clone(),
        s.pow(2),
        i,
    ];
    let defining = rows[1].clone();
    GroupModel::new(
        "2I",
        120,
        2,
        vec![1, 1, 12, 12, 12, 12, 20, 20, 30],
        table(rows),
        defining,
        Some(reps),
    )
    .with_labels(
        labels(&["1", "2", "3", "4", "5", "6", "4'", "2'", "3'"]),
        labels(&["E", "-E", "t", "t^2", "t^3", "t^4", "s", "s^2", "i"]),
    )
    .validated()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let z2 = make_cyclic_su2(2).unwrap();
        assert_eq!(z2.char_table, Matrix::from_ints(&[vec![1, 1], vec![1, -1]]));
        assert_eq!(z2.defining_row, vec![int(2), int(-2)]);
        let q8 = make_binary_dihedral(2).unwrap();
        assert_eq!(q8.order, 8);
        let mut dims = q8.dims();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        assert!(make_cyclic_su2(1).is_err());
    }

    #[test]
    fn polyhedral_tables_validate() {
        let t = make_binary_tetrahedral().unwrap();
        assert_eq!(t.num_classes(), 7);
        let o = make_binary_octahedral().unwrap();
        assert_eq!(o.num_classes(), 8);
        let i = make_binary_icosahedral().unwrap();
        let mut dims = i.dims();
        dims.sort();
        assert_eq!(dims, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
        for n in 2..=8 {
            make_binary_dihedral(n).unwrap();
        }
    }
}
