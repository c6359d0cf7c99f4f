//! JSON group files.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{Cyclo, Rational};
use crate::linalg::Matrix;

use super::GroupModel;

/// On-disk layout. Scalars are lists of `[k, num, den]` triples meaning
/// Σ (num/den) ζ_m^k with `m = conductor`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub order: u64,
    pub dim_defining: usize,
    pub conductor: u64,
    pub class_sizes: Vec<u64>,
    pub char_table: Vec<Vec<Value>>,
    pub defining_row: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_reps: Option<Vec<Vec<Vec<Value>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irrep_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_labels: Option<Vec<String>>,
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

fn json_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Schema(format!("non-integer number {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Schema(format!("bad integer string '{s}'"))),
        other => Err(Error::Schema(format!("expected an integer, found {other}"))),
    }
}

/// Triple-list encoding of `c` inside Q(ζ_m).
pub fn cyclo_literal(c: &Cyclo, m: u64) -> Value {
    Value::Array(
        c.terms_in(m)
            .into_iter()
            .map(|(k, r)| Value::Array(vec![Value::from(k as u64), int_json(r.numer()), int_json(r.denom())]))
            .collect(),
    )
}

pub fn cyclo_from_literal(v: &Value, m: u64) -> Result<Cyclo> {
    let terms = v
        .as_array()
        .ok_or_else(|| Error::Schema(format!("scalar must be a list of [k, num, den] triples, found {v}")))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| Error::Schema(format!("bad scalar term {t}")))?;
        let k = t[0]
            .as_u64()
            .ok_or_else(|| Error::Schema(format!("bad exponent {}", t[0])))?;
        let num = json_int(&t[1])?;
        let den = json_int(&t[2])?;
        if den.is_zero() {
            return Err(Error::Schema("zero denominator in scalar".into()));
        }
        out.push((k as i64, Rational::new(num, den)));
    }
    Ok(Cyclo::from_terms(m, &out))
}

impl GroupFile {
    pub fn from_model(g: &GroupModel) -> Self {
        let m = g.conductor();
        let lit = |c: &Cyclo| cyclo_literal(c, m);
        GroupFile {
            name: g.name.clone(),
            order: g.order,
            dim_defining: g.dim_defining,
            conductor: m,
            class_sizes: g.class_sizes.clone(),
            char_table: g.char_table.to_rows().iter().map(|r| r.iter().map(lit).collect()).collect(),
            defining_row: g.defining_row.iter().map(lit).collect(),
            class_reps: g.class_reps.as_ref().map(|reps| {
                reps.iter()
                    .map(|r| r.to_rows().iter().map(|row| row.iter().map(lit).collect()).collect())
                    .collect()
            }),
            irrep_labels: Some(g.irrep_labels.clone()),
            class_labels: Some(g.class_labels.clone()),
        }
    }

    pub fn to_model(&self) -> Result<GroupModel> {
        let m = self.conductor;
        if m == 0 {
            return Err(Error::Schema("conductor must be positive".into()));
        }
        let n = self.class_sizes.len();
        let row = |r: &Vec<Value>| -> Result<Vec<Cyclo>> { r.iter().map(|v| cyclo_from_literal(v, m)).collect() };
        let table_rows = self.char_table.iter().map(row).collect::<Result<Vec<_>>>()?;
        if table_rows.len() != n || table_rows.iter().any(|r| r.len() != n) {
            return Err(Error::Schema(format!("character table must be {n}x{n}")));
        }
        let table = Matrix::from_rows(table_rows)?;
        let defining = row(&self.defining_row)?;
        let reps = match &self.class_reps {
            None => None,
            Some(reps) => Some(
                reps.iter()
                    .map(|r| {
                        let rows = r.iter().map(row).collect::<Result<Vec<_>>>()?;
                        Matrix::from_rows(rows).map_err(|e| Error::Schema(e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let mut g = GroupModel::new(
            self.name.clone(),
            self.order,
            self.dim_defining,
            self.class_sizes.clone(),
            table,
            defining,
            reps,
        );
        if let Some(l) = &self.irrep_labels {
            if l.len() == n {
                g.irrep_labels = l.clone();
            }
        }
        if let Some(l) = &self.class_labels {
            if l.len() == n {
                g.class_labels = l.clone();
            }
        }
        g.validated()
    }
}

/// Reads and validates a group file.
pub fn load_group(path: impl AsRef<std::path::Path>) -> Result<GroupModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let file: GroupFile = serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
    file.to_model()
}

pub fn save_group(g: &GroupModel, path: impl AsRef<std::path::Path>) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(&GroupFile::from_model(g)).expect("serialisable");
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::super::{make_binary_tetrahedral, make_cyclic_su2};
    use super::*;

    #[test]
    fn round_trips() {
        for g in [make_cyclic_su2(2).unwrap(), make_binary_tetrahedral().unwrap()] {
            let f = GroupFile::from_model(&g);
            let text = serde_json::to_string(&f).unwrap();
            let back: GroupFile = serde_json::from_str(&text).unwrap();
            let h = back.to_model().unwrap();
            assert!(h.same_data(&g));
            assert_eq!(serde_json::to_string(&GroupFile::from_model(&h)).unwrap(), text);
        }
    }

    #[test]
    fn corrupted_value_names_rows() {
        let g = make_cyclic_su2(3).unwrap();
        let mut f = GroupFile::from_model(&g);
        f.char_table[1][1] = serde_json::json!([[0, 2, 1]]);
        let err = f.to_model().unwrap_err().to_string();
        assert!(err.contains("row orthogonality"), "{err}");
        assert!(err.contains("rows ("), "{err}");
    }
}
