//! Pass/fail reports for identity checks.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub pass: bool,
    /// Entry coordinates of the first disagreement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip)]
    pub detail: Option<String>,
}

impl IdentityCheck {
    pub fn new(identity: impl Into<String>, pass: bool) -> Self {
        IdentityCheck {
            identity: identity.into(),
            pass,
            witness: None,
            detail: None,
        }
    }

    /// Passes iff `witness` is `None`.
    pub fn from_witness(identity: impl Into<String>, witness: Option<Vec<usize>>) -> Self {
        IdentityCheck {
            identity: identity.into(),
            pass: witness.is_none(),
            witness,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<IdentityCheck>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, c: IdentityCheck) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialisable report")
    }
}

/// `name: PASS, name: FAIL [i,j]` on one line.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let mut s = format!("{}: {}", c.identity, if c.pass { "PASS" } else { "FAIL" });
                if let Some(w) = &c.witness {
                    let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                    s.push_str(&format!(" [{}]", w.join(",")));
                }
                s
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// First `(i, j)` where `f` fails on an `rows x cols` grid.
pub fn first_failure(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool + Sync) -> Option<Vec<usize>> {
    use rayon::prelude::*;
    (0..rows * cols)
        .into_par_iter()
        .find_first(|&k| !f(k / cols, k % cols))
        .map(|k| vec![k / cols, k % cols])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json() {
        let mut r = Report::new();
        r.push(IdentityCheck::new("affine E6", true));
        r.push(IdentityCheck::from_witness("kernel", Some(vec![1, 2])));
        assert_eq!(r.to_string(), "affine E6: PASS, kernel: FAIL [1,2]");
        assert_eq!(
            r.to_json(),
            serde_json::json!([
                {"identity": "affine E6", "pass": true},
                {"identity": "kernel", "pass": false, "witness": [1, 2]}
            ])
        );
        assert!(!r.pass());
        assert_eq!(first_failure(3, 3, |i, j| i + j < 3), Some(vec![1, 2]));
    }
}
