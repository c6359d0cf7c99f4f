use clebsch::qseries::render::{cyclo_json, cyclo_latex, poly_json, poly_latex, poly_text, ratq_json, ratq_latex, ratq_text};
use clebsch::report::Report;
use clebsch::{Cyclo, Matrix, QPoly, RatQ};
use serde_json::Value;

/// One result in all three output formats, plus whether every check in it passed.
pub struct Out {
    pub text: String,
    pub latex: String,
    pub json: Value,
    pub ok: bool,
}

impl Out {
    pub fn new(text: String, latex: String, json: Value) -> Self {
        Out { text, latex, json, ok: true }
    }

    pub fn failing_if(mut self, bad: bool) -> Self {
        self.ok &= !bad;
        self
    }

    /// Stacks several results; JSON becomes an object keyed by `names`.
    pub fn sections(parts: Vec<(&str, Out)>) -> Out {
        let mut text = Vec::new();
        let mut latex = Vec::new();
        let mut obj = serde_json::Map::new();
        let mut ok = true;
        for (name, o) in parts {
            text.push(format!("{name}:\n{}", indent(&o.text)));
            latex.push(format!("% {name}\n{}", o.latex));
            obj.insert(name.to_string(), o.json);
            ok &= o.ok;
        }
        Out {
            text: text.join("\n"),
            latex: latex.join("\n\n"),
            json: Value::Object(obj),
            ok,
        }
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

pub trait Exact {
    fn text(&self) -> String;
    fn latex(&self) -> String;
    fn json(&self) -> Value;
}

impl Exact for Cyclo {
    fn text(&self) -> String {
        self.to_string()
    }
    fn latex(&self) -> String {
        cyclo_latex(self)
    }
    fn json(&self) -> Value {
        cyclo_json(self)
    }
}

impl Exact for QPoly {
    fn text(&self) -> String {
        poly_text(self)
    }
    fn latex(&self) -> String {
        poly_latex(self)
    }
    fn json(&self) -> Value {
        poly_json(self)
    }
}

impl Exact for RatQ {
    fn text(&self) -> String {
        ratq_text(self)
    }
    fn latex(&self) -> String {
        ratq_latex(self)
    }
    fn json(&self) -> Value {
        ratq_json(self)
    }
}

pub fn scalar<T: Exact>(x: &T) -> Out {
    Out::new(x.text(), x.latex(), x.json())
}

pub fn vector<T: Exact>(v: &[T]) -> Out {
    Out::new(
        v.iter().map(Exact::text).collect::<Vec<_>>().join(", "),
        format!("\\left({}\\right)", v.iter().map(Exact::latex).collect::<Vec<_>>().join(", ")),
        Value::Array(v.iter().map(Exact::json).collect()),
    )
}

/// Aligned columns in text, `pmatrix` in LaTeX, nested arrays in JSON.
pub fn matrix<T: Exact + Clone>(m: &Matrix<T>) -> Out {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(Exact::text).collect()).collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let text = cells
        .iter()
        .map(|r| {
            r.iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n");
    let latex_rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(Exact::latex).collect::<Vec<_>>().join(" & "))
        .collect();
    let latex = format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}", latex_rows.join(" \\\\\n"));
    let json = Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(Exact::json).collect()))
            .collect(),
    );
    Out::new(text, latex, json)
}

pub fn report(r: &Report) -> Out {
    let line = |name: &str, pass: bool, extra: String| format!("{name}: {}{extra}", if pass { "PASS" } else { "FAIL" });
    let text = r
        .checks
        .iter()
        .map(|c| {
            let w = c.witness.as_ref().map(|w| format!(" at {w:?}")).unwrap_or_default();
            let d = c.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default();
            line(&c.identity, c.pass, format!("{w}{d}"))
        })
        .collect::<Vec<_>>()
        .join("\n");
    let latex = format!(
        "\\begin{{tabular}}{{ll}}\n{}\n\\end{{tabular}}",
        r.checks
            .iter()
            .map(|c| format!("\\verb|{}| & {} \\\\", c.identity, if c.pass { "PASS" } else { "FAIL" }))
            .collect::<Vec<_>>()
            .join("\n")
    );
    Out::new(text, latex, r.to_json()).failing_if(!r.pass())
}

pub fn plain(text: String, json: Value) -> Out {
    let latex = format!("\\text{{{}}}", text.replace('\n', "} \\\\ \\text{"));
    Out::new(text, latex, json)
}

pub fn kv(pairs: &[(&str, String)], json: Value) -> Out {
    let text = pairs.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n");
    let latex = format!(
        "\\begin{{tabular}}{{ll}}\n{}\n\\end{{tabular}}",
        pairs
            .iter()
            .map(|(k, v)| format!("{k} & \\verb|{v}| \\\\"))
            .collect::<Vec<_>>()
            .join("\n")
    );
    Out::new(text, latex, json)
}
