mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use clebsch::cartan::{
    calibrate_on_cyclic, cartan_inverse, cm_data, eta_invariants, euclidean_cg, hsop_search, mckay_check,
    prop3_check, weyl_agrees, weyl_vector, weyl_vector_from_cartan, At, Method,
};
use clebsch::cg::{cg_matrix, defining_cg, minor_series, series_matrix, Kind, Sign};
use clebsch::groups::{group_from_selector, FiniteType, GroupFile};
use clebsch::partition::Partition;
use clebsch::quiver::{continued_fraction_check, dynkin_finiteness_check, graph_from_selector, preprojective_h, preprojective_identities};
use clebsch::report::Report;
use clebsch::symfun::{
    fake_degree_check, kf_identity_check, kostka_foulkes, kostka_macdonald_qq, kron_specialized,
    kronecker_coefficient, principal_specialization, supersym_check, Range,
};
use clebsch::verify::{verify_all, Level};
use clebsch::{Cyclo, Error, GroupModel, Rational};

use render::{kv, matrix, plain, report, scalar, vector, Out};

#[derive(Parser)]
#[command(name = "clebsch", version, about = "Exact Clebsch-Gordan and Molien series for finite groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Cmd {
    /// Character table and class data.
    Group {
        #[arg(long)]
        group: String,
    },
    /// Orthogonality and consistency checks of a group model.
    Validate {
        #[arg(long)]
        group: String,
    },
    /// Clebsch-Gordan matrix of the defining representation, or of irreducible `--irrep`.
    Cg {
        #[arg(long)]
        group: String,
        #[arg(long)]
        irrep: Option<usize>,
    },
    /// Series matrix M[R_X(±q)].
    Series {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "S")]
        kind: String,
        #[arg(long, default_value = "q", allow_hyphen_values = true)]
        sign: String,
    },
    /// A minor of a series matrix, by characters and by direct determinant.
    Minor {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "S")]
        kind: String,
        #[arg(long, default_value = "q", allow_hyphen_values = true)]
        sign: String,
        #[arg(long, value_delimiter = ',')]
        rows: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        cols: Vec<usize>,
    },
    /// Euclidean Cartan matrix, formally in q or at q = 1.
    Cartan {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = AtArg::One)]
        at: AtArg,
    },
    /// Inverse Euclidean Cartan matrix.
    CartanInv {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "direct")]
        method: String,
    },
    /// η-invariants of the space form S^{2d-1}/G.
    Eta {
        #[arg(long)]
        group: String,
    },
    /// Cohen-Macaulay numerators D[R] and generator degrees.
    Cm {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u64>>,
    },
    /// Smallest degrees of a homogeneous system of parameters (d = 2).
    Hsop {
        #[arg(long)]
        group: String,
    },
    /// Weyl vector from the inverse Cartan matrix, checked against the root sum.
    Weyl {
        #[arg(long, conflicts_with = "type")]
        group: Option<String>,
        /// Finite Dynkin type such as E8.
        #[arg(long = "type")]
        r#type: Option<String>,
    },
    /// McKay correspondence check.
    Mckay {
        #[arg(long)]
        group: String,
    },
    /// Derivative identities between D[R] and M[R_A(-q)] at q = 1.
    Prop3 {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u64>>,
    },
    /// Preprojective series H = (E - qC + q^2E)^{-1} of a graph.
    Preproj {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Branched continued fraction at the root against q H_rr.
    CfCheck {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        root: Option<usize>,
    },
    /// Kronecker coefficient, or the specialized Kronecker product if `--nu` is absent.
    Kron {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: Option<String>,
        #[arg(long, default_value = "stable")]
        range: String,
    },
    /// Kostka-Foulkes polynomial K_{λμ}(q).
    Kostka {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Principal specialization of a Schur function.
    Spec {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "stable")]
        range: String,
    },
    /// Kronecker product against the Kostka-Foulkes sum.
    KfCheck {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// K_{λμ}(q, q) from the Kronecker specialization.
    MacdonaldQq {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Supersymmetric hook product at a rational t.
    Supersym {
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
    },
    /// Fake degrees of S_d against Kostka-Foulkes polynomials.
    Fakedeg {
        #[arg(long)]
        d: usize,
    },
    /// Every identity of the acceptance suite.
    VerifyAll {
        #[arg(long, default_value = "full")]
        level: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AtArg {
    Formal,
    One,
}

/// Exit 1 for failed identities, 2 for bad input.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::Index(_)
            | Error::LengthMismatch { .. }
            | Error::Schema(_)
            | Error::Io(_)
            | Error::MissingData(_)
            | Error::NotFree { .. }
            | Error::CapExceeded { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn group(sel: &str) -> Res<GroupModel> {
    group_from_selector(sel).map_err(|e| Failure::Usage(format!("group '{sel}': {e}")))
}

fn partition(s: &str) -> Res<Partition> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Res<T> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn rational(s: &str) -> Res<Rational> {
    s.parse::<Rational>()
        .map_err(|_| Failure::Usage(format!("'{s}' is not a rational number")))
}

fn group_out(g: &GroupModel) -> Out {
    let table = matrix(&g.char_table);
    let text = format!(
        "{} (order {}, degree {})\nclasses: {}\nclass sizes: {:?}\nirreducibles: {}\ncharacter table:\n{}",
        g.name,
        g.order,
        g.dim_defining,
        g.class_labels.join(", "),
        g.class_sizes,
        g.irrep_labels.join(", "),
        table.text
    );
    let json = serde_json::to_value(GroupFile::from_model(g)).expect("serialisable group file");
    Out::new(text, table.latex, json)
}

fn run(cmd: Cmd) -> Res<Out> {
    Ok(match cmd {
        Cmd::Group { group: sel } => group_out(&group(&sel)?),
        Cmd::Validate { group: sel } => {
            let v = group(&sel)?.validate();
            let text = v.to_string().trim_end().to_string();
            plain(text, serde_json::to_value(&v).expect("serialisable")).failing_if(!v.pass())
        }
        Cmd::Cg { group: sel, irrep } => {
            let g = group(&sel)?;
            match irrep {
                None => matrix(&defining_cg(&g)),
                Some(i) if i < g.num_classes() => matrix(&cg_matrix(&g, g.character(i))?),
                Some(i) => return Err(Failure::Usage(format!("irreducible {i} out of range"))),
            }
        }
        Cmd::Series { group: sel, kind, sign } => {
            let g = group(&sel)?;
            let s = series_matrix(&g, parse::<Kind>(&kind)?, parse::<Sign>(&sign)?)?;
            matrix(s.entries())
        }
        Cmd::Minor { group: sel, kind, sign, rows, cols } => {
            let g = group(&sel)?;
            let n = g.num_classes();
            if rows.len() != cols.len() || rows.iter().chain(&cols).any(|&i| i >= n) {
                return Err(Failure::Usage(format!("rows and cols must be equal-length index lists below {n}")));
            }
            let r = minor_series(&g, parse(&kind)?, parse(&sign)?, &rows, &cols)?;
            let v = scalar(&r.value);
            Out::new(
                format!("{}\ncharacter formula = direct determinant: {}", v.text, if r.agree { "PASS" } else { "FAIL" }),
                v.latex,
                json!({ "value": v.json, "agree": r.agree }),
            )
            .failing_if(!r.agree)
        }
        Cmd::Cartan { group: sel, at } => {
            let g = group(&sel)?;
            let e = euclidean_cg(&g)?;
            match at.into() {
                At::One => matrix(&e.at_one()?),
                At::Formal => matrix(e.formal.entries()),
            }
        }
        Cmd::CartanInv { group: sel, method } => {
            let g = group(&sel)?;
            matrix(&cartan_inverse(&g, parse::<Method>(&method)?)?)
        }
        Cmd::Eta { group: sel } => {
            let e = eta_invariants(&group(&sel)?)?;
            Out::sections(vec![
                ("eta_0", render::vector(&e.eta0)),
                ("eta", matrix(&e.eta)),
                (
                    "convention",
                    kv(
                        &[("sigma", e.sign_convention.to_string()), ("special", e.special.to_string())],
                        json!({ "sigma": e.sign_convention, "special": e.special }),
                    ),
                ),
                ("checks", report(&e.checks)),
            ])
        }
        Cmd::Cm { group: sel, degrees } => {
            let g = group(&sel)?;
            let cm = cm_data(&g, degrees.as_deref())?;
            let exps = cm
                .exponents
                .iter()
                .map(|e| format!("{e:?}"))
                .collect::<Vec<_>>()
                .join(" ");
            Out::sections(vec![
                (
                    "degrees",
                    kv(
                        &[
                            ("hsop degrees", format!("{:?}", cm.hsop_degrees)),
                            ("multiplicities", format!("{:?}", cm.multiplicities)),
                            ("exponents", exps),
                        ],
                        json!({
                            "hsop_degrees": cm.hsop_degrees,
                            "multiplicities": cm.multiplicities,
                            "exponents": cm.exponents,
                        }),
                    ),
                ),
                ("D[R]", matrix(&cm.dr)),
                ("checks", report(&cm.checks)),
            ])
        }
        Cmd::Hsop { group: sel } => {
            let d = hsop_search(&group(&sel)?)?;
            plain(format!("{d:?}"), json!(d))
        }
        Cmd::Weyl { group: sel, r#type } => {
            let (r, cartan) = match (sel, r#type) {
                (Some(sel), None) => {
                    let g = group(&sel)?;
                    let t = g
                        .family
                        .affine_type()
                        .map(|a| a.finite_type())
                        .ok_or_else(|| Failure::Usage(format!("{sel} has no finite Dynkin type")))?;
                    (weyl_vector(&g)?, t.cartan())
                }
                (None, Some(t)) => {
                    let t: FiniteType = parse(&t)?;
                    let c = t.cartan();
                    (weyl_vector_from_cartan(&c)?, c)
                }
                _ => return Err(Failure::Usage("give exactly one of --group or --type".into())),
            };
            let agree = weyl_agrees(&cartan, &r)?;
            let cy: Vec<Cyclo> = r.into_iter().map(Cyclo::from_rational).collect::<Vec<_>>();
            let v = vector(&cy);
            Out::new(
                format!("{}\npositive root sum: {}", v.text, if agree { "PASS" } else { "FAIL" }),
                v.latex,
                json!({ "weyl": v.json, "agree": agree }),
            )
            .failing_if(!agree)
        }
        Cmd::Mckay { group: sel } => {
            let r = mckay_check(&group(&sel)?)?;
            let mut out = report(&r);
            out.text = r.to_string();
            out
        }
        Cmd::Prop3 { group: sel, degrees } => {
            let g = group(&sel)?;
            let cm = cm_data(&g, degrees.as_deref())?;
            report(&prop3_check(&g, &cm)?)
        }
        Cmd::Preproj { graph, terms } => {
            let g = graph_from_selector(&graph)?;
            let h = preprojective_h(&g)?;
            let mut checks = preprojective_identities(&g, terms)?;
            checks.extend(dynkin_finiteness_check(&g)?);
            // Finiteness flags describe the graph; only the inversion identities are pass/fail.
            let failed = !checks.checks[0].pass || !checks.checks[1].pass;
            let mut rep = report(&checks);
            rep.ok = true;
            Out::sections(vec![("H", matrix(h.entries())), ("checks", rep)]).failing_if(failed)
        }
        Cmd::CfCheck { graph, root } => {
            let mut g = graph_from_selector(&graph)?;
            if let Some(r) = root {
                if r >= g.len() {
                    return Err(Failure::Usage(format!("root {r} out of range")));
                }
                g.root = Some(r);
            }
            let (qh, cf, ok) = continued_fraction_check(&g)?;
            let a = scalar(&qh);
            let b = scalar(&cf);
            Out::new(
                format!("q H_rr = {}\ncontinued fraction = {}\nequal: {}", a.text, b.text, if ok { "PASS" } else { "FAIL" }),
                format!("{} = {}", a.latex, b.latex),
                json!({ "qH": a.json, "continued_fraction": b.json, "agree": ok }),
            )
            .failing_if(!ok)
        }
        Cmd::Kron { lambda, mu, nu, range } => {
            let (l, m) = (partition(&lambda)?, partition(&mu)?);
            match nu {
                Some(nu) => {
                    let g = kronecker_coefficient(&l, &m, &partition(&nu)?)?;
                    plain(g.to_string(), json!(g))
                }
                None => scalar(&kron_specialized(&l, &m, parse::<Range>(&range)?)?),
            }
        }
        Cmd::Kostka { lambda, mu } => scalar(&kostka_foulkes(&partition(&lambda)?, &partition(&mu)?)?),
        Cmd::Spec { lambda, range } => scalar(&principal_specialization(&partition(&lambda)?, parse(&range)?)),
        Cmd::KfCheck { lambda, mu } => report(&kf_identity_check(&partition(&lambda)?, &partition(&mu)?)?),
        Cmd::MacdonaldQq { lambda, mu } => scalar(&kostka_macdonald_qq(&partition(&lambda)?, &partition(&mu)?)?),
        Cmd::Supersym { mu, t } => report(&supersym_check(&partition(&mu)?, &rational(&t)?)?),
        Cmd::Fakedeg { d } => report(&fake_degree_check(d)?),
        Cmd::VerifyAll { level } => {
            let outcomes = verify_all(parse::<Level>(&level)?)?;
            let fitted = calibrate_on_cyclic()?;
            let mut lines: Vec<String> = outcomes.iter().map(ToString::to_string).collect();
            lines.push("calibration constants:".into());
            lines.extend(fitted.iter().map(|c| format!("  {c}")));
            let mut rep = Report::new();
            for o in &outcomes {
                rep.push(clebsch::report::IdentityCheck::new(format!("{}. {}", o.criterion, o.title), o.pass));
            }
            let json = json!({
                "criteria": outcomes,
                "calibration": fitted.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            let latex = report(&rep).latex;
            Out::new(lines.join("\n"), latex, json).failing_if(!rep.pass())
        }
    })
}

impl From<AtArg> for At {
    fn from(a: AtArg) -> Self {
        match a {
            AtArg::Formal => At::Formal,
            AtArg::One => At::One,
        }
    }
}

fn emit(out: &Out, format: Format) {
    let body = match format {
        Format::Text => out.text.clone(),
        Format::Latex => out.latex.clone(),
        Format::Json => serde_json::to_string(&out.json).expect("serialisable"),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            emit(&out, cli.format);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}

