//! The full identity suite, one entry per acceptance criterion. Shared by the
//! `verify-all` command and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::{
    an_closed_form, an_dprime_check, calibrate_on_cyclic, calibration_drift, calibration_report, cartan_inverse,
    cm_data, hsop_search, inverse_agreement, mckay_check, prop3_check, weyl_agrees, weyl_vector,
    weyl_vector_from_cartan, Method,
};
use crate::cg::{index_subsets, relation_suite, series_matrix, Kind, MinorEngine, Sign};
use crate::error::{Error, Result};
use crate::exact::Cyclo;
use crate::groups::{
    make_binary_dihedral, make_binary_icosahedral, make_binary_octahedral, make_binary_tetrahedral,
    make_cyclic_su2, make_symmetric, matches_builtin, su2_generators, AffineType, FiniteType, GroupModel,
};
use crate::partition::Partition;
use crate::qseries::{QPoly, RatQ};
use crate::quiver::{continued_fraction_check, dynkin_finiteness, preprojective_identities, Graph};
use crate::symfun::{
    fake_degree_check, kf_identity_check, kostka_foulkes, kostka_macdonald_qq, kron_series_check, supersym_check,
};

const ENUMERATION_CAP: usize = 1000;
const RANDOM_GRAPH_SEED: u64 = 20240607;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(Error::InvalidArgument(format!("level must be 'fast' or 'full', got '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub criterion: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2}. {}", self.criterion, self.title)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

pub const TITLES: [&str; 14] = [
    "McKay correspondence",
    "five-way inverse agreement",
    "A_n closed form",
    "relation suite",
    "2x2 minors",
    "Cohen-Macaulay data",
    "derivative identities at q = 1",
    "Weyl vectors",
    "E8 continued fraction",
    "A_n second derivatives",
    "symmetric group identities",
    "quiver series",
    "group validation",
    "calibration constants",
];

/// The SU(2) groups every group-level criterion runs over.
pub fn su2_groups(level: Level) -> Result<Vec<GroupModel>> {
    let (cmax, bmax) = match level {
        Level::Fast => (6, 4),
        Level::Full => (12, 8),
    };
    let mut out = Vec::new();
    for m in 2..=cmax {
        out.push(make_cyclic_su2(m)?);
    }
    for n in 2..=bmax {
        out.push(make_binary_dihedral(n)?);
    }
    out.push(make_binary_tetrahedral()?);
    out.push(make_binary_octahedral()?);
    out.push(make_binary_icosahedral()?);
    Ok(out)
}

/// Collects failures of a per-group check into a one-line summary.
fn over_groups<F>(groups: &[GroupModel], f: F) -> (bool, String)
where
    F: Fn(&GroupModel) -> Result<Option<String>> + Sync,
{
    let failures: Vec<String> = groups
        .par_iter()
        .map(|g| match f(g) {
            Ok(None) => None,
            Ok(Some(msg)) => Some(format!("{}: {msg}", g.name)),
            Err(e) => Some(format!("{}: {e}", g.name)),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    if failures.is_empty() {
        (true, format!("{} groups", groups.len()))
    } else {
        (false, failures.join("; "))
    }
}

fn report_failure(r: &crate::report::Report) -> Option<String> {
    (!r.pass()).then(|| r.to_string())
}

fn mckay(groups: &[GroupModel]) -> (bool, String) {
    over_groups(groups, |g| Ok(report_failure(&mckay_check(g)?)))
}

fn inverses(groups: &[GroupModel]) -> (bool, String) {
    over_groups(groups, |g| Ok(report_failure(&inverse_agreement(g)?)))
}

fn an_closed(level: Level) -> (bool, String) {
    let top = if level == Level::Full { 12 } else { 6 };
    let groups: Vec<GroupModel> = match (2..=top).map(make_cyclic_su2).collect() {
        Ok(g) => g,
        Err(e) => return (false, e.to_string()),
    };
    over_groups(&groups, |g| {
        let inv = cartan_inverse(g, Method::Direct)?;
        let n = inv.rows();
        for i in 0..n {
            for j in 0..n {
                let want = Cyclo::from_rational(an_closed_form(n, i + 1, j + 1)?);
                if inv[(i, j)] != want {
                    return Ok(Some(format!("entry ({i},{j})")));
                }
            }
        }
        Ok(None)
    })
}

fn relations(groups: &[GroupModel]) -> (bool, String) {
    let mut all = groups.to_vec();
    for d in [3, 4] {
        match make_symmetric(d) {
            Ok(g) => all.push(g),
            Err(e) => return (false, e.to_string()),
        }
    }
    over_groups(&all, |g| Ok(report_failure(&relation_suite(g)?)))
}

fn minors(level: Level) -> (bool, String) {
    let top = if level == Level::Full { 6 } else { 4 };
    let mut groups: Vec<GroupModel> = match (2..=top).map(make_cyclic_su2).collect() {
        Ok(g) => g,
        Err(e) => return (false, e.to_string()),
    };
    match make_binary_tetrahedral() {
        Ok(g) => groups.push(g),
        Err(e) => return (false, e.to_string()),
    }
    over_groups(&groups, |g| {
        let subsets = index_subsets(g.num_classes(), 2);
        for kind in Kind::ALL {
            for sign in [Sign::Plus, Sign::Minus] {
                let engine = MinorEngine::new(g, kind, sign)?;
                for rows in &subsets {
                    for cols in &subsets {
                        if !engine.agrees(rows, cols)? {
                            return Ok(Some(format!("{kind}({sign}) rows {rows:?} cols {cols:?}")));
                        }
                    }
                }
            }
        }
        Ok(None)
    })
}

fn cohen_macaulay(groups: &[GroupModel]) -> (bool, String) {
    let (ok, detail) = over_groups(groups, |g| {
        let cm = cm_data(g, None)?;
        if let Some(msg) = report_failure(&cm.checks) {
            return Ok(Some(msg));
        }
        if let crate::groups::Family::Cyclic(m) = g.family {
            let n = m as usize - 1;
            for j in 0..=n {
                let mut want = vec![j, n - j + 1];
                want.sort_unstable();
                if cm.exponents[j] != want {
                    return Ok(Some(format!("exponents of j = {j}: {:?}", cm.exponents[j])));
                }
            }
        }
        Ok(None)
    });
    let icosa = (|| -> Result<Option<String>> {
        let g = make_binary_icosahedral()?;
        let degrees = hsop_search(&g)?;
        let cm = cm_data(&g, Some(&degrees))?;
        let want = QPoly::one() + QPoly::monomial(Cyclo::one(), 30);
        Ok((degrees != [12, 20] || cm.dr[(0, 0)] != want)
            .then(|| format!("2I: degrees {degrees:?}, D_0^0 = {}", cm.dr[(0, 0)])))
    })();
    match icosa {
        Ok(None) => (ok, format!("{detail}; 2I degrees (12,20), D_0^0 = 1 + q^30")),
        Ok(Some(msg)) => (false, format!("{detail}; {msg}")),
        Err(e) => (false, format!("{detail}; 2I: {e}")),
    }
}

fn derivative_identities(groups: &[GroupModel]) -> (bool, String) {
    over_groups(groups, |g| {
        let cm = cm_data(g, None)?;
        Ok(report_failure(&prop3_check(g, &cm)?))
    })
}

fn weyl(level: Level) -> (bool, String) {
    let (amax, dmax) = if level == Level::Full { (11, 10) } else { (6, 6) };
    let mut types: Vec<FiniteType> = (1..=amax).map(FiniteType::A).collect();
    types.extend((4..=dmax).map(FiniteType::D));
    types.extend([FiniteType::E6, FiniteType::E7, FiniteType::E8]);
    let bad: Vec<String> = types
        .par_iter()
        .filter_map(|t| {
            let c = t.cartan();
            match weyl_vector_from_cartan(&c).and_then(|r| weyl_agrees(&c, &r)) {
                Ok(true) => None,
                Ok(false) => Some(t.to_string()),
                Err(e) => Some(format!("{t}: {e}")),
            }
        })
        .collect();
    let mut groups_ok = true;
    for (g, t) in [
        (make_binary_tetrahedral(), FiniteType::E6),
        (make_binary_octahedral(), FiniteType::E7),
        (make_binary_icosahedral(), FiniteType::E8),
    ] {
        groups_ok &= g
            .and_then(|g| weyl_vector(&g))
            .and_then(|r| weyl_agrees(&t.cartan(), &r))
            .unwrap_or(false);
    }
    if bad.is_empty() && groups_ok {
        (true, format!("{} root systems, plus 2T/2O/2I via the group route", types.len()))
    } else {
        (false, format!("mismatch: {bad:?}, group route ok: {groups_ok}"))
    }
}

fn e8_fraction() -> (bool, String) {
    let run = || -> Result<(bool, String)> {
        let (qh, cf, ok) = continued_fraction_check(&Graph::affine(AffineType::E8))?;
        let g = make_binary_icosahedral()?;
        let m = series_matrix(&g, Kind::S, Sign::Plus)?.entry(0, 0);
        let molien = m * RatQ::q();
        let pass = ok && molien == cf;
        Ok((pass, if pass { format!("q M_0^0 = {cf}") } else { format!("fraction {cf}, q H {qh}, q M {molien}") }))
    };
    run().unwrap_or_else(|e| (false, e.to_string()))
}

fn an_dprime(level: Level) -> (bool, String) {
    let top = if level == Level::Full { 12 } else { 6 };
    let bad: Vec<String> = (2..=top)
        .into_par_iter()
        .filter_map(|m| match an_dprime_check(m) {
            Ok(r) if r.pass() => None,
            Ok(r) => Some(format!("m = {m}: {r}")),
            Err(e) => Some(format!("m = {m}: {e}")),
        })
        .collect();
    if bad.is_empty() {
        (true, format!("m = 2..={top}"))
    } else {
        (false, bad.join("; "))
    }
}

fn symmetric(level: Level) -> (bool, String) {
    let top = if level == Level::Full { 5 } else { 4 };
    let run = || -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for d in 1..=top {
            if !kron_series_check(d)?.pass() {
                bad.push(format!("kron vs series, d = {d}"));
            }
            if !fake_degree_check(d)?.pass() {
                bad.push(format!("fake degrees, d = {d}"));
            }
            let parts = Partition::all(d);
            for l in &parts {
                for m in &parts {
                    if !kf_identity_check(l, m)?.pass() {
                        bad.push(format!("kf identity ({l}),({m})"));
                    }
                    if let Err(e) = kostka_macdonald_qq(l, m) {
                        bad.push(e.to_string());
                    }
                }
            }
            if d <= 4 {
                for mu in &parts {
                    for t in 0..=2i64 {
                        if !supersym_check(mu, &crate::exact::Rational::from_integer(t.into()))?.pass() {
                            bad.push(format!("supersym ({mu}) t = {t}"));
                        }
                    }
                }
            }
        }
        let k = kostka_foulkes(&"2,1".parse()?, &"1,1,1".parse()?)?;
        if k != QPoly::from_ints(&[0, 1, 1]) {
            bad.push(format!("K_(2,1),(1,1,1) = {k}"));
        }
        Ok(bad)
    };
    match run() {
        Ok(bad) if bad.is_empty() => (true, format!("d <= {top}")),
        Ok(bad) => (false, bad.join("; ")),
        Err(e) => (false, e.to_string()),
    }
}

/// The graphs for the quiver criterion: finite and affine ADE up to 9 nodes
/// and five seeded random graphs.
pub fn quiver_graphs() -> (Vec<Graph>, Vec<Graph>, Vec<Graph>) {
    let finite = FiniteType::all_up_to(9).into_iter().map(Graph::finite).collect();
    let affine = AffineType::all_up_to(9).into_iter().map(Graph::affine).collect();
    let mut rng = StdRng::seed_from_u64(RANDOM_GRAPH_SEED);
    let random = (2..=6).map(|n| Graph::random(&mut rng, n, 0.5)).collect();
    (finite, affine, random)
}

fn quiver() -> (bool, String) {
    let (finite, affine, random) = quiver_graphs();
    let inverts = |g: &Graph| -> Result<bool> {
        let r = preprojective_identities(g, 0)?;
        Ok(r.checks[0].pass && r.checks[1].pass)
    };
    let mut bad = Vec::new();
    let mut literal_polynomial = 0;
    for g in finite.iter().chain(&affine).chain(&random) {
        match inverts(g) {
            Ok(true) => {}
            Ok(false) => bad.push(format!("{}: K H != E", g.name)),
            Err(e) => bad.push(format!("{}: {e}", g.name)),
        }
    }
    for g in &finite {
        match dynkin_finiteness(g) {
            Ok(f) => {
                literal_polynomial += usize::from(f.polynomial);
                if f.dynkin_series_polynomial != Some(true) {
                    bad.push(format!("{}: (E + P q^h) H not polynomial", g.name));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", g.name)),
        }
    }
    for g in &affine {
        match dynkin_finiteness(g) {
            Ok(f) if f.det_vanishes_at_one => {}
            Ok(_) => bad.push(format!("{}: det does not vanish at 1", g.name)),
            Err(e) => bad.push(format!("{}: {e}", g.name)),
        }
    }
    if bad.is_empty() {
        (
            true,
            format!(
                "{} finite, {} affine, {} random; finite H is polynomial after (E + P q^h), bare H polynomial for {literal_polynomial} of {}",
                finite.len(),
                affine.len(),
                random.len(),
                finite.len()
            ),
        )
    } else {
        (false, bad.join("; "))
    }
}

fn validation(groups: &[GroupModel], level: Level) -> (bool, String) {
    let mut all = groups.to_vec();
    for d in 1..=5 {
        match make_symmetric(d) {
            Ok(g) => all.push(g),
            Err(e) => return (false, e.to_string()),
        }
    }
    let (tables_ok, tables) = over_groups(&all, |g| {
        let v = g.validate();
        Ok((!v.pass()).then(|| format!("{:?}", v.first_failure())))
    });
    let (cmax, bmax) = if level == Level::Full { (8, 4) } else { (4, 3) };
    let enumerated: Vec<GroupModel> = groups
        .iter()
        .filter(|g| match g.family {
            crate::groups::Family::Cyclic(m) => m <= cmax,
            crate::groups::Family::BinaryDihedral(n) => n <= bmax,
            _ => true,
        })
        .cloned()
        .collect();
    let (enum_ok, enum_detail) = over_groups(&enumerated, |g| {
        let gens = su2_generators(g).ok_or_else(|| Error::MissingData(format!("{} generators", g.name)))?;
        let v = matches_builtin(g, &gens, ENUMERATION_CAP)?;
        Ok((!v.pass()).then(|| format!("{:?}", v.first_failure())))
    });
    (tables_ok && enum_ok, format!("tables: {tables}; enumeration: {enum_detail}"))
}

fn calibration(groups: &[GroupModel]) -> (bool, String) {
    let fitted = match calibrate_on_cyclic() {
        Ok(f) => f,
        Err(e) => return (false, e.to_string()),
    };
    let drift = calibration_drift(&fitted);
    let (ok, detail) = over_groups(groups, |g| Ok(report_failure(&calibration_report(g)?)));
    let table: Vec<String> = fitted.iter().map(ToString::to_string).collect();
    (
        ok && drift.is_empty(),
        format!("{}; drift: {drift:?}; {detail}", table.join("; ")),
    )
}

/// Runs one criterion (1-based).
pub fn criterion(n: usize, level: Level, groups: &[GroupModel]) -> Outcome {
    let (pass, detail) = match n {
        1 => mckay(groups),
        2 => inverses(groups),
        3 => an_closed(level),
        4 => relations(groups),
        5 => minors(level),
        6 => cohen_macaulay(groups),
        7 => derivative_identities(groups),
        8 => weyl(level),
        9 => e8_fraction(),
        10 => an_dprime(level),
        11 => symmetric(level),
        12 => quiver(),
        13 => validation(groups, level),
        14 => calibration(groups),
        _ => (false, format!("no criterion {n}")),
    };
    Outcome {
        criterion: n,
        title: TITLES.get(n.wrapping_sub(1)).copied().unwrap_or("unknown"),
        pass,
        detail,
    }
}

pub fn verify_all(level: Level) -> Result<Vec<Outcome>> {
    let groups = su2_groups(level)?;
    Ok((1..=TITLES.len()).map(|n| criterion(n, level, &groups)).collect())
}
