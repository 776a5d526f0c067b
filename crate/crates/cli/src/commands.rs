use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use singcurve_core::fixture::fixture_paths;
use singcurve_core::graph::{
    acampo_zeta, alexander_polynomial, check_multiplicities, euler_smooth_parts, graph_from_char_exponents,
    solve_multiplicities, Alexander, DualGraph,
};
use singcurve_core::poincare::{verify_curve, CheckStatus, VerifyOptions, VerifyReport};
use singcurve_core::semigroup::{
    branch_data_from_char_exponents, poincare_at_infinity, poincare_closed_form, BranchSemigroupData, CharExponents,
};
use singcurve_core::{specialize_diagonal, Error, FixtureBundle, JetConfig, MultiIndex, ProductForm, TruncatedSeries};

use crate::outcome::{
    exit_code, pass_fail, Failure, Outcome, EXIT_FAIL, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK, EXIT_PRECISION,
};

/// `LO..HI` for every axis, or `LO..HI,LO..HI,…` per axis. A single range
/// is returned with one entry and widened to the curve's arity later.
pub fn parse_window(text: &str) -> Result<(Vec<i64>, Vec<i64>), Failure> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for part in text.split(',') {
        let (a, b) = part
            .trim()
            .split_once("..")
            .ok_or_else(|| Failure::input(format!("window component {part:?} is not of the form LO..HI")))?;
        let parse = |s: &str| {
            s.trim().parse::<i64>().map_err(|_| Failure::input(format!("cannot parse {s:?} in window {text:?}")))
        };
        lo.push(parse(a)?);
        hi.push(parse(b)?);
    }
    Ok((lo, hi))
}

fn load(path: &Path) -> Result<FixtureBundle, Failure> {
    let f = FixtureBundle::load(path)?;
    if f.is_empty() {
        return Err(Failure::input(format!("{}: fixture has no payload", path.display())));
    }
    Ok(f)
}

fn missing(what: &str, path: &Path) -> Failure {
    Failure::input(format!("{}: fixture has no {what}", path.display()))
}

fn graph_summary(g: &DualGraph) -> String {
    let arrows: Vec<String> = g.arrows().iter().map(|a| format!("{}->{}", a.branch, a.vertex)).collect();
    format!("{} vertices, {} edges, arrows (branch->vertex) {}", g.vertices().len(), g.edges().len(), arrows.join(" "))
}

fn first_difference(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<Option<Vec<i64>>, Error> {
    Ok(a.first_discrepancy(b)?.map(|e| e.values()))
}

struct BranchCheck {
    data: BranchSemigroupData,
    closed: ProductForm,
    graph: DualGraph,
    zeta: ProductForm,
    discrepancy: Option<Vec<i64>>,
}

fn branch_check(ce: &CharExponents, bound: i64) -> Result<BranchCheck, Error> {
    let data = branch_data_from_char_exponents(ce)?;
    let closed = poincare_closed_form(&data);
    let graph = graph_from_char_exponents(ce)?;
    let zeta = acampo_zeta(&graph)?;
    let discrepancy = first_difference(&closed.expand(&[bound])?, &zeta.expand(&[bound])?)?;
    Ok(BranchCheck { data, closed, graph, zeta, discrepancy })
}

pub fn branch(path: &Path, bound: i64) -> Result<Outcome, Failure> {
    let f = load(path)?;
    let ce = f.char_exponents().ok_or_else(|| missing("char_exponents", path))??;
    let c = branch_check(&ce, bound)?;
    let ok = c.discrepancy.is_none();
    let mut text = String::new();
    let gens: Vec<String> = c.data.gens.iter().map(u64::to_string).collect();
    writeln!(text, "fixture: {}", f.name).unwrap();
    writeln!(text, "characteristic exponents: {:?}", ce.beta()).unwrap();
    writeln!(text, "generators: {}", gens.join(", ")).unwrap();
    writeln!(text, "conductor: {}", c.data.conductor).unwrap();
    writeln!(text, "poincare (semigroup): {}", c.closed).unwrap();
    writeln!(text, "graph: {}", graph_summary(&c.graph)).unwrap();
    writeln!(text, "zeta (graph): {}", c.zeta).unwrap();
    writeln!(text, "{} poincare = zeta up to t^{bound}", pass_fail(ok)).unwrap();
    if let Some(d) = &c.discrepancy {
        writeln!(text, "first discrepancy at t^{}", d[0]).unwrap();
    }
    let json = json!({
        "name": f.name,
        "char_exponents": ce.beta(),
        "generators": c.data.gens,
        "conductor": c.data.conductor,
        "poincare": c.closed.to_string(),
        "graph": c.graph,
        "zeta": c.zeta.to_string(),
        "bound": bound,
        "passed": ok,
        "discrepancy": c.discrepancy,
    });
    Ok(Outcome { text, json, code: if ok { EXIT_OK } else { EXIT_FAIL } })
}

struct GraphCheck {
    rows: Vec<Value>,
    text_rows: Vec<String>,
    chi_sum: i64,
    zeta: ProductForm,
    alexander: Alexander,
    diagonal: Option<Vec<i64>>,
}

fn graph_check(g: &DualGraph, bound: i64) -> Result<GraphCheck, Error> {
    let table = solve_multiplicities(g)?;
    check_multiplicities(g, &table)?;
    let chi = euler_smooth_parts(g);
    let mut rows = Vec::new();
    let mut text_rows = Vec::new();
    for (s, v) in g.vertices().iter().enumerate() {
        rows.push(json!({ "id": v.id, "self_int": v.self_int, "m": table.per_vertex[s], "chi": chi[s] }));
        text_rows.push(format!(
            "  E{}  self {}  m {}  chi {}",
            v.id,
            v.self_int,
            MultiIndex::finite(&table.per_vertex[s]),
            chi[s]
        ));
    }
    let zeta = acampo_zeta(g)?;
    let alexander = alexander_polynomial(g)?;
    let zs = zeta.expand(&[bound])?;
    let diagonal = match &alexander {
        Alexander::Polynomial(delta) => first_difference(&specialize_diagonal(delta).to_series(&[bound])?, &zs)?,
        Alexander::Rational(pf) => first_difference(&specialize_diagonal(pf).expand(&[bound])?, &zs)?,
    };
    Ok(GraphCheck { rows, text_rows, chi_sum: chi.iter().sum(), zeta, alexander, diagonal })
}

fn alexander_text(a: &Alexander) -> String {
    match a {
        Alexander::Polynomial(p) => p.to_string(),
        Alexander::Rational(pf) => pf.to_string(),
    }
}

pub fn graph(path: &Path, bound: i64) -> Result<Outcome, Failure> {
    let f = load(path)?;
    let g = f.dual_graph().ok_or_else(|| missing("graph", path))??;
    let c = graph_check(&g, bound)?;
    let chi_ok = c.chi_sum == 2 - g.r() as i64;
    let ok = chi_ok && c.diagonal.is_none();
    let mut text = String::new();
    writeln!(text, "fixture: {}", f.name).unwrap();
    writeln!(text, "graph: {}", graph_summary(&g)).unwrap();
    writeln!(text, "multiplicities:").unwrap();
    for row in &c.text_rows {
        writeln!(text, "{row}").unwrap();
    }
    writeln!(text, "zeta: {}", c.zeta).unwrap();
    writeln!(text, "alexander: {}", alexander_text(&c.alexander)).unwrap();
    writeln!(text, "{} euler characteristics sum to {}", pass_fail(chi_ok), c.chi_sum).unwrap();
    writeln!(text, "{} diagonal = zeta up to t^{bound}", pass_fail(c.diagonal.is_none())).unwrap();
    let json = json!({
        "name": f.name,
        "r": g.r(),
        "vertices": c.rows,
        "chi_sum": c.chi_sum,
        "zeta": c.zeta.to_string(),
        "alexander": alexander_text(&c.alexander),
        "diagonal_bound": bound,
        "diagonal_discrepancy": c.diagonal,
        "passed": ok,
    });
    Ok(Outcome { text, json, code: if ok { EXIT_OK } else { EXIT_FAIL } })
}

fn report_code(rep: &VerifyReport) -> i32 {
    let mut code = EXIT_OK;
    for c in &rep.checks {
        let this = match (c.status, c.error_kind.as_deref()) {
            (CheckStatus::Pass, _) => EXIT_OK,
            (CheckStatus::Fail, _) => EXIT_FAIL,
            (CheckStatus::Error, Some("precision" | "margin")) => EXIT_PRECISION,
            (CheckStatus::Error, Some("input" | "arity")) => EXIT_INPUT,
            (CheckStatus::Error, _) => EXIT_INCONSISTENT,
        };
        // Precision limits dominate, then inconsistencies, then failures.
        let rank = |x: i32| match x {
            EXIT_PRECISION => 4,
            EXIT_INCONSISTENT => 3,
            EXIT_INPUT => 2,
            EXIT_FAIL => 1,
            _ => 0,
        };
        if rank(this) > rank(code) {
            code = this;
        }
    }
    code
}

fn c_table_text(rep: &VerifyReport) -> String {
    let mut out = String::new();
    match rep.r {
        1 => {
            let vals: Vec<String> = rep.c_table.iter().map(|(_, c)| c.to_string()).collect();
            writeln!(out, "c(v) for v = {}..{}: {}", rep.window_lo[0], rep.window_hi[0], vals.join(" ")).unwrap();
        }
        2 => {
            writeln!(
                out,
                "c(v1, v2), v1 = {}..{} down, v2 = {}..{} across:",
                rep.window_lo[0], rep.window_hi[0], rep.window_lo[1], rep.window_hi[1]
            )
            .unwrap();
            let width = (rep.window_hi[1] - rep.window_lo[1] + 1) as usize;
            for row in rep.c_table.chunks(width) {
                let vals: Vec<String> = row.iter().map(|(_, c)| format!("{c:>2}")).collect();
                writeln!(out, "  {}", vals.join(" ")).unwrap();
            }
        }
        _ => {
            writeln!(out, "c(v), nonzero entries:").unwrap();
            for (v, c) in rep.c_table.iter().filter(|(_, c)| *c != 0) {
                writeln!(out, "  {} -> {c}", MultiIndex::finite(v)).unwrap();
            }
        }
    }
    out
}

fn widen(window: (Vec<i64>, Vec<i64>), r: usize) -> Result<(Vec<i64>, Vec<i64>), Failure> {
    match window.0.len() {
        1 => Ok((vec![window.0[0]; r], vec![window.1[0]; r])),
        n if n == r => Ok(window),
        n => Err(Failure::input(format!("window has {n} ranges for {r} branches"))),
    }
}

pub fn curve(
    path: &Path,
    window: Option<(Vec<i64>, Vec<i64>)>,
    config: JetConfig,
    bound: i64,
) -> Result<Outcome, Failure> {
    let f = load(path)?;
    let model = f.curve_model().ok_or_else(|| missing("curve", path))??;
    let graph = f.dual_graph().transpose()?;
    let window = window.map(|w| widen(w, model.r())).transpose()?;
    let opts = VerifyOptions { window, zeta_bound: bound, config, ..VerifyOptions::default() };
    let rep = verify_curve(&model, graph.as_ref(), &opts)?;
    let code = report_code(&rep);
    let mut text = String::new();
    writeln!(text, "fixture: {}", f.name).unwrap();
    writeln!(text, "branches: {}", model.r()).unwrap();
    writeln!(text, "window: {:?}..{:?}", rep.window_lo, rep.window_hi).unwrap();
    if !rep.c_table.is_empty() {
        text.push_str(&c_table_text(&rep));
    }
    let show = |x: &Option<String>| x.clone().unwrap_or_else(|| "unavailable".into());
    writeln!(text, "P': {}", show(&rep.p_prime)).unwrap();
    writeln!(text, "P_C: {}", show(&rep.poincare)).unwrap();
    writeln!(text, "X_C: {}", show(&rep.euler)).unwrap();
    if graph.is_some() {
        writeln!(text, "alexander: {}", show(&rep.alexander)).unwrap();
        writeln!(text, "zeta: {}", show(&rep.zeta)).unwrap();
    }
    for c in &rep.checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Error => "ERROR",
        };
        write!(text, "{status} {}", c.name).unwrap();
        if let Some(d) = &c.discrepancy {
            write!(text, " (first discrepancy at {d:?})").unwrap();
        }
        if let Some(d) = &c.detail {
            write!(text, ": {d}").unwrap();
        }
        writeln!(text).unwrap();
    }
    let mut json = serde_json::to_value(&rep).expect("serializable");
    json["name"] = json!(f.name);
    json["passed"] = json!(rep.passed());
    Ok(Outcome { text, json, code })
}

struct InfinityCheck {
    text: String,
    json: Value,
    rational: Option<Vec<i64>>,
    product: Option<Option<Vec<i64>>>,
}

fn infinity_check(delta: Vec<u64>, bound: i64) -> Result<InfinityCheck, Error> {
    let gamma = singcurve_core::SemigroupAtInfinity::new(delta)?;
    let p = poincare_at_infinity(&gamma, bound)?;
    let rational = first_difference(&p.rational_series(bound)?, &p.series)?;
    let product = match &p.product {
        Some(pf) => Some(first_difference(&pf.expand(&[bound])?, &p.series)?),
        None => None,
    };
    let mut text = String::new();
    writeln!(text, "delta sequence: {:?}", gamma.delta).unwrap();
    writeln!(text, "conductor: {}", p.conductor).unwrap();
    writeln!(text, "gaps: {:?}", p.gaps).unwrap();
    writeln!(text, "series: {}", p.series).unwrap();
    writeln!(text, "rational form: ({}) / (1 - t)", p.numerator).unwrap();
    match &p.product {
        Some(pf) => writeln!(text, "product form: {pf}").unwrap(),
        None => writeln!(text, "product form: not free").unwrap(),
    }
    writeln!(text, "{} enumeration = rational form up to t^{bound}", pass_fail(rational.is_none())).unwrap();
    if let Some(d) = &product {
        writeln!(text, "{} enumeration = product form up to t^{bound}", pass_fail(d.is_none())).unwrap();
    }
    let json = json!({
        "delta_sequence": gamma.delta,
        "conductor": p.conductor,
        "gaps": p.gaps,
        "series": p.series.to_string(),
        "numerator": p.numerator.to_string(),
        "product": p.product.as_ref().map(ProductForm::to_string),
        "bound": bound,
        "rational_discrepancy": rational,
        "product_discrepancy": product.clone().flatten(),
    });
    Ok(InfinityCheck { text, json, rational, product })
}

pub fn infinity(path: &Path, bound: i64) -> Result<Outcome, Failure> {
    let f = load(path)?;
    let delta = f.delta_sequence.clone().ok_or_else(|| missing("delta_sequence", path))?;
    let c = infinity_check(delta, bound)?;
    let ok = c.rational.is_none() && !matches!(c.product, Some(Some(_)));
    let text = format!("fixture: {}\n{}", f.name, c.text);
    let mut json = c.json;
    json["name"] = json!(f.name);
    json["passed"] = json!(ok);
    Ok(Outcome { text, json, code: if ok { EXIT_OK } else { EXIT_FAIL } })
}

#[derive(Clone)]
struct Entry {
    check: String,
    passed: bool,
    detail: Option<String>,
}

impl Entry {
    fn pass(check: &str) -> Self {
        Entry { check: check.into(), passed: true, detail: None }
    }

    fn fail(check: &str, detail: impl Into<String>) -> Self {
        Entry { check: check.into(), passed: false, detail: Some(detail.into()) }
    }

    fn from_error(check: &str, e: &Error) -> Self {
        Entry::fail(check, format!("{} (exit class {}): {e}", e.kind(), exit_code(e)))
    }

    fn compare(check: &str, d: Option<Vec<i64>>) -> Self {
        match d {
            None => Entry::pass(check),
            Some(d) => Entry::fail(check, format!("first discrepancy at {d:?}")),
        }
    }
}

fn fixture_checks(f: &FixtureBundle, config: JetConfig) -> Vec<Entry> {
    let mut out = Vec::new();
    let mut synthesized = None;
    let mut gens = None;
    match f.char_exponents() {
        None => {}
        Some(Err(e)) => out.push(Entry::from_error("branch", &e)),
        Some(Ok(ce)) => match branch_check(&ce, 100) {
            Ok(c) => {
                out.push(Entry::compare("branch: closed form = zeta to t^100", c.discrepancy));
                synthesized = Some(c.graph);
                gens = Some(c.data.gens);
            }
            Err(e) => out.push(Entry::from_error("branch", &e)),
        },
    }
    let graph = match f.dual_graph() {
        None => synthesized,
        Some(Err(e)) => {
            out.push(Entry::from_error("graph", &e));
            None
        }
        Some(Ok(g)) => {
            match graph_check(&g, 60) {
                Ok(c) => {
                    let expected = 2 - g.r() as i64;
                    out.push(if c.chi_sum == expected {
                        Entry::pass("graph: euler characteristics sum to 2 - r")
                    } else {
                        Entry::fail("graph: euler characteristics sum to 2 - r", format!("sum is {}", c.chi_sum))
                    });
                    out.push(Entry::compare("graph: diagonal = zeta to t^60", c.diagonal));
                }
                Err(e) => out.push(Entry::from_error("graph", &e)),
            }
            Some(g)
        }
    };
    match f.curve_model() {
        None => {}
        Some(Err(e)) => out.push(Entry::from_error("curve", &e)),
        Some(Ok(model)) => {
            let opts = VerifyOptions { config, ..VerifyOptions::default() };
            let graph = graph.filter(|g| g.r() == model.r());
            match verify_curve(&model, graph.as_ref(), &opts) {
                Ok(rep) => {
                    for c in &rep.checks {
                        let name = format!("curve: {}", c.name);
                        out.push(match c.status {
                            CheckStatus::Pass => Entry::pass(&name),
                            CheckStatus::Fail => Entry::compare(&name, c.discrepancy.clone()),
                            CheckStatus::Error => {
                                Entry::fail(&name, c.detail.clone().unwrap_or_else(|| "error".into()))
                            }
                        });
                    }
                    if let (Some(gens), Some(pc), 1) = (&gens, &rep.poincare, rep.r) {
                        let hi = rep.window_hi[0];
                        let member = singcurve_core::semigroup::membership(gens, hi.max(0) as u64);
                        let enumeration = TruncatedSeries::from_terms(
                            vec![hi],
                            (0..=hi).filter(|&v| member[v as usize]).map(|v| (MultiIndex::finite(&[v]), 1.into())),
                        );
                        out.push(if &enumeration.to_string() == pc {
                            Entry::pass("curve: P_C = semigroup enumeration")
                        } else {
                            Entry::fail("curve: P_C = semigroup enumeration", format!("{pc} != {enumeration}"))
                        });
                    }
                }
                Err(e) => out.push(Entry::from_error("curve", &e)),
            }
        }
    }
    if let Some(delta) = f.delta_sequence.clone() {
        match infinity_check(delta, 60) {
            Ok(c) => {
                out.push(Entry::compare("infinity: enumeration = rational form to t^60", c.rational));
                if let Some(d) = c.product {
                    out.push(Entry::compare("infinity: enumeration = product form to t^60", d));
                }
            }
            Err(e) => out.push(Entry::from_error("infinity", &e)),
        }
    }
    out
}

pub fn verify(dir: &Path, config: JetConfig) -> Result<Outcome, Failure> {
    if !dir.is_dir() {
        return Err(Failure::input(format!("{} is not a directory", dir.display())));
    }
    let paths = fixture_paths(dir)?;
    if paths.is_empty() {
        return Err(Failure::input(format!("{} contains no fixtures", dir.display())));
    }
    let mut results: Vec<(String, String, Vec<Entry>)> = Vec::new();
    for path in &paths {
        let file = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        match load(path) {
            Ok(f) => {
                let entries = fixture_checks(&f, config);
                results.push((f.name, file, entries));
            }
            Err(e) => results.push((file.clone(), file, vec![Entry::fail("parse", e.message)])),
        }
    }
    results.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let mut text = String::new();
    let mut fixtures = Vec::new();
    let (mut passed, mut failed) = (0usize, 0usize);
    for (name, file, entries) in &results {
        for e in entries {
            if e.passed {
                passed += 1;
            } else {
                failed += 1;
            }
            write!(text, "{} {name}: {}", pass_fail(e.passed), e.check).unwrap();
            if let Some(d) = &e.detail {
                write!(text, " [{d}]").unwrap();
            }
            writeln!(text).unwrap();
        }
        fixtures.push(json!({
            "name": name,
            "file": file,
            "checks": entries.iter().map(|e| json!({"check": e.check, "passed": e.passed, "detail": e.detail})).collect::<Vec<_>>(),
        }));
    }
    writeln!(text, "{} fixtures, {passed} checks passed, {failed} failed", results.len()).unwrap();
    let json = json!({ "fixtures": fixtures, "passed": passed, "failed": failed });
    Ok(Outcome { text, json, code: if failed == 0 { EXIT_OK } else { EXIT_FAIL } })
}
