use serde::Serialize;

use super::integral::{euler_integral, x_series, IntegralMode};
use super::window::{
    adaptive_window, build_laurent_window, p_prime, poincare_from_jets, window_from_graph, LaurentWindow,
    PoincareSeries,
};
use crate::error::{Error, Result};
use crate::graph::{acampo_zeta, alexander_polynomial, Alexander, DualGraph};
use crate::jets::{CurveModel, JetConfig, JetEngine};
use crate::series::{specialize_diagonal, IntPolynomial, TruncatedSeries};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Corners `(lo, hi)` of the Laurent window; derived from the graph or
    /// found adaptively when absent.
    pub window: Option<(Vec<i64>, Vec<i64>)>,
    pub zeta_bound: i64,
    pub max_hi: i64,
    pub config: JetConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { window: None, zeta_bound: 60, max_hi: 256, config: JetConfig::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    /// Upper corner of the box the comparison covered.
    pub window: Vec<i64>,
    pub discrepancy: Option<Vec<i64>>,
    /// Error variant name when `status` is `error`.
    pub error_kind: Option<String>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub r: usize,
    pub window_lo: Vec<i64>,
    pub window_hi: Vec<i64>,
    /// `(v, c(v))` over the Laurent window.
    pub c_table: Vec<(Vec<i64>, usize)>,
    pub p_prime: Option<String>,
    pub poincare: Option<String>,
    pub euler: Option<String>,
    pub alexander: Option<String>,
    pub zeta: Option<String>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    /// Error kinds of the checks that could not run.
    pub fn error_kinds(&self) -> Vec<&str> {
        self.checks.iter().filter_map(|c| c.error_kind.as_deref()).collect()
    }
}

fn errored(name: &str, window: &[i64], e: &Error) -> CheckResult {
    CheckResult {
        name: name.into(),
        status: CheckStatus::Error,
        window: window.to_vec(),
        discrepancy: None,
        error_kind: Some(e.kind().into()),
        detail: Some(e.to_string()),
    }
}

fn compared(name: &str, window: &[i64], discrepancy: Option<Vec<i64>>, detail: impl FnOnce() -> String) -> CheckResult {
    let status = if discrepancy.is_none() { CheckStatus::Pass } else { CheckStatus::Fail };
    let detail = discrepancy.is_some().then(detail);
    CheckResult { name: name.into(), status, window: window.to_vec(), discrepancy, error_kind: None, detail }
}

fn poly_discrepancy(a: &IntPolynomial, b: &IntPolynomial) -> Option<Vec<i64>> {
    (a - b).terms().keys().next().map(|e| e.values())
}

fn series_discrepancy(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<Option<Vec<i64>>> {
    Ok(a.first_discrepancy(b)?.map(|e| e.values()))
}

fn compare_poincare(name: &str, a: &PoincareSeries, b: &PoincareSeries, window: &[i64]) -> CheckResult {
    let d = match (a, b) {
        (PoincareSeries::Polynomial(p), PoincareSeries::Polynomial(q)) => Ok(poly_discrepancy(p, q)),
        (PoincareSeries::Series(p), PoincareSeries::Series(q)) => series_discrepancy(p, q),
        _ => Err(Error::Inconsistent("cannot compare a polynomial with a series".into())),
    };
    match d {
        Ok(d) => compared(name, window, d, || format!("{} != {}", a.to_text(), b.to_text())),
        Err(e) => errored(name, window, &e),
    }
}

/// Runs every available comparison for `curve`, paired with `graph` when
/// one is given. Failures are reported, never raised, except for a model
/// whose arity disagrees with the graph.
pub fn verify_curve(curve: &CurveModel, graph: Option<&DualGraph>, opts: &VerifyOptions) -> Result<VerifyReport> {
    let r = curve.r();
    if let Some(g) = graph {
        if g.r() != r {
            return Err(Error::Arity { expected: r, found: g.r() });
        }
    }
    let mut engine = JetEngine::new(curve, opts.config);
    let mut report = VerifyReport {
        r,
        window_lo: vec![-2; r],
        window_hi: Vec::new(),
        c_table: Vec::new(),
        p_prime: None,
        poincare: None,
        euler: None,
        alexander: None,
        zeta: None,
        checks: Vec::new(),
    };

    let lw: Result<LaurentWindow> = match (&opts.window, graph) {
        (Some((lo, hi)), _) => build_laurent_window(&mut engine, lo, hi),
        (None, Some(g)) => window_from_graph(g).and_then(|(lo, hi)| build_laurent_window(&mut engine, &lo, &hi)),
        (None, None) => adaptive_window(&mut engine, opts.max_hi),
    };
    let lw = match lw {
        Ok(lw) => lw,
        Err(e) => {
            if let Some((lo, hi)) = &opts.window {
                report.window_lo = lo.clone();
                report.window_hi = hi.clone();
            }
            report.checks.push(errored("laurent_window", &report.window_hi, &e));
            return Ok(report);
        }
    };
    report.window_lo = lw.lo.clone();
    report.window_hi = lw.hi.clone();
    report.c_table = lw.values.iter().map(|(v, c)| (v.clone(), *c)).collect();
    let hi = lw.hi.clone();
    if let Ok(pp) = p_prime(&lw) {
        report.p_prime = Some(pp.to_string());
    }

    let pc = poincare_from_jets(&lw);
    let xc = x_series(&mut engine, &hi);
    if let Ok(p) = &pc {
        report.poincare = Some(p.to_text());
    }
    if let Ok(x) = &xc {
        report.euler = Some(x.to_text());
    }

    let alexander = graph.map(alexander_polynomial);
    let zeta = graph.map(acampo_zeta);
    if let Some(Ok(z)) = &zeta {
        report.zeta = Some(z.to_string());
    }

    if r > 1 {
        if let Some(alex) = alexander {
            let check = match (alex.as_ref(), &pc) {
                (Ok(Alexander::Polynomial(delta)), Ok(PoincareSeries::Polynomial(p))) => {
                    report.alexander = Some(delta.to_string());
                    compared("alexander_vs_poincare", &hi, poly_discrepancy(delta, p), || format!("{delta} != {p}"))
                }
                (Ok(Alexander::Rational(_)), _) => {
                    errored("alexander_vs_poincare", &hi, &Error::Inconsistent("rational Alexander form".into()))
                }
                (Err(e), _) | (_, Err(e)) => errored("alexander_vs_poincare", &hi, e),
                (_, Ok(PoincareSeries::Series(_))) => {
                    errored("alexander_vs_poincare", &hi, &Error::Inconsistent("series for r > 1".into()))
                }
            };
            report.checks.push(check);
        }
        report.checks.push(match (&pc, &xc) {
            (Ok(p), Ok(x)) => compare_poincare("poincare_vs_euler", p, x, &hi),
            (Err(e), _) | (_, Err(e)) => errored("poincare_vs_euler", &hi, e),
        });
        if let Some(z) = zeta {
            let b = opts.zeta_bound;
            let diag = euler_integral(&mut engine, &hi, IntegralMode::Diagonal);
            let check = z.and_then(|z| {
                let zs = z.expand(&[b])?;
                let d = match &pc {
                    Ok(PoincareSeries::Polynomial(p)) => specialize_diagonal(p).to_series(&[b])?,
                    Ok(_) => return Err(Error::Inconsistent("series for r > 1".into())),
                    Err(e) => return Err(e.clone()),
                };
                let integral = match diag? {
                    PoincareSeries::Polynomial(p) => p.to_series(&[b])?,
                    PoincareSeries::Series(s) => s,
                };
                let first = series_discrepancy(&d, &zs)?;
                let second = series_discrepancy(&integral, &zs)?;
                Ok(compared("diagonal_vs_zeta", &[b], first.or(second), || {
                    format!("diagonal {d}, integral {integral}, zeta {zs}")
                }))
            });
            report.checks.push(check.unwrap_or_else(|e| errored("diagonal_vs_zeta", &[b], &e)));
        }
    } else {
        if let Some(alex) = alexander {
            let check = alex.and_then(|a| {
                let pf = match a {
                    Alexander::Rational(pf) => pf,
                    Alexander::Polynomial(_) => {
                        return Err(Error::Inconsistent("polynomial Alexander form for one branch".into()))
                    }
                };
                report.alexander = Some(pf.to_string());
                let expected = PoincareSeries::Series(pf.expand(&hi)?);
                match &pc {
                    Ok(p) => Ok(compare_poincare("poincare_vs_zeta", p, &expected, &hi)),
                    Err(e) => Err(e.clone()),
                }
            });
            report.checks.push(check.unwrap_or_else(|e| errored("poincare_vs_zeta", &hi, &e)));
        }
        report.checks.push(match (&pc, &xc) {
            (Ok(p), Ok(x)) => compare_poincare("euler_vs_poincare", x, p, &hi),
            (Err(e), _) | (_, Err(e)) => errored("euler_vs_poincare", &hi, e),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Arrow, Vertex};
    use crate::jets::testing::curve;

    fn tacnode_graph() -> DualGraph {
        DualGraph::new(
            2,
            vec![Vertex { id: 1, self_int: -2 }, Vertex { id: 2, self_int: -1 }],
            vec![[1, 2]],
            vec![Arrow { vertex: 2, branch: 1 }, Arrow { vertex: 2, branch: 2 }],
        )
        .unwrap()
    }

    #[test]
    fn tacnode_passes() {
        let c = curve(&[(&[(1, 1)], &[(2, 1)]), (&[(1, 1)], &[(2, -1)])]);
        let rep = verify_curve(&c, Some(&tacnode_graph()), &VerifyOptions::default()).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        assert_eq!(rep.checks.len(), 3);
        assert_eq!(rep.alexander.as_deref(), Some("1 + 1*t1^1*t2^1"));
    }

    #[test]
    fn mismatched_graph_is_reported() {
        let node = curve(&[(&[(1, 1)], &[]), (&[], &[(1, 1)])]);
        let rep = verify_curve(&node, Some(&tacnode_graph()), &VerifyOptions::default()).unwrap();
        assert!(!rep.passed());
        let first = &rep.checks[0];
        assert_eq!(first.status, CheckStatus::Fail);
        assert_eq!(first.discrepancy, Some(vec![1, 1]));
    }

    #[test]
    fn cusp_without_graph() {
        let c = curve(&[(&[(2, 1)], &[(3, 1)])]);
        let rep = verify_curve(&c, None, &VerifyOptions::default()).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        assert_eq!(rep.checks.len(), 1);
    }
}
