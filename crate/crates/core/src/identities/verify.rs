//! Side-by-side evaluation of left- and right-hand sides.

use std::time::Instant;

use serde_json::{json, Map, Value as Json};

use super::brute::ct_brute;
use super::family::{CtValue, Family, IdentityCase, Method, Params};
use super::interp::ct_interp;
use super::rhs::rhs;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Outcome of a verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Equal,
    Unequal,
    /// A size limit or deadline stopped the computation.
    Skipped,
    /// Invalid parameters or an internal inconsistency.
    Error,
    /// Only the closed form was requested.
    RhsOnly,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Equal => "equal",
            Status::Unequal => "unequal",
            Status::Skipped => "skipped",
            Status::Error => "error",
            Status::RhsOnly => "rhs_only",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub family: Family,
    pub params: Params,
    pub method: Method,
    pub brute: Option<CtValue>,
    pub interp: Option<CtValue>,
    pub rhs: Option<CtValue>,
    pub status: Status,
    /// Set when the case lies outside the range where the identity is proven.
    pub conjecture: bool,
    pub elapsed_ms: u64,
    /// Peak intermediate term count of the expansion.
    pub terms: Option<usize>,
    pub grid_points: Option<u64>,
    pub nonzero_summands: Option<u64>,
    pub error: Option<Error>,
}

impl VerifyReport {
    /// `Some(true)` when every computed side agrees, `None` when nothing was compared.
    pub fn equal(&self) -> Option<bool> {
        match self.status {
            Status::Equal => Some(true),
            Status::Unequal => Some(false),
            _ => None,
        }
    }

    /// The primary left-hand side: the expansion when available, else the interpolation.
    pub fn lhs(&self) -> Option<&CtValue> {
        self.brute.as_ref().or(self.interp.as_ref())
    }

    /// JSON object with sorted keys. `timing = false` drops `elapsed_ms` for
    /// byte-reproducible output.
    pub fn to_json(&self, timing: bool) -> Json {
        let value = |v: Option<&CtValue>| v.map_or(Json::Null, CtValue::to_json);
        let mut map = Map::new();
        map.insert("family".into(), json!(self.family.name()));
        map.insert("params".into(), self.params.to_json(self.family));
        map.insert("method".into(), json!(self.method.name()));
        map.insert("lhs".into(), value(self.lhs()));
        if self.brute.is_some() && self.interp.is_some() {
            map.insert("lhs_interp".into(), value(self.interp.as_ref()));
        }
        map.insert("rhs".into(), value(self.rhs.as_ref()));
        map.insert("equal".into(), self.equal().map_or(Json::Null, Json::Bool));
        map.insert("status".into(), json!(self.status.name()));
        map.insert("conjecture".into(), json!(self.conjecture));
        map.insert("terms".into(), self.terms.map_or(Json::Null, |t| json!(t)));
        if let Some(p) = self.grid_points {
            map.insert("grid_points".into(), json!(p));
        }
        if let Some(s) = self.nonzero_summands {
            map.insert("nonzero_summands".into(), json!(s));
        }
        if let Some(e) = &self.error {
            map.insert("error".into(), json!({"kind": e.kind(), "message": e.to_string()}));
        }
        if timing {
            map.insert("elapsed_ms".into(), json!(self.elapsed_ms));
        }
        Json::Object(map)
    }
}

/// Whether the case lies outside the parameter range covered by a proof.
///
/// `aomoto_forrester` is proven for `n <= m + n0`. The Forrester families are
/// covered when `n = n0`, when `n0 = 0` (a Morris product with `k + 1`), and when
/// `a >= 1` (the overlay with `m = n` and `a - 1`).
pub fn is_conjecture(case: &IdentityCase) -> bool {
    let p = &case.params;
    let Ok(s) = p.scalars(case.family) else {
        return false;
    };
    match case.family {
        Family::AomotoForrester => s.n > s.m + s.n0,
        Family::Forrester | Family::QForrester => s.n > s.n0 && s.n0 > 0 && s.a == 0,
        _ => false,
    }
}

/// Runs the requested evaluation paths and the closed form, and compares them exactly.
///
/// Errors never escape: they are recorded in the report together with
/// whatever values were computed before the failure.
pub fn verify(case: &IdentityCase, budget: &Budget) -> VerifyReport {
    let start = Instant::now();
    let mut report = VerifyReport {
        family: case.family,
        params: case.params.clone(),
        method: case.method,
        brute: None,
        interp: None,
        rhs: None,
        status: Status::Error,
        conjecture: is_conjecture(case),
        elapsed_ms: 0,
        terms: None,
        grid_points: None,
        nonzero_summands: None,
        error: None,
    };
    if let Err(e) = fill(case, budget, &mut report) {
        report.status = if e.is_resource() { Status::Skipped } else { Status::Error };
        report.error = Some(e);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

fn fill(case: &IdentityCase, budget: &Budget, report: &mut VerifyReport) -> Result<()> {
    let rhs_value = rhs(case)?;
    report.rhs = Some(rhs_value.clone());
    let (run_brute, run_interp) = match case.method {
        Method::Brute => (true, false),
        Method::Interp => (false, true),
        Method::Both => (true, case.family.has_interp()),
        Method::RhsOnly => {
            report.status = Status::RhsOnly;
            return Ok(());
        }
    };
    if run_interp && !case.family.has_interp() {
        return Err(Error::Unsupported(format!("{} by interpolation", case.family)));
    }
    if run_brute {
        let (v, stats) = ct_brute(case, budget)?;
        report.terms = Some(stats.peak_terms);
        report.brute = Some(v);
    }
    if run_interp {
        let (v, stats) = ct_interp(case, budget)?;
        report.grid_points = Some(stats.points_visited);
        report.nonzero_summands = Some(stats.nonzero_summands);
        report.interp = Some(v);
    }
    let equal = [&report.brute, &report.interp]
        .into_iter()
        .flatten()
        .all(|v| *v == rhs_value);
    report.status = if equal { Status::Equal } else { Status::Unequal };
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn af(n: usize, n0: usize, m: usize, method: Method) -> IdentityCase {
        IdentityCase::new(
            Family::AomotoForrester,
            Params {
                n: Some(n),
                n0: Some(n0),
                m: Some(m),
                a: Some(vec![1]),
                b: Some(1),
                k: Some(1),
                ..Default::default()
            },
            method,
        )
    }

    #[test]
    fn q_dyson_both() {
        let case = IdentityCase::new(
            Family::QDyson,
            Params {
                a: Some(vec![1, 2]),
                ..Default::default()
            },
            Method::Both,
        );
        let r = verify(&case, &Budget::default());
        assert_eq!(r.equal(), Some(true));
        assert!(r.interp.is_some());
    }

    #[test]
    fn aomoto_forrester_examples() {
        let r = verify(&af(3, 2, 1, Method::Brute), &Budget::default());
        assert_eq!(r.equal(), Some(true));
        assert!(!r.conjecture);
        let r = verify(&af(2, 1, 1, Method::Both), &Budget::default());
        assert_eq!(r.equal(), Some(true));
        let r = verify(&af(3, 1, 1, Method::Brute), &Budget::default());
        assert!(r.conjecture);
        assert!(r.brute.is_some() && r.rhs.is_some());
    }

    #[test]
    fn size_limit_is_skipped_with_partial_report() {
        let case = IdentityCase::new(
            Family::Dyson,
            Params {
                a: Some(vec![2, 2, 2]),
                ..Default::default()
            },
            Method::Brute,
        );
        let r = verify(&case, &Budget::default().with_max_terms(3));
        assert_eq!(r.status, Status::Skipped);
        assert!(r.rhs.is_some());
        assert_eq!(r.to_json(false)["error"]["kind"], "size_limit");
    }

    #[test]
    fn bad_params_are_errors() {
        let case = IdentityCase::new(Family::Morris, Params::default(), Method::Both);
        let r = verify(&case, &Budget::default());
        assert_eq!(r.status, Status::Error);
        assert_eq!(r.equal(), None);
    }

    #[test]
    fn json_keys_sorted() {
        let case = IdentityCase::new(
            Family::QDyson,
            Params {
                a: Some(vec![1, 1]),
                ..Default::default()
            },
            Method::Brute,
        );
        let j = verify(&case, &Budget::default()).to_json(false);
        let keys: Vec<_> = j.as_object().unwrap().keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(j["lhs"], json!(["1", "1"]));
        assert_eq!(j["equal"], json!(true));
    }
}
