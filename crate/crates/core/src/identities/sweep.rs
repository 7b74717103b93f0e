//! Parameter grids and ordered parallel execution of verifications.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use super::brute::subsets;
use super::family::{Family, IdentityCase, Method, Params};
use super::verify::{verify, Status, VerifyReport};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Inclusive integer interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub fn new(lo: u32, hi: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::bad(format!("empty range {lo}..{hi}")));
        }
        Ok(Span { lo, hi })
    }

    pub fn single(x: u32) -> Self {
        Span { lo: x, hi: x }
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    /// Parses `"3"` or `"1..3"` (inclusive).
    pub fn parse(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::bad(format!("'{s}' is not an integer or lo..hi range")))
        };
        match s.split_once("..") {
            Some((lo, hi)) => Span::new(num(lo)?, num(hi.trim_start_matches('='))?),
            None => Ok(Span::single(num(s)?)),
        }
    }
}

/// A parameter grid for one family. Unset ranges take family defaults:
/// `n0` and `m` range over `0..=n`, `r` and `s` over `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepConfig {
    pub family: Option<Family>,
    pub n: Option<Span>,
    pub n0: Option<Span>,
    pub m: Option<Span>,
    /// Range of the scalar `a`, or of every entry of a vector `a`.
    pub a: Option<Span>,
    pub b: Option<Span>,
    pub k: Option<Span>,
    pub r: Option<Span>,
    pub s: Option<Span>,
    #[serde(default)]
    pub method: Method,
    /// Admit cases outside the proven range.
    #[serde(default)]
    pub conjecture: bool,
}

fn clip(span: Option<Span>, lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    let s = span.unwrap_or(Span { lo, hi });
    s.lo.max(lo)..=s.hi.min(hi)
}

fn need(span: Option<Span>, name: &str) -> Result<Span> {
    span.ok_or_else(|| Error::bad(format!("sweep needs a range for '{name}'")))
}

/// All vectors in `span^n`, in lexicographic order.
fn vectors(n: usize, span: Span) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                span.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

impl SweepConfig {
    /// Every case of the grid in a fixed order. Cases outside the proven range
    /// are included only when `conjecture` is set.
    pub fn cases(&self) -> Result<Vec<IdentityCase>> {
        let family = self.family.ok_or_else(|| Error::bad("sweep needs a family"))?;
        let n_span = need(self.n, "n")?;
        let a_span = need(self.a, "a")?;
        let mut out = Vec::new();
        let mut push = |params: Params| {
            let case = IdentityCase::new(family, params, self.method);
            if self.conjecture || !super::verify::is_conjecture(&case) {
                out.push(case);
            }
        };
        for n in n_span.iter().filter(|&n| n >= 1) {
            let nu = n as usize;
            if family.has_vector_a() {
                for a in vectors(nu, a_span) {
                    let base = Params {
                        a: Some(a),
                        ..Default::default()
                    };
                    match family {
                        Family::KadellMain | Family::KadellSum => {
                            for m in clip(self.m, 0, n - 1) {
                                push(Params { m: Some(m as usize), ..base.clone() });
                            }
                        }
                        Family::KadellCorollary => {
                            for m in clip(self.m, 0, n - 1) {
                                for set in subsets(nu, m as usize) {
                                    for r in clip(self.r, 1, n).filter(|r| !set.contains(&(*r as usize))) {
                                        push(Params {
                                            m: Some(m as usize),
                                            r: Some(r as usize),
                                            set: Some(set.clone()),
                                            ..base.clone()
                                        });
                                    }
                                }
                            }
                        }
                        Family::Sills => {
                            for r in clip(self.r, 1, n) {
                                for s in clip(self.s, 1, n).filter(|&s| s != r) {
                                    push(Params {
                                        r: Some(r as usize),
                                        s: Some(s as usize),
                                        ..base.clone()
                                    });
                                }
                            }
                        }
                        Family::XinHr => {
                            for r in self.r.unwrap_or(Span::single(1)).iter().filter(|&r| r >= 1) {
                                push(Params { r: Some(r as usize), ..base.clone() });
                            }
                        }
                        _ => push(base),
                    }
                }
                continue;
            }
            let (b_span, k_span) = (need(self.b, "b")?, need(self.k, "k")?);
            let n0s: Vec<u32> = match family {
                Family::Forrester | Family::QForrester | Family::AomotoForrester => clip(self.n0, 0, n).collect(),
                _ => vec![n],
            };
            let ms: Vec<u32> = match family {
                Family::Aomoto | Family::QAomoto | Family::AomotoForrester => clip(self.m, 0, n).collect(),
                _ => vec![0],
            };
            let has_n0 = matches!(family, Family::Forrester | Family::QForrester | Family::AomotoForrester);
            let has_m = matches!(family, Family::Aomoto | Family::QAomoto | Family::AomotoForrester);
            for &n0 in &n0s {
                for &m in &ms {
                    for a in a_span.iter() {
                        for b in b_span.iter() {
                            for k in k_span.iter() {
                                push(Params {
                                    n: Some(nu),
                                    n0: has_n0.then_some(n0 as usize),
                                    m: has_m.then_some(m as usize),
                                    a: Some(vec![a]),
                                    b: Some(b),
                                    k: Some(k),
                                    ..Default::default()
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Counts of report statuses, split by the conjecture flag.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub proven: BTreeMap<&'static str, usize>,
    pub conjecture: BTreeMap<&'static str, usize>,
}

impl SweepSummary {
    pub fn add(&mut self, report: &VerifyReport) {
        let bucket = if report.conjecture { &mut self.conjecture } else { &mut self.proven };
        *bucket.entry(report.status.name()).or_default() += 1;
    }

    pub fn count(&self, status: Status) -> usize {
        self.proven.get(status.name()).copied().unwrap_or(0)
    }

    /// Whether any case outside the conjecture bucket came out unequal.
    pub fn any_unequal(&self) -> bool {
        self.count(Status::Unequal) > 0
    }

    pub fn to_json(&self) -> Json {
        let counts = |m: &BTreeMap<&'static str, usize>| {
            let total: usize = m.values().sum();
            let mut j = json!({"equal": 0, "unequal": 0, "skipped": 0, "error": 0, "rhs_only": 0, "total": total});
            for (k, v) in m {
                j[*k] = json!(v);
            }
            j
        };
        json!({"summary": counts(&self.proven), "conjecture": counts(&self.conjecture)})
    }
}

/// Verifies `cases` on `threads` workers and hands reports to `sink` in case
/// order, independent of completion order. Each case gets a fresh deadline
/// of `timeout` from its own start.
pub fn run_cases(
    cases: &[IdentityCase],
    budget: &Budget,
    timeout: Option<Duration>,
    threads: usize,
    mut sink: impl FnMut(usize, VerifyReport),
) {
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, VerifyReport)>();
    std::thread::scope(|scope| {
        for _ in 0..threads.max(1) {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(case) = cases.get(i) else { break };
                let b = match timeout {
                    Some(t) => budget.with_timeout(t),
                    None => *budget,
                };
                if tx.send((i, verify(case, &b))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut want = 0;
        for (i, report) in rx {
            pending.insert(i, report);
            while let Some(r) = pending.remove(&want) {
                sink(want, r);
                want += 1;
            }
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_parsing() {
        assert_eq!(Span::parse("3").unwrap(), Span::single(3));
        assert_eq!(Span::parse("1..4").unwrap(), Span { lo: 1, hi: 4 });
        assert_eq!(Span::parse("1..=4").unwrap(), Span { lo: 1, hi: 4 });
        assert!(Span::parse("4..1").is_err());
        assert!(Span::parse("x").is_err());
    }

    #[test]
    fn dyson_grid() {
        let cfg = SweepConfig {
            family: Some(Family::Dyson),
            n: Some(Span::new(1, 3).unwrap()),
            a: Some(Span::new(0, 2).unwrap()),
            ..Default::default()
        };
        assert_eq!(cfg.cases().unwrap().len(), 3 + 9 + 27);
    }

    #[test]
    fn conjecture_cases_need_the_flag() {
        let mut cfg = SweepConfig {
            family: Some(Family::AomotoForrester),
            n: Some(Span::single(3)),
            n0: Some(Span::single(1)),
            m: Some(Span::single(1)),
            a: Some(Span::single(1)),
            b: Some(Span::single(1)),
            k: Some(Span::single(1)),
            ..Default::default()
        };
        assert!(cfg.cases().unwrap().is_empty());
        cfg.conjecture = true;
        assert_eq!(cfg.cases().unwrap().len(), 1);
    }

    #[test]
    fn ordered_output_and_summary() {
        let cfg = SweepConfig {
            family: Some(Family::Dyson),
            n: Some(Span::new(1, 3).unwrap()),
            a: Some(Span::new(0, 2).unwrap()),
            ..Default::default()
        };
        let cases = cfg.cases().unwrap();
        let mut seen = Vec::new();
        let mut summary = SweepSummary::default();
        run_cases(&cases, &Budget::default(), None, 4, |i, r| {
            seen.push(i);
            summary.add(&r);
        });
        assert_eq!(seen, (0..cases.len()).collect::<Vec<_>>());
        assert_eq!(summary.count(Status::Equal), cases.len());
        assert_eq!(summary.to_json()["summary"]["total"], json!(cases.len()));
    }
}
