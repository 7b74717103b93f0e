//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `--nocapture` to see them.

use std::time::Instant;

use ctidlab::exactnum::{factorial, multinomial, q_multinomial, q_pochhammer};
use ctidlab::identities::{
    ct_brute, ct_interp, cyclic_permutation, forrester, invariance_check, kadell_corollary, kadell_main,
    monomial_dyson_ct, q_aomoto_forrester, q_aomoto_forrester_value, q_morris_forms, rationality_probe, sills,
    subsets, verify, CtValue, Family, IdentityCase, Method, ParamMatrix, Params, ScalarParams, Status,
};
use ctidlab::interpolation::{coeff_hermite_summation, coeff_lagrange, hermite_kappa, NodeMultiset};
use ctidlab::laurent::{LinearFactorProduct, LinearForm};
use ctidlab::sumsets::{bound_check, f0_coefficient, tightness_instance, ClosedForm};
use ctidlab::{BigRat, Budget, QPoly, Ring};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

fn report(id: u32, name: &str, ok: bool, detail: String, start: Instant) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!(
        "criterion {id:02} {name}: {verdict} ({detail}; {:.2}s)",
        start.elapsed().as_secs_f64()
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

fn vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect()
    })
}

fn rat_int(x: BigInt) -> BigRat {
    BigRat::from_integer(x)
}

fn fact(x: u32) -> BigRat {
    rat_int(factorial(x as u64))
}

fn vector_case(family: Family, a: &[u32], method: Method) -> IdentityCase {
    IdentityCase::new(
        family,
        Params {
            a: Some(a.to_vec()),
            ..Default::default()
        },
        method,
    )
}

fn scalar_case(family: Family, s: ScalarParams, method: Method) -> IdentityCase {
    IdentityCase::new(
        family,
        Params {
            n: Some(s.n),
            n0: Some(s.n0),
            m: Some(s.m),
            a: Some(vec![s.a]),
            b: Some(s.b),
            k: Some(s.k),
            ..Default::default()
        },
        method,
    )
}

fn sp(n: usize, n0: usize, m: usize, a: u32, b: u32, k: u32) -> ScalarParams {
    ScalarParams { n, n0, m, a, b, k }
}

fn abk(max: u32) -> Vec<(u32, u32, u32)> {
    vectors(3, max).into_iter().map(|v| (v[0], v[1], v[2])).collect()
}

fn brute(case: &IdentityCase) -> CtValue {
    ct_brute(case, &Budget::default()).expect("brute force within budget").0
}

fn interp(case: &IdentityCase) -> CtValue {
    ct_interp(case, &Budget::default()).expect("interpolation within budget").0
}

/// `prod_{j<n} (a+b+kj)! (kj+k)! / ((a+kj)! (b+kj)! k!)`, with `a` raised by one for `j >= n - m`.
fn aomoto_oracle(n: usize, m: usize, a: u32, b: u32, k: u32) -> BigRat {
    (0..n as u32).fold(BigRat::from_int(1), |acc, j| {
        let c = u32::from(j as usize + m >= n);
        acc * fact(a + b + k * j + c) * fact(k * j + k) / (fact(a + k * j + c) * fact(b + k * j) * fact(k))
    })
}

/// q-analogue of [`aomoto_oracle`], by exact division.
fn q_aomoto_oracle(n: usize, m: usize, a: u32, b: u32, k: u32) -> QPoly {
    let (mut num, mut den) = (QPoly::from_int(1), QPoly::from_int(1));
    for j in 0..n as u32 {
        let c = u32::from(j as usize + m >= n);
        num = num * q_pochhammer(a + b + k * j + c) * q_pochhammer(k * j + k);
        den = den * q_pochhammer(a + k * j + c) * q_pochhammer(b + k * j) * q_pochhammer(k);
    }
    num.exact_div(&den).expect("q-Aomoto product is a polynomial")
}

#[test]
fn criterion_01_dyson() {
    let start = Instant::now();
    let cases: Vec<Vec<u32>> = (1..=4).flat_map(|n| vectors(n, 2)).collect();
    let bad: Vec<_> = cases
        .par_iter()
        .filter(|a| {
            let case = vector_case(Family::Dyson, a, Method::Both);
            let want = CtValue::Rat(rat_int(multinomial(a)));
            brute(&case) != want || interp(&case) != want
        })
        .collect();
    report(1, "dyson", bad.is_empty(), format!("{} cases, failing {bad:?}", cases.len()), start);
}

#[test]
fn criterion_02_q_dyson() {
    let start = Instant::now();
    let cases: Vec<Vec<u32>> = (1..=3).flat_map(|n| vectors(n, 2)).collect();
    let bad: Vec<_> = cases
        .par_iter()
        .filter(|a| brute(&vector_case(Family::QDyson, a, Method::Brute)) != CtValue::Poly(q_multinomial(a).unwrap()))
        .collect();
    report(2, "q_dyson", bad.is_empty(), format!("{} cases, failing {bad:?}", cases.len()), start);
}

#[test]
fn criterion_03_morris() {
    let start = Instant::now();
    let cases: Vec<ScalarParams> = (1..=3)
        .flat_map(|n| abk(2).into_iter().map(move |(a, b, k)| sp(n, n, 0, a, b, k)))
        .collect();
    let bad: Vec<_> = cases
        .par_iter()
        .filter(|s| {
            let case = scalar_case(Family::Morris, **s, Method::Both);
            let want = CtValue::Rat(aomoto_oracle(s.n, 0, s.a, s.b, s.k));
            brute(&case) != want || interp(&case) != want
        })
        .collect();
    report(3, "morris", bad.is_empty(), format!("{} cases, failing {bad:?}", cases.len()), start);
}

#[test]
fn criterion_04_q_morris() {
    let start = Instant::now();
    let cases: Vec<ScalarParams> = (1..=3)
        .flat_map(|n| abk(2).into_iter().map(move |(a, b, k)| sp(n, n, 0, a, b, k)))
        .collect();
    let bad: Vec<_> = cases
        .par_iter()
        .filter(|s| {
            let want = q_aomoto_oracle(s.n, 0, s.a, s.b, s.k);
            let case = scalar_case(Family::QMorris, **s, Method::Brute);
            let forms = q_morris_forms(s.n, s.a, s.b, s.k, &Budget::default()).unwrap();
            brute(&case) != CtValue::Poly(want.clone()) || forms.formula != want || !forms.all_equal()
        })
        .collect();
    report(4, "q_morris", bad.is_empty(), format!("{} cases, both product forms, failing {bad:?}", cases.len()), start);
}

#[test]
fn criterion_05_aomoto() {
    let start = Instant::now();
    let cases: Vec<ScalarParams> = (1..=3)
        .flat_map(|n| (0..=n).flat_map(move |m| abk(2).into_iter().map(move |(a, b, k)| sp(n, n, m, a, b, k))))
        .collect();
    let bad: Vec<_> = cases
        .par_iter()
        .filter(|s| {
            let case = scalar_case(Family::Aomoto, **s, Method::Brute);
            brute(&case) != CtValue::Rat(aomoto_oracle(s.n, s.m, s.a, s.b, s.k))
        })
        .collect();
    report(5, "aomoto", bad.is_empty(), format!("{} cases, failing {bad:?}", cases.len()), start);
}

fn kadell_grid() -> Vec<(Vec<u32>, usize)> {
    (1..=3)
        .flat_map(|n| vectors(n, 2).into_iter().flat_map(move |a| (0..n).map(move |m| (a.clone(), m))))
        .collect()
}

#[test]
fn criterion_06_kadell_main() {
    let start = Instant::now();
    let cases = kadell_grid();
    let bad: Vec<_> = cases
        .par_iter()
        .filter(|(a, m)| {
            let Ok(formula) = kadell_main(a, *m) else {
                return true;
            };
            let case = IdentityCase::new(
                Family::KadellMain,
                Params {
                    a: Some(a.clone()),
                    m: Some(*m),
                    ..Default::default()
                },
                Method::Both,
            );
            let want = CtValue::Poly(formula);
            brute(&case) != want || interp(&case) != want
        })
        .collect();
    report(6, "kadell_main", bad.is_empty(), format!("{} cases, exact division in all, failing {bad:?}", cases.len()), start);
}

/// `CT[prod_{s in M} (1 - x_r/x_s) D(x; a)]` as an alternating sum of monomial constant terms.
fn corollary_via_monomials(a: &[u32], r: usize, set: &[usize]) -> BigRat {
    let n = a.len();
    let mut total = BigRat::from_int(0);
    for size in 0..=set.len() {
        for pick in subsets(set.len(), size) {
            let mut e = vec![0i32; n];
            e[r - 1] = size as i32;
            for &i in &pick {
                e[set[i - 1] - 1] -= 1;
            }
            let v = monomial_dyson_ct(&e, a, &Budget::default()).unwrap().0;
            total = if size % 2 == 0 { total + v } else { total - v };
        }
    }
    total
}

#[test]
fn criterion_07_corollary_and_sills() {
    let start = Instant::now();
    let cases = kadell_grid();
    let checks: Vec<(String, bool)> = cases
        .par_iter()
        .map(|(a, m)| {
            let n = a.len();
            let total: u32 = a.iter().sum();
            let mut ok = true;
            // q = 1 of the main theorem: M = {1..m}, r = n
            let top: Vec<usize> = (1..=*m).collect();
            let at_one = CtValue::Poly(kadell_main(a, *m).unwrap()).at_one();
            ok &= at_one == Some(kadell_corollary(a, n, &top).unwrap());
            let mut sum = BigRat::from_int(0);
            for set in subsets(n, *m) {
                let outside: u32 = (1..=n).filter(|v| !set.contains(v)).map(|v| a[v - 1]).sum();
                for r in (1..=n).filter(|r| !set.contains(r)) {
                    let want = rat_int(multinomial(a)) * BigRat::from_int(1 + total as i64)
                        / BigRat::from_int(1 + outside as i64);
                    ok &= corollary_via_monomials(a, r, &set) == want;
                    ok &= kadell_corollary(a, r, &set).unwrap() == want;
                    sum += want * BigRat::from_int(1 + outside as i64);
                }
            }
            let binom = (0..*m as u32).fold(BigRat::from_int(1), |acc, i| {
                acc * BigRat::from_int((n - 1) as i64 - i as i64) / BigRat::from_int(i as i64 + 1)
            });
            let kadellres = BigRat::from_int(n as i64) * binom * BigRat::from_int(1 + total as i64) * rat_int(multinomial(a));
            ok &= sum == kadellres;
            let sum_case = IdentityCase::new(
                Family::KadellSum,
                Params {
                    a: Some(a.clone()),
                    m: Some(*m),
                    ..Default::default()
                },
                Method::Brute,
            );
            ok &= brute(&sum_case) == CtValue::Rat(kadellres);
            for r in 1..=n {
                for s in (1..=n).filter(|&s| s != r) {
                    let mut e = vec![0i32; n];
                    e[r - 1] += 1;
                    e[s - 1] -= 1;
                    let lhs = monomial_dyson_ct(&e, a, &Budget::default()).unwrap().0;
                    let a_s = a[s - 1] as i64;
                    let want = rat_int(multinomial(a)) * BigRat::from_int(-a_s) / BigRat::from_int(1 + total as i64 - a_s);
                    ok &= lhs == want && sills(a, r, s).unwrap() == want;
                }
            }
            (format!("a={a:?} m={m}"), ok)
        })
        .collect();
    let bad: Vec<_> = checks.iter().filter(|c| !c.1).map(|c| &c.0).collect();
    report(7, "corollary_sills_kadellres", bad.is_empty(), format!("{} cases, failing {bad:?}", checks.len()), start);
}

#[test]
fn criterion_08_aomoto_forrester() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();

    // the theorem in its proven range, and for n0 = 0 with any m
    let proven: Vec<ScalarParams> = (1..=3usize)
        .flat_map(|n| {
            (0..=n).flat_map(move |n0| {
                (0..=n)
                    .filter(move |m| n <= m + n0 || n0 == 0)
                    .flat_map(move |m| abk(2).into_iter().map(move |(a, b, k)| sp(n, n0, m, a, b, k)))
            })
        })
        .collect();
    failures.extend(proven.par_iter().filter_map(|s| {
        let lhs = brute(&scalar_case(Family::AomotoForrester, *s, Method::Brute));
        let mut want = {
            // independent assembly of the product, including the (1-q^{(k+1)j})/(1-q^{k+1}) factor
            let (mut num, mut den) = (QPoly::from_int(1), QPoly::from_int(1));
            for j in 0..s.n as u32 {
                let e = if j as usize > s.n0 { j - s.n0 as u32 } else { 0 };
                let c = u32::from(j as usize + s.m >= s.n);
                let kj = s.k * j + e;
                num = num * q_pochhammer(s.a + s.b + kj + c) * q_pochhammer(kj + s.k);
                den = den * q_pochhammer(s.a + kj + c) * q_pochhammer(s.b + kj) * q_pochhammer(s.k);
            }
            for j in 1..=(s.n - s.n0) {
                num.mul_one_minus_q_pow((s.k as usize + 1) * j);
                den.mul_one_minus_q_pow(s.k as usize + 1);
            }
            num.exact_div(&den).ok()
        };
        let ok = want.take().is_some_and(|w| lhs == CtValue::Poly(w));
        (!ok).then(|| format!("theorem {s:?}"))
    }).collect::<Vec<_>>());

    // n0 = n is the q-Aomoto corollary
    for n in 1..=3usize {
        for m in 0..=n {
            for (a, b, k) in abk(2) {
                if q_aomoto_forrester(&sp(n, n, m, a, b, k)).ok() != Some(q_aomoto_oracle(n, m, a, b, k)) {
                    failures.push(format!("q-aomoto corollary n={n} m={m} a={a} b={b} k={k}"));
                }
            }
        }
    }

    // Baker-Forrester: m = 0 with n0 < n, covered through the overlay with m = n and a - 1,
    // or through n0 = 0 (a q-Morris product with k + 1)
    let mut flagged = 0;
    let mut flagged_equal = 0;
    for n in 1..=3usize {
        for n0 in 0..=n {
            for (a, b, k) in abk(2) {
                let s = sp(n, n0, 0, a, b, k);
                let lhs = brute(&scalar_case(Family::QForrester, s, Method::Brute));
                let formula = q_aomoto_forrester_value(&s).unwrap();
                let covered = n0 == n || n0 == 0 || a >= 1;
                if a >= 1 && q_aomoto_forrester_value(&sp(n, n0, n, a - 1, b, k)).unwrap() != formula {
                    failures.push(format!("overlay shift {s:?}"));
                }
                if covered {
                    if lhs != formula {
                        failures.push(format!("baker-forrester {s:?}"));
                    }
                } else {
                    flagged += 1;
                    flagged_equal += usize::from(lhs == formula);
                }
                // q = 1 gives Forrester's display
                let display = forrester(&s);
                if formula.at_one() != Some(display.clone()) {
                    failures.push(format!("q=1 display {s:?}"));
                }
                let plain = brute(&scalar_case(Family::Forrester, s, Method::Brute));
                if covered && plain != CtValue::Rat(display) {
                    failures.push(format!("forrester {s:?}"));
                }
            }
        }
    }
    report(
        8,
        "aomoto_forrester",
        failures.is_empty(),
        format!(
            "{} theorem cases; uncovered Forrester cases agreeing: {flagged_equal}/{flagged}; failing {failures:?}",
            proven.len()
        ),
        start,
    );
}

#[test]
fn criterion_09_conjecture_probe() {
    let start = Instant::now();
    let cases: Vec<ScalarParams> = (1..=3usize)
        .flat_map(|n| {
            (0..=n).flat_map(move |n0| {
                (0..=n)
                    .filter(move |m| n > m + n0)
                    .flat_map(move |m| abk(1).into_iter().map(move |(a, b, k)| sp(n, n0, m, a, b, k)))
            })
        })
        .collect();
    let reports: Vec<_> = cases
        .par_iter()
        .map(|s| verify(&scalar_case(Family::AomotoForrester, *s, Method::Brute), &Budget::default()))
        .collect();
    for r in &reports {
        println!("{}", r.to_json(false));
    }
    let computed = reports.iter().filter(|r| r.conjecture && r.brute.is_some() && r.rhs.is_some()).count();
    let equal = reports.iter().filter(|r| r.status == Status::Equal).count();
    let unequal = reports.iter().filter(|r| r.status == Status::Unequal).count();
    report(
        9,
        "conjecture_probe",
        computed == reports.len(),
        format!("{} cases outside n <= m + n0 computed; evidence: {equal} equal, {unequal} unequal", reports.len()),
        start,
    );
}

fn random_product(rng: &mut StdRng) -> (LinearFactorProduct<BigRat>, Vec<u32>) {
    let n = rng.gen_range(1..=3);
    let d: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    let count = rng.gen_range(0..=d.iter().sum::<u32>());
    let mut fp = LinearFactorProduct::new(n);
    for _ in 0..count {
        let mut coeffs: Vec<(usize, BigRat)> = Vec::new();
        for v in 0..n {
            if rng.gen_bool(0.7) {
                coeffs.push((v, BigRat::from_int(rng.gen_range(-2..=2))));
            }
        }
        if coeffs.iter().all(|(_, c)| c == &BigRat::from_int(0)) {
            coeffs = vec![(rng.gen_range(0..n), BigRat::from_int(1))];
        }
        fp.push(LinearForm::new(coeffs, BigRat::from_int(rng.gen_range(-3..=3)))).unwrap();
    }
    (fp, d)
}

fn random_sets(rng: &mut StdRng, d: &[u32]) -> Vec<NodeMultiset<BigRat>> {
    d.iter()
        .map(|&di| {
            let mut pool: Vec<i64> = (-4..=6).collect();
            let mut pick = Vec::new();
            for _ in 0..=di {
                pick.push(pool.swap_remove(rng.gen_range(0..pool.len())));
            }
            NodeMultiset::set(pick.into_iter().map(BigRat::from_int)).unwrap()
        })
        .collect()
}

#[test]
fn criterion_10_interpolation_kernel() {
    let start = Instant::now();
    let mut failures = Vec::new();

    // kappa-completeness: every multiset of size <= 7 over five points
    let ground: [i64; 5] = [-2, -1, 0, 1, 3];
    let mut multisets = 0;
    for w in vectors(5, 7) {
        let size: u32 = w.iter().sum();
        if size == 0 || size > 7 {
            continue;
        }
        multisets += 1;
        let c = NodeMultiset::new(ground.iter().zip(&w).map(|(&x, &m)| (BigRat::from_int(x), m))).unwrap();
        let d = size as usize - 1;
        for e in 0..=d {
            // sum over nodes of kappa * (x^e)^{(m)}(c) must pick out the x^d coefficient
            let mut total = BigRat::from_int(0);
            for (x, mult) in c.entries() {
                for m in 0..*mult {
                    if m as usize > e {
                        continue;
                    }
                    let falling = ((e - m as usize + 1)..=e).fold(BigRat::from_int(1), |acc, f| acc * BigRat::from_int(f as i64));
                    let mut pow = BigRat::from_int(1);
                    for _ in 0..(e - m as usize) {
                        pow *= x;
                    }
                    total += hermite_kappa(&c, x, m).unwrap() * falling * pow;
                }
            }
            if total != BigRat::from_int((e == d) as i64) {
                failures.push(format!("kappa {w:?} e={e}"));
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let b = Budget::default();
    for i in 0..200 {
        let (fp, d) = random_product(&mut rng);
        let nodes = random_sets(&mut rng, &d);
        let lag = coeff_lagrange(&fp, &d, &nodes, &b).unwrap().0;
        if coeff_hermite_summation(&fp, &d, &nodes, &b).unwrap().0 != lag {
            failures.push(format!("hermite != lagrange #{i}"));
        }
    }
    for i in 0..200 {
        let (fp, d) = random_product(&mut rng);
        let nodes = random_sets(&mut rng, &d);
        let lag = coeff_lagrange(&fp, &d, &nodes, &b).unwrap().0;
        let exps: Vec<i32> = d.iter().map(|&x| x as i32).collect();
        if fp.expand(&b).unwrap().coefficient(&exps) != lag {
            failures.push(format!("lagrange != expansion #{i}"));
        }
    }
    report(
        10,
        "interpolation_kernel",
        failures.is_empty(),
        format!("{multisets} multisets, 200 + 200 random products, failing {failures:?}"),
        start,
    );
}

#[test]
fn criterion_11_sumsets() {
    let start = Instant::now();
    let mut forms = Vec::new();
    for n in 1..=12usize {
        for k in 1..=13u32 {
            for t in 0..=12u32 {
                forms.push(ClosedForm::HouSun { n, k, t });
                forms.push(ClosedForm::SunYeh { n, k, t });
            }
        }
    }
    for n in 1..=5 {
        forms.extend(vectors(n, 12).into_iter().filter(|d| d.iter().sum::<u32>() <= 12).map(|d| ClosedForm::Anr { d }));
    }
    for n in 1..=12usize {
        let max = (12 / n) as u32;
        forms.extend(
            vectors(n, max)
                .into_iter()
                .filter(|a| n as u32 * a.iter().sum::<u32>() <= 12)
                .map(|a| ClosedForm::Xin { a }),
        );
    }
    forms.retain(|f| f.admissible() && f.data().is_ok_and(|(d, _)| d.iter().sum::<u32>() <= 12));
    let b = Budget::default();
    let mut failures: Vec<String> = forms
        .par_iter()
        .filter_map(|f| {
            let (d, s) = f.data().unwrap();
            let ok = f.value().ok() == f0_coefficient(&d, &s, &b).ok();
            (!ok).then(|| format!("{f:?}"))
        })
        .collect();

    let mut tight = 0;
    for n in 1..=3usize {
        for k in 1..=5usize {
            for t in 0..=2usize {
                if k - 1 < (n - 1) * t {
                    continue;
                }
                tight += 1;
                let (_, r) = bound_check(&tightness_instance(n, k, t, 101).unwrap(), &b).unwrap();
                if !r.achieved || !r.characteristic_ok {
                    failures.push(format!("tightness n={n} k={k} t={t}: {r:?}"));
                }
            }
        }
    }

    let xin = ClosedForm::Xin { a: vec![1, 1] };
    let (d, s) = xin.data().unwrap();
    if xin.value().ok() != Some(BigInt::from(-2)) || f0_coefficient(&d, &s, &b).ok() != Some(BigInt::from(-2)) {
        failures.push("xin a=(1,1)".into());
    }
    report(
        11,
        "sumsets",
        failures.is_empty(),
        format!("{} closed-form tuples, {tight} tightness instances, failing {failures:?}", forms.len()),
        start,
    );
}

#[test]
fn criterion_12_rationality() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for (r, s) in [([1, 0], [0, 1]), ([2, 0], [0, 2])] {
        match rationality_probe(&r, &s, &[1, 2, 3, 4, 5], &Budget::default()) {
            Ok(rep) => {
                ok &= rep.confirmed;
                lines.push(format!("r={r:?} s={s:?} bounds={:?} confirmed={}", rep.bounds, rep.confirmed));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("r={r:?} s={s:?} {e}"));
            }
        }
    }
    report(12, "rationality", ok, lines.join("; "), start);
}

#[test]
fn criterion_13_invariances() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0013);
    let b = Budget::default();
    let mut failures = Vec::new();
    for i in 0..50 {
        let n = rng.gen_range(1..=3usize);
        let beta: Vec<Vec<u32>> = (0..=n)
            .map(|r| (0..=n).map(|c| if r == c { 0 } else { rng.gen_range(0..=2) }).collect())
            .collect();
        let m = ParamMatrix::new(beta).unwrap();
        let mut perm: Vec<usize> = (0..=n).collect();
        for j in (1..perm.len()).rev() {
            perm.swap(j, rng.gen_range(0..=j));
        }
        if !invariance_check(&m, &perm, false, &b).unwrap() {
            failures.push(format!("plain #{i} {m:?} {perm:?}"));
        }
        let cyc = cyclic_permutation(n, rng.gen_range(1..=n));
        if !invariance_check(&m, &cyc, true, &b).unwrap() {
            failures.push(format!("cyclic #{i} {m:?} {cyc:?}"));
        }
    }
    report(13, "invariances", failures.is_empty(), format!("50 random matrices, failing {failures:?}"), start);
}
