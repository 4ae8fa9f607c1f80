//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL` line (written past libtest's capture).

use std::io::Write;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use obdd_width::constructions::{
    build_det_eqs, build_det_notpal, build_nobdd_noteqs_fingerprint, build_nobdd_noto_fingerprint,
    build_quantum_partialmod, counter, noteqs_basis, primes_for_fingerprint,
};
use obdd_width::markov::{classify_states, period_lcm_certificate};
use obdd_width::oracles::{
    min_width_over_orders, partial_min_width_exact, stable_exhaustive_search, subfunction_widths, OracleCaps,
};
use obdd_width::report::{run_report, ReportParams, ReportTask, RowVerdict};
use obdd_width::{
    AcceptanceMode, FunctionName, FunctionSpec, LevelTransition, ObddProgram, Outcome, ProgramKind,
    Transition, TruthTable, VariableOrder,
};

type Check = Result<String, String>;

fn criterion(id: u32, title: &str, budget: Duration, body: impl FnOnce() -> Check) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let result = match result {
        Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
        other => other,
    };
    let (status, detail) = match &result {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    let line = format!("\ncriterion {id:>2}: {status} [{elapsed:.2?}] {title}: {detail}\n");
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    if let Err(e) = result {
        panic!("criterion {id} failed: {e}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(name: FunctionName, k: Option<usize>, n: usize) -> FunctionSpec {
    FunctionSpec::new(name, k, n).unwrap()
}

fn nondet() -> AcceptanceMode {
    AcceptanceMode::nondeterministic(0.0).unwrap()
}

fn wide_caps() -> OracleCaps {
    OracleCaps {
        max_classes: 64,
        ..OracleCaps::default()
    }
}

#[test]
fn criterion_01_quantum_exactness() {
    criterion(
        1,
        "quantum PartialMOD width 2, exact to 1e-9",
        Duration::from_secs(1),
        || {
            let mut programs = 0;
            for k in 0..=3usize {
                let m = 2usize << k;
                for n in m..=64 {
                    let p = build_quantum_partialmod(k, n).map_err(|e| e.to_string())?;
                    ensure(p.width().max == 2, || {
                        format!("k={k} n={n}: width {}", p.width().max)
                    })?;
                    // Rotations commute, so acceptance depends only on the one-count.
                    for c in 0..=n {
                        let input: Vec<bool> = (0..n).map(|i| i < c).collect();
                        let prob = p.simulate(&input).map_err(|e| e.to_string())?;
                        let target = match c % m {
                            0 => 1.0,
                            r if r == m / 2 => 0.0,
                            _ => continue,
                        };
                        ensure((prob - target).abs() < 1e-9, || {
                            format!("k={k} n={n} count {c}: probability {prob}, expected {target}")
                        })?;
                    }
                    programs += 1;
                }
            }
            Ok(format!(
                "{programs} programs checked on every defined one-count class"
            ))
        },
    );
}

#[test]
fn criterion_02_deterministic_lower_bound() {
    criterion(
        2,
        "exact deterministic width of PartialMOD is 2^(k+1)",
        Duration::from_secs(300),
        || {
            let caps = OracleCaps::default();
            let mut seen = Vec::new();
            let mut wrong = Vec::new();
            for (k, n) in [(0usize, 2usize), (0, 4), (1, 6), (1, 8)] {
                let f = spec(FunctionName::PartialMod, Some(k), n);
                let m = partial_min_width_exact(&f, &VariableOrder::natural(n), &caps)
                    .map_err(|e| e.to_string())?;
                let best = min_width_over_orders(&f, &caps)
                    .map_err(|e| e.to_string())?
                    .best
                    .max;
                seen.push(format!("({k},{n}): natural {} / all orders {best}", m.report.max));
                if m.report.max != 2 << k || best != 2 << k {
                    let w = &m.witness;
                    let ok = w.computes(&f, AcceptanceMode::Deterministic).unwrap().is_yes();
                    wrong.push(format!(
                        "({k},{n}) expected {}, width-{} witness program computes it: {ok}",
                        2 << k,
                        w.width().max
                    ));
                }
            }
            let detail = seen.join(", ");
            if wrong.is_empty() {
                Ok(detail)
            } else {
                Err(format!("{detail}; mismatch at {}", wrong.join(", ")))
            }
        },
    );
}

#[test]
fn criterion_03_nondeterministic_stable_lower_bound() {
    criterion(
        3,
        "no stable NOBDD of width <= 3 for PartialMOD^1_6",
        Duration::from_secs(600),
        || {
            let caps = OracleCaps::default();
            let f = spec(FunctionName::PartialMod, Some(1), 6);
            let mut searched = 0;
            for w in 1..=3 {
                let s = stable_exhaustive_search(&f, w, ProgramKind::Nondeterministic, &caps)
                    .map_err(|e| e.to_string())?;
                ensure(s.found.is_none(), || format!("found a width-{w} stable NOBDD"))?;
                searched += s.space;
            }
            let s = stable_exhaustive_search(&f, 4, ProgramKind::Deterministic, &caps)
                .map_err(|e| e.to_string())?;
            let p = s.found.ok_or("no deterministic program at width 4")?;
            ensure(
                p.computes(&f, AcceptanceMode::Deterministic).unwrap().is_yes(),
                || "found program is wrong".into(),
            )?;
            let c = counter(4, 6, [0]).unwrap();
            ensure(
                c.computes(&f, AcceptanceMode::Deterministic).unwrap().is_yes(),
                || "counter is wrong".into(),
            )?;
            Ok(format!(
                "{searched} nondeterministic structures ruled out; width-4 program found"
            ))
        },
    );
}

#[test]
fn criterion_04_markov_certificate() {
    criterion(
        4,
        "period-lcm certificate on counter chains",
        Duration::from_secs(1),
        || {
            for k in 0..=3u32 {
                let m = 2usize << k;
                let p = counter(m, 2 * m, [0]).unwrap().lift_to_probabilistic().unwrap();
                let dec =
                    classify_states(&p.stable_symbol_chain(true).unwrap()).map_err(|e| e.to_string())?;
                ensure(dec.transient.is_empty() && dec.classes.len() == 1, || {
                    format!("k={k}: {dec:?}")
                })?;
                ensure(dec.classes[0].period == m, || {
                    format!("k={k}: period {}", dec.classes[0].period)
                })?;
                let cert = period_lcm_certificate(&dec, k);
                ensure(cert.passed(), || format!("k={k}: {cert}"))?;

                let q = counter(m - 1, 2 * m, [0])
                    .unwrap()
                    .lift_to_probabilistic()
                    .unwrap();
                let dec =
                    classify_states(&q.stable_symbol_chain(true).unwrap()).map_err(|e| e.to_string())?;
                let cert = period_lcm_certificate(&dec, k);
                ensure(!cert.passed(), || {
                    format!("k={k}: width {} counter passed", m - 1)
                })?;
            }
            Ok("k = 0..3: width 2^(k+1) passes, width 2^(k+1) - 1 fails".into())
        },
    );
}

/// Random width-2 nondeterministic level.
fn random_relation(rng: &mut StdRng, from: usize, to: usize) -> Transition {
    let targets = (0..from)
        .map(|_| (0..to).filter(|_| rng.random_bool(0.5)).collect())
        .collect();
    Transition::Relation { targets, width: to }
}

#[test]
fn criterion_05_noto_bounds() {
    criterion(
        5,
        "NotO needs width n/2 + 1; width-2 NOBDDs ruled out at n = 8",
        Duration::from_secs(300),
        || {
            let caps = OracleCaps::default();
            for n in (2..=16).step_by(2) {
                let f = spec(FunctionName::NotO, None, n);
                let w = subfunction_widths(&f, &VariableOrder::natural(n), &caps)
                    .map_err(|e| e.to_string())?
                    .max;
                ensure(w == n / 2 + 1, || format!("n={n}: natural {w}"))?;
                if n <= 8 {
                    let best = min_width_over_orders(&f, &caps)
                        .map_err(|e| e.to_string())?
                        .best
                        .max;
                    ensure(best == n / 2 + 1, || format!("n={n}: over orders {best}"))?;
                }
            }
            // Any width-2 NOBDD determinizes into at most 2^2 = 4 < 5 nodes per
            // level, so none computes NotO_8; cross-check the subset construction.
            let n = 8;
            let f = spec(FunctionName::NotO, None, n);
            let mut rng = StdRng::seed_from_u64(8);
            for _ in 0..200 {
                let levels = (0..n)
                    .map(|j| {
                        let from = if j == 0 { 1 } else { 2 };
                        LevelTransition::new(
                            random_relation(&mut rng, from, 2),
                            random_relation(&mut rng, from, 2),
                        )
                    })
                    .collect();
                let accept: Vec<usize> = (0..2).filter(|_| rng.random_bool(0.5)).collect();
                let p = ObddProgram::new(
                    ProgramKind::Nondeterministic,
                    VariableOrder::natural(n),
                    levels,
                    0,
                    accept,
                    false,
                )
                .map_err(|e| e.to_string())?;
                let d = p.determinize(16).map_err(|e| e.to_string())?;
                ensure(d.width().max <= 4, || {
                    format!("determinized width {}", d.width().max)
                })?;
                for x in f.inputs() {
                    let a = p.simulate(&x).unwrap() > 0.0;
                    let b = d.simulate(&x).unwrap() == 1.0;
                    ensure(a == b, || "subset construction disagrees".into())?;
                }
                ensure(!p.computes(&f, nondet()).unwrap().is_yes(), || {
                    "width-2 NOBDD computes NotO_8".into()
                })?;
            }
            let s = stable_exhaustive_search(&f, 2, ProgramKind::Nondeterministic, &caps)
                .map_err(|e| e.to_string())?;
            ensure(s.found.is_none(), || "stable width-2 NOBDD found".into())?;
            Ok("natural n/2+1 for even n <= 16, all orders for n <= 8, 200 random + all stable width-2 NOBDDs fail".into())
        },
    );
}

#[test]
fn criterion_06_fingerprints() {
    criterion(
        6,
        "fingerprint NOBDDs for NotO^k and NotEQS^4_8",
        Duration::from_secs(60),
        || {
            let mut checked = 0;
            for k in [4usize, 6] {
                let sum: u64 = primes_for_fingerprint(k as u64, false)
                    .unwrap()
                    .primes
                    .iter()
                    .sum();
                for n in k..=12 {
                    let p = build_nobdd_noto_fingerprint(k, n).map_err(|e| e.to_string())?;
                    let w = p.width().max_excluding_source() as u64;
                    ensure(w <= sum, || {
                        format!("k={k} n={n}: width {w} > sum of primes {sum}")
                    })?;
                    let f = spec(FunctionName::NotOk, Some(k), n);
                    ensure(p.computes(&f, nondet()).unwrap().is_yes(), || {
                        format!("NotO^{k}_{n} wrong")
                    })?;
                    checked += 1;
                }
            }
            let basis = noteqs_basis(4).unwrap();
            let bound: u64 = basis
                .primes
                .iter()
                .map(|p| p * (4 / 4 + 1) * (4 / 4 + 1) * 2)
                .sum();
            let p = build_nobdd_noteqs_fingerprint(4, 8).map_err(|e| e.to_string())?;
            let w = p.width().max_excluding_source() as u64;
            ensure(w <= bound, || format!("NotEQS width {w} > {bound}"))?;
            let f = spec(FunctionName::NotEqs, Some(4), 8);
            ensure(p.computes(&f, nondet()).unwrap().is_yes(), || {
                "NotEQS^4_8 wrong".into()
            })?;
            Ok(format!(
                "{checked} NotO^k programs; NotEQS^4_8 width {w} <= {bound}"
            ))
        },
    );
}

#[test]
fn criterion_07_eqs() {
    criterion(
        7,
        "EQS construction widths and lower bound",
        Duration::from_secs(60),
        || {
            for (k, n, width) in [(4usize, 4usize, 11usize), (4, 10, 11), (8, 8, 27), (8, 12, 27)] {
                let w = build_det_eqs(k, n).map_err(|e| e.to_string())?.width().max;
                ensure(w == width, || format!("k={k} n={n}: width {w}, expected {width}"))?;
            }
            let f = spec(FunctionName::Eqs, Some(4), 8);
            let exact = subfunction_widths(&f, &VariableOrder::natural(8), &OracleCaps::default())
                .map_err(|e| e.to_string())?
                .max;
            ensure(exact == 4 && exact >= 2, || format!("EQS^4_8 exact {exact}"))?;
            for n in 4..=10 {
                let p = build_det_eqs(4, n).unwrap();
                let f = spec(FunctionName::Eqs, Some(4), n);
                ensure(
                    p.computes(&f, AcceptanceMode::Deterministic).unwrap().is_yes(),
                    || format!("EQS^4_{n} wrong"),
                )?;
            }
            Ok(format!("widths 11 and 27; EQS^4_8 exact {exact} >= 2"))
        },
    );
}

#[test]
fn criterion_08_notpal() {
    criterion(8, "NotPAL in width 3", Duration::from_secs(30), || {
        for n in 1..=14 {
            let p = build_det_notpal(n).map_err(|e| e.to_string())?;
            let w = p.width().max;
            // NotPAL_1 is constant 0; its program has no mismatch node.
            let expected = if n == 1 { 2 } else { 3 };
            ensure(w == expected, || format!("n={n}: width {w}"))?;
            let f = spec(FunctionName::NotPal, None, n);
            ensure(
                p.computes(&f, AcceptanceMode::Deterministic).unwrap().is_yes(),
                || format!("n={n} wrong"),
            )?;
        }
        Ok("width 3 and correct for 2 <= n <= 14 (width 2 at n = 1)".into())
    });
}

#[test]
fn criterion_09_hierarchies() {
    criterion(9, "hierarchy reports", Duration::from_secs(300), || {
        for d in 2..=8 {
            let params = ReportParams {
                k: None,
                n: Some(2 * d),
                d: Some(d),
                caps: OracleCaps::default(),
            };
            let r = run_report(ReportTask::HierarchySmall, &params).map_err(|e| e.to_string())?;
            let top = &r.rows[0];
            ensure(
                top.constructed_width == Some(d) && top.oracle_value == Some(d),
                || format!("d={d}: {top:?}"),
            )?;
            ensure(r.holds(), || format!("d={d}:\n{}", r.to_markdown()))?;
        }
        let params = ReportParams {
            k: None,
            n: Some(12),
            d: Some(11),
            caps: OracleCaps::default(),
        };
        let r = run_report(ReportTask::HierarchyLarge, &params).map_err(|e| e.to_string())?;
        ensure(r.rows.iter().all(|row| row.k == Some(4)), || "k is not 4".into())?;
        ensure(r.rows[0].constructed_width.is_some_and(|w| w <= 11), || {
            format!("{:?}", r.rows[0])
        })?;
        ensure(r.rows[1].oracle_value == Some(2), || format!("{:?}", r.rows[1]))?;
        ensure(r.rows.iter().all(|row| row.verdict == RowVerdict::Holds), || {
            r.to_markdown()
        })?;
        Ok(format!(
            "MOD^d exact d for d = 2..8; EQS^4_12 width {} <= 11, bound 2 > 0",
            r.rows[0].constructed_width.unwrap()
        ))
    });
}

#[test]
fn criterion_10_oracle_consistency() {
    criterion(
        10,
        "oracle and subset-construction consistency",
        Duration::from_secs(600),
        || {
            let mut rng = StdRng::seed_from_u64(10);
            let caps = wide_caps();
            for i in 0..500 {
                let n = rng.random_range(1..=8);
                let values = (0..1usize << n)
                    .map(|_| Outcome::from_bool(rng.random_bool(0.5)))
                    .collect();
                let f = FunctionSpec::from_table(TruthTable::new(n, values).unwrap());
                let order = VariableOrder::natural(n);
                let a = partial_min_width_exact(&f, &order, &caps)
                    .map_err(|e| e.to_string())?
                    .report;
                let b = subfunction_widths(&f, &order, &caps).map_err(|e| e.to_string())?;
                ensure(a.per_level == b.per_level, || {
                    format!("table {i} (n={n}): {a} vs {b}")
                })?;
            }
            let mut programs = Vec::new();
            for k in [4usize, 6] {
                for n in k..=12 {
                    programs.push(build_nobdd_noto_fingerprint(k, n).unwrap());
                }
            }
            for n in 4..=12 {
                programs.push(build_nobdd_noteqs_fingerprint(4, n).unwrap());
            }
            for p in &programs {
                let d = p.determinize(1 << 16).map_err(|e| e.to_string())?;
                for mask in 0..1u64 << p.n() {
                    let x: Vec<bool> = (0..p.n()).map(|i| mask >> i & 1 == 1).collect();
                    let a = p.simulate(&x).unwrap() > 0.0;
                    let b = d.simulate(&x).unwrap() == 1.0;
                    ensure(a == b, || format!("n={}: disagreement on mask {mask}", p.n()))?;
                }
            }
            Ok(format!(
                "500 random tables agree; {} NOBDDs match their subset construction",
                programs.len()
            ))
        },
    );
}
