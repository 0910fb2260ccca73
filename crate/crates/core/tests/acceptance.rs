//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! with the measured runtime against its pinned limit.
//!
//! Tests take a shared lock so that timings are not inflated by running
//! side by side.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use drd_core::enumeration::{
    extremal_report, feasible_classes, survey, within_class_report, Population,
};
use drd_core::families::{
    closed_form_p, closed_form_p33, closed_form_s, closed_form_s33, make_cycle, make_p, make_s,
};
use drd_core::resistance::{
    cycle_closed_forms, cycle_pair_resistance, degree_resistance, invariants, resistance_matrix,
};
use drd_core::verify::{verify_campaign, LemmaConfig, DEFAULT_SEED};
use drd_core::Rational;

static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(id: u32, title: &str, limit: Duration, body: impl FnOnce() -> Result<String, String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let in_time = elapsed < limit;
    let (ok, detail) = match &result {
        Ok(d) => (in_time, d.clone()),
        Err(d) => (false, d.clone()),
    };
    println!(
        "criterion {id}: {} {title} [{detail}] {:.2?} (limit {:?})",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        limit
    );
    assert!(result.is_ok(), "criterion {id} failed: {detail}");
    assert!(
        in_time,
        "criterion {id} took {elapsed:.2?}, limit {limit:?}"
    );
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn criterion_01_cycle_closed_forms() {
    criterion(
        1,
        "cycle closed forms, k = 3..30",
        Duration::from_secs(5),
        || {
            for k in 3..=30 {
                let g = make_cycle(k).unwrap();
                let inv = invariants(&g).unwrap();
                let res = resistance_matrix(&g).unwrap();
                let kk = Rational::from(k);
                let cube = &kk * &kk * &kk;
                let sq = &kk * &kk;
                let one = Rational::one();
                // independent of cycle_closed_forms: the values are written out here
                let kf = (&cube - &kk) / Rational::from(12);
                let dr = (&cube - &kk) / Rational::from(3);
                let kf_v = (&sq - &one) / Rational::from(6);
                let d_v = (&sq - &one) / Rational::from(3);
                check(inv.kirchhoff == kf && inv.degree_resistance == dr, || {
                    format!("C_{k} totals")
                })?;
                check(
                    inv.per_vertex.iter().all(|s| s.kf == kf_v && s.dv == d_v),
                    || format!("C_{k} per vertex"),
                )?;
                let forms = cycle_closed_forms(k).unwrap();
                check(
                    forms.kf == kf && forms.dr == dr && forms.kf_v == kf_v && forms.d_v == d_v,
                    || format!("closed forms for C_{k}"),
                )?;
                for i in 1..=k {
                    for j in i + 1..=k {
                        let expect = Rational::new(((j - i) * (k + i - j)) as i64, k as i64);
                        check(*res.get(i - 1, j - 1) == expect, || {
                            format!("r on C_{k} at ({i},{j})")
                        })?;
                        check(cycle_pair_resistance(k, i, j).unwrap() == expect, || {
                            format!("pair formula C_{k}")
                        })?;
                    }
                }
            }
            Ok("28 cycles".into())
        },
    );
}

/// Runs named campaigns, each with a minimum number of counted instances:
/// strict comparisons for surgeries, checks for identities.
fn campaign(id: u32, title: &str, limit: Duration, names: &[(&str, usize)]) {
    criterion(id, title, limit, || {
        let config = LemmaConfig::default();
        let mut parts = Vec::new();
        for &(name, min) in names {
            let r = verify_campaign(name, &config, DEFAULT_SEED).expect("campaign exists");
            check(r.passed, || format!("{name}: {:?}", r.counterexample))?;
            let counted = if r.strict > 0 { r.strict } else { r.checked };
            check(counted >= min, || {
                format!("{name}: only {counted} instances")
            })?;
            parts.push(format!("{name} {}/{}/{}", r.checked, r.strict, r.equal));
        }
        Ok(parts.join(", "))
    });
}

#[test]
fn criterion_02_cut_vertex_additivity() {
    campaign(
        2,
        "cut-vertex additivity",
        Duration::from_secs(10),
        &[("cut-vertex-additivity", 100)],
    );
}

#[test]
fn criterion_03_composition() {
    campaign(
        3,
        "composition at an identified vertex",
        Duration::from_secs(30),
        &[("composition", 100)],
    );
}

#[test]
fn criterion_04_s_family_closed_form() {
    criterion(
        4,
        "S-family closed form, p <= q <= 6, n <= 12",
        Duration::from_secs(30),
        || {
            let mut count = 0;
            for p in 3..=6 {
                for q in p..=6 {
                    for n in p + q - 1..=12 {
                        let direct = degree_resistance(&make_s(n, p, q).unwrap()).unwrap();
                        let form = closed_form_s(n, p, q).unwrap();
                        check(form == direct, || {
                            format!("S({n},{p},{q}): {form} vs {direct}")
                        })?;
                        count += 1;
                    }
                }
            }
            check(
                closed_form_s(5, 3, 3).unwrap() == Rational::new(128, 3),
                || "S(5,3,3)".into(),
            )?;
            check(
                closed_form_s(6, 3, 3).unwrap() == Rational::new(214, 3),
                || "S(6,3,3)".into(),
            )?;
            Ok(format!("{count} members"))
        },
    );
}

#[test]
fn criterion_05_p_family_closed_form() {
    criterion(
        5,
        "P-family closed form and substituted-form mismatch",
        Duration::from_secs(30),
        || {
            let mut count = 0;
            for p in 3..=6 {
                for q in p..=6 {
                    for n in p + q - 1..=12 {
                        let direct = degree_resistance(&make_p(n, p, q).unwrap()).unwrap();
                        let form = closed_form_p(n, p, q).unwrap();
                        check(form.raw == direct, || {
                            format!("P({n},{p},{q}): {} vs {direct}", form.raw)
                        })?;
                        count += 1;
                    }
                }
            }
            let at = closed_form_p(8, 3, 3).unwrap();
            check(at.raw == Rational::new(848, 3), || {
                format!("raw(8,3,3) = {}", at.raw)
            })?;
            check(at.printed_substituted == Rational::new(2180, 3), || {
                format!("substituted(8,3,3) = {}", at.printed_substituted)
            })?;
            check(at.printed_substituted != at.raw, || {
                "substituted form agrees".into()
            })?;
            Ok(format!("{count} members; substituted 2180/3 vs raw 848/3"))
        },
    );
}

#[test]
fn criterion_06_extremal_formulas() {
    criterion(
        6,
        "S_n^{3,3} and P_n^{3,3} formulas, n = 5..12",
        Duration::from_secs(5),
        || {
            for n in 5..=12 {
                let s = degree_resistance(&make_s(n, 3, 3).unwrap()).unwrap();
                let p = degree_resistance(&make_p(n, 3, 3).unwrap()).unwrap();
                let nn = Rational::from(n);
                let s_form = Rational::from(3) * &nn * &nn
                    - Rational::new(13, 3) * &nn
                    - Rational::new(32, 3);
                let p_form = Rational::new(2, 3) * &nn * &nn * &nn + &nn * &nn
                    - Rational::from(19) * &nn
                    + Rational::new(88, 3);
                check(s == s_form && s == closed_form_s33(n).unwrap(), || {
                    format!("S at n = {n}: {s}")
                })?;
                check(p == p_form && p == closed_form_p33(n).unwrap(), || {
                    format!("P at n = {n}: {p}")
                })?;
            }
            check(closed_form_s33(5).unwrap() == Rational::new(128, 3), || {
                "S33(5)".into()
            })?;
            check(closed_form_p33(5).unwrap() == Rational::new(128, 3), || {
                "P33(5)".into()
            })?;
            check(closed_form_s33(7).unwrap() == Rational::from(106), || {
                "S33(7)".into()
            })?;
            check(closed_form_p33(7).unwrap() == Rational::from(174), || {
                "P33(7)".into()
            })?;
            Ok("n = 5..12".into())
        },
    );
}

#[test]
fn criterion_07_within_class_extremality() {
    criterion(
        7,
        "within-class extremes, n = 6, 7",
        Duration::from_secs(120),
        || {
            let mut parts = Vec::new();
            for n in [6, 7] {
                let s = survey(n, Population::TwoCyclesOnly, 1, false).unwrap();
                for (p, q) in feasible_classes(n) {
                    let r = within_class_report(&s, p, q).unwrap();
                    check(r.min_unique_s, || {
                        format!(
                            "n={n} ({p},{q}) min {} over {} classes",
                            r.min_value, r.class_count
                        )
                    })?;
                    check(r.max_unique_p, || {
                        format!(
                            "n={n} ({p},{q}) max {} over {} classes",
                            r.max_value, r.class_count
                        )
                    })?;
                    check(r.min_value == r.s_value && r.max_value == r.p_value, || {
                        format!("n={n} ({p},{q}) values")
                    })?;
                    parts.push(format!("{n}:({p},{q})x{}", r.class_count));
                }
            }
            Ok(parts.join(" "))
        },
    );
}

fn global_check(n: usize, jobs: usize) -> Result<String, String> {
    let s = survey(n, Population::TwoCyclesOnly, jobs, false).map_err(|e| e.to_string())?;
    let r = extremal_report(&s);
    check(
        r.agrees_min && r.min_value == closed_form_s33(n).unwrap(),
        || format!("n={n} min {}", r.min_value),
    )?;
    check(
        r.agrees_max && r.max_value == closed_form_p33(n).unwrap(),
        || format!("n={n} max {}", r.max_value),
    )?;
    check(r.min_unique_s33, || {
        format!("n={n}: {} min attainers", r.min_attainers.len())
    })?;
    check(r.max_unique_p33, || {
        format!("n={n}: {} max attainers", r.max_attainers.len())
    })?;
    Ok(format!(
        "n={n} jobs={jobs}: {} labeled, {} classes, min {}, max {}",
        r.count_labeled, r.count_iso_classes, r.min_value, r.max_value
    ))
}

#[test]
fn criterion_08_global_extremality() {
    criterion(
        8,
        "global extremes, n = 6, 7",
        Duration::from_secs(120),
        || Ok([global_check(6, 1)?, global_check(7, 1)?].join("; ")),
    );
    criterion(
        8,
        "global extremes, n = 8, one worker",
        Duration::from_secs(600),
        || global_check(8, 1),
    );
    criterion(
        8,
        "global extremes, n = 8, four workers",
        Duration::from_secs(180),
        || global_check(8, 4),
    );
}

#[test]
fn criterion_09_surgery_campaigns() {
    campaign(
        9,
        "surgery inequalities",
        Duration::from_secs(120),
        &[
            ("sigma-star-move", 200),
            ("pendant-relocation", 200),
            ("pi-star-to-path", 200),
            ("path-reattachment", 200),
            ("path-contraction", 200),
            ("path-splice", 200),
            ("cycle-shrink-shared", 200),
            ("cycle-shrink-joined", 200),
        ],
    );
}

#[test]
fn criterion_10_solver_sanity() {
    campaign(
        10,
        "Foster identity, Rayleigh monotonicity, tree degeneration",
        Duration::from_secs(30),
        &[
            ("foster-identity", 200),
            ("rayleigh-monotonicity", 200),
            ("tree-degeneration", 100),
        ],
    );
}
