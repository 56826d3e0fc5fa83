//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! measured time against a pinned limit; the process fails if any does.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use aqecc::css::{derive, CssPair, Status};
use aqecc::families::{bch, character_aqecc, character_code, grm_aqecc, qr_aqecc, BchSpec};
use aqecc::galois::BasisKind;
use aqecc::table::{rows, Caps, Family, TableRow};
use aqecc::verify::{run, soundness_failures, Suite, SuiteReport, VerifyOptions};
use aqecc::Budget;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite(s: Suite) -> Result<SuiteReport, String> {
    let report = run(s, &VerifyOptions::default()).pop().expect("one report");
    ensure(report.passed, || {
        format!(
            "{s}: {} failures, first: {:?}",
            report.failures.len(),
            report.failures.first()
        )
    })?;
    Ok(report)
}

fn hamming() -> (aqecc::lincode::LinearCode, BchSpec) {
    bch(2, 7, 1, 3, &Budget::default()).expect("binary Hamming code")
}

fn steane_baseline() -> Outcome {
    let (h, _) = hamming();
    let dual = h.dual();
    let b = Budget::default();
    ensure(
        (
            h.n(),
            h.k(),
            h.min_distance(&b).map_err(|e| e.to_string())?.value,
        ) == (7, 4, 3),
        || format!("Hamming code is {h}"),
    )?;
    ensure(
        dual.min_distance(&b).map_err(|e| e.to_string())?.value == 4,
        || "dual distance".into(),
    )?;
    let pair = CssPair::new(h, dual).map_err(|e| e.to_string())?;
    let p = derive(&pair, &b).map_err(|e| e.to_string())?;
    ensure(
        p.to_string() == "[[7,1,3/3]]_2" && p.pure == Some(true),
        || format!("got {p}, pure {:?}", p.pure),
    )?;
    Ok(format!("{p}, pure"))
}

fn checks(r: &SuiteReport) -> String {
    format!("{} checks, {} skipped", r.checks, r.skipped)
}

fn dual_expansion() -> Outcome {
    let r = suite(Suite::DualExpansion)?;
    // 75 codes, each checked as canonical generators and as codeword sets
    ensure(r.checks == 150 && r.skipped == 0, || checks(&r))?;
    Ok(format!("75 codes, {}", checks(&r)))
}

fn exact_claim(
    label: &str,
    d: aqecc::css::Derivation,
    want: (u32, usize, usize),
    min: (usize, usize),
) -> Outcome {
    let c = &d.claim;
    let o = c
        .oracle
        .as_ref()
        .ok_or_else(|| format!("{label}: no oracle ({:?})", c.notes))?;
    ensure(c.status == Status::VerifiedExact, || {
        format!("{label}: status {} {:?}", c.status, c.notes)
    })?;
    ensure((o.q, o.n, o.k) == want, || {
        format!("{label}: oracle code {o}")
    })?;
    ensure(
        o.dz.exact && o.dx.exact && o.dz.value >= min.0 && o.dx.value >= min.1,
        || format!("{label}: {o}"),
    )?;
    Ok(format!("{o}"))
}

fn qr_expanded_five_over_four() -> Outcome {
    let d = qr_aqecc(5, 4, true, BasisKind::Polynomial, &Budget::default())
        .map_err(|e| e.to_string())?;
    exact_claim("qr(5, 4)", d, (2, 10, 2), (3, 3))
}

fn qr_seven_over_two() -> Outcome {
    let d = qr_aqecc(7, 2, false, BasisKind::Polynomial, &Budget::default())
        .map_err(|e| e.to_string())?;
    exact_claim("qr(7, 2)", d, (2, 7, 1), (3, 3))
}

fn grm_formulas() -> Outcome {
    let r = suite(Suite::Grm)?;
    Ok(checks(&r))
}

fn grm_instance() -> Outcome {
    let d = grm_aqecc(2, 3, 1, 2, BasisKind::Polynomial, &Budget::default())
        .map_err(|e| e.to_string())?;
    exact_claim("grm(2, 3, 1, 2)", d, (2, 8, 3), (2, 4))
}

fn character_instance() -> Outcome {
    let b = Budget::default();
    for r in 0..=1usize {
        let c = character_code(3, r, 2, &b).map_err(|e| e.to_string())?;
        let d = c.min_distance(&b).map_err(|e| e.to_string())?.value;
        let want = (4, if r == 0 { 1 } else { 3 }, 1 << (2 - r));
        ensure((c.n(), c.k(), d) == want, || {
            format!("C_3({r}, 2) is [{},{},{d}]", c.n(), c.k())
        })?;
    }
    let d = character_aqecc(3, 2, 0, 1, BasisKind::Polynomial, &b).map_err(|e| e.to_string())?;
    exact_claim("character(3, 2, 0, 1)", d, (3, 4, 2), (2, 2))
}

fn bch_bounds() -> Outcome {
    let r = suite(Suite::Bch)?;
    ensure(r.skipped == 0, || {
        format!("{} BCH distances exceeded the budget", r.skipped)
    })?;
    Ok(format!("{}, (3,26) included", checks(&r)))
}

fn combinator_laws() -> Outcome {
    let r = suite(Suite::Combinators)?;
    // four laws per instance
    ensure(r.checks >= 400 && r.skipped == 0, || checks(&r))?;
    Ok(format!("{} instances, {}", r.checks / 4, checks(&r)))
}

fn soundness() -> Outcome {
    let reports = run(Suite::All, &VerifyOptions::default());
    let claims: Vec<_> = reports
        .iter()
        .flat_map(|r| r.claims.iter().cloned())
        .collect();
    let bad = soundness_failures(&claims);
    ensure(bad.is_empty(), || {
        format!("{} unsound claims, first: {}", bad.len(), bad[0])
    })?;
    let exact = claims
        .iter()
        .filter(|c| c.status == Status::VerifiedExact)
        .count();
    ensure(exact > 0, || "no verified-exact claims".into())?;
    let failing: Vec<_> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.suite.to_string())
        .collect();
    ensure(failing.is_empty(), || {
        format!("suites failing: {failing:?}")
    })?;
    Ok(format!(
        "{} claims, {exact} verified-exact, 0 violations",
        claims.len()
    ))
}

fn symplectic_layer() -> Outcome {
    Ok(checks(&suite(Suite::Symplectic)?))
}

fn css_symplectic_agreement() -> Outcome {
    let r = suite(Suite::CssSymplecticAgreement)?;
    ensure(r.checks == 20 && r.skipped == 0, || checks(&r))?;
    Ok("20 pairs agree".into())
}

// Independent transcriptions of the family formulas for the table check.

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials in `m` variables with exponents below `q` and degree at most
/// `alpha`, counted directly.
fn grm_k(q: usize, m: usize, alpha: usize) -> usize {
    (0..q.pow(m as u32))
        .filter(|&x| {
            let mut x = x;
            let mut deg = 0;
            for _ in 0..m {
                deg += x % q;
                x /= q;
            }
            deg <= alpha
        })
        .count()
}

fn prime_power(q: usize) -> (usize, usize) {
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap();
    let mut t = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        t += 1;
    }
    assert_eq!(r, 1, "{q} is not a prime power");
    (p, t)
}

fn order(q: usize, n: usize) -> usize {
    let mut x = q % n;
    let mut m = 1;
    while x != 1 {
        x = x * q % n;
        m += 1;
    }
    m
}

fn ceil_term(delta: usize, q: usize) -> usize {
    ((delta - 1) * (q - 1)).div_ceil(q)
}

fn table_formula(family: Family, params: &BTreeMap<String, String>) -> (usize, usize, usize) {
    let get = |k: &str| params[k].parse::<usize>().unwrap();
    let q = get("q");
    let (p, t) = prime_power(q);
    match family {
        Family::Grm => {
            let m = get("m");
            let k = grm_k(q, m, get("alpha2")) - grm_k(q, m, get("alpha1"));
            (p, t * q.pow(m as u32), t * k)
        }
        Family::Character => {
            let m = get("m");
            let k: usize = (get("r1") + 1..=get("r2")).map(|j| binom(m, j)).sum();
            (p, t << m, t * k)
        }
        Family::BchSalah => {
            let n = get("n");
            let m = order(q, n);
            let k = n - m * ceil_term(get("delta1"), q) - m * ceil_term(get("delta2"), q);
            (p, t * n, t * k)
        }
        Family::Abch1 => {
            let m = get("m");
            let n = q.pow(m as u32) - 1;
            let (c, l) = (
                params.get("c").map(|_| get("c")),
                params.get("l").map(|_| get("l")),
            );
            let k = match params["shape"].as_str() {
                "first" => n - m * (4 * q - 5) - 2,
                "second" => n - m * (4 * q - c.unwrap() - 5) - 2,
                "third" => n - m * (2 * c.unwrap() - l.unwrap() - 4) - 2,
                "fourth" => n - m * (2 * c.unwrap() - l.unwrap() - 6) - 2,
                "fifth" => n - m * (4 * q - l.unwrap() - 5) - 1,
                other => panic!("unknown shape {other}"),
            };
            (p, t * n, t * k)
        }
        Family::Qr => (q, get("p"), 1),
        Family::ExpandedQr => (p, t * get("p"), t),
    }
}

fn parse_params(s: &str) -> BTreeMap<String, String> {
    s.split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn table_caps(family: Family) -> Caps {
    match family {
        Family::Character => Caps {
            max_q: 5,
            ..Caps::default()
        },
        Family::Abch1 => Caps {
            max_q: 5,
            max_m: 4,
            ..Caps::default()
        },
        _ => Caps::default(),
    }
}

fn check_row(family: Family, r: &TableRow) -> Result<(), String> {
    let want = table_formula(family, &parse_params(&r.params));
    ensure((r.q as usize, r.n, r.k) == want, || {
        format!(
            "{family} {}: row ({}, {}, {}) vs {want:?}",
            r.params, r.q, r.n, r.k
        )
    })?;
    let oracle = r.dz_oracle.is_some()
        && r.dx_oracle.is_some()
        && r.dz_exact.is_some()
        && r.dx_exact.is_some();
    let ok = match r.status {
        Status::VerifiedExact => oracle && r.dz_exact == Some(true) && r.dx_exact == Some(true),
        Status::VerifiedBound => oracle,
        Status::BudgetExceeded | Status::HypothesisFailed => !r.notes.is_empty(),
        Status::Violated => false,
    };
    ensure(ok, || {
        format!(
            "{family} {}: status {} with oracle columns {:?}/{:?}",
            r.params, r.status, r.dz_oracle, r.dx_oracle
        )
    })
}

fn cli_table(family: Family, caps: &Caps) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_aqecc"))
        .args(["table", "--family", &family.to_string(), "--format", "csv"])
        .args([
            "--max-p",
            &caps.max_p.to_string(),
            "--max-q",
            &caps.max_q.to_string(),
        ])
        .args(["--max-m", &caps.max_m.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("table exited with {}", out.status)
    })?;
    Ok(out.stdout)
}

fn table_reproduction() -> Outcome {
    let mut summary = Vec::new();
    for family in Family::ALL {
        let caps = table_caps(family);
        let list = rows(family, &caps, BasisKind::Polynomial, &Budget::default())
            .map_err(|e| e.to_string())?;
        ensure(!list.is_empty(), || format!("{family}: no rows"))?;
        for r in &list {
            check_row(family, r)?;
        }
        let exact = list
            .iter()
            .filter(|r| r.status == Status::VerifiedExact)
            .count();
        let first = cli_table(family, &caps)?;
        let second = cli_table(family, &caps)?;
        ensure(first == second, || {
            format!("{family}: two table runs differ")
        })?;
        ensure(
            first
                .split(|&b| b == b'\n')
                .filter(|l| !l.is_empty())
                .count()
                == list.len() + 1,
            || format!("{family}: CLI row count differs from the library"),
        )?;
        summary.push(format!("{family} {}/{exact}", list.len()));
    }
    Ok(format!(
        "rows/exact: {}; byte-identical reruns",
        summary.join(", ")
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "Steane baseline",
            limit: secs(1),
            run: steane_baseline,
        },
        Criterion {
            id: 2,
            name: "dual of the expansion",
            limit: secs(30),
            run: dual_expansion,
        },
        Criterion {
            id: 3,
            name: "expanded QR p=5 q=4",
            limit: secs(10),
            run: qr_expanded_five_over_four,
        },
        Criterion {
            id: 4,
            name: "QR p=7 q=2",
            limit: secs(5),
            run: qr_seven_over_two,
        },
        Criterion {
            id: 5,
            name: "GRM dimension and distance formulas",
            limit: secs(300),
            run: grm_formulas,
        },
        Criterion {
            id: 6,
            name: "GRM q=2 m=3 alpha=(1,2)",
            limit: secs(10),
            run: grm_instance,
        },
        Criterion {
            id: 7,
            name: "character q=3 m=2 r=(0,1)",
            limit: secs(5),
            run: character_instance,
        },
        Criterion {
            id: 8,
            name: "BCH bound suite",
            limit: secs(120),
            run: bch_bounds,
        },
        Criterion {
            id: 9,
            name: "combinator laws",
            limit: secs(120),
            run: combinator_laws,
        },
        Criterion {
            id: 10,
            name: "theorem-bound soundness over verify all",
            limit: secs(600),
            run: soundness,
        },
        Criterion {
            id: 11,
            name: "symplectic layer",
            limit: secs(60),
            run: symplectic_layer,
        },
        Criterion {
            id: 12,
            name: "CSS and symplectic agreement",
            limit: secs(60),
            run: css_symplectic_agreement,
        },
        Criterion {
            id: 13,
            name: "table reproduction",
            limit: secs(300),
            run: table_reproduction,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(_) if elapsed <= c.limit => "PASS",
            _ => "FAIL",
        };
        let detail = match result {
            Ok(d) if elapsed <= c.limit => d,
            Ok(d) => format!("over the time limit; {d}"),
            Err(e) => e,
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "{verdict} {:>2} {} ({:.3}s, limit {}s): {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
