//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Exact criteria have zero tolerance; time limits are
//! checked against wall-clock time in this process.
//!
//! Run with `cargo test --release -p dsfaces-cli --test acceptance`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dsfaces::enumeration::{
    ds_fvectors, genfun_identity_check, oracle_box, oracle_powerset, qf_lattice, table4_row, EnumOptions,
    ParityClass, Table4Row, ORACLE_POWERSET_MAX_M, REFERENCE_TABLE4,
};
use dsfaces::polytopes::{push_to_h, qh_lattice_bruteforce};
use dsfaces::projectors::{verify_projectors, verify_rank1};
use dsfaces::report::CheckReport;
use dsfaces::spaces::{cone_check, cone_equality_witnesses, corollary1_verify, verify_spaces};
use dsfaces::verify::{self, run_suite, Formulas, Suite};
use dsfaces::IntVector;

type Verdict = (bool, String);

/// Folds per-m reports into a verdict, naming the failing items.
fn summarize(reports: Vec<CheckReport>) -> Verdict {
    let checks: u64 = reports.iter().map(|r| r.checks).sum();
    let failures: Vec<_> = reports.iter().flat_map(|r| &r.failures).collect();
    if failures.is_empty() {
        return (true, format!("{checks} exact checks"));
    }
    let items: BTreeSet<String> = failures.iter().map(|f| f.item.clone()).collect();
    let first = failures[0];
    (
        false,
        format!(
            "{} of {checks} checks failed in: {}; first: m={} {:?} expected {} got {}",
            failures.len(),
            items.into_iter().collect::<Vec<_>>().join(" | "),
            first.m,
            first.indices,
            first.expected,
            first.got
        ),
    )
}

fn reports(ms: std::ops::RangeInclusive<usize>, f: impl Fn(usize) -> dsfaces::Result<CheckReport>) -> Vec<CheckReport> {
    ms.map(|m| f(m).unwrap_or_else(|e| panic!("m={m}: {e}"))).collect()
}

fn set(points: &[IntVector]) -> BTreeSet<Vec<i64>> {
    points.iter().map(|p| p.to_i64().expect("small")).collect()
}

fn table4() -> Verdict {
    let mut rows = Vec::new();
    let start = Instant::now();
    for m in 2..=8 {
        rows.push(table4_row(m, 1).expect("table4 row"));
    }
    let small = start.elapsed();
    rows.push(table4_row(9, 1).expect("table4 row"));
    let before_10 = Instant::now();
    rows.push(table4_row(10, 1).expect("table4 row"));
    let ten = before_10.elapsed();
    let expected: Vec<Table4Row> = REFERENCE_TABLE4
        .iter()
        .map(|&(m, col1, col2, col3)| Table4Row { m, col1, col2, col3 })
        .collect();
    let exact = rows == expected;
    let cli = dsfaces_cli::run(["dsfaces", "table4", "--max-m", "10"]);
    let ok = exact
        && cli.code == 0
        && small <= Duration::from_secs(10)
        && ten <= Duration::from_secs(600);
    let mut detail = format!(
        "m=6 {:?}, m=9 {:?}, m=10 {:?}; m<=8 in {small:.2?} (limit 10 s), m=10 in {ten:.2?} (limit 10 min), single-threaded",
        (rows[4].col1, rows[4].col2, rows[4].col3),
        (rows[7].col1, rows[7].col2, rows[7].col3),
        (rows[8].col1, rows[8].col2, rows[8].col3),
    );
    if !exact {
        detail += &format!("; MISMATCH got {rows:?}");
    }
    if cli.code != 0 {
        detail += &format!("; CLI exit {}", cli.code);
    }
    (ok, detail)
}

fn figure1() -> Verdict {
    let qf = qf_lattice(2).unwrap();
    let qh = push_to_h(2, &qf).unwrap();
    let want_f: BTreeSet<Vec<i64>> = [[0, 0, 0], [1, 0, 0], [0, 1, 1], [1, 1, 1]].map(Vec::from).into();
    let want_h: BTreeSet<Vec<i64>> = [[0, 0, 0], [1, -2, 1], [0, 1, 0], [1, -1, 1]].map(Vec::from).into();
    let direct_h = set(&qh_lattice_bruteforce(2).unwrap());
    let ok = set(&qf) == want_f && set(&qh) == want_h && direct_h == want_h;
    (ok, format!("Q^f(2) = {:?}, Q^h(2) = {:?}", set(&qf), set(&qh)))
}

fn oracles() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for m in 2..=7 {
        let engine = |class| {
            ds_fvectors(m, class, &EnumOptions::default())
                .unwrap()
                .points
                .unwrap()
                .to_vecs()
        };
        let (mat, opp) = (engine(ParityClass::Matching), engine(ParityClass::Opposite));
        let bx = oracle_box(m).unwrap();
        if bx.matching != mat || bx.opposite != opp {
            bad.push(format!("box m={m}"));
        }
        if m <= ORACLE_POWERSET_MAX_M {
            let ps = oracle_powerset(m).unwrap();
            if ps.matching != mat || ps.opposite != opp {
                bad.push(format!("powerset m={m}"));
            }
        }
    }
    let t = start.elapsed();
    let ok = bad.is_empty() && t <= Duration::from_secs(60);
    (
        ok,
        format!(
            "enumerator = box oracle for m=2..7, = powerset oracle for m=2..4, per class; {t:.2?} (limit 60 s){}",
            if bad.is_empty() { String::new() } else { format!("; disagree: {bad:?}") }
        ),
    )
}

fn identity_suites() -> Verdict {
    let (ok, detail) = summarize(reports(2..=8, |m| run_suite(Suite::Tables, m, Formulas::Printed)));
    let corrected = verify::verify(Suite::Tables, 2..=8, Formulas::Corrected).unwrap();
    let note = if corrected.passed {
        "with the corrected Fdown row everything passes"
    } else {
        "also fails with the corrected Fdown row"
    };
    (ok, format!("Tables 1-3, w*S closed form and palindromicity, m=2..8: {detail}; {note}"))
}

fn spectra() -> Verdict {
    let (ok, d) = summarize(reports(2..=8, |m| run_suite(Suite::Spectra, m, Formulas::Printed)));
    (ok, format!("m=2..8, total unimodularity by full minor scan m<=5: {d}"))
}

fn fixedness() -> Verdict {
    let (ok, d) = summarize(reports(2..=8, verify::polytopes));
    (ok, format!("Q^f points fixed by D (matrix and expanded form), Q^h points fixed by U, m=2..8: {d}"))
}

fn structural() -> Verdict {
    let mut all = reports(2..=8, |m| run_suite(Suite::Prism, m, Formulas::Printed));
    all.extend(reports(2..=7, genfun_identity_check));
    all.extend(reports(2..=8, verify::enumeration));
    let (ok, d) = summarize(all);
    (ok, format!("prism m even <=8, generating function m<=7, class disjointness and col3 m<=8: {d}"))
}

fn corollary1() -> Verdict {
    let mut all = Vec::new();
    for m in 2..=8 {
        let pts = ds_fvectors(m, ParityClass::All, &EnumOptions::default())
            .unwrap()
            .points
            .unwrap()
            .to_vectors();
        all.push(corollary1_verify(m, &pts).unwrap());
        all.push(verify_spaces(m).unwrap());
    }
    let (ok, d) = summarize(all);
    (ok, format!("pointwise on all DS f-vectors and span equalities, m=2..8: {d}"))
}

fn appendix() -> Verdict {
    let (ok_a, d_a) = summarize(reports(2..=10, verify_projectors));
    let (ok_b, d_b) = summarize(reports(2..=8, verify_rank1));
    (
        ok_a && ok_b,
        format!("norms, biorthogonality and projectors m=2..10: {d_a}; rank-1 closed forms m=2..8: {d_b}"),
    )
}

fn integrality() -> Verdict {
    let mut all = Vec::new();
    for m in 2..=8 {
        all.push(cone_check(m, &qf_lattice(m).unwrap()).unwrap());
    }
    let (ok_a, d_a) = summarize(all);
    let bad: Vec<usize> = (2..=4)
        .filter(|&m| !cone_equality_witnesses(m).unwrap().is_empty())
        .collect();
    (
        ok_a && bad.is_empty(),
        format!(
            "integral generator coordinates of every E^f lattice point m=2..8: {d_a}; C^f = generated cone (extreme rays) m=2..4: {}",
            if bad.is_empty() { "equal".to_string() } else { format!("differs at {bad:?}") }
        ),
    )
}

fn determinism() -> Verdict {
    // (command, accepts --workers)
    let commands = [
        ("enumerate --m 8 --class all --multiplicities", true),
        ("enumerate --m 8 --class all --format csv", true),
        ("lattice --m 8 --h --format text", true),
        ("table4 --max-m 10", true),
        ("verify --suite enumeration --m 2..8", false),
    ];
    let mut bad = Vec::new();
    for (c, threaded) in commands {
        let go = |w: usize| {
            let mut args = format!("dsfaces {c}");
            if threaded {
                args += &format!(" --workers {w}");
            }
            dsfaces_cli::run(args.split_whitespace())
        };
        let base = go(1);
        if base.code != 0 {
            bad.push(format!("{c}: exit {}", base.code));
            continue;
        }
        for w in [1, 2, 4, 8] {
            let again = go(w);
            if again.code != base.code || again.stdout != base.stdout {
                bad.push(format!("{c} with {w} workers"));
            }
        }
    }
    (
        bad.is_empty(),
        format!(
            "{} commands repeated with workers 1, 1, 2, 4, 8: byte-identical{}",
            commands.len(),
            if bad.is_empty() { String::new() } else { format!("; differs: {bad:?}") }
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("Table 4 reproduction", table4),
        ("lattice points of Q^f(2) and Q^h(2)", figure1),
        ("three-way oracle agreement", oracles),
        ("identity suites (printed closed forms)", identity_suites),
        ("spectral suite", spectra),
        ("eigen-fixedness", fixedness),
        ("structural identities", structural),
        ("DS f-vector space and cone structure", corollary1),
        ("appendix suite (printed closed forms)", appendix),
        ("unimodular-basis integrality and cone equality", integrality),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = f();
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2}. {name} [{:.2?}]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
