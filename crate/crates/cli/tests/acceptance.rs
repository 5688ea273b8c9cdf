//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! All value checks are exact. The only tolerances are wall-clock budgets,
//! pinned below; a criterion over budget fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use narayana::bijections::{f1, f2_inv, f4};
use narayana::family::Family;
use narayana::monomials::{enumerate_monomials, parse};
use narayana::numbers::{catalan, lagrange_narayana, narayana, narayana_row, series_narayana};
use narayana::permutations::enumerate_p;
use narayana::verify::{verify_bijections, verify_counts, verify_identities, Sweep};
use narayana::{LatticePath, OrderedTree};

const TABLE_BUDGET: Duration = Duration::from_secs(1);
const THREE_WAY_BUDGET: Duration = Duration::from_secs(30);
const SWEEP_BUDGET: Duration = Duration::from_secs(300);

/// Desk-scale sweep for the count and bijection criteria. Rows with
/// `k = 0` hold one object for every `n`, so the cell-size bound alone
/// leaves infinitely many cells; rows stop at `SWEEP_N_MAX`.
const SWEEP_DS: [usize; 3] = [2, 3, 4];
const SWEEP_N_MAX: usize = 16;
const SWEEP_CELL_LIMIT: usize = 20_000;

const NARAYANA_2: [&[u64]; 8] = [
    &[1],
    &[1, 1],
    &[1, 3, 1],
    &[1, 6, 6, 1],
    &[1, 10, 20, 10, 1],
    &[1, 15, 50, 50, 15, 1],
    &[1, 21, 105, 175, 105, 21, 1],
    &[1, 28, 196, 490, 490, 196, 28, 1],
];

const NARAYANA_3: [&[u64]; 8] = [
    &[1],
    &[1, 1],
    &[1, 4, 1],
    &[1, 9, 10, 1],
    &[1, 16, 42, 20, 1],
    &[1, 25, 120, 140, 35, 1],
    &[1, 36, 275, 600, 378, 56, 1],
    &[1, 49, 546, 1925, 2310, 882, 84, 1],
];

/// Rows d = 2..=6, columns n = 0..=7.
const CATALAN: [[u64; 8]; 5] = [
    [1, 2, 5, 14, 42, 132, 429, 1430],
    [1, 2, 6, 21, 80, 322, 1347, 5798],
    [1, 2, 7, 29, 131, 627, 3124, 16032],
    [1, 2, 8, 38, 196, 1073, 6120, 35968],
    [1, 2, 9, 48, 276, 1687, 10750, 70597],
];

const TERNARY_ONE_L: [&str; 9] = [
    "L(a1a2a3a4a5)",
    "L(a1a2a3)a4a5",
    "L(a1)a2a3a4a5",
    "a1L(a2a3a4)a5",
    "a1L(a2)a3a4a5",
    "a1a2L(a3a4a5)",
    "a1a2L(a3)a4a5",
    "a1a2a3L(a4)a5",
    "a1a2a3a4L(a5)",
];

const TERNARY_PERMS: [&str; 12] = [
    "54321", "54123", "53124", "43125", "52134", "42135", "32145", "15423", "15324", "14325",
    "12543", "12345",
];

type Outcome = Result<String, String>;

/// Name, optional time budget, check.
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn u64_row(d: usize, n: usize) -> Vec<u64> {
    narayana_row(d, n)
        .unwrap()
        .iter()
        .map(|v| v.to_u64().unwrap())
        .collect()
}

fn sweep() -> Sweep {
    Sweep {
        ds: SWEEP_DS.to_vec(),
        n_max: SWEEP_N_MAX,
        cell_limit: SWEEP_CELL_LIMIT,
    }
}

fn narayana_grids() -> Outcome {
    for (d, table) in [(2, NARAYANA_2), (3, NARAYANA_3)] {
        for (n, row) in table.iter().enumerate() {
            ensure(
                u64_row(d, n) == *row,
                format!("N_{d}({n},.) = {:?}", u64_row(d, n)),
            )?;
        }
    }
    Ok("N_2 and N_3 for 0 <= k <= n <= 7".into())
}

fn catalan_grid() -> Outcome {
    for (i, row) in CATALAN.iter().enumerate() {
        let d = i + 2;
        for (n, &want) in row.iter().enumerate() {
            let got = catalan(d, n).unwrap();
            ensure(got == want, format!("C_{d}({n}) = {got}, want {want}"))?;
        }
    }
    Ok("C_d(n) for d = 2..6, n = 0..7".into())
}

fn three_way() -> Outcome {
    let mut cells = 0;
    for d in 2..=6 {
        let series = series_narayana(d, 12).unwrap();
        for n in 0..=12 {
            for k in 0..=n {
                let formula = narayana(d, n, k).unwrap();
                let lagrange = lagrange_narayana(d, n, k).unwrap();
                let fixed_point = series.get(n, k);
                ensure(
                    formula == lagrange && formula == fixed_point,
                    format!("d={d} n={n} k={k}: {formula} / {fixed_point} / {lagrange}"),
                )?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells, d <= 6, n <= 12"))
}

fn ternary_monomials() -> Outcome {
    let sizes: Vec<usize> = (0..=3)
        .map(|k| enumerate_monomials(3, 3, k).unwrap().len())
        .collect();
    ensure(sizes == [1, 9, 10, 1], format!("sizes {sizes:?}"))?;
    let got: BTreeSet<String> = enumerate_monomials(3, 3, 1)
        .unwrap()
        .iter()
        .map(|m| m.to_string())
        .collect();
    let want: BTreeSet<String> = TERNARY_ONE_L
        .iter()
        .map(|s| parse(s, 3).unwrap().to_string())
        .collect();
    ensure(got == want, format!("lopt = 1 set {got:?}"))?;
    Ok("sizes (1,9,10,1); the nine lopt = 1 monomials".into())
}

fn count_theorems() -> Outcome {
    let report = verify_counts(&sweep(), &Family::ALL);
    ensure(report.is_green(), report.summary_table())?;
    ensure(report.summary.skipped == 0, "skipped cells")?;
    Ok(format!(
        "{} cells over 9 families, d in {SWEEP_DS:?}, n <= {SWEEP_N_MAX}, N <= {SWEEP_CELL_LIMIT}",
        report.summary.total
    ))
}

fn bijection_soundness() -> Outcome {
    let m = parse("L(a1L(L(a2))a3)a4a5", 3).unwrap();
    ensure(f1(&m).to_string() == "UHUUHDDHDHH", "f1 anchor")?;
    let q = LatticePath::parse("UUUDDUDDUUDD").unwrap();
    ensure(f4(&q).unwrap().to_string() == "421365", "f4 anchor")?;
    let t = OrderedTree::new(vec![1, 3, 1, 0, 0, 3, 0, 0, 0]).unwrap();
    ensure(
        f2_inv(&t, 3).unwrap().to_string() == "L(L(a1)a2L(a3a4a5))",
        "f2 inverse anchor",
    )?;
    let report = verify_bijections(&sweep());
    ensure(report.is_green(), report.summary_table())?;
    Ok(format!(
        "3 anchors; {} checks on the criterion 5 sweep",
        report.summary.total
    ))
}

fn ternary_perms_of_five() -> Outcome {
    let got: Vec<String> = (0..=6)
        .flat_map(|runs| enumerate_p(3, 5, runs).unwrap())
        .map(|p| p.to_string())
        .collect();
    let set: BTreeSet<&str> = got.iter().map(String::as_str).collect();
    ensure(
        got.len() == 12 && set == TERNARY_PERMS.into_iter().collect(),
        format!("{got:?}"),
    )?;
    Ok("the 12 permutations of [5]".into())
}

fn sandwich_and_symmetry() -> Outcome {
    let report = verify_identities(6, 10);
    let relevant: Vec<_> = report
        .cells
        .iter()
        .filter(|c| {
            matches!(
                c.id.as_str(),
                "sandwich_lower" | "sandwich_upper" | "symmetry"
            )
        })
        .collect();
    ensure(!relevant.is_empty(), "no cells")?;
    if let Some(bad) = relevant.iter().find(|c| !c.pass) {
        return Err(format!("{} d={} n={} k={}", bad.id, bad.d, bad.n, bad.k));
    }
    Ok(format!("{} cells, d <= 6, n <= 10", relevant.len()))
}

/// UU counts of all Dyck paths of the given semilength, by direct recursion.
fn uu_histogram(semilength: usize) -> Vec<u64> {
    fn go(ups: usize, downs: usize, last_up: bool, uu: usize, hist: &mut Vec<u64>) {
        if ups == 0 && downs == 0 {
            hist[uu] += 1;
            return;
        }
        if ups > 0 {
            go(ups - 1, downs + 1, true, uu + usize::from(last_up), hist);
        }
        if downs > 0 {
            go(ups, downs - 1, false, uu, hist);
        }
    }
    let mut hist = vec![0; semilength.max(1)];
    // `downs` counts down steps currently available, i.e. the height
    go(semilength, 0, false, 0, &mut hist);
    hist
}

fn dyck_by_double_rises() -> Outcome {
    for n in 0..=8 {
        let hist = uu_histogram(n + 1);
        ensure(hist == u64_row(2, n), format!("n={n}: {hist:?}"))?;
    }
    Ok("semilength n + 1 by UU count, n <= 8".into())
}

fn golden(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn cli_goldens() -> Outcome {
    let cases: [(&[&str], &str); 4] = [
        (&["table", "--d", "2", "--n-max", "7"], "narayana_d2.txt"),
        (&["table", "--d", "3", "--n-max", "7"], "narayana_d3.txt"),
        (
            &["table", "--d", "2,3", "--n-max", "7"],
            "narayana_d2_d3.txt",
        ),
        (
            &[
                "table",
                "--kind",
                "catalan",
                "--d",
                "2,3,4,5,6",
                "--n-max",
                "7",
            ],
            "catalan_d2_d6.txt",
        ),
    ];
    for (args, file) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_narayana"))
            .args(args)
            .output()
            .unwrap();
        ensure(
            out.status.success() && out.stdout == golden(file),
            format!("{file} differs"),
        )?;
    }
    let status = Command::new(env!("CARGO_BIN_EXE_narayana"))
        .args(["verify", "--suite", "all"])
        .output()
        .unwrap()
        .status;
    ensure(
        status.code() == Some(0),
        format!("verify --suite all: {status}"),
    )?;
    Ok("4 goldens byte-identical; verify --suite all exits 0".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("narayana table", Some(TABLE_BUDGET), narayana_grids),
        ("catalan table", Some(TABLE_BUDGET), catalan_grid),
        ("three-way agreement", Some(THREE_WAY_BUDGET), three_way),
        ("ternary monomials", None, ternary_monomials),
        ("count theorems", Some(SWEEP_BUDGET), count_theorems),
        ("bijection soundness", None, bijection_soundness),
        ("ternary permutations", None, ternary_perms_of_five),
        ("sandwich and symmetry", None, sandwich_and_symmetry),
        ("dyck paths by double rises", None, dyck_by_double_rises),
        ("cli goldens and verify", None, cli_goldens),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                Err(format!("panicked: {}", msg.unwrap_or_default()))
            })
            .and_then(|detail| match budget {
                Some(b) if start.elapsed() > b => {
                    Err(format!("{detail}; over the {:.0?} budget", b))
                }
                _ => Ok(detail),
            });
        let elapsed = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS {name}: {detail} [{elapsed:.2}s]",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL {name}: {detail} [{elapsed:.2}s]",
                    i + 1
                );
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
