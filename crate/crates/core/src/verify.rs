//! Exhaustive sweeps that check counts, bijections and numeric identities,
//! collected into a [`VerificationReport`].
//!
//! Cells are evaluated in parallel; the report keeps the order in which the
//! cells were listed, so output is deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijections::*;
use crate::family::{Family, Object};
use crate::monomials::{enumerate_monomials, Monomial};
use crate::numbers::{
    catalan, lagrange_narayana, narayana, series_catalan, series_narayana, CountValue,
};
use crate::paths::{in_q_d, in_s_d, DescentLabeledPath, LatticePath};
use crate::permutations::{decreasing_runs, in_p_d, Permutation};
use crate::trees::in_t_d;
use crate::{FPath, LabeledOrderedTree, OrderedTree, DEFAULT_GUARD};

/// Largest cell enumerated by the default sweeps.
pub const CELL_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub id: String,
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub expected: CountValue,
    pub actual: CountValue,
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    /// Reproducer for a failure or the reason for a skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Cell {
    fn new(
        id: impl Into<String>,
        (d, n, k): (usize, usize, usize),
        expected: CountValue,
        actual: CountValue,
    ) -> Self {
        let pass = expected == actual;
        Cell {
            id: id.into(),
            d,
            n,
            k,
            expected,
            actual,
            pass,
            skipped: false,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: Option<String>) -> Self {
        if detail.is_some() {
            self.pass = false;
        }
        self.detail = detail;
        self
    }

    fn skipped(
        id: impl Into<String>,
        (d, n, k): (usize, usize, usize),
        expected: CountValue,
        why: String,
    ) -> Self {
        Cell {
            id: id.into(),
            d,
            n,
            k,
            expected,
            actual: CountValue::zero(),
            pass: true,
            skipped: true,
            detail: Some(why),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    /// Ranges and limits the report was produced with.
    pub header: Vec<String>,
    pub cells: Vec<Cell>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(header: Vec<String>, cells: Vec<Cell>) -> Self {
        let summary = Summary {
            total: cells.len(),
            failed: cells.iter().filter(|c| !c.pass).count(),
            skipped: cells.iter().filter(|c| c.skipped).count(),
        };
        VerificationReport {
            header,
            cells,
            summary,
        }
    }

    pub fn merge(self, other: VerificationReport) -> Self {
        let mut header = self.header;
        header.extend(other.header);
        let mut cells = self.cells;
        cells.extend(other.cells);
        VerificationReport::new(header, cells)
    }

    pub fn is_green(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.pass)
    }

    /// One JSON object per cell.
    pub fn to_jsonl(&self) -> String {
        self.cells
            .iter()
            .map(|c| serde_json::to_string(c).expect("cells serialize") + "\n")
            .collect()
    }

    /// Per-id totals followed by any failures.
    pub fn summary_table(&self) -> String {
        let mut by_id: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
        for c in &self.cells {
            let row = by_id.entry(&c.id).or_default();
            row[0] += 1;
            row[1] += usize::from(!c.pass);
            row[2] += usize::from(c.skipped);
        }
        let mut out = String::new();
        for line in &self.header {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(
            out,
            "{:<18} {:>7} {:>7} {:>7}",
            "check", "cells", "failed", "skipped"
        );
        for (id, [cells, failed, skipped]) in &by_id {
            let _ = writeln!(out, "{id:<18} {cells:>7} {failed:>7} {skipped:>7}");
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{:<18} {:>7} {:>7} {:>7}",
            "total", s.total, s.failed, s.skipped
        );
        for c in self.failures() {
            let _ = writeln!(
                out,
                "FAIL {} d={} n={} k={} expected={} actual={} {}",
                c.id,
                c.d,
                c.n,
                c.k,
                c.expected,
                c.actual,
                c.detail.as_deref().unwrap_or("")
            );
        }
        out
    }
}

/// Arities, row bound and cell-size bound of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub ds: Vec<usize>,
    pub n_max: usize,
    pub cell_limit: usize,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            ds: vec![2, 3, 4, 5],
            n_max: 10,
            cell_limit: CELL_LIMIT,
        }
    }
}

impl Sweep {
    fn describe(&self, what: &str) -> String {
        format!(
            "{what}: d in {:?}, n <= {}, cells with N_d(n,k) <= {}",
            self.ds, self.n_max, self.cell_limit
        )
    }

    /// `(d, n, k, N_d(n,k))` for every cell within the limits.
    pub fn cells(&self) -> Vec<(usize, usize, usize, u64)> {
        let mut out = Vec::new();
        for &d in &self.ds {
            for n in 0..=self.n_max {
                for k in 0..=n {
                    let count = narayana(d, n, k)
                        .expect("sweep arity")
                        .to_u64()
                        .unwrap_or(u64::MAX);
                    if count <= self.cell_limit as u64 {
                        out.push((d, n, k, count));
                    }
                }
            }
        }
        out
    }
}

fn run_cells<T: Sync>(tasks: &[T], f: impl Fn(&T) -> Vec<Cell> + Sync + Send) -> Vec<Cell> {
    tasks
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Enumerates each family under the theorem's parameter map and compares the
/// size with `N_d(n,k)`.
pub fn verify_counts(sweep: &Sweep, families: &[Family]) -> VerificationReport {
    let tasks: Vec<_> = families
        .iter()
        .flat_map(|&f| sweep.cells().into_iter().map(move |c| (f, c)))
        .collect();
    let cells = run_cells(&tasks, |&(family, (d, n, k, count))| {
        let (a, b) = family.cell(d, n, k);
        let key = (d, n, k);
        let expected = CountValue::from(count);
        vec![match family.enumerate(d, a, b, DEFAULT_GUARD) {
            Ok(objs) => Cell::new(family.symbol(), key, expected, CountValue::from(objs.len())),
            Err(e) => Cell::skipped(family.symbol(), key, expected, e.to_string()),
        }]
    });
    VerificationReport::new(vec![sweep.describe("counts")], cells)
}

/// Outcome of checking one object against one bijection.
type Check = std::result::Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

struct Images {
    s: LatticePath,
    t: OrderedTree,
    q: LatticePath,
    p: Permutation,
    ls: DescentLabeledPath,
    f: FPath,
    lq: DescentLabeledPath,
    lt: LabeledOrderedTree,
}

/// Runs every map on `m` and records per-map outcomes in `ORDER`.
const ORDER: [&str; 8] = ["f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"];

fn check_monomial(m: &Monomial) -> ([Check; 8], Option<Images>) {
    let d = m.arity();
    let st = m.stats();
    let who = |name: &str, img: &dyn std::fmt::Display| format!("{name}({m}) = {img}");

    let s = f1(m);
    let ps = s.stats();
    let c1 = ensure(in_s_d(&s, d), || who("f1 outside S_d", &s))
        .and_then(|_| {
            ensure(
                ps.semilength == st.deg + st.lopt && ps.up_count == st.lopt,
                || who("f1 stats", &s),
            )
        })
        .and_then(|_| ensure(f1_inv(&s, d).as_ref() == Ok(m), || who("f1 roundtrip", &s)));

    let t = f2(m);
    let ts = t.stats();
    let c2 = ensure(in_t_d(&t, d), || who("f2 outside T_d", &t))
        .and_then(|_| {
            ensure(
                ts.edges == st.deg + st.lopt && ts.internal_nodes == st.lopt + 1,
                || who("f2 stats", &t),
            )
        })
        .and_then(|_| ensure(f2_inv(&t, d).as_ref() == Ok(m), || who("f2 roundtrip", &t)));

    let q = f3(&t);
    let qs = q.stats();
    let c3 = ensure(in_q_d(&q, d), || who("f3 outside Q_d", &q))
        .and_then(|_| {
            ensure(
                qs.semilength == ts.edges && qs.peaks == ts.internal_nodes,
                || who("f3 stats", &q),
            )
        })
        .and_then(|_| ensure(f3_inv(&q, d).as_ref() == Ok(&t), || who("f3 roundtrip", &q)));

    let (c4, p) = match f4(&q) {
        Ok(p) => {
            let c = ensure(in_p_d(&p, d), || who("f4 outside P_d", &p))
                .and_then(|_| {
                    ensure(
                        p.len() == qs.semilength && decreasing_runs(&p).len() == qs.peaks,
                        || who("f4 stats", &p),
                    )
                })
                .and_then(|_| ensure(f4_inv(&p, d).as_ref() == Ok(&q), || who("f4 roundtrip", &p)));
            (c, Some(p))
        }
        Err(e) => (Err(format!("f4 of {q}: {e}")), None),
    };

    let ls = f5(m);
    let lss = ls.stats();
    let c5 = ensure(lss.semilength == st.topt && lss.hdd == st.lopt, || {
        who("f5 stats", &ls)
    })
    .and_then(|_| {
        ensure(f5_inv(&ls, d).as_ref() == Ok(m), || {
            who("f5 roundtrip", &ls)
        })
    });

    let f = f6(m);
    let fs = f.stats();
    let c6 = ensure(
        fs.length == st.topt && fs.north == st.lopt && fs.height == st.lofi,
        || who("f6 stats", &f),
    )
    .and_then(|_| ensure(f6_inv(&f, d).as_ref() == Ok(m), || who("f6 roundtrip", &f)));

    let lq = f7(&f);
    let lqs = lq.stats();
    let c7 = ensure(
        lqs.semilength == fs.length + 1 && lqs.uu_count == fs.north,
        || who("f7 stats", &lq),
    )
    .and_then(|_| {
        ensure(f7_inv(&lq, d).as_ref() == Ok(&f), || {
            who("f7 roundtrip", &lq)
        })
    });

    let lt = f8(&lq);
    let lts = lt.stats();
    let c8 = ensure(
        lts.edges == lqs.semilength && lts.leaves == lqs.uu_count + 1,
        || who("f8 stats", &lt),
    )
    .and_then(|_| {
        ensure(f8_inv(&lt, d).as_ref() == Ok(&lq), || {
            who("f8 roundtrip", &lt)
        })
    });

    let images = p.map(|p| Images {
        s,
        t,
        q,
        p,
        ls,
        f,
        lq,
        lt,
    });
    ([c1, c2, c3, c4, c5, c6, c7, c8], images)
}

/// Checks that the images of a cell are exactly the target cell.
fn same_set(
    mut images: Vec<String>,
    target: Family,
    d: usize,
    n: usize,
    k: usize,
) -> Option<String> {
    let (a, b) = target.cell(d, n, k);
    let mut expected: Vec<String> = match target.enumerate(d, a, b, DEFAULT_GUARD) {
        Ok(objs) => objs.iter().map(Object::to_string).collect(),
        Err(e) => return Some(format!("{target}: {e}")),
    };
    images.sort();
    expected.sort();
    if images == expected {
        None
    } else {
        let missing = expected.iter().find(|x| images.binary_search(x).is_err());
        Some(format!(
            "image of the cell is not {}; e.g. missing {missing:?}",
            target.symbol()
        ))
    }
}

fn bijection_cells(d: usize, n: usize, k: usize, count: u64) -> Vec<Cell> {
    let key = (d, n, k);
    let expected = CountValue::from(count);
    let monos = match enumerate_monomials(d, n, k) {
        Ok(m) => m,
        Err(e) => {
            return ORDER
                .iter()
                .map(|id| Cell::skipped(*id, key, expected.clone(), e.to_string()))
                .collect();
        }
    };
    let mut passed = [0usize; 8];
    let mut first_failure: [Option<String>; 8] = Default::default();
    let mut images: [Vec<String>; 8] = Default::default();
    for m in &monos {
        let (checks, imgs) = check_monomial(m);
        for (i, c) in checks.into_iter().enumerate() {
            match c {
                Ok(()) => passed[i] += 1,
                Err(e) => {
                    first_failure[i].get_or_insert(e);
                }
            }
        }
        if let Some(x) = imgs {
            let texts = [
                x.s.to_string(),
                x.t.to_string(),
                x.q.to_string(),
                x.p.to_string(),
                x.ls.to_string(),
                x.f.to_string(),
                x.lq.to_string(),
                x.lt.to_string(),
            ];
            for (slot, text) in images.iter_mut().zip(texts) {
                slot.push(text);
            }
        }
    }
    let targets = [
        Family::Schroder,
        Family::Trees,
        Family::Dyck,
        Family::Perms,
        Family::LSchroder,
        Family::FPaths,
        Family::LDyck,
        Family::LTrees,
    ];
    (0..8)
        .map(|i| {
            let detail = first_failure[i]
                .take()
                .or_else(|| same_set(std::mem::take(&mut images[i]), targets[i], d, n, k));
            Cell::new(ORDER[i], key, expected.clone(), CountValue::from(passed[i]))
                .with_detail(detail)
        })
        .collect()
}

/// The `M_2 -> M_d` injection and the `M_d -> M_2` reparse on one cell.
fn injection_cells(d: usize, n: usize, k: usize, limit: usize) -> Vec<Cell> {
    let key = (d, n, k);
    let mut out = Vec::new();
    let small = narayana(2, n, k)
        .expect("d = 2")
        .to_u64()
        .unwrap_or(u64::MAX);
    if small <= limit as u64 {
        let monos = enumerate_monomials(2, n, k).expect("valid cell");
        let mut seen = std::collections::HashSet::new();
        let mut ok = 0usize;
        let mut detail = None;
        for m in &monos {
            match inject_2_to_d(m, d) {
                Ok(img) => {
                    let s = img.stats();
                    if (s.topt, s.lopt) == (n, k) && seen.insert(img.to_string()) {
                        ok += 1;
                    } else {
                        detail.get_or_insert(format!("inject({m}) = {img}"));
                    }
                }
                Err(e) => {
                    detail.get_or_insert(format!("inject({m}): {e}"));
                }
            }
        }
        out.push(
            Cell::new("inject", key, CountValue::from(small), CountValue::from(ok))
                .with_detail(detail),
        );
    }
    let big = narayana(d, n, k)
        .expect("sweep arity")
        .to_u64()
        .unwrap_or(u64::MAX);
    if big <= limit as u64 {
        let monos = enumerate_monomials(d, n, k).expect("valid cell");
        let mut seen = std::collections::HashSet::new();
        let mut ok = 0usize;
        let mut detail = None;
        let topt = (n - k) * (d - 1) + k;
        for m in &monos {
            let img = reparse_d_to_2(m);
            let s = img.stats();
            if (s.topt, s.lopt) == (topt, k) && seen.insert(img.to_string()) {
                ok += 1;
            } else {
                detail.get_or_insert(format!("reparse({m}) = {img}"));
            }
        }
        out.push(
            Cell::new("reparse", key, CountValue::from(big), CountValue::from(ok))
                .with_detail(detail),
        );
    }
    out
}

/// Worked examples that every implementation must reproduce.
fn anchor_cells() -> Vec<Cell> {
    let anchors: Vec<(&str, bool)> = vec![
        ("anchor:f1", {
            let m = crate::monomials::parse("L(a1L(L(a2))a3)a4a5", 3).expect("anchor");
            f1(&m).to_string() == "UHUUHDDHDHH"
        }),
        ("anchor:f2", {
            let t = OrderedTree::new(vec![1, 3, 1, 0, 0, 3, 0, 0, 0]).expect("anchor");
            f2_inv(&t, 3).map(|m| m.to_string()).as_deref() == Ok("L(L(a1)a2L(a3a4a5))")
        }),
        ("anchor:f4", {
            let q = LatticePath::parse("UUUDDUDDUUDD").expect("anchor");
            f4(&q).map(|p| p.to_string()).as_deref() == Ok("421365")
        }),
        ("anchor:f5", {
            let m = crate::monomials::parse("L(a1L(a2)L(L(a3a4a5)))", 3).expect("anchor");
            let s = f5(&m);
            s.base().to_string() == "UUUDHHDDH" && s.labels() == [vec![], vec![1]]
        }),
        ("anchor:f6", {
            let m = crate::monomials::parse("L(a1L(a2a3a4)L(L(a5)))", 3).expect("anchor");
            f6(&m).to_string() == "(0,1) (1,1)[0,0] (0,1) (0,1) (4,1)[1,2] (0,1)"
        }),
        ("anchor:f7", {
            let m = crate::monomials::parse("L(a1L(a2a3a4)L(L(a5)))", 3).expect("anchor");
            f7(&f6(&m)).to_string() == "UUD(0,0)UUUDDDD(1,2)UUDD"
        }),
        ("anchor:f8", {
            let pairs = [
                ("UD(0,0)UD(0,0)UD", "1 1 1 0;(0,0);(0,0)"),
                ("UD(0,0)UUDD", "2 0 1 0;(0,0)"),
                ("UUD(0,0)UDD", "2 1 0 0;(0,0)"),
                ("UUDD(1,0)UD", "1 2 0 0;(1,0)"),
                ("UUDD(0,1)UD", "1 2 0 0;(0,1)"),
                ("UUUDDD", "3 0 0 0"),
            ];
            pairs.iter().all(|(q, t)| {
                let q = DescentLabeledPath::parse_dyck(q, 3).expect("anchor");
                f8(&q).to_string() == *t
            })
        }),
    ];
    anchors
        .into_iter()
        .map(|(id, ok)| {
            Cell::new(
                id,
                (3, 0, 0),
                CountValue::one(),
                CountValue::from(u64::from(ok)),
            )
        })
        .collect()
}

/// Roundtrip, membership, statistic transport and image-set checks for
/// every bijection on every monomial of the sweep, plus the injections.
pub fn verify_bijections(sweep: &Sweep) -> VerificationReport {
    let cells = sweep.cells();
    let mut out = anchor_cells();
    out.extend(run_cells(&cells, |&(d, n, k, count)| {
        let mut v = bijection_cells(d, n, k, count);
        if d > 2 {
            v.extend(injection_cells(d, n, k, sweep.cell_limit));
        }
        v
    }));
    VerificationReport::new(vec![sweep.describe("bijections")], out)
}

/// Sandwich bounds, `d = 2` symmetry, agreement of closed form, series and
/// Lagrange extraction, and the row sums against the univariate series.
pub fn verify_identities(d_max: usize, n_max: usize) -> VerificationReport {
    let ds: Vec<usize> = (2..=d_max.max(2)).collect();
    let per_d = run_cells(&ds, |&d| {
        let table = series_narayana(d, n_max).expect("arity");
        let row_sums = series_catalan(d, n_max).expect("arity");
        let mut out = Vec::new();
        for (n, row_sum) in row_sums.into_iter().enumerate() {
            for k in 0..=n {
                let key = (d, n, k);
                let value = narayana(d, n, k).expect("arity");
                let lower = narayana(2, n, k).expect("arity");
                let upper = narayana(2, (n - k) * (d - 1) + k, k).expect("arity");
                let mut c = Cell::new("sandwich_lower", key, lower.clone(), value.clone());
                c.pass = lower <= value;
                out.push(c);
                let mut c = Cell::new("sandwich_upper", key, upper.clone(), value.clone());
                c.pass = value <= upper;
                out.push(c);
                if d == 2 {
                    out.push(Cell::new(
                        "symmetry",
                        key,
                        narayana(2, n, n - k).expect("arity"),
                        value.clone(),
                    ));
                }
                let series = table.get(n, k);
                let lagrange = lagrange_narayana(d, n, k).expect("arity");
                let detail = (lagrange != value).then(|| format!("lagrange gives {lagrange}"));
                out.push(Cell::new("three_way", key, value, series).with_detail(detail));
            }
            out.push(Cell::new(
                "catalan_series",
                (d, n, 0),
                catalan(d, n).expect("arity"),
                row_sum,
            ));
        }
        out
    });
    VerificationReport::new(
        vec![format!("identities: d in 2..={d_max}, n <= {n_max}")],
        per_d,
    )
}

/// All three suites on one sweep.
pub fn verify_all(sweep: &Sweep, d_max: usize, n_max: usize) -> VerificationReport {
    verify_counts(sweep, &Family::ALL)
        .merge(verify_bijections(sweep))
        .merge(verify_identities(d_max, n_max))
}
