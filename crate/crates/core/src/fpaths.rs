//! Labelled lattice paths with steps `(l, 1)` that stay weakly above `y = x`.
//!
//! A step stores only its run `l`; the y-increment is always 1. A step with
//! `l >= 1` carries a composition of `l - 1` into `d - 1` parts. Text form:
//! `(0,1) (1,1)[0,0] (4,1)[1,2]`, labels omitted when `d = 2`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::labels::{self, compositions, label_choices};
use crate::{check_arity, Error, Result, DEFAULT_GUARD};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FStep {
    pub run: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<usize>>,
}

impl FStep {
    pub fn north() -> Self {
        FStep {
            run: 0,
            label: None,
        }
    }

    pub fn new(run: usize, label: Vec<usize>) -> Self {
        FStep {
            run,
            label: Some(label),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FPath {
    arity: usize,
    steps: Vec<FStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FPathStats {
    pub length: usize,
    pub north: usize,
    pub height: usize,
}

/// Membership in `F_d` for a raw step sequence.
pub fn in_f_d(steps: &[FStep], d: usize) -> bool {
    if d < 2 {
        return false;
    }
    let mut x = 0;
    for (i, s) in steps.iter().enumerate() {
        x += s.run;
        if x > i + 1 {
            return false;
        }
        let label_ok = match (&s.label, s.run) {
            (None, 0) => true,
            (Some(l), run) if run > 0 => labels::is_composition(l, run - 1, d - 1),
            _ => false,
        };
        if !label_ok {
            return false;
        }
    }
    true
}

impl FPath {
    pub fn new(d: usize, steps: Vec<FStep>) -> Result<Self> {
        check_arity(d)?;
        if !in_f_d(&steps, d) {
            return Err(Error::not_in("F-paths", format!("{steps:?}")));
        }
        Ok(FPath { arity: d, steps })
    }

    pub(crate) fn from_valid(d: usize, steps: Vec<FStep>) -> Self {
        debug_assert!(in_f_d(&steps, d));
        FPath { arity: d, steps }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn steps(&self) -> &[FStep] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn stats(&self) -> FPathStats {
        let length = self.steps.len();
        FPathStats {
            length,
            north: self.steps.iter().filter(|s| s.run == 0).count(),
            height: length - self.steps.iter().map(|s| s.run).sum::<usize>(),
        }
    }

    /// Parses the text form; steps may be separated by spaces or commas and
    /// labels may be written `[0,2]` or `[(0,2)]`. Forced labels may be left out.
    pub fn parse(text: &str, d: usize) -> Result<Self> {
        check_arity(d)?;
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut steps = Vec::new();
        let skip = |i: &mut usize| {
            while *i < bytes.len() && (bytes[*i].is_ascii_whitespace() || bytes[*i] == b',') {
                *i += 1;
            }
        };
        loop {
            skip(&mut i);
            if i == bytes.len() {
                break;
            }
            if bytes[i] != b'(' {
                return Err(Error::syntax(i, "expected '('"));
            }
            let close = text[i..]
                .find(')')
                .map(|j| i + j)
                .ok_or_else(|| Error::syntax(i, "unterminated step"))?;
            let pair = labels::parse_int_list(&text[i + 1..close])
                .filter(|p| p.len() == 2 && p[1] == 1)
                .ok_or_else(|| Error::syntax(i, "a step reads (l,1)"))?;
            let run = pair[0];
            i = close + 1;
            let mut label = None;
            if bytes.get(i) == Some(&b'[') {
                let end = text[i..]
                    .find(']')
                    .map(|j| i + j)
                    .ok_or_else(|| Error::syntax(i, "unterminated label"))?;
                let body = text[i + 1..end].trim();
                let body = body
                    .strip_prefix('(')
                    .and_then(|b| b.strip_suffix(')'))
                    .unwrap_or(body);
                label = Some(
                    labels::parse_int_list(body)
                        .ok_or_else(|| Error::syntax(i, format!("bad label {body:?}")))?,
                );
                i = end + 1;
            }
            if label.is_none() && run > 0 {
                let mut alts = compositions(run - 1, d - 1);
                if alts.len() != 1 {
                    return Err(Error::Malformed(format!(
                        "step ({run},1) needs an explicit label"
                    )));
                }
                label = alts.pop();
            }
            steps.push(FStep { run, label });
        }
        FPath::new(d, steps)
    }

    pub fn to_json(&self) -> Value {
        json!({ "d": self.arity, "steps": self.steps })
    }

    pub fn from_json(value: &Value, d: usize) -> Result<Self> {
        let steps = value
            .get("steps")
            .cloned()
            .ok_or_else(|| Error::Malformed("missing \"steps\"".into()))?;
        let steps =
            serde_json::from_value(steps).map_err(|e| Error::Malformed(format!("steps: {e}")))?;
        FPath::new(d, steps)
    }
}

impl fmt::Display for FPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({},1)", s.run)?;
            if let (Some(l), true) = (&s.label, self.arity > 2) {
                write!(f, "[{}]", labels::join(l))?;
            }
        }
        Ok(())
    }
}

pub fn fpath_stats(f: &FPath) -> FPathStats {
    f.stats()
}

struct Search {
    d: usize,
    length: usize,
    north: usize,
    guard: usize,
    runs: Vec<usize>,
    out: Vec<FPath>,
}

impl Search {
    fn go(&mut self, x: usize, north_left: usize) -> Result<()> {
        let i = self.runs.len();
        if i == self.length {
            if north_left == 0 {
                let slots: Vec<_> = self
                    .runs
                    .iter()
                    .filter(|&&r| r > 0)
                    .map(|&r| compositions(r - 1, self.d - 1))
                    .collect();
                let total: usize = slots.iter().map(Vec::len).product();
                if self.out.len() + total > self.guard {
                    return Err(Error::GuardExceeded { limit: self.guard });
                }
                for labels in label_choices(&slots) {
                    let mut labels = labels.into_iter();
                    let steps = self
                        .runs
                        .iter()
                        .map(|&run| FStep {
                            run,
                            label: (run > 0).then(|| labels.next().unwrap()),
                        })
                        .collect();
                    self.out.push(FPath::from_valid(self.d, steps));
                }
            }
            return Ok(());
        }
        let remaining = self.length - i;
        if north_left > remaining {
            return Ok(());
        }
        if north_left > 0 {
            self.runs.push(0);
            self.go(x, north_left - 1)?;
            self.runs.pop();
        }
        if remaining > north_left {
            for run in 1..=(i + 1 - x) {
                self.runs.push(run);
                self.go(x + run, north_left)?;
                self.runs.pop();
            }
        }
        Ok(())
    }
}

/// Members of `F_d` with `n` steps, `k` of them `(0,1)`.
pub fn enumerate_f(d: usize, n: usize, k: usize) -> Result<Vec<FPath>> {
    enumerate_f_limited(d, n, k, DEFAULT_GUARD)
}

pub fn enumerate_f_limited(d: usize, n: usize, k: usize, guard: usize) -> Result<Vec<FPath>> {
    check_arity(d)?;
    if k > n {
        return Err(Error::InvalidRange(format!("k = {k} exceeds n = {n}")));
    }
    let mut search = Search {
        d,
        length: n,
        north: k,
        guard,
        runs: Vec::with_capacity(n),
        out: Vec::new(),
    };
    search.go(0, k)?;
    debug_assert!(search.out.iter().all(|f| f.stats().north == search.north));
    Ok(search.out)
}
