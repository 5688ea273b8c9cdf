//! Schröder and Dyck paths, with and without descent labels.
//!
//! Steps are `U = (1,1)`, `D = (1,-1)` and `H = (2,0)`. A [`LatticePath`]
//! always stays weakly above the x-axis and ends on it; Dyck paths are the
//! H-free ones. Step order `U < D < H` fixes every enumeration order.
//!
//! Labelled text form: each maximal descent may be followed by its label,
//! `{1,2}` for a subset label and `(1,0)` for a composition label, e.g.
//! `UUUD{}HHDD{1}H` or `UUD(0,0)UUUDDDD(1,2)UUDD`. Labels that the arity
//! forces are omitted when printing and filled in when parsing.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::labels::{self, compositions, label_choices, subsets};
use crate::{check_arity, is_one_mod, Error, Result, DEFAULT_GUARD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
    H,
}

impl Step {
    fn letter(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::H => 'H',
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub semilength: usize,
    pub up_count: usize,
    pub h_count: usize,
    pub peaks: usize,
    pub ascent_lengths: Vec<usize>,
    pub descent_lengths: Vec<usize>,
    pub uu_count: usize,
    /// H steps plus adjacent DD pairs.
    pub hdd: usize,
}

/// Maximal runs of `step` as `(start, length)`.
fn runs_of(steps: &[Step], step: Step) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < steps.len() {
        if steps[i] == step {
            let start = i;
            while i < steps.len() && steps[i] == step {
                i += 1;
            }
            out.push((start, i - start));
        } else {
            i += 1;
        }
    }
    out
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0usize;
        for (i, s) in steps.iter().enumerate() {
            match s {
                Step::U => height += 1,
                Step::D => {
                    height = height.checked_sub(1).ok_or_else(|| {
                        Error::Malformed(format!("path dips below the axis at step {i}"))
                    })?
                }
                Step::H => {}
            }
        }
        if height != 0 {
            return Err(Error::Malformed(format!("path ends at height {height}")));
        }
        Ok(LatticePath { steps })
    }

    pub(crate) fn from_valid(steps: Vec<Step>) -> Self {
        debug_assert!(LatticePath::new(steps.clone()).is_ok());
        LatticePath { steps }
    }

    /// Reads step letters; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (i, c) in text.char_indices() {
            match c {
                'U' => steps.push(Step::U),
                'D' => steps.push(Step::D),
                'H' => steps.push(Step::H),
                c if c.is_whitespace() => {}
                c => return Err(Error::syntax(i, format!("unexpected {c:?}"))),
            }
        }
        LatticePath::new(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn semilength(&self) -> usize {
        self.steps
            .iter()
            .map(|s| if *s == Step::H { 2 } else { 1 })
            .sum::<usize>()
            / 2
    }

    pub fn is_dyck(&self) -> bool {
        !self.steps.contains(&Step::H)
    }

    /// For every step, the index of its partner: the matching D of a U
    /// and vice versa. `None` for H steps.
    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.steps.len()];
        let mut open = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            match s {
                Step::U => open.push(i),
                Step::D => {
                    let u = open.pop().expect("validated path");
                    out[u] = Some(i);
                    out[i] = Some(u);
                }
                Step::H => {}
            }
        }
        out
    }

    /// Index of the down step matching the up step at `up_index`.
    pub fn matching_down(&self, up_index: usize) -> Result<usize> {
        if self.steps.get(up_index) != Some(&Step::U) {
            return Err(Error::Malformed(format!(
                "step {up_index} is not an up step"
            )));
        }
        let mut level = 0usize;
        for (i, s) in self.steps.iter().enumerate().skip(up_index) {
            match s {
                Step::U => level += 1,
                Step::D => {
                    level -= 1;
                    if level == 0 {
                        return Ok(i);
                    }
                }
                Step::H => {}
            }
        }
        unreachable!("validated paths close every up step")
    }

    /// Maximal descents as `(start, length)`.
    pub fn descents(&self) -> Vec<(usize, usize)> {
        runs_of(&self.steps, Step::D)
    }

    pub fn stats(&self) -> PathStats {
        let count = |s| self.steps.iter().filter(|x| **x == s).count();
        let pairs = |a, b| {
            self.steps
                .windows(2)
                .filter(|w| w[0] == a && w[1] == b)
                .count()
        };
        let h_count = count(Step::H);
        PathStats {
            semilength: self.semilength(),
            up_count: count(Step::U),
            h_count,
            peaks: pairs(Step::U, Step::D),
            ascent_lengths: runs_of(&self.steps, Step::U)
                .into_iter()
                .map(|r| r.1)
                .collect(),
            descent_lengths: runs_of(&self.steps, Step::D)
                .into_iter()
                .map(|r| r.1)
                .collect(),
            uu_count: pairs(Step::U, Step::U),
            hdd: h_count + pairs(Step::D, Step::D),
        }
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps
            .iter()
            .try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

/// Membership in `S_d`: nonempty, the H count is `1 mod (d-1)` overall and
/// strictly inside every matched `U ... D` pair.
pub fn in_s_d(p: &LatticePath, d: usize) -> bool {
    if d < 2 || p.is_empty() {
        return false;
    }
    let mut open: Vec<usize> = Vec::new();
    let mut total = 0;
    for s in &p.steps {
        match s {
            Step::U => open.push(0),
            Step::H => {
                total += 1;
                if let Some(top) = open.last_mut() {
                    *top += 1;
                }
            }
            Step::D => {
                let inside = open.pop().expect("validated path");
                if !is_one_mod(inside, d) {
                    return false;
                }
                if let Some(top) = open.last_mut() {
                    *top += inside;
                }
            }
        }
    }
    is_one_mod(total, d)
}

/// Membership in `Q_d`: nonempty Dyck path, every ascent `1 mod (d-1)`.
pub fn in_q_d(p: &LatticePath, d: usize) -> bool {
    d >= 2
        && !p.is_empty()
        && p.is_dyck()
        && runs_of(&p.steps, Step::U)
            .iter()
            .all(|&(_, len)| is_one_mod(len, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelKind {
    /// Every descent of length `l` carries an `(l-1)`-subset of `[d-2]`.
    Subset,
    /// Every descent but the last carries a composition of `l-1` into
    /// `d-1` parts.
    Composition,
}

impl LabelKind {
    fn family(self) -> &'static str {
        match self {
            LabelKind::Subset => "labelled Schröder paths",
            LabelKind::Composition => "labelled Dyck paths",
        }
    }

    fn alternatives(self, d: usize, descent: usize) -> Vec<Vec<usize>> {
        match self {
            LabelKind::Subset => subsets(d - 2, descent - 1),
            LabelKind::Composition => compositions(descent - 1, d - 1),
        }
    }

    fn valid(self, d: usize, descent: usize, label: &[usize]) -> bool {
        match self {
            LabelKind::Subset => labels::is_subset(label, d - 2, descent - 1),
            LabelKind::Composition => labels::is_composition(label, descent - 1, d - 1),
        }
    }

    /// Whether printed text shows labels at this arity.
    fn shown(self, d: usize) -> bool {
        match self {
            LabelKind::Subset => d > 3,
            LabelKind::Composition => d > 2,
        }
    }

    fn delimiters(self) -> (char, char) {
        match self {
            LabelKind::Subset => ('{', '}'),
            LabelKind::Composition => ('(', ')'),
        }
    }

    /// Number of labelled descents for a path with `descents` descents.
    fn labelled(self, descents: usize) -> usize {
        match self {
            LabelKind::Subset => descents,
            LabelKind::Composition => descents.saturating_sub(1),
        }
    }
}

/// A path whose maximal descents carry labels; a member of `~S_d`
/// ([`LabelKind::Subset`]) or `~Q_d` ([`LabelKind::Composition`]).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DescentLabeledPath {
    arity: usize,
    kind: LabelKind,
    base: LatticePath,
    labels: Vec<Vec<usize>>,
}

/// Membership of `(base, labels)` in `~S_d`.
pub fn in_labeled_s(base: &LatticePath, labels: &[Vec<usize>], d: usize) -> bool {
    check_labels(LabelKind::Subset, base, labels, d)
}

/// Membership of `(base, labels)` in `~Q_d`.
pub fn in_labeled_q(base: &LatticePath, labels: &[Vec<usize>], d: usize) -> bool {
    check_labels(LabelKind::Composition, base, labels, d)
}

fn check_labels(kind: LabelKind, base: &LatticePath, labels: &[Vec<usize>], d: usize) -> bool {
    if d < 2 {
        return false;
    }
    let descents = base.descents();
    match kind {
        LabelKind::Subset => {
            if descents.iter().any(|&(_, len)| len > d - 1) {
                return false;
            }
        }
        LabelKind::Composition => {
            if base.is_empty() || !base.is_dyck() {
                return false;
            }
        }
    }
    labels.len() == kind.labelled(descents.len())
        && descents
            .iter()
            .zip(labels)
            .all(|(&(_, len), label)| kind.valid(d, len, label))
}

impl DescentLabeledPath {
    pub fn new(
        d: usize,
        kind: LabelKind,
        base: LatticePath,
        labels: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_arity(d)?;
        if !check_labels(kind, &base, &labels, d) {
            return Err(Error::not_in(kind.family(), format!("{base} {labels:?}")));
        }
        Ok(DescentLabeledPath {
            arity: d,
            kind,
            base,
            labels,
        })
    }

    /// A member of `~S_d`.
    pub fn schroder(d: usize, base: LatticePath, labels: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(d, LabelKind::Subset, base, labels)
    }

    /// A member of `~Q_d`.
    pub fn dyck(d: usize, base: LatticePath, labels: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(d, LabelKind::Composition, base, labels)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> LabelKind {
        self.kind
    }

    pub fn base(&self) -> &LatticePath {
        &self.base
    }

    /// Labels of the labelled descents, left to right.
    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn stats(&self) -> PathStats {
        self.base.stats()
    }

    /// Parses the text form of a `~S_d` member.
    pub fn parse_schroder(text: &str, d: usize) -> Result<Self> {
        Self::parse(text, d, LabelKind::Subset)
    }

    /// Parses the text form of a `~Q_d` member.
    pub fn parse_dyck(text: &str, d: usize) -> Result<Self> {
        Self::parse(text, d, LabelKind::Composition)
    }

    pub fn parse(text: &str, d: usize, kind: LabelKind) -> Result<Self> {
        check_arity(d)?;
        let (open, close) = kind.delimiters();
        let mut steps = Vec::new();
        // explicit label per descent, by descent index
        let mut given: Vec<Option<Vec<usize>>> = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            match c {
                'U' | 'H' => steps.push(if c == 'U' { Step::U } else { Step::H }),
                'D' => {
                    if steps.last() != Some(&Step::D) {
                        given.push(None);
                    }
                    steps.push(Step::D);
                }
                c if c == open => {
                    if steps.last() != Some(&Step::D) {
                        return Err(Error::syntax(i, "label must follow a descent"));
                    }
                    let mut body = String::new();
                    loop {
                        match chars.next() {
                            Some((_, ch)) if ch == close => break,
                            Some((_, ch)) => body.push(ch),
                            None => return Err(Error::syntax(i, "unterminated label")),
                        }
                    }
                    let label = labels::parse_int_list(&body)
                        .ok_or_else(|| Error::syntax(i, format!("bad label {body:?}")))?;
                    let slot = given.last_mut().expect("descent was opened");
                    if slot.is_some() {
                        return Err(Error::syntax(i, "descent labelled twice"));
                    }
                    *slot = Some(label);
                    if chars.peek().is_some_and(|&(_, ch)| ch == 'D') {
                        return Err(Error::syntax(i, "label inside a descent"));
                    }
                }
                c if c.is_whitespace() => {}
                c => return Err(Error::syntax(i, format!("unexpected {c:?}"))),
            }
        }
        let base = LatticePath::new(steps)?;
        let descents = base.descents();
        let wanted = kind.labelled(descents.len());
        if kind == LabelKind::Composition && given.last().is_some_and(Option::is_some) {
            return Err(Error::syntax(text.len(), "the last descent is unlabelled"));
        }
        let mut labels = Vec::with_capacity(wanted);
        for (&(_, len), label) in descents.iter().zip(given).take(wanted) {
            match label {
                Some(l) => labels.push(l),
                None => {
                    let mut alts = if len > 0 && (kind == LabelKind::Composition || len < d) {
                        kind.alternatives(d, len)
                    } else {
                        Vec::new()
                    };
                    if alts.len() != 1 {
                        return Err(Error::Malformed(format!(
                            "descent of length {len} needs an explicit label"
                        )));
                    }
                    labels.push(alts.pop().unwrap());
                }
            }
        }
        Self::new(d, kind, base, labels)
    }

    pub fn to_json(&self) -> Value {
        json!({ "steps": self.base.to_string(), "labels": self.labels })
    }

    pub fn from_json(value: &Value, d: usize, kind: LabelKind) -> Result<Self> {
        let steps = value
            .get("steps")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Malformed("missing \"steps\" string".into()))?;
        let labels: Vec<Vec<usize>> = match value.get("labels") {
            Some(v) => serde_json::from_value(v.clone())
                .map_err(|e| Error::Malformed(format!("labels: {e}")))?,
            None => Vec::new(),
        };
        Self::new(d, kind, LatticePath::parse(steps)?, labels)
    }
}

impl fmt::Display for DescentLabeledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let steps = self.base.steps();
        let show = self.kind.shown(self.arity);
        let (open, close) = self.kind.delimiters();
        let mut descent = 0;
        for (i, s) in steps.iter().enumerate() {
            write!(f, "{}", s.letter())?;
            let ends_descent = *s == Step::D && steps.get(i + 1) != Some(&Step::D);
            if ends_descent {
                if show {
                    if let Some(label) = self.labels.get(descent) {
                        write!(f, "{open}{}{close}", labels::join(label))?;
                    }
                }
                descent += 1;
            }
        }
        Ok(())
    }
}

fn guard_check(count: usize, guard: usize) -> Result<()> {
    if count > guard {
        Err(Error::GuardExceeded { limit: guard })
    } else {
        Ok(())
    }
}

/// H steps still required so that every open `U` can close validly.
fn h_needed(open: &[usize], d: usize) -> usize {
    // `carried` is everything an open child will hand to its parent
    let (mut added, mut carried) = (0, 0);
    for &inside in open.iter().rev() {
        let have = inside + carried;
        let extra = if have == 0 {
            1
        } else {
            (d - 1 - (have - 1) % (d - 1)) % (d - 1)
        };
        added += extra;
        carried = have + extra;
    }
    added
}

struct SchroderSearch {
    d: usize,
    guard: usize,
    steps: Vec<Step>,
    open: Vec<usize>,
    ups_left: usize,
    h_left: usize,
    out: Vec<LatticePath>,
}

impl SchroderSearch {
    fn run(&mut self) -> Result<()> {
        if self.ups_left == 0 && self.h_left == 0 && self.open.is_empty() {
            self.out.push(LatticePath::from_valid(self.steps.clone()));
            return guard_check(self.out.len(), self.guard);
        }
        if h_needed(&self.open, self.d) > self.h_left {
            return Ok(());
        }
        if self.ups_left > 0 {
            self.ups_left -= 1;
            self.open.push(0);
            self.steps.push(Step::U);
            self.run()?;
            self.steps.pop();
            self.open.pop();
            self.ups_left += 1;
        }
        if let Some(&inside) = self.open.last() {
            if is_one_mod(inside, self.d) {
                self.open.pop();
                if let Some(top) = self.open.last_mut() {
                    *top += inside;
                }
                self.steps.push(Step::D);
                self.run()?;
                self.steps.pop();
                if let Some(top) = self.open.last_mut() {
                    *top -= inside;
                }
                self.open.push(inside);
            }
        }
        if self.h_left > 0 {
            self.h_left -= 1;
            if let Some(top) = self.open.last_mut() {
                *top += 1;
            }
            self.steps.push(Step::H);
            self.run()?;
            self.steps.pop();
            if let Some(top) = self.open.last_mut() {
                *top -= 1;
            }
            self.h_left += 1;
        }
        Ok(())
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k > n {
        Err(Error::InvalidRange(format!("k = {k} exceeds n = {n}")))
    } else {
        Ok(())
    }
}

/// Members of `S_d` with semilength `(n-k)(d-1) + k + 1` and `k` up steps.
pub fn enumerate_s(d: usize, n: usize, k: usize) -> Result<Vec<LatticePath>> {
    enumerate_s_limited(d, n, k, DEFAULT_GUARD)
}

pub fn enumerate_s_limited(d: usize, n: usize, k: usize, guard: usize) -> Result<Vec<LatticePath>> {
    check_arity(d)?;
    check_nk(n, k)?;
    let mut search = SchroderSearch {
        d,
        guard,
        steps: Vec::new(),
        open: Vec::new(),
        ups_left: k,
        h_left: (n - k) * (d - 1) + 1,
        out: Vec::new(),
    };
    search.run()?;
    Ok(search.out)
}

struct DyckPeakSearch {
    d: usize,
    semilength: usize,
    peaks: usize,
    guard: usize,
    steps: Vec<Step>,
    out: Vec<LatticePath>,
}

impl DyckPeakSearch {
    /// `run` is the length of the ascent in progress, 0 after a down step.
    fn go(&mut self, ups: usize, downs: usize, run: usize, seen: usize) -> Result<()> {
        if downs == self.semilength {
            if seen == self.peaks {
                self.out.push(LatticePath::from_valid(self.steps.clone()));
                guard_check(self.out.len(), self.guard)?;
            }
            return Ok(());
        }
        let pending = usize::from(run > 0);
        if seen + pending > self.peaks || seen + pending + (self.semilength - ups) < self.peaks {
            return Ok(());
        }
        if ups < self.semilength {
            self.steps.push(Step::U);
            self.go(ups + 1, downs, run + 1, seen)?;
            self.steps.pop();
        }
        if downs < ups && (run == 0 || is_one_mod(run, self.d)) {
            self.steps.push(Step::D);
            self.go(ups, downs + 1, 0, seen + pending)?;
            self.steps.pop();
        }
        Ok(())
    }
}

/// Members of `Q_d` with the given semilength and number of peaks.
pub fn enumerate_q(d: usize, semilength: usize, peaks: usize) -> Result<Vec<LatticePath>> {
    enumerate_q_limited(d, semilength, peaks, DEFAULT_GUARD)
}

pub fn enumerate_q_limited(
    d: usize,
    semilength: usize,
    peaks: usize,
    guard: usize,
) -> Result<Vec<LatticePath>> {
    check_arity(d)?;
    let mut search = DyckPeakSearch {
        d,
        semilength,
        peaks,
        guard,
        steps: Vec::with_capacity(2 * semilength),
        out: Vec::new(),
    };
    if semilength > 0 {
        search.go(0, 0, 0, 0)?;
    }
    Ok(search.out)
}

struct LabeledSchroderSearch {
    d: usize,
    semilength: usize,
    hdd: usize,
    steps: Vec<Step>,
    used: usize,
    height: usize,
    score: usize,
    run: usize,
    out: Vec<LatticePath>,
}

impl LabeledSchroderSearch {
    fn go(&mut self) {
        if self.used == self.semilength && self.height == 0 {
            if self.score == self.hdd {
                self.out.push(LatticePath::from_valid(self.steps.clone()));
            }
            return;
        }
        // every unused unit (H, or U with its D) and every pending D adds at
        // most one to hdd, except the first D of each fresh run
        let left = self.semilength - self.used;
        let room = if self.run > 0 {
            self.d - 1 - self.run
        } else {
            0
        };
        let fresh = self.height.saturating_sub(room).div_ceil(self.d - 1);
        if self.score + self.height + left - fresh < self.hdd {
            return;
        }
        let saved_run = self.run;
        if self.used < self.semilength {
            self.used += 1;
            self.height += 1;
            self.run = 0;
            self.steps.push(Step::U);
            self.go();
            self.steps.pop();
            self.height -= 1;
            self.used -= 1;
        }
        let extends = usize::from(saved_run > 0);
        if self.height > 0 && saved_run < self.d - 1 && self.score + extends <= self.hdd {
            self.height -= 1;
            self.score += extends;
            self.run = saved_run + 1;
            self.steps.push(Step::D);
            self.go();
            self.steps.pop();
            self.score -= extends;
            self.height += 1;
        }
        if self.used < self.semilength && self.score < self.hdd {
            self.used += 1;
            self.score += 1;
            self.run = 0;
            self.steps.push(Step::H);
            self.go();
            self.steps.pop();
            self.score -= 1;
            self.used -= 1;
        }
        self.run = saved_run;
    }
}

fn expand_labels(
    d: usize,
    kind: LabelKind,
    bases: Vec<LatticePath>,
    guard: usize,
) -> Result<Vec<DescentLabeledPath>> {
    let mut out = Vec::new();
    for base in bases {
        let descents = base.descents();
        let slots: Vec<Vec<Vec<usize>>> = descents
            .iter()
            .take(kind.labelled(descents.len()))
            .map(|&(_, len)| kind.alternatives(d, len))
            .collect();
        let total: usize = slots.iter().map(Vec::len).product();
        guard_check(out.len() + total, guard)?;
        for labels in label_choices(&slots) {
            out.push(DescentLabeledPath {
                arity: d,
                kind,
                base: base.clone(),
                labels,
            });
        }
    }
    Ok(out)
}

/// Members of `~S_d` with semilength `n` and `hdd = k`.
pub fn enumerate_labeled_s(d: usize, n: usize, k: usize) -> Result<Vec<DescentLabeledPath>> {
    enumerate_labeled_s_limited(d, n, k, DEFAULT_GUARD)
}

pub fn enumerate_labeled_s_limited(
    d: usize,
    n: usize,
    k: usize,
    guard: usize,
) -> Result<Vec<DescentLabeledPath>> {
    check_arity(d)?;
    check_nk(n, k)?;
    let mut search = LabeledSchroderSearch {
        d,
        semilength: n,
        hdd: k,
        steps: Vec::new(),
        used: 0,
        height: 0,
        score: 0,
        run: 0,
        out: Vec::new(),
    };
    search.go();
    expand_labels(d, LabelKind::Subset, search.out, guard)
}

/// Members of `~Q_d` with semilength `n + 1` and `k` occurrences of `UU`.
pub fn enumerate_labeled_q(d: usize, n: usize, k: usize) -> Result<Vec<DescentLabeledPath>> {
    enumerate_labeled_q_limited(d, n, k, DEFAULT_GUARD)
}

pub fn enumerate_labeled_q_limited(
    d: usize,
    n: usize,
    k: usize,
    guard: usize,
) -> Result<Vec<DescentLabeledPath>> {
    check_arity(d)?;
    check_nk(n, k)?;
    fn go(
        m: usize,
        k: usize,
        ups: usize,
        downs: usize,
        uu: usize,
        steps: &mut Vec<Step>,
        out: &mut Vec<LatticePath>,
    ) {
        if downs == m {
            if uu == k {
                out.push(LatticePath::from_valid(steps.clone()));
            }
            return;
        }
        // every remaining up step adds at most one UU
        if uu > k || uu + (m - ups) < k {
            return;
        }
        if ups < m {
            let extra = usize::from(steps.last() == Some(&Step::U));
            steps.push(Step::U);
            go(m, k, ups + 1, downs, uu + extra, steps, out);
            steps.pop();
        }
        if downs < ups {
            steps.push(Step::D);
            go(m, k, ups, downs + 1, uu, steps, out);
            steps.pop();
        }
    }
    let mut bases = Vec::new();
    go(
        n + 1,
        k,
        0,
        0,
        0,
        &mut Vec::with_capacity(2 * n + 2),
        &mut bases,
    );
    expand_labels(d, LabelKind::Composition, bases, guard)
}
