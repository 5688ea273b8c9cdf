//! The bijections `f1`..`f8` between the families and their inverses,
//! plus the arity-changing injections between `M_2` and `M_d`.
//!
//! ```text
//!   M_d --f1--> S_d          M_d --f5--> ~S_d
//!   M_d --f2--> T_d --f3--> Q_d --f4--> P_d
//!   M_d --f6--> F_d --f7--> ~Q_d --f8--> ~T_d
//! ```
//!
//! Every inverse finishes by mapping its result forward again and rejects
//! the input unless it is reproduced.

use crate::fpaths::{FPath, FStep};
use crate::monomials::{Factor, Monomial};
use crate::paths::{in_q_d, in_s_d, DescentLabeledPath, LabelKind, LatticePath, Step};
use crate::permutations::{in_p_d, Permutation};
use crate::trees::{in_t_d, LabeledOrderedTree, OrderedTree};
use crate::{check_arity, Error, Result};

fn reproduced<T: PartialEq + ToString>(
    input: &T,
    again: Result<T>,
    family: &'static str,
) -> Result<()> {
    match again {
        Ok(ref x) if x == input => Ok(()),
        _ => Err(Error::not_in(family, input.to_string())),
    }
}

fn same_arity(found: usize, d: usize, family: &'static str, object: String) -> Result<()> {
    check_arity(d)?;
    if found == d {
        Ok(())
    } else {
        Err(Error::not_in(
            family,
            format!("{object} (arity {found}, expected {d})"),
        ))
    }
}

/// `L(` becomes `U`, each indeterminate `H`, and `)` becomes `D`.
pub fn f1(m: &Monomial) -> LatticePath {
    fn emit(fs: &[Factor], out: &mut Vec<Step>) {
        for f in fs {
            match f {
                Factor::Leaf => out.push(Step::H),
                Factor::Lin(inner) => {
                    out.push(Step::U);
                    emit(inner, out);
                    out.push(Step::D);
                }
            }
        }
    }
    let mut steps = Vec::new();
    emit(m.factors(), &mut steps);
    LatticePath::from_valid(steps)
}

pub fn f1_inv(p: &LatticePath, d: usize) -> Result<Monomial> {
    check_arity(d)?;
    if !in_s_d(p, d) {
        return Err(Error::not_in("S_d", p.to_string()));
    }
    fn read(steps: &[Step], at: &mut usize) -> Vec<Factor> {
        let mut out = Vec::new();
        while let Some(s) = steps.get(*at) {
            *at += 1;
            match s {
                Step::H => out.push(Factor::Leaf),
                Step::U => out.push(Factor::Lin(read(steps, at))),
                Step::D => break,
            }
        }
        out
    }
    Monomial::new(d, read(p.steps(), &mut 0))
}

/// A product of `l` factors becomes a root of outdegree `l`; an
/// indeterminate becomes a leaf and `L(M')` the subtree of `M'`.
pub fn f2(m: &Monomial) -> OrderedTree {
    fn emit(fs: &[Factor], out: &mut Vec<usize>) {
        out.push(fs.len());
        for f in fs {
            match f {
                Factor::Leaf => out.push(0),
                Factor::Lin(inner) => emit(inner, out),
            }
        }
    }
    let mut word = Vec::new();
    emit(m.factors(), &mut word);
    OrderedTree::from_valid(word)
}

pub fn f2_inv(t: &OrderedTree, d: usize) -> Result<Monomial> {
    check_arity(d)?;
    if !in_t_d(t, d) {
        return Err(Error::not_in("T_d", t.to_string()));
    }
    fn read(word: &[usize], at: &mut usize) -> Vec<Factor> {
        let degree = word[*at];
        *at += 1;
        (0..degree)
            .map(|_| {
                if word[*at] == 0 {
                    *at += 1;
                    Factor::Leaf
                } else {
                    Factor::Lin(read(word, at))
                }
            })
            .collect()
    }
    Monomial::new(d, read(t.outdegrees(), &mut 0))
}

/// Preorder outdegrees `(j1, ..., j_{n-1}, 0)` give `U^j1 D ... U^j_{n-1} D`.
pub fn f3(t: &OrderedTree) -> LatticePath {
    let word = t.outdegrees();
    let mut steps = Vec::with_capacity(2 * word.len());
    for &j in &word[..word.len() - 1] {
        steps.extend(std::iter::repeat_n(Step::U, j));
        steps.push(Step::D);
    }
    LatticePath::from_valid(steps)
}

pub fn f3_inv(p: &LatticePath, d: usize) -> Result<OrderedTree> {
    check_arity(d)?;
    if !in_q_d(p, d) {
        return Err(Error::not_in("Q_d", p.to_string()));
    }
    let mut word = Vec::new();
    let mut ups = 0;
    for s in p.steps() {
        match s {
            Step::U => ups += 1,
            _ => word.push(std::mem::take(&mut ups)),
        }
    }
    word.push(0);
    OrderedTree::new(word)
}

/// `P_i = j` when the `j`-th down step matches the `i`-th up step.
pub fn f4(p: &LatticePath) -> Result<Permutation> {
    if !p.is_dyck() {
        return Err(Error::not_in("Dyck paths", p.to_string()));
    }
    let mut word = vec![0; p.semilength()];
    let mut open = Vec::new();
    let (mut ups, mut downs) = (0, 0);
    for s in p.steps() {
        if *s == Step::U {
            ups += 1;
            open.push(ups);
        } else {
            downs += 1;
            word[open.pop().expect("validated path") - 1] = downs;
        }
    }
    Ok(Permutation::from_valid(word))
}

/// Replays the matching as a stack: up steps push `1..n`, and the `j`-th
/// down step must pop `P^{-1}(j)`.
pub fn f4_inv(q: &Permutation, d: usize) -> Result<LatticePath> {
    check_arity(d)?;
    if !in_p_d(q, d) {
        return Err(Error::not_in("P_d", q.to_string()));
    }
    let order = q.inverse();
    let order = order.word();
    let mut steps = Vec::with_capacity(2 * order.len());
    let mut stack = Vec::new();
    let mut next = 0;
    for up in 1..=order.len() {
        stack.push(up);
        steps.push(Step::U);
        while next < order.len() && stack.last() == Some(&order[next]) {
            stack.pop();
            steps.push(Step::D);
            next += 1;
        }
    }
    if !stack.is_empty() {
        return Err(Error::not_in("P_d", q.to_string()));
    }
    LatticePath::new(steps)
}

/// Splits a product into `M_0` (all but the last `d - 1` factors) and the
/// trailing irreducible factors `M_1, ..., M_{d-1}`.
fn split_product(fs: &[Factor], d: usize) -> (&[Factor], &[Factor]) {
    fs.split_at(fs.len() - (d - 1))
}

pub fn f5(m: &Monomial) -> DescentLabeledPath {
    let d = m.arity();
    fn emit(fs: &[Factor], d: usize, steps: &mut Vec<Step>, labels: &mut Vec<Vec<usize>>) {
        match fs {
            [Factor::Leaf] => {}
            [Factor::Lin(inner)] => {
                emit(inner, d, steps, labels);
                steps.push(Step::H);
            }
            _ => {
                let (head, tail) = split_product(fs, d);
                emit(head, d, steps, labels);
                let mut marked = Vec::new();
                for (i, f) in tail[..d - 2].iter().enumerate() {
                    if let Factor::Lin(inner) = f {
                        steps.push(Step::U);
                        emit(inner, d, steps, labels);
                        marked.push(i + 1);
                    }
                }
                steps.push(Step::U);
                emit(std::slice::from_ref(&tail[d - 2]), d, steps, labels);
                steps.extend(std::iter::repeat_n(Step::D, marked.len() + 1));
                labels.push(marked);
            }
        }
    }
    let (mut steps, mut labels) = (Vec::new(), Vec::new());
    emit(m.factors(), d, &mut steps, &mut labels);
    DescentLabeledPath::schroder(d, LatticePath::from_valid(steps), labels)
        .expect("f5 lands in the labelled Schröder family")
}

pub fn f5_inv(s: &DescentLabeledPath, d: usize) -> Result<Monomial> {
    same_arity(s.arity(), d, "labelled Schröder paths", s.to_string())?;
    if s.kind() != LabelKind::Subset {
        return Err(Error::not_in("labelled Schröder paths", s.to_string()));
    }
    let steps = s.base().steps();
    let partners = s.base().partners();
    // label of the descent ending at each index
    let mut label_at: Vec<Option<&[usize]>> = vec![None; steps.len()];
    for ((start, len), label) in s.base().descents().into_iter().zip(s.labels()) {
        label_at[start + len - 1] = Some(label);
    }

    struct Ctx<'a> {
        d: usize,
        steps: &'a [Step],
        partners: &'a [Option<usize>],
        label_at: &'a [Option<&'a [usize]>],
    }
    fn read(cx: &Ctx, a: usize, b: usize) -> Option<Vec<Factor>> {
        if a == b {
            return Some(vec![Factor::Leaf]);
        }
        if cx.steps[b - 1] == Step::H {
            return Some(vec![Factor::Lin(read(cx, a, b - 1)?)]);
        }
        let mut start = b;
        while start > a && cx.steps[start - 1] == Step::D {
            start -= 1;
        }
        let len = b - start;
        let marked = cx.label_at[b - 1]?;
        // ups[j] opens the down step at b - 1 - j
        let ups: Vec<usize> = (0..len)
            .map(|j| cx.partners[b - 1 - j])
            .collect::<Option<_>>()?;
        if ups[0] < a || marked.len() + 1 != len {
            return None;
        }
        let piece = |j: usize| {
            let end = if j + 1 < len { ups[j + 1] } else { start };
            read(cx, ups[j] + 1, end)
        };
        let mut out = read(cx, a, ups[0])?;
        let mut j = 0;
        for i in 1..=cx.d - 2 {
            if marked.get(j) == Some(&i) {
                out.push(Factor::Lin(piece(j)?));
                j += 1;
            } else {
                out.push(Factor::Leaf);
            }
        }
        let last = piece(len - 1)?;
        if last.len() != 1 {
            return None;
        }
        out.extend(last);
        Some(out)
    }

    let cx = Ctx {
        d,
        steps,
        partners: &partners,
        label_at: &label_at,
    };
    let factors = read(&cx, 0, steps.len())
        .ok_or_else(|| Error::not_in("labelled Schröder paths", s.to_string()))?;
    let m = Monomial::new(d, factors)?;
    reproduced(s, Ok(f5(&m)), "labelled Schröder paths")?;
    Ok(m)
}

pub fn f6(m: &Monomial) -> FPath {
    let d = m.arity();
    fn emit(fs: &[Factor], d: usize, out: &mut Vec<FStep>) {
        match fs {
            [Factor::Leaf] => {}
            [Factor::Lin(inner)] => {
                emit(inner, d, out);
                out.push(FStep::north());
            }
            _ => {
                let (head, tail) = split_product(fs, d);
                emit(head, d, out);
                let mut label = Vec::with_capacity(d - 1);
                for f in tail {
                    label.push(f.lofi());
                    if let Factor::Lin(inner) = f {
                        out.push(FStep::north());
                        emit(inner, d, out);
                    }
                }
                out.push(FStep::new(1 + label.iter().sum::<usize>(), label));
            }
        }
    }
    let mut steps = Vec::new();
    emit(m.factors(), d, &mut steps);
    FPath::from_valid(d, steps)
}

pub fn f6_inv(f: &FPath, d: usize) -> Result<Monomial> {
    same_arity(f.arity(), d, "F-paths", f.to_string())?;
    fn height(steps: &[FStep]) -> usize {
        steps.len() - steps.iter().map(|s| s.run).sum::<usize>()
    }
    fn read(steps: &[FStep], d: usize) -> Option<Vec<Factor>> {
        let Some((last, rest)) = steps.split_last() else {
            return Some(vec![Factor::Leaf]);
        };
        let Some(label) = &last.label else {
            return Some(vec![Factor::Lin(read(rest, d)?)]);
        };
        // heights[t] is the height before step t of `rest`
        let mut heights = Vec::with_capacity(rest.len() + 1);
        heights.push(0usize);
        for s in rest {
            heights.push((heights.last().unwrap() + 1).checked_sub(s.run)?);
        }
        let mut level = height(steps);
        let mut starts = Vec::with_capacity(d - 1);
        for &part in label {
            if part == 0 {
                starts.push(None);
                continue;
            }
            let t = (0..rest.len())
                .rev()
                .find(|&t| rest[t].run == 0 && heights[t] == level)?;
            starts.push(Some(t));
            level += part;
        }
        let cuts: Vec<usize> = starts.iter().flatten().copied().collect();
        if cuts.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        let mut out = read(&rest[..cuts.first().copied().unwrap_or(rest.len())], d)?;
        let mut c = 0;
        for start in &starts {
            match start {
                None => out.push(Factor::Leaf),
                Some(t) => {
                    let end = cuts.get(c + 1).copied().unwrap_or(rest.len());
                    out.push(Factor::Lin(read(&rest[t + 1..end], d)?));
                    c += 1;
                }
            }
        }
        Some(out)
    }
    let factors = read(f.steps(), d).ok_or_else(|| Error::not_in("F-paths", f.to_string()))?;
    let m = Monomial::new(d, factors).map_err(|_| Error::not_in("F-paths", f.to_string()))?;
    reproduced(f, Ok(f6(&m)), "F-paths")?;
    Ok(m)
}

/// `(l1,1)...(ln,1)` becomes `U D^l1 ... U D^ln U D^(n+1-sum)`.
pub fn f7(f: &FPath) -> DescentLabeledPath {
    let d = f.arity();
    let mut steps = Vec::new();
    let mut labels = Vec::new();
    for s in f.steps() {
        steps.push(Step::U);
        steps.extend(std::iter::repeat_n(Step::D, s.run));
        labels.extend(s.label.clone());
    }
    steps.push(Step::U);
    steps.extend(std::iter::repeat_n(Step::D, f.stats().height + 1));
    DescentLabeledPath::dyck(d, LatticePath::from_valid(steps), labels)
        .expect("f7 lands in the labelled Dyck family")
}

/// Down-run lengths after each up step, final run included.
fn runs_after_ups(p: &LatticePath) -> Vec<usize> {
    let mut runs = Vec::new();
    for s in p.steps() {
        match s {
            Step::U => runs.push(0),
            _ => *runs.last_mut().expect("Dyck paths start with U") += 1,
        }
    }
    runs
}

pub fn f7_inv(q: &DescentLabeledPath, d: usize) -> Result<FPath> {
    same_arity(q.arity(), d, "labelled Dyck paths", q.to_string())?;
    if q.kind() != LabelKind::Composition {
        return Err(Error::not_in("labelled Dyck paths", q.to_string()));
    }
    let mut runs = runs_after_ups(q.base());
    runs.pop();
    let mut labels = q.labels().iter().cloned();
    let steps = runs
        .into_iter()
        .map(|run| FStep {
            run,
            label: if run > 0 { labels.next() } else { None },
        })
        .collect();
    FPath::new(d, steps)
}

/// Down runs `(l1, ..., ln)` become the preorder word `(ln, ..., l1, 0)`;
/// labels travel with their runs, so their order reverses.
pub fn f8(q: &DescentLabeledPath) -> LabeledOrderedTree {
    let mut word = runs_after_ups(q.base());
    word.reverse();
    word.push(0);
    let labels = q.labels().iter().rev().cloned().collect();
    LabeledOrderedTree::new(q.arity(), OrderedTree::from_valid(word), labels)
        .expect("f8 lands in the labelled tree family")
}

pub fn f8_inv(t: &LabeledOrderedTree, d: usize) -> Result<DescentLabeledPath> {
    same_arity(t.arity(), d, "labelled trees", t.to_string())?;
    let word = t.tree().outdegrees();
    let mut steps = Vec::new();
    for &run in word[..word.len() - 1].iter().rev() {
        steps.push(Step::U);
        steps.extend(std::iter::repeat_n(Step::D, run));
    }
    let base =
        LatticePath::new(steps).map_err(|_| Error::not_in("labelled trees", t.to_string()))?;
    let labels = t.labels().iter().rev().cloned().collect();
    DescentLabeledPath::dyck(d, base, labels)
}

/// Embeds `M_2` into `M_d`: every factor list gains `d - 2` fresh
/// indeterminates in front of each factor after the first. Both `topt` and
/// `lopt` are preserved.
pub fn inject_2_to_d(m: &Monomial, d: usize) -> Result<Monomial> {
    check_arity(d)?;
    same_arity(m.arity(), 2, "M_2", m.to_string())?;
    fn widen(fs: &[Factor], pad: usize) -> Vec<Factor> {
        let mut out = Vec::with_capacity(fs.len() * (pad + 1));
        for (i, f) in fs.iter().enumerate() {
            if i > 0 {
                out.extend(std::iter::repeat_n(Factor::Leaf, pad));
            }
            out.push(match f {
                Factor::Leaf => Factor::Leaf,
                Factor::Lin(inner) => Factor::Lin(widen(inner, pad)),
            });
        }
        out
    }
    Monomial::new(d, widen(m.factors(), d - 2))
}

/// Reads a `d`-ary monomial with a binary product; `topt` becomes
/// `(topt - lopt)(d - 1) + lopt`.
pub fn reparse_d_to_2(m: &Monomial) -> Monomial {
    Monomial::from_valid(2, m.factors().to_vec())
}
