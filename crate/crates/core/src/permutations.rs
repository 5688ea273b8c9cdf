//! Permutations, 231-avoidance and decreasing runs.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::{check_arity, is_one_mod, Error, Result, DEFAULT_GUARD};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Malformed(format!("{word:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_valid(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    /// Digits (`"54123"`) or whitespace/comma separated values.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let word = if text.contains(|c: char| c.is_whitespace() || c == ',') {
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::syntax(0, format!("bad entry {t:?}")))
                })
                .collect::<Result<Vec<usize>>>()?
        } else {
            text.char_indices()
                .map(|(i, c)| {
                    c.to_digit(10)
                        .map(|v| v as usize)
                        .ok_or_else(|| Error::syntax(i, format!("unexpected {c:?}")))
                })
                .collect::<Result<Vec<usize>>>()?
        };
        Permutation::new(word)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.word.len()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    pub fn to_json(&self) -> Value {
        json!({ "word": self.word })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let word = value
            .get("word")
            .cloned()
            .ok_or_else(|| Error::Malformed("missing \"word\"".into()))?;
        Permutation::new(
            serde_json::from_value(word).map_err(|e| Error::Malformed(format!("word: {e}")))?,
        )
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.len() <= 9 {
            write!(f, "{}", self.word.iter().join(""))
        } else {
            write!(f, "{}", self.word.iter().join(" "))
        }
    }
}

/// Brute force over all index subsets of the pattern's size.
pub fn contains_pattern(p: &Permutation, pattern: &Permutation) -> bool {
    let k = pattern.len();
    (0..p.len()).combinations(k).any(|idx| {
        (0..k).all(|a| {
            (0..k).all(|b| (p.word[idx[a]] < p.word[idx[b]]) == (pattern.word[a] < pattern.word[b]))
        })
    })
}

/// Linear-time 231 test: any entry below an earlier entry that was
/// already followed by something larger completes a 231.
pub fn avoids_231(p: &Permutation) -> bool {
    let mut stack: Vec<usize> = Vec::new();
    let mut floor = 0;
    for &x in &p.word {
        if x < floor {
            return false;
        }
        while let Some(&top) = stack.last() {
            if top >= x {
                break;
            }
            floor = stack.pop().unwrap();
        }
        stack.push(x);
    }
    true
}

/// Maximal contiguous strictly decreasing blocks.
pub fn decreasing_runs(p: &Permutation) -> Vec<Vec<usize>> {
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for &x in &p.word {
        match runs.last_mut() {
            Some(run) if *run.last().unwrap() > x => run.push(x),
            _ => runs.push(vec![x]),
        }
    }
    runs
}

/// Membership in `P_d`: nonempty, 231-avoiding, every decreasing run of
/// length `1 mod (d-1)`.
pub fn in_p_d(p: &Permutation, d: usize) -> bool {
    d >= 2
        && !p.is_empty()
        && avoids_231(p)
        && decreasing_runs(p).iter().all(|r| is_one_mod(r.len(), d))
}

/// `(size, runs, first-run residue)`.
type Key = (usize, usize, usize);

/// 231-avoiding words split as `alpha m beta` with `alpha < beta`
/// entrywise; `m` joins the first run of `beta`, or forms a run of its own.
/// `key = (size, runs, first)` selects words whose first decreasing run
/// has length `= first (mod d-1)` and whose other runs are `1 mod (d-1)`.
struct Decomposition {
    q: usize,
    counts: HashMap<Key, u128>,
    words: HashMap<Key, Rc<Vec<Vec<usize>>>>,
}

impl Decomposition {
    fn new(d: usize) -> Self {
        Decomposition {
            q: d - 1,
            counts: HashMap::new(),
            words: HashMap::new(),
        }
    }

    /// The `(alpha, beta)` shapes making up a key, with `beta = None` when
    /// `m` is last. `alpha` of size 0 is encoded as `None`.
    fn parts(&self, (m, r, f): Key) -> Vec<(Option<Key>, Option<Key>)> {
        let q = self.q;
        let mut out = Vec::new();
        if m == 0 || r == 0 || r > m {
            return out;
        }
        if m == 1 {
            if r == 1 && 1 % q == f {
                out.push((None, None));
            }
            return out;
        }
        out.push((None, Some((m - 1, r, (f + q - 1) % q))));
        for j in 1..m {
            let rest = m - 1 - j;
            for ra in 1..=r.min(j) {
                if rest == 0 {
                    if ra + 1 == r {
                        out.push((Some((j, ra, f)), None));
                    }
                } else if r > ra {
                    out.push((Some((j, ra, f)), Some((rest, r - ra, 0))));
                }
            }
        }
        out
    }

    fn count(&mut self, key: Key) -> u128 {
        if let Some(&c) = self.counts.get(&key) {
            return c;
        }
        let mut total: u128 = 0;
        for (alpha, beta) in self.parts(key) {
            let a = alpha.map_or(1, |k| self.count(k));
            let b = beta.map_or(1, |k| self.count(k));
            total = total.saturating_add(a.saturating_mul(b));
        }
        self.counts.insert(key, total);
        total
    }

    fn words(&mut self, key: Key) -> Rc<Vec<Vec<usize>>> {
        if let Some(w) = self.words.get(&key) {
            return Rc::clone(w);
        }
        let m = key.0;
        let mut out = Vec::new();
        for (alpha, beta) in self.parts(key) {
            if alpha.map_or(1, |k| self.count(k)) == 0 || beta.map_or(1, |k| self.count(k)) == 0 {
                continue;
            }
            let empty = Rc::new(vec![Vec::new()]);
            let left = alpha.map_or_else(|| Rc::clone(&empty), |k| self.words(k));
            let right = beta.map_or_else(|| Rc::clone(&empty), |k| self.words(k));
            let shift = alpha.map_or(0, |k| k.0);
            for a in left.iter() {
                for b in right.iter() {
                    let mut w = Vec::with_capacity(m);
                    w.extend_from_slice(a);
                    w.push(m);
                    w.extend(b.iter().map(|x| x + shift));
                    out.push(w);
                }
            }
        }
        let out = Rc::new(out);
        self.words.insert(key, Rc::clone(&out));
        out
    }
}

/// Members of `P_d` on `[size]` with the given number of decreasing runs,
/// in lexicographic order.
pub fn enumerate_p(d: usize, size: usize, runs: usize) -> Result<Vec<Permutation>> {
    enumerate_p_limited(d, size, runs, DEFAULT_GUARD)
}

pub fn enumerate_p_limited(
    d: usize,
    size: usize,
    runs: usize,
    guard: usize,
) -> Result<Vec<Permutation>> {
    check_arity(d)?;
    if size == 0 || runs == 0 {
        return Ok(Vec::new());
    }
    let mut dec = Decomposition::new(d);
    let key = (size, runs, 1 % (d - 1));
    if dec.count(key) > guard as u128 {
        return Err(Error::GuardExceeded { limit: guard });
    }
    let mut words = dec.words(key).as_ref().clone();
    words.sort_unstable();
    Ok(words.into_iter().map(Permutation::from_valid).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn pattern_examples() {
        let p231 = perm("231");
        assert!(contains_pattern(&perm("43521"), &p231));
        assert!(!contains_pattern(&perm("12345"), &p231));
        assert!(contains_pattern(&p231, &p231));
        assert!(!avoids_231(&perm("43521")));
        assert!(avoids_231(&perm("12345")));
    }

    #[test]
    fn runs_examples() {
        assert_eq!(
            decreasing_runs(&perm("314652")),
            vec![vec![3, 1], vec![4], vec![6, 5, 2]]
        );
        assert_eq!(decreasing_runs(&perm("54321")).len(), 1);
        assert_eq!(decreasing_runs(&perm("12345")).len(), 5);
    }

    #[test]
    fn membership() {
        assert!(in_p_d(&perm("15423"), 3));
        assert!(!in_p_d(&perm("21"), 3));
        for d in 2..=5 {
            assert!(!in_p_d(&perm("231"), d));
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(perm("54123").to_string(), "54123");
        let long = Permutation::new((1..=11).rev().collect()).unwrap();
        assert_eq!(long.to_string(), "11 10 9 8 7 6 5 4 3 2 1");
        assert_eq!(Permutation::parse(&long.to_string()).unwrap(), long);
        assert!(Permutation::parse("1223").is_err());
        assert!(Permutation::parse("13").is_err());
        assert_eq!(perm("2 3 1").inverse(), perm("312"));
    }

    #[test]
    fn enumerate_ternary_perms_of_five() {
        let all: Vec<String> = (1..=5)
            .flat_map(|r| enumerate_p(3, 5, r).unwrap())
            .map(|p| p.to_string())
            .sorted()
            .collect();
        let expected = [
            "12345", "12543", "14325", "15324", "15423", "32145", "42135", "43125", "52134",
            "53124", "54123", "54321",
        ];
        assert_eq!(all, expected);
        // odd run lengths only, so an even number of runs is impossible
        assert!(enumerate_p(3, 5, 2).unwrap().is_empty());
        let three = enumerate_p(3, 5, 3).unwrap();
        assert_eq!(
            three.len() as u64,
            crate::numbers::narayana(3, 3, 2).unwrap().to_u64().unwrap()
        );
        assert_eq!(enumerate_p(4, 1, 1).unwrap(), vec![perm("1")]);
    }
}
