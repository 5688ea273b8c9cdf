//! Brute-force generate-and-filter oracles for every enumerator.
//!
//! Each oracle builds a superset with no pruning, filters it with
//! membership tests written here from the definitions, and must agree with
//! the library enumerator as a set and with the closed-form count.

use std::collections::BTreeSet;

use itertools::Itertools;
use narayana::fpaths::enumerate_f;
use narayana::monomials::{enumerate_monomials, parse};
use narayana::numbers::narayana;
use narayana::paths::{enumerate_labeled_q, enumerate_labeled_s, enumerate_q, enumerate_s};
use narayana::permutations::enumerate_p;
use narayana::trees::{enumerate_labeled_t, enumerate_t};

fn n_dk(d: usize, n: usize, k: usize) -> usize {
    narayana(d, n, k).unwrap().to_u64().unwrap() as usize
}

fn ok_mod(len: usize, d: usize) -> bool {
    len >= 1 && (len - 1).is_multiple_of(d - 1)
}

/// Every word over `U D H` of the given semilength that never dips below
/// the axis and ends on it.
fn all_schroder(semilength: usize) -> Vec<String> {
    fn go(left: usize, height: usize, word: &mut String, out: &mut Vec<String>) {
        if left == 0 && height == 0 {
            out.push(word.clone());
        }
        if left > 0 {
            word.push('U');
            go(left - 1, height + 1, word, out);
            word.pop();
            word.push('H');
            go(left - 1, height, word, out);
            word.pop();
        }
        if height > 0 {
            word.push('D');
            go(left, height - 1, word, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    go(semilength, 0, &mut String::new(), &mut out);
    out
}

/// Step order used by the enumerators: U < D < H.
fn step_key(w: &str) -> Vec<u8> {
    w.bytes()
        .map(|c| match c {
            b'U' => 0,
            b'D' => 1,
            _ => 2,
        })
        .collect()
}

/// Words with exactly `ups` U steps and `flats` H steps that stay weakly
/// above the axis and end on it.
fn schroder_with(ups: usize, flats: usize) -> Vec<String> {
    fn go(u: usize, h: usize, height: usize, word: &mut String, out: &mut Vec<String>) {
        if u == 0 && h == 0 && height == 0 {
            out.push(word.clone());
            return;
        }
        for (c, ok) in [('U', u > 0), ('D', height > 0), ('H', h > 0)] {
            if !ok {
                continue;
            }
            word.push(c);
            match c {
                'U' => go(u - 1, h, height + 1, word, out),
                'D' => go(u, h, height - 1, word, out),
                _ => go(u, h - 1, height, word, out),
            }
            word.pop();
        }
    }
    let mut out = Vec::new();
    go(ups, flats, 0, &mut String::new(), &mut out);
    out
}

fn all_dyck(semilength: usize) -> Vec<String> {
    schroder_with(semilength, 0)
}

/// Number of `H` strictly inside each matched `U ... D`, by explicit scan.
fn h_inside_pairs(w: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &c) in w.iter().enumerate() {
        if c != b'U' {
            continue;
        }
        let mut level = 0;
        let mut hs = 0;
        for &x in &w[i..] {
            match x {
                b'U' => level += 1,
                b'D' => {
                    level -= 1;
                    if level == 0 {
                        break;
                    }
                }
                _ => hs += 1,
            }
        }
        out.push(hs);
    }
    out
}

fn runs(w: &str, c: char) -> Vec<usize> {
    w.chars()
        .chunk_by(|&x| x)
        .into_iter()
        .filter(|(x, _)| *x == c)
        .map(|(_, g)| g.count())
        .collect()
}

fn count_pairs(w: &str, pair: &str) -> usize {
    (0..w.len().saturating_sub(1))
        .filter(|&i| &w[i..i + 2] == pair)
        .count()
}

fn compositions_count(total: usize, parts: usize) -> usize {
    // C(total + parts - 1, parts - 1)
    (0..total + parts - 1).combinations(parts - 1).count()
}

fn subsets_count(universe: usize, size: usize) -> usize {
    (0..universe).combinations(size).count()
}

#[test]
fn schroder_family() {
    for d in 2..=4 {
        for n in 0..=4 {
            for k in 0..=n {
                let semi = (n - k) * (d - 1) + k + 1;
                if semi > 9 {
                    continue;
                }
                let oracle: BTreeSet<String> = all_schroder(semi)
                    .into_iter()
                    .filter(|w| {
                        w.matches('U').count() == k
                            && ok_mod(w.matches('H').count(), d)
                            && h_inside_pairs(w.as_bytes()).iter().all(|&h| ok_mod(h, d))
                    })
                    .collect();
                let got: BTreeSet<String> = enumerate_s(d, n, k)
                    .unwrap()
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                assert_eq!(got, oracle, "S d={d} n={n} k={k}");
                assert_eq!(got.len(), n_dk(d, n, k));
            }
        }
    }
}

#[test]
fn dyck_family() {
    for d in 2..=4 {
        for n in 0..=4 {
            for k in 0..=n {
                let semi = (n - k) * (d - 1) + k + 1;
                let oracle: BTreeSet<String> = all_dyck(semi)
                    .into_iter()
                    .filter(|w| {
                        count_pairs(w, "UD") == k + 1 && runs(w, 'U').iter().all(|&r| ok_mod(r, d))
                    })
                    .collect();
                let got: Vec<String> = enumerate_q(d, semi, k + 1)
                    .unwrap()
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                assert!(
                    got.windows(2).all(|w| step_key(&w[0]) < step_key(&w[1])),
                    "U < D < H order"
                );
                assert_eq!(
                    got.into_iter().collect::<BTreeSet<_>>(),
                    oracle,
                    "Q d={d} n={n} k={k}"
                );
                assert_eq!(oracle.len(), n_dk(d, n, k));
            }
        }
    }
}

/// All preorder outdegree words with `edges + 1` nodes.
fn all_trees(edges: usize) -> Vec<Vec<usize>> {
    (0..=edges)
        .map(|_| 0..=edges)
        .multi_cartesian_product()
        .filter(|w| {
            w.iter().sum::<usize>() == edges && {
                let mut open = 1i64;
                w.iter().enumerate().all(|(i, &x)| {
                    open += x as i64 - 1;
                    open > 0 || i == w.len() - 1
                }) && open == 0
            }
        })
        .collect()
}

#[test]
fn tree_family() {
    for d in 2..=4 {
        for n in 0..=3 {
            for k in 0..=n {
                let edges = (n - k) * (d - 1) + k + 1;
                if edges > 7 {
                    continue;
                }
                let oracle: BTreeSet<Vec<usize>> = all_trees(edges)
                    .into_iter()
                    .filter(|w| {
                        w.iter().filter(|&&x| x > 0).count() == k + 1
                            && w.iter().all(|&x| x == 0 || ok_mod(x, d))
                    })
                    .collect();
                let got: BTreeSet<Vec<usize>> = enumerate_t(d, edges, k + 1)
                    .unwrap()
                    .iter()
                    .map(|t| t.outdegrees().to_vec())
                    .collect();
                assert_eq!(got, oracle, "T d={d} n={n} k={k}");
                assert_eq!(got.len(), n_dk(d, n, k));
            }
        }
    }
}

#[test]
fn labelled_tree_family() {
    for d in 2..=4 {
        for n in 0..=5 {
            for k in 0..=n {
                let expected: usize = all_trees(n + 1)
                    .into_iter()
                    .filter(|w| w[0] > 0 && w.iter().filter(|&&x| x == 0).count() == k + 1)
                    .map(|w| {
                        w[1..]
                            .iter()
                            .filter(|&&x| x > 0)
                            .map(|&x| compositions_count(x - 1, d - 1))
                            .product::<usize>()
                    })
                    .sum();
                let got = enumerate_labeled_t(d, n + 1, k + 1).unwrap();
                let distinct: BTreeSet<String> = got.iter().map(|t| format!("{t:?}")).collect();
                assert_eq!(distinct.len(), got.len());
                assert_eq!(got.len(), expected, "~T d={d} n={n} k={k}");
                assert_eq!(expected, n_dk(d, n, k));
            }
        }
    }
}

fn contains_231(w: &[usize]) -> bool {
    (0..w.len())
        .tuple_combinations()
        .any(|(i, j, l)| w[l] < w[i] && w[i] < w[j])
}

fn decreasing_run_lengths(w: &[usize]) -> Vec<usize> {
    let mut out = vec![1];
    for pair in w.windows(2) {
        if pair[0] > pair[1] {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}

#[test]
fn permutation_family() {
    for d in 2..=4 {
        for n in 0..=4 {
            for k in 0..=n {
                let size = (n - k) * (d - 1) + k + 1;
                if size > 8 {
                    continue;
                }
                let oracle: BTreeSet<Vec<usize>> = (1..=size)
                    .permutations(size)
                    .filter(|w| {
                        let r = decreasing_run_lengths(w);
                        !contains_231(w) && r.len() == k + 1 && r.iter().all(|&x| ok_mod(x, d))
                    })
                    .collect();
                let got: Vec<Vec<usize>> = enumerate_p(d, size, k + 1)
                    .unwrap()
                    .iter()
                    .map(|p| p.word().to_vec())
                    .collect();
                assert!(
                    got.windows(2).all(|w| w[0] < w[1]),
                    "lexicographic and distinct"
                );
                assert_eq!(
                    got.into_iter().collect::<BTreeSet<_>>(),
                    oracle,
                    "P d={d} n={n} k={k}"
                );
                assert_eq!(oracle.len(), n_dk(d, n, k));
            }
        }
    }
}

#[test]
fn labelled_schroder_family() {
    for d in 2..=5 {
        for n in 0..=6 {
            for k in 0..=n {
                let expected: usize = all_schroder(n)
                    .into_iter()
                    .filter(|w| count_pairs(w, "DD") + w.matches('H').count() == k)
                    .map(|w| runs(&w, 'D'))
                    .filter(|r| r.iter().all(|&l| l < d))
                    .map(|r| {
                        r.iter()
                            .map(|&l| subsets_count(d - 2, l - 1))
                            .product::<usize>()
                    })
                    .sum();
                let got = enumerate_labeled_s(d, n, k).unwrap();
                assert_eq!(got.len(), expected, "~S d={d} n={n} k={k}");
                assert_eq!(expected, n_dk(d, n, k));
                assert!(got.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}

#[test]
fn labelled_dyck_family() {
    for d in 2..=5 {
        for n in 0..=6 {
            for k in 0..=n {
                let expected: usize = all_dyck(n + 1)
                    .into_iter()
                    .filter(|w| count_pairs(w, "UU") == k)
                    .map(|w| {
                        let r = runs(&w, 'D');
                        r[..r.len() - 1]
                            .iter()
                            .map(|&l| compositions_count(l - 1, d - 1))
                            .product::<usize>()
                    })
                    .sum();
                let got = enumerate_labeled_q(d, n, k).unwrap();
                assert_eq!(got.len(), expected, "~Q d={d} n={n} k={k}");
                assert_eq!(expected, n_dk(d, n, k));
                assert!(got.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}

#[test]
fn fpath_family() {
    for d in 2..=4 {
        for n in 0..=6 {
            for k in 0..=n {
                // every run sequence, filtered by the diagonal condition
                let expected: usize = (0..n)
                    .map(|_| 0..=n)
                    .multi_cartesian_product()
                    .filter(|runs| {
                        runs.iter().filter(|&&r| r == 0).count() == k
                            && runs
                                .iter()
                                .scan(0, |x, &r| {
                                    *x += r;
                                    Some(*x)
                                })
                                .enumerate()
                                .all(|(i, x)| x <= i + 1)
                    })
                    .map(|runs| {
                        runs.iter()
                            .filter(|&&r| r > 0)
                            .map(|&r| compositions_count(r - 1, d - 1))
                            .product::<usize>()
                    })
                    .sum();
                let got = enumerate_f(d, n, k).unwrap();
                assert_eq!(got.len(), expected, "F d={d} n={n} k={k}");
                assert_eq!(expected, n_dk(d, n, k));
            }
        }
    }
}

#[test]
fn monomial_family() {
    // token words: U -> "L(", H -> an indeterminate, D -> ")"
    for d in 2..=4 {
        for n in 0..=4 {
            for k in 0..=n {
                let deg = (n - k) * (d - 1) + 1;
                let oracle: BTreeSet<String> = schroder_with(k, deg)
                    .into_iter()
                    .filter_map(|w| {
                        let mut text = String::new();
                        let mut next = 1;
                        for c in w.chars() {
                            match c {
                                'U' => text.push_str("L("),
                                'D' => text.push(')'),
                                _ => {
                                    text.push_str(&format!("a{next}"));
                                    next += 1;
                                }
                            }
                        }
                        let m = parse(&text, d).ok()?;
                        let s = m.stats();
                        (s.topt == n && s.lopt == k).then(|| m.to_string())
                    })
                    .collect();
                let got: Vec<String> = enumerate_monomials(d, n, k)
                    .unwrap()
                    .iter()
                    .map(|m| m.to_string())
                    .collect();
                assert!(
                    got.windows(2).all(|w| w[0] < w[1]),
                    "sorted by canonical string"
                );
                assert_eq!(
                    got.into_iter().collect::<BTreeSet<_>>(),
                    oracle,
                    "M d={d} n={n} k={k}"
                );
                assert_eq!(oracle.len(), n_dk(d, n, k));
            }
        }
    }
}
