//! Label alphabets shared by the labelled families.

use itertools::Itertools;

/// All compositions of `total` into `parts` nonnegative parts, lexicographic.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// All `size`-element subsets of `{1, ..., universe}` as sorted vectors,
/// lexicographic.
pub(crate) fn subsets(universe: usize, size: usize) -> Vec<Vec<usize>> {
    (1..=universe).combinations(size).collect()
}

pub(crate) fn is_composition(label: &[usize], total: usize, parts: usize) -> bool {
    label.len() == parts && label.iter().sum::<usize>() == total
}

pub(crate) fn is_subset(label: &[usize], universe: usize, size: usize) -> bool {
    label.len() == size
        && label.iter().all(|&x| (1..=universe).contains(&x))
        && label.windows(2).all(|w| w[0] < w[1])
}

/// Cartesian product of per-slot alternatives, first slot most significant.
pub(crate) fn label_choices(slots: &[Vec<Vec<usize>>]) -> Vec<Vec<Vec<usize>>> {
    if slots.is_empty() {
        return vec![Vec::new()];
    }
    slots
        .iter()
        .map(|alts| alts.iter().cloned())
        .multi_cartesian_product()
        .collect()
}

/// Parses a comma separated integer list such as `1,2` or ` 0 , 3 `.
pub(crate) fn parse_int_list(body: &str) -> Option<Vec<usize>> {
    let body = body.trim();
    if body.is_empty() || body == "∅" {
        return Some(Vec::new());
    }
    body.split(',').map(|s| s.trim().parse().ok()).collect()
}

pub(crate) fn join(label: &[usize]) -> String {
    label.iter().join(",")
}
