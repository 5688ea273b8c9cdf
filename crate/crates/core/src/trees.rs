//! Ordered rooted trees encoded by their preorder outdegree words.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use serde_json::{json, Value};

use crate::labels::{self, compositions, label_choices};
use crate::{check_arity, is_one_mod, Error, Result, DEFAULT_GUARD};

/// An ordered tree as its preorder outdegree sequence, e.g. `[2, 0, 1, 0]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedTree {
    outdegrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeStats {
    pub edges: usize,
    pub internal_nodes: usize,
    pub leaves: usize,
    pub outdegrees: Vec<usize>,
}

/// Splits on whitespace and commas, tolerating one pair of outer parentheses.
fn parse_word(text: &str) -> Result<Vec<usize>> {
    let body = text.trim();
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .unwrap_or(body);
    body.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::syntax(0, format!("bad outdegree {t:?}")))
        })
        .collect()
}

impl OrderedTree {
    pub fn new(outdegrees: Vec<usize>) -> Result<Self> {
        // open = number of child slots not yet filled
        let mut open = 1usize;
        for (i, &deg) in outdegrees.iter().enumerate() {
            if open == 0 {
                return Err(Error::Malformed(format!(
                    "outdegree word closes before position {i}"
                )));
            }
            open = open - 1 + deg;
        }
        if open != 0 || outdegrees.is_empty() {
            return Err(Error::Malformed(format!(
                "outdegree word {outdegrees:?} does not describe a tree"
            )));
        }
        Ok(OrderedTree { outdegrees })
    }

    pub(crate) fn from_valid(outdegrees: Vec<usize>) -> Self {
        debug_assert!(OrderedTree::new(outdegrees.clone()).is_ok());
        OrderedTree { outdegrees }
    }

    pub fn parse(text: &str) -> Result<Self> {
        OrderedTree::new(parse_word(text)?)
    }

    pub fn outdegrees(&self) -> &[usize] {
        &self.outdegrees
    }

    pub fn node_count(&self) -> usize {
        self.outdegrees.len()
    }

    /// Preorder indices of each node's children.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let n = self.outdegrees.len();
        let mut kids = vec![Vec::new(); n];
        // stack of (node, children still expected)
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            if let Some(top) = stack.last_mut() {
                kids[top.0].push(i);
                top.1 -= 1;
                if top.1 == 0 {
                    stack.pop();
                }
            }
            if self.outdegrees[i] > 0 {
                stack.push((i, self.outdegrees[i]));
            }
        }
        kids
    }

    pub fn stats(&self) -> TreeStats {
        let internal = self.outdegrees.iter().filter(|&&x| x > 0).count();
        TreeStats {
            edges: self.outdegrees.len() - 1,
            internal_nodes: internal,
            leaves: self.outdegrees.len() - internal,
            outdegrees: self.outdegrees.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "outdegrees": self.outdegrees })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let word = value
            .get("outdegrees")
            .cloned()
            .ok_or_else(|| Error::Malformed("missing \"outdegrees\"".into()))?;
        let word = serde_json::from_value(word)
            .map_err(|e| Error::Malformed(format!("outdegrees: {e}")))?;
        OrderedTree::new(word)
    }
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.outdegrees.iter().join(" "))
    }
}

pub fn tree_stats(t: &OrderedTree) -> TreeStats {
    t.stats()
}

/// Membership in `T_d`: some internal node, every nonzero outdegree
/// `1 mod (d-1)`.
pub fn in_t_d(t: &OrderedTree, d: usize) -> bool {
    d >= 2
        && t.outdegrees.iter().any(|&x| x > 0)
        && t.outdegrees.iter().all(|&x| x == 0 || is_one_mod(x, d))
}

/// A tree whose root is internal and whose other internal nodes carry a
/// composition of `outdegree - 1` into `d - 1` parts, in preorder.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledOrderedTree {
    arity: usize,
    tree: OrderedTree,
    labels: Vec<Vec<usize>>,
}

/// Outdegrees of the non-root internal nodes, in preorder.
fn labelled_degrees(t: &OrderedTree) -> impl Iterator<Item = usize> + '_ {
    t.outdegrees.iter().skip(1).copied().filter(|&x| x > 0)
}

pub fn in_labeled_t(t: &OrderedTree, labels: &[Vec<usize>], d: usize) -> bool {
    d >= 2
        && t.outdegrees[0] > 0
        && labelled_degrees(t).count() == labels.len()
        && labelled_degrees(t)
            .zip(labels)
            .all(|(deg, l)| labels::is_composition(l, deg - 1, d - 1))
}

impl LabeledOrderedTree {
    pub fn new(d: usize, tree: OrderedTree, labels: Vec<Vec<usize>>) -> Result<Self> {
        check_arity(d)?;
        if !in_labeled_t(&tree, &labels, d) {
            return Err(Error::not_in(
                "labelled trees",
                format!("{tree} {labels:?}"),
            ));
        }
        Ok(LabeledOrderedTree {
            arity: d,
            tree,
            labels,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tree(&self) -> &OrderedTree {
        &self.tree
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn stats(&self) -> TreeStats {
        self.tree.stats()
    }

    /// Reads `"2 1 0 0;(0,0)"`; forced labels may be omitted.
    pub fn parse(text: &str, d: usize) -> Result<Self> {
        check_arity(d)?;
        let mut parts = text.split(';');
        let tree = OrderedTree::parse(parts.next().unwrap_or(""))?;
        let mut given = Vec::new();
        for part in parts {
            let body = part.trim();
            let inner = body
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| Error::syntax(0, format!("bad label {body:?}")))?;
            given.push(
                labels::parse_int_list(inner)
                    .ok_or_else(|| Error::syntax(0, format!("bad label {body:?}")))?,
            );
        }
        let labels = if given.is_empty() {
            labelled_degrees(&tree)
                .map(|deg| {
                    let mut alts = compositions(deg - 1, d - 1);
                    if alts.len() == 1 {
                        Ok(alts.pop().unwrap())
                    } else {
                        Err(Error::Malformed(format!(
                            "node of outdegree {deg} needs an explicit label"
                        )))
                    }
                })
                .collect::<Result<_>>()?
        } else {
            given
        };
        LabeledOrderedTree::new(d, tree, labels)
    }

    pub fn to_json(&self) -> Value {
        json!({ "outdegrees": self.tree.outdegrees, "labels": self.labels })
    }

    pub fn from_json(value: &Value, d: usize) -> Result<Self> {
        let tree = OrderedTree::from_json(value)?;
        let labels = match value.get("labels") {
            Some(v) => serde_json::from_value(v.clone())
                .map_err(|e| Error::Malformed(format!("labels: {e}")))?,
            None => Vec::new(),
        };
        LabeledOrderedTree::new(d, tree, labels)
    }
}

impl fmt::Display for LabeledOrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tree)?;
        if self.arity > 2 {
            for l in &self.labels {
                write!(f, ";({})", labels::join(l))?;
            }
        }
        Ok(())
    }
}

/// Preorder words with `edges + 1` nodes, exactly `internal` internal
/// nodes, each internal outdegree accepted by `allowed`; ascending order.
fn trees_where(edges: usize, internal: usize, allowed: &dyn Fn(usize) -> bool) -> Vec<OrderedTree> {
    struct Search<'a> {
        nodes: usize,
        allowed: &'a dyn Fn(usize) -> bool,
        word: Vec<usize>,
        out: Vec<OrderedTree>,
    }
    impl Search<'_> {
        fn go(&mut self, open: usize, edges_left: usize, internal_left: usize) {
            let pos = self.word.len();
            if pos == self.nodes {
                if open == 0 && edges_left == 0 && internal_left == 0 {
                    self.out.push(OrderedTree::from_valid(self.word.clone()));
                }
                return;
            }
            let after = self.nodes - pos - 1;
            for deg in 0..=edges_left {
                if deg > 0 && (internal_left == 0 || !(self.allowed)(deg)) {
                    continue;
                }
                let open_next = open - 1 + deg;
                let internal_next = internal_left - usize::from(deg > 0);
                // the word must not close early; every open slot holds a
                // subtree with at least one leaf; every internal node needs an edge
                if (open_next == 0 && after > 0)
                    || open_next + internal_next > after
                    || edges_left - deg < internal_next
                {
                    continue;
                }
                self.word.push(deg);
                self.go(open_next, edges_left - deg, internal_next);
                self.word.pop();
            }
        }
    }
    let mut search = Search {
        nodes: edges + 1,
        allowed,
        word: Vec::with_capacity(edges + 1),
        out: Vec::new(),
    };
    search.go(1, edges, internal);
    search.out
}

/// Members of `T_d` with the given numbers of edges and internal nodes.
pub fn enumerate_t(d: usize, edges: usize, internal: usize) -> Result<Vec<OrderedTree>> {
    enumerate_t_limited(d, edges, internal, DEFAULT_GUARD)
}

pub fn enumerate_t_limited(
    d: usize,
    edges: usize,
    internal: usize,
    guard: usize,
) -> Result<Vec<OrderedTree>> {
    check_arity(d)?;
    if internal == 0 {
        return Ok(Vec::new());
    }
    let out = trees_where(edges, internal, &|deg| is_one_mod(deg, d));
    if out.len() > guard {
        return Err(Error::GuardExceeded { limit: guard });
    }
    Ok(out)
}

/// Members of `~T_d` with the given numbers of edges and leaves.
pub fn enumerate_labeled_t(
    d: usize,
    edges: usize,
    leaves: usize,
) -> Result<Vec<LabeledOrderedTree>> {
    enumerate_labeled_t_limited(d, edges, leaves, DEFAULT_GUARD)
}

pub fn enumerate_labeled_t_limited(
    d: usize,
    edges: usize,
    leaves: usize,
    guard: usize,
) -> Result<Vec<LabeledOrderedTree>> {
    check_arity(d)?;
    let nodes = edges + 1;
    if edges == 0 || leaves == 0 || leaves >= nodes {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tree in trees_where(edges, nodes - leaves, &|_| true) {
        let slots: Vec<_> = labelled_degrees(&tree)
            .map(|deg| compositions(deg - 1, d - 1))
            .collect();
        let total: usize = slots.iter().map(Vec::len).product();
        if out.len() + total > guard {
            return Err(Error::GuardExceeded { limit: guard });
        }
        for labels in label_choices(&slots) {
            out.push(LabeledOrderedTree {
                arity: d,
                tree: tree.clone(),
                labels,
            });
        }
    }
    Ok(out)
}
