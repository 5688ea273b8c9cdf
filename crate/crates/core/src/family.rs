//! Uniform access to the nine families: parsing, printing, enumeration,
//! statistics, and conversion along the bijection graph.
//!
//! Enumeration parameters are each family's own:
//!
//! | family      | `a`           | `b`                 |
//! |-------------|---------------|---------------------|
//! | `monomials` | topt          | lopt                |
//! | `schroder`  | n             | k (up steps)        |
//! | `trees`     | edges         | internal nodes      |
//! | `dyck`      | semilength    | peaks               |
//! | `perms`     | size          | decreasing runs     |
//! | `lschroder` | semilength    | hdd                 |
//! | `fpaths`    | steps         | north steps         |
//! | `ldyck`     | semilength-1  | UU count            |
//! | `ltrees`    | edges         | leaves              |
//!
//! [`Family::cell`] maps a Narayana cell `(n, k)` to these parameters.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::bijections::*;
use crate::fpaths::{enumerate_f_limited, FPath};
use crate::monomials::{self, enumerate_monomials, Monomial};
use crate::paths::{
    enumerate_labeled_q_limited, enumerate_labeled_s_limited, enumerate_q_limited,
    enumerate_s_limited, in_q_d, in_s_d, DescentLabeledPath, LabelKind, LatticePath,
};
use crate::permutations::{enumerate_p_limited, in_p_d, Permutation};
use crate::trees::{
    enumerate_labeled_t_limited, enumerate_t_limited, in_t_d, LabeledOrderedTree, OrderedTree,
};
use crate::{check_arity, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Monomials,
    Schroder,
    Trees,
    Dyck,
    Perms,
    LSchroder,
    FPaths,
    LDyck,
    LTrees,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Monomials,
        Family::Schroder,
        Family::Trees,
        Family::Dyck,
        Family::Perms,
        Family::LSchroder,
        Family::FPaths,
        Family::LDyck,
        Family::LTrees,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Monomials => "monomials",
            Family::Schroder => "schroder",
            Family::Trees => "trees",
            Family::Dyck => "dyck",
            Family::Perms => "perms",
            Family::LSchroder => "lschroder",
            Family::FPaths => "fpaths",
            Family::LDyck => "ldyck",
            Family::LTrees => "ltrees",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Monomials => "M_d",
            Family::Schroder => "S_d",
            Family::Trees => "T_d",
            Family::Dyck => "Q_d",
            Family::Perms => "P_d",
            Family::LSchroder => "~S_d",
            Family::FPaths => "F_d",
            Family::LDyck => "~Q_d",
            Family::LTrees => "~T_d",
        }
    }

    /// Enumeration parameters whose cell has `narayana(d, n, k)` members.
    pub fn cell(self, d: usize, n: usize, k: usize) -> (usize, usize) {
        let size = (n - k) * (d - 1) + k + 1;
        match self {
            Family::Monomials
            | Family::Schroder
            | Family::LSchroder
            | Family::FPaths
            | Family::LDyck => (n, k),
            Family::Trees | Family::Dyck | Family::Perms => (size, k + 1),
            Family::LTrees => (n + 1, k + 1),
        }
    }

    pub fn enumerate(self, d: usize, a: usize, b: usize, guard: usize) -> Result<Vec<Object>> {
        check_arity(d)?;
        Ok(match self {
            Family::Monomials => {
                let all = enumerate_monomials(d, a, b)?;
                if all.len() > guard {
                    return Err(Error::GuardExceeded { limit: guard });
                }
                all.into_iter().map(Object::Monomial).collect()
            }
            Family::Schroder => wrap(enumerate_s_limited(d, a, b, guard)?, Object::Schroder),
            Family::Trees => wrap(enumerate_t_limited(d, a, b, guard)?, Object::Tree),
            Family::Dyck => wrap(enumerate_q_limited(d, a, b, guard)?, Object::Dyck),
            Family::Perms => wrap(enumerate_p_limited(d, a, b, guard)?, Object::Perm),
            Family::LSchroder => wrap(
                enumerate_labeled_s_limited(d, a, b, guard)?,
                Object::LSchroder,
            ),
            Family::FPaths => wrap(enumerate_f_limited(d, a, b, guard)?, Object::FPath),
            Family::LDyck => wrap(enumerate_labeled_q_limited(d, a, b, guard)?, Object::LDyck),
            Family::LTrees => wrap(enumerate_labeled_t_limited(d, a, b, guard)?, Object::LTree),
        })
    }

    /// Parses the family's text form and checks membership.
    pub fn parse(self, text: &str, d: usize) -> Result<Object> {
        check_arity(d)?;
        let text = text.trim();
        let member = |ok: bool, obj: Object| {
            if ok {
                Ok(obj)
            } else {
                Err(Error::not_in(self.symbol(), text.to_string()))
            }
        };
        match self {
            Family::Monomials => monomials::parse(text, d).map(Object::Monomial),
            Family::Schroder => {
                let p = LatticePath::parse(text)?;
                member(in_s_d(&p, d), Object::Schroder(p))
            }
            Family::Trees => {
                let t = OrderedTree::parse(text)?;
                member(in_t_d(&t, d), Object::Tree(t))
            }
            Family::Dyck => {
                let p = LatticePath::parse(text)?;
                member(in_q_d(&p, d), Object::Dyck(p))
            }
            Family::Perms => {
                let p = Permutation::parse(text)?;
                member(in_p_d(&p, d), Object::Perm(p))
            }
            Family::LSchroder => DescentLabeledPath::parse_schroder(text, d).map(Object::LSchroder),
            Family::FPaths => FPath::parse(text, d).map(Object::FPath),
            Family::LDyck => DescentLabeledPath::parse_dyck(text, d).map(Object::LDyck),
            Family::LTrees => LabeledOrderedTree::parse(text, d).map(Object::LTree),
        }
    }

    pub fn from_json(self, value: &Value, d: usize) -> Result<Object> {
        check_arity(d)?;
        let steps = || {
            value
                .get("steps")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Malformed("missing \"steps\" string".into()))
        };
        match self {
            Family::Monomials => {
                let m = Monomial::from_json(value)?;
                if m.arity() != d {
                    return Err(Error::not_in(self.symbol(), m.to_string()));
                }
                Ok(Object::Monomial(m))
            }
            Family::Schroder | Family::Dyck => self.parse(steps()?, d),
            Family::Trees => {
                let t = OrderedTree::from_json(value)?;
                self.parse(&t.to_string(), d)
            }
            Family::Perms => {
                let p = Permutation::from_json(value)?;
                self.parse(&p.to_string(), d)
            }
            Family::LSchroder => {
                DescentLabeledPath::from_json(value, d, LabelKind::Subset).map(Object::LSchroder)
            }
            Family::FPaths => FPath::from_json(value, d).map(Object::FPath),
            Family::LDyck => {
                DescentLabeledPath::from_json(value, d, LabelKind::Composition).map(Object::LDyck)
            }
            Family::LTrees => LabeledOrderedTree::from_json(value, d).map(Object::LTree),
        }
    }

    /// Families adjacent in the bijection graph, with the forward map's name
    /// when `self` is its domain.
    fn neighbours(self) -> &'static [(Family, &'static str, bool)] {
        use Family::*;
        match self {
            Monomials => &[
                (Schroder, "f1", true),
                (Trees, "f2", true),
                (LSchroder, "f5", true),
                (FPaths, "f6", true),
            ],
            Schroder => &[(Monomials, "f1", false)],
            Trees => &[(Monomials, "f2", false), (Dyck, "f3", true)],
            Dyck => &[(Trees, "f3", false), (Perms, "f4", true)],
            Perms => &[(Dyck, "f4", false)],
            LSchroder => &[(Monomials, "f5", false)],
            FPaths => &[(Monomials, "f6", false), (LDyck, "f7", true)],
            LDyck => &[(FPaths, "f7", false), (LTrees, "f8", true)],
            LTrees => &[(LDyck, "f8", false)],
        }
    }

    /// The unique route between two families, as map names such as
    /// `["f1^-1", "f2", "f3"]`.
    pub fn route(self, to: Family) -> Vec<String> {
        fn walk(
            at: Family,
            to: Family,
            from: Option<Family>,
            out: &mut Vec<(Family, String)>,
        ) -> bool {
            if at == to {
                return true;
            }
            for &(next, name, forward) in at.neighbours() {
                if Some(next) == from {
                    continue;
                }
                let label = if forward {
                    name.to_string()
                } else {
                    format!("{name}^-1")
                };
                out.push((next, label));
                if walk(next, to, Some(at), out) {
                    return true;
                }
                out.pop();
            }
            false
        }
        let mut out = Vec::new();
        walk(self, to, None, &mut out);
        out.into_iter().map(|(_, name)| name).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidRange(format!("unknown family {s:?}")))
    }
}

fn wrap<T>(items: Vec<T>, f: fn(T) -> Object) -> Vec<Object> {
    items.into_iter().map(f).collect()
}

/// A member of one of the nine families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Monomial(Monomial),
    Schroder(LatticePath),
    Tree(OrderedTree),
    Dyck(LatticePath),
    Perm(Permutation),
    LSchroder(DescentLabeledPath),
    FPath(FPath),
    LDyck(DescentLabeledPath),
    LTree(LabeledOrderedTree),
}

impl Object {
    pub fn family(&self) -> Family {
        match self {
            Object::Monomial(_) => Family::Monomials,
            Object::Schroder(_) => Family::Schroder,
            Object::Tree(_) => Family::Trees,
            Object::Dyck(_) => Family::Dyck,
            Object::Perm(_) => Family::Perms,
            Object::LSchroder(_) => Family::LSchroder,
            Object::FPath(_) => Family::FPaths,
            Object::LDyck(_) => Family::LDyck,
            Object::LTree(_) => Family::LTrees,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Object::Monomial(m) => m.to_json(),
            Object::Schroder(p) | Object::Dyck(p) => json!({ "steps": p.to_string() }),
            Object::Tree(t) => t.to_json(),
            Object::Perm(p) => p.to_json(),
            Object::LSchroder(p) | Object::LDyck(p) => p.to_json(),
            Object::FPath(f) => f.to_json(),
            Object::LTree(t) => t.to_json(),
        }
    }

    /// The family's statistics as a JSON record.
    pub fn stats(&self) -> Value {
        let v = match self {
            Object::Monomial(m) => serde_json::to_value(m.stats()),
            Object::Schroder(p) | Object::Dyck(p) => serde_json::to_value(p.stats()),
            Object::Tree(t) => serde_json::to_value(t.stats()),
            Object::Perm(p) => {
                let runs = crate::permutations::decreasing_runs(p);
                Ok(
                    json!({ "size": p.len(), "runs": runs.len(), "run_lengths": runs.iter().map(Vec::len).collect::<Vec<_>>() }),
                )
            }
            Object::LSchroder(p) | Object::LDyck(p) => serde_json::to_value(p.stats()),
            Object::FPath(f) => serde_json::to_value(f.stats()),
            Object::LTree(t) => serde_json::to_value(t.stats()),
        };
        v.expect("statistics serialize")
    }

    fn step(self, to: Family, d: usize) -> Result<Object> {
        use Object as O;
        Ok(match (self, to) {
            (O::Monomial(m), Family::Schroder) => O::Schroder(f1(&m)),
            (O::Monomial(m), Family::Trees) => O::Tree(f2(&m)),
            (O::Monomial(m), Family::LSchroder) => O::LSchroder(f5(&m)),
            (O::Monomial(m), Family::FPaths) => O::FPath(f6(&m)),
            (O::Schroder(p), Family::Monomials) => O::Monomial(f1_inv(&p, d)?),
            (O::Tree(t), Family::Monomials) => O::Monomial(f2_inv(&t, d)?),
            (O::Tree(t), Family::Dyck) => O::Dyck(f3(&t)),
            (O::Dyck(p), Family::Trees) => O::Tree(f3_inv(&p, d)?),
            (O::Dyck(p), Family::Perms) => O::Perm(f4(&p)?),
            (O::Perm(p), Family::Dyck) => O::Dyck(f4_inv(&p, d)?),
            (O::LSchroder(p), Family::Monomials) => O::Monomial(f5_inv(&p, d)?),
            (O::FPath(f), Family::Monomials) => O::Monomial(f6_inv(&f, d)?),
            (O::FPath(f), Family::LDyck) => O::LDyck(f7(&f)),
            (O::LDyck(q), Family::FPaths) => O::FPath(f7_inv(&q, d)?),
            (O::LDyck(q), Family::LTrees) => O::LTree(f8(&q)),
            (O::LTree(t), Family::LDyck) => O::LDyck(f8_inv(&t, d)?),
            (obj, to) => unreachable!("no edge {} -> {to}", obj.family()),
        })
    }

    /// Converts along the unique route of the bijection graph.
    pub fn convert(self, to: Family, d: usize) -> Result<(Object, Vec<String>)> {
        check_arity(d)?;
        let route = self.family().route(to);
        let mut families = Vec::new();
        let mut at = self.family();
        for name in &route {
            let next = at
                .neighbours()
                .iter()
                .find(|(_, n, fwd)| {
                    let label = if *fwd {
                        n.to_string()
                    } else {
                        format!("{n}^-1")
                    };
                    &label == name
                })
                .expect("route follows graph edges")
                .0;
            families.push(next);
            at = next;
        }
        let mut obj = self;
        for fam in families {
            obj = obj.step(fam, d)?;
        }
        Ok((obj, route))
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Monomial(m) => m.fmt(f),
            Object::Schroder(p) | Object::Dyck(p) => p.fmt(f),
            Object::Tree(t) => t.fmt(f),
            Object::Perm(p) => p.fmt(f),
            Object::LSchroder(p) | Object::LDyck(p) => p.fmt(f),
            Object::FPath(x) => x.fmt(f),
            Object::LTree(t) => t.fmt(f),
        }
    }
}
