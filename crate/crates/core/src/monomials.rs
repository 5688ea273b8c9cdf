//! d-ary operator monomials.
//!
//! A monomial is stored in associativity normal form: a nonempty flat
//! sequence of irreducible factors, each either an indeterminate or `L`
//! applied to another such sequence. Indeterminates carry no names; the
//! text form numbers them `a1, a2, ...` from left to right.
//!
//! Text grammar:
//!
//! ```text
//! Monomial      := Factor+
//! Factor        := Indeterminate | "L" ["^" digits] "(" Monomial ")"
//! Indeterminate := "a" digits
//! ```

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::{check_arity, is_one_mod, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Leaf,
    /// `L` applied to a product of factors.
    Lin(Vec<Factor>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    arity: usize,
    factors: Vec<Factor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialStats {
    /// Total operations: products plus applications of `L`.
    pub topt: usize,
    /// Applications of `L`.
    pub lopt: usize,
    /// Number of indeterminates.
    pub deg: usize,
    /// Applications of `L` enclosing the leftmost indeterminate.
    pub lofi: usize,
}

pub(crate) fn validate(factors: &[Factor], d: usize) -> Result<()> {
    if !is_one_mod(factors.len(), d) {
        return Err(Error::Arity {
            factors: factors.len(),
            arity: d,
        });
    }
    for f in factors {
        if let Factor::Lin(inner) = f {
            validate(inner, d)?;
        }
    }
    Ok(())
}

/// (topt, lopt, deg) of a product.
pub(crate) fn product_stats(factors: &[Factor], d: usize) -> (usize, usize, usize) {
    let products = (factors.len() - 1) / (d - 1);
    factors
        .iter()
        .fold((products, 0, 0), |(t, l, g), f| match f {
            Factor::Leaf => (t, l, g + 1),
            Factor::Lin(inner) => {
                let (ti, li, gi) = product_stats(inner, d);
                (t + ti + 1, l + li + 1, g + gi)
            }
        })
}

pub(crate) fn lofi_of(factors: &[Factor]) -> usize {
    match &factors[0] {
        Factor::Leaf => 0,
        Factor::Lin(inner) => 1 + lofi_of(inner),
    }
}

impl Factor {
    pub(crate) fn lofi(&self) -> usize {
        match self {
            Factor::Leaf => 0,
            Factor::Lin(inner) => 1 + lofi_of(inner),
        }
    }
}

impl Monomial {
    /// Builds a monomial, checking the factor-count rule at every level.
    pub fn new(arity: usize, factors: Vec<Factor>) -> Result<Self> {
        check_arity(arity)?;
        validate(&factors, arity)?;
        Ok(Monomial { arity, factors })
    }

    pub(crate) fn from_valid(arity: usize, factors: Vec<Factor>) -> Self {
        debug_assert!(validate(&factors, arity).is_ok());
        Monomial { arity, factors }
    }

    /// A single indeterminate.
    pub fn indeterminate(arity: usize) -> Result<Self> {
        Self::new(arity, vec![Factor::Leaf])
    }

    /// `L(self)`.
    pub fn apply_l(self) -> Self {
        Monomial {
            arity: self.arity,
            factors: vec![Factor::Lin(self.factors)],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Factor> {
        self.factors
    }

    pub fn stats(&self) -> MonomialStats {
        let (topt, lopt, deg) = product_stats(&self.factors, self.arity);
        MonomialStats {
            topt,
            lopt,
            deg,
            lofi: lofi_of(&self.factors),
        }
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn to_json(&self) -> Value {
        fn factor(f: &Factor, d: usize) -> Value {
            match f {
                Factor::Leaf => json!(0),
                Factor::Lin(inner) => product(inner, d),
            }
        }
        fn product(fs: &[Factor], d: usize) -> Value {
            json!({ "d": d, "factors": fs.iter().map(|f| factor(f, d)).collect::<Vec<_>>() })
        }
        product(&self.factors, self.arity)
    }

    /// Reads `{"d":3,"factors":[0,{"factors":[...]},...]}`. Nested objects
    /// may omit `d`; when present it must agree with the outer arity.
    pub fn from_json(value: &Value) -> Result<Self> {
        fn product(v: &Value, d: usize) -> Result<Vec<Factor>> {
            let obj = v
                .as_object()
                .ok_or_else(|| Error::Malformed("monomial must be an object".into()))?;
            if let Some(inner_d) = obj.get("d") {
                if inner_d.as_u64() != Some(d as u64) {
                    return Err(Error::Malformed(format!("nested arity {inner_d} != {d}")));
                }
            }
            let factors = obj
                .get("factors")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Malformed("missing \"factors\" array".into()))?;
            factors
                .iter()
                .map(|f| match f {
                    Value::Number(n) if n.as_u64() == Some(0) => Ok(Factor::Leaf),
                    Value::Object(_) => Ok(Factor::Lin(product(f, d)?)),
                    other => Err(Error::Malformed(format!("bad factor {other}"))),
                })
                .collect()
        }
        let d = value
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Malformed("missing arity \"d\"".into()))?
            as usize;
        check_arity(d)?;
        Monomial::new(d, product(value, d)?)
    }
}

impl fmt::Display for Monomial {
    /// Canonical text: indeterminates numbered left to right, no `L^k`
    /// sugar, no whitespace.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(fs: &[Factor], next: &mut usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            for factor in fs {
                match factor {
                    Factor::Leaf => {
                        *next += 1;
                        write!(f, "a{next}")?;
                    }
                    Factor::Lin(inner) => {
                        f.write_str("L(")?;
                        go(inner, next, f)?;
                        f.write_str(")")?;
                    }
                }
            }
            Ok(())
        }
        go(&self.factors, &mut 0, f)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept any indeterminate subscripts and renumber them.
    pub allow_any_names: bool,
}

/// Parses the monomial text form, requiring subscripts `1..deg` in order.
pub fn parse(text: &str, d: usize) -> Result<Monomial> {
    parse_with(text, d, ParseOptions::default())
}

pub fn parse_with(text: &str, d: usize, options: ParseOptions) -> Result<Monomial> {
    check_arity(d)?;
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        d,
        options,
        next_index: 1,
    };
    let factors = parser.product()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(Error::syntax(
            parser.pos,
            format!("unexpected {:?}", c as char),
        ));
    }
    Ok(Monomial::from_valid(d, factors))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    d: usize,
    options: ParseOptions,
    next_index: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::syntax(start, "expected digits"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::syntax(start, "number too large"))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::syntax(self.pos, format!("expected {:?}", c as char)))
        }
    }

    fn product(&mut self) -> Result<Vec<Factor>> {
        let start = self.pos;
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') => break,
                _ => factors.push(self.factor()?),
            }
        }
        if factors.is_empty() {
            return Err(Error::syntax(start, "expected a factor"));
        }
        if !is_one_mod(factors.len(), self.d) {
            return Err(Error::Arity {
                factors: factors.len(),
                arity: self.d,
            });
        }
        Ok(factors)
    }

    fn factor(&mut self) -> Result<Factor> {
        let at = self.pos;
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                let index = self.digits()?;
                if !self.options.allow_any_names && index != self.next_index {
                    return Err(Error::syntax(
                        at,
                        format!("expected a{} but found a{index}", self.next_index),
                    ));
                }
                self.next_index += 1;
                Ok(Factor::Leaf)
            }
            Some(b'L') => {
                self.pos += 1;
                self.skip_ws();
                let times = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let k = self.digits()?;
                    if k == 0 {
                        return Err(Error::syntax(at, "L^0 is not allowed"));
                    }
                    k
                } else {
                    1
                };
                self.expect(b'(')?;
                let mut inner = self.product()?;
                self.expect(b')')?;
                for _ in 1..times {
                    inner = vec![Factor::Lin(inner)];
                }
                Ok(Factor::Lin(inner))
            }
            Some(c) => Err(Error::syntax(at, format!("unexpected {:?}", c as char))),
            None => Err(Error::syntax(at, "unexpected end of input")),
        }
    }
}

type Products = Rc<Vec<Vec<Factor>>>;

struct Generator {
    d: usize,
    irreducible: HashMap<(usize, usize), Products>,
    product: HashMap<(usize, usize), Products>,
}

impl Generator {
    /// Irreducible factors with `ops` operations, `ls` of them `L`.
    fn irreducibles(&mut self, ops: usize, ls: usize) -> Products {
        if let Some(hit) = self.irreducible.get(&(ops, ls)) {
            return hit.clone();
        }
        let out: Vec<Vec<Factor>> = if ops == 0 && ls == 0 {
            vec![vec![Factor::Leaf]]
        } else if ops >= 1 && ls >= 1 && ls <= ops {
            self.products(ops - 1, ls - 1)
                .iter()
                .map(|p| vec![Factor::Lin(p.clone())])
                .collect()
        } else {
            Vec::new()
        };
        let out = Rc::new(out);
        self.irreducible.insert((ops, ls), out.clone());
        out
    }

    /// Products (flat factor sequences) with the given budget.
    fn products(&mut self, ops: usize, ls: usize) -> Products {
        if let Some(hit) = self.product.get(&(ops, ls)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if ls <= ops {
            for j in 0..=ops - ls {
                let len = j * (self.d - 1) + 1;
                let mut acc = Vec::with_capacity(len);
                self.fill(len, ops - j, ls, &mut acc, &mut out);
            }
        }
        let out = Rc::new(out);
        self.product.insert((ops, ls), out.clone());
        out
    }

    fn fill(
        &mut self,
        slots: usize,
        ops: usize,
        ls: usize,
        acc: &mut Vec<Factor>,
        out: &mut Vec<Vec<Factor>>,
    ) {
        if slots == 0 {
            if ops == 0 && ls == 0 {
                out.push(acc.clone());
            }
            return;
        }
        // every non-leaf factor needs at least one L, and as many operations
        if ls > ops || (ls == 0 && ops > 0) {
            return;
        }
        let choices: Vec<(usize, usize)> = if slots == 1 {
            vec![(ops, ls)]
        } else {
            std::iter::once((0, 0))
                .chain((1..=ops).flat_map(|t| (1..=ls.min(t)).map(move |l| (t, l))))
                .collect()
        };
        for (t, l) in choices {
            // products inside the factor come out of the shared products budget
            if t - l > ops - ls {
                continue;
            }
            let options = self.irreducibles(t, l);
            for f in options.iter() {
                acc.push(f[0].clone());
                self.fill(slots - 1, ops - t, ls - l, acc, out);
                acc.pop();
            }
        }
    }
}

/// Every monomial with `topt = n` and `lopt = k`, sorted by canonical text.
pub fn enumerate_monomials(d: usize, n: usize, k: usize) -> Result<Vec<Monomial>> {
    check_arity(d)?;
    if k > n {
        return Err(Error::InvalidRange(format!("lopt {k} exceeds topt {n}")));
    }
    let mut generator = Generator {
        d,
        irreducible: HashMap::new(),
        product: HashMap::new(),
    };
    let products = generator.products(n, k);
    let mut keyed: Vec<(String, Monomial)> = products
        .iter()
        .map(|p| {
            let m = Monomial::from_valid(d, p.clone());
            (m.to_string(), m)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, m)| m).collect())
}
