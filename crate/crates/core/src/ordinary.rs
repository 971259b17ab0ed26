//! Finite-carrier Tarski models and valuations.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::nominal::{Atom, AtomSet, Perm};
use crate::syntax::{Formula, Signature, Symbol, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("the carrier must be nonempty")]
    EmptyCarrier,
    #[error("atom `{0}` is not bound by the valuation")]
    UnboundAtom(Atom),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` has arity {expected} but was given {found} argument(s)")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("table for `{name}` must have {expected} entries, found {found}")]
    TableSize {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("carrier element {value} is out of range for a carrier of size {size}")]
    OutOfRange { value: usize, size: usize },
    #[error("`{0}` is interpreted more than once")]
    Duplicate(String),
    #[error("model line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A total table `carrier^arity -> X`, indexed with the first argument most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table<X> {
    arity: usize,
    values: Vec<X>,
}

impl<X: Copy> Table<X> {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[X] {
        &self.values
    }

    fn lookup(&self, size: usize, args: &[usize]) -> X {
        let index = args.iter().fold(0, |acc, &x| acc * size + x);
        self.values[index]
    }
}

/// Decodes a table index into its argument tuple.
pub fn tuple_of(index: usize, size: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = rest % size;
        rest /= size;
    }
    out
}

/// A finite nonempty carrier `{0, .., size-1}` with total interpretations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryModel {
    size: usize,
    funs: BTreeMap<Symbol, Table<usize>>,
    preds: BTreeMap<Symbol, Table<bool>>,
}

impl OrdinaryModel {
    pub fn new(size: usize) -> Result<OrdinaryModel, ModelError> {
        if size == 0 {
            return Err(ModelError::EmptyCarrier);
        }
        Ok(OrdinaryModel {
            size,
            funs: BTreeMap::new(),
            preds: BTreeMap::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn check_len(&self, name: &str, arity: usize, found: usize) -> Result<(), ModelError> {
        let expected = self.size.pow(arity as u32);
        if found != expected {
            return Err(ModelError::TableSize {
                name: name.to_string(),
                expected,
                found,
            });
        }
        Ok(())
    }

    pub fn set_fun(&mut self, name: &str, arity: usize, values: Vec<usize>) -> Result<(), ModelError> {
        self.check_len(name, arity, values.len())?;
        if let Some(&value) = values.iter().find(|&&v| v >= self.size) {
            return Err(ModelError::OutOfRange {
                value,
                size: self.size,
            });
        }
        self.funs.insert(name.into(), Table { arity, values });
        Ok(())
    }

    pub fn set_pred(&mut self, name: &str, arity: usize, values: Vec<bool>) -> Result<(), ModelError> {
        self.check_len(name, arity, values.len())?;
        self.preds.insert(name.into(), Table { arity, values });
        Ok(())
    }

    pub fn with_fun(mut self, name: &str, arity: usize, values: Vec<usize>) -> Result<Self, ModelError> {
        self.set_fun(name, arity, values)?;
        Ok(self)
    }

    pub fn with_pred(mut self, name: &str, arity: usize, values: Vec<bool>) -> Result<Self, ModelError> {
        self.set_pred(name, arity, values)?;
        Ok(self)
    }

    pub fn fun_table(&self, name: &str) -> Option<&Table<usize>> {
        self.funs.get(name)
    }

    pub fn pred_table(&self, name: &str) -> Option<&Table<bool>> {
        self.preds.get(name)
    }

    pub fn apply_fun(&self, name: &str, args: &[usize]) -> Result<usize, ModelError> {
        let table = self
            .funs
            .get(name)
            .ok_or_else(|| ModelError::UnknownSymbol(name.to_string()))?;
        self.check_args(name, table.arity, args)?;
        Ok(table.lookup(self.size, args))
    }

    pub fn apply_pred(&self, name: &str, args: &[usize]) -> Result<bool, ModelError> {
        let table = self
            .preds
            .get(name)
            .ok_or_else(|| ModelError::UnknownSymbol(name.to_string()))?;
        self.check_args(name, table.arity, args)?;
        Ok(table.lookup(self.size, args))
    }

    fn check_args(&self, name: &str, arity: usize, args: &[usize]) -> Result<(), ModelError> {
        if args.len() != arity {
            return Err(ModelError::Arity {
                name: name.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        match args.iter().find(|&&x| x >= self.size) {
            Some(&value) => Err(ModelError::OutOfRange {
                value,
                size: self.size,
            }),
            None => Ok(()),
        }
    }

    /// The signature this model interprets.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (name, t) in &self.funs {
            // names were validated when the model was built or parsed
            let _ = sig.declare_fun(name, t.arity);
        }
        for (name, t) in &self.preds {
            let _ = sig.declare_pred(name, t.arity);
        }
        sig
    }

    pub fn eval_term(&self, v: &Valuation, r: &Term) -> Result<usize, ModelError> {
        match r {
            Term::Var(a) => v.lookup(*a),
            Term::App(f, args) => {
                let vals = args
                    .iter()
                    .map(|t| self.eval_term(v, t))
                    .collect::<Result<Vec<_>, _>>()?;
                self.apply_fun(f, &vals)
            }
        }
    }

    /// Truth value under `v`; `∀` is the finite meet over the carrier.
    pub fn eval_formula(&self, v: &Valuation, phi: &Formula) -> Result<bool, ModelError> {
        match phi {
            Formula::Bot => Ok(false),
            Formula::Pred(p, args) => {
                let vals = args
                    .iter()
                    .map(|t| self.eval_term(v, t))
                    .collect::<Result<Vec<_>, _>>()?;
                self.apply_pred(p, &vals)
            }
            Formula::And(l, r) => Ok(self.eval_formula(v, l)? && self.eval_formula(v, r)?),
            Formula::Neg(g) => Ok(!self.eval_formula(v, g)?),
            Formula::All(a, g) => {
                for x in 0..self.size {
                    if !self.eval_formula(&v.update(*a, x), g)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Parses the model file format:
    ///
    /// ```text
    /// carrier 0 1
    /// fun f/1: (0)->1 (1)->0
    /// pred P/1: (0)
    /// ```
    ///
    /// The `/arity` suffix may be omitted when at least one entry is listed.
    /// Function tables must list every tuple exactly once; predicate tables
    /// list the tuples that hold.
    pub fn parse(text: &str) -> Result<OrdinaryModel, ModelError> {
        let mut model: Option<OrdinaryModel> = None;
        let mut seen = std::collections::BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| ModelError::Parse { line, message };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            match keyword {
                "carrier" => {
                    if model.is_some() {
                        return Err(err("carrier declared twice".into()));
                    }
                    let ids = rest
                        .split_whitespace()
                        .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad element `{t}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    if ids.iter().enumerate().any(|(i, &x)| i != x) {
                        return Err(err("carrier must be listed as 0 1 .. n-1".into()));
                    }
                    model = Some(OrdinaryModel::new(ids.len())?);
                }
                "fun" | "pred" => {
                    let m = model
                        .as_mut()
                        .ok_or_else(|| err("`carrier` must come first".into()))?;
                    let (head, entries) = rest
                        .split_once(':')
                        .ok_or_else(|| err("expected `name: entries`".into()))?;
                    let (name, declared) = match head.split_once('/') {
                        Some((n, a)) => {
                            let arity = a
                                .trim()
                                .parse::<usize>()
                                .map_err(|_| err(format!("bad arity `{}`", a.trim())))?;
                            (n.trim(), Some(arity))
                        }
                        None => (head.trim(), None),
                    };
                    if !seen.insert(name.to_string()) {
                        return Err(ModelError::Duplicate(name.to_string()));
                    }
                    let entries = parse_entries(entries).map_err(err)?;
                    let arity = match (declared, entries.first()) {
                        (Some(a), _) => a,
                        (None, Some((tuple, _))) => tuple.len(),
                        (None, None) => return Err(err(format!("cannot infer the arity of `{name}`"))),
                    };
                    let size = m.size;
                    let slots = size.pow(arity as u32);
                    let index_of = |tuple: &[usize]| -> Result<usize, ModelError> {
                        if tuple.len() != arity {
                            return Err(err(format!("tuple of length {} for `{name}`", tuple.len())));
                        }
                        if let Some(&value) = tuple.iter().find(|&&x| x >= size) {
                            return Err(ModelError::OutOfRange { value, size });
                        }
                        Ok(tuple.iter().fold(0, |acc, &x| acc * size + x))
                    };
                    if keyword == "fun" {
                        let mut values = vec![None; slots];
                        for (tuple, out) in &entries {
                            let out = out.ok_or_else(|| err(format!("missing `->` for `{name}`")))?;
                            let idx = index_of(tuple)?;
                            if values[idx].replace(out).is_some() {
                                return Err(err(format!("tuple listed twice for `{name}`")));
                            }
                        }
                        let total = values.iter().flatten().count();
                        if total != slots {
                            return Err(ModelError::TableSize {
                                name: name.to_string(),
                                expected: slots,
                                found: total,
                            });
                        }
                        m.set_fun(name, arity, values.into_iter().flatten().collect())?;
                    } else {
                        let mut values = vec![false; slots];
                        for (tuple, out) in &entries {
                            if out.is_some() {
                                return Err(err(format!("predicate `{name}` entries take no `->`")));
                            }
                            values[index_of(tuple)?] = true;
                        }
                        m.set_pred(name, arity, values)?;
                    }
                }
                other => return Err(err(format!("unknown declaration `{other}`"))),
            }
        }
        let model = model.ok_or(ModelError::EmptyCarrier)?;
        // reject symbol names the syntax could not refer to
        let mut sig = Signature::new();
        for (name, t) in &model.funs {
            sig.declare_fun(name, t.arity).map_err(|e| ModelError::Parse {
                line: 0,
                message: e.to_string(),
            })?;
        }
        for (name, t) in &model.preds {
            sig.declare_pred(name, t.arity).map_err(|e| ModelError::Parse {
                line: 0,
                message: e.to_string(),
            })?;
        }
        Ok(model)
    }
}

type Entry = (Vec<usize>, Option<usize>);

fn parse_entries(text: &str) -> Result<Vec<Entry>, String> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    let number = |s: &str| -> Result<(usize, usize), String> {
        let len = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
        if len == 0 {
            return Err(format!("expected a number at `{s}`"));
        }
        Ok((
            s[..len]
                .parse()
                .map_err(|_| format!("bad number `{}`", &s[..len]))?,
            len,
        ))
    };
    while !rest.is_empty() {
        let tuple = if let Some(inner) = rest.strip_prefix('(') {
            let close = inner.find(')').ok_or("unclosed `(`")?;
            let items = inner[..close].trim();
            rest = &inner[close + 1..];
            if items.is_empty() {
                Vec::new()
            } else {
                items
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| format!("bad element `{}`", t.trim()))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        } else {
            let (n, len) = number(rest)?;
            rest = &rest[len..];
            vec![n]
        };
        rest = rest.trim_start();
        let out_value = if let Some(after) = rest.strip_prefix("->") {
            let after = after.trim_start();
            let (n, len) = number(after)?;
            rest = after[len..].trim_start();
            Some(n)
        } else {
            None
        };
        out.push((tuple, out_value));
    }
    Ok(out)
}

fn write_tuple(f: &mut fmt::Formatter<'_>, tuple: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in tuple.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for OrdinaryModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "carrier")?;
        for x in 0..self.size {
            write!(f, " {x}")?;
        }
        writeln!(f)?;
        for (name, t) in &self.funs {
            write!(f, "fun {name}/{}:", t.arity)?;
            for (i, out) in t.values.iter().enumerate() {
                write!(f, " ")?;
                write_tuple(f, &tuple_of(i, self.size, t.arity))?;
                write!(f, "->{out}")?;
            }
            writeln!(f)?;
        }
        for (name, t) in &self.preds {
            write!(f, "pred {name}/{}:", t.arity)?;
            for (i, &holds) in t.values.iter().enumerate() {
                if holds {
                    write!(f, " ")?;
                    write_tuple(f, &tuple_of(i, self.size, t.arity))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A finite partial assignment of carrier elements to atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(BTreeMap<Atom, usize>);

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn get(&self, a: Atom) -> Option<usize> {
        self.0.get(&a).copied()
    }

    pub fn lookup(&self, a: Atom) -> Result<usize, ModelError> {
        self.get(a).ok_or(ModelError::UnboundAtom(a))
    }

    /// `v[a := x]`.
    pub fn update(&self, a: Atom, x: usize) -> Valuation {
        let mut next = self.clone();
        next.0.insert(a, x);
        next
    }

    pub fn set(&mut self, a: Atom, x: usize) {
        self.0.insert(a, x);
    }

    pub fn domain(&self) -> AtomSet {
        self.0.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Atom, usize)> + '_ {
        self.0.iter().map(|(&a, &x)| (a, x))
    }

    /// `(π·v)(π(a)) = v(a)`.
    pub fn act(&self, p: &Perm) -> Valuation {
        Valuation(self.0.iter().map(|(&a, &x)| (p.apply(a), x)).collect())
    }

    /// Every valuation on `atoms` (ascending) into a carrier of `size`, in
    /// lexicographic order with the least atom most significant.
    pub fn all_on(atoms: &AtomSet, size: usize) -> impl Iterator<Item = Valuation> {
        let atoms: Vec<Atom> = atoms.iter().collect();
        let arity = atoms.len();
        let count = size.pow(arity as u32);
        (0..count).map(move |i| {
            atoms
                .iter()
                .copied()
                .zip(tuple_of(i, size, arity))
                .collect::<Valuation>()
        })
    }
}

impl FromIterator<(Atom, usize)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (Atom, usize)>>(iter: I) -> Valuation {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, x)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}->{x}")?;
        }
        write!(f, "}}")
    }
}

/// All models of a signature over a fixed carrier size, indexed in mixed
/// radix: every table entry is one digit, the first symbol's first entry
/// least significant (functions before predicates, each in name order).
/// Index 1 of `pred P/1` is therefore the model with `P = {0}`.
#[derive(Debug, Clone)]
pub struct ModelSpace {
    size: usize,
    funs: Vec<(Symbol, usize)>,
    preds: Vec<(Symbol, usize)>,
    digits: Vec<usize>,
}

impl ModelSpace {
    pub fn new(sig: &Signature, size: usize) -> Result<ModelSpace, ModelError> {
        if size == 0 {
            return Err(ModelError::EmptyCarrier);
        }
        let funs: Vec<_> = sig.funs().map(|(n, a)| (n.clone(), a)).collect();
        let preds: Vec<_> = sig.preds().map(|(n, a)| (n.clone(), a)).collect();
        let mut digits = Vec::new();
        for (_, arity) in &funs {
            digits.extend(std::iter::repeat_n(size, size.pow(*arity as u32)));
        }
        for (_, arity) in &preds {
            digits.extend(std::iter::repeat_n(2, size.pow(*arity as u32)));
        }
        Ok(ModelSpace {
            size,
            funs,
            preds,
            digits,
        })
    }

    /// Number of models, or `None` if it does not fit in a `u128`.
    pub fn count(&self) -> Option<u128> {
        self.digits
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    pub fn model_at(&self, mut index: u128) -> OrdinaryModel {
        let mut digits = vec![0usize; self.digits.len()];
        for (slot, &radix) in digits.iter_mut().zip(&self.digits) {
            *slot = (index % radix as u128) as usize;
            index /= radix as u128;
        }
        let mut model = OrdinaryModel::new(self.size).expect("size checked in new");
        let mut cursor = digits.into_iter();
        for (name, arity) in &self.funs {
            let values: Vec<usize> = cursor.by_ref().take(self.size.pow(*arity as u32)).collect();
            model.set_fun(name, *arity, values).expect("table shape is exact");
        }
        for (name, arity) in &self.preds {
            let values: Vec<bool> = cursor
                .by_ref()
                .take(self.size.pow(*arity as u32))
                .map(|d| d == 1)
                .collect();
            model
                .set_pred(name, *arity, values)
                .expect("table shape is exact");
        }
        model
    }
}
