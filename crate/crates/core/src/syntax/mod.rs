//! First-order syntax: signatures, terms, formulas.
//!
//! Formulas are raw trees: binders hold concrete atoms and the permutation
//! action renames them along with every other occurrence. α-equivalence is a
//! relation on raw trees ([`Formula::alpha_eq`]), never a quotient.

mod parse;
mod print;

pub use parse::{
    parse_formula, parse_formula_inferring, parse_sequent_parts, parse_term, parse_term_inferring,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::nominal::{fresh_atom, Atom, AtomSet, NominalSet, Perm};

/// Name of a term-former or predicate-former.
pub type Symbol = Arc<str>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown {kind} `{name}`")]
    UnknownFormer { kind: FormerKind, name: String },
    #[error("{kind} `{name}` has arity {expected} but was given {found} argument(s)")]
    Arity {
        kind: FormerKind,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("`{0}` cannot be used as a symbol name")]
    BadName(String),
    #[error("`{0}` is declared more than once")]
    Duplicate(String),
    #[error("signature line {line}: {message}")]
    SignatureFile { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormerKind {
    Function,
    Predicate,
}

impl fmt::Display for FormerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormerKind::Function => "term-former",
            FormerKind::Predicate => "predicate-former",
        })
    }
}

const KEYWORDS: [&str; 2] = ["bot", "forall"];

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Term-formers and predicate-formers with their arities, plus optional
/// user-chosen names for atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    funs: BTreeMap<Symbol, usize>,
    preds: BTreeMap<Symbol, usize>,
    atom_names: BTreeMap<String, Atom>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Constants may not be spelled like atoms, since a bare identifier in
    /// term position would be ambiguous. Applied formers may: `f(a)` is
    /// never an atom.
    pub fn declare_fun(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        let atom_like = Atom::from_name(name).is_some() || self.atom_names.contains_key(name);
        if !is_identifier(name) || KEYWORDS.contains(&name) || (arity == 0 && atom_like) {
            return Err(SyntaxError::BadName(name.to_string()));
        }
        if self.funs.contains_key(name) {
            return Err(SyntaxError::Duplicate(name.to_string()));
        }
        self.funs.insert(name.into(), arity);
        Ok(())
    }

    pub fn declare_pred(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        if !is_identifier(name) || KEYWORDS.contains(&name) {
            return Err(SyntaxError::BadName(name.to_string()));
        }
        if self.preds.contains_key(name) {
            return Err(SyntaxError::Duplicate(name.to_string()));
        }
        self.preds.insert(name.into(), arity);
        Ok(())
    }

    /// Binds a user name to an atom index for parsing.
    pub fn declare_atom(&mut self, name: &str, atom: Atom) -> Result<(), SyntaxError> {
        if !is_identifier(name) || KEYWORDS.contains(&name) || self.fun_arity(name) == Some(0) {
            return Err(SyntaxError::BadName(name.to_string()));
        }
        if self.atom_names.insert(name.to_string(), atom).is_some() {
            return Err(SyntaxError::Duplicate(name.to_string()));
        }
        Ok(())
    }

    pub fn fun_arity(&self, name: &str) -> Option<usize> {
        self.funs.get(name).copied()
    }

    pub fn pred_arity(&self, name: &str) -> Option<usize> {
        self.preds.get(name).copied()
    }

    pub fn funs(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.funs.iter().map(|(k, &v)| (k, v))
    }

    pub fn preds(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.preds.iter().map(|(k, &v)| (k, v))
    }

    /// Resolves an identifier in term position to an atom, if it names one.
    pub fn atom_named(&self, name: &str) -> Option<Atom> {
        self.atom_names
            .get(name)
            .copied()
            .or_else(|| Atom::from_name(name))
    }

    /// Parses the signature file format: `fun f/2`, `pred P/1`, and
    /// `atom x = 7` lines; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Signature, SyntaxError> {
        let mut sig = Signature::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| SyntaxError::SignatureFile {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (keyword, rest) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| err(format!("expected a declaration, found `{line}`")))?;
            let rest = rest.trim();
            match keyword {
                "fun" | "pred" => {
                    let (name, arity) = rest
                        .split_once('/')
                        .ok_or_else(|| err(format!("expected `name/arity`, found `{rest}`")))?;
                    let arity: usize = arity
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("bad arity `{}`", arity.trim())))?;
                    let declared = if keyword == "fun" {
                        sig.declare_fun(name.trim(), arity)
                    } else {
                        sig.declare_pred(name.trim(), arity)
                    };
                    declared.map_err(|e| err(e.to_string()))?;
                }
                "atom" => {
                    let (name, index) = rest
                        .split_once('=')
                        .ok_or_else(|| err(format!("expected `name = index`, found `{rest}`")))?;
                    let index: u32 = index
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("bad atom index `{}`", index.trim())))?;
                    sig.declare_atom(name.trim(), Atom::new(index))
                        .map_err(|e| err(e.to_string()))?;
                }
                other => return Err(err(format!("unknown declaration `{other}`"))),
            }
        }
        Ok(sig)
    }

    pub fn check_term(&self, t: &Term) -> Result<(), SyntaxError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                let expected = self.fun_arity(f).ok_or_else(|| SyntaxError::UnknownFormer {
                    kind: FormerKind::Function,
                    name: f.to_string(),
                })?;
                if expected != args.len() {
                    return Err(SyntaxError::Arity {
                        kind: FormerKind::Function,
                        name: f.to_string(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    pub fn check_formula(&self, phi: &Formula) -> Result<(), SyntaxError> {
        match phi {
            Formula::Bot => Ok(()),
            Formula::Pred(p, args) => {
                let expected = self.pred_arity(p).ok_or_else(|| SyntaxError::UnknownFormer {
                    kind: FormerKind::Predicate,
                    name: p.to_string(),
                })?;
                if expected != args.len() {
                    return Err(SyntaxError::Arity {
                        kind: FormerKind::Predicate,
                        name: p.to_string(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Formula::And(l, r) => {
                self.check_formula(l)?;
                self.check_formula(r)
            }
            Formula::Neg(g) | Formula::All(_, g) => self.check_formula(g),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, arity) in &self.funs {
            writeln!(f, "fun {name}/{arity}")?;
        }
        for (name, arity) in &self.preds {
            writeln!(f, "pred {name}/{arity}")?;
        }
        for (name, atom) in &self.atom_names {
            writeln!(f, "atom {name} = {}", atom.index())?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Atom),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(a: Atom) -> Term {
        Term::Var(a)
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.into(), args)
    }

    pub fn fa(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect_atoms(&mut out);
        out
    }

    /// Terms have no binders, so every occurring atom is free.
    pub fn atoms(&self) -> AtomSet {
        self.fa()
    }

    fn collect_atoms(&self, out: &mut AtomSet) {
        match self {
            Term::Var(a) => {
                out.insert(*a);
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_atoms(out)),
        }
    }

    pub fn act(&self, p: &Perm) -> Term {
        match self {
            Term::Var(a) => Term::Var(p.apply(*a)),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|t| t.act(p)).collect()),
        }
    }

    /// `self[a := s]`.
    pub fn subst(&self, a: Atom, s: &Term) -> Term {
        match self {
            Term::Var(b) if *b == a => s.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|t| t.subst(a, s)).collect()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Pred(Symbol, Vec<Term>),
    And(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
    All(Atom, Box<Formula>),
}

impl Formula {
    pub fn pred(p: &str, args: Vec<Term>) -> Formula {
        Formula::Pred(p.into(), args)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }

    pub fn all(a: Atom, body: Formula) -> Formula {
        Formula::All(a, Box::new(body))
    }

    pub fn fa(&self) -> AtomSet {
        match self {
            Formula::Bot => AtomSet::new(),
            Formula::Pred(_, args) => {
                let mut out = AtomSet::new();
                args.iter().for_each(|t| t.collect_atoms(&mut out));
                out
            }
            Formula::And(l, r) => l.fa().union(&r.fa()),
            Formula::Neg(g) => g.fa(),
            Formula::All(a, g) => g.fa().without(*a),
        }
    }

    /// Every atom occurring anywhere, binders included.
    pub fn atoms(&self) -> AtomSet {
        match self {
            Formula::Bot => AtomSet::new(),
            Formula::Pred(..) => self.fa(),
            Formula::And(l, r) => l.atoms().union(&r.atoms()),
            Formula::Neg(g) => g.atoms(),
            Formula::All(a, g) => g.atoms().with(*a),
        }
    }

    pub fn act(&self, p: &Perm) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Pred(name, args) => Formula::Pred(name.clone(), args.iter().map(|t| t.act(p)).collect()),
            Formula::And(l, r) => Formula::and(l.act(p), r.act(p)),
            Formula::Neg(g) => Formula::neg(g.act(p)),
            Formula::All(a, g) => Formula::all(p.apply(*a), g.act(p)),
        }
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        match (self, other) {
            (Formula::Bot, Formula::Bot) => true,
            (Formula::Pred(p, xs), Formula::Pred(q, ys)) => p == q && xs == ys,
            (Formula::And(l1, r1), Formula::And(l2, r2)) => l1.alpha_eq(l2) && r1.alpha_eq(r2),
            (Formula::Neg(x), Formula::Neg(y)) => x.alpha_eq(y),
            (Formula::All(a, f), Formula::All(b, g)) => {
                if a == b {
                    return f.alpha_eq(g);
                }
                let c = fresh_atom(&f.fa().union(&g.fa()).with(*a).with(*b));
                f.act(&Perm::swap(c, *a)).alpha_eq(&g.act(&Perm::swap(c, *b)))
            }
            _ => false,
        }
    }

    /// Capture-avoiding `self[a := s]`. A binder that would capture an atom
    /// of `s` is renamed to the least atom fresh for the body, `s`, `a` and
    /// the binder itself.
    pub fn subst(&self, a: Atom, s: &Term) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|t| t.subst(a, s)).collect()),
            Formula::And(l, r) => Formula::and(l.subst(a, s), r.subst(a, s)),
            Formula::Neg(g) => Formula::neg(g.subst(a, s)),
            Formula::All(b, body) => {
                let body_fa = body.fa();
                if *b == a || !body_fa.contains(a) {
                    return self.clone();
                }
                let s_fa = s.fa();
                if s_fa.contains(*b) {
                    let c = fresh_atom(&body_fa.union(&s_fa).with(a).with(*b));
                    let renamed = body.act(&Perm::swap(c, *b));
                    Formula::all(c, renamed.subst(a, s))
                } else {
                    Formula::all(*b, body.subst(a, s))
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Pred(..) => 0,
            Formula::And(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Neg(g) | Formula::All(_, g) => 1 + g.depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Bot => 1,
            Formula::Pred(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::And(l, r) => 1 + l.size() + r.size(),
            Formula::Neg(g) | Formula::All(_, g) => 1 + g.size(),
        }
    }

    /// Adds every term-former and predicate-former occurring here to `sig`,
    /// failing on an arity clash with an existing declaration.
    pub fn declare_symbols(&self, sig: &mut Signature) -> Result<(), SyntaxError> {
        fn term(t: &Term, sig: &mut Signature) -> Result<(), SyntaxError> {
            if let Term::App(f, args) = t {
                match sig.fun_arity(f) {
                    None => sig.declare_fun(f, args.len())?,
                    Some(n) if n != args.len() => {
                        return Err(SyntaxError::Arity {
                            kind: FormerKind::Function,
                            name: f.to_string(),
                            expected: n,
                            found: args.len(),
                        })
                    }
                    Some(_) => {}
                }
                args.iter().try_for_each(|a| term(a, sig))?;
            }
            Ok(())
        }
        match self {
            Formula::Bot => Ok(()),
            Formula::Pred(p, args) => {
                match sig.pred_arity(p) {
                    None => sig.declare_pred(p, args.len())?,
                    Some(n) if n != args.len() => {
                        return Err(SyntaxError::Arity {
                            kind: FormerKind::Predicate,
                            name: p.to_string(),
                            expected: n,
                            found: args.len(),
                        })
                    }
                    Some(_) => {}
                }
                args.iter().try_for_each(|a| term(a, sig))
            }
            Formula::And(l, r) => {
                l.declare_symbols(sig)?;
                r.declare_symbols(sig)
            }
            Formula::Neg(g) | Formula::All(_, g) => g.declare_symbols(sig),
        }
    }
}

/// Terms under the natural action. Terms have no binders, so support is the
/// set of occurring atoms.
#[derive(Clone, Copy, Debug, Default)]
pub struct RawTerms;

impl NominalSet for RawTerms {
    type Elem = Term;

    fn act(&self, p: &Perm, x: &Term) -> Term {
        x.act(p)
    }

    fn equal(&self, x: &Term, y: &Term) -> bool {
        x == y
    }

    fn support_bound(&self, x: &Term) -> AtomSet {
        x.atoms()
    }

    fn show(&self, x: &Term) -> String {
        x.to_string()
    }
}

/// Formulas compared as raw trees; support is every occurring atom.
#[derive(Clone, Copy, Debug, Default)]
pub struct RawFormulas;

impl NominalSet for RawFormulas {
    type Elem = Formula;

    fn act(&self, p: &Perm, x: &Formula) -> Formula {
        x.act(p)
    }

    fn equal(&self, x: &Formula, y: &Formula) -> bool {
        x == y
    }

    fn support_bound(&self, x: &Formula) -> AtomSet {
        x.atoms()
    }

    fn show(&self, x: &Formula) -> String {
        x.to_string()
    }
}

/// Formulas compared up to α-equivalence; support is the set of free atoms.
#[derive(Clone, Copy, Debug, Default)]
pub struct AlphaFormulas;

impl NominalSet for AlphaFormulas {
    type Elem = Formula;

    fn act(&self, p: &Perm, x: &Formula) -> Formula {
        x.act(p)
    }

    fn equal(&self, x: &Formula, y: &Formula) -> bool {
        x.alpha_eq(y)
    }

    fn support_bound(&self, x: &Formula) -> AtomSet {
        x.atoms()
    }

    fn show(&self, x: &Formula) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nominal::{is_fresh_by_swap, support};

    const A: Atom = Atom::new(0);
    const B: Atom = Atom::new(1);
    const C: Atom = Atom::new(2);

    fn v(a: Atom) -> Term {
        Term::Var(a)
    }

    fn p(args: Vec<Term>) -> Formula {
        Formula::pred("P", args)
    }

    #[test]
    fn free_atoms() {
        assert!(Formula::Bot.fa().is_empty());
        let phi = Formula::all(A, p(vec![v(A), v(B)]));
        assert_eq!(phi.fa(), AtomSet::singleton(B));
        let psi = Formula::and(
            Formula::pred("R", vec![Term::app("f", vec![v(A)])]),
            Formula::neg(p(vec![v(A)])),
        );
        assert_eq!(psi.fa(), AtomSet::singleton(A));
    }

    #[test]
    fn action_renames_binders() {
        let ab = Perm::swap(A, B);
        assert_eq!(p(vec![v(A)]).act(&ab), p(vec![v(B)]));
        let phi = Formula::all(A, p(vec![v(A)]));
        let moved = phi.act(&ab);
        assert_eq!(moved, Formula::all(B, p(vec![v(B)])));
        assert!(moved.alpha_eq(&phi));
        assert_eq!(phi.act(&Perm::identity()), phi);
    }

    #[test]
    fn alpha_examples() {
        let pa = Formula::all(A, p(vec![v(A)]));
        let pb = Formula::all(B, p(vec![v(B)]));
        assert!(pa.alpha_eq(&pb));
        let q1 = Formula::all(A, Formula::pred("Q", vec![v(A), v(B)]));
        let q2 = Formula::all(B, Formula::pred("Q", vec![v(B), v(B)]));
        assert!(!q1.alpha_eq(&q2));
        assert!(q1.alpha_eq(&q1));
        // nested shadowing
        let s1 = Formula::all(A, Formula::all(A, p(vec![v(A)])));
        let s2 = Formula::all(B, Formula::all(C, p(vec![v(C)])));
        assert!(s1.alpha_eq(&s2));
        let s3 = Formula::all(B, Formula::all(C, p(vec![v(B)])));
        assert!(!s1.alpha_eq(&s3));
    }

    #[test]
    fn substitution_examples() {
        let fa_ = Term::app("f", vec![v(A)]);
        assert_eq!(fa_.subst(A, &v(B)), Term::app("f", vec![v(B)]));

        let phi = Formula::all(B, p(vec![v(A)]));
        let out = phi.subst(A, &v(B));
        // renamed binder is the least atom fresh for {a, b}
        assert_eq!(out, Formula::all(C, p(vec![v(B)])));
        assert!(out.alpha_eq(&Formula::all(Atom::new(7), p(vec![v(B)]))));

        let psi = Formula::and(p(vec![v(A)]), Formula::all(A, p(vec![v(A)])));
        assert!(psi.subst(A, &v(A)).alpha_eq(&psi));
        // bound occurrences are untouched
        assert_eq!(
            psi.subst(A, &v(C)),
            Formula::and(p(vec![v(C)]), Formula::all(A, p(vec![v(A)])))
        );
    }

    #[test]
    fn formula_support_is_free_atoms_up_to_alpha() {
        let phi = Formula::all(A, p(vec![v(A)]));
        assert!(is_fresh_by_swap(&AlphaFormulas, A, &phi));
        assert!(!is_fresh_by_swap(&RawFormulas, A, &phi));
        assert_eq!(support(&RawTerms, &v(A)), AtomSet::singleton(A));
        assert!(is_fresh_by_swap(&RawTerms, A, &v(B)));
        assert!(!is_fresh_by_swap(&RawTerms, A, &v(A)));
        let q = Formula::all(A, Formula::pred("Q", vec![v(A), v(B)]));
        assert_eq!(support(&AlphaFormulas, &q), AtomSet::singleton(B));
        assert_eq!(support(&RawFormulas, &q), [A, B].into_iter().collect());
    }

    #[test]
    fn signature_rules() {
        let mut sig = Signature::new();
        sig.declare_fun("f", 2).unwrap();
        assert_eq!(sig.declare_fun("f", 1), Err(SyntaxError::Duplicate("f".into())));
        assert!(matches!(sig.declare_fun("a", 0), Err(SyntaxError::BadName(_))));
        assert!(matches!(sig.declare_fun("a12", 0), Err(SyntaxError::BadName(_))));
        assert!(matches!(
            sig.declare_pred("forall", 0),
            Err(SyntaxError::BadName(_))
        ));
        sig.declare_pred("P", 1).unwrap();
        assert!(sig.check_formula(&p(vec![v(A)])).is_ok());
        assert!(matches!(
            sig.check_formula(&p(vec![v(A), v(B)])),
            Err(SyntaxError::Arity {
                expected: 1,
                found: 2,
                ..
            })
        ));
        assert!(matches!(
            sig.check_term(&Term::app("g", vec![])),
            Err(SyntaxError::UnknownFormer { .. })
        ));
    }

    #[test]
    fn signature_file_round_trip() {
        let text = "# demo\nfun f/2\nfun zero/0\npred P/1\natom x = 40\n";
        let sig = Signature::parse_file(text).unwrap();
        assert_eq!(sig.fun_arity("f"), Some(2));
        assert_eq!(sig.pred_arity("P"), Some(1));
        assert_eq!(sig.atom_named("x"), Some(Atom::new(40)));
        assert_eq!(Signature::parse_file(&sig.to_string()).unwrap(), sig);
        let bad = Signature::parse_file("fun f/2\nwhat\n").unwrap_err();
        assert!(matches!(bad, SyntaxError::SignatureFile { line: 2, .. }));
    }
}
