//! Sequents and checkable derivations.
//!
//! Rules, with `Φ`, `Ψ` finite sets of formulas up to α:
//!
//! ```text
//! BotL  Φ,⊥ ⊢ Ψ
//! Ax    Φ,φ ⊢ φ,Ψ
//! AndL  Φ,φ1,φ2 ⊢ Ψ              /  Φ,φ1∧φ2 ⊢ Ψ
//! AndR  Φ ⊢ ψ1,Ψ   Φ ⊢ ψ2,Ψ      /  Φ ⊢ ψ1∧ψ2,Ψ
//! NegL  Φ ⊢ φ,Ψ                  /  Φ,¬φ ⊢ Ψ
//! NegR  Φ,φ ⊢ Ψ                  /  Φ ⊢ ¬φ,Ψ
//! AllL  Φ,φ[a:=s] ⊢ Ψ            /  Φ,∀a.φ ⊢ Ψ
//! AllR  Φ ⊢ ψ[a:=e],Ψ            /  Φ ⊢ ∀a.ψ,Ψ     e ∉ fa(Φ) ∪ fa(∀a.ψ,Ψ)
//! ```
//!
//! The premise may keep or drop the principal formula; either reading is
//! accepted. `s` is the node's witness and `e` its eigen atom, defaulting to
//! the binder `a`.

mod file;

pub use file::{parse_proof, ProofFileError};

use std::fmt;

use thiserror::Error;

use crate::nominal::{Atom, AtomSet, Perm};
use crate::ordinary::{ModelError, OrdinaryModel, Valuation};
use crate::syntax::{parse_sequent_parts, Formula, Signature, SyntaxError, Term};

/// Finite set of formulas up to α, in first-insertion order.
#[derive(Clone, Default)]
pub struct FormulaSet(Vec<Formula>);

impl FormulaSet {
    pub fn new() -> FormulaSet {
        FormulaSet(Vec::new())
    }

    pub fn contains(&self, phi: &Formula) -> bool {
        self.0.iter().any(|f| f.alpha_eq(phi))
    }

    pub fn insert(&mut self, phi: Formula) -> bool {
        if self.contains(&phi) {
            return false;
        }
        self.0.push(phi);
        true
    }

    pub fn remove(&mut self, phi: &Formula) -> bool {
        let before = self.0.len();
        self.0.retain(|f| !f.alpha_eq(phi));
        self.0.len() != before
    }

    pub fn with(mut self, phi: Formula) -> FormulaSet {
        self.insert(phi);
        self
    }

    pub fn without(mut self, phi: &Formula) -> FormulaSet {
        self.remove(phi);
        self
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    pub fn fa(&self) -> AtomSet {
        self.0.iter().fold(AtomSet::new(), |acc, f| acc.union(&f.fa()))
    }

    pub fn act(&self, p: &Perm) -> FormulaSet {
        self.0.iter().map(|f| f.act(p)).collect()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.0
    }
}

/// Set equality up to α.
impl PartialEq for FormulaSet {
    fn eq(&self, other: &FormulaSet) -> bool {
        self.len() == other.len() && self.0.iter().all(|f| other.contains(f))
    }
}

impl Eq for FormulaSet {}

impl FromIterator<Formula> for FormulaSet {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> FormulaSet {
        let mut s = FormulaSet::new();
        for f in iter {
            s.insert(f);
        }
        s
    }
}

impl<'a> IntoIterator for &'a FormulaSet {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for FormulaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, phi) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{phi}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormulaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct Sequent {
    pub left: FormulaSet,
    pub right: FormulaSet,
}

impl Sequent {
    pub fn new(left: impl IntoIterator<Item = Formula>, right: impl IntoIterator<Item = Formula>) -> Sequent {
        Sequent {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        }
    }

    /// Parses `phi1, phi2 |- psi1`, declaring unknown formers in `sig`.
    pub fn parse(text: &str, sig: &mut Signature) -> Result<Sequent, SyntaxError> {
        let (l, r) = parse_sequent_parts(text, sig)?;
        Ok(Sequent::new(l, r))
    }

    pub fn fa(&self) -> AtomSet {
        self.left.fa().union(&self.right.fa())
    }

    pub fn act(&self, p: &Perm) -> Sequent {
        Sequent {
            left: self.left.act(p),
            right: self.right.act(p),
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.left.iter().chain(self.right.iter())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.left.is_empty(), self.right.is_empty()) {
            (true, true) => f.write_str("|-"),
            (true, false) => write!(f, "|- {}", self.right),
            (false, true) => write!(f, "{} |-", self.left),
            (false, false) => write!(f, "{} |- {}", self.left, self.right),
        }
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    BotL,
    Ax,
    AndL,
    AndR,
    NegL,
    NegR,
    AllL,
    AllR,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::BotL,
        Rule::Ax,
        Rule::AndL,
        Rule::AndR,
        Rule::NegL,
        Rule::NegR,
        Rule::AllL,
        Rule::AllR,
    ];

    pub fn premise_count(self) -> usize {
        match self {
            Rule::BotL | Rule::Ax => 0,
            Rule::AndR => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::BotL => "BotL",
            Rule::Ax => "Ax",
            Rule::AndL => "AndL",
            Rule::AndR => "AndR",
            Rule::NegL => "NegL",
            Rule::NegR => "NegR",
            Rule::AllL => "AllL",
            Rule::AllR => "AllR",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Whether the principal formula sits on the left of the conclusion.
    fn principal_on_left(self) -> bool {
        matches!(self, Rule::BotL | Rule::AndL | Rule::NegL | Rule::AllL)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<Derivation>,
    /// The term instantiated by AllL.
    pub witness: Option<Term>,
    /// The fresh atom introduced by AllR.
    pub eigen: Option<Atom>,
    /// The formula the rule decomposes; inferred when absent.
    pub principal: Option<Formula>,
}

impl Derivation {
    pub fn leaf(rule: Rule, conclusion: Sequent) -> Derivation {
        Derivation {
            rule,
            conclusion,
            premises: Vec::new(),
            witness: None,
            eigen: None,
            principal: None,
        }
    }

    pub fn node(
        rule: Rule,
        conclusion: Sequent,
        principal: Formula,
        premises: Vec<Derivation>,
    ) -> Derivation {
        Derivation {
            rule,
            conclusion,
            premises,
            witness: None,
            eigen: None,
            principal: Some(principal),
        }
    }

    pub fn with_witness(mut self, s: Term) -> Derivation {
        self.witness = Some(s);
        self
    }

    pub fn with_eigen(mut self, e: Atom) -> Derivation {
        self.eigen = Some(e);
        self
    }

    /// Applies `p` to every formula, witness and eigen atom in the tree.
    pub fn act(&self, p: &Perm) -> Derivation {
        Derivation {
            rule: self.rule,
            conclusion: self.conclusion.act(p),
            premises: self.premises.iter().map(|d| d.act(p)).collect(),
            witness: self.witness.as_ref().map(|t| t.act(p)),
            eigen: self.eigen.map(|a| p.apply(a)),
            principal: self.principal.as_ref().map(|f| f.act(p)),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::node_count).sum::<usize>()
    }

    /// Every rule used, in preorder.
    pub fn rules(&self) -> Vec<Rule> {
        let mut out = vec![self.rule];
        for d in &self.premises {
            out.extend(d.rules());
        }
        out
    }

    /// The s-expression file form, indented two spaces per level.
    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        self.write_sexpr(&mut out, 0);
        out
    }

    fn write_sexpr(&self, out: &mut String, indent: usize) {
        let pad = " ".repeat(indent);
        out.push_str(&format!("{pad}({}", self.rule));
        out.push_str(&format!(" (concl {:?})", self.conclusion.to_string()));
        if let Some(p) = &self.principal {
            out.push_str(&format!(" (principal {:?})", p.to_string()));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!(" (witness {:?})", w.to_string()));
        }
        if let Some(e) = self.eigen {
            out.push_str(&format!(" (eigen {e})"));
        }
        for d in &self.premises {
            out.push_str(&format!("\n{pad}  (premise\n"));
            d.write_sexpr(out, indent + 4);
            out.push(')');
        }
        out.push(')');
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleViolation {
    #[error("{rule} expects {expected} premise(s), found {found}")]
    PremiseCount {
        rule: Rule,
        expected: usize,
        found: usize,
    },
    #[error("{rule}: principal formula `{formula}` is not in the {side} of the conclusion")]
    PrincipalAbsent {
        rule: Rule,
        formula: Formula,
        side: &'static str,
    },
    #[error("{rule}: `{formula}` does not have the shape this rule decomposes")]
    WrongShape { rule: Rule, formula: Formula },
    #[error("{rule}: no formula of the conclusion fits this rule")]
    NoPrincipal { rule: Rule },
    #[error("Ax: `{0}` is not on both sides of the conclusion")]
    NotShared(Formula),
    #[error("Ax: no formula occurs on both sides of the conclusion")]
    NothingShared,
    #[error("BotL: bot is not on the left of the conclusion")]
    NoBot,
    #[error("AllR: eigen atom {atom} occurs free in `{formula}`")]
    EigenNotFresh { atom: Atom, formula: Formula },
    #[error("{rule}: premise {index} is `{found}` but the rule requires `{expected}`")]
    PremiseMismatch {
        rule: Rule,
        index: usize,
        expected: Sequent,
        found: Sequent,
    },
    #[error("{rule} does not take a {what}")]
    Misplaced { rule: Rule, what: &'static str },
}

/// A violation at the node reached by following premise indices `path` from
/// the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {}: {violation}", show_path(.path))]
pub struct DerivationError {
    pub path: Vec<usize>,
    pub violation: Box<RuleViolation>,
}

fn show_path(path: &[usize]) -> String {
    let mut s = String::from("root");
    for i in path {
        s.push_str(&format!(".{i}"));
    }
    s
}

fn shape_ok(rule: Rule, phi: &Formula) -> bool {
    matches!(
        (rule, phi),
        (Rule::BotL, Formula::Bot)
            | (Rule::Ax, _)
            | (Rule::AndL | Rule::AndR, Formula::And(..))
            | (Rule::NegL | Rule::NegR, Formula::Neg(_))
            | (Rule::AllL | Rule::AllR, Formula::All(..))
    )
}

/// The premises required by `rule` with principal `p`, once with the
/// principal dropped from its side and once with it kept.
fn expected_premises(d: &Derivation, p: &Formula) -> Result<[Vec<Sequent>; 2], RuleViolation> {
    let c = &d.conclusion;
    let rule = d.rule;
    let mut out: [Vec<Sequent>; 2] = [Vec::new(), Vec::new()];
    for (keep, slot) in out.iter_mut().enumerate() {
        let (l, r) = if keep == 1 {
            (c.left.clone(), c.right.clone())
        } else if rule.principal_on_left() {
            (c.left.clone().without(p), c.right.clone())
        } else {
            (c.left.clone(), c.right.clone().without(p))
        };
        *slot = match (rule, p) {
            (Rule::AndL, Formula::And(x, y)) => vec![Sequent {
                left: l.with((**x).clone()).with((**y).clone()),
                right: r,
            }],
            (Rule::AndR, Formula::And(x, y)) => vec![
                Sequent {
                    left: l.clone(),
                    right: r.clone().with((**x).clone()),
                },
                Sequent {
                    left: l,
                    right: r.with((**y).clone()),
                },
            ],
            (Rule::NegL, Formula::Neg(x)) => vec![Sequent {
                left: l,
                right: r.with((**x).clone()),
            }],
            (Rule::NegR, Formula::Neg(x)) => vec![Sequent {
                left: l.with((**x).clone()),
                right: r,
            }],
            (Rule::AllL, Formula::All(a, body)) => {
                let s = d.witness.clone().unwrap_or(Term::Var(*a));
                vec![Sequent {
                    left: l.with(body.subst(*a, &s)),
                    right: r,
                }]
            }
            (Rule::AllR, Formula::All(a, body)) => {
                let e = d.eigen.unwrap_or(*a);
                for phi in c.formulas() {
                    if phi.fa().contains(e) {
                        return Err(RuleViolation::EigenNotFresh {
                            atom: e,
                            formula: phi.clone(),
                        });
                    }
                }
                vec![Sequent {
                    left: l,
                    right: r.with(body.subst(*a, &Term::Var(e))),
                }]
            }
            _ => {
                return Err(RuleViolation::WrongShape {
                    rule,
                    formula: p.clone(),
                })
            }
        };
    }
    Ok(out)
}

fn check_with_principal(d: &Derivation, p: &Formula) -> Result<(), RuleViolation> {
    let c = &d.conclusion;
    let rule = d.rule;
    let (side, name) = if rule.principal_on_left() {
        (&c.left, "left")
    } else {
        (&c.right, "right")
    };
    match rule {
        Rule::Ax => {
            return if c.left.contains(p) && c.right.contains(p) {
                Ok(())
            } else {
                Err(RuleViolation::NotShared(p.clone()))
            };
        }
        Rule::BotL if !matches!(p, Formula::Bot) => {
            return Err(RuleViolation::WrongShape {
                rule,
                formula: p.clone(),
            });
        }
        Rule::BotL => {
            return if c.left.contains(p) {
                Ok(())
            } else {
                Err(RuleViolation::NoBot)
            };
        }
        _ => {}
    }
    if !side.contains(p) {
        return Err(RuleViolation::PrincipalAbsent {
            rule,
            formula: p.clone(),
            side: name,
        });
    }
    let [dropped, kept] = expected_premises(d, p)?;
    for (index, premise) in d.premises.iter().enumerate() {
        let found = &premise.conclusion;
        if *found != dropped[index] && *found != kept[index] {
            return Err(RuleViolation::PremiseMismatch {
                rule,
                index,
                expected: dropped[index].clone(),
                found: found.clone(),
            });
        }
    }
    Ok(())
}

/// Checks that `d.conclusion` follows from the conclusions of its immediate
/// premises by `d.rule`. Premises themselves are not checked.
pub fn check_node(d: &Derivation) -> Result<(), RuleViolation> {
    let rule = d.rule;
    if d.premises.len() != rule.premise_count() {
        return Err(RuleViolation::PremiseCount {
            rule,
            expected: rule.premise_count(),
            found: d.premises.len(),
        });
    }
    if d.witness.is_some() && rule != Rule::AllL {
        return Err(RuleViolation::Misplaced {
            rule,
            what: "witness",
        });
    }
    if d.eigen.is_some() && rule != Rule::AllR {
        return Err(RuleViolation::Misplaced {
            rule,
            what: "eigen atom",
        });
    }
    if let Some(p) = &d.principal {
        return check_with_principal(d, p);
    }
    let c = &d.conclusion;
    let candidates: Vec<&Formula> = match rule {
        Rule::Ax => c.left.iter().filter(|f| c.right.contains(f)).collect(),
        _ if rule.principal_on_left() => c.left.iter().filter(|f| shape_ok(rule, f)).collect(),
        _ => c.right.iter().filter(|f| shape_ok(rule, f)).collect(),
    };
    let mut first_error = None;
    for p in candidates {
        match check_with_principal(d, p) {
            Ok(()) => return Ok(()),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(first_error.unwrap_or(match rule {
        Rule::Ax => RuleViolation::NothingShared,
        Rule::BotL => RuleViolation::NoBot,
        _ => RuleViolation::NoPrincipal { rule },
    }))
}

/// Checks every node; returns the root conclusion.
pub fn check_derivation(d: &Derivation) -> Result<&Sequent, DerivationError> {
    fn walk(d: &Derivation, path: &mut Vec<usize>) -> Result<(), DerivationError> {
        for (i, p) in d.premises.iter().enumerate() {
            path.push(i);
            walk(p, path)?;
            path.pop();
        }
        check_node(d).map_err(|violation| DerivationError {
            path: path.clone(),
            violation: Box::new(violation),
        })
    }
    walk(d, &mut Vec::new())?;
    Ok(&d.conclusion)
}

/// `⋀ left ⇒ ⋁ right` in `n` under `v`.
pub fn holds_in_ordinary(seq: &Sequent, n: &OrdinaryModel, v: &Valuation) -> Result<bool, ModelError> {
    for phi in &seq.left {
        if !n.eval_formula(v, phi)? {
            return Ok(true);
        }
    }
    for psi in &seq.right {
        if n.eval_formula(v, psi)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> Sequent {
        Sequent::parse(text, &mut Signature::new()).unwrap()
    }

    fn formula(text: &str) -> Formula {
        crate::syntax::parse_formula_inferring(text, &mut Signature::new()).unwrap()
    }

    #[test]
    fn sequents_are_alpha_sets() {
        let s = seq("forall a. P(a), forall b. P(b), Q |- Q, Q");
        assert_eq!(s.left.len(), 2);
        assert_eq!(s.right.len(), 1);
        assert_eq!(seq("Q, P(a) |-"), seq("P(a), Q |-"));
        assert_eq!(s.to_string(), "forall a. P(a), Q |- Q");
        assert_eq!(seq("|- ~bot").to_string(), "|- ~bot");
        assert_eq!(seq("bot |- ").to_string(), "bot |-");
    }

    #[test]
    fn bot_left() {
        let d = Derivation::leaf(Rule::BotL, seq("P(a), bot |- Q(b)"));
        assert_eq!(check_node(&d), Ok(()));
        let d = Derivation::leaf(Rule::BotL, seq("P(a) |- Q(b)"));
        assert_eq!(check_node(&d), Err(RuleViolation::NoBot));
    }

    #[test]
    fn axiom() {
        assert_eq!(
            check_node(&Derivation::leaf(Rule::Ax, seq("P(a) |- P(a)"))),
            Ok(())
        );
        assert_eq!(
            check_node(&Derivation::leaf(
                Rule::Ax,
                seq("forall a. P(a) |- forall b. P(b)")
            )),
            Ok(())
        );
        assert_eq!(
            check_node(&Derivation::leaf(Rule::Ax, seq("P(a) |- P(b)"))),
            Err(RuleViolation::NothingShared)
        );
    }

    #[test]
    fn neg_right_over_bot_left() {
        let top = seq("|- ~bot");
        let d = Derivation::node(
            Rule::NegR,
            top.clone(),
            formula("~bot"),
            vec![Derivation::leaf(Rule::BotL, seq("bot |-"))],
        );
        assert_eq!(check_derivation(&d), Ok(&top));
    }

    #[test]
    fn forall_right_side_condition() {
        let d = Derivation::node(
            Rule::AllR,
            seq("P(a) |- forall a. Q(a)"),
            formula("forall a. Q(a)"),
            vec![Derivation::leaf(Rule::Ax, seq("P(a) |- Q(a)"))],
        )
        .with_eigen(Atom::new(0));
        let err = check_node(&d).unwrap_err();
        assert!(matches!(err, RuleViolation::EigenNotFresh { atom, .. } if atom == Atom::new(0)));
        let d = Derivation {
            eigen: Some(Atom::new(1)),
            ..d
        };
        // with a fresh eigen the node is fine; the Ax leaf is not
        assert!(check_node(&Derivation {
            premises: vec![Derivation::leaf(Rule::Ax, seq("P(a) |- Q(b)"))],
            ..d.clone()
        })
        .is_ok());
        assert!(matches!(
            check_node(&d),
            Err(RuleViolation::PremiseMismatch { .. })
        ));
        let err = check_derivation(&d).unwrap_err();
        assert_eq!(err.path, vec![0]);
        assert_eq!(*err.violation, RuleViolation::NothingShared);
    }

    #[test]
    fn failing_leaf_is_located() {
        let d = Derivation::node(
            Rule::AndL,
            seq("P(a) & Q(a) |- P(a)"),
            formula("P(a) & Q(a)"),
            vec![Derivation::leaf(Rule::BotL, seq("P(a), Q(a) |- P(a)"))],
        );
        let err = check_derivation(&d).unwrap_err();
        assert_eq!(err.path, vec![0]);
        assert_eq!(
            err.to_string(),
            "at root.0: BotL: bot is not on the left of the conclusion"
        );
    }

    #[test]
    fn forall_left_with_witness() {
        let d = Derivation::node(
            Rule::AllL,
            seq("forall a. P(a) |- P(f(b))"),
            formula("forall a. P(a)"),
            vec![Derivation::leaf(
                Rule::Ax,
                seq("forall a. P(a), P(f(b)) |- P(f(b))"),
            )],
        )
        .with_witness(Term::app("f", vec![Term::Var(Atom::new(1))]));
        assert!(check_derivation(&d).is_ok());
        // the principal may also be dropped
        let d2 = Derivation {
            premises: vec![Derivation::leaf(Rule::Ax, seq("P(f(b)) |- P(f(b))"))],
            ..d.clone()
        };
        assert!(check_derivation(&d2).is_ok());
        let wrong = Derivation {
            witness: Some(Term::Var(Atom::new(2))),
            ..d
        };
        assert!(check_node(&wrong).is_err());
    }

    #[test]
    fn principal_is_inferred() {
        let base = Derivation::leaf(Rule::NegL, seq("~P(a), Q |- R"));
        let good = Derivation {
            premises: vec![Derivation::leaf(Rule::BotL, seq("Q |- P(a), R"))],
            ..base.clone()
        };
        assert!(check_node(&good).is_ok());
        let bad = Derivation {
            premises: vec![Derivation::leaf(Rule::BotL, seq("Q |- R"))],
            ..base
        };
        assert!(check_node(&bad).unwrap_err().to_string().contains("premise 0"));
    }

    #[test]
    fn ordinary_truth() {
        let n = OrdinaryModel::new(2)
            .unwrap()
            .with_pred("P", 1, vec![true, false])
            .unwrap();
        let v: Valuation = [(Atom::new(0), 0)].into_iter().collect();
        assert!(holds_in_ordinary(&seq("|- ~bot"), &n, &v).unwrap());
        assert!(!holds_in_ordinary(&seq("P(a) |- forall a. P(a)"), &n, &v).unwrap());
        assert!(holds_in_ordinary(&seq("bot |-"), &n, &Valuation::new()).unwrap());
    }
}
