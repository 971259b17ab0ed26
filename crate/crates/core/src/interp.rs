//! Denotations in nominal models, the checks built on them, and exhaustive
//! countermodel search over small Tarski models.

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{LawTally, SubstitutionAlgebra, SuiteConfig, SuiteReport, TermlikeAlgebra, Verdict};
use crate::gen::{self, SuiteRng};
use crate::lattice::{Complemented, NominalBooleanAlgebra, NominalPoset};
use crate::lifted::{LiftedModel, LiftedProp, LiftedProps, LiftedValue, LiftedValues};
use crate::nominal::{Atom, NominalSet, Perm};
use crate::ordinary::{ModelError, ModelSpace, OrdinaryModel, Valuation};
use crate::sequent::{Derivation, Sequent};
use crate::syntax::{Formula, Signature, SyntaxError, Term};

/// A termlike algebra of values, a nominal Boolean algebra of truth values
/// over it, and an equivariant interpretation of every symbol.
pub trait NominalModel {
    type Terms: TermlikeAlgebra;
    type Props: NominalBooleanAlgebra<Self::Terms>;

    fn terms(&self) -> Self::Terms;

    fn props(&self) -> Self::Props;

    fn interpret_fun(
        &self,
        name: &str,
        args: &[<Self::Terms as NominalSet>::Elem],
    ) -> Result<<Self::Terms as NominalSet>::Elem, ModelError>;

    fn interpret_pred(
        &self,
        name: &str,
        args: &[<Self::Terms as NominalSet>::Elem],
    ) -> Result<<Self::Props as NominalSet>::Elem, ModelError>;

    /// The symbols this model interprets.
    fn signature(&self) -> Signature;
}

impl NominalModel for LiftedModel {
    type Terms = LiftedValues;
    type Props = LiftedProps;

    fn terms(&self) -> LiftedValues {
        self.values()
    }

    fn props(&self) -> LiftedProps {
        LiftedModel::props(self)
    }

    fn interpret_fun(&self, name: &str, args: &[LiftedValue]) -> Result<LiftedValue, ModelError> {
        self.lift_fn(name, args)
    }

    fn interpret_pred(&self, name: &str, args: &[LiftedValue]) -> Result<LiftedProp, ModelError> {
        self.lift_pred(name, args)
    }

    fn signature(&self) -> Signature {
        self.base().signature()
    }
}

type TermElem<M> = <<M as NominalModel>::Terms as NominalSet>::Elem;
type PropElem<M> = <<M as NominalModel>::Props as NominalSet>::Elem;

pub fn denote_term<M: NominalModel>(m: &M, r: &Term) -> Result<TermElem<M>, ModelError> {
    match r {
        Term::Var(a) => Ok(m.terms().atm(*a)),
        Term::App(f, args) => {
            let xs = args
                .iter()
                .map(|t| denote_term(m, t))
                .collect::<Result<Vec<_>, _>>()?;
            m.interpret_fun(f, &xs)
        }
    }
}

pub fn denote_formula<M: NominalModel>(m: &M, phi: &Formula) -> Result<PropElem<M>, ModelError> {
    let b = m.props();
    Ok(match phi {
        Formula::Bot => b.bot(),
        Formula::Pred(p, args) => {
            let xs = args
                .iter()
                .map(|t| denote_term(m, t))
                .collect::<Result<Vec<_>, _>>()?;
            m.interpret_pred(p, &xs)?
        }
        Formula::And(l, r) => b.meet(&denote_formula(m, l)?, &denote_formula(m, r)?),
        Formula::Neg(g) => b.neg(&denote_formula(m, g)?),
        Formula::All(a, g) => b.forall(*a, &denote_formula(m, g)?),
    })
}

/// `⟦φ⟧ = ⊤`.
pub fn is_valid<M: NominalModel>(m: &M, phi: &Formula) -> Result<bool, ModelError> {
    let b = m.props();
    Ok(b.equal(&denote_formula(m, phi)?, &b.top()))
}

/// `⟦r[a:=s]⟧ = ⟦r⟧[a↦⟦s⟧]`.
pub fn check_term_subst_lemma<M: NominalModel>(
    m: &M,
    r: &Term,
    a: Atom,
    s: &Term,
) -> Result<bool, ModelError> {
    let u = m.terms();
    let lhs = denote_term(m, &r.subst(a, s))?;
    let rhs = u.subst(&denote_term(m, r)?, a, &denote_term(m, s)?);
    Ok(u.equal(&lhs, &rhs))
}

/// `⟦φ[a:=s]⟧ = ⟦φ⟧[a↦⟦s⟧]`.
pub fn check_subst_lemma<M: NominalModel>(
    m: &M,
    phi: &Formula,
    a: Atom,
    s: &Term,
) -> Result<bool, ModelError> {
    let b = m.props();
    let lhs = denote_formula(m, &phi.subst(a, s))?;
    let rhs = SubstitutionAlgebra::<M::Terms>::subst(&b, &denote_formula(m, phi)?, a, &denote_term(m, s)?);
    Ok(b.equal(&lhs, &rhs))
}

/// `⋀⟦Φ⟧` and `⋁⟦Ψ⟧` for a sequent `Φ ⊢ Ψ`.
pub fn sequent_bounds<M: NominalModel>(
    m: &M,
    seq: &Sequent,
) -> Result<(PropElem<M>, PropElem<M>), ModelError> {
    let b = m.props();
    let denote_all = |fs: &[Formula]| {
        fs.iter()
            .map(|f| denote_formula(m, f))
            .collect::<Result<Vec<_>, _>>()
    };
    let left = b.meet_all(&denote_all(seq.left.as_slice())?);
    let right = b.join_all(&denote_all(seq.right.as_slice())?);
    Ok((left, right))
}

/// `⋀⟦Φ⟧ ≤ ⋁⟦Ψ⟧`.
pub fn entails<M: NominalModel>(m: &M, seq: &Sequent) -> Result<bool, ModelError> {
    let (l, r) = sequent_bounds(m, seq)?;
    Ok(m.props().le(&l, &r))
}

/// The conclusion of a checked derivation is semantically entailed.
pub fn check_soundness<M: NominalModel>(m: &M, d: &Derivation) -> Result<bool, ModelError> {
    entails(m, &d.conclusion)
}

/// The lifted denotation of `phi` at `v` agrees with its Tarski truth
/// value under `v`.
pub fn check_bridge(n: &OrdinaryModel, phi: &Formula, v: &Valuation) -> Result<bool, ModelError> {
    let lifted = denote_formula(&LiftedModel::new(n.clone()), phi)?;
    let at_v = lifted.eval_at(v).map_err(|_| {
        let missing = phi.fa().iter().find(|a| v.get(*a).is_none());
        ModelError::UnboundAtom(missing.unwrap_or(Atom::new(0)))
    })?;
    Ok(at_v == n.eval_formula(v, phi)?)
}

/// Commutation of a symbol's interpretation with substitution and with
/// permutations, on generated arguments.
pub fn run_model_suite<M: NominalModel>(m: &M, subject: &str, cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = gen::rng_from_seed(cfg.seed);
    let pool = &cfg.pool;
    let u = m.terms();
    let b = m.props();
    let sig = m.signature();
    let mut comm_f = LawTally::new("comm-fun");
    let mut comm_p = LawTally::new("comm-pred");
    let mut equiv_f = LawTally::new("equivariant-fun");
    let mut equiv_p = LawTally::new("equivariant-pred");
    let args = |rng: &mut SuiteRng, n: usize| -> Vec<TermElem<M>> {
        (0..n).map(|_| u.generate(rng, pool)).collect()
    };
    let show = |xs: &[TermElem<M>]| xs.iter().map(|x| u.show(x)).collect::<Vec<_>>().join(", ");
    for _ in 0..cfg.trials {
        let a = gen::random_atom(&mut rng, pool);
        let c = gen::random_atom(&mut rng, pool);
        let perm = Perm::swap(a, c);
        let w = u.generate(&mut rng, pool);
        for (name, arity) in sig.funs() {
            let xs = args(&mut rng, arity);
            let fx = m.interpret_fun(name, &xs).expect("declared symbol");
            let moved: Vec<_> = xs.iter().map(|x| u.subst(x, a, &w)).collect();
            let ok = u.equal(
                &u.subst(&fx, a, &w),
                &m.interpret_fun(name, &moved).expect("declared symbol"),
            );
            comm_f.record(Verdict::of(ok), || {
                format!("{name}({}) a={a} u={}", show(&xs), u.show(&w))
            });
            let permuted: Vec<_> = xs.iter().map(|x| u.act(&perm, x)).collect();
            let ok = u.equal(
                &u.act(&perm, &fx),
                &m.interpret_fun(name, &permuted).expect("declared symbol"),
            );
            equiv_f.record(Verdict::of(ok), || format!("{name}({}) pi={perm:?}", show(&xs)));
        }
        for (name, arity) in sig.preds() {
            let xs = args(&mut rng, arity);
            let px = m.interpret_pred(name, &xs).expect("declared symbol");
            let moved: Vec<_> = xs.iter().map(|x| u.subst(x, a, &w)).collect();
            let lhs = SubstitutionAlgebra::<M::Terms>::subst(&b, &px, a, &w);
            let ok = b.equal(&lhs, &m.interpret_pred(name, &moved).expect("declared symbol"));
            comm_p.record(Verdict::of(ok), || {
                format!("{name}({}) a={a} u={}", show(&xs), u.show(&w))
            });
            let permuted: Vec<_> = xs.iter().map(|x| u.act(&perm, x)).collect();
            let ok = b.equal(
                &b.act(&perm, &px),
                &m.interpret_pred(name, &permuted).expect("declared symbol"),
            );
            equiv_p.record(Verdict::of(ok), || format!("{name}({}) pi={perm:?}", show(&xs)));
        }
    }
    SuiteReport {
        subject: subject.to_string(),
        laws: vec![comm_f, comm_p, equiv_f, equiv_p],
    }
}

/// Settings for the randomized sweeps over lifted models.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub suite: SuiteConfig,
    /// Carrier sizes are drawn from `1..=max_size`.
    pub max_size: usize,
    /// Maximum formula depth.
    pub depth: usize,
    pub sig: Signature,
}

impl SweepConfig {
    pub fn new(trials: usize, seed: u64, max_size: usize) -> SweepConfig {
        SweepConfig {
            suite: SuiteConfig::new(trials, seed, 4),
            max_size: max_size.max(1),
            depth: 4,
            sig: gen::default_signature(),
        }
    }
}

/// A random formula; every fourth one is closed under two nested binders
/// of distinct pool atoms.
fn sweep_formula(rng: &mut SuiteRng, cfg: &SweepConfig, trial: usize) -> Formula {
    let pool = &cfg.suite.pool;
    if trial.is_multiple_of(4) {
        let inner = gen::random_formula(rng, &cfg.sig, pool, cfg.depth.saturating_sub(2));
        let (a, b) = crate::algebra::two_distinct(rng, pool);
        Formula::all(a, Formula::all(b, inner))
    } else {
        gen::random_formula(rng, &cfg.sig, pool, cfg.depth)
    }
}

/// Random (model, valuation, formula) triples: the lifted denotation at the
/// valuation equals Tarski evaluation under it.
pub fn run_bridge_sweep(cfg: &SweepConfig) -> SuiteReport {
    let mut rng = gen::rng_from_seed(cfg.suite.seed);
    let mut bridge = LawTally::new("bridge");
    let atoms = cfg.suite.pool.iter().copied().collect();
    for trial in 0..cfg.suite.trials {
        let size = rng.gen_range(1..=cfg.max_size);
        let n = gen::random_model(&mut rng, &cfg.sig, size);
        let phi = sweep_formula(&mut rng, cfg, trial);
        let v = gen::random_valuation(&mut rng, &atoms, size);
        let ok = check_bridge(&n, &phi, &v).unwrap_or(false);
        bridge.record(Verdict::of(ok), || format!("size={size} phi={phi} v={v}"));
    }
    SuiteReport {
        subject: "bridge".into(),
        laws: vec![bridge],
    }
}

/// Random `(φ, a, s)` over random lifted models: `⟦φ[a:=s]⟧ = ⟦φ⟧[a↦⟦s⟧]`,
/// and the same for terms.
pub fn run_subst_lemma_sweep(cfg: &SweepConfig) -> SuiteReport {
    let mut rng = gen::rng_from_seed(cfg.suite.seed);
    let pool = &cfg.suite.pool;
    let mut formulas = LawTally::new("subst-lemma");
    let mut terms = LawTally::new("subst-lemma-terms");
    for trial in 0..cfg.suite.trials {
        let size = rng.gen_range(1..=cfg.max_size);
        let m = LiftedModel::new(gen::random_model(&mut rng, &cfg.sig, size));
        let phi = sweep_formula(&mut rng, cfg, trial);
        let a = gen::random_atom(&mut rng, pool);
        let s = gen::random_term(&mut rng, &cfg.sig, pool, 2);
        let ok = check_subst_lemma(&m, &phi, a, &s).unwrap_or(false);
        formulas.record(Verdict::of(ok), || format!("size={size} phi={phi} a={a} s={s}"));
        let r = gen::random_term(&mut rng, &cfg.sig, pool, 3);
        let ok = check_term_subst_lemma(&m, &r, a, &s).unwrap_or(false);
        terms.record(Verdict::of(ok), || format!("size={size} r={r} a={a} s={s}"));
    }
    SuiteReport {
        subject: "lifted".into(),
        laws: vec![formulas, terms],
    }
}

/// Upper bound on the number of models a search may visit.
pub const SEARCH_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("the search would visit {needed} models, over the budget of {budget}")]
    OverBudget { needed: String, budget: u128 },
    #[error("the maximum carrier size must be at least 1")]
    NoSizes,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A finite model and valuation making every left formula true and every
/// right formula false, with the lifted bounds that witness the failure of
/// entailment.
#[derive(Debug, Clone)]
pub struct Countermodel {
    pub model: OrdinaryModel,
    pub valuation: Valuation,
    /// `⋀⟦Φ⟧` in the lifted model.
    pub left: LiftedProp,
    /// `⋁⟦Ψ⟧` in the lifted model.
    pub right: LiftedProp,
}

impl Countermodel {
    /// `⋀⟦Φ⟧ ≰ ⋁⟦Ψ⟧`.
    pub fn witnesses_failure(&self) -> bool {
        !self.left.le(&self.right)
    }
}

pub fn countermodel_search(seq: &Sequent, max_size: usize) -> Result<Option<Countermodel>, SearchError> {
    countermodel_search_with_budget(seq, max_size, SEARCH_BUDGET)
}

/// Searches carriers `1..=max_size` in order, and within each size the
/// models in [`ModelSpace`] index order, for a model and valuation on
/// `fa(seq)` refuting the sequent. The first refutation in that order is
/// returned. Refuses outright if the number of models exceeds `budget`.
pub fn countermodel_search_with_budget(
    seq: &Sequent,
    max_size: usize,
    budget: u128,
) -> Result<Option<Countermodel>, SearchError> {
    if max_size == 0 {
        return Err(SearchError::NoSizes);
    }
    let mut sig = Signature::new();
    for phi in seq.formulas() {
        phi.declare_symbols(&mut sig)?;
    }
    let spaces = (1..=max_size)
        .map(|n| ModelSpace::new(&sig, n))
        .collect::<Result<Vec<_>, _>>()?;
    let needed = spaces
        .iter()
        .try_fold(0u128, |acc, s| s.count().and_then(|c| acc.checked_add(c)));
    match needed {
        Some(n) if n <= budget => {}
        other => {
            return Err(SearchError::OverBudget {
                needed: other.map_or_else(|| "more than 2^128".to_string(), |n| n.to_string()),
                budget,
            })
        }
    }
    let fa = seq.fa();
    for space in &spaces {
        let count = space.count().expect("checked against budget") as u64;
        let found = (0..count).into_par_iter().find_map_first(|i| {
            let model = space.model_at(u128::from(i));
            for v in Valuation::all_on(&fa, model.size()) {
                match refutes(&model, seq, &v) {
                    Ok(true) => return Some(Ok((model, v))),
                    Ok(false) => {}
                    Err(e) => return Some(Err(e)),
                }
            }
            None
        });
        if let Some(hit) = found {
            let (model, valuation) = hit?;
            let lifted = LiftedModel::new(model.clone());
            let (left, right) = sequent_bounds(&lifted, seq)?;
            return Ok(Some(Countermodel {
                model,
                valuation,
                left,
                right,
            }));
        }
    }
    Ok(None)
}

fn refutes(n: &OrdinaryModel, seq: &Sequent, v: &Valuation) -> Result<bool, ModelError> {
    for phi in &seq.left {
        if !n.eval_formula(v, phi)? {
            return Ok(false);
        }
    }
    for psi in &seq.right {
        if n.eval_formula(v, psi)? {
            return Ok(false);
        }
    }
    Ok(true)
}
