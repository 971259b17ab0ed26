//! Seeded random generation of syntax and lifted elements.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lifted::{LiftValue, Lifted};
use crate::nominal::{Atom, AtomSet};
use crate::ordinary::{OrdinaryModel, Valuation};
use crate::syntax::{Formula, Signature, Term};

/// The generator used everywhere a run must be reproducible from a seed.
pub type SuiteRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The atoms `a0 .. a{n-1}`.
pub fn atom_pool(n: usize) -> Vec<Atom> {
    (0..n as u32).map(Atom::new).collect()
}

/// `f/1, g/2, zero/0` and `P/1, Q/2, R/0`.
pub fn default_signature() -> Signature {
    let mut sig = Signature::new();
    for (name, arity) in [("f", 1), ("g", 2), ("zero", 0)] {
        sig.declare_fun(name, arity).expect("valid name");
    }
    for (name, arity) in [("P", 1), ("Q", 2), ("R", 0)] {
        sig.declare_pred(name, arity).expect("valid name");
    }
    sig
}

/// One unary predicate and one unary function.
pub fn unary_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_fun("f", 1).expect("valid name");
    sig.declare_pred("P", 1).expect("valid name");
    sig
}

pub fn random_atom(rng: &mut SuiteRng, pool: &[Atom]) -> Atom {
    *pool.choose(rng).expect("atom pool must be nonempty")
}

pub fn random_term(rng: &mut SuiteRng, sig: &Signature, pool: &[Atom], depth: usize) -> Term {
    let funs: Vec<_> = sig.funs().collect();
    if depth == 0 || funs.is_empty() || rng.gen_bool(0.5) {
        let constants: Vec<_> = funs.iter().filter(|(_, n)| *n == 0).collect();
        if !constants.is_empty() && rng.gen_bool(0.15) {
            let (name, _) = constants.choose(rng).expect("nonempty");
            return Term::App((*name).clone(), Vec::new());
        }
        return Term::Var(random_atom(rng, pool));
    }
    let (name, arity) = funs.choose(rng).expect("nonempty");
    let args = (0..*arity)
        .map(|_| random_term(rng, sig, pool, depth - 1))
        .collect();
    Term::App((*name).clone(), args)
}

/// A random formula of depth at most `depth`, with terms of depth at most 2
/// and binders drawn from `pool`.
pub fn random_formula(rng: &mut SuiteRng, sig: &Signature, pool: &[Atom], depth: usize) -> Formula {
    let preds: Vec<_> = sig.preds().collect();
    let leaf = depth == 0 || rng.gen_bool(0.2);
    if leaf {
        if preds.is_empty() || rng.gen_bool(0.1) {
            return Formula::Bot;
        }
        let (name, arity) = preds.choose(rng).expect("nonempty");
        let args = (0..*arity).map(|_| random_term(rng, sig, pool, 2)).collect();
        return Formula::Pred((*name).clone(), args);
    }
    match rng.gen_range(0..3) {
        0 => Formula::and(
            random_formula(rng, sig, pool, depth - 1),
            random_formula(rng, sig, pool, depth - 1),
        ),
        1 => Formula::neg(random_formula(rng, sig, pool, depth - 1)),
        _ => Formula::all(random_atom(rng, pool), random_formula(rng, sig, pool, depth - 1)),
    }
}

/// A random canonical lifted element depending on a random subset of `pool`.
pub fn random_lifted<X: LiftValue>(
    rng: &mut SuiteRng,
    size: usize,
    pool: &[Atom],
    values: &[X],
) -> Lifted<X> {
    let deps: AtomSet = pool.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    let slots = size.pow(deps.len() as u32);
    let table = (0..slots)
        .map(|_| *values.choose(rng).expect("nonempty value space"))
        .collect();
    Lifted::from_table(size, deps.iter().collect(), table).expect("well-formed table")
}

/// Picks an atom for a freshness premise: usually one outside `avoid`
/// (from the pool if possible, else the least fresh atom), occasionally any
/// pool atom so that premise violations are also exercised.
pub fn biased_fresh(rng: &mut SuiteRng, pool: &[Atom], avoid: &AtomSet, exclude: &[Atom]) -> Atom {
    let ok = |a: &Atom| !exclude.contains(a);
    if rng.gen_bool(0.15) {
        let any: Vec<Atom> = pool.iter().copied().filter(ok).collect();
        if let Some(&a) = any.choose(rng) {
            return a;
        }
    }
    let candidates: Vec<Atom> = pool
        .iter()
        .copied()
        .filter(|a| ok(a) && !avoid.contains(*a))
        .collect();
    match candidates.choose(rng) {
        Some(&a) => a,
        None => {
            let mut blocked = avoid.clone();
            blocked.extend(pool.iter().copied());
            blocked.extend(exclude.iter().copied());
            crate::nominal::fresh_atom(&blocked)
        }
    }
}

/// A model of `sig` over `0..size` with uniformly random tables.
pub fn random_model(rng: &mut SuiteRng, sig: &Signature, size: usize) -> OrdinaryModel {
    let mut m = OrdinaryModel::new(size).expect("size must be positive");
    for (name, arity) in sig.funs() {
        let values = (0..size.pow(arity as u32))
            .map(|_| rng.gen_range(0..size))
            .collect();
        m.set_fun(name, arity, values).expect("exact table");
    }
    for (name, arity) in sig.preds() {
        let values = (0..size.pow(arity as u32)).map(|_| rng.gen()).collect();
        m.set_pred(name, arity, values).expect("exact table");
    }
    m
}

/// A valuation of every atom in `atoms` into `0..size`.
pub fn random_valuation(rng: &mut SuiteRng, atoms: &AtomSet, size: usize) -> Valuation {
    atoms.iter().map(|a| (a, rng.gen_range(0..size))).collect()
}
