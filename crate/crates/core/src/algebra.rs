//! Substitution algebras and their axiom suite.
//!
//! The axioms, with `x` in the algebra and `u`, `v` in the termlike algebra:
//!
//! | name  | premise | equation |
//! |-------|---------|----------|
//! | Suba  |         | `a[a↦u] = u` (termlike only) |
//! | Subid |         | `x[a↦a] = x` |
//! | Sub#  | `a#x`   | `x[a↦u] = x` |
//! | Subα  | `b#x`   | `x[a↦u] = ((b a)·x)[b↦u]` |
//! | Subσ  | `a#v`   | `x[a↦u][b↦v] = x[b↦v][a↦u[b↦v]]` |
//!
//! `a` and `b` are always distinct atoms.

use std::fmt;

use rand::Rng;

use crate::gen::{self, biased_fresh, SuiteRng};
use crate::lifted::{Lifted, LiftedProp, LiftedProps, LiftedValue, LiftedValues};
use crate::nominal::{is_fresh_by_swap, Atom, AtomSet, Atoms, NominalSet, Perm};
use crate::syntax::{AlphaFormulas, Formula, RawTerms, Signature, Term};

/// A nominal set with an equivariant atom injection and a substitution
/// action of its own elements for atoms.
pub trait TermlikeAlgebra: NominalSet {
    fn atm(&self, a: Atom) -> Self::Elem;

    fn subst(&self, x: &Self::Elem, a: Atom, u: &Self::Elem) -> Self::Elem;

    fn generate(&self, rng: &mut SuiteRng, pool: &[Atom]) -> Self::Elem;

    /// Every element supported by `atoms`, if there are at most `max`.
    fn enumerate(&self, _atoms: &AtomSet, _max: usize) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// A nonempty nominal set with a substitution action of `U`-elements for
/// atoms.
pub trait SubstitutionAlgebra<U: TermlikeAlgebra>: NominalSet {
    fn subst(&self, x: &Self::Elem, a: Atom, u: &U::Elem) -> Self::Elem;

    fn generate(&self, rng: &mut SuiteRng, pool: &[Atom]) -> Self::Elem;

    /// Every element supported by `atoms`, if there are at most `max`.
    fn enumerate(&self, _atoms: &AtomSet, _max: usize) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// A termlike algebra viewed as a substitution algebra over itself.
#[derive(Debug, Clone, Copy)]
pub struct OverItself<'u, U>(pub &'u U);

impl<U: TermlikeAlgebra> NominalSet for OverItself<'_, U> {
    type Elem = U::Elem;

    fn act(&self, p: &Perm, x: &U::Elem) -> U::Elem {
        self.0.act(p, x)
    }

    fn equal(&self, x: &U::Elem, y: &U::Elem) -> bool {
        self.0.equal(x, y)
    }

    fn support_bound(&self, x: &U::Elem) -> AtomSet {
        self.0.support_bound(x)
    }

    fn show(&self, x: &U::Elem) -> String {
        self.0.show(x)
    }
}

impl<U: TermlikeAlgebra> SubstitutionAlgebra<U> for OverItself<'_, U> {
    fn subst(&self, x: &U::Elem, a: Atom, u: &U::Elem) -> U::Elem {
        self.0.subst(x, a, u)
    }

    fn generate(&self, rng: &mut SuiteRng, pool: &[Atom]) -> U::Elem {
        self.0.generate(rng, pool)
    }

    fn enumerate(&self, atoms: &AtomSet, max: usize) -> Option<Vec<U::Elem>> {
        self.0.enumerate(atoms, max)
    }
}

/// Outcome of one conditional law instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The premise did not hold, so the instance says nothing.
    Skipped,
}

impl Verdict {
    pub fn of(holds: bool) -> Verdict {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

pub fn check_suba<U: TermlikeAlgebra>(alg: &U, a: Atom, u: &U::Elem) -> bool {
    alg.equal(&alg.subst(&alg.atm(a), a, u), u)
}

pub fn check_subid<U, B>(alg: &B, terms: &U, x: &B::Elem, a: Atom) -> bool
where
    U: TermlikeAlgebra,
    B: SubstitutionAlgebra<U>,
{
    alg.equal(&alg.subst(x, a, &terms.atm(a)), x)
}

pub fn check_subhash<U, B>(alg: &B, x: &B::Elem, a: Atom, u: &U::Elem) -> Verdict
where
    U: TermlikeAlgebra,
    B: SubstitutionAlgebra<U>,
{
    if !is_fresh_by_swap(alg, a, x) {
        return Verdict::Skipped;
    }
    Verdict::of(alg.equal(&alg.subst(x, a, u), x))
}

pub fn check_subalpha<U, B>(alg: &B, x: &B::Elem, a: Atom, b: Atom, u: &U::Elem) -> Verdict
where
    U: TermlikeAlgebra,
    B: SubstitutionAlgebra<U>,
{
    if a == b || !is_fresh_by_swap(alg, b, x) {
        return Verdict::Skipped;
    }
    let lhs = alg.subst(x, a, u);
    let rhs = alg.subst(&alg.act(&Perm::swap(b, a), x), b, u);
    Verdict::of(alg.equal(&lhs, &rhs))
}

#[allow(clippy::too_many_arguments)]
pub fn check_subsigma<U, B>(
    alg: &B,
    terms: &U,
    x: &B::Elem,
    a: Atom,
    u: &U::Elem,
    b: Atom,
    v: &U::Elem,
) -> Verdict
where
    U: TermlikeAlgebra,
    B: SubstitutionAlgebra<U>,
{
    if a == b || !is_fresh_by_swap(terms, a, v) {
        return Verdict::Skipped;
    }
    let lhs = alg.subst(&alg.subst(x, a, u), b, v);
    let rhs = alg.subst(&alg.subst(x, b, v), a, &terms.subst(u, b, v));
    Verdict::of(alg.equal(&lhs, &rhs))
}

/// `π·(x[a↦u]) = (π·x)[π(a)↦π·u]`.
pub fn check_subst_equivariant<U, B>(alg: &B, terms: &U, x: &B::Elem, a: Atom, u: &U::Elem, p: &Perm) -> bool
where
    U: TermlikeAlgebra,
    B: SubstitutionAlgebra<U>,
{
    let lhs = alg.act(p, &alg.subst(x, a, u));
    let rhs = alg.subst(&alg.act(p, x), p.apply(a), &terms.act(p, u));
    alg.equal(&lhs, &rhs)
}

/// Pass, skip and fail counts for one law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawTally {
    pub name: &'static str,
    pub pass: usize,
    pub skip: usize,
    pub fail: usize,
    /// The smallest failing instance seen, rendered.
    pub counterexample: Option<String>,
}

impl LawTally {
    pub fn new(name: &'static str) -> LawTally {
        LawTally {
            name,
            pass: 0,
            skip: 0,
            fail: 0,
            counterexample: None,
        }
    }

    pub fn record(&mut self, verdict: Verdict, instance: impl FnOnce() -> String) {
        match verdict {
            Verdict::Holds => self.pass += 1,
            Verdict::Skipped => self.skip += 1,
            Verdict::Fails => {
                self.fail += 1;
                let shown = instance();
                let smaller = self
                    .counterexample
                    .as_ref()
                    .is_none_or(|old| shown.len() < old.len());
                if smaller {
                    self.counterexample = Some(shown);
                }
            }
        }
    }
}

/// Per-law results of a suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub subject: String,
    pub laws: Vec<LawTally>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.fail == 0)
    }

    pub fn law(&self, name: &str) -> Option<&LawTally> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn failures(&self) -> usize {
        self.laws.iter().map(|l| l.fail).sum()
    }
}

/// One `key=value` line per law.
impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for law in &self.laws {
            write!(
                f,
                "subject={} law={} pass={} skip={} fail={}",
                self.subject, law.name, law.pass, law.skip, law.fail
            )?;
            if let Some(c) = &law.counterexample {
                write!(f, " counterexample={c:?}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Trial count, seed and atom pool for a suite run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub pool: Vec<Atom>,
}

impl SuiteConfig {
    pub fn new(trials: usize, seed: u64, pool_size: usize) -> SuiteConfig {
        SuiteConfig {
            trials,
            seed,
            pool: gen::atom_pool(pool_size.max(2)),
        }
    }
}

pub(crate) fn two_distinct(rng: &mut SuiteRng, pool: &[Atom]) -> (Atom, Atom) {
    let a = gen::random_atom(rng, pool);
    loop {
        let b = gen::random_atom(rng, pool);
        if b != a {
            return (a, b);
        }
    }
}

/// Runs Subid, Sub#, Subα and Subσ on `alg` over the termlike algebra
/// `terms`.
pub fn run_subst_suite<U, B>(alg: &B, terms: &U, subject: &str, cfg: &SuiteConfig) -> SuiteReport
where
    U: TermlikeAlgebra,
    B: SubstitutionAlgebra<U>,
{
    let mut rng = gen::rng_from_seed(cfg.seed);
    let pool = &cfg.pool;
    let mut subid = LawTally::new("Subid");
    let mut subhash = LawTally::new("Sub#");
    let mut subalpha = LawTally::new("Subα");
    let mut subsigma = LawTally::new("Subσ");
    for _ in 0..cfg.trials {
        let x = alg.generate(&mut rng, pool);
        let a = gen::random_atom(&mut rng, pool);
        subid.record(Verdict::of(check_subid(alg, terms, &x, a)), || {
            format!("x={} a={a}", alg.show(&x))
        });

        let x = alg.generate(&mut rng, pool);
        let u = terms.generate(&mut rng, pool);
        let a = biased_fresh(&mut rng, pool, &alg.support_bound(&x), &[]);
        subhash.record(check_subhash::<U, B>(alg, &x, a, &u), || {
            format!("x={} a={a} u={}", alg.show(&x), terms.show(&u))
        });

        let x = alg.generate(&mut rng, pool);
        let u = terms.generate(&mut rng, pool);
        let a = gen::random_atom(&mut rng, pool);
        let b = if rng.gen_bool(0.5) {
            // a bound or absent atom of the pool
            biased_fresh(&mut rng, pool, &crate::nominal::support(alg, &x), &[a])
        } else {
            biased_fresh(&mut rng, pool, &alg.support_bound(&x), &[a])
        };
        subalpha.record(check_subalpha::<U, B>(alg, &x, a, b, &u), || {
            format!("x={} a={a} b={b} u={}", alg.show(&x), terms.show(&u))
        });

        let x = alg.generate(&mut rng, pool);
        let u = terms.generate(&mut rng, pool);
        let v = terms.generate(&mut rng, pool);
        let b = gen::random_atom(&mut rng, pool);
        let a = biased_fresh(&mut rng, pool, &terms.support_bound(&v), &[b]);
        subsigma.record(check_subsigma(alg, terms, &x, a, &u, b, &v), || {
            format!(
                "x={} a={a} u={} b={b} v={}",
                alg.show(&x),
                terms.show(&u),
                terms.show(&v)
            )
        });
    }
    SuiteReport {
        subject: subject.to_string(),
        laws: vec![subid, subhash, subalpha, subsigma],
    }
}

/// Runs all five axioms on a termlike algebra: Suba, then the other four
/// with the algebra acting on itself.
pub fn run_termlike_suite<U: TermlikeAlgebra>(alg: &U, subject: &str, cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = gen::rng_from_seed(cfg.seed ^ 0x5ba);
    let mut suba = LawTally::new("Suba");
    for _ in 0..cfg.trials {
        let a = gen::random_atom(&mut rng, &cfg.pool);
        let u = alg.generate(&mut rng, &cfg.pool);
        suba.record(Verdict::of(check_suba(alg, a, &u)), || {
            format!("a={a} u={}", alg.show(&u))
        });
    }
    let mut report = run_subst_suite(&OverItself(alg), alg, subject, cfg);
    report.laws.insert(0, suba);
    report
}

/// Atoms, with `a[a↦x] = x` and `b[a↦x] = b`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AtomsAlgebra;

impl NominalSet for AtomsAlgebra {
    type Elem = Atom;

    fn act(&self, p: &Perm, x: &Atom) -> Atom {
        Atoms.act(p, x)
    }

    fn equal(&self, x: &Atom, y: &Atom) -> bool {
        x == y
    }

    fn support_bound(&self, x: &Atom) -> AtomSet {
        Atoms.support_bound(x)
    }

    fn show(&self, x: &Atom) -> String {
        x.to_string()
    }
}

impl TermlikeAlgebra for AtomsAlgebra {
    fn atm(&self, a: Atom) -> Atom {
        a
    }

    fn subst(&self, x: &Atom, a: Atom, u: &Atom) -> Atom {
        if *x == a {
            *u
        } else {
            *x
        }
    }

    fn generate(&self, rng: &mut SuiteRng, pool: &[Atom]) -> Atom {
        gen::random_atom(rng, pool)
    }

    fn enumerate(&self, atoms: &AtomSet, max: usize) -> Option<Vec<Atom>> {
        (atoms.len() <= max).then(|| atoms.iter().collect())
    }
}

/// Terms over a signature with capture-free substitution.
#[derive(Debug, Clone)]
pub struct TermAlgebra {
    pub sig: Signature,
    pub depth: usize,
}

impl TermAlgebra {
    pub fn new(sig: Signature) -> TermAlgebra {
        TermAlgebra { sig, depth: 3 }
    }
}

impl NominalSet for TermAlgebra {
    type Elem = Term;

    fn act(&self, p: &Perm, x: &Term) -> Term {
        RawTerms.act(p, x)
    }

    fn equal(&self, x: &Term, y: &Term) -> bool {
        x == y
    }

    fn support_bound(&self, x: &Term) -> AtomSet {
        RawTerms.support_bound(x)
    }

    fn show(&self, x: &Term) -> String {
        x.to_string()
    }
}

impl TermlikeAlgebra for TermAlgebra {
    fn atm(&self, a: Atom) -> Term {
        Term::Var(a)
    }

    fn subst(&self, x: &Term, a: Atom, u: &Term) -> Term {
        x.subst(a, u)
    }

    fn generate(&self, rng: &mut SuiteRng, pool: &[Atom]) -> Term {
        gen::random_term(rng, &self.sig, pool, self.depth)
    }
}

/// Formulas up to α-equivalence, with capture-avoiding substitution of
/// terms. Not termlike: there is no formula for an atom.
#[derive(Debug, Clone)]
pub struct FormulaAlgebra {
    pub sig: Signature,
    pub depth: usize,
}

impl FormulaAlgebra {
    pub fn new(sig: Signature) -> FormulaAlgebra {
        FormulaAlgebra { sig, depth: 4 }
    }
}

impl NominalSet for FormulaAlgebra {
    type Elem = Formula;

    fn act(&self, p: &Perm, x: &Formula) -> Formula {
        AlphaFormulas.act(p, x)
    }

    fn equal(&self, x: &Formula, y: &Formula) -> bool {
        AlphaFormulas.equal(x, y)
    }

    fn support_bound(&self, x: &Formula) -> AtomSet {
        AlphaFormulas.support_bound(x)
    }

    fn show(&self, x: &Formula) -> String {
        x.to_string()
    }
}

impl SubstitutionAlgebra<TermAlgebra> for FormulaAlgebra {
    fn subst(&self, x: &Formula, a: Atom, u: &Term) -> Formula {
        x.subst(a, u)
    }

    fn generate(&self, rng: &mut SuiteRng, pool: &[Atom]) -> Formula {
        gen::random_formula(rng, &self.sig, pool, self.depth)
    }
}

fn carrier_values(size: usize) -> Vec<usize> {
    (0..size).collect()
}

impl NominalSet for LiftedValues {
    type Elem = LiftedValue;

    fn act(&self, p: &Perm, x: &LiftedValue) -> LiftedValue {
        x.act(p)
    }

    fn equal(&self, x: &LiftedValue, y: &LiftedValue) -> bool {
        x == y
    }

    fn support_bound(&self, x: &LiftedValue) -> AtomSet {
        x.deps()
    }
}

impl TermlikeAlgebra for LiftedValues {
    fn atm(&self, a: Atom) -> LiftedValue {
        LiftedValue::atm(self.size, a)
    }

    fn subst(&self, x: &LiftedValue, a: Atom, u: &LiftedValue) -> LiftedValue {
        x.subst(a, u)
    }

    fn generate(&self, rng: &mut SuiteRng, pool: &[Atom]) -> LiftedValue {
        if rng.gen_bool(0.25) {
            return self.atm(gen::random_atom(rng, pool));
        }
        gen::random_lifted(rng, self.size, pool, &carrier_values(self.size))
    }

    fn enumerate(&self, atoms: &AtomSet, max: usize) -> Option<Vec<LiftedValue>> {
        Lifted::enumerate(self.size, atoms, &carrier_values(self.size), max)
    }
}

impl NominalSet for LiftedProps {
    type Elem = LiftedProp;

    fn act(&self, p: &Perm, x: &LiftedProp) -> LiftedProp {
        x.act(p)
    }

    fn equal(&self, x: &LiftedProp, y: &LiftedProp) -> bool {
        x == y
    }

    fn support_bound(&self, x: &LiftedProp) -> AtomSet {
        x.deps()
    }
}

impl SubstitutionAlgebra<LiftedValues> for LiftedProps {
    fn subst(&self, x: &LiftedProp, a: Atom, u: &LiftedValue) -> LiftedProp {
        x.subst(a, u)
    }

    fn generate(&self, rng: &mut SuiteRng, pool: &[Atom]) -> LiftedProp {
        gen::random_lifted(rng, self.size, pool, &[false, true])
    }

    fn enumerate(&self, atoms: &AtomSet, max: usize) -> Option<Vec<LiftedProp>> {
        Lifted::enumerate(self.size, atoms, &[false, true], max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::default_signature;

    const A: Atom = Atom::new(0);
    const B: Atom = Atom::new(1);

    #[test]
    fn atoms_algebra_cases() {
        assert_eq!(AtomsAlgebra.subst(&A, A, &B), B);
        assert_eq!(AtomsAlgebra.subst(&B, A, &Atom::new(5)), B);
        assert!(check_suba(&AtomsAlgebra, A, &B));
    }

    #[test]
    fn axiom_examples_on_terms() {
        let terms = TermAlgebra::new(default_signature());
        let fb = Term::app("f", vec![Term::Var(B)]);
        assert!(check_suba(&terms, A, &fb));
        let x = Term::app("g", vec![Term::Var(A), Term::Var(B)]);
        assert!(check_subid(&OverItself(&terms), &terms, &x, A));
        assert_eq!(
            check_subhash::<TermAlgebra, _>(&OverItself(&terms), &Term::Var(B), A, &fb),
            Verdict::Holds
        );
        assert_eq!(
            check_subhash::<TermAlgebra, _>(&OverItself(&terms), &Term::Var(A), A, &fb),
            Verdict::Skipped
        );
    }

    #[test]
    fn lifted_suba_instance() {
        let vals = LiftedValues { size: 2 };
        assert!(check_suba(&vals, A, &vals.atm(B)));
    }

    #[test]
    fn suites_are_deterministic() {
        let cfg = SuiteConfig::new(50, 7, 4);
        let terms = TermAlgebra::new(default_signature());
        let one = run_termlike_suite(&terms, "terms", &cfg);
        let two = run_termlike_suite(&terms, "terms", &cfg);
        assert_eq!(one, two);
        assert!(one.passed());
        assert_eq!(one.laws.len(), 5);
    }

    #[test]
    fn report_lines() {
        let mut t = LawTally::new("Sub#");
        t.record(Verdict::Holds, String::new);
        t.record(Verdict::Skipped, String::new);
        let r = SuiteReport {
            subject: "atoms".into(),
            laws: vec![t],
        };
        assert_eq!(r.to_string(), "subject=atoms law=Sub# pass=1 skip=1 fail=0\n");
    }
}
