//! Nominal posets with fresh greatest lower bounds, complements, and the
//! law suite for nominal Boolean algebras.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{
    two_distinct, LawTally, SubstitutionAlgebra, SuiteConfig, SuiteReport, TermlikeAlgebra, Verdict,
};
use crate::gen::{self, biased_fresh, SuiteRng};
use crate::lifted::{LiftedProp, LiftedProps, LiftedValues};
use crate::nominal::{is_fresh_by_swap, is_fresh_for_all, support, Atom, AtomSet, NominalSet, Perm};

/// A nominal set with an equivariant partial order in which every finite
/// set has an `A`-fresh greatest lower bound for every finite `A`.
pub trait NominalPoset: NominalSet {
    fn le(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    /// The greatest element below every member of `xs` whose support avoids
    /// `fresh`.
    fn fresh_glb(&self, fresh: &AtomSet, xs: &[Self::Elem]) -> Self::Elem;

    fn top(&self) -> Self::Elem {
        self.fresh_glb(&AtomSet::new(), &[])
    }

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.fresh_glb(&AtomSet::new(), &[x.clone(), y.clone()])
    }

    fn forall(&self, a: Atom, x: &Self::Elem) -> Self::Elem {
        self.fresh_glb(&AtomSet::singleton(a), std::slice::from_ref(x))
    }
}

/// A nominal poset with complements. Joins, bottom and existentials are
/// derived by De Morgan duality.
pub trait Complemented: NominalPoset {
    fn neg(&self, x: &Self::Elem) -> Self::Elem;

    fn bot(&self) -> Self::Elem {
        self.neg(&self.top())
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.neg(&self.meet(&self.neg(x), &self.neg(y)))
    }

    fn exists(&self, a: Atom, x: &Self::Elem) -> Self::Elem {
        self.neg(&self.forall(a, &self.neg(x)))
    }

    /// The meet of all of `xs`; top when empty.
    fn meet_all(&self, xs: &[Self::Elem]) -> Self::Elem {
        self.fresh_glb(&AtomSet::new(), xs)
    }

    /// The join of all of `xs`; bottom when empty.
    fn join_all(&self, xs: &[Self::Elem]) -> Self::Elem {
        let negated: Vec<_> = xs.iter().map(|x| self.neg(x)).collect();
        self.neg(&self.meet_all(&negated))
    }
}

/// A complemented, fresh-complete nominal poset that is also a
/// substitution algebra over `U`. The compatibility laws are checked by
/// [`run_nba_suite`], not assumed.
pub trait NominalBooleanAlgebra<U: TermlikeAlgebra>: Complemented + SubstitutionAlgebra<U> {}

impl<U: TermlikeAlgebra, B: Complemented + SubstitutionAlgebra<U>> NominalBooleanAlgebra<U> for B {}

/// `{⊥,⊤}` with the trivial action and trivial substitution.
#[derive(Debug, Clone, Copy, Default)]
pub struct TwoPoint;

impl NominalSet for TwoPoint {
    type Elem = bool;

    fn act(&self, _: &Perm, x: &bool) -> bool {
        *x
    }

    fn equal(&self, x: &bool, y: &bool) -> bool {
        x == y
    }

    fn support_bound(&self, _: &bool) -> AtomSet {
        AtomSet::new()
    }
}

impl NominalPoset for TwoPoint {
    fn le(&self, x: &bool, y: &bool) -> bool {
        !x || *y
    }

    fn fresh_glb(&self, _: &AtomSet, xs: &[bool]) -> bool {
        xs.iter().all(|x| *x)
    }
}

impl Complemented for TwoPoint {
    fn neg(&self, x: &bool) -> bool {
        !x
    }
}

impl<U: TermlikeAlgebra> SubstitutionAlgebra<U> for TwoPoint {
    fn subst(&self, x: &bool, _: Atom, _: &U::Elem) -> bool {
        *x
    }

    fn generate(&self, rng: &mut SuiteRng, _: &[Atom]) -> bool {
        rng.gen()
    }

    fn enumerate(&self, _: &AtomSet, _: usize) -> Option<Vec<bool>> {
        Some(vec![false, true])
    }
}

impl NominalPoset for LiftedProps {
    fn le(&self, x: &LiftedProp, y: &LiftedProp) -> bool {
        x.le(y)
    }

    fn fresh_glb(&self, fresh: &AtomSet, xs: &[LiftedProp]) -> LiftedProp {
        LiftedProp::fresh_glb(self.size, fresh, xs)
    }

    fn top(&self) -> LiftedProp {
        LiftedProp::top(self.size)
    }

    fn meet(&self, x: &LiftedProp, y: &LiftedProp) -> LiftedProp {
        x.meet(y)
    }
}

impl Complemented for LiftedProps {
    fn neg(&self, x: &LiftedProp) -> LiftedProp {
        x.neg()
    }

    fn bot(&self) -> LiftedProp {
        LiftedProp::bot(self.size)
    }
}

/// `x ∧ ¬x = ⊥`, `x ∨ ¬x = ⊤`, and `x` and `¬x` have the same support.
pub fn check_complement_laws<B: Complemented>(h: &B, x: &B::Elem) -> bool {
    let n = h.neg(x);
    h.equal(&h.meet(x, &n), &h.bot()) && h.equal(&h.join(x, &n), &h.top()) && support(h, x) == support(h, &n)
}

/// The support of `⋀^{#A} X` lies within the supports of `X`, minus `A`.
pub fn check_support_of_glb<B: NominalPoset>(h: &B, fresh: &AtomSet, xs: &[B::Elem]) -> bool {
    let allowed = xs
        .iter()
        .fold(AtomSet::new(), |acc, x| acc.union(&support(h, x)))
        .difference(fresh);
    support(h, &h.fresh_glb(fresh, xs)).is_subset(&allowed)
}

/// `⋀^{#A} X` is an `A`-fresh lower bound of `X`.
pub fn check_glb_is_bound<B: NominalPoset>(h: &B, fresh: &AtomSet, xs: &[B::Elem]) -> bool {
    let z = h.fresh_glb(fresh, xs);
    is_fresh_for_all(h, fresh, &z) && xs.iter().all(|x| h.le(&z, x))
}

/// Settings for [`run_nba_suite`].
#[derive(Debug, Clone)]
pub struct NbaConfig {
    pub suite: SuiteConfig,
    /// Largest number of `U`-elements enumerated for the glb-of-instances
    /// law; the atom sub-pool shrinks until the enumeration fits.
    pub instance_budget: usize,
    /// Ignore the `A ∩ supp(u) = ∅` premise of compatibility with fresh
    /// meets. Only useful to show that the premise matters.
    pub drop_compat_premise: bool,
}

impl NbaConfig {
    pub fn new(trials: usize, seed: u64, pool_size: usize) -> NbaConfig {
        NbaConfig {
            suite: SuiteConfig::new(trials, seed, pool_size),
            instance_budget: 4096,
            drop_compat_premise: false,
        }
    }
}

fn random_subset(rng: &mut SuiteRng, from: &[Atom]) -> AtomSet {
    from.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}

/// An element above `x`: `x ∨ y'` for random `y'`, or `x` itself.
fn above<U, B>(h: &B, rng: &mut SuiteRng, pool: &[Atom], x: &B::Elem) -> B::Elem
where
    U: TermlikeAlgebra,
    B: NominalBooleanAlgebra<U>,
{
    if rng.gen_bool(0.2) {
        return x.clone();
    }
    let y = SubstitutionAlgebra::<U>::generate(h, rng, pool);
    h.join(x, &y)
}

/// An element fresh for `a`: `∀a y` or `∃a y` for random `y`, possibly met
/// with another such element.
fn fresh_for<U, B>(h: &B, rng: &mut SuiteRng, pool: &[Atom], a: Atom) -> B::Elem
where
    U: TermlikeAlgebra,
    B: NominalBooleanAlgebra<U>,
{
    let y = SubstitutionAlgebra::<U>::generate(h, rng, pool);
    let z = if rng.gen_bool(0.5) {
        h.forall(a, &y)
    } else {
        h.exists(a, &y)
    };
    if rng.gen_bool(0.3) {
        let w = SubstitutionAlgebra::<U>::generate(h, rng, pool);
        h.meet(&z, &h.forall(a, &w))
    } else {
        z
    }
}

/// The largest leading slice of `pool` (starting with `a`) whose supported
/// `U`-elements number at most `budget`, with that enumeration.
fn instance_pool<U: TermlikeAlgebra>(
    terms: &U,
    pool: &[Atom],
    a: Atom,
    budget: usize,
) -> Option<Vec<U::Elem>> {
    let mut ordered = vec![a];
    ordered.extend(pool.iter().copied().filter(|&b| b != a));
    (0..=ordered.len()).rev().find_map(|k| {
        let atoms: AtomSet = ordered[..k].iter().copied().collect();
        terms.enumerate(&atoms, budget)
    })
}

/// Runs the compatibility laws and their consequences on `h` over `terms`.
///
/// Laws, in report order:
/// - `compat-meet`: `(⋀^{#A}X)[a↦u] = ⋀^{#A}{x[a↦u]}` if `A∩supp(u)=∅`, `a∉A`
/// - `compat-neg`: `(¬x)[a↦u] = ¬(x[a↦u])`
/// - `subst-forall`: `(∀b x)[a↦u] = ∀b(x[a↦u])` if `b#u`
/// - `le-iff-meet`: `x ≤ y` iff `x∧y = x`
/// - `subst-meet`: `(x∧y)[a↦u] = x[a↦u] ∧ y[a↦u]`
/// - `subst-bot`: `⊥[a↦u] = ⊥`
/// - `subst-monotone`: `x ≤ y` implies `x[a↦u] ≤ y[a↦u]`
/// - `subst-fresh-bound`: `x ≤ y`, `a#x` imply `x ≤ y[a↦u]`
/// - `forall-left`: `∀a x ≤ x[a↦u]`
/// - `forall-right`: `x ≤ y`, `a#x` imply `x ≤ ∀a y`
/// - `forall-glb-instances`: `∀a x` is the meet of `x[a↦u]` over every `u`
///   supported in a sub-pool containing `a`
/// - `complement`, `glb-bound`, `glb-support`: lattice sanity checks
pub fn run_nba_suite<U, B>(h: &B, terms: &U, subject: &str, cfg: &NbaConfig) -> SuiteReport
where
    U: TermlikeAlgebra,
    B: NominalBooleanAlgebra<U>,
{
    let mut rng = gen::rng_from_seed(cfg.suite.seed);
    let pool = &cfg.suite.pool;
    let gen_b = |rng: &mut SuiteRng| SubstitutionAlgebra::<U>::generate(h, rng, pool);
    let sub = |x: &B::Elem, a: Atom, u: &U::Elem| SubstitutionAlgebra::<U>::subst(h, x, a, u);
    let show_u = |u: &U::Elem| terms.show(u);

    let mut compat_meet = LawTally::new("compat-meet");
    let mut compat_neg = LawTally::new("compat-neg");
    let mut subst_forall = LawTally::new("subst-forall");
    let mut le_iff_meet = LawTally::new("le-iff-meet");
    let mut subst_meet = LawTally::new("subst-meet");
    let mut subst_bot = LawTally::new("subst-bot");
    let mut monotone = LawTally::new("subst-monotone");
    let mut fresh_bound = LawTally::new("subst-fresh-bound");
    let mut forall_left = LawTally::new("forall-left");
    let mut forall_right = LawTally::new("forall-right");
    let mut glb_instances = LawTally::new("forall-glb-instances");
    let mut complement = LawTally::new("complement");
    let mut glb_bound = LawTally::new("glb-bound");
    let mut glb_support = LawTally::new("glb-support");

    for _ in 0..cfg.suite.trials {
        {
            let len = rng.gen_range(0..=3);
            let xs: Vec<_> = (0..len).map(|_| gen_b(&mut rng)).collect();
            let a = gen::random_atom(&mut rng, pool);
            let u = terms.generate(&mut rng, pool);
            let others: Vec<Atom> = if cfg.drop_compat_premise {
                pool.iter().copied().filter(|&b| b != a).collect()
            } else {
                let busy = terms.support_bound(&u);
                pool.iter()
                    .copied()
                    .filter(|&b| b != a && !busy.contains(b))
                    .collect()
            };
            let fresh = random_subset(&mut rng, &others);
            let premise =
                cfg.drop_compat_premise || (!fresh.contains(a) && is_fresh_for_all(terms, &fresh, &u));
            let verdict = if premise {
                let lhs = sub(&h.fresh_glb(&fresh, &xs), a, &u);
                let moved: Vec<_> = xs.iter().map(|x| sub(x, a, &u)).collect();
                Verdict::of(h.equal(&lhs, &h.fresh_glb(&fresh, &moved)))
            } else {
                Verdict::Skipped
            };
            compat_meet.record(verdict, || {
                let shown: Vec<_> = xs.iter().map(|x| h.show(x)).collect();
                format!("A={fresh} X=[{}] a={a} u={}", shown.join(", "), show_u(&u))
            });
            glb_bound.record(Verdict::of(check_glb_is_bound(h, &fresh, &xs)), || {
                format!(
                    "A={fresh} X=[{}]",
                    xs.iter().map(|x| h.show(x)).collect::<Vec<_>>().join(", ")
                )
            });
            glb_support.record(Verdict::of(check_support_of_glb(h, &fresh, &xs)), || {
                format!(
                    "A={fresh} X=[{}]",
                    xs.iter().map(|x| h.show(x)).collect::<Vec<_>>().join(", ")
                )
            });
        }
        {
            let x = gen_b(&mut rng);
            let a = gen::random_atom(&mut rng, pool);
            let u = terms.generate(&mut rng, pool);
            let ok = h.equal(&sub(&h.neg(&x), a, &u), &h.neg(&sub(&x, a, &u)));
            compat_neg.record(Verdict::of(ok), || {
                format!("x={} a={a} u={}", h.show(&x), show_u(&u))
            });
            complement.record(Verdict::of(check_complement_laws(h, &x)), || h.show(&x));
        }
        {
            let x = gen_b(&mut rng);
            let (a, _) = two_distinct(&mut rng, pool);
            let u = terms.generate(&mut rng, pool);
            let b = biased_fresh(&mut rng, pool, &terms.support_bound(&u), &[a]);
            let verdict = if is_fresh_by_swap(terms, b, &u) {
                let lhs = sub(&h.forall(b, &x), a, &u);
                Verdict::of(h.equal(&lhs, &h.forall(b, &sub(&x, a, &u))))
            } else {
                Verdict::Skipped
            };
            subst_forall.record(verdict, || {
                format!("x={} a={a} b={b} u={}", h.show(&x), show_u(&u))
            });
        }
        {
            let x = gen_b(&mut rng);
            let y = if rng.gen_bool(0.5) {
                above::<U, B>(h, &mut rng, pool, &x)
            } else {
                gen_b(&mut rng)
            };
            let ok = h.le(&x, &y) == h.equal(&h.meet(&x, &y), &x);
            le_iff_meet.record(Verdict::of(ok), || format!("x={} y={}", h.show(&x), h.show(&y)));

            let a = gen::random_atom(&mut rng, pool);
            let u = terms.generate(&mut rng, pool);
            let ok = h.equal(
                &sub(&h.meet(&x, &y), a, &u),
                &h.meet(&sub(&x, a, &u), &sub(&y, a, &u)),
            );
            subst_meet.record(Verdict::of(ok), || {
                format!("x={} y={} a={a} u={}", h.show(&x), h.show(&y), show_u(&u))
            });
            let ok = h.equal(&sub(&h.bot(), a, &u), &h.bot());
            subst_bot.record(Verdict::of(ok), || format!("a={a} u={}", show_u(&u)));
        }
        {
            let x = gen_b(&mut rng);
            let y = above::<U, B>(h, &mut rng, pool, &x);
            let a = gen::random_atom(&mut rng, pool);
            let u = terms.generate(&mut rng, pool);
            let verdict = if h.le(&x, &y) {
                Verdict::of(h.le(&sub(&x, a, &u), &sub(&y, a, &u)))
            } else {
                Verdict::Skipped
            };
            monotone.record(verdict, || {
                format!("x={} y={} a={a} u={}", h.show(&x), h.show(&y), show_u(&u))
            });
        }
        {
            let a = gen::random_atom(&mut rng, pool);
            let x = if rng.gen_bool(0.8) {
                fresh_for::<U, B>(h, &mut rng, pool, a)
            } else {
                gen_b(&mut rng)
            };
            let y = above::<U, B>(h, &mut rng, pool, &x);
            let u = terms.generate(&mut rng, pool);
            let verdict = if h.le(&x, &y) && is_fresh_by_swap(h, a, &x) {
                Verdict::of(h.le(&x, &sub(&y, a, &u)))
            } else {
                Verdict::Skipped
            };
            fresh_bound.record(verdict, || {
                format!("x={} y={} a={a} u={}", h.show(&x), h.show(&y), show_u(&u))
            });
        }
        {
            let x = gen_b(&mut rng);
            let a = gen::random_atom(&mut rng, pool);
            let u = if rng.gen_bool(0.3) {
                terms.atm(gen::random_atom(&mut rng, pool))
            } else {
                terms.generate(&mut rng, pool)
            };
            let ok = h.le(&h.forall(a, &x), &sub(&x, a, &u));
            forall_left.record(Verdict::of(ok), || {
                format!("x={} a={a} u={}", h.show(&x), show_u(&u))
            });
        }
        {
            let y = gen_b(&mut rng);
            let a = gen::random_atom(&mut rng, pool);
            let x = if rng.gen_bool(0.8) {
                let lower = fresh_for::<U, B>(h, &mut rng, pool, a);
                h.meet(&h.forall(a, &y), &lower)
            } else {
                gen_b(&mut rng)
            };
            let verdict = if h.le(&x, &y) && is_fresh_by_swap(h, a, &x) {
                Verdict::of(h.le(&x, &h.forall(a, &y)))
            } else {
                Verdict::Skipped
            };
            forall_right.record(verdict, || format!("x={} y={} a={a}", h.show(&x), h.show(&y)));
        }
        {
            let base = gen_b(&mut rng);
            let a = gen::random_atom(&mut rng, pool);
            let x = match rng.gen_range(0..3) {
                0 => base,
                1 => h.meet(&base, &gen_b(&mut rng)),
                _ => {
                    let b = *pool.choose(&mut rng).expect("nonempty pool");
                    h.forall(b, &h.join(&base, &gen_b(&mut rng)))
                }
            };
            let verdict = match instance_pool(terms, pool, a, cfg.instance_budget) {
                Some(us) => {
                    let instances: Vec<_> = us.iter().map(|u| sub(&x, a, u)).collect();
                    Verdict::of(h.equal(&h.meet_all(&instances), &h.forall(a, &x)))
                }
                None => Verdict::Skipped,
            };
            glb_instances.record(verdict, || format!("x={} a={a}", h.show(&x)));
        }
    }
    SuiteReport {
        subject: subject.to_string(),
        laws: vec![
            compat_meet,
            compat_neg,
            subst_forall,
            le_iff_meet,
            subst_meet,
            subst_bot,
            monotone,
            fresh_bound,
            forall_left,
            forall_right,
            glb_instances,
            complement,
            glb_bound,
            glb_support,
        ],
    }
}

/// The suite on lifted propositions over lifted values of one carrier size.
pub fn run_lifted_nba_suite(size: usize, cfg: &NbaConfig) -> SuiteReport {
    run_nba_suite(
        &LiftedProps { size },
        &LiftedValues { size },
        &format!("lifted-props-{size}"),
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifted::{Lifted, LiftedValue};
    use crate::ordinary::Valuation;

    const A: Atom = Atom::new(0);
    const B: Atom = Atom::new(1);

    fn prop(deps: &[Atom], table: &[bool]) -> LiftedProp {
        Lifted::from_table(2, deps.to_vec(), table.to_vec()).unwrap()
    }

    #[test]
    fn derived_operations() {
        let h = LiftedProps { size: 2 };
        let x = prop(&[A], &[true, false]);
        assert_eq!(h.meet(&x, &h.top()), x);
        assert!(TwoPoint.neg(&false));
        assert_eq!(h.fresh_glb(&AtomSet::new(), &[]), h.top());
        assert_eq!(h.bot(), LiftedProp::bot(2));
        assert_eq!(h.join(&x, &h.neg(&x)), h.top());
        assert_eq!(h.exists(A, &x), h.top());
        assert_eq!(h.forall(A, &x), h.bot());
    }

    #[test]
    fn forall_two_ways() {
        let h = LiftedProps { size: 2 };
        let x = prop(&[A, B], &[true, false, true, true]);
        let pointwise = Lifted::from_fn(2, &AtomSet::singleton(B), |v: &Valuation| {
            (0..2).all(|k| x.eval_at(&v.update(A, k)).unwrap())
        });
        assert_eq!(h.forall(A, &x), pointwise);
    }

    #[test]
    fn complement_and_support() {
        let h = LiftedProps { size: 2 };
        assert!(check_complement_laws(&h, &h.top()));
        let x = prop(&[A], &[false, true]);
        assert!(check_complement_laws(&h, &x));
        assert_eq!(support(&h, &h.neg(&x)), AtomSet::singleton(A));
        let xy = prop(&[A, B], &[true, false, false, false]);
        let g = h.fresh_glb(&AtomSet::singleton(A), std::slice::from_ref(&xy));
        assert!(support(&h, &g).is_subset(&AtomSet::singleton(B)));
        assert!(check_support_of_glb(&h, &AtomSet::singleton(A), &[xy]));
        assert!(check_support_of_glb(&h, &AtomSet::new(), &[]));
    }

    #[test]
    fn forall_left_instance() {
        let h = LiftedProps { size: 2 };
        let x = prop(&[A], &[true, false]);
        let u = LiftedValue::atm(2, B);
        assert!(h.le(
            &h.forall(A, &x),
            &SubstitutionAlgebra::<LiftedValues>::subst(&h, &x, A, &u)
        ));
    }

    #[test]
    fn two_point_suite_passes() {
        let cfg = NbaConfig::new(100, 0, 4);
        let report = run_nba_suite(&TwoPoint, &LiftedValues { size: 2 }, "two-point", &cfg);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn compat_premise_matters() {
        let mut cfg = NbaConfig::new(300, 0, 4);
        cfg.drop_compat_premise = true;
        let report = run_lifted_nba_suite(2, &cfg);
        assert!(report.law("compat-meet").unwrap().fail > 0);
    }
}
