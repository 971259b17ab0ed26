use proptest::prelude::*;

use nomlog::gen;
use nomlog::interp::{check_soundness, denote_formula};
use nomlog::lattice::{Complemented, NominalPoset};
use nomlog::lifted::{LiftedModel, LiftedProp, LiftedProps};
use nomlog::nominal::support;
use nomlog::sequent::{parse_proof, Rule};
use nomlog::syntax::AlphaFormulas;
use nomlog::{check_derivation, fresh_atom, Atom, AtomSet, Derivation, Formula, Perm, Sequent, Term};

const POOL: u32 = 5;

fn atom() -> impl Strategy<Value = Atom> {
    (0..POOL).prop_map(Atom::new)
}

fn perm() -> impl Strategy<Value = Perm> {
    Just((0..POOL + 2).map(Atom::new).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|image| Perm::from_pairs((0..POOL + 2).map(Atom::new).zip(image)).unwrap())
}

fn term() -> impl Strategy<Value = Term> {
    atom().prop_map(Term::var).prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(l, r)| Term::app("g", vec![l, r])),
        ]
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Bot),
        4 => term().prop_map(|t| Formula::pred("P", vec![t])),
        2 => (term(), term()).prop_map(|(l, r)| Formula::pred("Q", vec![l, r])),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            inner.clone().prop_map(Formula::neg),
            (atom(), inner).prop_map(|(a, body)| Formula::all(a, body)),
        ]
    })
}

/// Renames every binder to an atom unused anywhere in `phi` or `avoid`,
/// yielding an α-variant built without the library's α-equivalence.
fn rename_binders(phi: &Formula, avoid: &AtomSet) -> Formula {
    match phi {
        Formula::Bot | Formula::Pred(..) => phi.clone(),
        Formula::And(l, r) => {
            let l = rename_binders(l, avoid);
            let r = rename_binders(r, &avoid.union(&l.atoms()));
            Formula::and(l, r)
        }
        Formula::Neg(g) => Formula::neg(rename_binders(g, avoid)),
        Formula::All(b, body) => {
            let c = fresh_atom(&avoid.union(&phi.atoms()));
            let swapped = body.act(&Perm::swap(c, *b));
            Formula::all(c, rename_binders(&swapped, &avoid.clone().with(c)))
        }
    }
}

fn model(seed: u64, size: usize) -> LiftedModel {
    let mut rng = gen::rng_from_seed(seed);
    let mut sig = nomlog::Signature::new();
    sig.declare_fun("f", 1).unwrap();
    sig.declare_fun("g", 2).unwrap();
    sig.declare_pred("P", 1).unwrap();
    sig.declare_pred("Q", 2).unwrap();
    LiftedModel::new(gen::random_model(&mut rng, &sig, size))
}

fn corpus() -> Vec<Derivation> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../proofs");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
        .iter()
        .filter(|p| p.extension().is_some_and(|x| x == "prf"))
        .map(|p| parse_proof(&std::fs::read_to_string(p).unwrap(), &mut gen::unary_signature()).unwrap())
        .collect()
}

fn lifted_prop() -> impl Strategy<Value = LiftedProp> {
    (any::<u64>(), 1..=3usize).prop_map(|(seed, size)| {
        let mut rng = gen::rng_from_seed(seed);
        gen::random_lifted(&mut rng, size, &gen::atom_pool(3), &[false, true])
    })
}

fn three_props() -> impl Strategy<Value = (LiftedProps, [LiftedProp; 3])> {
    (any::<u64>(), 1..=3usize).prop_map(|(seed, size)| {
        let mut rng = gen::rng_from_seed(seed);
        let pool = gen::atom_pool(3);
        let mut next = || gen::random_lifted(&mut rng, size, &pool, &[false, true]);
        (LiftedProps { size }, [next(), next(), next()])
    })
}

proptest! {
    #[test]
    fn perm_group_laws(p in perm(), q in perm(), a in atom()) {
        prop_assert_eq!(Perm::identity().apply(a), a);
        prop_assert_eq!(p.compose(&q).apply(a), p.apply(q.apply(a)));
        prop_assert_eq!(p.inverse().apply(p.apply(a)), a);
        prop_assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn free_atoms_are_equivariant(phi in formula(), p in perm()) {
        prop_assert_eq!(phi.act(&p).fa(), phi.fa().act(&p));
        prop_assert_eq!(support(&AlphaFormulas, &phi), phi.fa());
    }

    #[test]
    fn substitution_is_equivariant(phi in formula(), a in atom(), s in term(), p in perm()) {
        let lhs = phi.subst(a, &s).act(&p);
        let rhs = phi.act(&p).subst(p.apply(a), &s.act(&p));
        prop_assert!(lhs.alpha_eq(&rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn substitution_respects_alpha(phi in formula(), a in atom(), s in term()) {
        let variant = rename_binders(&phi, &s.fa().with(a));
        prop_assert!(phi.alpha_eq(&variant));
        prop_assert!(phi.subst(a, &s).alpha_eq(&variant.subst(a, &s)));
        prop_assert_eq!(phi.subst(a, &s).fa(), if phi.fa().contains(a) {
            phi.fa().without(a).union(&s.fa())
        } else {
            phi.fa()
        });
    }

    #[test]
    fn denotation_is_alpha_invariant(phi in formula(), seed in any::<u64>(), size in 1..=2usize) {
        let m = model(seed, size);
        let variant = rename_binders(&phi, &AtomSet::new());
        prop_assert_eq!(denote_formula(&m, &phi).unwrap(), denote_formula(&m, &variant).unwrap());
    }

    #[test]
    fn axiom_leaf_checks(phi in formula(), extra in formula()) {
        let d = Derivation::leaf(Rule::Ax, Sequent::new([phi.clone(), extra], [phi.clone()]));
        prop_assert!(check_derivation(&d).is_ok());
        let variant = rename_binders(&phi, &AtomSet::new());
        let d = Derivation::leaf(Rule::Ax, Sequent::new([phi], [variant]));
        prop_assert!(check_derivation(&d).is_ok());
    }

    #[test]
    fn checking_is_equivariant(p in perm(), seed in any::<u64>()) {
        for d in corpus() {
            let moved = d.act(&p);
            prop_assert_eq!(check_derivation(&moved).unwrap(), &d.conclusion.act(&p));
            let m = model(seed, 2);
            prop_assert!(check_soundness(&m, &moved).unwrap());
        }
    }

    #[test]
    fn order_is_a_partial_order((h, [x, y, z]) in three_props()) {
        prop_assert!(h.le(&x, &x));
        if h.le(&x, &y) && h.le(&y, &x) {
            prop_assert_eq!(&x, &y);
        }
        if h.le(&x, &y) && h.le(&y, &z) {
            prop_assert!(h.le(&x, &z));
        }
    }

    #[test]
    fn meet_and_join_are_bounds((h, [x, y, z]) in three_props()) {
        let m = h.meet(&x, &y);
        prop_assert!(h.le(&m, &x) && h.le(&m, &y));
        if h.le(&z, &x) && h.le(&z, &y) {
            prop_assert!(h.le(&z, &m));
        }
        let j = h.join(&x, &y);
        prop_assert!(h.le(&x, &j) && h.le(&y, &j));
        prop_assert_eq!(h.meet(&x, &h.join(&x, &y)), x.clone());
        prop_assert_eq!(h.meet(&x, &h.join(&y, &z)), h.join(&h.meet(&x, &y), &h.meet(&x, &z)));
    }

    #[test]
    fn negation_is_an_involution(x in lifted_prop()) {
        let h = LiftedProps { size: x.size() };
        prop_assert_eq!(h.neg(&h.neg(&x)), x.clone());
        prop_assert!(h.le(&h.bot(), &x) && h.le(&x, &h.top()));
    }

    #[test]
    fn forall_is_below_and_fresh(x in lifted_prop(), a in (0..3u32).prop_map(Atom::new)) {
        let h = LiftedProps { size: x.size() };
        let all = h.forall(a, &x);
        prop_assert!(h.le(&all, &x));
        prop_assert!(!support(&h, &all).contains(a));
        prop_assert!(h.le(&x, &h.exists(a, &x)));
    }
}
