//! Finitely-dependent functions from valuations, over a finite carrier.
//!
//! An element is a pair of dependence atoms and a total table indexed by
//! their values. Every constructor returns the canonical form, in which no
//! dependence atom is spurious. Structural equality is then extensional
//! equality, and the dependence set is exactly the support.

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::nominal::{Atom, AtomSet, Perm};
use crate::ordinary::{tuple_of, ModelError, OrdinaryModel, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("valuation does not bind dependence atom `{0}`")]
    MissingAtom(Atom),
    #[error("dependence atoms must be strictly ascending")]
    UnsortedDeps,
    #[error("table must have {expected} entries, found {found}")]
    TableSize { expected: usize, found: usize },
    #[error("value {value} is out of range for a carrier of size {size}")]
    OutOfRange { value: usize, size: usize },
    #[error("elements over carriers of size {0} and {1} cannot be combined")]
    CarrierMismatch(usize, usize),
}

/// The value space of a lifted element: carrier elements or truth values.
pub trait LiftValue: Copy + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn render(self) -> String;

    fn check(self, _size: usize) -> Result<(), LiftError> {
        Ok(())
    }
}

impl LiftValue for usize {
    fn render(self) -> String {
        self.to_string()
    }

    fn check(self, size: usize) -> Result<(), LiftError> {
        if self < size {
            Ok(())
        } else {
            Err(LiftError::OutOfRange { value: self, size })
        }
    }
}

impl LiftValue for bool {
    fn render(self) -> String {
        if self { "T" } else { "F" }.to_string()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lifted<X> {
    size: usize,
    deps: Vec<Atom>,
    table: Vec<X>,
}

/// An element of the lifted carrier.
pub type LiftedValue = Lifted<usize>;
/// An element of the lifted two-point algebra.
pub type LiftedProp = Lifted<bool>;

fn index_in(deps: &[Atom], size: usize, v: &Valuation) -> Result<usize, LiftError> {
    deps.iter().try_fold(0, |acc, &a| {
        v.get(a).map(|x| acc * size + x).ok_or(LiftError::MissingAtom(a))
    })
}

impl<X: LiftValue> Lifted<X> {
    pub fn constant(size: usize, x: X) -> Lifted<X> {
        Lifted {
            size,
            deps: Vec::new(),
            table: vec![x],
        }
    }

    /// Tabulates `f` over every valuation on `deps`, then canonicalizes.
    pub fn from_fn(size: usize, deps: &AtomSet, mut f: impl FnMut(&Valuation) -> X) -> Lifted<X> {
        let deps: Vec<Atom> = deps.iter().collect();
        let count = size.pow(deps.len() as u32);
        let mut table = Vec::with_capacity(count);
        let mut v: Valuation = deps.iter().map(|&a| (a, 0)).collect();
        for i in 0..count {
            for (&a, x) in deps.iter().zip(tuple_of(i, size, deps.len())) {
                v.set(a, x);
            }
            table.push(f(&v));
        }
        Lifted { size, deps, table }.canonicalize()
    }

    /// Builds an element from an explicit table, indexed with the first
    /// dependence atom most significant. The result is canonical.
    pub fn from_table(size: usize, deps: Vec<Atom>, table: Vec<X>) -> Result<Lifted<X>, LiftError> {
        if deps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LiftError::UnsortedDeps);
        }
        let expected = size.pow(deps.len() as u32);
        if table.len() != expected {
            return Err(LiftError::TableSize {
                expected,
                found: table.len(),
            });
        }
        table.iter().try_for_each(|x| x.check(size))?;
        Ok(Lifted { size, deps, table }.canonicalize())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn deps(&self) -> AtomSet {
        self.deps.iter().copied().collect()
    }

    pub fn table(&self) -> &[X] {
        &self.table
    }

    /// Drops every coordinate on which the table is constant.
    pub fn canonicalize(mut self) -> Lifted<X> {
        for pos in (0..self.deps.len()).rev() {
            if self.constant_in(pos) {
                self = self.drop_coordinate(pos);
            }
        }
        self
    }

    /// True when no dependence atom is spurious.
    pub fn is_canonical(&self) -> bool {
        (0..self.deps.len()).all(|pos| !self.constant_in(pos))
    }

    fn stride(&self, pos: usize) -> usize {
        self.size.pow((self.deps.len() - 1 - pos) as u32)
    }

    fn constant_in(&self, pos: usize) -> bool {
        let stride = self.stride(pos);
        (0..self.table.len()).all(|i| {
            let digit = (i / stride) % self.size;
            self.table[i] == self.table[i - digit * stride]
        })
    }

    fn drop_coordinate(self, pos: usize) -> Lifted<X> {
        let stride = self.stride(pos);
        let size = self.size;
        let table = (0..self.table.len())
            .filter(|i| (i / stride).is_multiple_of(size))
            .map(|i| self.table[i])
            .collect();
        let mut deps = self.deps;
        deps.remove(pos);
        Lifted { size, deps, table }
    }

    /// The value at `v`, which must bind every dependence atom.
    pub fn eval_at(&self, v: &Valuation) -> Result<X, LiftError> {
        Ok(self.table[index_in(&self.deps, self.size, v)?])
    }

    fn value(&self, v: &Valuation) -> X {
        self.eval_at(v).expect("valuation covers the dependence atoms")
    }

    /// `(π·f)(ς) = f(π⁻¹·ς)`: the dependence atoms are renamed by `π`.
    pub fn act(&self, p: &Perm) -> Lifted<X> {
        if p.is_identity() {
            return self.clone();
        }
        let renamed: AtomSet = self.deps.iter().map(|&a| p.apply(a)).collect();
        let inv = p.inverse();
        Lifted::from_fn(self.size, &renamed, |v| self.value(&v.act(&inv)))
    }

    /// `f[a ↦ g](ς) = f(ς[a := g(ς)])`.
    pub fn subst(&self, a: Atom, g: &LiftedValue) -> Lifted<X> {
        debug_assert_eq!(self.size, g.size);
        if !self.deps.contains(&a) {
            return self.clone();
        }
        let deps = self.deps().without(a).union(&g.deps());
        Lifted::from_fn(self.size, &deps, |v| self.value(&v.update(a, g.value(v))))
    }

    /// Pointwise combination over the union of dependence sets.
    pub fn zip_with<Y: LiftValue, Z: LiftValue>(
        &self,
        other: &Lifted<Y>,
        mut f: impl FnMut(X, Y) -> Z,
    ) -> Lifted<Z> {
        let deps = self.deps().union(&other.deps());
        Lifted::from_fn(self.size, &deps, |v| f(self.value(v), other.value(v)))
    }

    pub fn map<Y: LiftValue>(&self, mut f: impl FnMut(X) -> Y) -> Lifted<Y> {
        Lifted {
            size: self.size,
            deps: self.deps.clone(),
            table: self.table.iter().map(|&x| f(x)).collect(),
        }
        .canonicalize()
    }

    /// Every canonical element over `size` whose dependence atoms lie in
    /// `atoms`, or `None` if there are more than `max`.
    pub fn enumerate(size: usize, atoms: &AtomSet, values: &[X], max: usize) -> Option<Vec<Lifted<X>>> {
        let slots = size.checked_pow(atoms.len() as u32)?;
        let count = values.len().checked_pow(u32::try_from(slots).ok()?)?;
        if count > max {
            return None;
        }
        let deps: Vec<Atom> = atoms.iter().collect();
        let mut out: Vec<Lifted<X>> = (0..count)
            .map(|code| {
                let table = tuple_of(code, values.len(), slots)
                    .into_iter()
                    .map(|d| values[d])
                    .collect();
                Lifted {
                    size,
                    deps: deps.clone(),
                    table,
                }
                .canonicalize()
            })
            .collect();
        let mut seen = std::collections::HashSet::new();
        out.retain(|x| seen.insert(x.clone()));
        Some(out)
    }
}

impl LiftedValue {
    /// `atm(a)(ς) = ς(a)`.
    pub fn atm(size: usize, a: Atom) -> LiftedValue {
        Lifted::from_fn(size, &AtomSet::singleton(a), |v| v.get(a).expect("bound"))
    }
}

impl LiftedProp {
    pub fn top(size: usize) -> LiftedProp {
        Lifted::constant(size, true)
    }

    pub fn bot(size: usize) -> LiftedProp {
        Lifted::constant(size, false)
    }

    /// Pointwise order, checked over the union of dependence sets.
    pub fn le(&self, other: &LiftedProp) -> bool {
        let deps = self.deps().union(&other.deps());
        Valuation::all_on(&deps, self.size).all(|v| !self.value(&v) || other.value(&v))
    }

    pub fn neg(&self) -> LiftedProp {
        self.map(|x| !x)
    }

    pub fn meet(&self, other: &LiftedProp) -> LiftedProp {
        self.zip_with(other, |x, y| x && y)
    }

    /// The greatest lower bound of `xs` among elements whose support avoids
    /// `fresh`: at each valuation, the meet of every `g` in `xs` over every
    /// reassignment of the atoms in `fresh`.
    pub fn fresh_glb(size: usize, fresh: &AtomSet, xs: &[LiftedProp]) -> LiftedProp {
        let deps = xs
            .iter()
            .fold(AtomSet::new(), |acc, g| acc.union(&g.deps()))
            .difference(fresh);
        Lifted::from_fn(size, &deps, |v| {
            xs.iter().all(|g| {
                let moved = g.deps().intersection(fresh);
                Valuation::all_on(&moved, size).all(|w| {
                    let mut full = v.clone();
                    for (a, x) in w.iter() {
                        full.set(a, x);
                    }
                    g.value(&full)
                })
            })
        })
    }
}

impl<X: LiftValue> fmt::Debug for Lifted<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, a) in self.deps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "|")?;
        for x in &self.table {
            write!(f, "{}", x.render())?;
        }
        write!(f, ">")
    }
}

/// The dump format: a `deps:` line, then one `[x,y] -> v` line per tuple.
impl<X: LiftValue> fmt::Display for Lifted<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deps: ")?;
        for (i, a) in self.deps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        writeln!(f)?;
        for (i, x) in self.table.iter().enumerate() {
            let tuple = tuple_of(i, self.size, self.deps.len());
            let cells: Vec<String> = tuple.iter().map(usize::to_string).collect();
            writeln!(f, "[{}] -> {}", cells.join(","), x.render())?;
        }
        Ok(())
    }
}

/// The lifted carrier `|N|•` of a model of the given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftedValues {
    pub size: usize,
}

/// The lifted two-point algebra `{⊥,⊤}•` over a carrier of the given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftedProps {
    pub size: usize,
}

/// An ordinary model together with its lifted interpretation of symbols.
#[derive(Debug, Clone)]
pub struct LiftedModel {
    base: OrdinaryModel,
}

impl LiftedModel {
    pub fn new(base: OrdinaryModel) -> LiftedModel {
        LiftedModel { base }
    }

    pub fn base(&self) -> &OrdinaryModel {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn values(&self) -> LiftedValues {
        LiftedValues { size: self.size() }
    }

    pub fn props(&self) -> LiftedProps {
        LiftedProps { size: self.size() }
    }

    fn check_args(&self, args: &[LiftedValue]) -> Result<AtomSet, ModelError> {
        let mut deps = AtomSet::new();
        for g in args {
            if g.size != self.size() {
                return Err(ModelError::OutOfRange {
                    value: g.size,
                    size: self.size(),
                });
            }
            deps = deps.union(&g.deps());
        }
        Ok(deps)
    }

    /// `f•(g1, ..)(ς) = f(g1(ς), ..)`.
    pub fn lift_fn(&self, name: &str, args: &[LiftedValue]) -> Result<LiftedValue, ModelError> {
        let deps = self.check_args(args)?;
        // surface unknown-symbol and arity errors before tabulating
        self.base.apply_fun(name, &vec![0; args.len()])?;
        Ok(Lifted::from_fn(self.size(), &deps, |v| {
            let xs: Vec<usize> = args.iter().map(|g| g.value(v)).collect();
            self.base.apply_fun(name, &xs).expect("checked above")
        }))
    }

    /// `P•(g1, ..)(ς) = P(g1(ς), ..)`.
    pub fn lift_pred(&self, name: &str, args: &[LiftedValue]) -> Result<LiftedProp, ModelError> {
        let deps = self.check_args(args)?;
        self.base.apply_pred(name, &vec![0; args.len()])?;
        Ok(Lifted::from_fn(self.size(), &deps, |v| {
            let xs: Vec<usize> = args.iter().map(|g| g.value(v)).collect();
            self.base.apply_pred(name, &xs).expect("checked above")
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Atom = Atom::new(0);
    const B: Atom = Atom::new(1);

    fn at(pairs: &[(Atom, usize)]) -> Valuation {
        pairs.iter().copied().collect()
    }

    #[test]
    fn atm_is_the_identity_table() {
        let x = LiftedValue::atm(2, A);
        assert_eq!(x.deps(), AtomSet::singleton(A));
        assert_eq!(x.table(), &[0, 1]);
        assert_eq!(x.eval_at(&at(&[(A, 1)])), Ok(1));
        assert_eq!(x.eval_at(&at(&[(B, 1)])), Err(LiftError::MissingAtom(A)));
        assert_eq!(
            LiftedValue::atm(3, A).to_string(),
            "deps: a\n[0] -> 0\n[1] -> 1\n[2] -> 2\n"
        );
    }

    #[test]
    fn canonical_forms() {
        // constant in b
        let f = LiftedProp::from_table(2, vec![A, B], vec![true, true, false, false]).unwrap();
        assert_eq!(f.deps(), AtomSet::singleton(A));
        assert_eq!(f.table(), &[true, false]);
        assert!(LiftedValue::atm(2, A).is_canonical());
        // carrier of size one collapses everything
        assert!(LiftedValue::atm(1, A).deps().is_empty());
        assert!(LiftedProp::from_table(2, vec![B, A], vec![true; 4]).is_err());
        assert!(LiftedValue::from_table(2, vec![A], vec![0, 2]).is_err());
    }

    #[test]
    fn action_renames_dependencies() {
        let ab = Perm::swap(A, B);
        assert_eq!(LiftedValue::atm(2, A).act(&ab), LiftedValue::atm(2, B));
        let f = LiftedValue::atm(3, A);
        assert_eq!(f.act(&Perm::identity()), f);
        // a non-symmetric two-atom table: value = ς(a) unless ς(b) = 1
        let g = LiftedValue::from_table(2, vec![A, B], vec![0, 1, 1, 1]).unwrap();
        let h = LiftedValue::from_table(2, vec![A, B], vec![0, 0, 1, 0]).unwrap();
        let h_swapped = LiftedValue::from_table(2, vec![A, B], vec![0, 1, 0, 0]).unwrap();
        assert_eq!(h.act(&ab), h_swapped);
        assert_eq!(g.act(&ab), g);
        let c = Atom::new(2);
        let moved = g.act(&Perm::swap(B, c));
        assert_eq!(moved.deps(), [A, c].into_iter().collect());
        assert_eq!(moved.eval_at(&at(&[(A, 0), (c, 1)])), Ok(1));
    }

    #[test]
    fn substitution() {
        let size = 2;
        assert_eq!(
            LiftedValue::atm(size, A).subst(A, &LiftedValue::atm(size, B)),
            LiftedValue::atm(size, B)
        );
        let g = LiftedValue::from_table(size, vec![B], vec![1, 0]).unwrap();
        let indep = LiftedProp::from_table(size, vec![B], vec![true, false]).unwrap();
        assert_eq!(indep.subst(A, &g), indep);
        assert_eq!(LiftedProp::top(size).subst(A, &g), LiftedProp::top(size));
    }

    #[test]
    fn order_and_complement() {
        let size = 2;
        let at0 = LiftedProp::from_table(size, vec![A], vec![true, false]).unwrap();
        let at1 = LiftedProp::from_table(size, vec![A], vec![false, true]).unwrap();
        assert!(LiftedProp::bot(size).le(&at0));
        assert!(at0.le(&LiftedProp::top(size)));
        assert!(!at0.le(&at1) && !at1.le(&at0));
        assert_eq!(at0.neg(), at1);
        assert_eq!(at0.neg().neg(), at0);
        assert_eq!(at0.meet(&at0.neg()), LiftedProp::bot(size));
        assert_eq!(LiftedProp::top(size).neg(), LiftedProp::bot(size));
    }

    #[test]
    fn fresh_glb_examples() {
        let size = 2;
        assert_eq!(
            LiftedProp::fresh_glb(size, &AtomSet::new(), &[]),
            LiftedProp::top(size)
        );
        let at0 = LiftedProp::from_table(size, vec![A], vec![true, false]).unwrap();
        assert_eq!(
            LiftedProp::fresh_glb(size, &AtomSet::singleton(A), std::slice::from_ref(&at0)),
            LiftedProp::bot(size)
        );
        let on_b = LiftedProp::from_table(size, vec![B], vec![false, true]).unwrap();
        assert_eq!(
            LiftedProp::fresh_glb(size, &AtomSet::singleton(A), std::slice::from_ref(&on_b)),
            on_b
        );
        assert_eq!(
            LiftedProp::fresh_glb(size, &AtomSet::new(), &[at0.clone(), on_b.clone()]),
            at0.meet(&on_b)
        );
    }

    #[test]
    fn lifted_symbols() {
        let base = OrdinaryModel::new(2)
            .unwrap()
            .with_fun("f", 1, vec![1, 0])
            .unwrap()
            .with_pred("P", 0, vec![true])
            .unwrap();
        let m = LiftedModel::new(base);
        let fa = m.lift_fn("f", &[LiftedValue::atm(2, A)]).unwrap();
        assert_eq!(fa.deps(), AtomSet::singleton(A));
        assert_eq!(fa.table(), &[1, 0]);
        assert_eq!(m.lift_pred("P", &[]).unwrap(), LiftedProp::top(2));
        let c = m.lift_fn("f", &[Lifted::constant(2, 0)]).unwrap();
        assert_eq!(c, Lifted::constant(2, 1));
        assert!(m.lift_fn("g", &[]).is_err());
        assert!(m.lift_fn("f", &[]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let pool: AtomSet = [A, B].into_iter().collect();
        let props = LiftedProp::enumerate(2, &pool, &[false, true], 1 << 20).unwrap();
        assert_eq!(props.len(), 16);
        let values = LiftedValue::enumerate(2, &AtomSet::singleton(A), &[0, 1], 100).unwrap();
        assert_eq!(values.len(), 4);
        assert!(LiftedValue::enumerate(3, &pool, &[0, 1, 2], 1000).is_none());
    }
}
