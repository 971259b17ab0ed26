//! Atoms, finite permutations, and support.
//!
//! Every carrier in the crate exposes its permutation action through the
//! [`NominalSet`] trait. Minimal support is never stored; it is computed from
//! an over-approximation by testing each candidate atom with a swap against a
//! fresh atom: `a # x` holds exactly when `(b a)·x = x` for some `b # x`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A name. Equality, ordering and hashing are by index alone.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    pub const fn new(index: u32) -> Atom {
        Atom(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    /// Parses the canonical spelling: a single lowercase letter (`a`..`z`
    /// denote indices 0..25) or `a` followed by a decimal index.
    pub fn from_name(name: &str) -> Option<Atom> {
        let bytes = name.as_bytes();
        match bytes {
            [c] if c.is_ascii_lowercase() => Some(Atom(u32::from(c - b'a'))),
            [b'a', rest @ ..] if !rest.is_empty() && rest.iter().all(u8::is_ascii_digit) => {
                name[1..].parse().ok().map(Atom)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 < 26 {
            write!(f, "{}", char::from(b'a' + self.0 as u8))
        } else {
            write!(f, "a{}", self.0)
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of atoms, iterated in ascending index order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(BTreeSet<Atom>);

impl AtomSet {
    pub fn new() -> AtomSet {
        AtomSet::default()
    }

    pub fn singleton(a: Atom) -> AtomSet {
        AtomSet(BTreeSet::from([a]))
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.0.contains(&a)
    }

    pub fn insert(&mut self, a: Atom) -> bool {
        self.0.insert(a)
    }

    pub fn remove(&mut self, a: Atom) -> bool {
        self.0.remove(&a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Atom> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn without(mut self, a: Atom) -> AtomSet {
        self.0.remove(&a);
        self
    }

    pub fn with(mut self, a: Atom) -> AtomSet {
        self.0.insert(a);
        self
    }

    /// Pointwise image under a permutation.
    pub fn act(&self, p: &Perm) -> AtomSet {
        self.iter().map(|a| p.apply(a)).collect()
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> AtomSet {
        AtomSet(iter.into_iter().collect())
    }
}

impl Extend<Atom> for AtomSet {
    fn extend<I: IntoIterator<Item = Atom>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a AtomSet {
    type Item = Atom;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Atom>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// The least-index atom not in `avoid`.
pub fn fresh_atom(avoid: &AtomSet) -> Atom {
    let mut next = 0;
    for a in avoid.iter() {
        if a.index() != next {
            break;
        }
        next += 1;
    }
    Atom(next)
}

/// A finite permutation, stored as its graph on the atoms it moves.
///
/// Fixpoints are never stored, so two permutations are equal exactly when
/// their representations are.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Perm {
    moved: BTreeMap<Atom, Atom>,
}

impl Perm {
    pub fn identity() -> Perm {
        Perm::default()
    }

    /// The swapping `(a b)`; `swap(a, a)` is the identity.
    pub fn swap(a: Atom, b: Atom) -> Perm {
        if a == b {
            return Perm::identity();
        }
        Perm {
            moved: BTreeMap::from([(a, b), (b, a)]),
        }
    }

    /// Builds a permutation from an explicit graph. Returns `None` unless the
    /// pairs describe a bijection of a finite set of atoms onto itself.
    pub fn from_pairs<I: IntoIterator<Item = (Atom, Atom)>>(pairs: I) -> Option<Perm> {
        let mut moved = BTreeMap::new();
        for (from, to) in pairs {
            if moved.insert(from, to).is_some() {
                return None;
            }
        }
        let domain: BTreeSet<Atom> = moved.keys().copied().collect();
        let image: BTreeSet<Atom> = moved.values().copied().collect();
        if domain != image {
            return None;
        }
        moved.retain(|from, to| from != to);
        Some(Perm { moved })
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.moved.get(&a).copied().unwrap_or(a)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Perm) -> Perm {
        let mut moved = BTreeMap::new();
        for a in self.nontrivial().union(&first.nontrivial()).iter() {
            let image = self.apply(first.apply(a));
            if image != a {
                moved.insert(a, image);
            }
        }
        Perm { moved }
    }

    pub fn inverse(&self) -> Perm {
        Perm {
            moved: self.moved.iter().map(|(&from, &to)| (to, from)).collect(),
        }
    }

    /// The atoms this permutation moves.
    pub fn nontrivial(&self) -> AtomSet {
        self.moved.keys().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// True when `self` and `other` agree on every atom of `atoms`.
    pub fn agrees_on(&self, other: &Perm, atoms: &AtomSet) -> bool {
        atoms.iter().all(|a| self.apply(a) == other.apply(a))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moved.is_empty() {
            return write!(f, "id");
        }
        write!(f, "[")?;
        for (i, (from, to)) in self.moved.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{from}->{to}")?;
        }
        write!(f, "]")
    }
}

/// A carrier with a permutation action, a decidable equality and a finite
/// over-approximation of each element's support.
///
/// Implementations are handles: the element type may need context (a carrier
/// size, a signature) that lives in the handle rather than in each element.
pub trait NominalSet {
    type Elem: Clone + fmt::Debug;

    fn act(&self, p: &Perm, x: &Self::Elem) -> Self::Elem;

    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    /// A finite set of atoms containing `supp(x)`.
    fn support_bound(&self, x: &Self::Elem) -> AtomSet;

    /// Human-readable rendering used in reports.
    fn show(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }
}

/// Decides `a # x` by swapping `a` with an atom fresh for the support bound.
pub fn is_fresh_by_swap<S: NominalSet + ?Sized>(set: &S, a: Atom, x: &S::Elem) -> bool {
    let bound = set.support_bound(x);
    if !bound.contains(a) {
        return true;
    }
    let b = fresh_atom(&bound.clone().with(a));
    set.equal(&set.act(&Perm::swap(b, a), x), x)
}

/// The minimal support of `x`, computed from its support bound.
pub fn support<S: NominalSet + ?Sized>(set: &S, x: &S::Elem) -> AtomSet {
    set.support_bound(x)
        .iter()
        .filter(|&a| !is_fresh_by_swap(set, a, x))
        .collect()
}

/// True when `a # x` for every atom `a` in `atoms`.
pub fn is_fresh_for_all<S: NominalSet + ?Sized>(set: &S, atoms: &AtomSet, x: &S::Elem) -> bool {
    atoms.iter().all(|a| is_fresh_by_swap(set, a, x))
}

/// Atoms themselves, acted on by application.
#[derive(Clone, Copy, Debug, Default)]
pub struct Atoms;

impl NominalSet for Atoms {
    type Elem = Atom;

    fn act(&self, p: &Perm, x: &Atom) -> Atom {
        p.apply(*x)
    }

    fn equal(&self, x: &Atom, y: &Atom) -> bool {
        x == y
    }

    fn support_bound(&self, x: &Atom) -> AtomSet {
        AtomSet::singleton(*x)
    }

    fn show(&self, x: &Atom) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Atom = Atom::new(0);
    const B: Atom = Atom::new(1);
    const C: Atom = Atom::new(2);

    #[test]
    fn swap_examples() {
        assert_eq!(Perm::swap(A, A), Perm::identity());
        assert_eq!(Perm::swap(A, B).apply(A), B);
        assert_eq!(Perm::swap(A, B).apply(B), A);
        assert_eq!(Perm::swap(A, B).apply(C), C);
        assert_eq!(Perm::identity().apply(A), A);
    }

    #[test]
    fn compose_applies_right_first() {
        // (b c)∘(a b): a -> b -> c
        let p = Perm::swap(B, C).compose(&Perm::swap(A, B));
        assert_eq!(p.apply(A), C);
        assert_eq!(p.apply(B), A);
        assert_eq!(p.apply(C), B);
    }

    #[test]
    fn compose_and_inverse_examples() {
        let ab = Perm::swap(A, B);
        assert!(ab.compose(&ab).is_identity());
        assert_eq!(Perm::identity().compose(&ab), ab);
        assert!(ab.compose(&ab.inverse()).is_identity());
        assert_eq!(Perm::identity().inverse(), Perm::identity());
        assert_eq!(ab.inverse(), ab);

        let p = Perm::swap(B, C).compose(&Perm::swap(A, B));
        let expected = Perm::swap(A, B).compose(&Perm::swap(B, C));
        assert_eq!(p.inverse(), expected);
        for x in [A, B, C] {
            assert_eq!(p.inverse().apply(p.apply(x)), x);
        }
    }

    #[test]
    fn from_pairs_rejects_non_bijections() {
        assert!(Perm::from_pairs([(A, B)]).is_none());
        assert!(Perm::from_pairs([(A, B), (A, C), (B, A)]).is_none());
        let cyc = Perm::from_pairs([(A, B), (B, C), (C, A)]).unwrap();
        assert_eq!(cyc.apply(C), A);
        assert_eq!(Perm::from_pairs([(A, A)]).unwrap(), Perm::identity());
    }

    #[test]
    fn fresh_atom_examples() {
        assert_eq!(fresh_atom(&AtomSet::new()), Atom::new(0));
        assert_eq!(fresh_atom(&[A, B].into_iter().collect()), Atom::new(2));
        assert_eq!(fresh_atom(&[A, C].into_iter().collect()), Atom::new(1));
        let s: AtomSet = [Atom::new(3), Atom::new(5)].into_iter().collect();
        assert_eq!(fresh_atom(&s), fresh_atom(&s.clone()));
    }

    #[test]
    fn atom_support() {
        assert_eq!(support(&Atoms, &A), AtomSet::singleton(A));
        assert!(is_fresh_by_swap(&Atoms, A, &B));
        assert!(!is_fresh_by_swap(&Atoms, A, &A));
    }

    #[test]
    fn atom_names() {
        assert_eq!(Atom::from_name("a"), Some(A));
        assert_eq!(Atom::from_name("c"), Some(C));
        assert_eq!(Atom::from_name("a2"), Some(C));
        assert_eq!(Atom::from_name("a30"), Some(Atom::new(30)));
        assert_eq!(Atom::from_name("ab"), None);
        assert_eq!(Atom::from_name("P"), None);
        assert_eq!(Atom::new(30).to_string(), "a30");
        assert_eq!(Atom::new(25).to_string(), "z");
    }
}
