//! Finite Boolean algebras.
//!
//! Every algebra is the powerset of a finite, ordered list of named atoms. An
//! element is a subset of those atoms, stored as a bitmask (bit `i` is atom
//! `i`). Two interchangeable backends exist: [`Backend::Bitset`] works on the
//! masks directly, while [`Backend::Formula`] keeps a propositional formula per
//! element and derives its subset from the formula's truth table, where an atom
//! name denotes the singleton holding that atom.

mod formula;
mod maps;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{ParseError, Position};

pub use formula::{parse_formula, parse_formula_tokens, Formula};
pub use maps::{AlgebraHom, MapError, MeetMorphism, MonotoneMap, Tabulation};

/// Default number of atoms an algebra may have.
pub const DEFAULT_ATOM_CAP: usize = 16;

/// Hard limit imposed by the 64-bit element masks.
pub const MAX_ATOMS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different algebras")]
    MixedAlgebra,
    #[error("an algebra needs at least one atom")]
    NoAtoms,
    #[error("{count} atoms exceeds the cap of {cap}")]
    TooManyAtoms { count: usize, cap: usize },
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("`{0}` is not a valid atom name")]
    InvalidAtomName(String),
    #[error("unknown atom `{name}` at {pos}")]
    UnknownAtom { name: String, pos: Position },
    #[error("mask {mask:#x} is not a subset of the {atoms} atoms")]
    OutOfRange { mask: u64, atoms: usize },
    #[error("({assume}, {guarantee}) is not canonical: assume | guarantee != true")]
    NotCanonical { assume: String, guarantee: String },
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Bitset,
    Formula,
}

#[derive(Debug, PartialEq, Eq)]
struct AlgebraInner {
    atoms: Vec<String>,
    backend: Backend,
    full: u64,
}

/// The powerset algebra over a list of atoms. Cheap to clone.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraInner>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("atoms", &self.0.atoms)
            .field("backend", &self.0.backend)
            .finish()
    }
}

impl Algebra {
    pub fn new<I, S>(atoms: I, backend: Backend) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(atoms, backend, DEFAULT_ATOM_CAP)
    }

    pub fn with_cap<I, S>(atoms: I, backend: Backend, cap: usize) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        let cap = cap.min(MAX_ATOMS);
        if atoms.is_empty() {
            return Err(AlgebraError::NoAtoms);
        }
        if atoms.len() > cap {
            return Err(AlgebraError::TooManyAtoms {
                count: atoms.len(),
                cap,
            });
        }
        for (i, atom) in atoms.iter().enumerate() {
            if !crate::syntax::is_identifier(atom) || atom == "true" || atom == "false" {
                return Err(AlgebraError::InvalidAtomName(atom.clone()));
            }
            if atoms[..i].contains(atom) {
                return Err(AlgebraError::DuplicateAtom(atom.clone()));
            }
        }
        let full = (1u64 << atoms.len()) - 1;
        Ok(Algebra(Arc::new(AlgebraInner {
            atoms,
            backend,
            full,
        })))
    }

    pub fn bitset<S: AsRef<str>>(atoms: &[S]) -> Result<Self, AlgebraError> {
        Self::new(atoms.iter().map(|s| s.as_ref().to_owned()), Backend::Bitset)
    }

    pub fn formula<S: AsRef<str>>(atoms: &[S]) -> Result<Self, AlgebraError> {
        Self::new(atoms.iter().map(|s| s.as_ref().to_owned()), Backend::Formula)
    }

    /// `n` atoms named `x0, x1, ...`.
    pub fn numbered(n: usize, backend: Backend) -> Result<Self, AlgebraError> {
        Self::new((0..n).map(|i| format!("x{i}")), backend)
    }

    /// Same atoms, other backend.
    pub fn with_backend(&self, backend: Backend) -> Algebra {
        Algebra(Arc::new(AlgebraInner {
            atoms: self.0.atoms.clone(),
            backend,
            full: self.0.full,
        }))
    }

    pub fn atoms(&self) -> &[String] {
        &self.0.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.0.atoms.len()
    }

    pub fn backend(&self) -> Backend {
        self.0.backend
    }

    /// Mask of the top element.
    pub fn full_mask(&self) -> u64 {
        self.0.full
    }

    pub fn carrier_size(&self) -> u64 {
        self.0.full + 1
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.0.atoms.iter().position(|a| a == name)
    }

    pub fn bottom(&self) -> Element {
        match self.backend() {
            Backend::Bitset => self.raw(0),
            Backend::Formula => Element::from_formula(self.clone(), Arc::new(Formula::False)),
        }
    }

    pub fn top(&self) -> Element {
        match self.backend() {
            Backend::Bitset => self.raw(self.0.full),
            Backend::Formula => Element::from_formula(self.clone(), Arc::new(Formula::True)),
        }
    }

    /// The singleton holding the named atom.
    pub fn atom(&self, name: &str) -> Result<Element, AlgebraError> {
        let idx = self
            .atom_index(name)
            .ok_or_else(|| AlgebraError::UnknownAtom {
                name: name.to_owned(),
                pos: Position::default(),
            })?;
        Ok(match self.backend() {
            Backend::Bitset => self.raw(1 << idx),
            Backend::Formula => Element::from_formula(self.clone(), Arc::new(Formula::Atom(idx))),
        })
    }

    /// The element with the given subset mask.
    pub fn element(&self, mask: u64) -> Result<Element, AlgebraError> {
        if mask & !self.0.full != 0 {
            return Err(AlgebraError::OutOfRange {
                mask,
                atoms: self.atom_count(),
            });
        }
        Ok(self.element_of(mask))
    }

    pub(crate) fn element_of(&self, mask: u64) -> Element {
        debug_assert_eq!(mask & !self.0.full, 0);
        match self.backend() {
            Backend::Bitset => self.raw(mask),
            Backend::Formula => {
                Element::from_formula(self.clone(), Arc::new(Formula::dnf_of_mask(mask)))
            }
        }
    }

    fn raw(&self, bits: u64) -> Element {
        Element {
            algebra: self.clone(),
            bits,
            formula: None,
        }
    }

    /// All `2^n` elements in mask order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..=self.0.full).map(move |m| self.element_of(m))
    }

    /// Parses a formula over this algebra's atoms.
    pub fn parse(&self, text: &str) -> Result<Element, AlgebraError> {
        parse_formula(text, self)
    }

    /// Sorted-minterm DNF of a mask: atom names joined by ` | ` in atom order.
    pub fn render_mask(&self, mask: u64) -> String {
        if mask == 0 {
            return "false".to_owned();
        }
        let names: Vec<&str> = (0..self.atom_count())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.0.atoms[i].as_str())
            .collect();
        names.join(" | ")
    }
}

/// An element of an [`Algebra`]. Equality is semantic: two elements are equal
/// when they belong to the same algebra and denote the same subset.
#[derive(Clone)]
pub struct Element {
    algebra: Algebra,
    bits: u64,
    formula: Option<Arc<Formula>>,
}

/// Formula elements above this many nodes are rewritten to their DNF.
const COMPACT_THRESHOLD: usize = 48;

impl Element {
    fn from_formula(algebra: Algebra, formula: Arc<Formula>) -> Element {
        let bits = formula.truth_table(algebra.atom_count());
        let formula = if formula.size() > COMPACT_THRESHOLD {
            Arc::new(Formula::dnf_of_mask(bits))
        } else {
            formula
        };
        Element {
            algebra,
            bits,
            formula: Some(formula),
        }
    }

    pub(crate) fn from_parsed(algebra: &Algebra, formula: Formula) -> Element {
        match algebra.backend() {
            Backend::Bitset => {
                let bits = formula.truth_table(algebra.atom_count());
                algebra.raw(bits)
            }
            Backend::Formula => Element::from_formula(algebra.clone(), Arc::new(formula)),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Subset mask: bit `i` set iff atom `i` belongs to the element.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// The formula carried by formula-backend elements.
    pub fn formula(&self) -> Option<&Formula> {
        self.formula.as_deref()
    }

    pub fn is_bottom(&self) -> bool {
        self.bits == 0
    }

    pub fn is_top(&self) -> bool {
        self.bits == self.algebra.full_mask()
    }

    pub fn same_algebra(&self, other: &Element) -> Result<(), AlgebraError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::MixedAlgebra)
        }
    }

    pub fn meet(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.same_algebra(other)?;
        Ok(self.and(other))
    }

    pub fn join(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.same_algebra(other)?;
        Ok(self.or(other))
    }

    pub fn complement(&self) -> Element {
        self.not()
    }

    /// `!self | other`.
    pub fn implies(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.same_algebra(other)?;
        Ok(self.imp(other))
    }

    /// Subset inclusion.
    pub fn leq(&self, other: &Element) -> Result<bool, AlgebraError> {
        self.same_algebra(other)?;
        Ok(self.le(other))
    }

    // Unchecked operations; callers have already established a shared algebra.

    pub(crate) fn and(&self, other: &Element) -> Element {
        match (&self.formula, &other.formula) {
            (Some(l), Some(r)) => Element::from_formula(
                self.algebra.clone(),
                Arc::new(Formula::And(l.clone(), r.clone())),
            ),
            _ => self.algebra.raw(self.bits & other.bits),
        }
    }

    pub(crate) fn or(&self, other: &Element) -> Element {
        match (&self.formula, &other.formula) {
            (Some(l), Some(r)) => Element::from_formula(
                self.algebra.clone(),
                Arc::new(Formula::Or(l.clone(), r.clone())),
            ),
            _ => self.algebra.raw(self.bits | other.bits),
        }
    }

    pub(crate) fn not(&self) -> Element {
        match &self.formula {
            Some(inner) => {
                Element::from_formula(self.algebra.clone(), Arc::new(Formula::Not(inner.clone())))
            }
            None => self.algebra.raw(!self.bits & self.algebra.full_mask()),
        }
    }

    pub(crate) fn imp(&self, other: &Element) -> Element {
        match (&self.formula, &other.formula) {
            (Some(l), Some(r)) => Element::from_formula(
                self.algebra.clone(),
                Arc::new(Formula::Implies(l.clone(), r.clone())),
            ),
            _ => self
                .algebra
                .raw((!self.bits | other.bits) & self.algebra.full_mask()),
        }
    }

    pub(crate) fn le(&self, other: &Element) -> bool {
        self.bits & !other.bits == 0
    }

    /// The atoms of the algebra below this element, as singleton masks in atom order.
    pub fn minterms(&self) -> Vec<u64> {
        (0..self.algebra.atom_count())
            .map(|i| 1u64 << i)
            .filter(|m| self.bits & m != 0)
            .collect()
    }

    /// Sorted-minterm DNF rendering, e.g. `x | z` or `false`.
    pub fn to_dnf(&self) -> String {
        self.algebra.render_mask(self.bits)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.algebra == other.algebra
    }
}

impl Eq for Element {}

impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_dnf())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dnf())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Algebra {
        Algebra::bitset(&["x", "y"]).unwrap()
    }

    // Subset model used as the reference for every law below.
    fn subset(mask: u64, n: usize) -> Vec<bool> {
        (0..n).map(|i| mask & (1 << i) != 0).collect()
    }

    #[test]
    fn meet_examples() {
        let alg = xy();
        let x = alg.atom("x").unwrap();
        let y = alg.atom("y").unwrap();
        let xy = x.join(&y).unwrap();
        assert_eq!(x.meet(&xy).unwrap(), x);
        assert!(x.meet(&y).unwrap().is_bottom());
    }

    #[test]
    fn top_meet_is_identity_on_four_atoms() {
        let alg = Algebra::numbered(4, Backend::Bitset).unwrap();
        let top = alg.top();
        for v in alg.elements() {
            let inter: Vec<bool> = subset(top.bits(), 4)
                .iter()
                .zip(subset(v.bits(), 4))
                .map(|(a, b)| *a && b)
                .collect();
            assert_eq!(inter, subset(v.bits(), 4));
            assert_eq!(top.meet(&v).unwrap(), v);
        }
    }

    #[test]
    fn implies_examples() {
        let alg = xy();
        for v in alg.elements() {
            assert!(alg.bottom().implies(&v).unwrap().is_top());
            assert_eq!(v.complement().complement(), v);
        }
        let x = alg.atom("x").unwrap();
        let y = alg.atom("y").unwrap();
        assert_eq!(x.implies(&y).unwrap(), y);
    }

    #[test]
    fn leq_matches_subset_on_four_atoms() {
        let alg = Algebra::numbered(4, Backend::Bitset).unwrap();
        let mut pairs = 0;
        for u in alg.elements() {
            for v in alg.elements() {
                let su = subset(u.bits(), 4);
                let sv = subset(v.bits(), 4);
                let expected = su.iter().zip(&sv).all(|(a, b)| !a || *b);
                assert_eq!(u.leq(&v).unwrap(), expected);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 256);
        let x = xy().atom("x").unwrap();
        let y = xy().atom("y").unwrap();
        assert!(!x.leq(&y).unwrap());
        assert!(xy().bottom().leq(&x).unwrap());
    }

    #[test]
    fn mixed_algebra_is_rejected() {
        let a = Algebra::bitset(&["x"]).unwrap();
        let b = Algebra::bitset(&["y"]).unwrap();
        assert_eq!(
            a.top().meet(&b.top()).unwrap_err(),
            AlgebraError::MixedAlgebra
        );
        let c = a.with_backend(Backend::Formula);
        assert_eq!(a.top().join(&c.top()), Err(AlgebraError::MixedAlgebra));
        // structurally identical algebras are the same algebra
        let a2 = Algebra::bitset(&["x"]).unwrap();
        assert!(a.top().leq(&a2.top()).unwrap());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Algebra::bitset::<&str>(&[]).unwrap_err(),
            AlgebraError::NoAtoms
        );
        assert_eq!(
            Algebra::bitset(&["x", "x"]).unwrap_err(),
            AlgebraError::DuplicateAtom("x".into())
        );
        assert!(matches!(
            Algebra::bitset(&["1x"]),
            Err(AlgebraError::InvalidAtomName(_))
        ));
        assert!(matches!(
            Algebra::numbered(17, Backend::Bitset),
            Err(AlgebraError::TooManyAtoms { count: 17, cap: 16 })
        ));
        assert!(Algebra::with_cap((0..20).map(|i| format!("a{i}")), Backend::Bitset, 20).is_ok());
        assert!(matches!(
            xy().element(4),
            Err(AlgebraError::OutOfRange { .. })
        ));
    }

    #[test]
    fn boolean_axioms_hold_up_to_four_atoms() {
        for n in 1..=4 {
            for backend in [Backend::Bitset, Backend::Formula] {
                let alg = Algebra::numbered(n, backend).unwrap();
                let els: Vec<Element> = alg.elements().collect();
                for x in &els {
                    assert_eq!(x.and(&x.not()), alg.bottom());
                    assert_eq!(x.or(&x.not()), alg.top());
                    for y in &els {
                        assert_eq!(x.and(y).not(), x.not().or(&y.not()));
                        assert_eq!(x.or(y).not(), x.not().and(&y.not()));
                        assert_eq!(x.and(&x.or(y)), *x);
                        assert_eq!(x.imp(y), x.not().or(y));
                        if n <= 3 {
                            for z in &els {
                                assert_eq!(x.and(&y.or(z)), x.and(y).or(&x.and(z)));
                                assert_eq!(x.or(&y.and(z)), x.or(y).and(&x.or(z)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn backends_agree_exhaustively() {
        for n in 1..=3 {
            let bits = Algebra::numbered(n, Backend::Bitset).unwrap();
            let form = bits.with_backend(Backend::Formula);
            for u in 0..bits.carrier_size() {
                for v in 0..bits.carrier_size() {
                    let (bu, bv) = (bits.element_of(u), bits.element_of(v));
                    let (fu, fv) = (form.element_of(u), form.element_of(v));
                    assert_eq!(bu.and(&bv).bits(), fu.and(&fv).bits());
                    assert_eq!(bu.or(&bv).bits(), fu.or(&fv).bits());
                    assert_eq!(bu.imp(&bv).bits(), fu.imp(&fv).bits());
                    assert_eq!(bu.not().bits(), fu.not().bits());
                    assert_eq!(bu.le(&bv), fu.le(&fv));
                    assert!(fu.and(&fv).formula().is_some());
                }
            }
        }
    }

    #[test]
    fn formula_elements_compact_without_changing_meaning() {
        let alg = Algebra::formula(&["x", "y", "z"]).unwrap();
        let x = alg.atom("x").unwrap();
        let y = alg.atom("y").unwrap();
        let mut acc = x.clone();
        for _ in 0..40 {
            acc = acc.imp(&y).or(&x).and(&acc.not().not());
        }
        assert!(acc.formula().unwrap().size() <= COMPACT_THRESHOLD * 3);
        assert_eq!(acc.bits(), x.bits());
    }

    #[test]
    fn rendering_is_sorted_dnf() {
        let alg = Algebra::bitset(&["x", "y", "z"]).unwrap();
        assert_eq!(alg.element(0b101).unwrap().to_dnf(), "x | z");
        assert_eq!(alg.bottom().to_dnf(), "false");
        assert_eq!(alg.element(0b101).unwrap().minterms(), vec![1, 4]);
    }
}
