//! Assume-guarantee contracts in canonical form over a finite Boolean algebra.

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::boolalg::{Algebra, AlgebraError, Element};

/// A canonical contract `(a, g)` with `a | g = true`.
///
/// `a` holds the assumptions and `g` the guarantees. [`Contract::new`] repairs
/// any pair by widening the guarantees to `g | !a`, which keeps the same
/// environments and implementations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Contract {
    a: Element,
    g: Element,
}

impl Contract {
    /// Builds the canonical contract `(a, g | !a)`.
    pub fn new(a: Element, g: Element) -> Result<Contract, AlgebraError> {
        a.same_algebra(&g)?;
        let g = g.or(&a.not());
        Ok(Contract { a, g })
    }

    /// Accepts `(a, g)` only if it is already canonical.
    pub fn assert_canonical(a: Element, g: Element) -> Result<Contract, AlgebraError> {
        a.same_algebra(&g)?;
        if !a.or(&g).is_top() {
            return Err(AlgebraError::NotCanonical {
                assume: a.to_dnf(),
                guarantee: g.to_dnf(),
            });
        }
        Ok(Contract { a, g })
    }

    /// Builds a contract from assumption and guarantee masks.
    pub fn from_masks(algebra: &Algebra, a: u64, g: u64) -> Result<Contract, AlgebraError> {
        Contract::assert_canonical(algebra.element(a)?, algebra.element(g)?)
    }

    pub(crate) fn raw(a: Element, g: Element) -> Contract {
        debug_assert!(a.or(&g).is_top(), "non-canonical result");
        Contract { a, g }
    }

    /// `1 = (false, true)`, the top of the refinement order.
    pub fn one(algebra: &Algebra) -> Contract {
        Contract::raw(algebra.bottom(), algebra.top())
    }

    /// `0 = (true, false)`, the bottom of the refinement order.
    pub fn zero(algebra: &Algebra) -> Contract {
        Contract::raw(algebra.top(), algebra.bottom())
    }

    /// `e = (true, true)`, the identity of composition and merging.
    pub fn identity(algebra: &Algebra) -> Contract {
        Contract::raw(algebra.top(), algebra.top())
    }

    pub fn assume(&self) -> &Element {
        &self.a
    }

    pub fn guarantee(&self) -> &Element {
        &self.g
    }

    pub fn algebra(&self) -> &Algebra {
        self.a.algebra()
    }

    pub fn masks(&self) -> (u64, u64) {
        (self.a.bits(), self.g.bits())
    }

    pub fn is_canonical(&self) -> bool {
        self.a.or(&self.g).is_top()
    }

    fn same(&self, other: &Contract) -> Result<(), AlgebraError> {
        self.a.same_algebra(&other.a)
    }

    /// `e` is an environment iff `e <= a`.
    pub fn is_environment(&self, e: &Element) -> Result<bool, AlgebraError> {
        e.leq(&self.a)
    }

    /// `m` is an implementation iff `m <= g`.
    ///
    /// With components composed by meet, the definition "`m & e <= g` for
    /// every environment `e`" reduces to this for canonical contracts; see
    /// [`Contract::is_implementation_by_environments`].
    pub fn is_implementation(&self, m: &Element) -> Result<bool, AlgebraError> {
        m.leq(&self.g)
    }

    /// The defining characterization: `m & e <= g` for every `e <= a`,
    /// checked by enumerating the carrier.
    pub fn is_implementation_by_environments(&self, m: &Element) -> Result<bool, AlgebraError> {
        m.same_algebra(&self.a)?;
        let a = self.a.bits();
        let g = self.g.bits();
        let full = self.algebra().full_mask();
        Ok((0..=full)
            .filter(|e| e & !a == 0)
            .all(|e| (m.bits() & e) & !g == 0))
    }

    /// `self <= other`: `g <= g'` and `a' <= a`.
    pub fn refines(&self, other: &Contract) -> Result<bool, AlgebraError> {
        self.same(other)?;
        Ok(self.g.le(&other.g) && other.a.le(&self.a))
    }

    /// `(g, a)`.
    pub fn reciprocal(&self) -> Contract {
        Contract::raw(self.g.clone(), self.a.clone())
    }

    /// Greatest lower bound: `(a | a', g & g')`.
    pub fn conj(&self, other: &Contract) -> Result<Contract, AlgebraError> {
        self.same(other)?;
        Ok(Contract::raw(self.a.or(&other.a), self.g.and(&other.g)))
    }

    /// Least upper bound: `(a & a', g | g')`.
    pub fn disj(&self, other: &Contract) -> Result<Contract, AlgebraError> {
        self.same(other)?;
        Ok(Contract::raw(self.a.and(&other.a), self.g.or(&other.g)))
    }

    /// `(a & a' | !(g & g'), g & g')`.
    pub fn compose(&self, other: &Contract) -> Result<Contract, AlgebraError> {
        self.same(other)?;
        let g = self.g.and(&other.g);
        let a = self.a.and(&other.a).or(&g.not());
        Ok(Contract::raw(a, g))
    }

    /// `(a & a', g & g' | !(a & a'))`.
    pub fn merge(&self, other: &Contract) -> Result<Contract, AlgebraError> {
        self.same(other)?;
        let a = self.a.and(&other.a);
        let g = self.g.and(&other.g).or(&a.not());
        Ok(Contract::raw(a, g))
    }

    /// `self / other`, the largest `x` with `other || x <= self`:
    /// `(a & g', g & a' | !(a & g'))`.
    pub fn quotient(&self, other: &Contract) -> Result<Contract, AlgebraError> {
        self.same(other)?;
        let a = self.a.and(&other.g);
        let g = self.g.and(&other.a).or(&a.not());
        Ok(Contract::raw(a, g))
    }

    /// `self ÷ other`, the smallest `x` with `self <= other • x`:
    /// `(a & g' | !(g & a'), g & a')`.
    pub fn separate(&self, other: &Contract) -> Result<Contract, AlgebraError> {
        self.same(other)?;
        let g = self.g.and(&other.a);
        let a = self.a.and(&other.g).or(&g.not());
        Ok(Contract::raw(a, g))
    }

    /// `self -> consequent`, the largest `x` with `x ∧ self <= consequent`.
    ///
    /// The receiver is the antecedent. With `self = (a', g')` and
    /// `consequent = (a, g)` the result is `((a & !a') | (g' & !g), g | !g')`.
    pub fn implication(&self, consequent: &Contract) -> Result<Contract, AlgebraError> {
        self.same(consequent)?;
        let (a1, g1) = (&self.a, &self.g);
        let (a, g) = (&consequent.a, &consequent.g);
        let assume = a.and(&a1.not()).or(&g1.and(&g.not()));
        let guarantee = g.or(&g1.not());
        Ok(Contract::raw(assume, guarantee))
    }

    /// `self ↛ consequent`, the smallest `x` with `x ∨ self >= consequent`.
    ///
    /// The receiver is the antecedent. With `self = (a', g')` and
    /// `consequent = (a, g)` the result is `(a | !a', (g & !g') | (a' & !a))`.
    pub fn coimplication(&self, consequent: &Contract) -> Result<Contract, AlgebraError> {
        self.same(consequent)?;
        let (a1, g1) = (&self.a, &self.g);
        let (a, g) = (&consequent.a, &consequent.g);
        let assume = a.or(&a1.not());
        let guarantee = g.and(&g1.not()).or(&a1.and(&a.not()));
        Ok(Contract::raw(assume, guarantee))
    }

    /// Canonical text form, `contract(assume = <dnf>, guarantee = <dnf>)`.
    pub fn render(&self) -> String {
        format!(
            "contract(assume = {}, guarantee = {})",
            self.a.to_dnf(),
            self.g.to_dnf()
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("contracts serialize")
    }
}

impl fmt::Display for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{{}}}, {{{}}})", self.a.to_dnf(), self.g.to_dnf())
    }
}

impl Serialize for Contract {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Contract", 2)?;
        s.serialize_field("assume", &self.a.minterms())?;
        s.serialize_field("guarantee", &self.g.minterms())?;
        s.end()
    }
}

/// The eight binary operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContractOp {
    Conj,
    Disj,
    Compose,
    Merge,
    Quotient,
    Separate,
    Implication,
    Coimplication,
}

impl ContractOp {
    pub const ALL: [ContractOp; 8] = [
        ContractOp::Conj,
        ContractOp::Disj,
        ContractOp::Compose,
        ContractOp::Merge,
        ContractOp::Quotient,
        ContractOp::Separate,
        ContractOp::Implication,
        ContractOp::Coimplication,
    ];

    /// For `Implication` and `Coimplication`, `lhs` is the antecedent.
    pub fn apply(self, lhs: &Contract, rhs: &Contract) -> Result<Contract, AlgebraError> {
        match self {
            ContractOp::Conj => lhs.conj(rhs),
            ContractOp::Disj => lhs.disj(rhs),
            ContractOp::Compose => lhs.compose(rhs),
            ContractOp::Merge => lhs.merge(rhs),
            ContractOp::Quotient => lhs.quotient(rhs),
            ContractOp::Separate => lhs.separate(rhs),
            ContractOp::Implication => lhs.implication(rhs),
            ContractOp::Coimplication => lhs.coimplication(rhs),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ContractOp::Conj => "∧",
            ContractOp::Disj => "∨",
            ContractOp::Compose => "∥",
            ContractOp::Merge => "•",
            ContractOp::Quotient => "/",
            ContractOp::Separate => "÷",
            ContractOp::Implication => "→",
            ContractOp::Coimplication => "↛",
        }
    }

    /// Operation name in the specification language.
    pub fn surface_name(self) -> &'static str {
        match self {
            ContractOp::Conj => "conj",
            ContractOp::Disj => "disj",
            ContractOp::Compose => "compose",
            ContractOp::Merge => "merge",
            ContractOp::Quotient => "quotient",
            ContractOp::Separate => "separate",
            ContractOp::Implication => "implies_c",
            ContractOp::Coimplication => "coimplies_c",
        }
    }

    pub fn from_surface_name(name: &str) -> Option<ContractOp> {
        ContractOp::ALL.into_iter().find(|op| op.surface_name() == name)
    }
}

impl fmt::Display for ContractOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Every canonical contract over `algebra`, ordered by `(a, g)` masks.
/// Exponential in the atom count: `3^n` contracts.
pub fn all_contracts(algebra: &Algebra) -> Vec<Contract> {
    let full = algebra.full_mask();
    let mut out = Vec::new();
    for a in 0..=full {
        let free = !a & full;
        // g ranges over supersets of !a
        let rest = a;
        let mut sub = rest;
        let mut gs = Vec::new();
        loop {
            gs.push(free | sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        gs.sort_unstable();
        for g in gs {
            out.push(Contract::raw(algebra.element_of(a), algebra.element_of(g)));
        }
    }
    out
}
