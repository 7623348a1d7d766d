//! Monoid and semiring structure of contract algebras.
//!
//! The four contract monoids are `(C, ∧, 1)`, `(C, ∨, 0)`, `(C, ∥, e)` and
//! `(C, •, e)`. Law checks are generic over the [`Monoid`] and [`Semiring`]
//! traits so that the Boolean monoids and semirings of the underlying algebra
//! and the product monoid `M_∧ × M_∧` are checked by the same code.

use std::fmt;

use thiserror::Error;

use crate::boolalg::{Algebra, Element, MapError};
use crate::contract::{Contract, ContractOp};
use crate::quantify::{apply, Domain};
use crate::report::{LawCheck, LawResult, Status, SuiteReport, Witness};

pub mod distributivity;
mod isomorphism;
mod maps;
mod theorem;

pub use distributivity::{
    distributivity_cells, semi_distributivity_suite, DistributivityCell, DISTRIBUTIVE_OPS,
};
pub use isomorphism::{no_isomorphism_suite, semiring_homs_between, ContractTable};
pub use maps::*;
pub use theorem::{
    assemble_morphism, converse_suite, parallel_morphisms, random_quadruple, structure_theorem_suite,
    MorphismQuadruple, QUADRUPLE_SEED,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{0} is not one of conj, disj, compose, merge")]
    NotAMonoidOperation(ContractOp),
    #[error("quadruple component {component} is not a meet morphism: {source}")]
    InvalidQuadruple {
        component: &'static str,
        #[source]
        source: MapError,
    },
    #[error("quadruple component {component} has the wrong source or target algebra")]
    MismatchedQuadruple { component: &'static str },
    #[error("identity contract belongs to a different algebra")]
    ForeignIdentity,
}

fn is_lattice_or_monoid_op(op: ContractOp) -> bool {
    matches!(
        op,
        ContractOp::Conj | ContractOp::Disj | ContractOp::Compose | ContractOp::Merge
    )
}

fn short_name(c: &Contract) -> String {
    let alg = c.algebra();
    if *c == Contract::one(alg) {
        "1".into()
    } else if *c == Contract::zero(alg) {
        "0".into()
    } else if *c == Contract::identity(alg) {
        "e".into()
    } else {
        format!("{c:?}")
    }
}

/// Identity element of `op` among the distinguished contracts.
pub fn identity_of(op: ContractOp, algebra: &Algebra) -> Result<Contract, StructureError> {
    match op {
        ContractOp::Conj => Ok(Contract::one(algebra)),
        ContractOp::Disj => Ok(Contract::zero(algebra)),
        ContractOp::Compose | ContractOp::Merge => Ok(Contract::identity(algebra)),
        other => Err(StructureError::NotAMonoidOperation(other)),
    }
}

/// A carrier with an associative operation and a unit.
pub trait Monoid {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn name(&self) -> String;
    fn carrier(&self, domain: &Domain) -> Vec<Self::Elem>;
    fn op(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
}

/// A carrier with multiplication, addition, one and zero.
pub trait Semiring {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn name(&self) -> String;
    fn carrier(&self, domain: &Domain) -> Vec<Self::Elem>;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
}

impl BoolOp {
    fn eval(self, x: &Element, y: &Element) -> Element {
        match self {
            BoolOp::And => x.meet(y),
            BoolOp::Or => x.join(y),
        }
        .expect("one algebra")
    }

    fn unit(self, algebra: &Algebra) -> Element {
        match self {
            BoolOp::And => algebra.top(),
            BoolOp::Or => algebra.bottom(),
        }
    }

    fn dual(self) -> BoolOp {
        match self {
            BoolOp::And => BoolOp::Or,
            BoolOp::Or => BoolOp::And,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BoolOp::And => "∧",
            BoolOp::Or => "∨",
        }
    }
}

/// `M_∧ = (B, ∧, ⊤)` or `M_∨ = (B, ∨, ⊥)`.
#[derive(Debug, Clone)]
pub struct BoolMonoid {
    pub op: BoolOp,
    pub algebra: Algebra,
}

impl BoolMonoid {
    pub fn meet(algebra: &Algebra) -> Self {
        BoolMonoid { op: BoolOp::And, algebra: algebra.clone() }
    }

    pub fn join(algebra: &Algebra) -> Self {
        BoolMonoid { op: BoolOp::Or, algebra: algebra.clone() }
    }
}

impl Monoid for BoolMonoid {
    type Elem = Element;

    fn name(&self) -> String {
        format!("M_{}", self.op.symbol())
    }

    fn carrier(&self, domain: &Domain) -> Vec<Element> {
        domain.elements().to_vec()
    }

    fn op(&self, x: &Element, y: &Element) -> Element {
        self.op.eval(x, y)
    }

    fn unit(&self) -> Element {
        self.op.unit(&self.algebra)
    }
}

/// `M_∧ × M_∧`, the domain of the pairing map and codomain of the splitting map.
#[derive(Debug, Clone)]
pub struct PairMonoid {
    pub algebra: Algebra,
}

impl Monoid for PairMonoid {
    type Elem = (Element, Element);

    fn name(&self) -> String {
        "M_∧ × M_∧".into()
    }

    fn carrier(&self, domain: &Domain) -> Vec<(Element, Element)> {
        let es = domain.elements();
        es.iter()
            .flat_map(|x| es.iter().map(move |y| (x.clone(), y.clone())))
            .collect()
    }

    fn op(&self, x: &(Element, Element), y: &(Element, Element)) -> (Element, Element) {
        (BoolOp::And.eval(&x.0, &y.0), BoolOp::And.eval(&x.1, &y.1))
    }

    fn unit(&self) -> (Element, Element) {
        (self.algebra.top(), self.algebra.top())
    }
}

/// A contract monoid: one of the four operations with its identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidSpec {
    op: ContractOp,
    identity: Contract,
}

impl MonoidSpec {
    pub fn new(op: ContractOp, identity: Contract) -> Result<Self, StructureError> {
        if !is_lattice_or_monoid_op(op) {
            return Err(StructureError::NotAMonoidOperation(op));
        }
        Ok(MonoidSpec { op, identity })
    }

    /// The operation paired with its identity among `1`, `0`, `e`.
    pub fn standard(op: ContractOp, algebra: &Algebra) -> Result<Self, StructureError> {
        Self::new(op, identity_of(op, algebra)?)
    }

    pub fn all_standard(algebra: &Algebra) -> [MonoidSpec; 4] {
        [ContractOp::Conj, ContractOp::Disj, ContractOp::Compose, ContractOp::Merge]
            .map(|op| Self::standard(op, algebra).expect("monoid operation"))
    }

    pub fn op(&self) -> ContractOp {
        self.op
    }

    pub fn identity(&self) -> &Contract {
        &self.identity
    }
}

impl Monoid for MonoidSpec {
    type Elem = Contract;

    fn name(&self) -> String {
        format!("C^M_{}", self.op.symbol())
    }

    fn carrier(&self, domain: &Domain) -> Vec<Contract> {
        domain.contracts().to_vec()
    }

    fn op(&self, x: &Contract, y: &Contract) -> Contract {
        apply(self.op, x, y)
    }

    fn unit(&self) -> Contract {
        self.identity.clone()
    }
}

/// `S_∧ = (B, ∧, ∨, ⊤, ⊥)` or `S_∨ = (B, ∨, ∧, ⊥, ⊤)`.
#[derive(Debug, Clone)]
pub struct BoolSemiring {
    pub mult: BoolOp,
    pub algebra: Algebra,
}

impl BoolSemiring {
    pub fn meet(algebra: &Algebra) -> Self {
        BoolSemiring { mult: BoolOp::And, algebra: algebra.clone() }
    }

    pub fn join(algebra: &Algebra) -> Self {
        BoolSemiring { mult: BoolOp::Or, algebra: algebra.clone() }
    }
}

impl Semiring for BoolSemiring {
    type Elem = Element;

    fn name(&self) -> String {
        format!("S_{}", self.mult.symbol())
    }

    fn carrier(&self, domain: &Domain) -> Vec<Element> {
        domain.elements().to_vec()
    }

    fn mul(&self, x: &Element, y: &Element) -> Element {
        self.mult.eval(x, y)
    }

    fn add(&self, x: &Element, y: &Element) -> Element {
        self.mult.dual().eval(x, y)
    }

    fn one(&self) -> Element {
        self.mult.unit(&self.algebra)
    }

    fn zero(&self) -> Element {
        self.mult.dual().unit(&self.algebra)
    }
}

/// A candidate contract semiring `(C, mult, add, one, zero)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiringSpec {
    mult: ContractOp,
    add: ContractOp,
    one: Contract,
    zero: Contract,
}

impl SemiringSpec {
    pub fn new(mult: ContractOp, add: ContractOp, one: Contract, zero: Contract) -> Result<Self, StructureError> {
        for op in [mult, add] {
            if !is_lattice_or_monoid_op(op) {
                return Err(StructureError::NotAMonoidOperation(op));
            }
        }
        if one.algebra() != zero.algebra() {
            return Err(StructureError::ForeignIdentity);
        }
        Ok(SemiringSpec { mult, add, one, zero })
    }

    /// `one` is the identity of `mult` and `zero` the identity of `add`.
    pub fn standard(mult: ContractOp, add: ContractOp, algebra: &Algebra) -> Result<Self, StructureError> {
        Self::new(mult, add, identity_of(mult, algebra)?, identity_of(add, algebra)?)
    }

    pub fn conjunction(algebra: &Algebra) -> Self {
        Self::standard(ContractOp::Conj, ContractOp::Disj, algebra).expect("standard")
    }

    pub fn disjunction(algebra: &Algebra) -> Self {
        Self::standard(ContractOp::Disj, ContractOp::Conj, algebra).expect("standard")
    }

    pub fn composition(algebra: &Algebra) -> Self {
        Self::standard(ContractOp::Compose, ContractOp::Disj, algebra).expect("standard")
    }

    pub fn merging(algebra: &Algebra) -> Self {
        Self::standard(ContractOp::Merge, ContractOp::Conj, algebra).expect("standard")
    }

    pub fn mult(&self) -> ContractOp {
        self.mult
    }

    pub fn add_op(&self) -> ContractOp {
        self.add
    }

    /// `(∥, ∨, e, 0)` style label.
    pub fn label(&self) -> String {
        format!(
            "({}, {}, {}, {})",
            self.mult.symbol(),
            self.add.symbol(),
            short_name(&self.one),
            short_name(&self.zero)
        )
    }
}

impl Semiring for SemiringSpec {
    type Elem = Contract;

    fn name(&self) -> String {
        let alg = self.one.algebra();
        let standard = [
            Self::conjunction(alg),
            Self::disjunction(alg),
            Self::composition(alg),
            Self::merging(alg),
        ];
        if standard.contains(self) {
            format!("C^S_{}", self.mult.symbol())
        } else {
            self.label()
        }
    }

    fn carrier(&self, domain: &Domain) -> Vec<Contract> {
        domain.contracts().to_vec()
    }

    fn mul(&self, x: &Contract, y: &Contract) -> Contract {
        apply(self.mult, x, y)
    }

    fn add(&self, x: &Contract, y: &Contract) -> Contract {
        apply(self.add, x, y)
    }

    fn one(&self) -> Contract {
        self.one.clone()
    }

    fn zero(&self) -> Contract {
        self.zero.clone()
    }
}

fn show<T: fmt::Debug>(x: &T) -> String {
    format!("{x:?}")
}

fn law_unit<E: Clone + PartialEq + fmt::Debug>(
    name: String,
    carrier: &[E],
    domain: &Domain,
    unit: &E,
    op: impl Fn(&E, &E) -> E,
) -> LawResult {
    let mut check = LawCheck::new(name);
    domain.each_index(&[carrier.len()], |i| {
        let x = &carrier[i[0]];
        let holds = op(x, unit) == *x && op(unit, x) == *x;
        check.record(holds, || Witness::new().with("x", show(x)).with("unit", show(unit)));
    });
    check.finish(Status::Pass)
}

fn law_assoc<E: Clone + PartialEq + fmt::Debug>(
    name: String,
    carrier: &[E],
    domain: &Domain,
    op: impl Fn(&E, &E) -> E,
) -> LawResult {
    let mut check = LawCheck::new(name);
    let n = carrier.len();
    domain.each_index(&[n, n, n], |i| {
        let (x, y, z) = (&carrier[i[0]], &carrier[i[1]], &carrier[i[2]]);
        let holds = op(&op(x, y), z) == op(x, &op(y, z));
        check.record(holds, || Witness::new().with("x", show(x)).with("y", show(y)).with("z", show(z)));
    });
    check.finish(Status::Pass)
}

fn law_comm<E: Clone + PartialEq + fmt::Debug>(
    name: String,
    carrier: &[E],
    domain: &Domain,
    op: impl Fn(&E, &E) -> E,
) -> LawResult {
    let mut check = LawCheck::new(name);
    let n = carrier.len();
    domain.each_index(&[n, n], |i| {
        let (x, y) = (&carrier[i[0]], &carrier[i[1]]);
        check.record(op(x, y) == op(y, x), || Witness::new().with("x", show(x)).with("y", show(y)));
    });
    check.finish(Status::Pass)
}

/// Monoid axioms plus the commutativity and idempotence every contract
/// monoid enjoys.
pub fn check_monoid_laws<M: Monoid>(monoid: &M, domain: &Domain) -> SuiteReport {
    let name = monoid.name();
    let carrier = monoid.carrier(domain);
    let unit = monoid.unit();
    let op = |x: &M::Elem, y: &M::Elem| monoid.op(x, y);
    let mut report = SuiteReport::new(format!("monoid {name}"), domain.algebra().atom_count());
    report.push(law_unit(format!("{name}: identity"), &carrier, domain, &unit, op));
    report.push(law_assoc(format!("{name}: associativity"), &carrier, domain, op));
    report.push(law_comm(format!("{name}: commutativity"), &carrier, domain, op));
    let mut idem = LawCheck::new(format!("{name}: idempotence"));
    domain.each_index(&[carrier.len()], |i| {
        let x = &carrier[i[0]];
        idem.record(op(x, x) == *x, || Witness::new().with("x", show(x)));
    });
    report.push(idem.finish(Status::Pass));
    report
}

pub fn check_monoid(spec: &MonoidSpec, domain: &Domain) -> SuiteReport {
    check_monoid_laws(spec, domain)
}

/// Axioms (a) to (e) of a semiring, each as its own law.
pub fn check_semiring_laws<S: Semiring>(s: &S, domain: &Domain) -> SuiteReport {
    let name = s.name();
    let carrier = s.carrier(domain);
    let (one, zero) = (s.one(), s.zero());
    let mul = |x: &S::Elem, y: &S::Elem| s.mul(x, y);
    let add = |x: &S::Elem, y: &S::Elem| s.add(x, y);
    let n = carrier.len();
    let mut report = SuiteReport::new(format!("semiring {name}"), domain.algebra().atom_count());

    report.push(law_unit(format!("{name}: (a) additive identity"), &carrier, domain, &zero, add));
    report.push(law_assoc(format!("{name}: (a) additive associativity"), &carrier, domain, add));
    report.push(law_comm(format!("{name}: (a) additive commutativity"), &carrier, domain, add));
    report.push(law_unit(format!("{name}: (b) multiplicative identity"), &carrier, domain, &one, mul));
    report.push(law_assoc(format!("{name}: (b) multiplicative associativity"), &carrier, domain, mul));

    let mut left = LawCheck::new(format!("{name}: (c) left distributivity"));
    let mut right = LawCheck::new(format!("{name}: (c) right distributivity"));
    domain.each_index(&[n, n, n], |i| {
        let (r, x, y) = (&carrier[i[0]], &carrier[i[1]], &carrier[i[2]]);
        let w = || Witness::new().with("r", show(r)).with("s", show(x)).with("t", show(y));
        left.record(mul(r, &add(x, y)) == add(&mul(r, x), &mul(r, y)), w);
        right.record(mul(&add(x, y), r) == add(&mul(x, r), &mul(y, r)), w);
    });
    report.push(left.finish(Status::Pass));
    report.push(right.finish(Status::Pass));

    let mut annihilates = LawCheck::new(format!("{name}: (d) zero annihilates"));
    domain.each_index(&[n], |i| {
        let r = &carrier[i[0]];
        let holds = mul(r, &zero) == zero && mul(&zero, r) == zero;
        annihilates.record(holds, || Witness::new().with("r", show(r)).with("zero", show(&zero)));
    });
    report.push(annihilates.finish(Status::Pass));

    let mut distinct = LawCheck::new(format!("{name}: (e) zero differs from one"));
    distinct.record(zero != one, || Witness::new().with("zero", show(&zero)).with("one", show(&one)));
    report.push(distinct.finish(Status::Pass));
    report
}

pub fn check_semiring(spec: &SemiringSpec, domain: &Domain) -> SuiteReport {
    check_semiring_laws(spec, domain)
}

/// The twelve ordered pairs of distinct operations from `∧, ∨, ∥, •`, each
/// with the identity of its multiplication as one and of its addition as zero.
pub fn semiring_candidates(algebra: &Algebra) -> Vec<SemiringSpec> {
    let ops = [ContractOp::Conj, ContractOp::Disj, ContractOp::Compose, ContractOp::Merge];
    let mut out = Vec::new();
    for mult in ops {
        for add in ops {
            if mult != add {
                out.push(SemiringSpec::standard(mult, add, algebra).expect("monoid operations"));
            }
        }
    }
    out
}

/// Whether a candidate is one of the four contract semirings.
pub fn is_known_semiring(spec: &SemiringSpec) -> bool {
    matches!(
        (spec.mult, spec.add),
        (ContractOp::Conj, ContractOp::Disj)
            | (ContractOp::Disj, ContractOp::Conj)
            | (ContractOp::Compose, ContractOp::Disj)
            | (ContractOp::Merge, ContractOp::Conj)
    )
}

/// One law per candidate: it passes when every axiom holds. The witness of a
/// failing candidate names its first failing axiom.
pub fn semiring_census(domain: &Domain) -> SuiteReport {
    let mut report = SuiteReport::new("semiring census", domain.algebra().atom_count());
    for spec in semiring_candidates(domain.algebra()) {
        let axioms = check_semiring(&spec, domain);
        let mut check = LawCheck::new(format!("semiring {}", spec.label()));
        let instances: u64 = axioms.laws.iter().map(|l| l.instances).sum();
        match axioms.failed().next() {
            Some(first) => {
                let mut w = Witness::new().with("axiom", first.law.clone());
                if let Some(inner) = &first.witness {
                    for (k, v) in inner.entries() {
                        w = w.with(k, v.clone());
                    }
                }
                check.fail_with(w);
            }
            None => check.record(true, Witness::new),
        }
        let expected = if is_known_semiring(&spec) { Status::Pass } else { Status::Fail };
        let mut law = check.finish(expected);
        law.instances = instances;
        report.push(law);
    }
    report
}

/// Monoid homomorphism laws for `f: source -> target`.
pub fn check_monoid_hom<S: Monoid, T: Monoid>(
    map: &str,
    source: &S,
    target: &T,
    domain: &Domain,
    f: impl Fn(&S::Elem) -> T::Elem,
) -> Vec<LawResult> {
    let label = format!("{map}: {} → {}", source.name(), target.name());
    let carrier = source.carrier(domain);
    let mut unit = LawCheck::new(format!("{label} preserves the unit"));
    let image = f(&source.unit());
    unit.record(image == target.unit(), || Witness::new().with("image", show(&image)));
    let mut op = LawCheck::new(format!("{label} preserves the operation"));
    let n = carrier.len();
    domain.each_index(&[n, n], |i| {
        let (x, y) = (&carrier[i[0]], &carrier[i[1]]);
        let holds = f(&source.op(x, y)) == target.op(&f(x), &f(y));
        op.record(holds, || Witness::new().with("x", show(x)).with("y", show(y)));
    });
    vec![unit.finish(Status::Pass), op.finish(Status::Pass)]
}

/// Semiring homomorphism laws (a) to (d) for `f: source -> target`.
pub fn check_semiring_hom<S: Semiring, T: Semiring>(
    map: &str,
    source: &S,
    target: &T,
    domain: &Domain,
    f: impl Fn(&S::Elem) -> T::Elem,
) -> Vec<LawResult> {
    let label = format!("{map}: {} → {}", source.name(), target.name());
    let carrier = source.carrier(domain);
    let n = carrier.len();
    let mut zero = LawCheck::new(format!("{label} (a) zero"));
    let z = f(&source.zero());
    zero.record(z == target.zero(), || Witness::new().with("image", show(&z)));
    let mut one = LawCheck::new(format!("{label} (b) one"));
    let o = f(&source.one());
    one.record(o == target.one(), || Witness::new().with("image", show(&o)));
    let mut add = LawCheck::new(format!("{label} (c) addition"));
    let mut mul = LawCheck::new(format!("{label} (d) multiplication"));
    domain.each_index(&[n, n], |i| {
        let (x, y) = (&carrier[i[0]], &carrier[i[1]]);
        let w = || Witness::new().with("r", show(x)).with("s", show(y));
        add.record(f(&source.add(x, y)) == target.add(&f(x), &f(y)), w);
        mul.record(f(&source.mul(x, y)) == target.mul(&f(x), &f(y)), w);
    });
    vec![
        zero.finish(Status::Pass),
        one.finish(Status::Pass),
        add.finish(Status::Pass),
        mul.finish(Status::Pass),
    ]
}

/// Monoid axioms for the four contract monoids and the two Boolean monoids.
pub fn monoid_suite(domain: &Domain) -> SuiteReport {
    let alg = domain.algebra();
    let mut report = SuiteReport::new("monoids", alg.atom_count());
    for spec in MonoidSpec::all_standard(alg) {
        report.extend(check_monoid(&spec, domain));
    }
    report.extend(check_monoid_laws(&BoolMonoid::meet(alg), domain));
    report.extend(check_monoid_laws(&BoolMonoid::join(alg), domain));
    report
}
