//! Maps between contract algebras induced by maps between Boolean algebras,
//! and the Galois-connection checks relating them.

use std::fmt;

use thiserror::Error;

use crate::boolalg::{Algebra, AlgebraError, AlgebraHom, MapError, MonotoneMap, Tabulation};
use crate::contract::{Contract, ContractOp};
use crate::quantify::{refines, Domain, DEFAULT_SEED};
use crate::report::{LawCheck, Status, SuiteReport, Witness};
use crate::structures::MorphismQuadruple;

/// Source algebras up to this size have their contract maps checked for
/// monotonicity at construction.
pub const MONOTONE_CHECK_ATOMS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbstractionError {
    #[error("cannot lift a map that is not {flag}: {source}")]
    InvalidAbstraction {
        flag: &'static str,
        #[source]
        source: MapError,
    },
    #[error("lifted map is not monotone: {lower:?} ≤ {upper:?} but their images are not ordered")]
    NotMonotone { lower: Contract, upper: Contract },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// `(a, g) ↦ (α a, α g)` for a monotone, join- and top-preserving `α`.
    LiftedMonotone(MonotoneMap),
    /// `(a, g) ↦ (f a, f g)` for a Boolean algebra homomorphism `f`.
    InducedHom(AlgebraHom),
    /// A composition-monoid morphism assembled from four meet morphisms.
    Assembled(MorphismQuadruple),
    /// `(a, g) ↦ (t a, t g ∨ ¬t a)` for a monotone `t`, canonicalized.
    Pointwise(MonotoneMap),
}

#[derive(Clone, PartialEq, Eq)]
pub struct ContractMap {
    source: Algebra,
    target: Algebra,
    provenance: Provenance,
    monotone: Option<bool>,
}

impl fmt::Debug for ContractMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.provenance {
            Provenance::LiftedMonotone(_) => "lifted",
            Provenance::InducedHom(_) => "induced",
            Provenance::Assembled(_) => "assembled",
            Provenance::Pointwise(_) => "pointwise",
        };
        write!(f, "ContractMap({kind}, {:?} -> {:?})", self.source, self.target)
    }
}

impl ContractMap {
    fn build(source: &Algebra, target: &Algebra, provenance: Provenance) -> ContractMap {
        let mut map = ContractMap {
            source: source.clone(),
            target: target.clone(),
            provenance,
            monotone: None,
        };
        if source.atom_count() <= MONOTONE_CHECK_ATOMS {
            map.monotone = Some(map.monotonicity_violation().is_none());
        }
        map
    }

    fn require_monotone(self) -> Result<ContractMap, AbstractionError> {
        match self.monotonicity_violation() {
            Some((lower, upper)) if self.source.atom_count() <= MONOTONE_CHECK_ATOMS => {
                Err(AbstractionError::NotMonotone { lower, upper })
            }
            _ => Ok(self),
        }
    }

    pub fn assembled(quadruple: MorphismQuadruple) -> ContractMap {
        let (s, t) = (quadruple.source().clone(), quadruple.target().clone());
        Self::build(&s, &t, Provenance::Assembled(quadruple))
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Refinement-monotonicity found at construction; `None` when the source
    /// was too large to check.
    pub fn is_monotone(&self) -> Option<bool> {
        self.monotone
    }

    pub fn apply_masks(&self, a: u64, g: u64) -> (u64, u64) {
        let full = self.target.full_mask();
        match &self.provenance {
            Provenance::LiftedMonotone(m) => (m.tabulation().apply_mask(a), m.tabulation().apply_mask(g)),
            Provenance::InducedHom(h) => (h.tabulation().apply_mask(a), h.tabulation().apply_mask(g)),
            Provenance::Assembled(q) => q.apply_masks(a, g),
            Provenance::Pointwise(m) => {
                let (ta, tg) = (m.tabulation().apply_mask(a), m.tabulation().apply_mask(g));
                (ta, (tg | !ta) & full)
            }
        }
    }

    pub fn apply(&self, c: &Contract) -> Result<Contract, AlgebraError> {
        if *c.algebra() != self.source {
            return Err(AlgebraError::MixedAlgebra);
        }
        let (a, g) = c.masks();
        let (a, g) = self.apply_masks(a, g);
        Contract::from_masks(&self.target, a, g)
    }

    fn monotonicity_violation(&self) -> Option<(Contract, Contract)> {
        let domain = Domain::for_algebra(&self.source, DEFAULT_SEED);
        let mut found = None;
        domain.each_contracts(2, |cs| {
            if found.is_none() && refines(cs[0], cs[1]) {
                let (x, y) = (self.apply(cs[0]).ok(), self.apply(cs[1]).ok());
                if let (Some(x), Some(y)) = (x, y) {
                    if !refines(&x, &y) {
                        found = Some((cs[0].clone(), cs[1].clone()));
                    }
                }
            }
        });
        found
    }
}

/// `ᾱ(a, g) = (α a, α g)`. Requires `α` monotone, join-preserving and
/// top-preserving; the error names the first missing property.
pub fn lift_monotone(alpha: &MonotoneMap) -> Result<ContractMap, AbstractionError> {
    if let Some((flag, source)) = alpha.violation() {
        return Err(AbstractionError::InvalidAbstraction { flag, source });
    }
    ContractMap::build(alpha.source(), alpha.target(), Provenance::LiftedMonotone(alpha.clone())).require_monotone()
}

/// `f*(a, g) = (f a, f g)`.
pub fn lift_hom(f: &AlgebraHom) -> ContractMap {
    ContractMap::build(f.source(), f.target(), Provenance::InducedHom(f.clone()))
}

/// `(a, g) ↦ (t a, t g ∨ ¬t a)` for a monotone `t` that need not preserve
/// joins, such as the upper adjoint of a lifted abstraction.
pub fn lift_pointwise(t: &MonotoneMap) -> Result<ContractMap, AbstractionError> {
    if !t.monotone() {
        let source = t.violation().map(|(_, e)| e).expect("non-monotone map has a violation");
        return Err(AbstractionError::InvalidAbstraction { flag: "monotone", source });
    }
    ContractMap::build(t.source(), t.target(), Provenance::Pointwise(t.clone())).require_monotone()
}

/// The upper adjoint of `alpha` on elements, lifted pointwise.
pub fn pointwise_upper_adjoint(alpha: &MonotoneMap) -> Result<ContractMap, AbstractionError> {
    lift_pointwise(&MonotoneMap::new(alpha.upper_adjoint()))
}

fn carrier(algebra: &Algebra) -> Vec<Contract> {
    Domain::for_algebra(algebra, DEFAULT_SEED).contracts().to_vec()
}

/// Whether `α C_c ≤ C_a ⇔ C_c ≤ γ C_a` on every pair. When both maps are
/// hom-induced and the adjunction holds, also whether both composites are
/// identities.
pub fn check_galois_pair(alpha: &ContractMap, gamma: &ContractMap) -> SuiteReport {
    let concrete = alpha.source();
    let mut report = SuiteReport::new("galois pair", concrete.atom_count());
    let mut adjunction = LawCheck::new("α(C_c) ≤ C_a ⇔ C_c ≤ γ(C_a)");
    if alpha.target() != gamma.source() || gamma.target() != concrete {
        adjunction.fail_with(Witness::new().with("algebras", "α and γ are not opposite maps"));
        report.push(adjunction.finish(Status::Pass));
        return report;
    }
    let cc = carrier(concrete);
    let ca = carrier(alpha.target());
    let domain = Domain::for_algebra(concrete, DEFAULT_SEED);
    domain.each_index(&[cc.len(), ca.len()], |i| {
        let (c, a) = (&cc[i[0]], &ca[i[1]]);
        let left = refines(&alpha.apply(c).expect("source"), a);
        let right = refines(c, &gamma.apply(a).expect("source"));
        adjunction.record(left == right, || {
            Witness::new()
                .contract("C_c", c)
                .contract("C_a", a)
                .with("α(C_c) ≤ C_a", left.to_string())
                .with("C_c ≤ γ(C_a)", right.to_string())
        });
    });
    let holds = adjunction.failures() == 0;
    report.push(adjunction.finish(Status::Pass));

    let both_induced = matches!(alpha.provenance(), Provenance::InducedHom(_))
        && matches!(gamma.provenance(), Provenance::InducedHom(_));
    if both_induced && holds {
        let mut ag = LawCheck::new("α ∘ γ = id");
        for a in &ca {
            let back = alpha.apply(&gamma.apply(a).expect("source")).expect("source");
            ag.record(back == *a, || Witness::new().contract("C_a", a).contract("α(γ(C_a))", &back));
        }
        let mut ga = LawCheck::new("γ ∘ α = id");
        for c in &cc {
            let back = gamma.apply(&alpha.apply(c).expect("source")).expect("source");
            ga.record(back == *c, || Witness::new().contract("C_c", c).contract("γ(α(C_c))", &back));
        }
        report.push(ag.finish(Status::Pass));
        report.push(ga.finish(Status::Pass));
    }
    report
}

/// Well-definedness and monotonicity of a lifted map.
pub fn check_lift(name: &str, map: &ContractMap) -> SuiteReport {
    let domain = Domain::for_algebra(map.source(), DEFAULT_SEED);
    let mut report = SuiteReport::new(format!("lift {name}"), map.source().atom_count());
    let mut canonical = LawCheck::new(format!("{name}: images are canonical"));
    let mut monotone = LawCheck::new(format!("{name}: C ≤ C′ ⇒ f(C) ≤ f(C′)"));
    domain.each_contracts(1, |cs| {
        let (a, g) = map.apply_masks(cs[0].masks().0, cs[0].masks().1);
        canonical.record(a | g == map.target().full_mask(), || Witness::new().contract("C", cs[0]));
    });
    domain.each_contracts(2, |cs| {
        if refines(cs[0], cs[1]) {
            let (x, y) = (map.apply(cs[0]).expect("source"), map.apply(cs[1]).expect("source"));
            monotone.record(refines(&x, &y), || Witness::new().contract("C", cs[0]).contract("C′", cs[1]));
        }
    });
    report.push(canonical.finish(Status::Pass));
    report.push(monotone.finish(Status::Pass));
    report
}

/// `f*` commutes with the eight operations and the reciprocal.
pub fn check_hom_commutes(name: &str, f: &AlgebraHom) -> SuiteReport {
    let star = lift_hom(f);
    let domain = Domain::for_algebra(f.source(), DEFAULT_SEED);
    let mut report = SuiteReport::new(format!("{name}* commutes"), f.source().atom_count());
    let img = |c: &Contract| star.apply(c).expect("source");
    let mut checks: Vec<LawCheck> = ContractOp::ALL
        .iter()
        .map(|op| {
            let s = op.symbol();
            LawCheck::new(format!("{name}*(C {s} C′) = {name}*(C) {s} {name}*(C′)"))
        })
        .collect();
    domain.each_contracts(2, |cs| {
        for (op, check) in ContractOp::ALL.iter().zip(checks.iter_mut()) {
            let lhs = img(&op.apply(cs[0], cs[1]).expect("one algebra"));
            let rhs = op.apply(&img(cs[0]), &img(cs[1])).expect("one algebra");
            check.record(lhs == rhs, || Witness::new().contract("C", cs[0]).contract("C′", cs[1]));
        }
    });
    let mut recip = LawCheck::new(format!("{name}*(C⁻¹) = {name}*(C)⁻¹"));
    domain.each_contracts(1, |cs| {
        recip.record(img(&cs[0].reciprocal()) == img(cs[0]).reciprocal(), || {
            Witness::new().contract("C", cs[0])
        });
    });
    report.laws.extend(checks.into_iter().map(|c| c.finish(Status::Pass)));
    report.push(recip.finish(Status::Pass));
    report
}

/// `{x, y} -> {z}` sending every nonempty element to `{z}`.
pub fn atom_collapse(source: &Algebra, target: &Algebra) -> Result<MonotoneMap, MapError> {
    let full = target.full_mask();
    Ok(MonotoneMap::new(Tabulation::from_fn(source, target, |x| if x == 0 { 0 } else { full })?))
}

/// The abstraction and homomorphism laws on the domain's algebra: the
/// identity lift, the collapse of all atoms onto one, the atom-reversing
/// automorphism, and the hom-induced pair with a one-atom algebra.
pub fn abstraction_suite(domain: &Domain) -> SuiteReport {
    let alg = domain.algebra();
    let n = alg.atom_count();
    let mut report = SuiteReport::new("abstraction", n);
    let single = Algebra::new(["z"], alg.backend()).expect("one atom");

    let identity = lift_monotone(&MonotoneMap::new(Tabulation::identity(alg))).expect("identity lifts");
    report.extend(check_lift("id", &identity));

    let collapse = atom_collapse(alg, &single).expect("collapse");
    report.extend(check_lift("ᾱ collapse", &lift_monotone(&collapse).expect("collapse lifts")));

    let mut rejects = LawCheck::new("lift_monotone rejects maps that are not join- or top-preserving");
    let constant_bottom = MonotoneMap::new(Tabulation::from_fn(alg, &single, |_| 0).expect("in range"));
    let meets_only = Tabulation::from_fn(alg, alg, |x| if x == alg.full_mask() { x } else { 0 }).expect("in range");
    let mut cases = vec![("constant ⊥", constant_bottom)];
    if n > 1 {
        cases.push(("x ↦ ⊤ if x = ⊤ else ⊥", MonotoneMap::new(meets_only)));
    }
    for (label, map) in cases {
        let rejected = matches!(lift_monotone(&map), Err(AbstractionError::InvalidAbstraction { .. }));
        rejects.record(rejected, || Witness::new().with("map", label));
    }
    report.push(rejects.finish(Status::Pass));

    let reverse: Vec<usize> = (0..n).rev().collect();
    let swap = AlgebraHom::from_atom_assignment(alg, alg, &reverse).expect("automorphism");
    report.extend(check_hom_commutes("f", &swap));
    let to_one = AlgebraHom::from_atom_assignment(alg, &single, &[0]).expect("hom onto one atom");
    report.extend(check_hom_commutes("p", &to_one));

    let swap_star = lift_hom(&swap);
    report.extend(check_galois_pair(&swap_star, &swap_star));
    if n > 1 {
        let up = AlgebraHom::from_atom_assignment(&single, alg, &vec![0; n]).expect("diagonal hom");
        let mut pair = check_galois_pair(&lift_hom(&to_one), &lift_hom(&up));
        for law in &mut pair.laws {
            law.law = format!("non-isomorphic carriers: {}", law.law);
            law.expected = Status::Fail;
        }
        report.extend(pair);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::Backend;

    fn xy() -> Algebra {
        Algebra::bitset(&["x", "y"]).unwrap()
    }

    #[test]
    fn collapse_lifts_to_the_documented_value() {
        let (src, tgt) = (xy(), Algebra::bitset(&["z"]).unwrap());
        let alpha = lift_monotone(&atom_collapse(&src, &tgt).unwrap()).unwrap();
        let c = Contract::new(src.atom("x").unwrap(), src.atom("y").unwrap()).unwrap();
        assert_eq!(alpha.apply(&c).unwrap(), Contract::identity(&tgt));
        assert_eq!(alpha.is_monotone(), Some(true));
    }

    #[test]
    fn non_join_preserving_maps_are_rejected() {
        let alg = xy();
        let table = Tabulation::from_fn(&alg, &alg, |x| if x == 3 { 3 } else { 0 }).unwrap();
        let err = lift_monotone(&MonotoneMap::new(table)).unwrap_err();
        assert!(matches!(err, AbstractionError::InvalidAbstraction { flag: "join_preserving", .. }), "{err}");
    }

    #[test]
    fn identity_pair_is_galois_with_identity_composites() {
        let alg = xy();
        let id = lift_hom(&AlgebraHom::identity(&alg));
        let report = check_galois_pair(&id, &id);
        assert!(report.ok(), "{}", report.to_text());
        assert_eq!(report.laws.len(), 3);
    }

    #[test]
    fn hom_pair_between_different_sizes_fails() {
        let (big, small) = (xy(), Algebra::bitset(&["z"]).unwrap());
        let down = lift_hom(&AlgebraHom::from_atom_assignment(&big, &small, &[0]).unwrap());
        let up = lift_hom(&AlgebraHom::from_atom_assignment(&small, &big, &[0, 0]).unwrap());
        let report = check_galois_pair(&down, &up);
        let law = &report.laws[0];
        assert_eq!(law.status, Status::Fail);
        assert!(law.witness.as_ref().unwrap().get("C_c").is_some());
    }

    #[test]
    fn suite_passes() {
        for n in 1..=2 {
            let d = Domain::exhaustive(&Algebra::numbered(n, Backend::Bitset).unwrap());
            let report = abstraction_suite(&d);
            assert!(report.ok(), "{}", report.to_text());
        }
    }
}
