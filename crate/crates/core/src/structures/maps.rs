//! Maps between the contract monoids and semirings and those of the
//! underlying Boolean algebra.

use crate::boolalg::{AlgebraError, Element};
use crate::contract::Contract;
use crate::quantify::Domain;
use crate::report::{LawCheck, Status, SuiteReport, Witness};

use super::{
    check_monoid_hom, check_semiring_hom, BoolMonoid, BoolSemiring, MonoidSpec, PairMonoid, SemiringSpec,
};
use crate::contract::ContractOp;

/// `θ_g(a, g) = (¬(a ∧ g), g)`, the isomorphism between `C^M_∥` and `C^M_∧`.
pub fn theta_g(c: &Contract) -> Contract {
    let (a, g) = (c.assume(), c.guarantee());
    Contract::raw(a.and(g).not(), g.clone())
}

/// `θ_a(a, g) = (a, ¬(a ∧ g))`, the isomorphism between `C^M_•` and `C^M_∨`.
pub fn theta_a(c: &Contract) -> Contract {
    let (a, g) = (c.assume(), c.guarantee());
    Contract::raw(a.clone(), a.and(g).not())
}

/// `(b, ⊤)`.
pub fn iota_a(b: &Element) -> Contract {
    Contract::raw(b.clone(), b.algebra().top())
}

/// `(⊤, b)`.
pub fn iota_g(b: &Element) -> Contract {
    Contract::raw(b.algebra().top(), b.clone())
}

/// `(¬b, ⊤)`.
pub fn iota_a_prime(b: &Element) -> Contract {
    Contract::raw(b.not(), b.algebra().top())
}

/// `(⊤, ¬b)`.
pub fn iota_g_prime(b: &Element) -> Contract {
    Contract::raw(b.algebra().top(), b.not())
}

/// `ι_a(a) ∥ ι_g(g) = (g → a, g)`.
pub fn pi_pair(a: &Element, g: &Element) -> Result<Contract, AlgebraError> {
    Ok(Contract::raw(g.implies(a)?, g.clone()))
}

/// `(a ∧ g, g)`, a right inverse of [`pi_pair`].
pub fn iota_split(c: &Contract) -> (Element, Element) {
    (c.assume().and(c.guarantee()), c.guarantee().clone())
}

pub fn pi_g(c: &Contract) -> Element {
    c.guarantee().clone()
}

pub fn pi_a(c: &Contract) -> Element {
    c.assume().clone()
}

/// `¬a`.
pub fn pi_a_prime(c: &Contract) -> Element {
    c.assume().not()
}

/// `¬g`.
pub fn pi_g_prime(c: &Contract) -> Element {
    c.guarantee().not()
}

/// `(¬b, b)`.
pub fn delta_g(b: &Element) -> Contract {
    Contract::raw(b.not(), b.clone())
}

/// `(b, ¬b)`.
pub fn delta_a(b: &Element) -> Contract {
    Contract::raw(b.clone(), b.not())
}

/// Involutions, isomorphisms and commuting square of the four contract
/// monoids, together with `π ∘ ι = id`.
pub fn isomorphism_suite(domain: &Domain) -> SuiteReport {
    let alg = domain.algebra();
    let [conj, disj, compose, merge] = MonoidSpec::all_standard(alg);
    let mut report = SuiteReport::new("isomorphisms", alg.atom_count());

    let mut inv_g = LawCheck::new("θ_g ∘ θ_g = id");
    let mut inv_a = LawCheck::new("θ_a ∘ θ_a = id");
    let mut square = LawCheck::new("θ_a ∘ (·)⁻¹ = (·)⁻¹ ∘ θ_g");
    let mut split = LawCheck::new("π ∘ ι = id");
    domain.each_contracts(1, |cs| {
        let c = cs[0];
        let w = || Witness::new().contract("C", c);
        inv_g.record(theta_g(&theta_g(c)) == *c, w);
        inv_a.record(theta_a(&theta_a(c)) == *c, w);
        square.record(theta_a(&c.reciprocal()) == theta_g(c).reciprocal(), w);
        let (p, g) = iota_split(c);
        split.record(pi_pair(&p, &g).expect("one algebra") == *c, w);
    });
    for check in [inv_g, inv_a, square, split] {
        report.push(check.finish(Status::Pass));
    }

    report.laws.extend(check_monoid_hom("θ_g", &compose, &conj, domain, theta_g));
    report.laws.extend(check_monoid_hom("θ_g", &conj, &compose, domain, theta_g));
    report.laws.extend(check_monoid_hom("θ_a", &merge, &disj, domain, theta_a));
    report.laws.extend(check_monoid_hom("θ_a", &disj, &merge, domain, theta_a));
    report.laws.extend(check_monoid_hom("(·)⁻¹", &conj, &disj, domain, Contract::reciprocal));
    report.laws.extend(check_monoid_hom("(·)⁻¹", &compose, &merge, domain, Contract::reciprocal));
    report
}

/// The monoid maps that build and split contracts.
pub fn monoid_map_suite(domain: &Domain) -> SuiteReport {
    let alg = domain.algebra();
    let [conj, _, compose, _] = MonoidSpec::all_standard(alg);
    let meet = BoolMonoid::meet(alg);
    let join = BoolMonoid::join(alg);
    let pair = PairMonoid { algebra: alg.clone() };
    let mut report = SuiteReport::new("monoid maps", alg.atom_count());
    report.laws.extend(check_monoid_hom("ι_a", &meet, &compose, domain, iota_a));
    report.laws.extend(check_monoid_hom("ι_g", &meet, &compose, domain, iota_g));
    report.laws.extend(check_monoid_hom("π", &pair, &compose, domain, |(a, g)| {
        pi_pair(a, g).expect("one algebra")
    }));
    report.laws.extend(check_monoid_hom("π_g", &compose, &meet, domain, pi_g));
    report.laws.extend(check_monoid_hom("π_a", &conj, &join, domain, pi_a));
    report.laws.extend(check_monoid_hom("¬ ∘ π_a ∘ θ_g", &compose, &meet, domain, |c| {
        pi_a(&theta_g(c)).not()
    }));
    report.laws.extend(check_monoid_hom("ι", &compose, &pair, domain, iota_split));
    report
}

/// Every semiring homomorphism between the Boolean and contract semirings
/// given by the maps of this module.
pub fn semiring_hom_suite(domain: &Domain) -> SuiteReport {
    let alg = domain.algebra();
    let s_and = BoolSemiring::meet(alg);
    let s_or = BoolSemiring::join(alg);
    let c_and = SemiringSpec::conjunction(alg);
    let c_or = SemiringSpec::disjunction(alg);
    let c_par = SemiringSpec::composition(alg);
    let c_dot = SemiringSpec::merging(alg);
    let mut r = SuiteReport::new("semiring maps", alg.atom_count());

    r.laws.extend(check_semiring_hom("¬", &s_and, &s_or, domain, Element::complement));
    r.laws.extend(check_semiring_hom("¬", &s_or, &s_and, domain, Element::complement));
    r.laws.extend(check_semiring_hom("(·)⁻¹", &c_and, &c_or, domain, Contract::reciprocal));
    r.laws.extend(check_semiring_hom("(·)⁻¹", &c_par, &c_dot, domain, Contract::reciprocal));

    r.laws.extend(check_semiring_hom("Δ_g", &s_and, &c_and, domain, delta_g));
    r.laws.extend(check_semiring_hom("Δ_g", &s_or, &c_or, domain, delta_g));
    r.laws.extend(check_semiring_hom("Δ_a", &s_and, &c_or, domain, delta_a));
    r.laws.extend(check_semiring_hom("Δ_a", &s_or, &c_and, domain, delta_a));
    r.laws.extend(check_semiring_hom("ι_g", &s_and, &c_par, domain, iota_g));
    r.laws.extend(check_semiring_hom("ι_a", &s_and, &c_dot, domain, iota_a));
    r.laws.extend(check_semiring_hom("ι_a′", &s_or, &c_dot, domain, iota_a_prime));
    r.laws.extend(check_semiring_hom("ι_g′", &s_or, &c_par, domain, iota_g_prime));

    r.laws.extend(check_semiring_hom("π_g", &c_and, &s_and, domain, pi_g));
    r.laws.extend(check_semiring_hom("π_g", &c_par, &s_and, domain, pi_g));
    r.laws.extend(check_semiring_hom("π_g", &c_or, &s_or, domain, pi_g));
    r.laws.extend(check_semiring_hom("π_a′", &c_and, &s_and, domain, pi_a_prime));
    r.laws.extend(check_semiring_hom("π_a′", &c_dot, &s_or, domain, pi_a_prime));
    r.laws.extend(check_semiring_hom("π_a′", &c_or, &s_or, domain, pi_a_prime));
    r.laws.extend(check_semiring_hom("π_a", &c_dot, &s_and, domain, pi_a));
    r.laws.extend(check_semiring_hom("π_a", &c_or, &s_and, domain, pi_a));
    r.laws.extend(check_semiring_hom("π_a", &c_and, &s_or, domain, pi_a));
    r.laws.extend(check_semiring_hom("π_g′", &c_par, &s_or, domain, pi_g_prime));
    r.laws.extend(check_semiring_hom("π_g′", &c_and, &s_or, domain, pi_g_prime));
    r.laws.extend(check_semiring_hom("π_g′", &c_or, &s_and, domain, pi_g_prime));

    let mut pointwise = LawCheck::new("ι_a = (·)⁻¹ ∘ ι_g, ι_g′ = ι_g ∘ ¬, Δ_a = (·)⁻¹ ∘ Δ_g = Δ_g ∘ ¬");
    for b in domain.elements() {
        let holds = iota_a(b) == iota_g(b).reciprocal()
            && iota_g_prime(b) == iota_g(&b.complement())
            && iota_a_prime(b) == iota_g(&b.complement()).reciprocal()
            && delta_a(b) == delta_g(b).reciprocal()
            && delta_a(b) == delta_g(&b.complement());
        pointwise.record(holds, || Witness::new().element("b", b));
    }
    r.push(pointwise.finish(Status::Pass));

    let mut actions = LawCheck::new("Δ_g(b) ∧ C = ι_g(b) ∥ C and Δ_a(b) ∨ C = ι_a(b) • C");
    domain.each(&[crate::quantify::Sort::Element, crate::quantify::Sort::Contract], |i| {
        let (b, c) = (i.b(0), i.c(0));
        let op = crate::quantify::apply;
        let holds = op(ContractOp::Conj, &delta_g(b), c) == op(ContractOp::Compose, &iota_g(b), c)
            && op(ContractOp::Disj, &delta_a(b), c) == op(ContractOp::Merge, &iota_a(b), c);
        actions.record(holds, || Witness::new().element("b", b).contract("C", c));
    });
    r.push(actions.finish(Status::Pass));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::{Algebra, Backend};

    fn xy() -> Algebra {
        Algebra::bitset(&["x", "y"]).unwrap()
    }

    #[test]
    fn documented_values() {
        let alg = xy();
        let (x, y) = (alg.atom("x").unwrap(), alg.atom("y").unwrap());
        assert_eq!(theta_g(&Contract::identity(&alg)), Contract::one(&alg));
        assert_eq!(iota_g(&alg.top()), Contract::identity(&alg));
        assert_eq!(pi_pair(&x, &y).unwrap(), Contract::new(x.clone(), y.clone()).unwrap());
        assert_eq!(delta_g(&alg.bottom()), Contract::zero(&alg));
        assert_eq!(delta_g(&alg.top()), Contract::one(&alg));
        assert_eq!(delta_a(&x), Contract::new(x, y).unwrap());
    }

    #[test]
    fn suites_pass_at_two_atoms() {
        let d = Domain::exhaustive(&Algebra::numbered(2, Backend::Bitset).unwrap());
        for report in [isomorphism_suite(&d), monoid_map_suite(&d), semiring_hom_suite(&d)] {
            assert!(report.ok(), "{}", report.to_text());
        }
    }
}
