//! The law suites run by `agc laws`, grouped under five names.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::abstraction::abstraction_suite;
use crate::actions::run_action_suite;
use crate::boolalg::{Algebra, AlgebraError, Backend, Element};
use crate::contract::{Contract, ContractOp};
use crate::oracle::{Oracle, OracleError, Residual};
use crate::quantify::{apply, refines, Domain};
use crate::report::{LawCheck, Status, SuiteReport, Witness};
use crate::structures::{
    check_semiring_laws, converse_suite, distributivity::distributivity_suite, isomorphism_suite, monoid_map_suite,
    monoid_suite, no_isomorphism_suite, semi_distributivity_suite, semiring_census, semiring_hom_suite,
    structure_theorem_suite, BoolSemiring,
};

/// Largest algebra `run_laws` accepts.
pub const MAX_LAW_ATOMS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tables,
    Monoids,
    Semirings,
    Actions,
    Adjoints,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Tables, Suite::Monoids, Suite::Semirings, Suite::Actions, Suite::Adjoints];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Monoids => "monoids",
            Suite::Semirings => "semirings",
            Suite::Actions => "actions",
            Suite::Adjoints => "adjoints",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}` (expected one of tables, monoids, semirings, actions, adjoints, all)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawsConfig {
    pub atoms: usize,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub backend: Backend,
}

impl LawsConfig {
    pub fn new(atoms: usize) -> Self {
        LawsConfig {
            atoms,
            suites: Suite::ALL.to_vec(),
            seed: crate::quantify::DEFAULT_SEED,
            backend: Backend::Bitset,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LawsError {
    #[error("law suites need between 1 and {max} atoms, got {atoms}")]
    AtomCount { atoms: usize, max: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Serialize)]
pub struct LawsReport {
    pub atoms: usize,
    pub seed: String,
    pub exhaustive: bool,
    pub ok: bool,
    pub suites: Vec<NamedSuite>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedSuite {
    pub name: Suite,
    pub ok: bool,
    pub reports: Vec<SuiteReport>,
}

impl LawsReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "laws over {} atoms ({}, seed {})\n",
            self.atoms,
            if self.exhaustive { "exhaustive" } else { "sampled" },
            self.seed
        );
        for suite in &self.suites {
            out.push_str(&format!("== {} ==\n", suite.name));
            for report in &suite.reports {
                out.push_str(&report.to_text());
            }
        }
        let total: usize = self.suites.iter().flat_map(|s| &s.reports).map(|r| r.laws.len()).sum();
        out.push_str(&format!("{total} laws: {}\n", if self.ok { "ok" } else { "NOT OK" }));
        out
    }
}

pub fn run_laws(config: &LawsConfig) -> Result<LawsReport, LawsError> {
    if config.atoms == 0 || config.atoms > MAX_LAW_ATOMS {
        return Err(LawsError::AtomCount { atoms: config.atoms, max: MAX_LAW_ATOMS });
    }
    let algebra = Algebra::numbered(config.atoms, config.backend)?;
    let domain = Domain::for_algebra(&algebra, config.seed);
    let mut suites: Vec<Suite> = config.suites.clone();
    suites.sort_unstable();
    suites.dedup();
    let mut named = Vec::new();
    for suite in suites {
        let reports = match suite {
            Suite::Tables => tables(&domain),
            Suite::Monoids => vec![
                monoid_suite(&domain),
                isomorphism_suite(&domain),
                monoid_map_suite(&domain),
                structure_theorem_suite(&domain, config.seed),
                converse_suite(config.backend),
            ],
            Suite::Semirings => vec![
                semiring_census(&domain),
                check_semiring_laws(&BoolSemiring::meet(&algebra), &domain),
                check_semiring_laws(&BoolSemiring::join(&algebra), &domain),
                semiring_hom_suite(&domain),
                no_isomorphism_suite(config.backend),
            ],
            Suite::Actions => vec![run_action_suite(&domain)],
            Suite::Adjoints => vec![oracle_suite(&domain)?, abstraction_suite(&domain)],
        };
        named.push(NamedSuite { name: suite, ok: reports.iter().all(SuiteReport::ok), reports });
    }
    Ok(LawsReport {
        atoms: config.atoms,
        seed: format!("{:#x}", config.seed),
        exhaustive: domain.sampling() == crate::quantify::Sampling::Exhaustive,
        ok: named.iter().all(|s| s.ok),
        suites: named,
    })
}

/// Every suite of the `tables` group.
pub fn tables(domain: &Domain) -> Vec<SuiteReport> {
    vec![
        distinguished_suite(domain),
        duality_suite(domain),
        rewriting_suite(domain),
        canonicity_suite(domain),
        monotonicity_suite(domain),
        distributivity_suite(domain),
        semi_distributivity_suite(domain),
    ]
}

type Unary = fn(&Contract) -> bool;

fn one(c: &Contract) -> Contract {
    Contract::one(c.algebra())
}

fn zero(c: &Contract) -> Contract {
    Contract::zero(c.algebra())
}

fn e(c: &Contract) -> Contract {
    Contract::identity(c.algebra())
}

fn top(c: &Contract) -> Element {
    c.algebra().top()
}

fn a(c: &Contract) -> Element {
    c.assume().clone()
}

fn g(c: &Contract) -> Element {
    c.guarantee().clone()
}

fn not(x: Element) -> Element {
    x.complement()
}

/// `(x, y)` if it is already canonical.
fn pair(x: Element, y: Element) -> Option<Contract> {
    Contract::assert_canonical(x, y).ok()
}

fn is(x: Contract, expected: Option<Contract>) -> bool {
    Some(x) == expected
}

use ContractOp::{Coimplication, Compose, Conj, Disj, Implication, Merge, Quotient, Separate};

/// The behavior of each operation on the distinguished contracts `0`, `1`, `e`.
/// In `C → C′` and `C ↛ C′`, `C` is the antecedent.
pub const DISTINGUISHED: &[(&str, Unary)] = &[
    ("C ∧ 0 = 0", |c| apply(Conj, c, &zero(c)) == zero(c)),
    ("C ∧ 1 = C", |c| apply(Conj, c, &one(c)) == *c),
    ("(a, g) ∧ e = (⊤, g)", |c| is(apply(Conj, c, &e(c)), pair(top(c), g(c)))),
    ("C ∨ 0 = C", |c| apply(Disj, c, &zero(c)) == *c),
    ("C ∨ 1 = 1", |c| apply(Disj, c, &one(c)) == one(c)),
    ("(a, g) ∨ e = (a, ⊤)", |c| is(apply(Disj, c, &e(c)), pair(a(c), top(c)))),
    ("C ∥ 0 = 0", |c| apply(Compose, c, &zero(c)) == zero(c)),
    ("(a, g) ∥ 1 = (¬g, g)", |c| is(apply(Compose, c, &one(c)), pair(not(g(c)), g(c)))),
    ("C ∥ e = C", |c| apply(Compose, c, &e(c)) == *c),
    ("(a, g) • 0 = (a, ¬a)", |c| is(apply(Merge, c, &zero(c)), pair(a(c), not(a(c))))),
    ("C • 1 = 1", |c| apply(Merge, c, &one(c)) == one(c)),
    ("C • e = C", |c| apply(Merge, c, &e(c)) == *c),
    ("C / 0 = 1", |c| apply(Quotient, c, &zero(c)) == one(c)),
    ("(a, g) / 1 = (a, ¬a)", |c| is(apply(Quotient, c, &one(c)), pair(a(c), not(a(c))))),
    ("C / e = C", |c| apply(Quotient, c, &e(c)) == *c),
    ("0 / (a, g) = (g, ¬g)", |c| is(apply(Quotient, &zero(c), c), pair(g(c), not(g(c))))),
    ("1 / C = 1", |c| apply(Quotient, &one(c), c) == one(c)),
    ("e / C = C⁻¹", |c| apply(Quotient, &e(c), c) == c.reciprocal()),
    ("(a, g) ÷ 0 = (¬g, g)", |c| is(apply(Separate, c, &zero(c)), pair(not(g(c)), g(c)))),
    ("C ÷ 1 = 0", |c| apply(Separate, c, &one(c)) == zero(c)),
    ("C ÷ e = C", |c| apply(Separate, c, &e(c)) == *c),
    ("0 ÷ C = 0", |c| apply(Separate, &zero(c), c) == zero(c)),
    ("1 ÷ (a, g) = (¬a, a)", |c| is(apply(Separate, &one(c), c), pair(not(a(c)), a(c)))),
    ("e ÷ C = C⁻¹", |c| apply(Separate, &e(c), c) == c.reciprocal()),
    ("(a, g) → 0 = (g, ¬g)", |c| is(apply(Implication, c, &zero(c)), pair(g(c), not(g(c))))),
    ("C → 1 = 1", |c| apply(Implication, c, &one(c)) == one(c)),
    ("(a, g) → e = (¬a, ⊤)", |c| is(apply(Implication, c, &e(c)), pair(not(a(c)), top(c)))),
    ("0 → C = 1", |c| apply(Implication, &zero(c), c) == one(c)),
    ("1 → C = C", |c| apply(Implication, &one(c), c) == *c),
    ("e → (a, g) = (¬g, g)", |c| is(apply(Implication, &e(c), c), pair(not(g(c)), g(c)))),
    ("C ↛ 0 = 0", |c| apply(Coimplication, c, &zero(c)) == zero(c)),
    ("(a, g) ↛ 1 = (¬a, a)", |c| is(apply(Coimplication, c, &one(c)), pair(not(a(c)), a(c)))),
    ("(a, g) ↛ e = (⊤, ¬g)", |c| is(apply(Coimplication, c, &e(c)), pair(top(c), not(g(c))))),
    ("0 ↛ C = C", |c| apply(Coimplication, &zero(c), c) == *c),
    ("1 ↛ C = 0", |c| apply(Coimplication, &one(c), c) == zero(c)),
    ("e ↛ (a, g) = (a, ¬a)", |c| is(apply(Coimplication, &e(c), c), pair(a(c), not(a(c))))),
];

fn unary_suite(name: &str, laws: &[(&str, Unary)], domain: &Domain) -> SuiteReport {
    let mut report = SuiteReport::new(name, domain.algebra().atom_count());
    for (law, holds) in laws {
        let mut check = LawCheck::new(*law);
        domain.each_contracts(1, |cs| check.record(holds(cs[0]), || Witness::new().contract("C", cs[0])));
        report.push(check.finish(Status::Pass));
    }
    report
}

type Binary = fn(&Contract, &Contract) -> bool;

fn binary_suite(name: &str, laws: &[(&str, Binary)], domain: &Domain) -> SuiteReport {
    let mut report = SuiteReport::new(name, domain.algebra().atom_count());
    for (law, holds) in laws {
        let mut check = LawCheck::new(*law);
        domain.each_contracts(2, |cs| {
            check.record(holds(cs[0], cs[1]), || Witness::new().contract("C", cs[0]).contract("C′", cs[1]))
        });
        report.push(check.finish(Status::Pass));
    }
    report
}

pub fn distinguished_suite(domain: &Domain) -> SuiteReport {
    unary_suite("distinguished elements", DISTINGUISHED, domain)
}

fn inv(c: &Contract) -> Contract {
    c.reciprocal()
}

pub fn duality_suite(domain: &Domain) -> SuiteReport {
    let mut report = unary_suite(
        "duality",
        &[
            ("(C⁻¹)⁻¹ = C", |c| inv(&inv(c)) == *c),
            ("1⁻¹ = 0 and e⁻¹ = e", |c| inv(&one(c)) == zero(c) && inv(&e(c)) == e(c)),
        ],
        domain,
    );
    report.extend(binary_suite(
        "duality",
        &[
            ("(C ∥ C′)⁻¹ = C⁻¹ • C′⁻¹", |x, y| inv(&apply(Compose, x, y)) == apply(Merge, &inv(x), &inv(y))),
            ("(C ∧ C′)⁻¹ = C⁻¹ ∨ C′⁻¹", |x, y| inv(&apply(Conj, x, y)) == apply(Disj, &inv(x), &inv(y))),
            ("(C / C′)⁻¹ = C⁻¹ ÷ C′⁻¹", |x, y| inv(&apply(Quotient, x, y)) == apply(Separate, &inv(x), &inv(y))),
            ("(C′ → C)⁻¹ = C′⁻¹ ↛ C⁻¹", |x, y| {
                inv(&apply(Implication, y, x)) == apply(Coimplication, &inv(y), &inv(x))
            }),
            ("C ≤ C′ ⇔ C′⁻¹ ≤ C⁻¹", |x, y| refines(x, y) == refines(&inv(y), &inv(x))),
        ],
        domain,
    ));
    report.suite = "duality".into();
    report
}

pub fn rewriting_suite(domain: &Domain) -> SuiteReport {
    binary_suite(
        "rewriting",
        &[
            ("C / C′ = C • C′⁻¹", |x, y| apply(Quotient, x, y) == apply(Merge, x, &inv(y))),
            ("C ÷ C′ = C ∥ C′⁻¹", |x, y| apply(Separate, x, y) == apply(Compose, x, &inv(y))),
        ],
        domain,
    )
}

pub fn canonicity_suite(domain: &Domain) -> SuiteReport {
    let mut report = SuiteReport::new("canonicity", domain.algebra().atom_count());
    for op in ContractOp::ALL {
        let mut check = LawCheck::new(format!("C {} C′ is canonical", op.symbol()));
        domain.each_contracts(2, |cs| {
            let out = apply(op, cs[0], cs[1]);
            check.record(out.is_canonical(), || Witness::new().contract("C", cs[0]).contract("C′", cs[1]));
        });
        report.push(check.finish(Status::Pass));
    }
    let mut recip = LawCheck::new("C⁻¹ is canonical");
    domain.each_contracts(1, |cs| recip.record(inv(cs[0]).is_canonical(), || Witness::new().contract("C", cs[0])));
    report.push(recip.finish(Status::Pass));
    report
}

pub fn monotonicity_suite(domain: &Domain) -> SuiteReport {
    let mut report = SuiteReport::new("monotonicity", domain.algebra().atom_count());
    for op in [Compose, Merge, Conj, Disj] {
        let s = op.symbol();
        let mut check = LawCheck::new(format!("C ≤ C′ ⇒ C {s} D ≤ C′ {s} D and D {s} C ≤ D {s} C′"));
        domain.each_contracts(3, |cs| {
            let (x, y, d) = (cs[0], cs[1], cs[2]);
            let holds = !refines(x, y)
                || (refines(&apply(op, x, d), &apply(op, y, d)) && refines(&apply(op, d, x), &apply(op, d, y)));
            check.record(holds, || Witness::new().contract("C", x).contract("C′", y).contract("D", d));
        });
        report.push(check.finish(Status::Pass));
    }
    report
}

/// Agreement of the closed forms with brute-force extrema and with the
/// semantic order, composition and merging.
pub fn oracle_suite(domain: &Domain) -> Result<SuiteReport, OracleError> {
    let oracle = Oracle::new(domain.algebra())?;
    let mut report = SuiteReport::new(format!("oracle ({:?} mode)", oracle.mode()).to_lowercase(), domain.algebra().atom_count());
    let mut order = LawCheck::new("refinement agrees with the oracle order");
    let mut lattice = LawCheck::new("C ∧ C′ and C ∨ C′ are the oracle meet and join");
    let mut monoidal = LawCheck::new("C ∥ C′ and C • C′ agree with the oracle");
    let mut residuals: Vec<(Residual, LawCheck, LawCheck)> = Residual::ALL
        .into_iter()
        .map(|kind| {
            let (op, _) = kind.closed_form();
            (
                kind,
                LawCheck::new(format!("closed-form {} equals the oracle {}", op.surface_name(), kind.name())),
                LawCheck::new(format!("the {} extremum is unique", kind.name())),
            )
        })
        .collect();
    domain.each_contracts(2, |cs| {
        let (x, y) = (cs[0], cs[1]);
        let w = || Witness::new().contract("C", x).contract("C′", y);
        order.record(oracle.refines(x, y) == Ok(refines(x, y)), w);
        lattice.record(
            oracle.glb(x, y).as_ref() == Ok(&apply(Conj, x, y)) && oracle.lub(x, y).as_ref() == Ok(&apply(Disj, x, y)),
            w,
        );
        monoidal.record(
            oracle.compose(x, y).as_ref() == Ok(&apply(Compose, x, y))
                && oracle.merge(x, y).as_ref() == Ok(&apply(Merge, x, y)),
            w,
        );
        for (kind, agree, unique) in residuals.iter_mut() {
            let (op, swapped) = kind.closed_form();
            let closed = if swapped { apply(op, y, x) } else { apply(op, x, y) };
            let found = oracle.residual(*kind, x, y);
            unique.record(found.is_ok(), w);
            agree.record(found.as_ref() == Ok(&closed), || w().contract("closed form", &closed));
        }
    });
    report.push(order.finish(Status::Pass));
    report.push(lattice.finish(Status::Pass));
    report.push(monoidal.finish(Status::Pass));
    for (_, agree, unique) in residuals {
        report.push(agree.finish(Status::Pass));
        report.push(unique.finish(Status::Pass));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirty_six_distinguished_identities() {
        assert_eq!(DISTINGUISHED.len(), 36);
        for n in 1..=2 {
            let d = Domain::exhaustive(&Algebra::numbered(n, Backend::Bitset).unwrap());
            let report = distinguished_suite(&d);
            assert!(report.ok(), "{}", report.to_text());
        }
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("actions".parse::<Suite>(), Ok(Suite::Actions));
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn bad_atom_counts_are_rejected() {
        assert!(matches!(run_laws(&LawsConfig::new(0)), Err(LawsError::AtomCount { .. })));
        assert!(matches!(run_laws(&LawsConfig::new(5)), Err(LawsError::AtomCount { .. })));
    }

    #[test]
    fn everything_passes_at_one_atom() {
        let report = run_laws(&LawsConfig::new(1)).unwrap();
        assert!(report.ok, "{}", report.to_text());
    }
}
