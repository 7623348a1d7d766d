use crate::boolalg::{Algebra, Backend};
use crate::contract::{all_contracts, Contract};
use crate::quantify::Domain;
use crate::report::{LawCheck, Status, SuiteReport, Witness};

use super::{Semiring, SemiringSpec};

/// A total map on the contracts of one algebra, as images of the indices of
/// [`all_contracts`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContractTable(pub Vec<usize>);

impl ContractTable {
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    /// Every map on `n` contracts, for `n` small enough that `n^n` fits.
    pub fn all(n: usize) -> impl Iterator<Item = ContractTable> {
        let total = (n as u64).pow(n as u32);
        (0..total).map(move |mut code| {
            let mut images = Vec::with_capacity(n);
            for _ in 0..n {
                images.push((code % n as u64) as usize);
                code /= n as u64;
            }
            ContractTable(images)
        })
    }
}

fn index_of(contracts: &[Contract], c: &Contract) -> usize {
    contracts.iter().position(|x| x == c).expect("enumerated contract")
}

fn is_semiring_hom(table: &ContractTable, contracts: &[Contract], s: &SemiringSpec, t: &SemiringSpec) -> bool {
    let img = |c: &Contract| &contracts[table.0[index_of(contracts, c)]];
    if *img(&s.zero()) != t.zero() || *img(&s.one()) != t.one() {
        return false;
    }
    contracts.iter().all(|x| {
        contracts.iter().all(|y| {
            *img(&s.add(x, y)) == t.add(img(x), img(y)) && *img(&s.mul(x, y)) == t.mul(img(x), img(y))
        })
    })
}

/// All semiring homomorphisms `s -> t`, by search over every map. Only
/// feasible on the one-atom algebra (27 maps).
pub fn semiring_homs_between(s: &SemiringSpec, t: &SemiringSpec, algebra: &Algebra) -> Vec<ContractTable> {
    let contracts = all_contracts(algebra);
    ContractTable::all(contracts.len())
        .filter(|table| is_semiring_hom(table, &contracts, s, t))
        .collect()
}

/// The two isomorphic pairs `C^S_∧ ≅ C^S_∨`, `C^S_∥ ≅ C^S_•`, and the absence
/// of isomorphisms across them, searched over every map of one-atom contracts.
pub fn no_isomorphism_suite(backend: Backend) -> SuiteReport {
    let alg = Algebra::numbered(1, backend).expect("one atom");
    let d = Domain::exhaustive(&alg);
    let contracts = d.contracts().to_vec();
    let lattice = [SemiringSpec::conjunction(&alg), SemiringSpec::disjunction(&alg)];
    let monoidal = [SemiringSpec::composition(&alg), SemiringSpec::merging(&alg)];
    let searched = ContractTable::all(contracts.len()).count() as u64;
    let mut report = SuiteReport::new("isomorphism search", 1);

    for (s, t) in [(&lattice[0], &lattice[1]), (&monoidal[0], &monoidal[1])] {
        let homs = semiring_homs_between(s, t, &alg);
        let mut check = LawCheck::new(format!("some semiring map {} → {} is bijective", s.name(), t.name()));
        check.record(homs.iter().any(ContractTable::is_bijective), || {
            Witness::new().with("homomorphisms", homs.len().to_string())
        });
        let mut law = check.finish(Status::Pass);
        law.instances = searched;
        report.push(law);
    }

    for x in &monoidal {
        for y in &lattice {
            for (s, t) in [(x, y), (y, x)] {
                let homs = semiring_homs_between(s, t, &alg);
                let mut check =
                    LawCheck::new(format!("no semiring map {} → {} is bijective", s.name(), t.name()));
                check.record(!homs.iter().any(ContractTable::is_bijective), || {
                    Witness::new().with("homomorphisms", homs.len().to_string())
                });
                let mut law = check.finish(Status::Pass);
                law.instances = searched;
                report.push(law);
            }
        }
    }

    let (par, conj) = (&monoidal[0], &lattice[0]);
    let one = Contract::one(&alg);
    let mut obstruction = LawCheck::new("every semiring map β: C^S_∥ → C^S_∧ has β(a, ⊤) = 1");
    for beta in semiring_homs_between(par, conj, &alg) {
        for a in d.elements() {
            let c = Contract::new(a.clone(), alg.top()).expect("one algebra");
            let image = &contracts[beta.0[index_of(&contracts, &c)]];
            obstruction.record(*image == one, || {
                Witness::new().contract("(a, ⊤)", &c).contract("β(a, ⊤)", image)
            });
        }
    }
    report.push(obstruction.finish(Status::Pass));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijections_are_recognized() {
        assert!(ContractTable(vec![2, 0, 1]).is_bijective());
        assert!(!ContractTable(vec![0, 0, 1]).is_bijective());
        assert_eq!(ContractTable::all(3).count(), 27);
    }

    #[test]
    fn one_map_from_composition_to_conjunction() {
        let alg = Algebra::numbered(1, Backend::Bitset).unwrap();
        let homs = semiring_homs_between(&SemiringSpec::composition(&alg), &SemiringSpec::conjunction(&alg), &alg);
        assert_eq!(homs.len(), 1);
        let report = no_isomorphism_suite(Backend::Bitset);
        assert!(report.ok(), "{}", report.to_text());
    }
}
