use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abstraction::ContractMap;
use crate::boolalg::{Algebra, Backend, MeetMorphism, Tabulation};
use crate::contract::{all_contracts, Contract, ContractOp};
use crate::quantify::{apply, Domain};
use crate::report::{LawCheck, Status, SuiteReport, Witness};

use super::isomorphism::ContractTable;
use super::{MonoidSpec, StructureError};

/// Seed for the tabulated random quadruple.
pub const QUADRUPLE_SEED: u64 = 0xA6C;

/// Four meet morphisms `(B, ∧, ⊤) -> (B′, ∧, ⊤)` assembling a morphism of
/// the composition monoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismQuadruple {
    pub l_a: MeetMorphism,
    pub l_g: MeetMorphism,
    pub r_a: MeetMorphism,
    pub r_g: MeetMorphism,
}

impl MorphismQuadruple {
    pub fn new(
        l_a: MeetMorphism,
        l_g: MeetMorphism,
        r_a: MeetMorphism,
        r_g: MeetMorphism,
    ) -> Result<Self, StructureError> {
        let (source, target) = (l_a.source().clone(), l_a.target().clone());
        for (component, m) in [("l_g", &l_g), ("r_a", &r_a), ("r_g", &r_g)] {
            if *m.source() != source || *m.target() != target {
                return Err(StructureError::MismatchedQuadruple { component });
            }
        }
        Ok(MorphismQuadruple { l_a, l_g, r_a, r_g })
    }

    /// Validates each table as a meet morphism.
    pub fn from_tables(tables: [Tabulation; 4]) -> Result<Self, StructureError> {
        let names = ["l_a", "l_g", "r_a", "r_g"];
        let mut morphisms = Vec::with_capacity(4);
        for (component, table) in names.into_iter().zip(tables) {
            morphisms.push(
                MeetMorphism::new(table).map_err(|source| StructureError::InvalidQuadruple { component, source })?,
            );
        }
        let [l_a, l_g, r_a, r_g]: [MeetMorphism; 4] = morphisms.try_into().expect("four components");
        Self::new(l_a, l_g, r_a, r_g)
    }

    /// `(id, id, ⊤, id)`, which assembles the identity on contracts.
    pub fn identity(algebra: &Algebra) -> Self {
        let id = MeetMorphism::identity(algebra);
        let top = MeetMorphism::constant_top(algebra, algebra);
        MorphismQuadruple { l_a: id.clone(), l_g: id.clone(), r_a: top, r_g: id }
    }

    pub fn constant_top(source: &Algebra, target: &Algebra) -> Self {
        let top = MeetMorphism::constant_top(source, target);
        MorphismQuadruple { l_a: top.clone(), l_g: top.clone(), r_a: top.clone(), r_g: top }
    }

    pub fn source(&self) -> &Algebra {
        self.l_a.source()
    }

    pub fn target(&self) -> &Algebra {
        self.l_a.target()
    }

    /// `π(l_a(ag) l_g(g) r_a(ag) r_g(g), r_a(ag) r_g(g))` on masks.
    pub fn apply_masks(&self, a: u64, g: u64) -> (u64, u64) {
        let ag = a & g;
        let guarantee = self.r_a.apply_mask(ag) & self.r_g.apply_mask(g);
        let assume = self.l_a.apply_mask(ag) & self.l_g.apply_mask(g) & guarantee;
        let full = self.target().full_mask();
        ((!guarantee | assume) & full, guarantee)
    }
}

pub fn assemble_morphism(q: &MorphismQuadruple) -> ContractMap {
    ContractMap::assembled(q.clone())
}

/// A quadruple of random meet morphisms. Each component sends `x` to the
/// join of the target atoms whose randomly drawn requirement lies below `x`.
pub fn random_quadruple(source: &Algebra, target: &Algebra, seed: u64) -> MorphismQuadruple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut component = || {
        let required: Vec<u64> = (0..target.atom_count())
            .map(|_| rng.gen_range(0..=source.full_mask()))
            .collect();
        MeetMorphism::from_requirements(source, target, &required).expect("requirements define a meet morphism")
    };
    MorphismQuadruple { l_a: component(), l_g: component(), r_a: component(), r_g: component() }
}

fn every_meet_morphism(source: &Algebra, target: &Algebra) -> Vec<MeetMorphism> {
    let choices = source.carrier_size();
    let count = choices.pow(target.atom_count() as u32);
    let mut out: Vec<MeetMorphism> = (0..count)
        .map(|mut code| {
            let required: Vec<u64> = (0..target.atom_count())
                .map(|_| {
                    let r = code % choices;
                    code /= choices;
                    r
                })
                .collect();
            MeetMorphism::from_requirements(source, target, &required).expect("meet morphism")
        })
        .collect();
    out.dedup();
    out
}

/// Every morphism of `(C, ∥, e)` to itself, by search over all maps on the
/// contracts of a one-atom algebra.
pub fn parallel_morphisms(algebra: &Algebra) -> Vec<ContractTable> {
    let contracts = all_contracts(algebra);
    let index = |c: &Contract| contracts.iter().position(|x| x == c).expect("enumerated");
    let e = index(&Contract::identity(algebra));
    ContractTable::all(contracts.len())
        .filter(|t| t.0[e] == e)
        .filter(|t| {
            contracts.iter().enumerate().all(|(i, x)| {
                contracts.iter().enumerate().all(|(j, y)| {
                    let xy = index(&apply(ContractOp::Compose, x, y));
                    contracts[t.0[xy]] == apply(ContractOp::Compose, &contracts[t.0[i]], &contracts[t.0[j]])
                })
            })
        })
        .collect()
}

/// The structure theorem on one-atom contracts: every `∥`-monoid morphism is
/// assembled from some quadruple of meet morphisms.
pub fn converse_suite(backend: Backend) -> SuiteReport {
    let alg = Algebra::numbered(1, backend).expect("one atom");
    let contracts = all_contracts(&alg);
    let meets = every_meet_morphism(&alg, &alg);
    let mut assembled = Vec::new();
    for l_a in &meets {
        for l_g in &meets {
            for r_a in &meets {
                for r_g in &meets {
                    let q = MorphismQuadruple::new(l_a.clone(), l_g.clone(), r_a.clone(), r_g.clone())
                        .expect("same algebras");
                    let table: Vec<usize> = contracts
                        .iter()
                        .map(|c| {
                            let (a, g) = q.apply_masks(c.masks().0, c.masks().1);
                            contracts.iter().position(|x| x.masks() == (a, g)).expect("canonical")
                        })
                        .collect();
                    assembled.push(ContractTable(table));
                }
            }
        }
    }
    let mut report = SuiteReport::new("structure theorem converse", 1);
    let mut check = LawCheck::new("every ∥-monoid morphism of one-atom contracts is assembled from a quadruple");
    let morphisms = parallel_morphisms(&alg);
    for m in &morphisms {
        check.record(assembled.contains(m), || Witness::new().with("morphism", format!("{:?}", m.0)));
    }
    report.push(check.finish(Status::Pass));
    report
}

/// Assembled maps on the domain's algebra: the identity and constant
/// quadruples, and the monoid laws for a seeded random quadruple.
pub fn structure_theorem_suite(domain: &Domain, seed: u64) -> SuiteReport {
    let alg = domain.algebra();
    let mut report = SuiteReport::new("structure theorem", alg.atom_count());
    let identity = assemble_morphism(&MorphismQuadruple::identity(alg));
    let constant = assemble_morphism(&MorphismQuadruple::constant_top(alg, alg));
    let id = MeetMorphism::identity(alg);
    let four = assemble_morphism(&MorphismQuadruple {
        l_a: id.clone(),
        l_g: id.clone(),
        r_a: id.clone(),
        r_g: id,
    });
    let e = Contract::identity(alg);

    let mut ident = LawCheck::new("(id, id, ⊤, id) assembles the identity");
    let mut four_ids = LawCheck::new("(id, id, id, id) assembles (a, g) ↦ (⊤, a ∧ g)");
    let mut top = LawCheck::new("(⊤, ⊤, ⊤, ⊤) assembles the constant e");
    domain.each_contracts(1, |cs| {
        let c = cs[0];
        let w = || Witness::new().contract("C", c);
        ident.record(identity.apply(c).expect("same algebra") == *c, w);
        let expected = Contract::new(alg.top(), c.assume().meet(c.guarantee()).expect("one algebra"))
            .expect("one algebra");
        four_ids.record(four.apply(c).expect("same algebra") == expected, w);
        top.record(constant.apply(c).expect("same algebra") == e, w);
    });
    for check in [ident, four_ids, top] {
        report.push(check.finish(Status::Pass));
    }

    let random = assemble_morphism(&random_quadruple(alg, alg, seed));
    let par = MonoidSpec::standard(ContractOp::Compose, alg).expect("monoid");
    let laws = super::check_monoid_hom(&format!("assembled f (seed {seed:#x})"), &par, &par, domain, |c| {
        random.apply(c).expect("same algebra")
    });
    report.laws.extend(laws);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_parallel_morphisms_all_assembled() {
        let alg = Algebra::numbered(1, Backend::Bitset).unwrap();
        assert_eq!(parallel_morphisms(&alg).len(), 6);
        let report = converse_suite(Backend::Bitset);
        assert!(report.ok(), "{}", report.to_text());
        assert_eq!(report.laws[0].instances, 6);
    }

    #[test]
    fn invalid_component_is_named() {
        let alg = Algebra::numbered(1, Backend::Bitset).unwrap();
        let id = Tabulation::identity(&alg);
        let bottom = Tabulation::from_fn(&alg, &alg, |_| 0).unwrap();
        let err = MorphismQuadruple::from_tables([id.clone(), id.clone(), bottom, id]).unwrap_err();
        assert!(matches!(err, StructureError::InvalidQuadruple { component: "r_a", .. }));
    }

    #[test]
    fn random_quadruple_assembles_a_morphism_at_two_atoms() {
        let alg = Algebra::numbered(2, Backend::Bitset).unwrap();
        let report = structure_theorem_suite(&Domain::exhaustive(&alg), QUADRUPLE_SEED);
        assert!(report.ok(), "{}", report.to_text());
        let op_law = report.laws.iter().find(|l| l.law.ends_with("preserves the operation")).unwrap();
        assert_eq!(op_law.instances, 81);
    }
}
