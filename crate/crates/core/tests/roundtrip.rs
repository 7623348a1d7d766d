use agc::boolalg::{Algebra, Backend};
use agc::contract::all_contracts;
use agc::dsl::parse_contract;
use agc::Contract;
use proptest::prelude::*;

#[test]
fn every_small_contract_round_trips() {
    for atoms in 1..=3 {
        for backend in [Backend::Bitset, Backend::Formula] {
            let alg = Algebra::numbered(atoms, backend).unwrap();
            for c in all_contracts(&alg) {
                assert_eq!(parse_contract(&c.render(), &alg).unwrap(), c, "{c}");
            }
        }
    }
}

fn atom_name() -> impl Strategy<Value = String> {
    "[a-z_][a-z0-9_]{0,5}".prop_filter("not a constant", |s| s != "true" && s != "false")
}

proptest! {
    #[test]
    fn rendering_parses_back(
        names in prop::collection::btree_set(atom_name(), 1..=6),
        a in any::<u64>(),
        g in any::<u64>(),
    ) {
        let names: Vec<String> = names.into_iter().collect();
        let alg = Algebra::bitset(&names).unwrap();
        let full = alg.full_mask();
        let c = Contract::new(alg.element(a & full).unwrap(), alg.element(g & full).unwrap()).unwrap();
        let text = c.render();
        prop_assert_eq!(parse_contract(&text, &alg).unwrap(), c);
    }
}
