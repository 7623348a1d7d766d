//! Left and right actions of a Boolean algebra on its contracts.
//!
//! `b · (a, g) = (b ∧ a, b → g)` adds assumptions and relaxes the contract;
//! `(a, g) · b = (b → a, b ∧ g)` adds guarantees and strengthens it.

use crate::boolalg::{AlgebraError, Element};
use crate::contract::{Contract, ContractOp};
use crate::quantify::{apply, refines, Domain, Instance, Sort};
use crate::report::{LawCheck, Status, SuiteReport, Witness};

pub fn act_left(b: &Element, c: &Contract) -> Result<Contract, AlgebraError> {
    b.same_algebra(c.assume())?;
    Ok(Contract::raw(b.and(c.assume()), b.imp(c.guarantee())))
}

pub fn act_right(c: &Contract, b: &Element) -> Result<Contract, AlgebraError> {
    b.same_algebra(c.assume())?;
    Ok(Contract::raw(b.imp(c.assume()), b.and(c.guarantee())))
}

fn l(b: &Element, c: &Contract) -> Contract {
    act_left(b, c).expect("one algebra")
}

fn r(c: &Contract, b: &Element) -> Contract {
    act_right(c, b).expect("one algebra")
}

fn meet(b: &Element, b2: &Element) -> Element {
    b.and(b2)
}

fn join(b: &Element, b2: &Element) -> Element {
    b.or(b2)
}

type Check = fn(&Instance<'_>) -> bool;

const B: Sort = Sort::Element;
const C: Sort = Sort::Contract;

/// One identity of the action table: its printed form, the variables it
/// quantifies over (`b`, `b′`, `C`, `C′` in that order) and its check.
pub struct ActionRow {
    pub law: &'static str,
    pub sorts: &'static [Sort],
    pub holds: Check,
}

use ContractOp::*;

fn op(o: ContractOp, x: &Contract, y: &Contract) -> Contract {
    apply(o, x, y)
}

pub const ACTION_ROWS: &[ActionRow] = &[
    ActionRow { law: "b·C ≥ C", sorts: &[B, C], holds: |i| refines(i.c(0), &l(i.b(0), i.c(0))) },
    ActionRow { law: "C·b ≤ C", sorts: &[B, C], holds: |i| refines(&r(i.c(0), i.b(0)), i.c(0)) },
    ActionRow {
        law: "C ≤ C′ ⇒ b·C ≤ b·C′",
        sorts: &[B, C, C],
        holds: |i| !refines(i.c(0), i.c(1)) || refines(&l(i.b(0), i.c(0)), &l(i.b(0), i.c(1))),
    },
    ActionRow {
        law: "C ≤ C′ ⇒ C·b ≤ C′·b",
        sorts: &[B, C, C],
        holds: |i| !refines(i.c(0), i.c(1)) || refines(&r(i.c(0), i.b(0)), &r(i.c(1), i.b(0))),
    },
    ActionRow {
        law: "(b·C)⁻¹ = C⁻¹·b",
        sorts: &[B, C],
        holds: |i| l(i.b(0), i.c(0)).reciprocal() == r(&i.c(0).reciprocal(), i.b(0)),
    },
    ActionRow {
        law: "(b ∧ b′)·C = b·(b′·C)",
        sorts: &[B, B, C],
        holds: |i| l(&meet(i.b(0), i.b(1)), i.c(0)) == l(i.b(0), &l(i.b(1), i.c(0))),
    },
    ActionRow {
        law: "C·(b ∧ b′) = (C·b)·b′",
        sorts: &[B, B, C],
        holds: |i| r(i.c(0), &meet(i.b(0), i.b(1))) == r(&r(i.c(0), i.b(0)), i.b(1)),
    },
    ActionRow {
        law: "(b ∨ b′)·C = (b·C) ∧ (b′·C)",
        sorts: &[B, B, C],
        holds: |i| l(&join(i.b(0), i.b(1)), i.c(0)) == op(Conj, &l(i.b(0), i.c(0)), &l(i.b(1), i.c(0))),
    },
    ActionRow {
        law: "C·(b ∨ b′) = (C·b) ∨ (C·b′)",
        sorts: &[B, B, C],
        holds: |i| r(i.c(0), &join(i.b(0), i.b(1))) == op(Disj, &r(i.c(0), i.b(0)), &r(i.c(0), i.b(1))),
    },
    ActionRow {
        law: "b·(C ∧ C′) = b·C ∧ b·C′",
        sorts: &[B, C, C],
        holds: |i| l(i.b(0), &op(Conj, i.c(0), i.c(1))) == op(Conj, &l(i.b(0), i.c(0)), &l(i.b(0), i.c(1))),
    },
    ActionRow {
        law: "(C ∧ C′)·b = C·b ∧ C′",
        sorts: &[B, C, C],
        holds: |i| r(&op(Conj, i.c(0), i.c(1)), i.b(0)) == op(Conj, &r(i.c(0), i.b(0)), i.c(1)),
    },
    ActionRow {
        law: "b·(C ∨ C′) = b·C ∨ C′",
        sorts: &[B, C, C],
        holds: |i| l(i.b(0), &op(Disj, i.c(0), i.c(1))) == op(Disj, &l(i.b(0), i.c(0)), i.c(1)),
    },
    ActionRow {
        law: "(C ∨ C′)·b = C·b ∨ C′·b",
        sorts: &[B, C, C],
        holds: |i| r(&op(Disj, i.c(0), i.c(1)), i.b(0)) == op(Disj, &r(i.c(0), i.b(0)), &r(i.c(1), i.b(0))),
    },
    ActionRow {
        law: "b·(C ∥ C′) = b·C ∥ b·C′",
        sorts: &[B, C, C],
        holds: |i| {
            l(i.b(0), &op(Compose, i.c(0), i.c(1))) == op(Compose, &l(i.b(0), i.c(0)), &l(i.b(0), i.c(1)))
        },
    },
    ActionRow {
        law: "(C ∥ C′)·b = C·b ∥ C′",
        sorts: &[B, C, C],
        holds: |i| r(&op(Compose, i.c(0), i.c(1)), i.b(0)) == op(Compose, &r(i.c(0), i.b(0)), i.c(1)),
    },
    ActionRow {
        law: "b·(C • C′) = b·C • C′",
        sorts: &[B, C, C],
        holds: |i| l(i.b(0), &op(Merge, i.c(0), i.c(1))) == op(Merge, &l(i.b(0), i.c(0)), i.c(1)),
    },
    ActionRow {
        law: "(C • C′)·b = (C·b) • (C′·b)",
        sorts: &[B, C, C],
        holds: |i| {
            r(&op(Merge, i.c(0), i.c(1)), i.b(0)) == op(Merge, &r(i.c(0), i.b(0)), &r(i.c(1), i.b(0)))
        },
    },
    ActionRow {
        law: "b·(C / C′) = C / (C′·b)",
        sorts: &[B, C, C],
        holds: |i| l(i.b(0), &op(Quotient, i.c(0), i.c(1))) == op(Quotient, i.c(0), &r(i.c(1), i.b(0))),
    },
    ActionRow {
        law: "b·(C / C′) = (b·C) / C′",
        sorts: &[B, C, C],
        holds: |i| l(i.b(0), &op(Quotient, i.c(0), i.c(1))) == op(Quotient, &l(i.b(0), i.c(0)), i.c(1)),
    },
    ActionRow {
        law: "(C / C′)·b = (C·b) / (b·C′)",
        sorts: &[B, C, C],
        holds: |i| {
            r(&op(Quotient, i.c(0), i.c(1)), i.b(0)) == op(Quotient, &r(i.c(0), i.b(0)), &l(i.b(0), i.c(1)))
        },
    },
    ActionRow {
        law: "b·(C ÷ C′) = (b·C) ÷ (C′·b)",
        sorts: &[B, C, C],
        holds: |i| {
            l(i.b(0), &op(Separate, i.c(0), i.c(1))) == op(Separate, &l(i.b(0), i.c(0)), &r(i.c(1), i.b(0)))
        },
    },
    ActionRow {
        law: "(C ÷ C′)·b = (C·b) ÷ C′",
        sorts: &[B, C, C],
        holds: |i| r(&op(Separate, i.c(0), i.c(1)), i.b(0)) == op(Separate, &r(i.c(0), i.b(0)), i.c(1)),
    },
    ActionRow {
        law: "(C ÷ C′)·b = C ÷ (b·C′)",
        sorts: &[B, C, C],
        holds: |i| r(&op(Separate, i.c(0), i.c(1)), i.b(0)) == op(Separate, i.c(0), &l(i.b(0), i.c(1))),
    },
    // implication and coimplication take the antecedent C′ = c(1) first
    ActionRow {
        law: "b·(C′ → C) = C′ → b·C",
        sorts: &[B, C, C],
        holds: |i| {
            l(i.b(0), &op(Implication, i.c(1), i.c(0))) == op(Implication, i.c(1), &l(i.b(0), i.c(0)))
        },
    },
    ActionRow {
        law: "b·(C′ → C) = C′·b → C",
        sorts: &[B, C, C],
        holds: |i| {
            l(i.b(0), &op(Implication, i.c(1), i.c(0))) == op(Implication, &r(i.c(1), i.b(0)), i.c(0))
        },
    },
    ActionRow {
        law: "(C′ → C)·b = b·C′ → C·b",
        sorts: &[B, C, C],
        holds: |i| {
            r(&op(Implication, i.c(1), i.c(0)), i.b(0))
                == op(Implication, &l(i.b(0), i.c(1)), &r(i.c(0), i.b(0)))
        },
    },
    ActionRow {
        law: "b·(C′ ↛ C) = C′·b ↛ b·C",
        sorts: &[B, C, C],
        holds: |i| {
            l(i.b(0), &op(Coimplication, i.c(1), i.c(0)))
                == op(Coimplication, &r(i.c(1), i.b(0)), &l(i.b(0), i.c(0)))
        },
    },
    ActionRow {
        law: "(C′ ↛ C)·b = C′ ↛ C·b",
        sorts: &[B, C, C],
        holds: |i| {
            r(&op(Coimplication, i.c(1), i.c(0)), i.b(0)) == op(Coimplication, i.c(1), &r(i.c(0), i.b(0)))
        },
    },
    ActionRow {
        law: "(C′ ↛ C)·b = b·C′ ↛ C",
        sorts: &[B, C, C],
        holds: |i| {
            r(&op(Coimplication, i.c(1), i.c(0)), i.b(0)) == op(Coimplication, &l(i.b(0), i.c(1)), i.c(0))
        },
    },
];

fn witness(sorts: &[Sort], i: &Instance<'_>) -> Witness {
    let (mut nb, mut nc) = (0, 0);
    let mut w = Witness::new();
    for sort in sorts {
        match sort {
            Sort::Element => {
                w = w.element(["b", "b′"][nb], i.b(nb));
                nb += 1;
            }
            Sort::Contract => {
                w = w.contract(["C", "C′"][nc], i.c(nc));
                nc += 1;
            }
        }
    }
    w
}

/// One law per row of [`ACTION_ROWS`], each quantified over exactly the
/// variables it mentions.
pub fn run_action_suite(domain: &Domain) -> SuiteReport {
    let mut report = SuiteReport::new("actions", domain.algebra().atom_count());
    for row in ACTION_ROWS {
        let mut check = LawCheck::new(row.law);
        domain.each(row.sorts, |i| check.record((row.holds)(i), || witness(row.sorts, i)));
        report.push(check.finish(Status::Pass));
    }
    report
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
        let x = alg.atom("x").unwrap();
        let c = Contract::new(alg.top(), x.clone()).unwrap();
        assert_eq!(act_left(&x, &c).unwrap(), Contract::new(x.clone(), alg.top()).unwrap());
        assert_eq!(act_right(&Contract::identity(&alg), &x).unwrap(), c);
        for c in crate::contract::all_contracts(&alg) {
            assert_eq!(act_left(&alg.top(), &c).unwrap(), c);
            assert_eq!(act_right(&c, &alg.top()).unwrap(), c);
        }
        for b in alg.elements() {
            assert_eq!(act_left(&b, &Contract::one(&alg)).unwrap(), Contract::one(&alg));
        }
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let other = Algebra::bitset(&["q"]).unwrap();
        assert_eq!(act_left(&other.top(), &Contract::one(&xy())), Err(AlgebraError::MixedAlgebra));
        assert_eq!(act_right(&Contract::one(&xy()), &other.top()), Err(AlgebraError::MixedAlgebra));
    }

    #[test]
    fn every_row_holds_at_two_atoms() {
        let d = Domain::exhaustive(&Algebra::numbered(2, Backend::Bitset).unwrap());
        let report = run_action_suite(&d);
        assert_eq!(report.laws.len(), 29);
        assert!(report.ok(), "{}", report.to_text());
        let assoc = report.law("(b ∧ b′)·C = b·(b′·C)").unwrap();
        assert_eq!(assoc.instances, 4 * 4 * 9);
    }
}
