use crate::boolalg::Algebra;
use crate::contract::{Contract, ContractOp};
use crate::quantify::{apply, refines, Domain};
use crate::report::{LawCheck, Status, SuiteReport, Witness};

pub const DISTRIBUTIVE_OPS: [ContractOp; 4] =
    [ContractOp::Conj, ContractOp::Disj, ContractOp::Compose, ContractOp::Merge];

/// Whether `row` distributes over `col`: `C ⋆ (C′ ◇ C″) = (C ⋆ C′) ◇ (C ⋆ C″)`.
/// Cells that fail carry the distinguished contracts that refute them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributivityCell {
    pub row: ContractOp,
    pub col: ContractOp,
    pub distributes: bool,
    pub counterexample: Option<[Contract; 3]>,
}

impl DistributivityCell {
    pub fn law(&self) -> String {
        let (r, c) = (self.row.symbol(), self.col.symbol());
        format!("{r} over {c}: C {r} (C′ {c} C″) = (C {r} C′) {c} (C {r} C″)")
    }
}

pub fn distributivity_cells(algebra: &Algebra) -> Vec<DistributivityCell> {
    let one = Contract::one(algebra);
    let zero = Contract::zero(algebra);
    let e = Contract::identity(algebra);
    let mut cells = Vec::new();
    for row in DISTRIBUTIVE_OPS {
        for col in DISTRIBUTIVE_OPS {
            let counterexample = match (row, col) {
                (ContractOp::Conj, ContractOp::Merge) => Some([e.clone(), one.clone(), zero.clone()]),
                (ContractOp::Disj, ContractOp::Compose) => Some([e.clone(), one.clone(), zero.clone()]),
                (ContractOp::Compose, ContractOp::Merge) => Some([one.clone(), zero.clone(), e.clone()]),
                (ContractOp::Merge, ContractOp::Compose) => Some([zero.clone(), one.clone(), e.clone()]),
                _ => None,
            };
            cells.push(DistributivityCell {
                row,
                col,
                distributes: counterexample.is_none(),
                counterexample,
            });
        }
    }
    cells
}

fn name(c: &Contract) -> &'static str {
    let alg = c.algebra();
    if *c == Contract::one(alg) {
        "1"
    } else if *c == Contract::zero(alg) {
        "0"
    } else {
        "e"
    }
}

/// Every cell over all triples, plus one law per refuted cell asserting its
/// distinguished counterexample.
pub fn distributivity_suite(domain: &Domain) -> SuiteReport {
    let mut report = SuiteReport::new("distributivity", domain.algebra().atom_count());
    let cells = distributivity_cells(domain.algebra());
    for cell in &cells {
        let mut check = LawCheck::new(cell.law());
        domain.each_contracts(3, |cs| {
            let (c, c1, c2) = (cs[0], cs[1], cs[2]);
            let lhs = apply(cell.row, c, &apply(cell.col, c1, c2));
            let rhs = apply(cell.col, &apply(cell.row, c, c1), &apply(cell.row, c, c2));
            check.record(lhs == rhs, || {
                Witness::new().contract("C", c).contract("C′", c1).contract("C″", c2)
            });
        });
        report.push(check.finish(if cell.distributes { Status::Pass } else { Status::Fail }));
    }
    for cell in &cells {
        let Some([c, c1, c2]) = &cell.counterexample else {
            continue;
        };
        let (r, o) = (cell.row.symbol(), cell.col.symbol());
        let (n, n1, n2) = (name(c), name(c1), name(c2));
        let mut check = LawCheck::new(format!("{n} {r} ({n1} {o} {n2}) ≠ ({n} {r} {n1}) {o} ({n} {r} {n2})"));
        let lhs = apply(cell.row, c, &apply(cell.col, c1, c2));
        let rhs = apply(cell.col, &apply(cell.row, c, c1), &apply(cell.row, c, c2));
        check.record(lhs != rhs, || Witness::new().contract("lhs", &lhs).contract("rhs", &rhs));
        report.push(check.finish(Status::Pass));
    }
    report
}

/// `(C₁ ∧ C₂) ⋆ (C₃ ∧ C₄) ≤ (C₁ ⋆ C₃) ∧ (C₂ ⋆ C₄)` and
/// `(C₁ ∨ C₂) ⋆ (C₃ ∨ C₄) ≥ (C₁ ⋆ C₃) ∨ (C₂ ⋆ C₄)` for each of the four operations.
pub fn semi_distributivity_suite(domain: &Domain) -> SuiteReport {
    let mut report = SuiteReport::new("semi-distributivity", domain.algebra().atom_count());
    let mut checks: Vec<(LawCheck, LawCheck)> = DISTRIBUTIVE_OPS
        .iter()
        .map(|op| {
            let s = op.symbol();
            (
                LawCheck::new(format!("(C₁ ∧ C₂) {s} (C₃ ∧ C₄) ≤ (C₁ {s} C₃) ∧ (C₂ {s} C₄)")),
                LawCheck::new(format!("(C₁ ∨ C₂) {s} (C₃ ∨ C₄) ≥ (C₁ {s} C₃) ∨ (C₂ {s} C₄)")),
            )
        })
        .collect();
    domain.each_contracts(4, |cs| {
        let meet12 = apply(ContractOp::Conj, cs[0], cs[1]);
        let meet34 = apply(ContractOp::Conj, cs[2], cs[3]);
        let join12 = apply(ContractOp::Disj, cs[0], cs[1]);
        let join34 = apply(ContractOp::Disj, cs[2], cs[3]);
        for (op, (lower, upper)) in DISTRIBUTIVE_OPS.iter().zip(checks.iter_mut()) {
            let p13 = apply(*op, cs[0], cs[2]);
            let p24 = apply(*op, cs[1], cs[3]);
            let w = || {
                Witness::new()
                    .contract("C₁", cs[0])
                    .contract("C₂", cs[1])
                    .contract("C₃", cs[2])
                    .contract("C₄", cs[3])
            };
            lower.record(
                refines(&apply(*op, &meet12, &meet34), &apply(ContractOp::Conj, &p13, &p24)),
                w,
            );
            upper.record(
                refines(&apply(ContractOp::Disj, &p13, &p24), &apply(*op, &join12, &join34)),
                w,
            );
        }
    });
    for (lower, upper) in checks {
        report.push(lower.finish(Status::Pass));
        report.push(upper.finish(Status::Pass));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::Backend;

    #[test]
    fn table_pattern_at_one_atom() {
        let d = Domain::exhaustive(&Algebra::numbered(1, Backend::Bitset).unwrap());
        let report = distributivity_suite(&d);
        assert!(report.ok(), "{}", report.to_text());
        assert_eq!(report.laws.len(), 20);
        assert_eq!(report.passed().count(), 16);
    }

    #[test]
    fn semi_distributions_at_one_atom() {
        let d = Domain::exhaustive(&Algebra::numbered(1, Backend::Bitset).unwrap());
        let report = semi_distributivity_suite(&d);
        assert!(report.ok(), "{}", report.to_text());
        assert!(report.laws.iter().all(|l| l.instances == 81));
    }
}
