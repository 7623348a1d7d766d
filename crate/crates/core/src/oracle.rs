//! Brute-force ground truth for the contract operations.
//!
//! Nothing here calls the closed forms of the quotient, separation,
//! implication or coimplication. In semantic mode (up to three atoms) the
//! order, lattice operations, composition and merging are themselves derived
//! from environment and implementation sets, with components composed by
//! meet. Algebraic mode (four atoms) falls back on the assumption/guarantee
//! order and the composition, merging, conjunction and disjunction formulas
//! as checking predicates.

use std::collections::HashMap;

use thiserror::Error;

use crate::boolalg::Algebra;
use crate::contract::{Contract, ContractOp};

/// Largest algebra the oracle enumerates.
pub const MAX_ORACLE_ATOMS: usize = 4;

/// Largest algebra for which semantic mode is the default.
pub const MAX_SEMANTIC_ATOMS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{atoms} atoms is too many to enumerate (limit {limit})")]
    TooLarge { atoms: usize, limit: usize },
    #[error("no unique {what} for {operands}")]
    NoExtremum { what: &'static str, operands: String },
    #[error("contract does not belong to the enumerated algebra")]
    ForeignContract,
}

/// All canonical contracts of an algebra, lexicographic on `(a, g)` masks.
#[derive(Debug, Clone)]
pub struct ContractEnumeration {
    algebra: Algebra,
    contracts: Vec<Contract>,
}

impl ContractEnumeration {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn contracts(&self) -> &[Contract] {
        &self.contracts
    }

    pub fn len(&self) -> usize {
        self.contracts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contracts.is_empty()
    }
}

pub fn enumerate(algebra: &Algebra) -> Result<ContractEnumeration, OracleError> {
    let atoms = algebra.atom_count();
    if atoms > MAX_ORACLE_ATOMS {
        return Err(OracleError::TooLarge {
            atoms,
            limit: MAX_ORACLE_ATOMS,
        });
    }
    let full = algebra.full_mask();
    let mut contracts = Vec::new();
    for a in 0..=full {
        for g in 0..=full {
            if a | g == full {
                let c = Contract::from_masks(algebra, a, g).expect("a | g = top");
                contracts.push(c);
            }
        }
    }
    Ok(ContractEnumeration {
        algebra: algebra.clone(),
        contracts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMode {
    /// Order and operations from environment/implementation sets.
    Semantic,
    /// Closed-form order and lattice/composition/merging predicates.
    Algebraic,
}

/// The four residual-style operations, each characterized as an extremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Residual {
    /// Largest `x` with `c' || x <= c`.
    Quotient,
    /// Smallest `x` with `c <= c' • x`.
    Separation,
    /// Largest `x` with `x ∧ c' <= c`.
    Implication,
    /// Smallest `x` with `x ∨ c' >= c`.
    Coimplication,
}

impl Residual {
    pub const ALL: [Residual; 4] = [
        Residual::Quotient,
        Residual::Separation,
        Residual::Implication,
        Residual::Coimplication,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Residual::Quotient => "quotient",
            Residual::Separation => "separation",
            Residual::Implication => "implication",
            Residual::Coimplication => "coimplication",
        }
    }

    /// The closed-form operation this residual certifies, and whether its
    /// arguments are `(c, c')` (false) or `(c', c)` (true).
    pub fn closed_form(self) -> (ContractOp, bool) {
        match self {
            Residual::Quotient => (ContractOp::Quotient, false),
            Residual::Separation => (ContractOp::Separate, false),
            Residual::Implication => (ContractOp::Implication, true),
            Residual::Coimplication => (ContractOp::Coimplication, true),
        }
    }
}

/// Precomputed brute-force tables over one enumeration.
pub struct Oracle {
    enumeration: ContractEnumeration,
    mode: OrderMode,
    index: HashMap<(u64, u64), usize>,
    leq: Vec<bool>,
    tables: Tables,
}

struct Tables {
    glb: Vec<Option<usize>>,
    lub: Vec<Option<usize>>,
    compose: Option<Vec<Option<usize>>>,
    merge: Option<Vec<Option<usize>>>,
}

/// Environments of `(a, _)`: elements below `a`, as a set over element masks.
fn environments(a: u64, full: u64) -> u64 {
    (0..=full).filter(|e| e & !a == 0).fold(0, |acc, e| acc | (1 << e))
}

/// Implementations of `(a, g)`: elements `m` with `m & e <= g` for all environments `e`.
fn implementations(a: u64, g: u64, full: u64) -> u64 {
    let envs = environments(a, full);
    (0..=full)
        .filter(|m| members(envs).all(|e| (m & e) & !g == 0))
        .fold(0, |acc, m| acc | (1 << m))
}

fn members(set: u64) -> impl Iterator<Item = u64> {
    (0..64).filter(move |i| set & (1 << i) != 0)
}

fn contains(set: u64, element: u64) -> bool {
    set & (1 << element) != 0
}

fn subset(x: u64, y: u64) -> bool {
    x & !y == 0
}

impl Oracle {
    pub fn new(algebra: &Algebra) -> Result<Oracle, OracleError> {
        let mode = if algebra.atom_count() <= MAX_SEMANTIC_ATOMS {
            OrderMode::Semantic
        } else {
            OrderMode::Algebraic
        };
        Self::with_mode(algebra, mode)
    }

    pub fn with_mode(algebra: &Algebra, mode: OrderMode) -> Result<Oracle, OracleError> {
        let enumeration = enumerate(algebra)?;
        let n = enumeration.len();
        let full = algebra.full_mask();
        let index = enumeration
            .contracts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.masks(), i))
            .collect();

        let masks: Vec<(u64, u64)> = enumeration.contracts.iter().map(Contract::masks).collect();
        let envs: Vec<u64> = masks.iter().map(|&(a, _)| environments(a, full)).collect();
        let impls: Vec<u64> = masks.iter().map(|&(a, g)| implementations(a, g, full)).collect();

        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = match mode {
                    // every implementation of i implements j; every environment of j is one of i
                    OrderMode::Semantic => subset(impls[i], impls[j]) && subset(envs[j], envs[i]),
                    OrderMode::Algebraic => enumeration.contracts[i]
                        .refines(&enumeration.contracts[j])
                        .expect("same algebra"),
                };
            }
        }

        let mut oracle = Oracle {
            enumeration,
            mode,
            index,
            leq,
            tables: Tables {
                glb: Vec::new(),
                lub: Vec::new(),
                compose: None,
                merge: None,
            },
        };
        oracle.tables = oracle.build_tables(&masks, &envs, &impls);
        Ok(oracle)
    }

    fn build_tables(&self, masks: &[(u64, u64)], envs: &[u64], impls: &[u64]) -> Tables {
        let semantic = self.mode == OrderMode::Semantic;
        let n = self.len();
        let full = self.algebra().full_mask();
        let all: Vec<usize> = (0..n).collect();
        let mut glb = Vec::with_capacity(n * n);
        let mut lub = Vec::with_capacity(n * n);
        let mut compose = Vec::with_capacity(n * n);
        let mut merge = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let lower: Vec<usize> = all.iter().copied().filter(|&x| self.le(x, i) && self.le(x, j)).collect();
                let upper: Vec<usize> = all.iter().copied().filter(|&x| self.le(i, x) && self.le(j, x)).collect();
                glb.push(self.maximum(&lower));
                lub.push(self.minimum(&upper));
                if !semantic {
                    continue;
                }

                // Composition principle: the smallest contract such that, for all
                // implementations m1, m2 of the operands and environments e of the
                // result, m1 & m2 implements it, m1 & e is an environment of j and
                // m2 & e is an environment of i.
                let admissible: Vec<usize> = all
                    .iter()
                    .copied()
                    .filter(|&c| {
                        members(impls[i]).all(|m1| {
                            members(impls[j]).all(|m2| {
                                contains(impls[c], m1 & m2)
                                    && members(envs[c])
                                        .all(|e| contains(envs[j], m1 & e) && contains(envs[i], m2 & e))
                            })
                        })
                    })
                    .collect();
                compose.push(self.minimum(&admissible));

                // Merging: the canonical contract equivalent to the raw pair
                // (a & a', g & g').
                let (a, g) = (masks[i].0 & masks[j].0, masks[i].1 & masks[j].1);
                let env = environments(a, full);
                let imp = implementations(a, g, full);
                let equivalent: Vec<usize> = all
                    .iter()
                    .copied()
                    .filter(|&c| envs[c] == env && impls[c] == imp)
                    .collect();
                merge.push(match equivalent.as_slice() {
                    [only] => Some(*only),
                    _ => None,
                });
            }
        }
        Tables {
            glb,
            lub,
            compose: semantic.then_some(compose),
            merge: semantic.then_some(merge),
        }
    }

    pub fn mode(&self) -> OrderMode {
        self.mode
    }

    pub fn algebra(&self) -> &Algebra {
        self.enumeration.algebra()
    }

    pub fn enumeration(&self) -> &ContractEnumeration {
        &self.enumeration
    }

    pub fn contracts(&self) -> &[Contract] {
        self.enumeration.contracts()
    }

    pub fn len(&self) -> usize {
        self.enumeration.len()
    }

    pub fn is_empty(&self) -> bool {
        self.enumeration.is_empty()
    }

    fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    fn idx(&self, c: &Contract) -> Result<usize, OracleError> {
        if c.algebra() != self.algebra() {
            return Err(OracleError::ForeignContract);
        }
        self.index.get(&c.masks()).copied().ok_or(OracleError::ForeignContract)
    }

    fn maximum(&self, set: &[usize]) -> Option<usize> {
        let mut tops = set.iter().copied().filter(|&m| set.iter().all(|&x| self.le(x, m)));
        let top = tops.next()?;
        tops.next().is_none().then_some(top)
    }

    fn minimum(&self, set: &[usize]) -> Option<usize> {
        let mut bottoms = set.iter().copied().filter(|&m| set.iter().all(|&x| self.le(m, x)));
        let bottom = bottoms.next()?;
        bottoms.next().is_none().then_some(bottom)
    }

    fn found(&self, what: &'static str, operands: &[&Contract], idx: Option<usize>) -> Result<Contract, OracleError> {
        match idx {
            Some(i) => Ok(self.contracts()[i].clone()),
            None => Err(OracleError::NoExtremum {
                what,
                operands: operands.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(", "),
            }),
        }
    }

    /// Refinement as computed by this oracle.
    pub fn refines(&self, x: &Contract, y: &Contract) -> Result<bool, OracleError> {
        Ok(self.le(self.idx(x)?, self.idx(y)?))
    }

    fn cell(&self, table: &[Option<usize>], i: usize, j: usize) -> Option<usize> {
        table[i * self.len() + j]
    }

    fn all_where(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&x| keep(x)).collect()
    }

    fn glb_idx(&self, i: usize, j: usize) -> Option<usize> {
        self.cell(&self.tables.glb, i, j)
    }

    fn lub_idx(&self, i: usize, j: usize) -> Option<usize> {
        self.cell(&self.tables.lub, i, j)
    }

    fn closed_idx(&self, op: ContractOp, i: usize, j: usize) -> Option<usize> {
        let cs = self.contracts();
        let c = op.apply(&cs[i], &cs[j]).expect("same algebra");
        self.index.get(&c.masks()).copied()
    }

    fn compose_idx(&self, i: usize, j: usize) -> Option<usize> {
        match &self.tables.compose {
            Some(t) => self.cell(t, i, j),
            None => self.closed_idx(ContractOp::Compose, i, j),
        }
    }

    fn merge_idx(&self, i: usize, j: usize) -> Option<usize> {
        match &self.tables.merge {
            Some(t) => self.cell(t, i, j),
            None => self.closed_idx(ContractOp::Merge, i, j),
        }
    }

    /// Greatest lower bound found by search over the order.
    pub fn glb(&self, x: &Contract, y: &Contract) -> Result<Contract, OracleError> {
        let idx = self.glb_idx(self.idx(x)?, self.idx(y)?);
        self.found("greatest lower bound", &[x, y], idx)
    }

    /// Least upper bound found by search over the order.
    pub fn lub(&self, x: &Contract, y: &Contract) -> Result<Contract, OracleError> {
        let idx = self.lub_idx(self.idx(x)?, self.idx(y)?);
        self.found("least upper bound", &[x, y], idx)
    }

    pub fn compose(&self, x: &Contract, y: &Contract) -> Result<Contract, OracleError> {
        let idx = self.compose_idx(self.idx(x)?, self.idx(y)?);
        self.found("composite", &[x, y], idx)
    }

    pub fn merge(&self, x: &Contract, y: &Contract) -> Result<Contract, OracleError> {
        let idx = self.merge_idx(self.idx(x)?, self.idx(y)?);
        self.found("merger", &[x, y], idx)
    }

    /// The extremal contract defining `kind` for `c` and `c2`. For
    /// `Implication` and `Coimplication`, `c2` is the antecedent, so
    /// `residual(Implication, c, c2)` is `c2 → c`.
    pub fn residual(&self, kind: Residual, c: &Contract, c2: &Contract) -> Result<Contract, OracleError> {
        let (i, j) = (self.idx(c)?, self.idx(c2)?);
        let idx = match kind {
            Residual::Quotient => {
                let sat = self.all_where(|x| self.compose_idx(j, x).is_some_and(|k| self.le(k, i)));
                self.maximum(&sat)
            }
            Residual::Separation => {
                let sat = self.all_where(|x| self.merge_idx(j, x).is_some_and(|k| self.le(i, k)));
                self.minimum(&sat)
            }
            Residual::Implication => {
                let sat = self.all_where(|x| self.glb_idx(x, j).is_some_and(|k| self.le(k, i)));
                self.maximum(&sat)
            }
            Residual::Coimplication => {
                let sat = self.all_where(|x| self.lub_idx(x, j).is_some_and(|k| self.le(i, k)));
                self.minimum(&sat)
            }
        };
        self.found(kind.name(), &[c, c2], idx)
    }
}
