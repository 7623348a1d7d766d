//! Quantification domains for law suites: every tuple of a carrier, or a
//! reproducible random sample of tuples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolalg::{Algebra, AlgebraError, Element};
use crate::contract::{all_contracts, Contract, ContractOp};

/// Seed used whenever a caller does not supply one.
pub const DEFAULT_SEED: u64 = 0xA6C;

/// Random tuples drawn per law in sampled mode.
pub const DEFAULT_SAMPLES: usize = 4096;

/// Largest algebra quantified exhaustively by [`Domain::for_algebra`].
pub const EXHAUSTIVE_ATOMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Random { seed: u64, samples: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    Element,
    Contract,
}

/// One instance of a quantified law: the chosen elements and contracts, in
/// the order their sorts were requested.
pub struct Instance<'a> {
    domain: &'a Domain,
    elements: Vec<usize>,
    contracts: Vec<usize>,
}

impl Instance<'_> {
    pub fn b(&self, k: usize) -> &Element {
        &self.domain.elements[self.elements[k]]
    }

    pub fn c(&self, k: usize) -> &Contract {
        &self.domain.contracts[self.contracts[k]]
    }
}

#[derive(Debug, Clone)]
pub struct Domain {
    algebra: Algebra,
    elements: Vec<Element>,
    contracts: Vec<Contract>,
    sampling: Sampling,
}

impl Domain {
    pub fn new(algebra: &Algebra, sampling: Sampling) -> Domain {
        Domain {
            algebra: algebra.clone(),
            elements: algebra.elements().collect(),
            contracts: all_contracts(algebra),
            sampling,
        }
    }

    pub fn exhaustive(algebra: &Algebra) -> Domain {
        Self::new(algebra, Sampling::Exhaustive)
    }

    /// Exhaustive up to [`EXHAUSTIVE_ATOMS`] atoms, sampled with `seed` above.
    pub fn for_algebra(algebra: &Algebra, seed: u64) -> Domain {
        let sampling = if algebra.atom_count() <= EXHAUSTIVE_ATOMS {
            Sampling::Exhaustive
        } else {
            Sampling::Random {
                seed,
                samples: DEFAULT_SAMPLES,
            }
        };
        Self::new(algebra, sampling)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn contracts(&self) -> &[Contract] {
        &self.contracts
    }

    pub fn sampling(&self) -> Sampling {
        self.sampling
    }

    /// Calls `f` with index tuples into carriers of the given sizes. Sampled
    /// domains fall back to exhaustive enumeration when the sample would not
    /// be smaller.
    pub fn each_index(&self, sizes: &[usize], mut f: impl FnMut(&[usize])) {
        let total = sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
        match self.sampling {
            Sampling::Random { seed, samples } if total.is_none_or(|t| t > samples) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut idx = vec![0; sizes.len()];
                for _ in 0..samples {
                    for (slot, &n) in idx.iter_mut().zip(sizes) {
                        *slot = rng.gen_range(0..n);
                    }
                    f(&idx);
                }
            }
            _ => {
                if sizes.contains(&0) {
                    return;
                }
                let mut idx = vec![0; sizes.len()];
                'outer: loop {
                    f(&idx);
                    for pos in (0..sizes.len()).rev() {
                        idx[pos] += 1;
                        if idx[pos] < sizes[pos] {
                            continue 'outer;
                        }
                        idx[pos] = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn each(&self, sorts: &[Sort], mut f: impl FnMut(&Instance<'_>)) {
        let sizes: Vec<usize> = sorts
            .iter()
            .map(|s| match s {
                Sort::Element => self.elements.len(),
                Sort::Contract => self.contracts.len(),
            })
            .collect();
        self.each_index(&sizes, |idx| {
            let mut inst = Instance {
                domain: self,
                elements: Vec::new(),
                contracts: Vec::new(),
            };
            for (sort, &i) in sorts.iter().zip(idx) {
                match sort {
                    Sort::Element => inst.elements.push(i),
                    Sort::Contract => inst.contracts.push(i),
                }
            }
            f(&inst);
        });
    }

    /// Contracts `k` at a time.
    pub fn each_contracts(&self, k: usize, mut f: impl FnMut(&[&Contract])) {
        let sizes = vec![self.contracts.len(); k];
        self.each_index(&sizes, |idx| {
            let cs: Vec<&Contract> = idx.iter().map(|&i| &self.contracts[i]).collect();
            f(&cs);
        });
    }
}

fn same<T>(r: Result<T, AlgebraError>) -> T {
    r.expect("law operands share one algebra")
}

/// `op` applied to operands known to share an algebra.
pub fn apply(op: ContractOp, x: &Contract, y: &Contract) -> Contract {
    same(op.apply(x, y))
}

pub fn refines(x: &Contract, y: &Contract) -> bool {
    same(x.refines(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::Backend;

    #[test]
    fn exhaustive_visits_every_tuple_once() {
        let alg = Algebra::numbered(1, Backend::Bitset).unwrap();
        let d = Domain::exhaustive(&alg);
        let mut seen = Vec::new();
        d.each_index(&[2, 3], |idx| seen.push(idx.to_vec()));
        assert_eq!(seen.len(), 6);
        seen.dedup();
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 0]);
        assert_eq!(seen[5], vec![1, 2]);
    }

    #[test]
    fn sampled_is_reproducible_and_bounded() {
        let alg = Algebra::numbered(4, Backend::Bitset).unwrap();
        let d = Domain::for_algebra(&alg, 7);
        let mut a = Vec::new();
        let mut b = Vec::new();
        d.each(&[Sort::Contract, Sort::Contract, Sort::Contract], |i| a.push(i.c(2).clone()));
        d.each(&[Sort::Contract, Sort::Contract, Sort::Contract], |i| b.push(i.c(2).clone()));
        assert_eq!(a.len(), DEFAULT_SAMPLES);
        assert_eq!(a, b);
        let mut small = 0;
        d.each(&[Sort::Element], |_| small += 1);
        assert_eq!(small, 16);
    }

    #[test]
    fn instance_accessors_follow_sort_order() {
        let alg = Algebra::numbered(1, Backend::Bitset).unwrap();
        let d = Domain::exhaustive(&alg);
        let mut count = 0;
        d.each(&[Sort::Contract, Sort::Element, Sort::Contract], |i| {
            let _ = (i.c(0), i.b(0), i.c(1));
            count += 1;
        });
        assert_eq!(count, 3 * 2 * 3);
    }
}
