//! Seeded random finite-dimensional modules.
//!
//! Modules are sub- and quotient modules of small direct sums of free,
//! cofree, simple and trivial modules, so every sample is functorial by
//! construction. All draws come from one ChaCha stream.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eicat::{FiniteEICategory, Obj};
use crate::exactla::Rational;
use crate::repmod::{
    direct_sum, free_module, simple_module, submodule_generated, trivial_module, CatModule,
    ChainComplex, Side,
};

pub const DEFAULT_MAX_DIM: usize = 3;

const ATTEMPTS: usize = 64;

pub struct ModuleSampler {
    rng: ChaCha8Rng,
    max_dim: usize,
}

impl ModuleSampler {
    pub fn new(seed: u64) -> Self {
        ModuleSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_dim: DEFAULT_MAX_DIM,
        }
    }

    /// Independent stream `stream` under the same seed.
    pub fn for_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        ModuleSampler {
            rng,
            max_dim: DEFAULT_MAX_DIM,
        }
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim.max(1);
        self
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Nonzero vector with entries in `-2..=2`.
    pub fn vector(&mut self, n: usize) -> Vec<Rational> {
        loop {
            let v: Vec<i64> = (0..n).map(|_| self.rng.random_range(-2..=2)).collect();
            if n == 0 || v.iter().any(|&x| x != 0) {
                return v.into_iter().map(Rational::from_integer).collect();
            }
        }
    }

    fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        items[self.rng.random_range(0..items.len())].clone()
    }

    fn blocks(&self, cat: &Arc<FiniteEICategory>, side: Side) -> Vec<CatModule> {
        let mut out = vec![trivial_module(cat, side)];
        for i in cat.objects() {
            out.push(simple_module(cat, side, i));
            out.push(free_module(cat, side, i));
            out.push(free_module(cat, side.flip(), i).dualize());
        }
        // Sub/quotients of larger blocks rarely fit under the bound.
        let limit = 2 * self.max_dim;
        out.retain(|m| !m.is_zero() && m.dims().iter().all(|&d| d <= limit));
        out
    }

    /// Random generating vectors at random objects of the support.
    fn generators(&mut self, v: &CatModule) -> Vec<(Obj, Vec<Rational>)> {
        let support = v.support();
        let count = self.rng.random_range(1..=2);
        (0..count)
            .map(|_| {
                let i = self.pick(&support);
                (i, self.vector(v.dim(i)))
            })
            .collect()
    }

    /// A module with every `dim V(i) <= max_dim`. Usually nonzero.
    pub fn module(&mut self, cat: &Arc<FiniteEICategory>, side: Side) -> CatModule {
        let blocks = self.blocks(cat, side);
        for _ in 0..ATTEMPTS {
            let count = self.rng.random_range(1..=2);
            let parts: Vec<CatModule> = (0..count).map(|_| self.pick(&blocks)).collect();
            let sum = direct_sum(&parts).expect("blocks share a category").module;
            let candidate = match self.rng.random_range(0..3) {
                0 => sum,
                1 => {
                    let gens = self.generators(&sum);
                    submodule_generated(&sum, &gens).expect("vectors fit").0
                }
                _ => {
                    let gens = self.generators(&sum);
                    let (_, incl) = submodule_generated(&sum, &gens).expect("vectors fit");
                    incl.cokernel().0
                }
            };
            if !candidate.is_zero() && candidate.dims().iter().all(|&d| d <= self.max_dim) {
                return candidate;
            }
        }
        let objects: Vec<Obj> = cat.objects().collect();
        let i = self.pick(&objects);
        simple_module(cat, side, i)
    }

    /// A random module divided by the submodule generated by its values at
    /// the top level, so it vanishes there.
    pub fn module_vanishing_at_top(
        &mut self,
        cat: &Arc<FiniteEICategory>,
        side: Side,
    ) -> CatModule {
        let v = self.module(cat, side);
        let all: Vec<Obj> = cat.objects().collect();
        let top = cat.maximal_objects(&all);
        let gens: Vec<(Obj, Vec<Rational>)> = top
            .iter()
            .flat_map(|&i| {
                let n = v.dim(i);
                (0..n).map(move |k| {
                    let mut e = vec![Rational::zero(); n];
                    e[k] = Rational::one();
                    (i, e)
                })
            })
            .collect();
        let (_, incl) = submodule_generated(&v, &gens).expect("unit vectors fit");
        incl.cokernel().0
    }

    /// `0 -> K -> V -> V/K -> 0` with `K` generated by random vectors.
    pub fn short_exact_sequence(
        &mut self,
        cat: &Arc<FiniteEICategory>,
        side: Side,
    ) -> ChainComplex {
        let v = self.module(cat, side);
        let gens = if v.is_zero() {
            Vec::new()
        } else {
            self.generators(&v)
        };
        let (k, incl) = submodule_generated(&v, &gens).expect("vectors fit");
        let (q, proj) = incl.cokernel();
        ChainComplex::new(vec![k, v, q], vec![incl, proj]).expect("composable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::InstanceSpec;

    #[test]
    fn samples_are_valid_and_reproducible() {
        let c = Arc::new(InstanceSpec::fi(None, 3).build().unwrap());
        let mut a = ModuleSampler::new(7);
        let mut b = ModuleSampler::new(7);
        for side in [Side::Left, Side::Right] {
            for _ in 0..10 {
                let x = a.module(&c, side);
                let y = b.module(&c, side);
                assert!(x.same(&y));
                assert!(x.validate().is_ok());
                assert_eq!(x.side(), side);
                assert!(x.dims().iter().all(|&d| d <= DEFAULT_MAX_DIM));
            }
        }
    }

    #[test]
    fn vanishing_and_sequences() {
        let c = Arc::new(InstanceSpec::vi(2, 2).build().unwrap());
        let top = c.object("2").unwrap();
        let mut s = ModuleSampler::new(11);
        for _ in 0..5 {
            let v = s.module_vanishing_at_top(&c, Side::Left);
            assert!(v.validate().is_ok());
            assert_eq!(v.dim(top), 0);
            let ses = s.short_exact_sequence(&c, Side::Left);
            assert!(ses.is_exact());
        }
    }
}
