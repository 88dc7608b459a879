//! Hom-spaces between modules.
//!
//! The source is replaced by a presentation: generators `v_g ∈ V(i_g)` and,
//! at every object `k`, the linear relations among the vectors `V(f) v_g`.
//! A natural transformation is then the same thing as a choice of images
//! `w_g ∈ W(i_g)` satisfying those relations, which is a much smaller system
//! than the naturality equations on all blocks at once.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CatModule, ModuleError, ModuleHom};
use crate::eicat::{Mor, Obj};
use crate::exactla::{ExactMatrix, Rational, RowReducer, Subspace};

pub(crate) struct ObjectPresentation {
    /// Spanning vectors `V(f) v_g` as (generator, morphism) pairs.
    pub pairs: Vec<(usize, Mor)>,
    /// Columns are the linear relations among the spanning vectors.
    pub relations: ExactMatrix,
    /// Pairs forming a basis of `V(k)`.
    pub basis_pairs: Vec<usize>,
    /// Inverse of the matrix whose columns are the basis pairs' vectors.
    pub inverse: ExactMatrix,
}

pub(crate) struct Presentation {
    pub generators: Vec<(Obj, Vec<Rational>)>,
    pub objects: Vec<ObjectPresentation>,
}

fn unit(n: usize, r: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[r] = Rational::one();
    v
}

impl Presentation {
    pub fn new(module: &CatModule) -> Self {
        let view = module.view();
        let cat = module.cat();
        let order = view.bottom_up_order();
        let mut generators: Vec<(Obj, Vec<Rational>)> = Vec::new();
        for &k in &order {
            let d = module.dim(k);
            if d == 0 {
                continue;
            }
            let mut span = RowReducer::new(d);
            for (i, v) in &generators {
                for &f in view.hom(*i, k) {
                    span.insert(module.action(f).mul_vec(v));
                }
            }
            for r in 0..d {
                if span.rank() == d {
                    break;
                }
                let e = unit(d, r);
                if span.contains(&e) {
                    continue;
                }
                for &a in view.hom(k, k) {
                    span.insert(module.action(a).mul_vec(&e));
                }
                generators.push((k, e));
            }
        }
        let objects = cat
            .objects()
            .map(|k| {
                let d = module.dim(k);
                let mut pairs = Vec::new();
                let mut columns = Vec::new();
                // Objects where the module vanishes still carry relations:
                // every V(f) v_g there is zero.
                for (g, (i, v)) in generators.iter().enumerate() {
                    for &f in view.hom(*i, k) {
                        pairs.push((g, f));
                        columns.push(module.action(f).mul_vec(v));
                    }
                }
                let m = ExactMatrix::from_columns(d, &columns);
                let rref = m.rref();
                let basis_pairs = rref.pivots.clone();
                debug_assert_eq!(basis_pairs.len(), d);
                let inverse = m
                    .select_columns(&basis_pairs)
                    .inverse()
                    .expect("pivot columns are a basis");
                ObjectPresentation {
                    relations: m.kernel_basis(),
                    pairs,
                    basis_pairs,
                    inverse,
                }
            })
            .collect();
        Presentation {
            generators,
            objects,
        }
    }
}

struct HomSolution {
    /// Offsets of each generator's image inside the unknown vector.
    offsets: Vec<usize>,
    solutions: Subspace,
}

/// The space of natural transformations `source -> target` with a canonical
/// echelon basis.
#[derive(Clone)]
pub struct HomSpace {
    source: CatModule,
    target: CatModule,
    presentation: Arc<Presentation>,
    solution: Arc<HomSolution>,
}

impl HomSpace {
    pub fn new(source: &CatModule, target: &CatModule) -> Result<Self, ModuleError> {
        source.check_compatible(target)?;
        let presentation = source.presentation();
        let mut offsets = Vec::with_capacity(presentation.generators.len());
        let mut width = 0;
        for (i, _) in &presentation.generators {
            offsets.push(width);
            width += target.dim(*i);
        }
        let mut reducer = RowReducer::new(width);
        for k in source.cat().objects() {
            let p = &presentation.objects[k.0];
            let dk = target.dim(k);
            if dk == 0 || p.relations.cols() == 0 {
                continue;
            }
            for c in 0..p.relations.cols() {
                let mut rows = vec![vec![Rational::zero(); width]; dk];
                for (idx, &(g, f)) in p.pairs.iter().enumerate() {
                    let coeff = p.relations.get(idx, c);
                    if coeff.is_zero() {
                        continue;
                    }
                    let act = target.action(f);
                    let off = offsets[g];
                    for (r, row) in rows.iter_mut().enumerate() {
                        for s in 0..act.cols() {
                            let a = act.get(r, s);
                            if !a.is_zero() {
                                row[off + s] += &(coeff * a);
                            }
                        }
                    }
                }
                for row in rows {
                    reducer.insert(row);
                }
            }
        }
        Ok(HomSpace {
            source: source.clone(),
            target: target.clone(),
            presentation,
            solution: Arc::new(HomSolution {
                offsets,
                solutions: reducer.solution_space(),
            }),
        })
    }

    pub fn source(&self) -> &CatModule {
        &self.source
    }

    pub fn target(&self) -> &CatModule {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.solution.solutions.dim()
    }

    pub(crate) fn offsets(&self) -> &[usize] {
        &self.solution.offsets
    }

    /// Columns are the generator images of the basis homs.
    pub(crate) fn image_basis(&self) -> &ExactMatrix {
        self.solution.solutions.basis()
    }

    /// Coordinates of the hom with the given generator images, trusting
    /// that they satisfy the relations.
    pub(crate) fn coordinates_of_images(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        self.solution.solutions.coordinates(x)
    }

    /// The hom determined by images of the generators, stacked.
    pub(crate) fn hom_from_images(&self, x: &[Rational]) -> ModuleHom {
        let pres = &self.presentation;
        let blocks = self
            .source
            .cat()
            .objects()
            .map(|k| {
                let p = &pres.objects[k.0];
                let dk = self.target.dim(k);
                let cols: Vec<Vec<Rational>> = p
                    .basis_pairs
                    .iter()
                    .map(|&idx| {
                        let (g, f) = p.pairs[idx];
                        let (i, _) = pres.generators[g];
                        let off = self.solution.offsets[g];
                        self.target
                            .action(f)
                            .mul_vec(&x[off..off + self.target.dim(i)])
                    })
                    .collect();
                &ExactMatrix::from_columns(dk, &cols) * &p.inverse
            })
            .collect();
        ModuleHom::from_parts(self.source.clone(), self.target.clone(), blocks)
    }

    /// The hom with the given coordinates in the canonical basis.
    pub fn hom(&self, coords: &[Rational]) -> ModuleHom {
        assert_eq!(coords.len(), self.dim());
        self.hom_from_images(&self.solution.solutions.basis().mul_vec(coords))
    }

    pub fn basis_element(&self, t: usize) -> ModuleHom {
        self.hom(&unit(self.dim(), t))
    }

    pub fn basis(&self) -> Vec<ModuleHom> {
        (0..self.dim()).map(|t| self.basis_element(t)).collect()
    }

    /// Coordinates of a natural transformation between the same modules.
    pub fn coordinates(&self, h: &ModuleHom) -> Option<Vec<Rational>> {
        if !h.source().same(&self.source) || !h.target().same(&self.target) {
            return None;
        }
        let mut x = Vec::new();
        for (i, v) in &self.presentation.generators {
            x.extend(h.block(*i).mul_vec(v));
        }
        let c = self.solution.solutions.coordinates(&x)?;
        // Coordinates only see the generators; a non-natural input could
        // still agree there.
        (self.hom(&c).blocks() == h.blocks()).then_some(c)
    }

    /// A seeded search for an invertible element. Tries basis elements, then
    /// random integer combinations.
    pub fn find_isomorphism(&self, attempts: usize, seed: u64) -> Option<ModuleHom> {
        if self.source.dims() != self.target.dims() {
            return None;
        }
        let n = self.dim();
        if n == 0 {
            return self
                .source
                .is_zero()
                .then(|| ModuleHom::zero(&self.source, &self.target));
        }
        for t in 0..n {
            let h = self.basis_element(t);
            if h.is_isomorphism() {
                return Some(h);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..attempts {
            let coords: Vec<Rational> = (0..n)
                .map(|_| Rational::from(rng.random_range(-3i64..=3)))
                .collect();
            let h = self.hom(&coords);
            if h.is_isomorphism() {
                return Some(h);
            }
        }
        None
    }
}

/// Canonical basis of `Hom(source, target)`.
pub fn hom_basis(source: &CatModule, target: &CatModule) -> Result<Vec<ModuleHom>, ModuleError> {
    Ok(HomSpace::new(source, target)?.basis())
}

/// An explicit isomorphism, if the seeded search finds one. Isomorphic
/// modules are found with overwhelming probability: non-invertible
/// combinations form a proper hypersurface.
pub fn find_isomorphism(a: &CatModule, b: &CatModule) -> Result<Option<ModuleHom>, ModuleError> {
    Ok(HomSpace::new(a, b)?.find_isomorphism(32, 0x5eed))
}
