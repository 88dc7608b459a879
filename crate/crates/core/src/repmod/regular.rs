//! Hom into the regular module.
//!
//! For a left module `M`, `R(M) = Hom_C(M, A)` is a right module graded by
//! `R(M)(i) = Hom_C(M, Ae_i)`, with `f: j -> i` acting by right
//! multiplication `Ae_i -> Ae_j`. For a right module it is
//! `Hom_{C^op}(M, A)`, a left module. Both cases are the same computation
//! over the view of the category in which `M` is a left module.

use std::sync::Arc;

use super::{free_module, CatModule, HomSpace, ModuleHom};
use crate::eicat::Obj;
use crate::exactla::{ExactMatrix, Rational};

pub struct RegularDual {
    /// `R(M)`, on the opposite side from `M`.
    pub module: CatModule,
    /// `Hom(M, free module at i)` for every object `i`.
    spaces: Vec<HomSpace>,
}

impl RegularDual {
    pub fn space(&self, i: Obj) -> &HomSpace {
        &self.spaces[i.0]
    }
}

impl CatModule {
    /// A structurally equal copy sharing the presentation but no other
    /// cache, so cached data may refer to it without forming a cycle.
    fn detached(&self) -> CatModule {
        let copy = CatModule::from_parts(
            self.cat().clone(),
            self.side(),
            self.dims().to_vec(),
            self.actions().to_vec(),
        );
        let _ = copy.0.presentation.set(self.presentation());
        copy
    }
}

/// `R(M)` together with the hom-spaces it is assembled from. Cached on `M`.
pub fn regular_dual(m: &CatModule) -> Arc<RegularDual> {
    m.regular_cache()
        .get_or_init(|| Arc::new(compute(m)))
        .clone()
}

fn compute(m: &CatModule) -> RegularDual {
    let cat = m.cat();
    let view = m.view();
    let source = m.detached();
    let spaces: Vec<HomSpace> = cat
        .objects()
        .map(|i| {
            let free = free_module(cat, m.side(), i);
            HomSpace::new(&source, &free).expect("same category and side")
        })
        .collect();
    let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
    let pres = source.presentation();
    // For a view-morphism f: j -> i, right multiplication sends the basis
    // element h of Hom(i, k) to h∘f in Hom(j, k). Apply it generator by
    // generator to the stacked images.
    let action = cat
        .morphisms()
        .map(|f| {
            let (j, i) = (view.src(f), view.dst(f));
            let from = &spaces[i.0];
            let to = &spaces[j.0];
            let cols: Vec<Vec<Rational>> = (0..from.dim())
                .map(|b| {
                    let x = from.image_basis().column(b);
                    let mut y = Vec::new();
                    for (g, (k, _)) in pres.generators.iter().enumerate() {
                        let seg = &x[from.offsets()[g]..];
                        let mut out = vec![Rational::zero(); view.hom(j, *k).len()];
                        for (p, &h) in view.hom(i, *k).iter().enumerate() {
                            if !seg[p].is_zero() {
                                out[view.pos(view.compose(h, f))] += &seg[p];
                            }
                        }
                        y.extend(out);
                    }
                    to.coordinates_of_images(&y)
                        .expect("right multiplication preserves naturality")
                })
                .collect();
            ExactMatrix::from_columns(dims[j.0], &cols)
        })
        .collect();
    let module = CatModule::from_parts(cat.clone(), m.side().flip(), dims, action);
    RegularDual { module, spaces }
}

/// `R(φ): R(M') -> R(M)` for `φ: M -> M'`, precomposition with `φ`.
pub fn regular_map(phi: &ModuleHom) -> ModuleHom {
    let src = regular_dual(phi.source());
    let tgt = regular_dual(phi.target());
    let pres = phi.source().presentation();
    let blocks = phi
        .source()
        .cat()
        .objects()
        .map(|i| {
            let from = tgt.space(i);
            let to = src.space(i);
            let cols: Vec<Vec<Rational>> = from
                .basis()
                .iter()
                .map(|psi| {
                    let mut y = Vec::new();
                    for (k, v) in &pres.generators {
                        y.extend(psi.block(*k).mul_vec(&phi.block(*k).mul_vec(v)));
                    }
                    to.coordinates_of_images(&y).expect("composite is natural")
                })
                .collect();
            ExactMatrix::from_columns(to.dim(), &cols)
        })
        .collect();
    ModuleHom::from_parts(tgt.module.clone(), src.module.clone(), blocks)
}

/// Evaluation `M -> R(R(M))`, sending `m ∈ M(k)` to `ψ ↦ ψ_k(m)`.
pub fn double_dual_map(m: &CatModule) -> ModuleHom {
    let first = regular_dual(m);
    let second = regular_dual(&first.module);
    let cat = m.cat();
    let view = m.view();
    let rm = &first.module;
    let rm_pres = rm.presentation();
    // Full blocks of every basis hom M -> free module at i.
    let bases: Vec<Vec<ModuleHom>> = cat.objects().map(|i| first.space(i).basis()).collect();
    let blocks = cat
        .objects()
        .map(|k| {
            let to = second.space(k);
            let cols: Vec<Vec<Rational>> = (0..m.dim(k))
                .map(|c| {
                    let mut y = Vec::new();
                    for (i, u) in &rm_pres.generators {
                        // Σ_b u[b] ψ_b,k(e_c), a vector in span Hom(i, k).
                        let mut out = vec![Rational::zero(); view.hom(*i, k).len()];
                        for (b, coeff) in u.iter().enumerate() {
                            if coeff.is_zero() {
                                continue;
                            }
                            let blk = bases[i.0][b].block(k);
                            for (r, o) in out.iter_mut().enumerate() {
                                let a = blk.get(r, c);
                                if !a.is_zero() {
                                    *o += &(coeff * a);
                                }
                            }
                        }
                        y.extend(out);
                    }
                    to.coordinates_of_images(&y).expect("evaluation is natural")
                })
                .collect();
            ExactMatrix::from_columns(to.dim(), &cols)
        })
        .collect();
    ModuleHom::from_parts(m.clone(), second.module.clone(), blocks)
}
