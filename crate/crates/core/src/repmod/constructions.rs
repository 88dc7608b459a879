use std::sync::Arc;

use super::{CatModule, HomSpace, ModuleError, ModuleHom, Side};
use crate::eicat::{FiniteEICategory, Obj, Subcategory, View};
use crate::exactla::{ExactMatrix, Rational, Subspace};

pub fn zero_module(cat: &Arc<FiniteEICategory>, side: Side) -> CatModule {
    let action = cat.morphisms().map(|_| ExactMatrix::zeros(0, 0)).collect();
    CatModule::from_parts(cat.clone(), side, vec![0; cat.num_objects()], action)
}

/// `Ae_i` (left) or `e_iA` (right), with basis the relevant hom-set in
/// morphism-id order.
pub fn free_module(cat: &Arc<FiniteEICategory>, side: Side, i: Obj) -> CatModule {
    let view = View::new(cat, side == Side::Right);
    let dims: Vec<usize> = cat.objects().map(|j| view.hom(i, j).len()).collect();
    let action = cat
        .morphisms()
        .map(|f| {
            let (s, d) = (view.src(f), view.dst(f));
            let mut m = ExactMatrix::zeros(dims[d.0], dims[s.0]);
            for (col, &h) in view.hom(i, s).iter().enumerate() {
                m.set(view.pos(view.compose(f, h)), col, Rational::one());
            }
            m
        })
        .collect();
    CatModule::from_parts(cat.clone(), side, dims, action)
}

/// One-dimensional at `i` with trivial automorphism action, zero elsewhere.
pub fn simple_module(cat: &Arc<FiniteEICategory>, side: Side, i: Obj) -> CatModule {
    let view = View::new(cat, side == Side::Right);
    let dims: Vec<usize> = cat.objects().map(|j| usize::from(j == i)).collect();
    let action = cat
        .morphisms()
        .map(|f| {
            let (s, d) = (view.src(f), view.dst(f));
            if s == i && d == i {
                ExactMatrix::identity(1)
            } else {
                ExactMatrix::zeros(dims[d.0], dims[s.0])
            }
        })
        .collect();
    CatModule::from_parts(cat.clone(), side, dims, action)
}

/// Every space one-dimensional, every morphism acting as the identity.
pub fn trivial_module(cat: &Arc<FiniteEICategory>, side: Side) -> CatModule {
    let action = cat.morphisms().map(|_| ExactMatrix::identity(1)).collect();
    CatModule::from_parts(cat.clone(), side, vec![1; cat.num_objects()], action)
}

pub struct DirectSum {
    pub module: CatModule,
    pub injections: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

/// Panics on an empty list; there is no category to take the sum over.
pub fn direct_sum(summands: &[CatModule]) -> Result<DirectSum, ModuleError> {
    let first = summands.first().expect("direct sum of no modules");
    for s in &summands[1..] {
        first.check_compatible(s)?;
    }
    let cat = first.cat();
    let dims: Vec<usize> = cat
        .objects()
        .map(|i| summands.iter().map(|s| s.dim(i)).sum())
        .collect();
    let action = cat
        .morphisms()
        .map(|f| {
            let blocks: Vec<&ExactMatrix> = summands.iter().map(|s| s.action(f)).collect();
            ExactMatrix::block_diag(&blocks)
        })
        .collect();
    let module = CatModule::from_parts(cat.clone(), first.side(), dims.clone(), action);
    let mut offsets = vec![0usize; cat.num_objects()];
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for s in summands {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for i in cat.objects() {
            let mut a = ExactMatrix::zeros(dims[i.0], s.dim(i));
            a.set_block(offsets[i.0], 0, &ExactMatrix::identity(s.dim(i)));
            proj.push(a.transpose());
            inj.push(a);
            offsets[i.0] += s.dim(i);
        }
        injections.push(ModuleHom::from_parts(s.clone(), module.clone(), inj));
        projections.push(ModuleHom::from_parts(module.clone(), s.clone(), proj));
    }
    Ok(DirectSum {
        module,
        injections,
        projections,
    })
}

/// Submodule with the given subspace at each object, which must be stable
/// under the action. Returns it with its inclusion.
pub(crate) fn submodule_from_subspaces(
    v: &CatModule,
    spaces: &[Subspace],
) -> (CatModule, ModuleHom) {
    let view = v.view();
    let cat = v.cat();
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    let action = cat
        .morphisms()
        .map(|f| {
            let (s, d) = (view.src(f), view.dst(f));
            let image = v.action(f) * spaces[s.0].basis();
            spaces[d.0]
                .coordinates_matrix(&image)
                .expect("subspaces are stable under the action")
        })
        .collect();
    let sub = CatModule::from_parts(cat.clone(), v.side(), dims, action);
    let incl = spaces.iter().map(|s| s.basis().clone()).collect();
    let incl = ModuleHom::from_parts(sub.clone(), v.clone(), incl);
    (sub, incl)
}

/// Quotient by stable subspaces, with the projection.
pub(crate) fn quotient_by_subspaces(v: &CatModule, spaces: &[Subspace]) -> (CatModule, ModuleHom) {
    let view = v.view();
    let cat = v.cat();
    let maps: Vec<(ExactMatrix, ExactMatrix)> =
        spaces.iter().map(Subspace::quotient_maps).collect();
    let dims: Vec<usize> = maps.iter().map(|(p, _)| p.rows()).collect();
    let action = cat
        .morphisms()
        .map(|f| {
            let (s, d) = (view.src(f), view.dst(f));
            &(&maps[d.0].0 * v.action(f)) * &maps[s.0].1
        })
        .collect();
    let q = CatModule::from_parts(cat.clone(), v.side(), dims, action);
    let proj = maps.into_iter().map(|(p, _)| p).collect();
    let proj = ModuleHom::from_parts(v.clone(), q.clone(), proj);
    (q, proj)
}

/// Smallest submodule containing the given vectors.
pub fn submodule_generated(
    v: &CatModule,
    vectors: &[(Obj, Vec<Rational>)],
) -> Result<(CatModule, ModuleHom), ModuleError> {
    let view = v.view();
    let cat = v.cat();
    for (i, x) in vectors {
        if x.len() != v.dim(*i) {
            return Err(ModuleError::VectorLength {
                object: cat.object_id(*i).to_string(),
                expected: v.dim(*i),
                found: x.len(),
            });
        }
    }
    let spaces: Vec<Subspace> = cat
        .objects()
        .map(|k| {
            let cols: Vec<Vec<Rational>> = vectors
                .iter()
                .flat_map(|(i, x)| view.hom(*i, k).iter().map(move |&f| v.action(f).mul_vec(x)))
                .collect();
            Subspace::span_of(v.dim(k), &cols)
        })
        .collect();
    Ok(submodule_from_subspaces(v, &spaces))
}

impl ModuleHom {
    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (CatModule, ModuleHom) {
        let spaces: Vec<Subspace> = self.blocks().iter().map(Subspace::kernel).collect();
        submodule_from_subspaces(self.source(), &spaces)
    }

    /// Image with its inclusion into the target.
    pub fn image(&self) -> (CatModule, ModuleHom) {
        let spaces: Vec<Subspace> = self.blocks().iter().map(Subspace::span).collect();
        submodule_from_subspaces(self.target(), &spaces)
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (CatModule, ModuleHom) {
        let spaces: Vec<Subspace> = self.blocks().iter().map(Subspace::span).collect();
        quotient_by_subspaces(self.target(), &spaces)
    }
}

/// The module induced from the automorphism-group representation at `i`,
/// `V(i) ⊗ k[Aut(i)] k[Hom(i, -)]`, with the multiplication map back to `V`.
pub struct InducedModule {
    pub object: Obj,
    pub module: CatModule,
    pub multiplication: ModuleHom,
}

/// Induction from `Aut(i)`: for a right module `W` this is
/// `We_i ⊗_{e_iAe_i} e_iA`, for a left module `Ae_i ⊗_{e_iAe_i} e_iV`.
pub fn tensor_induce(w: &CatModule, i: Obj) -> InducedModule {
    let view = w.view();
    let cat = w.cat();
    let d = w.dim(i);
    let gens = cat.automorphism_generators(i);
    // Basis of V(i) ⊗ span Hom(i, j): index p * d + s for the p-th morphism
    // and the s-th basis vector.
    let mut proj = Vec::new();
    let mut complement = Vec::new();
    let mut lifts = Vec::new();
    for j in cat.objects() {
        let hs = view.hom(i, j);
        let n = hs.len() * d;
        let mut rels = Vec::new();
        for (p, &h) in hs.iter().enumerate() {
            for &a in &gens {
                let q = view.pos(view.compose(h, a));
                let act = w.action(a);
                for s in 0..d {
                    // (h a) ⊗ e_s - h ⊗ a e_s
                    let mut col = vec![Rational::zero(); n];
                    col[q * d + s] += &Rational::one();
                    for t in 0..d {
                        let x = act.get(t, s);
                        if !x.is_zero() {
                            col[p * d + t] -= x;
                        }
                    }
                    rels.push(col);
                }
            }
        }
        let (pr, lift) = Subspace::span_of(n, &rels).quotient_maps();
        let comp: Vec<usize> = (0..lift.cols())
            .map(|c| {
                (0..n)
                    .find(|&r| lift.get(r, c).is_one())
                    .expect("unit column")
            })
            .collect();
        proj.push(pr);
        complement.push(comp);
        lifts.push(lift);
    }
    let dims: Vec<usize> = proj.iter().map(ExactMatrix::rows).collect();
    let action = cat
        .morphisms()
        .map(|f| {
            let (s, t) = (view.src(f), view.dst(f));
            let hs = view.hom(i, s);
            let cols: Vec<Vec<Rational>> = complement[s.0]
                .iter()
                .map(|&idx| {
                    let (p, e) = (idx / d, idx % d);
                    let q = view.pos(view.compose(f, hs[p]));
                    proj[t.0].column(q * d + e)
                })
                .collect();
            ExactMatrix::from_columns(dims[t.0], &cols)
        })
        .collect();
    let module = CatModule::from_parts(cat.clone(), w.side(), dims, action);
    let blocks = cat
        .objects()
        .map(|j| {
            let hs = view.hom(i, j);
            let cols: Vec<Vec<Rational>> = complement[j.0]
                .iter()
                .map(|&idx| w.action(hs[idx / d]).column(idx % d))
                .collect();
            ExactMatrix::from_columns(w.dim(j), &cols)
        })
        .collect();
    let multiplication = ModuleHom::from_parts(module.clone(), w.clone(), blocks);
    InducedModule {
        object: i,
        module,
        multiplication,
    }
}

/// Sum of the modules induced at `objects`, with the sum of the
/// multiplication maps.
pub fn induced_cover(v: &CatModule, objects: &[Obj]) -> (CatModule, ModuleHom, Vec<InducedModule>) {
    let parts: Vec<InducedModule> = objects
        .iter()
        .filter(|&&i| v.dim(i) > 0)
        .map(|&i| tensor_induce(v, i))
        .collect();
    if parts.is_empty() {
        let z = zero_module(v.cat(), v.side());
        let pi = ModuleHom::zero(&z, v);
        return (z, pi, parts);
    }
    let modules: Vec<CatModule> = parts.iter().map(|p| p.module.clone()).collect();
    let sum = direct_sum(&modules).expect("same category and side");
    let blocks = v
        .cat()
        .objects()
        .map(|j| {
            let mut m = ExactMatrix::zeros(v.dim(j), 0);
            for p in &parts {
                m = m.hstack(p.multiplication.block(j));
            }
            m
        })
        .collect();
    let pi = ModuleHom::from_parts(sum.module.clone(), v.clone(), blocks);
    (sum.module, pi, parts)
}

/// The projective module induced over the support, with its surjection.
pub fn canonical_cover(v: &CatModule) -> (CatModule, ModuleHom) {
    let (p, pi, _) = induced_cover(v, &v.support());
    (p, pi)
}

/// A section of the canonical cover, which exists exactly when `v` is
/// projective.
pub fn projective_section(v: &CatModule) -> Option<ModuleHom> {
    let (p, pi) = canonical_cover(v);
    let space = HomSpace::new(v, &p).expect("same category");
    let columns: Vec<Vec<Rational>> = space
        .basis()
        .iter()
        .map(|s| {
            pi.after(s)
                .expect("composable")
                .blocks()
                .iter()
                .flat_map(ExactMatrix::flatten)
                .collect()
        })
        .collect();
    let target: Vec<Rational> = v
        .dims()
        .iter()
        .flat_map(|&d| ExactMatrix::identity(d).flatten())
        .collect();
    let a = ExactMatrix::from_columns(target.len(), &columns);
    let b = ExactMatrix::from_columns(target.len(), &[target]);
    let x = a.solve(&b).particular()?.column(0);
    Some(space.hom(&x))
}

pub fn is_projective(v: &CatModule) -> bool {
    projective_section(v).is_some()
}

/// Injective iff the dual is projective.
pub fn is_injective(v: &CatModule) -> bool {
    is_projective(&v.dualize())
}

/// Extends a module over a convex full subcategory by zero.
pub fn extend_by_zero(
    v: &CatModule,
    sub: &Subcategory,
    parent: &Arc<FiniteEICategory>,
) -> Result<CatModule, ModuleError> {
    if *v.cat().as_ref() != *sub.category {
        return Err(ModuleError::SubcategoryMismatch);
    }
    if !parent.is_convex(&sub.objects) {
        return Err(ModuleError::NotConvex);
    }
    let mut dims = vec![0; parent.num_objects()];
    for (k, &o) in sub.objects.iter().enumerate() {
        dims[o.0] = v.dims()[k];
    }
    let view = View::new(parent, v.side() == Side::Right);
    let action = parent
        .morphisms()
        .map(|f| match sub.morphisms.binary_search(&f) {
            Ok(k) => v.actions()[k].clone(),
            Err(_) => ExactMatrix::zeros(dims[view.dst(f).0], dims[view.src(f).0]),
        })
        .collect();
    Ok(CatModule::from_parts(
        parent.clone(),
        v.side(),
        dims,
        action,
    ))
}

/// Forgets everything outside the subcategory.
pub fn restrict(v: &CatModule, sub: &Subcategory) -> CatModule {
    let dims = sub.objects.iter().map(|&o| v.dim(o)).collect();
    let action = sub.morphisms.iter().map(|&f| v.action(f).clone()).collect();
    CatModule::from_parts(sub.category.clone(), v.side(), dims, action)
}
