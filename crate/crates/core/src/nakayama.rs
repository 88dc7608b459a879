//! The Nakayama functor `ν = D ∘ Hom_C(-, A)` on left modules, its right
//! adjoint `ν⁻¹ = Hom_{C^op}(-, A) ∘ D`, and the maps relating them.
//!
//! Both are assembled from the regular dual `R` of [`crate::repmod`]:
//! `ν(V) = D R(V)` and `ν⁻¹(U) = R(D U)`. Since `D D` is the identity on the
//! nose, the unit `V -> ν⁻¹ν(V) = R R(V)` is evaluation and the counit is the
//! dual of evaluation on `D U`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::eicat::{FiniteEICategory, Obj};
use crate::exactla::{ExactMatrix, Rational};
use crate::instances::{InstanceError, InstanceSpec};
use crate::repmod::{
    double_dual_map, free_module, is_injective, regular_dual, regular_map, submodule_generated,
    CatModule, HomSpace, ModuleError, ModuleHom, Side,
};

pub fn nakayama(v: &CatModule) -> Result<CatModule, ModuleError> {
    v.require_side(Side::Left)?;
    Ok(regular_dual(v).module.dualize())
}

pub fn inverse_nakayama(u: &CatModule) -> Result<CatModule, ModuleError> {
    u.require_side(Side::Left)?;
    Ok(regular_dual(&u.dualize()).module.clone())
}

/// `ν(φ): ν(V) -> ν(V')`.
pub fn nakayama_map(phi: &ModuleHom) -> Result<ModuleHom, ModuleError> {
    phi.source().require_side(Side::Left)?;
    Ok(regular_map(phi).dualize())
}

/// `ν⁻¹(θ): ν⁻¹(U) -> ν⁻¹(U')`.
pub fn inverse_nakayama_map(theta: &ModuleHom) -> Result<ModuleHom, ModuleError> {
    theta.source().require_side(Side::Left)?;
    Ok(regular_map(&theta.dualize()))
}

/// Unit `V -> ν⁻¹ν(V)`.
pub fn unit(v: &CatModule) -> Result<ModuleHom, ModuleError> {
    v.require_side(Side::Left)?;
    Ok(double_dual_map(v))
}

/// Counit `νν⁻¹(U) -> U`.
pub fn counit(u: &CatModule) -> Result<ModuleHom, ModuleError> {
    u.require_side(Side::Left)?;
    let ev = double_dual_map(&u.dualize());
    Ok(ev.dualize_between(&ev.target().dualize(), u))
}

/// Dimension comparison and explicit bijection for
/// `Hom(νV, U) ≅ Hom(V, ν⁻¹U)`, plus both triangle identities.
#[derive(Debug, Clone)]
pub struct AdjunctionCheck {
    pub hom_nu_v_u: usize,
    pub hom_v_nu_inv_u: usize,
    /// Matrix of `α ↦ ν⁻¹(α) ∘ η_V` in the canonical bases.
    pub witness: ExactMatrix,
    pub bijective: bool,
    /// `ε_{νV} ∘ ν(η_V) = id`.
    pub triangle_nu: bool,
    /// `ν⁻¹(ε_U) ∘ η_{ν⁻¹U} = id`.
    pub triangle_nu_inv: bool,
}

impl AdjunctionCheck {
    pub fn passed(&self) -> bool {
        self.hom_nu_v_u == self.hom_v_nu_inv_u
            && self.bijective
            && self.triangle_nu
            && self.triangle_nu_inv
    }
}

pub fn adjunction_check(v: &CatModule, u: &CatModule) -> Result<AdjunctionCheck, ModuleError> {
    v.require_side(Side::Left)?;
    u.require_side(Side::Left)?;
    v.check_compatible(u)?;
    let rv = regular_dual(v);
    let nu_v = rv.module.dualize();
    let du = u.dualize();
    let rdu = regular_dual(&du);
    let nu_inv_u = rdu.module.clone();

    let left = HomSpace::new(&nu_v, u)?;
    let right = HomSpace::new(v, &nu_inv_u)?;
    let eta = double_dual_map(v);
    let columns: Vec<Vec<Rational>> = left
        .basis()
        .iter()
        .map(|alpha| {
            // D(α): DU -> D(νV), whose target equals R(V).
            let d_alpha = alpha.dualize_between(&du, &rv.module);
            let image = regular_map(&d_alpha).after(&eta).expect("composable");
            right.coordinates(&image).expect("lands in Hom(V, ν⁻¹U)")
        })
        .collect();
    let witness = ExactMatrix::from_columns(right.dim(), &columns);
    let bijective = witness.is_square() && (witness.rows() == 0 || witness.is_invertible());

    // ε_{νV} ∘ ν(η_V): both sides pass through D R(R R(V)).
    let nu_eta = regular_map(&eta).dualize();
    let ev_rv = double_dual_map(&rv.module);
    let eps_nu_v = ev_rv.dualize_between(&ev_rv.target().dualize(), &nu_v);
    let nu_eta = nu_eta.retarget(&nu_v, eps_nu_v.source());
    let triangle_nu = eps_nu_v
        .after(&nu_eta)
        .map(|h| h.is_identity())
        .unwrap_or(false);

    // ν⁻¹(ε_U) ∘ η_{ν⁻¹U}, with ν⁻¹(ε_U) = R(ev_{DU}).
    let eta_m = double_dual_map(&nu_inv_u);
    let nu_inv_eps = regular_map(&double_dual_map(&du));
    let triangle_nu_inv = nu_inv_eps
        .after(&eta_m)
        .map(|h| h.is_identity())
        .unwrap_or(false);

    Ok(AdjunctionCheck {
        hom_nu_v_u: left.dim(),
        hom_v_nu_inv_u: right.dim(),
        witness,
        bijective,
        triangle_nu,
        triangle_nu_inv,
    })
}

/// `ν(V) = 0`, i.e. `Hom(V, Ae_i) = 0` for every object.
pub fn in_kernel(v: &CatModule) -> Result<bool, ModuleError> {
    v.require_side(Side::Left)?;
    Ok(regular_dual(v).module.is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfInjectiveAudit {
    /// Whether `Ae_i` is injective, per object.
    pub objects: Vec<(Obj, bool)>,
}

impl SelfInjectiveAudit {
    pub fn verdict(&self) -> bool {
        self.objects.iter().all(|&(_, ok)| ok)
    }

    /// Objects whose free module is not injective.
    pub fn witnesses(&self) -> Vec<Obj> {
        self.objects
            .iter()
            .filter(|&&(_, ok)| !ok)
            .map(|&(o, _)| o)
            .collect()
    }
}

/// Tests every `Ae_i` for injectivity.
pub fn locally_self_injective_audit(cat: &Arc<FiniteEICategory>) -> SelfInjectiveAudit {
    SelfInjectiveAudit {
        objects: cat
            .objects()
            .map(|i| (i, is_injective(&free_module(cat, Side::Left, i))))
            .collect(),
    }
}

/// A finitely presented left module over FI_G or VI_q: free generators at
/// given levels modulo relations, each a combination of morphisms out of
/// generators into one level.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FinitePresentation {
    /// Level of each generator.
    pub generators: Vec<usize>,
    #[serde(default)]
    pub relations: Vec<PresentationRelation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationRelation {
    pub level: usize,
    pub terms: Vec<RelationTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub generator: usize,
    pub morphism: String,
    pub coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("truncation level {level} is below the presentation degree {degree}")]
    LevelTooLow { level: usize, degree: usize },
    #[error("relation refers to generator {0}, which does not exist")]
    UnknownGenerator(usize),
    #[error("morphism {morphism} does not run from level {from} to level {to}")]
    BadMorphism {
        morphism: String,
        from: usize,
        to: usize,
    },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

impl FinitePresentation {
    pub fn degree(&self) -> usize {
        self.generators
            .iter()
            .copied()
            .chain(self.relations.iter().map(|r| r.level))
            .max()
            .unwrap_or(0)
    }

    /// The presented module over the given truncation, as a quotient of a
    /// sum of free modules.
    pub fn module_over(&self, cat: &Arc<FiniteEICategory>) -> Result<CatModule, PresentationError> {
        let level_obj = |l: usize| {
            cat.object(&l.to_string())
                .map_err(|_| PresentationError::LevelTooLow {
                    level: cat.num_objects().saturating_sub(1),
                    degree: l,
                })
        };
        let frees: Vec<CatModule> = self
            .generators
            .iter()
            .map(|&l| Ok(free_module(cat, Side::Left, level_obj(l)?)))
            .collect::<Result<_, PresentationError>>()?;
        if frees.is_empty() {
            return Ok(crate::repmod::zero_module(cat, Side::Left));
        }
        let sum = crate::repmod::direct_sum(&frees)?;
        let p = sum.module;
        let mut vectors = Vec::new();
        for rel in &self.relations {
            let target = level_obj(rel.level)?;
            let mut x = vec![Rational::zero(); p.dim(target)];
            for term in &rel.terms {
                let g = *self
                    .generators
                    .get(term.generator)
                    .ok_or(PresentationError::UnknownGenerator(term.generator))?;
                let bad = || PresentationError::BadMorphism {
                    morphism: term.morphism.clone(),
                    from: g,
                    to: rel.level,
                };
                let f = cat.morphism(&term.morphism).map_err(|_| bad())?;
                if cat.src(f) != level_obj(g)? || cat.dst(f) != target {
                    return Err(bad());
                }
                // Basis vector f of the g-th summand at the target level.
                let offset: usize = frees[..term.generator].iter().map(|m| m.dim(target)).sum();
                x[offset + cat.position_in_hom(f)] += &term.coefficient;
            }
            vectors.push((target, x));
        }
        let (_, incl) = submodule_generated(&p, &vectors)?;
        Ok(incl.cokernel().0)
    }
}

#[derive(Debug, Clone)]
pub struct Stabilization {
    pub level: usize,
    /// `ν` of the module over the level-`level` truncation.
    pub module: CatModule,
    pub dims: Vec<usize>,
    /// Dimensions one level higher, on all objects.
    pub next_dims: Vec<usize>,
    pub stable: bool,
}

/// `ν` of a finitely presented module, computed at truncation `level` and
/// compared against `level + 1` on objects `0..=level`.
pub fn stabilized_nakayama(
    presentation: &FinitePresentation,
    spec: &InstanceSpec,
    level: usize,
) -> Result<Stabilization, PresentationError> {
    let degree = presentation.degree();
    if level < degree {
        return Err(PresentationError::LevelTooLow { level, degree });
    }
    let nu_at = |l: usize| -> Result<CatModule, PresentationError> {
        let cat = Arc::new(spec.with_level(l).build()?);
        let v = presentation.module_over(&cat)?;
        Ok(nakayama(&v)?)
    };
    let here = nu_at(level)?;
    let there = nu_at(level + 1)?;
    let dims = here.dims().to_vec();
    let next_dims = there.dims().to_vec();
    let stable = next_dims[..dims.len()] == dims[..];
    Ok(Stabilization {
        level,
        module: here,
        dims,
        next_dims,
        stable,
    })
}
