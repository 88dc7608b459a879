//! Modules over a finite EI-category, i.e. graded modules over its category
//! algebra, stored as one vector space per object and one matrix per
//! morphism.
//!
//! A right module is a left module over the opposite category with the same
//! matrices, and most algorithms are written once against that view.

mod complex;
mod constructions;
mod hom;
mod regular;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::eicat::{FiniteEICategory, Mor, Obj, View};
use crate::exactla::{ExactMatrix, Rational};

pub use complex::{ChainComplex, ExactnessReport, PositionHomology};
pub use constructions::{
    canonical_cover, direct_sum, extend_by_zero, free_module, induced_cover, is_injective,
    is_projective, projective_section, restrict, simple_module, submodule_generated, tensor_induce,
    trivial_module, zero_module, DirectSum, InducedModule,
};
pub use hom::{find_isomorphism, hom_basis, HomSpace};
pub use regular::{double_dual_map, regular_dual, regular_map, RegularDual};

use hom::Presentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("expected {expected} entries, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("modules live over different categories")]
    DifferentCategory,
    #[error("expected a {expected} module, got a {found} one")]
    WrongSide { expected: Side, found: Side },
    #[error("maps do not compose: target of the first is not the source of the second")]
    NotComposable,
    #[error("block {object} has shape {found:?}, expected {expected:?}")]
    BlockShape {
        object: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("not a natural transformation: square for {0} does not commute")]
    NotNatural(String),
    #[error("object set is not convex, so extension by zero is not a module")]
    NotConvex,
    #[error("module does not live over the given subcategory")]
    SubcategoryMismatch,
    #[error("vector has length {found}, object {object} has dimension {expected}")]
    VectorLength {
        object: String,
        expected: usize,
        found: usize,
    },
}

/// One failed functoriality condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleViolation {
    WrongShape {
        morphism: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    IdentityNotIdentity {
        object: String,
    },
    NotFunctorial {
        g: String,
        f: String,
    },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::WrongShape {
                morphism,
                expected,
                found,
            } => write!(
                fm,
                "matrix of {morphism} is {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            ModuleViolation::IdentityNotIdentity { object } => {
                write!(fm, "identity of {object} does not act as the identity")
            }
            ModuleViolation::NotFunctorial { g, f } => {
                write!(fm, "action of {g} ∘ {f} is not the product of the actions")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleReport {
    pub violations: Vec<ModuleViolation>,
}

impl ModuleReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.to_string()).collect()
    }
}

struct ModuleInner {
    cat: Arc<FiniteEICategory>,
    side: Side,
    dims: Vec<usize>,
    /// Left: `V(src) -> V(dst)`. Right: `V(dst) -> V(src)`.
    action: Vec<ExactMatrix>,
    presentation: OnceLock<Arc<Presentation>>,
    regular: OnceLock<Arc<RegularDual>>,
}

/// A left or right module; cloning is cheap.
#[derive(Clone)]
pub struct CatModule(Arc<ModuleInner>);

impl fmt::Debug for CatModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatModule")
            .field("side", &self.side())
            .field("dims", &self.dims())
            .finish()
    }
}

impl PartialEq for CatModule {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl CatModule {
    /// Only the number of dimensions and matrices is checked here; use
    /// [`CatModule::validate`] for shapes and functoriality.
    pub fn new(
        cat: Arc<FiniteEICategory>,
        side: Side,
        dims: Vec<usize>,
        action: Vec<ExactMatrix>,
    ) -> Result<Self, ModuleError> {
        if dims.len() != cat.num_objects() {
            return Err(ModuleError::Arity {
                expected: cat.num_objects(),
                found: dims.len(),
            });
        }
        if action.len() != cat.num_morphisms() {
            return Err(ModuleError::Arity {
                expected: cat.num_morphisms(),
                found: action.len(),
            });
        }
        Ok(Self::from_parts(cat, side, dims, action))
    }

    pub(crate) fn from_parts(
        cat: Arc<FiniteEICategory>,
        side: Side,
        dims: Vec<usize>,
        action: Vec<ExactMatrix>,
    ) -> Self {
        CatModule(Arc::new(ModuleInner {
            cat,
            side,
            dims,
            action,
            presentation: OnceLock::new(),
            regular: OnceLock::new(),
        }))
    }

    pub fn cat(&self) -> &Arc<FiniteEICategory> {
        &self.0.cat
    }

    pub fn side(&self) -> Side {
        self.0.side
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self, i: Obj) -> usize {
        self.0.dims[i.0]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, f: Mor) -> &ExactMatrix {
        &self.0.action[f.0]
    }

    pub fn actions(&self) -> &[ExactMatrix] {
        &self.0.action
    }

    pub(crate) fn view(&self) -> View<'_> {
        View::new(&self.0.cat, self.0.side == Side::Right)
    }

    /// Expected shape of the matrix of `f`.
    pub fn action_shape(&self, f: Mor) -> (usize, usize) {
        let v = self.view();
        (self.dim(v.dst(f)), self.dim(v.src(f)))
    }

    pub fn ptr_eq(&self, other: &CatModule) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn same_category(&self, other: &CatModule) -> bool {
        Arc::ptr_eq(&self.0.cat, &other.0.cat) || *self.0.cat == *other.0.cat
    }

    /// Equal category, side, dimensions and matrices.
    pub fn same(&self, other: &CatModule) -> bool {
        self.ptr_eq(other)
            || (self.side() == other.side()
                && self.dims() == other.dims()
                && self.actions() == other.actions()
                && self.same_category(other))
    }

    pub fn check_compatible(&self, other: &CatModule) -> Result<(), ModuleError> {
        if !self.same_category(other) {
            return Err(ModuleError::DifferentCategory);
        }
        if self.side() != other.side() {
            return Err(ModuleError::WrongSide {
                expected: self.side(),
                found: other.side(),
            });
        }
        Ok(())
    }

    pub fn require_side(&self, side: Side) -> Result<(), ModuleError> {
        if self.side() == side {
            Ok(())
        } else {
            Err(ModuleError::WrongSide {
                expected: side,
                found: self.side(),
            })
        }
    }

    /// Exhaustive check of shapes, identities and every composable pair.
    pub fn validate(&self) -> ModuleReport {
        let cat = self.cat();
        let v = self.view();
        let mut violations = Vec::new();
        for f in cat.morphisms() {
            let expected = self.action_shape(f);
            let found = self.action(f).shape();
            if expected != found {
                violations.push(ModuleViolation::WrongShape {
                    morphism: cat.morphism_id(f).to_string(),
                    expected,
                    found,
                });
            }
        }
        if !violations.is_empty() {
            return ModuleReport { violations };
        }
        for i in cat.objects() {
            if let Some(e) = cat.try_identity(i) {
                if !self.action(e).is_identity() {
                    violations.push(ModuleViolation::IdentityNotIdentity {
                        object: cat.object_id(i).to_string(),
                    });
                }
            }
        }
        for f in cat.morphisms() {
            for k in cat.objects() {
                for &g in v.hom(v.dst(f), k) {
                    let Some(gf) = compose_in_view(&v, g, f) else {
                        continue;
                    };
                    if *self.action(gf) != self.action(g) * self.action(f) {
                        violations.push(ModuleViolation::NotFunctorial {
                            g: cat.morphism_id(g).to_string(),
                            f: cat.morphism_id(f).to_string(),
                        });
                    }
                }
            }
        }
        ModuleReport { violations }
    }

    /// Objects where the module is nonzero.
    pub fn support(&self) -> Vec<Obj> {
        self.cat().objects().filter(|&i| self.dim(i) > 0).collect()
    }

    /// Same vector spaces, transposed matrices, opposite side.
    pub fn dualize(&self) -> CatModule {
        CatModule::from_parts(
            self.cat().clone(),
            self.side().flip(),
            self.dims().to_vec(),
            self.actions().iter().map(ExactMatrix::transpose).collect(),
        )
    }

    /// First morphism whose action is not injective, if any.
    pub fn torsion_witness(&self) -> Option<Mor> {
        self.cat().morphisms().find(|&f| {
            let m = self.action(f);
            m.rank() < m.cols()
        })
    }

    /// Every morphism acts injectively.
    pub fn is_torsion_free(&self) -> bool {
        self.torsion_witness().is_none()
    }

    pub(crate) fn presentation(&self) -> Arc<Presentation> {
        self.0
            .presentation
            .get_or_init(|| Arc::new(Presentation::new(self)))
            .clone()
    }

    pub(crate) fn regular_cache(&self) -> &OnceLock<Arc<RegularDual>> {
        &self.0.regular
    }
}

fn compose_in_view(v: &View<'_>, g: Mor, f: Mor) -> Option<Mor> {
    if v.op {
        v.cat.try_compose(f, g)
    } else {
        v.cat.try_compose(g, f)
    }
}

/// A natural transformation, one block per object.
#[derive(Clone, PartialEq)]
pub struct ModuleHom {
    source: CatModule,
    target: CatModule,
    blocks: Vec<ExactMatrix>,
}

impl fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleHom")
            .field("source", &self.source.dims())
            .field("target", &self.target.dims())
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl ModuleHom {
    /// Checks block shapes and naturality.
    pub fn new(
        source: CatModule,
        target: CatModule,
        blocks: Vec<ExactMatrix>,
    ) -> Result<Self, ModuleError> {
        source.check_compatible(&target)?;
        if blocks.len() != source.dims().len() {
            return Err(ModuleError::Arity {
                expected: source.dims().len(),
                found: blocks.len(),
            });
        }
        let h = ModuleHom {
            source,
            target,
            blocks,
        };
        h.check_shapes()?;
        if let Some(f) = h.naturality_failure() {
            return Err(ModuleError::NotNatural(
                h.source.cat().morphism_id(f).to_string(),
            ));
        }
        Ok(h)
    }

    pub(crate) fn from_parts(
        source: CatModule,
        target: CatModule,
        blocks: Vec<ExactMatrix>,
    ) -> Self {
        debug_assert_eq!(blocks.len(), source.dims().len());
        ModuleHom {
            source,
            target,
            blocks,
        }
    }

    fn check_shapes(&self) -> Result<(), ModuleError> {
        for i in self.source.cat().objects() {
            let expected = (self.target.dim(i), self.source.dim(i));
            let found = self.blocks[i.0].shape();
            if expected != found {
                return Err(ModuleError::BlockShape {
                    object: self.source.cat().object_id(i).to_string(),
                    expected,
                    found,
                });
            }
        }
        Ok(())
    }

    pub fn zero(source: &CatModule, target: &CatModule) -> Self {
        let blocks = source
            .cat()
            .objects()
            .map(|i| ExactMatrix::zeros(target.dim(i), source.dim(i)))
            .collect();
        ModuleHom::from_parts(source.clone(), target.clone(), blocks)
    }

    pub fn identity(module: &CatModule) -> Self {
        let blocks = module
            .dims()
            .iter()
            .map(|&d| ExactMatrix::identity(d))
            .collect();
        ModuleHom::from_parts(module.clone(), module.clone(), blocks)
    }

    pub fn source(&self) -> &CatModule {
        &self.source
    }

    pub fn target(&self) -> &CatModule {
        &self.target
    }

    pub fn blocks(&self) -> &[ExactMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: Obj) -> &ExactMatrix {
        &self.blocks[i.0]
    }

    /// First morphism whose square fails to commute.
    pub fn naturality_failure(&self) -> Option<Mor> {
        let v = self.source.view();
        self.source.cat().morphisms().find(|&f| {
            let (s, d) = (v.src(f), v.dst(f));
            self.target.action(f) * &self.blocks[s.0] != &self.blocks[d.0] * self.source.action(f)
        })
    }

    pub fn is_natural(&self) -> bool {
        self.naturality_failure().is_none()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ModuleHom) -> Result<ModuleHom, ModuleError> {
        if !first.target.same(&self.source) {
            return Err(ModuleError::NotComposable);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&first.blocks)
            .map(|(a, b)| a * b)
            .collect();
        Ok(ModuleHom::from_parts(
            first.source.clone(),
            self.target.clone(),
            blocks,
        ))
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        assert!(self.source.same(&other.source) && self.target.same(&other.target));
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a + b)
            .collect();
        ModuleHom::from_parts(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn scale(&self, s: &Rational) -> ModuleHom {
        let blocks = self.blocks.iter().map(|b| b.scale(s)).collect();
        ModuleHom::from_parts(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(ExactMatrix::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(ExactMatrix::is_identity)
    }

    /// Every block square and invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.is_square() && (b.rows() == 0 || b.is_invertible()))
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    /// Per-object ranks.
    pub fn ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(ExactMatrix::rank).collect()
    }

    /// The same blocks regarded as a map between modules with equal data.
    pub fn retarget(&self, source: &CatModule, target: &CatModule) -> ModuleHom {
        assert!(self.source.same(source) && self.target.same(target));
        ModuleHom::from_parts(source.clone(), target.clone(), self.blocks.clone())
    }

    /// Transposed blocks, from `D(target)` to `D(source)`.
    pub fn dualize(&self) -> ModuleHom {
        self.dualize_between(&self.target.dualize(), &self.source.dualize())
    }

    /// Like [`Self::dualize`] with caller-supplied copies of the duals.
    pub fn dualize_between(&self, dual_target: &CatModule, dual_source: &CatModule) -> ModuleHom {
        debug_assert_eq!(dual_target.dims(), self.target.dims());
        debug_assert_eq!(dual_source.dims(), self.source.dims());
        ModuleHom::from_parts(
            dual_target.clone(),
            dual_source.clone(),
            self.blocks.iter().map(ExactMatrix::transpose).collect(),
        )
    }
}

#[cfg(test)]
mod tests;
