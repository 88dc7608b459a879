//! Finite injective resolutions of finite-dimensional left modules.
//!
//! A finite-dimensional right module `W` supported in a right-closed set
//! `C'` is covered by the sum of the modules induced from its values, and
//! the kernel of that cover lives on the non-maximal part of `C'`. Iterating
//! gives a finite projective resolution of `W = DU`, whose dual is an
//! injective resolution of `U`.

use crate::eicat::Obj;
use crate::repmod::{
    induced_cover, is_injective, is_projective, CatModule, ChainComplex, ExactnessReport,
    ModuleError, ModuleHom, Side,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("object set is not right-closed: {0} lies below it but not in it")]
    NotRightClosed(String),
    #[error("module is nonzero at {0}, outside the given object set")]
    SupportLeak(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// `0 -> W' -> P -> W -> 0` for one right-closed set `C'`.
#[derive(Debug, Clone)]
pub struct ResolutionStep {
    pub module: CatModule,
    pub cprime: Vec<Obj>,
    /// Non-maximal members of `cprime`.
    pub cdoubleprime: Vec<Obj>,
    pub cover: CatModule,
    /// The multiplication map `P -> W`.
    pub multiplication: ModuleHom,
    pub kernel: CatModule,
    pub inclusion: ModuleHom,
    /// `[W', P, W]`.
    pub sequence: ChainComplex,
    /// `W` was already projective and `P = W`.
    pub identity_cover: bool,
}

impl ResolutionStep {
    pub fn maximal(&self) -> Vec<Obj> {
        self.cprime
            .iter()
            .copied()
            .filter(|o| !self.cdoubleprime.contains(o))
            .collect()
    }

    pub fn exactness(&self) -> ExactnessReport {
        self.sequence.exactness()
    }

    /// The kernel vanishes on the maximal objects of `C'`.
    pub fn kernel_avoids_maximal(&self) -> bool {
        self.maximal().iter().all(|&i| self.kernel.dim(i) == 0)
    }

    /// The multiplication map is bijective at every maximal object.
    pub fn bijective_at_maximal(&self) -> bool {
        self.maximal().iter().all(|&i| {
            let b = self.multiplication.block(i);
            self.cover.dim(i) == self.module.dim(i) && b.rank() == b.rows()
        })
    }

    pub fn passed(&self) -> bool {
        self.exactness().is_exact() && self.kernel_avoids_maximal() && self.bijective_at_maximal()
    }
}

/// One step for a right module. Without `cprime`, the downward closure of
/// the support is used.
pub fn resolution_step(
    w: &CatModule,
    cprime: Option<&[Obj]>,
) -> Result<ResolutionStep, ResolveError> {
    build_step(w, cprime, false)
}

fn build_step(
    w: &CatModule,
    cprime: Option<&[Obj]>,
    identity_cover: bool,
) -> Result<ResolutionStep, ResolveError> {
    w.require_side(Side::Right)?;
    let cat = w.cat();
    let mut set: Vec<Obj> = match cprime {
        Some(s) => s.to_vec(),
        None => cat.downward_closure(&w.support()),
    };
    set.sort();
    set.dedup();
    if let Some(&bad) = cat.downward_closure(&set).iter().find(|o| !set.contains(o)) {
        return Err(ResolveError::NotRightClosed(cat.object_id(bad).to_string()));
    }
    if let Some(&leak) = w.support().iter().find(|o| !set.contains(o)) {
        return Err(ResolveError::SupportLeak(cat.object_id(leak).to_string()));
    }
    let maximal = cat.maximal_objects(&set);
    let cdoubleprime: Vec<Obj> = set
        .iter()
        .copied()
        .filter(|o| !maximal.contains(o))
        .collect();
    let (cover, multiplication) = if identity_cover {
        (w.clone(), ModuleHom::identity(w))
    } else {
        let (p, rho, _) = induced_cover(w, &set);
        (p, rho)
    };
    let (kernel, inclusion) = multiplication.kernel();
    let sequence = ChainComplex::new(
        vec![kernel.clone(), cover.clone(), w.clone()],
        vec![inclusion.clone(), multiplication.clone()],
    )?;
    Ok(ResolutionStep {
        module: w.clone(),
        cprime: set,
        cdoubleprime,
        cover,
        multiplication,
        kernel,
        inclusion,
        sequence,
        identity_cover,
    })
}

#[derive(Debug, Clone)]
pub struct InjectiveResolution {
    pub input: CatModule,
    /// `[U, I_0, ..., I_n]`.
    pub complex: ChainComplex,
    /// `[P_n, ..., P_0, DU]`, the dual complex.
    pub projective: ChainComplex,
    pub steps: Vec<ResolutionStep>,
    /// Size of the downward closure of the support of `U`.
    pub closure_size: usize,
}

impl InjectiveResolution {
    /// `n` for `0 -> U -> I_0 -> ... -> I_n -> 0`; `None` when `U = 0`.
    pub fn length(&self) -> Option<usize> {
        self.steps.len().checked_sub(1)
    }
}

/// The sum over all of `C_s` is not minimal: it resolves an injective `U`
/// in one step too many. A kernel that is already projective is therefore
/// taken as its own cover, which ends the iteration.
pub fn injective_resolution(u: &CatModule) -> Result<InjectiveResolution, ResolveError> {
    u.require_side(Side::Left)?;
    let cat = u.cat();
    let w = u.dualize();
    let closure = cat.downward_closure(&w.support());
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut current = w.clone();
    let mut set = closure.clone();
    while !current.is_zero() {
        let step = build_step(&current, Some(&set), is_projective(&current))?;
        current = step.kernel.clone();
        set = step.cdoubleprime.clone();
        steps.push(step);
    }

    // Projective side: d_0 = ρ_0 and d_s = incl_{s-1} ∘ ρ_s.
    let mut proj_maps: Vec<ModuleHom> = Vec::new();
    for (s, step) in steps.iter().enumerate() {
        if s == 0 {
            proj_maps.push(step.multiplication.clone());
        } else {
            let d = steps[s - 1]
                .inclusion
                .after(&step.multiplication)
                .expect("kernel feeds the next step");
            proj_maps.push(d);
        }
    }
    let mut proj_terms: Vec<CatModule> = steps.iter().rev().map(|s| s.cover.clone()).collect();
    proj_terms.push(w.clone());
    let projective = ChainComplex::new(proj_terms, proj_maps.iter().rev().cloned().collect())?;

    let duals: Vec<CatModule> = steps.iter().map(|s| s.cover.dualize()).collect();
    let mut terms = vec![u.clone()];
    terms.extend(duals.iter().cloned());
    let maps: Vec<ModuleHom> = proj_maps
        .iter()
        .enumerate()
        .map(|(s, d)| {
            let source = if s == 0 { u } else { &duals[s - 1] };
            d.dualize_between(source, &duals[s])
        })
        .collect();
    let complex = ChainComplex::new(terms, maps)?;
    Ok(InjectiveResolution {
        input: u.clone(),
        complex,
        projective,
        steps,
        closure_size: closure.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionCertificate {
    pub exactness: ExactnessReport,
    /// Positions (in the complex) of terms after the first that fail the
    /// injectivity test.
    pub non_injective: Vec<usize>,
    pub length: Option<usize>,
    pub closure_size: usize,
}

impl ResolutionCertificate {
    pub fn length_ok(&self) -> bool {
        self.length.is_none_or(|n| n < self.closure_size)
    }

    pub fn passed(&self) -> bool {
        self.exactness.is_exact() && self.non_injective.is_empty() && self.length_ok()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.exactness.is_exact() {
            out.push(format!(
                "not exact at positions {:?}",
                self.exactness.failures()
            ));
            if !self.exactness.not_a_complex.is_empty() {
                out.push(format!(
                    "consecutive maps do not compose to zero at {:?}",
                    self.exactness.not_a_complex
                ));
            }
        }
        if !self.non_injective.is_empty() {
            out.push(format!("terms {:?} are not injective", self.non_injective));
        }
        if !self.length_ok() {
            out.push(format!(
                "length {:?} is not below the closure size {}",
                self.length, self.closure_size
            ));
        }
        out
    }
}

/// Checks a complex `[U, I_0, ..., I_n]` as an injective resolution of `U`.
pub fn verify_resolution(cplx: &ChainComplex) -> ResolutionCertificate {
    let u = &cplx.terms()[0];
    let closure_size = u.cat().downward_closure(&u.support()).len();
    let non_injective = cplx
        .terms()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, t)| !is_injective(t))
        .map(|(k, _)| k)
        .collect();
    let length = if u.is_zero() && cplx.terms().iter().all(CatModule::is_zero) {
        None
    } else {
        Some(cplx.len().saturating_sub(2))
    };
    ResolutionCertificate {
        exactness: cplx.exactness(),
        non_injective,
        length,
        closure_size,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::eicat::FiniteEICategory;
    use crate::instances::InstanceSpec;
    use crate::repmod::{find_isomorphism, free_module, simple_module, zero_module};

    fn fi(level: usize) -> Arc<FiniteEICategory> {
        Arc::new(InstanceSpec::fi(None, level).build().unwrap())
    }

    fn o(c: &FiniteEICategory, id: &str) -> Obj {
        c.object(id).unwrap()
    }

    #[test]
    fn step_on_simple_right_module() {
        let c = fi(2);
        let set = [o(&c, "0"), o(&c, "1")];
        let s1 = simple_module(&c, Side::Right, o(&c, "1"));
        let step = resolution_step(&s1, Some(&set)).unwrap();
        assert!(step.passed());
        assert_eq!(step.cover.dims(), &[1, 1, 0]);
        assert_eq!(step.kernel.total_dim(), 1);
        assert_eq!(step.kernel.support(), vec![o(&c, "0")]);
        assert!(
            find_isomorphism(&step.cover, &free_module(&c, Side::Right, o(&c, "1")))
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn step_on_free_right_module() {
        let c = fi(2);
        let set = [o(&c, "0"), o(&c, "1")];
        let e1 = free_module(&c, Side::Right, o(&c, "1"));
        let step = resolution_step(&e1, Some(&set)).unwrap();
        assert!(step.passed());
        assert!(step.bijective_at_maximal());
        assert_eq!(step.maximal(), vec![o(&c, "1")]);
    }

    #[test]
    fn step_preconditions() {
        let c = fi(2);
        let e1 = free_module(&c, Side::Right, o(&c, "1"));
        assert!(matches!(
            resolution_step(&e1, Some(&[o(&c, "1")])),
            Err(ResolveError::NotRightClosed(_))
        ));
        assert!(matches!(
            resolution_step(&e1, Some(&[o(&c, "0")])),
            Err(ResolveError::SupportLeak(_))
        ));
        let z = zero_module(&c, Side::Right);
        let step = resolution_step(&z, None).unwrap();
        assert!(step.cover.is_zero() && step.kernel.is_zero());
        assert!(resolution_step(&e1.dualize(), None).is_err());
    }

    #[test]
    fn resolutions_of_small_modules() {
        let c = fi(2);
        let s1 = simple_module(&c, Side::Left, o(&c, "1"));
        let res = injective_resolution(&s1).unwrap();
        assert_eq!(res.length(), Some(1));
        let cert = verify_resolution(&res.complex);
        assert!(cert.passed(), "{:?}", cert.failures());
        assert!(res.projective.is_exact());
        let d1 = free_module(&c, Side::Right, o(&c, "1")).dualize();
        let d0 = free_module(&c, Side::Right, o(&c, "0")).dualize();
        let terms = res.complex.terms();
        assert!(find_isomorphism(&terms[1], &d1).unwrap().is_some());
        assert!(find_isomorphism(&terms[2], &d0).unwrap().is_some());

        let s0 = simple_module(&c, Side::Left, o(&c, "0"));
        let res = injective_resolution(&s0).unwrap();
        assert_eq!(res.length(), Some(0));
        assert!(find_isomorphism(&res.complex.terms()[1], &d0)
            .unwrap()
            .is_some());

        let res = injective_resolution(&d1).unwrap();
        assert_eq!(res.length(), Some(0));
        assert!(verify_resolution(&res.complex).passed());
    }

    #[test]
    fn certificate_flags_broken_complexes() {
        let c = fi(2);
        let s1 = simple_module(&c, Side::Left, o(&c, "1"));
        let res = injective_resolution(&s1).unwrap();
        let broken = res.complex.with_zero_map(1);
        let cert = verify_resolution(&broken);
        assert!(!cert.passed());
        assert!(!cert.exactness.is_exact());
        let z = zero_module(&c, Side::Left);
        let res = injective_resolution(&z).unwrap();
        assert_eq!(res.length(), None);
        assert!(verify_resolution(&res.complex).passed());
    }
}
