use std::sync::Arc;

use super::*;
use crate::eicat::{CategoryBuilder, FiniteEICategory, Obj};
use crate::instances::InstanceSpec;

fn fi(level: usize) -> Arc<FiniteEICategory> {
    Arc::new(InstanceSpec::fi(None, level).build().unwrap())
}

fn o(c: &FiniteEICategory, id: &str) -> Obj {
    c.object(id).unwrap()
}

/// u, v: 0 -> 1 and f: 1 -> 2 with f∘u = f∘v.
fn collapsing() -> Arc<FiniteEICategory> {
    let mut b = CategoryBuilder::new();
    let objs: Vec<usize> = ["0", "1", "2"]
        .iter()
        .map(|x| b.add_object(x, None).unwrap())
        .collect();
    let ids: Vec<usize> = (0..3)
        .map(|k| b.add_morphism(&format!("e{k}"), objs[k], objs[k]).unwrap())
        .collect();
    let u = b.add_morphism("u", objs[0], objs[1]).unwrap();
    let v = b.add_morphism("v", objs[0], objs[1]).unwrap();
    let f = b.add_morphism("f", objs[1], objs[2]).unwrap();
    let w = b.add_morphism("w", objs[0], objs[2]).unwrap();
    for k in 0..3 {
        b.set_identity(objs[k], ids[k]).unwrap();
        b.set_composite(ids[k], ids[k], ids[k]).unwrap();
    }
    for (x, s, t) in [(u, 0, 1), (v, 0, 1), (f, 1, 2), (w, 0, 2)] {
        b.set_composite(x, ids[s], x).unwrap();
        b.set_composite(ids[t], x, x).unwrap();
    }
    b.set_composite(f, u, w).unwrap();
    b.set_composite(f, v, w).unwrap();
    let c = b.build();
    assert!(c.validate().is_ok());
    Arc::new(c)
}

#[test]
fn free_module_dimensions() {
    let c = fi(2);
    let left = free_module(&c, Side::Left, o(&c, "1"));
    assert_eq!(left.dims(), &[0, 1, 2]);
    assert!(left.validate().is_ok());
    let right = free_module(&c, Side::Right, o(&c, "1"));
    assert_eq!(right.dims(), &[1, 1, 0]);
    assert!(right.validate().is_ok());
    assert_eq!(left.support(), vec![o(&c, "1"), o(&c, "2")]);
    assert_eq!(right.support(), vec![o(&c, "0"), o(&c, "1")]);
    let d = left.dualize();
    assert_eq!(d.side(), Side::Right);
    assert_eq!(d.dims(), &[0, 1, 2]);
    assert!(d.validate().is_ok());
    assert!(d.dualize().same(&left));
}

#[test]
fn validation_catches_bad_identity() {
    let c = fi(1);
    let z = zero_module(&c, Side::Left);
    assert!(z.validate().is_ok());
    let t = trivial_module(&c, Side::Left);
    assert!(t.validate().is_ok());
    let mut action = t.actions().to_vec();
    let e = c.identity(o(&c, "1"));
    action[e.0] = ExactMatrix::from_i64(1, 1, &[2]);
    let bad = CatModule::new(c.clone(), Side::Left, vec![1, 1], action).unwrap();
    assert!(!bad.validate().is_ok());
    let mut action = t.actions().to_vec();
    action[e.0] = ExactMatrix::zeros(2, 1);
    let bad = CatModule::new(c, Side::Left, vec![1, 1], action).unwrap();
    assert!(matches!(
        bad.validate().violations[0],
        ModuleViolation::WrongShape { .. }
    ));
}

#[test]
fn hom_spaces_on_small_examples() {
    let c = fi(2);
    let a1 = free_module(&c, Side::Left, o(&c, "1"));
    let end = HomSpace::new(&a1, &a1).unwrap();
    assert_eq!(end.dim(), 1);
    assert!(end.coordinates(&ModuleHom::identity(&a1)).is_some());
    let s0 = simple_module(&c, Side::Left, o(&c, "0"));
    for i in c.objects() {
        let ai = free_module(&c, Side::Left, i);
        assert_eq!(HomSpace::new(&s0, &ai).unwrap().dim(), 0);
    }
}

#[test]
fn yoneda_and_duality_dimensions() {
    let c = Arc::new(InstanceSpec::fi(Some("Z/2"), 2).build().unwrap());
    let modules = vec![
        trivial_module(&c, Side::Left),
        simple_module(&c, Side::Left, o(&c, "1")),
        free_module(&c, Side::Left, o(&c, "1")).dualize().dualize(),
        free_module(&c, Side::Right, o(&c, "2")).dualize(),
    ];
    for v in &modules {
        for i in c.objects() {
            let ai = free_module(&c, Side::Left, i);
            let h = HomSpace::new(&ai, v).unwrap();
            assert_eq!(h.dim(), v.dim(i));
            for phi in h.basis() {
                assert!(phi.is_natural());
            }
        }
        for w in &modules {
            let a = HomSpace::new(v, w).unwrap().dim();
            let b = HomSpace::new(&w.dualize(), &v.dualize()).unwrap().dim();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn extension_and_restriction() {
    let c = fi(2);
    let sub = c.right_closed_subcategory(&[o(&c, "1")]);
    let s1 = simple_module(&sub.category, Side::Left, o(&sub.category, "1"));
    let ext = extend_by_zero(&s1, &sub, &c).unwrap();
    assert!(ext.validate().is_ok());
    assert_eq!(ext.support(), vec![o(&c, "1")]);
    assert!(restrict(&ext, &sub).same(&s1));
    let upper = c.full_subcategory(&[o(&c, "1"), o(&c, "2")]);
    let a1 = free_module(&c, Side::Left, o(&c, "1"));
    assert_eq!(restrict(&a1, &upper).dims(), &[1, 2]);
    let gap = c.full_subcategory(&[o(&c, "0"), o(&c, "2")]);
    let t = trivial_module(&gap.category, Side::Left);
    assert_eq!(
        extend_by_zero(&t, &gap, &c).unwrap_err(),
        ModuleError::NotConvex
    );
}

#[test]
fn induction_and_covers() {
    let c = fi(2);
    let (o0, o1) = (o(&c, "0"), o(&c, "1"));
    let s1 = simple_module(&c, Side::Right, o1);
    let ind = tensor_induce(&s1, o1);
    assert_eq!(ind.module.dims(), &[1, 1, 0]);
    assert!(ind.module.validate().is_ok());
    assert!(ind.multiplication.is_natural());
    assert!(
        find_isomorphism(&ind.module, &free_module(&c, Side::Right, o1))
            .unwrap()
            .is_some()
    );

    let e1 = free_module(&c, Side::Right, o1);
    let (p, pi) = canonical_cover(&e1);
    assert_eq!(p.dims(), &[2, 1, 0]);
    assert!(pi.is_natural() && pi.is_surjective());
    let e0 = free_module(&c, Side::Right, o0);
    let sum = direct_sum(&[e1.clone(), e0]).unwrap();
    assert!(find_isomorphism(&p, &sum.module).unwrap().is_some());

    let (p, pi) = canonical_cover(&s1);
    assert_eq!(p.dims(), &[1, 1, 0]);
    let (k, incl) = pi.kernel();
    assert_eq!(k.dims(), &[1, 0, 0]);
    assert!(k.validate().is_ok() && incl.is_natural());
    let seq = ChainComplex::new(vec![k, p, s1.clone()], vec![incl, pi]).unwrap();
    assert!(seq.is_exact());
}

#[test]
fn induction_keeps_dimension_at_base_object() {
    let c = Arc::new(InstanceSpec::fi(Some("Z/2"), 2).build().unwrap());
    let w = free_module(&c, Side::Right, o(&c, "2"));
    for i in c.objects() {
        let ind = tensor_induce(&w, i);
        assert_eq!(ind.module.dim(i), w.dim(i));
        assert!(ind.module.validate().is_ok());
        assert!(ind.multiplication.is_natural());
    }
}

#[test]
fn projectivity_split_test() {
    let c = fi(2);
    for i in c.objects() {
        assert!(is_projective(&free_module(&c, Side::Left, i)));
        assert!(is_injective(&free_module(&c, Side::Right, i).dualize()));
    }
    assert!(!is_injective(&free_module(&c, Side::Left, o(&c, "2"))));
    assert!(!is_projective(&simple_module(&c, Side::Left, o(&c, "1"))));
    assert!(is_projective(&zero_module(&c, Side::Left)));
    let s = projective_section(&free_module(&c, Side::Left, o(&c, "1"))).unwrap();
    assert!(s.is_natural());
}

#[test]
fn exactness_reports() {
    let c = fi(1);
    let v = trivial_module(&c, Side::Left);
    let id = ModuleHom::identity(&v);
    let seq = ChainComplex::new(vec![v.clone(), v.clone()], vec![id]).unwrap();
    assert!(seq.is_exact());
    let broken = seq.with_zero_map(0);
    assert_eq!(broken.exactness().failures(), vec![0, 1]);
    let single = ChainComplex::new(vec![v.clone()], vec![]).unwrap();
    let report = single.exactness();
    assert!(!report.is_exact());
    assert_eq!(report.positions[0].dims, v.dims());
    let dual = seq.dualize();
    assert!(dual.is_exact());
    assert_eq!(dual.side(), Side::Right);
}

#[test]
fn torsion_free_matches_monomorphisms() {
    let c = fi(3);
    for i in c.objects() {
        assert!(free_module(&c, Side::Left, i).is_torsion_free());
    }
    let bad = collapsing();
    let witnesses: Vec<_> = bad
        .objects()
        .filter_map(|i| free_module(&bad, Side::Left, i).torsion_witness())
        .collect();
    assert_eq!(witnesses, vec![bad.morphism("f").unwrap()]);
    assert_eq!(bad.non_monomorphisms(), witnesses);
}

#[test]
fn submodules_and_quotients() {
    let c = fi(2);
    let a0 = free_module(&c, Side::Left, o(&c, "0"));
    let (sub, incl) = submodule_generated(&a0, &[(o(&c, "1"), vec![Rational::one()])]).unwrap();
    assert_eq!(sub.dims(), &[0, 1, 1]);
    assert!(incl.is_natural() && incl.is_injective());
    let (q, proj) = incl.cokernel();
    assert_eq!(q.dims(), &[1, 0, 0]);
    assert!(q.validate().is_ok() && proj.is_natural());
    let (im, _) = proj.image();
    assert!(im.same(&q) || im.dims() == q.dims());
}

#[test]
fn regular_dual_of_free_module() {
    let c = fi(2);
    let a1 = free_module(&c, Side::Left, o(&c, "1"));
    let r = regular_dual(&a1);
    assert_eq!(r.module.side(), Side::Right);
    assert_eq!(r.module.dims(), &[1, 1, 0]);
    assert!(r.module.validate().is_ok());
    let e1 = free_module(&c, Side::Right, o(&c, "1"));
    assert!(find_isomorphism(&r.module, &e1).unwrap().is_some());
    let ev = double_dual_map(&a1);
    assert!(ev.is_natural() && ev.is_isomorphism());
}
