//! Hom-space dimensions checked against the full naturality system.
//!
//! The oracle has one unknown per entry of every block and one equation per
//! entry of every naturality square, solved with its own elimination over
//! `BigRational`. It shares nothing with the library's hom solver beyond
//! the module data.

use std::sync::Arc;

use eirep::eicat::FiniteEICategory;
use eirep::instances::{group_category, symmetric_group, InstanceSpec};
use eirep::json::category_from_str;
use eirep::nakayama::{inverse_nakayama, nakayama};
use eirep::random::ModuleSampler;
use eirep::repmod::{
    free_module, simple_module, trivial_module, CatModule, HomSpace, ModuleHom, Side,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn big(x: &eirep::exactla::Rational) -> BigRational {
    x.to_big()
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= inv.clone();
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let factor = rows[k][c].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[k].iter_mut().zip(pivot) {
                    *x -= factor.clone() * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Linear conditions on the stacked blocks of a map `v -> w`.
fn naturality_system(v: &CatModule, w: &CatModule) -> (Vec<Vec<BigRational>>, usize) {
    let cat = v.cat();
    let mut offset = Vec::new();
    let mut total = 0;
    for i in cat.objects() {
        offset.push(total);
        total += w.dim(i) * v.dim(i);
    }
    // Unknown for entry (r, c) of the block at i.
    let var = |i: usize, r: usize, c: usize| offset[i] + r * v.dims()[i] + c;
    let mut rows = Vec::new();
    for f in cat.morphisms() {
        // The square runs from `a` to `b` in the direction the action goes.
        let (a, b) = match v.side() {
            Side::Left => (cat.src(f).0, cat.dst(f).0),
            Side::Right => (cat.dst(f).0, cat.src(f).0),
        };
        let (wf, vf) = (w.action(f), v.action(f));
        for r in 0..w.dims()[b] {
            for c in 0..v.dims()[a] {
                let mut row = vec![BigRational::zero(); total];
                for k in 0..w.dims()[a] {
                    row[var(a, k, c)] += big(wf.get(r, k));
                }
                for k in 0..v.dims()[b] {
                    row[var(b, r, k)] -= big(vf.get(k, c));
                }
                rows.push(row);
            }
        }
    }
    (rows, total)
}

fn naive_hom_dim(v: &CatModule, w: &CatModule) -> usize {
    let (rows, total) = naturality_system(v, w);
    total - rank(rows)
}

fn naive_is_natural(h: &ModuleHom) -> bool {
    let (rows, _) = naturality_system(h.source(), h.target());
    let x: Vec<BigRational> = h
        .blocks()
        .iter()
        .flat_map(|b| b.entries().iter().map(big).collect::<Vec<_>>())
        .collect();
    rows.iter().all(|row| {
        row.iter()
            .zip(&x)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            .is_zero()
    })
}

fn basis_rank(basis: &[ModuleHom]) -> usize {
    rank(
        basis
            .iter()
            .map(|h| {
                h.blocks()
                    .iter()
                    .flat_map(|b| b.entries().iter().map(big).collect::<Vec<_>>())
                    .collect()
            })
            .collect(),
    )
}

fn test_modules(cat: &Arc<FiniteEICategory>, side: Side, seed: u64) -> Vec<CatModule> {
    let mut out = vec![trivial_module(cat, side)];
    for i in cat.objects() {
        out.push(free_module(cat, side, i));
        out.push(free_module(cat, side.flip(), i).dualize());
        out.push(simple_module(cat, side, i));
    }
    let mut sampler = ModuleSampler::new(seed);
    out.extend((0..4).map(|_| sampler.module(cat, side)));
    out
}

fn categories() -> Vec<(&'static str, Arc<FiniteEICategory>)> {
    let non_mono = category_from_str(include_str!("fixtures/non_mono.json")).unwrap();
    vec![
        (
            "FI N=2",
            Arc::new(InstanceSpec::fi(None, 2).build().unwrap()),
        ),
        (
            "FI_Z/2 N=1",
            Arc::new(InstanceSpec::fi(Some("Z/2"), 1).build().unwrap()),
        ),
        (
            "VI_2 N=1",
            Arc::new(InstanceSpec::vi(2, 1).build().unwrap()),
        ),
        ("non-mono", Arc::new(non_mono)),
        ("S_3", Arc::new(group_category(&symmetric_group(3)))),
    ]
}

#[test]
fn hom_dimensions_match_naturality_system() {
    for (name, cat) in categories() {
        for side in [Side::Left, Side::Right] {
            let modules = test_modules(&cat, side, 17);
            for v in &modules {
                for w in &modules {
                    let space = HomSpace::new(v, w).unwrap();
                    let expected = naive_hom_dim(v, w);
                    assert_eq!(
                        space.dim(),
                        expected,
                        "{name} {side}: {:?} -> {:?}",
                        v.dims(),
                        w.dims()
                    );
                    let basis = space.basis();
                    assert!(
                        basis.iter().all(naive_is_natural),
                        "{name}: basis map not natural"
                    );
                    assert_eq!(
                        basis_rank(&basis),
                        expected,
                        "{name}: basis not independent"
                    );
                }
            }
        }
    }
}

#[test]
fn nakayama_dimensions_match_oracle() {
    for (name, cat) in categories() {
        for v in test_modules(&cat, Side::Left, 23) {
            let nu = nakayama(&v).unwrap();
            let inv = inverse_nakayama(&v).unwrap();
            let dv = v.dualize();
            for i in cat.objects() {
                let free_left = free_module(&cat, Side::Left, i);
                let free_right = free_module(&cat, Side::Right, i);
                assert_eq!(
                    nu.dim(i),
                    naive_hom_dim(&v, &free_left),
                    "{name}: nu at {i:?}"
                );
                assert_eq!(
                    inv.dim(i),
                    naive_hom_dim(&dv, &free_right),
                    "{name}: inverse at {i:?}"
                );
            }
        }
    }
}

#[test]
fn oracle_sanity() {
    // Maps between one-dimensional spaces with no conditions: the oracle
    // must see exactly one free parameter.
    let cat = Arc::new(group_category(&symmetric_group(1)));
    let t = trivial_module(&cat, Side::Left);
    assert_eq!(naive_hom_dim(&t, &t), 1);
    let two = BigRational::from_integer(BigInt::from(2));
    assert_eq!(
        rank(vec![
            vec![two.clone(), two.clone()],
            vec![BigRational::one(), BigRational::one()]
        ]),
        1
    );
}
