use std::sync::Arc;

use hovey_core::demos;
use hovey_core::homext::{baer_equivalence, ext1};
use hovey_core::linmod::{decompose, direct_sum, hom_basis, Algebra, Mat, Module};
use proptest::prelude::*;

/// Builds a module with the given dimensions, filling arrow matrices from
/// `entries` in order. `None` when the relations fail.
fn build(alg: &Arc<Algebra>, dims: Vec<usize>, entries: &[u32]) -> Option<Module> {
    let f = alg.field();
    let mut it = entries.iter().copied().cycle();
    let action = alg
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims[a.target], dims[a.source]);
            let v: Vec<i64> = (0..r * c).map(|_| it.next().unwrap_or(0) as i64).collect();
            Mat::from_vec(f, r, c, &v).unwrap()
        })
        .collect();
    Module::new(alg, dims, action).ok()
}

/// Nilpotent single-loop module: strictly upper triangular entries.
fn nilpotent(alg: &Arc<Algebra>, dim: usize, entries: &[u32]) -> Option<Module> {
    let f = alg.field();
    let mut m = Mat::zeros(f, dim, dim);
    let mut it = entries.iter().copied().cycle();
    for i in 0..dim {
        for j in i + 1..dim {
            m.set(i, j, it.next().unwrap());
        }
    }
    Module::new(alg, vec![dim], vec![m]).ok()
}

/// Counts commuting vertex families by enumeration.
fn hom_count(m: &Module, n: &Module) -> u64 {
    let alg = m.algebra();
    let f = alg.field();
    let p = f.p();
    let sizes: Vec<usize> = (0..alg.vertex_count()).map(|v| n.dim(v) * m.dim(v)).collect();
    let total: usize = sizes.iter().sum();
    let mut v = vec![0u32; total];
    let mut count = 0;
    loop {
        let mut off = 0;
        let hs: Vec<Mat> = (0..alg.vertex_count())
            .map(|x| {
                let e: Vec<i64> = v[off..off + sizes[x]].iter().map(|&c| c as i64).collect();
                off += sizes[x];
                Mat::from_vec(f, n.dim(x), m.dim(x), &e).unwrap()
            })
            .collect();
        let commutes = alg
            .arrows()
            .iter()
            .enumerate()
            .all(|(i, a)| n.action(i).mul(&hs[a.source]) == hs[a.target].mul(m.action(i)));
        if commutes {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == total {
                return count;
            }
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

fn a2_module() -> impl Strategy<Value = Module> {
    (0usize..=2, 0usize..=2, prop::collection::vec(0u32..2, 4))
        .prop_filter_map("relations", |(a, b, e)| build(&demos::a2(), vec![a, b], &e))
}

fn n3_module() -> impl Strategy<Value = Module> {
    (1usize..=3, prop::collection::vec(0u32..2, 3)).prop_filter_map("relations", |(d, e)| nilpotent(&demos::n3(), d, &e))
}

fn any_module() -> impl Strategy<Value = Module> {
    prop_oneof![a2_module(), n3_module()]
}

fn same_algebra_pair() -> impl Strategy<Value = (Module, Module)> {
    prop_oneof![(a2_module(), a2_module()), (n3_module(), n3_module())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_dimension_matches_enumeration((m, n) in same_algebra_pair()) {
        let dim = hom_basis(&m, &n).unwrap().len();
        let p = m.field().p() as u64;
        prop_assert_eq!(p.pow(dim as u32), hom_count(&m, &n));
    }

    #[test]
    fn ext_is_additive_in_each_argument((m, n) in same_algebra_pair(), k in 0usize..3) {
        let alg = m.algebra().clone();
        let extra = if alg.vertex_count() == 2 { Module::simple(&alg, k % 2) } else { Module::projective(&alg, 0) };
        let sum = direct_sum(&m, &extra).module;
        let d = |a: &Module, b: &Module| ext1(a, b).unwrap().dimension();
        prop_assert_eq!(d(&sum, &n), d(&m, &n) + d(&extra, &n));
        prop_assert_eq!(d(&n, &sum), d(&n, &m) + d(&n, &extra));
    }

    #[test]
    fn realization_round_trips((m, n) in same_algebra_pair()) {
        let space = ext1(&m, &n).unwrap();
        prop_assume!(space.class_count().is_some_and(|c| c <= 16));
        let classes: Vec<_> = space.classes().collect();
        let sequences: Vec<_> = classes.iter().map(|c| space.realize(c).unwrap()).collect();
        for (c, s) in classes.iter().zip(&sequences) {
            prop_assert_eq!(&space.class_of(s).unwrap(), c);
        }
        for (i, a) in sequences.iter().enumerate() {
            for (j, b) in sequences.iter().enumerate() {
                prop_assert_eq!(baer_equivalence(a, b).unwrap().is_some(), i == j);
            }
        }
    }

    #[test]
    fn decomposition_verifies(m in any_module()) {
        let d = decompose(&m).unwrap();
        prop_assert!(d.verify());
    }
}

#[test]
fn self_extensions_of_the_simple_over_dual_numbers() {
    let alg = demos::lambda2();
    let k = Module::simple(&alg, 0);
    assert_eq!(hom_count(&k, &k), 2);
    assert_eq!(ext1(&k, &k).unwrap().dimension(), 1);
    let p = Module::projective(&alg, 0);
    assert_eq!(ext1(&k, &p).unwrap().dimension(), 0);
}
