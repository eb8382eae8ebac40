//! Projective covers, injective envelopes, syzygies and cosyzygies.

use crate::linmod::mat::Mat;
use crate::linmod::module::Module;
use crate::linmod::morphism::Morphism;
use crate::linmod::ops::{cokernel_of, direct_sum_over, kernel_of};

/// Extends the column span of `base` to all of `F^n` with standard basis
/// vectors, returning the indices that were added (ascending).
fn complement_indices(base: &Mat, n: usize) -> Vec<usize> {
    let f = base.field();
    let mut span = base.clone();
    let mut rank = span.rank();
    let mut out = Vec::new();
    for j in 0..n {
        let mut e = Mat::zeros(f, n, 1);
        e.set(j, 0, 1);
        let cand = span.hstack(&e);
        let r = cand.rank();
        if r > rank {
            span = cand;
            rank = r;
            out.push(j);
        }
    }
    out
}

/// The map `P_v -> M` sending the trivial path at `v` to `element`.
fn map_from_projective(m: &Module, vertex: usize, element: &Mat) -> Morphism {
    let alg = m.algebra();
    let pv = Module::projective(alg, vertex);
    let blocks = (0..alg.vertex_count())
        .map(|w| {
            let mut b = Mat::zeros(m.field(), m.dim(w), pv.dim(w));
            for (j, path) in alg.basis_paths(vertex, w).iter().enumerate() {
                let col = m.path_action(vertex, &path.arrows).mul(element);
                b.paste(0, j, &col);
            }
            b
        })
        .collect();
    Morphism::new_unchecked(&pv, m, blocks)
}

/// The map `M -> I_v` determined by the functional `xi` on `M_v`.
fn map_to_injective(m: &Module, vertex: usize, xi: &Mat) -> Morphism {
    let alg = m.algebra();
    let iv = Module::injective(alg, vertex);
    let blocks = (0..alg.vertex_count())
        .map(|w| {
            let mut b = Mat::zeros(m.field(), iv.dim(w), m.dim(w));
            for (i, path) in alg.basis_paths(w, vertex).iter().enumerate() {
                let row = xi.mul(&m.path_action(w, &path.arrows));
                b.paste(i, 0, &row);
            }
            b
        })
        .collect();
    Morphism::new_unchecked(m, &iv, blocks)
}

/// `P_0 ↠ M` built from a basis of the top of `M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub cover: Module,
    pub epi: Morphism,
    /// Vertex of each indecomposable projective summand, in order.
    pub summands: Vec<usize>,
}

pub fn projective_cover(m: &Module) -> ProjectiveCover {
    let alg = m.algebra();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    let mut summands = Vec::new();
    for v in 0..alg.vertex_count() {
        let rad = m.radical_basis(v);
        for j in complement_indices(&rad, m.dim(v)) {
            let mut e = Mat::zeros(m.field(), m.dim(v), 1);
            e.set(j, 0, 1);
            let f = map_from_projective(m, v, &e);
            parts.push(f.source().clone());
            maps.push(f);
            summands.push(v);
        }
    }
    let sum = direct_sum_over(alg, &parts);
    let epi = if maps.is_empty() {
        Morphism::zero(&sum.module, m)
    } else {
        sum.from_components(&maps)
    };
    debug_assert!(epi.is_epi());
    ProjectiveCover { cover: sum.module, epi, summands }
}

/// `M ↣ I_0` built from a basis of the socle of `M`.
#[derive(Clone, Debug)]
pub struct InjectiveEnvelope {
    pub envelope: Module,
    pub mono: Morphism,
    pub summands: Vec<usize>,
}

pub fn injective_envelope(m: &Module) -> InjectiveEnvelope {
    let alg = m.algebra();
    let f = m.field();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    let mut summands = Vec::new();
    for v in 0..alg.vertex_count() {
        let soc = m.socle_basis(v);
        if soc.cols() == 0 {
            continue;
        }
        // functionals dual to the socle basis
        let xis = soc.transpose().solve(&Mat::identity(f, soc.cols())).expect("socle basis is independent");
        for i in 0..soc.cols() {
            let xi = xis.column(i).transpose();
            let g = map_to_injective(m, v, &xi);
            parts.push(g.target().clone());
            maps.push(g);
            summands.push(v);
        }
    }
    let sum = direct_sum_over(alg, &parts);
    let mono = if maps.is_empty() {
        Morphism::zero(m, &sum.module)
    } else {
        sum.into_components(&maps)
    };
    debug_assert!(mono.is_mono());
    InjectiveEnvelope { envelope: sum.module, mono, summands }
}

/// `P_1 -> P_0 ↠ M` together with the syzygy in between.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub p0: ProjectiveCover,
    pub syzygy: Module,
    /// `ΩM ↣ P_0`
    pub syzygy_inclusion: Morphism,
    pub p1: ProjectiveCover,
    /// `P_1 -> P_0`
    pub differential: Morphism,
}

pub fn projective_presentation(m: &Module) -> ProjectivePresentation {
    let p0 = projective_cover(m);
    let (syz, incl) = kernel_of(&p0.epi);
    let p1 = projective_cover(&syz);
    let differential = p1.epi.then(&incl);
    ProjectivePresentation { p0, syzygy: syz, syzygy_inclusion: incl, p1, differential }
}

/// Kernel of the projective cover.
pub fn syzygy(m: &Module) -> Module {
    kernel_of(&projective_cover(m).epi).0
}

/// Cokernel of the injective envelope.
pub fn cosyzygy(m: &Module) -> Module {
    cokernel_of(&injective_envelope(m).mono).0
}

pub fn is_projective(m: &Module) -> bool {
    projective_cover(m).cover.total_dim() == m.total_dim()
}

pub fn is_injective(m: &Module) -> bool {
    injective_envelope(m).envelope.total_dim() == m.total_dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::linmod::iso::is_isomorphic;

    #[test]
    fn projective_has_trivial_presentation() {
        let alg = demos::lambda2();
        let p = Module::projective(&alg, 0);
        let pres = projective_presentation(&p);
        assert!(pres.p0.epi.is_iso());
        assert!(pres.syzygy.is_zero());
        assert!(pres.p1.cover.is_zero());
        assert!(is_projective(&p) && is_injective(&p));
    }

    #[test]
    fn lambda_syzygy_of_simple() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let pres = projective_presentation(&k);
        assert_eq!(pres.p0.cover.total_dim(), 2);
        assert_eq!(pres.p1.cover.total_dim(), 2);
        assert!(is_isomorphic(&pres.syzygy, &k).unwrap().is_iso());
        assert!(pres.differential.then(&pres.p0.epi).is_zero());
        assert!(is_isomorphic(&cosyzygy(&k), &k).unwrap().is_iso());
    }

    #[test]
    fn a2_syzygy_of_top_simple() {
        let alg = demos::a2();
        let s1 = Module::simple(&alg, 0);
        let s2 = Module::simple(&alg, 1);
        let pres = projective_presentation(&s1);
        assert_eq!(pres.p0.cover.dims(), &[1, 1]);
        assert_eq!(pres.syzygy, s2);
        assert!(syzygy(&s2).is_zero());
        assert!(is_isomorphic(&cosyzygy(&s2), &s1).unwrap().is_iso());
        assert!(is_injective(&s1) && !is_projective(&s1));
    }

    #[test]
    fn n3_syzygies() {
        let alg = demos::n3();
        let m1 = Module::simple(&alg, 0);
        let om = syzygy(&m1);
        assert_eq!(om.total_dim(), 2);
        let om2 = syzygy(&om);
        assert!(is_isomorphic(&om2, &m1).unwrap().is_iso());
        let env = injective_envelope(&om);
        assert_eq!(env.envelope.total_dim(), 3);
    }
}
