//! Kernels, cokernels, images, sums, pullbacks and pushouts.

use crate::error::{Error, Result};
use crate::linmod::mat::Mat;
use crate::linmod::module::Module;
use crate::linmod::morphism::{HomSystem, Morphism};

/// Restricts the action of `m` to the subspaces spanned by the columns of
/// `basis[v]`, which must be invariant.
fn restrict(m: &Module, basis: &[Mat]) -> Module {
    let alg = m.algebra();
    let dims: Vec<usize> = basis.iter().map(Mat::cols).collect();
    let action = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let img = m.action(ai).mul(&basis[a.source]);
            basis[a.target].solve(&img).expect("subspace is invariant")
        })
        .collect();
    Module::new_unchecked(alg, dims, action)
}

/// Induced action on quotients `q[v]` (full row rank, kernel invariant).
fn quotient(m: &Module, q: &[Mat]) -> Module {
    let alg = m.algebra();
    let dims: Vec<usize> = q.iter().map(Mat::rows).collect();
    let action = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // X * q_s = q_t * M(a)
            let rhs = q[a.target].mul(m.action(ai));
            q[a.source].transpose().solve(&rhs.transpose()).expect("kernel is invariant").transpose()
        })
        .collect();
    Module::new_unchecked(alg, dims, action)
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel_of(f: &Morphism) -> (Module, Morphism) {
    let basis: Vec<Mat> = f.blocks().iter().map(Mat::kernel_matrix).collect();
    let k = restrict(f.source(), &basis);
    let incl = Morphism::new_unchecked(&k, f.source(), basis);
    (k, incl)
}

/// Cokernel of `f` with the quotient map from the target.
pub fn cokernel_of(f: &Morphism) -> (Module, Morphism) {
    let q: Vec<Mat> = f.blocks().iter().map(Mat::left_kernel_matrix).collect();
    let c = quotient(f.target(), &q);
    let proj = Morphism::new_unchecked(f.target(), &c, q);
    (c, proj)
}

/// Image of `f` as a submodule of the target.
pub fn image_of(f: &Morphism) -> (Module, Morphism) {
    let basis: Vec<Mat> = f.blocks().iter().map(Mat::column_space).collect();
    let im = restrict(f.target(), &basis);
    let incl = Morphism::new_unchecked(&im, f.target(), basis);
    (im, incl)
}

/// The map `coker(f) -> X` induced by `g` with `g ∘ f = 0`.
pub fn factor_through_cokernel(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.target() != g.source() {
        return Err(Error::Precondition("g must start where f ends".into()));
    }
    if !f.then(g).is_zero() {
        return Err(Error::Precondition("g ∘ f is nonzero".into()));
    }
    let (c, proj) = cokernel_of(f);
    let mut sys = HomSystem::new(&c, g.target())?;
    sys.pre_compose(&proj, g);
    sys.solve().ok_or_else(|| Error::Precondition("cokernel factorization failed".into()))
}

/// `h` with `mono ∘ h = g`, when `g` lands in the image of `mono`.
pub fn factor_through_mono(mono: &Morphism, g: &Morphism) -> Result<Option<Morphism>> {
    if mono.target() != g.target() {
        return Err(Error::Precondition("maps must share a target".into()));
    }
    let mut sys = HomSystem::new(g.source(), mono.source())?;
    sys.post_compose(mono, g);
    Ok(sys.solve())
}

/// `h` with `h ∘ epi = g`, when `g` kills the kernel of `epi`.
pub fn factor_through_epi(epi: &Morphism, g: &Morphism) -> Result<Option<Morphism>> {
    if epi.source() != g.source() {
        return Err(Error::Precondition("maps must share a source".into()));
    }
    let mut sys = HomSystem::new(epi.target(), g.target())?;
    sys.pre_compose(epi, g);
    Ok(sys.solve())
}

/// A finite biproduct with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub inclusions: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

impl DirectSum {
    /// `[f_1 … f_n]: ⊕ M_i -> T`
    pub fn from_components(&self, maps: &[Morphism]) -> Morphism {
        assert_eq!(maps.len(), self.projections.len());
        let mut acc = Morphism::zero(&self.module, maps[0].target());
        for (p, f) in self.projections.iter().zip(maps) {
            acc = acc.add(&p.then(f));
        }
        acc
    }

    /// `(f_1; …; f_n): S -> ⊕ M_i`
    pub fn into_components(&self, maps: &[Morphism]) -> Morphism {
        assert_eq!(maps.len(), self.inclusions.len());
        let mut acc = Morphism::zero(maps[0].source(), &self.module);
        for (i, f) in self.inclusions.iter().zip(maps) {
            acc = acc.add(&f.then(i));
        }
        acc
    }
}

pub fn direct_sum(m: &Module, n: &Module) -> DirectSum {
    direct_sum_all(&[m.clone(), n.clone()])
}

/// Direct sum of a nonempty list (the zero module for an empty list needs an
/// algebra, see [`direct_sum_over`]).
pub fn direct_sum_all(parts: &[Module]) -> DirectSum {
    assert!(!parts.is_empty(), "direct_sum_all of nothing");
    direct_sum_over(parts[0].algebra(), parts)
}

pub fn direct_sum_over(alg: &std::sync::Arc<crate::linmod::algebra::Algebra>, parts: &[Module]) -> DirectSum {
    let f = alg.field();
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dim(v)).sum()).collect();
    let action = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Mat::zeros(f, dims[a.target], dims[a.source]);
            let (mut r, mut c) = (0, 0);
            for part in parts {
                m.paste(r, c, part.action(ai));
                r += part.dim(a.target);
                c += part.dim(a.source);
            }
            m
        })
        .collect();
    let sum = Module::new_unchecked(alg, dims.clone(), action);
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offsets = vec![0usize; n];
    for part in parts {
        let mut inc = Vec::new();
        let mut proj = Vec::new();
        for v in 0..n {
            let mut i = Mat::zeros(f, dims[v], part.dim(v));
            let mut p = Mat::zeros(f, part.dim(v), dims[v]);
            for k in 0..part.dim(v) {
                i.set(offsets[v] + k, k, 1);
                p.set(k, offsets[v] + k, 1);
            }
            inc.push(i);
            proj.push(p);
            offsets[v] += part.dim(v);
        }
        inclusions.push(Morphism::new_unchecked(part, &sum, inc));
        projections.push(Morphism::new_unchecked(&sum, part, proj));
    }
    DirectSum { module: sum, inclusions, projections }
}

/// Pullback of `f: X -> Z` and `g: Y -> Z`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub module: Module,
    pub to_first: Morphism,
    pub to_second: Morphism,
}

pub fn pullback(f: &Morphism, g: &Morphism) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::Precondition("pullback maps must share a target".into()));
    }
    let sum = direct_sum(f.source(), g.source());
    let diff = sum.from_components(&[f.clone(), g.neg()]);
    let (p, incl) = kernel_of(&diff);
    Ok(Pullback {
        to_first: incl.then(&sum.projections[0]),
        to_second: incl.then(&sum.projections[1]),
        module: p,
    })
}

/// Pushout of `f: Z -> X` and `g: Z -> Y`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: Module,
    pub from_first: Morphism,
    pub from_second: Morphism,
}

pub fn pushout(f: &Morphism, g: &Morphism) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::Precondition("pushout maps must share a source".into()));
    }
    let sum = direct_sum(f.target(), g.target());
    let diff = sum.into_components(&[f.clone(), g.neg()]);
    let (p, proj) = cokernel_of(&diff);
    Ok(Pushout {
        from_first: sum.inclusions[0].then(&proj),
        from_second: sum.inclusions[1].then(&proj),
        module: p,
    })
}

/// `r` with `r ∘ i = id`, present iff `i` is a split monomorphism.
pub fn split_mono_retraction(i: &Morphism) -> Option<Morphism> {
    let mut sys = HomSystem::new(i.target(), i.source()).ok()?;
    sys.pre_compose(i, &Morphism::identity(i.source()));
    sys.solve()
}

/// `s` with `p ∘ s = id`, present iff `p` is a split epimorphism.
pub fn split_epi_section(p: &Morphism) -> Option<Morphism> {
    let mut sys = HomSystem::new(p.target(), p.source()).ok()?;
    sys.post_compose(p, &Morphism::identity(p.target()));
    sys.solve()
}
