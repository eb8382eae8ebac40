//! `Ext^1` through a projective presentation: `Hom(ΩM, N)` modulo the
//! restrictions of maps `P_0 -> N`.

use crate::error::{Error, Result};
use crate::homext::presentation::{projective_cover, syzygy, ProjectiveCover};
use crate::linmod::mat::Mat;
use crate::linmod::module::Module;
use crate::linmod::morphism::{combine, coordinates, hom_basis, HomSystem, Morphism};
use crate::linmod::ops::{kernel_of, pushout};
use crate::linmod::ses::ShortExactSequence;

/// An element of `Ext^1(M, N)` in the coordinates of its parent space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtClass {
    pub coordinates: Vec<u32>,
}

impl ExtClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug)]
pub struct ExtSpace {
    source: Module,
    target: Module,
    cover: ProjectiveCover,
    syzygy_inclusion: Morphism,
    /// Basis of `Hom(ΩM, N)`.
    cocycles: Vec<Morphism>,
    /// Row-reduced coordinates of the coboundaries `Hom(P_0, N) ∘ ι`.
    coboundaries: Mat,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

pub fn ext1(m: &Module, n: &Module) -> Result<ExtSpace> {
    m.check_same_algebra(n)?;
    let cover = projective_cover(m);
    let (omega, incl) = kernel_of(&cover.epi);
    let cocycles = hom_basis(&omega, n)?;
    let f = m.field();
    let restrictions: Vec<Vec<u32>> = hom_basis(&cover.cover, n)?
        .iter()
        .map(|g| coordinates(&cocycles, &incl.then(g)).expect("restriction lies in Hom(ΩM, N)"))
        .collect();
    let flat: Vec<i64> = restrictions.iter().flatten().map(|&x| x as i64).collect();
    let image = Mat::from_vec(f, restrictions.len(), cocycles.len(), &flat)?;
    let (rref, pivots) = image.rref();
    let coboundaries = rref.row_range(0, pivots.len());
    let free = (0..cocycles.len()).filter(|c| !pivots.contains(c)).collect();
    Ok(ExtSpace {
        source: m.clone(),
        target: n.clone(),
        cover,
        syzygy_inclusion: incl,
        cocycles,
        coboundaries,
        pivots,
        free,
    })
}

impl ExtSpace {
    /// `M` in `Ext^1(M, N)`.
    pub fn source(&self) -> &Module {
        &self.source
    }

    /// `N` in `Ext^1(M, N)`.
    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn hom_syzygy_dimension(&self) -> usize {
        self.cocycles.len()
    }

    pub fn coboundary_rank(&self) -> usize {
        self.pivots.len()
    }

    /// Representative cocycles `ΩM -> N`, one per basis class.
    pub fn cocycle_basis(&self) -> Vec<Morphism> {
        self.free.iter().map(|&j| self.cocycles[j].clone()).collect()
    }

    pub fn zero(&self) -> ExtClass {
        ExtClass { coordinates: vec![0; self.dimension()] }
    }

    pub fn basis_class(&self, i: usize) -> ExtClass {
        let mut c = self.zero();
        c.coordinates[i] = 1;
        c
    }

    pub fn class(&self, coordinates: Vec<u32>) -> Result<ExtClass> {
        if coordinates.len() != self.dimension() {
            return Err(Error::Usage(format!(
                "class needs {} coordinates, got {}",
                self.dimension(),
                coordinates.len()
            )));
        }
        let p = self.source.field().p();
        Ok(ExtClass { coordinates: coordinates.into_iter().map(|c| c % p).collect() })
    }

    /// All `p^dim` classes in lexicographic coordinate order, zero first.
    pub fn classes(&self) -> impl Iterator<Item = ExtClass> + '_ {
        let p = self.source.field().p();
        let d = self.dimension();
        let total = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut coords = vec![0u32; d];
            for c in coords.iter_mut().rev() {
                *c = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            ExtClass { coordinates: coords }
        })
    }

    pub fn class_count(&self) -> Option<u64> {
        (self.source.field().p() as u64).checked_pow(self.dimension() as u32)
    }

    /// Class of a cocycle `ΩM -> N`.
    pub fn class_of_cocycle(&self, phi: &Morphism) -> ExtClass {
        let field = self.source.field();
        let mut c = coordinates(&self.cocycles, phi).expect("cocycle lies in Hom(ΩM, N)");
        for (i, &pc) in self.pivots.iter().enumerate() {
            let s = c[pc];
            if s != 0 {
                for (j, x) in c.iter_mut().enumerate() {
                    *x = field.sub(*x, field.mul(s, self.coboundaries.get(i, j)));
                }
            }
        }
        ExtClass { coordinates: self.free.iter().map(|&j| c[j]).collect() }
    }

    pub fn cocycle(&self, class: &ExtClass) -> Morphism {
        let omega = self.syzygy_inclusion.source();
        combine(omega, &self.target, &self.cocycle_basis(), &class.coordinates)
    }

    /// The extension `N ↣ E ↠ M` obtained by pushing `ΩM ↣ P_0` out along the cocycle.
    pub fn realize(&self, class: &ExtClass) -> Result<ShortExactSequence> {
        Ok(self.realize_with_pushout(class)?.0)
    }

    /// Realization together with the pushout square `(ι, φ, i_P, i_N)`.
    pub fn realize_with_pushout(
        &self,
        class: &ExtClass,
    ) -> Result<(ShortExactSequence, crate::homext::square::Square)> {
        let phi = self.cocycle(class);
        let po = pushout(&self.syzygy_inclusion, &phi)?;
        let mut sys = HomSystem::new(&po.module, &self.source)?;
        sys.pre_compose(&po.from_first, &self.cover.epi);
        sys.pre_compose(&po.from_second, &Morphism::zero(&self.target, &self.source));
        let epi = sys.solve().ok_or_else(|| Error::Precondition("pushout has no induced epi".into()))?;
        let ses = ShortExactSequence::new(po.from_second.clone(), epi)?;
        let square = crate::homext::square::Square {
            top: self.syzygy_inclusion.clone(),
            left: phi,
            right: po.from_first,
            bottom: po.from_second,
        };
        Ok((ses, square))
    }

    /// Class of an extension `N ↣ E ↠ M` with exactly these end terms.
    pub fn class_of(&self, ses: &ShortExactSequence) -> Result<ExtClass> {
        if ses.quotient_term() != &self.source || ses.kernel_term() != &self.target {
            return Err(Error::Precondition("sequence ends do not match the Ext space".into()));
        }
        let mut sys = HomSystem::new(&self.cover.cover, ses.middle())?;
        sys.post_compose(ses.epi(), &self.cover.epi);
        let lift = sys.solve().ok_or_else(|| Error::Precondition("projective cover did not lift".into()))?;
        let restricted = self.syzygy_inclusion.then(&lift);
        let mut sys = HomSystem::new(self.syzygy_inclusion.source(), &self.target)?;
        sys.post_compose(ses.mono(), &restricted);
        let phi = sys.solve().ok_or_else(|| Error::Precondition("restriction misses the kernel term".into()))?;
        Ok(self.class_of_cocycle(&phi))
    }
}

/// `dim Ext^n(M, N)` for `n` in `{1, 2}`, using `Ext^2(M, N) = Ext^1(ΩM, N)`.
pub fn ext_dim(m: &Module, n: &Module, degree: usize) -> Result<usize> {
    match degree {
        1 => Ok(ext1(m, n)?.dimension()),
        2 => Ok(ext1(&syzygy(m), n)?.dimension()),
        d => Err(Error::Usage(format!("Ext^{d} is not supported"))),
    }
}

pub fn realize_extension(space: &ExtSpace, class: &ExtClass) -> Result<ShortExactSequence> {
    space.realize(class)
}

/// A middle isomorphism `E_1 -> E_2` restricting to the identity on both
/// ends, present iff the two extensions are Baer equivalent.
pub fn baer_equivalence(a: &ShortExactSequence, b: &ShortExactSequence) -> Result<Option<Morphism>> {
    if a.kernel_term() != b.kernel_term() || a.quotient_term() != b.quotient_term() {
        return Err(Error::Precondition("extensions have different end terms".into()));
    }
    let mut sys = HomSystem::new(a.middle(), b.middle())?;
    sys.pre_compose(a.mono(), b.mono());
    sys.post_compose(b.epi(), a.epi());
    Ok(sys.solve())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::linmod::iso::is_isomorphic;
    use crate::linmod::ops::split_mono_retraction;

    #[test]
    fn vanishing_cases() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let p = Module::projective(&alg, 0);
        assert_eq!(ext1(&p, &k).unwrap().dimension(), 0);
        assert_eq!(ext1(&k, &p).unwrap().dimension(), 0);
        assert_eq!(ext1(&k, &k).unwrap().dimension(), 1);
        assert_eq!(ext_dim(&k, &k, 2).unwrap(), 1);
        assert!(ext_dim(&k, &k, 3).is_err());
    }

    #[test]
    fn a2_table() {
        let alg = demos::a2();
        let mods = [Module::simple(&alg, 0), Module::simple(&alg, 1), Module::projective(&alg, 0)];
        for (i, m) in mods.iter().enumerate() {
            for (j, n) in mods.iter().enumerate() {
                let d = ext1(m, n).unwrap().dimension();
                assert_eq!(d, usize::from(i == 0 && j == 1), "Ext({i},{j})");
                assert_eq!(ext_dim(m, n, 2).unwrap(), 0);
            }
        }
    }

    #[test]
    fn realize_lambda_nonsplit() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let p = Module::projective(&alg, 0);
        let e = ext1(&k, &k).unwrap();
        let s = e.realize(&e.basis_class(0)).unwrap();
        assert!(is_isomorphic(s.middle(), &p).unwrap().is_iso());
        assert_eq!(e.class_of(&s).unwrap(), e.basis_class(0));
        let z = e.realize(&e.zero()).unwrap();
        assert!(split_mono_retraction(z.mono()).is_some());
        assert!(e.class_of(&z).unwrap().is_zero());
        assert!(baer_equivalence(&s, &z).unwrap().is_none());
        assert!(baer_equivalence(&s, &s).unwrap().unwrap().is_iso());
    }

    #[test]
    fn realize_a2_nonsplit() {
        let alg = demos::a2();
        let s1 = Module::simple(&alg, 0);
        let s2 = Module::simple(&alg, 1);
        let e = ext1(&s1, &s2).unwrap();
        let s = e.realize(&e.basis_class(0)).unwrap();
        assert!(is_isomorphic(s.middle(), &Module::projective(&alg, 0)).unwrap().is_iso());
    }
}
