use crate::error::{Error, Result};
use crate::homext::ext::{ext1, ExtClass, ExtSpace};
use crate::homext::transport::pullback_extension;
use crate::linmod::morphism::{HomSystem, Morphism};
use crate::linmod::ops::kernel_of;
use crate::linmod::ses::ShortExactSequence;

/// `l` with `p ∘ l = f` for an epimorphism `p: B ↠ C` and `f: Q -> C`.
pub fn lift_through_epi(p: &Morphism, f: &Morphism) -> Result<Option<Morphism>> {
    if !p.is_epi() {
        return Err(Error::Precondition("lift_through_epi needs an epimorphism".into()));
    }
    if p.target() != f.target() {
        return Err(Error::Precondition("maps must share a target".into()));
    }
    let mut sys = HomSystem::new(f.source(), p.source())?;
    sys.post_compose(p, f);
    Ok(sys.solve())
}

/// The class in `Ext^1(Q, ker p)` of the pullback of `ker p ↣ B ↠ C` along
/// `f`; it vanishes exactly when `f` lifts through `p`.
pub fn lift_obstruction(p: &Morphism, f: &Morphism) -> Result<(ExtSpace, ExtClass)> {
    if !p.is_epi() {
        return Err(Error::Precondition("lift_obstruction needs an epimorphism".into()));
    }
    let (_, incl) = kernel_of(p);
    let s = ShortExactSequence::new(incl, p.clone())?;
    let (pulled, _) = pullback_extension(&s, f)?;
    let space = ext1(f.source(), s.kernel_term())?;
    let class = space.class_of(&pulled)?;
    Ok((space, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::linmod::mat::Mat;
    use crate::linmod::module::Module;

    #[test]
    fn lambda_obstruction() {
        let alg = demos::lambda2();
        let f2 = alg.field();
        let k = Module::simple(&alg, 0);
        let p = Module::projective(&alg, 0);
        let top = Morphism::new(&p, &k, vec![Mat::from_rows(f2, &[&[1, 0]])]).unwrap();
        assert!(lift_through_epi(&top, &Morphism::identity(&k)).unwrap().is_none());
        let (space, class) = lift_obstruction(&top, &Morphism::identity(&k)).unwrap();
        assert_eq!(space.dimension(), 1);
        assert!(!class.is_zero());
        let l = lift_through_epi(&top, &Morphism::zero(&k, &k)).unwrap().unwrap();
        assert!(l.is_zero());
        // projective source always lifts
        let l = lift_through_epi(&top, &top).unwrap().unwrap();
        assert_eq!(l.then(&top), top);
        let (_, c) = lift_obstruction(&top, &top).unwrap();
        assert!(c.is_zero());
    }
}
