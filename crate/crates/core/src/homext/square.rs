use crate::error::{Error, Result};
use crate::linmod::morphism::Morphism;
use crate::linmod::ops::direct_sum;

/// A square
///
/// ```text
/// A --top--> B
/// |          |
/// left     right
/// v          v
/// C --bottom-> D
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub top: Morphism,
    pub left: Morphism,
    pub right: Morphism,
    pub bottom: Morphism,
}

impl Square {
    pub fn commutes(&self) -> bool {
        self.top.target() == self.right.source()
            && self.left.target() == self.bottom.source()
            && self.top.source() == self.left.source()
            && self.right.target() == self.bottom.target()
            && self.top.then(&self.right) == self.left.then(&self.bottom)
    }
}

/// Whether a commuting square is both a pullback and a pushout, i.e.
/// `0 -> A -> B ⊕ C -> D -> 0` is exact.
pub fn bicartesian_check(sq: &Square) -> Result<bool> {
    if !sq.commutes() {
        return Err(Error::Precondition("square does not commute".into()));
    }
    let sum = direct_sum(sq.top.target(), sq.left.target());
    let into = sum.into_components(&[sq.top.clone(), sq.left.clone()]);
    let out = sum.from_components(&[sq.right.clone(), sq.bottom.neg()]);
    let a = sq.top.source();
    let d = sq.right.target();
    for v in 0..a.dims().len() {
        if into.block(v).rank() != a.dim(v)
            || out.block(v).rank() != d.dim(v)
            || a.dim(v) + d.dim(v) != sum.module.dim(v)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::linmod::mat::Mat;
    use crate::linmod::module::Module;
    use crate::linmod::ops::pullback;

    #[test]
    fn identity_square() {
        let alg = demos::lambda2();
        let p = Module::projective(&alg, 0);
        let id = Morphism::identity(&p);
        let sq = Square { top: id.clone(), left: id.clone(), right: id.clone(), bottom: id };
        assert!(bicartesian_check(&sq).unwrap());
    }

    #[test]
    fn pullback_of_epi() {
        let alg = demos::lambda2();
        let f = alg.field();
        let k = Module::simple(&alg, 0);
        let p = Module::projective(&alg, 0);
        let top = Morphism::new(&p, &k, vec![Mat::from_rows(f, &[&[1, 0]])]).unwrap();
        let pb = pullback(&top, &top).unwrap();
        let sq = Square { top: pb.to_first, left: pb.to_second, right: top.clone(), bottom: top };
        assert!(bicartesian_check(&sq).unwrap());
    }

    #[test]
    fn zero_verticals() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let p = Module::projective(&alg, 0);
        let f = alg.field();
        let socle = Morphism::new(&k, &p, vec![Mat::from_rows(f, &[&[0], &[1]])]).unwrap();
        let sq = Square {
            top: socle.clone(),
            left: Morphism::zero(&k, &k),
            right: Morphism::zero(&p, &p),
            bottom: socle,
        };
        assert!(!bicartesian_check(&sq).unwrap());
        let bad = Square {
            top: Morphism::identity(&k),
            left: Morphism::identity(&k),
            right: Morphism::identity(&k),
            bottom: Morphism::zero(&k, &k),
        };
        assert!(bicartesian_check(&bad).is_err());
    }
}
