//! Pulling extensions back along maps into the quotient term and pushing them
//! out along maps from the kernel term.

use crate::error::{Error, Result};
use crate::homext::square::Square;
use crate::linmod::morphism::{HomSystem, Morphism};
use crate::linmod::ops::{pullback, pushout};
use crate::linmod::ses::ShortExactSequence;

/// `N ↣ E' ↠ X` from `N ↣ E ↠ M` and `f: X -> M`, with the pullback square
/// `(E' -> E, E' -> X, E -> M, f)`.
pub fn pullback_extension(s: &ShortExactSequence, f: &Morphism) -> Result<(ShortExactSequence, Square)> {
    if f.target() != s.quotient_term() {
        return Err(Error::Precondition("map must land in the quotient term".into()));
    }
    let pb = pullback(s.epi(), f)?;
    let mut sys = HomSystem::new(s.kernel_term(), &pb.module)?;
    sys.post_compose(&pb.to_first, s.mono());
    sys.post_compose(&pb.to_second, &Morphism::zero(s.kernel_term(), f.source()));
    let mono = sys.solve().ok_or_else(|| Error::Precondition("kernel term does not lift".into()))?;
    let ses = ShortExactSequence::new(mono, pb.to_second.clone())?;
    let square = Square { top: pb.to_first, left: pb.to_second, right: s.epi().clone(), bottom: f.clone() };
    Ok((ses, square))
}

/// `Y ↣ E' ↠ M` from `N ↣ E ↠ M` and `g: N -> Y`, with the pushout square
/// `(N ↣ E, g, E -> E', Y -> E')`.
pub fn pushout_extension(s: &ShortExactSequence, g: &Morphism) -> Result<(ShortExactSequence, Square)> {
    if g.source() != s.kernel_term() {
        return Err(Error::Precondition("map must start at the kernel term".into()));
    }
    let po = pushout(s.mono(), g)?;
    let mut sys = HomSystem::new(&po.module, s.quotient_term())?;
    sys.pre_compose(&po.from_first, s.epi());
    sys.pre_compose(&po.from_second, &Morphism::zero(g.target(), s.quotient_term()));
    let epi = sys.solve().ok_or_else(|| Error::Precondition("no induced quotient map".into()))?;
    let ses = ShortExactSequence::new(po.from_second.clone(), epi)?;
    let square = Square { top: s.mono().clone(), left: g.clone(), right: po.from_first, bottom: po.from_second };
    Ok((ses, square))
}
