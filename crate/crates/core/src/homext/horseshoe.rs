//! Horseshoe construction: given `R ↣ Y ↠ W` and resolutions
//! `R̃ ↣ Q̃ ↠ R`, `R̃' ↣ Q̃' ↠ W`, build the middle column
//! `R̃'' ↣ Q̃ ⊕ Q̃' ↠ Y` and the top row `R̃ ↣ R̃'' ↠ R̃'`.

use crate::error::{Error, Result};
use crate::homext::lift::{lift_obstruction, lift_through_epi};
use crate::linmod::module::Module;
use crate::linmod::ops::{direct_sum, factor_through_mono, kernel_of};
use crate::linmod::ses::ShortExactSequence;

/// A commutative 3x3 diagram of short exact sequences.
#[derive(Clone, Debug)]
pub struct ThreeByThree {
    /// Top, middle and bottom rows.
    pub rows: [ShortExactSequence; 3],
    /// Left, middle and right columns.
    pub columns: [ShortExactSequence; 3],
}

impl ThreeByThree {
    /// Corner module at `(row, column)`, both in `0..3`.
    pub fn corner(&self, row: usize, col: usize) -> &Module {
        self.rows[row].term(col)
    }

    /// Re-validates all six sequences and checks the four squares commute.
    pub fn verify(&self) -> Result<()> {
        for s in self.rows.iter().chain(&self.columns) {
            ShortExactSequence::new(s.mono().clone(), s.epi().clone())?;
        }
        for r in 0..3 {
            for c in 0..3 {
                if self.corner(r, c) != self.columns[c].term(r) {
                    return Err(Error::Precondition(format!("corner ({r},{c}) differs between row and column")));
                }
            }
        }
        let [top, mid, bot] = &self.rows;
        let [left, centre, right] = &self.columns;
        let squares = [
            (top.mono().then(centre.mono()), left.mono().then(mid.mono())),
            (top.epi().then(right.mono()), centre.mono().then(mid.epi())),
            (mid.mono().then(centre.epi()), left.epi().then(bot.mono())),
            (mid.epi().then(right.epi()), centre.epi().then(bot.epi())),
        ];
        for (i, (a, b)) in squares.iter().enumerate() {
            if a != b {
                return Err(Error::Precondition(format!("square {i} does not commute")));
            }
        }
        Ok(())
    }
}

pub fn horseshoe(
    bottom: &ShortExactSequence,
    left: &ShortExactSequence,
    right: &ShortExactSequence,
) -> Result<ThreeByThree> {
    if left.quotient_term() != bottom.kernel_term() || right.quotient_term() != bottom.quotient_term() {
        return Err(Error::Precondition("columns must resolve the ends of the bottom row".into()));
    }
    let Some(lift) = lift_through_epi(bottom.epi(), right.epi())? else {
        let (_, class) = lift_obstruction(bottom.epi(), right.epi())?;
        return Err(Error::LiftObstruction { coordinates: class.coordinates });
    };
    let sum = direct_sum(left.middle(), right.middle());
    let to_y = sum.from_components(&[left.epi().then(bottom.mono()), lift]);
    let (kernel, kernel_incl) = kernel_of(&to_y);
    let centre = ShortExactSequence::new(kernel_incl.clone(), to_y)?;
    let mid = ShortExactSequence::new(sum.inclusions[0].clone(), sum.projections[1].clone())?;

    let into_kernel = factor_through_mono(&kernel_incl, &left.mono().then(&sum.inclusions[0]))?
        .ok_or_else(|| Error::Precondition("left kernel does not land in the middle kernel".into()))?;
    let onto_right = factor_through_mono(right.mono(), &kernel_incl.then(&sum.projections[1]))?
        .ok_or_else(|| Error::Precondition("middle kernel does not land in the right kernel".into()))?;
    debug_assert_eq!(kernel, *into_kernel.target());
    let top = ShortExactSequence::new(into_kernel, onto_right)?;

    let diagram = ThreeByThree {
        rows: [top, mid, bottom.clone()],
        columns: [left.clone(), centre, right.clone()],
    };
    diagram.verify()?;
    Ok(diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::linmod::morphism::Morphism;
    use crate::linmod::ops::direct_sum;

    fn trivial_resolution(m: &Module) -> ShortExactSequence {
        ShortExactSequence::new(Morphism::zero(&Module::zero(m.algebra()), m), Morphism::identity(m)).unwrap()
    }

    #[test]
    fn lambda_split_bottom() {
        let alg = demos::lambda2();
        let p = Module::projective(&alg, 0);
        let pp = direct_sum(&p, &p);
        let bottom = ShortExactSequence::new(pp.inclusions[0].clone(), pp.projections[1].clone()).unwrap();
        let r = trivial_resolution(&p);
        let d = horseshoe(&bottom, &r, &r).unwrap();
        assert!(d.corner(0, 1).is_zero());
        assert_eq!(d.corner(1, 1).total_dim(), 4);
    }

    #[test]
    fn obstruction_reported() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let e = crate::homext::ext::ext1(&k, &k).unwrap();
        let bottom = e.realize(&e.basis_class(0)).unwrap();
        // k is not projective, so the identity cover of the right end cannot lift
        let r = trivial_resolution(&k);
        let err = horseshoe(&bottom, &r, &r).unwrap_err();
        assert!(matches!(err, Error::LiftObstruction { coordinates } if coordinates == vec![1]));
    }
}
