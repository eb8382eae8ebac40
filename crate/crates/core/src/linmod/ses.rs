use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{ExactnessError, Result};
use crate::linmod::algebra::Algebra;
use crate::linmod::module::Module;
use crate::linmod::morphism::{Morphism, MorphismSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesSpec {
    pub mono: MorphismSpec,
    pub epi: MorphismSpec,
}

/// A validated sequence `A ↣ B ↠ C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    mono: Morphism,
    epi: Morphism,
}

impl ShortExactSequence {
    pub fn new(mono: Morphism, epi: Morphism) -> Result<Self> {
        check_exact(&mono, &epi)?;
        Ok(ShortExactSequence { mono, epi })
    }

    pub fn mono(&self) -> &Morphism {
        &self.mono
    }

    pub fn epi(&self) -> &Morphism {
        &self.epi
    }

    /// `A`
    pub fn kernel_term(&self) -> &Module {
        self.mono.source()
    }

    /// `B`
    pub fn middle(&self) -> &Module {
        self.mono.target()
    }

    /// `C`
    pub fn quotient_term(&self) -> &Module {
        self.epi.target()
    }

    /// Terms by position: 0 kernel, 1 middle, 2 quotient.
    pub fn term(&self, position: usize) -> &Module {
        match position {
            0 => self.kernel_term(),
            1 => self.middle(),
            _ => self.quotient_term(),
        }
    }
}

impl ShortExactSequence {
    /// Rebuilds and re-validates a serialized sequence.
    pub fn from_spec(alg: &Arc<Algebra>, spec: &SesSpec) -> Result<Self> {
        let mono = Morphism::from_spec(alg, &spec.mono)?;
        let epi = Morphism::from_spec(alg, &spec.epi)?;
        ses_validate(&mono, &epi)
    }

    pub fn to_spec(&self) -> SesSpec {
        SesSpec { mono: self.mono.to_spec(), epi: self.epi.to_spec() }
    }
}

pub fn ses_validate(mono: &Morphism, epi: &Morphism) -> Result<ShortExactSequence> {
    ShortExactSequence::new(mono.clone(), epi.clone())
}

fn check_exact(mono: &Morphism, epi: &Morphism) -> Result<(), ExactnessError> {
    if mono.target() != epi.source() {
        return Err(ExactnessError::NotComposable);
    }
    let n = mono.blocks().len();
    for v in 0..n {
        let (a, b, c) = (mono.source().dim(v), mono.target().dim(v), epi.target().dim(v));
        if b != a + c {
            return Err(ExactnessError::DimensionCount { vertex: v, left: a, middle: b, right: c });
        }
    }
    for v in 0..n {
        if mono.block(v).rank() != mono.source().dim(v) {
            return Err(ExactnessError::NotMono(v));
        }
        if epi.block(v).rank() != epi.target().dim(v) {
            return Err(ExactnessError::NotEpi(v));
        }
    }
    if !mono.then(epi).is_zero() {
        return Err(ExactnessError::CompositeNonzero);
    }
    // With the composite zero, im ⊆ ker; equal dimensions force equality.
    for v in 0..n {
        let ker = mono.target().dim(v) - epi.block(v).rank();
        if mono.block(v).rank() != ker {
            return Err(ExactnessError::NotExactInMiddle(v));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::error::Error;
    use crate::linmod::mat::Mat;
    use crate::linmod::ops::direct_sum;

    #[test]
    fn spec_round_trip() {
        let alg = demos::lambda2();
        let p = Module::projective(&alg, 0);
        let s = ShortExactSequence::new(
            Morphism::zero(&Module::zero(&alg), &p),
            Morphism::identity(&p),
        )
        .unwrap();
        let text = serde_json::to_string(&s.to_spec()).unwrap();
        let back = ShortExactSequence::from_spec(&alg, &serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn trivial_and_lambda_sequences() {
        let alg = demos::lambda2();
        let f = alg.field();
        let k = Module::simple(&alg, 0);
        let p = Module::projective(&alg, 0);
        let zero = Module::zero(&alg);
        ses_validate(&Morphism::zero(&zero, &p), &Morphism::identity(&p)).unwrap();
        let socle = Morphism::new(&k, &p, vec![Mat::from_rows(f, &[&[0], &[1]])]).unwrap();
        let top = Morphism::new(&p, &k, vec![Mat::from_rows(f, &[&[1, 0]])]).unwrap();
        let s = ses_validate(&socle, &top).unwrap();
        assert_eq!(s.middle(), &p);
    }

    #[test]
    fn rejects_bad_sequences() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let kk = direct_sum(&k, &k);
        let err = ses_validate(&kk.inclusions[0], &Morphism::identity(&kk.module)).unwrap_err();
        assert!(matches!(err, Error::Exactness(ExactnessError::NotComposable | ExactnessError::DimensionCount { .. })));
        let err = ses_validate(&Morphism::zero(&k, &kk.module), &kk.projections[1]).unwrap_err();
        assert_eq!(err, Error::Exactness(ExactnessError::NotMono(0)));
        // composite nonzero
        let err = ses_validate(&kk.inclusions[0], &kk.projections[0]).unwrap_err();
        assert_eq!(err, Error::Exactness(ExactnessError::CompositeNonzero));
    }
}
