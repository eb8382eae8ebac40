//! Isomorphism testing and Krull–Schmidt decomposition by searching Hom spaces.
//!
//! Hom spaces with at most `exhaustive_limit` elements are enumerated in full,
//! which makes negative answers exact. Larger spaces fall back to seeded random
//! trials and report `Undecided` rather than guessing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linmod::mat::Mat;
use crate::linmod::module::Module;
use crate::linmod::morphism::{combine, hom_basis, Morphism};
use crate::linmod::ops::{direct_sum, image_of, kernel_of};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest Hom space (number of elements) enumerated exhaustively.
    pub exhaustive_limit: u64,
    /// Random trials once the exhaustive regime is exceeded; zero disables the fallback.
    pub random_trials: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { exhaustive_limit: 1 << 20, random_trials: 0, seed: 0 }
    }
}

impl Budget {
    pub fn with_random(trials: usize, seed: u64) -> Self {
        Budget { random_trials: trials, seed, ..Budget::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The whole space was enumerated without a hit.
    Exhausted,
    /// Too large to enumerate and the random budget found nothing.
    Undecided,
}

fn space_size(p: u32, d: usize) -> Option<u64> {
    (p as u64).checked_pow(d as u32)
}

/// Searches `span(basis)` for an element satisfying `pred`.
fn search_span(
    source: &Module,
    target: &Module,
    basis: &[Morphism],
    budget: &Budget,
    pred: impl Fn(&Morphism) -> bool,
) -> Search<Morphism> {
    let p = source.field().p();
    let d = basis.len();
    // cheap candidates first
    for b in basis {
        if pred(b) {
            return Search::Found(b.clone());
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            let c = basis[i].add(&basis[j]);
            if pred(&c) {
                return Search::Found(c);
            }
        }
    }
    match space_size(p, d) {
        Some(n) if n <= budget.exhaustive_limit => {
            // odometer over coefficient vectors, updating the running sum in place
            let mut coeffs = vec![0u32; d];
            let mut current = Morphism::zero(source, target);
            loop {
                if pred(&current) {
                    return Search::Found(current);
                }
                let mut k = 0;
                loop {
                    if k == d {
                        return Search::Exhausted;
                    }
                    coeffs[k] += 1;
                    current.add_scaled_assign(&basis[k], 1);
                    if coeffs[k] == p {
                        coeffs[k] = 0;
                        k += 1;
                    } else {
                        break;
                    }
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            for _ in 0..budget.random_trials {
                let coeffs: Vec<u32> = (0..d).map(|_| rng.gen_range(0..p)).collect();
                let c = combine(source, target, basis, &coeffs);
                if pred(&c) {
                    return Search::Found(c);
                }
            }
            Search::Undecided
        }
    }
}

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Iso(Morphism),
    NotIso,
    Undecided,
}

impl IsoOutcome {
    pub fn witness(&self) -> Option<&Morphism> {
        match self {
            IsoOutcome::Iso(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::Iso(_))
    }
}

pub fn is_isomorphic(m: &Module, n: &Module) -> Result<IsoOutcome> {
    is_isomorphic_with(m, n, &Budget::default())
}

pub fn is_isomorphic_with(m: &Module, n: &Module, budget: &Budget) -> Result<IsoOutcome> {
    m.check_same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoOutcome::NotIso);
    }
    if m == n {
        return Ok(IsoOutcome::Iso(Morphism::identity(m)));
    }
    let mn = hom_basis(m, n)?;
    let end_m = hom_basis(m, m)?.len();
    if mn.len() != end_m {
        return Ok(IsoOutcome::NotIso);
    }
    let nm = hom_basis(n, m)?.len();
    let end_n = hom_basis(n, n)?.len();
    if nm != end_n || nm != end_m {
        return Ok(IsoOutcome::NotIso);
    }
    Ok(match search_span(m, n, &mn, budget, Morphism::is_iso) {
        Search::Found(f) => IsoOutcome::Iso(f),
        Search::Exhausted => IsoOutcome::NotIso,
        Search::Undecided => IsoOutcome::Undecided,
    })
}

/// Fitting power `φ^N` with `N` the largest vertex dimension.
fn fitting_power(phi: &Morphism) -> Morphism {
    let n = phi.source().dims().iter().copied().max().unwrap_or(0) as u32;
    let blocks: Vec<Mat> = phi.blocks().iter().map(|b| b.pow(n)).collect();
    Morphism::new_unchecked(phi.source(), phi.target(), blocks)
}

/// An endomorphism whose Fitting power is neither zero nor invertible, which
/// splits the module as `im ⊕ ker` of that power.
pub fn find_splitting_endomorphism(m: &Module, budget: &Budget) -> Result<Search<Morphism>> {
    let end = hom_basis(m, m)?;
    Ok(search_span(m, m, &end, budget, |phi| {
        let psi = fitting_power(phi);
        !psi.is_zero() && !psi.is_iso()
    }))
}

/// Whether the only idempotent endomorphisms are 0 and 1.
pub fn is_indecomposable(m: &Module, budget: &Budget) -> Result<Option<bool>> {
    if m.is_zero() {
        return Ok(Some(false));
    }
    Ok(match find_splitting_endomorphism(m, budget)? {
        Search::Found(_) => Some(false),
        Search::Exhausted => Some(true),
        Search::Undecided => None,
    })
}

/// One indecomposable summand with its splitting maps.
#[derive(Clone, Debug)]
pub struct Piece {
    pub module: Module,
    pub inclusion: Morphism,
    pub projection: Morphism,
    /// Indecomposability was proved by exhaustive search.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub source: Module,
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    pub fn is_certified(&self) -> bool {
        self.pieces.iter().all(|p| p.certified)
    }

    /// Checks `π_i ι_j = δ_ij` and `Σ ι_i π_i = 1`.
    pub fn verify(&self) -> bool {
        let mut total = Morphism::zero(&self.source, &self.source);
        for (i, a) in self.pieces.iter().enumerate() {
            for (j, b) in self.pieces.iter().enumerate() {
                let c = a.inclusion.then(&b.projection);
                let ok = if i == j { c.is_identity() } else { c.is_zero() };
                if !ok {
                    return false;
                }
            }
            total = total.add(&a.projection.then(&a.inclusion));
        }
        total.is_identity()
    }

    /// Groups pieces into isomorphism classes, in order of first appearance.
    pub fn multiset(&self, budget: &Budget) -> Result<Vec<(Module, usize)>> {
        let mut out: Vec<(Module, usize)> = Vec::new();
        'pieces: for p in &self.pieces {
            for (m, count) in out.iter_mut() {
                if is_isomorphic_with(m, &p.module, budget)?.is_iso() {
                    *count += 1;
                    continue 'pieces;
                }
            }
            out.push((p.module.clone(), 1));
        }
        Ok(out)
    }
}

pub fn decompose(m: &Module) -> Result<Decomposition> {
    decompose_with(m, &Budget::default())
}

pub fn decompose_with(m: &Module, budget: &Budget) -> Result<Decomposition> {
    let mut pieces = Vec::new();
    split_into(m, &Morphism::identity(m), &Morphism::identity(m), budget, &mut pieces)?;
    Ok(Decomposition { source: m.clone(), pieces })
}

/// Decomposes `part`, a summand of the original module with maps `incl`/`proj`.
fn split_into(
    part: &Module,
    incl: &Morphism,
    proj: &Morphism,
    budget: &Budget,
    out: &mut Vec<Piece>,
) -> Result<()> {
    if part.is_zero() {
        return Ok(());
    }
    match find_splitting_endomorphism(part, budget)? {
        Search::Found(phi) => {
            let psi = fitting_power(&phi);
            let (a, ia) = image_of(&psi);
            let (b, ib) = kernel_of(&psi);
            let sum = direct_sum(&a, &b);
            let iso = sum.from_components(&[ia.clone(), ib.clone()]);
            let inv = iso.inverse().expect("Fitting decomposition is a direct sum");
            let pa = inv.then(&sum.projections[0]);
            let pb = inv.then(&sum.projections[1]);
            split_into(&a, &ia.then(incl), &proj.then(&pa), budget, out)?;
            split_into(&b, &ib.then(incl), &proj.then(&pb), budget, out)?;
        }
        outcome => out.push(Piece {
            module: part.clone(),
            inclusion: incl.clone(),
            projection: proj.clone(),
            certified: outcome == Search::Exhausted,
        }),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::linmod::ops::direct_sum_all;

    #[test]
    fn lambda_iso() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let p = Module::projective(&alg, 0);
        assert!(is_isomorphic(&k, &k).unwrap().witness().unwrap().is_identity());
        assert!(matches!(is_isomorphic(&k, &p).unwrap(), IsoOutcome::NotIso));
        let kk = direct_sum(&k, &k).module;
        assert!(matches!(is_isomorphic(&kk, &p).unwrap(), IsoOutcome::NotIso));
        // the injective is a different presentation of P
        let i = Module::injective(&alg, 0);
        assert_ne!(i, p);
        let w = is_isomorphic(&i, &p).unwrap();
        assert!(w.witness().unwrap().is_iso());
    }

    #[test]
    fn lambda_decompositions() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let p = Module::projective(&alg, 0);
        let d = decompose(&p).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert!(d.is_certified());
        let d = decompose(&direct_sum(&k, &p).module).unwrap();
        assert!(d.verify());
        let ms = d.multiset(&Budget::default()).unwrap();
        assert_eq!(ms.len(), 2);
        assert!(ms.iter().all(|(_, c)| *c == 1));
        assert!(decompose(&Module::zero(&alg)).unwrap().pieces.is_empty());
    }

    #[test]
    fn n3_big_sum_splits() {
        let alg = demos::n3();
        let m1 = Module::simple(&alg, 0);
        let m3 = Module::projective(&alg, 0);
        let big = direct_sum_all(&[m3.clone(), m1.clone(), m3.clone(), m1.clone()]).module;
        let d = decompose(&big).unwrap();
        assert!(d.verify());
        assert!(d.is_certified());
        let mut dims: Vec<usize> = d.pieces.iter().map(|p| p.module.total_dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 3, 3]);
    }

    #[test]
    fn undecided_when_budget_exhausted() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let tiny = Budget { exhaustive_limit: 1, random_trials: 0, seed: 0 };
        // End(k) has 2 elements: too many for this budget, and no splitting exists.
        assert_eq!(is_indecomposable(&k, &tiny).unwrap(), None);
        assert_eq!(is_indecomposable(&k, &Budget::default()).unwrap(), Some(true));
    }
}
