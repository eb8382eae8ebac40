//! Bounded searches for special preenvelopes `X ↣ R ↠ Q` and special precovers
//! `R ↣ Q ↠ X`. Candidate end terms are sums of catalog members, tried in order
//! of total dimension and then lexicographically by id.

use crate::classcat::catalog::Catalog;
use crate::classcat::class::{class_membership, Decision, ObjectClass};
use crate::error::Result;
use crate::homext::ext::ext1;
use crate::linmod::module::Module;
use crate::linmod::ops::direct_sum_over;
use crate::linmod::ses::ShortExactSequence;

/// Ext spaces with more classes than this are only partly enumerated.
pub const WITNESS_CLASS_CAP: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    /// Nothing within the dimension bound; larger candidates were not tried.
    NotFoundWithinBound,
    /// Every candidate the class admits was tried.
    Exhausted,
    /// No witness of any size: `dim X` lies outside the integer span of the
    /// dimension vectors of both classes.
    Obstructed,
}

#[derive(Clone, Debug)]
pub struct WitnessSearch {
    pub witness: Option<ShortExactSequence>,
    /// Catalog ids of the far end term, with repetition.
    pub far_end: Vec<usize>,
    pub status: SearchStatus,
    pub candidates_tried: usize,
    pub bound: usize,
    /// Some Ext space was only partly enumerated.
    pub capped: bool,
    /// Some membership question was undecided.
    pub undecided: bool,
}

impl WitnessSearch {
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }

    /// Absent with a bound-independent reason.
    pub fn conclusive(&self) -> bool {
        match self.status {
            SearchStatus::Found => true,
            SearchStatus::Exhausted | SearchStatus::Obstructed => !self.capped && !self.undecided,
            SearchStatus::NotFoundWithinBound => false,
        }
    }
}

/// Whether `target` lies in the integer span of `gens`.
pub fn in_integer_span(target: &[usize], gens: &[Vec<usize>]) -> bool {
    let n = target.len();
    let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect();
    let mut t: Vec<i64> = target.iter().map(|&x| x as i64).collect();
    let mut next = 0;
    for col in 0..n {
        // Euclid on the column until one row holds the gcd
        loop {
            let live: Vec<usize> = (next..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if live.len() <= 1 {
                break;
            }
            let pivot = *live.iter().min_by_key(|&&r| rows[r][col].abs()).unwrap();
            for &r in &live {
                if r != pivot {
                    let q = rows[r][col] / rows[pivot][col];
                    for c in 0..n {
                        rows[r][c] -= q * rows[pivot][c];
                    }
                }
            }
        }
        let Some(pivot) = (next..rows.len()).find(|&r| rows[r][col] != 0) else {
            if t[col] != 0 {
                return false;
            }
            continue;
        };
        rows.swap(next, pivot);
        let p = rows[next][col];
        if t[col] % p != 0 {
            return false;
        }
        let q = t[col] / p;
        for c in 0..n {
            t[c] -= q * rows[next][c];
        }
        next += 1;
    }
    t.iter().all(|&x| x == 0)
}

fn dimension_obstructed(x: &Module, far: &ObjectClass, middle: &ObjectClass, cat: &Catalog) -> bool {
    let gens: Vec<Vec<usize>> =
        far.members.iter().chain(&middle.members).map(|&i| cat.module(i).dims().to_vec()).collect();
    !in_integer_span(x.dims(), &gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// `X ↣ middle ↠ far`.
    Coresolution,
    /// `far ↣ middle ↠ X`.
    Resolution,
}

/// Sorted id multisets over `class` with total dimension at most `budget`.
pub fn multisets(class: &ObjectClass, cat: &Catalog, budget: usize) -> Vec<Vec<usize>> {
    let ids: Vec<usize> = class.members.iter().copied().filter(|&i| cat.module(i).total_dim() > 0).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(ids: &[usize], cat: &Catalog, start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for k in start..ids.len() {
            let d = cat.module(ids[k]).total_dim();
            if d <= left {
                cur.push(ids[k]);
                go(ids, cat, k, left - d, cur, out);
                cur.pop();
            }
        }
    }
    go(&ids, cat, 0, budget, &mut cur, &mut out);
    let dim = |m: &Vec<usize>| m.iter().map(|&i| cat.module(i).total_dim()).sum::<usize>();
    out.sort_by(|a, b| dim(a).cmp(&dim(b)).then_with(|| a.cmp(b)));
    out
}

fn search(x: &Module, far: &ObjectClass, middle: &ObjectClass, cat: &Catalog, side: Side) -> Result<WitnessSearch> {
    let bound = cat.algebra().bounds().max_witness_dim;
    let room = bound.saturating_sub(x.total_dim());
    let mut result = WitnessSearch {
        witness: None,
        far_end: Vec::new(),
        status: SearchStatus::NotFoundWithinBound,
        candidates_tried: 0,
        bound,
        capped: false,
        undecided: false,
    };
    for ids in multisets(far, cat, room) {
        let parts: Vec<Module> = ids.iter().map(|&i| cat.module(i).clone()).collect();
        let f = direct_sum_over(cat.algebra(), &parts).module;
        let space = match side {
            Side::Coresolution => ext1(&f, x)?,
            Side::Resolution => ext1(x, &f)?,
        };
        let limited = match space.class_count() {
            Some(n) if n <= WITNESS_CLASS_CAP => None,
            _ => {
                result.capped = true;
                Some(WITNESS_CLASS_CAP as usize)
            }
        };
        for class in space.classes().take(limited.unwrap_or(usize::MAX)) {
            result.candidates_tried += 1;
            let s = space.realize(&class)?;
            match class_membership(middle, cat, s.middle())?.decision {
                Decision::Member => {
                    result.witness = Some(s);
                    result.far_end = ids;
                    result.status = SearchStatus::Found;
                    return Ok(result);
                }
                Decision::Undecided => result.undecided = true,
                Decision::NotMember => {}
            }
        }
    }
    // Without nonzero members only the zero end term exists.
    let only_zero = far.members.iter().all(|&i| cat.module(i).is_zero());
    if only_zero && !result.capped && !result.undecided {
        result.status = SearchStatus::Exhausted;
    } else if dimension_obstructed(x, far, middle, cat) {
        result.status = SearchStatus::Obstructed;
    }
    Ok(result)
}

/// `X ↣ R ↠ Q` with `R` in `right` and `Q` in `left`.
pub fn special_preenvelope(x: &Module, left: &ObjectClass, right: &ObjectClass, cat: &Catalog) -> Result<WitnessSearch> {
    search(x, left, right, cat, Side::Coresolution)
}

/// `R ↣ Q ↠ X` with `Q` in `left` and `R` in `right`.
pub fn special_precover(x: &Module, left: &ObjectClass, right: &ObjectClass, cat: &Catalog) -> Result<WitnessSearch> {
    search(x, right, left, cat, Side::Resolution)
}

/// Coresolution `X ↣ M ↠ F` with `F` in `far` and `M` in `middle`.
pub fn search_coresolution(x: &Module, far: &ObjectClass, middle: &ObjectClass, cat: &Catalog) -> Result<WitnessSearch> {
    search(x, far, middle, cat, Side::Coresolution)
}

/// Resolution `F ↣ M ↠ X` with `F` in `far` and `M` in `middle`.
pub fn search_resolution(x: &Module, far: &ObjectClass, middle: &ObjectClass, cat: &Catalog) -> Result<WitnessSearch> {
    search(x, far, middle, cat, Side::Resolution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classcat::catalog::build_catalog;
    use crate::demos;

    #[test]
    fn multiset_order() {
        let cat = build_catalog(&demos::lambda2()).unwrap();
        let all = ObjectClass::all(&cat);
        let ms = multisets(&all, &cat, 2);
        let k = cat.id_by_name("S1").unwrap();
        let p = cat.id_by_name("P1").unwrap();
        assert_eq!(ms, vec![vec![], vec![k], vec![k, k], vec![p]]);
    }

    #[test]
    fn lambda_precover_of_simple() {
        let alg = demos::lambda2();
        let cat = build_catalog(&alg).unwrap();
        let all = ObjectClass::all(&cat);
        let proj = ObjectClass::projectives(&cat);
        let k = Module::simple(&alg, 0);
        // (proj, all): k has precover k ↣ P ↠ k
        let s = special_precover(&k, &proj, &all, &cat).unwrap();
        assert!(s.found());
        assert_eq!(s.witness.unwrap().middle().total_dim(), 2);
        // (all, proj): k ↣ P ↠ k is a preenvelope
        let s = special_preenvelope(&k, &all, &proj, &cat).unwrap();
        assert!(s.found());
        assert_eq!(s.far_end, vec![cat.id_by_name("S1").unwrap()]);
    }

    #[test]
    fn integer_span() {
        assert!(!in_integer_span(&[1], &[vec![2]]));
        assert!(in_integer_span(&[1], &[vec![2], vec![3]]));
        assert!(in_integer_span(&[0, 0], &[]));
        assert!(!in_integer_span(&[1, 0], &[vec![1, 1]]));
        assert!(in_integer_span(&[1, 0], &[vec![1, 1], vec![0, 1]]));
        assert!(!in_integer_span(&[1, 1], &[vec![2, 0], vec![0, 1], vec![2, 2]]));
    }

    #[test]
    fn parity_obstruction() {
        let alg = demos::lambda2();
        let cat = build_catalog(&alg).unwrap();
        let proj = ObjectClass::projectives(&cat);
        let s = search_coresolution(&Module::simple(&alg, 0), &proj, &proj, &cat).unwrap();
        assert_eq!(s.status, SearchStatus::Obstructed);
        assert!(s.conclusive());
        assert_eq!(s.candidates_tried, 3);
    }

    #[test]
    fn exhausted_with_zero_class() {
        let alg = demos::lambda2();
        let cat = build_catalog(&alg).unwrap();
        let proj = ObjectClass::projectives(&cat);
        let k = Module::simple(&alg, 0);
        // envelope into add P with zero cokernel class: impossible for k
        let s = search_coresolution(&k, &ObjectClass::zero(), &proj, &cat).unwrap();
        assert_eq!(s.status, SearchStatus::Exhausted);
        assert_eq!(s.candidates_tried, 1);
    }
}
