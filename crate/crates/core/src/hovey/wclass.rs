//! The class `W` by its two descriptions: `X ↣ R ↠ Q` and `R' ↣ Q' ↠ X`
//! with `R, R' ∈ R̃` and `Q, Q' ∈ Q̃`.

use rayon::prelude::*;

use crate::classcat::catalog::Catalog;
use crate::classcat::class::ObjectClass;
use crate::classcat::witness::{search_coresolution, search_resolution, WitnessSearch};
use crate::error::{Error, Result};
use crate::linmod::module::Module;

pub fn in_w_coresolution(x: &Module, q_tilde: &ObjectClass, r_tilde: &ObjectClass, cat: &Catalog) -> Result<WitnessSearch> {
    search_coresolution(x, q_tilde, r_tilde, cat)
}

pub fn in_w_resolution(x: &Module, q_tilde: &ObjectClass, r_tilde: &ObjectClass, cat: &Catalog) -> Result<WitnessSearch> {
    search_resolution(x, r_tilde, q_tilde, cat)
}

#[derive(Clone, Debug)]
pub struct WMembership {
    pub id: usize,
    pub coresolution: WitnessSearch,
    pub resolution: WitnessSearch,
}

impl WMembership {
    pub fn member(&self) -> bool {
        self.coresolution.found()
    }

    /// Both answers are exact, not artifacts of the bound.
    pub fn conclusive(&self) -> bool {
        self.coresolution.conclusive() && self.resolution.conclusive()
    }
}

#[derive(Clone, Debug)]
pub struct WClass {
    pub class: ObjectClass,
    /// One row per catalog object, in id order.
    pub table: Vec<WMembership>,
}

impl WClass {
    pub fn inconclusive_ids(&self) -> Vec<usize> {
        self.table.iter().filter(|m| !m.conclusive()).map(|m| m.id).collect()
    }
}

/// Runs both searches for every catalog object and insists they agree.
pub fn compute_w(q_tilde: &ObjectClass, r_tilde: &ObjectClass, cat: &Catalog) -> Result<WClass> {
    let table = (0..cat.len())
        .into_par_iter()
        .map(|id| {
            let m = cat.module(id);
            Ok(WMembership {
                id,
                coresolution: in_w_coresolution(m, q_tilde, r_tilde, cat)?,
                resolution: in_w_resolution(m, q_tilde, r_tilde, cat)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for row in &table {
        let (c, r) = (&row.coresolution, &row.resolution);
        if c.found() != r.found() {
            let absent = if c.found() { r } else { c };
            let kind = if absent.conclusive() { "theorem violation" } else { "bound artifact" };
            return Err(Error::DescriptionsDisagree {
                id: row.id,
                kind: kind.into(),
                coresolution: format!("{:?}", c.status),
                resolution: format!("{:?}", r.status),
            });
        }
    }
    let members = table.iter().filter(|m| m.member()).map(|m| m.id);
    Ok(WClass { class: ObjectClass::new("W", members), table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classcat::witness::SearchStatus;
    use crate::demos;

    #[test]
    fn lambda_stable_w() {
        let cat = crate::classcat::catalog::build_catalog(&demos::lambda2()).unwrap();
        let proj = ObjectClass::projectives(&cat);
        let w = compute_w(&proj, &proj, &cat).unwrap();
        assert_eq!(w.class.members, proj.members);
        let k = cat.id_by_name("S1").unwrap();
        assert_eq!(w.table[k].coresolution.status, SearchStatus::Obstructed);
        assert!(w.inconclusive_ids().is_empty());
        let p = cat.id_by_name("P1").unwrap();
        let s = w.table[p].coresolution.witness.as_ref().unwrap();
        assert!(s.quotient_term().is_zero());
    }

    #[test]
    fn a2_injective_w_is_everything() {
        let cat = crate::classcat::catalog::build_catalog(&demos::a2()).unwrap();
        let all = ObjectClass::all(&cat);
        let w = compute_w(&all, &ObjectClass::injectives(&cat), &cat).unwrap();
        assert_eq!(w.class.members, all.members);
    }
}
