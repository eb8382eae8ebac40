//! Classes of modules closed under sums and summands, recorded as sets of
//! catalog ids.

use std::collections::BTreeSet;
use std::fmt;

use crate::classcat::catalog::Catalog;
use crate::error::{Error, Result};
use crate::linmod::module::Module;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectClass {
    pub label: String,
    pub members: BTreeSet<usize>,
}

impl ObjectClass {
    pub fn new(label: impl Into<String>, members: impl IntoIterator<Item = usize>) -> Self {
        ObjectClass { label: label.into(), members: members.into_iter().collect() }
    }

    pub fn all(cat: &Catalog) -> Self {
        Self::new("all", 0..cat.len())
    }

    /// Only the zero module.
    pub fn zero() -> Self {
        Self::new("0", [])
    }

    pub fn projectives(cat: &Catalog) -> Self {
        Self::new("proj", cat.entries().iter().filter(|e| e.projective).map(|e| e.id))
    }

    pub fn injectives(cat: &Catalog) -> Self {
        Self::new("inj", cat.entries().iter().filter(|e| e.injective).map(|e| e.id))
    }

    /// Resolves `all`, `proj`, `inj`, `0`, or a list of catalog names or ids.
    pub fn parse(cat: &Catalog, words: &[String]) -> Result<Self> {
        if let [w] = words {
            match w.as_str() {
                "all" => return Ok(Self::all(cat)),
                "proj" => return Ok(Self::projectives(cat)),
                "inj" => return Ok(Self::injectives(cat)),
                "0" | "zero" => return Ok(Self::zero()),
                _ => {}
            }
        }
        let mut members = BTreeSet::new();
        for w in words {
            let id = cat
                .id_by_name(w)
                .or_else(|| w.parse::<usize>().ok().filter(|&i| i < cat.len()))
                .ok_or_else(|| Error::Usage(format!("unknown catalog entry `{w}`")))?;
            members.insert(id);
        }
        Ok(ObjectClass { label: format!("add{{{}}}", words.join(",")), members })
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &ObjectClass) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &ObjectClass) -> ObjectClass {
        ObjectClass {
            label: format!("{} ∩ {}", self.label, other.label),
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    pub fn difference(&self, other: &ObjectClass) -> Vec<usize> {
        self.members.difference(&other.members).copied().collect()
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn names<'a>(&self, cat: &'a Catalog) -> Vec<&'a str> {
        self.members.iter().map(|&i| cat.name(i)).collect()
    }
}

impl fmt::Display for ObjectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Member,
    NotMember,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub decision: Decision,
    /// Catalog ids of the summands found.
    pub summands: Vec<usize>,
    /// The first summand outside the class, if any.
    pub offending: Option<usize>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.decision == Decision::Member
    }
}

/// Decides `m ∈ class` by splitting `m` over the catalog.
pub fn class_membership(class: &ObjectClass, cat: &Catalog, m: &Module) -> Result<Membership> {
    let id = cat.identify(m)?;
    let offending = id.ids.iter().copied().find(|&i| !class.contains(i));
    let decision = if offending.is_some() {
        Decision::NotMember
    } else if id.is_complete() {
        Decision::Member
    } else {
        Decision::Undecided
    };
    Ok(Membership { decision, summands: id.ids, offending })
}

/// `C^⊥ = { N : Ext^1(C, N) = 0 for all C in the class }` inside the catalog.
pub fn right_orth(class: &ObjectClass, cat: &Catalog) -> ObjectClass {
    let members = (0..cat.len()).filter(|&n| class.members.iter().all(|&c| cat.ext1_dim(c, n) == 0));
    ObjectClass::new(format!("{}^⊥", class.label), members)
}

/// `^⊥C = { M : Ext^1(M, C) = 0 for all C in the class }` inside the catalog.
pub fn left_orth(class: &ObjectClass, cat: &Catalog) -> ObjectClass {
    let members = (0..cat.len()).filter(|&m| class.members.iter().all(|&c| cat.ext1_dim(m, c) == 0));
    ObjectClass::new(format!("^⊥{}", class.label), members)
}
