//! Finite catalogs of indecomposables, closed under syzygies, cosyzygies and
//! summands of extension middles.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::homext::ext::ext1;
use crate::homext::presentation::{cosyzygy, is_injective, is_projective, syzygy};
use crate::linmod::algebra::Algebra;
use crate::linmod::iso::{decompose_with, is_indecomposable, is_isomorphic_with, Budget, IsoOutcome};
use crate::linmod::module::Module;

/// Ext spaces with more classes than this only contribute their basis classes
/// during closure.
const CLOSURE_CLASS_CAP: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Simple(usize),
    Projective(usize),
    Injective(usize),
    Syzygy(usize),
    Cosyzygy(usize),
    ExtensionMiddle { quotient: usize, kernel: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Simple(v) => write!(f, "simple at vertex {v}"),
            Provenance::Projective(v) => write!(f, "projective at vertex {v}"),
            Provenance::Injective(v) => write!(f, "injective at vertex {v}"),
            Provenance::Syzygy(id) => write!(f, "syzygy of #{id}"),
            Provenance::Cosyzygy(id) => write!(f, "cosyzygy of #{id}"),
            Provenance::ExtensionMiddle { quotient, kernel } => {
                write!(f, "summand of an extension of #{quotient} by #{kernel}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: usize,
    pub name: String,
    pub module: Module,
    pub provenance: Vec<Provenance>,
    pub projective: bool,
    pub injective: bool,
    /// Indecomposability proved exhaustively.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    algebra: Arc<Algebra>,
    entries: Vec<CatalogEntry>,
    budget: Budget,
    /// An indecomposable beyond `max_dim` was seen, or closure hit `max_iter`.
    pub truncated: bool,
    /// Some decomposition or isomorphism question was left undecided.
    pub undecided: bool,
    pub rounds: usize,
    ext1_table: Vec<Vec<usize>>,
    ext2_table: Vec<Vec<usize>>,
}

/// How a module splits over the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    /// Catalog ids of the summands, with repetition, ascending.
    pub ids: Vec<usize>,
    /// Summands isomorphic to no catalog entry.
    pub unmatched: usize,
    pub undecided: bool,
}

impl Identification {
    pub fn is_complete(&self) -> bool {
        self.unmatched == 0 && !self.undecided
    }
}

struct Builder {
    algebra: Arc<Algebra>,
    budget: Budget,
    entries: Vec<CatalogEntry>,
    truncated: bool,
    undecided: bool,
}

impl Builder {
    fn find(&mut self, m: &Module) -> Result<Option<usize>> {
        for e in &self.entries {
            if e.module.dims() != m.dims() {
                continue;
            }
            match is_isomorphic_with(&e.module, m, &self.budget)? {
                IsoOutcome::Iso(_) => return Ok(Some(e.id)),
                IsoOutcome::Undecided => self.undecided = true,
                IsoOutcome::NotIso => {}
            }
        }
        Ok(None)
    }

    /// Adds an indecomposable (or records a provenance); returns whether it was new.
    fn offer(&mut self, m: Module, certified: bool, prov: Provenance) -> Result<bool> {
        if m.is_zero() {
            return Ok(false);
        }
        if m.total_dim() > self.algebra.bounds().max_dim {
            self.truncated = true;
            return Ok(false);
        }
        if let Some(id) = self.find(&m)? {
            let seed = matches!(prov, Provenance::Simple(_) | Provenance::Projective(_) | Provenance::Injective(_));
            if seed && !self.entries[id].provenance.contains(&prov) {
                self.entries[id].provenance.push(prov);
            }
            return Ok(false);
        }
        if !certified {
            self.undecided = true;
        }
        let id = self.entries.len();
        let name = match &prov {
            Provenance::Simple(v) => format!("S{}", self.algebra.vertices()[*v]),
            Provenance::Projective(v) => format!("P{}", self.algebra.vertices()[*v]),
            Provenance::Injective(v) => format!("I{}", self.algebra.vertices()[*v]),
            _ => format!("X{id}"),
        };
        self.entries.push(CatalogEntry {
            id,
            name,
            projective: is_projective(&m),
            injective: is_injective(&m),
            module: m,
            provenance: vec![prov],
            certified,
        });
        Ok(true)
    }

    /// Decomposes `m` and offers every summand.
    fn offer_summands(&mut self, m: &Module, prov: Provenance) -> Result<bool> {
        let d = decompose_with(m, &self.budget)?;
        let mut added = false;
        for piece in d.pieces {
            added |= self.offer(piece.module, piece.certified, prov.clone())?;
        }
        Ok(added)
    }

    fn close(&mut self, mut fresh_from: usize) -> Result<usize> {
        let max_iter = self.algebra.bounds().max_iter;
        let mut rounds = 0;
        while fresh_from < self.entries.len() {
            if rounds == max_iter {
                self.truncated = true;
                break;
            }
            rounds += 1;
            let end = self.entries.len();
            for id in fresh_from..end {
                let m = self.entries[id].module.clone();
                self.offer_summands(&syzygy(&m), Provenance::Syzygy(id))?;
                self.offer_summands(&cosyzygy(&m), Provenance::Cosyzygy(id))?;
            }
            for a in 0..end {
                for b in 0..end {
                    if a < fresh_from && b < fresh_from {
                        continue;
                    }
                    let (ma, mb) = (self.entries[a].module.clone(), self.entries[b].module.clone());
                    let space = ext1(&ma, &mb)?;
                    if space.dimension() == 0 {
                        continue;
                    }
                    let prov = Provenance::ExtensionMiddle { quotient: a, kernel: b };
                    let classes: Vec<_> = match space.class_count() {
                        Some(n) if n <= CLOSURE_CLASS_CAP => space.classes().skip(1).collect(),
                        _ => (0..space.dimension()).map(|i| space.basis_class(i)).collect(),
                    };
                    for c in classes {
                        let s = space.realize(&c)?;
                        self.offer_summands(s.middle(), prov.clone())?;
                    }
                }
            }
            fresh_from = end;
        }
        Ok(rounds)
    }
}

/// Builds the catalog with exhaustive-only searches.
pub fn build_catalog(alg: &Arc<Algebra>) -> Result<Catalog> {
    build_catalog_with(alg, Budget::default())
}

pub fn build_catalog_with(alg: &Arc<Algebra>, budget: Budget) -> Result<Catalog> {
    let mut b = Builder { algebra: alg.clone(), budget, entries: Vec::new(), truncated: false, undecided: false };
    let n = alg.vertex_count();
    for v in 0..n {
        b.offer(Module::simple(alg, v), true, Provenance::Simple(v))?;
    }
    for v in 0..n {
        let p = Module::projective(alg, v);
        let cert = is_indecomposable(&p, &budget)?;
        b.offer(p, cert == Some(true), Provenance::Projective(v))?;
    }
    for v in 0..n {
        let i = Module::injective(alg, v);
        let cert = is_indecomposable(&i, &budget)?;
        b.offer(i, cert == Some(true), Provenance::Injective(v))?;
    }
    let rounds = b.close(0)?;
    Ok(Catalog::finish(b, rounds))
}

impl Catalog {
    fn finish(b: Builder, rounds: usize) -> Catalog {
        let mods: Vec<&Module> = b.entries.iter().map(|e| &e.module).collect();
        let table = |degree: usize| -> Vec<Vec<usize>> {
            mods.iter()
                .map(|m| {
                    mods.iter()
                        .map(|n| crate::homext::ext::ext_dim(m, n, degree).expect("same algebra"))
                        .collect()
                })
                .collect()
        };
        let ext1_table = table(1);
        let ext2_table = table(2);
        Catalog {
            algebra: b.algebra,
            entries: b.entries,
            budget: b.budget,
            truncated: b.truncated,
            undecided: b.undecided,
            rounds,
            ext1_table,
            ext2_table,
        }
    }

    /// Runs closure again starting from the finished entries; a closed catalog
    /// comes back unchanged.
    pub fn reclose(&self) -> Result<Catalog> {
        let mut b = Builder {
            algebra: self.algebra.clone(),
            budget: self.budget,
            entries: self.entries.clone(),
            truncated: false,
            undecided: false,
        };
        let rounds = b.close(0)?;
        Ok(Catalog::finish(b, rounds))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn module(&self, id: usize) -> &Module {
        &self.entries[id].module
    }

    pub fn name(&self, id: usize) -> &str {
        &self.entries[id].name
    }

    pub fn id_by_name(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    pub fn ext1_dim(&self, m: usize, n: usize) -> usize {
        self.ext1_table[m][n]
    }

    pub fn ext2_dim(&self, m: usize, n: usize) -> usize {
        self.ext2_table[m][n]
    }

    pub fn ext1_table(&self) -> &[Vec<usize>] {
        &self.ext1_table
    }

    pub fn ext2_table(&self) -> &[Vec<usize>] {
        &self.ext2_table
    }

    /// Catalog id of an indecomposable, if present.
    pub fn lookup(&self, m: &Module) -> Result<Option<usize>> {
        for e in &self.entries {
            if e.module.dims() == m.dims() && is_isomorphic_with(&e.module, m, &self.budget)?.is_iso() {
                return Ok(Some(e.id));
            }
        }
        Ok(None)
    }

    /// Decomposes `m` and matches each summand against the catalog.
    pub fn identify(&self, m: &Module) -> Result<Identification> {
        let d = decompose_with(m, &self.budget)?;
        let mut ids = Vec::new();
        let mut unmatched = 0;
        let mut undecided = false;
        for piece in &d.pieces {
            let mut hit = None;
            for e in &self.entries {
                if e.module.dims() != piece.module.dims() {
                    continue;
                }
                match is_isomorphic_with(&e.module, &piece.module, &self.budget)? {
                    IsoOutcome::Iso(_) => {
                        hit = Some(e.id);
                        break;
                    }
                    IsoOutcome::Undecided => undecided = true,
                    IsoOutcome::NotIso => {}
                }
            }
            match hit {
                Some(id) => ids.push(id),
                None => {
                    // an uncertified piece matching nothing may still split further
                    if !piece.certified {
                        undecided = true;
                    }
                    unmatched += 1;
                }
            }
        }
        ids.sort_unstable();
        Ok(Identification { ids, unmatched, undecided })
    }

    /// Largest catalog dimension.
    pub fn max_entry_dim(&self) -> usize {
        self.entries.iter().map(|e| e.module.total_dim()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;

    fn dims(cat: &Catalog) -> Vec<usize> {
        let mut d: Vec<usize> = cat.entries().iter().map(|e| e.module.total_dim()).collect();
        d.sort();
        d
    }

    #[test]
    fn lambda_catalog() {
        let cat = build_catalog(&demos::lambda2()).unwrap();
        assert_eq!(dims(&cat), vec![1, 2]);
        assert!(!cat.truncated && !cat.undecided);
        let p = cat.lookup(&Module::projective(cat.algebra(), 0)).unwrap().unwrap();
        assert!(cat.entries()[p].projective && cat.entries()[p].injective);
        assert_eq!(cat.entries()[p].provenance.len(), 2);
    }

    #[test]
    fn a2_catalog() {
        let cat = build_catalog(&demos::a2()).unwrap();
        assert_eq!(cat.len(), 3);
        let names: Vec<&str> = cat.entries().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, vec!["S1", "S2", "P1"]);
    }

    #[test]
    fn n3_catalog() {
        let cat = build_catalog(&demos::n3()).unwrap();
        assert_eq!(dims(&cat), vec![1, 2, 3]);
        assert!(!cat.truncated);
    }

    #[test]
    fn closure_is_idempotent() {
        for alg in [demos::lambda2(), demos::a2(), demos::n3()] {
            let cat = build_catalog(&alg).unwrap();
            let again = cat.reclose().unwrap();
            assert_eq!(again.len(), cat.len());
        }
    }

    #[test]
    fn truncation_flag() {
        let alg = demos::n3();
        let small = Arc::new(alg.with_bounds(crate::linmod::Bounds::new(2, 8, None).unwrap()));
        let cat = build_catalog(&small).unwrap();
        assert!(cat.truncated);
        assert_eq!(dims(&cat), vec![1, 2]);
    }
}
