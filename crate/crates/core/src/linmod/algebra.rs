//! Quivers with relations over a prime field.
//!
//! Paths are written in traversal order: `["a", "b"]` means "first `a`, then
//! `b`", so a module evaluates it as `M(b) * M(a)`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linmod::field::PrimeField;
use crate::linmod::mat::Mat;

const MAX_PATH_LENGTH: usize = 24;
const MAX_PATHS: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: u32,
    pub path: Vec<usize>,
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<RelationTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest dimension of a catalog indecomposable.
    pub max_dim: usize,
    /// Maximum number of catalog closure rounds.
    pub max_iter: usize,
    /// Largest middle term considered by witness searches.
    pub max_witness_dim: usize,
}

impl Bounds {
    pub fn new(max_dim: usize, max_iter: usize, max_witness_dim: Option<usize>) -> Result<Self> {
        let b = Bounds { max_dim, max_iter, max_witness_dim: max_witness_dim.unwrap_or(3 * max_dim) };
        if b.max_dim == 0 || b.max_iter == 0 || b.max_witness_dim == 0 {
            return Err(Error::InvalidAlgebra(format!("bounds must be positive: {b:?}")));
        }
        Ok(b)
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_dim: 4, max_iter: 8, max_witness_dim: 12 }
    }
}

/// A path with explicit endpoints (trivial paths have no arrows).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

/// Normal-form basis of `e_t (kQ/I) e_s` for every vertex pair.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PathBasis {
    /// Every path of length at or beyond this lies in the ideal.
    nilpotency: usize,
    /// `basis[s][t]`: basis paths from `s` to `t`.
    basis: Vec<Vec<Vec<Path>>>,
    /// Coordinates of every short path in the basis of its endpoints.
    reduction: HashMap<(usize, Vec<usize>), Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: PrimeField,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    bounds: Bounds,
    paths: PathBasis,
}

/// Wire form of an algebra, shared by every file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub prime: u32,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default)]
    pub bounds: Option<BoundsSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_witness_dim: Option<usize>,
}

impl BoundsSpec {
    pub fn resolve(&self) -> Result<Bounds> {
        let d = Bounds::default();
        let max_dim = self.max_dim.unwrap_or(d.max_dim);
        Bounds::new(max_dim, self.max_iter.unwrap_or(d.max_iter), self.max_witness_dim)
    }

    /// Fields of `over` replace those of `self`.
    pub fn merged(&self, over: &BoundsSpec) -> BoundsSpec {
        BoundsSpec {
            max_dim: over.max_dim.or(self.max_dim),
            max_iter: over.max_iter.or(self.max_iter),
            max_witness_dim: over.max_witness_dim.or(self.max_witness_dim),
        }
    }
}

/// Parses and validates a JSON algebra description.
pub fn validate_algebra(text: &str) -> Result<Arc<Algebra>> {
    let spec: AlgebraSpec = serde_json::from_str(text)
        .map_err(|e| Error::InvalidAlgebra(format!("{e}")))?;
    Algebra::from_spec(&spec).map(Arc::new)
}

impl Algebra {
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        let field = PrimeField::new(spec.prime)?;
        let bounds = spec.bounds.clone().unwrap_or_default().resolve()?;
        let vertex_index = |name: &str| -> Result<usize> {
            spec.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidAlgebra(format!("unknown vertex {name:?}")))
        };
        for (i, v) in spec.vertices.iter().enumerate() {
            if spec.vertices[..i].contains(v) {
                return Err(Error::InvalidAlgebra(format!("duplicate vertex {v:?}")));
            }
        }
        let mut arrows = Vec::with_capacity(spec.arrows.len());
        for a in &spec.arrows {
            if arrows.iter().any(|b: &Arrow| b.name == a.name) {
                return Err(Error::InvalidAlgebra(format!("duplicate arrow {:?}", a.name)));
            }
            arrows.push(Arrow {
                name: a.name.clone(),
                source: vertex_index(&a.from)?,
                target: vertex_index(&a.to)?,
            });
        }
        let mut relations = Vec::with_capacity(spec.relations.len());
        for (ri, rel) in spec.relations.iter().enumerate() {
            let mut terms = Vec::new();
            let mut ends: Option<(usize, usize)> = None;
            for t in rel {
                let path = t
                    .path
                    .iter()
                    .map(|n| {
                        arrows.iter().position(|a| &a.name == n).ok_or_else(|| {
                            Error::InvalidAlgebra(format!("relation {ri}: unknown arrow {n:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if path.len() < 2 {
                    return Err(Error::InvalidAlgebra(format!(
                        "relation {ri}: path {:?} has length < 2",
                        t.path
                    )));
                }
                for w in path.windows(2) {
                    if arrows[w[0]].target != arrows[w[1]].source {
                        return Err(Error::InvalidAlgebra(format!(
                            "relation {ri}: arrows {:?} and {:?} are not composable",
                            arrows[w[0]].name, arrows[w[1]].name
                        )));
                    }
                }
                let e = (arrows[path[0]].source, arrows[*path.last().unwrap()].target);
                match ends {
                    None => ends = Some(e),
                    Some(prev) if prev != e => {
                        return Err(Error::InvalidAlgebra(format!(
                            "relation {ri}: paths are not parallel"
                        )))
                    }
                    _ => {}
                }
                let coeff = field.reduce(t.coeff);
                if coeff != 0 {
                    terms.push(RelationTerm { coeff, path });
                }
            }
            let Some((source, target)) = ends else {
                return Err(Error::InvalidAlgebra(format!("relation {ri} is empty")));
            };
            relations.push(Relation { source, target, terms });
        }
        let paths = PathBasis::compute(field, spec.vertices.len(), &arrows, &relations)?;
        Ok(Algebra { field, vertices: spec.vertices.clone(), arrows, relations, bounds, paths })
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            prime: self.field.p(),
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: self.vertices[a.source].clone(),
                    to: self.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|t| TermSpec {
                            coeff: t.coeff as i64,
                            path: t.path.iter().map(|&a| self.arrows[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            bounds: Some(BoundsSpec {
                max_dim: Some(self.bounds.max_dim),
                max_iter: Some(self.bounds.max_iter),
                max_witness_dim: Some(self.bounds.max_witness_dim),
            }),
        }
    }

    pub fn with_bounds(&self, bounds: Bounds) -> Self {
        Algebra { bounds, ..self.clone() }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Every path of at least this length acts as zero.
    pub fn nilpotency_index(&self) -> usize {
        self.paths.nilpotency
    }

    /// Dimension of the algebra as a vector space.
    pub fn dimension(&self) -> usize {
        self.paths.basis.iter().flatten().map(Vec::len).sum()
    }

    pub fn basis_paths(&self, source: usize, target: usize) -> &[Path] {
        &self.paths.basis[source][target]
    }

    /// Coordinates of `arrows` (a path starting at `source`) in the normal-form
    /// basis of its endpoints; `None` when the path is zero in the algebra.
    pub fn reduce_path(&self, source: usize, arrows: &[usize]) -> Option<&[u32]> {
        self.paths.reduction.get(&(source, arrows.to_vec())).map(Vec::as_slice)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Paths of exactly `len` arrows, starting anywhere.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        enumerate_paths(self.vertices.len(), &self.arrows, len)
            .into_iter()
            .filter(|p| p.arrows.len() == len)
            .collect()
    }
}

/// All paths of length `<= max_len`, shortest first.
fn enumerate_paths(n_vertices: usize, arrows: &[Arrow], max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> =
        (0..n_vertices).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arr = p.arrows.clone();
                    arr.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows: arr });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        frontier = next;
        if out.len() > MAX_PATHS {
            break;
        }
    }
    out
}

/// Ideal generated by the relations inside `kQ / (paths of length >= trunc)`,
/// as row vectors over the paths `cols` (all paths `s -> t` shorter than `trunc`).
fn ideal_rows(
    field: PrimeField,
    all_paths: &[Path],
    relations: &[Relation],
    s: usize,
    t: usize,
    cols: &[Path],
    trunc: usize,
) -> Mat {
    let index: HashMap<&[usize], usize> =
        cols.iter().enumerate().map(|(i, p)| (p.arrows.as_slice(), i)).collect();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in relations {
        let min_len = r.terms.iter().map(|t| t.path.len()).min().unwrap_or(0);
        for u in all_paths.iter().filter(|u| u.source == s && u.target == r.source) {
            for w in all_paths.iter().filter(|w| w.source == r.target && w.target == t) {
                if u.arrows.len() + min_len + w.arrows.len() >= trunc {
                    continue;
                }
                let mut row = vec![0u32; cols.len()];
                for term in &r.terms {
                    let mut full = u.arrows.clone();
                    full.extend_from_slice(&term.path);
                    full.extend_from_slice(&w.arrows);
                    if full.len() >= trunc {
                        continue;
                    }
                    let j = index[full.as_slice()];
                    row[j] = field.add(row[j], term.coeff);
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let flat: Vec<i64> = rows.iter().flatten().map(|&x| x as i64).collect();
    Mat::from_vec(field, rows.len(), cols.len(), &flat).expect("shape")
}

impl PathBasis {
    fn compute(
        field: PrimeField,
        n: usize,
        arrows: &[Arrow],
        relations: &[Relation],
    ) -> Result<Self> {
        let max_rel = relations
            .iter()
            .flat_map(|r| r.terms.iter().map(|t| t.path.len()))
            .max()
            .unwrap_or(0);
        let nilpotency = (1..=MAX_PATH_LENGTH)
            .find(|&len| Self::long_paths_vanish(field, n, arrows, relations, len, len + 1 + max_rel))
            .ok_or_else(|| {
                Error::InvalidAlgebra(format!(
                    "paths of length {MAX_PATH_LENGTH} do not vanish; the algebra is not finite-dimensional within limits"
                ))
            })?;
        let short = enumerate_paths(n, arrows, nilpotency - 1);
        let mut basis = vec![vec![Vec::new(); n]; n];
        let mut reduction = HashMap::new();
        for s in 0..n {
            for t in 0..n {
                // Longest paths first, so pivots land on long paths and the
                // surviving basis favours short ones.
                let mut cols: Vec<Path> =
                    short.iter().filter(|p| p.source == s && p.target == t).cloned().collect();
                cols.sort_by(|a, b| b.arrows.len().cmp(&a.arrows.len()).then(a.arrows.cmp(&b.arrows)));
                let ideal = ideal_rows(field, &short, relations, s, t, &cols, nilpotency);
                let (r, piv) = ideal.rref();
                let free: Vec<usize> = (0..cols.len()).filter(|c| !piv.contains(c)).collect();
                // Report basis shortest first.
                let mut order: Vec<usize> = (0..free.len()).collect();
                order.sort_by(|&a, &b| {
                    let (pa, pb) = (&cols[free[a]], &cols[free[b]]);
                    pa.arrows.len().cmp(&pb.arrows.len()).then(pa.arrows.cmp(&pb.arrows))
                });
                let position: Vec<usize> = {
                    let mut pos = vec![0; free.len()];
                    for (new, &old) in order.iter().enumerate() {
                        pos[old] = new;
                    }
                    pos
                };
                basis[s][t] = order.iter().map(|&i| cols[free[i]].clone()).collect();
                for (ci, path) in cols.iter().enumerate() {
                    let mut coords = vec![0u32; free.len()];
                    if let Some(fi) = free.iter().position(|&f| f == ci) {
                        coords[position[fi]] = 1;
                    } else {
                        let row = piv.iter().position(|&pc| pc == ci).expect("pivot");
                        for (fi, &fc) in free.iter().enumerate() {
                            coords[position[fi]] = field.neg(r.get(row, fc));
                        }
                    }
                    reduction.insert((s, path.arrows.clone()), coords);
                }
            }
        }
        Ok(PathBasis { nilpotency, basis, reduction })
    }

    /// Whether every path of length `len` lies in the relation ideal, computed
    /// modulo paths of length `>= trunc`.
    fn long_paths_vanish(
        field: PrimeField,
        n: usize,
        arrows: &[Arrow],
        relations: &[Relation],
        len: usize,
        trunc: usize,
    ) -> bool {
        let all = enumerate_paths(n, arrows, trunc - 1);
        if all.len() > MAX_PATHS {
            return false;
        }
        let long: Vec<&Path> = all.iter().filter(|p| p.arrows.len() == len).collect();
        if long.is_empty() {
            return true;
        }
        for s in 0..n {
            for t in 0..n {
                let targets: Vec<&&Path> =
                    long.iter().filter(|p| p.source == s && p.target == t).collect();
                if targets.is_empty() {
                    continue;
                }
                let cols: Vec<Path> =
                    all.iter().filter(|p| p.source == s && p.target == t).cloned().collect();
                let ideal = ideal_rows(field, &all, relations, s, t, &cols, trunc);
                let rank = ideal.rank();
                for p in targets {
                    let j = cols.iter().position(|c| c == *p).expect("listed");
                    let mut e = Mat::zeros(field, 1, cols.len());
                    e.set(0, j, 1);
                    if ideal.vstack(&e).rank() != rank {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Arc<Algebra>> {
        validate_algebra(text)
    }

    #[test]
    fn dual_numbers() {
        let a = parse(
            r#"{"prime":2,"vertices":["1"],"arrows":[{"name":"x","from":"1","to":"1"}],
               "relations":[[{"coeff":1,"path":["x","x"]}]]}"#,
        )
        .unwrap();
        assert_eq!(a.dimension(), 2);
        assert_eq!(a.nilpotency_index(), 2);
        assert_eq!(a.basis_paths(0, 0).len(), 2);
    }

    #[test]
    fn a2_path_algebra() {
        let a = parse(
            r#"{"prime":2,"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}],"relations":[]}"#,
        )
        .unwrap();
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.basis_paths(0, 1).len(), 1);
        assert_eq!(a.basis_paths(1, 0).len(), 0);
    }

    #[test]
    fn commutative_square_relation() {
        // 1 -a-> 2 -b-> 4, 1 -c-> 3 -d-> 4 with ab = cd
        let a = parse(
            r#"{"prime":3,"vertices":["1","2","3","4"],
               "arrows":[{"name":"a","from":"1","to":"2"},{"name":"b","from":"2","to":"4"},
                         {"name":"c","from":"1","to":"3"},{"name":"d","from":"3","to":"4"}],
               "relations":[[{"coeff":1,"path":["a","b"]},{"coeff":-1,"path":["c","d"]}]]}"#,
        )
        .unwrap();
        assert_eq!(a.basis_paths(0, 3).len(), 1);
        let ab = a.reduce_path(0, &[0, 1]).unwrap().to_vec();
        let cd = a.reduce_path(0, &[2, 3]).unwrap().to_vec();
        assert_eq!(ab, cd);
    }

    #[test]
    fn rejects_non_composable_relation() {
        let err = parse(
            r#"{"prime":2,"vertices":["1","2","3","4"],
               "arrows":[{"name":"a","from":"1","to":"2"},{"name":"b","from":"3","to":"4"}],
               "relations":[[{"coeff":1,"path":["a","b"]}]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(m) if m.contains("composable")));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(parse(r#"{"prime":4,"vertices":["1"]}"#).is_err());
        assert!(parse(
            r#"{"prime":2,"vertices":["1"],"arrows":[{"name":"a","from":"1","to":"9"}]}"#
        )
        .is_err());
        // non-parallel terms
        assert!(parse(
            r#"{"prime":2,"vertices":["1","2"],
               "arrows":[{"name":"x","from":"1","to":"1"},{"name":"a","from":"1","to":"2"}],
               "relations":[[{"coeff":1,"path":["x","x"]},{"coeff":1,"path":["x","a"]}]]}"#
        )
        .is_err());
        // loop without relations is infinite-dimensional
        assert!(parse(
            r#"{"prime":2,"vertices":["1"],"arrows":[{"name":"x","from":"1","to":"1"}]}"#
        )
        .is_err());
        assert!(parse(r#"{"prime":2,"vertices":["1"],"bounds":{"max_dim":0}}"#).is_err());
    }
}
