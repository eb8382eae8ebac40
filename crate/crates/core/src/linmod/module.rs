use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linmod::algebra::Algebra;
use crate::linmod::field::PrimeField;
use crate::linmod::mat::Mat;

/// A finite-dimensional representation of a bound quiver.
#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    action: Vec<Mat>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dims == other.dims && self.action == other.action
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module").field("dims", &self.dims).field("action", &self.action).finish()
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Wire form of a module: per-vertex dimensions and per-arrow row-major matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub dims: Vec<usize>,
    pub action: Vec<Vec<i64>>,
}

impl Module {
    /// Checks shapes and relations and builds the module.
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, action: Vec<Mat>) -> Result<Self> {
        if dims.len() != alg.vertex_count() {
            return Err(Error::ModuleShape(format!(
                "{} dimensions given for {} vertices",
                dims.len(),
                alg.vertex_count()
            )));
        }
        if action.len() != alg.arrows().len() {
            return Err(Error::ModuleShape(format!(
                "{} matrices given for {} arrows",
                action.len(),
                alg.arrows().len()
            )));
        }
        for (a, m) in alg.arrows().iter().zip(&action) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::ModuleShape(format!(
                    "arrow {:?} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::ModuleShape(format!("arrow {:?}: wrong field", a.name)));
            }
        }
        let module = Module { alg: alg.clone(), dims, action };
        for (ri, rel) in alg.relations().iter().enumerate() {
            let mut sum = Mat::zeros(alg.field(), module.dims[rel.target], module.dims[rel.source]);
            for t in &rel.terms {
                sum.add_scaled_assign(&module.path_action(rel.source, &t.path), t.coeff);
            }
            if !sum.is_zero() {
                return Err(Error::InvalidModule { relation: ri, detail: format!("evaluates to {sum:?}") });
            }
        }
        // Nilpotency: long paths must act as zero.
        for p in alg.paths_of_length(alg.nilpotency_index()) {
            if !module.path_action(p.source, &p.arrows).is_zero() {
                return Err(Error::ModuleShape(format!(
                    "arrow action is not nilpotent along path {:?}",
                    p.arrows
                )));
            }
        }
        Ok(module)
    }

    pub fn from_spec(alg: &Arc<Algebra>, spec: &ModuleSpec) -> Result<Self> {
        if spec.dims.len() != alg.vertex_count() || spec.action.len() != alg.arrows().len() {
            return Err(Error::ModuleShape(format!(
                "expected {} dims and {} matrices",
                alg.vertex_count(),
                alg.arrows().len()
            )));
        }
        let action = alg
            .arrows()
            .iter()
            .zip(&spec.action)
            .map(|(a, entries)| {
                Mat::from_vec(alg.field(), spec.dims[a.target], spec.dims[a.source], entries)
                    .map_err(|e| Error::ModuleShape(format!("arrow {:?}: {e}", a.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        Module::new(alg, spec.dims.clone(), action)
    }

    pub fn to_spec(&self) -> ModuleSpec {
        ModuleSpec {
            dims: self.dims.clone(),
            action: self.action.iter().map(|m| m.entries().iter().map(|&x| x as i64).collect()).collect(),
        }
    }

    /// Skips validation; callers guarantee the relations hold.
    pub(crate) fn new_unchecked(alg: &Arc<Algebra>, dims: Vec<usize>, action: Vec<Mat>) -> Self {
        debug_assert!(Module::new(alg, dims.clone(), action.clone()).is_ok());
        Module { alg: alg.clone(), dims, action }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let dims = vec![0; alg.vertex_count()];
        let action = alg.arrows().iter().map(|_| Mat::zeros(alg.field(), 0, 0)).collect();
        Module { alg: alg.clone(), dims, action }
    }

    pub fn simple(alg: &Arc<Algebra>, vertex: usize) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        dims[vertex] = 1;
        let action = alg
            .arrows()
            .iter()
            .map(|a| Mat::zeros(alg.field(), dims[a.target], dims[a.source]))
            .collect();
        Module { alg: alg.clone(), dims, action }
    }

    /// Indecomposable projective `e_v A`: paths starting at `vertex`.
    pub fn projective(alg: &Arc<Algebra>, vertex: usize) -> Self {
        let f = alg.field();
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|w| alg.basis_paths(vertex, w).len()).collect();
        let action = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Mat::zeros(f, dims[a.target], dims[a.source]);
                for (j, p) in alg.basis_paths(vertex, a.source).iter().enumerate() {
                    let mut ext = p.arrows.clone();
                    ext.push(ai);
                    if let Some(coords) = alg.reduce_path(vertex, &ext) {
                        for (i, &c) in coords.iter().enumerate() {
                            m.set(i, j, c);
                        }
                    }
                }
                m
            })
            .collect();
        Module::new_unchecked(alg, dims, action)
    }

    /// Indecomposable injective: the dual of paths ending at `vertex`.
    pub fn injective(alg: &Arc<Algebra>, vertex: usize) -> Self {
        let f = alg.field();
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|w| alg.basis_paths(w, vertex).len()).collect();
        let action = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                // prepend: paths target->vertex to paths source->vertex
                let mut pre = Mat::zeros(f, dims[a.source], dims[a.target]);
                for (j, q) in alg.basis_paths(a.target, vertex).iter().enumerate() {
                    let mut ext = vec![ai];
                    ext.extend_from_slice(&q.arrows);
                    if let Some(coords) = alg.reduce_path(a.source, &ext) {
                        for (i, &c) in coords.iter().enumerate() {
                            pre.set(i, j, c);
                        }
                    }
                }
                pre.transpose()
            })
            .collect();
        Module::new_unchecked(alg, dims, action)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, vertex: usize) -> usize {
        self.dims[vertex]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Mat {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Matrix of a path (traversal order) starting at `source`.
    pub fn path_action(&self, source: usize, path: &[usize]) -> Mat {
        let mut m = Mat::identity(self.field(), self.dims[source]);
        for &a in path {
            m = self.action[a].mul(&m);
        }
        m
    }

    /// Sum of the images of all arrows into each vertex.
    pub fn radical_basis(&self, vertex: usize) -> Mat {
        let f = self.field();
        let mut gens = Mat::zeros(f, self.dims[vertex], 0);
        for (ai, a) in self.alg.arrows().iter().enumerate() {
            if a.target == vertex {
                gens = gens.hstack(&self.action[ai]);
            }
        }
        gens.column_space()
    }

    /// Common kernel of all arrows leaving each vertex.
    pub fn socle_basis(&self, vertex: usize) -> Mat {
        let f = self.field();
        let mut stacked = Mat::zeros(f, 0, self.dims[vertex]);
        for (ai, a) in self.alg.arrows().iter().enumerate() {
            if a.source == vertex {
                stacked = stacked.vstack(&self.action[ai]);
            }
        }
        stacked.kernel_matrix()
    }

    pub(crate) fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

pub fn validate_module(alg: &Arc<Algebra>, dims: Vec<usize>, action: Vec<Mat>) -> Result<Module> {
    Module::new(alg, dims, action)
}
