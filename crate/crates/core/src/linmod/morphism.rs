use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linmod::algebra::Algebra;
use crate::linmod::mat::Mat;
use crate::linmod::module::{Module, ModuleSpec};

/// Wire form: both modules plus one row-major block per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: ModuleSpec,
    pub target: ModuleSpec,
    pub blocks: Vec<Vec<i64>>,
}

/// An intertwiner between two modules, one matrix per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Module,
    target: Module,
    blocks: Vec<Mat>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Morphism")
            .field("source", &self.source.dims())
            .field("target", &self.target.dims())
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl Morphism {
    pub fn new(source: &Module, target: &Module, blocks: Vec<Mat>) -> Result<Self> {
        source.check_same_algebra(target)?;
        let alg = source.algebra();
        if blocks.len() != alg.vertex_count() {
            return Err(Error::NotIntertwiner(format!(
                "{} blocks for {} vertices",
                blocks.len(),
                alg.vertex_count()
            )));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dim(v), source.dim(v)) {
                return Err(Error::NotIntertwiner(format!(
                    "block {v} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dim(v),
                    source.dim(v)
                )));
            }
        }
        for (ai, a) in alg.arrows().iter().enumerate() {
            let lhs = blocks[a.target].mul(source.action(ai));
            let rhs = target.action(ai).mul(&blocks[a.source]);
            if lhs != rhs {
                return Err(Error::NotIntertwiner(format!("fails along arrow {:?}", a.name)));
            }
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), blocks })
    }

    pub fn from_spec(alg: &Arc<Algebra>, spec: &MorphismSpec) -> Result<Self> {
        let source = Module::from_spec(alg, &spec.source)?;
        let target = Module::from_spec(alg, &spec.target)?;
        if spec.blocks.len() != alg.vertex_count() {
            return Err(Error::NotIntertwiner(format!(
                "{} blocks for {} vertices",
                spec.blocks.len(),
                alg.vertex_count()
            )));
        }
        let blocks = spec
            .blocks
            .iter()
            .enumerate()
            .map(|(v, b)| {
                Mat::from_vec(alg.field(), target.dim(v), source.dim(v), b)
                    .map_err(|e| Error::NotIntertwiner(format!("block {v}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(&source, &target, blocks)
    }

    pub fn to_spec(&self) -> MorphismSpec {
        MorphismSpec {
            source: self.source.to_spec(),
            target: self.target.to_spec(),
            blocks: self.blocks.iter().map(|b| b.entries().iter().map(|&x| x as i64).collect()).collect(),
        }
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, blocks: Vec<Mat>) -> Self {
        debug_assert!(Morphism::new(source, target, blocks.clone()).is_ok());
        Morphism { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let f = source.field();
        let blocks = (0..source.dims().len())
            .map(|v| Mat::zeros(f, target.dim(v), source.dim(v)))
            .collect();
        Morphism { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn identity(m: &Module) -> Self {
        let f = m.field();
        let blocks = m.dims().iter().map(|&d| Mat::identity(f, d)).collect();
        Morphism { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn block(&self, vertex: usize) -> &Mat {
        &self.blocks[vertex]
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    /// `self` followed by `next`, i.e. `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Morphism {
        assert!(self.target == next.source, "composition of non-composable maps");
        let blocks = next.blocks.iter().zip(&self.blocks).map(|(g, f)| g.mul(f)).collect();
        Morphism { source: self.source.clone(), target: next.target.clone(), blocks }
    }

    /// `self ∘ prev`
    pub fn compose(&self, prev: &Morphism) -> Morphism {
        prev.then(self)
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert!(self.source == other.source && self.target == other.target);
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Morphism {
        self.scale(self.source.field().p() - 1)
    }

    pub fn scale(&self, s: u32) -> Morphism {
        let blocks = self.blocks.iter().map(|b| b.scale(s)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub(crate) fn add_scaled_assign(&mut self, other: &Morphism, s: u32) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            a.add_scaled_assign(b, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.blocks.iter().all(Mat::is_identity)
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(Mat::is_invertible)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let blocks = self.blocks.iter().map(Mat::inverse).collect::<Option<Vec<_>>>()?;
        Some(Morphism { source: self.target.clone(), target: self.source.clone(), blocks })
    }

    /// Rank of each vertex block.
    pub fn ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(Mat::rank).collect()
    }

    /// Coordinates of this map in the flattened unknown layout used by [`HomSystem`].
    pub(crate) fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.entries().iter().copied()).collect()
    }
}

/// Linear system whose unknowns are the block entries of a map `M -> N`.
///
/// Intertwining equations are always included; further affine constraints of
/// the form `A * f_v * B = C` pin composites.
pub struct HomSystem {
    source: Module,
    target: Module,
    offsets: Vec<usize>,
    unknowns: usize,
    rows: Vec<Vec<u32>>,
    rhs: Vec<u32>,
}

impl HomSystem {
    pub fn new(source: &Module, target: &Module) -> Result<Self> {
        source.check_same_algebra(target)?;
        let mut offsets = Vec::with_capacity(source.dims().len());
        let mut total = 0;
        for v in 0..source.dims().len() {
            offsets.push(total);
            total += source.dim(v) * target.dim(v);
        }
        let mut sys = HomSystem {
            source: source.clone(),
            target: target.clone(),
            offsets,
            unknowns: total,
            rows: Vec::new(),
            rhs: Vec::new(),
        };
        sys.add_intertwining();
        Ok(sys)
    }

    fn var(&self, v: usize, i: usize, k: usize) -> usize {
        self.offsets[v] + i * self.source.dim(v) + k
    }

    fn add_intertwining(&mut self) {
        let f = self.source.field();
        let alg = self.source.algebra().clone();
        for (ai, a) in alg.arrows().iter().enumerate() {
            let ms = self.source.action(ai).clone();
            let nt = self.target.action(ai).clone();
            let (s, t) = (a.source, a.target);
            // f_t * M(a) - N(a) * f_s = 0, entry (i, j)
            for i in 0..self.target.dim(t) {
                for j in 0..self.source.dim(s) {
                    let mut row = vec![0u32; self.unknowns];
                    for k in 0..self.source.dim(t) {
                        let c = ms.get(k, j);
                        if c != 0 {
                            let x = self.var(t, i, k);
                            row[x] = f.add(row[x], c);
                        }
                    }
                    for k in 0..self.target.dim(s) {
                        let c = nt.get(i, k);
                        if c != 0 {
                            let x = self.var(s, k, j);
                            row[x] = f.sub(row[x], c);
                        }
                    }
                    self.rows.push(row);
                    self.rhs.push(0);
                }
            }
        }
    }

    /// Adds `left * f_v * right = value`.
    pub fn constrain(&mut self, v: usize, left: &Mat, right: &Mat, value: &Mat) {
        let f = self.source.field();
        assert_eq!(left.cols(), self.target.dim(v));
        assert_eq!(right.rows(), self.source.dim(v));
        assert_eq!(value.shape(), (left.rows(), right.cols()));
        for i in 0..left.rows() {
            for j in 0..right.cols() {
                let mut row = vec![0u32; self.unknowns];
                for k in 0..left.cols() {
                    let l = left.get(i, k);
                    if l == 0 {
                        continue;
                    }
                    for m in 0..right.rows() {
                        let r = right.get(m, j);
                        if r != 0 {
                            let x = self.var(v, k, m);
                            row[x] = f.add(row[x], f.mul(l, r));
                        }
                    }
                }
                self.rows.push(row);
                self.rhs.push(value.get(i, j));
            }
        }
    }

    /// Requires `post ∘ f = value` where `post: N -> Z`.
    pub fn post_compose(&mut self, post: &Morphism, value: &Morphism) {
        assert!(post.source() == &self.target);
        for v in 0..self.offsets.len() {
            let id = Mat::identity(self.source.field(), self.source.dim(v));
            self.constrain(v, post.block(v), &id, value.block(v));
        }
    }

    /// Requires `f ∘ pre = value` where `pre: Z -> M`.
    pub fn pre_compose(&mut self, pre: &Morphism, value: &Morphism) {
        assert!(pre.target() == &self.source);
        for v in 0..self.offsets.len() {
            let id = Mat::identity(self.source.field(), self.target.dim(v));
            self.constrain(v, &id, pre.block(v), value.block(v));
        }
    }

    fn matrices(&self) -> (Mat, Mat) {
        let f = self.source.field();
        let flat: Vec<i64> = self.rows.iter().flatten().map(|&x| x as i64).collect();
        let a = Mat::from_vec(f, self.rows.len(), self.unknowns, &flat).expect("shape");
        let rhs: Vec<i64> = self.rhs.iter().map(|&x| x as i64).collect();
        let b = Mat::from_vec(f, rhs.len(), 1, &rhs).expect("shape");
        (a, b)
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    fn assemble(&self, x: &Mat) -> Morphism {
        let f = self.source.field();
        let blocks = (0..self.offsets.len())
            .map(|v| {
                let (r, c) = (self.target.dim(v), self.source.dim(v));
                let mut b = Mat::zeros(f, r, c);
                for i in 0..r {
                    for k in 0..c {
                        b.set(i, k, x.get(self.var(v, i, k), 0));
                    }
                }
                b
            })
            .collect();
        Morphism::new_unchecked(&self.source, &self.target, blocks)
    }

    /// A solution with all free variables zero, if the system is consistent.
    pub fn solve(&self) -> Option<Morphism> {
        let (a, b) = self.matrices();
        a.solve(&b).map(|x| self.assemble(&x))
    }

    /// Basis of the homogeneous solution space.
    pub fn kernel(&self) -> Vec<Morphism> {
        let (a, _) = self.matrices();
        let k = a.kernel_matrix();
        (0..k.cols()).map(|j| self.assemble(&k.column(j))).collect()
    }
}

/// Basis of the intertwiner space `Hom(M, N)`.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<Morphism>> {
    Ok(HomSystem::new(m, n)?.kernel())
}

/// `Σ coeffs[i] * basis[i]`, or the zero map from `source` to `target` when empty.
pub fn combine(source: &Module, target: &Module, basis: &[Morphism], coeffs: &[u32]) -> Morphism {
    let mut acc = Morphism::zero(source, target);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc.add_scaled_assign(b, c);
        }
    }
    acc
}

/// Coordinates of `f` in the span of `basis`, if it lies there.
pub fn coordinates(basis: &[Morphism], f: &Morphism) -> Option<Vec<u32>> {
    let field = f.source().field();
    let n = f.flatten().len();
    let mut a = Mat::zeros(field, n, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for (i, &x) in b.flatten().iter().enumerate() {
            a.set(i, j, x);
        }
    }
    let target: Vec<i64> = f.flatten().iter().map(|&x| x as i64).collect();
    let b = Mat::from_vec(field, n, 1, &target).expect("shape");
    a.solve(&b).map(|x| (0..basis.len()).map(|j| x.get(j, 0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::linmod::ops::direct_sum;

    #[test]
    fn lambda_hom_dimensions() {
        let alg = demos::lambda2();
        let k = Module::simple(&alg, 0);
        let p = Module::projective(&alg, 0);
        assert_eq!(hom_basis(&p, &p).unwrap().len(), 2);
        assert_eq!(hom_basis(&k, &p).unwrap().len(), 1);
        assert_eq!(hom_basis(&p, &k).unwrap().len(), 1);
        assert!(hom_basis(&p, &Module::zero(&alg)).unwrap().is_empty());
        let kk = direct_sum(&k, &k).module;
        assert_eq!(hom_basis(&kk, &kk).unwrap().len(), 4);
    }

    #[test]
    fn rejects_non_intertwiner() {
        let alg = demos::lambda2();
        let p = Module::projective(&alg, 0);
        let f = alg.field();
        let bad = Mat::from_rows(f, &[&[1, 0], &[0, 0]]);
        assert!(matches!(Morphism::new(&p, &p, vec![bad]), Err(Error::NotIntertwiner(_))));
    }
}
