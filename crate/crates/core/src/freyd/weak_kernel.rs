use std::fmt;
use std::sync::Arc;

use super::additive::{hom_dim, AddMorphism, AddObject};
use super::category::PresentedCategory;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Scalar};

/// Produces weak kernels in the additive closure: for `f: S -> T`, a
/// `w: K -> S` with `f ∘ w = 0` through which every map killed by `f` factors.
pub trait WeakKernelOracle: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;
    fn weak_kernel(&self, f: &AddMorphism) -> Result<AddMorphism>;
}

/// Works in any category with finite-dimensional homs: one copy of `c` for
/// each basis vector of the kernel of `Hom(c, S) -> Hom(c, T)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HomFiniteWeakKernels;

impl WeakKernelOracle for HomFiniteWeakKernels {
    fn name(&self) -> &'static str {
        "hom-finite"
    }

    fn weak_kernel(&self, f: &AddMorphism) -> Result<AddMorphism> {
        let cat = f.category();
        let mut candidates = Vec::new();
        for c in 0..cat.object_count() {
            let k = f.post_matrix(&AddObject::single(c)).kernel_basis();
            candidates.extend(k.columns().into_iter().map(|col| (c, col)));
        }
        let (summands, generators) = reduce_generators(cat, f.source(), candidates)?;
        from_generators(cat, summands, f.source(), &generators)
    }
}

/// Weak kernels in the closure of `ΣA`, from right-multiplication operators.
#[derive(Debug, Clone)]
pub struct SigmaWeakKernels {
    algebra: Arc<Algebra>,
}

impl SigmaWeakKernels {
    pub fn new(algebra: Arc<Algebra>) -> Self {
        SigmaWeakKernels { algebra }
    }
}

impl WeakKernelOracle for SigmaWeakKernels {
    fn name(&self) -> &'static str {
        "algebra"
    }

    fn weak_kernel(&self, f: &AddMorphism) -> Result<AddMorphism> {
        let a = &self.algebra;
        let cat = f.category();
        if cat.object_count() != 1 || cat.hom_dim(0, 0) != a.dim() {
            return Err(Error::CategoryMismatch("algebra weak kernels need a one-object category".into()));
        }
        let (m, n, d) = (f.source().len(), f.target().len(), a.dim());
        // generator h = (h_j) maps to (sum_j h_j f_jk)_k
        let mut big = Matrix::zeros(a.field(), n * d, m * d);
        for j in 0..m {
            for k in 0..n {
                big.set_block(k * d, j * d, &a.right_operator(f.block(j, k)));
            }
        }
        let candidates = big.kernel_basis().columns().into_iter().map(|col| (0, col)).collect();
        let (summands, generators) = reduce_generators(cat, f.source(), candidates)?;
        from_generators(cat, summands, f.source(), &generators)
    }
}

/// Discrete categories: kernels of the scalar matrix at each label, which are split.
#[derive(Debug, Clone, Copy, Default)]
pub struct DiscreteWeakKernels;

impl WeakKernelOracle for DiscreteWeakKernels {
    fn name(&self) -> &'static str {
        "discrete"
    }

    fn weak_kernel(&self, f: &AddMorphism) -> Result<AddMorphism> {
        let cat = f.category();
        if !cat.is_discrete() {
            return Err(Error::CategoryMismatch("discrete weak kernels need a discrete category".into()));
        }
        let field = cat.field();
        let (s, t) = (f.source().summands(), f.target().summands());
        let mut summands = Vec::new();
        let mut generators = Vec::new();
        for c in 0..cat.object_count() {
            let si: Vec<usize> = (0..s.len()).filter(|&i| s[i] == c).collect();
            let tj: Vec<usize> = (0..t.len()).filter(|&j| t[j] == c).collect();
            let m = Matrix::from_fn(field, tj.len(), si.len(), |r, q| f.block(si[q], tj[r])[0].clone());
            // Hom(c, S) has one coordinate per summand labelled c, in order
            for col in m.kernel_basis().columns() {
                summands.push(c);
                generators.push(col);
            }
        }
        from_generators(cat, summands, f.source(), &generators)
    }
}

/// Drops each candidate `c -> S` already reachable from earlier ones by precomposition.
fn reduce_generators(
    cat: &Arc<PresentedCategory>,
    target: &AddObject,
    candidates: Vec<(usize, Vec<Scalar>)>,
) -> Result<(Vec<usize>, Vec<Vec<Scalar>>)> {
    let field = cat.field();
    let n = cat.object_count();
    let mut covered: Vec<Matrix> =
        (0..n).map(|c| Matrix::zeros(field, hom_dim(cat, &AddObject::single(c), target), 0)).collect();
    let mut summands = Vec::new();
    let mut generators = Vec::new();
    for (c, v) in candidates {
        let with_v = covered[c].hstack(&Matrix::column_vector(field, v.clone()))?;
        if with_v.rank() == covered[c].cols() {
            continue;
        }
        let g = AddMorphism::from_coords(cat.clone(), AddObject::single(c), target.clone(), &v)?;
        for (c2, cov) in covered.iter_mut().enumerate() {
            let dh = cat.hom_dim(c2, c);
            if dh == 0 {
                continue;
            }
            let images = (0..dh)
                .map(|i| {
                    let h = AddMorphism::from_coords(cat.clone(), AddObject::single(c2), AddObject::single(c), &vector::unit(field, dh, i))?;
                    Ok(h.then(&g)?.coords())
                })
                .collect::<Result<Vec<_>>>()?;
            *cov = cov.hstack(&Matrix::from_columns(field, cov.rows(), &images))?.column_basis();
        }
        summands.push(c);
        generators.push(v);
    }
    Ok((summands, generators))
}

/// `K -> S` whose `i`-th row is the morphism `summands[i] -> S` with the given coordinates.
fn from_generators(
    cat: &Arc<PresentedCategory>,
    summands: Vec<usize>,
    target: &AddObject,
    generators: &[Vec<Scalar>],
) -> Result<AddMorphism> {
    let mut blocks = Vec::new();
    for (&c, g) in summands.iter().zip(generators) {
        let row = AddMorphism::from_coords(cat.clone(), AddObject::single(c), target.clone(), g)?;
        blocks.extend(row.blocks().iter().cloned());
    }
    AddMorphism::new(cat.clone(), AddObject::new(summands), target.clone(), blocks)
}

pub fn weak_kernel_for_algebra(a: Arc<Algebra>) -> Arc<dyn WeakKernelOracle> {
    Arc::new(SigmaWeakKernels::new(a))
}

/// Checks `f ∘ w = 0` and that, at every object `c`, the image of
/// `Hom(c, w)` is the whole kernel of `Hom(c, f)`.
pub fn check_weak_kernel(f: &AddMorphism, w: &AddMorphism) -> Result<()> {
    if w.target() != f.source() {
        return Err(Error::WeakKernelIntegrity("weak kernel does not map into the source".into()));
    }
    if !w.then(f)?.is_zero() {
        return Err(Error::WeakKernelIntegrity("composite with the weak kernel is nonzero".into()));
    }
    for c in 0..f.category().object_count() {
        let at = AddObject::single(c);
        let pf = f.post_matrix(&at);
        let nullity = pf.cols() - pf.rank();
        if w.post_matrix(&at).rank() != nullity {
            return Err(Error::WeakKernelIntegrity(format!(
                "maps from {} killed by the morphism do not all factor",
                f.category().objects()[c]
            )));
        }
    }
    Ok(())
}

/// Weak kernel from the category's oracle, integrity-checked.
pub fn weak_kernel(f: &AddMorphism) -> Result<AddMorphism> {
    let oracle = f.category().weak_kernel_oracle().ok_or(Error::WeakKernelsUnavailable)?;
    let w = oracle.weak_kernel(f)?;
    check_weak_kernel(f, &w)?;
    Ok(w)
}
