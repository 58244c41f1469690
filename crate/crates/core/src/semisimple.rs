//! Simple modules of split semisimple algebras, their tensor products, and
//! decomposition of objects over discrete categories.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{block_dim, central_primitive_idempotents, tensor_algebra, Algebra};
use crate::error::{Error, Result};
use crate::freyd::{AddMorphism, AddObject, FreydMorphism, FreydObject};
use crate::linalg::{poly, vector, Matrix, Scalar};
use crate::modcat::{find_isomorphism, hom_space, spin, submodule, tensor_modules_over, Module, ModuleMorphism};

/// One simple module per block of a split semisimple algebra.
#[derive(Clone, Debug)]
pub struct SimpleCatalogue {
    pub algebra: Arc<Algebra>,
    pub idempotents: Vec<Vec<Scalar>>,
    pub simple_dims: Vec<usize>,
    /// Multiplicity of each simple in the regular module.
    pub multiplicities: Vec<usize>,
    pub simples: Vec<Arc<Module>>,
}

impl SimpleCatalogue {
    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    /// `Σ dim · multiplicity = dim A`.
    pub fn regular_decomposition_consistent(&self) -> bool {
        self.simple_dims.iter().zip(&self.multiplicities).map(|(d, m)| d * m).sum::<usize>() == self.algebra.dim()
    }

    /// Split case: each simple appears in `A` as often as its dimension.
    pub fn multiplicity_equals_dim(&self) -> bool {
        self.simple_dims == self.multiplicities
    }

    pub fn report(&self, algebra: &str) -> CatalogueReport {
        CatalogueReport {
            algebra: algebra.to_string(),
            simples: self
                .simple_dims
                .iter()
                .zip(&self.idempotents)
                .map(|(&dim, e)| SimpleEntry { dim, idempotent: e.iter().map(ToString::to_string).collect() })
                .collect(),
            consistency: Consistency {
                regular_decomposition: self.regular_decomposition_consistent(),
                multiplicity_equals_dim: self.multiplicity_equals_dim(),
                endomorphisms_are_scalars: self
                    .simples
                    .iter()
                    .all(|s| hom_space(s, s).map(|h| h.len() == 1).unwrap_or(false)),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogueReport {
    pub algebra: String,
    pub simples: Vec<SimpleEntry>,
    pub consistency: Consistency,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleEntry {
    pub dim: usize,
    pub idempotent: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Consistency {
    pub regular_decomposition: bool,
    pub multiplicity_equals_dim: bool,
    pub endomorphisms_are_scalars: bool,
}

const SPLIT_HINT: &str = "simple modules must have endomorphism ring k";

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Elements of the block `eA` tried when looking for rational eigenvectors.
fn candidates(a: &Algebra, e: &[Scalar]) -> Vec<Vec<Scalar>> {
    let d = a.dim();
    let field = a.field();
    let basis: Vec<Vec<Scalar>> = (0..d).map(|i| a.mul(e, &a.basis_element(i))).filter(|v| !vector::is_zero(v)).collect();
    let mut out = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push(vector::add(&basis[i], &basis[j]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_1a7e);
    for _ in 0..16 {
        let mut acc = vector::zero(field, d);
        for b in &basis {
            vector::axpy(&mut acc, &field.from_i64(rng.gen_range(-3..=3)), b);
        }
        out.push(acc);
    }
    out
}

/// A proper nonzero submodule of `m` spun from a rational eigenvector of some candidate, if one is found.
fn split_off(m: &Arc<Module>, cands: &[Vec<Scalar>]) -> Result<Option<Matrix>> {
    let field = m.algebra().field();
    for b in cands {
        let t = m.action_of(b);
        let roots = poly::roots(field, &poly::minimal_polynomial(&t))?;
        for lambda in roots {
            let shifted = &t - &Matrix::identity(field, m.dim()).scale(&lambda);
            for v in shifted.kernel_basis().columns() {
                let sub = spin(m, &[v]);
                if sub.cols() < m.dim() {
                    return Ok(Some(sub));
                }
            }
        }
    }
    Ok(None)
}

/// The simple module of the block cut out by the central idempotent `e`, as a left ideal.
fn simple_in_block(a: &Arc<Algebra>, e: &[Scalar]) -> Result<Arc<Module>> {
    let bd = block_dim(a, e);
    let n = isqrt(bd);
    if n * n != bd {
        return Err(Error::NonSplit(format!("block of dimension {bd} is not a full matrix algebra; {SPLIT_HINT}")));
    }
    let regular = Arc::new(Module::regular(a.clone()));
    let (mut m, _) = submodule(&regular, &a.left_operator(e).column_basis());
    let cands = candidates(a, e);
    while m.dim() > n {
        match split_off(&m, &cands)? {
            Some(sub) => m = submodule(&m, &sub).0,
            None => {
                return Err(Error::NonSplit(format!(
                    "no rational eigenvector splits a module of dimension {} in a block of dimension {bd}; {SPLIT_HINT}",
                    m.dim()
                )))
            }
        }
    }
    Ok(m)
}

/// Simple modules of a split semisimple algebra, one per central primitive idempotent.
pub fn catalogue_simples(a: &Arc<Algebra>) -> Result<SimpleCatalogue> {
    let idempotents = central_primitive_idempotents(a)?;
    let mut simples = Vec::with_capacity(idempotents.len());
    for e in &idempotents {
        simples.push(simple_in_block(a, e)?);
    }
    let simple_dims: Vec<usize> = simples.iter().map(|s| s.dim()).collect();
    let multiplicities = idempotents.iter().zip(&simple_dims).map(|(e, &d)| block_dim(a, e) / d).collect();
    Ok(SimpleCatalogue { algebra: a.clone(), idempotents, simple_dims, multiplicities, simples })
}

/// `S_i ⊗ T_j ≅ U_k` with an explicit isomorphism.
#[derive(Clone, Debug)]
pub struct TensorPair {
    pub left: usize,
    pub right: usize,
    pub simple: usize,
    pub witness: ModuleMorphism,
}

#[derive(Clone, Debug)]
pub struct TensorCatalogue {
    pub left: SimpleCatalogue,
    pub right: SimpleCatalogue,
    pub tensor: SimpleCatalogue,
    pub pairs: Vec<TensorPair>,
}

impl TensorCatalogue {
    pub fn counts_multiply(&self) -> bool {
        self.tensor.len() == self.left.len() * self.right.len()
    }

    /// Every simple of the tensor is hit exactly once by a pair.
    pub fn pairing_is_bijective(&self) -> bool {
        let mut hit = vec![0; self.tensor.len()];
        for p in &self.pairs {
            hit[p.simple] += 1;
        }
        self.pairs.len() == self.left.len() * self.right.len() && hit.iter().all(|&h| h == 1)
    }
}

/// Simples of `A ⊗ B`, each matched with a tensor of simples of `A` and `B`.
pub fn simples_of_tensor(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<TensorCatalogue> {
    let left = catalogue_simples(a)?;
    let right = catalogue_simples(b)?;
    let t = Arc::new(tensor_algebra(a, b)?);
    let tensor = catalogue_simples(&t)?;
    let mut pairs = Vec::new();
    for (i, s) in left.simples.iter().enumerate() {
        for (j, u) in right.simples.iter().enumerate() {
            let st = Arc::new(tensor_modules_over(t.clone(), s, u)?);
            let mut found = None;
            for (k, v) in tensor.simples.iter().enumerate() {
                if let Some(w) = find_isomorphism(&st, v)? {
                    found = Some(TensorPair { left: i, right: j, simple: k, witness: w });
                    break;
                }
            }
            pairs.push(found.ok_or_else(|| {
                Error::NonSplit(format!("tensor of simples {i} and {j} is not simple; {SPLIT_HINT}"))
            })?);
        }
    }
    Ok(TensorCatalogue { left, right, tensor, pairs })
}

/// `q ≅ ⊕_a y(a)^{m_a}` over a discrete category.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Multiplicity per object label, zeros omitted.
    pub multiplicities: BTreeMap<String, usize>,
    /// Isomorphism from `q` onto the sum of representables, ordered by object index.
    pub isomorphism: FreydMorphism,
}

/// Multiplicity of `y(a)` is the number of generators at `a` minus the rank of the relations at `a`.
pub fn decompose_over_discrete(q: &Arc<FreydObject>) -> Result<Decomposition> {
    let cat = q.category().clone();
    if !cat.is_discrete() {
        return Err(Error::CategoryMismatch("decomposition needs a discrete category".into()));
    }
    let field = cat.field();
    let (r0, r1) = (q.r0().summands(), q.r1().summands());
    let mut target = Vec::new();
    let mut multiplicities = BTreeMap::new();
    // rows of the projection: (generator index, coefficient) per target summand
    let mut rows: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for c in 0..cat.object_count() {
        let gens: Vec<usize> = (0..r0.len()).filter(|&j| r0[j] == c).collect();
        let rels: Vec<usize> = (0..r1.len()).filter(|&i| r1[i] == c).collect();
        let block = Matrix::from_fn(field, gens.len(), rels.len(), |r, s| q.presentation().block(rels[s], gens[r])[0].clone());
        // functionals vanishing on the relations span the dual of the quotient
        let functionals = block.transpose().kernel_basis();
        if functionals.cols() > 0 {
            multiplicities.insert(cat.objects()[c].clone(), functionals.cols());
        }
        for f in functionals.columns() {
            target.push(c);
            let mut coeffs = vector::zero(field, r0.len());
            for (r, &j) in gens.iter().enumerate() {
                coeffs[j] = f[r].clone();
            }
            rows.push((c, coeffs));
        }
    }
    let target_obj = AddObject::new(target);
    let tl = target_obj.len();
    let mut blocks = Vec::with_capacity(r0.len() * tl);
    for (j, &gj) in r0.iter().enumerate() {
        for (c, coeffs) in &rows {
            blocks.push(if gj == *c { vec![coeffs[j].clone()] } else { Vec::new() });
        }
    }
    let rep = AddMorphism::new(cat.clone(), q.r0().clone(), target_obj.clone(), blocks)?;
    let free = Arc::new(FreydObject::free(cat, target_obj));
    let isomorphism = FreydMorphism::new(q.clone(), free, rep)?;
    Ok(Decomposition { multiplicities, isomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freyd::PresentedCategory;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn kxk() -> Algebra {
        Algebra::product(&[Algebra::ground(Q), Algebra::ground(Q)]).unwrap()
    }

    #[test]
    fn catalogue_examples() {
        let c = catalogue_simples(&Arc::new(kxk())).unwrap();
        assert_eq!(c.simple_dims, vec![1, 1]);
        let c = catalogue_simples(&Arc::new(Algebra::matrix_algebra(Q, 2))).unwrap();
        assert_eq!(c.simple_dims, vec![2]);
        assert!(c.regular_decomposition_consistent() && c.multiplicity_equals_dim());
        let t = Arc::new(tensor_algebra(&kxk(), &Algebra::matrix_algebra(Q, 3)).unwrap());
        let c = catalogue_simples(&t).unwrap();
        assert_eq!(c.simple_dims, vec![3, 3]);
        let r = c.report("T");
        assert!(r.consistency.endomorphisms_are_scalars);
    }

    #[test]
    fn tensor_of_k_times_m2_with_m3() {
        let a = Arc::new(Algebra::product(&[Algebra::ground(Q), Algebra::matrix_algebra(Q, 2)]).unwrap());
        let b = Arc::new(Algebra::matrix_algebra(Q, 3));
        let tc = simples_of_tensor(&a, &b).unwrap();
        let mut dims = tc.tensor.simple_dims.clone();
        dims.sort();
        assert_eq!(dims, vec![3, 6]);
        assert!(tc.counts_multiply() && tc.pairing_is_bijective());
        for p in &tc.pairs {
            assert!(p.witness.is_isomorphism());
        }
    }

    #[test]
    fn ground_tensor_ground() {
        let k = Arc::new(Algebra::ground(Q));
        let tc = simples_of_tensor(&k, &k).unwrap();
        assert_eq!(tc.tensor.simple_dims, vec![1]);
    }

    #[test]
    fn non_split_rejected() {
        let a = Arc::new(Algebra::cyclic_group_algebra(Q, 3));
        assert!(matches!(catalogue_simples(&a), Err(Error::NonSplit(_))));
        let b = Arc::new(Algebra::truncated_poly(Q, 2));
        assert!(matches!(catalogue_simples(&b), Err(Error::NotSemisimple(1))));
    }

    fn discrete3() -> Arc<PresentedCategory> {
        Arc::new(PresentedCategory::discrete(Q, vec!["a".into(), "b".into(), "c".into()]))
    }

    #[test]
    fn decompose_representable_and_zero() {
        let cat = discrete3();
        let y = Arc::new(FreydObject::representable(cat.clone(), 0));
        let d = decompose_over_discrete(&y).unwrap();
        assert_eq!(d.multiplicities, BTreeMap::from([("a".to_string(), 1)]));
        let id = AddMorphism::identity(cat.clone(), AddObject::single(1));
        let z = Arc::new(FreydObject::new(id));
        let d = decompose_over_discrete(&z).unwrap();
        assert!(d.multiplicities.is_empty());
        assert!(d.isomorphism.is_iso());
    }

    #[test]
    fn decompose_with_relations() {
        let cat = discrete3();
        // generators a, a, b; one relation at a identifying the two copies
        let r1 = AddObject::single(0);
        let r0 = AddObject::new(vec![0, 0, 1]);
        let rho = AddMorphism::new(cat, r1, r0, vec![vec![Q.one()], vec![Q.from_i64(-1)], vec![]]).unwrap();
        let q = Arc::new(FreydObject::new(rho));
        let d = decompose_over_discrete(&q).unwrap();
        assert_eq!(d.multiplicities, BTreeMap::from([("a".to_string(), 1), ("b".to_string(), 1)]));
        assert!(d.isomorphism.is_iso());
    }

    #[test]
    fn decompose_needs_discrete() {
        let cat = Arc::new(PresentedCategory::sigma_algebra(Arc::new(Algebra::matrix_algebra(Q, 2))));
        let y = Arc::new(FreydObject::representable(cat, 0));
        assert!(matches!(decompose_over_discrete(&y), Err(Error::CategoryMismatch(_))));
    }
}
