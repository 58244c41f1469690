use std::sync::Arc;

use super::{Module, ModuleMorphism};
use crate::algebra::{quotient_algebra, tensor_algebra, AlgebraMorphism, Ideal};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// The submodule spanned by the (linearly independent, invariant) columns of `basis`.
pub fn submodule(m: &Arc<Module>, basis: &Matrix) -> (Arc<Module>, ModuleMorphism) {
    let action = m
        .action()
        .iter()
        .map(|rho| {
            basis
                .solve(&(rho * basis))
                .expect("shapes agree")
                .expect("basis spans an invariant subspace")
        })
        .collect();
    let sub = Arc::new(Module::new_unchecked(m.algebra().clone(), basis.cols(), action));
    let inclusion = ModuleMorphism::new_unchecked(sub.clone(), m.clone(), basis.clone());
    (sub, inclusion)
}

/// `m / span(columns of sub)` for an invariant subspace. The quotient basis is
/// the set of standard basis vectors outside the pivots of the subspace's echelon form.
pub fn quotient(m: &Arc<Module>, sub: &Matrix) -> (Arc<Module>, ModuleMorphism) {
    let field = m.algebra().field();
    let n = m.dim();
    let echelon = sub.transpose().rref();
    let rows = echelon.matrix.block(0, 0, echelon.rank, n);
    let keep: Vec<usize> = (0..n).filter(|c| !echelon.pivots.contains(c)).collect();
    // projection: reduce modulo the subspace, read off the kept coordinates
    let mut projection = Matrix::zeros(field, keep.len(), n);
    for col in 0..n {
        let mut v = vec![field.zero(); n];
        v[col] = field.one();
        for (r, &p) in echelon.pivots.iter().enumerate() {
            let c = v[p].clone();
            if !c.is_zero() {
                crate::linalg::vector::axpy(&mut v, &-&c, rows.row(r));
            }
        }
        for (i, &k) in keep.iter().enumerate() {
            projection.set(i, col, v[k].clone());
        }
    }
    let section = Matrix::from_fn(field, n, keep.len(), |i, j| if keep[j] == i { field.one() } else { field.zero() });
    let action = m.action().iter().map(|rho| &(&projection * rho) * &section).collect();
    let q = Arc::new(Module::new_unchecked(m.algebra().clone(), keep.len(), action));
    let proj = ModuleMorphism::new_unchecked(m.clone(), q.clone(), projection);
    (q, proj)
}

/// Basis (as columns) of the submodule generated by the given vectors.
pub fn spin(m: &Module, vectors: &[Vec<Scalar>]) -> Matrix {
    let field = m.algebra().field();
    let mut basis = Matrix::from_columns(field, m.dim(), vectors).column_basis();
    loop {
        let mut all = basis.clone();
        for rho in m.action() {
            all = all.hstack(&(rho * &basis)).expect("same height");
        }
        let next = all.column_basis();
        if next.cols() == basis.cols() {
            return basis;
        }
        basis = next;
    }
}

pub fn kernel(f: &ModuleMorphism) -> (Arc<Module>, ModuleMorphism) {
    submodule(f.source(), &f.matrix().kernel_basis())
}

pub fn cokernel(f: &ModuleMorphism) -> (Arc<Module>, ModuleMorphism) {
    quotient(f.target(), &f.matrix().column_basis())
}

pub fn image(f: &ModuleMorphism) -> (Arc<Module>, ModuleMorphism) {
    submodule(f.target(), &f.matrix().column_basis())
}

/// The unique `u` with `inclusion ∘ u = g`, if `g` lands in the image of the (injective) `inclusion`.
pub fn factor_through_mono(g: &ModuleMorphism, inclusion: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    let Some(u) = inclusion.matrix().solve(g.matrix())? else {
        return Ok(None);
    };
    Ok(Some(ModuleMorphism::new(g.source().clone(), inclusion.source().clone(), u)?))
}

/// The unique `u` with `u ∘ projection = g`, if `g` kills the kernel of the (surjective) `projection`.
pub fn factor_through_epi(g: &ModuleMorphism, projection: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    let Some(u) = projection.matrix().solve_left(g.matrix())? else {
        return Ok(None);
    };
    Ok(Some(ModuleMorphism::new(projection.target().clone(), g.target().clone(), u)?))
}

/// Views a `B`-module as an `A`-module along `f: A -> B`.
pub fn restrict_scalars(f: &AlgebraMorphism, m: &Module) -> Result<Module> {
    if **f.target() != **m.algebra() {
        return Err(Error::AlgebraMismatch("module is not over the target of the algebra morphism".into()));
    }
    let action = (0..f.source().dim()).map(|i| m.action_of(&f.matrix().column(i))).collect();
    Ok(Module::new_unchecked(f.source().clone(), m.dim(), action))
}

/// Restriction on morphisms: same matrix between the restricted modules.
pub fn restrict_morphism(f: &AlgebraMorphism, g: &ModuleMorphism) -> Result<ModuleMorphism> {
    let s = Arc::new(restrict_scalars(f, g.source())?);
    let t = Arc::new(restrict_scalars(f, g.target())?);
    Ok(ModuleMorphism::new_unchecked(s, t, g.matrix().clone()))
}

/// `m ⊗_k n` over `A ⊗ B`, with `a_i ⊗ b_j` acting as `ρ_m(a_i) ⊗ ρ_n(b_j)`.
pub fn tensor_modules(m: &Module, n: &Module) -> Result<Module> {
    let t = Arc::new(tensor_algebra(m.algebra(), n.algebra())?);
    tensor_modules_over(t, m, n)
}

/// As [`tensor_modules`], reusing an already built `A ⊗ B`.
pub fn tensor_modules_over(t: Arc<crate::algebra::Algebra>, m: &Module, n: &Module) -> Result<Module> {
    if t.dim() != m.algebra().dim() * n.algebra().dim() {
        return Err(Error::AlgebraMismatch("tensor algebra has the wrong dimension".into()));
    }
    let mut action = Vec::with_capacity(t.dim());
    for a in m.action() {
        for b in n.action() {
            action.push(a.kronecker(b)?);
        }
    }
    Ok(Module::new_unchecked(t, m.dim() * n.dim(), action))
}

/// `f ⊗ g` between the tensor modules.
pub fn tensor_morphisms(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<ModuleMorphism> {
    let t = Arc::new(tensor_algebra(f.source().algebra(), g.source().algebra())?);
    let s = Arc::new(tensor_modules_over(t.clone(), f.source(), g.source())?);
    let u = Arc::new(tensor_modules_over(t, f.target(), g.target())?);
    Ok(ModuleMorphism::new_unchecked(s, u, f.matrix().kronecker(g.matrix())?))
}

/// `M / IM` as a module over `A/I`, with the projection `M -> M/IM` as a map of `A`-modules
/// (its target restricted along `A -> A/I`).
pub fn biggest_quotient(m: &Arc<Module>, ideal: &Ideal) -> Result<(Arc<Module>, ModuleMorphism)> {
    if **ideal.parent() != **m.algebra() {
        return Err(Error::AlgebraMismatch("ideal belongs to a different algebra".into()));
    }
    let (quot_alg, pi) = quotient_algebra(ideal.parent(), ideal)?;
    let im: Vec<Vec<Scalar>> = ideal
        .basis()
        .iter()
        .flat_map(|g| m.action_of(g).columns())
        .collect();
    let im = Matrix::from_columns(m.algebra().field(), m.dim(), &im).column_basis();
    let (q, proj) = quotient(m, &im);
    // basis element j of A/I is the image of A's basis element keep[j]
    let keep = ideal.complement_indices();
    let action = keep.iter().map(|&i| q.action()[i].clone()).collect();
    let over_quotient = Arc::new(Module::new_unchecked(quot_alg, q.dim(), action));
    let restricted = Arc::new(restrict_scalars(&pi, &over_quotient)?);
    let projection = ModuleMorphism::new_unchecked(m.clone(), restricted, proj.matrix().clone());
    Ok((over_quotient, projection))
}

/// True iff `image = kernel` at every interior node of a composable chain.
pub fn is_exact(chain: &[ModuleMorphism]) -> Result<bool> {
    for w in chain.windows(2) {
        let (f, g) = (&w[0], &w[1]);
        if f.target().dim() != g.source().dim() || f.target().algebra() != g.source().algebra() {
            return Err(Error::NotComposable("chain is not composable".into()));
        }
        let composite = g.matrix() * f.matrix();
        if !composite.is_zero() || f.rank() != g.source().dim() - g.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `0 -> left -> mid -> right -> 0`, verified on construction.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    inj: ModuleMorphism,
    surj: ModuleMorphism,
}

impl ShortExactSequence {
    pub fn new(inj: ModuleMorphism, surj: ModuleMorphism) -> Result<Self> {
        if !inj.is_injective() {
            return Err(Error::InvalidModuleMorphism("left map of a short exact sequence is not injective".into()));
        }
        if !surj.is_surjective() {
            return Err(Error::InvalidModuleMorphism("right map of a short exact sequence is not surjective".into()));
        }
        if !is_exact(&[inj.clone(), surj.clone()])? {
            return Err(Error::InvalidModuleMorphism("image of the left map is not the kernel of the right map".into()));
        }
        Ok(ShortExactSequence { inj, surj })
    }

    /// `0 -> S -> M -> M/S -> 0` for an invariant subspace `S`.
    pub fn from_submodule(m: &Arc<Module>, basis: &Matrix) -> Self {
        let (_, inj) = submodule(m, basis);
        let (_, surj) = quotient(m, basis);
        ShortExactSequence { inj, surj }
    }

    pub fn left(&self) -> &Arc<Module> {
        self.inj.source()
    }

    pub fn mid(&self) -> &Arc<Module> {
        self.inj.target()
    }

    pub fn right(&self) -> &Arc<Module> {
        self.surj.target()
    }

    pub fn inj(&self) -> &ModuleMorphism {
        &self.inj
    }

    pub fn surj(&self) -> &ModuleMorphism {
        &self.surj
    }

    /// `0 -> left -> mid -> right -> 0` as a chain including the zero maps at either end.
    pub fn chain(&self) -> Vec<ModuleMorphism> {
        let zero = Arc::new(Module::zero(self.mid().algebra().clone()));
        vec![
            ModuleMorphism::zero(zero.clone(), self.left().clone()),
            self.inj.clone(),
            self.surj.clone(),
            ModuleMorphism::zero(self.right().clone(), zero),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn dual() -> (Arc<Algebra>, Arc<Module>, ModuleMorphism) {
        let a = Arc::new(Algebra::truncated_poly(Q, 2));
        let m = Arc::new(Module::regular(a.clone()));
        // right multiplication by x is A-linear (A is commutative)
        let x = a.right_operator(&a.basis_element(1));
        let f = ModuleMorphism::new(m.clone(), m.clone(), x).unwrap();
        (a, m, f)
    }

    #[test]
    fn kernel_examples() {
        let (_, m, x) = dual();
        let (k, inc) = kernel(&ModuleMorphism::identity(m.clone()));
        assert_eq!(k.dim(), 0);
        assert!(inc.is_injective());

        let (k, inc) = kernel(&x);
        assert_eq!(k.dim(), 1);
        k.validate().unwrap();
        // x acts as zero on span{x}
        assert!(k.action()[1].is_zero());
        assert!((x.matrix() * inc.matrix()).is_zero());

        let zero_map = ModuleMorphism::zero(m.clone(), m.clone());
        let (k, inc) = kernel(&zero_map);
        assert_eq!(k.dim(), 2);
        assert!(inc.is_isomorphism());
    }

    #[test]
    fn cokernel_examples() {
        let (a, m, x) = dual();
        let (c, _) = cokernel(&ModuleMorphism::identity(m.clone()));
        assert_eq!(c.dim(), 0);

        let (c, p) = cokernel(&x);
        assert_eq!(c.dim(), 1);
        c.validate().unwrap();
        assert!(c.action()[1].is_zero());
        assert!(p.is_surjective());

        let zero = Arc::new(Module::zero(a));
        let (c, p) = cokernel(&ModuleMorphism::zero(zero, m.clone()));
        assert_eq!(c.dim(), 2);
        assert!(p.is_isomorphism());
    }

    #[test]
    fn universal_factorization_through_kernel() {
        let (_, m, x) = dual();
        let (_, inc) = kernel(&x);
        // x itself is killed by x (x^2 = 0), so it factors through ker(x)
        let u = factor_through_mono(&x, &inc).unwrap().unwrap();
        assert_eq!(&(inc.matrix() * u.matrix()), x.matrix());
        let id = ModuleMorphism::identity(m);
        assert!(factor_through_mono(&id, &inc).unwrap().is_none());
    }

    #[test]
    fn restriction_examples() {
        let (a, m, _) = dual();
        let same = restrict_scalars(&AlgebraMorphism::identity(a.clone()), &m).unwrap();
        assert_eq!(same, *m);
        let to_k = restrict_scalars(&AlgebraMorphism::unit_inclusion(a.clone()), &m).unwrap();
        assert_eq!(to_k.algebra().dim(), 1);
        assert!(to_k.action()[0].is_identity());
        let other = Arc::new(Algebra::ground(Q));
        assert!(restrict_scalars(&AlgebraMorphism::identity(other), &m).is_err());
    }

    #[test]
    fn tensor_with_trivial_module() {
        let (_, m, _) = dual();
        let k = Arc::new(Algebra::ground(Q));
        let triv = Module::regular(k);
        let t = tensor_modules(&m, &triv).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t.action(), m.action());
        t.validate().unwrap();
    }

    #[test]
    fn biggest_quotient_examples() {
        let (a, m, _) = dual();
        let (q, p) = biggest_quotient(&m, &Ideal::zero(a.clone())).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(p.is_isomorphism());

        let i = Ideal::generated_by(a.clone(), vec![a.basis_element(1)]).unwrap();
        let (q, p) = biggest_quotient(&m, &i).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.algebra().dim(), 1);
        q.validate().unwrap();
        ModuleMorphism::new(p.source().clone(), p.target().clone(), p.matrix().clone()).unwrap();

        // already annihilated: the 1-dimensional quotient k
        let (k, _) = cokernel(&dual().2);
        let (q2, p2) = biggest_quotient(&k, &i).unwrap();
        assert_eq!(q2.dim(), 1);
        assert!(p2.is_isomorphism());
    }

    #[test]
    fn exactness_examples() {
        let (a, m, x) = dual();
        let zero = Arc::new(Module::zero(a));
        let id = ModuleMorphism::identity(m.clone());
        let into = ModuleMorphism::zero(zero.clone(), m.clone());
        let out = ModuleMorphism::zero(m.clone(), zero.clone());
        assert!(is_exact(&[into.clone(), id, out.clone()]).unwrap());
        assert!(!is_exact(&[into, out]).unwrap());

        let (_, inc) = kernel(&x);
        let (_, proj) = cokernel(&inc);
        let ses = ShortExactSequence::new(inc.clone(), proj).unwrap();
        assert!(is_exact(&ses.chain()).unwrap());
        // x then x is a complex but x is not injective
        assert!(ShortExactSequence::new(x.clone(), x.clone()).is_err());
        assert!(matches!(is_exact(&[inc.clone(), inc]), Err(Error::NotComposable(_))));
    }
}
