//! The comparison `Fin(ΣA) -> A-Mod_f`: evaluate a presentation at the single object.

use std::sync::Arc;

use super::additive::AddObject;
use super::category::PresentedCategory;
use super::object::{FreydMorphism, FreydObject};
use super::tensor::box_tensor_in;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modcat::{cokernel, factor_through_epi, tensor_modules_over, Module, ModuleMorphism};

fn sigma_algebra(cat: &PresentedCategory) -> Result<&Arc<Algebra>> {
    cat.sigma_algebra_of()
        .ok_or_else(|| Error::CategoryMismatch("evaluation to modules needs a one-object algebra category".into()))
}

/// `q(*)` together with the projection from the free module on the generators.
pub fn eval_presentation(q: &FreydObject) -> Result<(Arc<Module>, ModuleMorphism)> {
    let a = sigma_algebra(q.category())?.clone();
    let star = AddObject::single(0);
    let rel = Arc::new(Module::free(a.clone(), q.r1().len()));
    let gen = Arc::new(Module::free(a, q.r0().len()));
    let rho = ModuleMorphism::new_unchecked(rel, gen, q.presentation().post_matrix(&star));
    let (m, proj) = cokernel(&rho);
    Ok((m, proj))
}

pub fn eval_to_modules(q: &FreydObject) -> Result<Arc<Module>> {
    Ok(eval_presentation(q)?.0)
}

/// The module map induced by a morphism of presentations.
pub fn eval_morphism(phi: &FreydMorphism) -> Result<ModuleMorphism> {
    let (_, ps) = eval_presentation(phi.source())?;
    let (_, pt) = eval_presentation(phi.target())?;
    let lifted = ModuleMorphism::new_unchecked(
        ps.source().clone(),
        pt.source().clone(),
        phi.rep().post_matrix(&AddObject::single(0)),
    );
    let down = lifted.then(&pt)?;
    factor_through_epi(&down, &ps)?.ok_or_else(|| Error::InvalidMorphism("representative does not respect the relations".into()))
}

/// The isomorphism `eval(q ⊠ p) -> eval q ⊗ eval p` over `A ⊗ B`, where `t = ΣA ⊗ ΣB`.
///
/// On generators it is `π_q ⊗ π_p` after reordering coordinates
/// `(i, j, a, b) -> (i, a, j, b)`.
pub fn box_eval_isomorphism(t: &Arc<PresentedCategory>, q: &FreydObject, p: &FreydObject) -> Result<ModuleMorphism> {
    let ab = sigma_algebra(t)?.clone();
    let (da, db) = (sigma_algebra(q.category())?.dim(), sigma_algebra(p.category())?.dim());
    let qp = box_tensor_in(t, q, p)?;
    let (_, pi_qp) = eval_presentation(&qp)?;
    let (mq, pi_q) = eval_presentation(q)?;
    let (mp, pi_p) = eval_presentation(p)?;
    let target = Arc::new(tensor_modules_over(ab, &mq, &mp)?);
    let (n, m) = (q.r0().len(), p.r0().len());
    let field = t.field();
    let size = n * m * da * db;
    let mut perm = Matrix::zeros(field, size, size);
    for i in 0..n {
        for j in 0..m {
            for a in 0..da {
                for b in 0..db {
                    let from = ((i * m + j) * da + a) * db + b;
                    let to = (i * da + a) * (m * db) + j * db + b;
                    perm.set(to, from, field.one());
                }
            }
        }
    }
    let on_generators = &pi_q.matrix().kronecker(pi_p.matrix())? * &perm;
    let g = ModuleMorphism::new(pi_qp.source().clone(), target, on_generators)?;
    factor_through_epi(&g, &pi_qp)?.ok_or_else(|| Error::InvalidMorphism("relations of the tensor are not killed".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freyd::additive::AddMorphism;
    use crate::freyd::category::tensor_presented;
    use crate::freyd::colimits::kernel;
    use crate::linalg::FieldSpec;
    use crate::modcat::kernel as module_kernel;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn dual() -> (Arc<Algebra>, Arc<PresentedCategory>) {
        let a = Arc::new(Algebra::truncated_poly(Q, 2));
        (a.clone(), Arc::new(PresentedCategory::sigma_algebra(a)))
    }

    #[test]
    fn representable_evaluates_to_regular_module() {
        let (a, cat) = dual();
        let m = eval_to_modules(&FreydObject::representable(cat, 0)).unwrap();
        assert_eq!(*m, Module::regular(a));
    }

    #[test]
    fn cokernel_of_x_evaluates_to_simple() {
        let (a, cat) = dual();
        let rho = AddMorphism::new(cat, AddObject::single(0), AddObject::single(0), vec![a.basis_element(1)]).unwrap();
        let m = eval_to_modules(&FreydObject::new(rho)).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.action()[1].is_zero());
    }

    #[test]
    fn kernel_evaluates_to_module_kernel() {
        let (a, cat) = dual();
        let y = Arc::new(FreydObject::representable(cat.clone(), 0));
        let rho = AddMorphism::new(cat.clone(), AddObject::single(0), AddObject::single(0), vec![a.basis_element(1)]).unwrap();
        let s = Arc::new(FreydObject::new(rho));
        let p = FreydMorphism::new(y, s, AddMorphism::identity(cat, AddObject::single(0))).unwrap();
        let (k, _) = kernel(&p).unwrap();
        let (mk, _) = module_kernel(&eval_morphism(&p).unwrap());
        let ek = eval_to_modules(&k).unwrap();
        assert_eq!(ek.dim(), mk.dim());
        assert!(crate::modcat::are_isomorphic(&ek, &mk).unwrap());
    }

    #[test]
    fn box_evaluation_matches_module_tensor() {
        let (a, x) = dual();
        let b = Arc::new(Algebra::upper_triangular(Q, 2));
        let y = Arc::new(PresentedCategory::sigma_algebra(b.clone()));
        let t = Arc::new(tensor_presented(&x, &y).unwrap());
        let q = FreydObject::new(
            AddMorphism::new(x, AddObject::single(0), AddObject::single(0), vec![a.basis_element(1)]).unwrap(),
        );
        let e11 = b.basis_element(0);
        let p = FreydObject::new(AddMorphism::new(y, AddObject::single(0), AddObject::new(vec![0, 0]), vec![e11.clone(), e11]).unwrap());
        let iso = box_eval_isomorphism(&t, &q, &p).unwrap();
        assert!(iso.is_isomorphism());
        assert_eq!(iso.source().dim(), eval_to_modules(&q).unwrap().dim() * eval_to_modules(&p).unwrap().dim());
    }

    #[test]
    fn non_sigma_category_rejected() {
        let d = Arc::new(PresentedCategory::discrete(Q, vec!["a".into()]));
        assert!(matches!(eval_to_modules(&FreydObject::representable(d, 0)), Err(Error::CategoryMismatch(_))));
    }
}
