use std::sync::Arc;

use super::additive::AddMorphism;
use super::category::{tensor_presented, PresentedCategory};
use super::object::{FreydMorphism, FreydObject};
use crate::error::{Error, Result};

/// `q ⊠ p` in `Fin(X ⊗ Y)`, building `X ⊗ Y`.
pub fn box_tensor(q: &FreydObject, p: &FreydObject) -> Result<(Arc<PresentedCategory>, FreydObject)> {
    let t = Arc::new(tensor_presented(q.category(), p.category())?);
    let obj = box_tensor_in(&t, q, p)?;
    Ok((t, obj))
}

/// `coker((λ ⊗ 1, 1 ⊗ μ): x1 ⊗ y0 ⊕ x0 ⊗ y1 -> x0 ⊗ y0)` for `q = coker λ`, `p = coker μ`.
pub fn box_tensor_in(t: &Arc<PresentedCategory>, q: &FreydObject, p: &FreydObject) -> Result<FreydObject> {
    check_factors(t, q, p)?;
    let (x, y) = (q.category(), p.category());
    let id_x0 = AddMorphism::identity(x.clone(), q.r0().clone());
    let id_y0 = AddMorphism::identity(y.clone(), p.r0().clone());
    let left = AddMorphism::tensor(t, q.presentation(), &id_y0)?;
    let right = AddMorphism::tensor(t, &id_x0, p.presentation())?;
    Ok(FreydObject::new(left.hstack(&right)?))
}

fn check_factors(t: &PresentedCategory, q: &FreydObject, p: &FreydObject) -> Result<()> {
    match t.factors() {
        Some((x, y)) if **x == **q.category() && **y == **p.category() => Ok(()),
        _ => Err(Error::CategoryMismatch("tensor category is not built from the factors' categories".into())),
    }
}

/// `φ ⊠ ψ: q ⊠ p -> q' ⊠ p'`, represented by `ε ⊗ ε'`.
pub fn box_tensor_morphisms(t: &Arc<PresentedCategory>, phi: &FreydMorphism, psi: &FreydMorphism) -> Result<FreydMorphism> {
    let source = Arc::new(box_tensor_in(t, phi.source(), psi.source())?);
    let target = Arc::new(box_tensor_in(t, phi.target(), psi.target())?);
    let rep = AddMorphism::tensor(t, phi.rep(), psi.rep())?;
    FreydMorphism::new(source, target, rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::freyd::additive::AddObject;
    use crate::freyd::object::hom_dimension;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn representables_tensor_to_representables() {
        let x = Arc::new(PresentedCategory::discrete(Q, vec!["a".into(), "b".into()]));
        let y = Arc::new(PresentedCategory::discrete(Q, vec!["c".into()]));
        let (t, obj) = box_tensor(&FreydObject::representable(x, 1), &FreydObject::representable(y, 0)).unwrap();
        assert!(obj.r1().is_empty());
        assert_eq!(obj.r0().summands(), &[t.object_index("(b,c)").unwrap()]);
    }

    #[test]
    fn unit_law() {
        let a = Arc::new(Algebra::truncated_poly(Q, 2));
        let x = Arc::new(PresentedCategory::sigma_algebra(a.clone()));
        let u = Arc::new(PresentedCategory::unit(Q));
        let rho = AddMorphism::new(x.clone(), AddObject::single(0), AddObject::single(0), vec![a.basis_element(1)]).unwrap();
        let q = FreydObject::new(rho);
        let (t, qu) = box_tensor(&q, &FreydObject::representable(u, 0)).unwrap();
        assert_eq!(qu.dims(), q.dims());
        // the tensor category is ΣA again, so compare within one category
        assert_eq!(t.sigma_algebra_of().unwrap().dim(), a.dim());
        let qu = Arc::new(qu);
        let q_in_t = Arc::new(FreydObject::new(
            AddMorphism::new(t.clone(), AddObject::single(0), AddObject::single(0), vec![a.basis_element(1)]).unwrap(),
        ));
        let id = FreydMorphism::new(qu.clone(), q_in_t.clone(), AddMorphism::identity(t, AddObject::single(0))).unwrap();
        assert!(id.is_iso());
        assert_eq!(hom_dimension(&qu, &q_in_t).unwrap(), 1);
    }

    #[test]
    fn mismatched_tensor_category_rejected() {
        let x = Arc::new(PresentedCategory::unit(Q));
        let y = Arc::new(PresentedCategory::discrete(Q, vec!["a".into(), "b".into()]));
        let t = Arc::new(tensor_presented(&x, &x).unwrap());
        let r = box_tensor_in(&t, &FreydObject::representable(x, 0), &FreydObject::representable(y, 0));
        assert!(matches!(r, Err(Error::CategoryMismatch(_))));
    }
}
