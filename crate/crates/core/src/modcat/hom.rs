use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Module, ModuleMorphism};
use crate::error::Result;
use crate::linalg::{vector, Matrix};

/// Basis of `Hom_A(m, n)`, each element a `n.dim x m.dim` matrix.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<Matrix>> {
    m.same_algebra(n)?;
    let field = m.algebra().field();
    let (rows, cols) = (n.dim(), m.dim());
    let unknowns = rows * cols;
    // candidate solutions as columns, X flattened row-major
    let mut basis = Matrix::identity(field, unknowns);
    for (a, b) in m.action().iter().zip(n.action()) {
        if basis.cols() == 0 {
            break;
        }
        let images: Vec<_> = basis
            .columns()
            .iter()
            .map(|x| {
                let x = Matrix::from_entries(field, rows, cols, x.clone()).expect("shape");
                (&x * a).checked_sub(&(b * &x)).expect("shape").entries().to_vec()
            })
            .collect();
        let k = Matrix::from_columns(field, unknowns, &images).kernel_basis();
        basis = &basis * &k;
    }
    Ok(basis
        .columns()
        .into_iter()
        .map(|x| Matrix::from_entries(field, rows, cols, x).expect("shape"))
        .collect())
}

/// Searches `Hom_A(m, n)` for an invertible element: first the basis, then
/// seeded random combinations. A `None` over a very small field may miss an isomorphism.
pub fn find_isomorphism(m: &Arc<Module>, n: &Arc<Module>) -> Result<Option<ModuleMorphism>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let basis = hom_space(m, n)?;
    if m.dim() == 0 {
        return Ok(Some(ModuleMorphism::zero(m.clone(), n.clone())));
    }
    let field = m.algebra().field();
    let mut candidates: Vec<Matrix> = basis.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x150_0150);
    for _ in 0..8 {
        let mut acc = vector::zero(field, m.dim() * n.dim());
        for b in &basis {
            let c = field.from_i64(rng.gen_range(-50..=50));
            vector::axpy(&mut acc, &c, b.entries());
        }
        candidates.push(Matrix::from_entries(field, n.dim(), m.dim(), acc).expect("shape"));
    }
    Ok(candidates
        .into_iter()
        .find(|c| c.rank() == m.dim())
        .map(|c| ModuleMorphism::new_unchecked(m.clone(), n.clone(), c)))
}

pub fn are_isomorphic(m: &Arc<Module>, n: &Arc<Module>) -> Result<bool> {
    Ok(find_isomorphism(m, n)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn endomorphisms_of_regular_module_are_the_algebra() {
        for a in [Algebra::matrix_algebra(Q, 2), Algebra::upper_triangular(Q, 2), Algebra::truncated_poly(Q, 3)] {
            let d = a.dim();
            let m = Module::regular(Arc::new(a));
            let homs = hom_space(&m, &m).unwrap();
            assert_eq!(homs.len(), d);
            for h in &homs {
                ModuleMorphism::new(Arc::new(m.clone()), Arc::new(m.clone()), h.clone()).unwrap();
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let a = Arc::new(Algebra::matrix_algebra(Q, 2));
        let r = Arc::new(Module::regular(a.clone()));
        let f2 = Arc::new(Module::free(a.clone(), 1));
        let iso = find_isomorphism(&r, &f2).unwrap().unwrap();
        ModuleMorphism::new(r.clone(), f2, iso.matrix().clone()).unwrap();
        // modules over different algebras cannot be compared
        let t = Arc::new(Module::free(Arc::new(Algebra::ground(Q)), 4));
        assert!(find_isomorphism(&r, &t).is_err());
    }
}
