//! Finite colimits and kernels in `Fin(X)`.

use std::sync::Arc;

use super::additive::{injection, projection, AddMorphism};
use super::category::PresentedCategory;
use super::object::{extend_along, factor_through, inverse, FreydMorphism, FreydObject};
use super::weak_kernel::weak_kernel;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub fn zero(category: Arc<PresentedCategory>) -> FreydObject {
    FreydObject::zero(category)
}

/// `p ⊕ q` with its two injections.
pub fn coproduct(p: &Arc<FreydObject>, q: &Arc<FreydObject>) -> Result<(Arc<FreydObject>, FreydMorphism, FreydMorphism)> {
    let cat = p.category().clone();
    let sum = Arc::new(FreydObject::new(p.presentation().direct_sum(q.presentation())?));
    let inj = |k: usize, part: &Arc<FreydObject>| {
        let rep = injection(&cat, &[p.r0(), q.r0()], k);
        let witness = injection(&cat, &[p.r1(), q.r1()], k);
        FreydMorphism::from_parts(part.clone(), sum.clone(), rep, witness)
    };
    let (ip, iq) = (inj(0, p), inj(1, q));
    Ok((sum, ip, iq))
}

/// Projections out of a coproduct built by [`coproduct`].
pub fn coproduct_projections(p: &Arc<FreydObject>, q: &Arc<FreydObject>, sum: &Arc<FreydObject>) -> (FreydMorphism, FreydMorphism) {
    let cat = p.category().clone();
    let proj = |k: usize, part: &Arc<FreydObject>| {
        let rep = projection(&cat, &[p.r0(), q.r0()], k);
        let witness = projection(&cat, &[p.r1(), q.r1()], k);
        FreydMorphism::from_parts(sum.clone(), part.clone(), rep, witness)
    };
    (proj(0, p), proj(1, q))
}

/// `coker(φ: q -> q')`, presented by `(ε | μ): q.r0 ⊕ q'.r1 -> q'.r0`; the
/// projection is the identity on generators.
pub fn cokernel(phi: &FreydMorphism) -> Result<(Arc<FreydObject>, FreydMorphism)> {
    let target = phi.target();
    let cat = phi.category().clone();
    let rho = phi.rep().hstack(target.presentation())?;
    let coker = Arc::new(FreydObject::new(rho));
    let rep = AddMorphism::identity(cat.clone(), target.r0().clone());
    let witness = injection(&cat, &[phi.source().r0(), target.r1()], 1);
    Ok((coker.clone(), FreydMorphism::from_parts(target.clone(), coker, rep, witness)))
}

/// Coequalizer of a parallel pair, as the cokernel of the difference.
pub fn coequalizer(phi: &FreydMorphism, psi: &FreydMorphism) -> Result<(Arc<FreydObject>, FreydMorphism)> {
    cokernel(&phi.sub(psi)?)
}

/// Pushout of `φ: a -> b` and `ψ: a -> c`, with the maps from `b` and `c`.
pub fn pushout(phi: &FreydMorphism, psi: &FreydMorphism) -> Result<(Arc<FreydObject>, FreydMorphism, FreydMorphism)> {
    if *phi.source() != *psi.source() {
        return Err(Error::NotComposable("pushout needs a common source".into()));
    }
    let (_, ib, ic) = coproduct(phi.target(), psi.target())?;
    let (p, proj) = coequalizer(&phi.then(&ib)?, &psi.then(&ic)?)?;
    Ok((p, ib.then(&proj)?, ic.then(&proj)?))
}

/// Kernel of `φ: q -> q'`, where `q = coker(λ: x -> y)`, `q' = coker(μ: x' -> y')`
/// and `ε: y -> y'` represents `φ`.
///
/// With weak kernels `w: k -> y ⊕ x'` of `(ε μ)` and `w': k' -> y ⊕ x' ⊕ x` of
/// `(1 ε; 0 μ; λ 0): y ⊕ x' ⊕ x -> y ⊕ y'`, the projection of `w'` to `y ⊕ x'`
/// lifts through `w` to `f: k' -> k`. When `w` is not monic the lift only
/// captures relations up to maps killed by `w`, so the kernel is presented as
/// `coker((f | wker(w)): k' ⊕ n -> k)` rather than `coker(f)`. The inclusion is
/// represented by the `y`-component of `w`.
pub fn kernel(phi: &FreydMorphism) -> Result<(Arc<FreydObject>, FreydMorphism)> {
    let cat = phi.category().clone();
    let field = cat.field();
    let (q, qp) = (phi.source(), phi.target());
    let (x, y) = (q.r1(), q.r0());
    let (xp, yp) = (qp.r1(), qp.r0());
    let eps = phi.rep();
    let (lambda, mu) = (q.presentation(), qp.presentation());

    let w = weak_kernel(&eps.hstack(mu)?)?;
    let k = w.source().clone();

    let id_y = AddMorphism::identity(cat.clone(), y.clone());
    let row_y = id_y.vstack(eps)?;
    let row_xp = AddMorphism::zero(cat.clone(), xp.clone(), y.clone()).vstack(mu)?;
    let row_x = lambda.vstack(&AddMorphism::zero(cat.clone(), x.clone(), yp.clone()))?;
    let big = row_y.hstack(&row_xp)?.hstack(&row_x)?;
    let wp = weak_kernel(&big)?;
    let kp = wp.source().clone();

    let yxp = y.concat(xp);
    let drop_x = projection(&cat, &[&yxp, x], 0);
    let target = wp.then(&drop_x)?;
    let lift = w
        .post_matrix(&kp)
        .solve(&Matrix::column_vector(field, target.coords()))?
        .ok_or_else(|| Error::WeakKernelIntegrity("relations do not lift through the weak kernel".into()))?;
    let f = AddMorphism::from_coords(cat.clone(), kp, k.clone(), &lift.column(0))?;
    let n = weak_kernel(&w)?;
    let relations = f.hstack(&n)?;
    let ker = Arc::new(FreydObject::new(relations).prune_relations());

    let rep = w.then(&projection(&cat, &[y, xp], 0))?;
    let inclusion = FreydMorphism::new(ker.clone(), q.clone(), rep)?;
    Ok((ker, inclusion))
}

/// `im φ` as the kernel of the cokernel projection.
pub fn image(phi: &FreydMorphism) -> Result<(Arc<FreydObject>, FreydMorphism)> {
    let (_, proj) = cokernel(phi)?;
    kernel(&proj)
}

/// `coim φ` as the cokernel of the kernel inclusion.
pub fn coimage(phi: &FreydMorphism) -> Result<(Arc<FreydObject>, FreydMorphism)> {
    let (_, inc) = kernel(phi)?;
    cokernel(&inc)
}

/// Canonical `coim φ -> im φ`.
pub fn coimage_to_image(phi: &FreydMorphism) -> Result<FreydMorphism> {
    let (_, to_coim) = coimage(phi)?;
    let (_, from_im) = image(phi)?;
    let through = extend_along(phi, &to_coim)?
        .ok_or_else(|| Error::InvalidMorphism("morphism does not kill its kernel".into()))?;
    factor_through(&through, &from_im)?.ok_or_else(|| Error::InvalidMorphism("coimage does not land in the image".into()))
}

/// True iff the canonical map from coimage to image is invertible.
pub fn image_coimage_check(phi: &FreydMorphism) -> Result<bool> {
    let theta = coimage_to_image(phi)?;
    Ok(inverse(&theta)?.is_some())
}
