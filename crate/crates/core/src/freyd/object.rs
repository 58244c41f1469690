use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::additive::{hom_dim, AddMorphism, AddObject};
use super::category::{same_category, PresentedCategory};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};

/// An object of `Fin(X)`: the cokernel of `X(-, ρ)` for a presentation `ρ: r1 -> r0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreydObject {
    presentation: AddMorphism,
}

impl FreydObject {
    pub fn new(presentation: AddMorphism) -> Self {
        FreydObject { presentation }
    }

    /// `y(a)`, with no relations.
    pub fn representable(category: Arc<PresentedCategory>, a: usize) -> Self {
        Self::free(category, AddObject::single(a))
    }

    /// A sum of representables.
    pub fn free(category: Arc<PresentedCategory>, r0: AddObject) -> Self {
        FreydObject { presentation: AddMorphism::zero(category, AddObject::zero(), r0) }
    }

    pub fn zero(category: Arc<PresentedCategory>) -> Self {
        Self::free(category, AddObject::zero())
    }

    pub fn category(&self) -> &Arc<PresentedCategory> {
        self.presentation.category()
    }

    pub fn field(&self) -> FieldSpec {
        self.category().field()
    }

    pub fn presentation(&self) -> &AddMorphism {
        &self.presentation
    }

    pub fn r0(&self) -> &AddObject {
        self.presentation.target()
    }

    pub fn r1(&self) -> &AddObject {
        self.presentation.source()
    }

    /// `dim q(c)`.
    pub fn dim_at(&self, c: usize) -> usize {
        let r = self.presentation.post_matrix(&AddObject::single(c));
        r.rows() - r.rank()
    }

    /// Dimensions `q(c)` for every object `c`.
    pub fn dims(&self) -> Vec<usize> {
        (0..self.category().object_count()).map(|c| self.dim_at(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.category().object_count()).all(|c| self.dim_at(c) == 0)
    }

    /// Drops relation summands whose image is already generated by earlier ones.
    /// The identity on `r0` is an isomorphism between the old and new object.
    pub fn prune_relations(&self) -> FreydObject {
        let rho = &self.presentation;
        let cat = self.category();
        let n = cat.object_count();
        let mut spans: Vec<Matrix> = (0..n)
            .map(|c| Matrix::zeros(cat.field(), hom_dim(cat, &AddObject::single(c), self.r0()), 0))
            .collect();
        let mut keep = Vec::new();
        for (i, &s) in self.r1().summands().iter().enumerate() {
            let row = row_of(rho, i, s);
            let mut grows = false;
            let mut next = Vec::with_capacity(n);
            for (c, span) in spans.iter().enumerate() {
                let img = row.post_matrix(&AddObject::single(c));
                let joined = span.hstack(&img).expect("same height");
                let basis = joined.column_basis();
                grows |= basis.cols() > span.cols();
                next.push(basis);
            }
            if grows {
                keep.push(i);
                spans = next;
            }
        }
        let tl = self.r0().len();
        let summands = keep.iter().map(|&i| self.r1().summands()[i]).collect();
        let blocks = keep.iter().flat_map(|&i| rho.blocks()[i * tl..(i + 1) * tl].iter().cloned()).collect();
        let pruned = AddMorphism::new(cat.clone(), AddObject::new(summands), self.r0().clone(), blocks).expect("rows of a valid morphism");
        FreydObject { presentation: pruned }
    }

    pub fn to_repr(&self, category: &str) -> FreydObjectRepr {
        let labels = |o: &AddObject| o.summands().iter().map(|&a| self.category().objects()[a].clone()).collect();
        FreydObjectRepr {
            category: category.to_string(),
            r1: labels(self.r1()),
            r0: labels(self.r0()),
            blocks: self
                .presentation
                .blocks()
                .iter()
                .map(|b| b.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn from_repr(category: Arc<PresentedCategory>, repr: &FreydObjectRepr) -> Result<Self> {
        let index = |labels: &[String]| -> Result<AddObject> {
            labels
                .iter()
                .map(|l| category.object_index(l).ok_or_else(|| Error::InvalidMorphism(format!("unknown object {l:?}"))))
                .collect::<Result<Vec<_>>>()
                .map(AddObject::new)
        };
        let (r1, r0) = (index(&repr.r1)?, index(&repr.r0)?);
        let field = category.field();
        let blocks = repr
            .blocks
            .iter()
            .map(|b| b.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(FreydObject::new(AddMorphism::new(category, r1, r0, blocks)?))
    }
}

/// JSON form: relation and generator summands by label, blocks `i * |r0| + j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreydObjectRepr {
    pub category: String,
    pub r1: Vec<String>,
    pub r0: Vec<String>,
    pub blocks: Vec<Vec<String>>,
}

/// Row `i` of an additive morphism, as a morphism out of its `i`-th source summand.
fn row_of(m: &AddMorphism, i: usize, s: usize) -> AddMorphism {
    let tl = m.target().len();
    AddMorphism::new(m.category().clone(), AddObject::single(s), m.target().clone(), m.blocks()[i * tl..(i + 1) * tl].to_vec())
        .expect("row of a valid morphism")
}

/// Stacks a grid of blocks into one matrix; every row of the grid shares a height.
pub(crate) fn assemble(field: FieldSpec, grid: &[Vec<&Matrix>]) -> Matrix {
    let mut out: Option<Matrix> = None;
    for row in grid {
        let mut r = row[0].clone();
        for m in &row[1..] {
            r = r.hstack(m).expect("blocks in a row share a height");
        }
        out = Some(match out {
            None => r,
            Some(o) => o.vstack(&r).expect("rows share a width"),
        });
    }
    out.unwrap_or_else(|| Matrix::zeros(field, 0, 0))
}

/// A morphism of `Fin(X)`: a representative `ε: source.r0 -> target.r0` with a
/// witness `χ: source.r1 -> target.r1` satisfying `ε ∘ λ = μ ∘ χ`.
#[derive(Clone, Debug)]
pub struct FreydMorphism {
    source: Arc<FreydObject>,
    target: Arc<FreydObject>,
    rep: AddMorphism,
    witness: AddMorphism,
}

impl FreydMorphism {
    /// Finds a witness for `rep`, failing if none exists.
    pub fn new(source: Arc<FreydObject>, target: Arc<FreydObject>, rep: AddMorphism) -> Result<Self> {
        if !same_category(source.category(), target.category()) || !same_category(source.category(), rep.category()) {
            return Err(Error::CategoryMismatch("morphism between objects of different categories".into()));
        }
        if rep.source() != source.r0() || rep.target() != target.r0() {
            return Err(Error::InvalidMorphism("representative does not join the generators".into()));
        }
        let lhs = source.presentation().then(&rep)?;
        let mu = target.presentation();
        let chi = mu
            .post_matrix(source.r1())
            .solve(&Matrix::column_vector(rep.category().field(), lhs.coords()))?
            .ok_or_else(|| Error::InvalidMorphism("representative does not respect the relations".into()))?;
        let witness = AddMorphism::from_coords(rep.category().clone(), source.r1().clone(), target.r1().clone(), &chi.column(0))?;
        Ok(FreydMorphism { source, target, rep, witness })
    }

    /// Trusts the caller that `witness` satisfies the compatibility equation.
    pub(crate) fn from_parts(source: Arc<FreydObject>, target: Arc<FreydObject>, rep: AddMorphism, witness: AddMorphism) -> Self {
        debug_assert_eq!(
            source.presentation().then(&rep).unwrap(),
            witness.then(target.presentation()).unwrap()
        );
        FreydMorphism { source, target, rep, witness }
    }

    pub fn identity(q: Arc<FreydObject>) -> Self {
        let cat = q.category().clone();
        let rep = AddMorphism::identity(cat.clone(), q.r0().clone());
        let witness = AddMorphism::identity(cat, q.r1().clone());
        FreydMorphism { source: q.clone(), target: q, rep, witness }
    }

    pub fn zero(source: Arc<FreydObject>, target: Arc<FreydObject>) -> Self {
        let cat = source.category().clone();
        let rep = AddMorphism::zero(cat.clone(), source.r0().clone(), target.r0().clone());
        let witness = AddMorphism::zero(cat, source.r1().clone(), target.r1().clone());
        FreydMorphism { source, target, rep, witness }
    }

    pub fn source(&self) -> &Arc<FreydObject> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreydObject> {
        &self.target
    }

    pub fn rep(&self) -> &AddMorphism {
        &self.rep
    }

    pub fn witness(&self) -> &AddMorphism {
        &self.witness
    }

    pub fn category(&self) -> &Arc<PresentedCategory> {
        self.rep.category()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FreydMorphism) -> Result<FreydMorphism> {
        if *self.target != *other.source {
            return Err(Error::NotComposable("target and source objects differ".into()));
        }
        Ok(FreydMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            rep: self.rep.then(&other.rep)?,
            witness: self.witness.then(&other.witness)?,
        })
    }

    fn check_parallel(&self, other: &FreydMorphism) -> Result<()> {
        if *self.source != *other.source || *self.target != *other.target {
            return Err(Error::InvalidMorphism("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FreydMorphism) -> Result<FreydMorphism> {
        self.check_parallel(other)?;
        Ok(FreydMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            rep: self.rep.add(&other.rep)?,
            witness: self.witness.add(&other.witness)?,
        })
    }

    pub fn sub(&self, other: &FreydMorphism) -> Result<FreydMorphism> {
        self.check_parallel(other)?;
        Ok(FreydMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            rep: self.rep.sub(&other.rep)?,
            witness: self.witness.sub(&other.witness)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> FreydMorphism {
        FreydMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            rep: self.rep.scale(s),
            witness: self.witness.scale(s),
        }
    }

    /// True iff the representative factors through the target's relations.
    pub fn is_zero(&self) -> bool {
        let mu = self.target.presentation();
        let rep = Matrix::column_vector(self.rep.category().field(), self.rep.coords());
        matches!(mu.post_matrix(self.source.r0()).solve(&rep), Ok(Some(_)))
    }

    /// Rank of the induced linear map `source(c) -> target(c)`.
    pub fn rank_at(&self, c: usize) -> usize {
        let at = AddObject::single(c);
        let relations = self.target.presentation().post_matrix(&at);
        let image = self.rep.post_matrix(&at);
        image.hstack(&relations).expect("same height").rank() - relations.rank()
    }

    pub fn is_mono(&self) -> bool {
        (0..self.category().object_count()).all(|c| self.rank_at(c) == self.source.dim_at(c))
    }

    pub fn is_epi(&self) -> bool {
        (0..self.category().object_count()).all(|c| self.rank_at(c) == self.target.dim_at(c))
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }
}

/// `φ = ψ` in `Fin(X)`: the representatives differ by something factoring through the target relations.
pub fn morphism_equal(phi: &FreydMorphism, psi: &FreydMorphism) -> Result<bool> {
    phi.check_parallel(psi)?;
    Ok(phi.sub(psi)?.is_zero())
}

/// A basis of `Hom(q, q')`.
pub fn hom_basis(q: &Arc<FreydObject>, qp: &Arc<FreydObject>) -> Result<Vec<FreydMorphism>> {
    if !same_category(q.category(), qp.category()) {
        return Err(Error::CategoryMismatch("objects of different categories".into()));
    }
    let cat = q.category();
    let field = cat.field();
    let (lambda, mu) = (q.presentation(), qp.presentation());
    // (ε, χ) with ε ∘ λ - μ ∘ χ = 0
    let pre = lambda.pre_matrix(qp.r0());
    let post = mu.post_matrix(q.r1());
    let system = pre.hstack(&post.scale(&field.from_i64(-1)))?;
    let pairs = system.kernel_basis();
    let ne = pre.cols();
    // null-homotopic representatives μ ∘ h
    let null = mu.post_matrix(q.r0());
    let eps_part = pairs.block(0, 0, ne, pairs.cols());
    let joined = null.hstack(&eps_part)?;
    let pivots = joined.rref().pivots;
    let mut basis = Vec::new();
    for p in pivots.into_iter().filter(|&p| p >= null.cols()) {
        let col = pairs.column(p - null.cols());
        let rep = AddMorphism::from_coords(cat.clone(), q.r0().clone(), qp.r0().clone(), &col[..ne])?;
        let witness = AddMorphism::from_coords(cat.clone(), q.r1().clone(), qp.r1().clone(), &col[ne..])?;
        basis.push(FreydMorphism::from_parts(q.clone(), qp.clone(), rep, witness));
    }
    Ok(basis)
}

pub fn hom_dimension(q: &Arc<FreydObject>, qp: &Arc<FreydObject>) -> Result<usize> {
    Ok(hom_basis(q, qp)?.len())
}

/// Some `t: Z -> M` with `m ∘ t = g`, for `g: Z -> Q` and `m: M -> Q`.
pub fn factor_through(g: &FreydMorphism, m: &FreydMorphism) -> Result<Option<FreydMorphism>> {
    if *g.target != *m.target {
        return Err(Error::NotComposable("factorization needs a common target".into()));
    }
    let cat = g.category();
    let field = cat.field();
    let (z, mo, q) = (&g.source, &m.source, &g.target);
    // unknowns ε ∈ Hom(z0, m0), χ ∈ Hom(z1, m1), h ∈ Hom(z0, q1)
    let a11 = m.rep.post_matrix(z.r0());
    let a13 = q.presentation().post_matrix(z.r0()).scale(&field.from_i64(-1));
    let a21 = z.presentation().pre_matrix(mo.r0());
    let a22 = mo.presentation().post_matrix(z.r1()).scale(&field.from_i64(-1));
    let (ne, nc, nh) = (a11.cols(), a22.cols(), a13.cols());
    let z12 = Matrix::zeros(field, a11.rows(), nc);
    let z23 = Matrix::zeros(field, a21.rows(), nh);
    let system = assemble(field, &[vec![&a11, &z12, &a13], vec![&a21, &a22, &z23]]);
    let mut rhs = g.rep.coords();
    rhs.extend(std::iter::repeat_n(field.zero(), a21.rows()));
    let Some(sol) = system.solve(&Matrix::column_vector(field, rhs))? else {
        return Ok(None);
    };
    let sol = sol.column(0);
    let rep = AddMorphism::from_coords(cat.clone(), z.r0().clone(), mo.r0().clone(), &sol[..ne])?;
    let witness = AddMorphism::from_coords(cat.clone(), z.r1().clone(), mo.r1().clone(), &sol[ne..ne + nc])?;
    Ok(Some(FreydMorphism::from_parts(z.clone(), mo.clone(), rep, witness)))
}

/// Some `t: B -> Z` with `t ∘ e = g`, for `g: A -> Z` and `e: A -> B`.
pub fn extend_along(g: &FreydMorphism, e: &FreydMorphism) -> Result<Option<FreydMorphism>> {
    if *g.source != *e.source {
        return Err(Error::NotComposable("extension needs a common source".into()));
    }
    let cat = g.category();
    let field = cat.field();
    let (a, b, z) = (&g.source, &e.target, &g.target);
    // unknowns ε ∈ Hom(b0, z0), χ ∈ Hom(b1, z1), h ∈ Hom(a0, z1)
    let a11 = e.rep.pre_matrix(z.r0());
    let a13 = z.presentation().post_matrix(a.r0()).scale(&field.from_i64(-1));
    let a21 = b.presentation().pre_matrix(z.r0());
    let a22 = z.presentation().post_matrix(b.r1()).scale(&field.from_i64(-1));
    let (ne, nc, nh) = (a11.cols(), a22.cols(), a13.cols());
    let z12 = Matrix::zeros(field, a11.rows(), nc);
    let z23 = Matrix::zeros(field, a21.rows(), nh);
    let system = assemble(field, &[vec![&a11, &z12, &a13], vec![&a21, &a22, &z23]]);
    let mut rhs = g.rep.coords();
    rhs.extend(std::iter::repeat_n(field.zero(), a21.rows()));
    let Some(sol) = system.solve(&Matrix::column_vector(field, rhs))? else {
        return Ok(None);
    };
    let sol = sol.column(0);
    let rep = AddMorphism::from_coords(cat.clone(), b.r0().clone(), z.r0().clone(), &sol[..ne])?;
    let witness = AddMorphism::from_coords(cat.clone(), b.r1().clone(), z.r1().clone(), &sol[ne..ne + nc])?;
    Ok(Some(FreydMorphism::from_parts(b.clone(), z.clone(), rep, witness)))
}

/// Whether `Hom(Z, M) -> Hom(Z, Q)`, `t -> m ∘ t`, is injective.
pub fn postcompose_injective(m: &FreydMorphism, z: &Arc<FreydObject>) -> Result<bool> {
    let basis = hom_basis(z, &m.source)?;
    let images: Vec<Vec<Scalar>> = basis.iter().map(|t| t.rep.then(&m.rep).map(|r| r.coords())).collect::<Result<_>>()?;
    independent_mod(&m.target.presentation().post_matrix(z.r0()), &images)
}

/// Whether `Hom(B, Z) -> Hom(A, Z)`, `t -> t ∘ e`, is injective.
pub fn precompose_injective(e: &FreydMorphism, z: &Arc<FreydObject>) -> Result<bool> {
    let basis = hom_basis(&e.target, z)?;
    let images: Vec<Vec<Scalar>> = basis.iter().map(|t| e.rep.then(&t.rep).map(|r| r.coords())).collect::<Result<_>>()?;
    independent_mod(&z.presentation().post_matrix(e.source.r0()), &images)
}

fn independent_mod(null: &Matrix, vectors: &[Vec<Scalar>]) -> Result<bool> {
    if vectors.is_empty() {
        return Ok(true);
    }
    let v = Matrix::from_columns(null.field(), null.rows(), vectors);
    Ok(null.hstack(&v)?.rank() - null.rank() == vectors.len())
}

/// A two-sided inverse, if one exists.
pub fn inverse(phi: &FreydMorphism) -> Result<Option<FreydMorphism>> {
    let Some(psi) = factor_through(&FreydMorphism::identity(phi.target.clone()), phi)? else {
        return Ok(None);
    };
    let back = phi.then(&psi)?;
    if morphism_equal(&back, &FreydMorphism::identity(phi.source.clone()))? {
        Ok(Some(psi))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn dual() -> (Arc<Algebra>, Arc<PresentedCategory>) {
        let a = Arc::new(Algebra::truncated_poly(Q, 2));
        (a.clone(), Arc::new(PresentedCategory::sigma_algebra(a)))
    }

    fn endo(cat: &Arc<PresentedCategory>, x: Vec<Scalar>) -> AddMorphism {
        AddMorphism::new(cat.clone(), AddObject::single(0), AddObject::single(0), vec![x]).unwrap()
    }

    /// `coker(x·)` over `k[x]/x²`, which is the simple module `k`.
    fn simple(a: &Algebra, cat: &Arc<PresentedCategory>) -> Arc<FreydObject> {
        Arc::new(FreydObject::new(endo(cat, a.basis_element(1))))
    }

    #[test]
    fn dimensions_of_simple_and_representable() {
        let (a, cat) = dual();
        assert_eq!(simple(&a, &cat).dims(), vec![1]);
        assert_eq!(FreydObject::representable(cat.clone(), 0).dims(), vec![2]);
        assert!(FreydObject::new(endo(&cat, a.unit().to_vec())).is_zero());
    }

    #[test]
    fn hom_dimensions_over_dual_numbers() {
        let (a, cat) = dual();
        let y = Arc::new(FreydObject::representable(cat.clone(), 0));
        let s = simple(&a, &cat);
        // End(A) = A, Hom(A, k) = k, Hom(k, A) = soc A = k, End(k) = k
        assert_eq!(hom_dimension(&y, &y).unwrap(), 2);
        assert_eq!(hom_dimension(&y, &s).unwrap(), 1);
        assert_eq!(hom_dimension(&s, &y).unwrap(), 1);
        assert_eq!(hom_dimension(&s, &s).unwrap(), 1);
    }

    #[test]
    fn invalid_representative_rejected() {
        let (a, cat) = dual();
        let s = simple(&a, &cat);
        let y = Arc::new(FreydObject::representable(cat.clone(), 0));
        // the identity on generators does not send x to zero
        let r = FreydMorphism::new(s, y, AddMorphism::identity(cat.clone(), AddObject::single(0)));
        assert!(matches!(r, Err(Error::InvalidMorphism(_))));
    }

    #[test]
    fn equality_modulo_relations() {
        let (a, cat) = dual();
        let s = simple(&a, &cat);
        let y = Arc::new(FreydObject::representable(cat.clone(), 0));
        let p = FreydMorphism::new(y.clone(), s.clone(), AddMorphism::identity(cat.clone(), AddObject::single(0))).unwrap();
        let shifted = FreydMorphism::new(y.clone(), s.clone(), endo(&cat, vec![Q.one(), Q.from_i64(5)])).unwrap();
        assert!(morphism_equal(&p, &shifted).unwrap());
        assert!(!morphism_equal(&p, &FreydMorphism::zero(y, s)).unwrap());
        assert!(p.is_epi() && !p.is_mono());
    }

    #[test]
    fn factorizations_and_inverses() {
        let (a, cat) = dual();
        let y = Arc::new(FreydObject::representable(cat.clone(), 0));
        let s = simple(&a, &cat);
        let p = FreydMorphism::new(y.clone(), s.clone(), AddMorphism::identity(cat.clone(), AddObject::single(0))).unwrap();
        let x = FreydMorphism::new(y.clone(), y.clone(), endo(&cat, a.basis_element(1))).unwrap();
        // x ∘ x = 0, so x extends along the projection onto k
        let t = extend_along(&x, &p).unwrap().unwrap();
        assert!(morphism_equal(&p.then(&t).unwrap(), &x).unwrap());
        // the identity does not factor through x
        assert!(factor_through(&FreydMorphism::identity(y.clone()), &x).unwrap().is_none());
        let u = FreydMorphism::new(y.clone(), y.clone(), endo(&cat, vec![Q.from_i64(2), Q.one()])).unwrap();
        let inv = inverse(&u).unwrap().unwrap();
        assert!(morphism_equal(&inv.then(&u).unwrap(), &FreydMorphism::identity(y.clone())).unwrap());
        assert!(inverse(&x).unwrap().is_none());
        assert!(precompose_injective(&p, &s).unwrap());
        assert!(!postcompose_injective(&x, &y).unwrap());
    }

    #[test]
    fn pruning_keeps_the_object() {
        let (a, cat) = dual();
        let two = AddObject::new(vec![0, 0]);
        let x = a.basis_element(1);
        let rho = AddMorphism::new(cat.clone(), two, AddObject::single(0), vec![x.clone(), x]).unwrap();
        let q = Arc::new(FreydObject::new(rho));
        let pruned = Arc::new(q.prune_relations());
        assert_eq!(pruned.r1().len(), 1);
        let id = FreydMorphism::new(q, pruned, AddMorphism::identity(cat, AddObject::single(0))).unwrap();
        assert!(id.is_iso());
    }

    #[test]
    fn json_round_trip() {
        let (a, cat) = dual();
        let s = simple(&a, &cat);
        let repr = s.to_repr("D");
        let back = FreydObject::from_repr(cat, &serde_json::from_str(&serde_json::to_string(&repr).unwrap()).unwrap()).unwrap();
        assert_eq!(back, *s);
    }
}
