use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::weak_kernel::{DiscreteWeakKernels, HomFiniteWeakKernels, SigmaWeakKernels, WeakKernelOracle};
use crate::algebra::{tensor_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{vector, FieldSpec, Matrix, Scalar};

/// What is known about a presented category beyond its tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryShape {
    General,
    /// One object whose endomorphisms are the algebra, with `g ∘ f = f g`
    /// so that presheaves are left modules.
    SigmaAlgebra(Arc<Algebra>),
    /// Every endomorphism space is `k` and there are no other morphisms.
    Discrete,
}

/// A finite k-linear category with finite-dimensional hom spaces.
///
/// Composition is stored per object triple `(a, b, c)` as a
/// `dim X(a,c) x (dim X(b,c) * dim X(a,b))` matrix whose column
/// `q * dim X(a,b) + p` holds `e_q ∘ e_p`.
#[derive(Clone)]
pub struct PresentedCategory {
    field: FieldSpec,
    objects: Vec<String>,
    hom_dims: Vec<Vec<usize>>,
    hom_names: Vec<Vec<Vec<String>>>,
    compose: Vec<Matrix>,
    identities: Vec<Vec<Scalar>>,
    shape: CategoryShape,
    factors: Option<(Arc<PresentedCategory>, Arc<PresentedCategory>)>,
    weak_kernels: Option<Arc<dyn WeakKernelOracle>>,
}

impl fmt::Debug for PresentedCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedCategory")
            .field("field", &self.field)
            .field("objects", &self.objects)
            .field("hom_dims", &self.hom_dims)
            .field("shape", &self.shape)
            .field("weak_kernels", &self.weak_kernels.as_ref().map(|o| o.name()))
            .finish()
    }
}

impl PartialEq for PresentedCategory {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.objects == other.objects
            && self.hom_dims == other.hom_dims
            && self.compose == other.compose
            && self.identities == other.identities
    }
}

impl Eq for PresentedCategory {}

impl PresentedCategory {
    /// A category from explicit tables; `compose[(a * n + b) * n + c]` is the
    /// composition matrix for the triple `(a, b, c)`. Associativity and unit
    /// laws are checked on all basis elements.
    pub fn new(
        field: FieldSpec,
        objects: Vec<String>,
        hom_names: Vec<Vec<Vec<String>>>,
        compose: Vec<Matrix>,
        identities: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = objects.len();
        if hom_names.len() != n || hom_names.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCategory(format!("hom table must be {n}x{n}")));
        }
        let hom_dims: Vec<Vec<usize>> = hom_names.iter().map(|r| r.iter().map(Vec::len).collect()).collect();
        if compose.len() != n * n * n {
            return Err(Error::InvalidCategory(format!("expected {} composition tables", n * n * n)));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let m = &compose[(a * n + b) * n + c];
                    let shape = (hom_dims[a][c], hom_dims[b][c] * hom_dims[a][b]);
                    if (m.rows(), m.cols()) != shape || m.field() != field {
                        return Err(Error::InvalidCategory(format!(
                            "composition table ({}, {}, {}) must be {}x{} over {field}",
                            objects[a], objects[b], objects[c], shape.0, shape.1
                        )));
                    }
                }
            }
        }
        if identities.len() != n || identities.iter().enumerate().any(|(a, v)| v.len() != hom_dims[a][a]) {
            return Err(Error::InvalidCategory("identity has the wrong length".into()));
        }
        let cat = PresentedCategory {
            field,
            objects,
            hom_dims,
            hom_names,
            compose,
            identities,
            shape: CategoryShape::General,
            factors: None,
            weak_kernels: None,
        };
        cat.validate()?;
        Ok(cat)
    }

    /// Associativity and unit laws on basis elements.
    pub fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                for p in 0..self.hom_dims[a][b] {
                    let f = vector::unit(self.field, self.hom_dims[a][b], p);
                    if self.compose(a, b, b, &self.identities[b], &f) != f
                        || self.compose(a, a, b, &f, &self.identities[a]) != f
                    {
                        return Err(Error::InvalidCategory(format!(
                            "unit law fails on a morphism {} -> {}",
                            self.objects[a], self.objects[b]
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (dab, dbc, dcd) = (self.hom_dims[a][b], self.hom_dims[b][c], self.hom_dims[c][d]);
                        for p in 0..dab {
                            let f = vector::unit(self.field, dab, p);
                            for q in 0..dbc {
                                let g = vector::unit(self.field, dbc, q);
                                let gf = self.compose(a, b, c, &g, &f);
                                for r in 0..dcd {
                                    let h = vector::unit(self.field, dcd, r);
                                    let lhs = self.compose(a, c, d, &h, &gf);
                                    let rhs = self.compose(a, b, d, &self.compose(b, c, d, &h, &g), &f);
                                    if lhs != rhs {
                                        return Err(Error::InvalidCategory(format!(
                                            "composition is not associative on {} -> {} -> {} -> {}",
                                            self.objects[a], self.objects[b], self.objects[c], self.objects[d]
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `ΣA`: one object `*` with `X(*,*) = A` and `g ∘ f = f g`, equipped with
    /// the algebra weak-kernel oracle.
    pub fn sigma_algebra(algebra: Arc<Algebra>) -> Self {
        let field = algebra.field();
        let d = algebra.dim();
        // column q * d + p is e_q ∘ e_p = e_p e_q
        let mut table = Matrix::zeros(field, d, d * d);
        for q in 0..d {
            for p in 0..d {
                let prod = algebra.structure_constants(p, q);
                for (r, v) in prod.into_iter().enumerate() {
                    table.set(r, q * d + p, v);
                }
            }
        }
        PresentedCategory {
            field,
            objects: vec!["*".to_string()],
            hom_dims: vec![vec![d]],
            hom_names: vec![vec![algebra.basis_names().to_vec()]],
            compose: vec![table],
            identities: vec![algebra.unit().to_vec()],
            shape: CategoryShape::SigmaAlgebra(algebra.clone()),
            factors: None,
            weak_kernels: Some(Arc::new(SigmaWeakKernels::new(algebra))),
        }
    }

    /// Objects with `X(a,a) = k` and `X(a,b) = 0` otherwise.
    pub fn discrete(field: FieldSpec, labels: Vec<String>) -> Self {
        let n = labels.len();
        let mut hom_dims = vec![vec![0; n]; n];
        let mut hom_names = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            hom_dims[a][a] = 1;
            hom_names[a][a] = vec![format!("id_{}", labels[a])];
        }
        let compose = (0..n * n * n)
            .map(|i| {
                let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
                if a == b && b == c {
                    Matrix::identity(field, 1)
                } else {
                    Matrix::zeros(field, hom_dims[a][c], hom_dims[b][c] * hom_dims[a][b])
                }
            })
            .collect();
        PresentedCategory {
            field,
            objects: labels,
            hom_dims,
            hom_names,
            compose,
            identities: vec![vec![field.one()]; n],
            shape: CategoryShape::Discrete,
            factors: None,
            weak_kernels: Some(Arc::new(DiscreteWeakKernels)),
        }
    }

    /// The unit k-linear category: one object with endomorphisms `k`.
    pub fn unit(field: FieldSpec) -> Self {
        Self::discrete(field, vec!["1".to_string()])
    }

    pub fn with_weak_kernels(mut self, oracle: Arc<dyn WeakKernelOracle>) -> Self {
        self.weak_kernels = Some(oracle);
        self
    }

    /// Attaches the generic hom-finite weak-kernel construction.
    pub fn with_hom_finite_weak_kernels(self) -> Self {
        self.with_weak_kernels(Arc::new(HomFiniteWeakKernels))
    }

    pub fn without_weak_kernels(mut self) -> Self {
        self.weak_kernels = None;
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom_dims[a][b]
    }

    pub fn hom_names(&self, a: usize, b: usize) -> &[String] {
        &self.hom_names[a][b]
    }

    pub fn identity(&self, a: usize) -> &[Scalar] {
        &self.identities[a]
    }

    pub fn shape(&self) -> &CategoryShape {
        &self.shape
    }

    pub fn factors(&self) -> Option<&(Arc<PresentedCategory>, Arc<PresentedCategory>)> {
        self.factors.as_ref()
    }

    pub fn weak_kernel_oracle(&self) -> Option<&Arc<dyn WeakKernelOracle>> {
        self.weak_kernels.as_ref()
    }

    pub fn sigma_algebra_of(&self) -> Option<&Arc<Algebra>> {
        match &self.shape {
            CategoryShape::SigmaAlgebra(a) => Some(a),
            _ => None,
        }
    }

    /// The endomorphism algebra when this is `ΣA` or the unit category.
    fn one_object_algebra(&self) -> Option<Arc<Algebra>> {
        match &self.shape {
            CategoryShape::SigmaAlgebra(a) => Some(a.clone()),
            CategoryShape::Discrete if self.object_count() == 1 => Some(Arc::new(Algebra::ground(self.field))),
            _ => None,
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.shape == CategoryShape::Discrete
    }

    pub fn composition_table(&self, a: usize, b: usize, c: usize) -> &Matrix {
        let n = self.objects.len();
        &self.compose[(a * n + b) * n + c]
    }

    /// `g ∘ f` for `f ∈ X(a,b)`, `g ∈ X(b,c)`.
    pub fn compose(&self, a: usize, b: usize, c: usize, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let table = self.composition_table(a, b, c);
        let dab = self.hom_dims[a][b];
        let mut out = vector::zero(self.field, self.hom_dims[a][c]);
        for (q, gq) in g.iter().enumerate() {
            if gq.is_zero() {
                continue;
            }
            for (p, fp) in f.iter().enumerate() {
                if fp.is_zero() {
                    continue;
                }
                let coeff = gq * fp;
                for r in 0..out.len() {
                    let t = table.get(r, q * dab + p);
                    if !t.is_zero() {
                        out[r] = &out[r] + &(&coeff * t);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `X(a,b) -> X(a,c)`, `f -> g ∘ f` for fixed `g ∈ X(b,c)`.
    pub fn post_composition(&self, a: usize, b: usize, c: usize, g: &[Scalar]) -> Matrix {
        let table = self.composition_table(a, b, c);
        let dab = self.hom_dims[a][b];
        let mut m = Matrix::zeros(self.field, self.hom_dims[a][c], dab);
        for (q, gq) in g.iter().enumerate() {
            if gq.is_zero() {
                continue;
            }
            for p in 0..dab {
                for r in 0..m.rows() {
                    let t = table.get(r, q * dab + p);
                    if !t.is_zero() {
                        let v = m.get(r, p) + &(gq * t);
                        m.set(r, p, v);
                    }
                }
            }
        }
        m
    }

    /// Matrix of `X(b,c) -> X(a,c)`, `g -> g ∘ f` for fixed `f ∈ X(a,b)`.
    pub fn pre_composition(&self, a: usize, b: usize, c: usize, f: &[Scalar]) -> Matrix {
        let table = self.composition_table(a, b, c);
        let (dab, dbc) = (self.hom_dims[a][b], self.hom_dims[b][c]);
        let mut m = Matrix::zeros(self.field, self.hom_dims[a][c], dbc);
        for (p, fp) in f.iter().enumerate() {
            if fp.is_zero() {
                continue;
            }
            for q in 0..dbc {
                for r in 0..m.rows() {
                    let t = table.get(r, q * dab + p);
                    if !t.is_zero() {
                        let v = m.get(r, q) + &(fp * t);
                        m.set(r, q, v);
                    }
                }
            }
        }
        m
    }
}

pub fn same_category(a: &Arc<PresentedCategory>, b: &Arc<PresentedCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `X ⊗ Y`: objects are pairs `(a, b)` indexed `a * |Y| + b`, homs
/// `X(a,a') ⊗ Y(b,b')` with basis `p * dim Y(b,b') + q`, composition by interchange.
pub fn tensor_presented(x: &Arc<PresentedCategory>, y: &Arc<PresentedCategory>) -> Result<PresentedCategory> {
    if x.field != y.field {
        return Err(Error::FieldMismatch(x.field, y.field));
    }
    let field = x.field;
    let (nx, ny) = (x.object_count(), y.object_count());
    let n = nx * ny;
    let split = |i: usize| (i / ny, i % ny);
    let objects = (0..n).map(|i| {
        let (a, b) = split(i);
        format!("({},{})", x.objects[a], y.objects[b])
    }).collect();
    let mut hom_dims = vec![vec![0; n]; n];
    let mut hom_names = vec![vec![Vec::new(); n]; n];
    for s in 0..n {
        for t in 0..n {
            let ((a, b), (a2, b2)) = (split(s), split(t));
            hom_dims[s][t] = x.hom_dims[a][a2] * y.hom_dims[b][b2];
            hom_names[s][t] = x.hom_names[a][a2]
                .iter()
                .flat_map(|f| y.hom_names[b][b2].iter().map(move |g| format!("{f}⊗{g}")))
                .collect();
        }
    }
    let mut compose = Vec::with_capacity(n * n * n);
    for s in 0..n {
        for t in 0..n {
            for u in 0..n {
                let ((a, b), (a2, b2), (a3, b3)) = (split(s), split(t), split(u));
                let tx = x.composition_table(a, a2, a3);
                let ty = y.composition_table(b, b2, b3);
                let (dx_st, dy_st) = (x.hom_dims[a][a2], y.hom_dims[b][b2]);
                let (dx_tu, dy_tu) = (x.hom_dims[a2][a3], y.hom_dims[b2][b3]);
                let (dx_su, dy_su) = (x.hom_dims[a][a3], y.hom_dims[b][b3]);
                let d_st = dx_st * dy_st;
                let mut m = Matrix::zeros(field, dx_su * dy_su, dx_tu * dy_tu * d_st);
                for qx in 0..dx_tu {
                    for qy in 0..dy_tu {
                        for px in 0..dx_st {
                            for py in 0..dy_st {
                                let col = (qx * dy_tu + qy) * d_st + px * dy_st + py;
                                let cx = qx * dx_st + px;
                                let cy = qy * dy_st + py;
                                for rx in 0..dx_su {
                                    let vx = tx.get(rx, cx);
                                    if vx.is_zero() {
                                        continue;
                                    }
                                    for ry in 0..dy_su {
                                        let vy = ty.get(ry, cy);
                                        if !vy.is_zero() {
                                            m.set(rx * dy_su + ry, col, vx * vy);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                compose.push(m);
            }
        }
    }
    let identities = (0..n)
        .map(|s| {
            let (a, b) = split(s);
            Matrix::column_vector(field, x.identities[a].clone())
                .kronecker(&Matrix::column_vector(field, y.identities[b].clone()))
                .expect("same field")
                .column(0)
        })
        .collect();
    let shape = match (&x.shape, &y.shape, x.one_object_algebra(), y.one_object_algebra()) {
        (CategoryShape::Discrete, CategoryShape::Discrete, _, _) => CategoryShape::Discrete,
        (_, _, Some(a), Some(b)) => CategoryShape::SigmaAlgebra(Arc::new(tensor_algebra(&a, &b)?)),
        _ => CategoryShape::General,
    };
    let weak_kernels: Option<Arc<dyn WeakKernelOracle>> = match (&x.weak_kernels, &y.weak_kernels, &shape) {
        (Some(_), Some(_), CategoryShape::SigmaAlgebra(t)) => Some(Arc::new(SigmaWeakKernels::new(t.clone()))),
        (Some(_), Some(_), CategoryShape::Discrete) => Some(Arc::new(DiscreteWeakKernels)),
        (Some(_), Some(_), CategoryShape::General) => Some(Arc::new(HomFiniteWeakKernels)),
        _ => None,
    };
    Ok(PresentedCategory {
        field,
        objects,
        hom_dims,
        hom_names,
        compose,
        identities,
        shape,
        factors: Some((x.clone(), y.clone())),
        weak_kernels,
    })
}

/// Explicit-table JSON form.
#[derive(Serialize, Deserialize)]
pub struct CategoryRepr {
    pub field: FieldSpec,
    pub objects: Vec<String>,
    pub homs: HomsRepr,
    /// One entry per object triple with a nonzero table.
    pub compose: Vec<ComposeRepr>,
    /// Keyed by object label.
    pub identities: std::collections::BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub weak_kernels: bool,
}

#[derive(Serialize, Deserialize)]
pub struct HomsRepr {
    pub dims: Vec<Vec<usize>>,
    #[serde(default)]
    pub basis: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Serialize, Deserialize)]
pub struct ComposeRepr {
    pub triple: [String; 3],
    /// `products[q][p]` = coordinates of `e_q ∘ e_p`.
    pub products: Vec<Vec<Vec<String>>>,
}

impl PresentedCategory {
    pub fn to_repr(&self) -> CategoryRepr {
        let n = self.object_count();
        let mut compose = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = self.composition_table(a, b, c);
                    if t.cols() == 0 || t.rows() == 0 {
                        continue;
                    }
                    let dab = self.hom_dims[a][b];
                    let products = (0..self.hom_dims[b][c])
                        .map(|q| (0..dab).map(|p| t.column(q * dab + p).iter().map(ToString::to_string).collect()).collect())
                        .collect();
                    compose.push(ComposeRepr {
                        triple: [self.objects[a].clone(), self.objects[b].clone(), self.objects[c].clone()],
                        products,
                    });
                }
            }
        }
        CategoryRepr {
            field: self.field,
            objects: self.objects.clone(),
            homs: HomsRepr { dims: self.hom_dims.clone(), basis: Some(self.hom_names.clone()) },
            compose,
            identities: self
                .objects
                .iter()
                .zip(&self.identities)
                .map(|(o, v)| (o.clone(), v.iter().map(ToString::to_string).collect()))
                .collect(),
            weak_kernels: self.weak_kernels.is_some(),
        }
    }

    pub fn from_repr(repr: &CategoryRepr) -> Result<Self> {
        let field = repr.field;
        let n = repr.objects.len();
        let index = |label: &str| {
            repr.objects
                .iter()
                .position(|o| o == label)
                .ok_or_else(|| Error::InvalidCategory(format!("unknown object {label:?}")))
        };
        if repr.homs.dims.len() != n || repr.homs.dims.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCategory(format!("hom dims must be {n}x{n}")));
        }
        let hom_names = match &repr.homs.basis {
            Some(b) => b.clone(),
            None => (0..n)
                .map(|a| (0..n).map(|b| (0..repr.homs.dims[a][b]).map(|i| format!("f{}_{}{}", i, a, b)).collect()).collect())
                .collect(),
        };
        let dims = &repr.homs.dims;
        let mut compose: Vec<Matrix> = (0..n * n * n)
            .map(|i| {
                let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
                Matrix::zeros(field, dims[a][c], dims[b][c] * dims[a][b])
            })
            .collect();
        for entry in &repr.compose {
            let (a, b, c) = (index(&entry.triple[0])?, index(&entry.triple[1])?, index(&entry.triple[2])?);
            let dab = dims[a][b];
            let table = &mut compose[(a * n + b) * n + c];
            if entry.products.len() != dims[b][c] || entry.products.iter().any(|r| r.len() != dab) {
                return Err(Error::InvalidCategory(format!("products for {:?} have the wrong shape", entry.triple)));
            }
            for (q, row) in entry.products.iter().enumerate() {
                for (p, coords) in row.iter().enumerate() {
                    if coords.len() != dims[a][c] {
                        return Err(Error::InvalidCategory(format!("product in {:?} has the wrong length", entry.triple)));
                    }
                    for (r, s) in coords.iter().enumerate() {
                        table.set(r, q * dab + p, field.parse_scalar(s)?);
                    }
                }
            }
        }
        let identities = repr
            .objects
            .iter()
            .map(|o| {
                let v = repr
                    .identities
                    .get(o)
                    .ok_or_else(|| Error::InvalidCategory(format!("missing identity for {o:?}")))?;
                v.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let cat = PresentedCategory::new(field, repr.objects.clone(), hom_names, compose, identities)?;
        Ok(if repr.weak_kernels { cat.with_hom_finite_weak_kernels() } else { cat })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn same_tables(a: &PresentedCategory, b: &PresentedCategory) -> bool {
        a.hom_dims == b.hom_dims && a.compose == b.compose && a.identities == b.identities
    }

    #[test]
    fn built_in_categories_are_valid() {
        PresentedCategory::sigma_algebra(Arc::new(Algebra::upper_triangular(Q, 2))).validate().unwrap();
        PresentedCategory::discrete(Q, vec!["a".into(), "b".into(), "c".into()]).validate().unwrap();
    }

    #[test]
    fn sigma_tensor_sigma_is_sigma_of_tensor() {
        let a = Arc::new(Algebra::truncated_poly(Q, 2));
        let b = Arc::new(Algebra::upper_triangular(Q, 2));
        let xa = Arc::new(PresentedCategory::sigma_algebra(a.clone()));
        let xb = Arc::new(PresentedCategory::sigma_algebra(b.clone()));
        let t = tensor_presented(&xa, &xb).unwrap();
        t.validate().unwrap();
        let direct = PresentedCategory::sigma_algebra(Arc::new(tensor_algebra(&a, &b).unwrap()));
        assert!(same_tables(&t, &direct));
        assert_eq!(t.sigma_algebra_of().map(|x| x.dim()), Some(6));
        assert!(t.weak_kernel_oracle().is_some());
    }

    #[test]
    fn tensor_with_unit_category() {
        let x = Arc::new(PresentedCategory::sigma_algebra(Arc::new(Algebra::matrix_algebra(Q, 2))));
        let u = Arc::new(PresentedCategory::unit(Q));
        let t = tensor_presented(&x, &u).unwrap();
        assert!(same_tables(&t, &x));
    }

    #[test]
    fn discrete_squared_is_discrete_on_pairs() {
        let d = Arc::new(PresentedCategory::discrete(Q, vec!["a".into(), "b".into()]));
        let t = tensor_presented(&d, &d).unwrap();
        assert!(t.is_discrete());
        assert_eq!(t.objects(), &["(a,a)", "(a,b)", "(b,a)", "(b,b)"]);
        let direct = PresentedCategory::discrete(Q, t.objects().to_vec());
        assert!(same_tables(&t, &direct));
    }

    #[test]
    fn json_round_trip() {
        let x = PresentedCategory::sigma_algebra(Arc::new(Algebra::truncated_poly(Q, 2)));
        let repr = x.to_repr();
        let json = serde_json::to_string(&repr).unwrap();
        let back = PresentedCategory::from_repr(&serde_json::from_str(&json).unwrap()).unwrap();
        assert!(same_tables(&x, &back));
        assert!(back.weak_kernel_oracle().is_some());
    }

    #[test]
    fn broken_identity_rejected() {
        let x = PresentedCategory::sigma_algebra(Arc::new(Algebra::truncated_poly(Q, 2)));
        let mut repr = x.to_repr();
        repr.identities.insert("*".into(), vec!["0".into(), "1".into()]);
        assert!(matches!(PresentedCategory::from_repr(&repr), Err(Error::InvalidCategory(_))));
    }
}
