use std::sync::Arc;

use super::category::{same_category, PresentedCategory};
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Scalar};

/// A formal direct sum of objects, listed by index. The empty sum is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AddObject {
    summands: Vec<usize>,
}

impl AddObject {
    pub fn new(summands: Vec<usize>) -> Self {
        AddObject { summands }
    }

    pub fn zero() -> Self {
        AddObject { summands: Vec::new() }
    }

    pub fn single(a: usize) -> Self {
        AddObject { summands: vec![a] }
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn concat(&self, other: &AddObject) -> AddObject {
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        AddObject { summands }
    }

    /// Pairs `(a, b)` as objects of `X ⊗ Y`, `a`-major.
    pub fn tensor(&self, other: &AddObject, y_objects: usize) -> AddObject {
        let summands = self
            .summands
            .iter()
            .flat_map(|&a| other.summands.iter().map(move |&b| a * y_objects + b))
            .collect();
        AddObject { summands }
    }
}

/// Dimension of `Hom(s, t)` in the additive closure.
pub fn hom_dim(cat: &PresentedCategory, s: &AddObject, t: &AddObject) -> usize {
    s.summands.iter().map(|&a| t.summands.iter().map(|&b| cat.hom_dim(a, b)).sum::<usize>()).sum()
}

/// Offsets of each block `(i, j)` in the flattened coordinates of `Hom(s, t)`.
fn offsets(cat: &PresentedCategory, s: &AddObject, t: &AddObject) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.len() * t.len());
    let mut acc = 0;
    for &a in &s.summands {
        for &b in &t.summands {
            out.push(acc);
            acc += cat.hom_dim(a, b);
        }
    }
    out
}

/// A matrix of morphisms; block `(i, j)` lies in `X(source_i, target_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddMorphism {
    category: Arc<PresentedCategory>,
    source: AddObject,
    target: AddObject,
    blocks: Vec<Vec<Scalar>>,
}

impl AddMorphism {
    pub fn new(category: Arc<PresentedCategory>, source: AddObject, target: AddObject, blocks: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = category.object_count();
        if let Some(&bad) = source.summands.iter().chain(&target.summands).find(|&&a| a >= n) {
            return Err(Error::InvalidMorphism(format!("object index {bad} out of range")));
        }
        if blocks.len() != source.len() * target.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} blocks for a {}x{} morphism",
                blocks.len(),
                source.len(),
                target.len()
            )));
        }
        let tl = target.len();
        for (i, &a) in source.summands.iter().enumerate() {
            for (j, &b) in target.summands.iter().enumerate() {
                let blk = &blocks[i * tl + j];
                if blk.len() != category.hom_dim(a, b) {
                    return Err(Error::InvalidMorphism(format!(
                        "block ({i}, {j}) has length {}, expected {}",
                        blk.len(),
                        category.hom_dim(a, b)
                    )));
                }
                if let Some(s) = blk.iter().find(|s| s.field() != category.field()) {
                    return Err(Error::FieldMismatch(category.field(), s.field()));
                }
            }
        }
        Ok(AddMorphism { category, source, target, blocks })
    }

    pub fn zero(category: Arc<PresentedCategory>, source: AddObject, target: AddObject) -> Self {
        let field = category.field();
        let blocks = source
            .summands
            .iter()
            .flat_map(|&a| target.summands.iter().map(move |&b| (a, b)))
            .map(|(a, b)| vector::zero(field, category.hom_dim(a, b)))
            .collect();
        AddMorphism { category, source, target, blocks }
    }

    pub fn identity(category: Arc<PresentedCategory>, object: AddObject) -> Self {
        let mut m = Self::zero(category, object.clone(), object);
        let n = m.source.len();
        for i in 0..n {
            m.blocks[i * n + i] = m.category.identity(m.source.summands[i]).to_vec();
        }
        m
    }

    /// From flattened coordinates in `Hom(source, target)`.
    pub fn from_coords(category: Arc<PresentedCategory>, source: AddObject, target: AddObject, coords: &[Scalar]) -> Result<Self> {
        let expected = hom_dim(&category, &source, &target);
        if coords.len() != expected {
            return Err(Error::DimensionMismatch(format!("{} coordinates, expected {expected}", coords.len())));
        }
        let mut blocks = Vec::with_capacity(source.len() * target.len());
        let mut at = 0;
        for &a in &source.summands {
            for &b in &target.summands {
                let d = category.hom_dim(a, b);
                blocks.push(coords[at..at + d].to_vec());
                at += d;
            }
        }
        Ok(AddMorphism { category, source, target, blocks })
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.blocks.iter().flatten().cloned().collect()
    }

    pub fn category(&self) -> &Arc<PresentedCategory> {
        &self.category
    }

    pub fn source(&self) -> &AddObject {
        &self.source
    }

    pub fn target(&self) -> &AddObject {
        &self.target
    }

    pub fn block(&self, i: usize, j: usize) -> &[Scalar] {
        &self.blocks[i * self.target.len() + j]
    }

    pub fn blocks(&self) -> &[Vec<Scalar>] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| vector::is_zero(b))
    }

    fn check_category(&self, other: &AddMorphism) -> Result<()> {
        if same_category(&self.category, &other.category) {
            Ok(())
        } else {
            Err(Error::CategoryMismatch("morphisms live in different categories".into()))
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AddMorphism) -> Result<AddMorphism> {
        self.check_category(other)?;
        if self.target != other.source {
            return Err(Error::NotComposable(format!(
                "target has summands {:?}, next source has {:?}",
                self.target.summands, other.source.summands
            )));
        }
        let cat = &self.category;
        let (s, t, u) = (&self.source, &self.target, &other.target);
        let mut blocks = Vec::with_capacity(s.len() * u.len());
        for (i, &a) in s.summands.iter().enumerate() {
            for (k, &c) in u.summands.iter().enumerate() {
                let mut acc = vector::zero(cat.field(), cat.hom_dim(a, c));
                for (j, &b) in t.summands.iter().enumerate() {
                    let f = self.block(i, j);
                    let g = other.block(j, k);
                    if vector::is_zero(f) || vector::is_zero(g) {
                        continue;
                    }
                    acc = vector::add(&acc, &cat.compose(a, b, c, g, f));
                }
                blocks.push(acc);
            }
        }
        Ok(AddMorphism { category: cat.clone(), source: s.clone(), target: u.clone(), blocks })
    }

    fn zip_with(&self, other: &AddMorphism, op: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>) -> Result<AddMorphism> {
        self.check_category(other)?;
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("morphisms are not parallel".into()));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| op(a, b)).collect();
        Ok(AddMorphism { category: self.category.clone(), source: self.source.clone(), target: self.target.clone(), blocks })
    }

    pub fn add(&self, other: &AddMorphism) -> Result<AddMorphism> {
        self.zip_with(other, vector::add)
    }

    pub fn sub(&self, other: &AddMorphism) -> Result<AddMorphism> {
        self.zip_with(other, vector::sub)
    }

    pub fn scale(&self, s: &Scalar) -> AddMorphism {
        let blocks = self.blocks.iter().map(|b| vector::scale(b, s)).collect();
        AddMorphism { category: self.category.clone(), source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn neg(&self) -> AddMorphism {
        self.scale(&self.category.field().from_i64(-1))
    }

    /// `(self | other) : source ⊕ other.source -> target`.
    pub fn hstack(&self, other: &AddMorphism) -> Result<AddMorphism> {
        self.check_category(other)?;
        if self.target != other.target {
            return Err(Error::DimensionMismatch("hstack needs a common target".into()));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Ok(AddMorphism {
            category: self.category.clone(),
            source: self.source.concat(&other.source),
            target: self.target.clone(),
            blocks,
        })
    }

    /// `(self; other) : source -> target ⊕ other.target`.
    pub fn vstack(&self, other: &AddMorphism) -> Result<AddMorphism> {
        self.check_category(other)?;
        if self.source != other.source {
            return Err(Error::DimensionMismatch("vstack needs a common source".into()));
        }
        let (tl, ol) = (self.target.len(), other.target.len());
        let mut blocks = Vec::with_capacity(self.source.len() * (tl + ol));
        for i in 0..self.source.len() {
            blocks.extend(self.blocks[i * tl..(i + 1) * tl].iter().cloned());
            blocks.extend(other.blocks[i * ol..(i + 1) * ol].iter().cloned());
        }
        Ok(AddMorphism {
            category: self.category.clone(),
            source: self.source.clone(),
            target: self.target.concat(&other.target),
            blocks,
        })
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &AddMorphism) -> Result<AddMorphism> {
        self.check_category(other)?;
        let cat = &self.category;
        let top = self.vstack(&AddMorphism::zero(cat.clone(), self.source.clone(), other.target.clone()))?;
        let bottom = AddMorphism::zero(cat.clone(), other.source.clone(), self.target.clone()).vstack(other)?;
        top.hstack(&bottom)
    }

    /// Matrix of `Hom(d, target) -> Hom(d, other.target)`, `h -> other ∘ h` where `self` is `other`.
    pub fn post_matrix(&self, d: &AddObject) -> Matrix {
        let cat = &self.category;
        let (t, u) = (&self.source, &self.target);
        let row_off = offsets(cat, d, u);
        let col_off = offsets(cat, d, t);
        let mut m = Matrix::zeros(cat.field(), hom_dim(cat, d, u), hom_dim(cat, d, t));
        for (i, &a) in d.summands.iter().enumerate() {
            for (j, &b) in t.summands.iter().enumerate() {
                for (k, &c) in u.summands.iter().enumerate() {
                    let g = self.block(j, k);
                    if vector::is_zero(g) {
                        continue;
                    }
                    let blk = cat.post_composition(a, b, c, g);
                    m.set_block(row_off[i * u.len() + k], col_off[i * t.len() + j], &blk);
                }
            }
        }
        m
    }

    /// Matrix of `Hom(target, e) -> Hom(source, e)`, `h -> h ∘ self`.
    pub fn pre_matrix(&self, e: &AddObject) -> Matrix {
        let cat = &self.category;
        let (s, t) = (&self.source, &self.target);
        let row_off = offsets(cat, s, e);
        let col_off = offsets(cat, t, e);
        let mut m = Matrix::zeros(cat.field(), hom_dim(cat, s, e), hom_dim(cat, t, e));
        for (i, &a) in s.summands.iter().enumerate() {
            for (j, &b) in t.summands.iter().enumerate() {
                let f = self.block(i, j);
                if vector::is_zero(f) {
                    continue;
                }
                for (l, &c) in e.summands.iter().enumerate() {
                    let blk = cat.pre_composition(a, b, c, f);
                    m.set_block(row_off[i * e.len() + l], col_off[j * e.len() + l], &blk);
                }
            }
        }
        m
    }

    /// `f ⊗ g` in `X ⊗ Y`, where `tensor` is the tensor category of the two.
    pub fn tensor(tensor: &Arc<PresentedCategory>, f: &AddMorphism, g: &AddMorphism) -> Result<AddMorphism> {
        let ny = g.category.object_count();
        let source = f.source.tensor(&g.source, ny);
        let target = f.target.tensor(&g.target, ny);
        let field = tensor.field();
        let mut blocks = Vec::with_capacity(source.len() * target.len());
        for i in 0..f.source.len() {
            for i2 in 0..g.source.len() {
                for j in 0..f.target.len() {
                    for j2 in 0..g.target.len() {
                        let a = Matrix::column_vector(field, f.block(i, j).to_vec());
                        let b = Matrix::column_vector(field, g.block(i2, j2).to_vec());
                        blocks.push(a.kronecker(&b)?.column(0));
                    }
                }
            }
        }
        AddMorphism::new(tensor.clone(), source, target, blocks)
    }
}

/// Injection of the `k`-th part of `parts[0] ⊕ parts[1] ⊕ ...`.
pub fn injection(category: &Arc<PresentedCategory>, parts: &[&AddObject], k: usize) -> AddMorphism {
    let total = parts.iter().fold(AddObject::zero(), |acc, p| acc.concat(p));
    let offset: usize = parts[..k].iter().map(|p| p.len()).sum();
    let mut m = AddMorphism::zero(category.clone(), parts[k].clone(), total);
    let tl = m.target.len();
    for i in 0..parts[k].len() {
        m.blocks[i * tl + offset + i] = category.identity(parts[k].summands[i]).to_vec();
    }
    m
}

/// Projection onto the `k`-th part of `parts[0] ⊕ parts[1] ⊕ ...`.
pub fn projection(category: &Arc<PresentedCategory>, parts: &[&AddObject], k: usize) -> AddMorphism {
    let total = parts.iter().fold(AddObject::zero(), |acc, p| acc.concat(p));
    let offset: usize = parts[..k].iter().map(|p| p.len()).sum();
    let mut m = AddMorphism::zero(category.clone(), total, parts[k].clone());
    let tl = m.target.len();
    for i in 0..parts[k].len() {
        m.blocks[(offset + i) * tl + i] = category.identity(parts[k].summands[i]).to_vec();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn dual() -> Arc<PresentedCategory> {
        Arc::new(PresentedCategory::sigma_algebra(Arc::new(Algebra::truncated_poly(Q, 2))))
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn composition_reverses_algebra_product() {
        let cat = Arc::new(PresentedCategory::sigma_algebra(Arc::new(Algebra::upper_triangular(Q, 2))));
        let a = cat.sigma_algebra_of().unwrap().clone();
        let one = AddObject::single(0);
        let f = AddMorphism::new(cat.clone(), one.clone(), one.clone(), vec![a.basis_element(0)]).unwrap();
        let g = AddMorphism::new(cat.clone(), one.clone(), one.clone(), vec![a.basis_element(1)]).unwrap();
        let gf = f.then(&g).unwrap();
        assert_eq!(gf.block(0, 0), a.mul(&a.basis_element(0), &a.basis_element(1)).as_slice());
    }

    #[test]
    fn post_and_pre_matrices_agree_with_composition() {
        let cat = dual();
        let two = AddObject::new(vec![0, 0]);
        let one = AddObject::single(0);
        let g = AddMorphism::new(cat.clone(), two.clone(), one.clone(), vec![v(&[1, 2]), v(&[0, 1])]).unwrap();
        let h = AddMorphism::new(cat.clone(), one.clone(), two.clone(), vec![v(&[3, 1]), v(&[0, -1])]).unwrap();
        let direct = h.then(&g).unwrap().coords();
        assert_eq!(g.post_matrix(&one).apply(&h.coords()), direct);
        assert_eq!(h.pre_matrix(&one).apply(&g.coords()), direct);
    }

    #[test]
    fn stacking_and_projections() {
        let cat = dual();
        let one = AddObject::single(0);
        let f = AddMorphism::new(cat.clone(), one.clone(), one.clone(), vec![v(&[0, 1])]).unwrap();
        let g = AddMorphism::identity(cat.clone(), one.clone());
        let fg = f.hstack(&g).unwrap();
        let i0 = injection(&cat, &[&one, &one], 0);
        assert_eq!(i0.then(&fg).unwrap(), f);
        let st = f.vstack(&g).unwrap();
        let p1 = projection(&cat, &[&one, &one], 1);
        assert_eq!(st.then(&p1).unwrap(), g);
        let ds = f.direct_sum(&g).unwrap();
        assert_eq!(i0.then(&ds).unwrap().then(&projection(&cat, &[&one, &one], 0)).unwrap(), f);
    }

    #[test]
    fn coordinates_round_trip() {
        let cat = dual();
        let s = AddObject::new(vec![0, 0]);
        let f = AddMorphism::new(cat.clone(), s.clone(), AddObject::single(0), vec![v(&[1, 2]), v(&[3, 4])]).unwrap();
        assert_eq!(f.coords(), v(&[1, 2, 3, 4]));
        assert_eq!(AddMorphism::from_coords(cat, s, AddObject::single(0), &f.coords()).unwrap(), f);
    }

    #[test]
    fn bad_block_shape_rejected() {
        let cat = dual();
        let r = AddMorphism::new(cat, AddObject::single(0), AddObject::single(0), vec![v(&[1])]);
        assert!(matches!(r, Err(Error::InvalidMorphism(_))));
    }
}
