use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// A finite-dimensional left module: one `dim x dim` action matrix per basis
/// element of the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Module {
    #[serde(skip)]
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl Module {
    /// Checks that the action respects the structure constants and that the unit acts as the identity.
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a {}-dimensional algebra",
                action.len(),
                algebra.dim()
            )));
        }
        if let Some(m) = action.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule(format!("action matrix is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
        }
        if let Some(m) = action.iter().find(|m| m.field() != algebra.field()) {
            return Err(Error::FieldMismatch(algebra.field(), m.field()));
        }
        let module = Module { algebra, dim, action };
        module.validate()?;
        Ok(module)
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        Module { algebra, dim, action }
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        if !self.action_of(a.unit()).is_identity() {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = &self.action[i] * &self.action[j];
                let rhs = self.action_of(&a.structure_constants(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action of {} {} is not the product of actions",
                        a.basis_names()[i],
                        a.basis_names()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let d = algebra.dim();
        let action = (0..d).map(|i| algebra.left_basis_operator(i).clone()).collect();
        Module { algebra, dim: d, action }
    }

    /// `A^n`.
    pub fn free(algebra: Arc<Algebra>, rank: usize) -> Self {
        let d = algebra.dim();
        let action = (0..d)
            .map(|i| Matrix::identity(algebra.field(), rank).kronecker(algebra.left_basis_operator(i)).expect("same field"))
            .collect();
        Module { algebra, dim: d * rank, action }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let field = algebra.field();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(field, 0, 0)).collect();
        Module { algebra, dim: 0, action }
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        self.same_algebra(other)?;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<_>>()?;
        Ok(Module { algebra: self.algebra.clone(), dim: self.dim + other.dim, action })
    }

    pub(crate) fn same_algebra(&self, other: &Module) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch("modules over different algebras".into()))
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix by which an algebra element (in coordinates) acts.
    pub fn action_of(&self, element: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.algebra.field(), self.dim, self.dim);
        for (i, c) in element.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.action[i].scale(c);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
}

/// An `A`-linear map, stored as a `target.dim x source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleMorphism {
    #[serde(skip)]
    source: Arc<Module>,
    #[serde(skip)]
    target: Arc<Module>,
    matrix: Matrix,
}

impl ModuleMorphism {
    pub fn new(source: Arc<Module>, target: Arc<Module>, matrix: Matrix) -> Result<Self> {
        source.same_algebra(&target)?;
        if (matrix.rows(), matrix.cols()) != (target.dim, source.dim) {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        if matrix.field() != source.algebra.field() {
            return Err(Error::FieldMismatch(source.algebra.field(), matrix.field()));
        }
        for (i, (s, t)) in source.action.iter().zip(&target.action).enumerate() {
            if &matrix * s != t * &matrix {
                return Err(Error::InvalidModuleMorphism(format!(
                    "does not commute with the action of {}",
                    source.algebra.basis_names()[i]
                )));
            }
        }
        Ok(ModuleMorphism { source, target, matrix })
    }

    pub(crate) fn new_unchecked(source: Arc<Module>, target: Arc<Module>, matrix: Matrix) -> Self {
        ModuleMorphism { source, target, matrix }
    }

    pub fn identity(m: Arc<Module>) -> Self {
        let matrix = Matrix::identity(m.algebra.field(), m.dim);
        ModuleMorphism { source: m.clone(), target: m, matrix }
    }

    pub fn zero(source: Arc<Module>, target: Arc<Module>) -> Self {
        let matrix = Matrix::zeros(source.algebra.field(), target.dim, source.dim);
        ModuleMorphism { source, target, matrix }
    }

    pub fn source(&self) -> &Arc<Module> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Module> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.target.dim != other.source.dim || (!Arc::ptr_eq(&self.target, &other.source) && *self.target != *other.source) {
            return Err(Error::NotComposable("target and source modules differ".into()));
        }
        Ok(ModuleMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: &other.matrix * &self.matrix,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn regular_and_free_modules_are_valid() {
        let a = Arc::new(Algebra::upper_triangular(Q, 2));
        Module::regular(a.clone()).validate().unwrap();
        let f = Module::free(a.clone(), 2);
        f.validate().unwrap();
        assert_eq!(f.dim(), 6);
        Module::zero(a).validate().unwrap();
    }

    #[test]
    fn bad_action_rejected() {
        let a = Arc::new(Algebra::truncated_poly(Q, 2));
        // x acting as the identity violates x^2 = 0
        let action = vec![Matrix::identity(Q, 1), Matrix::identity(Q, 1)];
        assert!(matches!(Module::new(a, 1, action), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn non_equivariant_map_rejected() {
        let a = Arc::new(Algebra::truncated_poly(Q, 2));
        let m = Arc::new(Module::regular(a));
        // projection onto the x-coordinate does not commute with x
        let p = Matrix::from_i64(Q, 2, 2, &[0, 0, 0, 1]);
        assert!(matches!(
            ModuleMorphism::new(m.clone(), m, p),
            Err(Error::InvalidModuleMorphism(_))
        ));
    }
}
