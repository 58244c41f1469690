use std::sync::Arc;

use super::{tensor_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// A unital algebra homomorphism, stored as a `target.dim x source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        if matrix.field() != source.field() {
            return Err(Error::FieldMismatch(source.field(), matrix.field()));
        }
        if (matrix.rows(), matrix.cols()) != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "algebra morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let f = AlgebraMorphism { source, target, matrix };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Self {
        AlgebraMorphism { source, target, matrix }
    }

    fn validate(&self) -> Result<()> {
        if self.apply(self.source.unit()) != self.target.unit() {
            return Err(Error::InvalidAlgebraMorphism("unit is not preserved".into()));
        }
        let d = self.source.dim();
        let images: Vec<Vec<Scalar>> = (0..d).map(|i| self.matrix.column(i)).collect();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.apply(&self.source.structure_constants(i, j));
                let rhs = self.target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::InvalidAlgebraMorphism(format!(
                        "f({} {}) != f({}) f({})",
                        self.source.basis_names()[i],
                        self.source.basis_names()[j],
                        self.source.basis_names()[i],
                        self.source.basis_names()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(a: Arc<Algebra>) -> Self {
        let m = Matrix::identity(a.field(), a.dim());
        AlgebraMorphism { source: a.clone(), target: a, matrix: m }
    }

    /// The structure map `k -> A`.
    pub fn unit_inclusion(a: Arc<Algebra>) -> Self {
        let k = Arc::new(Algebra::ground(a.field()));
        let m = Matrix::column_vector(a.field(), a.unit().to_vec());
        AlgebraMorphism { source: k, target: a, matrix: m }
    }

    /// The inner automorphism `x -> u x u^-1`.
    pub fn conjugation(a: Arc<Algebra>, u: &[Scalar]) -> Result<Self> {
        let inv = a
            .inverse(u)
            .ok_or_else(|| Error::InvalidAlgebraMorphism("conjugating element is not invertible".into()))?;
        let m = &a.left_operator(u) * &a.right_operator(&inv);
        Ok(AlgebraMorphism { source: a.clone(), target: a, matrix: m })
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if *self.target != *other.source {
            return Err(Error::AlgebraMismatch("composition of algebra morphisms".into()));
        }
        Ok(AlgebraMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: &other.matrix * &self.matrix,
        })
    }

    /// `f1 ⊗ f2 : A1 ⊗ A2 -> B1 ⊗ B2`.
    pub fn tensor(f1: &AlgebraMorphism, f2: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let source = Arc::new(tensor_algebra(&f1.source, &f2.source)?);
        let target = Arc::new(tensor_algebra(&f1.target, &f2.target)?);
        let matrix = f1.matrix.kronecker(&f2.matrix)?;
        Ok(AlgebraMorphism { source, target, matrix })
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn non_multiplicative_map_rejected() {
        let a = Arc::new(Algebra::truncated_poly(Q, 2));
        // 1 -> 1, x -> 1 is unital but x*x = 0 maps to 0 while f(x)f(x) = 1
        let m = Matrix::from_i64(Q, 2, 2, &[1, 1, 0, 0]);
        assert!(matches!(
            AlgebraMorphism::new(a.clone(), a, m),
            Err(Error::InvalidAlgebraMorphism(_))
        ));
    }

    #[test]
    fn conjugation_is_an_automorphism() {
        let a = Arc::new(Algebra::matrix_algebra(Q, 2));
        let mut u = a.unit().to_vec();
        u[1] = Q.from_i64(3);
        let f = AlgebraMorphism::conjugation(a.clone(), &u).unwrap();
        AlgebraMorphism::new(a.clone(), a.clone(), f.matrix().clone()).unwrap();
        assert!(f.is_surjective());
    }

    #[test]
    fn tensor_of_morphisms_is_a_morphism() {
        let a = Arc::new(Algebra::upper_triangular(Q, 2));
        let b = Arc::new(Algebra::truncated_poly(Q, 2));
        let f = AlgebraMorphism::tensor(&AlgebraMorphism::unit_inclusion(a.clone()), &AlgebraMorphism::identity(b)).unwrap();
        AlgebraMorphism::new(f.source().clone(), f.target().clone(), f.matrix().clone()).unwrap();
    }
}
