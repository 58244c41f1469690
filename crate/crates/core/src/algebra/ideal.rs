use std::sync::Arc;

use super::{Algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Scalar};

/// A two-sided ideal, kept as the generators it was built from plus a
/// canonical basis of its closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    parent: Arc<Algebra>,
    generators: Vec<Vec<Scalar>>,
    /// Rows in reduced row echelon form spanning the ideal.
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Ideal {
    /// The two-sided ideal generated by `generators`.
    pub fn generated_by(parent: Arc<Algebra>, generators: Vec<Vec<Scalar>>) -> Result<Self> {
        let d = parent.dim();
        if let Some(g) = generators.iter().find(|g| g.len() != d) {
            return Err(Error::DimensionMismatch(format!("generator of length {} in a {d}-dimensional algebra", g.len())));
        }
        let field = parent.field();
        let mut span = canonical_rows(field, d, &generators);
        loop {
            let mut candidates: Vec<Vec<Scalar>> = (0..span.rank).map(|r| span.matrix.row(r).to_vec()).collect();
            let current: Vec<Vec<Scalar>> = candidates.clone();
            for v in &current {
                for i in 0..d {
                    let e = parent.basis_element(i);
                    candidates.push(parent.mul(&e, v));
                    candidates.push(parent.mul(v, &e));
                }
            }
            let next = canonical_rows(field, d, &candidates);
            if next.rank == span.rank {
                break;
            }
            span = next;
        }
        let rows = span.matrix.block(0, 0, span.rank, d);
        Ok(Ideal { parent, generators, rows, pivots: span.pivots })
    }

    pub fn zero(parent: Arc<Algebra>) -> Self {
        let d = parent.dim();
        Ideal { rows: Matrix::zeros(parent.field(), 0, d), parent, generators: Vec::new(), pivots: Vec::new() }
    }

    /// Treats a subspace already known to be a two-sided ideal as one.
    pub(crate) fn from_ideal_subspace(parent: Arc<Algebra>, vectors: Vec<Vec<Scalar>>) -> Self {
        let span = canonical_rows(parent.field(), parent.dim(), &vectors);
        let rows = span.matrix.block(0, 0, span.rank, parent.dim());
        Ideal { parent, generators: vectors, rows, pivots: span.pivots }
    }

    pub fn parent(&self) -> &Arc<Algebra> {
        &self.parent
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis vectors of the ideal, one per row of its echelon form.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|r| self.rows.row(r).to_vec()).collect()
    }

    /// Basis as the columns of a `dim(parent) x dim(ideal)` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        self.rows.transpose()
    }

    /// Subtracts the ideal component so that every pivot coordinate becomes zero.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if !c.is_zero() {
                vector::axpy(&mut out, &-&c, self.rows.row(r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vector::is_zero(&self.reduce(v))
    }

    pub fn contains_unit(&self) -> bool {
        self.contains(self.parent.unit())
    }

    /// Coordinates not occupied by pivots; they index a basis of the quotient.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.parent.dim()).filter(|i| !self.pivots.contains(i)).collect()
    }
}

fn canonical_rows(field: crate::linalg::FieldSpec, d: usize, vectors: &[Vec<Scalar>]) -> crate::linalg::Rref {
    let m = if vectors.is_empty() {
        Matrix::zeros(field, 0, d)
    } else {
        Matrix::from_rows(field, vectors.to_vec()).expect("equal lengths")
    };
    m.rref()
}

/// `A/I` with basis the images of the non-pivot basis vectors of `A`, and the projection `A -> A/I`.
pub fn quotient_algebra(a: &Arc<Algebra>, ideal: &Ideal) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
    if **ideal.parent() != **a {
        return Err(Error::AlgebraMismatch("ideal belongs to a different algebra".into()));
    }
    if ideal.contains_unit() {
        return Err(Error::ImproperIdeal);
    }
    let field = a.field();
    let keep = ideal.complement_indices();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let r = ideal.reduce(v);
        keep.iter().map(|&i| r[i].clone()).collect()
    };
    let projection = Matrix::from_columns(field, keep.len(), &(0..a.dim()).map(|i| project(&a.basis_element(i))).collect::<Vec<_>>());
    let names = keep.iter().map(|&i| a.basis_names()[i].clone()).collect();
    let mult = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| project(&a.structure_constants(i, j))).collect())
        .collect();
    let unit = project(a.unit());
    let q = Arc::new(Algebra::new(field, names, mult, unit)?);
    let pi = AlgebraMorphism::new_unchecked(a.clone(), q.clone(), projection);
    Ok((q, pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn quotient_of_dual_numbers_by_x_is_k() {
        let a = Arc::new(Algebra::truncated_poly(Q, 2));
        let i = Ideal::generated_by(a.clone(), vec![a.basis_element(1)]).unwrap();
        assert_eq!(i.dim(), 1);
        let (q, pi) = quotient_algebra(&a, &i).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(*q, Algebra::ground(Q));
        AlgebraMorphism::new(a, q, pi.matrix().clone()).unwrap();
    }

    #[test]
    fn quotient_of_product_by_factor() {
        let k = Algebra::ground(Q);
        let a = Arc::new(Algebra::product(&[k.clone(), k]).unwrap());
        let i = Ideal::generated_by(a.clone(), vec![a.basis_element(0)]).unwrap();
        let (q, pi) = quotient_algebra(&a, &i).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(pi.is_surjective());
        // kernel of the projection is the ideal
        let ker = pi.matrix().kernel_basis();
        assert_eq!(ker.cols(), i.dim());
        for v in ker.columns() {
            assert!(i.contains(&v));
        }
    }

    #[test]
    fn unit_ideal_rejected() {
        let a = Arc::new(Algebra::matrix_algebra(Q, 2));
        // E11 generates all of M_2 as a two-sided ideal
        let i = Ideal::generated_by(a.clone(), vec![a.basis_element(0)]).unwrap();
        assert_eq!(i.dim(), 4);
        assert_eq!(quotient_algebra(&a, &i).unwrap_err(), Error::ImproperIdeal);
    }

    #[test]
    fn zero_ideal_quotient_is_isomorphic() {
        let a = Arc::new(Algebra::upper_triangular(Q, 2));
        let (q, pi) = quotient_algebra(&a, &Ideal::zero(a.clone())).unwrap();
        assert_eq!(*q, *a);
        assert!(pi.matrix().is_identity());
    }
}
