//! Jacobson radical via the trace form, the center, and central primitive idempotents.

use std::sync::Arc;

use super::{Algebra, Ideal};
use crate::error::{Error, Result};
use crate::linalg::{poly, vector, Matrix, Scalar};

fn check_characteristic(a: &Algebra) -> Result<()> {
    let p = a.field().characteristic();
    if p != 0 && p <= a.dim() as u64 {
        return Err(Error::UnsupportedCharacteristic { characteristic: p, dim: a.dim() });
    }
    Ok(())
}

/// The Jacobson radical: the largest two-sided ideal inside the kernel of the
/// trace form `(x, y) -> trace(L_{xy})`.
///
/// Valid in characteristic 0 or `p > dim A`; other characteristics are rejected.
pub fn radical(a: &Arc<Algebra>) -> Result<Ideal> {
    check_characteristic(a)?;
    let field = a.field();
    let d = a.dim();
    let traces: Vec<Scalar> = (0..d)
        .map(|m| {
            let l = a.left_basis_operator(m);
            (0..d).fold(field.zero(), |acc, i| &acc + l.get(i, i))
        })
        .collect();
    let form = Matrix::from_fn(field, d, d, |i, j| {
        let c = a.structure_constants(i, j);
        c.iter().zip(&traces).fold(field.zero(), |acc, (x, t)| &acc + &(x * t))
    });
    let kernel = form.transpose().kernel_basis();
    Ok(largest_ideal_in(a, kernel))
}

/// The largest two-sided ideal contained in the column span of `subspace`.
fn largest_ideal_in(a: &Arc<Algebra>, mut subspace: Matrix) -> Ideal {
    let field = a.field();
    let d = a.dim();
    loop {
        if subspace.cols() == 0 {
            return Ideal::zero(a.clone());
        }
        // x in S with e_i x in S and x e_i in S for all i
        let complement_test = subspace.transpose().kernel_basis().transpose();
        let mut constraints = Matrix::zeros(field, 0, subspace.cols());
        for i in 0..d {
            let e = a.basis_element(i);
            for op in [a.left_basis_operator(i).clone(), a.right_operator(&e)] {
                let image = &op * &subspace;
                constraints = constraints.vstack(&(&complement_test * &image)).expect("same width");
            }
        }
        let stable = constraints.kernel_basis();
        if stable.cols() == subspace.cols() {
            return Ideal::from_ideal_subspace(a.clone(), subspace.columns());
        }
        subspace = (&subspace * &stable).column_basis();
    }
}

pub fn is_semisimple(a: &Arc<Algebra>) -> Result<bool> {
    Ok(radical(a)?.is_zero())
}

/// Basis of the center as columns.
pub fn center(a: &Algebra) -> Matrix {
    let field = a.field();
    let d = a.dim();
    let mut basis = Matrix::identity(field, d);
    for i in 0..d {
        if basis.cols() <= 1 {
            break;
        }
        let commutator = a.left_basis_operator(i) - &a.right_operator(&a.basis_element(i));
        let k = (&commutator * &basis).kernel_basis();
        basis = &basis * &k;
    }
    basis
}

/// Pairwise orthogonal central idempotents summing to 1, each primitive in the
/// center. Requires a semisimple algebra whose center is split (isomorphic to
/// a product of copies of `k`).
pub fn central_primitive_idempotents(a: &Arc<Algebra>) -> Result<Vec<Vec<Scalar>>> {
    let rad = radical(a)?;
    if !rad.is_zero() {
        return Err(Error::NotSemisimple(rad.dim()));
    }
    let field = a.field();
    let z = center(a);
    let mut idempotents = vec![a.unit().to_vec()];
    for zb in z.columns() {
        let mut refined = Vec::new();
        for e in idempotents {
            // eZ is a commutative algebra with unit e; w = e z acts on it.
            let ez: Vec<Vec<Scalar>> = z.columns().iter().map(|c| a.mul(&e, c)).collect();
            let ez = Matrix::from_columns(field, a.dim(), &ez).column_basis();
            if ez.cols() == 1 {
                refined.push(e);
                continue;
            }
            let w = a.mul(&e, &zb);
            let action = ez
                .solve(&(&a.left_operator(&w) * &ez))?
                .expect("eZ is closed under multiplication");
            let minpoly = poly::minimal_polynomial(&action);
            let eigenvalues = poly::roots(field, &minpoly)?;
            if eigenvalues.len() + 1 != minpoly.len() {
                return Err(Error::NonSplit(format!(
                    "a central element has minimal polynomial of degree {} with only {} roots in {}",
                    minpoly.len() - 1,
                    eigenvalues.len(),
                    field
                )));
            }
            if eigenvalues.len() == 1 {
                refined.push(e);
                continue;
            }
            for (i, li) in eigenvalues.iter().enumerate() {
                // Lagrange idempotent prod_{j != i} (w - l_j e) / (l_i - l_j), inside eA.
                let mut p = e.clone();
                for (j, lj) in eigenvalues.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let factor = vector::sub(&w, &vector::scale(&e, lj));
                    let denom = (li - lj).inv().expect("distinct eigenvalues");
                    p = vector::scale(&a.mul(&p, &factor), &denom);
                }
                refined.push(p);
            }
        }
        idempotents = refined;
    }
    idempotents.sort_by_key(|e| e.iter().position(|c| !c.is_zero()));
    Ok(idempotents)
}

/// Dimension of the two-sided block `eA` cut out by a central idempotent.
pub fn block_dim(a: &Algebra, e: &[Scalar]) -> usize {
    a.left_operator(e).rank()
}
