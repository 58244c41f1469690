//! Exact dense linear algebra over `Q` and `GF(p)`.

mod matrix;
pub mod poly;
mod scalar;

pub use matrix::{Matrix, Rref};
pub use scalar::{FieldSpec, Scalar};

/// Coordinate-vector helpers shared by the algebra and category code.
pub mod vector {
    use super::{FieldSpec, Scalar};

    pub fn zero(field: FieldSpec, n: usize) -> Vec<Scalar> {
        vec![field.zero(); n]
    }

    pub fn unit(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = zero(field, n);
        v[i] = field.one();
        v
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
        a.iter().map(|x| x * s).collect()
    }

    /// `acc += s * a`
    pub fn axpy(acc: &mut [Scalar], s: &Scalar, a: &[Scalar]) {
        if s.is_zero() {
            return;
        }
        for (x, y) in acc.iter_mut().zip(a) {
            if !y.is_zero() {
                *x = &*x + &(s * y);
            }
        }
    }

    pub fn is_zero(a: &[Scalar]) -> bool {
        a.iter().all(Scalar::is_zero)
    }
}
