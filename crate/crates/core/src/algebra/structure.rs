use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{vector, FieldSpec, Matrix, Scalar};

/// A finite-dimensional associative unital algebra given by structure constants.
///
/// Multiplication is stored as left-multiplication operators: column `j` of
/// `left[i]` holds the coordinates of `e_i * e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    basis_names: Vec<String>,
    left: Vec<Matrix>,
    unit: Vec<Scalar>,
}

impl Algebra {
    /// Builds an algebra from `mult[i][j]` = coordinates of `e_i * e_j`,
    /// checking associativity and the unit law.
    pub fn new(
        field: FieldSpec,
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let d = basis_names.len();
        if mult.len() != d || mult.iter().any(|row| row.len() != d || row.iter().any(|v| v.len() != d)) {
            return Err(Error::InvalidAlgebra(format!("multiplication table must be {d}x{d} vectors of length {d}")));
        }
        if unit.len() != d {
            return Err(Error::InvalidAlgebra("unit has the wrong length".into()));
        }
        if let Some(bad) = mult.iter().flatten().flatten().chain(&unit).find(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        let left = (0..d)
            .map(|i| Matrix::from_fn(field, d, d, |r, j| mult[i][j][r].clone()))
            .collect();
        let a = Algebra { field, basis_names, left, unit };
        a.validate()?;
        Ok(a)
    }

    pub(crate) fn from_left_unchecked(field: FieldSpec, basis_names: Vec<String>, left: Vec<Matrix>, unit: Vec<Scalar>) -> Self {
        Algebra { field, basis_names, left, unit }
    }

    /// Associativity on all basis triples and the two-sided unit law.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let eij = self.structure_constants(i, j);
                for l in 0..d {
                    // (e_i e_j) e_l
                    let mut lhs = vector::zero(self.field, d);
                    for (m, c) in eij.iter().enumerate() {
                        if !c.is_zero() {
                            vector::axpy(&mut lhs, c, &self.structure_constants(m, l));
                        }
                    }
                    // e_i (e_j e_l)
                    let rhs = self.left[i].apply(&self.structure_constants(j, l));
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis_names[i], self.basis_names[j], self.basis_names[l]
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            let e = vector::unit(self.field, d, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("unit law fails on {}", self.basis_names[i])));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        vector::zero(self.field, self.dim())
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.dim(), i)
    }

    /// Coordinates of `e_i * e_j`.
    pub fn structure_constants(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.left[i].column(j)
    }

    /// Matrix of `x -> e_i x`.
    pub fn left_basis_operator(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of `x -> a x`.
    pub fn left_operator(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.dim());
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.left[i].scale(c);
            }
        }
        m
    }

    /// Matrix of `x -> x a`.
    pub fn right_operator(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.left.iter().map(|l| l.apply(a)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_element();
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                vector::axpy(&mut out, c, &self.left[i].apply(b));
            }
        }
        out
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, a: &[Scalar]) -> Option<Vec<Scalar>> {
        let l = self.left_operator(a);
        let s = l.solve(&Matrix::column_vector(self.field, self.unit.clone())).ok()??;
        let inv = s.column(0);
        (self.mul(&inv, a) == self.unit).then_some(inv)
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..i).all(|j| self.structure_constants(i, j) == self.structure_constants(j, i)))
    }

    // ---- standard constructors ----

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: FieldSpec) -> Self {
        Self::matrix_algebra(field, 1)
    }

    /// `M_n(k)` in the matrix-unit basis `E_ab`, indexed `a * n + b`.
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> Self {
        let d = n * n;
        let names = (0..d).map(|i| if n == 1 { "1".to_string() } else { format!("E{}{}", i / n + 1, i % n + 1) }).collect();
        let left = (0..d)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                // E_ab E_cd = [b == c] E_ad
                Matrix::from_fn(field, d, d, |r, j| {
                    let (c, dd) = (j / n, j % n);
                    if b == c && r == a * n + dd { field.one() } else { field.zero() }
                })
            })
            .collect();
        let mut unit = vector::zero(field, d);
        for a in 0..n {
            unit[a * n + a] = field.one();
        }
        Algebra { field, basis_names: names, left, unit }
    }

    /// Upper-triangular `n x n` matrices, basis `E_ab` with `a <= b` in row-major order.
    pub fn upper_triangular(field: FieldSpec, n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let d = pairs.len();
        let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).unwrap();
        let names = pairs.iter().map(|(a, b)| format!("E{}{}", a + 1, b + 1)).collect();
        let left = pairs
            .iter()
            .map(|&(a, b)| {
                let mut m = Matrix::zeros(field, d, d);
                for (j, &(c, e)) in pairs.iter().enumerate() {
                    if b == c {
                        m.set(index(a, e), j, field.one());
                    }
                }
                m
            })
            .collect();
        let mut unit = vector::zero(field, d);
        for a in 0..n {
            unit[index(a, a)] = field.one();
        }
        Algebra { field, basis_names: names, left, unit }
    }

    /// `k[x]/(x^n)`.
    pub fn truncated_poly(field: FieldSpec, n: usize) -> Self {
        let names = (0..n).map(|i| match i { 0 => "1".to_string(), 1 => "x".to_string(), _ => format!("x^{i}") }).collect();
        let left = (0..n)
            .map(|i| Matrix::from_fn(field, n, n, |r, j| if i + j == r { field.one() } else { field.zero() }))
            .collect();
        Algebra { field, basis_names: names, left, unit: vector::unit(field, n, 0) }
    }

    /// The group algebra `k[C_n]` with basis `g^0, ..., g^(n-1)`.
    pub fn cyclic_group_algebra(field: FieldSpec, n: usize) -> Self {
        let names = (0..n).map(|i| match i { 0 => "1".to_string(), 1 => "g".to_string(), _ => format!("g^{i}") }).collect();
        let left = (0..n)
            .map(|i| Matrix::from_fn(field, n, n, |r, j| if (i + j) % n == r { field.one() } else { field.zero() }))
            .collect();
        Algebra { field, basis_names: names, left, unit: vector::unit(field, n, 0) }
    }

    /// The direct product `A_1 x ... x A_r`; basis is the concatenation of the factors' bases.
    pub fn product(factors: &[Algebra]) -> Result<Self> {
        let field = factors.first().map_or(FieldSpec::Rationals, |f| f.field);
        if let Some(bad) = factors.iter().find(|f| f.field != field) {
            return Err(Error::FieldMismatch(field, bad.field));
        }
        let d: usize = factors.iter().map(Algebra::dim).sum();
        let mut names = Vec::with_capacity(d);
        let mut left = Vec::with_capacity(d);
        let mut unit = Vec::with_capacity(d);
        let mut offset = 0;
        for (f, alg) in factors.iter().enumerate() {
            for i in 0..alg.dim() {
                names.push(format!("{}.{}", f + 1, alg.basis_names[i]));
                let mut m = Matrix::zeros(field, d, d);
                m.set_block(offset, offset, &alg.left[i]);
                left.push(m);
            }
            unit.extend(alg.unit.iter().cloned());
            offset += alg.dim();
        }
        Ok(Algebra { field, basis_names: names, left, unit })
    }
}

/// `A ⊗ B` with basis `a_i ⊗ b_j` indexed `i * dim B + j`.
pub fn tensor_algebra(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field, b.field));
    }
    let mut names = Vec::with_capacity(a.dim() * b.dim());
    let mut left = Vec::with_capacity(a.dim() * b.dim());
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            names.push(format!("{}⊗{}", a.basis_names[i], b.basis_names[j]));
            left.push(a.left[i].kronecker(&b.left[j])?);
        }
    }
    let unit = Matrix::column_vector(a.field, a.unit.clone())
        .kronecker(&Matrix::column_vector(b.field, b.unit.clone()))?
        .column(0);
    Ok(Algebra::from_left_unchecked(a.field, names, left, unit))
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    field: FieldSpec,
    dim: usize,
    basis_names: Vec<String>,
    mult: Vec<Vec<Vec<String>>>,
    unit: Vec<String>,
}

impl Serialize for Algebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.dim();
        let strings = |v: Vec<Scalar>| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        AlgebraRepr {
            field: self.field,
            dim: d,
            basis_names: self.basis_names.clone(),
            mult: (0..d).map(|i| (0..d).map(|j| strings(self.structure_constants(i, j))).collect()).collect(),
            unit: strings(self.unit.clone()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = AlgebraRepr::deserialize(deserializer)?;
        if repr.dim != repr.basis_names.len() {
            return Err(D::Error::custom("dim disagrees with basis_names"));
        }
        let field = repr.field;
        let parse = |v: &[String]| v.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>();
        let mult = repr
            .mult
            .iter()
            .map(|row| row.iter().map(|v| parse(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let unit = parse(&repr.unit).map_err(D::Error::custom)?;
        Algebra::new(field, repr.basis_names, mult, unit).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn standard_algebras_are_valid() {
        let f7 = FieldSpec::prime(7).unwrap();
        for a in [
            Algebra::ground(Q),
            Algebra::matrix_algebra(Q, 2),
            Algebra::matrix_algebra(f7, 3),
            Algebra::upper_triangular(Q, 3),
            Algebra::truncated_poly(Q, 4),
            Algebra::cyclic_group_algebra(f7, 5),
            Algebra::product(&[Algebra::ground(Q), Algebra::matrix_algebra(Q, 2)]).unwrap(),
        ] {
            a.validate().unwrap();
        }
        assert_eq!(Algebra::upper_triangular(Q, 3).dim(), 6);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // e0 e0 = e1, everything else zero, unit e0: unit law fails.
        let z = vec![Q.zero(), Q.zero()];
        let mult = vec![vec![vec![Q.zero(), Q.one()], z.clone()], vec![z.clone(), z.clone()]];
        let err = Algebra::new(Q, vec!["a".into(), "b".into()], mult, vec![Q.one(), Q.zero()]).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(_)));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // basis 1, a, b with a*a = b, a*b = 0, b*a = a: (a a) a = b a = a but a (a a) = a b = 0.
        let one = |i: usize| vector::unit(Q, 3, i);
        let zero = vector::zero(Q, 3);
        let mult = vec![
            vec![one(0), one(1), one(2)],
            vec![one(1), one(2), zero.clone()],
            vec![one(2), one(1), zero.clone()],
        ];
        let err = Algebra::new(Q, vec!["1".into(), "a".into(), "b".into()], mult, one(0)).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn tensor_dimensions_multiply() {
        let a = Algebra::truncated_poly(Q, 2);
        let b = Algebra::truncated_poly(Q, 3);
        let t = tensor_algebra(&a, &b).unwrap();
        assert_eq!(t.dim(), 6);
        assert!(t.is_commutative());
        t.validate().unwrap();

        let k = Algebra::ground(Q);
        let m2 = Algebra::matrix_algebra(Q, 2);
        let kb = tensor_algebra(&k, &m2).unwrap();
        // the basis 1⊗E_ab has exactly the structure constants of M_2
        for i in 0..4 {
            assert_eq!(kb.left_basis_operator(i), m2.left_basis_operator(i));
        }
        assert_eq!(kb.unit(), m2.unit());

        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(tensor_algebra(&k, &Algebra::ground(f7)), Err(Error::FieldMismatch(Q, f7)));
    }

    #[test]
    fn json_round_trip_preserves_structure() {
        let a = Algebra::upper_triangular(Q, 2);
        let json = serde_json::to_string(&a).unwrap();
        let back: Algebra = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn inverses() {
        let a = Algebra::matrix_algebra(Q, 2);
        // 1 + E12 is invertible, E11 is not
        let mut u = a.unit().to_vec();
        u[1] = Q.one();
        let inv = a.inverse(&u).unwrap();
        assert_eq!(a.mul(&u, &inv), a.unit());
        assert!(a.inverse(&a.basis_element(0)).is_none());
    }
}
