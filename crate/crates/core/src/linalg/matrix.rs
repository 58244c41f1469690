use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, field, entries }
    }

    pub fn from_entries(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !field.contains(e)) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Matrix { rows, cols, field, entries })
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_entries(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "wrong number of values");
        Matrix { rows, cols, field, entries: values.iter().map(|&v| field.from_i64(v)).collect() }
    }

    /// A single column.
    pub fn column_vector(field: FieldSpec, values: Vec<Scalar>) -> Self {
        let n = values.len();
        Matrix { rows: n, cols: 1, field, entries: values }
    }

    /// Columns side by side; `rows` is needed when `columns` is empty.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        debug_assert!(self.field.contains(&value));
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j { e.is_one() } else { e.is_zero() }
            }))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { entries: self.entries.iter().map(|e| e * s).collect(), ..self.clone() }
    }

    /// Submatrix of `rows` x `cols` starting at (`r0`, `c0`).
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field, other.field))
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { other.get(i, j - self.cols).clone() }
        }))
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, entries })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { entries, ..self.clone() })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let idx = row * m.cols + j;
                m.entries[idx] = &m.entries[idx] * &inv;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let pv = &m.entries[row * m.cols + j];
                    if pv.is_zero() {
                        continue;
                    }
                    let delta = &factor * pv;
                    let idx = r * m.cols + j;
                    m.entries[idx] = &m.entries[idx] - &delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of `{v : self * v = 0}`, one per free column in
    /// increasing order, each with a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, j, -r.get(i, f));
            }
        }
        k
    }

    /// Some `s` with `self * s = target`, or `None` when the system is inconsistent.
    pub fn solve(&self, target: &Matrix) -> Result<Option<Matrix>> {
        self.same_field(target)?;
        if self.rows != target.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve with {} equations and a target of {} rows",
                self.rows, target.rows
            )));
        }
        let aug = self.hstack(target)?;
        let Rref { matrix: r, pivots, rank } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut s = Matrix::zeros(self.field, self.cols, target.cols);
        for i in 0..rank {
            for j in 0..target.cols {
                s.set(pivots[i], j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(s))
    }

    /// Some `s` with `s * self = target`.
    pub fn solve_left(&self, target: &Matrix) -> Result<Option<Matrix>> {
        Ok(self.transpose().solve(&target.transpose())?.map(|s| s.transpose()))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let s = self.solve(&Matrix::identity(self.field, self.rows)).ok()??;
        Some(s)
    }

    /// A basis of the column space, taken from the pivot columns.
    pub fn column_basis(&self) -> Matrix {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let (r, c) = (other.rows, other.cols);
        Ok(Matrix::from_fn(self.field, self.rows * r, self.cols * c, |i, j| {
            self.get(i / r, j / c) * other.get(i % r, j % c)
        }))
    }

    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        Ok(m)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix difference")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { entries: self.entries.iter().map(|e| -e).collect(), ..self.clone() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{}]", self.rows, self.cols);
        }
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| match e {
                Scalar::Residue { value, .. } => value.to_string(),
                other => other.to_string(),
            }).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<String>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        let entries = repr
            .entries
            .iter()
            .map(|e| repr.field.parse_scalar(e))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Matrix::from_entries(repr.field, repr.rows, repr.cols, entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 2);
        let r = id.rref();
        assert_eq!((r.matrix, r.rank, r.pivots), (id, 2, vec![0, 1]));

        let m = Matrix::from_i64(Q, 2, 2, &[1, 1, 2, 2]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(Q, 2, 2, &[1, 1, 0, 0]));
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
    }

    #[test]
    fn kernel_examples() {
        let k = Matrix::identity(Q, 2).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (2, 0));
        let k = Matrix::from_i64(Q, 1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, Matrix::from_i64(Q, 2, 1, &[-1, 1]));
    }

    #[test]
    fn solve_examples() {
        let t = Matrix::from_i64(Q, 2, 1, &[3, -4]);
        assert_eq!(Matrix::identity(Q, 2).solve(&t).unwrap(), Some(t));

        let m = Matrix::from_i64(Q, 1, 2, &[1, 1]);
        let three = Matrix::from_i64(Q, 1, 1, &[3]);
        let s = m.solve(&three).unwrap().unwrap();
        assert_eq!(&m * &s, three);

        let m = Matrix::from_i64(Q, 2, 1, &[1, 0]);
        let t = Matrix::from_i64(Q, 2, 1, &[0, 1]);
        assert_eq!(m.solve(&t).unwrap(), None);

        assert!(matches!(m.solve(&three), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kronecker_and_direct_sum_examples() {
        let k = Matrix::identity(Q, 2).kronecker(&Matrix::identity(Q, 3)).unwrap();
        assert_eq!(k, Matrix::identity(Q, 6));

        let alpha = Matrix::from_i64(Q, 1, 1, &[5]);
        let m = Matrix::from_i64(Q, 2, 3, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(alpha.kronecker(&m).unwrap(), m.scale(&Q.from_i64(5)));

        let empty = Matrix::zeros(Q, 0, 0);
        assert_eq!(empty.direct_sum(&m).unwrap(), m);
        let i1 = Matrix::identity(Q, 1);
        assert_eq!(i1.direct_sum(&i1).unwrap(), Matrix::identity(Q, 2));

        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(
            i1.kronecker(&Matrix::identity(f7, 1)),
            Err(Error::FieldMismatch(Q, f7))
        );
    }

    #[test]
    fn json_shape() {
        let f7 = FieldSpec::prime(7).unwrap();
        let m = Matrix::from_i64(f7, 1, 2, &[3, -1]);
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v, serde_json::json!({"rows": 1, "cols": 2, "field": "gf:7", "entries": ["3 mod 7", "6 mod 7"]}));
        let back: Matrix = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);

        let q = Matrix::from_rows(Q, vec![vec![Q.parse_scalar("3/7").unwrap()]]).unwrap();
        assert_eq!(serde_json::to_value(&q).unwrap()["entries"], serde_json::json!(["3/7"]));
    }

    #[test]
    fn inverse_of_singular_is_none() {
        assert!(Matrix::from_i64(Q, 2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let m = Matrix::from_i64(Q, 2, 2, &[2, 1, 1, 1]);
        assert!((&m * &m.inverse().unwrap()).is_identity());
    }
}
