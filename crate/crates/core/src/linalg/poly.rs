//! Univariate polynomials (coefficients lowest degree first) and their roots in the ground field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FieldSpec, Matrix, Scalar};
use crate::error::{Error, Result};

/// Largest modulus for which roots are found by exhaustive evaluation.
const MAX_EXHAUSTIVE_MODULUS: u64 = 1 << 22;
/// Integers up to this bound are factored by trial division in the rational root search.
const MAX_TRIAL_DIVISION: u64 = 100_000_000_000_000;

pub fn evaluate(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// The monic minimal polynomial of a square matrix, found from the first
/// linear dependence among `I, M, M^2, ...`.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Scalar> {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let field = m.field();
    let n = m.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![Matrix::identity(field, n).entries().to_vec()];
    let mut current = Matrix::identity(field, n);
    loop {
        current = &current * m;
        let candidate = current.entries().to_vec();
        let basis = Matrix::from_columns(field, n * n, &powers);
        let target = Matrix::column_vector(field, candidate.clone());
        if let Some(s) = basis.solve(&target).expect("shapes agree") {
            let mut poly: Vec<Scalar> = s.column(0).iter().map(|c| -c).collect();
            poly.push(field.one());
            return poly;
        }
        powers.push(candidate);
    }
}

/// Distinct roots of `poly` lying in its coefficient field, in a deterministic order.
pub fn roots(field: FieldSpec, poly: &[Scalar]) -> Result<Vec<Scalar>> {
    let poly = trim(poly);
    if poly.is_empty() {
        return Err(Error::Degenerate("roots of the zero polynomial".into()));
    }
    match field {
        FieldSpec::PrimeField(p) => {
            if p > MAX_EXHAUSTIVE_MODULUS {
                return Err(Error::Degenerate(format!("root search over GF({p}) exceeds the exhaustive bound")));
            }
            Ok((0..p as i64).map(|v| field.from_i64(v)).filter(|x| evaluate(&poly, x).is_zero()).collect())
        }
        FieldSpec::Rationals => rational_roots(&poly),
    }
}

fn trim(poly: &[Scalar]) -> Vec<Scalar> {
    let mut v = poly.to_vec();
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
    v
}

fn rational_roots(poly: &[Scalar]) -> Result<Vec<Scalar>> {
    let coeffs: Vec<BigRational> = poly
        .iter()
        .map(|c| c.as_rational().cloned().expect("rational coefficients"))
        .collect();
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();

    let mut found = Vec::new();
    let zero_mult = ints.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        found.push(BigRational::zero());
        ints.drain(..zero_mult);
    }
    if ints.len() > 1 {
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        let q_divs = divisors(&lead)?;
        let p_divs = divisors(&constant)?;
        for q in &q_divs {
            for p in &p_divs {
                for sign in [1i32, -1] {
                    let r = BigRational::new(p * BigInt::from(sign), q.clone());
                    if !found.contains(&r) && eval_rational(&ints, &r).is_zero() {
                        found.push(r);
                    }
                }
            }
        }
    }
    found.sort();
    Ok(found.into_iter().map(Scalar::Rational).collect())
}

fn eval_rational(ints: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in ints.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .to_u64()
        .filter(|&v| v <= MAX_TRIAL_DIVISION)
        .ok_or_else(|| Error::Degenerate(format!("coefficient {n} too large for the rational root search")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small.into_iter().map(BigInt::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_of_projection() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_i64(q, 3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let mp = minimal_polynomial(&m);
        assert_eq!(mp, vec![q.zero(), q.from_i64(-1), q.one()]);
    }

    #[test]
    fn rational_roots_found() {
        let q = FieldSpec::Rationals;
        // (2x - 1)(x + 3)(x^2 + 1) = 2x^4 + 5x^3 - x^2 + 5x - 3
        let p: Vec<Scalar> = [-3, 5, -1, 5, 2].iter().map(|&c| q.from_i64(c)).collect();
        let r = roots(q, &p).unwrap();
        assert_eq!(r, vec![q.from_i64(-3), q.parse_scalar("1/2").unwrap()]);
        // x^2 + 1 has none
        let p: Vec<Scalar> = [1, 0, 1].iter().map(|&c| q.from_i64(c)).collect();
        assert!(roots(q, &p).unwrap().is_empty());
    }

    #[test]
    fn prime_field_roots() {
        let f = FieldSpec::prime(5).unwrap();
        // x^2 + 1 = (x - 2)(x - 3) over GF(5)
        let p: Vec<Scalar> = [1, 0, 1].iter().map(|&c| f.from_i64(c)).collect();
        assert_eq!(roots(f, &p).unwrap(), vec![f.from_i64(2), f.from_i64(3)]);
    }
}
