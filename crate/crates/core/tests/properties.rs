use fincat_core::algebra::{tensor_algebra, Algebra};
use fincat_core::linalg::{FieldSpec, Matrix, Scalar};
use fincat_core::verify::{run_suite, Execution, SampleSpace, Suite};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::PrimeField(2)), Just(FieldSpec::PrimeField(7))]
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (field(), 1..=max, 1..=max).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| Matrix::from_i64(f, r, c, &v))
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (field(), 1..=max).prop_flat_map(|(f, n)| prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| Matrix::from_i64(f, n, n, &v)))
}

/// Leibniz expansion, independent of elimination.
fn det(m: &Matrix) -> Scalar {
    let n = m.rows();
    let field = m.field();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = field.zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = if inversions % 2 == 0 { field.one() } else { field.from_i64(-1) };
        for (i, &j) in p.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        total = &total + &term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Largest `k` with a nonzero `k x k` minor.
fn minor_rank(m: &Matrix) -> usize {
    (1..=m.rows().min(m.cols()))
        .rev()
        .find(|&k| {
            subsets(m.rows(), k)
                .iter()
                .any(|rs| subsets(m.cols(), k).iter().any(|cs| !det(&m.select_rows(rs).select_columns(cs)).is_zero()))
        })
        .unwrap_or(0)
}

fn algebra() -> impl Strategy<Value = Algebra> {
    (prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::PrimeField(5))], 0..5usize).prop_map(|(f, i)| match i {
        0 => Algebra::matrix_algebra(f, 2),
        1 => Algebra::upper_triangular(f, 2),
        2 => Algebra::truncated_poly(f, 3),
        3 => Algebra::cyclic_group_algebra(f, 3),
        _ => Algebra::product(&[Algebra::ground(f), Algebra::matrix_algebra(f, 2)]).unwrap(),
    })
}

fn element(a: &Algebra, coeffs: &[i64]) -> Vec<Scalar> {
    (0..a.dim()).map(|i| a.field().from_i64(coeffs[i % coeffs.len()])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_nullity(m in matrix(6)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn rank_matches_minors(m in matrix(4)) {
        prop_assert_eq!(m.rank(), minor_rank(&m));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rref_is_idempotent_and_keeps_the_row_space(m in matrix(5)) {
        let r = m.rref();
        prop_assert_eq!(&r.matrix.rref().matrix, &r.matrix);
        prop_assert_eq!(r.rank, r.pivots.len());
        prop_assert_eq!(m.vstack(&r.matrix).unwrap().rank(), m.rank());
    }

    #[test]
    fn solve_agrees_with_augmented_rank(m in matrix(5), seed in prop::collection::vec(-2i64..=2, 5)) {
        let f = m.field();
        let b = Matrix::from_i64(f, m.rows(), 1, &seed[..m.rows()]);
        let consistent = m.hstack(&b).unwrap().rank() == m.rank();
        match m.solve(&b).unwrap() {
            Some(x) => {
                prop_assert!(consistent);
                prop_assert_eq!(&(&m * &x), &b);
            }
            None => prop_assert!(!consistent),
        }
        let x0 = Matrix::from_i64(f, m.cols(), 1, &seed[..m.cols()]);
        let image = &m * &x0;
        let x = m.solve(&image).unwrap();
        prop_assert!(x.is_some());
        prop_assert_eq!(&(&m * &x.unwrap()), &image);
    }

    #[test]
    fn inverse_exists_iff_determinant_nonzero(m in square(4)) {
        match m.inverse() {
            Some(inv) => {
                prop_assert!(!det(&m).is_zero());
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&inv * &m).is_identity());
            }
            None => prop_assert!(det(&m).is_zero()),
        }
    }

    #[test]
    fn kronecker_and_direct_sum_ranks(a in matrix(3), b in matrix(3)) {
        prop_assume!(a.field() == b.field());
        prop_assert_eq!(a.kronecker(&b).unwrap().rank(), a.rank() * b.rank());
        prop_assert_eq!(a.direct_sum(&b).unwrap().rank(), a.rank() + b.rank());
    }

    #[test]
    fn scalars_form_a_field(f in field(), x in -50i64..50, y in -50i64..50, z in -50i64..50) {
        let (x, y, z) = (f.from_i64(x), f.from_i64(y), f.from_i64(z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if let Some(i) = x.inv() {
            prop_assert!((&x * &i).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
        let back = f.parse_scalar(&(&x * &y).to_string()).unwrap();
        prop_assert_eq!(back, &x * &y);
    }

    #[test]
    fn rationals_parse_back(n in -1000i64..1000, d in 1i64..1000) {
        let q = FieldSpec::Rationals;
        let s = &q.from_i64(n) * &q.from_i64(d).inv().unwrap();
        prop_assert_eq!(q.parse_scalar(&s.to_string()).unwrap(), s.clone());
        prop_assert_eq!(q.parse_scalar(&format!("{n}/{d}")).unwrap(), s);
    }

    #[test]
    fn left_multiplication_is_a_representation(a in algebra(), x in prop::collection::vec(-2i64..=2, 4), y in prop::collection::vec(-2i64..=2, 5)) {
        let (x, y) = (element(&a, &x), element(&a, &y));
        let xy = a.mul(&x, &y);
        prop_assert_eq!(a.left_operator(&xy), &a.left_operator(&x) * &a.left_operator(&y));
        prop_assert_eq!(a.mul(&a.unit().to_vec(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, a.unit()), x);
    }

    #[test]
    fn tensor_algebras_are_algebras(a in algebra(), b in algebra()) {
        prop_assume!(a.field() == b.field());
        let t = tensor_algebra(&a, &b).unwrap();
        prop_assert_eq!(t.dim(), a.dim() * b.dim());
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(t.is_commutative(), a.is_commutative() && b.is_commutative());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn structural_suites_hold_for_any_seed(seed in any::<u64>(), i in 0..Suite::ALL.len()) {
        let suite = Suite::ALL[i];
        prop_assume!(suite != Suite::SemisimpleTensor);
        let report = run_suite(suite, &SampleSpace::standard(), seed, 3, Execution::Sequential).unwrap();
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.witness.to_string()).collect();
        prop_assert!(failed.is_empty(), "{suite} seed {seed}: {failed:?}");
    }
}
