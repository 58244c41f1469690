//! Seeded random instances for property suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{quotient_algebra, radical, Algebra, AlgebraMorphism, Ideal};
use crate::error::Result;
use crate::freyd::{hom_basis, AddMorphism, AddObject, FreydMorphism, FreydObject, PresentedCategory};
use crate::linalg::{vector, FieldSpec, Matrix, Scalar};
use crate::modcat::{spin, Module, ModuleMorphism, ShortExactSequence};

/// Independent stream for sample `index` under `seed`.
pub fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn small_scalar(field: FieldSpec, rng: &mut impl Rng, bound: i64) -> Scalar {
    field.from_i64(rng.gen_range(-bound..=bound))
}

/// Mostly sparse: zero, a signed basis vector, or a random combination.
pub fn sparse_vector(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    if n == 0 {
        return Vec::new();
    }
    match rng.gen_range(0..10) {
        0..=2 => vector::zero(field, n),
        3..=5 => {
            let mut v = vector::zero(field, n);
            v[rng.gen_range(0..n)] = field.from_i64(if rng.gen_bool(0.5) { 1 } else { -1 });
            v
        }
        _ => (0..n)
            .map(|_| if rng.gen_bool(0.5) { small_scalar(field, rng, 2) } else { field.zero() })
            .collect(),
    }
}

pub fn dense_vector(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..n).map(|_| small_scalar(field, rng, 3)).collect()
}

pub fn random_matrix(field: FieldSpec, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    // a random low-rank part keeps kernels and inconsistent systems common
    let rank = rng.gen_range(0..=rows.min(cols));
    let left = Matrix::from_fn(field, rows, rank, |_, _| small_scalar(field, rng, 3));
    let right = Matrix::from_fn(field, rank, cols, |_, _| small_scalar(field, rng, 3));
    &left * &right
}

pub fn random_add_object(cat: &PresentedCategory, min: usize, max: usize, rng: &mut impl Rng) -> AddObject {
    let n = rng.gen_range(min..=max);
    AddObject::new((0..n).map(|_| rng.gen_range(0..cat.object_count())).collect())
}

pub fn random_add_morphism(cat: &Arc<PresentedCategory>, s: &AddObject, t: &AddObject, rng: &mut impl Rng) -> AddMorphism {
    let field = cat.field();
    let blocks = s
        .summands()
        .iter()
        .flat_map(|&a| t.summands().iter().map(move |&b| (a, b)))
        .map(|(a, b)| sparse_vector(field, cat.hom_dim(a, b), rng))
        .collect::<Vec<_>>();
    AddMorphism::new(cat.clone(), s.clone(), t.clone(), blocks).expect("shapes follow the category")
}

/// A presentation with 1..=max_gens generators and 0..=max_rels relations.
pub fn random_freyd_object(cat: &Arc<PresentedCategory>, max_gens: usize, max_rels: usize, rng: &mut impl Rng) -> FreydObject {
    let r0 = random_add_object(cat, 1, max_gens, rng);
    let r1 = random_add_object(cat, 0, max_rels, rng);
    FreydObject::new(random_add_morphism(cat, &r1, &r0, rng))
}

/// A random combination of a basis of `Hom(q, q')`.
pub fn random_freyd_morphism(q: &Arc<FreydObject>, qp: &Arc<FreydObject>, rng: &mut impl Rng) -> Result<FreydMorphism> {
    let basis = hom_basis(q, qp)?;
    Ok(random_combination(&basis, rng).unwrap_or_else(|| FreydMorphism::zero(q.clone(), qp.clone())))
}

pub fn random_combination(basis: &[FreydMorphism], rng: &mut impl Rng) -> Option<FreydMorphism> {
    let first = basis.first()?;
    let field = first.category().field();
    let mut acc = FreydMorphism::zero(first.source().clone(), first.target().clone());
    for b in basis {
        acc = acc.add(&b.scale(&small_scalar(field, rng, 2))).expect("parallel");
    }
    Some(acc)
}

/// A random morphism between random objects; the pair of objects is resampled
/// a few times to avoid a zero hom space.
pub fn random_morphism_between_random_objects(cat: &Arc<PresentedCategory>, rng: &mut impl Rng) -> Result<FreydMorphism> {
    for _ in 0..4 {
        let q = Arc::new(random_freyd_object(cat, 2, 2, rng));
        let qp = Arc::new(random_freyd_object(cat, 2, 2, rng));
        let basis = hom_basis(&q, &qp)?;
        if let Some(phi) = random_combination(&basis, rng) {
            return Ok(phi);
        }
    }
    let q = Arc::new(random_freyd_object(cat, 2, 2, rng));
    Ok(FreydMorphism::identity(q))
}

/// A quotient of a free module of rank 1..=2 by a random submodule.
pub fn random_module(a: &Arc<Algebra>, rng: &mut impl Rng) -> Arc<Module> {
    let free = Arc::new(Module::free(a.clone(), rng.gen_range(1..=2)));
    let gens: Vec<Vec<Scalar>> = (0..rng.gen_range(0..=2)).map(|_| sparse_vector(a.field(), free.dim(), rng)).collect();
    let sub = spin(&free, &gens);
    crate::modcat::quotient(&free, &sub).0
}

/// `0 -> spin(v) -> m -> m / spin(v) -> 0` for a random module `m`.
pub fn random_ses(a: &Arc<Algebra>, rng: &mut impl Rng) -> ShortExactSequence {
    let m = random_module(a, rng);
    let gens: Vec<Vec<Scalar>> = (0..rng.gen_range(0..=2)).map(|_| dense_vector(a.field(), m.dim(), rng)).collect();
    ShortExactSequence::from_submodule(&m, &spin(&m, &gens))
}

pub fn random_module_morphism(m: &Arc<Module>, n: &Arc<Module>, rng: &mut impl Rng) -> Result<ModuleMorphism> {
    let basis = crate::modcat::hom_space(m, n)?;
    let field = m.algebra().field();
    let mut acc = Matrix::zeros(field, n.dim(), m.dim());
    for b in &basis {
        acc = &acc + &b.scale(&small_scalar(field, rng, 2));
    }
    Ok(ModuleMorphism::new(m.clone(), n.clone(), acc)?)
}

/// An algebra morphism `f: A -> B` into the given algebra `b` or out of it:
/// an inner automorphism, a quotient projection, or the unit inclusion.
pub fn random_algebra_morphism(b: &Arc<Algebra>, rng: &mut impl Rng) -> Result<AlgebraMorphism> {
    let field = b.field();
    match rng.gen_range(0..3) {
        0 => {
            for _ in 0..8 {
                let u = dense_vector(field, b.dim(), rng);
                if b.inverse(&u).is_some() {
                    return AlgebraMorphism::conjugation(b.clone(), &u);
                }
            }
            Ok(AlgebraMorphism::identity(b.clone()))
        }
        1 => {
            let ideal = match radical(b) {
                Ok(r) if !r.is_zero() => r,
                _ => Ideal::generated_by(b.clone(), vec![sparse_vector(field, b.dim(), rng)])?,
            };
            match quotient_algebra(b, &ideal) {
                Ok((_, pi)) => Ok(pi),
                Err(_) => Ok(AlgebraMorphism::identity(b.clone())),
            }
        }
        _ => Ok(AlgebraMorphism::unit_inclusion(b.clone())),
    }
}

/// A product of 1..=max_factors matrix algebras of size 1..=3 with dimension at most `max_dim`.
pub fn random_split_semisimple(field: FieldSpec, max_factors: usize, max_dim: usize, rng: &mut impl Rng) -> Algebra {
    loop {
        let k = rng.gen_range(1..=max_factors);
        let sizes: Vec<usize> = (0..k).map(|_| *[1usize, 1, 2, 2, 3].choose(rng).expect("nonempty")).collect();
        if sizes.iter().map(|n| n * n).sum::<usize>() <= max_dim {
            let factors: Vec<Algebra> = sizes.iter().map(|&n| Algebra::matrix_algebra(field, n)).collect();
            return if factors.len() == 1 {
                factors.into_iter().next().expect("one factor")
            } else {
                Algebra::product(&factors).expect("same field")
            };
        }
    }
}
