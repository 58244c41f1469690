//! Seeded property suites with deterministic reports.

mod suites;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::freyd::PresentedCategory;
use crate::linalg::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Linalg,
    AlgebraLaws,
    ModcatExactness,
    RestrictionExact,
    FreydColimits,
    FreydKernel,
    EvalEquivalence,
    BoxRightExact,
    BoxEvalSquare,
    AbelianWitness,
    SemisimpleTensor,
    DiscreteDecompose,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Linalg,
        Suite::AlgebraLaws,
        Suite::ModcatExactness,
        Suite::RestrictionExact,
        Suite::FreydColimits,
        Suite::FreydKernel,
        Suite::EvalEquivalence,
        Suite::BoxRightExact,
        Suite::BoxEvalSquare,
        Suite::AbelianWitness,
        Suite::SemisimpleTensor,
        Suite::DiscreteDecompose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Linalg => "linalg",
            Suite::AlgebraLaws => "algebra-laws",
            Suite::ModcatExactness => "modcat-exactness",
            Suite::RestrictionExact => "restriction-exact",
            Suite::FreydColimits => "freyd-colimits",
            Suite::FreydKernel => "freyd-kernel",
            Suite::EvalEquivalence => "eval-equivalence",
            Suite::BoxRightExact => "box-rightexact",
            Suite::BoxEvalSquare => "box-eval-square",
            Suite::AbelianWitness => "abelian-witness",
            Suite::SemisimpleTensor => "semisimple-tensor",
            Suite::DiscreteDecompose => "discrete-decompose",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraInstance {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub category: Arc<PresentedCategory>,
}

impl AlgebraInstance {
    pub fn new(name: impl Into<String>, algebra: Algebra) -> Self {
        Self::from_arc(name, Arc::new(algebra))
    }

    pub fn from_arc(name: impl Into<String>, algebra: Arc<Algebra>) -> Self {
        let category = Arc::new(PresentedCategory::sigma_algebra(algebra.clone()));
        AlgebraInstance { name: name.into(), algebra, category }
    }
}

#[derive(Clone, Debug)]
pub struct CategoryInstance {
    pub name: String,
    pub category: Arc<PresentedCategory>,
}

/// The instances a suite draws from.
#[derive(Clone, Debug)]
pub struct SampleSpace {
    pub algebras: Vec<AlgebraInstance>,
    pub discrete: Vec<CategoryInstance>,
    /// Pairs of split semisimple algebras, used in order before random ones.
    pub semisimple_pairs: Vec<(AlgebraInstance, AlgebraInstance)>,
    /// Draw further semisimple pairs at random once the listed ones are used up.
    pub random_semisimple: bool,
    pub semisimple_field: FieldSpec,
}

impl SampleSpace {
    /// `k[x]/(x^2)`, `T_2` and `Q[C_3]` over `Q`, `M_2` over `GF(7)`, a three-object
    /// discrete category, and `(k x M_2, M_3)` followed by random semisimple pairs.
    pub fn standard() -> Self {
        let q = FieldSpec::Rationals;
        let gf7 = FieldSpec::prime(7).expect("7 is prime");
        let kxm2 = Algebra::product(&[Algebra::ground(q), Algebra::matrix_algebra(q, 2)]).expect("same field");
        SampleSpace {
            algebras: vec![
                AlgebraInstance::new("k[x]/(x^2)", Algebra::truncated_poly(q, 2)),
                AlgebraInstance::new("T2", Algebra::upper_triangular(q, 2)),
                AlgebraInstance::new("Q[C3]", Algebra::cyclic_group_algebra(q, 3)),
                AlgebraInstance::new("M2(GF7)", Algebra::matrix_algebra(gf7, 2)),
            ],
            discrete: vec![CategoryInstance {
                name: "{a,b,c}".into(),
                category: Arc::new(PresentedCategory::discrete(q, vec!["a".into(), "b".into(), "c".into()])),
            }],
            semisimple_pairs: vec![(AlgebraInstance::new("k x M2", kxm2), AlgebraInstance::new("M3", Algebra::matrix_algebra(q, 3)))],
            random_semisimple: true,
            semisimple_field: q,
        }
    }

    /// The same shapes, all over one field.
    pub fn standard_over(field: FieldSpec) -> Self {
        let kxm2 = Algebra::product(&[Algebra::ground(field), Algebra::matrix_algebra(field, 2)]).expect("same field");
        SampleSpace {
            algebras: vec![
                AlgebraInstance::new("k[x]/(x^2)", Algebra::truncated_poly(field, 2)),
                AlgebraInstance::new("T2", Algebra::upper_triangular(field, 2)),
                AlgebraInstance::new("k[C3]", Algebra::cyclic_group_algebra(field, 3)),
                AlgebraInstance::new("M2", Algebra::matrix_algebra(field, 2)),
            ],
            discrete: vec![CategoryInstance {
                name: "{a,b,c}".into(),
                category: Arc::new(PresentedCategory::discrete(field, vec!["a".into(), "b".into(), "c".into()])),
            }],
            semisimple_pairs: vec![(AlgebraInstance::new("k x M2", kxm2), AlgebraInstance::new("M3", Algebra::matrix_algebra(field, 3)))],
            random_semisimple: true,
            semisimple_field: field,
        }
    }

    fn require(&self, suite: Suite) -> Result<()> {
        let empty = match suite {
            Suite::Linalg => false,
            Suite::AlgebraLaws
            | Suite::ModcatExactness
            | Suite::RestrictionExact
            | Suite::FreydKernel
            | Suite::EvalEquivalence
            | Suite::BoxEvalSquare => self.algebras.is_empty(),
            Suite::FreydColimits | Suite::AbelianWitness | Suite::BoxRightExact => {
                self.algebras.is_empty() && self.discrete.is_empty()
            }
            Suite::SemisimpleTensor => self.semisimple_pairs.is_empty() && !self.random_semisimple,
            Suite::DiscreteDecompose => self.discrete.is_empty(),
        };
        if empty {
            return Err(Error::Degenerate(format!("no instances for suite {suite} in the sample space")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Parallel,
    Sequential,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<Check>,
    pub timing: Timing,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Everything except timing.
    pub fn body(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "seed": self.seed,
            "samples": self.samples,
            "checks": self.checks,
        })
    }

    pub fn body_string(&self) -> String {
        serde_json::to_string_pretty(&self.body()).expect("json values serialize")
    }
}

/// Runs `f(i)` for `i < n`, keeping results in index order.
pub fn run_indexed<T: Send>(n: usize, exec: Execution, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

pub fn run_suite(suite: Suite, space: &SampleSpace, seed: u64, samples: usize, exec: Execution) -> Result<Report> {
    if samples == 0 {
        return Err(Error::Degenerate("empty sample space: zero samples requested".into()));
    }
    space.require(suite)?;
    let start = Instant::now();
    let checks = run_indexed(samples, exec, |i| suites::run_sample(suite, space, seed, i));
    Ok(Report {
        command: format!("verify {suite} --seed {seed} --samples {samples}"),
        seed,
        samples,
        checks,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() as u64 },
    })
}
