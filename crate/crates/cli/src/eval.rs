//! Evaluation of expressions against a workspace, and result summaries.

use std::sync::Arc;

use fincat_core::algebra::{is_semisimple, quotient_algebra, radical, tensor_algebra, Algebra, AlgebraMorphism, Ideal};
use fincat_core::freyd::{
    box_tensor, box_tensor_morphisms, coequalizer, cokernel, coproduct, eval_morphism,
    eval_to_modules, hom_dimension, image, kernel, tensor_presented, AddMorphism, CategoryShape, FreydMorphism,
    FreydObject, PresentedCategory,
};
use fincat_core::modcat::{self, hom_space, restrict_morphism, restrict_scalars, tensor_modules, tensor_morphisms, Module, ModuleMorphism};
use fincat_core::semisimple::{catalogue_simples, decompose_over_discrete, Decomposition, SimpleCatalogue};
use fincat_core::verify::Check;
use serde_json::{json, Map, Value as Json};

use crate::error::{CliError, CliResult};
use crate::expr::{Expr, ExprKind};
use crate::workspace::{Entity, Workspace};

#[derive(Clone, Debug)]
pub enum Value {
    Algebra(Arc<Algebra>),
    Ideal(Ideal),
    AlgebraMorphism(AlgebraMorphism),
    Module(Arc<Module>),
    ModuleMorphism(ModuleMorphism),
    Category(Arc<PresentedCategory>),
    Object(Arc<FreydObject>),
    Morphism(FreydMorphism),
    Simples(Box<SimpleCatalogue>),
    Decomposition(Box<Decomposition>),
    Int(usize),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Algebra(_) => "algebra",
            Value::Ideal(_) => "ideal",
            Value::AlgebraMorphism(_) => "algebra morphism",
            Value::Module(_) => "module",
            Value::ModuleMorphism(_) => "module morphism",
            Value::Category(_) => "category",
            Value::Object(_) => "Freyd object",
            Value::Morphism(_) => "Freyd morphism",
            Value::Simples(_) => "simple catalogue",
            Value::Decomposition(_) => "decomposition",
            Value::Int(_) => "integer",
        }
    }
}

const VERBS: &[(&str, &str)] = &[
    ("tensor", "tensor(x, y): algebras, modules, module morphisms, Freyd objects or morphisms"),
    ("box", "box(Q, P): Freyd objects or morphisms"),
    ("quotient", "quotient(A, I): algebra by an ideal"),
    ("proj", "proj(A, I): the projection A -> A/I"),
    ("unit", "unit(A): the structure map k -> A"),
    ("radical", "radical(A)"),
    ("restrict", "restrict(f, M): restriction of scalars of a module or module morphism"),
    ("kernel", "kernel(f)"),
    ("cokernel", "cokernel(f)"),
    ("image", "image(f)"),
    ("coproduct", "coproduct(X, Y)"),
    ("coeq", "coeq(f, g)"),
    ("eval", "eval(Q) or eval(f) over an algebra category"),
    ("simples", "simples(A)"),
    ("decompose", "decompose(Q) over a discrete category"),
    ("id", "id(X): identity of a module or Freyd object"),
    ("regular", "regular(A)"),
    ("free", "free(A, n)"),
    ("sigma", "sigma(A): the one-object category of A"),
    ("hom", "hom(X, Y): dimension of the hom space"),
];

pub struct Evaluator<'a> {
    pub ws: &'a Workspace,
}

fn err<T>(e: &Expr, message: impl Into<String>) -> CliResult<T> {
    Err(CliError::Eval { column: e.column, message: message.into() })
}

fn core<T>(e: &Expr, r: fincat_core::Result<T>) -> CliResult<T> {
    r.map_err(|x| CliError::Precondition { column: e.column, message: x.to_string() })
}

impl Evaluator<'_> {
    pub fn eval(&self, e: &Expr) -> CliResult<Value> {
        match &e.kind {
            ExprKind::Int(n) => Ok(Value::Int(*n)),
            ExprKind::Name(n) => match self.ws.get(n) {
                Some(Entity::Algebra(a)) => Ok(Value::Algebra(a.clone())),
                Some(Entity::Category(c)) => Ok(Value::Category(c.clone())),
                Some(Entity::Module(m)) => Ok(Value::Module(m.clone())),
                Some(Entity::ModuleMorphism(f)) => Ok(Value::ModuleMorphism(f.clone())),
                Some(Entity::Object(q)) => Ok(Value::Object(q.clone())),
                Some(Entity::Morphism(f)) => Ok(Value::Morphism(f.clone())),
                None => err(e, format!("unknown name {n:?}")),
            },
            ExprKind::Call(verb, args) => {
                let Some((_, usage)) = VERBS.iter().find(|(v, _)| v == verb) else {
                    let known: Vec<&str> = VERBS.iter().map(|(v, _)| *v).collect();
                    return err(e, format!("unknown verb {verb:?}; known verbs: {}", known.join(", ")));
                };
                let vals = args.iter().map(|a| self.eval(a)).collect::<CliResult<Vec<_>>>()?;
                self.apply(e, verb, usage, &vals)
            }
        }
    }

    fn apply(&self, e: &Expr, verb: &str, usage: &str, v: &[Value]) -> CliResult<Value> {
        use Value as V;
        let bad = || -> CliResult<Value> {
            let kinds: Vec<&str> = v.iter().map(Value::kind).collect();
            err(e, format!("{verb} does not apply to ({}); usage: {usage}", kinds.join(", ")))
        };
        Ok(match (verb, v) {
            ("tensor", [V::Algebra(a), V::Algebra(b)]) => V::Algebra(Arc::new(core(e, tensor_algebra(a, b))?)),
            ("tensor", [V::Module(m), V::Module(n)]) => V::Module(Arc::new(core(e, tensor_modules(m, n))?)),
            ("tensor", [V::ModuleMorphism(f), V::ModuleMorphism(g)]) => V::ModuleMorphism(core(e, tensor_morphisms(f, g))?),
            ("tensor" | "box", [V::Object(q), V::Object(p)]) => V::Object(Arc::new(core(e, box_tensor(q, p))?.1)),
            ("tensor" | "box", [V::Morphism(f), V::Morphism(g)]) => {
                let t = Arc::new(core(e, tensor_presented(f.category(), g.category()))?);
                V::Morphism(core(e, box_tensor_morphisms(&t, f, g))?)
            }
            ("quotient", [V::Algebra(a), V::Ideal(i)]) => V::Algebra(core(e, quotient_algebra(a, i))?.0),
            ("proj", [V::Algebra(a), V::Ideal(i)]) => V::AlgebraMorphism(core(e, quotient_algebra(a, i))?.1),
            ("unit", [V::Algebra(a)]) => V::AlgebraMorphism(AlgebraMorphism::unit_inclusion(a.clone())),
            ("radical", [V::Algebra(a)]) => V::Ideal(core(e, radical(a))?),
            ("restrict", [V::AlgebraMorphism(f), V::Module(m)]) => V::Module(Arc::new(core(e, restrict_scalars(f, m))?)),
            ("restrict", [V::AlgebraMorphism(f), V::ModuleMorphism(g)]) => V::ModuleMorphism(core(e, restrict_morphism(f, g))?),
            ("kernel", [V::ModuleMorphism(f)]) => V::Module(modcat::kernel(f).0),
            ("kernel", [V::Morphism(f)]) => V::Object(core(e, kernel(f))?.0),
            ("cokernel", [V::ModuleMorphism(f)]) => V::Module(modcat::cokernel(f).0),
            ("cokernel", [V::Morphism(f)]) => V::Object(core(e, cokernel(f))?.0),
            ("image", [V::ModuleMorphism(f)]) => V::Module(modcat::image(f).0),
            ("image", [V::Morphism(f)]) => V::Object(core(e, image(f))?.0),
            ("coproduct", [V::Module(m), V::Module(n)]) => V::Module(Arc::new(core(e, m.direct_sum(n))?)),
            ("coproduct", [V::Object(q), V::Object(p)]) => V::Object(core(e, coproduct(q, p))?.0),
            ("coeq", [V::Morphism(f), V::Morphism(g)]) => V::Object(core(e, coequalizer(f, g))?.0),
            ("coeq", [V::ModuleMorphism(f), V::ModuleMorphism(g)]) => {
                if f.source() != g.source() || f.target() != g.target() {
                    return err(e, "coeq needs parallel morphisms");
                }
                let diff = core(e, ModuleMorphism::new(f.source().clone(), f.target().clone(), f.matrix() - g.matrix()))?;
                V::Module(modcat::cokernel(&diff).0)
            }
            ("eval", [V::Object(q)]) => V::Module(core(e, eval_to_modules(q))?),
            ("eval", [V::Morphism(f)]) => V::ModuleMorphism(core(e, eval_morphism(f))?),
            ("simples", [V::Algebra(a)]) => V::Simples(Box::new(core(e, catalogue_simples(a))?)),
            ("decompose", [V::Object(q)]) => V::Decomposition(Box::new(core(e, decompose_over_discrete(q))?)),
            ("id", [V::Module(m)]) => V::ModuleMorphism(ModuleMorphism::identity(m.clone())),
            ("id", [V::Object(q)]) => V::Morphism(FreydMorphism::identity(q.clone())),
            ("regular", [V::Algebra(a)]) => V::Module(Arc::new(Module::regular(a.clone()))),
            ("free", [V::Algebra(a), V::Int(n)]) => V::Module(Arc::new(Module::free(a.clone(), *n))),
            ("sigma", [V::Algebra(a)]) => V::Category(Arc::new(PresentedCategory::sigma_algebra(a.clone()))),
            ("hom", [V::Module(m), V::Module(n)]) => V::Int(core(e, hom_space(m, n))?.len()),
            ("hom", [V::Object(q), V::Object(p)]) => V::Int(core(e, hom_dimension(q, p))?),
            _ => return bad(),
        })
    }
}

fn strings(v: &[fincat_core::linalg::Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn check(name: &str, passed: bool, witness: Json) -> Check {
    Check { name: name.to_string(), passed, witness }
}

impl Workspace {
    fn category_label(&self, c: &Arc<PresentedCategory>) -> String {
        self.category_name(c).unwrap_or_else(|| "derived".to_string())
    }
}

/// Summary statistics and self-checks for a computed value.
pub fn summarize(ws: &Workspace, v: &Value) -> (Json, Vec<Check>) {
    match v {
        Value::Algebra(a) => {
            let semisimple = is_semisimple(a).ok();
            (
                json!({"kind": "algebra", "dim": a.dim(), "commutative": a.is_commutative(), "semisimple": semisimple, "algebra": **a}),
                vec![check("algebra axioms", a.validate().is_ok(), json!({"dim": a.dim()}))],
            )
        }
        Value::Ideal(i) => {
            let a = i.parent();
            let two_sided = i.basis().iter().all(|x| {
                (0..a.dim()).all(|k| {
                    let e = a.basis_element(k);
                    i.contains(&a.mul(&e, x)) && i.contains(&a.mul(x, &e))
                })
            });
            (
                json!({"kind": "ideal", "dim": i.dim(), "basis": i.basis().iter().map(|b| strings(b)).collect::<Vec<_>>()}),
                vec![check("two-sided ideal", two_sided, json!({"dim": i.dim()}))],
            )
        }
        Value::AlgebraMorphism(f) => {
            let ok = AlgebraMorphism::new(f.source().clone(), f.target().clone(), f.matrix().clone()).is_ok();
            (
                json!({"kind": "algebra morphism", "source_dim": f.source().dim(), "target_dim": f.target().dim(), "surjective": f.is_surjective(), "matrix": f.matrix()}),
                vec![check("multiplicative and unital", ok, Json::Null)],
            )
        }
        Value::Module(m) => (
            json!({"kind": "module", "dim": m.dim(), "algebra_dim": m.algebra().dim(), "module": **m}),
            vec![check("module axioms", m.validate().is_ok(), json!({"dim": m.dim()}))],
        ),
        Value::ModuleMorphism(f) => {
            let ok = ModuleMorphism::new(f.source().clone(), f.target().clone(), f.matrix().clone()).is_ok();
            (
                json!({
                    "kind": "module morphism",
                    "source_dim": f.source().dim(),
                    "target_dim": f.target().dim(),
                    "rank": f.rank(),
                    "injective": f.is_injective(),
                    "surjective": f.is_surjective(),
                    "matrix": f.matrix(),
                }),
                vec![check("intertwines the actions", ok, json!({"rank": f.rank()}))],
            )
        }
        Value::Category(c) => {
            let shape = match c.shape() {
                CategoryShape::SigmaAlgebra(_) => "algebra",
                CategoryShape::Discrete => "discrete",
                CategoryShape::General => "general",
            };
            (json!({"kind": "category", "objects": c.objects(), "shape": shape}), vec![check("composition laws", c.validate().is_ok(), Json::Null)])
        }
        Value::Object(q) => {
            let cat = q.category();
            let dims: Map<String, Json> = cat.objects().iter().enumerate().map(|(c, l)| (l.clone(), json!(q.dim_at(c)))).collect();
            let p = q.presentation();
            let ok = AddMorphism::new(cat.clone(), p.source().clone(), p.target().clone(), p.blocks().to_vec()).is_ok();
            (
                json!({
                    "kind": "Freyd object",
                    "generators": q.r0().len(),
                    "relations": q.r1().len(),
                    "dims": dims,
                    "is_zero": q.is_zero(),
                    "object": q.to_repr(&ws.category_label(cat)),
                }),
                vec![check("presentation well-formed", ok, Json::Null)],
            )
        }
        Value::Morphism(f) => {
            let cat = f.category();
            let ranks: Map<String, Json> = cat.objects().iter().enumerate().map(|(c, l)| (l.clone(), json!(f.rank_at(c)))).collect();
            let ok = FreydMorphism::new(f.source().clone(), f.target().clone(), f.rep().clone()).is_ok();
            (
                json!({"kind": "Freyd morphism", "ranks": ranks, "is_zero": f.is_zero(), "mono": f.is_mono(), "epi": f.is_epi(), "iso": f.is_iso()}),
                vec![check("respects the relations", ok, Json::Null)],
            )
        }
        Value::Simples(cat) => {
            let report = cat.report(&format!("dim {}", cat.algebra.dim()));
            let c = &report.consistency;
            let checks = vec![
                check("regular decomposition", c.regular_decomposition, json!({"multiplicities": cat.multiplicities})),
                check("multiplicity equals dimension", c.multiplicity_equals_dim, Json::Null),
                check("endomorphisms are scalars", c.endomorphisms_are_scalars, Json::Null),
            ];
            (json!({"kind": "simples", "count": cat.len(), "dims": cat.simple_dims, "catalogue": report}), checks)
        }
        Value::Decomposition(d) => (
            json!({"kind": "decomposition", "multiplicities": d.multiplicities}),
            vec![check("decomposition map is an isomorphism", d.isomorphism.is_iso(), Json::Null)],
        ),
        Value::Int(n) => (json!({"kind": "dimension", "value": n}), Vec::new()),
    }
}
