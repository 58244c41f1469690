//! JSON workspaces: named algebras, categories, modules, Freyd objects and morphisms over one field.

use std::collections::BTreeMap;
use std::sync::Arc;

use fincat_core::algebra::{is_semisimple, Algebra};
use fincat_core::freyd::{AddMorphism, CategoryRepr, FreydMorphism, FreydObject, FreydObjectRepr, PresentedCategory};
use fincat_core::linalg::{FieldSpec, Matrix};
use fincat_core::modcat::{Module, ModuleMorphism};
use fincat_core::verify::{AlgebraInstance, CategoryInstance, SampleSpace};
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug)]
pub enum Entity {
    Algebra(Arc<Algebra>),
    Category(Arc<PresentedCategory>),
    Module(Arc<Module>),
    ModuleMorphism(ModuleMorphism),
    Object(Arc<FreydObject>),
    Morphism(FreydMorphism),
}

impl Entity {
    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Algebra(_) => "algebra",
            Entity::Category(_) => "category",
            Entity::Module(_) => "module",
            Entity::ModuleMorphism(_) => "module morphism",
            Entity::Object(_) => "Freyd object",
            Entity::Morphism(_) => "Freyd morphism",
        }
    }
}

#[derive(Debug)]
pub struct Workspace {
    pub field: FieldSpec,
    entities: BTreeMap<String, Entity>,
    /// Algebra and category names in file order.
    algebra_order: Vec<String>,
    category_order: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    field: Option<FieldSpec>,
    #[serde(default)]
    algebras: Map<String, Value>,
    #[serde(default)]
    categories: Map<String, Value>,
    #[serde(default)]
    modules: Map<String, Value>,
    #[serde(default)]
    freyd_objects: Map<String, Value>,
    #[serde(default)]
    morphisms: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    algebra: String,
    dim: usize,
    action: Vec<Matrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    source: String,
    target: String,
    matrix: Option<Matrix>,
    blocks: Option<Vec<Vec<String>>>,
}

impl Workspace {
    pub fn empty(field: FieldSpec) -> Self {
        Workspace { field, entities: BTreeMap::new(), algebra_order: Vec::new(), category_order: Vec::new() }
    }

    pub fn load(path: &str, field_flag: Option<FieldSpec>) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_string(), message: e.to_string() })?;
        Self::parse(&text, field_flag)
    }

    pub fn parse(text: &str, field_flag: Option<FieldSpec>) -> CliResult<Self> {
        let raw: RawWorkspace = serde_json::from_str(text).map_err(|e| CliError::load(e.to_string()))?;
        let field = match (field_flag, raw.field) {
            (Some(flag), Some(file)) if flag != file => {
                return Err(CliError::MixedField { workspace: flag, entity: "the workspace file".into(), found: file })
            }
            (Some(f), _) | (None, Some(f)) => f,
            (None, None) => FieldSpec::Rationals,
        };
        let mut ws = Workspace::empty(field);
        let mut pending: BTreeMap<String, Value> = BTreeMap::new();
        for (name, v) in &raw.algebras {
            pending.insert(name.clone(), v.clone());
        }
        for name in raw.algebras.keys() {
            ws.resolve_algebra(name, &pending, &mut Vec::new())?;
            ws.algebra_order.push(name.clone());
        }
        for (name, v) in &raw.categories {
            let c = ws.load_category(name, v)?;
            ws.insert(name, Entity::Category(Arc::new(c)))?;
            ws.category_order.push(name.clone());
        }
        for (name, v) in &raw.modules {
            let m = ws.load_module(name, v)?;
            ws.insert(name, Entity::Module(Arc::new(m)))?;
        }
        for (name, v) in &raw.freyd_objects {
            let repr: FreydObjectRepr =
                serde_json::from_value(v.clone()).map_err(|e| CliError::load(format!("Freyd object {name}: {e}")))?;
            let cat = ws.category(&repr.category).ok_or_else(|| CliError::load(format!("Freyd object {name}: unknown category {:?}", repr.category)))?;
            let q = FreydObject::from_repr(cat, &repr)?;
            ws.insert(name, Entity::Object(Arc::new(q)))?;
        }
        for (name, v) in &raw.morphisms {
            let e = ws.load_morphism(name, v)?;
            ws.insert(name, e)?;
        }
        Ok(ws)
    }

    fn insert(&mut self, name: &str, e: Entity) -> CliResult<()> {
        if let Some(old) = self.entities.get(name) {
            return Err(CliError::load(format!("name {name:?} is defined twice (already a {})", old.kind())));
        }
        self.entities.insert(name.to_string(), e);
        Ok(())
    }

    fn check_field(&self, entity: &str, found: FieldSpec) -> CliResult<()> {
        if found != self.field {
            return Err(CliError::MixedField { workspace: self.field, entity: entity.to_string(), found });
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Entity> {
        self.entities.get(name)
    }

    pub fn algebra(&self, name: &str) -> Option<Arc<Algebra>> {
        match self.entities.get(name) {
            Some(Entity::Algebra(a)) => Some(a.clone()),
            _ => None,
        }
    }

    pub fn category(&self, name: &str) -> Option<Arc<PresentedCategory>> {
        match self.entities.get(name) {
            Some(Entity::Category(c)) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn category_name(&self, c: &PresentedCategory) -> Option<String> {
        self.category_order.iter().find(|n| self.category(n).is_some_and(|x| *x == *c)).cloned()
    }

    fn resolve_algebra(&mut self, name: &str, pending: &BTreeMap<String, Value>, stack: &mut Vec<String>) -> CliResult<Arc<Algebra>> {
        if let Some(a) = self.algebra(name) {
            return Ok(a);
        }
        if stack.iter().any(|s| s == name) {
            return Err(CliError::load(format!("algebra {name} refers to itself")));
        }
        let v = pending.get(name).ok_or_else(|| CliError::load(format!("unknown algebra {name:?}")))?;
        stack.push(name.to_string());
        let a = match v {
            Value::String(s) => self.construct_algebra(s, pending, stack)?,
            other => {
                let a: Algebra = serde_json::from_value(other.clone()).map_err(|e| CliError::load(format!("algebra {name}: {e}")))?;
                self.check_field(&format!("algebra {name}"), a.field())?;
                a
            }
        };
        stack.pop();
        let a = Arc::new(a);
        self.insert(name, Entity::Algebra(a.clone()))?;
        Ok(a)
    }

    /// `matrix_algebra n`, `group_algebra cyclic n`, `truncated_poly n`,
    /// `upper_triangular n`, `ground`, `product [X, ...]`, or the name of another algebra.
    fn construct_algebra(&mut self, spec: &str, pending: &BTreeMap<String, Value>, stack: &mut Vec<String>) -> CliResult<Algebra> {
        let f = self.field;
        let words: Vec<&str> = spec.split_whitespace().collect();
        let size = |w: Option<&&str>| -> CliResult<usize> {
            w.and_then(|s| s.parse().ok())
                .filter(|&n: &usize| n > 0)
                .ok_or_else(|| CliError::load(format!("expected a positive size in {spec:?}")))
        };
        match words.as_slice() {
            ["matrix_algebra", n] => Ok(Algebra::matrix_algebra(f, size(Some(n))?)),
            ["group_algebra", "cyclic", n] => Ok(Algebra::cyclic_group_algebra(f, size(Some(n))?)),
            ["truncated_poly", n] => Ok(Algebra::truncated_poly(f, size(Some(n))?)),
            ["upper_triangular", n] => Ok(Algebra::upper_triangular(f, size(Some(n))?)),
            ["ground"] => Ok(Algebra::ground(f)),
            [first, ..] if first.starts_with("product") => {
                let inner = spec
                    .trim()
                    .strip_prefix("product")
                    .map(str::trim)
                    .and_then(|r| r.strip_prefix('['))
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| CliError::load(format!("expected product [ ... ] in {spec:?}")))?;
                let factors = split_top_level(inner)
                    .into_iter()
                    .map(|part| {
                        if pending.contains_key(part) || self.algebra(part).is_some() {
                            self.resolve_algebra(part, pending, stack).map(|a| (*a).clone())
                        } else {
                            self.construct_algebra(part, pending, stack)
                        }
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                if factors.is_empty() {
                    return Err(CliError::load("product of no algebras"));
                }
                Ok(Algebra::product(&factors)?)
            }
            [single] if pending.contains_key(*single) => Ok((*self.resolve_algebra(single, pending, stack)?).clone()),
            _ => Err(CliError::load(format!("unknown algebra constructor {spec:?}"))),
        }
    }

    fn load_category(&self, name: &str, v: &Value) -> CliResult<PresentedCategory> {
        match v {
            Value::String(s) => {
                let s = s.trim();
                if let Some(alg) = s.strip_prefix("sigma_algebra") {
                    let alg = alg.trim();
                    let a = self.algebra(alg).ok_or_else(|| CliError::load(format!("category {name}: unknown algebra {alg:?}")))?;
                    Ok(PresentedCategory::sigma_algebra(a))
                } else if let Some(rest) = s.strip_prefix("discrete") {
                    let inner = rest
                        .trim()
                        .strip_prefix('[')
                        .and_then(|r| r.strip_suffix(']'))
                        .ok_or_else(|| CliError::load(format!("category {name}: expected discrete [labels]")))?;
                    let labels: Vec<String> = split_top_level(inner).into_iter().map(|l| l.trim_matches('"').to_string()).collect();
                    if labels.is_empty() {
                        return Err(CliError::load(format!("category {name}: no objects")));
                    }
                    let mut sorted = labels.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != labels.len() {
                        return Err(CliError::load(format!("category {name}: repeated object label")));
                    }
                    Ok(PresentedCategory::discrete(self.field, labels))
                } else {
                    Err(CliError::load(format!("category {name}: unknown shortcut {s:?}")))
                }
            }
            other => {
                let repr: CategoryRepr =
                    serde_json::from_value(other.clone()).map_err(|e| CliError::load(format!("category {name}: {e}")))?;
                self.check_field(&format!("category {name}"), repr.field)?;
                Ok(PresentedCategory::from_repr(&repr)?)
            }
        }
    }

    fn load_module(&self, name: &str, v: &Value) -> CliResult<Module> {
        if let Value::String(s) = v {
            let words: Vec<&str> = s.split_whitespace().collect();
            let alg = |w: &str| self.algebra(w).ok_or_else(|| CliError::load(format!("module {name}: unknown algebra {w:?}")));
            return match words.as_slice() {
                ["regular", a] => Ok(Module::regular(alg(a)?)),
                ["free", a, n] => {
                    let n = n.parse().map_err(|_| CliError::load(format!("module {name}: bad rank {n:?}")))?;
                    Ok(Module::free(alg(a)?, n))
                }
                _ => Err(CliError::load(format!("module {name}: unknown shortcut {s:?}"))),
            };
        }
        let raw: RawModule = serde_json::from_value(v.clone()).map_err(|e| CliError::load(format!("module {name}: {e}")))?;
        let a = self
            .algebra(&raw.algebra)
            .ok_or_else(|| CliError::load(format!("module {name}: unknown algebra {:?}", raw.algebra)))?;
        for m in &raw.action {
            self.check_field(&format!("module {name}"), m.field())?;
        }
        Ok(Module::new(a, raw.dim, raw.action)?)
    }

    fn load_morphism(&self, name: &str, v: &Value) -> CliResult<Entity> {
        let raw: RawMorphism = serde_json::from_value(v.clone()).map_err(|e| CliError::load(format!("morphism {name}: {e}")))?;
        let (s, t) = (self.get(&raw.source), self.get(&raw.target));
        match (s, t, raw.matrix, raw.blocks) {
            (Some(Entity::Module(s)), Some(Entity::Module(t)), Some(m), None) => {
                self.check_field(&format!("morphism {name}"), m.field())?;
                Ok(Entity::ModuleMorphism(ModuleMorphism::new(s.clone(), t.clone(), m)?))
            }
            (Some(Entity::Object(s)), Some(Entity::Object(t)), None, Some(blocks)) => {
                let field = self.field;
                let blocks = blocks
                    .iter()
                    .map(|b| b.iter().map(|x| field.parse_scalar(x)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let rep = AddMorphism::new(s.category().clone(), s.r0().clone(), t.r0().clone(), blocks)?;
                Ok(Entity::Morphism(FreydMorphism::new(s.clone(), t.clone(), rep)?))
            }
            _ => Err(CliError::load(format!(
                "morphism {name}: needs module source and target with a matrix, or Freyd objects with blocks"
            ))),
        }
    }

    /// Algebras in file order, discrete categories, and all pairs of semisimple algebras.
    pub fn sample_space(&self) -> CliResult<SampleSpace> {
        let algebras: Vec<AlgebraInstance> = self
            .algebra_order
            .iter()
            .map(|n| AlgebraInstance::from_arc(n.clone(), self.algebra(n).expect("recorded")))
            .collect();
        let discrete = self
            .category_order
            .iter()
            .filter_map(|n| {
                let c = self.category(n).expect("recorded");
                c.is_discrete().then(|| CategoryInstance { name: n.clone(), category: c })
            })
            .collect();
        let mut semisimple = Vec::new();
        for a in &algebras {
            if matches!(is_semisimple(&a.algebra), Ok(true)) {
                semisimple.push(a.clone());
            }
        }
        let mut pairs = Vec::new();
        for (i, a) in semisimple.iter().enumerate() {
            for b in &semisimple[i + 1..] {
                pairs.push((a.clone(), b.clone()));
            }
        }
        Ok(SampleSpace {
            algebras,
            discrete,
            semisimple_pairs: pairs,
            random_semisimple: false,
            semisimple_field: self.field,
        })
    }
}

/// Splits on commas outside brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts.retain(|p| !p.is_empty());
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> CliResult<Workspace> {
        Workspace::parse(text, None)
    }

    #[test]
    fn constructors_and_forward_references() {
        let ws = load(r#"{"algebras": {"P": "product [A, truncated_poly 2]", "A": "matrix_algebra 2", "B": "A"}}"#).unwrap();
        assert_eq!(ws.algebra("P").unwrap().dim(), 6);
        assert_eq!(ws.algebra("B").unwrap().dim(), 4);
        assert_eq!(ws.field, FieldSpec::Rationals);
    }

    #[test]
    fn bad_workspaces_are_rejected() {
        for text in [
            r#"{"algebras": {"A": "product [B]", "B": "A"}}"#,
            r#"{"algebras": {"A": "matrix_algebra 0"}}"#,
            r#"{"algebras": {"A": "free_lie 3"}}"#,
            r#"{"algebras": {"A": "ground"}, "categories": {"A": "sigma_algebra A"}}"#,
            r#"{"categories": {"D": "discrete [a, a]"}}"#,
            r#"{"categories": {"S": "sigma_algebra nope"}}"#,
            r#"{"functors": {}}"#,
            r#"{"field": "gf:9"}"#,
        ] {
            assert!(load(text).is_err(), "{text}");
        }
    }

    #[test]
    fn field_flag_must_agree_with_the_file() {
        let text = r#"{"field": "gf:7", "algebras": {"k": "ground"}}"#;
        assert!(matches!(Workspace::parse(text, Some(FieldSpec::Rationals)), Err(CliError::MixedField { .. })));
        let ws = Workspace::parse(text, Some(FieldSpec::PrimeField(7))).unwrap();
        assert_eq!(ws.algebra("k").unwrap().field(), FieldSpec::PrimeField(7));
    }

    #[test]
    fn sample_space_pairs_semisimple_algebras() {
        let ws = load(r#"{"algebras": {"k": "ground", "T": "upper_triangular 2", "M": "matrix_algebra 2"}, "categories": {"D": "discrete [x]"}}"#).unwrap();
        let space = ws.sample_space().unwrap();
        assert_eq!(space.algebras.len(), 3);
        assert_eq!(space.discrete.len(), 1);
        let names: Vec<_> = space.semisimple_pairs.iter().map(|(a, b)| (a.name.as_str(), b.name.as_str())).collect();
        assert_eq!(names, [("k", "M")]);
    }
}
