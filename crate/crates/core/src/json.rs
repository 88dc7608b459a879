//! JSON forms of categories, modules, maps and complexes.
//!
//! Matrix entries are strings `"p/q"` (integers may also be plain numbers
//! on input). Matrices with a zero dimension are written as
//! `{"shape": [rows, cols]}`. Maps keyed by object or morphism id are
//! emitted in sorted key order, so equal values serialize to equal bytes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::eicat::{CategoryBuilder, CategoryError, FiniteEICategory};
use crate::exactla::{ExactMatrix, Rational};
use crate::repmod::{CatModule, ChainComplex, ExactnessReport, ModuleError, ModuleHom, Side};
use crate::resolve::ResolutionCertificate;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("category fails validation: {}", .0.join("; "))]
    InvalidCategory(Vec<String>),
    #[error("unknown object id {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism id {0:?}")]
    UnknownMorphism(String),
    #[error("matrix for {morphism}: {detail}")]
    Matrix { morphism: String, detail: String },
    #[error("no matrix given for {0}")]
    MissingAction(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("module fails validation: {}", .0.join("; "))]
    InvalidModule(Vec<String>),
    #[error("inline category differs from the one supplied")]
    CategoryMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Rows(Vec<Vec<Rational>>),
    Shape { shape: [usize; 2] },
}

impl MatrixJson {
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        let (r, c) = m.shape();
        if r == 0 || c == 0 {
            MatrixJson::Shape { shape: [r, c] }
        } else {
            MatrixJson::Rows((0..r).map(|i| m.row(i).to_vec()).collect())
        }
    }

    /// Reads the matrix and checks it has the expected shape.
    pub fn to_matrix(&self, expected: (usize, usize)) -> Result<ExactMatrix, String> {
        let (rows, cols) = expected;
        let found = match self {
            MatrixJson::Shape { shape } => (shape[0], shape[1]),
            MatrixJson::Rows(data) => {
                let width = data.first().map_or(0, Vec::len);
                if data.iter().any(|r| r.len() != width) {
                    return Err("rows have different lengths".into());
                }
                (data.len(), if data.is_empty() { cols } else { width })
            }
        };
        if found != expected {
            return Err(format!("shape {found:?}, expected {expected:?}"));
        }
        Ok(match self {
            MatrixJson::Shape { .. } if rows * cols > 0 => {
                return Err("shape form is only for matrices with a zero dimension".into())
            }
            MatrixJson::Shape { .. } => ExactMatrix::zeros(rows, cols),
            MatrixJson::Rows(data) => ExactMatrix::from_rows(cols, data.clone()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub levels: BTreeMap<String, u32>,
    pub morphisms: Vec<MorphismJson>,
    pub identity: BTreeMap<String, String>,
    /// `[g, f, g∘f]` for every composable pair.
    pub compose: Vec<[String; 3]>,
}

impl CategoryJson {
    pub fn from_category(cat: &FiniteEICategory) -> Self {
        let objects = cat
            .objects()
            .map(|i| cat.object_id(i).to_string())
            .collect();
        let levels = cat
            .objects()
            .filter_map(|i| cat.level(i).map(|l| (cat.object_id(i).to_string(), l)))
            .collect();
        let morphisms = cat
            .morphisms()
            .map(|f| MorphismJson {
                id: cat.morphism_id(f).to_string(),
                src: cat.object_id(cat.src(f)).to_string(),
                dst: cat.object_id(cat.dst(f)).to_string(),
            })
            .collect();
        let identity = cat
            .objects()
            .filter_map(|i| {
                cat.try_identity(i)
                    .map(|e| (cat.object_id(i).to_string(), cat.morphism_id(e).to_string()))
            })
            .collect();
        let mut compose = Vec::new();
        for g in cat.morphisms() {
            for f in cat.morphisms() {
                if let Some(gf) = cat.try_compose(g, f) {
                    compose.push([
                        cat.morphism_id(g).to_string(),
                        cat.morphism_id(f).to_string(),
                        cat.morphism_id(gf).to_string(),
                    ]);
                }
            }
        }
        CategoryJson {
            objects,
            levels,
            morphisms,
            identity,
            compose,
        }
    }

    /// Builds the category without validating it.
    pub fn build_unchecked(&self) -> Result<FiniteEICategory, JsonError> {
        let mut b = CategoryBuilder::new();
        for o in &self.objects {
            b.add_object(o, self.levels.get(o).copied())?;
        }
        for l in self.levels.keys() {
            b.object_index(l)?;
        }
        for m in &self.morphisms {
            let s = b.object_index(&m.src)?;
            let t = b.object_index(&m.dst)?;
            b.add_morphism(&m.id, s, t)?;
        }
        for (o, e) in &self.identity {
            let o = b.object_index(o)?;
            let e = b.morphism_index(e)?;
            b.set_identity(o, e)?;
        }
        for [g, f, gf] in &self.compose {
            let (g, f, gf) = (
                b.morphism_index(g)?,
                b.morphism_index(f)?,
                b.morphism_index(gf)?,
            );
            b.set_composite(g, f, gf)?;
        }
        Ok(b.build())
    }

    pub fn build(&self) -> Result<FiniteEICategory, JsonError> {
        let cat = self.build_unchecked()?;
        let report = cat.validate();
        if !report.is_ok() {
            return Err(JsonError::InvalidCategory(report.messages()));
        }
        Ok(cat)
    }
}

pub fn category_to_json(cat: &FiniteEICategory) -> Value {
    serde_json::to_value(CategoryJson::from_category(cat)).expect("serializable")
}

pub fn category_from_str(text: &str) -> Result<FiniteEICategory, JsonError> {
    let parsed: CategoryJson = serde_json::from_str(text)?;
    parsed.build()
}

/// Where a module's category comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(Box<CategoryJson>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CategoryRef>,
    pub side: Side,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub action: BTreeMap<String, MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Value>,
}

impl ModuleJson {
    pub fn from_module(m: &CatModule) -> Self {
        let cat = m.cat();
        ModuleJson {
            category: None,
            side: m.side(),
            dims: cat
                .objects()
                .map(|i| (cat.object_id(i).to_string(), m.dim(i)))
                .collect(),
            action: cat
                .morphisms()
                .map(|f| {
                    (
                        cat.morphism_id(f).to_string(),
                        MatrixJson::from_matrix(m.action(f)),
                    )
                })
                .collect(),
            provenance: None,
        }
    }

    /// Reads the module over `cat` and validates it. Objects missing from
    /// `dims` have dimension 0; identities and matrices with a zero
    /// dimension may be left out of `action`.
    pub fn build(&self, cat: &Arc<FiniteEICategory>) -> Result<CatModule, JsonError> {
        if let Some(CategoryRef::Inline(inline)) = &self.category {
            if inline.build_unchecked()? != **cat {
                return Err(JsonError::CategoryMismatch);
            }
        }
        let mut dims = vec![0; cat.num_objects()];
        for (id, &d) in &self.dims {
            let i = cat
                .object(id)
                .map_err(|_| JsonError::UnknownObject(id.clone()))?;
            dims[i.0] = d;
        }
        for id in self.action.keys() {
            cat.morphism(id)
                .map_err(|_| JsonError::UnknownMorphism(id.clone()))?;
        }
        let action = cat
            .morphisms()
            .map(|f| {
                let id = cat.morphism_id(f);
                let (s, t) = (cat.src(f), cat.dst(f));
                let shape = match self.side {
                    Side::Left => (dims[t.0], dims[s.0]),
                    Side::Right => (dims[s.0], dims[t.0]),
                };
                match self.action.get(id) {
                    Some(m) => m.to_matrix(shape).map_err(|detail| JsonError::Matrix {
                        morphism: id.to_string(),
                        detail,
                    }),
                    None if shape.0 * shape.1 == 0 => Ok(ExactMatrix::zeros(shape.0, shape.1)),
                    None if cat.try_identity(s) == Some(f) => Ok(ExactMatrix::identity(shape.0)),
                    None => Err(JsonError::MissingAction(id.to_string())),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = CatModule::new(cat.clone(), self.side, dims, action)?;
        let report = m.validate();
        if !report.is_ok() {
            return Err(JsonError::InvalidModule(report.messages()));
        }
        Ok(m)
    }
}

pub fn module_to_json(m: &CatModule, provenance: Option<Value>) -> Value {
    let mut j = ModuleJson::from_module(m);
    j.provenance = provenance;
    serde_json::to_value(j).expect("serializable")
}

pub fn module_from_str(text: &str, cat: &Arc<FiniteEICategory>) -> Result<CatModule, JsonError> {
    let parsed: ModuleJson = serde_json::from_str(text)?;
    parsed.build(cat)
}

fn blocks_json(h: &ModuleHom) -> BTreeMap<String, MatrixJson> {
    let cat = h.source().cat();
    cat.objects()
        .map(|i| {
            (
                cat.object_id(i).to_string(),
                MatrixJson::from_matrix(h.block(i)),
            )
        })
        .collect()
}

pub fn hom_to_json(h: &ModuleHom) -> Value {
    json!({ "blocks": blocks_json(h) })
}

fn hom_from_value(
    v: &Value,
    source: &CatModule,
    target: &CatModule,
) -> Result<ModuleHom, JsonError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct HomJson {
        blocks: BTreeMap<String, MatrixJson>,
    }
    let parsed: HomJson = serde_json::from_value(v.clone())?;
    let cat = source.cat();
    for id in parsed.blocks.keys() {
        cat.object(id)
            .map_err(|_| JsonError::UnknownObject(id.clone()))?;
    }
    let blocks = cat
        .objects()
        .map(|i| {
            let id = cat.object_id(i);
            let shape = (target.dim(i), source.dim(i));
            match parsed.blocks.get(id) {
                Some(m) => m.to_matrix(shape).map_err(|detail| JsonError::Matrix {
                    morphism: format!("block {id}"),
                    detail,
                }),
                None if shape.0 * shape.1 == 0 => Ok(ExactMatrix::zeros(shape.0, shape.1)),
                None => Err(JsonError::MissingAction(format!("block {id}"))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ModuleHom::new(source.clone(), target.clone(), blocks)?)
}

pub fn complex_to_json(c: &ChainComplex) -> Value {
    json!({
        "side": c.side(),
        "terms": c.terms().iter().map(|t| module_to_json(t, None)).collect::<Vec<_>>(),
        "maps": c.maps().iter().map(hom_to_json).collect::<Vec<_>>(),
    })
}

pub fn complex_from_str(
    text: &str,
    cat: &Arc<FiniteEICategory>,
) -> Result<ChainComplex, JsonError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct ComplexJson {
        #[serde(default)]
        side: Option<Side>,
        terms: Vec<ModuleJson>,
        maps: Vec<Value>,
    }
    let parsed: ComplexJson = serde_json::from_str(text)?;
    let terms = parsed
        .terms
        .iter()
        .map(|t| t.build(cat))
        .collect::<Result<Vec<_>, _>>()?;
    if let (Some(side), Some(first)) = (parsed.side, terms.first()) {
        first.require_side(side)?;
    }
    if parsed.maps.len() + 1 != terms.len().max(1) {
        return Err(ModuleError::Arity {
            expected: terms.len().saturating_sub(1),
            found: parsed.maps.len(),
        }
        .into());
    }
    let maps = parsed
        .maps
        .iter()
        .enumerate()
        .map(|(t, v)| hom_from_value(v, &terms[t], &terms[t + 1]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChainComplex::new(terms, maps)?)
}

fn dims_by_id(cat: &FiniteEICategory, dims: &[usize]) -> BTreeMap<String, usize> {
    cat.objects()
        .map(|i| (cat.object_id(i).to_string(), dims[i.0]))
        .collect()
}

pub fn exactness_to_json(cat: &FiniteEICategory, r: &ExactnessReport) -> Value {
    json!({
        "exact": r.is_exact(),
        "homology": r.positions.iter().map(|p| json!({
            "position": p.position,
            "dims": dims_by_id(cat, &p.dims),
        })).collect::<Vec<_>>(),
        "not_a_complex": r.not_a_complex,
    })
}

pub fn certificate_to_json(cat: &FiniteEICategory, c: &ResolutionCertificate) -> Value {
    json!({
        "passed": c.passed(),
        "exactness": exactness_to_json(cat, &c.exactness),
        "non_injective_terms": c.non_injective,
        "length": c.length,
        "closure_size": c.closure_size,
        "length_below_closure_size": c.length_ok(),
        "failures": c.failures(),
    })
}

/// Dimension table `{object: dim}`.
pub fn dims_to_json(m: &CatModule) -> Value {
    json!(dims_by_id(m.cat(), m.dims()))
}

/// Hex SHA-256 of the compact serialization. Object keys of a `Value` are
/// sorted, so this is canonical.
pub fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

/// Digest of a module's structure, independent of provenance.
pub fn module_digest(m: &CatModule) -> String {
    digest(&module_to_json(m, None))
}

pub fn category_digest(cat: &FiniteEICategory) -> String {
    digest(&category_to_json(cat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::InstanceSpec;
    use crate::repmod::{free_module, simple_module, zero_module};
    use crate::resolve::{injective_resolution, verify_resolution};

    fn fi(level: usize) -> Arc<FiniteEICategory> {
        Arc::new(InstanceSpec::fi(None, level).build().unwrap())
    }

    #[test]
    fn category_round_trip() {
        for spec in [InstanceSpec::fi(Some("Z/2"), 2), InstanceSpec::vi(2, 2)] {
            let c = spec.build().unwrap();
            let text = category_to_json(&c).to_string();
            let back = category_from_str(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(category_digest(&back), category_digest(&c));
        }
    }

    #[test]
    fn invalid_category_is_rejected() {
        let c = fi(1);
        let mut j = CategoryJson::from_category(&c);
        j.compose.pop();
        assert!(matches!(j.build(), Err(JsonError::InvalidCategory(_))));
        j.objects.push("0".into());
        assert!(matches!(j.build(), Err(JsonError::Category(_))));
    }

    #[test]
    fn module_round_trip_with_zero_shapes() {
        let c = fi(2);
        let m = free_module(&c, Side::Left, c.object("1").unwrap());
        let v = module_to_json(&m, Some(json!({"construction": "free"})));
        let e0 = c.morphism_id(c.identity(c.object("0").unwrap()));
        assert_eq!(v["action"][e0], json!({"shape": [0, 0]}));
        let back = module_from_str(&v.to_string(), &c).unwrap();
        assert!(back.same(&m));
        let z = zero_module(&c, Side::Right);
        let back = module_from_str(&module_to_json(&z, None).to_string(), &c).unwrap();
        assert!(back.same(&z));
    }

    #[test]
    fn sparse_module_input() {
        let c = fi(2);
        let text = r#"{"side": "left", "dims": {"1": 1}, "action": {}}"#;
        let m = module_from_str(text, &c).unwrap();
        assert!(m.same(&simple_module(&c, Side::Left, c.object("1").unwrap())));
        let bad = r#"{"side": "left", "dims": {"1": 1}, "action": {"0-1:|": [["1"]]}}"#;
        assert!(matches!(
            module_from_str(bad, &c),
            Err(JsonError::Matrix { .. })
        ));
        let partial = r#"{"side": "left", "dims": {"1": 1, "2": 1}, "action": {"1-2:1|0": [["1"]], "1-2:2|0": [["2"]]}}"#;
        assert!(matches!(
            module_from_str(partial, &c),
            Err(JsonError::MissingAction(_))
        ));
        let broken = r#"{"side": "left", "dims": {"1": 1, "2": 1},
            "action": {"1-2:1|0": [["1"]], "1-2:2|0": [["2"]], "2-2:2,1|0,0": [["1"]]}}"#;
        assert!(matches!(
            module_from_str(broken, &c),
            Err(JsonError::InvalidModule(_))
        ));
    }

    #[test]
    fn complex_round_trip() {
        let c = fi(2);
        let s1 = simple_module(&c, Side::Left, c.object("1").unwrap());
        let res = injective_resolution(&s1).unwrap();
        let text = complex_to_json(&res.complex).to_string();
        let back = complex_from_str(&text, &c).unwrap();
        assert_eq!(back.len(), res.complex.len());
        assert!(verify_resolution(&back).passed());
        let cert = certificate_to_json(&c, &verify_resolution(&back));
        assert_eq!(cert["length"], json!(1));
        assert_eq!(cert["passed"], json!(true));
    }
}
