//! Problem-descriptor files: a strict JSON schema covering every
//! evaluator, loaded with eager structural validation and JSON-pointer
//! error locations.
//!
//! Rationals in files are exact: integer JSON numbers, strings like
//! `"3/4"`, `"-2"`, or `"0.25"` (converted exactly), or objects
//! `{"num": ..., "den": ...}`. Floating-point JSON numbers are rejected.
//! Unknown object keys are rejected everywhere.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::algebroid::{Anchor, Presentation, Representation};
use crate::bundle::{Bundle, Context};
use crate::expr::parse_bundle_expr;
use crate::index::{FoliationDescriptor, IndexError, IntegrationFunctional, LeafSpec};
use crate::rational::{int, parse_rational, Rat};

/// Errors from reading, shaping, or validating a descriptor file.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("validation error at {pointer}: {message}")]
    Validation { pointer: String, message: String },
}

fn schema(pointer: &str, message: impl Into<String>) -> DescriptorError {
    DescriptorError::Schema {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

fn validation(pointer: &str, message: impl Into<String>) -> DescriptorError {
    DescriptorError::Validation {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

/// A fully-shaped problem statement, ready for its evaluator.
#[derive(Clone, Debug)]
pub enum ProblemDescriptor {
    IdentityCheck {
        rank: u32,
        cutoff: u32,
        /// Optional falsification control: override the degree-`d` Todd
        /// coefficient on the right-hand side.
        perturb: Option<(u32, Rat)>,
    },
    Cohomology {
        presentation: Presentation,
        representation: Representation,
    },
    AlgebroidIndex {
        ctx: Arc<Context>,
        g: Bundle,
        e: Bundle,
        p: u32,
        functional: IntegrationFunctional,
        cutoff: u32,
    },
    FoliatedIndex {
        foliation: FoliationDescriptor,
        bundle: String,
        p: u32,
        normalize: bool,
    },
    Euler {
        foliation: FoliationDescriptor,
    },
    Positivity {
        foliation: FoliationDescriptor,
        bundle: String,
    },
}

impl ProblemDescriptor {
    /// The `kind` string this descriptor was declared with.
    pub fn kind(&self) -> &'static str {
        match self {
            ProblemDescriptor::IdentityCheck { .. } => "identity-check",
            ProblemDescriptor::Cohomology { .. } => "cohomology",
            ProblemDescriptor::AlgebroidIndex { .. } => "algebroid-index",
            ProblemDescriptor::FoliatedIndex { .. } => "foliated-index",
            ProblemDescriptor::Euler { .. } => "euler",
            ProblemDescriptor::Positivity { .. } => "positivity",
        }
    }
}

/// Read and parse a descriptor file.
pub fn load_descriptor(path: impl AsRef<Path>) -> Result<ProblemDescriptor, DescriptorError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| DescriptorError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_descriptor_text(&text)
}

/// Parse descriptor JSON from a string.
pub fn parse_descriptor_text(text: &str) -> Result<ProblemDescriptor, DescriptorError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| schema("/", format!("invalid JSON: {e}")))?;
    descriptor_from_value(&value)
}

/// Shape a parsed JSON value into a descriptor.
pub fn descriptor_from_value(value: &Value) -> Result<ProblemDescriptor, DescriptorError> {
    let obj = as_object(value, "/")?;
    let kind = as_string(get(obj, "kind", "/")?, "/kind")?;
    match kind.as_str() {
        "identity-check" => identity_check(obj),
        "cohomology" => cohomology(obj),
        "algebroid-index" => algebroid_index(obj),
        "foliated-index" => foliated_index(obj),
        "euler" => euler(obj),
        "positivity" => positivity(obj),
        other => Err(schema(
            "/kind",
            format!(
                "unknown kind '{other}'; expected identity-check, cohomology, \
                 algebroid-index, foliated-index, euler, or positivity"
            ),
        )),
    }
}

// ---------------------------------------------------------------------
// Shared JSON shaping helpers. Pointers are JSON-pointer-style paths.
// ---------------------------------------------------------------------

fn as_object<'a>(v: &'a Value, pointer: &str) -> Result<&'a Map<String, Value>, DescriptorError> {
    v.as_object()
        .ok_or_else(|| schema(pointer, "expected an object"))
}

fn as_array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>, DescriptorError> {
    v.as_array()
        .ok_or_else(|| schema(pointer, "expected an array"))
}

fn as_string(v: &Value, pointer: &str) -> Result<String, DescriptorError> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| schema(pointer, "expected a string"))
}

fn as_bool(v: &Value, pointer: &str) -> Result<bool, DescriptorError> {
    v.as_bool()
        .ok_or_else(|| schema(pointer, "expected a boolean"))
}

fn get<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    pointer: &str,
) -> Result<&'a Value, DescriptorError> {
    obj.get(key)
        .ok_or_else(|| schema(pointer, format!("missing required field '{key}'")))
}

fn reject_unknown(
    obj: &Map<String, Value>,
    allowed: &[&str],
    pointer: &str,
) -> Result<(), DescriptorError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(schema(pointer, format!("unknown field '{key}'")));
        }
    }
    Ok(())
}

fn as_uint(v: &Value, pointer: &str) -> Result<u64, DescriptorError> {
    if let Some(n) = v.as_u64() {
        return Ok(n);
    }
    if v.as_i64().is_some() {
        return Err(validation(pointer, "must be a non-negative integer"));
    }
    if v.is_number() {
        return Err(schema(
            pointer,
            "floating-point numbers are not accepted; use an integer",
        ));
    }
    Err(schema(pointer, "expected a non-negative integer"))
}

fn as_u32(v: &Value, pointer: &str) -> Result<u32, DescriptorError> {
    let n = as_uint(v, pointer)?;
    u32::try_from(n).map_err(|_| validation(pointer, "value is too large"))
}

fn as_rat(v: &Value, pointer: &str) -> Result<Rat, DescriptorError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(int(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Rat::from_integer(BigInt::from(u)))
            } else {
                Err(schema(
                    pointer,
                    "floating-point numbers are not accepted; write the rational as a \
                     string (\"3/4\", \"0.25\") or as {\"num\": ..., \"den\": ...}",
                ))
            }
        }
        Value::String(s) => parse_rational(s).map_err(|e| validation(pointer, e.to_string())),
        Value::Object(obj) => {
            reject_unknown(obj, &["num", "den"], pointer)?;
            let num = rat_component(get(obj, "num", pointer)?, &format!("{pointer}/num"))?;
            let den = rat_component(get(obj, "den", pointer)?, &format!("{pointer}/den"))?;
            if den == BigInt::from(0) {
                return Err(validation(
                    &format!("{pointer}/den"),
                    "denominator must be nonzero",
                ));
            }
            Ok(Rat::new(num, den))
        }
        _ => Err(schema(
            pointer,
            "expected a rational (integer, string, or {num, den} object)",
        )),
    }
}

fn rat_component(v: &Value, pointer: &str) -> Result<BigInt, DescriptorError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(schema(pointer, "expected an integer"))
            }
        }
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| validation(pointer, "expected an integer string")),
        _ => Err(schema(pointer, "expected an integer")),
    }
}

fn as_rat_matrix(v: &Value, pointer: &str) -> Result<Vec<Vec<Rat>>, DescriptorError> {
    let rows = as_array(v, pointer)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_pointer = format!("{pointer}/{i}");
        let cells = as_array(row, &row_pointer)?;
        let mut parsed = Vec::with_capacity(cells.len());
        for (j, cell) in cells.iter().enumerate() {
            parsed.push(as_rat(cell, &format!("{row_pointer}/{j}"))?);
        }
        out.push(parsed);
    }
    if let Some(first) = out.first() {
        if out.iter().any(|row| row.len() != first.len()) {
            return Err(validation(pointer, "matrix rows must have equal lengths"));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Per-kind shapers.
// ---------------------------------------------------------------------

fn identity_check(obj: &Map<String, Value>) -> Result<ProblemDescriptor, DescriptorError> {
    reject_unknown(obj, &["kind", "rank", "cutoff", "perturb"], "/")?;
    let rank = as_u32(get(obj, "rank", "/")?, "/rank")?;
    if rank == 0 {
        return Err(validation("/rank", "rank must be at least 1"));
    }
    let cutoff = match obj.get("cutoff") {
        Some(v) => as_u32(v, "/cutoff")?,
        None => 2 * rank,
    };
    if cutoff < rank {
        return Err(validation(
            "/cutoff",
            format!("cutoff must be at least the rank ({rank})"),
        ));
    }
    let perturb = match obj.get("perturb") {
        Some(v) => {
            let pobj = as_object(v, "/perturb")?;
            reject_unknown(pobj, &["degree", "coefficient"], "/perturb")?;
            let degree = as_u32(get(pobj, "degree", "/perturb")?, "/perturb/degree")?;
            let coefficient = as_rat(
                get(pobj, "coefficient", "/perturb")?,
                "/perturb/coefficient",
            )?;
            Some((degree, coefficient))
        }
        None => None,
    };
    Ok(ProblemDescriptor::IdentityCheck {
        rank,
        cutoff,
        perturb,
    })
}

fn cohomology(obj: &Map<String, Value>) -> Result<ProblemDescriptor, DescriptorError> {
    reject_unknown(
        obj,
        &[
            "kind",
            "dim",
            "brackets",
            "anchor",
            "representation",
            "complex_structure",
        ],
        "/",
    )?;
    let dim = as_u32(get(obj, "dim", "/")?, "/dim")? as usize;
    if dim == 0 {
        return Err(validation("/dim", "dimension must be at least 1"));
    }

    let mut brackets = Vec::new();
    if let Some(v) = obj.get("brackets") {
        for (n, entry) in as_array(v, "/brackets")?.iter().enumerate() {
            let entry_pointer = format!("/brackets/{n}");
            let parts = as_array(entry, &entry_pointer)?;
            if parts.len() != 3 {
                return Err(schema(&entry_pointer, "expected [i, j, [[k, coeff], ...]]"));
            }
            let i = as_u32(&parts[0], &format!("{entry_pointer}/0"))? as usize;
            let j = as_u32(&parts[1], &format!("{entry_pointer}/1"))? as usize;
            for (pos, idx) in [(0, i), (1, j)] {
                if idx == 0 || idx > dim {
                    return Err(validation(
                        &format!("{entry_pointer}/{pos}"),
                        format!("generator index must lie in 1..={dim}"),
                    ));
                }
            }
            if i >= j {
                return Err(validation(
                    &entry_pointer,
                    "bracket entries need i < j; the antisymmetric part is implied",
                ));
            }
            let mut terms = Vec::new();
            for (t, term) in as_array(&parts[2], &format!("{entry_pointer}/2"))?
                .iter()
                .enumerate()
            {
                let term_pointer = format!("{entry_pointer}/2/{t}");
                let pair = as_array(term, &term_pointer)?;
                if pair.len() != 2 {
                    return Err(schema(&term_pointer, "expected [k, coeff]"));
                }
                let k = as_u32(&pair[0], &format!("{term_pointer}/0"))? as usize;
                if k == 0 || k > dim {
                    return Err(validation(
                        &format!("{term_pointer}/0"),
                        format!("generator index must lie in 1..={dim}"),
                    ));
                }
                let coeff = as_rat(&pair[1], &format!("{term_pointer}/1"))?;
                terms.push((k, coeff));
            }
            brackets.push((i, j, terms));
        }
    }

    let anchor = match obj.get("anchor") {
        None => Anchor::Point,
        Some(Value::String(s)) if s == "point" => Anchor::Point,
        Some(Value::String(_)) => {
            return Err(schema("/anchor", "expected \"point\" or a matrix"));
        }
        Some(v) => {
            let matrix = as_rat_matrix(v, "/anchor")?;
            Anchor::ParallelizableConstant(matrix)
        }
    };

    let presentation = Presentation::from_brackets(dim, &brackets, anchor)
        .map_err(|e| validation("/anchor", e.to_string()))?;
    let presentation = match obj.get("complex_structure") {
        Some(v) => {
            let matrix = as_rat_matrix(v, "/complex_structure")?;
            presentation
                .with_complex_structure(matrix)
                .map_err(|e| validation("/complex_structure", e.to_string()))?
        }
        None => presentation,
    };

    let representation = match obj.get("representation") {
        None => Representation::trivial(dim),
        Some(v) => {
            let robj = as_object(v, "/representation")?;
            reject_unknown(robj, &["matrices"], "/representation")?;
            let matrices_value = get(robj, "matrices", "/representation")?;
            let entries = as_array(matrices_value, "/representation/matrices")?;
            if entries.len() != dim {
                return Err(validation(
                    "/representation/matrices",
                    format!(
                        "expected {dim} connection matrices, found {}",
                        entries.len()
                    ),
                ));
            }
            let mut matrices = Vec::with_capacity(entries.len());
            for (i, m) in entries.iter().enumerate() {
                matrices.push(as_rat_matrix(m, &format!("/representation/matrices/{i}"))?);
            }
            Representation::new(matrices)
                .map_err(|e| validation("/representation/matrices", e.to_string()))?
        }
    };

    Ok(ProblemDescriptor::Cohomology {
        presentation,
        representation,
    })
}

/// Parse a standalone bundle table `{"bundles": [{"name": ..., "rank":
/// ...}, ...]}` into a context — the format of the bundle file accepted
/// by the series-expansion command.
pub fn parse_bundle_table_text(text: &str) -> Result<Arc<Context>, DescriptorError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| schema("/", format!("invalid JSON: {e}")))?;
    let obj = as_object(&value, "/")?;
    reject_unknown(obj, &["bundles"], "/")?;
    bundle_table(obj)
}

/// Read and parse a bundle-table file.
pub fn load_bundle_table(path: impl AsRef<Path>) -> Result<Arc<Context>, DescriptorError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| DescriptorError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_bundle_table_text(&text)
}

fn bundle_table(obj: &Map<String, Value>) -> Result<Arc<Context>, DescriptorError> {
    let mut pairs = Vec::new();
    for (i, entry) in as_array(get(obj, "bundles", "/")?, "/bundles")?
        .iter()
        .enumerate()
    {
        let pointer = format!("/bundles/{i}");
        let bobj = as_object(entry, &pointer)?;
        reject_unknown(bobj, &["name", "rank"], &pointer)?;
        let name = as_string(get(bobj, "name", &pointer)?, &format!("{pointer}/name"))?;
        let rank = as_u32(get(bobj, "rank", &pointer)?, &format!("{pointer}/rank"))?;
        pairs.push((name, rank));
    }
    let refs: Vec<(&str, u32)> = pairs.iter().map(|(n, r)| (n.as_str(), *r)).collect();
    Context::new(refs).map_err(|e| validation("/bundles", e.to_string()))
}

fn algebroid_index(obj: &Map<String, Value>) -> Result<ProblemDescriptor, DescriptorError> {
    reject_unknown(
        obj,
        &["kind", "bundles", "g", "E", "p", "functional", "cutoff"],
        "/",
    )?;
    let ctx = bundle_table(obj)?;

    let g = bundle_field(obj, "g", &ctx)?;
    let e = bundle_field(obj, "E", &ctx)?;
    let p = as_u32(get(obj, "p", "/")?, "/p")?;

    let rank = g
        .rank(&ctx)
        .map_err(|err| validation("/g", err.to_string()))?;

    let fobj = as_object(get(obj, "functional", "/")?, "/functional")?;
    reject_unknown(fobj, &["top_degree", "values"], "/functional")?;
    let top_degree = as_u32(
        get(fobj, "top_degree", "/functional")?,
        "/functional/top_degree",
    )?;
    if top_degree != rank {
        return Err(validation(
            "/functional/top_degree",
            format!("must equal the rank of g ({rank})"),
        ));
    }
    let values_obj = as_object(get(fobj, "values", "/functional")?, "/functional/values")?;
    let mut values = Vec::new();
    for (mono, v) in values_obj {
        let pointer = format!("/functional/values/{mono}");
        values.push((mono.clone(), as_rat(v, &pointer)?));
    }
    let value_refs: Vec<(&str, Rat)> = values
        .iter()
        .map(|(m, r)| (m.as_str(), r.clone()))
        .collect();
    let functional = IntegrationFunctional::new(Arc::clone(&ctx), top_degree, &value_refs)
        .map_err(|e| {
            let pointer = match &e {
                IndexError::Monomial(err) => format!("/functional/values/{}", err.monomial),
                IndexError::MonomialDegree { monomial, .. } => {
                    format!("/functional/values/{monomial}")
                }
                _ => "/functional".to_string(),
            };
            validation(&pointer, e.to_string())
        })?;

    let cutoff = match obj.get("cutoff") {
        Some(v) => as_u32(v, "/cutoff")?,
        None => rank,
    };

    Ok(ProblemDescriptor::AlgebroidIndex {
        ctx,
        g,
        e,
        p,
        functional,
        cutoff,
    })
}

fn bundle_field(
    obj: &Map<String, Value>,
    key: &str,
    ctx: &Arc<Context>,
) -> Result<Bundle, DescriptorError> {
    let pointer = format!("/{key}");
    let text = as_string(get(obj, key, "/")?, &pointer)?;
    let expr = parse_bundle_expr(&text).map_err(|e| validation(&pointer, e.to_string()))?;
    let bundle = expr
        .resolve()
        .map_err(|e| validation(&pointer, e.to_string()))?;
    bundle
        .rank(ctx)
        .map_err(|e| validation(&pointer, e.to_string()))?;
    Ok(bundle)
}

const FOLIATION_KEYS: &[&str] = &["leaf_dim", "leaves", "bundle_degrees", "normalization"];

fn foliation_fields(obj: &Map<String, Value>) -> Result<FoliationDescriptor, DescriptorError> {
    let leaf_dim = match obj.get("leaf_dim") {
        Some(v) => {
            let d = as_u32(v, "/leaf_dim")?;
            if d == 0 {
                return Err(validation("/leaf_dim", "leaf dimension must be at least 1"));
            }
            d
        }
        None => 1,
    };

    let mut leaves = Vec::new();
    for (i, entry) in as_array(get(obj, "leaves", "/")?, "/leaves")?
        .iter()
        .enumerate()
    {
        let pointer = format!("/leaves/{i}");
        let leaf = match entry {
            Value::Array(parts) => {
                if parts.len() != 2 {
                    return Err(schema(&pointer, "expected [genus, weight]"));
                }
                let genus = as_u32(&parts[0], &format!("{pointer}/genus"))?;
                let weight = as_rat(&parts[1], &format!("{pointer}/weight"))?;
                LeafSpec::compact(genus, weight)
            }
            Value::Object(lobj) => {
                reject_unknown(lobj, &["compact", "genus", "weight"], &pointer)?;
                let compact = match lobj.get("compact") {
                    Some(v) => as_bool(v, &format!("{pointer}/compact"))?,
                    None => true,
                };
                let genus = match lobj.get("genus") {
                    Some(v) => Some(as_u32(v, &format!("{pointer}/genus"))?),
                    None => None,
                };
                let weight = match lobj.get("weight") {
                    Some(v) => as_rat(v, &format!("{pointer}/weight"))?,
                    None => Rat::from_integer(BigInt::from(0)),
                };
                if compact {
                    if genus.is_none() {
                        return Err(validation(
                            &format!("{pointer}/genus"),
                            "compact leaves need a genus",
                        ));
                    }
                } else {
                    if genus.is_some() {
                        return Err(validation(
                            &format!("{pointer}/genus"),
                            "non-compact leaves cannot carry a genus",
                        ));
                    }
                    if weight != int(0) {
                        return Err(validation(
                            &format!("{pointer}/weight"),
                            "non-compact leaves must have weight 0",
                        ));
                    }
                }
                LeafSpec {
                    compact,
                    genus,
                    weight,
                }
            }
            _ => return Err(schema(&pointer, "expected [genus, weight] or an object")),
        };
        if leaf.weight < int(0) {
            return Err(validation(
                &format!("{pointer}/weight"),
                "weight must be non-negative",
            ));
        }
        leaves.push(leaf);
    }

    let mut bundle_degrees = BTreeMap::new();
    if let Some(v) = obj.get("bundle_degrees") {
        for (name, degrees_value) in as_object(v, "/bundle_degrees")? {
            let pointer = format!("/bundle_degrees/{name}");
            let entries = as_array(degrees_value, &pointer)?;
            if entries.len() != leaves.len() {
                return Err(validation(
                    &pointer,
                    format!(
                        "expected one degree per leaf ({}), found {}",
                        leaves.len(),
                        entries.len()
                    ),
                ));
            }
            let mut degrees = Vec::with_capacity(entries.len());
            for (i, d) in entries.iter().enumerate() {
                degrees.push(as_rat(d, &format!("{pointer}/{i}"))?);
            }
            bundle_degrees.insert(name.clone(), degrees);
        }
    }

    let normalization = match obj.get("normalization") {
        Some(v) => {
            let r = as_rat(v, "/normalization")?;
            if r <= int(0) {
                return Err(validation("/normalization", "must be positive"));
            }
            r
        }
        None => Rat::from_integer(BigInt::from(1)),
    };

    FoliationDescriptor::new(leaf_dim, leaves, bundle_degrees, normalization)
        .map_err(|e| validation("/", e.to_string()))
}

fn bundle_name_field(
    obj: &Map<String, Value>,
    foliation: &FoliationDescriptor,
) -> Result<String, DescriptorError> {
    let name = as_string(get(obj, "bundle", "/")?, "/bundle")?;
    if !foliation.bundle_degrees().contains_key(&name) {
        return Err(validation(
            "/bundle",
            format!("bundle '{name}' has no entry in bundle_degrees"),
        ));
    }
    Ok(name)
}

fn foliated_index(obj: &Map<String, Value>) -> Result<ProblemDescriptor, DescriptorError> {
    let mut allowed = vec!["kind", "bundle", "p", "normalize"];
    allowed.extend_from_slice(FOLIATION_KEYS);
    reject_unknown(obj, &allowed, "/")?;
    let foliation = foliation_fields(obj)?;
    let bundle = bundle_name_field(obj, &foliation)?;
    let p = as_u32(get(obj, "p", "/")?, "/p")?;
    let normalize = match obj.get("normalize") {
        Some(v) => as_bool(v, "/normalize")?,
        None => false,
    };
    Ok(ProblemDescriptor::FoliatedIndex {
        foliation,
        bundle,
        p,
        normalize,
    })
}

fn euler(obj: &Map<String, Value>) -> Result<ProblemDescriptor, DescriptorError> {
    let mut allowed = vec!["kind"];
    allowed.extend_from_slice(FOLIATION_KEYS);
    reject_unknown(obj, &allowed, "/")?;
    let foliation = foliation_fields(obj)?;
    Ok(ProblemDescriptor::Euler { foliation })
}

fn positivity(obj: &Map<String, Value>) -> Result<ProblemDescriptor, DescriptorError> {
    let mut allowed = vec!["kind", "bundle"];
    allowed.extend_from_slice(FOLIATION_KEYS);
    reject_unknown(obj, &allowed, "/")?;
    let foliation = foliation_fields(obj)?;
    let bundle = bundle_name_field(obj, &foliation)?;
    Ok(ProblemDescriptor::Positivity { foliation, bundle })
}
