//! Cocycle tables as JSON documents.
//!
//! A document records the degree, argument count, coefficient module name,
//! and the full table, one entry per argument tuple:
//!
//! ```json
//! {"arity": 2, "degree": 2, "module": "X",
//!  "table": [{"args": [0, 0], "value": [0]}, ...]}
//! ```
//!
//! Written documents list tuples in lexicographic order with sorted object
//! keys, so equal cochains serialize byte for byte equal. Values must fit
//! in signed 64-bit integers in both directions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cochain::{arity, check_degree, InhCochain};
use crate::error::{Result, TateError};
use crate::gmodule::{GModule, ModElement};
use crate::group::Elt;

/// A syntactically valid cocycle document, not yet tied to a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleDoc {
    pub degree: i64,
    pub module: String,
    pub entries: Vec<(Vec<usize>, Vec<i64>)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCocycle {
    degree: i64,
    arity: usize,
    module: String,
    table: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    args: Vec<u64>,
    value: Vec<serde_json::Number>,
}

fn spec_err(context: impl Into<String>) -> TateError {
    TateError::Spec {
        context: context.into(),
    }
}

/// Syntax, shape, and range checks that need no group or module: the
/// degree is in range and consistent with the argument count, and every
/// value is a signed 64-bit integer.
pub fn parse_cocycle(text: &str) -> Result<CocycleDoc> {
    let raw: RawCocycle = serde_json::from_str(text)?;
    check_degree(raw.degree)?;
    if raw.arity != arity(raw.degree) {
        return Err(spec_err(format!(
            "arity {} does not match degree {} (expected {})",
            raw.arity,
            raw.degree,
            arity(raw.degree)
        )));
    }
    let value_rank = raw.table.first().map_or(0, |e| e.value.len());
    let mut entries = Vec::with_capacity(raw.table.len());
    for (i, e) in raw.table.iter().enumerate() {
        if e.args.len() != raw.arity {
            return Err(spec_err(format!(
                "table entry {i}: {} arguments, expected {}",
                e.args.len(),
                raw.arity
            )));
        }
        if e.value.len() != value_rank {
            return Err(spec_err(format!(
                "table entry {i}: value length {} differs from entry 0 ({value_rank})",
                e.value.len()
            )));
        }
        let args = e.args.iter().map(|&a| a as usize).collect();
        let value = e
            .value
            .iter()
            .map(|n| n.as_i64().ok_or(TateError::ValueRange))
            .collect::<Result<Vec<i64>>>()?;
        entries.push((args, value));
    }
    Ok(CocycleDoc {
        degree: raw.degree,
        module: raw.module,
        entries,
    })
}

/// Ties a document to its module: every argument is an element index, the
/// table covers every tuple exactly once, and values have the module rank.
pub fn cocycle_from_doc(doc: &CocycleDoc, module: &Arc<GModule>) -> Result<InhCochain> {
    let g = module.group();
    let a = arity(doc.degree);
    let count = g.tuple_count(a);
    if count > usize::MAX as u128 || doc.entries.len() as u128 != count {
        return Err(spec_err(format!(
            "table has {} entries, expected {}",
            doc.entries.len(),
            count
        )));
    }
    let mut c = InhCochain::zero(module, doc.degree)?;
    let mut seen = vec![false; count as usize];
    for (args, value) in &doc.entries {
        for &x in args {
            if x >= g.order() {
                return Err(TateError::ElementRange {
                    index: x,
                    order: g.order(),
                });
            }
        }
        if value.len() != module.rank() {
            return Err(TateError::CoordLength {
                got: value.len(),
                rank: module.rank(),
            });
        }
        let tuple: Vec<Elt> = args.iter().map(|&x| Elt(x)).collect();
        let idx = g.tuple_index(&tuple);
        if seen[idx] {
            return Err(spec_err(format!("duplicate table entry for {args:?}")));
        }
        seen[idx] = true;
        c.set(&tuple, &ModElement::from_i64(module, value)?);
    }
    Ok(c)
}

pub fn read_cocycle(text: &str, module: &Arc<GModule>) -> Result<InhCochain> {
    cocycle_from_doc(&parse_cocycle(text)?, module)
}

/// Serializes with tuples in lexicographic order. Fails if any canonical
/// coordinate does not fit in a signed 64-bit integer.
pub fn cocycle_to_json(c: &InhCochain, module_name: &str) -> Result<Value> {
    let g = c.module().group();
    let mut table = Vec::new();
    for t in g.tuples(c.arity()) {
        let value = c
            .get(&t)
            .coords()
            .iter()
            .map(|x| x.to_i64().ok_or(TateError::ValueRange))
            .collect::<Result<Vec<i64>>>()?;
        let args: Vec<u64> = t.iter().map(|e| e.0 as u64).collect();
        table.push(json!({ "args": args, "value": value }));
    }
    Ok(json!({
        "degree": c.degree(),
        "arity": c.arity(),
        "module": module_name,
        "table": table,
    }))
}

pub fn write_cocycle(c: &InhCochain, module_name: &str) -> Result<String> {
    Ok(cocycle_to_json(c, module_name)?.to_string())
}

/// Big values that survive canonicalization are reported, not truncated.
pub fn value_in_range(x: &BigInt) -> bool {
    x.to_i64().is_some()
}
