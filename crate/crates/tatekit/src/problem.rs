//! TOML problem descriptions: one group and any number of named
//! coefficient modules over it.
//!
//! ```toml
//! [group]
//! kind = "cyclic"        # "cyclic" | "product" | "table"
//! n = 4
//!
//! [module.X]
//! kind = "lattice"       # "trivial_Z" | "trivial_Z_mod" | "lattice"
//!                        # | "lattice_mod" | "regular_ZG" | "tensor"
//! action_sigma = [[-1]]  # generator action, cyclic groups only
//! ```
//!
//! A lattice can also give one `action` matrix per group element, in
//! element order. Relations are given as a list of relation vectors.
//! Tensor modules name two previously declared modules, in any order of
//! declaration, as `left` and `right`.
//!
//! Every shape and law violation is reported with the module name; TOML
//! syntax errors keep their line and column.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Result, TateError};
use crate::gmodule::{tensor_module, GModule};
use crate::group::FiniteGroup;
use crate::linalg::IntMatrix;

/// Largest group order accepted from a problem description.
pub const MAX_ORDER: u128 = 64;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    group: RawGroup,
    #[serde(default)]
    module: BTreeMap<String, RawModule>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    kind: String,
    n: Option<u64>,
    orders: Option<Vec<u64>>,
    table: Option<Vec<Vec<u64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    kind: String,
    m: Option<u64>,
    action: Option<Vec<Vec<Vec<i64>>>>,
    action_sigma: Option<Vec<Vec<i64>>>,
    relations: Option<Vec<Vec<i64>>>,
    left: Option<String>,
    right: Option<String>,
}

/// A parsed and validated problem: the group and its named modules.
#[derive(Debug)]
pub struct ProblemSpec {
    group: Arc<FiniteGroup>,
    modules: BTreeMap<String, Arc<GModule>>,
}

impl ProblemSpec {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn module(&self, name: &str) -> Result<&Arc<GModule>> {
        self.modules.get(name).ok_or_else(|| TateError::Spec {
            context: format!(
                "unknown module {:?}; defined modules are [{}]",
                name,
                self.modules
                    .keys()
                    .map(|k| k.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        })
    }

    pub fn module_names(&self) -> impl Iterator<Item = &str> {
        self.modules.keys().map(|k| k.as_str())
    }
}

fn spec_err(context: impl Into<String>) -> TateError {
    TateError::Spec {
        context: context.into(),
    }
}

fn build_group(raw: &RawGroup) -> Result<Arc<FiniteGroup>> {
    let order_guard = |order: u128| {
        if order > MAX_ORDER {
            Err(TateError::SizeGuard {
                what: "group order",
                needed: order,
                limit: MAX_ORDER,
            })
        } else {
            Ok(())
        }
    };
    match raw.kind.as_str() {
        "cyclic" => {
            let n = raw.n.ok_or_else(|| spec_err("group: cyclic needs n"))?;
            if n == 0 {
                return Err(spec_err("group: n must be positive"));
            }
            order_guard(n as u128)?;
            FiniteGroup::cyclic(n as usize)
        }
        "product" => {
            let orders = raw
                .orders
                .as_ref()
                .ok_or_else(|| spec_err("group: product needs orders"))?;
            if orders.is_empty() {
                return Err(spec_err("group: product needs at least one order"));
            }
            let mut total: u128 = 1;
            for &o in orders {
                if o == 0 {
                    return Err(spec_err("group: orders must be positive"));
                }
                total = total.saturating_mul(o as u128);
            }
            order_guard(total)?;
            let factors = orders
                .iter()
                .map(|&o| FiniteGroup::cyclic(o as usize))
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::product_of(&factors)
        }
        "table" => {
            let table = raw
                .table
                .as_ref()
                .ok_or_else(|| spec_err("group: table needs table"))?;
            order_guard(table.len() as u128)?;
            let rows: Vec<Vec<usize>> = table
                .iter()
                .map(|row| row.iter().map(|&x| x as usize).collect())
                .collect();
            FiniteGroup::from_table(&rows)
        }
        other => Err(spec_err(format!("group: unknown kind {other:?}"))),
    }
}

/// Checks a rectangular i64 matrix and converts it, naming the module on
/// failure.
fn checked_matrix(name: &str, what: &str, rows: &[Vec<i64>]) -> Result<IntMatrix> {
    let c = rows.first().map_or(0, |x| x.len());
    if rows.iter().any(|x| x.len() != c) {
        return Err(spec_err(format!("module {name}: {what} has ragged rows")));
    }
    Ok(IntMatrix::from_i64_rows(rows))
}

fn checked_square(name: &str, what: &str, rows: &[Vec<i64>]) -> Result<IntMatrix> {
    let m = checked_matrix(name, what, rows)?;
    if m.rows != m.cols {
        return Err(spec_err(format!(
            "module {name}: {what} must be square, got {}x{}",
            m.rows, m.cols
        )));
    }
    Ok(m)
}

/// Relation vectors arrive as rows; the relation lattice stores them as
/// columns.
fn relation_matrix(name: &str, rank: usize, rel: Option<&Vec<Vec<i64>>>) -> Result<IntMatrix> {
    match rel {
        None => Ok(IntMatrix::zeros(rank, 0)),
        Some(rows) => {
            for (i, r) in rows.iter().enumerate() {
                if r.len() != rank {
                    return Err(spec_err(format!(
                        "module {name}: relation {i} has length {}, expected rank {rank}",
                        r.len()
                    )));
                }
            }
            Ok(checked_matrix(name, "relations", rows)?.transpose())
        }
    }
}

fn action_matrices(
    name: &str,
    group: &Arc<FiniteGroup>,
    raw: &RawModule,
) -> Result<Vec<IntMatrix>> {
    match (&raw.action, &raw.action_sigma) {
        (Some(_), Some(_)) => Err(spec_err(format!(
            "module {name}: give action or action_sigma, not both"
        ))),
        (Some(per_elt), None) => {
            if per_elt.len() != group.order() {
                return Err(spec_err(format!(
                    "module {name}: action needs one matrix per element, got {} for order {}",
                    per_elt.len(),
                    group.order()
                )));
            }
            let mats = per_elt
                .iter()
                .enumerate()
                .map(|(i, m)| checked_square(name, &format!("action[{i}]"), m))
                .collect::<Result<Vec<_>>>()?;
            let rank = mats.first().map_or(0, |m| m.rows);
            if mats.iter().any(|m| m.rows != rank) {
                return Err(spec_err(format!(
                    "module {name}: action matrices have mixed sizes"
                )));
            }
            Ok(mats)
        }
        (None, Some(sigma)) => {
            let s = checked_square(name, "action_sigma", sigma)?;
            let sigma_elt = group.find_generator().ok_or_else(|| {
                spec_err(format!(
                    "module {name}: action_sigma needs a cyclic group"
                ))
            })?;
            let rank = s.rows;
            let mut mats = vec![IntMatrix::identity(rank); group.order()];
            let mut cur = group.identity();
            let mut pow = IntMatrix::identity(rank);
            for _ in 0..group.order() {
                mats[cur.0] = pow.clone();
                cur = group.mul(cur, sigma_elt);
                pow = pow.mul(&s);
            }
            Ok(mats)
        }
        (None, None) => Err(spec_err(format!(
            "module {name}: lattice needs action or action_sigma"
        ))),
    }
}

fn build_modules(
    group: &Arc<FiniteGroup>,
    raw: &BTreeMap<String, RawModule>,
) -> Result<BTreeMap<String, Arc<GModule>>> {
    let mut done: BTreeMap<String, Arc<GModule>> = BTreeMap::new();
    // Tensor modules may reference others in any declaration order, so
    // resolve by fixpoint and flag the leftovers as cycles or unknowns.
    let mut pending: Vec<&String> = raw.keys().collect();
    while !pending.is_empty() {
        let mut progressed = false;
        let mut next = Vec::new();
        for name in pending {
            let spec = &raw[name];
            if spec.kind == "tensor" {
                let left = spec
                    .left
                    .as_ref()
                    .ok_or_else(|| spec_err(format!("module {name}: tensor needs left")))?;
                let right = spec
                    .right
                    .as_ref()
                    .ok_or_else(|| spec_err(format!("module {name}: tensor needs right")))?;
                if !raw.contains_key(left) {
                    return Err(spec_err(format!(
                        "module {name}: unknown tensor factor {left:?}"
                    )));
                }
                if !raw.contains_key(right) {
                    return Err(spec_err(format!(
                        "module {name}: unknown tensor factor {right:?}"
                    )));
                }
                match (done.get(left), done.get(right)) {
                    (Some(a), Some(b)) => {
                        done.insert(name.clone(), tensor_module(a, b)?);
                        progressed = true;
                    }
                    _ => next.push(name),
                }
                continue;
            }
            let built = match spec.kind.as_str() {
                "trivial_Z" => GModule::trivial_z(group),
                "trivial_Z_mod" => {
                    let m = spec
                        .m
                        .ok_or_else(|| spec_err(format!("module {name}: trivial_Z_mod needs m")))?;
                    if m == 0 {
                        return Err(spec_err(format!("module {name}: m must be positive")));
                    }
                    GModule::trivial_z_mod(group, m)
                }
                "lattice" | "lattice_mod" => {
                    let action = action_matrices(name, group, spec)?;
                    let rank = action.first().map_or(0, |m| m.rows);
                    let relations = if spec.kind == "lattice_mod" {
                        relation_matrix(name, rank, spec.relations.as_ref())?
                    } else {
                        if spec.relations.is_some() {
                            return Err(spec_err(format!(
                                "module {name}: relations need kind lattice_mod"
                            )));
                        }
                        IntMatrix::zeros(rank, 0)
                    };
                    GModule::new(Arc::clone(group), name.clone(), rank, relations, action)?
                }
                "regular_ZG" => GModule::regular(group),
                other => {
                    return Err(spec_err(format!("module {name}: unknown kind {other:?}")));
                }
            };
            done.insert(name.clone(), built);
            progressed = true;
        }
        if !progressed {
            let stuck: Vec<&str> = next.iter().map(|s| s.as_str()).collect();
            return Err(spec_err(format!(
                "tensor modules form a cycle: [{}]",
                stuck.join(", ")
            )));
        }
        pending = next;
    }
    Ok(done)
}

/// Parses and fully validates a problem description.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let raw: RawProblem = toml::from_str(text)?;
    let group = build_group(&raw.group)?;
    let modules = build_modules(&group, &raw.module)?;
    Ok(ProblemSpec { group, modules })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmodule::ModElement;
    use crate::group::Elt;

    #[test]
    fn cyclic_group_with_sign_lattice() {
        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 4

            [module.X]
            kind = "lattice"
            action_sigma = [[0, -1], [1, -1]]
            "#,
        );
        // The matrix has order three, which does not divide four, so the
        // powering rule is not a homomorphism; the validator names the law.
        assert!(matches!(p, Err(TateError::ModuleLaw { .. })));

        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 2

            [module.X]
            kind = "lattice"
            action_sigma = [[-1]]
            "#,
        )
        .unwrap();
        let x = p.module("X").unwrap();
        let v = ModElement::from_i64(x, &[1]).unwrap();
        assert_eq!(v.act(Elt(1)).coords()[0], num_bigint::BigInt::from(-1));
    }

    #[test]
    fn product_and_table_groups() {
        let p = parse_problem(
            r#"
            [group]
            kind = "product"
            orders = [2, 3]
            "#,
        )
        .unwrap();
        assert_eq!(p.group().order(), 6);
        assert!(p.group().is_cyclic());

        let p = parse_problem(
            r#"
            [group]
            kind = "table"
            table = [[0, 1], [1, 0]]
            "#,
        )
        .unwrap();
        assert_eq!(p.group().order(), 2);
    }

    #[test]
    fn tensor_modules_resolve_in_any_order() {
        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 2

            [module.T]
            kind = "tensor"
            left = "X"
            right = "Y"

            [module.X]
            kind = "lattice"
            action_sigma = [[-1]]

            [module.Y]
            kind = "trivial_Z_mod"
            m = 4
            "#,
        )
        .unwrap();
        let t = p.module("T").unwrap();
        assert_eq!(t.rank(), 1);
        let v = ModElement::from_i64(t, &[5]).unwrap();
        assert_eq!(v.coords()[0], num_bigint::BigInt::from(1));
    }

    #[test]
    fn tensor_cycles_are_rejected() {
        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 2

            [module.A]
            kind = "tensor"
            left = "B"
            right = "B"

            [module.B]
            kind = "tensor"
            left = "A"
            right = "A"
            "#,
        );
        match p {
            Err(TateError::Spec { context }) => assert!(context.contains("cycle")),
            other => panic!("expected a cycle error, got {other:?}"),
        }
    }

    #[test]
    fn oversized_groups_are_refused() {
        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 65
            "#,
        );
        assert!(matches!(p, Err(TateError::SizeGuard { .. })));
        let p = parse_problem(
            r#"
            [group]
            kind = "product"
            orders = [8, 9]
            "#,
        );
        assert!(matches!(p, Err(TateError::SizeGuard { .. })));
    }

    #[test]
    fn shape_errors_name_the_module() {
        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 2

            [module.X]
            kind = "lattice"
            action_sigma = [[1, 0], [0]]
            "#,
        );
        match p {
            Err(TateError::Spec { context }) => assert!(context.contains("module X")),
            other => panic!("expected a shape error, got {other:?}"),
        }

        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 2

            [module.X]
            kind = "lattice_mod"
            action_sigma = [[1]]
            relations = [[2, 0]]
            "#,
        );
        match p {
            Err(TateError::Spec { context }) => {
                assert!(context.contains("module X") && context.contains("relation"))
            }
            other => panic!("expected a relation shape error, got {other:?}"),
        }
    }

    #[test]
    fn lattice_mod_with_relations() {
        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 2

            [module.Q]
            kind = "lattice_mod"
            action = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
            relations = [[2, 0], [0, 2]]
            "#,
        )
        .unwrap();
        let q = p.module("Q").unwrap();
        assert_eq!(q.rank(), 2);
        let v = ModElement::from_i64(q, &[3, -1]).unwrap();
        assert_eq!(
            v.coords(),
            &[num_bigint::BigInt::from(1), num_bigint::BigInt::from(1)]
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_problem("[group\nkind = \"cyclic\"").unwrap_err();
        let text = err.to_string();
        assert!(text.contains("line"), "got: {text}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 2
            extra = 1
            "#,
        );
        assert!(matches!(p, Err(TateError::Toml(_))));
    }

    #[test]
    fn unknown_module_lookup_lists_names() {
        let p = parse_problem(
            r#"
            [group]
            kind = "cyclic"
            n = 2

            [module.X]
            kind = "trivial_Z"
            "#,
        )
        .unwrap();
        match p.module("Y") {
            Err(TateError::Spec { context }) => assert!(context.contains("X")),
            other => panic!("expected unknown module error, got {:?}", other.map(|_| ())),
        }
    }
}
