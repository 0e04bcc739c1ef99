//! JSON forms of certificates, search results and bound values.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use sunflower_core::bounds::{BoundValue, Param};
use sunflower_core::detect::{NoSunflowerCertificate, SunflowerCertificate, SunflowerSearch};
use sunflower_core::numeric::to_f64;
use sunflower_core::prover::{
    Child, CoverAudit, DecompositionNode, DezaVerdict, NodeCase, SoulCheck,
};
use sunflower_core::search::tables::ExtremalValue;
use sunflower_core::search::{Checkpoint, Constraint, SearchResult};
use sunflower_core::{MemberSet, SetFamily};

fn set(m: &MemberSet) -> Vec<usize> {
    m.to_vec()
}

fn sets(fam: &SetFamily) -> Vec<Vec<usize>> {
    fam.members().iter().map(MemberSet::to_vec).collect()
}

pub fn family_json(fam: &SetFamily) -> Value {
    json!({"n": fam.ground().size(), "members": sets(fam)})
}

/// `{"r", "kernel", "petals"}` with petals as element lists; the member
/// indices are kept in `petal_indices`.
pub fn sunflower_json(fam: &SetFamily, cert: &SunflowerCertificate) -> Value {
    json!({
        "r": cert.r,
        "kernel": set(&cert.kernel),
        "petals": cert.petals.iter().map(|&i| set(&fam.members()[i])).collect::<Vec<_>>(),
        "petal_indices": cert.petals,
    })
}

pub fn no_sunflower_json(cert: &NoSunflowerCertificate) -> Value {
    json!({
        "r": cert.r,
        "sunflower_free": true,
        "kernels_examined": cert.kernels_examined,
    })
}

pub fn search_outcome_json(fam: &SetFamily, res: &SunflowerSearch) -> Value {
    match res {
        SunflowerSearch::Found(c) => sunflower_json(fam, c),
        SunflowerSearch::Free(c) => no_sunflower_json(c),
    }
}

/// A sunflower certificate read back from JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SunflowerClaim {
    Found {
        r: usize,
        kernel: MemberSet,
        petals: Vec<MemberSet>,
    },
    Free {
        r: usize,
        kernels_examined: usize,
    },
}

pub fn parse_sunflower_claim(v: &Value) -> anyhow::Result<SunflowerClaim> {
    let r = v["r"].as_u64().context("certificate needs an integer \"r\"")? as usize;
    if v.get("sunflower_free").is_some() {
        if v["sunflower_free"] != Value::Bool(true) {
            bail!("\"sunflower_free\" must be true");
        }
        let kernels_examined = v["kernels_examined"]
            .as_u64()
            .context("negative certificate needs \"kernels_examined\"")?
            as usize;
        return Ok(SunflowerClaim::Free { r, kernels_examined });
    }
    let kernel = member_from(&v["kernel"]).context("\"kernel\"")?;
    let petals = v["petals"]
        .as_array()
        .context("certificate needs \"petals\"")?
        .iter()
        .map(member_from)
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(SunflowerClaim::Found { r, kernel, petals })
}

fn member_from(v: &Value) -> anyhow::Result<MemberSet> {
    let arr = v.as_array().ok_or_else(|| anyhow!("expected an array of elements"))?;
    arr.iter()
        .map(|x| {
            x.as_u64()
                .filter(|&e| e > 0)
                .map(|e| e as usize)
                .ok_or_else(|| anyhow!("elements must be positive integers"))
        })
        .collect::<anyhow::Result<Vec<_>>>()
        .map(MemberSet::from_elements)
}

fn rational_json(q: &BigRational) -> Value {
    json!({
        "exact": q.to_string(),
        "approx": to_f64(q),
    })
}

fn rational_from(v: &Value) -> anyhow::Result<BigRational> {
    let s = v["exact"].as_str().context("expected {\"exact\": \"p/q\"}")?;
    BigRational::from_str(s).map_err(|e| anyhow!("bad rational {s:?}: {e}"))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
struct ChildJson {
    #[serde(rename = "T")]
    t: Vec<usize>,
    members: Vec<usize>,
    node: NodeJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
struct NodeJson {
    family_size: usize,
    k: usize,
    #[serde(rename = "L")]
    l: Vec<usize>,
    #[serde(rename = "L_realized")]
    l_realized: Vec<usize>,
    case: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    deza: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pair: Option<(usize, usize)>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none", default)]
    m: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    soul_violation: Option<usize>,
    certified_bound: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    bound_as_stated: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    bound_reduced_k: Option<Value>,
    children: Vec<ChildJson>,
}

fn node_to_json(n: &DecompositionNode) -> NodeJson {
    NodeJson {
        family_size: n.family_size,
        k: n.k,
        l: n.l.clone(),
        l_realized: n.l_realized.clone(),
        case: n.case.as_str().to_string(),
        deza: n.deza.map(|d| d.as_str().to_string()),
        pair: n.pair,
        m: n.m.as_ref().map(set),
        soul_violation: n.soul_violation,
        certified_bound: n.certified_bound.to_string(),
        bound_as_stated: n.bound_as_stated.as_ref().map(rational_json),
        bound_reduced_k: n.bound_reduced_k.as_ref().map(rational_json),
        children: n
            .children
            .iter()
            .map(|c| ChildJson {
                t: set(&c.t),
                members: c.members.clone(),
                node: node_to_json(&c.node),
            })
            .collect(),
    }
}

fn node_from_json(n: NodeJson) -> anyhow::Result<DecompositionNode> {
    let case = match n.case.as_str() {
        "BASE_DEZA" => NodeCase::BaseDeza,
        "SKIP_ELL1" => NodeCase::SkipEll1,
        "SPLIT" => NodeCase::Split,
        other => bail!("unknown case {other:?}"),
    };
    let deza = n
        .deza
        .map(|d| match d.as_str() {
            "WITHIN_BOUND" => Ok(DezaVerdict::WithinBound),
            "IS_SUNFLOWER" => Ok(DezaVerdict::IsSunflower),
            "VIOLATION" => Ok(DezaVerdict::Violation),
            other => Err(anyhow!("unknown Deza verdict {other:?}")),
        })
        .transpose()?;
    Ok(DecompositionNode {
        family_size: n.family_size,
        k: n.k,
        l: n.l,
        l_realized: n.l_realized,
        case,
        deza,
        pair: n.pair,
        m: n.m.map(MemberSet::from_elements),
        soul_violation: n.soul_violation,
        certified_bound: BigUint::from_str(&n.certified_bound)
            .map_err(|e| anyhow!("bad certified_bound: {e}"))?,
        bound_as_stated: n.bound_as_stated.as_ref().map(rational_from).transpose()?,
        bound_reduced_k: n.bound_reduced_k.as_ref().map(rational_from).transpose()?,
        children: n
            .children
            .into_iter()
            .map(|c| {
                Ok(Child {
                    t: MemberSet::from_elements(c.t),
                    members: c.members,
                    node: node_from_json(c.node)?,
                })
            })
            .collect::<anyhow::Result<Vec<_>>>()?,
    })
}

pub fn decomposition_json(node: &DecompositionNode) -> Value {
    serde_json::to_value(node_to_json(node)).expect("plain data serializes")
}

pub fn parse_decomposition(v: &Value) -> anyhow::Result<DecompositionNode> {
    let n: NodeJson = serde_json::from_value(v.clone()).context("not a decomposition tree")?;
    node_from_json(n)
}

pub fn soul_json(s: &SoulCheck, fam: &SetFamily) -> Value {
    json!({
        "holds": s.holds,
        "M": set(&s.m),
        "violating": s.violating,
        "sunflower": s.sunflower.as_ref().map(|c| sunflower_json(fam, c)),
        "preconditions_hold": s.preconditions_hold,
    })
}

pub fn cover_json(a: &CoverAudit, family_size: usize) -> Value {
    json!({
        "ell": a.ell,
        "F0": a.f0,
        "parts": a.parts.iter().map(|p| json!({
            "T": set(&p.t),
            "members": p.members,
            "G": sets(&p.reduced),
        })).collect::<Vec<_>>(),
        "uncovered": a.uncovered,
        "max_part": a.max_part,
        "count_bound": a.count_bound.to_string(),
        "holds": a.holds(family_size),
    })
}

pub fn constraint_json(c: &Constraint) -> Value {
    match c {
        Constraint::Unconstrained => json!({"kind": "none"}),
        Constraint::Sizes(l) => json!({"kind": "L", "L": l}),
        Constraint::AtLeast(ell) => json!({"kind": "ell", "ell": ell}),
    }
}

pub fn checkpoint_json(cp: &Checkpoint) -> Value {
    json!({"path": cp.path, "best": cp.best, "nodes": cp.nodes})
}

pub fn parse_checkpoint(v: &Value) -> anyhow::Result<Checkpoint> {
    let list = |key: &str| -> anyhow::Result<Vec<u32>> {
        v[key]
            .as_array()
            .with_context(|| format!("checkpoint needs {key:?}"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| anyhow!("checkpoint indices must be integers"))
            })
            .collect()
    };
    Ok(Checkpoint {
        path: list("path")?,
        best: list("best")?,
        nodes: v["nodes"].as_u64().context("checkpoint needs \"nodes\"")?,
    })
}

pub fn search_result_json(k: usize, r: usize, c: &Constraint, n_max: usize, res: &SearchResult) -> Value {
    json!({
        "k": k,
        "r": r,
        "constraint": constraint_json(c),
        "n_max": n_max,
        "optimum": res.optimum,
        "witness": sets(&res.witness),
        "nodes_explored": res.nodes_explored,
        "exhaustive": res.exhaustive,
        "reached_er_cap": res.reached_er_cap,
        "checkpoint": res.checkpoint.as_ref().map(checkpoint_json),
    })
}

pub fn extremal_json(v: &ExtremalValue) -> Value {
    json!({
        "k": v.k,
        "r": v.r,
        "constraint": constraint_json(&v.constraint),
        "optimum": v.value,
        "witness": sets(&v.witness),
        "n_max": v.n_max,
        "exhaustive": v.exhaustive,
        "certified": v.certified,
        "ground_sensitive": v.ground_sensitive,
        "runs": v.runs.iter().map(|&(n, o)| json!({"n_max": n, "optimum": o})).collect::<Vec<_>>(),
        "nodes_explored": v.nodes,
    })
}

fn param_json(p: &Param) -> Value {
    match p {
        Param::Int(v) => json!(v),
        Param::Rational(q) if q.is_integer() => json!(q.to_integer().to_string()),
        Param::Rational(q) => json!(q.to_string()),
    }
}

/// Row of a bounds table.
pub fn bound_json(b: &BoundValue) -> Value {
    let mut params = Map::new();
    for (name, p) in &b.params {
        params.insert((*name).to_string(), param_json(p));
    }
    json!({
        "theorem_id": b.theorem.as_str(),
        "params": params,
        "value": exact_or_decimal(b),
        "value_approx": b.approx(),
        "rounding_mode": b.rounding.as_str(),
        "log_base": b.log_base.map(|l| l.as_str()),
    })
}

/// Exact values print as integers or `p/q`; rounded ones as the rounded
/// rational in full.
fn exact_or_decimal(b: &BoundValue) -> String {
    if b.value.is_integer() {
        b.value.to_integer().to_string()
    } else {
        b.value.to_string()
    }
}
