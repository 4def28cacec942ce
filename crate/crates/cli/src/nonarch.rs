use crate::error::{CliError, Context, Result};
use crate::report::Session;
use ortho_core::io::{parse_coordinate_list, parse_point, parse_vector, scalar_strings, FieldDoc, SpaceDoc};
use ortho_core::nonarch::{approx_witness, classify_vector, congruence_suite, default_rotations, default_sample, eps_space, medial_representative};
use ortho_core::{Check, FieldKind, QuadSpace, Vector};
use serde_json::json;

pub const SEED_ENV: &str = "ORTHO_SEED";

fn coords(s: &mut Session, flag: &str, text: &str) -> Result<Vec<String>> {
    s.inline(flag, text);
    parse_coordinate_list(text).input(flag)
}

/// `Q(eps)^dim`, with the Gram diagonal from `--gram` when given.
fn space(s: &mut Session, dim: usize, gram: Option<&str>) -> Result<QuadSpace> {
    let gram = gram.map(|g| coords(s, "--gram", g)).transpose()?;
    let doc = SpaceDoc { field: FieldDoc { kind: FieldKind::Infinitesimal, adjoined: Vec::new() }, dim, gram };
    doc.build().input("--gram")
}

fn vector_json(v: &Vector) -> serde_json::Value {
    json!(scalar_strings(v.coords()))
}

pub fn classify(s: &mut Session, v: &str, gram: Option<&str>) -> Result<()> {
    let c = coords(s, "--v", v)?;
    let sp = space(s, c.len(), gram)?;
    let x = parse_vector(&sp, &c, "--v").input("--v")?;
    let class = classify_vector(&x)?;
    s.check(Check::pass("classify").with_detail(json!(class)));
    s.result("class", json!(class));
    s.result("norm_sq", json!(x.norm_sq().to_string()));
    Ok(())
}

pub fn approx(s: &mut Session, p: &str, q: &str, gram: Option<&str>) -> Result<()> {
    let (pc, qc) = (coords(s, "--p", p)?, coords(s, "--q", q)?);
    if pc.len() != qc.len() {
        return Err(CliError::Usage(format!("--p has {} coordinates, --q has {}", pc.len(), qc.len())));
    }
    let sp = space(s, pc.len(), gram)?;
    let pp = parse_point(&sp, &pc, "--p").input("--p")?;
    let qq = parse_point(&sp, &qc, "--q").input("--q")?;
    let witness = s.timed("approx", || approx_witness(&pp, &qq))?;
    let medial = |p| medial_representative(p).map(|m| m.as_ref().map(vector_json));
    s.result("medial", json!({ "p": medial(&pp)?, "q": medial(&qq)? }));
    s.result("approx", json!(witness.is_some()));
    let check = match witness {
        Some(w) => Check::pass("approx").with_detail(json!({
            "x": vector_json(&w.x),
            "y": vector_json(&w.y),
            "difference": vector_json(&w.difference),
        })),
        None => Check::fail("approx", json!({ "p": pc, "q": qc })),
    };
    s.check(check);
    Ok(())
}

/// `--seed`, else `ORTHO_SEED`, else 0.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV}={v:?} is not a u64"))),
        Err(_) => Ok(0),
    }
}

pub fn suite(s: &mut Session, dim: usize, seed: u64) -> Result<()> {
    s.seed = Some(seed);
    let sp = eps_space(dim)?;
    let sample = default_sample(&sp, seed)?;
    let rotations = default_rotations(&sp)?;
    let report = s.timed("suite", || congruence_suite(&sp, &sample, &rotations))?;
    if let Some(w) = report.get("non_trivial").and_then(|c| c.detail.clone().or_else(|| c.witness.clone())) {
        s.result("non_trivial", w);
    }
    s.checks.extend(report);
    s.result("sample", json!(sample.len()));
    s.result("rotations", json!(rotations.len()));
    Ok(())
}
