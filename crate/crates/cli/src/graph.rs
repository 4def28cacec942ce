use crate::error::{CliError, Context, Result};
use crate::report::Session;
use clap::ValueEnum;
use ortho_core::io::{from_json, GraphDoc};
use ortho_core::orthograph::DEFAULT_FAMILY_CAP;
use ortho_core::{Check, CheckReport, OrthoGraph, OrthoLattice, PointSet};
use serde_json::json;

pub const MAX_GRAPH_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum GraphCheck {
    Closure,
    Rank,
    Irredundance,
    Linearity,
    Dacey,
    Lattice,
}

pub fn run(s: &mut Session, path: &str, checks: &[GraphCheck]) -> Result<()> {
    let text = s.file(path)?;
    let doc: GraphDoc = from_json(&text).input(path)?;
    if doc.n > MAX_GRAPH_POINTS {
        return Err(CliError::Usage(format!("{path}: graphs are limited to {MAX_GRAPH_POINTS} points, got n = {}", doc.n)));
    }
    let g = doc.build().input(path)?;
    s.result("graph", json!({ "n": g.n(), "edges": g.edges().len() }));

    let mut selected = if checks.is_empty() { GraphCheck::value_variants().to_vec() } else { checks.to_vec() };
    selected.sort();
    selected.dedup();
    for c in selected {
        match c {
            GraphCheck::Closure => closure(s, &g)?,
            GraphCheck::Rank => rank(s, &g),
            GraphCheck::Irredundance => {
                let r = s.timed("irredundance", || g.irredundance());
                s.checks.extend(CheckReport::from(&r));
            }
            GraphCheck::Linearity => {
                let r = s.timed("linearity", || g.linearity());
                s.checks.extend(CheckReport::from(&r));
                s.result("irreducible", json!(g.is_irreducible()));
            }
            GraphCheck::Dacey => {
                let r = s.timed("dacey", || g.dacey(DEFAULT_FAMILY_CAP))?;
                s.checks.extend(CheckReport::from(&r));
            }
            GraphCheck::Lattice => lattice(s, &g)?,
        }
    }
    Ok(())
}

/// Closure-operator laws on every pair of singletons, plus the family of
/// closed sets.
fn closure(s: &mut Session, g: &OrthoGraph) -> Result<()> {
    let closed = s.timed("closure", || g.closed_sets(DEFAULT_FAMILY_CAP))?;
    let mut bad = None;
    'outer: for e in 0..g.n() {
        let a = PointSet::singleton(e);
        let ca = g.closure(a)?;
        if !a.is_subset(ca) || g.closure(ca)? != ca || !closed.contains(&ca) {
            bad = Some(json!({ "a": a }));
            break;
        }
        for f in 0..g.n() {
            let b = a.with(f);
            if !g.perp(b)?.is_subset(g.perp(a)?) {
                bad = Some(json!({ "a": a, "b": b }));
                break 'outer;
            }
        }
    }
    let point_closures = (0..g.n()).map(|e| g.closure(PointSet::singleton(e))).collect::<Result<Vec<_>, _>>()?;
    s.check(Check::from_violation("closure", bad).with_detail(json!({ "closed_sets": closed.len() })));
    s.result("point_closures", json!(point_closures));
    Ok(())
}

fn rank(s: &mut Session, g: &OrthoGraph) {
    let d = s.timed("rank", || g.maximum_orthogonal_set());
    let check = if g.is_orthogonal_set(d) {
        Check::pass("rank")
    } else {
        Check::fail("rank", json!({ "set": d }))
    };
    s.check(check.with_detail(json!(d.len())));
    s.result("rank", json!({ "rank": d.len(), "maximum_orthogonal_set": d }));
}

/// `MO_k` when the lattice has length 2, i.e. is `0 < k complementary pairs < 1`.
fn shape(lat: &OrthoLattice) -> Option<String> {
    (lat.length() == 2).then(|| format!("MO{}", lat.atoms().len() / 2))
}

fn lattice(s: &mut Session, g: &OrthoGraph) -> Result<()> {
    let lat = s.timed("lattice", || OrthoLattice::build(g))?;
    let props = lat.properties();
    s.checks.extend(CheckReport::from(&props));
    s.result("lattice", json!({ "shape": shape(&lat), "properties": props, "export": lat.export() }));
    Ok(())
}
