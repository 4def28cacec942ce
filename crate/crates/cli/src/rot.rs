use crate::error::{CliError, Context, Result};
use crate::report::Session;
use ortho_core::io::{from_json, parse_coordinate_list, parse_scalar, scalar_strings, FieldDoc, IoError, MatrixDoc, PointsDoc, RotationDoc};
use ortho_core::rotation::{fixpoint_class, givens_decompose, rotation_root, FixpointClass, OrthoMatrix, RotationError};
use ortho_core::{Check, FieldKind, ProjPoint, Scalar};
use serde_json::{json, Value};

fn matrix_json(m: &OrthoMatrix) -> Value {
    json!(m.rows().iter().map(|r| scalar_strings(r)).collect::<Vec<_>>())
}

fn load_matrix(s: &mut Session, path: &str) -> Result<OrthoMatrix> {
    let doc: MatrixDoc = from_json(&s.file(path)?).input(path)?;
    doc.build().input(path)
}

/// Operation failures become a failed check; everything else is an input
/// error.
fn rejected(s: &mut Session, name: &str, e: RotationError) -> Result<()> {
    match e {
        RotationError::UnsupportedRoot(_) | RotationError::Shape { .. } | RotationError::Space(_) => Err(e.into()),
        e => {
            s.check(Check::fail(name, json!(e.to_string())));
            Ok(())
        }
    }
}

pub fn verify(s: &mut Session, path: &str) -> Result<()> {
    let doc: MatrixDoc = from_json(&s.file(path)?).input(path)?;
    match doc.build() {
        Ok(m) => {
            s.check(Check::pass("orthogonal"));
            let det = if m.det() == 1 {
                Check::pass("determinant")
            } else {
                Check::fail("determinant", json!(m.det()))
            };
            s.check(det.with_detail(json!(m.det())));
            s.result("dim", json!(m.dim()));
            s.result("field", json!(FieldDoc::of(m.spec())));
        }
        Err(IoError::Rotation(e @ RotationError::NotOrthogonal { .. })) => {
            s.check(Check::fail("orthogonal", json!(e.to_string())));
        }
        Err(e) => return Err(CliError::Input { what: path.to_string(), source: e }),
    }
    Ok(())
}

pub fn map(s: &mut Session, path: &str, points: &str) -> Result<()> {
    let m = load_matrix(s, path)?;
    let doc: PointsDoc = from_json(&s.file(points)?).input(points)?;
    let pts = doc.build(m.space()).input(points)?;
    let images = s.timed("map", || m.induced_map(&pts))?;
    let mut bad = None;
    'outer: for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].is_orthogonal(&pts[j])? != images[i].is_orthogonal(&images[j])? {
                bad = Some(json!([i, j]));
                break 'outer;
            }
        }
    }
    s.check(Check::from_violation("orthogonality_preserved", bad).with_detail(json!({ "points": pts.len() })));
    let coords = |p: &ProjPoint| scalar_strings(p.coords());
    s.result("images", json!(images.iter().map(coords).collect::<Vec<_>>()));
    Ok(())
}

pub fn sqrt(s: &mut Session, path: &str, root: u32, cap: usize) -> Result<()> {
    let doc: RotationDoc = from_json(&s.file(path)?).input(path)?;
    let rot = doc.build().input(path)?;
    let (spec, w) = match s.timed("root", || rotation_root(&rot, root, cap)) {
        Ok(x) => x,
        Err(e) => return rejected(s, "root", e),
    };
    let power = w.matrix().pow(root);
    let target = rot.matrix().embed(&spec)?;
    let check = if power == target {
        Check::pass("power")
    } else {
        Check::fail("power", matrix_json(&power))
    };
    s.check(check.with_detail(json!({ "n": root, "adjunctions": spec.depth() - rot.spec().depth() })));
    s.result("field", json!(FieldDoc::of(&spec)));
    s.result("root", json!(RotationDoc::of(&w)));
    s.result("matrix", matrix_json(w.matrix()));
    Ok(())
}

pub fn givens(s: &mut Session, path: &str, cap: usize) -> Result<()> {
    let u = load_matrix(s, path)?;
    let dec = match s.timed("givens", || givens_decompose(&u, cap)) {
        Ok(d) => d,
        Err(e) => return rejected(s, "givens", e),
    };
    let product = dec.product(u.space())?;
    let check = if product == u.embed(&dec.spec)? {
        Check::pass("round_trip")
    } else {
        Check::fail("round_trip", matrix_json(&product))
    };
    s.check(check.with_detail(json!({ "factors": dec.factors.len(), "adjunctions": dec.adjunctions })));
    let factors: Vec<Value> = dec
        .factors
        .iter()
        .map(|g| json!({ "plane": g.coordinate_plane(), "alpha": g.alpha().to_string(), "beta": g.beta().to_string() }))
        .collect();
    s.result("field", json!(FieldDoc::of(&dec.spec)));
    s.result("factors", json!(factors));
    Ok(())
}

/// Where the block for `fixclass` comes from.
pub enum BlockSource<'a> {
    Params { alpha: &'a str, beta: &'a str },
    Block(&'a str),
}

/// `[[a, b], [c, d]]` in the coordinate-list syntax.
fn parse_block(text: &str) -> Result<Vec<Vec<String>>> {
    if let Ok(rows) = serde_json::from_str::<Vec<Vec<String>>>(text) {
        return Ok(rows);
    }
    let bad = || CliError::Usage(format!("--block: expected [[a, b], [c, d]], got {text:?}"));
    let inner = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
    inner
        .split(']')
        .map(|seg| seg.trim().trim_start_matches(',').trim())
        .filter(|seg| !seg.is_empty())
        .map(|seg| parse_coordinate_list(&format!("{seg}]")).input("--block"))
        .collect()
}

pub fn fixclass(s: &mut Session, source: BlockSource, adjoin: &[String]) -> Result<()> {
    for r in adjoin {
        s.inline("--adjoin", r);
    }
    let kind = if adjoin.is_empty() { FieldKind::Rationals } else { FieldKind::Tower };
    let spec = FieldDoc { kind, adjoined: adjoin.to_vec() }.build().input("--adjoin")?;
    let scalar = |flag: &str, t: &str| parse_scalar(t, &spec, || flag.to_string()).input(flag);
    let block: [[Scalar; 2]; 2] = match source {
        BlockSource::Params { alpha, beta } => {
            s.inline("--alpha", alpha);
            s.inline("--beta", beta);
            let (a, b) = (scalar("--alpha", alpha)?, scalar("--beta", beta)?);
            [[a.clone(), -&b], [b, a]]
        }
        BlockSource::Block(text) => {
            s.inline("--block", text);
            let rows = parse_block(text)?;
            if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
                return Err(CliError::Usage(format!("--block: expected a 2x2 matrix, got {text:?}")));
            }
            let e = |i: usize, j: usize| scalar("--block", &rows[i][j]);
            [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]]
        }
    };
    match fixpoint_class(&block) {
        Ok(cert) => {
            let sign = cert.discriminant.is_negative() == (cert.class == FixpointClass::FixpointFreeOnLine);
            s.check(Check::pass("fixpoint_class").with_detail(json!(cert.class)));
            s.check(Check::from_violation("discriminant_sign", (!sign).then(|| cert.discriminant.to_string())));
            s.result("class", json!(cert.class));
            s.result("discriminant", json!(cert.discriminant.to_string()));
        }
        Err(e) => return rejected(s, "fixpoint_class", e),
    }
    Ok(())
}
