//! JSON rendering. Integers and rationals are written as decimal strings so
//! that nothing is rounded on the way out.

use affine_orbit::arith::fmt_rational;
use affine_orbit::orbit::OrbitInvariant;
use affine_orbit::space::format_equation;
use affine_orbit::{AffineWitness, Int, IntMatrix, RatAffineSpace, SymPoint};
use serde_json::{json, Value};

use crate::parse::{parse_rational, ParseError};

pub fn witness_json(g: &AffineWitness) -> Value {
    let u: Vec<Vec<String>> = g
        .matrix()
        .rows()
        .iter()
        .map(|r| r.iter().map(Int::to_string).collect())
        .collect();
    let t: Vec<String> = g.translation_part().iter().map(Int::to_string).collect();
    json!({ "U": u, "t": t })
}

fn integer(v: &Value) -> Result<Int, ParseError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => return Err(ParseError(format!("expected an integer, got {other}"))),
    };
    let r = parse_rational(&text)?;
    if !r.is_integer() {
        return Err(ParseError(format!("expected an integer, got {text}")));
    }
    Ok(r.to_integer())
}

/// The `U` matrix and `t` vector of a witness document, unchecked.
pub fn witness_parts(doc: &Value) -> Result<(IntMatrix, Vec<Int>), ParseError> {
    let bad = |what: &str| ParseError(format!("witness JSON: {what}"));
    let rows = doc
        .get("U")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array \"U\""))?;
    let t = doc
        .get("t")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array \"t\""))?;
    let n = t.len();
    let mut u = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("rows of U must be arrays"))?;
        if row.len() != n {
            return Err(bad("U must be square with the size of t"));
        }
        u.push(row.iter().map(integer).collect::<Result<Vec<_>, _>>()?);
    }
    if u.len() != n || n == 0 {
        return Err(bad("U must be square with the size of t"));
    }
    let t = t.iter().map(integer).collect::<Result<Vec<_>, _>>()?;
    Ok((IntMatrix::from_rows(u, n), t))
}

pub fn point_json(p: &SymPoint) -> Value {
    Value::from((0..p.n()).map(|i| p.format_coord(i)).collect::<Vec<_>>())
}

pub fn basis_json(p: &SymPoint) -> Value {
    let mut names = vec!["1".to_string()];
    names.extend(p.basis().names().iter().cloned());
    Value::from(names)
}

pub fn equations_json(f: &RatAffineSpace) -> Value {
    Value::from(
        f.equations()
            .iter()
            .map(|(h, r)| format_equation(h, r))
            .collect::<Vec<_>>(),
    )
}

pub fn space_json(f: &RatAffineSpace) -> Value {
    json!({
        "n": f.n(),
        "e": f.dim(),
        "d": f.d().to_string(),
        "c": f.c().to_string(),
        "equations": equations_json(f),
    })
}

pub fn invariant_json(x: &SymPoint, inv: &OrbitInvariant, fx: &RatAffineSpace) -> Value {
    let g: Vec<Vec<String>> = inv.group.lattice().display_rows();
    json!({
        "n": x.n(),
        "basis": basis_json(x),
        "rank": inv.rank(),
        "dim_Fx": fx.dim(),
        "d": inv.d().to_string(),
        "c": inv.c.to_string(),
        "G": g,
        "Fx": equations_json(fx),
    })
}

/// Names the first invariant component on which two points differ.
pub fn difference(a: &OrbitInvariant, b: &OrbitInvariant) -> String {
    if a.rank() != b.rank() {
        format!("rank(G): {} ≠ {}", a.rank(), b.rank())
    } else if a.d() != b.d() {
        format!("d: {} ≠ {}", a.d(), b.d())
    } else if a.group != b.group {
        let show = |inv: &OrbitInvariant| {
            let rows: Vec<String> = inv
                .group
                .lattice()
                .rows()
                .iter()
                .map(|r| {
                    let entries: Vec<String> = r.iter().map(fmt_rational).collect();
                    format!("({})", entries.join(", "))
                })
                .collect();
            format!("[{}]", rows.join(", "))
        };
        format!("G: {} ≠ {}", show(a), show(b))
    } else {
        format!("c: {} ≠ {}", a.c, b.c)
    }
}
