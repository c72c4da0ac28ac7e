//! File formats. Every JSON document carries `"format_version": 1`.
//!
//! Channel tensors are row-major: a `joint` law lists p(y0, y1, yR | x0, x2, xR)
//! with variable order (x0, x2, xR, y0, y1, yR), the first varying slowest;
//! an `independent` law lists one tensor per output over (x0, x2, xR, y).

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::channel::ChannelSpec;
use crate::error::{Error, Result};
use crate::polytope::{RatePolytope, RegionFrontier};
use crate::schemes::SchemeInput;
use crate::search::TracedFrontier;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Versioned<T> {
    format_version: u32,
    #[serde(flatten)]
    body: T,
}

/// Serializes `body` with the format version first.
pub fn to_versioned_json<T: Serialize>(body: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Versioned {
        format_version: FORMAT_VERSION,
        body,
    })?;
    s.push('\n');
    Ok(s)
}

pub fn from_versioned_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let v: Versioned<T> = serde_json::from_str(text)?;
    if v.format_version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            v.format_version
        )));
    }
    Ok(v.body)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_versioned<T: DeserializeOwned>(path: &Path) -> Result<T> {
    from_versioned_json(&read(path)?).map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Reads and validates a channel file.
pub fn read_channel(path: &Path) -> Result<ChannelSpec> {
    let spec: ChannelSpec = read_versioned(path)?;
    spec.validate()?;
    Ok(spec)
}

pub fn read_scheme_input(path: &Path) -> Result<SchemeInput> {
    read_versioned(path)
}

/// A polytope as JSON: rows keyed by variable name, plus vertices for 2-D
/// regions.
pub fn polytope_json(p: &RatePolytope) -> Result<Value> {
    let rows: Vec<Value> = p
        .constraints()
        .iter()
        .map(|c| {
            let coefficients: Map<String, Value> = p
                .variables()
                .iter()
                .zip(&c.coefficients)
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| (v.clone(), json!(k)))
                .collect();
            json!({ "coefficients": coefficients, "bound": c.bound, "label": c.label })
        })
        .collect();
    let mut out = json!({
        "variables": p.variables(),
        "empty": p.is_marked_empty(),
        "constraints": rows,
    });
    if p.variables().len() == 2 {
        let v: Vec<[f64; 2]> = p.vertices_2d()?.into_iter().map(|(a, b)| [a, b]).collect();
        out["vertices"] = json!(v);
    }
    Ok(out)
}

/// CSV with header `R0_bits,R2_bits`, one frontier point per line.
pub fn frontier_csv(f: &RegionFrontier) -> String {
    let mut s = String::from("R0_bits,R2_bits\n");
    for p in &f.points {
        s.push_str(&format!("{},{}\n", p.r0, p.r2));
    }
    s
}

/// A traced frontier with the input attaining each point.
pub fn frontier_json(t: &TracedFrontier) -> Value {
    let points: Vec<Value> = t
        .frontier
        .points
        .iter()
        .map(|p| json!({ "r0_bits": p.r0, "r2_bits": p.r2, "input": t.inputs[p.source] }))
        .collect();
    json!({
        "scheme": t.scheme,
        "closure": "with time-sharing",
        "points": points,
    })
}
