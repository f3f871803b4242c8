//! CSV and JSON formats: paths as `t,value` or `t,left,right`, profiles as
//! `a,N,L`, merge trees as a node list.
//!
//! Floats are printed with the shortest representation that parses back to
//! the same bits, so print/parse round trips are exact.

use crate::error::{Error, Result};
use crate::generators::Generated;
use crate::path::{CadlagPath, SampledPath};
use crate::tree::{MergeTree, TrimProfile};
use std::io::{Read, Write};

/// A path read from CSV, continuous or with jumps.
pub type PathData = Generated;

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// Affine map of raw stamps onto `[0, 1]`; stamps already there are kept as is.
fn unit_times(t: &[f64]) -> Result<Vec<f64>> {
    if t.len() < 2 {
        return Err(Error::EmptyInput);
    }
    let (t0, t1) = (t[0], t[t.len() - 1]);
    if t0 == 0.0 && t1 == 1.0 {
        return Ok(t.to_vec());
    }
    if !(t1 > t0) {
        return Err(Error::NonMonotoneTime(t.len() - 1));
    }
    let mut out: Vec<f64> = t.iter().map(|x| (x - t0) / (t1 - t0)).collect();
    out[0] = 0.0;
    *out.last_mut().unwrap() = 1.0;
    Ok(out)
}

/// Read `t,value` or `t,left,right`. Times are rescaled onto `[0, 1]` when
/// they do not already span it.
pub fn read_path(reader: impl Read) -> Result<PathData> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr
        .headers()
        .map_err(parse_err)?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect();
    let cadlag = match header.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        ["t", "value"] => false,
        ["t", "left", "right"] => true,
        _ => {
            return Err(Error::Parse(format!(
                "expected header t,value or t,left,right, got {}",
                header.join(",")
            )))
        }
    };
    let width = if cadlag { 3 } else { 2 };
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); width];
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(parse_err)?;
        if rec.len() != width {
            return Err(Error::Parse(format!(
                "row {} has {} fields",
                line + 2,
                rec.len()
            )));
        }
        for (c, field) in rec.iter().enumerate() {
            let x: f64 = field
                .parse()
                .map_err(|e| Error::Parse(format!("row {}: {field:?}: {e}", line + 2)))?;
            cols[c].push(x);
        }
    }
    if cols[0].is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(i) = cols
        .iter()
        .flat_map(|c| c.iter().position(|x| !x.is_finite()))
        .next()
    {
        return Err(Error::NonFiniteValue(i));
    }
    if let Some(i) = (1..cols[0].len()).find(|&i| cols[0][i] <= cols[0][i - 1]) {
        return Err(Error::NonMonotoneTime(i));
    }
    let t = unit_times(&cols[0])?;
    Ok(if cadlag {
        Generated::Cadlag(CadlagPath::new(t, cols[1].clone(), cols[2].clone())?)
    } else {
        Generated::Continuous(SampledPath::new(t, cols[1].clone())?)
    })
}

pub fn read_path_file(path: impl AsRef<std::path::Path>) -> Result<PathData> {
    let f = std::fs::File::open(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    read_path(std::io::BufReader::new(f))
}

/// Read a file that must hold a continuous path.
pub fn read_continuous_file(path: impl AsRef<std::path::Path>) -> Result<SampledPath> {
    match read_path_file(path)? {
        Generated::Continuous(p) => Ok(p),
        Generated::Cadlag(_) => Err(Error::InvalidArgument(
            "expected a continuous path (t,value)".into(),
        )),
    }
}

pub fn write_path(writer: impl Write, path: &SampledPath) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["t", "value"]).map_err(io_err)?;
    for (t, v) in path.times().iter().zip(path.values()) {
        w.write_record([t.to_string(), v.to_string()])
            .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn write_cadlag(writer: impl Write, path: &CadlagPath) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["t", "left", "right"]).map_err(io_err)?;
    for k in 0..path.len() {
        w.write_record([
            path.times()[k].to_string(),
            path.left()[k].to_string(),
            path.right()[k].to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn write_generated(writer: impl Write, g: &PathData) -> Result<()> {
    match g {
        Generated::Continuous(p) => write_path(writer, p),
        Generated::Cadlag(p) => write_cadlag(writer, p),
    }
}

/// `a,N,L` per scale.
pub fn write_profile(writer: impl Write, prof: &TrimProfile) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["a", "N", "L"]).map_err(io_err)?;
    for i in 0..prof.len() {
        w.write_record([
            prof.scales[i].to_string(),
            prof.counts[i].to_string(),
            (prof.lengths[i] + 0.0).to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// `{schema, root, nodes: [{id, kind, level, parent, height, tStart, tEnd}]}`.
pub fn tree_json(tree: &MergeTree) -> serde_json::Value {
    serde_json::json!({
        "schema": 1,
        "root": tree.root,
        "nodes": tree.nodes,
    })
}
