//! Gridded Flow Archive reader and writer.
//!
//! A JSON header object
//! `{"version": 1, "encoding": ..., "fill_sentinel": ..., "axes": {"x": [..], "y": [..], "z": [..], "t": [..]}}`
//! carries either inline nested arrays `"u"` and `"v"` shaped `[t][z][y][x]`
//! (`"encoding": "inline"`), or a `"data_offset"` byte position at which
//! `|t|*|z|*|y|*|x|` little-endian `f32` values of `u` start, followed by the
//! same count for `v` (`"encoding": "binary"`).

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Axes, FlowError, FlowGrid};

pub const ARCHIVE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    Inline,
    Binary,
}

#[derive(Deserialize)]
struct RawArchive {
    version: u32,
    encoding: Encoding,
    fill_sentinel: f64,
    axes: Axes,
    #[serde(default)]
    u: Option<Value>,
    #[serde(default)]
    v: Option<Value>,
    #[serde(default)]
    data_offset: Option<u64>,
}

#[derive(Serialize)]
struct InlineArchive<'a> {
    version: u32,
    encoding: Encoding,
    fill_sentinel: f64,
    axes: &'a Axes,
    u: Vec<Vec<Vec<Vec<f64>>>>,
    v: Vec<Vec<Vec<Vec<f64>>>>,
}

#[derive(Serialize)]
struct BinaryHeader<'a> {
    version: u32,
    encoding: Encoding,
    fill_sentinel: f64,
    axes: &'a Axes,
    data_offset: u64,
}

pub fn load_flow_grid(path: impl AsRef<Path>) -> Result<FlowGrid, FlowError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| FlowError::Io { path: path.display().to_string(), source })?;
    parse(&bytes)
}

pub fn read_flow_grid(mut reader: impl Read) -> Result<FlowGrid, FlowError> {
    let mut bytes = Vec::new();
    reader
        .read_to_end(&mut bytes)
        .map_err(|source| FlowError::Io { path: "<reader>".into(), source })?;
    parse(&bytes)
}

pub fn save_flow_grid(grid: &FlowGrid, path: impl AsRef<Path>, encoding: Encoding) -> Result<(), FlowError> {
    let path = path.as_ref();
    let io_err = |source| FlowError::Io { path: path.display().to_string(), source };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut w = std::io::BufWriter::new(file);
    write_flow_grid(grid, &mut w, encoding)?;
    w.flush().map_err(io_err)
}

pub fn write_flow_grid(grid: &FlowGrid, mut w: impl Write, encoding: Encoding) -> Result<(), FlowError> {
    let io_err = |source| FlowError::Io { path: "<writer>".into(), source };
    match encoding {
        Encoding::Inline => {
            let doc = InlineArchive {
                version: ARCHIVE_VERSION,
                encoding,
                fill_sentinel: grid.fill_sentinel(),
                axes: grid.axes(),
                u: nest(grid.u_values(), grid.shape()),
                v: nest(grid.v_values(), grid.shape()),
            };
            serde_json::to_writer(&mut w, &doc).map_err(|e| FlowError::Malformed(e.to_string()))?;
            w.write_all(b"\n").map_err(io_err)
        }
        Encoding::Binary => {
            let mut offset = 0u64;
            let header = loop {
                let h = BinaryHeader {
                    version: ARCHIVE_VERSION,
                    encoding,
                    fill_sentinel: grid.fill_sentinel(),
                    axes: grid.axes(),
                    data_offset: offset,
                };
                let s = serde_json::to_string(&h).map_err(|e| FlowError::Malformed(e.to_string()))?;
                let needed = s.len() as u64 + 1;
                if needed == offset {
                    break s;
                }
                offset = needed;
            };
            w.write_all(header.as_bytes()).map_err(io_err)?;
            w.write_all(b"\n").map_err(io_err)?;
            for &x in grid.u_values().iter().chain(grid.v_values()) {
                w.write_all(&(x as f32).to_le_bytes()).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn nest(flat: &[f64], [nt, nz, ny, nx]: [usize; 4]) -> Vec<Vec<Vec<Vec<f64>>>> {
    let mut it = flat.iter().copied();
    (0..nt)
        .map(|_| {
            (0..nz)
                .map(|_| (0..ny).map(|_| it.by_ref().take(nx).collect()).collect())
                .collect()
        })
        .collect()
}

fn parse(bytes: &[u8]) -> Result<FlowGrid, FlowError> {
    let mut stream = serde_json::Deserializer::from_slice(bytes).into_iter::<RawArchive>();
    let raw = match stream.next() {
        Some(Ok(raw)) => raw,
        Some(Err(e)) => return Err(FlowError::Malformed(format!("header: {e}"))),
        None => return Err(FlowError::Malformed("empty file".into())),
    };
    if raw.version != ARCHIVE_VERSION {
        return Err(FlowError::Malformed(format!("unsupported version {}", raw.version)));
    }
    let shape = raw.axes.shape();
    // axis problems are reported before any shape checks
    raw.axes.validate()?;
    let (u, v) = match raw.encoding {
        Encoding::Inline => {
            let u = raw.u.ok_or_else(|| FlowError::Malformed("missing field \"u\"".into()))?;
            let v = raw.v.ok_or_else(|| FlowError::Malformed("missing field \"v\"".into()))?;
            (flatten("u", &u, shape)?, flatten("v", &v, shape)?)
        }
        Encoding::Binary => {
            let offset = raw
                .data_offset
                .ok_or_else(|| FlowError::Malformed("binary archive without data_offset".into()))?
                as usize;
            let n: usize = shape.iter().product();
            let need = offset.checked_add(n * 8).unwrap_or(usize::MAX);
            if offset > bytes.len() || need > bytes.len() {
                return Err(FlowError::Malformed(format!(
                    "binary block truncated: need {need} bytes, file has {}",
                    bytes.len()
                )));
            }
            let fill = raw.fill_sentinel;
            let decode = |chunk: &[u8]| {
                let x = f32::from_le_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
                // f32 storage rounds the sentinel too; map it back exactly
                if x == fill as f32 {
                    fill
                } else {
                    x as f64
                }
            };
            let block = &bytes[offset..need];
            let u = block[..n * 4].chunks_exact(4).map(decode).collect();
            let v = block[n * 4..].chunks_exact(4).map(decode).collect();
            (u, v)
        }
    };
    FlowGrid::new(raw.axes, u, v, raw.fill_sentinel)
}

fn flatten(field: &'static str, value: &Value, shape: [usize; 4]) -> Result<Vec<f64>, FlowError> {
    let mut out = Vec::with_capacity(shape.iter().product());
    let mut path = Vec::with_capacity(4);
    walk(field, value, &shape, 0, &mut path, &mut out)?;
    Ok(out)
}

fn walk(
    field: &'static str,
    value: &Value,
    shape: &[usize; 4],
    depth: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<f64>,
) -> Result<(), FlowError> {
    if depth == 4 {
        return match value.as_f64() {
            Some(x) => {
                out.push(x);
                Ok(())
            }
            None => Err(FlowError::Malformed(format!("field {field}: non-numeric entry at {path:?}"))),
        };
    }
    let arr = value.as_array().ok_or_else(|| FlowError::ShapeMismatch {
        field,
        expected: shape.to_vec(),
        found: path.clone(),
    })?;
    if arr.len() != shape[depth] {
        let mut found = path.clone();
        found.push(arr.len());
        // complete the reported shape along first elements
        let mut cur = arr.first();
        while let Some(Value::Array(a)) = cur {
            found.push(a.len());
            cur = a.first();
        }
        return Err(FlowError::ShapeMismatch { field, expected: shape.to_vec(), found });
    }
    path.push(arr.len());
    for item in arr {
        walk(field, item, shape, depth + 1, path, out)?;
    }
    path.pop();
    Ok(())
}
