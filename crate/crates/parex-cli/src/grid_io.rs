//! Grid dumps. CSV layout: header comment with the grid shape, then one row
//! per cell in flat-index order (row-major, time slowest): `x,t,value` for
//! n = 1 and `x,y,t,value` for n = 2. The binary layout is the same order as
//! raw little-endian f64 with a JSON sidecar describing the shape.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;

use parex_core::lattice::GridFunction;

pub fn write_csv(path: &Path, f: &GridFunction) -> anyhow::Result<()> {
    let spec = f.spec;
    let mut out = String::new();
    out.push_str(&format!(
        "# n={} p={} extent_space={} extent_time={} order=row-major-time-slowest\n",
        spec.n, spec.p, spec.extent_space, spec.extent_time
    ));
    if spec.n == 1 {
        out.push_str("x,t,value\n");
    } else {
        out.push_str("x,y,t,value\n");
    }
    for c in spec.cells() {
        let v = f.value(&c);
        if spec.n == 1 {
            out.push_str(&format!("{},{},{}\n", c.x[0], c.t, v));
        } else {
            out.push_str(&format!("{},{},{},{}\n", c.x[0], c.x[1], c.t, v));
        }
    }
    fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_binary(path: &Path, f: &GridFunction) -> anyhow::Result<()> {
    let mut file =
        fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    for &v in f.values() {
        file.write_all(&v.to_le_bytes())?;
    }
    let spec = f.spec;
    let meta = serde_json::json!({
        "n": spec.n,
        "p": spec.p,
        "extent_space": spec.extent_space,
        "extent_time": spec.extent_time,
        "dtype": "f64-le",
        "order": "row-major-time-slowest",
    });
    let meta_path = path.with_extension("meta.json");
    fs::write(&meta_path, serde_json::to_string_pretty(&meta)?)
        .with_context(|| format!("cannot write {}", meta_path.display()))?;
    Ok(())
}
