//! Writes r = |Y| surfaces as Wavefront OBJ files, faces grouped by sign.
//!
//! cargo run --example mesh_export -- /tmp/shapes

use std::path::PathBuf;

use algebraic_harmonics::realbasis::named_state;
use algebraic_harmonics::wavefield;

fn main() -> algebraic_harmonics::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;
    for (l, name) in [(1, "z"), (2, "z2"), (2, "xy"), (3, "c2")] {
        let state = named_state(l, name)?;
        let mesh = wavefield::shape_mesh(&state.vector, name, 48, 96, 1.0)?;
        let path = dir.join(format!("l{l}_{name}.obj"));
        std::fs::write(&path, mesh.to_obj())?;
        println!(
            "{} : {} vertices, {} faces",
            path.display(),
            mesh.vertices.len(),
            mesh.faces().len()
        );
    }
    Ok(())
}
