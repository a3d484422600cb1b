//! Writes the worked data and morphisms as JSON under `docs/examples/`.

use std::path::PathBuf;

use pel_core::fixtures;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| "docs/examples".into());
    std::fs::create_dir_all(&dir)?;
    for (name, json) in fixtures::doc_examples() {
        std::fs::write(dir.join(name), json)?;
    }
    Ok(())
}
