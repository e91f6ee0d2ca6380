use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::error::Result;
use super::model::Scene;

pub fn to_json(scene: &Scene) -> Result<String> {
    Ok(serde_json::to_string_pretty(scene)?)
}

pub fn from_json(text: &str) -> Result<Scene> {
    Ok(serde_json::from_str(text)?)
}

pub fn load(path: impl AsRef<Path>) -> Result<Scene> {
    from_json(&fs::read_to_string(path)?)
}

pub fn save(path: impl AsRef<Path>, scene: &Scene) -> Result<()> {
    let mut text = to_json(scene)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Reads a bundle holding one compact scene object per line.
pub fn load_bundle(path: impl AsRef<Path>) -> Result<Vec<Scene>> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

pub fn save_bundle(path: impl AsRef<Path>, scenes: &[Scene]) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    for s in scenes {
        serde_json::to_writer(&mut w, s)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}
