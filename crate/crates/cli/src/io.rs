//! Reading graph6 and JSON inputs, writing JSON and graph6 outputs.

use std::fs;
use std::path::Path;

use anyhow::Result;
use hboot::{graph6, Graph};
use serde_json::Value;

/// Marks an error as a failure to read or parse an input file.
#[derive(Debug)]
pub struct Input(pub String);

impl std::fmt::Display for Input {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Input {}

pub fn input_error<E>(err: E, context: String) -> anyhow::Error
where
    E: std::error::Error + Send + Sync + 'static,
{
    anyhow::Error::new(err).context(Input(context))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| input_error(e, format!("reading {}", path.display())))
}

/// Every graph of a graph6 file, one per non-blank line.
pub fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    let text = read_text(path)?;
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let g = graph6::decode(line).map_err(|e| input_error(e, format!("{}:{}", path.display(), i + 1)))?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// The single graph of a graph6 file.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let mut graphs = read_graphs(path)?;
    match graphs.len() {
        1 => Ok(graphs.pop().unwrap()),
        k => Err(anyhow::Error::new(Input(format!("{}: expected one graph, found {k}", path.display())))),
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| input_error(e, format!("{}: invalid JSON", path.display())))
}

/// Writes `value` as pretty JSON with sorted keys, to `out` or standard output.
pub fn write_json(value: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(&text, out)
}

pub fn write_text(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input_error(e, format!("writing {}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
