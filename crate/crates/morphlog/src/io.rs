//! Text formats: structuring-element specs, explicit relation files, profile
//! files and model-set rendering.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use morphlog_core::formula::{minimize, models, parse};
use morphlog_core::worlds::{parse_explicit, parse_se_spec, world_string};
use morphlog_core::{Alphabet, Formula, StructuringElement, WorldSet};

/// Parses an SE spec, reading `explicit:<path>` from disk.
pub fn load_se(spec: &str, alphabet: &Alphabet) -> Result<StructuringElement> {
    if let Some(path) = spec.strip_prefix("explicit:") {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let rows = parse_explicit(&text, alphabet.len())?;
        return Ok(StructuringElement::explicit(alphabet.len(), rows)?);
    }
    Ok(parse_se_spec(spec, alphabet)?)
}

/// Reads formulas one per line, skipping blank lines and `#` comments.
pub fn read_formula_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_owned)
        .collect()
}

/// A formula argument: literal text, or `@path` for a file whose non-comment
/// lines are conjoined.
pub fn formula_text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => load_formula_file(Path::new(path)),
        None => Ok(arg.to_owned()),
    }
}

pub fn load_formula_file(path: &Path) -> Result<String> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let lines = read_formula_lines(&text);
    if lines.is_empty() {
        return Ok("T".into());
    }
    Ok(lines
        .iter()
        .map(|l| format!("({l})"))
        .collect::<Vec<_>>()
        .join(" & "))
}

/// Alphabet from `--atoms`, or inferred from the formulas in order of first
/// occurrence.
pub fn alphabet_for(atoms: Option<&str>, texts: &[&str]) -> Result<Alphabet> {
    if let Some(spec) = atoms {
        return Ok(Alphabet::parse_list(spec)?);
    }
    let mut names: Vec<String> = Vec::new();
    for t in texts {
        for a in Formula::parse(t)?.atoms() {
            if !names.contains(&a) {
                names.push(a);
            }
        }
    }
    if names.is_empty() {
        names.push("a".into());
    }
    Ok(Alphabet::new(names)?)
}

pub fn models_of(text: &str, alphabet: &Alphabet) -> Result<WorldSet> {
    let (f, _) = parse(text, Some(alphabet))?;
    Ok(models(&f, alphabet)?)
}

/// Minimized DNF text of a model set.
pub fn render(ws: &WorldSet, alphabet: &Alphabet) -> String {
    minimize(ws, None).render(alphabet)
}

/// Minimized DNF text, free to use worlds of `dont_care`.
pub fn render_within(ws: &WorldSet, dont_care: &WorldSet, alphabet: &Alphabet) -> String {
    minimize(ws, Some(dont_care)).render(alphabet)
}

/// `{w1, w2, ...}` with worlds in index order.
pub fn render_worlds(ws: &WorldSet) -> String {
    let items: Vec<String> = ws.iter().map(|w| world_string(w, ws.n())).collect();
    format!("{{{}}}", items.join(", "))
}
