use std::io::Read;

use anyhow::{bail, Context, Result};
use intertwine_core::document::{parse_document, Document};
use intertwine_core::fixtures::FixtureId;
use intertwine_core::{ElementSet, Matroid, MatroidError};

/// Read a source: a file path, `-` for stdin, or `fixture:<id>`.
pub fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        return Ok(s);
    }
    if src.starts_with("fixture:") {
        bail!("`{src}` is a fixture, not a file");
    }
    std::fs::read_to_string(src).with_context(|| format!("reading `{src}`"))
}

pub fn load(src: &str) -> Result<Document> {
    if let Some(id) = src.strip_prefix("fixture:") {
        let id: FixtureId = id.parse().with_context(|| format!("in `{src}`"))?;
        let matroid = id.build().with_context(|| format!("building `{src}`"))?;
        return Ok(Document { name: Some(id.to_string()), matroid });
    }
    parse_document(&read_source(src)?).with_context(|| format!("in `{src}`"))
}

pub fn load_matroid(src: &str) -> Result<Matroid> {
    Ok(load(src)?.matroid)
}

/// Parse problems that only say the presentation is not a matroid.
pub fn is_axiom_failure(e: &MatroidError) -> bool {
    matches!(
        e,
        MatroidError::Axiom(_)
            | MatroidError::DuplicateFlat(_)
            | MatroidError::RankExceedsSize { .. }
            | MatroidError::FlatOutsideGround(_)
            | MatroidError::BadOracle(_)
    )
}

pub fn labels_to_set(m: &Matroid, labels: &[String], what: &str) -> Result<ElementSet> {
    m.set_of(labels).with_context(|| format!("in {what}"))
}
