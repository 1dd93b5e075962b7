//! Line-oriented text format for matroids and command reports.
//!
//! ```text
//! # U_{1,2} + U_{1,2}
//! name pairsum(2)
//! ground a0 a1 a2 a3
//! kind cyclic_flats
//! flat 0 :
//! flat 1 : a0 a1
//! flat 1 : a2 a3
//! flat 2 : a0 a1 a2 a3
//! end
//! ```
//!
//! A `kind bases` document lists `basis <labels>` lines instead and is
//! limited to 16 elements. Blank lines and `#` comments are ignored. Several
//! documents may follow each other in one file.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{MatroidError, Result};
use crate::element_set::ElementSet;
use crate::matroid::{check_labels, from_rank_table, Matroid, RankTable, RankedFlat};
use crate::verification::VerificationReport;

pub const BASES_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: Option<String>,
    pub matroid: Matroid,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    CyclicFlats,
    Bases,
}

fn err(line: usize, msg: impl Into<String>) -> MatroidError {
    MatroidError::Parse { line, msg: msg.into() }
}

#[derive(Default)]
struct Partial {
    start: usize,
    name: Option<String>,
    ground: Option<Vec<String>>,
    kind: Option<Kind>,
    flats: Vec<(usize, Vec<String>)>,
    bases: Vec<Vec<String>>,
}

impl Partial {
    fn finish(self, line: usize) -> Result<Document> {
        let ground = self.ground.ok_or_else(|| err(self.start, "document has no `ground` line"))?;
        check_labels(&ground)?;
        let index: HashMap<&str, usize> = ground.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let set = |ls: &[String]| -> Result<ElementSet> {
            ls.iter().try_fold(ElementSet::EMPTY, |acc, l| {
                if let Some(&e) = index.get(l.as_str()) {
                    Ok(acc.with(e))
                } else {
                    Err(MatroidError::UnknownLabel(l.clone()))
                }
            })
        };
        let matroid = match self.kind.ok_or_else(|| err(self.start, "document has no `kind` line"))? {
            Kind::CyclicFlats => {
                if !self.bases.is_empty() {
                    return Err(err(line, "`basis` lines in a cyclic_flats document"));
                }
                let flats = self
                    .flats
                    .iter()
                    .map(|(r, ls)| set(ls).map(|s| RankedFlat::new(s, *r)))
                    .collect::<Result<Vec<_>>>()?;
                Matroid::new(ground, flats)?
            }
            Kind::Bases => {
                if !self.flats.is_empty() {
                    return Err(err(line, "`flat` lines in a bases document"));
                }
                if ground.len() > BASES_LIMIT {
                    return Err(err(self.start, format!("bases documents allow at most {BASES_LIMIT} elements")));
                }
                let bases = self.bases.iter().map(|ls| set(ls)).collect::<Result<Vec<_>>>()?;
                let table = RankTable::from_bases(ground.len(), &bases)?;
                table.check_matroid()?;
                from_rank_table(&table, ground)?
            }
        };
        Ok(Document { name: self.name, matroid })
    }
}

/// Parse every document in `text`.
pub fn parse_documents(text: &str) -> Result<Vec<Document>> {
    let mut out = Vec::new();
    let mut cur: Option<Partial> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        let words = || rest.split_whitespace().map(String::from).collect::<Vec<_>>();
        if head == "end" {
            let p = cur.take().ok_or_else(|| err(line, "`end` without a document"))?;
            out.push(p.finish(line)?);
            continue;
        }
        let p = cur.get_or_insert_with(|| Partial { start: line, ..Partial::default() });
        match head {
            "name" => p.name = Some(rest.to_string()),
            "ground" => {
                if p.ground.is_some() {
                    return Err(err(line, "second `ground` line"));
                }
                p.ground = Some(words());
            }
            "kind" => {
                p.kind = Some(match rest {
                    "cyclic_flats" => Kind::CyclicFlats,
                    "bases" => Kind::Bases,
                    other => return Err(err(line, format!("unknown kind `{other}`"))),
                })
            }
            "flat" => {
                let (r, ls) = rest.split_once(':').ok_or_else(|| err(line, "expected `flat <rank> : <labels>`"))?;
                let r = r.trim().parse().map_err(|_| err(line, format!("bad rank `{}`", r.trim())))?;
                p.flats.push((r, ls.split_whitespace().map(String::from).collect()));
            }
            "basis" => p.bases.push(words()),
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(p) = cur {
        return Err(err(p.start, "document is missing `end`"));
    }
    Ok(out)
}

/// Parse exactly one document.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut docs = parse_documents(text)?;
    match docs.len() {
        1 => Ok(docs.pop().expect("one")),
        n => Err(err(0, format!("expected one document, found {n}"))),
    }
}

/// Cyclic-flats presentation, flats in canonical order.
pub fn serialize(m: &Matroid, name: Option<&str>) -> String {
    let mut s = String::new();
    if let Some(n) = name {
        writeln!(s, "name {n}").unwrap();
    }
    writeln!(s, "{}", format!("ground {}", m.labels().join(" ")).trim_end()).unwrap();
    s.push_str("kind cyclic_flats\n");
    for f in m.flats() {
        let ls = m.labels_of(f.elements);
        if ls.is_empty() {
            writeln!(s, "flat {} :", f.rank).unwrap();
        } else {
            writeln!(s, "flat {} : {}", f.rank, ls.join(" ")).unwrap();
        }
    }
    s.push_str("end\n");
    s
}

/// Bases listing; only for ground sets within [`BASES_LIMIT`].
pub fn serialize_bases(m: &Matroid, name: Option<&str>) -> Result<String> {
    if m.ground_size() > BASES_LIMIT {
        return Err(MatroidError::ScanLimit { what: "bases document", n: m.ground_size(), limit: BASES_LIMIT });
    }
    let mut s = String::new();
    if let Some(n) = name {
        writeln!(s, "name {n}").unwrap();
    }
    writeln!(s, "{}", format!("ground {}", m.labels().join(" ")).trim_end()).unwrap();
    s.push_str("kind bases\n");
    for b in m.enumerate_bases()? {
        writeln!(s, "basis {}", m.labels_of(b).join(" ")).unwrap();
        s.truncate(s.trim_end().len());
        s.push('\n');
    }
    s.push_str("end\n");
    Ok(s)
}

/// Report envelope printed by the command-line tool.
///
/// A check carrying a minor witness is followed by `witness delete : ...` and
/// `witness contract : ...` lines, labelled by `host`.
pub fn serialize_report(command: &str, host: Option<&Matroid>, r: &VerificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "report {command}").unwrap();
    writeln!(s, "verdict {}", r.verdict).unwrap();
    for c in &r.checks {
        writeln!(s, "check {} {} : {}", if c.passed { "ok" } else { "no" }, c.name, c.evidence).unwrap();
        if let (Some(w), Some(h)) = (&c.witness, host) {
            for (what, ls) in [("delete", w.deleted_labels(h)), ("contract", w.contracted_labels(h))] {
                let line = format!("witness {what} : {}", ls.join(" "));
                writeln!(s, "{}", line.trim_end()).unwrap();
            }
        }
    }
    for (n, v) in &r.counters {
        writeln!(s, "counter {n} {v}").unwrap();
    }
    writeln!(s, "elapsed {:.3}", r.elapsed.as_secs_f64()).unwrap();
    s.push_str("endreport\n");
    s
}
