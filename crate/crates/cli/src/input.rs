//! Parsers for the line-oriented input formats: alphabet files and
//! structure files. Lines are whitespace-separated directives; `#` starts
//! a comment.

use comtrace_core::{ComtraceAlphabet, EventId, Relation};

use crate::error::CliError;

fn directive_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            None
        } else {
            Some((i + 1, fields))
        }
    })
}

/// Parses the alphabet format: one `events` line, then `sim x y` and
/// `ser x y` lines. `sim` pairs are stored in both directions, `ser`
/// pairs are ordered.
pub fn parse_alphabet(text: &str) -> Result<ComtraceAlphabet, CliError> {
    let mut events: Option<Vec<&str>> = None;
    let mut sim: Vec<(&str, &str)> = Vec::new();
    let mut ser: Vec<(&str, &str)> = Vec::new();
    for (line_no, fields) in directive_lines(text) {
        match fields[0] {
            "events" => {
                if events.is_some() {
                    return Err(CliError::invalid(format!(
                        "line {line_no}: repeated `events` directive"
                    )));
                }
                if fields.len() < 2 {
                    return Err(CliError::invalid(format!(
                        "line {line_no}: `events` needs at least one name"
                    )));
                }
                events = Some(fields[1..].to_vec());
            }
            "sim" | "ser" => {
                if fields.len() != 3 {
                    return Err(CliError::invalid(format!(
                        "line {line_no}: `{}` takes exactly two events",
                        fields[0]
                    )));
                }
                if fields[0] == "sim" {
                    sim.push((fields[1], fields[2]));
                } else {
                    ser.push((fields[1], fields[2]));
                }
            }
            other => {
                return Err(CliError::invalid(format!(
                    "line {line_no}: unknown directive `{other}`"
                )));
            }
        }
    }
    let events = events.ok_or_else(|| CliError::invalid("missing `events` directive"))?;
    Ok(ComtraceAlphabet::build(&events, &sim, &ser)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StructureKind {
    Lsos,
    Cdg,
}

/// A parsed structure file. `first` holds `prec`/`solid` pairs, `second`
/// holds `weak`/`dashed` pairs; `kind` records which directive family the
/// file used (`None` when it has nodes only).
pub struct StructureFile {
    pub node_names: Vec<String>,
    pub labels: Vec<EventId>,
    pub first: Vec<(usize, usize)>,
    pub second: Vec<(usize, usize)>,
    pub kind: Option<StructureKind>,
}

impl StructureFile {
    pub fn size(&self) -> usize {
        self.node_names.len()
    }

    pub fn relation(&self, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(self.size(), pairs)
    }
}

/// Parses the structure format: `node <id> <event>` lines declaring the
/// universe, then either `prec`/`weak` edge lines (labeled so-structures)
/// or `solid`/`dashed` edge lines (cd-graphs).
pub fn parse_structure(
    text: &str,
    alphabet: &ComtraceAlphabet,
) -> Result<StructureFile, CliError> {
    let mut file = StructureFile {
        node_names: Vec::new(),
        labels: Vec::new(),
        first: Vec::new(),
        second: Vec::new(),
        kind: None,
    };
    for (line_no, fields) in directive_lines(text) {
        match fields[0] {
            "node" => {
                if fields.len() != 3 {
                    return Err(CliError::invalid(format!(
                        "line {line_no}: `node` takes an id and an event"
                    )));
                }
                let (id, event_name) = (fields[1], fields[2]);
                if file.node_names.iter().any(|n| n == id) {
                    return Err(CliError::invalid(format!(
                        "line {line_no}: duplicate node `{id}`"
                    )));
                }
                let event = alphabet.event(event_name).ok_or_else(|| {
                    CliError::invalid(format!("line {line_no}: unknown event `{event_name}`"))
                })?;
                file.node_names.push(id.to_string());
                file.labels.push(event);
            }
            "prec" | "weak" | "solid" | "dashed" => {
                let kind = match fields[0] {
                    "prec" | "weak" => StructureKind::Lsos,
                    _ => StructureKind::Cdg,
                };
                match file.kind {
                    None => file.kind = Some(kind),
                    Some(k) if k != kind => {
                        return Err(CliError::invalid(format!(
                            "line {line_no}: `{}` mixes so-structure and cd-graph directives",
                            fields[0]
                        )));
                    }
                    _ => {}
                }
                if fields.len() != 3 {
                    return Err(CliError::invalid(format!(
                        "line {line_no}: `{}` takes two node ids",
                        fields[0]
                    )));
                }
                let resolve = |id: &str| {
                    file.node_names.iter().position(|n| n == id).ok_or_else(|| {
                        CliError::invalid(format!("line {line_no}: unknown node `{id}`"))
                    })
                };
                let pair = (resolve(fields[1])?, resolve(fields[2])?);
                match fields[0] {
                    "prec" | "solid" => file.first.push(pair),
                    _ => file.second.push(pair),
                }
            }
            other => {
                return Err(CliError::invalid(format!(
                    "line {line_no}: unknown directive `{other}`"
                )));
            }
        }
    }
    Ok(file)
}
