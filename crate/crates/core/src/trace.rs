//! Move traces and their JSON-lines file format.
//!
//! ```text
//! {"type":"header","version":1,"m":2,"n":1,"places":4,"initial":[{"place":1,"height":1}]}
//! {"step":1,"from":"1","to":"2"}
//! {"type":"final","layout":[{"place":2,"height":1}]}
//! ```
//!
//! The final line is optional. Steps are 1-based and contiguous; positions
//! use the canonical syntax for the header's arity.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Configuration, GameParams, ModelError, Move, Position, TreeLayout};

pub const FORMAT_VERSION: u32 = 1;

/// A header describing the starting configuration plus an ordered move list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub params: GameParams,
    pub initial: Vec<TreeLayout>,
    pub moves: Vec<Move>,
    /// Expected final layout, carried for self-checking transport.
    pub final_layout: Option<Vec<TreeLayout>>,
    /// Free-form creation time; never compared.
    pub timestamp: Option<String>,
}

impl Trace {
    pub fn new(params: GameParams, initial: Vec<TreeLayout>, moves: Vec<Move>) -> Self {
        Self {
            params,
            initial,
            moves,
            final_layout: None,
            timestamp: None,
        }
    }

    pub fn with_final(mut self, layout: Vec<TreeLayout>) -> Self {
        self.final_layout = Some(layout);
        self
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn initial_configuration(&self) -> Result<Configuration, ModelError> {
        Configuration::initial(self.params, &self.initial)
    }

    pub fn final_configuration(&self) -> Option<Result<Configuration, ModelError>> {
        self.final_layout
            .as_ref()
            .map(|layout| Configuration::initial(self.params, layout))
    }

    /// Writes the trace as JSON lines.
    pub fn write_jsonl<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let header = HeaderLine {
            kind: "header".into(),
            version: FORMAT_VERSION,
            m: self.params.m,
            n: self.params.n,
            places: self.params.places,
            initial: self.initial.iter().map(LayoutEntry::from).collect(),
            timestamp: self.timestamp.clone(),
        };
        serde_json::to_writer(&mut *out, &header)?;
        out.write_all(b"\n")?;
        let m = self.params.m;
        for (i, mv) in self.moves.iter().enumerate() {
            let line = StepLine {
                step: i + 1,
                from: mv.from.format(m),
                to: mv.to.format(m),
            };
            serde_json::to_writer(&mut *out, &line)?;
            out.write_all(b"\n")?;
        }
        if let Some(layout) = &self.final_layout {
            let line = FinalLine {
                kind: "final".into(),
                layout: layout.iter().map(LayoutEntry::from).collect(),
            };
            serde_json::to_writer(&mut *out, &line)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self, TraceFormatError> {
        let mut lines = input.lines().enumerate();
        let (_, first) = lines.next().ok_or(TraceFormatError::Empty)?;
        let header: HeaderLine = parse_line(1, &first?)?;
        if header.kind != "header" {
            return Err(TraceFormatError::at(1, "first line must be the header"));
        }
        if header.version != FORMAT_VERSION {
            return Err(TraceFormatError::at(
                1,
                format!("unsupported version {}", header.version),
            ));
        }
        let params = GameParams::new(header.m, header.n, header.places)
            .map_err(|e| TraceFormatError::at(1, e.to_string()))?;
        let mut trace = Trace {
            params,
            initial: header.initial.into_iter().map(TreeLayout::from).collect(),
            moves: Vec::new(),
            final_layout: None,
            timestamp: header.timestamp,
        };
        for (idx, line) in lines {
            let lineno = idx + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            if trace.final_layout.is_some() {
                return Err(TraceFormatError::at(lineno, "content after the final line"));
            }
            let value: serde_json::Value = parse_line(lineno, &line)?;
            if value.get("type").is_some() {
                let fin: FinalLine = serde_json::from_value(value)
                    .map_err(|e| TraceFormatError::at(lineno, e.to_string()))?;
                if fin.kind != "final" {
                    return Err(TraceFormatError::at(
                        lineno,
                        format!("unexpected line type {:?}", fin.kind),
                    ));
                }
                trace.final_layout = Some(fin.layout.into_iter().map(TreeLayout::from).collect());
                continue;
            }
            let step: StepLine = serde_json::from_value(value)
                .map_err(|e| TraceFormatError::at(lineno, e.to_string()))?;
            let expected = trace.moves.len() + 1;
            if step.step != expected {
                return Err(TraceFormatError::at(
                    lineno,
                    format!("expected step {expected}, found {}", step.step),
                ));
            }
            let parse = |text: &str| {
                Position::parse(text, &params)
                    .map_err(|e| TraceFormatError::at(lineno, e.to_string()))
            };
            trace
                .moves
                .push(Move::new(parse(&step.from)?, parse(&step.to)?));
        }
        Ok(trace)
    }

    pub fn from_jsonl(text: &str) -> Result<Self, TraceFormatError> {
        Self::read_jsonl(text.as_bytes())
    }
}

#[derive(Debug, Error)]
pub enum TraceFormatError {
    #[error("trace file is empty")]
    Empty,
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl TraceFormatError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self::Line {
            line,
            message: message.into(),
        }
    }
}

fn parse_line<T: for<'de> Deserialize<'de>>(
    line: usize,
    text: &str,
) -> Result<T, TraceFormatError> {
    serde_json::from_str(text).map_err(|e| TraceFormatError::at(line, e.to_string()))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HeaderLine {
    #[serde(rename = "type")]
    kind: String,
    version: u32,
    m: usize,
    n: u32,
    places: usize,
    initial: Vec<LayoutEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    timestamp: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepLine {
    step: usize,
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FinalLine {
    #[serde(rename = "type")]
    kind: String,
    layout: Vec<LayoutEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutEntry {
    place: usize,
    height: u32,
}

impl From<&TreeLayout> for LayoutEntry {
    fn from(t: &TreeLayout) -> Self {
        Self {
            place: t.place,
            height: t.height,
        }
    }
}

impl From<LayoutEntry> for TreeLayout {
    fn from(e: LayoutEntry) -> Self {
        TreeLayout::new(e.place, e.height)
    }
}
