//! Sliced coloured link diagrams: the `.slc` grammar, the event-by-event
//! evaluator, a strand tracer producing abstract link data, and the
//! linking-matrix oracle.

mod eval;
mod handlebody;
mod parse;
mod random;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use eval::{
    color_reduce, component_of_cups, evaluate, evaluate_exponent, linking_oracle, recolor_component, reverse_component,
    trace_strands, Component, LinkData,
};
pub use handlebody::{cable_to_skein, colored_gram, core_pair_link, ColoredGram};
pub use parse::{parse_diagram, parse_json};
pub use random::{random_diagram, RandomParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: N must be a positive even integer, got {value}")]
    BadN { line: usize, value: i64 },
    #[error("line {line}: position {position} out of range with {strands} strands")]
    BadPosition { line: usize, position: usize, strands: usize },
    #[error("line {line}: cap joins strands of colours {left} and {right}")]
    ColorMismatch { line: usize, left: u32, right: u32 },
    #[error("line {line}: {event} expects the opposite strand orientations")]
    OrientationMismatch { line: usize, event: &'static str },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("diagram ends with {strands} open strands")]
    OpenStrands { strands: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EventKind {
    Cup,
    CupRev,
    Cap,
    CapRev,
    CrossPos,
    CrossNeg,
    TwistPos,
    TwistNeg,
}

impl EventKind {
    pub fn keyword(self) -> &'static str {
        match self {
            EventKind::Cup => "cup",
            EventKind::CupRev => "cup*",
            EventKind::Cap => "cap",
            EventKind::CapRev => "cap*",
            EventKind::CrossPos => "x+",
            EventKind::CrossNeg => "x-",
            EventKind::TwistPos => "tw+",
            EventKind::TwistNeg => "tw-",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Some(match word {
            "cup" => EventKind::Cup,
            "cup*" => EventKind::CupRev,
            "cap" => EventKind::Cap,
            "cap*" => EventKind::CapRev,
            "x+" => EventKind::CrossPos,
            "x-" => EventKind::CrossNeg,
            "tw+" => EventKind::TwistPos,
            "tw-" => EventKind::TwistNeg,
            _ => return None,
        })
    }

    pub fn is_cup(self) -> bool {
        matches!(self, EventKind::Cup | EventKind::CupRev)
    }
}

/// Equality ignores `line`.
#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
pub struct SliceEvent {
    pub kind: EventKind,
    pub position: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<u32>,
    /// Source line; for JSON input, the 1-based event index.
    #[serde(skip)]
    pub line: usize,
}

impl PartialEq for SliceEvent {
    fn eq(&self, other: &Self) -> bool {
        (self.kind, self.position, self.color) == (other.kind, other.position, other.color)
    }
}

impl SliceEvent {
    pub fn new(kind: EventKind, position: usize, color: Option<u32>) -> Self {
        SliceEvent { kind, position, color, line: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Down,
    Up,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Down => 1,
            Direction::Up => -1,
        }
    }
}

/// A strand crossing the current horizontal slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strand {
    pub color: u32,
    pub direction: Direction,
    /// Index of the cup event (among cups) where the strand was born.
    pub cup: usize,
}

impl Strand {
    /// `k` for a downward strand, `-k` for an upward (dual) one.
    pub fn weight(&self) -> i64 {
        self.direction.sign() * self.color as i64
    }
}

/// Closed diagram read bottom to top. Always validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceDiagram {
    #[serde(rename = "N")]
    n: u32,
    events: Vec<SliceEvent>,
}

fn step(n: u32, strands: &mut Vec<Strand>, ev: &SliceEvent, cups: &mut usize) -> Result<(), TangleError> {
    let line = ev.line;
    let bad_pos = |strands: usize| TangleError::BadPosition { line, position: ev.position, strands };
    let i = ev.position;
    match ev.kind {
        EventKind::Cup | EventKind::CupRev => {
            if i > strands.len() {
                return Err(bad_pos(strands.len()));
            }
            let color = ev.color.ok_or_else(|| TangleError::Malformed { line, msg: "cup without a colour".into() })?;
            let (left, right) = if ev.kind == EventKind::Cup {
                (Direction::Down, Direction::Up)
            } else {
                (Direction::Up, Direction::Down)
            };
            let cup = *cups;
            *cups += 1;
            strands.insert(i, Strand { color, direction: right, cup });
            strands.insert(i, Strand { color, direction: left, cup });
        }
        EventKind::Cap | EventKind::CapRev => {
            if i + 1 >= strands.len() {
                return Err(bad_pos(strands.len()));
            }
            let (l, r) = (strands[i], strands[i + 1]);
            let expected = if ev.kind == EventKind::Cap {
                (Direction::Down, Direction::Up)
            } else {
                (Direction::Up, Direction::Down)
            };
            if (l.direction, r.direction) != expected {
                return Err(TangleError::OrientationMismatch { line, event: ev.kind.keyword() });
            }
            let order = 2 * n;
            if l.color % order != r.color % order {
                return Err(TangleError::ColorMismatch { line, left: l.color, right: r.color });
            }
            strands.drain(i..i + 2);
        }
        EventKind::CrossPos | EventKind::CrossNeg => {
            if i + 1 >= strands.len() {
                return Err(bad_pos(strands.len()));
            }
            strands.swap(i, i + 1);
        }
        EventKind::TwistPos | EventKind::TwistNeg => {
            if i >= strands.len() {
                return Err(bad_pos(strands.len()));
            }
        }
    }
    Ok(())
}

impl SliceDiagram {
    pub fn new(n: u32, events: Vec<SliceEvent>) -> Result<Self, TangleError> {
        if n == 0 || n % 2 != 0 {
            return Err(TangleError::BadN { line: 1, value: n as i64 });
        }
        let mut strands = Vec::new();
        let mut cups = 0;
        for ev in &events {
            step(n, &mut strands, ev, &mut cups)?;
        }
        if !strands.is_empty() {
            return Err(TangleError::OpenStrands { strands: strands.len() });
        }
        Ok(SliceDiagram { n, events })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn events(&self) -> &[SliceEvent] {
        &self.events
    }

    /// Calls `f` with each event and the strands present just below it.
    pub fn replay(&self, mut f: impl FnMut(&SliceEvent, &[Strand])) {
        let mut strands = Vec::new();
        let mut cups = 0;
        for ev in &self.events {
            f(ev, &strands);
            step(self.n, &mut strands, ev, &mut cups).expect("validated diagram");
        }
    }

    /// The diagram in `.slc` text form.
    pub fn to_slc(&self) -> String {
        let mut out = format!("N {}\n", self.n);
        for ev in &self.events {
            match ev.color {
                Some(k) => out.push_str(&format!("{} {} at {}\n", ev.kind.keyword(), k, ev.position)),
                None => out.push_str(&format!("{} at {}\n", ev.kind.keyword(), ev.position)),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_errors() {
        let cup = |k, at| SliceEvent::new(EventKind::Cup, at, Some(k));
        let cap = |kind, at| SliceEvent::new(kind, at, None);
        assert!(SliceDiagram::new(2, vec![cup(1, 0), cap(EventKind::Cap, 0)]).is_ok());
        assert!(matches!(
            SliceDiagram::new(2, vec![cup(1, 0), cap(EventKind::CapRev, 0)]),
            Err(TangleError::OrientationMismatch { .. })
        ));
        assert!(matches!(SliceDiagram::new(2, vec![cup(1, 0)]), Err(TangleError::OpenStrands { strands: 2 })));
        assert!(matches!(SliceDiagram::new(3, vec![]), Err(TangleError::BadN { .. })));
        let mismatch =
            vec![cup(1, 0), cup(2, 2), SliceEvent::new(EventKind::CrossPos, 1, None), cap(EventKind::Cap, 1)];
        // after the crossing the middle pair is (B down, A up), colours 2 and 1
        assert!(matches!(SliceDiagram::new(4, mismatch), Err(TangleError::ColorMismatch { .. })));
    }

    #[test]
    fn weights() {
        let s = Strand { color: 3, direction: Direction::Up, cup: 0 };
        assert_eq!(s.weight(), -3);
    }
}
