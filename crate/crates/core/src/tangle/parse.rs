use serde::Deserialize;

use super::{EventKind, SliceDiagram, SliceEvent, TangleError};

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(segment: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in segment.char_indices().chain(std::iter::once((segment.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &segment[s..i], col: offset + segment[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> TangleError {
    TangleError::Syntax { line, col, msg: msg.into() }
}

fn number<T: std::str::FromStr>(tok: Option<&Token>, line: usize, end: usize, what: &str) -> Result<T, TangleError> {
    let tok = tok.ok_or_else(|| syntax(line, end, format!("expected {what}")))?;
    tok.text.parse().map_err(|_| syntax(line, tok.col, format!("expected {what}, found `{}`", tok.text)))
}

fn parse_event(toks: &[Token], line: usize, end: usize) -> Result<SliceEvent, TangleError> {
    let head = &toks[0];
    let kind = EventKind::from_keyword(head.text)
        .ok_or_else(|| syntax(line, head.col, format!("unknown event `{}`", head.text)))?;
    let mut rest = toks[1..].iter();
    let color = if kind.is_cup() { Some(number::<u32>(rest.next(), line, end, "a colour")?) } else { None };
    match rest.next() {
        Some(t) if t.text == "at" => {}
        Some(t) => return Err(syntax(line, t.col, format!("expected `at`, found `{}`", t.text))),
        None => return Err(syntax(line, end, "expected `at`")),
    }
    let position = number::<usize>(rest.next(), line, end, "a strand position")?;
    if let Some(t) = rest.next() {
        return Err(syntax(line, t.col, format!("unexpected `{}`", t.text)));
    }
    Ok(SliceEvent { kind, position, color, line })
}

/// Parses `.slc` text. Statements are separated by newlines or `/`; `#`
/// starts a comment. The first statement must be `N <even>`.
pub fn parse_diagram(text: &str) -> Result<SliceDiagram, TangleError> {
    let mut n: Option<u32> = None;
    let mut events = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for segment in body.split('/') {
            let toks = tokens(segment, offset);
            let end = offset + segment.chars().count() + 1;
            offset = end;
            if toks.is_empty() {
                continue;
            }
            if n.is_none() {
                if toks[0].text != "N" {
                    return Err(syntax(line, toks[0].col, "diagram must start with `N <even>`"));
                }
                let value: i64 = number(toks.get(1), line, end, "the level N")?;
                if let Some(t) = toks.get(2) {
                    return Err(syntax(line, t.col, format!("unexpected `{}`", t.text)));
                }
                if value <= 0 || value % 2 != 0 || value > u32::MAX as i64 {
                    return Err(TangleError::BadN { line, value });
                }
                n = Some(value as u32);
                continue;
            }
            if toks[0].text == "N" {
                return Err(syntax(line, toks[0].col, "N may only be given once"));
            }
            events.push(parse_event(&toks, line, end)?);
        }
    }
    let n = n.ok_or_else(|| syntax(last_line, 1, "missing `N <even>` header"))?;
    SliceDiagram::new(n, events)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    #[serde(rename = "N")]
    n: i64,
    events: Vec<SliceEvent>,
}

/// Parses the JSON mirror `{"N": 2, "events": [{"kind": "cup", "position": 0, "color": 1}, ...]}`.
pub fn parse_json(text: &str) -> Result<SliceDiagram, TangleError> {
    let raw: DiagramJson = serde_json::from_str(text).map_err(|e| syntax(e.line(), e.column(), e.to_string()))?;
    if raw.n <= 0 || raw.n % 2 != 0 || raw.n > u32::MAX as i64 {
        return Err(TangleError::BadN { line: 1, value: raw.n });
    }
    let mut events = raw.events;
    for (i, ev) in events.iter_mut().enumerate() {
        ev.line = i + 1;
        if ev.kind.is_cup() != ev.color.is_some() {
            return Err(TangleError::Malformed {
                line: i + 1,
                msg: "colour is required on cups and only on cups".into(),
            });
        }
    }
    SliceDiagram::new(raw.n as u32, events)
}

impl<'de> Deserialize<'de> for SliceDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(deserializer)?;
        let text = serde_json::json!({ "N": raw.n, "events": raw.events }).to_string();
        parse_json(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let d = parse_diagram("N 2 / cup 1 at 0 / cap at 0").unwrap();
        assert_eq!(d.events().len(), 2);
        assert_eq!(d.events()[0].color, Some(1));
        assert!(parse_diagram("N 2 / cup 1 at 0 / tw+ at 0 / cap at 0").is_ok());
        assert!(matches!(
            parse_diagram("N 2 / cup 1 at 0 / cap at 1"),
            Err(TangleError::BadPosition { position: 1, strands: 2, .. })
        ));
    }

    #[test]
    fn comments_and_lines() {
        let text = "# unknot\nN 4\n\ncup 3 at 0   # born\ntw- at 1\ncap at 0\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.events()[1].line, 5);
        assert_eq!(parse_diagram(&d.to_slc()).unwrap(), {
            let mut e = d.events().to_vec();
            for (i, ev) in e.iter_mut().enumerate() {
                ev.line = i + 2;
            }
            SliceDiagram::new(4, e).unwrap()
        });
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_diagram("N 2\ncup 1 at 0\nfoo at 0") {
            Err(TangleError::Syntax { line: 3, col: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_diagram("N 2\ncup x at 0") {
            Err(TangleError::Syntax { line: 2, col: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_diagram("N 2 / cup 1 at") {
            Err(TangleError::Syntax { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_diagram("N 3"), Err(TangleError::BadN { value: 3, .. })));
        assert!(matches!(parse_diagram("cup 1 at 0"), Err(TangleError::Syntax { .. })));
        assert!(matches!(parse_diagram(""), Err(TangleError::Syntax { .. })));
        assert!(matches!(parse_diagram("N 2\ncap at 0 extra"), Err(TangleError::Syntax { line: 2, .. })));
    }

    #[test]
    fn json_mirror() {
        let d = parse_diagram("N 2 / cup 1 at 0 / tw+ at 0 / cap at 0").unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back = parse_json(&json).unwrap();
        assert_eq!(back.to_slc(), d.to_slc());
        let via_serde: SliceDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(via_serde.to_slc(), d.to_slc());
        assert!(parse_json(r#"{"N":2,"events":[{"kind":"cap","position":0,"color":1}]}"#).is_err());
        assert!(parse_json(r#"{"N":2,"events":[{"kind":"cup","position":0}]}"#).is_err());
    }
}
