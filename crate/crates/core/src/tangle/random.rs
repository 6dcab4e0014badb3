use rand::Rng;

use super::{Direction, EventKind, SliceDiagram, SliceEvent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    /// Upper bound on the number of strands in any slice (rounded down to even).
    pub max_strands: usize,
    /// Number of random events before the closing phase.
    pub steps: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_strands: 6, steps: 14 }
    }
}

struct Builder {
    strands: Vec<(u32, Direction)>,
    events: Vec<SliceEvent>,
}

impl Builder {
    fn push(&mut self, kind: EventKind, position: usize, color: Option<u32>) {
        match kind {
            EventKind::Cup | EventKind::CupRev => {
                let k = color.expect("cup colour");
                let (l, r) = if kind == EventKind::Cup {
                    (Direction::Down, Direction::Up)
                } else {
                    (Direction::Up, Direction::Down)
                };
                self.strands.insert(position, (k, r));
                self.strands.insert(position, (k, l));
            }
            EventKind::Cap | EventKind::CapRev => {
                self.strands.drain(position..position + 2);
            }
            EventKind::CrossPos | EventKind::CrossNeg => self.strands.swap(position, position + 1),
            EventKind::TwistPos | EventKind::TwistNeg => {}
        }
        self.events.push(SliceEvent::new(kind, position, color));
    }

    fn cap_kind(&self, i: usize) -> Option<EventKind> {
        let (a, b) = (self.strands.get(i)?, self.strands.get(i + 1)?);
        if a.0 != b.0 {
            return None;
        }
        match (a.1, b.1) {
            (Direction::Down, Direction::Up) => Some(EventKind::Cap),
            (Direction::Up, Direction::Down) => Some(EventKind::CapRev),
            _ => None,
        }
    }
}

/// A random closed diagram, built so that every prefix is valid: random cups,
/// crossings, twists and caps, then a closing phase that slides a matching
/// strand next to the leftmost one with crossings and caps them.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, n: u32, params: &RandomParams) -> SliceDiagram {
    let max = params.max_strands.max(2) & !1;
    let mut b = Builder { strands: Vec::new(), events: Vec::new() };
    let sign = |rng: &mut R, pos: EventKind, neg: EventKind| if rng.gen_bool(0.5) { pos } else { neg };
    for _ in 0..params.steps {
        let len = b.strands.len();
        let caps: Vec<usize> = (0..len.saturating_sub(1)).filter(|&i| b.cap_kind(i).is_some()).collect();
        let mut options = Vec::new();
        if len + 2 <= max {
            options.push(0);
        }
        if len >= 2 {
            options.push(1);
        }
        if len >= 1 {
            options.push(2);
        }
        if !caps.is_empty() {
            options.push(3);
        }
        match options[rng.gen_range(0..options.len())] {
            0 => {
                let kind = sign(rng, EventKind::Cup, EventKind::CupRev);
                let color = rng.gen_range(0..2 * n);
                b.push(kind, rng.gen_range(0..=len), Some(color));
            }
            1 => {
                let kind = sign(rng, EventKind::CrossPos, EventKind::CrossNeg);
                b.push(kind, rng.gen_range(0..len - 1), None);
            }
            2 => {
                let kind = sign(rng, EventKind::TwistPos, EventKind::TwistNeg);
                b.push(kind, rng.gen_range(0..len), None);
            }
            _ => {
                let i = caps[rng.gen_range(0..caps.len())];
                let kind = b.cap_kind(i).expect("cap");
                b.push(kind, i, None);
            }
        }
    }
    while !b.strands.is_empty() {
        let (color, dir) = b.strands[0];
        // colours are balanced by direction, so a partner always exists
        let j =
            (1..b.strands.len()).find(|&j| b.strands[j].0 == color && b.strands[j].1 != dir).expect("balanced strands");
        for pos in (1..j).rev() {
            let kind = sign(rng, EventKind::CrossPos, EventKind::CrossNeg);
            b.push(kind, pos, None);
        }
        let kind = b.cap_kind(0).expect("adjacent partner");
        b.push(kind, 0, None);
    }
    SliceDiagram::new(n, b.events).expect("constructed diagrams are valid")
}
