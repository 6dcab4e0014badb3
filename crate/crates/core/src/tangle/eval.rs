use serde::Serialize;

use super::{EventKind, SliceDiagram, SliceEvent};
use crate::scalar::CycloScalar;

/// Product of the slice scalars: `t^{±w_i w_j}` at crossings, `t^{±w²}` at
/// twists and `1` at cups and caps.
pub fn evaluate(d: &SliceDiagram) -> CycloScalar {
    let n = d.n();
    let mut value = CycloScalar::one(n);
    d.replay(|ev, strands| {
        let i = ev.position;
        let exponent = match ev.kind {
            EventKind::CrossPos => strands[i].weight() * strands[i + 1].weight(),
            EventKind::CrossNeg => -strands[i].weight() * strands[i + 1].weight(),
            EventKind::TwistPos => strands[i].weight().pow(2),
            EventKind::TwistNeg => -strands[i].weight().pow(2),
            _ => return,
        };
        value = &value * &CycloScalar::t_power(n, exponent);
    });
    value
}

/// The exponent `e ∈ [0, 2N)` with `evaluate(d) = t^e`.
pub fn evaluate_exponent(d: &SliceDiagram) -> i64 {
    let m = 2 * d.n() as i64;
    let mut e = 0i64;
    d.replay(|ev, strands| {
        let i = ev.position;
        e += match ev.kind {
            EventKind::CrossPos => strands[i].weight() * strands[i + 1].weight(),
            EventKind::CrossNeg => -strands[i].weight() * strands[i + 1].weight(),
            EventKind::TwistPos => strands[i].weight().pow(2),
            EventKind::TwistNeg => -strands[i].weight().pow(2),
            _ => 0,
        };
        e = e.rem_euclid(m);
    });
    e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub color: u32,
    pub framing: i64,
}

/// Abstract framed coloured link: per-component colour and framing, and the
/// symmetric matrix of pairwise linking numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkData {
    pub components: Vec<Component>,
    pub lk: Vec<Vec<i64>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut x = x;
    while parent[x] != root {
        let next = parent[x];
        parent[x] = root;
        x = next;
    }
    root
}

/// Component index of every cup, numbering components by their first cup.
pub fn component_of_cups(d: &SliceDiagram) -> Vec<usize> {
    let cups = d.events().iter().filter(|e| e.kind.is_cup()).count();
    let mut parent: Vec<usize> = (0..cups).collect();
    d.replay(|ev, strands| {
        if matches!(ev.kind, EventKind::Cap | EventKind::CapRev) {
            let a = find(&mut parent, strands[ev.position].cup);
            let b = find(&mut parent, strands[ev.position + 1].cup);
            parent[a.max(b)] = a.min(b);
        }
    });
    let mut ids = vec![usize::MAX; cups];
    let mut next = 0;
    let mut out = Vec::with_capacity(cups);
    for c in 0..cups {
        let r = find(&mut parent, c);
        if ids[r] == usize::MAX {
            ids[r] = next;
            next += 1;
        }
        out.push(ids[r]);
    }
    out
}

/// Framing = signed self-crossings plus twists; linking number = half the
/// signed count of crossings between two components. A crossing's sign is its
/// kind (`x+` / `x-`) times the product of the strand directions.
pub fn trace_strands(d: &SliceDiagram) -> LinkData {
    let comp = component_of_cups(d);
    let count = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut colors = vec![0u32; count];
    let mut cup_idx = 0;
    for ev in d.events() {
        if ev.kind.is_cup() {
            colors[comp[cup_idx]] = ev.color.expect("cup colour");
            cup_idx += 1;
        }
    }
    let mut framing = vec![0i64; count];
    let mut raw = vec![vec![0i64; count]; count];
    d.replay(|ev, strands| {
        let i = ev.position;
        let eps = match ev.kind {
            EventKind::CrossPos | EventKind::TwistPos => 1,
            EventKind::CrossNeg | EventKind::TwistNeg => -1,
            _ => return,
        };
        if matches!(ev.kind, EventKind::TwistPos | EventKind::TwistNeg) {
            framing[comp[strands[i].cup]] += eps;
            return;
        }
        let (a, b) = (strands[i], strands[i + 1]);
        let sign = eps * a.direction.sign() * b.direction.sign();
        let (ca, cb) = (comp[a.cup], comp[b.cup]);
        if ca == cb {
            framing[ca] += sign;
        } else {
            raw[ca][cb] += sign;
            raw[cb][ca] += sign;
        }
    });
    // two closed curves in the plane cross an even number of times
    debug_assert!(raw.iter().flatten().all(|x| x % 2 == 0));
    LinkData {
        components: colors.into_iter().zip(framing).map(|(color, framing)| Component { color, framing }).collect(),
        lk: raw.into_iter().map(|row| row.into_iter().map(|x| x / 2).collect()).collect(),
    }
}

/// `t^{Σ_i f_i k_i² + 2 Σ_{i<j} lk_ij k_i k_j}`.
pub fn linking_oracle(ld: &LinkData, n: u32) -> CycloScalar {
    let k: Vec<i64> = ld.components.iter().map(|c| c.color as i64).collect();
    let mut e: i64 = ld.components.iter().zip(&k).map(|(c, k)| c.framing * k * k).sum();
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            e += 2 * ld.lk[i][j] * k[i] * k[j];
        }
    }
    CycloScalar::t_power(n, e)
}

/// Replaces every colour by its residue mod `N`.
pub fn color_reduce(ld: &LinkData, n: u32) -> LinkData {
    LinkData {
        components: ld.components.iter().map(|c| Component { color: c.color % n, framing: c.framing }).collect(),
        lk: ld.lk.clone(),
    }
}

fn rebuild(d: &SliceDiagram, events: Vec<SliceEvent>) -> SliceDiagram {
    SliceDiagram::new(d.n(), events).expect("transformation preserves validity")
}

/// Recolours component `component` with `color`.
pub fn recolor_component(d: &SliceDiagram, component: usize, color: u32) -> SliceDiagram {
    let comp = component_of_cups(d);
    let mut cup_idx = 0;
    let events = d
        .events()
        .iter()
        .map(|ev| {
            let mut ev = ev.clone();
            if ev.kind.is_cup() {
                if comp[cup_idx] == component {
                    ev.color = Some(color);
                }
                cup_idx += 1;
            }
            ev
        })
        .collect();
    rebuild(d, events)
}

/// Reverses the orientation of one component. With `dualize` the colour `k`
/// becomes `2N - k`, so every strand keeps its weight.
pub fn reverse_component(d: &SliceDiagram, component: usize, dualize: bool) -> SliceDiagram {
    let comp = component_of_cups(d);
    let order = 2 * d.n();
    let mut events = d.events().to_vec();
    let mut idx = 0usize;
    let mut cup_idx = 0usize;
    d.replay(|ev, strands| {
        let ours = match ev.kind {
            EventKind::Cup | EventKind::CupRev => {
                let c = comp[cup_idx];
                cup_idx += 1;
                c == component
            }
            EventKind::Cap | EventKind::CapRev => comp[strands[ev.position].cup] == component,
            _ => false,
        };
        if ours {
            let out = &mut events[idx];
            out.kind = match ev.kind {
                EventKind::Cup => EventKind::CupRev,
                EventKind::CupRev => EventKind::Cup,
                EventKind::Cap => EventKind::CapRev,
                EventKind::CapRev => EventKind::Cap,
                k => k,
            };
            if dualize {
                out.color = ev.color.map(|k| (order - k % order) % order);
            }
        }
        idx += 1;
    });
    rebuild(d, events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::parse_diagram;

    fn t(n: u32, j: i64) -> CycloScalar {
        CycloScalar::t_power(n, j)
    }

    const HOPF: &str = "N 4\ncup 1 at 0\ncup* 3 at 2\nx+ at 1\nx+ at 1\ncap at 0\ncap* at 0";

    #[test]
    fn evaluate_examples() {
        assert!(evaluate(&parse_diagram("N 2 / cup 1 at 0 / cap at 0").unwrap()).is_one());
        assert_eq!(evaluate(&parse_diagram("N 2 / cup 1 at 0 / tw+ at 0 / cap at 0").unwrap()), t(2, 1));
        let hopf = parse_diagram(HOPF).unwrap();
        assert_eq!(evaluate(&hopf), t(4, 6));
        assert_eq!(evaluate(&hopf), t(4, evaluate_exponent(&hopf)));
    }

    #[test]
    fn trace_examples() {
        let ld = trace_strands(&parse_diagram("N 2 / cup 1 at 0 / tw+ at 0 / cap at 0").unwrap());
        assert_eq!(ld.components, vec![Component { color: 1, framing: 1 }]);
        let ld = trace_strands(&parse_diagram(HOPF).unwrap());
        assert_eq!(ld.lk, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(ld.components[1].color, 3);
        let ld = trace_strands(&parse_diagram("N 2 / cup 1 at 0 / cup 1 at 2 / cap at 2 / cap at 0").unwrap());
        assert_eq!(ld.lk, vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn oracle_examples() {
        let one = LinkData { components: vec![Component { color: 3, framing: 1 }], lk: vec![vec![0]] };
        assert_eq!(linking_oracle(&one, 4), t(4, 9));
        let hopf = LinkData {
            components: vec![Component { color: 1, framing: 0 }, Component { color: 2, framing: 0 }],
            lk: vec![vec![0, 1], vec![1, 0]],
        };
        assert_eq!(linking_oracle(&hopf, 4), t(4, 4));
        let zero = LinkData { components: vec![Component { color: 0, framing: 5 }; 2], lk: hopf.lk.clone() };
        assert!(linking_oracle(&zero, 4).is_one());
    }

    #[test]
    fn color_reduction() {
        let ld = LinkData { components: vec![Component { color: 3, framing: 1 }], lk: vec![vec![0]] };
        let red = color_reduce(&ld, 2);
        assert_eq!(red.components[0].color, 1);
        assert_eq!(linking_oracle(&ld, 2), linking_oracle(&red, 2));
        let ld = LinkData { components: vec![Component { color: 4, framing: 3 }], lk: vec![vec![0]] };
        assert_eq!(color_reduce(&ld, 4).components[0].color, 0);
    }

    #[test]
    fn reversal() {
        let hopf = parse_diagram(HOPF).unwrap();
        let value = evaluate(&hopf);
        assert_eq!(evaluate(&reverse_component(&hopf, 0, true)), value);
        // without the dual colour the linking term changes sign
        assert_eq!(evaluate(&reverse_component(&hopf, 0, false)), value.conjugate());
        let both = reverse_component(&reverse_component(&hopf, 0, false), 1, false);
        assert_eq!(evaluate(&both), value);
    }

    #[test]
    fn kink_matches_oracle() {
        let kink = parse_diagram("N 4\ncup 2 at 0\ncup 2 at 1\nx+ at 0\ncap at 1\ncap at 0").unwrap();
        let ld = trace_strands(&kink);
        assert_eq!(ld.components.len(), 1);
        assert_eq!(evaluate(&kink), linking_oracle(&ld, 4));
    }
}
