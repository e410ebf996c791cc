//! Front diagrams of one-dimensional Legendrians as ordered event lists.
//!
//! An event list reads left to right: a left cusp inserts two strands at a
//! level, a crossing swaps two adjacent strands, a right cusp closes two
//! adjacent strands. Validity means every event is in range, the diagram
//! closes up, and the result is a single closed curve.

use crate::error::{GfhError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    #[serde(rename = "lcusp")]
    LCusp,
    #[serde(rename = "rcusp")]
    RCusp,
    #[serde(rename = "cross")]
    Cross,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    #[serde(rename = "type")]
    pub kind: EventKind,
    pub level: usize,
}

impl Event {
    pub fn lcusp(level: usize) -> Self {
        Event { kind: EventKind::LCusp, level }
    }
    pub fn rcusp(level: usize) -> Self {
        Event { kind: EventKind::RCusp, level }
    }
    pub fn cross(level: usize) -> Self {
        Event { kind: EventKind::Cross, level }
    }
}

/// A front diagram given by its event list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontDiagram {
    pub events: Vec<Event>,
}

/// Everything derived from a structurally valid diagram.
#[derive(Debug, Clone)]
pub struct FrontAnalysis {
    /// Strand arcs at each event boundary: `states[e]` is the arc list
    /// before event `e`; `states[events.len()]` is the final (empty) state.
    pub states: Vec<Vec<usize>>,
    /// Total number of arcs (arcs are born at left cusps, die at right cusps).
    pub arc_count: usize,
    /// Maslov potential per arc (present only when the rotation number is 0).
    pub potentials: Option<Vec<i64>>,
    /// Traversal direction per arc: +1 rightward, -1 leftward.
    pub directions: Vec<i8>,
    pub components: usize,
    pub up_cusps: usize,
    pub down_cusps: usize,
    pub writhe: i64,
    pub right_cusps: usize,
}

impl FrontDiagram {
    pub fn new(events: Vec<Event>) -> Self {
        FrontDiagram { events }
    }

    /// Validate the diagram and compute arcs, traversal, and potentials.
    pub fn analyze(&self) -> Result<FrontAnalysis> {
        if self.events.is_empty() {
            return Err(GfhError::InvalidInput("empty event list".into()));
        }
        let mut states: Vec<Vec<usize>> = Vec::with_capacity(self.events.len() + 1);
        let mut strands: Vec<usize> = Vec::new();
        let mut arc_count = 0usize;
        // Cusp partners: (upper arc, lower arc) per cusp event, plus whether
        // the cusp is a left one.
        let mut cusp_joins: Vec<(usize, usize, bool)> = Vec::new();
        let mut right_cusps = 0usize;
        // For each arc, the events where it is born and where it dies.
        let mut born_at = Vec::new();
        let mut dies_at = Vec::new();

        for (e, ev) in self.events.iter().enumerate() {
            states.push(strands.clone());
            match ev.kind {
                EventKind::LCusp => {
                    if ev.level > strands.len() {
                        return Err(GfhError::InvalidInput(format!(
                            "event {e}: left cusp at level {} with {} strands",
                            ev.level,
                            strands.len()
                        )));
                    }
                    let upper = arc_count;
                    let lower = arc_count + 1;
                    arc_count += 2;
                    born_at.push(e);
                    born_at.push(e);
                    dies_at.push(usize::MAX);
                    dies_at.push(usize::MAX);
                    strands.insert(ev.level, lower);
                    strands.insert(ev.level, upper);
                    cusp_joins.push((upper, lower, true));
                }
                EventKind::RCusp => {
                    if ev.level + 2 > strands.len() {
                        return Err(GfhError::InvalidInput(format!(
                            "event {e}: right cusp at level {} with {} strands",
                            ev.level,
                            strands.len()
                        )));
                    }
                    let upper = strands.remove(ev.level);
                    let lower = strands.remove(ev.level);
                    if upper == lower {
                        return Err(GfhError::InvalidInput(format!(
                            "event {e}: right cusp closes a strand with itself"
                        )));
                    }
                    dies_at[upper] = e;
                    dies_at[lower] = e;
                    cusp_joins.push((upper, lower, false));
                    right_cusps += 1;
                }
                EventKind::Cross => {
                    if ev.level + 2 > strands.len() {
                        return Err(GfhError::InvalidInput(format!(
                            "event {e}: crossing at level {} with {} strands",
                            ev.level,
                            strands.len()
                        )));
                    }
                    strands.swap(ev.level, ev.level + 1);
                }
            }
        }
        states.push(strands.clone());
        if !strands.is_empty() {
            return Err(GfhError::InvalidInput(format!(
                "diagram does not close: {} strands remain",
                strands.len()
            )));
        }
        if arc_count == 0 {
            return Err(GfhError::InvalidInput("diagram has no strands".into()));
        }

        // Traverse the closed curve, orienting every arc. Starting rightward
        // on arc 0; direction flips at each cusp.
        let mut directions = vec![0i8; arc_count];
        let mut visited = 0usize;
        let mut components = 0usize;
        let mut up_cusps = 0usize;
        let mut down_cusps = 0usize;
        // Partner maps at birth/death cusps.
        let mut left_partner = vec![usize::MAX; arc_count];
        let mut right_partner = vec![usize::MAX; arc_count];
        let mut is_upper_left = vec![false; arc_count];
        let mut is_upper_right = vec![false; arc_count];
        for &(u, l, left) in &cusp_joins {
            if left {
                left_partner[u] = l;
                left_partner[l] = u;
                is_upper_left[u] = true;
            } else {
                right_partner[u] = l;
                right_partner[l] = u;
                is_upper_right[u] = true;
            }
        }
        while visited < arc_count {
            let start = (0..arc_count).find(|&a| directions[a] == 0).unwrap();
            components += 1;
            let mut arc = start;
            let mut dir: i8 = 1;
            loop {
                directions[arc] = dir;
                visited += 1;
                let (next, at_upper) = if dir == 1 {
                    // Moving right: we hit the arc's right cusp.
                    (right_partner[arc], is_upper_right[arc])
                } else {
                    (left_partner[arc], is_upper_left[arc])
                };
                // Passing the cusp: upper-to-lower is downward.
                if at_upper {
                    down_cusps += 1;
                } else {
                    up_cusps += 1;
                }
                arc = next;
                dir = -dir;
                if arc == start && dir == 1 {
                    break;
                }
                if directions[arc] != 0 {
                    // Already oriented: the component closed up.
                    break;
                }
            }
        }

        // Maslov potentials from cusp constraints: upper = lower + 1.
        let mut pot = vec![i64::MIN; arc_count];
        let mut consistent = true;
        let mut stack = vec![0usize];
        pot[0] = 0;
        while let Some(a) = stack.pop() {
            for (partner, upper) in [
                (left_partner[a], is_upper_left[a]),
                (right_partner[a], is_upper_right[a]),
            ] {
                if partner == usize::MAX {
                    continue;
                }
                let expected = if upper { pot[a] - 1 } else { pot[a] + 1 };
                if pot[partner] == i64::MIN {
                    pot[partner] = expected;
                    stack.push(partner);
                } else if pot[partner] != expected {
                    consistent = false;
                }
            }
            if !consistent {
                break;
            }
        }
        // Multi-component diagrams only solve arc 0's component; treat them
        // as potential-free (invariants reject them separately anyway).
        if pot.iter().any(|&p| p == i64::MIN) {
            consistent = false;
        }
        let potentials = consistent.then_some(pot);

        // Writhe: needs directions; the descending strand fronts the crossing.
        let mut writhe = 0i64;
        for (e, ev) in self.events.iter().enumerate() {
            if ev.kind != EventKind::Cross {
                continue;
            }
            let before = &states[e];
            let desc = before[ev.level]; // goes down through the crossing
            let asc = before[ev.level + 1];
            // Tangents: descending drawn down-right; traversal may reverse.
            let td = if directions[desc] == 1 { (1.0, -1.0) } else { (-1.0, 1.0) };
            let ta = if directions[asc] == 1 { (1.0, 1.0) } else { (-1.0, -1.0) };
            let det = td.0 * ta.1 - td.1 * ta.0;
            writhe += if det > 0.0 { 1 } else { -1 };
        }

        Ok(FrontAnalysis {
            states,
            arc_count,
            potentials,
            directions,
            components,
            up_cusps,
            down_cusps,
            writhe,
            right_cusps,
        })
    }

    /// Thurston-Bennequin and rotation numbers.
    ///
    /// The diagram must be a single closed curve; a nonzero rotation number
    /// (equivalently, no consistent Maslov potential) is an error.
    pub fn classical_invariants(&self) -> Result<(i64, i64)> {
        let a = self.analyze()?;
        if a.components != 1 {
            return Err(GfhError::InvalidInput(format!(
                "front has {} components; expected a single closed curve",
                a.components
            )));
        }
        let rot = (a.down_cusps as i64 - a.up_cusps as i64) / 2;
        if rot != 0 || a.potentials.is_none() {
            return Err(GfhError::NonzeroRotation(format!(
                "rotation number {rot}; no consistent Maslov potential exists"
            )));
        }
        Ok((a.writhe - a.right_cusps as i64, rot))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strands = self
            .events
            .iter()
            .scan(0i64, |acc, e| {
                match e.kind {
                    EventKind::LCusp => *acc += 2,
                    EventKind::RCusp => *acc -= 2,
                    EventKind::Cross => {}
                }
                Some(*acc)
            })
            .max()
            .unwrap_or(0);
        serde_json::json!({
            "strands": strands,
            "events": self.events,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<FrontDiagram> {
        #[derive(Deserialize)]
        struct FrontJson {
            events: Vec<Event>,
        }
        let doc: FrontJson = serde_json::from_value(value.clone())?;
        Ok(FrontDiagram::new(doc.events))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legfront::fronts;

    #[test]
    fn unknot_invariants() {
        let (tb, rot) = fronts::unknot().classical_invariants().unwrap();
        assert_eq!((tb, rot), (-1, 0));
    }

    #[test]
    fn trefoil_invariants() {
        let (tb, rot) = fronts::trefoil().classical_invariants().unwrap();
        assert_eq!((tb, rot), (1, 0));
    }

    #[test]
    fn stabilized_unknot_is_rejected() {
        // A zigzag: one strand passes over a cusp pair; rotation number 1.
        let f = FrontDiagram::new(vec![
            Event::lcusp(0),
            Event::lcusp(1),
            Event::rcusp(0),
            Event::rcusp(0),
        ]);
        let err = f.classical_invariants().unwrap_err();
        assert!(matches!(err, GfhError::NonzeroRotation(_)));
    }

    #[test]
    fn non_closing_diagram_rejected() {
        let f = FrontDiagram::new(vec![Event::lcusp(0)]);
        assert!(f.analyze().is_err());
    }

    #[test]
    fn two_component_link_rejected_for_invariants() {
        let f = FrontDiagram::new(vec![
            Event::lcusp(0),
            Event::rcusp(0),
            Event::lcusp(0),
            Event::rcusp(0),
        ]);
        let a = f.analyze().unwrap();
        assert_eq!(a.components, 2);
        assert!(f.classical_invariants().is_err());
    }

    #[test]
    fn trefoil_potentials() {
        let a = fronts::trefoil().analyze().unwrap();
        let pot = a.potentials.unwrap();
        // Arcs: a1, a2 from the first cusp; b1, b2 from the second.
        assert_eq!(pot[0] - pot[1], 1);
        assert_eq!(pot[2] - pot[3], 1);
        // The crossing strands (a2, b1) have equal potential.
        assert_eq!(pot[1], pot[2]);
    }
}
