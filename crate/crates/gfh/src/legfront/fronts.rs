//! The shipped front corpus.

use super::front::{Event, FrontDiagram};

/// The flying-saucer unknot: one cusp pair, no crossings.
pub fn unknot() -> FrontDiagram {
    FrontDiagram::new(vec![Event::lcusp(0), Event::rcusp(0)])
}

/// The same Legendrian unknot in a four-strand presentation with one
/// crossing; used by the presentation-independence checks.
pub fn unknot_wide() -> FrontDiagram {
    FrontDiagram::new(vec![
        Event::lcusp(0),
        Event::lcusp(2),
        Event::cross(1),
        Event::rcusp(0),
        Event::rcusp(0),
    ])
}

/// The maximal-tb positive trefoil: two cusp pairs around a column of three
/// crossings.
pub fn trefoil() -> FrontDiagram {
    FrontDiagram::new(vec![
        Event::lcusp(0),
        Event::lcusp(2),
        Event::cross(1),
        Event::cross(1),
        Event::cross(1),
        Event::rcusp(0),
        Event::rcusp(0),
    ])
}

/// An alternative plat of the trefoil with a pushed-through strand; same
/// Legendrian, different event list.
pub fn trefoil_alt() -> FrontDiagram {
    FrontDiagram::new(vec![
        Event::lcusp(0),
        Event::lcusp(2),
        Event::cross(1),
        Event::cross(1),
        Event::cross(1),
        Event::rcusp(1),
        Event::rcusp(0),
    ])
}

/// The twist-knot family: `d` switchable crossings flanked by a clasp, with
/// the strand potentials wound so the column carries degrees up to `d - 1`.
///
/// These fronts realize linearized homology in degrees `{-(d-1), 1, d-1}`;
/// `twist_knot(3)` is the maximal-tb Legendrian m(5_2).
pub fn twist_knot(d: usize) -> FrontDiagram {
    assert!(d >= 3, "twist knots are generated for d >= 3");
    unimplemented!("filled in after the search pass");
}
