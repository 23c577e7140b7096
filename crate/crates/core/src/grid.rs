//! Triangular-grid geometry in axial coordinates.
//!
//! A node is addressed by `(a, b)`: `a` counts unit steps along E, `b` unit
//! steps along NE. Robots never see these coordinates; they only see
//! [`Label`]s relative to their own node.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A node of the infinite triangular grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct TriCoord {
    pub a: i32,
    pub b: i32,
}

impl TriCoord {
    pub const ORIGIN: TriCoord = TriCoord { a: 0, b: 0 };

    pub const fn new(a: i32, b: i32) -> Self {
        TriCoord { a, b }
    }

    pub fn neighbor(self, d: Direction) -> TriCoord {
        self + d.offset()
    }

    pub fn neighbors(self) -> [TriCoord; 6] {
        Direction::ALL.map(|d| self.neighbor(d))
    }

    /// Graph distance on the grid.
    pub fn distance(self, other: TriCoord) -> u32 {
        let d = other - self;
        (d.a.unsigned_abs() + d.b.unsigned_abs() + (d.a + d.b).unsigned_abs()) / 2
    }

    /// Label of `target` as seen by a robot standing on `self`.
    pub fn label_of(self, target: TriCoord) -> Label {
        let d = target - self;
        Label {
            x: 2 * d.a + d.b,
            y: d.b,
        }
    }

    /// Inverse of [`TriCoord::label_of`].
    pub fn coord_of_label(self, label: Label) -> Result<TriCoord, Error> {
        if (label.x + label.y) % 2 != 0 {
            return Err(Error::InvalidLabel(label.x, label.y));
        }
        Ok(self.offset_by(label))
    }

    /// Like `coord_of_label` for labels already known to be well-formed.
    pub(crate) fn offset_by(self, label: Label) -> TriCoord {
        debug_assert!((label.x + label.y) % 2 == 0);
        self + TriCoord::new((label.x - label.y) / 2, label.y)
    }
}

impl Add for TriCoord {
    type Output = TriCoord;
    fn add(self, rhs: TriCoord) -> TriCoord {
        TriCoord::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for TriCoord {
    type Output = TriCoord;
    fn sub(self, rhs: TriCoord) -> TriCoord {
        TriCoord::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl From<(i32, i32)> for TriCoord {
    fn from((a, b): (i32, i32)) -> Self {
        TriCoord::new(a, b)
    }
}

impl From<TriCoord> for (i32, i32) {
    fn from(c: TriCoord) -> Self {
        (c.a, c.b)
    }
}

impl fmt::Display for TriCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// One of the six grid directions. Declaration order is counter-clockwise
/// starting from E and is used as the canonical direction index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    E,
    NE,
    NW,
    W,
    SW,
    SE,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::E,
        Direction::NE,
        Direction::NW,
        Direction::W,
        Direction::SW,
        Direction::SE,
    ];

    pub fn offset(self) -> TriCoord {
        match self {
            Direction::E => TriCoord::new(1, 0),
            Direction::NE => TriCoord::new(0, 1),
            Direction::NW => TriCoord::new(-1, 1),
            Direction::W => TriCoord::new(-1, 0),
            Direction::SW => TriCoord::new(0, -1),
            Direction::SE => TriCoord::new(1, -1),
        }
    }

    pub fn opposite(self) -> Direction {
        self.rotate(3)
    }

    /// Rotate counter-clockwise by `steps` sixths of a turn.
    pub fn rotate(self, steps: usize) -> Direction {
        Direction::ALL[(self.index() + steps) % 6]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Label of the neighbor in this direction.
    pub fn label(self) -> Label {
        TriCoord::ORIGIN.label_of(self.offset())
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::E => "E",
            Direction::NE => "NE",
            Direction::NW => "NW",
            Direction::W => "W",
            Direction::SW => "SW",
            Direction::SE => "SE",
        }
    }

    pub fn from_name(s: &str) -> Option<Direction> {
        Direction::ALL.into_iter().find(|d| d.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A robot-relative node label: `x` orders nodes west to east in half
/// steps, `y` counts NE rows. Adjacent nodes on one row differ by 2 in `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub x: i32,
    pub y: i32,
}

impl Label {
    pub const SELF: Label = Label { x: 0, y: 0 };

    /// Builds a label, rejecting odd `x + y`.
    pub fn new(x: i32, y: i32) -> Result<Label, Error> {
        if (x + y) % 2 != 0 {
            return Err(Error::InvalidLabel(x, y));
        }
        Ok(Label { x, y })
    }

    /// For compile-time tables; parity is checked by tests over every table.
    pub const fn lit(x: i32, y: i32) -> Label {
        Label { x, y }
    }

    /// Grid distance from the observing robot.
    pub fn radius(self) -> u32 {
        TriCoord::ORIGIN.distance(TriCoord::ORIGIN.offset_by(self))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Range-1 labels in direction order E, NE, NW, W, SW, SE.
pub const RANGE1_LABELS: [Label; 6] = [
    Label::lit(2, 0),
    Label::lit(1, 1),
    Label::lit(-1, 1),
    Label::lit(-2, 0),
    Label::lit(-1, -1),
    Label::lit(1, -1),
];

/// Labels at distance exactly 2, counter-clockwise from (4,0).
pub const RANGE2_RING_LABELS: [Label; 12] = [
    Label::lit(4, 0),
    Label::lit(3, 1),
    Label::lit(2, 2),
    Label::lit(0, 2),
    Label::lit(-2, 2),
    Label::lit(-3, 1),
    Label::lit(-4, 0),
    Label::lit(-3, -1),
    Label::lit(-2, -2),
    Label::lit(0, -2),
    Label::lit(2, -2),
    Label::lit(3, -1),
];

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashMap, VecDeque};

    fn bfs_distances(radius: i32) -> HashMap<TriCoord, u32> {
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(TriCoord::ORIGIN, 0);
        queue.push_back(TriCoord::ORIGIN);
        while let Some(c) = queue.pop_front() {
            let d = dist[&c];
            for (da, db) in [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)] {
                let n = TriCoord::new(c.a + da, c.b + db);
                if n.a.abs() > radius || n.b.abs() > radius || dist.contains_key(&n) {
                    continue;
                }
                dist.insert(n, d + 1);
                queue.push_back(n);
            }
        }
        dist
    }

    #[test]
    fn neighbor_examples() {
        assert_eq!(TriCoord::ORIGIN.neighbor(Direction::E), TriCoord::new(1, 0));
        assert_eq!(TriCoord::ORIGIN.neighbor(Direction::SE), TriCoord::new(1, -1));
        assert_eq!(TriCoord::new(2, -1).neighbor(Direction::NW), TriCoord::new(1, 0));
    }

    #[test]
    fn opposites() {
        assert_eq!(Direction::E.opposite(), Direction::W);
        assert_eq!(Direction::NE.opposite(), Direction::SW);
        assert_eq!(Direction::NW.opposite(), Direction::SE);
        for d in Direction::ALL {
            assert_eq!(d.opposite().opposite(), d);
            assert_eq!(d.offset() + d.opposite().offset(), TriCoord::ORIGIN);
        }
    }

    #[test]
    fn distance_examples() {
        let o = TriCoord::ORIGIN;
        assert_eq!(o.distance(o), 0);
        assert_eq!(o.distance(TriCoord::new(1, 0)), 1);
        assert_eq!(o.distance(TriCoord::new(1, 1)), 2);
    }

    #[test]
    fn closed_form_matches_bfs() {
        // Window is large enough that shortest paths for |da|,|db| <= 4 stay inside.
        let bfs = bfs_distances(12);
        for da in -4..=4 {
            for db in -4..=4 {
                let t = TriCoord::new(da, db);
                assert_eq!(TriCoord::ORIGIN.distance(t), bfs[&t], "offset {t}");
            }
        }
    }

    #[test]
    fn label_examples() {
        let o = TriCoord::ORIGIN;
        assert_eq!(o.label_of(TriCoord::new(1, 0)), Label::lit(2, 0));
        assert_eq!(o.label_of(TriCoord::new(0, 1)), Label::lit(1, 1));
        assert_eq!(o.label_of(TriCoord::new(2, 0)), Label::lit(4, 0));
        assert_eq!(o.coord_of_label(Label::lit(2, 0)).unwrap(), TriCoord::new(1, 0));
        assert_eq!(o.coord_of_label(Label::lit(-1, -1)).unwrap(), TriCoord::new(0, -1));
        let p = TriCoord::new(3, -2);
        assert_eq!(p.coord_of_label(Label::SELF).unwrap(), p);
    }

    #[test]
    fn odd_label_rejected() {
        assert!(matches!(Label::new(1, 0), Err(Error::InvalidLabel(1, 0))));
        assert!(TriCoord::ORIGIN.coord_of_label(Label::lit(3, 0)).is_err());
    }

    #[test]
    fn label_rings_match_distance() {
        let mut r1 = Vec::new();
        let mut r2 = Vec::new();
        for x in -6..=6 {
            for y in -6..=6 {
                let Ok(l) = Label::new(x, y) else { continue };
                match l.radius() {
                    1 => r1.push(l),
                    2 => r2.push(l),
                    _ => {}
                }
            }
        }
        assert_eq!(r1.len(), 6);
        assert_eq!(r2.len(), 12);
        let mut want1 = RANGE1_LABELS.to_vec();
        let mut want2 = RANGE2_RING_LABELS.to_vec();
        want1.sort();
        want2.sort();
        r1.sort();
        r2.sort();
        assert_eq!(r1, want1);
        assert_eq!(r2, want2);
        for (d, l) in Direction::ALL.iter().zip(RANGE1_LABELS) {
            assert_eq!(d.label(), l);
        }
    }

    fn coord() -> impl Strategy<Value = TriCoord> {
        (-50i32..50, -50i32..50).prop_map(TriCoord::from)
    }

    proptest! {
        #[test]
        fn metric_axioms(u in coord(), v in coord(), w in coord()) {
            prop_assert_eq!(u.distance(v), v.distance(u));
            prop_assert!(u.distance(w) <= u.distance(v) + v.distance(w));
            prop_assert_eq!(u.distance(v) == 0, u == v);
        }

        #[test]
        fn neighbors_at_unit_distance(c in coord()) {
            let ns = c.neighbors();
            for (i, n) in ns.iter().enumerate() {
                prop_assert_eq!(c.distance(*n), 1);
                for m in &ns[i + 1..] {
                    prop_assert_ne!(n, m);
                }
            }
        }

        #[test]
        fn label_round_trip(o in coord(), t in coord()) {
            let l = o.label_of(t);
            prop_assert_eq!((l.x + l.y) % 2, 0);
            prop_assert_eq!(o.coord_of_label(l).unwrap(), t);
        }
    }
}
