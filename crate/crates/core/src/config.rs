//! Robot configurations and the predicates the simulator needs on them.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::grid::TriCoord;

/// A finite set of robot nodes, stored sorted by `(a, b)`.
///
/// The sorted order doubles as the canonical robot ordering used for
/// decision lists, collision scans and trace records.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    robots: Vec<TriCoord>,
}

impl Configuration {
    pub fn new(robots: impl IntoIterator<Item = TriCoord>) -> Result<Self, Error> {
        let mut robots: Vec<TriCoord> = robots.into_iter().collect();
        if robots.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        robots.sort_unstable();
        if let Some(w) = robots.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateRobot(w[0].a, w[0].b));
        }
        Ok(Configuration { robots })
    }

    pub(crate) fn from_sorted_unchecked(robots: Vec<TriCoord>) -> Self {
        debug_assert!(robots.windows(2).all(|w| w[0] < w[1]));
        Configuration { robots }
    }

    pub fn robots(&self) -> &[TriCoord] {
        &self.robots
    }

    pub fn len(&self) -> usize {
        self.robots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.robots.is_empty()
    }

    pub fn contains(&self, c: TriCoord) -> bool {
        self.robots.binary_search(&c).is_ok()
    }

    pub fn translate(&self, by: TriCoord) -> Configuration {
        // Translation preserves lexicographic order.
        Configuration {
            robots: self.robots.iter().map(|&c| c + by).collect(),
        }
    }

    /// True iff the robot nodes induce a connected subgraph.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.robots.first() else {
            return true;
        };
        let mut seen = vec![false; self.robots.len()];
        seen[0] = true;
        let mut reached = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for n in c.neighbors() {
                if let Ok(i) = self.robots.binary_search(&n) {
                    if !seen[i] {
                        seen[i] = true;
                        reached += 1;
                        queue.push_back(n);
                    }
                }
            }
        }
        reached == self.robots.len()
    }

    /// True iff some robot has all six neighbors occupied.
    pub fn is_gathered(&self) -> bool {
        self.robots
            .iter()
            .any(|c| c.neighbors().iter().all(|&n| self.contains(n)))
    }

    pub fn canonicalize(&self) -> CanonicalConfiguration {
        let min = self.robots[0];
        CanonicalConfiguration(self.translate(TriCoord::ORIGIN - min))
    }

    /// The filled hexagon: `center` plus its six neighbors.
    pub fn hexagon(center: TriCoord) -> Configuration {
        let mut robots = vec![center];
        robots.extend(center.neighbors());
        Configuration::new(robots).expect("hexagon nodes are distinct")
    }

    /// `len` robots on a line starting at `start`, each one step along `dir`
    /// from the previous.
    pub fn line(start: TriCoord, dir: crate::grid::Direction, len: usize) -> Configuration {
        let robots = std::iter::successors(Some(start), |c| Some(c.neighbor(dir))).take(len);
        Configuration::new(robots).expect("line nodes are distinct")
    }

    pub fn read_json<R: Read>(reader: R) -> Result<Configuration, Error> {
        let file: ConfigFile = serde_json::from_reader(reader)?;
        Configuration::new(file.robots)
    }

    pub fn from_json_str(s: &str) -> Result<Configuration, Error> {
        Configuration::read_json(s.as_bytes())
    }

    /// Writes the canonical form as `{"robots": [[a, b], ...]}`.
    pub fn write_json<W: Write>(&self, mut writer: W) -> Result<(), Error> {
        writeln!(writer, "{}", self.canonicalize().to_json())?;
        Ok(())
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.robots.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    robots: Vec<TriCoord>,
}

/// A configuration translated so its lexicographically smallest robot sits
/// at the origin. Two configurations are translates iff their canonical
/// forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalConfiguration(Configuration);

impl CanonicalConfiguration {
    pub fn as_config(&self) -> &Configuration {
        &self.0
    }

    pub fn into_config(self) -> Configuration {
        self.0
    }

    /// Compact single-line JSON object, canonical field order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ConfigFile {
            robots: self.0.robots.clone(),
        })
        .expect("plain integers always serialize")
    }
}

impl std::ops::Deref for CanonicalConfiguration {
    type Target = Configuration;
    fn deref(&self) -> &Configuration {
        &self.0
    }
}

impl fmt::Display for CanonicalConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All connected `n`-robot configurations up to translation (fixed polyhexes
/// under the hexagonal adjacency), sorted, each in canonical form.
///
/// Grows level by level: every size-`k+1` shape is some size-`k` shape plus
/// one adjacent node, so extending each shape by each free neighbor and
/// deduplicating canonical forms reaches every shape exactly once.
pub fn enumerate_connected(n: usize) -> Result<Vec<CanonicalConfiguration>, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut level: BTreeSet<CanonicalConfiguration> =
        BTreeSet::from([Configuration::from_sorted_unchecked(vec![TriCoord::ORIGIN]).canonicalize()]);
    for _ in 1..n {
        let mut next = HashSet::new();
        for shape in &level {
            let robots = shape.robots();
            for &c in robots {
                for nb in c.neighbors() {
                    if shape.contains(nb) {
                        continue;
                    }
                    let mut grown = robots.to_vec();
                    let pos = grown.binary_search(&nb).unwrap_err();
                    grown.insert(pos, nb);
                    next.insert(Configuration::from_sorted_unchecked(grown).canonicalize());
                }
            }
        }
        level = next.into_iter().collect();
    }
    Ok(level.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Direction;
    use proptest::prelude::*;

    fn cfg(pairs: &[(i32, i32)]) -> Configuration {
        Configuration::new(pairs.iter().map(|&p| TriCoord::from(p))).unwrap()
    }

    #[test]
    fn connectivity_examples() {
        assert!(cfg(&[(0, 0)]).is_connected());
        assert!(Configuration::line(TriCoord::ORIGIN, Direction::SE, 7).is_connected());
        assert!(!cfg(&[(0, 0), (2, 0)]).is_connected());
    }

    #[test]
    fn gathered_examples() {
        assert!(Configuration::hexagon(TriCoord::ORIGIN).is_gathered());
        assert!(!Configuration::line(TriCoord::ORIGIN, Direction::SE, 7).is_gathered());
        let ring = Configuration::new(TriCoord::ORIGIN.neighbors()).unwrap();
        assert!(!ring.is_gathered());
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(cfg(&[(5, 5)]).canonicalize().as_config(), &cfg(&[(0, 0)]));
        assert_eq!(
            cfg(&[(1, 0), (2, 0)]).canonicalize().as_config(),
            &cfg(&[(0, 0), (1, 0)])
        );
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(matches!(
            Configuration::new([TriCoord::new(1, 1), TriCoord::new(1, 1)]),
            Err(Error::DuplicateRobot(1, 1))
        ));
        assert!(matches!(
            Configuration::new(std::iter::empty()),
            Err(Error::EmptyConfiguration)
        ));
    }

    #[test]
    fn enumerate_small_counts() {
        assert!(enumerate_connected(0).is_err());
        assert_eq!(enumerate_connected(1).unwrap().len(), 1);
        assert_eq!(enumerate_connected(2).unwrap().len(), 3);
        assert_eq!(enumerate_connected(7).unwrap().len(), 3652);
    }

    #[test]
    fn enumeration_members_are_valid_and_distinct() {
        for n in 1..=7 {
            let all = enumerate_connected(n).unwrap();
            let mut seen = HashSet::new();
            for c in &all {
                assert_eq!(c.len(), n);
                assert!(c.is_connected());
                assert_eq!(&c.canonicalize(), c);
                assert!(seen.insert(c.clone()));
            }
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn gathered_iff_hexagon_for_seven() {
        let hex = Configuration::hexagon(TriCoord::ORIGIN).canonicalize();
        let all = enumerate_connected(7).unwrap();
        let gathered: Vec<_> = all.iter().filter(|c| c.is_gathered()).collect();
        assert_eq!(gathered, vec![&hex]);
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let c = cfg(&[(3, 4), (2, 4)]);
        let mut buf = Vec::new();
        c.write_json(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "{\"robots\":[[0,0],[1,0]]}\n");
        let back = Configuration::read_json(buf.as_slice()).unwrap();
        assert_eq!(back, c.canonicalize().into_config());
    }

    #[test]
    fn json_rejects_duplicates_and_bad_fields() {
        assert!(matches!(
            Configuration::from_json_str(r#"{"robots": [[0,0],[0,0]]}"#),
            Err(Error::DuplicateRobot(0, 0))
        ));
        assert!(matches!(
            Configuration::from_json_str(r#"{"robots": [[0,0,1]]}"#),
            Err(Error::ConfigFormat(_))
        ));
        assert!(matches!(
            Configuration::from_json_str(r#"{"bots": []}"#),
            Err(Error::ConfigFormat(_))
        ));
    }

    proptest! {
        #[test]
        fn canonicalize_idempotent_and_translation_invariant(
            pts in proptest::collection::btree_set((-20i32..20, -20i32..20), 1..10),
            da in -30i32..30, db in -30i32..30,
        ) {
            let c = Configuration::new(pts.into_iter().map(TriCoord::from)).unwrap();
            let k = c.canonicalize();
            prop_assert_eq!(&k.canonicalize(), &k);
            prop_assert_eq!(c.translate(TriCoord::new(da, db)).canonicalize(), k);
        }
    }
}
