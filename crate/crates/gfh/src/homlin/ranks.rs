//! Graded homology ranks: the common output currency of every module.

use serde::de::{Deserializer, Error as DeError};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Free rank and torsion in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeRanks {
    pub free: usize,
    /// Torsion coefficients as a sorted multiset of prime powers.
    pub torsion: Vec<u64>,
}

impl DegreeRanks {
    pub fn free(n: usize) -> Self {
        DegreeRanks { free: n, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

/// Homology ranks indexed by degree. Degrees with trivial homology are absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedRanks {
    map: BTreeMap<i64, DegreeRanks>,
}

impl GradedRanks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, degree: i64, ranks: DegreeRanks) {
        if !ranks.is_trivial() {
            self.map.insert(degree, ranks);
        }
    }

    pub fn get(&self, degree: i64) -> DegreeRanks {
        self.map.get(&degree).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &DegreeRanks)> {
        self.map.iter()
    }

    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.map.keys().copied().collect()
    }

    /// All degrees re-indexed by `degree + offset`.
    pub fn shifted(&self, offset: i64) -> GradedRanks {
        GradedRanks {
            map: self.map.iter().map(|(&k, v)| (k + offset, v.clone())).collect(),
        }
    }

    /// Degreewise direct sum.
    pub fn sum(&self, other: &GradedRanks) -> GradedRanks {
        let mut out = self.clone();
        for (&k, v) in other.map.iter() {
            let mut cur = out.get(k);
            cur.free += v.free;
            cur.torsion.extend_from_slice(&v.torsion);
            cur.torsion.sort_unstable();
            out.map.insert(k, cur);
        }
        out
    }

    /// Alternating sum of free ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.map
            .iter()
            .map(|(&k, v)| {
                let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * v.free as i64
            })
            .sum()
    }

    /// Build from a list of `(degree, free_rank)` pairs; test convenience.
    pub fn from_free(pairs: &[(i64, usize)]) -> GradedRanks {
        let mut g = GradedRanks::new();
        for &(k, n) in pairs {
            g.insert(k, DegreeRanks::free(n));
        }
        g
    }
}

impl Serialize for GradedRanks {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            free: usize,
            #[serde(skip_serializing_if = "<[u64]>::is_empty")]
            torsion: &'a [u64],
        }
        let mut m = serializer.serialize_map(Some(self.map.len()))?;
        for (k, v) in &self.map {
            m.serialize_entry(&k.to_string(), &Entry { free: v.free, torsion: &v.torsion })?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for GradedRanks {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry {
            free: usize,
            #[serde(default)]
            torsion: Vec<u64>,
        }
        let raw: BTreeMap<String, Entry> = BTreeMap::deserialize(deserializer)?;
        let mut out = GradedRanks::new();
        for (k, v) in raw {
            let degree: i64 =
                k.parse().map_err(|_| D::Error::custom(format!("bad degree key {k:?}")))?;
            let mut torsion = v.torsion;
            torsion.sort_unstable();
            out.insert(degree, DegreeRanks { free: v.free, torsion });
        }
        Ok(out)
    }
}

impl fmt::Display for GradedRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.map {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "H_{k} = Z^{}", v.free)?;
            for t in &v.torsion {
                write!(f, " + Z/{t}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_degrees_are_absent() {
        let mut g = GradedRanks::new();
        g.insert(0, DegreeRanks::free(0));
        g.insert(1, DegreeRanks::free(2));
        assert_eq!(g.nonzero_degrees(), vec![1]);
    }

    #[test]
    fn shift_and_sum() {
        let a = GradedRanks::from_free(&[(0, 1), (2, 1)]);
        let b = a.shifted(3);
        assert_eq!(b.nonzero_degrees(), vec![3, 5]);
        let s = a.sum(&a);
        assert_eq!(s.get(0).free, 2);
    }

    #[test]
    fn euler_characteristic_alternates() {
        let g = GradedRanks::from_free(&[(0, 1), (1, 2), (2, 1)]);
        assert_eq!(g.euler_characteristic(), 0);
    }

    #[test]
    fn json_shape() {
        let mut g = GradedRanks::new();
        g.insert(1, DegreeRanks { free: 0, torsion: vec![2] });
        g.insert(2, DegreeRanks::free(1));
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"1":{"free":0,"torsion":[2]},"2":{"free":1}}"#);
    }
}
