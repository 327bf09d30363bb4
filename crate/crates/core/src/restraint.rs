//! Restraints: per-vertex sets of forbidden colours.
//!
//! Standard simple restraints are enumerated up to colour permutation as
//! restricted growth strings ([`Rgs`]); vertex `v` of an RGS forbids colour
//! `a_v + 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type ColourSet = BTreeSet<u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Restraint {
    sets: Vec<ColourSet>,
}

impl Restraint {
    /// Colours must be positive.
    pub fn new(sets: Vec<ColourSet>) -> Result<Self> {
        if sets.iter().any(|s| s.contains(&0)) {
            return Err(Error::Restraint("colours are positive integers".into()));
        }
        Ok(Restraint { sets })
    }

    pub fn empty(n: usize) -> Self {
        Restraint { sets: vec![ColourSet::new(); n] }
    }

    /// Restraint forbidding `colours[v]` (a single colour) at each vertex.
    pub fn simple(colours: &[u32]) -> Result<Self> {
        Self::new(colours.iter().map(|&c| ColourSet::from([c])).collect())
    }

    /// `{1..m}` forbidden everywhere.
    pub fn constant(n: usize, m: u32) -> Self {
        Restraint { sets: vec![(1..=m).collect(); n] }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn get(&self, v: usize) -> &ColourSet {
        &self.sets[v]
    }

    pub fn sets(&self) -> &[ColourSet] {
        &self.sets
    }

    /// Largest colour named anywhere, 0 if none.
    pub fn max_colour(&self) -> u32 {
        self.sets.iter().filter_map(|s| s.last().copied()).max().unwrap_or(0)
    }

    pub fn is_m_restraint(&self, m: usize) -> bool {
        self.sets.iter().all(|s| s.len() <= m)
    }

    pub fn is_standard(&self, m: usize) -> bool {
        self.sets.iter().all(|s| s.len() == m)
    }

    /// The forbidden colour at each vertex, if this is a standard simple restraint.
    pub fn simple_colours(&self) -> Option<Vec<u32>> {
        self.sets
            .iter()
            .map(|s| (s.len() == 1).then(|| *s.first().unwrap()))
            .collect()
    }

    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::RestraintSize { restraint: self.len(), graph: g.n() });
        }
        Ok(())
    }

    /// Restraint on the subgraph induced by `keep` (new index -> old vertex),
    /// as returned by [`Graph::induced_subgraph`].
    pub fn restrict(&self, keep: &[usize]) -> Restraint {
        Restraint { sets: keep.iter().map(|&v| self.sets[v].clone()).collect() }
    }

    /// Restraint following a contraction of `{u, v}`: the merged vertex
    /// forbids `r(u) ∪ r(v)`, everything else is carried over by `merge_map`.
    pub fn merge_for_contraction(&self, u: usize, v: usize, merge_map: &[usize]) -> Restraint {
        let new_n = merge_map.iter().max().map_or(0, |&m| m + 1);
        let mut sets = vec![ColourSet::new(); new_n];
        for (old, &new) in merge_map.iter().enumerate() {
            if old != u && old != v {
                sets[new] = self.sets[old].clone();
            }
        }
        sets[merge_map[u]] = self.sets[u].union(&self.sets[v]).copied().collect();
        Restraint { sets }
    }

    /// Applies `sigma` to every forbidden colour.
    pub fn permute_colours(&self, sigma: impl Fn(u32) -> u32) -> Restraint {
        Restraint { sets: self.sets.iter().map(|s| s.iter().map(|&c| sigma(c)).collect()).collect() }
    }

    /// Vertex `i` of the result takes the set of vertex `perm[i]`.
    pub fn reorder(&self, perm: &[usize]) -> Restraint {
        Restraint { sets: perm.iter().map(|&p| self.sets[p].clone()).collect() }
    }

    /// Colour-permutation canonical form of a standard simple restraint.
    pub fn canonical_rgs(&self) -> Option<Rgs> {
        let colours = self.simple_colours()?;
        let mut seen: Vec<u32> = Vec::new();
        let digits = colours
            .iter()
            .map(|c| match seen.iter().position(|s| s == c) {
                Some(i) => i as u8,
                None => {
                    seen.push(*c);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Some(Rgs(digits))
    }
}

impl FromStr for Restraint {
    type Err = Error;

    /// `"1,2;3;"` is `[{1,2}, {3}, {}]`: vertices split on `;`, colours on `,`.
    fn from_str(s: &str) -> Result<Self> {
        let sets = s
            .split(';')
            .map(|seg| {
                seg.split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|e| Error::Restraint(format!("{t:?}: {e}")))
                    })
                    .collect::<Result<ColourSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Restraint::new(sets)
    }
}

impl fmt::Display for Restraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            for (j, c) in s.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Restraint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Restricted growth string: `a_0 = 0` and `a_i <= 1 + max(a_0..a_{i-1})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Rgs(Vec<u8>);

impl Rgs {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        let mut max: i16 = -1;
        for &d in &digits {
            if d as i16 > max + 1 {
                return Err(Error::Restraint(format!("{digits:?} is not a restricted growth string")));
            }
            max = max.max(d as i16);
        }
        Ok(Rgs(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct colours used.
    pub fn blocks(&self) -> usize {
        self.0.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn constant(n: usize) -> Self {
        Rgs(vec![0; n])
    }

    /// `0 1 2 ... n-1`
    pub fn rainbow(n: usize) -> Self {
        Rgs((0..n as u8).collect())
    }

    pub fn to_restraint(&self) -> Restraint {
        Restraint {
            sets: self.0.iter().map(|&d| ColourSet::from([d as u32 + 1])).collect(),
        }
    }

    /// Colours `1..` as forbidden at each vertex.
    pub fn colours(&self) -> Vec<u32> {
        self.0.iter().map(|&d| d as u32 + 1).collect()
    }
}

impl fmt::Display for Rgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            if *d < 10 {
                write!(f, "{d}")?;
            } else {
                write!(f, "({d})")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Rgs {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All restricted growth strings of length `n` in lexicographic order.
pub struct RgsIter {
    current: Option<Vec<u8>>,
}

impl Iterator for RgsIter {
    type Item = Rgs;

    fn next(&mut self) -> Option<Rgs> {
        let out = self.current.take()?;
        let mut next = out.clone();
        // prefix maxima decide how far each digit may grow
        let mut prefix_max = vec![0u8; next.len()];
        for i in 1..next.len() {
            prefix_max[i] = prefix_max[i - 1].max(next[i - 1]);
        }
        if let Some(i) = (1..next.len()).rev().find(|&i| next[i] <= prefix_max[i]) {
            next[i] += 1;
            next[i + 1..].iter_mut().for_each(|d| *d = 0);
            self.current = Some(next);
        }
        Some(Rgs(out))
    }
}

/// Canonical standard simple restraints on `n` vertices (Bell(n) of them).
pub fn enumerate_canonical_simple(n: usize) -> RgsIter {
    RgsIter { current: (n >= 1).then(|| vec![0; n]) }
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

/// `{1}` on side `A` and `{2}` on side `B` of the graph's bipartition.
pub fn alternating_restraint(g: &Graph) -> Result<Restraint> {
    let (_, b) = g.bipartition().ok_or(Error::NotBipartite)?;
    let mut colours = vec![1u32; g.n()];
    for v in b {
        colours[v] = 2;
    }
    Restraint::simple(&colours)
}

/// Converts colour lists over `[k]` to the complementary restraint `[k] - L(v)`.
pub fn lists_to_restraint(lists: &[Vec<u32>], k: u32) -> Result<Restraint> {
    let sets = lists
        .iter()
        .map(|list| {
            if let Some(&bad) = list.iter().find(|&&c| c == 0 || c > k) {
                return Err(Error::ListColour { colour: bad, k });
            }
            Ok((1..=k).filter(|c| !list.contains(c)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Restraint::new(sets)
}
