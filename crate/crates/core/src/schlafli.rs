//! The 27 lines as a combinatorial object.
//!
//! Canonical indices: `E1..E6 = 0..5`, `G1..G6 = 6..11`, `F12..F56 = 12..26`
//! with the pairs in lexicographic order.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::permgrp::{PermGroup, Permutation};

pub const NUM_LINES: usize = 27;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchlafliError {
    #[error("adjacency matrix is not 27x27 and symmetric")]
    Malformed,
    #[error("graph is not strongly regular (27,10,1,5): {0}")]
    NotStronglyRegular(String),
    #[error("graph is not isomorphic to the Schläfli graph")]
    NotIsomorphic,
    #[error("unknown line label {0:?}")]
    BadLabel(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineLabel {
    E(u8),
    G(u8),
    F(u8, u8),
}

fn pair_index(i: u8, j: u8) -> usize {
    let mut k = 0;
    for a in 1..=6u8 {
        for b in a + 1..=6 {
            if (a, b) == (i, j) {
                return k;
            }
            k += 1;
        }
    }
    unreachable!("invalid pair")
}

impl LineLabel {
    pub fn index(self) -> usize {
        match self {
            LineLabel::E(i) => i as usize - 1,
            LineLabel::G(i) => 5 + i as usize,
            LineLabel::F(i, j) => 12 + pair_index(i, j),
        }
    }

    pub fn from_index(k: usize) -> LineLabel {
        match k {
            0..=5 => LineLabel::E(k as u8 + 1),
            6..=11 => LineLabel::G(k as u8 - 5),
            12..=26 => {
                let mut r = k - 12;
                for a in 1..=6u8 {
                    for b in a + 1..=6 {
                        if r == 0 {
                            return LineLabel::F(a, b);
                        }
                        r -= 1;
                    }
                }
                unreachable!()
            }
            _ => panic!("line index {k} out of range"),
        }
    }

    pub fn all() -> Vec<LineLabel> {
        (0..NUM_LINES).map(LineLabel::from_index).collect()
    }

    /// Relabels by a permutation `sigma` of `{1..6}` (given 0-based).
    pub fn permute(self, sigma: &[u8; 6]) -> LineLabel {
        let s = |i: u8| sigma[i as usize - 1] + 1;
        match self {
            LineLabel::E(i) => LineLabel::E(s(i)),
            LineLabel::G(i) => LineLabel::G(s(i)),
            LineLabel::F(i, j) => {
                let (a, b) = (s(i), s(j));
                LineLabel::F(a.min(b), a.max(b))
            }
        }
    }
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineLabel::E(i) => write!(f, "E{i}"),
            LineLabel::G(i) => write!(f, "G{i}"),
            LineLabel::F(i, j) => write!(f, "F{i}{j}"),
        }
    }
}

impl FromStr for LineLabel {
    type Err = SchlafliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SchlafliError::BadLabel(s.to_string());
        let digit = |c: u8| -> Result<u8, SchlafliError> {
            if (b'1'..=b'6').contains(&c) {
                Ok(c - b'0')
            } else {
                Err(bad())
            }
        };
        let b = s.as_bytes();
        match (b.first(), b.len()) {
            (Some(b'E'), 2) => Ok(LineLabel::E(digit(b[1])?)),
            (Some(b'G'), 2) => Ok(LineLabel::G(digit(b[1])?)),
            (Some(b'F'), 3) => {
                let (i, j) = (digit(b[1])?, digit(b[2])?);
                if i < j {
                    Ok(LineLabel::F(i, j))
                } else {
                    Err(bad())
                }
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for LineLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LineLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Classical incidence rule between two distinct labels.
pub fn labels_meet(a: LineLabel, b: LineLabel) -> bool {
    use LineLabel::*;
    match (a, b) {
        (E(i), G(j)) | (G(j), E(i)) => i != j,
        (E(i), F(j, k)) | (F(j, k), E(i)) | (G(i), F(j, k)) | (F(j, k), G(i)) => i == j || i == k,
        (F(i, j), F(k, l)) => i != k && i != l && j != k && j != l,
        _ => false,
    }
}

/// Symmetric 27×27 adjacency matrix without diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceModel {
    pub adjacency: Vec<Vec<bool>>,
}

impl IncidenceModel {
    pub fn from_adjacency(adjacency: Vec<Vec<bool>>) -> Result<Self, SchlafliError> {
        let n = adjacency.len();
        if n != NUM_LINES || adjacency.iter().any(|r| r.len() != n) {
            return Err(SchlafliError::Malformed);
        }
        for i in 0..n {
            if adjacency[i][i] || (0..n).any(|j| adjacency[i][j] != adjacency[j][i]) {
                return Err(SchlafliError::Malformed);
            }
        }
        Ok(IncidenceModel { adjacency })
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn edge_count(&self) -> usize {
        (0..NUM_LINES)
            .map(|i| (i + 1..NUM_LINES).filter(|&j| self.adjacency[i][j]).count())
            .sum()
    }

    /// Checks the strongly regular parameters (27,10,1,5).
    pub fn check_strongly_regular(&self) -> Result<(), SchlafliError> {
        let a = &self.adjacency;
        for i in 0..NUM_LINES {
            let deg = a[i].iter().filter(|&&x| x).count();
            if deg != 10 {
                return Err(SchlafliError::NotStronglyRegular(format!(
                    "vertex {i} has degree {deg}"
                )));
            }
            for j in i + 1..NUM_LINES {
                let common = (0..NUM_LINES).filter(|&k| a[i][k] && a[j][k]).count();
                let want = if a[i][j] { 1 } else { 5 };
                if common != want {
                    return Err(SchlafliError::NotStronglyRegular(format!(
                        "pair ({i},{j}) has {common} common neighbours"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let a = &self.adjacency;
        let mut out = Vec::new();
        for i in 0..NUM_LINES {
            for j in i + 1..NUM_LINES {
                if !a[i][j] {
                    continue;
                }
                for k in j + 1..NUM_LINES {
                    if a[i][k] && a[j][k] {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// Whether `p` (on vertex indices) maps edges to edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        (0..NUM_LINES).all(|i| {
            (i + 1..NUM_LINES).all(|j| self.adjacency[i][j] == self.adjacency[p.image(i)][p.image(j)])
        })
    }
}

pub fn canonical_incidence() -> &'static IncidenceModel {
    static MODEL: OnceLock<IncidenceModel> = OnceLock::new();
    MODEL.get_or_init(|| {
        let labels = LineLabel::all();
        let adjacency = labels
            .iter()
            .map(|&a| labels.iter().map(|&b| a != b && labels_meet(a, b)).collect())
            .collect();
        IncidenceModel { adjacency }
    })
}

/// The 45 tritangent triples, as sorted canonical indices.
pub fn tritangent_triples() -> Vec<[usize; 3]> {
    canonical_incidence().triangles()
}

pub fn tritangent_label_triples() -> Vec<[LineLabel; 3]> {
    tritangent_triples()
        .into_iter()
        .map(|t| t.map(LineLabel::from_index))
        .collect()
}

/// Backtracking search for graph isomorphisms `g → h` (vertex `v` of `g`
/// goes to `map[v]`), trying vertices of `g` in index order and images in
/// increasing order. `visit` returns `false` to stop the search.
fn isomorphism_search(
    g: &[Vec<bool>],
    h: &[Vec<bool>],
    prefix: &[usize],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let n = g.len();
    let mut map: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for &p in prefix {
        map.push(p);
        used[p] = true;
    }
    fn rec(
        g: &[Vec<bool>],
        h: &[Vec<bool>],
        map: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let v = map.len();
        if v == g.len() {
            return visit(map);
        }
        for c in 0..g.len() {
            if used[c] {
                continue;
            }
            if (0..v).all(|u| g[u][v] == h[map[u]][c]) {
                map.push(c);
                used[c] = true;
                let go_on = rec(g, h, map, used, visit);
                used[c] = false;
                map.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    let consistent = (0..prefix.len())
        .all(|u| (0..prefix.len()).all(|v| g[u][v] == h[prefix[u]][prefix[v]]));
    if consistent {
        rec(g, h, &mut map, &mut used, visit);
    }
}

fn first_isomorphism(g: &[Vec<bool>], h: &[Vec<bool>], prefix: &[usize]) -> Option<Vec<usize>> {
    let mut found = None;
    isomorphism_search(g, h, prefix, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

/// Number of automorphisms of a graph by exhaustive backtracking.
pub fn count_automorphisms(adjacency: &[Vec<bool>]) -> u64 {
    let mut count = 0u64;
    isomorphism_search(adjacency, adjacency, &[], &mut |_| {
        count += 1;
        true
    });
    count
}

/// W(E6) as the automorphism group of the canonical incidence graph.
pub fn weyl_e6() -> &'static PermGroup {
    static GROUP: OnceLock<PermGroup> = OnceLock::new();
    GROUP.get_or_init(|| {
        let relabel = |sigma: [u8; 6]| {
            let images: Vec<usize> = (0..NUM_LINES)
                .map(|k| LineLabel::from_index(k).permute(&sigma).index())
                .collect();
            Permutation::from_images(&images).expect("label permutation")
        };
        let mut gens = vec![relabel([1, 0, 2, 3, 4, 5]), relabel([1, 2, 3, 4, 5, 0])];
        // one automorphism outside the label action: the first sending E1 to F12
        let adj = &canonical_incidence().adjacency;
        let f12 = LineLabel::F(1, 2).index();
        let extra = first_isomorphism(adj, adj, &[f12]).expect("Schläfli graph automorphism");
        gens.push(Permutation::from_images(&extra).expect("automorphism"));
        gens.sort();
        let g = PermGroup::new(NUM_LINES, gens).expect("W(E6)");
        assert_eq!(g.order(), 51840);
        g
    })
}

/// Bijection from computed-line slots to canonical labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchlafliLabeling {
    /// `assignment[slot]` is the canonical index of that slot's line.
    pub assignment: Vec<usize>,
}

impl SchlafliLabeling {
    pub fn identity() -> Self {
        SchlafliLabeling {
            assignment: (0..NUM_LINES).collect(),
        }
    }

    pub fn label(&self, slot: usize) -> LineLabel {
        LineLabel::from_index(self.assignment[slot])
    }

    pub fn slot_of(&self, canonical: usize) -> usize {
        self.assignment
            .iter()
            .position(|&c| c == canonical)
            .expect("bijection")
    }

    pub fn as_permutation(&self) -> Permutation {
        Permutation::from_images(&self.assignment).expect("labeling is a bijection")
    }

    /// Transports a permutation of slots to a permutation of canonical labels.
    pub fn to_canonical(&self, slot_perm: &Permutation) -> Permutation {
        slot_perm.conjugate_by(&self.as_permutation())
    }

    pub fn to_slots(&self, canonical_perm: &Permutation) -> Permutation {
        canonical_perm.conjugate_by(&self.as_permutation().inverse())
    }

    pub fn labels(&self) -> Vec<LineLabel> {
        (0..NUM_LINES).map(|s| self.label(s)).collect()
    }
}

/// Labels a computed incidence graph by the lexicographically first
/// isomorphism onto the canonical model.
pub fn label_lines(adjacency: &[Vec<bool>]) -> Result<SchlafliLabeling, SchlafliError> {
    let model = IncidenceModel::from_adjacency(adjacency.to_vec())?;
    model.check_strongly_regular()?;
    let map = first_isomorphism(&model.adjacency, &canonical_incidence().adjacency, &[])
        .ok_or(SchlafliError::NotIsomorphic)?;
    Ok(SchlafliLabeling { assignment: map })
}
