//! The affine root lattice of type A: positive-root enumeration in arch
//! notation, residues, and dihedral order canonicalization.
//!
//! Letters `0..=n` sit counterclockwise on a circle in Dynkin order; the
//! lexicographic order of the alphabet is stored separately as a permutation.

use crate::words::{Letter, Word};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("rank must be >= 1, got {0}")]
    RankTooSmall(usize),
    #[error("order {0:?} is not a permutation of 0..={1}")]
    NotAPermutation(Vec<Letter>, usize),
    #[error("arch {i}->{j} is the full circle (j = i-1 mod n+1)")]
    FullCircle { i: Letter, j: Letter },
    #[error("imaginary delta-count must be >= 1")]
    ZeroImaginary,
}

/// The alphabet `{0, …, n}` together with a total order on it, listed from
/// smallest to largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedAlphabet {
    rank: usize,
    order: Vec<Letter>,
    // letter -> index in `order`
    position: Vec<usize>,
}

impl OrderedAlphabet {
    pub fn new(rank: usize, order: Vec<Letter>) -> Result<Self, RootSystemError> {
        if rank < 1 {
            return Err(RootSystemError::RankTooSmall(rank));
        }
        let size = rank + 1;
        if order.len() != size {
            return Err(RootSystemError::NotAPermutation(order, rank));
        }
        let mut position = vec![usize::MAX; size];
        for (idx, &l) in order.iter().enumerate() {
            if l as usize >= size || position[l as usize] != usize::MAX {
                return Err(RootSystemError::NotAPermutation(order, rank));
            }
            position[l as usize] = idx;
        }
        Ok(OrderedAlphabet { rank, order, position })
    }

    /// The standard order `1 < 2 < … < n < 0`.
    pub fn standard(rank: usize) -> Self {
        let mut order: Vec<Letter> = (1..=rank as Letter).collect();
        order.push(0);
        OrderedAlphabet::new(rank, order).expect("standard order is a permutation")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of letters, `n + 1`.
    pub fn size(&self) -> usize {
        self.rank + 1
    }

    /// Letters from smallest to largest.
    pub fn order(&self) -> &[Letter] {
        &self.order
    }

    pub fn min_letter(&self) -> Letter {
        self.order[0]
    }

    pub fn second_min(&self) -> Letter {
        self.order[1]
    }

    pub fn cmp_letters(&self, a: Letter, b: Letter) -> Ordering {
        self.position[a as usize].cmp(&self.position[b as usize])
    }

    /// Canonical per the dihedral normalization: the minimal letter is 1 and
    /// (for rank >= 2) the second-minimal letter is not 0.
    pub fn is_canonical(&self) -> bool {
        self.min_letter() == 1 && (self.rank == 1 || self.second_min() != 0)
    }

    /// True when this is exactly the standard order `1 < 2 < … < n < 0`.
    pub fn is_standard(&self) -> bool {
        *self == OrderedAlphabet::standard(self.rank)
    }
}

/// `k mod (n+1)`, always in `0..=n`.
pub fn residue(k: i64, rank: usize) -> Letter {
    let m = (rank + 1) as i64;
    (((k % m) + m) % m) as Letter
}

/// The half-open arch `[i -> j)`: letters `i, i+1, …, j-1` counterclockwise,
/// empty when `i == j`.
pub fn arch_letters(i: Letter, j: Letter, rank: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    let mut cur = i;
    while cur != j {
        out.push(cur);
        cur = residue(cur as i64 + 1, rank);
    }
    out
}

/// A real positive root `k·δ + α_{i→j}`, where the arch runs from `i` to `j`
/// inclusive and is never the full circle (`j ≠ i-1 mod n+1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealRoot {
    pub k: usize,
    pub i: Letter,
    pub j: Letter,
}

impl RealRoot {
    pub fn new(k: usize, i: Letter, j: Letter, rank: usize) -> Result<Self, RootSystemError> {
        if j == residue(i as i64 - 1, rank) {
            return Err(RootSystemError::FullCircle { i, j });
        }
        Ok(RealRoot { k, i, j })
    }

    /// The letters on the arch `[i -> j]`, inclusive.
    pub fn arch(&self, rank: usize) -> Vec<Letter> {
        arch_letters(self.i, residue(self.j as i64 + 1, rank), rank)
    }

    pub fn arch_len(&self, rank: usize) -> usize {
        let m = (rank + 1) as i64;
        ((self.j as i64 - self.i as i64).rem_euclid(m) + 1) as usize
    }

    pub fn height(&self, rank: usize) -> usize {
        self.k * (rank + 1) + self.arch_len(rank)
    }

    pub fn degree(&self, rank: usize) -> Vec<usize> {
        let mut deg = vec![self.k; rank + 1];
        for l in self.arch(rank) {
            deg[l as usize] += 1;
        }
        deg
    }

    /// True when the arch contains the given letter.
    pub fn contains(&self, letter: Letter, rank: usize) -> bool {
        self.arch(rank).contains(&letter)
    }
}

/// A positive affine root: real `k·δ + α_{i→j}` or imaginary `k·δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AffineRoot {
    Real(RealRoot),
    Imaginary { k: usize },
}

impl AffineRoot {
    pub fn height(&self, rank: usize) -> usize {
        match self {
            AffineRoot::Real(r) => r.height(rank),
            AffineRoot::Imaginary { k } => k * (rank + 1),
        }
    }

    pub fn degree(&self, rank: usize) -> Vec<usize> {
        match self {
            AffineRoot::Real(r) => r.degree(rank),
            AffineRoot::Imaginary { k } => vec![*k; rank + 1],
        }
    }
}

/// A point of the extended positive root set: real roots as they are, and
/// `n` indexed copies `(kδ, r)` of each imaginary degree, `r = 1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedRoot {
    Real(RealRoot),
    Imaginary { k: usize, r: usize },
}

impl ExtendedRoot {
    pub fn height(&self, rank: usize) -> usize {
        match self {
            ExtendedRoot::Real(root) => root.height(rank),
            ExtendedRoot::Imaginary { k, .. } => k * (rank + 1),
        }
    }
}

fn delta_word(k: usize) -> String {
    match k {
        1 => "δ".to_string(),
        _ => format!("{k}δ"),
    }
}

impl std::fmt::Display for RealRoot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let arch = if self.i == self.j {
            format!("α_{}", self.i)
        } else {
            format!("α_{{{}→{}}}", self.i, self.j)
        };
        if self.k == 0 {
            write!(f, "{arch}")
        } else {
            write!(f, "{}+{arch}", delta_word(self.k))
        }
    }
}

impl std::fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AffineRoot::Real(r) => write!(f, "{r}"),
            AffineRoot::Imaginary { k } => write!(f, "{}", delta_word(*k)),
        }
    }
}

impl std::fmt::Display for ExtendedRoot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedRoot::Real(root) => write!(f, "{root}"),
            ExtendedRoot::Imaginary { k, r } => write!(f, "({},{r})", delta_word(*k)),
        }
    }
}

// Wire shape shared with the CLI table export:
// {"k":.., "type":"real", "i":.., "j":..} / {"k":.., "type":"imaginary", "r":..}
impl Serialize for ExtendedRoot {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedRoot::Real(root) => {
                let mut s = serializer.serialize_struct("root", 4)?;
                s.serialize_field("k", &root.k)?;
                s.serialize_field("type", "real")?;
                s.serialize_field("i", &root.i)?;
                s.serialize_field("j", &root.j)?;
                s.end()
            }
            ExtendedRoot::Imaginary { k, r } => {
                let mut s = serializer.serialize_struct("root", 3)?;
                s.serialize_field("k", k)?;
                s.serialize_field("type", "imaginary")?;
                s.serialize_field("r", r)?;
                s.end()
            }
        }
    }
}

/// All positive roots of height `<= max_height`, sorted by height; within a
/// height the imaginary root (if any) comes first, then real roots by (i, j).
pub fn enumerate_positive_roots(rank: usize, max_height: usize) -> Vec<AffineRoot> {
    let size = rank + 1;
    let mut out = Vec::new();
    for h in 1..=max_height {
        if h % size == 0 {
            out.push(AffineRoot::Imaginary { k: h / size });
            continue;
        }
        let len = h % size; // arch length, in 1..=rank
        let k = (h - len) / size;
        for i in 0..size as Letter {
            let j = residue(i as i64 + len as i64 - 1, rank);
            out.push(AffineRoot::Real(RealRoot { k, i, j }));
        }
    }
    out
}

/// Classifies a nonzero degree vector over the simple roots as a positive
/// root, if it is one.
pub fn root_from_degree(deg: &[usize]) -> Option<AffineRoot> {
    let rank = deg.len().checked_sub(1)?;
    if rank < 1 {
        return None;
    }
    let k = *deg.iter().min()?;
    let rest: Vec<usize> = deg.iter().map(|c| c - k).collect();
    if rest.iter().all(|&c| c == 0) {
        return if k >= 1 {
            Some(AffineRoot::Imaginary { k })
        } else {
            None
        };
    }
    if rest.iter().any(|&c| c > 1) {
        return None;
    }
    // The support must be one proper cyclic run of 1s.
    let size = rank + 1;
    let starts: Vec<usize> = (0..size)
        .filter(|&p| rest[p] == 1 && rest[(p + size - 1) % size] == 0)
        .collect();
    if starts.len() != 1 {
        return None;
    }
    let i = starts[0];
    let len = rest.iter().sum::<usize>();
    let j = (i + len - 1) % size;
    // Contiguity: every letter of the run must be present.
    for step in 0..len {
        if rest[(i + step) % size] != 1 {
            return None;
        }
    }
    Some(AffineRoot::Real(RealRoot {
        k,
        i: i as Letter,
        j: j as Letter,
    }))
}

/// A symmetry of the cyclic Dynkin diagram: `x ↦ shift + x` or
/// `x ↦ shift - x`, mod `n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralMap {
    size: usize,
    shift: i64,
    reflect: bool,
}

impl DihedralMap {
    pub fn identity(rank: usize) -> Self {
        DihedralMap { size: rank + 1, shift: 0, reflect: false }
    }

    pub fn rotation(rank: usize, shift: i64) -> Self {
        DihedralMap { size: rank + 1, shift, reflect: false }
    }

    pub fn reflection(rank: usize, shift: i64) -> Self {
        DihedralMap { size: rank + 1, shift, reflect: true }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflect && self.shift.rem_euclid(self.size as i64) == 0
    }

    pub fn is_reflection(&self) -> bool {
        self.reflect
    }

    pub fn apply(&self, x: Letter) -> Letter {
        let v = if self.reflect {
            self.shift - x as i64
        } else {
            self.shift + x as i64
        };
        residue(v, self.size - 1)
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        Word::new(w.letters().iter().map(|&l| self.apply(l)).collect())
    }

    /// Arches transport covariantly under rotations and reverse their
    /// endpoints under reflections.
    pub fn apply_real(&self, root: &RealRoot) -> RealRoot {
        if self.reflect {
            RealRoot { k: root.k, i: self.apply(root.j), j: self.apply(root.i) }
        } else {
            RealRoot { k: root.k, i: self.apply(root.i), j: self.apply(root.j) }
        }
    }

    pub fn apply_alphabet(&self, a: &OrderedAlphabet) -> OrderedAlphabet {
        let order = a.order().iter().map(|&l| self.apply(l)).collect();
        OrderedAlphabet::new(a.rank(), order).expect("dihedral image of a permutation")
    }

    pub fn inverse(&self) -> DihedralMap {
        if self.reflect {
            *self // reflections are involutions
        } else {
            DihedralMap { size: self.size, shift: -self.shift, reflect: false }
        }
    }

    /// All `2(n+1)` symmetries of the cycle.
    pub fn all(rank: usize) -> Vec<DihedralMap> {
        let mut maps = Vec::with_capacity(2 * (rank + 1));
        for s in 0..=(rank as i64) {
            maps.push(DihedralMap::rotation(rank, s));
            maps.push(DihedralMap::reflection(rank, s));
        }
        maps
    }
}

/// Relabels the alphabet through a dihedral symmetry so that the minimal
/// letter is 1 and, for rank >= 2, the second-minimal letter is not 0.
/// Returns the canonical alphabet and the letter map used (original ->
/// canonical); applying the inverse to canonical SL words recovers the SL
/// words of the original order.
pub fn canonicalize_order(a: &OrderedAlphabet) -> (OrderedAlphabet, DihedralMap) {
    let rank = a.rank();
    let m = a.min_letter() as i64;
    let rotation = DihedralMap::rotation(rank, 1 - m);
    let reflection = DihedralMap::reflection(rank, 1 + m);
    let map = if rank == 1 || rotation.apply(a.second_min()) != 0 {
        rotation
    } else {
        reflection
    };
    debug_assert!(map.apply(a.min_letter()) == 1);
    (map.apply_alphabet(a), map)
}
