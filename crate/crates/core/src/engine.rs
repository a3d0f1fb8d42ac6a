//! The inductive algorithm computing affine standard Lyndon words layer by
//! layer in height, plus a brute-force oracle straight from the definition
//! of standardness.
//!
//! For a real degree the word is the lexicographically largest concatenation
//! `SL(γ1)·SL(γ2)` over decompositions into positive roots with
//! `SL(γ1) < SL(γ2)` and a nonvanishing bracket. For an imaginary degree the
//! `n` largest such concatenations with linearly independent standard
//! bracketings are kept, selected greedily from the largest down; both-
//! imaginary decompositions never contribute since imaginary root spaces
//! commute.

use crate::loop_algebra::{
    bracket, standard_bracketing_in, AlgebraBackend, LoopElement, TypeALoopBackend,
};
use crate::root_system::{
    enumerate_positive_roots, residue, root_from_degree, AffineRoot, DihedralMap,
    OrderedAlphabet, RealRoot,
};
use crate::words::{compare, is_lyndon, Letter, Word};
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::HashMap;
use thiserror::Error;

/// Cap on multiset permutations the oracle will enumerate per degree.
pub const DEFAULT_ORACLE_GUARD: u64 = 5_000_000;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("max_height must be >= 1")]
    HeightTooSmall,
    #[error("no candidate decomposition produced a word for {root} (root enumeration bug)")]
    NoCandidates { root: String },
    #[error("selected word {word:?} for {root} has zero standard bracketing")]
    ZeroBracketing { root: String, word: Word },
    #[error("only {found} independent words found in imaginary degree {k}δ, need {need}")]
    NotEnoughIndependent { k: usize, found: usize, need: usize },
    #[error("degree vector has length {got}, alphabet needs {need}")]
    DegreeLength { got: usize, need: usize },
    #[error("degree vector is zero")]
    ZeroDegree,
    #[error("oracle guard exceeded: degree needs {needed} permutations, guard is {guard}")]
    GuardExceeded { needed: u64, guard: u64 },
    #[error("root {root} exceeds the table height {max_height}")]
    BeyondTable { root: String, max_height: usize },
}

/// The memoized table of affine standard Lyndon words up to a height,
/// built layer by layer. Imaginary entries are listed in decreasing order,
/// so index `r = 1` is the largest word of its degree.
#[derive(Debug, Clone)]
pub struct SLTable {
    alphabet: OrderedAlphabet,
    max_height: usize,
    real_words: HashMap<RealRoot, Word>,
    imaginary_words: HashMap<usize, Vec<Word>>,
    bracketings: HashMap<Word, LoopElement>,
}

impl SLTable {
    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn max_height(&self) -> usize {
        self.max_height
    }

    pub fn real_word(&self, root: &RealRoot) -> Option<&Word> {
        self.real_words.get(root)
    }

    /// The n words of degree `kδ`, decreasing; `None` beyond the table.
    pub fn imaginary_words(&self, k: usize) -> Option<&[Word]> {
        self.imaginary_words.get(&k).map(|v| v.as_slice())
    }

    /// `SL((kδ, r)) := SL_r(kδ)` with `r` 1-based.
    pub fn word(&self, root: &crate::root_system::ExtendedRoot) -> Option<&Word> {
        match root {
            crate::root_system::ExtendedRoot::Real(real) => self.real_word(real),
            crate::root_system::ExtendedRoot::Imaginary { k, r } => self
                .imaginary_words(*k)
                .and_then(|ws| ws.get(r.checked_sub(1)?)),
        }
    }

    pub fn words_for(&self, root: &AffineRoot) -> Option<Vec<&Word>> {
        match root {
            AffineRoot::Real(real) => self.real_word(real).map(|w| vec![w]),
            AffineRoot::Imaginary { k } => {
                self.imaginary_words(*k).map(|ws| ws.iter().collect())
            }
        }
    }

    /// Cached standard bracketing of a stored word.
    pub fn bracketing(&self, w: &Word) -> Option<&LoopElement> {
        self.bracketings.get(w)
    }

    /// All roots the table covers, in enumeration order.
    pub fn roots(&self) -> Vec<AffineRoot> {
        enumerate_positive_roots(self.rank(), self.max_height)
    }

    /// All extended roots the table covers, in enumeration order with
    /// imaginary indices expanded.
    pub fn extended_roots(&self) -> Vec<crate::root_system::ExtendedRoot> {
        use crate::root_system::ExtendedRoot;
        let mut out = Vec::new();
        for root in self.roots() {
            match root {
                AffineRoot::Real(real) => out.push(ExtendedRoot::Real(real)),
                AffineRoot::Imaginary { k } => {
                    for r in 1..=self.rank() {
                        out.push(ExtendedRoot::Imaginary { k, r });
                    }
                }
            }
        }
        out
    }

    /// Transports the whole table through a dihedral letter map. Real keys
    /// move with the arch, imaginary lists are re-sorted under the image
    /// order, and bracketings are recomputed in the image algebra.
    pub fn transport(&self, map: &DihedralMap) -> SLTable {
        let alphabet = map.apply_alphabet(&self.alphabet);
        let mut real_words = HashMap::with_capacity(self.real_words.len());
        for (root, word) in &self.real_words {
            real_words.insert(map.apply_real(root), map.apply_word(word));
        }
        let mut imaginary_words = HashMap::with_capacity(self.imaginary_words.len());
        for (&k, words) in &self.imaginary_words {
            let mut mapped: Vec<Word> = words.iter().map(|w| map.apply_word(w)).collect();
            mapped.sort_by(|x, y| compare(y, x, &alphabet));
            imaginary_words.insert(k, mapped);
        }
        let mut bracketings = HashMap::new();
        let mut memo = HashMap::new();
        for word in real_words.values().chain(imaginary_words.values().flatten()) {
            let b = crate::loop_algebra::standard_bracketing_memo(word, &alphabet, &mut memo)
                .expect("transported word is Lyndon");
            bracketings.insert(word.clone(), b);
        }
        SLTable {
            alphabet,
            max_height: self.max_height,
            real_words,
            imaginary_words,
            bracketings,
        }
    }
}

/// Unordered decompositions of a root into two positive roots, consulting
/// only strictly lower heights. Imaginary-plus-imaginary pairs are skipped.
fn decompositions(root: &AffineRoot, rank: usize) -> Vec<(AffineRoot, AffineRoot)> {
    let size = rank + 1;
    let mut out = Vec::new();
    match root {
        AffineRoot::Real(real) => {
            let len = real.arch_len(rank);
            // imaginary + same arch
            for d in 1..=real.k {
                out.push((
                    AffineRoot::Imaginary { k: d },
                    AffineRoot::Real(RealRoot { k: real.k - d, ..*real }),
                ));
            }
            // interior cut of the arch
            for cut in 1..len {
                let mid = residue(real.i as i64 + cut as i64 - 1, rank);
                let next = residue(real.i as i64 + cut as i64, rank);
                for a in 0..=real.k {
                    out.push((
                        AffineRoot::Real(RealRoot { k: a, i: real.i, j: mid }),
                        AffineRoot::Real(RealRoot { k: real.k - a, i: next, j: real.j }),
                    ));
                }
            }
            // wrap-around: two arches covering the circle once plus the arch
            if real.k >= 1 {
                let after_j = residue(real.j as i64 + 1, rank);
                for step in 1..(size - len) {
                    let t = residue(after_j as i64 + step as i64, rank);
                    let left = RealRoot { k: 0, i: t, j: real.j };
                    let right = RealRoot {
                        k: 0,
                        i: real.i,
                        j: residue(t as i64 - 1, rank),
                    };
                    for a in 0..real.k {
                        out.push((
                            AffineRoot::Real(RealRoot { k: a, ..left }),
                            AffineRoot::Real(RealRoot { k: real.k - 1 - a, ..right }),
                        ));
                    }
                }
            }
        }
        AffineRoot::Imaginary { k } => {
            // both parts real, arches complementary; fix letter 0 on the left
            for i in 0..size as Letter {
                for len in 1..size {
                    let j = residue(i as i64 + len as i64 - 1, rank);
                    let arch = RealRoot { k: 0, i, j };
                    if !arch.contains(0, rank) {
                        continue;
                    }
                    let co = RealRoot {
                        k: 0,
                        i: residue(j as i64 + 1, rank),
                        j: residue(i as i64 - 1, rank),
                    };
                    for a in 0..*k {
                        out.push((
                            AffineRoot::Real(RealRoot { k: a, ..arch }),
                            AffineRoot::Real(RealRoot { k: k - 1 - a, ..co }),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Candidate words for one root: deduplicated concatenations `lo·hi` over
/// all decompositions, with `lo < hi` and `[b[lo], b[hi]] != 0`, sorted in
/// decreasing lexicographic order.
fn candidates(table: &SLTable, root: &AffineRoot) -> Vec<Word> {
    let a = &table.alphabet;
    let mut words = Vec::new();
    for (g1, g2) in decompositions(root, table.rank()) {
        let w1s = table.words_for(&g1).expect("lower layer complete");
        let w2s = table.words_for(&g2).expect("lower layer complete");
        for w1 in &w1s {
            for w2 in &w2s {
                let (lo, hi) = match compare(w1, w2, a) {
                    Ordering::Less => (*w1, *w2),
                    Ordering::Greater => (*w2, *w1),
                    Ordering::Equal => continue,
                };
                let b_lo = table.bracketing(lo).expect("stored word has bracketing");
                let b_hi = table.bracketing(hi).expect("stored word has bracketing");
                if bracket(b_lo, b_hi).is_zero() {
                    continue;
                }
                words.push(lo.concat(hi));
            }
        }
    }
    words.sort_by(|x, y| compare(y, x, a));
    words.dedup();
    words
}

/// Standard bracketing with the table cache as the first memo level.
fn cached_bracketing(
    table: &SLTable,
    w: &Word,
    local: &mut HashMap<Word, LoopElement>,
) -> LoopElement {
    if let Some(hit) = table.bracketings.get(w) {
        return hit.clone();
    }
    if let Some(hit) = local.get(w) {
        return hit.clone();
    }
    let value = if w.len() == 1 {
        crate::loop_algebra::generator(w.letters()[0], table.rank())
            .expect("letter within alphabet")
    } else {
        let (l1, l2) = crate::words::costandard_factorization(w, &table.alphabet)
            .expect("candidate words are Lyndon");
        let b1 = cached_bracketing(table, &l1, local);
        let b2 = cached_bracketing(table, &l2, local);
        bracket(&b1, &b2)
    };
    local.insert(w.clone(), value.clone());
    value
}

/// Builds the full SL table up to `max_height`, layer by layer. Roots inside
/// one height layer are independent and evaluated in parallel; the result is
/// identical to sequential evaluation.
pub fn compute_table(a: &OrderedAlphabet, max_height: usize) -> Result<SLTable, EngineError> {
    if max_height < 1 {
        return Err(EngineError::HeightTooSmall);
    }
    let rank = a.rank();
    let size = rank + 1;
    let mut table = SLTable {
        alphabet: a.clone(),
        max_height,
        real_words: HashMap::new(),
        imaginary_words: HashMap::new(),
        bracketings: HashMap::new(),
    };

    // Height 1: simple roots.
    for l in 0..size as Letter {
        let word = Word::single(l);
        let b = crate::loop_algebra::generator(l, rank).expect("letter within alphabet");
        table.bracketings.insert(word.clone(), b);
        table.real_words.insert(RealRoot { k: 0, i: l, j: l }, word);
    }

    for h in 2..=max_height {
        if h % size == 0 {
            let k = h / size;
            let target = AffineRoot::Imaginary { k };
            let mut kept_words: Vec<Word> = Vec::with_capacity(rank);
            let mut kept_brackets: Vec<LoopElement> = Vec::with_capacity(rank);
            let mut local = HashMap::new();
            for word in candidates(&table, &target) {
                let b = cached_bracketing(&table, &word, &mut local);
                if crate::loop_algebra::grows_span(&kept_brackets, &b) {
                    kept_words.push(word);
                    kept_brackets.push(b);
                    if kept_words.len() == rank {
                        break;
                    }
                }
            }
            if kept_words.len() < rank {
                return Err(EngineError::NotEnoughIndependent {
                    k,
                    found: kept_words.len(),
                    need: rank,
                });
            }
            for (word, b) in kept_words.iter().zip(kept_brackets) {
                table.bracketings.insert(word.clone(), b);
            }
            table.imaginary_words.insert(k, kept_words);
        } else {
            let len = h % size;
            let k = (h - len) / size;
            let layer: Vec<RealRoot> = (0..size as Letter)
                .map(|i| RealRoot { k, i, j: residue(i as i64 + len as i64 - 1, rank) })
                .collect();
            let winners: Vec<Result<(RealRoot, Word), EngineError>> = layer
                .par_iter()
                .map(|root| {
                    let target = AffineRoot::Real(*root);
                    let best = candidates(&table, &target).into_iter().next();
                    match best {
                        Some(word) => Ok((*root, word)),
                        None => Err(EngineError::NoCandidates { root: root.to_string() }),
                    }
                })
                .collect();
            let mut local = HashMap::new();
            for item in winners {
                let (root, word) = item?;
                let b = cached_bracketing(&table, &word, &mut local);
                if b.is_zero() {
                    return Err(EngineError::ZeroBracketing {
                        root: root.to_string(),
                        word,
                    });
                }
                table.bracketings.insert(word.clone(), b);
                table.real_words.insert(root, word);
            }
        }
    }

    Ok(table)
}

/// Number of distinct arrangements of the degree's letter multiset,
/// saturating at `u64::MAX`. The running product `prefix-length choose c`
/// stays integral at every step.
fn multinomial_count(degree: &[usize]) -> u64 {
    let mut count: u128 = 1;
    let mut placed: u128 = 0;
    for &c in degree {
        for t in 1..=c as u128 {
            placed += 1;
            count = count.saturating_mul(placed) / t;
            if count > u64::MAX as u128 {
                return u64::MAX;
            }
        }
    }
    count as u64
}

/// Next multiset permutation in-place (plain value order); false at the end.
fn next_permutation(v: &mut [Letter]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every Lyndon word of the given degree, in decreasing lexicographic order.
pub fn lyndon_words_of_degree(
    a: &OrderedAlphabet,
    degree: &[usize],
    guard: Option<u64>,
) -> Result<Vec<Word>, EngineError> {
    let size = a.rank() + 1;
    if degree.len() != size {
        return Err(EngineError::DegreeLength { got: degree.len(), need: size });
    }
    if degree.iter().all(|&c| c == 0) {
        return Err(EngineError::ZeroDegree);
    }
    let guard = guard.unwrap_or(DEFAULT_ORACLE_GUARD);
    let needed = multinomial_count(degree);
    if needed > guard {
        return Err(EngineError::GuardExceeded { needed, guard });
    }
    let mut letters: Vec<Letter> = Vec::new();
    for (l, &c) in degree.iter().enumerate() {
        letters.extend(std::iter::repeat_n(l as Letter, c));
    }
    let mut found = Vec::new();
    loop {
        let w = Word::new(letters.clone());
        if is_lyndon(&w, a) {
            found.push(w);
        }
        if !next_permutation(&mut letters) {
            break;
        }
    }
    found.sort_by(|x, y| compare(y, x, a));
    Ok(found)
}

/// Definition-level oracle through an arbitrary backend: enumerate all
/// Lyndon words of the degree, walk them from the largest down, and keep
/// each word whose standard bracketing grows the span of the kept ones.
pub fn standard_words_of_degree_in<B: AlgebraBackend>(
    a: &OrderedAlphabet,
    degree: &[usize],
    backend: &B,
    guard: Option<u64>,
) -> Result<Vec<Word>, EngineError> {
    let all = lyndon_words_of_degree(a, degree, guard)?;
    let mut memo: HashMap<Word, B::Element> = HashMap::new();
    let mut kept_words = Vec::new();
    let mut kept_elems: Vec<B::Element> = Vec::new();
    for w in all {
        let b = standard_bracketing_in(&w, a, backend, &mut memo)
            .expect("enumerated words are Lyndon");
        if backend.grows_span(&kept_elems, &b) {
            kept_words.push(w);
            kept_elems.push(b);
        }
    }
    Ok(kept_words)
}

/// The oracle in the type-A loop algebra. Independent of [`compute_table`]:
/// no recursion over roots, just the definition of standardness.
pub fn oracle_degree(
    a: &OrderedAlphabet,
    degree: &[usize],
    guard: Option<u64>,
) -> Result<Vec<Word>, EngineError> {
    standard_words_of_degree_in(a, degree, &TypeALoopBackend::new(a.rank()), guard)
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleMismatch {
    pub degree: Vec<usize>,
    pub expected: Vec<Word>,
    pub got: Vec<Word>,
}

/// Outcome of checking the inductive table against the oracle on every
/// degree vector up to a height. Mismatches are report content; an empty
/// list is the expected result.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub rank: usize,
    pub order: Vec<Letter>,
    pub max_height: usize,
    pub degrees_checked: usize,
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn degree_vectors(size: usize, max_height: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; size];
    fn go(cur: &mut Vec<usize>, pos: usize, left: usize, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            if cur.iter().any(|&c| c > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..=left {
            cur[pos] = c;
            go(cur, pos + 1, left - c, out);
        }
        cur[pos] = 0;
    }
    go(&mut cur, 0, max_height, &mut out);
    out
}

/// Compares the inductive table against the oracle for every degree vector
/// of height `<= max_height`. Non-root degrees must come back empty from
/// the oracle; root degrees must agree word for word.
pub fn verify_oracle(
    a: &OrderedAlphabet,
    max_height: usize,
    guard: Option<u64>,
) -> Result<OracleReport, EngineError> {
    let table = compute_table(a, max_height)?;
    let degrees = degree_vectors(a.rank() + 1, max_height);
    let results: Vec<Option<OracleMismatch>> = degrees
        .par_iter()
        .map(|deg| {
            let expected: Vec<Word> = match root_from_degree(deg) {
                Some(root) => table
                    .words_for(&root)
                    .expect("root within table height")
                    .into_iter()
                    .cloned()
                    .collect(),
                None => Vec::new(),
            };
            let got = oracle_degree(a, deg, guard)?;
            Ok(if expected != got {
                Some(OracleMismatch { degree: deg.clone(), expected, got })
            } else {
                None
            })
        })
        .collect::<Result<_, EngineError>>()?;
    Ok(OracleReport {
        rank: a.rank(),
        order: a.order().to_vec(),
        max_height,
        degrees_checked: degrees.len(),
        mismatches: results.into_iter().flatten().collect(),
    })
}
