//! Closed-form generators for every affine standard Lyndon word family and
//! a verifier pitting them against the inductive engine.
//!
//! Rank 1 and rank 2 have their own explicit families. For rank >= 3 there
//! is one family for the standard order `1 < 2 < … < n < 0` and a general
//! family for any order with minimal letter 1 and second-minimal letter
//! different from 0. The general family is built purely by concatenating
//! base-table constituents: finite-type arch words, the n degree-δ words
//! `ℓ_c(δ)`, and for arches through the minimal letter a period word
//! extracted from the k = 1, 2 entries of the table.

use crate::engine::{compute_table, EngineError, SLTable};
use crate::root_system::{
    canonicalize_order, enumerate_positive_roots, residue, AffineRoot, ExtendedRoot,
    OrderedAlphabet, RealRoot, RootSystemError,
};
use crate::words::{compare, costandard_factorization, Letter, Word};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClosedFormError {
    #[error("closed form needs rank {expected}, alphabet has rank {got}")]
    WrongRank { expected: String, got: usize },
    #[error("alphabet order {0:?} is not canonical (min letter 1, second-min != 0)")]
    NotCanonical(Vec<Letter>),
    #[error("canonical order {0:?} is not the standard order")]
    NotStandardOrder(Vec<Letter>),
    #[error("ℓ_c(δ) is undefined for the minimal letter c = {0}")]
    MinimalLetter(Letter),
    #[error("imaginary index r = {r} outside 1..={rank}")]
    ImaginaryIndex { r: usize, rank: usize },
    #[error("base table reaches height {got}, need {need}")]
    BaseTableTooShallow { need: usize, got: usize },
    #[error("root {root} is beyond the requested height")]
    BeyondHeight { root: String },
    #[error(
        "period extraction failed for {root}: middle {middle:?} of SL(2δ+α) is not a δ-word"
    )]
    PeriodExtraction { root: String, middle: Word },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Root(#[from] RootSystemError),
}

/// Comparison of letter values as integers, not alphabet order.
pub fn sgn(a: Letter, b: Letter) -> i8 {
    match a.cmp(&b) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

// Cycle positions: letters 1..n sit at their own value, letter 0 at n+1.
fn pos(l: Letter, rank: usize) -> usize {
    if l == 0 {
        rank + 1
    } else {
        l as usize
    }
}

fn letter_of(p: usize, rank: usize) -> Letter {
    debug_assert!(p >= 1 && p <= rank + 1);
    if p == rank + 1 {
        0
    } else {
        p as Letter
    }
}

fn asc_run(lo: usize, hi: usize, rank: usize) -> Vec<Letter> {
    if lo > hi {
        return Vec::new();
    }
    (lo..=hi).map(|p| letter_of(p, rank)).collect()
}

fn desc_run(hi: usize, lo: usize, rank: usize) -> Vec<Letter> {
    if hi < lo {
        return Vec::new();
    }
    (lo..=hi).rev().map(|p| letter_of(p, rank)).collect()
}

fn word_of(parts: &[&[Letter]]) -> Word {
    let mut v = Vec::new();
    for p in parts {
        v.extend_from_slice(p);
    }
    Word::new(v)
}

fn repeat_parts(base: &[Letter], times: usize) -> Vec<Letter> {
    let mut v = Vec::with_capacity(base.len() * times);
    for _ in 0..times {
        v.extend_from_slice(base);
    }
    v
}

/// Finite-type standard Lyndon word of the arch `i -> j` (no δ content):
/// the maximum of `SL(γ1)SL(γ2)` over splits of the arch, smaller part
/// first. No bracket condition is needed in finite type.
pub fn finite_sl(a: &OrderedAlphabet, i: Letter, j: Letter) -> Result<Word, ClosedFormError> {
    let root = RealRoot::new(0, i, j, a.rank())?;
    let mut memo: HashMap<(Letter, Letter), Word> = HashMap::new();
    Ok(finite_sl_memo(a, root.i, root.j, &mut memo))
}

fn finite_sl_memo(
    a: &OrderedAlphabet,
    i: Letter,
    j: Letter,
    memo: &mut HashMap<(Letter, Letter), Word>,
) -> Word {
    if i == j {
        return Word::single(i);
    }
    if let Some(hit) = memo.get(&(i, j)) {
        return hit.clone();
    }
    let rank = a.rank();
    let mut best: Option<Word> = None;
    let mut cut = i;
    while cut != j {
        let next = residue(cut as i64 + 1, rank);
        let left = finite_sl_memo(a, i, cut, memo);
        let right = finite_sl_memo(a, next, j, memo);
        let cand = match compare(&left, &right, a) {
            Ordering::Less => left.concat(&right),
            Ordering::Greater => right.concat(&left),
            Ordering::Equal => unreachable!("distinct arches share no word"),
        };
        best = match best {
            Some(b) if compare(&b, &cand, a) == Ordering::Greater => Some(b),
            _ => Some(cand),
        };
        cut = next;
    }
    let word = best.expect("arch of length >= 2 has a split");
    memo.insert((i, j), word.clone());
    word
}

/// The degree-δ word ending in `c`: the finite-type word of the arch from
/// `c+1` to `c-1` followed by the letter `c`. Defined for every letter
/// except the minimal one.
pub fn ell_c_delta(c: Letter, a: &OrderedAlphabet) -> Result<Word, ClosedFormError> {
    if !a.is_canonical() {
        return Err(ClosedFormError::NotCanonical(a.order().to_vec()));
    }
    if c == a.min_letter() {
        return Err(ClosedFormError::MinimalLetter(c));
    }
    let rank = a.rank();
    let prefix = finite_sl(
        a,
        residue(c as i64 + 1, rank),
        residue(c as i64 - 1, rank),
    )?;
    Ok(word_of(&[prefix.letters(), &[c]]))
}

/// The n degree-δ words `ℓ_c(δ)`, keyed by their final letter, with the
/// peak letter `i` (the second-minimal one) recorded.
#[derive(Debug, Clone)]
pub struct DeltaWordFamily {
    peak: Letter,
    words: HashMap<Letter, Word>,
}

impl DeltaWordFamily {
    pub fn new(a: &OrderedAlphabet) -> Result<Self, ClosedFormError> {
        if !a.is_canonical() {
            return Err(ClosedFormError::NotCanonical(a.order().to_vec()));
        }
        let mut words = HashMap::new();
        for c in 0..=a.rank() as Letter {
            if c == a.min_letter() {
                continue;
            }
            words.insert(c, ell_c_delta(c, a)?);
        }
        Ok(DeltaWordFamily { peak: a.second_min(), words })
    }

    pub fn peak(&self) -> Letter {
        self.peak
    }

    pub fn word(&self, c: Letter) -> Option<&Word> {
        self.words.get(&c)
    }

    /// The arch word `SL(α_{c+1 -> c-1})`, i.e. `ℓ_c(δ)` without its final
    /// letter.
    pub fn arch_prefix(&self, c: Letter) -> Option<Word> {
        self.words.get(&c).map(|w| w.prefix(w.len() - 1))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.words.keys().copied()
    }

    pub fn matches(&self, w: &Word) -> Option<Letter> {
        self.words
            .iter()
            .find_map(|(c, lw)| (lw == w).then_some(*c))
    }
}

fn check_rank(a: &OrderedAlphabet, expected: usize) -> Result<(), ClosedFormError> {
    if a.rank() != expected {
        return Err(ClosedFormError::WrongRank {
            expected: expected.to_string(),
            got: a.rank(),
        });
    }
    Ok(())
}

fn imaginary_index(r: usize, rank: usize) -> Result<(), ClosedFormError> {
    if r < 1 || r > rank {
        return Err(ClosedFormError::ImaginaryIndex { r, rank });
    }
    Ok(())
}

/// Rank-1 closed forms with the order `1 < 0`: `1(10)^k`, `(10)^k 0`,
/// `1(10)^(k-1) 0`, and the simple letters.
pub fn closed_form_a1(
    root: &ExtendedRoot,
    a: &OrderedAlphabet,
) -> Result<Word, ClosedFormError> {
    check_rank(a, 1)?;
    if a.order() != [1, 0] {
        return Err(ClosedFormError::NotCanonical(a.order().to_vec()));
    }
    let ten = [1u8, 0];
    Ok(match root {
        ExtendedRoot::Real(RealRoot { k, i: 1, j: 1 }) => {
            word_of(&[&[1], &repeat_parts(&ten, *k)])
        }
        ExtendedRoot::Real(RealRoot { k, i: 0, j: 0 }) => {
            word_of(&[&repeat_parts(&ten, *k), &[0]])
        }
        ExtendedRoot::Imaginary { k, r } => {
            imaginary_index(*r, 1)?;
            word_of(&[&[1], &repeat_parts(&ten, k - 1), &[0]])
        }
        other => return Err(ClosedFormError::BeyondHeight { root: other.to_string() }),
    })
}

/// Rank-2 closed forms with the order `1 < 2 < 0`, including the parity
/// split for the arch `2 -> 0`.
pub fn closed_form_a2(
    root: &ExtendedRoot,
    a: &OrderedAlphabet,
) -> Result<Word, ClosedFormError> {
    check_rank(a, 2)?;
    if a.order() != [1, 2, 0] {
        return Err(ClosedFormError::NotCanonical(a.order().to_vec()));
    }
    let p = [1u8, 0, 2];
    Ok(match root {
        ExtendedRoot::Real(real) => {
            let k = real.k;
            match (real.i, real.j) {
                (1, 1) if k == 0 => Word::single(1),
                (1, 1) => word_of(&[&[1, 2], &repeat_parts(&p, k - 1), &[1, 0]]),
                (2, 2) => word_of(&[&repeat_parts(&p, k), &[2]]),
                (0, 0) => word_of(&[&repeat_parts(&p, k), &[0]]),
                (1, 2) => word_of(&[&[1, 2], &repeat_parts(&p, k)]),
                (0, 1) => word_of(&[&[1, 0], &repeat_parts(&p, k)]),
                (2, 0) if k % 2 == 0 => word_of(&[
                    &repeat_parts(&p, k / 2),
                    &[2],
                    &repeat_parts(&p, k / 2),
                    &[0],
                ]),
                (2, 0) => word_of(&[
                    &repeat_parts(&p, (k + 1) / 2),
                    &[0],
                    &repeat_parts(&p, (k - 1) / 2),
                    &[2],
                ]),
                _ => return Err(ClosedFormError::BeyondHeight { root: root.to_string() }),
            }
        }
        ExtendedRoot::Imaginary { k, r } => {
            imaginary_index(*r, 2)?;
            match r {
                1 => word_of(&[&[1, 0], &repeat_parts(&p, k - 1), &[2]]),
                _ => word_of(&[&[1, 2], &repeat_parts(&p, k - 1), &[0]]),
            }
        }
    })
}

/// Closed forms for rank >= 3 with the standard order `1 < 2 < … < n < 0`.
/// The imaginary index `r = n` uses the explicit reading `123…n0` since the
/// displayed general form degenerates there.
pub fn closed_form_standard(
    root: &ExtendedRoot,
    rank: usize,
) -> Result<Word, ClosedFormError> {
    if rank < 3 {
        return Err(ClosedFormError::WrongRank {
            expected: ">=3".to_string(),
            got: rank,
        });
    }
    let n = rank;
    // The length-(n+1) period of a wrap-free arch based at position `p`:
    // 1 0 n … p 2 3 … (p-1).
    let period = |p: usize| -> Vec<Letter> {
        let mut v = vec![1, 0];
        v.extend(desc_run(n, p, n));
        v.extend(asc_run(2, p - 1, n));
        v
    };
    // 1 0 2 3 … n, the period of arches based at the minimal letter.
    let min_period = || -> Vec<Letter> {
        let mut v = vec![1, 0];
        v.extend(asc_run(2, n, n));
        v
    };
    Ok(match root {
        ExtendedRoot::Real(real) => {
            let k = real.k;
            let pi = pos(real.i, n);
            let pj = pos(real.j, n);
            if k == 0 {
                if pi <= pj {
                    Word::new(asc_run(pi, pj, n))
                } else {
                    word_of(&[&[1, 0], &desc_run(n, pi, n), &asc_run(2, pj, n)])
                }
            } else if pi == 1 {
                word_of(&[
                    &[1],
                    &asc_run(2, n, n),
                    &repeat_parts(&min_period(), k - 1),
                    &[1, 0],
                    &asc_run(2, pj, n),
                ])
            } else if pi == 2 && pj == 2 {
                word_of(&[&repeat_parts(&period(2), k), &[2]])
            } else if pi == 2 {
                if k % 2 == 0 {
                    word_of(&[
                        &repeat_parts(&period(2), k / 2),
                        &[2],
                        &repeat_parts(&period(2), k / 2),
                        &asc_run(3, pj, n),
                    ])
                } else {
                    word_of(&[
                        &repeat_parts(&period(2), (k + 1) / 2),
                        &asc_run(3, pj, n),
                        &repeat_parts(&period(2), (k - 1) / 2),
                        &[2],
                    ])
                }
            } else if pi <= pj {
                word_of(&[&repeat_parts(&period(pi), k), &asc_run(pi, pj, n)])
            } else {
                // wrap-around arch through 0 and 1
                let inner = {
                    let mut v = vec![1, 0];
                    v.extend(desc_run(n, pi - 1, n));
                    v.extend(asc_run(2, pi - 2, n));
                    v
                };
                word_of(&[
                    &[1, 0],
                    &desc_run(n, pi, n),
                    &asc_run(2, pi - 2, n),
                    &repeat_parts(&inner, k - 1),
                    &[1, 0],
                    &desc_run(n, pi - 1, n),
                    &asc_run(2, pj, n),
                ])
            }
        }
        ExtendedRoot::Imaginary { k, r } => {
            imaginary_index(*r, n)?;
            let k = *k;
            if *r == n {
                word_of(&[
                    &[1],
                    &asc_run(2, n, n),
                    &repeat_parts(&min_period(), k - 1),
                    &[0],
                ])
            } else {
                let r = *r;
                let inner = {
                    let mut v = vec![1, 0];
                    v.extend(desc_run(n, r + 1, n));
                    v.extend(asc_run(2, r, n));
                    v
                };
                word_of(&[
                    &[1, 0],
                    &desc_run(n, r + 2, n),
                    &asc_run(2, r, n),
                    &repeat_parts(&inner, k - 1),
                    &[letter_of(r + 1, n)],
                ])
            }
        }
    })
}

/// Generator for an arbitrary canonical order at rank >= 3. Words are built
/// by concatenation of the δ-word family, finite-type arch words, and, for
/// arches through the minimal letter, the period extracted from the base
/// table's k = 1, 2 entries.
pub struct GeneralForm<'t> {
    base: &'t SLTable,
    family: DeltaWordFamily,
}

impl<'t> GeneralForm<'t> {
    pub fn new(base: &'t SLTable) -> Result<Self, ClosedFormError> {
        let a = base.alphabet();
        if a.rank() < 3 {
            return Err(ClosedFormError::WrongRank {
                expected: ">=3".to_string(),
                got: a.rank(),
            });
        }
        if !a.is_canonical() {
            return Err(ClosedFormError::NotCanonical(a.order().to_vec()));
        }
        let need = 3 * a.rank() + 2; // ht(2δ) plus a maximal arch
        if base.max_height() < need {
            return Err(ClosedFormError::BaseTableTooShallow {
                need,
                got: base.max_height(),
            });
        }
        let family = DeltaWordFamily::new(a)?;
        Ok(GeneralForm { base, family })
    }

    pub fn family(&self) -> &DeltaWordFamily {
        &self.family
    }

    fn alphabet(&self) -> &OrderedAlphabet {
        self.base.alphabet()
    }

    /// The letter whose δ-word repeats in the imaginary family for final
    /// letter `a`: the cyclic neighbor of `a` on the peak side.
    fn toward_peak(&self, a: Letter) -> Letter {
        let n = self.alphabet().rank();
        let pa = pos(a, n);
        let pp = pos(self.family.peak(), n);
        match pa.cmp(&pp) {
            Ordering::Less => letter_of(pa + 1, n),
            Ordering::Greater => letter_of(pa - 1, n),
            Ordering::Equal => self.family.peak(),
        }
    }

    /// All n words of degree `kδ`, in decreasing order.
    pub fn imaginary_family(&self, k: usize) -> Result<Vec<Word>, ClosedFormError> {
        let a = self.alphabet();
        let mut words = Vec::with_capacity(a.rank());
        for c in self.family.letters() {
            let prefix = self.family.arch_prefix(c).expect("family letter");
            let inner = self
                .family
                .word(self.toward_peak(c))
                .expect("neighbor stays off the minimal letter");
            words.push(word_of(&[
                prefix.letters(),
                &repeat_parts(inner.letters(), k - 1),
                &[c],
            ]));
        }
        words.sort_by(|x, y| compare(y, x, a));
        Ok(words)
    }

    /// The period of the chain `kδ + α` for an arch through the minimal
    /// letter, read off `SL(2δ+α) = ℓ1 · period · ℓ2` where `ℓ1 ℓ2` is the
    /// costandard factorization of `SL(δ+α)`. A middle that is not a δ-word
    /// is reported, never guessed around.
    pub fn wrap_period(&self, real: &RealRoot) -> Result<(Word, Word, Word), ClosedFormError> {
        let a = self.alphabet();
        let one = RealRoot { k: 1, ..*real };
        let two = RealRoot { k: 2, ..*real };
        let w1 = self.base.real_word(&one).ok_or(ClosedFormError::BaseTableTooShallow {
            need: one.height(a.rank()),
            got: self.base.max_height(),
        })?;
        let w2 = self.base.real_word(&two).ok_or(ClosedFormError::BaseTableTooShallow {
            need: two.height(a.rank()),
            got: self.base.max_height(),
        })?;
        let (l1, l2) = costandard_factorization(w1, a).expect("table words are Lyndon");
        let middle = Word::new(w2.letters()[l1.len()..w2.len() - l2.len()].to_vec());
        if !w2.starts_with(&l1) || !w2.ends_with(&l2) || self.family.matches(&middle).is_none()
        {
            return Err(ClosedFormError::PeriodExtraction {
                root: real.to_string(),
                middle,
            });
        }
        Ok((l1, middle, l2))
    }

    pub fn word(&self, root: &ExtendedRoot) -> Result<Word, ClosedFormError> {
        let a = self.alphabet();
        let n = a.rank();
        match root {
            ExtendedRoot::Imaginary { k, r } => {
                imaginary_index(*r, n)?;
                Ok(self.imaginary_family(*k)?[r - 1].clone())
            }
            ExtendedRoot::Real(real) if real.k == 0 => finite_sl(a, real.i, real.j),
            ExtendedRoot::Real(real) => {
                let k = real.k;
                let pa = pos(real.i, n);
                let pb = pos(real.j, n);
                let pp = pos(self.family.peak(), n);
                let peak = self.family.peak();
                if pa == 1 || pa > pb {
                    // arch through the minimal letter
                    let (l1, period, l2) = self.wrap_period(real)?;
                    return Ok(word_of(&[
                        l1.letters(),
                        &repeat_parts(period.letters(), k - 1),
                        l2.letters(),
                    ]));
                }
                let lw = |c: Letter| self.family.word(c).expect("non-minimal letter");
                Ok(if pb < pp {
                    word_of(&[
                        &repeat_parts(lw(letter_of(pb + 1, n)).letters(), k),
                        &desc_run(pb, pa, n),
                    ])
                } else if pa > pp {
                    word_of(&[
                        &repeat_parts(lw(letter_of(pa - 1, n)).letters(), k),
                        &asc_run(pa, pb, n),
                    ])
                } else if pa == pp && pb == pp {
                    word_of(&[&repeat_parts(lw(peak).letters(), k), &[peak]])
                } else if pa == pp {
                    let up = asc_run(pp + 1, pb, n);
                    let l = lw(peak).letters();
                    if k % 2 == 0 {
                        word_of(&[
                            &repeat_parts(l, k / 2),
                            &[peak],
                            &repeat_parts(l, k / 2),
                            &up,
                        ])
                    } else {
                        word_of(&[
                            &repeat_parts(l, (k + 1) / 2),
                            &up,
                            &repeat_parts(l, (k - 1) / 2),
                            &[peak],
                        ])
                    }
                } else if pb == pp {
                    let down = desc_run(pp - 1, pa, n);
                    let l = lw(peak).letters();
                    if k % 2 == 0 {
                        word_of(&[
                            &repeat_parts(l, k / 2),
                            &[peak],
                            &repeat_parts(l, k / 2),
                            &down,
                        ])
                    } else {
                        word_of(&[
                            &repeat_parts(l, (k + 1) / 2),
                            &down,
                            &repeat_parts(l, (k - 1) / 2),
                            &[peak],
                        ])
                    }
                } else {
                    // pa < pp < pb: three-way periodicity. The side pieces
                    // rank by the alphabet order of their first letters (the
                    // peak's cyclic neighbor residues); the larger one leads
                    // except at k ≡ 2 (mod 3), where the first and last
                    // ℓ-runs have equal length and Lyndon-ness forces the
                    // larger piece to the end.
                    let up = asc_run(pp + 1, pb, n);
                    let down = desc_run(pp - 1, pa, n);
                    let l = lw(peak).letters();
                    let up_is_max = a.cmp_letters(
                        residue(peak as i64 + 1, n),
                        residue(peak as i64 - 1, n),
                    ) == Ordering::Greater;
                    let (big, small) = if up_is_max { (&up, &down) } else { (&down, &up) };
                    match k % 3 {
                        0 => word_of(&[
                            &repeat_parts(l, k / 3),
                            &[peak],
                            &repeat_parts(l, k / 3),
                            big,
                            &repeat_parts(l, k / 3),
                            small,
                        ]),
                        2 => word_of(&[
                            &repeat_parts(l, (k + 1) / 3),
                            small,
                            &repeat_parts(l, (k - 2) / 3),
                            &[peak],
                            &repeat_parts(l, (k + 1) / 3),
                            big,
                        ]),
                        _ => word_of(&[
                            &repeat_parts(l, (k + 2) / 3),
                            big,
                            &repeat_parts(l, (k - 1) / 3),
                            &[peak],
                            &repeat_parts(l, (k - 1) / 3),
                            small,
                        ]),
                    }
                })
            }
        }
    }
}

/// Which theorem family a verification run targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosedFormTarget {
    A1,
    A2,
    Standard,
    General,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormMismatch {
    pub root: ExtendedRoot,
    pub engine: Word,
    pub formula: Word,
}

/// Result of comparing a closed-form generator against the engine on every
/// root up to a height. `findings` carries period-extraction failures,
/// which are reported rather than guessed around.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormReport {
    pub target: ClosedFormTarget,
    pub rank: usize,
    pub order: Vec<Letter>,
    pub canonical_order: Vec<Letter>,
    pub max_height: usize,
    pub roots_checked: usize,
    pub mismatches: Vec<ClosedFormMismatch>,
    pub findings: Vec<String>,
}

impl ClosedFormReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.findings.is_empty()
    }
}

/// Compares the applicable closed-form generator with the engine for every
/// root of height up to `max_height`. Non-canonical alphabets go through
/// the canonicalization transport; the comparison runs in the canonical
/// world, which the letter bijection makes equivalent.
pub fn verify_closed_forms(
    a: &OrderedAlphabet,
    max_height: usize,
    target: ClosedFormTarget,
) -> Result<ClosedFormReport, ClosedFormError> {
    match target {
        ClosedFormTarget::A1 => check_rank(a, 1)?,
        ClosedFormTarget::A2 => check_rank(a, 2)?,
        ClosedFormTarget::Standard | ClosedFormTarget::General => {
            if a.rank() < 3 {
                return Err(ClosedFormError::WrongRank {
                    expected: ">=3".to_string(),
                    got: a.rank(),
                });
            }
        }
    }
    let (canon, map) = canonicalize_order(a);
    if target == ClosedFormTarget::Standard && !canon.is_standard() {
        return Err(ClosedFormError::NotStandardOrder(canon.order().to_vec()));
    }
    let table_height = if target == ClosedFormTarget::General {
        max_height.max(3 * a.rank() + 2)
    } else {
        max_height
    };
    let table = compute_table(a, table_height)?;
    let canon_table = table.transport(&map);
    let general = match target {
        ClosedFormTarget::General => Some(GeneralForm::new(&canon_table)?),
        _ => None,
    };

    let mut mismatches = Vec::new();
    let mut findings = Vec::new();
    let mut checked = 0usize;
    for root in enumerate_positive_roots(canon.rank(), max_height) {
        let extended: Vec<ExtendedRoot> = match root {
            AffineRoot::Real(real) => vec![ExtendedRoot::Real(real)],
            AffineRoot::Imaginary { k } => (1..=canon.rank())
                .map(|r| ExtendedRoot::Imaginary { k, r })
                .collect(),
        };
        for ext in extended {
            let engine_word = canon_table.word(&ext).expect("within table").clone();
            let formula = match target {
                ClosedFormTarget::A1 => closed_form_a1(&ext, &canon),
                ClosedFormTarget::A2 => closed_form_a2(&ext, &canon),
                ClosedFormTarget::Standard => closed_form_standard(&ext, canon.rank()),
                ClosedFormTarget::General => general.as_ref().expect("built above").word(&ext),
            };
            checked += 1;
            match formula {
                Ok(word) if word == engine_word => {}
                Ok(word) => mismatches.push(ClosedFormMismatch {
                    root: ext,
                    engine: engine_word,
                    formula: word,
                }),
                Err(e @ ClosedFormError::PeriodExtraction { .. }) => {
                    findings.push(e.to_string())
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(ClosedFormReport {
        target,
        rank: a.rank(),
        order: a.order().to_vec(),
        canonical_order: canon.order().to_vec(),
        max_height,
        roots_checked: checked,
        mismatches,
        findings,
    })
}

/// Closed-form targets that apply to an alphabet, most specific first.
pub fn applicable_targets(a: &OrderedAlphabet) -> Vec<ClosedFormTarget> {
    match a.rank() {
        1 => vec![ClosedFormTarget::A1],
        2 => vec![ClosedFormTarget::A2],
        _ => {
            let (canon, _) = canonicalize_order(a);
            if canon.is_standard() {
                vec![ClosedFormTarget::Standard, ClosedFormTarget::General]
            } else {
                vec![ClosedFormTarget::General]
            }
        }
    }
}
