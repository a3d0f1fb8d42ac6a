//! Exact model of the positive part of the affine Lie algebra via the loop
//! realization: integer combinations of matrix units `E_{p,q}·t^d`, with
//! `e_i = E_{i,i+1} t⁰` for `i = 1..n` and `e_0 = E_{n+1,1} t¹`.
//!
//! Coefficients are arbitrary-precision integers and independence testing is
//! exact, so bracketing constants like `(-2)^k` never overflow or round.

use crate::root_system::OrderedAlphabet;
use crate::words::{costandard_factorization, Letter, Word, WordError};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoopAlgebraError {
    #[error("letter {0} is outside the alphabet of rank {1}")]
    LetterOutOfRange(Letter, usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Key of one term: (row, col, t-power), rows and columns 1-based in
/// `1..=n+1`.
pub type TermKey = (u8, u8, u32);

/// A finitely supported integer combination of `E_{p,q}·t^d`. The term map
/// is sorted and zero-pruned, so equality and hashing are structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoopElement {
    terms: BTreeMap<TermKey, BigInt>,
}

impl LoopElement {
    pub fn zero() -> Self {
        LoopElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A single term `c · E_{p,q} t^d`.
    pub fn term(row: u8, col: u8, t_power: u32, coeff: impl Into<BigInt>) -> Self {
        let mut e = LoopElement::zero();
        e.add_term((row, col, t_power), coeff.into());
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: TermKey, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LoopElement) -> LoopElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> LoopElement {
        let mut out = LoopElement::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: impl Into<BigInt>) -> LoopElement {
        let s = s.into();
        let mut out = LoopElement::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.clone() * &s);
        }
        out
    }

    /// The single t-power shared by all terms, when homogeneous in t.
    pub fn t_power(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|&(_, _, d)| d);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_diagonal(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|&(p, q, _)| p == q)
    }

    pub fn trace(&self) -> BigInt {
        self.terms
            .iter()
            .filter(|((p, q, _), _)| p == q)
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// `Some((row, col))` when the matrix part is supported on one
    /// off-diagonal unit direction.
    pub fn single_unit_direction(&self) -> Option<(u8, u8)> {
        let mut it = self.terms.keys().map(|&(p, q, _)| (p, q));
        let first = it.next()?;
        if first.0 == first.1 {
            return None;
        }
        it.all(|d| d == first).then_some(first)
    }

    /// Coefficient of the smallest (row, col, t) term, the deterministic
    /// representative used in table exports.
    pub fn leading_coefficient(&self) -> BigInt {
        self.terms
            .values()
            .next()
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Chevalley generator of the positive subalgebra: `E_{i,i+1} t⁰` for
/// `i = 1..n` and the affine one `E_{n+1,1} t¹` for `i = 0`.
pub fn generator(letter: Letter, rank: usize) -> Result<LoopElement, LoopAlgebraError> {
    if letter as usize > rank {
        return Err(LoopAlgebraError::LetterOutOfRange(letter, rank));
    }
    let n = rank as u8;
    Ok(if letter == 0 {
        LoopElement::term(n + 1, 1, 1, 1)
    } else {
        LoopElement::term(letter, letter + 1, 0, 1)
    })
}

/// Lie bracket `[x t^a, y t^b] = (xy - yx) t^{a+b}`. On the positive
/// subalgebra all t-powers are nonnegative, so the central cocycle of the
/// full affinization vanishes identically and is not carried.
pub fn bracket(x: &LoopElement, y: &LoopElement) -> LoopElement {
    let mut out = LoopElement::zero();
    for (&(p, q, d), c) in x.terms() {
        for (&(r, s, e), c2) in y.terms() {
            let coeff = c * c2;
            if q == r {
                out.add_term((p, s, d + e), coeff.clone());
            }
            if s == p {
                out.add_term((r, q, d + e), -coeff);
            }
        }
    }
    out
}

/// Standard bracketing of a Lyndon word: `b[i] = e_i`, and
/// `b[l] = [b[l1], b[l2]]` along the costandard factorization. May be zero.
pub fn standard_bracketing(
    w: &Word,
    a: &OrderedAlphabet,
) -> Result<LoopElement, LoopAlgebraError> {
    let mut memo = HashMap::new();
    standard_bracketing_memo(w, a, &mut memo)
}

/// As [`standard_bracketing`], sharing a memo across calls. The memo is an
/// internal cache only; results are identical with or without it.
pub fn standard_bracketing_memo(
    w: &Word,
    a: &OrderedAlphabet,
    memo: &mut HashMap<Word, LoopElement>,
) -> Result<LoopElement, LoopAlgebraError> {
    if let Some(hit) = memo.get(w) {
        return Ok(hit.clone());
    }
    let value = if w.len() == 1 {
        generator(w.letters()[0], a.rank())?
    } else {
        let (l1, l2) = costandard_factorization(w, a)?;
        let b1 = standard_bracketing_memo(&l1, a, memo)?;
        let b2 = standard_bracketing_memo(&l2, a, memo)?;
        bracket(&b1, &b2)
    };
    memo.insert(w.clone(), value.clone());
    Ok(value)
}

/// True iff `candidate` is nonzero and not in the rational span of `basis`,
/// decided by fraction-free elimination over the integers.
pub fn grows_span(basis: &[LoopElement], candidate: &LoopElement) -> bool {
    if candidate.is_zero() {
        return false;
    }
    if basis.is_empty() {
        return true;
    }
    // Collect the joint support as the column set.
    let mut columns: Vec<TermKey> = Vec::new();
    for e in basis.iter().chain(std::iter::once(candidate)) {
        for (k, _) in e.terms() {
            if !columns.contains(k) {
                columns.push(*k);
            }
        }
    }
    columns.sort_unstable();
    let to_row = |e: &LoopElement| -> Vec<BigInt> {
        columns
            .iter()
            .map(|k| e.terms.get(k).cloned().unwrap_or_else(BigInt::zero))
            .collect()
    };
    let mut rows: Vec<Vec<BigInt>> = basis.iter().map(to_row).collect();
    let mut cand = to_row(candidate);

    // Forward-eliminate the basis, then reduce the candidate against it.
    let ncols = columns.len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let pivot = rows[pivot_row][col].clone();
        for r in pivot_row + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let v = &rows[r][c] * &pivot - &factor * &rows[pivot_row][c];
                rows[r][c] = v;
            }
        }
        if !cand[col].is_zero() {
            let factor = cand[col].clone();
            for c in col..ncols {
                let v = &cand[c] * &pivot - &factor * &rows[pivot_row][c];
                cand[c] = v;
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    cand.iter().any(|v| !v.is_zero())
}

/// Backend abstraction over the Lie algebra the words are bracketed in.
/// The engine only needs generators, the bracket, a zero test, and an exact
/// span oracle, so non-A types can plug in structure-constant tables later.
pub trait AlgebraBackend {
    type Element: Clone;

    fn generator(&self, letter: Letter) -> Self::Element;
    fn bracket(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
    fn is_zero(&self, x: &Self::Element) -> bool;
    fn grows_span(&self, basis: &[Self::Element], candidate: &Self::Element) -> bool;
}

/// The type-A matrix backend over the loop realization.
#[derive(Debug, Clone, Copy)]
pub struct TypeALoopBackend {
    rank: usize,
}

impl TypeALoopBackend {
    pub fn new(rank: usize) -> Self {
        TypeALoopBackend { rank }
    }
}

impl AlgebraBackend for TypeALoopBackend {
    type Element = LoopElement;

    fn generator(&self, letter: Letter) -> LoopElement {
        generator(letter, self.rank).expect("letter validated by the alphabet")
    }

    fn bracket(&self, x: &LoopElement, y: &LoopElement) -> LoopElement {
        bracket(x, y)
    }

    fn is_zero(&self, x: &LoopElement) -> bool {
        x.is_zero()
    }

    fn grows_span(&self, basis: &[LoopElement], candidate: &LoopElement) -> bool {
        grows_span(basis, candidate)
    }
}

/// Standard bracketing through an arbitrary backend, memoized per call tree.
pub fn standard_bracketing_in<B: AlgebraBackend>(
    w: &Word,
    a: &OrderedAlphabet,
    backend: &B,
    memo: &mut HashMap<Word, B::Element>,
) -> Result<B::Element, WordError> {
    if let Some(hit) = memo.get(w) {
        return Ok(hit.clone());
    }
    let value = if w.len() == 1 {
        backend.generator(w.letters()[0])
    } else {
        let (l1, l2) = costandard_factorization(w, a)?;
        let b1 = standard_bracketing_in(&l1, a, backend, memo)?;
        let b2 = standard_bracketing_in(&l2, a, backend, memo)?;
        backend.bracket(&b1, &b2)
    };
    memo.insert(w.clone(), value.clone());
    Ok(value)
}

/// Trace pairing `tr(xy)` of the matrix parts, ignoring t-powers. Used to
/// confirm the central cocycle vanishes on everything the engine brackets.
pub fn trace_pairing(x: &LoopElement, y: &LoopElement) -> BigInt {
    let mut total = BigInt::zero();
    for (&(p, q, _), c) in x.terms() {
        for (&(r, s, _), c2) in y.terms() {
            if q == r && s == p {
                total += c * c2;
            }
        }
    }
    total
}

/// Convenience used by tests: `|c| == 2^e` sign checks and friends live on
/// BigInt, so expose a small literal builder.
pub fn bigint(v: i64) -> BigInt {
    BigInt::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;
    use num_traits::{Signed, Zero};
    use rand::Rng;

    fn a(rank: usize, order: &[Letter]) -> OrderedAlphabet {
        OrderedAlphabet::new(rank, order.to_vec()).unwrap()
    }

    fn w(letters: &[Letter]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn generator_examples() {
        assert_eq!(generator(1, 1).unwrap(), LoopElement::term(1, 2, 0, 1));
        assert_eq!(generator(0, 1).unwrap(), LoopElement::term(2, 1, 1, 1));
        assert_eq!(generator(0, 2).unwrap(), LoopElement::term(3, 1, 1, 1));
        assert!(generator(3, 2).is_err());
    }

    #[test]
    fn bracket_examples() {
        let e12 = LoopElement::term(1, 2, 0, 1);
        let e21t = LoopElement::term(2, 1, 1, 1);
        let h = bracket(&e12, &e21t);
        let mut expected = LoopElement::term(1, 1, 1, 1);
        expected.add_term((2, 2, 1), bigint(-1));
        assert_eq!(h, expected);

        assert!(bracket(&e12, &e12).is_zero());

        let e13 = LoopElement::term(1, 3, 0, 1);
        let e31 = LoopElement::term(3, 1, 5, 1);
        let h2 = bracket(&e13, &e31);
        let mut expected2 = LoopElement::term(1, 1, 5, 1);
        expected2.add_term((3, 3, 5), bigint(-1));
        assert_eq!(h2, expected2);
    }

    #[test]
    fn standard_bracketing_examples() {
        let a10 = a(1, &[1, 0]);
        // b[10] = (E11 - E22) t
        let b10 = standard_bracketing(&w(&[1, 0]), &a10).unwrap();
        let mut expected = LoopElement::term(1, 1, 1, 1);
        expected.add_term((2, 2, 1), bigint(-1));
        assert_eq!(b10, expected);

        // b[1100] = -2 (E11 - E22) t^2
        let b1100 = standard_bracketing(&w(&[1, 1, 0, 0]), &a10).unwrap();
        let mut expected = LoopElement::term(1, 1, 2, -2);
        expected.add_term((2, 2, 2), bigint(2));
        assert_eq!(b1100, expected);

        // b[102] = (E22 - E33) t for the order 1 < 2 < 0
        let a120 = a(2, &[1, 2, 0]);
        let b102 = standard_bracketing(&w(&[1, 0, 2]), &a120).unwrap();
        let mut expected = LoopElement::term(2, 2, 1, 1);
        expected.add_term((3, 3, 1), bigint(-1));
        assert_eq!(b102, expected);
    }

    #[test]
    fn grows_span_examples() {
        let d23 = {
            let mut e = LoopElement::term(2, 2, 1, 1);
            e.add_term((3, 3, 1), bigint(-1));
            e
        };
        let d13 = {
            let mut e = LoopElement::term(1, 1, 1, 1);
            e.add_term((3, 3, 1), bigint(-1));
            e
        };
        let d12 = {
            let mut e = LoopElement::term(1, 1, 1, 1);
            e.add_term((2, 2, 1), bigint(-1));
            e
        };
        assert!(grows_span(&[d23.clone()], &d13));
        assert!(!grows_span(&[d23.clone(), d13.clone()], &d12));
        assert!(!grows_span(&[], &LoopElement::zero()));
        assert!(grows_span(&[], &d12));
        // Scalar multiples never grow the span.
        assert!(!grows_span(&[d23.clone()], &d23.scale(-7)));
    }

    fn random_homogeneous(rng: &mut impl rand::Rng, size: u8) -> LoopElement {
        let t = rng.gen_range(0..4u32);
        let mut e = LoopElement::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let p = rng.gen_range(1..=size);
            let q = rng.gen_range(1..=size);
            let c = loop {
                let c = rng.gen_range(-9i64..=9);
                if c != 0 {
                    break c;
                }
            };
            e.add_term((p, q, t), bigint(c));
        }
        e
    }

    #[test]
    fn bracket_is_antisymmetric_and_jacobi() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let size = rng.gen_range(2..=5u8);
            let x = random_homogeneous(&mut rng, size);
            let y = random_homogeneous(&mut rng, size);
            let z = random_homogeneous(&mut rng, size);
            assert_eq!(bracket(&x, &y), bracket(&y, &x).neg());
            let jacobi = bracket(&x, &bracket(&y, &z))
                .add(&bracket(&y, &bracket(&z, &x)))
                .add(&bracket(&z, &bracket(&x, &y)));
            assert!(jacobi.is_zero(), "jacobi failed");
        }
    }

    #[test]
    fn serre_relations_hold_on_the_cycle() {
        // Adjacent letters: [e_i, [e_i, e_j]] = 0; non-adjacent: [e_i, e_j] = 0.
        for rank in 2..=5usize {
            let size = (rank + 1) as i64;
            for i in 0..=rank as Letter {
                for j in 0..=rank as Letter {
                    if i == j {
                        continue;
                    }
                    let ei = generator(i, rank).unwrap();
                    let ej = generator(j, rank).unwrap();
                    let diff = (i as i64 - j as i64).rem_euclid(size);
                    let adjacent = diff == 1 || diff == size - 1;
                    if adjacent {
                        assert!(bracket(&ei, &bracket(&ei, &ej)).is_zero());
                        assert!(!bracket(&ei, &ej).is_zero());
                    } else {
                        assert!(bracket(&ei, &ej).is_zero());
                    }
                }
            }
        }
        // Rank 1 has a_01 = -2: three brackets vanish, two do not.
        let e1 = generator(1, 1).unwrap();
        let e0 = generator(0, 1).unwrap();
        let ad2 = bracket(&e1, &bracket(&e1, &e0));
        assert!(!ad2.is_zero());
        assert!(bracket(&e1, &ad2).is_zero());
    }

    #[test]
    fn central_cocycle_vanishes_on_generator_brackets() {
        // The cocycle n·δ_{n,-m}(x,y) could only fire for two t⁰ factors with
        // nonzero trace pairing; positive generators never produce that.
        for rank in 1..=4usize {
            let gens: Vec<LoopElement> = (0..=rank as Letter)
                .map(|l| generator(l, rank).unwrap())
                .collect();
            for x in &gens {
                for y in &gens {
                    if x.t_power() == Some(0) && y.t_power() == Some(0) {
                        assert!(trace_pairing(x, y).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn coefficients_stay_exact_at_large_k() {
        // b[1 (10)^k] = (-2)^k E12 t^k grows fast; BigInt keeps it exact.
        let a10 = a(1, &[1, 0]);
        let mut word = vec![1u8];
        for _ in 0..80 {
            word.push(1);
            word.push(0);
        }
        let b = standard_bracketing(&Word::new(word), &a10).unwrap();
        let expected = BigInt::from(-2).pow(80);
        assert_eq!(b, LoopElement::term(1, 2, 80, expected.clone()));
        assert!(expected.abs() > BigInt::from(u64::MAX));
    }
}
