//! The order on extended positive roots induced by lexicographic comparison
//! of their standard Lyndon words: chain monotonicity, finite-type
//! convexity, the pre-convexity conjecture checker, and the rank-4
//! counterexample to imaginary-sandwich convexity.

use crate::engine::SLTable;
use crate::root_system::{
    enumerate_positive_roots, root_from_degree, AffineRoot, ExtendedRoot, RealRoot,
};
use crate::words::{compare, Letter, Word};
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrdersError {
    #[error("root {root} is beyond the table height {max_height}")]
    BeyondTable { root: String, max_height: usize },
    #[error("check needs rank {expected}, table has rank {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("check needs the standard order, table order is {0:?}")]
    NotStandardOrder(Vec<Letter>),
    #[error("table height {got} too shallow, need {need}")]
    TableTooShallow { need: usize, got: usize },
}

/// Outcome of one order property check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Increasing,
    Decreasing,
    Reproduced,
    NotReproduced,
}

/// One re-checkable data point: the roots involved, their SL words, and a
/// short note with the comparison detail.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub roots: Vec<ExtendedRoot>,
    pub words: Vec<Word>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportParams {
    pub rank: usize,
    pub order: Vec<Letter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_height: Option<usize>,
}

/// A self-contained result of one order analysis. Violations of
/// conjectural properties are findings carried in `witnesses`, never
/// assertion failures.
#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    pub property: String,
    pub params: ReportParams,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        !matches!(self.verdict, Verdict::Violated | Verdict::NotReproduced)
    }
}

fn params(t: &SLTable, delta_cap: Option<usize>, max_height: Option<usize>) -> ReportParams {
    ReportParams {
        rank: t.rank(),
        order: t.alphabet().order().to_vec(),
        delta_cap,
        max_height,
    }
}

fn word_or_err<'t>(t: &'t SLTable, root: &ExtendedRoot) -> Result<&'t Word, OrdersError> {
    t.word(root).ok_or_else(|| OrdersError::BeyondTable {
        root: root.to_string(),
        max_height: t.max_height(),
    })
}

/// The induced order: compare the SL words lexicographically, with
/// `SL((kδ, r)) := SL_r(kδ)`.
pub fn induced_compare(
    x: &ExtendedRoot,
    y: &ExtendedRoot,
    t: &SLTable,
) -> Result<Ordering, OrdersError> {
    let wx = word_or_err(t, x)?;
    let wy = word_or_err(t, y)?;
    Ok(compare(wx, wy, t.alphabet()))
}

/// Checks that the chain `α, α+δ, α+2δ, …` (up to `cap` steps) is strictly
/// monotone, in the direction given by arch membership of the minimal
/// letter: increasing iff the minimal letter lies on the arch.
pub fn chain_check(start: &RealRoot, cap: usize, t: &SLTable) -> Result<OrderReport, OrdersError> {
    let a = t.alphabet();
    let rank = t.rank();
    let roots: Vec<ExtendedRoot> = (0..=cap)
        .map(|step| ExtendedRoot::Real(RealRoot { k: start.k + step, ..*start }))
        .collect();
    let words: Vec<Word> = roots
        .iter()
        .map(|r| word_or_err(t, r).cloned())
        .collect::<Result<_, _>>()?;
    let expect_increasing = start.contains(a.min_letter(), rank);
    let mut ok = true;
    let mut detail = String::new();
    for (step, pair) in words.windows(2).enumerate() {
        let cmp = compare(&pair[0], &pair[1], a);
        let fine = if expect_increasing {
            cmp == Ordering::Less
        } else {
            cmp == Ordering::Greater
        };
        if !fine {
            ok = false;
            detail = format!(
                "step {step}: {:?} vs {:?} breaks {} order",
                pair[0],
                pair[1],
                if expect_increasing { "increasing" } else { "decreasing" }
            );
            break;
        }
    }
    let verdict = if !ok {
        Verdict::Violated
    } else if expect_increasing {
        Verdict::Increasing
    } else {
        Verdict::Decreasing
    };
    if ok {
        detail = format!(
            "chain of {start} is strictly {}",
            if expect_increasing { "increasing" } else { "decreasing" }
        );
    }
    Ok(OrderReport {
        property: "chain-monotonicity".to_string(),
        params: params(t, Some(cap), None),
        verdict,
        witnesses: vec![Witness { roots, words, detail }],
    })
}

/// Runs [`chain_check`] on every arch, reporting the first violation or all
/// chains as witnesses.
pub fn all_chains_check(t: &SLTable, cap: usize) -> Result<OrderReport, OrdersError> {
    let rank = t.rank();
    let mut witnesses = Vec::new();
    let mut verdict = Verdict::Holds;
    for root in enumerate_positive_roots(rank, rank) {
        let AffineRoot::Real(real) = root else { continue };
        let report = chain_check(&real, cap, t)?;
        if !report.passed() {
            verdict = Verdict::Violated;
        }
        witnesses.extend(report.witnesses);
    }
    Ok(OrderReport {
        property: "chain-monotonicity".to_string(),
        params: params(t, Some(cap), None),
        verdict,
        witnesses,
    })
}

/// `SL(kδ, r)` must be strictly decreasing in `k` for each fixed `r`.
pub fn imaginary_chains_check(t: &SLTable) -> Result<OrderReport, OrdersError> {
    let a = t.alphabet();
    let rank = t.rank();
    let max_k = t.max_height() / (rank + 1);
    let mut witnesses = Vec::new();
    let mut verdict = Verdict::Holds;
    for r in 1..=rank {
        let roots: Vec<ExtendedRoot> = (1..=max_k)
            .map(|k| ExtendedRoot::Imaginary { k, r })
            .collect();
        let words: Vec<Word> = roots
            .iter()
            .map(|root| word_or_err(t, root).cloned())
            .collect::<Result<_, _>>()?;
        let ok = words
            .windows(2)
            .all(|pair| compare(&pair[0], &pair[1], a) == Ordering::Greater);
        if !ok {
            verdict = Verdict::Violated;
        }
        witnesses.push(Witness {
            roots,
            words,
            detail: format!(
                "r = {r}: SL(kδ,{r}) {} in k",
                if ok { "strictly decreases" } else { "is not decreasing" }
            ),
        });
    }
    Ok(OrderReport {
        property: "imaginary-chains".to_string(),
        params: params(t, Some(max_k), None),
        verdict,
        witnesses,
    })
}

fn real_roots_up_to(t: &SLTable, max_height: usize) -> Vec<RealRoot> {
    enumerate_positive_roots(t.rank(), max_height)
        .into_iter()
        .filter_map(|r| match r {
            AffineRoot::Real(real) => Some(real),
            AffineRoot::Imaginary { .. } => None,
        })
        .collect()
}

fn sum_of(x: &RealRoot, y: &RealRoot, rank: usize) -> Option<AffineRoot> {
    let dx = x.degree(rank);
    let dy = y.degree(rank);
    let sum: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| a + b).collect();
    root_from_degree(&sum)
}

/// Checks `α < α+β < β` (or the reverse) for every unordered pair of real
/// roots with a real sum, all within `(δ_cap+1)·(n+1)` of height. This is a
/// conjecture checker: violations come back as witness findings.
pub fn preconvexity_check(t: &SLTable, delta_cap: usize) -> Result<OrderReport, OrdersError> {
    let rank = t.rank();
    let a = t.alphabet();
    let need = (delta_cap + 1) * (rank + 1);
    if t.max_height() < need {
        return Err(OrdersError::TableTooShallow { need, got: t.max_height() });
    }
    let roots = real_roots_up_to(t, need);
    let mut witnesses = Vec::new();
    for (idx, x) in roots.iter().enumerate() {
        for y in roots.iter().skip(idx + 1) {
            let Some(AffineRoot::Real(total)) = sum_of(x, y, rank) else {
                continue; // imaginary sums are outside the conjecture
            };
            if total.height(rank) > need {
                continue;
            }
            let ex = ExtendedRoot::Real(*x);
            let ey = ExtendedRoot::Real(*y);
            let es = ExtendedRoot::Real(total);
            let wx = word_or_err(t, &ex)?.clone();
            let wy = word_or_err(t, &ey)?.clone();
            let ws = word_or_err(t, &es)?.clone();
            let xs = compare(&wx, &ws, a);
            let sy = compare(&ws, &wy, a);
            let sandwiched = (xs == Ordering::Less && sy == Ordering::Less)
                || (xs == Ordering::Greater && sy == Ordering::Greater);
            if !sandwiched {
                witnesses.push(Witness {
                    roots: vec![ex, es, ey],
                    words: vec![wx, ws, wy],
                    detail: format!("{x} / {total} / {y}: sum word not between the summands"),
                });
            }
        }
    }
    let verdict = if witnesses.is_empty() { Verdict::Holds } else { Verdict::Violated };
    Ok(OrderReport {
        property: "preconvexity".to_string(),
        params: params(t, Some(delta_cap), None),
        verdict,
        witnesses,
    })
}

/// Convexity on the k = 0 band: for arches α, β whose union is again an
/// arch, `SL(α+β)` lies strictly between `SL(α)` and `SL(β)`.
pub fn finite_convexity_check(t: &SLTable) -> Result<OrderReport, OrdersError> {
    let rank = t.rank();
    let a = t.alphabet();
    if t.max_height() < rank {
        return Err(OrdersError::TableTooShallow { need: rank, got: t.max_height() });
    }
    let roots: Vec<RealRoot> = real_roots_up_to(t, rank)
        .into_iter()
        .filter(|r| r.k == 0)
        .collect();
    let mut witnesses = Vec::new();
    for (idx, x) in roots.iter().enumerate() {
        for y in roots.iter().skip(idx + 1) {
            let Some(AffineRoot::Real(total)) = sum_of(x, y, rank) else {
                continue;
            };
            if total.k != 0 {
                continue;
            }
            let wx = word_or_err(t, &ExtendedRoot::Real(*x))?.clone();
            let wy = word_or_err(t, &ExtendedRoot::Real(*y))?.clone();
            let ws = word_or_err(t, &ExtendedRoot::Real(total))?.clone();
            let xs = compare(&wx, &ws, a);
            let sy = compare(&ws, &wy, a);
            let sandwiched = (xs == Ordering::Less && sy == Ordering::Less)
                || (xs == Ordering::Greater && sy == Ordering::Greater);
            if !sandwiched {
                witnesses.push(Witness {
                    roots: vec![
                        ExtendedRoot::Real(*x),
                        ExtendedRoot::Real(total),
                        ExtendedRoot::Real(*y),
                    ],
                    words: vec![wx, ws, wy],
                    detail: format!("{x} / {total} / {y}: convexity fails"),
                });
            }
        }
    }
    let verdict = if witnesses.is_empty() { Verdict::Holds } else { Verdict::Violated };
    Ok(OrderReport {
        property: "finite-convexity".to_string(),
        params: params(t, None, Some(rank)),
        verdict,
        witnesses,
    })
}

/// For nested arches where the outer arch's minimal letter lies inside the
/// inner arch, the inner word is strictly smaller.
pub fn arch_lemma_check(t: &SLTable) -> Result<OrderReport, OrdersError> {
    let rank = t.rank();
    let a = t.alphabet();
    if t.max_height() < rank {
        return Err(OrdersError::TableTooShallow { need: rank, got: t.max_height() });
    }
    let roots: Vec<RealRoot> = real_roots_up_to(t, rank)
        .into_iter()
        .filter(|r| r.k == 0)
        .collect();
    let mut witnesses = Vec::new();
    for inner in &roots {
        for outer in &roots {
            let inner_set = inner.arch(rank);
            let outer_set = outer.arch(rank);
            if inner_set.len() >= outer_set.len()
                || !inner_set.iter().all(|l| outer_set.contains(l))
            {
                continue;
            }
            let outer_min = outer_set
                .iter()
                .copied()
                .min_by(|&x, &y| a.cmp_letters(x, y))
                .expect("nonempty arch");
            if !inner_set.contains(&outer_min) {
                continue;
            }
            let wi = word_or_err(t, &ExtendedRoot::Real(*inner))?.clone();
            let wo = word_or_err(t, &ExtendedRoot::Real(*outer))?.clone();
            if compare(&wi, &wo, a) != Ordering::Less {
                witnesses.push(Witness {
                    roots: vec![ExtendedRoot::Real(*inner), ExtendedRoot::Real(*outer)],
                    words: vec![wi, wo],
                    detail: format!("nested arches {inner} ⊂ {outer} violate SL order"),
                });
            }
        }
    }
    let verdict = if witnesses.is_empty() { Verdict::Holds } else { Verdict::Violated };
    Ok(OrderReport {
        property: "arch-lemma".to_string(),
        params: params(t, None, Some(rank)),
        verdict,
        witnesses,
    })
}

/// Reproduces the rank-4 standard-order counterexample: real roots
/// `β1 = kδ+α_4` and `β2 = mδ+α_{0→3}` summing to an imaginary degree yet
/// sandwiched strictly between `((k+m+1)δ, 4)` and `(δ, 1)`.
pub fn counterexample_report(
    t: &SLTable,
    k: usize,
    m: usize,
) -> Result<OrderReport, OrdersError> {
    let rank = t.rank();
    if rank != 4 {
        return Err(OrdersError::WrongRank { expected: 4, got: rank });
    }
    let a = t.alphabet();
    if !a.is_standard() {
        return Err(OrdersError::NotStandardOrder(a.order().to_vec()));
    }
    let k = k.max(1);
    let m = m.max(1);
    let beta1 = RealRoot { k, i: 4, j: 4 };
    let beta2 = RealRoot { k: m, i: 0, j: 3 };
    let low = ExtendedRoot::Imaginary { k: k + m, r: 4 };
    let high = ExtendedRoot::Imaginary { k: 1, r: 1 };
    let chain = [
        low,
        ExtendedRoot::Real(beta2),
        ExtendedRoot::Real(beta1),
        high,
    ];
    let words: Vec<Word> = chain
        .iter()
        .map(|root| word_or_err(t, root).cloned())
        .collect::<Result<_, _>>()?;

    // Expected words, straight from the closed forms.
    let ten423: &[Letter] = &[1, 0, 4, 2, 3];
    let mut expected_low: Vec<Letter> = vec![1, 2, 3, 4];
    for _ in 0..k + m - 1 {
        expected_low.extend_from_slice(&[1, 0, 2, 3, 4]);
    }
    expected_low.push(0);
    let mut expected_b2: Vec<Letter> = vec![1, 0, 2, 3];
    for _ in 0..m {
        expected_b2.extend_from_slice(ten423);
    }
    let mut expected_b1: Vec<Letter> = Vec::new();
    for _ in 0..k {
        expected_b1.extend_from_slice(ten423);
    }
    expected_b1.push(4);
    let expected: Vec<Word> = vec![
        Word::new(expected_low),
        Word::new(expected_b2),
        Word::new(expected_b1),
        Word::new(vec![1, 0, 4, 3, 2]),
    ];

    let words_match = words == expected;
    let chain_holds = words
        .windows(2)
        .all(|pair| compare(&pair[0], &pair[1], a) == Ordering::Less);
    // Degree bookkeeping: β1 + β2 = (k + m + 1)δ.
    let sum = sum_of(&beta1, &beta2, rank);
    let sum_imaginary = sum == Some(AffineRoot::Imaginary { k: k + m + 1 });

    let reproduced = words_match && chain_holds && sum_imaginary;
    let word_chain = words
        .iter()
        .map(|w| w.compact(rank))
        .collect::<Vec<_>>()
        .join(" < ");
    let detail = format!(
        "({}δ,4) < {beta2} < {beta1} < (δ,1) with β1+β2 = {}δ; SL words {word_chain}; words {}, chain {}, degrees {}",
        k + m,
        k + m + 1,
        if words_match { "match" } else { "differ" },
        if chain_holds { "verified" } else { "broken" },
        if sum_imaginary { "verified" } else { "broken" },
    );
    Ok(OrderReport {
        property: "imaginary-sandwich-counterexample".to_string(),
        params: params(t, None, Some(t.max_height())),
        verdict: if reproduced { Verdict::Reproduced } else { Verdict::NotReproduced },
        witnesses: vec![Witness { roots: chain.to_vec(), words, detail }],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::compute_table;
    use crate::root_system::OrderedAlphabet;

    fn a(rank: usize, order: &[Letter]) -> OrderedAlphabet {
        OrderedAlphabet::new(rank, order.to_vec()).unwrap()
    }

    #[test]
    fn rank_one_order_chain() {
        // α1 < δ+α1 < 2δ < δ < δ+α0 < α0
        let t = compute_table(&a(1, &[1, 0]), 8).unwrap();
        let chain = [
            ExtendedRoot::Real(RealRoot { k: 0, i: 1, j: 1 }),
            ExtendedRoot::Real(RealRoot { k: 1, i: 1, j: 1 }),
            ExtendedRoot::Imaginary { k: 2, r: 1 },
            ExtendedRoot::Imaginary { k: 1, r: 1 },
            ExtendedRoot::Real(RealRoot { k: 1, i: 0, j: 0 }),
            ExtendedRoot::Real(RealRoot { k: 0, i: 0, j: 0 }),
        ];
        for pair in chain.windows(2) {
            assert_eq!(
                induced_compare(&pair[0], &pair[1], &t).unwrap(),
                Ordering::Less,
                "{} vs {}",
                pair[0],
                pair[1]
            );
        }
        let x = ExtendedRoot::Real(RealRoot { k: 1, i: 1, j: 1 });
        assert_eq!(induced_compare(&x, &x, &t).unwrap(), Ordering::Equal);
    }

    #[test]
    fn beyond_table_is_an_error() {
        let t = compute_table(&a(1, &[1, 0]), 4).unwrap();
        let far = ExtendedRoot::Imaginary { k: 9, r: 1 };
        assert!(matches!(
            induced_compare(&far, &far, &t),
            Err(OrdersError::BeyondTable { .. })
        ));
    }

    #[test]
    fn chain_examples() {
        let t = compute_table(&a(1, &[1, 0]), 13).unwrap();
        let report = chain_check(&RealRoot { k: 0, i: 1, j: 1 }, 5, &t).unwrap();
        assert_eq!(report.verdict, Verdict::Increasing);

        let t = compute_table(&a(2, &[1, 2, 0]), 18).unwrap();
        let report = chain_check(&RealRoot { k: 0, i: 2, j: 2 }, 5, &t).unwrap();
        assert_eq!(report.verdict, Verdict::Decreasing);
        let report = chain_check(&RealRoot { k: 0, i: 0, j: 1 }, 5, &t).unwrap();
        assert_eq!(report.verdict, Verdict::Increasing);

        let report = all_chains_check(&t, 4).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn imaginary_chains_decrease() {
        let t = compute_table(&a(2, &[2, 0, 1]), 15).unwrap();
        let report = imaginary_chains_check(&t).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn preconvexity_small() {
        let t = compute_table(&a(2, &[1, 2, 0]), 12).unwrap();
        let report = preconvexity_check(&t, 3).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn finite_convexity_small() {
        let t = compute_table(&a(2, &[1, 2, 0]), 3).unwrap();
        let report = finite_convexity_check(&t).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);

        for order in [vec![1u8, 2, 3, 4, 0], vec![3u8, 0, 2, 4, 1]] {
            let t = compute_table(&a(4, &order), 5).unwrap();
            let report = finite_convexity_check(&t).unwrap();
            assert_eq!(report.verdict, Verdict::Holds, "order {order:?}");
        }
    }

    #[test]
    fn arch_lemma_small() {
        let t = compute_table(&a(3, &[2, 0, 3, 1]), 4).unwrap();
        let report = arch_lemma_check(&t).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn counterexample_reproduces() {
        let t = compute_table(&OrderedAlphabet::standard(4), 15).unwrap();
        let report = counterexample_report(&t, 1, 1).unwrap();
        assert_eq!(report.verdict, Verdict::Reproduced);
        let words: Vec<String> = report.witnesses[0]
            .words
            .iter()
            .map(|w| w.compact(4))
            .collect();
        assert_eq!(words, vec!["1234102340", "102310423", "104234", "10432"]);
    }

    #[test]
    fn counterexample_higher_k_m() {
        let t = compute_table(&OrderedAlphabet::standard(4), 21).unwrap();
        let report = counterexample_report(&t, 2, 1).unwrap();
        assert_eq!(report.verdict, Verdict::Reproduced);
    }

    #[test]
    fn all_words_in_a_table_are_distinct() {
        // The induced order is strict on any finite slice: distinct extended
        // roots carry distinct words.
        for (rank, order) in [(2usize, vec![1u8, 2, 0]), (3, vec![2, 1, 0, 3])] {
            let t = compute_table(&a(rank, &order), 3 * (rank + 1)).unwrap();
            let mut seen = std::collections::HashSet::new();
            for root in t.extended_roots() {
                let w = t.word(&root).unwrap();
                assert!(seen.insert(w.clone()), "duplicate word {w:?} at {root}");
            }
        }
    }
}
