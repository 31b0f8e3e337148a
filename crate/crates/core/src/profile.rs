//! Profiles of finite and presented structures and the universal checks on
//! them.

use std::collections::{HashMap, HashSet};

use crate::canon::CanonicalCode;
use crate::error::{Error, Result};
use crate::presentation::{BlockSize, MultichainPresentation, Presentation, Source};
use crate::structure::RelStruct;
use crate::subsets::{binomial, KSubsets};

/// Exact values `φ(0..=N)` and where they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileSequence {
    pub values: Vec<u64>,
    pub source: String,
    pub infinite_source: bool,
}

impl ProfileSequence {
    pub fn new(values: Vec<u64>, source: impl Into<String>, infinite_source: bool) -> Self {
        ProfileSequence {
            values,
            source: source.into(),
            infinite_source,
        }
    }

    /// The window bound `N`.
    pub fn window(&self) -> usize {
        self.values.len().saturating_sub(1)
    }
}

/// Distinct types among the `n`-element restrictions of a finite structure.
pub fn profile_finite(r: &RelStruct, n: usize) -> Result<u64> {
    let m = r.domain_size();
    if n > m {
        return Err(Error::SizeOutOfRange { n, max: m });
    }
    let mut memo = HashMap::new();
    finite_level(r, n, &mut memo)
}

/// `φ(0..=max_n)` for a finite structure, sharing the restriction memo.
pub fn profile_finite_upto(r: &RelStruct, max_n: usize) -> Result<Vec<u64>> {
    let m = r.domain_size();
    if max_n > m {
        return Err(Error::SizeOutOfRange { n: max_n, max: m });
    }
    let mut memo = HashMap::new();
    (0..=max_n).map(|n| finite_level(r, n, &mut memo)).collect()
}

// Restrictions of sparse structures repeat literally far more often than
// they repeat up to isomorphism, so canonical codes are cached per literal
// restriction.
fn finite_level(
    r: &RelStruct,
    n: usize,
    memo: &mut HashMap<RelStruct, CanonicalCode>,
) -> Result<u64> {
    let m = r.domain_size();
    if m >= 64 {
        return Err(Error::DomainTooLarge(m));
    }
    let mut codes = HashSet::new();
    for mask in KSubsets::new(m, n) {
        let sub = r.restrict_mask(mask);
        let code = match memo.get(&sub) {
            Some(c) => c.clone(),
            None => {
                let c = sub.canonical_code();
                memo.insert(sub, c.clone());
                c
            }
        };
        codes.insert(code);
    }
    Ok(codes.len() as u64)
}

pub fn profile_presented(p: &Presentation, n: usize) -> u64 {
    p.enumerate_age(n).len() as u64
}

pub fn profile_sequence(source: &Source, label: &str, max_n: usize) -> Result<ProfileSequence> {
    let values = match source {
        Source::Finite(r) => profile_finite_upto(r, max_n)?,
        Source::Presented(p) => (0..=max_n).map(|n| profile_presented(p, n)).collect(),
    };
    Ok(ProfileSequence::new(values, label, source.is_infinite()))
}

/// All `n < N` with `φ(n) > (n+1)·φ(n+1)`.
pub fn check_basic_inequality(seq: &ProfileSequence) -> Vec<usize> {
    seq.values
        .windows(2)
        .enumerate()
        .filter(|(n, w)| u128::from(w[0]) > (*n as u128 + 1) * u128::from(w[1]))
        .map(|(n, _)| n)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonotoneReport {
    /// Finite structures have profiles that eventually drop to zero.
    NotApplicable,
    /// Every `n` with `φ(n) > φ(n+1)`.
    Checked(Vec<usize>),
}

impl MonotoneReport {
    pub fn passed(&self) -> bool {
        match self {
            MonotoneReport::NotApplicable => true,
            MonotoneReport::Checked(v) => v.is_empty(),
        }
    }
}

pub fn check_monotone(seq: &ProfileSequence, infinite_source: bool) -> MonotoneReport {
    if !infinite_source {
        return MonotoneReport::NotApplicable;
    }
    MonotoneReport::Checked(
        seq.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(n, _)| n)
            .collect(),
    )
}

/// `φ(n) ≤ φ(n+k)` for a structure with at least `2n+k` elements.
pub fn check_linalg_inequality(r: &RelStruct, n: usize, k: usize) -> Result<bool> {
    let m = r.domain_size();
    if m < 2 * n + k {
        return Err(Error::HypothesisUnmet(format!(
            "domain size {m} is below 2n+k = {}",
            2 * n + k
        )));
    }
    let mut memo = HashMap::new();
    Ok(finite_level(r, n, &mut memo)? <= finite_level(r, n + k, &mut memo)?)
}

/// `φ(n) ≤ C(n+k, k)` over the whole window.
pub fn check_binomial_bound(seq: &ProfileSequence, k: usize) -> bool {
    seq.values
        .iter()
        .enumerate()
        .all(|(n, &v)| u128::from(v) <= binomial((n + k) as u64, k as u64))
}

/// `φ(n) ≤ 2^r · C(n+k−1, k−1)` over the whole window. With no infinite
/// block (`k = 0`) the bound is the number of subsets, `2^r`.
pub fn check_eq10_bound(seq: &ProfileSequence, r: usize, k: usize) -> bool {
    let scale = 1u128 << r.min(100);
    seq.values.iter().enumerate().all(|(n, &v)| {
        let bound = if k == 0 {
            scale
        } else {
            scale.saturating_mul(binomial((n + k - 1) as u64, (k - 1) as u64))
        };
        u128::from(v) <= bound
    })
}

/// Which elements of a presentation a kernel probe removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementClass {
    /// An element of the finite part of a multichain presentation.
    Finite(usize),
    /// One element of a slice of a multichain presentation.
    Slice(usize),
    /// One vertex of a block of a lexicographic sum.
    Block(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelVerdict {
    /// Removing the element changes the age at the given size.
    InKernel { witness_size: usize },
    /// No change seen within the window; this is not a proof of absence.
    Undetected,
}

/// Compares the age before and after deleting one element of the given
/// class, for sizes up to `window`.
pub fn kernel_probe(p: &Presentation, class: ElementClass, window: usize) -> Result<KernelVerdict> {
    let differs_at = |reduced: &dyn Fn(usize) -> Vec<CanonicalCode>| -> Option<usize> {
        (0..=window).find(|&n| {
            let full: Vec<CanonicalCode> = p.enumerate_age(n).into_keys().collect();
            full != reduced(n)
        })
    };
    let witness = match (p, class) {
        (Presentation::Multichain(mc), ElementClass::Finite(a)) => {
            let smaller = mc.without_finite(a)?;
            differs_at(&|n| smaller.enumerate_age(n).into_keys().collect())
        }
        (Presentation::Multichain(mc), ElementClass::Slice(x)) => {
            if x >= mc.slice_count() {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    domain_size: mc.slice_count(),
                });
            }
            differs_at(&|n| slice_deleted_age(mc, x, n))
        }
        (Presentation::LexSum(ls), ElementClass::Block(i)) => {
            if i >= ls.block_count() {
                return Err(Error::ElementOutOfRange {
                    element: i,
                    domain_size: ls.block_count(),
                });
            }
            let size = match ls.blocks()[i].size {
                BlockSize::Finite(s) => BlockSize::Finite(s - 1),
                BlockSize::Omega => BlockSize::Omega,
            };
            let smaller = ls.with_block_size(i, size);
            differs_at(&|n| smaller.enumerate_age(n).into_keys().collect())
        }
        _ => {
            return Err(Error::InvalidPresentation(format!(
                "element class {class:?} does not apply to this presentation"
            )))
        }
    };
    Ok(match witness {
        Some(witness_size) => KernelVerdict::InKernel { witness_size },
        None => KernelVerdict::Undetected,
    })
}

// Any n-element subset of the structure minus (x, 0) can be slid onto
// positions 1..=n, so the truncation to n+1 positions minus (x, 0) has
// the same n-element types.
fn slice_deleted_age(mc: &MultichainPresentation, x: usize, n: usize) -> Vec<CanonicalCode> {
    let (t, origins) = mc.truncation(n + 1);
    let keep: Vec<usize> = (0..t.domain_size())
        .filter(|&i| {
            origins[i]
                != crate::presentation::Origin::Slice {
                    slice: x,
                    position: 0,
                }
        })
        .collect();
    let reduced = t
        .restrict(&keep)
        .expect("kept elements are distinct and in range");
    let mut codes: Vec<CanonicalCode> = if n > reduced.domain_size() {
        Vec::new()
    } else {
        let mut seen = HashSet::new();
        for mask in KSubsets::new(reduced.domain_size(), n) {
            seen.insert(reduced.restrict_mask(mask).canonical_code());
        }
        seen.into_iter().collect()
    };
    codes.sort();
    codes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures::{self, path};
    use crate::presentation::LexSumPresentation;

    #[test]
    fn clique_pairs() {
        assert_eq!(profile_finite(&fixtures::clique(4), 2).unwrap(), 1);
        assert!(matches!(
            profile_finite(&fixtures::clique(4), 5),
            Err(Error::SizeOutOfRange { .. })
        ));
    }

    #[test]
    fn path_pairs() {
        assert_eq!(profile_finite(&path(6), 2).unwrap(), 2);
    }

    #[test]
    fn empty_structure_profile() {
        let r = RelStruct::empty(crate::structure::Signature::binary(), 0);
        let seq = profile_sequence(&Source::Finite(r), "empty", 0).unwrap();
        assert_eq!(seq.values, vec![1]);
    }

    #[test]
    fn basic_inequality_reports_violations() {
        let bad = ProfileSequence::new(vec![3, 1], "bad", false);
        assert_eq!(check_basic_inequality(&bad), vec![0]);
        let single = ProfileSequence::new(vec![1], "one", false);
        assert!(check_basic_inequality(&single).is_empty());
    }

    #[test]
    fn monotone_only_for_infinite_sources() {
        let k4 = profile_sequence(&Source::Finite(fixtures::clique(4)), "K4", 4).unwrap();
        assert_eq!(k4.values, vec![1, 1, 1, 1, 1]);
        assert_eq!(check_monotone(&k4, false), MonotoneReport::NotApplicable);
        let dip = ProfileSequence::new(vec![1, 2, 1], "dip", true);
        assert_eq!(check_monotone(&dip, true), MonotoneReport::Checked(vec![1]));
    }

    #[test]
    fn linalg_needs_enough_elements() {
        assert!(check_linalg_inequality(&path(7), 2, 2).unwrap());
        assert!(check_linalg_inequality(&path(7), 0, 3).unwrap());
        assert!(matches!(
            check_linalg_inequality(&path(7), 3, 2),
            Err(Error::HypothesisUnmet(_))
        ));
    }

    #[test]
    fn bounds() {
        let two = ProfileSequence::new((0..=8).map(|n| n / 2 + 1).collect(), "two", true);
        assert!(check_binomial_bound(&two, 1));
        assert!(check_eq10_bound(&two, 0, 2));
        assert!(!check_eq10_bound(&two, 0, 1));
        let one = ProfileSequence::new(vec![1; 9], "one", true);
        assert!(check_binomial_bound(&one, 0));
        assert!(check_eq10_bound(&one, 0, 1));
    }

    #[test]
    fn kernel_probe_examples() {
        let t2 = Presentation::LexSum(fixtures::tournament_lexsum("T2").unwrap());
        assert!(matches!(
            kernel_probe(&t2, ElementClass::Block(2), 4).unwrap(),
            KernelVerdict::InKernel { .. }
        ));
        let t2_mc = Presentation::Multichain(fixtures::tournament_fixture("T2").unwrap());
        assert!(matches!(
            kernel_probe(&t2_mc, ElementClass::Finite(0), 4).unwrap(),
            KernelVerdict::InKernel { witness_size: 3 }
        ));
        let chain = Presentation::Multichain(fixtures::colored_dense_chain(2).unwrap());
        for x in 0..2 {
            assert_eq!(
                kernel_probe(&chain, ElementClass::Slice(x), 4).unwrap(),
                KernelVerdict::Undetected
            );
        }
        let twins = Presentation::LexSum(
            LexSumPresentation::new(
                RelStruct::digraph(2, &[(0, 1), (1, 0)]),
                vec![
                    crate::presentation::LexBlock::finite(
                        crate::presentation::BlockKind::Clique,
                        2,
                    ),
                    crate::presentation::LexBlock::omega(crate::presentation::BlockKind::Clique),
                ],
            )
            .unwrap(),
        );
        assert_eq!(
            kernel_probe(&twins, ElementClass::Block(0), 5).unwrap(),
            KernelVerdict::Undetected
        );
        assert!(kernel_probe(&twins, ElementClass::Finite(0), 5).is_err());
    }
}
