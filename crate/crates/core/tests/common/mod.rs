//! Oracles and fixture helpers shared by the integration tests. Nothing
//! here calls into the library's counting code.

#![allow(dead_code)]

use ageprofile::presentation::fixtures::{builtin, presentation_fixtures};
use ageprofile::{Presentation, RelStruct, Source};

/// All partitions of `n` into at most `max_parts` parts, parts in
/// non-increasing order.
pub fn partitions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(
        n: usize,
        largest: usize,
        parts_left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=largest.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// All compositions of `n` into at most `max_parts` positive parts.
pub fn compositions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in 1..=n {
            cur.push(p);
            rec(n - p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Coefficients `0..len` of `p / q` by long division; `q[0]` must be 1.
pub fn series_quotient(p: &[i64], q: &[i64], len: usize) -> Vec<i64> {
    assert_eq!(q[0], 1);
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let mut v = p.get(n).copied().unwrap_or(0);
        for i in 1..q.len().min(n + 1) {
            v -= q[i] * out[n - i];
        }
        out.push(v);
    }
    out
}

pub fn poly_product(factors: &[&[i64]]) -> Vec<i64> {
    factors.iter().fold(vec![1], |acc, f| {
        let mut r = vec![0; acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        r
    })
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &RelStruct, b: &RelStruct) -> bool {
    if a.domain_size() != b.domain_size() || a.signature() != b.signature() {
        return false;
    }
    let m = a.domain_size();
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        if &a.permute(&perm) == b {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of isomorphism classes among the `n`-subsets, by pairwise
/// brute-force isomorphism.
pub fn brute_profile(r: &RelStruct, n: usize) -> u64 {
    let m = r.domain_size();
    let mut reps: Vec<RelStruct> = Vec::new();
    for mask in 0u64..1 << m {
        if mask.count_ones() as usize != n {
            continue;
        }
        let s = r.restrict_mask(mask);
        if !reps.iter().any(|t| brute_isomorphic(t, &s)) {
            reps.push(s);
        }
    }
    reps.len() as u64
}

/// Largest truncation of a presented source with at most `max` elements,
/// taken with at least one position per infinite block.
pub fn small_truncation(p: &Presentation, max: usize) -> Option<RelStruct> {
    let mut best = None;
    for t in 1..=max {
        let r = match p {
            Presentation::LexSum(l) => l.truncation(t).0,
            Presentation::Multichain(mc) => mc.truncation(t).0,
        };
        if r.domain_size() > max {
            break;
        }
        best = Some(r);
    }
    best
}

/// Finite builtins plus small truncations of every presentation fixture,
/// all with at most `max` elements.
pub fn small_structures(max: usize) -> Vec<(String, RelStruct)> {
    let mut out = Vec::new();
    for name in [
        "path:7",
        "clique:6",
        "independent:5",
        "acyclic:7",
        "c3",
        "clique-independent:3",
        "chain-poset:5",
    ] {
        if let Source::Finite(r) = builtin(name).unwrap().source {
            if r.domain_size() <= max {
                out.push((name.to_string(), r));
            }
        }
    }
    for f in presentation_fixtures() {
        if let Some(r) = small_truncation(f.presentation().unwrap(), max) {
            out.push((format!("{} (truncated)", f.name), r));
        }
    }
    out
}
