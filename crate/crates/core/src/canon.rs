//! Canonical labeling of relational structures.
//!
//! The main path is iterated color refinement (each vertex is recolored by
//! the multiset of its incident tuples, recording the positions it occupies
//! and the colors of the other entries) followed by an
//! individualization-refinement search. The canonical form is the smallest
//! relabeled structure over the leaves of the search tree. Automorphisms
//! discovered at equal leaves prune sibling branches lying in the same orbit.
//!
//! Refinement hashes signatures into `u64`. Collisions can only merge color
//! classes, which keeps every step equivariant, so the canonical form stays
//! exact; it merely costs a larger search.
//!
//! [`canonical_code_by_sweep`] is the brute-force alternative (minimum over
//! all permutations) used as a cross-check for small domains.

use std::fmt;

use crate::error::{Error, Result};
use crate::structure::{RelStruct, Relation};

/// An opaque isomorphism invariant: equal codes iff isomorphic structures
/// (for a fixed signature).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn encode(r: &RelStruct) -> Self {
        let wide = r.domain_size() > 255;
        let mut out = Vec::new();
        push_varint(&mut out, r.domain_size() as u64);
        for rel in r.relations() {
            push_varint(&mut out, rel.len() as u64);
            for t in rel.tuples() {
                for &x in t {
                    if wide {
                        out.extend_from_slice(&x.to_le_bytes());
                    } else {
                        out.push(x as u8);
                    }
                }
            }
        }
        CanonicalCode(out)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

fn push_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

pub fn canonical_code(r: &RelStruct) -> CanonicalCode {
    canonical_form(r).0
}

/// The canonical code together with the canonical representative (the
/// structure relabeled by the canonical labeling).
pub fn canonical_form(r: &RelStruct) -> (CanonicalCode, RelStruct) {
    let labeling = canonical_labeling(r);
    let form = r.permute(&labeling);
    (CanonicalCode::encode(&form), form)
}

/// Canonical labeling: `labeling[v]` is the new label of `v`.
pub fn canonical_labeling(r: &RelStruct) -> Vec<usize> {
    let n = r.domain_size();
    if n <= 1 {
        return (0..n).collect();
    }
    let mut search = Search::new(r);
    let init = search.initial_coloring();
    let colors = search.refine(init);
    search.descend(colors, &mut Vec::new());
    let best = search.best.expect("search visits at least one leaf");
    best.labeling.iter().map(|&c| c as usize).collect()
}

/// Minimum relabeling over every permutation of the domain. Exponential;
/// only for `domain_size <= 8`.
pub fn canonical_code_by_sweep(r: &RelStruct) -> Result<CanonicalCode> {
    let n = r.domain_size();
    if n > 8 {
        return Err(Error::DomainTooLarge(n));
    }
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut best = leaf_key(r, &perm);
    let mut best_perm = perm.clone();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let key = leaf_key(r, &perm);
            if key < best {
                best = key;
                best_perm.clone_from(&perm);
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let labeling: Vec<usize> = best_perm.iter().map(|&x| x as usize).collect();
    Ok(CanonicalCode::encode(&r.permute(&labeling)))
}

/// Relabeled relations, each sorted, concatenated. For a fixed structure the
/// relation sizes are fixed, so lexicographic order on this key is a total
/// order on relabelings.
fn leaf_key(r: &RelStruct, labeling: &[u32]) -> Vec<u32> {
    let mut key = Vec::new();
    for rel in r.relations() {
        let a = rel.arity();
        let mapped: Vec<u32> = rel.flat().iter().map(|&x| labeling[x as usize]).collect();
        let mut idx: Vec<usize> = (0..rel.len()).collect();
        idx.sort_unstable_by(|&p, &q| mapped[p * a..(p + 1) * a].cmp(&mapped[q * a..(q + 1) * a]));
        for p in idx {
            key.extend_from_slice(&mapped[p * a..(p + 1) * a]);
        }
    }
    key
}

fn mix(mut z: u64) -> u64 {
    // splitmix64 finalizer
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Leaf {
    key: Vec<u32>,
    labeling: Vec<u32>,
}

struct Search<'a> {
    r: &'a RelStruct,
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(r: &'a RelStruct) -> Self {
        Search {
            r,
            n: r.domain_size(),
            first: None,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn initial_coloring(&self) -> Vec<u32> {
        vec![0; self.n]
    }

    /// Dense ranks of `keys`, preserving key order.
    fn ranks(keys: &[(u32, u64)]) -> (Vec<u32>, usize) {
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_unstable_by_key(|&v| keys[v]);
        let mut colors = vec![0u32; keys.len()];
        let mut next = 0u32;
        for (i, &v) in order.iter().enumerate() {
            if i > 0 && keys[v] != keys[order[i - 1]] {
                next += 1;
            }
            colors[v] = next;
        }
        let count = if keys.is_empty() {
            0
        } else {
            next as usize + 1
        };
        (colors, count)
    }

    fn count_colors(colors: &[u32]) -> usize {
        colors.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut classes = Self::count_colors(&colors);
        loop {
            if classes == self.n {
                return colors;
            }
            let mut sig = vec![0u64; self.n];
            for (s, rel) in self.r.relations().iter().enumerate() {
                self.accumulate(s, rel, &colors, &mut sig);
            }
            let keys: Vec<(u32, u64)> = colors.iter().zip(&sig).map(|(&c, &h)| (c, h)).collect();
            let (next, count) = Self::ranks(&keys);
            if count == classes {
                return colors;
            }
            colors = next;
            classes = count;
        }
    }

    fn accumulate(&self, symbol: usize, rel: &Relation, colors: &[u32], sig: &mut [u64]) {
        let a = rel.arity();
        for t in rel.tuples() {
            let mut h = mix(symbol as u64 ^ ((a as u64) << 32));
            for &x in t {
                h = mix(h ^ u64::from(colors[x as usize]));
            }
            for (i, &v) in t.iter().enumerate() {
                // record each occupied vertex once, with its position mask
                if t[..i].contains(&v) {
                    continue;
                }
                let mask = t
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| x == v)
                    .fold(0u64, |m, (j, _)| m | 1 << j);
                sig[v as usize] = sig[v as usize].wrapping_add(mix(h ^ (mask << 48)));
            }
        }
    }

    fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
        let keys: Vec<(u32, u64)> = colors
            .iter()
            .enumerate()
            .map(|(x, &c)| (c, u64::from(x != v)))
            .collect();
        Self::ranks(&keys).0
    }

    fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
        let k = Self::count_colors(colors);
        let mut sizes = vec![0usize; k];
        for &c in colors {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1)? as u32;
        Some(
            colors
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == target)
                .map(|(v, _)| v)
                .collect(),
        )
    }

    fn descend(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) {
        let Some(cell) = Self::target_cell(&colors) else {
            self.visit_leaf(colors);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit_as_explored(v, &explored, prefix) {
                continue;
            }
            let next = self.refine(Self::individualize(&colors, v));
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Orbit test under the group generated by the known automorphisms that
    /// fix `prefix` pointwise.
    fn same_orbit_as_explored(&self, v: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for g in &self.automorphisms {
            if prefix.iter().any(|&p| g[p] as usize != p) {
                continue;
            }
            any = true;
            for (x, &gx) in g.iter().enumerate().take(self.n) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gx as usize));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }

    fn visit_leaf(&mut self, colors: Vec<u32>) {
        let key = leaf_key(self.r, &colors);
        let leaf = Leaf {
            key,
            labeling: colors,
        };
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.key == leaf.key {
                // γ = reference⁻¹ ∘ leaf is an automorphism
                let mut inv = vec![0u32; self.n];
                for (v, &c) in reference.labeling.iter().enumerate() {
                    inv[c as usize] = v as u32;
                }
                let g: Vec<u32> = leaf.labeling.iter().map(|&c| inv[c as usize]).collect();
                if g.iter().enumerate().any(|(v, &w)| v as u32 != w) {
                    self.automorphisms.push(g);
                }
                return;
            }
        }
        let better = self.best.as_ref().is_none_or(|b| leaf.key < b.key);
        if self.first.is_none() {
            self.first = Some(Leaf {
                key: leaf.key.clone(),
                labeling: leaf.labeling.clone(),
            });
        }
        if better {
            self.best = Some(leaf);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Signature;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> RelStruct {
        let mut arcs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if rng.gen_bool(p) {
                    arcs.push((a, b));
                }
            }
        }
        RelStruct::digraph(n, &arcs)
    }

    fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            p.swap(i, j);
        }
        p
    }

    #[test]
    fn k3_relabelings_share_a_code() {
        let k3 = RelStruct::graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let c = canonical_code(&k3);
        for p in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            assert_eq!(canonical_code(&k3.permute(&p)), c);
        }
    }

    #[test]
    fn cycle_and_transitive_tournament_differ() {
        let c3 = RelStruct::digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        let t3 = RelStruct::digraph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_ne!(canonical_code(&c3), canonical_code(&t3));
    }

    #[test]
    fn empty_structure_code_is_constant() {
        let e = RelStruct::empty(Signature::binary(), 0);
        assert_eq!(canonical_code(&e).as_bytes(), &[0u8, 0u8]);
    }

    #[test]
    fn codes_are_invariant_under_random_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(0..=9);
            let g = random_digraph(&mut rng, n, 0.4);
            let p = random_perm(&mut rng, n);
            assert_eq!(canonical_code(&g), canonical_code(&g.permute(&p)));
        }
    }

    #[test]
    fn refinement_and_sweep_induce_the_same_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let graphs: Vec<RelStruct> = (0..120).map(|_| random_digraph(&mut rng, 5, 0.3)).collect();
        for a in &graphs {
            for b in graphs.iter().take(40) {
                let refine_eq = canonical_code(a) == canonical_code(b);
                let sweep_eq =
                    canonical_code_by_sweep(a).unwrap() == canonical_code_by_sweep(b).unwrap();
                assert_eq!(refine_eq, sweep_eq);
            }
        }
    }

    #[test]
    fn highly_symmetric_structures_finish() {
        // empty and complete graphs, disjoint unions of edges
        let empty = RelStruct::digraph(14, &[]);
        let canon = canonical_form(&empty).1;
        assert_eq!(canon, empty);
        let mut edges = Vec::new();
        for i in 0..7 {
            edges.push((2 * i, 2 * i + 1));
        }
        let m = RelStruct::graph(14, &edges);
        let p: Vec<usize> = (0..14).rev().collect();
        assert_eq!(canonical_code(&m), canonical_code(&m.permute(&p)));
    }

    #[test]
    fn ternary_relations_are_handled() {
        let sig = Signature::new(vec![3, 1]).unwrap();
        let r = RelStruct::new(
            sig,
            4,
            vec![vec![vec![0, 1, 2], vec![1, 1, 3]], vec![vec![2]]],
        )
        .unwrap();
        let code = canonical_code(&r);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let p = random_perm(&mut rng, 4);
            assert_eq!(canonical_code(&r.permute(&p)), code);
        }
        assert_eq!(
            canonical_code_by_sweep(&r).unwrap(),
            canonical_code_by_sweep(&r.permute(&[3, 2, 1, 0])).unwrap()
        );
    }

    #[test]
    fn sweep_rejects_large_domains() {
        let r = RelStruct::digraph(9, &[]);
        assert!(matches!(
            canonical_code_by_sweep(&r),
            Err(Error::DomainTooLarge(9))
        ));
    }
}
