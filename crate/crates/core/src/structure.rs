//! Finite relational structures over the domain `{0..m}`.
//!
//! Relations are stored as sorted, deduplicated tuple sets flattened into a
//! single buffer per symbol, so equality and hashing are literal (not up to
//! isomorphism). Isomorphism questions go through [`crate::canon`].

use std::fmt;

use crate::canon::{self, CanonicalCode};
use crate::error::{Error, Result};

/// The arity list of a relational signature, one entry per symbol.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if let Some(symbol) = arities.iter().position(|&a| a == 0) {
            return Err(Error::ZeroArity { symbol });
        }
        Ok(Signature(arities))
    }

    /// A single binary relation: directed graphs, tournaments, orders.
    pub fn binary() -> Self {
        Signature(vec![2])
    }

    pub fn empty() -> Self {
        Signature(Vec::new())
    }

    pub fn arities(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_single_binary(&self) -> bool {
        self.0 == [2]
    }
}

/// One relation: a sorted set of `arity`-tuples, flattened.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    arity: usize,
    data: Vec<u32>,
}

impl Relation {
    /// Builds a relation from a flattened tuple buffer, sorting and
    /// deduplicating. `data.len()` must be a multiple of `arity`.
    pub(crate) fn from_flat(arity: usize, data: Vec<u32>) -> Self {
        debug_assert!(arity > 0 && data.len() % arity == 0);
        let mut tuples: Vec<&[u32]> = data.chunks_exact(arity).collect();
        tuples.sort_unstable();
        tuples.dedup();
        let data = tuples.concat();
        Relation { arity, data }
    }

    /// Assumes `data` is already sorted and deduplicated.
    pub(crate) fn from_sorted_flat(arity: usize, data: Vec<u32>) -> Self {
        Relation { arity, data }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn tuples(&self) -> std::slice::ChunksExact<'_, u32> {
        self.data.chunks_exact(self.arity)
    }

    pub(crate) fn flat(&self) -> &[u32] {
        &self.data
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        let n = self.len();
        let (mut lo, mut hi) = (0usize, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let t = &self.data[mid * self.arity..(mid + 1) * self.arity];
            match t.cmp(tuple) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// A finite relational structure `(E, (ρ_i))` with `E = {0..domain_size}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelStruct {
    signature: Signature,
    domain_size: usize,
    relations: Vec<Relation>,
}

impl RelStruct {
    /// Validating constructor: one tuple list per symbol, each tuple of the
    /// symbol's arity with entries below `domain_size`.
    pub fn new(
        signature: Signature,
        domain_size: usize,
        relations: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if relations.len() != signature.len() {
            return Err(Error::RelationCount {
                expected: signature.len(),
                found: relations.len(),
            });
        }
        let mut out = Vec::with_capacity(relations.len());
        for (symbol, (tuples, &arity)) in relations.iter().zip(signature.arities()).enumerate() {
            let mut flat = Vec::with_capacity(tuples.len() * arity);
            for t in tuples {
                if t.len() != arity {
                    return Err(Error::TupleArity {
                        symbol,
                        expected: arity,
                        found: t.len(),
                    });
                }
                for &x in t {
                    if x >= domain_size {
                        return Err(Error::ElementOutOfRange {
                            element: x,
                            domain_size,
                        });
                    }
                    flat.push(x as u32);
                }
            }
            out.push(Relation::from_flat(arity, flat));
        }
        Ok(RelStruct {
            signature,
            domain_size,
            relations: out,
        })
    }

    pub(crate) fn from_relations(
        signature: Signature,
        domain_size: usize,
        relations: Vec<Relation>,
    ) -> Self {
        debug_assert_eq!(signature.len(), relations.len());
        RelStruct {
            signature,
            domain_size,
            relations,
        }
    }

    /// The structure with no tuples at all.
    pub fn empty(signature: Signature, domain_size: usize) -> Self {
        let relations = signature
            .arities()
            .iter()
            .map(|&a| Relation::from_sorted_flat(a, Vec::new()))
            .collect();
        RelStruct {
            signature,
            domain_size,
            relations,
        }
    }

    /// Directed graph with the given arcs.
    ///
    /// # Panics
    /// If an arc endpoint is `>= n`.
    pub fn digraph(n: usize, arcs: &[(usize, usize)]) -> Self {
        let tuples = arcs.iter().map(|&(a, b)| vec![a, b]).collect();
        RelStruct::new(Signature::binary(), n, vec![tuples]).expect("arc endpoint out of range")
    }

    /// Undirected graph: a symmetric binary relation with both orientations
    /// of every edge.
    ///
    /// # Panics
    /// If an edge endpoint is `>= n`.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Self {
        let arcs: Vec<(usize, usize)> = edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
        RelStruct::digraph(n, &arcs)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, symbol: usize) -> &Relation {
        &self.relations[symbol]
    }

    pub fn holds(&self, symbol: usize, tuple: &[usize]) -> bool {
        let t: Vec<u32> = tuple.iter().map(|&x| x as u32).collect();
        self.relations[symbol].contains(&t)
    }

    /// Convenience for single-binary structures.
    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.relations[0].contains(&[a as u32, b as u32])
    }

    pub(crate) fn require_single_binary(&self) -> Result<()> {
        if self.signature.is_single_binary() {
            Ok(())
        } else {
            Err(Error::NotBinary(self.signature.arities().to_vec()))
        }
    }

    /// The restriction to `subset`, re-indexed to `{0..|subset|}` in the
    /// order the elements are listed.
    pub fn restrict(&self, subset: &[usize]) -> Result<RelStruct> {
        let mut map = vec![u32::MAX; self.domain_size];
        for (new, &old) in subset.iter().enumerate() {
            if old >= self.domain_size {
                return Err(Error::ElementOutOfRange {
                    element: old,
                    domain_size: self.domain_size,
                });
            }
            if map[old] != u32::MAX {
                return Err(Error::NotInjective(old));
            }
            map[old] = new as u32;
        }
        Ok(self.restrict_with_map(&map, subset.len()))
    }

    /// Restriction to the elements of a bitmask, in increasing order.
    pub fn restrict_mask(&self, mask: u64) -> RelStruct {
        let mut map = vec![u32::MAX; self.domain_size];
        let mut next = 0u32;
        for (i, slot) in map.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *slot = next;
                next += 1;
            }
        }
        self.restrict_with_map(&map, next as usize)
    }

    /// `map[old]` is the new index or `u32::MAX` when dropped.
    pub(crate) fn restrict_with_map(&self, map: &[u32], new_size: usize) -> RelStruct {
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                let mut flat = Vec::new();
                'tuples: for t in rel.tuples() {
                    let start = flat.len();
                    for &x in t {
                        let y = map[x as usize];
                        if y == u32::MAX {
                            flat.truncate(start);
                            continue 'tuples;
                        }
                        flat.push(y);
                    }
                }
                Relation::from_flat(rel.arity, flat)
            })
            .collect();
        RelStruct {
            signature: self.signature.clone(),
            domain_size: new_size,
            relations,
        }
    }

    /// Relabels element `v` as `perm[v]`; `perm` must be a permutation.
    pub fn permute(&self, perm: &[usize]) -> RelStruct {
        debug_assert_eq!(perm.len(), self.domain_size);
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                let flat = rel
                    .flat()
                    .iter()
                    .map(|&x| perm[x as usize] as u32)
                    .collect();
                Relation::from_flat(rel.arity, flat)
            })
            .collect();
        RelStruct {
            signature: self.signature.clone(),
            domain_size: self.domain_size,
            relations,
        }
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canon::canonical_code(self)
    }
}

impl fmt::Display for RelStruct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}", self.domain_size)?;
        for (i, rel) in self.relations.iter().enumerate() {
            write!(f, " R{i}{{")?;
            for (j, t) in rel.tuples().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// True iff a bijection between the domains carries every relation onto
/// the corresponding relation.
pub fn are_isomorphic(a: &RelStruct, b: &RelStruct) -> Result<bool> {
    if a.signature != b.signature {
        return Err(Error::SignatureMismatch {
            left: a.signature.arities().to_vec(),
            right: b.signature.arities().to_vec(),
        });
    }
    if a.domain_size != b.domain_size
        || a.relations
            .iter()
            .zip(&b.relations)
            .any(|(x, y)| x.len() != y.len())
    {
        return Ok(false);
    }
    Ok(canon::canonical_code(a) == canon::canonical_code(b))
}

/// A set `A` of vertices of a directed graph is autonomous when no vertex
/// outside `A` distinguishes two vertices of `A`, in either direction.
pub fn is_autonomous(g: &RelStruct, subset: &[usize]) -> Result<bool> {
    g.require_single_binary()?;
    let n = g.domain_size;
    let mut inside = vec![false; n];
    for &x in subset {
        if x >= n {
            return Err(Error::ElementOutOfRange {
                element: x,
                domain_size: n,
            });
        }
        inside[x] = true;
    }
    let Some(&first) = subset.first() else {
        return Ok(true);
    };
    for y in (0..n).filter(|&y| !inside[y]) {
        let out_ref = g.has_arc(first, y);
        let in_ref = g.has_arc(y, first);
        for &x in &subset[1..] {
            if g.has_arc(x, y) != out_ref || g.has_arc(y, x) != in_ref {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the partial map `f` (pairs `x ↦ f(x)`) is an isomorphism from
/// `R↾dom f` onto `R'↾im f`.
pub fn is_local_iso(r: &RelStruct, r2: &RelStruct, f: &[(usize, usize)]) -> Result<bool> {
    if r.signature != r2.signature {
        return Err(Error::SignatureMismatch {
            left: r.signature.arities().to_vec(),
            right: r2.signature.arities().to_vec(),
        });
    }
    let dom: Vec<usize> = f.iter().map(|p| p.0).collect();
    let img: Vec<usize> = f.iter().map(|p| p.1).collect();
    let mut seen = std::collections::HashSet::new();
    for &x in &dom {
        if !seen.insert(x) {
            return Err(Error::NotInjective(x));
        }
    }
    seen.clear();
    for &y in &img {
        if !seen.insert(y) {
            return Err(Error::NotInjective(y));
        }
    }
    Ok(r.restrict(&dom)? == r2.restrict(&img)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique(n: usize) -> RelStruct {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        RelStruct::graph(n, &e)
    }

    fn path(n: usize) -> RelStruct {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        RelStruct::graph(n, &e)
    }

    #[test]
    fn constructor_validates() {
        let sig = Signature::new(vec![2]).unwrap();
        assert!(matches!(
            RelStruct::new(sig.clone(), 2, vec![vec![vec![0, 2]]]),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            RelStruct::new(sig.clone(), 2, vec![vec![vec![0]]]),
            Err(Error::TupleArity { .. })
        ));
        assert!(matches!(
            RelStruct::new(sig, 2, vec![]),
            Err(Error::RelationCount { .. })
        ));
        assert!(matches!(
            Signature::new(vec![1, 0]),
            Err(Error::ZeroArity { symbol: 1 })
        ));
    }

    #[test]
    fn restrict_clique_gives_k2() {
        let r = clique(4).restrict(&[0, 1]).unwrap();
        assert_eq!(r, clique(2));
    }

    #[test]
    fn restrict_full_domain_is_identity() {
        let p = path(5);
        assert_eq!(p.restrict(&[0, 1, 2, 3, 4]).unwrap(), p);
    }

    #[test]
    fn restrict_path_keeps_one_edge() {
        let r = path(6).restrict(&[0, 1, 3]).unwrap();
        assert_eq!(r, RelStruct::graph(3, &[(0, 1)]));
    }

    #[test]
    fn restrict_rejects_bad_subsets() {
        assert!(matches!(
            path(3).restrict(&[0, 3]),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            path(3).restrict(&[1, 1]),
            Err(Error::NotInjective(1))
        ));
    }

    #[test]
    fn restrict_mask_matches_list() {
        let p = path(7);
        assert_eq!(
            p.restrict_mask(0b1011001),
            p.restrict(&[0, 3, 4, 6]).unwrap()
        );
    }

    #[test]
    fn isomorphism_examples() {
        let k3 = clique(3);
        assert!(are_isomorphic(&k3, &k3.permute(&[2, 0, 1])).unwrap());
        let c3 = RelStruct::digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        let t3 = RelStruct::digraph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(!are_isomorphic(&c3, &t3).unwrap());
        let e = RelStruct::empty(Signature::binary(), 0);
        assert!(are_isomorphic(&e, &e.clone()).unwrap());
        let unary = RelStruct::empty(Signature::new(vec![1]).unwrap(), 0);
        assert!(matches!(
            are_isomorphic(&e, &unary),
            Err(Error::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn autonomy_examples() {
        let p = path(3);
        assert!(is_autonomous(&p, &[1]).unwrap());
        assert!(is_autonomous(&p, &[0, 1, 2]).unwrap());
        assert!(is_autonomous(&p, &[]).unwrap());
        // 1 is adjacent to both ends, so it does not separate them.
        assert!(is_autonomous(&p, &[0, 2]).unwrap());
        assert!(!is_autonomous(&p, &[0, 1]).unwrap());
        let unary = RelStruct::empty(Signature::new(vec![1]).unwrap(), 2);
        assert!(matches!(
            is_autonomous(&unary, &[0]),
            Err(Error::NotBinary(_))
        ));
    }

    #[test]
    fn local_iso_examples() {
        let chain = RelStruct::digraph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(is_local_iso(&chain, &chain, &[(0, 0), (2, 2)]).unwrap());
        assert!(!is_local_iso(&chain, &chain, &[(0, 1), (1, 0)]).unwrap());
        assert!(is_local_iso(&chain, &chain, &[]).unwrap());
        assert!(matches!(
            is_local_iso(&chain, &chain, &[(0, 1), (1, 1)]),
            Err(Error::NotInjective(1))
        ));
    }
}
