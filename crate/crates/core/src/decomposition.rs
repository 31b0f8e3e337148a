//! Monomorphic parts, canonical decompositions and leading monomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::canon::CanonicalCode;
use crate::error::{Error, Result};
use crate::presentation::{BlockSize, LexSumPresentation};
use crate::structure::{is_autonomous, RelStruct};
use crate::subsets::{mask_to_vec, vec_to_mask, KSubsets};

/// Largest domain for which every subset gets a type id.
pub const MAX_TABLE_DOMAIN: usize = 20;

/// Isomorphism-type id of the restriction to every subset of the domain,
/// indexed by bitmask.
#[derive(Clone, Debug)]
pub struct SubsetTypeTable {
    domain_size: usize,
    ids: Vec<u32>,
}

impl SubsetTypeTable {
    pub fn new(r: &RelStruct) -> Result<Self> {
        let m = r.domain_size();
        if m > MAX_TABLE_DOMAIN {
            return Err(Error::DomainTooLarge(m));
        }
        let mut ids = vec![0u32; 1 << m];
        let mut by_code: HashMap<CanonicalCode, u32> = HashMap::new();
        let mut memo: HashMap<RelStruct, u32> = HashMap::new();
        for (mask, slot) in ids.iter_mut().enumerate() {
            let sub = r.restrict_mask(mask as u64);
            *slot = match memo.get(&sub) {
                Some(&id) => id,
                None => {
                    let next = by_code.len() as u32;
                    let id = *by_code.entry(sub.canonical_code()).or_insert(next);
                    memo.insert(sub, id);
                    id
                }
            };
        }
        Ok(SubsetTypeTable {
            domain_size: m,
            ids,
        })
    }

    pub fn type_of(&self, mask: u64) -> u32 {
        self.ids[mask as usize]
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    /// Single-swap test: for every subset `A` and every `b ∈ A ∩ B`,
    /// `b' ∈ B ∖ A`, the sets `A` and `A − b + b'` have the same type.
    pub fn is_monomorphic_part(&self, part: u64) -> bool {
        let full = (1u64 << self.domain_size) - 1;
        if part.count_ones() < 2 {
            return true;
        }
        (0..=full).all(|a| {
            let inside = a & part;
            let outside = part & !a;
            if inside == 0 || outside == 0 {
                return true;
            }
            let t = self.type_of(a);
            mask_to_vec(inside).into_iter().all(|b| {
                mask_to_vec(outside)
                    .into_iter()
                    .all(|c| self.type_of(a & !(1 << b) | 1 << c) == t)
            })
        })
    }
}

fn check_subset(r: &RelStruct, subset: &[usize]) -> Result<u64> {
    let m = r.domain_size();
    if let Some(&x) = subset.iter().find(|&&x| x >= m) {
        return Err(Error::ElementOutOfRange {
            element: x,
            domain_size: m,
        });
    }
    Ok(vec_to_mask(subset))
}

pub fn is_monomorphic_part(r: &RelStruct, part: &[usize]) -> Result<bool> {
    let mask = check_subset(r, part)?;
    Ok(SubsetTypeTable::new(r)?.is_monomorphic_part(mask))
}

/// The definition taken literally: all pairs `A`, `A'` of equal size with
/// `A ∖ B = A' ∖ B` restrict to isomorphic structures.
pub fn is_monomorphic_part_by_definition(r: &RelStruct, part: &[usize]) -> Result<bool> {
    let mask = check_subset(r, part)?;
    let table = SubsetTypeTable::new(r)?;
    let m = r.domain_size();
    let outside = ((1u64 << m) - 1) & !mask;
    let part_elems = mask_to_vec(mask);
    for rest in 0..=outside {
        if rest & !outside != 0 {
            continue;
        }
        for k in 0..=part_elems.len() {
            let mut ty = None;
            for sel in KSubsets::new(part_elems.len(), k) {
                let a = rest
                    | vec_to_mask(
                        &mask_to_vec(sel)
                            .iter()
                            .map(|&i| part_elems[i])
                            .collect::<Vec<_>>(),
                    );
                let t = table.type_of(a);
                if *ty.get_or_insert(t) != t {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `{x}` together with every `y` such that `{x, y}` is a monomorphic part.
pub fn largest_monomorphic_part(r: &RelStruct, x: usize) -> Result<Vec<usize>> {
    check_subset(r, &[x])?;
    let table = SubsetTypeTable::new(r)?;
    Ok(largest_part_in(&table, x))
}

fn largest_part_in(table: &SubsetTypeTable, x: usize) -> Vec<usize> {
    (0..table.domain_size())
        .filter(|&y| y == x || table.is_monomorphic_part(1 << x | 1 << y))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionBlock {
    /// Domain elements, or index vertices of a lexicographic sum.
    pub members: Vec<usize>,
    pub size: BlockSize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<DecompositionBlock>,
}

impl Decomposition {
    pub fn infinite_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.size.is_infinite()).count()
    }

    /// Total size of the finite blocks.
    pub fn finite_total(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| match b.size {
                BlockSize::Finite(n) => n,
                BlockSize::Omega => 0,
            })
            .sum()
    }

    /// Whether every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Decomposition) -> bool {
        self.blocks.iter().all(|b| {
            coarser
                .blocks
                .iter()
                .any(|c| b.members.iter().all(|x| c.members.contains(x)))
        })
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let members: Vec<String> = b.members.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}:{}", members.join(","), b.size)?;
        }
        Ok(())
    }
}

/// The coarsest monomorphic decomposition of a finite structure.
pub fn canonical_decomposition(r: &RelStruct) -> Result<Decomposition> {
    let table = SubsetTypeTable::new(r)?;
    canonical_decomposition_in(&table)
}

pub fn canonical_decomposition_in(table: &SubsetTypeTable) -> Result<Decomposition> {
    let m = table.domain_size();
    let parts: Vec<Vec<usize>> = (0..m).map(|x| largest_part_in(table, x)).collect();
    let mut blocks: Vec<DecompositionBlock> = Vec::new();
    for x in 0..m {
        let part = &parts[x];
        if part.iter().any(|&y| parts[y] != *part) {
            return Err(Error::Inconsistent(format!(
                "largest monomorphic parts of {x} and its members differ"
            )));
        }
        if part[0] == x {
            blocks.push(DecompositionBlock {
                members: part.clone(),
                size: BlockSize::Finite(part.len()),
            });
        }
    }
    for b in &blocks {
        if !table.is_monomorphic_part(vec_to_mask(&b.members)) {
            return Err(Error::Inconsistent(format!(
                "block {:?} is not a monomorphic part",
                b.members
            )));
        }
    }
    Ok(Decomposition { blocks })
}

/// Per-block cut used when checking merged index groups on a truncation.
const TRUNCATION_CUT: usize = 4;

/// One block per index vertex, with groups of index vertices merged when
/// they are autonomous in the index and their union stays a monomorphic
/// part of a finite truncation.
pub fn presentation_decomposition(p: &LexSumPresentation) -> Result<Decomposition> {
    let infinite = p.infinite_blocks().max(1);
    let cut =
        TRUNCATION_CUT.min((MAX_TABLE_DOMAIN.saturating_sub(p.finite_total()) / infinite).max(1));
    let (trunc, owner) = p.truncation(cut);
    let table = SubsetTypeTable::new(&trunc)?;
    let elements_of = |group: &[usize]| -> u64 {
        (0..trunc.domain_size())
            .filter(|&v| group.contains(&owner[v]))
            .fold(0u64, |acc, v| acc | 1 << v)
    };
    let mut groups: Vec<Vec<usize>> = (0..p.block_count()).map(|i| vec![i]).collect();
    'merge: loop {
        for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                let mut union = groups[a].clone();
                union.extend(&groups[b]);
                union.sort_unstable();
                if is_autonomous(p.index(), &union)?
                    && table.is_monomorphic_part(elements_of(&union))
                {
                    groups[a] = union;
                    groups.remove(b);
                    continue 'merge;
                }
            }
        }
        break;
    }
    let blocks = groups
        .into_iter()
        .map(|members| {
            let size = members.iter().fold(BlockSize::Finite(0), |acc, &i| {
                match (acc, p.blocks()[i].size) {
                    (BlockSize::Finite(a), BlockSize::Finite(b)) => BlockSize::Finite(a + b),
                    _ => BlockSize::Omega,
                }
            });
            DecompositionBlock { members, size }
        })
        .collect();
    Ok(Decomposition { blocks })
}

/// `k − 1` for `k` infinite blocks.
pub fn predict_growth_degree(d: &Decomposition) -> Result<usize> {
    match d.infinite_blocks() {
        0 => Err(Error::HypothesisUnmet(
            "no infinite block: the structure is finite".into(),
        )),
        k => Ok(k - 1),
    }
}

/// A monomial in one variable per decomposition block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<usize>,
}

impl Monomial {
    pub fn new(exponents: Vec<usize>) -> Self {
        Monomial { exponents }
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().sum()
    }

    /// Exponents sorted in decreasing order.
    pub fn shape(&self) -> Vec<usize> {
        let mut s = self.exponents.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// The factorization `∏ x_{S_j}^{m_j}` with `S_1 ⊊ S_2 ⊊ …`, where
    /// `x_S` is the product of the variables in `S`.
    pub fn chain_support(&self) -> Vec<(Vec<usize>, usize)> {
        let mut levels: Vec<usize> = self.exponents.iter().copied().filter(|&e| e > 0).collect();
        levels.sort_unstable();
        levels.dedup();
        let mut out = Vec::with_capacity(levels.len());
        for (j, &v) in levels.iter().enumerate().rev() {
            let below = if j == 0 { 0 } else { levels[j - 1] };
            let set = (0..self.exponents.len())
                .filter(|&i| self.exponents[i] >= v)
                .collect();
            out.push((set, v - below));
        }
        out
    }

    pub fn from_chain_support(vars: usize, support: &[(Vec<usize>, usize)]) -> Self {
        let mut exponents = vec![0; vars];
        for (set, mult) in support {
            for &i in set {
                exponents[i] += mult;
            }
        }
        Monomial { exponents }
    }

    /// `self · x_S`.
    pub fn times_layer(&self, layer: &[usize]) -> Self {
        let mut e = self.exponents.clone();
        for &i in layer {
            e[i] += 1;
        }
        Monomial { exponents: e }
    }

    /// Degree first; on equal degree the shapes compare reverse
    /// lexicographically (smaller last differing part wins); remaining ties
    /// go to the lexicographically larger exponent vector.
    pub fn order(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                let (a, b) = (self.shape(), other.shape());
                let len = a.len().max(b.len());
                let at = |s: &[usize], i: usize| s.get(i).copied().unwrap_or(0);
                (0..len)
                    .rev()
                    .find(|&i| at(&a, i) != at(&b, i))
                    .map_or(Ordering::Equal, |i| at(&b, i).cmp(&at(&a, i)))
            })
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn block_of_index(d: &Decomposition, vertices: usize) -> Result<Vec<usize>> {
    let mut owner = vec![usize::MAX; vertices];
    for (b, block) in d.blocks.iter().enumerate() {
        for &i in &block.members {
            if i >= vertices || owner[i] != usize::MAX {
                return Err(Error::InvalidPresentation(format!(
                    "decomposition does not partition the {vertices} index vertices"
                )));
            }
            owner[i] = b;
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(Error::InvalidPresentation(format!(
            "decomposition does not cover the {vertices} index vertices"
        )));
    }
    Ok(owner)
}

/// The leading monomial of every type of degree `n`.
pub fn leading_monomials(
    p: &LexSumPresentation,
    d: &Decomposition,
    n: usize,
) -> Result<BTreeMap<CanonicalCode, Monomial>> {
    let owner = block_of_index(d, p.block_count())?;
    let mut out: BTreeMap<CanonicalCode, Monomial> = BTreeMap::new();
    p.for_each_composition(n, |sizes| {
        let code = p.realize_sizes(sizes).canonical_code();
        let mut e = vec![0; d.blocks.len()];
        for (i, &s) in sizes.iter().enumerate() {
            e[owner[i]] += s;
        }
        let m = Monomial::new(e);
        match out.get_mut(&code) {
            Some(best) if m.order(best) != Ordering::Greater => {}
            Some(best) => *best = m,
            None => {
                out.insert(code, m);
            }
        }
    });
    Ok(out)
}

pub fn leading_monomial(
    p: &LexSumPresentation,
    d: &Decomposition,
    code: &CanonicalCode,
    n: usize,
) -> Result<Monomial> {
    leading_monomials(p, d, n)?.remove(code).ok_or_else(|| {
        Error::InvalidTarget(format!(
            "type {} is not of degree {n} in the age",
            code.to_hex()
        ))
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AddLayerReport {
    /// (monomial, layer) pairs examined.
    pub checked: usize,
    /// Pairs where a finite block in the layer is already full.
    pub saturated: usize,
    /// Pairs where `m · x_S` is a leading monomial.
    pub verified: usize,
    /// Pairs whose product lies past the degree window.
    pub beyond_window: usize,
    pub counterexamples: Vec<(Monomial, Vec<usize>)>,
}

/// For each leading monomial `m` of degree below `max_degree` and each
/// member `S` of its chain support, either some block of `S` is finite and
/// full or `m · x_S` is again a leading monomial.
pub fn verify_addlayer(
    p: &LexSumPresentation,
    d: &Decomposition,
    max_degree: usize,
) -> Result<AddLayerReport> {
    let levels: Vec<Vec<Monomial>> = (0..=max_degree)
        .map(|n| -> Result<Vec<Monomial>> {
            let mut v: Vec<Monomial> = leading_monomials(p, d, n)?.into_values().collect();
            v.sort();
            v.dedup();
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let mut report = AddLayerReport::default();
    for level in levels.iter().take(max_degree) {
        for m in level {
            for (layer, _) in m.chain_support() {
                report.checked += 1;
                let full = layer.iter().any(|&i| match d.blocks[i].size {
                    BlockSize::Finite(s) => m.exponents[i] >= s,
                    BlockSize::Omega => false,
                });
                if full {
                    report.saturated += 1;
                    continue;
                }
                let next = m.times_layer(&layer);
                match levels.get(next.degree()) {
                    None => report.beyond_window += 1,
                    Some(l) if l.binary_search(&next).is_ok() => report.verified += 1,
                    Some(_) => report.counterexamples.push((m.clone(), layer)),
                }
            }
        }
    }
    Ok(report)
}
