use std::collections::BTreeMap;
use std::fmt;

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::presentation::multichain::{Comparator, MultichainPresentation, SymbolRule};
use crate::structure::{RelStruct, Relation, Signature};

/// Inner structure of one block of a lexicographic sum of digraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    /// `x → y` iff `x < y`.
    AcyclicTournament,
    /// All arcs between distinct vertices, no loops.
    Clique,
    /// No arcs.
    IndependentSet,
    /// Reflexive order: `x → y` iff `x ≤ y`.
    Chain,
    /// All arcs including loops.
    ReflexiveClique,
    /// Loops only.
    Antichain,
}

impl BlockKind {
    pub const ALL: [BlockKind; 6] = [
        BlockKind::AcyclicTournament,
        BlockKind::Clique,
        BlockKind::IndependentSet,
        BlockKind::Chain,
        BlockKind::ReflexiveClique,
        BlockKind::Antichain,
    ];

    /// Whether `i → j` holds between positions `i`, `j` of the block.
    pub fn arc(self, i: usize, j: usize) -> bool {
        use std::cmp::Ordering::*;
        match (self, i.cmp(&j)) {
            (BlockKind::AcyclicTournament, o) => o == Less,
            (BlockKind::Clique, o) => o != Equal,
            (BlockKind::IndependentSet, _) => false,
            (BlockKind::Chain, o) => o != Greater,
            (BlockKind::ReflexiveClique, _) => true,
            (BlockKind::Antichain, o) => o == Equal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockKind::AcyclicTournament => "acyclic-tournament",
            BlockKind::Clique => "clique",
            BlockKind::IndependentSet => "independent-set",
            BlockKind::Chain => "chain",
            BlockKind::ReflexiveClique => "reflexive-clique",
            BlockKind::Antichain => "antichain",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        BlockKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// The block on `n` vertices as a digraph.
    pub fn structure(self, n: usize) -> RelStruct {
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.arc(i, j) {
                    arcs.push((i, j));
                }
            }
        }
        RelStruct::digraph(n, &arcs)
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockSize {
    Finite(usize),
    Omega,
}

impl BlockSize {
    pub fn is_infinite(self) -> bool {
        self == BlockSize::Omega
    }

    /// Whether a block of this size has at least `n` elements.
    pub fn admits(self, n: usize) -> bool {
        match self {
            BlockSize::Finite(s) => n <= s,
            BlockSize::Omega => true,
        }
    }
}

impl fmt::Display for BlockSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSize::Finite(n) => write!(f, "{n}"),
            BlockSize::Omega => f.write_str("omega"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LexBlock {
    pub kind: BlockKind,
    pub size: BlockSize,
}

impl LexBlock {
    pub fn new(kind: BlockKind, size: BlockSize) -> Self {
        LexBlock { kind, size }
    }

    pub fn omega(kind: BlockKind) -> Self {
        LexBlock::new(kind, BlockSize::Omega)
    }

    pub fn finite(kind: BlockKind, n: usize) -> Self {
        LexBlock::new(kind, BlockSize::Finite(n))
    }
}

/// A lexicographic sum of blocks over a finite index digraph: vertex `p` of
/// block `i` and vertex `q` of block `j ≠ i` are joined `p → q` iff the
/// index has the arc `i → j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexSumPresentation {
    index: RelStruct,
    blocks: Vec<LexBlock>,
}

impl LexSumPresentation {
    pub fn new(index: RelStruct, blocks: Vec<LexBlock>) -> Result<Self> {
        index.require_single_binary()?;
        if blocks.is_empty() {
            return Err(Error::InvalidPresentation(
                "a lexicographic sum needs at least one block".into(),
            ));
        }
        if blocks.len() != index.domain_size() {
            return Err(Error::InvalidPresentation(format!(
                "{} blocks for an index of {} vertices",
                blocks.len(),
                index.domain_size()
            )));
        }
        if blocks.iter().any(|b| b.size == BlockSize::Finite(0)) {
            return Err(Error::InvalidPresentation(
                "finite blocks must be non-empty".into(),
            ));
        }
        if (0..index.domain_size()).any(|i| index.has_arc(i, i)) {
            return Err(Error::InvalidPresentation(
                "index digraph must be loopless".into(),
            ));
        }
        Ok(LexSumPresentation { index, blocks })
    }

    pub fn index(&self) -> &RelStruct {
        &self.index
    }

    pub fn blocks(&self) -> &[LexBlock] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

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

    /// Copy with block `i` resized; a zero size is allowed here and simply
    /// contributes no vertices.
    pub(crate) fn with_block_size(&self, i: usize, size: BlockSize) -> Self {
        let mut out = self.clone();
        out.blocks[i].size = size;
        out
    }

    /// The sum with block `i` taking `sizes[i]` vertices; vertices are
    /// numbered block by block.
    pub fn realize_sizes(&self, sizes: &[usize]) -> RelStruct {
        assert_eq!(sizes.len(), self.blocks.len());
        let mut owner = Vec::new();
        for (i, &s) in sizes.iter().enumerate() {
            owner.extend((0..s).map(|p| (i, p)));
        }
        let mut flat = Vec::new();
        for (a, &(i, p)) in owner.iter().enumerate() {
            for (b, &(j, q)) in owner.iter().enumerate() {
                let arc = if i == j {
                    self.blocks[i].kind.arc(p, q)
                } else {
                    self.index.has_arc(i, j)
                };
                if arc {
                    flat.push(a as u32);
                    flat.push(b as u32);
                }
            }
        }
        RelStruct::from_relations(
            Signature::binary(),
            owner.len(),
            vec![Relation::from_sorted_flat(2, flat)],
        )
    }

    /// Calls `visit` on every size vector summing to `n` that the block
    /// sizes admit, in lexicographic order.
    pub fn for_each_composition(&self, n: usize, mut visit: impl FnMut(&[usize])) {
        fn rec(
            blocks: &[LexBlock],
            i: usize,
            left: usize,
            cur: &mut Vec<usize>,
            visit: &mut impl FnMut(&[usize]),
        ) {
            if i == blocks.len() {
                if left == 0 {
                    visit(cur);
                }
                return;
            }
            let cap: usize = blocks[i + 1..]
                .iter()
                .map(|b| match b.size {
                    BlockSize::Finite(s) => s,
                    BlockSize::Omega => usize::MAX / 2,
                })
                .fold(0usize, |a, b| a.saturating_add(b));
            for s in 0..=left {
                if !blocks[i].size.admits(s) {
                    break;
                }
                if left - s > cap {
                    continue;
                }
                cur.push(s);
                rec(blocks, i + 1, left - s, cur, visit);
                cur.pop();
            }
        }
        rec(
            &self.blocks,
            0,
            n,
            &mut Vec::with_capacity(self.blocks.len()),
            &mut visit,
        );
    }

    pub fn enumerate_age(&self, n: usize) -> BTreeMap<CanonicalCode, RelStruct> {
        let mut out = BTreeMap::new();
        self.for_each_composition(n, |sizes| {
            let (code, form) = canonical_form(&self.realize_sizes(sizes));
            out.entry(code).or_insert(form);
        });
        out
    }

    /// Finite truncation with every infinite block cut to `t` vertices,
    /// together with the block of every vertex.
    pub fn truncation(&self, t: usize) -> (RelStruct, Vec<usize>) {
        let sizes: Vec<usize> = self
            .blocks
            .iter()
            .map(|b| match b.size {
                BlockSize::Finite(s) => s,
                BlockSize::Omega => t,
            })
            .collect();
        let owner = sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect();
        (self.realize_sizes(&sizes), owner)
    }

    /// The same structure as a multichain presentation: finite blocks go to
    /// the finite part, each infinite block becomes one slice.
    pub fn to_multichain(&self) -> Result<MultichainPresentation> {
        if self.infinite_blocks() == 0 {
            return Err(Error::InvalidPresentation(
                "a sum of finite blocks has no multichain form".into(),
            ));
        }
        let finite_blocks: Vec<usize> = (0..self.blocks.len())
            .filter(|&i| !self.blocks[i].size.is_infinite())
            .collect();
        let slices: Vec<usize> = (0..self.blocks.len())
            .filter(|&i| self.blocks[i].size.is_infinite())
            .collect();
        let sizes: Vec<usize> = self
            .blocks
            .iter()
            .map(|b| match b.size {
                BlockSize::Finite(s) => s,
                BlockSize::Omega => 0,
            })
            .collect();
        let finite_part = self.realize_sizes(&sizes);
        let f_owner: Vec<usize> = finite_blocks
            .iter()
            .flat_map(|&i| std::iter::repeat_n(i, sizes[i]))
            .collect();
        let rule = SymbolRule::binary_from_fn(
            slices.len(),
            finite_part.domain_size(),
            |x, y, c| {
                if x == y {
                    let kind = self.blocks[slices[x]].kind;
                    match c {
                        Comparator::Less => kind.arc(0, 1),
                        Comparator::Equal => kind.arc(0, 0),
                        Comparator::Greater => kind.arc(1, 0),
                    }
                } else {
                    self.index.has_arc(slices[x], slices[y])
                }
            },
            |a, x| self.index.has_arc(f_owner[a], slices[x]),
            |x, a| self.index.has_arc(slices[x], f_owner[a]),
        );
        MultichainPresentation::new(Signature::binary(), finite_part, slices.len(), vec![rule])
    }
}
