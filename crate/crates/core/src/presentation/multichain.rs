use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::structure::{RelStruct, Relation, Signature};

/// How the chain positions of two slice elements compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Comparator {
    Less = 0,
    Equal = 1,
    Greater = 2,
}

impl From<Ordering> for Comparator {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparator::Less,
            Ordering::Equal => Comparator::Equal,
            Ordering::Greater => Comparator::Greater,
        }
    }
}

/// Rule table for one symbol of a multichain presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolRule {
    /// `slices[x]`: whether the unary relation holds on `{x} × ω`.
    Unary { slices: Vec<bool> },
    /// `slice_pairs[x * v + y][c]`: whether `((x,i),(y,j))` is in the
    /// relation when `cmp(i, j)` is comparator `c`.
    /// `finite_to_slice[a * v + x]`: `(a, (x,i))`.
    /// `slice_to_finite[x * f + a]`: `((x,i), a)`.
    Binary {
        slice_pairs: Vec<[bool; 3]>,
        finite_to_slice: Vec<bool>,
        slice_to_finite: Vec<bool>,
    },
}

impl SymbolRule {
    /// Binary rule from closures over `(x, y, cmp)`, `(a, x)`, `(x, a)`.
    pub fn binary_from_fn(
        slices: usize,
        finite: usize,
        pairs: impl Fn(usize, usize, Comparator) -> bool,
        f_to_s: impl Fn(usize, usize) -> bool,
        s_to_f: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let mut slice_pairs = Vec::with_capacity(slices * slices);
        for x in 0..slices {
            for y in 0..slices {
                slice_pairs.push([
                    pairs(x, y, Comparator::Less),
                    pairs(x, y, Comparator::Equal),
                    pairs(x, y, Comparator::Greater),
                ]);
            }
        }
        let mut finite_to_slice = Vec::with_capacity(finite * slices);
        for a in 0..finite {
            for x in 0..slices {
                finite_to_slice.push(f_to_s(a, x));
            }
        }
        let mut slice_to_finite = Vec::with_capacity(finite * slices);
        for x in 0..slices {
            for a in 0..finite {
                slice_to_finite.push(s_to_f(x, a));
            }
        }
        SymbolRule::Binary {
            slice_pairs,
            finite_to_slice,
            slice_to_finite,
        }
    }
}

/// An almost-multichainable structure `F ∪ V×ω`: a finite part on `F`,
/// `|V|` slices indexed by the chain ω, and per-symbol rules that depend
/// only on slice indices and the order of chain positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultichainPresentation {
    signature: Signature,
    finite_part: RelStruct,
    slice_count: usize,
    rules: Vec<SymbolRule>,
}

/// A finite restriction of a multichain presentation, up to shifting chain
/// positions: a subset of `F` and a sequence of non-empty slice sets
/// (bitmasks over `V`), one per used chain position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub finite: Vec<usize>,
    pub letters: Vec<u32>,
}

impl Word {
    pub fn size(&self) -> usize {
        self.finite.len()
            + self
                .letters
                .iter()
                .map(|l| l.count_ones() as usize)
                .sum::<usize>()
    }
}

/// Where an element of a realized word comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Finite(usize),
    Slice { slice: usize, position: usize },
}

impl MultichainPresentation {
    pub fn new(
        signature: Signature,
        finite_part: RelStruct,
        slice_count: usize,
        rules: Vec<SymbolRule>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidPresentation(msg));
        if finite_part.signature() != &signature {
            return bad("finite part signature differs from the presentation signature".into());
        }
        if rules.len() != signature.len() {
            return bad(format!(
                "{} rules for {} symbols",
                rules.len(),
                signature.len()
            ));
        }
        if slice_count == 0 || slice_count > 16 {
            return bad(format!("slice count {slice_count} outside 1..=16"));
        }
        let f = finite_part.domain_size();
        for (s, (rule, &arity)) in rules.iter().zip(signature.arities()).enumerate() {
            match (rule, arity) {
                (SymbolRule::Unary { slices }, 1) => {
                    if slices.len() != slice_count {
                        return bad(format!(
                            "symbol {s}: unary rule needs {slice_count} entries"
                        ));
                    }
                }
                (
                    SymbolRule::Binary {
                        slice_pairs,
                        finite_to_slice,
                        slice_to_finite,
                    },
                    2,
                ) => {
                    if slice_pairs.len() != slice_count * slice_count
                        || finite_to_slice.len() != f * slice_count
                        || slice_to_finite.len() != f * slice_count
                    {
                        return bad(format!("symbol {s}: binary rule tables have wrong sizes"));
                    }
                }
                (_, a) if a > 2 => {
                    return bad(format!(
                        "symbol {s}: arity {a} unsupported in presentations"
                    ))
                }
                _ => {
                    return bad(format!(
                        "symbol {s}: rule kind does not match arity {arity}"
                    ))
                }
            }
        }
        Ok(MultichainPresentation {
            signature,
            finite_part,
            slice_count,
            rules,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn finite_part(&self) -> &RelStruct {
        &self.finite_part
    }

    pub fn finite_size(&self) -> usize {
        self.finite_part.domain_size()
    }

    pub fn slice_count(&self) -> usize {
        self.slice_count
    }

    pub fn rules(&self) -> &[SymbolRule] {
        &self.rules
    }

    fn validate_word(&self, w: &Word) -> Result<()> {
        let f = self.finite_size();
        if w.finite.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::MalformedWord(
                "finite part must be strictly increasing".into(),
            ));
        }
        if let Some(&a) = w.finite.iter().find(|&&a| a >= f) {
            return Err(Error::MalformedWord(format!(
                "finite element {a} not below {f}"
            )));
        }
        let full = (1u32 << self.slice_count) - 1;
        for &l in &w.letters {
            if l == 0 {
                return Err(Error::MalformedWord("empty letter".into()));
            }
            if l & !full != 0 {
                return Err(Error::MalformedWord(format!(
                    "letter {l:#b} uses slices beyond {}",
                    self.slice_count
                )));
            }
        }
        Ok(())
    }

    fn origins(w: &Word) -> Vec<Origin> {
        let mut out: Vec<Origin> = w.finite.iter().map(|&a| Origin::Finite(a)).collect();
        for (position, &letter) in w.letters.iter().enumerate() {
            let mut l = letter;
            while l != 0 {
                let slice = l.trailing_zeros() as usize;
                out.push(Origin::Slice { slice, position });
                l &= l - 1;
            }
        }
        out
    }

    /// The finite structure a word denotes: finite elements first, then the
    /// slice elements position by position, in slice order.
    pub fn realize(&self, w: &Word) -> Result<RelStruct> {
        self.validate_word(w)?;
        Ok(self.realize_origins(&Self::origins(w)))
    }

    pub(crate) fn realize_origins(&self, elems: &[Origin]) -> RelStruct {
        let v = self.slice_count;
        let f = self.finite_size();
        let relations = self
            .rules
            .iter()
            .enumerate()
            .map(|(s, rule)| match rule {
                SymbolRule::Unary { slices } => {
                    let mut flat = Vec::new();
                    for (i, e) in elems.iter().enumerate() {
                        let holds = match *e {
                            Origin::Finite(a) => self.finite_part.holds(s, &[a]),
                            Origin::Slice { slice, .. } => slices[slice],
                        };
                        if holds {
                            flat.push(i as u32);
                        }
                    }
                    Relation::from_sorted_flat(1, flat)
                }
                SymbolRule::Binary {
                    slice_pairs,
                    finite_to_slice,
                    slice_to_finite,
                } => {
                    let mut flat = Vec::new();
                    for (i, p) in elems.iter().enumerate() {
                        for (j, q) in elems.iter().enumerate() {
                            let holds = match (*p, *q) {
                                (Origin::Finite(a), Origin::Finite(b)) => {
                                    self.finite_part.holds(s, &[a, b])
                                }
                                (Origin::Finite(a), Origin::Slice { slice, .. }) => {
                                    finite_to_slice[a * v + slice]
                                }
                                (Origin::Slice { slice, .. }, Origin::Finite(a)) => {
                                    slice_to_finite[slice * f + a]
                                }
                                (
                                    Origin::Slice {
                                        slice: x,
                                        position: pi,
                                    },
                                    Origin::Slice {
                                        slice: y,
                                        position: pj,
                                    },
                                ) => slice_pairs[x * v + y][Comparator::from(pi.cmp(&pj)) as usize],
                            };
                            if holds {
                                flat.push(i as u32);
                                flat.push(j as u32);
                            }
                        }
                    }
                    Relation::from_sorted_flat(2, flat)
                }
            })
            .collect();
        RelStruct::from_relations(self.signature.clone(), elems.len(), relations)
    }

    /// Calls `visit` on every word of total size `n` whose letter sequence
    /// has at most `max_letters` letters. Order: finite subsets by bitmask
    /// value, then letter sequences by length, then lexicographically.
    pub fn for_each_word(&self, n: usize, max_letters: usize, mut visit: impl FnMut(&Word)) {
        let f = self.finite_size();
        assert!(f < 32, "finite part too large for subset enumeration");
        let mut word = Word {
            finite: Vec::new(),
            letters: Vec::new(),
        };
        for mask in 0u32..(1u32 << f) {
            let s = mask.count_ones() as usize;
            if s > n {
                continue;
            }
            word.finite = (0..f).filter(|&a| mask >> a & 1 == 1).collect();
            let rest = n - s;
            if rest == 0 {
                word.letters.clear();
                visit(&word);
                continue;
            }
            for len in 1..=rest.min(max_letters) {
                word.letters.clear();
                self.letter_sequences(rest, len, &mut word, &mut visit);
            }
        }
    }

    fn letter_sequences(
        &self,
        remaining: usize,
        len: usize,
        word: &mut Word,
        visit: &mut impl FnMut(&Word),
    ) {
        if len == 0 {
            if remaining == 0 {
                visit(word);
            }
            return;
        }
        let v = self.slice_count;
        for letter in 1u32..(1u32 << v) {
            let size = letter.count_ones() as usize;
            // each later letter needs at least one element
            if size > remaining || remaining - size < len - 1 || remaining - size > (len - 1) * v {
                continue;
            }
            word.letters.push(letter);
            self.letter_sequences(remaining - size, len - 1, word, visit);
            word.letters.pop();
        }
    }

    pub fn words(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        self.for_each_word(n, usize::MAX, |w| out.push(w.clone()));
        out
    }

    /// Isomorphism types of the `n`-element restrictions, keyed by code,
    /// with the canonical form as representative.
    pub fn enumerate_age(&self, n: usize) -> BTreeMap<CanonicalCode, RelStruct> {
        self.enumerate_age_bounded(n, usize::MAX)
    }

    /// As [`Self::enumerate_age`] but for the structure restricted to the
    /// first `max_letters` chain positions.
    pub fn enumerate_age_bounded(
        &self,
        n: usize,
        max_letters: usize,
    ) -> BTreeMap<CanonicalCode, RelStruct> {
        let mut out = BTreeMap::new();
        self.for_each_word(n, max_letters, |w| {
            let r = self.realize_origins(&Self::origins(w));
            let (code, form) = canonical_form(&r);
            out.entry(code).or_insert(form);
        });
        out
    }

    /// The finite structure on `F ∪ V × {0..positions}`, with the origin of
    /// every element.
    pub fn truncation(&self, positions: usize) -> (RelStruct, Vec<Origin>) {
        let full = (1u32 << self.slice_count) - 1;
        let w = Word {
            finite: (0..self.finite_size()).collect(),
            letters: vec![full; positions],
        };
        let origins = Self::origins(&w);
        (self.realize_origins(&origins), origins)
    }

    /// The presentation with finite element `a` deleted.
    pub fn without_finite(&self, a: usize) -> Result<Self> {
        let f = self.finite_size();
        if a >= f {
            return Err(Error::ElementOutOfRange {
                element: a,
                domain_size: f,
            });
        }
        let keep: Vec<usize> = (0..f).filter(|&b| b != a).collect();
        let finite_part = self.finite_part.restrict(&keep)?;
        let v = self.slice_count;
        let rules = self
            .rules
            .iter()
            .map(|r| match r {
                SymbolRule::Unary { .. } => r.clone(),
                SymbolRule::Binary {
                    slice_pairs,
                    finite_to_slice,
                    slice_to_finite,
                } => SymbolRule::Binary {
                    slice_pairs: slice_pairs.clone(),
                    finite_to_slice: keep
                        .iter()
                        .flat_map(|&b| (0..v).map(move |x| finite_to_slice[b * v + x]))
                        .collect(),
                    slice_to_finite: (0..v)
                        .flat_map(|x| keep.iter().map(move |&b| slice_to_finite[x * f + b]))
                        .collect(),
                },
            })
            .collect();
        MultichainPresentation::new(self.signature.clone(), finite_part, v, rules)
    }
}
