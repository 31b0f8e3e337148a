//! Input files and `builtin:NAME` references. The grammar is described in
//! FORMAT.md next to this crate's manifest.

use std::path::Path;

use ageprofile::presentation::fixtures::builtin;
use ageprofile::presentation::{BlockKind, BlockSize, LexBlock, SymbolRule};
use ageprofile::{LexSumPresentation, MultichainPresentation, RelStruct, Signature, Source};
use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InputFile {
    Structure(StructureFile),
    Multichain(MultichainFile),
    Lexsum(LexSumFile),
    Builtin { name: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub size: usize,
    #[serde(default)]
    pub symbols: Vec<StructureSymbol>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSymbol {
    pub name: String,
    pub arity: usize,
    #[serde(default)]
    pub tuples: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultichainFile {
    pub slices: usize,
    #[serde(default)]
    pub finite_size: usize,
    pub symbols: Vec<MultichainSymbol>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultichainSymbol {
    pub name: String,
    pub arity: usize,
    /// Unary: the slices on which the symbol holds.
    #[serde(default)]
    pub slices: Vec<usize>,
    /// Tuples inside the finite part.
    #[serde(default)]
    pub finite: Vec<Vec<usize>>,
    /// Binary: slice pairs `[x, y]` related at `i < j`, `i = j`, `i > j`.
    #[serde(default)]
    pub less: Vec<[usize; 2]>,
    #[serde(default)]
    pub equal: Vec<[usize; 2]>,
    #[serde(default)]
    pub greater: Vec<[usize; 2]>,
    /// Binary: `[a, x]` relates finite element `a` to every element of slice `x`.
    #[serde(default)]
    pub finite_to_slice: Vec<[usize; 2]>,
    #[serde(default)]
    pub slice_to_finite: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexSumFile {
    pub index_size: usize,
    #[serde(default)]
    pub index_arcs: Vec<[usize; 2]>,
    pub blocks: Vec<BlockEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockEntry {
    pub kind: String,
    pub size: SizeEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SizeEntry {
    Finite(usize),
    Named(String),
}

/// Loaded input: the source plus a label for reports.
pub struct Input {
    pub label: String,
    pub source: Source,
}

pub fn load(arg: &str) -> Result<Input> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return load_builtin(name);
    }
    let text =
        std::fs::read_to_string(Path::new(arg)).with_context(|| format!("cannot read {arg}"))?;
    let file: InputFile = toml::from_str(&text).with_context(|| format!("{arg}: parse error"))?;
    let source = file
        .into_source()
        .with_context(|| format!("{arg}: invalid input"))?;
    Ok(Input {
        label: arg.to_string(),
        source,
    })
}

fn load_builtin(name: &str) -> Result<Input> {
    let f = builtin(name)?;
    Ok(Input {
        label: format!("builtin:{name}"),
        source: f.source,
    })
}

fn signature_of<'a>(arities: impl Iterator<Item = &'a usize>) -> Result<Signature> {
    Ok(Signature::new(arities.copied().collect())?)
}

impl InputFile {
    pub fn into_source(self) -> Result<Source> {
        Ok(match self {
            InputFile::Structure(s) => Source::Finite(s.to_relstruct()?),
            InputFile::Multichain(m) => Source::from(m.to_presentation()?),
            InputFile::Lexsum(l) => Source::from(l.to_presentation()?),
            InputFile::Builtin { name } => load_builtin(&name)?.source,
        })
    }
}

impl StructureFile {
    pub fn to_relstruct(&self) -> Result<RelStruct> {
        let signature = signature_of(self.symbols.iter().map(|s| &s.arity))?;
        let tuples = self.symbols.iter().map(|s| s.tuples.clone()).collect();
        RelStruct::new(signature, self.size, tuples).map_err(|e| anyhow!(e))
    }

    /// Symbols are named `R0`, `R1`, … since structures carry no names.
    pub fn from_relstruct(r: &RelStruct) -> Self {
        let symbols = r
            .relations()
            .iter()
            .enumerate()
            .map(|(i, rel)| StructureSymbol {
                name: format!("R{i}"),
                arity: rel.arity(),
                tuples: rel
                    .tuples()
                    .map(|t| t.iter().map(|&x| x as usize).collect())
                    .collect(),
            })
            .collect();
        StructureFile {
            size: r.domain_size(),
            symbols,
        }
    }
}

impl MultichainFile {
    pub fn to_presentation(&self) -> Result<MultichainPresentation> {
        let v = self.slices;
        let f = self.finite_size;
        let signature = signature_of(self.symbols.iter().map(|s| &s.arity))?;
        let finite_tuples = self.symbols.iter().map(|s| s.finite.clone()).collect();
        let finite = RelStruct::new(signature.clone(), f, finite_tuples)?;
        let check = |what: &str, name: &str, value: usize, bound: usize| -> Result<()> {
            if value >= bound {
                bail!("symbol {name}: {what} {value} out of range (expected below {bound})");
            }
            Ok(())
        };
        let mut rules = Vec::with_capacity(self.symbols.len());
        for s in &self.symbols {
            let rule = match s.arity {
                1 => {
                    if !(s.less.is_empty() && s.equal.is_empty() && s.greater.is_empty()) {
                        bail!("symbol {}: comparator lists need a binary symbol", s.name);
                    }
                    let mut slices = vec![false; v];
                    for &x in &s.slices {
                        check("slice", &s.name, x, v)?;
                        slices[x] = true;
                    }
                    SymbolRule::Unary { slices }
                }
                2 => {
                    if !s.slices.is_empty() {
                        bail!("symbol {}: `slices` is for unary symbols", s.name);
                    }
                    let mut slice_pairs = vec![[false; 3]; v * v];
                    for (c, list) in [&s.less, &s.equal, &s.greater].into_iter().enumerate() {
                        for &[x, y] in list {
                            check("slice", &s.name, x.max(y), v)?;
                            slice_pairs[x * v + y][c] = true;
                        }
                    }
                    let mut finite_to_slice = vec![false; f * v];
                    for &[a, x] in &s.finite_to_slice {
                        check("finite element", &s.name, a, f)?;
                        check("slice", &s.name, x, v)?;
                        finite_to_slice[a * v + x] = true;
                    }
                    let mut slice_to_finite = vec![false; v * f];
                    for &[x, a] in &s.slice_to_finite {
                        check("finite element", &s.name, a, f)?;
                        check("slice", &s.name, x, v)?;
                        slice_to_finite[x * f + a] = true;
                    }
                    SymbolRule::Binary {
                        slice_pairs,
                        finite_to_slice,
                        slice_to_finite,
                    }
                }
                a => bail!(
                    "symbol {}: arity {a} is not supported in multichain files",
                    s.name
                ),
            };
            rules.push(rule);
        }
        Ok(MultichainPresentation::new(signature, finite, v, rules)?)
    }
}

impl LexSumFile {
    pub fn to_presentation(&self) -> Result<LexSumPresentation> {
        let arcs: Vec<(usize, usize)> = self.index_arcs.iter().map(|&[a, b]| (a, b)).collect();
        let index = RelStruct::new(
            Signature::binary(),
            self.index_size,
            vec![arcs.iter().map(|&(a, b)| vec![a, b]).collect()],
        )?;
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let kind = BlockKind::from_name(&b.kind)
                    .ok_or_else(|| anyhow!("block {i}: unknown kind {:?}", b.kind))?;
                let size = match &b.size {
                    SizeEntry::Finite(n) => BlockSize::Finite(*n),
                    SizeEntry::Named(s) if s == "omega" => BlockSize::Omega,
                    SizeEntry::Named(s) => {
                        bail!("block {i}: size {s:?} is neither a number nor \"omega\"")
                    }
                };
                Ok(LexBlock { kind, size })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LexSumPresentation::new(index, blocks)?)
    }
}

pub fn dump_structure(r: &RelStruct) -> Result<String> {
    Ok(toml::to_string(&InputFile::Structure(
        StructureFile::from_relstruct(r),
    ))?)
}
