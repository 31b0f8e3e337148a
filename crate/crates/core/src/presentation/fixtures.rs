//! Named presentations and finite structures used throughout the tests, the
//! benches and the command line.

use crate::error::{Error, Result};
use crate::presentation::lexsum::{BlockKind, LexBlock, LexSumPresentation};
use crate::presentation::multichain::{Comparator, MultichainPresentation, SymbolRule};
use crate::presentation::{Presentation, Source};
use crate::structure::{RelStruct, Signature};

/// `k` colors densely interleaved on a chain: one unary symbol per color and
/// a linear order. Every `k`-colored finite chain occurs, so `φ(n) = kⁿ`.
pub fn colored_dense_chain(k: usize) -> Result<MultichainPresentation> {
    if k == 0 {
        return Err(Error::InvalidPresentation(
            "a colored chain needs at least one color".into(),
        ));
    }
    let mut arities = vec![1; k];
    arities.push(2);
    let signature = Signature::new(arities)?;
    let mut rules: Vec<SymbolRule> = (0..k)
        .map(|c| SymbolRule::Unary {
            slices: (0..k).map(|x| x == c).collect(),
        })
        .collect();
    rules.push(SymbolRule::binary_from_fn(
        k,
        0,
        |x, y, c| match c {
            Comparator::Less => true,
            Comparator::Equal => x < y,
            Comparator::Greater => false,
        },
        |_, _| false,
        |_, _| false,
    ));
    let finite = RelStruct::empty(signature.clone(), 0);
    MultichainPresentation::new(signature, finite, k, rules)
}

/// The product of `s` by ω: every slice is a copy of `s`, and two elements
/// in different positions relate exactly as their slices do in `s`.
pub fn product_of(s: &RelStruct) -> Result<MultichainPresentation> {
    let arities = s.signature().arities();
    if let Some(&a) = arities.iter().find(|&&a| a > 2) {
        return Err(Error::InvalidPresentation(format!(
            "arity {a} unsupported in products"
        )));
    }
    let v = s.domain_size();
    let rules = arities
        .iter()
        .enumerate()
        .map(|(sym, &a)| {
            if a == 1 {
                SymbolRule::Unary {
                    slices: (0..v).map(|x| s.holds(sym, &[x])).collect(),
                }
            } else {
                SymbolRule::binary_from_fn(
                    v,
                    0,
                    |x, y, _| s.holds(sym, &[x, y]),
                    |_, _| false,
                    |_, _| false,
                )
            }
        })
        .collect();
    let finite = RelStruct::empty(s.signature().clone(), 0);
    MultichainPresentation::new(s.signature().clone(), finite, v, rules)
}

pub fn three_cycle() -> RelStruct {
    RelStruct::digraph(3, &[(0, 1), (1, 2), (2, 0)])
}

/// Reflexive order on `{0..n}`.
pub fn chain_poset(n: usize) -> RelStruct {
    BlockKind::Chain.structure(n)
}

pub const TOURNAMENT_NAMES: [&str; 5] = ["omega", "T1", "T2", "T3", "C3omega"];

/// The tournaments obtained from the 3-cycle by replacing vertices with ω,
/// and the chain ω itself, as lexicographic sums. `C3omega` has no such form.
pub fn tournament_lexsum(name: &str) -> Result<LexSumPresentation> {
    let omega = LexBlock::omega(BlockKind::AcyclicTournament);
    let point = LexBlock::finite(BlockKind::AcyclicTournament, 1);
    match name {
        "omega" => LexSumPresentation::new(RelStruct::empty(Signature::binary(), 1), vec![omega]),
        "T1" => LexSumPresentation::new(three_cycle(), vec![omega, point, point]),
        "T2" => LexSumPresentation::new(three_cycle(), vec![omega, omega, point]),
        "T3" => LexSumPresentation::new(three_cycle(), vec![omega; 3]),
        "C3omega" => Err(Error::InvalidPresentation(
            "C3omega is a sum over ω, not over a finite index".into(),
        )),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

pub fn tournament_fixture(name: &str) -> Result<MultichainPresentation> {
    match name {
        "C3omega" => c3_omega(),
        _ => tournament_lexsum(name)?.to_multichain(),
    }
}

/// ω copies of the 3-cycle, each copy dominating the later ones.
fn c3_omega() -> Result<MultichainPresentation> {
    let c3 = three_cycle();
    let rule = SymbolRule::binary_from_fn(
        3,
        0,
        |x, y, c| match c {
            Comparator::Less => true,
            Comparator::Equal => c3.has_arc(x, y),
            Comparator::Greater => false,
        },
        |_, _| false,
        |_, _| false,
    );
    MultichainPresentation::new(
        Signature::binary(),
        RelStruct::empty(Signature::binary(), 0),
        3,
        vec![rule],
    )
}

/// Vertices `(0,i)` and `(1,j)` adjacent iff `i < j`; with `tilde`, the
/// second side is also a clique.
pub fn half_complete_bipartite(tilde: bool) -> Result<MultichainPresentation> {
    let rule = SymbolRule::binary_from_fn(
        2,
        0,
        |x, y, c| match (x, y, c) {
            (0, 1, Comparator::Less) | (1, 0, Comparator::Greater) => true,
            (1, 1, Comparator::Less) | (1, 1, Comparator::Greater) => tilde,
            _ => false,
        },
        |_, _| false,
        |_, _| false,
    );
    MultichainPresentation::new(
        Signature::binary(),
        RelStruct::empty(Signature::binary(), 0),
        2,
        vec![rule],
    )
}

/// `k` disjoint infinite cliques.
pub fn infinite_cliques(k: usize) -> Result<LexSumPresentation> {
    LexSumPresentation::new(
        RelStruct::empty(Signature::binary(), k),
        vec![LexBlock::omega(BlockKind::Clique); k],
    )
}

pub fn clique_plus_independent() -> Result<LexSumPresentation> {
    LexSumPresentation::new(
        RelStruct::empty(Signature::binary(), 2),
        vec![
            LexBlock::omega(BlockKind::Clique),
            LexBlock::omega(BlockKind::IndependentSet),
        ],
    )
}

pub fn path(n: usize) -> RelStruct {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    RelStruct::graph(n, &edges)
}

pub fn clique(n: usize) -> RelStruct {
    BlockKind::Clique.structure(n)
}

pub fn acyclic_tournament(n: usize) -> RelStruct {
    BlockKind::AcyclicTournament.structure(n)
}

/// Disjoint union of a clique on `a` vertices and `b` isolated vertices.
pub fn clique_and_independent(a: usize, b: usize) -> RelStruct {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in i + 1..a {
            edges.push((i, j));
        }
    }
    RelStruct::graph(a + b, &edges)
}

/// A named source with the facts the checks need about it.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub source: Source,
    /// Removing any single element leaves the age unchanged.
    pub empty_kernel: bool,
    /// Degree `k` of a product presentation, for the binomial bound.
    pub binomial_k: Option<usize>,
    /// `(r, k)` of a monomorphic decomposition: total finite block size and
    /// number of infinite blocks.
    pub eq10: Option<(usize, usize)>,
    pub tournament: bool,
}

impl Fixture {
    fn new(name: &str, source: impl Into<Source>) -> Self {
        Fixture {
            name: name.to_string(),
            source: source.into(),
            empty_kernel: false,
            binomial_k: None,
            eq10: None,
            tournament: false,
        }
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match &self.source {
            Source::Presented(p) => Some(p),
            Source::Finite(_) => None,
        }
    }
}

/// Builtin names accepted by [`builtin`]. Names ending in `:N` take a
/// numeric parameter.
pub const BUILTIN_NAMES: [&str; 20] = [
    "omega",
    "T1",
    "T2",
    "T3",
    "C3omega",
    "colored-chain:K",
    "two-cliques",
    "three-cliques",
    "clique-plus-independent",
    "half-bipartite",
    "half-bipartite-tilde",
    "product-point",
    "product-3chain",
    "path:N",
    "clique:N",
    "independent:N",
    "acyclic:N",
    "c3",
    "clique-independent:N",
    "chain-poset:N",
];

/// The presentation fixtures, with the window parameters they are checked at.
pub fn presentation_fixtures() -> Vec<Fixture> {
    let names = [
        "omega",
        "T1",
        "T2",
        "T3",
        "C3omega",
        "colored-chain:1",
        "colored-chain:2",
        "colored-chain:3",
        "two-cliques",
        "three-cliques",
        "clique-plus-independent",
        "half-bipartite",
        "half-bipartite-tilde",
        "product-point",
        "product-3chain",
    ];
    names
        .iter()
        .map(|n| builtin(n).expect("fixture names are valid"))
        .collect()
}

fn parse_param(name: &str, param: Option<&str>) -> Result<usize> {
    param
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn builtin(name: &str) -> Result<Fixture> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (name, None),
    };
    let param_value = || parse_param(name, param);
    if param.is_some()
        && !matches!(
            base,
            "colored-chain"
                | "path"
                | "clique"
                | "independent"
                | "acyclic"
                | "clique-independent"
                | "chain-poset"
        )
    {
        return Err(Error::UnknownFixture(name.to_string()));
    }
    let f = match base {
        "omega" => Fixture {
            empty_kernel: true,
            binomial_k: Some(0),
            eq10: Some((0, 1)),
            tournament: true,
            ..Fixture::new(name, tournament_lexsum("omega")?)
        },
        "T1" | "T2" | "T3" => {
            let p = tournament_lexsum(base)?;
            let eq10 = Some((p.finite_total(), p.infinite_blocks()));
            Fixture {
                empty_kernel: base == "T3",
                eq10,
                tournament: true,
                ..Fixture::new(name, p)
            }
        }
        "C3omega" => Fixture {
            empty_kernel: true,
            tournament: true,
            ..Fixture::new(name, c3_omega()?)
        },
        "colored-chain" => {
            let k = param_value()?;
            Fixture {
                empty_kernel: true,
                binomial_k: (k == 1).then_some(0),
                ..Fixture::new(name, colored_dense_chain(k)?)
            }
        }
        "two-cliques" => Fixture {
            empty_kernel: true,
            binomial_k: Some(1),
            eq10: Some((0, 2)),
            ..Fixture::new(name, infinite_cliques(2)?)
        },
        "three-cliques" => Fixture {
            empty_kernel: true,
            binomial_k: Some(2),
            eq10: Some((0, 3)),
            ..Fixture::new(name, infinite_cliques(3)?)
        },
        "clique-plus-independent" => Fixture {
            empty_kernel: true,
            eq10: Some((0, 2)),
            ..Fixture::new(name, clique_plus_independent()?)
        },
        "half-bipartite" | "half-bipartite-tilde" => Fixture {
            empty_kernel: true,
            ..Fixture::new(name, half_complete_bipartite(base.ends_with("tilde"))?)
        },
        "product-point" => Fixture {
            empty_kernel: true,
            binomial_k: Some(0),
            ..Fixture::new(name, product_of(&RelStruct::empty(Signature::binary(), 1))?)
        },
        "product-3chain" => Fixture {
            empty_kernel: true,
            binomial_k: Some(2),
            ..Fixture::new(name, product_of(&chain_poset(3))?)
        },
        "path" => Fixture::new(name, path(param_value()?)),
        "clique" => Fixture::new(name, clique(param_value()?)),
        "independent" => Fixture::new(name, RelStruct::empty(Signature::binary(), param_value()?)),
        "acyclic" => Fixture {
            tournament: true,
            ..Fixture::new(name, acyclic_tournament(param_value()?))
        },
        "c3" => Fixture {
            tournament: true,
            ..Fixture::new(name, three_cycle())
        },
        "clique-independent" => {
            let n = param_value()?;
            Fixture::new(name, clique_and_independent(n, n))
        }
        "chain-poset" => Fixture::new(name, chain_poset(param_value()?)),
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Ok(f)
}
