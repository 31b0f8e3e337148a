//! Acyclic components of tournaments and the polynomial/exponential split
//! of tournament profiles.

use std::fmt;

use crate::decomposition::{predict_growth_degree, presentation_decomposition};
use crate::error::{Error, Result};
use crate::presentation::{
    BlockKind, BlockSize, LexSumPresentation, MultichainPresentation, Presentation, Source,
};
use crate::profile::profile_sequence;
use crate::structure::{is_autonomous, RelStruct};

/// Loopless, and exactly one arc between any two distinct vertices.
pub fn is_tournament(r: &RelStruct) -> Result<bool> {
    r.require_single_binary()?;
    let m = r.domain_size();
    for x in 0..m {
        if r.has_arc(x, x) {
            return Ok(false);
        }
        for y in x + 1..m {
            if r.has_arc(x, y) == r.has_arc(y, x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A subset of a tournament is acyclic iff it contains no directed triangle.
pub fn is_acyclic(t: &RelStruct, set: &[usize]) -> bool {
    for (i, &a) in set.iter().enumerate() {
        for (j, &b) in set.iter().enumerate().skip(i + 1) {
            for &c in &set[j + 1..] {
                let forward = t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a);
                let backward = t.has_arc(b, a) && t.has_arc(c, b) && t.has_arc(a, c);
                if forward || backward {
                    return false;
                }
            }
        }
    }
    true
}

fn acyclic_autonomous(t: &RelStruct, set: &[usize]) -> Result<bool> {
    Ok(is_acyclic(t, set) && is_autonomous(t, set)?)
}

/// The maximal acyclic autonomous subsets, each sorted, ordered by least
/// element. Grown from singletons by merging any two blocks whose union is
/// still acyclic and autonomous; the fixed point is checked to be a
/// partition into acyclic autonomous sets.
pub fn acyclic_components(t: &RelStruct) -> Result<Vec<Vec<usize>>> {
    if !is_tournament(t)? {
        return Err(Error::HypothesisUnmet("not a tournament".into()));
    }
    let mut blocks: Vec<Vec<usize>> = (0..t.domain_size()).map(|v| vec![v]).collect();
    'merge: loop {
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                let mut union = blocks[a].clone();
                union.extend(&blocks[b]);
                union.sort_unstable();
                if acyclic_autonomous(t, &union)? {
                    blocks[a] = union;
                    blocks.remove(b);
                    continue 'merge;
                }
            }
        }
        break;
    }
    let mut seen = vec![false; t.domain_size()];
    for block in &blocks {
        if !acyclic_autonomous(t, block)? {
            return Err(Error::Inconsistent(format!(
                "component {block:?} is not acyclic autonomous"
            )));
        }
        for &v in block {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Inconsistent(format!(
                    "vertex {v} lies in two components"
                )));
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Inconsistent(
            "components do not cover the vertex set".into(),
        ));
    }
    blocks.sort();
    Ok(blocks)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TournamentRegime {
    /// Profile bounded by a polynomial of the given degree.
    Polynomial {
        degree: usize,
    },
    AtLeastExponential,
    FiniteTrivial,
}

impl fmt::Display for TournamentRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TournamentRegime::Polynomial { degree } => write!(f, "polynomial (degree {degree})"),
            TournamentRegime::AtLeastExponential => f.write_str("at least exponential"),
            TournamentRegime::FiniteTrivial => f.write_str("finite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TournamentReport {
    pub regime: TournamentRegime,
    /// Acyclic components of the finite tournament, or of the largest
    /// truncation inspected for a multichain presentation.
    pub components: Option<Vec<Vec<usize>>>,
    /// Component counts of successive truncations (multichain only).
    pub truncation_components: Vec<usize>,
    /// Profile values `φ(0..=window)`.
    pub profile: Vec<u64>,
}

/// Truncation lengths compared when classifying a multichain presentation.
const TRUNCATIONS: [usize; 3] = [2, 3, 4];

/// Decide the regime of a tournament-valued source. Sums over a finite
/// index are classified from their block kinds, multichain presentations
/// by whether the number of acyclic components keeps growing along
/// truncations. The profile window is attached as evidence.
pub fn classify(source: &Source, window: usize) -> Result<TournamentReport> {
    match source {
        Source::Finite(t) => {
            let components = acyclic_components(t)?;
            let profile = profile_sequence(source, "", window.min(t.domain_size()))?.values;
            Ok(TournamentReport {
                regime: TournamentRegime::FiniteTrivial,
                components: Some(components),
                truncation_components: Vec::new(),
                profile,
            })
        }
        Source::Presented(Presentation::LexSum(p)) => classify_lexsum(p, source, window),
        Source::Presented(Presentation::Multichain(p)) => classify_multichain(p, source, window),
    }
}

fn classify_lexsum(
    p: &LexSumPresentation,
    source: &Source,
    window: usize,
) -> Result<TournamentReport> {
    if !is_tournament(p.index())? {
        return Err(Error::HypothesisUnmet("index is not a tournament".into()));
    }
    for (i, b) in p.blocks().iter().enumerate() {
        let point = b.size == BlockSize::Finite(1)
            && matches!(b.kind, BlockKind::Clique | BlockKind::IndependentSet);
        if !(b.kind == BlockKind::AcyclicTournament || point) {
            return Err(Error::HypothesisUnmet(format!(
                "block {i} ({}) is not a tournament",
                b.kind
            )));
        }
    }
    if p.infinite_blocks() == 0 {
        let (t, _) = p.truncation(0);
        return classify(&Source::Finite(t), window);
    }
    let degree = predict_growth_degree(&presentation_decomposition(p)?)?;
    Ok(TournamentReport {
        regime: TournamentRegime::Polynomial { degree },
        components: None,
        truncation_components: Vec::new(),
        profile: profile_sequence(source, "", window)?.values,
    })
}

fn classify_multichain(
    p: &MultichainPresentation,
    source: &Source,
    window: usize,
) -> Result<TournamentReport> {
    let mut counts = Vec::new();
    let mut growing = Vec::new();
    let mut last = None;
    for &t in &TRUNCATIONS {
        let (trunc, _) = p.truncation(t);
        if !is_tournament(&trunc)? {
            return Err(Error::HypothesisUnmet(
                "presentation does not describe a tournament".into(),
            ));
        }
        let components = acyclic_components(&trunc)?;
        counts.push(components.len());
        growing = components.iter().map(Vec::len).collect::<Vec<_>>();
        last = Some(components);
    }
    let profile = profile_sequence(source, "", window)?.values;
    let regime = if counts.windows(2).any(|w| w[1] > w[0]) {
        TournamentRegime::AtLeastExponential
    } else {
        // same number of components at every cut; the infinite ones are
        // those that grew between the last two truncations
        let (previous, _) = p.truncation(TRUNCATIONS[TRUNCATIONS.len() - 2]);
        let mut before: Vec<usize> = acyclic_components(&previous)?
            .iter()
            .map(Vec::len)
            .collect();
        let mut after = growing;
        before.sort_unstable();
        after.sort_unstable();
        let infinite = before.iter().zip(&after).filter(|(b, a)| a > b).count();
        match infinite {
            0 => TournamentRegime::FiniteTrivial,
            k => TournamentRegime::Polynomial { degree: k - 1 },
        }
    };
    Ok(TournamentReport {
        regime,
        components: last,
        truncation_components: counts,
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures::{
        acyclic_tournament, three_cycle, tournament_fixture, tournament_lexsum,
    };
    use crate::presentation::LexBlock;

    #[test]
    fn recognizes_tournaments() {
        assert!(is_tournament(&three_cycle()).unwrap());
        assert!(!is_tournament(&RelStruct::digraph(2, &[(0, 1), (1, 0)])).unwrap());
        assert!(is_tournament(&acyclic_tournament(4)).unwrap());
        assert!(!is_tournament(&RelStruct::digraph(2, &[])).unwrap());
        assert!(!is_tournament(&RelStruct::digraph(1, &[(0, 0)])).unwrap());
    }

    #[test]
    fn components_of_small_tournaments() {
        assert_eq!(
            acyclic_components(&acyclic_tournament(4)).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
        assert_eq!(
            acyclic_components(&three_cycle()).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        let sum = LexSumPresentation::new(
            three_cycle(),
            vec![LexBlock::finite(BlockKind::AcyclicTournament, 3); 3],
        )
        .unwrap();
        let (t, owner) = sum.truncation(0);
        let components = acyclic_components(&t).unwrap();
        assert_eq!(components.len(), 3);
        for c in &components {
            assert_eq!(c.len(), 3);
            assert!(c.iter().all(|&v| owner[v] == owner[c[0]]));
        }
    }

    #[test]
    fn non_tournament_is_rejected() {
        assert!(acyclic_components(&RelStruct::digraph(2, &[])).is_err());
        let cliques = crate::presentation::fixtures::infinite_cliques(2).unwrap();
        assert!(classify(&Source::from(cliques), 4).is_err());
    }

    #[test]
    fn regimes() {
        let t3 = classify(&Source::from(tournament_lexsum("T3").unwrap()), 6).unwrap();
        assert_eq!(t3.regime, TournamentRegime::Polynomial { degree: 2 });
        let omega = classify(&Source::from(tournament_lexsum("omega").unwrap()), 6).unwrap();
        assert_eq!(omega.regime, TournamentRegime::Polynomial { degree: 0 });
        assert_eq!(omega.profile, vec![1; 7]);
        let c3 = classify(&Source::from(tournament_fixture("C3omega").unwrap()), 7).unwrap();
        assert_eq!(c3.regime, TournamentRegime::AtLeastExponential);
        assert_eq!(c3.truncation_components, vec![6, 9, 12]);
        let t2 = classify(&Source::from(tournament_fixture("T2").unwrap()), 5).unwrap();
        assert_eq!(t2.regime, TournamentRegime::Polynomial { degree: 1 });
        let finite = classify(&Source::from(three_cycle()), 5).unwrap();
        assert_eq!(finite.regime, TournamentRegime::FiniteTrivial);
        assert_eq!(finite.profile, vec![1, 1, 1, 1]);
    }
}
