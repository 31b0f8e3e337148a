//! The graded age algebra: types of each degree as a basis, the product
//! counting splittings of representatives, and experiments on it.

mod hereditary;
mod shuffle;

pub use hereditary::{is_hereditary, isomorphy_classes};
pub use shuffle::{shuffle, shuffle_words, ShuffleCombination, ShuffleWord};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::CanonicalCode;
use crate::error::{Error, Result};
use crate::linalg::{null_space, rank_exact, ExactMatrix};
use crate::presentation::Source;
use crate::structure::RelStruct;
use crate::subsets::KSubsets;

/// Types of degree `0..=N` with representatives, and for every type the
/// number of ways its representative splits into a part of type `σ` and a
/// complement of type `τ`.
type SplitCounts = HashMap<(usize, usize, usize), u64>;

#[derive(Clone, Debug)]
pub struct AgeBasis {
    pub source: String,
    levels: Vec<Vec<(CanonicalCode, RelStruct)>>,
    index: Vec<HashMap<CanonicalCode, usize>>,
    /// `splits[d][ρ][(m, σ, τ)]`, with `σ` of degree `m` and `τ` of `d − m`.
    splits: Vec<Vec<SplitCounts>>,
}

impl AgeBasis {
    pub fn from_source(source: &Source, label: &str, max_degree: usize) -> Result<Self> {
        let mut levels = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let level: Vec<(CanonicalCode, RelStruct)> = match source {
                Source::Presented(p) => p.enumerate_age(n).into_iter().collect(),
                Source::Finite(r) => {
                    if n > r.domain_size() {
                        Vec::new()
                    } else {
                        finite_level(r, n)?
                    }
                }
            };
            levels.push(level);
        }
        Self::from_levels(label, levels)
    }

    /// Builds the split tables for explicitly given levels; level `n` must
    /// hold distinct types of `n`-element structures whose restrictions
    /// all appear in the lower levels.
    pub fn from_levels(label: &str, levels: Vec<Vec<(CanonicalCode, RelStruct)>>) -> Result<Self> {
        let index: Vec<HashMap<CanonicalCode, usize>> = levels
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(i, (c, _))| (c.clone(), i))
                    .collect()
            })
            .collect();
        for (n, level) in levels.iter().enumerate() {
            if index[n].len() != level.len() {
                return Err(Error::Inconsistent(format!("repeated type at degree {n}")));
            }
            if let Some((_, r)) = level.iter().find(|(_, r)| r.domain_size() != n) {
                return Err(Error::Inconsistent(format!(
                    "degree {n} representative has {} elements",
                    r.domain_size()
                )));
            }
        }
        let mut memo: HashMap<RelStruct, CanonicalCode> = HashMap::new();
        let mut type_of = |r: RelStruct| -> Result<usize> {
            let n = r.domain_size();
            let code = match memo.get(&r) {
                Some(c) => c.clone(),
                None => {
                    let c = r.canonical_code();
                    memo.insert(r, c.clone());
                    c
                }
            };
            index[n].get(&code).copied().ok_or_else(|| {
                Error::Inconsistent(format!(
                    "a restriction of size {n} is missing from the basis"
                ))
            })
        };
        let mut splits = Vec::with_capacity(levels.len());
        for (d, level) in levels.iter().enumerate() {
            let mut per_type = Vec::with_capacity(level.len());
            for (_, rep) in level {
                let full = (1u64 << d) - 1;
                let mut table: HashMap<(usize, usize, usize), u64> = HashMap::new();
                for mask in 0..=full {
                    let sigma = type_of(rep.restrict_mask(mask))?;
                    let tau = type_of(rep.restrict_mask(full & !mask))?;
                    *table
                        .entry((mask.count_ones() as usize, sigma, tau))
                        .or_insert(0) += 1;
                }
                per_type.push(table);
            }
            splits.push(per_type);
        }
        Ok(AgeBasis {
            source: label.to_string(),
            levels,
            index,
            splits,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dimension(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, Vec::len)
    }

    pub fn types(&self, n: usize) -> &[(CanonicalCode, RelStruct)] {
        &self.levels[n]
    }

    pub fn index_of(&self, n: usize, code: &CanonicalCode) -> Option<usize> {
        self.index.get(n)?.get(code).copied()
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree() {
            return Err(Error::DegreeOverflow {
                requested: d,
                max: self.max_degree(),
            });
        }
        Ok(())
    }

    /// Coefficients of `σ · τ` on the types of degree `m + n`.
    pub fn structure_constants(
        &self,
        sigma: (usize, usize),
        tau: (usize, usize),
    ) -> Result<BTreeMap<usize, u64>> {
        let (m, s) = sigma;
        let (n, t) = tau;
        self.check_degree(m + n)?;
        if s >= self.dimension(m) || t >= self.dimension(n) {
            return Err(Error::Inconsistent("type index outside the basis".into()));
        }
        let mut out = BTreeMap::new();
        for (rho, table) in self.splits[m + n].iter().enumerate() {
            if let Some(&c) = table.get(&(m, s, t)) {
                out.insert(rho, c);
            }
        }
        Ok(out)
    }
}

fn finite_level(r: &RelStruct, n: usize) -> Result<Vec<(CanonicalCode, RelStruct)>> {
    let m = r.domain_size();
    if m >= 64 {
        return Err(Error::DomainTooLarge(m));
    }
    let mut out = BTreeMap::new();
    for mask in KSubsets::new(m, n) {
        let (code, form) = crate::canon::canonical_form(&r.restrict_mask(mask));
        out.entry(code).or_insert(form);
    }
    Ok(out.into_iter().collect())
}

/// Finitely supported rational combination of types, keyed by
/// `(degree, index)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::basis(0, 0)
    }

    pub fn basis(degree: usize, index: usize) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(degree, index, BigRational::one());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), BigRational)>) -> Self {
        let mut e = AlgebraElement::zero();
        for ((d, i), c) in terms {
            e.add_term(d, i, c);
        }
        e
    }

    pub fn add_term(&mut self, degree: usize, index: usize, c: BigRational) {
        let key = (degree, index);
        let sum = self.terms.remove(&key).unwrap_or_else(BigRational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, degree: usize, index: usize) -> BigRational {
        self.terms
            .get(&(degree, index))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(d, _)| d).max()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (&(d, i), c) in &other.terms {
            out.add_term(d, i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(d, i), c)| format!("{c}*t{d}_{i}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn multiply(
    basis: &AgeBasis,
    u: &AlgebraElement,
    v: &AlgebraElement,
) -> Result<AlgebraElement> {
    if let (Some(a), Some(b)) = (u.max_degree(), v.max_degree()) {
        basis.check_degree(a + b)?;
    }
    let mut out = AlgebraElement::zero();
    for (&(m, s), cu) in &u.terms {
        for (&(n, t), cv) in &v.terms {
            let c = cu * cv;
            for (rho, k) in basis.structure_constants((m, s), (n, t))? {
                out.add_term(m + n, rho, &c * BigRational::from_integer(BigInt::from(k)));
            }
        }
    }
    Ok(out)
}

/// Sum of all one-element types.
pub fn e_element(basis: &AgeBasis) -> Result<AlgebraElement> {
    basis.check_degree(1)?;
    Ok(AlgebraElement::from_terms(
        (0..basis.dimension(1)).map(|i| ((1, i), BigRational::one())),
    ))
}

/// Matrix of `v ↦ u · v` from degree `n` to degree `deg(u) + n`; rows are
/// target types, columns source types. `u` must be homogeneous.
#[allow(clippy::needless_range_loop)]
fn multiplication_matrix(basis: &AgeBasis, u: &AlgebraElement, n: usize) -> Result<ExactMatrix> {
    let m = u.max_degree().unwrap_or(0);
    basis.check_degree(m + n)?;
    let rows = basis.dimension(m + n);
    let cols = basis.dimension(n);
    // entries[ρ][t]: coefficient of ρ in u·t
    let mut entries = vec![vec![BigRational::zero(); cols]; rows];
    for (&(d, s), c) in &u.terms {
        if d != m {
            return Err(Error::Inconsistent(
                "multiplication map needs a homogeneous element".into(),
            ));
        }
        for t in 0..cols {
            for (rho, k) in basis.structure_constants((m, s), (n, t))? {
                entries[rho][t] += c * BigRational::from_integer(BigInt::from(k));
            }
        }
    }
    ExactMatrix::from_rational_rows(cols, &entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ERegularity {
    pub degree: usize,
    /// Rank of `u ↦ e·u` on degree `degree`.
    pub rank: usize,
    pub dim_n: usize,
    pub dim_next: usize,
}

impl ERegularity {
    /// Multiplication by `e` is injective on this degree.
    pub fn regular(&self) -> bool {
        self.rank == self.dim_n
    }
}

pub fn e_regularity(basis: &AgeBasis, n: usize) -> Result<ERegularity> {
    let e = e_element(basis)?;
    let matrix = multiplication_matrix(basis, &e, n)?;
    Ok(ERegularity {
        degree: n,
        rank: rank_exact(&matrix),
        dim_n: basis.dimension(n),
        dim_next: basis.dimension(n + 1),
    })
}

pub fn check_e_regular(basis: &AgeBasis, n: usize) -> Result<bool> {
    Ok(e_regularity(basis, n)?.regular())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisorReport {
    /// Candidate elements `u` whose multiplication maps were solved.
    pub candidates_checked: usize,
    /// Degree pairs `(deg u, deg v)` examined.
    pub degree_pairs: Vec<(usize, usize)>,
    pub witness: Option<(AlgebraElement, AlgebraElement)>,
}

/// Looks for homogeneous `u, v ≠ 0` with `uv = 0` and `deg u + deg v ≤
/// max_degree`. For each candidate `u` (every basis type, every sum or
/// difference of two types, then seeded random combinations with small
/// coefficients, up to `budget` per degree pair) the null space of
/// `v ↦ uv` is computed exactly, so all `v` are covered for that `u`.
/// A falsification tool: finding nothing proves nothing.
pub fn search_zero_divisors(
    basis: &AgeBasis,
    max_degree: usize,
    budget: usize,
) -> Result<ZeroDivisorReport> {
    basis.check_degree(max_degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut report = ZeroDivisorReport {
        candidates_checked: 0,
        degree_pairs: Vec::new(),
        witness: None,
    };
    for a in 1..max_degree {
        for b in 1..=max_degree - a {
            report.degree_pairs.push((a, b));
            let dim = basis.dimension(a);
            let mut candidates: Vec<Vec<(usize, i64)>> = (0..dim).map(|i| vec![(i, 1)]).collect();
            for i in 0..dim {
                for j in i + 1..dim {
                    candidates.push(vec![(i, 1), (j, 1)]);
                    candidates.push(vec![(i, 1), (j, -1)]);
                }
            }
            candidates.truncate(budget);
            while candidates.len() < budget && dim > 1 {
                let support = rng.gen_range(2..=dim.min(4));
                let mut u: Vec<(usize, i64)> = Vec::with_capacity(support);
                while u.len() < support {
                    let i = rng.gen_range(0..dim);
                    if u.iter().all(|&(j, _)| j != i) {
                        let mut c = rng.gen_range(-3i64..=3);
                        if c == 0 {
                            c = 1;
                        }
                        u.push((i, c));
                    }
                }
                candidates.push(u);
            }
            for cand in candidates {
                let u = AlgebraElement::from_terms(
                    cand.iter()
                        .map(|&(i, c)| ((a, i), BigRational::from_integer(c.into()))),
                );
                report.candidates_checked += 1;
                let matrix = multiplication_matrix(basis, &u, b)?;
                if let Some(v) = null_space(&matrix).into_iter().next() {
                    let v = AlgebraElement::from_terms(
                        v.into_iter().enumerate().map(|(t, c)| ((b, t), c)),
                    );
                    report.witness = Some((u, v));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TournamentIdentity {
    pub degree: usize,
    /// `n!`.
    pub factorial: BigInt,
    /// Coefficient of the acyclic type in `eⁿ`, if the age has one.
    pub acyclic_coefficient: Option<BigRational>,
    /// Every type of degree `n` has coefficient `n!` in `eⁿ`.
    pub holds: bool,
}

/// `eⁿ = n!(aₙ + bₙ)` in a tournament age: `aₙ` the acyclic type and `bₙ`
/// the sum of the types containing a cycle.
pub fn tournament_identity(basis: &AgeBasis, n: usize) -> Result<TournamentIdentity> {
    basis.check_degree(n)?;
    for (_, r) in basis.types(2.min(basis.max_degree())) {
        if r.domain_size() == 2 && !crate::tournament::is_tournament(r)? {
            return Err(Error::HypothesisUnmet(
                "the age is not an age of tournaments".into(),
            ));
        }
    }
    let mut power = AlgebraElement::one();
    let e = e_element(basis)?;
    for _ in 0..n {
        power = multiply(basis, &power, &e)?;
    }
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    let expected = BigRational::from_integer(factorial.clone());
    let holds = (0..basis.dimension(n)).all(|i| power.coefficient(n, i) == expected)
        && power.terms().keys().all(|&(d, _)| d == n);
    let acyclic = crate::presentation::BlockKind::AcyclicTournament
        .structure(n)
        .canonical_code();
    let acyclic_coefficient = basis.index_of(n, &acyclic).map(|i| power.coefficient(n, i));
    Ok(TournamentIdentity {
        degree: n,
        factorial,
        acyclic_coefficient,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures;

    fn basis(name: &str, n: usize) -> AgeBasis {
        let f = fixtures::builtin(name).unwrap();
        AgeBasis::from_source(&f.source, name, n).unwrap()
    }

    #[test]
    fn clique_square() {
        let b =
            AgeBasis::from_source(&fixtures::infinite_cliques(1).unwrap().into(), "K", 3).unwrap();
        let c = b.structure_constants((1, 0), (1, 0)).unwrap();
        assert_eq!(c, BTreeMap::from([(0, 2)]));
    }

    #[test]
    fn unit_and_overflow() {
        let b = basis("colored-chain:2", 3);
        for s in 0..b.dimension(2) {
            let c = b.structure_constants((2, s), (0, 0)).unwrap();
            assert_eq!(c, BTreeMap::from([(s, 1)]));
        }
        assert!(matches!(
            b.structure_constants((2, 0), (2, 0)),
            Err(Error::DegreeOverflow {
                requested: 4,
                max: 3
            })
        ));
        let u = AlgebraElement::basis(2, 1);
        assert_eq!(multiply(&b, &AlgebraElement::one(), &u).unwrap(), u);
    }

    #[test]
    fn tournament_square_is_twice_the_acyclic_pair() {
        let b = basis("T3", 3);
        let e = e_element(&b).unwrap();
        let sq = multiply(&b, &e, &e).unwrap();
        assert_eq!(b.dimension(2), 1);
        assert_eq!(
            sq,
            AlgebraElement::basis(2, 0).scale(&BigRational::from_integer(2.into()))
        );
    }

    #[test]
    fn e_in_two_colors() {
        let b = basis("colored-chain:2", 2);
        assert_eq!(e_element(&b).unwrap().terms().len(), 2);
        assert!(check_e_regular(&b, 0).unwrap());
        assert!(check_e_regular(&b, 1).unwrap());
        assert!(matches!(
            check_e_regular(&b, 2),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn zero_divisor_search_finds_planted_zero() {
        // the age of a 2-element independent set: degree 3 is empty, so
        // every product landing there vanishes
        let r = RelStruct::empty(crate::structure::Signature::binary(), 2);
        let b = AgeBasis::from_source(&Source::Finite(r), "I2", 3).unwrap();
        let rep = search_zero_divisors(&b, 3, 10).unwrap();
        assert!(rep.witness.is_some());
    }

    #[test]
    fn tournament_identity_low_degrees() {
        let b = basis("T2", 4);
        for n in 0..=4 {
            let t = tournament_identity(&b, n).unwrap();
            assert!(t.holds, "n={n}");
        }
        let g = basis("two-cliques", 3);
        assert!(matches!(
            tournament_identity(&g, 3),
            Err(Error::HypothesisUnmet(_))
        ));
    }
}
