//! Inclusion matrices between subset levels and the profile inequality they
//! imply.

use std::collections::HashMap;

use crate::canon::CanonicalCode;
use crate::error::{Error, Result};
use crate::linalg::{rank_exact, ExactMatrix};
use crate::structure::RelStruct;
use crate::subsets::{binomial, KSubsets};

/// The `C(m,n) × C(m,n+k)` matrix with a 1 where the row subset is inside
/// the column subset. Labels are bitmasks in colex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub matrix: ExactMatrix,
    pub row_labels: Vec<u64>,
    pub col_labels: Vec<u64>,
}

impl IncidenceMatrix {
    /// Header line `m n k rows cols`, then one row per line.
    pub fn dump(&self) -> String {
        format!(
            "{} {} {} {} {}\n{}",
            self.m,
            self.n,
            self.k,
            self.matrix.rows(),
            self.matrix.cols(),
            self.matrix.to_text()
        )
    }
}

pub fn build_incidence(m: usize, n: usize, k: usize) -> Result<IncidenceMatrix> {
    if n + k > m {
        return Err(Error::SizeOutOfRange { n: n + k, max: m });
    }
    if m >= 64 {
        return Err(Error::DomainTooLarge(m));
    }
    let row_labels: Vec<u64> = KSubsets::new(m, n).collect();
    let col_labels: Vec<u64> = KSubsets::new(m, n + k).collect();
    let mut matrix = ExactMatrix::zeros(row_labels.len(), col_labels.len());
    for (i, &p) in row_labels.iter().enumerate() {
        for (j, &q) in col_labels.iter().enumerate() {
            if p & !q == 0 {
                matrix.set(i, j, 1);
            }
        }
    }
    Ok(IncidenceMatrix {
        m,
        n,
        k,
        matrix,
        row_labels,
        col_labels,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KantorCase {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub rank: usize,
    pub rows: usize,
    pub hypothesis: bool,
}

impl KantorCase {
    pub fn full_row_rank(&self) -> bool {
        self.rank == self.rows
    }
}

/// Rank of the inclusion matrix, whether or not `2n + k ≤ m`.
pub fn incidence_rank(m: usize, n: usize, k: usize) -> Result<KantorCase> {
    let inc = build_incidence(m, n, k)?;
    Ok(KantorCase {
        m,
        n,
        k,
        rank: rank_exact(&inc.matrix),
        rows: inc.matrix.rows(),
        hypothesis: 2 * n + k <= m,
    })
}

/// Full row rank of the inclusion matrix when `2n + k ≤ m`.
pub fn verify_kantor(m: usize, n: usize, k: usize) -> Result<bool> {
    if 2 * n + k > m {
        return Err(Error::HypothesisUnmet(format!(
            "2n+k = {} exceeds m = {m}",
            2 * n + k
        )));
    }
    let case = incidence_rank(m, n, k)?;
    debug_assert_eq!(case.rows as u128, binomial(m as u64, n as u64));
    Ok(case.full_row_rank())
}

/// All `(n, k)` with `2n + k ≤ m`.
pub fn kantor_sweep(m: usize) -> Result<Vec<KantorCase>> {
    let mut out = Vec::new();
    for n in 0..=m / 2 {
        for k in 0..=m - 2 * n {
            out.push(incidence_rank(m, n, k)?);
        }
    }
    Ok(out)
}

/// The quantities behind `φ(n) ≤ φ(n+k)`: the type-indicator matrix times
/// the inclusion matrix has rank `φ(n)`, and its columns depend only on the
/// type of the column subset, so there are at most `φ(n+k)` distinct ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncidenceCertificate {
    pub phi_n: usize,
    pub phi_n_plus_k: usize,
    pub rank: usize,
    pub distinct_columns: usize,
    /// Columns of the product agree on subsets of the same type.
    pub columns_follow_types: bool,
}

impl IncidenceCertificate {
    pub fn holds(&self) -> bool {
        self.rank >= self.phi_n
            && self.columns_follow_types
            && self.distinct_columns <= self.phi_n_plus_k
            && self.phi_n <= self.phi_n_plus_k
    }
}

pub fn incidence_certificate(r: &RelStruct, n: usize, k: usize) -> Result<IncidenceCertificate> {
    let m = r.domain_size();
    if m < 2 * n + k {
        return Err(Error::HypothesisUnmet(format!(
            "domain size {m} is below 2n+k = {}",
            2 * n + k
        )));
    }
    let inc = build_incidence(m, n, k)?;
    let type_ids = |labels: &[u64]| -> Vec<usize> {
        let mut ids: HashMap<CanonicalCode, usize> = HashMap::new();
        labels
            .iter()
            .map(|&s| {
                let next = ids.len();
                *ids.entry(r.restrict_mask(s).canonical_code())
                    .or_insert(next)
            })
            .collect()
    };
    let row_types = type_ids(&inc.row_labels);
    let col_types = type_ids(&inc.col_labels);
    let phi_n = row_types.iter().max().map_or(0, |&t| t + 1);
    let phi_nk = col_types.iter().max().map_or(0, |&t| t + 1);
    let mut indicator = ExactMatrix::zeros(phi_n, inc.row_labels.len());
    for (j, &t) in row_types.iter().enumerate() {
        indicator.set(t, j, 1);
    }
    let product = indicator.mul(&inc.matrix)?;
    let mut column_of_type: HashMap<usize, Vec<i64>> = HashMap::new();
    let mut columns_follow_types = true;
    let mut distinct: Vec<Vec<i64>> = Vec::new();
    for (j, &t) in col_types.iter().enumerate() {
        let col: Vec<i64> = (0..phi_n).map(|i| product.get(i, j)).collect();
        match column_of_type.get(&t) {
            Some(c) => columns_follow_types &= *c == col,
            None => {
                column_of_type.insert(t, col.clone());
            }
        }
        if !distinct.contains(&col) {
            distinct.push(col);
        }
    }
    Ok(IncidenceCertificate {
        phi_n,
        phi_n_plus_k: phi_nk,
        rank: rank_exact(&product),
        distinct_columns: distinct.len(),
        columns_follow_types,
    })
}

pub fn profile_inequality_via_incidence(r: &RelStruct, n: usize, k: usize) -> Result<bool> {
    Ok(incidence_certificate(r, n, k)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures::path;

    #[test]
    fn shapes() {
        let a = build_incidence(2, 1, 1).unwrap();
        assert_eq!((a.matrix.rows(), a.matrix.cols()), (2, 1));
        assert_eq!(a.matrix.row(0), &[1]);
        let b = build_incidence(5, 2, 1).unwrap();
        assert_eq!((b.matrix.rows(), b.matrix.cols()), (10, 10));
        let c = build_incidence(4, 0, 2).unwrap();
        assert_eq!((c.matrix.rows(), c.matrix.cols()), (1, 6));
        assert!(c.matrix.row(0).iter().all(|&v| v == 1));
        assert!(build_incidence(3, 2, 2).is_err());
    }

    #[test]
    fn kantor_examples() {
        assert!(verify_kantor(5, 2, 1).unwrap());
        assert_eq!(incidence_rank(5, 2, 1).unwrap().rank, 10);
        assert_eq!(incidence_rank(3, 1, 1).unwrap().rank, 3);
        assert!(matches!(
            verify_kantor(2, 1, 1),
            Err(Error::HypothesisUnmet(_))
        ));
        let direct = incidence_rank(2, 1, 1).unwrap();
        assert_eq!((direct.rank, direct.rows, direct.hypothesis), (1, 2, false));
    }

    #[test]
    fn dump_has_header() {
        let d = build_incidence(3, 1, 1).unwrap().dump();
        let mut lines = d.lines();
        assert_eq!(lines.next(), Some("3 1 1 3 3"));
        assert_eq!(lines.next(), Some("1 1 0"));
    }

    #[test]
    fn certificates() {
        assert!(profile_inequality_via_incidence(&path(6), 2, 2).unwrap());
        assert!(profile_inequality_via_incidence(&path(6), 0, 3).unwrap());
        let c = incidence_certificate(&path(7), 2, 1).unwrap();
        assert_eq!((c.phi_n, c.rank), (2, 2));
        assert!(incidence_certificate(&path(4), 2, 1).is_err());
    }
}
