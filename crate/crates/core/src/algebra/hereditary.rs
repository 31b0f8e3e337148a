use std::collections::HashMap;

use crate::canon::CanonicalCode;
use crate::error::{Error, Result};
use crate::structure::RelStruct;

/// Largest ground set accepted by [`is_hereditary`].
pub const MAX_HEREDITARY_DOMAIN: usize = 5;

/// Class index of every subset of the domain, indexed by bitmask, under
/// isomorphy of induced substructures.
pub fn isomorphy_classes(r: &RelStruct) -> Result<Vec<usize>> {
    let m = r.domain_size();
    if m > 20 {
        return Err(Error::DomainTooLarge(m));
    }
    let mut ids: HashMap<CanonicalCode, usize> = HashMap::new();
    Ok((0..1u64 << m)
        .map(|mask| {
            let next = ids.len();
            *ids.entry(r.restrict_mask(mask).canonical_code())
                .or_insert(next)
        })
        .collect())
}

/// `classes[mask]` names the class of the subset `mask` of `{0..m}`.
/// Equivalent sets must have equal size and, for every class, the same
/// number of subsets in that class.
pub fn is_hereditary(m: usize, classes: &[usize]) -> Result<bool> {
    if m > MAX_HEREDITARY_DOMAIN {
        return Err(Error::DomainTooLarge(m));
    }
    if classes.len() != 1 << m {
        return Err(Error::InvalidTarget(format!(
            "expected {} class labels, got {}",
            1 << m,
            classes.len()
        )));
    }
    let class_count = classes.iter().max().map_or(0, |&c| c + 1);
    let counts: Vec<Vec<u32>> = (0..classes.len())
        .map(|d| {
            let mut c = vec![0u32; class_count];
            let mut x = d;
            loop {
                c[classes[x]] += 1;
                if x == 0 {
                    break;
                }
                x = (x - 1) & d;
            }
            c
        })
        .collect();
    let mut first: HashMap<usize, usize> = HashMap::new();
    for d in 0..classes.len() {
        let rep = *first.entry(classes[d]).or_insert(d);
        if rep == d {
            continue;
        }
        if rep.count_ones() != d.count_ones() || counts[rep] != counts[d] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures::path;

    #[test]
    fn isomorphy_partition_is_hereditary() {
        let classes = isomorphy_classes(&path(5)).unwrap();
        assert!(is_hereditary(5, &classes).unwrap());
    }

    #[test]
    fn cardinality_partition_is_hereditary() {
        let classes: Vec<usize> = (0..32u32).map(|d| d.count_ones() as usize).collect();
        assert!(is_hereditary(5, &classes).unwrap());
    }

    #[test]
    fn merged_sizes_fail() {
        let classes: Vec<usize> = (0..16u32)
            .map(|d| match d.count_ones() {
                2 => 1,
                c => c as usize,
            })
            .collect();
        assert!(!is_hereditary(4, &classes).unwrap());
    }

    #[test]
    fn unequal_subset_counts_fail() {
        // pairs split by whether they contain 0; {0,1,2} then holds two
        // pairs of the first kind and {1,2,3} none, yet all triples agree
        let classes: Vec<usize> = (0..16u32)
            .map(|d| match d.count_ones() {
                2 if d & 1 == 1 => 5,
                c => c as usize,
            })
            .collect();
        assert!(!is_hereditary(4, &classes).unwrap());
    }

    #[test]
    fn limits() {
        assert!(is_hereditary(6, &[0; 64]).is_err());
        assert!(is_hereditary(2, &[0; 3]).is_err());
    }
}
