use crate::error::{Error, Result};
use crate::structure::{RelStruct, Relation, Signature};

/// Sizes `n` that receive a relation symbol: those where `f` increases
/// from `n` to `n + 1`.
pub fn slow_profile_indices(f: &[u64]) -> Result<Vec<usize>> {
    validate(f)?;
    Ok((0..f.len().saturating_sub(1))
        .filter(|&n| f[n] < f[n + 1])
        .collect())
}

fn validate(f: &[u64]) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidTarget(msg));
    if f.is_empty() {
        return bad("empty target sequence".into());
    }
    if f[0] != 1 {
        return bad(format!(
            "f(0) = {} but the empty restriction is a single type",
            f[0]
        ));
    }
    for (n, &v) in f.iter().enumerate() {
        if v < 1 || v > n as u64 + 1 {
            return bad(format!("f({n}) = {v} outside 1..={}", n + 1));
        }
    }
    for n in 0..f.len() - 1 {
        if f[n] > f[n + 1] {
            return bad(format!("f decreases at {n}"));
        }
        // each symbol adds exactly one new type at each later size
        if f[n + 1] - f[n] > 1 {
            return bad(format!("f jumps by more than 1 at {n}"));
        }
    }
    Ok(())
}

/// Truncation to `{0..size}` of the structure on ℕ carrying, for each
/// increase `f(n) < f(n+1)`, an `(n+1)`-ary relation that holds exactly on
/// the tuples enumerating `{0..=n}`. Only symbols of arity at most `size`
/// are kept; the profile of the result agrees with `f` below `size`.
pub fn slow_profile_structure(f: &[u64], size: usize) -> Result<RelStruct> {
    let symbols: Vec<usize> = slow_profile_indices(f)?
        .into_iter()
        .filter(|&n| n < size)
        .collect();
    let arities: Vec<usize> = symbols.iter().map(|&n| n + 1).collect();
    let signature = Signature::new(arities)?;
    let relations = symbols
        .iter()
        .map(|&n| {
            let mut flat = Vec::new();
            let mut perm: Vec<u32> = (0..=n as u32).collect();
            permutations(&mut perm, 0, &mut flat);
            let k = n + 1;
            let mut tuples: Vec<&[u32]> = flat.chunks_exact(k).collect();
            tuples.sort_unstable();
            Relation::from_sorted_flat(k, tuples.concat())
        })
        .collect();
    Ok(RelStruct::from_relations(signature, size, relations))
}

fn permutations(p: &mut Vec<u32>, i: usize, out: &mut Vec<u32>) {
    if i == p.len() {
        out.extend_from_slice(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, out);
        p.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_target_has_empty_signature() {
        let r = slow_profile_structure(&[1, 1, 1, 1], 5).unwrap();
        assert!(r.signature().is_empty());
        assert_eq!(r.domain_size(), 5);
    }

    #[test]
    fn indices_mark_increases() {
        assert_eq!(slow_profile_indices(&[1, 2, 3, 3, 3]).unwrap(), vec![0, 1]);
        assert_eq!(slow_profile_indices(&[1, 2, 3, 4]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn relations_hold_on_all_orderings() {
        let r = slow_profile_structure(&[1, 2, 3], 4).unwrap();
        assert_eq!(r.signature().arities(), &[1, 2]);
        assert_eq!(r.relation(0).len(), 1);
        assert_eq!(r.relation(1).len(), 2);
        assert!(r.holds(1, &[1, 0]));
        assert!(!r.holds(1, &[1, 2]));
    }

    #[test]
    fn invalid_targets_are_rejected() {
        for f in [&[2u64, 2][..], &[1, 3], &[1, 2, 1], &[], &[1, 1, 3]] {
            assert!(
                matches!(slow_profile_structure(f, 4), Err(Error::InvalidTarget(_))),
                "{f:?}"
            );
        }
    }
}
