use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A word whose letters are non-empty subsets of `{0..alphabet}`, stored as
/// bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShuffleWord(pub Vec<u32>);

impl ShuffleWord {
    pub fn size(&self) -> usize {
        self.0.iter().map(|l| l.count_ones() as usize).sum()
    }
}

impl fmt::Display for ShuffleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &l in &self.0 {
            let items: Vec<String> = (0..32)
                .filter(|i| l >> i & 1 == 1)
                .map(|i| i.to_string())
                .collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

/// Integer combination of words over one alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleCombination {
    pub alphabet: usize,
    pub terms: BTreeMap<ShuffleWord, i64>,
}

impl ShuffleCombination {
    pub fn word(alphabet: usize, letters: Vec<u32>) -> Result<Self> {
        let full = if alphabet >= 32 {
            u32::MAX
        } else {
            (1u32 << alphabet) - 1
        };
        if letters.iter().any(|&l| l == 0 || l & !full != 0) {
            return Err(Error::MalformedWord(format!(
                "letters must be non-empty subsets of an alphabet of {alphabet}"
            )));
        }
        Ok(ShuffleCombination {
            alphabet,
            terms: BTreeMap::from([(ShuffleWord(letters), 1)]),
        })
    }

    pub fn unit(alphabet: usize) -> Self {
        ShuffleCombination {
            alphabet,
            terms: BTreeMap::from([(ShuffleWord(Vec::new()), 1)]),
        }
    }

    fn add(&mut self, w: ShuffleWord, c: i64) -> Result<()> {
        let entry = self.terms.entry(w.clone()).or_insert(0);
        *entry = entry.checked_add(c).ok_or(Error::Overflow)?;
        if *entry == 0 {
            self.terms.remove(&w);
        }
        Ok(())
    }
}

impl fmt::Display for ShuffleCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, &c)| {
                if c == 1 {
                    w.to_string()
                } else {
                    format!("{c}{w}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Words formed by one occurrence of each operand placed in disjoint
/// positions, where two letters may share a position only if they are
/// disjoint sets, which then merge into their union.
pub fn shuffle_words(a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
    fn rec(a: &[u32], b: &[u32], prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match (a.split_first(), b.split_first()) {
            (None, None) => out.push(prefix.clone()),
            (Some(_), None) | (None, Some(_)) => {
                let rest = if a.is_empty() { b } else { a };
                let len = prefix.len();
                prefix.extend_from_slice(rest);
                out.push(prefix.clone());
                prefix.truncate(len);
            }
            (Some((&x, ra)), Some((&y, rb))) => {
                prefix.push(x);
                rec(ra, b, prefix, out);
                prefix.pop();
                prefix.push(y);
                rec(a, rb, prefix, out);
                prefix.pop();
                if x & y == 0 {
                    prefix.push(x | y);
                    rec(ra, rb, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(a, b, &mut Vec::with_capacity(a.len() + b.len()), &mut out);
    out
}

pub fn shuffle(u: &ShuffleCombination, v: &ShuffleCombination) -> Result<ShuffleCombination> {
    if u.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch(u.alphabet, v.alphabet));
    }
    let mut out = ShuffleCombination {
        alphabet: u.alphabet,
        terms: BTreeMap::new(),
    };
    for (wu, &cu) in &u.terms {
        for (wv, &cv) in &v.terms {
            let c = cu.checked_mul(cv).ok_or(Error::Overflow)?;
            for w in shuffle_words(&wu.0, &wv.0) {
                out.add(ShuffleWord(w), c)?;
            }
        }
    }
    Ok(out)
}
