//! Small combinatorial helpers shared by the sweeps: binomials, colex
//! enumeration of k-subsets as bitmasks, and bitmask/list conversion.

/// Binomial coefficient as `u128`; returns 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Iterator over the `k`-element subsets of `{0..m}` as bitmasks, in colex
/// order (which for a fixed size is increasing numeric order).
#[derive(Debug, Clone)]
pub struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl KSubsets {
    pub fn new(m: usize, k: usize) -> Self {
        assert!(m < 64, "bitmask subsets support domains below 64");
        let next = if k > m {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some((1u64 << k) - 1)
        };
        KSubsets {
            next,
            limit: 1u64 << m,
        }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < self.limit).then_some(nxt)
        };
        Some(cur)
    }
}

pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

pub fn vec_to_mask(items: &[usize]) -> u64 {
    items.iter().fold(0u64, |acc, &i| acc | (1u64 << i))
}

/// All set partitions of `{0..m}` as block lists (restricted growth strings).
/// Only meant for small `m`; there are Bell(m) of them.
pub fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, m: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == m {
            let blocks = if m == 0 { 0 } else { max + 1 };
            let mut parts = vec![Vec::new(); blocks];
            for (x, &b) in rgs.iter().enumerate() {
                parts[b].push(x);
            }
            out.push(parts);
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for b in 0..=top {
            rgs.push(b);
            rec(i + 1, m, rgs, max.max(b), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, &mut Vec::with_capacity(m), 0, &mut out);
    out
}
