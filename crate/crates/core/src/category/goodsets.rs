use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::scomplex::Simplex;

/// Maximal good sets of a downward-closed family over facet indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSetFamily {
    /// Facets of the domain, indexed as in the masks.
    pub base: Vec<Simplex>,
    /// Facet-index bitmasks, sorted.
    pub maximal_good: Vec<u64>,
    /// Number of membership tests performed.
    pub tests: usize,
}

impl GoodSetFamily {
    pub fn members(&self) -> Vec<Vec<usize>> {
        self.maximal_good
            .iter()
            .map(|&m| Simplex::from_bits(m).to_vec())
            .collect()
    }
}

pub(crate) fn full_mask(m: usize) -> Result<u64> {
    match m {
        0 => Err(Error::EmptyInput("ground set")),
        64.. => Err(Error::limit("facets in one cover search", 63)),
        _ => Ok((1u64 << m) - 1),
    }
}

/// Maximal members of a downward-closed family of subsets of `0..m`.
///
/// The full set is tried first. Otherwise the family is explored level by
/// level: a set of size `k + 1` is tested only when all of its `k`-subsets are
/// good. `good` is called once per candidate; more than `max_tests` calls is a
/// resource error.
pub(crate) fn maximal_down_closed<F>(m: usize, max_tests: usize, mut good: F) -> Result<(Vec<u64>, usize)>
where
    F: FnMut(u64) -> Result<bool>,
{
    let full = full_mask(m)?;
    let mut tests = 1;
    if good(full)? {
        return Ok((vec![full], tests));
    }
    let bump = |tests: &mut usize| -> Result<()> {
        *tests += 1;
        if *tests > max_tests {
            return Err(Error::limit("candidate subsets", max_tests));
        }
        Ok(())
    };

    let mut maximal = Vec::new();
    let mut level: Vec<u64> = Vec::new();
    for i in 0..m {
        bump(&mut tests)?;
        if good(1 << i)? {
            level.push(1 << i);
        }
    }
    while !level.is_empty() {
        let known: HashSet<u64> = level.iter().copied().collect();
        let mut next = Vec::new();
        let mut extended: HashSet<u64> = HashSet::new();
        for &s in &level {
            let top = 63 - s.leading_zeros() as usize;
            for i in top + 1..m {
                let t = s | 1 << i;
                let all_subsets_good = Simplex::from_bits(t)
                    .vertices()
                    .all(|j| j == i || known.contains(&(t & !(1 << j))));
                if !all_subsets_good {
                    continue;
                }
                bump(&mut tests)?;
                if good(t)? {
                    next.push(t);
                    for j in Simplex::from_bits(t).vertices() {
                        extended.insert(t & !(1 << j));
                    }
                }
            }
        }
        maximal.extend(level.iter().copied().filter(|s| !extended.contains(s)));
        level = next;
    }
    maximal.sort_unstable();
    Ok((maximal, tests))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(m: usize, good: impl Fn(u64) -> bool) -> Vec<u64> {
        let all: Vec<u64> = (1..1u64 << m).filter(|&s| good(s)).collect();
        let mut out: Vec<u64> = all
            .iter()
            .copied()
            .filter(|&s| !all.iter().any(|&t| t != s && t & s == s))
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn matches_brute_force_on_threshold_families() {
        for m in 1..=7 {
            for cap in 1..=m as u32 {
                let good = |s: u64| s.count_ones() <= cap && s & 0b101 != 0b101;
                let (found, _) = maximal_down_closed(m, 1 << 12, |s| Ok(good(s))).unwrap();
                assert_eq!(found, brute(m, good), "m={m} cap={cap}");
            }
        }
    }

    #[test]
    fn full_set_short_circuits() {
        let (found, tests) = maximal_down_closed(5, 10, |_| Ok(true)).unwrap();
        assert_eq!(found, vec![0b11111]);
        assert_eq!(tests, 1);
    }

    #[test]
    fn test_budget() {
        let r = maximal_down_closed(10, 5, |s| Ok(s.count_ones() < 4));
        assert!(r.unwrap_err().is_unknown());
    }
}
