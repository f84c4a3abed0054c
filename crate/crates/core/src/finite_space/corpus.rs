use std::collections::BTreeSet;

use super::FiniteSpace;
use crate::error::{Error, Result};
use crate::scomplex::default_label;

/// Relation encoding: bit `i * n + j` set when `i < j`.
fn encode(n: usize, rel: &[(usize, usize)], perm: &[usize]) -> u64 {
    rel.iter().fold(0, |acc, &(i, j)| acc | 1 << (perm[i] * n + perm[j]))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All connected posets on at most `max_points` points, up to isomorphism,
/// ordered by size then by canonical relation code.
pub fn enumerate_posets(max_points: usize) -> Result<Vec<FiniteSpace>> {
    if max_points > 5 {
        return Err(Error::limit("poset corpus size", 5));
    }
    let mut out = Vec::new();
    for n in 1..=max_points {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let rel: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|&b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
            let lt = |i: usize, j: usize| rel.contains(&(i, j));
            let antisymmetric = rel.iter().all(|&(i, j)| !lt(j, i));
            let transitive = rel.iter().all(|&(i, j)| (0..n).all(|k| !lt(j, k) || lt(i, k)));
            if !antisymmetric || !transitive {
                continue;
            }
            let canon = perms.iter().map(|p| encode(n, &rel, p)).min().unwrap_or(0);
            if !seen.insert(canon) {
                continue;
            }
        }
        for canon in seen {
            let rel: Vec<(usize, usize)> = (0..n * n).filter(|&b| canon >> b & 1 == 1).map(|b| (b / n, b % n)).collect();
            let x = FiniteSpace::build((0..n).map(default_label).collect(), &rel)?;
            if x.is_connected() {
                out.push(x);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        // connected posets on 1..=4 points: 1, 1, 3, 10
        let all = enumerate_posets(4).unwrap();
        let by_size: Vec<usize> = (1..=4).map(|n| all.iter().filter(|x| x.len() == n).count()).collect();
        assert_eq!(by_size, vec![1, 1, 3, 10]);
    }
}
