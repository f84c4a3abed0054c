/// Exact minimum set cover of `0..n` by the bitmask `sets`.
///
/// Returns the size and the lexicographically least index selection of that
/// size, or `None` when the sets do not cover everything. Sizes are tried in
/// increasing order; for each size a depth-first search over increasing index
/// tuples is pruned with suffix unions (everything still missing must be
/// coverable by later sets) and with the size of the largest remaining set.
pub fn min_set_cover(n: usize, sets: &[u64]) -> Option<(usize, Vec<usize>)> {
    let universe = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    if n == 0 {
        return Some((0, Vec::new()));
    }
    let sets: Vec<u64> = sets.iter().map(|s| s & universe).collect();
    let mut suffix = vec![0u64; sets.len() + 1];
    for i in (0..sets.len()).rev() {
        suffix[i] = suffix[i + 1] | sets[i];
    }
    if suffix[0] != universe {
        return None;
    }
    let largest = sets.iter().map(|s| s.count_ones()).max().unwrap_or(0).max(1);
    let lower = (n as u32).div_ceil(largest) as usize;
    let mut chosen = Vec::new();
    for k in lower.max(1)..=sets.len() {
        if search(&sets, &suffix, universe, 0, 0, k, largest, &mut chosen) {
            return Some((k, chosen));
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn search(
    sets: &[u64],
    suffix: &[u64],
    universe: u64,
    start: usize,
    covered: u64,
    left: usize,
    largest: u32,
    chosen: &mut Vec<usize>,
) -> bool {
    if covered == universe {
        return true;
    }
    let missing = universe & !covered;
    if left == 0 || (missing.count_ones() as usize) > left * largest as usize {
        return false;
    }
    for i in start..sets.len() {
        if suffix[i] & missing != missing {
            return false;
        }
        if sets[i] & missing == 0 {
            continue;
        }
        chosen.push(i);
        if search(sets, suffix, universe, i + 1, covered | sets[i], left - 1, largest, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: usize, sets: &[u64]) -> Option<(usize, Vec<usize>)> {
        let universe = (1u64 << n) - 1;
        let mut best: Option<(usize, Vec<usize>)> = None;
        for pick in 0u64..1 << sets.len() {
            let idx: Vec<usize> = (0..sets.len()).filter(|&i| pick >> i & 1 == 1).collect();
            let cov = idx.iter().fold(0, |a, &i| a | sets[i]);
            if cov != universe {
                continue;
            }
            let better = match &best {
                None => true,
                Some((k, sel)) => idx.len() < *k || (idx.len() == *k && idx < *sel),
            };
            if better {
                best = Some((idx.len(), idx));
            }
        }
        best
    }

    #[test]
    fn examples() {
        assert_eq!(min_set_cover(4, &[0b1111]), Some((1, vec![0])));
        // four paths of C4, each missing one edge
        let paths = [0b1110, 0b1101, 0b1011, 0b0111];
        assert_eq!(min_set_cover(4, &paths), Some((2, vec![0, 1])));
        assert_eq!(min_set_cover(3, &[1, 2, 4]), Some((3, vec![0, 1, 2])));
        assert_eq!(min_set_cover(3, &[1, 2]), None);
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut state = 0x2545f4914f6cdd1du64;
        for _ in 0..300 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let n = 1 + (state % 7) as usize;
            let m = 1 + (state >> 8) as usize % 7;
            let sets: Vec<u64> = (0..m)
                .map(|i| (state.rotate_left(7 * i as u32 + 3) ^ (i as u64 * 0x9e37)) & ((1 << n) - 1))
                .collect();
            assert_eq!(min_set_cover(n, &sets), brute(n, &sets), "n={n} sets={sets:?}");
        }
    }
}
