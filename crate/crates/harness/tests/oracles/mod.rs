//! Independent brute-force oracles for the metric acceptance sweep. These
//! deliberately share no code with the library implementations: edit
//! distance is a memoized recursion over edit scripts, LCS enumerates
//! subsequences, and the shift oracle walks shift sequences breadth-first.

use std::collections::{HashSet, VecDeque};

/// Minimum unit-cost edit script cost, by recursion over the three ops.
pub fn min_edit_cost(from: &[u8], to: &[u8]) -> usize {
    const UNSEEN: usize = usize::MAX;

    fn go(from: &[u8], to: &[u8], i: usize, j: usize, memo: &mut [usize], width: usize) -> usize {
        if i == from.len() {
            return to.len() - j;
        }
        if j == to.len() {
            return from.len() - i;
        }
        if memo[i * width + j] != UNSEEN {
            return memo[i * width + j];
        }
        let substitute_or_keep =
            go(from, to, i + 1, j + 1, memo, width) + usize::from(from[i] != to[j]);
        let delete = go(from, to, i + 1, j, memo, width) + 1;
        let insert = go(from, to, i, j + 1, memo, width) + 1;
        let cost = substitute_or_keep.min(delete).min(insert);
        memo[i * width + j] = cost;
        cost
    }

    let width = to.len() + 1;
    let mut memo = vec![UNSEEN; (from.len() + 1) * width];
    go(from, to, 0, 0, &mut memo, width)
}

/// Longest common subsequence length by enumerating every subsequence of
/// `a` and testing it against `b`.
pub fn lcs_by_enumeration(a: &[u8], b: &[u8]) -> usize {
    let mut best = 0;
    for mask in 0u32..(1u32 << a.len()) {
        let picked: Vec<u8> = (0..a.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| a[i])
            .collect();
        if picked.len() > best && is_subsequence(&picked, b) {
            best = picked.len();
        }
    }
    best
}

fn is_subsequence(needle: &[u8], haystack: &[u8]) -> bool {
    let mut it = haystack.iter();
    needle.iter().all(|n| it.any(|h| h == n))
}

/// Minimum shifts-plus-edits cost: breadth-first over every sequence
/// reachable by block moves, each move costing 1, plus the edit cost of the
/// resulting sequence.
///
/// Termination and pruning: block moves preserve length and an edit script
/// costs at least the length difference, so a plan with `s` shifts costs at
/// least `s + |len(from) - len(to)|`. Exploring deeper than the best total
/// found so far cannot win.
pub fn min_shift_edit_cost(from: &[u8], to: &[u8]) -> usize {
    let mut best = min_edit_cost(from, to);
    let length_gap = from.len().abs_diff(to.len());
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    visited.insert(from.to_vec());
    let mut queue: VecDeque<(Vec<u8>, usize)> = VecDeque::new();
    queue.push_back((from.to_vec(), 0));

    while let Some((state, depth)) = queue.pop_front() {
        let next_depth = depth + 1;
        if next_depth + length_gap >= best {
            continue;
        }
        for moved in all_block_moves(&state) {
            if !visited.insert(moved.clone()) {
                continue;
            }
            best = best.min(next_depth + min_edit_cost(&moved, to));
            queue.push_back((moved, next_depth));
        }
    }
    best
}

fn all_block_moves(seq: &[u8]) -> Vec<Vec<u8>> {
    let n = seq.len();
    let mut out = Vec::new();
    for start in 0..n {
        for len in 1..=(n - start) {
            let mut rest: Vec<u8> = Vec::with_capacity(n - len);
            rest.extend_from_slice(&seq[..start]);
            rest.extend_from_slice(&seq[start + len..]);
            for dest in 0..=rest.len() {
                let mut moved = Vec::with_capacity(n);
                moved.extend_from_slice(&rest[..dest]);
                moved.extend_from_slice(&seq[start..start + len]);
                moved.extend_from_slice(&rest[dest..]);
                if moved != seq {
                    out.push(moved);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edit_cost_basics() {
        assert_eq!(min_edit_cost(b"abc", b"abc"), 0);
        assert_eq!(min_edit_cost(b"abc", b"axc"), 1);
        assert_eq!(min_edit_cost(b"", b"abc"), 3);
    }

    #[test]
    fn lcs_basics() {
        assert_eq!(lcs_by_enumeration(b"abcd", b"acd"), 3);
        assert_eq!(lcs_by_enumeration(b"ab", b"ba"), 1);
        assert_eq!(lcs_by_enumeration(b"", b"x"), 0);
    }

    #[test]
    fn one_rotation_is_one_shift() {
        // bcda -> abcd: one block move beats two edits
        assert_eq!(min_shift_edit_cost(b"bcda", b"abcd"), 1);
        assert_eq!(min_shift_edit_cost(b"abcd", b"abcd"), 0);
    }
}
