//! Brute-force count of connected node sets up to translation, sharing
//! nothing with the library's enumeration.

use std::collections::{HashSet, VecDeque};

/// Counts connected `n`-node sets up to translation by brute force.
///
/// Every such set has a translate whose lexicographically smallest node is
/// the origin; all its nodes then lie within distance `n - 1` of the origin
/// and lexicographically above it. Enumerate all `(n-1)`-subsets of those
/// candidates, keep the connected ones, and deduplicate.
pub fn brute_force_count(n: usize) -> usize {
    let r = n as i32 - 1;
    let mut candidates = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let dist = (a.abs() + b.abs() + (a + b).abs()) / 2;
            if dist <= r && (a, b) > (0, 0) {
                candidates.push((a, b));
            }
        }
    }
    let mut found: HashSet<Vec<(i32, i32)>> = HashSet::new();
    let mut chosen = Vec::with_capacity(n);
    choose(&candidates, 0, n - 1, &mut chosen, &mut |subset| {
        let mut nodes: Vec<(i32, i32)> = subset.to_vec();
        nodes.push((0, 0));
        if connected(&nodes) {
            let min = *nodes.iter().min().unwrap();
            let mut canon: Vec<_> = nodes.iter().map(|&(a, b)| (a - min.0, b - min.1)).collect();
            canon.sort();
            found.insert(canon);
        }
    });
    found.len()
}

fn choose(
    pool: &[(i32, i32)],
    start: usize,
    k: usize,
    chosen: &mut Vec<(i32, i32)>,
    visit: &mut impl FnMut(&[(i32, i32)]),
) {
    if k == 0 {
        visit(chosen);
        return;
    }
    for i in start..pool.len() {
        if pool.len() - i < k {
            break;
        }
        chosen.push(pool[i]);
        choose(pool, i + 1, k - 1, chosen, visit);
        chosen.pop();
    }
}

fn connected(nodes: &[(i32, i32)]) -> bool {
    let set: HashSet<_> = nodes.iter().copied().collect();
    let mut seen = HashSet::from([nodes[0]]);
    let mut queue = VecDeque::from([nodes[0]]);
    while let Some((a, b)) = queue.pop_front() {
        for (da, db) in [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)] {
            let n = (a + da, b + db);
            if set.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == nodes.len()
}
