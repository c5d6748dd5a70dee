//! Reference implementations kept deliberately simple and independent of the
//! stabilizer-chain and lattice code paths. They exist as oracles for tests
//! and the acceptance suite; nothing in the main algorithms calls them.

use std::collections::HashSet;

use crate::perm::Permutation;

/// Brute-force closure of a generating set (Dimino-style breadth first).
/// Returns all elements in BFS order starting from the identity.
pub fn closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
    }
    out
}

/// All subgroups of a small group, as sorted element lists, found by closing
/// every subset-generated subgroup. Exponential; fine for |G| <= 16 or so.
pub fn all_subgroups_by_subsets(degree: usize, elements: &[Permutation]) -> Vec<Vec<Permutation>> {
    let n = elements.len();
    assert!(n <= 20, "subset oracle is exponential");
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    for mask in 0u32..(1 << n) {
        let gens: Vec<Permutation> = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| elements[i].clone())
            .collect();
        let mut sub = closure(degree, &gens);
        sub.sort();
        seen.insert(sub);
    }
    let mut out: Vec<Vec<Permutation>> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}
