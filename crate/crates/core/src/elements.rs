use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Below this order a full multiplication table is precomputed (u16 indices,
/// so at the cap the table is ~8 MB). Larger tables fall back to composing
/// permutations and hashing.
const PROD_TABLE_MAX: usize = 2048;

/// All elements of a group in canonical order: breadth-first closure from
/// the generators sorted by image array, identity first. Index 0 is always
/// the identity and the ordering is deterministic, so bitsets and caches
/// built on top of it are reproducible.
#[derive(Clone)]
pub struct ElementTable {
    group: PermGroup,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
    orders: Vec<u64>,
    prod: Option<Vec<u16>>,
}

impl ElementTable {
    /// Enumerates the group; errors if the order exceeds `cap`.
    pub fn build(group: &PermGroup, cap: usize) -> Result<ElementTable> {
        let order =
            group
                .order_usize()
                .filter(|&n| n <= cap)
                .ok_or_else(|| Error::EnumerationCap {
                    order: group.order().to_string(),
                    cap,
                })?;
        let mut gens: Vec<Permutation> = group.generators().to_vec();
        gens.sort();
        let id = Permutation::identity(group.degree());
        let mut elems = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for g in &gens {
                let y = x.compose(g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len() as u32);
                    elems.push(y);
                }
            }
        }
        debug_assert_eq!(elems.len(), order);

        let inverse = elems
            .iter()
            .map(|e| index[&e.inverse()])
            .collect::<Vec<u32>>();
        let orders = elems.iter().map(|e| e.order()).collect::<Vec<u64>>();
        let prod = if order <= PROD_TABLE_MAX {
            let mut t = vec![0u16; order * order];
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    t[i * order + j] = index[&a.compose(b)] as u16;
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(ElementTable {
            group: group.clone(),
            elems,
            index,
            inverse,
            orders,
            prod,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn elem(&self, i: u32) -> &Permutation {
        &self.elems[i as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Product of elements by index, left-to-right.
    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        match &self.prod {
            Some(t) => t[i as usize * self.elems.len() + j as usize] as u32,
            None => self.index[&self.elems[i as usize].compose(&self.elems[j as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    #[inline]
    pub fn order_of(&self, i: u32) -> u64 {
        self.orders[i as usize]
    }

    /// `j^-1 * i * j` by index.
    #[inline]
    pub fn conj(&self, i: u32, j: u32) -> u32 {
        self.mul(self.mul(self.inv(j), i), j)
    }

    /// Generator indices of the underlying group.
    pub fn generator_indices(&self) -> Vec<u32> {
        self.group
            .generators()
            .iter()
            .map(|g| self.index[g])
            .collect()
    }

    /// Subgroup generated by the given element indices, as a bitset.
    /// BFS from the identity under right multiplication.
    pub fn closure_bitset(&self, gens: &[u32]) -> FixedBitSet {
        let mut members = FixedBitSet::with_capacity(self.len());
        members.insert(0);
        let mut queue: Vec<u32> = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !members.contains(y as usize) {
                    members.insert(y as usize);
                    queue.push(y);
                }
            }
        }
        members
    }

    /// Like `closure_bitset` but bails out (returning `None`) as soon as the
    /// closure exceeds `limit` elements. A proper subgroup has at most half
    /// the group's order, so `limit = len/2` detects "this join is everything".
    pub fn closure_bitset_capped(&self, gens: &[u32], limit: usize) -> Option<FixedBitSet> {
        let mut members = FixedBitSet::with_capacity(self.len());
        members.insert(0);
        let mut queue: Vec<u32> = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !members.contains(y as usize) {
                    if queue.len() >= limit {
                        return None;
                    }
                    members.insert(y as usize);
                    queue.push(y);
                }
            }
        }
        Some(members)
    }

    /// Conjugacy classes of elements; `class_of[e]` is the least index in the
    /// class of `e`.
    pub fn element_class_min(&self) -> Vec<u32> {
        let gens = self.generator_indices();
        let mut class_of: Vec<u32> = (0..self.len() as u32).collect();
        let mut visited = vec![false; self.len()];
        for start in 0..self.len() as u32 {
            if visited[start as usize] {
                continue;
            }
            // orbit under conjugation by generators
            let mut orbit = vec![start];
            visited[start as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &g in &gens {
                    let y = self.conj(x, g);
                    if !visited[y as usize] {
                        visited[y as usize] = true;
                        orbit.push(y);
                    }
                }
            }
            let min = *orbit.iter().min().unwrap();
            for x in orbit {
                class_of[x as usize] = min;
            }
        }
        class_of
    }

    /// The derived subgroup as a bitset: closure of all commutators.
    pub fn derived_bitset(&self) -> FixedBitSet {
        let n = self.len() as u32;
        let mut comms: Vec<u32> = Vec::new();
        let mut seen = FixedBitSet::with_capacity(self.len());
        for a in 0..n {
            for b in 0..n {
                // a^-1 b^-1 a b
                let c = self.mul(self.mul(self.mul(self.inv(a), self.inv(b)), a), b);
                if !seen.contains(c as usize) {
                    seen.insert(c as usize);
                    comms.push(c);
                }
            }
        }
        self.closure_bitset(&comms)
    }
}

/// A Sylow p-subgroup, grown from the trivial group: while the current
/// p-subgroup is smaller than the p-part of |G|, its normalizer contains a
/// p-element outside it (Sylow theory), and adjoining the first such element
/// in canonical order multiplies the order by p.
pub fn sylow_subgroup(table: &ElementTable, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = table.len() as u64;
    let mut p_part = 1u64;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        p_part *= p;
    }
    let mut members = FixedBitSet::with_capacity(table.len());
    members.insert(0);
    let mut gens: Vec<u32> = Vec::new();
    let mut size = 1u64;
    while size < p_part {
        let grown = grow_p_subgroup(table, p, &members, &gens);
        let g = grown.expect("Sylow growth: normalizer must contain a p-element");
        gens.push(g);
        members = table.closure_bitset(&gens);
        size = members.count_ones(..) as u64;
        debug_assert_eq!(size % p, 0);
    }
    let perm_gens: Vec<Permutation> = gens.iter().map(|&g| table.elem(g).clone()).collect();
    PermGroup::from_generators(table.degree(), perm_gens)
}

fn grow_p_subgroup(
    table: &ElementTable,
    p: u64,
    members: &FixedBitSet,
    gens: &[u32],
) -> Option<u32> {
    'outer: for x in 0..table.len() as u32 {
        if members.contains(x as usize) {
            continue;
        }
        let ord = table.order_of(x);
        if !is_p_power(ord, p) {
            continue;
        }
        // x must normalize the current subgroup
        for &h in gens {
            if !members.contains(table.conj(h, x) as usize) {
                continue 'outer;
            }
        }
        return Some(x);
    }
    None
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naive;
    use num_bigint::BigUint;

    fn table_of(degree: usize, cycles: &[&[usize]]) -> ElementTable {
        let gens: Vec<Permutation> = cycles
            .iter()
            .map(|c| Permutation::from_cycles(degree, &[c.to_vec()]).unwrap())
            .collect();
        let g = PermGroup::from_generators(degree, gens).unwrap();
        ElementTable::build(&g, 50_000).unwrap()
    }

    #[test]
    fn trivial_group_table() {
        let t = ElementTable::build(&PermGroup::trivial(1), 10).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.elem(0).is_identity());
    }

    #[test]
    fn c3_table() {
        let t = table_of(3, &[&[0, 1, 2]]);
        assert_eq!(t.len(), 3);
        assert!(t.elem(0).is_identity());
    }

    #[test]
    fn s4_table_matches_closure_oracle() {
        let t = table_of(4, &[&[0, 1], &[0, 1, 2, 3]]);
        assert_eq!(t.len(), 24);
        assert!(t.elem(0).is_identity());
        let oracle = naive::closure(4, t.group().generators());
        assert_eq!(oracle.len(), 24);
        for x in oracle {
            assert!(t.index_of(&x).is_some());
        }
    }

    #[test]
    fn cap_exceeded_is_loud() {
        let g = PermGroup::from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(
            ElementTable::build(&g, 10),
            Err(Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn mul_agrees_with_composition() {
        let t = table_of(4, &[&[0, 1], &[0, 1, 2, 3]]);
        for i in 0..t.len() as u32 {
            for j in 0..t.len() as u32 {
                let z = t.elem(i).compose(t.elem(j));
                assert_eq!(t.elem(t.mul(i, j)), &z);
            }
        }
    }

    #[test]
    fn sylow_of_s4() {
        let t = table_of(4, &[&[0, 1], &[0, 1, 2, 3]]);
        let p2 = sylow_subgroup(&t, 2).unwrap();
        assert_eq!(p2.order(), &BigUint::from(8u32));
        let p3 = sylow_subgroup(&t, 3).unwrap();
        assert_eq!(p3.order(), &BigUint::from(3u32));
    }

    #[test]
    fn sylow_of_s3_is_a3() {
        let t = table_of(3, &[&[0, 1], &[0, 1, 2]]);
        let p3 = sylow_subgroup(&t, 3).unwrap();
        assert_eq!(p3.order(), &BigUint::from(3u32));
        assert!(p3
            .contains(&Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap())
            .unwrap());
    }

    #[test]
    fn sylow_p_not_dividing_is_trivial() {
        let t = table_of(3, &[&[0, 1], &[0, 1, 2]]);
        let p5 = sylow_subgroup(&t, 5).unwrap();
        assert!(p5.is_trivial());
    }

    #[test]
    fn sylow_rejects_composite() {
        let t = table_of(3, &[&[0, 1, 2]]);
        assert!(matches!(sylow_subgroup(&t, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn derived_bitset_of_s3() {
        let t = table_of(3, &[&[0, 1], &[0, 1, 2]]);
        let d = t.derived_bitset();
        assert_eq!(d.count_ones(..), 3);
    }
}
