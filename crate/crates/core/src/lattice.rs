//! Subgroup-lattice enumeration for the enumerated regime, plus the
//! coset-based maximality test that also works beyond the cap.
//!
//! Enumeration seeds with all cyclic subgroups and closes under pairwise
//! join; every subgroup is a join of cyclic subgroups, so the result is
//! complete. Nodes are deduplicated by member bitset and finally sorted by
//! (order, member list), which makes node ids reproducible.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;

use crate::budget::Budgets;
use crate::elements::ElementTable;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub type NodeId = u32;

/// One subgroup of the parent group: its elements as a bitset over the
/// parent's `ElementTable`, a small generating list, and structure flags.
#[derive(Debug, Clone)]
pub struct SubgroupNode {
    pub id: NodeId,
    pub members: FixedBitSet,
    pub gens: Vec<u32>,
    pub order: u64,
    pub is_normal: bool,
    pub is_maximal: bool,
    pub is_abelian: bool,
    /// Least node id in this node's conjugacy class.
    pub class_rep: NodeId,
}

/// The complete subgroup lattice of an enumerated group.
pub struct SubgroupLattice {
    table: ElementTable,
    nodes: Vec<SubgroupNode>,
    by_members: HashMap<FixedBitSet, NodeId>,
    /// Cyclic subgroup generated by each element.
    elem_cyc: Vec<NodeId>,
    full: NodeId,
    trivial: NodeId,
    maximal: Vec<NodeId>,
    frattini: NodeId,
}

impl SubgroupLattice {
    /// Enumerates every subgroup. Errors if the node budget is exceeded.
    pub fn enumerate(table: ElementTable, budgets: &Budgets) -> Result<SubgroupLattice> {
        let n = table.len();
        let cap = budgets.max_lattice_nodes;

        let mut sets: Vec<FixedBitSet> = Vec::new();
        let mut raw_gens: Vec<Vec<u32>> = Vec::new();
        let mut by_set: HashMap<FixedBitSet, usize> = HashMap::new();

        fn register(
            cap: usize,
            set: FixedBitSet,
            g: Vec<u32>,
            sets: &mut Vec<FixedBitSet>,
            raw_gens: &mut Vec<Vec<u32>>,
            by_set: &mut HashMap<FixedBitSet, usize>,
        ) -> Result<usize> {
            if let Some(&idx) = by_set.get(&set) {
                return Ok(idx);
            }
            if sets.len() >= cap {
                return Err(Error::LatticeNodeBudget { cap });
            }
            let idx = sets.len();
            by_set.insert(set.clone(), idx);
            sets.push(set);
            raw_gens.push(g);
            Ok(idx)
        }

        // Seed: cyclic subgroups (the trivial one comes from the identity).
        let mut cyc_of_elem = vec![0usize; n];
        for e in 0..n as u32 {
            let set = table.closure_bitset(&[e]);
            let g = if e == 0 { vec![] } else { vec![e] };
            cyc_of_elem[e as usize] = register(cap, set, g, &mut sets, &mut raw_gens, &mut by_set)?;
        }

        let half = n / 2;
        let full_set = {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert_range(..);
            s
        };
        // Close under pairwise joins: every pair (i, j) with j < i gets
        // processed exactly once, including pairs involving freshly created
        // nodes, so the final set is join-closed.
        let mut i = 1;
        while i < sets.len() {
            for j in 0..i {
                let a = &sets[i];
                let b = &sets[j];
                if a.is_subset(b) || b.is_subset(a) {
                    continue;
                }
                let mut joined_gens: Vec<u32> = raw_gens[i].clone();
                joined_gens.extend_from_slice(&raw_gens[j]);
                let set = match table.closure_bitset_capped(&joined_gens, half) {
                    Some(s) => s,
                    // a proper subgroup has at most half the elements
                    None => full_set.clone(),
                };
                if !by_set.contains_key(&set) {
                    let g = minimize_gens(&table, &set);
                    register(cap, set, g, &mut sets, &mut raw_gens, &mut by_set)?;
                }
            }
            i += 1;
        }
        if !by_set.contains_key(&full_set) {
            let g = minimize_gens(&table, &full_set);
            register(
                cap,
                full_set.clone(),
                g,
                &mut sets,
                &mut raw_gens,
                &mut by_set,
            )?;
        }

        // Canonical order: by (order, member indices lexicographically).
        let mut order_keys: Vec<usize> = (0..sets.len()).collect();
        order_keys.sort_by(|&a, &b| {
            let ka = sets[a].count_ones(..);
            let kb = sets[b].count_ones(..);
            ka.cmp(&kb).then_with(|| sets[a].ones().cmp(sets[b].ones()))
        });

        let mut nodes = Vec::with_capacity(sets.len());
        let mut by_members = HashMap::new();
        let mut old_to_new = vec![0u32; sets.len()];
        for (new_id, &old) in order_keys.iter().enumerate() {
            old_to_new[old] = new_id as u32;
        }
        for (new_id, &old) in order_keys.iter().enumerate() {
            let members = sets[old].clone();
            let order = members.count_ones(..) as u64;
            let gens = raw_gens[old].clone();
            let is_abelian = gens.iter().enumerate().all(|(k, &a)| {
                gens[k + 1..]
                    .iter()
                    .all(|&b| table.mul(a, b) == table.mul(b, a))
            });
            by_members.insert(members.clone(), new_id as u32);
            nodes.push(SubgroupNode {
                id: new_id as u32,
                members,
                gens,
                order,
                is_normal: false,
                is_maximal: false,
                is_abelian,
                class_rep: new_id as u32,
            });
        }
        let elem_cyc: Vec<NodeId> = cyc_of_elem.iter().map(|&old| old_to_new[old]).collect();
        let full = by_members[&full_set];
        let trivial = elem_cyc[0];

        let mut lat = SubgroupLattice {
            table,
            nodes,
            by_members,
            elem_cyc,
            full,
            trivial,
            maximal: Vec::new(),
            frattini: 0,
        };
        lat.compute_conjugacy_and_normal();
        lat.compute_maximal();
        lat.frattini = lat.compute_frattini();
        Ok(lat)
    }

    fn compute_conjugacy_and_normal(&mut self) {
        let gens = self.table.generator_indices();
        // index permutation of elements under conjugation by each generator
        let conj_maps: Vec<Vec<u32>> = gens
            .iter()
            .map(|&g| {
                (0..self.table.len() as u32)
                    .map(|e| self.table.conj(e, g))
                    .collect()
            })
            .collect();
        let n_nodes = self.nodes.len();
        let mut visited = vec![false; n_nodes];
        for start in 0..n_nodes {
            if visited[start] {
                continue;
            }
            let mut orbit = vec![start as NodeId];
            visited[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let id = orbit[head];
                head += 1;
                for cm in &conj_maps {
                    let mut image = FixedBitSet::with_capacity(self.table.len());
                    for e in self.nodes[id as usize].members.ones() {
                        image.insert(cm[e] as usize);
                    }
                    let other = self.by_members[&image];
                    if !visited[other as usize] {
                        visited[other as usize] = true;
                        orbit.push(other);
                    }
                }
            }
            let rep = *orbit.iter().min().unwrap();
            let normal = orbit.len() == 1;
            for id in orbit {
                self.nodes[id as usize].class_rep = rep;
                self.nodes[id as usize].is_normal = normal;
            }
        }
    }

    fn compute_maximal(&mut self) {
        let n_nodes = self.nodes.len();
        let full = self.full as usize;
        let mut maximal = Vec::new();
        for i in 0..n_nodes {
            if i == full {
                continue;
            }
            let mut is_max = true;
            for j in 0..n_nodes {
                if j == i || j == full {
                    continue;
                }
                if self.nodes[i].order < self.nodes[j].order
                    && self.nodes[j].order % self.nodes[i].order == 0
                    && self.nodes[i].members.is_subset(&self.nodes[j].members)
                {
                    is_max = false;
                    break;
                }
            }
            if is_max {
                self.nodes[i].is_maximal = true;
                maximal.push(i as NodeId);
            }
        }
        self.maximal = maximal;
    }

    fn compute_frattini(&self) -> NodeId {
        let mut meet = self.nodes[self.full as usize].members.clone();
        for &m in &self.maximal {
            meet.intersect_with(&self.nodes[m as usize].members);
        }
        *self
            .by_members
            .get(&meet)
            .expect("intersection of subgroups is a subgroup; lattice is complete")
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn nodes(&self) -> &[SubgroupNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &SubgroupNode {
        &self.nodes[id as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full(&self) -> NodeId {
        self.full
    }

    pub fn trivial(&self) -> NodeId {
        self.trivial
    }

    /// Node of the cyclic subgroup generated by an element.
    pub fn cyclic_node(&self, elem: u32) -> NodeId {
        self.elem_cyc[elem as usize]
    }

    /// Exactly the proper subgroups covered only by the full group.
    pub fn maximal_subgroups(&self) -> &[NodeId] {
        &self.maximal
    }

    /// Frattini subgroup: intersection of all maximal subgroups.
    pub fn frattini_subgroup(&self) -> NodeId {
        self.frattini
    }

    /// Intersection of two nodes (bitset AND; the lattice is complete, so
    /// the result is always a registered node).
    pub fn intersect(&self, a: NodeId, b: NodeId) -> NodeId {
        let mut meet = self.nodes[a as usize].members.clone();
        meet.intersect_with(&self.nodes[b as usize].members);
        self.by_members[&meet]
    }

    /// Join of two nodes: the subgroup generated by both.
    pub fn join(&self, a: NodeId, b: NodeId) -> NodeId {
        let na = &self.nodes[a as usize];
        let nb = &self.nodes[b as usize];
        if nb.members.is_subset(&na.members) {
            return a;
        }
        if na.members.is_subset(&nb.members) {
            return b;
        }
        let mut gens = na.gens.clone();
        gens.extend_from_slice(&nb.gens);
        let set = match self
            .table
            .closure_bitset_capped(&gens, self.table.len() / 2)
        {
            Some(s) => s,
            None => return self.full,
        };
        self.by_members[&set]
    }

    /// Join of a node with the cyclic subgroup of one element.
    pub fn join_elem(&self, a: NodeId, e: u32) -> NodeId {
        if self.nodes[a as usize].members.contains(e as usize) {
            return a;
        }
        self.join(a, self.elem_cyc[e as usize])
    }

    pub fn node_by_members(&self, members: &FixedBitSet) -> Option<NodeId> {
        self.by_members.get(members).copied()
    }

    /// Locates the node of a subgroup given in generator form.
    pub fn node_of_group(&self, sub: &PermGroup) -> Result<NodeId> {
        let mut gens = Vec::new();
        for g in sub.generators() {
            let e = self.table.index_of(g).ok_or(Error::NotASubgroup)?;
            gens.push(e);
        }
        let set = self.table.closure_bitset(&gens);
        Ok(self.by_members[&set])
    }

    /// Materializes a node as a permutation group.
    pub fn group_of_node(&self, id: NodeId) -> PermGroup {
        let gens: Vec<Permutation> = self.nodes[id as usize]
            .gens
            .iter()
            .map(|&e| self.table.elem(e).clone())
            .collect();
        PermGroup::from_generators(self.table.degree(), gens)
            .expect("node generators are valid permutations")
    }

    /// Normal subgroups minimal among the nontrivial normal ones.
    pub fn minimal_normal_subgroups(&self) -> Vec<NodeId> {
        let normals: Vec<NodeId> = self
            .nodes
            .iter()
            .filter(|nd| nd.is_normal && nd.order > 1)
            .map(|nd| nd.id)
            .collect();
        normals
            .iter()
            .copied()
            .filter(|&a| {
                normals.iter().all(|&b| {
                    b == a
                        || !(self.nodes[b as usize].order < self.nodes[a as usize].order
                            && self.nodes[b as usize]
                                .members
                                .is_subset(&self.nodes[a as usize].members))
                })
            })
            .collect()
    }

    /// All normal nodes, ascending by id.
    pub fn normal_subgroups(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|nd| nd.is_normal)
            .map(|nd| nd.id)
            .collect()
    }

    /// Conjugacy class representatives (least id per class), ascending.
    pub fn class_reps(&self) -> Vec<NodeId> {
        let mut reps: Vec<NodeId> = self
            .nodes
            .iter()
            .filter(|nd| nd.class_rep == nd.id)
            .map(|nd| nd.id)
            .collect();
        reps.sort_unstable();
        reps
    }
}

/// Deterministic small generating list for a member set: scan elements in
/// index order, keep those that enlarge the running closure.
fn minimize_gens(table: &ElementTable, members: &FixedBitSet) -> Vec<u32> {
    let target = members.count_ones(..);
    let mut gens: Vec<u32> = Vec::new();
    let mut closed = FixedBitSet::with_capacity(table.len());
    closed.insert(0);
    for e in members.ones() {
        if !closed.contains(e) {
            gens.push(e as u32);
            closed = table.closure_bitset(&gens);
            if closed.count_ones(..) == target {
                break;
            }
        }
    }
    gens
}

/// How membership in a declared subgroup is tested in the generator regime.
#[derive(Debug, Clone)]
pub enum MemberTest {
    /// The subgroup is the setwise stabilizer of these points.
    SetStabilizer(Vec<usize>),
    /// Membership by sifting in the subgroup's own chain.
    Chain(PermGroup),
}

/// A declared subgroup in the generator regime: generators plus a
/// membership predicate.
#[derive(Debug, Clone)]
pub struct DeclaredSubgroup {
    pub gens: Vec<Permutation>,
    pub test: MemberTest,
}

impl DeclaredSubgroup {
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        match &self.test {
            MemberTest::SetStabilizer(points) => {
                let mut sorted = points.clone();
                sorted.sort_unstable();
                sorted.dedup();
                Ok(g.image_of_set(&sorted) == sorted)
            }
            MemberTest::Chain(group) => group.contains(g),
        }
    }

    /// Canonical invariant of the right coset `M·g` when one is available.
    /// For a setwise stabilizer it is the image of the defining point set.
    fn coset_key(&self, g: &Permutation) -> Option<Vec<usize>> {
        match &self.test {
            MemberTest::SetStabilizer(points) => Some(g.image_of_set(points)),
            MemberTest::Chain(_) => None,
        }
    }
}

/// Decides maximality of `m` in `g` by checking that `m` together with any
/// one representative of each nontrivial coset generates the whole group.
/// Sound because `<M, g>` depends only on the coset `Mg`.
pub fn is_maximal_by_cosets(
    g: &PermGroup,
    m: &DeclaredSubgroup,
    budgets: &Budgets,
) -> Result<bool> {
    for gen in &m.gens {
        if !g.contains(gen)? || !m.contains(gen)? {
            return Err(Error::NotASubgroup);
        }
    }
    let m_group = PermGroup::from_generators(g.degree(), m.gens.clone())?;
    let m_order = m_group.order().clone();
    if &m_order == g.order() {
        return Err(Error::NotASubgroup); // not proper
    }

    let reps: Vec<Permutation> = if m.coset_key(&Permutation::identity(g.degree())).is_some() {
        // BFS keyed by the set-image invariant.
        let id = Permutation::identity(g.degree());
        let mut reps = vec![id.clone()];
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        seen.insert(m.coset_key(&id).unwrap(), ());
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head].clone();
            head += 1;
            for s in g.generators() {
                let x = r.compose(s);
                let key = m.coset_key(&x).unwrap();
                if !seen.contains_key(&key) {
                    if reps.len() >= budgets.coset_cap {
                        return Err(Error::CosetCap {
                            cap: budgets.coset_cap,
                        });
                    }
                    seen.insert(key, ());
                    reps.push(x);
                }
            }
        }
        reps
    } else {
        // BFS identifying cosets by membership of x * r^-1.
        let mut reps = vec![Permutation::identity(g.degree())];
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head].clone();
            head += 1;
            for s in g.generators() {
                let x = r.compose(s);
                let mut known = false;
                for r2 in &reps {
                    if m.contains(&x.compose(&r2.inverse()))? {
                        known = true;
                        break;
                    }
                }
                if !known {
                    if reps.len() >= budgets.coset_cap {
                        return Err(Error::CosetCap {
                            cap: budgets.coset_cap,
                        });
                    }
                    reps.push(x);
                }
            }
        }
        reps
    };

    // The generator list must generate the full declared subgroup, otherwise
    // the coset count disagrees with the order.
    if m_order * BigUint::from(reps.len()) != *g.order() {
        return Err(Error::NotASubgroup);
    }

    for r in reps.iter().skip(1) {
        let mut gens = m.gens.clone();
        gens.push(r.clone());
        let h = PermGroup::from_generators(g.degree(), gens)?;
        if h.order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::naive;

    fn lattice_of(g: &PermGroup) -> SubgroupLattice {
        let t = ElementTable::build(g, 50_000).unwrap();
        SubgroupLattice::enumerate(t, &Budgets::default()).unwrap()
    }

    #[test]
    fn s3_has_six_subgroups() {
        let g = constructions::symmetric(3).unwrap();
        let lat = lattice_of(&g);
        assert_eq!(lat.len(), 6);
        // oracle: subset closure
        let t = ElementTable::build(&g, 100).unwrap();
        let subs = naive::all_subgroups_by_subsets(3, t.elements());
        assert_eq!(subs.len(), 6);
    }

    #[test]
    fn klein_four_has_five_subgroups() {
        let g = constructions::elementary_abelian(2, 2).unwrap();
        let lat = lattice_of(&g);
        assert_eq!(lat.len(), 5);
        let t = ElementTable::build(&g, 100).unwrap();
        assert_eq!(
            naive::all_subgroups_by_subsets(g.degree(), t.elements()).len(),
            5
        );
    }

    #[test]
    fn cyclic_p_has_two_subgroups() {
        for p in [2u64, 3, 5, 7] {
            let g = constructions::cyclic(p).unwrap();
            assert_eq!(lattice_of(&g).len(), 2);
        }
    }

    #[test]
    fn cyclic_prime_power_counts() {
        // Z/p^k has k+1 subgroups
        for (p, k) in [(2u64, 4u32), (3, 3), (5, 2)] {
            let g = constructions::cyclic(p.pow(k)).unwrap();
            assert_eq!(lattice_of(&g).len(), (k + 1) as usize);
        }
    }

    #[test]
    fn elementary_abelian_rank2_counts() {
        // (Z/p)^2 has p+3 subgroups
        for p in [2u64, 3, 5] {
            let g = constructions::elementary_abelian(p, 2).unwrap();
            assert_eq!(lattice_of(&g).len(), (p + 3) as usize);
        }
    }

    #[test]
    fn maximal_subgroups_of_s3() {
        let g = constructions::symmetric(3).unwrap();
        let lat = lattice_of(&g);
        let max = lat.maximal_subgroups();
        assert_eq!(max.len(), 4);
        let orders: Vec<u64> = max.iter().map(|&m| lat.node(m).order).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 1);
    }

    #[test]
    fn maximal_subgroups_of_c6() {
        let g = constructions::cyclic(6).unwrap();
        let lat = lattice_of(&g);
        let mut orders: Vec<u64> = lat
            .maximal_subgroups()
            .iter()
            .map(|&m| lat.node(m).order)
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn maximal_subgroup_of_cp_is_trivial() {
        let g = constructions::cyclic(5).unwrap();
        let lat = lattice_of(&g);
        assert_eq!(lat.maximal_subgroups(), &[lat.trivial()]);
    }

    #[test]
    fn frattini_of_klein_four_is_trivial() {
        let g = constructions::elementary_abelian(2, 2).unwrap();
        let lat = lattice_of(&g);
        assert_eq!(lat.frattini_subgroup(), lat.trivial());
    }

    #[test]
    fn frattini_of_c4_has_order_two() {
        let g = constructions::cyclic(4).unwrap();
        let lat = lattice_of(&g);
        assert_eq!(lat.node(lat.frattini_subgroup()).order, 2);
    }

    #[test]
    fn frattini_of_q8_is_center() {
        let g = constructions::quaternion(8).unwrap();
        let lat = lattice_of(&g);
        let phi = lat.node(lat.frattini_subgroup());
        assert_eq!(phi.order, 2);
        assert!(phi.is_normal);
    }

    #[test]
    fn intersection_basics() {
        let g = constructions::elementary_abelian(2, 2).unwrap();
        let lat = lattice_of(&g);
        let lines: Vec<NodeId> = lat
            .nodes()
            .iter()
            .filter(|n| n.order == 2)
            .map(|n| n.id)
            .collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lat.intersect(lines[0], lines[0]), lines[0]);
        assert_eq!(lat.intersect(lines[0], lines[1]), lat.trivial());
    }

    #[test]
    fn intersection_a4_with_transposition_line_in_s4() {
        let g = constructions::symmetric(4).unwrap();
        let lat = lattice_of(&g);
        let t = lat.table();
        let swap = t
            .index_of(&Permutation::from_cycles(4, &[vec![0, 1]]).unwrap())
            .unwrap();
        let line = lat.cyclic_node(swap);
        let a4 = lat
            .nodes()
            .iter()
            .find(|n| n.order == 12)
            .map(|n| n.id)
            .unwrap();
        assert_eq!(lat.intersect(a4, line), lat.trivial());
    }

    #[test]
    fn minimal_normals() {
        let a5 = constructions::alternating(5).unwrap();
        let lat = lattice_of(&a5);
        assert_eq!(lat.minimal_normal_subgroups(), vec![lat.full()]);

        let a4 = constructions::alternating(4).unwrap();
        let lat = lattice_of(&a4);
        let mins = lat.minimal_normal_subgroups();
        assert_eq!(mins.len(), 1);
        assert_eq!(lat.node(mins[0]).order, 4);

        let c6 = constructions::cyclic(6).unwrap();
        let lat = lattice_of(&c6);
        let mut orders: Vec<u64> = lat
            .minimal_normal_subgroups()
            .iter()
            .map(|&m| lat.node(m).order)
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn coset_maximality_a4_in_a5() {
        let a5 = constructions::alternating(5).unwrap();
        let a4_gens = vec![
            Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap(),
            Permutation::from_cycles(5, &[vec![1, 2, 3]]).unwrap(),
        ];
        let m = DeclaredSubgroup {
            gens: a4_gens.clone(),
            test: MemberTest::Chain(PermGroup::from_generators(5, a4_gens).unwrap()),
        };
        assert!(is_maximal_by_cosets(&a5, &m, &Budgets::default()).unwrap());
    }

    #[test]
    fn coset_maximality_rejects_v4_in_s4() {
        let s4 = constructions::symmetric(4).unwrap();
        let v4_gens = vec![
            Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
        ];
        let m = DeclaredSubgroup {
            gens: v4_gens.clone(),
            test: MemberTest::Chain(PermGroup::from_generators(4, v4_gens).unwrap()),
        };
        assert!(!is_maximal_by_cosets(&s4, &m, &Budgets::default()).unwrap());
    }

    #[test]
    fn coset_maximality_agrees_with_lattice() {
        for g in [
            constructions::symmetric(4).unwrap(),
            constructions::dihedral(12).unwrap(),
            constructions::alternating(4).unwrap(),
        ] {
            let lat = lattice_of(&g);
            for node in lat.nodes() {
                if node.id == lat.full() || node.order == 1 {
                    continue;
                }
                let sub = lat.group_of_node(node.id);
                let m = DeclaredSubgroup {
                    gens: sub.generators().to_vec(),
                    test: MemberTest::Chain(sub.clone()),
                };
                assert_eq!(
                    is_maximal_by_cosets(&g, &m, &Budgets::default()).unwrap(),
                    node.is_maximal,
                    "node order {}",
                    node.order
                );
            }
        }
    }
}
