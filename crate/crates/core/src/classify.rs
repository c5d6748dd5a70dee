//! Structural predicates the theorems are conditioned on: abelian,
//! nilpotent, solvable, supersolvable (by prime-index maximals and by
//! normal series), Frattini conditions, abelian invariants.
//!
//! Flags that need the lattice are reported as `None` ("unknown") when no
//! lattice is supplied, never guessed.

use std::collections::HashSet;

use crate::budget::Budgets;
use crate::elements::{sylow_subgroup, ElementTable};
use crate::error::Result;
use crate::group::PermGroup;
use crate::lattice::{NodeId, SubgroupLattice};

#[derive(Debug, Clone, Default)]
pub struct ClassificationReport {
    pub abelian: bool,
    pub solvable: bool,
    pub nilpotent: Option<bool>,
    pub supersolvable: Option<bool>,
    pub frattini_free: Option<bool>,
    pub phi_meets_derived_trivial: Option<bool>,
    /// Set by callers once m and i are both computed.
    pub flat: Option<bool>,
    /// A maximal subgroup of non-prime index, when not supersolvable.
    pub non_prime_index_maximal: Option<NodeId>,
}

/// Computes all structural flags. Lattice-dependent flags stay `None`
/// without a lattice.
pub fn classify(g: &PermGroup, lat: Option<&SubgroupLattice>) -> Result<ClassificationReport> {
    let abelian = g.is_abelian();
    let solvable = g.is_solvable()?;
    let mut report = ClassificationReport {
        abelian,
        solvable,
        ..Default::default()
    };
    let Some(lat) = lat else {
        return Ok(report);
    };

    // nilpotent: every Sylow subgroup is normal
    let n = lat.table().len() as u64;
    let mut nilpotent = true;
    for p in prime_factors(n) {
        let sylow = sylow_subgroup(lat.table(), p)?;
        let node = lat.node_of_group(&sylow)?;
        if !lat.node(node).is_normal {
            nilpotent = false;
            break;
        }
    }
    report.nilpotent = Some(nilpotent);

    // supersolvable: every maximal subgroup has prime index
    let mut supersolvable = true;
    for &m in lat.maximal_subgroups() {
        let index = n / lat.node(m).order;
        if !crate::elements::is_prime(index) {
            supersolvable = false;
            report.non_prime_index_maximal = Some(m);
            break;
        }
    }
    report.supersolvable = Some(supersolvable);

    let phi = lat.frattini_subgroup();
    report.frattini_free = Some(phi == lat.trivial());
    report.phi_meets_derived_trivial = Some(phi_meets_derived(lat));

    debug_assert!(!abelian || nilpotent);
    debug_assert!(!nilpotent || supersolvable);
    debug_assert!(!supersolvable || solvable);
    Ok(report)
}

/// True iff the Frattini subgroup meets the derived subgroup trivially.
pub fn phi_meets_derived(lat: &SubgroupLattice) -> bool {
    let derived = lat.table().derived_bitset();
    let mut meet = lat.node(lat.frattini_subgroup()).members.clone();
    meet.intersect_with(&derived);
    meet.count_ones(..) == 1
}

/// A chain 1 = G_0 < ... < G_n = G of subgroups normal in G with quotients
/// of prime order arranged in non-increasing order from the bottom, or
/// `None` if no such chain exists. Exhaustive search over normal nodes
/// with memoized dead states.
pub fn supersolvable_series(lat: &SubgroupLattice) -> Option<Vec<NodeId>> {
    let normals = lat.normal_subgroups();
    let full = lat.full();
    let mut dead: HashSet<(NodeId, u64)> = HashSet::new();

    fn dfs(
        lat: &SubgroupLattice,
        normals: &[NodeId],
        current: NodeId,
        last_prime: u64,
        chain: &mut Vec<NodeId>,
        dead: &mut HashSet<(NodeId, u64)>,
    ) -> bool {
        if current == lat.full() {
            return true;
        }
        if dead.contains(&(current, last_prime)) {
            return false;
        }
        let cur_order = lat.node(current).order;
        for &next in normals {
            let next_order = lat.node(next).order;
            if next_order <= cur_order || next_order % cur_order != 0 {
                continue;
            }
            let q = next_order / cur_order;
            if q > last_prime || !crate::elements::is_prime(q) {
                continue;
            }
            if !lat.node(current).members.is_subset(&lat.node(next).members) {
                continue;
            }
            chain.push(next);
            if dfs(lat, normals, next, q, chain, dead) {
                return true;
            }
            chain.pop();
        }
        dead.insert((current, last_prime));
        false
    }

    let mut chain = vec![lat.trivial()];
    if dfs(
        lat,
        &normals,
        lat.trivial(),
        u64::MAX,
        &mut chain,
        &mut dead,
    ) {
        debug_assert_eq!(*chain.last().unwrap(), full);
        Some(chain)
    } else {
        None
    }
}

/// Invariant factors n_1 | n_2 | ... | n_k of the abelianization G/G'.
pub fn abelian_invariants(g: &PermGroup, budgets: &Budgets) -> Result<Vec<u64>> {
    let derived = g.derived_subgroup()?;
    let qa = g.quotient_action(&derived, budgets.coset_cap)?;
    let table = ElementTable::build(qa.group(), budgets.max_order_enumerate)?;
    let basis = abelian_basis(&table, budgets)?;
    let mut invariants: Vec<u64> = basis.iter().map(|&(_, o)| o).collect();
    invariants.reverse();
    Ok(invariants)
}

/// A basis of a finite abelian group realizing its invariant-factor
/// decomposition, largest order first: repeatedly split off an element of
/// maximal order together with a complement found in the lattice.
pub fn abelian_basis(table: &ElementTable, budgets: &Budgets) -> Result<Vec<(u32, u64)>> {
    if table.len() == 1 {
        return Ok(vec![]);
    }
    let lat = SubgroupLattice::enumerate(table.clone(), budgets)?;
    let mut basis: Vec<(u32, u64)> = Vec::new();
    let mut current = lat.full();
    while lat.node(current).order > 1 {
        let node = lat.node(current);
        // element of maximal order, least index breaking ties
        let mut best: Option<(u64, u32)> = None;
        for e in node.members.ones() {
            let o = table.order_of(e as u32);
            if best.map_or(true, |(bo, _)| o > bo) {
                best = Some((o, e as u32));
            }
        }
        let (order, elem) = best.expect("nontrivial group has elements");
        let cyc = lat.cyclic_node(elem);
        let target = node.order / order;
        let complement = lat
            .nodes()
            .iter()
            .find(|nd| {
                nd.order == target
                    && nd.members.is_subset(&node.members)
                    && lat.intersect(nd.id, cyc) == lat.trivial()
            })
            .map(|nd| nd.id)
            .expect("a cyclic factor of maximal order splits off");
        basis.push((elem, order));
        current = complement;
    }
    Ok(basis)
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn lat_of(g: &PermGroup) -> SubgroupLattice {
        let t = ElementTable::build(g, 50_000).unwrap();
        SubgroupLattice::enumerate(t, &Budgets::default()).unwrap()
    }

    #[test]
    fn s4_is_not_supersolvable() {
        let g = constructions::symmetric(4).unwrap();
        let lat = lat_of(&g);
        let r = classify(&g, Some(&lat)).unwrap();
        assert!(!r.abelian);
        assert!(r.solvable);
        assert_eq!(r.nilpotent, Some(false));
        assert_eq!(r.supersolvable, Some(false));
        // the counterwitness is a maximal of non-prime index (S3, index 4)
        let w = r.non_prime_index_maximal.unwrap();
        assert_eq!(24 / lat.node(w).order % 2, 0);
    }

    #[test]
    fn s3_is_supersolvable_not_nilpotent() {
        let g = constructions::symmetric(3).unwrap();
        let lat = lat_of(&g);
        let r = classify(&g, Some(&lat)).unwrap();
        assert_eq!(r.supersolvable, Some(true));
        assert_eq!(r.nilpotent, Some(false));
        assert_eq!(r.phi_meets_derived_trivial, Some(true));
    }

    #[test]
    fn p_groups_are_nilpotent() {
        for g in [
            constructions::quaternion(8).unwrap(),
            constructions::elementary_abelian(3, 2).unwrap(),
            constructions::dihedral(16).unwrap(),
        ] {
            let lat = lat_of(&g);
            assert_eq!(classify(&g, Some(&lat)).unwrap().nilpotent, Some(true));
        }
    }

    #[test]
    fn q8_phi_meets_derived() {
        let g = constructions::quaternion(8).unwrap();
        let lat = lat_of(&g);
        let r = classify(&g, Some(&lat)).unwrap();
        assert_eq!(r.phi_meets_derived_trivial, Some(false));
        assert_eq!(r.frattini_free, Some(false));
    }

    #[test]
    fn series_of_c6_and_s3() {
        let c6 = constructions::cyclic(6).unwrap();
        let lat = lat_of(&c6);
        let chain = supersolvable_series(&lat).unwrap();
        let orders: Vec<u64> = chain.iter().map(|&n| lat.node(n).order).collect();
        assert_eq!(orders, vec![1, 3, 6]);

        let s3 = constructions::symmetric(3).unwrap();
        let lat = lat_of(&s3);
        let chain = supersolvable_series(&lat).unwrap();
        let orders: Vec<u64> = chain.iter().map(|&n| lat.node(n).order).collect();
        assert_eq!(orders, vec![1, 3, 6]);
    }

    #[test]
    fn a4_has_no_supersolvable_series() {
        let a4 = constructions::alternating(4).unwrap();
        let lat = lat_of(&a4);
        assert!(supersolvable_series(&lat).is_none());
    }

    #[test]
    fn abelian_invariants_examples() {
        let b = Budgets::default();
        let v4 = constructions::elementary_abelian(2, 2).unwrap();
        assert_eq!(abelian_invariants(&v4, &b).unwrap(), vec![2, 2]);

        let s3 = constructions::symmetric(3).unwrap();
        assert_eq!(abelian_invariants(&s3, &b).unwrap(), vec![2]);

        let a4 = constructions::alternating(4).unwrap();
        assert_eq!(abelian_invariants(&a4, &b).unwrap(), vec![3]);

        // invariant factors of Z/2 x Z/4 x Z/3 are 2 | 12
        let g = constructions::abelian(&[2, 4, 3]).unwrap();
        assert_eq!(abelian_invariants(&g, &b).unwrap(), vec![2, 12]);
    }

    #[test]
    fn abelian_invariants_multiply_to_order() {
        let b = Budgets::default();
        for orders in [vec![4u64, 6], vec![8, 9], vec![2, 2, 5], vec![27]] {
            let g = constructions::abelian(&orders).unwrap();
            let inv = abelian_invariants(&g, &b).unwrap();
            let prod: u64 = inv.iter().product();
            assert_eq!(prod, orders.iter().product::<u64>());
        }
    }
}
