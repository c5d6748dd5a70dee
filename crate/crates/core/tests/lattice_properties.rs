//! Frattini-subgroup properties checked across a mixed bag of groups:
//! monotonicity along normal subgroups, the commutator/p-th-power
//! description for p-groups, and the non-generator characterization.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use gendim_core::budget::Budgets;
use gendim_core::constructions;
use gendim_core::elements::ElementTable;
use gendim_core::lattice::SubgroupLattice;
use gendim_core::PermGroup;

fn sample_groups() -> Vec<(String, PermGroup)> {
    let c3 = constructions::cyclic(3).unwrap();
    vec![
        ("C12".into(), constructions::cyclic(12).unwrap()),
        ("C8".into(), constructions::cyclic(8).unwrap()),
        ("Q8".into(), constructions::quaternion(8).unwrap()),
        ("Q16".into(), constructions::quaternion(16).unwrap()),
        ("D8".into(), constructions::dihedral(8).unwrap()),
        ("D12".into(), constructions::dihedral(12).unwrap()),
        ("D16".into(), constructions::dihedral(16).unwrap()),
        ("S4".into(), constructions::symmetric(4).unwrap()),
        ("A4".into(), constructions::alternating(4).unwrap()),
        (
            "E(3,2)".into(),
            constructions::elementary_abelian(3, 2).unwrap(),
        ),
        ("C4xC2".into(), constructions::abelian(&[4, 2]).unwrap()),
        ("C9xC3".into(), constructions::abelian(&[9, 3]).unwrap()),
        (
            "C3wrC3".into(),
            constructions::wreath_cyclic(&c3, 3).unwrap(),
        ),
        (
            "ktog(S3)".into(),
            constructions::ktog_construct(
                &constructions::symmetric(3).unwrap(),
                None,
                &Budgets::default(),
            )
            .unwrap()
            .group,
        ),
    ]
}

fn lattice_of(g: &PermGroup) -> SubgroupLattice {
    let t = ElementTable::build(g, 50_000).unwrap();
    SubgroupLattice::enumerate(t, &Budgets::default()).unwrap()
}

#[test]
fn frattini_of_normal_subgroup_lies_in_frattini() {
    for (name, g) in sample_groups() {
        let lat = lattice_of(&g);
        let phi_g = lat.node(lat.frattini_subgroup()).members.clone();
        for nid in lat.normal_subgroups() {
            if lat.node(nid).order == 1 {
                continue;
            }
            // Phi(N) inside the parent table: compute N's own lattice and
            // map its Frattini members back.
            let n_group = lat.group_of_node(nid);
            let n_table = ElementTable::build(&n_group, 50_000).unwrap();
            let n_lat = SubgroupLattice::enumerate(n_table, &Budgets::default()).unwrap();
            let phi_n = n_lat.node(n_lat.frattini_subgroup());
            for e in phi_n.members.ones() {
                let perm = n_lat.table().elem(e as u32);
                let parent_idx = lat.table().index_of(perm).unwrap();
                assert!(
                    phi_g.contains(parent_idx as usize),
                    "{name}: Phi(N) escapes Phi(G) for N of order {}",
                    lat.node(nid).order
                );
            }
        }
    }
}

#[test]
fn p_group_frattini_is_commutators_and_pth_powers() {
    for (name, g) in sample_groups() {
        let order = g.order_usize().unwrap() as u64;
        let primes = gendim_core::classify::prime_factors(order);
        if primes.len() != 1 {
            continue;
        }
        let p = primes[0];
        let lat = lattice_of(&g);
        let table = lat.table();
        // closure of all commutators and p-th powers
        let mut gens = Vec::new();
        for a in 0..table.len() as u32 {
            let ap = (0..p).fold(0u32, |acc, _| table.mul(acc, a));
            gens.push(ap);
            for b in 0..table.len() as u32 {
                let comm = table.mul(table.mul(table.mul(table.inv(a), table.inv(b)), a), b);
                gens.push(comm);
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let set = table.closure_bitset(&gens);
        assert_eq!(
            &set,
            &lat.node(lat.frattini_subgroup()).members,
            "{name}: Phi differs from <commutators, p-th powers>"
        );
    }
}

/// Frattini elements are exactly the non-generators: removing one from a
/// generating set never loses generation, while every element outside some
/// maximal subgroup is essential for at least one generating set.
#[test]
fn frattini_elements_are_non_generators() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (name, g) in sample_groups() {
        let lat = lattice_of(&g);
        let table = lat.table();
        let n = table.len();
        let full = lat.full();
        let phi = lat.node(lat.frattini_subgroup()).members.clone();

        for e in phi.ones() {
            let e = e as u32;
            if e == 0 {
                continue;
            }
            // 100 random generating sets containing e: dropping e keeps them
            // generating
            let mut tried = 0;
            while tried < 100 {
                let mut gens = vec![e];
                while lat.join_elem(
                    gens[1..]
                        .iter()
                        .fold(lat.trivial(), |acc, &x| lat.join_elem(acc, x)),
                    gens[0],
                ) != full
                {
                    gens.push(rng.random_range(1..n) as u32);
                    if gens.len() > 10 {
                        break;
                    }
                }
                let span_all = gens
                    .iter()
                    .fold(lat.trivial(), |acc, &x| lat.join_elem(acc, x));
                if span_all != full {
                    continue;
                }
                tried += 1;
                let span_without = gens[1..]
                    .iter()
                    .fold(lat.trivial(), |acc, &x| lat.join_elem(acc, x));
                assert_eq!(
                    span_without, full,
                    "{name}: dropping a Frattini element broke generation"
                );
            }
        }

        // outside Phi: some maximal M avoids g, M + g generates, M doesn't
        for e in 0..n as u32 {
            if e == 0 || phi.contains(e as usize) {
                continue;
            }
            let m = lat
                .maximal_subgroups()
                .iter()
                .copied()
                .find(|&m| !lat.node(m).members.contains(e as usize))
                .unwrap_or_else(|| panic!("{name}: non-Frattini element inside every maximal"));
            assert_ne!(m, full);
            assert_eq!(lat.join_elem(m, e), full, "{name}: maximal plus element");
        }
    }
}
