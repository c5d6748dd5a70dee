//! One-off derivation of the order-720 separation witness (m = 4,
//! MaxDim = 5): enumerate every Frattini-free solvable candidate of order
//! 720 as socle x| complement and measure m and MaxDim with the engine.
//!
//! A group with MaxDim != m of minimal order must be Frattini-free (its
//! Frattini quotient would be a smaller witness), so its socle is a
//! complemented direct sum of elementary abelian groups on which the
//! complement acts faithfully and completely reducibly. The complement
//! orders admitting a faithful action force the shapes below.
//!
//! Run with:
//!   cargo test -p gendim-core --release --test witness_hunt -- --ignored --nocapture

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use gendim_core::budget::Budgets;
use gendim_core::dimensions;
use gendim_core::elements::ElementTable;
use gendim_core::lattice::SubgroupLattice;
use gendim_core::perm::Permutation;
use gendim_core::PermGroup;

/// Vector-space block: points are vectors of F_p^d in mixed-radix order.
#[derive(Clone, Copy)]
struct Block {
    p: usize,
    d: u32,
    offset: usize,
}

impl Block {
    fn size(&self) -> usize {
        self.p.pow(self.d)
    }

    fn translations(&self, degree: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        for axis in 0..self.d {
            let step = self.p.pow(axis);
            let mut img: Vec<usize> = (0..degree).collect();
            for v in 0..self.size() {
                let digit = v / step % self.p;
                let w = v - digit * step + (digit + 1) % self.p * step;
                img[self.offset + v] = self.offset + w;
            }
            out.push(Permutation::from_images(img).unwrap());
        }
        out
    }

    /// Linear map given by a matrix (columns = images of basis vectors).
    fn linear(&self, degree: usize, cols: &[Vec<usize>]) -> Permutation {
        let d = self.d as usize;
        assert_eq!(cols.len(), d);
        let mut img: Vec<usize> = (0..degree).collect();
        for v in 0..self.size() {
            let mut w = vec![0usize; d];
            let mut rest = v;
            for axis in 0..d {
                let digit = rest % self.p;
                rest /= self.p;
                for r in 0..d {
                    w[r] = (w[r] + digit * cols[axis][r]) % self.p;
                }
            }
            let mut wi = 0;
            for r in (0..d).rev() {
                wi = wi * self.p + w[r];
            }
            img[self.offset + v] = self.offset + wi;
        }
        Permutation::from_images(img).unwrap()
    }

    fn gl_generators(&self, degree: usize) -> Vec<Permutation> {
        let d = self.d as usize;
        let p = self.p;
        let mut mats: Vec<Vec<Vec<usize>>> = Vec::new();
        match (d, p) {
            (1, _) => {
                let root = primitive_root(p);
                mats.push(vec![vec![root]]);
            }
            (2, 2) => {
                mats.push(vec![vec![0, 1], vec![1, 0]]); // swap
                mats.push(vec![vec![1, 1], vec![0, 1]]); // transvection
            }
            (2, 3) => {
                mats.push(vec![vec![1, 1], vec![0, 1]]);
                mats.push(vec![vec![1, 0], vec![1, 1]]);
                mats.push(vec![vec![2, 0], vec![0, 1]]);
            }
            (3, 2) => {
                // companion of t^3 + t + 1, and a swap
                mats.push(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]);
                mats.push(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
            }
            (4, 2) => {
                // multiplication by t in F_16 = F_2[t]/(t^4 + t + 1)
                mats.push(vec![
                    vec![0, 1, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 0, 1],
                    vec![1, 1, 0, 0],
                ]);
            }
            _ => panic!("unsupported block"),
        }
        mats.iter().map(|m| self.linear(degree, m)).collect()
    }
}

fn primitive_root(p: usize) -> usize {
    'g: for g in 2..p {
        let mut x = 1;
        for _ in 0..p - 2 {
            x = x * g % p;
            if x == 1 {
                continue 'g;
            }
        }
        return g;
    }
    1
}

/// All subgroups of order at most `max_order`, by join-closure of the
/// cyclic subgroups of dividing order (joins inside a small subgroup never
/// leave the size bound, so this finds every subgroup of order <= bound).
fn small_subgroups(table: &ElementTable, max_order: u64) -> Vec<(FixedBitSet, Vec<u32>)> {
    let n = table.len();
    let mut sets: Vec<FixedBitSet> = Vec::new();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut by_set: HashMap<FixedBitSet, usize> = HashMap::new();
    for e in 0..n as u32 {
        if e != 0 && max_order % table.order_of(e) != 0 {
            continue;
        }
        let set = table.closure_bitset(&[e]);
        if !by_set.contains_key(&set) {
            by_set.insert(set.clone(), sets.len());
            sets.push(set);
            gens.push(if e == 0 { vec![] } else { vec![e] });
        }
    }
    let mut i = 1;
    while i < sets.len() {
        for j in 0..i {
            if sets[i].is_subset(&sets[j]) || sets[j].is_subset(&sets[i]) {
                continue;
            }
            let mut g: Vec<u32> = gens[i].clone();
            g.extend_from_slice(&gens[j]);
            if let Some(set) = table.closure_bitset_capped(&g, max_order as usize) {
                if max_order % set.count_ones(..) as u64 == 0 && !by_set.contains_key(&set) {
                    by_set.insert(set.clone(), sets.len());
                    sets.push(set);
                    gens.push(g);
                }
            }
        }
        i += 1;
    }
    sets.into_iter().zip(gens).collect()
}

/// Deduplicate subgroup bitsets up to conjugacy in the ambient table group.
fn conjugacy_reps(table: &ElementTable, subs: Vec<(FixedBitSet, Vec<u32>)>) -> Vec<Vec<u32>> {
    let gen_idx = table.generator_indices();
    let conj_maps: Vec<Vec<u32>> = gen_idx
        .iter()
        .map(|&g| (0..table.len() as u32).map(|e| table.conj(e, g)).collect())
        .collect();
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    let mut reps = Vec::new();
    for (set, g) in subs {
        if seen.contains_key(&set) {
            continue;
        }
        reps.push(g);
        // mark the whole conjugacy orbit
        let mut orbit = vec![set.clone()];
        seen.insert(set, ());
        let mut head = 0;
        while head < orbit.len() {
            let cur = orbit[head].clone();
            head += 1;
            for cm in &conj_maps {
                let mut img = FixedBitSet::with_capacity(table.len());
                for e in cur.ones() {
                    img.insert(cm[e] as usize);
                }
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    orbit.push(img);
                }
            }
        }
    }
    reps
}

struct Candidate {
    label: String,
    group: PermGroup,
}

/// All candidates for one socle shape: translations of every block, plus an
/// order-`h_order` subgroup of the product of the blocks' linear groups.
fn shape_candidates(label: &str, blocks: &[(usize, u32)], h_order: u64) -> Vec<Candidate> {
    let mut off = 0;
    let blocks: Vec<Block> = blocks
        .iter()
        .map(|&(p, d)| {
            let b = Block { p, d, offset: off };
            off += b.size();
            b
        })
        .collect();
    let degree = off;
    let mut linear_gens = Vec::new();
    for b in &blocks {
        linear_gens.extend(b.gl_generators(degree));
    }
    let linear = PermGroup::from_generators(degree, linear_gens).unwrap();
    let table = ElementTable::build(&linear, 50_000).unwrap();
    let subs = small_subgroups(&table, h_order);
    let of_order: Vec<(FixedBitSet, Vec<u32>)> = subs
        .into_iter()
        .filter(|(s, _)| s.count_ones(..) as u64 == h_order)
        .collect();
    let reps = conjugacy_reps(&table, of_order);

    let mut translations = Vec::new();
    for b in &blocks {
        translations.extend(b.translations(degree));
    }
    let mut out = Vec::new();
    for (k, gens) in reps.into_iter().enumerate() {
        let mut all = translations.clone();
        for e in gens {
            all.push(table.elem(e).clone());
        }
        let group = PermGroup::from_generators(degree, all).unwrap();
        assert_eq!(group.order_usize(), Some(720), "{label} candidate {k}");
        out.push(Candidate {
            label: format!("{label}#{k}"),
            group,
        });
    }
    out
}

#[test]
#[ignore]
fn hunt_720_witness() {
    let budgets = Budgets {
        search_nodes: 50_000_000,
        ..Budgets::default()
    };
    let mut candidates = Vec::new();
    // socle 3^2 * 5, complement of order 16 in GL(2,3) x C4
    candidates.extend(shape_candidates("A(9,5)|16", &[(3, 2), (5, 1)], 16));
    // socle 2 * 3^2 * 5, complement of order 8
    candidates.extend(shape_candidates("B(2,9,5)|8", &[(2, 1), (3, 2), (5, 1)], 8));
    // socle 2^2 * 3 * 5, complement of order 12 in S3 x C2 x C4
    candidates.extend(shape_candidates(
        "C(4,3,5)|12",
        &[(2, 2), (3, 1), (5, 1)],
        12,
    ));
    // socle 2^3 * 3 * 5, complement of order 6 in GL(3,2) x C2 x C4
    candidates.extend(shape_candidates("D(8,3,5)|6", &[(2, 3), (3, 1), (5, 1)], 6));
    // socle 2^2 * 3^2 * 5, complement of order 4
    candidates.extend(shape_candidates("E(4,9,5)|4", &[(2, 2), (3, 2), (5, 1)], 4));
    // socle 2^4 * 3^2, complement C5 acting on F_16
    candidates.extend(shape_candidates("F(16,9)|5", &[(2, 4), (3, 2)], 5));
    // socle 2^4 * 3, complement C15
    candidates.extend(shape_candidates("G(16,3)|15", &[(2, 4), (3, 1)], 15));
    // socle 2^4 * 5, complement of order 9
    candidates.extend(shape_candidates("H(16,5)|9", &[(2, 4), (5, 1)], 9));

    println!("total candidates: {}", candidates.len());
    let mut hits = Vec::new();
    for c in &candidates {
        let table = ElementTable::build(&c.group, budgets.max_order_enumerate).unwrap();
        let lat = match SubgroupLattice::enumerate(table, &budgets) {
            Ok(l) => l,
            Err(e) => {
                println!("{}: lattice failed: {e}", c.label);
                continue;
            }
        };
        let m = dimensions::dim_m(&lat, &budgets);
        let md = dimensions::maxdim(&lat, &budgets);
        println!(
            "{}: nodes={} m={} maxdim={}",
            c.label,
            lat.len(),
            m.value,
            md.value
        );
        if m.value.value() != md.value.value() {
            let i = dimensions::dim_i(&lat, &budgets);
            println!(
                "  *** WITNESS: m={} maxdim={} i={}",
                m.value, md.value, i.value
            );
            println!("  degree {}", c.group.degree());
            for g in c.group.generators() {
                println!("  gen {:?}", g.images());
            }
            hits.push(c.label.clone());
        }
    }
    println!("hits: {hits:?}");
    assert!(!hits.is_empty(), "no witness found in the candidate pool");
}
