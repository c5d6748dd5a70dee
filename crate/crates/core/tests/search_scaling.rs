//! Scaling checks on the larger catalog members. Ignored by default; run
//! with `cargo test -p gendim-core --test search_scaling -- --ignored`.

use std::time::Instant;

use gendim_core::budget::Budgets;
use gendim_core::constructions;
use gendim_core::dimensions;
use gendim_core::elements::ElementTable;
use gendim_core::lattice::SubgroupLattice;

fn report(name: &str, g: &gendim_core::PermGroup) {
    let b = Budgets::default();
    let t0 = Instant::now();
    let table = ElementTable::build(g, b.max_order_enumerate).unwrap();
    let t_table = t0.elapsed();
    let t0 = Instant::now();
    let lat = SubgroupLattice::enumerate(table, &b).unwrap();
    let t_lat = t0.elapsed();
    let t0 = Instant::now();
    let m = dimensions::dim_m(&lat, &b);
    let t_m = t0.elapsed();
    let t0 = Instant::now();
    let i = dimensions::dim_i(&lat, &b);
    let t_i = t0.elapsed();
    let t0 = Instant::now();
    let md = dimensions::maxdim(&lat, &b);
    let t_md = t0.elapsed();
    println!(
        "{name}: |G|={} nodes={} m={} i={} maxdim={} (table {:?}, lattice {:?}, m {:?}, i {:?}, maxdim {:?})",
        lat.table().len(),
        lat.len(),
        m.value,
        i.value,
        md.value,
        t_table,
        t_lat,
        t_m,
        t_i,
        t_md
    );
}

#[test]
#[ignore]
fn scaling_s5() {
    report("S5", &constructions::symmetric(5).unwrap());
}

#[test]
#[ignore]
fn scaling_a6() {
    report("A6", &constructions::alternating(6).unwrap());
}

#[test]
#[ignore]
fn scaling_s6() {
    report("S6", &constructions::symmetric(6).unwrap());
}

#[test]
#[ignore]
fn scaling_wreath_c3_c3() {
    let c3 = constructions::cyclic(3).unwrap();
    report("C3 wr C3", &constructions::wreath_cyclic(&c3, 3).unwrap());
}

#[test]
#[ignore]
fn scaling_ea_2_6() {
    report("(Z/2)^6", &constructions::elementary_abelian(2, 6).unwrap());
}
