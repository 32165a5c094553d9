use std::time::Instant;
use frt_core::descriptor::GroupDescriptor;
use frt_core::matgroups::{build_group, conjugacy_classes, abelian_basis};
use frt_core::chartab;

fn main() {
    let d = GroupDescriptor::parse("G(78,13,2)").unwrap();
    let g = build_group(&d).unwrap();
    let h = g.abelian_index2().unwrap();
    let t1 = Instant::now();
    let classes = conjugacy_classes(&g);
    eprintln!("classes: {:?} ({})", t1.elapsed(), classes.count());
    let t2 = Instant::now();
    let basis = abelian_basis(&g, &h).unwrap();
    eprintln!("abelian basis: {:?} rank {}", t2.elapsed(), basis.len());
    let t3 = Instant::now();
    let ac = chartab::abelian_coordinates_pub(&g, &h).unwrap();
    eprintln!("coords: {:?} exponent {}", t3.elapsed(), ac);
    let t4 = Instant::now();
    let tab = chartab::character_table(&g, Some(h)).unwrap();
    eprintln!("full table: {:?} ({} chars)", t4.elapsed(), tab.num_chars());
}
