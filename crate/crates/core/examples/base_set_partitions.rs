//! Build a logic from partitions of a base set: blocks become atoms, each
//! partition a context, and every point a two-valued state.
//!
//!     cargo run --example base_set_partitions

use quantum_square::{logic_from_partitions, BaseSetSpec, Point};

fn main() {
    let base: Vec<Point> = (1..=4).map(Point::Int).collect();
    let block = |pts: &[i64]| pts.iter().copied().map(Point::Int).collect::<Vec<_>>();
    let partitions = vec![
        vec![block(&[1]), block(&[2]), block(&[3, 4])],
        vec![block(&[1, 2]), block(&[3]), block(&[4])],
        vec![block(&[1, 3]), block(&[2, 4])],
    ];
    let spec = BaseSetSpec::new("four_points", base, partitions, None).expect("partitions");
    let (logic, states) = logic_from_partitions(&spec).expect("separating points");

    println!("atoms:    {}", logic.atoms().join(" "));
    for (i, context) in logic.contexts().iter().enumerate() {
        let names: Vec<&str> = context.iter().map(|&a| logic.atoms()[a].as_str()).collect();
        println!("context {i}: {}", names.join(" "));
    }
    println!();
    for (point, state) in spec.base_set().iter().zip(states.states()) {
        println!("point {point} -> {} {}", state.label, state.bits());
    }

    // every partition comes back as a partition of the state labels
    for blocks in states.partition_representation(&logic).unwrap() {
        let shown: Vec<String> = blocks
            .iter()
            .map(|b| format!("{{{}}}", b.join(",")))
            .collect();
        println!("{}", shown.join(" "));
    }
}
