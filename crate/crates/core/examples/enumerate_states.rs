//! Enumerate the two-valued states of a logic given as atoms and contexts,
//! then print its support table.
//!
//!     cargo run --example enumerate_states

use quantum_square::{PartitionLogic, Separation};

fn main() {
    // three blocks of three atoms glued into a cycle
    let logic = PartitionLogic::from_named_contexts(
        "triangle_logic",
        &[
            vec!["a", "b", "c"],
            vec!["c", "d", "e"],
            vec!["e", "f", "a"],
        ],
    )
    .expect("valid logic");

    let states = logic.enumerate_states();
    println!("{} states of {}:", states.len(), logic.name());
    for s in states.states() {
        println!("  {}  {}", s.label, s.bits());
    }

    println!("\nsupports:\n{}", states.supports(&logic));
    match states.separation(&logic) {
        Separation::Separating => println!("the states separate every pair of atoms"),
        Separation::Collision { first, second } => {
            println!("{first} and {second} cannot be told apart")
        }
    }
}
