//! Build Q_n and a general Z_2^n Cayley graph, inspect them, export them.
//!
//!     cargo run --example hypercube -- 3

use cubespec::cayley::{is_generating, make_cayley, make_hypercube, GeneratorSet, GroupElement};

fn main() -> cubespec::Result<()> {
    let n: u32 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse()).expect("n must be an integer");

    let q = make_hypercube(n)?;
    println!("Q_{n}: {} vertices, degree {}, {} edges", q.vertex_count(), q.degree(), q.edge_count());
    println!("diameter {:?}, connected {}", q.diameter(), q.is_connected());

    let origin = GroupElement::identity(n)?;
    let nbrs: Vec<String> = q.neighbors(origin)?.iter().map(ToString::to_string).collect();
    println!("neighbors of {origin}: {}", nbrs.join(" "));

    if n <= 4 {
        print!("{}", q.to_dot());
    }

    // Same group, a different generating set: weight-2 elements only span the even-weight subgroup.
    let even: Vec<u64> = (1..1u64 << n).filter(|x| x.count_ones() == 2).collect();
    if !even.is_empty() {
        let gens = GeneratorSet::from_bits(n, &even)?;
        println!("weight-2 generators span Z_2^{n}: {}", is_generating(&gens));
        let g = make_cayley(n, gens)?;
        println!("  degree {}, components {}", g.degree(), g.component_count());
    }
    Ok(())
}
