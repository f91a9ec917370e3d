//! Build the McKay quiver of a cyclic group from its weights, then print
//! the weight lattice map and the torus-fixed points.

use std::env;
use std::sync::Arc;

use cornering::algebra::mckay_abelian;
use cornering::toric::{enumerate_fixed_points, LatticeMap};

fn main() -> cornering::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let order: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(5);
    let weights: Vec<i64> = match args.get(1) {
        Some(w) => w.split(',').filter_map(|s| s.trim().parse().ok()).collect(),
        None => vec![1, 1, 3],
    };
    let a = Arc::new(mckay_abelian(order, &weights)?);
    print!("{}", a.to_text());

    let map = LatticeMap::new(&a)?;
    println!("lattice map Z^{} -> Z^{}", map.domain_rank(), map.codomain_rank());
    for row in map.matrix() {
        println!("  {row:?}");
    }
    println!("{} torus-fixed points", enumerate_fixed_points(&a)?.len());
    Ok(())
}
