//! Enumerate the torus-fixed 0-generated modules of each bundled binomial
//! algebra, check them against stability, and list essential vertices.

use cornering::corpus;
use cornering::rep::StabilityParameter;
use cornering::toric::{enumerate_fixed_points, essential_vertices};

fn main() -> cornering::Result<()> {
    for id in ["mckay-1-3-111", "mckay-1-6-123", "dp6-dimer"] {
        let a = corpus::algebra(id)?;
        let q = a.quiver();
        let points = enumerate_fixed_points(&a)?;
        println!("{id}: {} fixed points", points.len());
        for m in &points {
            let theta = StabilityParameter::zero_generated(q.num_vertices(), q.zero(), m.dims())?;
            let arrows: Vec<&str> = (0..q.num_arrows())
                .filter(|&i| !m.matrix(i).is_zero())
                .map(|i| q.arrow(i).name.as_str())
                .collect();
            println!(
                "  arrows {:<28} socle {:?} stable {}",
                arrows.join(" "),
                m.socle_simples(),
                m.is_stable_invariant(&theta)?
            );
        }
        println!("  essential vertices {:?}", essential_vertices(&a)?);
    }
    Ok(())
}
