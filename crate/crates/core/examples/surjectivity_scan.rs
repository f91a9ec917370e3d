//! Scan the dP6 dimer algebra at two vertex sets. Keeping 0..4 gives no
//! witness; keeping 0..3 finds cornered modules outside the image.

use cornering::corner::CorneringOptions;
use cornering::corpus;
use cornering::toric::surjectivity_scan;

fn main() -> cornering::Result<()> {
    let parent = corpus::algebra("dp6-dimer")?;
    for keep in [vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3]] {
        let c = corpus::cornering(parent.clone(), Some("dp6-dimer"), &keep, CorneringOptions::default())?;
        let scan = surjectivity_scan(&c, 300, 7)?;
        println!(
            "keep {keep:?}: {} coordinate points ({} fixed), {} samples, {} witnesses",
            scan.coordinate_points,
            scan.fixed_points,
            scan.samples,
            scan.witnesses.len()
        );
        for (v, lo, hi) in &scan.induced_range {
            println!("  induced dim at {v} ranges over [{lo}, {hi}]");
        }
        if let Some(w) = scan.witnesses.first() {
            println!("  first witness: {}, induced dims {}", w.source, w.induced_dims);
        }
    }
    Ok(())
}
