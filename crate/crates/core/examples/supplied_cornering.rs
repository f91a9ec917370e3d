//! The quaternion reconstruction algebra has a trinomial relation, so its
//! cornering at {0,1,2,3} comes from bundled files. Induced dimensions are
//! still computed from the supplied presentation.

use cornering::corner::CorneringOptions;
use cornering::corpus;
use cornering::rep::{DimensionVector, Representation};

fn main() -> cornering::Result<()> {
    let parent = corpus::algebra("quaternion-reconstruction")?;
    let c = corpus::cornering(
        parent,
        Some("quaternion-reconstruction"),
        &[0, 1, 2, 3],
        CorneringOptions::default(),
    )?;
    let cd = c.data();
    print!("{}", cd.to_text());
    for p in c.presentations().values() {
        print!("{}", p.to_text(cd));
    }

    let zero = Representation::zero(cd.cornered().clone(), DimensionVector(vec![1; 4]))?;
    // With every arrow zero, P vanishes and vertex 4 gets one dimension per generator.
    println!("zero module: induced dims {}", c.induced_dims(&zero)?);
    Ok(())
}
