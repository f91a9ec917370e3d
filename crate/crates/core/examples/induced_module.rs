//! Induce the cornered module N of the 1/3(1,1,1) example to the whole
//! quiver and show its dimension vector and arrow matrices.

use cornering::corner::CorneringOptions;
use cornering::corpus;

fn main() -> cornering::Result<()> {
    let loaded = corpus::module("mckay-1-3-N", CorneringOptions::default())?;
    let cornering = loaded.cornering.expect("N lives on a cornered algebra");
    let b = cornering.derived().expect("the parent is binomial");
    let induced = b.build_induced_module(&loaded.module)?;
    println!("N has dims {}", loaded.module.dims());
    println!("induced module has dims {}", induced.module.dims());
    print!("{}", induced.module.to_text("corpus:mckay-1-3-111", None));

    // Restricting back to C recovers N.
    assert_eq!(b.data().corner_restrict(&induced.module)?, loaded.module);
    Ok(())
}
