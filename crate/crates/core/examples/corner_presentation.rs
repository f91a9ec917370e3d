//! Corner the 1/6(1,2,3) McKay algebra at C = {0,1,2,3,4} and print the
//! cornered quiver with the presentation of the remaining vertex.

use cornering::corner::{BinomialCornering, CorneringOptions};
use cornering::corpus;

fn main() -> cornering::Result<()> {
    let parent = corpus::algebra("mckay-1-6-123")?;
    let c = BinomialCornering::new(parent, &[0, 1, 2, 3, 4], CorneringOptions::default())?;
    let cd = c.data();
    print!("{}", cd.to_text());
    println!();
    for p in c.presentations().values() {
        print!("{}", p.to_text(cd));
    }
    Ok(())
}
