//! Decide whether cornered modules are restrictions of parent modules of
//! dimension vector (1,...,1), printing the certificate when they are not.

use cornering::corner::{CorneringOptions, ImageMembership};
use cornering::corpus;
use cornering::rep::DimensionVector;

fn main() -> cornering::Result<()> {
    for id in ["mckay-1-3-N", "mckay-1-6-xchain", "dp6-Nprime"] {
        let loaded = corpus::module(id, CorneringOptions::default())?;
        let cornering = loaded.cornering.expect("corpus modules here are cornered");
        let v = DimensionVector::ones(loaded.parent.quiver().num_vertices());
        match cornering.image_membership(&loaded.module, &v)? {
            ImageMembership::InImage { induced_dims, .. } => {
                println!("{id}: in the image, induced dims {induced_dims}")
            }
            ImageMembership::NotInImage {
                induced_dims,
                certificate,
            } => println!("{id}: not in the image, induced dims {induced_dims}, {certificate:?}"),
            ImageMembership::Unknown { reason, .. } => println!("{id}: undecided ({reason})"),
        }
    }
    Ok(())
}
