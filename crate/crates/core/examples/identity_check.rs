//! Prove that multiples of det P vanish in the cornered 1/6(1,2,3) algebra
//! by rewriting with the cornered relations.

use cornering::corner::{BinomialCornering, CorneringOptions};
use cornering::corpus;
use cornering::toric::{annihilation_identity_check, Expression, IdentityOptions};

fn main() -> cornering::Result<()> {
    let parent = corpus::algebra("mckay-1-6-123")?;
    let c = BinomialCornering::new(parent, &[0, 1, 2, 3, 4], CorneringOptions::default())?;
    let cornered = c.data().cornered();
    let det = Expression::determinant(&c.presentation(5)?)?;
    println!("det P = {}", det.display(cornered));
    for m in ["x1*x0", "y0", "x0"] {
        let multiplier = cornered.path(m)?;
        let report = annihilation_identity_check(&c, &det, &multiplier, IdentityOptions::default())?;
        println!(
            "{m} * det P: {:?} after {} states, {} numeric checks, {} failures",
            report.outcome, report.states, report.numeric_checks, report.numeric_failures
        );
    }
    Ok(())
}
