//! Singletons generate the whole algebra and every point lies in exactly one.
use stonelab::algebra::FiniteBooleanAlgebra;
use stonelab::family::{selection_value, SeparatingFamily};

fn main() -> stonelab::Result<()> {
    for n in [2, 5, 10] {
        let b = FiniteBooleanAlgebra::new(n)?;
        let singletons = b.singletons();
        let family = SeparatingFamily::from_elements(&b, &singletons)?;
        let s = selection_value(&b, &singletons)?;
        println!(
            "n={n:2}  separating={}  generates={}  value={}",
            family.is_t0_separating().is_separating(),
            s.generates,
            s.value
        );
    }
    Ok(())
}
