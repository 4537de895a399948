//! Subalgebra generation and the closure of a set of ultrafilters.
use stonelab::algebra::FiniteBooleanAlgebra;
use stonelab::family::SeparatingFamily;

fn main() -> stonelab::Result<()> {
    let b = FiniteBooleanAlgebra::new(4)?;
    let gens = vec![b.element([0, 1])?, b.element([1, 2])?];
    let sub = b.generated_subalgebra(&gens)?;
    println!("blocks of the generated subalgebra: {:?}", sub.blocks());
    println!("generates everything: {}", b.generates_whole(&gens)?);
    println!(
        "separation: {:?}",
        SeparatingFamily::from_elements(&b, &gens)?.is_t0_separating()
    );

    let more = vec![b.element([0, 1])?, b.element([1, 2])?, b.element([0, 3])?];
    println!("after adding {{0,3}}: {}", b.generates_whole(&more)?);

    let a = vec![b.ultrafilter(0)?, b.ultrafilter(2)?];
    let closed = b.closure_of_ultrafilter_set(&a)?;
    println!(
        "closure of {{u0, u2}}: {:?}",
        closed.iter().map(|u| u.atom()).collect::<Vec<_>>()
    );
    Ok(())
}
