use stonelab::algebra::FiniteBooleanAlgebra;
use stonelab::free_sequence::{
    default_pool, longest_free_point_sequence, longest_free_sequence, sigma_squared, SigmaTree,
};
use stonelab::limits::Limits;

fn main() -> stonelab::Result<()> {
    for n in 1..=5 {
        let b = FiniteBooleanAlgebra::new(n)?;
        let pool = default_pool(&b)?;
        let alg = longest_free_sequence(&b, &pool, false)?;
        let pts = longest_free_point_sequence(&b)?;
        println!(
            "n={n}: algebra sequence {} terms, point sequence {} terms",
            alg.length,
            pts.len()
        );
    }
    let b = FiniteBooleanAlgebra::new(3)?;
    let tree = SigmaTree::build(&b, &default_pool(&b)?, None, &Limits::default())?;
    let sq = sigma_squared(&tree)?;
    println!(
        "tree of free sequences over 3 atoms: {} nodes, depth {}, max order {}",
        tree.len(),
        tree.depth(),
        sq.family.order_profile().max_order
    );
    Ok(())
}
