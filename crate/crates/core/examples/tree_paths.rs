use stonelab::tree::FiniteForest;

fn main() -> stonelab::Result<()> {
    let t = FiniteForest::complete_binary(3);
    let paths = t.paths();
    let profile = paths.sigma_system()?.family.order_profile();
    println!(
        "{} nodes, {} initial chains, height {}",
        t.size(),
        paths.len(),
        t.height()
    );
    println!("max order of the subbasic family: {}", profile.max_order);

    let ica = t.initial_chain_algebra()?;
    println!(
        "initial chains generate the whole algebra: {}",
        ica.is_whole
    );

    for n in 1..=6 {
        println!(
            "rooted trees on {n} nodes: {}",
            FiniteForest::all_tree_shapes(n).len()
        );
    }
    Ok(())
}
