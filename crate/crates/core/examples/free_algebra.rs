use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stonelab::free_algebra::FreeAlgebra;

fn main() -> stonelab::Result<()> {
    let fr = FreeAlgebra::new(4)?;
    for text in [
        "g0 & !g1",
        "g1 | g2",
        "!g0 & !g1 & g3",
        "(g0 | g1) & (g2 | g3)",
    ] {
        let w = fr.parse(text)?;
        let a = fr.min_support_ultrafilter(&w)?;
        println!("{text:24} least support {:?}", a.support);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let r = fr.dense_small_support_check(1000, &mut rng)?;
    println!(
        "basic clopens checked: {} (exhaustive: {}), failures: {}",
        r.checked,
        r.exhaustive,
        r.failures.len()
    );
    Ok(())
}
