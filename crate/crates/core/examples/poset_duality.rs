//! Up-sets of a poset, their prime filters, and discrete witnesses.
use stonelab::limits::Limits;
use stonelab::order::FinitePoset;

fn main() -> stonelab::Result<()> {
    // The "N" poset: 0 < 2, 1 < 2, 1 < 3.
    let p = FinitePoset::from_pairs(4, &[(0, 2), (1, 2), (1, 3)])?;
    let fs = p.final_segments(&Limits::default())?;
    println!("{} up-sets, orientation {:?}", fs.len(), fs.orientation());
    for (q, g) in fs.generators().iter().enumerate() {
        println!("a_{q} = {g}");
    }
    for f in fs.prime_clopen_filters()? {
        println!(
            "prime filter with minimum {} <-> point {}",
            fs.segments()[f.minimum],
            f.generator
        );
    }
    for q in 0..p.size() {
        let w = fs.discrete_witness(q)?;
        println!("point {q}: tau = {:?}, isolates {:?}", w.tau, w.captured);
    }
    Ok(())
}
