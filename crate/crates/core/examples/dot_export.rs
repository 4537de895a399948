use stonelab::dot;
use stonelab::limits::Limits;
use stonelab::order::FinitePoset;
use stonelab::tree::FiniteForest;

fn main() -> stonelab::Result<()> {
    let fs = FinitePoset::antichain(2).final_segments(&Limits::default())?;
    print!("{}", dot::final_segments(&fs));
    let t = FiniteForest::new(vec![None, Some(0), Some(0), Some(1)])?;
    print!("{}", dot::forest(&t));
    print!("{}", dot::paths(&t.paths()));
    Ok(())
}
