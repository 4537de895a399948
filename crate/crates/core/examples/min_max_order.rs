use stonelab::limits::Limits;
use stonelab::order::FinitePoset;
use stonelab::solver::{decision_max_order_at_most, min_max_order, GeneratorPool, Mode};

fn main() -> stonelab::Result<()> {
    let lim = Limits::default();
    for n in 2..=5 {
        let pool = GeneratorPool::upsets(&FinitePoset::chain(n), &lim)?;
        let exact = min_max_order(&pool, Mode::Exact, &lim)?;
        let greedy = min_max_order(&pool, Mode::Greedy, &lim)?;
        println!(
            "up-sets of a {n}-chain: exact {}, greedy {}",
            exact.value, greedy.value
        );
    }
    let pool = GeneratorPool::intervals(6)?;
    let r = min_max_order(&pool, Mode::Exact, &lim)?;
    let labels: Vec<&str> = r
        .family
        .members()
        .iter()
        .map(|m| m.label.as_str())
        .collect();
    println!("tails over 6 atoms: value {} using {labels:?}", r.value);
    let d = decision_max_order_at_most(&pool, r.value - 1, &lim)?;
    println!("can it be done with {}? {}", r.value - 1, d.feasible);
    Ok(())
}
