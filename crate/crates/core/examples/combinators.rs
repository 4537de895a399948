use stonelab::combinators::{
    alexandrov_duplication, porcupine, product_system, sum_with_point, PointedSystem, PorcupineSpec,
};
use stonelab::family::SeparatingFamily;
use stonelab::limits::Limits;

fn system(n: usize, sets: &[Vec<usize>], base: Option<usize>) -> stonelab::Result<PointedSystem> {
    PointedSystem::new(SeparatingFamily::from_index_sets(n, sets)?, base)
}

fn main() -> stonelab::Result<()> {
    let lim = Limits::default();
    let a = system(3, &[vec![0, 1], vec![1]], Some(2))?;
    let b = system(2, &[vec![0]], Some(1))?;

    let p = product_system(&a, &b, &lim)?;
    println!("product orders: {:?}", p.family.order_profile().per_point);

    let s = sum_with_point(&[a.clone(), b.clone()], &lim)?;
    println!(
        "sum orders:     {:?}  (base {:?})",
        s.family.order_profile().per_point,
        s.base_point
    );

    let d = alexandrov_duplication(&a, &[0, 1], &lim)?;
    println!("duplication:    {:?}", d.family.order_profile().per_point);

    let spec = PorcupineSpec {
        index: system(2, &[vec![0], vec![0, 1]], None)?,
        fibers: vec![
            system(2, &[vec![0]], None)?,
            system(3, &[vec![0], vec![1]], None)?,
        ],
        section: vec![1, 2],
    };
    let r = porcupine(&spec, &lim)?;
    println!(
        "porcupine: {} points, {} members, max order {}",
        r.system.size(),
        r.system.family.len(),
        r.system.family.order_profile().max_order
    );
    for d in &r.decomposition {
        println!(
            "  point {}: V0={} V-={} V*={} V**={} total={}",
            d.point, d.v0, d.v_minus, d.v_star, d.v_double_star, d.order
        );
    }
    Ok(())
}
