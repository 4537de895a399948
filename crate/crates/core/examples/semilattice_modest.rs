use stonelab::limits::Limits;
use stonelab::order::MeetSemilattice;

fn main() -> stonelab::Result<()> {
    // A "V": bottom 0 below two incomparable tops.
    let m = MeetSemilattice::new(vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]])?;
    let fil = m.filters(&Limits::default())?;
    println!("{} filters (empty one included)", fil.len());
    for f in fil.filters() {
        println!("  {f}");
    }
    let r = fil.modest_analysis()?;
    println!("compact elements: {:?}", r.compact_elements);
    println!("immediate predecessors: {:?}", r.immediate_predecessors);
    println!(
        "witness {} with {} compact elements below, {} clopen filters",
        r.witness_point, r.compact_below_witness, r.clopen_filter_count
    );

    let chain = MeetSemilattice::chain(5)?.filters(&Limits::default())?;
    println!(
        "chain of 5: max order {}",
        chain
            .modest_analysis()?
            .clopen_filter_family
            .order_profile()
            .max_order
    );
    Ok(())
}
