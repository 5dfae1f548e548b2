use k3dp::fiber::{contract_and_classify, CurveGraph};
use k3dp::singularity::{index_three_symbols, right_resolution};

fn main() -> k3dp::Result<()> {
    for s in index_three_symbols(6) {
        let r = right_resolution(&s)?;
        let back = contract_and_classify(&CurveGraph::from_resolution(&r.graph))?;
        assert_eq!(back.symbols, vec![s.clone()]);
        println!("{:<8} {}", s.to_string(), r.render());
    }
    Ok(())
}
