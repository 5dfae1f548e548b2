use k3dp::singularity::{cyclic_from_weights, hj_expand, hj_value};

fn main() -> k3dp::Result<()> {
    for (n, q) in [(9, 5), (15, 4), (18, 11), (24, 7), (18, 5)] {
        let bs = hj_expand(n, q)?;
        assert_eq!(hj_value(&bs)?, (n, q));
        println!("{n}/{q} = {bs:?}");
    }
    // stabilizer at (0,0,1) of P(1,2,9)/C2: (-1,-1)·(ζ9, ζ9^2) = (ζ18^11, ζ18^13)
    let (n, q) = cyclic_from_weights(18, (11, 13))?;
    let dual = hj_value(&hj_expand(n, q)?.into_iter().rev().collect::<Vec<_>>())?;
    println!("1/18(11,13) = 1/{n}(1,{q}) = 1/{}(1,{})", dual.0, dual.1);
    Ok(())
}
