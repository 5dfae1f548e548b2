use k3dp::singularity::catalog_table;

fn main() -> k3dp::Result<()> {
    let cat = catalog_table(6)?;
    for r in &cat.rows {
        let a: Vec<String> = r.discrepancies.iter().map(|x| x.to_string()).collect();
        let tag = if r.from_family { " (family)" } else { "" };
        println!("{:<8} {:<9} {:<44} {}{tag}", r.symbol.to_string(), r.group.to_string(), r.graph.canonical()?, a.join(" "));
    }
    for f in &cat.flags {
        println!("note: {f}");
    }
    Ok(())
}
