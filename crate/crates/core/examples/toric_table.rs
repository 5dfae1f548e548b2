use k3dp::toric::example_table;

fn main() -> k3dp::Result<()> {
    for row in example_table()? {
        let pts: Vec<String> = row
            .report
            .points
            .iter()
            .filter(|p| !p.is_smooth())
            .map(|p| format!("{}:{}x{}", p.locus, p.multiplicity, p.type_text()))
            .collect();
        println!(
            "{:<22} {:<24} {:>5}  {:<18} {}",
            row.model.to_string(),
            row.report.sing_text(),
            row.report.k2.to_string(),
            row.verdict.tag.to_string(),
            pts.join(" ")
        );
    }
    Ok(())
}
