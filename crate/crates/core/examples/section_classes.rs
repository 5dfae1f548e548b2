use k3dp::fiber::{find_config, section_classes, CaseId, SectionOutcome};

fn main() -> k3dp::Result<()> {
    for (case, label) in [(8, "8a"), (10, "10a"), (11, "11a"), (4, "4b"), (6, "6c")] {
        let c = find_config(CaseId::new(case)?, label)?;
        match section_classes(&c)? {
            SectionOutcome::Impossible(cert) => {
                println!("{c}: (D^2) >= {}, no orbit of (-2)-curves", cert.bound);
            }
            SectionOutcome::Classes { basis, classes } => {
                println!("{c}: basis {}", basis.lattice.name);
                for cl in classes {
                    println!("    {:<28} E meets {}", cl.expr, cl.meets_text);
                }
            }
        }
    }
    Ok(())
}
