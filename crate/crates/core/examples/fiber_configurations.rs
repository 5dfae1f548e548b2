use k3dp::fiber::{enumerate_fibers, fixed_locus, CaseId};

fn main() -> k3dp::Result<()> {
    for case in CaseId::all() {
        let (locus, lef) = fixed_locus(case)?;
        println!("No.{} {}  fixed locus {locus}  chi {}", case.number, case.lattice_expr(), lef.euler);
        for c in enumerate_fibers(case)? {
            println!("    {c}");
        }
    }
    Ok(())
}
