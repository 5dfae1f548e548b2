use k3dp::fiber::CaseId;
use k3dp::lattice::gram_props;

fn main() -> k3dp::Result<()> {
    for case in CaseId::all() {
        let l = case.lattice()?;
        let p = gram_props(&l)?;
        println!(
            "No.{:<3} {:<22} rank {:<2} sig ({},{}) det {:<8} A_L {}",
            case.number,
            case.lattice_expr(),
            p.rank,
            p.signature.0,
            p.signature.1,
            p.det,
            p.discriminant
        );
    }
    Ok(())
}
