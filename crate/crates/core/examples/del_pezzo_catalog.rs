//! Log del Pezzo surfaces from order-three automorphisms of elliptic type.
//!
//! Runs every fiber configuration with every compatible set of section orbits
//! and prints the singularities, the Picard number and K².

use k3dp::fiber::{catalog_del_pezzo, combination_count};

fn main() -> k3dp::Result<()> {
    let rows = catalog_del_pezzo()?;
    for r in &rows {
        let sections = if r.sections.is_empty() { "-".to_string() } else { r.sections.join(" ; ") };
        println!("{:4} {:38} {:28} rho={} K2={}  [{}]", r.label, r.sing_f, r.sing_text(), r.rho, r.k2, sections);
    }
    let c = combination_count(&rows);
    println!();
    println!("combinations, index three:              {}", c.index_three);
    println!("with U(3), nonempty combinations only:  {}", c.with_u3_singular);
    println!("with U(3), smooth surface included:     {}", c.with_u3_all);
    println!("index three with rho = 1:               {}", c.rho_one);
    Ok(())
}
