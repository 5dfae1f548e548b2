use k3dp::toric::{analyze_toric, msd_screen, ToricSpec};

fn main() -> k3dp::Result<()> {
    let spec = ToricSpec::new([1, 2, 9], vec!["2:0,1,1".parse()?])?;
    let r = analyze_toric(&spec)?;
    println!("{spec}: N' has index {} over N, rays {:?}", r.fan.index, r.fan.rays);
    for p in &r.surface.points {
        println!("  {} 1/{}({},{}) {}", p.locus, p.n, 1, p.q, p.type_text());
    }
    let v = msd_screen(&r.surface.k2, &r.surface.sing)?;
    println!("K^2 = {}, screen: {}", r.surface.k2, v.tag);
    Ok(())
}
