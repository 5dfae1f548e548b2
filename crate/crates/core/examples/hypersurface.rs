use k3dp::toric::{analyze_hypersurface, HypersurfaceSpec};

fn main() -> k3dp::Result<()> {
    for (w, d) in [([1, 1, 1, 3], 4), ([1, 1, 5, 9], 10), ([1, 2, 7, 12], 14), ([1, 1, 1, 1], 3)] {
        let spec = HypersurfaceSpec::new(w, d)?;
        let r = analyze_hypersurface(&spec)?;
        println!("{spec}: {}  K^2 = {}", r.sing_text(), r.k2);
    }
    Ok(())
}
