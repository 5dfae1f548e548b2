use k3dp::tables::{check, Which};

fn main() -> k3dp::Result<()> {
    for w in Which::ALL {
        let d = check(w)?;
        println!("{w}: {}", if d.is_clean() { "clean" } else { "differs" });
        print!("{d}");
    }
    Ok(())
}
