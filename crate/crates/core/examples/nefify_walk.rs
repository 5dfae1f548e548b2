use k3dp::nefify::{is_nef_wrt_roots, nefify, parse_config};

// U + A1 with phi = id
const CONFIG: &str = r#"{
  "lattice": "U+A1",
  "phi": [[1,0,0],[0,1,0],[0,0,1]],
  "roots": [[0,0,1],[-1,1,0]],
  "ample": [3,2,-1]
}"#;

fn main() -> k3dp::Result<()> {
    let cfg = parse_config(CONFIG)?;
    let start = [4, 1, 2];
    let r = nefify(&cfg, &start)?;
    for s in &r.trace {
        println!("{s}");
    }
    println!("{start:?} -> {:?}, nef: {}", r.class, is_nef_wrt_roots(&cfg, &r.class)?);
    Ok(())
}
