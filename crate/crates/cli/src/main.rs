use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use k3dp::fiber::{self, CaseId, SectionOutcome};
use k3dp::lattice::{build_lattice, format_vec, gram_props, parse_vec};
use k3dp::nefify::{nefify, parse_config};
use k3dp::singularity::{
    classify_graph, cyclic_from_weights, discrepancies, hj_expand, hj_value, minimal_graph, right_resolution,
    ResolutionGraph, Symbol,
};
use k3dp::tables::{self, Table, Which};
use k3dp::toric::{self, Action, HypersurfaceSpec, ToricSpec};
use k3dp::{Error, Result, Q};

#[derive(Parser)]
#[command(name = "k3dp", version, about = "Index-three log del Pezzo surfaces from K3 surfaces with an order-3 automorphism")]
struct Cli {
    /// Machine-readable tab-separated output
    #[arg(long, global = true)]
    tsv: bool,
    /// Worker threads for catalog generation
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Singularities and their resolutions
    #[command(subcommand)]
    Sing(SingCmd),
    /// Hirzebruch-Jung continued fractions
    #[command(subcommand)]
    Hj(HjCmd),
    /// Lattice invariants
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Reflect an invariant isotropic class into the nef chamber
    Nefify {
        #[arg(long, value_name = "FILE")]
        config: std::path::PathBuf,
        /// Class as `[a,b,...]`
        #[arg(long, value_name = "VEC", allow_hyphen_values = true)]
        class: String,
    },
    /// Elliptic fibrations and the del Pezzo catalog
    #[command(subcommand)]
    K3(K3Cmd),
    /// Weighted projective planes, quotients and hypersurfaces
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Recompute a reference table
    Tables {
        #[arg(long, value_parser = ["table1", "ellip3", "ellip4", "singu", "nocurve2", "toric7"])]
        which: String,
        /// Print the differences against the shipped table instead
        #[arg(long)]
        diff: bool,
    },
}

#[derive(Subcommand)]
enum SingCmd {
    /// Classify a graph such as `chain:[-2,-5]`
    Classify { graph: String },
    /// Minimal resolution of a symbol or of `1/n(a,b)`
    Resolve { target: String },
    /// Right resolution of an index-three symbol
    RightRes { symbol: String },
}

#[derive(Subcommand)]
enum HjCmd {
    /// `n/q` as a continued fraction
    Expand { n: i64, q: i64 },
    /// Value `(n, q)` of a continued fraction
    Value {
        #[arg(required = true)]
        bs: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Rank, signature, determinant and discriminant group
    Info { expr: String },
}

#[derive(Subcommand)]
enum K3Cmd {
    /// Fiber configurations of a case
    Enumerate {
        #[arg(long)]
        case: u8,
    },
    /// Section classes for one configuration, by label (`6b`) or position
    Sections {
        #[arg(long)]
        case: u8,
        #[arg(long)]
        config: String,
    },
    /// Sing(Z), rho(Z) and K^2 for every configuration
    Catalog,
}

#[derive(Subcommand)]
enum ToricCmd {
    /// `P(a,b,c)/G`
    Analyze(ToricArgs),
    /// General member of `(d) in P(w0,w1,w2,w3)`
    Hypersurface {
        #[arg(long)]
        weights: String,
        #[arg(long)]
        degree: i64,
    },
    /// Replay the built-in example table
    Table,
}

#[derive(Args)]
struct ToricArgs {
    #[arg(long)]
    weights: String,
    /// `m:w1,w2,w3`, repeatable
    #[arg(long = "action")]
    actions: Vec<String>,
}

fn fmt_q(x: &Q) -> String {
    x.to_string()
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn print_table(t: &Table, tsv: bool) {
    if tsv {
        print!("{}", t.to_tsv());
    } else {
        print!("{}", t.to_text());
    }
}

fn case_id(n: u8) -> Result<CaseId> {
    CaseId::new(n)
}

// `1/9(1,5)`
fn parse_cyclic(s: &str) -> Option<(i64, (i64, i64))> {
    let rest = s.strip_prefix("1/")?;
    let (n, w) = rest.split_once('(')?;
    let (a, b) = w.strip_suffix(')')?.split_once(',')?;
    Some((n.trim().parse().ok()?, (a.trim().parse().ok()?, b.trim().parse().ok()?)))
}

fn run(cli: Cli) -> Result<()> {
    let tsv = cli.tsv;
    match cli.cmd {
        Cmd::Sing(SingCmd::Classify { graph }) => {
            let g: ResolutionGraph = graph.parse()?;
            let c = classify_graph(&g)?;
            if tsv {
                println!("{}\t{}", c.symbol, c.index);
            } else {
                println!("{} (index {})", c.symbol, c.index);
            }
        }
        Cmd::Sing(SingCmd::Resolve { target }) => {
            let g = match parse_cyclic(&target) {
                Some((n, w)) => {
                    let (n, qq) = cyclic_from_weights(n, w)?;
                    if n == 1 {
                        println!("smooth");
                        return Ok(());
                    }
                    ResolutionGraph::chain(&hj_expand(n, qq)?.iter().map(|b| -b).collect::<Vec<_>>())
                }
                None => minimal_graph(&target.parse::<Symbol>()?)?,
            };
            let order = g.canonical_order()?;
            let a = discrepancies(&g)?;
            let disc: Vec<String> = order.iter().map(|&v| fmt_q(&a[v])).collect();
            if tsv {
                println!("{}\t{}", g.canonical()?, disc.join(","));
            } else {
                println!("{}", g.canonical()?);
                println!("discrepancies {}", disc.join(" "));
            }
        }
        Cmd::Sing(SingCmd::RightRes { symbol }) => {
            let r = right_resolution(&symbol.parse()?)?;
            println!("{}", r.render());
        }
        Cmd::Hj(HjCmd::Expand { n, q }) => println!("{}", join(&hj_expand(n, q)?, " ")),
        Cmd::Hj(HjCmd::Value { bs }) => {
            let (n, q) = hj_value(&bs)?;
            println!("{n} {q}");
        }
        Cmd::Lattice(LatticeCmd::Info { expr }) => {
            let l = build_lattice(&expr)?;
            let p = gram_props(&l)?;
            let rows = [
                ("lattice", l.name.clone()),
                ("rank", p.rank.to_string()),
                ("signature", format!("({},{})", p.signature.0, p.signature.1)),
                ("det", p.det.to_string()),
                ("discriminant", p.discriminant.to_string()),
                ("3-elementary", p.is_3_elementary.to_string()),
                ("hyperbolic", p.is_hyperbolic.to_string()),
            ];
            for (k, v) in rows {
                if tsv {
                    println!("{k}\t{v}");
                } else {
                    println!("{k:<13} {v}");
                }
            }
        }
        Cmd::Nefify { config, class } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Config(format!("{}: {e}", config.display())))?;
            let cfg = parse_config(&text)?;
            let r = nefify(&cfg, &parse_vec(&class)?)?;
            for s in &r.trace {
                println!("{s}");
            }
            println!("result {}", format_vec(&r.class));
        }
        Cmd::K3(K3Cmd::Enumerate { case }) => {
            let case = case_id(case)?;
            for c in fiber::enumerate_fibers(case)? {
                let cond = c.condition().unwrap_or_default();
                if tsv {
                    println!("{}\t{}\t{cond}", c.label, c.sing_f());
                } else {
                    println!("{c}");
                }
            }
        }
        Cmd::K3(K3Cmd::Sections { case, config }) => {
            let case = case_id(case)?;
            let all = fiber::enumerate_fibers(case)?;
            let c = match config.parse::<usize>() {
                Ok(i) if (1..=all.len()).contains(&i) => all[i - 1].clone(),
                _ => fiber::find_config(case, &config)?,
            };
            if !tsv {
                println!("{c}");
            }
            match fiber::section_classes(&c)? {
                SectionOutcome::Impossible(cert) => {
                    let parts: Vec<String> =
                        cert.block_minima.iter().map(|(b, m)| format!("{b}:{}", fmt_q(m))).collect();
                    if tsv {
                        println!("none\t{}\t{}", fmt_q(&cert.bound), parts.join(","));
                    } else {
                        println!(
                            "no section orbit: (D^2) >= {} + {} = {} > -6",
                            fmt_q(&cert.u0_norm),
                            if parts.is_empty() { "0".to_string() } else { parts.join(" + ") },
                            fmt_q(&cert.bound)
                        );
                    }
                }
                SectionOutcome::Classes { basis, classes } => {
                    if !tsv {
                        println!("basis {}", basis.lattice.name);
                    }
                    for cl in &classes {
                        if tsv {
                            println!("{}\t{}\t{}", cl.expr, fmt_q(&cl.norm), cl.meets_text);
                        } else {
                            let meets = if cl.meets_text.is_empty() { String::new() } else { format!("  E meets {}", cl.meets_text) };
                            println!("D = {}  (D,D) = {}{meets}", cl.expr, fmt_q(&cl.norm));
                        }
                    }
                }
            }
        }
        Cmd::K3(K3Cmd::Catalog) => {
            let rows = fiber::catalog_del_pezzo()?;
            if tsv {
                println!("#case\tno\tsing_f\tsections\tsing_z\trho\tk2\tg");
            }
            for r in &rows {
                let secs = if r.sections.is_empty() { "-".to_string() } else { r.sections.join(";") };
                if tsv {
                    println!(
                        "{}\t{}\t{}\t{secs}\t{}\t{}\t{}\t{}",
                        r.case.number,
                        r.label,
                        r.sing_f,
                        r.sing_text(),
                        r.rho,
                        fmt_q(&r.k2),
                        r.g
                    );
                } else {
                    println!(
                        "{:<4} {:<34} {:<26} rho={} K^2={} g={}  [{secs}]",
                        r.label,
                        r.sing_f,
                        r.sing_text(),
                        r.rho,
                        fmt_q(&r.k2),
                        r.g
                    );
                }
            }
            if !tsv {
                let c = fiber::combination_count(&rows);
                println!(
                    "combinations: {} of index three, {} with U(3) (singular), {} with U(3) and the smooth surface; rho=1: {}",
                    c.index_three, c.with_u3_singular, c.with_u3_all, c.rho_one
                );
            }
        }
        Cmd::Toric(ToricCmd::Analyze(args)) => {
            let actions = args.actions.iter().map(|a| a.parse::<Action>()).collect::<Result<Vec<_>>>()?;
            let spec = ToricSpec::new(toric::parse_weights::<3>(&args.weights)?, actions)?;
            let r = toric::analyze_toric(&spec)?;
            print_surface(&spec.to_string(), &r.surface, tsv)?;
            if !tsv && r.fan.reflection_orders != [1, 1, 1] {
                println!("reflections along the coordinate lines: orders {}", join(&r.fan.reflection_orders, ","));
            }
        }
        Cmd::Toric(ToricCmd::Hypersurface { weights, degree }) => {
            let spec = HypersurfaceSpec::new(toric::parse_weights::<4>(&weights)?, degree)?;
            let r = toric::analyze_hypersurface(&spec)?;
            print_surface(&spec.to_string(), &r, tsv)?;
        }
        Cmd::Toric(ToricCmd::Table) => {
            let t = tables::computed(Which::Toric7)?;
            print_table(&t, tsv);
            if !tsv {
                let d = tables::diff(&tables::golden(Which::Toric7)?, &t)?;
                if d.is_clean() {
                    println!("matches the reference table");
                } else {
                    println!("differences from the reference table (- reference, + computed):");
                    print!("{d}");
                }
            }
        }
        Cmd::Tables { which, diff } => {
            let which: Which = which.parse()?;
            if diff {
                let d = tables::check(which)?;
                print!("{d}");
                if d.is_clean() {
                    println!("{which}: clean");
                }
            } else {
                print_table(&tables::computed(which)?, tsv);
            }
        }
    }
    Ok(())
}

fn print_surface(name: &str, r: &toric::SurfaceReport, tsv: bool) -> Result<()> {
    let v = toric::msd_screen(&r.k2, &r.sing)?;
    let g = v.g.map(|g| g.to_string()).unwrap_or_else(|| "-".into());
    if tsv {
        println!("{name}\t{}\t{}\t{}\t{g}", r.sing_text(), fmt_q(&r.k2), v.tag);
        return Ok(());
    }
    println!("{name}");
    for p in r.points.iter().filter(|p| !p.is_smooth()) {
        let mult = if p.multiplicity > 1 { format!("{} x ", p.multiplicity) } else { String::new() };
        println!("  {:<14} {mult}1/{}(1,{}) = {}", p.locus, p.n, p.q, p.type_text());
    }
    println!("Sing {}", r.sing_text());
    println!("K^2  {}", fmt_q(&r.k2));
    let m = if v.matches.is_empty() { String::new() } else { format!(" (as No. {})", v.matches.join(", ")) };
    println!("screen {} g={g}{m}", v.tag);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
