//! One line per acceptance criterion. Criteria with a known, documented
//! discrepancy print FAIL; the run still succeeds as long as the discrepancy is
//! exactly the documented one.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use common::{discrepancy_oracle, hj_oracle, hj_value_oracle, inverse_mod, line, qq};
use k3dp::fiber::{
    self, combination_count, contract_and_classify, enumerate_fibers, fixed_locus, section_classes, CaseId, CurveGraph,
    Rest, SectionOutcome,
};
use k3dp::singularity::{
    catalog_table, hj_expand, hj_value, index_three_symbols, right_resolution, GroupDatum, ResolutionGraph, Symbol,
};
use k3dp::tables::{self, Which};
use k3dp::Q;
use num_integer::Integer;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails in exactly the way recorded in the notes.
    KnownFail(String),
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn oracle_graph(group: GroupDatum) -> ResolutionGraph {
    let neg = |v: Vec<i64>| v.into_iter().map(|b| -b).collect::<Vec<_>>();
    match group {
        GroupDatum::Cyclic { n, q } => ResolutionGraph::chain(&neg(hj_oracle(n, q))),
        GroupDatum::Dihedral { n: 0 } => ResolutionGraph::fork(-3, &[vec![-2], vec![-2], vec![-2]]),
        GroupDatum::Dihedral { n } => ResolutionGraph::fork(-2, &[vec![-2], vec![-2], neg(hj_oracle(n, n - 3))]),
    }
}

fn c1() -> Result<String, String> {
    let d = tables::check(Which::Table1).map_err(|e| e.to_string())?;
    check(d.is_clean(), format!("table differs:\n{d}"))?;
    let cat = catalog_table(8).map_err(|e| e.to_string())?;
    let (mut explicit, mut family) = (0, 0);
    for r in &cat.rows {
        let g = oracle_graph(r.group);
        check(g.same_as(&r.graph), format!("{}: graph differs from HJ oracle", r.symbol))?;
        let a = discrepancy_oracle(&g);
        // both graphs are built arm by arm in the same order
        check(a == r.discrepancies, format!("{}: discrepancies differ", r.symbol))?;
        check(a.iter().all(|x| (x * Q::from_integer(3.into())).is_integer()), format!("{}: not index 3", r.symbol))?;
        check(a.iter().any(|x| !x.is_integer()), format!("{}: index 1", r.symbol))?;
        if r.from_family {
            family += 1;
        } else {
            explicit += 1;
        }
    }
    Ok(format!("{explicit} explicit rows, {family} family rows for 4 <= l <= 8, exact"))
}

fn c2() -> Result<String, String> {
    let mut pairs = 0;
    for n in 2..=200i64 {
        for q in 1..n {
            if n.gcd(&q) != 1 {
                continue;
            }
            let bs = hj_expand(n, q).map_err(|e| e.to_string())?;
            check(bs == hj_oracle(n, q), format!("{n}/{q}: expansion differs from oracle"))?;
            check(hj_value(&bs).map_err(|e| e.to_string())? == (n, q), format!("{n}/{q}: round trip"))?;
            check(hj_value_oracle(&bs) == (n, q), format!("{n}/{q}: oracle round trip"))?;
            let rev: Vec<i64> = bs.iter().rev().copied().collect();
            let qi = if n == 2 { 1 } else { inverse_mod(q, n) };
            check(hj_value(&rev).map_err(|e| e.to_string())? == (n, qi), format!("{n}/{q}: reversal duality"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} coprime pairs with n <= 200"))
}

fn c3() -> Result<String, String> {
    let allowed = [(-1, qq(0, 1)), (-3, qq(-1, 3)), (-6, qq(-2, 3))];
    let syms = index_three_symbols(8);
    for s in &syms {
        let rr = right_resolution(s).map_err(|e| e.to_string())?;
        let a = discrepancy_oracle(&rr.graph);
        check(a == rr.discrepancies, format!("{s}: discrepancies differ from oracle"))?;
        for (si, ai) in rr.graph.self_ints.iter().zip(&a) {
            check(allowed.iter().any(|(x, y)| x == si && y == ai), format!("{s}: curve {si} with discrepancy {ai}"))?;
        }
        for &(u, v) in &rr.graph.edges {
            check(
                a[u] == qq(0, 1) || a[v] == qq(0, 1),
                format!("{s}: curves with nonzero discrepancy meet"),
            )?;
        }
        let back = contract_and_classify(&CurveGraph::from_resolution(&rr.graph)).map_err(|e| e.to_string())?;
        check(back.symbols == vec![s.clone()], format!("{s}: contracts back to {:?}", back.symbols))?;
    }
    let a312: Symbol = "A3(1,2)".parse().map_err(|e: k3dp::Error| e.to_string())?;
    let shown = right_resolution(&a312).map_err(|e| e.to_string())?.render();
    check(shown == "-3 -1 -6 -1 -3 -1 -6", format!("A3(1,2) renders as {shown}"))?;
    Ok(format!("{} symbols, self-intersections in {{-1,-3,-6}}, A3(1,2) = {shown}", syms.len()))
}

fn c4() -> Result<String, String> {
    let d = tables::check(Which::Ellip3).map_err(|e| e.to_string())?;
    check(d.is_clean(), format!("table differs:\n{d}"))?;
    let rows = fiber::catalog_del_pezzo().map_err(|e| e.to_string())?;
    let labels: BTreeSet<&str> = rows.iter().filter(|r| r.case.jacobian).map(|r| r.label.as_str()).collect();
    check(labels.len() == 16, format!("{} Jacobian configurations", labels.len()))?;
    for r in rows.iter().filter(|r| r.case.jacobian) {
        let rho = common::noether_rho(&r.k2, &r.sing);
        check(rho == qq(r.rho, 1), format!("{} {}: rho {} but Noether gives {rho}", r.label, r.sing_text(), r.rho))?;
    }
    Ok("16 rows, Sing(f), Sing(Z) exact, rho agrees with Noether".into())
}

fn c5() -> Result<String, String> {
    let d = tables::check(Which::Ellip4).map_err(|e| e.to_string())?;
    check(d.is_clean(), format!("table differs:\n{d}"))?;
    let configs = tables::reference_ordered_configs().map_err(|e| e.to_string())?;
    let cs: Vec<u32> = configs
        .iter()
        .map(|c| match c.rest {
            Rest::Family { c } => c,
            Rest::Fixed { ii } => ii,
        })
        .collect();
    check(cs == [12, 10, 9, 8, 8, 7, 6, 6, 5, 4], format!("conditions x+2y = {cs:?}"))?;
    Ok(format!("10 rows, x+2y = {}", cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
}

fn c6() -> Result<String, String> {
    let mut parts = Vec::new();
    for (n, bound) in [(8u8, 0i64), (10, 0), (11, 12)] {
        let case = CaseId::new(n).map_err(|e| e.to_string())?;
        let configs = enumerate_fibers(case).map_err(|e| e.to_string())?;
        let mut seen = BTreeSet::new();
        for c in &configs {
            match section_classes(c).map_err(|e| e.to_string())? {
                SectionOutcome::Impossible(cert) => {
                    check(cert.contradicts(), format!("{}: bound does not contradict", c.label))?;
                    seen.insert(cert.bound.to_string());
                }
                SectionOutcome::Classes { .. } => return Err(format!("{}: section classes returned", c.label)),
            }
        }
        check(seen.len() == 1 && seen.contains(&bound.to_string()), format!("case {n}: bounds {seen:?}"))?;
        parts.push(format!("No.{n} >= {bound}"));
    }
    Ok(parts.join(", "))
}

fn c7() -> Result<String, String> {
    let d = tables::check(Which::Nocurve2).map_err(|e| e.to_string())?;
    check(d.is_clean(), format!("table differs:\n{d}"))?;
    let mut total = 0;
    let mut six = 0;
    for c in tables::reference_ordered_configs().map_err(|e| e.to_string())? {
        if let SectionOutcome::Classes { basis, classes } = section_classes(&c).map_err(|e| e.to_string())? {
            for cl in &classes {
                check(basis.pair(&cl.d, &cl.d) == qq(-6, 1), format!("{} {}: (D,D) != -6", c.label, cl.expr))?;
                check(basis.c_and_f(&cl.d) == (qq(0, 1), qq(3, 1)), format!("{} {}: (D,C),(D,F)", c.label, cl.expr))?;
                total += 1;
                if c.case.number == 6 {
                    six += 1;
                }
            }
        }
    }
    check(six == 25, format!("{six} rows for No. 6"))?;
    Ok(format!("{total} classes ({six} for No. 6), all (D,D) = -6, (D,C) = 0, (D,F) = 3"))
}

fn c8() -> Outcome {
    let run = || -> Result<(bool, String), String> {
        let d = tables::check(Which::Singu).map_err(|e| e.to_string())?;
        let rows = fiber::catalog_del_pezzo().map_err(|e| e.to_string())?;
        let cc = combination_count(&rows);
        check(cc.index_three == 32, format!("{} index-3 combinations", cc.index_three))?;
        check(cc.with_u3_singular == 33, format!("{} with U(3)", cc.with_u3_singular))?;
        check(cc.rho_one == 8, format!("{} with rho = 1", cc.rho_one))?;
        let row = |a: &str, b: &str| vec![a.to_string(), b.to_string()];
        let documented = d.missing.is_empty()
            && d.extra == [row("6b", "2A1(1)+2A1")]
            && d.duplicates == [row("6b", "2A1(1)+A1")];
        let mut detail = format!(
            "combinations {} (index 3) / {} (with U(3)), rho = 1: {}; duplicate 6b 2A1(1)+A1 deduplicated",
            cc.index_three, cc.with_u3_singular, cc.rho_one
        );
        if !d.is_clean() {
            let extra: Vec<String> = d.extra.iter().map(|r| r.join(" ")).collect();
            let missing: Vec<String> = d.missing.iter().map(|r| r.join(" ")).collect();
            detail += &format!("; derived but not in table: [{}]; missing: [{}]", extra.join(", "), missing.join(", "));
        }
        Ok((d.is_clean() || documented, detail))
    };
    match run() {
        Ok((true, s)) if s.contains("derived but not in table") => Outcome::KnownFail(s),
        Ok((true, s)) => Outcome::Pass(s),
        Ok((false, s)) | Err(s) => Outcome::Fail(s),
    }
}

fn c9() -> Outcome {
    let run = || -> Result<(bool, bool, String), String> {
        let d = tables::check(Which::Toric7).map_err(|e| e.to_string())?;
        let rows = k3dp::toric::example_table().map_err(|e| e.to_string())?;
        let golden = tables::golden(Which::Toric7).map_err(|e| e.to_string())?;
        check(rows.len() == golden.rows.len(), "row count")?;
        let models = |rs: &[Vec<String>]| rs.iter().map(|r| r[0].clone()).collect::<BTreeSet<_>>();
        let documented: BTreeSet<String> =
            ["(6) in P(1,1,3,3)", "(12) in P(1,1,6,6)", "(18) in P(1,2,9,9)"].iter().map(|s| s.to_string()).collect();
        let ok_known = models(&d.missing) == documented && models(&d.extra) == documented;
        let agree = rows.len() - d.missing.len();
        let mut detail = format!("{agree}/{} rows agree on Sing, K^2 and o/x", rows.len());
        if !d.is_clean() {
            let got: Vec<String> = d.extra.iter().map(|r| format!("{} {} {}", r[0], r[1], r[3])).collect();
            detail += &format!("; differing: [{}]", got.join(", "));
        }
        Ok((d.is_clean(), ok_known, detail))
    };
    match run() {
        Ok((true, _, s)) => Outcome::Pass(s),
        Ok((false, true, s)) => Outcome::KnownFail(s),
        Ok((false, false, s)) | Err(s) => Outcome::Fail(s),
    }
}

fn c10() -> Result<String, String> {
    let mut sides = Vec::new();
    for case in CaseId::all() {
        let (_, l) = fixed_locus(case).map_err(|e| e.to_string())?;
        check(l.holds(), format!("case {case}: {} vs {}", l.trace_side, l.euler))?;
        sides.push(l.euler.to_string());
    }
    Ok(format!("11 cases, chi = {}", sides.join(",")))
}

fn c11() -> Result<String, String> {
    let st = common::nefify_gen::run_suite(0x6b3d70, 1000)?;
    check(st.by_case.iter().all(|&c| c > 0), format!("cases exercised {:?}", st.by_case))?;
    Ok(format!(
        "{} configs, {} steps (I/II/III = {}/{}/{}), {} checked against brute force",
        st.configs, st.steps, st.by_case[0], st.by_case[1], st.by_case[2], st.oracle_checked
    ))
}

fn main() -> ExitCode {
    let plain: Vec<(usize, fn() -> Result<String, String>)> =
        vec![(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (10, c10), (11, c11)];
    let mut outcomes: Vec<(usize, Outcome)> = plain
        .into_iter()
        .map(|(n, f)| {
            (
                n,
                match f() {
                    Ok(s) => Outcome::Pass(s),
                    Err(s) => Outcome::Fail(s),
                },
            )
        })
        .collect();
    outcomes.push((8, c8()));
    outcomes.push((9, c9()));
    outcomes.sort_by_key(|(n, _)| *n);

    let mut unexpected = 0;
    for (n, o) in &outcomes {
        match o {
            Outcome::Pass(s) => println!("{}", line(*n, true, s)),
            Outcome::KnownFail(s) => println!("{} (documented)", line(*n, false, s)),
            Outcome::Fail(s) => {
                unexpected += 1;
                println!("{}", line(*n, false, s));
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
