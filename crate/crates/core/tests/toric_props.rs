mod common;

use common::{inverse_mod, qq};
use k3dp::toric::{
    analyze_hypersurface, analyze_toric, cone_normal_form, example_models, fan_model, msd_screen, Action,
    HypersurfaceSpec, Model, ScreenTag, ToricSpec,
};
use k3dp::Q;
use num_integer::Integer;
use proptest::prelude::*;

fn det(u: [i64; 2], v: [i64; 2]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

/// Finds q with an integral M, det M = ±1, M u = (0,1), M v = (n,-q) by search.
fn normal_form_oracle(u: [i64; 2], v: [i64; 2]) -> Vec<i64> {
    let d = det(u, v);
    let n = d.abs();
    let mut out = Vec::new();
    for q in 0..n.max(1) {
        // M = T · [u v]^{-1}, T = [[0, n], [1, -q]]
        let t = [[0, n], [1, -q]];
        let inv = [[v[1], -v[0]], [-u[1], u[0]]]; // times 1/d
        let mut m = [[0i64; 2]; 2];
        let mut ok = true;
        for i in 0..2 {
            for j in 0..2 {
                let s = t[i][0] * inv[0][j] + t[i][1] * inv[1][j];
                if s % d != 0 {
                    ok = false;
                }
                m[i][j] = s / d;
            }
        }
        if ok && (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs() == 1 {
            out.push(q);
        }
    }
    out
}

fn primitive() -> impl Strategy<Value = [i64; 2]> {
    (-12i64..=12, -12i64..=12).prop_filter("primitive", |(a, b)| a.gcd(b) == 1).prop_map(|(a, b)| [a, b])
}

fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::collection::vec((0usize..4, -3i64..=3), 0..8).prop_map(|ops| {
        let mut m = [[1i64, 0], [0, 1]];
        for (op, k) in ops {
            m = match op {
                0 => [[m[0][0] + k * m[1][0], m[0][1] + k * m[1][1]], m[1]],
                1 => [m[0], [m[1][0] + k * m[0][0], m[1][1] + k * m[0][1]]],
                2 => [m[1], m[0]],
                _ => [[-m[0][0], -m[0][1]], m[1]],
            };
        }
        m
    })
}

fn apply(m: [[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

fn same_type((n, q): (i64, i64), (n2, q2): (i64, i64)) -> bool {
    n == n2 && (n == 1 || q == q2 || (q * q2) % n == 1)
}

proptest! {
    #[test]
    fn normal_form_agrees_with_search(u in primitive(), v in primitive()) {
        prop_assume!(det(u, v) != 0);
        let (n, q) = cone_normal_form(u, v).unwrap();
        prop_assert_eq!(n, det(u, v).abs());
        if n > 1 {
            let qs = normal_form_oracle(u, v);
            prop_assert!(qs.contains(&q) || qs.contains(&inverse_mod(q, n)), "{:?} {:?}: q = {} vs {:?}", u, v, q, qs);
        }
    }

    #[test]
    fn normal_form_is_lattice_invariant(u in primitive(), v in primitive(), m in unimodular()) {
        prop_assume!(det(u, v) != 0);
        let a = cone_normal_form(u, v).unwrap();
        let b = cone_normal_form(apply(m, u), apply(m, v)).unwrap();
        prop_assert!(same_type(a, b), "{:?} vs {:?}", a, b);
        let c = cone_normal_form(v, u).unwrap();
        prop_assert!(same_type(a, c));
    }
}

#[test]
fn degree_of_quotient_divides_weighted_plane() {
    for m in example_models() {
        let Model::Toric(spec) = m else { continue };
        let fan = fan_model(&spec).unwrap();
        assert_eq!(fan.index, spec.group_order(), "{spec}");
        if fan.reflection_orders.iter().all(|&k| k == 1) {
            let [a, b, c] = spec.weights;
            let base = qq((a + b + c) * (a + b + c), a * b * c);
            let r = analyze_toric(&spec).unwrap();
            assert_eq!(r.surface.k2 * Q::from_integer(spec.group_order().into()), base, "{spec}");
        }
    }
}

#[test]
fn table_points_have_index_one_or_three() {
    for m in example_models() {
        let r = m.analyze().unwrap();
        assert!(r.others.is_empty(), "{m}: {:?}", r.others);
        for s in &r.sing {
            assert!(matches!(s.index(), 1 | 3), "{m}: {s}");
        }
        // 3K^2/8 = g - 1 is what the screen needs; K^2 is always positive
        assert!(r.k2 > qq(0, 1));
    }
}

#[test]
fn hypersurface_degree_formula() {
    for m in example_models() {
        let Model::Hypersurface(h) = m else { continue };
        let s: i64 = h.weights.iter().sum();
        let p: i64 = h.weights.iter().product();
        let r = analyze_hypersurface(&h).unwrap();
        assert_eq!(r.k2, qq(h.degree * (h.degree - s) * (h.degree - s), p), "{h}");
    }
    assert!(HypersurfaceSpec::new([2, 2, 2, 3], 6).is_err());
}

#[test]
fn quotient_examples() {
    let spec = ToricSpec::new([1, 2, 9], vec!["2:0,1,1".parse::<Action>().unwrap()]).unwrap();
    let r = analyze_toric(&spec).unwrap();
    let text: Vec<String> = r.surface.points.iter().map(|p| format!("{} {}", p.locus, p.type_text())).collect();
    assert_eq!(text, ["(1,0,0) A1", "(0,1,0) A3", "(0,0,1) A3(1,2)"]);
    assert_eq!(r.surface.k2, qq(4, 1));

    let spec = ToricSpec::new([1, 1, 1], vec!["9:0,1,2".parse().unwrap()]).unwrap();
    let r = analyze_toric(&spec).unwrap();
    assert_eq!(r.surface.k2, qq(1, 1));
    assert_eq!(r.fan.index, 9);
}

#[test]
fn screen_tags() {
    let sing = |s: &str| k3dp::singularity::parse_symbols(s).unwrap();
    // 3K^2/8 not integral
    let v = msd_screen(&qq(4, 1), &sing("A1")).unwrap();
    assert_eq!(v.tag, ScreenTag::FailDivisibility);
    assert!(!v.passes());
    // K^2 = 8: g = 4 only occurs for the U(3) case, which is excluded
    let v = msd_screen(&qq(8, 1), &sing("smooth")).unwrap();
    assert_eq!(v.tag, ScreenTag::FailCatalog);
    let v = msd_screen(&qq(8, 3), &sing("D6(1)")).unwrap();
    assert_eq!(v.tag, ScreenTag::Candidate);
    assert_eq!(v.g, Some(2));
    assert!(v.matches.contains(&"11a".to_string()));
}
