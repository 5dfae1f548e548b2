mod common;

use k3dp::fiber::CaseId;
use k3dp::lattice::{build_lattice, gram_props, reflect, root_lattice, solve_dual, Lattice};
use k3dp::linalg::det;
use num_bigint::BigInt;
use proptest::prelude::*;

fn root_lattices() -> Vec<Lattice> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(root_lattice('A', n).unwrap());
    }
    for n in 4..=8 {
        out.push(root_lattice('D', n).unwrap());
    }
    for n in 6..=8 {
        out.push(root_lattice('E', n).unwrap());
    }
    out
}

#[test]
fn root_lattice_determinants() {
    let expect = |kind: char, n: usize| -> i64 {
        match kind {
            'A' => n as i64 + 1,
            'D' => 4,
            _ => 9 - n as i64,
        }
    };
    for (kind, range) in [('A', 1..=8), ('D', 4..=8), ('E', 6..=8)] {
        for n in range {
            let l = root_lattice(kind, n).unwrap();
            let p = gram_props(&l).unwrap();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(p.det, BigInt::from(sign * expect(kind, n)), "{kind}{n}");
            assert_eq!(p.signature, (0, n));
            assert_eq!(p.discriminant.order(), BigInt::from(expect(kind, n)));
        }
    }
}

#[test]
fn fixed_lattices_are_three_elementary() {
    for case in CaseId::all() {
        let l = case.lattice().unwrap();
        let p = gram_props(&l).unwrap();
        assert!(p.is_hyperbolic, "case {case}");
        assert!(p.is_3_elementary, "case {case}");
        assert_eq!(p.discriminant.order(), p.det.magnitude().clone().into());
    }
    let p = gram_props(&build_lattice("U(3)+A2*2").unwrap()).unwrap();
    assert_eq!(p.discriminant.invariant_factors.len(), 4);
    assert_eq!(p.rank, 6);
}

#[test]
fn twist_scales_determinant() {
    let u = build_lattice("U").unwrap();
    let u3 = u.twist(3).unwrap();
    assert_eq!(det(&u3.gram), BigInt::from(-9));
    assert!(build_lattice("U(0)").is_err());
    assert!(build_lattice("Q7").is_err());
}

fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, n)
}

proptest! {
    #[test]
    fn direct_sum_determinant(i in 0usize..16, j in 0usize..16) {
        let ls = root_lattices();
        let (a, b) = (&ls[i], &ls[j]);
        let s = a.direct_sum(b);
        let pa = gram_props(a).unwrap();
        let pb = gram_props(b).unwrap();
        let ps = gram_props(&s).unwrap();
        prop_assert_eq!(ps.det, pa.det * pb.det);
        prop_assert_eq!(ps.rank, a.rank() + b.rank());
    }

    #[test]
    fn reflections_are_involutive_isometries(k in 0usize..16, x in vec_strategy(8), y in vec_strategy(8)) {
        let l = &root_lattices()[k];
        let n = l.rank();
        let (x, y) = (x[..n].to_vec(), y[..n].to_vec());
        for i in 0..n {
            let f: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
            let rx = reflect(l, &f, &x).unwrap();
            let ry = reflect(l, &f, &y).unwrap();
            prop_assert_eq!(l.pair(&rx, &ry).unwrap(), l.pair(&x, &y).unwrap());
            prop_assert_eq!(reflect(l, &f, &rx).unwrap(), x.clone());
            // f itself goes to -f
            let rf = reflect(l, &f, &f).unwrap();
            prop_assert!(rf.iter().zip(&f).all(|(a, b)| *a == -*b));
        }
    }

    #[test]
    fn solve_dual_reproduces_pairings(k in 0usize..16, p in vec_strategy(8)) {
        let l = &root_lattices()[k];
        let n = l.rank();
        let p = &p[..n];
        let sol = solve_dual(l, p).unwrap();
        let x = sol.vector.to_rationals();
        for i in 0..n {
            let s: k3dp::Q = (0..n).map(|j| x[j].clone() * common::qq(l.gram[j][i], 1)).sum();
            prop_assert_eq!(s, common::qq(p[i], 1));
        }
        let norm: k3dp::Q = (0..n).map(|i| x[i].clone() * common::qq(p[i], 1)).sum();
        prop_assert_eq!(norm, sol.norm);
        // the denominator divides the discriminant exponent
        let g = gram_props(l).unwrap();
        let e = g.discriminant.invariant_factors.last().cloned().unwrap_or(BigInt::from(1));
        prop_assert!((e % BigInt::from(sol.vector.denom)) == BigInt::from(0));
    }
}

#[test]
fn reflect_rejects_non_roots() {
    let l = root_lattice('A', 2).unwrap();
    assert!(reflect(&l, &[1, 1], &[1, 0]).is_ok());
    assert!(reflect(&l, &[1, -1], &[1, 0]).is_err());
}
