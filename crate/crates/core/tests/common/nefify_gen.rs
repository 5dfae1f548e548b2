#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use k3dp::lattice::Lattice;
use k3dp::nefify::{is_nef_wrt_roots, nefify, orbit_case, Case, LatticeConfig};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Clone, Copy, Debug)]
pub enum Block {
    Fixed,
    Cycle(usize),
    A2Swap,
}

impl Block {
    fn dim(self) -> usize {
        match self {
            Block::Fixed => 1,
            Block::Cycle(m) => m,
            Block::A2Swap => 2,
        }
    }
    // half the norm of the orbit sum, negated
    fn half_norm(self) -> i64 {
        match self {
            Block::Fixed => 1,
            Block::Cycle(m) => m as i64,
            Block::A2Swap => 1,
        }
    }
}

pub struct Generated {
    pub cfg: LatticeConfig,
    pub d: Vec<i64>,
}

pub fn random_config(rng: &mut StdRng, max_rank: usize) -> Generated {
    let order = [1usize, 2, 3][rng.random_range(0..3)];
    let mut blocks = Vec::new();
    let mut dim = 2;
    loop {
        let choices: Vec<Block> = match order {
            1 => vec![Block::Fixed],
            2 => vec![Block::Fixed, Block::Cycle(2), Block::A2Swap],
            _ => vec![Block::Fixed, Block::Cycle(3)],
        };
        let b = choices[rng.random_range(0..choices.len())];
        if dim + b.dim() > max_rank || (!blocks.is_empty() && rng.random_bool(0.3)) {
            break;
        }
        dim += b.dim();
        blocks.push(b);
    }
    let n = dim;
    let mut gram = vec![vec![0i64; n]; n];
    gram[0][1] = 1;
    gram[1][0] = 1;
    let mut phi = vec![vec![0i64; n]; n];
    phi[0][0] = 1;
    phi[1][1] = 1;
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let unit = |k: usize| -> Vec<i64> { (0..n).map(|i| i64::from(i == k)).collect() };
    let mut off = 2;
    let mut ample = vec![0i64; n];
    for &b in &blocks {
        for i in 0..b.dim() {
            gram[off + i][off + i] = -2;
            ample[off + i] = -1;
            roots.push(unit(off + i));
        }
        match b {
            Block::Fixed => phi[off][off] = 1,
            Block::Cycle(m) => {
                for i in 0..m {
                    phi[off + (i + 1) % m][off + i] = 1;
                }
            }
            Block::A2Swap => {
                gram[off][off + 1] = 1;
                gram[off + 1][off] = 1;
                phi[off + 1][off] = 1;
                phi[off][off + 1] = 1;
            }
        }
        off += b.dim();
    }
    // H = a e + b f - Σ roots, with a > b so that (H, f - e) > 0
    let b_coef = rng.random_range(1..4);
    let a_coef = b_coef + rng.random_range(1..4);
    ample[0] = a_coef;
    ample[1] = b_coef;
    if rng.random_bool(0.5) {
        let mut fe = vec![0i64; n];
        fe[0] = -1;
        fe[1] = 1;
        roots.push(fe);
    }
    // shuffle the root order; closure under phi is unaffected
    for i in (1..roots.len()).rev() {
        let j = rng.random_range(0..=i);
        roots.swap(i, j);
    }
    let lattice = Lattice::from_gram("random", gram).unwrap();
    let mut h = ample.clone();
    // make (H,H) comfortably positive
    while lattice.norm(&h).unwrap() <= 0 {
        h[0] += 1;
        h[1] += 1;
    }
    let cfg = LatticeConfig::new(lattice, phi, None, roots, h).expect("generated config is valid");
    assert!(matches!(cfg.phi_order, 1..=3));

    // φ-fixed isotropic D = x e + y f + Σ t_j (orbit sum_j), 2xy = Σ t_j^2 · 2·half_norm_j
    loop {
        let ts: Vec<i64> = blocks.iter().map(|_| rng.random_range(-3..=3)).collect();
        let s: i64 = blocks.iter().zip(&ts).map(|(b, t)| t * t * b.half_norm()).sum();
        let (x, y) = if s == 0 {
            if rng.random_bool(0.5) {
                (rng.random_range(1..4), 0)
            } else {
                (0, rng.random_range(1..4))
            }
        } else {
            let divs: Vec<i64> = (1..=s).filter(|k| s % k == 0).collect();
            let x = divs[rng.random_range(0..divs.len())];
            (x, s / x)
        };
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        let mut d = vec![0i64; n];
        d[0] = sign * x;
        d[1] = sign * y;
        let mut off = 2;
        for (b, t) in blocks.iter().zip(&ts) {
            for i in 0..b.dim() {
                d[off + i] = *t;
            }
            off += b.dim();
        }
        if cfg.pair(&cfg.ample, &d).unwrap() != 0 && d.iter().any(|&v| v != 0) {
            assert_eq!(cfg.pair(&d, &d).unwrap(), 0);
            return Generated { cfg, d };
        }
    }
}

// Picard–Lefschetz matrix x ↦ x + (x, f) f, built from the Gram matrix directly
pub fn pl_matrix(gram: &[Vec<i64>], f: &[i64]) -> Vec<Vec<i64>> {
    let n = gram.len();
    let gf: Vec<i64> = (0..n).map(|j| (0..n).map(|i| f[i] * gram[i][j]).sum()).collect();
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j) + f[i] * gf[j]).collect()).collect()
}

pub fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn pair(gram: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let n = gram.len();
    (0..n).map(|i| (0..n).map(|j| x[i] * gram[i][j] * y[j]).sum::<i64>()).sum()
}

// product of individual reflections realizing the φ-equivariant reflection for l
pub fn composite_matrix(cfg: &LatticeConfig, l: &[i64]) -> Vec<Vec<i64>> {
    let g = &cfg.lattice.gram;
    let orbit = cfg.orbit(l).unwrap();
    let n = g.len();
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    match orbit_case(cfg, l).unwrap().case {
        Case::I | Case::II(_) => {
            for r in &orbit {
                m = mul(&pl_matrix(g, r), &m);
            }
        }
        Case::III(k) => {
            for i in 0..k / 2 {
                let (a, b) = (&orbit[i], &orbit[i + k / 2]);
                let sa = pl_matrix(g, a);
                m = mul(&mul(&mul(&sa, &pl_matrix(g, b)), &sa), &m);
            }
        }
    }
    m
}

pub fn dominant_by_search(cfg: &LatticeConfig, d: &[i64]) -> Option<Vec<i64>> {
    let g = &cfg.lattice.gram;
    let mats: Vec<Vec<Vec<i64>>> = cfg.roots.iter().map(|r| composite_matrix(cfg, r)).collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([d.to_vec()]);
    seen.insert(d.to_vec());
    while let Some(v) = queue.pop_front() {
        for m in &mats {
            let w = apply(m, &v);
            if seen.insert(w.clone()) {
                if seen.len() > 20_000 {
                    return None;
                }
                queue.push_back(w);
            }
        }
    }
    let dominant: Vec<&Vec<i64>> = seen.iter().filter(|v| cfg.roots.iter().all(|r| pair(g, v, r) >= 0)).collect();
    if dominant.len() != 1 {
        return None;
    }
    Some(dominant[0].clone())
}

#[derive(Debug, Default)]
pub struct SuiteStats {
    pub configs: usize,
    pub steps: usize,
    /// Steps of case I, II and III.
    pub by_case: [usize; 3],
    pub oracle_checked: usize,
}

/// Runs nefify on `count` random configs and replays each trace independently.
pub fn run_suite(seed: u64, count: usize) -> Result<SuiteStats, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut st = SuiteStats::default();
    for k in 0..count {
        let Generated { cfg, d } = random_config(&mut rng, 6);
        let g = cfg.lattice.gram.clone();
        let fail = |what: &str| Err(format!("config {k} (D = {d:?}): {what}"));
        let out = match nefify(&cfg, &d) {
            Ok(o) => o,
            Err(e) => return fail(&e.to_string()),
        };
        let mut cur = d.clone();
        if pair(&g, &cfg.ample, &cur) < 0 {
            cur.iter_mut().for_each(|x| *x = -*x);
        }
        let start = cur.clone();
        let mut deg = pair(&g, &cfg.ample, &cur);
        for step in &out.trace {
            if step.degree_before != deg {
                return fail("trace degree out of sync");
            }
            let next = apply(&composite_matrix(&cfg, &step.root), &cur);
            if pair(&g, &next, &next) != 0 {
                return fail("isotropy lost");
            }
            if apply(&cfg.phi, &next) != next {
                return fail("phi-fixedness lost");
            }
            let after = pair(&g, &cfg.ample, &next);
            if !(0 < after && after < deg) || step.degree_after != after {
                return fail("degree did not strictly decrease");
            }
            st.by_case[match step.case {
                Case::I => 0,
                Case::II(_) => 1,
                Case::III(_) => 2,
            }] += 1;
            st.steps += 1;
            cur = next;
            deg = after;
        }
        if cur != out.class {
            return fail("replayed class differs from output");
        }
        if !is_nef_wrt_roots(&cfg, &out.class).unwrap_or(false) {
            return fail("output not nef");
        }
        if cfg.lattice.rank() <= 4 {
            match dominant_by_search(&cfg, &start) {
                Some(dom) if dom == out.class => st.oracle_checked += 1,
                Some(dom) => return fail(&format!("brute force gives {dom:?}, nefify {:?}", out.class)),
                None => return fail("orbit search did not find a unique dominant class"),
            }
        }
        st.configs += 1;
    }
    Ok(st)
}
