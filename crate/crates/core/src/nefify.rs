//! Moving an invariant isotropic class into the nef chamber by reflections.
//!
//! Nefness is always relative to the declared root set: on an actual K3 the
//! roots must include every relevant (−2)-class for the answer to be geometric.

use std::fmt;

use serde::Deserialize;

use crate::lattice::{build_lattice, format_vec, Lattice};
use crate::linalg;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeConfig {
    pub lattice: Lattice,
    /// Acts on coordinate columns: `x ↦ phi · x`.
    pub phi: Vec<Vec<i64>>,
    pub phi_order: usize,
    pub roots: Vec<Vec<i64>>,
    pub ample: Vec<i64>,
}

impl LatticeConfig {
    pub fn new(
        lattice: Lattice,
        phi: Vec<Vec<i64>>,
        phi_order: Option<usize>,
        roots: Vec<Vec<i64>>,
        ample: Vec<i64>,
    ) -> Result<Self> {
        let n = lattice.rank();
        if phi.len() != n || phi.iter().any(|r| r.len() != n) {
            return Err(Error::Config(format!("phi must be {n}x{n}")));
        }
        let gp = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&phi), &lattice.gram)?, &phi)?;
        if gp != lattice.gram {
            return Err(Error::Config("phi is not an isometry".into()));
        }
        let id = linalg::identity(n);
        let phi_order = match phi_order {
            Some(k) => {
                if k == 0 || matrix_power(&phi, k)? != id {
                    return Err(Error::Config(format!("phi^{k} is not the identity")));
                }
                k
            }
            None => {
                let mut p = phi.clone();
                let mut k = 1;
                while p != id {
                    if k >= 120 {
                        return Err(Error::Config("phi has no finite order below 120".into()));
                    }
                    p = linalg::mat_mul(&p, &phi)?;
                    k += 1;
                }
                k
            }
        };
        let cfg = LatticeConfig { lattice, phi, phi_order, roots, ample };
        if cfg.ample.len() != n {
            return Err(Error::Config("ample class has wrong length".into()));
        }
        if cfg.lattice.norm(&cfg.ample)? <= 0 {
            return Err(Error::Config("(H,H) must be positive".into()));
        }
        for r in &cfg.roots {
            if r.len() != n {
                return Err(Error::Config(format!("root {} has wrong length", format_vec(r))));
            }
            if cfg.lattice.norm(r)? != -2 {
                return Err(Error::Config(format!("root {} does not have square -2", format_vec(r))));
            }
            if cfg.lattice.pair(&cfg.ample, r)? <= 0 {
                return Err(Error::Config(format!("(H, {}) must be positive", format_vec(r))));
            }
            if !cfg.roots.contains(&cfg.apply(r)?) {
                return Err(Error::Config(format!("root list not closed under phi at {}", format_vec(r))));
            }
        }
        Ok(cfg)
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        linalg::mat_vec(&self.phi, x)
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.lattice.pair(x, y)
    }

    /// `l, φ(l), ..., φ^{m-1}(l)`.
    pub fn orbit(&self, l: &[i64]) -> Result<Vec<Vec<i64>>> {
        let mut out = vec![l.to_vec()];
        loop {
            let next = self.apply(out.last().unwrap())?;
            if next == l {
                return Ok(out);
            }
            if out.len() > self.phi_order {
                return Err(Error::Inconsistent("orbit longer than the order of phi".into()));
            }
            out.push(next);
        }
    }
}

fn matrix_power(a: &[Vec<i64>], k: usize) -> Result<Vec<Vec<i64>>> {
    let mut p = linalg::identity(a.len());
    for _ in 0..k {
        p = linalg::mat_mul(&p, a)?;
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// The root is fixed.
    I,
    /// Orbit of `m` mutually orthogonal roots.
    II(usize),
    /// Orbit of `m/2` disjoint `A_2` pairs.
    III(usize),
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::I => write!(f, "I"),
            Case::II(m) => write!(f, "II({m})"),
            Case::III(m) => write!(f, "III({m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInfo {
    pub m: usize,
    pub k: i64,
    pub case: Case,
}

pub fn orbit_case(cfg: &LatticeConfig, l: &[i64]) -> Result<OrbitInfo> {
    if !cfg.roots.iter().any(|r| r == l) {
        return Err(Error::Precondition(format!("{} is not a declared root", format_vec(l))));
    }
    let orbit = cfg.orbit(l)?;
    let m = orbit.len();
    if m == 1 {
        return Ok(OrbitInfo { m, k: 0, case: Case::I });
    }
    let pairings: Vec<i64> = orbit[1..].iter().map(|x| cfg.pair(l, x)).collect::<Result<_>>()?;
    let k: i64 = pairings.iter().sum();
    let case = match k {
        0 if pairings.iter().all(|&p| p == 0) => Case::II(m),
        1 if m % 2 == 0
            && pairings.iter().enumerate().all(|(i, &p)| p == i64::from(i + 1 == m / 2)) =>
        {
            Case::III(m)
        }
        _ => {
            return Err(Error::Config(format!(
                "orbit of {} has k = {k} with pairings {}; not of type I, II or III",
                format_vec(l),
                format_vec(&pairings)
            )))
        }
    };
    Ok(OrbitInfo { m, k, case })
}

/// Reflection vectors whose product is the composite reflection for `l`:
/// the orbit itself (cases I, II) or the pair sums `a_i + b_i` (case III).
pub fn composite_factors(cfg: &LatticeConfig, l: &[i64]) -> Result<Vec<Vec<i64>>> {
    let info = orbit_case(cfg, l)?;
    let orbit = cfg.orbit(l)?;
    Ok(match info.case {
        Case::I | Case::II(_) => orbit,
        Case::III(m) => (0..m / 2)
            .map(|i| orbit[i].iter().zip(&orbit[i + m / 2]).map(|(a, b)| a + b).collect())
            .collect(),
    })
}

/// Matrix of `s_f`, acting on columns.
pub fn reflection_matrix(lat: &Lattice, f: &[i64]) -> Result<Vec<Vec<i64>>> {
    let n = lat.rank();
    let fg = lat.pairings(f)?;
    let mut m = linalg::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[i][j] += f[i] * fg[j];
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub case: Case,
    pub root: Vec<i64>,
    pub degree_before: i64,
    pub degree_after: i64,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case {} root {} degree {} -> {}",
            self.case,
            format_vec(&self.root),
            self.degree_before,
            self.degree_after
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefifyResult {
    pub class: Vec<i64>,
    pub trace: Vec<Step>,
}

pub fn is_nef_wrt_roots(cfg: &LatticeConfig, d: &[i64]) -> Result<bool> {
    for r in &cfg.roots {
        if cfg.pair(d, r)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reflects an invariant isotropic class until it pairs nonnegatively with
/// every root. Roots are tried in the order given.
pub fn nefify(cfg: &LatticeConfig, d: &[i64]) -> Result<NefifyResult> {
    if d.len() != cfg.lattice.rank() || d.iter().all(|&x| x == 0) {
        return Err(Error::Precondition("class must be a nonzero vector of the right length".into()));
    }
    if cfg.pair(d, d)? != 0 {
        return Err(Error::Precondition("class is not isotropic".into()));
    }
    if cfg.apply(d)? != d {
        return Err(Error::Precondition("class is not fixed by phi".into()));
    }
    let mut cur = d.to_vec();
    let mut deg = cfg.pair(&cfg.ample, &cur)?;
    if deg < 0 {
        cur.iter_mut().for_each(|x| *x = -*x);
        deg = -deg;
    }
    if deg == 0 {
        return Err(Error::Precondition("class is orthogonal to the ample class".into()));
    }
    let mut trace = Vec::new();
    loop {
        let mut hit = None;
        for r in &cfg.roots {
            let p = cfg.pair(&cur, r)?;
            if p < 0 {
                hit = Some((r, p));
                break;
            }
        }
        let Some((l, p)) = hit else { break };
        let info = orbit_case(cfg, l)?;
        let factor = match info.case {
            Case::I | Case::II(_) => p,
            Case::III(_) => 2 * p,
        };
        for e in cfg.orbit(l)? {
            for (c, x) in cur.iter_mut().zip(&e) {
                *c = factor
                    .checked_mul(*x)
                    .and_then(|v| v.checked_add(*c))
                    .ok_or(Error::Overflow("nefify step"))?;
            }
        }
        let after = cfg.pair(&cfg.ample, &cur)?;
        if after >= deg || after <= 0 {
            return Err(Error::Config(format!("degree went from {deg} to {after}; configuration is invalid")));
        }
        if cfg.pair(&cur, &cur)? != 0 || cfg.apply(&cur)? != cur {
            return Err(Error::Inconsistent("reflection step broke isotropy or invariance".into()));
        }
        trace.push(Step { case: info.case, root: l.clone(), degree_before: deg, degree_after: after });
        deg = after;
    }
    Ok(NefifyResult { class: cur, trace })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LatticeSpec {
    Expr(String),
    Gram(Vec<Vec<i64>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    lattice: LatticeSpec,
    phi: Vec<Vec<i64>>,
    #[serde(default)]
    phi_order: Option<usize>,
    roots: Vec<Vec<i64>>,
    ample: Vec<i64>,
}

/// Reads `{"lattice": expr or gram, "phi": matrix, "roots": [...], "ample": [...]}`.
/// An optional `"phi_order"` is checked; otherwise the order is computed.
pub fn parse_config(text: &str) -> Result<LatticeConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let lattice = match raw.lattice {
        LatticeSpec::Expr(e) => build_lattice(&e)?,
        LatticeSpec::Gram(g) => Lattice::from_gram("custom", g)?,
    };
    LatticeConfig::new(lattice, raw.phi, raw.phi_order, raw.roots, raw.ample)
}
