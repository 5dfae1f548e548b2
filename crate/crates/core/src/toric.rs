//! Weighted projective planes, their quotients by finite diagonal groups, and
//! quasi-smooth weighted hypersurfaces.
//!
//! A plane `P(a,b,c)/G` is modeled by its fan: `N = Z^3/(a,b,c)` with rays the
//! images of the coordinate vectors, refined to the overlattice `N'` generated by
//! `N` and the exponent vectors `w/m` of the acting group.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::Zero;

use crate::fiber::{catalog_del_pezzo, DelPezzoRow};
use crate::singularity::{classify_graph, cyclic_from_weights, format_symbols, hj_expand, sort_symbols, ResolutionGraph, Symbol};
use crate::{q, Error, Result, Q};

/// Diagonal action `x_i -> ζ_m^{w_i} x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Action {
    pub order: i64,
    pub exponents: [i64; 3],
}

impl FromStr for Action {
    type Err = Error;

    /// Parses `2:0,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("action `{s}` (expected m:w1,w2,w3)"));
        let (m, ws) = s.trim().split_once(':').ok_or_else(bad)?;
        let order: i64 = m.trim().parse().map_err(|_| bad())?;
        let ws = parse_ints(ws).map_err(|_| bad())?;
        if order < 1 || ws.len() != 3 {
            return Err(bad());
        }
        Ok(Action { order, exponents: [ws[0].rem_euclid(order), ws[1].rem_euclid(order), ws[2].rem_euclid(order)] })
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.exponents;
        write!(f, "{}:{a},{b},{c}", self.order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricSpec {
    pub weights: [i64; 3],
    pub actions: Vec<Action>,
}

impl ToricSpec {
    pub fn new(weights: [i64; 3], actions: Vec<Action>) -> Result<Self> {
        if weights.iter().any(|&w| w < 1) {
            return Err(Error::Precondition(format!("weights must be positive, got {weights:?}")));
        }
        if weights[0].gcd(&weights[1]).gcd(&weights[2]) != 1 {
            return Err(Error::Precondition(format!("weights {weights:?} have a common factor")));
        }
        Ok(ToricSpec { weights, actions })
    }

    pub fn group_order(&self) -> i64 {
        self.actions.iter().map(|a| a.order).product()
    }
}

impl fmt::Display for ToricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights;
        if [a, b, c] == [1, 1, 1] {
            write!(f, "P^2")?;
        } else {
            write!(f, "P({a},{b},{c})")?;
        }
        if !self.actions.is_empty() {
            let gs: Vec<String> = self.actions.iter().map(|a| format!("C{}", a.order)).collect();
            write!(f, "/{}", gs.join("x"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceSpec {
    pub weights: [i64; 4],
    pub degree: i64,
}

impl HypersurfaceSpec {
    pub fn new(weights: [i64; 4], degree: i64) -> Result<Self> {
        if weights.iter().any(|&w| w < 1) || degree < 1 {
            return Err(Error::Precondition(format!("weights and degree must be positive, got {weights:?}, {degree}")));
        }
        for skip in 0..4 {
            let g = (0..4).filter(|&i| i != skip).fold(0, |g, i| g.gcd(&weights[i]));
            if g != 1 {
                return Err(Error::Unsupported(format!("P{weights:?} is not well formed")));
            }
        }
        Ok(HypersurfaceSpec { weights, degree })
    }
}

impl fmt::Display for HypersurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({}) in P({})", self.degree, w.join(","))
    }
}

/// Fan of `P(a,b,c)/G` in coordinates of a basis of `N'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanModel {
    /// Columns span `D·N'` inside `N = Z^2`.
    pub basis: [[i64; 2]; 2],
    pub denom: i64,
    /// `[N' : N]`.
    pub index: i64,
    /// Images of the coordinate vectors in `N`.
    pub raw_rays: [[i64; 2]; 3],
    /// Primitive ray generators in `N'`.
    pub rays: [[i64; 2]; 3],
    /// `v_i = k_i u_i`; `k_i > 1` means the group contains a reflection.
    pub reflection_orders: [i64; 3],
    /// Cone `i` is spanned by the two rays other than `i` (the point `x_i != 0`).
    pub cones: [(usize, usize); 3],
}

/// A torus fixed point or a point found on a coordinate line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPoint {
    pub locus: String,
    /// `1/n(1,q)`; `n = 1` is smooth.
    pub n: i64,
    pub q: i64,
    pub multiplicity: usize,
    /// `None` when the point is neither a rational double point nor of index three.
    pub symbol: Option<Symbol>,
}

impl QuotientPoint {
    fn new(locus: String, (n, qq): (i64, i64), multiplicity: usize) -> Result<Self> {
        let symbol = if n == 1 { None } else { classify_cyclic(n, qq)? };
        Ok(QuotientPoint { locus, n, q: qq, multiplicity, symbol })
    }

    pub fn is_smooth(&self) -> bool {
        self.n == 1
    }

    pub fn type_text(&self) -> String {
        match (&self.symbol, self.n) {
            (_, 1) => "smooth".into(),
            (Some(s), _) => s.to_string(),
            (None, n) => format!("1/{n}(1,{})", self.q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub sing: Vec<Symbol>,
    /// Singular points outside the index-one and index-three catalogs, as `(n, q)`.
    pub others: Vec<(i64, i64)>,
    pub k2: Q,
    pub points: Vec<QuotientPoint>,
}

impl SurfaceReport {
    fn assemble(points: Vec<QuotientPoint>, k2: Q) -> Self {
        let mut sing = Vec::new();
        let mut others = Vec::new();
        for p in points.iter().filter(|p| !p.is_smooth()) {
            for _ in 0..p.multiplicity {
                match &p.symbol {
                    Some(s) => sing.push(s.clone()),
                    None => others.push((p.n, p.q)),
                }
            }
        }
        others.sort_unstable();
        SurfaceReport { sing: sort_symbols(sing), others, k2, points }
    }

    pub fn sing_text(&self) -> String {
        let mut s = format_symbols(&self.sing);
        for (n, qq) in &self.others {
            s = if s == "smooth" { format!("1/{n}(1,{qq})") } else { format!("{s}+1/{n}(1,{qq})") };
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricReport {
    pub surface: SurfaceReport,
    pub fan: FanModel,
}

fn parse_ints(s: &str) -> std::result::Result<Vec<i64>, std::num::ParseIntError> {
    s.split(',').map(|x| x.trim().parse()).collect()
}

/// Parses `1,2,9`.
pub fn parse_weights<const K: usize>(s: &str) -> Result<[i64; K]> {
    let v = parse_ints(s).map_err(|_| Error::Parse(format!("weights `{s}`")))?;
    v.try_into().map_err(|_| Error::Parse(format!("expected {K} weights, got `{s}`")))
}

fn classify_cyclic(n: i64, qq: i64) -> Result<Option<Symbol>> {
    let chain: Vec<i64> = hj_expand(n, qq)?.iter().map(|b| -b).collect();
    match classify_graph(&ResolutionGraph::chain(&chain)) {
        Ok(c) => Ok(Some(c.symbol)),
        Err(Error::Unclassified(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn det2(u: [i64; 2], v: [i64; 2]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

// unimodular U with U·w = e3
fn unimodular_to_e3(w: [i64; 3]) -> [[i64; 3]; 3] {
    // column operations on the row vector w^T, tracked in V, give w^T V = e3^T
    let mut row = w;
    let mut v = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let col_op = |v: &mut [[i64; 3]; 3], i: usize, j: usize, m: [[i64; 2]; 2]| {
        for r in v.iter_mut() {
            let (a, b) = (r[i], r[j]);
            r[i] = m[0][0] * a + m[1][0] * b;
            r[j] = m[0][1] * a + m[1][1] * b;
        }
    };
    for i in 0..2 {
        let (a, b) = (row[i], row[2]);
        if a == 0 {
            continue;
        }
        let e = a.extended_gcd(&b);
        // new col2 = x·col_i + y·col2, new col_i = (b/g)·col_i − (a/g)·col2
        let m = [[b / e.gcd, e.x], [-a / e.gcd, e.y]];
        col_op(&mut v, i, 2, m);
        row[i] = 0;
        row[2] = e.gcd;
    }
    debug_assert_eq!(row, [0, 0, 1]);
    // V^T w = e3
    [0, 1, 2].map(|r| [v[0][r], v[1][r], v[2][r]])
}

// lower-triangular basis of the lattice spanned by the columns
fn hermite_basis(cols: &[[i64; 2]]) -> Result<[[i64; 2]; 2]> {
    let mut cs: Vec<[i64; 2]> = cols.to_vec();
    for row in 0..2 {
        for j in row + 1..cs.len() {
            let (a, b) = (cs[row][row], cs[j][row]);
            if b == 0 {
                continue;
            }
            let e = a.extended_gcd(&b);
            let (ci, cj) = (cs[row], cs[j]);
            let (p, r) = (a / e.gcd, b / e.gcd);
            for k in 0..2 {
                cs[row][k] = e.x * ci[k] + e.y * cj[k];
                cs[j][k] = r * ci[k] - p * cj[k];
            }
        }
    }
    if cs.len() < 2 || cs[0][0] == 0 || cs[1][1] == 0 {
        return Err(Error::Inconsistent("overlattice generators do not span a full lattice".into()));
    }
    Ok([cs[0], cs[1]])
}

/// Builds the fan of `P(a,b,c)/G`.
pub fn fan_model(spec: &ToricSpec) -> Result<FanModel> {
    let u = unimodular_to_e3(spec.weights);
    let proj = |x: [i64; 3]| -> [i64; 2] { [0, 1].map(|r| (0..3).map(|k| u[r][k] * x[k]).sum()) };
    let raw_rays = [proj([1, 0, 0]), proj([0, 1, 0]), proj([0, 0, 1])];
    let denom = spec.actions.iter().fold(1i64, |d, a| d.lcm(&a.order));
    let mut gens = vec![[denom, 0], [0, denom]];
    for a in &spec.actions {
        let p = proj(a.exponents);
        gens.push([p[0] * (denom / a.order), p[1] * (denom / a.order)]);
    }
    let basis = hermite_basis(&gens)?;
    let bdet = det2(basis[0], basis[1]);
    let index = denom * denom / bdet.abs();
    if index != spec.group_order() {
        return Err(Error::Precondition(format!(
            "the actions generate a group of order {index} on {spec}, not {}; the product is not faithful",
            spec.group_order()
        )));
    }
    // coordinates of D·v in the basis: solve basis · c = D·v
    let coords = |v: [i64; 2]| -> Result<[i64; 2]> {
        let x = [denom * v[0], denom * v[1]];
        let c0 = det2(x, basis[1]);
        let c1 = det2(basis[0], x);
        if c0 % bdet != 0 || c1 % bdet != 0 {
            return Err(Error::Inconsistent("ray outside the overlattice".into()));
        }
        Ok([c0 / bdet, c1 / bdet])
    };
    let mut rays = [[0; 2]; 3];
    let mut reflection_orders = [1; 3];
    for i in 0..3 {
        let c = coords(raw_rays[i])?;
        let k = c[0].gcd(&c[1]);
        rays[i] = [c[0] / k, c[1] / k];
        reflection_orders[i] = k;
    }
    Ok(FanModel { basis, denom, index, raw_rays, rays, reflection_orders, cones: [(1, 2), (0, 2), (0, 1)] })
}

/// Normal form `((0,1), (n,-q))` of the cone spanned by two primitive vectors.
pub fn cone_normal_form(u: [i64; 2], v: [i64; 2]) -> Result<(i64, i64)> {
    let e = u[0].extended_gcd(&u[1]);
    if e.gcd != 1 {
        return Err(Error::Precondition(format!("{u:?} is not primitive")));
    }
    // A = [[u1, -u0], [s, t]] sends u to (0, 1)
    let (s, t) = (e.x, e.y);
    let x = u[1] * v[0] - u[0] * v[1];
    let y = s * v[0] + t * v[1];
    if x == 0 {
        return Err(Error::Precondition("degenerate cone".into()));
    }
    let n = x.abs();
    if n == 1 {
        return Ok((1, 0));
    }
    let qq = (-y).rem_euclid(n);
    if qq.gcd(&n) != 1 {
        return Err(Error::Precondition(format!("{v:?} is not primitive")));
    }
    Ok((n, qq))
}

fn point_label(i: usize, len: usize) -> String {
    let c: Vec<&str> = (0..len).map(|k| if k == i { "1" } else { "0" }).collect();
    format!("({})", c.join(","))
}

// K^2 = (sum D_i)^2 with rays in counterclockwise order
fn fan_k2(rays: &[[i64; 2]; 3]) -> Q {
    let order: [usize; 3] = if det2(rays[0], rays[1]) > 0 { [0, 1, 2] } else { [0, 2, 1] };
    let u: Vec<[i64; 2]> = order.iter().map(|&i| rays[i]).collect();
    let mut k2 = Q::zero();
    for i in 0..3 {
        let (p, c, nx) = (u[(i + 2) % 3], u[i], u[(i + 1) % 3]);
        k2 += q(-det2(p, nx), det2(p, c) * det2(c, nx));
        k2 += q(2, det2(c, nx));
    }
    k2
}

pub fn analyze_toric(spec: &ToricSpec) -> Result<ToricReport> {
    let fan = fan_model(spec)?;
    let mut points = Vec::new();
    for (i, &(a, b)) in fan.cones.iter().enumerate() {
        let nq = cone_normal_form(fan.rays[a], fan.rays[b])?;
        points.push(QuotientPoint::new(point_label(i, 3), nq, 1)?);
    }
    let k2 = fan_k2(&fan.rays);
    if fan.reflection_orders == [1, 1, 1] {
        let [a, b, c] = spec.weights;
        let expected = q((a + b + c) * (a + b + c), a * b * c * fan.index);
        if k2 != expected {
            return Err(Error::Inconsistent(format!("fan K^2 {k2} differs from the degree formula {expected}")));
        }
    }
    Ok(ToricReport { surface: SurfaceReport::assemble(points, k2), fan })
}

// exponent pairs (a, b) with a·wi + b·wj = d
fn binomials(wi: i64, wj: i64, d: i64) -> Vec<(i64, i64)> {
    (0..=d / wi).filter(|&a| (d - a * wi) % wj == 0).map(|a| (a, (d - a * wi) / wj)).collect()
}

fn as_unsupported(e: Error, what: &str) -> Error {
    match e {
        Error::NotSmall(m) => Error::Unsupported(format!("{what}: {m}")),
        e => e,
    }
}

/// Singularities and `K^2` of a general member, assumed quasi-smooth.
pub fn analyze_hypersurface(spec: &HypersurfaceSpec) -> Result<SurfaceReport> {
    let w = spec.weights;
    let d = spec.degree;
    let mut points = Vec::new();
    for i in 0..4 {
        if d % w[i] == 0 {
            continue;
        }
        let j = (0..4)
            .find(|&j| j != i && d > w[j] && (d - w[j]) % w[i] == 0)
            .ok_or_else(|| Error::Unsupported(format!("{spec}: not quasi-smooth at {}", point_label(i, 4))))?;
        let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
        let nq = cyclic_from_weights(w[i], (w[rest[0]], w[rest[1]])).map_err(|e| as_unsupported(e, &spec.to_string()))?;
        points.push(QuotientPoint::new(point_label(i, 4), nq, 1)?);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let g = w[i].gcd(&w[j]);
            if g == 1 {
                continue;
            }
            let mons = binomials(w[i], w[j], d);
            let locus = format!("x{i}x{j}-line");
            if mons.is_empty() {
                return Err(Error::Unsupported(format!("{spec}: contains the {locus}, a curve of 1/{g} points")));
            }
            if mons.len() == 1 {
                continue;
            }
            let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
            let nq = cyclic_from_weights(g, (w[rest[0]], w[rest[1]])).map_err(|e| as_unsupported(e, &spec.to_string()))?;
            points.push(QuotientPoint::new(locus, nq, mons.len() - 1)?);
        }
    }
    let sum: i64 = w.iter().sum();
    let k2 = q(d * (d - sum) * (d - sum), w.iter().product());
    Ok(SurfaceReport::assemble(points, k2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ScreenTag {
    FailDivisibility,
    FailCatalog,
    Candidate,
}

impl fmt::Display for ScreenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScreenTag::FailDivisibility => "fail-divisibility",
            ScreenTag::FailCatalog => "fail-catalog",
            ScreenTag::Candidate => "candidate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenVerdict {
    pub tag: ScreenTag,
    pub g: Option<i64>,
    /// Catalog labels with the same singularities and `K^2`.
    pub matches: Vec<String>,
}

impl ScreenVerdict {
    pub fn passes(&self) -> bool {
        self.tag == ScreenTag::Candidate
    }
}

fn index_three_catalog() -> Result<&'static [DelPezzoRow]> {
    static CACHE: OnceLock<std::result::Result<Vec<DelPezzoRow>, Error>> = OnceLock::new();
    let rows = CACHE.get_or_init(|| {
        catalog_del_pezzo().map(|rows| rows.into_iter().filter(|r| r.case.number != 2).collect())
    });
    rows.as_deref().map_err(Clone::clone)
}

/// Necessary conditions for `|-3K_Z|` to contain `2C` with `C` smooth.
pub fn msd_screen(k2: &Q, sing: &[Symbol]) -> Result<ScreenVerdict> {
    let m = k2 * Q::from_integer(3.into()) / Q::from_integer(8.into());
    let g = if m.is_integer() { num_traits::ToPrimitive::to_i64(&m.to_integer()).map(|x| x + 1) } else { None };
    let Some(g) = g.filter(|&g| g >= 2) else {
        return Ok(ScreenVerdict { tag: ScreenTag::FailDivisibility, g, matches: vec![] });
    };
    let sing = sort_symbols(sing.to_vec());
    let matches: Vec<String> = index_three_catalog()?
        .iter()
        .filter(|r| r.k2 == *k2 && sort_symbols(r.sing.clone()) == sing)
        .map(|r| r.label.clone())
        .fold(Vec::new(), |mut v, l| {
            if !v.contains(&l) {
                v.push(l);
            }
            v
        });
    let tag = if matches.is_empty() { ScreenTag::FailCatalog } else { ScreenTag::Candidate };
    Ok(ScreenVerdict { tag, g: Some(g), matches })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Toric(ToricSpec),
    Hypersurface(HypersurfaceSpec),
}

impl Model {
    pub fn analyze(&self) -> Result<SurfaceReport> {
        match self {
            Model::Toric(s) => analyze_toric(s).map(|r| r.surface),
            Model::Hypersurface(s) => analyze_hypersurface(s),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Toric(s) => s.fmt(f),
            Model::Hypersurface(s) => s.fmt(f),
        }
    }
}

// weights, actions; then degree/weights for the hypersurfaces
const TORIC_ROWS: &[(&[i64; 3], &[&str])] = &[
    (&[1, 1, 3], &[]),
    (&[1, 3, 4], &[]),
    (&[2, 3, 5], &[]),
    (&[1, 1, 2], &["3:0,1,1"]),
    (&[1, 1, 6], &[]),
    (&[1, 6, 7], &[]),
    (&[1, 3, 4], &["2:0,1,1"]),
    (&[1, 2, 3], &["3:0,1,1"]),
    (&[1, 1, 1], &["9:0,1,2"]),
    (&[1, 5, 9], &[]),
    (&[1, 2, 9], &[]),
    (&[1, 2, 3], &["3:0,1,2"]),
    (&[1, 1, 2], &["2:1,0,1", "3:0,1,1"]),
    (&[1, 1, 6], &["2:0,1,1"]),
    (&[1, 4, 15], &[]),
    (&[1, 1, 3], &["5:0,1,4"]),
    (&[1, 2, 9], &["2:0,1,1"]),
    (&[1, 1, 6], &["4:0,1,3"]),
];

const HYPERSURFACE_ROWS: &[(i64, [i64; 4])] = &[
    (4, [1, 1, 1, 3]),
    (7, [1, 1, 1, 6]),
    (5, [1, 1, 2, 3]),
    (8, [1, 1, 2, 6]),
    (10, [1, 1, 2, 9]),
    (6, [1, 1, 3, 3]),
    (9, [1, 1, 3, 6]),
    (16, [1, 1, 4, 15]),
    (10, [1, 1, 5, 9]),
    (12, [1, 1, 6, 6]),
    (12, [1, 2, 3, 9]),
    (18, [1, 2, 9, 9]),
    (14, [1, 2, 7, 12]),
    (15, [1, 5, 6, 9]),
];

/// The surfaces of the toric example table, in table order.
pub fn example_models() -> Vec<Model> {
    let mut out: Vec<Model> = TORIC_ROWS
        .iter()
        .map(|(w, acts)| {
            let actions = acts.iter().map(|a| a.parse().expect("built-in action")).collect();
            Model::Toric(ToricSpec::new(**w, actions).expect("built-in weights"))
        })
        .collect();
    out.extend(
        HYPERSURFACE_ROWS
            .iter()
            .map(|&(d, w)| Model::Hypersurface(HypersurfaceSpec::new(w, d).expect("built-in hypersurface"))),
    );
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleRow {
    pub model: Model,
    pub report: SurfaceReport,
    pub verdict: ScreenVerdict,
}

pub fn example_table() -> Result<Vec<ExampleRow>> {
    use rayon::prelude::*;
    example_models()
        .into_par_iter()
        .map(|model| {
            let report = model.analyze()?;
            let verdict = msd_screen(&report.k2, &report.sing)?;
            Ok(ExampleRow { model, report, verdict })
        })
        .collect()
}
