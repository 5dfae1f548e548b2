//! Elliptic fibrations stable under an order-three automorphism of elliptic type.
//!
//! The eleven fixed lattices, the decorated fiber types, enumeration of fiber
//! configurations, classes of section orbits, and the quotient log del Pezzo
//! surfaces with their singularities and Picard numbers.
//!
//! Fiber pictures are consumed as data. Each [`Template`] is the fiber's image on
//! the right resolution `Z_r` of `X/φ`: a fixed (−2)-curve becomes a (−6)-curve,
//! an isolated fixed point a (−3)-curve, a preserved curve through one isolated
//! point a (−1)-curve, and a permuted triple of disjoint (−2)-curves a (−2)-curve.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::lattice::{self, build_lattice, solve_dual, DualVector, Lattice};
use crate::linalg;
use crate::singularity::{classify_graph, contract_minus_one_curves, format_symbols, sort_symbols, ResolutionGraph, Symbol};
use crate::{q, Error, Result, Q};

// ---------------------------------------------------------------------------
// cases

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseId {
    pub number: u8,
    pub jacobian: bool,
}

impl CaseId {
    pub fn new(number: u8) -> Result<Self> {
        if !(1..=11).contains(&number) {
            return Err(Error::Precondition(format!("case must be 1..=11, got {number}")));
        }
        Ok(CaseId { number, jacobian: !matches!(number, 2 | 4 | 6) })
    }

    pub fn all() -> Vec<CaseId> {
        (1..=11).map(|n| CaseId::new(n).unwrap()).collect()
    }

    pub fn lattice_expr(&self) -> &'static str {
        CASES[self.number as usize - 1].1
    }

    pub fn lattice(&self) -> Result<Lattice> {
        build_lattice(self.lattice_expr())
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedLocus {
    pub g: i64,
    pub n_rational: i64,
    pub n_points: i64,
}

impl FixedLocus {
    pub fn euler(&self) -> i64 {
        (2 - 2 * self.g) + 2 * self.n_rational + self.n_points
    }
}

impl fmt::Display for FixedLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({})", self.g)?;
        if self.n_rational > 0 {
            write!(f, " + {}P1", self.n_rational)?;
        }
        if self.n_points > 0 {
            write!(f, " + {}pt", self.n_points)?;
        }
        Ok(())
    }
}

// (number, fixed lattice, g, rational curves, isolated points)
const CASES: [(u8, &str, i64, i64, i64); 11] = [
    (1, "U", 5, 1, 0),
    (2, "U(3)", 4, 0, 0),
    (3, "U+A2", 4, 1, 1),
    (4, "U(3)+A2", 3, 0, 1),
    (5, "U+A2*2", 3, 1, 2),
    (6, "U(3)+A2*2", 2, 0, 2),
    (7, "U+E6", 3, 2, 3),
    (8, "U+A2*3", 2, 1, 3),
    (9, "U+E8", 3, 3, 4),
    (10, "U+E6+A2", 2, 2, 4),
    (11, "U+E8+A2", 2, 3, 5),
];

/// Both sides of the topological Lefschetz formula for `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lefschetz {
    pub rank: usize,
    /// `2 + r − (22 − r)/2`
    pub trace_side: Q,
    pub euler: i64,
}

impl Lefschetz {
    pub fn holds(&self) -> bool {
        self.trace_side == Q::from_integer(self.euler.into())
    }
}

pub fn fixed_locus(case: CaseId) -> Result<(FixedLocus, Lefschetz)> {
    let (_, _, g, n_rational, n_points) = CASES[case.number as usize - 1];
    let locus = FixedLocus { g, n_rational, n_points };
    let r = case.lattice()?.rank();
    let ri = r as i64;
    let trace_side = q(2 + ri, 1) - q(22 - ri, 2);
    Ok((locus, Lefschetz { rank: r, trace_side, euler: locus.euler() }))
}

/// `K_Z² = 8(g − 1)/3`.
pub fn k2_of_genus(g: i64) -> Q {
    q(8 * (g - 1), 3)
}

// ---------------------------------------------------------------------------
// fiber variants

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    IIs,
    IVsi,
    IVii,
    I0iii,
    IVsii,
    I0i,
    I0ii,
    IVi,
    II,
}

impl Tag {
    pub const ALL: [Tag; 9] = [Tag::II, Tag::IIs, Tag::IVi, Tag::IVii, Tag::IVsi, Tag::IVsii, Tag::I0i, Tag::I0ii, Tag::I0iii];

    pub fn name(&self) -> &'static str {
        match self {
            Tag::II => "II",
            Tag::IIs => "II*",
            Tag::IVi => "IV-i",
            Tag::IVii => "IV-ii",
            Tag::IVsi => "IV*-i",
            Tag::IVsii => "IV*-ii",
            Tag::I0i => "I0*-i",
            Tag::I0ii => "I0*-ii",
            Tag::I0iii => "I0*-iii",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = Error;

    /// Accepts `IV-ii` as well as `IV-(ii)` and `I_0^*-(iii)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !matches!(c, '(' | ')' | '_' | '^' | ' ')).collect();
        Tag::ALL
            .into_iter()
            .find(|tag| tag.name() == t)
            .ok_or_else(|| Error::Parse(format!("unknown fiber type {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateVertex {
    pub name: &'static str,
    pub self_int: i64,
    /// Meets the image of the genus-g curve.
    pub meets_c: bool,
    /// The vertex of the component hit by the fixed section; on a fibration without
    /// one, that component meets C instead.
    pub zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub vertices: Vec<TemplateVertex>,
    pub edges: Vec<(usize, usize)>,
}

impl Template {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }
}

/// Fiber components seen in `S_X^φ`: preserved components and sums over permuted triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberLattice {
    pub names: Vec<&'static str>,
    pub mult: Vec<i64>,
    pub gram: Vec<Vec<i64>>,
    /// The component met by the fixed section; left out of the basis block.
    pub zero: usize,
    /// `(C, component)` without a fixed section.
    pub c_nonjac: Option<Vec<i64>>,
    /// Coefficients added to `C` to form `C'`.
    pub c_prime: Option<Vec<i64>>,
}

impl FiberLattice {
    /// Components a section orbit can meet: those of multiplicity one.
    pub fn targets(&self) -> Vec<usize> {
        (0..self.names.len()).filter(|&i| self.mult[i] == 1).collect()
    }

    pub fn block(&self) -> Vec<usize> {
        (0..self.names.len()).filter(|&i| i != self.zero).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberVariant {
    pub tag: Tag,
    pub euler: i64,
    pub n_isolated: i64,
    pub n_intermediate: i64,
    pub n_fixed_curves: i64,
    pub permuted_triples: i64,
    /// Never occurs for an automorphism of elliptic type.
    pub excluded: bool,
    /// Cannot occur once the fibration has a fixed section.
    pub excluded_with_section: bool,
    pub template: Option<Template>,
    pub components: Option<FiberLattice>,
}

impl FiberVariant {
    /// Fibers whose image lies entirely on curves meeting C.
    pub fn is_light(&self) -> bool {
        self.n_isolated == 0 && self.n_fixed_curves == 0
    }

    pub fn block_rank(&self) -> usize {
        self.components.as_ref().map_or(0, |c| c.names.len() - 1)
    }
}

fn tv(name: &'static str, self_int: i64, meets_c: bool, zero: bool) -> TemplateVertex {
    TemplateVertex { name, self_int, meets_c, zero }
}

fn gram_from_edges(diag: &[i64], edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let n = diag.len();
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = diag[i];
    }
    for &(a, b) in edges {
        g[a][b] += 1;
        g[b][a] += 1;
    }
    g
}

pub fn variant_data(tag: Tag) -> FiberVariant {
    let mut v = FiberVariant {
        tag,
        euler: 0,
        n_isolated: 0,
        n_intermediate: 0,
        n_fixed_curves: 0,
        permuted_triples: 0,
        excluded: false,
        excluded_with_section: false,
        template: None,
        components: None,
    };
    match tag {
        Tag::II => {
            (v.euler, v.n_intermediate) = (2, 2);
            v.template = Some(Template { vertices: vec![tv("F", 0, true, true)], edges: vec![] });
        }
        Tag::IVi => {
            (v.euler, v.n_intermediate, v.permuted_triples) = (4, 1, 1);
            v.excluded_with_section = true;
            // the three lines through the center map to one curve of self-intersection 0
            v.template = Some(Template { vertices: vec![tv("F", 0, true, false)], edges: vec![] });
        }
        Tag::IVii => {
            (v.euler, v.n_isolated, v.n_intermediate) = (4, 1, 3);
            v.template = Some(Template {
                vertices: vec![tv("x", -3, false, false), tv("l1", -1, false, true), tv("l2", -1, true, false), tv("l3", -1, true, false)],
                edges: vec![(0, 1), (0, 2), (0, 3)],
            });
            v.components = Some(FiberLattice {
                names: vec!["l1", "l2", "l3"],
                mult: vec![1, 1, 1],
                gram: vec![vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]],
                zero: 0,
                c_nonjac: Some(vec![1, 1, 1]),
                c_prime: Some(vec![0, 1, 1]),
            });
        }
        Tag::I0i => {
            (v.euler, v.n_isolated, v.n_fixed_curves) = (6, 4, 1);
            v.excluded = true;
        }
        Tag::I0ii => {
            (v.euler, v.n_isolated, v.n_fixed_curves, v.permuted_triples) = (6, 1, 1, 1);
            v.excluded = true;
        }
        Tag::I0iii => {
            (v.euler, v.n_isolated, v.n_intermediate, v.permuted_triples) = (6, 1, 2, 1);
            // m double, n simple preserved, L the permuted simple components
            v.template = Some(Template {
                vertices: vec![tv("x", -3, false, false), tv("m", -1, true, false), tv("n", -1, false, true), tv("L", -2, false, false)],
                edges: vec![(0, 1), (0, 2), (1, 3)],
            });
            v.components = Some(FiberLattice {
                names: vec!["m", "n", "L"],
                mult: vec![2, 1, 1],
                gram: vec![vec![-2, 1, 3], vec![1, -2, 0], vec![3, 0, -6]],
                zero: 1,
                c_nonjac: Some(vec![1, 1, 0]),
                c_prime: Some(vec![2, 0, 1]),
            });
        }
        Tag::IVsi => {
            (v.euler, v.n_isolated, v.n_intermediate, v.n_fixed_curves) = (8, 3, 3, 1);
            v.template = Some(Template {
                vertices: vec![
                    tv("T", -6, false, false),
                    tv("M1", -1, false, false),
                    tv("M2", -1, false, false),
                    tv("M3", -1, false, false),
                    tv("x1", -3, false, false),
                    tv("x2", -3, false, false),
                    tv("x3", -3, false, false),
                    tv("N1", -1, false, true),
                    tv("N2", -1, true, false),
                    tv("N3", -1, true, false),
                ],
                edges: vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 8), (6, 9)],
            });
            let edges = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)];
            v.components = Some(FiberLattice {
                names: vec!["T", "M1", "M2", "M3", "N1", "N2", "N3"],
                mult: vec![3, 2, 2, 2, 1, 1, 1],
                gram: gram_from_edges(&[-2; 7], &edges),
                zero: 4,
                c_nonjac: None,
                c_prime: None,
            });
        }
        Tag::IVsii => {
            (v.euler, v.n_isolated, v.n_intermediate, v.permuted_triples) = (8, 1, 1, 1);
            v.excluded_with_section = true;
            // m triple, L the permuted doubles, N the permuted simples
            v.template = Some(Template {
                vertices: vec![tv("m", -1, true, false), tv("x", -3, false, false), tv("L", -2, false, false), tv("N", -2, false, false)],
                edges: vec![(0, 1), (0, 2), (2, 3)],
            });
            v.components = Some(FiberLattice {
                names: vec!["m", "L", "N"],
                mult: vec![3, 2, 1],
                gram: vec![vec![-2, 3, 0], vec![3, -6, 3], vec![0, 3, -6]],
                zero: 2,
                c_nonjac: Some(vec![1, 0, 0]),
                c_prime: Some(vec![2, 1, 0]),
            });
        }
        Tag::IIs => {
            (v.euler, v.n_isolated, v.n_intermediate, v.n_fixed_curves) = (10, 4, 2, 2);
            v.template = Some(Template {
                vertices: vec![
                    tv("A", -1, true, false),
                    tv("x1", -3, false, false),
                    tv("B", -1, false, false),
                    tv("T1", -6, false, false),
                    tv("C1", -1, false, false),
                    tv("x2", -3, false, false),
                    tv("C2", -1, false, false),
                    tv("x3", -3, false, false),
                    tv("D", -1, false, false),
                    tv("T2", -6, false, false),
                    tv("G", -1, false, false),
                    tv("x4", -3, false, false),
                    tv("H", -1, false, true),
                ],
                edges: vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7), (7, 8), (8, 9), (9, 10), (10, 11), (11, 12)],
            });
            // A B T1 C1 C2 D T2 G H
            let edges = [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8)];
            v.components = Some(FiberLattice {
                names: vec!["A", "B", "T1", "C1", "C2", "D", "T2", "G", "H"],
                mult: vec![2, 4, 6, 3, 5, 4, 3, 2, 1],
                gram: gram_from_edges(&[-2; 9], &edges),
                zero: 8,
                c_nonjac: None,
                c_prime: None,
            });
        }
    }
    v
}

// ---------------------------------------------------------------------------
// configurations

/// The irreducible-image fibers of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rest {
    /// Exactly this many type II fibers.
    Fixed { ii: u32 },
    /// `x·II + y·IV-i` with `x + 2y = c`.
    Family { c: u32 },
}

impl Rest {
    pub fn solutions(&self) -> Vec<(u32, u32)> {
        match *self {
            Rest::Fixed { ii } => vec![(ii, 0)],
            Rest::Family { c } => (0..=c / 2).map(|y| (c - 2 * y, y)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberConfig {
    pub case: CaseId,
    pub label: String,
    /// Fibers containing isolated points or fixed curves, in a fixed order; the
    /// order numbers components in section classes (`l2^1`, `m^2`).
    pub fibers: Vec<Tag>,
    pub rest: Rest,
}

fn group_tags(tags: &[Tag]) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tags.len() {
        let j = (i..tags.len()).find(|&j| tags[j] != tags[i]).unwrap_or(tags.len());
        out.push(if j - i == 1 { tags[i].to_string() } else { format!("{}*{}", j - i, tags[i]) });
        i = j;
    }
    out
}

impl FiberConfig {
    /// `Sing(f)` with `x·II + y·IV-i` spelled out symbolically for families.
    pub fn sing_f(&self) -> String {
        let mut parts = group_tags(&self.fibers);
        match self.rest {
            Rest::Fixed { ii } if ii > 0 => parts.push(format!("{ii}*II")),
            Rest::Fixed { .. } => {}
            Rest::Family { .. } => {
                parts.push("x*II".into());
                parts.push("y*IV-i".into());
            }
        }
        parts.join("+")
    }

    pub fn condition(&self) -> Option<String> {
        match self.rest {
            Rest::Family { c } => Some(format!("x+2y={c}")),
            Rest::Fixed { .. } => None,
        }
    }

    /// Every fiber, one multiset per solution of the family condition.
    pub fn expanded(&self) -> Vec<Vec<Tag>> {
        self.rest
            .solutions()
            .into_iter()
            .map(|(x, y)| {
                let mut v = self.fibers.clone();
                v.extend(std::iter::repeat_n(Tag::II, x as usize));
                v.extend(std::iter::repeat_n(Tag::IVi, y as usize));
                v
            })
            .collect()
    }

    /// Euler number and fixed-locus budgets, checked for every expansion.
    pub fn check_budgets(&self) -> Result<()> {
        let (locus, _) = fixed_locus(self.case)?;
        for fibers in self.expanded() {
            let data: Vec<FiberVariant> = fibers.iter().map(|&t| variant_data(t)).collect();
            let euler: i64 = data.iter().map(|v| v.euler).sum();
            let iso: i64 = data.iter().map(|v| v.n_isolated).sum();
            let fixed: i64 = data.iter().map(|v| v.n_fixed_curves).sum::<i64>() + i64::from(self.case.jacobian);
            if euler != 24 || iso != locus.n_points || fixed != locus.n_rational {
                return Err(Error::Inconsistent(format!(
                    "{}: euler {euler}, isolated {iso}, fixed curves {fixed}",
                    self.sing_f()
                )));
            }
            if data.iter().any(|v| v.excluded || (self.case.jacobian && v.excluded_with_section)) {
                return Err(Error::Inconsistent(format!("{}: excluded fiber type", self.sing_f())));
            }
        }
        let rank = 2 + self.fibers.iter().map(|&t| variant_data(t).block_rank()).sum::<usize>();
        if rank != self.case.lattice()?.rank() {
            return Err(Error::Inconsistent(format!("{}: rank {rank}", self.sing_f())));
        }
        Ok(())
    }

    /// Parses `IV-ii+10*II` or `I0*-iii+IV-ii+x*II+y*IV-i` (also `·` for `*`).
    pub fn parse(case: CaseId, s: &str) -> Result<FiberConfig> {
        let s = s.replace('·', "*").replace(' ', "");
        let mut fibers = Vec::new();
        let mut ii = 0u32;
        let mut family = false;
        for term in s.split('+') {
            if term == "x*II" || term == "y*IV-i" || term == "y*IV-(i)" {
                family = true;
                continue;
            }
            let (count, name) = match term.split_once('*') {
                Some((c, n)) if !c.is_empty() && c.chars().all(|ch| ch.is_ascii_digit()) => {
                    (c.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?, n)
                }
                _ => (1, term),
            };
            let tag: Tag = name.parse()?;
            if tag == Tag::II {
                ii += count;
            } else {
                fibers.extend(std::iter::repeat_n(tag, count as usize));
            }
        }
        let used: i64 = fibers.iter().map(|&t| variant_data(t).euler).sum();
        let rest = if family {
            Rest::Family { c: u32::try_from((24 - used) / 2).map_err(|_| Error::Parse(s.clone()))? }
        } else {
            Rest::Fixed { ii }
        };
        Ok(FiberConfig { case, label: case.to_string(), fibers, rest })
    }

    /// Same fibers, ignoring order and label.
    pub fn same_fibers(&self, other: &FiberConfig) -> bool {
        let mut a = self.fibers.clone();
        let mut b = other.fibers.clone();
        a.sort();
        b.sort();
        a == b && self.rest == other.rest && self.case == other.case
    }
}

impl fmt::Display for FiberConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.label, self.sing_f())?;
        if let Some(c) = self.condition() {
            write!(f, " ({c})")?;
        }
        Ok(())
    }
}

fn multisets(items: &[Tag], max: usize) -> Vec<Vec<Tag>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<(Vec<Tag>, usize)> = vec![(vec![], 0)];
    for _ in 0..max {
        let mut next = Vec::new();
        for (set, start) in &frontier {
            for (i, &t) in items.iter().enumerate().skip(*start) {
                let mut s = set.clone();
                s.push(t);
                out.push(s.clone());
                next.push((s, i));
            }
        }
        frontier = next;
    }
    out
}

/// Every fiber configuration allowed by the Euler number and the fixed locus.
///
/// Heavy fibers (those with isolated points or fixed curves) are chosen first;
/// the remainder is type II, or the `x·II + y·IV-i` family without a fixed
/// section. Rows are ordered colexicographically and lettered `a, b, …`.
pub fn enumerate_fibers(case: CaseId) -> Result<Vec<FiberConfig>> {
    let (locus, _) = fixed_locus(case)?;
    let heavy: Vec<Tag> = {
        let mut v: Vec<Tag> = Tag::ALL
            .into_iter()
            .filter(|&t| {
                let d = variant_data(t);
                !d.is_light() && !d.excluded && !(case.jacobian && d.excluded_with_section)
            })
            .collect();
        v.sort();
        v
    };
    let mut found = Vec::new();
    for set in multisets(&heavy, locus.n_points.max(0) as usize) {
        let data: Vec<FiberVariant> = set.iter().map(|&t| variant_data(t)).collect();
        let euler: i64 = data.iter().map(|v| v.euler).sum();
        let iso: i64 = data.iter().map(|v| v.n_isolated).sum();
        let fixed: i64 = data.iter().map(|v| v.n_fixed_curves).sum::<i64>() + i64::from(case.jacobian);
        if iso != locus.n_points || fixed != locus.n_rational || euler > 24 || (24 - euler) % 2 != 0 {
            continue;
        }
        let left = ((24 - euler) / 2) as u32;
        let rest = if case.jacobian { Rest::Fixed { ii: left } } else { Rest::Family { c: left } };
        found.push(FiberConfig { case, label: String::new(), fibers: set, rest });
    }
    found.sort_by(|a, b| a.fibers.iter().rev().cmp(b.fibers.iter().rev()).then(a.fibers.len().cmp(&b.fibers.len())));
    let many = found.len() > 1;
    for (i, c) in found.iter_mut().enumerate() {
        c.label = if many { format!("{}{}", case.number, (b'a' + i as u8) as char) } else { case.to_string() };
        c.check_budgets()?;
    }
    Ok(found)
}

/// Looks up a configuration by label (`5b`) or by position (1-based).
pub fn find_config(case: CaseId, key: &str) -> Result<FiberConfig> {
    let all = enumerate_fibers(case)?;
    if let Some(c) = all.iter().find(|c| c.label == key) {
        return Ok(c.clone());
    }
    let i: usize = key.parse().map_err(|_| Error::Precondition(format!("no configuration {key:?} in case {case}")))?;
    all.get(i.wrapping_sub(1))
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("case {case} has {} configurations", all.len())))
}

// ---------------------------------------------------------------------------
// section classes

/// A class `D = E + φE + φ²E` of a section orbit disjoint from C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionClass {
    pub d: DualVector,
    pub norm: Q,
    /// `(fiber index, component name)` for each heavy fiber.
    pub meets: Vec<(usize, &'static str)>,
    pub expr: String,
    pub meets_text: String,
}

/// Basis of `S_X^φ` adapted to a fibration.
#[derive(Debug, Clone)]
pub struct SectionBasis {
    pub lattice: Lattice,
    /// Intersection form on the generators `C, F, components…` (possibly degenerate).
    pub ambient: Lattice,
    /// Rows: basis vectors written in the ambient generators.
    pub in_ambient: Vec<Vec<i64>>,
    pub ambient_c: usize,
    pub ambient_f: usize,
}

impl SectionBasis {
    pub fn to_ambient(&self, v: &DualVector) -> Vec<Q> {
        let n = self.ambient.rank();
        let mut out = vec![Q::zero(); n];
        for (c, row) in v.coords.iter().zip(&self.in_ambient) {
            for j in 0..n {
                out[j] += Q::new((c * row[j]).into(), v.denom.into());
            }
        }
        out
    }

    pub fn pair_ambient(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, row) in self.ambient.gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if g != 0 {
                    s += &x[i] * &y[j] * Q::from_integer(g.into());
                }
            }
        }
        s
    }

    pub fn pair(&self, a: &DualVector, b: &DualVector) -> Q {
        self.pair_ambient(&self.to_ambient(a), &self.to_ambient(b))
    }

    /// `(D, C)` and `(D, F)` recomputed on the generators.
    pub fn c_and_f(&self, d: &DualVector) -> (Q, Q) {
        let x = self.to_ambient(d);
        let unit = |k: usize| -> Vec<Q> { (0..x.len()).map(|i| Q::from_integer(i64::from(i == k).into())).collect() };
        (self.pair_ambient(&x, &unit(self.ambient_c)), self.pair_ambient(&x, &unit(self.ambient_f)))
    }
}

/// Lower bound on `(D²)` when a fixed section exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// `(D_{U₀})²` for `U₀ = ⟨F, S⟩`.
    pub u0_norm: Q,
    pub u0_part: DualVector,
    /// Smallest `(D_B)²` over the components the orbit may meet, per fiber block.
    pub block_minima: Vec<(String, Q)>,
    pub bound: Q,
}

impl Certificate {
    /// The bound rules out `(D²) = −6`.
    pub fn contradicts(&self) -> bool {
        self.bound > q(-6, 1)
    }
}

#[derive(Debug, Clone)]
pub enum SectionOutcome {
    Classes { basis: SectionBasis, classes: Vec<SectionClass> },
    Impossible(Certificate),
}

fn component_label(name: &str, fiber: usize, n_fibers: usize) -> String {
    if n_fibers > 1 {
        format!("{name}^{}", fiber + 1)
    } else {
        name.to_string()
    }
}

/// `C'-F-2l2^2-l3^2`
pub fn format_combination(d: &DualVector, labels: &[String]) -> String {
    let mut s = String::new();
    for (c, l) in d.coords.iter().zip(labels) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let a = c.abs();
        s.push_str(sign);
        if a != 1 {
            s.push_str(&a.to_string());
        }
        s.push_str(l);
    }
    if s.is_empty() {
        s.push('0');
    }
    if d.denom != 1 {
        s = format!("({s})/{}", d.denom);
    }
    s
}

fn heavy_components(config: &FiberConfig) -> Result<Vec<FiberLattice>> {
    config
        .fibers
        .iter()
        .map(|&t| variant_data(t).components.ok_or_else(|| Error::Unsupported(format!("no component data for {t}"))))
        .collect()
}

fn block_sum(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut g = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                g[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    g
}

fn sub_gram(g: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter().map(|&i| idx.iter().map(|&j| g[i][j]).collect()).collect()
}

/// Section classes for a configuration, or the certificate that none exist.
pub fn section_classes(config: &FiberConfig) -> Result<SectionOutcome> {
    let comps = heavy_components(config)?;
    if config.case.jacobian {
        return jacobian_certificate(config, &comps).map(SectionOutcome::Impossible);
    }
    let (locus, _) = fixed_locus(config.case)?;
    let nf = comps.len();

    // generators: C, F, then every component of every heavy fiber
    let sizes: Vec<usize> = comps.iter().map(|c| c.names.len()).collect();
    let offsets: Vec<usize> = sizes.iter().scan(2, |o, &s| { let r = *o; *o += s; Some(r) }).collect();
    let n = 2 + sizes.iter().sum::<usize>();
    let mut amb = vec![vec![0i64; n]; n];
    amb[0][0] = 2 * locus.g - 2;
    amb[0][1] = 3;
    amb[1][0] = 3;
    let mut amb_labels = vec!["C".to_string(), "F".to_string()];
    for (k, fl) in comps.iter().enumerate() {
        let cm = fl.c_nonjac.as_ref().ok_or_else(|| Error::Unsupported(format!("{} without a fixed section", config.fibers[k])))?;
        for i in 0..fl.names.len() {
            amb_labels.push(component_label(fl.names[i], k, nf));
            amb[0][offsets[k] + i] = cm[i];
            amb[offsets[k] + i][0] = cm[i];
            for j in 0..fl.names.len() {
                amb[offsets[k] + i][offsets[k] + j] = fl.gram[i][j];
            }
        }
    }
    let ambient = Lattice::new("generators", amb, amb_labels.clone())?;

    // basis: C' = C + Σ c_prime·component, F, then each fiber's block
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut cp = vec![0i64; n];
    cp[0] = 1;
    let mut shifted = false;
    for (k, fl) in comps.iter().enumerate() {
        for (i, &c) in fl.c_prime.as_ref().unwrap().iter().enumerate() {
            cp[offsets[k] + i] = c;
            shifted |= c != 0;
        }
    }
    rows.push(cp);
    labels.push(if shifted { "C'".to_string() } else { "C".to_string() });
    let mut f = vec![0i64; n];
    f[1] = 1;
    rows.push(f);
    labels.push("F".into());
    for (k, fl) in comps.iter().enumerate() {
        for i in fl.block() {
            let mut r = vec![0i64; n];
            r[offsets[k] + i] = 1;
            rows.push(r);
            labels.push(component_label(fl.names[i], k, nf));
        }
    }
    let g = linalg::mat_mul(&linalg::mat_mul(&rows, &ambient.gram)?, &linalg::transpose(&rows))?;
    let name = if nf == 0 { "<C,F>".to_string() } else { "<C',F>".to_string() + &"+A2".repeat(nf) };
    let lattice = Lattice::new(name, g, labels.clone())?;
    let basis = SectionBasis { lattice, ambient, in_ambient: rows, ambient_c: 0, ambient_f: 1 };

    let choices: Vec<Vec<usize>> = comps.iter().map(|c| c.targets()).collect();
    let mut classes = Vec::new();
    for pick in product(&choices) {
        // (D, generator): 0 on C, 3 on F and on each component met
        let mut on_amb = vec![0i64; n];
        on_amb[1] = 3;
        for (k, &i) in pick.iter().enumerate() {
            on_amb[offsets[k] + i] = 3;
        }
        let pairings = linalg::mat_vec(&basis.in_ambient, &on_amb)?;
        let sol = solve_dual(&basis.lattice, &pairings)?;
        if sol.norm != q(-6, 1) {
            continue;
        }
        let meets: Vec<(usize, &'static str)> = pick.iter().enumerate().map(|(k, &i)| (k, comps[k].names[i])).collect();
        let meets_text = if meets.is_empty() {
            String::new()
        } else {
            meets.iter().map(|&(k, s)| component_label(s, k, nf)).collect::<Vec<_>>().join(",")
        };
        classes.push(SectionClass {
            expr: format_combination(&sol.vector, &labels),
            d: sol.vector,
            norm: sol.norm,
            meets,
            meets_text,
        });
    }
    Ok(SectionOutcome::Classes { basis, classes })
}

fn product(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    choices.iter().fold(vec![vec![]], |acc, opts| {
        acc.iter()
            .flat_map(|p| {
                opts.iter().map(move |&o| {
                    let mut p = p.clone();
                    p.push(o);
                    p
                })
            })
            .collect()
    })
}

fn jacobian_certificate(config: &FiberConfig, comps: &[FiberLattice]) -> Result<Certificate> {
    let u0 = Lattice::new("U0", vec![vec![0, 1], vec![1, -2]], vec!["F".into(), "S".into()])?;
    let u0_sol = solve_dual(&u0, &[3, 0])?;
    let mut bound = u0_sol.norm.clone();
    let mut block_minima = Vec::new();
    for (k, fl) in comps.iter().enumerate() {
        let block = fl.block();
        let lat = Lattice::from_gram(config.fibers[k].to_string(), sub_gram(&fl.gram, &block))?;
        let mut best: Option<Q> = None;
        for t in fl.targets() {
            let pairings: Vec<i64> = block.iter().map(|&i| if i == t { 3 } else { 0 }).collect();
            let n = solve_dual(&lat, &pairings)?.norm;
            if best.as_ref().is_none_or(|b| n < *b) {
                best = Some(n);
            }
        }
        let best = best.unwrap_or_else(Q::zero);
        bound += &best;
        block_minima.push((config.fibers[k].to_string(), best));
    }
    Ok(Certificate { u0_norm: u0_sol.norm, u0_part: u0_sol.vector, block_minima, bound })
}

/// Gram matrix of `U₀ ⊕ blocks` for a configuration with a fixed section.
pub fn jacobian_basis(config: &FiberConfig) -> Result<Lattice> {
    let comps = heavy_components(config)?;
    let mut blocks = vec![vec![vec![0, 1], vec![1, -2]]];
    let mut labels = vec!["F".to_string(), "S".to_string()];
    for (k, fl) in comps.iter().enumerate() {
        let b = fl.block();
        blocks.push(sub_gram(&fl.gram, &b));
        labels.extend(b.iter().map(|&i| component_label(fl.names[i], k, comps.len())));
    }
    Lattice::new(format!("U0 basis for {}", config.label), block_sum(&blocks), labels)
}

/// All subsets whose classes pair nonnegatively, empty set first.
pub fn compatible_section_sets(basis: &SectionBasis, classes: &[SectionClass]) -> Vec<Vec<usize>> {
    let n = classes.len();
    let ok: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || !basis.pair(&classes[i].d, &classes[j].d).is_negative()).collect())
        .collect();
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |&x| x + 1);
            for j in start..n {
                if s.iter().all(|&i| ok[i][j]) {
                    let mut t = s.clone();
                    t.push(j);
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

// ---------------------------------------------------------------------------
// quotient graph

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveVertex {
    pub label: String,
    pub self_int: i64,
    pub meets_c: bool,
}

/// Curves on `Z_r` relevant to the contraction, with a flag for meeting `C`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CurveGraph {
    pub vertices: Vec<CurveVertex>,
    pub edges: Vec<(usize, usize)>,
}

impl CurveGraph {
    fn add(&mut self, label: String, self_int: i64, meets_c: bool) -> usize {
        self.vertices.push(CurveVertex { label, self_int, meets_c });
        self.vertices.len() - 1
    }

    /// Every vertex treated as disjoint from C.
    pub fn from_resolution(g: &ResolutionGraph) -> CurveGraph {
        CurveGraph {
            vertices: g
                .self_ints
                .iter()
                .enumerate()
                .map(|(i, &s)| CurveVertex { label: format!("v{i}"), self_int: s, meets_c: false })
                .collect(),
            edges: g.edges.clone(),
        }
    }

    /// Connected components of the vertices away from C.
    pub fn away_components(&self) -> Vec<Vec<usize>> {
        let away: Vec<usize> = (0..self.vertices.len()).filter(|&v| !self.vertices[v].meets_c).collect();
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for &s in &away {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &(a, b) in &self.edges {
                    let w = if a == v { b } else if b == v { a } else { continue };
                    if !seen[w] && !self.vertices[w].meets_c {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Display for CurveGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "{} ({}){}", v.label, v.self_int, if v.meets_c { " meets C" } else { "" })?;
        }
        for &(a, b) in &self.edges {
            writeln!(f, "{} -- {}", self.vertices[a].label, self.vertices[b].label)?;
        }
        Ok(())
    }
}

/// Assembles the curves on `Z_r` for a configuration and a compatible set of section orbits.
///
/// Type II and IV-i fibers are left out: their images meet C and carry nothing else.
pub fn quotient_graph(config: &FiberConfig, outcome: &SectionOutcome, chosen: &[usize]) -> Result<CurveGraph> {
    let mut g = CurveGraph::default();
    let nf = config.fibers.len();
    let section = if config.case.jacobian { Some(g.add("S".into(), -6, false)) } else { None };
    let mut index: Vec<Vec<usize>> = Vec::new();
    for (k, &tag) in config.fibers.iter().enumerate() {
        let t = variant_data(tag).template.ok_or_else(|| Error::Unsupported(format!("no template for {tag}")))?;
        let ids: Vec<usize> = t
            .vertices
            .iter()
            .map(|v| {
                let meets_c = v.meets_c || (v.zero && section.is_none());
                g.add(component_label(v.name, k, nf), v.self_int, meets_c)
            })
            .collect();
        for &(a, b) in &t.edges {
            g.edges.push((ids[a], ids[b]));
        }
        if let Some(s) = section {
            for (i, v) in t.vertices.iter().enumerate() {
                if v.zero {
                    g.edges.push((s, ids[i]));
                }
            }
        }
        index.push(ids);
    }
    if chosen.is_empty() {
        return Ok(g);
    }
    let SectionOutcome::Classes { basis, classes } = outcome else {
        return Err(Error::Precondition("no section classes exist for this configuration".into()));
    };
    let mut orbit_ids = Vec::new();
    for (pos, &ci) in chosen.iter().enumerate() {
        let cls = classes.get(ci).ok_or_else(|| Error::Precondition(format!("no section class {ci}")))?;
        for &cj in &chosen[..pos] {
            let p = basis.pair(&cls.d, &classes[cj].d);
            if p.is_negative() {
                return Err(Error::Precondition(format!("section classes {cj} and {ci} pair to {p}")));
            }
        }
        let e = g.add(format!("E{}", pos + 1), -2, false);
        for &(k, name) in &cls.meets {
            let t = variant_data(config.fibers[k]).template.unwrap();
            let i = t.index_of(name).ok_or_else(|| Error::Inconsistent(format!("no slot {name}")))?;
            g.edges.push((e, index[k][i]));
        }
        orbit_ids.push((ci, e));
    }
    // (D_i, D_j) = 3·(Ē_i, Ē_j) on the quotient
    for a in 0..orbit_ids.len() {
        for b in 0..a {
            let p = basis.pair(&classes[orbit_ids[a].0].d, &classes[orbit_ids[b].0].d);
            if p == q(3, 1) {
                g.edges.push((orbit_ids[b].1, orbit_ids[a].1));
            } else if !p.is_zero() {
                return Err(Error::Unsupported(format!("section orbits pairing to {p}")));
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub symbols: Vec<Symbol>,
    /// Curves of `Z_r` lying in components away from C.
    pub contracted: usize,
}

/// Contracts (−1)-curves away from C and classifies what is left.
pub fn contract_and_classify(g: &CurveGraph) -> Result<Contraction> {
    let mut symbols = Vec::new();
    let mut contracted = 0;
    for comp in g.away_components() {
        contracted += comp.len();
        let pos = |v: usize| comp.iter().position(|&w| w == v);
        let rg = ResolutionGraph {
            self_ints: comp.iter().map(|&v| g.vertices[v].self_int).collect(),
            edges: g.edges.iter().filter_map(|&(a, b)| Some((pos(a)?, pos(b)?))).collect(),
        };
        let min = contract_minus_one_curves(&rg)?;
        if min.is_empty() {
            continue;
        }
        symbols.push(classify_graph(&min)?.symbol);
    }
    Ok(Contraction { symbols: sort_symbols(symbols), contracted })
}

// ---------------------------------------------------------------------------
// catalog

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelPezzoRow {
    pub case: CaseId,
    pub label: String,
    pub sing_f: String,
    /// Section classes present, by expression.
    pub sections: Vec<String>,
    pub sing: Vec<Symbol>,
    pub rho: i64,
    pub k2: Q,
    pub g: i64,
    pub index: u64,
}

impl DelPezzoRow {
    pub fn sing_text(&self) -> String {
        format_symbols(&self.sing)
    }

    pub fn rdp_rank(&self) -> usize {
        self.sing.iter().filter(|s| s.is_rdp()).map(|s| s.rank()).sum()
    }
}

/// `a` in `ρ(Z) = a − rk(RDP)` for cases without a fixed section.
pub fn nonjac_a(case: CaseId) -> Option<i64> {
    match case.number {
        2 => Some(2),
        4 => Some(4),
        6 => Some(6),
        _ => None,
    }
}

/// `ρ(Z_r) = χ(Z_r) − 2` with `χ(Y) = (24 + 2χ(X^φ))/3` and one extra curve per isolated point.
pub fn rho_zr(locus: &FixedLocus) -> Result<i64> {
    let chi_y = 24 + 2 * locus.euler();
    if chi_y % 3 != 0 {
        return Err(Error::Inconsistent(format!("χ(Y) = {chi_y}/3")));
    }
    Ok(chi_y / 3 + locus.n_points - 2)
}

fn rows_for(config: &FiberConfig) -> Result<Vec<DelPezzoRow>> {
    let (locus, _) = fixed_locus(config.case)?;
    let outcome = section_classes(config)?;
    let sets = match &outcome {
        SectionOutcome::Classes { basis, classes } => compatible_section_sets(basis, classes),
        SectionOutcome::Impossible(_) => vec![vec![]],
    };
    let rzr = rho_zr(&locus)?;
    let mut rows = Vec::new();
    for set in sets {
        let g = quotient_graph(config, &outcome, &set)?;
        let c = contract_and_classify(&g)?;
        let rho = rzr - c.contracted as i64;
        let sections = match &outcome {
            SectionOutcome::Classes { classes, .. } => set.iter().map(|&i| classes[i].expr.clone()).collect(),
            SectionOutcome::Impossible(_) => vec![],
        };
        let index = c.symbols.iter().map(|s| s.index()).max().unwrap_or(1);
        let row = DelPezzoRow {
            case: config.case,
            label: config.label.clone(),
            sing_f: config.sing_f(),
            sections,
            sing: c.symbols,
            rho,
            k2: k2_of_genus(locus.g),
            g: locus.g,
            index,
        };
        if let Some(a) = nonjac_a(config.case) {
            let other = a - row.rdp_rank() as i64;
            if other != rho {
                return Err(Error::Inconsistent(format!(
                    "{} {}: ρ = {rho} from Euler numbers but {other} from a − rk",
                    row.label,
                    row.sing_text()
                )));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Every configuration with every compatible set of section orbits.
pub fn catalog_del_pezzo() -> Result<Vec<DelPezzoRow>> {
    let configs: Vec<FiberConfig> =
        CaseId::all().into_iter().map(enumerate_fibers).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    let rows: Vec<Vec<DelPezzoRow>> = configs.par_iter().map(rows_for).collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Distinct `Sing(Z)` per configuration label, in first-seen order.
pub fn distinct_by_label(rows: &[DelPezzoRow]) -> Vec<(String, Vec<String>)> {
    let mut out: Vec<(String, Vec<String>)> = Vec::new();
    for r in rows {
        let s = r.sing_text();
        match out.iter_mut().find(|(l, _)| *l == r.label) {
            Some((_, v)) => {
                if !v.contains(&s) {
                    v.push(s);
                }
            }
            None => out.push((r.label.clone(), vec![s])),
        }
    }
    out
}

/// Counts of singularity combinations, deduplicated within each fixed lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinationCount {
    /// Cases of index three.
    pub index_three: usize,
    /// Adding the `U(3)` case, counting only nonempty combinations.
    pub with_u3_singular: usize,
    /// Adding the `U(3)` case, smooth surface included.
    pub with_u3_all: usize,
    /// Index-three combinations with `ρ = 1`.
    pub rho_one: usize,
}

pub fn combination_count(rows: &[DelPezzoRow]) -> CombinationCount {
    let mut seen: BTreeSet<(u8, String, i64)> = BTreeSet::new();
    for r in rows {
        seen.insert((r.case.number, r.sing_text(), r.rho));
    }
    let idx3 = seen.iter().filter(|(c, _, _)| *c != 2).count();
    let u3: Vec<_> = seen.iter().filter(|(c, _, _)| *c == 2).collect();
    CombinationCount {
        index_three: idx3,
        with_u3_singular: idx3 + u3.iter().filter(|(_, s, _)| s != "smooth").count(),
        with_u3_all: idx3 + u3.len(),
        rho_one: seen.iter().filter(|(c, _, r)| *c != 2 && *r == 1).count(),
    }
}

/// Determinant of the section-class basis.
pub fn basis_det(basis: &SectionBasis) -> num_bigint::BigInt {
    linalg::det(&basis.lattice.gram)
}

pub fn lattice_det(case: CaseId) -> Result<num_bigint::BigInt> {
    Ok(lattice::gram_props(&case.lattice()?)?.det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lefschetz_case_one() {
        let (l, check) = fixed_locus(CaseId::new(1).unwrap()).unwrap();
        assert_eq!(l, FixedLocus { g: 5, n_rational: 1, n_points: 0 });
        assert_eq!(check.euler, -6);
        assert!(check.holds());
    }

    #[test]
    fn case_five_has_three_rows() {
        let rows = enumerate_fibers(CaseId::new(5).unwrap()).unwrap();
        let s: Vec<String> = rows.iter().map(|c| c.sing_f()).collect();
        assert_eq!(s, ["2*IV-ii+8*II", "IV-ii+I0*-iii+7*II", "2*I0*-iii+6*II"]);
    }

    #[test]
    fn case_two_family() {
        let rows = enumerate_fibers(CaseId::new(2).unwrap()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].condition().unwrap(), "x+2y=12");
        assert_eq!(rows[0].rest.solutions().len(), 7);
    }

    #[test]
    fn row_3a_chain() {
        let c = find_config(CaseId::new(3).unwrap(), "3a").unwrap();
        let out = section_classes(&c).unwrap();
        let g = quotient_graph(&c, &out, &[]).unwrap();
        let away = g.away_components();
        assert_eq!(away.len(), 1);
        let r = contract_and_classify(&g).unwrap();
        assert_eq!(format_symbols(&r.symbols), "A2(1,2)");
    }

    #[test]
    fn tag_parsing() {
        assert_eq!("IV-(ii)".parse::<Tag>().unwrap(), Tag::IVii);
        assert_eq!("I_0^*-(iii)".parse::<Tag>().unwrap(), Tag::I0iii);
        assert!("V".parse::<Tag>().is_err());
    }
}
