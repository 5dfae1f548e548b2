//! Cyclic and dihedral quotient singularities of index at most three.
//!
//! Chains are stored with negative self-intersections, the way they appear on
//! the resolution; Hirzebruch–Jung coefficients `b_i` are their absolute values.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::linalg;
use crate::{q, Error, Result, Q};

/// Expands `n/q` as `b_1 - 1/(b_2 - 1/(...))` with all `b_i >= 2`.
pub fn hj_expand(n: i64, q: i64) -> Result<Vec<i64>> {
    if !(0 < q && q < n) || n.gcd(&q) != 1 {
        return Err(Error::Precondition(format!("need 0 < q < n and gcd(n,q) = 1, got ({n},{q})")));
    }
    let (mut a, mut b) = (n, q);
    let mut out = Vec::new();
    while b != 0 {
        // ceiling division keeps every remainder in (-b, 0]
        let c = (a + b - 1) / b;
        out.push(c);
        let r = c * b - a;
        a = b;
        b = r;
    }
    Ok(out)
}

/// Inverse of [`hj_expand`].
pub fn hj_value(bs: &[i64]) -> Result<(i64, i64)> {
    if bs.is_empty() {
        return Err(Error::Precondition("empty continued fraction".into()));
    }
    if let Some(b) = bs.iter().find(|&&b| b < 2) {
        return Err(Error::Precondition(format!("continued fraction entry {b} < 2")));
    }
    // n/q = b_1 - q'/n' where n'/q' is the tail
    let (mut n, mut q) = (1i64, 0i64);
    for &b in bs.iter().rev() {
        let next = b.checked_mul(n).and_then(|x| x.checked_sub(q)).ok_or(Error::Overflow("hj_value"))?;
        q = n;
        n = next;
    }
    Ok((n, q))
}

/// Normalized type `1/n'(1, q)` of the group generated by
/// `diag(ζ_n^{w1}, ζ_n^{w2})`. Returns `(1, 0)` for the trivial group.
pub fn cyclic_from_weights(n: i64, w: (i64, i64)) -> Result<(i64, i64)> {
    if n <= 0 {
        return Err(Error::Precondition(format!("group order {n} must be positive")));
    }
    let (w1, w2) = (w.0.rem_euclid(n), w.1.rem_euclid(n));
    let g = n.gcd(&w1).gcd(&w2);
    let m = n / g;
    let (w1, w2) = (w1 / g, w2 / g);
    if m == 1 {
        return Ok((1, 0));
    }
    for (name, x) in [("first", w1), ("second", w2)] {
        if x.gcd(&m) != 1 {
            return Err(Error::NotSmall(format!(
                "1/{m}({w1},{w2}): an element of order {} fixes the {name} axis pointwise",
                m / x.gcd(&m)
            )));
        }
    }
    let inv = mod_inverse(w1, m).ok_or_else(|| Error::Precondition(format!("{w1} not invertible mod {m}")))?;
    Ok((m, (w2 * inv).rem_euclid(m)))
}

pub(crate) fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Chain,
    Fork,
}

/// Weighted dual graph of a configuration of smooth rational curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionGraph {
    pub self_ints: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
}

impl ResolutionGraph {
    pub fn chain(self_ints: &[i64]) -> Self {
        let edges = (1..self_ints.len()).map(|i| (i - 1, i)).collect();
        ResolutionGraph { self_ints: self_ints.to_vec(), edges }
    }

    /// A fork; each arm is listed from the center outwards.
    pub fn fork(center: i64, arms: &[Vec<i64>]) -> Self {
        let mut g = ResolutionGraph { self_ints: vec![center], edges: vec![] };
        for arm in arms {
            let mut prev = 0;
            for &s in arm {
                g.self_ints.push(s);
                let v = g.self_ints.len() - 1;
                g.edges.push((prev, v));
                prev = v;
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.self_ints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.self_ints.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    /// Intersection matrix: self-intersections on the diagonal, 1 per edge.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &s) in self.self_ints.iter().enumerate() {
            m[i][i] = s;
        }
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            m[b][a] += 1;
        }
        m
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
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

    /// Induced subgraph on `vs`, vertices renumbered in the given order.
    pub fn subgraph(&self, vs: &[usize]) -> ResolutionGraph {
        let pos: BTreeMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((*pos.get(&a)?, *pos.get(&b)?)))
            .collect();
        ResolutionGraph { self_ints: vs.iter().map(|&v| self.self_ints[v]).collect(), edges }
    }

    /// Checks the graph is a chain or a fork and says which.
    pub fn shape(&self) -> Result<Shape> {
        let n = self.len();
        if n == 0 {
            return Err(Error::Precondition("empty graph".into()));
        }
        if self.edges.len() != n - 1 || self.components().len() != 1 {
            return Err(Error::Precondition("graph is not a tree".into()));
        }
        if self.edges.iter().any(|&(a, b)| a == b) {
            return Err(Error::Precondition("loop in graph".into()));
        }
        let degs: Vec<usize> = (0..n).map(|v| self.neighbors(v).len()).collect();
        match (degs.iter().filter(|&&d| d == 3).count(), degs.iter().any(|&d| d > 3)) {
            (0, false) => Ok(Shape::Chain),
            (1, false) => Ok(Shape::Fork),
            _ => Err(Error::Precondition("graph has more than one branch point".into())),
        }
    }

    /// Vertices of a chain in path order, starting from the end with the
    /// smaller index.
    pub fn chain_order(&self) -> Result<Vec<usize>> {
        if self.shape()? != Shape::Chain {
            return Err(Error::Precondition("not a chain".into()));
        }
        if self.len() == 1 {
            return Ok(vec![0]);
        }
        let start = (0..self.len()).find(|&v| self.neighbors(v).len() == 1).unwrap();
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = self.neighbors(cur).iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        Ok(order)
    }

    /// Center of a fork and its arms, each listed from the center outwards.
    pub fn fork_arms(&self) -> Result<(usize, Vec<Vec<usize>>)> {
        if self.shape()? != Shape::Fork {
            return Err(Error::Precondition("not a fork".into()));
        }
        let center = (0..self.len()).find(|&v| self.neighbors(v).len() == 3).unwrap();
        let arms = self
            .neighbors(center)
            .into_iter()
            .map(|first| {
                let mut arm = vec![first];
                let mut prev = center;
                let mut cur = first;
                while let Some(&next) = self.neighbors(cur).iter().find(|&&w| w != prev) {
                    arm.push(next);
                    prev = cur;
                    cur = next;
                }
                arm
            })
            .collect();
        Ok((center, arms))
    }

    /// Canonical serialization, invariant under reversal and arm permutation.
    pub fn canonical(&self) -> Result<String> {
        Ok(match self.shape()? {
            Shape::Chain => {
                let seq: Vec<i64> = self.chain_order()?.iter().map(|&v| self.self_ints[v]).collect();
                format!("chain:{}", crate::lattice::format_vec(&canonical_chain(&seq)))
            }
            Shape::Fork => {
                let (c, arms) = self.fork_arms()?;
                let mut arms: Vec<Vec<i64>> =
                    arms.iter().map(|a| a.iter().map(|&v| self.self_ints[v]).collect()).collect();
                arms.sort_by(|a, b| cmp_seq(a, b));
                let inner: Vec<String> = arms.iter().map(|a| crate::lattice::format_vec(a)).collect();
                format!("fork:center={};arms=[{}]", self.self_ints[c], inner.join(","))
            }
        })
    }

    /// Vertices in the order [`canonical`](Self::canonical) lists them; a fork
    /// lists its center first.
    pub fn canonical_order(&self) -> Result<Vec<usize>> {
        Ok(match self.shape()? {
            Shape::Chain => {
                let mut ord = self.chain_order()?;
                let seq: Vec<i64> = ord.iter().map(|&v| self.self_ints[v]).collect();
                if canonical_chain(&seq) != seq {
                    ord.reverse();
                }
                ord
            }
            Shape::Fork => {
                let (c, mut arms) = self.fork_arms()?;
                let ints = |a: &Vec<usize>| -> Vec<i64> { a.iter().map(|&v| self.self_ints[v]).collect() };
                arms.sort_by(|a, b| cmp_seq(&ints(a), &ints(b)));
                std::iter::once(c).chain(arms.into_iter().flatten()).collect()
            }
        })
    }

    pub fn same_as(&self, other: &ResolutionGraph) -> bool {
        matches!((self.canonical(), other.canonical()), (Ok(a), Ok(b)) if a == b)
    }
}

// shorter first, then by absolute values
fn cmp_seq(a: &[i64], b: &[i64]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        let aa: Vec<i64> = a.iter().map(|x| x.abs()).collect();
        let bb: Vec<i64> = b.iter().map(|x| x.abs()).collect();
        aa.cmp(&bb)
    })
}

fn canonical_chain(seq: &[i64]) -> Vec<i64> {
    let rev: Vec<i64> = seq.iter().rev().copied().collect();
    if cmp_seq(&rev, seq) == Ordering::Less {
        rev
    } else {
        seq.to_vec()
    }
}

impl FromStr for ResolutionGraph {
    type Err = Error;

    /// Parses `chain:[-2,-5]` or `fork:center=-3;arms=[[-2],[-2],[-2]]`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("malformed graph `{s}`"));
        if let Some(body) = t.strip_prefix("chain:") {
            let v = crate::lattice::parse_vec(body)?;
            if v.is_empty() {
                return Err(bad());
            }
            return Ok(ResolutionGraph::chain(&v));
        }
        let body = t.strip_prefix("fork:").ok_or_else(bad)?;
        let (c, arms) = body.split_once(";arms=").ok_or_else(bad)?;
        let center: i64 = c.strip_prefix("center=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let inner = arms.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(bad)?;
        let arms: Vec<Vec<i64>> = inner
            .split("],[")
            .map(crate::lattice::parse_vec)
            .collect::<Result<_>>()?;
        if arms.len() != 3 || arms.iter().any(|a| a.is_empty()) {
            return Err(bad());
        }
        Ok(ResolutionGraph::fork(center, &arms))
    }
}

impl fmt::Display for ResolutionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.canonical() {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "graph{:?}", self.self_ints),
        }
    }
}

/// Solves `Σ_j a_j (E_i·E_j) = -2 - E_i²` on any graph, (−1)-curves included.
pub fn adjunction_discrepancies(g: &ResolutionGraph) -> Result<Vec<Q>> {
    let m = linalg::to_rational(&g.intersection_matrix());
    let rhs: Vec<Q> = g.self_ints.iter().map(|&s| Q::from_integer((-2 - s).into())).collect();
    linalg::solve(&m, &rhs).ok_or(Error::Degenerate)
}

/// Discrepancies on a minimal resolution graph.
pub fn discrepancies(g: &ResolutionGraph) -> Result<Vec<Q>> {
    g.shape()?;
    if let Some(s) = g.self_ints.iter().find(|&&s| s > -2) {
        return Err(Error::Precondition(format!(
            "curve with self-intersection {s} on a minimal resolution graph"
        )));
    }
    adjunction_discrepancies(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

/// `A_l(α,β)`, `A_1(α)`, `D_l(α)` or a plain ADE tag when `marks` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub family: Family,
    pub l: usize,
    pub marks: Vec<u8>,
}

impl Symbol {
    pub fn rdp(family: Family, l: usize) -> Self {
        Symbol { family, l, marks: vec![] }
    }

    pub fn a(l: usize, alpha: u8, beta: u8) -> Self {
        let (x, y) = if alpha <= beta { (alpha, beta) } else { (beta, alpha) };
        Symbol { family: Family::A, l, marks: if l == 1 { vec![x.max(y)] } else { vec![x, y] } }
    }

    pub fn a1(alpha: u8) -> Self {
        Symbol { family: Family::A, l: 1, marks: vec![alpha] }
    }

    pub fn d(l: usize, alpha: u8) -> Self {
        Symbol { family: Family::D, l, marks: vec![alpha] }
    }

    pub fn is_rdp(&self) -> bool {
        self.marks.is_empty()
    }

    pub fn index(&self) -> u64 {
        if self.is_rdp() {
            1
        } else {
            3
        }
    }

    /// Milnor-lattice rank contribution, i.e. the number of exceptional curves.
    pub fn rank(&self) -> usize {
        self.l
    }

    fn sort_key(&self) -> (bool, Family, usize, Vec<u8>) {
        (self.is_rdp(), self.family, self.l, self.marks.clone())
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{fam}{}", self.l)?;
        if !self.marks.is_empty() {
            let m: Vec<String> = self.marks.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", m.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    /// Accepts `A3(1,2)`, `A_3(1,2)`, `D4(1)`, `A1(2)`, `A5`, `E6`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("malformed singularity symbol `{s}`"));
        let mut chars = t.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let (num, marks) = match rest.split_once('(') {
            Some((n, m)) => (n, Some(m.strip_suffix(')').ok_or_else(bad)?)),
            None => (rest, None),
        };
        let l: usize = num.parse().map_err(|_| bad())?;
        let marks: Vec<u8> = match marks {
            None => vec![],
            Some(m) => m.split(',').map(|x| x.parse::<u8>().map_err(|_| bad())).collect::<Result<_>>()?,
        };
        if marks.iter().any(|&m| m != 1 && m != 2) {
            return Err(bad());
        }
        let sym = match (family, marks.len()) {
            (_, 0) => Symbol::rdp(family, l),
            (Family::A, 1) if l == 1 => Symbol::a1(marks[0]),
            (Family::A, 2) if l >= 2 => Symbol::a(l, marks[0], marks[1]),
            (Family::D, 1) => Symbol::d(l, marks[0]),
            _ => return Err(bad()),
        };
        let ok = match (sym.family, sym.is_rdp()) {
            (Family::A, _) => l >= 1,
            (Family::D, _) => l >= 4,
            (Family::E, true) => (6..=8).contains(&l),
            (Family::E, false) => false,
        };
        if !ok {
            return Err(bad());
        }
        Ok(sym)
    }
}

/// Sorted multiset of singularities.
pub fn sort_symbols(mut v: Vec<Symbol>) -> Vec<Symbol> {
    v.sort();
    v
}

/// `2A1(1)+A5`; the empty multiset is `smooth`.
pub fn format_symbols(v: &[Symbol]) -> String {
    if v.is_empty() {
        return "smooth".into();
    }
    let sorted = sort_symbols(v.to_vec());
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = (i..sorted.len()).find(|&j| sorted[j] != sorted[i]).unwrap_or(sorted.len());
        let k = j - i;
        parts.push(if k > 1 { format!("{k}{}", sorted[i]) } else { sorted[i].to_string() });
        i = j;
    }
    parts.join("+")
}

/// Inverse of [`format_symbols`].
pub fn parse_symbols(s: &str) -> Result<Vec<Symbol>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() || t == "smooth" {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    // split on '+' outside parentheses
    let mut depth = 0;
    let mut start = 0;
    let bytes: Vec<char> = t.chars().collect();
    let mut pieces = Vec::new();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                pieces.push(bytes[start..i].iter().collect::<String>());
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(bytes[start..].iter().collect::<String>());
    for p in pieces {
        let digits: String = p.chars().take_while(|c| c.is_ascii_digit()).collect();
        let k: usize = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| Error::Parse(p.clone()))? };
        let sym: Symbol = p[digits.len()..].parse()?;
        out.extend(std::iter::repeat_n(sym, k));
    }
    Ok(sort_symbols(out))
}

/// Minimal resolution graph of a symbol, as drawn in the index-three table
/// (or the Dynkin diagram for rational double points).
pub fn minimal_graph(s: &Symbol) -> Result<ResolutionGraph> {
    let missing = || Error::Precondition(format!("{s} is not a log terminal singularity of index at most three"));
    let twos = |k: usize| vec![-2i64; k];
    let l = s.l;
    Ok(match (s.family, s.marks.as_slice()) {
        (Family::A, []) if l >= 1 => ResolutionGraph::chain(&twos(l)),
        (Family::D, []) if l >= 4 => ResolutionGraph::fork(-2, &[vec![-2], vec![-2], twos(l - 3)]),
        (Family::E, []) if (6..=8).contains(&l) => ResolutionGraph::fork(-2, &[vec![-2], twos(2), twos(l - 4)]),
        (Family::A, [1]) if l == 1 => ResolutionGraph::chain(&[-3]),
        (Family::A, [2]) if l == 1 => ResolutionGraph::chain(&[-6]),
        (Family::A, [1, 1]) if l == 3 => ResolutionGraph::chain(&[-2, -4, -2]),
        (Family::A, [1, 1]) if l >= 4 => {
            let mut c = vec![-2, -3];
            c.extend(twos(l - 4));
            c.extend([-3, -2]);
            ResolutionGraph::chain(&c)
        }
        (Family::A, [1, 2]) if l == 2 => ResolutionGraph::chain(&[-2, -5]),
        (Family::A, [1, 2]) if l >= 3 => {
            let mut c = vec![-2, -3];
            c.extend(twos(l - 3));
            c.push(-4);
            ResolutionGraph::chain(&c)
        }
        (Family::A, [2, 2]) if l >= 2 => {
            let mut c = vec![-4];
            c.extend(twos(l - 2));
            c.push(-4);
            ResolutionGraph::chain(&c)
        }
        (Family::D, [1]) if l == 4 => ResolutionGraph::fork(-3, &[vec![-2], vec![-2], vec![-2]]),
        (Family::D, [1]) if l >= 5 => {
            let mut arm = twos(l - 5);
            arm.extend([-3, -2]);
            ResolutionGraph::fork(-2, &[vec![-2], vec![-2], arm])
        }
        (Family::D, [2]) if l >= 4 => {
            let mut arm = twos(l - 4);
            arm.push(-4);
            ResolutionGraph::fork(-2, &[vec![-2], vec![-2], arm])
        }
        _ => return Err(missing()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub symbol: Symbol,
    pub index: u64,
}

/// Reads off the singularity symbol from a minimal resolution graph.
pub fn classify_graph(g: &ResolutionGraph) -> Result<Classification> {
    let shape = g.shape()?;
    let a = discrepancies(g)?;
    let index = linalg::lcm_denominators(&a).to_u64().ok_or(Error::Overflow("index"))?;
    let unclassified = || Error::Unclassified(index);
    let third = |x: &Q| -> Option<u8> {
        if *x == q(-1, 3) {
            Some(1)
        } else if *x == q(-2, 3) {
            Some(2)
        } else {
            None
        }
    };
    let symbol = match (index, shape) {
        (1, Shape::Chain) => Symbol::rdp(Family::A, g.len()),
        (1, Shape::Fork) => {
            let (_, arms) = g.fork_arms()?;
            let mut lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
            lens.sort_unstable();
            match lens.as_slice() {
                [1, 1, k] => Symbol::rdp(Family::D, k + 3),
                [1, 2, k @ 2..=4] => Symbol::rdp(Family::E, k + 4),
                _ => return Err(unclassified()),
            }
        }
        (3, Shape::Chain) => {
            let order = g.chain_order()?;
            let first = third(&a[order[0]]).ok_or_else(unclassified)?;
            let last = third(&a[*order.last().unwrap()]).ok_or_else(unclassified)?;
            if g.len() == 1 {
                Symbol::a1(first)
            } else {
                Symbol::a(g.len(), first, last)
            }
        }
        (3, Shape::Fork) => {
            let (_, arms) = g.fork_arms()?;
            let longest = arms.iter().map(|a| a.len()).max().unwrap();
            let alpha = arms
                .iter()
                .filter(|arm| arm.len() == longest)
                .map(|arm| third(&a[arm[arm.len() - 1]]).ok_or_else(unclassified))
                .collect::<Result<Vec<u8>>>()?
                .into_iter()
                .max()
                .unwrap();
            Symbol::d(g.len(), alpha)
        }
        _ => return Err(unclassified()),
    };
    // the discrepancies only fix the ends; the whole graph must be the catalog one
    match minimal_graph(&symbol) {
        Ok(expected) if expected.same_as(g) => Ok(Classification { symbol, index }),
        _ => Err(unclassified()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupDatum {
    /// `C_{n,q}`, generated by `diag(ζ_n, ζ_n^q)`.
    Cyclic { n: i64, q: i64 },
    /// `G_n`; `n = 0` is the exceptional group with a (−3) center.
    Dihedral { n: i64 },
}

impl GroupDatum {
    /// Resolution graph read off from the group.
    pub fn graph(&self) -> Result<ResolutionGraph> {
        match *self {
            GroupDatum::Cyclic { n, q } => {
                let bs = hj_expand(n, q)?;
                Ok(ResolutionGraph::chain(&bs.iter().map(|b| -b).collect::<Vec<_>>()))
            }
            GroupDatum::Dihedral { n: 0 } => Ok(ResolutionGraph::fork(-3, &[vec![-2], vec![-2], vec![-2]])),
            GroupDatum::Dihedral { n } => {
                if n < 4 || n % 3 == 0 {
                    return Err(Error::Precondition(format!("G_{n} requires n >= 4 and n not divisible by 3")));
                }
                let arm: Vec<i64> = hj_expand(n, n - 3)?.iter().map(|b| -b).collect();
                Ok(ResolutionGraph::fork(-2, &[vec![-2], vec![-2], arm]))
            }
        }
    }

    /// Whether `(1+q)/n ∈ (1/3)ℤ ∖ ℤ` (cyclic groups only).
    pub fn cyclic_index_three(&self) -> Option<bool> {
        match *self {
            GroupDatum::Cyclic { n, q: qq } => {
                let x = q(1 + qq, n);
                Some(!x.is_integer() && (x * Q::from_integer(3.into())).is_integer())
            }
            GroupDatum::Dihedral { .. } => None,
        }
    }
}

impl fmt::Display for GroupDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDatum::Cyclic { n, q } => write!(f, "C({n},{q})"),
            GroupDatum::Dihedral { n } => write!(f, "G({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRow {
    pub group: GroupDatum,
    pub graph: ResolutionGraph,
    pub discrepancies: Vec<Q>,
    pub symbol: Symbol,
    /// Row instantiated from a parametrized family.
    pub from_family: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub rows: Vec<CatalogRow>,
    /// Family instances that the side conditions exclude.
    pub flags: Vec<String>,
}

/// Group label and symbol for each row of the index-three table up to `l_max`.
pub fn catalog_entries(l_max: usize) -> (Vec<(GroupDatum, Symbol, bool)>, Vec<String>) {
    use GroupDatum::*;
    let mut rows = vec![
        (Cyclic { n: 3, q: 1 }, Symbol::a1(1), false),
        (Cyclic { n: 6, q: 1 }, Symbol::a1(2), false),
        (Cyclic { n: 9, q: 5 }, Symbol::a(2, 1, 2), false),
        (Cyclic { n: 15, q: 4 }, Symbol::a(2, 2, 2), false),
        (Cyclic { n: 12, q: 7 }, Symbol::a(3, 1, 1), false),
        (Cyclic { n: 18, q: 11 }, Symbol::a(3, 1, 2), false),
        (Cyclic { n: 24, q: 7 }, Symbol::a(3, 2, 2), false),
        (Dihedral { n: 0 }, Symbol::d(4, 1), false),
        (Dihedral { n: 4 }, Symbol::d(4, 2), false),
    ];
    let mut flags = Vec::new();
    for l in 4..=l_max {
        let li = l as i64;
        rows.push((Cyclic { n: 9 * li - 15, q: 6 * li - 11 }, Symbol::a(l, 1, 1), true));
        rows.push((Cyclic { n: 9 * li - 9, q: 6 * li - 7 }, Symbol::a(l, 1, 2), true));
        rows.push((Cyclic { n: 9 * li - 3, q: 3 * li - 2 }, Symbol::a(l, 2, 2), true));
        for (alpha, n) in [(1u8, 3 * li - 10), (2u8, 3 * li - 8)] {
            let sym = Symbol::d(l, alpha);
            if n < 4 || n % 3 == 0 {
                flags.push(format!("{sym}: family label G_{n} violates n >= 4, n not divisible by 3; explicit row kept"));
            } else if rows.iter().any(|(_, s, _)| *s == sym) {
                let explicit = rows.iter().find(|(_, s, _)| *s == sym).unwrap().0;
                if explicit != (Dihedral { n }) {
                    flags.push(format!("{sym}: family label G_{n} differs from explicit row {explicit}"));
                }
            } else {
                rows.push((Dihedral { n }, sym, true));
            }
        }
    }
    (rows, flags)
}

/// The index-three table with families instantiated for `4 <= l <= l_max`.
pub fn catalog_table(l_max: usize) -> Result<Catalog> {
    if l_max < 4 {
        return Err(Error::Precondition("l_max must be at least 4".into()));
    }
    let (entries, flags) = catalog_entries(l_max);
    let rows = entries
        .into_iter()
        .map(|(group, symbol, from_family)| {
            let graph = group.graph()?;
            let discrepancies = discrepancies(&graph)?;
            let c = classify_graph(&graph)?;
            if c.symbol != symbol || c.index != 3 {
                return Err(Error::Inconsistent(format!("{group} classifies as {}, table says {symbol}", c.symbol)));
            }
            Ok(CatalogRow { group, graph, discrepancies, symbol, from_family })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Catalog { rows, flags })
}

/// Every index-three symbol with at most `l_max` exceptional curves.
pub fn index_three_symbols(l_max: usize) -> Vec<Symbol> {
    let mut out = vec![Symbol::a1(1), Symbol::a1(2)];
    for l in 2..=l_max {
        for (x, y) in [(1, 1), (1, 2), (2, 2)] {
            let s = Symbol::a(l, x, y);
            if minimal_graph(&s).is_ok() {
                out.push(s);
            }
        }
    }
    for l in 4..=l_max {
        out.push(Symbol::d(l, 1));
        out.push(Symbol::d(l, 2));
    }
    out
}

/// Blows up the intersection point of the curves joined by `edge`.
pub fn blow_up(g: &ResolutionGraph, edge: (usize, usize)) -> Result<ResolutionGraph> {
    let (a, b) = edge;
    let pos = g
        .edges
        .iter()
        .position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
        .ok_or_else(|| Error::Precondition(format!("no edge {a}-{b}")))?;
    let mut out = g.clone();
    out.edges.remove(pos);
    out.self_ints[a] -= 1;
    out.self_ints[b] -= 1;
    out.self_ints.push(-1);
    let v = out.self_ints.len() - 1;
    out.edges.push((a, v));
    out.edges.push((v, b));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightResolution {
    pub graph: ResolutionGraph,
    pub discrepancies: Vec<Q>,
}

impl RightResolution {
    /// Self-intersections along a chain starting from the first curve of the
    /// minimal resolution; canonical serialization for forks.
    pub fn render(&self) -> String {
        match self.graph.chain_order() {
            Ok(order) => {
                let v: Vec<String> = order.iter().map(|&i| self.graph.self_ints[i].to_string()).collect();
                v.join(" ")
            }
            Err(_) => self.graph.to_string(),
        }
    }
}

/// Blows up the minimal resolution until every curve is a (−1), (−3) or
/// (−6)-curve: once between neighbours with discrepancies −1/3 and −2/3, and
/// three times (the point, then both new points) between two −2/3 curves.
pub fn right_resolution(s: &Symbol) -> Result<RightResolution> {
    if s.index() != 3 {
        return Err(Error::Precondition(format!("{s} does not have index three")));
    }
    let min = minimal_graph(s)?;
    let a = discrepancies(&min)?;
    let mut g = min.clone();
    for &(i, j) in &min.edges {
        let sum = &a[i] + &a[j];
        if sum == q(-1, 1) {
            g = blow_up(&g, (i, j))?;
        } else if sum == q(-4, 3) {
            g = blow_up(&g, (i, j))?;
            let v = g.len() - 1;
            g = blow_up(&g, (i, v))?;
            g = blow_up(&g, (v, j))?;
        } else {
            return Err(Error::Inconsistent(format!("unexpected discrepancy pair on an edge of {s}")));
        }
    }
    let disc = adjunction_discrepancies(&g)?;
    for (s_int, d) in g.self_ints.iter().zip(&disc) {
        let expected = match s_int {
            -1 => q(0, 1),
            -3 => q(-1, 3),
            -6 => q(-2, 3),
            _ => return Err(Error::Inconsistent(format!("right resolution of {s} has a ({s_int})-curve"))),
        };
        if *d != expected {
            return Err(Error::Inconsistent(format!("right resolution of {s}: discrepancy {d} on a ({s_int})-curve")));
        }
    }
    Ok(RightResolution { graph: g, discrepancies: disc })
}

/// Contracts (−1)-curves until none is left.
pub fn contract_minus_one_curves(g: &ResolutionGraph) -> Result<ResolutionGraph> {
    let mut g = g.clone();
    while let Some(v) = g.self_ints.iter().position(|&s| s == -1) {
        let nb = g.neighbors(v);
        if nb.len() > 2 {
            return Err(Error::Precondition("(-1)-curve meeting three curves".into()));
        }
        for &w in &nb {
            g.self_ints[w] += 1;
        }
        if let [x, y] = nb[..] {
            if g.has_edge(x, y) {
                return Err(Error::Precondition("contraction creates a cycle".into()));
            }
            g.edges.push((x, y));
        }
        let keep: Vec<usize> = (0..g.len()).filter(|&w| w != v).collect();
        g = g.subgraph(&keep);
    }
    if let Some(s) = g.self_ints.iter().find(|&&s| s >= 0) {
        return Err(Error::Precondition(format!("contraction produced a curve with self-intersection {s}")));
    }
    Ok(g)
}

/// Sum of the entries, for quick sanity checks.
pub fn total(xs: &[Q]) -> Q {
    xs.iter().fold(Q::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hj_small() {
        assert_eq!(hj_expand(7, 3).unwrap(), vec![3, 2, 2]);
        assert_eq!(hj_value(&[3, 2, 2]).unwrap(), (7, 3));
        assert!(hj_expand(6, 3).is_err());
        assert!(hj_value(&[2, 1]).is_err());
    }

    #[test]
    fn weights_not_small() {
        assert!(matches!(cyclic_from_weights(4, (1, 2)), Err(Error::NotSmall(_))));
        assert_eq!(cyclic_from_weights(6, (2, 4)).unwrap(), (3, 2));
        assert_eq!(cyclic_from_weights(5, (0, 0)).unwrap(), (1, 0));
    }

    #[test]
    fn symbols_parse_and_print() {
        let s: Symbol = "A_3(2,1)".parse().unwrap();
        assert_eq!(s.to_string(), "A3(1,2)");
        let v = parse_symbols("A5+2A1(1)").unwrap();
        assert_eq!(format_symbols(&v), "2A1(1)+A5");
        assert!("A1(3)".parse::<Symbol>().is_err());
        assert!("E9".parse::<Symbol>().is_err());
        assert_eq!(format_symbols(&[]), "smooth");
    }

    #[test]
    fn graph_serialization_round_trip() {
        for s in ["chain:[-2,-5]", "fork:center=-3;arms=[[-2],[-2],[-2]]", "fork:center=-2;arms=[[-2],[-2],[-3,-2]]"] {
            let g: ResolutionGraph = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        let g: ResolutionGraph = "chain:[-5,-2]".parse().unwrap();
        assert_eq!(g.to_string(), "chain:[-2,-5]");
    }

    #[test]
    fn rdp_and_unclassified() {
        let e8 = minimal_graph(&Symbol::rdp(Family::E, 8)).unwrap();
        assert_eq!(classify_graph(&e8).unwrap().symbol.to_string(), "E8");
        let d5 = minimal_graph(&Symbol::rdp(Family::D, 5)).unwrap();
        assert_eq!(classify_graph(&d5).unwrap().symbol.to_string(), "D5");
        assert_eq!(classify_graph(&ResolutionGraph::chain(&[-3, -3])), Err(Error::Unclassified(2)));
        assert_eq!(classify_graph(&ResolutionGraph::chain(&[-4])), Err(Error::Unclassified(2)));
    }

    #[test]
    fn contraction() {
        let g = ResolutionGraph::chain(&[-6, -1, -3]);
        assert_eq!(contract_minus_one_curves(&g).unwrap().to_string(), "chain:[-2,-5]");
        assert!(contract_minus_one_curves(&ResolutionGraph::chain(&[-1, -1])).is_err());
    }
}
