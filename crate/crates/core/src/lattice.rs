//! Integer lattices given by Gram matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg;
use crate::{Error, Result, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub name: String,
    pub gram: Vec<Vec<i64>>,
    pub basis_labels: Vec<String>,
}

impl Lattice {
    pub fn new(name: impl Into<String>, gram: Vec<Vec<i64>>, basis_labels: Vec<String>) -> Result<Self> {
        if !linalg::is_symmetric(&gram) {
            return Err(Error::Precondition("gram matrix must be square and symmetric".into()));
        }
        if basis_labels.len() != gram.len() {
            return Err(Error::Precondition("one label per basis vector".into()));
        }
        Ok(Lattice { name: name.into(), gram, basis_labels })
    }

    /// Lattice with labels `b1, b2, ...`.
    pub fn from_gram(name: impl Into<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let labels = (1..=gram.len()).map(|i| format!("b{i}")).collect();
        Self::new(name, gram, labels)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// The bilinear form `(x, y)`.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut s: i128 = 0;
        for (i, row) in self.gram.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            let mut r: i128 = 0;
            for (j, &g) in row.iter().enumerate() {
                r += g as i128 * y[j] as i128;
            }
            s = s.checked_add(x[i] as i128 * r).ok_or(Error::Overflow("pairing"))?;
        }
        i64::try_from(s).map_err(|_| Error::Overflow("pairing"))
    }

    pub fn norm(&self, x: &[i64]) -> Result<i64> {
        self.pair(x, x)
    }

    /// The pairings `(x, b_i)` with every basis vector.
    pub fn pairings(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.check_len(x)?;
        linalg::mat_vec(&self.gram, x)
    }

    /// `L(n)`: the same group with the form multiplied by `n`.
    pub fn twist(&self, n: i64) -> Result<Lattice> {
        if n == 0 {
            return Err(Error::Precondition("twist by zero".into()));
        }
        let gram = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| x.checked_mul(n).ok_or(Error::Overflow("twist"))).collect())
            .collect::<Result<_>>()?;
        Ok(Lattice { name: format!("{}({n})", self.name), gram, basis_labels: self.basis_labels.clone() })
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            gram[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            gram[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        let name = match (self.rank(), other.rank()) {
            (0, _) => other.name.clone(),
            (_, 0) => self.name.clone(),
            _ => format!("{}+{}", self.name, other.name),
        };
        let mut basis_labels = self.basis_labels.clone();
        basis_labels.extend(other.basis_labels.iter().cloned());
        Lattice { name, gram, basis_labels }
    }

    fn check_len(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::Precondition(format!(
                "vector of length {} in lattice of rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.name, self.rank())
    }
}

/// The hyperbolic plane `U`.
pub fn hyperbolic_plane() -> Lattice {
    Lattice { name: "U".into(), gram: vec![vec![0, 1], vec![1, 0]], basis_labels: vec!["e".into(), "f".into()] }
}

/// Negative definite root lattice of an ADE Dynkin diagram.
pub fn root_lattice(kind: char, l: usize) -> Result<Lattice> {
    let edges: Vec<(usize, usize)> = match (kind, l) {
        ('A', l) if l >= 1 => (1..l).map(|i| (i - 1, i)).collect(),
        ('D', l) if l >= 4 => {
            let mut e: Vec<_> = (1..l - 1).map(|i| (i - 1, i)).collect();
            e.push((l - 3, l - 1));
            e
        }
        ('E', l @ 6..=8) => {
            let mut e: Vec<_> = (1..l - 1).map(|i| (i - 1, i)).collect();
            e.push((2, l - 1));
            e
        }
        _ => return Err(Error::UnknownSymbol(format!("{kind}{l}"))),
    };
    let mut gram = vec![vec![0; l]; l];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (i, j) in edges {
        gram[i][j] = 1;
        gram[j][i] = 1;
    }
    let basis_labels = (1..=l).map(|i| format!("r{i}")).collect();
    Ok(Lattice { name: format!("{kind}{l}"), gram, basis_labels })
}

/// Parses a lattice expression such as `U(3)+A2*2` or `U + E8`.
///
/// `term ::= NAME [ "(" int ")" ] [ "*" int ]`, terms joined by `+`,
/// whitespace ignored. Names: `U`, `A<l>`, `D<l>`, `E6`, `E7`, `E8`
/// (an underscore after the letter is allowed).
pub fn build_lattice(expr: &str) -> Result<Lattice> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty lattice expression".into()));
    }
    let mut out = Lattice { name: String::new(), gram: vec![], basis_labels: vec![] };
    let mut written = Vec::new();
    for term in s.split('+') {
        let (block, mult) = parse_term(term)?;
        for k in 0..mult {
            let mut b = block.clone();
            b.basis_labels = b
                .basis_labels
                .iter()
                .map(|x| if mult > 1 { format!("{}.{}:{x}", block.name, k + 1) } else { format!("{}:{x}", block.name) })
                .collect();
            out = out.direct_sum(&b);
        }
        written.push(if mult > 1 { format!("{}*{mult}", block.name) } else { block.name.clone() });
    }
    out.name = written.join("+");
    Ok(out)
}

fn parse_term(term: &str) -> Result<(Lattice, usize)> {
    let bad = || Error::Parse(format!("malformed term `{term}`"));
    let (head, mult) = match term.split_once('*') {
        Some((h, m)) => (h, m.parse::<usize>().map_err(|_| bad())?),
        None => (term, 1),
    };
    if mult == 0 {
        return Err(bad());
    }
    let (name, twist) = match head.split_once('(') {
        Some((n, rest)) => {
            let t = rest.strip_suffix(')').ok_or_else(bad)?;
            (n, Some(t.parse::<i64>().map_err(|_| bad())?))
        }
        None => (head, None),
    };
    if name.is_empty() {
        return Err(bad());
    }
    let mut block = if name == "U" {
        hyperbolic_plane()
    } else {
        let mut chars = name.chars();
        let kind = chars.next().ok_or_else(bad)?;
        if !matches!(kind, 'A' | 'D' | 'E') {
            return Err(Error::UnknownSymbol(name.into()));
        }
        let digits = chars.as_str().trim_start_matches('_');
        let l: usize = digits.parse().map_err(|_| Error::UnknownSymbol(name.into()))?;
        root_lattice(kind, l)?
    };
    if let Some(n) = twist {
        if n <= 0 {
            return Err(Error::Parse(format!("twist must be positive in `{term}`")));
        }
        if n != 1 {
            block = block.twist(n)?;
        }
    }
    Ok((block, mult))
}

/// Invariant factors of `L*/L`: entries > 1, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.invariant_factors.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramProps {
    pub rank: usize,
    pub signature: (usize, usize),
    pub det: BigInt,
    pub discriminant: DiscriminantGroup,
    pub is_3_elementary: bool,
    pub is_hyperbolic: bool,
}

pub fn gram_props(l: &Lattice) -> Result<GramProps> {
    let det = linalg::det(&l.gram);
    if det.is_zero() {
        return Err(Error::Degenerate);
    }
    let (p, m, z) = linalg::signature(&l.gram);
    if z != 0 {
        return Err(Error::Inconsistent("nonzero determinant but null directions".into()));
    }
    let invariant_factors: Vec<BigInt> =
        linalg::smith_diagonal(&l.gram).into_iter().filter(|x| !x.is_one()).collect();
    let three = BigInt::from(3);
    let is_3_elementary = invariant_factors.iter().all(|x| *x == three);
    Ok(GramProps {
        rank: l.rank(),
        signature: (p, m),
        det,
        discriminant: DiscriminantGroup { invariant_factors },
        is_3_elementary,
        is_hyperbolic: p == 1 && l.rank() >= 1,
    })
}

/// Picard–Lefschetz reflection `x ↦ x + (x, f) f` in a root `f` with `(f, f) = -2`.
pub fn reflect(l: &Lattice, f: &[i64], x: &[i64]) -> Result<Vec<i64>> {
    let ff = l.norm(f)?;
    if ff != -2 {
        return Err(Error::Precondition(format!("reflection vector has (f,f) = {ff}, expected -2")));
    }
    let c = l.pair(x, f)?;
    x.iter()
        .zip(f)
        .map(|(&a, &b)| {
            c.checked_mul(b).and_then(|v| v.checked_add(a)).ok_or(Error::Overflow("reflection"))
        })
        .collect()
}

/// A rational lattice vector `coords / denom`, stored in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualVector {
    pub coords: Vec<i64>,
    pub denom: i64,
}

impl DualVector {
    /// Reduces `coords / denom` to lowest terms with a positive denominator.
    pub fn normalized(coords: Vec<i64>, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let g = coords.iter().fold(denom, |g, &c| g.gcd(&c));
        let s = if denom < 0 { -g } else { g };
        Ok(DualVector { coords: coords.iter().map(|c| c / s).collect(), denom: denom / s })
    }

    pub fn is_integral(&self) -> bool {
        self.denom == 1
    }

    pub fn to_rationals(&self) -> Vec<Q> {
        self.coords.iter().map(|&c| Q::new(c.into(), self.denom.into())).collect()
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vec(&self.coords))?;
        if self.denom != 1 {
            write!(f, "/{}", self.denom)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSolution {
    pub vector: DualVector,
    pub norm: Q,
}

/// The unique rational `v` with `(v, b_i) = pairings[i]` for every basis vector.
pub fn solve_dual(l: &Lattice, pairings: &[i64]) -> Result<DualSolution> {
    if pairings.len() != l.rank() {
        return Err(Error::Precondition("one pairing per basis vector".into()));
    }
    let rhs: Vec<Q> = pairings.iter().map(|&p| Q::from_integer(p.into())).collect();
    let x = linalg::solve(&linalg::to_rational(&l.gram), &rhs).ok_or(Error::Degenerate)?;
    let denom = linalg::lcm_denominators(&x);
    let coords = x
        .iter()
        .map(|c| (c * Q::from_integer(denom.clone())).to_integer().to_i64().ok_or(Error::Overflow("solve_dual")))
        .collect::<Result<Vec<_>>>()?;
    let norm: Q = x.iter().zip(&rhs).map(|(a, b)| a * b).sum();
    let denom = denom.to_i64().ok_or(Error::Overflow("solve_dual"))?;
    Ok(DualSolution { vector: DualVector::normalized(coords, denom)?, norm })
}

/// `[a, b, c]`
pub fn format_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parses `[1,-2,0]` (brackets optional).
pub fn parse_vec(s: &str) -> Result<Vec<i64>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.strip_prefix('[').unwrap_or(&t);
    let t = t.strip_suffix(']').unwrap_or(t);
    if t.is_empty() {
        return Ok(vec![]);
    }
    t.split(',')
        .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{x}` in vector"))))
        .collect()
}

/// Whether a nonzero integer vector has gcd 1.
pub fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let l = build_lattice("U(3)+A2").unwrap();
        assert_eq!(
            l.gram,
            vec![vec![0, 3, 0, 0], vec![3, 0, 0, 0], vec![0, 0, -2, 1], vec![0, 0, 1, -2]]
        );
        assert_eq!(l.name, "U(3)+A2");
        let l = build_lattice(" U + A_2 * 2 ").unwrap();
        assert_eq!(l.rank(), 6);
        assert_eq!(l.name, "U+A2*2");
        assert!(matches!(build_lattice("U+F4"), Err(Error::UnknownSymbol(_))));
        assert!(matches!(build_lattice("U(3"), Err(Error::Parse(_))));
        assert!(matches!(build_lattice("U++A2"), Err(Error::Parse(_))));
    }

    #[test]
    fn e8_is_unimodular() {
        let p = gram_props(&build_lattice("E8").unwrap()).unwrap();
        assert_eq!(p.det, BigInt::from(1));
        assert!(p.discriminant.invariant_factors.is_empty());
        assert!(p.is_3_elementary);
        assert_eq!(p.signature, (0, 8));
    }

    #[test]
    fn dual_vector_normalization() {
        let v = DualVector::normalized(vec![2, -4], -6).unwrap();
        assert_eq!(v, DualVector { coords: vec![-1, 2], denom: 3 });
        assert_eq!(v.to_string(), "[-1,2]/3");
    }

    #[test]
    fn degenerate_rejected() {
        let l = Lattice::from_gram("N", vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(gram_props(&l), Err(Error::Degenerate));
        assert_eq!(solve_dual(&l, &[1, 0]).unwrap_err(), Error::Degenerate);
    }
}
