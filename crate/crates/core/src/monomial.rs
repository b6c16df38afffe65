//! Colored partitions: monomials in the commuting variables `x_gamma(-n)`.
//!
//! A monomial is kept as a sorted sequence of variables, smallest first, so the
//! greatest factor is the last one. Text form is `(r,s,-n)` factors joined by `*`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{Color, GradationConfig, WeightVector};

/// A factor `x_gamma(-depth)`, `depth >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "VariableRepr", try_from = "VariableRepr")]
pub struct Variable {
    pub color: Color,
    pub depth: u32,
}

#[derive(Serialize, Deserialize)]
struct VariableRepr {
    row: usize,
    col: usize,
    depth: u32,
}

impl From<Variable> for VariableRepr {
    fn from(v: Variable) -> Self {
        Self { row: v.color.row, col: v.color.col, depth: v.depth }
    }
}

impl TryFrom<VariableRepr> for Variable {
    type Error = String;
    fn try_from(r: VariableRepr) -> std::result::Result<Self, String> {
        if r.depth == 0 {
            return Err("depth must be positive".into());
        }
        Ok(Variable::new(Color::new(r.row, r.col), r.depth))
    }
}

impl Variable {
    pub const fn new(color: Color, depth: u32) -> Self {
        Self { color, depth }
    }
}

/// Degrees first (a deeper variable is smaller), then colors.
impl Ord for Variable {
    fn cmp(&self, other: &Self) -> Ordering {
        other.depth.cmp(&self.depth).then(self.color.cmp(&other.color))
    }
}

impl PartialOrd for Variable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},-{})", self.color.row, self.color.col, self.depth)
    }
}

/// A finite multiset of variables in canonical ascending order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    #[serde(deserialize_with = "deserialize_sorted")]
    factors: Vec<Variable>,
}

fn deserialize_sorted<'de, D>(d: D) -> std::result::Result<Vec<Variable>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let mut v = Vec::<Variable>::deserialize(d)?;
    v.sort();
    Ok(v)
}

impl Monomial {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut factors: Vec<Variable>) -> Self {
        factors.sort();
        Self { factors }
    }

    /// Builds from factors already sorted ascending.
    pub(crate) fn from_sorted(factors: Vec<Variable>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0] <= w[1]));
        Self { factors }
    }

    /// Ascending order: the greatest factor is last.
    pub fn factors(&self) -> &[Variable] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn validate(&self, cfg: &GradationConfig) -> Result<()> {
        self.factors.iter().try_for_each(|v| cfg.check_color(v.color))
    }

    /// `-sum of depths`.
    pub fn degree(&self) -> i64 {
        -self.factors.iter().map(|v| v.depth as i64).sum::<i64>()
    }

    pub fn weight(&self, cfg: &GradationConfig) -> WeightVector {
        self.factors.iter().fold(WeightVector::zero(cfg.ell()), |acc, v| {
            acc + cfg.color_weight(v.color)
        })
    }

    pub fn degree_and_weight(&self, cfg: &GradationConfig) -> (i64, WeightVector) {
        (self.degree(), self.weight(cfg))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.factors.iter().peekable(), other.factors.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x <= y {
                        out.push(*a.next().unwrap());
                    } else {
                        out.push(*b.next().unwrap());
                    }
                }
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(*b.next().unwrap()),
                (None, None) => break,
            }
        }
        Monomial::from_sorted(out)
    }

    /// Decreases every depth by `k`; `k > 0` raises the degree.
    pub fn shift(&self, k: i64) -> Result<Monomial> {
        let factors = self
            .factors
            .iter()
            .map(|v| {
                let d = v.depth as i64 - k;
                if d < 1 {
                    Err(Error::Domain(format!("shifting {v} by {k} leaves no negative mode")))
                } else {
                    Ok(Variable::new(v.color, d as u32))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_sorted(factors))
    }

    /// Factors of the given depth, ascending.
    pub fn slice(&self, depth: u32) -> Monomial {
        Monomial::from_sorted(self.factors.iter().copied().filter(|v| v.depth == depth).collect())
    }

    /// Factors deeper than `depth`, ascending.
    pub fn deeper_than(&self, depth: u32) -> Monomial {
        Monomial::from_sorted(self.factors.iter().copied().filter(|v| v.depth > depth).collect())
    }

    pub fn max_depth(&self) -> u32 {
        self.factors.first().map_or(0, |v| v.depth)
    }

    pub fn shape(&self) -> Shape {
        let mut counts = BTreeMap::new();
        for v in &self.factors {
            *counts.entry(v.depth).or_insert(0usize) += 1;
        }
        Shape { counts }
    }

    /// Exponent-map view `(color, depth) -> multiplicity`.
    pub fn exponents(&self) -> BTreeMap<(Color, u32), usize> {
        let mut out = BTreeMap::new();
        for v in &self.factors {
            *out.entry((v.color, v.depth)).or_insert(0usize) += 1;
        }
        out
    }
}

/// Every monomial of degree `-n` over all colors, in descending order.
///
/// Fails with a resource error once more than `cap` monomials have been produced.
pub fn monomials_of_degree(cfg: &GradationConfig, n: u32, cap: usize) -> Result<Vec<Monomial>> {
    fn rec(
        vars: &[Variable],
        start: usize,
        rem: u32,
        cur: &mut Vec<Variable>,
        out: &mut Vec<Monomial>,
        cap: usize,
    ) -> Result<()> {
        if rem == 0 {
            if out.len() == cap {
                return Err(Error::Resource(format!("more than {cap} monomials")));
            }
            out.push(Monomial::from_sorted(cur.iter().rev().copied().collect()));
            return Ok(());
        }
        for k in start..vars.len() {
            let d = vars[k].depth;
            if d <= rem && (rem - d == 0 || rem - d >= d) {
                cur.push(vars[k]);
                rec(vars, k, rem - d, cur, out, cap)?;
                cur.pop();
            }
        }
        Ok(())
    }
    // Greatest variable first, so factors are chosen in descending order.
    let vars: Vec<Variable> = (1..=n.max(1))
        .flat_map(|d| cfg.colors().into_iter().map(move |c| Variable::new(c, d)))
        .collect();
    let mut out = Vec::new();
    rec(&vars, 0, n, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

/// Monomial order: greatest factors compared first; a top-aligned proper prefix is smaller.
pub fn compare(a: &Monomial, b: &Monomial) -> Ordering {
    let mut ia = a.factors.iter().rev();
    let mut ib = b.factors.iter().rev();
    loop {
        match (ia.next(), ib.next()) {
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            },
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (None, None) => return Ordering::Equal,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, v) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Monomial> {
        Parser { src: s.as_bytes(), pos: 0 }.monomial()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse { position: start, message: "number too large".into() })
    }

    fn variable(&mut self) -> Result<Variable> {
        self.expect(b'(')?;
        let r = self.number()?;
        self.expect(b',')?;
        let s = self.number()?;
        self.expect(b',')?;
        self.expect(b'-')?;
        let at = self.pos;
        let n = self.number()?;
        if n == 0 || n > u32::MAX as u64 {
            return Err(Error::Parse { position: at, message: "depth must be a positive mode".into() });
        }
        self.expect(b')')?;
        Ok(Variable::new(Color::new(r as usize, s as usize), n as u32))
    }

    fn monomial(&mut self) -> Result<Monomial> {
        match self.peek() {
            None => return Ok(Monomial::empty()),
            Some(b'1') => {
                self.pos += 1;
                return match self.peek() {
                    None => Ok(Monomial::empty()),
                    Some(_) => self.err("unexpected input after '1'"),
                };
            }
            _ => {}
        }
        let mut factors = vec![self.variable()?];
        while let Some(c) = self.peek() {
            if c != b'*' {
                return self.err(format!("expected '*', found '{}'", c as char));
            }
            self.pos += 1;
            factors.push(self.variable()?);
        }
        Ok(Monomial::new(factors))
    }
}

/// Depth profile `j -> number of factors of depth j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub counts: BTreeMap<u32, usize>,
}

/// Outcome of comparing two shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeOrdering {
    Less,
    Equal,
    Greater,
    /// Neither branch of the definition applies in either direction.
    Incomparable,
}

impl Shape {
    pub fn count(&self, j: u32) -> usize {
        self.counts.get(&j).copied().unwrap_or(0)
    }

    fn nonzero_beyond(&self, j: u32) -> bool {
        self.counts.range(j + 1..).any(|(_, &c)| c > 0)
    }

    /// `self < other` by the two-branch definition.
    pub fn precedes(&self, other: &Shape) -> bool {
        let keys: std::collections::BTreeSet<u32> =
            self.counts.keys().chain(other.counts.keys()).copied().collect();
        let Some(j0) = keys.into_iter().find(|&j| self.count(j) != other.count(j)) else {
            return false;
        };
        let (a, b) = (self.count(j0), other.count(j0));
        (a < b && self.nonzero_beyond(j0)) || (a > b && !self.nonzero_beyond(j0))
    }
}

/// Applies the definition verbatim: `a < b` is tested first, then `b < a`.
pub fn compare_shapes(a: &Shape, b: &Shape) -> ShapeOrdering {
    if a == b {
        ShapeOrdering::Equal
    } else if a.precedes(b) {
        ShapeOrdering::Less
    } else if b.precedes(a) {
        ShapeOrdering::Greater
    } else {
        ShapeOrdering::Incomparable
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(r: usize, s: usize, n: u32) -> Variable {
        Variable::new(Color::new(r, s), n)
    }

    fn mono(v: &[(usize, usize, u32)]) -> Monomial {
        Monomial::new(v.iter().map(|&(r, s, n)| x(r, s, n)).collect())
    }

    #[test]
    fn variable_order_examples() {
        assert!(x(1, 1, 2) < x(1, 1, 1));
        assert!(Color::new(2, 2) < Color::new(1, 3));
        assert!(x(2, 3, 1) < x(1, 2, 1));
    }

    #[test]
    fn prefix_is_smaller() {
        let a = mono(&[(1, 1, 1)]);
        let b = mono(&[(1, 1, 3), (1, 1, 1)]);
        assert_eq!(compare(&a, &b), Ordering::Less);
        assert_eq!(compare(&b, &a), Ordering::Greater);
        assert_eq!(compare(&Monomial::empty(), &a), Ordering::Less);
    }

    #[test]
    fn degree_and_weight_examples() {
        let c1 = GradationConfig::new(1, 1).unwrap();
        assert_eq!(Monomial::empty().degree_and_weight(&c1), (0, WeightVector::zero(1)));
        let (d, w) = mono(&[(1, 1, 3), (1, 1, 1)]).degree_and_weight(&c1);
        assert_eq!((d, w.coords().to_vec()), (-4, vec![4]));
        let c3 = GradationConfig::new(3, 1).unwrap();
        let (d, w) = mono(&[(1, 3, 1)]).degree_and_weight(&c3);
        assert_eq!((d, w.coords().to_vec()), (-1, vec![1, 0, 1]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(mono(&[(1, 1, 2)]).shift(1).unwrap(), mono(&[(1, 1, 1)]));
        assert_eq!(mono(&[(1, 1, 1)]).shift(-3).unwrap(), mono(&[(1, 1, 4)]));
        assert_eq!(Monomial::empty().shift(5).unwrap(), Monomial::empty());
        assert!(matches!(mono(&[(1, 1, 1)]).shift(1), Err(Error::Domain(_))));
    }

    #[test]
    fn text_roundtrip() {
        let m: Monomial = "(1,2,-3) * (1,1,-1)".parse().unwrap();
        assert_eq!(m, mono(&[(1, 2, 3), (1, 1, 1)]));
        assert_eq!(m.to_string(), "(1,2,-3)*(1,1,-1)");
        assert_eq!("1".parse::<Monomial>().unwrap(), Monomial::empty());
        assert_eq!("  ".parse::<Monomial>().unwrap(), Monomial::empty());
        assert_eq!(Monomial::empty().to_string(), "1");
    }

    #[test]
    fn parse_errors_carry_position() {
        match "(1,2,-3)*(1,1,1)".parse::<Monomial>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 14),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("(1,2,-0)".parse::<Monomial>(), Err(Error::Parse { .. })));
        assert!(matches!("(1,2,-3)(1,1,-1)".parse::<Monomial>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_form() {
        let m = mono(&[(1, 1, 2), (1, 2, 1)]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[{"row":1,"col":1,"depth":2},{"row":1,"col":2,"depth":1}]"#);
        let back: Monomial =
            serde_json::from_str(r#"[{"row":1,"col":2,"depth":1},{"row":1,"col":1,"depth":2}]"#).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn shape_examples() {
        let s = |v: &[(u32, usize)]| Shape { counts: v.iter().copied().collect() };
        assert_eq!(compare_shapes(&s(&[(2, 1)]), &s(&[(1, 2)])), ShapeOrdering::Less);
        assert_eq!(compare_shapes(&s(&[(3, 1)]), &s(&[(1, 1), (2, 1)])), ShapeOrdering::Less);
        assert_eq!(compare_shapes(&s(&[(1, 1)]), &s(&[(1, 1)])), ShapeOrdering::Equal);
        assert_eq!(mono(&[(1, 1, 3), (1, 1, 1)]).shape(), s(&[(1, 1), (3, 1)]));
    }

    #[test]
    fn all_monomials_descending() {
        let cfg = GradationConfig::new(2, 1).unwrap();
        let ms = monomials_of_degree(&cfg, 4, usize::MAX).unwrap();
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        // Two-colored partitions of 4.
        assert_eq!(ms.len(), 20);
        assert!(ms.iter().all(|m| m.degree() == -4));
        assert!(matches!(monomials_of_degree(&cfg, 4, 19), Err(Error::Resource(_))));
        assert_eq!(monomials_of_degree(&cfg, 0, 1).unwrap(), vec![Monomial::empty()]);
    }

    #[test]
    fn multiplication_merges() {
        let a = mono(&[(1, 1, 3), (1, 1, 1)]);
        let b = mono(&[(1, 2, 2)]);
        assert_eq!(a.mul(&b), mono(&[(1, 1, 3), (1, 2, 2), (1, 1, 1)]));
        assert_eq!(a.mul(&b), b.mul(&a));
    }
}
