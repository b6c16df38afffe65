use std::collections::BTreeMap;
use std::fmt;

use num_rational::{BigRational, Rational64};

use super::Coeff;
use num_traits::{One, Zero};

use crate::root_data::WeightVector;

/// The creation operator `h_a(-n)` with `h_a` the coroot of `alpha_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub index: usize,
    pub n: u32,
}

/// A monomial in the creation operators, as sorted `(mode, exponent)` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Oscillators {
    parts: Vec<(Mode, u32)>,
}

impl Oscillators {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_parts(parts: impl IntoIterator<Item = (Mode, u32)>) -> Self {
        let mut map: BTreeMap<Mode, u32> = BTreeMap::new();
        for (m, e) in parts {
            assert!(m.n >= 1, "creation modes are negative");
            *map.entry(m).or_insert(0) += e;
        }
        Self { parts: map.into_iter().filter(|&(_, e)| e > 0).collect() }
    }

    pub fn parts(&self) -> &[(Mode, u32)] {
        &self.parts
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    /// `sum n * exponent`.
    pub fn degree(&self) -> u32 {
        self.parts.iter().map(|(m, e)| m.n * e).sum()
    }

    pub fn exponent(&self, mode: Mode) -> u32 {
        self.parts
            .binary_search_by(|(m, _)| m.cmp(&mode))
            .map_or(0, |k| self.parts[k].1)
    }

    pub fn mul(&self, other: &Oscillators) -> Oscillators {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut a, mut b) = (0, 0);
        while a < self.parts.len() || b < other.parts.len() {
            let next = match (self.parts.get(a), other.parts.get(b)) {
                (Some(&(ma, ea)), Some(&(mb, eb))) => {
                    if ma == mb {
                        a += 1;
                        b += 1;
                        (ma, ea + eb)
                    } else if ma < mb {
                        a += 1;
                        (ma, ea)
                    } else {
                        b += 1;
                        (mb, eb)
                    }
                }
                (Some(&p), None) => {
                    a += 1;
                    p
                }
                (None, Some(&p)) => {
                    b += 1;
                    p
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        Oscillators { parts: out }
    }

    pub fn times(&self, mode: Mode) -> Oscillators {
        self.mul(&Oscillators { parts: vec![(mode, 1)] })
    }

    /// Removes one factor `mode`, returning the old exponent, if present.
    pub fn without_one(&self, mode: Mode) -> Option<(Oscillators, u32)> {
        let k = self.parts.binary_search_by(|(m, _)| m.cmp(&mode)).ok()?;
        let e = self.parts[k].1;
        let mut parts = self.parts.clone();
        if e == 1 {
            parts.remove(k);
        } else {
            parts[k].1 -= 1;
        }
        Some((Oscillators { parts }, e))
    }
}

impl fmt::Display for Oscillators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (m, e)) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "h{}(-{})", m.index, m.n)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A basis vector `u (x) e^lambda` of `M(1) (x) C[P]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    pub lattice: WeightVector,
    pub osc: Oscillators,
}

impl FockState {
    pub fn new(osc: Oscillators, lattice: WeightVector) -> Self {
        Self { lattice, osc }
    }

    pub fn vacuum_at(lattice: WeightVector) -> Self {
        Self { lattice, osc: Oscillators::one() }
    }

    /// `-(oscillator degree) - <lambda, lambda>/2`.
    pub fn degree(&self) -> Rational64 {
        -Rational64::from_integer(self.osc.degree() as i64) - self.lattice.pair(&self.lattice) / 2
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.osc.is_one() {
            write!(f, "{} ", self.osc)?;
        }
        write!(f, "e^{}", self.lattice)
    }
}

/// A finite rational combination of Fock states; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<FockState, Coeff>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(state: FockState) -> Self {
        Self { terms: BTreeMap::from([(state, Coeff::one())]) }
    }

    /// `1 (x) e^lambda`.
    pub fn lattice(lambda: WeightVector) -> Self {
        Self::basis(FockState::vacuum_at(lambda))
    }

    pub fn terms(&self) -> &BTreeMap<FockState, Coeff> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<FockState, Coeff> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, state: &FockState) -> Coeff {
        self.terms.get(state).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, state: FockState, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(state) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (s, x) in &other.terms {
            self.add_term(s.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> FockVector {
        if c.is_zero() {
            return FockVector::zero();
        }
        Self { terms: self.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect() }
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &Coeff::one());
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Coeff::one());
        out
    }

    /// Distinct lattice points in the support.
    pub fn lattice_points(&self) -> Vec<WeightVector> {
        let mut v: Vec<WeightVector> = self.terms.keys().map(|s| s.lattice.clone()).collect();
        v.dedup();
        v
    }

    /// Returns `c` with `self = c * other`, if such a nonzero scalar exists.
    pub fn ratio_to(&self, other: &FockVector) -> Option<BigRational> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<Coeff> = None;
        for ((s, a), (t, b)) in self.terms.iter().zip(other.terms.iter()) {
            if s != t {
                return None;
            }
            let r = a / b;
            match &ratio {
                None => ratio = Some(r),
                Some(q) if *q == r => {}
                Some(_) => return None,
            }
        }
        ratio.map(|r| r.to_big())
    }
}

impl FromIterator<(FockState, Coeff)> for FockVector {
    fn from_iter<I: IntoIterator<Item = (FockState, Coeff)>>(iter: I) -> Self {
        let mut v = FockVector::zero();
        for (s, c) in iter {
            v.add_term(s, c);
        }
        v
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {s}")?;
        }
        Ok(())
    }
}
