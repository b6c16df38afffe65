//! Root data of type `A_l` and the grading determined by a fundamental weight.
//!
//! Weights are stored in fundamental-weight coordinates. The invariant form is
//! evaluated through the inverse Cartan matrix, whose entries are
//! `min(i, j) - i*j / (l + 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

/// Rank `l` of `sl(l+1)` together with the index `m` of the grading weight `omega_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradationConfig {
    ell: usize,
    m: usize,
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector {
    coords: Vec<i64>,
}

/// A color `gamma_{rs} = alpha_r + ... + alpha_s`, one cell of the `m x (l-m+1)` rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Color {
    pub row: usize,
    pub col: usize,
}

/// The minimal weights `lambda_1..lambda_m` (rows) and `lambda'_m..lambda'_l` (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialWeights {
    /// `rows[r - 1]` is `lambda_r`.
    pub rows: Vec<WeightVector>,
    /// `cols[s - m]` is `lambda'_s`.
    pub cols: Vec<WeightVector>,
}

impl GradationConfig {
    pub fn new(ell: usize, m: usize) -> Result<Self> {
        if ell == 0 {
            return Err(usage("rank l must be positive"));
        }
        if m == 0 || m > ell {
            return Err(usage(format!("grading index m={m} must satisfy 1 <= m <= l={ell}")));
        }
        Ok(Self { ell, m })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Checks `0 <= i <= l` for a highest-weight index.
    pub fn check_module_index(&self, i: usize) -> Result<()> {
        if i > self.ell {
            return Err(usage(format!("module index i={i} exceeds l={}", self.ell)));
        }
        Ok(())
    }

    pub fn contains(&self, c: Color) -> bool {
        (1..=self.m).contains(&c.row) && (self.m..=self.ell).contains(&c.col)
    }

    pub fn check_color(&self, c: Color) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(usage(format!(
                "color ({},{}) is outside the {}x{} rectangle for l={}, m={}",
                c.row,
                c.col,
                self.m,
                self.ell - self.m + 1,
                self.ell,
                self.m
            )))
        }
    }

    pub fn color_count(&self) -> usize {
        self.m * (self.ell - self.m + 1)
    }

    /// All colors, sorted descending in the color order.
    pub fn colors(&self) -> Vec<Color> {
        let mut out: Vec<Color> = (1..=self.m)
            .flat_map(|r| (self.m..=self.ell).map(move |s| Color::new(r, s)))
            .collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn color_weight(&self, c: Color) -> WeightVector {
        (c.row..=c.col).fold(WeightVector::zero(self.ell), |acc, j| {
            acc + WeightVector::simple_root(self.ell, j)
        })
    }

    /// `omega = omega_m`, the grading weight.
    pub fn omega(&self) -> WeightVector {
        WeightVector::fundamental(self.ell, self.m)
    }

    /// `omega_i`, with `omega_0 = 0`.
    pub fn fundamental(&self, i: usize) -> WeightVector {
        if i == 0 {
            WeightVector::zero(self.ell)
        } else {
            WeightVector::fundamental(self.ell, i)
        }
    }

    /// `lambda_1 = omega_1`, `lambda_r = omega_r - omega_{r-1}`.
    pub fn lambda(&self, r: usize) -> WeightVector {
        assert!((1..=self.m).contains(&r), "row index {r} out of range");
        self.fundamental(r) - self.fundamental(r - 1)
    }

    /// `lambda'_s = omega_s - omega_{s+1}`, `lambda'_l = omega_l`.
    pub fn lambda_prime(&self, s: usize) -> WeightVector {
        assert!((self.m..=self.ell).contains(&s), "column index {s} out of range");
        if s == self.ell {
            self.fundamental(s)
        } else {
            self.fundamental(s) - self.fundamental(s + 1)
        }
    }

    pub fn special_weights(&self) -> SpecialWeights {
        SpecialWeights {
            rows: (1..=self.m).map(|r| self.lambda(r)).collect(),
            cols: (self.m..=self.ell).map(|s| self.lambda_prime(s)).collect(),
        }
    }
}

impl fmt::Display for GradationConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={}, m={}", self.ell, self.m)
    }
}

impl Color {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Distinct colors in a common row or column.
    pub fn shares_line(&self, other: &Color) -> bool {
        self != other && (self.row == other.row || self.col == other.col)
    }
}

/// `gamma_{i'j'} < gamma_{ij}` iff `i' > i`, or `i' = i` and `j' < j`.
impl Ord for Color {
    fn cmp(&self, other: &Self) -> Ordering {
        other.row.cmp(&self.row).then(self.col.cmp(&other.col))
    }
}

impl PartialOrd for Color {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{},{}", self.row, self.col)
    }
}

/// Entry `(i, j)` (1-based) of the inverse Cartan matrix of `A_l`.
pub fn inverse_cartan_entry(ell: usize, i: usize, j: usize) -> Rational64 {
    let n = (ell + 1) as i64;
    let (i, j) = (i as i64, j as i64);
    Rational64::new(i.min(j) * n - i * j, n)
}

/// Cartan matrix of `A_l`, row-major, 0-based storage.
pub fn cartan_matrix(ell: usize) -> Vec<Vec<i64>> {
    (0..ell)
        .map(|i| {
            (0..ell)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

impl WeightVector {
    pub fn zero(ell: usize) -> Self {
        Self { coords: vec![0; ell] }
    }

    pub fn from_coords(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    /// `omega_j` for `1 <= j <= l`.
    pub fn fundamental(ell: usize, j: usize) -> Self {
        assert!((1..=ell).contains(&j), "fundamental weight index {j} out of range");
        let mut coords = vec![0; ell];
        coords[j - 1] = 1;
        Self { coords }
    }

    /// `alpha_j`: the j-th column of the Cartan matrix.
    pub fn simple_root(ell: usize, j: usize) -> Self {
        assert!((1..=ell).contains(&j), "simple root index {j} out of range");
        let mut coords = vec![0; ell];
        coords[j - 1] = 2;
        if j > 1 {
            coords[j - 2] = -1;
        }
        if j < ell {
            coords[j] = -1;
        }
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn ell(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// The invariant form on `P`. Fails if the ranks differ.
    pub fn pairing(&self, other: &WeightVector) -> Result<Rational64> {
        if self.ell() != other.ell() {
            return Err(usage(format!(
                "pairing weights of rank {} and {}",
                self.ell(),
                other.ell()
            )));
        }
        Ok(self.pair(other))
    }

    /// Same as [`pairing`](Self::pairing) for weights already known to share a rank.
    pub fn pair(&self, other: &WeightVector) -> Rational64 {
        debug_assert_eq!(self.ell(), other.ell());
        let ell = self.ell();
        let n = (ell + 1) as i64;
        let mut num = 0i64;
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coords.iter().enumerate() {
                let (ii, jj) = ((i + 1) as i64, (j + 1) as i64);
                num += a * b * (ii.min(jj) * n - ii * jj);
            }
        }
        Rational64::new(num, n)
    }

    /// Index of the class of this weight in `P/Q`, which is cyclic of order `l+1`.
    pub fn q_coset_index(&self) -> usize {
        let n = (self.ell() + 1) as i64;
        let s: i64 = self.coords.iter().enumerate().map(|(j, c)| (j as i64 + 1) * c).sum();
        s.rem_euclid(n) as usize
    }

    pub fn in_root_lattice(&self) -> bool {
        self.q_coset_index() == 0
    }

    /// Coordinates in the simple-root basis, `c_a = <self, omega_a>`.
    pub fn root_coords(&self) -> Vec<Rational64> {
        let ell = self.ell();
        (1..=ell)
            .map(|a| {
                self.coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .fold(Rational64::zero(), |acc, (j, &c)| {
                        acc + inverse_cartan_entry(ell, a, j + 1) * c
                    })
            })
            .collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for WeightVector {
    type Output = WeightVector;
    fn add(mut self, rhs: WeightVector) -> WeightVector {
        self += &rhs;
        self
    }
}

impl<'a> Add<&'a WeightVector> for &'a WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&WeightVector> for WeightVector {
    fn add_assign(&mut self, rhs: &WeightVector) {
        assert_eq!(self.ell(), rhs.ell(), "adding weights of different rank");
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl Sub for WeightVector {
    type Output = WeightVector;
    fn sub(mut self, rhs: WeightVector) -> WeightVector {
        self -= &rhs;
        self
    }
}

impl<'a> Sub<&'a WeightVector> for &'a WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&WeightVector> for WeightVector {
    fn sub_assign(&mut self, rhs: &WeightVector) {
        assert_eq!(self.ell(), rhs.ell(), "subtracting weights of different rank");
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl Neg for WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        self.scale(-1)
    }
}
