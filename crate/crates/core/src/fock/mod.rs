//! The lattice vertex operator realization `V_P = M(1) (x) C[P]` of all level 1 modules.
//!
//! `Y(e^beta, z) (u (x) e^mu) = epsilon(beta, mu) z^{<beta,mu>} E^-(-beta,z) E^+(-beta,z) u (x) e^{mu+beta}`
//! with `E^+(-beta,z)` acting on `u` by the substitution `h_a(-n) -> h_a(-n) - beta_a z^{-n}`
//! and `E^-(-beta,z) = exp(sum_m beta(-m) z^m / m)`.

mod coeff;
mod cocycle;
mod state;

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

pub use coeff::Coeff;
pub use cocycle::CocycleTable;
pub use state::{FockState, FockVector, Mode, Oscillators};

use crate::error::Result;
use crate::monomial::Monomial;
use crate::root_data::{Color, GradationConfig, WeightVector};

type OscPoly = Vec<(Oscillators, Coeff)>;

fn coeff(r: Rational64) -> Coeff {
    Coeff::new(*r.numer(), *r.denom())
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

/// Evaluator for lattice vertex operators, with memoized expansions.
///
/// The caches depend only on the rank, so one evaluator serves every module `L(Lambda_i)`.
pub struct FockSpace {
    cfg: GradationConfig,
    cocycle: CocycleTable,
    /// `E^-(-beta, z)` coefficients `z^0, z^1, ..`.
    e_minus: HashMap<WeightVector, Vec<Rc<OscPoly>>>,
    /// Coefficient of `z^t` in `E^-(-beta,z) E^+(-beta,z) u`.
    coefficients: HashMap<(WeightVector, i64, Oscillators), Rc<OscPoly>>,
}

impl FockSpace {
    pub fn new(cfg: GradationConfig) -> Result<Self> {
        Ok(Self {
            cfg,
            cocycle: CocycleTable::build(cfg.ell())?,
            e_minus: HashMap::new(),
            coefficients: HashMap::new(),
        })
    }

    pub fn config(&self) -> &GradationConfig {
        &self.cfg
    }

    pub fn cocycle(&self) -> &CocycleTable {
        &self.cocycle
    }

    /// Highest weight vector of `L(Lambda_i)`: `e^{omega_i}`, or `e^0` for `i = 0`.
    pub fn hwv(&self, i: usize) -> FockVector {
        FockVector::lattice(self.cfg.fundamental(i))
    }

    fn e_minus_coefficient(&mut self, beta: &WeightVector, b: u32) -> Rc<OscPoly> {
        let ell = self.cfg.ell();
        let series = self.e_minus.entry(beta.clone()).or_insert_with(|| {
            vec![Rc::new(vec![(Oscillators::one(), Coeff::one())])]
        });
        if (b as usize) < series.len() {
            return series[b as usize].clone();
        }
        let c: Vec<Coeff> = beta.root_coords().into_iter().map(coeff).collect();
        while series.len() <= b as usize {
            let k = series.len() as u32;
            let mut acc: HashMap<Oscillators, Coeff> = HashMap::new();
            for m in 1..=k {
                for (osc, x) in series[(k - m) as usize].iter() {
                    for a in 1..=ell {
                        if c[a - 1].is_zero() {
                            continue;
                        }
                        let next = osc.times(Mode { index: a, n: m });
                        *acc.entry(next).or_insert_with(Coeff::zero) += x * &c[a - 1];
                    }
                }
            }
            let inv = Coeff::new(1, k as i64);
            let mut poly: OscPoly =
                acc.into_iter().filter(|(_, x)| !x.is_zero()).map(|(o, x)| (o, &x * &inv)).collect();
            poly.sort_by(|a, b| a.0.cmp(&b.0));
            series.push(Rc::new(poly));
        }
        series[b as usize].clone()
    }

    /// `E^+(-beta, z) u` as terms `(a, u', c)` meaning `c z^{-a} u'`.
    fn e_plus(beta: &WeightVector, u: &Oscillators) -> Vec<(u32, Oscillators, BigInt)> {
        let mut acc: Vec<(u32, Oscillators, BigInt)> = vec![(0, Oscillators::one(), BigInt::one())];
        for &(mode, e) in u.parts() {
            let ba = beta.coords()[mode.index - 1];
            let mut next = Vec::new();
            let kmax = if ba == 0 { 0 } else { e };
            for (a, osc, c) in &acc {
                for k in 0..=kmax {
                    let coeff = c * binomial(e, k) * BigInt::from(-ba).pow(k);
                    let kept = if e > k {
                        osc.mul(&Oscillators::from_parts([(mode, e - k)]))
                    } else {
                        osc.clone()
                    };
                    next.push((a + mode.n * k, kept, coeff));
                }
            }
            acc = next;
        }
        acc
    }

    /// Coefficient of `z^t` in `E^-(-beta,z) E^+(-beta,z) u`.
    fn osc_coefficient(&mut self, beta: &WeightVector, t: i64, u: &Oscillators) -> Rc<OscPoly> {
        let key = (beta.clone(), t, u.clone());
        if let Some(hit) = self.coefficients.get(&key) {
            return hit.clone();
        }
        let mut acc: HashMap<Oscillators, Coeff> = HashMap::new();
        for (a, rest, c) in Self::e_plus(beta, u) {
            let b = t + a as i64;
            if b < 0 {
                continue;
            }
            let c = Coeff::from(BigRational::from_integer(c));
            for (p, d) in self.e_minus_coefficient(beta, b as u32).iter() {
                *acc.entry(p.mul(&rest)).or_insert_with(Coeff::zero) += d * &c;
            }
        }
        let mut poly: OscPoly = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        poly.sort_by(|a, b| a.0.cmp(&b.0));
        let poly = Rc::new(poly);
        self.coefficients.insert(key, poly.clone());
        poly
    }

    /// Coefficient of `z^t` in `Y(e^beta, z) v`.
    pub fn vertex_coefficient(&mut self, beta: &WeightVector, t: Rational64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (state, c) in v.terms() {
            let shift = t - state.lattice.pair(beta);
            if !shift.is_integer() {
                continue;
            }
            let poly = self.osc_coefficient(beta, shift.to_integer(), &state.osc);
            if poly.is_empty() {
                continue;
            }
            let lattice = &state.lattice + beta;
            let c = if self.cocycle.epsilon(beta, &state.lattice) < 0 { -c.clone() } else { c.clone() };
            for (osc, d) in poly.iter() {
                out.add_term(FockState::new(osc.clone(), lattice.clone()), d * &c);
            }
        }
        out
    }

    /// The mode `x_beta(k)`: coefficient of `z^{-k-1}`.
    pub fn vertex_mode(&mut self, beta: &WeightVector, k: Rational64, v: &FockVector) -> FockVector {
        self.vertex_coefficient(beta, -k - 1, v)
    }

    /// `x_gamma(n)` for a color.
    pub fn x(&mut self, color: Color, n: i64, v: &FockVector) -> FockVector {
        let beta = self.cfg.color_weight(color);
        self.vertex_mode(&beta, Rational64::from_integer(n), v)
    }

    /// `x(pi) v`, the rightmost (greatest) factor acting first.
    pub fn apply_monomial(&mut self, mon: &Monomial, v: &FockVector) -> FockVector {
        let mut out = v.clone();
        for var in mon.factors().iter().rev() {
            if out.is_zero() {
                break;
            }
            out = self.x(var.color, -(var.depth as i64), &out);
        }
        out
    }

    /// `x(pi) v_i`.
    pub fn act_monomial(&mut self, mon: &Monomial, i: usize) -> FockVector {
        let v = self.hwv(i);
        self.apply_monomial(mon, &v)
    }

    /// `e(lambda)`: `u (x) e^mu -> epsilon(mu, lambda) u (x) e^{mu+lambda}`.
    pub fn e_op(&self, lambda: &WeightVector, v: &FockVector) -> FockVector {
        v.terms()
            .iter()
            .map(|(s, c)| {
                let c = if self.cocycle.epsilon(&s.lattice, lambda) < 0 { -c.clone() } else { c.clone() };
                (FockState::new(s.osc.clone(), &s.lattice + lambda), c)
            })
            .collect()
    }

    /// `e(lambda)^k`, with negative `k` applying `e(-lambda)`.
    pub fn e_op_power(&self, lambda: &WeightVector, k: i64, v: &FockVector) -> FockVector {
        let step = if k >= 0 { lambda.clone() } else { -lambda.clone() };
        (0..k.unsigned_abs()).fold(v.clone(), |acc, _| self.e_op(&step, &acc))
    }

    /// The Heisenberg mode `h_a(n)`.
    pub fn heisenberg(&self, a: usize, n: i64, v: &FockVector) -> FockVector {
        let ell = self.cfg.ell();
        assert!((1..=ell).contains(&a), "Cartan index out of range");
        let mut out = FockVector::zero();
        for (s, c) in v.terms() {
            if n < 0 {
                out.add_term(FockState::new(s.osc.times(Mode { index: a, n: (-n) as u32 }), s.lattice.clone()), c.clone());
            } else if n == 0 {
                let p = coeff(s.lattice.pair(&WeightVector::simple_root(ell, a)));
                out.add_term(s.clone(), c * &p);
            } else {
                // h_a(n) h_b(-n) = n <alpha_a, alpha_b> on the vacuum.
                for b in a.saturating_sub(1).max(1)..=(a + 1).min(ell) {
                    let cartan = if a == b { 2 } else { -1 };
                    let mode = Mode { index: b, n: n as u32 };
                    if let Some((rest, e)) = s.osc.without_one(mode) {
                        let f = Coeff::from_integer(n * cartan * e as i64);
                        out.add_term(FockState::new(rest, s.lattice.clone()), c * &f);
                    }
                }
            }
        }
        out
    }
}

/// Whether `v` lies in a single (lattice point, degree) component.
pub fn is_homogeneous(v: &FockVector) -> bool {
    let mut it = v.terms().keys();
    let Some(first) = it.next() else { return true };
    let d = first.degree();
    it.all(|s| s.lattice == first.lattice && s.degree() == d)
}
