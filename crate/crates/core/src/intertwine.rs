//! The weight `mu` and the intertwining coefficient `w(mu)` attached to an admissible monomial.
//!
//! For `x(pi) = x(pi_2) x(pi_1)` with `pi_1` the degree `-1` part, `w(mu)` sends
//! `x(pi_1) v_i` to a nonzero multiple of `e(omega) v_{i'}` and kills every admissible
//! monomial vector whose degree `-1` part is greater than `pi_1`.
//!
//! Operators here are untwisted lattice coefficients; the twist by `e^{i pi mu} c(., mu)`
//! rescales each lattice component by a nonzero constant and is dropped.

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::admissibility::{is_admissible, kills_highest_weight};
use crate::enumerator::enumerate;
use crate::error::{usage, Result};
use crate::fock::{FockSpace, FockVector};
use crate::monomial::Monomial;
use crate::root_data::{GradationConfig, WeightVector};
use crate::verifier::MonomialActions;

/// Which family of weights completes `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Degree `-2` colors lie below row `r_t`; the target is `r_t`.
    Row,
    /// Degree `-2` colors lie left of column `s_t`; the target is `s_t`.
    Column,
}

impl std::str::FromStr for Direction {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row" => Ok(Direction::Row),
            "column" => Ok(Direction::Column),
            _ => Err(usage(format!("unknown direction '{s}'"))),
        }
    }
}

/// The data defining `w(mu)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntertwinerSpec {
    pub mu: WeightVector,
    /// Rows `r` with `lambda_r` in `mu`.
    pub mu_rows: Vec<usize>,
    /// Columns `s` with `lambda'_s` in `mu`.
    pub mu_cols: Vec<usize>,
    pub source_i: usize,
    /// `i'` with `w(mu) x(pi_1) v_i` proportional to `e(omega) v_{i'}`.
    pub target_i: usize,
    /// The module containing `e(omega) v_{i'}`: `omega_landing = omega + omega_{i'}` mod `Q`.
    pub landing_i: usize,
    /// `w(mu)` is the coefficient of `z^exponent`, `exponent = <mu, omega_i>`.
    #[serde(serialize_with = "ser_rational")]
    pub exponent: Rational64,
    pub direction: Direction,
    /// How the column range was read for `i >= m` in the column variant.
    pub column_range: &'static str,
}

fn ser_rational<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Direction suggested by the greatest degree `-2` factor, with rows preferred.
fn inferred_direction(pi1: &Monomial, pi2_top: &Monomial) -> Direction {
    let Some(last) = pi1.factors().first() else { return Direction::Row };
    match pi2_top.factors().last() {
        Some(v) if v.color.row <= last.color.row => Direction::Column,
        _ => Direction::Row,
    }
}

/// Whether every degree `-2` factor lies strictly below row `r_t` (or left of column `s_t`).
fn direction_valid(dir: Direction, pi1: &Monomial, pi2_top: &Monomial) -> bool {
    let Some(last) = pi1.factors().first() else { return true };
    pi2_top.factors().iter().all(|v| match dir {
        Direction::Row => v.color.row > last.color.row,
        Direction::Column => v.color.col < last.color.col,
    })
}

/// Builds `mu` for an admissible monomial; `direction` overrides the inferred variant.
pub fn build_mu(
    cfg: &GradationConfig,
    mon: &Monomial,
    i: usize,
    direction: Option<Direction>,
) -> Result<IntertwinerSpec> {
    cfg.check_module_index(i)?;
    mon.validate(cfg)?;
    if !is_admissible(mon, i) {
        return Err(usage(format!("{mon} violates the difference or initial conditions for i={i}")));
    }
    let (ell, m) = (cfg.ell(), cfg.m());
    let pi1 = mon.slice(1);
    let pi2_top = mon.slice(2);
    let dir = match direction {
        Some(d) if !direction_valid(d, &pi1, &pi2_top) => {
            return Err(usage(format!("direction {d:?} does not fit {mon}")));
        }
        Some(d) => d,
        None => inferred_direction(&pi1, &pi2_top),
    };
    let used_rows: BTreeSet<usize> = pi1.factors().iter().map(|v| v.color.row).collect();
    let used_cols: BTreeSet<usize> = pi1.factors().iter().map(|v| v.color.col).collect();

    let (rows, cols, target): (Vec<usize>, Vec<usize>, usize) = match pi1.factors().first() {
        None => {
            // mu = omega - omega_i.
            if i <= m {
                ((i + 1..=m).collect(), Vec::new(), 0)
            } else {
                (Vec::new(), (m..i).collect(), 0)
            }
        }
        Some(last) => {
            let (rt, st) = (last.color.row, last.color.col);
            // Rows excluded by the initial conditions when i <= m, columns when i >= m.
            let row_lo = if i <= m { i } else { 0 };
            let col_hi = if i >= m && i > 0 { i } else { ell + 1 };
            let mut rows: Vec<usize> = (row_lo + 1..rt).filter(|r| !used_rows.contains(r)).collect();
            let cols: Vec<usize>;
            match dir {
                Direction::Row => {
                    cols = (m..col_hi).filter(|s| !used_cols.contains(s)).collect();
                }
                Direction::Column => {
                    cols = (st + 1..col_hi).filter(|s| !used_cols.contains(s)).collect();
                    rows.extend(rt + 1..=m);
                }
            }
            let target = match dir {
                Direction::Row => rt,
                Direction::Column => st,
            };
            (rows, cols, target)
        }
    };
    let mut mu = WeightVector::zero(ell);
    for &r in &rows {
        mu += &cfg.lambda(r);
    }
    for &s in &cols {
        mu += &cfg.lambda_prime(s);
    }
    let exponent = mu.pair(&cfg.fundamental(i));
    let landing_i = (&cfg.omega() + &cfg.fundamental(target)).q_coset_index();
    Ok(IntertwinerSpec {
        mu,
        mu_rows: rows,
        mu_cols: cols,
        source_i: i,
        target_i: target,
        landing_i,
        exponent,
        direction: dir,
        column_range: "s_t < s <= l, and s < i when i >= m",
    })
}

/// `w(mu) v`: the coefficient of `z^{<mu, omega_i>}` in `Y(e^mu, z) v`.
pub fn w_mu(space: &mut FockSpace, spec: &IntertwinerSpec, v: &FockVector) -> FockVector {
    space.vertex_coefficient(&spec.mu, spec.exponent, v)
}

/// Outcome of checking the three properties of `w(mu)` for one monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BulletReport {
    pub monomial: Monomial,
    pub spec: IntertwinerSpec,
    /// `w(mu) x(pi_1) v_i` is a nonzero multiple of `e(omega) v_{i'}`.
    pub image_proportional: bool,
    /// `pi_2` raised by one satisfies DC and IC for `W(Lambda_{i'})`.
    pub raised_tail_admissible: bool,
    /// Every admissible monomial of the same degree not killed by `w(mu)` has degree `-1` part at most `pi_1`.
    pub maximal: bool,
    /// Monomials violating maximality.
    pub violations: Vec<Monomial>,
}

impl BulletReport {
    pub fn ok(&self) -> bool {
        self.image_proportional && self.raised_tail_admissible && self.maximal
    }
}

/// Checks the three properties for `mon`, evaluating the same-degree admissible monomials
/// through `acts`, which must start from `v_i`.
pub fn check_bullets_with(
    acts: &mut MonomialActions<'_>,
    mon: &Monomial,
    i: usize,
    direction: Option<Direction>,
) -> Result<BulletReport> {
    let cfg = *acts.space().config();
    let spec = build_mu(&cfg, mon, i, direction)?;
    let pi1 = mon.slice(1);
    let image = {
        let v = acts.act(&pi1);
        w_mu(acts.space(), &spec, &v)
    };
    let target = {
        let space = acts.space();
        let v = space.hwv(spec.target_i);
        space.e_op(&cfg.omega(), &v)
    };
    let image_proportional = image.ratio_to(&target).is_some();
    let raised = mon.deeper_than(1).shift(1).expect("depths at least 2");
    let raised_tail_admissible = is_admissible(&raised, spec.target_i);
    let n = (-mon.degree()) as u32;
    let mut violations = Vec::new();
    for other in enumerate(&cfg, i, n) {
        let other_pi1 = other.slice(1);
        if other_pi1 <= pi1 {
            continue;
        }
        let v = acts.act(&other);
        if !w_mu(acts.space(), &spec, &v).is_zero() {
            violations.push(other);
        }
    }
    Ok(BulletReport {
        monomial: mon.clone(),
        spec,
        image_proportional,
        raised_tail_admissible,
        maximal: violations.is_empty(),
        violations,
    })
}

/// Checks the three properties for a single monomial.
pub fn check_bullets(
    space: &mut FockSpace,
    mon: &Monomial,
    i: usize,
    direction: Option<Direction>,
) -> Result<BulletReport> {
    let mut acts = MonomialActions::new(space, i);
    check_bullets_with(&mut acts, mon, i, direction)
}

/// `w(mu) x_gamma(-1) v_i = 0` iff `<mu, gamma> > 0`, over colors allowed by IC.
pub fn kill_criterion_holds(space: &mut FockSpace, spec: &IntertwinerSpec) -> bool {
    let cfg = *space.config();
    let i = spec.source_i;
    cfg.colors().into_iter().filter(|&c| !kills_highest_weight(c, i)).all(|c| {
        let v = space.x(c, -1, &space.hwv(i));
        let killed = w_mu(space, spec, &v).is_zero();
        let positive = spec.mu.pair(&cfg.color_weight(c)) > Rational64::from_integer(0);
        killed == positive
    })
}
