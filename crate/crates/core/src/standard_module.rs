//! Translation by `e(omega)`, the periodic tail of admissible monomials, and slices of
//! the full standard module spanned by translated monomial vectors.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::admissibility::is_admissible;
use crate::enumerator::enumerate;
use crate::error::{Error, Result};
use crate::fock::{FockSpace, FockVector};
use crate::linalg::rank;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::root_data::{Color, GradationConfig, WeightVector};
use crate::verifier::MonomialActions;
use crate::Variable;

fn ser_big<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// The maximal admissible monomial of depth at most `f` and its period data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailResult {
    pub tail: Monomial,
    pub f: u32,
    /// Number of factors, `lcm(m, l - m + 1)`.
    pub r: usize,
}

/// Builds the tail for `W(Lambda_i)` factor by factor, from the greatest factor down.
pub fn periodic_tail(cfg: &GradationConfig, i: usize) -> Result<TailResult> {
    cfg.check_module_index(i)?;
    let (ell, m) = (cfg.ell(), cfg.m());
    let r = m.lcm(&(ell - m + 1));
    let (mut p, mut q, mut n) = match i {
        0 => (1, ell, 1),
        _ if i == m => (1, ell, 2),
        _ if i < m => (i + 1, ell, 1),
        _ => (1, i - 1, 1),
    };
    let mut factors = Vec::with_capacity(r);
    for _ in 0..r {
        factors.push(Variable::new(Color::new(p, q), n));
        (p, q, n) = match (p < m, q > m) {
            (true, true) => (p + 1, q - 1, n),
            (false, true) => (1, q - 1, n + 1),
            (true, false) => (p + 1, ell, n + 1),
            (false, false) => (1, ell, n + 2),
        };
    }
    let last = factors.last().expect("r >= 1").depth;
    let f = if i == 0 { last + 1 } else { last };
    Ok(TailResult { tail: Monomial::new(factors), f, r })
}

/// Outcome of the tail checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailReport {
    pub i: usize,
    pub tail: TailResult,
    pub f_divides: bool,
    /// `x(tail) v_i` is a nonzero multiple of `e(omega)^f v_i`.
    pub proportional: bool,
    /// Degree bound of the exhaustive periodicity check.
    pub depth_cap: u32,
    pub monomials_checked: usize,
    /// Monomials where admissibility of `pi` and of `shift(pi, -f) * tail` disagree.
    pub periodicity_failures: Vec<Monomial>,
    pub ok: bool,
}

/// Checks proportionality, divisibility and periodicity of the tail.
pub fn verify_tail(space: &mut FockSpace, i: usize, depth_cap: u32, max_monomials: usize) -> Result<TailReport> {
    let cfg = *space.config();
    let tail = periodic_tail(&cfg, i)?;
    if depth_cap < tail.f {
        return Err(Error::Usage(format!("depth cap {depth_cap} is below f = {}", tail.f)));
    }
    let f_divides = (cfg.ell() as u32 + 1) % tail.f == 0;
    let lhs = space.act_monomial(&tail.tail, i);
    let rhs = space.e_op_power(&cfg.omega(), tail.f as i64, &space.hwv(i));
    let proportional = lhs.ratio_to(&rhs).is_some();
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 0..=depth_cap {
        for pi in monomials_of_degree(&cfg, n, max_monomials)? {
            checked += 1;
            let periodic = pi.shift(-(tail.f as i64))?.mul(&tail.tail);
            if is_admissible(&pi, i) != is_admissible(&periodic, i) {
                failures.push(pi);
            }
        }
    }
    let ok = f_divides && proportional && failures.is_empty();
    Ok(TailReport {
        i,
        tail,
        f_divides,
        proportional,
        depth_cap,
        monomials_checked: checked,
        periodicity_failures: failures,
        ok,
    })
}

/// Number of oscillator states of degree `n`: partitions of `n` into parts of `ell` colors.
pub fn oscillator_state_count(ell: usize, n: u32) -> BigUint {
    let n = n as usize;
    let mut a = vec![BigUint::zero(); n + 1];
    a[0] = BigUint::one();
    for part in 1..=n {
        for _ in 0..ell {
            for j in part..=n {
                let prev = a[j - part].clone();
                a[j] += prev;
            }
        }
    }
    a.swap_remove(n)
}

/// One `(lattice point, oscillator degree)` component of the full module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceComponent {
    pub lattice: WeightVector,
    pub oscillator_degree: u32,
    /// Translated monomial vectors landing here.
    pub count: usize,
    pub rank: usize,
    #[serde(serialize_with = "ser_big")]
    pub full_dim: BigUint,
    pub independent: bool,
    pub spanning: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceReport {
    pub config: GradationConfig,
    pub i: usize,
    pub translation: i64,
    pub depth: u32,
    pub components: Vec<SliceComponent>,
    /// Set when the monomial cap stopped the enumeration early.
    pub truncated: bool,
    pub independent: bool,
    pub spanning: bool,
}

/// Vectors `e(omega)^{(l+1) n} x(pi) v_i` for admissible `pi` of degree at least `-depth`,
/// checked for independence and spanning in each component they reach.
pub fn standard_slice(
    space: &mut FockSpace,
    i: usize,
    translation: i64,
    depth: u32,
    max_monomials: usize,
) -> Result<SliceReport> {
    let cfg = *space.config();
    cfg.check_module_index(i)?;
    let power = (cfg.ell() as i64 + 1)
        .checked_mul(translation)
        .ok_or_else(|| Error::Usage(format!("translation {translation} out of range")))?;
    let omega = cfg.omega();
    let mut groups: BTreeMap<(WeightVector, u32), Vec<FockVector>> = BTreeMap::new();
    let mut truncated = false;
    let mut total = 0;
    let mut acts = MonomialActions::new(space, i);
    'outer: for n in 0..=depth {
        for mon in enumerate(&cfg, i, n) {
            if total == max_monomials {
                truncated = true;
                break 'outer;
            }
            total += 1;
            let v = acts.act(&mon);
            let v = acts.space().e_op_power(&omega, power, &v);
            let Some(state) = v.terms().keys().next() else {
                // Admissible vectors are nonzero; keep the count honest regardless.
                groups.entry((WeightVector::zero(cfg.ell()), u32::MAX)).or_default().push(v);
                continue;
            };
            let key = (state.lattice.clone(), state.osc.degree());
            groups.entry(key).or_default().push(v);
        }
    }
    let components: Vec<SliceComponent> = groups
        .into_iter()
        .map(|((lattice, d), vs)| {
            let r = rank(&vs);
            let full_dim = if d == u32::MAX { BigUint::zero() } else { oscillator_state_count(cfg.ell(), d) };
            SliceComponent {
                independent: r == vs.len(),
                spanning: full_dim.to_usize() == Some(r),
                lattice,
                oscillator_degree: d,
                count: vs.len(),
                rank: r,
                full_dim,
            }
        })
        .collect();
    Ok(SliceReport {
        config: cfg,
        i,
        translation,
        depth,
        independent: components.iter().all(|c| c.independent),
        spanning: components.iter().all(|c| c.spanning),
        components,
        truncated,
    })
}
