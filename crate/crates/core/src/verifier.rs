//! Rank checks of the basis theorem and of the quadratic relations in the Fock model.

use std::collections::{BTreeMap, HashMap};

use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::admissibility::{all_relations, kills_highest_weight, RelationKind};
use crate::enumerator::enumerate;
use crate::error::Result;
use crate::fock::{Coeff, FockSpace, FockState, FockVector, Mode, Oscillators};
use crate::linalg::rank;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::root_data::{Color, GradationConfig, WeightVector};

/// Default bound on the number of PBW monomials in one degree.
pub const DEFAULT_MAX_PBW: usize = 200_000;

/// Applies monomials to `v_i`, reusing results for shared greater factors.
pub struct MonomialActions<'a> {
    space: &'a mut FockSpace,
    start: FockVector,
    memo: HashMap<Monomial, FockVector>,
}

impl<'a> MonomialActions<'a> {
    pub fn new(space: &'a mut FockSpace, i: usize) -> Self {
        let start = space.hwv(i);
        Self::from_vector(space, start)
    }

    pub fn from_vector(space: &'a mut FockSpace, start: FockVector) -> Self {
        Self { space, start, memo: HashMap::new() }
    }

    pub fn space(&mut self) -> &mut FockSpace {
        self.space
    }

    pub fn act(&mut self, mon: &Monomial) -> FockVector {
        if mon.is_empty() {
            return self.start.clone();
        }
        if let Some(v) = self.memo.get(mon) {
            return v.clone();
        }
        let f = mon.factors();
        let rest = Monomial::new(f[1..].to_vec());
        let inner = self.act(&rest);
        let out = if inner.is_zero() {
            inner
        } else {
            self.space.x(f[0].color, -(f[0].depth as i64), &inner)
        };
        self.memo.insert(mon.clone(), out.clone());
        out
    }
}

/// Rank of vectors grouped by monomial weight; distinct weights land on distinct lattice points.
fn blockwise_rank(cfg: &GradationConfig, acts: &mut MonomialActions<'_>, mons: &[Monomial]) -> usize {
    let mut blocks: BTreeMap<WeightVector, Vec<FockVector>> = BTreeMap::new();
    for m in mons {
        blocks.entry(m.weight(cfg)).or_default().push(acts.act(m));
    }
    blocks.values().map(|vs| rank(vs)).sum()
}

/// Outcome of checking one degree of the basis theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub config: GradationConfig,
    pub i: usize,
    pub n: u32,
    pub candidate_count: usize,
    pub candidate_rank: usize,
    pub pbw_count: usize,
    pub pbw_rank: usize,
    pub ok: bool,
}

/// Compares the admissible monomials of degree `-n` with the full PBW spanning set.
pub fn verify_basis(space: &mut FockSpace, i: usize, n: u32, max_pbw: usize) -> Result<BasisReport> {
    let cfg = *space.config();
    cfg.check_module_index(i)?;
    let pbw = monomials_of_degree(&cfg, n, max_pbw)?;
    let candidates: Vec<Monomial> = enumerate(&cfg, i, n).collect();
    let mut acts = MonomialActions::new(space, i);
    let candidate_rank = blockwise_rank(&cfg, &mut acts, &candidates);
    let pbw_rank = blockwise_rank(&cfg, &mut acts, &pbw);
    let candidate_count = candidates.len();
    Ok(BasisReport {
        config: cfg,
        i,
        n,
        candidate_count,
        candidate_rank,
        pbw_count: pbw.len(),
        pbw_rank,
        ok: candidate_count == candidate_rank && candidate_rank == pbw_rank,
    })
}

/// All oscillator monomials of degree at most `max_degree` in `ell` Cartan directions.
pub fn oscillator_monomials(ell: usize, max_degree: u32) -> Vec<Oscillators> {
    let modes: Vec<Mode> =
        (1..=max_degree).flat_map(|n| (1..=ell).map(move |index| Mode { index, n })).collect();
    fn rec(modes: &[Mode], start: usize, rem: u32, cur: &mut Vec<Mode>, out: &mut Vec<Oscillators>) {
        out.push(Oscillators::from_parts(cur.iter().map(|&m| (m, 1))));
        for k in start..modes.len() {
            if modes[k].n <= rem {
                cur.push(modes[k]);
                rec(modes, k, rem - modes[k].n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&modes, 0, max_degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Lattice points `omega_i + (sum of at most `max_colors` colors)` for all `i`.
pub fn test_lattice_points(cfg: &GradationConfig, max_colors: usize) -> Vec<WeightVector> {
    let colors = cfg.colors();
    let mut sums = vec![WeightVector::zero(cfg.ell())];
    let mut layer = sums.clone();
    for _ in 0..max_colors {
        layer = layer.iter().flat_map(|w| colors.iter().map(move |&c| w + &cfg.color_weight(c))).collect();
        sums.extend(layer.iter().cloned());
    }
    let mut out: Vec<WeightVector> =
        (0..=cfg.ell()).flat_map(|i| sums.iter().map(move |s| s + &cfg.fundamental(i))).collect();
    out.sort();
    out.dedup();
    out
}

/// Test states: oscillator degree at most `max_osc` over the given lattice points.
pub fn test_states(cfg: &GradationConfig, max_colors: usize, max_osc: u32) -> Vec<FockState> {
    let osc = oscillator_monomials(cfg.ell(), max_osc);
    test_lattice_points(cfg, max_colors)
        .into_iter()
        .flat_map(|l| osc.iter().map(move |o| FockState::new(o.clone(), l.clone())))
        .collect()
}

fn as_int(r: Rational64) -> i64 {
    assert!(r.is_integer(), "pairing of a root with a weight must be integral");
    r.to_integer()
}

/// Coefficient of `z^{n-2}` in `x_a(z) x_b(z) s`, as `sum x_a(-p) x_b(-(n-p))`.
///
/// Terms outside the summation range vanish on `s`: after normal ordering, the power of `z_1`
/// is bounded below by `<a, mu> - D`, and similarly for `z_2` (`D` the oscillator degree).
pub fn product_coefficient(space: &mut FockSpace, a: Color, b: Color, n: i64, s: &FockState) -> FockVector {
    let cfg = *space.config();
    let (wa, wb) = (cfg.color_weight(a), cfg.color_weight(b));
    let d = s.osc.degree() as i64;
    let lo = as_int(wa.pair(&s.lattice)) + 1 - d;
    let hi = n - (as_int(wb.pair(&s.lattice)) + 1 - d);
    let v = FockVector::basis(s.clone());
    let mut out = FockVector::zero();
    for p in lo..=hi {
        let inner = space.x(b, -(n - p), &v);
        if inner.is_zero() {
            continue;
        }
        let outer = space.x(a, -p, &inner);
        out = out.add(&outer);
    }
    out
}

/// A single failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: RelationKind,
    pub n: u32,
    pub state: String,
    pub detail: String,
}

/// Proportionality constant of a rectangle relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RectangleConstant {
    pub relation: RelationKind,
    /// `None` if both sides vanished on every tested state.
    pub constant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub config: GradationConfig,
    pub max_n: u32,
    pub max_osc: u32,
    pub states: usize,
    pub checks: usize,
    pub constants: Vec<RectangleConstant>,
    pub failures: Vec<RelationFailure>,
    pub ok: bool,
}

/// Checks the same-line and rectangle relations for `2 <= n <= max_n` on test states.
pub fn verify_relations(space: &mut FockSpace, max_n: u32, max_osc: u32) -> RelationReport {
    let cfg = *space.config();
    let states = test_states(&cfg, 2, max_osc);
    let mut failures = Vec::new();
    let mut constants: BTreeMap<usize, Option<BigRational>> = BTreeMap::new();
    let mut checks = 0;
    for n in 2..=max_n {
        for (k, rel) in all_relations(&cfg, n).into_iter().enumerate() {
            for s in &states {
                checks += 1;
                let fail = |detail: String| RelationFailure {
                    relation: rel.kind,
                    n,
                    state: s.to_string(),
                    detail,
                };
                match rel.kind {
                    RelationKind::SameLine { gamma, gamma_prime } => {
                        let v = product_coefficient(space, gamma, gamma_prime, n as i64, s);
                        if !v.is_zero() {
                            failures.push(fail(format!("nonzero coefficient {v}")));
                        }
                    }
                    RelationKind::Rectangle { gamma, gamma1, gamma1_prime, gamma_prime } => {
                        let lhs = product_coefficient(space, gamma, gamma_prime, n as i64, s);
                        let rhs = product_coefficient(space, gamma1, gamma1_prime, n as i64, s);
                        match (lhs.is_zero(), rhs.is_zero()) {
                            (true, true) => {}
                            (false, false) => match lhs.ratio_to(&rhs) {
                                Some(c) => {
                                    let seen = constants.entry(k).or_insert(None);
                                    match seen {
                                        None => *seen = Some(c),
                                        Some(prev) if *prev == c => {}
                                        Some(prev) => failures.push(fail(format!("constant {c} differs from {prev}"))),
                                    }
                                }
                                None => failures.push(fail("sides are not proportional".into())),
                            },
                            _ => failures.push(fail("exactly one side vanishes".into())),
                        }
                    }
                }
            }
        }
    }
    let rects: Vec<_> = all_relations(&cfg, 2)
        .into_iter()
        .enumerate()
        .filter(|(_, r)| matches!(r.kind, RelationKind::Rectangle { .. }))
        .map(|(k, r)| RectangleConstant {
            relation: r.kind,
            constant: constants.get(&k).cloned().flatten().map(|c| c.to_string()),
        })
        .collect();
    let ok = failures.is_empty();
    RelationReport { config: cfg, max_n, max_osc, states: states.len(), checks, constants: rects, failures, ok }
}

/// A nonzero commutator `[x_a(p), x_b(q)] s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorFailure {
    pub a: Color,
    pub p: i64,
    pub b: Color,
    pub q: i64,
    pub state: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutativityReport {
    pub config: GradationConfig,
    pub checks: usize,
    pub failures: Vec<CommutatorFailure>,
    pub ok: bool,
}

/// Checks `[x_a(p), x_b(q)] = 0` for `|p|, |q| <= max_mode` on the given states.
pub fn verify_commutativity(space: &mut FockSpace, max_mode: i64, states: &[FockState]) -> CommutativityReport {
    let cfg = *space.config();
    let colors = cfg.colors();
    let modes: Vec<i64> = (-max_mode..=max_mode).collect();
    let mut failures = Vec::new();
    let mut checks = 0;
    for s in states {
        let v = FockVector::basis(s.clone());
        let mut single: HashMap<(Color, i64), FockVector> = HashMap::new();
        for &c in &colors {
            for &p in &modes {
                single.insert((c, p), space.x(c, p, &v));
            }
        }
        for (ka, &a) in colors.iter().enumerate() {
            for &b in &colors[ka..] {
                for &p in &modes {
                    for &q in &modes {
                        if a == b && p >= q {
                            continue;
                        }
                        checks += 1;
                        let ab = space.x(a, p, &single[&(b, q)]);
                        let ba = space.x(b, q, &single[&(a, p)]);
                        if ab != ba {
                            failures.push(CommutatorFailure { a, p, b, q, state: s.to_string() });
                        }
                    }
                }
            }
        }
    }
    let ok = failures.is_empty();
    CommutativityReport { config: cfg, checks, failures, ok }
}

/// One row of the table of `x_gamma(-1) v_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InitialEntry {
    pub i: usize,
    pub color: Color,
    pub expected_zero: bool,
    pub is_zero: bool,
    /// Coefficient of `e^{gamma + omega_i}` when the result is that single state.
    pub coefficient: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InitialReport {
    pub config: GradationConfig,
    pub entries: Vec<InitialEntry>,
    pub ok: bool,
}

/// `x_{rs}(-1) v_i` vanishes iff `r <= i <= s`, and is otherwise `+-e^{gamma_{rs} + omega_i}`.
pub fn verify_initial_table(space: &mut FockSpace) -> InitialReport {
    let cfg = *space.config();
    let mut entries = Vec::new();
    for i in 0..=cfg.ell() {
        for c in cfg.colors() {
            let v = space.x(c, -1, &space.hwv(i));
            let expected_zero = kills_highest_weight(c, i);
            let target = FockState::vacuum_at(&cfg.color_weight(c) + &cfg.fundamental(i));
            let coefficient = (v.len() == 1).then(|| v.coefficient(&target)).filter(|x| !x.is_zero());
            let ok = if expected_zero {
                v.is_zero()
            } else {
                coefficient.as_ref().is_some_and(|x| *x == Coeff::one() || *x == -Coeff::one())
            };
            entries.push(InitialEntry {
                i,
                color: c,
                expected_zero,
                is_zero: v.is_zero(),
                coefficient: coefficient.map(|x| x.to_string()),
                ok,
            });
        }
    }
    let ok = entries.iter().all(|e| e.ok);
    InitialReport { config: cfg, entries, ok }
}
