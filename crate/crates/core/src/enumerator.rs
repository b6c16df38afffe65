//! Enumeration and counting of monomials satisfying the difference and initial conditions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::admissibility::kills_highest_weight;
use crate::monomial::{Monomial, Variable};
use crate::root_data::{Color, GradationConfig, WeightVector};

/// Variables that may be placed immediately below `prev` with `remaining` depth left,
/// greatest first.
fn candidates(colors: &[Color], i: usize, prev: Option<Variable>, remaining: u32) -> Vec<Variable> {
    let first = prev.map_or(1, |p| p.depth);
    let mut out = Vec::new();
    for d in first..=remaining {
        let rest = remaining - d;
        if rest != 0 && rest < d {
            continue;
        }
        for &c in colors {
            let v = Variable::new(c, d);
            if d == 1 && kills_highest_weight(c, i) {
                continue;
            }
            if let Some(p) = prev {
                if v > p || !pair_ok(v, p) {
                    continue;
                }
            }
            out.push(v);
        }
    }
    out
}

fn pair_ok(deep: Variable, shallow: Variable) -> bool {
    crate::admissibility::pair_satisfies_dc(deep, shallow).unwrap_or(false)
}

struct Frame {
    candidates: Vec<Variable>,
    next: usize,
}

/// Depth-first stream of admissible monomials of a fixed degree, in descending order.
///
/// Factors are chosen from the greatest down, so consecutive siblings are tried in
/// descending order and the output is strictly decreasing.
pub struct AdmissibleMonomials {
    colors: Vec<Color>,
    i: usize,
    stack: Vec<Frame>,
    chosen: Vec<Variable>,
    remaining: u32,
    trivial: Option<bool>,
}

impl AdmissibleMonomials {
    fn new(cfg: &GradationConfig, i: usize, n: u32) -> Self {
        let colors = cfg.colors();
        let mut out = Self {
            colors,
            i,
            stack: Vec::new(),
            chosen: Vec::new(),
            remaining: n,
            trivial: (n == 0).then_some(true),
        };
        if n > 0 {
            let c = candidates(&out.colors, i, None, n);
            out.stack.push(Frame { candidates: c, next: 0 });
        }
        out
    }
}

impl Iterator for AdmissibleMonomials {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        if let Some(pending) = self.trivial.as_mut() {
            return std::mem::replace(pending, false).then(Monomial::empty);
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next == frame.candidates.len() {
                self.stack.pop();
                if let Some(v) = self.chosen.pop() {
                    self.remaining += v.depth;
                }
                continue;
            }
            let v = frame.candidates[frame.next];
            frame.next += 1;
            if v.depth == self.remaining {
                let mut f: Vec<Variable> = self.chosen.iter().rev().copied().collect();
                f.insert(0, v);
                return Some(Monomial::from_sorted(f));
            }
            self.remaining -= v.depth;
            self.chosen.push(v);
            let c = candidates(&self.colors, self.i, Some(v), self.remaining);
            self.stack.push(Frame { candidates: c, next: 0 });
        }
    }
}

/// All monomials of degree `-n` satisfying DC and IC for `W(Lambda_i)`, in descending order.
pub fn enumerate(cfg: &GradationConfig, i: usize, n: u32) -> AdmissibleMonomials {
    AdmissibleMonomials::new(cfg, i, n)
}

/// Counts `(depth n, weight) -> number of basis monomials`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedCharacter {
    pub entries: BTreeMap<(u32, WeightVector), BigUint>,
}

impl GradedCharacter {
    /// Graded dimensions for `n = 0..=max_n`.
    pub fn dimensions(&self, max_n: u32) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); max_n as usize + 1];
        for ((n, _), c) in &self.entries {
            if *n <= max_n {
                out[*n as usize] += c;
            }
        }
        out
    }
}

type WeightCounts = BTreeMap<WeightVector, BigUint>;

struct Counter<'a> {
    cfg: &'a GradationConfig,
    colors: Vec<Color>,
    i: usize,
    memo: HashMap<(Option<Variable>, u32), WeightCounts>,
}

impl Counter<'_> {
    /// Weights of all admissible tails below `prev` of total depth `remaining`.
    fn tails(&mut self, prev: Option<Variable>, remaining: u32) -> WeightCounts {
        if remaining == 0 {
            return BTreeMap::from([(WeightVector::zero(self.cfg.ell()), BigUint::one())]);
        }
        if let Some(hit) = self.memo.get(&(prev, remaining)) {
            return hit.clone();
        }
        let mut out = WeightCounts::new();
        for v in candidates(&self.colors, self.i, prev, remaining) {
            let w = self.cfg.color_weight(v.color);
            for (tw, c) in self.tails(Some(v), remaining - v.depth) {
                *out.entry(tw + w.clone()).or_default() += c;
            }
        }
        self.memo.insert((prev, remaining), out.clone());
        out
    }
}

/// Weight-refined counts of basis monomials for `n = 0..=max_n`.
pub fn character(cfg: &GradationConfig, i: usize, max_n: u32) -> GradedCharacter {
    let mut counter = Counter { cfg, colors: cfg.colors(), i, memo: HashMap::new() };
    let mut entries = BTreeMap::new();
    for n in 0..=max_n {
        for (w, c) in counter.tails(None, n) {
            entries.insert((n, w), c);
        }
    }
    GradedCharacter { entries }
}

/// Number of basis monomials of degree `-n` for `n = 0..=max_n`.
pub fn graded_dimensions(cfg: &GradationConfig, i: usize, max_n: u32) -> Vec<BigUint> {
    character(cfg, i, max_n).dimensions(max_n)
}

/// Exponent table `(color, depth) -> multiplicity` of a monomial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdmissibleProfile {
    pub exponents: BTreeMap<(Color, u32), usize>,
}

#[derive(Serialize)]
struct ProfileEntry {
    row: usize,
    col: usize,
    depth: u32,
    count: usize,
}

impl Serialize for AdmissibleProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.exponents.iter().map(|(&(c, depth), &count)| ProfileEntry {
            row: c.row,
            col: c.col,
            depth,
            count,
        }))
    }
}

impl AdmissibleProfile {
    /// For `m = 1`: exponents laid out along the positions
    /// `(j-1)*l + (l-s)` for `x_{1s}(-j)`, greatest variable first, up to depth `max_depth`.
    pub fn linear_sequence(&self, cfg: &GradationConfig, max_depth: u32) -> Option<Vec<usize>> {
        if cfg.m() != 1 {
            return None;
        }
        let ell = cfg.ell();
        let mut seq = vec![0; ell * max_depth as usize];
        for (&(c, j), &k) in &self.exponents {
            if j > max_depth {
                return None;
            }
            seq[(j as usize - 1) * ell + (ell - c.col)] += k;
        }
        Some(seq)
    }

    /// Every window of `l+1` consecutive positions holds at most one factor.
    pub fn is_level_one_admissible(&self, cfg: &GradationConfig) -> Option<bool> {
        let max_depth = self.exponents.keys().map(|&(_, j)| j).max().unwrap_or(1);
        let seq = self.linear_sequence(cfg, max_depth)?;
        let w = cfg.ell() + 1;
        Some(seq.iter().all(|&k| k <= 1) && (0..seq.len()).all(|p| seq[p..(p + w).min(seq.len())].iter().sum::<usize>() <= 1))
    }
}

pub fn admissible_profile(mon: &Monomial) -> AdmissibleProfile {
    AdmissibleProfile { exponents: mon.exponents() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissibility::{is_admissible, satisfies_dc};

    fn cfg(ell: usize, m: usize) -> GradationConfig {
        GradationConfig::new(ell, m).unwrap()
    }

    fn mono(v: &[(usize, usize, u32)]) -> Monomial {
        Monomial::new(v.iter().map(|&(r, s, n)| Variable::new(Color::new(r, s), n)).collect())
    }

    fn nat(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(&cfg(1, 1), 0, 0).collect::<Vec<_>>(), vec![Monomial::empty()]);
        assert_eq!(enumerate(&cfg(1, 1), 1, 1).count(), 0);
        let got: Vec<_> = enumerate(&cfg(2, 1), 0, 3).collect();
        let mut want = vec![mono(&[(1, 1, 3)]), mono(&[(1, 2, 3)]), mono(&[(1, 1, 2), (1, 2, 1)])];
        want.sort_by(|a, b| b.cmp(a));
        assert_eq!(got, want);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(graded_dimensions(&cfg(1, 1), 0, 6), nat(&[1, 1, 1, 1, 2, 2, 3]));
        assert_eq!(graded_dimensions(&cfg(1, 1), 1, 6), nat(&[1, 0, 1, 1, 1, 1, 2]));
        assert_eq!(graded_dimensions(&cfg(2, 1), 0, 2), nat(&[1, 2, 2]));
    }

    #[test]
    fn character_examples() {
        let c = cfg(1, 1);
        let ch = character(&c, 0, 1);
        assert_eq!(ch.entries.get(&(1, c.color_weight(Color::new(1, 1)))), Some(&BigUint::one()));
        assert_eq!(ch.entries.get(&(0, WeightVector::zero(1))), Some(&BigUint::one()));
        let c = cfg(2, 1);
        let ch = character(&c, 0, 2);
        let at2: Vec<_> = ch.entries.iter().filter(|((n, _), _)| *n == 2).collect();
        assert_eq!(at2.len(), 2);
        for col in [1, 2] {
            assert_eq!(ch.entries.get(&(2, c.color_weight(Color::new(1, col)))), Some(&BigUint::one()));
        }
    }

    #[test]
    fn profile_examples() {
        let p = admissible_profile(&mono(&[(1, 1, 3), (1, 1, 1)]));
        assert_eq!(p.exponents, BTreeMap::from([((Color::new(1, 1), 3), 1), ((Color::new(1, 1), 1), 1)]));
        assert!(admissible_profile(&Monomial::empty()).exponents.is_empty());
        let p = admissible_profile(&mono(&[(1, 1, 2), (1, 2, 1)]));
        assert_eq!(p.exponents.len(), 2);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"[{"row":1,"col":1,"depth":2,"count":1},{"row":1,"col":2,"depth":1,"count":1}]"#
        );
    }

    /// Every monomial of degree `-n` with factors in ascending order, by brute force.
    fn all_monomials(c: &GradationConfig, n: u32) -> Vec<Monomial> {
        fn rec(vars: &[Variable], start: usize, rem: u32, cur: &mut Vec<Variable>, out: &mut Vec<Monomial>) {
            if rem == 0 {
                out.push(Monomial::new(cur.clone()));
                return;
            }
            for k in start..vars.len() {
                if vars[k].depth <= rem {
                    cur.push(vars[k]);
                    rec(vars, k, rem - vars[k].depth, cur, out);
                    cur.pop();
                }
            }
        }
        let vars: Vec<Variable> = (1..=n.max(1))
            .flat_map(|d| c.colors().into_iter().map(move |col| Variable::new(col, d)))
            .collect();
        let mut out = Vec::new();
        rec(&vars, 0, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn enumeration_matches_filter_and_is_descending() {
        for ell in 1..=3 {
            for m in 1..=ell {
                let c = cfg(ell, m);
                for i in 0..=ell {
                    let dims = graded_dimensions(&c, i, 6);
                    for n in 0..=6 {
                        let got: Vec<_> = enumerate(&c, i, n).collect();
                        assert!(got.windows(2).all(|w| w[0] > w[1]));
                        let mut want: Vec<_> =
                            all_monomials(&c, n).into_iter().filter(|m| is_admissible(m, i)).collect();
                        want.sort_by(|a, b| b.cmp(a));
                        assert_eq!(got, want, "l={ell} m={m} i={i} n={n}");
                        assert_eq!(dims[n as usize], BigUint::from(got.len()));
                        let again: Vec<_> = enumerate(&c, i, n).collect();
                        assert_eq!(got, again);
                    }
                }
            }
        }
    }

    #[test]
    fn linear_windows_match_dc_for_m1() {
        for ell in 1..=4 {
            let c = cfg(ell, 1);
            for n in 0..=7 {
                for mon in all_monomials(&c, n) {
                    let p = admissible_profile(&mon);
                    assert_eq!(p.is_level_one_admissible(&c), Some(satisfies_dc(&mon)), "{mon}");
                }
            }
        }
    }
}
