//! Difference conditions, initial conditions and the leading terms of the quadratic relations.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::monomial::{Monomial, Variable};
use crate::root_data::{Color, GradationConfig};

/// Whether `deep` followed by `shallow` may appear next to each other.
///
/// `deep.depth >= shallow.depth` is required. At equal depth the order-smaller color
/// plays the role of the deeper factor.
pub fn pair_satisfies_dc(deep: Variable, shallow: Variable) -> Result<bool> {
    if deep.depth < shallow.depth {
        return Err(usage(format!("{deep} is shallower than {shallow}")));
    }
    Ok(pair_ok(deep, shallow))
}

fn pair_ok(deep: Variable, shallow: Variable) -> bool {
    match deep.depth - shallow.depth {
        0 => {
            let (lo, hi) = if deep.color <= shallow.color {
                (deep.color, shallow.color)
            } else {
                (shallow.color, deep.color)
            };
            lo.row > hi.row && lo.col < hi.col
        }
        1 => deep.color.row > shallow.color.row || deep.color.col < shallow.color.col,
        _ => true,
    }
}

/// Adjacent pairs of the canonical sequence.
pub fn satisfies_dc(mon: &Monomial) -> bool {
    mon.factors().windows(2).all(|w| pair_ok(w[0], w[1]))
}

/// All pairs; agrees with [`satisfies_dc`] by transitivity and serves as its oracle.
pub fn satisfies_dc_all_pairs(mon: &Monomial) -> bool {
    let f = mon.factors();
    (0..f.len()).all(|a| (a + 1..f.len()).all(|b| pair_ok(f[a], f[b])))
}

/// Whether `x_gamma(-1) v_i` is zero, i.e. `r <= i <= s`.
pub fn kills_highest_weight(color: Color, i: usize) -> bool {
    i != 0 && color.row <= i && i <= color.col
}

pub fn satisfies_ic(mon: &Monomial, i: usize) -> bool {
    mon.factors().iter().all(|v| v.depth != 1 || !kills_highest_weight(v.color, i))
}

pub fn is_admissible(mon: &Monomial, i: usize) -> bool {
    satisfies_ic(mon, i) && satisfies_dc(mon)
}

/// Colors involved in a quadratic relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RelationKind {
    /// `x_gamma(z) x_gamma'(z) = 0`, with `gamma <= gamma'` in one row or column.
    SameLine { gamma: Color, gamma_prime: Color },
    /// `x_gamma(z) x_gamma'(z) = C x_gamma1(z) x_gamma1'(z)` on the vertices of a rectangle.
    Rectangle { gamma: Color, gamma1: Color, gamma1_prime: Color, gamma_prime: Color },
}

/// A relation together with the total depth `n` of its coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationSpec {
    pub kind: RelationKind,
    pub n: u32,
}

impl RelationSpec {
    pub fn same_line(cfg: &GradationConfig, a: Color, b: Color, n: u32) -> Result<Self> {
        cfg.check_color(a)?;
        cfg.check_color(b)?;
        if a != b && a.row != b.row && a.col != b.col {
            return Err(usage(format!("{a} and {b} share neither a row nor a column")));
        }
        check_depth(n)?;
        let (gamma, gamma_prime) = if a <= b { (a, b) } else { (b, a) };
        Ok(Self { kind: RelationKind::SameLine { gamma, gamma_prime }, n })
    }

    /// Rectangle with rows `r1 < r2` and columns `s2 < s1`.
    pub fn rectangle(cfg: &GradationConfig, r1: usize, r2: usize, s2: usize, s1: usize, n: u32) -> Result<Self> {
        if r1 >= r2 || s2 >= s1 {
            return Err(usage("rectangle needs r1 < r2 and s2 < s1"));
        }
        let kind = RelationKind::Rectangle {
            gamma: Color::new(r2, s2),
            gamma1: Color::new(r2, s1),
            gamma1_prime: Color::new(r1, s2),
            gamma_prime: Color::new(r1, s1),
        };
        for c in [Color::new(r1, s1), Color::new(r2, s2)] {
            cfg.check_color(c)?;
        }
        check_depth(n)?;
        Ok(Self { kind, n })
    }

    /// The length-two monomials of total depth `n` occurring in the relation.
    pub fn monomials(&self) -> Vec<Monomial> {
        let pairs: Vec<(Color, Color)> = match self.kind {
            RelationKind::SameLine { gamma, gamma_prime } => vec![(gamma, gamma_prime)],
            RelationKind::Rectangle { gamma, gamma1, gamma1_prime, gamma_prime } => {
                vec![(gamma, gamma_prime), (gamma1, gamma1_prime)]
            }
        };
        let mut out: Vec<Monomial> = pairs
            .into_iter()
            .flat_map(|(a, b)| {
                (1..self.n).map(move |d| {
                    Monomial::new(vec![Variable::new(a, d), Variable::new(b, self.n - d)])
                })
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn check_depth(n: u32) -> Result<()> {
    if n < 2 {
        return Err(usage("relation depth must be at least 2"));
    }
    Ok(())
}

/// Every relation of total depth `n` for the given configuration.
pub fn all_relations(cfg: &GradationConfig, n: u32) -> Vec<RelationSpec> {
    let colors = cfg.colors();
    let mut out = Vec::new();
    for (k, &a) in colors.iter().enumerate() {
        for &b in &colors[k..] {
            if a == b || a.row == b.row || a.col == b.col {
                out.push(RelationSpec::same_line(cfg, a, b, n).expect("valid same-line pair"));
            }
        }
    }
    let m = cfg.m();
    for r1 in 1..=m {
        for r2 in r1 + 1..=m {
            for s2 in m..=cfg.ell() {
                for s1 in s2 + 1..=cfg.ell() {
                    out.push(RelationSpec::rectangle(cfg, r1, r2, s2, s1, n).expect("valid rectangle"));
                }
            }
        }
    }
    out
}

/// The minimal monomial of a relation, by parity of `n`.
pub fn leading_term(rel: &RelationSpec) -> Monomial {
    let n = rel.n;
    let j = n / 2;
    let x = Variable::new;
    match (rel.kind, n % 2) {
        (RelationKind::SameLine { gamma, gamma_prime }, 1) => {
            Monomial::new(vec![x(gamma_prime, j + 1), x(gamma, j)])
        }
        (RelationKind::SameLine { gamma, gamma_prime }, _) => {
            Monomial::new(vec![x(gamma, j), x(gamma_prime, j)])
        }
        (RelationKind::Rectangle { gamma, gamma_prime, .. }, 1) => {
            Monomial::new(vec![x(gamma_prime, j + 1), x(gamma, j)])
        }
        (RelationKind::Rectangle { gamma1, gamma1_prime, .. }, _) => {
            Monomial::new(vec![x(gamma1, j), x(gamma1_prime, j)])
        }
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
    fn pair_examples() {
        assert!(!pair_satisfies_dc(x(1, 1, 1), x(1, 1, 1)).unwrap());
        assert!(pair_satisfies_dc(x(2, 2, 1), x(1, 3, 1)).unwrap());
        assert!(!pair_satisfies_dc(x(1, 3, 2), x(2, 2, 1)).unwrap());
        assert!(pair_satisfies_dc(x(1, 1, 3), x(1, 1, 1)).unwrap());
        assert!(pair_satisfies_dc(x(1, 1, 1), x(1, 1, 2)).is_err());
    }

    #[test]
    fn monomial_dc_examples() {
        assert!(satisfies_dc(&Monomial::empty()));
        assert!(satisfies_dc(&mono(&[(1, 1, 2), (1, 2, 1)])));
        assert!(!satisfies_dc(&mono(&[(1, 2, 2), (1, 1, 1)])));
    }

    #[test]
    fn ic_examples() {
        assert!(satisfies_ic(&mono(&[(1, 1, 1)]), 0));
        assert!(!satisfies_ic(&mono(&[(1, 1, 1)]), 1));
        assert!(satisfies_ic(&mono(&[(2, 2, 1)]), 3));
        assert!(satisfies_ic(&mono(&[(1, 1, 2)]), 1));
    }

    #[test]
    fn leading_term_examples() {
        let cfg = GradationConfig::new(2, 1).unwrap();
        let rel = RelationSpec::same_line(&cfg, Color::new(1, 2), Color::new(1, 1), 3).unwrap();
        assert_eq!(leading_term(&rel), mono(&[(1, 2, 2), (1, 1, 1)]));
        let rel = RelationSpec::same_line(&cfg, Color::new(1, 1), Color::new(1, 2), 4).unwrap();
        assert_eq!(leading_term(&rel), mono(&[(1, 1, 2), (1, 2, 2)]));
        let cfg = GradationConfig::new(3, 2).unwrap();
        let rel = RelationSpec::rectangle(&cfg, 1, 2, 2, 3, 2).unwrap();
        assert_eq!(leading_term(&rel), mono(&[(2, 3, 1), (1, 2, 1)]));
    }

    #[test]
    fn relation_monomials_sorted_and_contain_leading_term() {
        for ell in 1..=3 {
            for m in 1..=ell {
                let cfg = GradationConfig::new(ell, m).unwrap();
                for n in 2..=6 {
                    for rel in all_relations(&cfg, n) {
                        let ms = rel.monomials();
                        assert!(ms.windows(2).all(|w| w[0] < w[1]));
                        assert_eq!(ms[0], leading_term(&rel));
                    }
                }
            }
        }
    }

    #[test]
    fn relation_counts() {
        let cfg = GradationConfig::new(3, 2).unwrap();
        let rels = all_relations(&cfg, 2);
        let rects = rels.iter().filter(|r| matches!(r.kind, RelationKind::Rectangle { .. })).count();
        assert_eq!(rects, 1);
        // 4 diagonal pairs plus 4 distinct same-line pairs.
        assert_eq!(rels.len() - rects, 8);
    }
}
