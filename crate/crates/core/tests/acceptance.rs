//! Exit criteria. Each check prints one PASS/FAIL line; the process fails if any check does.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fsbasis::admissibility::{all_relations, leading_term, pair_satisfies_dc, satisfies_dc};
use fsbasis::enumerator::{enumerate, graded_dimensions};
use fsbasis::fock::FockSpace;
use fsbasis::intertwine::{check_bullets_with, kill_criterion_holds};
use fsbasis::linalg::rank;
use fsbasis::monomial::{compare, monomials_of_degree};
use fsbasis::standard_module::{oscillator_state_count, periodic_tail, standard_slice, verify_tail, SliceComponent};
use fsbasis::verifier::{
    test_states, verify_basis, verify_commutativity, verify_initial_table, verify_relations, MonomialActions,
    DEFAULT_MAX_PBW,
};
use fsbasis::{Color, GradationConfig, Monomial, Variable, WeightVector};

type Outcome = Result<String, String>;

fn configs(max_ell: usize) -> impl Iterator<Item = GradationConfig> {
    (1..=max_ell).flat_map(|ell| (1..=ell).map(move |m| GradationConfig::new(ell, m).unwrap()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn main_theorem() -> Outcome {
    let mut checked = 0;
    for cfg in configs(3) {
        let mut space = FockSpace::new(cfg).map_err(|e| e.to_string())?;
        for i in 0..=cfg.ell() {
            for n in 0..=6 {
                let r = verify_basis(&mut space, i, n, DEFAULT_MAX_PBW).map_err(|e| e.to_string())?;
                ensure(r.ok, || format!("{cfg:?} i={i} n={n}: {r:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (l, m, i, n) instances"))
}

/// Partitions of `n` with parts differing by at least 2 and all parts at least `min_part`.
fn gap_partitions(n: u32, min_part: u32) -> u64 {
    fn rec(rem: u32, max_part: u32, min_part: u32) -> u64 {
        if rem == 0 {
            return 1;
        }
        (min_part..=max_part.min(rem)).map(|p| rec(rem - p, p.saturating_sub(2), min_part)).sum()
    }
    rec(n, n, min_part)
}

fn rogers_ramanujan() -> Outcome {
    let cfg = GradationConfig::new(1, 1).unwrap();
    for (i, min_part) in [(0, 1), (1, 2)] {
        let dims = graded_dimensions(&cfg, i, 12);
        for n in 0..=12u32 {
            let expected = BigUint::from(gap_partitions(n, min_part));
            ensure(dims[n as usize] == expected, || format!("i={i} n={n}: {} vs {expected}", dims[n as usize]))?;
        }
    }
    Ok("n = 0..12 for i = 0, 1".into())
}

fn relation_suite() -> Outcome {
    let mut checks = 0;
    let mut constants = 0;
    for cfg in configs(3) {
        let mut space = FockSpace::new(cfg).map_err(|e| e.to_string())?;
        let r = verify_relations(&mut space, 6, 3);
        ensure(r.ok, || format!("{cfg:?}: {:?}", r.failures.first()))?;
        for c in &r.constants {
            ensure(c.constant.as_deref().is_some_and(|x| x != "0"), || format!("{cfg:?}: no constant for {c:?}"))?;
        }
        checks += r.checks;
        constants += r.constants.len();
    }
    Ok(format!("{checks} coefficient checks, {constants} rectangle constants"))
}

fn commutativity() -> Outcome {
    let mut checks = 0;
    for cfg in configs(3) {
        let mut space = FockSpace::new(cfg).map_err(|e| e.to_string())?;
        let states = test_states(&cfg, 1, 3);
        let r = verify_commutativity(&mut space, 3, &states);
        ensure(r.ok, || format!("{cfg:?}: {:?}", r.failures.first()))?;
        checks += r.checks;
    }
    Ok(format!("{checks} commutators"))
}

fn initial_table() -> Outcome {
    let mut entries = 0;
    for cfg in configs(4) {
        let mut space = FockSpace::new(cfg).map_err(|e| e.to_string())?;
        let r = verify_initial_table(&mut space);
        ensure(r.ok, || format!("{cfg:?}: {:?}", r.entries.iter().find(|e| !e.ok)))?;
        for e in &r.entries {
            let expected = e.color.row <= e.i && e.i <= e.color.col;
            ensure(e.is_zero == expected, || format!("{cfg:?}: {e:?}"))?;
        }
        entries += r.entries.len();
    }
    Ok(format!("{entries} entries"))
}

fn leading_terms() -> Outcome {
    let mut relations = 0;
    for cfg in configs(3) {
        for n in 2..=8 {
            for rel in all_relations(&cfg, n) {
                let lead = leading_term(&rel);
                let mons = rel.monomials();
                ensure(mons.contains(&lead), || format!("{rel:?}: {lead} not a term"))?;
                for other in mons.iter().filter(|m| **m != lead) {
                    ensure(compare(&lead, other) == Ordering::Less, || format!("{rel:?}: {lead} vs {other}"))?;
                }
                relations += 1;
            }
        }
    }
    Ok(format!("{relations} relations"))
}

fn random_monomial(rng: &mut ChaCha8Rng, colors: &[Color]) -> Monomial {
    let len = rng.gen_range(0..=4);
    Monomial::new(
        (0..len).map(|_| Variable::new(colors[rng.gen_range(0..colors.len())], rng.gen_range(1..=3))).collect(),
    )
}

fn order_laws() -> Outcome {
    let mut total = 0;
    for cfg in configs(3) {
        let mut all = Vec::new();
        for n in 0..=4 {
            all.extend(monomials_of_degree(&cfg, n, 1_000_000).map_err(|e| e.to_string())?);
        }
        let mut sorted = all.clone();
        sorted.sort_by(compare);
        for (a, b) in sorted.iter().zip(sorted.iter().skip(1)) {
            ensure(compare(a, b) == Ordering::Less, || format!("{a} and {b} not strictly ordered"))?;
        }
        // Position order agrees with the comparator on every pair, so it is a strict total order.
        for (k, a) in sorted.iter().enumerate() {
            ensure(compare(a, a) == Ordering::Equal, || format!("{a} not equal to itself"))?;
            for b in &sorted[k + 1..] {
                ensure(compare(a, b) == Ordering::Less && compare(b, a) == Ordering::Greater, || {
                    format!("{a} vs {b}")
                })?;
            }
        }
        total += all.len();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut quads = 0;
    let cfgs: Vec<GradationConfig> = configs(3).collect();
    while quads < 20_000 {
        let cfg = cfgs[rng.gen_range(0..cfgs.len())];
        let colors = cfg.colors();
        let mut g = || random_monomial(&mut rng, &colors);
        let (mut p1, mut m1, mut p2, mut m2) = (g(), g(), g(), g());
        if m1 < p1 {
            std::mem::swap(&mut p1, &mut m1);
        }
        if m2 < p2 {
            std::mem::swap(&mut p2, &mut m2);
        }
        let lhs = p1.mul(&p2);
        let rhs = m1.mul(&m2);
        let strict = p1 < m1 || p2 < m2;
        let ord = compare(&lhs, &rhs);
        let ok = if strict { ord == Ordering::Less } else { ord != Ordering::Greater };
        ensure(ok, || format!("{p1} <= {m1}, {p2} <= {m2} but {lhs} vs {rhs}"))?;
        quads += 1;
    }
    Ok(format!("{total} monomials exhaustively, {quads} random quadruples"))
}

fn dc_transitivity() -> Outcome {
    let mut triples = 0;
    for cfg in configs(3) {
        let mut vars: Vec<Variable> =
            (1..=4).flat_map(|d| cfg.colors().into_iter().map(move |c| Variable::new(c, d))).collect();
        vars.sort();
        for (a, &x) in vars.iter().enumerate() {
            for (b, &y) in vars.iter().enumerate().skip(a + 1) {
                if !pair_satisfies_dc(x, y).unwrap() {
                    continue;
                }
                for &z in &vars[b + 1..] {
                    if !pair_satisfies_dc(y, z).unwrap() {
                        continue;
                    }
                    triples += 1;
                    ensure(pair_satisfies_dc(x, z).unwrap(), || format!("{x:?} {y:?} {z:?}"))?;
                    ensure(satisfies_dc(&Monomial::new(vec![x, y, z])), || format!("{x:?} {y:?} {z:?}"))?;
                }
            }
        }
    }
    Ok(format!("{triples} chained triples"))
}

fn intertwiner_bullets() -> Outcome {
    let mut checked = 0;
    for cfg in configs(3) {
        let mut space = FockSpace::new(cfg).map_err(|e| e.to_string())?;
        for i in 0..=cfg.ell() {
            let mut acts = MonomialActions::new(&mut space, i);
            for n in 0..=4 {
                for mon in enumerate(&cfg, i, n) {
                    let r = check_bullets_with(&mut acts, &mon, i, None).map_err(|e| e.to_string())?;
                    ensure(r.ok(), || format!("{cfg:?} i={i}: {r:?}"))?;
                    ensure(kill_criterion_holds(acts.space(), &r.spec), || format!("{cfg:?} i={i} {mon}: kill"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} monomials"))
}

fn tail_suite() -> Outcome {
    let mut cases = 0;
    for cfg in configs(4) {
        let mut space = FockSpace::new(cfg).map_err(|e| e.to_string())?;
        for i in 0..=cfg.ell() {
            let r = verify_tail(&mut space, i, 5.max(periodic_tail(&cfg, i).unwrap().f), 1_000_000)
                .map_err(|e| e.to_string())?;
            ensure(r.ok, || format!("{cfg:?} i={i}: {r:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (l, m, i) cases"))
}

/// `<lambda, gamma_{rs}> = sum_{j=r..s} lambda_j` in fundamental-weight coordinates.
fn pair_with_color(lambda: &WeightVector, c: Color) -> i64 {
    lambda.coords()[c.row - 1..c.col].iter().sum()
}

fn weight_identities() -> Outcome {
    for cfg in configs(6) {
        let (ell, m) = (cfg.ell(), cfg.m());
        for c in cfg.colors() {
            for r in 1..=m {
                let expected = i64::from(c.row == r);
                ensure(pair_with_color(&cfg.lambda(r), c) == expected, || format!("{cfg:?} lambda_{r} {c}"))?;
                // The library pairing agrees with the coordinate formula.
                let p = cfg.lambda(r).pair(&cfg.color_weight(c));
                ensure(p == Rational64::from_integer(expected), || format!("{cfg:?} pair lambda_{r} {c}"))?;
            }
            for s in m..=ell {
                let expected = i64::from(c.col == s);
                ensure(pair_with_color(&cfg.lambda_prime(s), c) == expected, || format!("{cfg:?} lambda'_{s} {c}"))?;
            }
            // gamma_{rs} = alpha_r + ... + alpha_s in fundamental coordinates.
            let mut gamma = vec![0i64; ell];
            for j in c.row..=c.col {
                gamma[j - 1] += 2;
                if j > 1 {
                    gamma[j - 2] -= 1;
                }
                if j < ell {
                    gamma[j] -= 1;
                }
            }
            let sum = &cfg.lambda(c.row) + &cfg.lambda_prime(c.col);
            ensure(sum.coords() == gamma.as_slice(), || format!("{cfg:?}: gamma {c} != lambda + lambda'"))?;
            ensure(cfg.color_weight(c).coords() == gamma.as_slice(), || format!("{cfg:?}: weight of {c}"))?;
        }
        let unit = |j: usize| {
            let mut v = vec![0i64; ell];
            v[j - 1] = 1;
            v
        };
        for r in 1..=m {
            let s = (1..=r).fold(WeightVector::zero(ell), |acc, k| acc + cfg.lambda(k));
            ensure(s.coords() == unit(r).as_slice(), || format!("{cfg:?}: omega_{r} row sum"))?;
        }
        for s in m..=ell {
            let t = (s..=ell).fold(WeightVector::zero(ell), |acc, k| acc + cfg.lambda_prime(k));
            ensure(t.coords() == unit(s).as_slice(), || format!("{cfg:?}: omega_{s} column sum"))?;
        }
        ensure(cfg.omega().coords() == unit(m).as_slice(), || format!("{cfg:?}: omega"))?;
    }
    Ok("all (l, m) with l <= 6".into())
}

/// Extra translations needed before the admissible vectors reaching `comp` span it, up to `max_steps`.
fn spanned_after(space: &mut FockSpace, i: usize, translation: i64, comp: &SliceComponent, max_steps: i64) -> Option<i64> {
    let cfg = *space.config();
    let omega = cfg.omega();
    let wi = cfg.fundamental(i);
    let d = Rational64::from_integer(comp.oscillator_degree as i64);
    for k in 1..=max_steps {
        let n = translation - k;
        let point = &comp.lattice - &omega.scale((cfg.ell() as i64 + 1) * n);
        let beta = &point - &wi;
        let depth = d + (point.pair(&point) - wi.pair(&wi)) / 2;
        if !depth.is_integer() || depth.to_integer() < 0 || depth.to_integer() > 24 {
            return None;
        }
        let mons: Vec<Monomial> =
            enumerate(&cfg, i, depth.to_integer() as u32).filter(|m| m.weight(&cfg) == beta).collect();
        let mut acts = MonomialActions::new(space, i);
        let vs: Vec<_> = mons.iter().map(|m| acts.act(m)).collect();
        let r = rank(&vs);
        if r != vs.len() {
            return None;
        }
        if BigUint::from(r) == comp.full_dim {
            return Some(k);
        }
    }
    None
}

fn standard_slices() -> Outcome {
    let mut components = 0;
    let mut not_spanned: Vec<(GradationConfig, usize, i64, SliceComponent)> = Vec::new();
    for cfg in configs(2) {
        let mut space = FockSpace::new(cfg).map_err(|e| e.to_string())?;
        for i in 0..=cfg.ell() {
            for n in -1..=1 {
                let r = standard_slice(&mut space, i, n, 4, 1_000_000).map_err(|e| e.to_string())?;
                ensure(!r.truncated, || format!("{cfg:?} i={i} n={n}: truncated"))?;
                for c in &r.components {
                    ensure(c.independent, || format!("{cfg:?} i={i} n={n}: dependent {c:?}"))?;
                    ensure(BigUint::from(c.rank) <= c.full_dim, || format!("{cfg:?}: rank above dimension {c:?}"))?;
                    ensure(c.full_dim == oscillator_state_count(cfg.ell(), c.oscillator_degree), || "dim".into())?;
                    if !c.spanning {
                        not_spanned.push((cfg, i, n, c.clone()));
                    }
                }
                components += r.components.len();
            }
        }
    }
    if not_spanned.is_empty() {
        return Ok(format!("{components} components independent and spanned"));
    }
    let smallest = not_spanned.iter().map(|t| t.2.abs()).min().unwrap();
    let mut steps = BTreeSet::new();
    let mut unresolved = 0;
    for (cfg, i, n, c) in &not_spanned {
        let mut space = FockSpace::new(*cfg).unwrap();
        match spanned_after(&mut space, *i, *n, c, 2) {
            Some(k) => {
                steps.insert(k);
            }
            None => unresolved += 1,
        }
    }
    let (cfg, i, n, c) = &not_spanned[0];
    Err(format!(
        "independent in all {components} components; spanning fails in {} (smallest failing |n| = {smallest}; \
         e.g. l={} m={} i={i} n={n} lattice {} oscillator degree {}: rank {} of {}); \
         further translations needed: {steps:?}, unresolved within 2 steps: {unresolved}",
        not_spanned.len(),
        cfg.ell(),
        cfg.m(),
        c.lattice,
        c.oscillator_degree,
        c.rank,
        c.full_dim,
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("main theorem: admissible monomials form a basis (l <= 3, n <= 6)", main_theorem),
        ("Rogers-Ramanujan counts for l = 1, n <= 12", rogers_ramanujan),
        ("relation suite (l <= 3, n <= 6, oscillator degree <= 3)", relation_suite),
        ("commutativity of g_1 modes (l <= 3, |modes| <= 3)", commutativity),
        ("initial action table (l <= 4)", initial_table),
        ("leading-term minimality (l <= 3, n <= 8)", leading_terms),
        ("order laws and multiplicativity", order_laws),
        ("difference-condition transitivity (depth <= 4, l <= 3)", dc_transitivity),
        ("intertwiner bullets (degree >= -4, l <= 3)", intertwiner_bullets),
        ("periodic tail suite (l <= 4)", tail_suite),
        ("weight identities (l <= 6)", weight_identities),
        ("standard-module slices (l <= 2, |n| <= 1, depth <= 4)", standard_slices),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
