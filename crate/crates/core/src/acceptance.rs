//! The acceptance suite: every identity checked at its pinned sizes, trial
//! counts and time budgets. Shared by the `acceptance` test target and the
//! CLI `selftest` command.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::genpos::{
    in_general_position, in_general_position_via_eta, random_configuration, PointConfiguration,
};
use crate::linalg::{DetAlgorithm, ExactMatrix};
use crate::random::{random_matrix, symbolic_matrix, trial_rng};
use crate::ring::{Ring, RingValue, Variables, DEFAULT_PRIME};
use crate::subsets::binomial;
use crate::vandermonde::{
    demo_naive_failure, symbolic_points, verify_abstract, verify_affine, verify_column_lemma,
    verify_dual, verify_hdv, verify_sym_power, Sign, Verdict,
};

/// Default cap on `C(n+d, n)` for symbolic verification.
pub const DEFAULT_SYMBOLIC_CAP: usize = 10;

/// `(n, d)` cases verified as polynomial identities.
pub const SYMBOLIC_HDV_CASES: [(usize, usize); 7] =
    [(1, 1), (1, 2), (1, 3), (2, 2), (2, 1), (3, 1), (4, 1)];

/// `(n, d)` cases for the pairing-matrix check.
pub const PAIRING_CASES: [(usize, usize); 3] = [(1, 2), (2, 2), (2, 3)];

/// Seed of the fixed counterexample to the naive identity.
pub const NAIVE_SEED: u64 = 1;

/// Whole-suite budget.
pub const SUITE_BUDGET: Duration = Duration::from_secs(300);

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Divides every trial count by ten (at least one trial is kept).
    pub quick: bool,
    pub symbolic_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 2014,
            quick: false,
            symbolic_cap: DEFAULT_SYMBOLIC_CAP,
        }
    }
}

impl SuiteConfig {
    pub fn quick() -> Self {
        SuiteConfig {
            quick: true,
            ..Self::default()
        }
    }

    /// Trials criterion `id` runs under this configuration.
    pub fn trials(&self, id: u8) -> u64 {
        let full = full_trials(id).unwrap_or(1);
        if self.quick {
            (full / 10).max(1)
        } else {
            full
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {:<28} {:>8.2}s",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(b) = self.budget {
            write!(f, " (budget {}s)", b.as_secs())?;
        }
        write!(f, "  {}", self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "symbolic affine vandermonde"),
    (2, "symbolic hdv"),
    (3, "numeric hdv"),
    (4, "dual corollary"),
    (5, "column lemma"),
    (6, "symmetric power"),
    (7, "abstract pairing"),
    (8, "naive identity failure"),
    (9, "determinant oracles"),
    (10, "general position routes"),
];

/// Seeded trials per case at full strength; `None` for criteria that
/// check fixed instances only.
pub fn full_trials(id: u8) -> Option<u64> {
    match id {
        3 | 4 => Some(100),
        5..=7 => Some(50),
        9 => Some(200),
        10 => Some(500),
        _ => None,
    }
}

/// Wall-clock budget of criterion `id`, if it has one.
pub fn budget(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(10)),
        2 | 3 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> CriterionOutcome {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| *n)
        .unwrap_or("unknown");
    let start = Instant::now();
    let result = match id {
        1 => symbolic_affine(),
        2 => symbolic_hdv(cfg),
        3 => numeric_hdv(cfg),
        4 => dual_corollary(cfg),
        5 => column_lemma(cfg),
        6 => symmetric_power(cfg),
        7 => abstract_pairing(cfg),
        8 => naive_failure(),
        9 => determinant_oracles(cfg),
        10 => general_position(cfg),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = start.elapsed();
    let budget = budget(id);
    let within = budget.is_none_or(|b| elapsed <= b);
    let (passed, mut detail) = match result {
        Ok(detail) => (within, detail),
        Err(why) => (false, why),
    };
    if !within {
        detail.push_str(" [over budget]");
    }
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed,
        budget,
    }
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .map(|(id, _)| run_criterion(*id, cfg))
        .collect()
}

type Outcome = std::result::Result<String, String>;

fn fail(e: Error) -> String {
    format!("error: {e}")
}

/// `(n, d)` with `1 <= n, d <= 4` and `C(n+d, n) <= 35`.
pub fn numeric_grid() -> Vec<(usize, usize)> {
    (1..=4)
        .flat_map(|n| (1..=4).map(move |d| (n, d)))
        .filter(|&(n, d)| binomial(n + d, n) <= 35)
        .collect()
}

fn prime_field() -> Ring {
    Ring::prime_field(DEFAULT_PRIME).expect("default modulus is prime")
}

/// Distinct sub-seed per (case, trial, ring) so that no two instances
/// share a stream.
fn stream(n: usize, d: usize, trial: u64, ring_slot: u64) -> u64 {
    ((n as u64 * 16 + d as u64) << 40) | (ring_slot << 32) | trial
}

fn symbolic_affine() -> Outcome {
    for d in 0..=5 {
        let pts = symbolic_points(d).map_err(fail)?;
        let r = verify_affine(&pts, DetAlgorithm::Auto).map_err(fail)?;
        if r.verdict != Verdict::Equal {
            return Err(format!("degree {d}: {} != {}", r.lhs, r.rhs));
        }
    }
    Ok("d = 0..5 hold as polynomial identities".into())
}

fn symbolic_hdv(cfg: &SuiteConfig) -> Outcome {
    let mut parts = Vec::new();
    for &(n, d) in &SYMBOLIC_HDV_CASES {
        let size = binomial(n + d, n);
        if size > cfg.symbolic_cap {
            return Err(fail(Error::SymbolicCap {
                size,
                cap: cfg.symbolic_cap,
            }));
        }
        let x = symbolic_matrix(n + d, n + 1).map_err(fail)?;
        let r = verify_hdv(&x, DetAlgorithm::Auto).map_err(fail)?;
        if r.verdict != Verdict::Equal {
            return Err(format!("(n,d)=({n},{d}) fails symbolically"));
        }
        let terms = r.lhs.as_poly().map_or(0, |p| p.len());
        parts.push(format!("({n},{d}):{terms} terms"));
    }
    Ok(format!("identities hold: {}", parts.join(" ")))
}

fn numeric_hdv(cfg: &SuiteConfig) -> Outcome {
    let trials = cfg.trials(3);
    let grid = numeric_grid();
    let rings = [Ring::Integer, prime_field()];
    let jobs: Vec<(usize, usize, usize, u64)> = grid
        .iter()
        .flat_map(|&(n, d)| (0..2).flat_map(move |r| (0..trials).map(move |t| (n, d, r, t))))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(n, d, r, t)| {
            let mut rng = trial_rng(cfg.seed, stream(n, d, t, r as u64));
            let x = random_matrix(&mut rng, &rings[r], n + d, n + 1);
            match verify_hdv(&x, DetAlgorithm::Auto) {
                Ok(rep) if rep.verdict == Verdict::Equal => None,
                Ok(_) => Some(format!("({n},{d}) {} trial {t} unequal", rings[r].tag())),
                Err(e) => Some(fail(e)),
            }
        })
        .collect();
    if let Some(first) = failures.first() {
        return Err(format!("{} failures, first: {first}", failures.len()));
    }
    Ok(format!(
        "{} cells x {trials} trials x {{int, mod {DEFAULT_PRIME}}} exact",
        grid.len()
    ))
}

/// Empirical sign `det(eta^d X) / mu' X` per `(n, d)` over random integer and
/// `Z/p` instances; errors when it is not constant.
pub fn dual_signs(seed: u64, trials: u64) -> Result<BTreeMap<(usize, usize), Sign>> {
    let rings = [Ring::Integer, prime_field()];
    let mut signs = BTreeMap::new();
    for (n, d) in numeric_grid() {
        let found: Vec<(Verdict, Option<Sign>)> = (0..2)
            .flat_map(|r| (0..trials).map(move |t| (r, t)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(r, t)| {
                let mut rng = trial_rng(seed, stream(n, d, t, 2 + r as u64));
                let x = random_matrix(&mut rng, &rings[r], n + d, n + 1);
                verify_dual(&x, DetAlgorithm::Auto).map(|rep| (rep.verdict, rep.sign))
            })
            .collect::<Result<_>>()?;
        if found.iter().any(|(v, _)| *v == Verdict::Unequal) {
            return Err(Error::Unsupported(format!(
                "({n},{d}): det(eta X) differs from mu' X beyond sign"
            )));
        }
        let mut seen = found.iter().filter_map(|(_, s)| *s);
        let Some(first) = seen.next() else {
            return Err(Error::Unsupported(format!(
                "({n},{d}): every instance vanished, sign undetermined"
            )));
        };
        if seen.any(|s| s != first) {
            return Err(Error::Unsupported(format!(
                "({n},{d}): sign is not constant"
            )));
        }
        signs.insert((n, d), first);
    }
    Ok(signs)
}

fn dual_corollary(cfg: &SuiteConfig) -> Outcome {
    let signs = dual_signs(cfg.seed, cfg.trials(4)).map_err(fail)?;
    let worked = ExactMatrix::from_ints(&[[1, 0], [0, 1], [1, 1]]);
    let r = verify_dual(&worked, DetAlgorithm::Auto).map_err(fail)?;
    if r.sign != Some(Sign::Plus) {
        return Err(format!("worked example sign {:?}, expected +", r.sign));
    }
    if signs.get(&(1, 2)) != Some(&Sign::Plus) {
        return Err("epsilon(1,2) is not +".into());
    }
    let listing: Vec<String> = signs
        .iter()
        .map(|((n, d), s)| format!("({n},{d}){}", s.symbol()))
        .collect();
    Ok(format!("constant signs: {}", listing.join(" ")))
}

fn column_lemma(cfg: &SuiteConfig) -> Outcome {
    let trials = cfg.trials(5);
    let grid = numeric_grid();
    let jobs: Vec<(usize, usize, u64)> = grid
        .iter()
        .flat_map(|&(n, d)| (0..trials).map(move |t| (n, d, t)))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(n, d, t)| {
            let mut rng = trial_rng(cfg.seed, stream(n, d, t, 4));
            let x = random_matrix(&mut rng, &Ring::Integer, n + d, n + 1);
            let src = rng.gen_range(0..=n);
            let dst = (src + rng.gen_range(1..=n)) % (n + 1);
            for alpha in [2, 3, -1] {
                match verify_column_lemma(&x, &RingValue::from(alpha), src, dst, DetAlgorithm::Auto)
                {
                    Ok(rep) if rep.verdict == Verdict::Equal => {}
                    Ok(rep) => {
                        let bad: Vec<&str> = rep
                            .checks
                            .iter()
                            .filter(|c| !c.holds)
                            .map(|c| c.name.as_str())
                            .collect();
                        return Some(format!("({n},{d}) trial {t} alpha {alpha}: {bad:?}"));
                    }
                    Err(e) => return Some(fail(e)),
                }
            }
            None
        })
        .collect();
    if let Some(first) = failures.first() {
        return Err(format!("{} failures, first: {first}", failures.len()));
    }
    Ok(format!(
        "{} cells x {trials} trials x alpha in {{2,3,-1}}: invariance and scaling exact",
        grid.len()
    ))
}

fn symmetric_power(cfg: &SuiteConfig) -> Outcome {
    let trials = cfg.trials(6);
    let jobs: Vec<(usize, usize, u64)> = (1..=4)
        .flat_map(|m| (0..=4).flat_map(move |d| (0..trials).map(move |t| (m, d, t))))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(m, d, t)| {
            let mut rng = trial_rng(cfg.seed, stream(m, d, t, 5));
            let u = random_matrix(&mut rng, &Ring::Integer, m, m);
            match verify_sym_power(&u, d, DetAlgorithm::Auto) {
                Ok(rep) if rep.verdict == Verdict::Equal => None,
                Ok(_) => Some(format!("(m,d)=({m},{d}) trial {t} unequal")),
                Err(e) => Some(fail(e)),
            }
        })
        .collect();
    if let Some(first) = failures.first() {
        return Err(format!("{} failures, first: {first}", failures.len()));
    }
    let vars = Variables::new(["a", "b", "c", "e"]).map_err(fail)?;
    let ring = Ring::Polynomial(vars);
    let u = ExactMatrix::from_rows(
        ring.clone(),
        ["a", "b", "c", "e"]
            .chunks(2)
            .map(|r| {
                r.iter()
                    .map(|v| ring.parse_value(v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(fail)?,
    )
    .map_err(fail)?;
    let rep = verify_sym_power(&u, 2, DetAlgorithm::Auto).map_err(fail)?;
    if rep.verdict != Verdict::Equal {
        return Err("symbolic (m,d)=(2,2) fails".into());
    }
    Ok(format!(
        "m = 1..4, d = 0..4 x {trials} trials exact; symbolic (2,2): {}",
        rep.rhs
    ))
}

fn abstract_pairing(cfg: &SuiteConfig) -> Outcome {
    let trials = cfg.trials(7);
    let mut parts = Vec::new();
    for &(n, d) in &PAIRING_CASES {
        let found: Vec<(Verdict, Option<Sign>, bool)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(cfg.seed, stream(n, d, t, 6));
                let x = random_matrix(&mut rng, &Ring::Integer, n + d, n + 1);
                verify_abstract(&x, DetAlgorithm::Auto)
                    .map(|r| (r.verdict, r.sign, r.checks.iter().all(|c| c.holds)))
            })
            .collect::<Result<_>>()
            .map_err(fail)?;
        if found.iter().any(|(_, _, diag)| !diag) {
            return Err(format!("({n},{d}): pairing matrix not diagonal"));
        }
        if found.iter().any(|(v, _, _)| *v == Verdict::Unequal) {
            return Err(format!(
                "({n},{d}): det differs from (mu' X)^(n+1) beyond sign"
            ));
        }
        let mut signs = found.iter().filter_map(|(_, s, _)| *s);
        let first = signs
            .next()
            .ok_or_else(|| format!("({n},{d}): all instances vanished"))?;
        if signs.any(|s| s != first) {
            return Err(format!("({n},{d}): sign not constant"));
        }
        parts.push(format!("({n},{d}){}", first.symbol()));
    }
    Ok(format!("diagonal, constant signs: {}", parts.join(" ")))
}

fn naive_failure() -> Outcome {
    let r = demo_naive_failure(2, 2, NAIVE_SEED).map_err(fail)?;
    if r.verdict != Verdict::Unequal {
        return Err("(2,2) naive instance unexpectedly equal".into());
    }
    for d in 1..=4 {
        let r = demo_naive_failure(1, d, NAIVE_SEED).map_err(fail)?;
        if r.verdict != Verdict::Equal {
            return Err(format!("n = 1, d = {d}: projective Vandermonde fails"));
        }
    }
    Ok(format!(
        "(2,2) seed {NAIVE_SEED}: {} != {}; n = 1 equal for d = 1..4",
        r.lhs, r.rhs
    ))
}

fn determinant_oracles(cfg: &SuiteConfig) -> Outcome {
    let trials = cfg.trials(9);
    let poly = Ring::polynomial(["x", "y", "z"]).map_err(fail)?;
    let rings = [Ring::Integer, poly];
    let jobs: Vec<(usize, usize, u64)> = (0..2)
        .flat_map(|r| (1..=6).flat_map(move |k| (0..trials).map(move |t| (r, k, t))))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(r, k, t)| {
            let mut rng = trial_rng(cfg.seed, stream(k, 0, t, 7 + r as u64));
            let m = random_matrix(&mut rng, &rings[r], k, k);
            let dets: Result<Vec<RingValue>> = [
                DetAlgorithm::Cofactor,
                DetAlgorithm::Berkowitz,
                DetAlgorithm::Bareiss,
            ]
            .iter()
            .map(|&a| m.det(a))
            .collect();
            match dets {
                Ok(v) if v[0] == v[1] && v[1] == v[2] => None,
                Ok(_) => Some(format!("{} order {k} trial {t} disagree", rings[r].tag())),
                Err(e) => Some(fail(e)),
            }
        })
        .collect();
    if let Some(first) = failures.first() {
        return Err(format!("{} failures, first: {first}", failures.len()));
    }
    Ok(format!(
        "orders 1..6 x {trials} trials over int and Z[x,y,z] (degree-1 entries) agree"
    ))
}

fn general_position(cfg: &SuiteConfig) -> Outcome {
    let trials = cfg.trials(10);
    let ring = prime_field();
    let results: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let m = 4 + (t % 4) as usize;
            let mut rng = trial_rng(cfg.seed, stream(2, m, t, 9));
            let c = random_configuration(&mut rng, &ring, 2, m, 0.5)?;
            Ok((
                in_general_position(&c)?.verdict,
                in_general_position_via_eta(&c)?.verdict,
            ))
        })
        .collect::<Result<_>>()
        .map_err(fail)?;
    let disagreements = results.iter().filter(|(a, b)| a != b).count();
    if disagreements > 0 {
        return Err(format!(
            "{disagreements} of {trials} configurations disagree"
        ));
    }
    let degenerate = results.iter().filter(|(a, _)| !a).count();

    let collinear = PointConfiguration::new(ExactMatrix::from_ints(&[
        [1, 0, 0],
        [0, 1, 0],
        [1, 1, 0],
        [0, 0, 1],
    ]))
    .map_err(fail)?;
    let v = in_general_position(&collinear).map_err(fail)?;
    let e = in_general_position_via_eta(&collinear).map_err(fail)?;
    if v.verdict || e.verdict || v.witness != Some(vec![0, 1, 2]) {
        return Err("collinear triple misclassified".into());
    }
    let simplex = PointConfiguration::new(ExactMatrix::from_ints(&[
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 1],
    ]))
    .map_err(fail)?;
    if !in_general_position(&simplex).map_err(fail)?.verdict
        || !in_general_position_via_eta(&simplex).map_err(fail)?.verdict
    {
        return Err("simplex plus all-ones point misclassified".into());
    }
    Ok(format!(
        "{trials} configurations ({degenerate} degenerate) agree; constructed examples correct"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_fifteen_cells() {
        let g = numeric_grid();
        assert_eq!(g.len(), 15);
        assert!(!g.contains(&(4, 4)));
        assert!(g.contains(&(4, 3)) && g.contains(&(3, 4)));
    }

    #[test]
    fn streams_do_not_collide() {
        let mut seen = std::collections::HashSet::new();
        for n in 0..8 {
            for d in 0..8 {
                for slot in 0..10 {
                    for t in 0..500 {
                        assert!(seen.insert(stream(n, d, t, slot)));
                    }
                }
            }
        }
    }
}
