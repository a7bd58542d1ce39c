//! General position of finite point configurations in projective space.
//!
//! Two routes decide whether every `n + 1` of the `m` points are linearly
//! independent: enumerating the `C(m, n+1)` full-width minors (stopping at
//! the first that vanishes), or a single determinant of the dual matrix
//! `eta^(m-n) X`, which equals the product of those minors up to sign.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DetAlgorithm, ExactMatrix};
use crate::random::{random_value, trial_rng};
use crate::ring::{Ring, RingValue};
use crate::subsets::{binomial, combinations};
use crate::vandermonde::eta_matrix;

/// Points of projective `n`-space, one coordinate row each, over the
/// integers or a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    points: ExactMatrix,
}

impl PointConfiguration {
    pub fn new(points: ExactMatrix) -> Result<Self> {
        if matches!(points.ring(), Ring::Polynomial(_)) {
            return Err(Error::Unsupported(
                "point configurations must be over int or mod_p".into(),
            ));
        }
        if points.cols() < 2 {
            return Err(Error::shape(format!(
                "points need at least 2 coordinates (n >= 1), got {}",
                points.cols()
            )));
        }
        if points.rows() == 0 {
            return Err(Error::shape("a configuration needs at least one point"));
        }
        if let Some(i) = (0..points.rows()).find(|&i| points.row(i).iter().all(RingValue::is_zero))
        {
            return Err(Error::shape(format!(
                "row {i} is zero and is not a projective point"
            )));
        }
        Ok(PointConfiguration { points })
    }

    pub fn n(&self) -> usize {
        self.points.cols() - 1
    }

    pub fn m(&self) -> usize {
        self.points.rows()
    }

    pub fn points(&self) -> &ExactMatrix {
        &self.points
    }

    fn require_enough_points(&self) -> Result<()> {
        if self.m() <= self.n() {
            return Err(Error::NotEnoughPoints {
                points: self.m(),
                n: self.n(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Every `(n+1)`-minor, lex order on taken rows, first zero stops.
    MuPrime,
    /// One determinant of `eta^(m-n) X`.
    Eta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenPosVerdict {
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub method: Method,
    pub n: usize,
    pub m: usize,
    pub ring: String,
}

/// True iff every `(n+1)`-subset of points has a nonzero determinant; on
/// failure the lex-least vanishing subset is returned as witness.
pub fn in_general_position(cfg: &PointConfiguration) -> Result<GenPosVerdict> {
    cfg.require_enough_points()?;
    let n = cfg.n();
    let cols: Vec<usize> = (0..=n).collect();
    let mut witness = None;
    for rows in combinations(cfg.m(), n + 1) {
        if cfg.points.minor(&rows, &cols)?.is_zero() {
            witness = Some(rows);
            break;
        }
    }
    Ok(GenPosVerdict {
        verdict: witness.is_none(),
        witness,
        method: Method::MuPrime,
        n,
        m: cfg.m(),
        ring: cfg.points.ring().to_string(),
    })
}

/// Same verdict through `det(eta^(m-n) X) != 0`. No witness is produced.
pub fn in_general_position_via_eta(cfg: &PointConfiguration) -> Result<GenPosVerdict> {
    in_general_position_via_eta_with(cfg, DetAlgorithm::Auto)
}

pub fn in_general_position_via_eta_with(
    cfg: &PointConfiguration,
    algorithm: DetAlgorithm,
) -> Result<GenPosVerdict> {
    cfg.require_enough_points()?;
    let d = cfg.m() - cfg.n();
    let det = eta_matrix(&cfg.points, d)?.det(algorithm)?;
    Ok(GenPosVerdict {
        verdict: !det.is_zero(),
        witness: None,
        method: Method::Eta,
        n: cfg.n(),
        m: cfg.m(),
        ring: cfg.points.ring().to_string(),
    })
}

/// Uniform random configuration of `m` points in projective `n`-space with
/// no zero row. With probability `degenerate` one random `(n+1)`-subset is
/// made dependent by replacing a point with a combination of the others.
pub fn random_configuration<R: Rng>(
    rng: &mut R,
    ring: &Ring,
    n: usize,
    m: usize,
    degenerate: f64,
) -> Result<PointConfiguration> {
    let width = n + 1;
    let mut rows: Vec<Vec<RingValue>> = (0..m).map(|_| nonzero_row(rng, ring, width)).collect();
    if m > n && rng.gen_bool(degenerate) {
        let picked: Vec<usize> = rand::seq::index::sample(rng, m, n + 1).into_vec();
        let (target, sources) = picked.split_last().expect("n+1 >= 2 points");
        loop {
            let mut combo = vec![ring.zero(); width];
            for &s in sources {
                let c = random_value(rng, ring);
                for (k, slot) in combo.iter_mut().enumerate() {
                    *slot = slot.try_add(&rows[s][k].try_mul(&c)?)?;
                }
            }
            if !combo.iter().all(RingValue::is_zero) {
                rows[*target] = combo;
                break;
            }
        }
    }
    PointConfiguration::new(ExactMatrix::from_rows(ring.clone(), rows)?)
}

fn nonzero_row<R: Rng>(rng: &mut R, ring: &Ring, width: usize) -> Vec<RingValue> {
    loop {
        let row: Vec<RingValue> = (0..width).map(|_| random_value(rng, ring)).collect();
        if !row.iter().all(RingValue::is_zero) {
            return row;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchTrial {
    pub trial: u64,
    pub verdict: bool,
    pub agree: bool,
    pub mu_route_ns: u64,
    pub eta_route_ns: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub ring: String,
    pub seed: u64,
    pub trials: u64,
    /// Minors of order `n+1` examined by the minor route (worst case).
    pub mu_route_minors: usize,
    /// Order of the single determinant taken by the eta route.
    pub eta_route_order: usize,
    pub mu_route_total_ns: u64,
    pub eta_route_total_ns: u64,
    pub agreement_rate: f64,
    pub general_position_count: u64,
    pub per_trial: Vec<BenchTrial>,
}

/// Times both routes on `trials` seeded random configurations of `n + d`
/// points. Trial `t` draws from its own stream of `seed`, so inputs do not
/// depend on how many trials run.
pub fn bench_genpos(
    n: usize,
    d: usize,
    trials: u64,
    seed: u64,
    ring: &Ring,
) -> Result<BenchReport> {
    if n == 0 || d == 0 {
        return Err(Error::shape("bench needs n >= 1 and d >= 1"));
    }
    let m = n + d;
    let mut per_trial = Vec::with_capacity(trials as usize);
    for t in 0..trials {
        let cfg = random_configuration(&mut trial_rng(seed, t), ring, n, m, 0.0)?;
        let start = Instant::now();
        let by_minors = in_general_position(&cfg)?;
        let mu_ns = start.elapsed().as_nanos() as u64;
        let start = Instant::now();
        let by_eta = in_general_position_via_eta(&cfg)?;
        let eta_ns = start.elapsed().as_nanos() as u64;
        per_trial.push(BenchTrial {
            trial: t,
            verdict: by_minors.verdict,
            agree: by_minors.verdict == by_eta.verdict,
            mu_route_ns: mu_ns,
            eta_route_ns: eta_ns,
        });
    }
    let agreeing = per_trial.iter().filter(|t| t.agree).count();
    Ok(BenchReport {
        n,
        d,
        m,
        ring: ring.to_string(),
        seed,
        trials,
        mu_route_minors: binomial(m, n + 1),
        eta_route_order: binomial(m, n),
        mu_route_total_ns: per_trial.iter().map(|t| t.mu_route_ns).sum(),
        eta_route_total_ns: per_trial.iter().map(|t| t.eta_route_ns).sum(),
        agreement_rate: if trials == 0 {
            1.0
        } else {
            agreeing as f64 / trials as f64
        },
        general_position_count: per_trial.iter().filter(|t| t.verdict).count() as u64,
        per_trial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(rows: &[&[i64]]) -> PointConfiguration {
        PointConfiguration::new(ExactMatrix::from_ints(rows)).unwrap()
    }

    #[test]
    fn simplex_plus_ones() {
        let c = cfg(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let v = in_general_position(&c).unwrap();
        assert!(v.verdict);
        assert_eq!(v.witness, None);
        assert!(in_general_position_via_eta(&c).unwrap().verdict);
    }

    #[test]
    fn collinear_triple() {
        let c = cfg(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let v = in_general_position(&c).unwrap();
        assert!(!v.verdict);
        assert_eq!(v.witness, Some(vec![0, 1, 2]));
        assert!(!in_general_position_via_eta(&c).unwrap().verdict);
    }

    #[test]
    fn rejects_bad_configurations() {
        let zero_row = ExactMatrix::from_ints(&[[1, 0], [0, 0]]);
        assert_eq!(
            PointConfiguration::new(zero_row).unwrap_err().code(),
            "shape-violation"
        );
        let c = cfg(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(
            in_general_position(&c).unwrap_err().code(),
            "not-enough-points"
        );
        assert_eq!(
            in_general_position_via_eta(&c).unwrap_err().code(),
            "not-enough-points"
        );
        let poly = Ring::polynomial(["x"]).unwrap();
        let m = ExactMatrix::from_ints_in(&poly, &[[1, 0], [0, 1]]);
        assert_eq!(
            PointConfiguration::new(m).unwrap_err().code(),
            "unsupported"
        );
    }

    #[test]
    fn bench_with_no_trials_is_empty() {
        let r = bench_genpos(2, 3, 0, 1, &Ring::Integer).unwrap();
        assert!(r.per_trial.is_empty());
        assert_eq!(r.mu_route_minors, 10);
        assert_eq!(r.eta_route_order, 10);
    }

    #[test]
    fn bench_small_run_agrees() {
        let ring = Ring::prime_field(1_000_003).unwrap();
        let r = bench_genpos(2, 3, 5, 42, &ring).unwrap();
        assert_eq!(r.per_trial.len(), 5);
        assert_eq!(r.agreement_rate, 1.0);
    }

    #[test]
    fn forced_degeneracy_is_detected() {
        let ring = Ring::prime_field(101).unwrap();
        for t in 0..50 {
            let c = random_configuration(&mut trial_rng(3, t), &ring, 2, 5, 1.0).unwrap();
            assert!(!in_general_position(&c).unwrap().verdict, "trial {t}");
            assert!(
                !in_general_position_via_eta(&c).unwrap().verdict,
                "trial {t}"
            );
        }
    }
}
