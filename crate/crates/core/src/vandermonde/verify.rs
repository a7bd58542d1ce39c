//! Verifiers for the determinant identities, each returning a
//! [`VerificationReport`] carrying both sides and the verdict.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DetAlgorithm, ExactMatrix};
use crate::random::{random_matrix, trial_rng};
use crate::ring::{MultiPoly, Ring, RingValue, Variables};
use crate::subsets::binomial;

use super::constructions::{
    column_scaling_exponent, eta_matrix, hdv_shape, mu_matrix, mu_prime_with, pairing_matrix_with,
    sym_power_matrix, veronese_matrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// Classical Vandermonde determinant in one affine variable per row.
    Affine,
    /// `det(nu^d mu X) = (mu' X)^n`.
    Hdv,
    /// `det(eta^d X) = +-mu' X`.
    Dual,
    /// Column operations on `X` and their effect on both sides of `Hdv`.
    Lemma,
    /// `det S^d(u) = (det u)^C(m+d-1, m)`.
    Sym,
    /// Pairing matrix is diagonal with determinant `+-(mu' X)^(n+1)`.
    Abstract,
    /// The naive guess `det(nu^d X) = mu' X`; false once `n >= 2`.
    Naive,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Affine,
        Identity::Hdv,
        Identity::Dual,
        Identity::Lemma,
        Identity::Sym,
        Identity::Abstract,
        Identity::Naive,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Affine => "affine",
            Identity::Hdv => "hdv",
            Identity::Dual => "dual",
            Identity::Lemma => "lemma",
            Identity::Sym => "sym",
            Identity::Abstract => "abstract",
            Identity::Naive => "naive",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equal,
    EqualUpToSign,
    Unequal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn symbol(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// One named sub-check of a composite identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: Identity,
    /// Projective dimension; the order `m` of `u` for [`Identity::Sym`].
    pub n: usize,
    pub d: usize,
    pub ring: Ring,
    pub lhs: RingValue,
    pub rhs: RingValue,
    pub verdict: Verdict,
    pub sign: Option<Sign>,
    pub seed: Option<u64>,
    /// Sub-checks of composite identities; when present, the verdict is
    /// `Equal` only if all of them hold.
    pub checks: Vec<NamedCheck>,
}

/// Serialized form of a [`VerificationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub identity: Identity,
    pub n: usize,
    pub d: usize,
    pub ring: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<NamedCheck>,
}

impl VerificationReport {
    fn new(identity: Identity, n: usize, d: usize, lhs: RingValue, rhs: RingValue) -> Self {
        let verdict = if lhs == rhs {
            Verdict::Equal
        } else {
            Verdict::Unequal
        };
        VerificationReport {
            identity,
            n,
            d,
            ring: lhs.ring(),
            lhs,
            rhs,
            verdict,
            sign: None,
            seed: None,
            checks: Vec::new(),
        }
    }

    fn up_to_sign(identity: Identity, n: usize, d: usize, lhs: RingValue, rhs: RingValue) -> Self {
        let mut report = Self::new(identity, n, d, lhs, rhs);
        let (verdict, sign) = compare_up_to_sign(&report.lhs, &report.rhs);
        report.verdict = verdict;
        report.sign = sign;
        report
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn is_equal(&self) -> bool {
        matches!(self.verdict, Verdict::Equal | Verdict::EqualUpToSign)
    }

    /// Whether the verdict is the one the identity predicts: equality (up
    /// to sign where applicable) for everything except the naive guess in
    /// dimension at least two, which is expected to fail.
    pub fn matches_expectation(&self) -> bool {
        match self.identity {
            Identity::Naive if self.n >= 2 => self.verdict == Verdict::Unequal,
            Identity::Dual | Identity::Abstract => self.is_equal(),
            _ => self.verdict == Verdict::Equal,
        }
    }

    pub fn to_document(&self) -> ReportDocument {
        ReportDocument {
            identity: self.identity,
            n: self.n,
            d: self.d,
            ring: self.ring.to_string(),
            lhs: self.lhs.to_text(),
            rhs: self.rhs.to_text(),
            verdict: self.verdict,
            sign: self.sign,
            seed: self.seed,
            checks: self.checks.clone(),
        }
    }
}

/// `Equal` (no sign) when both sides vanish, `EqualUpToSign` with the sign
/// `lhs / rhs` when they agree up to sign, `Unequal` otherwise.
pub fn compare_up_to_sign(lhs: &RingValue, rhs: &RingValue) -> (Verdict, Option<Sign>) {
    if lhs == rhs {
        if lhs.is_zero() {
            (Verdict::Equal, None)
        } else {
            (Verdict::EqualUpToSign, Some(Sign::Plus))
        }
    } else if *lhs == rhs.neg() {
        (Verdict::EqualUpToSign, Some(Sign::Minus))
    } else {
        (Verdict::Unequal, None)
    }
}

/// Both sides of `det(nu^d mu X) = (mu' X)^n`.
pub fn hdv_sides(x: &ExactMatrix, algorithm: DetAlgorithm) -> Result<(RingValue, RingValue)> {
    let (n, d) = hdv_shape(x)?;
    let lhs = veronese_matrix(&mu_matrix(x)?, d)?.det(algorithm)?;
    let rhs = mu_prime_with(x, algorithm)?.pow(n as u64);
    Ok((lhs, rhs))
}

pub fn verify_hdv(x: &ExactMatrix, algorithm: DetAlgorithm) -> Result<VerificationReport> {
    let (n, d) = hdv_shape(x)?;
    let (lhs, rhs) = hdv_sides(x, algorithm)?;
    Ok(VerificationReport::new(Identity::Hdv, n, d, lhs, rhs))
}

pub fn verify_dual(x: &ExactMatrix, algorithm: DetAlgorithm) -> Result<VerificationReport> {
    let (n, d) = hdv_shape(x)?;
    let lhs = eta_matrix(x, d)?.det(algorithm)?;
    let rhs = mu_prime_with(x, algorithm)?;
    Ok(VerificationReport::up_to_sign(
        Identity::Dual,
        n,
        d,
        lhs,
        rhs,
    ))
}

/// Checks that adding `alpha` times column `src` to column `dst` leaves
/// both sides of the degree-`d` identity unchanged, and that scaling
/// column `dst` by `alpha` multiplies both by `alpha^(n C(n+d, n+1))`.
///
/// The top-level `lhs`/`rhs` are the left side after scaling and the
/// predicted value; all four comparisons are listed in `checks`.
pub fn verify_column_lemma(
    x: &ExactMatrix,
    alpha: &RingValue,
    src: usize,
    dst: usize,
    algorithm: DetAlgorithm,
) -> Result<VerificationReport> {
    let (n, d) = hdv_shape(x)?;
    if !alpha.same_ring(&x.ring().zero()) {
        return Err(Error::RingMismatch {
            left: x.ring().to_string(),
            right: alpha.ring().to_string(),
        });
    }
    let (lhs, rhs) = hdv_sides(x, algorithm)?;
    let (added_lhs, added_rhs) = hdv_sides(&x.add_scaled_column(src, dst, alpha)?, algorithm)?;
    let (scaled_lhs, scaled_rhs) = hdv_sides(&x.scale_column(dst, alpha)?, algorithm)?;
    let factor = alpha.pow(column_scaling_exponent(n, d));
    let predicted_lhs = lhs.try_mul(&factor)?;
    let predicted_rhs = rhs.try_mul(&factor)?;

    let check = |name: &str, got: &RingValue, want: &RingValue| NamedCheck {
        name: name.to_string(),
        lhs: got.to_text(),
        rhs: want.to_text(),
        holds: got == want,
    };
    let checks = vec![
        check("add-column/lhs", &added_lhs, &lhs),
        check("add-column/rhs", &added_rhs, &rhs),
        check("scale-column/lhs", &scaled_lhs, &predicted_lhs),
        check("scale-column/rhs", &scaled_rhs, &predicted_rhs),
    ];
    let mut report = VerificationReport::new(Identity::Lemma, n, d, scaled_lhs, predicted_lhs);
    if !checks.iter().all(|c| c.holds) {
        report.verdict = Verdict::Unequal;
    }
    report.checks = checks;
    Ok(report)
}

pub fn verify_sym_power(
    u: &ExactMatrix,
    d: usize,
    algorithm: DetAlgorithm,
) -> Result<VerificationReport> {
    let s = sym_power_matrix(u, d)?;
    let m = u.rows();
    let lhs = s.det(algorithm)?;
    let rhs = u.det(algorithm)?.pow(binomial(m + d - 1, m) as u64);
    Ok(VerificationReport::new(Identity::Sym, m, d, lhs, rhs))
}

/// Pairing matrix is diagonal and `det = +-(mu' X)^(n+1)`.
pub fn verify_abstract(x: &ExactMatrix, algorithm: DetAlgorithm) -> Result<VerificationReport> {
    let (n, d) = hdv_shape(x)?;
    let p = pairing_matrix_with(x, d, algorithm)?;
    let off_diagonal = (0..p.rows())
        .flat_map(|i| (0..p.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && !p.get(i, j).is_zero())
        .count();
    let lhs = p.det(algorithm)?;
    let rhs = mu_prime_with(x, algorithm)?.pow(n as u64 + 1);
    let mut report = VerificationReport::up_to_sign(Identity::Abstract, n, d, lhs, rhs);
    report.checks.push(NamedCheck {
        name: "nonzero-off-diagonal-entries".into(),
        lhs: off_diagonal.to_string(),
        rhs: "0".into(),
        holds: off_diagonal == 0,
    });
    if off_diagonal != 0 {
        report.verdict = Verdict::Unequal;
        report.sign = None;
    }
    Ok(report)
}

/// Degree `d` with `C(n+d, n) = rows`, if any.
pub fn naive_degree(n: usize, rows: usize) -> Option<usize> {
    (0..)
        .map(|d| (d, binomial(n + d, n)))
        .take_while(|&(_, c)| c <= rows)
        .find(|&(_, c)| c == rows)
        .map(|(d, _)| d)
}

/// Compares `det(nu^d X)` with `mu' X` for a `C(n+d, n) x (n+1)` matrix.
pub fn verify_naive(x: &ExactMatrix, algorithm: DetAlgorithm) -> Result<VerificationReport> {
    if x.cols() < 2 {
        return Err(Error::shape("naive identity needs at least 2 columns"));
    }
    let n = x.cols() - 1;
    let d = naive_degree(n, x.rows()).ok_or_else(|| {
        Error::shape(format!(
            "{} rows is not C(n+d, n) for any d with n = {n}",
            x.rows()
        ))
    })?;
    let lhs = veronese_matrix(x, d)?.det(algorithm)?;
    let rhs = mu_prime_with(x, algorithm)?;
    Ok(VerificationReport::new(Identity::Naive, n, d, lhs, rhs))
}

/// Seeded random integer instance of the naive comparison.
pub fn demo_naive_failure(n: usize, d: usize, seed: u64) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Unsupported("n must be >= 1".into()));
    }
    let rows = binomial(n + d, n);
    let x = random_matrix(&mut trial_rng(seed, 0), &Ring::Integer, rows, n + 1);
    Ok(verify_naive(&x, DetAlgorithm::Auto)?.with_seed(seed))
}

/// Classical Vandermonde: `det[x_i^j] = prod_{i<j} (x_j - x_i)`.
pub fn verify_affine(points: &[RingValue], algorithm: DetAlgorithm) -> Result<VerificationReport> {
    let Some(first) = points.first() else {
        return Err(Error::shape("at least one point is required"));
    };
    let ring = first.ring();
    let size = points.len();
    let mut entries = Vec::with_capacity(size * size);
    for x in points {
        let mut power = ring.one();
        for _ in 0..size {
            let next = power.try_mul(x)?;
            entries.push(std::mem::replace(&mut power, next));
        }
    }
    let lhs = ExactMatrix::new(ring.clone(), size, size, entries)?.det(algorithm)?;
    let mut rhs = ring.one();
    for j in 0..size {
        for i in 0..j {
            rhs = rhs.try_mul(&points[j].try_sub(&points[i])?)?;
        }
    }
    Ok(VerificationReport::new(
        Identity::Affine,
        1,
        size - 1,
        lhs,
        rhs,
    ))
}

/// Formal unknowns `x0, .., xd` for the classical identity of degree `d`.
pub fn symbolic_points(d: usize) -> Result<Vec<RingValue>> {
    let vars = Variables::new((0..=d).map(|i| format!("x{i}")))?;
    (0..=d)
        .map(|i| MultiPoly::variable(&vars, i).map(RingValue::Poly))
        .collect()
}
