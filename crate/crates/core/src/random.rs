//! Seeded generators for the randomized suites.
//!
//! Every trial draws from its own ChaCha stream selected by the trial
//! number, so results do not depend on the order in which trials run.

use num_bigint::{BigInt, RandBigInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::ring::{MultiPoly, Ring, RingValue, Variables};

/// Integer entries are drawn uniformly from `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 9;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform element: `[-9, 9]` over the integers, all of `Z/p` over a prime
/// field. Polynomial rings get a random polynomial of degree at most one.
pub fn random_value<R: Rng>(rng: &mut R, ring: &Ring) -> RingValue {
    match ring {
        Ring::Integer => RingValue::from(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)),
        Ring::PrimeField(f) => {
            let r = rng.gen_biguint_below(f.modulus());
            ring.from_bigint(&BigInt::from(r))
        }
        Ring::Polynomial(vars) => RingValue::Poly(random_linear_poly(rng, vars)),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, ring: &Ring, rows: usize, cols: usize) -> ExactMatrix {
    let entries = (0..rows * cols).map(|_| random_value(rng, ring)).collect();
    ExactMatrix::new(ring.clone(), rows, cols, entries).expect("entries drawn from ring")
}

/// `c_0 + sum c_i x_i` with coefficients in `[-9, 9]`.
pub fn random_linear_poly<R: Rng>(rng: &mut R, vars: &Variables) -> MultiPoly {
    let n = vars.len();
    let mut terms = vec![(
        vec![0; n],
        BigInt::from(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)),
    )];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        terms.push((e, BigInt::from(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND))));
    }
    MultiPoly::from_terms(vars, terms).expect("exponent lengths match")
}

/// Sparse polynomial with up to `max_terms` terms of total degree at most
/// `max_degree` and coefficients in `[-coeff, coeff]`.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    vars: &Variables,
    max_terms: usize,
    max_degree: u32,
    coeff: i64,
) -> MultiPoly {
    let count = rng.gen_range(0..=max_terms);
    let terms = (0..count).map(|_| {
        let mut budget = max_degree;
        let mut e = vec![0u32; vars.len()];
        for slot in e.iter_mut() {
            let k = rng.gen_range(0..=budget);
            *slot = k;
            budget -= k;
        }
        (e, BigInt::from(rng.gen_range(-coeff..=coeff)))
    });
    MultiPoly::from_terms(vars, terms).expect("exponent lengths match")
}

/// Matrix of fresh unknowns `x{i}_{j}`, one per entry.
pub fn symbolic_matrix(rows: usize, cols: usize) -> Result<ExactMatrix> {
    let names: Vec<String> = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| format!("x{i}_{j}")))
        .collect();
    let vars = Variables::new(names)?;
    let entries = (0..rows * cols)
        .map(|k| MultiPoly::variable(&vars, k).map(RingValue::Poly))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::new(Ring::Polynomial(vars), rows, cols, entries)
}

/// Parses a ring selector as used on the command line and in documents.
pub fn ring_from_tag(tag: &str, modulus: Option<u64>) -> Result<Ring> {
    match tag {
        "int" => Ok(Ring::Integer),
        "mod_p" => Ring::prime_field(modulus.unwrap_or(crate::ring::DEFAULT_PRIME)),
        other => Err(Error::Parse(format!("unsupported ring selector {other:?}"))),
    }
}
