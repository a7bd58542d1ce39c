use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

const SMALL_PRIMES: [u32; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// Deterministic Miller-Rabin with fixed bases.
///
/// The first 13 prime bases are a proof of primality below 3.3 * 10^24;
/// above that all 40 bases are used (no known counterexample, not a proof).
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let proven_bound: BigUint = "3317044064679887385961981".parse().unwrap();
    let bases = if *n < proven_bound {
        13
    } else {
        SMALL_PRIMES.len()
    };
    'witness: for &a in &SMALL_PRIMES[..bases] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(
                is_probable_prime(&BigUint::from(n)),
                trial_division(n),
                "{n}"
            );
        }
    }

    #[test]
    fn carmichael_and_large_values() {
        for c in [561u64, 1105, 1729, 2465, 2821, 6601, 3_215_031_751] {
            assert!(!is_probable_prime(&BigUint::from(c)));
        }
        assert!(is_probable_prime(&BigUint::from(1_000_003u64)));
        assert!(is_probable_prime(&BigUint::from(
            18_446_744_073_709_551_557u64
        )));
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(&m127 * &m127)));
    }
}
