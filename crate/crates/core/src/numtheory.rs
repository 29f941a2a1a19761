//! Elementary arithmetic helpers used by the model constructors and the
//! closed-form counting formulas.
//!
//! Everything is 64-bit: the largest quantities in scope are group orders
//! n·φ(n) with n of a few hundred and factorials up to 9!, so machine-width
//! integers are ample.

use crate::{Error, Result};

/// Prime factorization of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Greatest common divisor; gcd(0,0) = 0.
pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Factor n by trial division. Desk scale only (n up to ~10^9).
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize: n must be positive"));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// Euler totient: the number of residues 1 ≤ u ≤ n coprime to n.
pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    let mut phi = n;
    for p in f.primes() {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}
