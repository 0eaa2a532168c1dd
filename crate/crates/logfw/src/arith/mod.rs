//! Exact coefficient arithmetic.
//!
//! Three base coefficient domains are supported: finite fields F_{p^m}
//! ([`gf::GF`]), rational function fields F_p(t_1..t_r) ([`ratfunc::RatFunc`])
//! and the p-local rationals ([`qq::QQ`] plus locality checks). The choice of
//! base determines the residue invariant r with [k : k^p] = p^r and how the
//! universal derivation acts on constants.

use std::fmt;

use crate::error::{Error, Result};

pub mod gf;
pub mod qq;
pub mod ratfunc;
pub mod zmod;

/// A verified prime number.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p < 2 || p > (1 << 31) {
            return Err(Error::Instance(format!("{p} is not a supported prime")));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::Instance(format!("{p} is not prime")));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(&self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ring-of-coefficients interface. Implementations carry their parameters
/// (prime, extension degree, variable count) at runtime; elements are plain
/// data validated against the context that created them.
///
/// `inv` panics when the argument is not invertible; callers guard with
/// `is_zero` (or only use it over fields).
pub trait FieldOps: Clone + fmt::Debug {
    type El: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Self::El;
    fn from_int(&self, n: i64) -> Self::El;
    /// 0 for characteristic-zero coefficients.
    fn characteristic(&self) -> u64;
    fn display(&self, a: &Self::El) -> String;

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }
}

/// Extra structure a coefficient domain needs to serve as the base of a
/// prelog ring in the FW pipeline: the expansion of the universal derivation
/// on constants and the divided-power correction P_n.
pub trait FwBase: FieldOps {
    fn prime(&self) -> u64;

    /// Number of formal base differential generators (w(t_j) for rational
    /// function fields, zero for finite fields).
    fn base_gen_count(&self) -> usize;

    /// The residue exponent r with [k : k^p] = p^r.
    fn residue_r(&self) -> usize;

    /// Expansion of w(c) over the base generators, as (index, coefficient)
    /// pairs. Finite fields are perfect, so this is empty there.
    fn coeff_fw(&self, c: &Self::El) -> Vec<(usize, Self::El)>;

    /// P_n(values) = ((sum)^p - sum of p-th powers)/p, computed exactly via
    /// a characteristic-p² lift.
    fn p_sum_correction(&self, values: &[Self::El]) -> Result<Self::El>;

    /// Frobenius a -> a^p.
    fn frobenius(&self, a: &Self::El) -> Self::El {
        self.pow(a, self.prime())
    }

    /// Exact p-th root when one exists.
    fn pth_root(&self, a: &Self::El) -> Option<Self::El>;

    fn descriptor(&self) -> String;
}

/// P(a, b) = P_2(a, b), the binary divided-power correction.
pub fn p_correction<F: FwBase>(f: &F, a: &F::El, b: &F::El) -> Result<F::El> {
    f.p_sum_correction(&[a.clone(), b.clone()])
}
