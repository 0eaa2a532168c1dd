//! Exact rational arithmetic, p-local validity checks, Fermat quotients and
//! the value of the universal derivation on p-local rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::zmod::inv_mod;
use crate::arith::{FieldOps, Prime};
use crate::error::{Error, Result};

/// The rational numbers as a coefficient field. Mixed-characteristic
/// instances restrict to p-local elements, validated separately with
/// [`assert_p_local`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QQ;

impl FieldOps for QQ {
    type El = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero rational");
        a.recip()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn display(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// Is a/b p-local, i.e. gcd(b, p) = 1?
pub fn is_p_local(a: &BigRational, p: Prime) -> bool {
    let p = BigInt::from(p.get());
    (a.denom() % &p) != BigInt::zero()
}

pub fn assert_p_local(a: &BigRational, p: Prime) -> Result<()> {
    if is_p_local(a, p) {
        Ok(())
    } else {
        Err(Error::Instance(format!(
            "coefficient {a} is not {p}-local"
        )))
    }
}

/// p-adic valuation of a nonzero p-local rational (0 if the numerator is a
/// p-unit).
pub fn p_valuation(a: &BigRational, p: Prime) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let p = BigInt::from(p.get());
    let mut n = a.numer().abs();
    let mut v = 0u32;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    Some(v)
}

/// Residue of a p-local rational in F_p.
pub fn residue_mod_p(a: &BigRational, p: Prime) -> u64 {
    let pb = BigInt::from(p.get());
    let num = (a.numer() % &pb + &pb) % &pb;
    let den = (a.denom() % &pb + &pb) % &pb;
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    let dinv = inv_mod(den, p.get()).expect("denominator not a p-unit");
    num * dinv % p.get()
}

/// The Fermat quotient q_p(n) = (n^p - n)/p mod p, computed exactly.
pub fn fermat_quotient(n: &BigInt, p: Prime) -> u64 {
    let pv = p.get();
    let np = n.pow(pv as u32);
    let num = &np - n;
    let pb = BigInt::from(pv);
    debug_assert!((&num % &pb).is_zero());
    let q = num / &pb;
    let r = ((&q % &pb) + &pb) % &pb;
    r.try_into().unwrap()
}

/// Coefficient of w(p) in w(c) for a p-local rational c = a/b:
/// (a^p q_p(b) - b^p q_p(a)) / b^{2p} mod p, derived from the quotient rule
/// and w(n) = -q_p(n) w(p) on integers.
pub fn zp_w_coeff(c: &BigRational, p: Prime) -> u64 {
    let pv = p.get();
    let a = c.numer();
    let b = c.denom();
    let qa = fermat_quotient(a, p);
    let qb = fermat_quotient(b, p);
    let ap = pow_mod_bigint(a, pv, pv);
    let bp = pow_mod_bigint(b, pv, pv);
    let num = (ap * qb % pv + pv - bp * qa % pv) % pv;
    let b2p = pow_mod_bigint(b, 2 * pv, pv);
    let dinv = inv_mod(b2p, pv).expect("denominator not a p-unit");
    num * dinv % pv
}

fn pow_mod_bigint(a: &BigInt, e: u64, m: u64) -> u64 {
    let mb = BigInt::from(m);
    let base = ((a % &mb) + &mb) % &mb;
    let mut base: u64 = base.try_into().unwrap();
    let mut acc = 1u64;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc as u64 * base % m;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Exact P_n over the rationals: ((sum v_i)^p - sum v_i^p)/p. No lift is
/// needed; the rationals contain 1/p.
pub fn p_sum_correction_rat(values: &[BigRational], p: Prime) -> BigRational {
    let pv = p.get() as u32;
    let sum: BigRational = values.iter().fold(BigRational::zero(), |acc, v| acc + v);
    let mut acc = sum.pow(pv as i32);
    for v in values {
        acc -= v.pow(pv as i32);
    }
    acc / BigRational::from_integer(BigInt::from(p.get()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn fermat_quotient_examples() {
        // (1, any p) -> 0
        assert_eq!(fermat_quotient(&BigInt::from(1), p(2)), 0);
        assert_eq!(fermat_quotient(&BigInt::from(1), p(5)), 0);
        // (3, 2) -> (9 - 3)/2 = 3 = 1 mod 2
        assert_eq!(fermat_quotient(&BigInt::from(3), p(2)), 1);
        // (p, p) -> -1 mod p
        for q in [2u64, 3, 5, 7] {
            assert_eq!(fermat_quotient(&BigInt::from(q), p(q)), q - 1);
        }
    }

    #[test]
    fn fermat_quotient_log_additivity() {
        // q_p(mn) = m^p q_p(n) + n^p q_p(m) mod p
        for q in [2u64, 3, 5] {
            for m in 1i64..12 {
                for n in 1i64..12 {
                    let lhs = fermat_quotient(&BigInt::from(m * n), p(q));
                    let mp = pow_mod_bigint(&BigInt::from(m), q, q);
                    let np = pow_mod_bigint(&BigInt::from(n), q, q);
                    let rhs = (mp * fermat_quotient(&BigInt::from(n), p(q))
                        + np * fermat_quotient(&BigInt::from(m), p(q)))
                        % q;
                    assert_eq!(lhs, rhs, "p={q} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn w_coeff_on_p_is_one() {
        // w(p) = w(p), i.e. the derived coefficient of w(p) at c = p is 1;
        // this pins the sign convention (fermat_quotient(p) = -1 forcing +1).
        for q in [2u64, 3, 5] {
            let c = BigRational::from_integer(BigInt::from(q));
            assert_eq!(zp_w_coeff(&c, p(q)), 1);
        }
    }

    #[test]
    fn p_locality() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!(!is_p_local(&half, p(2)));
        assert!(is_p_local(&half, p(3)));
        assert_eq!(residue_mod_p(&half, p(3)), 2); // 1/2 = 2 mod 3
    }

    #[test]
    fn rational_p_sum_correction() {
        // p = 3, (1, 1) -> 2
        let one = BigRational::one();
        let got = p_sum_correction_rat(&[one.clone(), one], p(3));
        assert_eq!(got, BigRational::from_integer(BigInt::from(2)));
    }
}
