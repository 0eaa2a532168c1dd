//! Arithmetic modulo a fixed u64 modulus, plus the Z/p² lift ring used by
//! the divided-power correction. Not a field in general; `inv` is only valid
//! for arguments coprime to the modulus.

use crate::arith::FieldOps;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMod {
    pub n: u64,
}

impl ZMod {
    pub fn new(n: u64) -> ZMod {
        assert!(n >= 2);
        ZMod { n }
    }
}

pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    // extended Euclid
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(n as i128) as u64)
}

impl FieldOps for ZMod {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.n
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.n
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.n - b) % self.n
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.n - a) % self.n
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.n as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.n).expect("non-invertible element in ZMod::inv")
    }
    fn from_int(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.n as i128) as u64
    }
    fn characteristic(&self) -> u64 {
        self.n
    }
    fn display(&self, a: &u64) -> String {
        a.to_string()
    }
}
