//! Finite fields F_{p^m} represented as F_p[z]/(g) with a stored irreducible
//! g per (p, m). Elements are little-endian coefficient vectors of length m.

use crate::arith::zmod::inv_mod;
use crate::arith::{FieldOps, FwBase, Prime};
use crate::error::{Error, Result};

/// Fixed monic irreducibles (Conway polynomials where applicable), stored as
/// little-endian coefficient lists including the leading 1.
fn stored_irreducible(p: u64, m: usize) -> Option<Vec<u64>> {
    let v: &[u64] = match (p, m) {
        (2, 2) => &[1, 1, 1],          // z^2 + z + 1
        (2, 3) => &[1, 1, 0, 1],       // z^3 + z + 1
        (2, 4) => &[1, 1, 0, 0, 1],    // z^4 + z + 1
        (3, 2) => &[2, 2, 1],          // z^2 + 2z + 2
        (3, 3) => &[1, 2, 0, 1],       // z^3 + 2z + 1
        (5, 2) => &[2, 4, 1],          // z^2 + 4z + 2
        (5, 3) => &[3, 3, 0, 1],       // z^3 + 3z + 3
        (7, 2) => &[3, 6, 1],          // z^2 + 6z + 3
        _ => return None,
    };
    Some(v.to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
}

pub type GFEl = Vec<u64>;

impl GF {
    pub fn new(p: Prime, m: usize) -> Result<GF> {
        let p = p.get();
        if m == 0 {
            return Err(Error::Instance("extension degree must be >= 1".into()));
        }
        if m == 1 {
            return Ok(GF { p, m, modulus: vec![0, 1] });
        }
        let modulus = stored_irreducible(p, m).ok_or_else(|| {
            Error::Instance(format!("no stored irreducible for F_{{{p}^{m}}}"))
        })?;
        Ok(GF { p, m, modulus })
    }

    pub fn prime_field(p: Prime) -> GF {
        GF::new(p, 1).expect("m=1 always supported")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    /// The class of z (zero in the prime field).
    pub fn gen(&self) -> GFEl {
        let mut v = vec![0; self.m];
        if self.m > 1 {
            v[1] = 1;
        }
        v
    }

    pub fn elements(&self) -> Vec<GFEl> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u64; self.m];
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == self.m {
                    return out;
                }
                cur[i] += 1;
                if cur[i] < self.p {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    pub fn from_u64(&self, v: u64) -> GFEl {
        let mut e = vec![0u64; self.m];
        e[0] = v % self.p;
        e
    }

    fn reduce(&self, mut poly: Vec<u64>) -> GFEl {
        // divide by the monic modulus, keep remainder
        let m = self.m;
        while poly.len() > m {
            let d = poly.len() - 1;
            let c = poly[d];
            if c != 0 {
                for i in 0..m {
                    let sub = (c as u128 * self.modulus[i] as u128) % self.p as u128;
                    let idx = d - m + i;
                    poly[idx] = ((poly[idx] as u128 + self.p as u128 - sub) % self.p as u128) as u64;
                }
            }
            poly.pop();
        }
        poly.resize(m, 0);
        poly
    }

    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % self.p as u128) as u64;
            }
        }
        out
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl FieldOps for GF {
    type El = GFEl;

    fn zero(&self) -> GFEl {
        vec![0; self.m]
    }

    fn one(&self) -> GFEl {
        let mut v = vec![0; self.m];
        v[0] = 1 % self.p;
        v
    }

    fn is_zero(&self, a: &GFEl) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn add(&self, a: &GFEl, b: &GFEl) -> GFEl {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn sub(&self, a: &GFEl, b: &GFEl) -> GFEl {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    fn neg(&self, a: &GFEl) -> GFEl {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    fn mul(&self, a: &GFEl, b: &GFEl) -> GFEl {
        if self.m == 1 {
            return vec![((a[0] as u128 * b[0] as u128) % self.p as u128) as u64];
        }
        self.reduce(self.poly_mul(a, b))
    }

    fn inv(&self, a: &GFEl) -> GFEl {
        assert!(!self.is_zero(a), "inverse of zero in GF");
        if self.m == 1 {
            return vec![inv_mod(a[0], self.p).unwrap()];
        }
        // extended Euclid in F_p[z] against the modulus
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = a.clone();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // q, rem of r0 / r1
            let mut rem = r0.clone();
            let mut q: Vec<u64> = vec![0; rem.len().saturating_sub(r1.len()) + 1];
            let lead_inv = inv_mod(*r1.last().unwrap(), self.p).unwrap();
            while rem.len() >= r1.len() && !rem.is_empty() {
                let shift = rem.len() - r1.len();
                let c = ((*rem.last().unwrap() as u128 * lead_inv as u128) % self.p as u128) as u64;
                q[shift] = (q[shift] + c) % self.p;
                for (i, &ri) in r1.iter().enumerate() {
                    let sub = (c as u128 * ri as u128 % self.p as u128) as u64;
                    rem[shift + i] = (rem[shift + i] + self.p - sub) % self.p;
                }
                trim(&mut rem);
                if rem.len() < r1.len() {
                    break;
                }
            }
            // s = s0 - q * s1
            let qs1 = if q.is_empty() || s1.is_empty() {
                vec![]
            } else {
                self.poly_mul(&q, &s1)
            };
            let n = s0.len().max(qs1.len());
            let mut s = vec![0u64; n];
            for (i, slot) in s.iter_mut().enumerate() {
                let x = s0.get(i).copied().unwrap_or(0);
                let y = qs1.get(i).copied().unwrap_or(0);
                *slot = (x + self.p - y) % self.p;
            }
            trim(&mut s);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s;
        }
        // r0 is the gcd, a nonzero constant since the modulus is irreducible
        assert_eq!(r0.len(), 1, "modulus not irreducible?");
        let scale = inv_mod(r0[0], self.p).unwrap();
        let mut out = vec![0u64; self.m];
        for (i, &c) in s0.iter().enumerate() {
            out[i] = (c as u128 * scale as u128 % self.p as u128) as u64;
        }
        out
    }

    fn from_int(&self, n: i64) -> GFEl {
        let mut v = vec![0u64; self.m];
        v[0] = (n as i128).rem_euclid(self.p as i128) as u64;
        v
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn display(&self, a: &GFEl) -> String {
        if self.m == 1 {
            return a[0].to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".into(),
                (1, c) => format!("{c}*z"),
                (i, 1) => format!("z^{i}"),
                (i, c) => format!("{c}*z^{i}"),
            };
            parts.push(t);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

impl FwBase for GF {
    fn prime(&self) -> u64 {
        self.p
    }

    fn base_gen_count(&self) -> usize {
        0
    }

    fn residue_r(&self) -> usize {
        0
    }

    fn coeff_fw(&self, _c: &GFEl) -> Vec<(usize, GFEl)> {
        // finite fields are perfect: w vanishes on them
        Vec::new()
    }

    fn p_sum_correction(&self, values: &[GFEl]) -> Result<GFEl> {
        // lift coefficient-wise to Z/p^2[z]/(lift of modulus), evaluate
        // (sum)^p - sum of p-th powers there, divide by p
        let p = self.p;
        let p2 = p
            .checked_mul(p)
            .ok_or_else(|| Error::NonLiftableCoefficient("p^2 overflow".into()))?;
        let lifted: Vec<Vec<u64>> = values.iter().map(|v| v.clone()).collect();
        let mut sum = vec![0u64; self.m];
        for v in &lifted {
            for i in 0..self.m {
                sum[i] = (sum[i] + v[i]) % p2;
            }
        }
        let spow = self.lift_pow(&sum, p, p2);
        let mut acc = spow;
        for v in &lifted {
            let vp = self.lift_pow(v, p, p2);
            for i in 0..self.m {
                acc[i] = (acc[i] + p2 - vp[i]) % p2;
            }
        }
        let mut out = vec![0u64; self.m];
        for i in 0..self.m {
            debug_assert_eq!(acc[i] % p, 0, "lift identity violated");
            out[i] = (acc[i] / p) % p;
        }
        Ok(out)
    }

    fn pth_root(&self, a: &GFEl) -> Option<GFEl> {
        // Frobenius is an automorphism; the root is a^(p^(m-1)).
        let e = self.p.pow((self.m - 1) as u32);
        Some(self.pow(a, e))
    }

    fn descriptor(&self) -> String {
        if self.m == 1 {
            format!("F_{}", self.p)
        } else {
            format!("F_{{{}^{}}}", self.p, self.m)
        }
    }
}

impl GF {
    /// Power in (Z/p²)[z]/(lift of modulus).
    fn lift_pow(&self, a: &[u64], e: u64, p2: u64) -> Vec<u64> {
        let mut acc = vec![0u64; self.m];
        acc[0] = 1;
        let mut base = a.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.lift_mul(&acc, &base, p2);
            }
            base = self.lift_mul(&base, &base, p2);
            e >>= 1;
        }
        acc
    }

    fn lift_mul(&self, a: &[u64], b: &[u64], p2: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p2 as u128) as u64;
            }
        }
        // reduce by the canonical lift of the modulus (monic)
        let m = self.m;
        while out.len() > m {
            let d = out.len() - 1;
            let c = out[d];
            if c != 0 {
                for i in 0..m {
                    let sub = (c as u128 * self.modulus[i] as u128) % p2 as u128;
                    let idx = d - m + i;
                    out[idx] = ((out[idx] as u128 + p2 as u128 - sub) % p2 as u128) as u64;
                }
            }
            out.pop();
        }
        out.resize(m, 0);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> GF {
        GF::new(Prime::new(2).unwrap(), 2).unwrap()
    }

    #[test]
    fn f4_structure() {
        let f = f4();
        let z = f.gen();
        // z^2 = z + 1
        assert_eq!(f.mul(&z, &z), f.add(&z, &f.one()));
        // z^3 = 1
        assert_eq!(f.pow(&z, 3), f.one());
        // inverse of z is z^2
        assert_eq!(f.inv(&z), f.mul(&z, &z));
    }

    #[test]
    fn all_inverses() {
        for (p, m) in [(2, 2), (2, 3), (3, 2), (5, 2), (7, 2), (3, 3)] {
            let f = GF::new(Prime::new(p).unwrap(), m).unwrap();
            for a in f.elements() {
                if f.is_zero(&a) {
                    continue;
                }
                assert_eq!(f.mul(&a, &f.inv(&a)), f.one(), "p={p} m={m} a={a:?}");
            }
        }
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        for (p, m) in [(2, 2), (3, 2), (2, 4)] {
            let f = GF::new(Prime::new(p).unwrap(), m).unwrap();
            for a in f.elements() {
                let r = f.pth_root(&a).unwrap();
                assert_eq!(f.pow(&r, p), a);
            }
        }
    }

    #[test]
    fn p_correction_binary_f2() {
        // p = 2: P(a, b) = a*b
        let f = GF::prime_field(Prime::new(2).unwrap());
        for a in 0..2u64 {
            for b in 0..2u64 {
                let got = f
                    .p_sum_correction(&[f.from_u64(a), f.from_u64(b)])
                    .unwrap();
                assert_eq!(got, f.from_u64(a * b));
            }
        }
    }

    #[test]
    fn p_correction_examples() {
        // p = 3, (1, 1): integer oracle (2^3 - 1 - 1)/3 = 2
        let f = GF::prime_field(Prime::new(3).unwrap());
        let got = f.p_sum_correction(&[f.one(), f.one()]).unwrap();
        assert_eq!(got, f.from_u64(2));
        // (a, 0) -> 0 for any a, any p
        for p in [2u64, 3, 5] {
            let f = GF::prime_field(Prime::new(p).unwrap());
            for a in 0..p {
                let got = f.p_sum_correction(&[f.from_u64(a), f.zero()]).unwrap();
                assert!(f.is_zero(&got));
            }
        }
    }
}
