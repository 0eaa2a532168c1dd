//! The rational function field F_p(t_1..t_r), r <= 3. Elements are reduced
//! fractions of polynomials with monic denominators, so structural equality
//! is mathematical equality.
//!
//! This is the canonical F-finite imperfect residue field with
//! [k : k^p] = p^r; the universal derivation is free on w(t_1)..w(t_r) and
//! extends to fractions by the quotient rule.

use crate::arith::gf::GF;
use crate::arith::zmod::ZMod;
use crate::arith::{FieldOps, FwBase, Prime};
use crate::error::{Error, Result};
use crate::poly::{gcd, MPoly, Order};

pub type TPoly = MPoly<GF>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frac {
    pub num: TPoly,
    pub den: TPoly,
}

#[derive(Clone, Debug)]
pub struct RatFunc {
    fp: GF,
    p: u64,
    r: usize,
    names: Vec<String>,
}

impl RatFunc {
    pub fn new(p: Prime, r: usize) -> Result<RatFunc> {
        if r == 0 || r > 3 {
            return Err(Error::Instance(format!(
                "rational function fields support 1..=3 variables, got {r}"
            )));
        }
        Ok(RatFunc {
            fp: GF::prime_field(p),
            p: p.get(),
            r,
            names: (1..=r).map(|i| format!("t{i}")).collect(),
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn prime_field(&self) -> &GF {
        &self.fp
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn from_poly(&self, num: TPoly) -> Frac {
        self.make(num, MPoly::one(&self.fp, self.r))
    }

    pub fn t(&self, j: usize) -> Frac {
        self.from_poly(MPoly::var(&self.fp, self.r, j))
    }

    fn make(&self, num: TPoly, den: TPoly) -> Frac {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Frac {
                num,
                den: MPoly::one(&self.fp, self.r),
            };
        }
        let g = gcd(&self.fp, &num, &den);
        let (mut num, mut den) = (
            num.div_exact(&self.fp, &g).expect("gcd divides"),
            den.div_exact(&self.fp, &g).expect("gcd divides"),
        );
        // monic denominator
        let (_, lc) = den.leading(Order::GrevLex).unwrap();
        if !self.fp.is_one(lc) {
            let inv = self.fp.inv(lc);
            num = num.scale(&self.fp, &inv);
            den = den.scale(&self.fp, &inv);
        }
        Frac { num, den }
    }

    /// Frobenius twist of a polynomial: exponents times p (coefficients are
    /// in F_p, where c^p = c).
    fn poly_frob(&self, f: &TPoly) -> TPoly {
        MPoly::from_terms(
            &self.fp,
            self.r,
            f.terms().iter().map(|(m, c)| (m.stretch(self.p as u32), c.clone())),
        )
    }

    /// w on polynomials: w(g) = sum_j F(dg/dt_j) w(t_j).
    fn poly_fw(&self, g: &TPoly) -> Vec<TPoly> {
        (0..self.r)
            .map(|j| self.poly_frob(&g.partial(&self.fp, j)))
            .collect()
    }
}

impl FieldOps for RatFunc {
    type El = Frac;

    fn zero(&self) -> Frac {
        Frac {
            num: MPoly::zero(self.r),
            den: MPoly::one(&self.fp, self.r),
        }
    }

    fn one(&self) -> Frac {
        Frac {
            num: MPoly::one(&self.fp, self.r),
            den: MPoly::one(&self.fp, self.r),
        }
    }

    fn is_zero(&self, a: &Frac) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &Frac, b: &Frac) -> Frac {
        let num = a
            .num
            .mul(&self.fp, &b.den)
            .add(&self.fp, &b.num.mul(&self.fp, &a.den));
        let den = a.den.mul(&self.fp, &b.den);
        self.make(num, den)
    }

    fn sub(&self, a: &Frac, b: &Frac) -> Frac {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Frac) -> Frac {
        Frac {
            num: a.num.neg(&self.fp),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        self.make(a.num.mul(&self.fp, &b.num), a.den.mul(&self.fp, &b.den))
    }

    fn inv(&self, a: &Frac) -> Frac {
        assert!(!a.num.is_zero(), "inverse of zero rational function");
        self.make(a.den.clone(), a.num.clone())
    }

    fn from_int(&self, n: i64) -> Frac {
        self.from_poly(MPoly::constant(&self.fp, self.r, self.fp.from_int(n)))
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn display(&self, a: &Frac) -> String {
        let n = a.num.display(&self.fp, &self.names);
        if a.den.num_terms() == 1 && a.den.degree() == 0 {
            n
        } else {
            format!("({})/({})", n, a.den.display(&self.fp, &self.names))
        }
    }
}

impl FwBase for RatFunc {
    fn prime(&self) -> u64 {
        self.p
    }

    fn base_gen_count(&self) -> usize {
        self.r
    }

    fn residue_r(&self) -> usize {
        self.r
    }

    fn coeff_fw(&self, c: &Frac) -> Vec<(usize, Frac)> {
        // quotient rule: w(a/b) = (b^p w(a) - a^p w(b)) / b^(2p)
        let ap = self.poly_frob(&c.num);
        let bp = self.poly_frob(&c.den);
        let b2p = bp.mul(&self.fp, &bp);
        let wa = self.poly_fw(&c.num);
        let wb = self.poly_fw(&c.den);
        let mut out = Vec::new();
        for j in 0..self.r {
            let num = bp
                .mul(&self.fp, &wa[j])
                .sub(&self.fp, &ap.mul(&self.fp, &wb[j]));
            let v = self.make(num, b2p.clone());
            if !self.is_zero(&v) {
                out.push((j, v));
            }
        }
        out
    }

    fn p_sum_correction(&self, values: &[Frac]) -> Result<Frac> {
        // common denominator, then P_n is homogeneous of degree p:
        // P_n(n_i/d) = P_n(n_i)/d^p; numerators lift to Z/p^2[t].
        let mut den = MPoly::one(&self.fp, self.r);
        for v in values {
            den = den.mul(&self.fp, &v.den);
        }
        let nums: Vec<TPoly> = values
            .iter()
            .map(|v| {
                let cofactor = den.div_exact(&self.fp, &v.den).expect("den divides");
                v.num.mul(&self.fp, &cofactor)
            })
            .collect();
        let p = self.p;
        let p2 = p * p;
        let lift = ZMod::new(p2);
        let lifted: Vec<MPoly<ZMod>> = nums
            .iter()
            .map(|n| n.map_coeffs(&lift, |c| c[0]))
            .collect();
        let mut sum = MPoly::zero(self.r);
        for l in &lifted {
            sum = sum.add(&lift, l);
        }
        let mut acc = sum.pow(&lift, p as u32);
        for l in &lifted {
            acc = acc.sub(&lift, &l.pow(&lift, p as u32));
        }
        let num = acc.map_coeffs(&self.fp, |c| {
            debug_assert_eq!(c % p, 0, "lift identity violated");
            vec![(c / p) % p]
        });
        let denp = den.pow(&self.fp, p as u32);
        Ok(self.make(num, denp))
    }

    fn pth_root(&self, a: &Frac) -> Option<Frac> {
        let num = poly_pth_root(&self.fp, &a.num, self.p)?;
        let den = poly_pth_root(&self.fp, &a.den, self.p)?;
        Some(self.make(num, den))
    }

    fn descriptor(&self) -> String {
        format!("F_{}(t1..t{})", self.p, self.r)
    }
}

fn poly_pth_root(fp: &GF, f: &TPoly, p: u64) -> Option<TPoly> {
    // f = g^p iff every exponent is divisible by p and (over F_p) the
    // coefficients pass through unchanged
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        if m.0.iter().any(|&e| e % p as u32 != 0) {
            return None;
        }
        let root = crate::poly::Mono(m.0.iter().map(|&e| e / p as u32).collect());
        terms.push((root, c.clone()));
    }
    let g = MPoly::from_terms(fp, f.nvars(), terms);
    // verify (guards against p-th powers of coefficients in extensions; here
    // F_p is fixed so this always passes, but cheap)
    if &g.pow(fp, p as u32) == f {
        Some(g)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64, r: usize) -> RatFunc {
        RatFunc::new(Prime::new(p).unwrap(), r).unwrap()
    }

    #[test]
    fn fraction_normalization() {
        let f = k(5, 1);
        let t = f.t(0);
        // (t^2 - 1)/(t - 1) = t + 1
        let t2m1 = f.sub(&f.mul(&t, &t), &f.one());
        let tm1 = f.sub(&t, &f.one());
        let q = f.div(&t2m1, &tm1);
        assert_eq!(q, f.add(&t, &f.one()));
        // denominators come out monic
        let x = f.div(&f.one(), &f.sub(&f.from_int(2), &f.mul(&f.from_int(2), &t)));
        let (_, lc) = x.den.leading(Order::GrevLex).unwrap();
        assert!(f.prime_field().is_one(lc));
    }

    #[test]
    fn coeff_fw_quotient_rule_example() {
        // c = 1/t: w(c) = -t^{-2p} w(t)
        let f = k(3, 1);
        let c = f.inv(&f.t(0));
        let w = f.coeff_fw(&c);
        assert_eq!(w.len(), 1);
        let (j, v) = &w[0];
        assert_eq!(*j, 0);
        let t2p = f.pow(&f.t(0), 6);
        assert_eq!(*v, f.neg(&f.inv(&t2p)));
    }

    #[test]
    fn coeff_fw_vanishes_on_constants() {
        let f = k(3, 2);
        assert!(f.coeff_fw(&f.from_int(2)).is_empty());
        assert!(f.coeff_fw(&f.one()).is_empty());
    }

    #[test]
    fn coeff_fw_axioms_sampled() {
        // product rule w(ab) = b^p w(a) + a^p w(b) on a few dozen fractions
        let f = k(3, 1);
        let els: Vec<Frac> = (0..6)
            .map(|i| {
                let t = f.t(0);
                let n = f.add(&f.pow(&t, i % 3), &f.from_int(i as i64));
                let d = f.add(&t, &f.from_int(1 + i as i64));
                f.div(&n, &d)
            })
            .collect();
        for a in &els {
            for b in &els {
                if f.is_zero(a) || f.is_zero(b) {
                    continue;
                }
                let wab = f.coeff_fw(&f.mul(a, b));
                let ap = f.frobenius(a);
                let bp = f.frobenius(b);
                let mut expect = vec![f.zero(); 1];
                for (j, v) in f.coeff_fw(a) {
                    expect[j] = f.add(&expect[j], &f.mul(&bp, &v));
                }
                for (j, v) in f.coeff_fw(b) {
                    expect[j] = f.add(&expect[j], &f.mul(&ap, &v));
                }
                let mut got = vec![f.zero(); 1];
                for (j, v) in wab {
                    got[j] = v;
                }
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn p_sum_correction_matches_multinomial() {
        // independent check: P(a,b) over F_p(t) via the direct binomial
        // formula sum_{i=1}^{p-1} (1/p) C(p,i) a^i b^{p-i}
        let f = k(3, 1);
        let t = f.t(0);
        let a = f.add(&t, &f.from_int(1));
        let b = f.div(&f.from_int(2), &t);
        let got = f.p_sum_correction(&[a.clone(), b.clone()]).unwrap();
        // C(3,1)/3 = 1, C(3,2)/3 = 1
        let expect = f.add(
            &f.mul(&a, &f.mul(&b, &b)),
            &f.mul(&f.mul(&a, &a), &b),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn pth_roots() {
        let f = k(2, 1);
        let t = f.t(0);
        let sq = f.mul(&t, &t);
        assert_eq!(f.pth_root(&sq), Some(t.clone()));
        assert_eq!(f.pth_root(&t), None);
    }
}
