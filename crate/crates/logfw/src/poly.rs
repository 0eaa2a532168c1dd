//! Multivariate polynomials over an exact coefficient field.
//!
//! Terms are kept sorted in descending graded-reverse-lex order, which is the
//! canonical storage order; leading terms under other orders are found by
//! scanning. Exponents are u32, coefficients come from a [`FieldOps`] context
//! passed explicitly to every operation.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::arith::FieldOps;

/// Monomial order. GrevLex is the user-facing order everywhere; Lex exists
/// for internal elimination steps (toric ideal saturation).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    GrevLex,
    Lex,
}

/// An exponent vector. All monomials in one ring share the same length.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Mono {
        let mut v = vec![0; n];
        v[i] = 1;
        Mono(v)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Raise every exponent by the factor k (the monomial Frobenius).
    pub fn stretch(&self, k: u32) -> Mono {
        Mono(self.0.iter().map(|e| e * k).collect())
    }

    pub fn cmp_order(&self, other: &Mono, ord: Order) -> Ordering {
        match ord {
            Order::GrevLex => {
                let (da, db) = (self.degree(), other.degree());
                if da != db {
                    return da.cmp(&db);
                }
                // equal degree: larger = rightmost nonzero diff is negative
                for (a, b) in self.0.iter().zip(&other.0).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            }
            Order::Lex => {
                for (a, b) in self.0.iter().zip(&other.0) {
                    if a != b {
                        return a.cmp(b);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A polynomial: nonzero terms in descending grevlex order.
#[derive(Clone, Debug)]
pub struct MPoly<F: FieldOps> {
    terms: Vec<(Mono, F::El)>,
    nvars: usize,
}

impl<F: FieldOps> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: FieldOps> Eq for MPoly<F> {}

impl<F: FieldOps> MPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { terms: Vec::new(), nvars }
    }

    pub fn constant(ctx: &F, nvars: usize, c: F::El) -> Self {
        if ctx.is_zero(&c) {
            return Self::zero(nvars);
        }
        MPoly { terms: vec![(Mono::one(nvars), c)], nvars }
    }

    pub fn one(ctx: &F, nvars: usize) -> Self {
        Self::constant(ctx, nvars, ctx.one())
    }

    pub fn var(ctx: &F, nvars: usize, i: usize) -> Self {
        MPoly { terms: vec![(Mono::var(nvars, i), ctx.one())], nvars }
    }

    pub fn from_term(ctx: &F, nvars: usize, m: Mono, c: F::El) -> Self {
        if ctx.is_zero(&c) {
            return Self::zero(nvars);
        }
        MPoly { terms: vec![(m, c)], nvars }
    }

    pub fn from_terms(ctx: &F, nvars: usize, it: impl IntoIterator<Item = (Mono, F::El)>) -> Self {
        let mut map: BTreeMap<Mono, F::El> = BTreeMap::new();
        for (m, c) in it {
            debug_assert_eq!(m.0.len(), nvars);
            match map.get_mut(&m) {
                Some(slot) => *slot = ctx.add(slot, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Mono, F::El)> =
            map.into_iter().filter(|(_, c)| !ctx.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp_order(&a.0, Order::GrevLex));
        MPoly { terms, nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Mono, F::El)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn leading(&self, ord: Order) -> Option<(&Mono, &F::El)> {
        match ord {
            Order::GrevLex => self.terms.first().map(|(m, c)| (m, c)),
            Order::Lex => self
                .terms
                .iter()
                .max_by(|a, b| a.0.cmp_order(&b.0, Order::Lex))
                .map(|(m, c)| (m, c)),
        }
    }

    pub fn coeff_of(&self, m: &Mono) -> Option<&F::El> {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c)
    }

    pub fn constant_term(&self, ctx: &F) -> F::El {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => ctx.zero(),
        }
    }

    pub fn add(&self, ctx: &F, other: &Self) -> Self {
        // merge two descending-sorted term lists
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp_order(&other.terms[j].0, Order::GrevLex) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ctx.add(&self.terms[i].1, &other.terms[j].1);
                    if !ctx.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MPoly { terms: out, nvars: self.nvars }
    }

    pub fn neg(&self, ctx: &F) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), ctx.neg(c))).collect(),
            nvars: self.nvars,
        }
    }

    pub fn sub(&self, ctx: &F, other: &Self) -> Self {
        self.add(ctx, &other.neg(ctx))
    }

    pub fn mul_term(&self, ctx: &F, m: &Mono, c: &F::El) -> Self {
        if ctx.is_zero(c) {
            return Self::zero(self.nvars);
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), ctx.mul(tc, c)))
                .filter(|(_, tc)| !ctx.is_zero(tc))
                .collect(),
            nvars: self.nvars,
        }
    }

    pub fn scale(&self, ctx: &F, c: &F::El) -> Self {
        self.mul_term(ctx, &Mono::one(self.nvars), c)
    }

    pub fn mul(&self, ctx: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut map: BTreeMap<Mono, F::El> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ctx.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(slot) => *slot = ctx.add(slot, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, F::El)> =
            map.into_iter().filter(|(_, c)| !ctx.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp_order(&a.0, Order::GrevLex));
        MPoly { terms, nvars: self.nvars }
    }

    pub fn pow(&self, ctx: &F, e: u32) -> Self {
        let mut acc = Self::one(ctx, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            base = base.mul(ctx, &base);
            e >>= 1;
        }
        acc
    }

    /// Make the grevlex leading coefficient one.
    pub fn monic(&self, ctx: &F) -> Self {
        match self.leading(Order::GrevLex) {
            None => self.clone(),
            Some((_, c)) => {
                if ctx.is_one(c) {
                    self.clone()
                } else {
                    let inv = ctx.inv(c);
                    self.scale(ctx, &inv)
                }
            }
        }
    }

    pub fn eval(&self, ctx: &F, point: &[F::El]) -> F::El {
        let mut acc = ctx.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = ctx.mul(&t, &ctx.pow(&point[i], e as u64));
                }
            }
            acc = ctx.add(&acc, &t);
        }
        acc
    }

    /// Formal partial derivative with respect to variable i.
    pub fn partial(&self, ctx: &F, i: usize) -> Self {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            let c2 = ctx.mul(c, &ctx.from_int(e as i64));
            if !ctx.is_zero(&c2) {
                out.push((m2, c2));
            }
        }
        Self::from_terms(ctx, self.nvars, out)
    }

    /// Substitute the polynomial g for variable i.
    pub fn subst(&self, ctx: &F, i: usize, g: &Self) -> Self {
        let mut acc = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut rest = m.clone();
            rest.0[i] = 0;
            let mut t = Self::from_term(ctx, self.nvars, rest, c.clone());
            if e > 0 {
                t = t.mul(ctx, &g.pow(ctx, e));
            }
            acc = acc.add(ctx, &t);
        }
        acc
    }

    /// Indices of variables that actually occur.
    pub fn vars_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| if u { Some(i) } else { None })
            .collect()
    }

    pub fn max_degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[v]).max().unwrap_or(0)
    }

    /// Coefficients of x_v^0 .. x_v^deg as polynomials with the v-exponent
    /// cleared.
    pub fn coeffs_in_var(&self, ctx: &F, v: usize) -> Vec<Self> {
        let d = self.max_degree_in(v) as usize;
        let mut out: Vec<Vec<(Mono, F::El)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            let mut m2 = m.clone();
            m2.0[v] = 0;
            out[e].push((m2, c.clone()));
        }
        out.into_iter()
            .map(|ts| Self::from_terms(ctx, self.nvars, ts))
            .collect()
    }

    /// Exact division; None if g does not divide self.
    pub fn div_exact(&self, ctx: &F, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, F::El)> = Vec::new();
        let (gm, gc) = g.leading(Order::GrevLex).unwrap();
        let gci = ctx.inv(gc);
        while let Some((rm, rc)) = rem.leading(Order::GrevLex) {
            let q = rm.try_div(gm)?;
            let c = ctx.mul(rc, &gci);
            rem = rem.sub(ctx, &g.mul_term(ctx, &q, &c));
            quot.push((q, c));
        }
        Some(Self::from_terms(ctx, self.nvars, quot))
    }

    pub fn map_coeffs<G: FieldOps>(
        &self,
        gctx: &G,
        f: impl Fn(&F::El) -> G::El,
    ) -> MPoly<G> {
        MPoly::from_terms(
            gctx,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    pub fn display(&self, ctx: &F, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            let cs = ctx.display(c);
            if !ctx.is_one(c) || m.is_one() {
                if cs.contains(['+', '-', '/']) && !m.is_one() {
                    factors.push(format!("({cs})"));
                } else {
                    factors.push(cs);
                }
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

/// Multivariate gcd by primitive pseudo-remainder sequences, recursing on
/// the highest used variable. Returns a monic polynomial.
pub fn gcd<F: FieldOps>(ctx: &F, a: &MPoly<F>, b: &MPoly<F>) -> MPoly<F> {
    if a.is_zero() {
        return b.monic(ctx);
    }
    if b.is_zero() {
        return a.monic(ctx);
    }
    let mut used = a.vars_used();
    for v in b.vars_used() {
        if !used.contains(&v) {
            used.push(v);
        }
    }
    if used.is_empty() {
        return MPoly::one(ctx, a.nvars());
    }
    let v = *used.iter().max().unwrap();
    if used.len() == 1 {
        return univariate_gcd(ctx, a, b, v);
    }
    let ca = content(ctx, a, v);
    let cb = content(ctx, b, v);
    let g_cont = gcd(ctx, &ca, &cb);
    let mut ap = a.div_exact(ctx, &ca).expect("content divides");
    let mut bp = b.div_exact(ctx, &cb).expect("content divides");
    while !bp.is_zero() {
        let r = prem(ctx, &ap, &bp, v);
        ap = bp;
        bp = if r.is_zero() {
            r
        } else {
            let cr = content(ctx, &r, v);
            r.div_exact(ctx, &cr).expect("content divides")
        };
    }
    let ca = content(ctx, &ap, v);
    let prim = ap.div_exact(ctx, &ca).expect("content divides");
    g_cont.mul(ctx, &prim).monic(ctx)
}

fn univariate_gcd<F: FieldOps>(ctx: &F, a: &MPoly<F>, b: &MPoly<F>, v: usize) -> MPoly<F> {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let r = poly_rem_univ(ctx, &r0, &r1, v);
        r0 = r1;
        r1 = r;
    }
    r0.monic(ctx)
}

fn poly_rem_univ<F: FieldOps>(ctx: &F, a: &MPoly<F>, b: &MPoly<F>, v: usize) -> MPoly<F> {
    let db = b.max_degree_in(v);
    let (bm, bc) = b.leading(Order::GrevLex).unwrap();
    let bci = ctx.inv(bc);
    let mut rem = a.clone();
    loop {
        if rem.is_zero() || rem.max_degree_in(v) < db {
            return rem;
        }
        let (rm, rc) = rem.leading(Order::GrevLex).unwrap();
        let q = rm.try_div(bm).expect("univariate leading term divides");
        let c = ctx.mul(rc, &bci);
        rem = rem.sub(ctx, &b.mul_term(ctx, &q, &c));
    }
}

/// Content of f viewed as a polynomial in x_v: gcd of its coefficients.
fn content<F: FieldOps>(ctx: &F, f: &MPoly<F>, v: usize) -> MPoly<F> {
    let coeffs = f.coeffs_in_var(ctx, v);
    let mut g = MPoly::zero(f.nvars());
    for c in coeffs {
        if !c.is_zero() {
            g = gcd(ctx, &g, &c);
        }
    }
    g
}

/// Pseudo-remainder of a by b in the variable v (up to a scalar-in-rest
/// factor, which the primitive PRS discards anyway).
fn prem<F: FieldOps>(ctx: &F, a: &MPoly<F>, b: &MPoly<F>, v: usize) -> MPoly<F> {
    let db = b.max_degree_in(v);
    let nb = b.coeffs_in_var(ctx, v);
    let lb = &nb[db as usize];
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.max_degree_in(v);
        if dr < db {
            break;
        }
        let rc = r.coeffs_in_var(ctx, v);
        let lr = rc[dr as usize].clone();
        // r <- lb * r - lr * x_v^(dr-db) * b
        let shifted = {
            let m = Mono::var(a.nvars(), v).stretch(dr - db);
            b.mul_term(ctx, &m, &ctx.one()).mul(ctx, &lr)
        };
        r = r.mul(ctx, lb).sub(ctx, &shifted);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::GF;
    use crate::arith::Prime;

    fn f5() -> GF {
        GF::prime_field(Prime::new(5).unwrap())
    }

    #[test]
    fn grevlex_order_is_standard() {
        // in k[x,y,z]: x > y > z, x*z > y^2 is FALSE in grevlex (deg equal,
        // diff (1,-2,1), rightmost nonzero +1 => x*z < y^2)
        let x = Mono(vec![1, 0, 0]);
        let y = Mono(vec![0, 1, 0]);
        let xz = Mono(vec![1, 0, 1]);
        let y2 = Mono(vec![0, 2, 0]);
        assert_eq!(x.cmp_order(&y, Order::GrevLex), Ordering::Greater);
        assert_eq!(xz.cmp_order(&y2, Order::GrevLex), Ordering::Less);
        // lex: x*z > y^2
        assert_eq!(xz.cmp_order(&y2, Order::Lex), Ordering::Greater);
    }

    #[test]
    fn arithmetic_roundtrip() {
        let f = f5();
        let x = MPoly::var(&f, 2, 0);
        let y = MPoly::var(&f, 2, 1);
        // (x+y)^2 = x^2 + 2xy + y^2
        let s = x.add(&f, &y).pow(&f, 2);
        let expect = MPoly::from_terms(
            &f,
            2,
            vec![
                (Mono(vec![2, 0]), f.one()),
                (Mono(vec![1, 1]), f.from_int(2)),
                (Mono(vec![0, 2]), f.one()),
            ],
        );
        assert_eq!(s, expect);
        assert_eq!(s.eval(&f, &[f.from_int(1), f.from_int(2)]), f.from_int(4));
    }

    #[test]
    fn partials() {
        let f = f5();
        let x = MPoly::var(&f, 2, 0);
        let y = MPoly::var(&f, 2, 1);
        let g = x.pow(&f, 3).mul(&f, &y).add(&f, &y.pow(&f, 2));
        let gx = g.partial(&f, 0);
        // d/dx (x^3 y + y^2) = 3x^2 y
        assert_eq!(
            gx,
            MPoly::from_term(&f, 2, Mono(vec![2, 1]), f.from_int(3))
        );
    }

    #[test]
    fn gcd_univariate() {
        let f = f5();
        let x = MPoly::var(&f, 1, 0);
        let one = MPoly::one(&f, 1);
        // gcd((x+1)^2 (x+2), (x+1)(x+3)) = x+1
        let a = x.add(&f, &one).pow(&f, 2).mul(&f, &x.add(&f, &one.scale(&f, &f.from_int(2))));
        let b = x.add(&f, &one).mul(&f, &x.add(&f, &one.scale(&f, &f.from_int(3))));
        let g = gcd(&f, &a, &b);
        assert_eq!(g, x.add(&f, &one));
    }

    #[test]
    fn gcd_multivariate() {
        let f = f5();
        // gcd((x+y)*x, (x+y)*y) = x+y in k[x,y]
        let x = MPoly::var(&f, 2, 0);
        let y = MPoly::var(&f, 2, 1);
        let s = x.add(&f, &y);
        let g = gcd(&f, &s.mul(&f, &x), &s.mul(&f, &y));
        assert_eq!(g, s);
        // and the quotients divide exactly
        let q = s.mul(&f, &x).div_exact(&f, &g).unwrap();
        assert_eq!(q, x);
    }
}
