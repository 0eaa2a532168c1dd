//! Buchberger's algorithm with the product criterion, full normal forms and
//! reduced Gröbner bases. The reduced basis is canonical (monic, sorted), so
//! ideal equality is plain equality of bases.

use std::cmp::Ordering;
use std::sync::OnceLock;

use crate::arith::FieldOps;
use crate::error::{Error, Result};
use crate::poly::{MPoly, Mono, Order};

/// Fully reduce f modulo the basis: no term of the result is divisible by a
/// leading monomial of the basis.
pub fn normal_form<F: FieldOps>(
    ctx: &F,
    f: &MPoly<F>,
    basis: &[MPoly<F>],
    ord: Order,
) -> MPoly<F> {
    let leads: Vec<(&Mono, &F::El)> = basis
        .iter()
        .map(|g| g.leading(ord).expect("basis elements are nonzero"))
        .collect();
    let mut work = f.clone();
    let mut rem: Vec<(Mono, F::El)> = Vec::new();
    while let Some((wm, wc)) = work.leading(ord) {
        let wm = wm.clone();
        let wc = wc.clone();
        let mut reduced = false;
        for (gi, (gm, gc)) in leads.iter().enumerate() {
            if let Some(q) = wm.try_div(gm) {
                let c = ctx.div(&wc, gc);
                work = work.sub(ctx, &basis[gi].mul_term(ctx, &q, &c));
                reduced = true;
                break;
            }
        }
        if !reduced {
            let lt = MPoly::from_term(ctx, f.nvars(), wm.clone(), wc.clone());
            rem.push((wm, wc));
            work = work.sub(ctx, &lt);
        }
    }
    MPoly::from_terms(ctx, f.nvars(), rem)
}

/// Buchberger with the coprimality criterion; returns the reduced basis.
pub fn buchberger<F: FieldOps>(
    ctx: &F,
    gens: &[MPoly<F>],
    ord: Order,
    max_pairs: usize,
) -> Result<Vec<MPoly<F>>> {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    let mut basis: Vec<MPoly<F>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let nf = normal_form(ctx, g, &basis, ord);
            if !nf.is_zero() {
                basis.push(nf.monic(ctx));
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    let mut processed = 0usize;
    while let Some(&(i, j)) = select_pair(ctx, &basis, &pairs, ord) {
        pairs.retain(|&p| p != (i, j));
        processed += 1;
        if processed > max_pairs {
            return Err(Error::BudgetExceeded {
                what: format!("groebner pair budget ({max_pairs})"),
            });
        }
        let (mi, _) = basis[i].leading(ord).unwrap();
        let (mj, _) = basis[j].leading(ord).unwrap();
        if mi.coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let qi = l.try_div(mi).unwrap();
        let qj = l.try_div(mj).unwrap();
        let s = basis[i]
            .mul_term(ctx, &qi, &ctx.one())
            .sub(ctx, &basis[j].mul_term(ctx, &qj, &ctx.one()));
        let nf = normal_form(ctx, &s, &basis, ord);
        if !nf.is_zero() {
            let nf = nf.monic(ctx);
            let k = basis.len();
            for t in 0..k {
                pairs.push((t, k));
            }
            basis.push(nf);
        }
    }
    Ok(reduce_basis(ctx, basis, ord, nvars))
}

fn select_pair<'a, F: FieldOps>(
    _ctx: &F,
    basis: &[MPoly<F>],
    pairs: &'a [(usize, usize)],
    ord: Order,
) -> Option<&'a (usize, usize)> {
    // normal strategy: smallest lcm first, deterministic tie-break
    pairs.iter().min_by(|a, b| {
        let la = lcm_of(basis, **a, ord);
        let lb = lcm_of(basis, **b, ord);
        la.cmp_order(&lb, ord).then_with(|| (*a).cmp(*b))
    })
}

fn lcm_of<F: FieldOps>(basis: &[MPoly<F>], (i, j): (usize, usize), ord: Order) -> Mono {
    let (mi, _) = basis[i].leading(ord).unwrap();
    let (mj, _) = basis[j].leading(ord).unwrap();
    mi.lcm(mj)
}

fn reduce_basis<F: FieldOps>(
    ctx: &F,
    mut basis: Vec<MPoly<F>>,
    ord: Order,
    nvars: usize,
) -> Vec<MPoly<F>> {
    let _ = nvars;
    // minimize: drop elements whose leading monomial another one divides
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (mi, _) = basis[i].leading(ord).unwrap();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, _) = basis[j].leading(ord).unwrap();
            if mi.try_div(mj).is_some() && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<MPoly<F>> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // inter-reduce fully
    let mut reduced: Vec<MPoly<F>> = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<MPoly<F>> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
            .collect();
        let nf = normal_form(ctx, &minimal[i], &others, ord);
        if !nf.is_zero() {
            reduced.push(nf.monic(ctx));
        }
    }
    reduced.sort_by(|a, b| {
        let (ma, _) = a.leading(ord).unwrap();
        let (mb, _) = b.leading(ord).unwrap();
        ma.cmp_order(mb, ord).then(Ordering::Equal)
    });
    reduced
}

/// An ideal with a lazily computed (and then immutable) reduced Gröbner
/// basis in grevlex order.
#[derive(Debug)]
pub struct Ideal<F: FieldOps> {
    gens: Vec<MPoly<F>>,
    gb: OnceLock<Vec<MPoly<F>>>,
}

impl<F: FieldOps> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let out = Ideal {
            gens: self.gens.clone(),
            gb: OnceLock::new(),
        };
        if let Some(g) = self.gb.get() {
            let _ = out.gb.set(g.clone());
        }
        out
    }
}

impl<F: FieldOps> Ideal<F> {
    pub fn new(gens: Vec<MPoly<F>>) -> Self {
        Ideal {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn gens(&self) -> &[MPoly<F>] {
        &self.gens
    }

    pub fn gb(&self, ctx: &F, max_pairs: usize) -> Result<&[MPoly<F>]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = buchberger(ctx, &self.gens, Order::GrevLex, max_pairs)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    pub fn normal_form(&self, ctx: &F, f: &MPoly<F>, max_pairs: usize) -> Result<MPoly<F>> {
        Ok(normal_form(ctx, f, self.gb(ctx, max_pairs)?, Order::GrevLex))
    }

    pub fn contains(&self, ctx: &F, f: &MPoly<F>, max_pairs: usize) -> Result<bool> {
        Ok(self.normal_form(ctx, f, max_pairs)?.is_zero())
    }

    pub fn is_unit_ideal(&self, ctx: &F, max_pairs: usize) -> Result<bool> {
        let gb = self.gb(ctx, max_pairs)?;
        Ok(gb.len() == 1 && gb[0].leading(Order::GrevLex).map(|(m, _)| m.is_one()) == Some(true))
    }

    /// Equality as ideals (mutual containment via canonical reduced bases).
    pub fn equals(&self, ctx: &F, other: &Ideal<F>, max_pairs: usize) -> Result<bool> {
        Ok(self.gb(ctx, max_pairs)? == other.gb(ctx, max_pairs)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::GF;
    use crate::arith::Prime;

    fn f7() -> GF {
        GF::prime_field(Prime::new(7).unwrap())
    }

    fn parse_simple(ctx: &GF, nvars: usize, terms: &[(Vec<u32>, i64)]) -> MPoly<GF> {
        MPoly::from_terms(
            ctx,
            nvars,
            terms
                .iter()
                .map(|(e, c)| (Mono(e.clone()), ctx.from_int(*c))),
        )
    }

    #[test]
    fn nf_single_generator() {
        let f = f7();
        // I = (x) in k[x,y]: nf(x^2 + y) = y
        let i = Ideal::new(vec![parse_simple(&f, 2, &[(vec![1, 0], 1)])]);
        let g = parse_simple(&f, 2, &[(vec![2, 0], 1), (vec![0, 1], 1)]);
        let nf = i.normal_form(&f, &g, 1000).unwrap();
        assert_eq!(nf, parse_simple(&f, 2, &[(vec![0, 1], 1)]));
    }

    #[test]
    fn xy_minus_z2_is_groebner() {
        let f = f7();
        // single generator is its own reduced basis
        let g = parse_simple(&f, 3, &[(vec![1, 1, 0], 1), (vec![0, 0, 2], -1)]);
        let i = Ideal::new(vec![g.clone()]);
        let gb = i.gb(&f, 1000).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0], g.monic(&f));
    }

    #[test]
    fn monomial_ideal() {
        let f = f7();
        // I = (x^2, x y): nf(x^2 y) = 0
        let i = Ideal::new(vec![
            parse_simple(&f, 2, &[(vec![2, 0], 1)]),
            parse_simple(&f, 2, &[(vec![1, 1], 1)]),
        ]);
        assert!(i
            .contains(&f, &parse_simple(&f, 2, &[(vec![2, 1], 1)]), 1000)
            .unwrap());
        assert!(!i
            .contains(&f, &parse_simple(&f, 2, &[(vec![1, 0], 1)]), 1000)
            .unwrap());
        let gb = i.gb(&f, 1000).unwrap();
        assert_eq!(gb.len(), 2);
    }

    #[test]
    fn cyclic_like_system() {
        let f = f7();
        // I = (x + y, x y - 1): gb should eliminate to y^2 + ... and have
        // the right quotient dimension (2 points)
        let i = Ideal::new(vec![
            parse_simple(&f, 2, &[(vec![1, 0], 1), (vec![0, 1], 1)]),
            parse_simple(&f, 2, &[(vec![1, 1], 1), (vec![0, 0], -1)]),
        ]);
        let gb = i.gb(&f, 1000).unwrap();
        // x + y and y^2 - ... : check x^2 reduces to a constant times y^0..1
        let x2 = parse_simple(&f, 2, &[(vec![2, 0], 1)]);
        let nf = normal_form(&f, &x2, gb, Order::GrevLex);
        assert!(nf.degree() < 2);
    }
}
