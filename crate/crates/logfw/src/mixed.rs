//! The mixed-characteristic base Z_(p): exact arithmetic over the p-local
//! rationals for the ring data, with all module computations happening in
//! the fiber mod p.
//!
//! Full Gröbner theory over Z_(p) is avoided. Supported ideals are those
//! whose reduced Gröbner basis over Q is p-integral with the same leading
//! terms as the fiber ideal mod p (then the quotient is Z_(p)-free on the
//! standard monomials, p is a nonzerodivisor, and dim R = dim R/pR + 1), or
//! whose Q-span is the unit ideal (then p is nilpotent and dim R equals the
//! fiber dimension). Everything else is rejected, not approximated.

use num_rational::BigRational;

use crate::arith::gf::GF;
use crate::arith::qq::{
    assert_p_local, p_valuation, residue_mod_p, zp_w_coeff, QQ,
};
use crate::arith::{FieldOps, Prime};
use crate::error::{Error, Result};
use crate::fwdiff::{FwElement, FwGen, FwLayout, FwVerdict, Presentation, RowTag};
use crate::groebner::Ideal;
use crate::poly::{MPoly, Order};
use crate::prelog::DefinitionVerdict;
use crate::ring::{PolyRing, PresentedRing};
use crate::monoid::AffineMonoid;
use crate::Budgets;

/// How the defining ideal sits over Z_(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealClass {
    /// The Q-Gröbner basis is p-integral and monic with the same leading
    /// terms as the fiber: the quotient is free over Z_(p) on the standard
    /// monomials, so p is a nonzerodivisor and Q-normal forms are faithful.
    Flat,
    /// p itself belongs to the ideal (an explicit generator with constant
    /// term p up to a p-unit): the ring is an F_p-algebra and the fiber
    /// carries everything exactly.
    PNilpotent,
}

/// A prelog ring over the p-local rationals, carried in two synchronized
/// presentations: the exact one over Q and the fiber mod p.
#[derive(Clone, Debug)]
pub struct ZpPrelog {
    pub p: Prime,
    pub ring_q: PresentedRing<QQ>,
    pub fiber: PresentedRing<GF>,
    pub monoid: AffineMonoid,
    pub alpha_q: Vec<MPoly<QQ>>,
    pub alpha_fiber: Vec<MPoly<GF>>,
    pub class: IdealClass,
}

pub fn reduce_mod_p(f: &MPoly<QQ>, p: Prime, fp: &GF) -> Result<MPoly<GF>> {
    for (_, c) in f.terms() {
        assert_p_local(c, p)?;
    }
    Ok(f.map_coeffs(fp, |c| fp.from_int(residue_mod_p(c, p) as i64)))
}

impl ZpPrelog {
    pub fn new(
        p: Prime,
        vars: Vec<String>,
        ideal_q: Vec<MPoly<QQ>>,
        monoid: AffineMonoid,
        alpha_q: Vec<MPoly<QQ>>,
        budgets: &Budgets,
    ) -> Result<ZpPrelog> {
        let qq = QQ;
        for f in ideal_q.iter().chain(alpha_q.iter()) {
            for (_, c) in f.terms() {
                assert_p_local(c, p)?;
            }
        }
        // ideal generators must lie in the maximal ideal (p, x_1..x_n)
        for f in &ideal_q {
            let c0 = f.constant_term(&qq);
            if !c0.eq(&BigRational::from_integer(0.into()))
                && p_valuation(&c0, p) == Some(0)
            {
                return Err(Error::PointNotOnVariety(format!(
                    "mixed-characteristic ideal generator has p-unit constant term {c0}"
                )));
            }
        }
        let ring_q = PolyRing::new(qq.clone(), vars.clone())?;
        let fp = GF::prime_field(p);
        let fiber_ring = PolyRing::new(fp.clone(), vars)?;
        let fiber_gens = ideal_q
            .iter()
            .map(|f| reduce_mod_p(f, p, &fp))
            .collect::<Result<Vec<_>>>()?;
        let ring_q = PresentedRing {
            ring: ring_q,
            ideal: Ideal::new(ideal_q),
        };
        let fiber = PresentedRing::new(fiber_ring, fiber_gens)?;
        let alpha_fiber = alpha_q
            .iter()
            .map(|f| reduce_mod_p(f, p, &fp))
            .collect::<Result<Vec<_>>>()?;
        // classify the ideal
        let gbq = ring_q.ideal.gb(&qq, budgets.groebner_pairs)?;
        let class = if gbq.len() == 1 && gbq[0].leading(Order::GrevLex).unwrap().0.is_one() {
            // p is nilpotent; require p itself among the generators so the
            // fiber carries the ring exactly
            let has_p = ring_q.ideal.gens().iter().any(|g| {
                g.num_terms() == 1 && p_valuation(&g.constant_term(&qq), p) == Some(1)
            });
            if !has_p {
                return Err(Error::UnsupportedMixedIdeal(
                    "the ideal contains a power of p but not p itself; \
                     such quotients are outside the supported fixture class"
                        .into(),
                ));
            }
            IdealClass::PNilpotent
        } else {
            IdealClass::Flat
        };
        // in the flat class, Q-normal forms are faithful: canonicalize alpha
        let alpha_q = match class {
            IdealClass::Flat => alpha_q
                .iter()
                .map(|a| ring_q.nf(a, budgets))
                .collect::<Result<Vec<_>>>()?,
            IdealClass::PNilpotent => alpha_q,
        };
        let zp = ZpPrelog {
            p,
            ring_q,
            fiber,
            monoid,
            alpha_q,
            alpha_fiber,
            class,
        };
        if zp.alpha_q.len() != zp.monoid.num_gens() {
            return Err(Error::Instance(format!(
                "alpha assigns {} images to {} monoid generators",
                zp.alpha_q.len(),
                zp.monoid.num_gens()
            )));
        }
        // fail early if the ideal is outside the supported class
        zp.dimension_of(&[], &[], budgets)?;
        Ok(zp)
    }

    /// dim of Z_(p)[x]_(p,x) / (I + extra), by the fiber-comparison rule.
    pub(crate) fn dimension_of(
        &self,
        extra_q: &[MPoly<QQ>],
        extra_fiber: &[MPoly<GF>],
        budgets: &Budgets,
    ) -> Result<usize> {
        let qq = self.ring_q.ctx();
        let mut gens_q = self.ring_q.ideal.gens().to_vec();
        gens_q.extend(extra_q.iter().cloned());
        let iq = Ideal::new(gens_q);
        let gbq = iq.gb(qq, budgets.groebner_pairs)?;
        let fiber_quot = self.fiber.quotient(extra_fiber.to_vec())?;
        if gbq.len() == 1 && gbq[0].leading(Order::GrevLex).unwrap().0.is_one() {
            // the ideal contains a p-power: p is nilpotent in the quotient
            return fiber_quot.dimension(budgets);
        }
        // p-integral monic basis with matching leading terms?
        for g in gbq {
            for (_, c) in g.terms() {
                if !crate::arith::qq::is_p_local(c, self.p) {
                    return Err(Error::UnsupportedMixedIdeal(format!(
                        "rational Groebner basis element {} is not {}-integral",
                        g.display(qq, &self.ring_q.ring.vars),
                        self.p
                    )));
                }
            }
        }
        let lt_q: Vec<_> = gbq
            .iter()
            .map(|g| g.leading(Order::GrevLex).unwrap().0.clone())
            .collect();
        let lt_p: Vec<_> = fiber_quot
            .gb(budgets)?
            .iter()
            .map(|g| g.leading(Order::GrevLex).unwrap().0.clone())
            .collect();
        if lt_q != lt_p {
            return Err(Error::UnsupportedMixedIdeal(
                "leading terms over Q and over F_p differ; the quotient is not visibly p-flat"
                    .into(),
            ));
        }
        Ok(fiber_quot.dimension(budgets)? + 1)
    }

    /// Embedding dimension of the local ring at (p, x) modulo (I + extra):
    /// n + 1 minus the rank of the linear parts over F_p, with the p-column
    /// carrying (c_0 / p) mod p.
    pub(crate) fn edim_of(&self, extra_q: &[MPoly<QQ>]) -> usize {
        let fp = self.fiber.ctx();
        let n = self.ring_q.nvars();
        let qq = self.ring_q.ctx();
        let rows: Vec<Vec<Vec<u64>>> = self
            .ring_q
            .ideal
            .gens()
            .iter()
            .chain(extra_q.iter())
            .map(|f| {
                let mut row = Vec::with_capacity(n + 1);
                let c0 = f.constant_term(qq);
                let p_entry = if qq.is_zero(&c0) {
                    0
                } else if p_valuation(&c0, self.p) == Some(1) {
                    let scaled = &c0 / BigRational::from_integer(self.p.get().into());
                    residue_mod_p(&scaled, self.p)
                } else {
                    0
                };
                row.push(vec![p_entry]);
                for i in 0..n {
                    let ci = f.partial(qq, i).constant_term(qq);
                    row.push(vec![residue_mod_p(&ci, self.p)]);
                }
                row
            })
            .collect();
        let rows: Vec<Vec<Vec<u64>>> = rows;
        (n + 1) - crate::linalg::rank(fp, &rows)
    }

    pub fn alpha_power_q(&self, exponents: &[u64], budgets: &Budgets) -> Result<MPoly<QQ>> {
        let qq = self.ring_q.ctx();
        let mut acc = MPoly::one(qq, self.ring_q.nvars());
        for (a, &e) in self.alpha_q.iter().zip(exponents) {
            for _ in 0..e {
                acc = acc.mul(qq, a);
                if self.class == IdealClass::Flat {
                    acc = self.ring_q.nf(&acc, budgets)?;
                }
            }
        }
        Ok(acc)
    }

    /// f is a unit of the local ring iff the constant term of its normal
    /// form is a p-unit. In the p-nilpotent class units are detected in the
    /// fiber (units lift along nilpotents).
    pub fn is_local_unit(&self, f: &MPoly<QQ>, budgets: &Budgets) -> Result<bool> {
        match self.class {
            IdealClass::Flat => {
                let nf = self.ring_q.nf(f, budgets)?;
                let c = nf.constant_term(self.ring_q.ctx());
                Ok(p_valuation(&c, self.p) == Some(0))
            }
            IdealClass::PNilpotent => {
                let red = reduce_mod_p(f, self.p, self.fiber.ctx())?;
                self.fiber.is_local_unit(&red, budgets)
            }
        }
    }

    /// Same validation content as the equal-characteristic case.
    pub fn validate(&self, budgets: &Budgets) -> Result<crate::prelog::ValidationNotes> {
        let qq = self.ring_q.ctx().clone();
        let congruence: Vec<MPoly<QQ>> =
            crate::ring::toric_ideal(&qq, &self.monoid, budgets)?;
        for binom in &congruence {
            let terms = binom.terms();
            let (ma, _) = &terms[0];
            let (mb, _) = &terms[1];
            let expa: Vec<u64> = ma.0.iter().map(|&e| e as u64).collect();
            let expb: Vec<u64> = mb.0.iter().map(|&e| e as u64).collect();
            let va = self.alpha_power_q(&expa, budgets)?;
            let vb = self.alpha_power_q(&expb, budgets)?;
            let diff = va.sub(&qq, &vb);
            let respected = match self.class {
                IdealClass::Flat => self.ring_q.nf(&diff, budgets)?.is_zero(),
                // the ring is an F_p-algebra: the fiber decides exactly
                IdealClass::PNilpotent => {
                    let red = reduce_mod_p(&diff, self.p, self.fiber.ctx())?;
                    self.fiber.nf(&red, budgets)?.is_zero()
                }
            };
            if !respected {
                return Err(Error::NotAHomomorphism(
                    "monoid relation not respected by alpha".into(),
                ));
            }
        }
        let cone = self.monoid.cone();
        for (i, a) in self.alpha_q.iter().enumerate() {
            let unit_img = self.is_local_unit(a, budgets)?;
            let unit_gen = cone.unit_idx.contains(&i);
            if unit_img != unit_gen {
                return Err(Error::NotLocalPrelog(format!(
                    "generator {:?} locality mismatch",
                    self.monoid.gens()[i]
                )));
            }
        }
        let mut locality = "generators".to_string();
        if !self.monoid.is_saturated(budgets)? {
            let sat = self.monoid.saturate(budgets)?;
            let mut checked = 0usize;
            for h in sat.gens() {
                if let Some(wit) = self.monoid.member_witness(h, budgets)? {
                    let img = self.alpha_power_q(&wit, budgets)?;
                    let unit_img = self.is_local_unit(&img, budgets)?;
                    let unit_h = wit
                        .iter()
                        .enumerate()
                        .all(|(i, &n)| n == 0 || cone.unit_idx.contains(&i));
                    if unit_img != unit_h {
                        return Err(Error::NotLocalPrelog(format!(
                            "hilbert element {h:?} violates locality"
                        )));
                    }
                    checked += 1;
                }
            }
            locality = format!("generators+hilbert({checked})");
        }
        Ok(crate::prelog::ValidationNotes {
            homomorphism_relations: congruence.len(),
            locality_checked_on: locality,
            is_local: true,
        })
    }

    pub(crate) fn ideal_i_alpha_q(&self) -> Vec<MPoly<QQ>> {
        let cone = self.monoid.cone();
        cone.pointed_idx
            .iter()
            .map(|&i| self.alpha_q[i].clone())
            .collect()
    }

    pub(crate) fn ideal_i_alpha_fiber(&self) -> Vec<MPoly<GF>> {
        let cone = self.monoid.cone();
        cone.pointed_idx
            .iter()
            .map(|&i| self.alpha_fiber[i].clone())
            .collect()
    }

    pub fn require_supported_monoid(&self, budgets: &Budgets) -> Result<()> {
        let (sharp, _) = self.monoid.sharpen()?;
        if !sharp.is_saturated(budgets)? {
            return Err(Error::UnsupportedMonoid(
                "the sharpening of Q is not saturated; log regularity is not defined".into(),
            ));
        }
        Ok(())
    }

    pub fn sharp_reduce(&self, budgets: &Budgets) -> Result<ZpPrelog> {
        if self.monoid.is_sharp() {
            return Ok(self.clone());
        }
        let (sharp, pi) = self.monoid.sharpen()?;
        let section = self.monoid.section(&sharp, &pi, budgets)?;
        let alpha_q = section
            .witnesses
            .iter()
            .map(|w| self.alpha_power_q(w, budgets))
            .collect::<Result<Vec<_>>>()?;
        let fp = self.fiber.ctx();
        let alpha_fiber = alpha_q
            .iter()
            .map(|a| {
                let red = reduce_mod_p(a, self.p, fp)?;
                self.fiber.nf(&red, budgets)
            })
            .collect::<Result<Vec<_>>>()?;
        let reduced = ZpPrelog {
            p: self.p,
            ring_q: self.ring_q.clone(),
            fiber: self.fiber.clone(),
            monoid: sharp,
            alpha_q,
            alpha_fiber,
            class: self.class,
        };
        // tripwire: I_alpha must not change (checked over Q in the flat
        // class, and in the fiber always)
        let qq = self.ring_q.ctx();
        let with_q = |extra: Vec<MPoly<QQ>>| {
            let mut gens = self.ring_q.ideal.gens().to_vec();
            gens.extend(extra);
            Ideal::new(gens)
        };
        if self.class == IdealClass::Flat
            && !with_q(self.ideal_i_alpha_q()).equals(
                qq,
                &with_q(reduced.ideal_i_alpha_q()),
                budgets.groebner_pairs,
            )?
        {
            return Err(Error::Internal("I_alpha changed under sharp reduction".into()));
        }
        let fp = self.fiber.ctx();
        let with_f = |extra: Vec<MPoly<GF>>| {
            let mut gens = self.fiber.ideal.gens().to_vec();
            gens.extend(extra);
            Ideal::new(gens)
        };
        if !with_f(self.ideal_i_alpha_fiber()).equals(
            fp,
            &with_f(reduced.ideal_i_alpha_fiber()),
            budgets.groebner_pairs,
        )? {
            return Err(Error::Internal(
                "fiber I_alpha changed under sharp reduction".into(),
            ));
        }
        Ok(reduced)
    }

    pub fn log_regular_by_definition(&self, budgets: &Budgets) -> Result<DefinitionVerdict> {
        self.require_supported_monoid(budgets)?;
        let red = self.sharp_reduce(budgets)?;
        let dim_r = red.dimension_of(&[], &[], budgets)?;
        let ia_q = red.ideal_i_alpha_q();
        let ia_f = red.ideal_i_alpha_fiber();
        let dim_quot = red.dimension_of(&ia_q, &ia_f, budgets)?;
        let edim_quot = red.edim_of(&ia_q);
        let quotient_regular = dim_quot == edim_quot;
        let dim_q = red.monoid.dim_rank();
        Ok(DefinitionVerdict {
            dim_r,
            dim_r_mod_ialpha: dim_quot,
            dim_q,
            quotient_regular,
            is_log_regular: quotient_regular && dim_r == dim_quot + dim_q,
        })
    }

    /// w(f) for f over Z_(p): the expansion acquires a w(p) component, with
    /// the constant part given by the extended Fermat quotient and the
    /// divided-power correction of the term decomposition.
    pub fn fw_expand(&self, f: &MPoly<QQ>, budgets: &Budgets) -> Result<FwElement<GF>> {
        let qq = self.ring_q.ctx();
        let fp = self.fiber.ctx();
        let p = self.p.get() as u32;
        let n = self.ring_q.nvars();
        let mut out: FwElement<GF> = FwElement::zero();
        for (m, c) in f.terms() {
            let xpm = m.stretch(p);
            let wc = zp_w_coeff(c, self.p);
            if wc != 0 {
                out.add_term(
                    fp,
                    FwGen::WP,
                    MPoly::from_term(fp, n, xpm.clone(), fp.from_int(wc as i64)),
                );
            }
            let cres = residue_mod_p(c, self.p);
            for i in 0..n {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let mult = cres * (e as u64 % p as u64) % self.p.get();
                if mult == 0 {
                    continue;
                }
                let mut lower = m.clone();
                lower.0[i] -= 1;
                out.add_term(
                    fp,
                    FwGen::WVar(i),
                    MPoly::from_term(fp, n, lower.stretch(p), fp.from_int(mult as i64)),
                );
            }
        }
        // minus the divided-power correction of the term decomposition:
        // (f^p - sum of term^p)/p, exactly over Q, then mod p
        let fpow = f.pow(qq, p);
        let mut sum_pows = MPoly::zero(n);
        for (m, c) in f.terms() {
            let term = MPoly::from_term(qq, n, m.clone(), c.clone());
            sum_pows = sum_pows.add(qq, &term.pow(qq, p));
        }
        let pinv = BigRational::new(1.into(), self.p.get().into());
        let corr = fpow.sub(qq, &sum_pows).scale(qq, &pinv);
        let corr_fiber = reduce_mod_p(&corr, self.p, fp)?;
        out.add_term(fp, FwGen::WP, corr_fiber.neg(fp));
        // reduce into the fiber quotient
        let mut nf_out: FwElement<GF> = FwElement::zero();
        for (g, cpoly) in &out.coeffs {
            nf_out.add_term(fp, *g, self.fiber.nf(cpoly, budgets)?);
        }
        Ok(nf_out)
    }

    /// The presentation of the module of log FW-differentials mod p over
    /// the fiber, including the w(p) generator.
    pub fn presentation(&self, sharpen: bool, budgets: &Budgets) -> Result<Presentation<GF>> {
        let reduced;
        let zp: &ZpPrelog = if sharpen {
            reduced = self.sharp_reduce(budgets)?;
            &reduced
        } else {
            self
        };
        let fp = zp.fiber.ctx();
        let p = zp.p.get() as u32;
        let layout = FwLayout {
            has_wp: true,
            nvars: zp.ring_q.nvars(),
            nbase: 0,
            log_rank: zp.monoid.gp_rank(),
        };
        let gens = layout.gens();
        let mut rows = Vec::new();
        let mut tags = Vec::new();
        let mut push_row = |el: FwElement<GF>, tag: RowTag| {
            let row: Vec<MPoly<GF>> = gens
                .iter()
                .map(|g| {
                    el.coeffs
                        .get(g)
                        .cloned()
                        .unwrap_or_else(|| MPoly::zero(zp.ring_q.nvars()))
                })
                .collect();
            rows.push(row);
            tags.push(tag);
        };
        for (j, f) in zp.ring_q.ideal.gens().iter().enumerate() {
            let el = zp.fw_expand(f, budgets)?;
            push_row(el, RowTag::IdealGen(j));
        }
        let gp = zp.monoid.gp_lattice();
        for (i, q) in zp.monoid.gens().iter().enumerate() {
            let mut el = zp.fw_expand(&zp.alpha_q[i], budgets)?;
            let ap = zp.fiber.nf(&zp.alpha_fiber[i].pow(fp, p), budgets)?;
            let coords = gp.coords(q).expect("generator in its own group");
            for (bidx, &cb) in coords.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                el.add_term(fp, FwGen::WLog(bidx), ap.scale(fp, &fp.from_int(-cb)));
            }
            let mut nf_el: FwElement<GF> = FwElement::zero();
            for (g, c) in &el.coeffs {
                nf_el.add_term(fp, *g, zp.fiber.nf(c, budgets)?);
            }
            push_row(nf_el, RowTag::LogRel(i));
        }
        Ok(Presentation {
            layout,
            gens,
            rows,
            tags,
        })
    }

    pub fn fw_criterion_verdict(&self, budgets: &Budgets) -> Result<FwVerdict> {
        self.require_supported_monoid(budgets)?;
        let red = self.sharp_reduce(budgets)?;
        let pres = red.presentation(false, budgets)?;
        let dim_r = red.dimension_of(&[], &[], budgets)?;
        let target = dim_r; // r = 0 for the residue field F_p
        let rank = pres.rank_at_closed_point(red.fiber.ctx());
        let free = crate::fwdiff::is_free_of_rank(&pres, &red.fiber, target, budgets)?;
        Ok(FwVerdict {
            target_rank: target,
            rank_at_closed_point: rank,
            condition2: rank == target,
            free_of_target_rank: free,
            is_log_regular: rank == target,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn b() -> Budgets {
        Budgets::default()
    }

    fn pq(vars: &[&str], src: &str) -> MPoly<QQ> {
        let qq = QQ;
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let resolve = |s: &str| -> Option<MPoly<QQ>> {
            names
                .iter()
                .position(|n| n == s)
                .map(|i| MPoly::var(&qq, names.len(), i))
        };
        parse_poly(&qq, vars.len(), src, &resolve).unwrap()
    }

    fn zp_line() -> ZpPrelog {
        // R = Z_(2)[x] at (2, x), Q = N, alpha(1) = x
        ZpPrelog::new(
            Prime::new(2).unwrap(),
            vec!["x".into()],
            vec![],
            AffineMonoid::new(1, vec![vec![1]]).unwrap(),
            vec![pq(&["x"], "x")],
            &b(),
        )
        .unwrap()
    }

    #[test]
    fn zp_line_is_log_regular_both_routes() {
        let zp = zp_line();
        zp.validate(&b()).unwrap();
        let d = zp.log_regular_by_definition(&b()).unwrap();
        assert!(d.is_log_regular, "{d:?}");
        assert_eq!((d.dim_r, d.dim_r_mod_ialpha, d.dim_q), (2, 1, 1));
        let v = zp.fw_criterion_verdict(&b()).unwrap();
        assert_eq!(v.target_rank, 2);
        assert_eq!(v.rank_at_closed_point, 2);
        assert!(v.is_log_regular);
        assert!(v.free_of_target_rank);
    }

    #[test]
    fn zp_node_is_not_log_regular() {
        // R = Z_(2)[x,y], Q = N, alpha(1) = xy
        let zp = ZpPrelog::new(
            Prime::new(2).unwrap(),
            vec!["x".into(), "y".into()],
            vec![],
            AffineMonoid::new(1, vec![vec![1]]).unwrap(),
            vec![pq(&["x", "y"], "x*y")],
            &b(),
        )
        .unwrap();
        zp.validate(&b()).unwrap();
        let d = zp.log_regular_by_definition(&b()).unwrap();
        assert!(!d.is_log_regular);
        assert!(!d.quotient_regular); // Z_(p)[x,y]/(xy): edim 3, dim 2
        let v = zp.fw_criterion_verdict(&b()).unwrap();
        assert!(!v.is_log_regular);
        assert_eq!(v.rank_at_closed_point, 4); // w(p), w(x), w(y), wlog
        assert_eq!(v.target_rank, 3);
    }

    #[test]
    fn expansion_of_sum_has_correction_term() {
        // w(x + y) = w(x) + w(y) - P(x, y) w(p), and for p = 2 the
        // correction is x y
        let zp = ZpPrelog::new(
            Prime::new(2).unwrap(),
            vec!["x".into(), "y".into()],
            vec![],
            AffineMonoid::trivial(),
            vec![],
            &b(),
        )
        .unwrap();
        let f = pq(&["x", "y"], "x + y");
        let el = zp.fw_expand(&f, &b()).unwrap();
        let fp = zp.fiber.ctx();
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(el.coeffs[&FwGen::WVar(0)].display(fp, &names), "1");
        assert_eq!(el.coeffs[&FwGen::WVar(1)].display(fp, &names), "1");
        assert_eq!(el.coeffs[&FwGen::WP].display(fp, &names), "x*y");
    }

    #[test]
    fn w_of_integer_constants() {
        // w(p) = w(p): coefficient 1; w(2x) over Z_(2) = x^2 w(p)
        let zp = ZpPrelog::new(
            Prime::new(2).unwrap(),
            vec!["x".into()],
            vec![],
            AffineMonoid::trivial(),
            vec![],
            &b(),
        )
        .unwrap();
        let fp = zp.fiber.ctx();
        let names = vec!["x".to_string()];
        let wp = zp.fw_expand(&pq(&["x"], "2"), &b()).unwrap();
        assert_eq!(wp.coeffs[&FwGen::WP].display(fp, &names), "1");
        assert_eq!(wp.coeffs.len(), 1);
        let w2x = zp.fw_expand(&pq(&["x"], "2*x"), &b()).unwrap();
        assert_eq!(w2x.coeffs[&FwGen::WP].display(fp, &names), "x^2");
        assert!(!w2x.coeffs.contains_key(&FwGen::WVar(0)));
    }

    #[test]
    fn unsupported_mixed_ideal_is_rejected() {
        // (2x - y) over Z_(2): Groebner over Q is x - y/2, not 2-integral,
        // and the leading terms over Q and F_2 differ
        let r = ZpPrelog::new(
            Prime::new(2).unwrap(),
            vec!["x".into(), "y".into()],
            vec![pq(&["x", "y"], "2*x - y")],
            AffineMonoid::trivial(),
            vec![],
            &b(),
        );
        assert!(matches!(r, Err(Error::UnsupportedMixedIdeal(_))));
    }

    #[test]
    fn p_in_ideal_gives_fiber_dimension() {
        // R = Z_(2)[x]/(2) = F_2[x]: dim 1, and (R, N, x) is log regular
        let zp = ZpPrelog::new(
            Prime::new(2).unwrap(),
            vec!["x".into()],
            vec![pq(&["x"], "2")],
            AffineMonoid::new(1, vec![vec![1]]).unwrap(),
            vec![pq(&["x"], "x")],
            &b(),
        )
        .unwrap();
        let d = zp.log_regular_by_definition(&b()).unwrap();
        assert_eq!(d.dim_r, 1);
        assert!(d.is_log_regular, "{d:?}");
        let v = zp.fw_criterion_verdict(&b()).unwrap();
        assert_eq!(v.is_log_regular, d.is_log_regular);
    }
}
