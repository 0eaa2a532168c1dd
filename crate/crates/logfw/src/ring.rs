//! Finitely presented algebras over the supported bases, localized at the
//! origin: dimension, the Jacobian regularity test, and toric ideals of
//! affine monoids.
//!
//! Localization is implicit: dimensions are computed affinely under the
//! documented equidimensional-through-the-origin precondition, and a ring
//! element is a local unit exactly when its normal form has a nonzero
//! constant term.

use crate::arith::{FieldOps, FwBase};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, Ideal};
use crate::intlin::Mat;
use crate::linalg;
use crate::monoid::AffineMonoid;
use crate::parser::parse_poly;
use crate::poly::{MPoly, Mono, Order};
use crate::Budgets;

/// The ambient polynomial ring: a coefficient context and named variables,
/// monomials ordered by graded-reverse-lex.
#[derive(Clone, Debug)]
pub struct PolyRing<F: FieldOps> {
    pub ctx: F,
    pub vars: Vec<String>,
}

impl<F: FieldOps> PolyRing<F> {
    pub fn new(ctx: F, vars: Vec<String>) -> Result<PolyRing<F>> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.clone()) {
                return Err(Error::Instance(format!("duplicate variable name {v:?}")));
            }
        }
        Ok(PolyRing { ctx, vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, i: usize) -> MPoly<F> {
        MPoly::var(&self.ctx, self.nvars(), i)
    }

    /// Parse with ring variables in scope plus any extra identifiers the
    /// base provides (t_j, z).
    pub fn parse_with(
        &self,
        src: &str,
        extra: &dyn Fn(&str) -> Option<MPoly<F>>,
    ) -> Result<MPoly<F>> {
        let resolve = |name: &str| -> Option<MPoly<F>> {
            if let Some(i) = self.vars.iter().position(|v| v == name) {
                return Some(self.var(i));
            }
            extra(name)
        };
        parse_poly(&self.ctx, self.nvars(), src, &resolve)
    }

    pub fn show(&self, f: &MPoly<F>) -> String {
        f.display(&self.ctx, &self.vars)
    }
}

/// A quotient of the ambient ring, implicitly localized at the origin. The
/// origin is required to lie on the vanishing locus of the ideal.
#[derive(Clone, Debug)]
pub struct PresentedRing<F: FieldOps> {
    pub ring: PolyRing<F>,
    pub ideal: Ideal<F>,
}

impl<F: FieldOps> PresentedRing<F> {
    pub fn new(ring: PolyRing<F>, gens: Vec<MPoly<F>>) -> Result<PresentedRing<F>> {
        for g in &gens {
            if !ring.ctx.is_zero(&g.constant_term(&ring.ctx)) {
                return Err(Error::PointNotOnVariety(format!(
                    "ideal generator {} has nonzero constant term",
                    ring.show(g)
                )));
            }
        }
        Ok(PresentedRing {
            ring,
            ideal: Ideal::new(gens),
        })
    }

    pub fn ctx(&self) -> &F {
        &self.ring.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gb(&self, budgets: &Budgets) -> Result<&[MPoly<F>]> {
        self.ideal.gb(self.ctx(), budgets.groebner_pairs)
    }

    pub fn nf(&self, f: &MPoly<F>, budgets: &Budgets) -> Result<MPoly<F>> {
        self.ideal.normal_form(self.ctx(), f, budgets.groebner_pairs)
    }

    /// Is f a unit in the local ring at the origin?
    pub fn is_local_unit(&self, f: &MPoly<F>, budgets: &Budgets) -> Result<bool> {
        let nf = self.nf(f, budgets)?;
        Ok(!self.ctx().is_zero(&nf.constant_term(self.ctx())))
    }

    /// Krull dimension of the affine quotient via maximal sets of variables
    /// independent modulo the leading-term ideal.
    pub fn dimension(&self, budgets: &Budgets) -> Result<usize> {
        let gb = self.gb(budgets)?;
        let n = self.nvars();
        let leads: Vec<&Mono> = gb
            .iter()
            .map(|g| g.leading(Order::GrevLex).unwrap().0)
            .collect();
        if leads.iter().any(|m| m.is_one()) {
            return Err(Error::Internal(
                "unit ideal has no dimension; the origin check should have caught this".into(),
            ));
        }
        assert!(n <= 20, "dimension enumeration limited to 20 variables");
        let mut best = 0usize;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            // S independent iff no leading monomial is supported inside S
            let independent = leads.iter().all(|m| {
                m.0.iter()
                    .enumerate()
                    .any(|(i, &e)| e > 0 && mask >> i & 1 == 0)
            });
            if independent {
                best = size;
            }
        }
        Ok(best)
    }

    /// Embedding dimension of the local ring at the origin:
    /// n - rank(Jacobian of the ideal generators at 0).
    pub fn edim_at_origin(&self) -> usize {
        self.nvars() - self.jacobian_rank_at_origin()
    }

    pub fn jacobian_rank_at_origin(&self) -> usize {
        let ctx = self.ctx();
        let rows: Vec<Vec<F::El>> = self
            .ideal
            .gens()
            .iter()
            .map(|g| {
                (0..self.nvars())
                    .map(|i| g.partial(ctx, i).constant_term(ctx))
                    .collect()
            })
            .collect();
        linalg::rank(ctx, &rows)
    }

    /// Quotient by additional elements (the presentation of R/J).
    pub fn quotient(&self, extra: Vec<MPoly<F>>) -> Result<PresentedRing<F>> {
        let mut gens = self.ideal.gens().to_vec();
        gens.extend(extra);
        PresentedRing::new(self.ring.clone(), gens)
    }
}

impl<F: FwBase> PresentedRing<F> {
    /// Regularity of the local ring at the origin by the Jacobian criterion:
    /// regular iff dim = edim. The criterion needs justification over
    /// imperfect bases; instances flag that explicitly.
    pub fn is_regular_at_origin(&self, allow_imperfect: bool, budgets: &Budgets) -> Result<bool> {
        if self.ctx().residue_r() > 0 && !allow_imperfect {
            return Err(Error::ImperfectBaseUnsupported(format!(
                "base {} is imperfect; set the geometrically-regular-safe flag on the instance",
                self.ctx().descriptor()
            )));
        }
        Ok(self.dimension(budgets)? == self.edim_at_origin())
    }
}

/// The toric ideal of a fine monoid: the kernel of k[y_1..y_m] -> k[Q],
/// y_a -> monomial of generator a. Computed from a lattice basis of the
/// relations among the generators, saturated by the product of all
/// variables via a lex elimination step.
pub fn toric_ideal<F: FieldOps>(
    ctx: &F,
    monoid: &AffineMonoid,
    budgets: &Budgets,
) -> Result<Vec<MPoly<F>>> {
    let m = monoid.num_gens();
    if m == 0 {
        return Ok(Vec::new());
    }
    let gens_mat: Mat = monoid.gens().to_vec();
    let kernel = crate::intlin::smith_normal_form(&gens_mat).left_kernel();
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    let binomials: Vec<MPoly<F>> = kernel
        .iter()
        .map(|u| binomial_of(ctx, m, u))
        .collect();
    saturate_by_all_vars(ctx, m, binomials, budgets)
}

fn binomial_of<F: FieldOps>(ctx: &F, m: usize, u: &[i64]) -> MPoly<F> {
    let mut plus = vec![0u32; m];
    let mut minus = vec![0u32; m];
    for (i, &ui) in u.iter().enumerate() {
        if ui > 0 {
            plus[i] = ui as u32;
        } else {
            minus[i] = (-ui) as u32;
        }
    }
    MPoly::from_term(ctx, m, Mono(plus), ctx.one()).sub(
        ctx,
        &MPoly::from_term(ctx, m, Mono(minus), ctx.one()),
    )
}

/// (I : (y_1 ... y_m)^inf) via the auxiliary-variable trick: eliminate w
/// from I + (w y_1 ... y_m - 1) with a lex order that puts w first.
fn saturate_by_all_vars<F: FieldOps>(
    ctx: &F,
    m: usize,
    gens: Vec<MPoly<F>>,
    budgets: &Budgets,
) -> Result<Vec<MPoly<F>>> {
    // extended ring: w = variable 0, then y_1..y_m
    let ext = |f: &MPoly<F>| -> MPoly<F> {
        MPoly::from_terms(
            ctx,
            m + 1,
            f.terms().iter().map(|(mono, c)| {
                let mut e = vec![0u32; m + 1];
                e[1..].clone_from_slice(&mono.0);
                (Mono(e), c.clone())
            }),
        )
    };
    let mut ext_gens: Vec<MPoly<F>> = gens.iter().map(&ext).collect();
    let mut all = vec![1u32; m + 1];
    all[0] = 1;
    ext_gens.push(
        MPoly::from_term(ctx, m + 1, Mono(all), ctx.one())
            .sub(ctx, &MPoly::one(ctx, m + 1)),
    );
    let gb = buchberger(ctx, &ext_gens, Order::Lex, budgets.groebner_pairs)?;
    let mut out = Vec::new();
    for g in gb {
        if g.max_degree_in(0) == 0 {
            // drop the w coordinate
            let shrunk = MPoly::from_terms(
                ctx,
                m,
                g.terms()
                    .iter()
                    .map(|(mono, c)| (Mono(mono.0[1..].to_vec()), c.clone())),
            );
            out.push(shrunk);
        }
    }
    // re-reduce in the grevlex world for a canonical presentation
    Ok(buchberger(ctx, &out, Order::GrevLex, budgets.groebner_pairs)?)
}

/// Residue data [k : k^p] = p^r of the base.
pub fn residue_r<F: FwBase>(ctx: &F) -> usize {
    ctx.residue_r()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::GF;
    use crate::arith::Prime;

    fn f5ring(vars: &[&str]) -> PolyRing<GF> {
        PolyRing::new(
            GF::prime_field(Prime::new(5).unwrap()),
            vars.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn b() -> Budgets {
        Budgets::default()
    }

    fn pr(ring: &PolyRing<GF>, gens: &[&str]) -> PresentedRing<GF> {
        let gens = gens
            .iter()
            .map(|s| ring.parse_with(s, &|_| None).unwrap())
            .collect();
        PresentedRing::new(ring.clone(), gens).unwrap()
    }

    #[test]
    fn dimensions() {
        let r = f5ring(&["x", "y"]);
        assert_eq!(pr(&r, &[]).dimension(&b()).unwrap(), 2);
        assert_eq!(pr(&r, &["x*y"]).dimension(&b()).unwrap(), 1);
        let r3 = f5ring(&["x", "y", "z"]);
        assert_eq!(pr(&r3, &["x*y - z^2"]).dimension(&b()).unwrap(), 2);
    }

    #[test]
    fn regularity_examples() {
        // smooth curve y = x^2: regular (dim 1 = edim 1)
        let r = f5ring(&["x", "y"]);
        let smooth = pr(&r, &["y - x^2"]);
        assert!(smooth.is_regular_at_origin(false, &b()).unwrap());
        // node xy: not regular
        let node = pr(&r, &["x*y"]);
        assert!(!node.is_regular_at_origin(false, &b()).unwrap());
        // quadric cone: dim 2, edim 3
        let r3 = f5ring(&["x", "y", "z"]);
        let cone = pr(&r3, &["x*y - z^2"]);
        assert_eq!(cone.edim_at_origin(), 3);
        assert!(!cone.is_regular_at_origin(false, &b()).unwrap());
        // full polynomial rings are regular
        for n in 1..=4 {
            let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
            let r = f5ring(&refs);
            assert!(pr(&r, &[]).is_regular_at_origin(false, &b()).unwrap());
        }
    }

    #[test]
    fn point_must_lie_on_variety() {
        let r = f5ring(&["x"]);
        let bad = r.parse_with("x - 1", &|_| None).unwrap();
        assert!(matches!(
            PresentedRing::new(r.clone(), vec![bad]),
            Err(Error::PointNotOnVariety(_))
        ));
    }

    #[test]
    fn toric_ideals() {
        let f = GF::prime_field(Prime::new(5).unwrap());
        // N^2 standard: zero ideal
        let q = AffineMonoid::standard(2);
        assert!(toric_ideal(&f, &q, &b()).unwrap().is_empty());
        // A1 cone: (y1 y3 - y2^2)
        let q = AffineMonoid::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let ti = toric_ideal(&f, &q, &b()).unwrap();
        assert_eq!(ti.len(), 1);
        let names: Vec<String> = (1..=3).map(|i| format!("y{i}")).collect();
        let shown = ti[0].display(&f, &names);
        // generators are sorted, so y1 <-> (0,2), y2 <-> (1,1), y3 <-> (2,0);
        // the relation is y1*y3 = y2^2 up to sign/order
        assert!(shown.contains("y2^2"), "{shown}");
        // numerical semigroup <2,3>: (y1^3 - y2^2) with gens sorted as 2, 3
        let q = AffineMonoid::new(1, vec![vec![2], vec![3]]).unwrap();
        let ti = toric_ideal(&f, &q, &b()).unwrap();
        assert_eq!(ti.len(), 1);
        let deg = ti[0].degree();
        assert_eq!(deg, 3);
    }

    #[test]
    fn toric_ideal_dimension_matches_monoid_rank() {
        let f = GF::prime_field(Prime::new(5).unwrap());
        for (ambient, gens) in [
            (2usize, vec![vec![2i64, 0], vec![1, 1], vec![0, 2]]),
            (1, vec![vec![2], vec![3]]),
            (3, vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]),
        ] {
            let q = AffineMonoid::new(ambient, gens).unwrap();
            let ti = toric_ideal(&f, &q, &b()).unwrap();
            let ring = PolyRing::new(
                f.clone(),
                (1..=q.num_gens()).map(|i| format!("y{i}")).collect(),
            )
            .unwrap();
            let r = PresentedRing::new(ring, ti).unwrap();
            assert_eq!(r.dimension(&b()).unwrap(), q.dim_rank());
        }
    }
}
