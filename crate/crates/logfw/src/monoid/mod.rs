//! Finitely generated submonoids of an integer lattice: group completion,
//! units, sharpening and its section, membership search, Spec as the face
//! lattice of the recession cone, and the two dimension computations.
//!
//! Monoids here are automatically integral (they live in Z^d) and fine.
//! Torsion can only appear in the sharpened group Q^gp / Q^x; instances
//! where it does are rejected, matching the supported setting where the
//! sharpening is fine and saturated.

mod hilbert;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::intlin::{
    dot, hnf_rows, primitive, right_kernel, row_vec_mul, solve_left, Lattice, Mat,
};
use crate::Budgets;

pub use hilbert::hilbert_basis_pointed;

/// A finitely generated (hence fine) submonoid of Z^d, given by its
/// generators. Generators are deduplicated, nonzero, and sorted.
#[derive(Debug)]
pub struct AffineMonoid {
    ambient: usize,
    gens: Vec<Vec<i64>>,
    gp: OnceLock<Lattice>,
    cone: OnceLock<Cone>,
}

impl Clone for AffineMonoid {
    fn clone(&self) -> Self {
        AffineMonoid {
            ambient: self.ambient,
            gens: self.gens.clone(),
            gp: OnceLock::new(),
            cone: OnceLock::new(),
        }
    }
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.gens == other.gens
    }
}

/// Combinatorics of the recession cone, in Q^gp coordinates.
#[derive(Clone, Debug)]
pub struct Cone {
    /// rank of Q^gp
    pub rho: usize,
    /// generators expressed in the canonical basis of Q^gp
    pub gens_gp: Vec<Vec<i64>>,
    /// primitive facet normals, oriented nonnegative on the cone
    pub facets: Vec<Vec<i64>>,
    /// indices of generators on every facet (the minimal face); these are
    /// exactly the invertible generators
    pub unit_idx: Vec<usize>,
    pub pointed_idx: Vec<usize>,
}

/// A prime ideal of the monoid: the complement of a face. Stored by the
/// generator indices spanning the face and the supporting functionals (in
/// Q^gp coordinates) that cut it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPrime {
    pub face_gens: Vec<usize>,
    pub supporting: Vec<Vec<i64>>,
}

/// A homomorphism between affine monoids, realized by a linear map on the
/// ambient lattices together with the images of the domain generators.
#[derive(Clone, Debug)]
pub struct MonoidHom {
    pub matrix: Mat, // domain-ambient x codomain-ambient, applied as v * matrix
    pub gen_images: Vec<Vec<i64>>,
}

impl MonoidHom {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        row_vec_mul(v, &self.matrix)
    }
}

/// A section s of the sharpening map, with, for every generator of the
/// sharp quotient, an exponent-vector witness over the original generators.
#[derive(Clone, Debug)]
pub struct Section {
    pub lifts: Vec<Vec<i64>>,
    pub witnesses: Vec<Vec<u64>>,
}

impl AffineMonoid {
    pub fn new(ambient: usize, gens: Vec<Vec<i64>>) -> Result<AffineMonoid> {
        for g in &gens {
            if g.len() != ambient {
                return Err(Error::Instance(format!(
                    "generator {g:?} does not match ambient rank {ambient}"
                )));
            }
        }
        let mut gens: Vec<Vec<i64>> = gens
            .into_iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        gens.sort();
        gens.dedup();
        Ok(AffineMonoid {
            ambient,
            gens,
            gp: OnceLock::new(),
            cone: OnceLock::new(),
        })
    }

    /// The free monoid N^n with its standard generators.
    pub fn standard(n: usize) -> AffineMonoid {
        let gens = (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v
            })
            .collect();
        AffineMonoid::new(n, gens).unwrap()
    }

    pub fn trivial() -> AffineMonoid {
        AffineMonoid::new(0, Vec::new()).unwrap()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn gens(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// The group completion Q^gp as a sublattice of Z^d.
    pub fn gp_lattice(&self) -> &Lattice {
        self.gp
            .get_or_init(|| Lattice::from_rows(&self.gens, self.ambient))
    }

    pub fn gp_rank(&self) -> usize {
        self.gp_lattice().rank()
    }

    /// HNF basis of Q^gp.
    pub fn gp_basis(&self) -> Mat {
        self.gp_lattice().basis()
    }

    pub fn cone(&self) -> &Cone {
        self.cone.get_or_init(|| self.compute_cone())
    }

    fn compute_cone(&self) -> Cone {
        let gp = self.gp_lattice();
        let rho = gp.rank();
        let gens_gp: Vec<Vec<i64>> = self
            .gens
            .iter()
            .map(|g| gp.coords(g).expect("generator lies in its own span"))
            .collect();
        let facets = facet_normals(&gens_gp, rho);
        let mut unit_idx = Vec::new();
        let mut pointed_idx = Vec::new();
        for (i, g) in gens_gp.iter().enumerate() {
            if facets.iter().all(|f| dot(f, g) == 0) {
                unit_idx.push(i);
            } else {
                pointed_idx.push(i);
            }
        }
        Cone {
            rho,
            gens_gp,
            facets,
            unit_idx,
            pointed_idx,
        }
    }

    /// The unit group Q^x as a sublattice of Z^d (HNF basis rows). A
    /// generator is invertible exactly when it lies on every facet of the
    /// recession cone.
    pub fn units_basis(&self) -> Mat {
        let cone = self.cone();
        let rows: Mat = cone.unit_idx.iter().map(|&i| self.gens[i].clone()).collect();
        hnf_rows(&rows)
    }

    pub fn units_rank(&self) -> usize {
        self.units_basis().len()
    }

    pub fn is_sharp(&self) -> bool {
        self.cone().unit_idx.is_empty()
    }

    /// dim(Q) as rank(Q^gp) - rank(Q^x); equals the chain dimension for
    /// fine monoids.
    pub fn dim_rank(&self) -> usize {
        self.gp_rank() - self.units_rank()
    }

    /// All prime ideals, i.e. complements of faces of the cone. Contains the
    /// empty ideal (face = everything) and Q^+ (face = units only). Faces are
    /// generated by closing the facet-faces under intersection.
    pub fn spec(&self) -> Vec<MonoidPrime> {
        let cone = self.cone();
        let all: Vec<usize> = (0..self.gens.len()).collect();
        let facet_faces: Vec<Vec<usize>> = cone
            .facets
            .iter()
            .map(|f| {
                (0..self.gens.len())
                    .filter(|&i| dot(f, &cone.gens_gp[i]) == 0)
                    .collect()
            })
            .collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(all);
        let mut queue: Vec<Vec<usize>> = seen.iter().cloned().collect();
        while let Some(face) = queue.pop() {
            for ff in &facet_faces {
                let meet: Vec<usize> =
                    face.iter().copied().filter(|i| ff.contains(i)).collect();
                if seen.insert(meet.clone()) {
                    queue.push(meet);
                }
            }
        }
        let mut out: Vec<MonoidPrime> = seen
            .into_iter()
            .map(|face| {
                let supporting: Vec<Vec<i64>> = cone
                    .facets
                    .iter()
                    .filter(|f| face.iter().all(|&i| dot(f, &cone.gens_gp[i]) == 0))
                    .cloned()
                    .collect();
                MonoidPrime {
                    face_gens: face,
                    supporting,
                }
            })
            .collect();
        out.sort_by(|a, b| {
            a.face_gens
                .len()
                .cmp(&b.face_gens.len())
                .then_with(|| a.face_gens.cmp(&b.face_gens))
        });
        out
    }

    /// dim(Q) as the longest chain of prime ideals, brute-forced over the
    /// face poset.
    pub fn dim_chain(&self) -> usize {
        let spec = self.spec();
        // chains of primes correspond to chains of faces under reverse
        // inclusion of generator index sets
        let n = spec.len();
        let contained = |a: &MonoidPrime, b: &MonoidPrime| {
            a.face_gens.len() < b.face_gens.len()
                && a.face_gens.iter().all(|i| b.face_gens.contains(i))
        };
        let mut memo = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| spec[i].face_gens.len());
        for &i in &order {
            let mut best = 0;
            for &j in &order {
                if contained(&spec[j], &spec[i]) {
                    best = best.max(memo[j] + 1);
                }
            }
            memo[i] = best;
        }
        memo.into_iter().max().unwrap_or(0)
    }

    /// Does v lie in the monoid? Bounded branch-and-bound.
    pub fn membership(&self, v: &[i64], budgets: &Budgets) -> Result<bool> {
        Ok(self.member_witness(v, budgets)?.is_some())
    }

    /// Membership with an exponent-vector witness over the generators.
    pub fn member_witness(&self, v: &[i64], budgets: &Budgets) -> Result<Option<Vec<u64>>> {
        if v.len() != self.ambient {
            return Err(Error::Instance("vector/ambient rank mismatch".into()));
        }
        if v.iter().all(|&x| x == 0) {
            return Ok(Some(vec![0; self.gens.len()]));
        }
        let gp = self.gp_lattice();
        let Some(vg) = gp.coords(v) else {
            return Ok(None);
        };
        let cone = self.cone();
        if cone.facets.iter().any(|f| dot(f, &vg) < 0) {
            return Ok(None);
        }
        let mut nodes = 0usize;
        let mut witness = vec![0u64; self.gens.len()];
        if self.search(&vg, 0, &mut witness, &mut nodes, budgets)? {
            Ok(Some(witness))
        } else {
            Ok(None)
        }
    }

    fn search(
        &self,
        remaining: &[i64],
        k: usize,
        witness: &mut Vec<u64>,
        nodes: &mut usize,
        budgets: &Budgets,
    ) -> Result<bool> {
        let cone = self.cone();
        *nodes += 1;
        if *nodes > budgets.membership_nodes {
            return Err(Error::SearchBudgetExceeded {
                nodes: budgets.membership_nodes,
            });
        }
        if k == cone.pointed_idx.len() {
            // remainder must be a unit; units form a group, so lattice
            // membership suffices
            return match self.unit_part_witness(remaining, budgets)? {
                Some(unit_wit) => {
                    for (i, n) in unit_wit {
                        witness[i] += n;
                    }
                    Ok(true)
                }
                None => Ok(false),
            };
        }
        let gi = cone.pointed_idx[k];
        let g = &cone.gens_gp[gi];
        // multiplicity bound from any facet positive on g
        let mut bound = u64::MAX;
        for f in &cone.facets {
            let fg = dot(f, g);
            if fg > 0 {
                bound = bound.min((dot(f, remaining) / fg) as u64);
            }
        }
        debug_assert!(bound < u64::MAX, "pointed generator with no positive facet");
        let mut rem = remaining.to_vec();
        for n in 0..=bound {
            if n > 0 {
                for (r, gv) in rem.iter_mut().zip(g) {
                    *r -= gv;
                }
            }
            if cone.facets.iter().all(|f| dot(f, &rem) >= 0) {
                witness[gi] = n;
                if self.search(&rem, k + 1, witness, nodes, budgets)? {
                    return Ok(true);
                }
            }
        }
        witness[gi] = 0;
        Ok(false)
    }

    /// Writes a lattice element of the unit group as an N-combination of
    /// unit generators, if it is one.
    fn unit_part_witness(
        &self,
        target_gp: &[i64],
        budgets: &Budgets,
    ) -> Result<Option<Vec<(usize, u64)>>> {
        let cone = self.cone();
        if target_gp.iter().all(|&x| x == 0) {
            return Ok(Some(Vec::new()));
        }
        if cone.unit_idx.is_empty() {
            return Ok(None);
        }
        let unit_rows: Mat = cone
            .unit_idx
            .iter()
            .map(|&i| cone.gens_gp[i].clone())
            .collect();
        let Some(z) = solve_left(&unit_rows, target_gp) else {
            return Ok(None);
        };
        // fix negative coefficients using a witness for -u_i
        let mut acc: Vec<(usize, u64)> = Vec::new();
        for (j, &zj) in z.iter().enumerate() {
            let gi = cone.unit_idx[j];
            if zj >= 0 {
                if zj > 0 {
                    acc.push((gi, zj as u64));
                }
            } else {
                let neg = self.neg_unit_witness(j, budgets)?;
                for (jj, n) in neg {
                    acc.push((cone.unit_idx[jj], n * (-zj) as u64));
                }
            }
        }
        Ok(Some(acc))
    }

    /// An N-combination of unit generators equal to -u_j. Exists because the
    /// units form a group; found by iterative-deepening search.
    fn neg_unit_witness(&self, j: usize, budgets: &Budgets) -> Result<Vec<(usize, u64)>> {
        let cone = self.cone();
        let units: Vec<&Vec<i64>> = cone.unit_idx.iter().map(|&i| &cone.gens_gp[i]).collect();
        let target: Vec<i64> = units[j].iter().map(|&x| -x).collect();
        let mut nodes = 0usize;
        for depth in 1..=24u64 {
            let mut combo = vec![0u64; units.len()];
            if dfs_sum(&units, &target, depth, 0, &mut combo, &mut nodes, budgets)? {
                return Ok(combo
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(i, &n)| (i, n))
                    .collect());
            }
        }
        Err(Error::SearchBudgetExceeded {
            nodes: budgets.membership_nodes,
        })
    }

    /// The sharpening Q -> Q/Q^x realized inside Z^(d - rank units), with
    /// the projection map. Errors if Q^gp / Q^x has torsion (then the
    /// sharpening cannot be fine and saturated, which is outside the
    /// supported setting).
    pub fn sharpen(&self) -> Result<(AffineMonoid, MonoidHom)> {
        let d = self.ambient;
        if self.is_sharp() {
            let matrix = crate::intlin::identity(d);
            return Ok((
                self.clone(),
                MonoidHom {
                    matrix,
                    gen_images: self.gens.clone(),
                },
            ));
        }
        let units = Lattice::from_rows(&self.units_basis(), d);
        // torsion check: Q^x must be saturated inside Q^gp
        let gp = self.gp_lattice();
        let units_in_gp: Mat = self
            .units_basis()
            .iter()
            .map(|u| gp.coords(u).expect("units lie in Q^gp"))
            .collect();
        let units_gp_lat = Lattice::from_rows(&units_in_gp, gp.rank());
        if !units_gp_lat.is_saturated_in_ambient() {
            return Err(Error::UnsupportedMonoid(
                "the sharpened group Q^gp/Q^x has torsion; such monoids do not embed in a lattice"
                    .into(),
            ));
        }
        // projection = trailing coordinates of x * V for the SNF of the
        // (saturated) unit lattice in Z^d
        let proj_cols = units.quotient_dim();
        let mut matrix = vec![vec![0i64; proj_cols]; d];
        for i in 0..d {
            let mut e = vec![0i64; d];
            e[i] = 1;
            let img = units.quotient_projection(&e);
            matrix[i].clone_from_slice(&img);
        }
        let gen_images: Vec<Vec<i64>> = self
            .gens
            .iter()
            .map(|g| units.quotient_projection(g))
            .collect();
        let sharp = AffineMonoid::new(proj_cols, gen_images.clone())?;
        debug_assert!(sharp.is_sharp());
        Ok((sharp, MonoidHom { matrix, gen_images }))
    }

    /// A section of the sharpening map pi, verified generator by generator
    /// by membership search (guaranteed by the theory; asserted anyway).
    /// Requires the sharpening to be saturated.
    pub fn section(&self, sharp: &AffineMonoid, pi: &MonoidHom, budgets: &Budgets) -> Result<Section> {
        if self.is_sharp() {
            // identity section
            let mut lifts = Vec::new();
            let mut witnesses = Vec::new();
            for sg in sharp.gens() {
                let i = self
                    .gens
                    .iter()
                    .position(|g| g == sg)
                    .expect("identity sharpening");
                lifts.push(self.gens[i].clone());
                let mut wit = vec![0u64; self.gens.len()];
                wit[i] = 1;
                witnesses.push(wit);
            }
            return Ok(Section { lifts, witnesses });
        }
        if !sharp.is_saturated(budgets)? {
            return Err(Error::UnsupportedMonoid(
                "sharpening is not saturated; no section is guaranteed".into(),
            ));
        }
        // group-level section on a basis of Qbar^gp, then transport
        let sharp_gp = sharp.gp_lattice();
        let basis = sharp_gp.basis();
        // pi restricted to Q^gp: rows = pi(gp basis of Q)
        let gp = self.gp_lattice();
        let gp_basis = gp.basis();
        let pi_rows: Mat = gp_basis.iter().map(|b| pi.apply(b)).collect();
        let mut basis_lifts: Mat = Vec::new();
        for b in &basis {
            let x = solve_left(&pi_rows, b).ok_or_else(|| {
                Error::SectionVerificationFailed("basis vector has no lift in Q^gp".into())
            })?;
            basis_lifts.push(row_vec_mul(&x, &gp_basis));
        }
        let mut lifts = Vec::new();
        let mut witnesses = Vec::new();
        for sg in sharp.gens() {
            let c = sharp_gp
                .coords(sg)
                .expect("generator lies in its own group");
            let mut lift = vec![0i64; self.ambient];
            for (ci, bl) in c.iter().zip(&basis_lifts) {
                for (l, b) in lift.iter_mut().zip(bl) {
                    *l += ci * b;
                }
            }
            let wit = self.member_witness(&lift, budgets)?.ok_or_else(|| {
                Error::SectionVerificationFailed(format!(
                    "section image {lift:?} of {sg:?} is not in the monoid"
                ))
            })?;
            lifts.push(lift);
            witnesses.push(wit);
        }
        Ok(Section { lifts, witnesses })
    }

    /// The saturation cone(Q) cap Q^gp, as a new affine monoid in the same
    /// ambient lattice.
    pub fn saturate(&self, budgets: &Budgets) -> Result<AffineMonoid> {
        let gp = self.gp_lattice();
        let cone = self.cone();
        let rho = cone.rho;
        if rho == 0 {
            return Ok(AffineMonoid::new(self.ambient, Vec::new())?);
        }
        // lineality sublattice of Z^rho
        let lin_basis = if cone.facets.is_empty() {
            crate::intlin::identity(rho)
        } else {
            right_kernel(&cone.facets, rho)
        };
        let lin = Lattice::from_rows(&lin_basis, rho);
        let mut sat_gens_gp: Vec<Vec<i64>> = Vec::new();
        for b in lin.saturation_basis() {
            sat_gens_gp.push(b.clone());
            sat_gens_gp.push(b.iter().map(|&x| -x).collect());
        }
        if lin.rank() < rho {
            // pointed quotient: project, take the Hilbert basis, lift back
            let proj: Vec<Vec<i64>> = cone
                .pointed_idx
                .iter()
                .map(|&i| lin.quotient_projection(&cone.gens_gp[i]))
                .collect();
            let hb = hilbert_basis_pointed(&proj, budgets)?;
            for h in hb {
                sat_gens_gp.push(lin.quotient_lift(&h));
            }
        }
        // back to ambient coordinates
        let gp_basis = gp.basis();
        let gens: Vec<Vec<i64>> = sat_gens_gp
            .iter()
            .map(|c| row_vec_mul(c, &gp_basis))
            .collect();
        AffineMonoid::new(self.ambient, gens)
    }

    /// Saturated iff every generator of the saturation already belongs to Q.
    pub fn is_saturated(&self, budgets: &Budgets) -> Result<bool> {
        let sat = self.saturate(budgets)?;
        for g in sat.gens() {
            if !self.membership(g, budgets)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn dfs_sum(
    units: &[&Vec<i64>],
    target: &[i64],
    depth: u64,
    from: usize,
    combo: &mut Vec<u64>,
    nodes: &mut usize,
    budgets: &Budgets,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budgets.membership_nodes {
        return Err(Error::SearchBudgetExceeded {
            nodes: budgets.membership_nodes,
        });
    }
    if target.iter().all(|&x| x == 0) {
        return Ok(true);
    }
    if depth == 0 || from == units.len() {
        return Ok(false);
    }
    for i in from..units.len() {
        let rem: Vec<i64> = target.iter().zip(units[i]).map(|(t, u)| t - u).collect();
        combo[i] += 1;
        if dfs_sum(units, &rem, depth - 1, i, combo, nodes, budgets)? {
            return Ok(true);
        }
        combo[i] -= 1;
    }
    Ok(false)
}

/// Primitive facet normals of cone(gens) in Z^rho (full-dimensional there),
/// oriented to be nonnegative on all generators. Every facet is spanned by
/// the generators lying on it, so candidate hyperplanes come from
/// (rho-1)-subsets of generators.
pub(crate) fn facet_normals(gens_gp: &[Vec<i64>], rho: usize) -> Vec<Vec<i64>> {
    if rho == 0 {
        return Vec::new();
    }
    let m = gens_gp.len();
    let k = rho - 1;
    assert!(m < 30, "too many generators for facet enumeration");
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    for mask in 0u64..(1u64 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let rows: Mat = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| gens_gp[i].clone())
            .collect();
        let ker = right_kernel(&rows, rho);
        if ker.len() != 1 {
            continue;
        }
        let lam = primitive(&ker[0]);
        let signs: Vec<i64> = gens_gp.iter().map(|g| dot(&lam, g)).collect();
        if signs.iter().all(|&s| s >= 0) {
            seen.insert(lam);
        } else if signs.iter().all(|&s| s <= 0) {
            seen.insert(lam.iter().map(|&x| -x).collect());
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budgets {
        Budgets::default()
    }

    fn m(ambient: usize, gens: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::new(ambient, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn gp_lattice_examples() {
        // <(1,0),(0,1)>: rank 2 standard
        let q = AffineMonoid::standard(2);
        assert_eq!(q.gp_rank(), 2);
        // <(2,0),(1,1),(0,2)>: rank 2, even-coordinate-sum lattice
        let q = m(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(q.gp_rank(), 2);
        assert!(q.gp_lattice().contains(&[1, 1]));
        assert!(!q.gp_lattice().contains(&[1, 0]));
        // <2,3>: rank 1, gp = Z
        let q = m(1, &[&[2], &[3]]);
        assert_eq!(q.gp_rank(), 1);
        assert!(q.gp_lattice().contains(&[1]));
    }

    #[test]
    fn membership_numerical_semigroup() {
        let q = m(1, &[&[2], &[3]]);
        assert!(!q.membership(&[1], &b()).unwrap());
        assert!(q.membership(&[7], &b()).unwrap());
        // witness: 7 = 2*2 + 3
        let w = q.member_witness(&[7], &b()).unwrap().unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(2 * w[0] as i64 + 3 * w[1] as i64, 7);
    }

    #[test]
    fn membership_a1_cone() {
        let q = m(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(q.membership(&[1, 1], &b()).unwrap());
        assert!(q.membership(&[3, 1], &b()).unwrap());
        assert!(!q.membership(&[1, 0], &b()).unwrap()); // not in gp lattice
        assert!(!q.membership(&[-1, 1], &b()).unwrap()); // outside cone
    }

    #[test]
    fn units_and_sharpening() {
        // N^2 is sharp
        assert!(AffineMonoid::standard(2).is_sharp());
        // N + Z: units = 0 + Z, sharpening is N
        let q = m(2, &[&[1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(q.units_rank(), 1);
        assert_eq!(q.units_basis(), vec![vec![0, 1]]);
        let (sharp, pi) = q.sharpen().unwrap();
        assert!(sharp.is_sharp());
        assert_eq!(sharp.gp_rank(), 1);
        assert_eq!(sharp.dim_rank(), 1);
        // pi kills the units
        assert_eq!(pi.apply(&[0, 5]), vec![0]);
        assert_ne!(pi.apply(&[1, 0]), vec![0]);
        // Z^d: sharpening is trivial
        let q = m(1, &[&[1], &[-1]]);
        assert_eq!(q.dim_rank(), 0);
        let (sharp, _) = q.sharpen().unwrap();
        assert_eq!(sharp.num_gens(), 0);
    }

    #[test]
    fn spec_and_dims() {
        // N: Spec = {empty, Q+}, dim 1
        let q = m(1, &[&[1]]);
        assert_eq!(q.spec().len(), 2);
        assert_eq!(q.dim_chain(), 1);
        assert_eq!(q.dim_rank(), 1);
        // N^2: |Spec| = 4, dim 2
        let q = AffineMonoid::standard(2);
        assert_eq!(q.spec().len(), 4);
        assert_eq!(q.dim_chain(), 2);
        // A1 cone: dim_chain = dim_rank = 2
        let q = m(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(q.dim_chain(), 2);
        assert_eq!(q.dim_rank(), 2);
        // spec always contains the empty prime and Q^+
        let spec = q.spec();
        assert!(spec.iter().any(|p| p.face_gens.len() == q.num_gens()));
        assert!(spec.iter().any(|p| p.face_gens.is_empty()));
    }

    #[test]
    fn saturation_examples() {
        // <2,3> saturates to N
        let q = m(1, &[&[2], &[3]]);
        assert!(!q.is_saturated(&b()).unwrap());
        let sat = q.saturate(&b()).unwrap();
        assert_eq!(sat.gens(), &[vec![1]]);
        // A1 cone is saturated
        let q = m(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(q.is_saturated(&b()).unwrap());
        // N^d is saturated
        assert!(AffineMonoid::standard(3).is_saturated(&b()).unwrap());
        // saturate is idempotent
        let q = m(1, &[&[2], &[3]]);
        let s1 = q.saturate(&b()).unwrap();
        let s2 = s1.saturate(&b()).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn section_examples() {
        // sharp: identity section
        let q = AffineMonoid::standard(2);
        let (sharp, pi) = q.sharpen().unwrap();
        let s = q.section(&sharp, &pi, &b()).unwrap();
        assert_eq!(s.lifts, q.gens().to_vec());
        // N + Z: section of the generator of N lifts to (1, a)
        let q = m(2, &[&[1, 0], &[0, 1], &[0, -1]]);
        let (sharp, pi) = q.sharpen().unwrap();
        let s = q.section(&sharp, &pi, &b()).unwrap();
        assert_eq!(s.lifts.len(), 1);
        assert_eq!(pi.apply(&s.lifts[0]), sharp.gens()[0]);
        // witness actually reconstructs the lift
        let wit = &s.witnesses[0];
        let mut acc = vec![0i64; 2];
        for (i, &n) in wit.iter().enumerate() {
            for (a, g) in acc.iter_mut().zip(&q.gens()[i]) {
                *a += n as i64 * g;
            }
        }
        assert_eq!(acc, s.lifts[0]);
    }

    #[test]
    fn torsion_rejected() {
        // units lattice 2Z x 0 not saturated in Q^gp = Z^2:
        // gens (2,0),(-2,0),(0,1),(1,1)
        let q = m(2, &[&[2, 0], &[-2, 0], &[0, 1], &[1, 1]]);
        assert!(matches!(q.sharpen(), Err(Error::UnsupportedMonoid(_))));
    }
}
