//! Hilbert bases of pointed rational cones at desk scale.
//!
//! Candidates are collected from the half-open parallelepipeds of all
//! linearly independent full-rank subsets of extreme rays (their simplicial
//! cones cover the whole cone by Caratheodory), then minimized by the
//! grading given by the sum of the facet normals.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::intlin::{dot, primitive, right_kernel, Mat};
use crate::monoid::facet_normals;
use crate::Budgets;

/// Hilbert basis of cone(gens) cap Z^rho for a pointed cone given by
/// generators spanning Z^rho rationally. The result is the unique minimal
/// generating set, sorted.
pub fn hilbert_basis_pointed(gens: &[Vec<i64>], budgets: &Budgets) -> Result<Vec<Vec<i64>>> {
    let gens: Vec<Vec<i64>> = {
        let mut gs: Vec<Vec<i64>> = gens
            .iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .map(|g| primitive(g))
            .collect();
        gs.sort();
        gs.dedup();
        gs
    };
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let rho = gens[0].len();
    if gens.len() > 12 || rho > 4 {
        return Err(Error::BudgetExceeded {
            what: format!(
                "hilbert basis limited to rank <= 4 and <= 12 generators (got rank {rho}, {} gens)",
                gens.len()
            ),
        });
    }
    let facets = facet_normals(&gens, rho);
    // pointedness: the facets must cut out {0}
    let lin = if facets.is_empty() {
        rho
    } else {
        right_kernel(&facets, rho).len()
    };
    if lin != 0 {
        return Err(Error::UnsupportedMonoid(
            "hilbert basis requested for a non-pointed cone".into(),
        ));
    }
    let grading: Vec<i64> = {
        let mut g = vec![0i64; rho];
        for f in &facets {
            for (gi, fi) in g.iter_mut().zip(f) {
                *gi += fi;
            }
        }
        g
    };
    debug_assert!(gens.iter().all(|v| dot(&grading, v) > 0));

    // extreme rays: generators lying on a rank rho-1 set of facets
    let rays: Vec<Vec<i64>> = gens
        .iter()
        .filter(|g| {
            let on: Mat = facets
                .iter()
                .filter(|f| dot(f, g) == 0)
                .cloned()
                .collect();
            rank_of(&on, rho) == rho - 1
        })
        .cloned()
        .collect();

    let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
    for g in &gens {
        candidates.insert(g.clone());
    }
    let m = rays.len();
    let mut points_budget = budgets.hilbert_points;
    for mask in 0u64..(1u64 << m) {
        if mask.count_ones() as usize != rho {
            continue;
        }
        let sub: Vec<&Vec<i64>> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &rays[i])
            .collect();
        let rows: Mat = sub.iter().map(|r| (*r).clone()).collect();
        if rank_of(&rows, rho) != rho {
            continue;
        }
        parallelepiped_points(&rows, &mut candidates, &mut points_budget)?;
    }

    // minimize by increasing grading
    let mut ordered: Vec<Vec<i64>> = candidates
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .collect();
    ordered.sort_by_key(|c| (dot(&grading, c), c.clone()));
    let in_cone = |v: &[i64]| facets.iter().all(|f| dot(f, v) >= 0);
    let mut basis: Vec<Vec<i64>> = Vec::new();
    'next: for c in ordered {
        for h in &basis {
            let diff: Vec<i64> = c.iter().zip(h).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x != 0) && in_cone(&diff) {
                continue 'next;
            }
        }
        basis.push(c);
    }
    basis.sort();
    Ok(basis)
}

fn rank_of(rows: &Mat, cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    cols - right_kernel(rows, cols).len()
}

/// Insert all lattice points of { sum t_i r_i : 0 <= t_i < 1 } into `out`.
fn parallelepiped_points(
    rays: &Mat,
    out: &mut BTreeSet<Vec<i64>>,
    budget: &mut usize,
) -> Result<()> {
    let rho = rays.len();
    let det = det_i(rays);
    debug_assert!(det != 0);
    let adj = adjugate(rays); // rays * adj = det * I
    // bounding box of the closed parallelepiped
    let mut lo = vec![0i64; rho];
    let mut hi = vec![0i64; rho];
    for j in 0..rho {
        for ray in rays.iter() {
            if ray[j] < 0 {
                lo[j] += ray[j];
            } else {
                hi[j] += ray[j];
            }
        }
    }
    let mut x = lo.clone();
    loop {
        if *budget == 0 {
            return Err(Error::BudgetExceeded {
                what: "hilbert basis point enumeration".into(),
            });
        }
        *budget -= 1;
        // x = sum t_i r_i with t = x * adj / det; need 0 <= t_i < 1
        let t = crate::intlin::row_vec_mul(&x, &adj);
        let ok = t.iter().all(|&ti| {
            if det > 0 {
                ti >= 0 && ti < det
            } else {
                ti <= 0 && ti > det
            }
        });
        if ok {
            out.insert(x.clone());
        }
        // advance
        let mut j = 0;
        loop {
            if j == rho {
                return Ok(());
            }
            x[j] += 1;
            if x[j] <= hi[j] {
                break;
            }
            x[j] = lo[j];
            j += 1;
        }
    }
}

fn det_i(m: &Mat) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => {
            let mut acc = 0i64;
            for j in 0..n {
                let minor: Mat = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                acc += s * m[0][j] * det_i(&minor);
            }
            acc
        }
    }
}

/// adj with rays * adj = det * I, i.e. the classical adjugate of the matrix
/// whose ROWS are the rays, transposed appropriately for row-vector action.
fn adjugate(m: &Mat) -> Mat {
    let n = m.len();
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Mat = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[r][c])
                        .collect()
                })
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            // row-vector convention: x * adj where adj[j][i] = cofactor(i, j)
            adj[j][i] = s * det_i(&minor);
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn hb_standard_quadrant() {
        let hb = hilbert_basis_pointed(&vec![vec![1, 0], vec![0, 1]], &b()).unwrap();
        assert_eq!(hb, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn hb_a1_cone_in_sublattice_coords() {
        // A1 cone in gp coordinates: gens (2,-1),(1,0),(0,1); hilbert basis
        // is the three of them (the middle ray is needed: (2,-1)+(0,1) = 2*(1,0))
        let hb = hilbert_basis_pointed(
            &vec![vec![2, -1], vec![1, 0], vec![0, 1]],
            &b(),
        )
        .unwrap();
        assert_eq!(hb.len(), 3);
        assert!(hb.contains(&vec![1, 0]));
    }

    #[test]
    fn hb_numerical_semigroup_saturation() {
        // cone(2, 3) in Z^1 = cone(1): hilbert basis {1}
        let hb = hilbert_basis_pointed(&vec![vec![2], vec![3]], &b()).unwrap();
        assert_eq!(hb, vec![vec![1]]);
    }

    #[test]
    fn hb_square_cone() {
        // cone over the unit square: rays (0,0,1),(1,0,1),(0,1,1),(1,1,1);
        // hilbert basis is exactly the four rays (normal cone, smooth except
        // at the apex; classic non-simplicial example)
        let hb = hilbert_basis_pointed(
            &vec![
                vec![0, 0, 1],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![1, 1, 1],
            ],
            &b(),
        )
        .unwrap();
        assert_eq!(hb.len(), 4);
    }

    #[test]
    fn hb_deep_interior_point_needed() {
        // cone((1,0),(1,5)): hilbert basis needs the interior rays
        // (1,1),(1,2),(1,3),(1,4) as well
        let hb = hilbert_basis_pointed(&vec![vec![1, 0], vec![1, 5]], &b()).unwrap();
        assert_eq!(
            hb,
            vec![
                vec![1, 0],
                vec![1, 1],
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![1, 5]
            ]
        );
    }
}
