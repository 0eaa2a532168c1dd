//! Independent Kähler-differential computation used to cross-check the
//! Frobenius-twist identity: over F_q with trivial log structure, the rank
//! of the FW-module at the closed point must equal dim_k(Omega_R (x) k).
//!
//! Deliberately separate from the FW expansion: plain partial derivatives,
//! no Frobenius twist anywhere.

use crate::arith::FieldOps;
use crate::linalg;
use crate::ring::PresentedRing;

/// dim_k(Omega_{R/k} (x)_R k) at the origin for R = k[x_1..x_n]/I:
/// the presentation of Omega is generated by dx_1..dx_n with relations
/// df = sum_i (df/dx_i) dx_i for the ideal generators, so the rank at the
/// closed point is n minus the rank of the (untwisted) Jacobian at 0.
pub fn kaehler_rank_at_origin<F: FieldOps>(ring: &PresentedRing<F>) -> usize {
    let ctx = ring.ctx();
    let n = ring.nvars();
    let rows: Vec<Vec<F::El>> = ring
        .ideal
        .gens()
        .iter()
        .map(|g| {
            (0..n)
                .map(|i| g.partial(ctx, i).constant_term(ctx))
                .collect()
        })
        .collect();
    n - linalg::rank(ctx, &rows)
}
