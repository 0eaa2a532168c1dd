//! Dense exact linear algebra over a coefficient field, with the fixed
//! first-nonzero pivot rule that keeps reports deterministic.

use crate::arith::FieldOps;

/// Reduce to row echelon form in place; returns the rank. Pivots are chosen
/// as the first column with a nonzero entry, scanning rows in order.
pub fn row_echelon<F: FieldOps>(ctx: &F, rows: &mut Vec<Vec<F::El>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0usize;
    for col in 0..ncols {
        let mut pivot = None;
        for r in rank..rows.len() {
            if !ctx.is_zero(&rows[r][col]) {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = ctx.inv(&rows[rank][col]);
        for c in col..ncols {
            rows[rank][c] = ctx.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r == rank || ctx.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let sub = ctx.mul(&factor, &rows[rank][c]);
                rows[r][c] = ctx.sub(&rows[r][c], &sub);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank<F: FieldOps>(ctx: &F, rows: &[Vec<F::El>]) -> usize {
    let mut m: Vec<Vec<F::El>> = rows.to_vec();
    row_echelon(ctx, &mut m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::GF;
    use crate::arith::Prime;

    #[test]
    fn rank_over_f3() {
        let f = GF::prime_field(Prime::new(3).unwrap());
        let e = |v: i64| f.from_int(v);
        let rows = vec![
            vec![e(1), e(2), e(0)],
            vec![e(2), e(4), e(0)], // = 2 * row0 mod 3
            vec![e(0), e(0), e(1)],
        ];
        assert_eq!(rank(&f, &rows), 2);
    }
}
