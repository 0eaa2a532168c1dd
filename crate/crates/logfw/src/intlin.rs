//! Exact integer linear algebra: Hermite and Smith normal forms, kernels,
//! lattice membership, saturation and quotient projections.
//!
//! Matrices are row-major `Vec<Vec<i64>>`; all products go through i128 and
//! panic on overflow, which is acceptable at the scale this crate targets
//! (ambient rank <= 4, entries far below 2^32).

pub type Mat = Vec<Vec<i64>>;

fn checked(v: i128) -> i64 {
    i64::try_from(v).expect("integer overflow in exact lattice arithmetic")
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let inner = if n > 0 { a[0].len() } else { 0 };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(inner, b.len(), "dimension mismatch in mat_mul");
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..m {
                let acc = out[i][j] as i128 + a[i][k] as i128 * b[k][j] as i128;
                out[i][j] = checked(acc);
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Mat {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn row_vec_mul(v: &[i64], m: &Mat) -> Vec<i64> {
    assert_eq!(v.len(), m.len());
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut out = vec![0i64; cols];
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        for j in 0..cols {
            out[j] = checked(out[j] as i128 + vi as i128 * m[i][j] as i128);
        }
    }
    out
}

/// Result of a Smith normal form computation `u * a * v = diag(d)`.
///
/// `u` (rows x rows) and `v` (cols x cols) are unimodular. Only the nonzero
/// diagonal entries are stored in `d`; `rank = d.len()`.
#[derive(Debug)]
pub struct Snf {
    pub d: Vec<i64>,
    pub u: Mat,
    pub v: Mat,
    pub rows: usize,
    pub cols: usize,
}

pub fn smith_normal_form(a: &Mat) -> Snf {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut m = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let mut t = 0usize;
    while t < rows.min(cols) {
        // Find pivot of minimal absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        // Clear row and column t; restart if a remainder pops up elsewhere.
        let mut clean = false;
        while !clean {
            clean = true;
            for i in (t + 1)..rows {
                if m[i][t] != 0 {
                    let q = div_round(m[i][t], m[t][t]);
                    if q != 0 {
                        for j in 0..cols {
                            m[i][j] = checked(m[i][j] as i128 - q as i128 * m[t][j] as i128);
                        }
                        for j in 0..rows {
                            u[i][j] = checked(u[i][j] as i128 - q as i128 * u[t][j] as i128);
                        }
                    }
                    if m[i][t] != 0 {
                        m.swap(t, i);
                        u.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in (t + 1)..cols {
                if m[t][j] != 0 {
                    let q = div_round(m[t][j], m[t][t]);
                    if q != 0 {
                        for i in 0..rows {
                            m[i][j] = checked(m[i][j] as i128 - q as i128 * m[i][t] as i128);
                        }
                        for i in 0..cols {
                            v[i][j] = checked(v[i][j] as i128 - q as i128 * v[i][t] as i128);
                        }
                    }
                    if m[t][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        for row in v.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
        }
        t += 1;
    }

    // Enforce divisibility d1 | d2 | ... and positive signs.
    let mut k = 0usize;
    while k + 1 < t {
        if m[k + 1][k + 1] % m[k][k] != 0 {
            // classic trick: add column k+1 to column k, then redo the block
            for i in 0..rows {
                m[i][k] = checked(m[i][k] as i128 + m[i][k + 1] as i128);
            }
            for i in 0..cols {
                v[i][k] = checked(v[i][k] as i128 + v[i][k + 1] as i128);
            }
            // re-eliminate from position k
            return smith_continue(m, u, v, rows, cols, k);
        }
        k += 1;
    }
    let mut d = Vec::new();
    for i in 0..t {
        let mut di = m[i][i];
        if di < 0 {
            di = -di;
            for j in 0..rows {
                u[i][j] = -u[i][j];
            }
        }
        d.push(di);
    }
    Snf { d, u, v, rows, cols }
}

fn smith_continue(m: Mat, u: Mat, v: Mat, rows: usize, cols: usize, _from: usize) -> Snf {
    // Re-run on u*a*v by treating the partially processed matrix as input and
    // composing the transforms. Simple and safe at this scale.
    let inner = smith_normal_form(&m);
    Snf {
        d: inner.d,
        u: mat_mul(&inner.u, &u),
        v: mat_mul(&v, &inner.v),
        rows,
        cols,
    }
}

fn div_round(a: i64, b: i64) -> i64 {
    // round-to-nearest division keeps entries small during elimination
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + r.signum() * b.signum()
    } else {
        q
    }
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// Basis of the left kernel `{ x : x * a = 0 }`: trailing rows of `u`.
    pub fn left_kernel(&self) -> Mat {
        self.u[self.rank()..self.rows].to_vec()
    }

    /// Coordinates of `x` in the "v-basis": `x * v`. The lattice spanned by
    /// the rows of `a` consists of the x whose i-th coordinate is divisible
    /// by d_i for i < rank and zero beyond.
    pub fn v_coords(&self, x: &[i64]) -> Vec<i64> {
        row_vec_mul(x, &self.v)
    }
}

/// A sublattice of Z^d given by generating rows, with the derived data used
/// throughout the monoid module.
#[derive(Debug)]
pub struct Lattice {
    snf: Snf,
    ambient: usize,
}

impl Lattice {
    pub fn from_rows(rows: &Mat, ambient: usize) -> Lattice {
        let m = if rows.is_empty() {
            vec![vec![0i64; ambient]]
        } else {
            rows.clone()
        };
        Lattice {
            snf: smith_normal_form(&m),
            ambient,
        }
    }

    pub fn rank(&self) -> usize {
        self.snf.rank()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.coords(x).is_some()
    }

    /// Coordinates of `x` with respect to the canonical (SNF-derived) basis,
    /// or None if x is outside the lattice.
    pub fn coords(&self, x: &[i64]) -> Option<Vec<i64>> {
        let w = self.snf.v_coords(x);
        let r = self.rank();
        let mut c = Vec::with_capacity(r);
        for (i, &wi) in w.iter().enumerate() {
            if i < r {
                if wi % self.snf.d[i] != 0 {
                    return None;
                }
                c.push(wi / self.snf.d[i]);
            } else if wi != 0 {
                return None;
            }
        }
        Some(c)
    }

    /// Canonical basis rows (d_i times the i-th row of v^{-1}); reconstructed
    /// from coords of the standard generators is unnecessary -- we recover the
    /// basis by solving from the SNF data instead.
    pub fn basis(&self) -> Mat {
        // u * a * v = diag(d)  =>  rows of diag(d) * v^{-1} form a basis.
        // v^{-1} = adjugate-free: solve v * y = e_i over Z via SNF of v?
        // v is unimodular, so invert by Gauss-Bareiss over rationals scaled
        // to integers; at our sizes a simple exact inverse via adjugate of
        // the SNF of v is overkill -- use unimodular inverse below.
        let vinv = unimodular_inverse(&self.snf.v);
        let mut rows = Vec::new();
        for i in 0..self.rank() {
            let mut row = vinv[i].clone();
            for x in row.iter_mut() {
                *x = checked(*x as i128 * self.snf.d[i] as i128);
            }
            rows.push(row);
        }
        hnf_rows(&rows)
    }

    /// Basis of the saturation `{ x in Z^d : n x in L for some n > 0 }`.
    pub fn saturation_basis(&self) -> Mat {
        let vinv = unimodular_inverse(&self.snf.v);
        hnf_rows(&vinv[0..self.rank()].to_vec())
    }

    /// Is the lattice saturated in Z^d (all SNF invariants equal 1)?
    pub fn is_saturated_in_ambient(&self) -> bool {
        self.snf.d.iter().all(|&x| x == 1)
    }

    /// Integral projection Z^d -> Z^(d-rank(sat)) with kernel exactly the
    /// saturation of this lattice: the trailing coordinates of `x * v`.
    pub fn quotient_projection(&self, x: &[i64]) -> Vec<i64> {
        let w = self.snf.v_coords(x);
        w[self.rank()..].to_vec()
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient - self.rank()
    }

    /// A right inverse of `quotient_projection` restricted to the image:
    /// lifts quotient coordinates back to Z^d.
    pub fn quotient_lift(&self, q: &[i64]) -> Vec<i64> {
        let vinv = unimodular_inverse(&self.snf.v);
        let r = self.rank();
        assert_eq!(q.len(), self.ambient - r);
        let mut out = vec![0i64; self.ambient];
        for (idx, &qi) in q.iter().enumerate() {
            if qi == 0 {
                continue;
            }
            for j in 0..self.ambient {
                out[j] = checked(out[j] as i128 + qi as i128 * vinv[r + idx][j] as i128);
            }
        }
        out
    }
}

/// Transpose.
pub fn transpose(a: &Mat) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    let (r, c) = (a.len(), a[0].len());
    let mut out = vec![vec![0i64; r]; c];
    for i in 0..r {
        for j in 0..c {
            out[j][i] = a[i][j];
        }
    }
    out
}

/// Basis of `{ x in Z^ncols : a * x^T = 0 }` (column kernel), as rows.
pub fn right_kernel(a: &Mat, ncols: usize) -> Mat {
    if a.is_empty() {
        return identity(ncols);
    }
    assert_eq!(a[0].len(), ncols);
    let at = transpose(a);
    smith_normal_form(&at).left_kernel()
}

/// One solution x of `x * a = rhs`, if any.
pub fn solve_left(a: &Mat, rhs: &[i64]) -> Option<Vec<i64>> {
    if a.is_empty() {
        return if rhs.iter().all(|&x| x == 0) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let s = smith_normal_form(a);
    // x a = rhs  <=>  (x u^{-1}) d = rhs v  with  u a v = d
    let w = row_vec_mul(rhs, &s.v);
    let mut y = vec![0i64; s.rows];
    for (i, &wi) in w.iter().enumerate() {
        if i < s.rank() {
            if wi % s.d[i] != 0 {
                return None;
            }
            y[i] = wi / s.d[i];
        } else if wi != 0 {
            return None;
        }
    }
    Some(row_vec_mul(&y, &s.u))
}

/// Divide by the gcd of the entries (primitive vector), keeping direction.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let mut g = 0i64;
    for &x in v {
        g = gcd_i64(g, x.abs());
    }
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    let mut acc = 0i128;
    for (x, y) in a.iter().zip(b) {
        acc += *x as i128 * *y as i128;
    }
    checked(acc)
}

/// Inverse of a unimodular integer matrix via integer Gauss-Jordan.
pub fn unimodular_inverse(v: &Mat) -> Mat {
    let n = v.len();
    let mut m = v.clone();
    let mut inv = identity(n);
    for col in 0..n {
        // make pivot +-1 by Euclid on rows below
        loop {
            let mut best: Option<usize> = None;
            for i in col..n {
                if m[i][col] != 0 && best.map_or(true, |b| m[i][col].abs() < m[b][col].abs()) {
                    best = Some(i);
                }
            }
            let b = best.expect("matrix not invertible");
            m.swap(col, b);
            inv.swap(col, b);
            let mut again = false;
            for i in (col + 1)..n {
                if m[i][col] != 0 {
                    let q = div_round(m[i][col], m[col][col]);
                    for j in 0..n {
                        m[i][j] = checked(m[i][j] as i128 - q as i128 * m[col][j] as i128);
                        inv[i][j] = checked(inv[i][j] as i128 - q as i128 * inv[col][j] as i128);
                    }
                    if m[i][col] != 0 {
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        assert!(
            m[col][col].abs() == 1,
            "matrix is not unimodular (pivot {})",
            m[col][col]
        );
        if m[col][col] == -1 {
            for j in 0..n {
                m[col][j] = -m[col][j];
                inv[col][j] = -inv[col][j];
            }
        }
        for i in 0..n {
            if i != col && m[i][col] != 0 {
                let q = m[i][col];
                for j in 0..n {
                    m[i][j] = checked(m[i][j] as i128 - q as i128 * m[col][j] as i128);
                    inv[i][j] = checked(inv[i][j] as i128 - q as i128 * inv[col][j] as i128);
                }
            }
        }
    }
    inv
}

/// Row-style Hermite normal form (used for canonical lattice bases).
/// Returns the nonzero rows, pivots positive, entries above pivots reduced.
pub fn hnf_rows(rows: &Mat) -> Mat {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut m = rows.clone();
    let mut r = 0usize;
    for c in 0..cols {
        loop {
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if m[i][c] != 0 && best.map_or(true, |b| m[i][c].abs() < m[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut done = true;
            for i in (r + 1)..m.len() {
                if m[i][c] != 0 {
                    let q = div_round(m[i][c], m[r][c]);
                    for j in 0..cols {
                        m[i][j] = checked(m[i][j] as i128 - q as i128 * m[r][j] as i128);
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && m[r][c] != 0 {
            if m[r][c] < 0 {
                for j in 0..cols {
                    m[r][j] = -m[r][j];
                }
            }
            for i in 0..r {
                let q = m[i][c].div_euclid(m[r][c]);
                if q != 0 {
                    for j in 0..cols {
                        m[i][j] = checked(m[i][j] as i128 - q as i128 * m[r][j] as i128);
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_diagonal_divisibility() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&a);
        let prod = mat_mul(&mat_mul(&s.u, &a), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j && i < s.d.len() { s.d[i] } else { 0 };
                assert_eq!(prod[i][j], want, "at ({i},{j})");
            }
        }
        for w in s.d.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        // known invariant factors of this classic example
        assert_eq!(s.d, vec![2, 6, 12]);
    }

    #[test]
    fn snf_nonsquare_transforms_consistent() {
        let a = vec![vec![2, 0], vec![1, 1], vec![0, 2]];
        let s = smith_normal_form(&a);
        let prod = mat_mul(&mat_mul(&s.u, &a), &s.v);
        for (i, row) in prod.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j && i < s.d.len() { s.d[i] } else { 0 };
                assert_eq!(x, want, "at ({i},{j})");
            }
        }
        assert_eq!(s.d, vec![1, 2]);
    }

    #[test]
    fn lattice_membership_even_sum() {
        // lattice generated by (2,0),(1,1),(0,2): { (a,b) : a+b even }
        let l = Lattice::from_rows(&vec![vec![2, 0], vec![1, 1], vec![0, 2]], 2);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&[4, 2]));
        assert!(l.contains(&[1, 1]));
        assert!(!l.contains(&[1, 0]));
        assert!(!l.contains(&[0, 3]));
    }

    #[test]
    fn lattice_saturation_and_quotient() {
        // L = 2Z x 0 inside Z^2; saturation is Z x 0; quotient has rank 1
        let l = Lattice::from_rows(&vec![vec![2, 0]], 2);
        assert_eq!(l.rank(), 1);
        assert!(!l.is_saturated_in_ambient());
        let sat = l.saturation_basis();
        assert_eq!(sat, vec![vec![1, 0]]);
        let pr = l.quotient_projection(&[3, 5]);
        assert_eq!(pr.len(), 1);
        let back = l.quotient_lift(&pr);
        // projection of (lift) equals pr and (3,5) - lift is in the saturation
        assert_eq!(l.quotient_projection(&back), pr);
        let diff = [3 - back[0], 5 - back[1]];
        assert_eq!(diff[1], 0);
    }

    #[test]
    fn hnf_canonical() {
        let m = vec![vec![3, 1], vec![1, 1]];
        let h = hnf_rows(&m);
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]].as_slice());
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let v = vec![vec![1, 2, 0], vec![0, 1, 3], vec![0, 0, 1]];
        let w = unimodular_inverse(&v);
        assert_eq!(mat_mul(&v, &w), identity(3));
    }
}
