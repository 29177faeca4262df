use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `u * a * v = d` of an integer matrix, with the unimodular
/// transition matrices and their inverses tracked exactly.
///
/// `d` is diagonal with nonnegative entries forming a divisibility chain
/// `d_1 | d_2 | ...`; trailing diagonal entries may be zero.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub d: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal entries of `d` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries, i.e. the rank of the matrix.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Quotient of `a / b` rounded to the nearest integer (ties toward zero), so
/// that the remainder `a - q*b` has minimal absolute value.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

struct Worker {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Worker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += c * row[src], kept consistent on u and u_inv.
    fn row_addmul(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.row_addmul(dst, src, c);
        self.u.row_addmul(dst, src, c);
        let negc = -c.clone();
        self.u_inv.col_addmul(src, dst, &negc);
    }

    /// col[dst] += c * col[src], kept consistent on v and v_inv.
    fn col_addmul(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.col_addmul(dst, src, c);
        self.v.col_addmul(dst, src, c);
        let negc = -c.clone();
        self.v_inv.row_addmul(src, dst, &negc);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Compute the Smith normal form of `a`, with pivots chosen by least absolute
/// value to keep intermediate entries small.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Worker {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };

    for t in 0..m.min(n) {
        // Least-absolute-value nonzero entry of the remaining submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !w.d.get(i, j).is_zero()
                    && pivot
                        .map(|(pi, pj)| w.d.get(i, j).abs() < w.d.get(pi, pj).abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            // Clear column t below the pivot; if a reduction leaves a nonzero
            // remainder it is strictly smaller than the pivot, so swapping it
            // up makes progress.
            let mut changed = false;
            for i in t + 1..m {
                if w.d.get(i, t).is_zero() {
                    continue;
                }
                let q = -round_div(w.d.get(i, t), w.d.get(t, t));
                w.row_addmul(i, t, &q);
                if !w.d.get(i, t).is_zero() {
                    w.swap_rows(t, i);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            for j in t + 1..n {
                if w.d.get(t, j).is_zero() {
                    continue;
                }
                let q = -round_div(w.d.get(t, j), w.d.get(t, t));
                w.col_addmul(j, t, &q);
                if !w.d.get(t, j).is_zero() {
                    w.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Pivot row and column are clear. Enforce divisibility of the
            // remaining submatrix by the pivot.
            let mut culprit = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !w.d.get(i, j).mod_floor(w.d.get(t, t)).is_zero() {
                        culprit = Some(i);
                        break 'outer;
                    }
                }
            }
            match culprit {
                Some(i) => {
                    let one = BigInt::from(1);
                    w.row_addmul(t, i, &one);
                }
                None => break,
            }
        }
    }

    for t in 0..m.min(n) {
        if w.d.get(t, t).is_negative() {
            w.negate_row(t);
        }
    }

    SmithNormalForm {
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        d: w.d,
    }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
///
/// The result has positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, zero rows removed, and is the canonical basis of the row
/// lattice: two generating sets span the same lattice iff their HNFs are equal.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Reduce all entries below position (r, c) to zero by gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !m.get(i, c).is_zero()
                    && best
                        .map(|b| m.get(i, c).abs() < m.get(b, c).abs())
                        .unwrap_or(true)
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(r, b);
            let mut again = false;
            for i in r + 1..rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let q = -round_div(m.get(i, c), m.get(r, c));
                m.row_addmul(i, r, &q);
                if !m.get(i, c).is_zero() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if m.get(r, c).is_zero() {
            continue;
        }
        if m.get(r, c).is_negative() {
            m.negate_row(r);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = -m.get(i, c).div_floor(m.get(r, c));
            m.row_addmul(i, r, &q);
        }
        r += 1;
    }
    // Drop zero rows.
    let kept: Vec<Vec<BigInt>> = (0..r).map(|i| m.row(i).to_vec()).collect();
    let mut out = IntMatrix::zero(r, cols);
    for (i, row) in kept.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(a: &IntMatrix) {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.mul(&s.u_inv).unwrap() == IntMatrix::identity(a.rows()));
        assert!(s.v.mul(&s.v_inv).unwrap() == IntMatrix::identity(a.cols()));
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        let diag = s.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() {
                if diag[i].is_zero() {
                    assert!(diag[i + 1].is_zero());
                } else {
                    assert!(diag[i + 1].mod_floor(&diag[i]).is_zero());
                }
            }
        }
        // Off-diagonal entries of d vanish.
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_of_2x2_example() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check_decomposition(&a);
    }

    #[test]
    fn snf_shapes_and_edge_cases() {
        check_decomposition(&IntMatrix::zero(3, 2));
        check_decomposition(&IntMatrix::identity(4));
        check_decomposition(&IntMatrix::from_i64(&[&[0, 0, 5]]));
        check_decomposition(&IntMatrix::from_i64(&[&[6], &[10], &[15]]));
        let s = smith_normal_form(&IntMatrix::from_i64(&[&[6], &[10], &[15]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1)]);
    }

    #[test]
    fn hnf_is_canonical_for_row_lattice() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3], &[2, 3]]);
        let b = IntMatrix::from_i64(&[&[2, 3], &[2, 0]]);
        // Same row lattice (third row of a is the sum of the first two).
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        let h = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn hnf_reduces_above_pivot() {
        let a = IntMatrix::from_i64(&[&[1, 7], &[0, 5]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 2], &[0, 5]]));
    }
}
