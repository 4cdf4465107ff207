//! Dense exact Gaussian elimination over a field descriptor.
//!
//! Matrices are plain `Vec<Vec<Elem>>` in row-major layout. Sizes here are
//! desk scale; no pivoting heuristics beyond first-nonzero.

use crate::field::Field;

/// Reduced row echelon form in place. Returns the pivot column indices in
/// order; the pivot of row i sits at the i-th returned column.
pub fn rref<K: Field>(field: &K, m: &mut [Vec<K::Elem>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field
            .inv(&m[r][c])
            .expect("nonzero field element has an inverse");
        for j in c..ncols {
            m[r][j] = field.mul(&m[r][j], &inv);
        }
        for i in 0..nrows {
            if i != r && !field.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..ncols {
                    let t = field.mul(&factor, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Field>(field: &K, mut m: Vec<Vec<K::Elem>>) -> usize {
    rref(field, &mut m).len()
}

/// Basis of the right nullspace of the matrix whose rows are given.
pub fn nullspace<K: Field>(field: &K, mut m: Vec<Vec<K::Elem>>, ncols: usize) -> Vec<Vec<K::Elem>> {
    debug_assert!(m.iter().all(|r| r.len() == ncols));
    let pivots = rref(field, &mut m);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&m[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// One solution of A x = b (rows of `a` are the rows of A), free variables
/// set to zero; `None` when the system is inconsistent.
pub fn solve<K: Field>(field: &K, a: &[Vec<K::Elem>], b: &[K::Elem]) -> Option<Vec<K::Elem>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let ncols = if a.is_empty() { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<K::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    Some(x)
}

/// Inverse of the square matrix, or `None` if singular.
pub fn invert<K: Field>(field: &K, a: &[Vec<K::Elem>]) -> Option<Vec<Vec<K::Elem>>> {
    let n = a.len();
    let mut aug: Vec<Vec<K::Elem>> = Vec::with_capacity(n);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "invert needs a square matrix");
        let mut r = row.clone();
        for j in 0..n {
            r.push(if i == j { field.one() } else { field.zero() });
        }
        aug.push(r);
    }
    let pivots = rref(field, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp64, Rationals, Ring as _};
    use num_rational::BigRational;

    fn fp(p: u64) -> Fp64 {
        Fp64::new(p).unwrap()
    }

    fn qmat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_rref() {
        let f = fp(7);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(rank(&f, m), 2);
    }

    #[test]
    fn nullspace_dimension_theorem() {
        let f = fp(7);
        // rank 2 map from F7^3, nullity 1
        let m = vec![vec![1, 2, 3], vec![0, 1, 1], vec![1, 3, 4]];
        let ns = nullspace(&f, m.clone(), 3);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            for row in &m {
                let s = row
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn solve_and_invert_rational() {
        let a = qmat(&[&[2, 1], &[1, 3]]);
        let b = vec![Rationals.from_i64(5), Rationals.from_i64(10)];
        let x = solve(&Rationals, &a, &b).unwrap();
        // 2x + y = 5, x + 3y = 10 has x = 1, y = 3
        assert_eq!(x[0], Rationals.from_i64(1));
        assert_eq!(x[1], Rationals.from_i64(3));

        let inv = invert(&Rationals, &a).unwrap();
        // A * A^-1 = I
        for i in 0..2 {
            for j in 0..2 {
                let s = (0..2).fold(Rationals.zero(), |acc, k| {
                    Rationals.add(&acc, &Rationals.mul(&a[i][k], &inv[k][j]))
                });
                assert_eq!(s, Rationals.from_i64((i == j) as i64));
            }
        }

        let singular = qmat(&[&[1, 2], &[2, 4]]);
        assert!(invert(&Rationals, &singular).is_none());
        let no_sol = solve(
            &Rationals,
            &singular,
            &[Rationals.from_i64(1), Rationals.from_i64(3)],
        );
        assert!(no_sol.is_none());
    }
}
