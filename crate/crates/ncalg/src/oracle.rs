//! Slow, obviously-correct reference implementations used to cross-check
//! the production algorithms: dense linear algebra for centralizer
//! dimensions, literal long-prefix comparison of infinite powers,
//! cofactor expansion for determinants and characteristic polynomials,
//! and exhaustive enumeration over tiny finite state spaces.

use crate::centralizer::words_of_length;
use crate::field::{Field, Fp64};
use crate::freepoly::{commutator, FreePoly};
use crate::genmat::{eval_fp, ConcreteMatrix, Matrix};
use crate::unipoly::UniPoly;
use crate::word::Word;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Dimension of {g : deg g ≤ d, [f, g] = 0} in each degree, computed the
/// blunt way: one dense coefficient matrix per degree prefix, fresh row
/// echelon each time, dimensions as successive nullity differences.
pub fn centralizer_dims_dense<K: Field>(f: &FreePoly<K>, d: usize) -> Vec<usize> {
    assert!(!f.is_constant(), "dense oracle needs a nonscalar input");
    assert!(d >= 1, "dense oracle needs a positive degree bound");
    let field = f.field().clone();
    let s = f.alphabet();
    let mut sparse_rows: Vec<BTreeMap<Word, K::Elem>> = Vec::new();
    let mut per_degree_counts = Vec::with_capacity(d + 1);
    for len in 0..=d {
        let ws = words_of_length(s, len);
        per_degree_counts.push(ws.len());
        for w in ws {
            let wp = FreePoly::monomial(field.clone(), s, w, field.one());
            let c = commutator(f, &wp);
            sparse_rows.push(c.terms().map(|(v, e)| (v.clone(), e.clone())).collect());
        }
    }
    let mut col_ix: BTreeMap<Word, usize> = BTreeMap::new();
    for row in &sparse_rows {
        for w in row.keys() {
            let next = col_ix.len();
            col_ix.entry(w.clone()).or_insert(next);
        }
    }
    let ncols = col_ix.len().max(1);
    let dense: Vec<Vec<K::Elem>> = sparse_rows
        .iter()
        .map(|row| {
            let mut v = vec![field.zero(); ncols];
            for (w, e) in row {
                v[col_ix[w]] = e.clone();
            }
            v
        })
        .collect();
    let mut dims = Vec::with_capacity(d + 1);
    let mut prev_nullity = 0usize;
    let mut taken = 0usize;
    for &cnt in &per_degree_counts {
        taken += cnt;
        let mut m = dense[..taken].to_vec();
        let nullity = taken - echelon_rank(&field, &mut m);
        dims.push(nullity - prev_nullity);
        prev_nullity = nullity;
    }
    dims
}

fn echelon_rank<K: Field>(field: &K, m: &mut [Vec<K::Elem>]) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(&m[rank][col]).expect("pivot is nonzero");
        for c in col..ncols {
            m[rank][c] = field.mul(&m[rank][c], &inv);
        }
        for r in rank + 1..nrows {
            if !field.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let t = field.mul(&factor, &m[rank][c]);
                    m[r][c] = field.sub(&m[r][c], &t);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Compare u^∞ against v^∞ by literally spelling both out to a length
/// where any difference must already have appeared.
pub fn inf_cmp_by_long_prefix(
    u: &Word,
    v: &Word,
    order: &crate::words::AlphabetOrder,
) -> Ordering {
    assert!(!u.is_empty() && !v.is_empty(), "words must be nonempty");
    let bound = 2 * u.len() * v.len() + u.len() + v.len();
    let ul = u.letters();
    let vl = v.letters();
    for i in 0..bound {
        let c = order.cmp_letters(ul[i % ul.len()], vl[i % vl.len()]);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

/// Characteristic polynomial det(tI − A) by cofactor expansion over the
/// univariate polynomial ring. Exponential in n; guarded to n ≤ 5.
pub fn charpoly_cofactor<K: Field>(m: &ConcreteMatrix<K>) -> UniPoly<K> {
    let n = m.n();
    assert!(n <= 5, "cofactor expansion is factorial; keep n small");
    let field = m.ring().clone();
    let t_minus_a: Vec<Vec<UniPoly<K>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let neg = field.neg(m.entry(i, j));
                    if i == j {
                        UniPoly::from_coeffs(field.clone(), vec![neg, field.one()])
                    } else {
                        UniPoly::constant(field.clone(), neg)
                    }
                })
                .collect()
        })
        .collect();
    det_laplace_poly(&field, &t_minus_a)
}

fn det_laplace_poly<K: Field>(field: &K, m: &[Vec<UniPoly<K>>]) -> UniPoly<K> {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero(field.clone());
    for j in 0..m.len() {
        let minor: Vec<Vec<UniPoly<K>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _e)| c != j).map(|(_c, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&det_laplace_poly(field, &minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor<K: Field>(m: &ConcreteMatrix<K>) -> K::Elem {
    let n = m.n();
    assert!(n <= 5, "cofactor expansion is factorial; keep n small");
    let field = m.ring().clone();
    let rows: Vec<Vec<K::Elem>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    det_laplace(&field, &rows)
}

fn det_laplace<K: Field>(field: &K, m: &[Vec<K::Elem>]) -> K::Elem {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = field.zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<K::Elem>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _e)| c != j).map(|(_c, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = field.mul(&m[0][j], &det_laplace(field, &minor));
        acc = if j % 2 == 0 {
            field.add(&acc, &term)
        } else {
            field.sub(&acc, &term)
        };
    }
    acc
}

/// Evaluate `f` at every tuple of n×n matrices over its prime field and
/// return the first non-vanishing point, or `None` when `f` is a
/// polynomial identity for that order. State space capped near 2^21.
pub fn exhaustive_pi_check(f: &FreePoly<Fp64>, n: usize) -> Option<Vec<ConcreteMatrix<Fp64>>> {
    let field = *f.field();
    let q = field.modulus() as u128;
    let s = f.alphabet();
    let cells = (n * n * s) as u32;
    let total = q.checked_pow(cells).expect("state space size overflows");
    assert!(total <= 1 << 21, "exhaustive check capped near 2^21 points");
    let mut digits = vec![0u64; cells as usize];
    for idx in 0..total {
        let mut rest = idx;
        for d in digits.iter_mut() {
            *d = (rest % q) as u64;
            rest /= q;
        }
        let mats: Vec<ConcreteMatrix<Fp64>> = (0..s)
            .map(|m| {
                let rows = (0..n)
                    .map(|i| (0..n).map(|j| digits[m * n * n + i * n + j]).collect())
                    .collect();
                Matrix::from_rows(field, rows)
            })
            .collect();
        let img = eval_fp(f, &mats);
        if !img.is_zero() {
            return Some(mats);
        }
    }
    None
}

/// Irreducibility over F_q by dividing out every monic candidate of
/// degree up to half the input's. Small fields and degrees only.
pub fn irreducible_by_trial_division(p: &UniPoly<Fp64>) -> bool {
    let field = *p.ring();
    let q = field.modulus() as u128;
    let d = match p.degree().finite() {
        Some(d) => d,
        None => return false,
    };
    if d == 0 {
        return false;
    }
    for e in 1..=d / 2 {
        let count = q.checked_pow(e as u32).expect("candidate count overflows");
        assert!(count <= 1 << 16, "trial division capped to small fields");
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(e + 1);
            let mut rest = idx;
            for _ in 0..e {
                coeffs.push((rest % q) as u64);
                rest /= q;
            }
            coeffs.push(1);
            let candidate = UniPoly::from_coeffs(field, coeffs);
            if p.rem(&candidate).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::centralizer_basis;
    use crate::field::{Rationals, Ring as _};
    use crate::genmat::{charpoly, irreducible_fq};
    use crate::words::{inf_cmp, AlphabetOrder};

    #[test]
    fn dense_dims_match_the_solver() {
        let p = Fp64::new(2147483647).unwrap();
        let x = FreePoly::gen(p, 2, 0);
        let y = FreePoly::gen(p, 2, 1);
        let cases = vec![
            x.pow(2),
            &x + &y,
            &x * &y,
            &(&x * &y) * &x,
        ];
        for f in cases {
            let dense = centralizer_dims_dense(&f, 4);
            let sparse = centralizer_basis(&f, 4).unwrap().dims();
            assert_eq!(dense, sparse, "f = {}", f.canonical_text());
        }
        assert_eq!(centralizer_dims_dense(&x.pow(2), 4), vec![1, 1, 1, 1, 1]);
        assert_eq!(centralizer_dims_dense(&(&x * &y), 4), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn long_prefix_agrees_with_the_fast_comparison() {
        let ord = AlphabetOrder::natural(2);
        let pairs = [
            ("ab", "aba"),
            ("a", "ab"),
            ("aab", "aaba"),
            ("ab", "abab"),
            ("ba", "b"),
        ];
        for (us, vs) in pairs {
            let u = Word::parse_letters(us).unwrap();
            let v = Word::parse_letters(vs).unwrap();
            assert_eq!(
                inf_cmp_by_long_prefix(&u, &v, &ord),
                inf_cmp(&u, &v, &ord),
                "{us} vs {vs}"
            );
        }
    }

    #[test]
    fn cofactor_charpoly_matches_berkowitz() {
        let f7 = Fp64::new(7).unwrap();
        let a = Matrix::from_rows(f7, vec![vec![1, 2, 3], vec![4, 5, 6], vec![0, 1, 2]]);
        assert_eq!(charpoly_cofactor(&a), charpoly(&a));

        let q = |k: i64| Rationals.from_i64(k);
        let b = Matrix::from_rows(Rationals, vec![vec![q(2), q(-1)], vec![q(7), q(3)]]);
        assert_eq!(charpoly_cofactor(&b), charpoly(&b));
        // det and trace read off the ends of the characteristic polynomial
        assert_eq!(det_cofactor(&b), q(13));
        assert_eq!(charpoly(&b).coeff(1), q(-5));
    }

    #[test]
    fn exhaustive_check_separates_identities_from_witnesses() {
        let f3 = Fp64::new(3).unwrap();
        // 1x1 matrices commute, so the commutator vanishes identically
        let x = FreePoly::gen(f3, 2, 0);
        let y = FreePoly::gen(f3, 2, 1);
        let c = commutator(&x, &y);
        assert!(exhaustive_pi_check(&c, 1).is_none());

        let f2 = Fp64::new(2).unwrap();
        let c2 = commutator(&FreePoly::gen(f2, 2, 0), &FreePoly::gen(f2, 2, 1));
        let witness = exhaustive_pi_check(&c2, 2).expect("2x2 matrices do not commute");
        assert!(!eval_fp(&c2, &witness).is_zero());
    }

    #[test]
    fn trial_division_agrees_with_the_fast_test_on_all_cubics_mod_3() {
        let f3 = Fp64::new(3).unwrap();
        for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                for c2 in 0..3u64 {
                    let p = UniPoly::from_coeffs(f3, vec![c0, c1, c2, 1]);
                    assert_eq!(
                        irreducible_by_trial_division(&p),
                        irreducible_fq(&p),
                        "t^3 + {c2} t^2 + {c1} t + {c0}"
                    );
                }
            }
        }
    }
}
