//! The algebra of generic matrices: evaluation of free polynomials at
//! matrix tuples (symbolic and concrete), randomized polynomial-identity
//! testing, division-free characteristic polynomials, minimal polynomials,
//! irreducibility of char polys at specializations, trace invariants, and
//! the strictly upper triangular reduction.

use crate::commpoly::{CommPoly, CommPolyRing, VarId};
use crate::error::{Error, Result};
use crate::field::{is_prime_u64, Field, Fp64, Ring};
use crate::freepoly::{Degree, FreePoly};
use crate::linalg;
use crate::unipoly::UniPoly;
use crate::word::Word;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Square matrix over a ring descriptor, row-major entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<R: Ring> {
    ring: R,
    n: usize,
    entries: Vec<R::Elem>,
}

/// Matrix with commutative-polynomial entries, e.g. a generic generator
/// or the image of a free polynomial under evaluation at generic
/// generators.
pub type GenericMatrix<K> = Matrix<CommPolyRing<K>>;
/// Matrix with scalar entries.
pub type ConcreteMatrix<K> = Matrix<K>;

impl<R: Ring> Matrix<R> {
    pub fn zero(ring: R, n: usize) -> Matrix<R> {
        assert!(n >= 1, "matrix order must be positive");
        let entries = vec![ring.zero(); n * n];
        Matrix { ring, n, entries }
    }

    pub fn scalar(ring: R, n: usize, c: R::Elem) -> Matrix<R> {
        let mut m = Matrix::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn identity(ring: R, n: usize) -> Matrix<R> {
        let one = ring.one();
        Matrix::scalar(ring, n, one)
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Matrix<R> {
        let n = rows.len();
        assert!(n >= 1 && rows.iter().all(|r| r.len() == n), "square matrix required");
        Matrix {
            ring,
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn entry(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: R::Elem) {
        self.entries[i * self.n + j] = e;
    }

    pub fn row_major(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    fn assert_same_shape(&self, other: &Matrix<R>) {
        assert!(
            self.ring == other.ring && self.n == other.n,
            "mixed matrix shapes or rings in one operation"
        );
    }

    pub fn add(&self, other: &Matrix<R>) -> Matrix<R> {
        self.assert_same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix<R>) -> Matrix<R> {
        self.assert_same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        }
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        self.assert_same_shape(other);
        let n = self.n;
        let mut out = Matrix::zero(self.ring.clone(), n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let t = self.ring.mul(a, other.entry(k, j));
                    out.entries[i * n + j] = self.ring.add(&out.entries[i * n + j], &t);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &R::Elem) -> Matrix<R> {
        let entries = self.entries.iter().map(|a| self.ring.mul(a, c)).collect();
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        }
    }

    pub fn pow(&self, e: u32) -> Matrix<R> {
        let mut out = Matrix::identity(self.ring.clone(), self.n);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn trace(&self) -> R::Elem {
        (0..self.n).fold(self.ring.zero(), |acc, i| {
            self.ring.add(&acc, self.entry(i, i))
        })
    }
}

/// The s generic generators of order n: the ν-th has (i, j) entry equal
/// to the variable x^(ν)_{ij}; all n²s variables are distinct.
pub fn generic_generators<K: Field>(field: K, n: usize, s: usize) -> Vec<GenericMatrix<K>> {
    assert!(n >= 1 && s >= 1);
    let ring = CommPolyRing::new(field.clone());
    (0..s)
        .map(|nu| {
            let mut m = Matrix::zero(ring.clone(), n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, CommPoly::var(field.clone(), VarId::new(nu, i, j)));
                }
            }
            m
        })
        .collect()
}

/// Strictly upper triangular generic generators: variables above the
/// diagonal, zero on and below it.
pub fn generic_strict_ut_generators<K: Field>(
    field: K,
    n: usize,
    s: usize,
) -> Vec<GenericMatrix<K>> {
    assert!(n >= 1 && s >= 1);
    let ring = CommPolyRing::new(field.clone());
    (0..s)
        .map(|nu| {
            let mut m = Matrix::zero(ring.clone(), n);
            for i in 0..n {
                for j in i + 1..n {
                    m.set(i, j, CommPoly::var(field.clone(), VarId::new(nu, i, j)));
                }
            }
            m
        })
        .collect()
}

/// Evaluate a free polynomial at a tuple of matrices, one per generator,
/// embedding each coefficient into the entry ring. The unique ring
/// homomorphism extending letter -> matrix.
pub fn eval_words<K: Field, R: Ring>(
    f: &FreePoly<K>,
    ring: &R,
    n: usize,
    mats: &[Matrix<R>],
    embed: impl Fn(&K::Elem) -> R::Elem,
) -> Matrix<R> {
    assert!(
        mats.len() >= f.alphabet(),
        "one matrix needed per generator"
    );
    for m in mats {
        assert!(m.n == n && m.ring == *ring, "mixed matrix shapes in evaluation");
    }
    let mut acc = Matrix::zero(ring.clone(), n);
    for (w, c) in f.terms() {
        let mut prod = Matrix::scalar(ring.clone(), n, embed(c));
        for &l in w.letters() {
            prod = prod.mul(&mats[l as usize]);
        }
        acc = acc.add(&prod);
    }
    acc
}

/// Image of f under evaluation at the generic generators of order n.
pub fn pi_map<K: Field>(f: &FreePoly<K>, n: usize) -> GenericMatrix<K> {
    let field = f.field().clone();
    let ring = CommPolyRing::new(field.clone());
    let gens = generic_generators(field.clone(), n, f.alphabet().max(1));
    eval_words(f, &ring, n, &gens, |c| {
        CommPoly::constant(field.clone(), c.clone())
    })
}

/// Image of f at the strictly upper triangular generic generators.
pub fn ut_map<K: Field>(f: &FreePoly<K>, n: usize) -> GenericMatrix<K> {
    let field = f.field().clone();
    let ring = CommPolyRing::new(field.clone());
    let gens = generic_strict_ut_generators(field.clone(), n, f.alphabet().max(1));
    eval_words(f, &ring, n, &gens, |c| {
        CommPoly::constant(field.clone(), c.clone())
    })
}

/// Entrywise evaluation of a symbolic matrix at a tuple of concrete
/// matrices supplying the variable values: x^(ν)_{ij} reads entry (i, j)
/// of the ν-th matrix.
pub fn specialize<K: Field>(
    m: &GenericMatrix<K>,
    mats: &[ConcreteMatrix<K>],
) -> Result<ConcreteMatrix<K>> {
    let field = m.ring().field.clone();
    let n = m.n();
    for cm in mats {
        assert!(
            cm.n == n && cm.ring == field,
            "specialization point has mismatched order or field"
        );
    }
    let mut out = Matrix::zero(field, n);
    for i in 0..n {
        for j in 0..n {
            let v = m.entry(i, j).eval(|v| {
                mats.get(v.gen as usize)
                    .map(|cm| cm.entry(v.row as usize, v.col as usize).clone())
            })?;
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Evaluate a prime-field free polynomial at concrete matrices over the
/// same prime field.
pub fn eval_fp(f: &FreePoly<Fp64>, mats: &[ConcreteMatrix<Fp64>]) -> ConcreteMatrix<Fp64> {
    assert!(!mats.is_empty(), "evaluation point must contain a matrix");
    let ring = *mats[0].ring();
    let n = mats[0].n();
    eval_words(f, &ring, n, mats, |c| *c)
}

/// Evaluate f at concrete matrices over F_q, mapping coefficients into
/// the prime field first. Fails when a rational coefficient has a
/// denominator divisible by q.
pub fn eval_mod<K: Field>(
    f: &FreePoly<K>,
    mats: &[ConcreteMatrix<Fp64>],
) -> Result<ConcreteMatrix<Fp64>> {
    assert!(!mats.is_empty(), "evaluation point must contain a matrix");
    let fq = *mats[0].ring();
    let mapped = f.map_field(fq, |c| f.field().to_residue(c, mats[0].ring()))?;
    Ok(eval_fp(&mapped, mats))
}

pub fn random_matrix<G: rand::Rng>(fq: &Fp64, n: usize, rng: &mut G) -> ConcreteMatrix<Fp64> {
    let mut m = Matrix::zero(*fq, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, fq.sample(rng));
        }
    }
    m
}

pub fn random_strict_ut_matrix<G: rand::Rng>(
    fq: &Fp64,
    n: usize,
    rng: &mut G,
) -> ConcreteMatrix<Fp64> {
    let mut m = Matrix::zero(*fq, n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, fq.sample(rng));
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiVerdict {
    Identity,
    NonIdentity,
}

/// Outcome of the randomized kernel test. `degree` is the total degree
/// used in the (degree/q)^samples false-identity bound; the bound itself
/// is reported by consumers as an exact rational.
#[derive(Clone, Debug)]
pub struct PiTestReport {
    pub verdict: PiVerdict,
    pub samples: u64,
    pub seed: u64,
    pub q: u64,
    pub degree: usize,
    pub witness: Option<Vec<ConcreteMatrix<Fp64>>>,
}

/// Evaluate f at `samples` independent uniform tuples of n×n matrices
/// over F_q. Any nonzero evaluation proves f is outside the kernel at
/// order n and is returned as a witness; all-zero runs report Identity
/// with the documented error bound. Trial t draws from seed + t.
pub fn pi_test<K: Field>(
    f: &FreePoly<K>,
    n: usize,
    samples: u64,
    seed: u64,
    q: u64,
) -> Result<PiTestReport> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    assert!(n >= 1, "matrix order must be positive");
    let fq = Fp64::new(q)?;
    let mapped = f.map_field(fq, |c| f.field().to_residue(c, &fq))?;
    let s = mapped.alphabet().max(1);
    let degree = mapped.degree().finite().unwrap_or(0);
    for t in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
        let mats: Vec<ConcreteMatrix<Fp64>> =
            (0..s).map(|_| random_matrix(&fq, n, &mut rng)).collect();
        let image = eval_fp(&mapped, &mats);
        if !image.is_zero() {
            return Ok(PiTestReport {
                verdict: PiVerdict::NonIdentity,
                samples: t + 1,
                seed,
                q,
                degree,
                witness: Some(mats),
            });
        }
    }
    Ok(PiTestReport {
        verdict: PiVerdict::Identity,
        samples,
        seed,
        q,
        degree,
        witness: None,
    })
}

/// Characteristic polynomial det(tI - M) by the Berkowitz iteration:
/// division-free, valid over any commutative coefficient ring. Monic of
/// degree n; the t^(n-1) coefficient is -trace(M).
pub fn charpoly<R: Ring>(m: &Matrix<R>) -> UniPoly<R> {
    let ring = m.ring().clone();
    let n = m.n();
    // coefficients of the leading principal k×k block's characteristic
    // polynomial, highest power first
    let mut v = vec![ring.one()];
    for k in 1..=n {
        // first column of the (k+1)×k Toeplitz factor:
        // 1, -a_kk, -(R S), -(R M S), ... with M the (k-1) block,
        // R the row to its left... R = row k-1 of M's columns, S = column k-1
        let mut col = Vec::with_capacity(k + 1);
        col.push(ring.one());
        col.push(ring.neg(m.entry(k - 1, k - 1)));
        if k >= 2 {
            let mut w: Vec<R::Elem> = (0..k - 1).map(|i| m.entry(i, k - 1).clone()).collect();
            for step in 2..=k {
                let dot = (0..k - 1).fold(ring.zero(), |acc, j| {
                    ring.add(&acc, &ring.mul(m.entry(k - 1, j), &w[j]))
                });
                col.push(ring.neg(&dot));
                if step < k {
                    let mut nw = vec![ring.zero(); k - 1];
                    for (i, slot) in nw.iter_mut().enumerate() {
                        for j in 0..k - 1 {
                            *slot = ring.add(slot, &ring.mul(m.entry(i, j), &w[j]));
                        }
                    }
                    w = nw;
                }
            }
        }
        let mut vn = vec![ring.zero(); k + 1];
        for i in 0..=k {
            for j in 0..k.min(i + 1) {
                vn[i] = ring.add(&vn[i], &ring.mul(&col[i - j], &v[j]));
            }
        }
        v = vn;
    }
    v.reverse();
    UniPoly::from_coeffs(ring, v)
}

/// Monic least-degree annihilating polynomial, found as the first linear
/// dependence among vec(I), vec(M), vec(M²), … Divides the characteristic
/// polynomial, so degree n suffices.
pub fn minpoly<K: Field>(m: &ConcreteMatrix<K>) -> UniPoly<K> {
    let field = m.ring().clone();
    let n = m.n();
    let mut pows: Vec<Vec<K::Elem>> = vec![Matrix::identity(field.clone(), n).entries];
    let mut cur = Matrix::identity(field.clone(), n);
    for deg in 1..=n {
        cur = cur.mul(m);
        let rows: Vec<Vec<K::Elem>> = (0..n * n)
            .map(|t| (0..deg).map(|j| pows[j][t].clone()).collect())
            .collect();
        if let Some(x) = linalg::solve(&field, &rows, &cur.entries) {
            let mut coeffs: Vec<K::Elem> = x.iter().map(|e| field.neg(e)).collect();
            coeffs.push(field.one());
            return UniPoly::from_coeffs(field, coeffs);
        }
        pows.push(cur.entries.clone());
    }
    unreachable!("a dependence exists by degree n");
}

fn prime_divisors(mut d: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut r = 2;
    while r * r <= d {
        if d.is_multiple_of(r) {
            out.push(r);
            while d.is_multiple_of(r) {
                d /= r;
            }
        }
        r += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Exact irreducibility over F_q by Rabin's criterion: x^(q^d) ≡ x mod p
/// and gcd(x^(q^(d/r)) - x, p) = 1 at every maximal proper divisor d/r.
pub fn irreducible_fq(p: &UniPoly<Fp64>) -> bool {
    let d = match p.degree() {
        Degree::Finite(d) if d >= 1 => d,
        _ => return false,
    };
    assert!(p.is_monic(), "irreducibility test expects a monic polynomial");
    if d == 1 {
        return true;
    }
    let q = p.ring().modulus();
    let x = UniPoly::var(*p.ring());
    // frob[j] = x^(q^j) mod p, built by iterated q-th powering
    let mut frob = vec![x.clone()];
    let mut t = x.clone();
    for _ in 1..=d {
        t = t.pow_mod(q, p);
        frob.push(t.clone());
    }
    if frob[d] != x {
        return false;
    }
    for r in prime_divisors(d) {
        let g = frob[d / r].sub(&x).gcd(p);
        if g.degree() != Degree::Finite(0) {
            return false;
        }
    }
    true
}

/// Outcome of the prime-order spectral probe.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub irreducible_found: bool,
    pub witness: Option<Vec<ConcreteMatrix<Fp64>>>,
    pub witness_charpoly: Option<UniPoly<Fp64>>,
    pub witness_trial: Option<u64>,
    pub squarefree_count: u64,
    pub trials: u64,
    pub seed: u64,
    pub q: u64,
}

/// Specialize the image of f at `trials` random points over F_q; count
/// squarefree characteristic polynomials (gcd with the derivative is
/// constant, certifying pairwise distinct eigenvalues) and record the
/// first irreducible one. One irreducible specialization certifies
/// irreducibility of the generic characteristic polynomial, since
/// reducibility is preserved by specialization.
///
/// Requires n prime and f nonscalar at order n: the nonconstant part of f
/// must fail the kernel test.
pub fn spectral_probe<K: Field>(
    f: &FreePoly<K>,
    n: usize,
    trials: u64,
    seed: u64,
    q: u64,
) -> Result<SpectralReport> {
    if !is_prime_u64(n as u64) {
        return Err(Error::OrderNotPrime(n));
    }
    if trials == 0 {
        return Err(Error::NoSamples);
    }
    let fq = Fp64::new(q)?;
    let constant = FreePoly::constant(f.field().clone(), f.alphabet(), f.constant_term());
    let nonconst = f - &constant;
    if nonconst.is_zero() {
        return Err(Error::ScalarOperand("spectral_probe"));
    }
    let pre = pi_test(&nonconst, n, 8, seed, q)?;
    if pre.verdict == PiVerdict::Identity {
        return Err(Error::ScalarOperand("spectral_probe"));
    }
    let mapped = f.map_field(fq, |c| f.field().to_residue(c, &fq))?;
    let s = mapped.alphabet().max(1);
    let mut report = SpectralReport {
        irreducible_found: false,
        witness: None,
        witness_charpoly: None,
        witness_trial: None,
        squarefree_count: 0,
        trials,
        seed,
        q,
    };
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
        let mats: Vec<ConcreteMatrix<Fp64>> =
            (0..s).map(|_| random_matrix(&fq, n, &mut rng)).collect();
        let image = eval_fp(&mapped, &mats);
        let c = charpoly(&image);
        if c.gcd(&c.derivative()).degree() == Degree::Finite(0) {
            report.squarefree_count += 1;
        }
        if !report.irreducible_found && irreducible_fq(&c) {
            report.irreducible_found = true;
            report.witness = Some(mats);
            report.witness_charpoly = Some(c);
            report.witness_trial = Some(t);
        }
    }
    Ok(report)
}

/// Trace of the product of matrices along the word; the empty word gives
/// trace(I) = n.
pub fn word_trace<R: Ring>(w: &Word, mats: &[Matrix<R>]) -> R::Elem {
    assert!(!mats.is_empty(), "word trace needs at least one matrix");
    let ring = mats[0].ring().clone();
    let n = mats[0].n();
    let mut prod = Matrix::identity(ring, n);
    for &l in w.letters() {
        prod = prod.mul(&mats[l as usize]);
    }
    prod.trace()
}

/// Evaluate f at s random strictly upper triangular matrices over F_q
/// (zero diagonal). For constant-free f the image is strictly upper
/// triangular, hence traceless; any word of length ≥ n evaluates to 0.
pub fn ut_eval<K: Field>(
    f: &FreePoly<K>,
    n: usize,
    seed: u64,
    q: u64,
) -> Result<ConcreteMatrix<Fp64>> {
    assert!(n >= 1, "matrix order must be positive");
    let fq = Fp64::new(q)?;
    let s = f.alphabet().max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mats: Vec<ConcreteMatrix<Fp64>> = (0..s)
        .map(|_| random_strict_ut_matrix(&fq, n, &mut rng))
        .collect();
    eval_mod(f, &mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::freepoly::{commutator, standard_polynomial};

    fn x() -> FreePoly<Rationals> {
        FreePoly::gen(Rationals, 2, 0)
    }

    fn y() -> FreePoly<Rationals> {
        FreePoly::gen(Rationals, 2, 1)
    }

    fn fp(p: u64) -> Fp64 {
        Fp64::new(p).unwrap()
    }

    #[test]
    fn generic_generators_have_distinct_variables() {
        let gens = generic_generators(Rationals, 3, 2);
        let mut vars = std::collections::BTreeSet::new();
        for g in &gens {
            for e in g.row_major() {
                let (m, _) = e.terms().next().unwrap();
                vars.insert(m.factors()[0].0);
            }
        }
        assert_eq!(vars.len(), 18);
    }

    #[test]
    fn pi_map_is_a_homomorphism() {
        assert_eq!(pi_map(&x(), 2), generic_generators(Rationals, 2, 2)[0]);
        let f = &x() + &(&y() * &x());
        let g = &y() - &x().pow(2);
        assert_eq!(pi_map(&(&f * &g), 2), pi_map(&f, 2).mul(&pi_map(&g, 2)));
        assert_eq!(pi_map(&(&f + &g), 2), pi_map(&f, 2).add(&pi_map(&g, 2)));
        // 1×1 matrices commute
        assert!(pi_map(&commutator(&x(), &y()), 1).is_zero());
    }

    #[test]
    fn specialization_commutes_with_evaluation() {
        let f7 = fp(7);
        let f = &(&x() * &y()) + &x();
        let mapped = f.map_field(f7, |c| Rationals.to_residue(c, &f7)).unwrap();
        let sym = pi_map(&mapped, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mats: Vec<_> = (0..2).map(|_| random_matrix(&f7, 2, &mut rng)).collect();
            assert_eq!(specialize(&sym, &mats).unwrap(), eval_fp(&mapped, &mats));
        }
        // missing generator assignment is reported by variable name
        let short = specialize(&sym, &mats_one(&f7));
        assert!(matches!(short, Err(Error::UnassignedVariable(_))));
        // zero polynomial gives the zero matrix
        let z = pi_map(&FreePoly::zero(f7, 2), 2);
        assert!(z.is_zero());
        assert!(specialize(&z, &mats_one(&f7)).unwrap().is_zero());
    }

    fn mats_one(f7: &Fp64) -> Vec<ConcreteMatrix<Fp64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        vec![random_matrix(f7, 2, &mut rng)]
    }

    #[test]
    fn pi_test_verdicts() {
        let comm = commutator(&x(), &y());
        let r = pi_test(&comm, 2, 20, 1, 101).unwrap();
        assert_eq!(r.verdict, PiVerdict::NonIdentity);
        // witness re-evaluates to a nonzero matrix
        let w = r.witness.unwrap();
        assert!(!eval_mod(&comm, &w).unwrap().is_zero());

        let r1 = pi_test(&comm, 1, 20, 1, 101).unwrap();
        assert_eq!(r1.verdict, PiVerdict::Identity);

        let s4 = standard_polynomial(Rationals, 4);
        let r4 = pi_test(&s4, 2, 25, 7, 101).unwrap();
        assert_eq!(r4.verdict, PiVerdict::Identity);
        assert_eq!(r4.degree, 4);

        assert!(matches!(pi_test(&comm, 2, 0, 1, 101), Err(Error::NoSamples)));
        assert!(matches!(pi_test(&comm, 2, 5, 1, 100), Err(Error::BadModulus(100))));
    }

    #[test]
    fn charpoly_generic_two_by_two() {
        let g = &generic_generators(Rationals, 2, 1)[0];
        let c = charpoly(g);
        let v = |i, j| CommPoly::var(Rationals, VarId::new(0, i, j));
        assert_eq!(c.coeff(2), CommPoly::one(Rationals));
        assert_eq!(c.coeff(1), v(0, 0).add(&v(1, 1)).neg());
        assert_eq!(c.coeff(0), v(0, 0).mul(&v(1, 1)).sub(&v(0, 1).mul(&v(1, 0))));
    }

    #[test]
    fn charpoly_identity_cubed() {
        let id: ConcreteMatrix<Rationals> = Matrix::identity(Rationals, 3);
        // (t-1)^3 = t^3 - 3t^2 + 3t - 1
        let c = charpoly(&id);
        let expect: Vec<i64> = vec![-1, 3, -3, 1];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(c.coeff(i), Rationals.from_i64(*e));
        }
    }

    #[test]
    fn minpoly_small_cases() {
        let f7 = fp(7);
        // prime-field elements print as canonical residues, so -1 is 6
        let id: ConcreteMatrix<Fp64> = Matrix::identity(f7, 3);
        assert_eq!(minpoly(&id).text("t"), "t + 6");

        let mut jordan = Matrix::zero(f7, 3);
        jordan.set(0, 1, 1);
        jordan.set(1, 2, 1);
        assert_eq!(minpoly(&jordan).text("t"), "t^3");

        let diag = Matrix::from_rows(f7, vec![vec![1, 0], vec![0, 2]]);
        // (t-1)(t-2) = t^2 - 3t + 2
        let m = minpoly(&diag);
        assert_eq!(m.coeffs(), &[2u64, 4, 1][..]);
        // divides the characteristic polynomial; here equals it
        assert!(charpoly(&diag).rem(&m).is_zero());
    }

    #[test]
    fn irreducibility_small_cases() {
        let f3 = fp(3);
        let t2p1 = UniPoly::from_coeffs(f3, vec![1, 0, 1]);
        assert!(irreducible_fq(&t2p1));
        let t2m1 = UniPoly::from_coeffs(f3, vec![2, 0, 1]);
        assert!(!irreducible_fq(&t2m1));
        let f2 = fp(2);
        let t2pt1 = UniPoly::from_coeffs(f2, vec![1, 1, 1]);
        assert!(irreducible_fq(&t2pt1));
        // linear polynomials are irreducible, constants are not
        assert!(irreducible_fq(&UniPoly::from_coeffs(f3, vec![2, 1])));
        assert!(!irreducible_fq(&UniPoly::one(f3)));
    }

    #[test]
    fn spectral_probe_finds_irreducible_and_rejects_bad_inputs() {
        let r = spectral_probe(&x(), 2, 40, 11, 65537).unwrap();
        assert!(r.irreducible_found);
        let c = r.witness_charpoly.clone().unwrap();
        assert!(irreducible_fq(&c));
        // witness matrices reproduce the recorded characteristic polynomial
        let image = eval_mod(&x(), r.witness.as_ref().unwrap()).unwrap();
        assert_eq!(charpoly(&image), c);
        assert!(r.squarefree_count * 10 >= r.trials * 9);

        let one = FreePoly::one(Rationals, 2);
        assert!(matches!(
            spectral_probe(&one, 2, 10, 0, 65537),
            Err(Error::ScalarOperand(_))
        ));
        assert!(matches!(
            spectral_probe(&x(), 4, 10, 0, 65537),
            Err(Error::OrderNotPrime(4))
        ));
    }

    #[test]
    fn traces_and_ut_reduction() {
        let f7 = fp(7);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mats: Vec<_> = (0..2).map(|_| random_matrix(&f7, 3, &mut rng)).collect();
        // empty word traces the identity
        assert_eq!(word_trace(&Word::empty(), &mats), 3);
        let xy = Word::parse_letters("ab").unwrap();
        let yx = Word::parse_letters("ba").unwrap();
        assert_eq!(word_trace(&xy, &mats), word_trace(&yx, &mats));

        // constant-free evaluations at strict upper triangulars are traceless
        let f = &(&x() * &y()) + &x();
        let img = ut_eval(&f, 4, 21, 101).unwrap();
        assert_eq!(img.trace(), 0);
        // any homogeneous piece of degree ≥ n vanishes
        let deep = ut_eval(&x().pow(4), 4, 21, 101).unwrap();
        assert!(deep.is_zero());
        // symbolic image of xy at order 3 is nonzero, so the reduction
        // retains low-degree information
        assert!(!ut_map(&(&x() * &y()), 3).is_zero());
    }
}
