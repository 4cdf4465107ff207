//! Centralizers in the free algebra: the exact graded solver for
//! C(f) = {g : fg = gf} up to a degree bound, recognition of the
//! single-generator form C = k[h], noncommutative k-th roots, and the
//! integral-closure probe built on them.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freepoly::{commutator, FreePoly};
use crate::linalg;
use crate::unipoly::UniPoly;
use crate::word::Word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// All words over `s` letters of length exactly `len`, in lex order.
pub(crate) fn words_of_length(s: usize, len: usize) -> Vec<Word> {
    let mut level: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(level.len() * s);
        for w in &level {
            for g in 0..s as u8 {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        level = next;
    }
    level.into_iter().map(Word::from_letters).collect()
}

/// Basis of the centralizer intersected with the degree-≤ D filtration,
/// grouped by element degree. Every member commutes with `f` exactly (the
/// solver never truncates a commutator), is monic in its deglex-leading
/// word, and leading words are pairwise distinct.
#[derive(Clone, Debug)]
pub struct GradedBasis<K: Field> {
    pub f: FreePoly<K>,
    pub d: usize,
    pub per_degree: Vec<Vec<FreePoly<K>>>,
}

impl<K: Field> GradedBasis<K> {
    pub fn elements(&self) -> impl Iterator<Item = &FreePoly<K>> {
        self.per_degree.iter().flatten()
    }

    /// Number of basis members of each degree 0..=D.
    pub fn dims(&self) -> Vec<usize> {
        self.per_degree.iter().map(|v| v.len()).collect()
    }
}

/// Exact basis of {g : deg g ≤ D, [f, g] = 0}, found by feeding the
/// commutator columns [f, w] into an incremental echelon in deglex word
/// order. A column that reduces to zero exhibits a nullspace combination
/// whose leading word is the current word, so members arrive monic with
/// distinct leading words and grouped by degree for free.
pub fn centralizer_basis<K: Field>(f: &FreePoly<K>, d: usize) -> Result<GradedBasis<K>> {
    if f.is_constant() {
        return Err(Error::ScalarOperand("centralizer input"));
    }
    if d < 1 {
        return Err(Error::DegreeBound);
    }
    let field = f.field().clone();
    let deg_f = f.degree().finite().expect("nonscalar f has finite degree");
    if let Some(p) = field.characteristic() {
        // small characteristic can introduce commutation artifacts such
        // as [f, g^p] collapsing; keep p clear of every degree in play
        if (p as u128) <= (d + deg_f) as u128 {
            return Err(Error::CharacteristicTooSmall {
                p,
                required: d + deg_f,
            });
        }
    }
    let s = f.alphabet();
    let mut pivots: BTreeMap<Word, (FreePoly<K>, FreePoly<K>)> = BTreeMap::new();
    let mut per_degree: Vec<Vec<FreePoly<K>>> = vec![Vec::new(); d + 1];
    for len in 0..=d {
        for w in words_of_length(s, len) {
            let wpoly = FreePoly::monomial(field.clone(), s, w.clone(), field.one());
            let mut col = commutator(f, &wpoly);
            let mut combo = wpoly;
            loop {
                let Some((lw, lc)) = col.leading().map(|(w, c)| (w.clone(), c.clone())) else {
                    per_degree[len].push(combo);
                    break;
                };
                match pivots.get(&lw) {
                    Some((pcol, pcombo)) => {
                        col = &col - &pcol.scale(&lc);
                        combo = &combo - &pcombo.scale(&lc);
                    }
                    None => {
                        let inv = field.inv(&lc).expect("leading coefficient is nonzero");
                        pivots.insert(lw, (col.scale(&inv), combo.scale(&inv)));
                        break;
                    }
                }
            }
        }
    }
    Ok(GradedBasis {
        f: f.clone(),
        d,
        per_degree,
    })
}

pub fn is_in_centralizer<K: Field>(g: &FreePoly<K>, f: &FreePoly<K>) -> bool {
    commutator(f, g).is_zero()
}

/// Remainder of `g` after eliminating leading words against the basis
/// members (each monic with a distinct leading word). Zero remainder
/// means `g` lies in their span.
pub fn span_reduce<K: Field>(basis: &[&FreePoly<K>], g: &FreePoly<K>) -> FreePoly<K> {
    let table: BTreeMap<&Word, &FreePoly<K>> = basis
        .iter()
        .map(|b| (b.leading().expect("basis member is nonzero").0, *b))
        .collect();
    let mut r = g.clone();
    while let Some((lw, lc)) = r.leading().map(|(w, c)| (w.clone(), c.clone())) {
        match table.get(&lw) {
            Some(b) => r = &r - &b.scale(&lc),
            None => break,
        }
    }
    r
}

pub fn in_span<K: Field>(basis: &[&FreePoly<K>], g: &FreePoly<K>) -> bool {
    span_reduce(basis, g).is_zero()
}

/// One certified basis member: `element` equals `q` evaluated at the
/// recognized generator.
#[derive(Clone, Debug)]
pub struct Certificate<K: Field> {
    pub element: FreePoly<K>,
    pub q: UniPoly<K>,
}

#[derive(Clone, Debug)]
pub struct CentralizerReport<K: Field> {
    pub basis: GradedBasis<K>,
    /// Minimal-degree nonscalar member, normalized monic with zero
    /// constant term; ties broken by deglex-smallest leading word.
    pub h: Option<FreePoly<K>>,
    pub certificates: Vec<Certificate<K>>,
    pub commutative: bool,
    pub recognized: bool,
    /// Largest multiple of deg h not exceeding D; power completeness is
    /// only claimed up to here.
    pub boundary_degree: usize,
    pub counterexample: Option<FreePoly<K>>,
    pub diagnostic: Option<String>,
}

/// Try to exhibit the computed basis as k[h] ∩ (deg ≤ D): pick h, then
/// reduce every member against the powers of h by leading-word
/// elimination. Leading words of powers are powers of the leading word,
/// so a member whose leading word is not such a power can never reduce;
/// that member is returned as the counterexample.
pub fn recognize_generator<K: Field>(basis: GradedBasis<K>) -> CentralizerReport<K> {
    let field = basis.f.field().clone();
    let members: Vec<&FreePoly<K>> = basis.elements().collect();
    let mut commutative = true;
    'pairs: for i in 0..members.len() {
        for j in i + 1..members.len() {
            if !commutator(members[i], members[j]).is_zero() {
                commutative = false;
                break 'pairs;
            }
        }
    }
    let Some(h0) = basis.per_degree[1..].iter().flatten().next() else {
        return CentralizerReport {
            basis,
            h: None,
            certificates: Vec::new(),
            commutative,
            recognized: false,
            boundary_degree: 0,
            counterexample: None,
            diagnostic: Some("insufficient degree: no nonscalar member".into()),
        };
    };
    let constant = FreePoly::constant(field.clone(), h0.alphabet(), h0.constant_term());
    let h = h0 - &constant;
    let deg_h = h.degree().finite().expect("h is nonscalar");
    let lw_h = h.leading().expect("h is nonzero").0.clone();
    let max_pow = basis.d / deg_h;
    let mut hpows = Vec::with_capacity(max_pow + 1);
    hpows.push(FreePoly::one(field.clone(), h.alphabet()));
    for m in 1..=max_pow {
        let next = &hpows[m - 1] * &h;
        hpows.push(next);
    }
    let mut certificates = Vec::new();
    let snapshot: Vec<FreePoly<K>> = basis.elements().cloned().collect();
    for g in snapshot {
        let mut r = g.clone();
        let mut q = UniPoly::zero(field.clone());
        let ok = loop {
            let Some((lw, lc)) = r.leading().map(|(w, c)| (w.clone(), c.clone())) else {
                break true;
            };
            let len = lw.len();
            if len % deg_h != 0 || len / deg_h > max_pow || !lw.is_power_of(&lw_h, len / deg_h) {
                break false;
            }
            let m = len / deg_h;
            r = &r - &hpows[m].scale(&lc);
            q.add_assign_coeff(m, &lc);
        };
        if ok {
            certificates.push(Certificate {
                element: g.clone(),
                q,
            });
        } else {
            let counterexample = Some(g.clone());
            return CentralizerReport {
                basis,
                h: Some(h),
                certificates,
                commutative,
                recognized: false,
                boundary_degree: max_pow * deg_h,
                counterexample,
                diagnostic: Some("member does not reduce against powers of h".into()),
            };
        }
    }
    CentralizerReport {
        basis,
        h: Some(h),
        certificates,
        commutative,
        recognized: true,
        boundary_degree: max_pow * deg_h,
        counterexample: None,
        diagnostic: None,
    }
}

/// Noncommutative k-th root: the unique g with g^k = h whose leading
/// coefficient is the canonical field root, or `None` when no root
/// exists. Found degree by degree: the top homogeneous slice comes from
/// the word k-th root of the leading word, each lower slice from an
/// exact linear system, and a final full verification closes the
/// degrees the slices do not constrain. The zero polynomial has root 0.
pub fn nc_root<K: Field>(h: &FreePoly<K>, k: u32) -> Result<Option<FreePoly<K>>> {
    if k < 2 {
        return Err(Error::RootExponent(k));
    }
    let field = h.field().clone();
    let s = h.alphabet();
    if h.is_constant() {
        return Ok(field
            .kth_root(&h.constant_term(), k)
            .map(|c| FreePoly::constant(field.clone(), s, c)));
    }
    let total = h.degree().finite().expect("nonconstant h");
    if !total.is_multiple_of(k as usize) {
        return Ok(None);
    }
    let m = total / k as usize;
    let (lw, lc) = {
        let (w, c) = h.leading().expect("nonzero h");
        (w.clone(), c.clone())
    };
    let u0 = lw.prefix(m);
    if !lw.is_power_of(&u0, k as usize) {
        return Ok(None);
    }
    let Some(c0) = field.kth_root(&lc, k) else {
        return Ok(None);
    };

    // Top slice: in g_top^k every degree-km word factors uniquely into k
    // blocks of length m, so the coefficient at u0^(k-1)·u is exactly
    // c0^(k-1)·(coefficient of u in g_top). That pins down every possible
    // support word of g_top; the power check below rejects impostors.
    let htop = h.homogeneous_part(total);
    let prefix = u0.pow(k as usize - 1);
    let mut c0k1 = field.one();
    for _ in 0..k - 1 {
        c0k1 = field.mul(&c0k1, &c0);
    }
    let mut gtop = FreePoly::zero(field.clone(), s);
    for (w, c) in htop.terms() {
        if w.prefix(prefix.len()) == prefix {
            let u = w.suffix(prefix.len());
            let coeff = field.div(c, &c0k1).expect("c0 is nonzero");
            gtop.add_term(u, coeff);
        }
    }
    if gtop.pow(k) != htop {
        return Ok(None);
    }

    // Lower slices j = m-1 .. 0. At degree (k-1)m + j the unknown piece
    // g_j enters linearly through L(x) = Σ_i g_top^i x g_top^(k-1-i);
    // pieces below j cannot reach this degree, pieces above j are known.
    let mut gpows = Vec::with_capacity(k as usize);
    gpows.push(FreePoly::one(field.clone(), s));
    for i in 1..k as usize {
        let next = &gpows[i - 1] * &gtop;
        gpows.push(next);
    }
    let mut g = gtop;
    for j in (0..m).rev() {
        let unknowns = words_of_length(s, j);
        if unknowns.len() > 1 << 16 {
            return Err(Error::DegreeBound);
        }
        let target_deg = (k as usize - 1) * m + j;
        let partial_pow = g.pow(k);
        let rhs = &h.homogeneous_part(target_deg) - &partial_pow.homogeneous_part(target_deg);
        let mut row_ix: BTreeMap<Word, usize> = BTreeMap::new();
        let mut entries: Vec<(usize, usize, K::Elem)> = Vec::new();
        for (ux, u) in unknowns.iter().enumerate() {
            let upoly = FreePoly::monomial(field.clone(), s, u.clone(), field.one());
            for i in 0..k as usize {
                let term = &(&gpows[i] * &upoly) * &gpows[k as usize - 1 - i];
                for (w, c) in term.terms() {
                    let next = row_ix.len();
                    let r = *row_ix.entry(w.clone()).or_insert(next);
                    entries.push((r, ux, c.clone()));
                }
            }
        }
        for (w, _) in rhs.terms() {
            let next = row_ix.len();
            row_ix.entry(w.clone()).or_insert(next);
        }
        let nrows = row_ix.len();
        let mut a = vec![vec![field.zero(); unknowns.len()]; nrows];
        for (r, c, v) in entries {
            a[r][c] = field.add(&a[r][c], &v);
        }
        let mut b = vec![field.zero(); nrows];
        for (w, c) in rhs.terms() {
            b[row_ix[w]] = c.clone();
        }
        let Some(x) = linalg::solve(&field, &a, &b) else {
            return Ok(None);
        };
        let gj = FreePoly::from_terms(
            field.clone(),
            s,
            unknowns.into_iter().zip(x),
        );
        g = &g + &gj;
    }
    if g.pow(k) == *h {
        Ok(Some(g))
    } else {
        Ok(None)
    }
}

/// Outcome counts of the integral-closure probe. Positive trials build
/// g = q(h) from random univariate q, confirm g^k commutes with f,
/// extract the k-th root back, and check the root still commutes; the
/// negative trials spoil g with a non-commuting letter and expect the
/// membership test to reject the power.
#[derive(Clone, Debug)]
pub struct ClosureReport<K: Field> {
    pub h: FreePoly<K>,
    pub trials: u64,
    pub membership_ok: u64,
    pub roots_found: u64,
    pub roots_in_centralizer: u64,
    pub round_trips_ok: u64,
    pub negative_trials: u64,
    pub negatives_rejected: u64,
    pub seed: u64,
}

pub fn integral_closure_probe<K: Field>(
    f: &FreePoly<K>,
    d: usize,
    trials: u64,
    seed: u64,
) -> Result<ClosureReport<K>> {
    let field = f.field().clone();
    let deg_f = match f.degree().finite() {
        Some(df) if df >= 1 => df,
        _ => return Err(Error::ScalarOperand("closure probe input")),
    };
    let report = recognize_generator(centralizer_basis(f, deg_f)?);
    let h = match report.h {
        Some(h) => h,
        // f itself always commutes with f, so it serves as a fallback h
        None => {
            let c = FreePoly::constant(field.clone(), f.alphabet(), f.constant_term());
            (f - &c).monic()
        }
    };
    let deg_h = h.degree().finite().expect("h is nonscalar");
    let ks: Vec<u32> = [2u32, 3].into_iter().filter(|&k| k as usize * deg_h <= d).collect();
    if ks.is_empty() {
        return Err(Error::DegreeBound);
    }
    // a letter outside the centralizer drives the negative controls
    let spoiler = (0..f.alphabet() as u8)
        .map(|i| FreePoly::gen(field.clone(), f.alphabet(), i))
        .find(|z| !is_in_centralizer(z, f));
    let mut out = ClosureReport {
        h: h.clone(),
        trials,
        membership_ok: 0,
        roots_found: 0,
        roots_in_centralizer: 0,
        round_trips_ok: 0,
        negative_trials: 0,
        negatives_rejected: 0,
        seed,
    };
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
        let k = ks[rng.gen_range(0..ks.len())];
        let max_dq = d / (k as usize * deg_h);
        let dq = rng.gen_range(1..=max_dq);
        let mut coeffs: Vec<K::Elem> = (0..=dq).map(|_| field.sample_elem(&mut rng)).collect();
        while field.is_zero(&coeffs[dq]) {
            coeffs[dq] = field.sample_elem(&mut rng);
        }
        let q = UniPoly::from_coeffs(field.clone(), coeffs);
        let g = q.eval_poly(&h);
        let gk = g.pow(k);
        if is_in_centralizer(&gk, f) {
            out.membership_ok += 1;
        }
        if let Some(r) = nc_root(&gk, k)? {
            out.roots_found += 1;
            if is_in_centralizer(&r, f) {
                out.roots_in_centralizer += 1;
            }
            if r.pow(k) == gk {
                out.round_trips_ok += 1;
            }
        }
        if let Some(z) = &spoiler {
            out.negative_trials += 1;
            let bad = (&g + z).pow(k);
            if !is_in_centralizer(&bad, f) {
                out.negatives_rejected += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp64, Rationals, Ring as _};

    fn x() -> FreePoly<Rationals> {
        FreePoly::gen(Rationals, 2, 0)
    }

    fn y() -> FreePoly<Rationals> {
        FreePoly::gen(Rationals, 2, 1)
    }

    #[test]
    fn solver_rejects_bad_inputs() {
        let one = FreePoly::one(Rationals, 2);
        assert!(matches!(
            centralizer_basis(&one, 4),
            Err(Error::ScalarOperand(_))
        ));
        assert!(matches!(centralizer_basis(&x(), 0), Err(Error::DegreeBound)));
        let f5 = Fp64::new(5).unwrap();
        let fx = FreePoly::gen(f5, 2, 0).pow(2);
        assert!(matches!(
            centralizer_basis(&fx, 4),
            Err(Error::CharacteristicTooSmall { p: 5, .. })
        ));
    }

    #[test]
    fn centralizer_of_x_squared_is_polynomials_in_x() {
        let basis = centralizer_basis(&x().pow(2), 4).unwrap();
        assert_eq!(basis.dims(), vec![1, 1, 1, 1, 1]);
        let texts: Vec<String> = basis.elements().map(|g| g.canonical_text()).collect();
        assert_eq!(texts, vec!["1", "z0", "z0^2", "z0^3", "z0^4"]);
        for g in basis.elements() {
            assert!(is_in_centralizer(g, &x().pow(2)));
        }
    }

    #[test]
    fn centralizer_of_x_plus_y_is_polynomials_in_the_sum() {
        let f = &x() + &y();
        let basis = centralizer_basis(&f, 3).unwrap();
        assert_eq!(basis.dims(), vec![1, 1, 1, 1]);
        let report = recognize_generator(basis);
        assert!(report.recognized);
        assert!(report.commutative);
        assert_eq!(report.h.as_ref().unwrap(), &f);
        assert_eq!(report.boundary_degree, 3);
        // certificates: every member is q(h) on the nose
        for c in &report.certificates {
            assert_eq!(c.q.eval_poly(report.h.as_ref().unwrap()), c.element);
        }
    }

    #[test]
    fn recognition_of_x_squared_gives_x() {
        let report = recognize_generator(centralizer_basis(&x().pow(2), 6).unwrap());
        assert!(report.recognized);
        let h = report.h.clone().unwrap();
        assert_eq!(h, x());
        assert_eq!(report.boundary_degree, 6);
        for (m, c) in report.certificates.iter().enumerate() {
            // basis is 1, x, ..., x^6: the m-th certificate is t^m
            assert_eq!(c.q.coeffs().len(), m + 1);
            assert_eq!(c.q.coeff(m), Rationals.one());
        }
        // power completeness inside the boundary
        let members: Vec<&FreePoly<Rationals>> = report.basis.elements().collect();
        for m in 0..=6u32 {
            assert!(in_span(&members, &h.pow(m)));
        }
    }

    #[test]
    fn insufficient_degree_is_flagged_not_failed() {
        let f = &(&x() * &y()) * &x(); // degree 3
        let report = recognize_generator(centralizer_basis(&f, 2).unwrap());
        assert!(!report.recognized);
        assert!(report.h.is_none());
        assert!(report.counterexample.is_none());
        assert!(report.diagnostic.as_deref().unwrap_or("").contains("insufficient"));
    }

    #[test]
    fn foreign_member_is_reported_as_counterexample() {
        // hand-built bundle whose degree-1 slot smuggles in y alongside x;
        // y is not a polynomial in h = x, so recognition must fail loudly
        let basis = GradedBasis {
            f: x().pow(2),
            d: 1,
            per_degree: vec![vec![FreePoly::one(Rationals, 2)], vec![x(), y()]],
        };
        let report = recognize_generator(basis);
        assert!(!report.recognized);
        assert_eq!(report.counterexample.unwrap(), y());
    }

    #[test]
    fn roots_of_exact_powers() {
        let cube = (&x() + &y()).pow(3);
        assert_eq!(nc_root(&cube, 3).unwrap().unwrap(), &x() + &y());

        let xy = &x() * &y();
        assert_eq!(nc_root(&xy.pow(2), 2).unwrap().unwrap(), xy);

        // mixed-degree base exercises the lower-slice solver
        let base = &(&x() + &(&y() * &x())) + &FreePoly::constant(Rationals, 2, Rationals.from_i64(3));
        let sq = base.pow(2);
        assert_eq!(nc_root(&sq, 2).unwrap().unwrap(), base);

        // negative leading coefficient keeps the sign through an odd root
        let neg = base.scale(&Rationals.from_i64(-1));
        assert_eq!(nc_root(&neg.pow(3), 3).unwrap().unwrap(), neg);
    }

    #[test]
    fn rootless_inputs_return_none() {
        let p = &x().pow(2) + &y().pow(2);
        assert!(nc_root(&p, 2).unwrap().is_none());
        // degree not divisible by k
        assert!(nc_root(&x().pow(3), 2).unwrap().is_none());
        // leading word is not a k-th power of any word
        let q = (&x() * &y()).pow(2);
        assert!(nc_root(&(&q + &x()), 4).unwrap().is_none());
        // scalar with no rational root
        let two = FreePoly::constant(Rationals, 2, Rationals.from_i64(2));
        assert!(nc_root(&two, 2).unwrap().is_none());
        assert!(matches!(nc_root(&p, 1), Err(Error::RootExponent(1))));
    }

    #[test]
    fn scalar_roots_are_canonical() {
        let f7 = Fp64::new(7).unwrap();
        let four = FreePoly::constant(f7, 2, 4u64);
        // both 2 and 5 square to 4 mod 7; the least residue wins
        assert_eq!(nc_root(&four, 2).unwrap().unwrap().constant_term(), 2);
        let zero = FreePoly::zero(Rationals, 2);
        assert!(nc_root(&zero, 2).unwrap().unwrap().is_zero());
    }

    #[test]
    fn closure_probe_counts_line_up() {
        let report = integral_closure_probe(&x().pow(2), 6, 8, 42).unwrap();
        assert_eq!(report.h, x());
        assert_eq!(report.membership_ok, 8);
        assert_eq!(report.roots_found, 8);
        assert_eq!(report.roots_in_centralizer, 8);
        assert_eq!(report.round_trips_ok, 8);
        assert_eq!(report.negative_trials, 8);
        assert_eq!(report.negatives_rejected, 8);
    }

    #[cfg(test)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = FreePoly<Fp64>> {
            let field = Fp64::new(2147483647).unwrap();
            proptest::collection::vec((proptest::collection::vec(0u8..2, 0..4), 0u64..50), 1..5)
                .prop_map(move |terms| {
                    FreePoly::from_terms(
                        field,
                        2,
                        terms
                            .into_iter()
                            .map(|(ls, c)| (Word::from_letters(ls), field.make(c))),
                    )
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn root_round_trips_on_powers(g in arb_poly(), k in 2u32..=3) {
                let gk = g.pow(k);
                let r = nc_root(&gk, k).unwrap();
                prop_assert!(r.is_some() || gk.is_zero());
                if let Some(r) = r {
                    prop_assert_eq!(r.pow(k), gk);
                }
            }
        }
    }
}
