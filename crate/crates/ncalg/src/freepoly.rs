//! Noncommutative polynomials: finitely supported scalar combinations of
//! words, with multiplication induced by concatenation.

use crate::field::Field;
use crate::word::Word;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Degree of a polynomial; the zero polynomial gets the absorbing value
/// `MinusInfinity` so that degree arithmetic stays total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::MinusInfinity,
        }
    }
}

impl From<usize> for Degree {
    fn from(d: usize) -> Degree {
        Degree::Finite(d)
    }
}

/// An element of the free associative algebra on `alphabet` generators over
/// the field `K`.
///
/// Terms are kept in a deglex-ordered map with no zero coefficients, so the
/// leading term is the last entry and iteration runs in deglex order.
#[derive(Clone, PartialEq, Eq)]
pub struct FreePoly<K: Field> {
    field: K,
    alphabet: usize,
    terms: BTreeMap<Word, K::Elem>,
}

impl<K: Field> FreePoly<K> {
    pub fn zero(field: K, alphabet: usize) -> Self {
        FreePoly {
            field,
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: K, alphabet: usize, c: K::Elem) -> Self {
        let mut p = Self::zero(field, alphabet);
        p.add_term(Word::empty(), c);
        p
    }

    pub fn one(field: K, alphabet: usize) -> Self {
        let c = field.one();
        Self::constant(field, alphabet, c)
    }

    /// The generator z_i as a polynomial.
    pub fn gen(field: K, alphabet: usize, i: u8) -> Self {
        assert!((i as usize) < alphabet, "generator index out of range");
        let mut p = Self::zero(field, alphabet);
        let c = p.field.one();
        p.add_term(Word::gen(i), c);
        p
    }

    pub fn monomial(field: K, alphabet: usize, w: Word, c: K::Elem) -> Self {
        assert!(
            w.max_letter().map_or(0, |m| m as usize + 1) <= alphabet,
            "word uses a generator outside the alphabet"
        );
        let mut p = Self::zero(field, alphabet);
        p.add_term(w, c);
        p
    }

    pub fn from_terms(
        field: K,
        alphabet: usize,
        terms: impl IntoIterator<Item = (Word, K::Elem)>,
    ) -> Self {
        let mut p = Self::zero(field, alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in deglex-ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &K::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> K::Elem {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.terms.last_key_value() {
            None => Degree::MinusInfinity,
            Some((w, _)) => Degree::Finite(w.len()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.degree() <= Degree::Finite(0)
    }

    pub fn constant_term(&self) -> K::Elem {
        self.coeff(&Word::empty())
    }

    /// Deglex-largest term.
    pub fn leading(&self) -> Option<(&Word, &K::Elem)> {
        self.terms.last_key_value()
    }

    /// Accumulate `c` on the word `w`, dropping the entry when it cancels.
    pub fn add_term(&mut self, w: Word, c: K::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.field == other.field && self.alphabet == other.alphabet,
            "operands live in different algebras"
        );
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.alphabet);
        if self.field.is_zero(c) {
            return out;
        }
        for (w, a) in &self.terms {
            out.add_term(w.clone(), self.field.mul(a, c));
        }
        out
    }

    /// Divide by the leading coefficient; identity on the zero polynomial.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient invertible");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field.clone(), self.alphabet);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The homogeneous slice of degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.field.clone(), self.alphabet);
        for (w, c) in &self.terms {
            if w.len() == d {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// Ring homomorphism sending generator z_i to `images[i]`. All images
    /// must live in one algebra, which becomes the target.
    pub fn substitute(&self, images: &[FreePoly<K>]) -> FreePoly<K> {
        assert_eq!(images.len(), self.alphabet, "one image per generator");
        if self.alphabet == 0 {
            return self.clone();
        }
        for im in images {
            images[0].assert_compatible(im);
        }
        let target = (images[0].field.clone(), images[0].alphabet);
        let mut out = Self::zero(target.0.clone(), target.1);
        for (w, c) in &self.terms {
            let mut prod = Self::constant(target.0.clone(), target.1, c.clone());
            for &g in w.letters() {
                prod = &prod * &images[g as usize];
            }
            out = &out + &prod;
        }
        out
    }

    /// Reinterpret the coefficients in another field through `f`.
    pub fn map_field<L: Field, E>(
        &self,
        field: L,
        mut f: impl FnMut(&K::Elem) -> std::result::Result<L::Elem, E>,
    ) -> std::result::Result<FreePoly<L>, E> {
        let mut out = FreePoly::zero(field, self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Canonical text: terms in deglex-descending order, words spelled
    /// z0, z1, … with repeated letters collapsed into powers. The result
    /// parses back to the same polynomial.
    pub fn canonical_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = self.field.is_negative(c);
            let mag = if neg { self.field.neg(c) } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&self.field.elem_str(&mag));
            } else {
                if !self.field.is_one(&mag) {
                    out.push_str(&self.field.elem_str(&mag));
                    out.push('*');
                }
                out.push_str(&word_z_spelling(w));
            }
        }
        out
    }
}

/// z-indexed spelling with run compression: aab is "z0^2*z1".
pub fn word_z_spelling(w: &Word) -> String {
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let g = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == g {
            run += 1;
        }
        if run == 1 {
            parts.push(format!("z{g}"));
        } else {
            parts.push(format!("z{g}^{run}"));
        }
        i += run;
    }
    parts.join("*")
}

pub fn commutator<K: Field>(f: &FreePoly<K>, g: &FreePoly<K>) -> FreePoly<K> {
    &(f * g) - &(g * f)
}

/// The standard polynomial S_m = Σ_{σ ∈ Sym(m)} sgn(σ) z_{σ(1)}⋯z_{σ(m)},
/// the classic polynomial identity of m×m-and-below matrix algebras.
pub fn standard_polynomial<K: Field>(field: K, m: usize) -> FreePoly<K> {
    assert!((1..=8).contains(&m), "standard polynomial size out of range");
    let mut out = FreePoly::zero(field.clone(), m);
    let mut perm: Vec<u8> = (0..m as u8).collect();
    // Heap's algorithm; each swap flips the sign
    let mut c = vec![0usize; m];
    let mut sign = true;
    out.add_term(Word::from_letters(perm.clone()), field.one());
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = !sign;
            let coeff = if sign { field.one() } else { field.neg(&field.one()) };
            out.add_term(Word::from_letters(perm.clone()), coeff);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

impl<K: Field> fmt::Debug for FreePoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreePoly({})", self.canonical_text())
    }
}

impl<K: Field> fmt::Display for FreePoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl<K: Field> Add for &FreePoly<K> {
    type Output = FreePoly<K>;
    fn add(self, rhs: Self) -> FreePoly<K> {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<K: Field> Sub for &FreePoly<K> {
    type Output = FreePoly<K>;
    fn sub(self, rhs: Self) -> FreePoly<K> {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), self.field.neg(c));
        }
        out
    }
}

impl<K: Field> Neg for &FreePoly<K> {
    type Output = FreePoly<K>;
    fn neg(self) -> FreePoly<K> {
        let mut out = FreePoly::zero(self.field.clone(), self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), self.field.neg(c));
        }
        out
    }
}

impl<K: Field> Mul for &FreePoly<K> {
    type Output = FreePoly<K>;
    fn mul(self, rhs: Self) -> FreePoly<K> {
        self.assert_compatible(rhs);
        let mut out = FreePoly::zero(self.field.clone(), self.alphabet);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), self.field.mul(ca, cb));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp64, Rationals, Ring};

    type Q = FreePoly<Rationals>;

    fn x() -> Q {
        Q::gen(Rationals, 2, 0)
    }
    fn y() -> Q {
        Q::gen(Rationals, 2, 1)
    }
    fn qw(s: &str) -> Word {
        Word::parse_letters(s).unwrap()
    }

    #[test]
    fn product_expansion() {
        // (x + y)(x - y) = xx - xy + yx - yy
        let p = &(&x() + &y()) * &(&x() - &y());
        let one = Rationals.one();
        let m1 = Rationals.from_i64(-1);
        assert_eq!(p.coeff(&qw("aa")), one);
        assert_eq!(p.coeff(&qw("ab")), m1);
        assert_eq!(p.coeff(&qw("ba")), one);
        assert_eq!(p.coeff(&qw("bb")), m1);
        assert_eq!(p.num_terms(), 4);
    }

    #[test]
    fn commutator_of_gen_and_product() {
        // [x, xy] = xxy - xyx
        let c = commutator(&x(), &(&x() * &y()));
        assert_eq!(c.coeff(&qw("aab")), Rationals.one());
        assert_eq!(c.coeff(&qw("aba")), Rationals.from_i64(-1));
        assert_eq!(c.num_terms(), 2);
    }

    #[test]
    fn substitution_is_evaluation() {
        // x^2 with x -> x + y gives (x+y)^2
        let f = x().pow(2);
        let f1 = FreePoly::gen(Rationals, 1, 0).pow(2);
        let sub = f1.substitute(&[&x() + &y()]);
        assert_eq!(sub, f.substitute(&[&x() + &y(), y()]));
        assert_eq!(sub.num_terms(), 4);
        assert_eq!(sub.coeff(&qw("ab")), Rationals.one());
    }

    #[test]
    fn standard_polynomial_small_cases() {
        // S_2 is the commutator of the two generators
        let s2 = standard_polynomial(Rationals, 2);
        assert_eq!(s2, commutator(&x(), &y()));
        let s3 = standard_polynomial(Rationals, 3);
        assert_eq!(s3.num_terms(), 6);
        let s4 = standard_polynomial(Rationals, 4);
        assert_eq!(s4.num_terms(), 24);
        // alternating: swapping two arguments flips the sign, so any
        // substitution with a repeated generator vanishes
        let repeated = s3.substitute(&[x(), x(), y()]);
        assert!(repeated.is_zero());
        assert_eq!(s4.coeff(&qw("abcd")), Rationals.one());
        assert_eq!(s4.coeff(&qw("bacd")), Rationals.from_i64(-1));
    }

    #[test]
    fn degree_sentinel() {
        let z = Q::zero(Rationals, 2);
        assert_eq!(z.degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        assert_eq!(
            Degree::MinusInfinity + Degree::Finite(3),
            Degree::MinusInfinity
        );
        assert_eq!(Degree::Finite(2) + Degree::Finite(3), Degree::Finite(5));
        assert_eq!((&x() * &y()).degree(), Degree::Finite(2));
    }

    #[test]
    fn leading_term_is_deglex_max() {
        let p = &x().pow(2) + &y().pow(2);
        assert_eq!(p.leading().unwrap().0, &qw("bb"));
    }

    #[test]
    fn homogeneous_slices() {
        let p = &(&x() + &y()).pow(2) + &x();
        assert_eq!(p.homogeneous_part(2), (&x() + &y()).pow(2));
        assert_eq!(p.homogeneous_part(1), x());
        assert!(p.homogeneous_part(5).is_zero());
    }

    #[test]
    fn canonical_text_frozen() {
        let two = Rationals.from_i64(2);
        let p = &(&x().pow(2).scale(&two) - &(&x() * &y()).scale(&Rationals.from_i64(3)))
            + &Q::one(Rationals, 2);
        // deglex descending: z0*z1 beats z0^2 at equal length
        assert_eq!(p.canonical_text(), "-3*z0*z1 + 2*z0^2 + 1");
        assert_eq!(Q::zero(Rationals, 2).canonical_text(), "0");
        assert_eq!((&x() - &Q::one(Rationals, 2)).canonical_text(), "z0 - 1");
        assert_eq!((-&x()).canonical_text(), "-z0");
        let m = Q::monomial(Rationals, 2, qw("aab"), Rationals.one());
        assert_eq!(m.canonical_text(), "z0^2*z1");
    }

    #[test]
    fn modular_coefficients_collapse() {
        let f2 = Fp64::new(2).unwrap();
        let a = FreePoly::gen(f2, 1, 0);
        assert!((&a + &a).is_zero());
    }

    #[cfg(test)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = FreePoly<Fp64>> {
            let f = Fp64::new(7).unwrap();
            proptest::collection::vec(
                (proptest::collection::vec(0u8..2, 0..4), 0u64..7),
                0..5,
            )
            .prop_map(move |terms| {
                FreePoly::from_terms(
                    f,
                    2,
                    terms
                        .into_iter()
                        .map(|(ls, c)| (Word::from_letters(ls), c)),
                )
            })
        }

        proptest! {
            #[test]
            fn mul_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            }

            #[test]
            fn mul_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            }

            #[test]
            fn no_zero_divisors(a in arb_poly(), b in arb_poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                prop_assert!(!(&a * &b).is_zero());
            }

            #[test]
            fn leading_word_multiplicative(a in arb_poly(), b in arb_poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                let lw = a.leading().unwrap().0.concat(b.leading().unwrap().0);
                let prod = &a * &b;
                prop_assert_eq!(prod.leading().unwrap().0, &lw);
            }

            #[test]
            fn substitution_multiplicative(a in arb_poly(), b in arb_poly()) {
                let f = Fp64::new(7).unwrap();
                let im = [
                    &FreePoly::gen(f, 2, 0) + &FreePoly::gen(f, 2, 1),
                    FreePoly::gen(f, 2, 1).pow(2),
                ];
                let lhs = (&a * &b).substitute(&im);
                let rhs = &a.substitute(&im) * &b.substitute(&im);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
