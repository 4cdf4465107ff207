//! Dense univariate polynomials over an arbitrary coefficient ring.

use crate::field::{Field, Ring};
use crate::freepoly::{Degree, FreePoly};
use std::fmt;

/// Univariate polynomial; `coeffs[i]` is the coefficient of `t^i` and the
/// last entry is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> UniPoly<R> {
    pub fn zero(ring: R) -> Self {
        UniPoly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    pub fn one(ring: R) -> Self {
        let c = ring.one();
        Self::constant(ring, c)
    }

    /// `t` itself.
    pub fn var(ring: R) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Self::from_coeffs(ring, vec![z, o])
    }

    pub fn from_coeffs(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.ring.is_one(c))
    }

    pub fn add_assign_coeff(&mut self, i: usize, c: &R::Elem) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, self.ring.zero());
        }
        self.coeffs[i] = self.ring.add(&self.coeffs[i], c);
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "mismatched coefficient rings");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ring.add(&self.coeff(i), &other.coeff(i)));
        }
        Self::from_coeffs(self.ring.clone(), out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let out = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Self::from_coeffs(self.ring.clone(), out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "mismatched coefficient rings");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring.clone());
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(a, b));
            }
        }
        Self::from_coeffs(self.ring.clone(), out)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let out = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Self::from_coeffs(self.ring.clone(), out)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.ring.zero(); k];
        out.extend(self.coeffs.iter().cloned());
        UniPoly {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(self.ring.mul(c, &self.ring.from_i64(i as i64)));
        }
        Self::from_coeffs(self.ring.clone(), out)
    }

    /// Map coefficients into another ring.
    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> UniPoly<S> {
        UniPoly::from_coeffs(ring, self.coeffs.iter().map(f).collect())
    }

    /// Text form in the variable `var`, highest power first. Meant for
    /// scalar coefficient rings whose element text has no operators.
    pub fn text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let neg = self.ring.is_negative(c);
            let mag = if neg { self.ring.neg(c) } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let pw = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&self.ring.elem_str(&mag));
            } else {
                if !self.ring.is_one(&mag) {
                    out.push_str(&self.ring.elem_str(&mag));
                    out.push('*');
                }
                out.push_str(&pw);
            }
        }
        out
    }
}

impl<K: Field> UniPoly<K> {
    /// Quotient and remainder; `d` must be nonzero with invertible leading
    /// coefficient.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let lc_inv = self
            .ring
            .inv(d.leading().unwrap())
            .expect("leading coefficient not invertible");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(self.ring.clone()), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.ring.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if self.ring.is_zero(&c) {
                continue;
            }
            let q = self.ring.mul(&c, &lc_inv);
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = self.ring.sub(&rem[k + i], &self.ring.mul(&q, dc));
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (
            Self::from_coeffs(self.ring.clone(), quot),
            Self::from_coeffs(self.ring.clone(), rem),
        )
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.inv(lc).expect("leading coefficient invertible");
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd; zero when both arguments are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m` by binary exponentiation.
    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.ring.clone()).rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation at an element of the free algebra over the same
    /// field.
    pub fn eval_poly(&self, h: &FreePoly<K>) -> FreePoly<K> {
        let mut acc = FreePoly::zero(h.field().clone(), h.alphabet());
        for c in self.coeffs.iter().rev() {
            acc = &acc * h;
            acc.add_term(crate::word::Word::empty(), c.clone());
        }
        acc
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.text("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp64, Rationals};

    fn qp(cs: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_coeffs(
            Rationals,
            cs.iter().map(|&c| Rationals.from_i64(c)).collect(),
        )
    }

    #[test]
    fn arithmetic_and_trim() {
        let p = qp(&[1, 1]); // 1 + t
        assert_eq!(p.mul(&p), qp(&[1, 2, 1]));
        assert_eq!(p.sub(&p), UniPoly::zero(Rationals));
        assert_eq!(p.sub(&p).degree(), Degree::MinusInfinity);
        assert_eq!(qp(&[0, 0, 1]).degree(), Degree::Finite(2));
        assert_eq!(UniPoly::from_coeffs(Rationals, vec![]).coeff(3), Rationals.zero());
    }

    #[test]
    fn division_and_gcd() {
        // t^2 - 1 = (t - 1)(t + 1)
        let (q, r) = qp(&[-1, 0, 1]).divrem(&qp(&[-1, 1]));
        assert_eq!(q, qp(&[1, 1]));
        assert!(r.is_zero());
        // gcd(t^2 - 1, t^2 - 2t + 1) = t - 1
        assert_eq!(qp(&[-1, 0, 1]).gcd(&qp(&[1, -2, 1])), qp(&[-1, 1]));
        let (q2, r2) = qp(&[1, 0, 0, 2]).divrem(&qp(&[0, 1]));
        assert_eq!(q2, qp(&[0, 0, 2]));
        assert_eq!(r2, qp(&[1]));
    }

    #[test]
    fn derivative_and_eval() {
        let p = qp(&[5, 0, 3]); // 5 + 3t^2
        assert_eq!(p.derivative(), qp(&[0, 6]));
        assert_eq!(p.eval(&Rationals.from_i64(2)), Rationals.from_i64(17));
    }

    #[test]
    fn pow_mod_matches_direct() {
        let f = Fp64::new(5).unwrap();
        let t = UniPoly::var(f);
        let m = UniPoly::from_coeffs(f, vec![2, 0, 1]); // t^2 + 2
        let direct = t.pow(13).rem(&m);
        assert_eq!(t.pow_mod(13, &m), direct);
    }

    #[test]
    fn eval_in_free_algebra() {
        use crate::freepoly::FreePoly;
        let h = FreePoly::gen(Rationals, 2, 0); // x
        let q = qp(&[1, 0, 2]); // 1 + 2t^2
        let v = q.eval_poly(&h);
        assert_eq!(v.canonical_text(), "2*z0^2 + 1");
    }

    #[test]
    fn text_form() {
        assert_eq!(qp(&[1, -2, 1]).text("t"), "t^2 - 2*t + 1");
        assert_eq!(qp(&[0, 1]).text("v"), "v");
        assert_eq!(qp(&[]).text("t"), "0");
        assert_eq!(qp(&[-3]).text("t"), "-3");
    }
}
