//! Commutative polynomials in matrix-entry variables x^(ν)_{ij}.
//!
//! These are the entries of generic matrices: the ν-th generic matrix has
//! (i, j) entry equal to the variable with `gen = ν`, `row = i`, `col = j`.
//! Indices are 0-based internally and printed 1-based as `x{ν}_{i}{j}`.

use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub gen: u16,
    pub row: u16,
    pub col: u16,
}

impl VarId {
    pub fn new(gen: usize, row: usize, col: usize) -> VarId {
        VarId {
            gen: gen as u16,
            row: row as u16,
            col: col as u16,
        }
    }

    pub fn name(&self) -> String {
        format!("x{}_{}{}", self.gen + 1, self.row + 1, self.col + 1)
    }
}

/// Product of variable powers, factors sorted by variable and exponents
/// positive. The derived order (lex on the factor list) is only used to
/// key the support map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn text(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.name()
                } else {
                    format!("{}^{}", v.name(), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommPoly<K: Field> {
    field: K,
    support: BTreeMap<Monomial, K::Elem>,
}

impl<K: Field> CommPoly<K> {
    pub fn zero(field: K) -> CommPoly<K> {
        CommPoly {
            field,
            support: BTreeMap::new(),
        }
    }

    pub fn constant(field: K, c: K::Elem) -> CommPoly<K> {
        let mut p = CommPoly::zero(field);
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn one(field: K) -> CommPoly<K> {
        let c = field.one();
        CommPoly::constant(field, c)
    }

    pub fn var(field: K, v: VarId) -> CommPoly<K> {
        let c = field.one();
        let mut p = CommPoly::zero(field);
        p.add_term(Monomial::var(v), c);
        p
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.support.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K::Elem)> {
        self.support.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.support.keys().map(|m| m.total_degree()).max()
    }

    pub fn constant_term(&self) -> K::Elem {
        self.support
            .get(&Monomial::unit())
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: K::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.support.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    fn assert_compatible(&self, other: &CommPoly<K>) {
        assert!(
            self.field == other.field,
            "mixed coefficient fields in one operation"
        );
    }

    pub fn add(&self, other: &CommPoly<K>) -> CommPoly<K> {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.support {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> CommPoly<K> {
        let mut out = CommPoly::zero(self.field.clone());
        for (m, c) in &self.support {
            out.support.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &CommPoly<K>) -> CommPoly<K> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CommPoly<K>) -> CommPoly<K> {
        self.assert_compatible(other);
        let mut out = CommPoly::zero(self.field.clone());
        for (ma, ca) in &self.support {
            for (mb, cb) in &other.support {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &K::Elem) -> CommPoly<K> {
        let mut out = CommPoly::zero(self.field.clone());
        for (m, a) in &self.support {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> CommPoly<K> {
        let mut out = CommPoly::one(self.field.clone());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Evaluate at a point. The closure supplies the value of each
    /// variable; a `None` for any variable actually present aborts with
    /// the variable's printed name.
    pub fn eval<F>(&self, point: F) -> Result<K::Elem>
    where
        F: Fn(VarId) -> Option<K::Elem>,
    {
        let mut acc = self.field.zero();
        for (m, c) in &self.support {
            let mut term = c.clone();
            for &(v, e) in m.factors() {
                let val = point(v).ok_or_else(|| Error::UnassignedVariable(v.name()))?;
                for _ in 0..e {
                    term = self.field.mul(&term, &val);
                }
            }
            acc = self.field.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Canonical text: terms by descending total degree, ties broken by
    /// the monomial key order, signs folded into the separators.
    pub fn text(&self) -> String {
        if self.support.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &K::Elem)> = self.support.iter().collect();
        terms.sort_by(|a, b| {
            b.0.total_degree()
                .cmp(&a.0.total_degree())
                .then_with(|| a.0.cmp(b.0))
        });
        let mut out = String::new();
        for (idx, (m, c)) in terms.iter().enumerate() {
            let neg = self.field.is_negative(c);
            let mag = if neg {
                self.field.elem_str(&self.field.neg(c))
            } else {
                self.field.elem_str(c)
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit_mono = m.factors().is_empty();
            if mag == "1" && !unit_mono {
                out.push_str(&m.text());
            } else if unit_mono {
                out.push_str(&mag);
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&m.text());
            }
        }
        out
    }
}

impl<K: Field> fmt::Display for CommPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Ring descriptor for `CommPoly<K>` elements, so univariate polynomials
/// can carry commutative-polynomial coefficients (symbolic characteristic
/// polynomials of generic matrices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommPolyRing<K: Field> {
    pub field: K,
}

impl<K: Field> CommPolyRing<K> {
    pub fn new(field: K) -> CommPolyRing<K> {
        CommPolyRing { field }
    }
}

impl<K: Field> Ring for CommPolyRing<K> {
    type Elem = CommPoly<K>;

    fn zero(&self) -> CommPoly<K> {
        CommPoly::zero(self.field.clone())
    }

    fn one(&self) -> CommPoly<K> {
        CommPoly::one(self.field.clone())
    }

    fn is_zero(&self, a: &CommPoly<K>) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &CommPoly<K>) -> bool {
        a.num_terms() == 1 && {
            let (m, c) = a.terms().next().unwrap();
            m.factors().is_empty() && self.field.is_one(c)
        }
    }

    fn add(&self, a: &CommPoly<K>, b: &CommPoly<K>) -> CommPoly<K> {
        a.add(b)
    }

    fn sub(&self, a: &CommPoly<K>, b: &CommPoly<K>) -> CommPoly<K> {
        a.sub(b)
    }

    fn neg(&self, a: &CommPoly<K>) -> CommPoly<K> {
        a.neg()
    }

    fn mul(&self, a: &CommPoly<K>, b: &CommPoly<K>) -> CommPoly<K> {
        a.mul(b)
    }

    fn from_i64(&self, n: i64) -> CommPoly<K> {
        CommPoly::constant(self.field.clone(), self.field.from_i64(n))
    }

    fn elem_str(&self, a: &CommPoly<K>) -> String {
        a.text()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp64, Rationals};

    #[test]
    fn variable_names_are_one_based() {
        assert_eq!(VarId::new(0, 0, 0).name(), "x1_11");
        assert_eq!(VarId::new(1, 0, 1).name(), "x2_12");
    }

    #[test]
    fn arithmetic_and_text() {
        let a = CommPoly::var(Rationals, VarId::new(0, 0, 0));
        let b = CommPoly::var(Rationals, VarId::new(0, 0, 1));
        // (a + b)(a - b) = a^2 - b^2 in commuting variables
        let p = a.add(&b).mul(&a.sub(&b));
        assert_eq!(p.text(), "x1_11^2 - x1_12^2");
        assert_eq!(p.total_degree(), Some(2));

        let q = a.sub(&a);
        assert!(q.is_zero());
        assert_eq!(q.text(), "0");

        let c = CommPoly::constant(Rationals, Rationals.from_i64(-3));
        assert_eq!(a.mul(&c).add(&CommPoly::one(Rationals)).text(), "-3*x1_11 + 1");
    }

    #[test]
    fn evaluation() {
        let f = Fp64::new(7).unwrap();
        let a = CommPoly::var(f, VarId::new(0, 0, 0));
        let b = CommPoly::var(f, VarId::new(0, 1, 1));
        let p = a.mul(&b).add(&CommPoly::one(f)); // ab + 1
        let v = p
            .eval(|v| match (v.row, v.col) {
                (0, 0) => Some(3),
                (1, 1) => Some(4),
                _ => None,
            })
            .unwrap();
        assert_eq!(v, 6); // 3*4 + 1 = 13 = 6 mod 7

        let missing = p.eval(|v| if v.row == 0 { Some(3) } else { None });
        assert_eq!(missing, Err(Error::UnassignedVariable("x1_22".into())));
    }

    #[test]
    fn ring_descriptor_round_trip() {
        let r = CommPolyRing::new(Rationals);
        let two = r.from_i64(2);
        assert!(r.is_one(&r.mul(&two, &r.from_i64(0)).add(&r.one())));
        assert_eq!(r.elem_str(&r.sub(&r.zero(), &two)), "-2");
    }
}
