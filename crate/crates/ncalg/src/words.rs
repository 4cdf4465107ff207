//! Combinatorics of infinite periodic words u^∞ and the subalgebras they
//! carve out of the free algebra.
//!
//! For nonempty words u, v the infinite powers u^∞ and v^∞ compare
//! lexicographically; the first |u| + |v| positions decide the comparison,
//! and equality holds exactly when u and v share a primitive root. The
//! classification of words against a fixed class z yields the subalgebra
//! R_(z) (spanned by 1 and the words with w^∞ ≤ z), its ideal I_(z)
//! (w^∞ < z), and the quotient map onto a univariate polynomial ring.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freepoly::FreePoly;
use crate::unipoly::UniPoly;
use crate::word::Word;
use std::cmp::Ordering;

/// Total order on generator letters; `rank[g]` is the position of generator
/// `g`, smallest first. Comparisons panic on letters outside the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphabetOrder {
    rank: Vec<u8>,
}

impl AlphabetOrder {
    /// The natural order z0 < z1 < … on `size` generators.
    pub fn natural(size: usize) -> AlphabetOrder {
        AlphabetOrder {
            rank: (0..size as u8).collect(),
        }
    }

    /// Order given by listing the letters smallest-first, e.g. "bac" for
    /// b < a < c.
    pub fn from_letters(s: &str) -> Result<AlphabetOrder> {
        let listed = Word::parse_letters(s)?;
        let n = listed.len();
        let mut rank = vec![u8::MAX; n];
        for (pos, &g) in listed.letters().iter().enumerate() {
            if (g as usize) >= n || rank[g as usize] != u8::MAX {
                return Err(Error::EmptyWord);
            }
            rank[g as usize] = pos as u8;
        }
        Ok(AlphabetOrder { rank })
    }

    pub fn size(&self) -> usize {
        self.rank.len()
    }

    pub fn cmp_letters(&self, a: u8, b: u8) -> Ordering {
        self.rank[a as usize].cmp(&self.rank[b as usize])
    }
}

/// Smallest period decomposition: returns `(r, e)` with `w = r^e` and `r`
/// primitive (not itself a proper power). Computed from the border table.
pub fn primitive_root(w: &Word) -> (Word, usize) {
    assert!(!w.is_empty(), "primitive root of the empty word");
    let s = w.letters();
    let n = s.len();
    // fail[i] = length of the longest proper border of s[..=i]
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let period = n - fail[n - 1];
    if n.is_multiple_of(period) {
        (w.prefix(period), n / period)
    } else {
        (w.clone(), 1)
    }
}

/// Lexicographic comparison of u^∞ and v^∞ under `order`. The first
/// |u| + |v| letters decide: if two periodic sequences with those periods
/// agree that far, they agree everywhere.
pub fn inf_cmp(u: &Word, v: &Word, order: &AlphabetOrder) -> Ordering {
    assert!(!u.is_empty() && !v.is_empty(), "inf_cmp of the empty word");
    let (us, vs) = (u.letters(), v.letters());
    for i in 0..us.len() + vs.len() {
        let c = order.cmp_letters(us[i % us.len()], vs[i % vs.len()]);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

/// The class of the infinite word u^∞, represented by the primitive root
/// of u. Two words have the same class exactly when `inf_cmp` ties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaClass {
    root: Word,
}

impl OmegaClass {
    pub fn of(w: &Word) -> OmegaClass {
        OmegaClass {
            root: primitive_root(w).0,
        }
    }

    pub fn root(&self) -> &Word {
        &self.root
    }

    pub fn cmp(&self, other: &OmegaClass, order: &AlphabetOrder) -> Ordering {
        inf_cmp(&self.root, &other.root, order)
    }

    /// Text form `(word)^inf` in compact letter spelling.
    pub fn text(&self) -> String {
        format!("({})^inf", self.root.letter_str())
    }
}

/// Where a word sits relative to R_(z) = span(1, {w : w^∞ ≤ z}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RzClass {
    /// The empty word.
    Unit,
    /// w^∞ = z, so w is the `exponent`-th power of the class root.
    OnBoundary { exponent: usize },
    /// w^∞ < z: w lies in the ideal I_(z).
    InIdeal,
    /// w^∞ > z: w is not in R_(z) at all.
    Outside,
}

pub fn in_rz(w: &Word, z: &OmegaClass, order: &AlphabetOrder) -> RzClass {
    if w.is_empty() {
        return RzClass::Unit;
    }
    match inf_cmp(w, z.root(), order) {
        Ordering::Less => RzClass::InIdeal,
        Ordering::Greater => RzClass::Outside,
        Ordering::Equal => {
            // equal classes share the primitive root, so w is a power of it
            let e = w.len() / z.root().len();
            debug_assert!(w.is_power_of(z.root(), e));
            RzClass::OnBoundary { exponent: e }
        }
    }
}

/// Image of `f` under the quotient R_(z) → R_(z)/I_(z) ≅ k[v], sending the
/// e-th power of the class root to v^e and the ideal to zero. Fails on the
/// first support word outside R_(z).
pub fn bergman_quotient<K: Field>(
    f: &FreePoly<K>,
    z: &OmegaClass,
    order: &AlphabetOrder,
) -> Result<UniPoly<K>> {
    let mut out = UniPoly::zero(f.field().clone());
    for (w, c) in f.terms() {
        match in_rz(w, z, order) {
            RzClass::Unit => out.add_assign_coeff(0, c),
            RzClass::OnBoundary { exponent } => out.add_assign_coeff(exponent, c),
            RzClass::InIdeal => {}
            RzClass::Outside => return Err(Error::OutsideRz(w.letter_str())),
        }
    }
    Ok(out)
}

/// Result of projecting a generating set: the maximal class z over all
/// support words, and each generator's image in k[v].
#[derive(Clone, Debug)]
pub struct BergmanProjection<K: Field> {
    pub z: OmegaClass,
    pub images: Vec<UniPoly<K>>,
}

/// Choose z as the maximum of u^∞ over every nonconstant support word of
/// the generators, then push every generator through the quotient. With
/// that choice each generator lies in R_(z) and at least one image is
/// nonconstant.
pub fn bergman_projection<K: Field>(
    gens: &[FreePoly<K>],
    order: &AlphabetOrder,
) -> Result<BergmanProjection<K>> {
    let mut best: Option<Word> = None;
    for g in gens {
        for (w, _) in g.terms() {
            if w.is_empty() {
                continue;
            }
            best = match best {
                None => Some(w.clone()),
                Some(b) => {
                    if inf_cmp(w, &b, order) == Ordering::Greater {
                        Some(w.clone())
                    } else {
                        Some(b)
                    }
                }
            };
        }
    }
    let Some(top) = best else {
        return Err(Error::AllImagesConstant);
    };
    let z = OmegaClass::of(&top);
    let images = gens
        .iter()
        .map(|g| bergman_quotient(g, &z, order))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(images.iter().any(|im| im.degree() > crate::freepoly::Degree::Finite(0)));
    Ok(BergmanProjection { z, images })
}
