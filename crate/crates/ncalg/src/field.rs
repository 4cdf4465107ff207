//! Exact scalars: arbitrary-precision rationals and prime fields with 64-bit
//! modulus. Every scalar operation in this crate is exact; there is no
//! floating point anywhere in the system.
//!
//! The design is descriptor-style: a [`Ring`] or [`Field`] value carries the
//! runtime data the element operations need (for `F_p`, the modulus), and
//! elements themselves stay plain (`u64` residues, [`BigRational`]s).

use crate::error::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;
use std::fmt::Debug;

/// A commutative ring of scalars.
pub trait Ring: Clone + Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    // descriptor methods take &self on purpose: the receiver carries the
    // modulus, it is not the element being converted
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Canonical text form of an element.
    fn elem_str(&self, a: &Self::Elem) -> String;
    /// Whether printing should pull a minus sign in front of the element;
    /// only meaningful for ordered coefficient domains.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }
}

/// A field of scalars.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Image of the literal `num/den`; fails when `den` is not invertible.
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, num: i64, den: u64) -> Result<Self::Elem, Error>;

    /// `None` means characteristic zero.
    fn characteristic(&self) -> Option<u64>;

    /// Canonical k-th root, if one exists: over the rationals the
    /// real-sign-preserving root, over `F_p` the least nonnegative residue
    /// among all roots.
    fn kth_root(&self, a: &Self::Elem, k: u32) -> Option<Self::Elem>;

    /// Text form used in reports and cache keys: `"q"` or `"p:<modulus>"`.
    fn spec_str(&self) -> String;

    /// Image of an element in `F_p`, when the coefficient embeds.
    fn to_residue(&self, a: &Self::Elem, fp: &Fp64) -> Result<u64, Error>;

    /// JSON form: number for residues, string for rationals.
    fn elem_json(&self, a: &Self::Elem) -> Value;

    /// Random element for probe-style constructions: uniform residue over
    /// `F_p`, a small-height rational over the rationals.
    fn sample_elem(&self, rng: &mut rand_chacha::ChaCha8Rng) -> Self::Elem;
}

/// The field of rational numbers with arbitrary-precision reduced fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn elem_str(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        Signed::is_negative(a)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_ratio(&self, num: i64, den: u64) -> Result<BigRational, Error> {
        if den == 0 {
            return Err(Error::NotRepresentable {
                value: format!("{num}/0"),
                field: self.spec_str(),
            });
        }
        Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn characteristic(&self) -> Option<u64> {
        None
    }

    fn kth_root(&self, a: &BigRational, k: u32) -> Option<BigRational> {
        assert!(k >= 1, "root exponent must be positive");
        if k == 1 || a.is_zero() {
            return Some(a.clone());
        }
        if a.is_negative() && k.is_multiple_of(2) {
            return None;
        }
        let num_abs = a.numer().abs();
        let nr = num_abs.nth_root(k);
        let dr = a.denom().nth_root(k);
        if nr.pow(k) != num_abs || dr.pow(k) != *a.denom() {
            return None;
        }
        let nr = if a.is_negative() { -nr } else { nr };
        Some(BigRational::new(nr, dr))
    }

    fn spec_str(&self) -> String {
        "q".to_string()
    }

    fn to_residue(&self, a: &BigRational, fp: &Fp64) -> Result<u64, Error> {
        let p = BigInt::from(fp.modulus());
        let den = a.denom().mod_floor(&p).to_u64().unwrap();
        if den == 0 {
            return Err(Error::NotRepresentable {
                value: self.elem_str(a),
                field: fp.spec_str(),
            });
        }
        let num = a.numer().mod_floor(&p).to_u64().unwrap();
        Ok(mul_mod(num, inv_mod_prime(den, fp.modulus()), fp.modulus()))
    }

    fn elem_json(&self, a: &BigRational) -> Value {
        Value::String(self.elem_str(a))
    }

    fn sample_elem(&self, rng: &mut rand_chacha::ChaCha8Rng) -> BigRational {
        use rand::Rng as _;
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1u64..=9);
        self.from_ratio(num, den).expect("nonzero denominator")
    }
}

/// The prime field `F_p` for a 64-bit prime `p < 2^62`; elements are
/// canonical residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp64 {
    p: u64,
}

impl Fp64 {
    pub fn new(p: u64) -> Result<Fp64, Error> {
        if p >= (1 << 62) || !is_prime_u64(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(Fp64 { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Canonical residue of an arbitrary integer.
    pub fn make(&self, n: u64) -> u64 {
        n % self.p
    }

    /// Uniform residue from `rng`.
    pub fn sample<R: rand::Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

impl Ring for Fp64 {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn elem_str(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for Fp64 {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(inv_mod_prime(*a, self.p))
        }
    }

    fn from_ratio(&self, num: i64, den: u64) -> Result<u64, Error> {
        let d = den % self.p;
        if d == 0 {
            return Err(Error::NotRepresentable {
                value: format!("{num}/{den}"),
                field: self.spec_str(),
            });
        }
        Ok(mul_mod(self.from_i64(num), inv_mod_prime(d, self.p), self.p))
    }

    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }

    fn kth_root(&self, a: &u64, k: u32) -> Option<u64> {
        assert!(k >= 1, "root exponent must be positive");
        kth_root_mod(*a, k, self.p)
    }

    fn spec_str(&self) -> String {
        format!("p:{}", self.p)
    }

    fn to_residue(&self, a: &u64, fp: &Fp64) -> Result<u64, Error> {
        if self.p != fp.p {
            return Err(Error::FieldMismatch(self.spec_str(), fp.spec_str()));
        }
        Ok(*a)
    }

    fn elem_json(&self, a: &u64) -> Value {
        Value::Number((*a).into())
    }

    fn sample_elem(&self, rng: &mut rand_chacha::ChaCha8Rng) -> u64 {
        self.sample(rng)
    }
}

/// Runtime selection of the coefficient field, as spelled on the command
/// line: `q` for the rationals, `p:<prime>` for `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<FieldSpec, Error> {
        if s == "q" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(rest) = s.strip_prefix("p:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::BadModulus(0))?;
            Fp64::new(p)?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(Error::BadModulus(0))
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    a %= p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo a prime `p`, `a != 0 (mod p)`.
pub fn inv_mod_prime(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Inverse of `a` modulo arbitrary `m` with `gcd(a, m) = 1`.
fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert!(old_r == 1, "inverse of non-unit");
    old_s.rem_euclid(m as i128) as u64
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_u64(b: u64, e: u32) -> u64 {
    b.pow(e)
}

/// One r-th root of `a` together with an element of order exactly r, for a
/// prime r dividing p-1 and `a` a verified r-th power residue.
fn amm_prime_root(a: u64, r: u64, p: u64) -> (u64, u64) {
    let n = p - 1;
    let mut s = n;
    let mut t = 0u32;
    while s.is_multiple_of(r) {
        s /= r;
        t += 1;
    }
    // c generates the full r-Sylow subgroup: b non-r-th-residue, c = b^s.
    let mut b = 2u64;
    while pow_mod(b, n / r, p) == 1 {
        b += 1;
    }
    let c = pow_mod(b, s, p);
    let omega = pow_mod(c, pow_u64(r, t - 1), p);
    // Digits of e with c^e = a^s, base r (a^s lies in the Sylow subgroup).
    let z = pow_mod(a, s, p);
    let mut e = 0u64;
    for i in 0..t {
        let zi = mul_mod(z, inv_mod_prime(pow_mod(c, e, p), p), p);
        let v = pow_mod(zi, pow_u64(r, t - 1 - i), p);
        let mut w = 1u64;
        let mut dig = 0u64;
        while w != v {
            w = mul_mod(w, omega, p);
            dig += 1;
            debug_assert!(dig < r);
        }
        e += dig * pow_u64(r, i);
    }
    debug_assert_eq!(pow_mod(c, e, p), z);
    debug_assert_eq!(e % r, 0, "not an r-th residue");
    let y = if s == 1 {
        // a itself lies in the Sylow subgroup: a = c^e.
        pow_mod(c, e / r, p)
    } else {
        // y = a^alpha * c^mu with r*alpha = 1 + beta*s and r*mu = -e*beta.
        let alpha = inv_mod(r % s, s);
        let beta = ((r as u128 * alpha as u128 - 1) / s as u128) as u64;
        let rt = pow_u64(r, t);
        let mu = (rt - mul_mod(e / r % rt, beta % rt, rt)) % rt;
        mul_mod(pow_mod(a, alpha, p), pow_mod(c, mu, p), p)
    };
    debug_assert_eq!(pow_mod(y, r, p), a);
    (y, omega)
}

fn root_dfs(target: u64, peel: &[u64], p: u64) -> Option<u64> {
    let Some((&r, rest)) = peel.split_first() else {
        return Some(target);
    };
    if pow_mod(target, (p - 1) / r, p) != 1 {
        return None;
    }
    let (y0, omega) = amm_prime_root(target, r, p);
    let mut y = y0;
    for _ in 0..r {
        if let Some(x) = root_dfs(y, rest, p) {
            return Some(x);
        }
        y = mul_mod(y, omega, p);
    }
    None
}

/// Least nonnegative `x` with `x^k = a (mod p)`, or `None` when no such
/// residue exists. `p` prime, `a < p`.
pub fn kth_root_mod(a: u64, k: u32, p: u64) -> Option<u64> {
    debug_assert!(a < p);
    if p == 2 || k == 1 {
        return Some(a);
    }
    if a == 0 {
        return Some(0);
    }
    let n = p - 1;
    let k1 = (k as u64) % n;
    if k1 == 0 {
        // x^k = 1 for every nonzero x.
        return if a == 1 { Some(1) } else { None };
    }
    // Prime powers of k1 coprime to p-1 act bijectively: strip them by
    // raising to the inverse exponent. The rest is peeled root by root.
    let mut target = a;
    let mut peel = Vec::new();
    for (r, e) in factor_u64(k1) {
        if n.is_multiple_of(r) {
            peel.extend(std::iter::repeat_n(r, e as usize));
        } else {
            let inv = inv_mod(pow_u64(r, e) % n, n);
            target = pow_mod(target, inv, p);
        }
    }
    let d = gcd_u64(k1, n);
    assert!(d <= 1 << 20, "kth_root: k shares too large a factor with p-1");
    let x0 = root_dfs(target, &peel, p)?;
    debug_assert_eq!(pow_mod(x0, k1, p), a);
    if d == 1 {
        return Some(x0);
    }
    // All roots form the coset x0 * <h> with h of order exactly d; take the
    // least residue.
    let mut b = 2u64;
    let h = loop {
        if factor_u64(d).iter().all(|&(r, _)| pow_mod(b, n / r, p) != 1) {
            break pow_mod(b, n / d, p);
        }
        b += 1;
    };
    let mut best = x0;
    let mut cur = x0;
    for _ in 1..d {
        cur = mul_mod(cur, h, p);
        if cur < best {
            best = cur;
        }
    }
    Some(best)
}
