//! Finite fields `F_{q^n} = F_p[x]/(mu)` with `q = p^e`.
//!
//! Elements are stored by their integer index `sum coeffs[i] * p^i` over the
//! power basis `1, x, x^2, ...`, which makes them `Copy` and gives the text
//! encoding used by the CLI for free. Fields small enough to tabulate carry
//! discrete log/antilog tables; larger ones fall back to schoolbook
//! multiplication modulo `mu`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmath;

/// Default upper bound on the field order accepted by [`FieldCtx::new`].
pub const DEFAULT_ORDER_CAP: u64 = 1 << 32;

/// Hard ceiling for any configured cap; indices and products must fit machine words.
pub const MAX_ORDER: u64 = 1 << 62;

/// Fields up to this order get log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// An element of a [`FieldCtx`], identified by its base-`p` index.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Caller guarantees `index` is below the field order.
    pub(crate) fn from_index_unchecked(index: u64) -> Elem {
        Elem(index)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The `"p^e^n"` field descriptor.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    pub n: u32,
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('^').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "field descriptor {s:?} is not of the form p^e^n"
            )));
        }
        let bad = |what: &str| Error::Parse(format!("bad {what} in field descriptor {s:?}"));
        Ok(FieldSpec {
            p: parts[0].parse().map_err(|_| bad("p"))?,
            e: parts[1].parse().map_err(|_| bad("e"))?,
            n: parts[2].parse().map_err(|_| bad("n"))?,
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}^{}", self.p, self.e, self.n)
    }
}

#[derive(Debug)]
struct LogTables {
    /// `exp[k]` is the index of `g^k`, `0 <= k < Q - 1`.
    exp: Vec<u32>,
    /// `log[idx]` is the discrete log of the element with that index; `log[0]` is unused.
    log: Vec<u32>,
}

/// `F_{q^n}` realized as `F_p[x]/(modulus)`. Immutable once built.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    e: u32,
    n: u32,
    q: u64,
    /// Monic, little-endian, length `e*n + 1`.
    modulus: Vec<u64>,
    order: u64,
    order_big: BigUint,
    tables: Option<LogTables>,
}

impl FieldCtx {
    pub fn new(p: u64, e: u32, n: u32) -> Result<Self> {
        Self::with_cap(p, e, n, DEFAULT_ORDER_CAP)
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self> {
        Self::new(spec.p, spec.e, spec.n)
    }

    pub fn with_cap(p: u64, e: u32, n: u32, cap: u64) -> Result<Self> {
        if !intmath::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || n == 0 {
            return Err(Error::ZeroDegree { e, n });
        }
        let degree = e.checked_mul(n).ok_or(Error::FieldTooLarge {
            p,
            degree: u32::MAX,
            cap,
        })?;
        let cap = cap.min(MAX_ORDER);
        let order = match intmath::checked_pow(p, degree) {
            Some(order) if order <= cap => order,
            _ => return Err(Error::FieldTooLarge { p, degree, cap }),
        };
        let modulus = first_irreducible(p, degree as usize);
        let mut ctx = FieldCtx {
            p,
            e,
            n,
            q: p.pow(e),
            modulus,
            order,
            order_big: BigUint::from(order),
            tables: None,
        };
        if order <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `q = p^e`, the order of the base field the family is defined over.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree `e*n` of the field over `F_p`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The field order `Q = p^(e*n)`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn order_big(&self) -> &BigUint {
        &self.order_big
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            e: self.e,
            n: self.n,
        }
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    // ---- encoding ----

    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.order {
            Ok(Elem(index))
        } else {
            Err(Error::IndexOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn index_of(&self, a: Elem) -> u64 {
        a.0
    }

    /// Embeds an integer through `F_p`.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (0..self.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (1..self.order).map(Elem)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree());
        let mut idx = a.0;
        for _ in 0..self.degree() {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() != self.degree() {
            return Err(Error::WrongDigitCount {
                expected: self.degree(),
                got: coeffs.len(),
            });
        }
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::DigitOutOfRange {
                    digit: c,
                    p: self.p,
                });
            }
            idx = idx * self.p + c;
        }
        Ok(Elem(idx))
    }

    // ---- arithmetic ----

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            let mut s = x % p + y % p;
            if s >= p {
                s -= p;
            }
            out += s * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 {
            let d = x % p;
            if d != 0 {
                out += (p - d) * place;
            }
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let k =
                    (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % (self.order - 1);
                Elem(t.exp[k as usize] as u64)
            }
            None => self.mul_generic(a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                Elem(t.exp[((self.order - 1 - l) % (self.order - 1)) as usize] as u64)
            }
            None => self.pow_generic(a, self.order - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` with `0^0 = 1`.
    pub fn pow(&self, a: Elem, k: &BigUint) -> Elem {
        self.pow_u64(a, self.reduce_exponent(k))
    }

    /// `a^k` for a signed exponent; negative exponents are rejected.
    pub fn pow_signed(&self, a: Elem, k: &BigInt) -> Result<Elem> {
        match k.sign() {
            Sign::Minus => Err(Error::NegativeExponent(k.to_string())),
            _ => Ok(self.pow(a, k.magnitude())),
        }
    }

    pub fn pow_u64(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let group = self.order - 1;
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u128;
                let r = (l * (k % group) as u128) % group as u128;
                Elem(t.exp[r as usize] as u64)
            }
            None => self.pow_generic(a, (k - 1) % group + 1),
        }
    }

    /// Maps an exponent to one below `Q` inducing the same power map on the
    /// whole field: `0 -> 0`, `k >= 1 -> ((k - 1) mod (Q - 1)) + 1`.
    pub fn reduce_exponent(&self, k: &BigUint) -> u64 {
        if k.is_zero() {
            return 0;
        }
        if let Some(small) = k.to_u64() {
            if small < self.order {
                return small;
            }
        }
        let group = BigUint::from(self.order - 1);
        let r = (k - 1u32).mod_floor(&group);
        r.to_u64().expect("residue below Q") + 1
    }

    /// Same reduction for an exponent that only matters on nonzero inputs.
    pub fn reduce_unit_exponent(&self, k: &BigUint) -> u64 {
        (k % BigUint::from(self.order - 1))
            .to_u64()
            .expect("residue below Q")
    }

    /// `(q^n - 1) / (q^d - 1)` as a geometric sum.
    pub fn norm_exponent(&self, d: u32) -> Result<BigUint> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(Error::NotADivisor { d, n: self.n });
        }
        let step = self.e as u64 * d as u64;
        Ok(intmath::geometric_sum(self.p, step, (self.n / d) as u64))
    }

    /// The norm `N_{q^n/q^d}(a) = a^((q^n - 1)/(q^d - 1))`.
    pub fn norm(&self, a: Elem, d: u32) -> Result<Elem> {
        Ok(self.pow(a, &self.norm_exponent(d)?))
    }

    // ---- schoolbook path ----

    fn mul_generic(&self, a: Elem, b: Elem) -> Elem {
        let k = self.degree();
        let p = self.p as u128;
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u128 * yj as u128) % p;
            }
        }
        // Fold high terms down using x^k = -(mu_0 + ... + mu_{k-1} x^{k-1}).
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &mi) in self.modulus[..k].iter().enumerate() {
                let sub = c * mi as u128 % p;
                let slot = &mut prod[top - k + i];
                *slot = (*slot + p - sub) % p;
            }
        }
        let digits: Vec<u64> = prod[..k].iter().map(|&c| c as u64).collect();
        self.from_coeffs(&digits).expect("reduced digits")
    }

    fn pow_generic(&self, mut base: Elem, mut k: u64) -> Elem {
        let mut acc = Elem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_generic(acc, base);
            }
            base = self.mul_generic(base, base);
            k >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> LogTables {
        let group = self.order - 1;
        let factors = intmath::prime_factors(group);
        let generator = (1..self.order)
            .map(Elem)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_generic(g, group / r) != Elem::ONE)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![0u32; self.order as usize];
        let mut cur = Elem::ONE;
        for k in 0..group {
            exp.push(cur.0 as u32);
            log[cur.0 as usize] = k as u32;
            cur = self.mul_generic(cur, generator);
        }
        LogTables { exp, log }
    }

    /// Schoolbook product, bypassing the tables. Exposed for cross-checks.
    #[doc(hidden)]
    pub fn mul_untabled(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        self.mul_generic(a, b)
    }
}

// ---- polynomials over F_p for the modulus search ----

/// First monic irreducible of the given degree, scanning `(c_0, ..., c_{k-1})`
/// as a little-endian base-`p` integer from zero.
fn first_irreducible(p: u64, degree: usize) -> Vec<u64> {
    let mut low = vec![0u64; degree];
    loop {
        let mut cand = low.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        // increment little-endian counter
        for c in low.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
}

/// Rabin's test: `f` of degree `k` is irreducible iff `x^(p^k) = x mod f`
/// and `gcd(x^(p^(k/r)) - x, f) = 1` for each prime `r | k`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    let frob = |g: &[u64], times: usize| {
        let mut h = g.to_vec();
        for _ in 0..times {
            h = fp_powmod(&h, p, f, p);
        }
        h
    };
    if !fp_trim(fp_sub(&frob(&x, k), &x, p)).is_empty() {
        return false;
    }
    for r in intmath::prime_factors(k as u64) {
        let h = fp_sub(&frob(&x, k / r as usize), &x, p);
        let g = fp_gcd(fp_trim(h), f.to_vec(), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect()
}

/// Remainder of `a` by a nonzero `b`.
fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = fp_trim(a.to_vec());
    let b = fp_trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = intmath::pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = intmath::mul_mod(*r.last().unwrap(), lead_inv, p);
        for (i, &bi) in b.iter().enumerate() {
            let sub = intmath::mul_mod(c, bi, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + intmath::mul_mod(x, y, p)) % p;
        }
    }
    fp_rem(&prod, f, p)
}

fn fp_powmod(base: &[u64], mut k: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base, f, p);
    while k > 0 {
        if k & 1 == 1 {
            acc = fp_mulmod(&acc, &b, f, p);
        }
        b = fp_mulmod(&b, &b, f, p);
        k >>= 1;
    }
    acc
}

fn fp_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}
