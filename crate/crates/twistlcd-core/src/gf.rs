//! Finite fields GF(q) for odd prime powers q, and their element arithmetic.
//!
//! Two backends share one interface:
//!
//! * **Prime fields** (m = 1): least-nonnegative-residue arithmetic modulo p,
//!   supported for every odd prime p < 2^32.
//! * **Extension fields** (m > 1): elements are coefficient vectors over
//!   GF(p) packed base-p into a single canonical code; multiplication runs
//!   through discrete exp/log tables over a fixed generator. Capped at
//!   q = p^m ≤ 2^16.
//!
//! Construction is deterministic: the modulus is the first monic irreducible
//! polynomial of degree m in ascending packed-code order, and the generator
//! is the smallest element (in canonical code order) of multiplicative order
//! q − 1. Exp/log tables are built whenever q ≤ 2^16, prime fields included.
//!
//! ```
//! use twistlcd_core::gf::field_new;
//!
//! let f7 = field_new(7, 1).unwrap();
//! let a = f7.from_int(3);
//! let b = f7.from_int(5);
//! assert_eq!((&a * &b).value(), 1); // 15 ≡ 1 (mod 7)
//! assert_eq!(a.inv().unwrap().value(), 5);
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest order accepted for extension fields (exp/log table backend).
pub const MAX_TABLE_ORDER: u64 = 1 << 16;
/// Characteristic bound: primes must fit below 2^32.
pub const MAX_CHAR: u64 = 1 << 32;

/// Deterministic trial-division primality test; valid for all n < 2^32.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of n, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over GF(p), used only while constructing an
// extension field (finding the modulus and generator, building the tables).
// Coefficients are little-endian: poly[i] is the coefficient of x^i.
// ---------------------------------------------------------------------------

fn poly_trim(poly: &mut Vec<u64>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a modulo the monic polynomial m (leading coefficient 1).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    // Subtract lead·x^shift·m each round; m is monic, so the top coefficient
    // cancels and the degree strictly drops.
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (lead * mi) % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

/// Unpack a canonical code into base-p coefficients of length m.
fn unpack(code: u64, p: u64, m: u32) -> Vec<u64> {
    let mut c = code;
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(c % p);
        c /= p;
    }
    out
}

/// Pack base-p coefficients back into a canonical code.
fn pack(coeffs: &[u64], p: u64) -> u64 {
    let mut out = 0u64;
    for &c in coeffs.iter().rev() {
        out = out * p + c;
    }
    out
}

/// A monic polynomial of degree m with lower coefficients given by `code`.
fn monic_from_code(code: u64, p: u64, m: u32) -> Vec<u64> {
    let mut poly = unpack(code, p, m);
    poly.push(1);
    poly
}

/// Irreducibility over GF(p) by trial division by every monic polynomial of
/// degree 1 ..= deg/2.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=(deg / 2) as u32 {
        let count = p.pow(d);
        for code in 0..count {
            let divisor = monic_from_code(code, p, d);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// FieldCtx
// ---------------------------------------------------------------------------

/// An immutable finite-field context. Construct via [`field_new`]; share via
/// `Arc`. All element operations are pure functions of the context and the
/// canonical element codes, so a context is safe to use from many threads.
pub struct FieldCtx {
    p: u64,
    m: u32,
    q: u64,
    /// Monic irreducible modulus (little-endian, length m + 1); `None` for m = 1.
    modulus: Option<Vec<u64>>,
    /// Canonical code of the fixed primitive element ω.
    generator: u64,
    /// exp[i] = ω^i for 0 ≤ i < q − 1; present when q ≤ 2^16.
    exp_table: Option<Vec<u64>>,
    /// log[code] = i with ω^i = code (code ≠ 0); present when q ≤ 2^16.
    log_table: Option<Vec<u64>>,
    /// Distinct prime factors of q − 1 (for order computations).
    q1_factors: Vec<u64>,
    /// Structural identity: two contexts with the same key describe the same
    /// field (construction is deterministic), so their elements interoperate.
    key: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.m)
        }
    }
}

/// Construct GF(p^m). See the module docs for the determinism guarantees.
///
/// Errors: [`Error::NotPrime`], [`Error::EvenCharacteristic`],
/// [`Error::FieldTooLarge`] (p ≥ 2^32, or m > 1 with p^m > 2^16),
/// [`Error::InvalidInput`] (m = 0).
pub fn field_new(p: u64, m: u32) -> Result<Arc<FieldCtx>> {
    FieldCtx::new(p, m)
}

impl FieldCtx {
    /// See [`field_new`].
    pub fn new(p: u64, m: u32) -> Result<Arc<FieldCtx>> {
        if m == 0 {
            return Err(Error::InvalidInput("extension degree m must be ≥ 1".into()));
        }
        if p % 2 == 0 {
            return Err(Error::EvenCharacteristic);
        }
        if p >= MAX_CHAR {
            return Err(Error::FieldTooLarge(format!(
                "characteristic {} is not below 2^32",
                p
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = if m == 1 {
            p
        } else {
            let mut q: u64 = 1;
            for _ in 0..m {
                q = q.saturating_mul(p);
                if q > MAX_TABLE_ORDER {
                    return Err(Error::FieldTooLarge(format!(
                        "{}^{} exceeds the 2^16 cap on extension-field orders",
                        p, m
                    )));
                }
            }
            q
        };

        let modulus = if m == 1 {
            None
        } else {
            Some(Self::smallest_irreducible(p, m))
        };
        let q1_factors = prime_factors(q - 1);

        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            generator: 0,
            exp_table: None,
            log_table: None,
            q1_factors,
            key: (p << 8) | m as u64,
        };
        ctx.generator = ctx.find_generator();
        if ctx.q <= MAX_TABLE_ORDER {
            ctx.build_tables();
        }
        Ok(Arc::new(ctx))
    }

    fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
        let count = p.pow(m);
        for code in 0..count {
            let cand = monic_from_code(code, p, m);
            if is_irreducible(&cand, p) {
                return cand;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over GF(p)")
    }

    /// Multiplication of canonical codes without tables (used during setup).
    fn mul_direct(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            ((a as u128 * b as u128) % self.p as u128) as u64
        } else {
            let pa = unpack(a, self.p, self.m);
            let pb = unpack(b, self.p, self.m);
            let prod = poly_mulmod(&pa, &pb, self.modulus.as_ref().unwrap(), self.p);
            pack(&prod, self.p)
        }
    }

    fn pow_direct(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_direct(acc, base);
            }
            base = self.mul_direct(base, base);
            e >>= 1;
        }
        acc
    }

    fn order_of_code(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        let mut t = self.q - 1;
        for &f in &self.q1_factors {
            while t % f == 0 && self.pow_direct(a, t / f) == 1 {
                t /= f;
            }
        }
        t
    }

    fn find_generator(&self) -> u64 {
        for cand in 2..self.q {
            if self.order_of_code(cand) == self.q - 1 {
                return cand;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u64; self.q as usize];
        let mut acc = 1u64;
        for i in 0..n {
            exp.push(acc);
            log[acc as usize] = i as u64;
            acc = self.mul_direct(acc, self.generator);
        }
        debug_assert_eq!(acc, 1, "generator order must be q - 1");
        self.exp_table = Some(exp);
        self.log_table = Some(log);
    }

    // -- basic accessors ----------------------------------------------------

    /// Characteristic p.
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree m.
    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Field order q = p^m.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Structural identity key; equal keys mean interoperable elements.
    pub fn key(&self) -> u64 {
        self.key
    }

    /// The modulus polynomial (little-endian coefficients), for m > 1.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// Whether discrete exp/log tables are present (always true for q ≤ 2^16).
    pub fn has_tables(&self) -> bool {
        self.exp_table.is_some()
    }

    /// Discrete exponential: ω^i for 0 ≤ i < q − 1. Requires tables.
    pub fn exp(self: &Arc<Self>, i: u64) -> Fe {
        let exp = self.exp_table.as_ref().expect("exp requires tables");
        Fe {
            value: exp[(i % (self.q - 1)) as usize],
            ctx: Arc::clone(self),
        }
    }

    /// Discrete logarithm of a nonzero element. Requires tables.
    pub fn log(&self, a: &Fe) -> Result<u64> {
        if a.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let log = self.log_table.as_ref().expect("log requires tables");
        Ok(log[a.value as usize])
    }

    // -- element constructors -----------------------------------------------

    /// The additive identity.
    pub fn zero(self: &Arc<Self>) -> Fe {
        Fe { value: 0, ctx: Arc::clone(self) }
    }

    /// The multiplicative identity.
    pub fn one(self: &Arc<Self>) -> Fe {
        Fe { value: 1, ctx: Arc::clone(self) }
    }

    /// The fixed primitive element ω of the multiplicative group.
    pub fn generator(self: &Arc<Self>) -> Fe {
        Fe { value: self.generator, ctx: Arc::clone(self) }
    }

    /// Image of a signed integer under the canonical ring map ℤ → GF(q)
    /// (reduces mod p; lands in the prime subfield when m > 1).
    pub fn from_int(self: &Arc<Self>, n: i64) -> Fe {
        let p = self.p as i64;
        let r = n.rem_euclid(p) as u64;
        Fe { value: r, ctx: Arc::clone(self) }
    }

    /// Element with the given canonical code (must be < q). For m > 1 the
    /// code packs the coefficient vector base p, low coefficient first.
    pub fn from_code(self: &Arc<Self>, code: u64) -> Result<Fe> {
        if code >= self.q {
            return Err(Error::IndexOutOfRange(format!(
                "element code {} is not below q = {}",
                code, self.q
            )));
        }
        Ok(Fe { value: code, ctx: Arc::clone(self) })
    }

    /// All q elements in ascending canonical-code order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = Fe> + '_ {
        let ctx = Arc::clone(self);
        (0..self.q).map(move |code| Fe { value: code, ctx: Arc::clone(&ctx) })
    }

    // -- raw (code-level) arithmetic -----------------------------------------
    // These operate on canonical codes and are the hot path for the linear
    // algebra and enumeration layers. Codes must belong to this field.

    /// a + b on canonical codes.
    pub fn add_raw(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            let s = a + b;
            if s >= self.p { s - self.p } else { s }
        } else {
            let (p, m) = (self.p, self.m);
            let (mut x, mut y) = (a, b);
            let mut out = 0u64;
            let mut mult = 1u64;
            for _ in 0..m {
                let s = (x % p + y % p) % p;
                out += s * mult;
                mult *= p;
                x /= p;
                y /= p;
            }
            out
        }
    }

    /// −a on canonical codes.
    pub fn neg_raw(&self, a: u64) -> u64 {
        if self.m == 1 {
            if a == 0 { 0 } else { self.p - a }
        } else {
            let (p, m) = (self.p, self.m);
            let mut x = a;
            let mut out = 0u64;
            let mut mult = 1u64;
            for _ in 0..m {
                let d = x % p;
                out += if d == 0 { 0 } else { p - d } * mult;
                mult *= p;
                x /= p;
            }
            out
        }
    }

    /// a − b on canonical codes.
    pub fn sub_raw(&self, a: u64, b: u64) -> u64 {
        self.add_raw(a, self.neg_raw(b))
    }

    /// a · b on canonical codes.
    pub fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            ((a as u128 * b as u128) % self.p as u128) as u64
        } else {
            if a == 0 || b == 0 {
                return 0;
            }
            let exp = self.exp_table.as_ref().unwrap();
            let log = self.log_table.as_ref().unwrap();
            let i = (log[a as usize] + log[b as usize]) % (self.q - 1);
            exp[i as usize]
        }
    }

    /// a⁻¹ on canonical codes; a must be nonzero.
    pub fn inv_raw(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            // Fermat: a^(p-2); p ≥ 3 so the exponent is ≥ 1.
            Ok(self.pow_raw_u(a, self.p - 2))
        } else {
            let exp = self.exp_table.as_ref().unwrap();
            let log = self.log_table.as_ref().unwrap();
            let i = (self.q - 1 - log[a as usize]) % (self.q - 1);
            Ok(exp[i as usize])
        }
    }

    /// a^e on canonical codes, e ≥ 0 (0^0 = 1).
    pub fn pow_raw_u(&self, a: u64, e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let (Some(exp), Some(log)) = (&self.exp_table, &self.log_table) {
            let i = (log[a as usize] as u128 * (e % (self.q - 1)) as u128)
                % (self.q - 1) as u128;
            return exp[i as usize];
        }
        let mut base = a;
        let mut e = e;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Fe
// ---------------------------------------------------------------------------

/// A field element: a canonical code plus a shared handle to its field.
///
/// Equality compares field identity and code. The arithmetic operators panic
/// on mixed fields or division by zero (they are meant for use after
/// boundary validation); the `try_*` methods and [`Fe::inv`] / [`Fe::pow`]
/// return errors instead.
#[derive(Clone)]
pub struct Fe {
    value: u64,
    ctx: Arc<FieldCtx>,
}

impl Fe {
    /// Canonical code: the least nonnegative residue (m = 1) or the base-p
    /// packed coefficient vector (m > 1).
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Handle to the owning field.
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn same_field(&self, rhs: &Fe) -> Result<()> {
        if self.ctx.key == rhs.ctx.key {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, rhs: &Fe) -> Result<Fe> {
        self.same_field(rhs)?;
        Ok(Fe { value: self.ctx.add_raw(self.value, rhs.value), ctx: self.ctx.clone() })
    }

    pub fn try_sub(&self, rhs: &Fe) -> Result<Fe> {
        self.same_field(rhs)?;
        Ok(Fe { value: self.ctx.sub_raw(self.value, rhs.value), ctx: self.ctx.clone() })
    }

    pub fn try_mul(&self, rhs: &Fe) -> Result<Fe> {
        self.same_field(rhs)?;
        Ok(Fe { value: self.ctx.mul_raw(self.value, rhs.value), ctx: self.ctx.clone() })
    }

    pub fn try_div(&self, rhs: &Fe) -> Result<Fe> {
        self.same_field(rhs)?;
        let inv = self.ctx.inv_raw(rhs.value)?;
        Ok(Fe { value: self.ctx.mul_raw(self.value, inv), ctx: self.ctx.clone() })
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Fe> {
        Ok(Fe { value: self.ctx.inv_raw(self.value)?, ctx: self.ctx.clone() })
    }

    /// a^e for any signed exponent; negative exponents route through the
    /// inverse (so 0 with a negative exponent is a [`Error::DivisionByZero`]).
    pub fn pow(&self, e: i64) -> Result<Fe> {
        if e >= 0 {
            return Ok(Fe {
                value: self.ctx.pow_raw_u(self.value, e as u64),
                ctx: self.ctx.clone(),
            });
        }
        let inv = self.inv()?;
        Ok(Fe {
            value: self.ctx.pow_raw_u(inv.value, e.unsigned_abs()),
            ctx: self.ctx.clone(),
        })
    }

    /// Multiplicative order; errors on zero. Always divides q − 1.
    pub fn order(&self) -> Result<u64> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.ctx.order_of_code(self.value))
    }
}

/// See [`Fe::order`].
pub fn element_order(a: &Fe) -> Result<u64> {
    a.order()
}

impl PartialEq for Fe {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.key == other.ctx.key && self.value == other.value
    }
}

impl Eq for Fe {}

impl std::hash::Hash for Fe {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.key.hash(state);
        self.value.hash(state);
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ctx)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.m == 1 {
            return write!(f, "{}", self.value);
        }
        // Coefficient-tuple form "c0+c1*x+c2*x^2", skipping zero terms.
        let coeffs = unpack(self.value, self.ctx.p, self.ctx.m);
        let mut parts = Vec::new();
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match i {
                0 => format!("{}", c),
                1 => format!("{}*x", c),
                _ => format!("{}*x^{}", c, i),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl serde::Serialize for Fe {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.value)
    }
}

macro_rules! fe_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait for &Fe {
            type Output = Fe;
            fn $method(self, rhs: &Fe) -> Fe {
                self.$try(rhs).expect("field elements from the same field")
            }
        }
        impl std::ops::$trait for Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Fe> for Fe {
            type Output = Fe;
            fn $method(self, rhs: &Fe) -> Fe {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<Fe> for &Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                self.$method(&rhs)
            }
        }
    };
}

fe_binop!(Add, add, try_add);
fe_binop!(Sub, sub, try_sub);
fe_binop!(Mul, mul, try_mul);
fe_binop!(Div, div, try_div);

impl std::ops::Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe { value: self.ctx.neg_raw(self.value), ctx: self.ctx.clone() }
    }
}

impl std::ops::Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}
