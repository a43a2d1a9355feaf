//! Univariate polynomials over prime fields and the finite rings built from
//! them: `GF(q)`, `GF(q)[x]/(f)`, and the bounded-degree maximal spectrum of
//! `GF(q)[x]`.

use std::fmt;

use serde::Serialize;

use crate::error::{check_cap, AlgebraError, Result};
use crate::ring::{Elem, RingTable, TABLE_CAP};

/// Bound on the number of candidate polynomials scanned by enumeration.
pub const POLY_ENUM_CAP: u128 = 1 << 20;

/// Polynomial over `Z/p`, coefficients low degree first, trailing zeros
/// trimmed. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePoly {
    p: u64,
    coeffs: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Mod,
    Gcd,
}

impl PrimePoly {
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        trim(&mut coeffs);
        PrimePoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        PrimePoly { p, coeffs: Vec::new() }
    }

    /// `x - a`.
    pub fn linear(p: u64, a: u64) -> Self {
        PrimePoly::new(p, [(p - a % p) % p, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(AlgebraError::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Ok(PrimePoly::new(
            self.p,
            (0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)),
        ))
    }

    pub fn neg(&self) -> Self {
        PrimePoly::new(self.p, self.coeffs.iter().map(|&c| self.p - c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(PrimePoly::zero(self.p));
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Ok(PrimePoly::new(self.p, out))
    }

    pub fn scale(&self, k: u64) -> Self {
        PrimePoly::new(self.p, self.coeffs.iter().map(|&c| c * (k % self.p)))
    }

    /// Quotient and remainder of long division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_field(divisor)?;
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZeroPoly)?;
        let p = self.p;
        let lead_inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let shift = rem.len() - 1 - dd;
            let factor = rem[rem.len() - 1] * lead_inv % p;
            quot[shift] = factor;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + p - c * factor % p) % p;
            }
            trim(&mut rem);
        }
        Ok((PrimePoly::new(p, quot), PrimePoly::new(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic greatest common divisor. The second argument must be nonzero.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZeroPoly);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(AlgebraError::DegreeZero),
        };
        for k in 1..=d / 2 {
            for g in monic_of_degree(self.p, k) {
                if self.rem(&g)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.coeffs))
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and small; Fermat is plenty
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Digits of `m` in base `base`, least significant first, padded to `len`.
fn digits(mut m: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(m % base);
        m /= base;
    }
    out
}

/// Monic polynomials of exact degree `d` in lexicographic order (constant
/// coefficient least significant).
fn monic_of_degree(p: u64, d: usize) -> impl Iterator<Item = PrimePoly> {
    (0..p.pow(d as u32)).map(move |m| {
        let mut c = digits(m, p, d);
        c.push(1);
        PrimePoly::new(p, c)
    })
}

/// Renders coefficients (low degree first) as `x^2+x+1`, highest degree
/// first, omitting zero terms and unit coefficients on powers of `x`.
pub fn format_poly(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".into(),
            (1, c) => format!("{c}*x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}*x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

pub fn poly_arith(op: PolyOp, f: &PrimePoly, g: &PrimePoly) -> Result<PrimePoly> {
    match op {
        PolyOp::Add => f.add(g),
        PolyOp::Mul => f.mul(g),
        PolyOp::Mod => f.rem(g),
        PolyOp::Gcd => f.gcd(g),
    }
}

/// All monic irreducible polynomials of degree exactly `d` over `Z/p`.
pub fn enumerate_irreducibles(p: u64, d: usize) -> Result<Vec<PrimePoly>> {
    if !is_prime(p) {
        return Err(AlgebraError::InvalidInput(format!("{p} is not prime")));
    }
    if d == 0 {
        return Err(AlgebraError::DegreeZero);
    }
    check_cap("polynomial enumeration", (p as u128).saturating_pow(d as u32), POLY_ENUM_CAP)?;
    let mut out = Vec::new();
    for f in monic_of_degree(p, d) {
        if f.is_irreducible()? {
            out.push(f);
        }
    }
    Ok(out)
}

/// `GF(q)` as `Z/p[x]/(f)` with `f` the least monic irreducible of degree
/// `k`. Element `i` is the polynomial whose base-`p` digits are the
/// coefficients of `i`.
pub fn gf_ring(q: u64) -> Result<RingTable> {
    let (p, k) = prime_power(q).ok_or(AlgebraError::NotPrimePower(q))?;
    check_cap("field order", q as u128, TABLE_CAP as u128)?;
    let zp = RingTable::zmod(p as usize)?.with_label(format!("GF({p})"));
    if k == 1 {
        return Ok(zp);
    }
    let f = enumerate_irreducibles(p, k as usize)?
        .into_iter()
        .next()
        .expect("irreducibles exist in every degree");
    let modulus: Vec<Elem> = f.coeffs().iter().map(|&c| c as Elem).collect();
    Ok(quotient_by_monic(&zp, &modulus)?.with_label(format!("GF({q})")))
}

/// `base[x]/(f)` for `f` with invertible leading coefficient. Element index
/// is `sum c_i * |base|^i` over the coefficient vector of length `deg f`.
pub fn quotient_by_monic(base: &RingTable, modulus: &[Elem]) -> Result<RingTable> {
    let f = table_poly::trim(base, modulus.to_vec());
    let d = f.len().checked_sub(1).filter(|&d| d >= 1).ok_or(AlgebraError::DegreeZero)?;
    let lead_inv = base
        .inverse(f[d])
        .ok_or_else(|| AlgebraError::InvalidInput("leading coefficient is not a unit".into()))?;
    let f: Vec<Elem> = f.iter().map(|&c| base.mul(c, lead_inv)).collect();
    let q = base.order();
    let n = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    check_cap("quotient ring order", n, TABLE_CAP as u128)?;
    let n = n as usize;
    let vecs: Vec<Vec<Elem>> = (0..n).map(|m| digits(m as u64, q as u64, d).into_iter().map(|c| c as Elem).collect()).collect();
    let encode = |v: &[Elem]| v.iter().rev().fold(0usize, |acc, &c| acc * q + c);
    // x^i mod f for i < 2d - 1
    let mut powers: Vec<Vec<Elem>> = Vec::with_capacity(2 * d);
    let mut cur = vec![base.zero(); d];
    cur[0] = base.one();
    for _ in 0..(2 * d).saturating_sub(1) {
        powers.push(cur.clone());
        // multiply by x and reduce using x^d = -(f_0 + ... + f_{d-1} x^{d-1})
        let top = cur[d - 1];
        let mut next = vec![base.zero(); d];
        for i in (1..d).rev() {
            next[i] = cur[i - 1];
        }
        for (i, slot) in next.iter_mut().enumerate() {
            *slot = base.sub(*slot, base.mul(top, f[i]));
        }
        cur = next;
    }
    let add = |a: Elem, b: Elem| {
        let v: Vec<Elem> = vecs[a].iter().zip(&vecs[b]).map(|(&x, &y)| base.add(x, y)).collect();
        encode(&v)
    };
    let mul = |a: Elem, b: Elem| {
        let mut conv = vec![base.zero(); 2 * d - 1];
        for (i, &x) in vecs[a].iter().enumerate() {
            if x == base.zero() {
                continue;
            }
            for (j, &y) in vecs[b].iter().enumerate() {
                conv[i + j] = base.add(conv[i + j], base.mul(x, y));
            }
        }
        let mut out = vec![base.zero(); d];
        for (k, &c) in conv.iter().enumerate() {
            if c == base.zero() {
                continue;
            }
            for (slot, &pc) in out.iter_mut().zip(&powers[k]) {
                *slot = base.add(*slot, base.mul(c, pc));
            }
        }
        encode(&out)
    };
    let mut one = vec![base.zero(); d];
    one[0] = base.one();
    let zero = encode(&vec![base.zero(); d]);
    let label = format!("{}[x]/({})", base.label(), format_poly(&f.iter().map(|&c| c as u64).collect::<Vec<_>>()));
    RingTable::from_fn(label, n, add, mul, zero, encode(&one))
}

/// `GF(q)[x]/(f)`; coefficients of `f` are element indices of
/// [`gf_ring`]`(q)`, low degree first.
pub fn poly_quotient_ring(q: u64, modulus: &[u64]) -> Result<RingTable> {
    let field = gf_ring(q)?;
    if let Some(&c) = modulus.iter().find(|&&c| c >= q) {
        return Err(AlgebraError::InvalidInput(format!("coefficient {c} outside GF({q})")));
    }
    let f: Vec<Elem> = modulus.iter().map(|&c| c as Elem).collect();
    quotient_by_monic(&field, &f)
}

/// Polynomials with coefficients in an arbitrary finite field given as a
/// table. Used for `GF(q)` with `q` not prime.
pub mod table_poly {
    use crate::ring::{Elem, RingTable};

    pub fn trim(field: &RingTable, mut v: Vec<Elem>) -> Vec<Elem> {
        while v.last() == Some(&field.zero()) {
            v.pop();
        }
        v
    }

    pub fn mul(field: &RingTable, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![field.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(x, y));
            }
        }
        trim(field, out)
    }

    /// Remainder modulo a divisor with invertible leading coefficient.
    pub fn rem(field: &RingTable, a: &[Elem], divisor: &[Elem]) -> Vec<Elem> {
        let d = divisor.len() - 1;
        let lead_inv = field.inverse(divisor[d]).expect("unit leading coefficient");
        let mut r = trim(field, a.to_vec());
        while r.len() > d {
            let shift = r.len() - 1 - d;
            let factor = field.mul(r[r.len() - 1], lead_inv);
            for (i, &c) in divisor.iter().enumerate() {
                r[shift + i] = field.sub(r[shift + i], field.mul(c, factor));
            }
            r = trim(field, r);
        }
        r
    }

    pub fn eval(field: &RingTable, f: &[Elem], x: Elem) -> Elem {
        f.iter()
            .rev()
            .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// Monic polynomials of exact degree `d`, constant coefficient least
    /// significant.
    pub fn monic_of_degree(field: &RingTable, d: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let q = field.order();
        (0..q.pow(d as u32)).map(move |mut m| {
            let mut v = Vec::with_capacity(d + 1);
            for _ in 0..d {
                v.push(m % q);
                m /= q;
            }
            v.push(field.one());
            v
        })
    }

    pub fn is_irreducible(field: &RingTable, f: &[Elem]) -> bool {
        let d = f.len() - 1;
        (1..=d / 2).all(|k| monic_of_degree(field, k).all(|g| !rem(field, f, &g).is_empty()))
    }
}

/// One closed point of `Spec GF(q)[x]`: a monic irreducible and the order of
/// its residue field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    /// Coefficients as `GF(q)` element indices, low degree first.
    pub poly: Vec<u64>,
    pub degree: usize,
    pub residue_order: u64,
}

/// Maximal ideals `(f)` of `GF(q)[x]` with `deg f <= dmax`.
pub fn polyring_max_spectrum(q: u64, dmax: usize) -> Result<Vec<SpectrumEntry>> {
    let field = gf_ring(q)?;
    check_cap("spectrum enumeration", (q as u128).saturating_pow(dmax as u32), POLY_ENUM_CAP)?;
    let mut out = Vec::new();
    for d in 1..=dmax {
        for f in table_poly::monic_of_degree(&field, d) {
            if table_poly::is_irreducible(&field, &f) {
                out.push(SpectrumEntry {
                    poly: f.iter().map(|&c| c as u64).collect(),
                    degree: d,
                    residue_order: q.pow(d as u32),
                });
            }
        }
    }
    Ok(out)
}
