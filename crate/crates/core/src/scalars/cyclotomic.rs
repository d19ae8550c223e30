//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored as the remainder of a rational polynomial in `z = ζ_N`
//! modulo the N-th cyclotomic polynomial Φ_N, so two values of the same order
//! are equal iff their coefficient vectors are equal. Values of different
//! orders are compared (and combined) after lifting both to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Reduction data for one order N: Φ_N and the reduced form of every ζ^k.
#[derive(Debug)]
struct CycloBasis {
    degree: usize,
    phi: Vec<BigInt>,
    powers: Vec<Vec<i64>>,
}

fn poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic with integer coefficients, so the quotient stays integral.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    q
}

/// The N-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    basis(n).phi.clone()
}

fn compute_phi(n: u32) -> Vec<BigInt> {
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = poly_exact_div(&poly, &basis(d).phi);
        }
    }
    poly
}

fn basis(n: u32) -> Arc<CycloBasis> {
    assert!(n >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&n) {
        return b.clone();
    }
    // computed outside the lock: compute_phi recurses into basis()
    let phi = compute_phi(n);
    let degree = phi.len() - 1;
    let phi_i64: Vec<i64> = phi
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient overflow"))
        .collect();
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    if degree > 0 {
        cur[0] = 1;
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by z and reduce the overflow term
        let top = if degree > 0 { cur[degree - 1] } else { 0 };
        let mut next = vec![0i64; degree];
        for i in (1..degree).rev() {
            next[i] = cur[i - 1];
        }
        if top != 0 {
            for i in 0..degree {
                next[i] = next[i]
                    .checked_sub(top.checked_mul(phi_i64[i]).expect("overflow"))
                    .expect("overflow");
            }
        }
        cur = next;
    }
    let b = Arc::new(CycloBasis {
        degree,
        phi,
        powers,
    });
    cache.lock().unwrap().entry(n).or_insert(b).clone()
}

pub fn euler_phi(n: u32) -> usize {
    basis(n).degree
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An element of Q(ζ_N) in canonical reduced form.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Mul,
    Conj,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let d = basis(order).degree;
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); d],
        }
    }

    pub fn from_rational(q: Rational, order: u32) -> Self {
        let mut c = Cyclotomic::zero(order);
        c.coeffs[0] = q;
        c
    }

    pub fn from_int(v: i64, order: u32) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(BigInt::from(v)), order)
    }

    pub fn one(order: u32) -> Self {
        Cyclotomic::from_int(1, order)
    }

    /// ζ_N^k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let b = basis(order);
        let k = k.rem_euclid(order as i64) as usize;
        Cyclotomic {
            order,
            coeffs: b.powers[k]
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Reduces `Σ raw[k] ζ_N^k` (any length; indices are taken mod N).
    pub fn normalize(raw: &[Rational], order: u32) -> Self {
        let b = basis(order);
        let mut folded = vec![Rational::zero(); order as usize];
        for (k, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                folded[k % order as usize] += c;
            }
        }
        let mut coeffs = vec![Rational::zero(); b.degree];
        for (k, c) in folded.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &w) in b.powers[k].iter().enumerate() {
                if w != 0 {
                    coeffs[i] += c * Rational::from_integer(BigInt::from(w));
                }
            }
        }
        Cyclotomic { order, coeffs }
    }

    /// `Σ counts[k] ζ_N^k` with integer weights; the fast path for character sums.
    pub fn from_power_counts(order: u32, counts: &[i64]) -> Self {
        let b = basis(order);
        let mut acc = vec![0i128; b.degree];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &w) in b.powers[k % order as usize].iter().enumerate() {
                acc[i] += c as i128 * w as i128;
            }
        }
        Cyclotomic {
            order,
            coeffs: acc
                .into_iter()
                .map(|v| Rational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Re-expresses the value in Q(ζ_m); `m` must be a multiple of the order.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.order), "cannot lift order {} to {}", self.order, m);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut raw = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Cyclotomic::normalize(&raw, m)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.order, b.order);
        (a.lift(m), b.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.order == other.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x + y)
                .collect();
            return Cyclotomic {
                order: self.order,
                coeffs,
            };
        }
        let (a, b) = Cyclotomic::common(self, other);
        a.add(&b)
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = Cyclotomic::common(self, other);
            return a.mul(&b);
        }
        let d = self.coeffs.len();
        let mut raw = vec![Rational::zero(); (2 * d).max(1)];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Cyclotomic::normalize(&raw, self.order)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Complex conjugation, ζ_N ↦ ζ_N^{N-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The Galois automorphism ζ_N ↦ ζ_N^k, `k` coprime to N.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        let mut raw = vec![Rational::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(i as i64 * k).rem_euclid(n) as usize] += c;
        }
        Cyclotomic::normalize(&raw, self.order)
    }

    pub fn apply(&self, other: &Self, op: CycloOp) -> Self {
        match op {
            CycloOp::Add => self.add(other),
            CycloOp::Mul => self.mul(other),
            CycloOp::Conj => self.conj(),
        }
    }

    /// Numeric value at ζ_N = e^{2πi/N}, for cross-checks and CSV output only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Parses the textual polynomial form produced by `Display`.
    pub fn parse(s: &str, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty cyclotomic string".into()));
        }
        let mut raw: Vec<Rational> = vec![Rational::zero(); order as usize];
        let bytes = t.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = Rational::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(Error::Parse(format!("expected sign at offset {pos} in {s:?}")));
            }
            let end = t[pos..]
                .find(['+', '-'])
                .map(|e| pos + e)
                .unwrap_or(bytes.len());
            let term = &t[pos..end];
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let (coef, exp) = parse_term(term)?;
            let idx = (exp % order as u64) as usize;
            raw[idx] += sign * coef;
            pos = end;
        }
        Ok(Cyclotomic::normalize(&raw, order))
    }

    /// Lexicographic comparison of coefficient vectors (same order only).
    pub fn cmp_coeffs(&self, other: &Self) -> std::cmp::Ordering {
        let m = lcm(self.order, other.order);
        let (a, b) = (self.lift(m), other.lift(m));
        a.coeffs.cmp(&b.coeffs)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    if s.len() > 64 {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() || d.is_negative() || n.is_negative() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            if n.is_negative() {
                return Err(bad());
            }
            Ok(Rational::from_integer(n))
        }
    }
}

fn parse_term(term: &str) -> Result<(Rational, u64)> {
    let (coef, mono) = match term.find('z') {
        None => return Ok((parse_rational(term)?, 0)),
        Some(0) => (Rational::one(), term),
        Some(i) => {
            let c = term[..i]
                .strip_suffix('*')
                .ok_or_else(|| Error::Parse(format!("missing '*' in {term:?}")))?;
            (parse_rational(c)?, &term[i..])
        }
    };
    let exp = match mono.strip_prefix('z') {
        Some("") => 1,
        Some(rest) => {
            let e = rest
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("bad monomial {mono:?}")))?;
            if e.len() > 18 {
                return Err(Error::Parse(format!("exponent too large in {mono:?}")));
            }
            e.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad exponent in {mono:?}")))?
        }
        None => return Err(Error::Parse(format!("bad monomial {mono:?}"))),
    };
    Ok((coef, exp))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyclotomic::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[N={}] {}", self.order, self)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::add(self, rhs)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::sub(self, rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::mul(self, rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn phi_small() {
        let show = |n| {
            cyclotomic_poly(n)
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(1), vec![-1, 1]);
        assert_eq!(show(3), vec![1, 1, 1]);
        assert_eq!(show(4), vec![1, 0, 1]);
        assert_eq!(show(6), vec![1, -1, 1]);
        assert_eq!(show(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn normalize_examples() {
        assert!(Cyclotomic::normalize(&[q(1), q(1), q(1)], 3).is_zero());
        assert!(Cyclotomic::normalize(&[q(1), q(0), q(1)], 4).is_zero());
        let z3 = Cyclotomic::normalize(&[q(0), q(0), q(0), q(1)], 6);
        assert_eq!(z3, Cyclotomic::from_int(-1, 6));
    }

    #[test]
    fn arithmetic_examples() {
        let z = Cyclotomic::zeta_pow(3, 1);
        let zc = z.conj();
        assert_eq!(zc, Cyclotomic::zeta_pow(3, 2));
        assert_eq!(zc.coeffs(), &[q(-1), q(-1)]);
        assert_eq!(z.mul(&zc), Cyclotomic::one(3));
        let minus_one = Cyclotomic::zeta_pow(2, 1).lift(6);
        assert_eq!(minus_one, Cyclotomic::from_int(-1, 6));
        assert_eq!(minus_one.coeffs()[0], q(-1));
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 1..=24u32 {
            let raw = vec![q(1); n as usize];
            let s = Cyclotomic::normalize(&raw, n);
            assert_eq!(s.is_zero(), n > 1, "N={n}");
        }
    }

    #[test]
    fn mixed_order_equality() {
        let a = Cyclotomic::zeta_pow(3, 1);
        let b = Cyclotomic::zeta_pow(6, 2);
        assert_eq!(a, b);
        assert_eq!(a.add(&Cyclotomic::zeta_pow(4, 1)).order(), 12);
    }

    #[test]
    fn display_parse_roundtrip() {
        let x = Cyclotomic::normalize(&[Rational::new(BigInt::from(1), BigInt::from(2)), q(0), q(3)], 7);
        assert_eq!(x.to_string(), "1/2 + 3*z^2");
        assert_eq!(Cyclotomic::parse("1/2 + 3*z^2", 7).unwrap(), x);
        assert_eq!(Cyclotomic::parse("-z", 3).unwrap(), Cyclotomic::zeta_pow(3, 1).neg());
        assert_eq!(Cyclotomic::zero(5).to_string(), "0");
        assert!(Cyclotomic::parse("1/0", 3).is_err());
        assert!(Cyclotomic::parse("z^", 3).is_err());
        assert!(Cyclotomic::parse("", 3).is_err());
        assert!(Cyclotomic::parse("2z", 3).is_err());
    }

    fn arb_cyclo(n: u32) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-5i64..5, n as usize)
            .prop_map(move |v| Cyclotomic::normalize(&v.into_iter().map(q).collect::<Vec<_>>(), n))
    }

    fn raw_numeric(raw: &[i64], n: u32) -> (f64, f64) {
        raw.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (re + c as f64 * a.cos(), im + c as f64 * a.sin())
        })
    }

    proptest! {
        #[test]
        fn normalize_matches_numeric(n in 1u32..25, raw in proptest::collection::vec(-4i64..5, 0..40)) {
            let c = Cyclotomic::normalize(&raw.iter().map(|&v| q(v)).collect::<Vec<_>>(), n);
            let (a, b) = c.to_complex();
            let (x, y) = raw_numeric(&raw, n);
            prop_assert!((a - x).abs() < 1e-9 && (b - y).abs() < 1e-9);
            // idempotent
            let again = Cyclotomic::normalize(c.coeffs(), n);
            prop_assert_eq!(again, c);
        }

        #[test]
        fn conj_is_involutive_automorphism(
            (x, y) in (1u32..13).prop_flat_map(|n| (arb_cyclo(n), arb_cyclo(n)))
        ) {
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
            prop_assert_eq!(x.add(&y).conj(), x.conj().add(&y.conj()));
        }

        #[test]
        fn text_roundtrip(x in (1u32..16).prop_flat_map(arb_cyclo)) {
            let s = x.to_string();
            prop_assert_eq!(Cyclotomic::parse(&s, x.order()).unwrap(), x);
        }
    }
}
