//! Exact arithmetic in cyclotomic fields Q(zeta_m), power basis modulo the
//! m-th cyclotomic polynomial. Conductors are merged to the lcm on demand.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use num::{One, Zero};

use crate::rational::{rat_int, Rational};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn euler_phi(mut d: u64) -> u64 {
    let mut result = d;
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            while d % p == 0 {
                d /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if d > 1 {
        result -= result / d;
    }
    result
}

pub fn moebius(d: u64) -> i64 {
    assert!(d >= 1);
    let mut d = d;
    let mut count = 0u32;
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            d /= p;
            if d % p == 0 {
                return 0;
            }
            count += 1;
        }
        p += 1;
    }
    if d > 1 {
        count += 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

// ---- univariate polynomial helpers over Q, dense, used only for cyclotomics ----

fn upoly_trim(p: &mut Vec<Rational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn upoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Division with remainder by a monic divisor.
fn upoly_div_rem_monic(a: &[Rational], d: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(d.last().map_or(false, |c| c.is_one()));
    let mut rem: Vec<Rational> = a.to_vec();
    upoly_trim(&mut rem);
    let dd = d.len() - 1;
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let lead = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - dd;
        quo[shift] = lead.clone();
        for (k, dk) in d.iter().enumerate() {
            let v = &lead * dk;
            rem[shift + k] -= v;
        }
        upoly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    upoly_trim(&mut quo);
    (quo, rem)
}

/// Coefficients of the m-th cyclotomic polynomial, low degree first, monic.
pub fn cyclotomic_polynomial(m: u64) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Rational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by the product of Phi_d over proper divisors d of m.
    let mut xm1 = vec![Rational::zero(); m as usize + 1];
    xm1[0] = -rat_int(1);
    xm1[m as usize] = rat_int(1);
    let mut divisor = vec![rat_int(1)];
    for d in 1..m {
        if m % d == 0 {
            divisor = upoly_mul(&divisor, &cyclotomic_polynomial(d));
        }
    }
    let (quo, rem) = upoly_div_rem_monic(&xm1, &divisor);
    assert!(rem.is_empty(), "cyclotomic polynomial division must be exact");
    cache.lock().unwrap().insert(m, quo.clone());
    quo
}

/// An element of Q(zeta_m) stored as a vector of length phi(m) in the power
/// basis 1, zeta, ..., zeta^{phi(m)-1} modulo the cyclotomic polynomial.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    m: u64,
    c: Vec<Rational>,
}

impl Cyclotomic {
    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn zero() -> Self {
        Cyclotomic { m: 1, c: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic { m: 1, c: vec![rat_int(1)] }
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { m: 1, c: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// zeta_m^k.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        assert!(m >= 1);
        let k = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![Rational::zero(); k + 1];
        raw[k] = rat_int(1);
        Self::reduce(m, raw)
    }

    /// Reduces an arbitrary-degree coefficient vector in zeta_m modulo Phi_m.
    fn reduce(m: u64, raw: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        let (_, mut rem) = upoly_div_rem_monic(&raw, &phi);
        rem.resize(deg.max(1), Rational::zero());
        Cyclotomic { m, c: rem }
    }

    /// Embeds into Q(zeta_target); target must be a multiple of the conductor.
    pub fn embed(&self, target: u64) -> Self {
        assert!(target % self.m == 0);
        if target == self.m {
            return self.clone();
        }
        let step = (target / self.m) as usize;
        let mut raw = vec![Rational::zero(); (self.c.len() - 1) * step + 1];
        for (k, ck) in self.c.iter().enumerate() {
            raw[k * step] = ck.clone();
        }
        Self::reduce(target, raw)
    }

    fn merged(&self, other: &Self) -> (Self, Self, u64) {
        let m = lcm(self.m, other.m);
        (self.embed(m), other.embed(m), m)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, m) = self.merged(other);
        let c = a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect();
        Cyclotomic { m, c }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { m: self.m, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, m) = self.merged(other);
        Self::reduce(m, upoly_mul(&a.c, &b.c))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic { m: self.m, c: self.c.iter().map(|x| x * q).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Complex conjugation, the Galois map zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        let mut acc = Cyclotomic::zero();
        for (k, ck) in self.c.iter().enumerate() {
            if !ck.is_zero() {
                let z = Cyclotomic::root_of_unity(self.m, -(k as i64)).scale(ck);
                acc = acc.add(&z);
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_m.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi = cyclotomic_polynomial(self.m);
        // Extended gcd over Q[x]: find u with u*a + v*Phi = gcd (a nonzero, Phi
        // irreducible, so gcd is a nonzero constant).
        let mut r0: Vec<Rational> = phi.clone();
        let mut r1: Vec<Rational> = self.c.clone();
        upoly_trim(&mut r1);
        let mut u0: Vec<Rational> = vec![];
        let mut u1: Vec<Rational> = vec![rat_int(1)];
        while r1.len() > 1 {
            // Make r1 monic for division, tracking the scalar.
            let lead = r1.last().unwrap().clone();
            let r1m: Vec<Rational> = r1.iter().map(|c| c / &lead).collect();
            let (q, rem) = upoly_div_rem_monic(&r0, &r1m);
            // r0 = (q/lead)*r1 + rem
            let q_scaled: Vec<Rational> = q.iter().map(|c| c / &lead).collect();
            let qu1 = upoly_mul(&q_scaled, &u1);
            let mut new_u = u0.clone();
            new_u.resize(new_u.len().max(qu1.len()), Rational::zero());
            for (k, v) in qu1.iter().enumerate() {
                new_u[k] -= v;
            }
            upoly_trim(&mut new_u);
            r0 = r1;
            r1 = rem;
            u0 = u1;
            u1 = new_u;
        }
        assert!(!r1.is_empty(), "gcd with irreducible Phi_m must be constant");
        let g = r1[0].clone();
        let inv_coeffs: Vec<Rational> = u1.iter().map(|c| c / &g).collect();
        Some(Self::reduce(self.m, inv_coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(|x| x.is_zero())
    }

    /// The rational value, if the element visibly lies in Q in this conductor.
    /// Falls back to testing against the degree-1 reduction.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            return Some(self.c[0].clone());
        }
        None
    }

    /// Exact rational value after checking equality with its own conjugate
    /// trace; used for character values known to be rational.
    pub fn expect_rational(&self) -> Rational {
        self.to_rational()
            .unwrap_or_else(|| panic!("value {self} is not rational"))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.merged(other);
        a.c == b.c
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for (k, ck) in self.c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let basis = match k {
                0 => String::new(),
                1 => format!("z{}", self.m),
                _ => format!("z{}^{}", self.m, k),
            };
            let part = if basis.is_empty() {
                crate::rational::format_rational(ck)
            } else if ck.is_one() {
                basis
            } else if (-ck).is_one() {
                format!("-{basis}")
            } else {
                format!("{}*{}", crate::rational::format_rational(ck), basis)
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The sum of zeta^a over all zeta in mu_r: r if r | a, else 0.
pub fn root_of_unity_sum(r: u64, a: i64) -> Rational {
    assert!(r >= 1);
    if a.rem_euclid(r as i64) == 0 {
        rat_int(r as i64)
    } else {
        rat_int(0)
    }
}

/// A root of unity e^{2 pi i k/m} in lowest terms; canonical across ambient
/// groups mu_r, so atoms z_i - eta z_j compare equal independently of r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    k: u64,
    m: u64,
}

impl RootOfUnity {
    pub fn one() -> Self {
        RootOfUnity { k: 0, m: 1 }
    }

    /// zeta_r^e reduced to lowest terms.
    pub fn from_exp(e: i64, r: u64) -> Self {
        assert!(r >= 1);
        let e = e.rem_euclid(r as i64) as u64;
        if e == 0 {
            return Self::one();
        }
        let g = gcd(e, r);
        RootOfUnity { k: e / g, m: r / g }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    pub fn inv(&self) -> Self {
        if self.k == 0 {
            *self
        } else {
            RootOfUnity { k: self.m - self.k, m: self.m }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.m, other.m);
        let k = (self.k * (m / self.m) + other.k * (m / other.m)) % m;
        Self::from_exp(k as i64, m)
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.m, self.k as i64)
    }

    /// Exponent with respect to mu_r; the order must divide r.
    pub fn exp_in(&self, r: u64) -> u64 {
        assert!(r % self.m == 0);
        self.k * (r / self.m)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "1")
        } else if self.m == 2 {
            write!(f, "-1")
        } else if self.k == 1 {
            write!(f, "z{}", self.m)
        } else {
            write!(f, "z{}^{}", self.m, self.k)
        }
    }
}
