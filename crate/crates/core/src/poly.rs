//! Sparse multivariate polynomials with graded-lexicographic term order,
//! generic over an exact coefficient ring (rationals or cyclotomics).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::cyclotomic::Cyclotomic;
use crate::rational::{rat_int, Rational};

pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Exact division; None if not divisible (fields always divide).
    fn div(&self, o: &Self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;
}

impl Coeff for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        rat_int(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Coeff for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Cyclotomic::add(self, o)
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        Cyclotomic::mul(self, o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
    fn from_rational(q: &Rational) -> Self {
        Cyclotomic::from_rational(q.clone())
    }
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn try_div(&self, o: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<C: Coeff> {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, C>,
}

pub type QPoly = MultiPoly<Rational>;
pub type CPoly = MultiPoly<Cyclotomic>;

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable z_v (0-indexed).
    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial(e), C::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.insert_add(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&point[v]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn partial_derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let k = e[v];
            e[v] -= 1;
            out.insert_add(Monomial(e), c.mul(&C::from_rational(&rat_int(k as i64))));
        }
        out
    }

    /// Substitutes z_i -> z_i^r for every variable.
    pub fn raise_exponents(&self, r: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.0.iter().map(|e| e * r).collect()), c.clone()))
                .collect(),
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    /// Exact division: Some(q) with self = q * d, or None if d does not
    /// divide self. Single-divisor reduction in graded-lex order.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.nvars, d.nvars);
        let (dm, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut quo = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.try_div(dm)?;
            let qc = rc.div(dc)?;
            quo.insert_add(qm.clone(), qc.clone());
            let piece = MultiPoly::monomial(self.nvars, qm.0, qc);
            rem = rem.sub(&piece.mul(d));
        }
        Some(quo)
    }
}

impl QPoly {
    pub fn to_cyclotomic(&self) -> CPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), Cyclotomic::from_rational(c.clone())))
                .collect(),
        }
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("z{}", v + 1)
                    } else {
                        format!("z{}^{}", v + 1, e)
                    }
                })
                .collect();
            let cs = c.to_string();
            let part = if vars.is_empty() {
                cs
            } else if cs == "1" {
                vars.join("*")
            } else if cs == "-1" {
                format!("-{}", vars.join("*"))
            } else {
                format!("({})*{}", cs, vars.join("*"))
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn z(v: usize) -> QPoly {
        QPoly::var(3, v)
    }

    #[test]
    fn eval_examples() {
        let p = z(0).sub(&z(1)); // z1 - z2
        assert_eq!(p.eval(&[rat_int(3), rat_int(1), rat_int(0)]), rat_int(2));
        assert_eq!(
            QPoly::zero(3).eval(&[rat_int(1), rat_int(2), rat_int(3)]),
            rat_int(0)
        );
        let q = z(0).mul(&z(1)).mul(&z(2));
        assert_eq!(q.eval(&[rat_int(2), rat_int(3), rat_int(5)]), rat_int(30));
    }

    #[test]
    fn ring_identities() {
        let a = z(0).add(&z(1)).mul(&z(2).sub(&QPoly::one(3)));
        let b = z(1).mul(&z(1)).sub(&z(0));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.sub(&a), QPoly::zero(3));
        assert_eq!(a.add(&b).mul(&a.sub(&b)), a.mul(&a).sub(&b.mul(&b)));
    }

    #[test]
    fn division() {
        let d = z(0).sub(&z(1));
        let p = d.mul(&d).mul(&z(2).add(&QPoly::one(3)));
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, d.mul(&z(2).add(&QPoly::one(3))));
        // z1^2 - z2^2 not divisible by z3
        let nd = z(0).pow(2).sub(&z(1).pow(2));
        assert!(nd.div_exact(&z(2)).is_none());
        assert_eq!(nd.div_exact(&d).unwrap(), z(0).add(&z(1)));
    }

    #[test]
    fn derivative_and_raise() {
        let p = z(0).pow(2).mul(&z(1)); // z1^2 z2
        assert_eq!(p.partial_derivative(0), z(0).scale(&rat_int(2)).mul(&z(1)));
        assert_eq!(p.raise_exponents(2), z(0).pow(4).mul(&z(1).pow(2)));
    }

    #[test]
    fn graded_lex_ordering() {
        let lo = Monomial(vec![3, 0, 0]);
        let hi = Monomial(vec![1, 1, 2]);
        assert!(lo < hi); // degree 3 < degree 4
        let a = Monomial(vec![2, 1, 0]);
        let b = Monomial(vec![1, 2, 0]);
        assert!(b < a); // same degree, lex
    }

    #[test]
    fn scale_by_half() {
        let p = z(0).scale(&rat(1, 2));
        assert_eq!(p.add(&p), z(0));
    }
}
