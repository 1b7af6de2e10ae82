//! Rational functions in z_1..z_n with cyclotomic coefficients, kept with a
//! factored denominator whose factors are hyperplane atoms z_i or z_i - eta*z_j.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::{Cyclotomic, RootOfUnity};
use crate::poly::CPoly;

/// A linear factor that may appear in a denominator. `Diff { i, j, eta }`
/// is z_i - eta*z_j with i < j, the canonical orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Z(usize),
    Diff { i: usize, j: usize, eta: RootOfUnity },
}

impl Atom {
    pub fn to_poly(&self, nvars: usize) -> CPoly {
        match self {
            Atom::Z(i) => CPoly::var(nvars, *i),
            Atom::Diff { i, j, eta } => {
                let zi = CPoly::var(nvars, *i);
                let zj = CPoly::var(nvars, *j).scale(&eta.to_cyclotomic());
                zi.sub(&zj)
            }
        }
    }

    /// Coefficient of z_v in the atom (atoms are linear).
    pub fn coeff_of(&self, v: usize) -> Cyclotomic {
        match self {
            Atom::Z(i) => {
                if *i == v {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                }
            }
            Atom::Diff { i, j, eta } => {
                if *i == v {
                    Cyclotomic::one()
                } else if *j == v {
                    eta.to_cyclotomic().neg()
                } else {
                    Cyclotomic::zero()
                }
            }
        }
    }
}

/// Writes z_a - eta*z_b as scalar * atom in canonical orientation:
/// for a > b, z_a - eta*z_b = (-eta) * (z_b - eta^{-1} z_a).
pub fn oriented_diff(a: usize, b: usize, eta: RootOfUnity) -> (Cyclotomic, Atom) {
    assert_ne!(a, b, "degenerate difference z_i - eta*z_i");
    if a < b {
        (Cyclotomic::one(), Atom::Diff { i: a, j: b, eta })
    } else {
        (
            eta.to_cyclotomic().neg(),
            Atom::Diff { i: b, j: a, eta: eta.inv() },
        )
    }
}

/// num / prod atom^mult, with exact arithmetic throughout. Cancellation is
/// by trial division of the numerator by denominator atoms.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub nvars: usize,
    pub num: CPoly,
    pub den: BTreeMap<Atom, u32>,
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc { nvars, num: CPoly::zero(nvars), den: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc { nvars, num: CPoly::one(nvars), den: BTreeMap::new() }
    }

    pub fn from_poly(num: CPoly) -> Self {
        RatFunc { nvars: num.nvars, num, den: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Cyclotomic) -> Self {
        Self::from_poly(CPoly::constant(nvars, c))
    }

    /// 1 / atom.
    pub fn atom_inverse(nvars: usize, atom: Atom) -> Self {
        let mut den = BTreeMap::new();
        den.insert(atom, 1);
        RatFunc { nvars, num: CPoly::one(nvars), den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let atoms: Vec<Atom> = self.den.keys().copied().collect();
        for a in atoms {
            let ap = a.to_poly(self.nvars);
            while *self.den.get(&a).unwrap_or(&0) > 0 {
                match self.num.div_exact(&ap) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&a).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&a);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    fn den_poly(&self, skip_to: &BTreeMap<Atom, u32>) -> CPoly {
        // prod over atoms of (target multiplicity - own multiplicity)
        let mut p = CPoly::one(self.nvars);
        for (a, &target) in skip_to {
            let own = *self.den.get(a).unwrap_or(&0);
            for _ in own..target {
                p = p.mul(&a.to_poly(self.nvars));
            }
        }
        p
    }

    fn merged_den(&self, other: &Self) -> BTreeMap<Atom, u32> {
        let mut den = self.den.clone();
        for (a, &m) in &other.den {
            let e = den.entry(*a).or_insert(0);
            *e = (*e).max(m);
        }
        den
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let den = self.merged_den(other);
        let num = self
            .num
            .mul(&self.den_poly(&den))
            .add(&other.num.mul(&other.den_poly(&den)));
        let mut out = RatFunc { nvars: self.nvars, num, den };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        RatFunc { nvars: self.nvars, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut den = self.den.clone();
        for (a, &m) in &other.den {
            *den.entry(*a).or_insert(0) += m;
        }
        let mut out = RatFunc {
            nvars: self.nvars,
            num: self.num.mul(&other.num),
            den,
        };
        out.normalize();
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = RatFunc {
            nvars: self.nvars,
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        if out.num.is_zero() {
            out.den.clear();
        }
        out
    }

    pub fn mul_poly(&self, p: &CPoly) -> Self {
        let mut out = RatFunc {
            nvars: self.nvars,
            num: self.num.mul(p),
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    /// d/dz_v via the quotient rule; atoms are linear so their derivatives
    /// are the constant coefficients.
    pub fn partial_derivative(&self, v: usize) -> Self {
        let mut out = RatFunc {
            nvars: self.nvars,
            num: self.num.partial_derivative(v),
            den: self.den.clone(),
        };
        out.normalize();
        for (a, &m) in &self.den {
            let da = a.coeff_of(v);
            if da.is_zero() {
                continue;
            }
            // -m * da * num / (den * a)
            let mut den = self.den.clone();
            *den.get_mut(a).unwrap() += 1;
            let coeff = da.mul(&Cyclotomic::from_int(-(m as i64)));
            let mut term = RatFunc {
                nvars: self.nvars,
                num: self.num.scale(&coeff),
                den,
            };
            term.normalize();
            out = out.add(&term);
        }
        out
    }

    /// Substitutes z_i -> z_i^r. Denominator atoms must have eta = 1, in
    /// which case z_i^r - z_j^r splits into the atoms z_i - eta*z_j over
    /// all eta in mu_r.
    pub fn substitute_powers(&self, r: u32) -> Result<Self, crate::error::Error> {
        let num = self.num.raise_exponents(r);
        let mut den: BTreeMap<Atom, u32> = BTreeMap::new();
        for (a, &m) in &self.den {
            match a {
                Atom::Z(i) => {
                    *den.entry(Atom::Z(*i)).or_insert(0) += m * r;
                }
                Atom::Diff { i, j, eta } => {
                    if !eta.is_one() {
                        return Err(crate::error::Error::Validation(format!(
                            "power substitution needs plain differences, found eta = {eta}"
                        )));
                    }
                    for e in 0..r {
                        let atom = Atom::Diff {
                            i: *i,
                            j: *j,
                            eta: RootOfUnity::from_exp(e as i64, r as u64),
                        };
                        *den.entry(atom).or_insert(0) += m;
                    }
                }
            }
        }
        let mut out = RatFunc { nvars: self.nvars, num, den };
        out.normalize();
        Ok(out)
    }

    pub fn eval(&self, point: &[Cyclotomic]) -> Option<Cyclotomic> {
        let mut d = Cyclotomic::one();
        for (a, &m) in &self.den {
            let v = a.to_poly(self.nvars).eval(point);
            if v.is_zero() {
                return None;
            }
            d = d.mul(&v.pow(m));
        }
        Some(self.num.eval(point).mul(&d.inv().unwrap()))
    }
}

impl PartialEq for RatFunc {
    /// Cross-multiplication; denominator atoms are nonzero polynomials.
    fn eq(&self, other: &Self) -> bool {
        let lhs = self.num.mul(&other.full_den());
        let rhs = other.num.mul(&self.full_den());
        lhs == rhs
    }
}

impl Eq for RatFunc {}

impl RatFunc {
    fn full_den(&self) -> CPoly {
        let mut p = CPoly::one(self.nvars);
        for (a, &m) in &self.den {
            p = p.mul(&a.to_poly(self.nvars).pow(m));
        }
        p
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Z(i) => write!(f, "z{}", i + 1),
            Atom::Diff { i, j, eta } => {
                if eta.is_one() {
                    write!(f, "z{}-z{}", i + 1, j + 1)
                } else {
                    write!(f, "z{}-({})*z{}", i + 1, eta, j + 1)
                }
            }
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(a, m)| {
                if *m == 1 {
                    format!("({a})")
                } else {
                    format!("({a})^{m}")
                }
            })
            .collect();
        write!(f, "({}) / {}", self.num, den.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, v: usize) -> RatFunc {
        RatFunc::from_poly(CPoly::var(n, v))
    }

    fn diff_inv(n: usize, a: usize, b: usize) -> RatFunc {
        RatFunc::atom_inverse(n, Atom::Diff { i: a, j: b, eta: RootOfUnity::one() })
    }

    #[test]
    fn partial_fractions() {
        // 1/(z1-z2) * 1/(z2-z3) = [1/(z1-z2) + 1/(z2-z3)] * 1/(z1-z3)
        let lhs = diff_inv(3, 0, 1).mul(&diff_inv(3, 1, 2));
        let rhs = diff_inv(3, 0, 1)
            .add(&diff_inv(3, 1, 2))
            .mul(&diff_inv(3, 0, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cancellation() {
        // (z1 - z2) * 1/(z1-z2) = 1
        let d = z(2, 0).sub(&z(2, 1));
        let p = d.mul(&diff_inv(2, 0, 1));
        assert!(p.den.is_empty());
        assert_eq!(p, RatFunc::one(2));
    }

    #[test]
    fn orientation() {
        // z2 - z1 = -(z1 - z2): oriented_diff flips sign and direction
        let (c, a) = oriented_diff(1, 0, RootOfUnity::one());
        assert_eq!(a, Atom::Diff { i: 0, j: 1, eta: RootOfUnity::one() });
        assert_eq!(c, Cyclotomic::from_int(-1));
        // z2 + z1 = z2 - (-1)z1 = -(-1)(z1 - (-1)z2) = z1 + z2
        let (c, a) = oriented_diff(1, 0, RootOfUnity::from_exp(1, 2));
        assert_eq!(a, Atom::Diff { i: 0, j: 1, eta: RootOfUnity::from_exp(1, 2) });
        assert_eq!(c, Cyclotomic::one());
    }

    #[test]
    fn derivative_of_inverse() {
        // d/dz1 [1/(z1-z2)] = -1/(z1-z2)^2
        let f = diff_inv(2, 0, 1);
        let df = f.partial_derivative(0);
        let expected = f.mul(&f).neg();
        assert_eq!(df, expected);
        // d/dz2 [1/(z1-z2)] = +1/(z1-z2)^2
        assert_eq!(f.partial_derivative(1), f.mul(&f));
        // numeric spot check at (z1,z2) = (3,1): -1/4
        let v = df
            .eval(&[Cyclotomic::from_int(3), Cyclotomic::from_int(1)])
            .unwrap();
        assert_eq!(v.expect_rational(), crate::rational::rat(-1, 4));
    }

    #[test]
    fn quotient_rule_matches_numeric_difference() {
        // f = z1^2/(z1-z2); check df/dz1 by evaluating the symbolic result
        let f = z(2, 0).mul(&z(2, 0)).mul(&diff_inv(2, 0, 1));
        let df = f.partial_derivative(0);
        // exact derivative: (2 z1 (z1-z2) - z1^2)/(z1-z2)^2 at (5,2) = (30-25)/9
        let v = df
            .eval(&[Cyclotomic::from_int(5), Cyclotomic::from_int(2)])
            .unwrap();
        assert_eq!(v.expect_rational(), crate::rational::rat(5, 9));
    }

    #[test]
    fn power_substitution_splits_atoms() {
        // 1/(z1-z2) with z -> z^2 gives 1/(z1^2 - z2^2) = 1/((z1-z2)(z1+z2))
        let f = diff_inv(2, 0, 1);
        let g = f.substitute_powers(2).unwrap();
        assert_eq!(g.den.len(), 2);
        let direct = RatFunc::from_poly(
            CPoly::var(2, 0).pow(2).sub(&CPoly::var(2, 1).pow(2)),
        );
        assert_eq!(g.mul(&direct), RatFunc::one(2));
        // twisted atoms are rejected
        let tw = RatFunc::atom_inverse(
            2,
            Atom::Diff { i: 0, j: 1, eta: RootOfUnity::from_exp(1, 2) },
        );
        assert!(tw.substitute_powers(2).is_err());
    }

    #[test]
    fn add_zero_and_scaling() {
        let f = diff_inv(3, 0, 2);
        assert_eq!(f.add(&f.neg()), RatFunc::zero(3));
        assert_eq!(
            f.scale(&Cyclotomic::from_int(2)),
            f.add(&f)
        );
        let v = f
            .eval(&[Cyclotomic::from_int(4), Cyclotomic::zero(), Cyclotomic::from_int(2)])
            .unwrap();
        assert_eq!(v, Cyclotomic::from_rational(crate::rational::rat(1, 2)));
    }
}
