//! Exact exterior calculus on the arrangement complements: differential
//! forms with factored rational-function coefficients, the wedge product,
//! the (twisted) exterior derivative, the covering-map pullback, the
//! explicit basis forms beta_bar(F), and the realization of abstract
//! forest classes as honest forms (the independence/relations oracle).

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::{Cyclotomic, RootOfUnity};
use crate::error::Error;
use crate::forest::Forest;
use crate::group::{all_exponent_vectors, Perm, WElem};
use crate::local_system::{b_exponents, beta_element, is_breakable, WeightVector};
use crate::os_algebra::{OSElement, OsReducer};
use crate::poly::CPoly;
use crate::ratfunc::{oriented_diff, Atom, RatFunc};

/// A differential form on the complement of a hyperplane arrangement in
/// variables z_1..z_n: a sparse map from strictly increasing index tuples
/// (the wedge dz_{i1} ∧ ... ∧ dz_{ip}) to rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialForm {
    pub n: usize,
    pub terms: BTreeMap<Vec<usize>, RatFunc>,
}

/// Merges two strictly increasing tuples, returning the merged tuple and
/// the sign of the permutation that sorts the concatenation; None when
/// an index repeats (the wedge vanishes).
fn merge_signed(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] moves past the remaining entries of a
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

impl DifferentialForm {
    pub fn zero(n: usize) -> Self {
        DifferentialForm { n, terms: BTreeMap::new() }
    }

    pub fn from_scalar(n: usize, c: RatFunc) -> Self {
        let mut out = Self::zero(n);
        out.insert_add(vec![], c);
        out
    }

    pub fn one(n: usize) -> Self {
        Self::from_scalar(n, RatFunc::one(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_add(&mut self, key: Vec<usize>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                let sum = x.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *x = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        DifferentialForm {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.n);
        for (k, x) in &self.terms {
            out.insert_add(k.clone(), x.scale(c));
        }
        out
    }

    pub fn mul_ratfunc(&self, f: &RatFunc) -> Self {
        let mut out = Self::zero(self.n);
        for (k, x) in &self.terms {
            out.insert_add(k.clone(), x.mul(f));
        }
        out
    }

    /// The graded anti-commutative exterior product.
    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = Self::zero(self.n);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                if let Some((key, sign)) = merge_signed(k1, k2) {
                    let mut c = c1.mul(c2);
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.insert_add(key, c);
                }
            }
        }
        out
    }

    /// The exterior derivative, computed termwise via the quotient rule
    /// on the factored coefficients.
    pub fn exterior_derivative(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (key, c) in &self.terms {
            for v in 0..self.n {
                if key.contains(&v) {
                    continue;
                }
                let dc = c.partial_derivative(v);
                if dc.is_zero() {
                    continue;
                }
                // dz_v moves into its sorted slot from the front
                let pos = key.iter().take_while(|&&u| u < v).count();
                let mut k = key.clone();
                k.insert(pos, v);
                let signed = if pos % 2 == 1 { dc.neg() } else { dc };
                out.insert_add(k, signed);
            }
        }
        out
    }

    /// Substitution z_i -> z_i^r, dz_i -> r z_i^{r-1} dz_i; denominators
    /// z_i^r - z_j^r re-factor into the r atoms z_i - eta z_j.
    pub fn pullback_power(&self, r: u32) -> Result<Self, Error> {
        let mut out = Self::zero(self.n);
        for (key, c) in &self.terms {
            let mut sub = c.substitute_powers(r)?;
            for &i in key {
                let mut exps = vec![0u32; self.n];
                exps[i] = r - 1;
                let m = CPoly::monomial(self.n, exps, Cyclotomic::from_int(r as i64));
                sub = sub.mul_poly(&m);
            }
            out.insert_add(key.clone(), sub);
        }
        Ok(out)
    }

    /// Canonical LaTeX rendering, one summand per term.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(key, c)| {
                let coeff = ratfunc_latex(c);
                if key.is_empty() {
                    coeff
                } else {
                    let dz: Vec<String> =
                        key.iter().map(|i| format!("dz_{{{}}}", i + 1)).collect();
                    format!("{} \\, {}", coeff, dz.join(" \\wedge "))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Rewrites plain variable names "z7" to LaTeX subscripts "z_{7}".
fn subscript_vars(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 8);
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == 'z' {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
            }
            if !digits.is_empty() {
                out.push_str(&format!("_{{{digits}}}"));
            }
        }
    }
    out
}

fn ratfunc_latex(f: &RatFunc) -> String {
    let num = subscript_vars(&format!("{}", f.num));
    if f.den.is_empty() {
        return format!("\\left({}\\right)", num);
    }
    let den: Vec<String> = f
        .den
        .iter()
        .map(|(a, m)| {
            let base = subscript_vars(&format!("({a})"));
            if *m == 1 {
                base
            } else {
                format!("{base}^{{{m}}}")
            }
        })
        .collect();
    format!("\\frac{{{}}}{{{}}}", num, den.join(""))
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(key, c)| {
                if key.is_empty() {
                    format!("({c})")
                } else {
                    let dz: Vec<String> =
                        key.iter().map(|i| format!("dz{}", i + 1)).collect();
                    format!("({c}) {}", dz.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The 1-form dz_i.
pub fn dz(n: usize, i: usize) -> DifferentialForm {
    let mut out = DifferentialForm::zero(n);
    out.insert_add(vec![i], RatFunc::one(n));
    out
}

/// The logarithmic generator omega_i = dz_i / z_i.
pub fn omega(n: usize, i: usize) -> DifferentialForm {
    let mut out = DifferentialForm::zero(n);
    out.insert_add(vec![i], RatFunc::atom_inverse(n, Atom::Z(i)));
    out
}

/// The generator omega_{i,j,eta} = (dz_i - eta dz_j) / (z_i - eta z_j);
/// i and j in either order, the denominator atom is kept canonical.
pub fn omega_edge(n: usize, i: usize, j: usize, eta: RootOfUnity) -> DifferentialForm {
    let (c, atom) = oriented_diff(i, j, eta);
    let inv = RatFunc::atom_inverse(n, atom).scale(&c.inv().expect("roots of unity invert"));
    let mut out = DifferentialForm::zero(n);
    out.insert_add(vec![i], inv.clone());
    out.insert_add(vec![j], inv.scale(&eta.to_cyclotomic().neg()));
    out
}

/// The monomial z_1^{e_1} ... z_n^{e_n} with integer (possibly negative)
/// exponents, as a factored rational function.
pub fn z_monomial(n: usize, exps: &[i64]) -> RatFunc {
    assert_eq!(exps.len(), n);
    let mut pos = vec![0u32; n];
    let mut den = BTreeMap::new();
    for (i, &e) in exps.iter().enumerate() {
        if e >= 0 {
            pos[i] = e as u32;
        } else {
            den.insert(Atom::Z(i), (-e) as u32);
        }
    }
    RatFunc { nvars: n, num: CPoly::monomial(n, pos, Cyclotomic::one()), den }
}

/// The twisting 1-form sum_i a_i omega_i.
pub fn weight_one_form(a: &WeightVector) -> DifferentialForm {
    let n = a.n();
    let mut out = DifferentialForm::zero(n);
    for i in 0..n {
        out = out.add(&omega(n, i).scale(&Cyclotomic::from_rational(a.a[i].clone())));
    }
    out
}

/// d f + (sum_i a_i omega_i) ∧ f, the differential computing the twisted
/// cohomology for the weight vector a.
pub fn twisted_differential(a: &WeightVector, f: &DifferentialForm) -> DifferentialForm {
    f.exterior_derivative().add(&weight_one_form(a).wedge(f))
}

/// The literal form alpha(F): factor i in slot i, with open roots giving
/// the scalar eps_i(F), closed roots omega_i, and edges omega_{i,j,eta}.
pub fn alpha_form(f: &Forest) -> DifferentialForm {
    let n = f.n;
    let mut out = DifferentialForm::one(n);
    for i in 0..n {
        let factor = match f.parent[i] {
            Some((j, e)) => omega_edge(n, i, j, RootOfUnity::from_exp(e as i64, f.r)),
            None if f.closed[i] => omega(n, i),
            None => DifferentialForm::from_scalar(
                n,
                RatFunc::constant(n, Cyclotomic::from_int(f.epsilon_i(i))),
            ),
        };
        out = out.wedge(&factor);
    }
    out
}

/// Realizes a linear combination of forest classes as an honest form by
/// sending each class to its literal wedge product.
pub fn realize_os(x: &OSElement) -> DifferentialForm {
    let mut out = DifferentialForm::zero(x.n);
    for (f, c) in &x.terms {
        out = out.add(&alpha_form(f).scale(c));
    }
    out
}

/// The explicit twisted-cohomology basis form beta_bar(F): the monomial
/// prefactor prod_j z_j^{b_j(F)} times the slot-by-vertex wedge with open
/// roots contributing eps_i(F) * r, closed roots omega_i, breakable edges
/// omega_{i,j}, and unbreakable edges (z_i - z_j)^{-1}(omega_i - omega_j).
pub fn beta_bar_form(a: &WeightVector, f: &Forest) -> Result<DifferentialForm, Error> {
    if !a.is_admissible(f)? {
        return Err(Error::Validation(format!(
            "beta_bar is only defined for admissible forests, got {f}"
        )));
    }
    let n = f.n;
    let b = b_exponents(a, f)?;
    let mut out = DifferentialForm::from_scalar(n, z_monomial(n, &b));
    for i in 0..n {
        let factor = match f.parent[i] {
            Some((j, _)) => {
                if is_breakable(a, f, i) {
                    omega_edge(n, i, j, RootOfUnity::one())
                } else {
                    let (c, atom) = oriented_diff(i, j, RootOfUnity::one());
                    let inv = RatFunc::atom_inverse(n, atom)
                        .scale(&c.inv().expect("unit scalar"));
                    omega(n, i).sub(&omega(n, j)).mul_ratfunc(&inv)
                }
            }
            None if f.closed[i] => omega(n, i),
            None => DifferentialForm::from_scalar(
                n,
                RatFunc::constant(
                    n,
                    Cyclotomic::from_int(f.epsilon_i(i) * a.r as i64),
                ),
            ),
        };
        out = out.wedge(&factor);
    }
    Ok(out)
}

/// Checks beta(F) = z_1^{ra_1}...z_n^{ra_n} * (pullback of beta_bar(F)
/// along z -> z^r), with beta(F) realized directly from its definition
/// as the mu_r^n-average of moved alpha forms.
pub fn verify_pullback_identity(a: &WeightVector, f: &Forest) -> Result<bool, Error> {
    let r = a.r;
    let n = f.n;
    if !a.is_admissible(f)? {
        return Err(Error::Validation("identity applies to admissible forests".into()));
    }
    if (r as f64).powi(n as i32) > 1e4 {
        return Err(Error::SizeGuard(format!("r^n = {r}^{n} exceeds guard 10^4")));
    }
    let lifted = Forest { r, n, parent: f.parent.clone(), closed: f.closed.clone() };
    let mut lhs = DifferentialForm::zero(n);
    for zeta in all_exponent_vectors(r, n) {
        let mut exp = 0i64;
        for i in 0..n {
            exp += zeta[i] as i64 * a.ra(i);
        }
        let coeff = Cyclotomic::root_of_unity(r, exp);
        let moved = lifted.act(&WElem { zeta, perm: Perm::identity(n) });
        lhs = lhs.add(&alpha_form(&moved).scale(&coeff));
    }
    let ra: Vec<i64> = (0..n).map(|i| a.ra(i)).collect();
    let rhs = beta_bar_form(a, f)?
        .pullback_power(r as u32)?
        .mul_ratfunc(&z_monomial(n, &ra));
    Ok(lhs == rhs)
}

/// Checks the spanning-tree identity: the wedge of the edge forms
/// omega_{i,j} (factors ordered by increasing source i) equals
/// (1 / prod_{i->j}(z_i - z_j)) * sum_i (-1)^{n-i} dz_1 ∧ ... omit dz_i
/// ... ∧ dz_n.
pub fn verify_nbc_chain_identity(t: &Forest) -> Result<bool, Error> {
    if t.r != 1 {
        return Err(Error::Validation("identity applies to unlabelled trees (r = 1)".into()));
    }
    if !t.is_tree() {
        return Err(Error::Validation("expected a spanning tree".into()));
    }
    if !t.is_rectified() {
        return Err(Error::Validation(
            "identity requires every edge to point to a larger vertex".into(),
        ));
    }
    let n = t.n;
    let mut lhs = DifferentialForm::one(n);
    let mut pt_inv = RatFunc::one(n);
    for (i, j, _) in t.edges() {
        lhs = lhs.wedge(&omega_edge(n, i, j, RootOfUnity::one()));
        let (c, atom) = oriented_diff(i, j, RootOfUnity::one());
        pt_inv = pt_inv.mul(&RatFunc::atom_inverse(n, atom).scale(&c.inv().unwrap()));
    }
    let mut rhs = DifferentialForm::zero(n);
    for i in 0..n {
        let key: Vec<usize> = (0..n).filter(|&v| v != i).collect();
        let sign = if (n - 1 - i) % 2 == 0 { 1 } else { -1 };
        rhs.insert_add(key, pt_inv.scale(&Cyclotomic::from_int(sign)));
    }
    Ok(lhs == rhs)
}

/// Checks that the class reduction agrees with honest form arithmetic:
/// realizing the class of F and realizing its expansion in the rectified
/// basis give the same differential form.
pub fn verify_reduction_against_forms(f: &Forest, red: &mut OsReducer) -> bool {
    realize_os(&OSElement::unit(f.clone())) == realize_os(&red.reduce_full(f))
}

/// Checks linear independence of the realized forms over a family of
/// forests by exact coefficient extraction over the common denominator
/// followed by Gaussian elimination.
pub fn forms_linearly_independent(forests: &[Forest]) -> bool {
    if forests.is_empty() {
        return true;
    }
    let n = forests[0].n;
    let forms: Vec<DifferentialForm> = forests.iter().map(alpha_form).collect();
    // common denominator: max multiplicity of each atom over all coefficients
    let mut common: BTreeMap<Atom, u32> = BTreeMap::new();
    for form in &forms {
        for c in form.terms.values() {
            for (a, &m) in &c.den {
                let e = common.entry(*a).or_insert(0);
                *e = (*e).max(m);
            }
        }
    }
    // each form becomes a vector of cyclotomic coefficients indexed by
    // (wedge key, numerator monomial)
    let mut rows: Vec<BTreeMap<(Vec<usize>, crate::poly::Monomial), Cyclotomic>> = vec![];
    for form in &forms {
        let mut row = BTreeMap::new();
        for (key, c) in &form.terms {
            let mut num = c.num.clone();
            for (a, &m) in &common {
                let own = *c.den.get(a).unwrap_or(&0);
                for _ in own..m {
                    num = num.mul(&a.to_poly(n));
                }
            }
            for (mono, coeff) in &num.terms {
                row.insert((key.clone(), mono.clone()), coeff.clone());
            }
        }
        rows.push(row);
    }
    // Gaussian elimination over the cyclotomic field
    let mut rank = 0usize;
    let mut reduced: Vec<BTreeMap<(Vec<usize>, crate::poly::Monomial), Cyclotomic>> = vec![];
    for mut row in rows {
        for prev in &reduced {
            let pivot = prev.keys().next().unwrap();
            if let Some(c) = row.get(pivot).cloned() {
                // row -= c * prev (prev is normalized to pivot 1)
                for (k, v) in prev {
                    let delta = v.mul(&c).neg();
                    let entry = row.entry(k.clone()).or_insert_with(Cyclotomic::zero);
                    *entry = entry.add(&delta);
                    if entry.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        if row.is_empty() {
            return false;
        }
        let pivot = row.keys().next().unwrap().clone();
        let inv = row[&pivot].inv().expect("nonzero pivot");
        let normalized: BTreeMap<_, _> =
            row.iter().map(|(k, v)| (k.clone(), v.mul(&inv))).collect();
        reduced.push(normalized);
        rank += 1;
    }
    rank == forests.len()
}

/// realize_os(beta_element(F)) as a form; convenience for the CLI.
pub fn beta_form(a: &WeightVector, f: &Forest) -> Result<DifferentialForm, Error> {
    let mut red = OsReducer::new();
    Ok(realize_os(&beta_element(a, f, &mut red, false)?))
}
