//! Class functions on S_n and the wreath products G(r,n), exact induced
//! characters, Murnaghan-Nakayama values, and the arithmetic identities
//! behind the cyclic-induction character computations.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num::Zero;

use crate::cyclotomic::{euler_phi, gcd, lcm, moebius, Cyclotomic};
use crate::error::Error;
use crate::forest::all_rectified_trees;
use crate::group::{ClassLabel, Perm, WElem, Wreath};
use crate::rational::{rat, rat_int, Rational};
use crate::tree_module::{front_cycle, Rectifier};

/// All partitions of n, parts weakly decreasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(n, n, &mut vec![], &mut out);
    out
}

/// Multiplicity of part i in the partition.
pub fn multiplicity(lambda: &[usize], i: usize) -> usize {
    lambda.iter().filter(|&&p| p == i).count()
}

/// Conjugacy-class data of G(r,n), cached per group.
pub fn classes_of(group: Wreath) -> Vec<(ClassLabel, u128, WElem)> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Vec<(ClassLabel, u128, WElem)>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (group.r, group.n);
    if let Some(c) = cache.lock().unwrap().get(&key) {
        return c.clone();
    }
    let c = group.classes();
    cache.lock().unwrap().insert(key, c.clone());
    c
}

/// An exact class function, stored by conjugacy-class label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub group: Wreath,
    pub values: BTreeMap<ClassLabel, Cyclotomic>,
}

impl ClassFunction {
    pub fn from_fn(group: Wreath, f: impl Fn(&WElem) -> Cyclotomic) -> Self {
        let values = classes_of(group)
            .iter()
            .map(|(label, _, rep)| (label.clone(), f(rep)))
            .collect();
        ClassFunction { group, values }
    }

    pub fn zero(group: Wreath) -> Self {
        Self::from_fn(group, |_| Cyclotomic::zero())
    }

    pub fn trivial(group: Wreath) -> Self {
        Self::from_fn(group, |_| Cyclotomic::one())
    }

    pub fn sign(group: Wreath) -> Self {
        Self::from_fn(group, |g| Cyclotomic::from_int(group.eps(g)))
    }

    pub fn prod(group: Wreath) -> Self {
        Self::from_fn(group, |g| group.prod(g))
    }

    pub fn det(group: Wreath) -> Self {
        Self::from_fn(group, |g| group.det(g))
    }

    pub fn value(&self, label: &ClassLabel) -> Cyclotomic {
        self.values.get(label).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn dim(&self) -> Rational {
        let mut id_label: ClassLabel = vec![vec![]; self.group.r as usize];
        id_label[0] = vec![1; self.group.n];
        self.value(&id_label).expect_rational()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.group, o.group);
        ClassFunction {
            group: self.group,
            values: self
                .values
                .iter()
                .map(|(l, v)| (l.clone(), v.add(&o.value(l))))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.group, o.group);
        ClassFunction {
            group: self.group,
            values: self
                .values
                .iter()
                .map(|(l, v)| (l.clone(), v.sub(&o.value(l))))
                .collect(),
        }
    }

    /// Pointwise product: the character of a tensor product.
    pub fn tensor(&self, o: &Self) -> Self {
        assert_eq!(self.group, o.group);
        ClassFunction {
            group: self.group,
            values: self
                .values
                .iter()
                .map(|(l, v)| (l.clone(), v.mul(&o.value(l))))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ClassFunction {
            group: self.group,
            values: self.values.iter().map(|(l, v)| (l.clone(), v.scale(c))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    /// <self, other> = |G|^{-1} sum over classes of size * chi * conj(psi).
    pub fn inner(&self, o: &Self) -> Rational {
        assert_eq!(self.group, o.group);
        let mut acc = Cyclotomic::zero();
        for (label, size, _) in classes_of(self.group) {
            let term = self
                .value(&label)
                .mul(&o.value(&label).conj())
                .scale(&rat_int(size as i64));
            acc = acc.add(&term);
        }
        acc.scale(&rat(1, self.group.order() as i64)).expect_rational()
    }
}

// ---- Murnaghan-Nakayama ----

fn beta_numbers(lambda: &[usize]) -> Vec<usize> {
    let k = lambda.len();
    lambda.iter().enumerate().map(|(i, &p)| p + (k - 1 - i)).collect()
}

fn partition_from_betas(mut betas: Vec<usize>) -> Vec<usize> {
    betas.sort_unstable_by(|a, b| b.cmp(a));
    let k = betas.len();
    let mut lambda: Vec<usize> = betas
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (k - 1 - i))
        .collect();
    lambda.retain(|&p| p > 0);
    lambda
}

/// The irreducible character value chi^lambda(mu) by rim-hook removal on
/// beta-numbers: removing a hook of size m replaces a beta b by b - m,
/// with sign (-1)^{number of betas strictly between}.
pub fn mn_value(lambda: &[usize], mu: &[usize]) -> i64 {
    assert_eq!(
        lambda.iter().sum::<usize>(),
        mu.iter().sum::<usize>(),
        "partition sizes must match"
    );
    if mu.is_empty() {
        return 1;
    }
    let m = mu[0];
    let rest = &mu[1..];
    let betas = beta_numbers(lambda);
    let mut total = 0i64;
    for (idx, &b) in betas.iter().enumerate() {
        if b < m || betas.contains(&(b - m)) {
            continue;
        }
        let height = betas.iter().filter(|&&x| b - m < x && x < b).count();
        let mut nb = betas.clone();
        nb[idx] = b - m;
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_value(&partition_from_betas(nb), rest);
    }
    total
}

/// chi^lambda as a class function on S_n.
pub fn mn_character(lambda: &[usize]) -> ClassFunction {
    let n: usize = lambda.iter().sum();
    let group = Wreath::symmetric(n);
    let values = classes_of(group)
        .iter()
        .map(|(label, _, _)| (label.clone(), Cyclotomic::from_int(mn_value(lambda, &label[0]))))
        .collect();
    ClassFunction { group, values }
}

/// Decomposes a class function on S_n into irreducible multiplicities,
/// keyed by partition. Fails if any multiplicity is non-integral.
pub fn decompose_symmetric(chi: &ClassFunction) -> Result<BTreeMap<Vec<usize>, Rational>, Error> {
    if chi.group.r != 1 {
        return Err(Error::Validation("decomposition is for S_n only".into()));
    }
    let mut out = BTreeMap::new();
    for lambda in partitions(chi.group.n) {
        let m = chi.inner(&mn_character(&lambda));
        if !crate::rational::is_integer(&m) {
            return Err(Error::Validation(format!(
                "non-integral multiplicity {m} at {lambda:?}"
            )));
        }
        if !m.is_zero() {
            out.insert(lambda, m);
        }
    }
    Ok(out)
}

// ---- induction ----

/// Induces chi from the listed subgroup elements to the full group:
/// value on a class C is [G:H] / |C| * sum of chi over H intersect C.
pub fn induced_character(
    group: Wreath,
    subgroup: &[WElem],
    chi: impl Fn(&WElem) -> Cyclotomic,
) -> Result<ClassFunction, Error> {
    if group.order() > 100_000 {
        return Err(Error::SizeGuard(format!(
            "group order {} exceeds induction guard 10^5",
            group.order()
        )));
    }
    let mut acc: BTreeMap<ClassLabel, Cyclotomic> = BTreeMap::new();
    for h in subgroup {
        let label = group.class_label(h);
        let v = acc.entry(label).or_insert_with(Cyclotomic::zero);
        *v = v.add(&chi(h));
    }
    let index = rat(group.order() as i64, subgroup.len() as i64);
    let values = classes_of(group)
        .iter()
        .map(|(label, size, _)| {
            let v = acc
                .get(label)
                .cloned()
                .unwrap_or_else(Cyclotomic::zero)
                .scale(&(&index / &rat_int(*size as i64)));
            (label.clone(), v)
        })
        .collect();
    Ok(ClassFunction { group, values })
}

/// Restricts an ambient-group class function to listed subgroup elements,
/// returning a plain value map (used for reciprocity checks).
pub fn restrict_to(chi: &ClassFunction, subgroup: &[WElem]) -> Vec<Cyclotomic> {
    subgroup
        .iter()
        .map(|h| chi.value(&chi.group.class_label(h)))
        .collect()
}

// ---- the tree module as a character ----

/// Trace of g on V(r,n) with n = g.n(): the action permutes rectified
/// trees with signs coming from rectification.
pub fn v_trace(rect: &mut Rectifier, r: u64, g: &WElem) -> Rational {
    let n = g.n();
    let mut tr = Rational::zero();
    for t in all_rectified_trees(r, n) {
        let moved = rect.rectify(&t.act(g));
        if let Some(c) = moved.terms.get(&t) {
            tr += c;
        }
    }
    tr
}

/// The character of V(r,n) as a class function on G(r,n).
pub fn v_character(r: u64, n: usize) -> ClassFunction {
    let group = Wreath { r, n };
    let mut rect = Rectifier::new();
    let values = classes_of(group)
        .iter()
        .map(|(label, _, rep)| {
            (label.clone(), Cyclotomic::from_rational(v_trace(&mut rect, r, rep)))
        })
        .collect();
    ClassFunction { group, values }
}

// ---- cyclic subgroups and the arithmetic identities ----

/// The subgroup mu_n of S_n generated by the n-cycle (1 2 .. n), with
/// psi_n mapping the generator to zeta_n.
pub fn cyclic_subgroup(n: usize) -> Vec<(WElem, Cyclotomic)> {
    let c = front_cycle(n, n);
    let mut out = vec![];
    let mut g = Perm::identity(n);
    for p in 0..n {
        out.push((WElem::from_perm(g.clone()), Cyclotomic::root_of_unity(n as u64, p as i64)));
        g = c.compose(&g);
    }
    out
}

/// mu_r x mu_n inside G(r,n): (zeta, theta) -> diagonal zeta times the
/// n-cycle power, carrying the character 1 x psi_n.
pub fn diagonal_times_cyclic(r: u64, n: usize) -> Vec<(WElem, Cyclotomic)> {
    let mut out = vec![];
    for z in 0..r {
        for (g, chi) in cyclic_subgroup(n) {
            out.push((WElem { zeta: vec![z; n], perm: g.perm }, chi));
        }
    }
    out
}

/// Value of the induced character Ind_{mu_n}^{S_n}(psi_n) at cycle type
/// (d^{n/d}), multiplied by the centralizer index: the sum of the
/// primitive d-th roots of unity, which is mu(d).
pub fn cyclic_induction_value(n: u64, d: u64) -> Result<Rational, Error> {
    if d == 0 || n % d != 0 {
        return Err(Error::Validation(format!("{d} does not divide {n}")));
    }
    let mut acc = Cyclotomic::zero();
    for k in 0..d {
        if gcd(k, d) == 1 || d == 1 {
            acc = acc.add(&Cyclotomic::root_of_unity(d, k as i64));
        }
    }
    Ok(acc.expect_rational())
}

/// Both sides of the character identity for cycle type (d^{rm/d}):
/// lhs = mu(d); rhs = the double divisor sum; third = the same sum
/// evaluated directly over primitive roots of unity.
pub fn mystery_identity_sides(r: u64, m: u64, d: u64) -> (Rational, Rational, Rational) {
    let lhs = rat_int(moebius(d));
    let mut rhs = Rational::zero();
    let mut direct = Cyclotomic::zero();
    for e in 1..=r {
        if r % e != 0 {
            continue;
        }
        for f in 1..=m {
            if m % f != 0 || lcm(e, f) != d {
                continue;
            }
            let g = gcd(m, e);
            let e_over = e / g;
            rhs += rat_int(moebius(f) * moebius(e_over))
                * rat(euler_phi(e) as i64, euler_phi(e_over) as i64);
            for ke in 0..e {
                if e != 1 && gcd(ke, e) != 1 {
                    continue;
                }
                for kf in 0..f {
                    if f != 1 && gcd(kf, f) != 1 {
                        continue;
                    }
                    let eta_m = Cyclotomic::root_of_unity(e, (ke * m % e) as i64);
                    let theta = Cyclotomic::root_of_unity(f, kf as i64);
                    direct = direct.add(&eta_m.mul(&theta));
                }
            }
        }
    }
    (lhs, rhs, direct.expect_rational())
}
