//! The representation V(r,n): the span of labelled trees modulo the
//! triple relation [T1]+[T2]=[T3] and the root-flip relation [T]+[T']=0,
//! with rectification into the basis of increasing trees, chain expansion,
//! and the rational-function realization for r = 1.

use std::collections::{BTreeMap, HashMap};

use num::Zero;

use crate::cyclotomic::Cyclotomic;
use crate::error::Error;
use crate::forest::Forest;
use crate::group::{all_exponent_vectors, Perm, WElem};
use crate::ratfunc::{oriented_diff, RatFunc};
use crate::rational::{rat_int, Rational};

/// An element of V(r,n) in the rectified-tree basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    pub r: u64,
    pub n: usize,
    pub terms: BTreeMap<Forest, Rational>,
}

impl ModuleVector {
    pub fn zero(r: u64, n: usize) -> Self {
        ModuleVector { r, n, terms: BTreeMap::new() }
    }

    pub fn unit(t: Forest) -> Self {
        let mut v = Self::zero(t.r, t.n);
        v.terms.insert(t, rat_int(1));
        v
    }

    pub fn insert_add(&mut self, t: Forest, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &o.terms {
            out.insert_add(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ModuleVector {
            r: self.r,
            n: self.n,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.r, self.n);
        }
        ModuleVector {
            r: self.r,
            n: self.n,
            terms: self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Rectification with a per-instance memo table.
#[derive(Default)]
pub struct Rectifier {
    cache: HashMap<Forest, ModuleVector>,
}

impl Rectifier {
    pub fn new() -> Self {
        Self::default()
    }

    /// Expresses [T] in the rectified basis: first shift the root to the
    /// largest vertex by root-flip relations (each a sign change), then
    /// repeatedly eliminate the maximal descending edge via the triple
    /// relation, which strictly decreases the (a, b) measure.
    pub fn rectify(&mut self, t: &Forest) -> ModuleVector {
        assert!(t.is_tree(), "rectify expects a single tree");
        if let Some(v) = self.cache.get(t) {
            return v.clone();
        }
        let result = self.rectify_inner(t);
        self.cache.insert(t.clone(), result.clone());
        result
    }

    fn rectify_inner(&mut self, t: &Forest) -> ModuleVector {
        let r = t.r;
        let n = t.n;
        let top = n - 1;
        let root = t.root_of(top);
        if root != top {
            // Flip the last edge on the path from the largest vertex to
            // the root: [T] = -[T'].
            let path = t.path_to_root(top);
            let u = path[path.len() - 2];
            let (_, e) = t.parent[u].unwrap();
            let mut t2 = t.clone();
            t2.parent[u] = None;
            t2.closed[u] = t.closed[root];
            t2.closed[root] = false;
            t2.parent[root] = Some((u, (r - e) % r));
            return self.rectify(&t2).neg();
        }
        // Maximal source of a descending edge.
        let a = (0..n)
            .rev()
            .find(|&i| matches!(t.parent[i], Some((j, _)) if j < i));
        let a = match a {
            None => return ModuleVector::unit(t.clone()),
            Some(a) => a,
        };
        let (j, e_aj) = t.parent[a].unwrap();
        let (k, e_jk) = t.parent[j].expect("descending edge target cannot be the root");
        // Triple with i = a: T1 = t has a ->^{eta theta^-1} j ->^theta k;
        // T3 has a ->^eta k and j ->^theta k; T2 has a ->^eta k and
        // j ->^{theta eta^-1} a. Here eta = e_aj + e_jk, theta = e_jk.
        let e_eta = (e_aj + e_jk) % r;
        let mut t3 = t.clone();
        t3.parent[a] = Some((k, e_eta));
        let mut t2 = t3.clone();
        t2.parent[j] = Some((a, (r - e_aj) % r));
        self.rectify(&t3).sub(&self.rectify(&t2))
    }

    pub fn act(&mut self, g: &WElem, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero(v.r, v.n);
        for (t, c) in &v.terms {
            let moved = self.rectify(&t.act(g)).scale(c);
            out = out.add(&moved);
        }
        out
    }
}

/// The chain 1 -> 2 -> .. -> n with all labels 1.
pub fn chain_t0(r: u64, n: usize) -> Forest {
    let parent = (0..n)
        .map(|i| if i + 1 < n { Some((i + 1, 0)) } else { None })
        .collect();
    Forest { r, n, parent, closed: vec![false; n] }
}

/// The unique (zeta, base) with zeta_n = 1, base the same tree with all
/// labels 1, and zeta.base = T: solve eta = zeta_i zeta_j^{-1} along edges.
pub fn decompose_by_z(t: &Forest) -> (Vec<u64>, Forest) {
    assert!(t.is_tree());
    let r = t.r;
    let n = t.n;
    // exponents relative to the root, then normalized so c_{n-1} = 0
    let mut c = vec![0i64; n];
    // process from the root outward: sort by distance to the root
    let mut by_depth: Vec<usize> = (0..n).collect();
    by_depth.sort_by_key(|&v| t.path_to_root(v).len());
    for &v in &by_depth {
        if let Some((j, e)) = t.parent[v] {
            c[v] = e as i64 + c[j];
        }
    }
    let shift = c[n - 1];
    let zeta: Vec<u64> = c.iter().map(|&x| (x - shift).rem_euclid(r as i64) as u64).collect();
    let mut base = t.clone();
    base.r = t.r;
    for p in base.parent.iter_mut().flatten() {
        p.1 = 0;
    }
    (zeta, base)
}

/// An element written in the chain basis {[zeta w.T_0]}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub r: u64,
    pub n: usize,
    pub terms: BTreeMap<(Vec<u64>, Perm), Rational>,
}

/// Does the chain zeta*w.T_0 refine T: each edge i ->^eta j of T must have
/// w^{-1}(i) < w^{-1}(j) and eta = zeta_i zeta_j^{-1}.
pub fn refines(t: &Forest, zeta: &[u64], w: &Perm) -> bool {
    let wi = w.inverse();
    t.edges().iter().all(|&(i, j, e)| {
        wi.apply(i) < wi.apply(j)
            && (zeta[i] + t.r - zeta[j]) % t.r == e
    })
}

/// [T] = sum of [zeta w.T_0] over refining pairs, all coefficients +1.
pub fn chain_expand(t: &Forest) -> ChainVector {
    assert!(t.is_tree());
    let (zeta, _) = decompose_by_z(t);
    let mut terms = BTreeMap::new();
    for w in Perm::all(t.n) {
        if refines(t, &zeta, &w) {
            terms.insert((zeta.clone(), w), rat_int(1));
        }
    }
    ChainVector { r: t.r, n: t.n, terms }
}

/// Rebuilds the tree zeta*w.T_0 named by a chain-basis index.
pub fn chain_tree(r: u64, n: usize, zeta: &[u64], w: &Perm) -> Forest {
    chain_t0(r, n).act(&WElem { zeta: zeta.to_vec(), perm: w.clone() })
}

/// 1/p_T summed with coefficients; edges i -> j contribute 1/(z_i - z_j).
pub fn realize_r1(v: &ModuleVector) -> Result<RatFunc, Error> {
    if v.r != 1 {
        return Err(Error::Validation("realization requires r = 1".into()));
    }
    let mut out = RatFunc::zero(v.n);
    for (t, c) in &v.terms {
        out = out.add(&realize_tree(t).scale(&Cyclotomic::from_rational(c.clone())));
    }
    Ok(out)
}

/// 1/p_T for a single tree (any orientation, r = 1).
pub fn realize_tree(t: &Forest) -> RatFunc {
    let mut f = RatFunc::one(t.n);
    let mut sign = Cyclotomic::one();
    for (i, j, _) in t.edges() {
        let (c, atom) = oriented_diff(i, j, crate::cyclotomic::RootOfUnity::one());
        sign = sign.mul(&c.inv().unwrap());
        f = f.mul(&RatFunc::atom_inverse(t.n, atom));
    }
    f.scale(&sign)
}

/// A group-algebra element of S_n with rational coefficients.
pub type AlgebraElem = BTreeMap<Perm, Rational>;

fn algebra_mul(a: &AlgebraElem, b: &AlgebraElem) -> AlgebraElem {
    let mut out: AlgebraElem = BTreeMap::new();
    for (g, x) in a {
        for (h, y) in b {
            let gh = g.compose(h);
            let v = out.entry(gh).or_insert_with(Rational::zero);
            *v += x * y;
            if v.is_zero() {
                // keep map clean
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn apply_algebra(rect: &mut Rectifier, a: &AlgebraElem, v: &ModuleVector) -> ModuleVector {
    let mut out = ModuleVector::zero(v.r, v.n);
    for (g, c) in a {
        out = out.add(&rect.act(&WElem::from_perm(g.clone()), v).scale(c));
    }
    out
}

/// The i-cycle (1 2 .. i) on n points (0-indexed: 0 -> 1 -> .. -> i-1 -> 0).
pub fn front_cycle(n: usize, i: usize) -> Perm {
    let mut map: Vec<usize> = (0..n).collect();
    for v in 0..i {
        map[v] = (v + 1) % i;
    }
    Perm { map }
}

/// Coefficients b_{n,p} of (1 - c_{n-1} t)(1 - c_{n-2} t) .. (1 - c_1 t)
/// in the group algebra, low degree first.
pub fn b_coefficients(n: usize) -> Vec<AlgebraElem> {
    let one: AlgebraElem = BTreeMap::from([(Perm::identity(n), rat_int(1))]);
    let mut coeffs: Vec<AlgebraElem> = vec![one.clone()];
    for i in (1..n).rev() {
        // multiply (current) * (1 - c_i t)
        let ci: AlgebraElem = BTreeMap::from([(front_cycle(n, i), rat_int(-1))]);
        let mut next: Vec<AlgebraElem> = vec![BTreeMap::new(); coeffs.len() + 1];
        for (p, a) in coeffs.iter().enumerate() {
            for (g, x) in a {
                let v = next[p].entry(g.clone()).or_insert_with(Rational::zero);
                *v += x;
            }
            for (g, x) in algebra_mul(a, &ci) {
                let v = next[p + 1].entry(g).or_insert_with(Rational::zero);
                *v += x;
            }
        }
        for a in &mut next {
            a.retain(|_, v| !v.is_zero());
        }
        coeffs = next;
    }
    coeffs
}

/// c_n^p.[T_0] = b_{n,p}.[T_0] in V(1,n).
pub fn verify_ls_identity(n: usize, p: usize) -> bool {
    assert!(p < n);
    let mut rect = Rectifier::new();
    let t0 = ModuleVector::unit(chain_t0(1, n));
    let cn = front_cycle(n, n);
    let mut g = Perm::identity(n);
    for _ in 0..p {
        g = cn.compose(&g);
    }
    let lhs = rect.act(&WElem::from_perm(g), &t0);
    let rhs = apply_algebra(&mut rect, &b_coefficients(n)[p], &t0);
    lhs == rhs
}

/// Minimal-length representatives of the right cosets (S_d x S_{n-d})\S_n:
/// the w whose inverse is increasing on {1..d} and on {d+1..n}.
pub fn shuffle_representatives(n: usize, d: usize) -> Vec<Perm> {
    Perm::all(n)
        .into_iter()
        .filter(|w| {
            let wi = w.inverse();
            (1..d).all(|i| wi.apply(i - 1) < wi.apply(i))
                && (d + 1..n).all(|i| wi.apply(i - 1) < wi.apply(i))
        })
        .collect()
}

/// The explicit generators of the annihilator ideal of [T_0] really
/// annihilate it: the diagonal mu_r and every shuffle sum.
pub fn annihilator_check(r: u64, n: usize) -> bool {
    let mut rect = Rectifier::new();
    let t0 = ModuleVector::unit(chain_t0(r, n));
    for z in 0..r {
        let g = WElem { zeta: vec![z; n], perm: Perm::identity(n) };
        if rect.act(&g, &t0) != t0 {
            return false;
        }
    }
    for d in 1..n {
        let mut acc = ModuleVector::zero(r, n);
        for w in shuffle_representatives(n, d) {
            acc = acc.add(&rect.act(&WElem::from_perm(w), &t0));
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

/// All zeta in Z = {zeta in mu_r^n | zeta_n = 1} as exponent vectors.
pub fn z_subgroup(r: u64, n: usize) -> Vec<Vec<u64>> {
    all_exponent_vectors(r, n - 1)
        .into_iter()
        .map(|mut v| {
            v.push(0);
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{all_rectified_trees, all_trees, for_each_tree};

    #[test]
    fn rectify_basics() {
        let mut rect = Rectifier::new();
        // rectified tree -> unit vector
        let t = Forest::parse(1, 3, "1->3;2->3;3").unwrap();
        assert_eq!(rect.rectify(&t), ModuleVector::unit(t.clone()));
        // 2 -> 1 rectifies to -[1 -> 2]
        let t = Forest::parse(1, 2, "1;2->1").unwrap();
        let up = Forest::parse(1, 2, "1->2;2").unwrap();
        assert_eq!(rect.rectify(&t), ModuleVector::unit(up).neg());
    }

    #[test]
    fn rectify_lands_in_basis() {
        for (r, n) in [(1u64, 4usize), (2, 3), (3, 3)] {
            let mut rect = Rectifier::new();
            let mut seen = std::collections::BTreeSet::new();
            for_each_tree(r, n, |t| {
                for key in rect.rectify(t).terms.keys() {
                    assert!(key.is_rectified());
                    seen.insert(key.clone());
                }
            });
            // every rectified tree appears (it rectifies to itself)
            assert_eq!(seen.len(), all_rectified_trees(r, n).len());
        }
    }

    #[test]
    fn realization_oracle() {
        // realize(rectify(T)) = 1/p_T for every tree, n <= 3 here.
        for n in [2usize, 3] {
            let mut rect = Rectifier::new();
            for t in all_trees(1, n) {
                let lhs = realize_r1(&rect.rectify(&t)).unwrap();
                assert_eq!(lhs, realize_tree(&t), "tree {}", t);
            }
        }
    }

    #[test]
    fn realization_equivariance() {
        let n = 3;
        let mut rect = Rectifier::new();
        let t = Forest::parse(1, 3, "1->3;2->3;3").unwrap();
        let v = rect.rectify(&t);
        for w in Perm::all(n) {
            let g = WElem::from_perm(w.clone());
            let lhs = realize_r1(&rect.act(&g, &v)).unwrap();
            // w acts on functions by w.z_i = z_{w(i)}: realize the moved tree
            let mut moved = RatFunc::zero(n);
            for (tt, c) in &v.terms {
                moved = moved.add(
                    &realize_tree(&tt.act(&g)).scale(&Cyclotomic::from_rational(c.clone())),
                );
            }
            assert_eq!(lhs, moved);
        }
    }

    #[test]
    fn decompose_round_trip() {
        for t in all_trees(3, 3) {
            let (zeta, base) = decompose_by_z(&t);
            assert_eq!(zeta[2], 0);
            assert!(base.edges().iter().all(|&(_, _, e)| e == 0));
            let g = WElem { zeta: zeta.clone(), perm: Perm::identity(3) };
            assert_eq!(base.act(&g), t);
        }
    }

    #[test]
    fn chain_expansion() {
        // T_0 expands to itself
        let t0 = chain_t0(1, 3);
        let cv = chain_expand(&t0);
        assert_eq!(cv.terms.len(), 1);
        // the fork {1->3, 2->3} expands to the two linear extensions
        let fork = Forest::parse(1, 3, "1->3;2->3;3").unwrap();
        let cv = chain_expand(&fork);
        assert_eq!(cv.terms.len(), 2);
        for ((zeta, w), _) in &cv.terms {
            // rectified tree: w fixes the largest vertex
            assert_eq!(w.apply(2), 2);
            let chain = chain_tree(1, 3, zeta, w);
            assert!(chain.edges().iter().all(|&(i, j, _)| {
                let wi = w.inverse();
                wi.apply(i) < wi.apply(j)
            }));
        }
        // consistency in V(r,n): rectify both sides
        let mut rect = Rectifier::new();
        for t in all_trees(2, 3) {
            let direct = rect.rectify(&t);
            let mut via_chains = ModuleVector::zero(2, 3);
            for ((zeta, w), c) in chain_expand(&t).terms {
                via_chains =
                    via_chains.add(&rect.rectify(&chain_tree(2, 3, &zeta, &w)).scale(&c));
            }
            assert_eq!(direct, via_chains, "tree {}", t);
        }
    }

    #[test]
    fn ls_identity_small() {
        for n in 2..=4 {
            for p in 0..n {
                assert!(verify_ls_identity(n, p), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn longest_element_sign() {
        // w_0.[T_0] = (-1)^{n-1} [T_0]
        for n in 2..=4 {
            let mut rect = Rectifier::new();
            let t0 = ModuleVector::unit(chain_t0(1, n));
            let w0 = Perm { map: (0..n).rev().collect() };
            let moved = rect.act(&WElem::from_perm(w0), &t0);
            let expect = if (n - 1) % 2 == 0 { t0.clone() } else { t0.neg() };
            assert_eq!(moved, expect);
        }
    }

    #[test]
    fn annihilators() {
        assert!(annihilator_check(1, 2));
        assert!(annihilator_check(1, 3));
        assert!(annihilator_check(2, 3));
        assert!(annihilator_check(3, 2));
    }

    #[test]
    fn shuffle_counts() {
        // |(S_d x S_{n-d})\S_n| = C(n,d)
        assert_eq!(shuffle_representatives(4, 2).len(), 6);
        assert_eq!(shuffle_representatives(3, 1).len(), 3);
    }
}
