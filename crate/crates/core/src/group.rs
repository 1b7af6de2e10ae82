//! Permutations, the wreath products G(r,n) = mu_r^n : S_n, conjugacy
//! classes indexed by r-tuples of partitions, and linear characters.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::cyclotomic::Cyclotomic;

/// A permutation of {0,..,n-1}; `p.map[i]` is the image of i.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    pub map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { map: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { map: other.map.iter().map(|&i| self.map[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Perm { map }
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.map.len()];
        let mut sign = 1i64;
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.map[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Cycles as vectors of points, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = vec![];
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![];
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.map[i];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn all(n: usize) -> Vec<Perm> {
        (0..n)
            .permutations(n)
            .map(|map| Perm { map })
            .collect()
    }
}

/// An element zeta*w of G(r,n): the diagonal zeta in mu_r^n composed after
/// the permutation w. `zeta[i]` is the exponent at coordinate i.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WElem {
    pub zeta: Vec<u64>,
    pub perm: Perm,
}

impl WElem {
    pub fn from_perm(perm: Perm) -> Self {
        WElem { zeta: vec![0; perm.n()], perm }
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }
}

/// Conjugacy classes of G(r,n) are indexed by r-tuples of partitions with
/// total size n: component c collects the lengths of the cycles whose
/// accumulated zeta-exponent is c mod r.
pub type ClassLabel = Vec<Vec<usize>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Wreath {
    pub r: u64,
    pub n: usize,
}

impl Wreath {
    pub fn symmetric(n: usize) -> Self {
        Wreath { r: 1, n }
    }

    pub fn order(&self) -> u128 {
        let mut o: u128 = 1;
        for k in 1..=self.n as u128 {
            o *= k;
        }
        o * (self.r as u128).pow(self.n as u32)
    }

    pub fn identity(&self) -> WElem {
        WElem { zeta: vec![0; self.n], perm: Perm::identity(self.n) }
    }

    /// (z1 w1)(z2 w2) = (z1 + w1.z2, w1 w2), (w.z)_i = z_{w^{-1}(i)}.
    pub fn mul(&self, a: &WElem, b: &WElem) -> WElem {
        let perm = a.perm.compose(&b.perm);
        let a_inv = a.perm.inverse();
        let zeta = (0..self.n)
            .map(|i| (a.zeta[i] + b.zeta[a_inv.apply(i)]) % self.r)
            .collect();
        WElem { zeta, perm }
    }

    pub fn inv(&self, g: &WElem) -> WElem {
        let perm = g.perm.inverse();
        let zeta = (0..self.n)
            .map(|i| (self.r - g.zeta[g.perm.apply(i)] % self.r) % self.r)
            .collect();
        WElem { zeta, perm }
    }

    pub fn elements(&self) -> Vec<WElem> {
        let mut out = vec![];
        for perm in Perm::all(self.n) {
            for zeta in all_exponent_vectors(self.r, self.n) {
                out.push(WElem { zeta, perm: perm.clone() });
            }
        }
        out
    }

    pub fn class_label(&self, g: &WElem) -> ClassLabel {
        let mut label: ClassLabel = vec![vec![]; self.r as usize];
        for cyc in g.perm.cycles() {
            let color: u64 = cyc.iter().map(|&i| g.zeta[i]).sum::<u64>() % self.r;
            label[color as usize].push(cyc.len());
        }
        for part in &mut label {
            part.sort_unstable_by(|a, b| b.cmp(a));
        }
        label
    }

    /// Class labels with sizes and one representative each, by enumeration.
    pub fn classes(&self) -> Vec<(ClassLabel, u128, WElem)> {
        let mut map: BTreeMap<ClassLabel, (u128, WElem)> = BTreeMap::new();
        for g in self.elements() {
            let l = self.class_label(&g);
            map.entry(l)
                .and_modify(|(c, _)| *c += 1)
                .or_insert((1, g));
        }
        map.into_iter().map(|(l, (c, g))| (l, c, g)).collect()
    }

    /// sign(w).
    pub fn eps(&self, g: &WElem) -> i64 {
        g.perm.sign()
    }

    /// The product character zeta_r^{sum of exponents}.
    pub fn prod(&self, g: &WElem) -> Cyclotomic {
        let s: u64 = g.zeta.iter().sum::<u64>() % self.r;
        Cyclotomic::root_of_unity(self.r, s as i64)
    }

    /// Determinant of the natural n-dimensional monomial matrix.
    pub fn det(&self, g: &WElem) -> Cyclotomic {
        let p = self.prod(g);
        if self.eps(g) == 1 {
            p
        } else {
            p.neg()
        }
    }

    pub fn pow(&self, g: &WElem, e: u64) -> WElem {
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.mul(&acc, g);
        }
        acc
    }

    /// Embeds G(r,m) into the symmetric group on r*m points: coordinate a
    /// carries the block {a*r,..,a*r+r-1} and zeta shifts cyclically within
    /// the image block.
    pub fn embed_in_symmetric(&self, g: &WElem) -> Perm {
        let r = self.r as usize;
        let mut map = vec![0; r * self.n];
        for a in 0..self.n {
            let wa = g.perm.apply(a);
            let shift = g.zeta[wa] as usize;
            for t in 0..r {
                map[a * r + t] = wa * r + (t + shift) % r;
            }
        }
        Perm { map }
    }
}

/// All vectors in {0,..,r-1}^n, in lexicographic order.
pub fn all_exponent_vectors(r: u64, n: usize) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    (0..n).map(|_| 0..r).multi_cartesian_product().collect()
}

impl fmt::Display for WElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc: Vec<String> = self
            .perm
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|i| (i + 1).to_string()).join(" ")))
            .collect();
        let p = if cyc.is_empty() { "e".to_string() } else { cyc.join("") };
        if self.zeta.iter().all(|&z| z == 0) {
            write!(f, "{p}")
        } else {
            write!(f, "[{}]{p}", self.zeta.iter().map(|z| z.to_string()).join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        let p = Perm { map: vec![1, 2, 0] }; // 3-cycle
        assert_eq!(p.sign(), 1);
        assert_eq!(p.cycle_type(), vec![3]);
        assert_eq!(p.compose(&p.inverse()), Perm::identity(3));
        let t = Perm { map: vec![1, 0, 2] };
        assert_eq!(t.sign(), -1);
        assert_eq!(Perm::all(4).len(), 24);
    }

    #[test]
    fn wreath_orders_and_classes() {
        let s3 = Wreath::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.classes().len(), 3);

        let w22 = Wreath { r: 2, n: 2 };
        assert_eq!(w22.order(), 8);
        // G(2,2) is dihedral of order 8: five conjugacy classes.
        let classes = w22.classes();
        assert_eq!(classes.len(), 5);
        let total: u128 = classes.iter().map(|(_, s, _)| s).sum();
        assert_eq!(total, 8);

        let w32 = Wreath { r: 3, n: 2 };
        assert_eq!(w32.order(), 18);
        assert_eq!(w32.elements().len(), 18);
    }

    #[test]
    fn group_axioms_brute() {
        let g = Wreath { r: 2, n: 2 };
        let els = g.elements();
        for a in &els {
            assert_eq!(g.mul(a, &g.inv(a)), g.identity());
            assert_eq!(g.mul(&g.inv(a), a), g.identity());
            for b in &els {
                for c in &els {
                    assert_eq!(
                        g.mul(&g.mul(a, b), c),
                        g.mul(a, &g.mul(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn class_labels_invariant_under_conjugation() {
        let g = Wreath { r: 3, n: 2 };
        let els = g.elements();
        for a in &els {
            for x in &els {
                let conj = g.mul(&g.mul(x, a), &g.inv(x));
                assert_eq!(g.class_label(a), g.class_label(&conj));
            }
        }
    }

    #[test]
    fn linear_characters_multiplicative() {
        let g = Wreath { r: 2, n: 3 };
        let els = g.elements();
        for a in els.iter().step_by(3) {
            for b in els.iter().step_by(5) {
                let ab = g.mul(a, b);
                assert_eq!(g.eps(&ab), g.eps(a) * g.eps(b));
                assert_eq!(g.prod(&ab), g.prod(a).mul(&g.prod(b)));
                assert_eq!(g.det(&ab), g.det(a).mul(&g.det(b)));
            }
        }
    }

    #[test]
    fn embedding_is_homomorphism() {
        let g = Wreath { r: 2, n: 2 };
        let els = g.elements();
        for a in &els {
            for b in &els {
                let lhs = g.embed_in_symmetric(&g.mul(a, b));
                let rhs = g.embed_in_symmetric(a).compose(&g.embed_in_symmetric(b));
                assert_eq!(lhs, rhs);
            }
        }
        // injectivity on this small case
        let images: std::collections::BTreeSet<_> =
            els.iter().map(|a| g.embed_in_symmetric(a)).collect();
        assert_eq!(images.len(), els.len());
    }

    #[test]
    fn embedded_cycle_types() {
        // The long cycle with a nontrivial twist in G(2,2) embeds as a
        // 4-cycle in S_4; an untwisted transposition embeds as (2,2).
        let g = Wreath { r: 2, n: 2 };
        let twisted = WElem { zeta: vec![1, 0], perm: Perm { map: vec![1, 0] } };
        assert_eq!(g.embed_in_symmetric(&twisted).cycle_type(), vec![4]);
        let plain = WElem::from_perm(Perm { map: vec![1, 0] });
        assert_eq!(g.embed_in_symmetric(&plain).cycle_type(), vec![2, 2]);
    }
}
