//! The Orlik-Solomon algebra of the arrangement T(r,n) in its
//! forest presentation: reduction of an arbitrary decorated forest to the
//! rectified basis, the graded pieces A^{k,l}, the wreath-product action
//! with its sign rule, and graded characters.

use std::collections::HashMap;

use crate::cyclotomic::Cyclotomic;
use crate::error::Error;
use crate::forest::{all_rectified_forests, Forest};
use crate::group::{WElem, Wreath};
use crate::rational::rat_int;

use crate::characters::{classes_of, ClassFunction};
use std::collections::BTreeMap;

/// A linear combination of decorated forests with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OSElement {
    pub r: u64,
    pub n: usize,
    pub terms: BTreeMap<Forest, Cyclotomic>,
}

impl OSElement {
    pub fn zero(r: u64, n: usize) -> Self {
        OSElement { r, n, terms: BTreeMap::new() }
    }

    pub fn unit(f: Forest) -> Self {
        let mut v = Self::zero(f.r, f.n);
        v.terms.insert(f, Cyclotomic::one());
        v
    }

    pub fn insert_add(&mut self, f: Forest, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&f) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&f);
                }
            }
            None => {
                self.terms.insert(f, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (f, c) in &o.terms {
            out.insert_add(f.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        OSElement {
            r: self.r,
            n: self.n,
            terms: self.terms.iter().map(|(f, c)| (f.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.r, self.n);
        for (f, x) in &self.terms {
            out.insert_add(f.clone(), x.mul(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a basis forest.
    pub fn coeff(&self, f: &Forest) -> Cyclotomic {
        self.terms.get(f).cloned().unwrap_or_else(Cyclotomic::zero)
    }
}

/// Rewrites forest classes into the rectified basis, using the three
/// relations: the edge-triple relation, the open-root flip (sum zero),
/// and the closed-root flip (sum equals the forest with the edge deleted
/// and both roots closed). In the graded quotient the deletion term is
/// dropped, since it has more closed roots.
#[derive(Default)]
pub struct OsReducer {
    full: HashMap<Forest, OSElement>,
    graded: HashMap<Forest, OSElement>,
}

impl OsReducer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Expansion of the class of F in the rectified basis of the full
    /// degree-p component (closed-root flips produce deletion terms).
    pub fn reduce_full(&mut self, f: &Forest) -> OSElement {
        self.reduce(f, false)
    }

    /// Expansion in the rectified basis of the graded piece A^{k,l}.
    pub fn reduce_graded(&mut self, f: &Forest) -> OSElement {
        self.reduce(f, true)
    }

    fn reduce(&mut self, f: &Forest, graded: bool) -> OSElement {
        let cache = if graded { &self.graded } else { &self.full };
        if let Some(v) = cache.get(f) {
            return v.clone();
        }
        let result = self.reduce_inner(f, graded);
        let cache = if graded { &mut self.graded } else { &mut self.full };
        cache.insert(f.clone(), result.clone());
        result
    }

    fn reduce_inner(&mut self, f: &Forest, graded: bool) -> OSElement {
        let r = f.r;
        // Step 1: every component's root must be its largest vertex; if
        // not, flip the last edge on the path from the largest vertex.
        for comp in f.components() {
            let top = *comp.last().unwrap();
            let root = f.root_of(top);
            if root == top {
                continue;
            }
            let path = f.path_to_root(top);
            let u = path[path.len() - 2];
            let (_, e) = f.parent[u].unwrap();
            let mut flip = f.clone();
            flip.parent[u] = None;
            flip.closed[u] = f.closed[root];
            flip.closed[root] = false;
            flip.parent[root] = Some((u, (r - e) % r));
            if f.is_open_root(root) {
                // open flip: [F] = -(-1)^b [F'], where b counts the other
                // open roots strictly between the two flipped vertices
                // (their position signs eps_s all flip when the open root
                // moves past them)
                let (lo, hi) = (u.min(root), u.max(root));
                let b = (lo + 1..hi).filter(|&s| f.is_open_root(s)).count();
                let red = self.reduce(&flip, graded);
                return if b % 2 == 0 { red.neg() } else { red };
            }
            // closed flip: [F] = -[F'] (+ [F''] below the filtration)
            let mut out = self.reduce(&flip, graded).neg();
            if !graded {
                let mut cut = f.clone();
                cut.parent[u] = None;
                cut.closed[u] = true;
                out = out.add(&self.reduce(&cut, graded));
            }
            return out;
        }
        // Step 2: eliminate the maximal source of a descending edge via
        // the triple relation [F] = [F3] - [F2].
        let a = (0..f.n)
            .rev()
            .find(|&i| matches!(f.parent[i], Some((j, _)) if j < i));
        let a = match a {
            None => return OSElement::unit(f.clone()),
            Some(a) => a,
        };
        let (j, e_aj) = f.parent[a].unwrap();
        let (k, e_jk) = f.parent[j].expect("descending-edge target is not maximal, so not a root");
        let e_eta = (e_aj + e_jk) % r;
        let mut f3 = f.clone();
        f3.parent[a] = Some((k, e_eta));
        let mut f2 = f3.clone();
        f2.parent[j] = Some((a, (r - e_aj) % r));
        self.reduce(&f3, graded).sub(&self.reduce(&f2, graded))
    }

    /// g.[F] = eps_n(w) eps(w,F) [g.F], extended linearly and reduced.
    pub fn act(&mut self, g: &WElem, v: &OSElement, graded: bool) -> OSElement {
        let mut out = OSElement::zero(v.r, v.n);
        for (f, c) in &v.terms {
            let sign = g.perm.sign() * f.epsilon_w(&g.perm);
            let moved = self
                .reduce(&f.act(g), graded)
                .scale(&c.scale(&rat_int(sign)));
            out = out.add(&moved);
        }
        out
    }
}

/// The rectified forests with k edges and l closed roots: a basis of
/// A^{k,l}(T(r,n)).
pub fn rectified_forests_kl(r: u64, n: usize, k: usize, l: usize) -> Vec<Forest> {
    all_rectified_forests(r, n)
        .into_iter()
        .filter(|f| f.num_edges() == k && f.num_closed() == l)
        .collect()
}

/// dim A^{k,l}(T(r,n)).
pub fn graded_dimension(r: u64, n: usize, k: usize, l: usize) -> u128 {
    // each vertex i (0-indexed) independently picks open, closed, or one
    // of (n-1-i) r ascending labelled edges; count choices with k edges
    // and l closed roots by a small DP instead of enumerating.
    let mut table = vec![vec![0u128; l + 1]; k + 1];
    table[0][0] = 1;
    for i in 0..n {
        let edges = (n - 1 - i) as u128 * r as u128;
        let mut next = vec![vec![0u128; l + 1]; k + 1];
        for a in 0..=k {
            for b in 0..=l {
                let c = table[a][b];
                if c == 0 {
                    continue;
                }
                next[a][b] += c; // open root
                if b + 1 <= l {
                    next[a][b + 1] += c; // closed root
                }
                if a + 1 <= k {
                    next[a + 1][b] += c * edges; // ascending edge
                }
            }
        }
        table = next;
    }
    table[k][l]
}

/// The character of A^{k,l}(T(r,n)) as a class function on G(r,n).
pub fn os_character(r: u64, n: usize, k: usize, l: usize) -> Result<ClassFunction, Error> {
    let group = Wreath { r, n };
    if group.order() > 100_000 {
        return Err(Error::SizeGuard(format!(
            "group order {} exceeds character guard 10^5",
            group.order()
        )));
    }
    let basis = rectified_forests_kl(r, n, k, l);
    let mut red = OsReducer::new();
    let mut values = BTreeMap::new();
    for (label, _, g) in classes_of(group) {
        let mut tr = Cyclotomic::zero();
        for f in &basis {
            let sign = g.perm.sign() * f.epsilon_w(&g.perm);
            let c = red.reduce_graded(&f.act(&g)).coeff(f);
            tr = tr.add(&c.scale(&rat_int(sign)));
        }
        values.insert(label, tr);
    }
    Ok(ClassFunction { group, values })
}

/// The character of the full degree-p component A^p(T(r,n)).
pub fn os_character_degree(r: u64, n: usize, p: usize) -> Result<ClassFunction, Error> {
    let mut chi = ClassFunction::zero(Wreath { r, n });
    for l in 0..=p.min(n) {
        let k = p - l;
        if graded_dimension(r, n, k, l) > 0 {
            chi = chi.add(&os_character(r, n, k, l)?);
        }
    }
    Ok(chi)
}
