//! Decorated directed forests on {1,..,n} with mu_r edge labels and
//! open/closed roots: the combinatorial index sets for tree modules and
//! Orlik-Solomon bases, with the wreath-product action and sign rules.

use std::fmt;

use crate::error::Error;
use crate::group::{Perm, WElem};

/// Vertices are 0-indexed internally and 1-indexed in text form. An edge
/// i -> j with label exponent e stands for i ->^{zeta_r^e} j. Every
/// component is a directed tree with edges pointing at its root; each
/// root is open or closed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest {
    pub r: u64,
    pub n: usize,
    /// parent[i] = Some((j, e)) for the edge starting at i, None at roots.
    pub parent: Vec<Option<(usize, u64)>>,
    /// closed[i] is false unless i is a root.
    pub closed: Vec<bool>,
}

impl Forest {
    pub fn new(
        r: u64,
        n: usize,
        parent: Vec<Option<(usize, u64)>>,
        closed: Vec<bool>,
    ) -> Result<Self, Error> {
        if parent.len() != n || closed.len() != n {
            return Err(Error::Validation("vertex arrays must have length n".into()));
        }
        for (i, p) in parent.iter().enumerate() {
            if let Some((j, e)) = p {
                if *j >= n || *j == i {
                    return Err(Error::Validation(format!("bad edge target at vertex {}", i + 1)));
                }
                if *e >= r {
                    return Err(Error::Validation(format!("edge label exponent {} out of range", e)));
                }
                if closed[i] {
                    return Err(Error::Validation(format!(
                        "vertex {} has an edge and cannot be a closed root",
                        i + 1
                    )));
                }
            }
        }
        let f = Forest { r, n, parent, closed };
        if f.has_cycle() {
            return Err(Error::Validation("parent map contains a cycle".into()));
        }
        Ok(f)
    }

    fn has_cycle(&self) -> bool {
        // 0 = unvisited, 1 = on current path, 2 = done
        let mut state = vec![0u8; self.n];
        for start in 0..self.n {
            if state[start] != 0 {
                continue;
            }
            let mut path = vec![];
            let mut i = start;
            loop {
                if state[i] == 1 {
                    return true;
                }
                if state[i] == 2 {
                    break;
                }
                state[i] = 1;
                path.push(i);
                match self.parent[i] {
                    Some((j, _)) => i = j,
                    None => break,
                }
            }
            for v in path {
                state[v] = 2;
            }
        }
        false
    }

    pub fn is_root(&self, i: usize) -> bool {
        self.parent[i].is_none()
    }

    pub fn is_open_root(&self, i: usize) -> bool {
        self.is_root(i) && !self.closed[i]
    }

    pub fn is_closed_root(&self, i: usize) -> bool {
        self.is_root(i) && self.closed[i]
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_root(i)).collect()
    }

    pub fn open_roots(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_open_root(i)).collect()
    }

    pub fn closed_roots(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_closed_root(i)).collect()
    }

    /// Edges as (source, target, label exponent).
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        (0..self.n)
            .filter_map(|i| self.parent[i].map(|(j, e)| (i, j, e)))
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.parent.iter().filter(|p| p.is_some()).count()
    }

    pub fn num_closed(&self) -> usize {
        self.closed.iter().filter(|&&c| c).count()
    }

    pub fn num_open(&self) -> usize {
        self.n - self.num_edges() - self.num_closed()
    }

    /// Every edge points at the greater vertex.
    pub fn is_rectified(&self) -> bool {
        self.edges().iter().all(|&(i, j, _)| i < j)
    }

    pub fn is_tree(&self) -> bool {
        self.roots().len() == 1
    }

    /// The root of the component containing i.
    pub fn root_of(&self, mut i: usize) -> usize {
        while let Some((j, _)) = self.parent[i] {
            i = j;
        }
        i
    }

    /// Path i = v_0, v_1, .., v_m = root of i's component.
    pub fn path_to_root(&self, mut i: usize) -> Vec<usize> {
        let mut path = vec![i];
        while let Some((j, _)) = self.parent[i] {
            i = j;
            path.push(i);
        }
        path
    }

    /// Vertices whose path to the root passes through i (including i).
    pub fn subtree(&self, i: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.path_to_root(v).contains(&i))
            .collect()
    }

    /// Vertex sets of the components, each listed in increasing order,
    /// grouped by root in increasing root order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comps: Vec<(usize, Vec<usize>)> =
            self.roots().into_iter().map(|root| (root, vec![])).collect();
        for v in 0..self.n {
            let root = self.root_of(v);
            comps.iter_mut().find(|(rt, _)| *rt == root).unwrap().1.push(v);
        }
        comps.into_iter().map(|(_, vs)| vs).collect()
    }

    /// The action of zeta*w: an edge i ->^e j becomes
    /// w(i) ->^{e + zeta_{w(i)} - zeta_{w(j)}} w(j); roots move with w
    /// and keep their open/closed state.
    pub fn act(&self, g: &WElem) -> Forest {
        assert_eq!(g.n(), self.n);
        let mut parent = vec![None; self.n];
        let mut closed = vec![false; self.n];
        for i in 0..self.n {
            let wi = g.perm.apply(i);
            match self.parent[i] {
                Some((j, e)) => {
                    let wj = g.perm.apply(j);
                    let e2 = (e + g.zeta[wi] + self.r - g.zeta[wj] % self.r) % self.r;
                    parent[wi] = Some((wj, e2));
                }
                None => closed[wi] = self.closed[i],
            }
        }
        Forest { r: self.r, n: self.n, parent, closed }
    }

    /// (-1)^{i - #{open roots with index < i}} (0-indexed i): the sign of
    /// moving the i-th wedge factor to the front past the non-scalar ones.
    pub fn epsilon_i(&self, i: usize) -> i64 {
        let open_before = (0..i).filter(|&v| self.is_open_root(v)).count();
        if (i - open_before) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// (-1)^{#inversions of w on pairs of open roots}.
    pub fn epsilon_w(&self, w: &Perm) -> i64 {
        let open = self.open_roots();
        let mut inv = 0usize;
        for (a, &i) in open.iter().enumerate() {
            for &j in &open[a + 1..] {
                if w.apply(i) > w.apply(j) {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Text form: vertices separated by ';', each "i" (open root),
    /// "i*" (closed root), or "i->j" / "i->j[e]" (edge, exponent e).
    pub fn encode(&self) -> String {
        let parts: Vec<String> = (0..self.n)
            .map(|i| match self.parent[i] {
                Some((j, 0)) => format!("{}->{}", i + 1, j + 1),
                Some((j, e)) => format!("{}->{}[{}]", i + 1, j + 1, e),
                None if self.closed[i] => format!("{}*", i + 1),
                None => format!("{}", i + 1),
            })
            .collect();
        parts.join(";")
    }

    pub fn parse(r: u64, n: usize, s: &str) -> Result<Forest, Error> {
        let mut parent: Vec<Option<(usize, u64)>> = vec![None; n];
        let mut closed = vec![false; n];
        let mut seen = vec![false; n];
        let mut mentioned = vec![false; n];
        for raw in s.split(';') {
            let item = raw.trim();
            if item.is_empty() {
                continue;
            }
            let (head, rest) = match item.split_once("->") {
                Some((h, t)) => (h.trim(), Some(t.trim())),
                None => (item, None),
            };
            let (head, star) = match head.strip_suffix('*') {
                Some(h) => (h.trim(), true),
                None => (head, false),
            };
            let i: usize = head
                .parse::<usize>()
                .ok()
                .filter(|&v| v >= 1 && v <= n)
                .ok_or_else(|| Error::Parse(format!("bad vertex in {item:?}")))?
                - 1;
            if seen[i] {
                return Err(Error::Parse(format!("vertex {} listed twice", i + 1)));
            }
            seen[i] = true;
            match rest {
                None => closed[i] = closed[i] || star,
                Some(t) => {
                    if star {
                        return Err(Error::Parse(format!("edge source cannot carry '*' in {item:?}")));
                    }
                    // a trailing '*' on the target marks it closed
                    let (t, target_star) = match t.strip_suffix('*') {
                        Some(t) => (t.trim(), true),
                        None => (t, false),
                    };
                    let (js, e) = match t.split_once('[') {
                        Some((js, es)) => {
                            let es = es
                                .strip_suffix(']')
                                .ok_or_else(|| Error::Parse(format!("missing ']' in {item:?}")))?;
                            let e: i64 = es
                                .trim()
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad label in {item:?}")))?;
                            (js.trim(), e.rem_euclid(r as i64) as u64)
                        }
                        None => (t, 0),
                    };
                    let (js, target_star) = match js.strip_suffix('*') {
                        Some(js) => (js.trim(), true),
                        None => (js, target_star),
                    };
                    let j: usize = js
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1 && v <= n)
                        .ok_or_else(|| Error::Parse(format!("bad vertex in {item:?}")))?
                        - 1;
                    parent[i] = Some((j, e));
                    if target_star {
                        closed[j] = true;
                    }
                    mentioned[j] = true;
                }
            }
        }
        // vertices that only appear as edge targets are roots (open
        // unless starred); completely absent vertices are an error
        if let Some(i) = (0..n).find(|&i| !seen[i] && !mentioned[i]) {
            return Err(Error::Parse(format!("vertex {} is not listed", i + 1)));
        }
        Forest::new(r, n, parent, closed)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

/// Visits every decorated forest in F(r,n), optionally restricted to
/// trees (single component, root treated as open).
fn visit_forests(r: u64, n: usize, trees_only: bool, f: &mut dyn FnMut(&Forest)) {
    // Per-vertex choices: 0 = open root, 1 = closed root (forests only),
    // 2 + (j' * r + e) = edge to the j'-th other vertex with label e.
    let base = if trees_only { 1 } else { 2 };
    let radix = base + (n - 1) * r as usize;
    let mut choice = vec![0usize; n];
    let mut forest = Forest {
        r,
        n,
        parent: vec![None; n],
        closed: vec![false; n],
    };
    loop {
        // decode
        for i in 0..n {
            let c = choice[i];
            if c < base {
                forest.parent[i] = None;
                forest.closed[i] = c == 1;
            } else {
                let c = c - base;
                let jp = c / r as usize;
                let j = if jp >= i { jp + 1 } else { jp };
                forest.parent[i] = Some((j, (c % r as usize) as u64));
                forest.closed[i] = false;
            }
        }
        if !forest.has_cycle() && (!trees_only || forest.is_tree()) {
            f(&forest);
        }
        // increment mixed-radix counter
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            choice[i] += 1;
            if choice[i] < radix {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub fn for_each_tree(r: u64, n: usize, mut f: impl FnMut(&Forest)) {
    visit_forests(r, n, true, &mut f);
}

pub fn for_each_forest(r: u64, n: usize, mut f: impl FnMut(&Forest)) {
    visit_forests(r, n, false, &mut f);
}

pub fn all_trees(r: u64, n: usize) -> Vec<Forest> {
    let mut out = vec![];
    for_each_tree(r, n, |t| out.push(t.clone()));
    out
}

pub fn all_forests(r: u64, n: usize) -> Vec<Forest> {
    let mut out = vec![];
    for_each_forest(r, n, |t| out.push(t.clone()));
    out
}

pub fn count_trees(r: u64, n: usize) -> u128 {
    let mut c = 0u128;
    for_each_tree(r, n, |_| c += 1);
    c
}

/// Rectified trees directly: each vertex i < n picks a parent j > i and
/// a label; vertex n is the root.
pub fn all_rectified_trees(r: u64, n: usize) -> Vec<Forest> {
    let mut out = vec![];
    rec_build(r, n, 0, true, &mut Forest {
        r,
        n,
        parent: vec![None; n],
        closed: vec![false; n],
    }, &mut out);
    out
}

/// Rectified forests: each vertex picks open, closed, or an edge upward.
pub fn all_rectified_forests(r: u64, n: usize) -> Vec<Forest> {
    let mut out = vec![];
    rec_build(r, n, 0, false, &mut Forest {
        r,
        n,
        parent: vec![None; n],
        closed: vec![false; n],
    }, &mut out);
    out
}

fn rec_build(r: u64, n: usize, i: usize, trees_only: bool, cur: &mut Forest, out: &mut Vec<Forest>) {
    if i == n {
        if !trees_only || cur.is_tree() {
            out.push(cur.clone());
        }
        return;
    }
    // root options
    cur.parent[i] = None;
    cur.closed[i] = false;
    rec_build(r, n, i + 1, trees_only, cur, out);
    if !trees_only {
        cur.closed[i] = true;
        rec_build(r, n, i + 1, trees_only, cur, out);
        cur.closed[i] = false;
    }
    // upward edges (always acyclic and rectified)
    for j in i + 1..n {
        for e in 0..r {
            cur.parent[i] = Some((j, e));
            rec_build(r, n, i + 1, trees_only, cur, out);
        }
    }
    cur.parent[i] = None;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Wreath;

    #[test]
    fn counting_small() {
        // |T(r,n)| = (rn)^{n-1}
        assert_eq!(count_trees(1, 3), 9);
        assert_eq!(count_trees(2, 3), 36);
        assert_eq!(count_trees(3, 2), 6);
        // rectified trees: r^{n-1} (n-1)!
        assert_eq!(all_rectified_trees(2, 3).len(), 8);
        assert_eq!(all_rectified_trees(3, 3).len(), 18);
        // F(2,2) has 12 elements
        assert_eq!(all_forests(2, 2).len(), 12);
        // rectified forests of F(1,n): each i<n has n-i+1 options, vertex n has 2
        assert_eq!(all_rectified_forests(1, 2).len(), 6);
    }

    #[test]
    fn parse_roundtrip() {
        let f = Forest::parse(2, 4, "1->2[1];3*;2->4;4").unwrap();
        assert_eq!(f.encode(), "1->2[1];2->4;3*;4");
        assert_eq!(Forest::parse(2, 4, &f.encode()).unwrap(), f);
        assert!(Forest::parse(2, 2, "1->2;2->1").is_err()); // cycle
        assert!(Forest::parse(2, 2, "1->1;2").is_err()); // loop
        assert!(Forest::parse(2, 2, "1").is_err()); // missing vertex
        assert!(Forest::parse(2, 3, "1->2[5];2;3").unwrap().parent[0] == Some((1, 1)));
    }

    #[test]
    fn structure_queries() {
        let f = Forest::parse(1, 5, "1->3;2->3;3;4*;5").unwrap();
        assert_eq!(f.roots(), vec![2, 3, 4]);
        assert_eq!(f.open_roots(), vec![2, 4]);
        assert_eq!(f.closed_roots(), vec![3]);
        assert_eq!(f.num_edges(), 2);
        assert_eq!(f.root_of(0), 2);
        assert_eq!(f.subtree(2), vec![0, 1, 2]);
        assert_eq!(f.components(), vec![vec![0, 1, 2], vec![3], vec![4]]);
        assert!(f.is_rectified());
        assert!(!Forest::parse(1, 2, "2->1;1").unwrap().is_rectified());
    }

    #[test]
    fn action_is_group_action() {
        let g = Wreath { r: 2, n: 3 };
        let forests = all_forests(2, 3);
        let els = g.elements();
        for f in forests.iter().step_by(7) {
            assert_eq!(f.act(&g.identity()), *f);
            for a in &els {
                for b in &els {
                    assert_eq!(f.act(b).act(a), f.act(&g.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn action_example() {
        // zeta = (z,1) acting on 1 ->^{1} 2 multiplies the label by
        // zeta_1 zeta_2^{-1} = z.
        let f = Forest::parse(3, 2, "1->2;2").unwrap();
        let g = WElem { zeta: vec![1, 0], perm: Perm::identity(2) };
        assert_eq!(f.act(&g).encode(), "1->2[1];2");
        // w = (1 2) moves the edge: w(1) -> w(2) keeps the label.
        let w = WElem::from_perm(Perm { map: vec![1, 0] });
        assert_eq!(f.act(&w).encode(), "1;2->1");
    }

    #[test]
    fn signs() {
        // For F = 1;2 (both open), eps_1 = eps_2 = +1; swapping them is
        // one inversion on open roots.
        let f = Forest::parse(1, 2, "1;2").unwrap();
        assert_eq!(f.epsilon_i(0), 1);
        assert_eq!(f.epsilon_i(1), 1);
        let w = Perm { map: vec![1, 0] };
        assert_eq!(f.epsilon_w(&w), -1);
        // 1* ; 2 open: eps at vertex 2 counts one non-open predecessor
        let f2 = Forest::parse(1, 2, "1*;2").unwrap();
        assert_eq!(f2.epsilon_i(0), 1);
        assert_eq!(f2.epsilon_i(1), -1);
        assert_eq!(f2.epsilon_w(&w), 1); // only one open root, no inversions
    }

    #[test]
    fn graded_counts_match_binomials() {
        let all = all_forests(1, 3);
        let by_kl: std::collections::BTreeMap<(usize, usize), usize> = {
            let mut m = std::collections::BTreeMap::new();
            for f in &all {
                *m.entry((f.num_edges(), f.num_closed())).or_insert(0) += 1;
            }
            m
        };
        // k=2,l=0 forests on 3 vertices are trees: 3^2 = 9
        assert_eq!(by_kl[&(2, 0)], 9);
        // k=0: no edges, choose closed subset: C(3,l)
        assert_eq!(by_kl[&(0, 0)], 1);
        assert_eq!(by_kl[&(0, 1)], 3);
        assert_eq!(by_kl[&(0, 3)], 1);
    }
}
