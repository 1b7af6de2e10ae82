//! End-to-end verification suite. Each criterion is an independently
//! checkable exact identity (counting formulas, symbolic-form oracles,
//! character equalities); the CLI `verify` subcommand runs one criterion,
//! the acceptance integration test runs them all.

use std::collections::BTreeMap;

use num::Zero;

use crate::characters::{
    decompose_symmetric, mystery_identity_sides, v_character, ClassFunction,
};
use crate::cyclotomic::{gcd, RootOfUnity};
use crate::forest::{
    all_forests, all_rectified_trees, all_trees, count_trees, for_each_tree, Forest,
};
use crate::forms::{
    alpha_form, beta_bar_form, omega, omega_edge, realize_os, twisted_differential,
    verify_nbc_chain_identity, verify_pullback_identity, verify_reduction_against_forms,
    DifferentialForm,
};
use crate::induction::{
    verify_cyclic_induction, verify_diagonal_cyclic_induction, verify_wreath_induction,
};
use crate::local_system::{
    admissible_rectified, beta_element, betti_numbers, isotypic_character,
    module_generators, WeightVector,
};
use crate::group::Wreath;
use crate::os_algebra::{os_character, OsReducer};
use crate::rational::{rat, rat_int, Rational};
use crate::tree_module::{
    annihilator_check, realize_r1, realize_tree, verify_ls_identity, Rectifier,
};

/// One acceptance criterion: a named exact check.
pub struct Criterion {
    pub name: &'static str,
    pub summary: &'static str,
    pub run: fn() -> Result<(), String>,
}

macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

/// The full suite, in a fixed order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            name: "tree-counts",
            summary: "labelled tree counts (rn)^(n-1) and r^(n-1)(n-1)! for r<=4, n<=6",
            run: tree_counts,
        },
        Criterion {
            name: "two-point-catalog",
            summary: "all 12 two-point forests realize to the expected forms",
            run: two_point_catalog,
        },
        Criterion {
            name: "rectification-oracle",
            summary: "rectification matches rational-function realization, n<=4",
            run: rectification_oracle,
        },
        Criterion {
            name: "tree-module-rank",
            summary: "tree module has rank r^(n-1)(n-1)! for r<=3, n<=5",
            run: tree_module_rank,
        },
        Criterion {
            name: "ls-identity",
            summary: "cycle-action identity c_n^p.[T0] = b_{n,p}.[T0], n<=6, and annihilators",
            run: ls_identity,
        },
        Criterion {
            name: "betti-numbers",
            summary: "twisted Betti numbers: (-1/2)^4 table and the s/n support window, n<=6",
            run: betti_window,
        },
        Criterion {
            name: "twisted-closedness",
            summary: "(d + w^) beta-bar(F) = 0 for every admissible rectified F, n<=4",
            run: twisted_closedness,
        },
        Criterion {
            name: "pullback-identity",
            summary: "beta(F) = z^{ra} phi*(beta-bar(F)) for n<=3, r<=4",
            run: pullback_identity,
        },
        Criterion {
            name: "nbc-chain",
            summary: "alpha_T = (1/p_T) alpha for every ascending tree, n<=4",
            run: nbc_chain,
        },
        Criterion {
            name: "character-identities",
            summary: "induced-character identities: cyclic, wreath, and the S_4 decompositions",
            run: character_identities,
        },
        Criterion {
            name: "module-generators",
            summary: "generator enumeration: (1/2)^4 pairings and coprime spanning trees",
            run: generators_criterion,
        },
        Criterion {
            name: "relation-suites",
            summary: "all straightening relations hold for n<=3, r<=2, against the form oracle",
            run: relation_suites,
        },
    ]
}

/// Looks up a criterion by name.
pub fn criterion_by_name(name: &str) -> Option<Criterion> {
    criteria().into_iter().find(|c| c.name == name)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn tree_counts() -> Result<(), String> {
    for r in 1..=4u64 {
        for n in 2..=6usize {
            let expected = (r as u128 * n as u128).pow(n as u32 - 1);
            let got = count_trees(r, n);
            check!(got == expected, "|T({r},{n})| = {got}, expected {expected}");
            let rect = all_rectified_trees(r, n).len() as u128;
            let expected_rect = (r as u128).pow(n as u32 - 1) * factorial(n - 1);
            check!(
                rect == expected_rect,
                "|ascending T({r},{n})| = {rect}, expected {expected_rect}"
            );
        }
    }
    Ok(())
}

fn two_point_catalog() -> Result<(), String> {
    let n = 2;
    let mut expected: BTreeMap<String, DifferentialForm> = BTreeMap::new();
    for e in [0i64, 1] {
        let eta = RootOfUnity::from_exp(e, 2);
        let o1 = omega(n, 0);
        let o2 = omega(n, 1);
        let o12 = omega_edge(n, 0, 1, eta);
        let o21 = omega_edge(n, 1, 0, eta);
        let suffix = if e == 0 { String::new() } else { format!("[{e}]") };
        expected.insert("1;2".into(), DifferentialForm::one(n));
        expected.insert(format!("1->2{suffix};2"), o12.neg());
        expected.insert(format!("1;2->1{suffix}"), o21.clone());
        expected.insert("1;2*".into(), o2.clone());
        expected.insert("1*;2".into(), o1.neg());
        expected.insert(format!("1->2{suffix};2*"), o12.wedge(&o2));
        expected.insert(format!("1*;2->1{suffix}"), o1.wedge(&o21));
        expected.insert("1*;2*".into(), o1.wedge(&o2));
    }
    let forests = all_forests(2, 2);
    check!(forests.len() == 12, "|F(2,2)| = {}, expected 12", forests.len());
    check!(expected.len() == 12, "expected-table size {}", expected.len());
    let mut red = OsReducer::new();
    for f in forests {
        let want = expected
            .get(&f.encode())
            .ok_or_else(|| format!("unexpected forest {f}"))?;
        check!(alpha_form(&f) == *want, "alpha({f}) differs from the table");
        let realized = realize_os(&red.reduce_full(&f));
        check!(realized == *want, "realized reduction of {f} differs from the table");
    }
    Ok(())
}

fn rectification_oracle() -> Result<(), String> {
    for n in 2..=4usize {
        let mut rect = Rectifier::new();
        for t in all_trees(1, n) {
            let v = rect.rectify(&t);
            let lhs = realize_r1(&v).map_err(|e| e.to_string())?;
            check!(lhs == realize_tree(&t), "realization mismatch for {t}");
        }
    }
    Ok(())
}

/// Row-reduces `row` against `pivots` (keyed by leading index); returns
/// true and installs a new pivot when the row is independent.
fn absorb_row(
    pivots: &mut BTreeMap<usize, BTreeMap<usize, Rational>>,
    mut row: BTreeMap<usize, Rational>,
) -> bool {
    while let Some((&lead, c)) = row.iter().next() {
        let c = c.clone();
        match pivots.get(&lead) {
            Some(p) => {
                let p = p.clone();
                for (k, v) in p {
                    let entry = row.entry(k).or_insert_with(Rational::zero);
                    *entry -= &c * v;
                }
                row.retain(|_, v| !v.is_zero());
            }
            None => {
                let inv = c.recip();
                let normalized: BTreeMap<usize, Rational> =
                    row.into_iter().map(|(k, v)| (k, v * &inv)).collect();
                pivots.insert(lead, normalized);
                return true;
            }
        }
    }
    false
}

fn tree_module_rank() -> Result<(), String> {
    for r in 1..=3u64 {
        for n in 2..=5usize {
            let basis = all_rectified_trees(r, n);
            let index: BTreeMap<&Forest, usize> =
                basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
            let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
            let mut rank = 0usize;
            let mut rect = Rectifier::new();
            let mut bad: Option<String> = None;
            for_each_tree(r, n, |t| {
                if bad.is_some() {
                    return;
                }
                let v = rect.rectify(t);
                let mut row = BTreeMap::new();
                for (f, c) in &v.terms {
                    match index.get(f) {
                        Some(&i) => {
                            row.insert(i, c.clone());
                        }
                        None => bad = Some(format!("rectify({t}) leaves the basis at {f}")),
                    }
                }
                if absorb_row(&mut pivots, row) {
                    rank += 1;
                }
            });
            if let Some(msg) = bad {
                return Err(msg);
            }
            check!(
                rank == basis.len(),
                "rank of rectified images for (r,n)=({r},{n}) is {rank}, expected {}",
                basis.len()
            );
        }
    }
    Ok(())
}

fn ls_identity() -> Result<(), String> {
    for n in 2..=6usize {
        for p in 0..n {
            check!(verify_ls_identity(n, p), "cycle identity fails at n={n}, p={p}");
        }
    }
    for r in 1..=3u64 {
        for n in 2..=5usize {
            check!(annihilator_check(r, n), "annihilator check fails at r={r}, n={n}");
        }
    }
    Ok(())
}

fn betti_window() -> Result<(), String> {
    let a = WeightVector::with_minimal_r(vec![rat(-1, 2); 4]).map_err(|e| e.to_string())?;
    let b = betti_numbers(&a);
    let expected = BTreeMap::from([(2usize, 3u128), (3, 12), (4, 9)]);
    check!(b == expected, "Betti numbers for (-1/2)^4 are {b:?}, expected {expected:?}");
    for n in 2..=6usize {
        for s in -6i64..=6 {
            let a = WeightVector::with_minimal_r(vec![rat(s, n as i64); n])
                .map_err(|e| e.to_string())?;
            let b = betti_numbers(&a);
            let g = if s == 0 { n } else { gcd(s.unsigned_abs(), n as u64) as usize };
            for p in 0..=n {
                let nonzero = b.get(&p).copied().unwrap_or(0) > 0;
                check!(
                    nonzero == (n - g <= p),
                    "support window fails at n={n}, s={s}, p={p}"
                );
            }
        }
    }
    Ok(())
}

fn twisted_closedness() -> Result<(), String> {
    let weights: Vec<Vec<Rational>> = vec![
        vec![rat(-1, 2); 4],
        vec![rat(1, 2); 4],
        vec![rat(1, 3); 3],
        vec![rat(1, 4); 4],
        vec![rat(1, 2), rat(1, 2), rat_int(-1), rat_int(0)],
    ];
    for w in weights {
        let a = WeightVector::with_minimal_r(w.clone()).map_err(|e| e.to_string())?;
        for f in admissible_rectified(&a) {
            let form = beta_bar_form(&a, &f).map_err(|e| e.to_string())?;
            check!(
                twisted_differential(&a, &form).is_zero(),
                "twisted differential of beta-bar({f}) is nonzero for weights {w:?}"
            );
        }
    }
    Ok(())
}

fn pullback_identity() -> Result<(), String> {
    let mut weights: Vec<(Vec<Rational>, u64)> = vec![
        (vec![rat(3, 4), rat(1, 4)], 4),
        (vec![rat(1, 4), rat(1, 4), rat(1, 2)], 4),
        (vec![rat_int(1), rat_int(0), rat_int(-1)], 1),
    ];
    for n in 2..=3usize {
        for r in 1..=4u64 {
            for s in [-1i64, 1, 2, 3] {
                weights.push((vec![rat(s, r as i64); n], r));
            }
        }
    }
    for (w, r) in weights {
        let a = WeightVector::new(w.clone(), r).map_err(|e| e.to_string())?;
        for f in admissible_rectified(&a) {
            let ok = verify_pullback_identity(&a, &f).map_err(|e| e.to_string())?;
            check!(ok, "pullback identity fails for {f} with weights {w:?}, r={r}");
        }
    }
    Ok(())
}

fn nbc_chain() -> Result<(), String> {
    for n in 2..=4usize {
        for t in all_rectified_trees(1, n) {
            let ok = verify_nbc_chain_identity(&t).map_err(|e| e.to_string())?;
            check!(ok, "chain identity fails for {t}");
        }
    }
    Ok(())
}

fn character_identities() -> Result<(), String> {
    // induction from the cyclic subgroup recovers the tree module
    for n in 2..=5usize {
        let ok = verify_cyclic_induction(n).map_err(|e| e.to_string())?;
        check!(ok, "cyclic induction fails at n={n}");
    }
    // the arithmetic identity behind the wreath induction, all divisors
    for r in 1..=6u64 {
        for m in 1..=6u64 {
            for d in 1..=r * m {
                if (r * m) % d != 0 {
                    continue;
                }
                let (lhs, rhs, direct) = mystery_identity_sides(r, m, d);
                check!(
                    lhs == rhs && rhs == direct,
                    "divisor-sum identity fails at r={r}, m={m}, d={d}"
                );
                if d == 1 {
                    check!(lhs == rat_int(1), "d=1 value is {lhs}, expected 1");
                }
            }
        }
    }
    // the five graded pieces of the half-integral local system on 4 points
    let a = WeightVector::with_minimal_r(vec![rat(1, 2); 4]).map_err(|e| e.to_string())?;
    let stated_pieces: Vec<((usize, usize), Vec<Vec<usize>>)> = vec![
        ((2, 0), vec![vec![3, 1]]),
        ((3, 0), vec![vec![3, 1], vec![2, 1, 1]]),
        ((2, 1), vec![vec![4], vec![3, 1], vec![2, 2]]),
        ((3, 1), vec![vec![3, 1], vec![2, 1, 1]]),
        ((2, 2), vec![vec![4], vec![2, 2]]),
    ];
    let stated: BTreeMap<(usize, usize), Vec<Vec<usize>>> = stated_pieces.into_iter().collect();
    for k in 0..=3usize {
        for l in 0..=(4 - k) {
            let chi = isotypic_character(&a, k, l).map_err(|e| e.to_string())?;
            let dec = decompose_symmetric(&chi).map_err(|e| e.to_string())?;
            let want: BTreeMap<Vec<usize>, Rational> = stated
                .get(&(k, l))
                .map(|ps| ps.iter().map(|p| (p.clone(), rat_int(1))).collect())
                .unwrap_or_default();
            check!(
                dec == want,
                "decomposition of the (k,l)=({k},{l}) piece is {dec:?}, expected {want:?}"
            );
        }
    }
    // induction from the embedded wreath product, (r,n,s) = (2,4,1)
    for (k, l) in [(2usize, 0usize), (3, 0), (2, 1), (3, 1), (2, 2)] {
        let ok = verify_wreath_induction(2, 4, 1, k, l).map_err(|e| e.to_string())?;
        check!(ok, "wreath induction fails at (k,l)=({k},{l})");
    }
    // the two-point tables for r = 2
    let g = Wreath { r: 2, n: 2 };
    let one = ClassFunction::trivial(g);
    let eps = ClassFunction::sign(g);
    let prod = ClassFunction::prod(g);
    let table: Vec<((usize, usize), ClassFunction)> = vec![
        ((0, 0), one.clone()),
        ((1, 0), one.add(&prod)),
        ((0, 1), one.add(&eps)),
        ((1, 1), one.add(&prod)),
        ((0, 2), eps.clone()),
    ];
    for ((k, l), want) in table {
        let chi = os_character(2, 2, k, l).map_err(|e| e.to_string())?;
        check!(chi == want, "graded character of (k,l)=({k},{l}) on two points differs");
    }
    check!(
        v_character(2, 2) == eps.add(&ClassFunction::det(g)),
        "two-point tree module is not sign + det"
    );
    for (r, n) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let ok = verify_diagonal_cyclic_induction(r, n).map_err(|e| e.to_string())?;
        check!(ok, "diagonal cyclic induction fails at r={r}, n={n}");
    }
    Ok(())
}

fn generators_criterion() -> Result<(), String> {
    // half-integral weights on four points: the degree-2 generators are
    // exactly the three perfect pairings
    let a = WeightVector::with_minimal_r(vec![rat(1, 2); 4]).map_err(|e| e.to_string())?;
    let gens = module_generators(&a);
    let degree2: Vec<&Forest> = gens.iter().filter(|f| f.num_edges() == 2).collect();
    check!(
        degree2.len() == 3,
        "expected 3 degree-2 generators, found {}",
        degree2.len()
    );
    for f in degree2 {
        let comps = f.components();
        check!(
            comps.len() == 2 && comps.iter().all(|c| c.len() == 2),
            "degree-2 generator {f} is not a pairing"
        );
    }
    // coprime uniform weights s/n: the generators are exactly the
    // ascending spanning trees with an open root
    for n in 2..=5usize {
        for s in 1..n as i64 {
            if gcd(s as u64, n as u64) != 1 {
                continue;
            }
            let a = WeightVector::with_minimal_r(vec![rat(s, n as i64); n])
                .map_err(|e| e.to_string())?;
            let gens = module_generators(&a);
            check!(
                gens.len() as u128 == factorial(n - 1),
                "expected {} generators for s={s}, n={n}, found {}",
                factorial(n - 1),
                gens.len()
            );
            for f in &gens {
                check!(
                    f.is_tree() && f.num_edges() == n - 1 && f.num_closed() == 0,
                    "generator {f} is not an open spanning tree"
                );
            }
        }
    }
    Ok(())
}

fn relation_suites() -> Result<(), String> {
    for (r, n) in [(1u64, 2usize), (1, 3), (2, 2), (2, 3)] {
        for graded in [false, true] {
            check_untwisted_relations(r, n, graded)?;
        }
        // the symbolic oracle: reductions agree with honest differential forms
        let mut red = OsReducer::new();
        for f in all_forests(r, n) {
            check!(
                verify_reduction_against_forms(&f, &mut red),
                "reduction of {f} disagrees with its differential form"
            );
        }
    }
    for w in [vec![rat(1, 2), rat(1, 2), rat_int(0)], vec![rat(1, 3); 3]] {
        check_twisted_relations(&w)?;
    }
    Ok(())
}

fn check_untwisted_relations(r: u64, n: usize, graded: bool) -> Result<(), String> {
    let mut red = OsReducer::new();
    let reduce = |red: &mut OsReducer, f: &Forest| {
        if graded { red.reduce_graded(f) } else { red.reduce_full(f) }
    };
    for f in all_forests(r, n) {
        // triple relation among pairs of edges i -> k, j -> k
        for i in 0..n {
            let (ki, ei) = match f.parent[i] {
                Some(p) => p,
                None => continue,
            };
            for j in 0..n {
                if j == i {
                    continue;
                }
                let (kj, ej) = match f.parent[j] {
                    Some(p) => p,
                    None => continue,
                };
                if ki != kj {
                    continue;
                }
                let mut f1 = f.clone();
                f1.parent[i] = Some((j, (ei + r - ej) % r));
                let mut f2 = f.clone();
                f2.parent[j] = Some((i, (ej + r - ei) % r));
                let lhs = reduce(&mut red, &f1).add(&reduce(&mut red, &f2));
                check!(lhs == reduce(&mut red, &f), "triple relation fails at {f}");
            }
        }
        // flip relations at roots
        for i in 0..n {
            let (j, e) = match f.parent[i] {
                Some(p) => p,
                None => continue,
            };
            if !f.is_root(j) {
                continue;
            }
            let mut flip = f.clone();
            flip.parent[i] = None;
            flip.closed[i] = f.closed[j];
            flip.closed[j] = false;
            flip.parent[j] = Some((i, (r - e) % r));
            if f.is_open_root(j) {
                // [F] + (-1)^b [F'] = 0 with b the number of open roots
                // strictly between the flipped vertices
                let (lo, hi) = (i.min(j), i.max(j));
                let b = (lo + 1..hi).filter(|&s| f.is_open_root(s)).count();
                let mut flipped = reduce(&mut red, &flip);
                if b % 2 == 1 {
                    flipped = flipped.neg();
                }
                check!(
                    reduce(&mut red, &f).add(&flipped).is_zero(),
                    "open flip fails at {f}"
                );
                continue;
            }
            let sum = reduce(&mut red, &f).add(&reduce(&mut red, &flip));
            if graded {
                check!(sum.is_zero(), "graded closed flip fails at {f}");
            } else {
                let mut cut = f.clone();
                cut.parent[i] = None;
                cut.closed[i] = true;
                check!(sum == reduce(&mut red, &cut), "closed flip fails at {f}");
            }
        }
    }
    Ok(())
}

fn check_twisted_relations(w: &[Rational]) -> Result<(), String> {
    let a = WeightVector::with_minimal_r(w.to_vec()).map_err(|e| e.to_string())?;
    let n = a.n();
    let mut red = OsReducer::new();
    let beta = |red: &mut OsReducer, f: &Forest| {
        beta_element(&a, f, red, false).map_err(|e| e.to_string())
    };
    for f in all_forests(1, n) {
        for i in 0..n {
            let ki = match f.parent[i] {
                Some((k, _)) => k,
                None => continue,
            };
            for j in 0..n {
                if j == i {
                    continue;
                }
                match f.parent[j] {
                    Some((kj, _)) if kj == ki => {}
                    _ => continue,
                }
                let mut f1 = f.clone();
                f1.parent[i] = Some((j, 0));
                let mut f2 = f.clone();
                f2.parent[j] = Some((i, 0));
                let lhs = beta(&mut red, &f1)?.add(&beta(&mut red, &f2)?);
                check!(lhs == beta(&mut red, &f)?, "twisted triple relation fails at {f}");
            }
        }
        for i in 0..n {
            let (j, _) = match f.parent[i] {
                Some(p) => p,
                None => continue,
            };
            if !f.is_root(j) {
                continue;
            }
            let mut flip = f.clone();
            flip.parent[i] = None;
            flip.closed[i] = f.closed[j];
            flip.closed[j] = false;
            flip.parent[j] = Some((i, 0));
            let bf = beta(&mut red, &f)?;
            let bflip = beta(&mut red, &flip)?;
            if f.is_open_root(j) {
                let (lo, hi) = (i.min(j), i.max(j));
                let b = (lo + 1..hi).filter(|&s| f.is_open_root(s)).count();
                let signed = if b % 2 == 1 { bflip.neg() } else { bflip };
                check!(bf.add(&signed).is_zero(), "twisted open flip fails at {f}");
            } else {
                let sum = bf.add(&bflip);
                let mut cut = f.clone();
                cut.parent[i] = None;
                cut.closed[i] = true;
                check!(sum == beta(&mut red, &cut)?, "twisted closed flip fails at {f}");
                if !a.is_admissible(&cut).map_err(|e| e.to_string())? {
                    check!(sum.is_zero(), "inadmissible cut term is nonzero at {f}");
                }
            }
        }
    }
    Ok(())
}
