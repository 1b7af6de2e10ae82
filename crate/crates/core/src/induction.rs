//! Induced characters from block stabilizers and the character-level
//! verification of the isomorphisms between graded Orlik-Solomon pieces
//! (and their isotypic parts) and sums of inductions built from the tree
//! modules V(r,m).

use std::collections::BTreeMap;

use crate::characters::{
    cyclic_subgroup, diagonal_times_cyclic, induced_character, partitions, v_character,
    v_trace, ClassFunction,
};
use crate::cyclotomic::Cyclotomic;
use crate::error::Error;
use crate::group::{WElem, Wreath};
use crate::local_system::{isotypic_character, WeightVector};
use crate::os_algebra::os_character;
use crate::rational::{rat, rat_int, Rational};
use crate::tree_module::Rectifier;

/// Partitions of `total` with exactly `len` parts.
pub fn partitions_with_length(total: usize, len: usize) -> Vec<Vec<usize>> {
    partitions(total)
        .into_iter()
        .filter(|p| p.len() == len)
        .collect()
}

/// Consecutive blocks of the given sizes: the open blocks first, then the
/// closed blocks; returns (start, size, is_open) per block.
fn block_layout(open: &[usize], closed: &[usize]) -> Vec<(usize, usize, bool)> {
    let mut out = vec![];
    let mut start = 0usize;
    for &s in open {
        out.push((start, s, true));
        start += s;
    }
    for &s in closed {
        out.push((start, s, false));
        start += s;
    }
    out
}

/// The induced permutation of block indices, if the element preserves the
/// block family respecting the open/closed flags; None otherwise.
fn induced_block_perm(
    blocks: &[(usize, usize, bool)],
    h: &WElem,
) -> Option<Vec<usize>> {
    let n = h.n();
    let mut owner = vec![0usize; n];
    for (b, &(start, size, _)) in blocks.iter().enumerate() {
        for v in start..start + size {
            owner[v] = b;
        }
    }
    let mut pi = vec![usize::MAX; blocks.len()];
    for (b, &(start, size, open)) in blocks.iter().enumerate() {
        let c = owner[h.perm.apply(start)];
        let (_, csize, copen) = blocks[c];
        if csize != size || copen != open {
            return None;
        }
        for v in start..start + size {
            if owner[h.perm.apply(v)] != c {
                return None;
            }
        }
        pi[b] = c;
    }
    Some(pi)
}

fn perm_sign_of(indices: &[usize]) -> i64 {
    let mut inv = 0usize;
    for (a, &x) in indices.iter().enumerate() {
        for &y in &indices[a + 1..] {
            if x > y {
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

/// The restriction of h^q to a block that it maps to itself, relabelled
/// to the letters 0..size-1.
fn restricted_element(group: Wreath, h: &WElem, q: usize, start: usize, size: usize) -> WElem {
    let hq = group.pow(h, q as u64);
    let mut map = vec![0usize; size];
    let mut zeta = vec![0u64; size];
    for pos in 0..size {
        map[pos] = hq.perm.apply(start + pos) - start;
        zeta[pos] = hq.zeta[start + pos];
    }
    WElem { zeta, perm: crate::group::Perm { map } }
}

/// The character, on the block-family stabilizer, of the module
/// (⊗_blocks V(r, size)) with equal-size same-flag blocks permuted, the
/// permutation of the open blocks twisted by its sign.
fn stabilizer_character_value(
    group: Wreath,
    blocks: &[(usize, usize, bool)],
    pi: &[usize],
    h: &WElem,
    rect: &mut Rectifier,
) -> Rational {
    // sign of the permutation induced on the open blocks
    let open_images: Vec<usize> = blocks
        .iter()
        .enumerate()
        .filter(|(_, &(_, _, open))| open)
        .map(|(b, _)| pi[b])
        .collect();
    let mut val = rat_int(perm_sign_of(&open_images));
    // one trace factor per cycle of the block permutation
    let mut seen = vec![false; blocks.len()];
    for b0 in 0..blocks.len() {
        if seen[b0] {
            continue;
        }
        let mut q = 0usize;
        let mut b = b0;
        loop {
            seen[b] = true;
            q += 1;
            b = pi[b];
            if b == b0 {
                break;
            }
        }
        let (start, size, _) = blocks[b0];
        let sub = restricted_element(group, h, q, start, size);
        val *= v_trace(rect, group.r, &sub);
    }
    val
}

/// Induction to G(r,n) of the tree-module tensor character from the
/// stabilizer of the canonical consecutive block family with the given
/// open and closed block sizes.
pub fn block_induced_character(
    group: Wreath,
    open: &[usize],
    closed: &[usize],
) -> Result<ClassFunction, Error> {
    let total: usize = open.iter().sum::<usize>() + closed.iter().sum::<usize>();
    if total != group.n {
        return Err(Error::Validation(format!(
            "block sizes sum to {total}, ambient has {} letters",
            group.n
        )));
    }
    let blocks = block_layout(open, closed);
    let mut rect = Rectifier::new();
    let mut pairs: Vec<(WElem, Cyclotomic)> = vec![];
    for h in group.elements() {
        if let Some(pi) = induced_block_perm(&blocks, &h) {
            let v = stabilizer_character_value(group, &blocks, &pi, &h, &mut rect);
            pairs.push((h, Cyclotomic::from_rational(v)));
        }
    }
    induced_from_pairs(group, &pairs)
}

/// Induction of an explicitly tabulated character on a subgroup given by
/// (element, value) pairs.
pub fn induced_from_pairs(
    group: Wreath,
    pairs: &[(WElem, Cyclotomic)],
) -> Result<ClassFunction, Error> {
    let table: BTreeMap<&WElem, &Cyclotomic> =
        pairs.iter().map(|(h, v)| (h, v)).collect();
    let els: Vec<WElem> = pairs.iter().map(|(h, _)| h.clone()).collect();
    induced_character(group, &els, |h| (*table.get(h).expect("tabulated")).clone())
}

/// The pairs of partitions indexing the summands for the graded piece
/// with k edges and l closed roots on weight-total `size` vertices.
pub fn summand_partition_pairs(
    size: usize,
    open_count: usize,
    closed_count: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = vec![];
    for t1 in 0..=size {
        let t2 = size - t1;
        for l1 in partitions_with_length(t1, open_count) {
            for l2 in partitions_with_length(t2, closed_count) {
                out.push((l1.clone(), l2));
            }
        }
    }
    out
}

/// Checks that eps_n tensor A^{k,l}(T(r,n)) matches the direct sum of
/// block inductions of tree modules over partition pairs (λ¹, λ²) with
/// |λ¹| + |λ²| = n, ℓ(λ¹) = n-k-l open blocks and ℓ(λ²) = l closed ones.
pub fn verify_graded_induction(r: u64, n: usize, k: usize, l: usize) -> Result<bool, Error> {
    let group = Wreath { r, n };
    if n < k + l {
        return Err(Error::Validation("need k + l <= n".into()));
    }
    let lhs = os_character(r, n, k, l)?.tensor(&ClassFunction::sign(group));
    let mut rhs = ClassFunction::zero(group);
    for (l1, l2) in summand_partition_pairs(n, n - k - l, l) {
        rhs = rhs.add(&block_induced_character(group, &l1, &l2)?);
    }
    Ok(lhs == rhs)
}

/// Checks that eps_n tensor A^{k,l}(T(r,n))_{(s/r)} matches the direct
/// sum over (λ¹, λ²) with |λ¹| + |λ²| = n/r of inductions to S_n from
/// block stabilizers with block sizes r·λ, carrying tree modules
/// V(1, rλ) and the sign twist on open-block permutations.
pub fn verify_isotypic_induction(
    r: u64,
    n: usize,
    s: i64,
    k: usize,
    l: usize,
) -> Result<bool, Error> {
    if n % (r as usize) != 0 {
        return Err(Error::Validation("r must divide n".into()));
    }
    let group = Wreath::symmetric(n);
    let a = WeightVector::new(vec![rat(s, r as i64); n], r)?;
    let lhs = isotypic_character(&a, k, l)?.tensor(&ClassFunction::sign(group));
    let mut rhs = ClassFunction::zero(group);
    for (l1, l2) in summand_partition_pairs(n / r as usize, n - k - l, l) {
        let open: Vec<usize> = l1.iter().map(|&p| p * r as usize).collect();
        let closed: Vec<usize> = l2.iter().map(|&p| p * r as usize).collect();
        rhs = rhs.add(&block_induced_character(group, &open, &closed)?);
    }
    Ok(lhs == rhs)
}

/// Ind to S_n from the image of G(r, n/r) under the blockwise embedding,
/// of det tensor the character of A^{k', l}(T(r, n/r)).
pub fn wreath_induced_os_character(
    r: u64,
    n: usize,
    kp: usize,
    l: usize,
) -> Result<ClassFunction, Error> {
    if n % (r as usize) != 0 {
        return Err(Error::Validation("r must divide n".into()));
    }
    let m = n / r as usize;
    let sub = Wreath { r, n: m };
    let inner = os_character(r, m, kp, l)?;
    let mut pairs = vec![];
    for g in sub.elements() {
        let p = sub.embed_in_symmetric(&g);
        let v = sub.det(&g).mul(&inner.value(&sub.class_label(&g)));
        pairs.push((WElem::from_perm(p), v));
    }
    induced_from_pairs(Wreath::symmetric(n), &pairs)
}

/// Checks eps_n tensor A^{k,l}(T(r,n))_{(s/r)} = Ind from the embedded
/// G(r, n/r) of det tensor A^{k-n+n/r, l}(T(r, n/r)).
pub fn verify_wreath_induction(
    r: u64,
    n: usize,
    s: i64,
    k: usize,
    l: usize,
) -> Result<bool, Error> {
    let m = n / r as usize;
    if k + m < n {
        return Err(Error::Validation("need k >= n - n/r".into()));
    }
    let group = Wreath::symmetric(n);
    let a = WeightVector::new(vec![rat(s, r as i64); n], r)?;
    let lhs = isotypic_character(&a, k, l)?.tensor(&ClassFunction::sign(group));
    let rhs = wreath_induced_os_character(r, n, k + m - n, l)?;
    Ok(lhs == rhs)
}

/// Checks the character identity V(1,n) = Ind from the cyclic subgroup
/// generated by the n-cycle of its faithful degree-one character.
pub fn verify_cyclic_induction(n: usize) -> Result<bool, Error> {
    let pairs = cyclic_subgroup(n);
    let rhs = induced_from_pairs(Wreath::symmetric(n), &pairs)?;
    Ok(v_character(1, n) == rhs)
}

/// Checks V(r,n) = Ind from mu_r x mu_n (diagonal scalars times the
/// n-cycle) of 1 x psi_n inside G(r,n).
pub fn verify_diagonal_cyclic_induction(r: u64, n: usize) -> Result<bool, Error> {
    let pairs = diagonal_times_cyclic(r, n);
    let rhs = induced_from_pairs(Wreath { r, n }, &pairs)?;
    Ok(v_character(r, n) == rhs)
}

/// Checks V(1, rm) = Ind to S_{rm} from the embedded G(r,m) of
/// prod tensor V(r,m).
pub fn verify_wreath_tree_induction(r: u64, m: usize) -> Result<bool, Error> {
    let n = r as usize * m;
    let sub = Wreath { r, n: m };
    let inner = v_character(r, m);
    let mut pairs = vec![];
    for g in sub.elements() {
        let p = sub.embed_in_symmetric(&g);
        let v = sub.prod(&g).mul(&inner.value(&sub.class_label(&g)));
        pairs.push((WElem::from_perm(p), v));
    }
    let rhs = induced_from_pairs(Wreath::symmetric(n), &pairs)?;
    Ok(v_character(1, n) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{mn_character, restrict_to};
    use crate::os_algebra::graded_dimension;

    #[test]
    fn partition_pair_index_sets() {
        // n=4, k=2, l=0: two open blocks
        let pairs = summand_partition_pairs(4, 2, 0);
        assert_eq!(
            pairs,
            vec![
                (vec![3, 1], vec![]),
                (vec![2, 2], vec![]),
            ]
        );
        // n=2, k=0, l=1: one open, one closed
        assert_eq!(summand_partition_pairs(2, 1, 1), vec![(vec![1], vec![1])]);
        assert_eq!(summand_partition_pairs(2, 0, 0), vec![]);
    }

    #[test]
    fn whole_group_block_is_tree_module() {
        // a single block: the stabilizer is the whole group and the
        // induced character is just the tree-module character
        for (r, n) in [(1u64, 3usize), (2, 2), (2, 3)] {
            let g = Wreath { r, n };
            let chi = block_induced_character(g, &[n], &[]).unwrap();
            assert_eq!(chi, v_character(r, n), "open r={r} n={n}");
            let chi = block_induced_character(g, &[], &[n]).unwrap();
            assert_eq!(chi, v_character(r, n), "closed r={r} n={n}");
        }
    }

    #[test]
    fn graded_induction_small() {
        for (r, n) in [(1u64, 3usize), (1, 4), (2, 2), (2, 3), (3, 2)] {
            for k in 0..n {
                for l in 0..=n - k {
                    if graded_dimension(r, n, k, l) == 0 {
                        continue;
                    }
                    assert!(
                        verify_graded_induction(r, n, k, l).unwrap(),
                        "r={r} n={n} k={k} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn isotypic_induction_four_points() {
        // n=4, r=2, s=1: all five nonzero graded pieces
        for (k, l) in [(2usize, 0usize), (3, 0), (2, 1), (3, 1), (2, 2)] {
            assert!(verify_isotypic_induction(2, 4, 1, k, l).unwrap(), "k={k} l={l}");
        }
        // r=n: the top pieces are the tree module up to sign
        for (k, l) in [(2usize, 0usize), (2, 1)] {
            assert!(verify_isotypic_induction(3, 3, 1, k, l).unwrap(), "k={k} l={l}");
        }
    }

    #[test]
    fn wreath_induction_four_points() {
        for (k, l) in [(2usize, 0usize), (3, 0), (2, 1), (3, 1), (2, 2)] {
            assert!(verify_wreath_induction(2, 4, 1, k, l).unwrap(), "k={k} l={l}");
        }
    }

    #[test]
    fn explicit_four_point_summand() {
        // the (k,l)=(2,0) summand: Ind from (S_2 x S_2) ⋊ S_2 with the
        // sign twist on the swap equals eps_4 tensor the character of
        // A^{2,0}(T(2,4))_{(1/2)}, which is the irreducible chi^{(31)}
        let group = Wreath::symmetric(4);
        let ind = block_induced_character(group, &[2, 2], &[]).unwrap();
        assert_eq!(ind, mn_character(&[3, 1]).tensor(&ClassFunction::sign(group)));
    }

    #[test]
    fn cyclic_and_diagonal_inductions() {
        for n in 2..=4usize {
            assert!(verify_cyclic_induction(n).unwrap(), "n={n}");
        }
        for (r, n) in [(2u64, 2usize), (2, 3), (3, 2)] {
            assert!(verify_diagonal_cyclic_induction(r, n).unwrap(), "r={r} n={n}");
        }
    }

    #[test]
    fn wreath_tree_induction_small() {
        assert!(verify_wreath_tree_induction(2, 2).unwrap());
        assert!(verify_wreath_tree_induction(4, 1).unwrap());
    }

    #[test]
    fn frobenius_reciprocity_spot_checks() {
        // <Ind chi, theta>_G = <chi, Res theta>_H for the block stabilizer
        // of two open blocks of size 2 in S_4, chi the tensor character
        let group = Wreath::symmetric(4);
        let blocks = block_layout(&[2, 2], &[]);
        let mut rect = Rectifier::new();
        let mut pairs: Vec<(WElem, Cyclotomic)> = vec![];
        for h in group.elements() {
            if let Some(pi) = induced_block_perm(&blocks, &h) {
                let v = stabilizer_character_value(group, &blocks, &pi, &h, &mut rect);
                pairs.push((h, Cyclotomic::from_rational(v)));
            }
        }
        let ind = induced_from_pairs(group, &pairs).unwrap();
        for theta in [
            ClassFunction::trivial(group),
            ClassFunction::sign(group),
            mn_character(&[3, 1]),
            mn_character(&[2, 2]),
        ] {
            let lhs = ind.inner(&theta);
            // <chi, Res theta>_H by direct element sum
            let els: Vec<WElem> = pairs.iter().map(|(h, _)| h.clone()).collect();
            let resvals = restrict_to(&theta, &els);
            let mut acc = Cyclotomic::zero();
            for ((_, chi_h), theta_h) in pairs.iter().zip(resvals) {
                acc = acc.add(&chi_h.mul(&theta_h.conj()));
            }
            let rhs = acc.scale(&rat(1, els.len() as i64)).expect_rational();
            assert_eq!(lhs, rhs);
        }
    }
}
