//! Finite groups as multiplication tables: subgroup lattices, cosets, double
//! cosets and conjugation. Element 0 is always the identity, and every coset
//! or double-coset representative is the minimal element index of its class,
//! so that all downstream functor constructions are reproducible.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl Group {
    /// Build from an explicit Cayley table; validates identity at index 0,
    /// associativity and inverses.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = vec![0usize; n * n];
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has wrong length")));
            }
            for (b, &ab) in row.iter().enumerate() {
                if ab >= n {
                    return Err(Error::InvalidGroup(format!(
                        "entry out of range at ({a},{b})"
                    )));
                }
                table[a * n + b] = ab;
            }
        }
        let g = Group {
            order: n,
            table,
            inverse: vec![0; n],
        };
        for a in 0..n {
            if g.raw_mul(0, a) != a || g.raw_mul(a, 0) != a {
                return Err(Error::InvalidGroup("element 0 is not an identity".into()));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if g.raw_mul(a, b) == 0 {
                    inverse[a] = b;
                }
            }
            if inverse[a] == usize::MAX {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if g.raw_mul(g.raw_mul(a, b), c) != g.raw_mul(a, g.raw_mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(Group {
            order: n,
            table: g.table,
            inverse,
        })
    }

    fn raw_mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn cyclic(n: usize) -> Group {
        assert!(n > 0);
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Group::from_table(rows).expect("cyclic table is a group")
    }

    /// Closure of a set of permutations of {0..k-1}; elements are indexed by
    /// BFS discovery order with the identity first.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Group> {
        Ok(Group::from_permutations_with_elements(gens)?.0)
    }

    /// Same closure, also returning the permutation realizing each element
    /// index (useful to rebuild the point action of the group).
    pub fn from_permutations_with_elements(
        gens: &[Vec<usize>],
    ) -> Result<(Group, Vec<Vec<usize>>)> {
        let k = gens
            .first()
            .map(|g| g.len())
            .ok_or_else(|| Error::InvalidGroup("no generators".into()))?;
        for g in gens {
            if g.len() != k {
                return Err(Error::InvalidGroup("generator length mismatch".into()));
            }
            let mut seen = vec![false; k];
            for &x in g {
                if x >= k || seen[x] {
                    return Err(Error::InvalidGroup("generator is not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        let id: Vec<usize> = (0..k).collect();
        let mut elems: Vec<Vec<usize>> = vec![id];
        let mut frontier = 0;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            frontier += 1;
            for g in gens {
                // product cur * g applies g first, then cur.
                let prod: Vec<usize> = (0..k).map(|i| cur[g[i]]).collect();
                if !elems.contains(&prod) {
                    elems.push(prod);
                }
            }
            if elems.len() > 4096 {
                return Err(Error::InvalidGroup("permutation closure too large".into()));
            }
        }
        let n = elems.len();
        let mut rows = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..k).map(|i| elems[a][elems[b][i]]).collect();
                let idx = elems
                    .iter()
                    .position(|e| *e == prod)
                    .ok_or_else(|| Error::InvalidGroup("closure not closed".into()))?;
                rows[a][b] = idx;
            }
        }
        Ok((Group::from_table(rows)?, elems))
    }

    pub fn symmetric3() -> Group {
        Group::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    pub fn dihedral(n: usize) -> Group {
        assert!(n >= 2);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Group::from_permutations(&[rot, refl]).unwrap()
    }

    pub fn direct_product(a: &Group, b: &Group) -> Group {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut rows = vec![vec![0usize; n]; n];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        rows[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        Group::from_table(rows).expect("product of groups is a group")
    }

    pub fn quaternion8() -> Group {
        // Indices: 1, i, -1, -i, j, k, -j, -k arranged so 0 is the identity.
        // Build from the regular representation of the presentation instead:
        // i = (0 1 2 3)(4 7 6 5), j = (0 4 2 6)(1 5 3 7) acting on cosets.
        Group::from_permutations(&[vec![1, 2, 3, 0, 7, 4, 5, 6], vec![4, 5, 6, 7, 2, 3, 0, 1]])
            .unwrap()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(x, h), self.inv(x))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// A short generating sequence found greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::generated(self, &[]);
        for a in 1..self.order {
            if !span.contains(a) {
                gens.push(a);
                span = Subgroup::generated(self, &gens);
                if span.order() == self.order {
                    break;
                }
            }
        }
        gens
    }

    /// All subgroups, each listed once, sorted by (order, element list).
    pub fn subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        if self.order > bound {
            return Err(Error::OrderBound(self.order, bound));
        }
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        // Seed with all cyclic subgroups, then close under joins until stable.
        for a in 1..self.order {
            found.insert(Subgroup::generated(self, &[a]).elems);
        }
        loop {
            let snapshot: Vec<Vec<usize>> = found.iter().cloned().collect();
            let before = found.len();
            for i in 0..snapshot.len() {
                for j in (i + 1)..snapshot.len() {
                    let mut gens = snapshot[i].clone();
                    gens.extend_from_slice(&snapshot[j]);
                    found.insert(Subgroup::generated(self, &gens).elems);
                }
            }
            if found.len() == before {
                break;
            }
        }
        let mut subs: Vec<Subgroup> = found.into_iter().map(|elems| Subgroup { elems }).collect();
        subs.sort_by(|a, b| (a.order(), &a.elems).cmp(&(b.order(), &b.elems)));
        Ok(subs)
    }

    /// Conjugacy classes of subgroups, as index lists into `subs`.
    pub fn subgroup_conjugacy_classes(&self, subs: &[Subgroup]) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; subs.len()];
        for i in 0..subs.len() {
            if assigned[i] {
                continue;
            }
            let mut class = vec![i];
            assigned[i] = true;
            for x in self.elements() {
                let conj = conjugate_subgroup(self, &subs[i], x);
                if let Some(j) = subs.iter().position(|s| *s == conj) {
                    if !assigned[j] {
                        assigned[j] = true;
                        class.push(j);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }
}

/// A subgroup as a sorted element-index list (always contains 0).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    elems: Vec<usize>,
}

impl Subgroup {
    pub fn new(group: &Group, mut elems: Vec<usize>) -> Result<Subgroup> {
        elems.sort_unstable();
        elems.dedup();
        let s = Subgroup { elems };
        if !s.contains(0) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &s.elems {
            if a >= group.order() {
                return Err(Error::NotASubgroup(format!("element {a} out of range")));
            }
            if !s.contains(group.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &s.elems {
                if !s.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("product {a}*{b} escapes")));
                }
            }
        }
        Ok(s)
    }

    pub fn trivial() -> Subgroup {
        Subgroup { elems: vec![0] }
    }

    pub fn full(group: &Group) -> Subgroup {
        Subgroup {
            elems: group.elements().collect(),
        }
    }

    pub fn generated(group: &Group, gens: &[usize]) -> Subgroup {
        let mut elems: BTreeSet<usize> = BTreeSet::new();
        elems.insert(0);
        let mut frontier: Vec<usize> = vec![0];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                for prod in [group.mul(a, g), group.mul(g, a)] {
                    if elems.insert(prod) {
                        frontier.push(prod);
                    }
                }
            }
        }
        Subgroup {
            elems: elems.into_iter().collect(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.elems.binary_search(&a).is_ok()
    }

    /// Position of an element in the sorted list (used to index structure maps).
    pub fn position(&self, a: usize) -> Option<usize> {
        self.elems.binary_search(&a).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&a| other.contains(a))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elems: self
                .elems
                .iter()
                .copied()
                .filter(|&a| other.contains(a))
                .collect(),
        }
    }
}

pub fn conjugate_subgroup(group: &Group, h: &Subgroup, x: usize) -> Subgroup {
    let mut elems: Vec<usize> = h.elems().iter().map(|&a| group.conj(x, a)).collect();
    elems.sort_unstable();
    Subgroup { elems }
}

/// Canonical representatives for the left cosets t·L inside H: the minimal
/// element index of each coset, listed in ascending order (identity first).
pub fn coset_reps(group: &Group, l: &Subgroup, h: &Subgroup) -> Result<Vec<usize>> {
    if !l.is_subgroup_of(h) {
        return Err(Error::Containment(
            "coset_reps: L is not contained in H".into(),
        ));
    }
    let mut reps = Vec::new();
    let mut covered = vec![false; group.order()];
    for &t in h.elems() {
        if covered[t] {
            continue;
        }
        reps.push(t);
        for &a in l.elems() {
            covered[group.mul(t, a)] = true;
        }
    }
    debug_assert_eq!(reps.len() * l.order(), h.order());
    Ok(reps)
}

/// One double coset K·x·L: canonical representative plus a factorization
/// h = k·x·l for every member h.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    pub rep: usize,
    pub members: Vec<usize>,
    /// For each member (parallel to `members`): (k, l) with member = k·rep·l.
    pub factorizations: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct DoubleCosets {
    pub cosets: Vec<DoubleCoset>,
}

impl DoubleCosets {
    pub fn reps(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c.rep).collect()
    }
}

/// Decompose H into double cosets K\H/L with canonical (minimal index)
/// representatives in ascending order.
pub fn double_cosets(
    group: &Group,
    k: &Subgroup,
    h: &Subgroup,
    l: &Subgroup,
) -> Result<DoubleCosets> {
    if !k.is_subgroup_of(h) || !l.is_subgroup_of(h) {
        return Err(Error::Containment(
            "double_cosets: K and L must lie in H".into(),
        ));
    }
    let mut covered = vec![false; group.order()];
    let mut cosets = Vec::new();
    for &x in h.elems() {
        if covered[x] {
            continue;
        }
        let mut members = Vec::new();
        let mut factorizations = Vec::new();
        for &a in k.elems() {
            for &b in l.elems() {
                let m = group.mul(group.mul(a, x), b);
                if !covered[m] {
                    covered[m] = true;
                    members.push(m);
                    factorizations.push((a, b));
                }
            }
        }
        let order: Vec<usize> = {
            let mut idx: Vec<usize> = (0..members.len()).collect();
            idx.sort_by_key(|&i| members[i]);
            idx
        };
        cosets.push(DoubleCoset {
            rep: x,
            members: order.iter().map(|&i| members[i]).collect(),
            factorizations: order.iter().map(|&i| factorizations[i]).collect(),
        });
    }
    debug_assert_eq!(
        cosets.iter().map(|c| c.members.len()).sum::<usize>(),
        h.order()
    );
    Ok(DoubleCosets { cosets })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_has_two_subgroups() {
        let g = Group::cyclic(2);
        let subs = g.subgroups(48).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0], Subgroup::trivial());
        assert_eq!(subs[1], Subgroup::full(&g));
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // Wrong identity position.
        assert!(Group::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        // Non-associative magma on three elements.
        let rows = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(Group::from_table(rows).is_err());
        // Valid Klein four-group table passes.
        let v4 = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        assert!(Group::from_table(v4).is_ok());
    }

    #[test]
    fn d4_has_ten_subgroups() {
        let subs = Group::dihedral(4).subgroups(48).unwrap();
        assert_eq!(subs.len(), 10);
    }

    #[test]
    fn s3_has_six_subgroups() {
        let g = Group::symmetric3();
        assert_eq!(g.order(), 6);
        let subs = g.subgroups(48).unwrap();
        assert_eq!(subs.len(), 6);
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        let classes = g.subgroup_conjugacy_classes(&subs);
        // {1}, the three C2 fused, C3, S3.
        assert_eq!(classes.len(), 4);
    }

    #[test]
    fn c4_has_three_subgroups() {
        let subs = Group::cyclic(4).subgroups(48).unwrap();
        assert_eq!(subs.len(), 3);
    }

    #[test]
    fn order_bound_is_enforced() {
        assert!(matches!(
            Group::cyclic(8).subgroups(4),
            Err(Error::OrderBound(8, 4))
        ));
    }

    #[test]
    fn coset_reps_examples() {
        let g = Group::symmetric3();
        let subs = g.subgroups(48).unwrap();
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();
        let full = Subgroup::full(&g);
        // L = H: single representative, the identity.
        assert_eq!(coset_reps(&g, &full, &full).unwrap(), vec![0]);
        // Index 2 subgroup: two representatives, identity first.
        let reps = coset_reps(&g, c3, &full).unwrap();
        assert_eq!(reps.len(), 2);
        assert_eq!(reps[0], 0);
        // Trivial subgroup: all 6 elements.
        assert_eq!(
            coset_reps(&g, &Subgroup::trivial(), &full).unwrap().len(),
            6
        );
        // Representatives lie in pairwise distinct cosets.
        for (i, &a) in reps.iter().enumerate() {
            for &b in reps.iter().skip(i + 1) {
                assert!(!c3.contains(g.mul(g.inv(b), a)));
            }
        }
    }

    #[test]
    fn coset_reps_rejects_non_containment() {
        let g = Group::symmetric3();
        let subs = g.subgroups(48).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();
        assert!(coset_reps(&g, c2, c3).is_err());
    }

    #[test]
    fn double_coset_examples() {
        let g = Group::symmetric3();
        let subs = g.subgroups(48).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();
        let full = Subgroup::full(&g);

        // K = L = H: one double coset.
        let dc = double_cosets(&g, &full, &full, &full).unwrap();
        assert_eq!(dc.cosets.len(), 1);

        // K = L = C2 in S3: two double cosets of sizes 2 and 4.
        let dc = double_cosets(&g, c2, &full, c2).unwrap();
        let mut sizes: Vec<usize> = dc.cosets.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);

        // K = C3, L = C2: a single double coset covering S3.
        let dc = double_cosets(&g, c3, &full, c2).unwrap();
        assert_eq!(dc.cosets.len(), 1);
        assert_eq!(dc.cosets[0].members.len(), 6);

        // Factorizations reproduce the members.
        for coset in &dc.cosets {
            for (i, &m) in coset.members.iter().enumerate() {
                let (k, l) = coset.factorizations[i];
                assert_eq!(g.mul(g.mul(k, coset.rep), l), m);
            }
        }
    }

    #[test]
    fn double_coset_sizes_sum_to_subgroup_order() {
        let g = Group::dihedral(4);
        let subs = g.subgroups(48).unwrap();
        for h in &subs {
            for k in subs.iter().filter(|s| s.is_subgroup_of(h)) {
                for l in subs.iter().filter(|s| s.is_subgroup_of(h)) {
                    let dc = double_cosets(&g, k, h, l).unwrap();
                    let total: usize = dc.cosets.iter().map(|c| c.members.len()).sum();
                    assert_eq!(total, h.order());
                }
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let g = Group::symmetric3();
        let subs = g.subgroups(48).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();

        // Conjugating by the identity fixes everything.
        assert_eq!(conjugate_subgroup(&g, c2, 0), *c2);
        // A normal subgroup is fixed by all conjugations.
        for x in g.elements() {
            assert_eq!(conjugate_subgroup(&g, c3, x), *c3);
        }
        // Conjugating one C2 by an element of order 3 gives a different C2.
        let three_cycle = g.elements().find(|&a| g.element_order(a) == 3).unwrap();
        let conj = conjugate_subgroup(&g, c2, three_cycle);
        assert_eq!(conj.order(), 2);
        assert_ne!(conj, *c2);
    }

    #[test]
    fn quaternion_group_is_valid() {
        let q8 = Group::quaternion8();
        assert_eq!(q8.order(), 8);
        // Q8 has a unique element of order 2.
        let count = q8.elements().filter(|&a| q8.element_order(a) == 2).count();
        assert_eq!(count, 1);
        assert_eq!(q8.subgroups(48).unwrap().len(), 6);
    }
}
