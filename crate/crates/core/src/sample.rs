//! Seeded generators of valid action and pointed data, used by the property
//! suites and the shipped demo configurations.
//!
//! Coboundaries beta^g_i with beta^1 = 1 always produce a valid normalized
//! cocycle lambda(g,h)_i = beta^g_{sigma_h(i)} * beta^h_i / beta^{gh}_i, and
//! the matching tau gauge tau^g_{i,j} = beta^g_{ij} / (beta^g_i * beta^g_j)
//! (with beta^g_e = 1) keeps pointed data valid. Cohomologically nontrivial
//! classes for cyclic groups come from the standard carry cocycle
//! c^{floor((a+b)/m)}.

use crate::action::Perm;
use crate::fp::Fp;
use crate::group::Group;
use crate::rng::Rng;

/// Scalar tables indexed as `values[a][b][i]`.
pub type ScalarTable = Vec<Vec<Vec<u64>>>;

/// lambda from a random coboundary: valid for any sigma homomorphism.
pub fn coboundary_lambda(
    fp: Fp,
    group: &Group,
    n: usize,
    sigma: &[Perm],
    rng: &mut Rng,
) -> Vec<Vec<Vec<u64>>> {
    let beta = random_beta(fp, group.order(), n, rng, false);
    lambda_of_beta(fp, group, n, sigma, &beta)
}

fn random_beta(
    fp: Fp,
    order: usize,
    n: usize,
    rng: &mut Rng,
    fix_label_zero: bool,
) -> Vec<Vec<u64>> {
    let mut beta = vec![vec![1u64; n]; order];
    for g in 1..order {
        for i in 0..n {
            if fix_label_zero && i == 0 {
                continue;
            }
            beta[g][i] = fp.sample_nonzero(rng.next_u64());
        }
    }
    beta
}

fn lambda_of_beta(
    fp: Fp,
    group: &Group,
    n: usize,
    sigma: &[Perm],
    beta: &[Vec<u64>],
) -> Vec<Vec<Vec<u64>>> {
    let order = group.order();
    let mut lambda = vec![vec![vec![1u64; n]; order]; order];
    for g in 0..order {
        for h in 0..order {
            let gh = group.mul(g, h);
            for i in 0..n {
                let num = fp.mul(beta[g][sigma[h].apply(i)], beta[h][i]);
                lambda[g][h][i] = fp.mul(num, fp.inv(beta[gh][i]).unwrap());
            }
        }
    }
    lambda
}

/// The carry 2-cocycle of a cyclic group written as powers of `gen`:
/// lambda(gen^a, gen^b) = c^floor((a+b)/m), constant across simples.
/// For c outside the m-th powers of F_p this represents a nontrivial class.
pub fn cyclic_carry_lambda(
    fp: Fp,
    group: &Group,
    n: usize,
    gen: usize,
    c: u64,
) -> Vec<Vec<Vec<u64>>> {
    let m = group.element_order(gen);
    assert_eq!(m, group.order(), "generator must generate the cyclic group");
    let mut power_index = vec![0usize; group.order()];
    let mut x = 0usize;
    for a in 0..m {
        power_index[x] = a;
        x = group.mul(x, gen);
    }
    let order = group.order();
    let mut lambda = vec![vec![vec![1u64; n]; order]; order];
    for g in 0..order {
        for h in 0..order {
            let carry = (power_index[g] + power_index[h]) / m;
            let v = fp.pow(fp.reduce(c), carry as u64);
            lambda[g][h] = vec![v; n];
        }
    }
    lambda
}

/// Pointwise product of two valid cocycles over the same sigma is valid.
pub fn multiply_lambdas(fp: Fp, a: &[Vec<Vec<u64>>], b: &[Vec<Vec<u64>>]) -> Vec<Vec<Vec<u64>>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(ca, cb)| ca.iter().zip(cb).map(|(&x, &y)| fp.mul(x, y)).collect())
                .collect()
        })
        .collect()
}

/// A random gauge of the trivial pointed data: tau and lambda from one beta
/// with beta^g at the unit label pinned to 1. `emul[i][j]` is the label group
/// table of E and `sigma` must consist of automorphisms of E.
pub fn gauge_pointed(
    fp: Fp,
    group: &Group,
    etable: &[Vec<usize>],
    sigma: &[Perm],
    rng: &mut Rng,
) -> (ScalarTable, ScalarTable) {
    let n = etable.len();
    let beta = random_beta(fp, group.order(), n, rng, true);
    let lambda = lambda_of_beta(fp, group, n, sigma, &beta);
    let order = group.order();
    let mut tau = vec![vec![vec![1u64; n]; n]; order];
    for g in 0..order {
        for i in 0..n {
            for j in 0..n {
                let ij = etable[i][j];
                let denom = fp.mul(beta[g][i], beta[g][j]);
                tau[g][i][j] = fp.mul(beta[g][ij], fp.inv(denom).unwrap());
            }
        }
    }
    (lambda, tau)
}

/// All homomorphisms from `group` into the permutations `targets` (a small
/// group of Perms closed under composition is not required; candidates are
/// checked on the full table). Deterministic order.
pub fn homomorphisms_into(group: &Group, targets: &[Perm]) -> Vec<Vec<Perm>> {
    let gens = group.generators();
    if gens.is_empty() {
        return vec![vec![
            Perm::identity(targets.first().map_or(0, Perm::len));
            group.order()
        ]];
    }
    let mut results = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        if let Some(map) = extend_to_homomorphism(group, &gens, &choice, targets) {
            results.push(map);
        }
        // Odometer over generator images.
        for slot in choice.iter_mut() {
            *slot += 1;
            if *slot < targets.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    results
}

fn extend_to_homomorphism(
    group: &Group,
    gens: &[usize],
    choice: &[usize],
    targets: &[Perm],
) -> Option<Vec<Perm>> {
    let n = targets[0].len();
    let order = group.order();
    let mut image: Vec<Option<Perm>> = vec![None; order];
    image[0] = Some(Perm::identity(n));
    // BFS closure: once an element's image is known, products with the
    // generators determine more images.
    let mut frontier = vec![0usize];
    while let Some(a) = frontier.pop() {
        let pa = image[a].clone().unwrap();
        for (k, &g) in gens.iter().enumerate() {
            let ag = group.mul(a, g);
            let pag = pa.compose(&targets[choice[k]]);
            match &image[ag] {
                None => {
                    image[ag] = Some(pag);
                    frontier.push(ag);
                }
                Some(existing) => {
                    if *existing != pag {
                        return None;
                    }
                }
            }
        }
    }
    let map: Vec<Perm> = image.into_iter().collect::<Option<Vec<_>>>()?;
    for a in 0..order {
        for b in 0..order {
            if map[a].compose(&map[b]) != map[group.mul(a, b)] {
                return None;
            }
        }
    }
    Some(map)
}

/// The permutation action of the group on the left cosets of a subgroup:
/// a natural source of label permutations with n = [G : U].
pub fn coset_action_sigma(group: &Group, u: &crate::group::Subgroup) -> Vec<Perm> {
    let reps = crate::group::coset_reps(group, u, &crate::group::Subgroup::full(group))
        .expect("U is a subgroup of G");
    let coset_of = |x: usize| -> usize {
        reps.iter()
            .position(|&t| u.contains(group.mul(group.inv(t), x)))
            .expect("cosets cover the group")
    };
    group
        .elements()
        .map(|g| {
            Perm::new(reps.iter().map(|&t| coset_of(group.mul(g, t))).collect())
                .expect("coset action is a permutation")
        })
        .collect()
}

/// Automorphism group of the label group E given by its table, as Perms.
pub fn automorphisms_of(etable: &[Vec<usize>]) -> Vec<Perm> {
    let n = etable.len();
    let mut auts = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if perm[0] == 0 {
            let ok = (0..n).all(|i| (0..n).all(|j| perm[etable[i][j]] == etable[perm[i]][perm[j]]));
            if ok {
                auts.push(Perm::new(perm.clone()).unwrap());
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    auts
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::ActionData;

    #[test]
    fn coboundary_lambda_is_a_valid_cocycle() {
        let fp = Fp::new(13).unwrap();
        let g = Group::cyclic(4);
        let swap = Perm::new(vec![1, 0]).unwrap();
        let sigma = vec![Perm::identity(2), swap.clone(), Perm::identity(2), swap];
        for seed in 0..10 {
            let lambda = coboundary_lambda(fp, &g, 2, &sigma, &mut Rng::new(seed));
            assert!(ActionData::new(fp, g.clone(), 2, sigma.clone(), lambda).is_ok());
        }
    }

    #[test]
    fn carry_cocycle_is_valid_and_nontrivial() {
        let fp = Fp::new(5).unwrap();
        let g = Group::cyclic(2);
        let lambda = cyclic_carry_lambda(fp, &g, 1, 1, 2);
        assert_eq!(lambda[1][1][0], 2);
        let sigma = vec![Perm::identity(1); 2];
        assert!(ActionData::new(fp, g, 1, sigma, lambda).is_ok());
    }

    #[test]
    fn product_of_cocycles_is_valid() {
        let fp = Fp::new(13).unwrap();
        let g = Group::cyclic(4);
        let sigma = vec![Perm::identity(1); 4];
        let a = cyclic_carry_lambda(fp, &g, 1, 1, 2);
        let b = coboundary_lambda(fp, &g, 1, &sigma, &mut Rng::new(3));
        let lambda = multiply_lambdas(fp, &a, &b);
        assert!(ActionData::new(fp, g, 1, sigma, lambda).is_ok());
    }

    #[test]
    fn automorphism_groups_of_small_label_groups() {
        let c3 = Group::cyclic(3);
        let table: Vec<Vec<usize>> = (0..3)
            .map(|i| (0..3).map(|j| c3.mul(i, j)).collect())
            .collect();
        // Aut(C3) = {id, inversion}.
        assert_eq!(automorphisms_of(&table).len(), 2);
        let v4 = Group::direct_product(&Group::cyclic(2), &Group::cyclic(2));
        let table: Vec<Vec<usize>> = (0..4)
            .map(|i| (0..4).map(|j| v4.mul(i, j)).collect())
            .collect();
        // Aut(C2 x C2) = S3.
        assert_eq!(automorphisms_of(&table).len(), 6);
    }

    #[test]
    fn coset_action_is_a_homomorphism() {
        let g = Group::symmetric3();
        let subs = g.subgroups(48).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let sigma = coset_action_sigma(&g, c2);
        assert_eq!(sigma[0].len(), 3);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(sigma[a].compose(&sigma[b]), sigma[g.mul(a, b)]);
            }
        }
    }

    #[test]
    fn homomorphism_enumeration_c2_to_aut_c3() {
        let c2 = Group::cyclic(2);
        let c3 = Group::cyclic(3);
        let table: Vec<Vec<usize>> = (0..3)
            .map(|i| (0..3).map(|j| c3.mul(i, j)).collect())
            .collect();
        let auts = automorphisms_of(&table);
        let homs = homomorphisms_into(&c2, &auts);
        // Trivial map and the inversion action.
        assert_eq!(homs.len(), 2);
        assert!(homs.iter().any(|h| !h[1].is_identity()));
    }
}
