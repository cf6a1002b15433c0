//! Smash products S#`k[H]` for algebras with a group action, their block
//! structure via the regular representation, and the numerical comparison
//! with the abstract equivariantization engine in the case where S is a
//! product of copies of F_p permuted by the group.

use crate::action::{ActionData, Perm};
use crate::equiv::hom_dim;
use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::group::{Group, Subgroup};
use crate::mat::Matrix;
use crate::report::CheckReport;
use crate::rng::Rng;
use crate::split::{one_primitive_idempotent, primitive_idempotents, simples_of, MatAlgebra};

/// A finite-dimensional associative unital algebra by structure constants:
/// e_i · e_j = sum_k `sc[i][j][k]` e_k.
#[derive(Clone, Debug)]
pub struct Algebra {
    fp: Fp,
    dim: usize,
    sc: Vec<Vec<Vec<u64>>>,
    unit: Vec<u64>,
}

impl Algebra {
    pub fn new(fp: Fp, dim: usize, sc: Vec<Vec<Vec<u64>>>, unit: Vec<u64>) -> Result<Algebra> {
        if sc.len() != dim
            || sc
                .iter()
                .any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim))
            || unit.len() != dim
        {
            return Err(Error::InvalidAlgebra("structure constant shape".into()));
        }
        let a = Algebra { fp, dim, sc, unit };
        a.validate()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn multiply(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for i in 0..self.dim {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if v[j] == 0 {
                    continue;
                }
                let c = self.fp.mul(u[i], v[j]);
                for k in 0..self.dim {
                    let s = self.fp.mul(c, self.fp.reduce(self.sc[i][j][k]));
                    out[k] = self.fp.add(out[k], s);
                }
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.dim];
        v[i] = 1;
        v
    }

    pub fn validate(&self) -> Result<()> {
        for i in 0..self.dim {
            let ei = self.basis_vec(i);
            if self.multiply(&self.unit, &ei) != ei || self.multiply(&ei, &self.unit) != ei {
                return Err(Error::InvalidAlgebra(format!(
                    "unit law fails at basis {i}"
                )));
            }
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let ej = self.basis_vec(j);
                    let ek = self.basis_vec(k);
                    let lhs = self.multiply(&self.multiply(&ei, &ej), &ek);
                    let rhs = self.multiply(&ei, &self.multiply(&ej, &ek));
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Left-regular representation matrices of the basis elements.
    pub fn regular_representation(&self) -> Vec<Matrix> {
        (0..self.dim)
            .map(|i| {
                let mut m = Matrix::zero(self.fp, self.dim, self.dim);
                for j in 0..self.dim {
                    let prod = self.multiply(&self.basis_vec(i), &self.basis_vec(j));
                    for (k, &c) in prod.iter().enumerate() {
                        m.set(k, j, c);
                    }
                }
                m
            })
            .collect()
    }
}

/// An algebra with a group acting by automorphisms.
#[derive(Clone, Debug)]
pub struct GAlgebra {
    pub algebra: Algebra,
    pub group: Group,
    /// One automorphism matrix per group element (columns are images of basis
    /// vectors).
    pub automorphisms: Vec<Matrix>,
}

impl GAlgebra {
    pub fn new(algebra: Algebra, group: Group, automorphisms: Vec<Matrix>) -> Result<GAlgebra> {
        if automorphisms.len() != group.order() {
            return Err(Error::InvalidAlgebra(
                "one automorphism per group element".into(),
            ));
        }
        let a = GAlgebra {
            algebra,
            group,
            automorphisms,
        };
        a.validate()?;
        Ok(a)
    }

    fn apply_aut(&self, g: usize, v: &[u64]) -> Vec<u64> {
        let m = &self.automorphisms[g];
        let d = self.algebra.dim();
        (0..d)
            .map(|k| {
                let mut acc = 0u64;
                for (j, &c) in v.iter().enumerate() {
                    acc = self
                        .algebra
                        .fp()
                        .add(acc, self.algebra.fp().mul(m.at(k, j), c));
                }
                acc
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.algebra.dim();
        if !self.automorphisms[0].is_identity() {
            return Err(Error::InvalidAlgebra("identity must act trivially".into()));
        }
        for g in self.group.elements() {
            let m = &self.automorphisms[g];
            if (m.rows(), m.cols()) != (d, d) || m.inverse().is_none() {
                return Err(Error::InvalidAlgebra(format!(
                    "automorphism {g} not invertible"
                )));
            }
            // Multiplicative and unital.
            let unit_img = self.apply_aut(g, &self.algebra.unit);
            if unit_img != self.algebra.unit {
                return Err(Error::InvalidAlgebra(format!(
                    "automorphism {g} moves the unit"
                )));
            }
            for i in 0..d {
                for j in 0..d {
                    let ei = {
                        let mut v = vec![0u64; d];
                        v[i] = 1;
                        v
                    };
                    let ej = {
                        let mut v = vec![0u64; d];
                        v[j] = 1;
                        v
                    };
                    let lhs = self.apply_aut(g, &self.algebra.multiply(&ei, &ej));
                    let rhs = self
                        .algebra
                        .multiply(&self.apply_aut(g, &ei), &self.apply_aut(g, &ej));
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "automorphism {g} not multiplicative at ({i},{j})"
                        )));
                    }
                }
            }
            // Group law.
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                if self.automorphisms[g].mul(&self.automorphisms[h]) != self.automorphisms[gh] {
                    return Err(Error::InvalidAlgebra(format!(
                        "automorphisms violate the group law at ({g},{h})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// S = F_p^d with the group permuting coordinates: `perms[g]` sends the
    /// basis idempotent e_j to e_{`perms[g]`(j)}.
    pub fn permuted_fields(fp: Fp, group: Group, perms: &[Vec<usize>]) -> Result<GAlgebra> {
        let d = perms
            .first()
            .map(|p| p.len())
            .ok_or_else(|| Error::InvalidAlgebra("no permutations".into()))?;
        if perms.len() != group.order() {
            return Err(Error::InvalidAlgebra(
                "one permutation per group element".into(),
            ));
        }
        let mut sc = vec![vec![vec![0u64; d]; d]; d];
        for (i, row) in sc.iter_mut().enumerate() {
            row[i][i] = 1;
        }
        let unit = vec![1u64; d];
        let algebra = Algebra::new(fp, d, sc, unit)?;
        let automorphisms = perms
            .iter()
            .map(|p| {
                let mut m = Matrix::zero(fp, d, d);
                for (j, &pj) in p.iter().enumerate() {
                    m.set(pj, j, 1);
                }
                m
            })
            .collect();
        GAlgebra::new(algebra, group, automorphisms)
    }

    /// The permutation of simple modules induced by the coordinate
    /// permutations, when S is a permuted product of fields.
    pub fn coordinate_permutations(&self) -> Option<Vec<Perm>> {
        let d = self.algebra.dim();
        let mut perms = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let m = &self.automorphisms[g];
            let mut map = vec![usize::MAX; d];
            for j in 0..d {
                let mut image = None;
                for i in 0..d {
                    match m.at(i, j) {
                        0 => {}
                        1 if image.is_none() => image = Some(i),
                        _ => return None,
                    }
                }
                map[j] = image?;
            }
            perms.push(Perm::new(map).ok()?);
        }
        Some(perms)
    }

    /// The smash product S#`k[H]`: basis s_i # h with multiplication
    /// (s#h)(s'#h') = s·(h·s') # hh'.
    pub fn smash_product(&self, h: &Subgroup) -> Result<Algebra> {
        let d = self.algebra.dim();
        let fp = self.algebra.fp();
        let hn = h.order();
        let dim = d * hn;
        let idx = |i: usize, hp: usize| i * hn + hp;
        let mut sc = vec![vec![vec![0u64; dim]; dim]; dim];
        for i in 0..d {
            for (hp1, &h1) in h.elems().iter().enumerate() {
                for j in 0..d {
                    for (hp2, &h2) in h.elems().iter().enumerate() {
                        // (e_i # h1)(e_j # h2) = e_i · (h1 · e_j) # h1 h2.
                        let ej = {
                            let mut v = vec![0u64; d];
                            v[j] = 1;
                            v
                        };
                        let moved = self.apply_aut(h1, &ej);
                        let ei = {
                            let mut v = vec![0u64; d];
                            v[i] = 1;
                            v
                        };
                        let prod = self.algebra.multiply(&ei, &moved);
                        let h12 = self.group.mul(h1, h2);
                        let hp12 = h.position(h12).expect("subgroup closed");
                        for (k, &c) in prod.iter().enumerate() {
                            sc[idx(i, hp1)][idx(j, hp2)][idx(k, hp12)] = fp.reduce(c);
                        }
                    }
                }
            }
        }
        let id_pos = h.position(0).expect("identity in subgroup");
        let mut unit = vec![0u64; dim];
        for (i, &c) in self.algebra.unit.iter().enumerate() {
            unit[idx(i, id_pos)] = c;
        }
        Algebra::new(fp, dim, sc, unit)
    }
}

/// Matrix-block sizes and residue-field degrees of a semisimple algebra,
/// computed from central primitive idempotents of the regular representation.
/// Each block contributes size^2 · degree to the dimension.
pub fn block_structure(a: &Algebra, rng: &mut Rng, retries: usize) -> Result<Vec<(usize, usize)>> {
    let reg = a.regular_representation();
    let alg = MatAlgebra::new(a.dim(), reg);
    let center = alg.center();
    let centrals = primitive_idempotents(&center, rng, retries)?;
    let mut blocks = Vec::with_capacity(centrals.len());
    for e in &centrals {
        // Degree: dimension of the center slice under e.
        let center_slice =
            MatAlgebra::new(a.dim(), center.basis().iter().map(|z| e.mul(z)).collect());
        let degree = center_slice.rank();
        // Block dimension: the two-sided slice e·A (e is central).
        let slice = MatAlgebra::new(a.dim(), alg.basis().iter().map(|b| e.mul(b)).collect());
        let block_dim = slice.rank();
        if block_dim % degree != 0 {
            return Err(Error::NotSemisimple(
                "block dimension not divisible by degree".into(),
            ));
        }
        let size_sq = block_dim / degree;
        let size = (1..=block_dim).find(|s| s * s == size_sq).ok_or_else(|| {
            Error::NotSemisimple(format!("block dimension {block_dim} is not size^2·degree"))
        })?;
        // Cross-check the certified primitive idempotent machinery: the corner
        // below e splits down to a field.
        let _ = one_primitive_idempotent(&alg, e, rng, retries)?;
        blocks.push((size, degree));
    }
    blocks.sort_unstable();
    let total: usize = blocks.iter().map(|&(s, d)| s * s * d).sum();
    if total != a.dim() {
        return Err(Error::NotSemisimple(format!(
            "block dimensions sum to {total}, expected {}",
            a.dim()
        )));
    }
    Ok(blocks)
}

/// Compare the block data of S#`k[H]` with the simple equivariant objects of
/// the abstract engine on the matching action, for S a permuted product of
/// fields. The block count must equal the number of simples, the residue
/// degrees must match the endomorphism degrees, and size·degree must match
/// the underlying dimensions.
pub fn compare_with_abstract(
    s: &GAlgebra,
    h: &Subgroup,
    seed: u64,
    retries: usize,
    trials: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let Some(perms) = s.coordinate_permutations() else {
        return Err(Error::InvalidAlgebra(
            "comparison supports only permuted products of fields".into(),
        ));
    };
    let fp = s.algebra.fp();
    let d = s.algebra.dim();
    let order = s.group.order();
    let lambda = vec![vec![vec![1u64; d]; order]; order];
    let action = ActionData::new(fp, s.group.clone(), d, perms, lambda)?;
    let smash = s.smash_product(h)?;
    let mut rng = Rng::new(seed).derive(0x5a5a);
    let blocks = block_structure(&smash, &mut rng, retries)?;
    let simples = simples_of(&action, h, seed, retries, trials)?;
    report.check(
        format!(
            "block count equals simple count over H of order {}",
            h.order()
        ),
        blocks.len() == simples.len(),
        || format!("{} blocks vs {} simples", blocks.len(), simples.len()),
    );
    let mut smash_side: Vec<(usize, usize)> =
        blocks.iter().map(|&(s, deg)| (s * deg, deg)).collect();
    smash_side.sort_unstable();
    let mut abstract_side: Vec<(usize, usize)> = simples
        .iter()
        .map(|s| (s.total_dim(), hom_dim(&action, s, s)))
        .collect();
    abstract_side.sort_unstable();
    report.check(
        "dimension/degree multisets agree",
        smash_side == abstract_side,
        || format!("smash side {smash_side:?} vs abstract side {abstract_side:?}"),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Fp {
        Fp::new(5).unwrap()
    }

    #[test]
    fn smash_with_trivial_subgroup_is_s_itself() {
        let g = Group::cyclic(2);
        let s = GAlgebra::permuted_fields(f5(), g, &[vec![0, 1], vec![1, 0]]).unwrap();
        let smash = s.smash_product(&Subgroup::trivial()).unwrap();
        assert_eq!(smash.dim(), 2);
        let mut rng = Rng::new(1);
        assert_eq!(
            block_structure(&smash, &mut rng, 64).unwrap(),
            vec![(1, 1), (1, 1)]
        );
    }

    #[test]
    fn group_algebra_of_c2_splits_into_two_blocks() {
        // S = F5 with the trivial action: S#F5[C2] = F5[C2].
        let g = Group::cyclic(2);
        let s = GAlgebra::permuted_fields(f5(), g.clone(), &[vec![0], vec![0]]).unwrap();
        let smash = s.smash_product(&Subgroup::full(&g)).unwrap();
        assert_eq!(smash.dim(), 2);
        let mut rng = Rng::new(2);
        assert_eq!(
            block_structure(&smash, &mut rng, 64).unwrap(),
            vec![(1, 1), (1, 1)]
        );
    }

    #[test]
    fn full_matrix_algebra_is_one_block() {
        // M2(F5) by structure constants: basis E11, E12, E21, E22.
        let fp = f5();
        let mut sc = vec![vec![vec![0u64; 4]; 4]; 4];
        let e = |r: usize, c: usize| r * 2 + c;
        for r in 0..2 {
            for c in 0..2 {
                for c2 in 0..2 {
                    for k in 0..2 {
                        // E_{r,c} · E_{c2,k} = delta_{c,c2} E_{r,k}
                        if c == c2 {
                            sc[e(r, c)][e(c2, k)][e(r, k)] = 1;
                        }
                    }
                }
            }
        }
        let unit = vec![1, 0, 0, 1];
        let a = Algebra::new(fp, 4, sc, unit).unwrap();
        let mut rng = Rng::new(3);
        assert_eq!(block_structure(&a, &mut rng, 64).unwrap(), vec![(2, 1)]);
    }

    #[test]
    fn swap_action_gives_a_single_matrix_block() {
        // S = F5^2 with C2 swapping the factors: S#F5[C2] = M2(F5).
        let g = Group::cyclic(2);
        let s = GAlgebra::permuted_fields(f5(), g.clone(), &[vec![0, 1], vec![1, 0]]).unwrap();
        let smash = s.smash_product(&Subgroup::full(&g)).unwrap();
        assert_eq!(smash.dim(), 4);
        let mut rng = Rng::new(4);
        assert_eq!(block_structure(&smash, &mut rng, 64).unwrap(), vec![(2, 1)]);
        let report = compare_with_abstract(&s, &Subgroup::full(&g), 7, 64, 8).unwrap();
        assert!(report.all_passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn s3_permutation_action_matches_abstract_engine_on_all_subgroups() {
        let (g, perms) =
            Group::from_permutations_with_elements(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let s = GAlgebra::permuted_fields(f5(), g.clone(), &perms).unwrap();
        for h in g.subgroups(48).unwrap() {
            let smash = s.smash_product(&h).unwrap();
            assert_eq!(smash.dim(), 3 * h.order());
            let report = compare_with_abstract(&s, &h, 11, 64, 8).unwrap();
            assert!(
                report.all_passed(),
                "H order {}: {:?}",
                h.order(),
                report.first_failure()
            );
        }
    }
}
