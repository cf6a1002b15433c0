//! Splitting of semisimple matrix algebras over F_p: centers, primitive
//! idempotents via minimal-polynomial factorization of seeded random
//! elements, and extraction of the simple equivariant objects of C^H as
//! images of primitive idempotents in End(Ind_1^H(X_i)).

use crate::action::{ActionData, Mor};
use crate::equiv::{direct_sum, hom_basis, hom_dim, is_iso, EqMorphism, EqObject};
use crate::error::{Error, Result};
use crate::functors::ind;
use crate::group::Subgroup;
use crate::mat::{solve, Matrix, Solve};
use crate::poly::{is_irreducible, min_poly_with_unit, Poly};
use crate::rng::{salt_of, Rng};
use std::collections::BTreeMap;

/// A subalgebra of Mat_D(F_p) given by a basis (reduced to be linearly
/// independent on construction, preserving first-seen order).
#[derive(Clone, Debug)]
pub struct MatAlgebra {
    dim: usize,
    basis: Vec<Matrix>,
}

impl MatAlgebra {
    pub fn new(dim: usize, candidates: Vec<Matrix>) -> MatAlgebra {
        let basis = independent_subset(dim, &candidates);
        MatAlgebra { dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn fp(&self) -> crate::fp::Fp {
        self.basis.first().expect("nonempty algebra").fp()
    }

    /// Coordinates of `m` in the basis span, if it lies there.
    pub fn coords(&self, m: &Matrix) -> Option<Vec<u64>> {
        let fp = self.fp();
        let cols = self.basis.len();
        let mut a = Matrix::zero(fp, self.dim * self.dim, cols);
        for (j, b) in self.basis.iter().enumerate() {
            for (i, &v) in b.flatten_row().iter().enumerate() {
                a.set(i, j, v);
            }
        }
        let mut rhs = Matrix::zero(fp, self.dim * self.dim, 1);
        for (i, &v) in m.flatten_row().iter().enumerate() {
            rhs.set(i, 0, v);
        }
        match solve(&a, &rhs).expect("shapes agree") {
            Solve::Solution { particular, .. } => {
                Some((0..cols).map(|j| particular.at(j, 0)).collect())
            }
            Solve::Inconsistent => None,
        }
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coords(m).is_some()
    }

    /// Closed under products and contains the identity.
    pub fn validate(&self) -> Result<()> {
        let id = Matrix::identity(self.fp(), self.dim);
        if !self.contains(&id) {
            return Err(Error::InvalidAlgebra("identity not in span".into()));
        }
        for a in &self.basis {
            for b in &self.basis {
                if !self.contains(&a.mul(b)) {
                    return Err(Error::InvalidAlgebra(
                        "not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The center {z : zb = bz for all basis b}; commutativity is verified.
    pub fn center(&self) -> MatAlgebra {
        let fp = self.fp();
        let k = self.basis.len();
        let d2 = self.dim * self.dim;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        // Unknowns: coordinates over the basis. For each basis b, the
        // commutator sum_k c_k (B_k b - b B_k) must vanish entrywise.
        for b in &self.basis {
            for entry in 0..d2 {
                let mut row = vec![0u64; k];
                for (kk, bk) in self.basis.iter().enumerate() {
                    let comm = bk.mul(b).sub(&b.mul(bk));
                    row[kk] = comm.flatten_row()[entry];
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
        let a = if rows.is_empty() {
            Matrix::zero(fp, 0, k)
        } else {
            Matrix::from_rows(fp, &rows)
        };
        let mut center_basis = Vec::new();
        for v in a.nullspace() {
            let mut z = Matrix::zero(fp, self.dim, self.dim);
            for (kk, bk) in self.basis.iter().enumerate() {
                z = z.add(&bk.scale(v.at(kk, 0)));
            }
            center_basis.push(z);
        }
        let center = MatAlgebra::new(self.dim, center_basis);
        debug_assert!(center
            .basis
            .iter()
            .all(|a| center.basis.iter().all(|b| a.mul(b) == b.mul(a))));
        center
    }

    pub fn random_element(&self, rng: &mut Rng) -> Matrix {
        let fp = self.fp();
        let mut m = Matrix::zero(fp, self.dim, self.dim);
        for b in &self.basis {
            m = m.add(&b.scale(fp.reduce(rng.next_u64())));
        }
        m
    }
}

fn independent_subset(dim: usize, candidates: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = candidates.first() else {
        return Vec::new();
    };
    let fp = first.fp();
    let mut picked: Vec<Matrix> = Vec::new();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for c in candidates {
        assert_eq!((c.rows(), c.cols()), (dim, dim));
        let mut trial = rows.clone();
        trial.push(c.flatten_row());
        let rank = Matrix::from_rows(fp, &trial).rank();
        if rank == trial.len() {
            rows = trial;
            picked.push(c.clone());
        }
    }
    picked
}

/// Corner subalgebra e·A·e with unit e.
fn corner(alg: &MatAlgebra, e: &Matrix) -> MatAlgebra {
    let products: Vec<Matrix> = alg.basis().iter().map(|b| e.mul(b).mul(e)).collect();
    MatAlgebra::new(alg.dim(), products)
}

/// CRT idempotents of `F_p[w]` (with unit e) from the distinct irreducible
/// factors of the squarefree minimal polynomial `mp`.
fn crt_idempotents(w: &Matrix, e: &Matrix, mp: &Poly, factors: &[Poly]) -> Result<Vec<Matrix>> {
    let fp = mp.fp();
    let mut idems = Vec::with_capacity(factors.len());
    for q in factors {
        let u = mp.div_rem(q).0;
        let (g, s, _) = u.ext_gcd(q);
        if !g.is_one() {
            return Err(Error::Internal(
                "factors of a squarefree polynomial must be coprime".into(),
            ));
        }
        let idem_poly = s.mul(&u).rem(mp);
        idems.push(idem_poly.eval_matrix(w, e));
    }
    // Verify: orthogonal idempotents summing to the unit.
    let mut sum = Matrix::zero(fp, e.rows(), e.cols());
    for (i, a) in idems.iter().enumerate() {
        if a.mul(a) != *a {
            return Err(Error::NotSemisimple("CRT element is not idempotent".into()));
        }
        for (j, b) in idems.iter().enumerate() {
            if i != j && !a.mul(b).is_zero() {
                return Err(Error::NotSemisimple(
                    "CRT idempotents not orthogonal".into(),
                ));
            }
        }
        sum = sum.add(a);
    }
    if sum != *e {
        return Err(Error::NotSemisimple(
            "CRT idempotents do not sum to the unit".into(),
        ));
    }
    Ok(idems)
}

fn minpoly_is_squarefree(mp: &Poly) -> bool {
    mp.gcd(&mp.derivative()).is_one()
}

/// Primitive idempotents of a commutative semisimple algebra. Each returned
/// idempotent is certified primitive: its corner has a generator whose
/// irreducible minimal polynomial degree equals the corner dimension, so the
/// corner is a field. A repeated-factor minimal polynomial certifies a
/// nonzero radical and is reported as an error.
pub fn primitive_idempotents(c: &MatAlgebra, rng: &mut Rng, retries: usize) -> Result<Vec<Matrix>> {
    let fp = c.fp();
    let unit = Matrix::identity(fp, c.dim());
    if !c.contains(&unit) {
        return Err(Error::InvalidAlgebra(
            "commutative algebra must contain the identity".into(),
        ));
    }
    let mut work = vec![unit];
    let mut done: Vec<Matrix> = Vec::new();
    while let Some(e) = work.pop() {
        let sub = corner(c, &e);
        let d = sub.rank();
        if d == 1 {
            done.push(e);
            continue;
        }
        let mut progressed = false;
        for _ in 0..retries {
            let w = sub.random_element(rng);
            let mp = min_poly_with_unit(&w, &e);
            if !minpoly_is_squarefree(&mp) {
                return Err(Error::NotSemisimple(format!(
                    "repeated factor in a minimal polynomial: {mp:?}"
                )));
            }
            if is_irreducible(&mp) {
                if mp.degree() == Some(d) {
                    done.push(e.clone());
                    progressed = true;
                    break;
                }
                continue; // proper subfield generator, resample
            }
            let fac = crate::poly::factor(&mp, rng)?;
            let factors: Vec<Poly> = fac.factors.iter().map(|(q, _)| q.clone()).collect();
            work.extend(crt_idempotents(&w, &e, &mp, &factors)?);
            progressed = true;
            break;
        }
        if !progressed {
            return Err(Error::SplitFailed(
                "no splitting element found in a commutative corner".into(),
            ));
        }
    }
    done.sort_by(|a, b| a.flatten_row().cmp(&b.flatten_row()));
    Ok(done)
}

/// One primitive idempotent of the (possibly noncommutative) algebra below a
/// central idempotent, found by repeatedly splitting corners. A corner is
/// certified to be a field (hence the idempotent primitive) when a generator
/// has irreducible minimal polynomial of degree equal to the corner rank.
pub fn one_primitive_idempotent(
    alg: &MatAlgebra,
    central: &Matrix,
    rng: &mut Rng,
    retries: usize,
) -> Result<Matrix> {
    let mut e = central.clone();
    loop {
        let sub = corner(alg, &e);
        let d = sub.rank();
        if d == 1 {
            return Ok(e);
        }
        let mut split: Option<Matrix> = None;
        for _ in 0..retries {
            let w = sub.random_element(rng);
            let mp = min_poly_with_unit(&w, &e);
            if !minpoly_is_squarefree(&mp) {
                continue; // non-semisimple element of a matrix algebra; resample
            }
            if is_irreducible(&mp) {
                if mp.degree() == Some(d) {
                    return Ok(e); // the corner is a field
                }
                continue;
            }
            let fac = crate::poly::factor(&mp, rng)?;
            let factors: Vec<Poly> = fac.factors.iter().map(|(q, _)| q.clone()).collect();
            let idems = crt_idempotents(&w, &e, &mp, &factors)?;
            split = idems.into_iter().next();
            break;
        }
        match split {
            Some(f) => e = f,
            None => {
                return Err(Error::SplitFailed(
                    "no splitting element found below a central idempotent".into(),
                ))
            }
        }
    }
}

/// The endomorphism algebra of an equivariant object, flattened to
/// block-diagonal matrices of the total dimension.
pub struct EndAlgebra {
    pub alg: MatAlgebra,
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl EndAlgebra {
    pub fn of(action: &ActionData, m: &EqObject) -> (EndAlgebra, Vec<EqMorphism>) {
        let basis = hom_basis(action, m, m);
        let dims: Vec<usize> = m.obj().0.clone();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for &d in &dims {
            offsets.push(total);
            total += d;
        }
        let shape = EndAlgebra {
            alg: MatAlgebra::new(
                total,
                basis
                    .iter()
                    .map(|f| flatten_mor(&f.mor, &dims, &offsets, total))
                    .collect(),
            ),
            dims,
            offsets,
        };
        (shape, basis)
    }

    pub fn flatten(&self, m: &Mor) -> Matrix {
        flatten_mor(m, &self.dims, &self.offsets, self.total())
    }

    pub fn unflatten_blocks(&self, m: &Matrix) -> Vec<Matrix> {
        let fp = m.fp();
        self.dims
            .iter()
            .zip(&self.offsets)
            .map(|(&d, &o)| {
                let mut b = Matrix::zero(fp, d, d);
                for r in 0..d {
                    for c in 0..d {
                        b.set(r, c, m.at(o + r, o + c));
                    }
                }
                b
            })
            .collect()
    }

    fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

fn flatten_mor(m: &Mor, dims: &[usize], offsets: &[usize], total: usize) -> Matrix {
    let fp = m.fp();
    let mut out = Matrix::zero(fp, total, total);
    for (j, b) in m.blocks.iter().enumerate() {
        debug_assert_eq!((b.rows(), b.cols()), (dims[j], dims[j]));
        out.paste(offsets[j], offsets[j], b);
    }
    out
}

/// Image of an idempotent endomorphism, with its induced equivariant
/// structure, plus the inclusion and the splitting projection.
pub fn image_object(
    action: &ActionData,
    f: &EqMorphism,
) -> Result<(EqObject, EqMorphism, EqMorphism)> {
    if !f.source.same_data(&f.target) {
        return Err(Error::Internal(
            "image_object expects an endomorphism".into(),
        ));
    }
    let fp = action.fp();
    let n = action.n();
    let a = &f.source;
    let mut incl_blocks = Vec::with_capacity(n);
    let mut proj_blocks = Vec::with_capacity(n);
    let mut dims = Vec::with_capacity(n);
    for j in 0..n {
        let fj = &f.mor.blocks[j];
        debug_assert_eq!(fj.mul(fj), *fj, "image_object needs an idempotent");
        let mut rr = fj.clone();
        let pivots = rr.rref();
        let k = pivots.len();
        let mut u = Matrix::zero(fp, fj.rows(), k);
        for (col_idx, &pc) in pivots.iter().enumerate() {
            for r in 0..fj.rows() {
                u.set(r, col_idx, fj.at(r, pc));
            }
        }
        // f acts as the identity on its image, so f·U = U and U has full
        // column rank; the projection is the unique solution of U·X = f.
        let x = match solve(&u, fj)? {
            Solve::Solution { particular, .. } => particular,
            Solve::Inconsistent => {
                return Err(Error::Internal("column space extraction failed".into()))
            }
        };
        debug_assert!(x.mul(&u).is_identity());
        dims.push(k);
        incl_blocks.push(u);
        proj_blocks.push(x);
    }
    let obj = crate::action::Obj(dims);
    let incl_mor = Mor::new(fp, obj.clone(), a.obj().clone(), incl_blocks);
    let proj_mor = Mor::new(fp, a.obj().clone(), obj.clone(), proj_blocks);
    let mut mu = Vec::with_capacity(a.sub().order());
    for &g in a.sub().elems() {
        let big = a.mu_mor(action, g);
        let twisted = proj_mor
            .compose(&big)
            .compose(&action.act_mor(g, &incl_mor));
        mu.push(twisted.blocks);
    }
    let s = EqObject::new_unchecked(action, a.sub().clone(), obj, mu)?;
    let incl = EqMorphism::new(action, s.clone(), a.clone(), incl_mor)?;
    let proj = EqMorphism::new(action, a.clone(), s.clone(), proj_mor)?;
    Ok((s, incl, proj))
}

/// Enumerate the simple objects of C^H, one per isomorphism class.
///
/// Every simple is a summand of some Ind_1^H(X_i); each such induction is
/// split by the primitive central idempotents of its endomorphism algebra,
/// one primitive idempotent is extracted per isotypic block, and the images
/// are deduplicated by Hom-pairing. The list is sorted by (total dimension,
/// discovery order). Completeness certificate: dim End(A) must equal
/// sum_S deg_S · mult_S^2 for every generator A.
pub fn simples_of(
    action: &ActionData,
    h: &Subgroup,
    seed: u64,
    retries: usize,
    trials: usize,
) -> Result<Vec<EqObject>> {
    let mut rng = Rng::new(seed).derive(salt_of(h.elems()));
    let mut found: Vec<EqObject> = Vec::new();
    let trivial = Subgroup::trivial();
    let mut generators = Vec::with_capacity(action.n());
    for i in 0..action.n() {
        let x_i = crate::equiv::base_simple(action, i);
        let a = ind(action, &trivial, h, &x_i)?;
        generators.push(a.clone());
        let (end, _) = EndAlgebra::of(action, &a);
        let center = end.alg.center();
        let centrals = primitive_idempotents(&center, &mut rng, retries)?;
        for z in &centrals {
            let prim = one_primitive_idempotent(&end.alg, z, &mut rng, retries)?;
            let blocks = end.unflatten_blocks(&prim);
            let idem = EqMorphism::new(
                action,
                a.clone(),
                a.clone(),
                Mor::new(action.fp(), a.obj().clone(), a.obj().clone(), blocks),
            )?;
            let (s, _, _) = image_object(action, &idem)?;
            let duplicate = found.iter().any(|t| hom_dim(action, t, &s) > 0);
            if !duplicate {
                found.push(s);
            }
        }
    }
    found.sort_by_key(|s| s.total_dim());
    // Completeness: the isotypic counting identity for every generator.
    for (i, a) in generators.iter().enumerate() {
        let end_dim = hom_dim(action, a, a);
        let mut counted = 0usize;
        for s in &found {
            let deg = hom_dim(action, s, s);
            let pairing = hom_dim(action, s, a);
            if pairing % deg != 0 {
                return Err(Error::Internal(format!(
                    "hom pairing {pairing} not divisible by endomorphism degree {deg}"
                )));
            }
            let mult = pairing / deg;
            counted += deg * mult * mult;
        }
        if counted != end_dim {
            return Err(Error::Internal(format!(
                "incomplete simple list over generator {i}: {counted} != {end_dim}"
            )));
        }
        // Reconstruction: the generator is isomorphic to the direct sum of
        // its isotypic pieces, with a certified witness.
        let mut pieces = Vec::new();
        for s in &found {
            let deg = hom_dim(action, s, s);
            let mult = hom_dim(action, s, a) / deg;
            for _ in 0..mult {
                pieces.push(s.clone());
            }
        }
        if !pieces.is_empty() {
            let (sum, _, _) = direct_sum(action, &pieces)?;
            let iso = is_iso(action, &sum, a, trials, &mut rng)?;
            if !iso.is_iso() {
                return Err(Error::Internal(format!(
                    "reconstruction witness not found for generator {i}"
                )));
            }
        }
    }
    Ok(found)
}

/// Deterministic per-subgroup cache of simple lists. The generator stream for
/// a subgroup depends only on (seed, subgroup), not on call order.
pub struct SimplesCache {
    seed: u64,
    retries: usize,
    trials: usize,
    map: BTreeMap<Vec<usize>, Vec<EqObject>>,
}

impl SimplesCache {
    pub fn new(seed: u64, retries: usize, trials: usize) -> SimplesCache {
        SimplesCache {
            seed,
            retries,
            trials,
            map: BTreeMap::new(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn get(&mut self, action: &ActionData, h: &Subgroup) -> Result<&Vec<EqObject>> {
        let key = h.elems().to_vec();
        if !self.map.contains_key(&key) {
            let simples = simples_of(action, h, self.seed, self.retries, self.trials)?;
            self.map.insert(key.clone(), simples);
        }
        Ok(self.map.get(&key).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Perm;
    use crate::fp::Fp;
    use crate::group::Group;

    fn f5() -> Fp {
        Fp::new(5).unwrap()
    }

    fn c2_scalar_action(fp: Fp, c: u64) -> ActionData {
        let g = Group::cyclic(2);
        let sigma = vec![Perm::identity(1), Perm::identity(1)];
        let lambda = vec![vec![vec![1], vec![1]], vec![vec![1], vec![c]]];
        ActionData::new(fp, g, 1, sigma, lambda).unwrap()
    }

    fn full_2x2_algebra(fp: Fp) -> MatAlgebra {
        let e = |r: usize, c: usize| {
            let mut m = Matrix::zero(fp, 2, 2);
            m.set(r, c, 1);
            m
        };
        MatAlgebra::new(2, vec![e(0, 0), e(0, 1), e(1, 0), e(1, 1)])
    }

    #[test]
    fn center_of_full_matrix_algebra_is_scalars() {
        let alg = full_2x2_algebra(f5());
        alg.validate().unwrap();
        let center = alg.center();
        assert_eq!(center.rank(), 1);
    }

    #[test]
    fn center_of_diagonal_algebra_is_itself() {
        let fp = f5();
        let mut e11 = Matrix::zero(fp, 2, 2);
        e11.set(0, 0, 1);
        let mut e22 = Matrix::zero(fp, 2, 2);
        e22.set(1, 1, 1);
        let alg = MatAlgebra::new(2, vec![e11, e22]);
        assert_eq!(alg.center().rank(), 2);
    }

    #[test]
    fn center_of_group_algebra_end() {
        // End of Ind_1^{C2}(unit) under the trivial action has dimension 2
        // and is already commutative.
        let action = c2_scalar_action(f5(), 1);
        let full = Subgroup::full(action.group());
        let v = crate::equiv::base_simple(&action, 0);
        let a = ind(&action, &Subgroup::trivial(), &full, &v).unwrap();
        let (end, _) = EndAlgebra::of(&action, &a);
        assert_eq!(end.alg.rank(), 2);
        assert_eq!(end.alg.center().rank(), 2);
    }

    #[test]
    fn idempotents_of_scalars() {
        let fp = f5();
        let alg = MatAlgebra::new(2, vec![Matrix::identity(fp, 2)]);
        let idems = primitive_idempotents(&alg, &mut Rng::new(1), 64).unwrap();
        assert_eq!(idems.len(), 1);
        assert!(idems[0].is_identity());
    }

    #[test]
    fn idempotents_of_diagonal_algebra() {
        let fp = f5();
        let mut e11 = Matrix::zero(fp, 2, 2);
        e11.set(0, 0, 1);
        let mut e22 = Matrix::zero(fp, 2, 2);
        e22.set(1, 1, 1);
        let alg = MatAlgebra::new(2, vec![e11.clone(), e22.clone()]);
        let idems = primitive_idempotents(&alg, &mut Rng::new(2), 64).unwrap();
        assert_eq!(idems.len(), 2);
        assert!(idems.contains(&e11));
        assert!(idems.contains(&e22));
    }

    #[test]
    fn field_extension_has_single_idempotent() {
        // F_25 embedded in 2x2 matrices over F_5 as F_5[w], w^2 = 2.
        let fp = f5();
        let w = Matrix::from_rows(fp, &[vec![0, 2], vec![1, 0]]);
        let alg = MatAlgebra::new(2, vec![Matrix::identity(fp, 2), w]);
        let idems = primitive_idempotents(&alg, &mut Rng::new(3), 64).unwrap();
        assert_eq!(idems.len(), 1);
        assert!(idems[0].is_identity());
    }

    #[test]
    fn nilpotent_commutative_algebra_is_rejected() {
        // F_5[x]/(x^2) has a radical; the repeated-factor test must fire.
        let fp = f5();
        let nil = Matrix::from_rows(fp, &[vec![0, 1], vec![0, 0]]);
        let alg = MatAlgebra::new(2, vec![Matrix::identity(fp, 2), nil]);
        assert!(matches!(
            primitive_idempotents(&alg, &mut Rng::new(4), 64),
            Err(Error::NotSemisimple(_))
        ));
    }

    #[test]
    fn idempotent_sum_and_orthogonality_hold_exactly() {
        let fp = Fp::new(7).unwrap();
        let action = ActionData::trivial(fp, Group::symmetric3(), 1).unwrap();
        let full = Subgroup::full(action.group());
        let v = crate::equiv::base_simple(&action, 0);
        let a = ind(&action, &Subgroup::trivial(), &full, &v).unwrap();
        let (end, _) = EndAlgebra::of(&action, &a);
        let center = end.alg.center();
        let idems = primitive_idempotents(&center, &mut Rng::new(5), 64).unwrap();
        let mut sum = Matrix::zero(fp, 6, 6);
        for (i, e) in idems.iter().enumerate() {
            assert_eq!(e.mul(e), *e);
            for (j, f) in idems.iter().enumerate() {
                if i != j {
                    assert!(e.mul(f).is_zero());
                }
            }
            sum = sum.add(e);
        }
        assert!(sum.is_identity());
    }

    #[test]
    fn simples_of_s3_trivial_action() {
        let fp = Fp::new(7).unwrap();
        let action = ActionData::trivial(fp, Group::symmetric3(), 1).unwrap();
        let full = Subgroup::full(action.group());
        let simples = simples_of(&action, &full, 1, 64, 8).unwrap();
        let dims: Vec<usize> = simples.iter().map(|s| s.total_dim()).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        for (i, s) in simples.iter().enumerate() {
            assert_eq!(hom_dim(&action, s, s), 1);
            for t in simples.iter().skip(i + 1) {
                assert_eq!(hom_dim(&action, s, t), 0);
                assert_eq!(hom_dim(&action, t, s), 0);
            }
        }
    }

    #[test]
    fn simples_of_c2_with_square_cocycle() {
        // lambda(g,g) = 4 over F5: two line objects with mu = 2 and 3.
        let action = c2_scalar_action(f5(), 4);
        let full = Subgroup::full(action.group());
        let simples = simples_of(&action, &full, 1, 64, 8).unwrap();
        assert_eq!(simples.len(), 2);
        let mut scalars: Vec<u64> = simples.iter().map(|s| s.mu_blocks(1)[0].at(0, 0)).collect();
        scalars.sort_unstable();
        assert_eq!(scalars, vec![2, 3]);
    }

    #[test]
    fn simples_of_c2_with_nonsquare_cocycle() {
        // lambda(g,g) = 2 over F5: a single simple of dimension 2 whose
        // endomorphism algebra is the quadratic field extension.
        let action = c2_scalar_action(f5(), 2);
        let full = Subgroup::full(action.group());
        let simples = simples_of(&action, &full, 1, 64, 8).unwrap();
        assert_eq!(simples.len(), 1);
        assert_eq!(simples[0].total_dim(), 2);
        assert_eq!(hom_dim(&action, &simples[0], &simples[0]), 2);
    }
}
