//! Equivariant objects and morphisms.
//!
//! An H-equivariant object is a pair (M, mu) where mu^g : T^g(M) -> M are
//! isomorphisms satisfying the cocycle condition
//!     mu^g_j · mu^h_{sigma_g^{-1}(j)} = lambda(g,h)_{sigma_{gh}^{-1}(j)} · mu^{gh}_j
//! blockwise, with mu^1 the identity. A morphism f : (M,mu) -> (N,nu) is a
//! plain morphism intertwining the structures: nu^g T^g(f) = f mu^g.
//! Hom-spaces are computed exactly as nullspaces of that linear system.

use crate::action::{ActionData, Mor, Obj};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::mat::Matrix;
use crate::report::CheckReport;
use crate::rng::Rng;

#[derive(Clone, Debug)]
pub struct EqObject {
    sub: Subgroup,
    obj: Obj,
    /// `mu[pos][j]`: structure block of the pos-th subgroup element at simple j,
    /// of shape `obj[j]` × obj[sigma_g^{-1}(j)].
    mu: Vec<Vec<Matrix>>,
}

impl EqObject {
    /// Build with full validation of the equivariance conditions.
    pub fn new(
        action: &ActionData,
        sub: Subgroup,
        obj: Obj,
        mu: Vec<Vec<Matrix>>,
    ) -> Result<EqObject> {
        let e = EqObject::build(action, sub, obj, mu)?;
        let report = e.validate(action);
        if let Some(item) = report.first_failure() {
            return Err(Error::InvalidAction(format!(
                "equivariant object invalid: {}: {}",
                item.name,
                item.witness.clone().unwrap_or_default()
            )));
        }
        Ok(e)
    }

    /// Shape checks plus a debug-mode validation; used by the functor
    /// constructions whose outputs are equivariant by design.
    pub fn new_unchecked(
        action: &ActionData,
        sub: Subgroup,
        obj: Obj,
        mu: Vec<Vec<Matrix>>,
    ) -> Result<EqObject> {
        let e = EqObject::build(action, sub, obj, mu)?;
        debug_assert!(
            e.validate(action).all_passed(),
            "constructed equivariant object fails validation: {:?}",
            e.validate(action).first_failure()
        );
        Ok(e)
    }

    /// Extend structure maps given on a generating set to the whole subgroup
    /// via the cocycle relation
    ///   mu^{gh}_j = lambda(g,h)^{-1}_{sigma_{gh}^{-1}(j)} · mu^g_j · mu^h_{sigma_g^{-1}(j)},
    /// then validate all pairs. The identity map is always implied.
    pub fn from_generators(
        action: &ActionData,
        sub: Subgroup,
        obj: Obj,
        generator_mu: &[(usize, Vec<Matrix>)],
    ) -> Result<EqObject> {
        let fp = action.fp();
        let group = action.group();
        let n = action.n();
        let mut known: Vec<Option<Vec<Matrix>>> = vec![None; sub.order()];
        let id_pos = sub
            .position(0)
            .ok_or_else(|| Error::NotASubgroup("missing identity".into()))?;
        known[id_pos] = Some(obj.0.iter().map(|&m| Matrix::identity(fp, m)).collect());
        for (g, blocks) in generator_mu {
            let pos = sub.position(*g).ok_or_else(|| {
                Error::InvalidAction(format!("generator {g} outside the subgroup"))
            })?;
            known[pos] = Some(blocks.clone());
        }
        // Close under products until every element has a structure map.
        loop {
            let mut progressed = false;
            for gp in 0..sub.order() {
                if known[gp].is_none() {
                    continue;
                }
                for hp in 0..sub.order() {
                    if known[hp].is_none() {
                        continue;
                    }
                    let g = sub.elems()[gp];
                    let h = sub.elems()[hp];
                    let gh = group.mul(g, h);
                    let ghp = sub.position(gh).expect("subgroup closed");
                    if known[ghp].is_some() {
                        continue;
                    }
                    let mu_g = known[gp].as_ref().unwrap();
                    let mu_h = known[hp].as_ref().unwrap();
                    let mut blocks = Vec::with_capacity(n);
                    for j in 0..n {
                        let jg = action.sigma_inv(g).apply(j);
                        let jgh = action.sigma_inv(gh).apply(j);
                        let inv = fp.inv(action.lambda(g, h, jgh)).expect("lambda nonzero");
                        blocks.push(mu_g[j].mul(&mu_h[jg]).scale(inv));
                    }
                    known[ghp] = Some(blocks);
                    progressed = true;
                }
            }
            if known.iter().all(Option::is_some) {
                break;
            }
            if !progressed {
                return Err(Error::InvalidAction(
                    "generators do not generate the subgroup".into(),
                ));
            }
        }
        let mu: Vec<Vec<Matrix>> = known.into_iter().map(Option::unwrap).collect();
        EqObject::new(action, sub, obj, mu)
    }

    fn build(
        action: &ActionData,
        sub: Subgroup,
        obj: Obj,
        mu: Vec<Vec<Matrix>>,
    ) -> Result<EqObject> {
        if obj.n() != action.n() {
            return Err(Error::DimensionMismatch(
                "object length != number of simples".into(),
            ));
        }
        if mu.len() != sub.order() {
            return Err(Error::DimensionMismatch(
                "one structure map per subgroup element".into(),
            ));
        }
        for (pos, blocks) in mu.iter().enumerate() {
            let g = sub.elems()[pos];
            let src = action.act_obj(g, &obj);
            if blocks.len() != obj.n() {
                return Err(Error::DimensionMismatch("structure map block count".into()));
            }
            for (j, b) in blocks.iter().enumerate() {
                if (b.rows(), b.cols()) != (obj.0[j], src.0[j]) {
                    return Err(Error::DimensionMismatch(format!(
                        "structure block shape at g={g}, simple {j}"
                    )));
                }
            }
        }
        Ok(EqObject { sub, obj, mu })
    }

    pub fn sub(&self) -> &Subgroup {
        &self.sub
    }

    pub fn obj(&self) -> &Obj {
        &self.obj
    }

    pub fn total_dim(&self) -> usize {
        self.obj.total()
    }

    /// Structure map of g as a morphism T^g(M) -> M.
    pub fn mu_mor(&self, action: &ActionData, g: usize) -> Mor {
        let pos = self.sub.position(g).expect("element in subgroup");
        Mor::new(
            action.fp(),
            action.act_obj(g, &self.obj),
            self.obj.clone(),
            self.mu[pos].clone(),
        )
    }

    pub fn mu_blocks(&self, g: usize) -> &[Matrix] {
        let pos = self.sub.position(g).expect("element in subgroup");
        &self.mu[pos]
    }

    pub fn same_data(&self, other: &EqObject) -> bool {
        self.sub == other.sub && self.obj == other.obj && self.mu == other.mu
    }

    /// Check the cocycle condition, unit normalization, and invertibility.
    pub fn validate(&self, action: &ActionData) -> CheckReport {
        let mut report = CheckReport::new();
        for &g in self.sub.elems() {
            if action.act_obj(g, &self.obj) != self.obj {
                report.fail(
                    "multiplicity stability",
                    format!("T^{g} does not fix the multiplicity vector"),
                );
                return report;
            }
        }
        report.pass("multiplicity stability");
        let id_pos = self.sub.position(0).expect("identity in subgroup");
        report.check(
            "unit structure map",
            self.mu[id_pos].iter().all(Matrix::is_identity),
            || "mu at the identity is not the identity".into(),
        );
        let mut inv_ok = true;
        for (pos, blocks) in self.mu.iter().enumerate() {
            if !blocks
                .iter()
                .all(|b| b.is_square() && b.inverse().is_some())
            {
                report.fail(
                    "structure maps invertible",
                    format!("mu at g={} is singular", self.sub.elems()[pos]),
                );
                inv_ok = false;
                break;
            }
        }
        if inv_ok {
            report.pass("structure maps invertible");
        }
        let mut cocycle_ok = true;
        'outer: for &g in self.sub.elems() {
            for &h in self.sub.elems() {
                let gh = action.group().mul(g, h);
                let mu_g = self.mu_blocks(g);
                let mu_h = self.mu_blocks(h);
                let mu_gh = self.mu_blocks(gh);
                for j in 0..self.obj.n() {
                    let jg = action.sigma_inv(g).apply(j);
                    let jgh = action.sigma_inv(gh).apply(j);
                    let lhs = mu_g[j].mul(&mu_h[jg]);
                    let rhs = mu_gh[j].scale(action.lambda(g, h, jgh));
                    if lhs != rhs {
                        report.fail(
                            "structure cocycle",
                            format!("fails at (g,h,simple)=({g},{h},{j}): {lhs:?} != {rhs:?}"),
                        );
                        cocycle_ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if cocycle_ok {
            report.pass("structure cocycle");
        }
        report
    }
}

#[derive(Clone, Debug)]
pub struct EqMorphism {
    pub source: EqObject,
    pub target: EqObject,
    pub mor: Mor,
}

impl EqMorphism {
    /// Build with validation of the intertwining condition.
    pub fn new(
        action: &ActionData,
        source: EqObject,
        target: EqObject,
        mor: Mor,
    ) -> Result<EqMorphism> {
        if source.sub != target.sub {
            return Err(Error::InvalidAction(
                "morphism across different subgroups".into(),
            ));
        }
        if mor.source != source.obj || mor.target != target.obj {
            return Err(Error::DimensionMismatch("morphism endpoints".into()));
        }
        let f = EqMorphism {
            source,
            target,
            mor,
        };
        if let Some(witness) = f.equivariance_failure(action) {
            return Err(Error::InvalidAction(format!(
                "morphism not equivariant: {witness}"
            )));
        }
        Ok(f)
    }

    /// The g for which the intertwining square fails, if any.
    pub fn equivariance_failure(&self, action: &ActionData) -> Option<String> {
        for &g in self.source.sub.elems() {
            let lhs = self
                .target
                .mu_mor(action, g)
                .compose(&action.act_mor(g, &self.mor));
            let rhs = self.mor.compose(&self.source.mu_mor(action, g));
            if lhs != rhs {
                return Some(format!("at g={g}: {:?} != {:?}", lhs.blocks, rhs.blocks));
            }
        }
        None
    }

    pub fn identity(action: &ActionData, m: &EqObject) -> EqMorphism {
        EqMorphism {
            source: m.clone(),
            target: m.clone(),
            mor: Mor::identity(action.fp(), &m.obj),
        }
    }

    /// self ∘ other (apply `other` first); panics if the middle objects
    /// disagree as data.
    pub fn compose(&self, other: &EqMorphism) -> EqMorphism {
        assert!(
            other.target.same_data(&self.source),
            "equivariant composition: middle objects differ"
        );
        EqMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            mor: self.mor.compose(&other.mor),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.mor.is_invertible()
    }

    pub fn inverse(&self) -> Option<EqMorphism> {
        Some(EqMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            mor: self.mor.inverse()?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.mor.is_identity()
    }
}

/// A basis of Hom(M, N) in the equivariantized category, found by solving the
/// intertwining equations exactly. The basis is canonical for a fixed simple
/// ordering (RREF of the constraint matrix).
pub fn hom_basis(action: &ActionData, m: &EqObject, n: &EqObject) -> Vec<EqMorphism> {
    let order: Vec<usize> = (0..action.n()).collect();
    hom_basis_with_layout(action, m, n, &order)
}

/// Same Hom-space with a caller-chosen ordering of the unknowns; the computed
/// dimension must not depend on it.
pub fn hom_basis_with_layout(
    action: &ActionData,
    m: &EqObject,
    n: &EqObject,
    simple_order: &[usize],
) -> Vec<EqMorphism> {
    assert_eq!(m.sub, n.sub, "hom between different subgroups");
    let fp = action.fp();
    let nsimples = action.n();
    assert_eq!(simple_order.len(), nsimples);
    // Variable layout: blocks f_j of shape n[j] × m[j], in simple_order.
    let mut offset = vec![0usize; nsimples];
    let mut total_vars = 0usize;
    for &j in simple_order {
        offset[j] = total_vars;
        total_vars += n.obj.0[j] * m.obj.0[j];
    }
    let var = |j: usize, r: usize, c: usize| offset[j] + r * m.obj.0[j] + c;

    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &g in m.sub.elems() {
        if g == 0 {
            continue;
        }
        let mu_m = m.mu_blocks(g);
        let nu_n = n.mu_blocks(g);
        for j in 0..nsimples {
            let jg = action.sigma_inv(g).apply(j);
            // nu^g_j · f_{jg} - f_j · mu^g_j = 0, entrywise.
            for r in 0..n.obj.0[j] {
                for c in 0..m.obj.0[jg] {
                    let mut row = vec![0u64; total_vars];
                    for s in 0..n.obj.0[jg] {
                        let coeff = nu_n[j].at(r, s);
                        if coeff != 0 {
                            let v = var(jg, s, c);
                            row[v] = fp.add(row[v], coeff);
                        }
                    }
                    for t in 0..m.obj.0[j] {
                        let coeff = mu_m[j].at(t, c);
                        if coeff != 0 {
                            let v = var(j, r, t);
                            row[v] = fp.sub(row[v], coeff);
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let a = if rows.is_empty() {
        Matrix::zero(fp, 0, total_vars)
    } else {
        Matrix::from_rows(fp, &rows)
    };
    let mut basis = Vec::new();
    for v in a.nullspace() {
        let mut blocks = Vec::with_capacity(nsimples);
        for j in 0..nsimples {
            let mut b = Matrix::zero(fp, n.obj.0[j], m.obj.0[j]);
            for r in 0..n.obj.0[j] {
                for c in 0..m.obj.0[j] {
                    b.set(r, c, v.at(var(j, r, c), 0));
                }
            }
            blocks.push(b);
        }
        let mor = Mor::new(fp, m.obj.clone(), n.obj.clone(), blocks);
        let f = EqMorphism {
            source: m.clone(),
            target: n.clone(),
            mor,
        };
        debug_assert!(f.equivariance_failure(action).is_none());
        basis.push(f);
    }
    basis
}

pub fn hom_dim(action: &ActionData, m: &EqObject, n: &EqObject) -> usize {
    hom_basis(action, m, n).len()
}

/// Outcome of the randomized isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoResult {
    /// Certified: the witness is re-verified invertible and equivariant.
    Iso(EqMorphism),
    /// Certified non-isomorphic (multiplicities differ or Hom = 0).
    NotIsoCertified,
    /// No invertible combination found; one-sided error <= (D/p)^trials.
    ProbablyNotIso { trials: usize },
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Iso(_))
    }
}

/// Randomized isomorphism test. A found witness is re-verified, so a "yes"
/// is certified for any p; the probabilistic "no" requires p > total
/// dimension D, giving one-sided error <= (D/p)^trials.
pub fn is_iso(
    action: &ActionData,
    m: &EqObject,
    n: &EqObject,
    trials: usize,
    rng: &mut Rng,
) -> Result<IsoResult> {
    if m.obj != n.obj {
        return Ok(IsoResult::NotIsoCertified);
    }
    if m.same_data(n) {
        return Ok(IsoResult::Iso(EqMorphism::identity(action, m)));
    }
    let basis = hom_basis(action, m, n);
    if basis.is_empty() {
        return Ok(IsoResult::NotIsoCertified);
    }
    let fp = action.fp();
    for _ in 0..trials {
        let mut cand = Mor::zero(fp, m.obj.clone(), n.obj.clone());
        for b in &basis {
            cand = cand.add(&b.mor.scale(fp.reduce(rng.next_u64())));
        }
        if cand.is_invertible() {
            let witness = EqMorphism::new(action, m.clone(), n.clone(), cand)?;
            return Ok(IsoResult::Iso(witness));
        }
    }
    let d = m.total_dim().max(n.total_dim()) as u64;
    if fp.p() <= d {
        // Too small a field to bound the error of a negative answer.
        return Err(Error::PrimeTooSmall {
            p: fp.p(),
            bound: d,
        });
    }
    Ok(IsoResult::ProbablyNotIso { trials })
}

/// Direct sum with injections and projections.
pub fn direct_sum(
    action: &ActionData,
    parts: &[EqObject],
) -> Result<(EqObject, Vec<EqMorphism>, Vec<EqMorphism>)> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Internal("empty direct sum".into()))?;
    let sub = first.sub.clone();
    if parts.iter().any(|p| p.sub != sub) {
        return Err(Error::InvalidAction(
            "direct sum across different subgroups".into(),
        ));
    }
    let fp = action.fp();
    let nsimples = action.n();
    let mut total = Obj::zero(nsimples);
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    for p in parts {
        offsets.push(total.0.clone());
        for j in 0..nsimples {
            total.0[j] += p.obj.0[j];
        }
    }
    let mut mu = Vec::with_capacity(sub.order());
    for &g in sub.elems() {
        let src = action.act_obj(g, &total);
        let mut blocks: Vec<Matrix> = (0..nsimples)
            .map(|j| Matrix::zero(fp, total.0[j], src.0[j]))
            .collect();
        for (k, p) in parts.iter().enumerate() {
            let pb = p.mu_blocks(g);
            for j in 0..nsimples {
                let jg = action.sigma_inv(g).apply(j);
                blocks[j].paste(offsets[k][j], offsets[k][jg], &pb[j]);
            }
        }
        mu.push(blocks);
    }
    let sum = EqObject::new_unchecked(action, sub, total.clone(), mu)?;
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for (k, p) in parts.iter().enumerate() {
        let mut inj_blocks = Vec::with_capacity(nsimples);
        let mut proj_blocks = Vec::with_capacity(nsimples);
        for j in 0..nsimples {
            let mut inj = Matrix::zero(fp, total.0[j], p.obj.0[j]);
            inj.paste(offsets[k][j], 0, &Matrix::identity(fp, p.obj.0[j]));
            proj_blocks.push(inj.transpose());
            inj_blocks.push(inj);
        }
        let inj = EqMorphism::new(
            action,
            p.clone(),
            sum.clone(),
            Mor::new(fp, p.obj.clone(), total.clone(), inj_blocks),
        )?;
        let proj = EqMorphism::new(
            action,
            sum.clone(),
            p.clone(),
            Mor::new(fp, total.clone(), p.obj.clone(), proj_blocks),
        )?;
        injections.push(inj);
        projections.push(proj);
    }
    Ok((sum, injections, projections))
}

/// The simple objects of the base category as equivariant objects over the
/// trivial subgroup.
pub fn base_simple(action: &ActionData, i: usize) -> EqObject {
    let obj = Obj::simple(action.n(), i);
    let blocks: Vec<Matrix> = obj
        .0
        .iter()
        .map(|&m| Matrix::identity(action.fp(), m))
        .collect();
    EqObject::new_unchecked(action, Subgroup::trivial(), obj, vec![blocks])
        .expect("base simples are valid over the trivial subgroup")
}

/// A one-dimensional equivariant object over H on a fixed simple, with a
/// scalar structure map per subgroup element. Used by tests and examples.
pub fn line_object(
    action: &ActionData,
    sub: &Subgroup,
    simple: usize,
    scalars: &[(usize, u64)],
) -> Result<EqObject> {
    let obj = Obj::simple(action.n(), simple);
    let mut mu = Vec::with_capacity(sub.order());
    for &g in sub.elems() {
        let c = scalars
            .iter()
            .find(|&&(e, _)| e == g)
            .map(|&(_, c)| c)
            .ok_or_else(|| Error::InvalidAction(format!("no scalar given for element {g}")))?;
        let blocks: Vec<Matrix> = (0..action.n())
            .map(|j| Matrix::scalar(action.fp(), obj.0[j], c))
            .collect();
        mu.push(blocks);
    }
    EqObject::new(action, sub.clone(), obj, mu)
}
