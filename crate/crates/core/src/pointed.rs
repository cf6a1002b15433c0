//! The monoidal layer: pointed fusion data with trivial associator scalars.
//!
//! Simple labels carry a finite group structure E (label 0 is the unit) and
//! the tensor product of simples is the group law. Each acting element g is
//! a monoidal autoequivalence: sigma_g is an automorphism of E and the
//! scalars `tau[g][i][j]` give the components of T^g(M⊗N) -> T^g(M)⊗T^g(N).
//!
//! Slot convention: since E is a group, the decomposition of (A⊗B) at the
//! simple k has exactly one slot per label i, namely A_i ⊗ B_{i^{-1}k},
//! laid out in ascending label order with row-major Kronecker flattening
//! inside each slot. Re-associating (A⊗B)⊗C to A⊗(B⊗C) permutes this layout
//! by a scalar-free permutation, which is constructed explicitly and carried
//! through every module-functor diagram.

use crate::action::{ActionData, Mor, Obj};
use crate::equiv::{hom_dim, EqMorphism, EqObject};
use crate::error::{Error, Result};
use crate::functors::{conj, ind, mackey_iso, res};
use crate::group::{coset_reps, Group, Subgroup};
use crate::mat::Matrix;
use crate::report::CheckReport;
use crate::split::SimplesCache;

#[derive(Clone, Debug)]
pub struct PointedData {
    action: ActionData,
    etable: Vec<Vec<usize>>,
    einv: Vec<usize>,
    /// `tau[g][i][j]`: scalar of (T2^g) on the pair of simples (i, j).
    tau: Vec<Vec<Vec<u64>>>,
}

impl PointedData {
    pub fn new(
        action: ActionData,
        etable: Vec<Vec<usize>>,
        tau: Vec<Vec<Vec<u64>>>,
    ) -> Result<PointedData> {
        let p = PointedData::new_unvalidated(action, etable, tau)?;
        let report = p.validate();
        if let Some(item) = report.first_failure() {
            return Err(Error::InvalidPointed(format!(
                "{}: {}",
                item.name,
                item.witness.clone().unwrap_or_default()
            )));
        }
        Ok(p)
    }

    pub fn new_unvalidated(
        action: ActionData,
        etable: Vec<Vec<usize>>,
        tau: Vec<Vec<Vec<u64>>>,
    ) -> Result<PointedData> {
        let n = action.n();
        if etable.len() != n || etable.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPointed("label table must be n x n".into()));
        }
        // The label group is validated through the group machinery; this also
        // pins label 0 as the unit.
        let label_group = Group::from_table(etable.clone())
            .map_err(|e| Error::InvalidPointed(format!("label table is not a group: {e}")))?;
        let einv = (0..n).map(|i| label_group.inv(i)).collect();
        let order = action.group().order();
        if tau.len() != order
            || tau
                .iter()
                .any(|t| t.len() != n || t.iter().any(|r| r.len() != n))
        {
            return Err(Error::InvalidPointed("tau must be |G| x n x n".into()));
        }
        for g in 0..order {
            for i in 0..n {
                for j in 0..n {
                    if action.fp().reduce(tau[g][i][j]) == 0 {
                        return Err(Error::InvalidPointed(format!("tau({g},{i},{j}) is zero")));
                    }
                }
            }
        }
        Ok(PointedData {
            action,
            etable,
            einv,
            tau,
        })
    }

    /// Trivial tau over a given action whose sigma respects the label group.
    pub fn with_trivial_tau(action: ActionData, etable: Vec<Vec<usize>>) -> Result<PointedData> {
        let order = action.group().order();
        let n = action.n();
        let tau = vec![vec![vec![1u64; n]; n]; order];
        PointedData::new(action, etable, tau)
    }

    pub fn action(&self) -> &ActionData {
        &self.action
    }

    #[inline]
    pub fn emul(&self, i: usize, j: usize) -> usize {
        self.etable[i][j]
    }

    #[inline]
    pub fn einv(&self, i: usize) -> usize {
        self.einv[i]
    }

    #[inline]
    pub fn tau(&self, g: usize, i: usize, j: usize) -> u64 {
        self.action.fp().reduce(self.tau[g][i][j])
    }

    /// All four pointed invariants: sigma_g in Aut(E), the unit law, the
    /// hexagon with trivial associator, and the compatibility with lambda.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let n = self.action.n();
        let fp = self.action.fp();
        let order = self.action.group().order();
        let mut aut_ok = true;
        'aut: for g in 0..order {
            let s = self.action.sigma(g);
            for i in 0..n {
                for j in 0..n {
                    if s.apply(self.emul(i, j)) != self.emul(s.apply(i), s.apply(j)) {
                        report.fail(
                            "sigma respects the label group",
                            format!("sigma({g}) is not an automorphism at ({i},{j})"),
                        );
                        aut_ok = false;
                        break 'aut;
                    }
                }
            }
        }
        if aut_ok {
            report.pass("sigma respects the label group");
        }
        let mut unit_ok = true;
        'unit: for g in 0..order {
            for j in 0..n {
                if self.tau(g, 0, j) != 1 || self.tau(g, j, 0) != 1 {
                    report.fail(
                        "tau unit law",
                        format!("tau({g}) differs from 1 against the unit label at {j}"),
                    );
                    unit_ok = false;
                    break 'unit;
                }
            }
        }
        if unit_ok {
            report.pass("tau unit law");
        }
        let mut hex_ok = true;
        'hex: for g in 0..order {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let lhs = fp.mul(self.tau(g, i, j), self.tau(g, self.emul(i, j), k));
                        let rhs = fp.mul(self.tau(g, j, k), self.tau(g, i, self.emul(j, k)));
                        if lhs != rhs {
                            report.fail(
                                "tau hexagon",
                                format!("hexagon fails at (g,i,j,k)=({g},{i},{j},{k})"),
                            );
                            hex_ok = false;
                            break 'hex;
                        }
                    }
                }
            }
        }
        if hex_ok {
            report.pass("tau hexagon");
        }
        let mut compat_ok = true;
        'compat: for g in 0..order {
            for h in 0..order {
                let gh = self.action.group().mul(g, h);
                let sh = self.action.sigma(h);
                for i in 0..n {
                    for j in 0..n {
                        let ij = self.emul(i, j);
                        let lhs = fp.mul(self.tau(gh, i, j), self.action.lambda(g, h, ij));
                        let rhs = fp.mul(
                            fp.mul(self.action.lambda(g, h, i), self.action.lambda(g, h, j)),
                            fp.mul(self.tau(g, sh.apply(i), sh.apply(j)), self.tau(h, i, j)),
                        );
                        if lhs != rhs {
                            report.fail(
                                "tau-lambda compatibility",
                                format!("fails at (g,h,i,j)=({g},{h},{i},{j}): {lhs} != {rhs}"),
                            );
                            compat_ok = false;
                            break 'compat;
                        }
                    }
                }
            }
        }
        if compat_ok {
            report.pass("tau-lambda compatibility");
        }
        report
    }

    /// Slot offsets of (A⊗B) at simple k: offset of the slot A_i ⊗ B_{i^{-1}k}
    /// for each label i in ascending order.
    fn slot_offsets(&self, a: &Obj, b: &Obj, k: usize) -> Vec<usize> {
        let n = self.action.n();
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0usize;
        for i in 0..n {
            offsets.push(acc);
            acc += a.0[i] * b.0[self.emul(self.einv[i], k)];
        }
        offsets
    }

    pub fn tensor_obj(&self, a: &Obj, b: &Obj) -> Obj {
        let n = self.action.n();
        Obj((0..n)
            .map(|k| {
                (0..n)
                    .map(|i| a.0[i] * b.0[self.emul(self.einv[i], k)])
                    .sum()
            })
            .collect())
    }

    /// Kronecker blocks placed slotwise.
    pub fn tensor_mor(&self, f: &Mor, g: &Mor) -> Mor {
        let fp = self.action.fp();
        let n = self.action.n();
        let src = self.tensor_obj(&f.source, &g.source);
        let tgt = self.tensor_obj(&f.target, &g.target);
        let mut blocks = Vec::with_capacity(n);
        for k in 0..n {
            let src_off = self.slot_offsets(&f.source, &g.source, k);
            let tgt_off = self.slot_offsets(&f.target, &g.target, k);
            let mut block = Matrix::zero(fp, tgt.0[k], src.0[k]);
            for i in 0..n {
                let j = self.emul(self.einv[i], k);
                if f.source.0[i] * g.source.0[j] == 0 && f.target.0[i] * g.target.0[j] == 0 {
                    continue;
                }
                let kr = f.blocks[i].kron(&g.blocks[j]);
                block.paste(tgt_off[i], src_off[i], &kr);
            }
            blocks.push(block);
        }
        Mor::new(fp, src, tgt, blocks)
    }

    /// The monoidal structure of T^g on a pair of objects:
    /// T^g(A⊗B) -> T^g(A) ⊗ T^g(B), a tau-scaled slot permutation.
    pub fn t2_tensor(&self, g: usize, a: &Obj, b: &Obj) -> Mor {
        let fp = self.action.fp();
        let n = self.action.n();
        let ab = self.tensor_obj(a, b);
        let source = self.action.act_obj(g, &ab);
        let ga = self.action.act_obj(g, a);
        let gb = self.action.act_obj(g, b);
        let target = self.tensor_obj(&ga, &gb);
        debug_assert_eq!(source, target);
        let sigma = self.action.sigma(g);
        let mut blocks = Vec::with_capacity(n);
        for k in 0..n {
            let kg = self.action.sigma_inv(g).apply(k);
            let src_off = self.slot_offsets(a, b, kg);
            let tgt_off = self.slot_offsets(&ga, &gb, k);
            let mut block = Matrix::zero(fp, target.0[k], source.0[k]);
            for i in 0..n {
                let j = self.emul(self.einv[i], kg);
                let size = a.0[i] * b.0[j];
                if size == 0 {
                    continue;
                }
                let scaled = Matrix::scalar(fp, size, self.tau(g, i, j));
                block.paste(tgt_off[sigma.apply(i)], src_off[i], &scaled);
            }
            blocks.push(block);
        }
        Mor::new(fp, source, target, blocks)
    }

    /// The scalar-free re-slotting permutation (A⊗B)⊗C -> A⊗(B⊗C).
    pub fn assoc_witness(&self, a: &Obj, b: &Obj, c: &Obj) -> Mor {
        let fp = self.action.fp();
        let n = self.action.n();
        let ab = self.tensor_obj(a, b);
        let bc = self.tensor_obj(b, c);
        let source = self.tensor_obj(&ab, c);
        let target = self.tensor_obj(a, &bc);
        debug_assert_eq!(source, target);
        let mut blocks = Vec::with_capacity(n);
        for l in 0..n {
            let mut block = Matrix::zero(fp, target.0[l], source.0[l]);
            let outer_src = self.slot_offsets(&ab, c, l);
            let outer_tgt = self.slot_offsets(a, &bc, l);
            for i in 0..n {
                if a.0[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    if b.0[j] == 0 {
                        continue;
                    }
                    let u = self.emul(i, j);
                    let k = self.emul(self.einv[u], l);
                    if c.0[k] == 0 {
                        continue;
                    }
                    let inner_src = self.slot_offsets(a, b, u);
                    let v = self.emul(self.einv[i], l);
                    debug_assert_eq!(self.emul(j, k), v);
                    let inner_tgt = self.slot_offsets(b, c, v);
                    for r in 0..a.0[i] {
                        for s in 0..b.0[j] {
                            for t in 0..c.0[k] {
                                let src_idx =
                                    outer_src[u] + (inner_src[i] + r * b.0[j] + s) * c.0[k] + t;
                                let dst_idx =
                                    outer_tgt[i] + r * bc.0[v] + inner_tgt[j] + s * c.0[k] + t;
                                block.set(dst_idx, src_idx, 1);
                            }
                        }
                    }
                }
            }
            blocks.push(block);
        }
        Mor::new(fp, source, target, blocks)
    }

    /// Distributivity permutation ⊕_a (M ⊗ P_a) -> M ⊗ (⊕_a P_a).
    pub fn dist_right(&self, m: &Obj, parts: &[Obj]) -> Mor {
        let fp = self.action.fp();
        let n = self.action.n();
        let mut q = Obj::zero(n);
        let mut part_offsets_in_q: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
        for p in parts {
            part_offsets_in_q.push(q.0.clone());
            for j in 0..n {
                q.0[j] += p.0[j];
            }
        }
        let target = self.tensor_obj(m, &q);
        let source_parts: Vec<Obj> = parts.iter().map(|p| self.tensor_obj(m, p)).collect();
        let mut source = Obj::zero(n);
        let mut sum_offsets: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
        for sp in &source_parts {
            sum_offsets.push(source.0.clone());
            for j in 0..n {
                source.0[j] += sp.0[j];
            }
        }
        let mut blocks = Vec::with_capacity(n);
        for k in 0..n {
            let mut block = Matrix::zero(fp, target.0[k], source.0[k]);
            let tgt_off = self.slot_offsets(m, &q, k);
            for (pi, p) in parts.iter().enumerate() {
                let src_off = self.slot_offsets(m, p, k);
                for i in 0..n {
                    let j = self.emul(self.einv[i], k);
                    for r in 0..m.0[i] {
                        for s in 0..p.0[j] {
                            let src_idx = sum_offsets[pi][k] + src_off[i] + r * p.0[j] + s;
                            let dst_idx = tgt_off[i] + r * q.0[j] + part_offsets_in_q[pi][j] + s;
                            block.set(dst_idx, src_idx, 1);
                        }
                    }
                }
            }
            blocks.push(block);
        }
        Mor::new(fp, source, target, blocks)
    }

    /// Distributivity permutation ⊕_a (P_a ⊗ V) -> (⊕_a P_a) ⊗ V.
    pub fn dist_left(&self, parts: &[Obj], v: &Obj) -> Mor {
        let fp = self.action.fp();
        let n = self.action.n();
        let mut q = Obj::zero(n);
        let mut part_offsets_in_q: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
        for p in parts {
            part_offsets_in_q.push(q.0.clone());
            for j in 0..n {
                q.0[j] += p.0[j];
            }
        }
        let target = self.tensor_obj(&q, v);
        let source_parts: Vec<Obj> = parts.iter().map(|p| self.tensor_obj(p, v)).collect();
        let mut source = Obj::zero(n);
        let mut sum_offsets: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
        for sp in &source_parts {
            sum_offsets.push(source.0.clone());
            for j in 0..n {
                source.0[j] += sp.0[j];
            }
        }
        let mut blocks = Vec::with_capacity(n);
        for k in 0..n {
            let mut block = Matrix::zero(fp, target.0[k], source.0[k]);
            let tgt_off = self.slot_offsets(&q, v, k);
            for (pi, p) in parts.iter().enumerate() {
                let src_off = self.slot_offsets(p, v, k);
                for i in 0..n {
                    let j = self.emul(self.einv[i], k);
                    for r in 0..p.0[i] {
                        for s in 0..v.0[j] {
                            let src_idx = sum_offsets[pi][k] + src_off[i] + r * v.0[j] + s;
                            let dst_idx = tgt_off[i] + (part_offsets_in_q[pi][i] + r) * v.0[j] + s;
                            block.set(dst_idx, src_idx, 1);
                        }
                    }
                }
            }
            blocks.push(block);
        }
        Mor::new(fp, source, target, blocks)
    }

    /// The unit object with its canonical equivariant structure over any
    /// subgroup (lambda at the unit label is forced to 1 by compatibility).
    pub fn unit_eq(&self, sub: &Subgroup) -> Result<EqObject> {
        let obj = Obj::simple(self.action.n(), 0);
        let mu = sub
            .elems()
            .iter()
            .map(|_| {
                obj.0
                    .iter()
                    .map(|&m| Matrix::identity(self.action.fp(), m))
                    .collect()
            })
            .collect();
        EqObject::new(&self.action, sub.clone(), obj, mu)
    }

    /// Module product M ⊠ V = Res(M) ⊗ V with the structure
    /// (mu_M^h ⊗ mu_V^h) ∘ (T^h)_2. Requires V's subgroup inside M's.
    pub fn tensor_eq(&self, m: &EqObject, v: &EqObject) -> Result<EqObject> {
        if !v.sub().is_subgroup_of(m.sub()) {
            return Err(Error::Containment(
                "tensor_eq: need sub(V) <= sub(M)".into(),
            ));
        }
        let sub = v.sub().clone();
        let obj = self.tensor_obj(m.obj(), v.obj());
        let mut mu = Vec::with_capacity(sub.order());
        for &h in sub.elems() {
            let t2t = self.t2_tensor(h, m.obj(), v.obj());
            let pair = self.tensor_mor(&m.mu_mor(&self.action, h), &v.mu_mor(&self.action, h));
            mu.push(pair.compose(&t2t).blocks);
        }
        EqObject::new_unchecked(&self.action, sub, obj, mu)
    }

    /// Tensor of equivariant morphisms (f over H, g over L <= H).
    pub fn tensor_eq_mor(&self, f: &EqMorphism, g: &EqMorphism) -> Result<EqMorphism> {
        EqMorphism::new(
            &self.action,
            self.tensor_eq(&f.source, &g.source)?,
            self.tensor_eq(&f.target, &g.target)?,
            self.tensor_mor(&f.mor, &g.mor),
        )
    }

    /// The re-slotting permutation as an equivariant isomorphism
    /// (A⊗B)⊠V -> A⊠(B⊠V).
    pub fn assoc_eq(&self, a: &EqObject, b: &EqObject, v: &EqObject) -> Result<EqMorphism> {
        let ab = self.tensor_eq(a, b)?;
        let source = self.tensor_eq(&ab, v)?;
        let bv = self.tensor_eq(b, v)?;
        let target = self.tensor_eq(a, &bv)?;
        EqMorphism::new(
            &self.action,
            source,
            target,
            self.assoc_witness(a.obj(), b.obj(), v.obj()),
        )
    }

    /// The module-functor structure of induction:
    /// Ind_L^H(M ⊠ V) -> M ⊠ Ind_L^H(V), with component
    /// (mu_M^a ⊗ 1) ∘ (T2^a)^{M,V} at the representative a.
    pub fn ind_module_structure(
        &self,
        l: &Subgroup,
        h: &Subgroup,
        m: &EqObject,
        v: &EqObject,
    ) -> Result<EqMorphism> {
        if !l.is_subgroup_of(h) || !h.is_subgroup_of(m.sub()) {
            return Err(Error::Containment(
                "ind_module_structure: need L <= H <= sub(M)".into(),
            ));
        }
        let action = &self.action;
        let fp = action.fp();
        let n = action.n();
        let reps = coset_reps(action.group(), l, h)?;
        let mv = self.tensor_eq(&res(action, l, m)?, v)?;
        let source = ind(action, l, h, &mv)?;
        let ind_v = ind(action, l, h, v)?;
        let target = self.tensor_eq(&res(action, h, m)?, &ind_v)?;
        // Per-representative component, then redistribution.
        let mut comp_blocks: Vec<Mor> = Vec::with_capacity(reps.len());
        for &a in &reps {
            let t2t = self.t2_tensor(a, m.obj(), v.obj());
            let id_tav = Mor::identity(fp, &action.act_obj(a, v.obj()));
            let pair = self.tensor_mor(&m.mu_mor(action, a), &id_tav);
            comp_blocks.push(pair.compose(&t2t));
        }
        let parts: Vec<Obj> = reps.iter().map(|&a| action.act_obj(a, v.obj())).collect();
        let dist = self.dist_right(m.obj(), &parts);
        // Assemble the blockwise sum of the components.
        let mut src_total = Obj::zero(n);
        let mut src_offsets = Vec::with_capacity(reps.len());
        let mut mid_total = Obj::zero(n);
        let mut mid_offsets = Vec::with_capacity(reps.len());
        for c in &comp_blocks {
            src_offsets.push(src_total.0.clone());
            mid_offsets.push(mid_total.0.clone());
            for j in 0..n {
                src_total.0[j] += c.source.0[j];
                mid_total.0[j] += c.target.0[j];
            }
        }
        let mut blocks: Vec<Matrix> = (0..n)
            .map(|j| Matrix::zero(fp, mid_total.0[j], src_total.0[j]))
            .collect();
        for (k, c) in comp_blocks.iter().enumerate() {
            for j in 0..n {
                blocks[j].paste(mid_offsets[k][j], src_offsets[k][j], &c.blocks[j]);
            }
        }
        let stacked = Mor::new(fp, src_total, mid_total, blocks);
        let mor = dist.compose(&stacked);
        EqMorphism::new(action, source, target, mor)
    }

    /// Unit and associativity diagrams of the induction module structure.
    pub fn check_ind_module_diagrams(
        &self,
        l: &Subgroup,
        h: &Subgroup,
        a: &EqObject,
        b: &EqObject,
        v: &EqObject,
    ) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        let action = &self.action;
        // Unit diagram: the module structure at the unit object is the identity.
        let unit = self.unit_eq(h)?;
        let um = self.ind_module_structure(l, h, &unit, v)?;
        report.check(
            "module diagram UM: unit component is the identity",
            um.is_identity(),
            || "module structure at the unit is not the identity".into(),
        );
        // Associativity diagram: two routes Ind((A⊗B)⊠V) -> A⊠(B⊠Ind V).
        let ab = self.tensor_eq(a, b)?;
        let ims_ab = self.ind_module_structure(l, h, &ab, v)?;
        let ind_v = ind(action, l, h, v)?;
        let assoc_top = self.assoc_eq(a, b, &ind_v)?;
        let glue_a = EqMorphism::new(
            action,
            ims_ab.target.clone(),
            assoc_top.source.clone(),
            Mor::identity(action.fp(), ims_ab.target.obj()),
        )?;
        let path_a = assoc_top.compose(&glue_a).compose(&ims_ab);

        let assoc_inner = self.assoc_eq(a, b, v)?;
        let lifted = crate::functors::ind_mor(action, l, h, &assoc_inner)?;
        let bv = self.tensor_eq(b, v)?;
        let ims_a = self.ind_module_structure(l, h, a, &bv)?;
        let glue_b1 = EqMorphism::new(
            action,
            lifted.target.clone(),
            ims_a.source.clone(),
            Mor::identity(action.fp(), lifted.target.obj()),
        )?;
        let ims_b = self.ind_module_structure(l, h, b, v)?;
        let id_a = EqMorphism::identity(action, &res(action, h, a)?);
        let last = self.tensor_eq_mor(&id_a, &ims_b)?;
        let glue_b2 = EqMorphism::new(
            action,
            ims_a.target.clone(),
            last.source.clone(),
            Mor::identity(action.fp(), ims_a.target.obj()),
        )?;
        let path_b = last
            .compose(&glue_b2)
            .compose(&ims_a)
            .compose(&glue_b1)
            .compose(&lifted);
        report.check(
            "module diagram HM: both routes agree",
            path_a.source.same_data(&path_b.source)
                && path_a.target.same_data(&path_b.target)
                && path_a.mor == path_b.mor,
            || "the two module-structure routes differ".into(),
        );
        Ok(report)
    }

    /// Frobenius-style projection witness
    /// Ind_L^H(M ⊗ Res V) -> Ind_L^H(M) ⊗ V, with component
    /// (1 ⊗ mu_V^a) ∘ (T2^a)^{M,V}.
    pub fn frobenius_iso(
        &self,
        l: &Subgroup,
        h: &Subgroup,
        m: &EqObject,
        v: &EqObject,
    ) -> Result<(EqMorphism, CheckReport)> {
        if !l.is_subgroup_of(h) || m.sub() != l || v.sub() != h {
            return Err(Error::Containment(
                "frobenius_iso: need M over L, V over H, L <= H".into(),
            ));
        }
        let action = &self.action;
        let fp = action.fp();
        let n = action.n();
        let reps = coset_reps(action.group(), l, h)?;
        let source = ind(action, l, h, &self.tensor_eq(m, &res(action, l, v)?)?)?;
        let ind_m = ind(action, l, h, m)?;
        let target = self.tensor_eq(&ind_m, v)?;
        let mut comp_blocks: Vec<Mor> = Vec::with_capacity(reps.len());
        for &a in &reps {
            let t2t = self.t2_tensor(a, m.obj(), v.obj());
            let id_tam = Mor::identity(fp, &action.act_obj(a, m.obj()));
            let pair = self.tensor_mor(&id_tam, &v.mu_mor(action, a));
            comp_blocks.push(pair.compose(&t2t));
        }
        let parts: Vec<Obj> = reps.iter().map(|&a| action.act_obj(a, m.obj())).collect();
        let dist = self.dist_left(&parts, v.obj());
        let mut src_total = Obj::zero(n);
        let mut src_offsets = Vec::with_capacity(reps.len());
        let mut mid_total = Obj::zero(n);
        let mut mid_offsets = Vec::with_capacity(reps.len());
        for c in &comp_blocks {
            src_offsets.push(src_total.0.clone());
            mid_offsets.push(mid_total.0.clone());
            for j in 0..n {
                src_total.0[j] += c.source.0[j];
                mid_total.0[j] += c.target.0[j];
            }
        }
        let mut blocks: Vec<Matrix> = (0..n)
            .map(|j| Matrix::zero(fp, mid_total.0[j], src_total.0[j]))
            .collect();
        for (k, c) in comp_blocks.iter().enumerate() {
            for j in 0..n {
                blocks[j].paste(mid_offsets[k][j], src_offsets[k][j], &c.blocks[j]);
            }
        }
        let stacked = Mor::new(fp, src_total, mid_total, blocks);
        let witness = EqMorphism::new(
            action,
            source.clone(),
            target.clone(),
            dist.compose(&stacked),
        )?;
        let mut report = CheckReport::new();
        report.check(
            "Frobenius witness invertible",
            witness.is_invertible(),
            || "witness is singular".into(),
        );
        report.check(
            "Frobenius endomorphism dimensions agree",
            hom_dim(action, &source, &source) == hom_dim(action, &target, &target),
            || "dim End differs between the two sides".into(),
        );
        Ok((witness, report))
    }

    /// Green-level categorical checks:
    /// (a) restriction is strictly monoidal,
    /// (b) conjugation is monoidal via the tau blocks,
    /// (c) the Mackey witness commutes with the module structures,
    /// (d) the conjugation comparison satisfies the monoidal-transformation law.
    pub fn green_categorical_check(
        &self,
        cache: &mut SimplesCache,
        scope: &[Subgroup],
    ) -> Result<CheckReport> {
        let action = &self.action;
        let group = action.group().clone();
        let full = Subgroup::full(&group);
        let mut report = CheckReport::new();
        for h in scope {
            let simples_h: Vec<EqObject> = cache.get(action, h)?.clone();
            let samples: Vec<&EqObject> = simples_h.iter().take(2).collect();
            // (a) Restriction strictly monoidal, and unit-preserving.
            for k in scope
                .iter()
                .filter(|k| k.is_subgroup_of(h) && k.order() < h.order())
            {
                report.check(
                    format!(
                        "res strictly preserves the unit ({:?} -> {:?})",
                        h.elems(),
                        k.elems()
                    ),
                    res(action, k, &self.unit_eq(h)?)?.same_data(&self.unit_eq(k)?),
                    || "res of the unit differs from the unit".into(),
                );
                for a in &samples {
                    for b in &samples {
                        let lhs = res(action, k, &self.tensor_eq(a, b)?)?;
                        let rhs = self.tensor_eq(&res(action, k, a)?, &res(action, k, b)?)?;
                        report.check(
                            "res strictly monoidal on a sample pair",
                            lhs.same_data(&rhs),
                            || "res(A⊗B) != res(A)⊗res(B) as data".into(),
                        );
                    }
                }
            }
            // (b) Conjugation monoidal: the tau-block is an equivariant
            // isomorphism c(A⊗B) -> c(A)⊗c(B).
            for x in group.elements() {
                for a in &samples {
                    for b in &samples {
                        let src = conj(action, x, &self.tensor_eq(a, b)?)?;
                        let tgt = self.tensor_eq(&conj(action, x, a)?, &conj(action, x, b)?)?;
                        let j = self.t2_tensor(x, a.obj(), b.obj());
                        match EqMorphism::new(action, src, tgt, j) {
                            Ok(w) => report.check(
                                "conjugation monoidal structure invertible",
                                w.is_invertible(),
                                || "tau block is singular".into(),
                            ),
                            Err(e) => report
                                .fail("conjugation monoidal structure equivariant", e.to_string()),
                        }
                    }
                }
            }
            // (d) The conjugation comparison is a monoidal transformation.
            for a_el in group.elements() {
                for b_el in group.elements() {
                    let ab = group.mul(a_el, b_el);
                    for m in &samples {
                        for v in &samples {
                            let mn = self.tensor_eq(m, v)?;
                            let tau_pair = self.t2_tensor(ab, m.obj(), v.obj());
                            let lhs_g2 = {
                                let inner = self.t2_tensor(b_el, m.obj(), v.obj());
                                let outer = self.t2_tensor(
                                    a_el,
                                    &action.act_obj(b_el, m.obj()),
                                    &action.act_obj(b_el, v.obj()),
                                );
                                outer.compose(&action.act_mor(a_el, &inner))
                            };
                            let lhs = lhs_g2.compose(&action.t2_inv(a_el, b_el, mn.obj()));
                            let tm = action.t2_inv(a_el, b_el, m.obj());
                            let tn = action.t2_inv(a_el, b_el, v.obj());
                            let rhs = self.tensor_mor(&tm, &tn).compose(&tau_pair);
                            report.check("conjugation comparison is monoidal", lhs == rhs, || {
                                format!("law fails at (a,b)=({a_el},{b_el})")
                            });
                        }
                    }
                }
            }
        }
        // (c) The Mackey witness is a morphism of module functors.
        let simples_g: Vec<EqObject> = cache.get(action, &full)?.clone();
        let m_samples: Vec<&EqObject> = simples_g.iter().take(2).collect();
        for h in scope {
            for k in scope.iter().filter(|k| k.is_subgroup_of(h)) {
                for l in scope.iter().filter(|l| l.is_subgroup_of(h)) {
                    let simples_l: Vec<EqObject> = cache.get(action, l)?.clone();
                    for v in simples_l.iter().take(2) {
                        for m in &m_samples {
                            let r = self.mackey_module_square(k, l, h, m, v)?;
                            report.merge(r);
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// The square comparing the module structures through the Mackey witness,
    /// one double coset at a time.
    fn mackey_module_square(
        &self,
        k: &Subgroup,
        l: &Subgroup,
        h: &Subgroup,
        m: &EqObject,
        v: &EqObject,
    ) -> Result<CheckReport> {
        let action = &self.action;
        let fp = action.fp();
        let n = action.n();
        let group = action.group();
        let mut report = CheckReport::new();
        let mv = self.tensor_eq(&res(action, l, m)?, v)?;
        let outcome_v = mackey_iso(action, k, l, h, v)?;
        let outcome_mv = mackey_iso(action, k, l, h, &mv)?;
        for (sv, smv) in outcome_v.summands.iter().zip(&outcome_mv.summands) {
            let x = sv.rep;
            debug_assert_eq!(smv.rep, x);
            let xl = crate::group::conjugate_subgroup(group, l, x);
            let kxl = k.intersection(&xl);
            let a_reps = coset_reps(group, &kxl, k)?;
            // F-side module structure: F_x(M⊠V) -> M ⊠ F_x(V).
            let f_structure = {
                let mut comps: Vec<Mor> = Vec::with_capacity(a_reps.len());
                for &ap in &a_reps {
                    let a = group.mul(ap, x);
                    let t2t = self.t2_tensor(a, m.obj(), v.obj());
                    let id_tav = Mor::identity(fp, &action.act_obj(a, v.obj()));
                    comps.push(self.tensor_mor(&m.mu_mor(action, a), &id_tav).compose(&t2t));
                }
                let parts: Vec<Obj> = a_reps
                    .iter()
                    .map(|&ap| action.act_obj(group.mul(ap, x), v.obj()))
                    .collect();
                stack_then(fp, n, &comps, &self.dist_right(m.obj(), &parts))
            };
            let m_res_k = res(action, k, m)?;
            let f_target = self.tensor_eq(&m_res_k, &sv.block)?;
            let f_mor = EqMorphism::new(action, smv.block.clone(), f_target, f_structure)?;
            // G-side module structure: G_x c(M⊠V) -> M ⊠ G_x c(V).
            let g_structure = {
                let xv = action.act_obj(x, v.obj());
                let inner = {
                    let t2t = self.t2_tensor(x, m.obj(), v.obj());
                    let id_txv = Mor::identity(fp, &xv);
                    self.tensor_mor(&m.mu_mor(action, x), &id_txv).compose(&t2t)
                };
                let mut comps: Vec<Mor> = Vec::with_capacity(a_reps.len());
                for &ap in &a_reps {
                    let step1 = action.act_mor(ap, &inner);
                    let step2 = self.t2_tensor(ap, m.obj(), &xv);
                    let id_tap = Mor::identity(fp, &action.act_obj(ap, &xv));
                    let step3 = self.tensor_mor(&m.mu_mor(action, ap), &id_tap);
                    comps.push(step3.compose(&step2).compose(&step1));
                }
                let parts: Vec<Obj> = a_reps.iter().map(|&ap| action.act_obj(ap, &xv)).collect();
                stack_then(fp, n, &comps, &self.dist_right(m.obj(), &parts))
            };
            let g_target = self.tensor_eq(&m_res_k, &sv.induced)?;
            let g_mor = EqMorphism::new(action, smv.induced.clone(), g_target, g_structure)?;
            // Square: (1 ⊗ N_x^V) ∘ F2 = G2 ∘ N_x^{M⊠V}.
            let id_m = EqMorphism::identity(action, &m_res_k);
            let one_tensor_n = self.tensor_eq_mor(&id_m, &sv.witness)?;
            let glue_l = EqMorphism::new(
                action,
                f_mor.target.clone(),
                one_tensor_n.source.clone(),
                Mor::identity(fp, f_mor.target.obj()),
            )?;
            let lhs = one_tensor_n.compose(&glue_l).compose(&f_mor);
            let glue_r = EqMorphism::new(
                action,
                smv.witness.target.clone(),
                g_mor.source.clone(),
                Mor::identity(fp, smv.witness.target.obj()),
            )?;
            let rhs = g_mor.compose(&glue_r).compose(&smv.witness);
            report.check(
                format!("Mackey witness is a module morphism at double coset {x}"),
                lhs.mor == rhs.mor && lhs.target.same_data(&rhs.target),
                || "module square does not commute".into(),
            );
        }
        Ok(report)
    }
}

fn stack_then(fp: crate::fp::Fp, n: usize, comps: &[Mor], dist: &Mor) -> Mor {
    let mut src_total = Obj::zero(n);
    let mut src_offsets = Vec::with_capacity(comps.len());
    let mut mid_total = Obj::zero(n);
    let mut mid_offsets = Vec::with_capacity(comps.len());
    for c in comps {
        src_offsets.push(src_total.0.clone());
        mid_offsets.push(mid_total.0.clone());
        for j in 0..n {
            src_total.0[j] += c.source.0[j];
            mid_total.0[j] += c.target.0[j];
        }
    }
    let mut blocks: Vec<Matrix> = (0..n)
        .map(|j| Matrix::zero(fp, mid_total.0[j], src_total.0[j]))
        .collect();
    for (k, c) in comps.iter().enumerate() {
        for j in 0..n {
            blocks[j].paste(mid_offsets[k][j], src_offsets[k][j], &c.blocks[j]);
        }
    }
    let stacked = Mor::new(fp, src_total, mid_total, blocks);
    dist.compose(&stacked)
}
