//! Restriction, induction and conjugation between equivariantized categories,
//! the natural transformations comparing their composites, the Mackey
//! decomposition of Res∘Ind over double cosets, the induction/restriction
//! adjunction, and the coherence-diagram checkers.
//!
//! All inductions use canonical (minimal-index) coset representatives; when a
//! construction produces an induction over a different representative set, an
//! explicit change-of-representatives isomorphism is composed in, so every
//! diagram becomes a decidable matrix identity.

use crate::action::{ActionData, Mor, Obj};
use crate::equiv::{direct_sum, hom_dim, EqMorphism, EqObject};
use crate::error::{Error, Result};
use crate::group::{conjugate_subgroup, coset_reps, double_cosets, Subgroup};
use crate::mat::Matrix;
use crate::report::CheckReport;

/// The comparison transformations this module constructs, tagged for
/// reporting. Units and counits need not be invertible; everything else is.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NatKind {
    ConjComposition,
    ConjInduction,
    IndTransitivity,
    MackeyBlock,
    Reindex,
    Unit,
    Counit,
}

impl NatKind {
    pub fn requires_invertible(self) -> bool {
        !matches!(self, NatKind::Unit | NatKind::Counit)
    }

    pub fn name(self) -> &'static str {
        match self {
            NatKind::ConjComposition => "conjugation composition",
            NatKind::ConjInduction => "conjugation of induction",
            NatKind::IndTransitivity => "induction transitivity",
            NatKind::MackeyBlock => "Mackey double-coset block",
            NatKind::Reindex => "change of representatives",
            NatKind::Unit => "adjunction unit",
            NatKind::Counit => "adjunction counit",
        }
    }
}

/// One component of a comparison transformation at a specific object, with
/// the context it was built in. The component is always an equivariant
/// morphism; invertibility is enforced according to the kind.
#[derive(Clone, Debug)]
pub struct NatTransInstance {
    pub kind: NatKind,
    pub context: String,
    pub component: EqMorphism,
}

impl NatTransInstance {
    pub fn new(kind: NatKind, context: impl Into<String>, component: EqMorphism) -> Result<Self> {
        if kind.requires_invertible() && !component.is_invertible() {
            return Err(Error::Internal(format!(
                "{} component must be invertible",
                kind.name()
            )));
        }
        Ok(NatTransInstance {
            kind,
            context: context.into(),
            component,
        })
    }
}

/// Offsets of a list of summands inside their concatenated direct sum,
/// per simple.
struct SumLayout {
    parts: Vec<Obj>,
    total: Obj,
    /// `offsets[part][simple]`
    offsets: Vec<Vec<usize>>,
}

impl SumLayout {
    fn new(n: usize, parts: Vec<Obj>) -> SumLayout {
        let mut total = Obj::zero(n);
        let mut offsets = Vec::with_capacity(parts.len());
        for p in &parts {
            offsets.push(total.0.clone());
            for j in 0..n {
                total.0[j] += p.0[j];
            }
        }
        SumLayout {
            parts,
            total,
            offsets,
        }
    }
}

/// Restriction to a subgroup: same underlying object, structure maps kept
/// only for elements of K. Transitivity holds on the nose.
pub fn res(action: &ActionData, k: &Subgroup, m: &EqObject) -> Result<EqObject> {
    if !k.is_subgroup_of(m.sub()) {
        return Err(Error::Containment(
            "res: K must lie in the object's subgroup".into(),
        ));
    }
    let mu = k.elems().iter().map(|&g| m.mu_blocks(g).to_vec()).collect();
    EqObject::new_unchecked(action, k.clone(), m.obj().clone(), mu)
}

pub fn res_mor(action: &ActionData, k: &Subgroup, f: &EqMorphism) -> Result<EqMorphism> {
    EqMorphism::new(
        action,
        res(action, k, &f.source)?,
        res(action, k, &f.target)?,
        f.mor.clone(),
    )
}

fn validate_reps(action: &ActionData, l: &Subgroup, h: &Subgroup, reps: &[usize]) -> Result<()> {
    let group = action.group();
    if reps.len() * l.order() != h.order() {
        return Err(Error::BadReps(format!(
            "{} representatives for index {}",
            reps.len(),
            h.order() / l.order()
        )));
    }
    let mut covered = vec![false; group.order()];
    for &t in reps {
        if !h.contains(t) {
            return Err(Error::BadReps(format!("representative {t} outside H")));
        }
        for &a in l.elems() {
            let x = group.mul(t, a);
            if covered[x] {
                return Err(Error::BadReps(format!("cosets overlap at {x}")));
            }
            covered[x] = true;
        }
    }
    Ok(())
}

/// Induction on an explicit representative list, with structure maps built
/// for the elements of `sub`. For the full induction `sub = H`; for the
/// double-coset summands `sub = K` acting on one K-stable block, and any
/// element moving a representative outside the block is an error.
fn ind_on_reps(
    action: &ActionData,
    l: &Subgroup,
    sub: &Subgroup,
    reps: &[usize],
    v: &EqObject,
) -> Result<EqObject> {
    if v.sub() != l {
        return Err(Error::Containment("ind: object not over L".into()));
    }
    let fp = action.fp();
    let group = action.group();
    let n = action.n();
    let layout = SumLayout::new(
        n,
        reps.iter().map(|&t| action.act_obj(t, v.obj())).collect(),
    );
    let mut mu = Vec::with_capacity(sub.order());
    for &g in sub.elems() {
        let src_total = action.act_obj(g, &layout.total);
        let mut blocks: Vec<Matrix> = (0..n)
            .map(|j| Matrix::zero(fp, layout.total.0[j], src_total.0[j]))
            .collect();
        for (t_idx, &t) in reps.iter().enumerate() {
            let gt = group.mul(g, t);
            // Unique s in the list with s^{-1}·g·t in L.
            let s_idx = reps
                .iter()
                .position(|&s| l.contains(group.mul(group.inv(s), gt)))
                .ok_or_else(|| {
                    Error::BadReps(format!(
                        "element {g} moves representative {t} outside the block"
                    ))
                })?;
            let s = reps[s_idx];
            let h_elem = group.mul(group.inv(s), gt);
            let mu_v = v.mu_blocks(h_elem);
            for j in 0..n {
                let jgt = action.sigma_inv(gt).apply(j);
                let js = action.sigma_inv(s).apply(j);
                // nu^{g,t} = T^s(mu^h) ∘ (T2^{s,h})^{-1} ∘ T2^{g,t} componentwise.
                let scalar = fp.mul(action.lambda(g, t, jgt), action.lambda_inv(s, h_elem, jgt));
                let block = mu_v[js].scale(scalar);
                let col = layout.offsets[t_idx][action.sigma_inv(g).apply(j)];
                blocks[j].paste(layout.offsets[s_idx][j], col, &block);
            }
        }
        mu.push(blocks);
    }
    EqObject::new_unchecked(action, sub.clone(), layout.total, mu)
}

/// Induction along L <= H with canonical coset representatives.
pub fn ind(action: &ActionData, l: &Subgroup, h: &Subgroup, v: &EqObject) -> Result<EqObject> {
    let reps = coset_reps(action.group(), l, h)?;
    ind_on_reps(action, l, h, &reps, v)
}

/// Functorial action of induction on morphisms: blockwise T^t(f).
pub fn ind_mor(
    action: &ActionData,
    l: &Subgroup,
    h: &Subgroup,
    f: &EqMorphism,
) -> Result<EqMorphism> {
    let reps = coset_reps(action.group(), l, h)?;
    let fp = action.fp();
    let n = action.n();
    let source = ind_on_reps(action, l, h, &reps, &f.source)?;
    let target = ind_on_reps(action, l, h, &reps, &f.target)?;
    let src_layout = SumLayout::new(
        n,
        reps.iter()
            .map(|&t| action.act_obj(t, f.source.obj()))
            .collect(),
    );
    let tgt_layout = SumLayout::new(
        n,
        reps.iter()
            .map(|&t| action.act_obj(t, f.target.obj()))
            .collect(),
    );
    let mut blocks: Vec<Matrix> = (0..n)
        .map(|j| Matrix::zero(fp, tgt_layout.total.0[j], src_layout.total.0[j]))
        .collect();
    for (t_idx, &t) in reps.iter().enumerate() {
        let tf = action.act_mor(t, &f.mor);
        for j in 0..n {
            blocks[j].paste(
                tgt_layout.offsets[t_idx][j],
                src_layout.offsets[t_idx][j],
                &tf.blocks[j],
            );
        }
    }
    let mor = Mor::new(fp, src_layout.total, tgt_layout.total, blocks);
    EqMorphism::new(action, source, target, mor)
}

/// Conjugation c_{H,x} : C^H -> C^{xHx^{-1}}, twisting the structure by
///   T^{xhx^{-1}}(T^x V) -> T^{xh}(V) -> T^x T^h(V) -> T^x(V).
pub fn conj(action: &ActionData, x: usize, m: &EqObject) -> Result<EqObject> {
    let group = action.group();
    let target_sub = conjugate_subgroup(group, m.sub(), x);
    let obj = action.act_obj(x, m.obj());
    let mut mu = Vec::with_capacity(target_sub.order());
    for &gp in target_sub.elems() {
        let h = group.mul(group.mul(group.inv(x), gp), x);
        debug_assert!(m.sub().contains(h));
        let step1 = action.t2(gp, x, m.obj());
        let step2 = action.t2_inv(x, h, m.obj());
        let step3 = action.act_mor(x, &m.mu_mor(action, h));
        let total = step3.compose(&step2).compose(&step1);
        mu.push(total.blocks);
    }
    EqObject::new_unchecked(action, target_sub, obj, mu)
}

pub fn conj_mor(action: &ActionData, x: usize, f: &EqMorphism) -> Result<EqMorphism> {
    EqMorphism::new(
        action,
        conj(action, x, &f.source)?,
        conj(action, x, &f.target)?,
        action.act_mor(x, &f.mor),
    )
}

/// Change of coset representatives: the isomorphism between the inductions of
/// V over two representative lists for H/L. For t' = t·l the component
/// T^{t'}(V) -> T^t(V) is T^t(mu^l) ∘ (T2^{t,l})^{-1}.
pub fn reindex_induction(
    action: &ActionData,
    l: &Subgroup,
    h: &Subgroup,
    reps_src: &[usize],
    reps_dst: &[usize],
    v: &EqObject,
) -> Result<EqMorphism> {
    validate_reps(action, l, h, reps_src)?;
    validate_reps(action, l, h, reps_dst)?;
    let fp = action.fp();
    let group = action.group();
    let n = action.n();
    let source = ind_on_reps(action, l, h, reps_src, v)?;
    let target = ind_on_reps(action, l, h, reps_dst, v)?;
    let src_layout = SumLayout::new(
        n,
        reps_src
            .iter()
            .map(|&t| action.act_obj(t, v.obj()))
            .collect(),
    );
    let tgt_layout = SumLayout::new(
        n,
        reps_dst
            .iter()
            .map(|&t| action.act_obj(t, v.obj()))
            .collect(),
    );
    let mut blocks: Vec<Matrix> = (0..n)
        .map(|j| Matrix::zero(fp, tgt_layout.total.0[j], src_layout.total.0[j]))
        .collect();
    for (sp_idx, &tp) in reps_src.iter().enumerate() {
        let t_idx = reps_dst
            .iter()
            .position(|&t| l.contains(group.mul(group.inv(t), tp)))
            .ok_or_else(|| {
                Error::BadReps("source representative matches no target coset".into())
            })?;
        let t = reps_dst[t_idx];
        let l_elem = group.mul(group.inv(t), tp);
        let mu_v = v.mu_blocks(l_elem);
        for j in 0..n {
            let jtp = action.sigma_inv(tp).apply(j);
            let jt = action.sigma_inv(t).apply(j);
            let scalar = action.lambda_inv(t, l_elem, jtp);
            let block = mu_v[jt].scale(scalar);
            blocks[j].paste(
                tgt_layout.offsets[t_idx][j],
                src_layout.offsets[sp_idx][j],
                &block,
            );
        }
    }
    let mor = Mor::new(fp, src_layout.total, tgt_layout.total, blocks);
    EqMorphism::new(action, source, target, mor)
}

/// The comparison c_{H,ab}(M) -> c_{bHb^{-1},a}(c_{H,b}(M)) with component
/// (T2^{a,b})^{-1}.
pub fn nat_c(action: &ActionData, a: usize, b: usize, m: &EqObject) -> Result<EqMorphism> {
    let ab = action.group().mul(a, b);
    let source = conj(action, ab, m)?;
    let inner = conj(action, b, m)?;
    let target = conj(action, a, &inner)?;
    EqMorphism::new(action, source, target, action.t2_inv(a, b, m.obj()))
}

/// The comparison c_{H,x} Ind_L^H(M) -> Ind_{xL}^{xH}(c_{L,x}(M)), assembled
/// from the components (T2^{xrx^{-1},x})^{-1} (T2^{x,r}) over the conjugated
/// representative set and re-canonicalized.
pub fn nat_ci(
    action: &ActionData,
    x: usize,
    l: &Subgroup,
    h: &Subgroup,
    m: &EqObject,
) -> Result<EqMorphism> {
    let group = action.group();
    let fp = action.fp();
    let n = action.n();
    let reps = coset_reps(group, l, h)?;
    let source = conj(action, x, &ind(action, l, h, m)?)?;
    let xl = conjugate_subgroup(group, l, x);
    let xh = conjugate_subgroup(group, h, x);
    let conj_m = conj(action, x, m)?;
    let conj_reps: Vec<usize> = reps.iter().map(|&r| group.conj(x, r)).collect();
    let mid = ind_on_reps(action, &xl, &xh, &conj_reps, &conj_m)?;
    // Source and mid are direct sums over the same index set r, with summand
    // multiplicities act(xr, M); the component is a scalar per (r, simple).
    let layout = SumLayout::new(
        n,
        reps.iter()
            .map(|&r| action.act_obj(group.mul(x, r), m.obj()))
            .collect(),
    );
    let mut blocks: Vec<Matrix> = (0..n)
        .map(|j| Matrix::zero(fp, layout.total.0[j], layout.total.0[j]))
        .collect();
    for (r_idx, &r) in reps.iter().enumerate() {
        let xr = group.mul(x, r);
        let xrx = group.conj(x, r);
        for j in 0..n {
            let jxr = action.sigma_inv(xr).apply(j);
            let scalar = fp.mul(action.lambda(x, r, jxr), action.lambda_inv(xrx, x, jxr));
            let size = layout.parts[r_idx].0[j];
            blocks[j].paste(
                layout.offsets[r_idx][j],
                layout.offsets[r_idx][j],
                &Matrix::scalar(fp, size, scalar),
            );
        }
    }
    let mor = Mor::new(fp, layout.total.clone(), layout.total.clone(), blocks);
    let to_mid = EqMorphism::new(action, source, mid, mor)?;
    let canonical = coset_reps(group, &xl, &xh)?;
    let reindex = reindex_induction(action, &xl, &xh, &conj_reps, &canonical, &conj_m)?;
    Ok(reindex.compose(&to_mid))
}

/// The comparison Ind_K^H(Ind_J^K(M)) -> Ind_J^H(M) with components
/// (T2^{r,s})_M, re-canonicalized from the product representative list.
pub fn nat_i(
    action: &ActionData,
    j_sub: &Subgroup,
    k_sub: &Subgroup,
    h_sub: &Subgroup,
    m: &EqObject,
) -> Result<EqMorphism> {
    if !j_sub.is_subgroup_of(k_sub) || !k_sub.is_subgroup_of(h_sub) {
        return Err(Error::Containment("nat_i: need J <= K <= H".into()));
    }
    let group = action.group();
    let fp = action.fp();
    let n = action.n();
    let r_reps = coset_reps(group, k_sub, h_sub)?;
    let s_reps = coset_reps(group, j_sub, k_sub)?;
    let inner = ind(action, j_sub, k_sub, m)?;
    let source = ind(action, k_sub, h_sub, &inner)?;
    let mut rs_list = Vec::with_capacity(r_reps.len() * s_reps.len());
    for &r in &r_reps {
        for &s in &s_reps {
            rs_list.push(group.mul(r, s));
        }
    }
    let mid = ind_on_reps(action, j_sub, h_sub, &rs_list, m)?;
    let layout = SumLayout::new(
        n,
        rs_list
            .iter()
            .map(|&t| action.act_obj(t, m.obj()))
            .collect(),
    );
    let mut blocks: Vec<Matrix> = (0..n)
        .map(|jj| Matrix::zero(fp, layout.total.0[jj], layout.total.0[jj]))
        .collect();
    let mut idx = 0;
    for &r in &r_reps {
        for &s in &s_reps {
            let rs = group.mul(r, s);
            for jj in 0..n {
                let jrs = action.sigma_inv(rs).apply(jj);
                let scalar = action.lambda(r, s, jrs);
                let size = layout.parts[idx].0[jj];
                blocks[jj].paste(
                    layout.offsets[idx][jj],
                    layout.offsets[idx][jj],
                    &Matrix::scalar(fp, size, scalar),
                );
            }
            idx += 1;
        }
    }
    let mor = Mor::new(fp, layout.total.clone(), layout.total.clone(), blocks);
    let to_mid = EqMorphism::new(action, source, mid, mor)?;
    let canonical = coset_reps(group, j_sub, h_sub)?;
    let reindex = reindex_induction(action, j_sub, h_sub, &rs_list, &canonical, m)?;
    Ok(reindex.compose(&to_mid))
}

/// One double-coset summand of the Mackey decomposition.
#[derive(Clone, Debug)]
pub struct MackeySummand {
    pub rep: usize,
    /// The K-stable block of Res_K Ind_L(V) supported on the cosets inside KxL.
    pub block: EqObject,
    /// Ind_{K ∩ xL}^K Res(c_{L,x}(V)).
    pub induced: EqObject,
    /// The witness block -> induced, diagonal with components (T2^{ax^{-1},x})^{-1}.
    pub witness: EqMorphism,
}

#[derive(Debug)]
pub struct MackeyOutcome {
    /// Res_K^H Ind_L^H(V) -> ⊕_x Ind_{K∩xL}^K Res c_{L,x}(V), invertible.
    pub witness: EqMorphism,
    pub summands: Vec<MackeySummand>,
    pub report: CheckReport,
}

/// The Mackey decomposition isomorphism
/// Res_K^H Ind_L^H(V) ≅ ⊕_{x ∈ K\H/L} Ind_{K∩xL}^K Res_{K∩xL}^{xL} c_{L,x}(V),
/// constructed blockwise over the double cosets and machine-checked.
pub fn mackey_iso(
    action: &ActionData,
    k: &Subgroup,
    l: &Subgroup,
    h: &Subgroup,
    v: &EqObject,
) -> Result<MackeyOutcome> {
    if !k.is_subgroup_of(h) || !l.is_subgroup_of(h) {
        return Err(Error::Containment(
            "mackey_iso: K and L must lie in H".into(),
        ));
    }
    let group = action.group();
    let fp = action.fp();
    let n = action.n();
    let mut report = CheckReport::new();
    let dc = double_cosets(group, k, h, l)?;
    let mut summands = Vec::new();
    let mut concat_reps: Vec<usize> = Vec::new();
    for coset in &dc.cosets {
        let x = coset.rep;
        let xl = conjugate_subgroup(group, l, x);
        let kxl = k.intersection(&xl);
        let a_reps = coset_reps(group, &kxl, k)?;
        let block_reps: Vec<usize> = a_reps.iter().map(|&a| group.mul(a, x)).collect();
        concat_reps.extend_from_slice(&block_reps);
        // K-stability of the block is verified by construction: ind_on_reps
        // fails if any element of K moves a representative out of the block.
        let block = ind_on_reps(action, l, k, &block_reps, v)?;
        let conj_v = conj(action, x, v)?;
        let res_cv = res(action, &kxl, &conj_v)?;
        let induced = ind(action, &kxl, k, &res_cv)?;
        let layout = SumLayout::new(
            n,
            block_reps
                .iter()
                .map(|&a| action.act_obj(a, v.obj()))
                .collect(),
        );
        let mut blocks: Vec<Matrix> = (0..n)
            .map(|j| Matrix::zero(fp, layout.total.0[j], layout.total.0[j]))
            .collect();
        for (a_idx, &ax) in block_reps.iter().enumerate() {
            let a = a_reps[a_idx];
            debug_assert_eq!(group.mul(a, x), ax);
            for j in 0..n {
                let jax = action.sigma_inv(ax).apply(j);
                let scalar = action.lambda_inv(a, x, jax);
                let size = layout.parts[a_idx].0[j];
                blocks[j].paste(
                    layout.offsets[a_idx][j],
                    layout.offsets[a_idx][j],
                    &Matrix::scalar(fp, size, scalar),
                );
            }
        }
        let mor = Mor::new(fp, layout.total.clone(), layout.total.clone(), blocks);
        let witness = EqMorphism::new(action, block.clone(), induced.clone(), mor)?;
        report.check(
            format!("double coset {x}: witness equivariant and invertible"),
            witness.is_invertible(),
            || "witness block is singular".into(),
        );
        summands.push(MackeySummand {
            rep: x,
            block,
            induced,
            witness,
        });
    }
    // Dimension identity: sum_x [K : K ∩ xL]·|V| = [H:L]·|V|.
    let lhs: usize = summands.iter().map(|s| s.block.total_dim()).sum();
    let rhs = (h.order() / l.order()) * v.total_dim();
    report.check("double coset dimension identity", lhs == rhs, || {
        format!("sum of block dimensions {lhs} != [H:L]·|V| = {rhs}")
    });
    // The full restricted induction splits as the concatenation of the
    // K-stable blocks, on the nose.
    let canonical = coset_reps(group, l, h)?;
    let ind_concat = ind_on_reps(action, l, h, &concat_reps, v)?;
    let res_concat = res(action, k, &ind_concat)?;
    let (sum_blocks, _, _) = direct_sum(
        action,
        &summands.iter().map(|s| s.block.clone()).collect::<Vec<_>>(),
    )?;
    report.check(
        "restricted induction splits into K-stable blocks",
        res_concat.same_data(&sum_blocks),
        || "block structure mismatch".into(),
    );
    let reindex = reindex_induction(action, l, h, &canonical, &concat_reps, v)?;
    let res_reindex = res_mor(action, k, &reindex)?;
    let per_block: Vec<EqMorphism> = summands.iter().map(|s| s.witness.clone()).collect();
    let big = direct_sum_mor(action, &per_block)?;
    // Reconcile the middle objects (same data, independently constructed).
    let middle = EqMorphism::new(
        action,
        res_reindex.source.clone(),
        big.source.clone(),
        res_reindex.mor.clone(),
    )?;
    let witness = big.compose(&middle);
    report.check(
        "assembled Mackey witness invertible",
        witness.is_invertible(),
        || "assembled witness is singular".into(),
    );
    Ok(MackeyOutcome {
        witness,
        summands,
        report,
    })
}

/// Blockwise direct sum of morphisms between the direct sums of their
/// endpoints.
pub fn direct_sum_mor(action: &ActionData, fs: &[EqMorphism]) -> Result<EqMorphism> {
    let fp = action.fp();
    let n = action.n();
    let sources: Vec<EqObject> = fs.iter().map(|f| f.source.clone()).collect();
    let targets: Vec<EqObject> = fs.iter().map(|f| f.target.clone()).collect();
    let (sum_src, _, _) = direct_sum(action, &sources)?;
    let (sum_tgt, _, _) = direct_sum(action, &targets)?;
    let src_layout = SumLayout::new(n, sources.iter().map(|s| s.obj().clone()).collect());
    let tgt_layout = SumLayout::new(n, targets.iter().map(|t| t.obj().clone()).collect());
    let mut blocks: Vec<Matrix> = (0..n)
        .map(|j| Matrix::zero(fp, tgt_layout.total.0[j], src_layout.total.0[j]))
        .collect();
    for (k, f) in fs.iter().enumerate() {
        for j in 0..n {
            blocks[j].paste(
                tgt_layout.offsets[k][j],
                src_layout.offsets[k][j],
                &f.mor.blocks[j],
            );
        }
    }
    let mor = Mor::new(fp, src_layout.total, tgt_layout.total, blocks);
    EqMorphism::new(action, sum_src, sum_tgt, mor)
}

/// Unit of the adjunction Ind ⊣ Res: the injection of V into the
/// identity-representative component of Res_L Ind_L^H(V).
pub fn adjunction_unit(
    action: &ActionData,
    l: &Subgroup,
    h: &Subgroup,
    v: &EqObject,
) -> Result<EqMorphism> {
    let fp = action.fp();
    let n = action.n();
    let induced = ind(action, l, h, v)?;
    let restricted = res(action, l, &induced)?;
    // Canonical representatives start with the identity, so the component
    // sits at offset zero in every simple.
    let mut blocks = Vec::with_capacity(n);
    for j in 0..n {
        let mut b = Matrix::zero(fp, restricted.obj().0[j], v.obj().0[j]);
        b.paste(0, 0, &Matrix::identity(fp, v.obj().0[j]));
        blocks.push(b);
    }
    let mor = Mor::new(fp, v.obj().clone(), restricted.obj().clone(), blocks);
    EqMorphism::new(action, v.clone(), restricted, mor)
}

/// Counit of the adjunction: Ind_L^H Res_L^H(M) -> M with component mu_M^t at
/// the representative t.
pub fn adjunction_counit(
    action: &ActionData,
    l: &Subgroup,
    h: &Subgroup,
    m: &EqObject,
) -> Result<EqMorphism> {
    let fp = action.fp();
    let n = action.n();
    let group = action.group();
    let reps = coset_reps(group, l, h)?;
    let restricted = res(action, l, m)?;
    let induced = ind(action, l, h, &restricted)?;
    let layout = SumLayout::new(
        n,
        reps.iter().map(|&t| action.act_obj(t, m.obj())).collect(),
    );
    let mut blocks: Vec<Matrix> = (0..n)
        .map(|j| Matrix::zero(fp, m.obj().0[j], layout.total.0[j]))
        .collect();
    for (t_idx, &t) in reps.iter().enumerate() {
        let mu_t = m.mu_blocks(t);
        for j in 0..n {
            blocks[j].paste(0, layout.offsets[t_idx][j], &mu_t[j]);
        }
    }
    let mor = Mor::new(fp, layout.total, m.obj().clone(), blocks);
    EqMorphism::new(action, induced, m.clone(), mor)
}

/// Verify both triangle identities and the Hom-dimension bijection of the
/// adjunction on the given sample objects.
pub fn adjunction_check(
    action: &ActionData,
    l: &Subgroup,
    h: &Subgroup,
    samples_l: &[EqObject],
    samples_h: &[EqObject],
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    for (vi, v) in samples_l.iter().enumerate() {
        let unit = adjunction_unit(action, l, h, v)?;
        let ind_unit = ind_mor(action, l, h, &unit)?;
        let counit_at_ind = adjunction_counit(action, l, h, &ind_unit.source)?;
        // The counit is built at Ind(V); reconcile middle objects.
        let glue = EqMorphism::new(
            action,
            ind_unit.target.clone(),
            counit_at_ind.source.clone(),
            Mor::identity(action.fp(), ind_unit.target.obj()),
        )?;
        let tri1 = counit_at_ind.compose(&glue).compose(&ind_unit);
        report.check(
            format!("triangle εInd ∘ Ind(η) = id at sample {vi} over L"),
            tri1.is_identity(),
            || "first triangle identity fails".into(),
        );
    }
    for (mi, m) in samples_h.iter().enumerate() {
        let counit = adjunction_counit(action, l, h, m)?;
        let res_counit = res_mor(action, l, &counit)?;
        let unit_at_res = adjunction_unit(action, l, h, &res_counit.target)?;
        let glue = EqMorphism::new(
            action,
            unit_at_res.target.clone(),
            res_counit.source.clone(),
            Mor::identity(action.fp(), unit_at_res.target.obj()),
        )?;
        let tri2 = res_counit.compose(&glue).compose(&unit_at_res);
        report.check(
            format!("triangle Res(ε) ∘ η_Res = id at sample {mi} over H"),
            tri2.is_identity(),
            || "second triangle identity fails".into(),
        );
    }
    for (vi, v) in samples_l.iter().enumerate() {
        for (mi, m) in samples_h.iter().enumerate() {
            let lhs = hom_dim(action, &ind(action, l, h, v)?, m);
            let rhs = hom_dim(action, v, &res(action, l, m)?);
            report.check(
                format!("hom dimension bijection at samples ({vi},{mi})"),
                lhs == rhs,
                || format!("dim Hom(Ind V, M) = {lhs} != dim Hom(V, Res M) = {rhs}"),
            );
        }
    }
    Ok(report)
}

/// The seven coherence diagrams. Contexts carry the subgroups and group
/// elements each diagram quantifies over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Diagram {
    /// Transitivity of restriction (strict).
    R,
    /// Transitivity of induction (tower J <= K <= L <= H).
    I,
    /// Composition of conjugations (elements a, b, c).
    C,
    /// Conjugation vs. iterated restriction (strict).
    Rrc,
    /// Conjugation composition vs. restriction (strict conj-res exchange).
    Rcc,
    /// Conjugation vs. iterated induction.
    Iic,
    /// Conjugation composition vs. induction.
    Icc,
}

impl Diagram {
    pub fn name(self) -> &'static str {
        match self {
            Diagram::R => "R",
            Diagram::I => "I",
            Diagram::C => "C",
            Diagram::Rrc => "RRC",
            Diagram::Rcc => "RCC",
            Diagram::Iic => "IIC",
            Diagram::Icc => "ICC",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiagramContext {
    pub subs: Vec<Subgroup>,
    pub elems: Vec<usize>,
}

fn expect_same(report: &mut CheckReport, name: String, a: &EqObject, b: &EqObject) -> bool {
    let same = a.same_data(b);
    report.check(name, same, || "objects differ as data".into());
    same
}

/// Evaluate both composites of the named diagram at M and compare entrywise.
pub fn coherence_check(
    action: &ActionData,
    diagram: Diagram,
    ctx: &DiagramContext,
    m: &EqObject,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    match diagram {
        Diagram::R => {
            let [j_sub, k_sub, _h_sub] = ctx_subs::<3>(ctx)?;
            let via = res(action, &j_sub, &res(action, &k_sub, m)?)?;
            let direct = res(action, &j_sub, m)?;
            expect_same(
                &mut report,
                "diagram R: Res∘Res = Res strictly".into(),
                &via,
                &direct,
            );
        }
        Diagram::I => {
            let [j_sub, k_sub, l_sub, h_sub] = ctx_subs::<4>(ctx)?;
            // Degenerate identities first.
            let degenerate = nat_i(action, &j_sub, &j_sub, &h_sub, m)?;
            report.check(
                "diagram I: degenerate J=K is the identity",
                degenerate.is_identity(),
                || "nat_i(J,J,H) is not the identity".into(),
            );
            let degenerate = nat_i(action, &j_sub, &h_sub, &h_sub, m)?;
            report.check(
                "diagram I: degenerate K=H is the identity",
                degenerate.is_identity(),
                || "nat_i(J,H,H) is not the identity".into(),
            );
            let inner = nat_i(action, &j_sub, &k_sub, &l_sub, m)?;
            let lifted = ind_mor(action, &l_sub, &h_sub, &inner)?;
            let outer = nat_i(action, &j_sub, &l_sub, &h_sub, m)?;
            let glue_a = EqMorphism::new(
                action,
                lifted.target.clone(),
                outer.source.clone(),
                Mor::identity(action.fp(), lifted.target.obj()),
            )?;
            let path_a = outer.compose(&glue_a).compose(&lifted);

            let w = ind(action, &j_sub, &k_sub, m)?;
            let step1 = nat_i(action, &k_sub, &l_sub, &h_sub, &w)?;
            let step2 = nat_i(action, &j_sub, &k_sub, &h_sub, m)?;
            let glue_b = EqMorphism::new(
                action,
                step1.target.clone(),
                step2.source.clone(),
                Mor::identity(action.fp(), step1.target.obj()),
            )?;
            let path_b = step2.compose(&glue_b).compose(&step1);
            if expect_same(
                &mut report,
                "diagram I: sources agree".into(),
                &path_a.source,
                &path_b.source,
            ) {
                report.check(
                    "diagram I: both composites equal",
                    path_a.mor == path_b.mor,
                    || {
                        format!(
                            "composites differ: {:?} vs {:?}",
                            path_a.mor.blocks, path_b.mor.blocks
                        )
                    },
                );
            }
        }
        Diagram::C => {
            let [a, b, c] = ctx_elems::<3>(ctx)?;
            // Degeneracies: C_{a,1} = C_{1,a} = id.
            report.check(
                "diagram C: degenerate b=1 is the identity",
                nat_c(action, a, 0, m)?.is_identity(),
                || "nat_c(a,1) not identity".into(),
            );
            report.check(
                "diagram C: degenerate a=1 is the identity",
                nat_c(action, 0, a, m)?.is_identity(),
                || "nat_c(1,a) not identity".into(),
            );
            let group = action.group();
            let ab = group.mul(a, b);
            let bc = group.mul(b, c);
            let step1 = nat_c(action, ab, c, m)?;
            let step2 = nat_c(action, a, b, &conj(action, c, m)?)?;
            let path_a = step2.compose(&step1);
            let step1b = nat_c(action, a, bc, m)?;
            let step2b = conj_mor(action, a, &nat_c(action, b, c, m)?)?;
            let path_b = step2b.compose(&step1b);
            report.check(
                format!("diagram C at (a,b,c)=({a},{b},{c}): both composites equal"),
                path_a.mor == path_b.mor,
                || "composites differ".into(),
            );
        }
        Diagram::Rrc => {
            let [k_sub, l_sub, _h_sub] = ctx_subs::<3>(ctx)?;
            let a = *ctx
                .elems
                .first()
                .ok_or_else(|| Error::Internal("RRC needs one element".into()))?;
            let group = action.group();
            // conj∘res = res∘conj literally, once and through the middle subgroup.
            let direct = conj(action, a, &res(action, &k_sub, m)?)?;
            let ak = conjugate_subgroup(group, &k_sub, a);
            let other = res(action, &ak, &conj(action, a, m)?)?;
            expect_same(
                &mut report,
                "diagram RRC: conj∘res = res∘conj".into(),
                &direct,
                &other,
            );
            let via_l = conj(action, a, &res(action, &k_sub, &res(action, &l_sub, m)?)?)?;
            let al = conjugate_subgroup(group, &l_sub, a);
            let other_l = res(action, &ak, &res(action, &al, &conj(action, a, m)?)?)?;
            expect_same(
                &mut report,
                "diagram RRC: through the middle subgroup".into(),
                &via_l,
                &other_l,
            );
        }
        Diagram::Rcc => {
            let [l_sub, _h_sub] = ctx_subs::<2>(ctx)?;
            let [a, b] = ctx_elems::<2>(ctx)?;
            let group = action.group();
            let ab = group.mul(a, b);
            let restricted = res(action, &l_sub, m)?;
            let path_small = nat_c(action, a, b, &restricted)?;
            let big = nat_c(action, a, b, m)?;
            let abl = conjugate_subgroup(group, &l_sub, ab);
            let path_big = res_mor(action, &abl, &big)?;
            if expect_same(
                &mut report,
                "diagram RCC: sources agree (conj-res exchange strict)".into(),
                &path_small.source,
                &path_big.source,
            ) {
                report.check(
                    "diagram RCC: components agree under restriction",
                    path_small.mor == path_big.mor,
                    || "components differ".into(),
                );
            }
        }
        Diagram::Iic => {
            let [k_sub, l_sub, h_sub] = ctx_subs::<3>(ctx)?;
            let a = *ctx
                .elems
                .first()
                .ok_or_else(|| Error::Internal("IIC needs one element".into()))?;
            let group = action.group();
            let ak = conjugate_subgroup(group, &k_sub, a);
            let al = conjugate_subgroup(group, &l_sub, a);
            let ah = conjugate_subgroup(group, &h_sub, a);
            let conj_m = conj(action, a, m)?;

            let pa1 = conj_mor(action, a, &nat_i(action, &k_sub, &l_sub, &h_sub, m)?)?;
            let pa2 = nat_ci(action, a, &k_sub, &h_sub, m)?;
            let glue1 = EqMorphism::new(
                action,
                pa1.target.clone(),
                pa2.source.clone(),
                Mor::identity(action.fp(), pa1.target.obj()),
            )?;
            let pa3 = nat_i(action, &ak, &al, &ah, &conj_m)?
                .inverse()
                .ok_or_else(|| Error::Internal("nat_i witness must be invertible".into()))?;
            let glue2 = EqMorphism::new(
                action,
                pa2.target.clone(),
                pa3.source.clone(),
                Mor::identity(action.fp(), pa2.target.obj()),
            )?;
            let path_a = pa3
                .compose(&glue2)
                .compose(&pa2)
                .compose(&glue1)
                .compose(&pa1);

            let w = ind(action, &k_sub, &l_sub, m)?;
            let pb1 = nat_ci(action, a, &l_sub, &h_sub, &w)?;
            let pb2 = ind_mor(action, &al, &ah, &nat_ci(action, a, &k_sub, &l_sub, m)?)?;
            let glue3 = EqMorphism::new(
                action,
                pb1.target.clone(),
                pb2.source.clone(),
                Mor::identity(action.fp(), pb1.target.obj()),
            )?;
            let path_b = pb2.compose(&glue3).compose(&pb1);
            if expect_same(
                &mut report,
                "diagram IIC: sources agree".into(),
                &path_a.source,
                &path_b.source,
            ) && expect_same(
                &mut report,
                "diagram IIC: targets agree".into(),
                &path_a.target,
                &path_b.target,
            ) {
                report.check(
                    format!("diagram IIC at a={a}: both composites equal"),
                    path_a.mor == path_b.mor,
                    || "composites differ".into(),
                );
            }
        }
        Diagram::Icc => {
            let [l_sub, h_sub] = ctx_subs::<2>(ctx)?;
            let [a, b] = ctx_elems::<2>(ctx)?;
            let group = action.group();
            let ab = group.mul(a, b);
            let abl = conjugate_subgroup(group, &l_sub, ab);
            let abh = conjugate_subgroup(group, &h_sub, ab);
            let bl = conjugate_subgroup(group, &l_sub, b);
            let bh = conjugate_subgroup(group, &h_sub, b);

            let q1 = nat_ci(action, ab, &l_sub, &h_sub, m)?;
            let q2 = ind_mor(action, &abl, &abh, &nat_c(action, a, b, m)?)?;
            let glue1 = EqMorphism::new(
                action,
                q1.target.clone(),
                q2.source.clone(),
                Mor::identity(action.fp(), q1.target.obj()),
            )?;
            let path_a = q2.compose(&glue1).compose(&q1);

            let r1 = nat_c(action, a, b, &ind(action, &l_sub, &h_sub, m)?)?;
            let r2 = conj_mor(action, a, &nat_ci(action, b, &l_sub, &h_sub, m)?)?;
            let glue2 = EqMorphism::new(
                action,
                r1.target.clone(),
                r2.source.clone(),
                Mor::identity(action.fp(), r1.target.obj()),
            )?;
            let r3 = nat_ci(action, a, &bl, &bh, &conj(action, b, m)?)?;
            let glue3 = EqMorphism::new(
                action,
                r2.target.clone(),
                r3.source.clone(),
                Mor::identity(action.fp(), r2.target.obj()),
            )?;
            let path_b = r3.compose(&glue3).compose(&r2).compose(&glue2).compose(&r1);
            if expect_same(
                &mut report,
                "diagram ICC: sources agree".into(),
                &path_a.source,
                &path_b.source,
            ) && expect_same(
                &mut report,
                "diagram ICC: targets agree".into(),
                &path_a.target,
                &path_b.target,
            ) {
                report.check(
                    format!("diagram ICC at (a,b)=({a},{b}): both composites equal"),
                    path_a.mor == path_b.mor,
                    || "composites differ".into(),
                );
            }
        }
    }
    Ok(report)
}

fn ctx_subs<const N: usize>(ctx: &DiagramContext) -> Result<[Subgroup; N]> {
    let slice: Vec<Subgroup> = ctx.subs.iter().take(N).cloned().collect();
    slice
        .try_into()
        .map_err(|_| Error::Internal(format!("diagram context needs {N} subgroups")))
}

fn ctx_elems<const N: usize>(ctx: &DiagramContext) -> Result<[usize; N]> {
    let slice: Vec<usize> = ctx.elems.iter().take(N).copied().collect();
    slice
        .try_into()
        .map_err(|_| Error::Internal(format!("diagram context needs {N} elements")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Perm;
    use crate::equiv::{hom_basis, line_object};
    use crate::fp::Fp;
    use crate::group::Group;
    use crate::rng::Rng;
    use crate::sample;

    fn f5() -> Fp {
        Fp::new(5).unwrap()
    }

    fn c2_scalar_action(fp: Fp, c: u64) -> ActionData {
        let g = Group::cyclic(2);
        let sigma = vec![Perm::identity(1), Perm::identity(1)];
        let lambda = vec![vec![vec![1], vec![1]], vec![vec![1], vec![c]]];
        ActionData::new(fp, g, 1, sigma, lambda).unwrap()
    }

    fn c4_swap_action(seed: u64) -> ActionData {
        let fp = Fp::new(13).unwrap();
        let g = Group::cyclic(4);
        let swap = Perm::new(vec![1, 0]).unwrap();
        let sigma = vec![Perm::identity(2), swap.clone(), Perm::identity(2), swap];
        let base = sample::coboundary_lambda(fp, &g, 2, &sigma, &mut Rng::new(seed));
        let carry = sample::cyclic_carry_lambda(fp, &g, 2, 1, 2);
        let lambda = sample::multiply_lambdas(fp, &base, &carry);
        ActionData::new(fp, g, 2, sigma, lambda).unwrap()
    }

    fn trivial_unit(action: &ActionData, sub: &Subgroup) -> EqObject {
        let scalars: Vec<(usize, u64)> = sub.elems().iter().map(|&g| (g, 1)).collect();
        line_object(action, sub, 0, &scalars).unwrap()
    }

    #[test]
    fn res_is_strict_and_transitive() {
        let action = ActionData::trivial(f5(), Group::symmetric3(), 1).unwrap();
        let g = action.group().clone();
        let subs = g.subgroups(48).unwrap();
        let full = Subgroup::full(&g);
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();
        let m = trivial_unit(&action, &full);
        // K = H is the identity.
        assert!(res(&action, &full, &m).unwrap().same_data(&m));
        // Transitivity bit-exactly.
        let trivial = Subgroup::trivial();
        let direct = res(&action, &trivial, &m).unwrap();
        let via = res(&action, &trivial, &res(&action, c3, &m).unwrap()).unwrap();
        assert!(direct.same_data(&via));
    }

    #[test]
    fn res_of_diag_structure_forgets_mu() {
        let action = c2_scalar_action(f5(), 1);
        let full = Subgroup::full(action.group());
        let plus = line_object(&action, &full, 0, &[(0, 1), (1, 1)]).unwrap();
        let minus = line_object(&action, &full, 0, &[(0, 1), (1, 4)]).unwrap();
        let (sum, _, _) = direct_sum(&action, &[plus, minus]).unwrap();
        let r = res(&action, &Subgroup::trivial(), &sum).unwrap();
        assert_eq!(r.obj().0, vec![2]);
        assert_eq!(r.sub().order(), 1);
    }

    #[test]
    fn induction_of_line_object_squares_to_the_cocycle() {
        // C2 with lambda(g,g) = c: Ind of the 1-dim object has (mu^g)^2 = c·I.
        let c = 3;
        let action = c2_scalar_action(f5(), c);
        let v = trivial_unit(&action, &Subgroup::trivial());
        let full = Subgroup::full(action.group());
        let induced = ind(&action, &Subgroup::trivial(), &full, &v).unwrap();
        assert_eq!(induced.obj().0, vec![2]);
        let mu_g = &induced.mu_blocks(1)[0];
        assert_eq!(mu_g.at(0, 1), c);
        assert_eq!(mu_g.at(1, 0), 1);
        assert_eq!(mu_g.mul(mu_g), Matrix::scalar(f5(), 2, c));
    }

    #[test]
    fn induction_from_trivial_subgroup_to_s3_has_group_algebra_end() {
        let fp = Fp::new(7).unwrap();
        let action = ActionData::trivial(fp, Group::symmetric3(), 1).unwrap();
        let v = trivial_unit(&action, &Subgroup::trivial());
        let full = Subgroup::full(action.group());
        let induced = ind(&action, &Subgroup::trivial(), &full, &v).unwrap();
        assert_eq!(induced.total_dim(), 6);
        assert_eq!(hom_basis(&action, &induced, &induced).len(), 6);
    }

    #[test]
    fn induction_at_l_equals_h_is_the_identity() {
        let action = c4_swap_action(3);
        let full = Subgroup::full(action.group());
        let base = trivial_unit(&action, &Subgroup::trivial());
        let w = ind(&action, &Subgroup::trivial(), &full, &base).unwrap();
        let again = ind(&action, &full, &full, &w).unwrap();
        assert!(again.same_data(&w));
    }

    #[test]
    fn conjugation_examples() {
        let action = ActionData::trivial(f5(), Group::symmetric3(), 1).unwrap();
        let g = action.group().clone();
        let subs = g.subgroups(48).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let m = trivial_unit(&action, c2);
        // x = identity fixes the object.
        assert!(conj(&action, 0, &m).unwrap().same_data(&m));
        // x in H: isomorphic via the witness mu^x.
        let x = c2.elems()[1];
        let conjugated = conj(&action, x, &m).unwrap();
        let witness = EqMorphism::new(&action, conjugated.clone(), m.clone(), m.mu_mor(&action, x));
        assert!(witness.is_ok());
        assert!(witness.unwrap().is_invertible());
    }

    #[test]
    fn conjugation_by_outside_element_moves_the_subgroup() {
        let fp = Fp::new(7).unwrap();
        let action = ActionData::trivial(fp, Group::symmetric3(), 1).unwrap();
        let g = action.group().clone();
        let subs = g.subgroups(48).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let m = trivial_unit(&action, c2);
        let three_cycle = g.elements().find(|&e| g.element_order(e) == 3).unwrap();
        let moved = conj(&action, three_cycle, &m).unwrap();
        assert_ne!(moved.sub(), c2);
        assert_eq!(moved.sub().order(), 2);
    }

    #[test]
    fn reindex_examples() {
        let action = c4_swap_action(5);
        let g = action.group().clone();
        let full = Subgroup::full(&g);
        let trivial = Subgroup::trivial();
        let v = trivial_unit(&action, &trivial);
        let canonical = coset_reps(&g, &trivial, &full).unwrap();
        // Same representatives: identity.
        let id = reindex_induction(&action, &trivial, &full, &canonical, &canonical, &v).unwrap();
        assert!(id.is_identity());
        // A permuted list composes to the identity both ways.
        let mut other = canonical.clone();
        other.swap(1, 3);
        let fwd = reindex_induction(&action, &trivial, &full, &canonical, &other, &v).unwrap();
        let back = reindex_induction(&action, &trivial, &full, &other, &canonical, &v).unwrap();
        assert!(back.compose(&fwd).is_identity());
        assert!(fwd.is_invertible());
    }

    #[test]
    fn reindex_single_changed_rep() {
        // lambda(g,g) = 4 admits the line objects u = 2, 3.
        let action = c2_scalar_action(f5(), 4);
        let g = action.group().clone();
        let full = Subgroup::full(&g);
        let trivial = Subgroup::trivial();
        let v = trivial_unit(&action, &trivial);
        let reps1 = vec![0usize, 1usize];
        let reindexed = reindex_induction(&action, &trivial, &full, &reps1, &reps1, &v).unwrap();
        assert!(reindexed.is_identity());
        // For L = {1} there is no alternative representative inside a coset,
        // so exercise the formula with L = C2 <= C2 instead: reps [1] vs [0].
        let w = line_object(&action, &full, 0, &[(0, 1), (1, 2)]).unwrap();
        let r = reindex_induction(&action, &full, &full, &[1], &[0], &w).unwrap();
        // Component T^1(mu^g) ∘ (T2^{1,g})^{-1} is the structure scalar.
        assert_eq!(r.mor.blocks[0].at(0, 0), 2);
        assert!(r.is_invertible());
    }

    #[test]
    fn nat_c_examples() {
        let c = 3;
        let action = c2_scalar_action(f5(), c);
        let full = Subgroup::full(action.group());
        let w = ind(
            &action,
            &Subgroup::trivial(),
            &full,
            &trivial_unit(&action, &Subgroup::trivial()),
        )
        .unwrap();
        // Degenerate identities.
        assert!(nat_c(&action, 1, 0, &w).unwrap().is_identity());
        assert!(nat_c(&action, 0, 1, &w).unwrap().is_identity());
        // nat_c(g,g) has component (T2^{g,g})^{-1}, the scalar c^{-1}.
        let t = nat_c(&action, 1, 1, &w).unwrap();
        let cinv = f5().inv(c).unwrap();
        assert_eq!(t.mor.blocks[0], Matrix::scalar(f5(), 2, cinv));
        assert!(t.is_invertible());
    }

    #[test]
    fn nat_ci_examples() {
        // Trivial action: the witness is a permutation-like identity block.
        let fp = Fp::new(7).unwrap();
        let action = ActionData::trivial(fp, Group::symmetric3(), 1).unwrap();
        let g = action.group().clone();
        let subs = g.subgroups(48).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let full = Subgroup::full(&g);
        let v = trivial_unit(&action, c2);
        // x = 1 gives the identity.
        let id = nat_ci(&action, 0, c2, &full, &v).unwrap();
        assert!(id.is_identity());
        for x in g.elements() {
            let w = nat_ci(&action, x, c2, &full, &v).unwrap();
            assert!(w.is_invertible());
        }
        // Nontrivial cocycle on C4.
        let action = c4_swap_action(7);
        let g = action.group().clone();
        let full = Subgroup::full(&g);
        let c2 = Subgroup::new(&g, vec![0, 2]).unwrap();
        let v = ind(
            &action,
            &Subgroup::trivial(),
            &c2,
            &trivial_unit(&action, &Subgroup::trivial()),
        )
        .unwrap();
        for x in g.elements() {
            let w = nat_ci(&action, x, &c2, &full, &v).unwrap();
            assert!(w.is_invertible());
        }
    }

    #[test]
    fn nat_i_examples() {
        let action = c4_swap_action(11);
        let g = action.group().clone();
        let full = Subgroup::full(&g);
        let c2 = Subgroup::new(&g, vec![0, 2]).unwrap();
        let trivial = Subgroup::trivial();
        let m = trivial_unit(&action, &trivial);
        // Degenerate cases are identities.
        assert!(nat_i(&action, &trivial, &trivial, &full, &m)
            .unwrap()
            .is_identity());
        assert!(nat_i(&action, &trivial, &full, &full, &m)
            .unwrap()
            .is_identity());
        // Tower {1} <= C2 <= C4: invertible witness.
        let w = nat_i(&action, &trivial, &c2, &full, &m).unwrap();
        assert!(w.is_invertible());
    }

    #[test]
    fn diagram_i_closes_on_a_tower_of_length_three() {
        let action = c4_swap_action(13);
        let g = action.group().clone();
        let full = Subgroup::full(&g);
        let c2 = Subgroup::new(&g, vec![0, 2]).unwrap();
        let trivial = Subgroup::trivial();
        let m = trivial_unit(&action, &trivial);
        let ctx = DiagramContext {
            subs: vec![trivial.clone(), c2.clone(), full.clone(), full.clone()],
            elems: vec![],
        };
        let report = coherence_check(&action, Diagram::I, &ctx, &m).unwrap();
        assert!(report.all_passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn diagram_c_closes_for_c4_with_nontrivial_cocycle() {
        let action = c4_swap_action(17);
        let g = action.group().clone();
        let full = Subgroup::full(&g);
        let base = trivial_unit(&action, &Subgroup::trivial());
        let m = ind(&action, &Subgroup::trivial(), &full, &base).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    let ctx = DiagramContext {
                        subs: vec![full.clone()],
                        elems: vec![a, b, c],
                    };
                    let report = coherence_check(&action, Diagram::C, &ctx, &m).unwrap();
                    assert!(report.all_passed(), "{:?}", report.first_failure());
                }
            }
        }
    }

    #[test]
    fn diagram_iic_closes_for_the_c4_tower() {
        let action = c4_swap_action(19);
        let g = action.group().clone();
        let full = Subgroup::full(&g);
        let c2 = Subgroup::new(&g, vec![0, 2]).unwrap();
        let trivial = Subgroup::trivial();
        let m = trivial_unit(&action, &trivial);
        for a in g.elements() {
            let ctx = DiagramContext {
                subs: vec![trivial.clone(), c2.clone(), full.clone()],
                elems: vec![a],
            };
            let report = coherence_check(&action, Diagram::Iic, &ctx, &m).unwrap();
            assert!(report.all_passed(), "{:?}", report.first_failure());
        }
    }

    #[test]
    fn mackey_examples() {
        // K = L = H: a single double coset, witness invertible.
        let action = c2_scalar_action(f5(), 4);
        let full = Subgroup::full(action.group());
        let v = line_object(&action, &full, 0, &[(0, 1), (1, 2)]).unwrap();
        let outcome = mackey_iso(&action, &full, &full, &full, &v).unwrap();
        assert!(outcome.report.all_passed());
        assert_eq!(outcome.summands.len(), 1);

        // S3, K = L = C2, V the unit: blocks of dimensions 1 and 2.
        let fp = Fp::new(7).unwrap();
        let action = ActionData::trivial(fp, Group::symmetric3(), 1).unwrap();
        let g = action.group().clone();
        let subs = g.subgroups(48).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let full = Subgroup::full(&g);
        let v = trivial_unit(&action, c2);
        let outcome = mackey_iso(&action, c2, c2, &full, &v).unwrap();
        assert!(
            outcome.report.all_passed(),
            "{:?}",
            outcome.report.first_failure()
        );
        assert_eq!(outcome.summands.len(), 2);
        let mut dims: Vec<usize> = outcome
            .summands
            .iter()
            .map(|s| s.block.total_dim())
            .collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2]);

        // C2 with nonsquare cocycle, K = L = {1}.
        let action = c2_scalar_action(f5(), 2);
        let full = Subgroup::full(action.group());
        let trivial = Subgroup::trivial();
        let v = trivial_unit(&action, &trivial);
        let outcome = mackey_iso(&action, &trivial, &trivial, &full, &v).unwrap();
        assert!(outcome.report.all_passed());
        let total: usize = outcome.summands.iter().map(|s| s.induced.total_dim()).sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn induction_dimension_and_functoriality() {
        let action = c4_swap_action(29);
        let g = action.group().clone();
        let full = Subgroup::full(&g);
        let c2 = Subgroup::new(&g, vec![0, 2]).unwrap();
        let trivial = Subgroup::trivial();
        let v = trivial_unit(&action, &trivial);
        // |Ind_L^H(V)| = [H:L] · |V|.
        let w = ind(&action, &trivial, &c2, &v).unwrap();
        assert_eq!(w.total_dim(), 2 * v.total_dim());
        let u = ind(&action, &c2, &full, &w).unwrap();
        assert_eq!(u.total_dim(), 2 * w.total_dim());
        // Induction commutes with composition and identities on morphisms.
        let id = EqMorphism::identity(&action, &w);
        assert!(ind_mor(&action, &c2, &full, &id).unwrap().is_identity());
        let basis = hom_basis(&action, &w, &w);
        if basis.len() >= 2 {
            let f = &basis[0];
            let h = &basis[1];
            let lhs = ind_mor(&action, &c2, &full, &h.compose(f)).unwrap();
            let rhs = ind_mor(&action, &c2, &full, h)
                .unwrap()
                .compose(&ind_mor(&action, &c2, &full, f).unwrap());
            assert_eq!(lhs.mor, rhs.mor);
        }
        // Conjugation is functorial as well.
        for x in g.elements() {
            let cid = conj_mor(&action, x, &id).unwrap();
            assert!(cid.is_identity());
        }
    }

    #[test]
    fn nat_trans_instance_enforces_invertibility() {
        let action = c2_scalar_action(f5(), 1);
        let full = Subgroup::full(action.group());
        let trivial = Subgroup::trivial();
        let v = trivial_unit(&action, &trivial);
        let unit = adjunction_unit(&action, &trivial, &full, &v).unwrap();
        // Units are accepted without invertibility.
        assert!(NatTransInstance::new(NatKind::Unit, "unit at V", unit.clone()).is_ok());
        // A non-invertible component is rejected for an isomorphism kind.
        assert!(NatTransInstance::new(NatKind::Reindex, "bogus", unit).is_err());
        let reps = coset_reps(action.group(), &trivial, &full).unwrap();
        let re = reindex_induction(&action, &trivial, &full, &reps, &reps, &v).unwrap();
        let inst = NatTransInstance::new(NatKind::Reindex, "identity reindex", re).unwrap();
        assert!(inst.component.is_identity());
    }

    #[test]
    fn adjunction_examples() {
        // L = H: both triangles trivially hold.
        let action = c2_scalar_action(f5(), 4);
        let full = Subgroup::full(action.group());
        let v = line_object(&action, &full, 0, &[(0, 1), (1, 2)]).unwrap();
        let report = adjunction_check(
            &action,
            &full,
            &full,
            std::slice::from_ref(&v),
            &[v.clone()],
        )
        .unwrap();
        assert!(report.all_passed(), "{:?}", report.first_failure());

        // Trivial action, L = {1}, H = C2: dim Hom(Ind 1, M) = dim of M.
        let action = c2_scalar_action(f5(), 1);
        let full = Subgroup::full(action.group());
        let trivial = Subgroup::trivial();
        let one = trivial_unit(&action, &trivial);
        let plus = line_object(&action, &full, 0, &[(0, 1), (1, 1)]).unwrap();
        let minus = line_object(&action, &full, 0, &[(0, 1), (1, 4)]).unwrap();
        for m in [&plus, &minus] {
            let lhs = hom_dim(&action, &ind(&action, &trivial, &full, &one).unwrap(), m);
            assert_eq!(lhs, m.total_dim());
        }
        let report = adjunction_check(&action, &trivial, &full, &[one], &[plus, minus]).unwrap();
        assert!(report.all_passed(), "{:?}", report.first_failure());

        // Nontrivial cocycle case.
        let action = c4_swap_action(23);
        let g = action.group().clone();
        let full = Subgroup::full(&g);
        let c2 = Subgroup::new(&g, vec![0, 2]).unwrap();
        let base = trivial_unit(&action, &Subgroup::trivial());
        let v = ind(&action, &Subgroup::trivial(), &c2, &base).unwrap();
        let m = ind(&action, &c2, &full, &v).unwrap();
        let report = adjunction_check(&action, &c2, &full, &[v], &[m]).unwrap();
        assert!(report.all_passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn strict_diagrams_pass() {
        let fp = Fp::new(7).unwrap();
        let action = ActionData::trivial(fp, Group::symmetric3(), 1).unwrap();
        let g = action.group().clone();
        let subs = g.subgroups(48).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let full = Subgroup::full(&g);
        let m = ind(
            &action,
            &Subgroup::trivial(),
            &full,
            &trivial_unit(&action, &Subgroup::trivial()),
        )
        .unwrap();
        for a in g.elements() {
            let ctx = DiagramContext {
                subs: vec![Subgroup::trivial(), c2.clone(), full.clone()],
                elems: vec![a],
            };
            let report = coherence_check(&action, Diagram::Rrc, &ctx, &m).unwrap();
            assert!(report.all_passed());
            for b in g.elements() {
                let ctx = DiagramContext {
                    subs: vec![c2.clone(), full.clone()],
                    elems: vec![a, b],
                };
                let report = coherence_check(&action, Diagram::Rcc, &ctx, &m).unwrap();
                assert!(report.all_passed(), "{:?}", report.first_failure());
                let report =
                    coherence_check(&action, Diagram::Icc, &ctx, &res(&action, c2, &m).unwrap())
                        .unwrap();
                assert!(report.all_passed(), "{:?}", report.first_failure());
            }
        }
        let ctx = DiagramContext {
            subs: vec![Subgroup::trivial(), c2.clone(), full.clone()],
            elems: vec![],
        };
        let report = coherence_check(&action, Diagram::R, &ctx, &m).unwrap();
        assert!(report.all_passed());
    }
}
