//! Decategorification to Grothendieck groups: decomposition of equivariant
//! objects over the simple bases, restriction/induction/conjugation tables
//! with integer entries, fusion constants in the monoidal case, and exact
//! verification of the classical Mackey and Green functor axioms.

use crate::action::ActionData;
use crate::equiv::{direct_sum, hom_dim, is_iso, EqObject};
use crate::error::{Error, Result};
use crate::functors::{conj, ind, mackey_iso, res};
use crate::group::{conjugate_subgroup, double_cosets, Group, Subgroup};
use crate::pointed::PointedData;
use crate::report::CheckReport;
use crate::rng::Rng;
use crate::split::SimplesCache;
use std::collections::BTreeMap;

/// Small exact integer matrices for the decategorified maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_columns(cols: &[Vec<i64>]) -> IntMat {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = IntMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }

    pub fn is_permutation(&self) -> bool {
        self.rows == self.cols
            && self.entries.iter().all(|&e| e == 0 || e == 1)
            && (0..self.rows).all(|i| (0..self.cols).map(|j| self.at(i, j)).sum::<i64>() == 1)
            && (0..self.cols).all(|j| (0..self.rows).map(|i| self.at(i, j)).sum::<i64>() == 1)
    }
}

/// Per-subgroup basis data of the Grothendieck group.
#[derive(Clone, Debug)]
pub struct SubgroupBasis {
    pub sub: Subgroup,
    pub dims: Vec<usize>,
    pub end_degrees: Vec<usize>,
}

/// Grothendieck-level tables over a conjugation-closed subgroup scope.
#[derive(Debug)]
pub struct K0Table {
    pub bases: Vec<SubgroupBasis>,
    /// R^H_K : K0(C^H) -> K0(C^K), keyed by (h_idx, k_idx) with K <= H.
    pub res: BTreeMap<(usize, usize), IntMat>,
    /// I^H_K : K0(C^K) -> K0(C^H), keyed by (h_idx, k_idx) with K <= H.
    pub ind: BTreeMap<(usize, usize), IntMat>,
    /// c_{H,x} : K0(C^H) -> K0(C^{xH}), keyed by (h_idx, x) with the target index.
    pub conj: BTreeMap<(usize, usize), (usize, IntMat)>,
    /// `fusion[h_idx][i][j]` = class of S_i ⊗ S_j (monoidal backend only).
    pub fusion: Option<Vec<Vec<Vec<Vec<i64>>>>>,
    /// `unit[h_idx]` = class of the unit object.
    pub unit: Option<Vec<Vec<i64>>>,
}

impl K0Table {
    pub fn subgroup_index(&self, sub: &Subgroup) -> Option<usize> {
        self.bases.iter().position(|b| b.sub == *sub)
    }

    pub fn rank(&self, h_idx: usize) -> usize {
        self.bases[h_idx].dims.len()
    }
}

/// Builds decomposition vectors and tables on top of a shared simples cache.
pub struct K0Builder<'a> {
    pub action: &'a ActionData,
    pub pointed: Option<&'a PointedData>,
    pub cache: SimplesCache,
    rng: Rng,
    trials: usize,
}

impl<'a> K0Builder<'a> {
    pub fn new(
        action: &'a ActionData,
        pointed: Option<&'a PointedData>,
        seed: u64,
        retries: usize,
        trials: usize,
    ) -> K0Builder<'a> {
        K0Builder {
            action,
            pointed,
            cache: SimplesCache::new(seed, retries, trials),
            rng: Rng::new(seed).derive(0x4b30),
            trials,
        }
    }

    pub fn simples(&mut self, h: &Subgroup) -> Result<Vec<EqObject>> {
        Ok(self.cache.get(self.action, h)?.clone())
    }

    /// The class of M in the simple basis of C^H, with a certified direct-sum
    /// witness. Multiplicities are Hom dimensions divided by endomorphism
    /// degrees; a non-integer quotient signals a splitting bug.
    pub fn decompose(&mut self, h: &Subgroup, m: &EqObject) -> Result<Vec<i64>> {
        let simples = self.simples(h)?;
        let mut class = Vec::with_capacity(simples.len());
        let mut pieces: Vec<EqObject> = Vec::new();
        for s in &simples {
            let deg = hom_dim(self.action, s, s);
            let pairing = hom_dim(self.action, s, m);
            if pairing % deg != 0 {
                return Err(Error::Internal(format!(
                    "decompose: hom dimension {pairing} not divisible by degree {deg}"
                )));
            }
            let mult = pairing / deg;
            class.push(mult as i64);
            for _ in 0..mult {
                pieces.push(s.clone());
            }
        }
        // Certificate: the direct sum of the pieces is isomorphic to M.
        if pieces.is_empty() {
            if m.total_dim() != 0 {
                return Err(Error::Internal("nonzero object decomposes to zero".into()));
            }
        } else {
            let (sum, _, _) = direct_sum(self.action, &pieces)?;
            if !is_iso(self.action, &sum, m, self.trials, &mut self.rng)?.is_iso() {
                return Err(Error::Internal("decomposition certificate failed".into()));
            }
        }
        Ok(class)
    }

    /// Build all tables over the given scope (usually every subgroup).
    pub fn build_table(&mut self, scope: &[Subgroup]) -> Result<K0Table> {
        let group = self.action.group().clone();
        let mut bases = Vec::with_capacity(scope.len());
        for h in scope {
            let simples = self.simples(h)?;
            let dims = simples.iter().map(EqObject::total_dim).collect();
            let end_degrees = simples.iter().map(|s| hom_dim(self.action, s, s)).collect();
            bases.push(SubgroupBasis {
                sub: h.clone(),
                dims,
                end_degrees,
            });
        }
        let mut res_maps = BTreeMap::new();
        let mut ind_maps = BTreeMap::new();
        let mut conj_maps = BTreeMap::new();
        for (h_idx, h) in scope.iter().enumerate() {
            let h_simples = self.simples(h)?;
            for (k_idx, k) in scope.iter().enumerate() {
                if !k.is_subgroup_of(h) {
                    continue;
                }
                let k_simples = self.simples(k)?;
                let mut res_cols = Vec::with_capacity(h_simples.len());
                for s in &h_simples {
                    res_cols.push(self.decompose(k, &res(self.action, k, s)?)?);
                }
                res_maps.insert(
                    (h_idx, k_idx),
                    if res_cols.is_empty() {
                        IntMat::zero(k_simples.len(), 0)
                    } else {
                        IntMat::from_columns(&res_cols)
                    },
                );
                let mut ind_cols = Vec::with_capacity(k_simples.len());
                for s in &k_simples {
                    ind_cols.push(self.decompose(h, &ind(self.action, k, h, s)?)?);
                }
                ind_maps.insert(
                    (h_idx, k_idx),
                    if ind_cols.is_empty() {
                        IntMat::zero(h_simples.len(), 0)
                    } else {
                        IntMat::from_columns(&ind_cols)
                    },
                );
            }
            for x in group.elements() {
                let target = conjugate_subgroup(&group, h, x);
                let Some(t_idx) = scope.iter().position(|s| *s == target) else {
                    return Err(Error::Containment(
                        "table scope must be closed under conjugation".into(),
                    ));
                };
                let mut cols = Vec::with_capacity(h_simples.len());
                for s in &h_simples {
                    cols.push(self.decompose(&target, &conj(self.action, x, s)?)?);
                }
                let mat = if cols.is_empty() {
                    IntMat::zero(self.simples(&target)?.len(), 0)
                } else {
                    IntMat::from_columns(&cols)
                };
                conj_maps.insert((h_idx, x), (t_idx, mat));
            }
        }
        let (fusion, unit) = if let Some(pointed) = self.pointed {
            let mut fusion_all = Vec::with_capacity(scope.len());
            let mut unit_all = Vec::with_capacity(scope.len());
            for h in scope {
                let simples = self.simples(h)?;
                let mut table = Vec::with_capacity(simples.len());
                for a in &simples {
                    let mut row = Vec::with_capacity(simples.len());
                    for b in &simples {
                        let prod = pointed.tensor_eq(a, b)?;
                        row.push(self.decompose(h, &prod)?);
                    }
                    table.push(row);
                }
                fusion_all.push(table);
                unit_all.push(self.decompose(h, &pointed.unit_eq(h)?)?);
            }
            (Some(fusion_all), Some(unit_all))
        } else {
            (None, None)
        };
        Ok(K0Table {
            bases,
            res: res_maps,
            ind: ind_maps,
            conj: conj_maps,
            fusion,
            unit,
        })
    }
}

/// Exact integer verification of the Mackey functor axioms (identity maps,
/// transitivity of restriction and induction, composition of conjugations,
/// and the double-coset decomposition of Res∘Ind), plus the permutation
/// property of conjugation matrices.
pub fn verify_mackey_axioms(group: &Group, table: &K0Table) -> CheckReport {
    let mut report = CheckReport::new();
    let scope: Vec<&Subgroup> = table.bases.iter().map(|b| &b.sub).collect();
    for (h_idx, h) in scope.iter().enumerate() {
        let n = table.rank(h_idx);
        let id = IntMat::identity(n);
        report.check(
            format!("(M0) identities at subgroup #{h_idx}"),
            table.res[&(h_idx, h_idx)] == id
                && table.ind[&(h_idx, h_idx)] == id
                && h.elems().iter().all(|&x| table.conj[&(h_idx, x)].1 == id),
            || "an identity-scope map is not the identity matrix".into(),
        );
    }
    // (M1)/(M2): transitivity along every tower J <= K <= H.
    for (h_idx, h) in scope.iter().enumerate() {
        for (k_idx, k) in scope.iter().enumerate() {
            if !k.is_subgroup_of(h) {
                continue;
            }
            for (j_idx, j) in scope.iter().enumerate() {
                if !j.is_subgroup_of(k) {
                    continue;
                }
                let lhs = table.res[&(k_idx, j_idx)].mul(&table.res[&(h_idx, k_idx)]);
                report.check(
                    format!("(M1) restriction transitivity {j_idx} <= {k_idx} <= {h_idx}"),
                    lhs == table.res[&(h_idx, j_idx)],
                    || "R∘R != R".into(),
                );
                let lhs = table.ind[&(h_idx, k_idx)].mul(&table.ind[&(k_idx, j_idx)]);
                report.check(
                    format!("(M2) induction transitivity {j_idx} <= {k_idx} <= {h_idx}"),
                    lhs == table.ind[&(h_idx, j_idx)],
                    || "I∘I != I".into(),
                );
            }
        }
    }
    // (M3): conjugation composes along c_{H,ab} = c_{bH,a} ∘ c_{H,b}.
    for (h_idx, _) in scope.iter().enumerate() {
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                let (bh_idx, ref cb) = table.conj[&(h_idx, b)];
                let (abh_idx, ref ca) = table.conj[&(bh_idx, a)];
                let (abh_idx2, ref cab) = table.conj[&(h_idx, ab)];
                report.check(
                    format!("(M3) conjugation composition at (#{h_idx},{a},{b})"),
                    abh_idx == abh_idx2 && ca.mul(cb) == *cab,
                    || "c∘c != c at the product".into(),
                );
            }
        }
    }
    // Conjugation matrices are permutation matrices.
    for (&(h_idx, x), (_, mat)) in &table.conj {
        report.check(
            format!("conjugation matrix is a permutation at (#{h_idx},{x})"),
            mat.is_permutation(),
            || "conjugation matrix is not a permutation".into(),
        );
    }
    // (M4): the Mackey relation over double cosets, for all K, L <= H.
    for (h_idx, h) in scope.iter().enumerate() {
        for (k_idx, k) in scope.iter().enumerate() {
            if !k.is_subgroup_of(h) {
                continue;
            }
            for (l_idx, l) in scope.iter().enumerate() {
                if !l.is_subgroup_of(h) {
                    continue;
                }
                let lhs = table.res[&(h_idx, k_idx)].mul(&table.ind[&(h_idx, l_idx)]);
                let dc = match double_cosets(group, k, h, l) {
                    Ok(dc) => dc,
                    Err(e) => {
                        report.fail("(M4) double cosets", e.to_string());
                        continue;
                    }
                };
                let mut rhs = IntMat::zero(lhs.rows, lhs.cols);
                let mut ok = true;
                for x in dc.reps() {
                    let xl = conjugate_subgroup(group, l, x);
                    let kxl = k.intersection(&xl);
                    let (Some(xl_idx), Some(kxl_idx)) = (
                        scope.iter().position(|s| **s == xl),
                        scope.iter().position(|s| **s == kxl),
                    ) else {
                        report.fail("(M4) scope closure", "missing conjugate or intersection");
                        ok = false;
                        break;
                    };
                    let (cx_target, ref cx) = table.conj[&(l_idx, x)];
                    if cx_target != xl_idx {
                        report.fail("(M4) conjugation target", "conjugate index mismatch");
                        ok = false;
                        break;
                    }
                    let term = table.ind[&(k_idx, kxl_idx)]
                        .mul(&table.res[&(xl_idx, kxl_idx)])
                        .mul(cx);
                    rhs = rhs.add(&term);
                }
                if ok {
                    report.check(
                        format!("(M4) Mackey relation at (H=#{h_idx}, K=#{k_idx}, L=#{l_idx})"),
                        lhs == rhs,
                        || format!("RI != sum over double cosets: {lhs:?} vs {rhs:?}"),
                    );
                }
            }
        }
    }
    report
}

fn fusion_mult(fusion: &[Vec<Vec<i64>>], u: &[i64], v: &[i64]) -> Vec<i64> {
    let rank = u.len();
    let mut out = vec![0i64; fusion[0][0].len()];
    for i in 0..rank {
        if u[i] == 0 {
            continue;
        }
        for j in 0..rank {
            if v[j] == 0 {
                continue;
            }
            for (k, &c) in fusion[i][j].iter().enumerate() {
                out[k] += u[i] * v[j] * c;
            }
        }
    }
    out
}

fn unit_vec(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    v[i] = 1;
    v
}

/// Green functor axioms at the Grothendieck level: restriction and
/// conjugation are unit-preserving ring maps, and both projection formulas
/// hold as bilinear integer identities over the simple bases.
pub fn verify_green_axioms(group: &Group, table: &K0Table) -> CheckReport {
    let mut report = CheckReport::new();
    let (Some(fusion), Some(unit)) = (&table.fusion, &table.unit) else {
        report.fail(
            "green axioms",
            "fusion data missing (not a monoidal backend)",
        );
        return report;
    };
    let scope: Vec<&Subgroup> = table.bases.iter().map(|b| &b.sub).collect();
    for (h_idx, h) in scope.iter().enumerate() {
        let rank_h = table.rank(h_idx);
        // (G1) restriction: unital ring map.
        for (k_idx, k) in scope.iter().enumerate() {
            if !k.is_subgroup_of(h) {
                continue;
            }
            let r = &table.res[&(h_idx, k_idx)];
            report.check(
                format!("(G1) restriction preserves the unit ({h_idx}->{k_idx})"),
                r.apply(&unit[h_idx]) == unit[k_idx],
                || "res(1) != 1".into(),
            );
            let mut ok = true;
            'outer: for i in 0..rank_h {
                for j in 0..rank_h {
                    let lhs = r.apply(&fusion[h_idx][i][j]);
                    let rhs = fusion_mult(
                        &fusion[k_idx],
                        &r.apply(&unit_vec(rank_h, i)),
                        &r.apply(&unit_vec(rank_h, j)),
                    );
                    if lhs != rhs {
                        report.fail(
                            format!("(G1) restriction multiplicative ({h_idx}->{k_idx})"),
                            format!("at basis pair ({i},{j}): {lhs:?} != {rhs:?}"),
                        );
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                report.pass(format!(
                    "(G1) restriction multiplicative ({h_idx}->{k_idx})"
                ));
            }
        }
        // (G1) conjugation: unital ring map.
        for x in group.elements() {
            let (t_idx, ref c) = table.conj[&(h_idx, x)];
            report.check(
                format!("(G1) conjugation preserves the unit (#{h_idx},{x})"),
                c.apply(&unit[h_idx]) == unit[t_idx],
                || "conj(1) != 1".into(),
            );
            let mut ok = true;
            'outer2: for i in 0..rank_h {
                for j in 0..rank_h {
                    let lhs = c.apply(&fusion[h_idx][i][j]);
                    let rhs = fusion_mult(
                        &fusion[t_idx],
                        &c.apply(&unit_vec(rank_h, i)),
                        &c.apply(&unit_vec(rank_h, j)),
                    );
                    if lhs != rhs {
                        report.fail(
                            format!("(G1) conjugation multiplicative (#{h_idx},{x})"),
                            format!("at basis pair ({i},{j})"),
                        );
                        ok = false;
                        break 'outer2;
                    }
                }
            }
            if ok {
                report.pass(format!("(G1) conjugation multiplicative (#{h_idx},{x})"));
            }
        }
        // (G2)/(G3): projection formulas.
        for (k_idx, k) in scope.iter().enumerate() {
            if !k.is_subgroup_of(h) {
                continue;
            }
            let rank_k = table.rank(k_idx);
            let r = &table.res[&(h_idx, k_idx)];
            let ind_m = &table.ind[&(h_idx, k_idx)];
            let mut ok2 = true;
            let mut ok3 = true;
            for i in 0..rank_k {
                let a = unit_vec(rank_k, i);
                for j in 0..rank_h {
                    let b = unit_vec(rank_h, j);
                    let rb = r.apply(&b);
                    let lhs2 = ind_m.apply(&fusion_mult(&fusion[k_idx], &a, &rb));
                    let rhs2 = fusion_mult(&fusion[h_idx], &ind_m.apply(&a), &b);
                    if lhs2 != rhs2 && ok2 {
                        report.fail(
                            format!("(G2) projection formula ({h_idx},{k_idx})"),
                            format!("at (a,b)=({i},{j}): {lhs2:?} != {rhs2:?}"),
                        );
                        ok2 = false;
                    }
                    let lhs3 = ind_m.apply(&fusion_mult(&fusion[k_idx], &rb, &a));
                    let rhs3 = fusion_mult(&fusion[h_idx], &b, &ind_m.apply(&a));
                    if lhs3 != rhs3 && ok3 {
                        report.fail(
                            format!("(G3) projection formula ({h_idx},{k_idx})"),
                            format!("at (a,b)=({i},{j}): {lhs3:?} != {rhs3:?}"),
                        );
                        ok3 = false;
                    }
                }
            }
            if ok2 {
                report.pass(format!("(G2) projection formula ({h_idx},{k_idx})"));
            }
            if ok3 {
                report.pass(format!("(G3) projection formula ({h_idx},{k_idx})"));
            }
        }
    }
    report
}

/// Frobenius pairing shadow: <I(a), b>_H = <a, R(b)>_K where
/// <x, y> = sum_S deg_S x_S y_S, for all simple basis pairs.
pub fn verify_frobenius_pairing(table: &K0Table) -> CheckReport {
    let mut report = CheckReport::new();
    for (&(h_idx, k_idx), ind_m) in &table.ind {
        let r = &table.res[&(h_idx, k_idx)];
        let deg_h = &table.bases[h_idx].end_degrees;
        let deg_k = &table.bases[k_idx].end_degrees;
        let rank_h = deg_h.len();
        let rank_k = deg_k.len();
        let mut ok = true;
        for i in 0..rank_k {
            for j in 0..rank_h {
                let lhs: i64 = (0..rank_h)
                    .map(|s| deg_h[s] as i64 * ind_m.at(s, i) * i64::from(s == j))
                    .sum();
                let rhs: i64 = (0..rank_k)
                    .map(|s| deg_k[s] as i64 * i64::from(s == i) * r.at(s, j))
                    .sum();
                if lhs != rhs && ok {
                    report.fail(
                        format!("Frobenius pairing ({h_idx},{k_idx})"),
                        format!("at ({i},{j}): {lhs} != {rhs}"),
                    );
                    ok = false;
                }
            }
        }
        if ok {
            report.pass(format!("Frobenius pairing ({h_idx},{k_idx})"));
        }
    }
    report
}

/// Cross-check of (M4): the table-level double-coset sum must agree with the
/// decomposition of the directly constructed Mackey witness targets.
pub fn mackey_table_cross_check(
    builder: &mut K0Builder,
    k: &Subgroup,
    l: &Subgroup,
    h: &Subgroup,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let simples_l = builder.simples(l)?;
    for (vi, v) in simples_l.iter().enumerate() {
        let outcome = mackey_iso(builder.action, k, l, h, v)?;
        report.merge(outcome.report);
        let direct =
            builder.decompose(k, &res(builder.action, k, &ind(builder.action, l, h, v)?)?)?;
        let mut summed = vec![0i64; direct.len()];
        for s in &outcome.summands {
            for (idx, c) in builder.decompose(k, &s.induced)?.into_iter().enumerate() {
                summed[idx] += c;
            }
        }
        report.check(
            format!("Mackey class cross-check at simple {vi}"),
            direct == summed,
            || format!("decomposition paths disagree: {direct:?} vs {summed:?}"),
        );
    }
    Ok(report)
}
