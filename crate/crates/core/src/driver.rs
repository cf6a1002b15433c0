//! Check batteries: enumerate the subgroup tuples, group elements and simple
//! objects a verification run quantifies over, execute the corresponding
//! checks, and collect deterministically named report items. The CLI and the
//! acceptance suite both run through this module, so their reports agree
//! byte-for-byte for a fixed (input, seed).

use crate::action::ActionData;
use crate::equiv::EqObject;
use crate::error::Result;
use crate::functors::{
    adjunction_check, coherence_check, mackey_iso, Diagram, DiagramContext, NatKind,
    NatTransInstance,
};
use crate::green::{
    mackey_table_cross_check, verify_frobenius_pairing, verify_green_axioms, verify_mackey_axioms,
    K0Builder, K0Table,
};
use crate::group::Subgroup;
use crate::pointed::PointedData;
use crate::report::CheckReport;
use crate::split::SimplesCache;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scope {
    /// Every subgroup tuple and every group-element tuple.
    All,
    /// Subgroup-conjugacy-class representatives; elements from a generating
    /// set plus the identity; at most two simples per subgroup.
    Sampled,
}

pub struct Driver<'a> {
    pub action: &'a ActionData,
    pub pointed: Option<&'a PointedData>,
    pub scope: Scope,
    seed: u64,
    retries: usize,
    trials: usize,
    subgroups: Vec<Subgroup>,
    scoped_subgroup_idx: Vec<usize>,
    scoped_elems: Vec<usize>,
}

fn sub_name(s: &Subgroup) -> String {
    let elems: Vec<String> = s.elems().iter().map(usize::to_string).collect();
    format!("{{{}}}", elems.join(","))
}

impl<'a> Driver<'a> {
    pub fn new(
        action: &'a ActionData,
        pointed: Option<&'a PointedData>,
        seed: u64,
        scope: Scope,
        subgroup_bound: usize,
        retries: usize,
        trials: usize,
    ) -> Result<Driver<'a>> {
        let group = action.group();
        let subgroups = group.subgroups(subgroup_bound)?;
        let scoped_subgroup_idx = match scope {
            Scope::All => (0..subgroups.len()).collect(),
            Scope::Sampled => group
                .subgroup_conjugacy_classes(&subgroups)
                .into_iter()
                .map(|class| class[0])
                .collect(),
        };
        let scoped_elems = match scope {
            Scope::All => group.elements().collect(),
            Scope::Sampled => {
                let mut e = vec![0];
                e.extend(group.generators());
                e
            }
        };
        Ok(Driver {
            action,
            pointed,
            scope,
            seed,
            retries,
            trials,
            subgroups,
            scoped_subgroup_idx,
            scoped_elems,
        })
    }

    pub fn fresh_cache(&self) -> SimplesCache {
        SimplesCache::new(self.seed, self.retries, self.trials)
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// Indices (into `subgroups`) of the outer subgroups the batteries
    /// iterate over; a parallel caller can partition these and merge the
    /// reports in index order.
    pub fn scoped_subgroup_indices(&self) -> &[usize] {
        &self.scoped_subgroup_idx
    }

    /// Restrict the outer subgroup loop to the given indices (order kept).
    pub fn with_subgroup_filter(mut self, keep: &[usize]) -> Self {
        self.scoped_subgroup_idx.retain(|i| keep.contains(i));
        self
    }

    fn scoped_subgroups(&self) -> Vec<&Subgroup> {
        self.scoped_subgroup_idx
            .iter()
            .map(|&i| &self.subgroups[i])
            .collect()
    }

    fn simples_for(&self, cache: &mut SimplesCache, sub: &Subgroup) -> Result<Vec<EqObject>> {
        let all = cache.get(self.action, sub)?.clone();
        Ok(match self.scope {
            Scope::All => all,
            Scope::Sampled => all.into_iter().take(2).collect(),
        })
    }

    /// Input validation: the action invariants, and the pointed invariants
    /// when a monoidal backend is present.
    pub fn validate_battery(&self) -> CheckReport {
        let mut report = self.action.validate();
        if let Some(p) = self.pointed {
            report.merge(p.validate());
        }
        report
    }

    /// The Mackey decomposition for every scoped (H; K, L <= H) and every
    /// simple object of C^L.
    pub fn mackey_battery(&self, cache: &mut SimplesCache) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        for h in self.scoped_subgroups() {
            for k in self.subgroups.iter().filter(|s| s.is_subgroup_of(h)) {
                for l in self.subgroups.iter().filter(|s| s.is_subgroup_of(h)) {
                    let simples = self.simples_for(cache, l)?;
                    for (vi, v) in simples.iter().enumerate() {
                        let outcome = mackey_iso(self.action, k, l, h, v)?;
                        let prefix = format!(
                            "mackey[H={},K={},L={},V={vi}] ",
                            sub_name(h),
                            sub_name(k),
                            sub_name(l)
                        );
                        for mut item in outcome.report.items {
                            item.name = format!("{prefix}{}", item.name);
                            report.items.push(item);
                        }
                        for summand in outcome.summands {
                            let tagged = NatTransInstance::new(
                                NatKind::MackeyBlock,
                                format!("{prefix}x={}", summand.rep),
                                summand.witness,
                            );
                            report.check(
                                format!("{prefix}block witness at x={} well-formed", summand.rep),
                                tagged.is_ok(),
                                || "block witness failed the invertibility contract".into(),
                            );
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// All seven coherence diagrams over the scoped towers, elements and
    /// simples, including the degenerate identities.
    pub fn coherence_battery(&self, cache: &mut SimplesCache) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        let subs = self.scoped_subgroups();
        let elems = &self.scoped_elems;
        // Towers for R / RRC / IIC: (K <= L <= H).
        for h in &subs {
            for l in self.subgroups.iter().filter(|s| s.is_subgroup_of(h)) {
                for k in self.subgroups.iter().filter(|s| s.is_subgroup_of(l)) {
                    for (mi, m) in self.simples_for(cache, h)?.iter().enumerate() {
                        let ctx = DiagramContext {
                            subs: vec![k.clone(), l.clone(), (*h).clone()],
                            elems: vec![],
                        };
                        self.run_diagram(&mut report, Diagram::R, &ctx, m, mi)?;
                        for &a in elems {
                            let ctx = DiagramContext {
                                subs: vec![k.clone(), l.clone(), (*h).clone()],
                                elems: vec![a],
                            };
                            self.run_diagram(&mut report, Diagram::Rrc, &ctx, m, mi)?;
                        }
                    }
                    for (mi, m) in self.simples_for(cache, k)?.iter().enumerate() {
                        for &a in elems {
                            let ctx = DiagramContext {
                                subs: vec![k.clone(), l.clone(), (*h).clone()],
                                elems: vec![a],
                            };
                            self.run_diagram(&mut report, Diagram::Iic, &ctx, m, mi)?;
                        }
                    }
                }
            }
        }
        // Pairs for RCC / ICC: (L <= H).
        for h in &subs {
            for l in self.subgroups.iter().filter(|s| s.is_subgroup_of(h)) {
                for &a in elems {
                    for &b in elems {
                        for (mi, m) in self.simples_for(cache, h)?.iter().enumerate() {
                            let ctx = DiagramContext {
                                subs: vec![l.clone(), (*h).clone()],
                                elems: vec![a, b],
                            };
                            self.run_diagram(&mut report, Diagram::Rcc, &ctx, m, mi)?;
                        }
                        for (mi, m) in self.simples_for(cache, l)?.iter().enumerate() {
                            let ctx = DiagramContext {
                                subs: vec![l.clone(), (*h).clone()],
                                elems: vec![a, b],
                            };
                            self.run_diagram(&mut report, Diagram::Icc, &ctx, m, mi)?;
                        }
                    }
                }
            }
        }
        // Length-four towers for I.
        for h in &subs {
            for l in self.subgroups.iter().filter(|s| s.is_subgroup_of(h)) {
                for k in self.subgroups.iter().filter(|s| s.is_subgroup_of(l)) {
                    for j in self.subgroups.iter().filter(|s| s.is_subgroup_of(k)) {
                        for (mi, m) in self.simples_for(cache, j)?.iter().enumerate() {
                            let ctx = DiagramContext {
                                subs: vec![j.clone(), k.clone(), l.clone(), (*h).clone()],
                                elems: vec![],
                            };
                            self.run_diagram(&mut report, Diagram::I, &ctx, m, mi)?;
                        }
                    }
                }
            }
        }
        // Conjugation associativity (C) with all element triples.
        for h in &subs {
            for (mi, m) in self.simples_for(cache, h)?.iter().enumerate() {
                for &a in elems {
                    for &b in elems {
                        for &c in elems {
                            let ctx = DiagramContext {
                                subs: vec![(*h).clone()],
                                elems: vec![a, b, c],
                            };
                            self.run_diagram(&mut report, Diagram::C, &ctx, m, mi)?;
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    fn run_diagram(
        &self,
        report: &mut CheckReport,
        diagram: Diagram,
        ctx: &DiagramContext,
        m: &EqObject,
        mi: usize,
    ) -> Result<()> {
        let sub = coherence_check(self.action, diagram, ctx, m)?;
        let subs: Vec<String> = ctx.subs.iter().map(sub_name).collect();
        let elems: Vec<String> = ctx.elems.iter().map(usize::to_string).collect();
        let prefix = format!(
            "coherence[{} subs=({}) elems=({}) M={mi}] ",
            diagram.name(),
            subs.join(","),
            elems.join(",")
        );
        for mut item in sub.items {
            item.name = format!("{prefix}{}", item.name);
            report.items.push(item);
        }
        Ok(())
    }

    /// Triangle identities and Hom bijections for every scoped pair L <= H,
    /// sampling all scoped simples on both sides.
    pub fn adjunction_battery(&self, cache: &mut SimplesCache) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        for h in self.scoped_subgroups() {
            for l in self.subgroups.iter().filter(|s| s.is_subgroup_of(h)) {
                let samples_l = self.simples_for(cache, l)?;
                let samples_h = self.simples_for(cache, h)?;
                let sub = adjunction_check(self.action, l, h, &samples_l, &samples_h)?;
                let prefix = format!("adjunction[L={},H={}] ", sub_name(l), sub_name(h));
                for mut item in sub.items {
                    item.name = format!("{prefix}{}", item.name);
                    report.items.push(item);
                }
            }
        }
        Ok(report)
    }

    /// Grothendieck tables over the full subgroup lattice with the Mackey
    /// axioms, the Frobenius pairing, the dimension cross-check against the
    /// constructed Mackey witnesses, and the Green axioms for monoidal data.
    pub fn tables_battery(&self) -> Result<(K0Table, CheckReport)> {
        let mut builder = K0Builder::new(
            self.action,
            self.pointed,
            self.seed,
            self.retries,
            self.trials,
        );
        let table = builder.build_table(&self.subgroups)?;
        let mut report = verify_mackey_axioms(self.action.group(), &table);
        report.merge(verify_frobenius_pairing(&table));
        for h in self.scoped_subgroups() {
            for k in self.subgroups.iter().filter(|s| s.is_subgroup_of(h)) {
                for l in self.subgroups.iter().filter(|s| s.is_subgroup_of(h)) {
                    let sub = mackey_table_cross_check(&mut builder, k, l, h)?;
                    let prefix = format!(
                        "cross[H={},K={},L={}] ",
                        sub_name(h),
                        sub_name(k),
                        sub_name(l)
                    );
                    for mut item in sub.items {
                        item.name = format!("{prefix}{}", item.name);
                        report.items.push(item);
                    }
                }
            }
        }
        if self.pointed.is_some() {
            report.merge(verify_green_axioms(self.action.group(), &table));
        }
        Ok((table, report))
    }

    /// Monoidal-layer categorical checks: strict monoidality of restriction,
    /// monoidality of conjugation, the module-functor structure of induction
    /// with its unit and associativity diagrams, the Frobenius projection
    /// witness, and the module compatibility of the Mackey witness.
    pub fn green_categorical_battery(&self, cache: &mut SimplesCache) -> Result<CheckReport> {
        let Some(pointed) = self.pointed else {
            let mut report = CheckReport::new();
            report.fail(
                "green categorical battery",
                "no monoidal backend configured",
            );
            return Ok(report);
        };
        let scoped: Vec<Subgroup> = self.scoped_subgroups().into_iter().cloned().collect();
        let mut report = pointed.green_categorical_check(cache, &scoped)?;
        for h in self.scoped_subgroups() {
            for l in self.subgroups.iter().filter(|s| s.is_subgroup_of(h)) {
                let samples_l = self.simples_for(cache, l)?;
                let samples_h = self.simples_for(cache, h)?;
                for (ai, a) in samples_h.iter().enumerate() {
                    for (bi, b) in samples_h.iter().enumerate() {
                        for (vi, v) in samples_l.iter().enumerate() {
                            let sub = pointed.check_ind_module_diagrams(l, h, a, b, v)?;
                            let prefix = format!(
                                "module[L={},H={},A={ai},B={bi},V={vi}] ",
                                sub_name(l),
                                sub_name(h)
                            );
                            for mut item in sub.items {
                                item.name = format!("{prefix}{}", item.name);
                                report.items.push(item);
                            }
                        }
                    }
                }
                for (mi, m) in samples_l.iter().enumerate() {
                    for (vi, v) in samples_h.iter().enumerate() {
                        let (_, sub) = pointed.frobenius_iso(l, h, m, v)?;
                        let prefix = format!(
                            "frobenius[L={},H={},M={mi},V={vi}] ",
                            sub_name(l),
                            sub_name(h)
                        );
                        for mut item in sub.items {
                            item.name = format!("{prefix}{}", item.name);
                            report.items.push(item);
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}

/// Deterministic plain-text rendering of a report.
pub fn render_report(title: &str, report: &CheckReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("== {title}: {}\n", report.summary()));
    for item in &report.items {
        if item.passed {
            out.push_str(&format!("[PASS] {}\n", item.name));
        } else {
            out.push_str(&format!(
                "[FAIL] {} :: {}\n",
                item.name,
                item.witness.clone().unwrap_or_default()
            ));
        }
    }
    out
}
