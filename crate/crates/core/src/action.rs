//! The semisimple category model and the group action on it.
//!
//! A finite semisimple k-linear category with n absolutely simple objects is
//! modeled by multiplicity vectors (objects) and per-simple matrix blocks
//! (morphisms). A group action by autoequivalences is then a permutation
//! sigma_g of the simple labels per group element, together with nonzero
//! scalars `lambda[g][h][i]` giving the components of the monoidal-composition
//! isomorphisms T^g T^h -> T^{gh} on each simple.

use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::group::Group;
use crate::mat::Matrix;
use crate::report::CheckReport;

/// A permutation of the simple labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn new(map: Vec<usize>) -> Result<Perm> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || seen[x] {
                return Err(Error::InvalidAction("not a permutation".into()));
            }
            seen[x] = true;
        }
        Ok(Perm { map })
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            map: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Perm { map: inv }
    }

    /// self ∘ other: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// An object: multiplicities of each simple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Obj(pub Vec<usize>);

impl Obj {
    pub fn zero(n: usize) -> Obj {
        Obj(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Obj {
        let mut m = vec![0; n];
        m[i] = 1;
        Obj(m)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Total dimension of the underlying object (each simple counts 1).
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// A morphism: one matrix block per simple, block j of shape
/// `target[j]` × `source[j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mor {
    pub source: Obj,
    pub target: Obj,
    pub blocks: Vec<Matrix>,
}

impl Mor {
    pub fn new(fp: Fp, source: Obj, target: Obj, blocks: Vec<Matrix>) -> Mor {
        assert_eq!(blocks.len(), source.n());
        assert_eq!(source.n(), target.n());
        for (j, b) in blocks.iter().enumerate() {
            assert_eq!(
                (b.rows(), b.cols()),
                (target.0[j], source.0[j]),
                "block {j} shape mismatch"
            );
            assert_eq!(b.fp(), fp);
        }
        Mor {
            source,
            target,
            blocks,
        }
    }

    pub fn zero(fp: Fp, source: Obj, target: Obj) -> Mor {
        let blocks = source
            .0
            .iter()
            .zip(&target.0)
            .map(|(&s, &t)| Matrix::zero(fp, t, s))
            .collect();
        Mor {
            source,
            target,
            blocks,
        }
    }

    pub fn identity(fp: Fp, obj: &Obj) -> Mor {
        let blocks = obj.0.iter().map(|&m| Matrix::identity(fp, m)).collect();
        Mor {
            source: obj.clone(),
            target: obj.clone(),
            blocks,
        }
    }

    pub fn scalar(fp: Fp, obj: &Obj, c: u64) -> Mor {
        let blocks = obj.0.iter().map(|&m| Matrix::scalar(fp, m, c)).collect();
        Mor {
            source: obj.clone(),
            target: obj.clone(),
            blocks,
        }
    }

    pub fn fp(&self) -> Fp {
        self.blocks
            .first()
            .map(|b| b.fp())
            .expect("morphisms in the zero category are not used")
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Mor) -> Mor {
        assert_eq!(
            other.target, self.source,
            "composition source/target mismatch"
        );
        let blocks: Vec<Matrix> = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(g, f)| g.mul(f))
            .collect();
        Mor {
            source: other.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    pub fn add(&self, other: &Mor) -> Mor {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        Mor {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Mor {
        Mor {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.is_square() && b.inverse().is_some())
    }

    pub fn inverse(&self) -> Option<Mor> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            blocks.push(b.inverse()?);
        }
        Some(Mor {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.blocks.iter().all(Matrix::is_identity)
    }

    pub fn random(fp: Fp, source: &Obj, target: &Obj, rng: &mut crate::rng::Rng) -> Mor {
        let blocks = source
            .0
            .iter()
            .zip(&target.0)
            .map(|(&s, &t)| Matrix::random(fp, t, s, rng))
            .collect();
        Mor {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }
}

/// A finite group action on the semisimple category model.
#[derive(Clone, Debug)]
pub struct ActionData {
    fp: Fp,
    group: Group,
    n: usize,
    sigma: Vec<Perm>,
    sigma_inv: Vec<Perm>,
    /// `lambda[g][h][i]`, the scalar of (T2^{g,h}) on the simple X_i.
    lambda: Vec<Vec<Vec<u64>>>,
}

impl ActionData {
    /// Build and fully validate. Rejects data violating the homomorphism,
    /// normalization or cocycle conditions; see `validate` for the
    /// report-style variant used by the CLI.
    pub fn new(
        fp: Fp,
        group: Group,
        n: usize,
        sigma: Vec<Perm>,
        lambda: Vec<Vec<Vec<u64>>>,
    ) -> Result<ActionData> {
        let a = ActionData::new_unvalidated(fp, group, n, sigma, lambda)?;
        let report = a.validate();
        if let Some(item) = report.first_failure() {
            return Err(Error::InvalidAction(format!(
                "{}: {}",
                item.name,
                item.witness.clone().unwrap_or_default()
            )));
        }
        Ok(a)
    }

    /// Shape checks only; the logical invariants are left to `validate`.
    pub fn new_unvalidated(
        fp: Fp,
        group: Group,
        n: usize,
        sigma: Vec<Perm>,
        lambda: Vec<Vec<Vec<u64>>>,
    ) -> Result<ActionData> {
        let order = group.order();
        if fp.p() as usize != 0 && order % fp.p() as usize == 0 {
            return Err(Error::PrimeDividesGroupOrder { p: fp.p(), order });
        }
        if sigma.len() != order || lambda.len() != order {
            return Err(Error::InvalidAction(
                "sigma/lambda length must equal |G|".into(),
            ));
        }
        for s in &sigma {
            if s.len() != n {
                return Err(Error::InvalidAction("sigma entry has wrong length".into()));
            }
        }
        for row in &lambda {
            if row.len() != order {
                return Err(Error::InvalidAction("lambda row has wrong length".into()));
            }
            for cell in row {
                if cell.len() != n {
                    return Err(Error::InvalidAction("lambda cell has wrong length".into()));
                }
                for &v in cell {
                    if fp.reduce(v) == 0 {
                        return Err(Error::InvalidAction("lambda value is zero".into()));
                    }
                }
            }
        }
        let sigma_inv = sigma.iter().map(Perm::inverse).collect();
        Ok(ActionData {
            fp,
            group,
            n,
            sigma,
            sigma_inv,
            lambda,
        })
    }

    /// The trivial action: sigma = id, lambda = 1.
    pub fn trivial(fp: Fp, group: Group, n: usize) -> Result<ActionData> {
        let order = group.order();
        let sigma = vec![Perm::identity(n); order];
        let lambda = vec![vec![vec![1u64; n]; order]; order];
        ActionData::new(fp, group, n, sigma, lambda)
    }

    /// Report-style validation of the three action invariants:
    /// the permutation homomorphism, the unit normalization and the
    /// lambda cocycle condition. Failure items name the offending tuple.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let order = self.group.order();
        report.check("sigma(1) = id", self.sigma[0].is_identity(), || {
            "sigma at the identity is not the identity permutation".into()
        });
        let mut hom_ok = true;
        'hom: for g in 0..order {
            for h in 0..order {
                let gh = self.group.mul(g, h);
                if self.sigma[g].compose(&self.sigma[h]) != self.sigma[gh] {
                    report.fail(
                        "sigma homomorphism",
                        format!("sigma({g})∘sigma({h}) != sigma({gh})"),
                    );
                    hom_ok = false;
                    break 'hom;
                }
            }
        }
        if hom_ok {
            report.pass("sigma homomorphism");
        }
        let mut norm_ok = true;
        'norm: for g in 0..order {
            for i in 0..self.n {
                if self.fp.reduce(self.lambda[g][0][i]) != 1
                    || self.fp.reduce(self.lambda[0][g][i]) != 1
                {
                    report.fail(
                        "lambda normalization",
                        format!("lambda({g},1) or lambda(1,{g}) differs from 1 at simple {i}"),
                    );
                    norm_ok = false;
                    break 'norm;
                }
            }
        }
        if norm_ok {
            report.pass("lambda normalization");
        }
        let mut cocycle_ok = true;
        'cocycle: for g in 0..order {
            for h in 0..order {
                for l in 0..order {
                    for i in 0..self.n {
                        // lambda(gh,l)_i * lambda(g,h)_{sigma_l(i)}
                        //   = lambda(g,hl)_i * lambda(h,l)_i
                        let gh = self.group.mul(g, h);
                        let hl = self.group.mul(h, l);
                        let lhs = self.fp.mul(
                            self.lambda(gh, l, i),
                            self.lambda(g, h, self.sigma[l].apply(i)),
                        );
                        let rhs = self.fp.mul(self.lambda(g, hl, i), self.lambda(h, l, i));
                        if lhs != rhs {
                            report.fail(
                                "lambda cocycle",
                                format!(
                                    "cocycle fails at (g,h,l,i)=({g},{h},{l},{i}): {lhs} != {rhs}"
                                ),
                            );
                            cocycle_ok = false;
                            break 'cocycle;
                        }
                    }
                }
            }
        }
        if cocycle_ok {
            report.pass("lambda cocycle");
        }
        report
    }

    #[inline]
    pub fn fp(&self) -> Fp {
        self.fp
    }

    #[inline]
    pub fn group(&self) -> &Group {
        &self.group
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sigma(&self, g: usize) -> &Perm {
        &self.sigma[g]
    }

    #[inline]
    pub fn sigma_inv(&self, g: usize) -> &Perm {
        &self.sigma_inv[g]
    }

    #[inline]
    pub fn lambda(&self, g: usize, h: usize, i: usize) -> u64 {
        self.fp.reduce(self.lambda[g][h][i])
    }

    pub fn lambda_inv(&self, g: usize, h: usize, i: usize) -> u64 {
        self.fp
            .inv(self.lambda(g, h, i))
            .expect("lambda values are nonzero")
    }

    /// T^g on objects: `result[j]` = m[sigma_g^{-1}(j)].
    pub fn act_obj(&self, g: usize, m: &Obj) -> Obj {
        let inv = &self.sigma_inv[g];
        Obj((0..self.n).map(|j| m.0[inv.apply(j)]).collect())
    }

    /// T^g on morphisms: block j of the image is block sigma_g^{-1}(j) of f.
    pub fn act_mor(&self, g: usize, f: &Mor) -> Mor {
        let inv = &self.sigma_inv[g];
        Mor {
            source: self.act_obj(g, &f.source),
            target: self.act_obj(g, &f.target),
            blocks: (0..self.n)
                .map(|j| f.blocks[inv.apply(j)].clone())
                .collect(),
        }
    }

    /// The isomorphism T^g T^h(M) -> T^{gh}(M): scalar
    /// lambda(g,h)_{sigma_{gh}^{-1}(j)} on the block at simple j.
    pub fn t2(&self, g: usize, h: usize, m: &Obj) -> Mor {
        let gh = self.group.mul(g, h);
        let source = self.act_obj(g, &self.act_obj(h, m));
        let target = self.act_obj(gh, m);
        debug_assert_eq!(source, target);
        let inv = &self.sigma_inv[gh];
        let blocks = (0..self.n)
            .map(|j| Matrix::scalar(self.fp, target.0[j], self.lambda(g, h, inv.apply(j))))
            .collect();
        Mor {
            source,
            target,
            blocks,
        }
    }

    pub fn t2_inv(&self, g: usize, h: usize, m: &Obj) -> Mor {
        self.t2(g, h, m)
            .inverse()
            .expect("t2 blocks are nonzero scalars")
    }
}
