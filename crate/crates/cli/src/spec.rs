//! JSON session specifications: the prime, the seed, the acting group, and
//! one of three backends (abstract action data, pointed fusion data, or an
//! algebra with a group action for the smash comparison).

use mackey_engine::action::{ActionData, Perm};
use mackey_engine::fp::Fp;
use mackey_engine::group::{Group, Subgroup};
use mackey_engine::mat::Matrix;
use mackey_engine::pointed::PointedData;
use mackey_engine::rng::Rng;
use mackey_engine::sample;
use mackey_engine::smash::{Algebra, GAlgebra};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionSpec {
    pub prime: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub group: GroupSpec,
    pub backend: BackendSpec,
    /// Largest dimension the randomized isomorphism tests may certify
    /// negatively; the prime must exceed it.
    #[serde(default = "default_dmax")]
    pub dimension_bound: u64,
    #[serde(default = "default_subgroup_bound")]
    pub subgroup_bound: usize,
}

fn default_seed() -> u64 {
    1
}

fn default_dmax() -> u64 {
    4
}

fn default_subgroup_bound() -> usize {
    48
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric3,
    Quaternion8,
    Table(Vec<Vec<usize>>),
    Permutations(Vec<Vec<usize>>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group, String> {
        match self {
            GroupSpec::Cyclic(n) => {
                if *n == 0 {
                    return Err("cyclic group order must be positive".into());
                }
                Ok(Group::cyclic(*n))
            }
            GroupSpec::Dihedral(n) => {
                if *n < 2 {
                    return Err("dihedral parameter must be at least 2".into());
                }
                Ok(Group::dihedral(*n))
            }
            GroupSpec::Symmetric3 => Ok(Group::symmetric3()),
            GroupSpec::Quaternion8 => Ok(Group::quaternion8()),
            GroupSpec::Table(rows) => Group::from_table(rows.clone()).map_err(|e| e.to_string()),
            GroupSpec::Permutations(gens) => {
                Group::from_permutations(gens).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaSpec {
    Trivial,
    /// One permutation of the simple labels per group element index.
    Perms(Vec<Vec<usize>>),
    /// The action on the left cosets of the given subgroup (element list).
    CosetAction(Vec<usize>),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaSpec {
    Trivial,
    /// `values[g][h][i]`
    Explicit(Vec<Vec<Vec<u64>>>),
    /// A seeded random coboundary (always a valid normalized cocycle).
    CoboundarySeed(u64),
    /// The carry class of a cyclic group: c^floor((a+b)/m) on the powers of
    /// the chosen generator.
    CyclicCarry {
        generator: usize,
        scalar: u64,
    },
    /// Pointwise product of cocycles.
    Product(Vec<LambdaSpec>),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TauSpec {
    Trivial,
    /// `values[g][i][j]`
    Explicit(Vec<Vec<Vec<u64>>>),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendSpec {
    Abstract {
        simples: usize,
        sigma: SigmaSpec,
        lambda: LambdaSpec,
    },
    Pointed {
        label_table: Vec<Vec<usize>>,
        sigma: SigmaSpec,
        #[serde(default)]
        lambda: Option<LambdaSpec>,
        #[serde(default)]
        tau: Option<TauSpec>,
        /// When present, lambda and tau are generated together by a seeded
        /// gauge of the trivial data (overrides both fields above).
        #[serde(default)]
        gauge_seed: Option<u64>,
    },
    Smash(SmashSpec),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmashSpec {
    /// S = F_p^d with the group permuting coordinates; one permutation of
    /// {0..d-1} per group element.
    PermutedFields(Vec<Vec<usize>>),
    /// S = F_p^d with the group given as permutation generators acting on
    /// its own points (d = the generator length).
    PointAction,
    Explicit {
        dimension: usize,
        /// `structure[i][j][k]`: coefficient of e_k in e_i · e_j.
        structure: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        /// One d x d matrix (row-major rows) per group element.
        automorphisms: Vec<Vec<Vec<u64>>>,
    },
}

/// A fully built session.
pub struct Session {
    pub seed: u64,
    pub subgroup_bound: usize,
    pub backend: Backend,
}

pub enum Backend {
    Abstract(ActionData),
    Pointed(Box<PointedData>),
    Smash(GAlgebra),
}

impl Backend {
    pub fn action(&self) -> Option<&ActionData> {
        match self {
            Backend::Abstract(a) => Some(a),
            Backend::Pointed(p) => Some(p.action()),
            Backend::Smash(_) => None,
        }
    }

    pub fn pointed(&self) -> Option<&PointedData> {
        match self {
            Backend::Pointed(p) => Some(p),
            _ => None,
        }
    }
}

fn build_sigma(spec: &SigmaSpec, group: &Group, n: usize) -> Result<Vec<Perm>, String> {
    match spec {
        SigmaSpec::Trivial => Ok(vec![Perm::identity(n); group.order()]),
        SigmaSpec::Perms(perms) => {
            if perms.len() != group.order() {
                return Err("sigma needs one permutation per group element".into());
            }
            perms
                .iter()
                .map(|p| {
                    if p.len() != n {
                        return Err("sigma permutation length must equal the simple count".into());
                    }
                    Perm::new(p.clone()).map_err(|e| e.to_string())
                })
                .collect()
        }
        SigmaSpec::CosetAction(elems) => {
            let u = Subgroup::new(group, elems.clone()).map_err(|e| e.to_string())?;
            let sigma = sample::coset_action_sigma(group, &u);
            if sigma[0].len() != n {
                return Err(format!(
                    "coset action has {} labels but the backend declares {n}",
                    sigma[0].len()
                ));
            }
            Ok(sigma)
        }
    }
}

fn build_lambda(
    spec: &LambdaSpec,
    fp: Fp,
    group: &Group,
    n: usize,
    sigma: &[Perm],
) -> Result<Vec<Vec<Vec<u64>>>, String> {
    match spec {
        LambdaSpec::Trivial => Ok(vec![vec![vec![1u64; n]; group.order()]; group.order()]),
        LambdaSpec::Explicit(values) => Ok(values.clone()),
        LambdaSpec::CoboundarySeed(seed) => Ok(sample::coboundary_lambda(
            fp,
            group,
            n,
            sigma,
            &mut Rng::new(*seed),
        )),
        LambdaSpec::CyclicCarry { generator, scalar } => {
            if group.element_order(*generator) != group.order() {
                return Err("cyclic_carry requires a generator of the full cyclic group".into());
            }
            Ok(sample::cyclic_carry_lambda(
                fp, group, n, *generator, *scalar,
            ))
        }
        LambdaSpec::Product(factors) => {
            let mut acc = vec![vec![vec![1u64; n]; group.order()]; group.order()];
            for f in factors {
                let next = build_lambda(f, fp, group, n, sigma)?;
                acc = sample::multiply_lambdas(fp, &acc, &next);
            }
            Ok(acc)
        }
    }
}

impl SessionSpec {
    pub fn build(&self) -> Result<Session, String> {
        let fp = Fp::new(self.prime).map_err(|e| e.to_string())?;
        let group = self.group.build()?;
        if group.order() as u64 % self.prime == 0 {
            return Err(format!(
                "prime {} divides the group order {}",
                self.prime,
                group.order()
            ));
        }
        if self.prime <= self.dimension_bound {
            return Err(format!(
                "prime {} must exceed the dimension bound {}",
                self.prime, self.dimension_bound
            ));
        }
        let backend = match &self.backend {
            BackendSpec::Abstract {
                simples,
                sigma,
                lambda,
            } => {
                let sigma = build_sigma(sigma, &group, *simples)?;
                let lambda = build_lambda(lambda, fp, &group, *simples, &sigma)?;
                let action = ActionData::new(fp, group, *simples, sigma, lambda)
                    .map_err(|e| e.to_string())?;
                Backend::Abstract(action)
            }
            BackendSpec::Pointed {
                label_table,
                sigma,
                lambda,
                tau,
                gauge_seed,
            } => {
                let n = label_table.len();
                let sigma = build_sigma(sigma, &group, n)?;
                let (lambda_values, tau_values) = if let Some(seed) = gauge_seed {
                    sample::gauge_pointed(fp, &group, label_table, &sigma, &mut Rng::new(*seed))
                } else {
                    let lam = build_lambda(
                        lambda.as_ref().unwrap_or(&LambdaSpec::Trivial),
                        fp,
                        &group,
                        n,
                        &sigma,
                    )?;
                    let tau = match tau.as_ref().unwrap_or(&TauSpec::Trivial) {
                        TauSpec::Trivial => vec![vec![vec![1u64; n]; n]; group.order()],
                        TauSpec::Explicit(values) => values.clone(),
                    };
                    (lam, tau)
                };
                let action = ActionData::new(fp, group, n, sigma, lambda_values)
                    .map_err(|e| e.to_string())?;
                let pointed = PointedData::new(action, label_table.clone(), tau_values)
                    .map_err(|e| e.to_string())?;
                Backend::Pointed(Box::new(pointed))
            }
            BackendSpec::Smash(smash) => {
                let galg = match smash {
                    SmashSpec::PermutedFields(perms) => {
                        GAlgebra::permuted_fields(fp, group, perms).map_err(|e| e.to_string())?
                    }
                    SmashSpec::PointAction => {
                        let GroupSpec::Permutations(gens) = &self.group else {
                            return Err(
                                "point_action requires the group to be given as permutations"
                                    .into(),
                            );
                        };
                        let (group, elems) = Group::from_permutations_with_elements(gens)
                            .map_err(|e| e.to_string())?;
                        GAlgebra::permuted_fields(fp, group, &elems).map_err(|e| e.to_string())?
                    }
                    SmashSpec::Explicit {
                        dimension,
                        structure,
                        unit,
                        automorphisms,
                    } => {
                        let algebra = Algebra::new(fp, *dimension, structure.clone(), unit.clone())
                            .map_err(|e| e.to_string())?;
                        let auts = automorphisms
                            .iter()
                            .map(|rows| Matrix::from_rows(fp, rows))
                            .collect();
                        GAlgebra::new(algebra, group, auts).map_err(|e| e.to_string())?
                    }
                };
                Backend::Smash(galg)
            }
        };
        Ok(Session {
            seed: self.seed,
            subgroup_bound: self.subgroup_bound,
            backend,
        })
    }

    /// Build without running the validating constructors, for `validate` to
    /// report on broken data instead of erroring out.
    pub fn build_unvalidated(&self) -> Result<Session, String> {
        let fp = Fp::new(self.prime).map_err(|e| e.to_string())?;
        let group = self.group.build()?;
        let backend = match &self.backend {
            BackendSpec::Abstract {
                simples,
                sigma,
                lambda,
            } => {
                let sigma = build_sigma(sigma, &group, *simples)?;
                let lambda = build_lambda(lambda, fp, &group, *simples, &sigma)?;
                let action = ActionData::new_unvalidated(fp, group, *simples, sigma, lambda)
                    .map_err(|e| e.to_string())?;
                Backend::Abstract(action)
            }
            BackendSpec::Pointed {
                label_table,
                sigma,
                lambda,
                tau,
                gauge_seed,
            } => {
                let n = label_table.len();
                let sigma = build_sigma(sigma, &group, n)?;
                let (lambda_values, tau_values) = if let Some(seed) = gauge_seed {
                    sample::gauge_pointed(fp, &group, label_table, &sigma, &mut Rng::new(*seed))
                } else {
                    let lam = build_lambda(
                        lambda.as_ref().unwrap_or(&LambdaSpec::Trivial),
                        fp,
                        &group,
                        n,
                        &sigma,
                    )?;
                    let tau = match tau.as_ref().unwrap_or(&TauSpec::Trivial) {
                        TauSpec::Trivial => vec![vec![vec![1u64; n]; n]; group.order()],
                        TauSpec::Explicit(values) => values.clone(),
                    };
                    (lam, tau)
                };
                let action = ActionData::new_unvalidated(fp, group, n, sigma, lambda_values)
                    .map_err(|e| e.to_string())?;
                let pointed = PointedData::new_unvalidated(action, label_table.clone(), tau_values)
                    .map_err(|e| e.to_string())?;
                Backend::Pointed(Box::new(pointed))
            }
            BackendSpec::Smash(_) => return self.build(),
        };
        Ok(Session {
            seed: self.seed,
            subgroup_bound: self.subgroup_bound,
            backend,
        })
    }
}
