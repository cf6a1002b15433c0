//! Acceptance suite. Each test verifies one criterion end to end and prints a
//! single PASS line; run with `cargo test --test acceptance -- --nocapture`
//! to see them.

use mackey_engine::action::{ActionData, Perm};
use mackey_engine::driver::{render_report, Driver, Scope};
use mackey_engine::equiv::EqObject;
use mackey_engine::fp::Fp;
use mackey_engine::green::IntMat;
use mackey_engine::group::{Group, Subgroup};
use mackey_engine::pointed::PointedData;
use mackey_engine::rng::Rng;
use mackey_engine::sample;
use mackey_engine::smash::{compare_with_abstract, GAlgebra};
use std::time::Instant;

const SEED: u64 = 20260808;
const RETRIES: usize = 128;
const TRIALS: usize = 24;

fn s3_trivial() -> ActionData {
    let fp = Fp::new(7).unwrap();
    ActionData::trivial(fp, Group::symmetric3(), 1).unwrap()
}

fn c2_scalar(c: u64) -> ActionData {
    let fp = Fp::new(5).unwrap();
    let g = Group::cyclic(2);
    let sigma = vec![Perm::identity(1), Perm::identity(1)];
    let lambda = vec![vec![vec![1], vec![1]], vec![vec![1], vec![c]]];
    ActionData::new(fp, g, 1, sigma, lambda).unwrap()
}

fn c4_seeded_cocycle() -> ActionData {
    let fp = Fp::new(13).unwrap();
    let g = Group::cyclic(4);
    let swap = Perm::new(vec![1, 0]).unwrap();
    let sigma = vec![Perm::identity(2), swap.clone(), Perm::identity(2), swap];
    let base = sample::coboundary_lambda(fp, &g, 2, &sigma, &mut Rng::new(SEED));
    let carry = sample::cyclic_carry_lambda(fp, &g, 2, 1, 2);
    let lambda = sample::multiply_lambdas(fp, &base, &carry);
    ActionData::new(fp, g, 2, sigma, lambda).unwrap()
}

fn pointed_c3_inversion() -> PointedData {
    let fp = Fp::new(7).unwrap();
    let g = Group::cyclic(2);
    let inv = Perm::new(vec![0, 2, 1]).unwrap();
    let sigma = vec![Perm::identity(3), inv];
    let lambda = vec![vec![vec![1; 3]; 2]; 2];
    let action = ActionData::new(fp, g, 3, sigma, lambda).unwrap();
    let c3 = Group::cyclic(3);
    let etable: Vec<Vec<usize>> = (0..3)
        .map(|i| (0..3).map(|j| c3.mul(i, j)).collect())
        .collect();
    PointedData::with_trivial_tau(action, etable).unwrap()
}

/// Hand-derived irreducible characters of a subgroup of S3 over F7, as value
/// vectors indexed by the subgroup's element list. Cyclic subgroups get the
/// power characters of a primitive root of unity; the full group gets the
/// classical triple (trivial, sign, two-dimensional).
fn oracle_characters(fp: Fp, group: &Group, h: &Subgroup) -> Vec<Vec<u64>> {
    let order = h.order();
    match order {
        1 => vec![vec![1]],
        2 | 3 => {
            let gen = *h.elems().iter().find(|&&e| e != 0).unwrap();
            // For order 3 either generator works; characters come in the same set.
            let omega = (1..fp.p())
                .find(|&w| {
                    let mut acc = 1u64;
                    let mut ord = 0;
                    for i in 1..=order as u64 {
                        acc = fp.mul(acc, w);
                        if acc == 1 {
                            ord = i;
                            break;
                        }
                    }
                    ord == order as u64
                })
                .expect("F7 contains the needed roots of unity");
            // Express each element as a power of the generator.
            let mut power = vec![0usize; group.order()];
            let mut x = 0usize;
            for k in 0..order {
                power[x] = k;
                x = group.mul(x, gen);
            }
            (0..order)
                .map(|j| {
                    h.elems()
                        .iter()
                        .map(|&e| fp.pow(omega, (j * power[e]) as u64 % order as u64))
                        .collect()
                })
                .collect()
        }
        6 => {
            let sign = |e: usize| -> u64 {
                if group.element_order(e) == 2 {
                    fp.p() - 1
                } else {
                    1
                }
            };
            let two_dim = |e: usize| -> u64 {
                match group.element_order(e) {
                    1 => 2,
                    2 => 0,
                    3 => fp.p() - 1,
                    _ => unreachable!("no elements of larger order in S3"),
                }
            };
            vec![
                h.elems().iter().map(|_| 1).collect(),
                h.elems().iter().map(|&e| sign(e)).collect(),
                h.elems().iter().map(|&e| two_dim(e)).collect(),
            ]
        }
        _ => unreachable!("S3 has no subgroup of order {order}"),
    }
}

fn oracle_induce(fp: Fp, group: &Group, l: &Subgroup, h: &Subgroup, chi: &[u64]) -> Vec<u64> {
    let linv = fp.inv(l.order() as u64).unwrap();
    h.elems()
        .iter()
        .map(|&e| {
            let mut acc = 0u64;
            for &x in h.elems() {
                let conj = group.mul(group.mul(group.inv(x), e), x);
                if let Some(pos) = l.position(conj) {
                    acc = fp.add(acc, chi[pos]);
                }
            }
            fp.mul(acc, linv)
        })
        .collect()
}

fn oracle_restrict(l: &Subgroup, h: &Subgroup, chi: &[u64]) -> Vec<u64> {
    l.elems()
        .iter()
        .map(|&e| chi[h.position(e).expect("L <= H")])
        .collect()
}

fn oracle_decompose(
    fp: Fp,
    group: &Group,
    h: &Subgroup,
    alpha: &[u64],
    irreducibles: &[Vec<u64>],
) -> Vec<i64> {
    let hinv = fp.inv(h.order() as u64).unwrap();
    irreducibles
        .iter()
        .map(|chi| {
            let mut acc = 0u64;
            for (pos, &e) in h.elems().iter().enumerate() {
                let inv_pos = h.position(group.inv(e)).unwrap();
                acc = fp.add(acc, fp.mul(alpha[pos], chi[inv_pos]));
            }
            fp.mul(acc, hinv) as i64
        })
        .collect()
}

fn trace_character(action: &ActionData, s: &EqObject) -> Vec<u64> {
    let fp = action.fp();
    s.sub()
        .elems()
        .iter()
        .map(|&g| {
            let block = &s.mu_blocks(g)[0];
            let mut tr = 0u64;
            for i in 0..block.rows() {
                tr = fp.add(tr, block.at(i, i));
            }
            tr
        })
        .collect()
}

#[test]
fn criterion_1_classical_recovery_for_s3() {
    let start = Instant::now();
    let action = s3_trivial();
    let fp = action.fp();
    let group = action.group().clone();
    let subs = group.subgroups(48).unwrap();
    let driver = Driver::new(&action, None, SEED, Scope::All, 48, RETRIES, TRIALS).unwrap();
    let mut cache = driver.fresh_cache();

    // Simple counts per subgroup order: 1 -> 1, 2 -> 2, 3 -> 3, 6 -> 3.
    for h in &subs {
        let expected = match h.order() {
            1 => 1,
            2 => 2,
            3 => 3,
            6 => 3,
            _ => unreachable!(),
        };
        let simples = cache.get(&action, h).unwrap();
        assert_eq!(
            simples.len(),
            expected,
            "simple count over subgroup of order {}",
            h.order()
        );
    }

    // Match engine simples to oracle characters via traces of the structure maps.
    let mut engine_to_oracle: Vec<Vec<usize>> = Vec::new();
    let mut oracle_chars: Vec<Vec<Vec<u64>>> = Vec::new();
    for h in &subs {
        let chars = oracle_characters(fp, &group, h);
        let simples = cache.get(&action, h).unwrap();
        let map: Vec<usize> = simples
            .iter()
            .map(|s| {
                let tr = trace_character(&action, s);
                chars
                    .iter()
                    .position(|c| *c == tr)
                    .expect("every engine simple matches an oracle character")
            })
            .collect();
        let mut sorted = map.clone();
        sorted.sort_unstable();
        assert_eq!(
            sorted,
            (0..chars.len()).collect::<Vec<_>>(),
            "trace matching is a bijection"
        );
        engine_to_oracle.push(map);
        oracle_chars.push(chars);
    }

    // Tables from the engine against independent character-theoretic tables.
    let (table, report) = driver.tables_battery().unwrap();
    assert!(report.all_passed(), "{:?}", report.first_failure());
    for (h_idx, h) in subs.iter().enumerate() {
        for (k_idx, k) in subs.iter().enumerate() {
            if !k.is_subgroup_of(h) {
                continue;
            }
            let engine_res = &table.res[&(h_idx, k_idx)];
            let engine_ind = &table.ind[&(h_idx, k_idx)];
            let mut oracle_res = IntMat::zero(engine_res.rows, engine_res.cols);
            for (j, chi) in oracle_chars[h_idx].iter().enumerate() {
                let restricted = oracle_restrict(k, h, chi);
                let class = oracle_decompose(fp, &group, k, &restricted, &oracle_chars[k_idx]);
                for (i, &c) in class.iter().enumerate() {
                    oracle_res.set(i, j, c);
                }
            }
            let mut oracle_ind = IntMat::zero(engine_ind.rows, engine_ind.cols);
            for (j, psi) in oracle_chars[k_idx].iter().enumerate() {
                let induced = oracle_induce(fp, &group, k, h, psi);
                let class = oracle_decompose(fp, &group, h, &induced, &oracle_chars[h_idx]);
                for (i, &c) in class.iter().enumerate() {
                    oracle_ind.set(i, j, c);
                }
            }
            // Compare through the basis matching.
            for je in 0..table.rank(h_idx) {
                for ie in 0..table.rank(k_idx) {
                    let io = engine_to_oracle[k_idx][ie];
                    let jo = engine_to_oracle[h_idx][je];
                    assert_eq!(
                        engine_res.at(ie, je),
                        oracle_res.at(io, jo),
                        "restriction tables differ at H=#{h_idx}, K=#{k_idx}"
                    );
                }
            }
            for je in 0..table.rank(k_idx) {
                for ie in 0..table.rank(h_idx) {
                    let io = engine_to_oracle[h_idx][ie];
                    let jo = engine_to_oracle[k_idx][je];
                    assert_eq!(
                        engine_ind.at(ie, je),
                        oracle_ind.at(io, jo),
                        "induction tables differ at H=#{h_idx}, K=#{k_idx}"
                    );
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "criterion 1 took {elapsed:?}");
    println!("acceptance criterion 1 (classical recovery, S3 over F7): PASS in {elapsed:?}");
}

struct Config {
    name: &'static str,
    action: ActionData,
    pointed: Option<PointedData>,
}

fn acceptance_configs() -> Vec<Config> {
    let pointed = pointed_c3_inversion();
    vec![
        Config {
            name: "S3 trivial over F7",
            action: s3_trivial(),
            pointed: None,
        },
        Config {
            name: "C2 square cocycle over F5",
            action: c2_scalar(4),
            pointed: None,
        },
        Config {
            name: "C2 nonsquare cocycle over F5",
            action: c2_scalar(2),
            pointed: None,
        },
        Config {
            name: "C4 seeded cocycle on two simples over F13",
            action: c4_seeded_cocycle(),
            pointed: None,
        },
        Config {
            name: "pointed C3 with C2 inversion over F7",
            action: pointed.action().clone(),
            pointed: Some(pointed),
        },
    ]
}

#[test]
fn criterion_2_mackey_isomorphism() {
    let start = Instant::now();
    for config in acceptance_configs() {
        let driver = Driver::new(
            &config.action,
            config.pointed.as_ref(),
            SEED,
            Scope::All,
            48,
            RETRIES,
            TRIALS,
        )
        .unwrap();
        let mut cache = driver.fresh_cache();
        let report = driver.mackey_battery(&mut cache).unwrap();
        assert!(
            report.all_passed(),
            "config {}: {:?}",
            config.name,
            report.first_failure()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 2 took {elapsed:?}");
    println!("acceptance criterion 2 (Mackey isomorphism, 4 configurations): PASS in {elapsed:?}");
}

#[test]
fn criterion_3_coherence_suite() {
    let start = Instant::now();
    for config in acceptance_configs() {
        let driver = Driver::new(
            &config.action,
            config.pointed.as_ref(),
            SEED,
            Scope::All,
            48,
            RETRIES,
            TRIALS,
        )
        .unwrap();
        let mut cache = driver.fresh_cache();
        let report = driver.coherence_battery(&mut cache).unwrap();
        assert!(
            report.all_passed(),
            "config {}: {:?}",
            config.name,
            report.first_failure()
        );
    }
    println!(
        "acceptance criterion 3 (coherence diagrams R,I,C,RRC,RCC,IIC,ICC): PASS in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_4_adjunction() {
    let start = Instant::now();
    for config in acceptance_configs() {
        let driver = Driver::new(
            &config.action,
            config.pointed.as_ref(),
            SEED,
            Scope::All,
            48,
            RETRIES,
            TRIALS,
        )
        .unwrap();
        let mut cache = driver.fresh_cache();
        let report = driver.adjunction_battery(&mut cache).unwrap();
        assert!(
            report.all_passed(),
            "config {}: {:?}",
            config.name,
            report.first_failure()
        );
    }
    println!(
        "acceptance criterion 4 (adjunction triangles and Hom bijections): PASS in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_5_green_functor_at_k0() {
    let start = Instant::now();
    let pointed = pointed_c3_inversion();
    let action = pointed.action().clone();
    let driver = Driver::new(
        &action,
        Some(&pointed),
        SEED,
        Scope::All,
        48,
        RETRIES,
        TRIALS,
    )
    .unwrap();
    let (table, report) = driver.tables_battery().unwrap();
    assert!(report.all_passed(), "{:?}", report.first_failure());

    // K0 of the equivariantization by C2 has rank 3.
    let group = action.group().clone();
    let full_idx = table.subgroup_index(&Subgroup::full(&group)).unwrap();
    assert_eq!(table.rank(full_idx), 3);

    // Fusion constants match the hand-derived character-ring shape of S3:
    // with u the unit class, s the other one-dimensional class and d the
    // two-dimensional class: s*s = u, s*d = d*s = d, d*d = u + s + d.
    let fusion = table.fusion.as_ref().unwrap();
    let unit = table.unit.as_ref().unwrap();
    let dims = &table.bases[full_idx].dims;
    let u = unit[full_idx]
        .iter()
        .position(|&c| c == 1)
        .expect("unit class is a basis vector");
    assert_eq!(unit[full_idx].iter().sum::<i64>(), 1);
    let s = (0..3).find(|&i| i != u && dims[i] == 1).unwrap();
    let d = (0..3).find(|&i| dims[i] == 2).unwrap();
    let e = |i: usize| -> Vec<i64> {
        let mut v = vec![0i64; 3];
        v[i] = 1;
        v
    };
    let sum_all = {
        let mut v = vec![0i64; 3];
        v[u] = 1;
        v[s] = 1;
        v[d] = 1;
        v
    };
    for i in 0..3 {
        assert_eq!(fusion[full_idx][u][i], e(i), "unit is a left unit");
        assert_eq!(fusion[full_idx][i][u], e(i), "unit is a right unit");
    }
    assert_eq!(fusion[full_idx][s][s], e(u), "sign squares to the unit");
    assert_eq!(fusion[full_idx][s][d], e(d));
    assert_eq!(fusion[full_idx][d][s], e(d));
    assert_eq!(fusion[full_idx][d][d], sum_all, "2⊗2 = 1 + 1' + 2");

    // Categorical Green checks on the same data.
    let mut cache = driver.fresh_cache();
    let report = driver.green_categorical_battery(&mut cache).unwrap();
    assert!(report.all_passed(), "{:?}", report.first_failure());
    println!(
        "acceptance criterion 5 (Green functor at K0, pointed C3/C2 over F7): PASS in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_6_smash_cross_check() {
    let start = Instant::now();
    let fp = Fp::new(5).unwrap();
    let (g, perms) =
        Group::from_permutations_with_elements(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
    let s = GAlgebra::permuted_fields(fp, g.clone(), &perms).unwrap();
    for h in g.subgroups(48).unwrap() {
        let report = compare_with_abstract(&s, &h, SEED, RETRIES, TRIALS).unwrap();
        assert!(
            report.all_passed(),
            "H of order {}: {:?}",
            h.order(),
            report.first_failure()
        );
    }
    println!(
        "acceptance criterion 6 (smash product blocks match the abstract engine): PASS in {:?}",
        start.elapsed()
    );
}

enum Dataset {
    Plain(ActionData),
    Monoidal(Box<PointedData>),
}

fn property_datasets() -> Vec<(String, Dataset)> {
    let fp = Fp::new(13).unwrap();
    let mut out = Vec::new();
    // Cocycle-only datasets: sigma from coset actions, lambda a seeded
    // coboundary (times a carry class on cyclic groups).
    let plain_pool: Vec<(&str, Group, usize)> = vec![
        ("C2 on its regular cosets", Group::cyclic(2), 1),
        ("C3 on its regular cosets", Group::cyclic(3), 1),
        ("C4 on cosets of C2", Group::cyclic(4), 2),
        (
            "V4 on cosets of a C2",
            Group::direct_product(&Group::cyclic(2), &Group::cyclic(2)),
            2,
        ),
        ("C6 on cosets of C3", Group::cyclic(6), 3),
        ("S3 on cosets of C3", Group::symmetric3(), 3),
        ("S3 on cosets of a C2", Group::symmetric3(), 2),
        ("C8 on cosets of C4", Group::cyclic(8), 4),
        ("D4 on cosets of the rotations", Group::dihedral(4), 4),
        ("Q8 on cosets of a C4", Group::quaternion8(), 4),
    ];
    for (idx, (name, group, u_order)) in plain_pool.into_iter().enumerate() {
        let subs = group.subgroups(48).unwrap();
        let u = subs
            .iter()
            .find(|s| s.order() == u_order)
            .expect("pool subgroup order exists")
            .clone();
        let sigma = sample::coset_action_sigma(&group, &u);
        let n = sigma[0].len();
        let mut rng = Rng::new(SEED ^ (idx as u64 + 1));
        let mut lambda = sample::coboundary_lambda(fp, &group, n, &sigma, &mut rng);
        if group.element_order(1) == group.order() {
            // Cyclic: mix in a nontrivial class.
            let carry = sample::cyclic_carry_lambda(fp, &group, n, 1, 2);
            lambda = sample::multiply_lambdas(fp, &lambda, &carry);
        }
        let action = ActionData::new(fp, group, n, sigma, lambda).unwrap();
        out.push((
            format!("lambda dataset {idx}: {name}"),
            Dataset::Plain(action),
        ));
    }
    // Monoidal datasets: a label group E, a homomorphism G -> Aut(E) chosen
    // deterministically (the last found, which is nontrivial when one
    // exists), and a seeded gauge for (lambda, tau).
    let table_of = |g: &Group| -> Vec<Vec<usize>> {
        (0..g.order())
            .map(|i| (0..g.order()).map(|j| g.mul(i, j)).collect())
            .collect()
    };
    let c2t = table_of(&Group::cyclic(2));
    let c3t = table_of(&Group::cyclic(3));
    let c4t = table_of(&Group::cyclic(4));
    let v4t = table_of(&Group::direct_product(&Group::cyclic(2), &Group::cyclic(2)));
    let monoidal_pool: Vec<(&str, Group, Vec<Vec<usize>>)> = vec![
        ("C2 on E=C3", Group::cyclic(2), c3t.clone()),
        ("C2 on E=V4", Group::cyclic(2), v4t.clone()),
        ("C4 on E=C2", Group::cyclic(4), c2t.clone()),
        ("C4 on E=C4", Group::cyclic(4), c4t.clone()),
        (
            "V4 on E=V4",
            Group::direct_product(&Group::cyclic(2), &Group::cyclic(2)),
            v4t.clone(),
        ),
        ("S3 on E=C3", Group::symmetric3(), c3t.clone()),
        ("C6 on E=C3", Group::cyclic(6), c3t),
        ("C3 on E=V4", Group::cyclic(3), v4t),
        ("D4 on E=C2", Group::dihedral(4), c2t.clone()),
        ("C2 on E=C4", Group::cyclic(2), c4t),
    ];
    for (idx, (name, group, etable)) in monoidal_pool.into_iter().enumerate() {
        let auts = sample::automorphisms_of(&etable);
        let homs = sample::homomorphisms_into(&group, &auts);
        let sigma = homs
            .last()
            .expect("the trivial homomorphism always exists")
            .clone();
        let n = etable.len();
        let mut rng = Rng::new(SEED ^ (0x100 + idx as u64));
        let (lambda, tau) = sample::gauge_pointed(fp, &group, &etable, &sigma, &mut rng);
        let action = ActionData::new(fp, group, n, sigma, lambda).unwrap();
        let pointed = PointedData::new(action, etable, tau).unwrap();
        out.push((
            format!("pointed dataset {idx}: {name}"),
            Dataset::Monoidal(Box::new(pointed)),
        ));
    }
    out
}

fn run_battery(
    name: &str,
    action: &ActionData,
    pointed: Option<&PointedData>,
    scope: Scope,
) -> String {
    let driver = Driver::new(action, pointed, SEED, scope, 48, RETRIES, TRIALS).unwrap();
    let mut cache = driver.fresh_cache();
    let mut rendered = String::new();
    let validation = driver.validate_battery();
    assert!(
        validation.all_passed(),
        "{name}: {:?}",
        validation.first_failure()
    );
    rendered.push_str(&render_report("validate", &validation));
    let mackey = driver.mackey_battery(&mut cache).unwrap();
    assert!(
        mackey.all_passed(),
        "{name}: mackey failure: {:?}",
        mackey.first_failure()
    );
    rendered.push_str(&render_report("mackey", &mackey));
    let coherence = driver.coherence_battery(&mut cache).unwrap();
    assert!(
        coherence.all_passed(),
        "{name}: coherence failure: {:?}",
        coherence.first_failure()
    );
    rendered.push_str(&render_report("coherence", &coherence));
    let adjunction = driver.adjunction_battery(&mut cache).unwrap();
    assert!(
        adjunction.all_passed(),
        "{name}: adjunction failure: {:?}",
        adjunction.first_failure()
    );
    rendered.push_str(&render_report("adjunction", &adjunction));
    let (_, tables) = driver.tables_battery().unwrap();
    assert!(
        tables.all_passed(),
        "{name}: table axiom failure: {:?}",
        tables.first_failure()
    );
    rendered.push_str(&render_report("tables", &tables));
    if pointed.is_some() {
        let green = driver.green_categorical_battery(&mut cache).unwrap();
        assert!(
            green.all_passed(),
            "{name}: green categorical failure: {:?}",
            green.first_failure()
        );
        rendered.push_str(&render_report("green", &green));
    }
    rendered
}

#[test]
fn criterion_7_property_suite_over_seeded_datasets() {
    let start = Instant::now();
    let datasets = property_datasets();
    assert!(datasets.len() >= 20);
    for (name, dataset) in &datasets {
        // Full scope on small groups; sampled tuples on the order-8 groups
        // keep the suite inside a sensible budget while still visiting every
        // subgroup conjugacy class and a generating set.
        let (action, pointed) = match dataset {
            Dataset::Plain(a) => (a, None),
            Dataset::Monoidal(p) => (p.action(), Some(p.as_ref())),
        };
        let scope = if action.group().order() >= 8 {
            Scope::Sampled
        } else {
            Scope::All
        };
        run_battery(name, action, pointed, scope);
    }
    // Determinism: identical seeds give byte-identical reports.
    for pick in [0usize, datasets.len() - 1] {
        let (name, dataset) = &datasets[pick];
        let (action, pointed) = match dataset {
            Dataset::Plain(a) => (a, None),
            Dataset::Monoidal(p) => (p.action(), Some(p.as_ref())),
        };
        let scope = if action.group().order() >= 8 {
            Scope::Sampled
        } else {
            Scope::All
        };
        let first = run_battery(name, action, pointed, scope);
        let second = run_battery(name, action, pointed, scope);
        assert_eq!(
            first, second,
            "{name}: reports differ between identical runs"
        );
    }
    println!(
        "acceptance criterion 7 (property suite over {} seeded datasets): PASS in {:?}",
        datasets.len(),
        start.elapsed()
    );
}
