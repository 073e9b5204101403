use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;
use serde_json::{json, Value};

use super::matrices::{
    is_split_shape, max_entry, random_candidate, random_class_gn, split_pivot, to_u64, HStrategy,
};
use super::report::{run_suite, Job, Outcome, Relation, Report};
use crate::error::{Error, Result};
use crate::formulas::{self, LambdaSeq};
use crate::ideal::{
    i_n_r_a, j_h, lambda_ideal, parking_ideal, skeleton_ideal, Monomial, MonomialIdeal,
};
use crate::multigraph::{instance_rng, InstanceRng, Multigraph};
use crate::standard::{count_lambda_parking, count_standard};
use crate::IntegerMatrix;

pub(crate) fn dim(ideal: &MonomialIdeal) -> Result<BigInt> {
    count_standard(ideal).map(BigInt::from)
}

/// `M_G^(1)`, read as the full parking ideal when `n = 1`.
pub(crate) fn one_skeleton(g: &Multigraph) -> Result<MonomialIdeal> {
    skeleton_ideal(g, 1.min(g.n() - 1))
}

pub(crate) fn graph_json(g: &Multigraph) -> Value {
    serde_json::to_value(g).expect("graph serializes")
}

pub(crate) fn matrix_json(m: &IntegerMatrix) -> Value {
    serde_json::to_value(m).expect("matrix serializes")
}

fn positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidParameter(format!("{name} must be positive")));
    }
    Ok(())
}

/// Parking ideals against truncated Laplacians.
pub fn suite_matrix_tree(graphs: &[Multigraph]) -> Report {
    let started = Instant::now();
    let jobs = graphs
        .iter()
        .map(|g| {
            let g = g.clone();
            Job::new(
                json!({ "graph": graph_json(&g) }),
                Relation::Eq,
                move || {
                    let d = dim(&parking_ideal(&g)?)?;
                    let det = g.truncated_laplacian::<BigInt>().det();
                    Ok(Outcome::compare(Relation::Eq, &d, &det))
                },
            )
        })
        .collect();
    run_suite(
        "matrix-tree",
        json!({ "graphs": graphs.len() }),
        0,
        jobs,
        0,
        started,
    )
}

/// Complete graphs, complete multigraphs, a path, cycles, and `trials`
/// random multigraphs on at most `n_max` non-root vertices.
pub fn matrix_tree_corpus(n_max: usize, trials: usize, seed: u64) -> Result<Vec<Multigraph>> {
    positive("n_max", n_max as u64)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.push(Multigraph::complete(n, 1, 1)?);
        out.push(Multigraph::cycle(n)?);
    }
    for n in 1..=n_max.min(4) {
        for (a, b) in [(2, 1), (1, 2), (3, 2)] {
            out.push(Multigraph::complete(n, a, b)?);
        }
    }
    out.push(Multigraph::path(n_max.max(3))?);
    let mut rng = instance_rng(seed);
    for _ in 0..trials {
        let n = rng.random_range(1..=n_max);
        out.push(Multigraph::random(
            n,
            rng.random_range(1..=3),
            rng.random(),
        )?);
    }
    Ok(out)
}

pub fn suite_matrix_tree_seeded(n_max: usize, trials: usize, seed: u64) -> Result<Report> {
    let mut report = suite_matrix_tree(&matrix_tree_corpus(n_max, trials, seed)?);
    report.params = json!({ "n_max": n_max, "trials": trials });
    report.seed = seed;
    Ok(report)
}

fn skeleton_vs_signless(g: &Multigraph, relation: Relation) -> Result<Outcome> {
    let d = dim(&one_skeleton(g)?)?;
    let det = g.truncated_signless::<BigInt>().det();
    Ok(Outcome::compare(relation, &d, &det))
}

/// One-skeleton dimensions against signless determinants on root-deleted
/// complete multigraphs, with the exhaustive `G_{n,r}` and `K_{n+1}^{a,b}`
/// grids checked against their closed forms.
pub fn suite_rc(n_max: usize, a_max: u64, b_max: u64, trials: usize, seed: u64) -> Result<Report> {
    positive("n_max", n_max as u64)?;
    positive("a_max", a_max)?;
    positive("b_max", b_max)?;
    let started = Instant::now();
    let mut jobs = Vec::new();
    for n in 2..=n_max {
        for r in 0..=n {
            let g = Multigraph::g_n_r(n, r)?;
            let instance = json!({ "family": "g_n_r", "n": n, "r": r, "graph": graph_json(&g) });
            jobs.push(Job::new(instance, Relation::Eq, move || {
                let closed = formulas::det_q_gnr(n as u64, r as u64)?;
                let o = skeleton_vs_signless(&g, Relation::Eq)?;
                let agrees = o.det == closed.to_string();
                Ok(o.formula(closed, agrees))
            }));
        }
    }
    for n in 1..=n_max {
        for a in 1..=a_max {
            for b in 1..=b_max {
                let g = Multigraph::complete(n, a, b)?;
                let instance = json!({ "family": "complete", "n": n, "a": a, "b": b, "graph": graph_json(&g) });
                jobs.push(Job::new(instance, Relation::Eq, move || {
                    let closed = formulas::dim_skel1_kab(n as u64, a, b);
                    let x = a as i64 + (n as i64 - 2) * b as i64;
                    let via_g = formulas::scaled_by_factorial(
                        n as u64,
                        &formulas::g_poly(n as u64, b as i64, x),
                    )?;
                    let o = skeleton_vs_signless(&g, Relation::Eq)?;
                    let agrees = o.det == closed.to_string() && via_g == closed;
                    Ok(o.formula(&closed, agrees).note("g_form", via_g.to_string()))
                }));
            }
        }
    }
    let mut rng = instance_rng(seed);
    for _ in 0..trials {
        let n = rng.random_range(1..=n_max);
        let a = rng.random_range(1..=a_max);
        let b = rng.random_range(1..=b_max);
        let s: u64 = rng.random();
        let g = Multigraph::random_root_deletion(n, a, b, s)?;
        let instance = json!({ "family": "root-deletion", "n": n, "a": a, "b": b, "seed": s, "graph": graph_json(&g) });
        jobs.push(Job::new(instance, Relation::Eq, move || {
            skeleton_vs_signless(&g, Relation::Eq)
        }));
    }
    let params = json!({ "n_max": n_max, "a_max": a_max, "b_max": b_max, "trials": trials });
    Ok(run_suite("rc", params, seed, jobs, 0, started))
}

/// `dim R/M_G^(1) >= det Q~_G` on random multigraphs, the path witness
/// and `K_4` first.
pub fn suite_ineq(n_max: usize, mult_max: u64, trials: usize, seed: u64) -> Result<Report> {
    positive("n_max", n_max as u64)?;
    positive("mult_max", mult_max)?;
    let started = Instant::now();
    let mut graphs = vec![
        ("path", Multigraph::path(3)?, None),
        ("complete", Multigraph::complete(3, 1, 1)?, None),
    ];
    let mut rng = instance_rng(seed);
    for _ in 0..trials {
        let n = rng.random_range(1..=n_max);
        let s: u64 = rng.random();
        graphs.push(("random", Multigraph::random(n, mult_max, s)?, Some(s)));
    }
    let jobs = graphs
        .into_iter()
        .map(|(family, g, s)| {
            let instance = json!({ "family": family, "seed": s, "graph": graph_json(&g) });
            Job::new(instance, Relation::Geq, move || {
                let d = dim(&one_skeleton(&g)?)?;
                let det = g.truncated_signless::<BigInt>().det();
                let slack = &d - &det;
                Ok(Outcome::compare(Relation::Geq, &d, &det).note("slack", slack.to_string()))
            })
        })
        .collect();
    let params = json!({ "n_max": n_max, "mult_max": mult_max, "trials": trials });
    Ok(run_suite("ineq", params, seed, jobs, 0, started))
}

fn mt_job(instance: Value, h: IntegerMatrix) -> Job {
    Job::new(instance, Relation::Geq, move || {
        let psd = h.is_psd()?;
        let d = dim(&j_h(&h)?)?;
        let det = h.det();
        Ok(Outcome::compare(Relation::Geq, &d, &det)
            .require(psd)
            .note("psd", psd)
            .note("slack", (&d - &det).to_string()))
    })
}

/// `dim R/J_H >= det H` on `trials` positive semidefinite members of G_n
/// with entries at most `entry_max`. Candidates outside G_n, over the
/// entry bound, or not positive semidefinite are discarded and counted.
pub fn suite_mt(n_max: usize, entry_max: u64, trials: usize, seed: u64) -> Result<Report> {
    positive("n_max", n_max as u64)?;
    let started = Instant::now();
    let mut jobs = Vec::new();
    let fixed: [(&str, &[&[i64]]); 3] = [
        ("fixed", &[&[2, 1], &[1, 2]]),
        ("fixed", &[&[2, 1, 0], &[1, 2, 1], &[0, 1, 1]]),
        ("fixed", &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]),
    ];
    for (label, rows) in fixed {
        let h = IntegerMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )?;
        jobs.push(mt_job(
            json!({ "strategy": label, "h": matrix_json(&h) }),
            h,
        ));
    }
    let mut rng = instance_rng(seed);
    let (mut accepted, mut discarded, mut attempts) = (0, 0u64, 0usize);
    let limit = BigInt::from(entry_max);
    while accepted < trials && attempts < trials.saturating_mul(1000).max(1000) {
        attempts += 1;
        let strategy = HStrategy::ALL[attempts % 3];
        let n = rng.random_range(1..=n_max);
        let h = random_candidate(strategy, n, entry_max, &mut rng);
        if !h.in_class_gn() || max_entry(&h) > limit || !h.is_psd()? {
            discarded += 1;
            continue;
        }
        accepted += 1;
        jobs.push(mt_job(
            json!({ "strategy": strategy, "h": matrix_json(&h) }),
            h,
        ));
    }
    if accepted < trials {
        jobs.push(Job::new(
            json!({ "strategy": "shortfall" }),
            Relation::Geq,
            move || {
                Err(Error::GuardExceeded {
                    what: "candidate attempts",
                    size: attempts as u128,
                    limit: accepted as u128,
                })
            },
        ));
    }
    let params = json!({ "n_max": n_max, "entry_max": entry_max, "trials": trials });
    Ok(run_suite("mt", params, seed, jobs, discarded, started))
}

/// Colon equality, the dimension recurrence and the alternating theta sum
/// for `I_{n,r}^<a>` over `1 <= n <= n_max`, `0 <= r <= n`, `2 <= a <= a_max`.
pub fn suite_lemma1(n_max: usize, a_max: u64) -> Result<Report> {
    positive("n_max", n_max as u64)?;
    let started = Instant::now();
    let mut jobs = Vec::new();
    for n in 1..=n_max {
        for r in 0..=n {
            for a in 2..=a_max {
                let instance = json!({ "n": n, "r": r, "a": a });
                jobs.push(Job::new(instance, Relation::Eq, move || {
                    let ideal = i_n_r_a(n, r, a)?;
                    let d = dim(&ideal)?;
                    let sum = formulas::lemma2_sum(n as u64, r as u64, a)?;
                    if r == 0 {
                        let closed = formulas::lemma2_closed(n as u64, a)?;
                        let agrees = sum == d;
                        return Ok(Outcome::compare(Relation::Eq, &d, &closed).formula(sum, agrees));
                    }
                    let prev = i_n_r_a(n, r - 1, a)?;
                    let colon = prev.colon(&Monomial::var_power(n, n - r, 1))?;
                    let colon_ok = colon.equals(&ideal)?;
                    let rec = dim(&prev)? - dim(&i_n_r_a(n - 1, r - 1, a)?)?;
                    let agrees = sum == d;
                    Ok(Outcome::compare(Relation::Eq, &d, &rec)
                        .formula(sum, agrees)
                        .require(colon_ok)
                        .note("colon", colon_ok))
                }));
            }
        }
    }
    Ok(run_suite(
        "lemma1",
        json!({ "n_max": n_max, "a_max": a_max }),
        0,
        jobs,
        0,
        started,
    ))
}

/// `I_{n,n}^<a> = I_{n,0}^<a-1>` as ideals for `n <= n_max`, `2 <= a <= a_max`,
/// and the companion numeric identity for `n <= numeric_n_max` at
/// `a` in `-5..=0` and `2..=10`.
pub fn suite_remark(n_max: usize, a_max: u64, numeric_n_max: u64) -> Result<Report> {
    let started = Instant::now();
    let mut jobs = Vec::new();
    for n in 1..=n_max {
        for a in 2..=a_max {
            let instance = json!({ "kind": "ideal", "n": n, "a": a });
            jobs.push(Job::new(instance, Relation::Eq, move || {
                let lhs = i_n_r_a(n, n, a)?;
                let rhs = i_n_r_a(n, 0, a - 1)?;
                let same = lhs.equals(&rhs)?;
                Ok(Outcome::compare(Relation::Eq, &dim(&lhs)?, &dim(&rhs)?)
                    .require(same)
                    .note("equal_ideals", same))
            }));
        }
    }
    for n in 0..=numeric_n_max {
        for a in (-5..=0).chain(2..=10) {
            jobs.push(Job::new(
                json!({ "kind": "numeric", "n": n, "a": a }),
                Relation::Eq,
                move || {
                    let (l, r) = formulas::remark_sides(n, a)?;
                    Ok(Outcome::compare(Relation::Eq, &l, &r))
                },
            ));
        }
    }
    let params = json!({ "n_max": n_max, "a_max": a_max, "numeric_n_max": numeric_n_max });
    Ok(run_suite("remark", params, 0, jobs, 0, started))
}

/// Steck determinants against brute force and standard monomials for every
/// `lambda` with `n <= n_max`, `lambda_1 <= lambda_max`; then `n! f_n^b(x)`
/// and `n! g_n^b(x)` on progressions with `n <= ap_n_max`, `x, b <= ap_max`.
pub fn suite_steck(n_max: usize, lambda_max: u64, ap_n_max: usize, ap_max: u64) -> Result<Report> {
    let started = Instant::now();
    let mut jobs = Vec::new();
    for n in 1..=n_max {
        for lambda in LambdaSeq::all(n, lambda_max) {
            let instance = json!({ "kind": "lambda", "lambda": lambda.as_slice() });
            jobs.push(Job::new(instance, Relation::Eq, move || {
                let d = dim(&lambda_ideal(lambda.as_slice())?)?;
                let brute = BigInt::from(count_lambda_parking(lambda.as_slice())?);
                let steck = formulas::steck_count(&lambda)?;
                let agrees = steck == d;
                Ok(Outcome::compare(Relation::Eq, &d, &brute).formula(steck, agrees))
            }));
        }
    }
    for n in 1..=ap_n_max {
        for x in 1..=ap_max {
            for b in 1..=ap_max {
                for kind in ["f", "g"] {
                    let lambda = if kind == "f" {
                        LambdaSeq::arithmetic(n, x, b)?
                    } else {
                        LambdaSeq::hook(n, x, b)?
                    };
                    let instance = json!({ "kind": kind, "n": n, "x": x, "b": b, "lambda": lambda.as_slice() });
                    jobs.push(Job::new(instance, Relation::Eq, move || {
                        let poly = if kind == "f" {
                            formulas::f_poly(n as u64, b as i64, x as i64)
                        } else {
                            formulas::g_poly(n as u64, b as i64, x as i64)
                        };
                        let closed = formulas::scaled_by_factorial(n as u64, &poly)?;
                        let steck = formulas::steck_count(&lambda)?;
                        let d = dim(&lambda_ideal(lambda.as_slice())?)?;
                        let agrees = closed == steck;
                        Ok(Outcome::compare(Relation::Eq, &d, &steck).formula(closed, agrees))
                    }));
                }
            }
        }
    }
    let params =
        json!({ "n_max": n_max, "lambda_max": lambda_max, "ap_n_max": ap_n_max, "ap_max": ap_max });
    Ok(run_suite("steck", params, 0, jobs, 0, started))
}

fn root_split_jobs(g: Multigraph, j: usize, instance: Value) -> [Job; 2] {
    let det_instance = {
        let mut v = instance.clone();
        v["identity"] = "det-root-split".into();
        v
    };
    let mut dim_instance = instance;
    dim_instance["identity"] = "dim-root-split".into();
    let g2 = g.clone();
    [
        Job::new(det_instance, Relation::Eq, move || {
            let lhs = g.truncated_signless::<BigInt>().det();
            let deleted = g.delete_root_edge(j)?.truncated_signless::<BigInt>().det();
            let merged = g.merge_into_root(j)?.truncated_signless::<BigInt>().det();
            Ok(Outcome::compare(Relation::Eq, &lhs, &(&deleted + &merged))
                .note("deleted", deleted.to_string())
                .note("merged", merged.to_string()))
        }),
        Job::new(dim_instance, Relation::Eq, move || {
            let lhs = dim(&one_skeleton(&g2)?)?;
            let deleted = dim(&one_skeleton(&g2.delete_root_edge(j)?)?)?;
            let merged = dim(&one_skeleton(&g2.merge_into_root(j)?)?)?;
            Ok(Outcome::compare(Relation::Eq, &lhs, &(&deleted + &merged))
                .note("deleted", deleted.to_string())
                .note("merged", merged.to_string()))
        }),
    ]
}

/// The pieces of `H` after pivoting: the permuted matrix, `H_1`, `H_2`, `T`.
struct Split {
    hp: IntegerMatrix,
    r: usize,
    b: BigInt,
    h1: IntegerMatrix,
    h2: IntegerMatrix,
    t: IntegerMatrix,
}

fn split(h: &IntegerMatrix) -> Result<Split> {
    let p =
        split_pivot(h).ok_or_else(|| Error::InvalidParameter("no pivot for order < 2".into()))?;
    let hp = h.permuted(&p.perm)?;
    if !is_split_shape(&hp, p.r, &p.b) {
        return Err(Error::Domain(format!(
            "pivot order {:?} lacks the split shape",
            p.perm
        )));
    }
    let r = p.r;
    let mut h1 = hp.principal_submatrix(&(0..=r).collect::<Vec<_>>())?;
    h1.set(r, r, p.b.clone());
    let h2 = hp.minor(r);
    let mut t = hp.clone();
    t.set(r, r, p.b.clone());
    Ok(Split {
        hp,
        r,
        b: p.b,
        h1,
        h2,
        t,
    })
}

fn h_split_jobs(h: IntegerMatrix, instance: Value) -> Result<[Job; 2]> {
    let s = split(&h)?;
    let mut base = instance;
    base["perm"] = json!(split_pivot(&h).map(|p| p.perm));
    base["r"] = json!(s.r);
    base["b"] = json!(s.b.to_string());
    let mut det_instance = base.clone();
    det_instance["identity"] = "det-entry-split".into();
    let mut dim_instance = base;
    dim_instance["identity"] = "dim-colon-split".into();
    let h_det = h.clone();
    let (hp, r, b, h2, t) = (s.hp.clone(), s.r, s.b.clone(), s.h2.clone(), s.t);
    let det_job = Job::new(det_instance, Relation::Eq, move || {
        let lhs = h_det.det();
        let rhs = (hp.get(r, r) - &b) * h2.det() + t.det();
        Ok(Outcome::compare(Relation::Eq, &lhs, &rhs).require(hp.det() == lhs))
    });
    let dim_job = Job::new(dim_instance, Relation::Eq, move || {
        let (hp, r, b) = (&s.hp, s.r, &s.b);
        let n = hp.order();
        let lhs = dim(&j_h(&h)?)?;
        let jh1 = j_h(&s.h1)?;
        let tail: BigInt = (r + 1..n).map(|l| hp.get(l, l) - b).product();
        let rhs = &tail * dim(&jh1)? + (hp.get(r, r) - b) * dim(&j_h(&s.h2)?)?;
        let colon = j_h(hp)?.colon(&Monomial::var_power(n, r, to_u64(&(hp.get(r, r) - b))))?;
        let mut gens: Vec<Monomial> = jh1
            .generators()
            .iter()
            .map(|g| {
                let mut e = g.exponents().to_vec();
                e.resize(n, 0);
                Monomial::new(e)
            })
            .collect();
        gens.extend((r + 1..n).map(|l| Monomial::var_power(n, l, to_u64(&(hp.get(l, l) - b)))));
        let colon_ok = colon.equals(&MonomialIdeal::new(n, gens)?)?;
        let permuted_ok = dim(&j_h(hp)?)? == lhs;
        Ok(Outcome::compare(Relation::Eq, &lhs, &rhs)
            .require(permuted_ok)
            .note("colon_matches", colon_ok))
    });
    Ok([det_job, dim_job])
}

fn root_edge_choice(g: &Multigraph, rng: &mut InstanceRng) -> Option<usize> {
    let ends: Vec<usize> = (1..=g.n()).filter(|&j| g.multiplicity(0, j) >= 1).collect();
    (!ends.is_empty()).then(|| ends[rng.random_range(0..ends.len())])
}

/// The two root-edge splittings on `trials` rooted multigraphs and the two
/// `J_H` splittings on `trials` members of G_n. Multigraphs without a root
/// edge are skipped and counted.
pub fn suite_decomp(trials: usize, seed: u64) -> Result<Report> {
    let started = Instant::now();
    let mut rng = instance_rng(seed);
    let mut jobs = Vec::new();
    let mut skipped = 0;
    let k4 = Multigraph::complete(3, 1, 1)?;
    jobs.extend(root_split_jobs(
        k4.clone(),
        3,
        json!({ "source": "fixed", "j": 3, "graph": graph_json(&k4) }),
    ));
    let mut made = 1;
    while made < trials {
        let n = rng.random_range(2..=5);
        let s: u64 = rng.random();
        let (source, g) = if made % 2 == 0 {
            (
                "root-deletion",
                Multigraph::random_root_deletion(
                    n,
                    rng.random_range(1..=3),
                    rng.random_range(1..=3),
                    s,
                )?,
            )
        } else {
            ("random", Multigraph::random(n, rng.random_range(1..=3), s)?)
        };
        let Some(j) = root_edge_choice(&g, &mut rng) else {
            skipped += 1;
            continue;
        };
        made += 1;
        let instance = json!({ "source": source, "seed": s, "j": j, "graph": graph_json(&g) });
        jobs.extend(root_split_jobs(g, j, instance));
    }
    let q = k4.truncated_signless::<BigInt>();
    jobs.extend(h_split_jobs(
        q.clone(),
        json!({ "source": "fixed", "h": matrix_json(&q) }),
    )?);
    for _ in 1..trials {
        let n = rng.random_range(2..=5);
        let h = random_class_gn(n, 6, &mut rng);
        jobs.extend(h_split_jobs(
            h.clone(),
            json!({ "source": "random", "h": matrix_json(&h) }),
        )?);
    }
    // Group trials by identity so each block of `trials` ids is one identity.
    const ORDER: [&str; 4] = [
        "det-root-split",
        "dim-root-split",
        "det-entry-split",
        "dim-colon-split",
    ];
    jobs.sort_by_key(|j| ORDER.iter().position(|k| j.instance()["identity"] == *k));
    Ok(run_suite(
        "decomp",
        json!({ "trials": trials }),
        seed,
        jobs,
        skipped,
        started,
    ))
}
