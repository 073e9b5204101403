use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;
use serde_json::{json, Value};

use super::matrices::{random_candidate, random_permutation, HStrategy};
use super::report::{run_suite, Job, Outcome, Relation, Report};
use super::suites::{dim, graph_json, matrix_json, one_skeleton};
use crate::error::{Error, Result};
use crate::ideal::{j_h, parking_ideal, skeleton_ideal, MonomialIdeal};
use crate::linalg::COFACTOR_MAX_ORDER;
use crate::multigraph::{instance_rng, Multigraph};
use crate::standard::{
    count_standard, count_standard_ie, enumerate_standard, is_g_parking, ArtinianBox,
};
use crate::IntegerMatrix;

/// Generator count above which the inclusion-exclusion oracle is skipped.
const IE_PROPS_LIMIT: usize = 16;
/// Box volume above which the parking predicate scan is skipped.
const PARKING_SCAN_LIMIT: u64 = 200_000;

fn with_kind(kind: &str, mut v: Value) -> Value {
    v["property"] = kind.into();
    v
}

fn oracle_job(instance: Value, ideal: MonomialIdeal) -> Job {
    Job::new(instance, Relation::Eq, move || {
        let walk = count_standard(&ideal)?;
        let ie = count_standard_ie(&ideal)?;
        let listed = enumerate_standard(&ideal)?.len();
        let agrees = walk == num_bigint::BigUint::from(listed);
        Ok(Outcome::compare(Relation::Eq, &walk, &ie).formula(listed, agrees))
    })
}

/// Every `p` in the box of `M_G` is G-parking exactly when it is standard.
fn parking_job(instance: Value, g: Multigraph) -> Job {
    Job::new(instance, Relation::Eq, move || {
        let ideal = parking_ideal(&g)?;
        let standard: BTreeSet<Vec<u64>> = enumerate_standard(&ideal)?
            .into_iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        let bounds = ArtinianBox::of(&ideal)?.bounds().to_vec();
        let mut parking = BTreeSet::new();
        let mut p = vec![0u64; g.n()];
        if bounds.iter().all(|&b| b > 0) {
            'odometer: loop {
                if is_g_parking(&g, &p)? {
                    parking.insert(p.clone());
                }
                for i in 0..p.len() {
                    p[i] += 1;
                    if p[i] < bounds[i] {
                        continue 'odometer;
                    }
                    p[i] = 0;
                }
                break;
            }
        }
        // Outside the box some singleton set already fails.
        let outside = (0..g.n()).all(|i| {
            let mut q = vec![0; g.n()];
            q[i] = bounds[i];
            !is_g_parking(&g, &q).unwrap_or(true)
        });
        Ok(
            Outcome::compare(Relation::Eq, &parking.len(), &standard.len())
                .require(parking == standard && outside),
        )
    })
}

fn psd_jobs(label: &str, m: IntegerMatrix, jobs: &mut Vec<Job>) {
    let base = json!({ "matrix": label, "m": matrix_json(&m) });
    let n = m.order();
    let mm = m.clone();
    jobs.push(Job::new(
        with_kind("hadamard", base.clone()),
        Relation::Geq,
        move || {
            let psd = mm.is_psd()?;
            Ok(
                Outcome::compare(Relation::Geq, &mm.diagonal_product(), &mm.det())
                    .require(psd)
                    .note("psd", psd),
            )
        },
    ));
    for k in 1..n {
        let mm = m.clone();
        let mut inst = with_kind("fischer", base.clone());
        inst["split"] = k.into();
        jobs.push(Job::new(inst, Relation::Geq, move || {
            let a = mm.principal_submatrix(&(0..k).collect::<Vec<_>>())?;
            let c = mm.principal_submatrix(&(k..n).collect::<Vec<_>>())?;
            Ok(Outcome::compare(
                Relation::Geq,
                &(a.det() * c.det()),
                &mm.det(),
            ))
        }));
    }
    jobs.push(Job::new(
        with_kind("determinant-oracles", base),
        Relation::Eq,
        move || {
            let det = m.det();
            let at_zero = m.char_poly().eval(&BigInt::from(0));
            let signed = if n.is_multiple_of(2) {
                at_zero
            } else {
                -at_zero
            };
            let o = Outcome::compare(Relation::Eq, &det, &signed);
            if n <= COFACTOR_MAX_ORDER {
                let cof = m.det_cofactor()?;
                let agrees = cof == det;
                return Ok(o.formula(cof, agrees));
            }
            Ok(o)
        },
    ));
}

fn graph_jobs(
    g: Multigraph,
    perm: Vec<usize>,
    jobs: &mut Vec<Job>,
    skipped: &mut u64,
) -> Result<()> {
    let n = g.n();
    let base = json!({ "graph": graph_json(&g) });
    for k in 0..n {
        let ideal = skeleton_ideal(&g, k)?;
        let mut inst = with_kind("oracle-agreement", base.clone());
        inst["k"] = k.into();
        if ideal.generators().len() <= IE_PROPS_LIMIT {
            jobs.push(oracle_job(inst, ideal));
        } else {
            *skipped += 1;
        }
    }
    let volume = ArtinianBox::of(&parking_ideal(&g)?)?.volume();
    if volume <= PARKING_SCAN_LIMIT.into() {
        jobs.push(parking_job(
            with_kind("parking-equivalence", base.clone()),
            g.clone(),
        ));
    } else {
        *skipped += 1;
    }
    for k in 0..n.saturating_sub(1) {
        let gg = g.clone();
        let mut inst = with_kind("skeleton-monotonicity", base.clone());
        inst["k"] = k.into();
        jobs.push(Job::new(inst, Relation::Geq, move || {
            let small = skeleton_ideal(&gg, k)?;
            let big = skeleton_ideal(&gg, k + 1)?;
            let nested = small.is_subideal_of(&big)?;
            Ok(Outcome::compare(Relation::Geq, &dim(&small)?, &dim(&big)?)
                .require(nested)
                .note("nested", nested))
        }));
    }
    let mut inst = with_kind("permutation-invariance", base);
    inst["perm"] = json!(perm);
    jobs.push(Job::new(inst, Relation::Eq, move || {
        let h = g.relabel(&perm)?;
        let d = dim(&one_skeleton(&g)?)?;
        let dh = dim(&one_skeleton(&h)?)?;
        let dets_ok = g.truncated_signless::<BigInt>().det()
            == h.truncated_signless::<BigInt>().det()
            && g.truncated_laplacian::<BigInt>().det() == h.truncated_laplacian::<BigInt>().det();
        let ideal_ok = one_skeleton(&g)?
            .permute_variables(&perm)?
            .equals(&one_skeleton(&h)?)?;
        Ok(Outcome::compare(Relation::Eq, &d, &dh).require(dets_ok && ideal_ok))
    }));
    Ok(())
}

/// Oracle agreement, parking equivalence, skeleton monotonicity and
/// nesting, relabeling invariance, and the Hadamard and Fischer bounds on
/// every positive semidefinite matrix of the corpus.
pub fn suite_props(n_max: usize, trials: usize, seed: u64) -> Result<Report> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be positive".into()));
    }
    let started = Instant::now();
    let mut rng = instance_rng(seed);
    let mut jobs = Vec::new();
    let mut skipped = 0;
    let mut graphs = vec![Multigraph::path(3)?];
    graphs.extend(
        (1..=n_max.min(4))
            .map(|n| Multigraph::complete(n, 1, 1))
            .collect::<Result<Vec<_>>>()?,
    );
    for _ in 0..trials {
        let n = rng.random_range(1..=n_max);
        graphs.push(Multigraph::random(
            n,
            rng.random_range(1..=2),
            rng.random(),
        )?);
    }
    for g in graphs {
        let perm = random_permutation(g.n(), &mut rng);
        let lap = g.laplacians::<BigInt>();
        for (label, m) in [
            ("laplacian", lap.laplacian),
            ("signless", lap.signless),
            ("truncated-laplacian", lap.truncated_laplacian),
            ("truncated-signless", lap.truncated_signless),
        ] {
            psd_jobs(label, m, &mut jobs);
        }
        graph_jobs(g, perm, &mut jobs, &mut skipped)?;
    }
    for _ in 0..trials {
        let n = rng.random_range(1..=n_max);
        let gram = random_candidate(HStrategy::Gram, n, 6, &mut rng);
        let perm = random_permutation(n, &mut rng);
        let inst = json!({ "property": "jh-permutation-invariance", "h": matrix_json(&gram), "perm": perm });
        let h = gram.clone();
        jobs.push(Job::new(inst, Relation::Eq, move || {
            let hp = h.permuted(&perm)?;
            Ok(
                Outcome::compare(Relation::Eq, &dim(&j_h(&h)?)?, &dim(&j_h(&hp)?)?)
                    .require(h.det() == hp.det()),
            )
        }));
        psd_jobs("gram", gram, &mut jobs);
    }
    Ok(run_suite(
        "props",
        json!({ "n_max": n_max, "trials": trials }),
        seed,
        jobs,
        skipped,
        started,
    ))
}
