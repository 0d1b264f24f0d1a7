//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kneser_lab::bounds::{alt_pi, cd, local_bound_from_witness_size, max_alt_fixed_perm, SignedVector};
use kneser_lab::coloring::{chromatic_number, local_chromatic_number, ChromaticValue};
use kneser_lab::fan::{exhaustive_fan_check, DEFAULT_LABELING_CAP};
use kneser_lab::hardness::{join_construction, verify_reduction};
use kneser_lab::kneser::{build_kneser, complete_ksubsets};
use kneser_lab::rainbow::{part_sizes, sweep_verify, SweepOptions, WitnessSize};
use kneser_lab::Hypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_chi(h: &Hypergraph) -> Result<usize, String> {
    match chromatic_number(h).value {
        ChromaticValue::Exact(x) => Ok(x),
        other => Err(format!("χ not exact: {other:?}")),
    }
}

fn lovasz() -> Outcome {
    let mut seen = Vec::new();
    for (n, k) in [(4, 2), (5, 2), (6, 2), (7, 3)] {
        let start = Instant::now();
        let kg = build_kneser(&complete_ksubsets(n, k).unwrap(), 2).unwrap();
        let chi = exact_chi(kg.kg())?;
        let expect = n - 2 * k + 2;
        check(chi == expect, || format!("KG({n},{k}): χ = {chi}, expected {expect}"))?;
        check(start.elapsed() < Duration::from_secs(10), || {
            format!("KG({n},{k}) took {:?}", start.elapsed())
        })?;
        seen.push(format!("({n},{k})={chi}"));
    }
    Ok(seen.join(" "))
}

fn alon_frankl_lovasz() -> Outcome {
    let mut seen = Vec::new();
    for (n, k, q) in [(6, 2, 3), (7, 2, 3), (9, 3, 3)] {
        let kg = build_kneser(&complete_ksubsets(n, k).unwrap(), q).unwrap();
        let chi = exact_chi(kg.kg())?;
        let expect = (n - q * (k - 1)).div_ceil(q - 1);
        check(chi == expect, || {
            format!("KG^{q}({n},{k}): χ = {chi}, expected {expect}")
        })?;
        seen.push(format!("({n},{k},{q})={chi}"));
    }
    Ok(seen.join(" "))
}

fn defect_formula() -> Outcome {
    let mut count = 0;
    for q in 2..=3 {
        for k in 1..=3 {
            for n in q * k..=8 {
                let d = cd(&complete_ksubsets(n, k).unwrap(), q).unwrap();
                let expect = n - q * (k - 1);
                check(d.complete && d.value == expect, || {
                    format!(
                        "cd^{q}([{n}],{k}) = {} (complete {}), expected {expect}",
                        d.value, d.complete
                    )
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn worked_example() -> Outcome {
    let x = SignedVector::new(3, vec![2, 2, 0, 0, 1, 3, 0, 3, 2]).unwrap();
    let id: Vec<usize> = (0..9).collect();
    let mut swapped = id.clone();
    swapped.swap(7, 8);
    let (a, b) = (alt_pi(&x, &id), alt_pi(&x, &swapped));
    check(a == 4 && b == 5, || format!("alt_id = {a}, alt_π = {b}"))?;
    Ok(format!("alt_id = {a}, alt_π = {b}"))
}

fn rainbow_petersen() -> Outcome {
    let base = complete_ksubsets(5, 2).unwrap();
    let opts = SweepOptions {
        r_mode: WitnessSize::Defect,
        max_t: Some(4),
        ..SweepOptions::default()
    };
    let r = sweep_verify(&base, 2, &opts).unwrap();
    check(r.r == 3, || format!("r = {}", r.r))?;
    check(r.exhaustive, || "not exhaustive".into())?;
    check(r.passed(), || {
        format!("{} counterexamples", r.tally.counterexamples.len())
    })?;
    check(r.tally.witnesses_found == r.tally.colorings_checked, || {
        "witness count mismatch".into()
    })?;
    Ok(format!(
        "{} canonical colorings, 0 counterexamples",
        r.tally.colorings_checked
    ))
}

fn rainbow_kg3() -> Outcome {
    let base = complete_ksubsets(7, 2).unwrap();
    check(part_sizes(4, 3) == vec![2, 1, 1], || "part sizes".into())?;
    let opts = SweepOptions {
        r_mode: WitnessSize::Defect,
        max_t: Some(2),
        ..SweepOptions::default()
    };
    let r = sweep_verify(&base, 3, &opts).unwrap();
    check(r.r == 4, || format!("r = {}", r.r))?;
    check(r.exhaustive, || "not exhaustive".into())?;
    check(r.tally.colorings_checked > 0, || "no proper 2-coloring found".into())?;
    check(r.passed(), || {
        format!("{} counterexamples", r.tally.counterexamples.len())
    })?;
    Ok(format!(
        "{} canonical 2-colorings, 0 counterexamples",
        r.tally.colorings_checked
    ))
}

fn fan() -> Outcome {
    let mut seen = Vec::new();
    for (q, n, m, labelings) in [(2, 2, 2, 256), (2, 2, 3, 1296), (3, 2, 2, 7776)] {
        let r = exhaustive_fan_check(q, n, m, None, DEFAULT_LABELING_CAP).unwrap();
        check(r.labelings == labelings, || {
            format!("({q},{n},{m}): {} labelings", r.labelings)
        })?;
        check(r.violations == 0, || {
            format!("({q},{n},{m}): {} violations", r.violations)
        })?;
        seen.push(format!("({q},{n},{m}) {}/{} proper", r.proper, r.labelings));
    }
    Ok(seen.join(", "))
}

fn hardness() -> Outcome {
    let mut count = 0;
    let mut verify = |g: &Hypergraph| -> Result<(), String> {
        let v = verify_reduction(g).map_err(|e| e.to_string())?;
        let alpha = alpha_brute(g);
        check(v.equal && v.alpha.value == alpha, || {
            format!("{:?}: max alt_id {} vs 2α = {}", g.edges(), v.max_alt_id(), 2 * alpha)
        })?;
        count += 1;
        Ok(())
    };
    for n in 1..=5 {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            verify(&graph_from_mask(n, mask))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        verify(&graph_from_mask(6, rng.gen_range(0..1 << 15)))?;
    }
    let j = join_construction(&graph_from_mask(2, 1)).unwrap();
    check(j.joined().edge_count() == 6, || "single-edge join".into())?;
    Ok(format!("{count} graphs"))
}

fn bound_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for i in 0..200 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=12);
        let q = 2 + i % 2;
        let h = random_hypergraph(&mut rng, n, m, 1, n.min(4));
        let kg = build_kneser(&h, q).unwrap();
        let chi = exact_chi(kg.kg())?;
        let d = cd(&h, q).unwrap();
        check(d.complete, || "cd incomplete".into())?;
        check(d.value.div_ceil(q - 1) <= chi, || {
            format!(
                "{:?} q={q}: ⌈cd/(q-1)⌉ = {} > χ = {chi}",
                h.edges(),
                d.value.div_ceil(q - 1)
            )
        })?;
        for _ in 0..5 {
            let pi = random_permutation(&mut rng, n);
            let a = max_alt_fixed_perm(&h, q, &pi).unwrap().value;
            let bound = (n - a).div_ceil(q - 1);
            check(bound <= chi, || {
                format!("{:?} q={q} π={pi:?}: bound {bound} > χ = {chi}", h.edges())
            })?;
            checked += 1;
        }
    }
    Ok(format!("200 hypergraphs, {checked} permutations, 0 violations"))
}

fn local_bounds() -> Outcome {
    let petersen = build_kneser(&complete_ksubsets(5, 2).unwrap(), 2).unwrap();
    let l = local_chromatic_number(petersen.kg(), 4).unwrap();
    let chi = exact_chi(petersen.kg())?;
    let d = cd(petersen.base(), 2).unwrap().value;
    check(l.complete && l.value == 3, || {
        format!("χ_ℓ(Petersen) = {} (complete {})", l.value, l.complete)
    })?;
    check(d.div_ceil(2) < l.value && l.value <= chi && chi == 3, || {
        "Petersen sandwich".into()
    })?;

    let mut instances: Vec<(Hypergraph, usize)> = vec![
        (complete_ksubsets(5, 2).unwrap(), 2),
        (complete_ksubsets(6, 2).unwrap(), 2),
        (complete_ksubsets(7, 2).unwrap(), 3),
        (complete_ksubsets(6, 2).unwrap(), 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    while instances.len() < 80 {
        let n = rng.gen_range(4..=7);
        let m = rng.gen_range(3..=8);
        let h = random_hypergraph(&mut rng, n, m, 2, 3);
        instances.push((h, if rng.gen_bool(0.5) { 2 } else { 3 }));
    }
    let mut exact = 0;
    for (h, p) in &instances {
        let kg = build_kneser(h, *p).unwrap();
        if kg.kg().edge_count() == 0 {
            continue;
        }
        let chi = exact_chi(kg.kg())?;
        let l = local_chromatic_number(kg.kg(), chi + 2).unwrap();
        if !l.complete {
            continue;
        }
        let d = cd(h, *p).unwrap().value;
        let bound = local_bound_from_witness_size(d, *p);
        check(bound <= l.value && l.value <= chi, || {
            format!("{:?} p={p}: bound {bound}, χ_ℓ {}, χ {chi}", h.edges(), l.value)
        })?;
        exact += 1;
    }
    Ok(format!(
        "χ_ℓ(Petersen) = 3; local defect bound held on {exact} exact instances"
    ))
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100_000 {
        let n = rng.gen_range(1..=14);
        let q = rng.gen_range(2..=4);
        let x: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=q)).collect();
        let pi = random_permutation(&mut rng, n);
        let greedy = alt_pi(&SignedVector::new(q, x.clone()).unwrap(), &pi);
        check(greedy == alt_dp(&x, &pi), || format!("alt_pi mismatch on {x:?} {pi:?}"))?;
    }

    let mut kg_cases = 0;
    let mut bases: Vec<(Hypergraph, usize)> = Vec::new();
    for n in 1..=8 {
        for k in 1..=n {
            let h = complete_ksubsets(n, k).unwrap();
            if h.edge_count() <= 15 {
                bases.push((h.clone(), 2));
                bases.push((h, 3));
            }
        }
    }
    for _ in 0..150 {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(0..=15);
        let h = random_hypergraph(&mut rng, n, m, 1, n);
        bases.push((h, rng.gen_range(2..=4)));
    }
    for (h, q) in &bases {
        let kg = build_kneser(h, *q).unwrap();
        let got: BTreeSet<Vec<usize>> = kg.kg().edges().iter().cloned().collect();
        let want: BTreeSet<Vec<usize>> = kg_edges_brute(h, *q).into_iter().collect();
        check(got == want, || format!("kg mismatch on {:?} q={q}", h.edges()))?;
        kg_cases += 1;
    }

    let mut cd_cases = 0;
    for i in 0..120 {
        let n = rng.gen_range(1..=8);
        let q = 2 + i % 2;
        let m = rng.gen_range(0..=12);
        let h = random_hypergraph(&mut rng, n, m, 1, n);
        let d = cd(&h, q).unwrap();
        let want = cd_brute(&h, q);
        check(d.complete && d.value == want, || {
            format!("cd mismatch on {:?} q={q}: {} vs {want}", h.edges(), d.value)
        })?;
        cd_cases += 1;
    }
    Ok(format!(
        "1e5 alt_pi cases, {kg_cases} kg instances, {cd_cases} cd instances"
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 11] = [
        ("Lovász value", lovasz, Duration::from_secs(40)),
        ("Alon-Frankl-Lovász value", alon_frankl_lovasz, Duration::from_secs(300)),
        ("defect formula", defect_formula, Duration::from_secs(60)),
        ("worked alternation example", worked_example, Duration::from_secs(1)),
        (
            "rainbow sweep p=2 on KG(5,2)",
            rainbow_petersen,
            Duration::from_secs(300),
        ),
        ("rainbow sweep p=3 on KG^3(7,2)", rainbow_kg3, Duration::from_secs(600)),
        ("Fan lemma exhaustive", fan, Duration::from_secs(60)),
        ("hardness reduction", hardness, Duration::from_secs(300)),
        ("bound soundness", bound_soundness, Duration::from_secs(600)),
        ("local bounds", local_bounds, Duration::from_secs(600)),
        ("oracle equivalences", oracles, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {:>2} {name}: {detail} [{} ms]", i + 1, elapsed.as_millis()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2} {name}: {why} [{} ms]", i + 1, elapsed.as_millis());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
