//! Acceptance suite: one line per criterion with its outcome and runtime.
//! Exits with status 1 when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use affine_subroots::affine_roots::affine_system;
use affine_subroots::chains_pi::{pi_round_trip, satisfies_descent};
use affine_subroots::classification::constructors::{twisted_periodic, untwisted_periodic};
use affine_subroots::classification::{instantiate_all, table_types};
use affine_subroots::finite_roots::finite_closure;
use affine_subroots::oracle::closure;
use affine_subroots::subroot_model::{check_modulus_laws, classify_gradient, fit_coset_model, lift, GradientClass};
use affine_subroots::{
    affine_table, enumerate_closed, instantiate, verify_maximal, AffineRoot, AffineTypeLabel, ChainConfig, FiniteRoot,
    FiniteRootSystem, GradeFunction, InstanceGrid, OracleConfig, Params, SubrootSystem, TypeSum, Window,
};
use common::{ambients_up_to_rank, flbl, lbl, table_finite, table_twisted, table_untwisted, SemiClosedRange};

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn show(s: &BTreeSet<TypeSum>) -> String {
    s.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

fn finite_labels() -> Vec<&'static str> {
    vec![
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "C2", "C3", "C4",
        "C5", "C6", "C7", "C8", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8", "F4", "G2",
    ]
}

fn table1() -> Outcome {
    let labels = finite_labels();
    for s in &labels {
        let got: BTreeSet<TypeSum> =
            affine_subroots::classification::finite_table(flbl(s)).map_err(|e| e.to_string())?.into_iter().collect();
        let want = table_finite(flbl(s));
        ensure(got == want, || format!("{}: got [{}], expected [{}]", s, show(&got), show(&want)))?;
    }
    Ok(format!("{} finite types", labels.len()))
}

fn table2() -> Outcome {
    let mut labels: Vec<String> = Vec::new();
    for n in 1..=6 {
        labels.push(format!("A{}^1", n));
        if n >= 2 {
            labels.push(format!("B{}^1", n));
        }
        if n >= 3 {
            labels.push(format!("C{}^1", n));
        }
        if n >= 4 {
            labels.push(format!("D{}^1", n));
        }
    }
    labels.extend(["E6^1", "F4^1", "G2^1"].map(String::from));
    for s in &labels {
        let got = table_types(&affine_table(lbl(s)).map_err(|e| e.to_string())?);
        let want = table_untwisted(lbl(s));
        ensure(got == want, || format!("{}: got [{}], expected [{}]", s, show(&got), show(&want)))?;
    }
    Ok(format!("{} untwisted ambients", labels.len()))
}

fn table4() -> Outcome {
    let labels = ["A2^2", "A4^2", "A6^2", "A5^2", "A7^2", "D3^2", "D4^2", "D5^2", "D6^2", "E6^2", "D4^3"];
    let mut notes = Vec::new();
    for s in labels {
        let got = table_types(&affine_table(lbl(s)).map_err(|e| e.to_string())?);
        let want = table_twisted(lbl(s), SemiClosedRange::EveryProperSubset);
        ensure(got == want, || format!("{}: got [{}], expected [{}]", s, show(&got), show(&want)))?;
        let narrow = table_twisted(lbl(s), SemiClosedRange::Narrow);
        if narrow != want {
            let extra: BTreeSet<TypeSum> = want.difference(&narrow).cloned().collect();
            notes.push(format!("{} adds {}", s, show(&extra)));
        }
    }
    let mut msg = format!("{} twisted ambients", labels.len());
    if !notes.is_empty() {
        msg.push_str(&format!(
            "; semi-closed B_r+B_(n-r) taken over 1<=r<=n-1 (every proper I), beyond 2<=r<=n-2: {}",
            notes.join("; ")
        ));
    }
    Ok(msg)
}

fn labels_rank_le(max: u32) -> Vec<AffineTypeLabel> {
    ambients_up_to_rank(max)
}

fn oracle_maximality() -> Outcome {
    let mut positives = 0;
    for amb in labels_rank_le(3) {
        for (fam, params, sub) in instantiate_all(amb, &InstanceGrid::sample(5)).map_err(|e| e.to_string())? {
            let cfg = OracleConfig::scaled_for(&sub);
            let rep = verify_maximal(&sub, &cfg).map_err(|e| e.to_string())?;
            ensure(rep.maximal, || {
                format!("{} {:?} {:?} not maximal, witness {:?}", amb, fam.kind, params, rep.witness)
            })?;
            positives += 1;
        }
    }
    let mut negatives = 0;
    for amb in labels_rank_le(3) {
        if amb.is_a2n() {
            continue;
        }
        let sys = affine_system(amb).map_err(|e| e.to_string())?;
        let p = GradeFunction::zero(sys.gradient().clone());
        for q in [4, 6, 9] {
            let sub = if amb.twist == 1 { untwisted_periodic(amb, &p, q) } else { twisted_periodic(amb, &p, q) }
                .map_err(|e| e.to_string())?;
            let cfg = OracleConfig::scaled_for(&sub);
            let rep = verify_maximal(&sub, &cfg).map_err(|e| e.to_string())?;
            ensure(!rep.maximal && rep.witness.is_some(), || format!("{} q={} reported maximal", amb, q))?;
            negatives += 1;
        }
    }
    Ok(format!("{} maximal instances, {} composite negatives with witnesses", positives, negatives))
}

/// A random closed subsystem of the gradient, lifted with every grade.
fn random_lift(rng: &mut ChaCha8Rng, amb: AffineTypeLabel) -> Result<SubrootSystem, String> {
    let sys = affine_system(amb).map_err(|e| e.to_string())?;
    let grad = sys.gradient();
    let k = rng.gen_range(1..=3);
    let seed: Vec<FiniteRoot> = grad.roots().choose_multiple(rng, k).copied().collect();
    let closed = finite_closure(seed, grad);
    let fin = FiniteRootSystem::from_roots(grad.dim(), closed).map_err(|e| e.to_string())?;
    lift(&fin, amb).map_err(|e| e.to_string())
}

fn random_periodic(rng: &mut ChaCha8Rng, amb: AffineTypeLabel) -> Result<SubrootSystem, String> {
    let sys = affine_system(amb).map_err(|e| e.to_string())?;
    let q = rng.gen_range(1..=6);
    // Twisted grade functions must take values in mZ on long roots; redraw
    // until the constructor accepts one.
    for _ in 0..64 {
        let grad = sys.gradient().clone();
        let vals: Vec<i64> = (0..grad.rank()).map(|_| rng.gen_range(-3..=3)).collect();
        let p = GradeFunction::from_delta_units(grad, &vals).map_err(|e| e.to_string())?;
        let built = if amb.twist == 1 { untwisted_periodic(amb, &p, q) } else { twisted_periodic(amb, &p, q) };
        if let Ok(sub) = built {
            return Ok(sub);
        }
    }
    let p = GradeFunction::zero(sys.gradient().clone());
    if amb.twist == 1 { untwisted_periodic(amb, &p, q) } else { twisted_periodic(amb, &p, q) }
        .map_err(|e| e.to_string())
}

fn modulus_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let ambients = labels_rank_le(4);
    let mut pools = Vec::new();
    for &amb in &ambients {
        let inst = instantiate_all(amb, &InstanceGrid::full(5, 64)).map_err(|e| e.to_string())?;
        pools.push(inst.into_iter().map(|(_, _, s)| s).collect::<Vec<_>>());
    }
    let mut counts = [0usize; 3];
    for _ in 0..1000 {
        let i = rng.gen_range(0..ambients.len());
        let amb = ambients[i];
        let pick = rng.gen_range(0..3);
        let sub = match pick {
            0 => random_lift(&mut rng, amb)?,
            1 => pools[i].choose(&mut rng).expect("every ambient has families").clone(),
            _ if amb.is_a2n() => random_lift(&mut rng, amb)?,
            _ => random_periodic(&mut rng, amb)?,
        };
        counts[pick] += 1;
        ensure(sub.is_closed_subroot_system(), || format!("sampled system in {} is not closed", amb))?;
        let rep = check_modulus_laws(&sub);
        ensure(rep.passed, || format!("{}: {:?}", amb, rep.violations))?;
        let r = 2 * sub.max_n2().max(2) + 4;
        let fitted = fit_coset_model(&sub.window(r), amb, Window::new(r).map_err(|e| e.to_string())?)
            .map_err(|e| format!("{}: {}", amb, e))?;
        ensure(fitted == sub, || format!("{}: refit differs from the sampled model", amb))?;
    }
    Ok(format!("1000 systems ({} lifts, {} family instances, {} periodic)", counts[0], counts[1], counts[2]))
}

/// Closure of a few random roots of grade at most one δ, fitted on a
/// check window well inside the closure window.
fn random_window_system(rng: &mut ChaCha8Rng, amb: AffineTypeLabel) -> Result<SubrootSystem, String> {
    const CHECK: i64 = 24;
    let sys = affine_system(amb).map_err(|e| e.to_string())?;
    let near: Vec<AffineRoot> = sys.window(2);
    let k = rng.gen_range(1..=3);
    let seed: Vec<AffineRoot> = near.choose_multiple(rng, k).copied().collect();
    let cfg = OracleConfig::new(0, CHECK, 3 * CHECK).map_err(|e| e.to_string())?;
    let closed = closure(&seed, amb, &cfg).map_err(|e| e.to_string())?;
    let inside: Vec<AffineRoot> = closed.into_iter().filter(|x| x.t2.abs() <= CHECK).collect();
    fit_coset_model(&inside, amb, Window::new(CHECK).map_err(|e| e.to_string())?)
        .map_err(|e| format!("{} seed {:?}: {}", amb, seed, e))
}

fn trichotomy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let ambients = labels_rank_le(4);
    let twisted: Vec<AffineTypeLabel> = ambients.iter().copied().filter(|a| a.twist > 1 && !a.is_a2n()).collect();
    let untwisted: Vec<AffineTypeLabel> = ambients.iter().copied().filter(|a| a.twist == 1).collect();
    let mut tally = [0usize; 3];
    for _ in 0..500 {
        let amb = *twisted.choose(&mut rng).expect("nonempty");
        let sub = random_window_system(&mut rng, amb)?;
        let class = classify_gradient(&sub).map_err(|e| format!("{}: {}", amb, e))?;
        tally[class as usize] += 1;
    }
    for _ in 0..500 {
        let amb = *untwisted.choose(&mut rng).expect("nonempty");
        let sub = random_window_system(&mut rng, amb)?;
        let class = classify_gradient(&sub).map_err(|e| format!("{}: {}", amb, e))?;
        ensure(class != GradientClass::ProperSemiClosed, || format!("{} gave a semi-closed gradient", amb))?;
    }
    Ok(format!(
        "500 twisted (full {}, closed {}, semi-closed {}), 500 untwisted without semi-closed",
        tally[0], tally[1], tally[2]
    ))
}

fn pi_round_trips() -> Outcome {
    let mut n = 0;
    for amb in labels_rank_le(3) {
        for (fam, params, sub) in instantiate_all(amb, &InstanceGrid::sample(5)).map_err(|e| e.to_string())? {
            let ok = pi_round_trip(&sub, 16).map_err(|e| format!("{} {:?}: {}", amb, fam.kind, e))?;
            ensure(ok, || format!("{} {:?} {:?}: closure of the π-system differs", amb, fam.kind, params))?;
            n += 1;
        }
    }
    Ok(format!("{} systems", n))
}

fn chains() -> Outcome {
    let cfg = ChainConfig { max_depth: 3, prime_bound: 3, exhaustive: true, certify: true };
    let nodes = enumerate_closed(lbl("G2^1"), &cfg).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for node in &nodes {
        if let Some(pi) = node.parent_index {
            let parent = &nodes[pi].system;
            ensure(satisfies_descent(parent, &node.system), || {
                format!("descent fails from {} to {}", nodes[pi].result_type, node.result_type)
            })?;
            ensure(node.system.is_subset_of(parent), || format!("{} is not inside its parent", node.result_type))?;
            pairs += 1;
        }
    }
    let depth = nodes.iter().map(|n| n.depth).max().unwrap_or(0);
    Ok(format!(
        "{} nodes up to depth {}, {} parent-child pairs descend (gradient shrinks, or equal gradient with larger height)",
        nodes.len(),
        depth,
        pairs
    ))
}

fn root(ints: &[i64], t2: i64) -> AffineRoot {
    AffineRoot::new(FiniteRoot::from_ints(ints).expect("valid root"), t2)
}

fn goldens() -> Outcome {
    let d43 = instantiate(lbl("D4^3"), &Params::PsiD43 { perm: [1, 2, 3], ell: 1 }).map_err(|e| e.to_string())?;
    ensure(d43.contains(&root(&[1, 0, -1], 2)), || "ε1-ε3+δ missing from Ψ((1,2,3);1)".into())?;
    ensure(!d43.contains(&root(&[1, 1, -2], 4)), || "ε1+ε2-2ε3+2δ present in Ψ((1,2,3);1)".into())?;

    let a2 = instantiate(lbl("A2^2"), &Params::A2Prime { k: 0, q: 3 }).map_err(|e| e.to_string())?;
    ensure(a2.contains(&root(&[1], 1)), || "ε1+½δ missing from Ψ(0,3)".into())?;
    ensure(!a2.contains(&root(&[2], 4)), || "2ε1+2δ present in Ψ(0,3)".into())?;
    ensure(a2.contains(&root(&[2], 8)), || "2ε1+4δ missing from Ψ(0,3)".into())?;

    let e6 = instantiate(lbl("E6^2"), &Params::PsiPE6 { gamma: [0, 1, 1, 0] }).map_err(|e| e.to_string())?;
    for r in -3..=3 {
        ensure(e6.contains(&root(&[1, 1, 0, 0], 4 * r)), || format!("ε1+ε2+{}δ missing from Ψ_p", 2 * r))?;
        ensure(!e6.contains(&root(&[1, 0, 1, 0], 4 * r)), || format!("ε1+ε3+{}δ present in Ψ_p", 2 * r))?;
    }
    Ok("8 memberships, E6 pattern checked for r in -3..=3".into())
}

fn main() {
    let criteria = [
        Criterion { name: "finite maximal closed subsystems", budget: Duration::from_secs(1), run: table1 },
        Criterion { name: "untwisted classification rows", budget: Duration::from_secs(5), run: table2 },
        Criterion { name: "twisted classification rows", budget: Duration::from_secs(5), run: table4 },
        Criterion {
            name: "oracle maximality and composite negatives",
            budget: Duration::from_secs(60),
            run: oracle_maximality,
        },
        Criterion { name: "modulus laws and coset fitting", budget: Duration::from_secs(30), run: modulus_laws },
        Criterion { name: "gradient trichotomy", budget: Duration::from_secs(30), run: trichotomy },
        Criterion { name: "π-system round trip", budget: Duration::from_secs(30), run: pi_round_trips },
        Criterion { name: "chain termination and descent", budget: Duration::from_secs(60), run: chains },
        Criterion { name: "membership goldens", budget: Duration::from_secs(1), run: goldens },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > c.budget => Err(format!("{} but took {:.2?} (budget {:?})", msg, took, c.budget)),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {} {} [{:.2?}]: {}", i + 1, c.name, took, msg),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {} [{:.2?}]: {}", i + 1, c.name, took, msg);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
