//! One PASS/FAIL line per acceptance criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssr_core::atsp::{brute_force_tour, exact_max_atsp, min12_to_max, overlap_graph, Objective, WeightedDigraph};
use ssr_core::backward::{extract_assignment, normalize};
use ssr_core::bounds::{compression_base, length_base};
use ssr_core::forward::build_superstring;
use ssr_core::gadgets::{reduce, GadgetVariant, Reduction};
use ssr_core::hybrid::{
    build_hybrid, random_e3, template_triple, Assignment, BuildOptions, HybridInstance, MatchingStrategy,
};
use ssr_core::solvers::{brute_force_superstring, exact_superstring, greedy_superstring};
use ssr_core::superstring::{
    compression, is_superstring, merge_in_order, orbit_stats, AuxTag, GString, StringSet, Symbol,
};

type Criterion = (&'static str, Duration, fn() -> Outcome);

const VARIANTS: [GadgetVariant; 2] = [GadgetVariant::B4, GadgetVariant::A6];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn instance(seed: u64) -> HybridInstance {
    let mut r = rng(seed);
    let nvars = 3 * (1 + (seed as usize) % 2);
    let strategy = if seed.is_multiple_of(2) {
        MatchingStrategy::Adjacent
    } else {
        MatchingStrategy::Shifted
    };
    build_hybrid(
        &random_e3(nvars, &mut r),
        BuildOptions {
            strategy,
            any_occurrence_count: false,
        },
    )
    .expect("generated instances are valid")
}

fn random_set(r: &mut ChaCha8Rng) -> StringSet {
    let target = r.gen_range(1..=7);
    let alphabet = r.gen_range(2..=6);
    let mut words: Vec<Vec<u32>> = Vec::new();
    let inside = |a: &[u32], b: &[u32]| b.len() >= a.len() && b.windows(a.len()).any(|x| x == a);
    for _ in 0..200 {
        if words.len() == target {
            break;
        }
        let len = r.gen_range(1..=5);
        let w: Vec<u32> = (0..len).map(|_| r.gen_range(0..alphabet)).collect();
        if words.iter().all(|o| !inside(&w, o) && !inside(o, &w)) {
            words.push(w);
        }
    }
    let strings = words
        .iter()
        .map(|w| GString::new(w.iter().map(|&c| Symbol::aux(c, AuxTag::C)).collect()).unwrap())
        .collect();
    StringSet::new(strings).unwrap()
}

/// u(ψ_s) ≤ |s| − (5m2 + C·m3 + 7n), plus |normalize(s)| ≤ |s|.
fn backward_ok(h: &HybridInstance, red: &Reduction, s: &[Symbol]) -> Result<(bool, bool), String> {
    let ns = normalize(s, h, red).map_err(|e| e.to_string())?;
    let psi = extract_assignment(&ns, h, red).map_err(|e| e.to_string())?;
    let u = h.unsat_count(&psi).map_err(|e| e.to_string())?;
    let monotone = ns.string.len() <= s.len() && ns.trace.windows(2).all(|w| w[1] <= w[0]);
    Ok((u + length_base(h.counts(), red.variant) <= s.len(), monotone))
}

fn structural_totals() -> Outcome {
    let h = build_hybrid(&template_triple(), BuildOptions::default()).unwrap();
    let c = h.counts();
    let b4 = reduce(&h, GadgetVariant::B4).unwrap().strings.total_letters();
    let a6 = reduce(&h, GadgetVariant::A6).unwrap().strings.total_letters();
    let ok = (c.n, c.m2, c.m3) == (3, 90, 3) && b4 == 840 && a6 == 864;
    outcome(ok, format!("n={} m2={} m3={} b4={b4} a6={a6}", c.n, c.m2, c.m3))
}

fn orbit_bound() -> Outcome {
    let mut bad = Vec::new();
    let mut terminals = 0;
    for seed in 0..50 {
        let h = instance(1000 + seed);
        let red = reduce(&h, GadgetVariant::B4).unwrap();
        let orbit = orbit_stats(red.strings.strings()).max;
        let short: Vec<&GString> = red.strings.strings().iter().filter(|s| s.len() != 4).collect();
        terminals += short.len();
        if orbit != 8 || short.len() != 2 * h.counts().n || short.iter().any(|s| s.len() != 2) {
            bad.push(seed);
        }
    }
    outcome(
        bad.is_empty(),
        format!("instances=50 failing={bad:?} terminals_of_length_2={terminals}"),
    )
}

fn forward_bound() -> Outcome {
    let mut checked = 0;
    let mut violations = 0;
    let mut worst = i64::MIN;
    for seed in 0..20 {
        let h = instance(seed);
        let c = h.counts();
        let reds: Vec<Reduction> = VARIANTS.iter().map(|&v| reduce(&h, v).unwrap()).collect();
        let mut r = rng(500 + seed);
        for _ in 0..100 {
            let phi = Assignment::random(&h, &mut r);
            let u = h.unsat_count(&phi).unwrap();
            for red in &reds {
                let s = build_superstring(&h, red, &phi).unwrap();
                let comp = compression(&red.strings, &s).unwrap() as usize;
                let len_ok = s.len() <= length_base(c, red.variant) + u;
                let comp_ok = comp + u >= compression_base(c, red.variant);
                worst = worst.max(s.len() as i64 - (length_base(c, red.variant) + u) as i64);
                violations += usize::from(!len_ok || !comp_ok || !is_superstring(&s, &red.strings));
                checked += 1;
            }
        }
    }
    outcome(
        violations == 0,
        format!("runs={checked} violations={violations} max(|s|-bound)={worst}"),
    )
}

fn roundtrip() -> Outcome {
    let (mut phi_runs, mut phi_bad, mut solver_runs, mut solver_bad) = (0, 0, 0, 0);
    for seed in 0..20 {
        let h = instance(seed);
        let mut r = rng(500 + seed);
        for &v in &VARIANTS {
            let red = reduce(&h, v).unwrap();
            for _ in 0..5 {
                let phi = Assignment::random(&h, &mut r);
                let s = build_superstring(&h, &red, &phi).unwrap();
                let psi = normalize(&s, &h, &red).and_then(|ns| extract_assignment(&ns, &h, &red));
                phi_runs += 1;
                match psi {
                    Ok(psi) if h.unsat_count(&psi).unwrap() <= h.unsat_count(&phi).unwrap() => {}
                    _ => phi_bad += 1,
                }
            }
            let greedy = greedy_superstring(&red.strings).unwrap();
            let mut outputs = vec![greedy.superstring.symbols().to_vec()];
            for swaps in [1, 4, 16] {
                let mut order = greedy.order.clone();
                for _ in 0..swaps {
                    let a = r.gen_range(0..order.len() - 1);
                    order.swap(a, a + 1);
                }
                outputs.push(merge_in_order(red.strings.strings(), &order).0);
            }
            for s in outputs {
                solver_runs += 1;
                if !matches!(backward_ok(&h, &red, &s), Ok((true, _))) {
                    solver_bad += 1;
                }
            }
        }
    }
    outcome(
        phi_bad == 0 && solver_bad == 0,
        format!("phi_runs={phi_runs} phi_failures={phi_bad} solver_runs={solver_runs} solver_failures={solver_bad}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut r = rng(5);
    let mut bad = 0;
    for _ in 0..200 {
        let s = random_set(&mut r);
        let exact = exact_superstring(&s).unwrap().superstring.len();
        let brute = brute_force_superstring(&s).unwrap().superstring.len();
        bad += usize::from(exact != brute);
    }
    outcome(bad == 0, format!("sets=200 mismatches={bad}"))
}

fn compression_atsp() -> Outcome {
    let mut r = rng(5);
    let mut bad = 0;
    for _ in 0..200 {
        let s = random_set(&mut r);
        let comp = exact_superstring(&s).unwrap().compression as u64;
        bad += usize::from(exact_max_atsp(&overlap_graph(&s)).unwrap().0 != comp);
    }
    outcome(bad == 0, format!("sets=200 mismatches={bad}"))
}

fn min12_duality() -> Outcome {
    let mut r = rng(7);
    let mut bad = 0;
    for _ in 0..200 {
        let n = r.gen_range(2..=7);
        let mut g = WeightedDigraph::new(n);
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                g.set_weight(i, j, r.gen_range(1..=2));
            }
        }
        let min = brute_force_tour(&g, Objective::Min).unwrap();
        let max = brute_force_tour(&min12_to_max(&g).unwrap(), Objective::Max).unwrap();
        bad += usize::from(min != 2 * n as u64 - max);
    }
    outcome(bad == 0, format!("graphs=200 mismatches={bad}"))
}

fn gap_arithmetic() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_ssr"))
        .args(["bounds", "--k", "1000", "--delta", "1/1000"])
        .output();
    let Ok(out) = out else {
        return outcome(false, "could not run ssr bounds");
    };
    let text = String::from_utf8_lossy(&out.stdout);
    let expected = [
        "superstring_limit=333/332 approx=1.003012",
        "compression_limit=204/203 approx=1.004926",
        "superstring_limit_a6=345/344 approx=1.002907",
    ];
    let missing: Vec<&str> = expected
        .iter()
        .copied()
        .filter(|e| !text.lines().any(|l| l == *e))
        .collect();
    outcome(
        out.status.success() && missing.is_empty(),
        format!("missing={missing:?}"),
    )
}

fn normalization_monotone() -> Outcome {
    let (mut runs, mut bad) = (0, 0);
    for seed in 0..25 {
        let h = instance(2000 + seed);
        let v = VARIANTS[seed as usize % 2];
        let red = reduce(&h, v).unwrap();
        let mut r = rng(seed);
        let greedy = greedy_superstring(&red.strings).unwrap();
        let mut strings = vec![
            greedy.superstring.symbols().to_vec(),
            build_superstring(&h, &red, &Assignment::random(&h, &mut r))
                .unwrap()
                .symbols()
                .to_vec(),
            red.strings.strings().iter().flat_map(|s| s.iter().cloned()).collect(),
        ];
        while strings.len() < 20 {
            let mut order = greedy.order.clone();
            let swaps = r.gen_range(1..=2 * order.len());
            for _ in 0..swaps {
                let a = r.gen_range(0..order.len() - 1);
                order.swap(a, a + 1);
            }
            strings.push(merge_in_order(red.strings.strings(), &order).0);
        }
        for s in strings {
            runs += 1;
            if !matches!(backward_ok(&h, &red, &s), Ok((_, true))) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("strings={runs} failures={bad}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("structural totals 840 / 864", Duration::from_secs(1), structural_totals),
        (
            "max orbit 8, B4 lengths 4 with length-2 terminals",
            Duration::from_secs(10),
            orbit_bound,
        ),
        (
            "forward length and compression bounds",
            Duration::from_secs(60),
            forward_bound,
        ),
        ("roundtrip and backward bounds", Duration::from_secs(60), roundtrip),
        ("exact = brute force", Duration::from_secs(30), oracle_equivalence),
        (
            "optimal compression = MAX-ATSP",
            Duration::from_secs(30),
            compression_atsp,
        ),
        ("MIN-(1,2) duality", Duration::from_secs(30), min12_duality),
        (
            "gap arithmetic 333/332, 204/203, 345/344",
            Duration::from_secs(30),
            gap_arithmetic,
        ),
        (
            "normalization never lengthens",
            Duration::from_secs(60),
            normalization_monotone,
        ),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let ok = o.ok && elapsed <= *budget;
        failed += usize::from(!ok);
        println!(
            "{} criterion {}: {name} | {} time={:.2}s budget={}s",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
