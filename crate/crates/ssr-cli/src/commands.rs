use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ssr_core::backward::{extract_assignment, normalize};
use ssr_core::bounds::{self, attained_compression_base, attained_length_base, compression_base, length_base, Q};
use ssr_core::forward::build_superstring;
use ssr_core::gadgets::{expected_letters, reduce, GadgetVariant, Reduction};
use ssr_core::hybrid::{
    build_hybrid, parse_assignment, random_e3, replicate, template_triple, write_assignment, Assignment, BuildOptions,
    E3LinInstance, HybridInstance,
};
use ssr_core::solvers::{brute_force_superstring, exact_superstring, greedy_superstring};
use ssr_core::superstring::{compression, is_superstring, orbit_stats, parse_sset_lines, GString, StringSet};

use crate::report::{Check, RunReport};
use crate::{Algo, Cli, Command, InstanceArgs};

/// Ok(false) when a bound check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Gen { vars, copies, out } => {
            if *copies == 0 {
                bail!("--copies must be at least 1");
            }
            let base = match vars {
                None => template_triple(),
                Some(0) => bail!("--vars must be positive"),
                Some(v) => random_e3(*v, &mut rng),
            };
            emit(out.as_deref(), &replicate(&base, *copies).to_text())?;
            Ok(true)
        }
        Command::Hybrid {
            e3,
            matching,
            any_occurrence,
            out,
        } => {
            let e3 = E3LinInstance::from_text(&read(e3)?)?;
            let opts = BuildOptions {
                strategy: (*matching).into(),
                any_occurrence_count: *any_occurrence,
            };
            let h = build_hybrid(&e3, opts)?;
            emit(out.as_deref(), &h.to_text())?;
            eprintln!("{}", h.counts());
            Ok(true)
        }
        Command::Reduce { inst, out, index } => {
            let (h, red) = load(inst)?;
            emit(out.as_deref(), &red.strings.to_sset())?;
            if let Some(path) = index {
                fs::write(path, red.index.to_gidx(&h)).with_context(|| format!("writing {}", path.display()))?;
            }
            let mut report = RunReport::default();
            report.instance(h.counts(), &red.strings);
            structure_checks(&mut report, &h, &red);
            print_report(out.is_some(), &report.render(false));
            Ok(report.all_ok())
        }
        Command::Forward { inst, phi, out } => {
            let (h, red) = load(inst)?;
            let phi = assignment(&h, phi, &mut rng)?;
            let s = build_superstring(&h, &red, &phi)?;
            emit(out.as_deref(), &superstring_text(&s))?;
            let u = h.unsat_count(&phi)?;
            let c = h.counts();
            let bound = attained_length_base(c, red.variant) + u;
            let base_7n = length_base(c, red.variant) + u;
            let line = format!(
                "len={} bound={bound} u={u} ok={} bound_7n={base_7n} ok_7n={}",
                s.len(),
                s.len() <= bound,
                s.len() <= base_7n
            );
            print_report(out.is_some(), &line);
            Ok(s.len() <= bound)
        }
        Command::Solve { sset, algo, out } => {
            let set = StringSet::from_sset(&read(sset)?)?;
            let res = solve(&set, *algo)?.ok_or_else(|| anyhow!("--algo none does not produce a superstring"))?;
            emit(out.as_deref(), &superstring_text(&res.superstring))?;
            print_report(
                out.is_some(),
                &format!("len={} comp={}", res.superstring.len(), res.compression),
            );
            Ok(true)
        }
        Command::Extract { inst, superstring, out } => {
            let (h, red) = load(inst)?;
            let s = read_superstring(superstring)?;
            if !is_superstring(&s, &red.strings) {
                bail!("{} is not a superstring of the reduction", superstring.display());
            }
            let ns = normalize(&s, &h, &red)?;
            let psi = extract_assignment(&ns, &h, &red)?;
            let u = h.unsat_count(&psi)?;
            let base = length_base(h.counts(), red.variant);
            let ok = u + base <= s.len();
            let mut text = write_assignment(&h, &psi);
            writeln!(
                text,
                "unsat={u} len={} normed_len={} bound={} bound_ok={ok}",
                s.len(),
                ns.string.len(),
                s.len() as i64 - base as i64
            )
            .unwrap();
            emit(out.as_deref(), &text)?;
            Ok(ok)
        }
        Command::Verify {
            inst,
            phi,
            algo,
            superstring,
            timings,
        } => {
            let report = verify(inst, phi, *algo, superstring.as_deref(), &mut rng)?;
            print!("{}", report.render(*timings));
            Ok(report.all_ok())
        }
        Command::Bounds { k, delta } => {
            let delta = parse_rational(delta)?;
            print!("{}", bounds_report(*k, delta)?);
            Ok(true)
        }
        Command::Bench {
            instances,
            vars,
            variant,
        } => {
            let lines = bench(*instances, *vars, (*variant).into(), cli.seed, cli.threads.max(1))?;
            let ok = lines.iter().all(|(_, ok)| *ok);
            for (line, _) in lines {
                println!("{line}");
            }
            Ok(ok)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reports go to stdout when the artifact went to a file, else to stderr.
fn print_report(artifact_in_file: bool, text: &str) {
    let text = text.trim_end();
    if artifact_in_file {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
}

fn first_header(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
}

fn load_hybrid(inst: &InstanceArgs) -> Result<HybridInstance> {
    let text = read(&inst.instance)?;
    match first_header(&text) {
        Some("hybrid v1") => Ok(HybridInstance::from_text(&text)?),
        Some("e3lin v1") => {
            let e3 = E3LinInstance::from_text(&text)?;
            let opts = BuildOptions {
                strategy: inst.matching.into(),
                any_occurrence_count: inst.any_occurrence,
            };
            Ok(build_hybrid(&e3, opts)?)
        }
        _ => bail!(
            "{}: expected an `e3lin v1` or `hybrid v1` file",
            inst.instance.display()
        ),
    }
}

fn load(inst: &InstanceArgs) -> Result<(HybridInstance, Reduction)> {
    let h = load_hybrid(inst)?;
    let red = reduce(&h, inst.variant.into())?;
    Ok((h, red))
}

fn assignment(h: &HybridInstance, source: &str, rng: &mut ChaCha8Rng) -> Result<Assignment> {
    Ok(match source {
        "zeros" => Assignment::zeros(h),
        "random" => Assignment::random(h, rng),
        path => parse_assignment(h, &read(Path::new(path))?)?,
    })
}

fn superstring_text(s: &GString) -> String {
    format!("sset v1\n{s}\n")
}

fn read_superstring(path: &Path) -> Result<GString> {
    let mut lines = parse_sset_lines(&read(path)?)?;
    if lines.len() != 1 {
        bail!("{}: expected exactly one string, found {}", path.display(), lines.len());
    }
    Ok(lines.remove(0))
}

fn solve(set: &StringSet, algo: Algo) -> Result<Option<ssr_core::solvers::SolveResult>> {
    Ok(match algo {
        Algo::Greedy => Some(greedy_superstring(set)?),
        Algo::Exact => Some(exact_superstring(set)?),
        Algo::Brute => Some(brute_force_superstring(set)?),
        Algo::None => None,
    })
}

fn parse_rational(s: &str) -> Result<Q> {
    if let Some((int, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        if digits > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            bail!("bad decimal `{s}`");
        }
        let den = 10i64.pow(digits);
        let whole: i64 = if int.is_empty() {
            0
        } else {
            int.parse().context("bad decimal")?
        };
        let part: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().context("bad decimal")?
        };
        return Ok(Q::new(whole * den + part, den));
    }
    s.parse::<Q>().map_err(|_| anyhow!("bad rational `{s}`"))
}

fn ratio_line(name: &str, q: Q) -> String {
    format!("{name}={}/{} approx={:.6}", q.numer(), q.denom(), bounds::to_f64(q))
}

pub fn bounds_report(k: i64, delta: Q) -> Result<String> {
    let ratio = bounds::superstring_ratio(k, delta)?;
    let mut out = String::new();
    writeln!(out, "k={k} delta={}/{}", delta.numer(), delta.denom()).unwrap();
    writeln!(out, "{}", ratio_line("superstring_ratio", ratio)).unwrap();
    writeln!(
        out,
        "{}",
        ratio_line("superstring_limit", bounds::length_ratio_limit(GadgetVariant::B4))
    )
    .unwrap();
    writeln!(
        out,
        "{}",
        ratio_line("compression_limit", bounds::compression_ratio_limit(GadgetVariant::B4))
    )
    .unwrap();
    writeln!(
        out,
        "{}",
        ratio_line("superstring_limit_a6", bounds::length_ratio_limit(GadgetVariant::A6))
    )
    .unwrap();
    writeln!(
        out,
        "per_nu length_b4={} length_a6={} compression_b4={}",
        bounds::length_per_nu(GadgetVariant::B4),
        bounds::length_per_nu(GadgetVariant::A6),
        bounds::compression_per_nu(GadgetVariant::B4)
    )
    .unwrap();
    Ok(out)
}

fn length_formula(v: GadgetVariant, circles: usize) -> String {
    format!("5m2+{}m3+{circles}n", v.three_var_constant())
}

fn structure_checks(report: &mut RunReport, h: &HybridInstance, red: &Reduction) {
    let v = red.variant;
    let formula = format!("letters = 12n+8m2+{}m3", v.three_var_letters());
    report.checks.extend(Check::equal(
        "letters",
        formula,
        red.strings.total_letters(),
        expected_letters(h, v),
    ));
    report.check(Check::at_most(
        "orbit",
        "max_orbit <= 8",
        orbit_stats(red.strings.strings()).max,
        8,
    ));
}

/// Normalizes and extracts from `s`, adding stage `name` and its checks.
fn backward_stage(
    report: &mut RunReport,
    name: &str,
    h: &HybridInstance,
    red: &Reduction,
    s: &GString,
) -> Result<usize> {
    if !is_superstring(s, &red.strings) {
        bail!("{name}: not a superstring of the reduction");
    }
    let start = Instant::now();
    let ns = normalize(s, h, red)?;
    let psi = extract_assignment(&ns, h, red)?;
    report.time(format!("backward_{name}"), start.elapsed());
    let u = h.unsat_count(&psi)?;
    let base = length_base(h.counts(), red.variant);
    report.stage(
        format!("extract_{name}"),
        vec![
            ("len", s.len().to_string()),
            ("normed_len", ns.string.len().to_string()),
            ("steps", (ns.trace.len() - 1).to_string()),
            ("u", u.to_string()),
        ],
    );
    report.check(Check::at_most(
        "normalize",
        format!("|normalize(s_{name})| <= |s_{name}|"),
        ns.string.len(),
        s.len(),
    ));
    report.check(Check::at_most(
        "roundtrip",
        format!("u(psi_{name}) + {} <= |s_{name}|", length_formula(red.variant, 7)),
        u + base,
        s.len(),
    ));
    Ok(u)
}

fn verify(
    inst: &InstanceArgs,
    phi: &str,
    algo: Algo,
    injected: Option<&Path>,
    rng: &mut ChaCha8Rng,
) -> Result<RunReport> {
    let mut report = RunReport::default();
    let start = Instant::now();
    let (h, red) = load(inst)?;
    report.time("reduce", start.elapsed());
    let c = h.counts();
    let v = red.variant;
    report.instance(c, &red.strings);
    structure_checks(&mut report, &h, &red);

    let phi = assignment(&h, phi, rng)?;
    let u = h.unsat_count(&phi)?;
    let start = Instant::now();
    let s = build_superstring(&h, &red, &phi)?;
    report.time("forward", start.elapsed());
    let comp = compression(&red.strings, &s)? as usize;
    report.stage(
        "forward",
        vec![
            ("len", s.len().to_string()),
            ("comp", comp.to_string()),
            ("u", u.to_string()),
        ],
    );
    report.check(Check::at_most(
        "forward_length",
        format!("|s_phi| <= {}+u", length_formula(v, 8)),
        s.len(),
        attained_length_base(c, v) + u,
    ));
    report.check(Check::at_least(
        "forward_compression",
        format!("comp(s_phi)+u >= 3m2+{}m3+4n", v.compression_constant()),
        comp + u,
        attained_compression_base(c, v),
    ));
    let base_7n = length_base(c, v) + u;
    report.notes.push(format!(
        "name=forward_length_7n formula=\"|s_phi| <= {}+u\" lhs={} rhs={base_7n} holds={}",
        length_formula(v, 7),
        s.len(),
        s.len() <= base_7n
    ));
    let comp_5n = compression_base(c, v);
    report.notes.push(format!(
        "name=forward_compression_5n formula=\"comp(s_phi)+u >= 3m2+{}m3+5n\" lhs={} rhs={comp_5n} holds={}",
        v.compression_constant(),
        comp + u,
        comp + u >= comp_5n
    ));
    let u_psi = backward_stage(&mut report, "phi", &h, &red, &s)?;
    report.check(Check::at_most("roundtrip_phi", "u(psi_{s_phi}) <= u(phi)", u_psi, u));

    if algo != Algo::None {
        let start = Instant::now();
        let res = solve(&red.strings, algo)?.expect("algorithm selected");
        report.time("solve", start.elapsed());
        report.stage(
            "solve",
            vec![
                ("algo", format!("{algo:?}").to_lowercase()),
                ("len", res.superstring.len().to_string()),
                ("comp", res.compression.to_string()),
            ],
        );
        backward_stage(&mut report, "solver", &h, &red, &res.superstring)?;
    }
    if let Some(path) = injected {
        let s = read_superstring(path)?;
        backward_stage(&mut report, "injected", &h, &red, &s)?;
    }
    Ok(report)
}

fn bench_one(index: usize, vars: usize, variant: GadgetVariant, seed: u64) -> Result<(String, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
    let ms = |d: Duration| format!("{:.3}", d.as_secs_f64() * 1e3);
    let t = Instant::now();
    let h = build_hybrid(&random_e3(vars, &mut rng), BuildOptions::default())?;
    let red = reduce(&h, variant)?;
    let reduce_ms = ms(t.elapsed());
    let phi = Assignment::random(&h, &mut rng);
    let t = Instant::now();
    let s = build_superstring(&h, &red, &phi)?;
    let forward_ms = ms(t.elapsed());
    let t = Instant::now();
    let greedy = greedy_superstring(&red.strings)?.superstring;
    let greedy_ms = ms(t.elapsed());
    let t = Instant::now();
    let ns = normalize(&greedy, &h, &red)?;
    let psi = extract_assignment(&ns, &h, &red)?;
    let backward_ms = ms(t.elapsed());
    let c = h.counts();
    let u = h.unsat_count(&phi)?;
    let u_psi = h.unsat_count(&psi)?;
    let ok = s.len() <= attained_length_base(c, variant) + u
        && ns.string.len() <= greedy.len()
        && u_psi + length_base(c, variant) <= greedy.len();
    let line = format!(
        "bench instance={index} n={} m2={} m3={} letters={} forward_len={} greedy_len={} normed_len={} u_phi={u} u_psi={u_psi} \
         reduce_ms={reduce_ms} forward_ms={forward_ms} greedy_ms={greedy_ms} backward_ms={backward_ms} ok={ok}",
        c.n,
        c.m2,
        c.m3,
        red.strings.total_letters(),
        s.len(),
        greedy.len(),
        ns.string.len(),
    );
    Ok((line, ok))
}

/// Instance `i` uses seed `seed + i`, so results do not depend on the thread count.
fn bench(
    instances: usize,
    vars: usize,
    variant: GadgetVariant,
    seed: u64,
    threads: usize,
) -> Result<Vec<(String, bool)>> {
    if vars == 0 {
        bail!("--vars must be positive");
    }
    let mut results: Vec<Option<Result<(String, bool)>>> = (0..instances).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunk = instances.div_ceil(threads).max(1);
        for (t, slots) in results.chunks_mut(chunk).enumerate() {
            scope.spawn(move || {
                for (k, slot) in slots.iter_mut().enumerate() {
                    *slot = Some(bench_one(t * chunk + k, vars, variant, seed));
                }
            });
        }
    });
    results.into_iter().map(|r| r.expect("every slot is filled")).collect()
}
