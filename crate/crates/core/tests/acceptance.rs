//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive};
use ramsey_forge::aux_graph::{
    check_nonneighborhood_lemma, check_tensor_lemma, construct_auxiliary, AuxParams, CheckMode,
};
use ramsey_forge::bounds::{appendix_eval, e_recursion_beta, f3_small, link_vs_link_bound, Status};
use ramsey_forge::census::{
    check_hom_product_formula, check_product_formula_e3, enumerate_triangle_free, shearer_check,
    triangle_free_colorings, CoverFamily, SHEARER_TOLERANCE,
};
use ramsey_forge::game::{
    l62_caps, play_game, ramsey_upper_eval, reduce_on_host, AllBlue, AllRed, Builder, BuilderFactory, GameOutcome,
    HostWitness, L62Builder, MinimaxPainter, Objective, Painter, RandomPainter,
};
use ramsey_forge::gamma::{build_gamma, estimate_fu_probability, random_coloring, verify_link_free, PairColoring};
use ramsey_forge::solvers::hom_exists;
use ramsey_forge::{Error, Graph, SearchLimits, ThreeGraph};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lim() -> SearchLimits {
    SearchLimits::default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, budget: Duration) -> Result<(), String> {
    ensure(t.elapsed() < budget, || {
        format!("took {:.2?}, budget {budget:?}", t.elapsed())
    })
}

fn ln_big(x: &BigInt) -> f64 {
    let shift = x.bits().saturating_sub(60);
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_ratio(x: &BigRational) -> f64 {
    ln_big(x.numer()) - ln_big(x.denom())
}

fn rational(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn c1_census() -> Outcome {
    let t = Instant::now();
    let k2 = Graph::complete(2);
    let count = enumerate_triangle_free(1, &k2, &lim()).map_err(|e| e.to_string())?;
    let brute = common::census_n1(&k2);
    ensure(count == BigUint::from(56u32) && brute == 56, || {
        format!("census {count}, brute force {brute}")
    })?;
    let mut members = 0;
    for m in 1..=3 {
        for palette in common::all_graphs(m) {
            let all = triangle_free_colorings(1, &palette, &lim()).map_err(|e| e.to_string())?;
            ensure(all.len() == common::census_n1(&palette), || {
                format!("census mismatch on {palette:?}")
            })?;
            for chi in &all {
                let e3 = check_product_formula_e3(chi, &lim()).map_err(|e| e.to_string())?;
                let e1 = check_hom_product_formula(chi, &lim()).map_err(|e| e.to_string())?;
                ensure(e3.holds && e1.holds, || {
                    format!("product formula fails at {chi:?}: {e3:?} {e1:?}")
                })?;
                members += 1;
            }
        }
    }
    within(t, Duration::from_secs(5))?;
    Ok(format!(
        "56 = brute force; product formulas exact on {members} colourings; {:.2?}",
        t.elapsed()
    ))
}

fn c2_link_free() -> Outcome {
    let c3 = Graph::cycle(3);
    let c5 = Graph::cycle(5);
    ensure(!hom_exists(&c3, &c5, &lim()).map_err(|e| e.to_string())?, || {
        "C5 admits a hom from C3".into()
    })?;
    for seed in 0..100 {
        let chi = random_coloring(20, &c5, seed).map_err(|e| e.to_string())?;
        let check = verify_link_free(&build_gamma(&chi), &c3, &lim()).map_err(|e| e.to_string())?;
        ensure(check.link_free, || format!("seed {seed}: triangle in link {check:?}"))?;
    }
    let k2 = Graph::complete(2);
    let mut violations = 0;
    let mut k2_links = 0;
    for code in 0u32..64 {
        let mut bit = 0;
        let chi = PairColoring::new(k2.clone(), 3, |_, _| {
            bit += 1;
            (code >> (bit - 1) & 1) as usize
        })
        .map_err(|e| e.to_string())?;
        let gamma = build_gamma(&chi);
        for forbidden in [&k2, &c3] {
            let check = verify_link_free(&gamma, forbidden, &lim()).map_err(|e| e.to_string())?;
            if check.link_free {
                continue;
            }
            let hom = hom_exists(forbidden, &k2, &lim()).map_err(|e| e.to_string())?;
            let (v, emb) = (check.vertex.unwrap(), check.embedding.clone().unwrap());
            let present = forbidden.edges().all(|(a, b)| gamma.has_triple(v, emb[a], emb[b]));
            if !hom || !present {
                violations += 1;
            }
            if forbidden.vertex_count() == 2 {
                k2_links += 1;
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!(
        "100/100 random colourings at N=20 link-free; 64 colourings at N=3, 0 violations ({k2_links} with a K2 link, palette admits K2)"
    ))
}

fn check_game(o: &GameOutcome, s: usize, n: usize, who: &str) -> Result<(), String> {
    ensure(o.resources.within(&l62_caps(s, n)), || {
        format!("{who} at s={s} n={n}: {:?} exceeds {:?}", o.resources, l62_caps(s, n))
    })?;
    ensure(o.certify(s, n), || format!("{who} at s={s} n={n}: uncertified outcome"))
}

fn c3_game() -> Outcome {
    let t = Instant::now();
    let mut games = 0;
    let factory: BuilderFactory = std::sync::Arc::new(|| Box::new(L62Builder::new()) as Box<dyn Builder>);
    for s in 3..=6 {
        for n in 3..=6 {
            let mut run = |p: &mut dyn Painter, who: &str| -> Result<(), String> {
                let o = play_game(&mut L62Builder::new(), p, s, n, &Default::default()).map_err(|e| e.to_string())?;
                games += 1;
                check_game(&o, s, n, who)
            };
            run(&mut AllRed, "all-red")?;
            run(&mut AllBlue, "all-blue")?;
            for seed in 0..1000 {
                run(&mut RandomPainter::new(seed), "random")?;
            }
            if s <= 4 && n <= 4 {
                for obj in [Objective::Vertices, Objective::RedEdges, Objective::Edges] {
                    run(&mut MinimaxPainter::new(factory.clone(), obj), "minimax")?;
                }
            }
        }
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!(
        "{games} games within caps for 3 <= s,n <= 6; {:.2?}",
        t.elapsed()
    ))
}

/// Certifies a reduction witness from the raw triple list.
fn certify_witness(host: &ThreeGraph, w: &HostWitness) -> bool {
    let set: HashSet<[usize; 3]> = host.triples().iter().copied().collect();
    let has = |a: usize, b: usize, c: usize| {
        let mut t = [a, b, c];
        t.sort_unstable();
        set.contains(&t)
    };
    match w {
        HostWitness::Link { apex, clique } => {
            let mut all: Vec<usize> = clique.clone();
            all.push(*apex);
            all.sort_unstable();
            all.dedup();
            all.len() == 4 && clique.len() == 3 && (0..3).all(|i| (i + 1..3).all(|j| has(*apex, clique[i], clique[j])))
        }
        HostWitness::Hole { vertices } => {
            let mut v = vertices.clone();
            v.sort_unstable();
            v.dedup();
            v.len() == 3 && !has(v[0], v[1], v[2])
        }
    }
}

fn c4_reduction() -> Outcome {
    let alpha = Ratio::new(1u64, 3);
    let (mut links, mut holes, mut underflows) = (0, 0, 0);
    for seed in 0..100u64 {
        let p = 0.1 + 0.8 * (seed as f64 / 99.0);
        let host = common::random_three_graph(36, p, &mut common::rng(seed));
        match reduce_on_host(&host, 3, 3, alpha) {
            Ok(r) => {
                ensure(certify_witness(&host, &r.witness), || {
                    format!("seed {seed}: bad witness {:?}", r.witness)
                })?;
                match r.witness {
                    HostWitness::Link { .. } => links += 1,
                    HostWitness::Hole { .. } => holes += 1,
                }
            }
            Err(Error::CandidateUnderflow { .. }) => underflows += 1,
            Err(e) => return Err(format!("seed {seed}: {e}")),
        }
    }
    ensure(underflows == 0, || format!("{underflows} candidate underflows"))?;
    Ok(format!(
        "100/100 hosts on 36 vertices certified ({links} links, {holes} holes), 0 underflows"
    ))
}

fn c5_shearer() -> Outcome {
    let mut r = common::rng(5);
    let all: Vec<Vec<u32>> = (0..81u32).map(|x| vec![x % 3, x / 3 % 3, x / 9 % 3, x / 27]).collect();
    for trial in 0..1000 {
        let size = r.gen_range(1..=81);
        let family: Vec<Vec<u32>> = all.iter().filter(|_| r.gen_range(0..81) < size).cloned().collect();
        let family = if family.is_empty() {
            vec![all[trial % 81].clone()]
        } else {
            family
        };
        let cover = loop {
            let k = r.gen_range(1..=6);
            let sets: Vec<Vec<usize>> = (0..k)
                .map(|_| {
                    let bits = r.gen_range(1u8..16);
                    (0..4).filter(|i| bits >> i & 1 == 1).collect()
                })
                .collect();
            let cover = CoverFamily { ground: 4, sets };
            if cover.multiplicity().is_ok() {
                break cover;
            }
        };
        let check = shearer_check(&family, &cover).map_err(|e| e.to_string())?;
        ensure(check.holds, || format!("trial {trial}: {check:?}"))?;
    }
    let pairs = CoverFamily {
        ground: 3,
        sets: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    };
    let cube: Vec<Vec<u32>> = (0..8u32).map(|x| vec![x & 1, x >> 1 & 1, x >> 2 & 1]).collect();
    let c = shearer_check(&cube, &pairs).map_err(|e| e.to_string())?;
    let tight =
        (c.lhs.ln() - 64f64.ln()).abs() < SHEARER_TOLERANCE && (c.rhs.ln() - 64f64.ln()).abs() < SHEARER_TOLERANCE;
    ensure(c.holds && tight, || format!("cube: {c:?}"))?;
    let d = shearer_check(&[vec![0, 0, 0], vec![1, 1, 1]], &pairs).map_err(|e| e.to_string())?;
    let exact =
        (d.lhs.ln() - 4f64.ln()).abs() < SHEARER_TOLERANCE && (d.rhs.ln() - 8f64.ln()).abs() < SHEARER_TOLERANCE;
    ensure(d.holds && exact, || format!("diagonal: {d:?}"))?;
    Ok("1000 random families hold; cube 64 <= 64; diagonal 4 <= 8".into())
}

fn c6_aux_lemmas() -> Outcome {
    let t = Instant::now();
    let mut r = common::rng(6);
    for i in 0..200 {
        let m = r.gen_range(2..=8);
        let p = r.gen_range(0.1..0.9);
        let a = common::random_graph(m, p, &mut r);
        let c = check_tensor_lemma(&a, &lim()).map_err(|e| e.to_string())?;
        ensure(c.holds, || format!("tensor lemma fails on graph {i}: {c:?}"))?;
    }
    let tensor_time = t.elapsed();
    for i in 0..500u64 {
        let m = r.gen_range(2..=10);
        let p = r.gen_range(0.05..0.95);
        let a = common::random_graph(m, p, &mut r);
        let c = check_nonneighborhood_lemma(&a, i, &lim()).map_err(|e| e.to_string())?;
        ensure(c.holds && c.mode == CheckMode::Exhaustive, || {
            format!("graph {i}: {c:?}")
        })?;
    }
    for seed in 0..20 {
        let params = AuxParams::new(3, 10, seed).map_err(|e| e.to_string())?;
        let (a, cert) = construct_auxiliary(&params, &lim()).map_err(|e| e.to_string())?;
        ensure(
            cert.girth.exceeds(3) && ramsey_forge::solvers::girth(&a).exceeds(3),
            || format!("seed {seed}: girth {}", cert.girth),
        )?;
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!(
        "tensor 200/200, non-neighbourhood 500/500 exhaustive, 20/20 constructions girth > 3; {:.2?} (tensor {:.2?})",
        t.elapsed(),
        tensor_time
    ))
}

fn c7_beta() -> Outcome {
    let b = e_recursion_beta();
    ensure(b.six_beta > 0.464 && b.six_beta < 0.465, || {
        format!("6 beta = {}", b.six_beta)
    })?;
    ensure(b.residual < 1e-14, || format!("residual {}", b.residual))?;
    Ok(format!("6 beta = {:.6}, residual {:.1e}", b.six_beta, b.residual))
}

fn c8_closed_forms() -> Outcome {
    ensure(link_vs_link_bound(3, 3) == BigUint::from(7u32), || {
        "link bound (3,3) != 7".into()
    })?;
    let mut oracle_checked = 0;
    for s in 3..=100usize {
        for n in 3..=100usize {
            let u = ramsey_upper_eval(s, n).map_err(|e| e.to_string())?;
            ensure(u.holds && u.raw.ln() <= u.cap.ln(), || {
                format!("raw > cap at s={s} n={n}")
            })?;
            let c = l62_caps(s, n);
            let bits = (c.edges as f64) * (n as f64).log2() + (s * n) as f64 * (2.0 * n as f64).log2();
            if bits <= 1e4 {
                let exact = rational((c.vertices + 1) as u64)
                    * rational(n as u64).pow(c.red_edges as i32)
                    * BigRational::new((n as u64).into(), ((n - 1) as u64).into()).pow((c.edges - c.red_edges) as i32);
                let ln = ln_ratio(&exact);
                ensure((u.raw.ln() - ln).abs() <= 1e-12 * ln.abs(), || {
                    format!("s={s} n={n}: {} vs oracle {ln}", u.raw.ln())
                })?;
                let cap = ln_ratio(&rational(2 * n as u64).pow((s * n) as i32));
                ensure((u.cap.ln() - cap).abs() <= 1e-12 * cap.abs(), || {
                    format!("cap mismatch at s={s} n={n}")
                })?;
                oracle_checked += 1;
            }
        }
    }
    let mut points = 0;
    for s in 14..=200usize {
        for n in 2..=200usize {
            let r = appendix_eval(s, n).map_err(|e| e.to_string())?;
            let p = r.get("p").unwrap();
            let (bp, bm) = (r.get("ln_branch_p").unwrap(), r.get("ln_branch_m").unwrap());
            ensure(p > 0.0 && p < 1.0 && bp.is_finite() && bm.is_finite(), || {
                format!("s={s} n={n}: {r:?}")
            })?;
            ensure(r.conditions.iter().all(|c| c.status != Status::Fail), || {
                format!("s={s} n={n}: {:?}", r.conditions)
            })?;
            let binom = ramsey_forge::bounds::binomial((n + s) as u64, s as u64);
            let ln_m = 2.0 * ln_big(&BigInt::from(binom)) / 13.0;
            let got = r.get("ln_m").unwrap();
            ensure((got - ln_m).abs() <= 1e-12 * ln_m.abs(), || {
                format!("ln m at s={s} n={n}: {got} vs {ln_m}")
            })?;
            points += 1;
        }
    }
    Ok(format!(
        "link(3,3) = 7; raw <= (2n)^(sn) on 98^2 points, {oracle_checked} matched the rational oracle; appendix holds on {points} points"
    ))
}

fn c9_f3() -> Outcome {
    let t = Instant::now();
    let r = f3_small(4, 4, 3, &lim()).map_err(|e| e.to_string())?;
    // Plain pass over all 16 3-graphs on four vertices.
    let triples = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut best = usize::MAX;
    for mask in 0..16u32 {
        let h = ThreeGraph::new(4, (0..4).filter(|i| mask >> i & 1 == 1).map(|i| triples[i])).unwrap();
        if h.triple_count() < 3 {
            best = best.min(common::alpha_three(&h));
        }
    }
    within(t, Duration::from_secs(1))?;
    ensure(r.value == 3 && best == 3, || {
        format!("f3(4;4,3) = {}, brute force {best}", r.value)
    })?;
    Ok(format!(
        "f3(4;4,3) = 3 over {} qualifying of 16 graphs; {:.2?}",
        r.qualifying,
        t.elapsed()
    ))
}

fn c10_fu() -> Outcome {
    let est = estimate_fu_probability(6, 1.0 / 6.0, 2, 10_000, 10).map_err(|e| e.to_string())?;
    // (1 - p^3)^(d v^3/2) + (2 e v^2/(d m))^(d v^2/2), d = 1/27, v = 6.
    let d = BigRational::new(1.into(), 27.into());
    let e1 = &d * rational(216) / rational(2);
    let base = BigRational::one() - BigRational::new(1.into(), 216.into());
    let first = (ln_ratio(&base.pow(e1.numer().to_i32().unwrap())) / e1.denom().to_f64().unwrap()).exp();
    let e2 = &d * rational(36) / rational(2);
    let inner = rational(72) / (&d * rational(6));
    let second = ((1.0 + ln_ratio(&inner)) * e2.numer().to_f64().unwrap() / e2.denom().to_f64().unwrap()).exp();
    let oracle = first + second;
    let got = est.bound.value();
    ensure((got - oracle).abs() <= 1e-12 * oracle, || {
        format!("bound {got} vs oracle {oracle}")
    })?;
    ensure(est.estimate <= got, || {
        format!("estimate {} > bound {got}", est.estimate)
    })?;
    Ok(format!(
        "estimate {:.4} <= bound {:.6} (oracle agrees to 1e-12)",
        est.estimate, got
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("census", c1_census),
        ("link-free gamma", c2_link_free),
        ("online game caps", c3_game),
        ("host reduction", c4_reduction),
        ("shearer", c5_shearer),
        ("auxiliary lemmas", c6_aux_lemmas),
        ("recursion beta", c7_beta),
        ("closed forms", c8_closed_forms),
        ("f3 small", c9_f3),
        ("F_U estimate", c10_fu),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} {name}: PASS - {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL - {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
