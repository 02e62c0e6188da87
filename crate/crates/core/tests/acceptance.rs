//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines always show.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use ccgrowth::dehn::DehnContext;
use ccgrowth::growth::{
    check_length_function, equivalent, factor_growth_curve, growth_curve, FreeFactor, LengthFunctionZ,
    NOracleConfig, ProductGroup,
};
use ccgrowth::lipschitz::{kappa_max_len, lip_estimate, lip_upper_exact};
use ccgrowth::metrics::{
    n_norm_bfs_oracle, n_norm_upper, ConjugatorAlphabet, HeisenbergElement, HeisenbergMetric, HeisenbergOracle,
    NormMode, QMetric,
};
use ccgrowth::numeric::loglog_slope;
use ccgrowth::presentations::{check_small_cancellation, one_sixth, symmetrize, Presentation};
use ccgrowth::rips::{RipsMode, DEFAULT_MATERIALIZE_BUDGET};
use ccgrowth::words::cyclic_reduce;
use ccgrowth::{CyclicWord, Error, Word};
use num_bigint::BigUint;
use rand::Rng;
use sha2::{Digest, Sha256};

use common::*;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn main() {
    let criteria: [(u8, &str, fn() -> Verdict); 10] = [
        (1, "Heisenberg distortion", c1_heisenberg),
        (2, "small cancellation", c2_small_cancellation),
        (3, "Dehn completeness fuzz", c3_dehn_fuzz),
        (4, "chi well-definedness", c4_inner_consistency),
        (5, "growth curve shape", c5_growth_shape),
        (6, "bracket sanity", c6_bracket),
        (7, "product additivity", c7_product),
        (8, "length-function axioms", c8_lenfun),
        (9, "Lipschitz envelope", c9_lipschitz),
        (10, "determinism", c10_determinism),
    ];
    let only: Option<u8> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (id, name, f) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {} {name}: {} [{:.1}s]",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {failed} failing");
    if failed > 0 {
        std::process::exit(1);
    }
}

fn c1_heisenberg() -> Verdict {
    let oracle = HeisenbergOracle::new(40).unwrap();
    let len = |n: i64| oracle.length(HeisenbergElement::z_power(n)).unwrap() as f64;
    let a = (1..=10i64).all(|m| len(m * m) <= 4.0 * m as f64);
    let ratios: Vec<f64> = [9i64, 16, 25].iter().map(|&n| len(4 * n) / len(n)).collect();
    let b = ratios.iter().all(|r| (1.4..=2.6).contains(r));
    let pts: Vec<(f64, f64)> = (10..=100i64).map(|n| (n as f64, len(n))).collect();
    let slope = loglog_slope(&pts).unwrap();
    let c = (0.4..=0.6).contains(&slope);
    verdict(
        a && b && c,
        format!(
            "(a) |z^(m^2)| <= 4m for m <= 10: {a}; (b) doubling ratios {:.3?}; (c) slope {slope:.4}; ball {} elements",
            ratios,
            oracle.ball_size()
        ),
    )
}

fn c2_small_cancellation() -> Verdict {
    let at = |k: u32| check_small_cancellation(rips(k, RipsMode::Complete).g_presentation(), one_sixth()).unwrap();
    let k10 = at(10);
    let k1 = at(1);
    let min_k = (1..=40).find(|&k| at(k).passed());
    let w10 = k10.witness.as_ref().map_or(String::new(), |w| {
        let len = k10.max_piece_per_relator[w.relator_id].relator_length;
        format!(" (piece {} in relator {} of length {len})", w.piece_length, w.relator_id)
    });

    // agreement with the quadratic scan on every test presentation with
    // total relator length <= 4000
    let mut presentations: Vec<Presentation> = Vec::new();
    for mode in [RipsMode::Complete, RipsMode::XOnly] {
        for k in 1.. {
            let g = rips(k, mode).g_presentation().clone();
            if g.total_relator_length() > 4000 {
                break;
            }
            presentations.push(g);
        }
    }
    presentations.push(heisenberg());
    presentations.push(Presentation::parse("gens a b c d\nrel [a,b][c,d]").unwrap());
    let mut r = rng(2, "c2-presentations");
    while presentations.len() < 60 {
        let rank = r.gen_range(2..=4);
        let count = r.gen_range(1..=4);
        if let Some(p) = random_presentation(&mut r, rank, count, 40) {
            presentations.push(p);
        }
    }
    let mut disagreements = 0;
    for p in &presentations {
        let fast = check_small_cancellation(p, one_sixth()).unwrap();
        let fast_per: Vec<usize> = fast.max_piece_per_relator.iter().map(|r| r.longest_piece).collect();
        if fast_per != naive_pieces_per_relator(p) {
            disagreements += 1;
            continue;
        }
        let sym = symmetrize(p);
        let naive = naive_member_pieces(p);
        let pieces = sym.member_pieces();
        let member_ok = sym.len() == naive.len()
            && sym
                .members()
                .iter()
                .enumerate()
                .all(|(i, m)| naive.get(sym.member_letters(m)) == Some(&(pieces[i] as usize)));
        if !member_ok {
            disagreements += 1;
        }
    }
    let pass = k10.passed() && !k1.passed() && disagreements == 0;
    verdict(
        pass,
        format!(
            "k=10 {:?}{w10}; k=1 {:?}; smallest passing k = {min_k:?}; piece tables agree with the naive scan on {}/{} presentations",
            k10.verdict,
            k1.verdict,
            presentations.len() - disagreements,
            presentations.len()
        ),
    )
}

fn c3_dehn_fuzz() -> Verdict {
    let rips = rips(10, RipsMode::Complete);
    let g = rips.g_presentation();
    let ctx = DehnContext::new(g.clone());
    let all: Vec<u32> = (0..g.alphabet().len() as u32).collect();
    let relators: Vec<Word> = g.relators().iter().map(|r| r.as_word()).collect();
    let mut r = rng(3, "c3-products");
    let mut stuck = Vec::new();
    for trial in 0..500 {
        let factors = r.gen_range(1..=4);
        let mut w = Word::empty();
        for _ in 0..factors {
            let rel = &relators[r.gen_range(0..relators.len())];
            let rel = if r.gen_bool(0.5) { rel.inverse() } else { rel.clone() };
            let t = random_reduced_in(&mut r, &all, 0, 8);
            w = w.concat(&rel.conjugate_by(&t));
        }
        let red = ctx.dehn_reduce(&w);
        if !red.is_empty() {
            stuck.push((trial, w.len(), red.len()));
        }
    }
    let n_gens = [rips.x().generator(), rips.y().generator()];
    let mut r = rng(3, "c3-free");
    let mut collapsed = 0;
    for _ in 0..500 {
        let w = random_reduced_in(&mut r, &n_gens, 1, 20);
        if ctx.dehn_reduce(&w).is_empty() {
            collapsed += 1;
        }
    }
    let first = stuck.first().map_or(String::new(), |(t, l, rl)| {
        format!("; first stuck trial {t}: length {l} reduced to {rl}")
    });
    verdict(
        stuck.is_empty() && collapsed == 0,
        format!(
            "{}/500 relator products reach the empty word{first}; {}/500 free words stay nonempty",
            500 - stuck.len(),
            500 - collapsed
        ),
    )
}

fn c4_inner_consistency() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    for k in [10u32, 16] {
        let rips = rips(k, RipsMode::Complete);
        let ctx = DehnContext::new(rips.g_presentation().clone());
        for (i, rho) in rips.q_presentation().relator_words().iter().enumerate() {
            let w_rho = rips.relator_rhs(i);
            let phi = rips.outer(rho.clone()).unwrap();
            for l in [rips.x(), rips.y()] {
                let lw = Word::letter(l);
                let staged = phi.apply_staged(&lw, DEFAULT_MATERIALIZE_BUDGET).unwrap();
                let lhs = staged.to_g_word();
                let rhs = lw.conjugate_by(w_rho);
                let proved = ctx.proves_equal(&lhs, &rhs);
                let exact = ctx.are_equal(&lhs, &rhs);
                ok &= proved;
                if ctx.sc_verified() {
                    ok &= exact == Ok(true);
                }
                let exact_txt = match exact {
                    Ok(b) => b.to_string(),
                    Err(Error::UnsupportedContext(_)) => "refused (not C'(1/6))".into(),
                    Err(e) => e.to_string(),
                };
                lines.push(format!(
                    "k={k} rho{i} {}: proved {proved}, are_equal {exact_txt}, |outer| {}",
                    rips.g_presentation().format_word(&lw),
                    staged.outer.len()
                ));
            }
        }
    }
    verdict(ok, lines.join("; "))
}

fn c5_growth_shape() -> Verdict {
    let rips = rips(10, RipsMode::Complete);
    let g = rips.g_presentation();
    let metric = HeisenbergMetric::new(80, 0, 1).unwrap();
    let q = g.parse_word("[a,b]").unwrap();
    let c = CyclicWord::new(&Word::letter(rips.x()));
    let ns: Vec<i64> = (1..=400).collect();
    let curve = growth_curve(&rips, &q, &c, &ns, &metric, NormMode::Counts, None).unwrap();
    let gaps = curve.samples.iter().filter(|s| s.ln_upper.is_none()).count();
    let domain = curve.defined_domain();
    let f = |n: i64| curve.ln_upper_at(n).unwrap();
    let eq = equivalent(f, |n| (n as f64).sqrt(), &domain, 64).unwrap();
    let pts: Vec<(f64, f64)> = curve.points().into_iter().filter(|(n, _)| *n >= 50.0).collect();
    let slope = loglog_slope(&pts).unwrap();
    let pass = gaps == 0 && eq.holds() && (0.4..=0.6).contains(&slope);
    verdict(
        pass,
        format!(
            "{} samples, {gaps} gaps; equivalent to sqrt(n) with C = {:?} (C_max 64); log-log slope on [50,400] = {slope:.4}",
            domain.len(),
            eq.constant_c
        ),
    )
}

fn c6_bracket() -> Verdict {
    let rips = rips(16, RipsMode::Complete);
    let g = rips.g_presentation();
    let ctx = DehnContext::new(g.clone());
    assert!(ctx.sc_verified());
    let metric = HeisenbergMetric::new(16, 0, 1).unwrap();
    let phis = ["", "a", "b", "a^-1", "b^-1", "[a,b]"];
    let classes = ["x", "y", "x y", "x y^-1", "x^2", "x y x^-1 y^-1"];
    let radius = 4;
    let (mut certified, mut g_certified, mut violations, mut samples) = (0, 0, Vec::new(), 0);
    for phi_txt in phis {
        let q = g.parse_word(phi_txt).unwrap();
        for c_txt in classes {
            let c = CyclicWord::new(&g.parse_word(c_txt).unwrap());
            for n in 0..=1i64 {
                samples += 1;
                let counts = n_norm_upper(&rips, &q, &c, n, &metric, NormMode::Counts).unwrap().upper;
                let geo = metric.geodesic(&q.pow(n)).unwrap();
                let Ok(img) = rips.outer(geo).unwrap().apply(&c.as_word()) else { continue };
                let mat = cyclic_reduce(&img).0.len();
                if BigUint::from(mat) > counts {
                    violations.push(format!("{phi_txt}^{n}({c_txt}): materialized {mat} > counts {counts}"));
                }
                for (alphabet, tally) in [(ConjugatorAlphabet::N, &mut certified), (ConjugatorAlphabet::G, &mut g_certified)] {
                    if let Some(v) = n_norm_bfs_oracle(&ctx, &rips, &img, radius, 1, alphabet).unwrap() {
                        *tally += 1;
                        if v > mat {
                            violations.push(format!("{phi_txt}^{n}({c_txt}): {alphabet:?} oracle {v} > materialized {mat}"));
                        }
                    }
                }
            }
        }
    }
    // the oracle column of a sampled curve obeys the same bracket
    let q = g.parse_word("a").unwrap();
    let c = CyclicWord::new(&Word::letter(rips.x()));
    let cfg = NOracleConfig { ctx: &ctx, radius, conj_radius: 1 };
    let curve = growth_curve(&rips, &q, &c, &[0, 1, 2], &metric, NormMode::Materialize, Some(cfg)).unwrap();
    for s in &curve.samples {
        if let (Some(o), Some(u)) = (s.oracle_exact, s.ln_upper) {
            certified += 1;
            if (o as f64).ln() > u + 1e-12 {
                violations.push(format!("curve n={}: oracle {o} above ln bound {u}", s.n));
            }
        }
    }
    let pass = violations.is_empty() && certified > 0;
    verdict(
        pass,
        format!(
            "k=16, {samples} samples: {certified} N-oracle certified, {g_certified} G-oracle certified, {} violations{}",
            violations.len(),
            violations.first().map_or(String::new(), |v| format!(" (first: {v})"))
        ),
    )
}

fn c7_product() -> Verdict {
    let f1 = FreeFactor::random_nielsen(2, 2, 7, "factor-1").unwrap();
    let f2 = FreeFactor::random_nielsen(3, 2, 7, "factor-2").unwrap();
    let independent = |f: &FreeFactor, g: &Word, n: u32| cyclic_reduce(&f.apply_power(g, n)).0.len();
    let (i1, i2): (Vec<Word>, Vec<Word>) = {
        let mut r = rng(7, "c7-tuples");
        (0..100)
            .map(|_| {
                let a = random_reduced_in(&mut r, &[0, 1], 0, 8);
                let b = random_reduced_in(&mut r, &[0, 1, 2], 0, 8);
                (a, b)
            })
            .unzip()
    };
    let expected: Vec<Vec<usize>> = i1
        .iter()
        .zip(&i2)
        .map(|(a, b)| (0..=10).map(|n| independent(&f1, a, n) + independent(&f2, b, n)).collect())
        .collect();
    let p = ProductGroup::new(vec![Box::new(f1), Box::new(f2)]);
    let mut mismatches = 0;
    for (t, (a, b)) in i1.iter().zip(&i2).enumerate() {
        for n in 0..=10u32 {
            if p.power_norm(&[a.clone(), b.clone()], n).unwrap() != BigUint::from(expected[t][n as usize]) {
                mismatches += 1;
            }
        }
    }
    let ns: Vec<u32> = (0..=10).collect();
    let mut support_ok = true;
    for (t, (a, b)) in i1.iter().zip(&i2).enumerate().take(20) {
        for (slot, w) in [(0usize, a), (1, b)] {
            if cyclic_reduce(w).0.is_empty() {
                continue;
            }
            let mut tuple = [Word::empty(), Word::empty()];
            tuple[slot] = w.clone();
            let prod = p.product_growth_curve(&tuple, &ns).unwrap();
            let single = factor_growth_curve(p.factors()[slot].as_ref(), w, &ns).unwrap();
            let same = prod.samples.iter().zip(&single.samples).all(|(x, y)| x.n == y.n && x.ln_upper == y.ln_upper);
            if !same || prod.meta.support != [slot] {
                support_ok = false;
                eprintln!("tuple {t} slot {slot}: single-support curve differs");
            }
        }
    }
    verdict(
        mismatches == 0 && support_ok,
        format!("{mismatches} nonzero differences over 100 tuples x n in [0,10]; single-support curves match: {support_ok}"),
    )
}

fn c8_lenfun() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, d) in [(1, 3), (1, 2), (2, 3), (1, 1)] {
        let l = LengthFunctionZ::power(n, d).unwrap();
        let rep = check_length_function(&l, 30, 4.0, 10_000, 8).unwrap();
        ok &= rep.pass;
        match rep.axioms.iter().find(|a| !a.pass) {
            None => parts.push(format!("{n}/{d} pass")),
            Some(a) => parts.push(format!("{n}/{d} fails axiom {} ({})", a.axiom, a.detail)),
        }
    }
    let zero = LengthFunctionZ::table(vec![0; 30 * 30 + 1]);
    let rep = check_length_function(&zero, 30, 4.0, 100, 8).unwrap();
    let a1 = &rep.axioms[0];
    let zero_ok = !a1.pass && a1.witness == Some(vec![1]);
    ok &= zero_ok;
    parts.push(format!("zero function fails axiom 1 with witness {:?}", a1.witness));
    verdict(ok, parts.join(", "))
}

fn c9_lipschitz() -> Verdict {
    let rips = rips(10, RipsMode::Complete);
    let g = rips.g_presentation();
    let ctx = DehnContext::new(g.clone());
    let id = lip_estimate(&rips.outer(Word::empty()).unwrap(), 2, &ctx).unwrap();
    let id_ok = id.lower == 0.0 && id.upper == 0.0;
    let mut r = rng(9, "c9-q");
    let mut qs: Vec<Word> = (0..20).map(|_| random_reduced_in(&mut r, &[0, 1], 1, 6)).collect();
    for m in 1..=5 {
        qs.push(g.parse_word(&format!("[a,b]^{m}")).unwrap());
    }
    let (mut bracket_ok, mut envelope_ok) = (0, 0);
    for (i, q) in qs.iter().enumerate() {
        let phi = rips.outer(q.clone()).unwrap();
        let kappa = BigUint::from(kappa_max_len(&phi).unwrap());
        if lip_upper_exact(&phi).unwrap() <= kappa.pow(q.len() as u32) {
            envelope_ok += 1;
        }
        if i < 20 {
            let est = lip_estimate(&phi, 2, &ctx).unwrap();
            if est.lower <= est.upper {
                bracket_ok += 1;
            }
        }
    }
    verdict(
        id_ok && bracket_ok == 20 && envelope_ok == qs.len(),
        format!(
            "identity [{}, {}]; lower <= upper on {bracket_ok}/20 seeded chi(q); exact envelope on {envelope_ok}/{} words",
            id.lower,
            id.upper,
            qs.len()
        ),
    )
}

fn hash_dir(dir: &Path) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        let bytes = std::fs::read(&p).unwrap();
        let digest: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        out.insert(p.file_name().unwrap().to_string_lossy().into_owned(), digest);
    }
    out
}

fn c10_determinism() -> Verdict {
    let work = tempfile::tempdir().unwrap();
    let q = work.path().join("heisenberg.txt");
    std::fs::write(&q, HEISENBERG).unwrap();
    let q = q.to_str().unwrap().to_owned();
    let plans: Vec<Vec<&str>> = vec![
        vec!["parse", "--presentation", &q, "--out", "OUT/parsed.txt"],
        vec!["sc-check", "--presentation", &q, "--k", "16", "--out", "OUT/sc16.json"],
        vec!["sc-check", "--presentation", &q, "--k", "10", "--out", "OUT/sc10.json"],
        vec!["rips-gen", "--presentation", &q, "--k", "10", "--out", "OUT/g10.txt"],
        vec!["rips-gen", "--presentation", &q, "--k", "4", "--mode", "paper", "--out", "OUT/g4p.txt"],
        vec!["dehn", "--presentation", &q, "--word", "[a,[a,b]] a b"],
        vec!["heisenberg", "--n-max", "100", "--radius", "40", "--csv", "OUT/z.csv"],
        vec!["growth", "--presentation", &q, "--k", "10", "--q", "[a,b]", "--class", "x", "--n-max", "120", "--csv", "OUT/growth.csv"],
        vec!["growth", "--presentation", &q, "--k", "16", "--q", "a", "--class", "x y", "--n-max", "1", "--mode", "materialize", "--oracle-radius", "3", "--csv", "OUT/growth_m.csv"],
        vec!["--seed", "11", "lenfun", "--alpha", "0.5", "--lambda", "4", "--rmax", "30", "--out", "OUT/lenfun.json"],
        vec!["product-growth", "--presentation", &q, "--k", "10", "--k", "12", "--q", "[a,b]", "--class", "x", "--class", "y", "--n-max", "30", "--csv", "OUT/product.csv"],
        vec!["lip", "--presentation", &q, "--k", "10", "--q", "a b", "--radius", "2", "--out", "OUT/lip.json"],
    ];
    let mut runs: Vec<(BTreeMap<String, String>, Vec<(i32, Vec<u8>)>)> = Vec::new();
    for round in 0..2 {
        let out_dir = work.path().join(format!("round{round}"));
        std::fs::create_dir(&out_dir).unwrap();
        let mut stdouts = Vec::new();
        for plan in &plans {
            let argv: Vec<String> = std::iter::once("cc-growth".to_string())
                .chain(plan.iter().map(|a| a.replace("OUT", out_dir.to_str().unwrap())))
                .collect();
            let mut stdout = Vec::new();
            let mut stderr = Vec::new();
            let code = ccgrowth::cli::main_with_args(&argv, &mut stdout, &mut stderr);
            // summaries name the round directory; compare them with it masked
            let masked = String::from_utf8_lossy(&stdout).replace(out_dir.to_str().unwrap(), "OUT").into_bytes();
            stdouts.push((code, masked));
        }
        runs.push((hash_dir(&out_dir), stdouts));
    }
    let files_same = runs[0].0 == runs[1].0;
    let stdout_same = runs[0].1 == runs[1].1;
    let codes: Vec<i32> = runs[0].1.iter().map(|(c, _)| *c).collect();
    verdict(
        files_same && stdout_same && !runs[0].0.is_empty(),
        format!(
            "{} plans, {} output files hash-identical across runs: {files_same}; stdout identical: {stdout_same}; exit codes {codes:?}",
            plans.len(),
            runs[0].0.len()
        ),
    )
}
