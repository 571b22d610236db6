mod common;

use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use crclass_core::classify::{classify, Brackets};
use crclass_core::geometry::{cramer_frame, lie_bracket, rho0};
use crclass_core::levi::{
    is_cr_function, k_quotients, l1a1_closed_form, l1a1_engine, levi_after_change, levi_det, levi_det_closed_form,
    levi_matrix, slant_k, transform_levi,
};
use crclass_core::{parse_expr, GaussianRational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn model_classifications() -> Outcome {
    for m in corpus() {
        let r = classify(&model_spec(&m)).map_err(|e| format!("{}: {e}", m.name))?;
        check(r.verdict == m.verdict, || format!("{}: got {}, want {}", m.name, r.verdict, m.verdict))?;
        if m.name == "class III2" {
            let ranks: Vec<usize> = r.ranks.iter().map(|x| x.generic.rank).collect();
            check(ranks == vec![3, 4, 5], || format!("III2 ranks {ranks:?}"))?;
        }
    }
    Ok(format!("{} models", corpus().len()))
}

fn closed_form_oracles() -> Outcome {
    let mut specs: Vec<(String, _)> =
        corpus().iter().filter(|m| (m.n, m.c) == (2, 1)).map(|m| (m.name.to_string(), model_spec(m))).collect();
    specs.push(("z1*zb1*u1".into(), spec(2, 1, &["z1*zb1*u1"])));
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..24 {
        let phi = random_real_phi(&mut rng);
        specs.push((phi.clone(), spec(2, 1, &[&phi])));
    }
    for (name, s) in &specs {
        let a = levi_det(s).map_err(|e| e.to_string())?;
        let b = levi_det_closed_form(s).map_err(|e| e.to_string())?;
        check(a == b, || format!("Levi determinant differs on {name}"))?;
        let a = l1a1_engine(s).map_err(|e| e.to_string())?;
        let b = l1a1_closed_form(s).map_err(|e| e.to_string())?;
        check(a == b, || format!("L1(conj A1) differs on {name}"))?;
    }
    Ok(format!("{} specs, 24 random", specs.len()))
}

fn k_quotients_agree() -> Outcome {
    for phi in [TUBE, "z1*zb1", "(z1 + z2)*(zb1 + zb2)"] {
        let s = spec(2, 1, &[phi]);
        check(levi_det(&s).unwrap().is_zero(), || format!("{phi}: det not zero"))?;
        let [a, b, c] = k_quotients(&s).map_err(|e| e.to_string())?;
        check(a == b && b == c, || format!("{phi}: quotients {a} | {b} | {c}"))?;
    }
    Ok("3 specs".into())
}

fn identity_suites() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut count = 0;
    for _ in 0..8 {
        let phi = random_real_phi(&mut rng);
        let s = spec(2, 1, &[&phi]);
        let fs = cramer_frame(&s).unwrap();
        let (l1, l2, lb1) = (&fs.l[0], &fs.l[1], &fs.lbar[0]);
        check(lie_bracket(l1, l2).is_zero(), || format!("[L1,L2] != 0 for {phi}"))?;
        let jac = lie_bracket(l1, &lie_bracket(l2, lb1))
            .add(&lie_bracket(l2, &lie_bracket(lb1, l1)))
            .add(&lie_bracket(lb1, &lie_bracket(l1, l2)));
        check(jac.is_zero(), || format!("Jacobi fails for {phi}"))?;
        check(levi_matrix(&s).unwrap().is_hermitian(), || format!("Levi not Hermitian for {phi}"))?;
        let r = &rho0(&fs)[0];
        check(r.conj() == *r, || "rho0 not real".into())?;
        for x in fs.l.iter().chain(&fs.lbar) {
            check(r.apply(x).is_zero(), || format!("rho0 does not annihilate frame for {phi}"))?;
        }
        check(lie_bracket(l1, lb1).conj() == lie_bracket(&l1.conj(), &lb1.conj()), || "conj/bracket".into())?;
        count += 1;
    }
    for phi in ["z*zb", "z^2*zb + z*zb^2 + z*zb*u", "u*z*zb/(1 + z*zb)"] {
        let s = spec(1, 1, &[phi]);
        let br = Brackets::new(&cramer_frame(&s).unwrap().as_frame());
        check(br.t.conj() == br.t, || format!("T not real for {phi}"))?;
        count += 1;
    }
    Ok(format!("{count} specs"))
}

fn observational_coefficient_unimodular() -> Outcome {
    let mut seen = 0;
    for m in corpus() {
        let r = classify(&model_spec(&m)).unwrap();
        if matches!(r.verdict, crclass_core::Verdict::ClassII | crclass_core::Verdict::ClassIII2) {
            let d = r.observational_d.ok_or("missing d")?;
            check((&d * &d.conj()).is_one(), || format!("{}: |d|^2 != 1", m.name))?;
            seen += 1;
        }
    }
    check(seen == 2, || format!("expected 2 verdicts, saw {seen}"))?;
    Ok("2 verdicts".into())
}

fn transformation_law() -> Outcome {
    let mut rng = StdRng::seed_from_u64(42);
    let examples = [TUBE, "z1*zb1 + z2*zb2", "z1*zb1*u1 + z2^2*zb2 + zb2^2*z2", "(z1 + z2)*(zb1 + zb2)"];
    let mut done = 0;
    while done < 10 {
        let m: Vec<Vec<GaussianRational>> = (0..2).map(|_| (0..2).map(|_| random_gr(&mut rng)).collect()).collect();
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        if det == GaussianRational::from_int(0) {
            continue;
        }
        let phi = examples[rng.gen_range(0..examples.len())];
        let s = spec(2, 1, &[phi]);
        let fs = cramer_frame(&s).unwrap();
        let base = levi_matrix(&s).unwrap();
        let (_, changed) = levi_after_change(&fs, &m).map_err(|e| e.to_string())?;
        check(changed == transform_levi(&base, &m, s.dims()), || format!("law fails on {phi}"))?;
        check(changed.generic_rank().rank == base.generic_rank().rank, || "rank changed".into())?;
        done += 1;
    }
    Ok("10 frame changes".into())
}

fn freeman_certificate() -> Outcome {
    for phi in ["z1*zb1", "(z1 + z2)*(zb1 + zb2)"] {
        let s = spec(2, 1, &[phi]);
        let kd = slant_k(&s).map_err(|e| e.to_string())?;
        check(kd.freeman.is_zero(), || format!("{phi}: freeman {}", kd.freeman))?;
        check(is_cr_function(&kd.k, &s).unwrap(), || format!("{phi}: k not CR"))?;
        let g = &(&kd.k * &kd.a_coeff(0)) + &kd.a_coeff(1);
        check(is_cr_function(&g, &s).unwrap(), || format!("{phi}: k*A1 + A2 not CR"))?;
    }
    Ok("2 specs".into())
}

fn round_trip_and_determinism() -> Outcome {
    let mut n = 0;
    for m in corpus() {
        for p in &m.phi {
            let e = parse_expr(p, m.n, m.c).map_err(|e| e.to_string())?;
            let again = parse_expr(&e.to_string(), m.n, m.c).map_err(|e| e.to_string())?;
            check(e == again, || format!("round trip fails on {p}"))?;
            check(again.to_string() == e.to_string(), || format!("printing unstable on {p}"))?;
            n += 1;
        }
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("iii2.json");
    std::fs::write(&path, r#"{"n": 1, "c": 3, "phi": ["z*zb", "z*zb*(z + zb)", "z*zb*(z^2 + 3/2*z*zb + zb^2)"]}"#)
        .map_err(|e| e.to_string())?;
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_crclass"))
            .args(["classify", "--json", "--input"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    check(a.status.success() && b.status.success(), || "crclass failed".into())?;
    check(!a.stdout.is_empty() && a.stdout == b.stdout, || "JSON reports differ".into())?;
    Ok(format!("{n} expressions, identical reports"))
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        ("1 model classifications", model_classifications),
        ("2 closed-form oracles", closed_form_oracles),
        ("3 k-quotients agree on degenerate Levi", k_quotients_agree),
        ("4 algebraic identity suites", identity_suites),
        ("5 observational coefficient is unimodular", observational_coefficient_unimodular),
        ("6 Levi transformation law", transformation_law),
        ("7 degenerate Freeman certificate", freeman_certificate),
        ("8 round trip and determinism", round_trip_and_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(info) => println!("PASS  {name} ({info}; {:.2?})", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    let total = start.elapsed();
    let in_budget = total.as_secs_f64() < 60.0;
    println!("{}  total runtime {total:.2?} (limit 60s)", if in_budget { "PASS" } else { "FAIL" });
    if failed > 0 || !in_budget {
        std::process::exit(1);
    }
}
