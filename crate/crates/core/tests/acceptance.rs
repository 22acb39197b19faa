//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use upq_core::datum::{datum_from_mu, enumerate_data, mu_from_datum};
use upq_core::lambda_map::{compute_lambda_a, project_dominant};
use upq_core::oracle::*;
use upq_core::screening::*;
use upq_core::theta::{assemble_inf_char, flippable_blocks, lkt_family};
use upq_core::weights::rho;
use upq_core::BlockShape::*;
use upq_core::{screen, HalfRational, KTypeWeight, LambdaDatum, ThetaDatum, Vector, Verdict};

/// Collects failed checks instead of stopping at the first.
#[derive(Default)]
struct Checks(Vec<String>);

impl Checks {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.0.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn is(&mut self, what: &str, ok: bool) {
        if !ok {
            self.0.push(what.to_string());
        }
    }
}

fn ints(v: &[i64]) -> Vector {
    Vector::from_ints(v)
}

fn c1_golden_lambda_a(c: &mut Checks) {
    let res = compute_lambda_a(&mu("2,2,2,2,2,2,2|0,-3,-3,-4"), sig(7, 4)).unwrap();
    c.eq("lambda_a", res.lambda_a, halves(&[6, 4, 2, 2, 0, -1, -1, 2, -1, -1, -4]));
    let d = datum_from_mu(&mu("2,2,2,2,2,2,2|0,-3,-3,-4"), sig(7, 4)).unwrap();
    c.eq(
        "blocks",
        d.blocks,
        vec![
            block(TrapezoidWideTop, 1, 0, 6),
            block(TrapezoidWideTop, 1, 0, 4),
            block(TrapezoidWideTop, 2, 1, 2),
            block(TrapezoidWideTop, 1, 0, 0),
            block(Rectangle, 2, 2, -1),
            block(TrapezoidWideBottom, 0, 1, -4),
        ],
    );
}

fn c2_golden_bijection(c: &mut Checks) {
    let want = ints(&[1, 1, 0, 0, -1, -2, 1, 1, 0]);
    let mut shapes = Vec::new();
    for m in ["0,0,-1,-1,-1,-1|2,2,1", "-1,-1,-1,-1,-1,-1|3,3,1"] {
        let m = mu(m);
        c.eq("lambda_a", compute_lambda_a(&m, sig(6, 3)).unwrap().lambda_a, want.clone());
        let d = datum_from_mu(&m, sig(6, 3)).unwrap();
        shapes.push(d.blocks[0].shape);
        c.eq("inverse", mu_from_datum(&d).unwrap(), m);
    }
    c.eq("parallelogram shapes", shapes, vec![ParallelogramDown, ParallelogramUp]);
}

fn c3_golden_inf_chars(c: &mut Checks) {
    let u62 = LambdaDatum::new(
        sig(6, 2),
        vec![
            block(TrapezoidWideTop, 1, 0, 3),
            block(TrapezoidWideTop, 1, 0, 1),
            block(Rectangle, 2, 2, 0),
            block(TrapezoidWideTop, 1, 0, -1),
            block(TrapezoidWideTop, 1, 0, -3),
        ],
    )
    .unwrap();
    let u62 = ThetaDatum::new(u62, vec![nu(&[]), nu(&[]), nu(&[7, 5]), nu(&[]), nu(&[])]).unwrap();
    c.eq("U(6,2) trivial", assemble_inf_char(&u62).coords().clone(), rho(8));
    let u52 = LambdaDatum::new(
        sig(5, 2),
        vec![block(TrapezoidWideTop, 1, 0, 2), block(TrapezoidWideTop, 3, 2, 0), block(TrapezoidWideTop, 1, 0, -2)],
    )
    .unwrap();
    let u52 = ThetaDatum::new(u52, vec![nu(&[]), nu(&[6, 4]), nu(&[])]).unwrap();
    c.eq("U(5,2) trivial", assemble_inf_char(&u52).coords().clone(), rho(7));
    let td = large_nu();
    c.eq("large_nu inf_char", assemble_inf_char(&td).coords().clone(), ints(&[3, 1, 1, 1, 0, 0, 0, 0, -4]));
    let res = compute_lambda_a(&td.reference_mu().unwrap(), sig(5, 4)).unwrap();
    c.eq(
        "large_nu lambda_a multiset",
        res.lambda_a.sorted_desc(),
        halves(&[-1, 2, 2, 1, 1, 0, 0, 0, -1]).sorted_desc(),
    );
}

fn c4_golden_screening(c: &mut Checks) {
    let r = screen(&large_nu()).unwrap();
    c.eq("good_cuts", r.good_cuts.clone(), vec![]);
    c.eq("fpp_pass", r.fpp_pass, false);
    c.eq("max_gap", r.max_gap, HalfRational::from_int(4));
    c.eq("unitarily_small", r.unitarily_small, true);
    c.eq("hull_check", r.hull_pass, true);
    c.eq("verdict", r.verdict, Verdict::NonUnitaryByFPP);
    let case_b: Vec<KTypeWeight> =
        certificate_case_b(&large_nu()).unwrap().into_iter().flat_map(|cert| cert.witness_ktypes).collect();
    c.eq(
        "case (b) weights",
        case_b,
        vec![mu("1,0,0,0,0|1,1,0,-1"), mu("1,0,0,0,0|2,0,0,-1"), mu("1,0,0,0,0|2,1,-1,-1"), mu("1,0,0,0,0|2,1,0,-2")],
    );
}

fn c5_golden_case_a(c: &mut Checks) {
    let td = u43_case_a();
    c.eq("inf_char", assemble_inf_char(&td).coords().clone(), halves(&[3, 2, 2, 2, -1, -1, -1]));
    let certs = certificate_case_a(&td).unwrap();
    c.eq("certificates", certs.len(), 1);
    if let Some(cert) = certs.first() {
        c.eq("witnesses", cert.witness_ktypes.clone(), vec![mu("1,1,1,0|1,0,-1"), mu("1,1,0,0|1,1,-1")]);
    }
}

fn c6_round_trip(c: &mut Checks) {
    let mut count = 0;
    for n in 1..=5 {
        for p in 0..=n {
            let s = sig(p, n - p);
            for d in enumerate_data(s, h(3), false).unwrap() {
                let m = mu_from_datum(&d).unwrap();
                if datum_from_mu(&m, s).unwrap() != d {
                    c.is(&format!("datum round trip {s} {m}"), false);
                }
                count += 1;
            }
        }
    }
    c.is("enumeration is nonempty", count > 100);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let s = random_signature(&mut rng, 7);
        let m = random_dominant_mu(&mut rng, s, -5, 5);
        let back = mu_from_datum(&datum_from_mu(&m, s).unwrap()).unwrap();
        if back != m {
            c.is(&format!("weight round trip {s} {m} -> {back}"), false);
        }
    }
}

fn c7_projection_and_hull_oracles(c: &mut Checks) {
    for n in 1..=6u32 {
        for code in 0..5i64.pow(n) {
            let d: Vector = (0..n).map(|k| HalfRational::from_int(code / 5i64.pow(k) % 5 - 2)).collect();
            if project_dominant(&d).value != oracle_project(&d).unwrap() {
                c.is(&format!("projection of {d:?}"), false);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let d = random_rational_vector(&mut rng, n);
        if project_dominant(&d).value != oracle_project(&d).unwrap() {
            c.is(&format!("projection of {d:?}"), false);
        }
    }
    for i in 0..2000 {
        let (x, center) = random_hull_probe(&mut rng, 1 + i % 5);
        if hull_check(&upq_core::InfChar::new(x.clone()), &center).unwrap() != oracle_hull(&x, &center).unwrap() {
            c.is(&format!("hull of {x:?} around {center:?}"), false);
        }
    }
}

fn c8_flips_and_fundamental_hull(c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut fundamental = 0;
    for _ in 0..500 {
        let td = random_theta_datum(&mut rng, 7);
        let lam = assemble_inf_char(&td);
        let flips = flippable_blocks(&td);
        for &i in &flips {
            if assemble_inf_char(&td.with_flipped(i)) != lam {
                c.is("inf_char changed under a flip", false);
            }
        }
        c.eq("family size", lkt_family(&td).unwrap().len(), 1 << flips.len());
        if fundamental_partition(&td.datum).is_fundamental() && fpp_gap_check(&lam).0 {
            fundamental += 1;
            let center = Vector::constant(lam.coords().mean().unwrap(), lam.coords().len());
            if !hull_check(&lam, &center).unwrap() {
                c.is(&format!("fundamental datum outside hull: {lam:?}"), false);
            }
        }
    }
    c.is("some fundamental data with small gaps were sampled", fundamental > 10);
}

fn c9_dirac_sanity(c: &mut Checks) {
    for n in 1..=6 {
        for q in [1, 2] {
            let td = trivial(n, q);
            let r = screen(&td).unwrap();
            c.is(&format!("trivial U({n},{q}) flagged by Dirac"), r.dirac_violations.is_empty());
        }
    }
    let d = LambdaDatum::new(sig(1, 1), vec![block(ParallelogramDown, 1, 1, 1)]).unwrap();
    let td = ThetaDatum::new(d, vec![nu(&[5])]).unwrap();
    let lam = assemble_inf_char(&td);
    let flagged = lkt_family(&td).unwrap().iter().any(|e| dirac_test(&e.mu, &lam, sig(1, 1), Level::PFull).unwrap().0);
    c.is("U(1,1) parallelogram with nu=5/2 not flagged", flagged);
}

fn analyze_bytes(input: &str) -> (Option<i32>, Vec<u8>) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_upq"))
        .arg("analyze")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code(), out.stdout)
}

fn c10_determinism(c: &mut Checks) {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/golden");
    let groups = upq_core::selftest::load_dir(std::path::Path::new(dir)).unwrap();
    let requests = ["screen", "case_a", "segments", "lkt_family", "lambda_a", "lambda_u", "bottom_layer", "dirac"];
    let mut inputs = 0;
    for case in groups.iter().flat_map(|g| &g.cases).filter(|case| requests.contains(&case.op.as_str())) {
        let text = case.input.to_string();
        let first = analyze_bytes(&text);
        let second = analyze_bytes(&text);
        c.eq(&format!("{} exit", case.name), first.0, Some(0));
        c.is(&format!("{} differs between runs", case.name), first == second);
        inputs += 1;
    }
    c.is("at least 15 golden inputs", inputs >= 15);
}

type Criterion = (&'static str, fn(&mut Checks));

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden lambda_a and six-block datum", c1_golden_lambda_a),
        ("golden bijection for both parallelogram weights", c2_golden_bijection),
        ("golden infinitesimal characters", c3_golden_inf_chars),
        ("golden screening report", c4_golden_screening),
        ("golden case (a) certificate", c5_golden_case_a),
        ("weight/datum round trip", c6_round_trip),
        ("projection and hull agree with oracles", c7_projection_and_hull_oracles),
        ("flip invariance, family size, fundamental hull", c8_flips_and_fundamental_hull),
        ("Dirac inequality sanity", c9_dirac_sanity),
        ("analyze output is deterministic", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let mut checks = Checks::default();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut checks)));
        if let Err(panic) = outcome {
            let msg =
                panic.downcast_ref::<String>().cloned().or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()));
            checks.0.push(format!("panicked: {}", msg.unwrap_or_default()));
        }
        if checks.0.is_empty() {
            println!("criterion {:>2}: PASS  {name}", i + 1);
        } else {
            failed += 1;
            let shown: Vec<&String> = checks.0.iter().take(3).collect();
            println!("criterion {:>2}: FAIL  {name}: {shown:?}", i + 1);
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
