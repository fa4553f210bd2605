//! Acceptance criteria, one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use bordcalc_core::verify::{
    check_basis_independence, check_comparison_samples, check_conner_floyd,
    check_euler_not_geometric, check_exactness, check_gamma_model, check_geometric_products,
    check_localization_generation, check_normal_form_samples, check_obstruction_relation,
    check_strict_basis_witness, Check,
};
use bordcalc_core::{
    identify_in_nbo1, sw_numbers, Engine, FreeBZ2Elem, LineClass, Result, Space, SpaceDesc,
};

fn c1(_: &Engine) -> Result<Vec<Check>> {
    (-8..=8)
        .map(|d| check_localization_generation(d, 8))
        .collect()
}

fn c2(en: &Engine) -> Result<Vec<Check>> {
    (-8..=8).map(|d| check_exactness(en, d)).collect()
}

fn c3(en: &Engine) -> Result<Vec<Check>> {
    let mut out: Vec<Check> = (-8..=8)
        .map(|d| check_basis_independence(en, d))
        .collect::<Result<_>>()?;
    out.push(check_normal_form_samples(en, 200, 8, 3)?);
    Ok(out)
}

fn c4(en: &Engine) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=8u32 {
        for i in 0..=(8 - n) {
            out.push(check_gamma_model(en, i, n)?);
        }
    }
    Ok(out)
}

fn c5(en: &Engine) -> Result<Vec<Check>> {
    Ok(vec![
        check_geometric_products(en, 200, 8, 5)?,
        check_euler_not_geometric(en, 8)?,
    ])
}

fn c6(en: &Engine) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for n in 2..=6 {
            out.push(check_obstruction_relation(en, k, n)?);
        }
    }
    Ok(out)
}

fn c7(en: &Engine) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for d in 1..=6 {
        out.extend(check_conner_floyd(en, d)?);
    }
    Ok(out)
}

fn c8(en: &Engine) -> Result<Vec<Check>> {
    Ok(vec![check_comparison_samples(en, 100, 8, 8)?])
}

fn charnum_check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        suite: "charnum".into(),
        name: name.into(),
        degree: None,
        passed,
        detail,
    }
}

fn c9(en: &Engine) -> Result<Vec<Check>> {
    let rp3 = sw_numbers(&Space::new(SpaceDesc::RP(3)))?;
    let rp2 = sw_numbers(&Space::new(SpaceDesc::RP(2)))?;
    let w11 = rp2[&(vec![1, 1], 0)];
    let w2 = rp2[&(vec![2], 0)];
    let mut bad = Vec::new();
    for j in 0..=6 {
        let space = Space::with_reference(SpaceDesc::RP(j), LineClass::named("u"));
        if identify_in_nbo1(&space, &en.ring)? != FreeBZ2Elem::generator(j) {
            bad.push(j);
        }
    }
    Ok(vec![
        charnum_check(
            "RP(3) numbers vanish",
            rp3.values().all(|&v| !v),
            format!("{} numbers", rp3.len()),
        ),
        charnum_check(
            "RP(2): w1^2 = w2 = 1",
            w11 && w2,
            format!("w1^2 {w11}, w2 {w2}"),
        ),
        charnum_check(
            "identify_in_nbo1(RP(j), u) = s_j",
            bad.is_empty(),
            format!("j ≤ 6, failures {bad:?}"),
        ),
    ])
}

fn c10(en: &Engine) -> Result<Vec<Check>> {
    check_strict_basis_witness(en)
}

type Criterion = (&'static str, fn(&Engine) -> Result<Vec<Check>>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("localization generation, |d| ≤ 8", c1),
        ("Gysin exactness, |d| ≤ 8", c2),
        ("presentation completeness, |d| ≤ 8", c3),
        ("gamma geometric model, i + n ≤ 8", c4),
        ("geometric subring", c5),
        ("obstruction module, k ≤ 4, n ≤ 6", c6),
        ("Conner-Floyd exactness, dim ≤ 6", c7),
        ("comparison square, 100 samples", c8),
        ("characteristic-number oracle", c9),
        ("strict basis witness", c10),
    ];
    let engine = Engine::default();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, note) = match run(&engine) {
            Ok(checks) => {
                let bad: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
                for c in &bad {
                    eprintln!("    {} [{:?}]: {}", c.name, c.degree, c.detail);
                }
                (bad.is_empty(), format!("{} checks", checks.len()))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {name} ({note}, {:.2?})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
