use bordcalc_core::charnum::NumberKey;
use bordcalc_core::parse::{
    parse_bundle, parse_laurent, parse_line_class, parse_manifold, parse_presentation, parse_space,
};
use bordcalc_core::{
    delta, dictionary, identify_in_n, identify_in_nbo1, phi, pt_class, sw_numbers, window_basis,
    Engine, Error, Membership, Presentation, Result, Space, Window,
};
use serde_json::{json, Value};

/// What one input produced.
pub struct Outcome {
    pub text: String,
    pub value: Value,
    /// A check carried by this command did not hold.
    pub failed: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>, value: Value) -> Self {
        Self {
            text: text.into(),
            value,
            failed: false,
        }
    }
}

fn terms(p: &Presentation) -> Value {
    json!(p.monomials().map(|m| m.to_string()).collect::<Vec<_>>())
}

fn presentation_outcome(p: &Presentation) -> Outcome {
    Outcome::ok(p.to_string(), json!({ "terms": terms(p) }))
}

pub fn nf(engine: &Engine, input: &str) -> Result<Outcome> {
    let (nf, steps) = engine.normal_form_counted(&parse_presentation(input, engine)?)?;
    let mut out = presentation_outcome(&nf);
    out.value["steps"] = json!(steps);
    Ok(out)
}

pub fn loc(engine: &Engine, input: &str) -> Result<Outcome> {
    let l = engine.localize(&parse_presentation(input, engine)?)?;
    Ok(Outcome::ok(
        l.to_string(),
        json!({ "degree": l.homogeneous_degree() }),
    ))
}

pub fn alpha(engine: &Engine, input: &str) -> Result<Outcome> {
    let a = engine.alpha(&parse_presentation(input, engine)?)?;
    Ok(Outcome::ok(
        a.to_string(),
        json!({ "degree": a.homogeneous_degree() }),
    ))
}

pub fn gamma(engine: &Engine, input: &str) -> Result<Outcome> {
    Ok(presentation_outcome(
        &engine.gamma(&parse_presentation(input, engine)?)?,
    ))
}

pub fn divide_e(engine: &Engine, input: &str) -> Result<Outcome> {
    Ok(presentation_outcome(
        &engine.divide_e(&parse_presentation(input, engine)?)?,
    ))
}

pub fn member(engine: &Engine, input: &str) -> Result<Outcome> {
    Ok(match engine.member(&parse_laurent(input)?)? {
        Membership::Member(p) => Outcome::ok(
            format!("member: {p}"),
            json!({ "status": "member", "preimage": terms(&p) }),
        ),
        Membership::NotMember => Outcome::ok("not a member", json!({ "status": "not_member" })),
        Membership::Undecided => Outcome::ok(
            format!("undecided after slack {}", engine.config.slack_cap),
            json!({ "status": "undecided" }),
        ),
    })
}

pub fn geometric(engine: &Engine, input: &str) -> Result<Outcome> {
    let g = engine.is_geometric(&parse_presentation(input, engine)?)?;
    Ok(Outcome::ok(g.to_string(), json!(g)))
}

pub fn quotient(engine: &Engine, input: &str) -> Result<Outcome> {
    let q = engine.quotient_reduce(&parse_presentation(input, engine)?)?;
    let parts: serde_json::Map<String, Value> =
        q.0.iter().map(|(k, c)| (k.to_string(), terms(c))).collect();
    Ok(Outcome::ok(q.to_string(), Value::Object(parts)))
}

pub fn euler(_engine: &Engine, input: &str) -> Result<Outcome> {
    let nums: Vec<&str> = input
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    let parsed: Option<Vec<u32>> = nums.iter().map(|s| s.parse().ok()).collect();
    match parsed.as_deref() {
        Some(&[m, k]) => Ok(presentation_outcome(&bordcalc_core::euler(m, k))),
        _ => Err(Error::Parse(bordcalc_core::ParseError::new(
            0,
            &["m,k"],
            "euler expects two nonnegative integers m and k",
        ))),
    }
}

pub fn phi_cmd(engine: &Engine, input: &str) -> Result<Outcome> {
    let x = phi(&parse_manifold(input)?, &engine.ring)?;
    Ok(Outcome::ok(
        x.to_string(),
        json!({ "degree": x.homogeneous_degree() }),
    ))
}

pub fn delta_cmd(engine: &Engine, input: &str) -> Result<Outcome> {
    let x = delta(&parse_bundle(input)?, &engine.ring)?;
    let parts: serde_json::Map<String, Value> = x
        .components()
        .map(|(j, c)| (j.to_string(), json!(c.to_string())))
        .collect();
    Ok(Outcome::ok(x.to_string(), Value::Object(parts)))
}

pub fn compare(engine: &Engine, input: &str) -> Result<Outcome> {
    let m = parse_manifold(input)?;
    let lhs = dictionary(&phi(&m, &engine.ring)?);
    let rhs = engine.localize(&pt_class(&m, engine)?)?;
    let equal = lhs == rhs;
    Ok(Outcome {
        text: if equal {
            format!("agree: {lhs}")
        } else {
            format!("MISMATCH: dictionary(phi) = {lhs}, loc(pt_class) = {rhs}")
        },
        value: json!({ "dictionary_phi": lhs.to_string(), "localized_pt_class": rhs.to_string(), "equal": equal }),
        failed: !equal,
    })
}

fn number_name((parts, k): &NumberKey) -> String {
    let mut factors = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let run = parts[i..].iter().take_while(|&&p| p == parts[i]).count();
        factors.push(if run == 1 {
            format!("w{}", parts[i])
        } else {
            format!("w{}^{run}", parts[i])
        });
        i += run;
    }
    match k {
        0 => {}
        1 => factors.push("t".into()),
        k => factors.push(format!("t^{k}")),
    }
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

pub fn charnum(engine: &Engine, input: &str, reference: Option<&str>) -> Result<Outcome> {
    let desc = parse_space(input)?;
    let space = match reference {
        Some(r) => Space::with_reference(desc.clone(), parse_line_class(r)?),
        None => Space::new(desc.clone()),
    };
    let numbers = sw_numbers(&space)?;
    let nonzero: Vec<String> = numbers
        .iter()
        .filter(|(_, &v)| v)
        .map(|(k, _)| number_name(k))
        .collect();
    let (label, class) = match reference {
        Some(_) => (
            "N_*(BZ/2)",
            identify_in_nbo1(&space, &engine.ring)?.to_string(),
        ),
        None => ("N_*", identify_in_n(&desc, &engine.ring)?.to_string()),
    };
    let listed = if nonzero.is_empty() {
        "none".to_string()
    } else {
        nonzero.join(", ")
    };
    Ok(Outcome::ok(
        format!(
            "dimension {}\nnonzero numbers: {listed}\nclass in {label}: {class}",
            desc.dim()
        ),
        json!({
            "dimension": desc.dim(),
            "numbers": numbers.iter().map(|(k, v)| json!({ "partition": k.0, "t_power": k.1, "value": v })).collect::<Vec<_>>(),
            "class": class,
            "group": label,
        }),
    ))
}

/// Degree range `a..b`, `a..=b` or a single degree.
pub fn degree_range(input: &str) -> Result<(i64, i64)> {
    let bad = || {
        Error::Parse(bordcalc_core::ParseError::new(
            0,
            &["d", "a..b"],
            format!("bad degree range `{input}`"),
        ))
    };
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    let (lo, hi) = match input.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let d = parse(input)?;
            (d, d)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn basis_degree(engine: &Engine, d: i64) -> Result<Outcome> {
    let basis = engine.basis_table(d)?;
    let w = Window::standard(d, engine.config.window_height);
    let images = basis
        .iter()
        .map(|m| engine.localize(&Presentation::monomial(m.clone())))
        .collect::<Result<Vec<_>>>()?;
    let rank = window_basis(w, &images)?.rank();
    let geometric = basis.iter().filter(|m| m.epow() == 0).count();
    let mut text = format!(
        "degree {d}: {} monomials, rank {rank}, {geometric} geometric, {} obstruction",
        basis.len(),
        basis.len() - geometric
    );
    for m in &basis {
        text.push_str(&format!(
            "\n  {m}{}",
            if m.epow() == 0 { "" } else { "  [obstruction]" }
        ));
    }
    Ok(Outcome {
        text,
        value: json!({
            "degree": d,
            "window": [w.t_min, w.t_max],
            "count": basis.len(),
            "rank": rank,
            "monomials": basis.iter().map(|m| json!({ "monomial": m.to_string(), "geometric": m.epow() == 0 })).collect::<Vec<_>>(),
        }),
        failed: rank != basis.len(),
    })
}
