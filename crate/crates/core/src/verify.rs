//! Degree-by-degree verification suites.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::{rho, CoefElem};
use crate::conner_floyd::{
    augmentation_from_boundary, delta, dictionary, phi, pt_class, underlying, BundleAlgElem,
    ManifoldExpr,
};
use crate::error::{Error, Result};
use crate::gf2poly::{GradedPoly, Monomial, VarId};
use crate::linalg::{relations, BitRow, Eliminator};
use crate::localized::{
    clear_denominators, evaluate_cleared, loc_p, window_basis, LaurentElem, Window,
};
use crate::presentation::{
    gamma_augmentation, iota, localize_gamma, BasisShape, Engine, FormalMonomial, Presentation,
    QuotientElem,
};
use crate::symbols;

pub const SUITES: [&str; 9] = [
    "loc", "seq", "basis", "gamma", "geomcomp", "trobs", "cf-exact", "compare", "all",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub degree: Option<i64>,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(
        suite: &str,
        name: impl Into<String>,
        degree: Option<i64>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            suite: suite.to_string(),
            name: name.into(),
            degree,
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub max_degree: i64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Task<'a> = Box<dyn Fn() -> Result<Vec<Check>> + Send + Sync + 'a>;

fn one<'a>(f: impl Fn() -> Result<Check> + Send + Sync + 'a) -> Task<'a> {
    Box::new(move || Ok(vec![f()?]))
}

/// Run a suite up to `max_degree`. Checks come back ordered by suite and degree.
pub fn verify(suite: &str, max_degree: i64, engine: &Engine) -> Result<Report> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    if max_degree < 0 {
        return Err(Error::Contract(format!(
            "max degree {max_degree} is negative"
        )));
    }
    let start = Instant::now();
    let d = max_degree;
    let mut tasks: Vec<Task> = vec![Box::new(move || basics(suite, engine))];
    let wanted = |name: &str| suite == "all" || suite == name;
    if wanted("loc") {
        for deg in -d..=d {
            tasks.push(one(move || check_localization_generation(deg, d as u32)));
        }
        tasks.push(one(move || check_loc_p_homogeneous(d as u32)));
    }
    if wanted("seq") {
        for deg in -d..=d {
            tasks.push(one(move || check_exactness(engine, deg)));
        }
    }
    if wanted("basis") {
        for deg in -d..=d {
            tasks.push(one(move || check_basis_independence(engine, deg)));
        }
        tasks.push(one(move || check_normal_form_samples(engine, 100, d, 0xB0)));
        if d >= 5 {
            tasks.push(Box::new(move || check_strict_basis_witness(engine)));
        }
    }
    if wanted("gamma") {
        for s in 2..=d {
            tasks.push(Box::new(move || {
                let mut out = Vec::new();
                for i in 0..=s - 2 {
                    out.push(check_gamma_model(engine, i as u32, (s - i) as u32)?);
                    if i >= 1 {
                        out.push(check_augmentation_routes(engine, i as u32, (s - i) as u32)?);
                    }
                }
                Ok(out)
            }));
        }
        for deg in 0..d {
            tasks.push(one(move || check_gamma_contract(engine, deg)));
        }
    }
    if wanted("geomcomp") {
        tasks.push(one(move || check_geometric_products(engine, 100, d, 0x6E0)));
        tasks.push(one(move || {
            check_euler_not_geometric(engine, d.max(1) as u32)
        }));
    }
    if wanted("trobs") {
        for n in 2..=d.max(1) as u32 {
            tasks.push(Box::new(move || {
                (1..=4)
                    .map(|k| check_obstruction_relation(engine, k, n))
                    .collect()
            }));
        }
    }
    if wanted("cf-exact") {
        for deg in 1..=d {
            tasks.push(Box::new(move || check_conner_floyd(engine, deg)));
        }
    }
    if wanted("compare") {
        tasks.push(one(move || check_comparison_samples(engine, 100, d, 0xC0)));
    }
    let groups = tasks.par_iter().map(|t| t()).collect::<Result<Vec<_>>>()?;
    Ok(Report {
        suite: suite.to_string(),
        max_degree,
        checks: groups.into_iter().flatten().collect(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn basics(suite: &str, engine: &Engine) -> Result<Vec<Check>> {
    let alpha_one = engine.alpha(&Presentation::one())?;
    let rank0 = engine.ring.rank(0)?;
    Ok(vec![
        Check::new(
            suite,
            "alpha(1) = 1",
            Some(0),
            alpha_one.is_one(),
            format!("alpha(1) = {alpha_one}"),
        ),
        Check::new(
            suite,
            "rank N_0 = 1",
            Some(0),
            rank0 == 1,
            format!("rank {rank0}"),
        ),
    ])
}

/// Monomials in `a<d>` and `c<j>` of degree exactly `s`.
pub fn ac_monomials(engine: &Engine, s: u32) -> Vec<Monomial> {
    let mut atoms: Vec<(VarId, u32)> = (1..=s).map(|j| (symbols::c(j), j)).collect();
    atoms.extend(
        engine
            .ring
            .generator_degrees(s)
            .into_iter()
            .map(|k| (symbols::a(k), k)),
    );
    let mut out = Vec::new();
    fn go(
        atoms: &[(VarId, u32)],
        from: usize,
        left: u32,
        cur: &mut Vec<(VarId, i32)>,
        out: &mut Vec<Monomial>,
    ) {
        if left == 0 {
            out.push(Monomial::from_exponents(symbols::table(), cur).unwrap());
            return;
        }
        for i in from..atoms.len() {
            let (id, deg) = atoms[i];
            if deg <= left {
                cur.push((id, 1));
                go(atoms, i, left - deg, cur, out);
                cur.pop();
            }
        }
    }
    go(&atoms, 0, s, &mut Vec::new(), &mut out);
    out
}

/// Every monomial of L in degree `d` whose a,c-part has degree ≤ `cap`
/// clears denominators and round-trips.
pub fn check_localization_generation(d: i64, cap: u32) -> Result<Check> {
    let engine = Engine::default();
    let mut count = 0;
    let mut bad = Vec::new();
    for s in 0..=cap {
        for m in ac_monomials(&engine, s) {
            let t = s as i64 - d;
            let x = LaurentElem::from_poly(GradedPoly::monomial(
                symbols::table(),
                m.shift_inv(t as i32),
            ))?;
            count += 1;
            let cleared = clear_denominators(&x)?;
            if evaluate_cleared(&cleared) != x {
                bad.push(x.to_string());
            }
        }
    }
    Ok(Check::new(
        "loc",
        "clear_denominators round-trips",
        Some(d),
        bad.is_empty(),
        if bad.is_empty() {
            format!("{count} monomials")
        } else {
            format!("failed on {}", bad.join(", "))
        },
    ))
}

pub fn check_loc_p_homogeneous(n_max: u32) -> Result<Check> {
    let bad: Vec<u32> = (2..=n_max.max(2))
        .filter(|&n| loc_p(n).homogeneous_degree() != Some(n as i64))
        .collect();
    Ok(Check::new(
        "loc",
        "loc_P(n) homogeneous of degree n",
        None,
        bad.is_empty(),
        format!("n ≤ {n_max}, failures {bad:?}"),
    ))
}

fn localize_all(engine: &Engine, ms: &[FormalMonomial]) -> Result<Vec<LaurentElem>> {
    ms.iter()
        .map(|m| engine.localize(&Presentation::monomial(m.clone())))
        .collect()
}

/// Sum of the selected monomials.
fn select(ms: &[FormalMonomial], sel: &BitRow) -> Presentation {
    Presentation::from_monomials(sel.ones().map(|i| ms[i].clone()))
}

/// In the standard window of degree d: ker α and e·MO have equal rank and
/// span the same space, and e is injective on basis images.
pub fn check_exactness(engine: &Engine, d: i64) -> Result<Check> {
    let w = Window::standard(d, engine.config.window_height);
    let basis = engine.basis_in_window(d, w.t_max, BasisShape::Relaxed)?;
    let columns: HashMap<Monomial, usize> = if d >= 0 {
        engine
            .ring
            .monomials_of_degree(d as u32)?
            .into_iter()
            .enumerate()
            .map(|(i, c)| (c.terms().next().unwrap().clone(), i))
            .collect()
    } else {
        HashMap::new()
    };
    let mut rows = Vec::with_capacity(basis.len());
    for b in &basis {
        let a = engine.alpha(&Presentation::monomial(b.clone()))?;
        rows.push(BitRow::from_indices(
            columns.len(),
            a.terms().map(|m| columns[m]),
        ));
    }
    let kernel: Vec<LaurentElem> = relations(columns.len(), &rows)
        .iter()
        .map(|sel| engine.localize(&select(&basis, sel)))
        .collect::<Result<_>>()?;
    let lower = engine.basis_in_window(d + 1, w.t_max - 1, BasisShape::Relaxed)?;
    let lower_images = localize_all(engine, &lower)?;
    let e_images: Vec<LaurentElem> = lower_images.iter().map(|x| x.shift(1)).collect();
    let rank_lower = window_basis(Window::new(d + 1, w.t_max - 1)?, &lower_images)?.rank();
    let rank_e = window_basis(w, &e_images)?.rank();
    let rank_k = window_basis(w, &kernel)?.rank();
    let both: Vec<LaurentElem> = kernel.iter().chain(&e_images).cloned().collect();
    let rank_both = window_basis(w, &both)?.rank();
    let passed = rank_k == rank_e
        && rank_both == rank_k
        && rank_e == rank_lower
        && rank_lower == lower.len();
    Ok(Check::new(
        "seq",
        "rank ker(alpha) = rank e*MO, e injective",
        Some(d),
        passed,
        format!(
            "window [{}, {}]: ker alpha {rank_k}, e*MO {rank_e}, joint {rank_both}, preimages {}/{}",
            w.t_min,
            w.t_max,
            rank_lower,
            lower.len()
        ),
    ))
}

pub fn check_basis_independence(engine: &Engine, d: i64) -> Result<Check> {
    let w = Window::standard(d, engine.config.window_height);
    let basis = engine.basis_in_window(d, w.t_max, BasisShape::Relaxed)?;
    let wb = window_basis(w, &localize_all(engine, &basis)?)?;
    Ok(Check::new(
        "basis",
        "basis images independent",
        Some(d),
        wb.rank() == wb.count(),
        format!(
            "rank {} of {} in window [{}, {}]",
            wb.rank(),
            wb.count(),
            w.t_min,
            w.t_max
        ),
    ))
}

/// A random monomial in N_* of degree at most `budget`.
fn random_coef(engine: &Engine, rng: &mut ChaCha8Rng, budget: i64) -> Result<(CoefElem, i64)> {
    let deg = rng.gen_range(0..=budget.max(0));
    let options = engine.ring.monomials_of_degree(deg as u32)?;
    if options.is_empty() {
        return Ok((CoefElem::one(), 0));
    }
    Ok((options[rng.gen_range(0..options.len())].clone(), deg))
}

/// A random product of generators X_n, G_{i,n}, coefficients and (optionally) e,
/// of total degree at most `budget`.
pub fn random_generator_product(
    engine: &Engine,
    rng: &mut ChaCha8Rng,
    budget: i64,
    with_e: bool,
) -> Result<Presentation> {
    let mut left = budget;
    let mut out = Presentation::one();
    for _ in 0..rng.gen_range(1..=4) {
        if left < 2 {
            break;
        }
        let i = rng.gen_range(0..=(left - 2).min(3));
        let n = rng.gen_range(2..=(left - i));
        out = out.mul(&Presentation::g(i as u32, n as u32)?);
        left -= i + n;
    }
    if rng.gen_bool(0.4) {
        let (c, deg) = random_coef(engine, rng, left)?;
        out = out.mul(&iota(&c));
        left -= deg;
    }
    if with_e {
        let k = rng.gen_range(0..=2u32);
        out = out.mul(&Presentation::e_pow(k));
    }
    debug_assert!(left >= 0);
    Ok(out)
}

/// normal_form is localization-preserving, idempotent and lands in the basis.
pub fn check_normal_form_samples(
    engine: &Engine,
    samples: usize,
    max_degree: i64,
    seed: u64,
) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = (0..samples)
        .map(|_| {
            let a = random_generator_product(engine, &mut rng, max_degree, true)?;
            let b = random_generator_product(engine, &mut rng, max_degree, true)?;
            Ok(
                if rng.gen_bool(0.3) && a.homogeneous_degree() == b.homogeneous_degree() {
                    a.add(&b)
                } else {
                    a
                },
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let bad = xs
        .par_iter()
        .map(|x| -> Result<Option<String>> {
            let nf = engine.normal_form(x)?;
            let ok = engine.localize(&nf)? == engine.localize(x)?
                && engine.normal_form(&nf)? == nf
                && nf.is_basis_combination(BasisShape::Relaxed);
            Ok((!ok).then(|| x.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let bad: Vec<String> = bad.into_iter().flatten().collect();
    Ok(Check::new(
        "basis",
        "normal form faithful and idempotent",
        None,
        bad.is_empty(),
        if bad.is_empty() {
            format!("{samples} random products, degree ≤ {max_degree}")
        } else {
            format!("failed on {}", bad.join(", "))
        },
    ))
}

/// In degree 5 the image of G_{1,2}X_2 is outside the span of the strict basis
/// for every slack, but inside the span of the relaxed basis.
pub fn check_strict_basis_witness(engine: &Engine) -> Result<Vec<Check>> {
    let d = 5;
    let witness = Presentation::g(1, 2)?.mul(&Presentation::x(2)?);
    let target = engine.localize(&witness)?;
    let top = target.max_e_exponent().unwrap();
    let mut outside = Vec::new();
    for slack in 0..=engine.config.slack_cap {
        let t_max = top + slack as i32;
        let strict = engine.basis_in_window(d, t_max, BasisShape::Strict)?;
        let wb = window_basis(Window::new(d, t_max)?, &localize_all(engine, &strict)?)?;
        outside.push(!wb.contains(&target));
    }
    let relaxed = engine.basis_in_window(d, top, BasisShape::Relaxed)?;
    let inside =
        window_basis(Window::new(d, top)?, &localize_all(engine, &relaxed)?)?.contains(&target);
    let is_basis = witness.is_basis_combination(BasisShape::Relaxed)
        && !witness.is_basis_combination(BasisShape::Strict);
    Ok(vec![
        Check::new(
            "basis",
            "G(1,2)*X2 outside strict span",
            Some(d),
            outside.iter().all(|&o| o),
            format!("slacks 0..={}: {outside:?}", engine.config.slack_cap),
        ),
        Check::new(
            "basis",
            "G(1,2)*X2 in relaxed basis",
            Some(d),
            inside && is_basis,
            format!("in span {inside}, relaxed-not-strict monomial {is_basis}"),
        ),
    ])
}

/// dictionary(φ(γ^i P(n))) = localize(G_{i,n}).
pub fn check_gamma_model(engine: &Engine, i: u32, n: u32) -> Result<Check> {
    let m = ManifoldExpr::gamma_tower(i, n);
    let lhs = dictionary(&phi(&m, &engine.ring)?);
    let rhs = engine.localize(&Presentation::g(i, n)?)?;
    Ok(Check::new(
        "gamma",
        format!("dictionary(phi({m})) = loc G({i},{n})"),
        Some((i + n) as i64),
        lhs == rhs,
        format!("{lhs}"),
    ))
}

/// α(G_{i,n}) three ways: the recurrence, the boundary s₀-coefficient, and
/// the underlying class read off from φ.
pub fn check_augmentation_routes(engine: &Engine, i: u32, n: u32) -> Result<Check> {
    let recurrence = gamma_augmentation(i, n, &engine.ring)?;
    let from_boundary =
        augmentation_from_boundary(&localize_gamma(i, n, &engine.ring)?, &engine.ring)?;
    let from_phi = underlying(&ManifoldExpr::gamma_tower(i, n), &engine.ring)?;
    Ok(Check::new(
        "gamma",
        format!("alpha(G({i},{n})) agrees across routes"),
        Some((i + n) as i64),
        recurrence == from_boundary && recurrence == from_phi,
        format!("recurrence {recurrence}, boundary {from_boundary}, fixed data {from_phi}"),
    ))
}

/// e·Γ(x) + x + ι(α(x)) = 0 on the degree-d basis.
pub fn check_gamma_contract(engine: &Engine, d: i64) -> Result<Check> {
    let basis = engine.basis_table(d)?;
    let mut bad = Vec::new();
    for b in &basis {
        let x = Presentation::monomial(b.clone());
        let g = engine.gamma(&x)?;
        let sum = Presentation::e_pow(1)
            .mul(&g)
            .add(&x)
            .add(&iota(&engine.alpha(&x)?));
        if !engine.normal_form(&sum)?.is_zero() {
            bad.push(x.to_string());
        }
    }
    Ok(Check::new(
        "gamma",
        "e*Gamma(x) + x + iota(alpha(x)) = 0",
        Some(d),
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} basis monomials", basis.len())
        } else {
            format!("failed on {}", bad.join(", "))
        },
    ))
}

pub fn check_geometric_products(
    engine: &Engine,
    samples: usize,
    max_degree: i64,
    seed: u64,
) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = (0..samples)
        .map(|_| random_generator_product(engine, &mut rng, max_degree.max(2), false))
        .collect::<Result<Vec<_>>>()?;
    let mut bad = Vec::new();
    for x in &xs {
        if !engine.is_geometric(x)? {
            bad.push(x.to_string());
        }
    }
    Ok(Check::new(
        "geomcomp",
        "generator products have e-free normal form",
        None,
        bad.is_empty(),
        if bad.is_empty() {
            format!("{samples} random products")
        } else {
            format!("failed on {}", bad.join(", "))
        },
    ))
}

pub fn check_euler_not_geometric(engine: &Engine, k_max: u32) -> Result<Check> {
    let mut bad = Vec::new();
    for k in 1..=k_max {
        if engine.is_geometric(&Presentation::e_pow(k))? {
            bad.push(k);
        }
    }
    Ok(Check::new(
        "geomcomp",
        "e^k is not geometric",
        None,
        bad.is_empty(),
        format!("k ≤ {k_max}, failures {bad:?}"),
    ))
}

/// quotient_reduce(e^k G_{1,n}) = (X_n + ρ(n))·x_{k−1}, with x₀ = 0 in the quotient.
pub fn check_obstruction_relation(engine: &Engine, k: u32, n: u32) -> Result<Check> {
    let x = Presentation::e_pow(k).mul(&Presentation::g(1, n)?);
    let got = engine.quotient_reduce(&x)?;
    let coef = Presentation::x(n)?.add(&iota(&rho(n)));
    let expected = if k >= 2 && !coef.is_zero() {
        QuotientElem(BTreeMap::from([(k - 1, coef)]))
    } else {
        QuotientElem::default()
    };
    Ok(Check::new(
        "trobs",
        format!("e^{k}*G(1,{n}) reduces to (X{n} + rho({n}))*x{}", k - 1),
        Some(n as i64 + 1 - k as i64),
        got == expected,
        format!("{got}"),
    ))
}

/// The catalog manifold realizing an e-free basis monomial.
pub fn catalog_class(m: &FormalMonomial) -> Option<ManifoldExpr> {
    if m.epow() != 0 {
        return None;
    }
    let mut factors = vec![ManifoldExpr::Trivial(CoefElem::from_monomial(
        m.coef().clone(),
    ))];
    factors.extend(m.xs().map(ManifoldExpr::Proj));
    factors.extend(
        m.gamma_factors()
            .map(|(i, n)| ManifoldExpr::gamma_tower(i, n)),
    );
    Some(ManifoldExpr::Product(factors))
}

/// Bundle-algebra monomials of total degree d.
fn bundle_monomials(engine: &Engine, d: u32) -> Result<Vec<BundleAlgElem>> {
    fn parts(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            parts(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for s in 0..=d {
        let mut betas = Vec::new();
        parts(s, s, &mut Vec::new(), &mut betas);
        for c in engine.ring.monomials_of_degree(d - s)? {
            for bs in &betas {
                let mut x = BundleAlgElem::from_coef(&c);
                for &b in bs {
                    x = &x * &BundleAlgElem::beta(b);
                }
                out.push(x);
            }
        }
    }
    Ok(out)
}

fn rank_of<K: Ord + Clone>(rows: &[BTreeSet<K>]) -> usize {
    let columns: BTreeMap<K, usize> = rows
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut elim = Eliminator::new(columns.len());
    for r in rows {
        elim.insert(BitRow::from_indices(
            columns.len(),
            r.iter().map(|k| columns[k]),
        ));
    }
    elim.rank()
}

/// In dimension d: δ∘φ = 0 on catalog classes, δ onto N_{d−1}(Bℤ/2), and
/// rank ker δ = rank im φ.
pub fn check_conner_floyd(engine: &Engine, d: i64) -> Result<Vec<Check>> {
    let du = d as u32;
    let classes: Vec<ManifoldExpr> = engine
        .basis_in_window(d, 0, BasisShape::Relaxed)?
        .iter()
        .filter_map(catalog_class)
        .collect();
    let images = classes
        .iter()
        .map(|m| phi(m, &engine.ring))
        .collect::<Result<Vec<_>>>()?;
    let mut bad = Vec::new();
    for (m, x) in classes.iter().zip(&images) {
        if !delta(x, &engine.ring)?.is_zero() {
            bad.push(m.to_string());
        }
    }
    let rank_phi = rank_of(
        &images
            .iter()
            .map(|x| x.terms().cloned().collect())
            .collect::<Vec<_>>(),
    );
    let bundle = bundle_monomials(engine, du)?;
    let delta_rows = bundle
        .iter()
        .map(|x| {
            let v = delta(x, &engine.ring)?;
            Ok(v.components()
                .flat_map(|(j, c)| c.terms().map(move |m| (j, m.clone())))
                .collect::<BTreeSet<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let rank_delta = rank_of(&delta_rows);
    let mut target_dim = 0;
    for j in 0..du {
        target_dim += engine.ring.rank(du - 1 - j)?;
    }
    let kernel = bundle.len() - rank_delta;
    Ok(vec![
        Check::new(
            "cf-exact",
            "delta(phi(M)) = 0 on catalog classes",
            Some(d),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} classes", classes.len())
            } else {
                format!("failed on {}", bad.join(", "))
            },
        ),
        Check::new(
            "cf-exact",
            "delta surjective",
            Some(d),
            rank_delta == target_dim,
            format!("rank {rank_delta}, dim N_{}(BZ/2) = {target_dim}", d - 1),
        ),
        Check::new(
            "cf-exact",
            "rank ker delta = rank im phi",
            Some(d),
            kernel == rank_phi,
            format!("ker delta {kernel} of {}, im phi {rank_phi}", bundle.len()),
        ),
    ])
}

/// A random catalog expression of dimension at most `budget` (and at least 0).
pub fn random_catalog_expr(
    engine: &Engine,
    rng: &mut ChaCha8Rng,
    budget: i64,
) -> Result<ManifoldExpr> {
    let roll = rng.gen_range(0..100);
    Ok(match roll {
        _ if budget <= 0 => ManifoldExpr::Trivial(CoefElem::one()),
        0..=29 => ManifoldExpr::Proj(rng.gen_range(1..=budget.min(8)) as u32),
        30..=54 if budget >= 2 => {
            ManifoldExpr::gamma_of(random_catalog_expr(engine, rng, budget - 1)?)
        }
        55..=79 if budget >= 2 => {
            let first = rng.gen_range(1..budget);
            let a = random_catalog_expr(engine, rng, first)?;
            let b = random_catalog_expr(engine, rng, budget - a.dim())?;
            ManifoldExpr::Product(vec![a, b])
        }
        80..=94 => ManifoldExpr::Trivial(random_coef(engine, rng, budget)?.0),
        95..=99 => ManifoldExpr::AntipodalSphere(rng.gen_range(0..=budget) as u32),
        _ => ManifoldExpr::Proj(rng.gen_range(1..=budget.min(8)) as u32),
    })
}

/// dictionary∘φ = localize∘pt_class.
pub fn check_comparison(engine: &Engine, m: &ManifoldExpr) -> Result<bool> {
    Ok(dictionary(&phi(m, &engine.ring)?) == engine.localize(&pt_class(m, engine)?)?)
}

pub fn check_comparison_samples(
    engine: &Engine,
    samples: usize,
    max_degree: i64,
    seed: u64,
) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ms = (0..samples)
        .map(|_| random_catalog_expr(engine, &mut rng, max_degree))
        .collect::<Result<Vec<_>>>()?;
    let bad = ms
        .par_iter()
        .map(|m| Ok((!check_comparison(engine, m)?).then(|| m.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let bad: Vec<String> = bad.into_iter().flatten().collect();
    Ok(Check::new(
        "compare",
        "dictionary(phi(M)) = loc(pt_class(M))",
        None,
        bad.is_empty(),
        if bad.is_empty() {
            format!("{samples} random catalog expressions, dim ≤ {max_degree}")
        } else {
            format!("failed on {}", bad.join(", "))
        },
    ))
}
