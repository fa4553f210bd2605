//! MO^{ℤ/2}_* as a presentation over N_*: formal monomials in e and
//! G_{i,n} = Γ^i(X_n), rewriting to the additive basis, and the operations
//! α, ι, Γ, e-division, membership and the obstruction quotient.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::charnum::{identify_in_n, SpaceDesc};
use crate::coefficients::{is_coefficient_monomial, rho, CoefElem, CoefRing};
use crate::error::{Error, Result};
use crate::gf2poly::Monomial;
use crate::localized::{clear_denominators, loc_p, window_basis, LaurentElem, Window};
use crate::symbols::{self, Sym};

/// coef · ∏ G_{i,n} · e^k, with G_{0,n} = X_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalMonomial {
    coef: Monomial,
    /// Sorted (i, n) pairs, n ≥ 2.
    gammas: Vec<(u32, u32)>,
    epow: u32,
}

impl FormalMonomial {
    pub fn new(coef: Monomial, mut gammas: Vec<(u32, u32)>, epow: u32) -> Result<Self> {
        if !is_coefficient_monomial(&coef) {
            return Err(Error::Contract(format!(
                "`{}` is not a coefficient monomial",
                coef.display(symbols::table())
            )));
        }
        if let Some(&(i, n)) = gammas
            .iter()
            .find(|&&(_, n)| !(2..=symbols::MAX_INDEX).contains(&n))
        {
            return Err(Error::Contract(format!(
                "G({i},{n}) has index out of range"
            )));
        }
        gammas.sort_unstable();
        Ok(Self { coef, gammas, epow })
    }

    fn from_parts(coef: Monomial, gammas: Vec<(u32, u32)>, epow: u32) -> Self {
        debug_assert!(gammas.windows(2).all(|w| w[0] <= w[1]));
        Self { coef, gammas, epow }
    }

    pub fn one() -> Self {
        Self::from_parts(Monomial::one(), Vec::new(), 0)
    }

    pub fn coef(&self) -> &Monomial {
        &self.coef
    }

    pub fn gammas(&self) -> &[(u32, u32)] {
        &self.gammas
    }

    pub fn epow(&self) -> u32 {
        self.epow
    }

    pub fn degree(&self) -> i64 {
        self.coef.degree(symbols::table())
            + self
                .gammas
                .iter()
                .map(|&(i, n)| (i + n) as i64)
                .sum::<i64>()
            - self.epow as i64
    }

    /// Indices of the X-factors (i = 0), ascending.
    pub fn xs(&self) -> impl Iterator<Item = u32> + '_ {
        self.gammas.iter().filter(|g| g.0 == 0).map(|g| g.1)
    }

    /// Factors G_{i,n} with i ≥ 1.
    pub fn gamma_factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.gammas.iter().copied().filter(|g| g.0 >= 1)
    }

    fn single_gamma(&self) -> Option<(u32, u32)> {
        self.gamma_factors().next()
    }

    pub fn mul(&self, other: &FormalMonomial) -> FormalMonomial {
        let mut gammas = self.gammas.clone();
        gammas.extend_from_slice(&other.gammas);
        gammas.sort_unstable();
        Self::from_parts(self.coef.mul(&other.coef), gammas, self.epow + other.epow)
    }

    fn with_coef(&self, coef: &Monomial) -> FormalMonomial {
        Self::from_parts(self.coef.mul(coef), self.gammas.clone(), self.epow)
    }

    fn with_x(&self, n: u32) -> FormalMonomial {
        let mut gammas = self.gammas.clone();
        let pos = gammas.partition_point(|&g| g <= (0, n));
        gammas.insert(pos, (0, n));
        Self::from_parts(self.coef.clone(), gammas, self.epow)
    }

    /// Basis shape: type A has no Γ-factor; type B has one factor G_{i,j}, no e,
    /// and X-factors with index ≥ j (> j for the strict shape).
    pub fn is_basis(&self, shape: BasisShape) -> bool {
        let mut gs = self.gamma_factors();
        match (gs.next(), gs.next()) {
            (None, _) => true,
            (Some((_, j)), None) => {
                self.epow == 0
                    && self.xs().all(|m| match shape {
                        BasisShape::Relaxed => m >= j,
                        BasisShape::Strict => m > j,
                    })
            }
            _ => false,
        }
    }

    /// Lexicographic rewriting measure: (Γ-type factors, total Γ-weight, ordering violations).
    pub fn termination_measure(&self) -> (u32, u32, u32) {
        let gs: Vec<(u32, u32)> = self.gamma_factors().collect();
        let weight = gs.iter().map(|g| g.0).sum();
        let violations = gs
            .iter()
            .map(|&(_, j)| self.xs().filter(|&m| m < j).count() as u32)
            .sum();
        (gs.len() as u32, weight, violations)
    }

    /// Diagnostic count of e- and Γ-occurrences in a monomial that is not yet
    /// in basis shape; zero on basis monomials.
    pub fn complication(&self) -> u32 {
        if self.is_basis(BasisShape::Relaxed) {
            0
        } else {
            self.epow + self.gamma_factors().map(|g| g.0).sum::<u32>()
        }
    }
}

impl fmt::Display for FormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.coef.is_one() {
            parts.push(self.coef.display(symbols::table()).to_string());
        }
        let mut runs: Vec<((u32, u32), u32)> = Vec::new();
        let mut gs: Vec<(u32, u32)> = self.gamma_factors().collect();
        gs.extend(self.gammas.iter().copied().filter(|g| g.0 == 0));
        for g in gs {
            match runs.last_mut() {
                Some((h, k)) if *h == g => *k += 1,
                _ => runs.push((g, 1)),
            }
        }
        for ((i, n), k) in runs {
            let base = if i == 0 {
                format!("X{n}")
            } else {
                format!("G({i},{n})")
            };
            parts.push(if k == 1 { base } else { format!("{base}^{k}") });
        }
        match self.epow {
            0 => {}
            1 => parts.push("e".into()),
            k => parts.push(format!("e^{k}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisShape {
    /// Type-B X-factors satisfy m ≥ j.
    Relaxed,
    /// Type-B X-factors satisfy m > j.
    Strict,
}

/// A GF(2) combination of formal monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Presentation(BTreeSet<FormalMonomial>);

impl Presentation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(FormalMonomial::one())
    }

    pub fn monomial(m: FormalMonomial) -> Self {
        Self(BTreeSet::from([m]))
    }

    /// X_n; X₁ is zero.
    pub fn x(n: u32) -> Result<Self> {
        Self::g(0, n)
    }

    /// G_{i,n}; G_{i,1} is zero.
    pub fn g(i: u32, n: u32) -> Result<Self> {
        if n == 1 {
            return Ok(Self::zero());
        }
        Ok(Self::monomial(FormalMonomial::new(
            Monomial::one(),
            vec![(i, n)],
            0,
        )?))
    }

    pub fn e_pow(k: u32) -> Self {
        Self::monomial(FormalMonomial::from_parts(Monomial::one(), Vec::new(), k))
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = FormalMonomial>) -> Self {
        let mut p = Self::zero();
        for m in ms {
            p.toggle(m);
        }
        p
    }

    pub fn monomials(&self) -> impl Iterator<Item = &FormalMonomial> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn toggle(&mut self, m: FormalMonomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add(&self, other: &Presentation) -> Presentation {
        Presentation(self.0.symmetric_difference(&other.0).cloned().collect())
    }

    /// Formal product; the result is generally not in normal form.
    pub fn mul(&self, other: &Presentation) -> Presentation {
        let mut out = Presentation::zero();
        for a in &self.0 {
            for b in &other.0 {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: &CoefElem) -> Presentation {
        let mut out = Presentation::zero();
        for m in &self.0 {
            for t in c.terms() {
                out.toggle(m.with_coef(t));
            }
        }
        out
    }

    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut ds = self.0.iter().map(FormalMonomial::degree);
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }

    pub fn is_basis_combination(&self, shape: BasisShape) -> bool {
        self.0.iter().all(|m| m.is_basis(shape))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// The trivial-action splitting N_* → MO^{ℤ/2}_*.
pub fn iota(c: &CoefElem) -> Presentation {
    Presentation::from_monomials(
        c.terms()
            .map(|m| FormalMonomial::from_parts(m.clone(), Vec::new(), 0)),
    )
}

/// Euler class of mτ ⊕ kσ.
pub fn euler(m: u32, k: u32) -> Presentation {
    if m == 0 {
        Presentation::e_pow(k)
    } else {
        Presentation::zero()
    }
}

/// Image of e^k: the quotient generator x_k. Map k ↦ coefficient in N_*[X_n].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuotientElem(pub BTreeMap<u32, Presentation>);

impl QuotientElem {
    pub fn is_zero(&self) -> bool {
        self.0.values().all(Presentation::is_zero)
    }

    pub fn component(&self, k: u32) -> Presentation {
        self.0.get(&k).cloned().unwrap_or_default()
    }
}

impl fmt::Display for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                if c == &Presentation::one() {
                    format!("x{k}")
                } else if c.len() == 1 {
                    format!("{c}*x{k}")
                } else {
                    format!("({c})*x{k}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(Presentation),
    NotMember,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Rewrite-rule applications allowed per normal-form call.
    pub fuel: u64,
    /// Largest slack tried by `member`.
    pub slack_cap: u32,
    /// Height of the default window above max(0, −d).
    pub window_height: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            fuel: 1_000_000,
            slack_cap: 4,
            window_height: 2,
        }
    }
}

/// Rewriting and membership over a fixed coefficient ring.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    pub config: EngineConfig,
    pub ring: CoefRing,
}

/// α(G_{i,n}), the underlying class of γ^i(P(nτ⊕σ)).
///
/// Conner–Floyd: a manifold with involution is bordant to Σ_F [P(ν_F ⊕ ℝ)].
/// Applying this to the fixed data of γ^i(P(nτ⊕σ)) gives
/// α(G_{i,n}) = Σ_{l<i−1} ρ(i−l)·α(G_{l,n}) + [P(λ ⊕ ℝ^{i+1}) → ℝP^{n−1}] + ρ(n+i).
pub fn gamma_augmentation(i: u32, n: u32, ring: &CoefRing) -> Result<CoefElem> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), CoefElem>>> = OnceLock::new();
    if i == 0 {
        return Ok(rho(n));
    }
    ring.require_complete(n + i)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(i, n)) {
        return Ok(v.clone());
    }
    let mut value = rho(n + i);
    for l in 0..i.saturating_sub(1) {
        value += &(&rho(i - l) * &gamma_augmentation(l, n, ring)?);
    }
    let bundle = SpaceDesc::tautological_projectivization(&[n - 1], i + 1);
    value += &identify_in_n(&bundle, ring)?;
    cache.lock().unwrap().insert((i, n), value.clone());
    Ok(value)
}

/// Localization of G_{i,n}: e⁻¹(loc G_{i−1,n} + α(G_{i−1,n})).
pub fn localize_gamma(i: u32, n: u32, ring: &CoefRing) -> Result<LaurentElem> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), LaurentElem>>> = OnceLock::new();
    if i == 0 {
        return Ok(loc_p(n));
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(i, n)) {
        return Ok(v.clone());
    }
    let prev = localize_gamma(i - 1, n, ring)?;
    let aug: LaurentElem = gamma_augmentation(i - 1, n, ring)?.into();
    let value = (&prev + &aug).shift(-1);
    cache.lock().unwrap().insert((i, n), value.clone());
    Ok(value)
}

type Nf = BTreeSet<FormalMonomial>;

fn toggle(nf: &mut Nf, m: FormalMonomial) {
    if !nf.remove(&m) {
        nf.insert(m);
    }
}

fn add_into(acc: &mut Nf, other: Nf) {
    for m in other {
        toggle(acc, m);
    }
}

fn scale_nf(c: &CoefElem, nf: &Nf) -> Nf {
    let mut out = Nf::new();
    for t in c.terms() {
        for m in nf {
            toggle(&mut out, m.with_coef(t));
        }
    }
    out
}

fn type_a(coef: Monomial, xs: impl IntoIterator<Item = u32>, epow: u32) -> FormalMonomial {
    let mut gammas: Vec<(u32, u32)> = xs.into_iter().map(|n| (0, n)).collect();
    gammas.sort_unstable();
    FormalMonomial::from_parts(coef, gammas, epow)
}

fn type_b(coef: Monomial, g: (u32, u32), xs: impl IntoIterator<Item = u32>) -> FormalMonomial {
    let mut gammas: Vec<(u32, u32)> = xs.into_iter().map(|n| (0, n)).collect();
    gammas.push(g);
    gammas.sort_unstable();
    FormalMonomial::from_parts(coef, gammas, 0)
}

struct Rewriter<'a> {
    engine: &'a Engine,
    steps: u64,
    term: String,
    gx: HashMap<(u32, u32, u32), Nf>,
    gg: HashMap<(u32, u32, u32, u32), Nf>,
}

impl<'a> Rewriter<'a> {
    fn new(engine: &'a Engine) -> Self {
        Self {
            engine,
            steps: 0,
            term: String::new(),
            gx: HashMap::new(),
            gg: HashMap::new(),
        }
    }

    fn step(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.engine.config.fuel {
            return Err(Error::FuelExhausted {
                steps: self.steps - 1,
                term: self.term.clone(),
            });
        }
        Ok(())
    }

    fn aug(&self, i: u32, n: u32) -> Result<CoefElem> {
        gamma_augmentation(i, n, &self.engine.ring)
    }

    fn normal_form(&mut self, x: &Presentation) -> Result<Nf> {
        let mut out = Nf::new();
        for m in x.monomials() {
            self.term = m.to_string();
            add_into(&mut out, self.monomial(m)?);
        }
        Ok(out)
    }

    fn monomial(&mut self, m: &FormalMonomial) -> Result<Nf> {
        let mut acc = Nf::from([FormalMonomial::from_parts(m.coef.clone(), Vec::new(), 0)]);
        for n in m.xs() {
            acc = self.mul_x_all(&acc, n)?;
        }
        for (i, n) in m.gamma_factors() {
            let mut next = Nf::new();
            for b in &acc {
                add_into(&mut next, self.mul_g(b, i, n)?);
            }
            acc = next;
        }
        for _ in 0..m.epow {
            let mut next = Nf::new();
            for b in &acc {
                add_into(&mut next, self.mul_e(b)?);
            }
            acc = next;
        }
        Ok(acc)
    }

    fn mul_x_all(&mut self, nf: &Nf, n: u32) -> Result<Nf> {
        let mut out = Nf::new();
        for b in nf {
            add_into(&mut out, self.mul_x(b, n)?);
        }
        Ok(out)
    }

    /// Basis monomial times X_n.
    fn mul_x(&mut self, b: &FormalMonomial, n: u32) -> Result<Nf> {
        match b.single_gamma() {
            Some((i, j)) if n < j => {
                // W3: G_{i,j}·X_n = Γ(G_{i−1,j}·X_n) + α(G_{i−1,j})·G_{1,n}.
                self.step()?;
                let core = self.g_times_x(i, j, n)?;
                let mut acc = scale_nf(&CoefElem::from_monomial(b.coef.clone()), &core);
                for m in b.xs() {
                    acc = self.mul_x_all(&acc, m)?;
                }
                Ok(acc)
            }
            _ => Ok(Nf::from([b.with_x(n)])),
        }
    }

    fn g_times_x(&mut self, i: u32, j: u32, m: u32) -> Result<Nf> {
        if let Some(v) = self.gx.get(&(i, j, m)) {
            return Ok(v.clone());
        }
        let inner = if i == 1 {
            Nf::from([type_a(Monomial::one(), [m, j], 0)])
        } else {
            self.mul_x(&type_b(Monomial::one(), (i - 1, j), []), m)?
        };
        let mut out = self.gamma_nf(&inner)?;
        let correction = Nf::from([type_b(Monomial::one(), (1, m), [])]);
        add_into(&mut out, scale_nf(&self.aug(i - 1, j)?, &correction));
        self.gx.insert((i, j, m), out.clone());
        Ok(out)
    }

    /// Basis monomial times G_{i,n}, i ≥ 1.
    fn mul_g(&mut self, b: &FormalMonomial, i: u32, n: u32) -> Result<Nf> {
        if b.epow >= 1 {
            // W1: e·G_{i,n} = G_{i−1,n} + α(G_{i−1,n}).
            self.step()?;
            let lowered = FormalMonomial::from_parts(b.coef.clone(), b.gammas.clone(), b.epow - 1);
            let mut out = if i == 1 {
                self.mul_x(&lowered, n)?
            } else {
                self.mul_g(&lowered, i - 1, n)?
            };
            add_into(
                &mut out,
                scale_nf(&self.aug(i - 1, n)?, &Nf::from([lowered])),
            );
            return Ok(out);
        }
        match b.single_gamma() {
            None => {
                let mut acc = Nf::from([type_b(b.coef.clone(), (i, n), [])]);
                for m in b.xs() {
                    acc = self.mul_x_all(&acc, m)?;
                }
                Ok(acc)
            }
            Some((i2, j)) => {
                self.step()?;
                let core = self.g_times_g((i2, j), (i, n))?;
                let mut acc = scale_nf(&CoefElem::from_monomial(b.coef.clone()), &core);
                for m in b.xs() {
                    acc = self.mul_x_all(&acc, m)?;
                }
                Ok(acc)
            }
        }
    }

    /// W2: G_{i,m}·G_{j,n} = Γ(G_{i−1,m}·G_{j,n}) + α(G_{i−1,m})·G_{j+1,n},
    /// reducing the factor with the smaller Γ-weight.
    fn g_times_g(&mut self, p: (u32, u32), q: (u32, u32)) -> Result<Nf> {
        let (u, v) = if p <= q { (p, q) } else { (q, p) };
        let key = (u.0, u.1, v.0, v.1);
        if let Some(r) = self.gg.get(&key) {
            return Ok(r.clone());
        }
        let inner = if u.0 == 1 {
            self.mul_x(&type_b(Monomial::one(), v, []), u.1)?
        } else {
            self.g_times_g((u.0 - 1, u.1), v)?
        };
        let mut out = self.gamma_nf(&inner)?;
        let correction = Nf::from([type_b(Monomial::one(), (v.0 + 1, v.1), [])]);
        add_into(&mut out, scale_nf(&self.aug(u.0 - 1, u.1)?, &correction));
        self.gg.insert(key, out.clone());
        Ok(out)
    }

    fn mul_e(&mut self, b: &FormalMonomial) -> Result<Nf> {
        match b.single_gamma() {
            None => Ok(Nf::from([FormalMonomial::from_parts(
                b.coef.clone(),
                b.gammas.clone(),
                b.epow + 1,
            )])),
            Some((i, j)) => {
                self.step()?;
                let xs: Vec<u32> = b.xs().collect();
                let first = if i >= 2 {
                    type_b(b.coef.clone(), (i - 1, j), xs.iter().copied())
                } else {
                    type_a(b.coef.clone(), xs.iter().copied().chain([j]), 0)
                };
                let mut out = Nf::from([first]);
                let rest = Nf::from([type_a(b.coef.clone(), xs, 0)]);
                add_into(&mut out, scale_nf(&self.aug(i - 1, j)?, &rest));
                Ok(out)
            }
        }
    }

    fn gamma_nf(&mut self, nf: &Nf) -> Result<Nf> {
        let mut out = Nf::new();
        for b in nf {
            add_into(&mut out, self.gamma_basis(b)?);
        }
        Ok(out)
    }

    /// Γ of a basis monomial, split at the Γ-factor or the smallest X-factor:
    /// Γ(u·v) = Γ(u)·v + ᾱ(u)·Γ(v).
    fn gamma_basis(&mut self, b: &FormalMonomial) -> Result<Nf> {
        if b.epow >= 1 {
            return Ok(Nf::from([FormalMonomial::from_parts(
                b.coef.clone(),
                b.gammas.clone(),
                b.epow - 1,
            )]));
        }
        let xs: Vec<u32> = b.xs().collect();
        let (head, rest, aug) = match b.single_gamma() {
            Some((i, j)) => (
                type_b(b.coef.clone(), (i + 1, j), xs.iter().copied()),
                xs,
                self.aug(i, j)?,
            ),
            None => {
                let Some((&n1, rest)) = xs.split_first() else {
                    return Ok(Nf::new());
                };
                (
                    type_b(b.coef.clone(), (1, n1), rest.iter().copied()),
                    rest.to_vec(),
                    rho(n1),
                )
            }
        };
        self.step()?;
        let mut out = Nf::from([head]);
        if !aug.is_zero() {
            let tail = self.gamma_basis(&type_a(Monomial::one(), rest, 0))?;
            let scaled = scale_nf(&(&aug * &CoefElem::from_monomial(b.coef.clone())), &tail);
            add_into(&mut out, scaled);
        }
        Ok(out)
    }
}

impl Engine {
    pub fn new(config: EngineConfig, ring: CoefRing) -> Self {
        Self { config, ring }
    }

    /// Rewrite to a combination of basis monomials.
    pub fn normal_form(&self, x: &Presentation) -> Result<Presentation> {
        let mut rw = Rewriter::new(self);
        Ok(Presentation(rw.normal_form(x)?))
    }

    /// Normal form together with the number of rule applications used.
    pub fn normal_form_counted(&self, x: &Presentation) -> Result<(Presentation, u64)> {
        let mut rw = Rewriter::new(self);
        let nf = rw.normal_form(x)?;
        Ok((Presentation(nf), rw.steps))
    }

    pub fn gamma(&self, x: &Presentation) -> Result<Presentation> {
        let mut rw = Rewriter::new(self);
        let nf = rw.normal_form(x)?;
        Ok(Presentation(rw.gamma_nf(&nf)?))
    }

    pub fn alpha(&self, x: &Presentation) -> Result<CoefElem> {
        let mut out = CoefElem::zero();
        for m in x.monomials().filter(|m| m.epow == 0) {
            let mut value = CoefElem::from_monomial(m.coef.clone());
            for &(i, n) in &m.gammas {
                value = &value * &gamma_augmentation(i, n, &self.ring)?;
                if value.is_zero() {
                    break;
                }
            }
            out += &value;
        }
        Ok(out)
    }

    pub fn localize(&self, x: &Presentation) -> Result<LaurentElem> {
        let mut out = LaurentElem::zero();
        for m in x.monomials() {
            let mut value: LaurentElem = CoefElem::from_monomial(m.coef.clone()).into();
            for &(i, n) in &m.gammas {
                value = &value * &localize_gamma(i, n, &self.ring)?;
            }
            out += &value.shift(m.epow as i32);
        }
        Ok(out)
    }

    /// The unique y with e·y = x; requires α(x) = 0.
    pub fn divide_e(&self, x: &Presentation) -> Result<Presentation> {
        let a = self.alpha(x)?;
        if !a.is_zero() {
            return Err(Error::NotDivisible(a));
        }
        self.gamma(x)
    }

    pub fn is_geometric(&self, x: &Presentation) -> Result<bool> {
        Ok(self.normal_form(x)?.monomials().all(|m| m.epow == 0))
    }

    pub fn quotient_reduce(&self, x: &Presentation) -> Result<QuotientElem> {
        let mut out: BTreeMap<u32, Presentation> = BTreeMap::new();
        for m in self.normal_form(x)?.monomials().filter(|m| m.epow >= 1) {
            let f = FormalMonomial::from_parts(m.coef.clone(), m.gammas.clone(), 0);
            out.entry(m.epow).or_default().toggle(f);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(QuotientElem(out))
    }

    /// Largest e-exponent of the localization of a basis monomial.
    fn top_exponent(&self, m: &FormalMonomial) -> Result<i32> {
        let r = m.xs().count() as i32;
        Ok(match m.single_gamma() {
            None => m.epow as i32 - r,
            Some((i, j)) => {
                localize_gamma(i, j, &self.ring)?
                    .max_e_exponent()
                    .expect("Γ-classes localize to nonzero elements")
                    - r
            }
        })
    }

    /// Basis monomials of degree `d` whose localization has e-exponents ≤ `t_max`.
    pub fn basis_in_window(
        &self,
        d: i64,
        t_max: i32,
        shape: BasisShape,
    ) -> Result<Vec<FormalMonomial>> {
        let mut out = Vec::new();
        let t = t_max as i64;
        // Type A: a·∏X·e^k with top exponent k − r.
        for r in 0..=(d + t).max(0) {
            for k in (2 * r - d).max(0)..=(t + r) {
                let total = d + k;
                if total < 2 * r {
                    continue;
                }
                for s in 2 * r..=total {
                    let coefs = self.ring.monomials_of_degree((total - s) as u32)?;
                    if coefs.is_empty() {
                        continue;
                    }
                    for xs in multisets(r as u32, s as u32, 2) {
                        for c in &coefs {
                            let coef = c.terms().next().unwrap().clone();
                            out.push(type_a(coef, xs.iter().copied(), k as u32));
                        }
                    }
                }
            }
        }
        // Type B: a·G_{i,j}·∏X_m with m ≥ j (or m > j).
        for i in 1..=(d - 2).max(0) {
            for j in 2..=(d - i) {
                let top = localize_gamma(i as u32, j as u32, &self.ring)?
                    .max_e_exponent()
                    .unwrap() as i64;
                let lo = match shape {
                    BasisShape::Relaxed => j,
                    BasisShape::Strict => j + 1,
                };
                let budget = d - i - j;
                let r_min = (top - t).max(0);
                for r in r_min..=(budget / lo.max(1)) {
                    for s in r * lo..=budget {
                        let coefs = self.ring.monomials_of_degree((budget - s) as u32)?;
                        if coefs.is_empty() {
                            continue;
                        }
                        for xs in multisets(r as u32, s as u32, lo as u32) {
                            for c in &coefs {
                                let coef = c.terms().next().unwrap().clone();
                                out.push(type_b(coef, (i as u32, j as u32), xs.iter().copied()));
                            }
                        }
                    }
                }
            }
        }
        debug_assert!(out
            .iter()
            .all(|m| m.degree() == d && self.top_exponent(m).unwrap() <= t_max));
        Ok(out)
    }

    /// Default-window basis of degree `d`.
    pub fn basis_table(&self, d: i64) -> Result<Vec<FormalMonomial>> {
        let w = Window::standard(d, self.config.window_height);
        self.basis_in_window(d, w.t_max, BasisShape::Relaxed)
    }

    /// Membership of a Laurent element in the image of MO^{ℤ/2}_*, by window
    /// search with slack escalation. A negative answer is reported only once
    /// two consecutive slacks agree and exact e-division confirms it.
    pub fn member(&self, l: &LaurentElem) -> Result<Membership> {
        if l.is_zero() {
            return Ok(Membership::Member(Presentation::zero()));
        }
        let d = l
            .homogeneous_degree()
            .ok_or_else(|| Error::Contract(format!("{l} is not homogeneous")))?;
        let top = l.max_e_exponent().unwrap();
        let mut absent = 0;
        let mut certificate: Option<bool> = None;
        for slack in 0..=self.config.slack_cap {
            let t_max = top + slack as i32;
            let window = Window::new(d, t_max)?;
            let candidates = self.basis_in_window(d, t_max, BasisShape::Relaxed)?;
            let images = candidates
                .iter()
                .map(|m| self.localize(&Presentation::monomial(m.clone())))
                .collect::<Result<Vec<_>>>()?;
            let wb = window_basis(window, &images)?;
            if let Some(sel) = wb.expand(l) {
                let chosen = candidates
                    .into_iter()
                    .zip(sel)
                    .filter_map(|(m, s)| s.then_some(m));
                return Ok(Membership::Member(Presentation::from_monomials(chosen)));
            }
            absent += 1;
            if absent >= 2 {
                let outside = match certificate {
                    Some(v) => v,
                    None => {
                        let v = self.member_by_division(l)?.is_none();
                        certificate = Some(v);
                        v
                    }
                };
                if outside {
                    return Ok(Membership::NotMember);
                }
            }
        }
        Ok(Membership::Undecided)
    }

    /// Exact membership: clear denominators, e^N·ℓ = p, then divide p by e
    /// N times, each step requiring α = 0.
    pub fn member_by_division(&self, l: &LaurentElem) -> Result<Option<Presentation>> {
        let cleared = clear_denominators(l)?;
        let mut y = Presentation::zero();
        for m in cleared.p.terms() {
            let mut coef = Vec::new();
            let mut gammas = Vec::new();
            for &(id, e) in m.factors() {
                match symbols::kind(id) {
                    Sym::A(_) => coef.push((id, e as i32)),
                    Sym::X(n) => gammas.extend(std::iter::repeat_n((0, n), e as usize)),
                    other => unreachable!("unexpected symbol {other:?} after clearing"),
                }
            }
            let coef = Monomial::from_exponents(symbols::table(), &coef)?;
            y.toggle(FormalMonomial::new(coef, gammas, m.inv_exponent() as u32)?);
        }
        let mut y = self.normal_form(&y)?;
        for _ in 0..cleared.n {
            if !self.alpha(&y)?.is_zero() {
                return Ok(None);
            }
            y = self.gamma(&y)?;
        }
        Ok(Some(y))
    }
}

/// Non-decreasing sequences of `r` integers ≥ `lo` summing to `s`.
fn multisets(r: u32, s: u32, lo: u32) -> Vec<Vec<u32>> {
    fn go(r: u32, s: u32, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == 0 {
            if s == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut v = lo;
        while v * r <= s && v <= symbols::MAX_INDEX {
            cur.push(v);
            go(r - 1, s - v, v, cur, out);
            cur.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    go(r, s, lo, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> Engine {
        Engine::default()
    }

    fn a(d: u32) -> Presentation {
        iota(&CoefElem::generator(d))
    }

    fn x(n: u32) -> Presentation {
        Presentation::x(n).unwrap()
    }

    fn g(i: u32, n: u32) -> Presentation {
        Presentation::g(i, n).unwrap()
    }

    fn e(k: u32) -> Presentation {
        Presentation::e_pow(k)
    }

    fn nf(p: &Presentation) -> Presentation {
        engine().normal_form(p).unwrap()
    }

    fn l(s: &str) -> LaurentElem {
        LaurentElem::parse(s).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let en = engine();
        assert!(en.alpha(&e(1)).unwrap().is_zero());
        assert_eq!(en.alpha(&x(2)).unwrap(), CoefElem::generator(2));
        assert!(en.alpha(&a(2).mul(&x(3))).unwrap().is_zero());
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota(&CoefElem::generator(2)), a(2));
        assert!(iota(&CoefElem::zero()).is_zero());
        let c = &CoefElem::generator(2) * &CoefElem::generator(4);
        assert_eq!(engine().alpha(&iota(&c)).unwrap(), c);
    }

    #[test]
    fn gamma_examples() {
        let en = engine();
        assert_eq!(en.gamma(&x(2)).unwrap(), g(1, 2));
        assert!(en.gamma(&a(2)).unwrap().is_zero());
        assert_eq!(
            en.gamma(&x(2).mul(&x(2))).unwrap(),
            g(1, 2).mul(&x(2)).add(&a(2).mul(&g(1, 2)))
        );
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(nf(&e(1).mul(&g(1, 2))), x(2).add(&a(2)));
        assert_eq!(
            nf(&g(1, 2).mul(&g(1, 2))),
            g(2, 2).mul(&x(2)).add(&a(2).mul(&g(2, 2)))
        );
        assert_eq!(
            nf(&g(1, 3).mul(&x(2))),
            g(1, 2).mul(&x(3)).add(&a(2).mul(&g(1, 3)))
        );
    }

    #[test]
    fn localize_examples() {
        let en = engine();
        assert_eq!(
            en.localize(&g(1, 2)).unwrap(),
            l("c1*e^-2 + e^-3 + a2*e^-1")
        );
        assert_eq!(en.localize(&e(1)).unwrap(), l("e"));
        assert_eq!(
            en.localize(&x(2).add(&a(2))).unwrap(),
            l("c1*e^-1 + e^-2 + a2")
        );
    }

    #[test]
    fn divide_e_examples() {
        let en = engine();
        assert_eq!(en.divide_e(&x(2).add(&a(2))).unwrap(), g(1, 2));
        assert!(en.divide_e(&Presentation::zero()).unwrap().is_zero());
        assert_eq!(
            en.divide_e(&x(2)).unwrap_err(),
            Error::NotDivisible(CoefElem::generator(2))
        );
    }

    #[test]
    fn member_examples() {
        let en = engine();
        assert_eq!(en.member(&loc_p(2)).unwrap(), Membership::Member(x(2)));
        assert_eq!(en.member(&l("e^-1")).unwrap(), Membership::NotMember);
        assert_eq!(
            en.member(&LaurentElem::zero()).unwrap(),
            Membership::Member(Presentation::zero())
        );
    }

    #[test]
    fn is_geometric_examples() {
        let en = engine();
        assert!(en.is_geometric(&g(2, 3).mul(&x(4))).unwrap());
        assert!(!en.is_geometric(&e(1)).unwrap());
        assert!(en.is_geometric(&e(1).mul(&g(1, 2))).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let en = engine();
        let q = en.quotient_reduce(&e(2).mul(&g(1, 2))).unwrap();
        assert_eq!(q.0.len(), 1);
        assert_eq!(q.component(1), x(2).add(&a(2)));
        assert!(en.quotient_reduce(&g(1, 2)).unwrap().is_zero());
        let q = en.quotient_reduce(&e(3)).unwrap();
        assert_eq!(q.component(3), Presentation::one());
        assert_eq!(q.to_string(), "x3");
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler(0, 3), e(3));
        assert!(euler(1, 1).is_zero());
        assert_eq!(euler(0, 0), Presentation::one());
    }

    #[test]
    fn low_augmentations() {
        let ring = CoefRing::default();
        assert!(gamma_augmentation(1, 2, &ring).unwrap().is_zero());
        assert!(gamma_augmentation(1, 3, &ring).unwrap().is_zero());
        let a22 = gamma_augmentation(2, 2, &ring).unwrap();
        let expected = &CoefElem::generator(4) + &CoefElem::generator(2).pow(2);
        assert_eq!(a22, expected);
    }

    #[test]
    fn display_is_canonical() {
        let p = a(2).mul(&g(1, 2)).mul(&x(3)).mul(&x(3)).mul(&e(2));
        assert_eq!(p.to_string(), "a2*G(1,2)*X3^2*e^2");
        assert_eq!(Presentation::zero().to_string(), "0");
        assert_eq!(Presentation::one().to_string(), "1");
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let mut en = engine();
        en.config.fuel = 1;
        let err = en.normal_form(&g(2, 2).mul(&g(2, 2))).unwrap_err();
        assert!(matches!(err, Error::FuelExhausted { .. }), "{err:?}");
    }

    #[test]
    fn x1_is_zero() {
        assert!(x(1).is_zero());
        assert!(g(3, 1).is_zero());
    }

    #[test]
    fn w2_lowers_gamma_weight() {
        let inner = g(0, 2).mul(&g(1, 2));
        let outer = g(1, 2).mul(&g(1, 2));
        let m = |p: &Presentation| p.monomials().next().unwrap().termination_measure();
        assert!(m(&inner) < m(&outer));
    }
}
