//! Fixed-point data: the bundle algebra ⊕_k N_{*−k}(BO(k)), free ℤ/2-bordism
//! N_*(Bℤ/2), the maps η, φ, δ, and the comparison with localization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::charnum::{identify_in_n, identify_in_nbo1, LineClass, Space, SpaceDesc};
use crate::coefficients::{rho, CoefElem, CoefRing};
use crate::error::{Error, Result};
use crate::gf2poly::{poly_newtype, GradedPoly, Monomial};
use crate::localized::{c_class, LaurentElem};
use crate::presentation::{iota, Engine, Presentation};
use crate::symbols::{self, Sym};

/// Σ f_j·s_j with s_j the antipodal j-sphere.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeBZ2Elem(BTreeMap<u32, CoefElem>);

impl FreeBZ2Elem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(j: u32) -> Self {
        Self(BTreeMap::from([(j, CoefElem::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, j: u32, c: &CoefElem) {
        let entry = self.0.entry(j).or_insert_with(CoefElem::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&j);
        }
    }

    pub fn add_assign(&mut self, other: &FreeBZ2Elem) {
        for (&j, c) in &other.0 {
            self.add_term(j, c);
        }
    }

    pub fn scale(&self, c: &CoefElem) -> FreeBZ2Elem {
        let mut out = FreeBZ2Elem::zero();
        for (&j, f) in &self.0 {
            out.add_term(j, &(f * c));
        }
        out
    }

    pub fn coefficient(&self, j: u32) -> CoefElem {
        self.0.get(&j).cloned().unwrap_or_else(CoefElem::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &CoefElem)> {
        self.0.iter().map(|(&j, c)| (j, c))
    }

    /// Action of e^k: s_j ↦ s_{j−k}, dropping negative indices.
    pub fn lower(&self, k: u32) -> FreeBZ2Elem {
        Self(
            self.0
                .iter()
                .filter(|(&j, _)| j >= k)
                .map(|(&j, c)| (j - k, c.clone()))
                .collect(),
        )
    }

    pub fn degree(&self) -> Option<i64> {
        let mut ds = self
            .0
            .iter()
            .map(|(&j, c)| c.homogeneous_degree().map(|d| d + j as i64));
        let first = ds.next()??;
        ds.all(|d| d == Some(first)).then_some(first)
    }
}

impl fmt::Display for FreeBZ2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in &self.0 {
            for m in c.terms() {
                if m.is_one() {
                    parts.push(format!("s{j}"));
                } else {
                    parts.push(format!("{}*s{j}", m.display(symbols::table())));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

poly_newtype!(
    /// Polynomial in β_i (written `b<i>`) over N_*.
    BundleAlgElem
);

impl BundleAlgElem {
    pub fn beta(i: u32) -> Self {
        Self(GradedPoly::var(symbols::table(), symbols::b(i)))
    }

    pub fn from_coef(c: &CoefElem) -> Self {
        Self(c.poly().clone())
    }

    pub fn from_poly(p: GradedPoly) -> Result<Self> {
        for m in p.terms() {
            let ok = m.inv_exponent() == 0
                && m.factors()
                    .iter()
                    .all(|&(id, _)| matches!(symbols::kind(id), Sym::A(_) | Sym::B(_)));
            if !ok {
                return Err(Error::Contract(format!(
                    "`{}` is not a bundle-algebra monomial",
                    m.display(symbols::table())
                )));
            }
        }
        Ok(Self(p))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_poly(GradedPoly::parse(symbols::table(), text)?)
    }
}

/// Split a bundle-algebra monomial into its coefficient and β-indices (with multiplicity).
fn split_bundle_monomial(m: &Monomial) -> (CoefElem, Vec<u32>) {
    let mut coef = Vec::new();
    let mut betas = Vec::new();
    for &(id, e) in m.factors() {
        match symbols::kind(id) {
            Sym::A(_) => coef.push((id, e as i32)),
            Sym::B(i) => betas.extend(std::iter::repeat_n(i, e as usize)),
            other => panic!("contract violation: {other:?} in bundle algebra"),
        }
    }
    let coef = Monomial::from_exponents(symbols::table(), &coef).unwrap();
    (CoefElem::from_monomial(coef), betas)
}

/// Catalog of manifolds with involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ManifoldExpr {
    /// P(nτ⊕σ).
    Proj(u32),
    /// γ(M) = M ×_{ℤ/2} S¹.
    GammaOf(Box<ManifoldExpr>),
    Product(Vec<ManifoldExpr>),
    Trivial(CoefElem),
    AntipodalSphere(u32),
}

impl ManifoldExpr {
    pub fn gamma_of(m: ManifoldExpr) -> Self {
        ManifoldExpr::GammaOf(Box::new(m))
    }

    /// γ^i(P(nτ⊕σ)).
    pub fn gamma_tower(i: u32, n: u32) -> Self {
        (0..i).fold(ManifoldExpr::Proj(n), |m, _| ManifoldExpr::gamma_of(m))
    }

    pub fn dim(&self) -> i64 {
        match self {
            ManifoldExpr::Proj(n) => *n as i64,
            ManifoldExpr::GammaOf(m) => 1 + m.dim(),
            ManifoldExpr::Product(fs) => fs.iter().map(ManifoldExpr::dim).sum(),
            ManifoldExpr::Trivial(c) => c.homogeneous_degree().unwrap_or(0),
            ManifoldExpr::AntipodalSphere(j) => *j as i64,
        }
    }
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldExpr::Proj(n) => write!(f, "P({n})"),
            ManifoldExpr::GammaOf(m) => write!(f, "gamma({m})"),
            ManifoldExpr::Product(fs) => {
                for (i, m) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
            ManifoldExpr::Trivial(c) => write!(f, "triv({c})"),
            ManifoldExpr::AntipodalSphere(j) => write!(f, "S({j})"),
        }
    }
}

/// Fixed-point data of a catalog manifold.
pub fn phi(m: &ManifoldExpr, ring: &CoefRing) -> Result<BundleAlgElem> {
    Ok(match m {
        ManifoldExpr::Proj(n) => &BundleAlgElem::beta(*n) + &BundleAlgElem::beta(1).pow(*n),
        ManifoldExpr::GammaOf(inner) => {
            let under = BundleAlgElem::from_coef(&underlying(inner, ring)?);
            &BundleAlgElem::beta(1) * &(&under + &phi(inner, ring)?)
        }
        ManifoldExpr::Product(fs) => {
            let mut acc = BundleAlgElem::one();
            for f in fs {
                acc = &acc * &phi(f, ring)?;
            }
            acc
        }
        ManifoldExpr::Trivial(c) => BundleAlgElem::from_coef(c),
        ManifoldExpr::AntipodalSphere(_) => BundleAlgElem::zero(),
    })
}

/// The underlying non-equivariant class in N_*.
///
/// For γ(M) this is read off from the fixed data of M: a manifold with
/// involution is bordant to Σ_F [P(ν_F ⊕ ℝ)], and the fixed data of γ(M) is
/// β₁·(α(M) + φ(M)), so α(γ(M)) = Σ c·[P(ν ⊕ ℝ²)] over the terms c·ν of φ(M).
pub fn underlying(m: &ManifoldExpr, ring: &CoefRing) -> Result<CoefElem> {
    Ok(match m {
        ManifoldExpr::Proj(n) => {
            if *n == 0 {
                return Err(Error::Contract("P(0) is not in the catalog".into()));
            }
            rho(*n)
        }
        ManifoldExpr::GammaOf(inner) => {
            let mut acc = CoefElem::zero();
            for t in phi(inner, ring)?.terms() {
                let (c, betas) = split_bundle_monomial(t);
                acc += &(&c * &projective_class(&betas, 2, ring)?);
            }
            acc
        }
        ManifoldExpr::Product(fs) => {
            let mut acc = CoefElem::one();
            for f in fs {
                acc = &acc * &underlying(f, ring)?;
            }
            acc
        }
        ManifoldExpr::Trivial(c) => c.clone(),
        ManifoldExpr::AntipodalSphere(_) => CoefElem::zero(),
    })
}

/// Base dimensions and trivial-line count of the bundle ∏β_i ⊕ ℝ^k.
fn bundle_shape(betas: &[u32], trivial: u32) -> (Vec<u32>, u32) {
    let dims: Vec<u32> = betas.iter().filter(|&&i| i >= 2).map(|&i| i - 1).collect();
    let ones = betas.iter().filter(|&&i| i == 1).count() as u32;
    (dims, ones + trivial)
}

/// [P(λ_{i₁} ⊕ … ⊕ λ_{i_r} ⊕ ℝ^k)] in N_*, λ_i tautological over ℝP^{i−1}.
pub fn projective_class(betas: &[u32], trivial: u32, ring: &CoefRing) -> Result<CoefElem> {
    type Cache = Mutex<HashMap<(Vec<u32>, u32), CoefElem>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let mut key = betas.to_vec();
    key.sort_unstable();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(key.clone(), trivial)) {
        return Ok(v.clone());
    }
    let (dims, lines) = bundle_shape(&key, trivial);
    let desc = SpaceDesc::tautological_projectivization(&dims, lines);
    let value = identify_in_n(&desc, ring)?;
    cache.lock().unwrap().insert((key, trivial), value.clone());
    Ok(value)
}

/// δ of a single β-monomial: the antipodal sphere bundle, identified through
/// its quotient projective bundle with reference class t.
fn delta_monomial(betas: &[u32], ring: &CoefRing) -> Result<FreeBZ2Elem> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u32>, FreeBZ2Elem>>> = OnceLock::new();
    if betas.is_empty() {
        return Ok(FreeBZ2Elem::zero());
    }
    let mut key = betas.to_vec();
    key.sort_unstable();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let (dims, lines) = bundle_shape(&key, 0);
    let desc = SpaceDesc::tautological_projectivization(&dims, lines);
    let value = identify_in_nbo1(&Space::with_reference(desc, LineClass::named("t")), ring)?;
    cache.lock().unwrap().insert(key, value.clone());
    Ok(value)
}

pub fn delta(x: &BundleAlgElem, ring: &CoefRing) -> Result<FreeBZ2Elem> {
    let mut out = FreeBZ2Elem::zero();
    for t in x.terms() {
        let (c, betas) = split_bundle_monomial(t);
        out.add_assign(&delta_monomial(&betas, ring)?.scale(&c));
    }
    Ok(out)
}

/// Free actions extend over the equivariant disk bundle, so η vanishes.
pub fn eta(_x: &FreeBZ2Elem) -> Presentation {
    Presentation::zero()
}

/// Pontryagin–Thom class, in normal form.
pub fn pt_class(m: &ManifoldExpr, engine: &Engine) -> Result<Presentation> {
    match m {
        ManifoldExpr::Proj(n) => Presentation::x(*n),
        ManifoldExpr::GammaOf(inner) => engine.gamma(&pt_class(inner, engine)?),
        ManifoldExpr::Product(fs) => {
            let mut acc = Presentation::one();
            for f in fs {
                acc = acc.mul(&pt_class(f, engine)?);
            }
            engine.normal_form(&acc)
        }
        ManifoldExpr::Trivial(c) => Ok(iota(c)),
        ManifoldExpr::AntipodalSphere(_) => Ok(Presentation::zero()),
    }
}

/// β_i ↦ c_{i−1}·e⁻¹.
pub fn dictionary(x: &BundleAlgElem) -> LaurentElem {
    let table = symbols::table();
    LaurentElem(x.poly().substitute(table, |id| match symbols::kind(id) {
        Sym::B(i) => c_class(i - 1).shift(-1).into_poly(),
        _ => GradedPoly::var(table, id),
    }))
}

/// Inverse dictionary on e^{−K}ℓ: a·∏c_j·e^t ↦ a·∏β_{j+1}·β₁^{K−t−r}.
fn inverse_dictionary(l: &LaurentElem, k: i32) -> BundleAlgElem {
    let table = symbols::table();
    let mut out = GradedPoly::zero(table);
    for m in l.terms() {
        let mut exps = Vec::new();
        let mut r = 0i32;
        for &(id, e) in m.factors() {
            match symbols::kind(id) {
                Sym::C(j) => {
                    exps.push((symbols::b(j + 1), e as i32));
                    r += e as i32;
                }
                _ => exps.push((id, e as i32)),
            }
        }
        exps.push((symbols::b(1), k - m.inv_exponent() - r));
        out.toggle(Monomial::from_exponents(table, &exps).expect("β₁-exponent is nonnegative"));
    }
    BundleAlgElem(out)
}

/// The boundary ∂ℓ = e^K·δ(dict⁻¹(e^{−K}ℓ)) in N_*(Bℤ/2); it vanishes exactly
/// on the image of MO^{ℤ/2}_*.
pub fn boundary(l: &LaurentElem, ring: &CoefRing) -> Result<FreeBZ2Elem> {
    let k = l
        .terms()
        .map(|m| {
            let r: i32 = m
                .factors()
                .iter()
                .filter(|(id, _)| matches!(symbols::kind(*id), Sym::C(_)))
                .map(|&(_, e)| e as i32)
                .sum();
            m.inv_exponent() + r
        })
        .max()
        .unwrap_or(0)
        .max(0);
    Ok(delta(&inverse_dictionary(l, k), ring)?.lower(k as u32))
}

/// α(y) for y in MO^{ℤ/2}_*, read off as the s₀-coefficient of ∂(e⁻¹·y).
pub fn augmentation_from_boundary(y: &LaurentElem, ring: &CoefRing) -> Result<CoefElem> {
    Ok(boundary(&y.shift(-1), ring)?.coefficient(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> CoefRing {
        CoefRing::default()
    }

    fn b(s: &str) -> BundleAlgElem {
        BundleAlgElem::parse(s).unwrap()
    }

    #[test]
    fn phi_examples() {
        let r = ring();
        assert_eq!(phi(&ManifoldExpr::Proj(2), &r).unwrap(), b("b2 + b1^2"));
        let a2 = CoefElem::generator(2);
        assert_eq!(phi(&ManifoldExpr::Trivial(a2), &r).unwrap(), b("a2"));
        assert_eq!(
            phi(&ManifoldExpr::gamma_tower(1, 2), &r).unwrap(),
            b("a2*b1 + b1*b2 + b1^3")
        );
    }

    #[test]
    fn eta_examples() {
        assert!(eta(&FreeBZ2Elem::generator(0)).is_zero());
        assert!(eta(&FreeBZ2Elem::generator(3).scale(&CoefElem::generator(2))).is_zero());
        assert!(eta(&FreeBZ2Elem::zero()).is_zero());
    }

    #[test]
    fn delta_examples() {
        let r = ring();
        for i in 1..=6 {
            assert_eq!(
                delta(&BundleAlgElem::beta(i), &r).unwrap(),
                FreeBZ2Elem::generator(i - 1)
            );
            assert_eq!(
                delta(&BundleAlgElem::beta(1).pow(i), &r).unwrap(),
                FreeBZ2Elem::generator(i - 1)
            );
        }
        assert!(delta(&BundleAlgElem::one(), &r).unwrap().is_zero());
        for n in 1..=6 {
            let x = phi(&ManifoldExpr::Proj(n), &r).unwrap();
            assert!(delta(&x, &r).unwrap().is_zero());
        }
    }

    #[test]
    fn underlying_examples() {
        let r = ring();
        assert_eq!(
            underlying(&ManifoldExpr::Proj(2), &r).unwrap(),
            CoefElem::generator(2)
        );
        let a4 = CoefElem::generator(4);
        assert_eq!(
            underlying(&ManifoldExpr::Trivial(a4.clone()), &r).unwrap(),
            a4
        );
        assert!(underlying(&ManifoldExpr::gamma_tower(1, 2), &r)
            .unwrap()
            .is_zero());
        let a22 = underlying(&ManifoldExpr::gamma_tower(2, 2), &r).unwrap();
        assert_eq!(
            a22,
            &CoefElem::generator(4) + &CoefElem::generator(2).pow(2)
        );
    }

    #[test]
    fn pt_class_examples() {
        let en = Engine::default();
        assert_eq!(
            pt_class(&ManifoldExpr::Proj(3), &en).unwrap(),
            Presentation::x(3).unwrap()
        );
        assert_eq!(
            pt_class(&ManifoldExpr::gamma_tower(1, 2), &en).unwrap(),
            Presentation::g(1, 2).unwrap()
        );
        assert_eq!(
            pt_class(&ManifoldExpr::Trivial(CoefElem::one()), &en).unwrap(),
            Presentation::one()
        );
    }

    #[test]
    fn dictionary_examples() {
        let l = |s: &str| LaurentElem::parse(s).unwrap();
        assert_eq!(dictionary(&b("b2 + b1^2")), l("c1*e^-1 + e^-2"));
        assert!(dictionary(&BundleAlgElem::one()).is_one());
        assert_eq!(dictionary(&BundleAlgElem::beta(1)), l("e^-1"));
    }

    #[test]
    fn adding_a_trivial_line_shifts_the_boundary() {
        let r = ring();
        for x in [b("b2"), b("b3*b2"), b("a2*b2^2"), b("b1*b3")] {
            let lifted = delta(&(&BundleAlgElem::beta(1) * &x), &r).unwrap();
            assert_eq!(lifted.lower(1), delta(&x, &r).unwrap(), "{x}");
        }
    }

    #[test]
    fn boundary_detects_membership() {
        let r = ring();
        let l = |s: &str| LaurentElem::parse(s).unwrap();
        assert_eq!(boundary(&l("e^-1"), &r).unwrap(), FreeBZ2Elem::generator(0));
        assert!(boundary(&l("e"), &r).unwrap().is_zero());
        assert!(boundary(&l("c1*e^-1 + e^-2"), &r).unwrap().is_zero());
        let x2 = l("c1*e^-1 + e^-2");
        assert_eq!(
            augmentation_from_boundary(&x2, &r).unwrap(),
            CoefElem::generator(2)
        );
    }
}
