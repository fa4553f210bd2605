//! The Laurent ring L = N_*[c₁, c₂, …][e, e⁻¹] and window-bounded linear algebra.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gf2poly::{poly_newtype, GradedPoly, Monomial};
use crate::linalg::{BitRow, Eliminator};
use crate::symbols::{self, Sym};

poly_newtype!(
    /// An element of L: a polynomial in `a<d>`, `c<j>` and `e^{±1}`.
    LaurentElem
);

impl LaurentElem {
    pub fn from_poly(p: GradedPoly) -> Result<Self> {
        for m in p.terms() {
            for &(id, _) in m.factors() {
                if !matches!(symbols::kind(id), Sym::A(_) | Sym::C(_)) {
                    return Err(Error::Contract(format!(
                        "`{}` is not a Laurent monomial",
                        m.display(symbols::table())
                    )));
                }
            }
        }
        Ok(Self(p))
    }

    pub fn e_power(k: i32) -> Self {
        Self(GradedPoly::monomial(
            symbols::table(),
            Monomial::inv_power(k),
        ))
    }

    pub fn shift(&self, k: i32) -> Self {
        Self(self.0.shift_inv(k))
    }

    pub fn max_e_exponent(&self) -> Option<i32> {
        self.0.max_inv_exponent()
    }

    pub fn min_e_exponent(&self) -> Option<i32> {
        self.0.min_inv_exponent()
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_poly(GradedPoly::parse(symbols::table(), text)?)
    }
}

impl From<crate::coefficients::CoefElem> for LaurentElem {
    fn from(c: crate::coefficients::CoefElem) -> Self {
        Self(c.into_poly())
    }
}

/// The stable class c_j, with c₀ = 1.
pub fn c_class(j: u32) -> LaurentElem {
    if j == 0 {
        LaurentElem::one()
    } else {
        LaurentElem(GradedPoly::var(symbols::table(), symbols::c(j)))
    }
}

/// Image of [P(nτ⊕σ)]: c_{n−1}e⁻¹ + e⁻ⁿ.
pub fn loc_p(n: u32) -> LaurentElem {
    assert!(n >= 1, "contract violation: loc_p(0)");
    &c_class(n - 1).shift(-1) + &LaurentElem::e_power(-(n as i32))
}

pub fn loc_euler() -> LaurentElem {
    LaurentElem::e_power(1)
}

/// Result of clearing denominators: e^N·x = p(e, X_n, a_d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cleared {
    pub n: u32,
    /// Polynomial in `e` (nonnegative powers), `X<n>` and `a<d>`.
    pub p: GradedPoly,
}

/// Express x through the generator images: substitute c_j = e·X_{j+1} + e^{−j}
/// and multiply by the smallest e^N clearing every substituted term.
pub fn clear_denominators(x: &LaurentElem) -> Result<Cleared> {
    if !x.0.is_homogeneous() {
        return Err(Error::Contract(format!("{x} is not homogeneous")));
    }
    let table = symbols::table();
    let mut n = 0i64;
    for m in x.terms() {
        let c_degree: i64 = m
            .factors()
            .iter()
            .filter_map(|&(id, e)| match symbols::kind(id) {
                Sym::C(j) => Some(j as i64 * e as i64),
                _ => None,
            })
            .sum();
        n = n.max(c_degree - m.inv_exponent() as i64);
    }
    let substituted = x.0.substitute(table, |id| match symbols::kind(id) {
        Sym::C(j) => {
            let ex = GradedPoly::var(table, symbols::x(j + 1)).shift_inv(1);
            ex.add(&GradedPoly::monomial(
                table,
                Monomial::inv_power(-(j as i32)),
            ))
        }
        _ => GradedPoly::var(table, id),
    });
    let p = substituted.shift_inv(n as i32);
    debug_assert!(p.min_inv_exponent().unwrap_or(0) >= 0);
    Ok(Cleared { n: n as u32, p })
}

/// Evaluate a cleared polynomial at X_n ↦ loc_P(n) and divide by e^N.
pub fn evaluate_cleared(cleared: &Cleared) -> LaurentElem {
    let table = symbols::table();
    let value = cleared.p.substitute(table, |id| match symbols::kind(id) {
        Sym::X(n) => loc_p(n).into_poly(),
        _ => GradedPoly::var(table, id),
    });
    LaurentElem(value.shift_inv(-(cleared.n as i32)))
}

/// A finite slice of L: degree `d` and e-exponents in [t_min, t_max].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub degree: i64,
    pub t_min: i32,
    pub t_max: i32,
}

impl Window {
    /// The full window [−d, t_max] of degree d.
    pub fn new(degree: i64, t_max: i32) -> Result<Self> {
        let t_min = -degree as i32;
        if t_max < t_min {
            return Err(Error::Contract(format!(
                "window top {t_max} below bottom {t_min} in degree {degree}"
            )));
        }
        Ok(Self {
            degree,
            t_min,
            t_max,
        })
    }

    /// Default window: t_max = max(0, −d) + height.
    pub fn standard(degree: i64, height: u32) -> Self {
        Self::new(degree, (-degree).max(0) as i32 + height as i32).unwrap()
    }

    pub fn contains(&self, x: &LaurentElem) -> bool {
        x.terms().all(|m| {
            m.degree(symbols::table()) == self.degree
                && (self.t_min..=self.t_max).contains(&m.inv_exponent())
        })
    }
}

/// Row-reduced images of a list of window elements.
#[derive(Clone, Debug)]
pub struct WindowBasis {
    window: Window,
    columns: HashMap<Monomial, usize>,
    elim: Eliminator,
    count: usize,
}

impl WindowBasis {
    pub fn rank(&self) -> usize {
        self.elim.rank()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn row(&self, x: &LaurentElem) -> Option<BitRow> {
        let mut idx = Vec::with_capacity(x.len());
        for m in x.terms() {
            idx.push(*self.columns.get(m)?);
        }
        Some(BitRow::from_indices(self.columns.len(), idx))
    }

    /// Selection of images summing to `target`, if it lies in their span.
    pub fn expand(&self, target: &LaurentElem) -> Option<Vec<bool>> {
        let row = self.row(target)?;
        let combo = self.elim.solve(&row)?;
        Some((0..self.count).map(|i| combo.get(i)).collect())
    }

    pub fn contains(&self, target: &LaurentElem) -> bool {
        self.row(target).is_some_and(|r| self.elim.contains(&r))
    }
}

/// Rank data of `images` inside window `w`; columns are the monomials of the images.
pub fn window_basis(w: Window, images: &[LaurentElem]) -> Result<WindowBasis> {
    if let Some(x) = images.iter().find(|x| !w.contains(x)) {
        return Err(Error::Contract(format!("{x} lies outside window {w:?}")));
    }
    let support: BTreeSet<&Monomial> = images.iter().flat_map(|x| x.terms()).collect();
    let columns: HashMap<Monomial, usize> = support
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let mut basis = WindowBasis {
        window: w,
        columns,
        elim: Eliminator::new(0),
        count: images.len(),
    };
    let mut elim = Eliminator::new(basis.columns.len());
    for x in images {
        elim.insert(basis.row(x).unwrap());
    }
    basis.elim = elim;
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> LaurentElem {
        LaurentElem::parse(s).unwrap()
    }

    #[test]
    fn loc_p_examples() {
        assert!(loc_p(1).is_zero());
        assert_eq!(loc_p(2), l("c1*e^-1 + e^-2"));
        assert_eq!(loc_p(3), l("c2*e^-1 + e^-3"));
        for n in 1..=16 {
            let x = loc_p(n);
            assert!(x.is_zero() || x.homogeneous_degree() == Some(n as i64));
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(loc_euler(), l("e"));
        assert!((&loc_euler() * &LaurentElem::e_power(-1)).is_one());
        assert_eq!(&loc_euler() * &loc_p(2), l("c1 + e^-1"));
    }

    #[test]
    fn clear_denominators_examples() {
        let x = |s: &str| GradedPoly::parse(symbols::table(), s).unwrap();
        let r = clear_denominators(&l("c2")).unwrap();
        assert_eq!((r.n, r.p.clone()), (2, x("X3*e^3 + 1")));
        assert_eq!(evaluate_cleared(&r), l("c2"));
        let r = clear_denominators(&l("e^-1")).unwrap();
        assert_eq!((r.n, r.p), (1, x("1")));
        let r = clear_denominators(&loc_p(2)).unwrap();
        assert_eq!((r.n, r.p), (2, x("X2*e^2")));
        assert!(clear_denominators(&l("c1 + e")).is_err());
    }

    #[test]
    fn window_basis_examples() {
        let w = Window::new(2, -1).unwrap();
        let b = window_basis(w, &[loc_p(2)]).unwrap();
        assert_eq!(b.rank(), 1);
        assert_eq!(b.expand(&loc_p(2)), Some(vec![true]));
        let b = window_basis(w, &[loc_p(2), loc_p(2)]).unwrap();
        assert_eq!(b.rank(), 1);
        assert!(window_basis(Window::new(2, -2).unwrap(), &[loc_p(2)]).is_err());
        assert!(b.expand(&l("c1*e^-1")).is_none());
    }
}
