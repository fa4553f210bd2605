//! The unoriented bordism ring N_* as a graded polynomial ring over GF(2).

use std::fmt;

use crate::charnum::SpaceDesc;
use crate::error::{Error, Result};
use crate::gf2poly::{poly_newtype, GradedPoly, Monomial};
use crate::symbols::{self, Sym};

poly_newtype!(
    /// An element of N_*: a polynomial in the generators `a<d>`.
    CoefElem
);

impl CoefElem {
    /// The generator `a<d>`; panics when `d` carries no generator.
    pub fn generator(d: u32) -> Self {
        Self(GradedPoly::var(symbols::table(), symbols::a(d)))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        debug_assert!(is_coefficient_monomial(&m));
        Self(GradedPoly::monomial(symbols::table(), m))
    }

    /// Wrap a polynomial, rejecting anything outside the `a<d>` variables.
    pub fn from_poly(p: GradedPoly) -> Result<Self> {
        match p.terms().iter().find(|m| !is_coefficient_monomial(m)) {
            Some(m) => Err(Error::Contract(format!(
                "`{}` is not a coefficient monomial",
                m.display(symbols::table())
            ))),
            None => Ok(Self(p)),
        }
    }

    pub fn monomials(&self) -> Vec<CoefElem> {
        self.terms().cloned().map(CoefElem::from_monomial).collect()
    }
}

pub fn is_coefficient_monomial(m: &Monomial) -> bool {
    m.inv_exponent() == 0
        && m.factors()
            .iter()
            .all(|&(id, _)| matches!(symbols::kind(id), Sym::A(_)))
}

/// Degrees carrying a polynomial generator of N_*: d ≥ 2 and d + 1 not a power of two.
pub fn is_generator_degree(d: u32) -> bool {
    d >= 2 && !(d + 1).is_power_of_two()
}

/// The class of ℝPⁿ: the generator `a<n>` for even n, zero for odd n.
pub fn rho(n: u32) -> CoefElem {
    assert!(n >= 1, "contract violation: rho(0) is undefined");
    if n.is_multiple_of(2) {
        CoefElem::generator(n)
    } else {
        CoefElem::zero()
    }
}

/// Catalog manifold representing the generator `a<d>`.
///
/// Even degrees use ℝP^d; odd degrees d = 2^r(2s+1) − 1 use the Dold
/// manifold P(2^r − 1, s·2^r).
pub fn representative(d: u32) -> SpaceDesc {
    assert!(
        is_generator_degree(d),
        "contract violation: no generator in degree {d}"
    );
    if d.is_multiple_of(2) {
        SpaceDesc::RP(d)
    } else {
        let r = (d + 1).trailing_zeros();
        let s = ((d + 1) >> r) / 2;
        SpaceDesc::Dold((1 << r) - 1, s << r)
    }
}

/// Product of generator representatives for a coefficient monomial.
pub fn monomial_representative(m: &Monomial) -> SpaceDesc {
    let mut factors = Vec::new();
    for &(id, exp) in m.factors() {
        let Sym::A(d) = symbols::kind(id) else {
            panic!("contract violation: not a coefficient monomial");
        };
        for _ in 0..exp {
            factors.push(representative(d));
        }
    }
    match factors.len() {
        0 => SpaceDesc::point(),
        1 => factors.pop().unwrap(),
        _ => SpaceDesc::Product(factors),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    Auto,
    Explicit(Vec<u32>),
}

impl fmt::Display for Generators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generators::Auto => f.write_str("auto"),
            Generators::Explicit(ds) => {
                let parts: Vec<String> = ds.iter().map(u32::to_string).collect();
                f.write_str(&parts.join(", "))
            }
        }
    }
}

/// Enumeration settings for N_*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefRing {
    max_degree: u32,
    generators: Generators,
}

impl Default for CoefRing {
    fn default() -> Self {
        Self {
            max_degree: 16,
            generators: Generators::Auto,
        }
    }
}

impl CoefRing {
    pub fn new(max_degree: u32, generators: Generators) -> Result<Self> {
        if max_degree > symbols::MAX_INDEX {
            return Err(Error::Config(format!(
                "coef.max_degree {max_degree} exceeds {}",
                symbols::MAX_INDEX
            )));
        }
        if let Generators::Explicit(ds) = &generators {
            if let Some(&d) = ds.iter().find(|&&d| !is_generator_degree(d)) {
                return Err(Error::Config(format!("no generator of N_* in degree {d}")));
            }
        }
        Ok(Self {
            max_degree,
            generators,
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn generators(&self) -> &Generators {
        &self.generators
    }

    /// Generator degrees up to `d` in increasing order.
    pub fn generator_degrees(&self, d: u32) -> Vec<u32> {
        match &self.generators {
            Generators::Auto => (2..=d).filter(|&k| is_generator_degree(k)).collect(),
            Generators::Explicit(ds) => {
                let mut ds: Vec<u32> = ds.iter().copied().filter(|&k| k <= d).collect();
                ds.sort_unstable();
                ds.dedup();
                ds
            }
        }
    }

    /// Fail unless degree `d` is enumerable and every generator up to `d` is enabled.
    pub fn require_complete(&self, d: u32) -> Result<()> {
        if d > self.max_degree {
            return Err(Error::Capacity(format!(
                "degree {d} exceeds coef.max_degree {}",
                self.max_degree
            )));
        }
        if let Generators::Explicit(ds) = &self.generators {
            if let Some(k) = (2..=d).find(|&k| is_generator_degree(k) && !ds.contains(&k)) {
                return Err(Error::Capacity(format!(
                    "generator a{k} is not enabled (coef.generators)"
                )));
            }
        }
        Ok(())
    }

    /// All monomials of degree `d`, largest generator first.
    pub fn monomials_of_degree(&self, d: u32) -> Result<Vec<CoefElem>> {
        if d > self.max_degree {
            return Err(Error::Capacity(format!(
                "degree {d} exceeds coef.max_degree {}",
                self.max_degree
            )));
        }
        let gens = self.generator_degrees(d);
        let mut out = Vec::new();
        let mut parts = Vec::new();
        partitions_into(d, &gens, gens.len(), &mut parts, &mut |parts| {
            let exps: Vec<_> = parts.iter().map(|&k| (symbols::a(k), 1)).collect();
            let m = Monomial::from_exponents(symbols::table(), &exps).unwrap();
            out.push(CoefElem::from_monomial(m));
        });
        Ok(out)
    }

    pub fn rank(&self, d: u32) -> Result<usize> {
        Ok(self.monomials_of_degree(d)?.len())
    }
}

/// Visit partitions of `d` into parts from `parts_avail[..limit]`, parts non-increasing.
fn partitions_into(
    d: u32,
    parts_avail: &[u32],
    limit: usize,
    parts: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if d == 0 {
        visit(parts);
        return;
    }
    for idx in (0..limit).rev() {
        let k = parts_avail[idx];
        if k <= d {
            parts.push(k);
            partitions_into(d - k, parts_avail, idx + 1, parts, visit);
            parts.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[CoefElem]) -> Vec<String> {
        v.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn generator_degrees_skip_mersenne_numbers() {
        let ds: Vec<u32> = (0..=16).filter(|&d| is_generator_degree(d)).collect();
        assert_eq!(ds, vec![2, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14, 16]);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(2), CoefElem::generator(2));
        assert!(rho(3).is_zero());
        assert!(rho(1).is_zero());
        assert_eq!(rho(6).homogeneous_degree(), Some(6));
    }

    #[test]
    #[should_panic(expected = "contract violation")]
    fn rho_zero_panics() {
        rho(0);
    }

    #[test]
    fn monomials_examples() {
        let ring = CoefRing::default();
        assert_eq!(names(&ring.monomials_of_degree(0).unwrap()), vec!["1"]);
        assert!(ring.monomials_of_degree(3).unwrap().is_empty());
        assert_eq!(
            names(&ring.monomials_of_degree(4).unwrap()),
            vec!["a4", "a2^2"]
        );
        assert!(matches!(
            ring.monomials_of_degree(17),
            Err(Error::Capacity(_))
        ));
    }

    fn partition_count(d: u32) -> usize {
        // Coefficient of t^d in ∏ 1/(1 − t^k) over generator degrees k.
        let mut counts = vec![0usize; d as usize + 1];
        counts[0] = 1;
        for k in (2..=d).filter(|&k| is_generator_degree(k)) {
            for n in k as usize..=d as usize {
                counts[n] += counts[n - k as usize];
            }
        }
        counts[d as usize]
    }

    #[test]
    fn ranks_match_generating_function() {
        let ring = CoefRing::default();
        for d in 0..=16 {
            assert_eq!(ring.rank(d).unwrap(), partition_count(d), "degree {d}");
            for m in ring.monomials_of_degree(d).unwrap() {
                assert_eq!(m.homogeneous_degree(), Some(d as i64));
            }
        }
    }

    #[test]
    fn representatives_have_generator_dimension() {
        for d in (2..=16).filter(|&d| is_generator_degree(d)) {
            assert_eq!(representative(d).dim(), d as i64);
        }
        assert_eq!(representative(5), SpaceDesc::Dold(1, 2));
        assert_eq!(representative(11), SpaceDesc::Dold(3, 4));
    }

    #[test]
    fn explicit_generators_restrict_enumeration() {
        let ring = CoefRing::new(8, Generators::Explicit(vec![2])).unwrap();
        assert_eq!(names(&ring.monomials_of_degree(4).unwrap()), vec!["a2^2"]);
        assert!(ring.require_complete(2).is_ok());
        assert!(ring.require_complete(4).is_err());
        assert!(CoefRing::new(8, Generators::Explicit(vec![3])).is_err());
    }
}
