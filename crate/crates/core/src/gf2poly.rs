//! Sparse polynomials over GF(2) in integer-graded variables.
//!
//! A polynomial is a set of monomials: presence means coefficient 1, so
//! addition is symmetric difference. Exactly one variable of a [`VarTable`]
//! is invertible and may carry negative exponents.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::sync::Arc;

use crate::error::{Error, ParseError, Result};
use crate::linalg::{BitRow, Eliminator};

pub type VarId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
struct VarEntry {
    name: String,
    degree: i32,
}

/// The ambient alphabet: variable names, degrees, and the invertible one.
///
/// Variables may be appended but are never reordered, so monomial orderings
/// stay stable for the lifetime of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    entries: Vec<VarEntry>,
    invertible: VarId,
    index: HashMap<String, VarId>,
}

impl VarTable {
    /// A table holding only the invertible variable.
    pub fn new(invertible: &str, degree: i32) -> Result<Self> {
        let mut table = Self {
            entries: Vec::new(),
            invertible: 0,
            index: HashMap::new(),
        };
        table.invertible = table.push(invertible, degree)?;
        Ok(table)
    }

    pub fn with_entries<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, i32)>,
        invertible: &str,
    ) -> Result<Self> {
        let mut table = Self {
            entries: Vec::new(),
            invertible: VarId::MAX,
            index: HashMap::new(),
        };
        for (name, degree) in entries {
            table.push(name, degree)?;
        }
        table.invertible = table.lookup(invertible).ok_or_else(|| {
            Error::Contract(format!("invertible variable `{invertible}` not in table"))
        })?;
        Ok(table)
    }

    pub fn push(&mut self, name: impl Into<String>, degree: i32) -> Result<VarId> {
        let name = name.into();
        if degree == 0 {
            return Err(Error::Contract(format!("variable `{name}` has degree 0")));
        }
        if self.index.contains_key(&name) {
            return Err(Error::Contract(format!("duplicate variable `{name}`")));
        }
        let id = self.entries.len() as VarId;
        self.index.insert(name.clone(), id);
        self.entries.push(VarEntry { name, degree });
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.entries[id as usize].name
    }

    pub fn degree(&self, id: VarId) -> i32 {
        self.entries[id as usize].degree
    }

    pub fn invertible(&self) -> VarId {
        self.invertible
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A monomial with the invertible exponent stored apart from the rest.
///
/// `Ord` sorts leading terms first: larger invertible exponent first, then
/// lexicographically (larger exponent first) in table order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    inv: i32,
    /// Sorted by variable, exponents nonzero; never contains the invertible variable.
    rest: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(table: &VarTable, id: VarId) -> Self {
        if id == table.invertible() {
            Self::inv_power(1)
        } else {
            Self {
                inv: 0,
                rest: vec![(id, 1)],
            }
        }
    }

    pub fn inv_power(k: i32) -> Self {
        Self {
            inv: k,
            rest: Vec::new(),
        }
    }

    /// Build from (variable, exponent) pairs; repeated variables accumulate.
    pub fn from_exponents(table: &VarTable, exps: &[(VarId, i32)]) -> Result<Self> {
        let mut inv = 0;
        let mut acc: BTreeMap<VarId, i64> = BTreeMap::new();
        for &(id, e) in exps {
            if id as usize >= table.len() {
                return Err(Error::Contract(format!("unknown variable id {id}")));
            }
            if id == table.invertible() {
                inv += e;
            } else {
                *acc.entry(id).or_default() += e as i64;
            }
        }
        let mut rest = Vec::with_capacity(acc.len());
        for (id, e) in acc {
            if e < 0 {
                return Err(Error::Contract(format!(
                    "negative exponent on non-invertible variable `{}`",
                    table.name(id)
                )));
            }
            if e > 0 {
                rest.push((id, e as u32));
            }
        }
        Ok(Self { inv, rest })
    }

    pub fn inv_exponent(&self) -> i32 {
        self.inv
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.rest
    }

    pub fn exponent(&self, table: &VarTable, id: VarId) -> i32 {
        if id == table.invertible() {
            return self.inv;
        }
        self.rest
            .binary_search_by_key(&id, |&(v, _)| v)
            .map(|i| self.rest[i].1 as i32)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.inv == 0 && self.rest.is_empty()
    }

    /// Total number of non-invertible factors, with multiplicity.
    pub fn rest_len(&self) -> u32 {
        self.rest.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree(&self, table: &VarTable) -> i64 {
        let mut d = self.inv as i64 * table.degree(table.invertible()) as i64;
        for &(id, e) in &self.rest {
            d += table.degree(id) as i64 * e as i64;
        }
        d
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut rest = Vec::with_capacity(self.rest.len() + other.rest.len());
        let (mut i, mut j) = (0, 0);
        while i < self.rest.len() && j < other.rest.len() {
            let (a, ea) = self.rest[i];
            let (b, eb) = other.rest[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    rest.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    rest.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    rest.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        rest.extend_from_slice(&self.rest[i..]);
        rest.extend_from_slice(&other.rest[j..]);
        Monomial {
            inv: self.inv + other.inv,
            rest,
        }
    }

    pub fn shift_inv(&self, k: i32) -> Monomial {
        Monomial {
            inv: self.inv + k,
            rest: self.rest.clone(),
        }
    }

    /// The same monomial with the invertible exponent set to zero.
    pub fn without_inv(&self) -> Monomial {
        Monomial {
            inv: 0,
            rest: self.rest.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            inv: self.inv * k as i32,
            rest: self.rest.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    pub fn display<'a>(&'a self, table: &'a VarTable) -> MonomialDisplay<'a> {
        MonomialDisplay {
            monomial: self,
            table,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.inv.cmp(&self.inv).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.rest.get(i), other.rest.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(a, ea)), Some(&(b, eb))) => {
                        if a != b {
                            // The side with the earlier variable has the larger exponent there.
                            return a.cmp(&b);
                        }
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    table: &'a VarTable,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.monomial;
        if m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut factor = |f: &mut fmt::Formatter<'_>, id: VarId, e: i64| -> fmt::Result {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.table.name(id))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
            Ok(())
        };
        for &(id, e) in &m.rest {
            factor(f, id, e as i64)?;
        }
        if m.inv != 0 {
            factor(f, self.table.invertible(), m.inv as i64)?;
        }
        Ok(())
    }
}

/// A GF(2) polynomial over a shared [`VarTable`].
#[derive(Clone, Debug)]
pub struct GradedPoly {
    table: Arc<VarTable>,
    terms: BTreeSet<Monomial>,
}

fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl std::hash::Hash for GradedPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl GradedPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Self {
            table: Arc::clone(table),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::monomial(table, Monomial::one())
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial) -> Self {
        let mut p = Self::zero(table);
        p.terms.insert(m);
        p
    }

    pub fn var(table: &Arc<VarTable>, id: VarId) -> Self {
        Self::monomial(table, Monomial::var(table, id))
    }

    /// Collect monomials with GF(2) cancellation of repeats.
    pub fn from_terms(table: &Arc<VarTable>, terms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Self::zero(table);
        for m in terms {
            p.toggle(m);
        }
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> &BTreeSet<Monomial> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeSet<Monomial> {
        self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.first().is_some_and(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    fn check_table(&self, other: &GradedPoly) {
        assert!(
            same_table(&self.table, &other.table),
            "contract violation: polynomials over different variable tables"
        );
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        self.check_table(other);
        GradedPoly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        }
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        self.check_table(other);
        let mut acc: HashSet<Monomial> = HashSet::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mul(b);
                if !acc.remove(&m) {
                    acc.insert(m);
                }
            }
        }
        GradedPoly {
            table: Arc::clone(&self.table),
            terms: acc.into_iter().collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> GradedPoly {
        GradedPoly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> GradedPoly {
        let mut result = GradedPoly::one(&self.table);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiply by a power of the invertible variable.
    pub fn shift_inv(&self, k: i32) -> GradedPoly {
        GradedPoly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|m| m.shift_inv(k)).collect(),
        }
    }

    pub fn max_inv_exponent(&self) -> Option<i32> {
        self.terms.first().map(Monomial::inv_exponent)
    }

    pub fn min_inv_exponent(&self) -> Option<i32> {
        self.terms.last().map(Monomial::inv_exponent)
    }

    pub fn degree_decompose(&self) -> BTreeMap<i64, GradedPoly> {
        let mut out: BTreeMap<i64, GradedPoly> = BTreeMap::new();
        for m in &self.terms {
            out.entry(m.degree(&self.table))
                .or_insert_with(|| GradedPoly::zero(&self.table))
                .terms
                .insert(m.clone());
        }
        out
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.iter().map(|m| m.degree(&self.table));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Substitute each variable by a polynomial over a (possibly different)
    /// target table. The invertible variable may only be substituted by a
    /// monomial when negative powers occur.
    pub fn substitute(
        &self,
        target: &Arc<VarTable>,
        mut image: impl FnMut(VarId) -> GradedPoly,
    ) -> GradedPoly {
        let mut cache: HashMap<VarId, GradedPoly> = HashMap::new();
        let mut acc = GradedPoly::zero(target);
        let inv_id = self.table.invertible();
        for m in &self.terms {
            let mut term = GradedPoly::one(target);
            for &(id, e) in &m.rest {
                let base = cache.entry(id).or_insert_with(|| image(id));
                term = term.mul(&base.pow(e));
            }
            if m.inv != 0 {
                let base = cache.entry(inv_id).or_insert_with(|| image(inv_id));
                if m.inv > 0 {
                    term = term.mul(&base.pow(m.inv as u32));
                } else {
                    assert!(
                        base.len() == 1,
                        "contract violation: negative power of a non-monomial image"
                    );
                    let inverse = base.terms.first().unwrap().pow(m.inv.unsigned_abs());
                    let inverse = Monomial {
                        inv: -inverse.inv,
                        rest: inverse.rest,
                    };
                    assert!(
                        inverse.rest.is_empty(),
                        "contract violation: only invertible monomials can be inverted"
                    );
                    term = term.mul_monomial(&inverse);
                }
            }
            acc += &term;
        }
        acc
    }

    /// Parse the canonical text form, e.g. `c1*e^-1 + e^-2`.
    pub fn parse(table: &Arc<VarTable>, text: &str) -> Result<GradedPoly> {
        let mut poly = GradedPoly::zero(table);
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(ParseError::new(0, &["term"], "empty input").into());
        }
        let mut offset = text.len() - text.trim_start().len();
        for raw_term in trimmed.split('+') {
            let term = raw_term.trim();
            let lead = raw_term.len() - raw_term.trim_start().len();
            let term_pos = offset + lead;
            offset += raw_term.len() + 1;
            if term.is_empty() {
                return Err(ParseError::new(term_pos, &["term"], "empty term").into());
            }
            if term == "0" {
                continue;
            }
            let mut exps = Vec::new();
            let mut fpos = term_pos;
            for raw_factor in term.split('*') {
                let factor = raw_factor.trim();
                let flead = raw_factor.len() - raw_factor.trim_start().len();
                let pos = fpos + flead;
                fpos += raw_factor.len() + 1;
                if factor == "1" {
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: i32 = e.trim().parse().map_err(|_| {
                            ParseError::new(pos + n.len() + 1, &["integer"], "bad exponent")
                        })?;
                        (n.trim(), e)
                    }
                    None => (factor, 1),
                };
                let id = table.lookup(name).ok_or_else(|| {
                    ParseError::new(pos, &["variable"], format!("unknown variable `{name}`"))
                })?;
                if exp < 0 && id != table.invertible() {
                    return Err(ParseError::new(
                        pos,
                        &[],
                        format!("negative exponent on `{name}`"),
                    )
                    .into());
                }
                exps.push((id, exp));
            }
            poly.toggle(Monomial::from_exponents(table, &exps)?);
        }
        Ok(poly)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", m.display(&self.table))?;
        }
        Ok(())
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        GradedPoly::add(self, rhs)
    }
}

impl AddAssign<&GradedPoly> for GradedPoly {
    fn add_assign(&mut self, rhs: &GradedPoly) {
        self.check_table(rhs);
        for m in &rhs.terms {
            self.toggle(m.clone());
        }
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        GradedPoly::mul(self, rhs)
    }
}

/// Find a subset of `vectors` summing to `target`.
///
/// Columns are the monomials of the inputs in term order, so pivots and the
/// returned selection are deterministic.
pub fn solve_gf2(vectors: &[GradedPoly], target: &GradedPoly) -> Option<Vec<bool>> {
    let mut columns: BTreeSet<&Monomial> = BTreeSet::new();
    for v in vectors {
        target.check_table(v);
        columns.extend(v.terms.iter());
    }
    if target.terms.iter().any(|m| !columns.contains(m)) {
        return None;
    }
    let index: HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let ncols = index.len();
    let to_row = |p: &GradedPoly| BitRow::from_indices(ncols, p.terms.iter().map(|m| index[m]));
    let mut elim = Eliminator::new(ncols);
    for v in vectors {
        elim.insert(to_row(v));
    }
    let combo = elim.solve(&to_row(target))?;
    Some((0..vectors.len()).map(|i| combo.get(i)).collect())
}

/// Newtype wrapper over a [`GradedPoly`] on the shared symbol table.
macro_rules! poly_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name(pub(crate) $crate::gf2poly::GradedPoly);

        impl $name {
            pub fn zero() -> Self {
                Self($crate::gf2poly::GradedPoly::zero($crate::symbols::table()))
            }

            pub fn one() -> Self {
                Self($crate::gf2poly::GradedPoly::one($crate::symbols::table()))
            }

            pub fn poly(&self) -> &$crate::gf2poly::GradedPoly {
                &self.0
            }

            pub fn into_poly(self) -> $crate::gf2poly::GradedPoly {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn is_one(&self) -> bool {
                self.0.is_one()
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_zero()
            }

            pub fn terms(&self) -> impl Iterator<Item = &$crate::gf2poly::Monomial> {
                self.0.terms().iter()
            }

            pub fn homogeneous_degree(&self) -> Option<i64> {
                self.0.homogeneous_degree()
            }

            pub fn pow(&self, k: u32) -> Self {
                Self(self.0.pow(k))
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                self.0.fmt(f)
            }
        }

        impl std::ops::Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                $name(self.0.add(&rhs.0))
            }
        }

        impl std::ops::Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0.add(&rhs.0))
            }
        }

        impl std::ops::AddAssign<&$name> for $name {
            fn add_assign(&mut self, rhs: &$name) {
                self.0 += &rhs.0;
            }
        }

        impl std::ops::Mul for &$name {
            type Output = $name;
            fn mul(self, rhs: &$name) -> $name {
                $name(self.0.mul(&rhs.0))
            }
        }

        impl std::ops::Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                $name(self.0.mul(&rhs.0))
            }
        }
    };
}

pub(crate) use poly_newtype;

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<VarTable> {
        Arc::new(VarTable::with_entries([("e", -1), ("a2", 2), ("c1", 1), ("c2", 2)], "e").unwrap())
    }

    fn p(t: &Arc<VarTable>, s: &str) -> GradedPoly {
        GradedPoly::parse(t, s).unwrap()
    }

    #[test]
    fn table_rejects_duplicates_and_zero_degree() {
        let mut t = VarTable::new("e", -1).unwrap();
        assert!(t.push("e", 3).is_err());
        assert!(t.push("z", 0).is_err());
        assert!(VarTable::with_entries([("x", 1)], "e").is_err());
    }

    #[test]
    fn add_examples() {
        let t = table();
        let x = p(&t, "c1*e^-1 + e^-2");
        assert!(x.add(&x).is_zero());
        assert_eq!(x.add(&GradedPoly::zero(&t)), x);
        assert_eq!(x.add(&p(&t, "e^-2")), p(&t, "c1*e^-1"));
    }

    #[test]
    fn mul_examples() {
        let t = table();
        let x = p(&t, "c1*e^-1 + e^-2");
        assert_eq!(x.mul(&x), p(&t, "c1^2*e^-2 + e^-4"));
        assert_eq!(x.mul(&GradedPoly::one(&t)), x);
        assert!(p(&t, "e").mul(&p(&t, "e^-1")).is_one());
    }

    #[test]
    fn degree_decompose_examples() {
        let t = table();
        let parts = p(&t, "c1 + e").degree_decompose();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], p(&t, "c1"));
        assert_eq!(parts[&-1], p(&t, "e"));
        assert!(GradedPoly::zero(&t).degree_decompose().is_empty());
        // e⁻¹ has degree +1, so c₂e⁻¹ sits in degree 3 alongside e⁻³ in loc_P(3).
        let parts = p(&t, "c2*e^-1").degree_decompose();
        assert_eq!(parts.keys().collect::<Vec<_>>(), vec![&3]);
    }

    #[test]
    fn solve_examples() {
        let t = table();
        let a = p(&t, "c1*e^-1 + e^-2");
        let b = p(&t, "e^-2");
        assert_eq!(
            solve_gf2(&[a.clone(), b.clone()], &a.add(&b)),
            Some(vec![true, true])
        );
        assert_eq!(
            solve_gf2(std::slice::from_ref(&a), &GradedPoly::zero(&t)),
            Some(vec![false])
        );
        assert_eq!(
            solve_gf2(&[a.clone(), b.clone()], &p(&t, "c1*e^-1")),
            Some(vec![true, true])
        );
        assert_eq!(solve_gf2(&[b], &p(&t, "c2")), None);
    }

    #[test]
    fn term_order_puts_large_invertible_exponent_first() {
        let t = table();
        let x = p(&t, "e^-2 + c1*e^-1 + a2*c1 + c2");
        let order: Vec<String> = x
            .terms()
            .iter()
            .map(|m| m.display(&t).to_string())
            .collect();
        assert_eq!(order, vec!["a2*c1", "c2", "c1*e^-1", "e^-2"]);
        assert_eq!(x.to_string(), "a2*c1 + c2 + c1*e^-1 + e^-2");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let t = table();
        let err = GradedPoly::parse(&t, "c1 + zz").unwrap_err();
        match err {
            Error::Parse(e) => assert_eq!(e.position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(GradedPoly::parse(&t, "").is_err());
        assert!(GradedPoly::parse(&t, "c1^-1").is_err());
    }

    #[test]
    #[should_panic(expected = "different variable tables")]
    fn mismatched_tables_panic() {
        let t = table();
        let u = Arc::new(VarTable::with_entries([("e", -1), ("q", 3)], "e").unwrap());
        let _ = GradedPoly::one(&t).add(&GradedPoly::one(&u));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly_from(t: &Arc<VarTable>, exps: &[(i32, i32, i32, i32)]) -> GradedPoly {
            let mut out = GradedPoly::zero(t);
            for &(e, a, c1, c2) in exps {
                out.toggle(
                    Monomial::from_exponents(t, &[(0, e), (1, a), (2, c1), (3, c2)]).unwrap(),
                );
            }
            out
        }

        fn poly() -> impl Strategy<Value = Vec<(i32, i32, i32, i32)>> {
            prop::collection::vec((-3..=3, 0..=2, 0..=3, 0..=2), 0..6)
        }

        proptest! {
            #[test]
            fn ring_axioms(x in poly(), y in poly(), z in poly()) {
                let t = table();
                let (x, y, z) = (poly_from(&t, &x), poly_from(&t, &y), poly_from(&t, &z));
                prop_assert_eq!(x.add(&y), y.add(&x));
                prop_assert_eq!(x.mul(&y), y.mul(&x));
                prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
                prop_assert!(x.add(&x).is_zero());
                prop_assert_eq!(x.pow(2), x.mul(&x));
            }

            #[test]
            fn degree_decompose_reassembles(x in poly()) {
                let t = table();
                let x = poly_from(&t, &x);
                let mut sum = GradedPoly::zero(&t);
                for (d, part) in x.degree_decompose() {
                    prop_assert_eq!(part.homogeneous_degree(), Some(d));
                    sum = sum.add(&part);
                }
                prop_assert_eq!(sum, x);
            }

            #[test]
            fn print_parse_round_trip(x in poly()) {
                let t = table();
                let x = poly_from(&t, &x);
                prop_assert_eq!(GradedPoly::parse(&t, &x.to_string()).unwrap(), x);
            }

            #[test]
            fn solve_matches_exhaustive_search(
                vs in prop::collection::vec(poly(), 0..=10),
                pick in any::<u16>(),
                noise in poly(),
            ) {
                let t = table();
                let vs: Vec<GradedPoly> = vs.iter().map(|v| poly_from(&t, v)).collect();
                let mut target = poly_from(&t, &noise);
                if pick % 2 == 0 {
                    target = GradedPoly::zero(&t);
                    for (i, v) in vs.iter().enumerate() {
                        if pick >> (i + 1) & 1 == 1 {
                            target = target.add(v);
                        }
                    }
                }
                let reachable = (0u32..1 << vs.len()).any(|mask| {
                    let mut acc = GradedPoly::zero(&t);
                    for (i, v) in vs.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            acc = acc.add(v);
                        }
                    }
                    acc == target
                });
                match solve_gf2(&vs, &target) {
                    Some(sel) => {
                        let mut acc = GradedPoly::zero(&t);
                        for (v, s) in vs.iter().zip(sel) {
                            if s {
                                acc = acc.add(v);
                            }
                        }
                        prop_assert_eq!(acc, target);
                    }
                    None => prop_assert!(!reachable),
                }
            }
        }
    }
}
