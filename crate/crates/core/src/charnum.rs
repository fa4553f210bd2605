//! Mod-2 cohomology rings, Stiefel–Whitney numbers, and identification of
//! bordism classes by their characteristic numbers.
//!
//! Every catalog space has cohomology presented as a tower of generators:
//! each generator is either truncated (`u^{n+1} = 0`) or satisfies a monic
//! relation over the earlier generators (the projective-bundle relation).

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::coefficients::{monomial_representative, CoefElem, CoefRing};
use crate::conner_floyd::FreeBZ2Elem;
use crate::error::{Error, Result};
use crate::linalg::{BitRow, Eliminator};

/// A closed manifold from the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceDesc {
    RP(u32),
    Dold(u32, u32),
    Product(Vec<SpaceDesc>),
    /// Projectivization of a sum of line bundles over `base`.
    ProjBundle {
        base: Box<SpaceDesc>,
        lines: Vec<LineClass>,
    },
}

/// A degree-1 class of a base space: a sum of degree-1 generator names; empty is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LineClass(pub Vec<String>);

impl LineClass {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn named(name: impl Into<String>) -> Self {
        Self(vec![name.into()])
    }
}

impl fmt::Display for LineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&self.0.join(" + "))
        }
    }
}

impl SpaceDesc {
    pub fn point() -> Self {
        SpaceDesc::RP(0)
    }

    /// Dimension; a projective bundle of zero lines is empty and has dimension dim(base) − 1.
    pub fn dim(&self) -> i64 {
        match self {
            SpaceDesc::RP(n) => *n as i64,
            SpaceDesc::Dold(m, n) => *m as i64 + 2 * *n as i64,
            SpaceDesc::Product(fs) => fs.iter().map(SpaceDesc::dim).sum(),
            SpaceDesc::ProjBundle { base, lines } => base.dim() + lines.len() as i64 - 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SpaceDesc::RP(_) | SpaceDesc::Dold(..) => false,
            SpaceDesc::Product(fs) => fs.iter().any(SpaceDesc::is_empty),
            SpaceDesc::ProjBundle { base, lines } => lines.is_empty() || base.is_empty(),
        }
    }

    /// P(L₁ ⊕ … ⊕ L_r ⊕ ℝ^k) over ℝP^{d₁} × … × ℝP^{d_r}, L_j tautological on the j-th factor.
    pub fn tautological_projectivization(dims: &[u32], trivial: u32) -> Self {
        let factors: Vec<SpaceDesc> = dims.iter().map(|&d| SpaceDesc::RP(d)).collect();
        let mut lines: Vec<LineClass> = if factors.len() == 1 {
            vec![LineClass::named("u")]
        } else {
            (1..=factors.len())
                .map(|j| LineClass::named(format!("u{j}")))
                .collect()
        };
        lines.extend((0..trivial).map(|_| LineClass::zero()));
        let base = match factors.len() {
            0 => SpaceDesc::point(),
            1 => factors.into_iter().next().unwrap(),
            _ => SpaceDesc::Product(factors),
        };
        SpaceDesc::ProjBundle {
            base: Box::new(base),
            lines,
        }
    }
}

impl fmt::Display for SpaceDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDesc::RP(n) => write!(f, "RP({n})"),
            SpaceDesc::Dold(m, n) => write!(f, "Dold({m},{n})"),
            SpaceDesc::Product(fs) => {
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
            SpaceDesc::ProjBundle { base, lines } => {
                write!(f, "PB({base}; ")?;
                for (i, l) in lines.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A catalog space with an optional reference line class (a map to BO(1)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    pub desc: SpaceDesc,
    pub reference: Option<LineClass>,
}

impl Space {
    pub fn new(desc: SpaceDesc) -> Self {
        Self {
            desc,
            reference: None,
        }
    }

    pub fn with_reference(desc: SpaceDesc, reference: LineClass) -> Self {
        Self {
            desc,
            reference: Some(reference),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.desc)?;
        if let Some(r) = &self.reference {
            write!(f, " [ref {r}]")?;
        }
        Ok(())
    }
}

type Exps = Vec<u8>;

/// A cohomology class: the set of reduced exponent vectors with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CohomElem(BTreeSet<Exps>);

impl CohomElem {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn toggle(&mut self, e: Exps) {
        if !self.0.remove(&e) {
            self.0.insert(e);
        }
    }

    fn add_assign(&mut self, other: &CohomElem) {
        for e in &other.0 {
            self.toggle(e.clone());
        }
    }
}

#[derive(Clone, Debug)]
enum Rule {
    Truncate(u32),
    /// t^r = Σ_{i=1}^{r} coeffs[i−1]·t^{r−i}.
    Monic(Vec<CohomElem>),
}

#[derive(Clone, Debug)]
struct Gen {
    label: &'static str,
    degree: u32,
    rule: Rule,
}

impl Gen {
    fn top(&self) -> u32 {
        match &self.rule {
            Rule::Truncate(k) => *k,
            Rule::Monic(c) => c.len() as u32 - 1,
        }
    }
}

/// Truncated-polynomial cohomology ring of a nonempty catalog space.
#[derive(Debug)]
pub struct CohomRing {
    gens: Vec<Gen>,
    names: Vec<String>,
    width: usize,
    tangent: CohomElem,
    memo: RefCell<HashMap<Exps, CohomElem>>,
}

fn count_gens(desc: &SpaceDesc) -> usize {
    match desc {
        SpaceDesc::RP(_) => 1,
        SpaceDesc::Dold(..) => 2,
        SpaceDesc::Product(fs) => fs.iter().map(count_gens).sum(),
        SpaceDesc::ProjBundle { base, .. } => count_gens(base) + 1,
    }
}

fn local_names(labels: &[&str]) -> Vec<String> {
    let mut totals: HashMap<&str, usize> = HashMap::new();
    for l in labels {
        *totals.entry(l).or_default() += 1;
    }
    let mut seen: HashMap<&str, usize> = HashMap::new();
    labels
        .iter()
        .map(|l| {
            if totals[l] == 1 {
                l.to_string()
            } else {
                let k = seen.entry(l).or_default();
                *k += 1;
                format!("{l}{k}")
            }
        })
        .collect()
}

impl CohomRing {
    pub fn build(desc: &SpaceDesc) -> Result<CohomRing> {
        if desc.is_empty() {
            return Err(Error::Contract(format!("{desc} is empty")));
        }
        let width = count_gens(desc);
        let mut ring = CohomRing {
            gens: Vec::with_capacity(width),
            names: Vec::new(),
            width,
            tangent: CohomElem::default(),
            memo: RefCell::new(HashMap::new()),
        };
        ring.tangent = ring.append(desc)?;
        let labels: Vec<&str> = ring.gens.iter().map(|g| g.label).collect();
        ring.names = local_names(&labels);
        Ok(ring)
    }

    /// Append the generators of `desc`; returns its total tangent SW class.
    fn append(&mut self, desc: &SpaceDesc) -> Result<CohomElem> {
        match desc {
            SpaceDesc::RP(n) => {
                let u = self.push("u", 1, Rule::Truncate(*n));
                Ok(self.pow(&self.one_plus(&u), n + 1))
            }
            SpaceDesc::Dold(m, n) => {
                let c = self.push("c", 1, Rule::Truncate(*m));
                let d = self.push("d", 2, Rule::Truncate(*n));
                let a = self.pow(&self.one_plus(&c), *m);
                let mut cd = c.clone();
                cd.add_assign(&d);
                let b = self.pow(&self.one_plus(&cd), n + 1);
                Ok(self.mul(&a, &b))
            }
            SpaceDesc::Product(fs) => {
                let mut w = self.one();
                for f in fs {
                    let wf = self.append(f)?;
                    w = self.mul(&w, &wf);
                }
                Ok(w)
            }
            SpaceDesc::ProjBundle { base, lines } => {
                let start = self.gens.len();
                let w_base = self.append(base)?;
                let labels: Vec<&str> = self.gens[start..].iter().map(|g| g.label).collect();
                let names = local_names(&labels);
                let mut xs = Vec::with_capacity(lines.len());
                for line in lines {
                    let mut x = CohomElem::default();
                    for name in &line.0 {
                        let pos = names.iter().position(|n| n == name).ok_or_else(|| {
                            Error::Contract(format!("no generator `{name}` in base {base}"))
                        })?;
                        let g = start + pos;
                        if self.gens[g].degree != 1 {
                            return Err(Error::Contract(format!(
                                "line class `{name}` does not have degree 1"
                            )));
                        }
                        x.add_assign(&self.gen_elem(g));
                    }
                    xs.push(x);
                }
                // Elementary symmetric functions of the line classes.
                let mut sym = vec![self.one()];
                for x in &xs {
                    let mut next = sym.clone();
                    next.push(CohomElem::default());
                    for i in 1..next.len() {
                        let term = self.mul(&sym[i - 1], x);
                        next[i].add_assign(&term);
                    }
                    sym = next;
                }
                let coeffs = sym[1..].to_vec();
                let t = self.push("t", 1, Rule::Monic(coeffs));
                let mut w = w_base;
                for x in &xs {
                    let mut f = self.one_plus(&t);
                    f.add_assign(x);
                    w = self.mul(&w, &f);
                }
                Ok(w)
            }
        }
    }

    fn push(&mut self, label: &'static str, degree: u32, rule: Rule) -> CohomElem {
        self.gens.push(Gen {
            label,
            degree,
            rule,
        });
        self.gen_elem(self.gens.len() - 1)
    }

    fn gen_elem(&self, g: usize) -> CohomElem {
        let mut e = vec![0u8; self.width];
        e[g] = 1;
        self.reduce(&e)
    }

    pub fn one(&self) -> CohomElem {
        CohomElem(BTreeSet::from([vec![0u8; self.width]]))
    }

    fn one_plus(&self, x: &CohomElem) -> CohomElem {
        let mut r = self.one();
        r.add_assign(x);
        r
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator(&self, name: &str) -> Option<CohomElem> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|g| self.gen_elem(g))
    }

    pub fn line_class(&self, line: &LineClass) -> Result<CohomElem> {
        let mut x = CohomElem::default();
        for name in &line.0 {
            let g = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Contract(format!("no generator `{name}`")))?;
            if self.gens[g].degree != 1 {
                return Err(Error::Contract(format!("`{name}` does not have degree 1")));
            }
            x.add_assign(&self.gen_elem(g));
        }
        Ok(x)
    }

    pub fn dim(&self) -> u32 {
        self.gens.iter().map(|g| g.degree * g.top()).sum()
    }

    /// GF(2)-dimension of the whole ring.
    pub fn additive_dimension(&self) -> u64 {
        self.gens.iter().map(|g| g.top() as u64 + 1).product()
    }

    fn exps_degree(&self, e: &[u8]) -> u32 {
        e.iter()
            .zip(&self.gens)
            .map(|(&k, g)| k as u32 * g.degree)
            .sum()
    }

    /// Reduce a monomial: the highest offending generator is rewritten first.
    fn reduce(&self, e: &[u8]) -> CohomElem {
        if let Some(r) = self.memo.borrow().get(e) {
            return r.clone();
        }
        let mut result = CohomElem::default();
        let offending = (0..self.gens.len())
            .rev()
            .find(|&g| e[g] as u32 > self.gens[g].top());
        match offending {
            None => {
                result.0.insert(e.to_vec());
            }
            Some(g) => match &self.gens[g].rule {
                Rule::Truncate(_) => {}
                Rule::Monic(coeffs) => {
                    for (i, c) in coeffs.iter().enumerate() {
                        let mut lowered = e.to_vec();
                        lowered[g] -= i as u8 + 1;
                        for ce in &c.0 {
                            let prod: Exps = lowered.iter().zip(ce).map(|(a, b)| a + b).collect();
                            result.add_assign(&self.reduce(&prod));
                        }
                    }
                }
            },
        }
        self.memo.borrow_mut().insert(e.to_vec(), result.clone());
        result
    }

    pub fn add(&self, a: &CohomElem, b: &CohomElem) -> CohomElem {
        let mut r = a.clone();
        r.add_assign(b);
        r
    }

    pub fn mul(&self, a: &CohomElem, b: &CohomElem) -> CohomElem {
        let mut r = CohomElem::default();
        for x in &a.0 {
            for y in &b.0 {
                let prod: Exps = x.iter().zip(y).map(|(p, q)| p + q).collect();
                r.add_assign(&self.reduce(&prod));
            }
        }
        r
    }

    pub fn pow(&self, a: &CohomElem, k: u32) -> CohomElem {
        let mut r = self.one();
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }

    /// Total Stiefel–Whitney class of the tangent bundle.
    pub fn tangent_sw(&self) -> &CohomElem {
        &self.tangent
    }

    /// Homogeneous component of degree `k`.
    pub fn component(&self, x: &CohomElem, k: u32) -> CohomElem {
        CohomElem(
            x.0.iter()
                .filter(|e| self.exps_degree(e) == k)
                .cloned()
                .collect(),
        )
    }

    fn top(&self) -> Exps {
        self.gens.iter().map(|g| g.top() as u8).collect()
    }

    /// Evaluate a top-degree class on the fundamental class.
    pub fn pair(&self, x: &CohomElem) -> Result<bool> {
        let dim = self.dim();
        if let Some(e) = x.0.iter().find(|e| self.exps_degree(e) != dim) {
            return Err(Error::Contract(format!(
                "class of degree {} paired with a {dim}-manifold",
                self.exps_degree(e)
            )));
        }
        Ok(x.0.contains(&self.top()))
    }
}

/// Key of a characteristic number ⟨w_ω(T)·t^k, [M]⟩: the partition ω (parts
/// non-increasing) and the power k of the reference class.
pub type NumberKey = (Vec<u32>, u32);

/// All partitions of every size up to `n`, parts non-increasing.
fn partitions_up_to(n: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The characteristic-number keys of a space of dimension `dim`.
pub fn number_keys(dim: u32, with_reference: bool) -> Vec<NumberKey> {
    let mut keys: Vec<NumberKey> = partitions_up_to(dim)
        .into_iter()
        .filter_map(|p| {
            let k = dim - p.iter().sum::<u32>();
            (with_reference || k == 0).then_some((p, k))
        })
        .collect();
    keys.sort();
    keys
}

/// All SW numbers of `space`; with a reference class also the mixed numbers with t^k.
pub fn sw_numbers(space: &Space) -> Result<BTreeMap<NumberKey, bool>> {
    let dim = space.desc.dim();
    if dim < 0 {
        return Ok(BTreeMap::new());
    }
    let dim = dim as u32;
    let keys = number_keys(dim, space.reference.is_some());
    if space.desc.is_empty() {
        return Ok(keys.into_iter().map(|k| (k, false)).collect());
    }
    let ring = CohomRing::build(&space.desc)?;
    let reference = match &space.reference {
        Some(r) => Some(ring.line_class(r)?),
        None => None,
    };
    let w: Vec<CohomElem> = (0..=dim)
        .map(|i| ring.component(ring.tangent_sw(), i))
        .collect();
    let mut ref_pows = vec![ring.one()];
    if let Some(r) = &reference {
        for k in 1..=dim as usize {
            ref_pows.push(ring.mul(&ref_pows[k - 1], r));
        }
    }
    let mut products: HashMap<Vec<u32>, CohomElem> = HashMap::new();
    products.insert(Vec::new(), ring.one());
    let mut out = BTreeMap::new();
    // Keys are sorted, so every proper prefix of a partition is computed first.
    for (p, k) in keys {
        let prod = match products.get(&p) {
            Some(x) => x.clone(),
            None => {
                let prefix = &p[..p.len() - 1];
                let base = products
                    .get(prefix)
                    .cloned()
                    .unwrap_or_else(|| fold_product(&ring, &w, prefix));
                let x = ring.mul(&base, &w[*p.last().unwrap() as usize]);
                products.insert(p.clone(), x.clone());
                x
            }
        };
        let value = if prod.is_zero() {
            false
        } else {
            ring.pair(&ring.mul(&prod, &ref_pows[k as usize]))?
        };
        out.insert((p, k), value);
    }
    Ok(out)
}

fn fold_product(ring: &CohomRing, w: &[CohomElem], parts: &[u32]) -> CohomElem {
    parts
        .iter()
        .fold(ring.one(), |acc, &p| ring.mul(&acc, &w[p as usize]))
}

/// Linear system matching characteristic numbers against a fixed basis.
struct Identifier {
    keys: Vec<NumberKey>,
    /// Basis element labels: (s-index, coefficient monomial).
    basis: Vec<(u32, CoefElem)>,
    elim: Eliminator,
}

impl Identifier {
    fn build(dim: u32, with_reference: bool, ring: &CoefRing) -> Result<Identifier> {
        let keys = number_keys(dim, with_reference);
        let index: HashMap<&NumberKey, usize> =
            keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut basis = Vec::new();
        let mut rows = Vec::new();
        let js: Vec<u32> = if with_reference {
            (0..=dim).collect()
        } else {
            vec![0]
        };
        for j in js {
            for m in ring.monomials_of_degree(dim - j)? {
                let mono = m.terms().next().unwrap().clone();
                let rep = monomial_representative(&mono);
                let space = if with_reference {
                    let desc = match rep {
                        SpaceDesc::RP(0) => SpaceDesc::RP(j),
                        SpaceDesc::Product(mut fs) => {
                            fs.push(SpaceDesc::RP(j));
                            SpaceDesc::Product(fs)
                        }
                        other => SpaceDesc::Product(vec![other, SpaceDesc::RP(j)]),
                    };
                    let ring = CohomRing::build(&desc)?;
                    let name = ring.generator_names().last().unwrap().clone();
                    Space::with_reference(desc, LineClass::named(name))
                } else {
                    Space::new(rep)
                };
                let numbers = sw_numbers(&space)?;
                rows.push(BitRow::from_indices(
                    keys.len(),
                    numbers.iter().filter(|(_, &v)| v).map(|(k, _)| index[k]),
                ));
                basis.push((j, m));
            }
        }
        let mut elim = Eliminator::new(keys.len());
        for row in rows {
            if !elim.insert(row) {
                return Err(Error::Integrity(format!(
                    "characteristic numbers of the dimension-{dim} basis are dependent"
                )));
            }
        }
        Ok(Identifier { keys, basis, elim })
    }

    fn solve(&self, space: &Space) -> Result<Vec<(u32, CoefElem)>> {
        let numbers = sw_numbers(space)?;
        let index: HashMap<&NumberKey, usize> =
            self.keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let target = BitRow::from_indices(
            self.keys.len(),
            numbers.iter().filter(|(_, &v)| v).map(|(k, _)| index[k]),
        );
        let combo = self.elim.solve(&target).ok_or_else(|| {
            Error::Integrity(format!("characteristic numbers of {space} match no class"))
        })?;
        Ok(combo.ones().map(|i| self.basis[i].clone()).collect())
    }
}

type IdentifierCache = Mutex<HashMap<(u32, bool), Arc<Identifier>>>;

fn identifier(dim: u32, with_reference: bool, ring: &CoefRing) -> Result<Arc<Identifier>> {
    static CACHE: OnceLock<IdentifierCache> = OnceLock::new();
    ring.require_complete(dim)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(id) = cache.lock().unwrap().get(&(dim, with_reference)) {
        return Ok(Arc::clone(id));
    }
    let built = Arc::new(Identifier::build(
        dim,
        with_reference,
        &CoefRing::default(),
    )?);
    let mut guard = cache.lock().unwrap();
    Ok(Arc::clone(
        guard.entry((dim, with_reference)).or_insert(built),
    ))
}

/// The class of a closed manifold in N_*.
pub fn identify_in_n(desc: &SpaceDesc, ring: &CoefRing) -> Result<CoefElem> {
    let dim = desc.dim();
    if dim < 0 || desc.is_empty() {
        return Ok(CoefElem::zero());
    }
    let id = identifier(dim as u32, false, ring)?;
    let mut out = CoefElem::zero();
    for (_, m) in id.solve(&Space::new(desc.clone()))? {
        out += &m;
    }
    Ok(out)
}

/// The class of (M, reference line) in N_*(BO(1)) over the basis s_j = [ℝP^j, u].
pub fn identify_in_nbo1(space: &Space, ring: &CoefRing) -> Result<FreeBZ2Elem> {
    if space.reference.is_none() {
        return Err(Error::Contract(format!("{space} has no reference class")));
    }
    let dim = space.desc.dim();
    if dim < 0 || space.desc.is_empty() {
        return Ok(FreeBZ2Elem::zero());
    }
    let id = identifier(dim as u32, true, ring)?;
    let mut out = FreeBZ2Elem::zero();
    for (j, m) in id.solve(space)? {
        out.add_term(j, &m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn numbers(desc: SpaceDesc) -> BTreeMap<NumberKey, bool> {
        sw_numbers(&Space::new(desc)).unwrap()
    }

    #[test]
    fn pair_examples() {
        let ring = CohomRing::build(&SpaceDesc::RP(2)).unwrap();
        let u = ring.generator("u").unwrap();
        assert!(ring.pair(&ring.mul(&u, &u)).unwrap());
        let w2 = ring.component(ring.tangent_sw(), 2);
        assert!(ring.pair(&w2).unwrap());
        assert!(ring.pair(&u).is_err());

        let ring = CohomRing::build(&SpaceDesc::RP(3)).unwrap();
        let u = ring.generator("u").unwrap();
        let w1 = ring.component(ring.tangent_sw(), 1);
        assert!(!ring.pair(&ring.mul(&w1, &ring.mul(&u, &u))).unwrap());
    }

    #[test]
    fn rp_numbers() {
        let rp2 = numbers(SpaceDesc::RP(2));
        assert!(rp2[&(vec![1, 1], 0)]);
        assert!(rp2[&(vec![2], 0)]);
        assert!(numbers(SpaceDesc::RP(3)).values().all(|&v| !v));
        let rp1 = sw_numbers(&Space::with_reference(
            SpaceDesc::RP(1),
            LineClass::named("u"),
        ))
        .unwrap();
        assert!(rp1[&(vec![], 1)]);
    }

    #[test]
    fn pairing_requires_top_degree() {
        for desc in [SpaceDesc::RP(2), SpaceDesc::Dold(1, 2)] {
            let ring = CohomRing::build(&desc).unwrap();
            assert!(ring.pair(&ring.one()).is_err());
        }
        let point = CohomRing::build(&SpaceDesc::point()).unwrap();
        assert!(point.pair(&point.one()).unwrap());
    }

    #[test]
    fn product_numbers_are_convolutions() {
        // w(M×N) = w(M)·w(N), paired factorwise.
        for a in 0..=6u32 {
            for b in 0..=(6 - a) {
                let prod = numbers(SpaceDesc::Product(vec![SpaceDesc::RP(a), SpaceDesc::RP(b)]));
                let ra = CohomRing::build(&SpaceDesc::RP(a)).unwrap();
                let rb = CohomRing::build(&SpaceDesc::RP(b)).unwrap();
                for ((p, _), &value) in &prod {
                    let mut terms: Vec<(CohomElem, CohomElem)> = vec![(ra.one(), rb.one())];
                    for &part in p {
                        let mut next = Vec::new();
                        for (l, r) in &terms {
                            for x in 0..=part {
                                let wl = ra.component(ra.tangent_sw(), x);
                                let wr = rb.component(rb.tangent_sw(), part - x);
                                next.push((ra.mul(l, &wl), rb.mul(r, &wr)));
                            }
                        }
                        terms = next;
                    }
                    let mut expected = false;
                    for (l, r) in &terms {
                        let dl = ra.component(l, a);
                        let dr = rb.component(r, b);
                        expected ^= ra.pair(&dl).unwrap() & rb.pair(&dr).unwrap();
                    }
                    assert_eq!(value, expected, "RP({a})xRP({b}) {p:?}");
                }
            }
        }
    }

    #[test]
    fn projective_bundle_ring_dimension() {
        for (base, lines) in [
            (SpaceDesc::RP(1), 2usize),
            (SpaceDesc::RP(2), 3),
            (
                SpaceDesc::Product(vec![SpaceDesc::RP(1), SpaceDesc::RP(2)]),
                2,
            ),
            (SpaceDesc::Dold(1, 1), 2),
        ] {
            let base_ring = CohomRing::build(&base).unwrap();
            let pb = SpaceDesc::ProjBundle {
                base: Box::new(base.clone()),
                lines: vec![LineClass::zero(); lines],
            };
            let ring = CohomRing::build(&pb).unwrap();
            assert_eq!(
                ring.additive_dimension(),
                base_ring.additive_dimension() * lines as u64
            );
            assert_eq!(ring.dim() as i64, pb.dim());
            // Enumerate all reduced monomials directly.
            let mut count = 0;
            let top: Vec<u8> = ring.top();
            let mut e = vec![0u8; top.len()];
            loop {
                count += 1;
                let mut i = 0;
                while i < e.len() && e[i] == top[i] {
                    e[i] = 0;
                    i += 1;
                }
                if i == e.len() {
                    break;
                }
                e[i] += 1;
            }
            assert_eq!(count as u64, ring.additive_dimension());
        }
    }

    #[test]
    fn identify_rp_with_reference_is_basis() {
        let ring = CoefRing::default();
        for j in 0..=6 {
            let s = identify_in_nbo1(
                &Space::with_reference(SpaceDesc::RP(j), LineClass::named("u")),
                &ring,
            )
            .unwrap();
            assert_eq!(s, FreeBZ2Elem::generator(j));
        }
    }

    #[test]
    fn identify_small_classes() {
        let ring = CoefRing::default();
        assert_eq!(
            identify_in_n(&SpaceDesc::RP(2), &ring).unwrap(),
            CoefElem::generator(2)
        );
        assert!(identify_in_n(&SpaceDesc::RP(3), &ring).unwrap().is_zero());
        assert!(identify_in_n(&SpaceDesc::RP(1), &ring).unwrap().is_zero());
        assert!(identify_in_n(&SpaceDesc::point(), &ring).unwrap().is_one());
        assert_eq!(
            identify_in_n(&SpaceDesc::Dold(1, 2), &ring).unwrap(),
            CoefElem::generator(5)
        );
        let empty = SpaceDesc::ProjBundle {
            base: Box::new(SpaceDesc::RP(2)),
            lines: vec![],
        };
        assert!(identify_in_n(&empty, &ring).unwrap().is_zero());
    }

    #[test]
    fn projectivized_tautological_plus_trivial_over_circle() {
        let ring = CoefRing::default();
        let space = Space::with_reference(
            SpaceDesc::ProjBundle {
                base: Box::new(SpaceDesc::RP(1)),
                lines: vec![LineClass::named("u"), LineClass::zero()],
            },
            LineClass::named("t"),
        );
        let class = identify_in_nbo1(&space, &ring).unwrap();
        assert_eq!(class.degree(), Some(2));
    }

    #[test]
    fn generators_are_indecomposable_through_degree_twelve() {
        let ring = CoefRing::default();
        for d in 0..=12 {
            identifier(d, false, &ring).unwrap();
        }
        for d in 0..=9 {
            identifier(d, true, &ring).unwrap();
        }
    }

    #[test]
    fn missing_reference_is_rejected() {
        let ring = CoefRing::default();
        assert!(identify_in_nbo1(&Space::new(SpaceDesc::RP(2)), &ring).is_err());
        let bad = Space::with_reference(SpaceDesc::RP(2), LineClass::named("q"));
        assert!(sw_numbers(&bad).is_err());
    }
}
