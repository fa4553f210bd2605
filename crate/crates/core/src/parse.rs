//! Expression grammar shared by every input language.
//!
//! ```text
//! sum     := product ('+' product)*
//! product := power ('*' power)*
//! power   := atom ('^' '-'? INT)?
//! atom    := INT | IDENT ('(' args ')')? | '(' sum ')'
//! args    := group (';' group)*      group := sum (',' sum)*
//! ```
//!
//! The tree is then evaluated in one of several contexts: presentations,
//! Laurent elements, coefficients, bundle-algebra elements, manifold
//! expressions, or catalog spaces.

use crate::charnum::{LineClass, SpaceDesc};
use crate::coefficients::CoefElem;
use crate::conner_floyd::{BundleAlgElem, ManifoldExpr};
use crate::error::{ParseError, Result};
use crate::localized::LaurentElem;
use crate::presentation::{iota, Engine, Presentation};
use crate::symbols::{self, MAX_INDEX};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Star,
    Caret,
    Minus,
    LParen,
    RParen,
    Comma,
    Semi,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Minus => "`-`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        let tok = match ch {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'-' => Tok::Minus,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse().map_err(|_| {
                    ParseError::new(start, &["integer"], "integer literal too large")
                })?;
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let c = text[start..].chars().next().unwrap();
                return Err(ParseError::new(
                    start,
                    &[],
                    format!("unexpected character `{c}`"),
                ));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Syntax tree node with its byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub pos: usize,
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Int(u64),
    Ident(String),
    Call {
        name: String,
        groups: Vec<Vec<Node>>,
    },
    Sum(Vec<Node>),
    Product(Vec<Node>),
    Pow(Box<Node>, i64),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::new(
            self.pos(),
            expected,
            format!("unexpected {}", self.peek().describe()),
        ))
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[name])
        }
    }

    fn sum(&mut self) -> Result<Node, ParseError> {
        let pos = self.pos();
        let mut terms = vec![self.product()?];
        while *self.peek() == Tok::Plus {
            self.bump();
            terms.push(self.product()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Node {
                pos,
                kind: NodeKind::Sum(terms),
            }
        })
    }

    fn product(&mut self) -> Result<Node, ParseError> {
        let pos = self.pos();
        let mut factors = vec![self.power()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Node {
                pos,
                kind: NodeKind::Product(factors),
            }
        })
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            (Tok::Int(n), _) if n <= i32::MAX as u64 => {
                let exp = if negative { -(n as i64) } else { n as i64 };
                Ok(Node {
                    pos: base.pos,
                    kind: NodeKind::Pow(Box::new(base), exp),
                })
            }
            (tok, pos) => Err(ParseError::new(
                pos,
                &["integer exponent"],
                format!("unexpected {}", tok.describe()),
            )),
        }
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Node {
                    pos,
                    kind: NodeKind::Int(n),
                })
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Node {
                        pos,
                        kind: NodeKind::Ident(name),
                    });
                }
                self.bump();
                let mut groups = vec![Vec::new()];
                if *self.peek() != Tok::RParen {
                    loop {
                        groups.last_mut().unwrap().push(self.sum()?);
                        match self.peek() {
                            Tok::Comma => {
                                self.bump();
                            }
                            Tok::Semi => {
                                self.bump();
                                groups.push(Vec::new());
                            }
                            _ => break,
                        }
                    }
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Node {
                    pos,
                    kind: NodeKind::Call { name, groups },
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.fail(&["integer", "identifier", "`(`"]),
        }
    }
}

/// Parse text into a syntax tree.
pub fn parse_tree(text: &str) -> Result<Node, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0 };
    if *p.peek() == Tok::End {
        return Err(ParseError::new(0, &["expression"], "empty input"));
    }
    let node = p.sum()?;
    if *p.peek() != Tok::End {
        return p.fail(&["`+`", "`*`", "end of input"]);
    }
    Ok(node)
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(ParseError::new(pos, &[], msg).into())
}

/// Split an identifier like `a12` into its prefix and index.
fn indexed<'a>(name: &'a str, prefix: &str) -> Option<&'a str> {
    let rest = name.strip_prefix(prefix)?;
    (!rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())).then_some(rest)
}

fn index_value(node: &Node, digits: &str, min: u32) -> Result<u32> {
    match digits.parse::<u32>() {
        Ok(v) if v >= min && v <= MAX_INDEX => Ok(v),
        _ => err(node.pos, format!("index must lie in {min}..={MAX_INDEX}")),
    }
}

fn int_arg(node: &Node) -> Result<u32> {
    match node.kind {
        NodeKind::Int(n) if n <= MAX_INDEX as u64 => Ok(n as u32),
        NodeKind::Int(_) => err(node.pos, format!("integer argument exceeds {MAX_INDEX}")),
        _ => Err(ParseError::new(node.pos, &["integer"], "expected an integer argument").into()),
    }
}

fn call_args<'a>(
    node: &Node,
    name: &str,
    groups: &'a [Vec<Node>],
    count: usize,
) -> Result<&'a [Node]> {
    if groups.len() != 1 || groups[0].len() != count {
        return err(node.pos, format!("{name} takes {count} argument(s)"));
    }
    Ok(&groups[0])
}

fn coef_generator(node: &Node, name: &str) -> Result<Option<CoefElem>> {
    let Some(digits) = indexed(name, "a") else {
        return Ok(None);
    };
    let d = index_value(node, digits, 0)?;
    match symbols::try_a(d) {
        Some(_) => Ok(Some(CoefElem::generator(d))),
        None => err(node.pos, format!("N_* has no generator in degree {d}")),
    }
}

/// Evaluate a tree of sums, products and powers of atoms over a ring.
trait RingContext {
    type Value: Clone;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn atom(&self, node: &Node) -> Result<Self::Value>;
    fn negative_power(&self, node: &Node, _base: &Self::Value, _exp: i64) -> Result<Self::Value> {
        err(
            node.pos,
            "negative exponents are only allowed on e in Laurent expressions",
        )
    }

    fn eval(&self, node: &Node) -> Result<Self::Value> {
        match &node.kind {
            NodeKind::Int(n) => Ok(if n % 2 == 1 { self.one() } else { self.zero() }),
            NodeKind::Sum(terms) => {
                let mut acc = self.zero();
                for t in terms {
                    acc = self.add(&acc, &self.eval(t)?);
                }
                Ok(acc)
            }
            NodeKind::Product(factors) => {
                let mut acc = self.one();
                for f in factors {
                    acc = self.mul(&acc, &self.eval(f)?)?;
                }
                Ok(acc)
            }
            NodeKind::Pow(base, exp) => {
                let b = self.eval(base)?;
                if *exp < 0 {
                    return self.negative_power(node, &b, *exp);
                }
                let mut acc = self.one();
                for _ in 0..*exp {
                    acc = self.mul(&acc, &b)?;
                }
                Ok(acc)
            }
            NodeKind::Ident(_) | NodeKind::Call { .. } => self.atom(node),
        }
    }
}

struct CoefContext;

impl RingContext for CoefContext {
    type Value = CoefElem;
    fn zero(&self) -> CoefElem {
        CoefElem::zero()
    }
    fn one(&self) -> CoefElem {
        CoefElem::one()
    }
    fn add(&self, a: &CoefElem, b: &CoefElem) -> CoefElem {
        a + b
    }
    fn mul(&self, a: &CoefElem, b: &CoefElem) -> Result<CoefElem> {
        Ok(a * b)
    }
    fn atom(&self, node: &Node) -> Result<CoefElem> {
        if let NodeKind::Ident(name) = &node.kind {
            if let Some(c) = coef_generator(node, name)? {
                return Ok(c);
            }
        }
        Err(ParseError::new(node.pos, &["a<d>"], "expected a coefficient generator").into())
    }
}

struct PresentationContext<'a> {
    engine: &'a Engine,
}

impl RingContext for PresentationContext<'_> {
    type Value = Presentation;
    fn zero(&self) -> Presentation {
        Presentation::zero()
    }
    fn one(&self) -> Presentation {
        Presentation::one()
    }
    fn add(&self, a: &Presentation, b: &Presentation) -> Presentation {
        a.add(b)
    }
    fn mul(&self, a: &Presentation, b: &Presentation) -> Result<Presentation> {
        Ok(a.mul(b))
    }
    fn atom(&self, node: &Node) -> Result<Presentation> {
        match &node.kind {
            NodeKind::Ident(name) => {
                if name == "e" {
                    return Ok(Presentation::e_pow(1));
                }
                if let Some(c) = coef_generator(node, name)? {
                    return Ok(iota(&c));
                }
                if let Some(digits) = indexed(name, "X") {
                    return Presentation::x(index_value(node, digits, 1)?);
                }
                Err(ParseError::new(
                    node.pos,
                    &["a<d>", "X<n>", "G(i,n)", "e", "Gamma(...)", "iota(...)"],
                    format!("unknown symbol `{name}`"),
                )
                .into())
            }
            NodeKind::Call { name, groups } => match name.as_str() {
                "G" => {
                    let args = call_args(node, "G", groups, 2)?;
                    let (i, n) = (int_arg(&args[0])?, int_arg(&args[1])?);
                    if n == 0 {
                        return err(args[1].pos, "G(i,n) needs n ≥ 1");
                    }
                    Presentation::g(i, n)
                }
                "Gamma" => {
                    let args = call_args(node, "Gamma", groups, 1)?;
                    self.engine.gamma(&self.eval(&args[0])?)
                }
                "iota" => {
                    let args = call_args(node, "iota", groups, 1)?;
                    Ok(iota(&CoefContext.eval(&args[0])?))
                }
                _ => err(node.pos, format!("unknown function `{name}`")),
            },
            _ => unreachable!(),
        }
    }
}

struct LaurentContext;

impl RingContext for LaurentContext {
    type Value = LaurentElem;
    fn zero(&self) -> LaurentElem {
        LaurentElem::zero()
    }
    fn one(&self) -> LaurentElem {
        LaurentElem::one()
    }
    fn add(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        a + b
    }
    fn mul(&self, a: &LaurentElem, b: &LaurentElem) -> Result<LaurentElem> {
        Ok(a * b)
    }
    fn atom(&self, node: &Node) -> Result<LaurentElem> {
        if let NodeKind::Ident(name) = &node.kind {
            if name == "e" {
                return Ok(LaurentElem::e_power(1));
            }
            if let Some(c) = coef_generator(node, name)? {
                return Ok(c.into());
            }
            if let Some(digits) = indexed(name, "c") {
                let j = index_value(node, digits, 0)?;
                return Ok(crate::localized::c_class(j));
            }
        }
        Err(ParseError::new(
            node.pos,
            &["a<d>", "c<j>", "e"],
            "expected a Laurent generator",
        )
        .into())
    }
    fn negative_power(&self, node: &Node, base: &LaurentElem, exp: i64) -> Result<LaurentElem> {
        let mut terms = base.terms();
        match (terms.next(), terms.next()) {
            (Some(m), None) if m.factors().is_empty() => {
                Ok(LaurentElem::e_power(m.inv_exponent() * exp as i32))
            }
            _ => err(node.pos, "only powers of e may be inverted"),
        }
    }
}

struct BundleContext;

impl RingContext for BundleContext {
    type Value = BundleAlgElem;
    fn zero(&self) -> BundleAlgElem {
        BundleAlgElem::zero()
    }
    fn one(&self) -> BundleAlgElem {
        BundleAlgElem::one()
    }
    fn add(&self, a: &BundleAlgElem, b: &BundleAlgElem) -> BundleAlgElem {
        a + b
    }
    fn mul(&self, a: &BundleAlgElem, b: &BundleAlgElem) -> Result<BundleAlgElem> {
        Ok(a * b)
    }
    fn atom(&self, node: &Node) -> Result<BundleAlgElem> {
        if let NodeKind::Ident(name) = &node.kind {
            if let Some(c) = coef_generator(node, name)? {
                return Ok(BundleAlgElem::from_coef(&c));
            }
            if let Some(digits) = indexed(name, "b") {
                return Ok(BundleAlgElem::beta(index_value(node, digits, 1)?));
            }
        }
        Err(ParseError::new(node.pos, &["a<d>", "b<i>"], "expected a bundle generator").into())
    }
}

pub fn parse_presentation(text: &str, engine: &Engine) -> Result<Presentation> {
    PresentationContext { engine }.eval(&parse_tree(text)?)
}

pub fn parse_laurent(text: &str) -> Result<LaurentElem> {
    LaurentContext.eval(&parse_tree(text)?)
}

pub fn parse_coef(text: &str) -> Result<CoefElem> {
    CoefContext.eval(&parse_tree(text)?)
}

pub fn parse_bundle(text: &str) -> Result<BundleAlgElem> {
    BundleContext.eval(&parse_tree(text)?)
}

fn manifold(node: &Node) -> Result<ManifoldExpr> {
    match &node.kind {
        NodeKind::Int(1) => Ok(ManifoldExpr::Trivial(CoefElem::one())),
        NodeKind::Product(fs) => Ok(ManifoldExpr::Product(
            fs.iter().map(manifold).collect::<Result<_>>()?,
        )),
        NodeKind::Pow(base, k) if *k >= 1 => {
            let m = manifold(base)?;
            Ok(ManifoldExpr::Product(vec![m; *k as usize]))
        }
        NodeKind::Call { name, groups } => match name.as_str() {
            "P" => {
                let n = int_arg(&call_args(node, "P", groups, 1)?[0])?;
                if n == 0 {
                    return err(node.pos, "P(n) needs n ≥ 1");
                }
                Ok(ManifoldExpr::Proj(n))
            }
            "gamma" => Ok(ManifoldExpr::gamma_of(manifold(
                &call_args(node, "gamma", groups, 1)?[0],
            )?)),
            "triv" => Ok(ManifoldExpr::Trivial(
                CoefContext.eval(&call_args(node, "triv", groups, 1)?[0])?,
            )),
            "S" => Ok(ManifoldExpr::AntipodalSphere(int_arg(
                &call_args(node, "S", groups, 1)?[0],
            )?)),
            _ => err(node.pos, format!("unknown manifold constructor `{name}`")),
        },
        NodeKind::Sum(_) => err(node.pos, "sums are not catalog manifolds"),
        _ => Err(ParseError::new(
            node.pos,
            &["P(n)", "gamma(...)", "triv(...)", "S(j)"],
            "expected a manifold expression",
        )
        .into()),
    }
}

pub fn parse_manifold(text: &str) -> Result<ManifoldExpr> {
    manifold(&parse_tree(text)?)
}

fn line_class(node: &Node) -> Result<LineClass> {
    match &node.kind {
        NodeKind::Int(0) => Ok(LineClass::zero()),
        NodeKind::Ident(name) => Ok(LineClass::named(name.clone())),
        NodeKind::Sum(terms) => {
            let mut names = Vec::new();
            for t in terms {
                names.extend(line_class(t)?.0);
            }
            Ok(LineClass(names))
        }
        _ => {
            Err(ParseError::new(node.pos, &["generator name", "0"], "expected a line class").into())
        }
    }
}

pub fn parse_line_class(text: &str) -> Result<LineClass> {
    line_class(&parse_tree(text)?)
}

fn space(node: &Node) -> Result<SpaceDesc> {
    match &node.kind {
        NodeKind::Product(fs) => Ok(SpaceDesc::Product(
            fs.iter().map(space).collect::<Result<_>>()?,
        )),
        NodeKind::Pow(base, k) if *k >= 1 => {
            Ok(SpaceDesc::Product(vec![space(base)?; *k as usize]))
        }
        NodeKind::Call { name, groups } => match name.as_str() {
            "RP" => Ok(SpaceDesc::RP(int_arg(
                &call_args(node, "RP", groups, 1)?[0],
            )?)),
            "Dold" => {
                let args = call_args(node, "Dold", groups, 2)?;
                Ok(SpaceDesc::Dold(int_arg(&args[0])?, int_arg(&args[1])?))
            }
            "PB" => {
                if groups.len() != 2 || groups[0].len() != 1 {
                    return err(
                        node.pos,
                        "PB takes a base and a list of lines: PB(base; l1, l2)",
                    );
                }
                Ok(SpaceDesc::ProjBundle {
                    base: Box::new(space(&groups[0][0])?),
                    lines: groups[1].iter().map(line_class).collect::<Result<_>>()?,
                })
            }
            _ => err(node.pos, format!("unknown space `{name}`")),
        },
        _ => Err(ParseError::new(
            node.pos,
            &["RP(n)", "Dold(m,n)", "PB(base; lines)"],
            "expected a space",
        )
        .into()),
    }
}

pub fn parse_space(text: &str) -> Result<SpaceDesc> {
    space(&parse_tree(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn pos(e: Error) -> usize {
        match e {
            Error::Parse(p) => p.position,
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn presentation_grammar_examples() {
        let en = Engine::default();
        let p = parse_presentation("Gamma(X2)*X2 + a2*Gamma(X2)", &en).unwrap();
        let g12 = Presentation::g(1, 2).unwrap();
        let x2 = Presentation::x(2).unwrap();
        let a2 = iota(&CoefElem::generator(2));
        assert_eq!(p, g12.mul(&x2).add(&a2.mul(&g12)));
        assert!(parse_presentation("e^-1", &en).is_err());
        assert_eq!(pos(parse_presentation("", &en).unwrap_err()), 0);
    }

    #[test]
    fn error_positions() {
        let en = Engine::default();
        assert_eq!(pos(parse_presentation("X2 + + X3", &en).unwrap_err()), 5);
        assert_eq!(pos(parse_presentation("G(1,2", &en).unwrap_err()), 5);
        assert_eq!(pos(parse_presentation("a3", &en).unwrap_err()), 0);
        assert_eq!(pos(parse_presentation("X2 $", &en).unwrap_err()), 3);
    }

    #[test]
    fn laurent_and_bundle_contexts() {
        let l = parse_laurent("c1*e^-1 + e^-2").unwrap();
        assert_eq!(l, crate::localized::loc_p(2));
        assert!(parse_laurent("c1^-1").is_err());
        assert_eq!(parse_bundle("b2 + b1^2").unwrap().to_string(), "b1^2 + b2");
    }

    #[test]
    fn manifold_and_space_contexts() {
        assert_eq!(
            parse_manifold("gamma(P(2))*triv(a2)").unwrap().to_string(),
            "gamma(P(2))*triv(a2)"
        );
        assert!(parse_manifold("P(2) + P(3)").is_err());
        let pb = parse_space("PB(RP(1); u, 0)").unwrap();
        assert_eq!(pb.to_string(), "PB(RP(1); u, 0)");
        assert_eq!(pb.dim(), 2);
        assert_eq!(parse_space("RP(1)*RP(2)").unwrap().dim(), 3);
    }
}
