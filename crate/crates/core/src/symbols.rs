//! The shared variable table for every polynomial type in the crate.
//!
//! One table holds the Euler class `e`, the coefficient generators `a<d>`,
//! the stable classes `c<j>`, the bundle generators `b<i>` and the formal
//! symbols `X<n>` used when clearing denominators. Sharing one table lets
//! coefficients embed into every other ring without conversion.

use std::sync::{Arc, OnceLock};

use crate::coefficients::is_generator_degree;
use crate::gf2poly::{VarId, VarTable};

/// Largest index available for `a`, `c`, `b` and `X` symbols.
pub const MAX_INDEX: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    E,
    A(u32),
    C(u32),
    B(u32),
    X(u32),
}

struct Symbols {
    table: Arc<VarTable>,
    a: Vec<Option<VarId>>,
    c: Vec<VarId>,
    b: Vec<VarId>,
    x: Vec<VarId>,
    kinds: Vec<Sym>,
}

fn symbols() -> &'static Symbols {
    static SYMBOLS: OnceLock<Symbols> = OnceLock::new();
    SYMBOLS.get_or_init(|| {
        let mut table = VarTable::new("e", -1).expect("fresh table");
        let mut kinds = vec![Sym::E];
        let mut a = vec![None; MAX_INDEX as usize + 1];
        for d in 2..=MAX_INDEX {
            if is_generator_degree(d) {
                a[d as usize] = Some(table.push(format!("a{d}"), d as i32).unwrap());
                kinds.push(Sym::A(d));
            }
        }
        let mut indexed = |prefix: &str, from: u32, kind: fn(u32) -> Sym| {
            let mut ids = vec![VarId::MAX; from as usize];
            for j in from..=MAX_INDEX {
                ids.push(table.push(format!("{prefix}{j}"), j as i32).unwrap());
                kinds.push(kind(j));
            }
            ids
        };
        let c = indexed("c", 1, Sym::C);
        let b = indexed("b", 1, Sym::B);
        let x = indexed("X", 2, Sym::X);
        Symbols {
            table: Arc::new(table),
            a,
            c,
            b,
            x,
            kinds,
        }
    })
}

pub fn table() -> &'static Arc<VarTable> {
    &symbols().table
}

pub fn e() -> VarId {
    table().invertible()
}

fn checked(kind: &str, index: u32, id: Option<VarId>) -> VarId {
    match id {
        Some(id) if id != VarId::MAX => id,
        _ => panic!("contract violation: no symbol {kind}{index}"),
    }
}

/// Coefficient generator `a<d>`; panics on a degree without a generator.
pub fn a(d: u32) -> VarId {
    checked("a", d, symbols().a.get(d as usize).copied().flatten())
}

pub fn try_a(d: u32) -> Option<VarId> {
    symbols().a.get(d as usize).copied().flatten()
}

pub fn c(j: u32) -> VarId {
    checked("c", j, symbols().c.get(j as usize).copied())
}

pub fn b(i: u32) -> VarId {
    checked("b", i, symbols().b.get(i as usize).copied())
}

pub fn x(n: u32) -> VarId {
    checked("X", n, symbols().x.get(n as usize).copied())
}

pub fn kind(id: VarId) -> Sym {
    symbols().kinds[id as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        let t = table();
        assert_eq!(t.name(a(2)), "a2");
        assert_eq!(t.name(c(3)), "c3");
        assert_eq!(t.name(b(1)), "b1");
        assert_eq!(t.name(x(2)), "X2");
        assert_eq!(kind(t.lookup("a5").unwrap()), Sym::A(5));
        assert!(try_a(3).is_none());
        assert_eq!(t.degree(e()), -1);
    }
}
