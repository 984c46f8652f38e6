use super::ast::{Kind, Node, Script, VectorSym};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

fn level(kind: &Kind) -> u8 {
    match kind {
        Kind::Add(..) | Kind::Sub(..) => 1,
        Kind::Mul(..) | Kind::Div(..) => 2,
        Kind::Neg(_) => 3,
        Kind::Pow(..) => 4,
        Kind::Component(..) => 5,
        _ => 6,
    }
}

/// Exact decimal text of a non-negative literal. Literals that do not
/// terminate in base 10 never come out of the parser; they print as a
/// parenthesized quotient.
pub fn format_literal(q: &BigRational) -> String {
    let (num, den) = (q.numer().clone(), q.denom().clone());
    if den.is_one() {
        return num.to_string();
    }
    let mut rest = den.clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let mut twos = 0usize;
    let mut fives = 0usize;
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("({num}/{den})");
    }
    let digits = twos.max(fives);
    let scaled = num * num_traits::pow(BigInt::from(10), digits) / den;
    let text = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
    let (int, frac) = text.split_at(text.len() - digits);
    format!("{int}.{frac}")
}

fn write_node(f: &mut fmt::Formatter<'_>, node: &Node, min_level: u8) -> fmt::Result {
    let own = level(&node.kind);
    if own < min_level {
        f.write_str("(")?;
        write_node(f, node, 0)?;
        return f.write_str(")");
    }
    match &node.kind {
        Kind::Number(q) => f.write_str(&format_literal(q)),
        Kind::Imag => f.write_str("i"),
        Kind::Param(p) => f.write_str(p.name()),
        Kind::Vector(VectorSym::N) => f.write_str("N"),
        Kind::Vector(VectorSym::L) => f.write_str("L"),
        Kind::Ref(name) => f.write_str(name),
        Kind::Component(x, c) => {
            write_node(f, x, 5)?;
            write!(f, "_{}", c.name())
        }
        Kind::Call(func, args) => {
            write!(f, "{}(", func.name())?;
            for (k, a) in args.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write_node(f, a, 0)?;
            }
            f.write_str(")")
        }
        Kind::Neg(x) => {
            f.write_str("-")?;
            write_node(f, x, 3)
        }
        Kind::Add(l, r) | Kind::Sub(l, r) => {
            write_node(f, l, 1)?;
            f.write_str(if matches!(node.kind, Kind::Add(..)) { " + " } else { " - " })?;
            write_node(f, r, 2)
        }
        Kind::Mul(l, r) | Kind::Div(l, r) => {
            write_node(f, l, 2)?;
            f.write_str(if matches!(node.kind, Kind::Mul(..)) { "*" } else { "/" })?;
            write_node(f, r, 3)
        }
        Kind::Pow(x, e) => {
            write_node(f, x, 5)?;
            write!(f, "^{e}")
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, self, 0)
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bindings {
            writeln!(f, "let {} = {};", b.name, b.value)?;
        }
        write!(f, "{}", self.body)
    }
}

/// Canonical source text; parses back to an equal script.
pub fn pretty_print(script: &Script) -> String {
    script.to_string()
}
