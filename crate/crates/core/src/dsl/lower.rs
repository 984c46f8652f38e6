use super::ast::{Func, Kind, Node, Script, VectorSym};
use super::ast::Component;
use super::error::{DslError, ErrorCode};
use super::prelude;
use crate::opalg::{i_op, Monomial, OperatorExpr, VectorOp};
use crate::param::ExactParams;
use crate::scalar::{from_rational, GaussRational};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// A lowered value of either sort.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(OperatorExpr),
    Vector(VectorOp),
}

impl Value {
    pub fn into_scalar(self) -> Option<OperatorExpr> {
        match self {
            Value::Scalar(e) => Some(e),
            Value::Vector(_) => None,
        }
    }

    pub fn into_vector(self) -> Option<VectorOp> {
        match self {
            Value::Vector(v) => Some(v),
            Value::Scalar(_) => None,
        }
    }
}

fn as_constant(e: &OperatorExpr) -> Option<GaussRational> {
    if e.is_zero() {
        return Some(GaussRational::zero());
    }
    let mut terms = e.terms();
    let (m, c) = terms.next()?;
    if terms.next().is_some() || *m != Monomial::ONE {
        return None;
    }
    c.as_constant()
}

fn component(v: &VectorOp, c: Component) -> OperatorExpr {
    match c {
        Component::X => v.x().clone(),
        Component::Y => v.y().clone(),
        Component::Z => v.z().clone(),
        Component::Plus => v.plus(),
        Component::Minus => v.minus(),
    }
}

fn internal(node: &Node, what: &str) -> DslError {
    DslError::new(ErrorCode::TypeMismatch, node.span, format!("{what} has the wrong sort"))
}

fn lower_node(node: &Node, env: &HashMap<String, Value>) -> Result<Value, DslError> {
    use Value::{Scalar as S, Vector as V};
    let go = |n: &Node| lower_node(n, env);
    Ok(match &node.kind {
        Kind::Number(q) => S(OperatorExpr::scalar(from_rational(q.clone()))),
        Kind::Imag => S(i_op()),
        Kind::Param(p) => S(OperatorExpr::param(*p)),
        Kind::Vector(VectorSym::N) => V(VectorOp::n()),
        Kind::Vector(VectorSym::L) => V(VectorOp::l()),
        Kind::Ref(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| DslError::new(ErrorCode::UnknownIdentifier, node.span, format!("unknown identifier `{name}`")))?,
        Kind::Component(x, c) => match go(x)? {
            V(v) => S(component(&v, *c)),
            S(_) => return Err(internal(x, "component base")),
        },
        Kind::Call(func, args) => {
            let vals = args.iter().map(go).collect::<Result<Vec<_>, _>>()?;
            match (func, vals.as_slice()) {
                (Func::Cross, [V(a), V(b)]) => V(a.cross(b)),
                (Func::Dot, [V(a), V(b)]) => S(a.dot(b)),
                (Func::Comm, [S(a), S(b)]) => S(a.commutator(b)),
                (Func::Adjoint, [S(a)]) => S(a.adjoint()),
                (Func::Adjoint, [V(a)]) => V(a.adjoint()),
                _ => return Err(internal(node, func.name())),
            }
        }
        Kind::Neg(x) => match go(x)? {
            S(e) => S(-e),
            V(v) => V(v.neg()),
        },
        Kind::Add(l, r) | Kind::Sub(l, r) => {
            let plus = matches!(node.kind, Kind::Add(..));
            match (go(l)?, go(r)?) {
                (S(a), S(b)) => S(if plus { a + b } else { a - b }),
                (V(a), V(b)) => V(if plus { a.add(&b) } else { a.sub(&b) }),
                _ => return Err(internal(node, "sum")),
            }
        }
        Kind::Mul(l, r) => match (go(l)?, go(r)?) {
            (S(a), S(b)) => S(&a * &b),
            (S(s), V(v)) => V(v.left_mul(&s)),
            (V(v), S(s)) => V(v.right_mul(&s)),
            (V(_), V(_)) => return Err(internal(node, "product")),
        },
        Kind::Div(l, r) => {
            let divisor = go(r)?.into_scalar().and_then(|e| as_constant(&e));
            let Some(divisor) = divisor.filter(|d| !d.is_zero()) else {
                return Err(DslError::new(
                    ErrorCode::NonConstantDivisor,
                    r.span,
                    "divisor must be a nonzero numeric constant",
                ));
            };
            let inv = GaussRational::one() / divisor;
            match go(l)? {
                S(e) => S(e.scale_gauss(&inv)),
                V(v) => V(v.map(|e| e.scale_gauss(&inv))),
            }
        }
        Kind::Pow(x, e) => match go(x)? {
            S(base) => S((0..*e).fold(OperatorExpr::one(), |acc, _| &acc * &base)),
            V(_) => return Err(internal(x, "power base")),
        },
    })
}

/// Lowers the bindings of `script` on top of `env`; returns the final
/// environment and the body's value.
pub(crate) fn lower_script_env(
    script: &Script,
    mut env: HashMap<String, Value>,
) -> Result<(HashMap<String, Value>, Value), DslError> {
    for b in &script.bindings {
        let v = lower_node(&b.value, &env)?;
        env.insert(b.name.clone(), v);
    }
    let body = lower_node(&script.body, &env)?;
    Ok((env, body))
}

impl Script {
    /// Value of the final expression, of either sort.
    pub fn lower_value(&self) -> Result<Value, DslError> {
        lower_script_env(self, prelude::values().clone()).map(|(_, v)| v)
    }

    /// Normal form of the final expression, which must be scalar.
    pub fn lower(&self) -> Result<OperatorExpr, DslError> {
        self.lower_value()?.into_scalar().ok_or_else(|| {
            DslError::new(
                ErrorCode::TypeMismatch,
                self.body.span,
                "expected a scalar expression, got a vector; take a component or a dot product",
            )
        })
    }

    /// Replaces parameters by literal values in the syntax tree. Prelude
    /// references are inlined first so that their parameters are reached.
    pub fn substitute(&self, values: &ExactParams) -> Script {
        let bound: Vec<&str> = self.bindings.iter().map(|b| b.name.as_str()).collect();
        let mut edit = |n: Node| -> Node {
            match &n.kind {
                Kind::Ref(name) if !bound.contains(&name.as_str()) => match prelude::definition(name) {
                    Some(def) => substitute_node(&inline_prelude(def), values),
                    None => n,
                },
                Kind::Param(p) => match values.get(p) {
                    Some(v) => gauss_literal(v),
                    None => n,
                },
                _ => n,
            }
        };
        Script {
            bindings: self
                .bindings
                .iter()
                .map(|b| super::ast::Binding {
                    name: b.name.clone(),
                    value: b.value.rewrite(&mut edit),
                })
                .collect(),
            body: self.body.rewrite(&mut edit),
        }
    }
}

fn inline_prelude(node: &Node) -> Node {
    node.rewrite(&mut |n: Node| match &n.kind {
        Kind::Ref(name) => prelude::definition(name).map(inline_prelude).unwrap_or(n),
        _ => n,
    })
}

fn substitute_node(node: &Node, values: &ExactParams) -> Node {
    node.rewrite(&mut |n: Node| match &n.kind {
        Kind::Param(p) => values.get(p).map(gauss_literal).unwrap_or(n),
        _ => n,
    })
}

fn real_literal(q: &BigRational) -> Node {
    let mag = q.abs();
    let core = if mag.is_integer() {
        Node::bare(Kind::Number(mag))
    } else {
        Node::bare(Kind::Div(
            Box::new(Node::bare(Kind::Number(BigRational::from_integer(mag.numer().clone())))),
            Box::new(Node::bare(Kind::Number(BigRational::from_integer(mag.denom().clone())))),
        ))
    };
    if q.is_negative() {
        Node::bare(Kind::Neg(Box::new(core)))
    } else {
        core
    }
}

/// Syntax tree for an exact Gaussian rational.
pub fn gauss_literal(v: &GaussRational) -> Node {
    let re = real_literal(&v.re);
    if v.im.is_zero() {
        return re;
    }
    let im = Node::bare(Kind::Mul(Box::new(real_literal(&v.im)), Box::new(Node::bare(Kind::Imag))));
    if v.re.is_zero() {
        im
    } else {
        Node::bare(Kind::Add(Box::new(re), Box::new(im)))
    }
}
