use super::ast::{Binding, Func, Kind, Node, Script, Span, Type, VectorSym};
use super::error::{DslError, ErrorCode};
use super::lexer::{tokenize, Tok, Token};
use super::prelude;
use crate::param::Param;
use crate::scalar::parse_rational;
use std::collections::HashMap;

const RESERVED: [&str; 7] = ["N", "L", "i", "a", "b", "c", "d"];

/// Parses and type-checks a script against the prelude.
pub fn parse(src: &str) -> Result<Script, DslError> {
    parse_with(src, true)
}

pub(crate) fn parse_with(src: &str, with_prelude: bool) -> Result<Script, DslError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        with_prelude,
        bound: Vec::new(),
    };
    let script = p.script()?;
    check_script(&script, with_prelude)?;
    Ok(script)
}

/// Types of all names visible to `script`'s body.
pub(crate) fn check_script(script: &Script, with_prelude: bool) -> Result<Type, DslError> {
    let mut env: HashMap<String, Type> = HashMap::new();
    if with_prelude {
        for (name, ty) in prelude::TYPES {
            env.insert(name.to_string(), ty);
        }
    }
    for b in &script.bindings {
        let ty = check(&b.value, &env)?;
        env.insert(b.name.clone(), ty);
    }
    check(&script.body, &env)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    with_prelude: bool,
    bound: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, context: &str) -> Result<Token, DslError> {
        if *self.peek() == want {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&format!("{} {context}", want.describe())))
        }
    }

    fn unexpected(&self, wanted: &str) -> DslError {
        DslError::new(
            ErrorCode::Syntax,
            self.span(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    fn script(&mut self) -> Result<Script, DslError> {
        let mut bindings = Vec::new();
        while *self.peek() == Tok::Let {
            self.bump();
            let at = self.span();
            let name = match self.bump().tok {
                Tok::Ident(name) => name,
                other => {
                    return Err(DslError::new(
                        ErrorCode::Syntax,
                        at,
                        format!("expected a name after `let`, found {}", other.describe()),
                    ))
                }
            };
            self.check_fresh(&name, at)?;
            self.expect(Tok::Equals, "after the bound name")?;
            let value = self.expr()?;
            self.expect(Tok::Semi, "to end the binding")?;
            self.bound.push(name.clone());
            bindings.push(Binding { name, value });
        }
        let body = self.expr()?;
        if *self.peek() == Tok::Semi {
            self.bump();
        }
        if *self.peek() != Tok::Eof {
            return Err(self.unexpected("an operator or end of input"));
        }
        Ok(Script { bindings, body })
    }

    fn check_fresh(&self, name: &str, at: Span) -> Result<(), DslError> {
        let taken = RESERVED.contains(&name)
            || Func::from_name(name).is_some()
            || (self.with_prelude && prelude::type_of(name).is_some())
            || self.bound.iter().any(|b| b == name);
        if taken {
            return Err(DslError::new(
                ErrorCode::DuplicateBinding,
                at,
                format!("`{name}` is already defined"),
            ));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Node, DslError> {
        let mut lhs = self.term()?;
        loop {
            let ctor: fn(Box<Node>, Box<Node>) -> Kind = match self.peek() {
                Tok::Plus => Kind::Add,
                Tok::Minus => Kind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Node::new(ctor(Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn term(&mut self) -> Result<Node, DslError> {
        let mut lhs = self.unary()?;
        loop {
            let ctor: fn(Box<Node>, Box<Node>) -> Kind = match self.peek() {
                Tok::Star => Kind::Mul,
                Tok::Slash => Kind::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = Node::new(ctor(Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn unary(&mut self) -> Result<Node, DslError> {
        if *self.peek() == Tok::Minus {
            let start = self.bump().span;
            let inner = self.unary()?;
            let span = start.join(inner.span);
            return Ok(Node::new(Kind::Neg(Box::new(inner)), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, DslError> {
        let base = self.postfix()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.span();
        let exp = match self.bump().tok {
            Tok::Number(text) => text.parse::<u32>().ok(),
            _ => None,
        };
        let Some(exp) = exp else {
            return Err(DslError::new(
                ErrorCode::Syntax,
                at,
                "exponent must be a non-negative integer literal",
            ));
        };
        let span = base.span.join(at);
        Ok(Node::new(Kind::Pow(Box::new(base), exp), span))
    }

    fn postfix(&mut self) -> Result<Node, DslError> {
        let mut node = self.primary()?;
        while let Tok::Component(c) = *self.peek() {
            let end = self.bump().span;
            let span = node.span.join(end);
            node = Node::new(Kind::Component(Box::new(node), c), span);
        }
        Ok(node)
    }

    fn primary(&mut self) -> Result<Node, DslError> {
        let at = self.span();
        match self.peek().clone() {
            Tok::Number(text) => {
                self.bump();
                let value = parse_rational(&text)
                    .ok_or_else(|| DslError::new(ErrorCode::Syntax, at, format!("bad number `{text}`")))?;
                Ok(Node::new(Kind::Number(value), at))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "to close `(`")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    return self.call(&name, at);
                }
                self.resolve(&name, at).map(|kind| Node::new(kind, at))
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    fn call(&mut self, name: &str, at: Span) -> Result<Node, DslError> {
        let Some(func) = Func::from_name(name) else {
            return Err(DslError::new(
                ErrorCode::UnknownIdentifier,
                at,
                format!("unknown function `{name}`; expected cross, dot, comm or adjoint"),
            ));
        };
        self.expect(Tok::LParen, "")?;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            args.push(self.expr()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.expr()?);
            }
        }
        let end = self.expect(Tok::RParen, "to close the argument list")?.span;
        if args.len() != func.arity() {
            return Err(DslError::new(
                ErrorCode::Arity,
                at,
                format!(
                    "`{}` takes {} argument{}, got {}",
                    func.name(),
                    func.arity(),
                    if func.arity() == 1 { "" } else { "s" },
                    args.len()
                ),
            ));
        }
        Ok(Node::new(Kind::Call(func, args), at.join(end)))
    }

    fn resolve(&self, name: &str, at: Span) -> Result<Kind, DslError> {
        if self.bound.iter().any(|b| b == name) {
            return Ok(Kind::Ref(name.to_string()));
        }
        match name {
            "i" => return Ok(Kind::Imag),
            "N" => return Ok(Kind::Vector(VectorSym::N)),
            "L" => return Ok(Kind::Vector(VectorSym::L)),
            _ => {}
        }
        if let Some(p) = Param::from_name(name) {
            return Ok(Kind::Param(p));
        }
        if self.with_prelude && prelude::type_of(name).is_some() {
            return Ok(Kind::Ref(name.to_string()));
        }
        let hint = if name.starts_with(|c: char| c.is_ascii_lowercase()) {
            "; the parameters are a, b, c and d, other names need a `let` binding"
        } else {
            ""
        };
        Err(DslError::new(
            ErrorCode::UnknownIdentifier,
            at,
            format!("unknown identifier `{name}`{hint}"),
        ))
    }
}

fn mismatch(node: &Node, message: String) -> DslError {
    DslError::new(ErrorCode::TypeMismatch, node.span, message)
}

fn expect_type(node: &Node, env: &HashMap<String, Type>, want: Type, what: &str) -> Result<(), DslError> {
    let got = check(node, env)?;
    if got != want {
        return Err(mismatch(node, format!("{what} needs a {} operand, got a {}", want.name(), got.name())));
    }
    Ok(())
}

fn is_numeric_constant(node: &Node) -> bool {
    match &node.kind {
        Kind::Number(_) | Kind::Imag => true,
        Kind::Neg(_) | Kind::Add(..) | Kind::Sub(..) | Kind::Mul(..) | Kind::Div(..) | Kind::Pow(..) => {
            node.children().into_iter().all(is_numeric_constant)
        }
        _ => false,
    }
}

/// Infers the sort of `node`.
pub(crate) fn check(node: &Node, env: &HashMap<String, Type>) -> Result<Type, DslError> {
    use Type::*;
    Ok(match &node.kind {
        Kind::Number(_) | Kind::Imag | Kind::Param(_) => Scalar,
        Kind::Vector(_) => Vector,
        Kind::Ref(name) => *env.get(name).ok_or_else(|| {
            DslError::new(ErrorCode::UnknownIdentifier, node.span, format!("unknown identifier `{name}`"))
        })?,
        Kind::Component(x, c) => {
            expect_type(x, env, Vector, &format!("component `_{}`", c.name()))?;
            Scalar
        }
        Kind::Call(func, args) => {
            let want = match func {
                Func::Cross | Func::Dot => Vector,
                Func::Comm => Scalar,
                Func::Adjoint => return check(&args[0], env),
            };
            for a in args {
                expect_type(a, env, want, &format!("`{}`", func.name()))?;
            }
            if *func == Func::Cross {
                Vector
            } else {
                Scalar
            }
        }
        Kind::Neg(x) => check(x, env)?,
        Kind::Add(l, r) | Kind::Sub(l, r) => {
            let (tl, tr) = (check(l, env)?, check(r, env)?);
            if tl != tr {
                return Err(mismatch(node, format!("cannot add a {} and a {}", tl.name(), tr.name())));
            }
            tl
        }
        Kind::Mul(l, r) => match (check(l, env)?, check(r, env)?) {
            (Vector, Vector) => {
                return Err(mismatch(node, "product of two vectors; use dot or cross".into()));
            }
            (Scalar, Scalar) => Scalar,
            _ => Vector,
        },
        Kind::Div(l, r) => {
            let tl = check(l, env)?;
            expect_type(r, env, Scalar, "division")?;
            if !is_numeric_constant(r) {
                return Err(DslError::new(
                    ErrorCode::NonConstantDivisor,
                    r.span,
                    "divisor must be a numeric constant",
                ));
            }
            tl
        }
        Kind::Pow(x, _) => {
            expect_type(x, env, Scalar, "`^`")?;
            Scalar
        }
    })
}
