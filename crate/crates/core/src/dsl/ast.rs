use crate::param::Param;
use num_rational::BigRational;

/// Source region, 1-based line and column of the first character plus the
/// position just past the last one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
    pub end_line: usize,
    pub end_col: usize,
}

impl Span {
    pub fn point(line: usize, col: usize) -> Self {
        Self {
            line,
            col,
            end_line: line,
            end_col: col,
        }
    }

    pub fn to(self, end_line: usize, end_col: usize) -> Self {
        Self {
            end_line,
            end_col,
            ..self
        }
    }

    pub fn join(self, other: Span) -> Self {
        self.to(other.end_line, other.end_col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::X => "x",
            Component::Y => "y",
            Component::Z => "z",
            Component::Plus => "plus",
            Component::Minus => "minus",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "x" => Component::X,
            "y" => Component::Y,
            "z" => Component::Z,
            "plus" => Component::Plus,
            "minus" => Component::Minus,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VectorSym {
    N,
    L,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Cross,
    Dot,
    Comm,
    Adjoint,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Cross => "cross",
            Func::Dot => "dot",
            Func::Comm => "comm",
            Func::Adjoint => "adjoint",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "cross" => Func::Cross,
            "dot" => Func::Dot,
            "comm" => Func::Comm,
            "adjoint" => Func::Adjoint,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Adjoint => 1,
            _ => 2,
        }
    }
}

/// The two sorts of the language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Scalar,
    Vector,
}

impl Type {
    pub fn name(self) -> &'static str {
        match self {
            Type::Scalar => "scalar",
            Type::Vector => "vector",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    /// Non-negative literal; signs are [`Kind::Neg`] nodes.
    Number(BigRational),
    Imag,
    Param(Param),
    Vector(VectorSym),
    /// A let-bound name or a prelude entry.
    Ref(String),
    Component(Box<Node>, Component),
    Call(Func, Vec<Node>),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

/// An AST node. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Node {
    pub kind: Kind,
    pub span: Span,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Node {
    pub fn new(kind: Kind, span: Span) -> Self {
        Self { kind, span }
    }

    /// A node without source position, for programmatic construction.
    pub fn bare(kind: Kind) -> Self {
        Self::new(kind, Span::default())
    }

    pub fn children(&self) -> Vec<&Node> {
        match &self.kind {
            Kind::Number(_) | Kind::Imag | Kind::Param(_) | Kind::Vector(_) | Kind::Ref(_) => vec![],
            Kind::Component(x, _) | Kind::Neg(x) | Kind::Pow(x, _) => vec![x],
            Kind::Call(_, args) => args.iter().collect(),
            Kind::Add(l, r) | Kind::Sub(l, r) | Kind::Mul(l, r) | Kind::Div(l, r) => vec![l, r],
        }
    }

    /// Rebuilds the tree bottom-up, letting `f` replace any node after its
    /// children have been rewritten.
    pub fn rewrite(&self, f: &mut impl FnMut(Node) -> Node) -> Node {
        let b = |n: &Node, f: &mut dyn FnMut(Node) -> Node| Box::new(rewrite_dyn(n, f));
        let kind = match &self.kind {
            Kind::Component(x, c) => Kind::Component(b(x, f), *c),
            Kind::Neg(x) => Kind::Neg(b(x, f)),
            Kind::Pow(x, e) => Kind::Pow(b(x, f), *e),
            Kind::Call(func, args) => Kind::Call(*func, args.iter().map(|a| rewrite_dyn(a, f)).collect()),
            Kind::Add(l, r) => Kind::Add(b(l, f), b(r, f)),
            Kind::Sub(l, r) => Kind::Sub(b(l, f), b(r, f)),
            Kind::Mul(l, r) => Kind::Mul(b(l, f), b(r, f)),
            Kind::Div(l, r) => Kind::Div(b(l, f), b(r, f)),
            leaf => leaf.clone(),
        };
        f(Node::new(kind, self.span))
    }
}

fn rewrite_dyn(n: &Node, f: &mut dyn FnMut(Node) -> Node) -> Node {
    n.rewrite(&mut |x| f(x))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub name: String,
    pub value: Node,
}

/// Ordered let-bindings followed by one final expression.
#[derive(Clone, Debug, PartialEq)]
pub struct Script {
    pub bindings: Vec<Binding>,
    pub body: Node,
}
