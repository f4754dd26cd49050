//! Expressions over `{1, +, ·}` in canonical form.
//!
//! A canonical tree merges nested operators of the same kind (a sum never
//! has a sum child, a product never has a product child), never multiplies
//! by the literal one, and keeps children sorted. Two expressions that
//! differ only by associativity or commutativity have the same canonical
//! tree.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    One,
    Sum(Vec<ExprTree>),
    Prod(Vec<ExprTree>),
}

/// Canonical expression tree with cached value, ones-count and height.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExprTree {
    node: Node,
    value: u64,
    ones: u32,
    height: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    One,
    Sum,
    Prod,
}

impl ExprTree {
    pub fn one() -> Self {
        ExprTree { node: Node::One, value: 1, ones: 1, height: 0 }
    }

    /// Sum of the given trees, flattened and sorted.
    pub fn sum(children: Vec<ExprTree>) -> Result<Self> {
        Self::combine(OpKind::Sum, children)
    }

    /// Product of the given trees, flattened and sorted. Multiplying by the
    /// literal one is rejected.
    pub fn product(children: Vec<ExprTree>) -> Result<Self> {
        Self::combine(OpKind::Prod, children)
    }

    fn combine(kind: OpKind, children: Vec<ExprTree>) -> Result<Self> {
        let mut flat = Vec::with_capacity(children.len());
        for c in children {
            if c.kind() == kind {
                match c.node {
                    Node::Sum(cs) | Node::Prod(cs) => flat.extend(cs),
                    Node::One => unreachable!(),
                }
            } else {
                flat.push(c);
            }
        }
        if flat.len() < 2 {
            return Err(Error::Domain("an operator needs at least two operands".into()));
        }
        if kind == OpKind::Prod && flat.iter().any(|c| c.kind() == OpKind::One) {
            return Err(Error::Domain("multiplication by one".into()));
        }
        flat.sort();
        let mut value: u64 = if kind == OpKind::Sum { 0 } else { 1 };
        let mut ones = 0u32;
        let mut height = 0u32;
        for c in &flat {
            value = match kind {
                OpKind::Sum => value.checked_add(c.value),
                _ => value.checked_mul(c.value),
            }
            .ok_or_else(|| Error::Domain("expression value overflows 64 bits".into()))?;
            ones += c.ones;
            height = height.max(c.height + 1);
        }
        let node = if kind == OpKind::Sum { Node::Sum(flat) } else { Node::Prod(flat) };
        Ok(ExprTree { node, value, ones, height })
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn kind(&self) -> OpKind {
        match self.node {
            Node::One => OpKind::One,
            Node::Sum(_) => OpKind::Sum,
            Node::Prod(_) => OpKind::Prod,
        }
    }

    pub fn children(&self) -> &[ExprTree] {
        match &self.node {
            Node::One => &[],
            Node::Sum(c) | Node::Prod(c) => c,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ones(&self) -> u32 {
        self.ones
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Rebuild bottom-up through the canonicalizing constructors. Identity
    /// on trees produced by this module.
    pub fn canonicalize(&self) -> Result<Self> {
        match &self.node {
            Node::One => Ok(ExprTree::one()),
            Node::Sum(cs) => {
                ExprTree::sum(cs.iter().map(|c| c.canonicalize()).collect::<Result<_>>()?)
            }
            Node::Prod(cs) => {
                ExprTree::product(cs.iter().map(|c| c.canonicalize()).collect::<Result<_>>()?)
            }
        }
    }

    /// Postfix form over the symbols `1`, `+`, `*`, operators applied left to
    /// right across the sorted children.
    pub fn to_postfix(&self) -> String {
        let mut out = String::with_capacity(2 * self.ones as usize);
        self.write_postfix(&mut out);
        out
    }

    fn write_postfix(&self, out: &mut String) {
        let (cs, op) = match &self.node {
            Node::One => {
                out.push('1');
                return;
            }
            Node::Sum(cs) => (cs, '+'),
            Node::Prod(cs) => (cs, '*'),
        };
        cs[0].write_postfix(out);
        for c in &cs[1..] {
            c.write_postfix(out);
            out.push(op);
        }
    }

    /// Parse a postfix program and return its canonical tree.
    pub fn from_postfix(s: &str) -> Result<Self> {
        RawExpr::from_postfix(s)?.canonical().map_err(|e| match e {
            Error::Domain(msg) => Error::Parse { pos: s.len(), msg },
            other => other,
        })
    }

    fn write_infix(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::One => f.write_str("1"),
            Node::Sum(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    c.write_infix(f)?;
                }
                Ok(())
            }
            Node::Prod(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    f.write_str("(")?;
                    c.write_infix(f)?;
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for ExprTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_infix(f)
    }
}

impl Ord for ExprTree {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.value, self.ones, self.height, self.kind())
            .cmp(&(other.value, other.ones, other.height, other.kind()))
            .then_with(|| self.children().cmp(other.children()))
    }
}

impl PartialOrd for ExprTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Uncanonicalized binary expression, as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawExpr {
    One,
    Add(Box<RawExpr>, Box<RawExpr>),
    Mul(Box<RawExpr>, Box<RawExpr>),
}

impl RawExpr {
    pub fn add(a: RawExpr, b: RawExpr) -> Self {
        RawExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: RawExpr, b: RawExpr) -> Self {
        RawExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn eval(&self) -> Option<u64> {
        match self {
            RawExpr::One => Some(1),
            RawExpr::Add(a, b) => a.eval()?.checked_add(b.eval()?),
            RawExpr::Mul(a, b) => a.eval()?.checked_mul(b.eval()?),
        }
    }

    pub fn ones(&self) -> u32 {
        match self {
            RawExpr::One => 1,
            RawExpr::Add(a, b) | RawExpr::Mul(a, b) => a.ones() + b.ones(),
        }
    }

    /// True if some multiplication has the literal one as an operand.
    pub fn multiplies_by_one(&self) -> bool {
        match self {
            RawExpr::One => false,
            RawExpr::Add(a, b) => a.multiplies_by_one() || b.multiplies_by_one(),
            RawExpr::Mul(a, b) => {
                **a == RawExpr::One
                    || **b == RawExpr::One
                    || a.multiplies_by_one()
                    || b.multiplies_by_one()
            }
        }
    }

    pub fn canonical(&self) -> Result<ExprTree> {
        match self {
            RawExpr::One => Ok(ExprTree::one()),
            RawExpr::Add(a, b) => ExprTree::sum(vec![a.canonical()?, b.canonical()?]),
            RawExpr::Mul(a, b) => ExprTree::product(vec![a.canonical()?, b.canonical()?]),
        }
    }

    /// Stack-machine parse of `1`, `+`, `*` (`·` is accepted for `*`;
    /// whitespace is ignored).
    pub fn from_postfix(s: &str) -> Result<Self> {
        let mut stack: Vec<RawExpr> = Vec::new();
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '1' => stack.push(RawExpr::One),
                '+' | '*' | '·' => {
                    let (Some(b), Some(a)) = (stack.pop(), stack.pop()) else {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("operator '{ch}' needs two operands"),
                        });
                    };
                    stack.push(if ch == '+' { RawExpr::add(a, b) } else { RawExpr::mul(a, b) });
                }
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse { pos, msg: format!("unexpected symbol '{c}'") });
                }
            }
        }
        match stack.len() {
            1 => Ok(stack.pop().unwrap()),
            0 => Err(Error::Parse { pos: 0, msg: "empty program".into() }),
            k => Err(Error::Parse { pos: s.len(), msg: format!("{k} values left on the stack") }),
        }
    }
}
