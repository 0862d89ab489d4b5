//! Left/right conjugation, the d- and u-operations on diamond labels, and
//! expression trees recording how a derived label was obtained.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::error::LabelError;
use crate::ring::Ring;

/// `(a − b)·a·(a − b)^{-1}`.
pub fn lconj<R: Ring>(a: &R, b: &R) -> Result<R, LabelError> {
    let diff = a.minus(b);
    let inv = diff.try_inverse().ok_or(LabelError::SingularDifference)?;
    Ok(diff.times(a).times(&inv))
}

/// `(a − b)^{-1}·a·(a − b)`.
pub fn rconj<R: Ring>(a: &R, b: &R) -> Result<R, LabelError> {
    let diff = a.minus(b);
    let inv = diff.try_inverse().ok_or(LabelError::SingularDifference)?;
    Ok(inv.times(a).times(&diff))
}

/// Labels `(b1, b2)` of the lower edges of a diamond from the labels
/// `(a1, a2)` of its upper edges, `b_i` continuing `a_i`:
/// `b1 = (a1 − a2)^{-1} a2 (a1 − a2)`, `b2 = (a2 − a1)^{-1} a1 (a2 − a1)`.
pub fn d_op<R: Ring>(a1: &R, a2: &R) -> Result<(R, R), LabelError> {
    Ok((rconj(a2, a1)?, rconj(a1, a2)?))
}

/// Labels `(a1, a2)` of the upper edges of a diamond from the labels
/// `(b1, b2)` of its lower edges:
/// `a1 = (b1 − b2) b2 (b1 − b2)^{-1}`, `a2 = (b2 − b1) b1 (b2 − b1)^{-1}`.
pub fn u_op<R: Ring>(b1: &R, b2: &R) -> Result<(R, R), LabelError> {
    Ok((lconj(b2, b1)?, lconj(b1, b2)?))
}

/// Whether the two paths `a1·b1` and `a2·b2` of a diamond satisfy the sum
/// and product relations.
pub fn diamond_holds<R: Ring>(a1: &R, b1: &R, a2: &R, b2: &R) -> bool {
    a1.plus(b1) == a2.plus(b2) && a1.times(b1) == a2.times(b2)
}

#[derive(Debug, PartialEq)]
pub enum ExprNode {
    Gen(String),
    Neg(ConjExpr),
    Sum(ConjExpr, ConjExpr),
    Difference(ConjExpr, ConjExpr),
    Product(ConjExpr, ConjExpr),
    LeftConj(ConjExpr, ConjExpr),
    RightConj(ConjExpr, ConjExpr),
}

/// A shared expression tree over named generators. Subtrees are reference
/// counted, so derived labels reuse the expressions of their inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjExpr(Rc<ExprNode>);

impl ConjExpr {
    pub fn gen(name: impl Into<String>) -> Self {
        ConjExpr(Rc::new(ExprNode::Gen(name.into())))
    }

    pub fn neg(&self) -> Self {
        ConjExpr(Rc::new(ExprNode::Neg(self.clone())))
    }

    pub fn sum(&self, other: &Self) -> Self {
        ConjExpr(Rc::new(ExprNode::Sum(self.clone(), other.clone())))
    }

    pub fn difference(&self, other: &Self) -> Self {
        ConjExpr(Rc::new(ExprNode::Difference(self.clone(), other.clone())))
    }

    pub fn product(&self, other: &Self) -> Self {
        ConjExpr(Rc::new(ExprNode::Product(self.clone(), other.clone())))
    }

    pub fn lconj(&self, other: &Self) -> Self {
        ConjExpr(Rc::new(ExprNode::LeftConj(self.clone(), other.clone())))
    }

    pub fn rconj(&self, other: &Self) -> Self {
        ConjExpr(Rc::new(ExprNode::RightConj(self.clone(), other.clone())))
    }

    pub fn node(&self) -> &ExprNode {
        &self.0
    }

    pub fn is_generator(&self) -> bool {
        matches!(*self.0, ExprNode::Gen(_))
    }

    /// Nesting depth; generators have depth 0.
    pub fn depth(&self) -> usize {
        match self.node() {
            ExprNode::Gen(_) => 0,
            ExprNode::Neg(a) => 1 + a.depth(),
            ExprNode::Sum(a, b)
            | ExprNode::Difference(a, b)
            | ExprNode::Product(a, b)
            | ExprNode::LeftConj(a, b)
            | ExprNode::RightConj(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Generator names, sorted and deduplicated.
    pub fn generators(&self) -> Vec<String> {
        fn go(e: &ConjExpr, out: &mut Vec<String>) {
            match e.node() {
                ExprNode::Gen(n) => out.push(n.clone()),
                ExprNode::Neg(a) => go(a, out),
                ExprNode::Sum(a, b)
                | ExprNode::Difference(a, b)
                | ExprNode::Product(a, b)
                | ExprNode::LeftConj(a, b)
                | ExprNode::RightConj(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Evaluate under an assignment of generators. Shared subtrees are
    /// evaluated once.
    pub fn eval<R: Ring>(&self, env: &BTreeMap<String, R>) -> Result<R, LabelError> {
        self.eval_memo(env, &mut HashMap::new())
    }

    fn eval_memo<R: Ring>(
        &self,
        env: &BTreeMap<String, R>,
        memo: &mut HashMap<*const ExprNode, R>,
    ) -> Result<R, LabelError> {
        let key = Rc::as_ptr(&self.0);
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let v = match self.node() {
            ExprNode::Gen(n) => env.get(n).cloned().ok_or_else(|| LabelError::UnboundGenerator(n.clone()))?,
            ExprNode::Neg(a) => a.eval_memo(env, memo)?.negated(),
            ExprNode::Sum(a, b) => a.eval_memo(env, memo)?.plus(&b.eval_memo(env, memo)?),
            ExprNode::Difference(a, b) => a.eval_memo(env, memo)?.minus(&b.eval_memo(env, memo)?),
            ExprNode::Product(a, b) => a.eval_memo(env, memo)?.times(&b.eval_memo(env, memo)?),
            ExprNode::LeftConj(a, b) => lconj(&a.eval_memo(env, memo)?, &b.eval_memo(env, memo)?)?,
            ExprNode::RightConj(a, b) => rconj(&a.eval_memo(env, memo)?, &b.eval_memo(env, memo)?)?,
        };
        memo.insert(key, v.clone());
        Ok(v)
    }
}

impl fmt::Display for ConjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            ExprNode::Gen(n) => f.write_str(n),
            ExprNode::Neg(a) => write!(f, "-({a})"),
            ExprNode::Sum(a, b) => write!(f, "({a} + {b})"),
            ExprNode::Difference(a, b) => write!(f, "({a} - {b})"),
            ExprNode::Product(a, b) => write!(f, "({a} * {b})"),
            ExprNode::LeftConj(a, b) => write!(f, "lconj({a}, {b})"),
            ExprNode::RightConj(a, b) => write!(f, "rconj({a}, {b})"),
        }
    }
}

/// [`d_op`] on expressions.
pub fn d_expr(a1: &ConjExpr, a2: &ConjExpr) -> (ConjExpr, ConjExpr) {
    (a2.rconj(a1), a1.rconj(a2))
}

/// [`u_op`] on expressions.
pub fn u_expr(b1: &ConjExpr, b2: &ConjExpr) -> (ConjExpr, ConjExpr) {
    (b2.lconj(b1), b1.lconj(b2))
}
