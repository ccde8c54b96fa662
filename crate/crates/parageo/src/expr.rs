//! Expression language over para-holomorphic variables `z1..zn` and their
//! conjugates `zb1..zbn`, with para-complex constants.
//!
//! Differentiation treats `z^a` and `zb^a` as independent variables; only at
//! evaluation time is `zb^a` bound to `conj(z^a)`. Simplification is limited
//! to constant folding and 0/1 identities, so equality of expressions is
//! decided by evaluation at sample points, not symbolically.
//!
//! Grammar (ASCII):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' integer)?
//! base   := number | 'e' | 'z'int | 'zb'int | '(' expr ')' | 'exp' '(' expr ')' | '-' base
//! ```
//!
//! Numbers are decimal literals and denote real constants; write `a+e*b` for
//! a general constant.

use std::fmt;
use std::sync::Arc;

use crate::paracomplex::ParaComplex;
use crate::{Error, Result};

/// A point of evaluation: values for `z^1..z^n`. Barred coordinates are never
/// independently assignable; `zb^a` always evaluates to `conj(z^a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalPoint {
    coords: Vec<ParaComplex>,
}

impl EvalPoint {
    pub fn new(coords: Vec<ParaComplex>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, index: usize) -> ParaComplex {
        self.coords[index]
    }

    pub fn coords(&self) -> &[ParaComplex] {
        &self.coords
    }

    fn var_value(&self, index: usize, barred: bool) -> ParaComplex {
        let z = self.coords[index];
        if barred {
            z.conj()
        } else {
            z
        }
    }

    /// The point as real coordinates `(x^1..x^n, y^1..y^n)`.
    pub fn real_coords(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.coords.iter().map(|z| z.re).collect();
        v.extend(self.coords.iter().map(|z| z.im));
        v
    }

    /// Inverse of [`real_coords`](Self::real_coords).
    pub fn from_real_coords(xy: &[f64]) -> Self {
        assert!(xy.len().is_multiple_of(2));
        let n = xy.len() / 2;
        Self::new((0..n).map(|a| ParaComplex::new(xy[a], xy[n + a])).collect())
    }
}

/// Value cache for batch evaluation of expressions sharing subtrees at one
/// point. Keys are node identities, so the expressions must stay alive and
/// the point fixed for the cache's lifetime.
#[derive(Default)]
pub struct EvalCache {
    map: std::collections::HashMap<usize, ParaComplex>,
}

impl EvalCache {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Derivative memo for one fixed direction, shared across a batch of
/// expressions; see [`Expr::diff_with`].
pub struct DiffMemo {
    index: usize,
    barred: bool,
    map: std::collections::HashMap<usize, Expr>,
}

impl DiffMemo {
    pub fn new(index: usize, barred: bool) -> Self {
        Self {
            index,
            barred,
            map: std::collections::HashMap::new(),
        }
    }
}

#[derive(Debug, PartialEq)]
enum Node {
    Const(ParaComplex),
    Var { index: usize, barred: bool },
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Pow(Expr, i32),
    Exp(Expr),
    Neg(Expr),
}

/// An immutable expression tree; cheap to clone and safe to share across
/// threads.
#[derive(Clone, Debug)]
pub struct Expr(Arc<Node>);

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Expr {
    fn wrap(node: Node) -> Self {
        Expr(Arc::new(node))
    }

    pub fn constant(c: ParaComplex) -> Self {
        Self::wrap(Node::Const(c))
    }

    pub fn real(x: f64) -> Self {
        Self::constant(ParaComplex::real(x))
    }

    pub fn zero() -> Self {
        Self::real(0.0)
    }

    pub fn one() -> Self {
        Self::real(1.0)
    }

    /// The unit imaginary `e`.
    pub fn unit_e() -> Self {
        Self::constant(ParaComplex::E)
    }

    /// Variable `z^(index+1)` (0-based index).
    pub fn var(index: usize) -> Self {
        Self::wrap(Node::Var {
            index,
            barred: false,
        })
    }

    /// Variable `zb^(index+1)` (0-based index).
    pub fn var_barred(index: usize) -> Self {
        Self::wrap(Node::Var { index, barred: true })
    }

    fn as_const(&self) -> Option<ParaComplex> {
        match &*self.0 {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero_const(&self) -> bool {
        self.as_const() == Some(ParaComplex::ZERO)
    }

    fn is_one_const(&self) -> bool {
        self.as_const() == Some(ParaComplex::ONE)
    }

    // Constant folding keeps values inside the language: non-finite results
    // stay symbolic and only appear at evaluation time.
    fn fold(c: ParaComplex) -> Option<Expr> {
        (c.re.is_finite() && c.im.is_finite()).then(|| Expr::constant(c))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Expr {
        if a.is_zero_const() {
            return b;
        }
        if b.is_zero_const() {
            return a;
        }
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            if let Some(folded) = Expr::fold(x + y) {
                return folded;
            }
        }
        Expr::wrap(Node::Add(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Expr {
        if b.is_zero_const() {
            return a;
        }
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            if let Some(folded) = Expr::fold(x - y) {
                return folded;
            }
        }
        if a.is_zero_const() {
            return Expr::neg(b);
        }
        Expr::wrap(Node::Sub(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        if a.is_zero_const() || b.is_zero_const() {
            return Expr::zero();
        }
        if a.is_one_const() {
            return b;
        }
        if b.is_one_const() {
            return a;
        }
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            if let Some(folded) = Expr::fold(x * y) {
                return folded;
            }
        }
        Expr::wrap(Node::Mul(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Expr, b: Expr) -> Expr {
        if b.is_one_const() {
            return a;
        }
        if a.is_zero_const() {
            return Expr::zero();
        }
        Expr::wrap(Node::Div(a, b))
    }

    pub fn pow(base: Expr, k: i32) -> Expr {
        match k {
            0 => Expr::one(),
            1 => base,
            _ => {
                if let Some(c) = base.as_const() {
                    if k > 0 {
                        if let Some(folded) = Expr::fold(c.powu(k as u32)) {
                            return folded;
                        }
                    }
                }
                Expr::wrap(Node::Pow(base, k))
            }
        }
    }

    pub fn exp(a: Expr) -> Expr {
        if let Some(c) = a.as_const() {
            if let Some(folded) = Expr::fold(c.exp()) {
                return folded;
            }
        }
        Expr::wrap(Node::Exp(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Expr) -> Expr {
        match &*a.0 {
            Node::Const(c) => Expr::constant(-*c),
            Node::Neg(inner) => inner.clone(),
            _ => Expr::wrap(Node::Neg(a)),
        }
    }

    /// Symbolic partial derivative with respect to `z^(index+1)` (or
    /// `zb^(index+1)` when `barred`). Variables of the other kind count as
    /// constants. Shared subtrees are differentiated once and reused, so the
    /// derivative of a DAG stays a DAG.
    pub fn diff(&self, index: usize, barred: bool) -> Expr {
        self.diff_memo(index, barred, &mut std::collections::HashMap::new())
    }

    /// Differentiate with a caller-held memo so a batch of expressions that
    /// share subtrees (e.g. a matrix of derivatives) is processed once per
    /// shared node. The memo is valid for a single direction.
    pub fn diff_with(&self, memo: &mut DiffMemo) -> Expr {
        self.diff_memo(memo.index, memo.barred, &mut memo.map)
    }

    fn diff_memo(
        &self,
        index: usize,
        barred: bool,
        memo: &mut std::collections::HashMap<usize, Expr>,
    ) -> Expr {
        let key = Arc::as_ptr(&self.0) as usize;
        if let Some(d) = memo.get(&key) {
            return d.clone();
        }
        let d = match &*self.0 {
            Node::Const(_) => Expr::zero(),
            Node::Var {
                index: i,
                barred: b,
            } => {
                if *i == index && *b == barred {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Node::Add(a, b) => Expr::add(
                a.diff_memo(index, barred, memo),
                b.diff_memo(index, barred, memo),
            ),
            Node::Sub(a, b) => Expr::sub(
                a.diff_memo(index, barred, memo),
                b.diff_memo(index, barred, memo),
            ),
            Node::Mul(a, b) => Expr::add(
                Expr::mul(a.diff_memo(index, barred, memo), b.clone()),
                Expr::mul(a.clone(), b.diff_memo(index, barred, memo)),
            ),
            Node::Div(a, b) => Expr::div(
                Expr::sub(
                    Expr::mul(a.diff_memo(index, barred, memo), b.clone()),
                    Expr::mul(a.clone(), b.diff_memo(index, barred, memo)),
                ),
                Expr::pow(b.clone(), 2),
            ),
            Node::Pow(base, k) => Expr::mul(
                Expr::mul(Expr::real(*k as f64), Expr::pow(base.clone(), *k - 1)),
                base.diff_memo(index, barred, memo),
            ),
            Node::Exp(a) => Expr::mul(Expr::exp(a.clone()), a.diff_memo(index, barred, memo)),
            Node::Neg(a) => Expr::neg(a.diff_memo(index, barred, memo)),
        };
        memo.insert(key, d.clone());
        d
    }

    /// Derivative along the real coordinate `x^(index+1)`:
    /// `d/dx^a = d/dz^a + d/dzb^a`.
    pub fn diff_x(&self, index: usize) -> Expr {
        Expr::add(self.diff(index, false), self.diff(index, true))
    }

    /// Derivative along the real coordinate `y^(index+1)`:
    /// `d/dy^a = e (d/dz^a - d/dzb^a)`.
    pub fn diff_y(&self, index: usize) -> Expr {
        Expr::mul(
            Expr::unit_e(),
            Expr::sub(self.diff(index, false), self.diff(index, true)),
        )
    }

    /// Swap barred/unbarred variables and conjugate constants. Satisfies
    /// `eval(conj_expr(E), p) = conj(eval(E, p))` at every point.
    pub fn conj_expr(&self) -> Expr {
        match &*self.0 {
            Node::Const(c) => Expr::constant(c.conj()),
            Node::Var { index, barred } => Expr::wrap(Node::Var {
                index: *index,
                barred: !barred,
            }),
            Node::Add(a, b) => Expr::add(a.conj_expr(), b.conj_expr()),
            Node::Sub(a, b) => Expr::sub(a.conj_expr(), b.conj_expr()),
            Node::Mul(a, b) => Expr::mul(a.conj_expr(), b.conj_expr()),
            Node::Div(a, b) => Expr::div(a.conj_expr(), b.conj_expr()),
            Node::Pow(a, k) => Expr::pow(a.conj_expr(), *k),
            Node::Exp(a) => Expr::exp(a.conj_expr()),
            Node::Neg(a) => Expr::neg(a.conj_expr()),
        }
    }

    /// Evaluate at a point, binding `zb^a := conj(z^a)`. Divisions (and
    /// negative powers) by zero divisors raise `ZeroDivisor`.
    pub fn eval(&self, p: &EvalPoint, eps: f64) -> Result<ParaComplex> {
        self.eval_cached(p, eps, &mut EvalCache::new())
    }

    /// Evaluate reusing a cache of shared-subtree values. Derivative trees
    /// built from one source expression share most nodes, so batch
    /// evaluations at a single point should share one cache. A cache must
    /// never be reused across different points.
    pub fn eval_cached(
        &self,
        p: &EvalPoint,
        eps: f64,
        cache: &mut EvalCache,
    ) -> Result<ParaComplex> {
        let key = Arc::as_ptr(&self.0) as usize;
        if let Some(v) = cache.map.get(&key) {
            return Ok(*v);
        }
        let v = match &*self.0 {
            Node::Const(c) => *c,
            Node::Var { index, barred } => p.var_value(*index, *barred),
            Node::Add(a, b) => a.eval_cached(p, eps, cache)? + b.eval_cached(p, eps, cache)?,
            Node::Sub(a, b) => a.eval_cached(p, eps, cache)? - b.eval_cached(p, eps, cache)?,
            Node::Mul(a, b) => a.eval_cached(p, eps, cache)? * b.eval_cached(p, eps, cache)?,
            Node::Div(a, b) => a
                .eval_cached(p, eps, cache)?
                .checked_div(b.eval_cached(p, eps, cache)?, eps)?,
            Node::Pow(a, k) => a.eval_cached(p, eps, cache)?.powi(*k, eps)?,
            Node::Exp(a) => a.eval_cached(p, eps, cache)?.exp(),
            Node::Neg(a) => -a.eval_cached(p, eps, cache)?,
        };
        cache.map.insert(key, v);
        Ok(v)
    }

    /// Largest 0-based variable index mentioned, if any.
    pub fn max_var_index(&self) -> Option<usize> {
        match &*self.0 {
            Node::Const(_) => None,
            Node::Var { index, .. } => Some(*index),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                match (a.max_var_index(), b.max_var_index()) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    (x, y) => x.or(y),
                }
            }
            Node::Pow(a, _) | Node::Exp(a) | Node::Neg(a) => a.max_var_index(),
        }
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::add(self, rhs)
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sub(self, rhs)
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::mul(self, rhs)
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

// Printing: parenthesized enough that parse(print(E)) == E structurally.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn needs_wrapping(e: &Expr) -> bool {
            // binaries and general constants already print their own parens
            match &*e.0 {
                Node::Var { .. } | Node::Exp(_) => false,
                Node::Add(..) | Node::Sub(..) | Node::Mul(..) | Node::Div(..) => false,
                Node::Const(c) => c.im == 0.0 && c.re < 0.0,
                Node::Pow(..) | Node::Neg(_) => true,
            }
        }
        fn write_base(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if needs_wrapping(e) {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match &*self.0 {
            Node::Const(c) => {
                if c.im == 0.0 {
                    if c.re < 0.0 {
                        write!(f, "-{}", -c.re)
                    } else {
                        write!(f, "{}", c.re)
                    }
                } else if c.re == 0.0 && c.im == 1.0 {
                    write!(f, "e")
                } else if c.re == 0.0 {
                    write!(f, "(e*{})", fmt_real(c.im))
                } else {
                    write!(f, "({}+e*{})", fmt_real(c.re), fmt_real(c.im))
                }
            }
            Node::Var { index, barred } => {
                write!(f, "z{}{}", if *barred { "b" } else { "" }, index + 1)
            }
            Node::Add(a, b) => write!(f, "({a}+{b})"),
            Node::Sub(a, b) => write!(f, "({a}-{b})"),
            Node::Mul(a, b) => write!(f, "({a}*{b})"),
            Node::Div(a, b) => write!(f, "({a}/{b})"),
            Node::Pow(a, k) => {
                write_base(a, f)?;
                write!(f, "^{k}")
            }
            Node::Exp(a) => write!(f, "exp({a})"),
            Node::Neg(a) => {
                write!(f, "-")?;
                write_base(a, f)
            }
        }
    }
}

fn fmt_real(x: f64) -> String {
    if x < 0.0 {
        format!("-{}", -x)
    } else {
        format!("{x}")
    }
}

/// Parse `src` against the grammar, rejecting variable indices above `n`.
pub fn parse_expr(src: &str, n: usize) -> Result<Expr> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        n,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("end of input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, expected: &str) -> Error {
        Error::SyntaxError {
            position: self.pos,
            expected: expected.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::add(acc, self.term()?);
            } else if self.eat(b'-') {
                acc = Expr::sub(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = Expr::mul(acc, self.factor()?);
            } else if self.eat(b'/') {
                acc = Expr::div(acc, self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat(b'^') {
            let k = self.integer()?;
            Ok(Expr::pow(base, k))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::neg(self.base()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.word(),
            _ => Err(self.err("number, 'e', 'z<k>', 'zb<k>', 'exp(', '(' or '-'")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos == start {
            return Err(self.err("digit"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value: f64 = text.parse().map_err(|_| Error::SyntaxError {
            position: start,
            expected: "decimal literal".to_string(),
        })?;
        Ok(Expr::real(value))
    }

    fn word(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii letters");
        match name {
            "e" => Ok(Expr::unit_e()),
            "exp" => {
                if !self.eat(b'(') {
                    return Err(self.err("'(' after exp"));
                }
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("')'"));
                }
                Ok(Expr::exp(e))
            }
            "z" | "zb" => {
                let barred = name == "zb";
                let digits_start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos == digits_start {
                    return Err(Error::SyntaxError {
                        position: digits_start,
                        expected: "variable index".to_string(),
                    });
                }
                let text = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
                let index: usize = text.parse().map_err(|_| Error::SyntaxError {
                    position: digits_start,
                    expected: "variable index".to_string(),
                })?;
                if index == 0 || index > self.n {
                    return Err(Error::IndexOutOfRange {
                        index,
                        dimension: self.n,
                    });
                }
                Ok(if barred {
                    Expr::var_barred(index - 1)
                } else {
                    Expr::var(index - 1)
                })
            }
            _ => Err(Error::SyntaxError {
                position: start,
                expected: "'e', 'exp', 'z<k>' or 'zb<k>'".to_string(),
            }),
        }
    }

    fn integer(&mut self) -> Result<i32> {
        self.skip_ws();
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let k: i32 = text.parse().map_err(|_| Error::SyntaxError {
            position: start,
            expected: "integer exponent".to_string(),
        })?;
        Ok(if neg { -k } else { k })
    }
}

/// True iff all `d E / d zb^a` are below `tol` componentwise at every sample
/// (symbolically zero derivatives short-circuit). `samples` must be nonempty.
pub fn is_paraholomorphic_expr(e: &Expr, samples: &[EvalPoint], tol: f64, eps: f64) -> Result<bool> {
    assert!(!samples.is_empty(), "need at least one sample point");
    let n = samples[0].dim();
    for a in 0..n {
        let d = e.diff(a, true);
        if d.is_zero_const() {
            continue;
        }
        for p in samples {
            if d.eval(p, eps)?.max_abs() >= tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
