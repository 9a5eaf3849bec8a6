//! Exact rationals and sparse multivariate polynomials over them.
//!
//! Every coefficient in this crate is an exact `BigRational`; there is no
//! floating point anywhere. Polynomials live in a fixed variable universe
//! for an ambient rank `n`: the parameters `p`, `q`, `h` (the ħ of the
//! affine Hecke algebra), `y`, the equivariant parameters `t1..tn`, and the
//! Chern roots `x1..xn`. Exponent vectors are sparse; the zero coefficient
//! is never stored.

use num::{BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;

/// Exact rational scalar. Always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Convenience constructor for small integer rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Convenience constructor for small fractions.
pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Index of a variable inside a [`VarUniverse`].
pub type Var = u16;

/// The fixed variable universe for ambient rank `n`.
///
/// Indices are total and stable for a fixed `n`:
/// `p = 0`, `q = 1`, `h = 2`, `y = 3`, `t_i = 3 + i`, `x_i = 3 + n + i`
/// (both `i` ranges are 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarUniverse {
    pub n: usize,
}

impl VarUniverse {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "ambient rank must be positive");
        VarUniverse { n }
    }

    pub const P: Var = 0;
    pub const Q: Var = 1;
    pub const H: Var = 2;
    pub const Y: Var = 3;

    pub fn t(&self, i: usize) -> Var {
        assert!(1 <= i && i <= self.n, "t index out of range");
        (3 + i) as Var
    }

    pub fn x(&self, i: usize) -> Var {
        assert!(1 <= i && i <= self.n, "x index out of range");
        (3 + self.n + i) as Var
    }

    pub fn num_vars(&self) -> usize {
        4 + 2 * self.n
    }

    pub fn var_name(&self, v: Var) -> String {
        match v {
            Self::P => "p".into(),
            Self::Q => "q".into(),
            Self::H => "h".into(),
            Self::Y => "y".into(),
            _ => {
                let v = v as usize;
                if v <= 3 + self.n {
                    format!("t{}", v - 3)
                } else {
                    format!("x{}", v - 3 - self.n)
                }
            }
        }
    }

    pub fn var_by_name(&self, name: &str) -> Option<Var> {
        match name {
            "p" => Some(Self::P),
            "q" => Some(Self::Q),
            "h" | "hbar" => Some(Self::H),
            "y" => Some(Self::Y),
            _ => {
                let (head, idx) = name.split_at(1);
                let i: usize = idx.parse().ok()?;
                if i < 1 || i > self.n {
                    return None;
                }
                match head {
                    "t" => Some(self.t(i)),
                    "x" => Some(self.x(i)),
                    _ => None,
                }
            }
        }
    }
}

/// Sparse exponent vector, sorted by variable index, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(v, _)| v);
        Monomial(pairs)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&pa), None) => {
                    out.push(pa);
                    a.next();
                }
                (None, Some(&&pb)) => {
                    out.push(pb);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// Replace variable indices via `f`, re-sorting. Used for x<->t moves
    /// and Weyl twists; `f` must be injective on the variables present.
    pub fn map_vars(&self, mut f: impl FnMut(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)).collect())
    }
}

/// Graded lexicographic order: first by total degree, then lexicographically
/// on exponents in variable-index order (larger exponent on the earliest
/// differing variable wins).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut a, mut b) = (self.0.iter(), other.0.iter());
            loop {
                match (a.next(), b.next()) {
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        // The smaller variable index has a nonzero exponent on
                        // exactly one side, or both; compare accordingly.
                        match va.cmp(&vb) {
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                            Ordering::Equal => match ea.cmp(&eb) {
                                Ordering::Equal => continue,
                                ord => return ord,
                            },
                        }
                    }
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (None, None) => return Ordering::Equal,
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse exact-rational multivariate polynomial in a fixed [`VarUniverse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub uni: VarUniverse,
    pub terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(uni: VarUniverse) -> Self {
        MultiPoly {
            uni,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(uni: VarUniverse, c: Rational) -> Self {
        let mut p = Self::zero(uni);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(uni: VarUniverse) -> Self {
        Self::constant(uni, Rational::one())
    }

    pub fn int(uni: VarUniverse, c: i64) -> Self {
        Self::constant(uni, rat(c))
    }

    pub fn var(uni: VarUniverse, v: Var) -> Self {
        let mut p = Self::zero(uni);
        p.terms.insert(Monomial::var(v), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &MultiPoly) {
        assert_eq!(self.uni, other.uni, "universe mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            uni: self.uni,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.uni);
        }
        MultiPoly {
            uni: self.uni,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.uni, other.uni, "universe mismatch");
        let mut out = Self::zero(self.uni);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_var(&self, v: Var) -> MultiPoly {
        let mv = Monomial::var(v);
        MultiPoly {
            uni: self.uni,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&mv), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::one(self.uni);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Checked arithmetic entry point with a structural universe check.
    pub fn arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly, Error> {
        if a.uni != b.uni {
            return Err(Error::UniverseMismatch {
                left: a.uni.n,
                right: b.uni.n,
            });
        }
        Ok(match op {
            PolyOp::Add => a.add(b),
            PolyOp::Sub => a.sub(b),
            PolyOp::Mul => a.mul(b),
        })
    }

    /// Substitute the assigned variables of `s`; unassigned variables stay
    /// symbolic. The result lives in the same universe.
    pub fn specialize(&self, s: &ParamSpec) -> MultiPoly {
        let mut out = Self::zero(self.uni);
        for (m, c) in &self.terms {
            let mut fixed = Vec::new();
            let mut factor = MultiPoly::one(self.uni);
            let mut zero = false;
            for &(v, e) in &m.0 {
                match s.get(v) {
                    None => fixed.push((v, e)),
                    Some(val) => {
                        if val.is_zero() {
                            zero = true;
                            break;
                        }
                        factor = factor.mul(&val.pow(e));
                    }
                }
            }
            if zero {
                continue;
            }
            let base = Monomial::from_pairs(fixed);
            for (fm, fc) in &factor.terms {
                out.add_term(base.mul(fm), fc * c);
            }
        }
        out
    }

    /// Swap two variables (e.g. `x_i <-> x_{i+1}` for the Weyl action).
    pub fn swap_vars(&self, a: Var, b: Var) -> MultiPoly {
        MultiPoly {
            uni: self.uni,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        m.map_vars(|v| {
                            if v == a {
                                b
                            } else if v == b {
                                a
                            } else {
                                v
                            }
                        }),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Rename variables wholesale (injective on the support).
    pub fn map_vars(&self, mut f: impl FnMut(Var) -> Var) -> MultiPoly {
        MultiPoly {
            uni: self.uni,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.map_vars(&mut f), c.clone()))
                .collect(),
        }
    }

    /// Divided difference `(f - swap(f)) / (a - b)` with respect to the
    /// variable pair `(a, b)`. Exact: computed per monomial via the telescoping
    /// identity, no polynomial division.
    pub fn divided_difference(&self, a: Var, b: Var) -> MultiPoly {
        let mut out = Self::zero(self.uni);
        for (m, c) in &self.terms {
            let ea = m.exponent(a);
            let eb = m.exponent(b);
            if ea == eb {
                continue;
            }
            let rest = Monomial::from_pairs(
                m.0.iter()
                    .filter(|&&(v, _)| v != a && v != b)
                    .cloned()
                    .collect(),
            );
            let (lo, hi, sign) = if ea > eb {
                (eb, ea, Rational::one())
            } else {
                (ea, eb, -Rational::one())
            };
            // (u^hi v^lo - u^lo v^hi)/(u - v) = sum_{j=0}^{hi-lo-1} u^{lo+j} v^{hi-1-j}
            for j in 0..(hi - lo) {
                let mono = rest.mul(&Monomial::from_pairs(vec![(a, lo + j), (b, hi - 1 - j)]));
                out.add_term(mono, &sign * c);
            }
        }
        out
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, e: u32) -> MultiPoly {
        let mut out = Self::zero(self.uni);
        for (m, c) in &self.terms {
            if m.exponent(v) == e {
                let rest =
                    Monomial::from_pairs(m.0.iter().filter(|&&(w, _)| w != v).cloned().collect());
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Serialize to the JSON term-list form
    /// `[{"coeff":"a/b","exps":{"t3":1,...}}, ...]` (graded-lex descending).
    pub fn to_json(&self) -> serde_json::Value {
        let mut arr = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut exps = serde_json::Map::new();
            for &(v, e) in &m.0 {
                exps.insert(self.uni.var_name(v), serde_json::json!(e));
            }
            arr.push(serde_json::json!({
                "coeff": format_rational(c),
                "exps": serde_json::Value::Object(exps),
            }));
        }
        serde_json::Value::Array(arr)
    }

    pub fn from_json(uni: VarUniverse, v: &serde_json::Value) -> Result<MultiPoly, Error> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array of terms".into()))?;
        let mut out = MultiPoly::zero(uni);
        for term in arr {
            let coeff = term
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Parse("term missing string coeff".into()))?;
            let c = parse_rational(coeff)?;
            let mut pairs = Vec::new();
            if let Some(exps) = term.get("exps").and_then(|e| e.as_object()) {
                for (name, e) in exps {
                    let var = uni
                        .var_by_name(name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                    let e = e
                        .as_u64()
                        .ok_or_else(|| Error::Parse("exponent must be a nonnegative integer".into()))?;
                    pairs.push((var, e as u32));
                }
            }
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<num::BigInt, Error> {
        t.parse()
            .map_err(|_| Error::Parse(format!("bad integer {t}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Canonical text form: terms in graded-lex descending order, explicit `*`
/// and `^`, e.g. `-3/2*p^2*q + t4 - 1`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rational(&abs));
            }
            for &(v, e) in &m.0 {
                if e == 1 {
                    factors.push(self.uni.var_name(v));
                } else {
                    factors.push(format!("{}^{}", self.uni.var_name(v), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parse the canonical text form (plus parentheses, for building expected
/// values in tests and CLI input). Grammar: sums of products of powers of
/// variables, rationals, and parenthesized subexpressions.
pub fn parse_poly(uni: VarUniverse, input: &str) -> Result<MultiPoly, Error> {
    let mut p = Parser {
        uni,
        chars: input.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "trailing input at position {} in {input:?}",
            p.pos
        )));
    }
    Ok(e)
}

struct Parser {
    uni: VarUniverse,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, Error> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                // implicit multiplication before '(' or a letter
                Some(c) if c == '(' || c.is_alphabetic() => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, Error> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse("bad exponent".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, Error> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("expected )".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/')
                {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                Ok(MultiPoly::constant(self.uni, parse_rational(&s)?))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_digit()
                        || self.chars[self.pos].is_alphabetic())
                {
                    // variable names are a letter followed by digits (or "hbar")
                    if self.chars[self.pos].is_alphabetic()
                        && !"bar".contains(self.chars[self.pos])
                    {
                        break;
                    }
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let v = self
                    .uni
                    .var_by_name(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                Ok(MultiPoly::var(self.uni, v))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Partial assignment of variables. Values are usually rational constants but
/// may be polynomials (e.g. `q -> -y` for the motivic specialization).
#[derive(Debug, Clone, Default)]
pub struct ParamSpec {
    values: BTreeMap<Var, MultiPoly>,
}

impl ParamSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, v: Var, value: MultiPoly) -> Self {
        self.values.insert(v, value);
        self
    }

    pub fn set_rat(self, uni: VarUniverse, v: Var, value: Rational) -> Self {
        self.set(v, MultiPoly::constant(uni, value))
    }

    pub fn get(&self, v: Var) -> Option<&MultiPoly> {
        self.values.get(&v)
    }

    /// All `t_i` set to zero.
    pub fn zero_t(uni: VarUniverse) -> Self {
        let mut s = Self::new();
        for i in 1..=uni.n {
            s.values.insert(uni.t(i), MultiPoly::zero(uni));
        }
        s
    }

    pub fn merge(mut self, other: &ParamSpec) -> Self {
        for (v, val) in &other.values {
            self.values.insert(*v, val.clone());
        }
        self
    }

    fn rational_value(&self, v: Var) -> Option<Rational> {
        let p = self.values.get(&v)?;
        if p.is_zero() {
            return Some(Rational::zero());
        }
        if p.terms.len() == 1 {
            if let Some(c) = p.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Quantum-factorial nondegeneracy for symmetrizer work: `p` and `q`
    /// assigned rational with `q != 0`, `p != q`, and `[m] != 0` for all
    /// `m <= max(k, n-k)`.
    pub fn check_nondegenerate(&self, k: usize, n: usize) -> Result<(), Error> {
        let p = self
            .rational_value(VarUniverse::P)
            .ok_or_else(|| Error::DegenerateParams("p is not assigned a rational value".into()))?;
        let q = self
            .rational_value(VarUniverse::Q)
            .ok_or_else(|| Error::DegenerateParams("q is not assigned a rational value".into()))?;
        if q.is_zero() {
            return Err(Error::DegenerateParams("q = 0".into()));
        }
        if p == q {
            return Err(Error::DegenerateParams("p = q".into()));
        }
        let bound = k.max(n - k);
        for m in 1..=bound {
            // [m] = sum_{i<m} p^i q^{m-1-i}
            let mut qm = Rational::zero();
            for i in 0..m {
                qm += num::pow::pow(p.clone(), i) * num::pow::pow(q.clone(), m - 1 - i);
            }
            if qm.is_zero() {
                return Err(Error::DegenerateParams(format!("[{m}] = 0")));
            }
        }
        Ok(())
    }
}

/// The quantum number `[m] = (p^m - q^m)/(p - q) = sum_{i=0}^{m-1} p^i q^{m-1-i}`.
pub fn quantum_number(uni: VarUniverse, m: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(uni);
    for i in 0..m {
        out.add_term(
            Monomial::from_pairs(vec![
                (VarUniverse::P, i as u32),
                (VarUniverse::Q, (m - 1 - i) as u32),
            ]),
            Rational::one(),
        );
    }
    out
}

/// The quantum factorial `[m]! = [m][m-1]...[1]`, with `[0]! = 1`.
pub fn quantum_factorial(uni: VarUniverse, m: usize) -> MultiPoly {
    let mut out = MultiPoly::one(uni);
    for j in 1..=m {
        out = out.mul(&quantum_number(uni, j));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni() -> VarUniverse {
        VarUniverse::new(5)
    }

    #[test]
    fn difference_of_squares() {
        let u = uni();
        let p = MultiPoly::var(u, VarUniverse::P);
        let q = MultiPoly::var(u, VarUniverse::Q);
        let lhs = p.add(&q).mul(&p.sub(&q));
        let rhs = parse_poly(u, "p^2 - q^2").unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn annihilator() {
        let u = uni();
        let f = parse_poly(u, "1 + y").unwrap();
        assert!(f.mul(&MultiPoly::zero(u)).is_zero());
    }

    #[test]
    fn cancellation() {
        let u = uni();
        let a = parse_poly(u, "h - (p - q)*t4").unwrap();
        let b = parse_poly(u, "(p - q)*t4").unwrap();
        assert_eq!(a.add(&b), parse_poly(u, "h").unwrap());
    }

    #[test]
    fn universe_mismatch_is_an_error() {
        let a = MultiPoly::one(VarUniverse::new(3));
        let b = MultiPoly::one(VarUniverse::new(4));
        assert!(MultiPoly::arith(&a, &b, PolyOp::Add).is_err());
    }

    #[test]
    fn specialize_motivic() {
        let u = uni();
        let f = parse_poly(u, "h - (p - q)*t4").unwrap();
        let s = ParamSpec::new()
            .set(VarUniverse::P, MultiPoly::one(u))
            .set(VarUniverse::Q, parse_poly(u, "-y").unwrap())
            .set(VarUniverse::H, parse_poly(u, "1 + y").unwrap());
        assert_eq!(f.specialize(&s), parse_poly(u, "(1+y)*(1-t4)").unwrap());
    }

    #[test]
    fn specialize_to_schubert_params() {
        let u = uni();
        let f = parse_poly(u, "h - (p - q)*t4").unwrap();
        let s = ParamSpec::new()
            .set_rat(u, VarUniverse::P, rat(0))
            .set_rat(u, VarUniverse::Q, rat(0))
            .set_rat(u, VarUniverse::H, rat(1));
        assert_eq!(f.specialize(&s), MultiPoly::one(u));
    }

    #[test]
    fn quantum_three_at_2_3() {
        // [3] = p^2 + pq + q^2 evaluates to 19 at p=2, q=3, matching
        // (p^3 - q^3)/(p - q) = (8 - 27)/(2 - 3).
        let u = uni();
        let q3 = quantum_number(u, 3);
        let s = ParamSpec::new()
            .set_rat(u, VarUniverse::P, rat(2))
            .set_rat(u, VarUniverse::Q, rat(3))
            ;
        assert_eq!(q3.specialize(&s), MultiPoly::int(u, 19));
        assert_eq!(rat(8 - 27) / rat(2 - 3), rat(19));
    }

    #[test]
    fn quantum_conventions() {
        let u = uni();
        assert!(quantum_number(u, 0).is_zero());
        assert!(quantum_factorial(u, 0).is_one());
        assert_eq!(quantum_number(u, 2), parse_poly(u, "p + q").unwrap());
    }

    #[test]
    fn quantum_factorial_three() {
        // [3]! = (p^2+pq+q^2)(p+q); cross-checked by expanding
        // (p^3-q^3)(p^2-q^2) = [3]! * (p-q)^2.
        let u = uni();
        let f3 = quantum_factorial(u, 3);
        assert_eq!(
            f3,
            parse_poly(u, "(p^2 + p*q + q^2)*(p + q)").unwrap()
        );
        let lhs = parse_poly(u, "(p^3 - q^3)*(p^2 - q^2)").unwrap();
        let rhs = f3.mul(&parse_poly(u, "(p - q)^2").unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quantum_number_clears_denominator() {
        let u = uni();
        let pq = parse_poly(u, "p - q").unwrap();
        for m in 1..=6 {
            let lhs = pq.mul(&quantum_number(u, m));
            let rhs = parse_poly(u, &format!("p^{m} - q^{m}")).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn divided_difference_basics() {
        let u = uni();
        let x1 = u.x(1);
        let x2 = u.x(2);
        let f = MultiPoly::var(u, x1);
        assert!(f.divided_difference(x1, x2).is_one());
        let g = MultiPoly::var(u, x2);
        assert_eq!(g.divided_difference(x1, x2), MultiPoly::int(u, -1));
        let sym = parse_poly(u, "x1*x2").unwrap();
        assert!(sym.divided_difference(x1, x2).is_zero());
        let sq = parse_poly(u, "x1^2").unwrap();
        assert_eq!(sq.divided_difference(x1, x2), parse_poly(u, "x1 + x2").unwrap());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let u = uni();
        let f = parse_poly(u, "-3/2*t1*y + t4 - 1 + x2^3").unwrap();
        let printed = f.to_string();
        assert_eq!(parse_poly(u, &printed).unwrap(), f);
    }

    #[test]
    fn json_round_trip() {
        let u = uni();
        let f = parse_poly(u, "(1+y)*(1-t2)*t4").unwrap();
        let v = f.to_json();
        assert_eq!(MultiPoly::from_json(u, &v).unwrap(), f);
    }

    #[test]
    fn nondegeneracy_checks() {
        let u = uni();
        let good = ParamSpec::new()
            .set_rat(u, VarUniverse::P, rat(2))
            .set_rat(u, VarUniverse::Q, rat(3));
        assert!(good.check_nondegenerate(2, 5).is_ok());
        let q0 = ParamSpec::new()
            .set_rat(u, VarUniverse::P, rat(1))
            .set_rat(u, VarUniverse::Q, rat(0));
        assert!(q0.check_nondegenerate(2, 5).is_err());
        // p = -q makes [2] = p + q vanish
        let pq = ParamSpec::new()
            .set_rat(u, VarUniverse::P, rat(-3))
            .set_rat(u, VarUniverse::Q, rat(3));
        assert!(pq.check_nondegenerate(2, 5).is_err());
    }
}
