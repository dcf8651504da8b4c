//! The weight function `f` and the parameter `t`.
//!
//! Text forms:
//!
//! ```text
//! linear:<a>,<b>        f(n) = a n + b
//! poly:<c0>,<c1>,...    f(n) = c0 + c1 n + ...
//! qpow:<offset>         f(n) = q^(n + offset), q formal
//! qpow:<base>,<offset>  f(n) = base^(n + offset)
//! table:<path>          JSON array of rationals, values[0] = f(1)
//! ```
//!
//! The Pochhammer k-symbol `(x)_{n,h}` is `linear:h,0` with `t = 1`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rational::{exact_root, int, parse_rational, pow_i};
use crate::exactnum::{LaurentPoly, Rational, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FSpec {
    Linear {
        alpha: Rational,
        beta: Rational,
    },
    /// Coefficients in ascending powers of `n`.
    Poly(Vec<Rational>),
    /// `base^(n + offset)`; `None` means the formal variable `q`.
    QPow {
        base: Option<Rational>,
        offset: i64,
    },
    /// `values[0]` is `f(1)`. `source` is the path the values came from.
    Table {
        values: Vec<Rational>,
        source: String,
    },
}

fn rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

fn parse_table_json(text: &str, source: &str) -> Result<Vec<Rational>> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text)?;
    if raw.is_empty() {
        return Err(Error::parse(format!("table `{source}` is empty")));
    }
    let mut values = Vec::with_capacity(raw.len());
    for (i, v) in raw.iter().enumerate() {
        let r = match v {
            serde_json::Value::String(s) => parse_rational(s)?,
            serde_json::Value::Number(n) if n.is_i64() => int(n.as_i64().unwrap()),
            other => return Err(Error::parse(format!("table `{source}`: bad entry {other}"))),
        };
        if r.is_zero() {
            return Err(Error::parse(format!("table `{source}`: f({}) = 0", i + 1)));
        }
        values.push(r);
    }
    Ok(values)
}

impl FSpec {
    pub fn linear(alpha: Rational, beta: Rational) -> Self {
        FSpec::Linear { alpha, beta }
    }

    /// Table values from JSON text; `source` is kept for rendering.
    pub fn table_from_json(text: &str, source: impl Into<String>) -> Result<Self> {
        let source = source.into();
        let values = parse_table_json(text, &source)?;
        Ok(FSpec::Table { values, source })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, body) =
            text.split_once(':').ok_or_else(|| Error::parse(format!("expected `<kind>:<params>`, got `{text}`")))?;
        match kind.trim() {
            "linear" => {
                let v = rational_list(body)?;
                match <[Rational; 2]>::try_from(v) {
                    Ok([alpha, beta]) => Ok(FSpec::Linear { alpha, beta }),
                    Err(_) => Err(Error::parse("linear takes exactly two parameters")),
                }
            }
            "poly" => {
                let mut v = rational_list(body)?;
                while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
                    v.pop();
                }
                Ok(FSpec::Poly(v))
            }
            "qpow" => {
                let parts: Vec<&str> = body.split(',').map(str::trim).collect();
                let offset_of = |s: &str| s.parse::<i64>().map_err(|_| Error::parse(format!("bad qpow offset `{s}`")));
                match parts.as_slice() {
                    [o] => Ok(FSpec::QPow { base: None, offset: offset_of(o)? }),
                    [b, o] => {
                        let base = parse_rational(b)?;
                        if base.is_zero() {
                            return Err(Error::parse("qpow base must be nonzero"));
                        }
                        Ok(FSpec::QPow { base: Some(base), offset: offset_of(o)? })
                    }
                    _ => Err(Error::parse("qpow takes one or two parameters")),
                }
            }
            "table" => {
                let path = body.trim();
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| Error::parse(format!("cannot read table `{path}`: {e}")))?;
                Self::table_from_json(&text, path)
            }
            other => Err(Error::parse(format!("unknown f kind `{other}`"))),
        }
    }

    /// True when values are powers of the formal variable `q`.
    pub fn is_symbolic(&self) -> bool {
        matches!(self, FSpec::QPow { base: None, .. })
    }

    /// Largest `n` that can be evaluated, if bounded.
    pub fn max_n(&self) -> Option<usize> {
        match self {
            FSpec::Table { values, .. } => Some(values.len()),
            _ => None,
        }
    }

    /// `f(n)` for `n >= 1`; a zero value is a domain error.
    pub fn eval(&self, n: usize) -> Result<LaurentPoly> {
        if n == 0 {
            return Err(Error::domain("f is only defined for n >= 1"));
        }
        let ni = n as i64;
        let v = match self {
            FSpec::Linear { alpha, beta } => LaurentPoly::constant(alpha * int(ni) + beta),
            FSpec::Poly(c) => {
                let x = int(ni);
                let v = c.iter().rev().fold(Rational::zero(), |acc, ci| acc * &x + ci);
                LaurentPoly::constant(v)
            }
            FSpec::QPow { base: None, offset } => LaurentPoly::var_pow(Symbol::Q, ni + offset),
            FSpec::QPow { base: Some(b), offset } => LaurentPoly::constant(pow_i(b, ni + offset)),
            FSpec::Table { values, source } => match values.get(n - 1) {
                Some(v) => LaurentPoly::constant(v.clone()),
                None => {
                    return Err(Error::domain(format!(
                        "f({n}) requested but table `{source}` has {} entries",
                        values.len()
                    )))
                }
            },
        };
        if v.is_zero() {
            return Err(Error::domain(format!("f({n}) = 0")));
        }
        Ok(v)
    }

    /// `f(n)` as a rational; fails for the symbolic q-power kind.
    pub fn eval_rational(&self, n: usize) -> Result<Rational> {
        self.eval(n)?.as_constant().ok_or_else(|| Error::domain(format!("f({n}) is not a rational number")))
    }
}

impl fmt::Display for FSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FSpec::Linear { alpha, beta } => write!(f, "linear:{alpha},{beta}"),
            FSpec::Poly(c) => {
                f.write_str("poly:")?;
                for (i, ci) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{ci}")?;
                }
                Ok(())
            }
            FSpec::QPow { base: None, offset } => write!(f, "qpow:{offset}"),
            FSpec::QPow { base: Some(b), offset } => write!(f, "qpow:{b},{offset}"),
            FSpec::Table { source, .. } => write!(f, "table:{source}"),
        }
    }
}

impl FromStr for FSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FSpec::parse(s)
    }
}

/// The parameter `t`: the formal variable or a nonzero rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TValue {
    Symbolic,
    Numeric(Rational),
}

impl TValue {
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s == "symbolic" || s == "t" {
            return Ok(TValue::Symbolic);
        }
        let v = parse_rational(s)?;
        if v.is_zero() {
            return Err(Error::parse("t must be nonzero"));
        }
        Ok(TValue::Numeric(v))
    }

    pub fn one() -> Self {
        TValue::Numeric(Rational::one())
    }

    /// `t` as a Laurent polynomial in the plain convention.
    pub fn elem(&self) -> LaurentPoly {
        match self {
            TValue::Symbolic => LaurentPoly::var_pow(Symbol::T, 1),
            TValue::Numeric(c) => LaurentPoly::constant(c.clone()),
        }
    }
}

impl fmt::Display for TValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TValue::Symbolic => f.write_str("symbolic"),
            TValue::Numeric(c) => write!(f, "{c}"),
        }
    }
}

impl FromStr for TValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TValue::parse(s)
    }
}

/// A validated `(f, t)` pair. At most one of them may be symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Setting {
    pub f: FSpec,
    pub t: TValue,
}

impl Setting {
    pub fn new(f: FSpec, t: TValue) -> Result<Self> {
        if f.is_symbolic() && t == TValue::Symbolic {
            return Err(Error::Bivariate(format!("f = `{f}` and t are both symbolic")));
        }
        Ok(Setting { f, t })
    }

    /// The classical case `f(n) = n`, `t = 1`.
    pub fn classical() -> Self {
        Setting { f: FSpec::linear(int(1), int(0)), t: TValue::one() }
    }

    pub fn t_elem(&self) -> LaurentPoly {
        self.t.elem()
    }

    /// A frame where `t^(1/l)` is an exact Laurent monomial.
    ///
    /// Symbolic `t` becomes `u^l`. A numeric `t` with an exact rational
    /// `l`-th root is used directly; otherwise the computation runs in `u`
    /// and is mapped back by substituting `u^l = t`.
    pub fn lift(&self, l: u32) -> Result<Lift> {
        let l = l.max(1);
        if l == 1 {
            let t = self.t_elem();
            return Ok(Lift { l, root: t.clone(), t, back: BackMap::Identity });
        }
        let symbolic = || Lift {
            l,
            root: LaurentPoly::var_pow(Symbol::U, 1),
            t: LaurentPoly::var_pow(Symbol::U, l as i64),
            back: BackMap::Rename,
        };
        match &self.t {
            TValue::Symbolic => Ok(symbolic()),
            TValue::Numeric(c) => match exact_root(c, l) {
                Some(r) => Ok(Lift {
                    l,
                    root: LaurentPoly::constant(r),
                    t: LaurentPoly::constant(c.clone()),
                    back: BackMap::Identity,
                }),
                None if self.f.is_symbolic() => {
                    Err(Error::Bivariate(format!("t = {c} has no rational {l}-th root and f is symbolic")))
                }
                None => Ok(Lift { back: BackMap::Substitute(c.clone()), ..symbolic() }),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum BackMap {
    Identity,
    Rename,
    Substitute(Rational),
}

/// A change of frame `t = root^l`, see [`Setting::lift`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    l: u32,
    root: LaurentPoly,
    t: LaurentPoly,
    back: BackMap,
}

impl Lift {
    pub fn l(&self) -> u32 {
        self.l
    }

    /// `t^(1/l)` in the lifted frame.
    pub fn root(&self) -> &LaurentPoly {
        &self.root
    }

    /// `t^(k/l)` in the lifted frame.
    pub fn root_pow(&self, k: i64) -> LaurentPoly {
        self.root.pow(k).expect("root of t is a nonzero monomial")
    }

    /// `t` in the lifted frame.
    pub fn t(&self) -> &LaurentPoly {
        &self.t
    }

    /// True when values in this frame are written in the auxiliary `u`.
    pub fn uses_aux(&self) -> bool {
        self.back != BackMap::Identity
    }

    /// Maps a lifted value back to the plain frame. Fails if the value
    /// contains powers of `u` that are not powers of `t`.
    pub fn back(&self, v: &LaurentPoly) -> Result<LaurentPoly> {
        match &self.back {
            BackMap::Identity => Ok(v.clone()),
            BackMap::Rename => v.compress_exponents(self.l as i64, Symbol::T),
            BackMap::Substitute(c) => Ok(LaurentPoly::constant(v.substitute_power(self.l as i64, c)?)),
        }
    }
}
