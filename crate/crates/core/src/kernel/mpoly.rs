//! Sparse multivariate polynomials keyed by exponent vectors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Field, Ring};
use crate::{Integer, Rational};

/// Multivariate polynomial over a coefficient ring `C`.
///
/// Terms are stored in a map from exponent vectors (one entry per variable)
/// to nonzero coefficients. A polynomial with an empty variable list is a
/// constant and combines with any other polynomial.
#[derive(Clone, Debug)]
pub struct MPoly<C> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, C>,
}

/// Graded reverse lexicographic comparison of exponent vectors.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub fn var_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic: both operands must share the variable list.
pub fn mpoly_arith<C: Ring>(lhs: &MPoly<C>, rhs: &MPoly<C>, op: ArithOp) -> Result<MPoly<C>> {
    match op {
        ArithOp::Add => lhs.try_add(rhs),
        ArithOp::Sub => lhs.try_sub(rhs),
        ArithOp::Mul => lhs.try_mul(rhs),
    }
}

impl<C: Ring> MPoly<C> {
    pub fn zero(vars: Vec<String>) -> Self {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: C) -> Self {
        let mut p = Self::zero(vars);
        let e = vec![0; p.vars.len()];
        p.add_term(e, c);
        p
    }

    /// Constant with an empty variable list.
    pub fn from_const(c: C) -> Self {
        Self::constant(Vec::new(), c)
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn var(vars: Vec<String>, name: &str) -> Result<Self> {
        let i = index_of(&vars, name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, C::one());
        Ok(p)
    }

    /// All variables of `vars` as polynomials, in order.
    pub fn gens(vars: &[String]) -> Vec<Self> {
        vars.iter().map(|v| Self::var(vars.to_vec(), v).expect("own variable")).collect()
    }

    pub fn monomial(vars: Vec<String>, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<C> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(C::zero))
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Add `c * x^exps` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        index_of(&self.vars, name)
    }

    /// Re-express over `vars`, which must contain every variable that occurs.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if self.degree_at(i) == 0 => map.push(None),
                None => return Err(Error::UnknownVariable(v.clone())),
            }
        }
        let mut out = Self::zero(vars.to_vec());
        for (e, c) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    f[j] = x;
                }
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Rename variables positionally.
    pub fn rename(&self, names: &[&str]) -> Result<Self> {
        if names.len() != self.vars.len() {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: var_names(names),
            });
        }
        Ok(MPoly { vars: var_names(names), terms: self.terms.clone() })
    }

    /// Express both operands over the sorted union of their variables.
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let set: BTreeSet<String> = a.vars.iter().chain(b.vars.iter()).cloned().collect();
        let vars: Vec<String> = set.into_iter().collect();
        (a.with_vars(&vars).expect("superset"), b.with_vars(&vars).expect("superset"))
    }

    fn compatible(&self, other: &Self) -> Result<Option<Vec<String>>> {
        if self.vars == other.vars {
            Ok(None)
        } else if self.vars.is_empty() && self.is_constant() {
            Ok(Some(other.vars.clone()))
        } else if other.vars.is_empty() && other.is_constant() {
            Ok(Some(self.vars.clone()))
        } else {
            Err(Error::VariableMismatch { left: self.vars.clone(), right: other.vars.clone() })
        }
    }

    fn promoted(&self, other: &Self) -> Result<(Self, Self)> {
        match self.compatible(other)? {
            None => Ok((self.clone(), other.clone())),
            Some(vars) => Ok((self.with_vars(&vars)?, other.with_vars(&vars)?)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.promoted(other)?;
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        Ok(a)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.promoted(other)?;
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        Ok(a)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.promoted(other)?;
        let mut out = Self::zero(a.vars.clone());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars.clone());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> Result<Self> {
        let i = self.var_index(var)?;
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c.clone() * int_in::<C>(e[i] as i64));
        }
        Ok(out)
    }

    fn degree_at(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> Result<u32> {
        Ok(self.degree_at(self.var_index(var)?))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Every exponent of `var` is even.
    pub fn is_even_in(&self, var: &str) -> Result<bool> {
        let i = self.var_index(var)?;
        Ok(self.terms.keys().all(|e| e[i] % 2 == 0))
    }

    pub fn eval(&self, vals: &[C]) -> C {
        self.eval_with(vals, |c| c.clone())
    }

    /// Evaluate with values in another ring, mapping coefficients through `f`.
    pub fn eval_with<T: Ring>(&self, vals: &[T], f: impl Fn(&C) -> T) -> T {
        assert_eq!(vals.len(), self.vars.len(), "one value per variable");
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = f(c);
            for (x, &k) in vals.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute `images[i]` for the i-th variable; images share one variable list.
    pub fn compose(&self, images: &[Self]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::WrongGeneratorCount { expected: self.vars.len(), found: images.len() });
        }
        let target = images.iter().find(|p| !p.vars.is_empty()).map(|p| p.vars.clone()).unwrap_or_default();
        let imgs: Vec<Self> = images.iter().map(|p| p.with_vars(&target)).collect::<Result<_>>()?;
        let mut powers: Vec<Vec<Self>> = imgs.iter().map(|p| vec![Self::one(target.clone()), p.clone()]).collect();
        let mut out = Self::zero(target.clone());
        for (e, c) in &self.terms {
            let mut t = Self::constant(target.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &imgs[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitute a polynomial (over the same variables) for one variable.
    pub fn substitute(&self, var: &str, image: &Self) -> Result<Self> {
        let i = self.var_index(var)?;
        let image = image.with_vars(&self.vars)?;
        let mut images = Self::gens(&self.vars);
        images[i] = image;
        self.compose(&images)
    }

    /// Specialize one variable to a constant and remove it from the list.
    pub fn specialize(&self, var: &str, value: &C) -> Result<Self> {
        let i = self.var_index(var)?;
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f.remove(i);
            let mut t = c.clone();
            for _ in 0..k {
                t = t * value.clone();
            }
            out.add_term(f, t);
        }
        Ok(out)
    }

    /// Coefficients with respect to `var`, lowest degree first; each keeps the
    /// full variable list with `var` of degree zero.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<Self>> {
        let i = self.var_index(var)?;
        let d = self.degree_at(i) as usize;
        let mut out = vec![Self::zero(self.vars.clone()); d + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = std::mem::replace(&mut f[i], 0);
            out[k as usize].add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Remove a variable that does not occur.
    pub fn drop_var(&self, var: &str) -> Result<Self> {
        let i = self.var_index(var)?;
        if self.degree_at(i) != 0 {
            return Err(Error::Precondition(format!("`{var}` still occurs")));
        }
        let mut vars = self.vars.clone();
        vars.remove(i);
        self.with_vars(&vars)
    }

    /// Leading term in graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &C)> {
        self.terms.iter().max_by(|a, b| grevlex_cmp(a.0, b.0))
    }

    /// Terms in descending graded reverse lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &C)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grevlex_cmp(b.0, a.0));
        t
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Ascending coefficient list of a polynomial in a single variable `var`.
    pub fn to_univariate(&self, var: &str) -> Result<Vec<C>> {
        let i = self.var_index(var)?;
        let mut out = vec![C::zero(); self.degree_at(i) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &x)| j != i && x != 0) {
                return Err(Error::Precondition(format!("polynomial is not univariate in `{var}`")));
            }
            out[e[i] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate(var: &str, coeffs: &[C]) -> Self {
        Self::from_terms(vec![var.to_string()], coeffs.iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())))
    }
}

impl<C: Field> MPoly<C> {
    /// Exact quotient `self / d`; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (mut r, d) = self.promoted(d)?;
        let (de, dc) = match d.leading_term() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(Error::ZeroPolynomial),
        };
        let mut q = Self::zero(r.vars.clone());
        while let Some((re, rc)) = r.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return Err(Error::Structural("inexact polynomial division".into()));
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let t = Self::monomial(r.vars.clone(), e, rc / dc.clone());
            r = &r - &(&t * &d);
            q = &q + &t;
        }
        Ok(q)
    }
}

impl MPoly<Rational> {
    /// Divide by the content and make the grevlex-leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = Integer::zero();
        let mut den_lcm = Integer::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut s = Rational::new(den_lcm, num_gcd);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            s = -s;
        }
        self.scale(&s)
    }

    /// Exact square root, unique up to sign; the sign is chosen so that the
    /// grevlex-leading coefficient is positive. `None` if not a perfect square.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (le, lc) = self.leading_term()?;
        if le.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let root_lc = sqrt_rational(lc)?;
        let lead_e: Vec<u32> = le.iter().map(|e| e / 2).collect();
        let mut s = Self::monomial(self.vars.clone(), lead_e.clone(), root_lc.clone());
        let two_lc = root_lc * Rational::from_integer(2.into());
        for _ in 0..=self.terms.len() {
            let r = self - &(&s * &s);
            let Some((re, rc)) = r.leading_term() else {
                return Some(s);
            };
            if re.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            if grevlex_cmp(&e, &lead_e) != Ordering::Less {
                return None;
            }
            s.add_term(e, rc.clone() / two_lc.clone());
        }
        None
    }

    /// Parse over an explicit variable list.
    pub fn parse_with_vars(s: &str, vars: &[&str]) -> Result<Self> {
        let toks = tokenize(s)?;
        let vars = var_names(vars);
        let mut p = Parser { toks: &toks, pos: 0, vars: &vars };
        let out = p.expr()?;
        if p.pos != toks.len() {
            return Err(Error::Parse(format!("unexpected token {:?}", toks[p.pos])));
        }
        Ok(out)
    }
}

fn sqrt_rational(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn index_of(vars: &[String], name: &str) -> Result<usize> {
    vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

fn int_in<C: Ring>(k: i64) -> C {
    let mut acc = C::zero();
    let one = C::one();
    for _ in 0..k.unsigned_abs() {
        acc = acc + one.clone();
    }
    if k < 0 {
        -acc
    } else {
        acc
    }
}

impl<C: Ring> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        match (self.constant_value(), other.constant_value()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<C: Ring> $tr<&MPoly<C>> for &MPoly<C> {
            type Output = MPoly<C>;
            fn $m(self, rhs: &MPoly<C>) -> MPoly<C> {
                self.$f(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Ring> $tr<MPoly<C>> for MPoly<C> {
            type Output = MPoly<C>;
            fn $m(self, rhs: MPoly<C>) -> MPoly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Ring> $tr<&MPoly<C>> for MPoly<C> {
            type Output = MPoly<C>;
            fn $m(self, rhs: &MPoly<C>) -> MPoly<C> {
                (&self).$m(rhs)
            }
        }
        impl<C: Ring> $tr<MPoly<C>> for &MPoly<C> {
            type Output = MPoly<C>;
            fn $m(self, rhs: MPoly<C>) -> MPoly<C> {
                self.$m(&rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Ring> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Ring> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Ring> Zero for MPoly<C> {
    fn zero() -> Self {
        MPoly::zero(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for MPoly<C> {
    fn one() -> Self {
        MPoly::from_const(C::one())
    }
}

impl<C: Ring> Ring for MPoly<C> {
    fn split_sign(&self) -> (bool, String) {
        (false, self.to_string())
    }
    fn needs_parens(&self) -> bool {
        self.terms.len() > 1
    }
}

impl<C: Ring> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, mag) = c.split_sign();
            let sep = match (k, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(x, _)| **x > 0)
                .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono.join("*")
            } else if c.needs_parens() {
                format!("({mag})*{}", mono.join("*"))
            } else {
                format!("{mag}*{}", mono.join("*"))
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let q = parse_rational(&text).ok_or_else(|| Error::Parse(format!("bad number `{text}`")))?;
            out.push(Tok::Num(q));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: &'a [String],
}

type QP = MPoly<Rational>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QP> {
        let mut acc = if self.eat('-') { -self.term()? } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QP> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let c = d
                    .constant_value()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&(Rational::one() / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<QP> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                    let k: u32 = n.to_integer().try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Parse("expected a nonnegative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QP> {
        let vars = self.vars.to_vec();
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(vars, n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                MPoly::var(vars, &name)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

impl FromStr for MPoly<Rational> {
    type Err = Error;

    /// Parse with variables inferred from the identifiers, sorted.
    fn from_str(s: &str) -> Result<Self> {
        let names: BTreeSet<String> = tokenize(s)?
            .into_iter()
            .filter_map(|t| if let Tok::Ident(n) = t { Some(n) } else { None })
            .collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::parse_with_vars(s, &names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn p(s: &str) -> QP {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("u + v");
        let b = p("u - v");
        assert_eq!(&a * &b, p("u^2 - v^2"));
    }

    #[test]
    fn additive_inverse_is_zero() {
        let a = p("u^3 + v^3 - u^2*v^2 - 9/8*u*v + 27/256");
        assert!((&a + &a.scale(&qi(-1))).is_zero());
    }

    #[test]
    fn mismatched_variables_error() {
        let a = p("u + 1");
        let b = p("v + 1");
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch { .. })));
        let (a, b) = MPoly::unify(&a, &b);
        assert_eq!((&a + &b).to_string(), "u + v + 2");
    }

    #[test]
    fn constants_promote() {
        let a = p("u + 1");
        let c = MPoly::from_const(qi(2));
        assert_eq!(&a * &c, p("2*u + 2"));
    }

    #[test]
    fn prints_in_grevlex_order() {
        let d = p("27/256 + u^3 + v^3 - u^2*v^2 - 9/8*u*v");
        assert_eq!(d.to_string(), "-u^2*v^2 + u^3 + v^3 - 9/8*u*v + 27/256");
        assert_eq!(p("x^2*y + x*y^2 + y^3 + x^3").to_string(), "x^3 + x^2*y + x*y^2 + y^3");
        assert_eq!(MPoly::<Rational>::zero(vec![]).to_string(), "0");
    }

    #[test]
    fn parse_roundtrip() {
        let d = p("(x^2 + y^2)^2 + x^3 + 9*x*y^2 + 27/4*y^2");
        let again: QP = d.to_string().parse().unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn derivative_of_constant() {
        let c = MPoly::constant(var_names(&["u"]), q(3, 2));
        assert!(c.derivative("u").unwrap().is_zero());
        assert!(matches!(c.derivative("w"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn div_exact_and_sqrt() {
        let a = p("x^2 - 2*x*y + 3*y^2 + 1");
        let b = p("x + y - 5");
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert!(p("x^2 + y").div_exact(&p("x + 1")).is_err());
        let sq = &a * &a;
        let r = sq.sqrt_exact().unwrap();
        assert_eq!(&r * &r, sq);
        assert!(p("x^2 + 1").sqrt_exact().is_none());
        assert_eq!(p("4*x^2 + 4*x*y + y^2").sqrt_exact().unwrap(), p("2*x + y"));
    }

    #[test]
    fn primitive_normalizes() {
        assert_eq!(p("-2/3*x^2 + 4/9*y").primitive(), p("3*x^2 - 2*y"));
    }

    #[test]
    fn compose_and_specialize() {
        let f = p("x^2 + y");
        let t = p("t");
        let g = f.compose(&[t.clone(), &t * &t]).unwrap();
        assert_eq!(g, p("2*t^2"));
        let s = f.specialize("y", &qi(3)).unwrap();
        assert_eq!(s, p("x^2 + 3"));
    }
}
