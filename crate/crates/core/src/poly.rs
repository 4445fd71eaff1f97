//! Sparse multivariate polynomials over Q with Z^2-gradings.
//!
//! A [`Polynomial`] is a map from monomials to non-zero rational
//! coefficients, aligned to a fixed, ordered [`VarSet`]. The canonical term
//! order is graded lexicographic over the variable order; serialization
//! walks it descending, linear algebra walks it ascending.
//!
//! Cross-ring operations never unify variable sets silently: callers embed
//! into a common set first (see [`Polynomial::embed`]) or use
//! [`Polynomial::substitute`], which maps into the variable set of the
//! binding targets.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{format_rat, is_negative, Rat};

/// An ordered set of distinct variable names. The order is total and fixed
/// at construction; every monomial and grading is aligned to it.
#[derive(Clone, Debug, Eq)]
pub struct VarSet {
    names: Arc<[String]>,
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl VarSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidArgument("empty variable set".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidArgument("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarSet {
            names: names.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }
}

/// Exponent vector aligned to a `VarSet`. Ordered graded-lex: first by total
/// degree, then lexicographically on the exponents in variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn unit(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise quotient, `None` when some exponent of `other` exceeds
    /// the corresponding exponent of `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.exps.cmp(&other.exps),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Z^2 degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bigrade {
    pub r: i64,
    pub s: i64,
}

impl Bigrade {
    pub fn new(r: i64, s: i64) -> Self {
        Bigrade { r, s }
    }
}

impl core::ops::Add for Bigrade {
    type Output = Bigrade;
    fn add(self, other: Bigrade) -> Bigrade {
        Bigrade::new(self.r + other.r, self.s + other.s)
    }
}

impl core::ops::Sub for Bigrade {
    type Output = Bigrade;
    fn sub(self, other: Bigrade) -> Bigrade {
        Bigrade::new(self.r - other.r, self.s - other.s)
    }
}

impl fmt::Display for Bigrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// Per-variable Z^2 weights, total on a `VarSet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigrading {
    vars: VarSet,
    weights: Vec<(i64, i64)>,
}

impl Bigrading {
    /// Builds a grading from `(name, (r, s))` pairs; every variable of the
    /// set must receive a weight.
    pub fn new(vars: &VarSet, degrees: &[(&str, (i64, i64))]) -> Result<Self> {
        let mut weights = vec![None; vars.len()];
        for (name, w) in degrees {
            let i = vars.index_of(name)?;
            weights[i] = Some(*w);
        }
        let weights = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    Error::InvalidArgument(format!("no weight for variable `{}`", vars.name(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Bigrading {
            vars: vars.clone(),
            weights,
        })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn weight(&self, i: usize) -> Bigrade {
        Bigrade::new(self.weights[i].0, self.weights[i].1)
    }

    pub fn grade_of(&self, m: &Monomial) -> Bigrade {
        let mut r = 0i64;
        let mut s = 0i64;
        for (i, &e) in m.exps().iter().enumerate() {
            r += self.weights[i].0 * e as i64;
            s += self.weights[i].1 * e as i64;
        }
        Bigrade::new(r, s)
    }
}

/// Sparse exact-rational multivariate polynomial.
///
/// Invariants: no zero coefficient is stored and monomials are unique; the
/// zero polynomial has an empty term map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(vars: &VarSet) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Rat) -> Self {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Polynomial::constant(vars, Rat::one())
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self> {
        let i = vars.index_of(name)?;
        let mut p = Polynomial::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i), Rat::one());
        Ok(p)
    }

    pub fn monomial(vars: &VarSet, m: Monomial, c: Rat) -> Result<Self> {
        if m.len() != vars.len() {
            return Err(Error::DimensionMismatch);
        }
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        Ok(p)
    }

    /// Builds from raw terms, summing duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(
        vars: &VarSet,
        terms: I,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            if m.len() != vars.len() {
                return Err(Error::DimensionMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
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

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// The largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::unit(self.vars.len()))
    }

    /// Returns `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    fn check_same_vars(&self, other: &Polynomial) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_vars(other)?;
        let mut out = Polynomial::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.vars);
        for _ in 0..e {
            out = out.mul(self).expect("same varset");
        }
        out
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.vars.index_of(var)?;
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] = e - 1;
            out.add_term(Monomial::new(exps), c * Rat::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Simultaneous substitution. The binding targets must share one
    /// variable set, which becomes the variable set of the result; unbound
    /// variables map to themselves and must exist in the target set.
    pub fn substitute(&self, bindings: &BTreeMap<String, Polynomial>) -> Result<Polynomial> {
        let target_vars = bindings
            .values()
            .next()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        for p in bindings.values() {
            if p.vars != target_vars {
                return Err(Error::VarSetMismatch);
            }
        }
        self.evaluate(&target_vars, |name| match bindings.get(name) {
            Some(p) => Ok(p.clone()),
            None => Polynomial::var(&target_vars, name),
        })
    }

    /// Evaluates the polynomial in another ring: every variable is mapped
    /// through `image` and the result is assembled in `target_vars`.
    /// Variable powers are computed once per term column.
    pub fn evaluate<F>(&self, target_vars: &VarSet, mut image: F) -> Result<Polynomial>
    where
        F: FnMut(&str) -> Result<Polynomial>,
    {
        // Resolve images lazily: variables that never occur are not looked up.
        let mut images: Vec<Option<Polynomial>> = vec![None; self.vars.len()];
        let mut used: Vec<bool> = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        for i in 0..self.vars.len() {
            if used[i] {
                let img = image(self.vars.name(i))?;
                if img.vars != *target_vars {
                    return Err(Error::VarSetMismatch);
                }
                images[i] = Some(img);
            }
        }
        let mut out = Polynomial::zero(target_vars);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target_vars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    acc = acc.mul(&images[i].as_ref().unwrap().pow(e))?;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Exact division by a single divisor: returns `r` with `q * r = self`,
    /// or `InexactDivision` when no exact quotient exists.
    pub fn divide_exact(&self, q: &Polynomial) -> Result<Polynomial> {
        self.check_same_vars(q)?;
        if q.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        let (qm, qc) = q.leading_term().unwrap();
        let qm = qm.clone();
        let qc = qc.clone();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.vars);
        while let Some((pm, pc)) = rem.leading_term() {
            let tm = pm.checked_div(&qm).ok_or(Error::InexactDivision)?;
            let tc = pc / &qc;
            let t = Polynomial::monomial(&self.vars, tm, tc)?;
            rem = rem.sub(&t.mul(q)?)?;
            quot = quot.add(&t)?;
        }
        Ok(quot)
    }

    /// Maps into a superset variable set.
    pub fn embed(&self, into: &VarSet) -> Result<Polynomial> {
        let positions: Vec<usize> = self
            .vars
            .names()
            .map(|n| into.index_of(n))
            .collect::<Result<_>>()?;
        let mut out = Polynomial::zero(into);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; into.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[positions[i]] = e;
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Splits into homogeneous components, ordered by bigrade. The sum of
    /// the components is the polynomial; each component is non-zero.
    pub fn bigrade_decompose(&self, g: &Bigrading) -> Vec<(Bigrade, Polynomial)> {
        debug_assert!(g.vars == self.vars);
        let mut buckets: BTreeMap<Bigrade, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = g.grade_of(m);
            buckets
                .entry(d)
                .or_insert_with(|| Polynomial::zero(&self.vars))
                .add_term(m.clone(), c.clone());
        }
        buckets.into_iter().collect()
    }

    /// The bigrade of a non-zero homogeneous polynomial, `None` for zero or
    /// inhomogeneous input.
    pub fn bigrade(&self, g: &Bigrading) -> Option<Bigrade> {
        let mut grade = None;
        for m in self.terms.keys() {
            let d = g.grade_of(m);
            match grade {
                None => grade = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        grade
    }

    /// True when every term has bigrade `d` (vacuously true for zero).
    pub fn is_homogeneous_of(&self, g: &Bigrading, d: Bigrade) -> bool {
        self.terms.keys().all(|m| g.grade_of(m) == d)
    }

    /// Ratio `self / other` when the two polynomials are proportional by a
    /// non-zero rational scalar.
    pub fn proportionality(&self, other: &Polynomial) -> Option<Rat> {
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return None;
        }
        let mut ratio: Option<Rat> = None;
        for ((m1, c1), (m2, c2)) in self.terms.iter().zip(other.terms.iter()) {
            if m1 != m2 {
                return None;
            }
            let q = c1 / c2;
            match &ratio {
                None => ratio = Some(q),
                Some(r) if *r != q => return None,
                _ => {}
            }
        }
        ratio
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_text(self))
    }
}

/// Canonical text rendering: terms descending graded-lex, unit coefficients
/// omitted, exponents as `name^e`.
pub fn format_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = is_negative(c);
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = if neg { -c.clone() } else { c.clone() };
        let mut mono = String::new();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !mono.is_empty() {
                mono.push('*');
            }
            mono.push_str(p.vars().name(i));
            if e > 1 {
                mono.push_str(&format!("^{e}"));
            }
        }
        if mono.is_empty() {
            out.push_str(&format_rat(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_rat(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// Parses the canonical text grammar: a signed sum of terms
/// `coeff*var^e*...` where `coeff` is an integer or `p/q` and unit
/// coefficients may be omitted. Errors carry the byte position.
pub fn parse_text(vars: &VarSet, input: &str) -> Result<Polynomial> {
    Parser {
        vars,
        bytes: input.as_bytes(),
        pos: 0,
    }
    .parse()
}

struct Parser<'a> {
    vars: &'a VarSet,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Polynomial> {
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut acc = Polynomial::zero(self.vars);
        let mut sign = 1i64;
        if let Some(b) = self.peek() {
            if b == b'+' || b == b'-' {
                self.pos += 1;
                if b == b'-' {
                    sign = -1;
                }
                self.skip_ws();
            }
        }
        loop {
            let term = self.parse_term(sign)?;
            acc = acc.add(&term)?;
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                Some(_) => return self.err("expected `+` or `-` between terms"),
            }
            self.skip_ws();
        }
        Ok(acc)
    }

    fn parse_term(&mut self, sign: i64) -> Result<Polynomial> {
        let mut coeff = Rat::from_integer(sign.into());
        let mut exps = vec![0u32; self.vars.len()];
        let mut saw_atom = false;
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let num = self.parse_uint_big()?;
                let mut c = Rat::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.parse_uint_big()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    c /= Rat::from_integer(den);
                }
                coeff *= c;
                saw_atom = true;
            }
            _ => {}
        }
        loop {
            if saw_atom {
                if self.peek() != Some(b'*') {
                    break;
                }
                self.pos += 1;
            }
            self.parse_var_factor(&mut exps)?;
            saw_atom = true;
        }
        Polynomial::monomial(self.vars, Monomial::new(exps), coeff)
    }

    fn parse_var_factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
            _ => return self.err("expected a variable name"),
        }
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let index = match self.vars.index_of(name) {
            Ok(i) => i,
            Err(_) => {
                self.pos = start;
                return self.err(&format!("unknown variable `{name}`"));
            }
        };
        let mut e = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            e = self.parse_uint_u32()?;
        }
        exps[index] = exps[index].checked_add(e).ok_or_else(|| Error::Parse {
            pos: self.pos,
            msg: "exponent overflow".into(),
        })?;
        Ok(())
    }

    fn parse_uint_big(&mut self) -> Result<num_bigint::BigInt> {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "bad integer".into(),
        })
    }

    fn parse_uint_u32(&mut self) -> Result<u32> {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return self.err("expected an exponent");
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "exponent too large".into(),
        })
    }
}

/// All monomials of bigrade exactly `d`, restricted to `restrict` when
/// given, in ascending canonical order. Requires non-negative weights with
/// at least one positive component per admissible variable.
pub fn monomial_basis(
    vars: &VarSet,
    g: &Bigrading,
    d: Bigrade,
    restrict: Option<&[String]>,
) -> Result<Vec<Monomial>> {
    if d.r < 0 || d.s < 0 {
        return Ok(Vec::new());
    }
    let mut allowed = vec![true; vars.len()];
    if let Some(names) = restrict {
        allowed = vec![false; vars.len()];
        for n in names {
            allowed[vars.index_of(n)?] = true;
        }
    }
    for i in 0..vars.len() {
        if !allowed[i] {
            continue;
        }
        let (wr, ws) = (g.weight(i).r, g.weight(i).s);
        if wr < 0 || ws < 0 || (wr == 0 && ws == 0) {
            return Err(Error::InvalidArgument(format!(
                "cannot enumerate monomials: variable `{}` has weight ({wr},{ws})",
                vars.name(i)
            )));
        }
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars.len()];
    enumerate(vars, g, &allowed, 0, d, &mut exps, &mut out);
    out.sort();
    Ok(out)
}

fn enumerate(
    vars: &VarSet,
    g: &Bigrading,
    allowed: &[bool],
    i: usize,
    rem: Bigrade,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if i == vars.len() {
        if rem.r == 0 && rem.s == 0 {
            out.push(Monomial::new(exps.clone()));
        }
        return;
    }
    if !allowed[i] {
        enumerate(vars, g, allowed, i + 1, rem, exps, out);
        return;
    }
    let (wr, ws) = (g.weight(i).r, g.weight(i).s);
    let mut bound = u32::MAX as i64;
    if wr > 0 {
        bound = bound.min(rem.r / wr);
    }
    if ws > 0 {
        bound = bound.min(rem.s / ws);
    }
    for e in 0..=bound.max(0) {
        let left = Bigrade::new(rem.r - wr * e, rem.s - ws * e);
        if left.r < 0 || left.s < 0 {
            break;
        }
        exps[i] = e as u32;
        enumerate(vars, g, allowed, i + 1, left, exps, out);
    }
    exps[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_frac, rat_i64};

    fn vs(names: &[&str]) -> VarSet {
        VarSet::new(names.iter().copied()).unwrap()
    }

    fn p(vars: &VarSet, s: &str) -> Polynomial {
        parse_text(vars, s).unwrap()
    }

    /// Schoolbook expansion oracle: multiply term lists without any of the
    /// map machinery the implementation uses.
    fn naive_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut raw: alloc::vec::Vec<(Monomial, Rat)> = alloc::vec::Vec::new();
        for (m1, c1) in a.terms() {
            for (m2, c2) in b.terms() {
                raw.push((m1.mul(m2), c1 * c2));
            }
        }
        Polynomial::from_terms(a.vars(), raw).unwrap()
    }

    #[test]
    fn arith_examples() {
        let v = vs(&["a", "x", "v"]);
        let av_minus_x = p(&v, "a*v - x");
        let x = p(&v, "x");
        assert_eq!(av_minus_x.add(&x).unwrap(), p(&v, "a*v"));
        assert_eq!(av_minus_x.mul(&Polynomial::one(&v)).unwrap(), av_minus_x);
        // (av - x)^2, expected values frozen from the schoolbook oracle.
        let square = av_minus_x.mul(&av_minus_x).unwrap();
        assert_eq!(square, naive_mul(&av_minus_x, &av_minus_x));
        assert_eq!(square, p(&v, "a^2*v^2 - 2*a*x*v + x^2"));
    }

    #[test]
    fn varset_mismatch_is_rejected() {
        let v1 = vs(&["a", "x"]);
        let v2 = vs(&["a", "y"]);
        let e = p(&v1, "a").add(&p(&v2, "a")).unwrap_err();
        assert_eq!(e, Error::VarSetMismatch);
    }

    #[test]
    fn partial_derivative_examples() {
        let v = vs(&["a", "x", "y", "v"]);
        let q = p(&v, "a*v^2 - 2*x*v + 2*a^2*y");
        assert_eq!(q.partial_derivative("v").unwrap(), p(&v, "2*a*v - 2*x"));
        assert!(p(&v, "x").partial_derivative("v").unwrap().is_zero());
        assert_eq!(
            p(&v, "v^3").partial_derivative("v").unwrap(),
            p(&v, "3*v^2")
        );
        assert!(q.partial_derivative("zz").is_err());
    }

    #[test]
    fn substitute_examples() {
        let v = vs(&["a", "x", "y", "z"]);
        let h = p(
            &v,
            "9*a^6*z^2 - 18*a^3*x*y*z + 8*a^3*y^3 + 6*x^3*z - 3*x^2*y^2",
        );
        let mut bind = BTreeMap::new();
        bind.insert("a".to_string(), Polynomial::zero(&v));
        assert_eq!(h.substitute(&bind).unwrap(), p(&v, "6*x^3*z - 3*x^2*y^2"));

        let v2 = vs(&["a", "x", "v"]);
        let sigma1 = p(&v2, "a*v - x");
        let mut bind2 = BTreeMap::new();
        bind2.insert("v".to_string(), Polynomial::zero(&v2));
        assert_eq!(sigma1.substitute(&bind2).unwrap(), p(&v2, "-x"));
    }

    #[test]
    fn substitute_quadratic_root_vanishes_on_cable() {
        // theta_2^(0) with x_i -> x v^i / i! maps to zero.
        let om = vs(&["x0", "x1", "x2"]);
        let theta = p(&om, "2*x0*x2 - x1^2");
        let kv = vs(&["x", "v"]);
        let out = theta
            .evaluate(&kv, |name| {
                let i: u32 = name[1..].parse().unwrap();
                let xv = p(&kv, "x").mul(&p(&kv, "v").pow(i)).unwrap();
                Ok(xv.scale(&(Rat::one() / crate::rat::factorial(i as usize))))
            })
            .unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn divide_exact_examples() {
        let v = vs(&["a", "x", "v"]);
        let s1 = p(&v, "a*v - x");
        assert_eq!(
            s1.divide_exact(&p(&v, "a")).unwrap_err(),
            Error::InexactDivision
        );
        let prod = s1.mul(&p(&v, "a*v + x")).unwrap();
        assert_eq!(prod.divide_exact(&s1).unwrap(), p(&v, "a*v + x"));
        assert!(Polynomial::zero(&v).divide_exact(&s1).unwrap().is_zero());
    }

    #[test]
    fn bigrade_examples() {
        let v = vs(&["a", "x", "y", "z", "v"]);
        let g = Bigrading::new(
            &v,
            &[
                ("a", (1, 0)),
                ("x", (3, 1)),
                ("y", (3, 2)),
                ("z", (3, 3)),
                ("v", (2, 1)),
            ],
        )
        .unwrap();
        let f = p(&v, "2*a^3*y - x^2");
        let comps = f.bigrade_decompose(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].0, Bigrade::new(6, 2));
        assert!(Polynomial::zero(&v).bigrade_decompose(&g).is_empty());
        let mixed = p(&v, "a + v");
        let comps = mixed.bigrade_decompose(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], (Bigrade::new(1, 0), p(&v, "a")));
        assert_eq!(comps[1], (Bigrade::new(2, 1), p(&v, "v")));
        assert_eq!(mixed.bigrade(&g), None);
        assert_eq!(f.bigrade(&g), Some(Bigrade::new(6, 2)));
    }

    #[test]
    fn monomial_basis_examples() {
        // Omega variables x0..x5 with deg x_i = (1, i).
        let v = vs(&["x0", "x1", "x2", "x3", "x4", "x5"]);
        let g = Bigrading::new(
            &v,
            &[
                ("x0", (1, 0)),
                ("x1", (1, 1)),
                ("x2", (1, 2)),
                ("x3", (1, 3)),
                ("x4", (1, 4)),
                ("x5", (1, 5)),
            ],
        )
        .unwrap();
        let b24 = monomial_basis(&v, &g, Bigrade::new(2, 4), None).unwrap();
        assert_eq!(b24.len(), 3);
        let names: Vec<String> = b24
            .iter()
            .map(|m| format_text(&Polynomial::monomial(&v, m.clone(), Rat::one()).unwrap()))
            .collect();
        assert_eq!(names, vec!["x2^2", "x1*x3", "x0*x4"]);
        // dim of the quadratic piece at odd weight n is (n+1)/2.
        assert_eq!(
            monomial_basis(&v, &g, Bigrade::new(2, 5), None)
                .unwrap()
                .len(),
            3
        );

        let dim5 = vs(&["a", "x", "y", "z", "v"]);
        let g5 = Bigrading::new(
            &dim5,
            &[
                ("a", (1, 0)),
                ("x", (3, 1)),
                ("y", (3, 2)),
                ("z", (3, 3)),
                ("v", (2, 1)),
            ],
        )
        .unwrap();
        let b10 = monomial_basis(&dim5, &g5, Bigrade::new(1, 0), None).unwrap();
        assert_eq!(b10.len(), 1);
        assert_eq!(b10[0], Monomial::var(5, 0));
    }

    #[test]
    fn format_examples() {
        let v = vs(&["a", "x", "v"]);
        assert_eq!(format_text(&p(&v, "a*v - x")), "a*v - x");
        assert!(parse_text(&v, "0").unwrap().is_zero());
        let om = vs(&["x0", "x1", "x2"]);
        assert_eq!(format_text(&p(&om, "2*x0*x2 - x1^2")), "2*x0*x2 - x1^2");
        // Rational coefficients and constants.
        let q = Polynomial::constant(&v, rat_frac(-1, 2));
        assert_eq!(format_text(&q), "-1/2");
        assert_eq!(
            p(&v, "1/2*a*v^2 - x"),
            p(&v, "a*v^2")
                .scale(&rat_frac(1, 2))
                .sub(&p(&v, "x"))
                .unwrap()
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        let v = vs(&["a", "x"]);
        match parse_text(&v, "a + q") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_text(&v, "").is_err());
        assert!(parse_text(&v, "a ++ x").is_err());
        assert!(parse_text(&v, "2/0*a").is_err());
    }

    #[test]
    fn embed_between_varsets() {
        let small = vs(&["x", "v"]);
        let big = vs(&["a", "x", "y", "v"]);
        let q = p(&small, "x*v^2 - 3*x");
        let e = q.embed(&big).unwrap();
        assert_eq!(e, p(&big, "x*v^2 - 3*x"));
        assert!(p(&big, "a").embed(&small).is_err());
    }

    #[test]
    fn proportionality_detects_scalars() {
        let v = vs(&["a", "x"]);
        let q = p(&v, "2*a^2 - 4*x");
        let r = p(&v, "a^2 - 2*x");
        assert_eq!(q.proportionality(&r), Some(rat_i64(2)));
        assert_eq!(r.proportionality(&q), Some(rat_frac(1, 2)));
        assert_eq!(q.proportionality(&p(&v, "a^2 + x")), None);
        assert_eq!(q.proportionality(&p(&v, "a^2")), None);
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        // x0*x3 > x1*x2 in graded-lex (same degree, lex on exponents).
        let a = Monomial::new(vec![1, 0, 0, 1]);
        let b = Monomial::new(vec![0, 1, 1, 0]);
        assert!(a > b);
        // degree dominates
        let c = Monomial::new(vec![0, 0, 0, 1]);
        assert!(a > c && b > c);
    }
}
