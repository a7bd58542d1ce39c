//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Terms are kept sorted by descending lexicographic order on exponent
//! vectors and no stored coefficient is ever zero, so two polynomials are
//! equal exactly when their term lists are equal.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Exponent vector of a single term; its length is the variable count.
pub type Exponents = Vec<u32>;

/// Ordered list of variable names. Two polynomials live in the same ring
/// iff their variable lists are equal.
#[derive(Clone, Debug, Eq)]
pub struct Variables(Arc<[String]>);

impl Variables {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Parse(format!("invalid variable name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::Parse(format!("duplicate variable name {name:?}")));
            }
        }
        Ok(Variables(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl PartialEq for Variables {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Hash for Variables {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl fmt::Display for Variables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Variables,
    terms: Vec<(Exponents, BigInt)>,
}

impl MultiPoly {
    pub fn zero(vars: &Variables) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &Variables, c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((vec![0; vars.len()], c));
        }
        p
    }

    pub fn one(vars: &Variables) -> Self {
        Self::constant(vars, BigInt::one())
    }

    /// The polynomial consisting of the single variable with index `i`.
    pub fn variable(vars: &Variables, i: usize) -> Result<Self> {
        if i >= vars.len() {
            return Err(Error::Index(format!(
                "variable {i} of a ring with {} variables",
                vars.len()
            )));
        }
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(MultiPoly {
            vars: vars.clone(),
            terms: vec![(e, BigInt::one())],
        })
    }

    /// Builds a polynomial from arbitrary terms: duplicates are merged, zero
    /// coefficients dropped and the result sorted canonically.
    pub fn from_terms<I>(vars: &Variables, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut acc: BTreeMap<Reverse<Exponents>, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Arity {
                    expected: vars.len(),
                    got: e.len(),
                });
            }
            *acc.entry(Reverse(e)).or_default() += c;
        }
        Ok(MultiPoly {
            vars: vars.clone(),
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(Reverse(e), c)| (e, c))
                .collect(),
        })
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    /// Number of terms; see [`MultiPoly::is_zero`] for the empty case.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&k| k == 0)
    }

    pub fn constant_term(&self) -> BigInt {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&k| k == 0) => c.clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: format!("poly{}", self.vars),
                right: format!("poly{}", other.vars),
            })
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let sign = |c: &BigInt| if negate_other { -c } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    std::cmp::Ordering::Greater => {
                        out.push((ea.clone(), ca.clone()));
                        a.next();
                    }
                    std::cmp::Ordering::Less => {
                        out.push((eb.clone(), sign(cb)));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let c = if negate_other { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((ea.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ea, ca)), None) => {
                    out.push((ea.clone(), ca.clone()));
                    a.next();
                }
                (None, Some((eb, cb))) => {
                    out.push((eb.clone(), sign(cb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        // Iterate over the shorter operand in the inner loop.
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (se, sc) = &small.terms[0];
            // Multiplying by a monomial preserves the term order.
            return Ok(MultiPoly {
                vars: self.vars.clone(),
                terms: big
                    .terms
                    .iter()
                    .map(|(e, c)| (add_exponents(e, se), c * sc))
                    .collect(),
            });
        }
        let terms = match packed_product(big, small) {
            Some(terms) => terms,
            None => generic_product(big, small, self.vars.len()),
        };
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Exact division by leading-term reduction in descending lex order.
    ///
    /// Fails with [`Error::InexactDivision`] as soon as a leading term of the
    /// running remainder is not divisible by the divisor's leading term.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if divisor.terms.len() == 1 {
            let (de, dc) = &divisor.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let qe = sub_exponents(e, de).ok_or_else(|| self.inexact(divisor))?;
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return Err(self.inexact(divisor));
                }
                terms.push((qe, q));
            }
            return Ok(MultiPoly {
                vars: self.vars.clone(),
                terms,
            });
        }

        let (lead_e, lead_c) = &divisor.terms[0];
        let mut rem: BTreeMap<Reverse<Exponents>, BigInt> = self
            .terms
            .iter()
            .map(|(e, c)| (Reverse(e.clone()), c.clone()))
            .collect();
        let mut quotient = Vec::new();
        while let Some((Reverse(e), c)) = rem.pop_first() {
            let qe = sub_exponents(&e, lead_e).ok_or_else(|| self.inexact(divisor))?;
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(self.inexact(divisor));
            }
            for (de, dc) in &divisor.terms[1..] {
                let key = Reverse(add_exponents(&qe, de));
                let delta = &qc * dc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quotient.push((qe, qc));
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms: quotient,
        })
    }

    fn inexact(&self, divisor: &Self) -> Error {
        Error::InexactDivision(format!(
            "({}) / ({}) leaves a remainder",
            self.to_text(),
            divisor.to_text()
        ))
    }

    /// Canonical text: terms in descending lex order, `*` between factors,
    /// `^k` for powers above one, `" + "` / `" - "` between terms.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let constant = e.iter().all(|&k| k == 0);
            if constant || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (name, &k) in self.vars.names().iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses text in the grammar produced by [`MultiPoly::to_text`]; any
    /// variable that occurs must belong to `vars`.
    pub fn parse(text: &str, vars: &Variables) -> Result<Self> {
        let mut terms = Vec::new();
        for (negative, factors) in parse_terms(text)? {
            let mut coeff = BigInt::one();
            let mut e = vec![0u32; vars.len()];
            for f in factors {
                match f {
                    Factor::Int(k) => coeff *= k,
                    Factor::Power(name, k) => {
                        let i = vars.position(&name).ok_or_else(|| {
                            Error::Parse(format!("unknown variable {name:?} (ring {vars})"))
                        })?;
                        e[i] += k;
                    }
                }
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((e, coeff));
        }
        Self::from_terms(vars, terms)
    }

    /// Variable names occurring in `text`, in order of first appearance.
    pub fn scan_variables(text: &str) -> Result<Vec<String>> {
        let mut names: Vec<String> = Vec::new();
        for (_, factors) in parse_terms(text)? {
            for f in factors {
                if let Factor::Power(name, _) = f {
                    if !names.contains(&name) {
                        names.push(name);
                    }
                }
            }
        }
        Ok(names)
    }

    /// Evaluates every variable at the given exponent-free substitution,
    /// using `lift` to embed integer coefficients and `mul`/`add` of the
    /// target ring. Kept generic so the ring layer can drive it.
    pub(crate) fn evaluate_with<T, L, M, A>(
        &self,
        point: &[T],
        zero: T,
        one: T,
        lift: L,
        mul: M,
        add: A,
    ) -> Result<T>
    where
        T: Clone,
        L: Fn(&BigInt) -> T,
        M: Fn(&T, &T) -> Result<T>,
        A: Fn(&T, &T) -> Result<T>,
    {
        if point.len() != self.vars.len() {
            return Err(Error::Arity {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        // powers[i][k] = point[i]^k, filled lazily up to the needed degree
        let mut powers: Vec<Vec<T>> = point.iter().map(|_| vec![one.clone()]).collect();
        let mut acc = zero;
        for (e, c) in &self.terms {
            let mut term = lift(c);
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = mul(powers[i].last().unwrap(), &point[i])?;
                    powers[i].push(next);
                }
                if k > 0 {
                    term = mul(&term, &powers[i][k])?;
                }
            }
            acc = add(&acc, &term)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn generic_product(big: &MultiPoly, small: &MultiPoly, nvars: usize) -> Vec<(Exponents, BigInt)> {
    let mut acc: HashMap<Exponents, BigInt> =
        HashMap::with_capacity(big.len().saturating_mul(small.len()).min(1 << 20));
    let mut key = vec![0u32; nvars];
    for (ea, ca) in &big.terms {
        for (eb, cb) in &small.terms {
            for (k, (x, y)) in key.iter_mut().zip(ea.iter().zip(eb)) {
                *k = x + y;
            }
            let prod = ca * cb;
            match acc.get_mut(&key) {
                Some(c) => *c += prod,
                None => {
                    acc.insert(key.clone(), prod);
                }
            }
        }
    }
    let mut terms: Vec<(Exponents, BigInt)> =
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    terms
}

/// Product with each exponent vector packed into one `u128`, first variable
/// in the high bits so that integer order is lex order. `None` when the
/// exponents do not fit.
fn packed_product(big: &MultiPoly, small: &MultiPoly) -> Option<Vec<(Exponents, BigInt)>> {
    let nvars = big.vars.len();
    if nvars == 0 {
        return None;
    }
    let max_exp = |p: &MultiPoly| {
        p.terms
            .iter()
            .flat_map(|(e, _)| e.iter().copied())
            .max()
            .unwrap_or(0)
    };
    let top = u64::from(max_exp(big)) + u64::from(max_exp(small));
    let bits = (64 - top.leading_zeros()).max(1) as usize;
    if bits * nvars > 128 {
        return None;
    }
    let pack = |e: &[u32]| e.iter().fold(0u128, |k, &x| (k << bits) | u128::from(x));
    let a: Vec<u128> = big.terms.iter().map(|(e, _)| pack(e)).collect();
    let b: Vec<u128> = small.terms.iter().map(|(e, _)| pack(e)).collect();
    let mask = (1u128 << bits) - 1;
    let unpack = |mut k: u128| {
        let mut e = vec![0u32; nvars];
        for slot in e.iter_mut().rev() {
            *slot = (k & mask) as u32;
            k >>= bits;
        }
        e
    };
    let cap = big.len().saturating_mul(small.len()).min(1 << 22);

    if let (Some(ca), Some(cb)) = (small_coefficients(big), small_coefficients(small)) {
        let sum_abs = |c: &[i64]| {
            c.iter()
                .try_fold(0u128, |s, &x| s.checked_add(u128::from(x.unsigned_abs())))
        };
        let bound = sum_abs(&ca)?.checked_mul(sum_abs(&cb)?)?;
        if bound < 1 << 126 {
            let mut acc: FxHashMap<u128, i128> =
                FxHashMap::with_capacity_and_hasher(cap, Default::default());
            for (ka, &xa) in a.iter().zip(&ca) {
                for (kb, &xb) in b.iter().zip(&cb) {
                    *acc.entry(ka + kb).or_insert(0) += i128::from(xa) * i128::from(xb);
                }
            }
            let mut terms: Vec<(u128, i128)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
            terms.sort_unstable_by_key(|t| Reverse(t.0));
            return Some(
                terms
                    .into_iter()
                    .map(|(k, c)| (unpack(k), BigInt::from(c)))
                    .collect(),
            );
        }
    }

    let mut acc: FxHashMap<u128, BigInt> =
        FxHashMap::with_capacity_and_hasher(cap, Default::default());
    for (ka, (_, ca)) in a.iter().zip(&big.terms) {
        for (kb, (_, cb)) in b.iter().zip(&small.terms) {
            let prod = ca * cb;
            match acc.get_mut(&(ka + kb)) {
                Some(c) => *c += prod,
                None => {
                    acc.insert(ka + kb, prod);
                }
            }
        }
    }
    let mut terms: Vec<(u128, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by_key(|t| Reverse(t.0));
    Some(terms.into_iter().map(|(k, c)| (unpack(k), c)).collect())
}

fn small_coefficients(p: &MultiPoly) -> Option<Vec<i64>> {
    p.terms.iter().map(|(_, c)| i64::try_from(c).ok()).collect()
}

fn add_exponents(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_exponents(a: &[u32], b: &[u32]) -> Option<Exponents> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

enum Factor {
    Int(BigInt),
    Power(String, u32),
}

/// Splits polynomial text into signed terms, each a list of factors.
fn parse_terms(text: &str) -> Result<Vec<(bool, Vec<Factor>)>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial text".into()));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    let err = |pos: usize, what: &str| Error::Parse(format!("{what} at offset {pos} in {text:?}"));
    loop {
        let mut negative = false;
        match chars.get(pos) {
            Some('-') => {
                negative = true;
                pos += 1;
            }
            Some('+') if !terms.is_empty() => pos += 1,
            _ if !terms.is_empty() => return Err(err(pos, "expected '+' or '-'")),
            _ => {}
        }
        let mut factors = Vec::new();
        loop {
            match chars.get(pos) {
                Some(c) if c.is_ascii_digit() => {
                    let start = pos;
                    while chars.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                        pos += 1;
                    }
                    let digits: String = chars[start..pos].iter().collect();
                    factors.push(Factor::Int(
                        digits.parse().map_err(|_| err(start, "bad integer"))?,
                    ));
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = pos;
                    while chars
                        .get(pos)
                        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                    {
                        pos += 1;
                    }
                    let name: String = chars[start..pos].iter().collect();
                    let mut k = 1u32;
                    if chars.get(pos) == Some(&'^') {
                        pos += 1;
                        let s = pos;
                        while chars.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                            pos += 1;
                        }
                        let digits: String = chars[s..pos].iter().collect();
                        k = digits.parse().map_err(|_| err(s, "bad exponent"))?;
                    }
                    factors.push(Factor::Power(name, k));
                }
                _ => return Err(err(pos, "expected integer or variable")),
            }
            if chars.get(pos) == Some(&'*') {
                pos += 1;
            } else {
                break;
            }
        }
        terms.push((negative, factors));
        if pos >= chars.len() {
            break;
        }
    }
    Ok(terms)
}
