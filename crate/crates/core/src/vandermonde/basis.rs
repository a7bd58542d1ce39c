use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::{Exponents, Ring, RingValue};
use crate::subsets::binomial;

/// Monomials of total degree `d` in `n + 1` variables, in descending
/// lexicographic order of exponent vectors: `(d,0,..,0)` first and
/// `(0,..,0,d)` last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    vars: usize,
    degree: usize,
    exponents: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl MonomialBasis {
    /// Basis for projective dimension `n >= 1` and degree `d`.
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported(
                "projective dimension 0 has no monomial basis here (n must be >= 1)".into(),
            ));
        }
        Ok(Self::in_variables(n + 1, d))
    }

    /// Basis in any positive number of variables; used for symmetric powers
    /// of rank-one modules as well.
    pub(crate) fn in_variables(vars: usize, degree: usize) -> Self {
        assert!(vars >= 1, "at least one variable");
        let mut exponents = Vec::with_capacity(binomial(vars - 1 + degree, degree));
        let mut current = vec![0u32; vars];
        fill(&mut exponents, &mut current, 0, degree as u32);
        let index = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis {
            vars,
            degree,
            exponents,
            index,
        }
    }

    /// Projective dimension, i.e. the variable count minus one.
    pub fn n(&self) -> usize {
        self.vars - 1
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn d(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Exponents] {
        &self.exponents
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Every basis monomial evaluated at `point` (the Veronese image).
    pub fn evaluate(&self, ring: &Ring, point: &[RingValue]) -> Result<Vec<RingValue>> {
        if point.len() != self.vars {
            return Err(Error::Arity {
                expected: self.vars,
                got: point.len(),
            });
        }
        let powers: Vec<Vec<RingValue>> = point
            .iter()
            .map(|x| {
                let mut p = vec![ring.one()];
                for k in 0..self.degree {
                    let next = p[k].try_mul(x)?;
                    p.push(next);
                }
                Ok(p)
            })
            .collect::<Result<_>>()?;
        self.exponents
            .iter()
            .map(|e| {
                e.iter().enumerate().try_fold(ring.one(), |acc, (i, &k)| {
                    if k == 0 {
                        Ok(acc)
                    } else {
                        acc.try_mul(&powers[i][k as usize])
                    }
                })
            })
            .collect()
    }

    /// Coefficients, in basis order, of the product of linear forms
    /// `sum_k f[k] Y_k`. The number of forms must equal the degree.
    pub fn product_of_linear_forms(
        &self,
        ring: &Ring,
        forms: &[&[RingValue]],
    ) -> Result<Vec<RingValue>> {
        if forms.len() != self.degree {
            return Err(Error::shape(format!(
                "{} linear forms for a degree-{} basis",
                forms.len(),
                self.degree
            )));
        }
        let mut acc: HashMap<Exponents, RingValue> =
            HashMap::from([(vec![0; self.vars], ring.one())]);
        for form in forms {
            if form.len() != self.vars {
                return Err(Error::Arity {
                    expected: self.vars,
                    got: form.len(),
                });
            }
            let mut next: HashMap<Exponents, RingValue> = HashMap::with_capacity(acc.len() * 2);
            for (e, c) in &acc {
                for (k, coeff) in form.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut grown = e.clone();
                    grown[k] += 1;
                    let term = c.try_mul(coeff)?;
                    match next.get_mut(&grown) {
                        Some(v) => *v = v.try_add(&term)?,
                        None => {
                            next.insert(grown, term);
                        }
                    }
                }
            }
            acc = next;
        }
        Ok(self
            .exponents
            .iter()
            .map(|e| acc.remove(e).unwrap_or_else(|| ring.zero()))
            .collect())
    }
}

fn fill(out: &mut Vec<Exponents>, current: &mut Exponents, pos: usize, budget: u32) {
    if pos + 1 == current.len() {
        current[pos] = budget;
        out.push(current.clone());
        return;
    }
    for k in (0..=budget).rev() {
        current[pos] = k;
        fill(out, current, pos + 1, budget - k);
    }
    current[pos] = 0;
}
