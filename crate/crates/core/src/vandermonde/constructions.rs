//! Matrices attached to a family of points `X` (one point per row).

use crate::error::{Error, Result};
use crate::linalg::{DetAlgorithm, ExactMatrix};
use crate::ring::{self, RingValue};
use crate::subsets::{binomial, combinations, complement, SubsetIndex, SubsetOrder};

use super::MonomialBasis;

pub fn monomial_basis(n: usize, d: usize) -> Result<MonomialBasis> {
    MonomialBasis::new(n, d)
}

/// Shape `(n, d)` of an `(n+d) x (n+1)` matrix with `n >= 1`.
pub fn hdv_shape(x: &ExactMatrix) -> Result<(usize, usize)> {
    if x.cols() < 2 {
        return Err(Error::shape(format!(
            "need at least 2 columns (n >= 1), got {}",
            x.cols()
        )));
    }
    let n = x.cols() - 1;
    if x.rows() < n {
        return Err(Error::shape(format!(
            "{}x{} matrix: need at least n = {n} rows",
            x.rows(),
            x.cols()
        )));
    }
    Ok((n, x.rows() - n))
}

/// Applies the degree-`d` Veronese map to every row of `x`.
pub fn veronese_matrix(x: &ExactMatrix, d: usize) -> Result<ExactMatrix> {
    if x.cols() < 2 {
        return Err(Error::shape(format!(
            "Veronese map needs at least 2 columns, got {}",
            x.cols()
        )));
    }
    let basis = MonomialBasis::new(x.cols() - 1, d)?;
    let mut entries = Vec::with_capacity(x.rows() * basis.len());
    for row in x.row_iter() {
        entries.extend(basis.evaluate(x.ring(), row)?);
    }
    ExactMatrix::new(x.ring().clone(), x.rows(), basis.len(), entries)
}

/// Matrix of the order-`n` minors of an `m x (n+1)` matrix.
///
/// Rows follow the omitted row sets in lex order, column `j` is the minor
/// omitting column `j`. Minors are raw: no cofactor signs.
pub fn mu_matrix(x: &ExactMatrix) -> Result<ExactMatrix> {
    let (n, _) = hdv_shape(x)?;
    let row_sets = SubsetIndex::new(x.rows(), n, SubsetOrder::LexOnOmitted)?;
    let col_sets = SubsetIndex::new(n + 1, n, SubsetOrder::LexOnOmitted)?;
    let mut entries = Vec::with_capacity(row_sets.len() * (n + 1));
    for rows in row_sets.iter() {
        for cols in col_sets.iter() {
            entries.push(x.minor(&rows, &cols)?);
        }
    }
    ExactMatrix::new(x.ring().clone(), row_sets.len(), n + 1, entries)
}

/// Product of all full-width minors (order `n+1`) of an `m x (n+1)` matrix.
/// For `m = n` the product is empty and equals one.
pub fn mu_prime(x: &ExactMatrix) -> Result<RingValue> {
    mu_prime_with(x, DetAlgorithm::Auto)
}

pub fn mu_prime_with(x: &ExactMatrix, algorithm: DetAlgorithm) -> Result<RingValue> {
    let (n, _) = hdv_shape(x)?;
    let cols: Vec<usize> = (0..=n).collect();
    let mut acc = x.ring().one();
    for rows in combinations(x.rows(), n + 1) {
        let minor = x.minor_with(&rows, &cols, algorithm)?;
        if minor.is_zero() {
            return Ok(x.ring().zero());
        }
        acc = acc.try_mul(&minor)?;
    }
    Ok(acc)
}

/// Rows are the coefficient vectors of products of `d` rows of `x` read as
/// linear forms `sum_k x_ik Y_k`; row sets in lex order on taken rows.
pub fn eta_matrix(x: &ExactMatrix, d: usize) -> Result<ExactMatrix> {
    let (n, rows_d) = hdv_shape(x)?;
    if rows_d != d {
        return Err(Error::shape(format!(
            "eta of degree {d} needs n + d = {} rows, got {}",
            n + d,
            x.rows()
        )));
    }
    let basis = MonomialBasis::new(n, d)?;
    let mut entries = Vec::with_capacity(basis.len() * basis.len());
    for s in combinations(x.rows(), d) {
        let forms: Vec<&[RingValue]> = s.iter().map(|&i| x.row(i)).collect();
        entries.extend(basis.product_of_linear_forms(x.ring(), &forms)?);
    }
    ExactMatrix::new(x.ring().clone(), basis.len(), basis.len(), entries)
}

/// Matrix of the `d`-th symmetric power of `u` on the monomial basis.
///
/// Column `j` holds the coefficients of `prod_k (u e_k)^{a_k}` where `a` is
/// the `j`-th basis exponent and `u e_k` is column `k` of `u`.
pub fn sym_power_matrix(u: &ExactMatrix, d: usize) -> Result<ExactMatrix> {
    if !u.is_square() || u.rows() == 0 {
        return Err(Error::shape(format!(
            "symmetric power needs a non-empty square matrix, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let m = u.rows();
    let basis = MonomialBasis::in_variables(m, d);
    let columns: Vec<Vec<RingValue>> = (0..m)
        .map(|k| (0..m).map(|i| u.get(i, k).clone()).collect())
        .collect();
    let size = basis.len();
    let mut by_column = Vec::with_capacity(size);
    for e in basis.exponents() {
        let forms: Vec<&[RingValue]> = e
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| std::iter::repeat_n(columns[k].as_slice(), a as usize))
            .collect();
        by_column.push(basis.product_of_linear_forms(u.ring(), &forms)?);
    }
    let entries = (0..size)
        .flat_map(|i| by_column.iter().map(move |col| col[i].clone()))
        .collect();
    ExactMatrix::new(u.ring().clone(), size, size, entries)
}

/// Pairing of the rows of the Veronese-of-minors side with the products
/// of rows: entry `(s, s')` is `prod_{j in s'} det[x_j; x_i (i not in s)]`,
/// with `s, s'` ranging over `d`-subsets in lex order on taken rows.
pub fn pairing_matrix(x: &ExactMatrix, d: usize) -> Result<ExactMatrix> {
    pairing_matrix_with(x, d, DetAlgorithm::Auto)
}

pub fn pairing_matrix_with(
    x: &ExactMatrix,
    d: usize,
    algorithm: DetAlgorithm,
) -> Result<ExactMatrix> {
    let (n, rows_d) = hdv_shape(x)?;
    if rows_d != d {
        return Err(Error::shape(format!(
            "pairing of degree {d} needs n + d = {} rows, got {}",
            n + d,
            x.rows()
        )));
    }
    let total = x.rows();
    let subsets: Vec<Vec<usize>> = combinations(total, d).collect();
    let mut entries = Vec::with_capacity(subsets.len() * subsets.len());
    for s in &subsets {
        let others = complement(total, s);
        // dets[j] = det of row j stacked on the rows outside s
        let dets = (0..total)
            .map(|j| {
                let order: Vec<usize> = std::iter::once(j).chain(others.iter().copied()).collect();
                x.select_rows(&order)?.det(algorithm)
            })
            .collect::<Result<Vec<_>>>()?;
        for s2 in &subsets {
            entries.push(ring::product(x.ring(), s2.iter().map(|&j| &dets[j]))?);
        }
    }
    ExactMatrix::new(x.ring().clone(), subsets.len(), subsets.len(), entries)
}

/// Exponent `n * C(n+d, n+1)` by which scaling one column of `X` by `a`
/// scales both sides of the degree-`d` identity in dimension `n`.
pub fn column_scaling_exponent(n: usize, d: usize) -> u64 {
    (n * binomial(n + d, n + 1)) as u64
}
