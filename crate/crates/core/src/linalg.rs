//! Dense exact matrices and determinants over any supported ring.
//!
//! Three determinant algorithms are provided and cross-checked in the
//! test suites:
//!
//! * `cofactor`: Laplace expansion with memoised minors, kept as the
//!   small-order oracle;
//! * `berkowitz`: division-free, valid over every commutative ring;
//! * `bareiss`: fraction-free elimination, the fast path for integral
//!   domains with exact division.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingValue};

/// Largest order accepted by the memoised cofactor expansion.
pub const COFACTOR_MAX_ORDER: usize = 20;

/// Up to this order `auto` expands polynomial determinants by cofactors;
/// fraction-free elimination spends most of its time in exact division.
pub const AUTO_POLY_COFACTOR_MAX_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DetAlgorithm {
    Cofactor,
    Berkowitz,
    Bareiss,
    /// Cofactors up to order 4 (8 over polynomials), then Bareiss over the
    /// integers and Berkowitz elsewhere.
    #[default]
    Auto,
}

impl DetAlgorithm {
    pub const ALL: [DetAlgorithm; 4] = [
        DetAlgorithm::Auto,
        DetAlgorithm::Berkowitz,
        DetAlgorithm::Bareiss,
        DetAlgorithm::Cofactor,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DetAlgorithm::Cofactor => "cofactor",
            DetAlgorithm::Berkowitz => "berkowitz",
            DetAlgorithm::Bareiss => "bareiss",
            DetAlgorithm::Auto => "auto",
        }
    }
}

impl fmt::Display for DetAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DetAlgorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown determinant algorithm {s:?}")))
    }
}

/// Immutable dense matrix whose entries all live in one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<RingValue>,
}

impl ExactMatrix {
    /// Builds a matrix from row-major entries, checking the entry count and
    /// that every entry belongs to `ring`.
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<RingValue>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch {
                left: ring.to_string(),
                right: bad.ring().to_string(),
            });
        }
        Ok(ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<RingValue>>) -> Result<Self> {
        let m = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != c) {
            return Err(Error::shape(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Self::new(ring, m, c, rows.into_iter().flatten().collect())
    }

    /// Integer matrix from literal rows. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_ints_in(&Ring::Integer, rows)
    }

    /// Image of an integer matrix in `ring`. Panics on ragged input.
    pub fn from_ints_in<R: AsRef<[i64]>>(ring: &Ring, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&k| ring.from_int(k)).collect())
            .collect();
        Self::from_rows(ring.clone(), rows).expect("rectangular literal")
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    ring.one()
                } else {
                    ring.zero()
                }
            })
            .collect();
        ExactMatrix {
            ring: ring.clone(),
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingValue {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[RingValue] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[RingValue]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[RingValue] {
        &self.entries
    }

    /// Reduces every entry into `ring` through its integer value. Only
    /// integer matrices can be mapped; the target is usually `Z/p`.
    pub fn map_into(&self, ring: &Ring) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                RingValue::Int(k) => Ok(ring.from_bigint(k)),
                _ if *ring == self.ring => Ok(e.clone()),
                _ => Err(Error::Unsupported(format!(
                    "cannot map {} entries into {ring}",
                    self.ring
                ))),
            })
            .collect::<Result<_>>()?;
        Self::new(ring.clone(), self.rows, self.cols, entries)
    }

    fn check_rows(&self, idx: &[usize], what: &str) -> Result<()> {
        check_indices(idx, self.rows, what)
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j >= self.cols {
            return Err(Error::Index(format!("column {j} of {}", self.cols)));
        }
        Ok(())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        self.check_rows(rows, "row")?;
        check_indices(cols, self.cols, "column")?;
        Ok(self.select(rows, cols))
    }

    /// Rows in the given order, which need not be increasing.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        if let Some(&bad) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::Index(format!("row {bad} of {}", self.rows)));
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.select(rows, &cols))
    }

    fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        ExactMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| self.get(i, j).clone()))
            .collect();
        ExactMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn scale_column(&self, col: usize, alpha: &RingValue) -> Result<Self> {
        self.check_col(col)?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out.entries[i * self.cols + col] = self.get(i, col).try_mul(alpha)?;
        }
        Ok(out)
    }

    /// Adds `alpha` times column `src` to column `dst`.
    pub fn add_scaled_column(&self, src: usize, dst: usize, alpha: &RingValue) -> Result<Self> {
        self.check_col(src)?;
        self.check_col(dst)?;
        if src == dst {
            return Err(Error::Index(format!(
                "source and destination column are both {src}"
            )));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let delta = self.get(i, src).try_mul(alpha)?;
            out.entries[i * self.cols + dst] = self.get(i, dst).try_add(&delta)?;
        }
        Ok(out)
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> Result<Self> {
        if a >= self.rows || b >= self.rows {
            return Err(Error::Index(format!("rows {a},{b} of {}", self.rows)));
        }
        let mut out = self.clone();
        for j in 0..self.cols {
            out.entries.swap(a * self.cols + j, b * self.cols + j);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Self::new(self.ring.clone(), self.rows, other.cols, entries)
    }

    pub fn det(&self, algorithm: DetAlgorithm) -> Result<RingValue> {
        if !self.is_square() {
            return Err(Error::shape(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        match algorithm {
            DetAlgorithm::Cofactor => cofactor_det(&self.ring, n, &self.entries),
            DetAlgorithm::Berkowitz => berkowitz_det(&self.ring, n, &self.entries),
            DetAlgorithm::Bareiss => bareiss_det(&self.ring, n, self.entries.clone()),
            DetAlgorithm::Auto => {
                let poly = matches!(self.ring, Ring::Polynomial(_));
                if n <= 4 || (poly && n <= AUTO_POLY_COFACTOR_MAX_ORDER) {
                    cofactor_det(&self.ring, n, &self.entries)
                } else if matches!(self.ring, Ring::Integer) {
                    match bareiss_det(&self.ring, n, self.entries.clone()) {
                        Err(Error::InexactDivision(_)) | Err(Error::DivisionByZero) => {
                            berkowitz_det(&self.ring, n, &self.entries)
                        }
                        other => other,
                    }
                } else {
                    // Over Z/p every Bareiss division costs an inversion.
                    berkowitz_det(&self.ring, n, &self.entries)
                }
            }
        }
    }

    /// Raw minor (no cofactor sign) on strictly increasing row and column
    /// index lists of equal length.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<RingValue> {
        self.minor_with(rows, cols, DetAlgorithm::Auto)
    }

    pub fn minor_with(
        &self,
        rows: &[usize],
        cols: &[usize],
        algorithm: DetAlgorithm,
    ) -> Result<RingValue> {
        if rows.len() != cols.len() {
            return Err(Error::Index(format!(
                "{} rows but {} columns selected",
                rows.len(),
                cols.len()
            )));
        }
        self.submatrix(rows, cols)?.det(algorithm)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let texts: Vec<String> = row.iter().map(RingValue::to_text).collect();
            writeln!(f, "[{}]", texts.join(", "))?;
        }
        Ok(())
    }
}

fn check_indices(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Index(format!(
            "{what} indices {idx:?} are not strictly increasing"
        )));
    }
    if let Some(&last) = idx.last() {
        if last >= bound {
            return Err(Error::Index(format!("{what} {last} of {bound}")));
        }
    }
    Ok(())
}

/// Laplace expansion along the last row of each leading block, memoising
/// the minor on the first `k` rows for every `k`-subset of columns.
fn cofactor_det(ring: &Ring, n: usize, a: &[RingValue]) -> Result<RingValue> {
    if n == 0 {
        return Ok(ring.one());
    }
    if n > COFACTOR_MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "cofactor expansion of order {n} (max {COFACTOR_MAX_ORDER})"
        )));
    }
    // level[mask] = minor on rows 0..k and the columns in mask
    let mut level: HashMap<u32, RingValue> = HashMap::from([(0u32, ring.one())]);
    for k in 0..n {
        let mut next: HashMap<u32, RingValue> = HashMap::new();
        for (&mask, sub) in &level {
            if sub.is_zero() {
                continue;
            }
            for j in 0..n {
                if mask >> j & 1 == 1 {
                    continue;
                }
                let entry = &a[k * n + j];
                if entry.is_zero() {
                    continue;
                }
                let grown = mask | 1 << j;
                // Column j sits at position `above` within `grown`; the
                // expansion is along row k of the (k+1)x(k+1) block.
                let above = (grown & ((1u32 << j) - 1)).count_ones() as usize;
                let mut term = entry.try_mul(sub)?;
                if (k + above) % 2 == 1 {
                    term = term.neg();
                }
                match next.get_mut(&grown) {
                    Some(acc) => *acc = acc.try_add(&term)?,
                    None => {
                        next.insert(grown, term);
                    }
                }
            }
        }
        level = next;
    }
    Ok(level
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| ring.zero()))
}

/// Berkowitz's algorithm: the characteristic polynomial of each leading
/// principal block is obtained from the previous one by a Toeplitz product,
/// using ring operations only.
fn berkowitz_det(ring: &Ring, n: usize, a: &[RingValue]) -> Result<RingValue> {
    let at = |i: usize, j: usize| &a[i * n + j];
    // coefficients of det(tI - A_r), highest degree first
    let mut charpoly = vec![ring.one()];
    for r in 1..=n {
        let last = r - 1;
        // toeplitz[0] = 1, toeplitz[1] = -a, toeplitz[k+2] = -R M^k C
        let mut toeplitz = Vec::with_capacity(r + 1);
        toeplitz.push(ring.one());
        toeplitz.push(at(last, last).neg());
        let mut v: Vec<RingValue> = (0..last).map(|i| at(i, last).clone()).collect();
        for k in 0..last {
            let rv = crate::ring::sum(
                ring,
                (0..last)
                    .map(|j| at(last, j).try_mul(&v[j]))
                    .collect::<Result<Vec<_>>>()?
                    .iter(),
            )?;
            toeplitz.push(rv.neg());
            if k + 1 < last {
                v = (0..last)
                    .map(|i| {
                        let prods = (0..last)
                            .map(|j| at(i, j).try_mul(&v[j]))
                            .collect::<Result<Vec<_>>>()?;
                        crate::ring::sum(ring, prods.iter())
                    })
                    .collect::<Result<Vec<_>>>()?;
            }
        }
        let mut next = Vec::with_capacity(r + 1);
        for i in 0..=r {
            let mut acc = ring.zero();
            for (j, c) in charpoly.iter().enumerate().take(i.min(r - 1) + 1) {
                if c.is_zero() || toeplitz[i - j].is_zero() {
                    continue;
                }
                acc = acc.try_add(&toeplitz[i - j].try_mul(c)?)?;
            }
            next.push(acc);
        }
        charpoly = next;
    }
    let constant = charpoly.pop().expect("n+1 coefficients");
    Ok(if n % 2 == 1 { constant.neg() } else { constant })
}

/// Fraction-free Gaussian elimination. Pivot: first nonzero entry of the
/// column scanning downward; a column with no pivot means determinant zero.
fn bareiss_det(ring: &Ring, n: usize, mut a: Vec<RingValue>) -> Result<RingValue> {
    if n == 0 {
        return Ok(ring.one());
    }
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
            return Ok(ring.zero());
        };
        if p != k {
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let t = a[i * n + j]
                    .try_mul(&pivot)?
                    .try_sub(&lead.try_mul(&a[k * n + j])?)?;
                a[i * n + j] = if prev.is_one() {
                    t
                } else {
                    t.try_div_exact(&prev)?
                };
            }
            a[i * n + k] = ring.zero();
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn algorithms() -> [DetAlgorithm; 4] {
        DetAlgorithm::ALL
    }

    #[test]
    fn identity_and_small_examples() {
        for alg in algorithms() {
            let i3 = ExactMatrix::identity(&Ring::Integer, 3);
            assert!(i3.det(alg).unwrap().is_one(), "{alg}");
            let m = ExactMatrix::from_ints(&[[0, 1], [1, 1]]);
            assert_eq!(m.det(alg).unwrap(), RingValue::from(-1), "{alg}");
            let empty = ExactMatrix::identity(&Ring::Integer, 0);
            assert!(empty.det(alg).unwrap().is_one(), "{alg}");
        }
    }

    #[test]
    fn needs_pivoting() {
        let m = ExactMatrix::from_ints(&[
            [0, 2, 1, 3, 0],
            [0, 0, 4, 1, 1],
            [5, 1, 0, 0, 2],
            [1, 0, 0, 2, 7],
            [3, 3, 3, 0, 1],
        ]);
        let expected = m.det(DetAlgorithm::Cofactor).unwrap();
        for alg in algorithms() {
            assert_eq!(m.det(alg).unwrap(), expected, "{alg}");
        }
        let singular = ExactMatrix::from_ints(&[[0, 1, 2], [0, 3, 4], [0, 5, 6]]);
        for alg in algorithms() {
            assert!(singular.det(alg).unwrap().is_zero(), "{alg}");
        }
    }

    #[test]
    fn minors() {
        let i3 = ExactMatrix::identity(&Ring::Integer, 3);
        assert!(i3.minor(&[0, 1], &[0, 1]).unwrap().is_one());
        let m = ExactMatrix::from_ints(&[[1, 0], [0, 1], [1, 1]]);
        assert_eq!(m.minor(&[1, 2], &[0, 1]).unwrap(), RingValue::from(-1));
        assert_eq!(m.minor(&[0, 1], &[0, 1]).unwrap(), RingValue::from(1));
        let sq = ExactMatrix::from_ints(&[[2, 7, 1], [8, 2, 8], [1, 8, 2]]);
        assert_eq!(
            sq.minor(&[0, 1, 2], &[0, 1, 2]).unwrap(),
            sq.det(DetAlgorithm::Auto).unwrap()
        );
    }

    #[test]
    fn bad_minor_indices() {
        let m = ExactMatrix::from_ints(&[[1, 0], [0, 1], [1, 1]]);
        assert!(m.minor(&[1, 0], &[0, 1]).is_err());
        assert!(m.minor(&[0, 3], &[0, 1]).is_err());
        assert!(m.minor(&[0, 1], &[0]).is_err());
        assert!(m.minor(&[1, 1], &[0, 1]).is_err());
    }

    #[test]
    fn column_operations() {
        let i2 = ExactMatrix::identity(&Ring::Integer, 2);
        let added = i2.add_scaled_column(0, 1, &RingValue::from(1)).unwrap();
        assert_eq!(added, ExactMatrix::from_ints(&[[1, 1], [0, 1]]));
        assert_eq!(i2, ExactMatrix::identity(&Ring::Integer, 2));

        let m = ExactMatrix::from_ints(&[[1, 0], [0, 1], [1, 1]]);
        let scaled = m.scale_column(0, &RingValue::from(2)).unwrap();
        assert_eq!(scaled, ExactMatrix::from_ints(&[[2, 0], [0, 1], [2, 1]]));

        assert!(m.scale_column(2, &RingValue::from(2)).is_err());
        assert!(m.add_scaled_column(0, 0, &RingValue::from(2)).is_err());
        let f7 = Ring::prime_field(7).unwrap();
        assert_eq!(
            m.scale_column(0, &f7.one()).unwrap_err().code(),
            "ring-mismatch"
        );
    }

    #[test]
    fn non_square_determinant() {
        let m = ExactMatrix::from_ints(&[[1, 0], [0, 1], [1, 1]]);
        for alg in algorithms() {
            assert_eq!(m.det(alg).unwrap_err().code(), "shape-violation");
        }
    }

    #[test]
    fn constructor_validation() {
        assert!(ExactMatrix::new(Ring::Integer, 2, 2, vec![RingValue::from(1)]).is_err());
        let f5 = Ring::prime_field(5).unwrap();
        assert!(ExactMatrix::new(Ring::Integer, 1, 1, vec![f5.one()]).is_err());
        assert!(
            ExactMatrix::from_rows(Ring::Integer, vec![vec![RingValue::from(1)], vec![]]).is_err()
        );
    }

    #[test]
    fn prime_field_determinant() {
        let f7 = Ring::prime_field(7).unwrap();
        let m = ExactMatrix::from_ints_in(
            &f7,
            &[
                [3, 1, 4, 1, 5],
                [9, 2, 6, 5, 3],
                [5, 8, 9, 7, 9],
                [3, 2, 3, 8, 4],
                [6, 2, 6, 4, 3],
            ],
        );
        let over_z = ExactMatrix::from_ints(&[
            [3, 1, 4, 1, 5],
            [9, 2, 6, 5, 3],
            [5, 8, 9, 7, 9],
            [3, 2, 3, 8, 4],
            [6, 2, 6, 4, 3],
        ]);
        let expected = f7.from_bigint(
            over_z
                .det(DetAlgorithm::Cofactor)
                .unwrap()
                .as_int()
                .unwrap(),
        );
        for alg in algorithms() {
            assert_eq!(m.det(alg).unwrap(), expected, "{alg}");
        }
    }

    #[test]
    fn algorithm_names_round_trip() {
        for alg in algorithms() {
            assert_eq!(alg.name().parse::<DetAlgorithm>().unwrap(), alg);
        }
        assert!("gauss".parse::<DetAlgorithm>().is_err());
    }
}
