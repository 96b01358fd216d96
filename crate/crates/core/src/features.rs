//! The ±N/±V feature system as a square sign matrix, its exact determinant and
//! rank, the Pauli block form of that matrix, and a comparison of feature
//! distance with corpus ultrametric distance.

use std::fmt;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lexdist::CategoryDistanceMatrix;
use crate::matrix::LabeledMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FeatureVector {
    pub n: Sign,
    pub v: Sign,
}

/// Four-row feature table in the fixed order Noun, Verb, Adjective,
/// Preposition. Rows are addressed by `N`/`V`/`A`/`P` or the full names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureTable {
    rows: [FeatureVector; 4],
}

pub const CATEGORIES: [&str; 4] = ["N", "V", "A", "P"];

impl FeatureTable {
    pub fn new(noun: FeatureVector, verb: FeatureVector, adjective: FeatureVector, preposition: FeatureVector) -> Self {
        FeatureTable { rows: [noun, verb, adjective, preposition] }
    }

    pub fn index(category: &str) -> Result<usize> {
        match category {
            "N" | "Noun" | "noun" => Ok(0),
            "V" | "Verb" | "verb" => Ok(1),
            "A" | "Adj" | "Adj." | "Adjective" | "adjective" => Ok(2),
            "P" | "Pre" | "Pre." | "Preposition" | "preposition" => Ok(3),
            other => Err(Error::UnknownCategory(other.to_string())),
        }
    }

    pub fn get(&self, category: &str) -> Result<FeatureVector> {
        Ok(self.rows[Self::index(category)?])
    }

    fn feature(&self, row: usize, column: usize) -> Sign {
        match column {
            0 => self.rows[row].n,
            _ => self.rows[row].v,
        }
    }
}

impl Default for FeatureTable {
    /// Noun +N −V, Verb −N +V, Adjective +N +V, Preposition −N −V.
    fn default() -> Self {
        use Sign::{Minus, Plus};
        FeatureTable::new(
            FeatureVector { n: Plus, v: Minus },
            FeatureVector { n: Minus, v: Plus },
            FeatureVector { n: Plus, v: Plus },
            FeatureVector { n: Minus, v: Minus },
        )
    }
}

/// Square ±1 matrix over N, V, A, P.
pub type SignMatrix = LabeledMatrix<i64>;

/// Builds the symmetric sign matrix whose N and V columns are the feature
/// table. The N and V rows follow by symmetry, the A and P diagonal entries
/// are +1, and `f_ap` fills the one remaining free entry `F(A,P) = F(P,A)`.
pub fn build_feature_matrix(table: &FeatureTable, f_ap: Sign) -> Result<SignMatrix> {
    let cell = |i: usize, j: usize| -> Sign {
        if j < 2 {
            table.feature(i, j)
        } else if i < 2 {
            table.feature(j, i)
        } else if i == j {
            Sign::Plus
        } else {
            f_ap
        }
    };
    for i in 0..4 {
        for j in i + 1..4 {
            if cell(i, j) != cell(j, i) {
                return Err(Error::AsymmetricFeatures(CATEGORIES[i].into(), CATEGORIES[j].into()));
            }
        }
    }
    Ok(LabeledMatrix::from_fn(CATEGORIES.iter().map(|s| s.to_string()).collect(), |i, j| {
        cell(i, j).value()
    }))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &LabeledMatrix<i64>) -> i64 {
    let n = m.size();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant fits in i64")
}

/// Rank by integer row reduction.
pub fn rank(m: &LabeledMatrix<i64>) -> usize {
    let mut a: Vec<Vec<i128>> = m.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
    let (rows, cols) = (a.len(), m.size());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c] != 0 {
                let (f, g) = (a[r][c], a[i][c]);
                for j in c..cols {
                    a[i][j] = a[i][j] * f - a[r][j] * g;
                }
                let gcd = a[i].iter().fold(0i128, |acc, &x| gcd(acc, x.abs()));
                if gcd > 1 {
                    a[i].iter_mut().for_each(|x| *x /= gcd);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Gaussian integers.
pub type GaussianInt = Complex<i64>;
type Block = [[GaussianInt; 2]; 2];

const fn c(re: i64, im: i64) -> GaussianInt {
    Complex::new(re, im)
}

pub const IDENTITY: Block = [[c(1, 0), c(0, 0)], [c(0, 0), c(1, 0)]];
pub const SIGMA_1: Block = [[c(0, 0), c(1, 0)], [c(1, 0), c(0, 0)]];
pub const SIGMA_2: Block = [[c(0, 0), c(0, -1)], [c(0, 1), c(0, 0)]];
pub const SIGMA_3: Block = [[c(1, 0), c(0, 0)], [c(0, 0), c(-1, 0)]];

fn combine(x: &Block, y: &Block, sx: GaussianInt, sy: GaussianInt) -> Block {
    let mut out = [[c(0, 0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = sx * x[i][j] + sy * y[i][j];
        }
    }
    out
}

/// The 4×4 matrix with blocks `I − σ¹`, `−iσ² + σ³` / `iσ² + σ³`, `I − σ¹`.
pub fn pauli_assembly() -> [[GaussianInt; 4]; 4] {
    let one = c(1, 0);
    let i = c(0, 1);
    let diag = combine(&IDENTITY, &SIGMA_1, one, -one);
    let upper = combine(&SIGMA_2, &SIGMA_3, -i, one);
    let lower = combine(&SIGMA_2, &SIGMA_3, i, one);
    let blocks = [[diag, upper], [lower, diag]];
    let mut out = [[c(0, 0); 4]; 4];
    for (bi, brow) in blocks.iter().enumerate() {
        for (bj, block) in brow.iter().enumerate() {
            for r in 0..2 {
                for s in 0..2 {
                    out[2 * bi + r][2 * bj + s] = block[r][s];
                }
            }
        }
    }
    out
}

/// Number of differing features (0, 1 or 2).
pub fn feature_distance(table: &FeatureTable, a: &str, b: &str) -> Result<u32> {
    let (x, y) = (table.get(a)?, table.get(b)?);
    Ok(u32::from(x.n != y.n) + u32::from(x.v != y.v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairComparison {
    pub a: String,
    pub b: String,
    pub feature_distance: u32,
    pub ultrametric_distance: u64,
}

/// Whether ultrametric distance is a monotone function of feature distance or
/// the reverse. `witnesses` lists pair couples that tie on one distance but
/// differ on the other, each of which rules out a function in that direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeatureComparison {
    pub pairs: Vec<PairComparison>,
    pub monotone_relation: bool,
    pub witnesses: Vec<(usize, usize)>,
}

pub fn compare_feature_vs_ultrametric(table: &FeatureTable, u: &CategoryDistanceMatrix) -> Result<FeatureComparison> {
    let mut pairs = Vec::new();
    for (i, a) in CATEGORIES.iter().enumerate() {
        for b in &CATEGORIES[i + 1..] {
            let ud = u
                .get_by_label(a, b)
                .map_err(|_| Error::MissingEntry(a.to_string(), b.to_string()))?
                .ok_or_else(|| Error::MissingEntry(a.to_string(), b.to_string()))?;
            pairs.push(PairComparison {
                a: a.to_string(),
                b: b.to_string(),
                feature_distance: feature_distance(table, a, b)?,
                ultrametric_distance: ud,
            });
        }
    }
    let f: Vec<i64> = pairs.iter().map(|p| i64::from(p.feature_distance)).collect();
    let d: Vec<i64> = pairs.iter().map(|p| p.ultrametric_distance as i64).collect();
    let monotone_relation = [1, -1]
        .iter()
        .any(|&dir| monotone_function(&f, &d, dir) || monotone_function(&d, &f, dir));

    let mut witnesses = Vec::new();
    for p in 0..pairs.len() {
        for q in p + 1..pairs.len() {
            if (f[p] == f[q]) != (d[p] == d[q]) {
                witnesses.push((p, q));
            }
        }
    }
    Ok(FeatureComparison { pairs, monotone_relation, witnesses })
}

/// `y` is a function of `x`, non-decreasing when `dir = 1` and non-increasing
/// when `dir = -1`.
fn monotone_function(x: &[i64], y: &[i64], dir: i64) -> bool {
    (0..x.len()).all(|p| {
        (0..x.len()).all(|q| match x[p].cmp(&x[q]) {
            std::cmp::Ordering::Equal => y[p] == y[q],
            std::cmp::Ordering::Less => dir * y[p] <= dir * y[q],
            std::cmp::Ordering::Greater => true,
        })
    })
}
