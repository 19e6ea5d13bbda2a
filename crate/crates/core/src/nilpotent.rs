//! Modules over `R = F_p[χ]/(χ^p)`.
//!
//! A finitely generated `R`-module is the same thing as a vector space with a
//! nilpotent operator `N`, `N^p = 0`; it is a direct sum of cyclic modules
//! `R/χ^s`, `1 <= s <= p`, and the summands with `s = p` are the free ones.
//! The multiset of block sizes is recovered from the ranks of powers of `N`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp::{Field, FpMatrix, PrimeField};

/// Nilpotent operator with `N^p = 0`, optionally graded.
///
/// When degrees are given, every nonzero entry `(row, col)` must satisfy
/// `degree[row] < degree[col]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NilOperator {
    matrix: FpMatrix,
    degrees: Option<Vec<i64>>,
}

impl NilOperator {
    pub fn ungraded(matrix: FpMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("operator must be square"));
        }
        let p = matrix.field().p();
        if !matrix.pow(p)?.is_zero() {
            return Err(Error::NotNilpotent { p });
        }
        Ok(Self { matrix, degrees: None })
    }

    pub fn graded(matrix: FpMatrix, degrees: Vec<i64>) -> Result<Self> {
        if degrees.len() != matrix.rows() {
            return Err(Error::DimensionMismatch("one degree per basis vector"));
        }
        for row in 0..matrix.rows() {
            for col in 0..matrix.cols() {
                if matrix.get(row, col) != 0 && degrees[row] >= degrees[col] {
                    return Err(Error::NotDegreeDecreasing { row, col });
                }
            }
        }
        let mut op = Self::ungraded(matrix)?;
        op.degrees = Some(degrees);
        Ok(op)
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }

    pub fn p(&self) -> u64 {
        self.matrix.field().p()
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn jordan_type(&self) -> JordanType {
        jordan_type_of_matrix(&self.matrix).expect("checked nilpotent at construction")
    }
}

/// Multiset of Jordan block sizes, each in `1..=p`, stored ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct JordanType {
    pub p: u64,
    pub blocks: Vec<usize>,
}

impl JordanType {
    pub fn new(p: u64, mut blocks: Vec<usize>) -> Self {
        blocks.sort_unstable();
        Self { p, blocks }
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Number of blocks of size at least `j`.
    pub fn count_at_least(&self, j: usize) -> usize {
        self.blocks.iter().filter(|&&b| b >= j).count()
    }

    pub fn split_free_finite(&self) -> FreeFiniteSplit {
        split_free_finite(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeFiniteSplit {
    pub free_rank: usize,
    pub finite_blocks: Vec<usize>,
}

/// Jordan type of a nilpotent matrix from its power-rank profile:
/// `#{blocks of size >= j} = rank(N^{j-1}) - rank(N^j)`.
pub fn jordan_type_of_matrix(m: &FpMatrix) -> Result<JordanType> {
    let p = m.field().p();
    let profile = m.power_rank_profile(p as usize)?;
    if profile[p as usize] != 0 {
        return Err(Error::NotNilpotent { p });
    }
    let at_least: Vec<usize> = profile.windows(2).map(|w| w[0] - w[1]).collect();
    let mut blocks = Vec::new();
    for (j, &n) in at_least.iter().enumerate() {
        let longer = at_least.get(j + 1).copied().unwrap_or(0);
        let exact = n
            .checked_sub(longer)
            .ok_or(Error::Inconsistent("rank profile is not convex"))?;
        blocks.extend(core::iter::repeat_n(j + 1, exact));
    }
    Ok(JordanType::new(p, blocks))
}

pub fn split_free_finite(jt: &JordanType) -> FreeFiniteSplit {
    let p = jt.p as usize;
    FreeFiniteSplit {
        free_rank: jt.blocks.iter().filter(|&&b| b == p).count(),
        finite_blocks: jt.blocks.iter().copied().filter(|&b| b < p).collect(),
    }
}

/// Block-diagonal direct sum of nilpotent Jordan blocks of the given sizes.
/// Within each block basis vector `i + 1` maps to basis vector `i`.
pub fn jordan_block_sum(field: PrimeField, blocks: &[usize]) -> FpMatrix {
    let dim: usize = blocks.iter().sum();
    let mut m = FpMatrix::zeros(field, dim, dim);
    let mut start = 0;
    for &b in blocks {
        for i in 1..b {
            m.set(start + i - 1, start + i, 1);
        }
        start += b;
    }
    m
}

/// Element of the group ring `F_p[C_p]`, coefficients of `ζ^0, ..., ζ^{p-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl GroupRingElement {
    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: vec![0; field.p() as usize],
        }
    }

    /// `ζ^i`.
    pub fn zeta_pow(field: PrimeField, i: usize) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[i % field.p() as usize] = 1;
        e
    }

    pub fn one(field: PrimeField) -> Self {
        Self::zeta_pow(field, 0)
    }

    /// `χ = ζ - 1`.
    pub fn chi(field: PrimeField) -> Self {
        Self::zeta_pow(field, 1).sub(&Self::one(field))
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        Self {
            field: f,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        Self {
            field: f,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let p = f.p() as usize;
        let mut out = Self::zero(f);
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out.coeffs[(i + j) % p] = f.add(out.coeffs[(i + j) % p], f.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `a ⊗ b`.
    pub fn tensor(&self, other: &Self) -> GroupRingTensor {
        let f = self.field;
        let p = f.p() as usize;
        let mut t = GroupRingTensor::zero(f);
        for i in 0..p {
            for j in 0..p {
                t.coeffs[i * p + j] = f.mul(self.coeffs[i], other.coeffs[j]);
            }
        }
        t
    }

    /// Group-like coproduct `Δ(ζ^i) = ζ^i ⊗ ζ^i`, extended linearly.
    pub fn coproduct(&self) -> GroupRingTensor {
        let p = self.field.p() as usize;
        let mut t = GroupRingTensor::zero(self.field);
        for i in 0..p {
            t.coeffs[i * p + i] = self.coeffs[i];
        }
        t
    }
}

/// Element of `F_p[C_p] ⊗ F_p[C_p]` in the basis `ζ^i ⊗ ζ^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingTensor {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl GroupRingTensor {
    pub fn zero(field: PrimeField) -> Self {
        let p = field.p() as usize;
        Self {
            field,
            coeffs: vec![0; p * p],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        Self {
            field: f,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    /// Coefficients in the basis `χ^a ⊗ χ^b`, row-major in `(a, b)`.
    ///
    /// Uses `ζ^i = (1 + χ)^i = Σ_a C(i, a) χ^a`.
    pub fn chi_basis(&self) -> Vec<u64> {
        let f = self.field;
        let p = f.p() as usize;
        let binom = binomials_mod(f, p);
        let mut out = vec![0; p * p];
        for i in 0..p {
            for j in 0..p {
                let c = self.coeffs[i * p + j];
                if c == 0 {
                    continue;
                }
                for a in 0..=i {
                    for b in 0..=j {
                        let term = f.mul(c, f.mul(binom[i][a], binom[j][b]));
                        out[a * p + b] = f.add(out[a * p + b], term);
                    }
                }
            }
        }
        out
    }
}

fn binomials_mod(f: PrimeField, n: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![0; i + 1];
        row[0] = 1;
        row[i] = 1;
        for a in 1..i {
            row[a] = f.add(rows[i - 1][a - 1], rows[i - 1][a]);
        }
        rows.push(row);
    }
    rows
}

/// One `χ^a ⊗ χ^b` term of `Δ(χ)` with its Atiyah–Hirzebruch weight.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WeightedTerm {
    pub left: usize,
    pub right: usize,
    pub coeff: u64,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoproductReport {
    pub p: u64,
    pub k: u32,
    /// `Δ(χ) = χ⊗1 + 1⊗χ + χ⊗χ` holds in `F_p[C_p]^{⊗2}`.
    pub identity_holds: bool,
    /// `χ^p = 0` in `F_p[C_p]`.
    pub chi_nilpotent: bool,
    /// Weight `2 - 2p^k` assigned to `χ`.
    pub chi_weight: i64,
    pub terms: Vec<WeightedTerm>,
    /// All non-linear terms sit in strictly lower weight than `χ`, so the
    /// associated graded coproduct is `χ̄⊗1 + 1⊗χ̄`.
    pub primitive_in_graded: bool,
}

impl CoproductReport {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.chi_nilpotent && self.primitive_in_graded
    }
}

/// Expands `Δ(χ)` for `χ = ζ - 1` and checks that `χ̄` is primitive once `χ`
/// is given weight `2 - 2p^k`.
pub fn coproduct_chi_check(p: u64, k: u32) -> Result<CoproductReport> {
    let f = PrimeField::new(p)?;
    if k == 0 {
        return Err(Error::NonPositive { name: "k" });
    }
    let pk = p.checked_pow(k).ok_or(Error::Overflow("p^k"))? as i64;
    let chi_weight = 2 - 2 * pk;

    let one = GroupRingElement::one(f);
    let chi = GroupRingElement::chi(f);
    let delta = chi.coproduct();
    let expected = chi.tensor(&one).add(&one.tensor(&chi)).add(&chi.tensor(&chi));
    let identity_holds = delta == expected;
    let chi_nilpotent = chi.pow(p as usize).is_zero();

    let pu = p as usize;
    let coeffs = delta.chi_basis();
    let terms: Vec<WeightedTerm> = (0..pu * pu)
        .filter(|&idx| coeffs[idx] != 0)
        .map(|idx| {
            let (left, right) = (idx / pu, idx % pu);
            WeightedTerm {
                left,
                right,
                coeff: coeffs[idx],
                weight: (left + right) as i64 * chi_weight,
            }
        })
        .collect();

    let top_weight = terms.iter().map(|t| t.weight).max();
    let mut leading: Vec<(usize, usize, u64)> = terms
        .iter()
        .filter(|t| Some(t.weight) == top_weight)
        .map(|t| (t.left, t.right, t.coeff))
        .collect();
    leading.sort_unstable();
    let primitive_in_graded = top_weight == Some(chi_weight)
        && leading == [(0, 1, 1), (1, 0, 1)]
        && terms.iter().all(|t| t.left + t.right == 1 || t.weight < chi_weight);

    Ok(CoproductReport {
        p,
        k,
        identity_holds,
        chi_nilpotent,
        chi_weight,
        terms,
        primitive_in_graded,
    })
}
