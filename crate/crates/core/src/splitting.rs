//! Free ⊕ finite decompositions of `H_*(CP^{top}_c)` under `P_k`.
//!
//! `P_k` is monomial in the cell basis and `i ↦ i - (p^k - 1)` is injective,
//! so its Jordan blocks are the maximal chains `b_j → b_{j-s} → …` along
//! nonzero coefficients. Chains of length `p` are free summands; shorter
//! chains form the finite part. A finite window can cut a chain short only
//! from above: `b_{g+p^k-1}` hits the chain top `b_g` with coefficient
//! `g mod p`, so a short chain whose top cell is not divisible by `p` grows
//! in a longer window. Those are reported separately as boundary blocks; they
//! always sit in the top `β_k = (p-1)(p^k-1)` cells.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::nilpotent::JordanType;
use crate::stunted::{
    homology_coefficient, homology_target, pk_homology_matrix, pk_homology_operator, PkParams,
    StuntedBasis,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BetaConstants {
    pub p: u64,
    pub k: u32,
    /// `(p-1)(p^k-1)`, half the degree of `P_k^{p-1}`.
    pub beta: i64,
    /// `p^k(p-1)`, the least multiple of `p` above `beta`.
    pub beta_hat: i64,
}

pub fn beta_constants(params: PkParams) -> BetaConstants {
    let p = params.p as i64;
    let beta = (p - 1) * params.shift;
    let beta_hat = params.pk() * (p - 1);
    debug_assert!(beta_hat % p == 0 && beta < beta_hat && beta_hat <= beta + p);
    BetaConstants {
        p: params.p,
        k: params.k,
        beta,
        beta_hat,
    }
}

/// A Jordan chain `b_generator → … → b_socle` of `P_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Block {
    pub socle: i64,
    pub generator: i64,
    pub size: usize,
}

impl Block {
    pub fn socle_degree(&self) -> i64 {
        StuntedBasis::degree(self.socle)
    }

    pub fn generator_degree(&self) -> i64 {
        StuntedBasis::degree(self.generator)
    }

    /// Cell indices from generator down to socle.
    pub fn cells(&self, shift: i64) -> impl Iterator<Item = i64> + '_ {
        (0..self.size as i64).map(move |t| self.generator - t * shift)
    }
}

/// Jordan chains of `P_k` on the given window, ordered by socle.
pub fn pk_chains(params: PkParams, basis: StuntedBasis) -> Vec<Block> {
    let has_preimage = |i: i64| {
        let src = i + params.shift;
        basis.contains(src) && homology_coefficient(params, src) != 0
    };
    let mut blocks: Vec<Block> = basis
        .indices()
        .filter(|&i| !has_preimage(i))
        .map(|generator| {
            let (mut socle, mut size) = (generator, 1);
            while let Some(t) = homology_target(params, basis, socle) {
                if homology_coefficient(params, socle) == 0 {
                    break;
                }
                socle = t;
                size += 1;
            }
            Block { socle, generator, size }
        })
        .collect();
    blocks.sort_unstable();
    blocks
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplittingReport {
    pub params: PkParams,
    pub c: i64,
    pub top: i64,
    pub jordan: JordanType,
    pub free_rank: usize,
    pub free_blocks: Vec<Block>,
    pub free_generator_degrees: Vec<i64>,
    pub free_socle_degrees: Vec<i64>,
    pub finite_blocks: Vec<Block>,
    pub finite_socle_degrees: Vec<i64>,
    pub boundary_blocks: Vec<Block>,
}

/// Decomposes `H_*(CP^{top}_c)` as a `B(k)`-module.
pub fn decompose_stunted(params: PkParams, c: i64, top: i64) -> Result<SplittingReport> {
    let basis = StuntedBasis::new(c, top)?;
    let jordan = pk_homology_operator(params, basis).jordan_type();
    let blocks = pk_chains(params, basis);

    let chain_type = JordanType::new(params.p, blocks.iter().map(|b| b.size).collect());
    if chain_type != jordan {
        return Err(Error::Inconsistent("chain decomposition disagrees with rank profile"));
    }

    let p = params.p as usize;
    let (mut free, mut finite, mut boundary) = (Vec::new(), Vec::new(), Vec::new());
    for b in blocks {
        if b.size == p {
            free.push(b);
        } else if b.generator.rem_euclid(p as i64) != 0 {
            boundary.push(b);
        } else {
            finite.push(b);
        }
    }
    Ok(SplittingReport {
        params,
        c,
        top,
        jordan,
        free_rank: free.len(),
        free_generator_degrees: free.iter().map(Block::generator_degree).collect(),
        free_socle_degrees: free.iter().map(Block::socle_degree).collect(),
        free_blocks: free,
        finite_socle_degrees: finite.iter().map(Block::socle_degree).collect(),
        finite_blocks: finite,
        boundary_blocks: boundary,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeGeneratorCheck {
    /// Cells `b_{pi}` whose whole `P_k`-orbit lies in `[c, top]`,
    /// i.e. `pi - β_k >= c`.
    pub predicted: Vec<i64>,
    /// Cells `b_{pi}`, `c <= pi <= top`, with `i > (β_k - c)/p`.
    pub literal_threshold: Vec<i64>,
    /// Every predicted cell has `P_k^{p-1}(b_{pi}) ≠ 0`.
    pub all_nonzero: bool,
    /// The images `P_k^{p-1}(b_{pi})` are linearly independent.
    pub independent: bool,
    /// Number of predicted cells equals the free rank of the decomposition.
    pub count_matches: bool,
    pub free_rank: usize,
}

impl FreeGeneratorCheck {
    pub fn passed(&self) -> bool {
        self.all_nonzero && self.independent && self.count_matches
    }

    /// Whether every literal-threshold cell is among the predicted ones.
    pub fn literal_threshold_sound(&self) -> bool {
        self.literal_threshold.iter().all(|i| self.predicted.contains(i))
    }
}

/// Checks that the cells `b_{pi}` generate the free part.
pub fn verify_free_generators(params: PkParams, c: i64, top: i64) -> Result<FreeGeneratorCheck> {
    let basis = StuntedBasis::new(c, top)?;
    let report = decompose_stunted(params, c, top)?;
    let p = params.p as i64;
    let beta = beta_constants(params).beta;

    let multiples: Vec<i64> = basis.indices().filter(|i| i.rem_euclid(p) == 0).collect();
    let predicted: Vec<i64> = multiples.iter().copied().filter(|&j| j - beta >= c).collect();
    // i > (β - c)/p  ⟺  p·i > β - c
    let literal_threshold: Vec<i64> = multiples.iter().copied().filter(|&j| j > beta - c).collect();

    let top_power = pk_homology_matrix(params, basis).pow(params.p - 1)?;
    let images: Vec<Vec<u64>> = predicted.iter().map(|&j| top_power.column(basis.position(j))).collect();
    let all_nonzero = images.iter().all(|v| v.iter().any(|&x| x != 0));
    let independent = FpMatrix::from_columns(params.field(), basis.len(), &images).rank() == images.len();

    Ok(FreeGeneratorCheck {
        count_matches: predicted.len() == report.free_rank,
        free_rank: report.free_rank,
        predicted,
        literal_threshold,
        all_nonzero,
        independent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FiniteSupport {
    /// Highest degree of a cell in a finite block; `None` if there are none.
    pub max_degree: Option<i64>,
    /// `2(c + β̂_k - 1)`.
    pub skeleton_degree: i64,
    /// `2(c + β̂_k)`.
    pub alt_skeleton_degree: i64,
    pub within_skeleton: bool,
    pub within_alt_skeleton: bool,
}

/// Where the finite part of `H_*(CP^{top}_c)` lives, for `p | c`.
pub fn finite_part_support(params: PkParams, c: i64, top: i64) -> Result<FiniteSupport> {
    if c.rem_euclid(params.p as i64) != 0 {
        return Err(Error::NotDivisible { c, p: params.p });
    }
    let consts = beta_constants(params);
    if top - consts.beta < c {
        return Err(Error::EmptyRange { bot: c, top: top - consts.beta });
    }
    let report = decompose_stunted(params, c, top)?;
    let max_degree = report.finite_blocks.iter().map(Block::generator_degree).max();
    let skeleton_degree = 2 * (c + consts.beta_hat - 1);
    let alt_skeleton_degree = 2 * (c + consts.beta_hat);
    Ok(FiniteSupport {
        max_degree,
        skeleton_degree,
        alt_skeleton_degree,
        within_skeleton: max_degree.is_none_or(|d| d <= skeleton_degree),
        within_alt_skeleton: max_degree.is_none_or(|d| d <= alt_skeleton_degree),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThomShift {
    pub c: i64,
    pub linear: bool,
    /// Least `i` where `P_k(b_i)` and `P_k(b_{i+c})` carry different coefficients.
    pub first_mismatch: Option<i64>,
}

/// Compares `P_k` on `CP^{top}_0` with `P_k` on `CP^{top+c}_c` under
/// `b_i ↦ b_{i+c}`.
pub fn thom_shift_linearity(params: PkParams, c: i64, top: i64) -> Result<ThomShift> {
    let base = StuntedBasis::new(0, top)?;
    let shifted = StuntedBasis::new(c, top + c)?;
    let a = pk_homology_matrix(params, base);
    let b = pk_homology_matrix(params, shifted);
    // Positions line up: position of b_i in `base` equals that of b_{i+c} in `shifted`.
    let first_mismatch = base.indices().find(|&i| {
        let col = base.position(i);
        (0..base.len()).any(|row| a.get(row, col) != b.get(row, col))
    });
    Ok(ThomShift {
        c,
        linear: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TateTransition {
    pub source_bot: i64,
    pub target_bot: i64,
    pub top: i64,
    pub target_free_rank: usize,
    /// Socle of the target free part lies in the image of the source free part.
    pub socle_contained: bool,
    /// Source free part maps onto the target free part after projecting
    /// away the target's finite and boundary blocks.
    pub surjective: bool,
}

impl TateTransition {
    pub fn passed(&self) -> bool {
        self.socle_contained && self.surjective
    }
}

/// Models the coskeletal collapse `CP^{top}_s → CP^{top}_{s+β̂_k}` on free parts.
pub fn tate_transition_surjective(params: PkParams, s: i64, top: i64) -> Result<TateTransition> {
    let target_bot = s + beta_constants(params).beta_hat;
    let source = decompose_stunted(params, s, top)?;
    let target = decompose_stunted(params, target_bot, top)?;
    let tb = StuntedBasis::new(target_bot, top)?;
    let field = params.field();
    let shift = params.shift;

    let unit = |i: i64| {
        let mut v = alloc::vec![0u64; tb.len()];
        v[tb.position(i)] = 1;
        v
    };
    // Collapse sends b_j to b_j above the new bottom cell, to zero below it.
    let image: Vec<Vec<u64>> = source
        .free_blocks
        .iter()
        .flat_map(|b| b.cells(shift).collect::<Vec<_>>())
        .filter(|&j| tb.contains(j))
        .map(unit)
        .collect();
    let socle: Vec<Vec<u64>> = target.free_blocks.iter().map(|b| unit(b.socle)).collect();

    let image_rank = FpMatrix::from_columns(field, tb.len(), &image).rank();
    let mut with_socle = image.clone();
    with_socle.extend(socle);
    let socle_contained = FpMatrix::from_columns(field, tb.len(), &with_socle).rank() == image_rank;

    let free_cells: Vec<i64> = target.free_blocks.iter().flat_map(|b| b.cells(shift).collect::<Vec<_>>()).collect();
    let projected: Vec<Vec<u64>> = image
        .iter()
        .map(|v| {
            let mut w = v.clone();
            for i in tb.indices() {
                if !free_cells.contains(&i) {
                    w[tb.position(i)] = 0;
                }
            }
            w
        })
        .collect();
    let surjective = FpMatrix::from_columns(field, tb.len(), &projected).rank() == free_cells.len();

    Ok(TateTransition {
        source_bot: s,
        target_bot,
        top,
        target_free_rank: target.free_rank,
        socle_contained,
        surjective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KoPattern {
    pub top: i64,
    pub free_bottom_degrees: Vec<i64>,
    pub finite_blocks: Vec<Block>,
    pub boundary_blocks: Vec<Block>,
    /// One finite block `{b_0}` and free bottoms `2, 6, 10, …` with no gaps.
    pub matches: bool,
}

/// The `(p, k) = (2, 1)` decomposition of `CP^{top}_0`, compared with
/// `KO ∨ ⋁ Σ^{4j-2} KU`.
pub fn ko_pattern(top: i64) -> Result<KoPattern> {
    let params = PkParams::new(2, 1)?;
    let report = decompose_stunted(params, 0, top)?;
    let bottoms = report.free_socle_degrees;
    let expected = (1..=bottoms.len() as i64).map(|j| 4 * j - 2);
    let single_finite = matches!(
        report.finite_blocks.as_slice(),
        [Block { socle: 0, generator: 0, size: 1 }]
    );
    Ok(KoPattern {
        top,
        matches: single_finite && bottoms.iter().copied().eq(expected),
        free_bottom_degrees: bottoms,
        finite_blocks: report.finite_blocks,
        boundary_blocks: report.boundary_blocks,
    })
}
