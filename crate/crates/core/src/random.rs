//! Seeded generation of random valid complexes with known decompositions.
//!
//! A complex is drawn as a direct sum of random indecomposables (so the
//! ground-truth multiset is known), then obfuscated by random invertible
//! base changes per bidegree. Used by the oracle-equivalence self tests and
//! the CLI `selftest` verb.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicomplex::Bicomplex;
use crate::linalg::Cyclotomic;
use crate::zigzag::{
    realize_square, BlockComplex, EvenKind, OddKind, ZigzagMultiset, ZigzagShape,
};

#[derive(Clone, Copy, Debug)]
pub struct RandomComplexConfig {
    /// Support is confined to [0, side−1]².
    pub side: i64,
    pub max_dim_per_bidegree: usize,
    /// Attempts to place a summand; placements that would exceed the cap
    /// are skipped.
    pub attempts: usize,
    pub field_order: u32,
    /// Random elementary base changes per bidegree.
    pub scramble: usize,
}

impl Default for RandomComplexConfig {
    fn default() -> Self {
        RandomComplexConfig {
            side: 4,
            max_dim_per_bidegree: 4,
            attempts: 10,
            field_order: 4,
            scramble: 6,
        }
    }
}

pub fn random_complex(seed: u64, cfg: &RandomComplexConfig) -> (Bicomplex, ZigzagMultiset) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut truth = ZigzagMultiset::default();
    let mut acc = Bicomplex::empty(cfg.field_order);
    for _ in 0..cfg.attempts {
        let candidate = random_summand(&mut rng, cfg);
        let piece = match candidate {
            Summand::Zig(shape) => shape.realize(cfg.field_order),
            Summand::Square(p, q) => realize_square(cfg.field_order, p, q),
        };
        // respect the per-bidegree cap and the support square
        let fits = piece.dims().iter().all(|(&(p, q), &d)| {
            p >= 0
                && q >= 0
                && p < cfg.side
                && q < cfg.side
                && acc.dim(p, q) + d <= cfg.max_dim_per_bidegree
        });
        if !fits {
            continue;
        }
        acc = acc.direct_sum(&piece).unwrap();
        match candidate {
            Summand::Zig(shape) => truth.add_shape(shape, 1),
            Summand::Square(p, q) => truth.add_square((p, q), 1),
        }
    }
    // obfuscate with random elementary base changes
    let mut bc = BlockComplex::from_bicomplex(&acc).with_dense_zero_blocks();
    let keys: Vec<(i64, i64)> = bc.dims.keys().copied().collect();
    for &(p, q) in &keys {
        let d = bc.dims[&(p, q)];
        if d < 2 {
            continue;
        }
        for _ in 0..cfg.scramble {
            let j_dst = rng.gen_range(0..d);
            let j_src = rng.gen_range(0..d);
            if j_dst == j_src {
                continue;
            }
            let c = random_unit(&mut rng, cfg.field_order);
            bc.col_addmul((p, q), j_dst, j_src, &c);
        }
    }
    let out = bc.to_bicomplex();
    debug_assert!(out.validate().is_valid());
    (out, truth)
}

enum Summand {
    Zig(ZigzagShape),
    Square(i64, i64),
}

fn random_summand(rng: &mut ChaCha8Rng, cfg: &RandomComplexConfig) -> Summand {
    let side = cfg.side;
    match rng.gen_range(0..8) {
        0 | 1 => Summand::Zig(ZigzagShape::Dot {
            p: rng.gen_range(0..side),
            q: rng.gen_range(0..side),
        }),
        2 | 3 => {
            let r = rng.gen_range(1..=3usize);
            let kind = if rng.gen_bool(0.5) { EvenKind::Column } else { EvenKind::Row };
            let (a, b) = random_anchor(rng, side, r as i64, kind == EvenKind::Column);
            Summand::Zig(ZigzagShape::Even { anchor: (a, b), r, kind })
        }
        4 | 5 => {
            let s = rng.gen_range(1..=2usize);
            let kind = if rng.gen_bool(0.5) { OddKind::CornerUp } else { OddKind::CornerDown };
            let (a, b) = random_anchor(rng, side, s as i64, kind == OddKind::CornerUp);
            Summand::Zig(ZigzagShape::Odd { anchor: (a, b), s, kind })
        }
        _ => Summand::Square(rng.gen_range(0..side - 1), rng.gen_range(0..side - 1)),
    }
}

/// An anchor such that a staircase of the given reach stays inside the
/// square; the caller still re-checks via the occupied set.
fn random_anchor(rng: &mut ChaCha8Rng, side: i64, reach: i64, _col: bool) -> (i64, i64) {
    let a = rng.gen_range(0..side);
    let b = rng.gen_range(0..side);
    (a.min(side - 1 - 1).max(0), (b + reach).min(side - 1))
}

fn random_unit(rng: &mut ChaCha8Rng, order: u32) -> Cyclotomic {
    let choices: i64 = rng.gen_range(0..5);
    match choices {
        0 => Cyclotomic::from_integer(order, 1),
        1 => Cyclotomic::from_integer(order, -1),
        2 => Cyclotomic::from_integer(order, 2),
        3 => {
            if order % 4 == 0 {
                Cyclotomic::i_unit(order).unwrap()
            } else {
                Cyclotomic::from_integer(order, -2)
            }
        }
        _ => Cyclotomic::from_ratio(order, 1, 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zigzag::{brute_force_decompose, multiplicities_from_ranks};

    #[test]
    fn random_complexes_are_valid_and_decompose_to_the_truth() {
        for seed in 0..40u64 {
            let (a, truth) = random_complex(seed, &RandomComplexConfig::default());
            assert!(a.validate().is_valid(), "seed {seed}");
            assert!(truth.bookkeeping_holds(&a), "seed {seed}");
            let ranks = multiplicities_from_ranks(&a).unwrap();
            assert_eq!(ranks, truth, "rank route vs truth, seed {seed}");
            let oracle = brute_force_decompose(&a, 50_000).unwrap();
            assert_eq!(oracle, truth, "oracle vs truth, seed {seed}");
        }
    }
}
