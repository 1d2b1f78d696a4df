//! Latin squares as generators of structured bipartite systems.
//!
//! An order-n Latin square holds symbols `1..=n` with every row and every
//! column a permutation. Read as a matrix of finite values it already is a
//! max-plus or min-plus system matrix; masking one symbol to an infinity
//! produces the sparse variants (exactly one masked entry per row and per
//! column, so row support survives masking whenever n >= 2).

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::TropicalMatrix;
use crate::system::BipartiteSystem;
use crate::value::ExtendedValue;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    n: usize,
    entries: Vec<usize>,
}

impl LatinSquare {
    /// Validates the Latin property of a row-major grid of symbols.
    pub fn from_grid(grid: &[Vec<i64>]) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::InvalidOrder { n: 0 });
        }
        let n = grid.len();
        for (i, row) in grid.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    row: i,
                    cols: row.len(),
                });
            }
        }
        if !latin_property_holds(grid) {
            return Err(Error::NotLatin);
        }
        let entries = grid
            .iter()
            .flat_map(|row| row.iter().map(|&s| s as usize))
            .collect();
        Ok(LatinSquare { n, entries })
    }

    /// The cyclic square: row i is `1..=n` rotated left by i.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder { n });
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push((i + j) % n + 1);
            }
        }
        Ok(LatinSquare { n, entries })
    }

    /// A seeded pseudorandom square: the cyclic square pushed through
    /// independent row, column, and symbol permutations. Isotopy preserves
    /// the Latin property, and a fixed seed fixes the output.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        LatinSquare::from_rng(n, &mut rng)
    }

    fn from_rng(n: usize, rng: &mut impl Rng) -> Result<Self> {
        let base = LatinSquare::cyclic(n)?;
        let mut row_perm: Vec<usize> = (0..n).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        let mut sym_perm: Vec<usize> = (1..=n).collect();
        row_perm.shuffle(rng);
        col_perm.shuffle(rng);
        sym_perm.shuffle(rng);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(sym_perm[base.get(row_perm[i], col_perm[j]) - 1]);
            }
        }
        Ok(LatinSquare { n, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// 0-indexed access to the symbol at (i, j); symbols are `1..=n`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!(i < self.n && j < self.n, "index out of bounds");
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.entries.chunks(self.n)
    }

    /// The square as a tropical matrix with the masked symbol (if any)
    /// replaced by the mask's infinity.
    pub fn mask(&self, spec: &MaskSpec) -> Result<TropicalMatrix> {
        let symbol = spec.resolve_symbol(self.n)?;
        let entries = self
            .entries
            .iter()
            .map(|&s| {
                if Some(s) == symbol {
                    match spec.kind {
                        MaskKind::Eps => ExtendedValue::NegInf,
                        MaskKind::Tau => ExtendedValue::PosInf,
                        MaskKind::None => unreachable!("resolve_symbol is None for no mask"),
                    }
                } else {
                    ExtendedValue::integer(s as i64)
                }
            })
            .collect();
        Ok(TropicalMatrix::new(self.n, self.n, entries))
    }
}

/// True when every row and column of a square grid permutes `1..=n`.
pub fn validate_latin(grid: &[Vec<i64>]) -> Result<bool> {
    if grid.is_empty() {
        return Err(Error::InvalidOrder { n: 0 });
    }
    let n = grid.len();
    for (i, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row: i,
                cols: row.len(),
            });
        }
    }
    Ok(latin_property_holds(grid))
}

fn latin_property_holds(grid: &[Vec<i64>]) -> bool {
    let n = grid.len();
    let in_range = |s: i64| s >= 1 && s <= n as i64;
    for row in grid {
        let mut seen = vec![false; n];
        for &s in row {
            if !in_range(s) || std::mem::replace(&mut seen[s as usize - 1], true) {
                return false;
            }
        }
    }
    for j in 0..n {
        let mut seen = vec![false; n];
        for row in grid {
            let s = row[j];
            if !in_range(s) || std::mem::replace(&mut seen[s as usize - 1], true) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaskKind {
    None,
    /// Replace the symbol with `-inf` (for the max-plus matrix A).
    Eps,
    /// Replace the symbol with `+inf` (for the min-plus matrix B).
    Tau,
}

/// Which symbol of a square, if any, to push to an infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaskSpec {
    pub kind: MaskKind,
    /// Defaults to the square's order when absent.
    pub symbol: Option<usize>,
}

impl MaskSpec {
    pub fn none() -> Self {
        MaskSpec {
            kind: MaskKind::None,
            symbol: None,
        }
    }

    pub fn eps(symbol: usize) -> Self {
        MaskSpec {
            kind: MaskKind::Eps,
            symbol: Some(symbol),
        }
    }

    pub fn tau(symbol: usize) -> Self {
        MaskSpec {
            kind: MaskKind::Tau,
            symbol: Some(symbol),
        }
    }

    pub fn eps_default() -> Self {
        MaskSpec {
            kind: MaskKind::Eps,
            symbol: None,
        }
    }

    pub fn tau_default() -> Self {
        MaskSpec {
            kind: MaskKind::Tau,
            symbol: None,
        }
    }

    /// The symbol this spec masks at order `n`, or None for no mask.
    fn resolve_symbol(&self, n: usize) -> Result<Option<usize>> {
        if self.kind == MaskKind::None {
            return Ok(None);
        }
        let symbol = self.symbol.unwrap_or(n);
        if symbol == 0 || symbol > n {
            return Err(Error::SymbolOutOfRange { symbol, order: n });
        }
        Ok(Some(symbol))
    }
}

/// Builds the bipartite system of two equally-sized squares, with `mask_a`
/// applied to the first and `mask_b` to the second. A mask may only push
/// entries toward the infinity its matrix tolerates.
pub fn build_system(
    la: &LatinSquare,
    lb: &LatinSquare,
    mask_a: &MaskSpec,
    mask_b: &MaskSpec,
) -> Result<BipartiteSystem> {
    if la.order() != lb.order() {
        return Err(Error::OrderMismatch {
            a: la.order(),
            b: lb.order(),
        });
    }
    if mask_a.kind == MaskKind::Tau {
        return Err(Error::InvalidMask {
            matrix: "A",
            kind: "tau",
        });
    }
    if mask_b.kind == MaskKind::Eps {
        return Err(Error::InvalidMask {
            matrix: "B",
            kind: "eps",
        });
    }
    let a = la.mask(mask_a)?;
    let b = lb.mask(mask_b)?;
    BipartiteSystem::new(a, b)
}

/// One seed, one system: draws two squares from a single seeded stream and
/// assembles them. This is the instance generator the CLI and the
/// benchmarks share.
pub fn random_system(
    n: usize,
    seed: u64,
    mask_a: &MaskSpec,
    mask_b: &MaskSpec,
) -> Result<BipartiteSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let la = LatinSquare::from_rng(n, &mut rng)?;
    let lb = LatinSquare::from_rng(n, &mut rng)?;
    build_system(&la, &lb, mask_a, mask_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::ExtendedValue::{NegInf, PosInf};

    fn grid(l: &LatinSquare) -> Vec<Vec<i64>> {
        l.rows()
            .map(|r| r.iter().map(|&s| s as i64).collect())
            .collect()
    }

    #[test]
    fn cyclic_squares_are_latin_for_small_orders() {
        for n in 1..=9 {
            let l = LatinSquare::cyclic(n).unwrap();
            assert!(validate_latin(&grid(&l)).unwrap(), "order {n}");
        }
        assert_eq!(
            grid(&LatinSquare::cyclic(3).unwrap()),
            vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]
        );
    }

    #[test]
    fn cyclic_rejects_order_zero() {
        assert!(matches!(
            LatinSquare::cyclic(0),
            Err(Error::InvalidOrder { n: 0 })
        ));
    }

    #[test]
    fn random_squares_are_latin_and_seed_deterministic() {
        for seed in 0..12 {
            for n in 1..=8 {
                let l = LatinSquare::random(n, seed).unwrap();
                assert!(validate_latin(&grid(&l)).unwrap(), "n={n} seed={seed}");
                assert_eq!(l, LatinSquare::random(n, seed).unwrap());
            }
        }
    }

    #[test]
    fn random_squares_vary_across_seeds() {
        let distinct: std::collections::HashSet<Vec<usize>> = (0..32)
            .map(|seed| LatinSquare::random(5, seed).unwrap().entries)
            .collect();
        assert!(distinct.len() > 1, "seeds produced a single square");
    }

    #[test]
    fn validate_rejects_bad_grids() {
        // duplicate in a row
        assert!(!validate_latin(&[vec![1, 1], vec![2, 2]]).unwrap());
        // rows fine, columns broken
        assert!(!validate_latin(&[vec![1, 2], vec![1, 2]]).unwrap());
        // symbol out of range
        assert!(!validate_latin(&[vec![1, 3], vec![3, 1]]).unwrap());
        // non-square input is an error, not a false
        assert!(matches!(
            validate_latin(&[vec![1, 2], vec![2]]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn mask_replaces_exactly_one_symbol_per_line() {
        let l = LatinSquare::cyclic(4).unwrap();
        let a = l.mask(&MaskSpec::eps(4)).unwrap();
        for i in 0..4 {
            let infs = a.row(i).iter().filter(|e| **e == NegInf).count();
            assert_eq!(infs, 1, "row {i}");
        }
        for j in 0..4 {
            let infs = (0..4).filter(|&i| *a.get(i, j) == NegInf).count();
            assert_eq!(infs, 1, "col {j}");
        }
        let b = l.mask(&MaskSpec::tau(2)).unwrap();
        let taus = b.entries().filter(|e| **e == PosInf).count();
        assert_eq!(taus, 4);
    }

    #[test]
    fn mask_symbol_defaults_to_the_order() {
        let l = LatinSquare::cyclic(3).unwrap();
        assert_eq!(
            l.mask(&MaskSpec::eps_default()).unwrap(),
            l.mask(&MaskSpec::eps(3)).unwrap()
        );
    }

    #[test]
    fn mask_rejects_out_of_range_symbols() {
        let l = LatinSquare::cyclic(3).unwrap();
        assert!(matches!(
            l.mask(&MaskSpec::eps(4)),
            Err(Error::SymbolOutOfRange {
                symbol: 4,
                order: 3
            })
        ));
        assert!(matches!(
            l.mask(&MaskSpec::tau(0)),
            Err(Error::SymbolOutOfRange {
                symbol: 0,
                order: 3
            })
        ));
    }

    #[test]
    fn build_system_enforces_mask_directions_and_order() {
        let l3 = LatinSquare::cyclic(3).unwrap();
        let l4 = LatinSquare::cyclic(4).unwrap();
        assert!(matches!(
            build_system(&l3, &l4, &MaskSpec::none(), &MaskSpec::none()),
            Err(Error::OrderMismatch { a: 3, b: 4 })
        ));
        assert!(matches!(
            build_system(&l4, &l4, &MaskSpec::tau(4), &MaskSpec::none()),
            Err(Error::InvalidMask {
                matrix: "A",
                kind: "tau"
            })
        ));
        assert!(matches!(
            build_system(&l4, &l4, &MaskSpec::none(), &MaskSpec::eps(4)),
            Err(Error::InvalidMask {
                matrix: "B",
                kind: "eps"
            })
        ));
    }

    #[test]
    fn build_system_rejects_order_one_with_a_mask() {
        // masking the only symbol empties every row
        let l1 = LatinSquare::cyclic(1).unwrap();
        assert!(matches!(
            build_system(&l1, &l1, &MaskSpec::eps(1), &MaskSpec::none()),
            Err(Error::DegenerateSystem { matrix: "A", .. })
        ));
    }

    #[test]
    fn masked_variants_produce_valid_systems() {
        let cases = [
            (MaskSpec::none(), MaskSpec::none()),
            (MaskSpec::eps_default(), MaskSpec::none()),
            (MaskSpec::none(), MaskSpec::tau_default()),
            (MaskSpec::eps_default(), MaskSpec::tau_default()),
        ];
        for n in 2..=6 {
            for (ma, mb) in &cases {
                let sys = random_system(n, 7, ma, mb).unwrap();
                assert_eq!(sys.m(), n);
                assert_eq!(sys.n(), n);
            }
        }
    }

    #[test]
    fn random_system_is_reproducible_and_uses_two_draws() {
        let sys1 =
            random_system(5, 11, &MaskSpec::eps_default(), &MaskSpec::tau_default()).unwrap();
        let sys2 =
            random_system(5, 11, &MaskSpec::eps_default(), &MaskSpec::tau_default()).unwrap();
        assert_eq!(sys1, sys2);
        // the A square is the first draw of the stream
        let la = LatinSquare::random(5, 11).unwrap();
        assert_eq!(*sys1.a(), la.mask(&MaskSpec::eps_default()).unwrap());
    }
}
