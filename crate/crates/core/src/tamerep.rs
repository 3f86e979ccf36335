//! Tame representations: finite-dimensional vector spaces that are constant
//! on the open cells of a finite rational grid.
//!
//! A grid `c_1 < … < c_m` cuts ℝ into `2m + 1` cells
//! `(−∞,c_1), {c_1}, (c_1,c_2), …, {c_m}, (c_m,+∞)`, numbered from 0. Inside
//! an open cell every structure map is the identity, so a representation is
//! determined by one dimension per cell and one matrix per junction between
//! adjacent cells. Each junction matrix points toward the ⪯-smaller cell.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{BarMultiset, Interval};
use crate::linalg::{Field, Matrix};
use crate::number::{int, ExtReal, Rational};
use crate::orientation::Orientation;

/// Which way a junction map points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapDir {
    /// From the higher-index cell to the lower-index cell.
    Down,
    /// From the lower-index cell to the higher-index cell.
    Up,
}

impl MapDir {
    pub fn flip(self) -> MapDir {
        match self {
            MapDir::Down => MapDir::Up,
            MapDir::Up => MapDir::Down,
        }
    }
}

/// The map across junction `k`, between cells `k` and `k + 1`. The matrix
/// has shape `dim(target) × dim(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Junction {
    pub dir: MapDir,
    pub matrix: Matrix,
}

/// `(source, target)` cells of junction `k`.
pub fn junction_ends(k: usize, dir: MapDir) -> (usize, usize) {
    match dir {
        MapDir::Down => (k + 1, k),
        MapDir::Up => (k, k + 1),
    }
}

/// Direction forced by the orientation on junction `k` of `grid`.
pub fn junction_dir(o: &Orientation, grid: &[Rational], k: usize) -> MapDir {
    let ascending = if k.is_multiple_of(2) {
        o.ascending_left_of(&grid[k / 2])
    } else {
        o.ascending_right_of(&grid[k / 2])
    };
    if ascending {
        MapDir::Down
    } else {
        MapDir::Up
    }
}

/// Index of the cell containing `x`.
pub fn cell_of(grid: &[Rational], x: &Rational) -> usize {
    match grid.binary_search(x) {
        Ok(i) => 2 * i + 1,
        Err(i) => 2 * i,
    }
}

/// The cell as a subset of ℝ.
pub fn cell_interval(grid: &[Rational], j: usize) -> Interval {
    if j % 2 == 1 {
        return Interval::point(grid[j / 2].clone());
    }
    let i = j / 2;
    let lo = if i == 0 {
        ExtReal::NegInf
    } else {
        ExtReal::Finite(grid[i - 1].clone())
    };
    let hi = grid.get(i).map_or(ExtReal::PosInf, |g| ExtReal::Finite(g.clone()));
    Interval::new(lo, false, hi, false).expect("grid is strictly increasing")
}

/// A point inside cell `j`.
pub fn cell_rep(grid: &[Rational], j: usize) -> Rational {
    if j % 2 == 1 {
        return grid[j / 2].clone();
    }
    let i = j / 2;
    match (i.checked_sub(1).map(|p| &grid[p]), grid.get(i)) {
        (None, None) => int(0),
        (None, Some(hi)) => hi - int(1),
        (Some(lo), None) => lo + int(1),
        (Some(lo), Some(hi)) => (lo + hi) / int(2),
    }
}

/// `grid` together with `points` and every critical between the smallest
/// and largest of them.
pub fn refined_grid(o: &Orientation, grid: &[Rational], points: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = grid.iter().chain(points).cloned().collect();
    out.sort();
    out.dedup();
    if let (Some(lo), Some(hi)) = (out.first().cloned(), out.last().cloned()) {
        out.extend(
            o.criticals()
                .iter()
                .filter(|c| c.pos > lo && c.pos < hi)
                .map(|c| c.pos.clone()),
        );
        out.sort();
        out.dedup();
    }
    out
}

/// The interval covered by the run of cells `first..=last`.
pub fn cells_to_interval(grid: &[Rational], first: usize, last: usize) -> Interval {
    let a = cell_interval(grid, first);
    let b = cell_interval(grid, last);
    Interval::new(a.lo().clone(), a.lo_closed(), b.hi().clone(), b.hi_closed()).expect("cell run is ordered")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameRep {
    orientation: Orientation,
    field: Field,
    grid: Vec<Rational>,
    dims: Vec<usize>,
    maps: Vec<Junction>,
}

impl TameRep {
    pub fn new(
        orientation: Orientation,
        field: Field,
        grid: Vec<Rational>,
        dims: Vec<usize>,
        maps: Vec<Junction>,
    ) -> Result<TameRep> {
        let bad = |why: String| Err(Error::InvalidRep(why));
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return bad("grid must be strictly increasing".into());
        }
        if dims.len() != 2 * grid.len() + 1 {
            return bad(format!(
                "expected {} cell dimensions, got {}",
                2 * grid.len() + 1,
                dims.len()
            ));
        }
        if maps.len() != 2 * grid.len() {
            return bad(format!("expected {} junction maps, got {}", 2 * grid.len(), maps.len()));
        }
        if let (Some(first), Some(last)) = (grid.first(), grid.last()) {
            for c in orientation.criticals() {
                if c.pos >= *first && c.pos <= *last && grid.binary_search(&c.pos).is_err() {
                    return bad(format!(
                        "critical point {} missing from grid",
                        ExtReal::Finite(c.pos.clone())
                    ));
                }
            }
        }
        for (k, j) in maps.iter().enumerate() {
            if j.dir != junction_dir(&orientation, &grid, k) {
                return bad(format!("junction {k} points against the orientation"));
            }
            let (s, t) = junction_ends(k, j.dir);
            if j.matrix.shape() != (dims[t], dims[s]) {
                return bad(format!(
                    "junction {k} has shape {:?}, expected {:?}",
                    j.matrix.shape(),
                    (dims[t], dims[s])
                ));
            }
            if j.matrix.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(TameRep {
            orientation,
            field,
            grid,
            dims,
            maps,
        })
    }

    /// Builds a representation from dimensions and matrices, deriving the
    /// junction directions from the orientation.
    pub fn from_matrices(
        orientation: Orientation,
        field: Field,
        grid: Vec<Rational>,
        dims: Vec<usize>,
        matrices: Vec<Matrix>,
    ) -> Result<TameRep> {
        let maps = matrices
            .into_iter()
            .enumerate()
            .map(|(k, matrix)| Junction {
                dir: junction_dir(&orientation, &grid, k),
                matrix,
            })
            .collect();
        TameRep::new(orientation, field, grid, dims, maps)
    }

    pub fn zero(orientation: Orientation, field: Field) -> TameRep {
        TameRep {
            orientation,
            field,
            grid: Vec::new(),
            dims: vec![0],
            maps: Vec::new(),
        }
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn grid(&self) -> &[Rational] {
        &self.grid
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Junction] {
        &self.maps
    }

    pub fn cell_count(&self) -> usize {
        self.dims.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim_at(&self, x: &Rational) -> usize {
        self.dims[cell_of(&self.grid, x)]
    }

    pub fn cell_interval(&self, j: usize) -> Interval {
        cell_interval(&self.grid, j)
    }

    /// Indices of cells with nonzero dimension.
    pub fn support_cells(&self) -> Vec<usize> {
        (0..self.cell_count()).filter(|&j| self.dims[j] > 0).collect()
    }

    /// The canonical direct sum of interval modules, one summand per bar
    /// copy, with identity maps wherever a bar spans a junction.
    pub fn from_bars(orientation: &Orientation, bars: &BarMultiset, field: Field) -> TameRep {
        let list: Vec<Interval> = bars.expanded().cloned().collect();
        TameRep::from_intervals(orientation, &list, field)
    }

    /// Like [`TameRep::from_bars`] but keeps the summands in the given order:
    /// at every cell the basis lists the covering intervals in that order.
    pub fn from_intervals(orientation: &Orientation, copies: &[Interval], field: Field) -> TameRep {
        let mut finite: Vec<Rational> = copies
            .iter()
            .flat_map(|b| [b.lo().finite().cloned(), b.hi().finite().cloned()])
            .flatten()
            .collect();
        if let (Some(lo), Some(hi)) = (finite.iter().min().cloned(), finite.iter().max().cloned()) {
            finite.extend(
                orientation
                    .criticals()
                    .iter()
                    .filter(|c| c.pos >= lo && c.pos <= hi)
                    .map(|c| c.pos.clone()),
            );
        }
        finite.sort();
        finite.dedup();
        let grid = finite;
        let n = 2 * grid.len() + 1;
        let cover: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                let x = cell_rep(&grid, j);
                (0..copies.len()).filter(|&c| copies[c].contains(&x)).collect()
            })
            .collect();
        let dims = cover.iter().map(Vec::len).collect();
        let maps = (0..grid.len() * 2)
            .map(|k| {
                let dir = junction_dir(orientation, &grid, k);
                let (s, t) = junction_ends(k, dir);
                let mut m = Matrix::zeros(field, cover[t].len(), cover[s].len());
                for (si, c) in cover[s].iter().enumerate() {
                    if let Some(ti) = cover[t].iter().position(|d| d == c) {
                        m.set(ti, si, field.one());
                    }
                }
                Junction { dir, matrix: m }
            })
            .collect();
        TameRep {
            orientation: orientation.clone(),
            field,
            grid,
            dims,
            maps,
        }
    }

    /// The same representation on a finer grid containing `points`; new
    /// junctions inside a former open cell carry identity maps.
    /// Criticals that land inside the enlarged hull are added as well.
    pub fn refine(&self, points: &[Rational]) -> TameRep {
        let grid = refined_grid(&self.orientation, &self.grid, points);
        if grid.len() == self.grid.len() {
            return self.clone();
        }
        let old_cell: Vec<usize> = (0..2 * grid.len() + 1)
            .map(|j| cell_of(&self.grid, &cell_rep(&grid, j)))
            .collect();
        let dims: Vec<usize> = old_cell.iter().map(|&j| self.dims[j]).collect();
        let maps = (0..2 * grid.len())
            .map(|k| {
                let (a, b) = (old_cell[k], old_cell[k + 1]);
                if a == b {
                    Junction {
                        dir: junction_dir(&self.orientation, &grid, k),
                        matrix: Matrix::identity(self.field, dims[k]),
                    }
                } else {
                    debug_assert_eq!(b, a + 1);
                    self.maps[a].clone()
                }
            })
            .collect();
        TameRep {
            orientation: self.orientation.clone(),
            field: self.field,
            grid,
            dims,
            maps,
        }
    }

    /// Refines the grid so it contains every critical point.
    pub fn normalized(&self) -> TameRep {
        let crit: Vec<Rational> = self.orientation.criticals().iter().map(|c| c.pos.clone()).collect();
        self.refine(&crit)
    }

    /// Conjugates every cell by a seeded random invertible matrix.
    pub fn scramble(&self, seed: u64) -> TameRep {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = self.field;
        self.scramble_with(|_, d| random_invertible(field, d, &mut rng))
    }

    /// Conjugates cell `j` by `basis(j, dim_j)`, which must be invertible.
    pub fn scramble_with(&self, mut basis: impl FnMut(usize, usize) -> Matrix) -> TameRep {
        let g: Vec<Matrix> = self.dims.iter().enumerate().map(|(j, &d)| basis(j, d)).collect();
        let g_inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().expect("basis change must be invertible"))
            .collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, j)| {
                let (s, t) = junction_ends(k, j.dir);
                Junction {
                    dir: j.dir,
                    matrix: g[t].mul(&j.matrix).mul(&g_inv[s]),
                }
            })
            .collect();
        TameRep { maps, ..self.clone() }
    }

    /// Zero outside `within`, unchanged inside; maps leaving `within` vanish.
    pub fn restrict(&self, within: &Interval) -> TameRep {
        let ends: Vec<Rational> = [within.lo(), within.hi()]
            .into_iter()
            .filter_map(|e| e.finite().cloned())
            .collect();
        let fine = self.refine(&ends);
        let inside: Vec<bool> = (0..fine.cell_count())
            .map(|j| within.contains_interval(&fine.cell_interval(j)))
            .collect();
        let dims: Vec<usize> = fine
            .dims
            .iter()
            .zip(&inside)
            .map(|(&d, &i)| if i { d } else { 0 })
            .collect();
        let maps = fine
            .maps
            .iter()
            .enumerate()
            .map(|(k, j)| {
                let (s, t) = junction_ends(k, j.dir);
                let matrix = if inside[s] && inside[t] {
                    j.matrix.clone()
                } else {
                    Matrix::zeros(self.field, dims[t], dims[s])
                };
                Junction { dir: j.dir, matrix }
            })
            .collect();
        TameRep { dims, maps, ..fine }
    }

    pub fn direct_sum(&self, other: &TameRep) -> Result<TameRep> {
        if self.orientation != other.orientation {
            return Err(Error::OrientationMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let a = self.refine(&other.grid);
        let b = other.refine(&self.grid);
        let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let maps = a
            .maps
            .iter()
            .zip(&b.maps)
            .map(|(x, y)| Junction {
                dir: x.dir,
                matrix: x.matrix.block_diag(&y.matrix),
            })
            .collect();
        Ok(TameRep { dims, maps, ..a })
    }

    /// The dual representation over the opposite orientation.
    pub fn dual(&self) -> TameRep {
        TameRep {
            orientation: self.orientation.reverse(),
            field: self.field,
            grid: self.grid.clone(),
            dims: self.dims.clone(),
            maps: self
                .maps
                .iter()
                .map(|j| Junction {
                    dir: j.dir.flip(),
                    matrix: j.matrix.transpose(),
                })
                .collect(),
        }
    }

    /// Reinterprets rational entries in another field.
    pub fn change_field(&self, to: Field) -> Result<TameRep> {
        let maps = self
            .maps
            .iter()
            .map(|j| {
                Ok(Junction {
                    dir: j.dir,
                    matrix: j.matrix.map_field(to)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TameRep {
            field: to,
            maps,
            ..self.clone()
        })
    }

    /// Composite structure map from cell `from` to cell `to`, when every
    /// junction in between points that way.
    pub fn composite(&self, from: usize, to: usize) -> Option<Matrix> {
        let mut acc = Matrix::identity(self.field, self.dims[from]);
        let mut at = from;
        while at != to {
            let (k, next) = if to > at { (at, at + 1) } else { (at - 1, at - 1) };
            let j = &self.maps[k];
            if junction_ends(k, j.dir) != (at, next) {
                return None;
            }
            acc = j.matrix.mul(&acc);
            at = next;
        }
        Some(acc)
    }
}

/// A random invertible matrix as a product of unit lower and nonsingular
/// upper triangular factors with small entries.
pub fn random_invertible(field: Field, n: usize, rng: &mut impl Rng) -> Matrix {
    let mut lower = Matrix::identity(field, n);
    let mut upper = Matrix::zeros(field, n, n);
    let entry = |rng: &mut dyn rand::RngCore| -> i64 {
        match field {
            Field::Rational => rng.gen_range(-2..=2),
            Field::Prime(p) => rng.gen_range(0..p as i64),
        }
    };
    for i in 0..n {
        for j in 0..n {
            if i > j {
                lower.set(i, j, field.from_i64(entry(rng)));
            } else if i < j {
                upper.set(i, j, field.from_i64(entry(rng)));
            } else {
                let d = match field {
                    Field::Rational => [1, -1, 2, -2][rng.gen_range(0..4)],
                    Field::Prime(p) => rng.gen_range(1..p as i64),
                };
                upper.set(i, j, field.from_i64(d));
            }
        }
    }
    lower.mul(&upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;
    use crate::orientation::Kind;

    const Q: Field = Field::Rational;

    fn bars(list: &[&str]) -> BarMultiset {
        list.iter().map(|s| Interval::parse(s).unwrap()).collect()
    }

    #[test]
    fn empty_bars_give_zero() {
        let o = Orientation::alternating(&[int(0)], Kind::Sink).unwrap();
        let v = TameRep::from_bars(&o, &BarMultiset::new(), Q);
        assert!(v.grid().is_empty());
        assert_eq!(v.dims(), &[0]);
    }

    #[test]
    fn single_closed_bar() {
        let v = TameRep::from_bars(&Orientation::descending(), &bars(&["[0,1]"]), Q);
        assert_eq!(v.dims(), &[0, 1, 1, 1, 0]);
        for k in [1, 2] {
            assert_eq!(v.maps()[k].dir, MapDir::Down);
            assert!(v.maps()[k].matrix.is_identity());
        }
    }

    #[test]
    fn overlapping_bars() {
        let v = TameRep::from_bars(&Orientation::descending(), &bars(&["[0,2)", "[1,3)"]), Q);
        assert_eq!(v.dim_at(&rat(3, 2)), 2);
        assert_eq!(v.dim_at(&rat(1, 2)), 1);
        assert_eq!(v.dim_at(&int(3)), 0);
        assert_eq!(v.dim_at(&int(-9)), 0);
    }

    #[test]
    fn validation_catches_bad_directions() {
        let v = TameRep::from_bars(&Orientation::descending(), &bars(&["[0,1]"]), Q);
        let mut maps = v.maps().to_vec();
        maps[0].dir = maps[0].dir.flip();
        maps[0].matrix = maps[0].matrix.transpose();
        let r = TameRep::new(Orientation::descending(), Q, v.grid().to_vec(), v.dims().to_vec(), maps);
        assert!(matches!(r, Err(Error::InvalidRep(_))));
    }

    #[test]
    fn missing_critical_rejected() {
        let o = Orientation::alternating(&[rat(1, 2)], Kind::Sink).unwrap();
        let r = TameRep::from_matrices(o, Q, vec![int(0), int(1)], vec![0; 5], vec![Matrix::zeros(Q, 0, 0); 4]);
        assert!(r.is_err());
    }

    #[test]
    fn scramble_is_reproducible_and_preserves_dims() {
        let o = Orientation::alternating(&[int(0), int(1)], Kind::Sink).unwrap();
        let v = TameRep::from_bars(&o, &bars(&["[-1,2)", "(0,1]", "(0,1]", "{1}"]), Q);
        let a = v.scramble(7);
        assert_eq!(a, v.scramble(7));
        assert_eq!(a.dims(), v.dims());
        assert_ne!(a, v);
        let same = v.scramble_with(|_, d| Matrix::identity(Q, d));
        assert_eq!(same, v);
        let z = TameRep::zero(o, Q);
        assert_eq!(z.scramble(3), z);
    }

    #[test]
    fn restriction_zeroes_outside() {
        let v = TameRep::from_bars(&Orientation::descending(), &bars(&["[0,2)"]), Q);
        let r = v.restrict(&Interval::parse("[1,3)").unwrap());
        assert_eq!(r.dim_at(&rat(1, 2)), 0);
        assert_eq!(r.dim_at(&int(1)), 1);
        assert_eq!(r.dim_at(&int(2)), 0);
        assert_eq!(v.restrict(&Interval::real_line()), v);
        assert!(v.restrict(&Interval::parse("[5,6]").unwrap()).is_zero());
    }

    #[test]
    fn direct_sum_adds_dims() {
        let o = Orientation::descending();
        let a = TameRep::from_bars(&o, &bars(&["[0,1]"]), Q);
        let b = TameRep::from_bars(&o, &bars(&["(1/2,3)"]), Q);
        let s = a.direct_sum(&b).unwrap();
        for x in [int(0), rat(3, 4), int(1), int(2), int(3)] {
            assert_eq!(s.dim_at(&x), a.dim_at(&x) + b.dim_at(&x));
        }
        assert_eq!(a.direct_sum(&TameRep::zero(o.clone(), Q)).unwrap(), a);
        let other = TameRep::zero(Orientation::ascending(), Q);
        assert_eq!(a.direct_sum(&other), Err(Error::OrientationMismatch));
    }

    #[test]
    fn dual_is_valid_and_involutive() {
        let o = Orientation::alternating(&[int(0), int(1)], Kind::Sink).unwrap();
        let v = TameRep::from_bars(&o, &bars(&["[-1,2)", "(0,1]"]), Q).scramble(1);
        let d = v.dual();
        let rebuilt = TameRep::new(
            d.orientation().clone(),
            Q,
            d.grid().to_vec(),
            d.dims().to_vec(),
            d.maps().to_vec(),
        );
        assert!(rebuilt.is_ok());
        assert_eq!(d.dual(), v);
        assert_eq!(TameRep::zero(o.clone(), Q).dual(), TameRep::zero(o.reverse(), Q));
    }

    #[test]
    fn refinement_keeps_dims() {
        let o = Orientation::alternating(&[int(5)], Kind::Source).unwrap();
        let v = TameRep::from_bars(&o, &bars(&["(-inf,1)"]), Q);
        let n = v.normalized();
        assert_eq!(n.grid(), &[int(1), int(5)]);
        assert_eq!(n.dim_at(&int(-4)), 1);
        assert_eq!(n.dim_at(&int(5)), 0);
        assert!(TameRep::new(o, Q, n.grid().to_vec(), n.dims().to_vec(), n.maps().to_vec()).is_ok());
    }

    #[test]
    fn merged_grids_pick_up_criticals_between_them() {
        let o = Orientation::alternating(&[int(0)], Kind::Sink).unwrap();
        let left = TameRep::from_bars(&o, &bars(&["[-2,-1]"]), Q);
        let right = TameRep::from_bars(&o, &bars(&["(1,2)"]), Q);
        let merged = left.refine(right.grid());
        assert_eq!(merged.grid(), &[int(-2), int(-1), int(0), int(1), int(2)]);
        assert!(TameRep::new(
            o,
            Q,
            merged.grid().to_vec(),
            merged.dims().to_vec(),
            merged.maps().to_vec()
        )
        .is_ok());
    }
}
