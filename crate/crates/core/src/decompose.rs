//! Interval decomposition of tame representations.
//!
//! The cells of a grid form a finite zigzag, so the representation is a
//! zigzag module and splits into interval summands. The sweep below keeps,
//! at the current cell, a basis adapted to a decomposition of everything
//! to its left. Each open bar is generated by one basis vector.
//!
//! Basis vectors may only be modified by adding vectors of bars that admit
//! a nonzero map from the bar being modified. For two bars alive at the
//! current cell this relation is decided by the bar born later: a bar born
//! across a leftward junction admits maps from every older bar, a bar born
//! across a rightward junction maps to every older bar. Keeping the open
//! bars in a list where the first kind is inserted at the bottom and the
//! second at the top turns the relation into "lower may be added into
//! higher", which is all the elimination needs.

use crate::error::{Error, Result};
use crate::interval::{BarMultiset, Interval};
use crate::linalg::{Field, Matrix, Scalar};
use crate::tamerep::{cells_to_interval, MapDir, TameRep};

struct OpenBar {
    birth: usize,
    vector: Vec<Scalar>,
}

pub fn decompose(v: &TameRep) -> BarMultiset {
    let field = v.field();
    let mut bars = BarMultiset::new();
    let mut close = |birth: usize, death: usize| bars.insert(cells_to_interval(v.grid(), birth, death), 1);

    // Lowest first.
    let mut open: Vec<OpenBar> = unit_vectors(field, v.dims()[0])
        .into_iter()
        .map(|vector| OpenBar { birth: 0, vector })
        .collect();
    for (k, junction) in v.maps().iter().enumerate() {
        let next_dim = v.dims()[k + 1];
        open = match junction.dir {
            MapDir::Up => {
                let mut kept: Vec<OpenBar> = Vec::new();
                let mut span = Echelon::new(field);
                for bar in open {
                    let image = junction.matrix.mul(&column(field, &bar.vector)).column(0);
                    if span.insert(&image) {
                        kept.push(OpenBar {
                            birth: bar.birth,
                            vector: image,
                        });
                    } else {
                        close(bar.birth, k);
                    }
                }
                let born = span.complement(next_dim);
                kept.extend(born.into_iter().map(|vector| OpenBar { birth: k + 1, vector }));
                kept
            }
            MapDir::Down => {
                let basis = Matrix::from_columns(
                    field,
                    v.dims()[k],
                    &open.iter().map(|b| b.vector.clone()).collect::<Vec<_>>(),
                );
                let mut coords = basis
                    .solve(&junction.matrix)
                    .expect("open bars form a basis")
                    .particular;
                let mut t = Matrix::identity(field, next_dim);
                let mut pivot: Vec<Option<usize>> = vec![None; open.len()];
                let mut used = vec![false; next_dim];
                for r in (0..open.len()).rev() {
                    let Some(c) = (0..next_dim).find(|&c| !used[c] && !field.is_zero(coords.get(r, c))) else {
                        continue;
                    };
                    let inv = field.inv(coords.get(r, c)).expect("nonzero pivot");
                    scale_column(&mut coords, c, &inv);
                    scale_column(&mut t, c, &inv);
                    for c2 in (0..next_dim).filter(|&c2| c2 != c && !used[c2]) {
                        if !field.is_zero(coords.get(r, c2)) {
                            let factor = coords.get(r, c2).clone();
                            subtract_column(&mut coords, c2, c, &factor);
                            subtract_column(&mut t, c2, c, &factor);
                        }
                    }
                    for r2 in 0..r {
                        coords.set(r2, c, field.zero());
                    }
                    used[c] = true;
                    pivot[r] = Some(c);
                }
                let mut next: Vec<OpenBar> = (0..next_dim)
                    .filter(|&c| !used[c])
                    .map(|c| OpenBar {
                        birth: k + 1,
                        vector: t.column(c),
                    })
                    .collect();
                for (bar, p) in open.into_iter().zip(pivot) {
                    match p {
                        Some(c) => next.push(OpenBar {
                            birth: bar.birth,
                            vector: t.column(c),
                        }),
                        None => close(bar.birth, k),
                    }
                }
                next
            }
        };
    }
    let last = v.cell_count() - 1;
    for bar in open {
        close(bar.birth, last);
    }
    bars
}

fn unit_vectors(field: Field, n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

fn column(field: Field, v: &[Scalar]) -> Matrix {
    Matrix::from_rows(field, v.len(), 1, v.to_vec())
}

/// Incremental row echelon form of a span, for independence tests.
struct Echelon {
    field: Field,
    /// Reduced vectors, each with its pivot index and a leading one there.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn new(field: Field) -> Echelon {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    /// Adds `v` to the span; false if it was already in it.
    fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !f.is_zero(&v[*p]) {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((p, v));
        true
    }

    /// Unit vectors extending the span to all of `n`-space.
    fn complement(mut self, n: usize) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for e in unit_vectors(self.field, n) {
            if self.rows.len() == n {
                break;
            }
            if self.insert(&e) {
                out.push(e);
            }
        }
        out
    }
}

fn scale_column(m: &mut Matrix, c: usize, s: &Scalar) {
    let f = m.field();
    for r in 0..m.rows() {
        let x = f.mul(m.get(r, c), s);
        m.set(r, c, x);
    }
}

/// `col[target] -= factor · col[source]`.
fn subtract_column(m: &mut Matrix, target: usize, source: usize, factor: &Scalar) {
    let f = m.field();
    for r in 0..m.rows() {
        let x = f.sub(m.get(r, target), &f.mul(factor, m.get(r, source)));
        m.set(r, target, x);
    }
}

pub fn multiplicity(v: &TameRep, bar: &Interval) -> usize {
    decompose(v).multiplicity(bar)
}

/// Isomorphism test by comparing barcodes.
pub fn iso(a: &TameRep, b: &TameRep) -> Result<bool> {
    if a.orientation() != b.orientation() {
        return Err(Error::OrientationMismatch);
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(decompose(a) == decompose(b))
}

pub fn is_indecomposable(v: &TameRep) -> bool {
    decompose(v).total() == 1
}

/// Indecomposability read off the cell data: dimension at most one, a
/// connected support and nonzero maps inside the support.
pub fn is_interval_shaped(v: &TameRep) -> bool {
    let support = v.support_cells();
    let (Some(&first), Some(&last)) = (support.first(), support.last()) else {
        return false;
    };
    if last - first + 1 != support.len() || v.dims().iter().any(|&d| d > 1) {
        return false;
    }
    (first..last).all(|k| !v.maps()[k].matrix.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::int;
    use crate::orientation::{Kind, Orientation};

    const Q: Field = Field::Rational;

    fn bars(list: &[&str]) -> BarMultiset {
        list.iter().map(|s| Interval::parse(s).unwrap()).collect()
    }

    #[test]
    fn zero_rep_has_no_bars() {
        assert!(decompose(&TameRep::zero(Orientation::descending(), Q)).is_empty());
    }

    #[test]
    fn canonical_reps_round_trip() {
        let o = Orientation::alternating(&[int(0), int(1), int(2)], Kind::Sink).unwrap();
        for list in [
            &["[0,1]"][..],
            &["(-inf,+inf)"],
            &["(-inf,0)", "[0,1)", "[0,1)", "{1}", "(1,+inf)"],
            &["[-1,3)", "(0,2]", "{1/2}", "[1/2,5/2]"],
        ] {
            let b = bars(list);
            let v = TameRep::from_bars(&o, &b, Q);
            assert_eq!(decompose(&v), b);
            assert_eq!(decompose(&v.scramble(11)), b);
        }
    }

    #[test]
    fn multiplicity_counts() {
        let o = Orientation::descending();
        let v = TameRep::from_bars(&o, &[(Interval::parse("[0,1]").unwrap(), 3)].into_iter().collect(), Q);
        assert_eq!(multiplicity(&v, &Interval::parse("[0,1]").unwrap()), 3);
        assert_eq!(multiplicity(&v, &Interval::parse("[5,6]").unwrap()), 0);
    }

    #[test]
    fn iso_distinguishes_endpoints() {
        let o = Orientation::descending();
        let a = TameRep::from_bars(&o, &bars(&["[0,1)"]), Q);
        let b = TameRep::from_bars(&o, &bars(&["[0,1]"]), Q);
        assert!(!iso(&a, &b).unwrap());
        assert!(iso(&a, &a.scramble(2)).unwrap());
        let ab = a.direct_sum(&b).unwrap();
        assert!(iso(&ab, &b.direct_sum(&a).unwrap()).unwrap());
    }

    #[test]
    fn zero_map_splits_support() {
        let o = Orientation::descending();
        let v = TameRep::from_matrices(
            o,
            Q,
            vec![int(0)],
            vec![1, 1, 1],
            vec![Matrix::zeros(Q, 1, 1), Matrix::identity(Q, 1)],
        )
        .unwrap();
        assert!(!is_indecomposable(&v));
        assert!(!is_interval_shaped(&v));
        assert_eq!(decompose(&v).total(), 2);
    }

    #[test]
    fn indecomposability_criteria_agree() {
        let o = Orientation::alternating(&[int(0), int(1)], Kind::Source).unwrap();
        for list in [&["[0,1]"][..], &["[0,1]", "[2,3]"], &["(-1,1/2)"], &["{0}", "{0}"]] {
            let v = TameRep::from_bars(&o, &bars(list), Q);
            assert_eq!(is_indecomposable(&v), is_interval_shaped(&v), "{list:?}");
        }
    }
}
