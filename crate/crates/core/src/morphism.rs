//! Morphisms between tame representations: Hom spaces, kernels, cokernels
//! and factorization tests.

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::number::Rational;
use crate::tamerep::{cell_of, cell_rep, junction_ends, TameRep};

/// A family of cell matrices `f_j : V_j → W_j` commuting with every
/// junction map. Source and target share one grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: TameRep,
    target: TameRep,
    cells: Vec<Matrix>,
}

/// Refines both representations to the union of their grids.
pub fn align(v: &TameRep, w: &TameRep) -> Result<(TameRep, TameRep)> {
    if v.orientation() != w.orientation() {
        return Err(Error::OrientationMismatch);
    }
    if v.field() != w.field() {
        return Err(Error::FieldMismatch);
    }
    Ok((v.refine(w.grid()), w.refine(v.grid())))
}

impl Morphism {
    pub fn new(source: TameRep, target: TameRep, cells: Vec<Matrix>) -> Result<Morphism> {
        let bad = |why: String| Err(Error::InvalidMorphism(why));
        if source.orientation() != target.orientation() {
            return Err(Error::OrientationMismatch);
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        if source.grid() != target.grid() {
            return bad("source and target grids differ".into());
        }
        if cells.len() != source.cell_count() {
            return bad(format!(
                "expected {} cell matrices, got {}",
                source.cell_count(),
                cells.len()
            ));
        }
        for (j, m) in cells.iter().enumerate() {
            if m.shape() != (target.dims()[j], source.dims()[j]) || m.field() != source.field() {
                return bad(format!("cell {j} matrix has the wrong shape or field"));
            }
        }
        for (k, (a, b)) in source.maps().iter().zip(target.maps()).enumerate() {
            let (s, t) = junction_ends(k, a.dir);
            if b.matrix.mul(&cells[s]) != cells[t].mul(&a.matrix) {
                return bad(format!("square at junction {k} does not commute"));
            }
        }
        Ok(Morphism { source, target, cells })
    }

    pub fn zero(v: &TameRep, w: &TameRep) -> Result<Morphism> {
        let (v, w) = align(v, w)?;
        let cells = v
            .dims()
            .iter()
            .zip(w.dims())
            .map(|(&a, &b)| Matrix::zeros(v.field(), b, a))
            .collect();
        Ok(Morphism {
            source: v,
            target: w,
            cells,
        })
    }

    pub fn identity(v: &TameRep) -> Morphism {
        let cells = v.dims().iter().map(|&d| Matrix::identity(v.field(), d)).collect();
        Morphism {
            source: v.clone(),
            target: v.clone(),
            cells,
        }
    }

    pub fn source(&self) -> &TameRep {
        &self.source
    }

    pub fn target(&self) -> &TameRep {
        &self.target
    }

    pub fn cells(&self) -> &[Matrix] {
        &self.cells
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn refine(&self, points: &[Rational]) -> Morphism {
        let source = self.source.refine(points);
        let target = self.target.refine(points);
        let grid = self.source.grid();
        let cells = (0..source.cell_count())
            .map(|j| self.cells[cell_of(grid, &cell_rep(source.grid(), j))].clone())
            .collect();
        Morphism { source, target, cells }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        let f = self.refine(g.source.grid());
        let g = g.refine(self.source.grid());
        if f.target != g.source {
            return Err(Error::InvalidMorphism("composed morphisms do not meet".into()));
        }
        let cells = f.cells.iter().zip(&g.cells).map(|(a, b)| b.mul(a)).collect();
        Ok(Morphism {
            source: f.source,
            target: g.target,
            cells,
        })
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidMorphism("summands have different ends".into()));
        }
        let cells = self.cells.iter().zip(&other.cells).map(|(a, b)| a.add(b)).collect();
        Ok(Morphism { cells, ..self.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.cells.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.cells.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.cells.iter().all(|m| m.rows() == m.cols() && m.rank() == m.rows())
    }

    /// All cell entries stacked into a single column.
    pub fn flatten(&self) -> Matrix {
        let data: Vec<_> = self.cells.iter().flat_map(|m| m.entries().cloned()).collect();
        Matrix::from_rows(self.field(), data.len(), 1, data)
    }

    /// The kernel and its inclusion into the source.
    pub fn kernel(&self) -> Result<(TameRep, Morphism)> {
        let bases: Vec<Matrix> = self.cells.iter().map(Matrix::kernel_basis).collect();
        let maps = self
            .source
            .maps()
            .iter()
            .enumerate()
            .map(|(k, j)| {
                let (s, t) = junction_ends(k, j.dir);
                let image = j.matrix.mul(&bases[s]);
                bases[t]
                    .solve(&image)
                    .map(|sol| sol.particular)
                    .ok_or_else(|| Error::Internal("junction map leaves the kernel".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = bases.iter().map(Matrix::cols).collect();
        let k = TameRep::from_matrices(
            self.source.orientation().clone(),
            self.field(),
            self.source.grid().to_vec(),
            dims,
            maps,
        )?;
        let inclusion = Morphism {
            source: k.clone(),
            target: self.source.clone(),
            cells: bases,
        };
        Ok((k, inclusion))
    }

    /// The cokernel and the projection onto it from the target.
    pub fn cokernel(&self) -> Result<(TameRep, Morphism)> {
        let proj: Vec<Matrix> = self
            .cells
            .iter()
            .map(|m| m.transpose().kernel_basis().transpose())
            .collect();
        let maps = self
            .target
            .maps()
            .iter()
            .enumerate()
            .map(|(k, j)| {
                let (s, t) = junction_ends(k, j.dir);
                let image = proj[t].mul(&j.matrix);
                proj[s]
                    .transpose()
                    .solve(&image.transpose())
                    .map(|sol| sol.particular.transpose())
                    .ok_or_else(|| Error::Internal("junction map does not descend to the cokernel".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = proj.iter().map(Matrix::rows).collect();
        let c = TameRep::from_matrices(
            self.target.orientation().clone(),
            self.field(),
            self.target.grid().to_vec(),
            dims,
            maps,
        )?;
        let projection = Morphism {
            source: self.target.clone(),
            target: c.clone(),
            cells: proj,
        };
        Ok((c, projection))
    }
}

/// A basis of `Hom(v, w)`, found by sweeping the cells left to right and
/// keeping a parametrization of the morphisms defined so far.
pub fn hom_basis(v: &TameRep, w: &TameRep) -> Result<Vec<Morphism>> {
    let (v, w) = align(v, w)?;
    let field = v.field();
    let size = |j: usize| v.dims()[j] * w.dims()[j];
    // exprs[j] expresses vec(f_j) in terms of the current parameters.
    let mut exprs = vec![Matrix::identity(field, size(0))];
    for k in 0..v.cell_count() - 1 {
        let dir = v.maps()[k].dir;
        let (s, t) = junction_ends(k, dir);
        let (cs, ct) = square_coefficients(&v.maps()[k].matrix, &w.maps()[k].matrix, v.dims()[s], w.dims()[t]);
        let (left, right) = if s == k { (cs, ct) } else { (ct, cs) };
        let params = exprs[k].cols();
        let system = left.mul(&exprs[k]).hstack(&right);
        let kernel = system.kernel_basis();
        let top: Vec<usize> = (0..params).collect();
        let top = kernel.transpose().columns(&top).transpose();
        let bottom: Vec<usize> = (params..kernel.rows()).collect();
        let bottom = kernel.transpose().columns(&bottom).transpose();
        for e in exprs.iter_mut() {
            *e = e.mul(&top);
        }
        exprs.push(bottom);
    }
    let count = exprs[0].cols();
    (0..count)
        .map(|p| {
            let cells = exprs
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    let (r, c) = (w.dims()[j], v.dims()[j]);
                    Matrix::from_rows(field, r, c, e.column(p))
                })
                .collect();
            Ok(Morphism {
                source: v.clone(),
                target: w.clone(),
                cells,
            })
        })
        .collect()
}

/// Coefficients of `vec(f_s)` and `vec(f_t)` in `w_k f_s − f_t v_k`, with
/// row-major vectorization. `dv_s` and `dw_t` fix the square's corners.
fn square_coefficients(vk: &Matrix, wk: &Matrix, dv_s: usize, dw_t: usize) -> (Matrix, Matrix) {
    let field = vk.field();
    let (dw_s, dv_t) = (wk.cols(), vk.rows());
    let mut cs = Matrix::zeros(field, dw_t * dv_s, dw_s * dv_s);
    let mut ct = Matrix::zeros(field, dw_t * dv_s, dw_t * dv_t);
    for r in 0..dw_t {
        for c in 0..dv_s {
            let row = r * dv_s + c;
            for i in 0..dw_s {
                cs.set(row, i * dv_s + c, wk.get(r, i).clone());
            }
            for i in 0..dv_t {
                ct.set(row, r * dv_t + i, field.neg(vk.get(i, c)));
            }
        }
    }
    (cs, ct)
}

pub fn hom_space_dim(v: &TameRep, w: &TameRep) -> Result<usize> {
    Ok(hom_basis(v, w)?.len())
}

/// Whether `h : X → C` equals `g ∘ u` for some `u : X → B`, where `g : B → C`.
pub fn factors_through_target(h: &Morphism, g: &Morphism) -> Result<bool> {
    let candidates = hom_basis(h.source(), g.source())?
        .iter()
        .map(|u| u.then(g))
        .collect::<Result<Vec<_>>>()?;
    solvable(h, &candidates)
}

/// Whether `h : A → Y` equals `u ∘ f` for some `u : B → Y`, where `f : A → B`.
pub fn factors_through_source(h: &Morphism, f: &Morphism) -> Result<bool> {
    let candidates = hom_basis(f.target(), h.target())?
        .iter()
        .map(|u| f.then(u))
        .collect::<Result<Vec<_>>>()?;
    solvable(h, &candidates)
}

/// Whether `h` lies in the span of `candidates`.
fn solvable(h: &Morphism, candidates: &[Morphism]) -> Result<bool> {
    let grid: Vec<Rational> = candidates
        .iter()
        .flat_map(|c| c.source().grid().iter().cloned())
        .collect();
    let h = h.refine(&grid);
    let rhs = h.flatten();
    if candidates.is_empty() {
        return Ok(rhs.is_zero());
    }
    let cols: Vec<Vec<_>> = candidates
        .iter()
        .map(|c| c.refine(h.source().grid()).flatten().column(0))
        .collect();
    if cols.iter().any(|c| c.len() != rhs.rows()) {
        return Err(Error::InvalidMorphism("factorization candidates do not match".into()));
    }
    let a = Matrix::from_columns(h.field(), rhs.rows(), &cols);
    Ok(a.solve(&rhs).is_some())
}
