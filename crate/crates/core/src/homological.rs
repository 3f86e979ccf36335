//! Projective and injective interval modules, projectivity tests, image
//! filtrations, minimal projective presentations, and Hom/Ext dimensions.

use std::fmt;

use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{Field, Matrix};
use crate::morphism::{hom_basis, hom_space_dim, Morphism};
use crate::number::{int, ExtReal, Rational};
use crate::orientation::{Kind, Orientation};
use crate::tamerep::{cell_of, cell_rep, cells_to_interval, TameRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Projective,
    Injective,
}

/// Which part of the down-set (or up-set) of the position is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    /// The part strictly left of the position.
    OpenRight,
    /// The whole down-set.
    Point,
    /// The part strictly right of the position.
    OpenLeft,
}

/// Names an indecomposable projective `P_a`, `P_{a)}`, `P_{(a}` or one of
/// the injectives `I_a`, `I_{a)}`, `I_{(a}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub family: Family,
    pub form: Form,
    pub pos: ExtReal,
}

impl Label {
    /// Builds a label, rejecting forms that describe the zero module.
    pub fn new(o: &Orientation, family: Family, form: Form, pos: ExtReal) -> Result<Label> {
        let label = Label { family, form, pos };
        match label.support(o) {
            Some(_) => Ok(label),
            None => Err(Error::Precondition(format!("{label} is zero over this orientation"))),
        }
    }

    pub fn projective(o: &Orientation, form: Form, pos: ExtReal) -> Result<Label> {
        Label::new(o, Family::Projective, form, pos)
    }

    /// The support, or `None` when the form is zero.
    pub fn support(&self, o: &Orientation) -> Option<Interval> {
        let base = match self.family {
            Family::Projective => o.down_set_ext(&self.pos)?,
            Family::Injective => o.reverse().down_set_ext(&self.pos)?,
        };
        match (self.form, &self.pos) {
            (Form::Point, _) => Some(base),
            (Form::OpenRight, ExtReal::Finite(a)) => {
                base.intersect(&Interval::new(ExtReal::NegInf, false, a.clone().into(), false).ok()?)
            }
            (Form::OpenLeft, ExtReal::Finite(a)) => {
                base.intersect(&Interval::new(a.clone().into(), false, ExtReal::PosInf, false).ok()?)
            }
            _ => None,
        }
    }

    /// The name with the position written as `pos`.
    pub fn name_with(&self, pos: &str) -> String {
        let letter = match self.family {
            Family::Projective => 'P',
            Family::Injective => 'I',
        };
        match self.form {
            Form::Point if pos.chars().count() == 1 => format!("{letter}_{pos}"),
            Form::Point => format!("{letter}_{{{pos}}}"),
            Form::OpenRight => format!("{letter}_{{{pos})}}"),
            Form::OpenLeft => format!("{letter}_{{({pos}}}"),
        }
    }

    fn sort_key(&self) -> (&ExtReal, Form) {
        (&self.pos, self.form)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name_with(&self.pos.to_string()))
    }
}

const FORMS: [Form; 3] = [Form::OpenRight, Form::Point, Form::OpenLeft];

/// The label whose support is `bar`, if `M_bar` is an indecomposable
/// projective.
pub fn classify_projective(o: &Orientation, bar: &Interval) -> Option<Label> {
    classify(o, Family::Projective, bar)
}

/// The label whose support is `bar`, if `M_bar` is an indecomposable
/// injective.
pub fn classify_injective(o: &Orientation, bar: &Interval) -> Option<Label> {
    classify(o, Family::Injective, bar)
}

fn classify(o: &Orientation, family: Family, bar: &Interval) -> Option<Label> {
    let mut candidates = vec![ExtReal::NegInf, bar.lo().clone(), bar.hi().clone(), ExtReal::PosInf];
    candidates.extend(o.criticals().iter().map(|c| ExtReal::Finite(c.pos.clone())));
    candidates.into_iter().find_map(|pos| {
        FORMS.iter().find_map(|&form| {
            let label = Label {
                family,
                form,
                pos: pos.clone(),
            };
            (label.support(o).as_ref() == Some(bar)).then_some(label)
        })
    })
}

/// Whether every interval summand of `v` is projective.
pub fn is_projective_rep(v: &TameRep) -> bool {
    decompose(v)
        .iter()
        .all(|(bar, _)| classify_projective(v.orientation(), bar).is_some())
}

/// Whether every interval summand of `v` is injective.
pub fn is_injective_rep(v: &TameRep) -> bool {
    decompose(v)
        .iter()
        .all(|(bar, _)| classify_injective(v.orientation(), bar).is_some())
}

/// Projectivity read off the structure maps, for representations supported
/// in one segment away from its source end: projective exactly when every
/// composite map into the sink end is injective. `None` when the support
/// does not fit in such a segment.
pub fn composites_injective(v: &TameRep) -> Option<bool> {
    let support = v.support_cells();
    let (Some(&first), Some(&last)) = (support.first(), support.last()) else {
        return Some(true);
    };
    let hull = cells_to_interval(v.grid(), first, last);
    let segment = v.orientation().segments().into_iter().find(|s| {
        let source_inside = s.source_end().finite().is_some_and(|x| hull.contains(x));
        s.as_interval().contains_interval(&hull) && !source_inside
    })?;
    let (v, target) = match segment.sink_end() {
        ExtReal::NegInf => (v.clone(), 0),
        ExtReal::PosInf => (v.clone(), v.cell_count() - 1),
        ExtReal::Finite(s) => {
            let fine = v.refine(std::slice::from_ref(s));
            let t = cell_of(fine.grid(), s);
            (fine, t)
        }
    };
    let injective = v.support_cells().into_iter().all(|j| {
        let m = v.composite(j, target).expect("maps inside a segment point to its sink");
        m.rank() == m.cols()
    });
    Some(injective)
}

/// One member of an image filtration: a subspace of the given dimension and
/// the set of support points whose image contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub dim: usize,
    pub support: Interval,
}

/// The distinct nonzero images `V(x,b)(V(x))` in `V(b)`, largest first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiltrationReport {
    pub steps: Vec<FiltrationStep>,
}

/// Image filtration at `b` of a representation supported on one side of
/// `b` within a monotone segment, with `b ⪯ x` throughout the support.
pub fn image_filtration(v: &TameRep, b: &Rational) -> Result<FiltrationReport> {
    let v = v.refine(std::slice::from_ref(b));
    let support = v.support_cells();
    if support.is_empty() {
        return Ok(FiltrationReport::default());
    }
    let jb = cell_of(v.grid(), b);
    if v.dims()[jb] == 0 {
        return Err(Error::Precondition("b must lie in the support".into()));
    }
    let o = v.orientation();
    if support.iter().any(|&j| !o.leq(b, &cell_rep(v.grid(), j))) {
        return Err(Error::Precondition("b is not the ⪯-minimum of the support".into()));
    }
    let right = support.iter().all(|&j| j >= jb);
    if !right && !support.iter().all(|&j| j <= jb) {
        return Err(Error::Precondition("support must lie on one side of b".into()));
    }
    let walk: Vec<usize> = if right {
        (jb..v.cell_count()).collect()
    } else {
        (0..=jb).rev().collect()
    };
    let ranks: Vec<usize> = walk
        .iter()
        .map(|&j| v.composite(j, jb).map(|m| m.rank()).unwrap_or(0))
        .collect();
    let mut dims: Vec<usize> = ranks.iter().copied().filter(|&r| r > 0).collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    dims.dedup();
    let steps = dims
        .into_iter()
        .map(|dim| {
            let reach = ranks.iter().take_while(|&&r| r >= dim).count();
            let far = walk[reach - 1];
            let support = if right {
                cells_to_interval(v.grid(), jb, far)
            } else {
                cells_to_interval(v.grid(), far, jb)
            };
            FiltrationStep { dim, support }
        })
        .collect();
    Ok(FiltrationReport { steps })
}

/// A minimal projective presentation `0 → P_1 → P_0 → M_I → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPresentation {
    pub p1: Vec<Label>,
    pub p0: Vec<Label>,
    /// `(i, j, s)`: summand `i` of `P_1` maps to summand `j` of `P_0` by `s`.
    pub signs: Vec<(usize, usize, i64)>,
    /// The realized map `P_1 → P_0`.
    pub map: Morphism,
}

pub fn proj_presentation(o: &Orientation, bar: &Interval, field: Field) -> Result<ProjPresentation> {
    let (p0, p1) = presentation_labels(o, bar);
    let mut all: Vec<(&Label, bool, usize)> = p0
        .iter()
        .enumerate()
        .map(|(j, l)| (l, false, j))
        .chain(p1.iter().enumerate().map(|(i, l)| (l, true, i)))
        .collect();
    all.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()).then(a.1.cmp(&b.1)));
    let support = |l: &Label| l.support(o).expect("presentation labels are nonzero");
    let mut signs = Vec::new();
    for (at, &(label, in_p1, i)) in all.iter().enumerate() {
        if !in_p1 {
            continue;
        }
        let left = all[..at].iter().rev().find(|x| !x.1);
        let right = all[at + 1..].iter().find(|x| !x.1);
        for (neighbour, sign) in [(left, 1), (right, -1)] {
            if let Some(&(target, _, j)) = neighbour {
                if support(target).contains_interval(&support(label)) {
                    signs.push((i, j, sign));
                }
            }
        }
    }
    let map = realize(o, &p1, &p0, &signs, field)?;
    Ok(ProjPresentation { p1, p0, signs, map })
}

/// `(P_0, P_1)` summands, each sorted by position.
fn presentation_labels(o: &Orientation, bar: &Interval) -> (Vec<Label>, Vec<Label>) {
    if let Some(label) = classify_projective(o, bar) {
        return (vec![label], Vec::new());
    }
    let mut p0 = Vec::new();
    let mut p1 = Vec::new();
    let push = |list: &mut Vec<Label>, form: Form, pos: ExtReal| {
        if let Ok(l) = Label::projective(o, form, pos) {
            list.push(l);
        }
    };
    if bar.is_point() {
        // Not a sink, otherwise it would be projective.
        let a = bar.lo().clone();
        push(&mut p0, Form::Point, a.clone());
        push(&mut p1, Form::OpenRight, a.clone());
        push(&mut p1, Form::OpenLeft, a);
        return (p0, p1);
    }
    for c in o.criticals() {
        if bar.lo() < &c.pos && bar.hi() > &c.pos {
            let list = if c.kind == Kind::Source { &mut p0 } else { &mut p1 };
            push(list, Form::Point, c.pos.clone().into());
        }
    }
    if *bar.lo() == ExtReal::NegInf && o.neg_inf_kind() == Kind::Source {
        push(&mut p0, Form::Point, ExtReal::NegInf);
    }
    if *bar.hi() == ExtReal::PosInf && o.pos_inf_kind() == Kind::Source {
        push(&mut p0, Form::Point, ExtReal::PosInf);
    }
    let meets = |set: Interval| bar.intersect(&set);
    for (end, closed, outward, inward) in [
        (bar.lo(), bar.lo_closed(), Form::OpenRight, Form::OpenLeft),
        (bar.hi(), bar.hi_closed(), Form::OpenLeft, Form::OpenRight),
    ] {
        let Some(a) = end.finite() else { continue };
        let below = meets(o.down_set(a));
        if closed {
            if below.is_some_and(|i| !i.is_point()) {
                push(&mut p0, Form::Point, a.clone().into());
            }
            push(&mut p1, outward, a.clone().into());
        } else {
            if below.is_some() {
                push(&mut p0, inward, a.clone().into());
            }
            if meets(o.up_set(a)).is_some() {
                push(&mut p1, Form::Point, a.clone().into());
            }
        }
    }
    p0.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    p1.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    (p0, p1)
}

/// Direct sum of the projectives in `labels`, summands in list order.
pub fn realize_sum(o: &Orientation, labels: &[Label], field: Field) -> TameRep {
    let supports: Vec<Interval> = labels.iter().filter_map(|l| l.support(o)).collect();
    TameRep::from_intervals(o, &supports, field)
}

fn realize(
    o: &Orientation,
    p1: &[Label],
    p0: &[Label],
    signs: &[(usize, usize, i64)],
    field: Field,
) -> Result<Morphism> {
    let s1: Vec<Interval> = p1.iter().filter_map(|l| l.support(o)).collect();
    let s0: Vec<Interval> = p0.iter().filter_map(|l| l.support(o)).collect();
    let a = TameRep::from_intervals(o, &s1, field);
    let b = TameRep::from_intervals(o, &s0, field);
    let (a, b) = (a.refine(b.grid()), b.refine(a.grid()));
    let cells = (0..a.cell_count())
        .map(|j| {
            let x = cell_rep(a.grid(), j);
            let cols: Vec<usize> = (0..s1.len()).filter(|&i| s1[i].contains(&x)).collect();
            let rows: Vec<usize> = (0..s0.len()).filter(|&i| s0[i].contains(&x)).collect();
            let mut m = Matrix::zeros(field, rows.len(), cols.len());
            for &(i, k, s) in signs {
                if let (Some(c), Some(r)) = (cols.iter().position(|&y| y == i), rows.iter().position(|&y| y == k)) {
                    m.set(r, c, field.from_i64(s));
                }
            }
            m
        })
        .collect();
    Morphism::new(a, b, cells).map_err(|e| Error::Internal(format!("presentation map is not a morphism: {e}")))
}

/// `dim Hom(M_I, M_J)`, which is at most one.
pub fn hom_dim(o: &Orientation, i: &Interval, j: &Interval) -> Result<usize> {
    let a = TameRep::from_intervals(o, std::slice::from_ref(i), Field::Rational);
    let b = TameRep::from_intervals(o, std::slice::from_ref(j), Field::Rational);
    let d = hom_space_dim(&a, &b)?;
    if d > 1 {
        return Err(Error::Internal(format!("Hom({i}, {j}) has dimension {d}")));
    }
    Ok(d)
}

/// Rank of `Hom(P_0, W) → Hom(P_1, W)`, precomposition with `iota`.
pub fn precomposition_rank(iota: &Morphism, w: &TameRep) -> Result<usize> {
    let images = hom_basis(iota.target(), w)?
        .iter()
        .map(|phi| iota.then(phi))
        .collect::<Result<Vec<_>>>()?;
    let grid: Vec<Rational> = images.iter().flat_map(|m| m.source().grid().iter().cloned()).collect();
    let cols: Vec<Vec<_>> = images.iter().map(|m| m.refine(&grid).flatten().column(0)).collect();
    let Some(rows) = cols.first().map(Vec::len) else {
        return Ok(0);
    };
    Ok(Matrix::from_columns(iota.field(), rows, &cols).rank())
}

/// `dim Ext¹(M_V, W)` from the presentation of `M_V`.
pub fn ext_dim_with(pres: &ProjPresentation, w: &TameRep) -> Result<usize> {
    let hom_p1 = hom_space_dim(pres.map.source(), w)?;
    Ok(hom_p1 - precomposition_rank(&pres.map, w)?)
}

/// `dim Ext¹(M_V, M_W)`, which is at most one.
pub fn ext_dim(o: &Orientation, v: &Interval, w: &Interval) -> Result<usize> {
    let pres = proj_presentation(o, v, Field::Rational)?;
    let target = TameRep::from_intervals(o, std::slice::from_ref(w), Field::Rational);
    let d = ext_dim_with(&pres, &target)?;
    if d > 1 {
        return Err(Error::Internal(format!("Ext({v}, {w}) has dimension {d}")));
    }
    Ok(d)
}

/// Kernel of a map between projective representations; projective because
/// the category is hereditary.
pub fn kernel_of_projective_map(f: &Morphism) -> Result<TameRep> {
    if !is_projective_rep(f.source()) || !is_projective_rep(f.target()) {
        return Err(Error::Precondition("both ends must be projective".into()));
    }
    let (k, _) = f.kernel()?;
    if !is_projective_rep(&k) {
        return Err(Error::Internal(
            "kernel of a map of projectives is not projective".into(),
        ));
    }
    Ok(k)
}

/// The indecomposable projectives (or injectives) with symbolic positions:
/// one letter per open segment, numerals at sinks and sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTable {
    /// The ordering of letters and critical points, such as `a < 0 < b`.
    pub header: String,
    /// `(support, label)` pairs.
    pub rows: Vec<(String, String)>,
}

impl fmt::Display for LabelTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header)?;
        let width = self.rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
        for (support, label) in &self.rows {
            writeln!(f, "{support:<width$}  {label}")?;
        }
        Ok(())
    }
}

/// Lists every indecomposable projective (or injective): the sinks first,
/// then the remaining positions from left to right. At a source the forms
/// appear as `P_{a)}`, `P_a`, `P_{(a}`; elsewhere the open form precedes
/// the point form.
pub fn label_table(o: &Orientation, family: Family) -> LabelTable {
    let base = match family {
        Family::Projective => o.clone(),
        Family::Injective => o.reverse(),
    };
    let crit = base.criticals();
    let symbol = |i: usize| {
        if i < 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("t{i}")
        }
    };
    let reps: Vec<Rational> = (0..=crit.len())
        .map(
            |i| match (i.checked_sub(1).map(|p| &crit[p].pos), crit.get(i).map(|c| &c.pos)) {
                (None, None) => int(0),
                (None, Some(hi)) => hi - int(1),
                (Some(lo), None) => lo + int(1),
                (Some(lo), Some(hi)) => (lo + hi) / int(2),
            },
        )
        .collect();
    let text = |e: &ExtReal| match e.finite().and_then(|x| reps.iter().position(|r| r == x)) {
        Some(i) => symbol(i),
        None => e.to_string(),
    };
    let show = |i: &Interval| {
        if i.is_point() {
            return format!("{{{}}}", text(i.lo()));
        }
        let open = if i.lo_closed() { '[' } else { '(' };
        let close = if i.hi_closed() { ']' } else { ')' };
        format!("{open}{},{}{close}", text(i.lo()), text(i.hi()))
    };

    let mut classes: Vec<(ExtReal, Vec<Form>)> = crit
        .iter()
        .filter(|c| c.kind == Kind::Sink)
        .map(|c| (c.pos.clone().into(), vec![Form::Point]))
        .collect();
    classes.push((ExtReal::NegInf, vec![Form::Point]));
    for (i, r) in reps.iter().enumerate() {
        classes.push((r.clone().into(), vec![Form::OpenRight, Form::OpenLeft, Form::Point]));
        if let Some(c) = crit.get(i).filter(|c| c.kind == Kind::Source) {
            classes.push((c.pos.clone().into(), FORMS.to_vec()));
        }
    }
    classes.push((ExtReal::PosInf, vec![Form::Point]));

    let rows = classes
        .into_iter()
        .flat_map(|(pos, forms)| {
            forms.into_iter().map(move |form| Label {
                family,
                form,
                pos: pos.clone(),
            })
        })
        .filter_map(|label| {
            let support = label.support(o)?;
            Some((show(&support), label.name_with(&text(&label.pos))))
        })
        .collect();

    let mut chain = Vec::new();
    for i in 0..=crit.len() {
        chain.push(symbol(i));
        if let Some(c) = crit.get(i) {
            chain.push(ExtReal::Finite(c.pos.clone()).to_string());
        }
    }
    LabelTable {
        header: chain.join(" < "),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    fn iv(s: &str) -> Interval {
        Interval::parse(s).unwrap()
    }

    fn sink_source() -> Orientation {
        Orientation::alternating(&[int(0), int(1)], Kind::Sink).unwrap()
    }

    #[test]
    fn classification_matches_table() {
        let o = sink_source();
        assert_eq!(classify_projective(&o, &iv("[0,+inf)")).unwrap().to_string(), "P_1");
        assert_eq!(classify_projective(&o, &iv("[0,1)")).unwrap().to_string(), "P_{1)}");
        assert_eq!(
            classify_projective(&o, &iv("(-inf,0]")).unwrap().to_string(),
            "P_{-inf}"
        );
        assert!(classify_projective(&o, &iv("(0,1/2]")).is_none());
        let d = Orientation::descending();
        assert_eq!(classify_injective(&d, &iv("[0,+inf)")).unwrap().to_string(), "I_0");
        assert!(classify_injective(&d, &iv("(-inf,0]")).is_none());
    }

    #[test]
    fn zero_forms_rejected() {
        let o = sink_source();
        assert!(Label::projective(&o, Form::OpenLeft, int(0).into()).is_err());
        assert!(Label::projective(&o, Form::OpenRight, rat(-1, 2).into()).is_err());
        assert!(Label::projective(&o, Form::Point, ExtReal::PosInf).is_err());
    }

    #[test]
    fn sink_source_table() {
        let table = label_table(&sink_source(), Family::Projective);
        assert_eq!(table.header, "a < 0 < b < 1 < c");
        let labels: Vec<&str> = table.rows.iter().map(|r| r.1.as_str()).collect();
        assert_eq!(
            labels,
            ["P_0", "P_{-inf}", "P_{(a}", "P_a", "P_{b)}", "P_b", "P_{1)}", "P_1", "P_{(1}", "P_{(c}", "P_c"]
        );
    }

    #[test]
    fn presentation_of_half_open_bar() {
        let o = Orientation::descending();
        let p = proj_presentation(&o, &iv("[0,1)"), Field::Rational).unwrap();
        assert_eq!(p.p0.iter().map(ToString::to_string).collect::<Vec<_>>(), ["P_{1)}"]);
        assert_eq!(p.p1.iter().map(ToString::to_string).collect::<Vec<_>>(), ["P_{0)}"]);
        assert!(p.map.is_injective());
        let (c, _) = p.map.cokernel().unwrap();
        assert_eq!(decompose(&c), [iv("[0,1)")].into_iter().collect());
    }

    #[test]
    fn projective_presentation_is_trivial() {
        let o = sink_source();
        let p = proj_presentation(&o, &iv("[0,1/2)"), Field::Rational).unwrap();
        assert!(p.p1.is_empty());
        assert_eq!(p.p0[0].to_string(), "P_{1/2)}");
    }

    #[test]
    fn hom_and_ext_examples() {
        let o = Orientation::descending();
        assert_eq!(hom_dim(&o, &iv("[0,2)"), &iv("[1,3)")).unwrap(), 1);
        assert_eq!(hom_dim(&o, &iv("[1,3)"), &iv("[0,2)")).unwrap(), 0);
        assert_eq!(ext_dim(&o, &iv("[0,1)"), &iv("(-inf,0)")).unwrap(), 1);
        assert_eq!(ext_dim(&o, &iv("(-inf,0]"), &iv("[3,4]")).unwrap(), 0);
    }

    #[test]
    fn filtration_of_single_bar() {
        let o = sink_source();
        let v = TameRep::from_bars(&o, &[iv("[0,1/2]")].into_iter().collect(), Field::Rational);
        let r = image_filtration(&v, &int(0)).unwrap();
        assert_eq!(
            r.steps,
            vec![FiltrationStep {
                dim: 1,
                support: iv("[0,1/2]")
            }]
        );
        assert!(image_filtration(&v, &rat(1, 2)).is_err());
    }

    #[test]
    fn criterion_on_simple_cases() {
        let o = sink_source();
        let q = Field::Rational;
        let proj = TameRep::from_bars(&o, &[iv("[0,1/2)"), iv("[0,1/3]")].into_iter().collect(), q);
        assert_eq!(composites_injective(&proj), Some(true));
        let not = TameRep::from_bars(&o, &[iv("(0,1/2]")].into_iter().collect(), q);
        assert_eq!(composites_injective(&not), Some(false));
        let wide = TameRep::from_bars(&o, &[iv("[0,+inf)")].into_iter().collect(), q);
        assert_eq!(composites_injective(&wide), None);
    }
}
