//! The double category Span(FinSet).

use std::collections::HashMap;

use super::{BindingPair, CompanionPair, ConjointPair, DblError, DblResult, DoubleCategory, Equipment, MatCell, MatProarrow, Solutions};
use crate::finset::{
    apex_candidates, compose_fn, inj_label, tup_label, FinFunction, FinSet, Label, SetSpan, SpanMorphism,
};

pub type SpanProarrow = SetSpan;
pub type SpanCell = SpanMorphism;

/// Span(FinSet): objects are finite sets, arrows functions, proarrows spans
/// composed by pullback, cells maps of spans.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Span;

fn endpoint(msg: &str) -> DblError {
    DblError::EndpointMismatch(msg.to_string())
}

impl DoubleCategory for Span {
    type Ob = FinSet;
    type Arr = FinFunction;
    type Pro = SetSpan;
    type Cell = SpanMorphism;

    fn arrow_src(&self, f: &FinFunction) -> FinSet {
        f.dom().clone()
    }
    fn arrow_dst(&self, f: &FinFunction) -> FinSet {
        f.cod().clone()
    }
    fn pro_src(&self, m: &SetSpan) -> FinSet {
        m.left_foot().clone()
    }
    fn pro_dst(&self, m: &SetSpan) -> FinSet {
        m.right_foot().clone()
    }
    fn cell_top(&self, a: &SpanMorphism) -> SetSpan {
        a.src().clone()
    }
    fn cell_bottom(&self, a: &SpanMorphism) -> SetSpan {
        a.dst().clone()
    }
    fn cell_left(&self, a: &SpanMorphism) -> FinFunction {
        a.on_left().clone()
    }
    fn cell_right(&self, a: &SpanMorphism) -> FinFunction {
        a.on_right().clone()
    }

    fn id_arrow(&self, x: &FinSet) -> FinFunction {
        FinFunction::identity(x)
    }
    fn compose_arrows(&self, f: &FinFunction, g: &FinFunction) -> DblResult<FinFunction> {
        Ok(compose_fn(f, g)?)
    }
    fn id_pro(&self, x: &FinSet) -> SetSpan {
        SetSpan::identity(x)
    }
    fn compose_pro(&self, m: &SetSpan, n: &SetSpan) -> DblResult<SetSpan> {
        if m.right_foot() != n.left_foot() {
            return Err(endpoint("span composite: feet differ"));
        }
        Ok(m.compose(n)?)
    }
    fn id_cell_on_pro(&self, m: &SetSpan) -> SpanMorphism {
        SpanMorphism::identity(m)
    }
    fn id_cell_on_arrow(&self, f: &FinFunction) -> SpanMorphism {
        SpanMorphism::new_unchecked(
            SetSpan::identity(f.dom()),
            SetSpan::identity(f.cod()),
            f.clone(),
            f.clone(),
            f.clone(),
        )
    }
    fn compose_cells_vert(&self, a: &SpanMorphism, b: &SpanMorphism) -> DblResult<SpanMorphism> {
        if a.dst() != b.src() {
            return Err(endpoint("vertical composite: middle spans differ"));
        }
        Ok(a.then(b)?)
    }
    fn compose_cells_ext(&self, a: &SpanMorphism, b: &SpanMorphism) -> DblResult<SpanMorphism> {
        if a.on_right() != b.on_left() {
            return Err(endpoint("external composite: shared arrows differ"));
        }
        Ok(a.beside(b)?)
    }
    fn associator(&self, m: &SetSpan, n: &SetSpan, p: &SetSpan) -> DblResult<SpanMorphism> {
        let mn = self.compose_pro(m, n)?;
        let np = self.compose_pro(n, p)?;
        let src = self.compose_pro(&mn, p)?;
        let dst = self.compose_pro(m, &np)?;
        // pair(pair(a,b),c) -> pair(a,pair(b,c)), computed on positions.
        let mn_pairs = pair_positions(m, n);
        let src_pairs = pair_positions(&mn, p);
        let np_index: HashMap<(usize, usize), usize> =
            pair_positions(n, p).into_iter().enumerate().map(|(k, q)| (q, k)).collect();
        let dst_index: HashMap<(usize, usize), usize> =
            pair_positions(m, &np).into_iter().enumerate().map(|(k, q)| (q, k)).collect();
        let table = src_pairs
            .iter()
            .map(|&(ab, c)| {
                let (a, b) = mn_pairs[ab];
                dst_index[&(a, np_index[&(b, c)])]
            })
            .collect();
        let on_apex = FinFunction::new(src.apex().clone(), dst.apex().clone(), table)?;
        Ok(SpanMorphism::new_unchecked(
            src,
            dst,
            FinFunction::identity(m.left_foot()),
            on_apex,
            FinFunction::identity(p.right_foot()),
        ))
    }
    fn left_unitor(&self, m: &SetSpan) -> DblResult<SpanMorphism> {
        let src = self.compose_pro(&SetSpan::identity(m.left_foot()), m)?;
        let table = pair_positions(&SetSpan::identity(m.left_foot()), m).into_iter().map(|(_, s)| s).collect();
        let on_apex = FinFunction::new(src.apex().clone(), m.apex().clone(), table)?;
        Ok(SpanMorphism::new_unchecked(
            src,
            m.clone(),
            FinFunction::identity(m.left_foot()),
            on_apex,
            FinFunction::identity(m.right_foot()),
        ))
    }
    fn right_unitor(&self, m: &SetSpan) -> DblResult<SpanMorphism> {
        let src = self.compose_pro(m, &SetSpan::identity(m.right_foot()))?;
        let table = pair_positions(m, &SetSpan::identity(m.right_foot())).into_iter().map(|(s, _)| s).collect();
        let on_apex = FinFunction::new(src.apex().clone(), m.apex().clone(), table)?;
        Ok(SpanMorphism::new_unchecked(
            src,
            m.clone(),
            FinFunction::identity(m.left_foot()),
            on_apex,
            FinFunction::identity(m.right_foot()),
        ))
    }
    fn invert_arrow(&self, f: &FinFunction) -> Option<FinFunction> {
        f.inverse()
    }
    fn invert_cell(&self, a: &SpanMorphism) -> Option<SpanMorphism> {
        a.inverse()
    }
    fn validate_cell(&self, a: &SpanMorphism) -> Result<(), String> {
        SpanMorphism::new(a.src().clone(), a.dst().clone(), a.on_left().clone(), a.on_apex().clone(), a.on_right().clone())
            .map(|_| ())
            .map_err(|e| e.to_string())
    }

    fn objects(&self, bound: usize) -> Vec<FinSet> {
        (0..=bound).map(FinSet::range).collect()
    }
    fn arrows_between(&self, x: &FinSet, y: &FinSet) -> Vec<FinFunction> {
        FinFunction::all(x, y)
    }
    fn proarrows_between(&self, x: &FinSet, y: &FinSet, bound: usize) -> Vec<SetSpan> {
        SetSpan::all_between(x, y, bound, true)
    }
    fn cells_in_frame(&self, top: &SetSpan, bottom: &SetSpan, left: &FinFunction, right: &FinFunction) -> Vec<SpanMorphism> {
        SpanMorphism::all_in_frame(top, bottom, left, right)
    }
    fn count_cells_in_frame(&self, top: &SetSpan, bottom: &SetSpan, left: &FinFunction, right: &FinFunction) -> usize {
        apex_candidates(top, bottom, left, right)
            .map(|c| c.iter().fold(1usize, |acc, v| acc.saturating_mul(v.len())))
            .unwrap_or(0)
    }

    fn solve_post(
        &self,
        top: &SetSpan,
        bottom: &SetSpan,
        left: &FinFunction,
        right: &FinFunction,
        constraints: &[(SpanMorphism, SpanMorphism)],
    ) -> Solutions<SpanMorphism> {
        for (p, q) in constraints {
            let fits = p.src() == bottom
                && q.src() == top
                && p.dst() == q.dst()
                && compose_fn(left, p.on_left()).ok().as_ref() == Some(q.on_left())
                && compose_fn(right, p.on_right()).ok().as_ref() == Some(q.on_right());
            if !fits {
                return Solutions::none();
            }
        }
        let Some(cands) = apex_candidates(top, bottom, left, right) else {
            return Solutions::none();
        };
        let mut count = 1usize;
        let mut table = Vec::with_capacity(cands.len());
        for (s, cs) in cands.iter().enumerate() {
            let ok: Vec<usize> = cs
                .iter()
                .copied()
                .filter(|&t| constraints.iter().all(|(p, q)| p.on_apex().apply(t) == q.on_apex().apply(s)))
                .collect();
            count = count.saturating_mul(ok.len());
            if count == 0 {
                return Solutions::none();
            }
            table.push(ok[0]);
        }
        let witness = (count == 1).then(|| {
            SpanMorphism::new_unchecked(
                top.clone(),
                bottom.clone(),
                left.clone(),
                FinFunction::new(top.apex().clone(), bottom.apex().clone(), table).expect("indices in range"),
                right.clone(),
            )
        });
        Solutions { count, witness }
    }

    fn solve_pre(
        &self,
        top: &SetSpan,
        bottom: &SetSpan,
        left: &FinFunction,
        right: &FinFunction,
        constraints: &[(SpanMorphism, SpanMorphism)],
    ) -> Solutions<SpanMorphism> {
        for (i, q) in constraints {
            let fits = i.dst() == top
                && q.dst() == bottom
                && i.src() == q.src()
                && compose_fn(i.on_left(), left).ok().as_ref() == Some(q.on_left())
                && compose_fn(i.on_right(), right).ok().as_ref() == Some(q.on_right());
            if !fits {
                return Solutions::none();
            }
        }
        let Some(cands) = apex_candidates(top, bottom, left, right) else {
            return Solutions::none();
        };
        let mut required: Vec<Option<usize>> = vec![None; top.apex().len()];
        for (i, q) in constraints {
            for s in 0..i.src().apex().len() {
                let p = i.on_apex().apply(s);
                let v = q.on_apex().apply(s);
                match required[p] {
                    None => required[p] = Some(v),
                    Some(w) if w == v => {}
                    Some(_) => return Solutions::none(),
                }
            }
        }
        let mut count = 1usize;
        let mut table = Vec::with_capacity(cands.len());
        for (p, cs) in cands.iter().enumerate() {
            match required[p] {
                Some(v) => {
                    if !cs.contains(&v) {
                        return Solutions::none();
                    }
                    table.push(v);
                }
                None => {
                    count = count.saturating_mul(cs.len());
                    if count == 0 {
                        return Solutions::none();
                    }
                    table.push(cs[0]);
                }
            }
        }
        let witness = (count == 1).then(|| {
            SpanMorphism::new_unchecked(
                top.clone(),
                bottom.clone(),
                left.clone(),
                FinFunction::new(top.apex().clone(), bottom.apex().clone(), table).expect("indices in range"),
                right.clone(),
            )
        });
        Solutions { count, witness }
    }

    fn solve_arrow_post(&self, src: &FinSet, dst: &FinSet, constraints: &[(FinFunction, FinFunction)]) -> Solutions<FinFunction> {
        if constraints.iter().any(|(p, f)| p.dom() != dst || f.dom() != src || p.cod() != f.cod()) {
            return Solutions::none();
        }
        let mut by_sig: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for t in 0..dst.len() {
            by_sig.entry(constraints.iter().map(|(p, _)| p.apply(t)).collect()).or_default().push(t);
        }
        let mut count = 1usize;
        let mut table = Vec::with_capacity(src.len());
        for e in 0..src.len() {
            let sig: Vec<usize> = constraints.iter().map(|(_, f)| f.apply(e)).collect();
            let Some(ts) = by_sig.get(&sig) else {
                return Solutions::none();
            };
            count = count.saturating_mul(ts.len());
            table.push(ts[0]);
        }
        let witness = (count == 1).then(|| FinFunction::new(src.clone(), dst.clone(), table).expect("indices in range"));
        Solutions { count, witness }
    }

    fn solve_arrow_pre(&self, src: &FinSet, dst: &FinSet, constraints: &[(FinFunction, FinFunction)]) -> Solutions<FinFunction> {
        if constraints.iter().any(|(i, f)| i.cod() != src || f.cod() != dst || i.dom() != f.dom()) {
            return Solutions::none();
        }
        let mut required: Vec<Option<usize>> = vec![None; src.len()];
        for (i, f) in constraints {
            for s in 0..i.dom().len() {
                let p = i.apply(s);
                match required[p] {
                    None => required[p] = Some(f.apply(s)),
                    Some(w) if w == f.apply(s) => {}
                    Some(_) => return Solutions::none(),
                }
            }
        }
        let mut count = 1usize;
        let mut table = Vec::with_capacity(src.len());
        for r in required {
            match r {
                Some(v) => table.push(v),
                None => {
                    count = count.saturating_mul(dst.len());
                    if count == 0 {
                        return Solutions::none();
                    }
                    table.push(0);
                }
            }
        }
        let witness = (count == 1).then(|| FinFunction::new(src.clone(), dst.clone(), table).expect("indices in range"));
        Solutions { count, witness }
    }
}

/// Position pairs of the pullback apex of `m ⊙ n`, in apex order.
pub(crate) fn pair_positions(m: &SetSpan, n: &SetSpan) -> Vec<(usize, usize)> {
    let mut fiber: Vec<Vec<usize>> = vec![Vec::new(); n.left_foot().len()];
    for t in 0..n.apex().len() {
        fiber[n.left().apply(t)].push(t);
    }
    let mut out = Vec::new();
    for s in 0..m.apex().len() {
        for &t in &fiber[m.right().apply(s)] {
            out.push((s, t));
        }
    }
    out
}

impl Equipment for Span {
    fn companion(&self, f: &FinFunction) -> DblResult<CompanionPair<Span>> {
        let p = SetSpan::companion(f);
        let unit = SpanMorphism::new(
            SetSpan::identity(f.dom()),
            p.clone(),
            FinFunction::identity(f.dom()),
            FinFunction::identity(f.dom()),
            f.clone(),
        )?;
        let counit = SpanMorphism::new(p.clone(), SetSpan::identity(f.cod()), f.clone(), f.clone(), FinFunction::identity(f.cod()))?;
        Ok(BindingPair {
            arrow: f.clone(),
            proarrow: p,
            unit,
            counit,
        })
    }

    fn conjoint(&self, f: &FinFunction) -> DblResult<ConjointPair<Span>> {
        let p = SetSpan::conjoint(f);
        let unit = SpanMorphism::new(
            SetSpan::identity(f.dom()),
            p.clone(),
            f.clone(),
            FinFunction::identity(f.dom()),
            FinFunction::identity(f.dom()),
        )?;
        let counit = SpanMorphism::new(p.clone(), SetSpan::identity(f.cod()), FinFunction::identity(f.cod()), f.clone(), f.clone())?;
        Ok(BindingPair {
            arrow: f.clone(),
            proarrow: p,
            unit,
            counit,
        })
    }
}

/// The restriction `n(f, g) = f_! ⊙ n ⊙ g^*` with its cartesian cell
/// `n(f, g) => n`; apex elements are `pair(pair(x,s),y)` with `f(x) = ℓ(s)`
/// and `r(s) = g(y)`.
pub fn restrict_span(n: &SetSpan, f: &FinFunction, g: &FinFunction) -> DblResult<(SetSpan, SpanMorphism)> {
    if f.cod() != n.left_foot() || g.cod() != n.right_foot() {
        return Err(endpoint("restriction arrows do not land in the span's feet"));
    }
    let comp = SetSpan::companion(f);
    let conj = SetSpan::conjoint(g);
    let fn_ = comp.compose(n)?;
    let r = fn_.compose(&conj)?;
    let inner = pair_positions(&comp, n);
    let table = pair_positions(&fn_, &conj).into_iter().map(|(xs, _)| inner[xs].1).collect();
    let cell = SpanMorphism::new(r.clone(), n.clone(), f.clone(), FinFunction::new(r.apex().clone(), n.apex().clone(), table)?, g.clone())?;
    Ok((r, cell))
}

/// The extension `f^* ⊙ m ⊙ g_!` of `m` along `f` and `g`, with its
/// opcartesian cell `m => ext`.
pub fn extend_span(m: &SetSpan, f: &FinFunction, g: &FinFunction) -> DblResult<(SetSpan, SpanMorphism)> {
    if f.dom() != m.left_foot() || g.dom() != m.right_foot() {
        return Err(endpoint("extension arrows do not leave the span's feet"));
    }
    let conj = SetSpan::conjoint(f);
    let comp = SetSpan::companion(g);
    let fm = conj.compose(m)?;
    let e = fm.compose(&comp)?;
    let inner: HashMap<(usize, usize), usize> = pair_positions(&conj, m).into_iter().enumerate().map(|(k, q)| (q, k)).collect();
    let outer: HashMap<(usize, usize), usize> = pair_positions(&fm, &comp).into_iter().enumerate().map(|(k, q)| (q, k)).collect();
    let table = (0..m.apex().len())
        .map(|s| outer[&(inner[&(m.left().apply(s), s)], m.right().apply(s))])
        .collect();
    let cell = SpanMorphism::new(m.clone(), e.clone(), f.clone(), FinFunction::new(m.apex().clone(), e.apex().clone(), table)?, g.clone())?;
    Ok((e, cell))
}

/// The matrix of fibers: entry `(x, y)` lists the apex elements over `(x, y)`.
pub fn span_to_mat(m: &SetSpan) -> MatProarrow {
    let (nx, ny) = (m.left_foot().len(), m.right_foot().len());
    let mut fibers: Vec<Vec<Label>> = vec![Vec::new(); nx * ny];
    for s in 0..m.apex().len() {
        fibers[m.left().apply(s) * ny + m.right().apply(s)].push(m.apex().label(s).clone());
    }
    MatProarrow::new_unchecked(
        m.left_foot().clone(),
        m.right_foot().clone(),
        fibers.into_iter().map(FinSet::from_distinct).collect(),
    )
}

/// The span of a matrix: apex is the union of the entries, labeled
/// `inj(tup(x,y),e)`.
pub fn mat_to_span(mm: &MatProarrow) -> SetSpan {
    let (x, y) = (mm.src(), mm.dst());
    let mut labels = Vec::new();
    let mut l = Vec::new();
    let mut r = Vec::new();
    for i in 0..x.len() {
        for j in 0..y.len() {
            let tag = tup_label(&[&**x.label(i), &**y.label(j)]);
            for e in mm.entry(i, j).elements() {
                labels.push(inj_label(&tag, e));
                l.push(i);
                r.push(j);
            }
        }
    }
    let apex = FinSet::from_distinct(labels);
    SetSpan::new(
        FinFunction::new(apex.clone(), x.clone(), l).expect("indices in range"),
        FinFunction::new(apex, y.clone(), r).expect("indices in range"),
    )
    .expect("legs share the apex")
}

/// Transports a span cell to the corresponding matrix cell.
pub fn span_cell_to_mat(a: &SpanMorphism) -> MatCell {
    let top = span_to_mat(a.src());
    let bottom = span_to_mat(a.dst());
    let ny = a.src().right_foot().len();
    let bny = a.dst().right_foot().len();
    let mut maps = Vec::with_capacity(top.entries().len());
    for i in 0..a.src().left_foot().len() {
        for j in 0..ny {
            let src_entry = top.entry(i, j).clone();
            let (bi, bj) = (a.on_left().apply(i), a.on_right().apply(j));
            let dst_entry = bottom.entries()[bi * bny + bj].clone();
            let table = src_entry
                .elements()
                .iter()
                .map(|e| {
                    let s = a.src().apex().index_of(e).expect("fiber element");
                    let t = a.on_apex().apply(s);
                    dst_entry.index_of(a.dst().apex().label(t)).expect("image lies in the fiber")
                })
                .collect();
            maps.push(FinFunction::new(src_entry, dst_entry, table).expect("indices in range"));
        }
    }
    MatCell::new_unchecked(top, bottom, a.on_left().clone(), a.on_right().clone(), maps)
}

/// Transports a matrix cell to the corresponding span cell.
pub fn mat_cell_to_span(a: &MatCell) -> SpanMorphism {
    let top = mat_to_span(a.top());
    let bottom = mat_to_span(a.bottom());
    let offsets = |mm: &MatProarrow| {
        let mut acc = 0;
        mm.entries()
            .iter()
            .map(|e| {
                let o = acc;
                acc += e.len();
                o
            })
            .collect::<Vec<_>>()
    };
    let (top_off, bot_off) = (offsets(a.top()), offsets(a.bottom()));
    let (ny, bny) = (a.top().dst().len(), a.bottom().dst().len());
    let mut table = Vec::new();
    for i in 0..a.top().src().len() {
        for j in 0..ny {
            let k = i * ny + j;
            let target = a.row().apply(i) * bny + a.col().apply(j);
            for e in 0..a.top().entries()[k].len() {
                let _ = top_off[k] + e;
                table.push(bot_off[target] + a.maps()[k].apply(e));
            }
        }
    }
    SpanMorphism::new_unchecked(
        top.clone(),
        bottom.clone(),
        a.row().clone(),
        FinFunction::new(top.apex().clone(), bottom.apex().clone(), table).expect("indices in range"),
        a.col().clone(),
    )
}

/// The canonical globular iso `mat_to_span(span_to_mat(m)) => m`.
pub fn span_roundtrip_witness(m: &SetSpan) -> SpanMorphism {
    let back = mat_to_span(&span_to_mat(m));
    let ny = m.right_foot().len();
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); m.left_foot().len() * ny];
    for s in 0..m.apex().len() {
        fibers[m.left().apply(s) * ny + m.right().apply(s)].push(s);
    }
    let table = fibers.into_iter().flatten().collect();
    SpanMorphism::new_unchecked(
        back.clone(),
        m.clone(),
        FinFunction::identity(m.left_foot()),
        FinFunction::new(back.apex().clone(), m.apex().clone(), table).expect("bijection"),
        FinFunction::identity(m.right_foot()),
    )
}

/// The canonical globular iso `span_to_mat(mat_to_span(mm)) => mm`.
pub fn mat_roundtrip_witness(mm: &MatProarrow) -> MatCell {
    let back = span_to_mat(&mat_to_span(mm));
    let maps = back
        .entries()
        .iter()
        .zip(mm.entries())
        .map(|(b, e)| FinFunction::new(b.clone(), e.clone(), (0..e.len()).collect()).expect("same size"))
        .collect();
    MatCell::new_unchecked(
        back,
        mm.clone(),
        FinFunction::identity(mm.src()),
        FinFunction::identity(mm.dst()),
        maps,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dblcat::{check_companion, check_conjoint};

    fn f(dom: usize, cod: usize, t: &[usize]) -> FinFunction {
        FinFunction::new(FinSet::range(dom), FinSet::range(cod), t.to_vec()).unwrap()
    }

    #[test]
    fn compose_with_bijective_legs() {
        let m = SetSpan::new(f(2, 1, &[0, 0]), f(2, 2, &[0, 1])).unwrap();
        let n = SetSpan::new(f(2, 2, &[0, 1]), f(2, 1, &[0, 0])).unwrap();
        let mn = Span.compose_pro(&m, &n).unwrap();
        assert_eq!(mn.apex(), &FinSet::new(["pair(0,0)", "pair(1,1)"]).unwrap());
    }

    #[test]
    fn unitors_are_bijections() {
        let m = SetSpan::new(f(3, 2, &[0, 1, 1]), f(3, 2, &[1, 1, 0])).unwrap();
        let l = Span.left_unitor(&m).unwrap();
        let r = Span.right_unitor(&m).unwrap();
        assert!(l.on_apex().is_bijection() && r.on_apex().is_bijection());
        assert_eq!(l.on_apex().dom().len(), 3);
    }

    #[test]
    fn companion_of_terminal_map() {
        let g = f(2, 1, &[0, 0]);
        let pair = Span.companion(&g).unwrap();
        assert_eq!(pair.proarrow.apex().len(), 2);
        assert_eq!(pair.counit.on_apex(), &g);
        check_companion(&Span, &pair).unwrap();
        check_conjoint(&Span, &Span.conjoint(&g).unwrap()).unwrap();
        let id = FinFunction::identity(&FinSet::range(2));
        let pair = Span.companion(&id).unwrap();
        assert_eq!(pair.proarrow, SetSpan::identity(&FinSet::range(2)));
    }

    #[test]
    fn restriction_counts_triples() {
        let n = SetSpan::new(f(3, 2, &[0, 1, 1]), f(3, 2, &[1, 0, 0])).unwrap();
        let rf = f(2, 2, &[1, 1]);
        let rg = f(3, 2, &[0, 0, 1]);
        let (r, cell) = restrict_span(&n, &rf, &rg).unwrap();
        let mut expected = 0;
        for x in 0..2 {
            for s in 0..3 {
                for y in 0..3 {
                    if rf.apply(x) == n.left().apply(s) && n.right().apply(s) == rg.apply(y) {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(r.apex().len(), expected);
        assert!(Span.validate_cell(&cell).is_ok());
    }

    #[test]
    fn fibers_and_round_trip() {
        let m = SetSpan::new(
            FinFunction::new(FinSet::new(["s0", "s1"]).unwrap(), FinSet::range(1), vec![0, 0]).unwrap(),
            FinFunction::new(FinSet::new(["s0", "s1"]).unwrap(), FinSet::range(1), vec![0, 0]).unwrap(),
        )
        .unwrap();
        let mm = span_to_mat(&m);
        assert_eq!(mm.entry(0, 0).len(), 2);
        let w = span_roundtrip_witness(&m);
        assert!(w.is_iso());
        assert!(Span.validate_cell(&w).is_ok());
    }
}
