//! Deliberately wrong (co)product candidates in Span, used to show that the
//! bounded checker detects broken universal properties.

use super::constructions::{pair_into, product_set, span_coproduct};
use super::{CoproductResult, FamilyCone, ProductResult};
use crate::dblcat::{DblResult, Span};
use crate::family::FamProarrow;
use crate::finset::{elements_of_span_copresheaf, limit_of_diagram, FinFunction, SetDiagram, SetSpan, SpanMorphism};

/// A product candidate whose vertex apex ignores the constraint `l(a)` for
/// one member `a`. The foot component at `ℓa` is recomputed through `m_a`, so
/// every cell keeps a valid frame, but the apex repeats each tuple once per
/// element of `x_{ℓa}`.
///
/// Applies when some `a` is the only member over its left index, that index
/// carries at least two elements, and the true product apex is nonempty.
pub fn drop_limit_constraint(m: &FamProarrow<Span>) -> DblResult<Option<ProductResult<Span>>> {
    let (ni, na) = (m.src.len(), m.components.len());
    if ni == 1 && m.dst.len() == 1 && na == 1 {
        return Ok(None);
    }
    let left = m.indexing.left();
    let Some(a) = (0..na).find(|&a| {
        let i = left.apply(a);
        m.src.assignment[i].len() >= 2 && (0..na).filter(|&b| left.apply(b) == i).count() == 1
    }) else {
        return Ok(None);
    };
    let i = left.apply(a);
    let (px, pi_x) = product_set(&m.src.assignment);
    let (py, pi_y) = product_set(&m.dst.assignment);
    let mut objects = m.src.assignment.clone();
    objects.extend(m.components.iter().map(|s| s.apex().clone()));
    objects.extend(m.dst.assignment.iter().cloned());
    let mut generators: Vec<FinFunction> = m.components.iter().flat_map(|s| [s.left().clone(), s.right().clone()]).collect();
    let mut shape = elements_of_span_copresheaf(&m.indexing);
    shape.generators.remove(2 * a);
    generators.remove(2 * a);
    let (apex, mut legs) = limit_of_diagram(&SetDiagram::new(shape, objects, generators)?);
    if apex.is_empty() {
        return Ok(None);
    }
    legs[i] = legs[ni + a].then(m.components[a].left())?;
    let pro = SetSpan::new(pair_into(&apex, &legs[..ni])?, pair_into(&apex, &legs[ni + na..])?)?;
    let cells = (0..na)
        .map(|b| {
            let (k, l) = (left.apply(b), m.indexing.right().apply(b));
            SpanMorphism::new(pro.clone(), m.components[b].clone(), pi_x[k].clone(), legs[ni + b].clone(), pi_y[l].clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(FamilyCone {
        family: m.clone(),
        src: px,
        dst: py,
        src_legs: pi_x,
        dst_legs: pi_y,
        pro,
        cells,
    }))
}

/// The chosen coproduct with one element of one coprojection's apex map sent
/// to a different summit element over the same feet.
pub fn redirect_coprojection(m: &FamProarrow<Span>) -> DblResult<Option<CoproductResult<Span>>> {
    let mut sum = span_coproduct(m)?;
    let summit = sum.pro.clone();
    for (a, cell) in sum.cells.iter_mut().enumerate() {
        let map = cell.on_apex();
        for e in 0..map.dom().len() {
            let s = map.apply(e);
            let feet = (summit.left().apply(s), summit.right().apply(s));
            let other = (0..summit.apex().len()).find(|&t| t != s && (summit.left().apply(t), summit.right().apply(t)) == feet);
            if let Some(t) = other {
                let mut table = map.table().to_vec();
                table[e] = t;
                let redirected = FinFunction::new(map.dom().clone(), map.cod().clone(), table)?;
                *cell = SpanMorphism::new(
                    m.components[a].clone(),
                    summit.clone(),
                    cell.on_left().clone(),
                    redirected,
                    cell.on_right().clone(),
                )?;
                return Ok(Some(sum));
            }
        }
    }
    Ok(None)
}
