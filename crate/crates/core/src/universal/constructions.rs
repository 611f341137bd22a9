//! Chosen (co)products in Span and Mat.
//!
//! Products are unitary: the product of an identity family is the identity
//! proarrow on the product object, with identity cells on the projections.
//! A family with one index on each side and one member is its own
//! (co)product, and a one-element family of objects is its own
//! (co)product.

use super::{CoproductResult, FamilyCone, HasCoproducts, HasProducts, ProductResult};
use crate::dblcat::{DblResult, DoubleCategory, Mat, MatCell, MatProarrow, Span};
use crate::family::FamProarrow;
use crate::finset::{
    copair_fns_into, coproduct_sets, elements_of_span_copresheaf, limit_of_diagram, pair_fns, product_sets, tagged_union,
    FinFunction, FinSet, SetDiagram, SetSpan, SpanMorphism,
};

pub(crate) fn product_set(xs: &[FinSet]) -> (FinSet, Vec<FinFunction>) {
    if let [x] = xs {
        (x.clone(), vec![FinFunction::identity(x)])
    } else {
        product_sets(xs)
    }
}

pub(crate) fn coproduct_set(xs: &[FinSet]) -> (FinSet, Vec<FinFunction>) {
    if let [x] = xs {
        (x.clone(), vec![FinFunction::identity(x)])
    } else {
        coproduct_sets(xs)
    }
}

/// Pairing into the chosen product of the codomains.
pub(crate) fn pair_into(dom: &FinSet, fns: &[FinFunction]) -> DblResult<FinFunction> {
    if let [f] = fns {
        Ok(f.clone())
    } else {
        Ok(pair_fns(dom, fns)?)
    }
}

/// Copairing out of the chosen coproduct of the domains.
pub(crate) fn copair_into(cod: &FinSet, fns: &[FinFunction]) -> DblResult<FinFunction> {
    if let [f] = fns {
        Ok(f.clone())
    } else {
        Ok(copair_fns_into(cod, fns)?)
    }
}

pub(crate) fn is_identity_family<D: DoubleCategory>(d: &D, m: &FamProarrow<D>) -> bool {
    m.src == m.dst
        && m.indexing.is_identity()
        && m.components.iter().zip(&m.src.assignment).all(|(p, x)| *p == d.id_pro(x))
}

fn is_unary<D: DoubleCategory>(m: &FamProarrow<D>) -> bool {
    m.src.len() == 1 && m.dst.len() == 1 && m.components.len() == 1
}

fn unary_cone<D: DoubleCategory>(d: &D, m: &FamProarrow<D>) -> FamilyCone<D> {
    let (x, y) = (&m.src.assignment[0], &m.dst.assignment[0]);
    FamilyCone {
        family: m.clone(),
        src: x.clone(),
        dst: y.clone(),
        src_legs: vec![d.id_arrow(x)],
        dst_legs: vec![d.id_arrow(y)],
        pro: m.components[0].clone(),
        cells: vec![d.id_cell_on_pro(&m.components[0])],
    }
}

fn identity_cone<D: DoubleCategory>(d: &D, m: &FamProarrow<D>, x: D::Ob, legs: Vec<D::Arr>) -> FamilyCone<D> {
    FamilyCone {
        family: m.clone(),
        src: x.clone(),
        dst: x.clone(),
        cells: legs.iter().map(|p| d.id_cell_on_arrow(p)).collect(),
        src_legs: legs.clone(),
        dst_legs: legs,
        pro: d.id_pro(&x),
    }
}

/// The product in Span: the apex is the limit of the members' apexes over
/// the category of elements of the indexing span.
pub fn span_product(m: &FamProarrow<Span>) -> DblResult<ProductResult<Span>> {
    let (px, pi_x) = product_set(&m.src.assignment);
    if is_identity_family(&Span, m) {
        return Ok(identity_cone(&Span, m, px, pi_x));
    }
    if is_unary(m) {
        return Ok(unary_cone(&Span, m));
    }
    let (py, pi_y) = product_set(&m.dst.assignment);
    let (ni, na) = (m.src.len(), m.components.len());
    let mut objects = m.src.assignment.clone();
    objects.extend(m.components.iter().map(|s| s.apex().clone()));
    objects.extend(m.dst.assignment.iter().cloned());
    let generators = m.components.iter().flat_map(|s| [s.left().clone(), s.right().clone()]).collect();
    let diagram = SetDiagram::new(elements_of_span_copresheaf(&m.indexing), objects, generators)?;
    let (apex, legs) = limit_of_diagram(&diagram);
    let pro = SetSpan::new(pair_into(&apex, &legs[..ni])?, pair_into(&apex, &legs[ni + na..])?)?;
    let cells = (0..na)
        .map(|a| {
            let (i, j) = (m.indexing.left().apply(a), m.indexing.right().apply(a));
            SpanMorphism::new(pro.clone(), m.components[a].clone(), pi_x[i].clone(), legs[ni + a].clone(), pi_y[j].clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FamilyCone {
        family: m.clone(),
        src: px,
        dst: py,
        src_legs: pi_x,
        dst_legs: pi_y,
        pro,
        cells,
    })
}

/// The coproduct in Span: coproduct of the apexes with copaired legs.
pub fn span_coproduct(m: &FamProarrow<Span>) -> DblResult<CoproductResult<Span>> {
    if is_unary(m) {
        return Ok(unary_cone(&Span, m));
    }
    let (sx, iota_x) = coproduct_set(&m.src.assignment);
    let (sy, iota_y) = coproduct_set(&m.dst.assignment);
    let apexes: Vec<FinSet> = m.components.iter().map(|s| s.apex().clone()).collect();
    let (_, iota_a) = coproduct_set(&apexes);
    let mut left = Vec::with_capacity(apexes.len());
    let mut right = Vec::with_capacity(apexes.len());
    for (a, s) in m.components.iter().enumerate() {
        left.push(s.left().then(&iota_x[m.indexing.left().apply(a)])?);
        right.push(s.right().then(&iota_y[m.indexing.right().apply(a)])?);
    }
    let pro = SetSpan::new(copair_into(&sx, &left)?, copair_into(&sy, &right)?)?;
    let cells = m
        .components
        .iter()
        .enumerate()
        .map(|(a, s)| {
            let (i, j) = (m.indexing.left().apply(a), m.indexing.right().apply(a));
            SpanMorphism::new(s.clone(), pro.clone(), iota_x[i].clone(), iota_a[a].clone(), iota_y[j].clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FamilyCone {
        family: m.clone(),
        src: sx,
        dst: sy,
        src_legs: iota_x,
        dst_legs: iota_y,
        pro,
        cells,
    })
}

/// The product in Mat, computed entrywise.
pub fn mat_product(m: &FamProarrow<Mat>) -> DblResult<ProductResult<Mat>> {
    let (px, pi_x) = product_set(&m.src.assignment);
    if is_identity_family(&Mat, m) {
        return Ok(identity_cone(&Mat, m, px, pi_x));
    }
    if is_unary(m) {
        return Ok(unary_cone(&Mat, m));
    }
    let (py, pi_y) = product_set(&m.dst.assignment);
    let mut entries = Vec::with_capacity(px.len() * py.len());
    let mut projections = Vec::with_capacity(px.len() * py.len());
    for xi in 0..px.len() {
        for eta in 0..py.len() {
            let factors: Vec<FinSet> = m
                .components
                .iter()
                .enumerate()
                .map(|(a, p)| {
                    let (i, j) = (m.indexing.left().apply(a), m.indexing.right().apply(a));
                    p.entry(pi_x[i].apply(xi), pi_y[j].apply(eta)).clone()
                })
                .collect();
            let (e, projs) = product_sets(&factors);
            entries.push(e);
            projections.push(projs);
        }
    }
    let pro = MatProarrow::new(px.clone(), py.clone(), entries)?;
    let cells = (0..m.components.len())
        .map(|a| {
            let (i, j) = (m.indexing.left().apply(a), m.indexing.right().apply(a));
            let maps = projections.iter().map(|projs| projs[a].clone()).collect();
            MatCell::new(pro.clone(), m.components[a].clone(), pi_x[i].clone(), pi_y[j].clone(), maps)
        })
        .collect::<DblResult<Vec<_>>>()?;
    Ok(FamilyCone {
        family: m.clone(),
        src: px,
        dst: py,
        src_legs: pi_x,
        dst_legs: pi_y,
        pro,
        cells,
    })
}

/// For each element of a chosen coproduct, its summand and position.
fn origins(sum: &FinSet, injections: &[FinFunction]) -> Vec<(usize, usize)> {
    let mut out = vec![(0, 0); sum.len()];
    for (k, inj) in injections.iter().enumerate() {
        for e in 0..inj.dom().len() {
            out[inj.apply(e)] = (k, e);
        }
    }
    out
}

/// The coproduct in Mat: each entry is the tagged union of the members'
/// entries over the same pair of indices.
pub fn mat_coproduct(m: &FamProarrow<Mat>) -> DblResult<CoproductResult<Mat>> {
    let (sx, iota_x) = coproduct_set(&m.src.assignment);
    if is_identity_family(&Mat, m) {
        return Ok(identity_cone(&Mat, m, sx, iota_x));
    }
    if is_unary(m) {
        return Ok(unary_cone(&Mat, m));
    }
    let (sy, iota_y) = coproduct_set(&m.dst.assignment);
    let (ox, oy) = (origins(&sx, &iota_x), origins(&sy, &iota_y));
    let apex = m.indexing.apex();
    let mut entries = Vec::with_capacity(sx.len() * sy.len());
    // For each entry, the injection of every member that contributes to it.
    let mut injections: Vec<Vec<Option<FinFunction>>> = Vec::with_capacity(sx.len() * sy.len());
    for &(i, x) in &ox {
        for &(j, y) in &oy {
            let members: Vec<usize> = (0..apex.len())
                .filter(|&a| m.indexing.left().apply(a) == i && m.indexing.right().apply(a) == j)
                .collect();
            let tags: Vec<&str> = members.iter().map(|&a| &**apex.label(a)).collect();
            let sets: Vec<FinSet> = members.iter().map(|&a| m.components[a].entry(x, y).clone()).collect();
            let (e, injs) = tagged_union(&tags, &sets);
            let mut slot = vec![None; apex.len()];
            for (&a, inj) in members.iter().zip(injs) {
                slot[a] = Some(inj);
            }
            entries.push(e);
            injections.push(slot);
        }
    }
    let pro = MatProarrow::new(sx.clone(), sy.clone(), entries)?;
    let cells = (0..apex.len())
        .map(|a| {
            let (i, j) = (m.indexing.left().apply(a), m.indexing.right().apply(a));
            let p = &m.components[a];
            let mut maps = Vec::with_capacity(p.entries().len());
            for x in 0..p.src().len() {
                for y in 0..p.dst().len() {
                    let k = iota_x[i].apply(x) * sy.len() + iota_y[j].apply(y);
                    maps.push(injections[k][a].clone().expect("member contributes to its own entries"));
                }
            }
            MatCell::new(p.clone(), pro.clone(), iota_x[i].clone(), iota_y[j].clone(), maps)
        })
        .collect::<DblResult<Vec<_>>>()?;
    Ok(FamilyCone {
        family: m.clone(),
        src: sx,
        dst: sy,
        src_legs: iota_x,
        dst_legs: iota_y,
        pro,
        cells,
    })
}

impl HasProducts for Span {
    fn product_object(&self, xs: &[FinSet]) -> DblResult<(FinSet, Vec<FinFunction>)> {
        Ok(product_set(xs))
    }
    fn product(&self, m: &FamProarrow<Span>) -> DblResult<ProductResult<Span>> {
        span_product(m)
    }
}

impl HasCoproducts for Span {
    fn coproduct_object(&self, xs: &[FinSet]) -> DblResult<(FinSet, Vec<FinFunction>)> {
        Ok(coproduct_set(xs))
    }
    fn coproduct(&self, m: &FamProarrow<Span>) -> DblResult<CoproductResult<Span>> {
        span_coproduct(m)
    }
}

impl HasProducts for Mat {
    fn product_object(&self, xs: &[FinSet]) -> DblResult<(FinSet, Vec<FinFunction>)> {
        Ok(product_set(xs))
    }
    fn product(&self, m: &FamProarrow<Mat>) -> DblResult<ProductResult<Mat>> {
        mat_product(m)
    }
}

impl HasCoproducts for Mat {
    fn coproduct_object(&self, xs: &[FinSet]) -> DblResult<(FinSet, Vec<FinFunction>)> {
        Ok(coproduct_set(xs))
    }
    fn coproduct(&self, m: &FamProarrow<Mat>) -> DblResult<CoproductResult<Mat>> {
        mat_coproduct(m)
    }
}
