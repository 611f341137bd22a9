//! Comparison cells between (co)products and composition or identities.

use super::{HasCoproducts, HasProducts};
use crate::dblcat::span::pair_positions;
use crate::dblcat::{DblError, DblResult, DoubleCategory, Solutions};
use crate::family::{DblFam, FamObject, FamProarrow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ComparisonKind {
    /// `Σ(m ⊙ n) => Σm ⊙ Σn`.
    SigmaComp,
    /// `Σ(id_x) => id_{Σx}`.
    SigmaId,
    /// `Πm ⊙ Πn => Π(m ⊙ n)`.
    PiComp,
    /// `id_{Πx} => Π(id_x)`.
    PiId,
    /// `Σ F x -> F Σ x`, as the identity cell on the arrow.
    PhiObj,
    /// `Σ F m => F Σ m`.
    PhiPro,
    /// `F Π x -> Π F x`, as the identity cell on the arrow.
    PsiObj,
    /// `F Π m => Π F m`.
    PsiPro,
}

/// A comparison cell together with its inverse when it has one.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonCell<D: DoubleCategory> {
    pub kind: ComparisonKind,
    pub cell: D::Cell,
    pub inverse: Option<D::Cell>,
}

impl<D: DoubleCategory> ComparisonCell<D> {
    pub(crate) fn new(d: &D, kind: ComparisonKind, cell: D::Cell) -> Self {
        let inverse = d.invert_cell(&cell);
        ComparisonCell { kind, cell, inverse }
    }

    pub fn is_iso(&self) -> bool {
        self.inverse.is_some()
    }
}

pub(crate) fn unique<T>(s: Solutions<T>, what: &str) -> DblResult<T> {
    let count = s.count;
    s.unique().ok_or_else(|| DblError::NoUniqueSolution {
        what: what.to_string(),
        count,
    })
}

fn composite<D: DoubleCategory>(d: &D, m: &FamProarrow<D>, n: &FamProarrow<D>) -> DblResult<FamProarrow<D>> {
    if m.dst != n.src {
        return Err(DblError::NotComposable(format!("first family ends over {:?}, second starts over {:?}", m.dst.indexing, n.src.indexing)));
    }
    DblFam::covariant(d.clone()).compose_pro(m, n)
}

/// `Π_{m,n}`: the unique cell with `Π_{m,n} ; π_(a,b) = π_a ⊙ π_b`.
pub fn product_comparison<D: HasProducts>(d: &D, m: &FamProarrow<D>, n: &FamProarrow<D>) -> DblResult<ComparisonCell<D>> {
    let mn = composite(d, m, n)?;
    let (pm, pn, pmn) = (d.product(m)?, d.product(n)?, d.product(&mn)?);
    let top = d.compose_pro(&pm.pro, &pn.pro)?;
    let constraints = pair_positions(&m.indexing, &n.indexing)
        .into_iter()
        .enumerate()
        .map(|(c, (a, b))| Ok((pmn.cells[c].clone(), d.compose_cells_ext(&pm.cells[a], &pn.cells[b])?)))
        .collect::<DblResult<Vec<_>>>()?;
    let (l, r) = (d.id_arrow(&pm.src), d.id_arrow(&pn.dst));
    let cell = unique(d.solve_post(&top, &pmn.pro, &l, &r, &constraints), "product composition comparison")?;
    Ok(ComparisonCell::new(d, ComparisonKind::PiComp, cell))
}

/// `Π_x`: the unique cell with `Π_x ; π_i = id_{π_i}`.
pub fn product_identity_comparison<D: HasProducts>(d: &D, x: &FamObject<D>) -> DblResult<ComparisonCell<D>> {
    let pid = d.product(&DblFam::covariant(d.clone()).id_pro(x))?;
    let (px, projections) = d.product_object(&x.assignment)?;
    let constraints: Vec<_> = pid.cells.iter().zip(&projections).map(|(c, p)| (c.clone(), d.id_cell_on_arrow(p))).collect();
    let id = d.id_arrow(&px);
    let cell = unique(d.solve_post(&d.id_pro(&px), &pid.pro, &id, &id, &constraints), "product identity comparison")?;
    Ok(ComparisonCell::new(d, ComparisonKind::PiId, cell))
}

/// `Σ_{m,n}`: the unique cell with `ι_(a,b) ; Σ_{m,n} = ι_a ⊙ ι_b`.
pub fn coproduct_comparison<D: HasCoproducts>(d: &D, m: &FamProarrow<D>, n: &FamProarrow<D>) -> DblResult<ComparisonCell<D>> {
    let mn = composite(d, m, n)?;
    let (sm, sn, smn) = (d.coproduct(m)?, d.coproduct(n)?, d.coproduct(&mn)?);
    let bottom = d.compose_pro(&sm.pro, &sn.pro)?;
    let constraints = pair_positions(&m.indexing, &n.indexing)
        .into_iter()
        .enumerate()
        .map(|(c, (a, b))| Ok((smn.cells[c].clone(), d.compose_cells_ext(&sm.cells[a], &sn.cells[b])?)))
        .collect::<DblResult<Vec<_>>>()?;
    let (l, r) = (d.id_arrow(&sm.src), d.id_arrow(&sn.dst));
    let cell = unique(d.solve_pre(&smn.pro, &bottom, &l, &r, &constraints), "coproduct composition comparison")?;
    Ok(ComparisonCell::new(d, ComparisonKind::SigmaComp, cell))
}

/// `Σ_x`: the unique cell with `ι_i ; Σ_x = id_{ι_i}`.
pub fn coproduct_identity_comparison<D: HasCoproducts>(d: &D, x: &FamObject<D>) -> DblResult<ComparisonCell<D>> {
    let sid = d.coproduct(&DblFam::covariant(d.clone()).id_pro(x))?;
    let (sx, injections) = d.coproduct_object(&x.assignment)?;
    let constraints: Vec<_> = sid.cells.iter().zip(&injections).map(|(c, i)| (c.clone(), d.id_cell_on_arrow(i))).collect();
    let id = d.id_arrow(&sx);
    let cell = unique(d.solve_pre(&sid.pro, &d.id_pro(&sx), &id, &id, &constraints), "coproduct identity comparison")?;
    Ok(ComparisonCell::new(d, ComparisonKind::SigmaId, cell))
}

/// Whether a composable pair satisfies the iso-strength conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoStrongVerdict<D: DoubleCategory> {
    /// The right leg of the first indexing span and the left leg of the
    /// second are bijections.
    pub legs_bijective: bool,
    pub composite: ComparisonCell<D>,
    /// `Π_x` for the three object families of the pair.
    pub identities: Vec<ComparisonCell<D>>,
}

impl<D: DoubleCategory> IsoStrongVerdict<D> {
    pub fn composite_iso(&self) -> bool {
        self.composite.is_iso()
    }

    pub fn identities_iso(&self) -> bool {
        self.identities.iter().all(ComparisonCell::is_iso)
    }
}

pub fn check_iso_strong<D: HasProducts>(d: &D, m: &FamProarrow<D>, n: &FamProarrow<D>) -> DblResult<IsoStrongVerdict<D>> {
    let composite = product_comparison(d, m, n)?;
    let identities = [&m.src, &m.dst, &n.dst]
        .into_iter()
        .map(|x| product_identity_comparison(d, x))
        .collect::<DblResult<Vec<_>>>()?;
    Ok(IsoStrongVerdict {
        legs_bijective: m.indexing.right().is_bijection() && n.indexing.left().is_bijection(),
        composite,
        identities,
    })
}
