//! Structure arrows between products, their companions and conjoints,
//! diagonal proarrows, restrictions of products, and products rebuilt from
//! parallel products.

use super::comparison::unique;
use super::{FamilyCone, HasProducts, ProductResult};
use crate::dblcat::{BindingPair, CompanionPair, ConjointPair, DblError, DblResult, DoubleCategory};
use crate::family::{DblFam, FamArrow, FamObject, FamProarrow, Variance};
use crate::finset::{FinFunction, FinSet, SetSpan};

/// `Π(f0) : Πx -> Π f0*x` with its companion and conjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureArrow<D: DoubleCategory> {
    pub arrow: D::Arr,
    /// The restricted family `f0*x`.
    pub reindexed: FamObject<D>,
    pub companion: CompanionPair<D>,
    pub conjoint: ConjointPair<D>,
    /// Products whose vertex proarrows are the companion and conjoint.
    pub companion_product: ProductResult<D>,
    pub conjoint_product: ProductResult<D>,
}

fn reindex<D: DoubleCategory>(f0: &FinFunction, x: &FamObject<D>) -> DblResult<FamObject<D>> {
    if f0.cod() != &x.indexing {
        return Err(DblError::AssignmentMismatch(format!(
            "index map lands in {:?}, family is indexed by {:?}",
            f0.cod(),
            x.indexing
        )));
    }
    Ok(FamObject {
        indexing: f0.dom().clone(),
        assignment: (0..f0.dom().len()).map(|j| x.assignment[f0.apply(j)].clone()).collect(),
    })
}

/// The arrow `Πx -> Π f0*x` whose `j`-th component is `π_{f0 j}`.
pub(crate) fn structure_map<D: HasProducts>(d: &D, f0: &FinFunction, x: &FamObject<D>) -> DblResult<(D::Arr, FamObject<D>)> {
    let y = reindex(f0, x)?;
    let (px, pi_x) = d.product_object(&x.assignment)?;
    let (py, pi_y) = d.product_object(&y.assignment)?;
    let constraints: Vec<_> = (0..y.len()).map(|j| (pi_y[j].clone(), pi_x[f0.apply(j)].clone())).collect();
    let arrow = unique(d.solve_arrow_post(&px, &py, &constraints), "structure arrow")?;
    Ok((arrow, y))
}

pub fn structure_arrow<D: HasProducts>(d: &D, f0: &FinFunction, x: &FamObject<D>) -> DblResult<StructureArrow<D>> {
    let (arrow, y) = structure_map(d, f0, x)?;
    let (px, pi_x) = d.product_object(&x.assignment)?;
    let (py, pi_y) = d.product_object(&y.assignment)?;
    let fam = DblFam::covariant(d.clone());
    let ids: Vec<D::Pro> = y.assignment.iter().map(|o| d.id_pro(o)).collect();
    let companion_product = d.product(&fam.proarrow(x.clone(), y.clone(), SetSpan::conjoint(f0), ids.clone())?)?;
    let conjoint_product = d.product(&fam.proarrow(y.clone(), x.clone(), SetSpan::companion(f0), ids)?)?;
    let units: Vec<D::Cell> = (0..y.len()).map(|j| d.id_cell_on_arrow(&pi_x[f0.apply(j)])).collect();
    let py_ids: Vec<D::Cell> = pi_y.iter().map(|p| d.id_cell_on_arrow(p)).collect();
    let (id_x, id_y) = (d.id_arrow(&px), d.id_arrow(&py));

    let pair = |p: &ProductResult<D>| -> Vec<(D::Cell, D::Cell)> { p.cells.iter().cloned().zip(units.iter().cloned()).collect() };
    let back = |p: &ProductResult<D>| -> Vec<(D::Cell, D::Cell)> { py_ids.iter().cloned().zip(p.cells.iter().cloned()).collect() };

    let cp = &companion_product;
    let companion = BindingPair {
        arrow: arrow.clone(),
        proarrow: cp.pro.clone(),
        unit: unique(d.solve_post(&d.id_pro(&px), &cp.pro, &id_x, &arrow, &pair(cp)), "companion unit")?,
        counit: unique(d.solve_post(&cp.pro, &d.id_pro(&py), &arrow, &id_y, &back(cp)), "companion counit")?,
    };
    let jp = &conjoint_product;
    let conjoint = BindingPair {
        arrow: arrow.clone(),
        proarrow: jp.pro.clone(),
        unit: unique(d.solve_post(&d.id_pro(&px), &jp.pro, &arrow, &id_x, &pair(jp)), "conjoint unit")?,
        counit: unique(d.solve_post(&jp.pro, &d.id_pro(&py), &id_y, &arrow, &back(jp)), "conjoint counit")?,
    };
    Ok(StructureArrow {
        arrow,
        reindexed: y,
        companion,
        conjoint,
        companion_product,
        conjoint_product,
    })
}

/// The diagonal `Δ_x : x -> x²`, the diagonal proarrow `δ_x : x ⇸ x²` with
/// its two projections, and the unit and counit cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonal<D: DoubleCategory> {
    pub arrow: D::Arr,
    pub proarrow: D::Pro,
    pub product: ProductResult<D>,
    pub unit: D::Cell,
    pub counit: D::Cell,
}

pub fn diagonal_proarrow<D: HasProducts>(d: &D, x: &D::Ob) -> DblResult<Diagonal<D>> {
    let one = FinSet::singleton("*");
    let codiagonal = FinFunction::new(FinSet::range(2), one.clone(), vec![0, 0])?;
    let s = structure_arrow(d, &codiagonal, &FamObject::new(one, vec![x.clone()])?)?;
    Ok(Diagonal {
        arrow: s.arrow,
        proarrow: s.companion.proarrow,
        product: s.companion_product,
        unit: s.companion.unit,
        counit: s.companion.counit,
    })
}

/// The product of a family of restrictions and the restriction cell
/// `Π(n(f,g)) => Πn` over `Π(f0, f)` and `Π(g0, g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionOfProducts<D: DoubleCategory> {
    /// The family `n_b(f_{ℓb}, g_{rb})` over `I <- K <- B -> L -> J`.
    pub restricted: FamProarrow<D>,
    pub product: ProductResult<D>,
    pub left: D::Arr,
    pub right: D::Arr,
    pub cell: D::Cell,
}

/// The arrow `Πx -> Πw` paired from `π_{f0 k} ; f_k`, for a contravariant
/// family arrow `(f0, f) : (I, x) -> (K, w)`.
fn product_arrow<D: HasProducts>(d: &D, f: &FamArrow<D>) -> DblResult<D::Arr> {
    let (px, pi_x) = d.product_object(&f.src.assignment)?;
    let (pw, pi_w) = d.product_object(&f.dst.assignment)?;
    let constraints = (0..f.dst.len())
        .map(|k| Ok((pi_w[k].clone(), d.compose_arrows(&pi_x[f.on_index.apply(k)], &f.components[k])?)))
        .collect::<DblResult<Vec<_>>>()?;
    unique(d.solve_arrow_post(&px, &pw, &constraints), "product arrow")
}

/// Restricts a family `n : (K, w) ⇸ (L, z)` along contravariant family
/// arrows `f : (I, x) -> (K, w)` and `g : (J, y) -> (L, z)`, using
/// `restrict` for the members, and takes products.
pub fn restriction_of_products<D, R>(d: &D, n: &FamProarrow<D>, f: &FamArrow<D>, g: &FamArrow<D>, restrict: R) -> DblResult<RestrictionOfProducts<D>>
where
    D: HasProducts,
    R: Fn(&D::Pro, &D::Arr, &D::Arr) -> DblResult<(D::Pro, D::Cell)>,
{
    if f.variance != Variance::Contravariant || g.variance != Variance::Contravariant {
        return Err(DblError::AssignmentMismatch("restrictions are taken along contravariant family arrows".into()));
    }
    if f.dst != n.src || g.dst != n.dst {
        return Err(DblError::AssignmentMismatch("niche arrows do not reach the family's ends".into()));
    }
    let mut members = Vec::with_capacity(n.components.len());
    let mut res = Vec::with_capacity(n.components.len());
    for (b, p) in n.components.iter().enumerate() {
        let (k, l) = (n.indexing.left().apply(b), n.indexing.right().apply(b));
        let (q, cell) = restrict(p, &f.components[k], &g.components[l]).map_err(|e| DblError::MissingRestriction(format!("member {b}: {e}")))?;
        members.push(q);
        res.push(cell);
    }
    let indexing = SetSpan::new(n.indexing.left().then(&f.on_index)?, n.indexing.right().then(&g.on_index)?)?;
    let restricted = DblFam::covariant(d.clone()).proarrow(f.src.clone(), g.src.clone(), indexing, members)?;
    let product = d.product(&restricted)?;
    let target = d.product(n)?;
    let (left, right) = (product_arrow(d, f)?, product_arrow(d, g)?);
    let constraints = (0..n.components.len())
        .map(|b| Ok((target.cells[b].clone(), d.compose_cells_vert(&product.cells[b], &res[b])?)))
        .collect::<DblResult<Vec<_>>>()?;
    let cell = unique(d.solve_post(&product.pro, &target.pro, &left, &right, &constraints), "restriction of products")?;
    Ok(RestrictionOfProducts {
        restricted,
        product,
        left,
        right,
        cell,
    })
}

/// A product rebuilt as the restriction of the parallel product of its
/// members along the structure arrows `Π(ℓ)` and `Π(r)`, with a globular
/// comparison to the chosen product.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductViaRestriction<D: DoubleCategory> {
    pub parallel: ProductResult<D>,
    pub left: D::Arr,
    pub right: D::Arr,
    pub restriction: D::Cell,
    pub product: ProductResult<D>,
    /// The cell from the rebuilt product to the chosen one commuting with
    /// projections, and its inverse.
    pub witness: D::Cell,
    pub witness_inverse: Option<D::Cell>,
}

pub fn product_via_restriction<D, R>(d: &D, m: &FamProarrow<D>, restrict: R) -> DblResult<ProductViaRestriction<D>>
where
    D: HasProducts,
    R: Fn(&D::Pro, &D::Arr, &D::Arr) -> DblResult<(D::Pro, D::Cell)>,
{
    let apex = m.indexing.apex();
    let (l, r) = (m.indexing.left(), m.indexing.right());
    let parallel_family = FamProarrow {
        src: reindex(l, &m.src)?,
        dst: reindex(r, &m.dst)?,
        indexing: SetSpan::identity(apex),
        components: m.components.clone(),
    };
    let parallel = d.product(&parallel_family)?;
    let (left, _) = structure_map(d, l, &m.src)?;
    let (right, _) = structure_map(d, r, &m.dst)?;
    let (pro, restriction) = restrict(&parallel.pro, &left, &right).map_err(|e| DblError::MissingRestriction(e.to_string()))?;
    let cells = parallel
        .cells
        .iter()
        .map(|p| d.compose_cells_vert(&restriction, p))
        .collect::<DblResult<Vec<_>>>()?;
    let (px, pi_x) = d.product_object(&m.src.assignment)?;
    let (py, pi_y) = d.product_object(&m.dst.assignment)?;
    let product = FamilyCone {
        family: m.clone(),
        src: px.clone(),
        dst: py.clone(),
        src_legs: pi_x,
        dst_legs: pi_y,
        pro,
        cells,
    };
    let chosen = d.product(m)?;
    let constraints: Vec<_> = chosen.cells.iter().cloned().zip(product.cells.iter().cloned()).collect();
    let witness = unique(
        d.solve_post(&product.pro, &chosen.pro, &d.id_arrow(&px), &d.id_arrow(&py), &constraints),
        "comparison with the chosen product",
    )?;
    let witness_inverse = d.invert_cell(&witness);
    Ok(ProductViaRestriction {
        parallel,
        left,
        right,
        restriction,
        product,
        witness,
        witness_inverse,
    })
}
