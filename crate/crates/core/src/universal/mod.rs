//! Products and coproducts of families of proarrows: explicit constructions
//! in Span and Mat, comparison cells, structure arrows and restrictions, and
//! a bounded checker for the universal properties.

mod checker;
mod comparison;
mod constructions;
pub mod mutants;
mod preservation;
pub mod sample;
mod structure;

pub use checker::{
    check_universal_cartesian, check_universal_coproduct, check_universal_opcartesian, check_universal_product, CheckOptions,
    Counterexample, PropertyKind, UniversalCheckReport,
};
pub use comparison::{
    check_iso_strong, coproduct_comparison, coproduct_identity_comparison, product_comparison, product_identity_comparison,
    ComparisonCell, ComparisonKind, IsoStrongVerdict,
};
pub use constructions::{mat_coproduct, mat_product, span_coproduct, span_product};
pub use preservation::{coproduct_preservation, product_preservation, Preservation};
pub use structure::{
    diagonal_proarrow, product_via_restriction, restriction_of_products, structure_arrow, Diagonal, ProductViaRestriction,
    RestrictionOfProducts, StructureArrow,
};

use crate::dblcat::{DblResult, DoubleCategory, Op};
use crate::family::{DblFam, FamObject, FamProarrow, Variance};

/// A (co)product of a family of proarrows `m_a : x_{ℓa} ⇸ y_{ra}`.
///
/// For a product, `src_legs[i] : src -> x_i`, `dst_legs[j] : dst -> y_j` and
/// `cells[a] : pro => m_a`. For a coproduct the legs point into `src`/`dst`
/// and `cells[a] : m_a => pro`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyCone<D: DoubleCategory> {
    pub family: FamProarrow<D>,
    pub src: D::Ob,
    pub dst: D::Ob,
    pub src_legs: Vec<D::Arr>,
    pub dst_legs: Vec<D::Arr>,
    pub pro: D::Pro,
    pub cells: Vec<D::Cell>,
}

pub type ProductResult<D> = FamilyCone<D>;
pub type CoproductResult<D> = FamilyCone<D>;

impl<D: DoubleCategory> FamilyCone<D> {
    fn check_counts(&self) -> Result<(), String> {
        let m = &self.family;
        if self.src_legs.len() != m.src.len() || self.dst_legs.len() != m.dst.len() || self.cells.len() != m.components.len() {
            return Err("one leg per index and one cell per member expected".into());
        }
        Ok(())
    }

    /// Checks that legs and cells have the frames of a product cone.
    pub fn validate_product(&self, d: &D) -> Result<(), String> {
        self.check_counts()?;
        let m = &self.family;
        if d.pro_src(&self.pro) != self.src || d.pro_dst(&self.pro) != self.dst {
            return Err("vertex proarrow has the wrong ends".into());
        }
        for (legs, vertex, fam) in [(&self.src_legs, &self.src, &m.src), (&self.dst_legs, &self.dst, &m.dst)] {
            for (i, p) in legs.iter().enumerate() {
                if &d.arrow_src(p) != vertex || d.arrow_dst(p) != fam.assignment[i] {
                    return Err(format!("projection {i} has the wrong frame"));
                }
            }
        }
        for (a, c) in self.cells.iter().enumerate() {
            let (i, j) = (m.indexing.left().apply(a), m.indexing.right().apply(a));
            if d.cell_top(c) != self.pro
                || d.cell_bottom(c) != m.components[a]
                || d.cell_left(c) != self.src_legs[i]
                || d.cell_right(c) != self.dst_legs[j]
            {
                return Err(format!("projection cell {a} has the wrong frame"));
            }
            d.validate_cell(c).map_err(|e| format!("projection cell {a}: {e}"))?;
        }
        Ok(())
    }

    /// Checks that legs and cells have the frames of a coproduct cocone.
    pub fn validate_coproduct(&self, d: &D) -> Result<(), String> {
        self.check_counts()?;
        let m = &self.family;
        if d.pro_src(&self.pro) != self.src || d.pro_dst(&self.pro) != self.dst {
            return Err("vertex proarrow has the wrong ends".into());
        }
        for (legs, vertex, fam) in [(&self.src_legs, &self.src, &m.src), (&self.dst_legs, &self.dst, &m.dst)] {
            for (i, p) in legs.iter().enumerate() {
                if &d.arrow_dst(p) != vertex || d.arrow_src(p) != fam.assignment[i] {
                    return Err(format!("coprojection {i} has the wrong frame"));
                }
            }
        }
        for (a, c) in self.cells.iter().enumerate() {
            let (i, j) = (m.indexing.left().apply(a), m.indexing.right().apply(a));
            if d.cell_top(c) != m.components[a]
                || d.cell_bottom(c) != self.pro
                || d.cell_left(c) != self.src_legs[i]
                || d.cell_right(c) != self.dst_legs[j]
            {
                return Err(format!("coprojection cell {a} has the wrong frame"));
            }
            d.validate_cell(c).map_err(|e| format!("coprojection cell {a}: {e}"))?;
        }
        Ok(())
    }

    /// The same data viewed in a double category with the same sorts.
    pub fn retag<E>(self) -> FamilyCone<E>
    where
        E: DoubleCategory<Ob = D::Ob, Arr = D::Arr, Pro = D::Pro, Cell = D::Cell>,
    {
        FamilyCone {
            family: retag_family(self.family),
            src: self.src,
            dst: self.dst,
            src_legs: self.src_legs,
            dst_legs: self.dst_legs,
            pro: self.pro,
            cells: self.cells,
        }
    }
}

/// A family proarrow viewed in a double category with the same sorts.
pub fn retag_family<D, E>(m: FamProarrow<D>) -> FamProarrow<E>
where
    D: DoubleCategory,
    E: DoubleCategory<Ob = D::Ob, Arr = D::Arr, Pro = D::Pro, Cell = D::Cell>,
{
    FamProarrow {
        src: FamObject {
            indexing: m.src.indexing,
            assignment: m.src.assignment,
        },
        dst: FamObject {
            indexing: m.dst.indexing,
            assignment: m.dst.assignment,
        },
        indexing: m.indexing,
        components: m.components,
    }
}

/// Chosen products of objects and of families of proarrows.
pub trait HasProducts: DoubleCategory {
    fn product_object(&self, xs: &[Self::Ob]) -> DblResult<(Self::Ob, Vec<Self::Arr>)>;
    fn product(&self, m: &FamProarrow<Self>) -> DblResult<ProductResult<Self>>;
}

/// Chosen coproducts of objects and of families of proarrows.
pub trait HasCoproducts: DoubleCategory {
    fn coproduct_object(&self, xs: &[Self::Ob]) -> DblResult<(Self::Ob, Vec<Self::Arr>)>;
    fn coproduct(&self, m: &FamProarrow<Self>) -> DblResult<CoproductResult<Self>>;
}

impl<D: HasProducts> HasCoproducts for Op<D> {
    fn coproduct_object(&self, xs: &[D::Ob]) -> DblResult<(D::Ob, Vec<D::Arr>)> {
        self.0.product_object(xs)
    }
    fn coproduct(&self, m: &FamProarrow<Op<D>>) -> DblResult<CoproductResult<Op<D>>> {
        Ok(self.0.product(&retag_family(m.clone()))?.retag())
    }
}

impl<D: HasCoproducts> HasProducts for Op<D> {
    fn product_object(&self, xs: &[D::Ob]) -> DblResult<(D::Ob, Vec<D::Arr>)> {
        self.0.coproduct_object(xs)
    }
    fn product(&self, m: &FamProarrow<Op<D>>) -> DblResult<ProductResult<Op<D>>> {
        Ok(self.0.coproduct(&retag_family(m.clone()))?.retag())
    }
}

fn wrong_variance(what: &str) -> crate::dblcat::DblError {
    crate::dblcat::DblError::FrameMismatch(format!("{what} are only chosen in this variance"))
}

/// DblFamOp(D) has products and DblFam(D) coproducts, both given by merging
/// families.
impl<D: DoubleCategory> HasProducts for DblFam<D> {
    fn product_object(&self, xs: &[FamObject<D>]) -> DblResult<(FamObject<D>, Vec<crate::family::FamArrow<D>>)> {
        if self.variance != Variance::Contravariant {
            return Err(wrong_variance("products"));
        }
        Ok(self.merge_objects(xs))
    }
    fn product(&self, m: &FamProarrow<DblFam<D>>) -> DblResult<ProductResult<DblFam<D>>> {
        if self.variance != Variance::Contravariant {
            return Err(wrong_variance("products"));
        }
        self.sum(m)
    }
}

impl<D: DoubleCategory> HasCoproducts for DblFam<D> {
    fn coproduct_object(&self, xs: &[FamObject<D>]) -> DblResult<(FamObject<D>, Vec<crate::family::FamArrow<D>>)> {
        if self.variance != Variance::Covariant {
            return Err(wrong_variance("coproducts"));
        }
        Ok(self.merge_objects(xs))
    }
    fn coproduct(&self, m: &FamProarrow<DblFam<D>>) -> DblResult<CoproductResult<DblFam<D>>> {
        if self.variance != Variance::Covariant {
            return Err(wrong_variance("coproducts"));
        }
        self.sum(m)
    }
}
