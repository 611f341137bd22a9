//! The opposite of a double category: arrows and cells reversed, proarrows
//! kept. Universal properties of `D` dualize to those of `Op<D>`.

use super::{BindingPair, CompanionPair, ConjointPair, DblError, DblResult, DoubleCategory, Equipment, Solutions};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Op<D>(pub D);

fn not_invertible(what: &str) -> DblError {
    DblError::NotInvertible(what.to_string())
}

impl<D: DoubleCategory> DoubleCategory for Op<D> {
    type Ob = D::Ob;
    type Arr = D::Arr;
    type Pro = D::Pro;
    type Cell = D::Cell;

    fn arrow_src(&self, f: &D::Arr) -> D::Ob {
        self.0.arrow_dst(f)
    }
    fn arrow_dst(&self, f: &D::Arr) -> D::Ob {
        self.0.arrow_src(f)
    }
    fn pro_src(&self, m: &D::Pro) -> D::Ob {
        self.0.pro_src(m)
    }
    fn pro_dst(&self, m: &D::Pro) -> D::Ob {
        self.0.pro_dst(m)
    }
    fn cell_top(&self, a: &D::Cell) -> D::Pro {
        self.0.cell_bottom(a)
    }
    fn cell_bottom(&self, a: &D::Cell) -> D::Pro {
        self.0.cell_top(a)
    }
    fn cell_left(&self, a: &D::Cell) -> D::Arr {
        self.0.cell_left(a)
    }
    fn cell_right(&self, a: &D::Cell) -> D::Arr {
        self.0.cell_right(a)
    }

    fn id_arrow(&self, x: &D::Ob) -> D::Arr {
        self.0.id_arrow(x)
    }
    fn compose_arrows(&self, f: &D::Arr, g: &D::Arr) -> DblResult<D::Arr> {
        self.0.compose_arrows(g, f)
    }
    fn id_pro(&self, x: &D::Ob) -> D::Pro {
        self.0.id_pro(x)
    }
    fn compose_pro(&self, m: &D::Pro, n: &D::Pro) -> DblResult<D::Pro> {
        self.0.compose_pro(m, n)
    }
    fn id_cell_on_pro(&self, m: &D::Pro) -> D::Cell {
        self.0.id_cell_on_pro(m)
    }
    fn id_cell_on_arrow(&self, f: &D::Arr) -> D::Cell {
        self.0.id_cell_on_arrow(f)
    }
    fn compose_cells_vert(&self, a: &D::Cell, b: &D::Cell) -> DblResult<D::Cell> {
        self.0.compose_cells_vert(b, a)
    }
    fn compose_cells_ext(&self, a: &D::Cell, b: &D::Cell) -> DblResult<D::Cell> {
        self.0.compose_cells_ext(a, b)
    }
    fn associator(&self, m: &D::Pro, n: &D::Pro, p: &D::Pro) -> DblResult<D::Cell> {
        let a = self.0.associator(m, n, p)?;
        self.0.invert_cell(&a).ok_or_else(|| not_invertible("associator"))
    }
    fn left_unitor(&self, m: &D::Pro) -> DblResult<D::Cell> {
        let a = self.0.left_unitor(m)?;
        self.0.invert_cell(&a).ok_or_else(|| not_invertible("left unitor"))
    }
    fn right_unitor(&self, m: &D::Pro) -> DblResult<D::Cell> {
        let a = self.0.right_unitor(m)?;
        self.0.invert_cell(&a).ok_or_else(|| not_invertible("right unitor"))
    }
    fn invert_arrow(&self, f: &D::Arr) -> Option<D::Arr> {
        self.0.invert_arrow(f)
    }
    fn invert_cell(&self, a: &D::Cell) -> Option<D::Cell> {
        self.0.invert_cell(a)
    }
    fn validate_cell(&self, a: &D::Cell) -> Result<(), String> {
        self.0.validate_cell(a)
    }

    fn objects(&self, bound: usize) -> Vec<D::Ob> {
        self.0.objects(bound)
    }
    fn arrows_between(&self, x: &D::Ob, y: &D::Ob) -> Vec<D::Arr> {
        self.0.arrows_between(y, x)
    }
    fn proarrows_between(&self, x: &D::Ob, y: &D::Ob, bound: usize) -> Vec<D::Pro> {
        self.0.proarrows_between(x, y, bound)
    }
    fn cells_in_frame(&self, top: &D::Pro, bottom: &D::Pro, left: &D::Arr, right: &D::Arr) -> Vec<D::Cell> {
        self.0.cells_in_frame(bottom, top, left, right)
    }
    fn count_cells_in_frame(&self, top: &D::Pro, bottom: &D::Pro, left: &D::Arr, right: &D::Arr) -> usize {
        self.0.count_cells_in_frame(bottom, top, left, right)
    }

    fn solve_post(&self, top: &D::Pro, bottom: &D::Pro, left: &D::Arr, right: &D::Arr, constraints: &[(D::Cell, D::Cell)]) -> Solutions<D::Cell> {
        self.0.solve_pre(bottom, top, left, right, constraints)
    }
    fn solve_pre(&self, top: &D::Pro, bottom: &D::Pro, left: &D::Arr, right: &D::Arr, constraints: &[(D::Cell, D::Cell)]) -> Solutions<D::Cell> {
        self.0.solve_post(bottom, top, left, right, constraints)
    }
    fn solve_arrow_post(&self, src: &D::Ob, dst: &D::Ob, constraints: &[(D::Arr, D::Arr)]) -> Solutions<D::Arr> {
        self.0.solve_arrow_pre(dst, src, constraints)
    }
    fn solve_arrow_pre(&self, src: &D::Ob, dst: &D::Ob, constraints: &[(D::Arr, D::Arr)]) -> Solutions<D::Arr> {
        self.0.solve_arrow_post(dst, src, constraints)
    }
}

/// Companions in `Op<D>` are conjoints in `D` with unit and counit swapped,
/// and vice versa.
impl<D: Equipment> Equipment for Op<D> {
    fn companion(&self, f: &D::Arr) -> DblResult<CompanionPair<Op<D>>> {
        let p = self.0.conjoint(f)?;
        Ok(BindingPair {
            arrow: p.arrow,
            proarrow: p.proarrow,
            unit: p.counit,
            counit: p.unit,
        })
    }

    fn conjoint(&self, f: &D::Arr) -> DblResult<ConjointPair<Op<D>>> {
        let p = self.0.companion(f)?;
        Ok(BindingPair {
            arrow: p.arrow,
            proarrow: p.proarrow,
            unit: p.counit,
            counit: p.unit,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dblcat::{check_companion, check_conjoint, Span};
    use crate::finset::{FinFunction, FinSet};

    #[test]
    fn op_bindings_hold() {
        let f = FinFunction::new(FinSet::range(3), FinSet::range(2), vec![0, 1, 1]).unwrap();
        check_companion(&Op(Span), &Op(Span).companion(&f).unwrap()).unwrap();
        check_conjoint(&Op(Span), &Op(Span).conjoint(&f).unwrap()).unwrap();
    }
}
