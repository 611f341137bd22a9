//! The terminal double category: one object, arrow, proarrow and cell.

use super::{BindingPair, CompanionPair, ConjointPair, DblResult, DoubleCategory, Equipment};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Terminal;

impl DoubleCategory for Terminal {
    type Ob = ();
    type Arr = ();
    type Pro = ();
    type Cell = ();

    fn arrow_src(&self, _: &()) {}
    fn arrow_dst(&self, _: &()) {}
    fn pro_src(&self, _: &()) {}
    fn pro_dst(&self, _: &()) {}
    fn cell_top(&self, _: &()) {}
    fn cell_bottom(&self, _: &()) {}
    fn cell_left(&self, _: &()) {}
    fn cell_right(&self, _: &()) {}

    fn id_arrow(&self, _: &()) {}
    fn compose_arrows(&self, _: &(), _: &()) -> DblResult<()> {
        Ok(())
    }
    fn id_pro(&self, _: &()) {}
    fn compose_pro(&self, _: &(), _: &()) -> DblResult<()> {
        Ok(())
    }
    fn id_cell_on_pro(&self, _: &()) {}
    fn id_cell_on_arrow(&self, _: &()) {}
    fn compose_cells_vert(&self, _: &(), _: &()) -> DblResult<()> {
        Ok(())
    }
    fn compose_cells_ext(&self, _: &(), _: &()) -> DblResult<()> {
        Ok(())
    }
    fn associator(&self, _: &(), _: &(), _: &()) -> DblResult<()> {
        Ok(())
    }
    fn left_unitor(&self, _: &()) -> DblResult<()> {
        Ok(())
    }
    fn right_unitor(&self, _: &()) -> DblResult<()> {
        Ok(())
    }
    fn invert_cell(&self, _: &()) -> Option<()> {
        Some(())
    }
    fn validate_cell(&self, _: &()) -> Result<(), String> {
        Ok(())
    }

    fn objects(&self, _: usize) -> Vec<()> {
        vec![()]
    }
    fn arrows_between(&self, _: &(), _: &()) -> Vec<()> {
        vec![()]
    }
    fn proarrows_between(&self, _: &(), _: &(), _: usize) -> Vec<()> {
        vec![()]
    }
    fn cells_in_frame(&self, _: &(), _: &(), _: &(), _: &()) -> Vec<()> {
        vec![()]
    }
}

impl Equipment for Terminal {
    fn companion(&self, _: &()) -> DblResult<CompanionPair<Terminal>> {
        Ok(BindingPair {
            arrow: (),
            proarrow: (),
            unit: (),
            counit: (),
        })
    }

    fn conjoint(&self, f: &()) -> DblResult<ConjointPair<Terminal>> {
        self.companion(f)
    }
}
