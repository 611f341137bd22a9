//! A uniform interface over concrete double categories, with the concrete
//! instances Span(FinSet), Mat(FinSet), the terminal double category and the
//! opposite construction.
//!
//! Composition is written in diagrammatic order throughout: `compose_arrows(f, g)`
//! is "f then g", `compose_cells_vert(a, b)` stacks `a` above `b`, and
//! `compose_cells_ext(a, b)` puts `a` to the left of `b`.

use std::fmt::Debug;

use crate::finset::FinSetError;

pub mod functor;
pub mod laws;
pub mod mat;
pub mod op;
pub mod span;
pub mod terminal;

pub(crate) use span::pair_positions;

pub use functor::{DoubleFunctor, IdentityFunctor, MatToSpan, OpOp, SpanToMat};
pub use mat::{Mat, MatCell, MatProarrow};
pub use op::Op;
pub use span::{
    extend_span, mat_cell_to_span, mat_roundtrip_witness, mat_to_span, restrict_span, span_cell_to_mat, span_roundtrip_witness,
    span_to_mat, Span, SpanCell, SpanProarrow,
};
pub use terminal::Terminal;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DblError {
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("families are not composable: {0}")]
    NotComposable(String),
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("cell is not invertible: {0}")]
    NotInvertible(String),
    #[error("no companion or conjoint available: {0}")]
    MissingBaseCompanion(String),
    #[error("family assignment mismatch: {0}")]
    AssignmentMismatch(String),
    #[error("no restriction available: {0}")]
    MissingRestriction(String),
    #[error("expected a unique solution, found {count}: {what}")]
    NoUniqueSolution { what: String, count: usize },
    #[error(transparent)]
    Set(#[from] FinSetError),
}

pub type DblResult<T> = Result<T, DblError>;

/// Number of solutions of a factorization problem, with the solution itself
/// when it is unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solutions<T> {
    pub count: usize,
    pub witness: Option<T>,
}

impl<T> Solutions<T> {
    pub fn none() -> Self {
        Solutions { count: 0, witness: None }
    }

    pub fn unique(self) -> Option<T> {
        if self.count == 1 {
            self.witness
        } else {
            None
        }
    }

    pub fn from_candidates(mut cands: Vec<T>) -> Self {
        let count = cands.len();
        let witness = if count == 1 { cands.pop() } else { None };
        Solutions { count, witness }
    }
}

/// A pseudo double category with a bounded, enumerable test universe.
pub trait DoubleCategory: Clone + Debug + PartialEq + Send + Sync {
    type Ob: Clone + PartialEq + Debug + Send + Sync;
    type Arr: Clone + PartialEq + Debug + Send + Sync;
    type Pro: Clone + PartialEq + Debug + Send + Sync;
    type Cell: Clone + PartialEq + Debug + Send + Sync;

    fn arrow_src(&self, f: &Self::Arr) -> Self::Ob;
    fn arrow_dst(&self, f: &Self::Arr) -> Self::Ob;
    fn pro_src(&self, m: &Self::Pro) -> Self::Ob;
    fn pro_dst(&self, m: &Self::Pro) -> Self::Ob;
    fn cell_top(&self, a: &Self::Cell) -> Self::Pro;
    fn cell_bottom(&self, a: &Self::Cell) -> Self::Pro;
    fn cell_left(&self, a: &Self::Cell) -> Self::Arr;
    fn cell_right(&self, a: &Self::Cell) -> Self::Arr;

    fn id_arrow(&self, x: &Self::Ob) -> Self::Arr;
    fn compose_arrows(&self, f: &Self::Arr, g: &Self::Arr) -> DblResult<Self::Arr>;
    fn id_pro(&self, x: &Self::Ob) -> Self::Pro;
    fn compose_pro(&self, m: &Self::Pro, n: &Self::Pro) -> DblResult<Self::Pro>;
    /// The vertical identity `1_m : m => m`.
    fn id_cell_on_pro(&self, m: &Self::Pro) -> Self::Cell;
    /// The external identity `id_f : id_x => id_y` on an arrow `f : x -> y`.
    fn id_cell_on_arrow(&self, f: &Self::Arr) -> Self::Cell;
    fn compose_cells_vert(&self, a: &Self::Cell, b: &Self::Cell) -> DblResult<Self::Cell>;
    fn compose_cells_ext(&self, a: &Self::Cell, b: &Self::Cell) -> DblResult<Self::Cell>;
    /// `(m ⊙ n) ⊙ p => m ⊙ (n ⊙ p)`.
    fn associator(&self, m: &Self::Pro, n: &Self::Pro, p: &Self::Pro) -> DblResult<Self::Cell>;
    /// `id ⊙ m => m`.
    fn left_unitor(&self, m: &Self::Pro) -> DblResult<Self::Cell>;
    /// `m ⊙ id => m`.
    fn right_unitor(&self, m: &Self::Pro) -> DblResult<Self::Cell>;
    /// Vertical inverse, when the cell and its boundary arrows are invertible.
    fn invert_cell(&self, a: &Self::Cell) -> Option<Self::Cell>;
    /// Checks that a cell's data fits its frame.
    fn validate_cell(&self, a: &Self::Cell) -> Result<(), String>;

    /// Test objects with carriers of size at most `bound`.
    fn objects(&self, bound: usize) -> Vec<Self::Ob>;
    fn arrows_between(&self, x: &Self::Ob, y: &Self::Ob) -> Vec<Self::Arr>;
    /// Proarrows `x ⇸ y` up to a size bound; may list one representative per
    /// isomorphism class.
    fn proarrows_between(&self, x: &Self::Ob, y: &Self::Ob, bound: usize) -> Vec<Self::Pro>;
    fn cells_in_frame(&self, top: &Self::Pro, bottom: &Self::Pro, left: &Self::Arr, right: &Self::Arr) -> Vec<Self::Cell>;

    fn count_cells_in_frame(&self, top: &Self::Pro, bottom: &Self::Pro, left: &Self::Arr, right: &Self::Arr) -> usize {
        self.cells_in_frame(top, bottom, left, right).len()
    }

    /// Inverse arrow, found by search unless overridden.
    fn invert_arrow(&self, f: &Self::Arr) -> Option<Self::Arr> {
        let (x, y) = (self.arrow_src(f), self.arrow_dst(f));
        self.arrows_between(&y, &x).into_iter().find(|g| {
            self.compose_arrows(f, g).map(|h| h == self.id_arrow(&x)).unwrap_or(false)
                && self.compose_arrows(g, f).map(|h| h == self.id_arrow(&y)).unwrap_or(false)
        })
    }

    fn is_iso_cell(&self, a: &Self::Cell) -> bool {
        self.invert_cell(a).is_some()
    }

    /// Cells `b` in the frame with `b ; p = q` for every `(p, q)`.
    fn solve_post(
        &self,
        top: &Self::Pro,
        bottom: &Self::Pro,
        left: &Self::Arr,
        right: &Self::Arr,
        constraints: &[(Self::Cell, Self::Cell)],
    ) -> Solutions<Self::Cell> {
        let cands = self
            .cells_in_frame(top, bottom, left, right)
            .into_iter()
            .filter(|b| {
                constraints
                    .iter()
                    .all(|(p, q)| self.compose_cells_vert(b, p).map(|c| &c == q).unwrap_or(false))
            })
            .collect();
        Solutions::from_candidates(cands)
    }

    /// Cells `b` in the frame with `i ; b = q` for every `(i, q)`.
    fn solve_pre(
        &self,
        top: &Self::Pro,
        bottom: &Self::Pro,
        left: &Self::Arr,
        right: &Self::Arr,
        constraints: &[(Self::Cell, Self::Cell)],
    ) -> Solutions<Self::Cell> {
        let cands = self
            .cells_in_frame(top, bottom, left, right)
            .into_iter()
            .filter(|b| {
                constraints
                    .iter()
                    .all(|(i, q)| self.compose_cells_vert(i, b).map(|c| &c == q).unwrap_or(false))
            })
            .collect();
        Solutions::from_candidates(cands)
    }

    /// Arrows `h : src -> dst` with `h ; p = f` for every `(p, f)`.
    fn solve_arrow_post(&self, src: &Self::Ob, dst: &Self::Ob, constraints: &[(Self::Arr, Self::Arr)]) -> Solutions<Self::Arr> {
        let cands = self
            .arrows_between(src, dst)
            .into_iter()
            .filter(|h| {
                constraints
                    .iter()
                    .all(|(p, f)| self.compose_arrows(h, p).map(|c| &c == f).unwrap_or(false))
            })
            .collect();
        Solutions::from_candidates(cands)
    }

    /// Arrows `h : src -> dst` with `i ; h = f` for every `(i, f)`.
    fn solve_arrow_pre(&self, src: &Self::Ob, dst: &Self::Ob, constraints: &[(Self::Arr, Self::Arr)]) -> Solutions<Self::Arr> {
        let cands = self
            .arrows_between(src, dst)
            .into_iter()
            .filter(|h| {
                constraints
                    .iter()
                    .all(|(i, f)| self.compose_arrows(i, h).map(|c| &c == f).unwrap_or(false))
            })
            .collect();
        Solutions::from_candidates(cands)
    }
}

/// A companion pair `(f, p)` with unit `id_x => p` (sides `1_x`, `f`) and
/// counit `p => id_y` (sides `f`, `1_y`); or a conjoint pair with unit
/// `id_x => p` (sides `f`, `1_x`) and counit `p => id_y` (sides `1_y`, `f`).
#[derive(Debug, Clone, PartialEq)]
pub struct BindingPair<A, P, C> {
    pub arrow: A,
    pub proarrow: P,
    pub unit: C,
    pub counit: C,
}

pub type CompanionPair<D> = BindingPair<<D as DoubleCategory>::Arr, <D as DoubleCategory>::Pro, <D as DoubleCategory>::Cell>;
pub type ConjointPair<D> = CompanionPair<D>;

/// Double categories in which every arrow has a companion and a conjoint.
pub trait Equipment: DoubleCategory {
    fn companion(&self, f: &Self::Arr) -> DblResult<CompanionPair<Self>>;
    fn conjoint(&self, f: &Self::Arr) -> DblResult<ConjointPair<Self>>;
}

/// A failed binding equation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BindingViolation {
    #[error("unit or counit has the wrong frame: {0}")]
    Frame(String),
    #[error("vertical pasting of unit and counit is not the identity cell on the arrow")]
    Vertical,
    #[error("external pasting of unit and counit is not the unitor composite")]
    External,
    #[error(transparent)]
    Compose(#[from] DblError),
}

/// Checks the two companion binding equations:
/// `unit ; counit = id_f` and `(unit ⊙ counit) ; ρ_p = λ_p`.
pub fn check_companion<D: DoubleCategory>(d: &D, pair: &CompanionPair<D>) -> Result<(), BindingViolation> {
    let f = &pair.arrow;
    let (x, y) = (d.arrow_src(f), d.arrow_dst(f));
    let (u, c) = (&pair.unit, &pair.counit);
    let frame_ok = d.cell_top(u) == d.id_pro(&x)
        && d.cell_bottom(u) == pair.proarrow
        && d.cell_left(u) == d.id_arrow(&x)
        && d.cell_right(u) == *f
        && d.cell_top(c) == pair.proarrow
        && d.cell_bottom(c) == d.id_pro(&y)
        && d.cell_left(c) == *f
        && d.cell_right(c) == d.id_arrow(&y);
    if !frame_ok {
        return Err(BindingViolation::Frame("companion".into()));
    }
    if d.compose_cells_vert(u, c)? != d.id_cell_on_arrow(f) {
        return Err(BindingViolation::Vertical);
    }
    let lhs = d.compose_cells_vert(&d.compose_cells_ext(u, c)?, &d.right_unitor(&pair.proarrow)?)?;
    if lhs != d.left_unitor(&pair.proarrow)? {
        return Err(BindingViolation::External);
    }
    Ok(())
}

/// Checks the two conjoint binding equations:
/// `unit ; counit = id_f` and `(counit ⊙ unit) ; λ_p = ρ_p`.
pub fn check_conjoint<D: DoubleCategory>(d: &D, pair: &ConjointPair<D>) -> Result<(), BindingViolation> {
    let f = &pair.arrow;
    let (x, y) = (d.arrow_src(f), d.arrow_dst(f));
    let (u, c) = (&pair.unit, &pair.counit);
    let frame_ok = d.cell_top(u) == d.id_pro(&x)
        && d.cell_bottom(u) == pair.proarrow
        && d.cell_left(u) == *f
        && d.cell_right(u) == d.id_arrow(&x)
        && d.cell_top(c) == pair.proarrow
        && d.cell_bottom(c) == d.id_pro(&y)
        && d.cell_left(c) == d.id_arrow(&y)
        && d.cell_right(c) == *f;
    if !frame_ok {
        return Err(BindingViolation::Frame("conjoint".into()));
    }
    if d.compose_cells_vert(u, c)? != d.id_cell_on_arrow(f) {
        return Err(BindingViolation::Vertical);
    }
    let lhs = d.compose_cells_vert(&d.compose_cells_ext(c, u)?, &d.left_unitor(&pair.proarrow)?)?;
    if lhs != d.right_unitor(&pair.proarrow)? {
        return Err(BindingViolation::External);
    }
    Ok(())
}
