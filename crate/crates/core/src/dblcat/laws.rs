//! Coherence laws of a pseudo double category, checked on concrete data.

use super::{DblResult, DoubleCategory};

/// Interchange: `(a ⊙ b) ; (c ⊙ e) = (a ; c) ⊙ (b ; e)`.
pub fn interchange<D: DoubleCategory>(d: &D, a: &D::Cell, b: &D::Cell, c: &D::Cell, e: &D::Cell) -> DblResult<bool> {
    let lhs = d.compose_cells_vert(&d.compose_cells_ext(a, b)?, &d.compose_cells_ext(c, e)?)?;
    let rhs = d.compose_cells_ext(&d.compose_cells_vert(a, c)?, &d.compose_cells_vert(b, e)?)?;
    Ok(lhs == rhs)
}

/// Pentagon for `((m ⊙ n) ⊙ p) ⊙ q => m ⊙ (n ⊙ (p ⊙ q))`.
pub fn pentagon<D: DoubleCategory>(d: &D, m: &D::Pro, n: &D::Pro, p: &D::Pro, q: &D::Pro) -> DblResult<bool> {
    let mn = d.compose_pro(m, n)?;
    let np = d.compose_pro(n, p)?;
    let pq = d.compose_pro(p, q)?;
    let lhs = d.compose_cells_vert(&d.associator(&mn, p, q)?, &d.associator(m, n, &pq)?)?;
    let step1 = d.compose_cells_ext(&d.associator(m, n, p)?, &d.id_cell_on_pro(q))?;
    let step2 = d.associator(m, &np, q)?;
    let step3 = d.compose_cells_ext(&d.id_cell_on_pro(m), &d.associator(n, p, q)?)?;
    let rhs = d.compose_cells_vert(&d.compose_cells_vert(&step1, &step2)?, &step3)?;
    Ok(lhs == rhs)
}

/// Triangle: `α_{m,id,n} ; (1_m ⊙ λ_n) = ρ_m ⊙ 1_n`.
pub fn triangle<D: DoubleCategory>(d: &D, m: &D::Pro, n: &D::Pro) -> DblResult<bool> {
    let id = d.id_pro(&d.pro_dst(m));
    let lhs = d.compose_cells_vert(
        &d.associator(m, &id, n)?,
        &d.compose_cells_ext(&d.id_cell_on_pro(m), &d.left_unitor(n)?)?,
    )?;
    let rhs = d.compose_cells_ext(&d.right_unitor(m)?, &d.id_cell_on_pro(n))?;
    Ok(lhs == rhs)
}

/// `α_{id,m,n} ; λ_{m ⊙ n} = λ_m ⊙ 1_n`.
pub fn left_unitor_coherence<D: DoubleCategory>(d: &D, m: &D::Pro, n: &D::Pro) -> DblResult<bool> {
    let id = d.id_pro(&d.pro_src(m));
    let mn = d.compose_pro(m, n)?;
    let lhs = d.compose_cells_vert(&d.associator(&id, m, n)?, &d.left_unitor(&mn)?)?;
    let rhs = d.compose_cells_ext(&d.left_unitor(m)?, &d.id_cell_on_pro(n))?;
    Ok(lhs == rhs)
}

/// `α_{m,n,id} ; (1_m ⊙ ρ_n) = ρ_{m ⊙ n}`.
pub fn right_unitor_coherence<D: DoubleCategory>(d: &D, m: &D::Pro, n: &D::Pro) -> DblResult<bool> {
    let id = d.id_pro(&d.pro_dst(n));
    let mn = d.compose_pro(m, n)?;
    let lhs = d.compose_cells_vert(
        &d.associator(m, n, &id)?,
        &d.compose_cells_ext(&d.id_cell_on_pro(m), &d.right_unitor(n)?)?,
    )?;
    Ok(lhs == d.right_unitor(&mn)?)
}

/// Naturality of the associator in a triple of cells.
pub fn associator_naturality<D: DoubleCategory>(d: &D, a: &D::Cell, b: &D::Cell, c: &D::Cell) -> DblResult<bool> {
    let (m, n, p) = (d.cell_top(a), d.cell_top(b), d.cell_top(c));
    let (m2, n2, p2) = (d.cell_bottom(a), d.cell_bottom(b), d.cell_bottom(c));
    let lhs = d.compose_cells_vert(&d.compose_cells_ext(&d.compose_cells_ext(a, b)?, c)?, &d.associator(&m2, &n2, &p2)?)?;
    let rhs = d.compose_cells_vert(&d.associator(&m, &n, &p)?, &d.compose_cells_ext(a, &d.compose_cells_ext(b, c)?)?)?;
    Ok(lhs == rhs)
}

/// Naturality of both unitors in a cell.
pub fn unitor_naturality<D: DoubleCategory>(d: &D, a: &D::Cell) -> DblResult<bool> {
    let (m, m2) = (d.cell_top(a), d.cell_bottom(a));
    let left = d.compose_cells_vert(
        &d.compose_cells_ext(&d.id_cell_on_arrow(&d.cell_left(a)), a)?,
        &d.left_unitor(&m2)?,
    )? == d.compose_cells_vert(&d.left_unitor(&m)?, a)?;
    let right = d.compose_cells_vert(
        &d.compose_cells_ext(a, &d.id_cell_on_arrow(&d.cell_right(a)))?,
        &d.right_unitor(&m2)?,
    )? == d.compose_cells_vert(&d.right_unitor(&m)?, a)?;
    Ok(left && right)
}
