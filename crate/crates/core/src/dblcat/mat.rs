//! The double category Mat(FinSet) of set-valued matrices.

use std::fmt;

use super::span::{span_cell_to_mat, span_to_mat};
use super::{BindingPair, CompanionPair, ConjointPair, DblError, DblResult, DoubleCategory, Equipment, Solutions, Span};
use crate::finset::{inj_label, product_indices, tup_label, FinFunction, FinSet, FinSetError};

/// A matrix `x ⇸ y` of finite sets, stored row-major over `|x| × |y|`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatProarrow {
    src: FinSet,
    dst: FinSet,
    entries: Vec<FinSet>,
}

impl MatProarrow {
    pub fn new(src: FinSet, dst: FinSet, entries: Vec<FinSet>) -> DblResult<Self> {
        if entries.len() != src.len() * dst.len() {
            return Err(DblError::FrameMismatch(format!(
                "matrix over {}x{} needs {} entries, found {}",
                src.len(),
                dst.len(),
                src.len() * dst.len(),
                entries.len()
            )));
        }
        Ok(MatProarrow { src, dst, entries })
    }

    pub(crate) fn new_unchecked(src: FinSet, dst: FinSet, entries: Vec<FinSet>) -> Self {
        debug_assert_eq!(entries.len(), src.len() * dst.len());
        MatProarrow { src, dst, entries }
    }

    pub fn identity(x: &FinSet) -> Self {
        let n = x.len();
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    FinSet::from_distinct(vec![x.label(k / n).clone()])
                } else {
                    FinSet::empty()
                }
            })
            .collect();
        MatProarrow::new_unchecked(x.clone(), x.clone(), entries)
    }

    pub fn src(&self) -> &FinSet {
        &self.src
    }

    pub fn dst(&self) -> &FinSet {
        &self.dst
    }

    pub fn entries(&self) -> &[FinSet] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &FinSet {
        &self.entries[i * self.dst.len() + j]
    }

    /// Sum of the entry sizes.
    pub fn total(&self) -> usize {
        self.entries.iter().map(FinSet::len).sum()
    }

    /// `(M ⊙ N)(x, z) = Σ_y M(x, y) × N(y, z)`, labeled `inj(y, tup(m, n))`.
    pub fn compose(&self, other: &MatProarrow) -> DblResult<MatProarrow> {
        if self.dst != other.src {
            return Err(DblError::EndpointMismatch("matrix composite: inner sets differ".into()));
        }
        let (nx, ny, nz) = (self.src.len(), self.dst.len(), other.dst.len());
        let mut entries = Vec::with_capacity(nx * nz);
        for x in 0..nx {
            for z in 0..nz {
                let mut labels = Vec::new();
                for y in 0..ny {
                    let tag = self.dst.label(y);
                    for m in self.entry(x, y).elements() {
                        for n in other.entry(y, z).elements() {
                            labels.push(inj_label(tag, &tup_label(&[&**m, &**n])));
                        }
                    }
                }
                entries.push(FinSet::from_distinct(labels));
            }
        }
        Ok(MatProarrow::new_unchecked(self.src.clone(), other.dst.clone(), entries))
    }

    /// Offsets of the `y` blocks inside entry `(x, z)` of `self ⊙ other`.
    fn block_offsets(&self, other: &MatProarrow, x: usize, z: usize) -> Vec<usize> {
        let mut acc = 0;
        (0..self.dst.len())
            .map(|y| {
                let o = acc;
                acc += self.entry(x, y).len() * other.entry(y, z).len();
                o
            })
            .collect()
    }

    /// Decodes a position of entry `(x, z)` of `self ⊙ other` as `(y, m, n)`.
    pub(crate) fn decode(&self, other: &MatProarrow, x: usize, z: usize, mut k: usize) -> (usize, usize, usize) {
        for y in 0..self.dst.len() {
            let w = other.entry(y, z).len();
            let size = self.entry(x, y).len() * w;
            if k < size {
                return (y, k / w, k % w);
            }
            k -= size;
        }
        unreachable!("position outside the composite entry")
    }

    pub(crate) fn encode(&self, other: &MatProarrow, x: usize, z: usize, (y, m, n): (usize, usize, usize)) -> usize {
        self.block_offsets(other, x, z)[y] + m * other.entry(y, z).len() + n
    }

    /// All matrices `x ⇸ y` whose entries are `{0..k-1}` with total size at
    /// most `bound`; one per isomorphism class.
    pub fn all_between(x: &FinSet, y: &FinSet, bound: usize) -> Vec<MatProarrow> {
        let cells = x.len() * y.len();
        let mut out = Vec::new();
        let mut sizes = vec![0usize; cells];
        loop {
            out.push(MatProarrow::new_unchecked(
                x.clone(),
                y.clone(),
                sizes.iter().map(|&k| FinSet::range(k)).collect(),
            ));
            let mut k = cells;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                sizes[k] += 1;
                if sizes.iter().sum::<usize>() <= bound {
                    break;
                }
                sizes[k] = 0;
            }
        }
    }
}

impl fmt::Debug for MatProarrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{:?}->{:?}[", self.src, self.dst)?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e:?}")?;
        }
        write!(f, "]")
    }
}

/// A cell `top => bottom` over `row` and `col`, with one function
/// `top(x, y) -> bottom(row x, col y)` per entry of `top`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatCell {
    top: MatProarrow,
    bottom: MatProarrow,
    row: FinFunction,
    col: FinFunction,
    maps: Vec<FinFunction>,
}

impl MatCell {
    pub fn new(top: MatProarrow, bottom: MatProarrow, row: FinFunction, col: FinFunction, maps: Vec<FinFunction>) -> DblResult<Self> {
        let cell = MatCell { top, bottom, row, col, maps };
        cell.check().map_err(DblError::FrameMismatch)?;
        Ok(cell)
    }

    pub(crate) fn new_unchecked(top: MatProarrow, bottom: MatProarrow, row: FinFunction, col: FinFunction, maps: Vec<FinFunction>) -> Self {
        MatCell { top, bottom, row, col, maps }
    }

    fn check(&self) -> Result<(), String> {
        if self.row.dom() != self.top.src() || self.row.cod() != self.bottom.src() {
            return Err("row map does not fit the matrices".into());
        }
        if self.col.dom() != self.top.dst() || self.col.cod() != self.bottom.dst() {
            return Err("column map does not fit the matrices".into());
        }
        if self.maps.len() != self.top.entries.len() {
            return Err("wrong number of entry maps".into());
        }
        let ny = self.top.dst.len();
        for (k, m) in self.maps.iter().enumerate() {
            let target = self.bottom.entry(self.row.apply(k / ny), self.col.apply(k % ny));
            if m.dom() != &self.top.entries[k] || m.cod() != target {
                return Err(format!("entry map {k} has the wrong frame"));
            }
        }
        Ok(())
    }

    pub fn top(&self) -> &MatProarrow {
        &self.top
    }

    pub fn bottom(&self) -> &MatProarrow {
        &self.bottom
    }

    pub fn row(&self) -> &FinFunction {
        &self.row
    }

    pub fn col(&self) -> &FinFunction {
        &self.col
    }

    pub fn maps(&self) -> &[FinFunction] {
        &self.maps
    }

    pub fn identity(m: &MatProarrow) -> Self {
        MatCell::new_unchecked(
            m.clone(),
            m.clone(),
            FinFunction::identity(m.src()),
            FinFunction::identity(m.dst()),
            m.entries.iter().map(FinFunction::identity).collect(),
        )
    }
}

impl fmt::Debug for MatCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatCell")
            .field("top", &self.top)
            .field("bottom", &self.bottom)
            .field("row", &self.row)
            .field("col", &self.col)
            .field("maps", &self.maps)
            .finish()
    }
}

/// Mat(FinSet): proarrows are set-valued matrices composed by sums of
/// products.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Mat;

fn globular(src: MatProarrow, dst: MatProarrow, maps: Vec<FinFunction>) -> MatCell {
    let row = FinFunction::identity(src.src());
    let col = FinFunction::identity(src.dst());
    MatCell::new_unchecked(src, dst, row, col, maps)
}

impl DoubleCategory for Mat {
    type Ob = FinSet;
    type Arr = FinFunction;
    type Pro = MatProarrow;
    type Cell = MatCell;

    fn arrow_src(&self, f: &FinFunction) -> FinSet {
        f.dom().clone()
    }
    fn arrow_dst(&self, f: &FinFunction) -> FinSet {
        f.cod().clone()
    }
    fn pro_src(&self, m: &MatProarrow) -> FinSet {
        m.src.clone()
    }
    fn pro_dst(&self, m: &MatProarrow) -> FinSet {
        m.dst.clone()
    }
    fn cell_top(&self, a: &MatCell) -> MatProarrow {
        a.top.clone()
    }
    fn cell_bottom(&self, a: &MatCell) -> MatProarrow {
        a.bottom.clone()
    }
    fn cell_left(&self, a: &MatCell) -> FinFunction {
        a.row.clone()
    }
    fn cell_right(&self, a: &MatCell) -> FinFunction {
        a.col.clone()
    }

    fn id_arrow(&self, x: &FinSet) -> FinFunction {
        FinFunction::identity(x)
    }
    fn compose_arrows(&self, f: &FinFunction, g: &FinFunction) -> DblResult<FinFunction> {
        Ok(f.then(g)?)
    }
    fn id_pro(&self, x: &FinSet) -> MatProarrow {
        MatProarrow::identity(x)
    }
    fn compose_pro(&self, m: &MatProarrow, n: &MatProarrow) -> DblResult<MatProarrow> {
        m.compose(n)
    }
    fn id_cell_on_pro(&self, m: &MatProarrow) -> MatCell {
        MatCell::identity(m)
    }
    fn id_cell_on_arrow(&self, f: &FinFunction) -> MatCell {
        let top = MatProarrow::identity(f.dom());
        let bottom = MatProarrow::identity(f.cod());
        let n = f.dom().len();
        let maps = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let target = bottom.entry(f.apply(i), f.apply(j)).clone();
                FinFunction::new_unchecked(top.entries[k].clone(), target, if i == j { vec![0] } else { Vec::new() })
            })
            .collect();
        MatCell::new_unchecked(top, bottom, f.clone(), f.clone(), maps)
    }
    fn compose_cells_vert(&self, a: &MatCell, b: &MatCell) -> DblResult<MatCell> {
        if a.bottom != b.top {
            return Err(DblError::EndpointMismatch("vertical composite: middle matrices differ".into()));
        }
        let ny = a.top.dst.len();
        let bny = b.top.dst.len();
        let maps = a
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let target = a.row.apply(k / ny) * bny + a.col.apply(k % ny);
                m.then(&b.maps[target])
            })
            .collect::<Result<Vec<_>, FinSetError>>()?;
        Ok(MatCell::new_unchecked(a.top.clone(), b.bottom.clone(), a.row.then(&b.row)?, a.col.then(&b.col)?, maps))
    }
    fn compose_cells_ext(&self, a: &MatCell, b: &MatCell) -> DblResult<MatCell> {
        if a.col != b.row {
            return Err(DblError::EndpointMismatch("external composite: shared arrows differ".into()));
        }
        let top = a.top.compose(&b.top)?;
        let bottom = a.bottom.compose(&b.bottom)?;
        let (nx, nz) = (top.src.len(), top.dst.len());
        let (ny_a, nz_b) = (a.top.dst.len(), b.top.dst.len());
        let mut maps = Vec::with_capacity(nx * nz);
        for x in 0..nx {
            for z in 0..nz {
                let (fx, hz) = (a.row.apply(x), b.col.apply(z));
                let table = (0..top.entry(x, z).len())
                    .map(|k| {
                        let (y, m, n) = a.top.decode(&b.top, x, z, k);
                        let m2 = a.maps[x * ny_a + y].apply(m);
                        let n2 = b.maps[y * nz_b + z].apply(n);
                        a.bottom.encode(&b.bottom, fx, hz, (a.col.apply(y), m2, n2))
                    })
                    .collect();
                maps.push(FinFunction::new_unchecked(top.entry(x, z).clone(), bottom.entry(fx, hz).clone(), table));
            }
        }
        Ok(MatCell::new_unchecked(top, bottom, a.row.clone(), b.col.clone(), maps))
    }
    fn associator(&self, m: &MatProarrow, n: &MatProarrow, p: &MatProarrow) -> DblResult<MatCell> {
        let mn = m.compose(n)?;
        let np = n.compose(p)?;
        let src = mn.compose(p)?;
        let dst = m.compose(&np)?;
        let (nx, nw) = (src.src.len(), src.dst.len());
        let mut maps = Vec::with_capacity(nx * nw);
        for x in 0..nx {
            for w in 0..nw {
                let table = (0..src.entry(x, w).len())
                    .map(|k| {
                        let (z, ab, c) = mn.decode(p, x, w, k);
                        let (y, a, b) = m.decode(n, x, z, ab);
                        let bc = n.encode(p, y, w, (z, b, c));
                        m.encode(&np, x, w, (y, a, bc))
                    })
                    .collect();
                maps.push(FinFunction::new_unchecked(src.entry(x, w).clone(), dst.entry(x, w).clone(), table));
            }
        }
        Ok(globular(src, dst, maps))
    }
    fn left_unitor(&self, m: &MatProarrow) -> DblResult<MatCell> {
        let id = MatProarrow::identity(&m.src);
        let src = id.compose(m)?;
        let maps = (0..src.entries.len())
            .map(|k| {
                let (x, y) = (k / m.dst.len(), k % m.dst.len());
                let table = (0..src.entries[k].len()).map(|e| id.decode(m, x, y, e).2).collect();
                FinFunction::new_unchecked(src.entries[k].clone(), m.entry(x, y).clone(), table)
            })
            .collect();
        Ok(globular(src, m.clone(), maps))
    }
    fn right_unitor(&self, m: &MatProarrow) -> DblResult<MatCell> {
        let id = MatProarrow::identity(&m.dst);
        let src = m.compose(&id)?;
        let maps = (0..src.entries.len())
            .map(|k| {
                let (x, y) = (k / m.dst.len(), k % m.dst.len());
                let table = (0..src.entries[k].len()).map(|e| m.decode(&id, x, y, e).1).collect();
                FinFunction::new_unchecked(src.entries[k].clone(), m.entry(x, y).clone(), table)
            })
            .collect();
        Ok(globular(src, m.clone(), maps))
    }
    fn invert_arrow(&self, f: &FinFunction) -> Option<FinFunction> {
        f.inverse()
    }
    fn invert_cell(&self, a: &MatCell) -> Option<MatCell> {
        let row_inv = a.row.inverse()?;
        let col_inv = a.col.inverse()?;
        let ny = a.top.dst.len();
        let bny = a.bottom.dst.len();
        let mut maps = Vec::with_capacity(a.bottom.entries.len());
        for k in 0..a.bottom.entries.len() {
            let src_k = row_inv.apply(k / bny) * ny + col_inv.apply(k % bny);
            maps.push(a.maps[src_k].inverse()?);
        }
        Some(MatCell::new_unchecked(a.bottom.clone(), a.top.clone(), row_inv, col_inv, maps))
    }
    fn validate_cell(&self, a: &MatCell) -> Result<(), String> {
        a.check()
    }

    fn objects(&self, bound: usize) -> Vec<FinSet> {
        (0..=bound).map(FinSet::range).collect()
    }
    fn arrows_between(&self, x: &FinSet, y: &FinSet) -> Vec<FinFunction> {
        FinFunction::all(x, y)
    }
    fn proarrows_between(&self, x: &FinSet, y: &FinSet, bound: usize) -> Vec<MatProarrow> {
        MatProarrow::all_between(x, y, bound)
    }
    fn cells_in_frame(&self, top: &MatProarrow, bottom: &MatProarrow, left: &FinFunction, right: &FinFunction) -> Vec<MatCell> {
        if left.dom() != top.src() || left.cod() != bottom.src() || right.dom() != top.dst() || right.cod() != bottom.dst() {
            return Vec::new();
        }
        let ny = top.dst.len();
        let choices: Vec<Vec<FinFunction>> = top
            .entries
            .iter()
            .enumerate()
            .map(|(k, e)| FinFunction::all(e, bottom.entry(left.apply(k / ny), right.apply(k % ny))))
            .collect();
        let sizes: Vec<usize> = choices.iter().map(Vec::len).collect();
        product_indices(&sizes)
            .into_iter()
            .map(|pick| {
                let maps = pick.iter().enumerate().map(|(k, &i)| choices[k][i].clone()).collect();
                MatCell::new_unchecked(top.clone(), bottom.clone(), left.clone(), right.clone(), maps)
            })
            .collect()
    }

    fn count_cells_in_frame(&self, top: &MatProarrow, bottom: &MatProarrow, left: &FinFunction, right: &FinFunction) -> usize {
        if left.dom() != top.src() || left.cod() != bottom.src() || right.dom() != top.dst() || right.cod() != bottom.dst() {
            return 0;
        }
        let ny = top.dst.len();
        top.entries.iter().enumerate().fold(1usize, |acc, (k, e)| {
            let t = bottom.entry(left.apply(k / ny), right.apply(k % ny)).len();
            (0..e.len()).fold(acc, |acc, _| acc.saturating_mul(t))
        })
    }

    fn solve_post(
        &self,
        top: &MatProarrow,
        bottom: &MatProarrow,
        left: &FinFunction,
        right: &FinFunction,
        constraints: &[(MatCell, MatCell)],
    ) -> Solutions<MatCell> {
        if left.dom() != top.src() || left.cod() != bottom.src() || right.dom() != top.dst() || right.cod() != bottom.dst() {
            return Solutions::none();
        }
        for (p, q) in constraints {
            let fits = &p.top == bottom
                && &q.top == top
                && p.bottom == q.bottom
                && left.then(&p.row).ok().as_ref() == Some(&q.row)
                && right.then(&p.col).ok().as_ref() == Some(&q.col);
            if !fits {
                return Solutions::none();
            }
        }
        let (ny, bny) = (top.dst.len(), bottom.dst.len());
        let mut count = 1usize;
        let mut maps = Vec::with_capacity(top.entries.len());
        for (k, entry) in top.entries.iter().enumerate() {
            let kb = left.apply(k / ny) * bny + right.apply(k % ny);
            let target = &bottom.entries[kb];
            let mut table = Vec::with_capacity(entry.len());
            for e in 0..entry.len() {
                let ok: Vec<usize> = (0..target.len())
                    .filter(|&t| constraints.iter().all(|(p, q)| p.maps[kb].apply(t) == q.maps[k].apply(e)))
                    .collect();
                count = count.saturating_mul(ok.len());
                if count == 0 {
                    return Solutions::none();
                }
                table.push(ok[0]);
            }
            maps.push(FinFunction::new_unchecked(entry.clone(), target.clone(), table));
        }
        let witness = (count == 1).then(|| MatCell::new_unchecked(top.clone(), bottom.clone(), left.clone(), right.clone(), maps));
        Solutions { count, witness }
    }

    fn solve_pre(
        &self,
        top: &MatProarrow,
        bottom: &MatProarrow,
        left: &FinFunction,
        right: &FinFunction,
        constraints: &[(MatCell, MatCell)],
    ) -> Solutions<MatCell> {
        if left.dom() != top.src() || left.cod() != bottom.src() || right.dom() != top.dst() || right.cod() != bottom.dst() {
            return Solutions::none();
        }
        for (i, q) in constraints {
            let fits = &i.bottom == top
                && &q.bottom == bottom
                && i.top == q.top
                && i.row.then(left).ok().as_ref() == Some(&q.row)
                && i.col.then(right).ok().as_ref() == Some(&q.col);
            if !fits {
                return Solutions::none();
            }
        }
        let (ny, bny) = (top.dst.len(), bottom.dst.len());
        let mut required: Vec<Vec<Option<usize>>> = top.entries.iter().map(|e| vec![None; e.len()]).collect();
        for (i, q) in constraints {
            let iny = i.top.dst.len();
            for (k2, m) in i.maps.iter().enumerate() {
                let k = i.row.apply(k2 / iny) * ny + i.col.apply(k2 % iny);
                for s in 0..m.dom().len() {
                    let (e, v) = (m.apply(s), q.maps[k2].apply(s));
                    match required[k][e] {
                        None => required[k][e] = Some(v),
                        Some(w) if w == v => {}
                        Some(_) => return Solutions::none(),
                    }
                }
            }
        }
        let mut count = 1usize;
        let mut maps = Vec::with_capacity(top.entries.len());
        for (k, entry) in top.entries.iter().enumerate() {
            let target = &bottom.entries[left.apply(k / ny) * bny + right.apply(k % ny)];
            let mut table = Vec::with_capacity(entry.len());
            for r in &required[k] {
                match r {
                    Some(v) => table.push(*v),
                    None => {
                        count = count.saturating_mul(target.len());
                        if count == 0 {
                            return Solutions::none();
                        }
                        table.push(0);
                    }
                }
            }
            maps.push(FinFunction::new_unchecked(entry.clone(), target.clone(), table));
        }
        let witness = (count == 1).then(|| MatCell::new_unchecked(top.clone(), bottom.clone(), left.clone(), right.clone(), maps));
        Solutions { count, witness }
    }
}

impl Equipment for Mat {
    fn companion(&self, f: &FinFunction) -> DblResult<CompanionPair<Mat>> {
        let p = Span.companion(f)?;
        Ok(BindingPair {
            arrow: f.clone(),
            proarrow: span_to_mat(&p.proarrow),
            unit: span_cell_to_mat(&p.unit),
            counit: span_cell_to_mat(&p.counit),
        })
    }

    fn conjoint(&self, f: &FinFunction) -> DblResult<ConjointPair<Mat>> {
        let p = Span.conjoint(f)?;
        Ok(BindingPair {
            arrow: f.clone(),
            proarrow: span_to_mat(&p.proarrow),
            unit: span_cell_to_mat(&p.unit),
            counit: span_cell_to_mat(&p.counit),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dblcat::{check_companion, check_conjoint, mat_to_span, span_to_mat};
    use crate::finset::SetSpan;

    fn mat(nx: usize, ny: usize, sizes: &[usize]) -> MatProarrow {
        MatProarrow::new(FinSet::range(nx), FinSet::range(ny), sizes.iter().map(|&k| FinSet::range(k)).collect()).unwrap()
    }

    #[test]
    fn composite_entry_sizes_are_sums_of_products() {
        let m = mat(1, 2, &[2, 1]);
        let n = mat(2, 1, &[3, 2]);
        let mn = Mat.compose_pro(&m, &n).unwrap();
        assert_eq!(mn.entry(0, 0).len(), 2 * 3 + 2);
        assert_eq!(&**mn.entry(0, 0).label(0), "inj(0,tup(0,0))");
    }

    #[test]
    fn coherence_cells_are_isos() {
        let m = mat(2, 1, &[1, 2]);
        let n = mat(1, 2, &[2, 0]);
        let p = mat(2, 2, &[1, 0, 1, 1]);
        let a = Mat.associator(&m, &n, &p).unwrap();
        assert!(Mat.validate_cell(&a).is_ok());
        assert!(Mat.invert_cell(&a).is_some());
        assert!(Mat.invert_cell(&Mat.left_unitor(&m).unwrap()).is_some());
        assert!(Mat.invert_cell(&Mat.right_unitor(&m).unwrap()).is_some());
    }

    #[test]
    fn enumeration_counts() {
        let x = FinSet::range(1);
        let y = FinSet::range(2);
        // Size vectors (a, b) with a + b <= 2.
        assert_eq!(MatProarrow::all_between(&x, &y, 2).len(), 6);
    }

    #[test]
    fn bindings_hold() {
        let f = FinFunction::new(FinSet::range(3), FinSet::range(2), vec![0, 1, 1]).unwrap();
        check_companion(&Mat, &Mat.companion(&f).unwrap()).unwrap();
        check_conjoint(&Mat, &Mat.conjoint(&f).unwrap()).unwrap();
    }

    #[test]
    fn identity_matches_span_identity() {
        let x = FinSet::new(["a", "b"]).unwrap();
        assert_eq!(span_to_mat(&SetSpan::identity(&x)), MatProarrow::identity(&x));
        let back = mat_to_span(&MatProarrow::identity(&x));
        assert_eq!(back.apex().len(), 2);
    }

    #[test]
    fn solvers_agree_with_filtering() {
        let m = mat(1, 2, &[2, 1]);
        let n = mat(2, 1, &[1, 2]);
        let mn = m.compose(&n).unwrap();
        let lam = Mat.left_unitor(&mn).unwrap();
        let top = Mat.cell_top(&lam);
        let ids = (FinFunction::identity(mn.src()), FinFunction::identity(mn.dst()));
        for p in Mat.cells_in_frame(&mn, &mn, &ids.0, &ids.1) {
            let q = Mat.compose_cells_vert(&lam, &p).unwrap();
            let fast = Mat.solve_post(&top, &mn, &ids.0, &ids.1, &[(p.clone(), q.clone())]);
            let slow: Vec<MatCell> = Mat
                .cells_in_frame(&top, &mn, &ids.0, &ids.1)
                .into_iter()
                .filter(|b| Mat.compose_cells_vert(b, &p).unwrap() == q)
                .collect();
            assert_eq!(fast.count, slow.len());
            if fast.count == 1 {
                assert_eq!(fast.witness.as_ref(), slow.first());
            }
            let fast = Mat.solve_pre(&mn, &mn, &ids.0, &ids.1, &[(lam.clone(), q.clone())]);
            let slow: Vec<MatCell> = Mat
                .cells_in_frame(&mn, &mn, &ids.0, &ids.1)
                .into_iter()
                .filter(|b| Mat.compose_cells_vert(&lam, b).unwrap() == q)
                .collect();
            assert_eq!(fast.count, slow.len());
            assert_eq!(fast.witness.as_ref(), slow.first());
        }
    }
}
