//! Bounded brute-force verification of universal properties.
//!
//! For every test frame the checker compares the set of candidate
//! factorizations with the set of test data they should correspond to: the
//! map sending a factorization to its composites with the (co)projections
//! must be a bijection. When it is not, every test datum with zero or
//! several preimages is reported, and its count is confirmed by the base's
//! solver.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CoproductResult, ProductResult};
use crate::dblcat::DoubleCategory;
use crate::finset::product_indices;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyKind {
    Product,
    Coproduct,
    Cartesian,
    Opcartesian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Carrier bound for test objects and test proarrows.
    pub bound: usize,
    /// Cap on the number of test frames examined.
    pub budget: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            bound: 3,
            budget: 1_000_000,
        }
    }
}

/// A test datum with zero or several factorizations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub datum: String,
    pub factorizations: usize,
    /// Whether the base's solver found the same number of factorizations.
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalCheckReport {
    pub kind: PropertyKind,
    pub bound: usize,
    pub cases_tried: usize,
    pub failure_count: usize,
    /// The first failures in order of their descriptions.
    pub failures: Vec<Counterexample>,
    /// Set when the budget ran out before the enumeration finished.
    pub partial: bool,
}

impl UniversalCheckReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// How many failures a report keeps.
const KEPT_FAILURES: usize = 32;
const CHUNK: usize = 16;

#[derive(Default)]
struct Tally {
    cases: usize,
    frames: usize,
    failure_count: usize,
    failures: Vec<Counterexample>,
}

impl Tally {
    fn fail(&mut self, c: Counterexample) {
        self.failure_count += 1;
        self.failures.push(c);
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.frames += other.frames;
        self.failure_count += other.failure_count;
        self.failures.extend(other.failures);
        if self.failures.len() > 4 * KEPT_FAILURES {
            self.trim();
        }
    }

    fn trim(&mut self) {
        self.failures.sort_by(|a, b| a.datum.cmp(&b.datum));
        self.failures.truncate(KEPT_FAILURES);
    }

    fn into_report(mut self, kind: PropertyKind, bound: usize, partial: bool) -> UniversalCheckReport {
        self.trim();
        UniversalCheckReport {
            kind,
            bound,
            cases_tried: self.cases,
            failure_count: self.failure_count,
            failures: self.failures,
            partial,
        }
    }
}

fn ill_formed(kind: PropertyKind, bound: usize, why: String) -> UniversalCheckReport {
    UniversalCheckReport {
        kind,
        bound,
        cases_tried: 0,
        failure_count: 1,
        failures: vec![Counterexample {
            datum: format!("ill-formed candidate: {why}"),
            factorizations: 0,
            confirmed: true,
        }],
        partial: false,
    }
}

/// Records one test frame: `images[s]` is the tuple of composites of the
/// `s`-th factorization, `target_count` the number of test data in the frame.
fn tally_frame<C: PartialEq + Clone>(
    tally: &mut Tally,
    images: Vec<Vec<C>>,
    target_count: usize,
    factors: impl FnOnce() -> Vec<Vec<C>>,
    confirm: impl Fn(&[C]) -> usize,
    describe: impl Fn(&[C]) -> String,
) {
    tally.frames += 1;
    let distinct = (0..images.len()).all(|i| (0..i).all(|j| images[i] != images[j]));
    if distinct && images.len() == target_count {
        tally.cases += target_count;
        return;
    }
    let factors = factors();
    for pick in product_indices(&factors.iter().map(Vec::len).collect::<Vec<_>>()) {
        let datum: Vec<C> = pick.iter().enumerate().map(|(k, &i)| factors[k][i].clone()).collect();
        let count = images.iter().filter(|im| **im == datum).count();
        tally.cases += 1;
        if count != 1 {
            let solved = confirm(&datum);
            tally.fail(Counterexample {
                datum: describe(&datum),
                factorizations: count,
                confirmed: solved == count,
            });
        }
    }
}

/// Runs work items in parallel chunks, stopping at a chunk boundary once the
/// budget is spent. Returns whether the run was cut short.
fn run_items<I: Sync>(items: &[I], budget: usize, tally: &mut Tally, work: impl Fn(&I) -> Tally + Sync) -> bool {
    for chunk in items.chunks(CHUNK) {
        if tally.frames >= budget {
            return true;
        }
        let parts: Vec<Tally> = chunk.par_iter().map(&work).collect();
        for p in parts {
            tally.merge(p);
        }
    }
    false
}

fn saturating_product(it: impl Iterator<Item = usize>) -> usize {
    it.fold(1usize, |acc, k| acc.saturating_mul(k))
}

fn test_proarrows<D: DoubleCategory>(d: &D, objects: &[D::Ob], bound: usize) -> Vec<(usize, usize, D::Pro)> {
    let mut items = Vec::new();
    for (wi, w) in objects.iter().enumerate() {
        for (zi, z) in objects.iter().enumerate() {
            items.extend(d.proarrows_between(w, z, bound).into_iter().map(|n| (wi, zi, n)));
        }
    }
    items
}

/// Arrows out of each test object into `vertex`, each with its composites
/// with `legs`.
fn arrows_into<D: DoubleCategory>(d: &D, objects: &[D::Ob], vertex: &D::Ob, legs: &[D::Arr]) -> Vec<Vec<(D::Arr, Vec<D::Arr>)>> {
    objects
        .iter()
        .map(|w| {
            d.arrows_between(w, vertex)
                .into_iter()
                .map(|f| {
                    let composites = legs.iter().map(|p| d.compose_arrows(&f, p).expect("validated legs compose")).collect();
                    (f, composites)
                })
                .collect()
        })
        .collect()
}

/// Arrows out of `vertex` into each test object, each with its composites
/// after `legs`.
fn arrows_out_of<D: DoubleCategory>(d: &D, objects: &[D::Ob], vertex: &D::Ob, legs: &[D::Arr]) -> Vec<Vec<(D::Arr, Vec<D::Arr>)>> {
    objects
        .iter()
        .map(|w| {
            d.arrows_between(vertex, w)
                .into_iter()
                .map(|f| {
                    let composites = legs.iter().map(|i| d.compose_arrows(i, &f).expect("validated legs compose")).collect();
                    (f, composites)
                })
                .collect()
        })
        .collect()
}

/// Checks that `cand` is a product: arrows into the vertex objects
/// correspond to families of arrows, and cells into the vertex proarrow to
/// families of cells into the members.
pub fn check_universal_product<D: DoubleCategory>(d: &D, cand: &ProductResult<D>, opts: &CheckOptions) -> UniversalCheckReport {
    let kind = PropertyKind::Product;
    if let Err(e) = cand.validate_product(d) {
        return ill_formed(kind, opts.bound, e);
    }
    let m = &cand.family;
    let objects = d.objects(opts.bound);
    let mut tally = Tally::default();
    for (vertex, legs, fam) in [(&cand.src, &cand.src_legs, &m.src), (&cand.dst, &cand.dst_legs, &m.dst)] {
        for w in &objects {
            let images = d
                .arrows_between(w, vertex)
                .iter()
                .map(|h| legs.iter().map(|p| d.compose_arrows(h, p).expect("validated legs compose")).collect())
                .collect();
            let target_count = saturating_product(fam.assignment.iter().map(|x| d.arrows_between(w, x).len()));
            tally_frame(
                &mut tally,
                images,
                target_count,
                || fam.assignment.iter().map(|x| d.arrows_between(w, x)).collect(),
                |fs| d.solve_arrow_post(w, vertex, &legs.iter().cloned().zip(fs.iter().cloned()).collect::<Vec<_>>()).count,
                |fs| format!("arrows from {w:?} with components {fs:?}"),
            );
        }
    }
    let fx = arrows_into(d, &objects, &cand.src, &cand.src_legs);
    let gy = arrows_into(d, &objects, &cand.dst, &cand.dst_legs);
    let (l, r) = (m.indexing.left(), m.indexing.right());
    let items = test_proarrows(d, &objects, opts.bound);
    let partial = run_items(&items, opts.budget, &mut tally, |(wi, zi, n)| {
        let mut t = Tally::default();
        for (f, fp) in &fx[*wi] {
            for (g, gp) in &gy[*zi] {
                let sources = d.cells_in_frame(n, &cand.pro, f, g);
                let target_count = saturating_product(
                    (0..m.components.len()).map(|a| d.count_cells_in_frame(n, &m.components[a], &fp[l.apply(a)], &gp[r.apply(a)])),
                );
                if sources.is_empty() && target_count == 0 {
                    t.frames += 1;
                    continue;
                }
                let images = sources
                    .iter()
                    .map(|b| cand.cells.iter().map(|p| d.compose_cells_vert(b, p).expect("validated cells compose")).collect())
                    .collect();
                tally_frame(
                    &mut t,
                    images,
                    target_count,
                    || {
                        (0..m.components.len())
                            .map(|a| d.cells_in_frame(n, &m.components[a], &fp[l.apply(a)], &gp[r.apply(a)]))
                            .collect()
                    },
                    |alpha| d.solve_post(n, &cand.pro, f, g, &cand.cells.iter().cloned().zip(alpha.iter().cloned()).collect::<Vec<_>>()).count,
                    |alpha| format!("proarrow {n:?} over ({f:?}, {g:?}) with cells {alpha:?}"),
                );
            }
        }
        t
    });
    tally.into_report(kind, opts.bound, partial)
}

/// Checks that `cand` is a coproduct, dually to [`check_universal_product`].
pub fn check_universal_coproduct<D: DoubleCategory>(d: &D, cand: &CoproductResult<D>, opts: &CheckOptions) -> UniversalCheckReport {
    let kind = PropertyKind::Coproduct;
    if let Err(e) = cand.validate_coproduct(d) {
        return ill_formed(kind, opts.bound, e);
    }
    let m = &cand.family;
    let objects = d.objects(opts.bound);
    let mut tally = Tally::default();
    for (vertex, legs, fam) in [(&cand.src, &cand.src_legs, &m.src), (&cand.dst, &cand.dst_legs, &m.dst)] {
        for w in &objects {
            let images = d
                .arrows_between(vertex, w)
                .iter()
                .map(|h| legs.iter().map(|i| d.compose_arrows(i, h).expect("validated legs compose")).collect())
                .collect();
            let target_count = saturating_product(fam.assignment.iter().map(|x| d.arrows_between(x, w).len()));
            tally_frame(
                &mut tally,
                images,
                target_count,
                || fam.assignment.iter().map(|x| d.arrows_between(x, w)).collect(),
                |fs| d.solve_arrow_pre(vertex, w, &legs.iter().cloned().zip(fs.iter().cloned()).collect::<Vec<_>>()).count,
                |fs| format!("arrows into {w:?} with components {fs:?}"),
            );
        }
    }
    let fx = arrows_out_of(d, &objects, &cand.src, &cand.src_legs);
    let gy = arrows_out_of(d, &objects, &cand.dst, &cand.dst_legs);
    let (l, r) = (m.indexing.left(), m.indexing.right());
    let items = test_proarrows(d, &objects, opts.bound);
    let partial = run_items(&items, opts.budget, &mut tally, |(wi, zi, n)| {
        let mut t = Tally::default();
        for (f, fi) in &fx[*wi] {
            for (g, gi) in &gy[*zi] {
                let sources = d.cells_in_frame(&cand.pro, n, f, g);
                let target_count = saturating_product(
                    (0..m.components.len()).map(|a| d.count_cells_in_frame(&m.components[a], n, &fi[l.apply(a)], &gi[r.apply(a)])),
                );
                if sources.is_empty() && target_count == 0 {
                    t.frames += 1;
                    continue;
                }
                let images = sources
                    .iter()
                    .map(|b| cand.cells.iter().map(|i| d.compose_cells_vert(i, b).expect("validated cells compose")).collect())
                    .collect();
                tally_frame(
                    &mut t,
                    images,
                    target_count,
                    || {
                        (0..m.components.len())
                            .map(|a| d.cells_in_frame(&m.components[a], n, &fi[l.apply(a)], &gi[r.apply(a)]))
                            .collect()
                    },
                    |alpha| d.solve_pre(&cand.pro, n, f, g, &cand.cells.iter().cloned().zip(alpha.iter().cloned()).collect::<Vec<_>>()).count,
                    |alpha| format!("proarrow {n:?} under ({f:?}, {g:?}) with cells {alpha:?}"),
                );
            }
        }
        t
    });
    tally.into_report(kind, opts.bound, partial)
}

/// Checks that `rho : r => n` is cartesian: every cell into `n` whose sides
/// factor through those of `rho` factors uniquely through `rho`.
pub fn check_universal_cartesian<D: DoubleCategory>(d: &D, rho: &D::Cell, opts: &CheckOptions) -> UniversalCheckReport {
    let kind = PropertyKind::Cartesian;
    if let Err(e) = d.validate_cell(rho) {
        return ill_formed(kind, opts.bound, e);
    }
    let (r, n) = (d.cell_top(rho), d.cell_bottom(rho));
    let (f, g) = (d.cell_left(rho), d.cell_right(rho));
    let objects = d.objects(opts.bound);
    let hx = arrows_into(d, &objects, &d.pro_src(&r), std::slice::from_ref(&f));
    let ky = arrows_into(d, &objects, &d.pro_dst(&r), std::slice::from_ref(&g));
    let items = test_proarrows(d, &objects, opts.bound);
    let mut tally = Tally::default();
    let partial = run_items(&items, opts.budget, &mut tally, |(wi, zi, m)| {
        let mut t = Tally::default();
        for (h, hf) in &hx[*wi] {
            for (k, kg) in &ky[*zi] {
                let sources = d.cells_in_frame(m, &r, h, k);
                let target_count = d.count_cells_in_frame(m, &n, &hf[0], &kg[0]);
                if sources.is_empty() && target_count == 0 {
                    t.frames += 1;
                    continue;
                }
                let images = sources.iter().map(|b| vec![d.compose_cells_vert(b, rho).expect("frames fit")]).collect();
                tally_frame(
                    &mut t,
                    images,
                    target_count,
                    || vec![d.cells_in_frame(m, &n, &hf[0], &kg[0])],
                    |alpha| d.solve_post(m, &r, h, k, &[(rho.clone(), alpha[0].clone())]).count,
                    |alpha| format!("proarrow {m:?} over ({h:?}, {k:?}) with cell {:?}", alpha[0]),
                );
            }
        }
        t
    });
    tally.into_report(kind, opts.bound, partial)
}

/// Checks that `eps : m => e` is opcartesian: every cell out of `m` whose
/// sides factor through those of `eps` factors uniquely through `eps`.
pub fn check_universal_opcartesian<D: DoubleCategory>(d: &D, eps: &D::Cell, opts: &CheckOptions) -> UniversalCheckReport {
    let kind = PropertyKind::Opcartesian;
    if let Err(e) = d.validate_cell(eps) {
        return ill_formed(kind, opts.bound, e);
    }
    let (m, e) = (d.cell_top(eps), d.cell_bottom(eps));
    let (f, g) = (d.cell_left(eps), d.cell_right(eps));
    let objects = d.objects(opts.bound);
    let hu = arrows_out_of(d, &objects, &d.pro_src(&e), std::slice::from_ref(&f));
    let kv = arrows_out_of(d, &objects, &d.pro_dst(&e), std::slice::from_ref(&g));
    let items = test_proarrows(d, &objects, opts.bound);
    let mut tally = Tally::default();
    let partial = run_items(&items, opts.budget, &mut tally, |(ui, vi, n)| {
        let mut t = Tally::default();
        for (h, fh) in &hu[*ui] {
            for (k, gk) in &kv[*vi] {
                let sources = d.cells_in_frame(&e, n, h, k);
                let target_count = d.count_cells_in_frame(&m, n, &fh[0], &gk[0]);
                if sources.is_empty() && target_count == 0 {
                    t.frames += 1;
                    continue;
                }
                let images = sources.iter().map(|b| vec![d.compose_cells_vert(eps, b).expect("frames fit")]).collect();
                tally_frame(
                    &mut t,
                    images,
                    target_count,
                    || vec![d.cells_in_frame(&m, n, &fh[0], &gk[0])],
                    |alpha| d.solve_pre(&e, n, h, k, &[(eps.clone(), alpha[0].clone())]).count,
                    |alpha| format!("proarrow {n:?} under ({h:?}, {k:?}) with cell {:?}", alpha[0]),
                );
            }
        }
        t
    });
    tally.into_report(kind, opts.bound, partial)
}
