//! Seeded random generation of sets, spans, matrices and families, used by
//! the sampled test suites, the benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dblcat::{DblResult, Mat, MatProarrow, Span};
use crate::family::{DblFam, FamObject, FamProarrow};
use crate::finset::{FinFunction, FinSet, SetSpan};

/// Size limits for sampled data. Index sets and carriers have at least
/// `min_carrier` elements; member apexes and matrix entries may be empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sizes {
    pub max_index: usize,
    pub max_carrier: usize,
    pub max_apex: usize,
    pub min_carrier: usize,
}

impl Default for Sizes {
    fn default() -> Self {
        Sizes {
            max_index: 3,
            max_carrier: 3,
            max_apex: 3,
            min_carrier: 1,
        }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

fn named(prefix: &str, n: usize) -> FinSet {
    FinSet::new((0..n).map(|k| format!("{prefix}{k}"))).expect("distinct labels")
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn size(&mut self, min: usize, max: usize) -> usize {
        self.rng.gen_range(min..=max.max(min))
    }

    pub fn set(&mut self, min: usize, max: usize) -> FinSet {
        let n = self.size(min, max);
        FinSet::range(n)
    }

    /// A uniformly random function; the domain must be empty when the
    /// codomain is.
    pub fn function(&mut self, dom: &FinSet, cod: &FinSet) -> FinFunction {
        assert!(dom.is_empty() || !cod.is_empty(), "no functions into the empty set");
        let table = (0..dom.len()).map(|_| self.rng.gen_range(0..cod.len())).collect();
        FinFunction::new(dom.clone(), cod.clone(), table).expect("table in range")
    }

    pub fn bijection(&mut self, dom: &FinSet, cod: &FinSet) -> FinFunction {
        assert_eq!(dom.len(), cod.len());
        let mut table: Vec<usize> = (0..cod.len()).collect();
        table.shuffle(&mut self.rng);
        FinFunction::new(dom.clone(), cod.clone(), table).expect("permutation")
    }

    /// A span `x <- s -> y` with `|s| <= max_apex`, empty if a foot is.
    pub fn span(&mut self, x: &FinSet, y: &FinSet, max_apex: usize) -> SetSpan {
        let n = if x.is_empty() || y.is_empty() { 0 } else { self.size(0, max_apex) };
        let apex = FinSet::range(n);
        SetSpan::new(self.function(&apex, x), self.function(&apex, y)).expect("legs share the apex")
    }

    pub fn matrix(&mut self, x: &FinSet, y: &FinSet, max_entry: usize) -> MatProarrow {
        let entries = (0..x.len() * y.len()).map(|_| self.set(0, max_entry)).collect();
        MatProarrow::new(x.clone(), y.clone(), entries).expect("entry count")
    }

    pub fn index_set(&mut self, prefix: &str, sizes: &Sizes) -> FinSet {
        let n = self.size(sizes.min_carrier, sizes.max_index);
        named(prefix, n)
    }

    pub fn family_object(&mut self, prefix: &str, sizes: &Sizes) -> FamObject<Span> {
        let indexing = self.index_set(prefix, sizes);
        let assignment = (0..indexing.len()).map(|_| self.set(sizes.min_carrier, sizes.max_carrier)).collect();
        FamObject { indexing, assignment }
    }

    /// An indexing span `I <- A -> J` with `|A| <= max_index`.
    pub fn indexing_span(&mut self, i: &FinSet, j: &FinSet, max_index: usize) -> SetSpan {
        let n = if i.is_empty() || j.is_empty() { 0 } else { self.size(0, max_index) };
        let apex = named("a", n);
        SetSpan::new(self.function(&apex, i), self.function(&apex, j)).expect("legs share the apex")
    }

    /// A family of spans between the given object families.
    pub fn span_family_between(&mut self, x: &FamObject<Span>, y: &FamObject<Span>, indexing: SetSpan, sizes: &Sizes) -> DblResult<FamProarrow<Span>> {
        let components = (0..indexing.apex().len())
            .map(|a| {
                let (i, j) = (indexing.left().apply(a), indexing.right().apply(a));
                self.span(&x.assignment[i], &y.assignment[j], sizes.max_apex)
            })
            .collect();
        DblFam::covariant(Span).proarrow(x.clone(), y.clone(), indexing, components)
    }

    pub fn span_family(&mut self, sizes: &Sizes) -> DblResult<FamProarrow<Span>> {
        let x = self.family_object("i", sizes);
        let y = self.family_object("j", sizes);
        let indexing = self.indexing_span(&x.indexing, &y.indexing, sizes.max_index);
        self.span_family_between(&x, &y, indexing, sizes)
    }

    /// A composable pair `m : x ⇸ y`, `n : y ⇸ z` of span families.
    pub fn composable_pair(&mut self, sizes: &Sizes) -> DblResult<(FamProarrow<Span>, FamProarrow<Span>)> {
        let x = self.family_object("i", sizes);
        let y = self.family_object("j", sizes);
        let z = self.family_object("k", sizes);
        let a = self.indexing_span(&x.indexing, &y.indexing, sizes.max_index);
        let b = self.indexing_span(&y.indexing, &z.indexing, sizes.max_index);
        Ok((self.span_family_between(&x, &y, a, sizes)?, self.span_family_between(&y, &z, b, sizes)?))
    }

    /// A composable pair whose indexing legs into the middle index set are
    /// bijections.
    pub fn bijective_pair(&mut self, sizes: &Sizes) -> DblResult<(FamProarrow<Span>, FamProarrow<Span>)> {
        let x = self.family_object("i", sizes);
        let y = self.family_object("j", sizes);
        let z = self.family_object("k", sizes);
        let (an, bn) = (named("a", y.len()), named("b", y.len()));
        let a = SetSpan::new(self.function(&an, &x.indexing), self.bijection(&an, &y.indexing))?;
        let b = SetSpan::new(self.bijection(&bn, &y.indexing), self.function(&bn, &z.indexing))?;
        Ok((self.span_family_between(&x, &y, a, sizes)?, self.span_family_between(&y, &z, b, sizes)?))
    }

    pub fn mat_object(&mut self, prefix: &str, sizes: &Sizes) -> FamObject<Mat> {
        let indexing = self.index_set(prefix, sizes);
        let assignment = (0..indexing.len()).map(|_| self.set(sizes.min_carrier, sizes.max_carrier)).collect();
        FamObject { indexing, assignment }
    }

    pub fn mat_family_between(&mut self, x: &FamObject<Mat>, y: &FamObject<Mat>, indexing: SetSpan, sizes: &Sizes) -> DblResult<FamProarrow<Mat>> {
        let components = (0..indexing.apex().len())
            .map(|a| {
                let (i, j) = (indexing.left().apply(a), indexing.right().apply(a));
                self.matrix(&x.assignment[i], &y.assignment[j], sizes.max_apex)
            })
            .collect();
        DblFam::covariant(Mat).proarrow(x.clone(), y.clone(), indexing, components)
    }

    pub fn mat_family(&mut self, sizes: &Sizes) -> DblResult<FamProarrow<Mat>> {
        let x = self.mat_object("i", sizes);
        let y = self.mat_object("j", sizes);
        let indexing = self.indexing_span(&x.indexing, &y.indexing, sizes.max_index);
        self.mat_family_between(&x, &y, indexing, sizes)
    }

    pub fn mat_composable_pair(&mut self, sizes: &Sizes) -> DblResult<(FamProarrow<Mat>, FamProarrow<Mat>)> {
        let x = self.mat_object("i", sizes);
        let y = self.mat_object("j", sizes);
        let z = self.mat_object("k", sizes);
        let a = self.indexing_span(&x.indexing, &y.indexing, sizes.max_index);
        let b = self.indexing_span(&y.indexing, &z.indexing, sizes.max_index);
        Ok((self.mat_family_between(&x, &y, a, sizes)?, self.mat_family_between(&y, &z, b, sizes)?))
    }

    pub fn mat_bijective_pair(&mut self, sizes: &Sizes) -> DblResult<(FamProarrow<Mat>, FamProarrow<Mat>)> {
        let x = self.mat_object("i", sizes);
        let y = self.mat_object("j", sizes);
        let z = self.mat_object("k", sizes);
        let (an, bn) = (named("a", y.len()), named("b", y.len()));
        let a = SetSpan::new(self.function(&an, &x.indexing), self.bijection(&an, &y.indexing))?;
        let b = SetSpan::new(self.bijection(&bn, &y.indexing), self.function(&bn, &z.indexing))?;
        Ok((self.mat_family_between(&x, &y, a, sizes)?, self.mat_family_between(&y, &z, b, sizes)?))
    }
}
