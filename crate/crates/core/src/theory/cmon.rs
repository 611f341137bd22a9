//! Finite categories enriched in commutative monoids as models of the
//! theory of local commutative monoids.

use std::collections::BTreeMap;

use super::model::ModelData;
use super::presentation::builtin_lc_mon_theory;
use super::words::{ObWord, ProWord};
use super::{TheoryError, TheoryResult};
use crate::dblcat::pair_positions;
use crate::finset::{FinFunction, FinSet, SetSpan, SpanMorphism};

/// A finite CMon-enriched category. Morphisms are listed once with their
/// ends; `plus` is given on parallel pairs, `compose` on composable pairs
/// in diagrammatic order (`compose[(f, g)]` is `f` then `g`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMonCategory {
    pub objects: FinSet,
    pub morphisms: FinSet,
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub identity: Vec<usize>,
    /// `zero[a][b]` is the zero morphism `a -> b`.
    pub zero: Vec<Vec<usize>>,
    pub plus: BTreeMap<(usize, usize), usize>,
    pub compose: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CMonError {
    #[error("malformed category: {0}")]
    Malformed(String),
    #[error("not a commutative monoid on {hom}: {law}")]
    NotCommutativeMonoid { hom: String, law: String },
    #[error("composition is not a category: {0}")]
    NotCategory(String),
    /// `h · (f + g) · k` differs from `h·f·k + h·g·k`, or, with `g` absent,
    /// `h · 0 · k` is not zero; `f` is then the zero morphism.
    #[error("composition is not biadditive at h={h}, f={f}, g={g:?}, k={k}")]
    NotBiadditive { h: String, f: String, g: Option<String>, k: String },
}

impl CMonCategory {
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.src[f] == a && self.dst[f] == b).collect()
    }

    fn label(&self, f: usize) -> String {
        self.morphisms.label(f).to_string()
    }

    fn add(&self, f: usize, g: usize) -> Result<usize, CMonError> {
        self.plus
            .get(&(f, g))
            .copied()
            .ok_or_else(|| CMonError::Malformed(format!("no sum for ({}, {})", self.label(f), self.label(g))))
    }

    fn comp(&self, f: usize, g: usize) -> Result<usize, CMonError> {
        self.compose
            .get(&(f, g))
            .copied()
            .ok_or_else(|| CMonError::Malformed(format!("no composite for ({}, {})", self.label(f), self.label(g))))
    }

    /// Checks the tables and the enrichment laws.
    pub fn validate(&self) -> Result<(), CMonError> {
        let (no, nm) = (self.objects.len(), self.morphisms.len());
        if self.src.len() != nm || self.dst.len() != nm || self.identity.len() != no || self.zero.len() != no {
            return Err(CMonError::Malformed("table sizes do not match".into()));
        }
        if self.src.iter().chain(&self.dst).any(|&a| a >= no) {
            return Err(CMonError::Malformed("morphism end out of range".into()));
        }
        for a in 0..no {
            if self.src[self.identity[a]] != a || self.dst[self.identity[a]] != a {
                return Err(CMonError::Malformed(format!("identity on {} has the wrong ends", self.objects.label(a))));
            }
            if self.zero[a].len() != no {
                return Err(CMonError::Malformed("zero table has the wrong size".into()));
            }
            for b in 0..no {
                let z = self.zero[a][b];
                if z >= nm || self.src[z] != a || self.dst[z] != b {
                    return Err(CMonError::Malformed("zero morphism has the wrong ends".into()));
                }
            }
        }
        for (&(f, g), &s) in &self.plus {
            if f >= nm || g >= nm || s >= nm || self.src[f] != self.src[g] || self.dst[f] != self.dst[g] || self.src[s] != self.src[f] || self.dst[s] != self.dst[f] {
                return Err(CMonError::Malformed("sum of non-parallel morphisms".into()));
            }
        }
        for (&(f, g), &h) in &self.compose {
            if f >= nm || g >= nm || h >= nm || self.dst[f] != self.src[g] || self.src[h] != self.src[f] || self.dst[h] != self.dst[g] {
                return Err(CMonError::Malformed("composite has the wrong ends".into()));
            }
        }
        for a in 0..no {
            for b in 0..no {
                let hom = self.hom(a, b);
                let name = format!("{} -> {}", self.objects.label(a), self.objects.label(b));
                let bad = |law: &str| CMonError::NotCommutativeMonoid { hom: name.clone(), law: law.into() };
                for &f in &hom {
                    if self.add(f, self.zero[a][b])? != f {
                        return Err(bad("zero is not a unit"));
                    }
                    for &g in &hom {
                        if self.add(f, g)? != self.add(g, f)? {
                            return Err(bad("sum is not commutative"));
                        }
                        for &h in &hom {
                            if self.add(self.add(f, g)?, h)? != self.add(f, self.add(g, h)?)? {
                                return Err(bad("sum is not associative"));
                            }
                        }
                    }
                }
            }
        }
        for f in 0..nm {
            if self.comp(self.identity[self.src[f]], f)? != f || self.comp(f, self.identity[self.dst[f]])? != f {
                return Err(CMonError::NotCategory(format!("identities fail at {}", self.label(f))));
            }
            for g in self.hom_from(self.dst[f]) {
                for h in self.hom_from(self.dst[g]) {
                    if self.comp(self.comp(f, g)?, h)? != self.comp(f, self.comp(g, h)?)? {
                        return Err(CMonError::NotCategory(format!(
                            "composition is not associative at ({}, {}, {})",
                            self.label(f),
                            self.label(g),
                            self.label(h)
                        )));
                    }
                }
            }
        }
        for h in 0..nm {
            let b = self.dst[h];
            for c in 0..self.objects.len() {
                for f in self.hom(b, c) {
                    for k in self.hom_from(c) {
                        let zero = self.zero[b][c];
                        let hzk = self.comp(self.comp(h, zero)?, k)?;
                        if hzk != self.zero[self.src[h]][self.dst[k]] {
                            return Err(CMonError::NotBiadditive {
                                h: self.label(h),
                                f: self.label(zero),
                                g: None,
                                k: self.label(k),
                            });
                        }
                        for g in self.hom(b, c) {
                            let lhs = self.comp(self.comp(h, self.add(f, g)?)?, k)?;
                            let rhs = self.add(self.comp(self.comp(h, f)?, k)?, self.comp(self.comp(h, g)?, k)?)?;
                            if lhs != rhs {
                                return Err(CMonError::NotBiadditive {
                                    h: self.label(h),
                                    f: self.label(f),
                                    g: Some(self.label(g)),
                                    k: self.label(k),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn hom_from(&self, a: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.src[f] == a).collect()
    }

    /// The one-object category of the Boolean semiring: sum is OR with zero
    /// `0`, composition is AND with identity `1`.
    pub fn boolean() -> Self {
        let plus = [((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)].into_iter().collect();
        let compose = [((0, 0), 0), ((0, 1), 0), ((1, 0), 0), ((1, 1), 1)].into_iter().collect();
        CMonCategory {
            objects: FinSet::singleton("•"),
            morphisms: FinSet::new(["0", "1"]).expect("distinct"),
            src: vec![0, 0],
            dst: vec![0, 0],
            identity: vec![1],
            zero: vec![vec![0]],
            plus,
            compose,
        }
    }
}

fn x() -> ObWord {
    ObWord::gen("x")
}

fn local(k: usize) -> ProWord {
    ProWord::local_product(x(), x(), vec![ProWord::Id(x()); k])
}

fn conversion<E: std::fmt::Display>(e: E) -> TheoryError {
    TheoryError::NotDetermined(e.to_string())
}

/// The model of local commutative monoids whose object set is the set of
/// objects, whose identity span is the span of all morphisms, with
/// composition as laxator, identities as unitor, sum as `μ` and zeros as
/// `η`.
pub fn cmon_category_to_model(c: &CMonCategory) -> Result<ModelData, CMonError> {
    c.validate()?;
    let obs = c.objects.clone();
    let mor = c.morphisms.clone();
    let span = SetSpan::new(
        FinFunction::new(mor.clone(), obs.clone(), c.src.clone()).map_err(|e| CMonError::Malformed(e.to_string()))?,
        FinFunction::new(mor.clone(), obs.clone(), c.dst.clone()).map_err(|e| CMonError::Malformed(e.to_string()))?,
    )
    .map_err(|e| CMonError::Malformed(e.to_string()))?;
    let mut model = ModelData::new(builtin_lc_mon_theory());
    model.objects.insert("x".into(), obs.clone());
    model.identities.insert("x".into(), span.clone());
    let id_obs = FinFunction::identity(&obs);
    let unitor = SpanMorphism::new(SetSpan::identity(&obs), span.clone(), id_obs.clone(), FinFunction::new(obs.clone(), mor.clone(), c.identity.clone()).map_err(|e| CMonError::Malformed(e.to_string()))?, id_obs.clone())
        .map_err(|e| CMonError::Malformed(e.to_string()))?;
    model.unitors.insert("x".into(), unitor);
    let composite = span.compose(&span).map_err(|e| CMonError::Malformed(e.to_string()))?;
    let table = pair_positions(&span, &span).into_iter().map(|(f, g)| c.compose[&(f, g)]).collect();
    let laxator = SpanMorphism::new(composite.clone(), span.clone(), id_obs.clone(), FinFunction::new(composite.apex().clone(), mor.clone(), table).map_err(|e| CMonError::Malformed(e.to_string()))?, id_obs.clone())
        .map_err(|e| CMonError::Malformed(e.to_string()))?;
    model.set_laxator(ProWord::Id(x()), ProWord::Id(x()), laxator);

    let build = |model: &ModelData| -> TheoryResult<(SpanMorphism, SpanMorphism)> {
        let ev = model.evaluator();
        let pair = ev.product(local(2).as_prod().expect("product word"))?;
        let sums = (0..pair.span.apex().len())
            .map(|e| c.plus[&(pair.projections[0].on_apex().apply(e), pair.projections[1].on_apex().apply(e))])
            .collect();
        let mu = SpanMorphism::new(pair.span.clone(), span.clone(), id_obs.clone(), FinFunction::new(pair.span.apex().clone(), mor.clone(), sums)?, id_obs.clone())?;
        let top = ev.pro_normal(&local(0))?;
        let zeros = (0..top.apex().len()).map(|e| c.zero[top.left().apply(e)][top.right().apply(e)]).collect();
        let eta = SpanMorphism::new(top.clone(), span.clone(), id_obs.clone(), FinFunction::new(top.apex().clone(), mor.clone(), zeros)?, id_obs.clone())?;
        Ok((mu, eta))
    };
    let (mu, eta) = build(&model).map_err(|e| CMonError::Malformed(e.to_string()))?;
    model.cells.insert("mu".into(), mu);
    model.cells.insert("eta".into(), eta);
    Ok(model)
}

/// Reads a CMon-enriched category off a model of local commutative
/// monoids: morphisms are the apex of the identity span, composition the
/// laxator, identities the unitor, sums `μ` and zeros `η`.
pub fn model_to_cmon_category(model: &ModelData) -> TheoryResult<CMonCategory> {
    let ev = model.evaluator();
    let objects = ev.ob(&x())?;
    let span = ev.pro(&ProWord::Id(x()))?;
    let morphisms = span.apex().clone();
    let unitor = ev.unitor(&x())?;
    let laxator = ev.laxator(&ProWord::Id(x()), &ProWord::Id(x()))?;
    let cell = |name: &str| model.cells.get(name).cloned().ok_or_else(|| TheoryError::MissingTableEntry(format!("cell `{name}`")));
    let (mu, eta) = (cell("mu")?, cell("eta")?);
    let pair = ev.product(local(2).as_prod().expect("product word"))?;
    let top = ev.pro_normal(&local(0))?;

    let compose = pair_positions(&span, &span)
        .into_iter()
        .enumerate()
        .map(|(k, fg)| (fg, laxator.on_apex().apply(k)))
        .collect();
    let plus = (0..pair.span.apex().len())
        .map(|e| ((pair.projections[0].on_apex().apply(e), pair.projections[1].on_apex().apply(e)), mu.on_apex().apply(e)))
        .collect();
    let n = objects.len();
    let mut zero = vec![vec![0; n]; n];
    for e in 0..top.apex().len() {
        zero[top.left().apply(e)][top.right().apply(e)] = eta.on_apex().apply(e);
    }
    let c = CMonCategory {
        objects,
        morphisms,
        src: span.left().table().to_vec(),
        dst: span.right().table().to_vec(),
        identity: unitor.on_apex().table().to_vec(),
        zero,
        plus,
        compose,
    };
    c.validate().map_err(conversion)?;
    Ok(c)
}

/// Commutative monoid tables on `0..s` with unit `0`.
fn sum_tables(s: usize) -> Vec<Vec<Vec<usize>>> {
    let free: Vec<(usize, usize)> = (1..s).flat_map(|i| (i..s).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut choice = vec![0; free.len()];
    loop {
        let mut t = vec![vec![0; s]; s];
        for i in 0..s {
            t[0][i] = i;
            t[i][0] = i;
        }
        for (&(i, j), &v) in free.iter().zip(&choice) {
            t[i][j] = v;
            t[j][i] = v;
        }
        let assoc = (0..s).all(|a| (0..s).all(|b| (0..s).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
        if assoc {
            out.push(t);
        }
        if !advance(&mut choice, s) {
            return out;
        }
    }
}

/// Odometer step over `base`-ary digits; false after the last value.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

struct Skeleton {
    n: usize,
    /// Morphism indices of each hom, zero first and identity second.
    homs: Vec<Vec<Vec<usize>>>,
    src: Vec<usize>,
    dst: Vec<usize>,
    labels: Vec<String>,
}

impl Skeleton {
    fn new(n: usize, sizes: &[Vec<usize>]) -> Self {
        let mut homs = vec![vec![Vec::new(); n]; n];
        let (mut src, mut dst, mut labels) = (Vec::new(), Vec::new(), Vec::new());
        for a in 0..n {
            for b in 0..n {
                for k in 0..sizes[a][b] {
                    homs[a][b].push(src.len());
                    src.push(a);
                    dst.push(b);
                    labels.push(if n == 1 { k.to_string() } else { format!("{a}>{b}:{k}") });
                }
            }
        }
        Skeleton { n, homs, src, dst, labels }
    }

    fn identity(&self, a: usize) -> usize {
        let h = &self.homs[a][a];
        h[if h.len() > 1 { 1 } else { 0 }]
    }

    fn zero(&self, a: usize, b: usize) -> usize {
        self.homs[a][b][0]
    }

    fn position(&self, f: usize) -> usize {
        self.homs[self.src[f]][self.dst[f]].iter().position(|&g| g == f).expect("member of its hom")
    }
}

/// Partial tables checked as far as they are filled.
fn consistent(sk: &Skeleton, plus: &BTreeMap<(usize, usize), usize>, comp: &BTreeMap<(usize, usize), usize>) -> bool {
    let nm = sk.src.len();
    let c = |f: usize, g: usize| comp.get(&(f, g)).copied();
    for f in 0..nm {
        for g in (0..nm).filter(|&g| sk.src[g] == sk.dst[f]) {
            let Some(fg) = c(f, g) else { continue };
            for h in (0..nm).filter(|&h| sk.src[h] == sk.dst[g]) {
                if let (Some(l), Some(gh)) = (c(fg, h), c(g, h)) {
                    if let Some(r) = c(f, gh) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
    }
    for h in 0..nm {
        let b = sk.dst[h];
        for cc in 0..sk.n {
            let hom = &sk.homs[b][cc];
            for &f in hom {
                for &g in hom {
                    let s = plus[&(f, g)];
                    let Some(hs) = c(h, s) else { continue };
                    let (Some(hf), Some(hg)) = (c(h, f), c(h, g)) else { continue };
                    for k in (0..nm).filter(|&k| sk.src[k] == cc) {
                        let (Some(l), Some(a), Some(bb)) = (c(hs, k), c(hf, k), c(hg, k)) else { continue };
                        if l != plus[&(a, bb)] {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn search(
    sk: &Skeleton,
    plus: &BTreeMap<(usize, usize), usize>,
    comp: &mut BTreeMap<(usize, usize), usize>,
    free: &[(usize, usize)],
    out: &mut Vec<CMonCategory>,
) {
    let Some((&(f, g), rest)) = free.split_first() else {
        let c = CMonCategory {
            objects: FinSet::range(sk.n),
            morphisms: FinSet::new(sk.labels.iter().map(String::as_str)).expect("distinct labels"),
            src: sk.src.clone(),
            dst: sk.dst.clone(),
            identity: (0..sk.n).map(|a| sk.identity(a)).collect(),
            zero: (0..sk.n).map(|a| (0..sk.n).map(|b| sk.zero(a, b)).collect()).collect(),
            plus: plus.clone(),
            compose: comp.clone(),
        };
        if c.validate().is_ok() {
            out.push(c);
        }
        return;
    };
    for &v in &sk.homs[sk.src[f]][sk.dst[g]] {
        comp.insert((f, g), v);
        if consistent(sk, plus, comp) {
            search(sk, plus, comp, rest, out);
        }
    }
    comp.remove(&(f, g));
}

/// All CMon-enriched categories on objects `0..objects` with every hom of
/// size between 1 and `max_hom`, up to relabeling each hom so that its zero
/// comes first and, in endomorphism homs with more than one element, the
/// identity second.
pub fn enumerate_cmon_categories(objects: usize, max_hom: usize) -> Vec<CMonCategory> {
    let n = objects;
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut size_digits = vec![0; cells.len()];
    loop {
        let mut sizes = vec![vec![0; n]; n];
        for (&(a, b), &d) in cells.iter().zip(&size_digits) {
            sizes[a][b] = d + 1;
        }
        enumerate_with_sizes(n, &sizes, &cells, &mut out);
        if !advance(&mut size_digits, max_hom) {
            return out;
        }
    }
}

fn enumerate_with_sizes(n: usize, sizes: &[Vec<usize>], cells: &[(usize, usize)], out: &mut Vec<CMonCategory>) {
    let sk = Skeleton::new(n, sizes);
    let mut forced = BTreeMap::new();
    let mut free = Vec::new();
    for f in 0..sk.src.len() {
        for g in (0..sk.src.len()).filter(|&g| sk.src[g] == sk.dst[f]) {
            let (a, c) = (sk.src[f], sk.dst[g]);
            let mut values = Vec::new();
            if f == sk.zero(a, sk.dst[f]) || g == sk.zero(sk.src[g], c) {
                values.push(sk.zero(a, c));
            }
            if f == sk.identity(a) {
                values.push(g);
            }
            if g == sk.identity(c) {
                values.push(f);
            }
            match values.first() {
                None => free.push((f, g)),
                Some(&v) if values.iter().all(|&w| w == v) => {
                    forced.insert((f, g), v);
                }
                Some(_) => return,
            }
        }
    }
    let tables: Vec<Vec<Vec<Vec<usize>>>> = cells.iter().map(|&(a, b)| sum_tables(sizes[a][b])).collect();
    let mut choice = vec![0; cells.len()];
    loop {
        let mut plus = BTreeMap::new();
        for (k, &(a, b)) in cells.iter().enumerate() {
            let t = &tables[k][choice[k]];
            for &f in &sk.homs[a][b] {
                for &g in &sk.homs[a][b] {
                    plus.insert((f, g), sk.homs[a][b][t[sk.position(f)][sk.position(g)]]);
                }
            }
        }
        let mut comp = forced.clone();
        if consistent(&sk, &plus, &comp) {
            search(&sk, &plus, &mut comp, &free, out);
        }
        let mut k = 0;
        loop {
            if k == cells.len() {
                return;
            }
            choice[k] += 1;
            if choice[k] < tables[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
