//! Finite sets with opaque string labels, total functions between them,
//! spans, pullbacks, (co)products and limits of finite diagrams.
//!
//! Constructed sets carry canonical structured labels: `pair(a,b)` for
//! pullbacks, `inj(i,e)` for coproducts and `tup(e1,...,ek)` for products and
//! limits. Rebuilding the same construction gives the same value.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

/// An element label.
pub type Label = Arc<str>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinSetError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("codomain {0} does not match domain {1}")]
    CodDomMismatch(String, String),
    #[error("codomains {0} and {1} differ")]
    CodMismatch(String, String),
    #[error("`{0}` is not an element of {1}")]
    UnknownLabel(String, String),
    #[error("function table has {got} entries but the domain has {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("malformed diagram: {0}")]
    Diagram(String),
}

pub type Result<T> = std::result::Result<T, FinSetError>;

struct Inner {
    elems: Vec<Label>,
    index: OnceLock<HashMap<Label, usize>>,
}

/// A finite set: an ordered list of distinct labels.
///
/// Equality compares the label lists, so two independently built copies of the
/// same construction are equal.
#[derive(Clone)]
pub struct FinSet(Arc<Inner>);

impl FinSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Label>,
    {
        let elems: Vec<Label> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::with_capacity(elems.len());
        for e in &elems {
            if !seen.insert(e.clone()) {
                return Err(FinSetError::DuplicateLabel(e.to_string()));
            }
        }
        Ok(Self::from_distinct(elems))
    }

    /// Builds a set from labels the caller knows to be distinct.
    pub(crate) fn from_distinct(elems: Vec<Label>) -> Self {
        debug_assert!({
            let s: std::collections::HashSet<_> = elems.iter().collect();
            s.len() == elems.len()
        });
        FinSet(Arc::new(Inner {
            elems,
            index: OnceLock::new(),
        }))
    }

    pub fn empty() -> Self {
        Self::from_distinct(Vec::new())
    }

    pub fn singleton(label: &str) -> Self {
        Self::from_distinct(vec![Label::from(label)])
    }

    /// `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        Self::from_distinct((0..n).map(|i| Label::from(i.to_string())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn elements(&self) -> &[Label] {
        &self.0.elems
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.0.elems[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        if self.len() <= 16 {
            return self.0.elems.iter().position(|e| &**e == label);
        }
        let map = self.0.index.get_or_init(|| {
            self.0
                .elems
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), i))
                .collect()
        });
        map.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| FinSetError::UnknownLabel(label.to_string(), format!("{self:?}")))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    pub fn ptr_eq(&self, other: &FinSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other) || self.0.elems == other.0.elems
    }
}
impl Eq for FinSet {}

impl Hash for FinSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.elems.hash(state)
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

pub fn pair_label(a: &str, b: &str) -> Label {
    Label::from(format!("pair({a},{b})"))
}

pub fn inj_label(tag: &str, e: &str) -> Label {
    Label::from(format!("inj({tag},{e})"))
}

pub fn tup_label<S: AsRef<str>>(parts: &[S]) -> Label {
    let mut s = String::from("tup(");
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(p.as_ref());
    }
    s.push(')');
    Label::from(s)
}

/// A total function between finite sets, stored as an index table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFunction {
    dom: FinSet,
    cod: FinSet,
    table: Arc<[usize]>,
}

impl FinFunction {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(FinSetError::TableLength {
                expected: dom.len(),
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&j| j >= cod.len()) {
            return Err(FinSetError::UnknownLabel(bad.to_string(), format!("{cod:?}")));
        }
        Ok(FinFunction {
            dom,
            cod,
            table: table.into(),
        })
    }

    pub(crate) fn new_unchecked(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Self {
        debug_assert!(table.len() == dom.len() && table.iter().all(|&j| j < cod.len()));
        FinFunction {
            dom,
            cod,
            table: table.into(),
        }
    }

    /// Builds a function from the image labels, listed in domain order.
    pub fn from_labels<S: AsRef<str>>(dom: FinSet, cod: FinSet, images: &[S]) -> Result<Self> {
        let table = images
            .iter()
            .map(|s| cod.require(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dom, cod, table)
    }

    pub fn from_fn(dom: FinSet, cod: FinSet, f: impl Fn(usize) -> usize) -> Self {
        let table = (0..dom.len()).map(f).collect();
        Self::new_unchecked(dom, cod, table)
    }

    pub fn identity(set: &FinSet) -> Self {
        Self::new_unchecked(set.clone(), set.clone(), (0..set.len()).collect())
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply_label(&self, label: &str) -> Option<&Label> {
        self.dom.index_of(label).map(|i| self.cod.label(self.table[i]))
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &FinFunction) -> Result<FinFunction> {
        compose_fn(self, g)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &j in self.table.iter() {
            if hit[j] {
                return false;
            }
            hit[j] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &j in self.table.iter() {
            hit[j] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijection(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFunction> {
        if !self.is_bijection() {
            return None;
        }
        let mut inv = vec![0; self.cod.len()];
        for (i, &j) in self.table.iter().enumerate() {
            inv[j] = i;
        }
        Some(Self::new_unchecked(self.cod.clone(), self.dom.clone(), inv))
    }

    /// All functions `dom -> cod` in lexicographic order of their tables.
    pub fn all(dom: &FinSet, cod: &FinSet) -> Vec<FinFunction> {
        let (n, m) = (dom.len(), cod.len());
        if n > 0 && m == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut t = vec![0usize; n];
        loop {
            out.push(Self::new_unchecked(dom.clone(), cod.clone(), t.clone()));
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                t[k] += 1;
                if t[k] < m {
                    break;
                }
                t[k] = 0;
            }
        }
    }
}

impl fmt::Debug for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &j) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", self.dom.label(i), self.cod.label(j))?;
        }
        write!(f, "]")
    }
}

/// Diagrammatic composite: first `f`, then `g`.
pub fn compose_fn(f: &FinFunction, g: &FinFunction) -> Result<FinFunction> {
    if f.cod != g.dom {
        return Err(FinSetError::CodDomMismatch(
            format!("{:?}", f.cod),
            format!("{:?}", g.dom),
        ));
    }
    let table = f.table.iter().map(|&j| g.table[j]).collect();
    Ok(FinFunction::new_unchecked(f.dom.clone(), g.cod.clone(), table))
}

/// A pullback square's apex and its two projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    pub set: FinSet,
    pub p1: FinFunction,
    pub p2: FinFunction,
    /// Index pairs `(a, b)` in the order of `set`.
    pub pairs: Vec<(usize, usize)>,
}

/// Pullback of `f: A -> C` and `g: B -> C`, labeled `pair(a,b)` in
/// lexicographic order of positions.
pub fn pullback(f: &FinFunction, g: &FinFunction) -> Result<Pullback> {
    if f.cod != g.cod {
        return Err(FinSetError::CodMismatch(
            format!("{:?}", f.cod),
            format!("{:?}", g.cod),
        ));
    }
    let mut fiber: Vec<Vec<usize>> = vec![Vec::new(); g.cod.len()];
    for (b, &c) in g.table.iter().enumerate() {
        fiber[c].push(b);
    }
    let mut pairs = Vec::new();
    for (a, &c) in f.table.iter().enumerate() {
        for &b in &fiber[c] {
            pairs.push((a, b));
        }
    }
    let labels = pairs
        .iter()
        .map(|&(a, b)| pair_label(f.dom.label(a), g.dom.label(b)))
        .collect();
    let set = FinSet::from_distinct(labels);
    let p1 = FinFunction::new_unchecked(set.clone(), f.dom.clone(), pairs.iter().map(|p| p.0).collect());
    let p2 = FinFunction::new_unchecked(set.clone(), g.dom.clone(), pairs.iter().map(|p| p.1).collect());
    Ok(Pullback { set, p1, p2, pairs })
}

/// Disjoint union with labels `inj(tag_k, e)`.
pub fn tagged_union<S: AsRef<str>>(tags: &[S], sets: &[FinSet]) -> (FinSet, Vec<FinFunction>) {
    assert_eq!(tags.len(), sets.len());
    let mut labels = Vec::new();
    let mut offsets = Vec::with_capacity(sets.len());
    for (t, s) in tags.iter().zip(sets) {
        offsets.push(labels.len());
        labels.extend(s.elements().iter().map(|e| inj_label(t.as_ref(), e)));
    }
    let union = FinSet::from_distinct(labels);
    let injections = sets
        .iter()
        .zip(offsets)
        .map(|(s, off)| FinFunction::from_fn(s.clone(), union.clone(), |i| off + i))
        .collect();
    (union, injections)
}

/// Coproduct with labels `inj(k, e)` where `k` is the summand's position.
pub fn coproduct_sets(family: &[FinSet]) -> (FinSet, Vec<FinFunction>) {
    let tags: Vec<String> = (0..family.len()).map(|k| k.to_string()).collect();
    tagged_union(&tags, family)
}

/// Cartesian product with labels `tup(e1,...,ek)`, first factor slowest.
/// The empty family gives the singleton `{tup()}`.
pub fn product_sets(family: &[FinSet]) -> (FinSet, Vec<FinFunction>) {
    let tuples = product_indices(&family.iter().map(FinSet::len).collect::<Vec<_>>());
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().enumerate().map(|(k, &i)| &*family[k].elements()[i]).collect();
            tup_label(&parts)
        })
        .collect();
    let set = FinSet::from_distinct(labels);
    let projections = family
        .iter()
        .enumerate()
        .map(|(k, s)| FinFunction::new_unchecked(set.clone(), s.clone(), tuples.iter().map(|t| t[k]).collect()))
        .collect();
    (set, projections)
}

/// All index tuples of a product of sets with the given sizes, in
/// lexicographic order.
pub fn product_indices(sizes: &[usize]) -> Vec<Vec<usize>> {
    if sizes.contains(&0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut t = vec![0usize; sizes.len()];
    loop {
        out.push(t.clone());
        let mut k = sizes.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < sizes[k] {
                break;
            }
            t[k] = 0;
        }
    }
}

/// Copairing out of the canonical coproduct of the domains.
pub fn copair_fns(fns: &[FinFunction]) -> Result<FinFunction> {
    let Some(first) = fns.first() else {
        return Err(FinSetError::FrameMismatch(
            "copairing of an empty family needs an explicit codomain; use copair_fns_into".into(),
        ));
    };
    copair_fns_into(first.cod(), fns)
}

pub fn copair_fns_into(cod: &FinSet, fns: &[FinFunction]) -> Result<FinFunction> {
    if let Some(f) = fns.iter().find(|f| f.cod() != cod) {
        return Err(FinSetError::CodMismatch(format!("{:?}", f.cod()), format!("{cod:?}")));
    }
    let doms: Vec<FinSet> = fns.iter().map(|f| f.dom().clone()).collect();
    let (sum, _) = coproduct_sets(&doms);
    let table = fns.iter().flat_map(|f| f.table().iter().copied()).collect();
    Ok(FinFunction::new_unchecked(sum, cod.clone(), table))
}

/// Pairing into the canonical product of the codomains.
pub fn pair_fns(dom: &FinSet, fns: &[FinFunction]) -> Result<FinFunction> {
    if let Some(f) = fns.iter().find(|f| f.dom() != dom) {
        return Err(FinSetError::FrameMismatch(format!(
            "pairing expects domain {dom:?}, found {:?}",
            f.dom()
        )));
    }
    let cods: Vec<FinSet> = fns.iter().map(|f| f.cod().clone()).collect();
    let (prod, _) = product_sets(&cods);
    let sizes: Vec<usize> = cods.iter().map(FinSet::len).collect();
    let table = (0..dom.len())
        .map(|i| {
            fns.iter()
                .zip(&sizes)
                .fold(0usize, |acc, (f, &n)| acc * n + f.apply(i))
        })
        .collect();
    Ok(FinFunction::new_unchecked(dom.clone(), prod, table))
}

/// Why a mediating map could not be produced.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("no factorization at element `{0}`")]
    NoSolution(String),
    #[error("{count} factorizations at element `{at}`")]
    NotUnique { at: String, count: usize },
    #[error(transparent)]
    Frame(#[from] FinSetError),
}

/// The unique `h: dom -> apex` with `h ; legs[k] = fns[k]` for every `k`, for
/// an arbitrary cone `(apex, legs)`.
pub fn factor_through_cone(
    apex: &FinSet,
    legs: &[FinFunction],
    dom: &FinSet,
    fns: &[FinFunction],
) -> std::result::Result<FinFunction, FactorError> {
    if legs.len() != fns.len() {
        return Err(FinSetError::FrameMismatch("cone and test family differ in length".into()).into());
    }
    for (l, f) in legs.iter().zip(fns) {
        if l.dom() != apex || f.dom() != dom || l.cod() != f.cod() {
            return Err(FinSetError::FrameMismatch("cone leg and test map disagree".into()).into());
        }
    }
    let mut by_sig: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for p in 0..apex.len() {
        by_sig.entry(legs.iter().map(|l| l.apply(p)).collect()).or_default().push(p);
    }
    let mut table = Vec::with_capacity(dom.len());
    for e in 0..dom.len() {
        let sig: Vec<usize> = fns.iter().map(|f| f.apply(e)).collect();
        match by_sig.get(&sig).map(Vec::as_slice) {
            Some([p]) => table.push(*p),
            Some(ps) if ps.len() > 1 => {
                return Err(FactorError::NotUnique {
                    at: dom.label(e).to_string(),
                    count: ps.len(),
                })
            }
            _ => return Err(FactorError::NoSolution(dom.label(e).to_string())),
        }
    }
    Ok(FinFunction::new_unchecked(dom.clone(), apex.clone(), table))
}

/// The unique `h: apex -> cod` with `injections[k] ; h = fns[k]`, for an
/// arbitrary cocone.
pub fn factor_through_cocone(
    apex: &FinSet,
    injections: &[FinFunction],
    cod: &FinSet,
    fns: &[FinFunction],
) -> std::result::Result<FinFunction, FactorError> {
    if injections.len() != fns.len() {
        return Err(FinSetError::FrameMismatch("cocone and test family differ in length".into()).into());
    }
    let mut table: Vec<Option<usize>> = vec![None; apex.len()];
    for (inj, f) in injections.iter().zip(fns) {
        if inj.cod() != apex || f.cod() != cod || inj.dom() != f.dom() {
            return Err(FinSetError::FrameMismatch("cocone leg and test map disagree".into()).into());
        }
        for s in 0..inj.dom().len() {
            let p = inj.apply(s);
            match table[p] {
                None => table[p] = Some(f.apply(s)),
                Some(v) if v == f.apply(s) => {}
                Some(_) => return Err(FactorError::NoSolution(apex.label(p).to_string())),
            }
        }
    }
    let mut out = Vec::with_capacity(apex.len());
    for (p, v) in table.into_iter().enumerate() {
        match v {
            Some(v) => out.push(v),
            None if cod.len() == 1 => out.push(0),
            None => {
                return Err(if cod.is_empty() {
                    FactorError::NoSolution(apex.label(p).to_string())
                } else {
                    FactorError::NotUnique {
                        at: apex.label(p).to_string(),
                        count: cod.len(),
                    }
                })
            }
        }
    }
    Ok(FinFunction::new_unchecked(apex.clone(), cod.clone(), out))
}

/// A span `left_foot <- apex -> right_foot`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetSpan {
    left: FinFunction,
    right: FinFunction,
}

impl SetSpan {
    pub fn new(left: FinFunction, right: FinFunction) -> Result<Self> {
        if left.dom() != right.dom() {
            return Err(FinSetError::FrameMismatch(format!(
                "span legs have different domains {:?} and {:?}",
                left.dom(),
                right.dom()
            )));
        }
        Ok(SetSpan { left, right })
    }

    pub fn identity(set: &FinSet) -> Self {
        let id = FinFunction::identity(set);
        SetSpan {
            left: id.clone(),
            right: id,
        }
    }

    /// `dom = dom -f-> cod`.
    pub fn companion(f: &FinFunction) -> Self {
        SetSpan {
            left: FinFunction::identity(f.dom()),
            right: f.clone(),
        }
    }

    /// `cod <-f- dom = dom`.
    pub fn conjoint(f: &FinFunction) -> Self {
        SetSpan {
            left: f.clone(),
            right: FinFunction::identity(f.dom()),
        }
    }

    pub fn apex(&self) -> &FinSet {
        self.left.dom()
    }

    pub fn left_foot(&self) -> &FinSet {
        self.left.cod()
    }

    pub fn right_foot(&self) -> &FinSet {
        self.right.cod()
    }

    pub fn left(&self) -> &FinFunction {
        &self.left
    }

    pub fn right(&self) -> &FinFunction {
        &self.right
    }

    /// The span with its legs swapped.
    pub fn reversed(&self) -> Self {
        SetSpan {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }

    /// Composite by pullback over the shared foot, apex labeled `pair(s,t)`.
    pub fn compose(&self, other: &SetSpan) -> Result<SetSpan> {
        if self.right_foot() != other.left_foot() {
            return Err(FinSetError::FrameMismatch(format!(
                "spans not composable: {:?} vs {:?}",
                self.right_foot(),
                other.left_foot()
            )));
        }
        let pb = pullback(&self.right, &other.left)?;
        Ok(SetSpan {
            left: compose_fn(&pb.p1, &self.left)?,
            right: compose_fn(&pb.p2, &other.right)?,
        })
    }

    /// All spans `x <- s -> y` with apex `{0..k-1}`, `k <= max_apex`.
    ///
    /// With `up_to_iso`, only spans whose sequence of leg images is
    /// non-decreasing are produced: one representative per isomorphism class.
    pub fn all_between(x: &FinSet, y: &FinSet, max_apex: usize, up_to_iso: bool) -> Vec<SetSpan> {
        let cells = x.len() * y.len();
        let mut out = Vec::new();
        for k in 0..=max_apex {
            if k > 0 && cells == 0 {
                break;
            }
            let apex = FinSet::range(k);
            let mut seq = vec![0usize; k];
            loop {
                let ok = !up_to_iso || seq.windows(2).all(|w| w[0] <= w[1]);
                if ok {
                    let l = seq.iter().map(|&c| c / y.len().max(1)).collect();
                    let r = seq.iter().map(|&c| c % y.len().max(1)).collect();
                    out.push(SetSpan {
                        left: FinFunction::new_unchecked(apex.clone(), x.clone(), l),
                        right: FinFunction::new_unchecked(apex.clone(), y.clone(), r),
                    });
                }
                let mut i = k;
                let done = loop {
                    if i == 0 {
                        break true;
                    }
                    i -= 1;
                    seq[i] += 1;
                    if seq[i] < cells {
                        if up_to_iso {
                            for j in i + 1..k {
                                seq[j] = seq[i];
                            }
                        }
                        break false;
                    }
                    seq[i] = 0;
                };
                if done {
                    break;
                }
            }
        }
        out
    }
}

impl fmt::Debug for SetSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} <- {:?} -> {:?}; l={:?}; r={:?}", self.left_foot(), self.apex(), self.right_foot(), self.left, self.right)
    }
}

/// A map of spans `(on_left, on_apex, on_right)` with both squares commuting.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpanMorphism {
    src: SetSpan,
    dst: SetSpan,
    on_left: FinFunction,
    on_apex: FinFunction,
    on_right: FinFunction,
}

impl SpanMorphism {
    pub fn new(
        src: SetSpan,
        dst: SetSpan,
        on_left: FinFunction,
        on_apex: FinFunction,
        on_right: FinFunction,
    ) -> Result<Self> {
        let frame_ok = on_left.dom() == src.left_foot()
            && on_left.cod() == dst.left_foot()
            && on_right.dom() == src.right_foot()
            && on_right.cod() == dst.right_foot()
            && on_apex.dom() == src.apex()
            && on_apex.cod() == dst.apex();
        if !frame_ok {
            return Err(FinSetError::FrameMismatch("span morphism endpoints".into()));
        }
        let m = SpanMorphism {
            src,
            dst,
            on_left,
            on_apex,
            on_right,
        };
        if let Some(s) = m.first_noncommuting() {
            return Err(FinSetError::FrameMismatch(format!(
                "square does not commute at apex element `{}`",
                m.src.apex().label(s)
            )));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        src: SetSpan,
        dst: SetSpan,
        on_left: FinFunction,
        on_apex: FinFunction,
        on_right: FinFunction,
    ) -> Self {
        let m = SpanMorphism {
            src,
            dst,
            on_left,
            on_apex,
            on_right,
        };
        debug_assert!(m.first_noncommuting().is_none());
        m
    }

    fn first_noncommuting(&self) -> Option<usize> {
        (0..self.src.apex().len()).find(|&s| {
            let t = self.on_apex.apply(s);
            self.dst.left().apply(t) != self.on_left.apply(self.src.left().apply(s))
                || self.dst.right().apply(t) != self.on_right.apply(self.src.right().apply(s))
        })
    }

    pub fn identity(span: &SetSpan) -> Self {
        SpanMorphism {
            src: span.clone(),
            dst: span.clone(),
            on_left: FinFunction::identity(span.left_foot()),
            on_apex: FinFunction::identity(span.apex()),
            on_right: FinFunction::identity(span.right_foot()),
        }
    }

    pub fn src(&self) -> &SetSpan {
        &self.src
    }

    pub fn dst(&self) -> &SetSpan {
        &self.dst
    }

    pub fn on_left(&self) -> &FinFunction {
        &self.on_left
    }

    pub fn on_apex(&self) -> &FinFunction {
        &self.on_apex
    }

    pub fn on_right(&self) -> &FinFunction {
        &self.on_right
    }

    /// Vertical composite: `self` then `next`.
    pub fn then(&self, next: &SpanMorphism) -> Result<SpanMorphism> {
        if self.dst != next.src {
            return Err(FinSetError::FrameMismatch("vertical composite: middle spans differ".into()));
        }
        Ok(SpanMorphism {
            src: self.src.clone(),
            dst: next.dst.clone(),
            on_left: compose_fn(&self.on_left, &next.on_left)?,
            on_apex: compose_fn(&self.on_apex, &next.on_apex)?,
            on_right: compose_fn(&self.on_right, &next.on_right)?,
        })
    }

    /// External composite along the shared arrow: `pair(s,t) ↦ pair(α(s), β(t))`.
    pub fn beside(&self, other: &SpanMorphism) -> Result<SpanMorphism> {
        if self.on_right != other.on_left {
            return Err(FinSetError::FrameMismatch("external composite: shared arrows differ".into()));
        }
        let src = self.src.compose(&other.src)?;
        let dst = self.dst.compose(&other.dst)?;
        let pb_src = pullback(self.src.right(), other.src.left())?;
        let pb_dst = pullback(self.dst.right(), other.dst.left())?;
        let index: HashMap<(usize, usize), usize> =
            pb_dst.pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let table = pb_src
            .pairs
            .iter()
            .map(|&(s, t)| index[&(self.on_apex.apply(s), other.on_apex.apply(t))])
            .collect();
        Ok(SpanMorphism {
            on_apex: FinFunction::new_unchecked(src.apex().clone(), dst.apex().clone(), table),
            src,
            dst,
            on_left: self.on_left.clone(),
            on_right: other.on_right.clone(),
        })
    }

    /// The inverse when all three components are bijections.
    pub fn inverse(&self) -> Option<SpanMorphism> {
        Some(SpanMorphism {
            src: self.dst.clone(),
            dst: self.src.clone(),
            on_left: self.on_left.inverse()?,
            on_apex: self.on_apex.inverse()?,
            on_right: self.on_right.inverse()?,
        })
    }

    pub fn is_iso(&self) -> bool {
        self.on_left.is_bijection() && self.on_apex.is_bijection() && self.on_right.is_bijection()
    }

    /// All morphisms `src -> dst` over the given foot maps.
    pub fn all_in_frame(src: &SetSpan, dst: &SetSpan, on_left: &FinFunction, on_right: &FinFunction) -> Vec<SpanMorphism> {
        let Some(cands) = apex_candidates(src, dst, on_left, on_right) else {
            return Vec::new();
        };
        let sizes: Vec<usize> = cands.iter().map(Vec::len).collect();
        product_indices(&sizes)
            .into_iter()
            .map(|choice| {
                let table = choice.iter().enumerate().map(|(s, &c)| cands[s][c]).collect();
                SpanMorphism {
                    src: src.clone(),
                    dst: dst.clone(),
                    on_left: on_left.clone(),
                    on_apex: FinFunction::new_unchecked(src.apex().clone(), dst.apex().clone(), table),
                    on_right: on_right.clone(),
                }
            })
            .collect()
    }
}

/// For each source apex element, the target apex elements compatible with the
/// foot maps. `None` if the foot maps do not fit the spans.
pub(crate) fn apex_candidates(
    src: &SetSpan,
    dst: &SetSpan,
    on_left: &FinFunction,
    on_right: &FinFunction,
) -> Option<Vec<Vec<usize>>> {
    if on_left.dom() != src.left_foot()
        || on_left.cod() != dst.left_foot()
        || on_right.dom() != src.right_foot()
        || on_right.cod() != dst.right_foot()
    {
        return None;
    }
    let ny = dst.right_foot().len();
    let mut by_feet: HashMap<usize, Vec<usize>> = HashMap::new();
    for t in 0..dst.apex().len() {
        by_feet
            .entry(dst.left().apply(t) * ny + dst.right().apply(t))
            .or_default()
            .push(t);
    }
    Some(
        (0..src.apex().len())
            .map(|s| {
                let key = on_left.apply(src.left().apply(s)) * ny + on_right.apply(src.right().apply(s));
                by_feet.get(&key).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

impl fmt::Debug for SpanMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?} => {:?}; left={:?}; apex={:?}; right={:?})",
            self.src.apex(),
            self.dst.apex(),
            self.on_left,
            self.on_apex,
            self.on_right
        )
    }
}

/// A generator of a free diagram shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeGenerator {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A relation between two generator paths starting at `src`; an empty path is
/// the identity on `src`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeRelation {
    pub src: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramShape {
    pub objects: FinSet,
    pub generators: Vec<ShapeGenerator>,
    pub relations: Vec<ShapeRelation>,
}

impl DiagramShape {
    fn path_end(&self, src: usize, path: &[usize]) -> Result<usize> {
        let mut at = src;
        for &g in path {
            let gen = self
                .generators
                .get(g)
                .ok_or_else(|| FinSetError::Diagram(format!("unknown generator {g}")))?;
            if gen.src != at {
                return Err(FinSetError::Diagram(format!("path not composable at `{}`", gen.name)));
            }
            at = gen.dst;
        }
        Ok(at)
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            if g.src >= self.objects.len() || g.dst >= self.objects.len() {
                return Err(FinSetError::Diagram(format!("generator `{}` leaves the shape", g.name)));
            }
        }
        for r in &self.relations {
            if self.path_end(r.src, &r.lhs)? != self.path_end(r.src, &r.rhs)? {
                return Err(FinSetError::Diagram("relation paths are not parallel".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetDiagram {
    pub shape: DiagramShape,
    pub on_objects: Vec<FinSet>,
    pub on_generators: Vec<FinFunction>,
}

impl SetDiagram {
    pub fn new(shape: DiagramShape, on_objects: Vec<FinSet>, on_generators: Vec<FinFunction>) -> Result<Self> {
        shape.validate()?;
        if on_objects.len() != shape.objects.len() || on_generators.len() != shape.generators.len() {
            return Err(FinSetError::Diagram("assignment sizes do not match the shape".into()));
        }
        for (g, f) in shape.generators.iter().zip(&on_generators) {
            if f.dom() != &on_objects[g.src] || f.cod() != &on_objects[g.dst] {
                return Err(FinSetError::Diagram(format!("generator `{}` has the wrong endpoints", g.name)));
            }
        }
        let d = SetDiagram {
            shape,
            on_objects,
            on_generators,
        };
        for r in &d.shape.relations {
            for e in 0..d.on_objects[r.src].len() {
                if d.eval_path(&r.lhs, e) != d.eval_path(&r.rhs, e) {
                    return Err(FinSetError::Diagram("relation does not hold".into()));
                }
            }
        }
        Ok(d)
    }

    fn eval_path(&self, path: &[usize], e: usize) -> usize {
        path.iter().fold(e, |x, &g| self.on_generators[g].apply(x))
    }
}

/// Limit of a finite diagram of sets: the tuples of the product of all object
/// sets compatible with every generator and relation, in product order.
pub fn limit_of_diagram(d: &SetDiagram) -> (FinSet, Vec<FinFunction>) {
    let n = d.on_objects.len();
    // Generators checked when their later endpoint is assigned.
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, g) in d.shape.generators.iter().enumerate() {
        checks[g.src.max(g.dst)].push(k);
    }
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize; n];
    fn go(d: &SetDiagram, checks: &[Vec<usize>], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            let rel_ok = d.shape.relations.iter().all(|r| {
                let e = cur[r.src];
                d.eval_path(&r.lhs, e) == d.eval_path(&r.rhs, e)
            });
            if rel_ok {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..d.on_objects[k].len() {
            cur[k] = e;
            let ok = checks[k].iter().all(|&g| {
                let gen = &d.shape.generators[g];
                d.on_generators[g].apply(cur[gen.src]) == cur[gen.dst]
            });
            if ok {
                go(d, checks, k + 1, cur, out);
            }
        }
    }
    go(d, &checks, 0, &mut cur, &mut tuples);
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().enumerate().map(|(k, &i)| &*d.on_objects[k].elements()[i]).collect();
            tup_label(&parts)
        })
        .collect();
    let set = FinSet::from_distinct(labels);
    let legs = d
        .on_objects
        .iter()
        .enumerate()
        .map(|(k, s)| FinFunction::new_unchecked(set.clone(), s.clone(), tuples.iter().map(|t| t[k]).collect()))
        .collect();
    (set, legs)
}

/// The category of elements of a span viewed as a copresheaf on the walking
/// span: objects `src(i)`, `apex(a)`, `dst(j)`; generators `l(a)` and `r(a)`.
pub fn elements_of_span_copresheaf(span: &SetSpan) -> DiagramShape {
    elements_of_span_chain(&[span])
}

/// Same for a composable chain of spans, e.g. the walking composable pair.
/// Objects are the elements of the feet `foot0(..)`, `foot1(..)`, ... and of the
/// apexes `apex0(..)`, ... interleaved in chain order.
pub fn elements_of_span_chain(chain: &[&SetSpan]) -> DiagramShape {
    let single = chain.len() == 1;
    let foot_tag = |k: usize, last: bool| -> String {
        if single {
            if k == 0 { "src".into() } else { "dst".into() }
        } else if k == 0 {
            "src".into()
        } else if last {
            "dst".into()
        } else {
            format!("mid{k}")
        }
    };
    let apex_tag = |k: usize| -> String {
        if single { "apex".into() } else { format!("apex{k}") }
    };
    let mut labels: Vec<Label> = Vec::new();
    let mut generators = Vec::new();
    let mut foot_offset = 0;
    for (k, span) in chain.iter().enumerate() {
        if k == 0 {
            let t = foot_tag(0, false);
            labels.extend(span.left_foot().elements().iter().map(|e| Label::from(format!("{t}({e})"))));
        }
        let apex_offset = labels.len();
        let t = apex_tag(k);
        labels.extend(span.apex().elements().iter().map(|e| Label::from(format!("{t}({e})"))));
        let right_offset = labels.len();
        let t = foot_tag(k + 1, k + 1 == chain.len());
        labels.extend(span.right_foot().elements().iter().map(|e| Label::from(format!("{t}({e})"))));
        for (a, e) in span.apex().elements().iter().enumerate() {
            generators.push(ShapeGenerator {
                name: format!("l{}({e})", if single { String::new() } else { k.to_string() }),
                src: apex_offset + a,
                dst: foot_offset + span.left().apply(a),
            });
            generators.push(ShapeGenerator {
                name: format!("r{}({e})", if single { String::new() } else { k.to_string() }),
                src: apex_offset + a,
                dst: right_offset + span.right().apply(a),
            });
        }
        foot_offset = right_offset;
    }
    DiagramShape {
        objects: FinSet::from_distinct(labels),
        generators,
        relations: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> FinSet {
        FinSet::new(xs.iter().copied()).unwrap()
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(matches!(FinSet::new(["a", "a"]), Err(FinSetError::DuplicateLabel(_))));
    }

    #[test]
    fn compose_examples() {
        let ab = set(&["a", "b"]);
        let two = FinSet::range(2);
        let pq = set(&["p", "q"]);
        let f = FinFunction::from_labels(ab.clone(), two.clone(), &["0", "0"]).unwrap();
        let g = FinFunction::from_labels(two.clone(), pq.clone(), &["q", "p"]).unwrap();
        let h = compose_fn(&f, &g).unwrap();
        assert_eq!(h, FinFunction::from_labels(ab.clone(), pq, &["q", "q"]).unwrap());
        assert!(compose_fn(&g, &f).is_err());
        let id = FinFunction::identity(&two);
        assert_eq!(compose_fn(&id, &id).unwrap(), id);
    }

    #[test]
    fn pullback_example() {
        let f = FinFunction::from_labels(set(&["a", "b"]), FinSet::range(2), &["0", "1"]).unwrap();
        let g = FinFunction::from_labels(set(&["c", "d"]), FinSet::range(2), &["0", "0"]).unwrap();
        let pb = pullback(&f, &g).unwrap();
        assert_eq!(pb.set, set(&["pair(a,c)", "pair(a,d)"]));
        let empty = FinFunction::new(FinSet::empty(), FinSet::range(2), vec![]).unwrap();
        assert!(pullback(&f, &empty).unwrap().set.is_empty());
    }

    #[test]
    fn products_and_coproducts() {
        let (p, proj) = product_sets(&[]);
        assert_eq!(p, set(&["tup()"]));
        assert!(proj.is_empty());
        let (p, _) = product_sets(&[set(&["a", "b"]), set(&["u", "v", "w"])]);
        assert_eq!(p.len(), 6);
        assert_eq!(&**p.label(1), "tup(a,v)");
        let (s, inj) = coproduct_sets(&[set(&["a"]), set(&["u", "v"])]);
        assert_eq!(s, set(&["inj(0,a)", "inj(1,u)", "inj(1,v)"]));
        assert_eq!(inj[1].table(), &[1, 2]);
    }

    #[test]
    fn pairing_and_copairing() {
        let z = set(&["z"]);
        let s = set(&["s", "t"]);
        let to_z = FinFunction::from_fn(s.clone(), z.clone(), |_| 0);
        let c = copair_fns(&[to_z.clone(), to_z.clone()]).unwrap();
        assert_eq!(c.dom().len(), 4);
        assert!(c.table().iter().all(|&j| j == 0));
        let p = pair_fns(&s, &[]).unwrap();
        assert_eq!(p.cod(), &set(&["tup()"]));
    }

    #[test]
    fn bijections() {
        let two = FinSet::range(2);
        let swap = FinFunction::new(two.clone(), two.clone(), vec![1, 0]).unwrap();
        assert!(swap.is_bijection());
        let c = FinFunction::new(set(&["a", "b"]), set(&["0"]), vec![0, 0]).unwrap();
        assert!(!c.is_bijection());
        assert_eq!(swap.inverse().unwrap(), swap);
    }

    #[test]
    fn limit_of_cospan_matches_pullback() {
        let f = FinFunction::from_labels(set(&["a", "b"]), FinSet::range(2), &["0", "1"]).unwrap();
        let g = FinFunction::from_labels(set(&["c", "d"]), FinSet::range(2), &["0", "0"]).unwrap();
        let shape = DiagramShape {
            objects: set(&["A", "C", "B"]),
            generators: vec![
                ShapeGenerator { name: "f".into(), src: 0, dst: 1 },
                ShapeGenerator { name: "g".into(), src: 2, dst: 1 },
            ],
            relations: vec![],
        };
        let d = SetDiagram::new(shape, vec![f.dom().clone(), f.cod().clone(), g.dom().clone()], vec![f.clone(), g.clone()]).unwrap();
        let (lim, legs) = limit_of_diagram(&d);
        let pb = pullback(&f, &g).unwrap();
        assert_eq!(lim.len(), pb.set.len());
        for k in 0..lim.len() {
            assert_eq!((legs[0].apply(k), legs[2].apply(k)), pb.pairs[k]);
        }
    }

    #[test]
    fn elements_shape_counts() {
        let one = FinSet::range(1);
        let s = SetSpan::new(
            FinFunction::from_fn(FinSet::range(2), one.clone(), |_| 0),
            FinFunction::from_fn(FinSet::range(2), one.clone(), |_| 0),
        )
        .unwrap();
        let shape = elements_of_span_copresheaf(&s);
        assert_eq!(shape.objects.len(), 4);
        assert_eq!(shape.generators.len(), 4);
        let e = SetSpan::new(
            FinFunction::new(FinSet::empty(), one.clone(), vec![]).unwrap(),
            FinFunction::new(FinSet::empty(), one.clone(), vec![]).unwrap(),
        )
        .unwrap();
        let shape = elements_of_span_copresheaf(&e);
        assert_eq!((shape.objects.len(), shape.generators.len()), (2, 0));
    }

    #[test]
    fn span_enumeration_counts() {
        let two = FinSet::range(2);
        // Multisets of size <= 2 over 4 foot pairs: 1 + 4 + 10.
        assert_eq!(SetSpan::all_between(&two, &two, 2, true).len(), 15);
        assert_eq!(SetSpan::all_between(&two, &two, 2, false).len(), 1 + 4 + 16);
        assert_eq!(SetSpan::all_between(&FinSet::empty(), &two, 3, true).len(), 1);
    }
}
