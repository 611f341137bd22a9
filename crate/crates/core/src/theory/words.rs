//! Formal words for objects, arrows, proarrows and cells of a finite-product
//! double theory, with normal forms for the strict structure.

use serde::{Deserialize, Serialize};

use super::{TheoryError, TheoryResult, TheoryPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObWord {
    Gen(String),
    /// A finite product; the product of one factor is that factor.
    Prod(Vec<ObWord>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrWord {
    Id(ObWord),
    Gen(String),
    /// `f` then `g`.
    Then(Box<ArrWord>, Box<ArrWord>),
    Proj { factors: Vec<ObWord>, index: usize },
    Pair { src: ObWord, components: Vec<ArrWord> },
    /// `Π(σ) : Πx -> Π σ*x`, with `map[j] = σ(j)`.
    Structure { factors: Vec<ObWord>, map: Vec<usize> },
}

/// A product of proarrow words over the indexing span
/// `src <- members -> dst`, given by the `left` and `right` index maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProdWord {
    pub src: Vec<ObWord>,
    pub dst: Vec<ObWord>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub members: Vec<ProWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProWord {
    Id(ObWord),
    Gen(String),
    Then(Box<ProWord>, Box<ProWord>),
    Prod(ProdWord),
    /// Companion of a structure arrow (or of a projection or identity).
    Companion(ArrWord),
    Conjoint(ArrWord),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellWord {
    Gen(String),
    IdPro(ProWord),
    IdArr(ArrWord),
    /// `a` on top of `b`.
    Vert(Box<CellWord>, Box<CellWord>),
    /// `a` to the left of `b`.
    Ext(Box<CellWord>, Box<CellWord>),
    /// The projection `Πm => m_member` of a product word.
    Proj { product: ProWord, member: usize },
    /// The unique cell into a product word whose composite with each
    /// projection is the given component.
    Pair {
        top: ProWord,
        bottom: ProWord,
        left: ArrWord,
        right: ArrWord,
        components: Vec<CellWord>,
    },
}

/// A cell frame on normalized words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub top: ProWord,
    pub bottom: ProWord,
    pub left: ArrWord,
    pub right: ArrWord,
}

impl ObWord {
    pub fn gen(name: &str) -> Self {
        ObWord::Gen(name.to_string())
    }
}

impl ArrWord {
    pub fn id(x: ObWord) -> Self {
        ArrWord::Id(x)
    }

    pub fn then(self, g: ArrWord) -> Self {
        ArrWord::Then(Box::new(self), Box::new(g))
    }
}

impl ProWord {
    pub fn id(x: ObWord) -> Self {
        ProWord::Id(x)
    }

    pub fn gen(name: &str) -> Self {
        ProWord::Gen(name.to_string())
    }

    pub fn then(self, q: ProWord) -> Self {
        ProWord::Then(Box::new(self), Box::new(q))
    }

    /// The local product of words `x ⇸ y` over `1 <- k -> 1`.
    pub fn local_product(x: ObWord, y: ObWord, members: Vec<ProWord>) -> Self {
        let k = members.len();
        ProWord::Prod(ProdWord {
            src: vec![x],
            dst: vec![y],
            left: vec![0; k],
            right: vec![0; k],
            members,
        })
    }

    pub fn as_prod(&self) -> Option<&ProdWord> {
        match self {
            ProWord::Prod(p) => Some(p),
            _ => None,
        }
    }
}

impl CellWord {
    pub fn gen(name: &str) -> Self {
        CellWord::Gen(name.to_string())
    }

    pub fn vert(self, b: CellWord) -> Self {
        CellWord::Vert(Box::new(self), Box::new(b))
    }

    pub fn ext(self, b: CellWord) -> Self {
        CellWord::Ext(Box::new(self), Box::new(b))
    }

    pub fn proj(product: ProWord, member: usize) -> Self {
        CellWord::Proj { product, member }
    }

    /// A pair of components into `bottom` with identity sides on `x`.
    pub fn globular_pair(x: &ObWord, top: ProWord, bottom: ProWord, components: Vec<CellWord>) -> Self {
        CellWord::Pair {
            top,
            bottom,
            left: ArrWord::Id(x.clone()),
            right: ArrWord::Id(x.clone()),
            components,
        }
    }
}

impl ProdWord {
    pub fn is_unary(&self) -> bool {
        self.src.len() == 1 && self.dst.len() == 1 && self.members.len() == 1
    }

    pub(crate) fn wrap(p: ProWord, src: ObWord, dst: ObWord) -> ProdWord {
        ProdWord {
            src: vec![src],
            dst: vec![dst],
            left: vec![0],
            right: vec![0],
            members: vec![p],
        }
    }
}

fn ill(msg: impl Into<String>) -> TheoryError {
    TheoryError::IllTypedWord(msg.into())
}

pub fn normalize_ob(x: &ObWord) -> ObWord {
    match x {
        ObWord::Gen(_) => x.clone(),
        ObWord::Prod(xs) if xs.len() == 1 => normalize_ob(&xs[0]),
        ObWord::Prod(xs) => ObWord::Prod(xs.iter().map(normalize_ob).collect()),
    }
}

fn structure_as_pair(factors: &[ObWord], map: &[usize]) -> ArrWord {
    ArrWord::Pair {
        src: ObWord::Prod(factors.to_vec()),
        components: map
            .iter()
            .map(|&j| ArrWord::Proj {
                factors: factors.to_vec(),
                index: j,
            })
            .collect(),
    }
}

impl TheoryPresentation {
    fn check_ob(&self, x: &ObWord) -> TheoryResult<()> {
        match x {
            ObWord::Gen(n) if self.objects.contains(n) => Ok(()),
            ObWord::Gen(n) => Err(ill(format!("unknown object generator `{n}`"))),
            ObWord::Prod(xs) => xs.iter().try_for_each(|x| self.check_ob(x)),
        }
    }

    /// Source and target of an arrow word, normalized.
    pub fn arr_frame(&self, f: &ArrWord) -> TheoryResult<(ObWord, ObWord)> {
        let (s, t) = match f {
            ArrWord::Id(x) => {
                self.check_ob(x)?;
                (x.clone(), x.clone())
            }
            ArrWord::Gen(n) => {
                let g = self.arrow(n).ok_or_else(|| ill(format!("unknown arrow generator `{n}`")))?;
                (g.src.clone(), g.dst.clone())
            }
            ArrWord::Then(f, g) => {
                let (s, m) = self.arr_frame(f)?;
                let (m2, t) = self.arr_frame(g)?;
                if m != m2 {
                    return Err(ill(format!("arrows not composable: {m:?} vs {m2:?}")));
                }
                (s, t)
            }
            ArrWord::Proj { factors, index } => {
                self.check_ob(&ObWord::Prod(factors.clone()))?;
                let t = factors.get(*index).ok_or_else(|| ill(format!("projection {index} out of range")))?;
                (ObWord::Prod(factors.clone()), t.clone())
            }
            ArrWord::Pair { src, components } => {
                self.check_ob(src)?;
                let s = normalize_ob(src);
                let mut ts = Vec::with_capacity(components.len());
                for c in components {
                    let (cs, ct) = self.arr_frame(c)?;
                    if cs != s {
                        return Err(ill(format!("pairing component starts at {cs:?}, expected {s:?}")));
                    }
                    ts.push(ct);
                }
                (src.clone(), ObWord::Prod(ts))
            }
            ArrWord::Structure { factors, map } => {
                self.check_ob(&ObWord::Prod(factors.clone()))?;
                if let Some(&j) = map.iter().find(|&&j| j >= factors.len()) {
                    return Err(ill(format!("structure map index {j} out of range")));
                }
                (ObWord::Prod(factors.clone()), ObWord::Prod(map.iter().map(|&j| factors[j].clone()).collect()))
            }
        };
        Ok((normalize_ob(&s), normalize_ob(&t)))
    }

    /// Normal form of an arrow word: identities dropped, composites
    /// right-nested, unary products and pairings collapsed, and structure
    /// arrows written as pairings of projections.
    pub fn normalize_arr(&self, f: &ArrWord) -> TheoryResult<ArrWord> {
        let (s, _) = self.arr_frame(f)?;
        let mut chain = Vec::new();
        self.flatten_arr(f, &mut chain)?;
        Ok(match chain.len() {
            0 => ArrWord::Id(s),
            _ => {
                let mut it = chain.into_iter().rev();
                let last = it.next().expect("nonempty chain");
                it.fold(last, |acc, g| ArrWord::Then(Box::new(g), Box::new(acc)))
            }
        })
    }

    fn flatten_arr(&self, f: &ArrWord, out: &mut Vec<ArrWord>) -> TheoryResult<()> {
        match f {
            ArrWord::Id(_) => {}
            ArrWord::Gen(_) => out.push(f.clone()),
            ArrWord::Then(a, b) => {
                self.flatten_arr(a, out)?;
                self.flatten_arr(b, out)?;
            }
            ArrWord::Proj { factors, index } => {
                if factors.len() != 1 {
                    out.push(ArrWord::Proj {
                        factors: factors.iter().map(normalize_ob).collect(),
                        index: *index,
                    });
                }
            }
            ArrWord::Pair { src, components } => {
                if components.len() == 1 {
                    self.flatten_arr(&components[0], out)?;
                } else {
                    let components = components.iter().map(|c| self.normalize_arr(c)).collect::<TheoryResult<Vec<_>>>()?;
                    out.push(ArrWord::Pair {
                        src: normalize_ob(src),
                        components,
                    });
                }
            }
            ArrWord::Structure { factors, map } => self.flatten_arr(&structure_as_pair(factors, map), out)?,
        }
        Ok(())
    }

    /// Source and target of a proarrow word, normalized.
    pub fn pro_frame(&self, p: &ProWord) -> TheoryResult<(ObWord, ObWord)> {
        let (s, t) = match p {
            ProWord::Id(x) => {
                self.check_ob(x)?;
                (x.clone(), x.clone())
            }
            ProWord::Gen(n) => {
                let g = self.proarrow(n).ok_or_else(|| ill(format!("unknown proarrow generator `{n}`")))?;
                (g.src.clone(), g.dst.clone())
            }
            ProWord::Then(a, b) => {
                let (s, m) = self.pro_frame(a)?;
                let (m2, t) = self.pro_frame(b)?;
                if m != m2 {
                    return Err(ill(format!("proarrows not composable: {m:?} vs {m2:?}")));
                }
                (s, t)
            }
            ProWord::Prod(w) => {
                self.check_ob(&ObWord::Prod(w.src.clone()))?;
                self.check_ob(&ObWord::Prod(w.dst.clone()))?;
                let k = w.members.len();
                if w.left.len() != k || w.right.len() != k {
                    return Err(ill("product word index maps do not match its members"));
                }
                for (a, m) in w.members.iter().enumerate() {
                    let (l, r) = (w.left[a], w.right[a]);
                    if l >= w.src.len() || r >= w.dst.len() {
                        return Err(ill(format!("product member {a} indexes out of range")));
                    }
                    let (ms, mt) = self.pro_frame(m)?;
                    if ms != normalize_ob(&w.src[l]) || mt != normalize_ob(&w.dst[r]) {
                        return Err(ill(format!("product member {a} has the wrong ends")));
                    }
                }
                (ObWord::Prod(w.src.clone()), ObWord::Prod(w.dst.clone()))
            }
            ProWord::Companion(f) => {
                self.binding_product(f, true)?;
                self.arr_frame(f)?
            }
            ProWord::Conjoint(f) => {
                self.binding_product(f, false)?;
                let (s, t) = self.arr_frame(f)?;
                (t, s)
            }
        };
        Ok((normalize_ob(&s), normalize_ob(&t)))
    }

    /// The product word presenting the companion (or conjoint) of a
    /// structure arrow.
    fn binding_product(&self, f: &ArrWord, companion: bool) -> TheoryResult<ProWord> {
        let (factors, map) = match f {
            ArrWord::Structure { factors, map } => (factors.clone(), map.clone()),
            ArrWord::Proj { factors, index } => (factors.clone(), vec![*index]),
            ArrWord::Id(x) => return Ok(ProWord::Id(x.clone())),
            _ => return Err(ill("companions and conjoints exist only for structure arrows")),
        };
        self.check_ob(&ObWord::Prod(factors.clone()))?;
        if map.iter().any(|&j| j >= factors.len()) {
            return Err(ill("structure map index out of range"));
        }
        let image: Vec<ObWord> = map.iter().map(|&j| factors[j].clone()).collect();
        let members = image.iter().map(|x| ProWord::Id(x.clone())).collect();
        let iota: Vec<usize> = (0..map.len()).collect();
        Ok(ProWord::Prod(if companion {
            ProdWord {
                src: factors,
                dst: image,
                left: map,
                right: iota,
                members,
            }
        } else {
            ProdWord {
                src: image,
                dst: factors,
                left: iota,
                right: map,
                members,
            }
        }))
    }

    /// Normal form of a proarrow word in the strict theory: identities are
    /// units, identities on products are products of identities, unary
    /// products are their member, and a composite involving a product is
    /// the product of the composites over the composite indexing span.
    /// Composites of generators are left-nested.
    pub fn normalize_pro(&self, p: &ProWord) -> TheoryResult<ProWord> {
        self.pro_frame(p)?;
        self.norm_pro(p)
    }

    fn norm_pro(&self, p: &ProWord) -> TheoryResult<ProWord> {
        Ok(match p {
            ProWord::Id(x) => match normalize_ob(x) {
                ObWord::Prod(xs) => {
                    let n = xs.len();
                    let members = xs.iter().map(|x| self.norm_pro(&ProWord::Id(x.clone()))).collect::<TheoryResult<Vec<_>>>()?;
                    ProWord::Prod(ProdWord {
                        src: xs.clone(),
                        dst: xs,
                        left: (0..n).collect(),
                        right: (0..n).collect(),
                        members,
                    })
                }
                g => ProWord::Id(g),
            },
            ProWord::Gen(_) => p.clone(),
            ProWord::Then(a, b) => {
                let (na, nb) = (self.norm_pro(a)?, self.norm_pro(b)?);
                self.compose_normal(na, nb)?
            }
            ProWord::Prod(w) => {
                let members = w.members.iter().map(|m| self.norm_pro(m)).collect::<TheoryResult<Vec<_>>>()?;
                let w = ProdWord {
                    src: w.src.iter().map(normalize_ob).collect(),
                    dst: w.dst.iter().map(normalize_ob).collect(),
                    left: w.left.clone(),
                    right: w.right.clone(),
                    members,
                };
                if w.is_unary() {
                    w.members.into_iter().next().expect("one member")
                } else {
                    ProWord::Prod(w)
                }
            }
            ProWord::Companion(f) => self.norm_pro(&self.binding_product(f, true)?)?,
            ProWord::Conjoint(f) => self.norm_pro(&self.binding_product(f, false)?)?,
        })
    }

    /// Composite of two normalized words.
    pub(crate) fn compose_normal(&self, a: ProWord, b: ProWord) -> TheoryResult<ProWord> {
        if matches!(a, ProWord::Id(_)) {
            return Ok(b);
        }
        if matches!(b, ProWord::Id(_)) {
            return Ok(a);
        }
        if a.as_prod().is_none() && b.as_prod().is_none() {
            let mut atoms = Vec::new();
            for w in [a, b] {
                flatten_then(w, &mut atoms);
            }
            let mut it = atoms.into_iter();
            let first = it.next().expect("two atoms");
            return Ok(it.fold(first, |acc, w| ProWord::Then(Box::new(acc), Box::new(w))));
        }
        let pa = self.as_family(a)?;
        let pb = self.as_family(b)?;
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut members = Vec::new();
        for s in 0..pa.members.len() {
            for t in 0..pb.members.len() {
                if pa.right[s] == pb.left[t] {
                    left.push(pa.left[s]);
                    right.push(pb.right[t]);
                    members.push(self.compose_normal(pa.members[s].clone(), pb.members[t].clone())?);
                }
            }
        }
        let w = ProdWord {
            src: pa.src,
            dst: pb.dst,
            left,
            right,
            members,
        };
        Ok(if w.is_unary() {
            w.members.into_iter().next().expect("one member")
        } else {
            ProWord::Prod(w)
        })
    }

    /// A normalized word as a family: products as themselves, anything else
    /// as a unary family.
    pub(crate) fn as_family(&self, p: ProWord) -> TheoryResult<ProdWord> {
        match p {
            ProWord::Prod(w) => Ok(w),
            other => {
                let (s, t) = self.pro_frame(&other)?;
                Ok(ProdWord::wrap(other, s, t))
            }
        }
    }

    /// The frame of a cell word, on normalized words.
    pub fn cell_frame(&self, c: &CellWord) -> TheoryResult<Frame> {
        match c {
            CellWord::Gen(n) => {
                let g = self.cell(n).ok_or_else(|| ill(format!("unknown cell generator `{n}`")))?;
                self.normal_frame(&g.top, &g.bottom, &g.left, &g.right)
            }
            CellWord::IdPro(p) => {
                let (s, t) = self.pro_frame(p)?;
                self.normal_frame(p, p, &ArrWord::Id(s), &ArrWord::Id(t))
            }
            CellWord::IdArr(f) => {
                let (s, t) = self.arr_frame(f)?;
                self.normal_frame(&ProWord::Id(s), &ProWord::Id(t), f, f)
            }
            CellWord::Vert(a, b) => {
                let (fa, fb) = (self.cell_frame(a)?, self.cell_frame(b)?);
                if fa.bottom != fb.top {
                    return Err(ill(format!("vertical composite mismatch: {:?} vs {:?}", fa.bottom, fb.top)));
                }
                Ok(Frame {
                    top: fa.top,
                    bottom: fb.bottom,
                    left: self.normalize_arr(&fa.left.then(fb.left))?,
                    right: self.normalize_arr(&fa.right.then(fb.right))?,
                })
            }
            CellWord::Ext(a, b) => {
                let (fa, fb) = (self.cell_frame(a)?, self.cell_frame(b)?);
                if fa.right != fb.left {
                    return Err(ill(format!("external composite mismatch: {:?} vs {:?}", fa.right, fb.left)));
                }
                Ok(Frame {
                    top: self.compose_normal(fa.top, fb.top)?,
                    bottom: self.compose_normal(fa.bottom, fb.bottom)?,
                    left: fa.left,
                    right: fb.right,
                })
            }
            CellWord::Proj { product, member } => {
                let w = self.as_family(self.normalize_pro(product)?)?;
                let m = w.members.get(*member).ok_or_else(|| ill(format!("projection {member} out of range")))?;
                let left = ArrWord::Proj {
                    factors: w.src.clone(),
                    index: w.left[*member],
                };
                let right = ArrWord::Proj {
                    factors: w.dst.clone(),
                    index: w.right[*member],
                };
                self.normal_frame(product, m, &left, &right)
            }
            CellWord::Pair {
                top,
                bottom,
                left,
                right,
                components,
            } => {
                let frame = self.normal_frame(top, bottom, left, right)?;
                let (ts, tt) = self.pro_frame(top)?;
                let (ls, lt) = self.arr_frame(left)?;
                let (rs, rt) = self.arr_frame(right)?;
                let (bs, bt) = self.pro_frame(bottom)?;
                if ls != ts || rs != tt || lt != bs || rt != bt {
                    return Err(ill("pairing sides do not fit its top and bottom"));
                }
                let w = self.as_family(frame.bottom.clone())?;
                if components.len() != w.members.len() {
                    return Err(ill(format!("pairing has {} components for {} members", components.len(), w.members.len())));
                }
                for (b, c) in components.iter().enumerate() {
                    let want = self.normal_frame(
                        top,
                        &w.members[b],
                        &left.clone().then(ArrWord::Proj {
                            factors: w.src.clone(),
                            index: w.left[b],
                        }),
                        &right.clone().then(ArrWord::Proj {
                            factors: w.dst.clone(),
                            index: w.right[b],
                        }),
                    )?;
                    if self.cell_frame(c)? != want {
                        return Err(ill(format!("pairing component {b} has the wrong frame")));
                    }
                }
                Ok(frame)
            }
        }
    }

    fn normal_frame(&self, top: &ProWord, bottom: &ProWord, left: &ArrWord, right: &ArrWord) -> TheoryResult<Frame> {
        let (ts, tt) = self.pro_frame(top)?;
        let (bs, bt) = self.pro_frame(bottom)?;
        let (ls, lt) = self.arr_frame(left)?;
        let (rs, rt) = self.arr_frame(right)?;
        if (ls, lt, rs, rt) != (ts, bs, tt, bt) {
            return Err(ill("cell sides do not connect its top and bottom"));
        }
        Ok(Frame {
            top: self.normalize_pro(top)?,
            bottom: self.normalize_pro(bottom)?,
            left: self.normalize_arr(left)?,
            right: self.normalize_arr(right)?,
        })
    }
}

fn flatten_then(w: ProWord, out: &mut Vec<ProWord>) {
    match w {
        ProWord::Then(a, b) => {
            flatten_then(*a, out);
            flatten_then(*b, out);
        }
        other => out.push(other),
    }
}
