//! Entry payloads as they appear in documents. Positions that take a set,
//! function, span, family, theory or model accept either the name of an
//! entry of that kind or the payload inline.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use serde::de::value::{MapAccessDeserializer, SeqAccessDeserializer};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::theory::{ObWord, ProWord, TheoryPresentation, Verdict};

/// An entry name or an inline payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ref<T> {
    Name(String),
    Inline(T),
}

impl<T: Serialize> Serialize for Ref<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ref::Name(n) => s.serialize_str(n),
            Ref::Inline(t) => t.serialize(s),
        }
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Ref<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Ref<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an entry name or an inline value")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Ref<T>, E> {
                Ok(Ref::Name(v.to_string()))
            }

            fn visit_string<E: de::Error>(self, v: String) -> Result<Ref<T>, E> {
                Ok(Ref::Name(v))
            }

            fn visit_map<A: de::MapAccess<'de>>(self, a: A) -> Result<Ref<T>, A::Error> {
                T::deserialize(MapAccessDeserializer::new(a)).map(Ref::Inline)
            }

            fn visit_seq<A: de::SeqAccess<'de>>(self, a: A) -> Result<Ref<T>, A::Error> {
                T::deserialize(SeqAccessDeserializer::new(a)).map(Ref::Inline)
            }
        }
        d.deserialize_any(V(PhantomData))
    }
}

/// Elements of a set, as labels.
pub type SetRef = Ref<Vec<String>>;
pub type FunctionRef = Ref<FunctionBody>;
pub type SpanRef = Ref<SpanBody>;
pub type FamilyObjectRef = Ref<FamilyObjectBody>;
pub type TheoryRef = Ref<TheoryPresentation>;
pub type ModelRef = Ref<Box<ModelBody>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinSetBody {
    pub elements: Vec<String>,
}

/// A function listed as the images of the domain elements in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionBody {
    pub dom: SetRef,
    pub cod: SetRef,
    pub map: Vec<String>,
}

/// A span given by its two legs, which share their domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanBody {
    pub left: FunctionRef,
    pub right: FunctionRef,
}

/// A map of spans; `left`, `apex` and `right` list images in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellBody {
    pub src: SpanRef,
    pub dst: SpanRef,
    pub left: Vec<String>,
    pub apex: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyObjectBody {
    pub indexing: SetRef,
    /// One set per index, in the order of the indexing set.
    pub assignment: Vec<SetRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyProarrowBody {
    pub src: FamilyObjectRef,
    pub dst: FamilyObjectRef,
    pub indexing: SpanRef,
    /// One span per apex element of the indexing span.
    pub components: Vec<SpanRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeBody {
    pub word: ProWord,
    pub span: SpanRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaxatorBody {
    pub left: ProWord,
    pub right: ProWord,
    pub cell: CellBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductBody {
    pub word: ProWord,
    pub span: SpanRef,
    pub projections: Vec<CellBody>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelBody {
    pub theory: TheoryRef,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, SetRef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arrows: BTreeMap<String, FunctionRef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, SpanRef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub proarrows: BTreeMap<String, SpanRef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub composites: Vec<CompositeBody>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cells: BTreeMap<String, CellBody>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arrow_cells: BTreeMap<String, CellBody>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub laxators: Vec<LaxatorBody>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub unitors: BTreeMap<String, CellBody>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<ProductBody>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProarrowComponentBody {
    pub word: ProWord,
    pub cell: CellBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectOverrideBody {
    pub word: ObWord,
    pub function: FunctionRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationBody {
    pub source: ModelRef,
    pub target: ModelRef,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, FunctionRef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub proarrows: Vec<ProarrowComponentBody>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arrows: BTreeMap<String, CellBody>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<ObjectOverrideBody>,
}

/// One failed case of a check.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Failure {
    pub check: String,
    pub instance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub verdict: Verdict,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    /// A report whose verdict is `fail` exactly when there are failures.
    pub fn new(cases: usize, mut failures: Vec<Failure>) -> Self {
        failures.sort();
        let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
        Report { verdict, cases, failures }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Entry {
    Finset(FinSetBody),
    Function(FunctionBody),
    Span(SpanBody),
    FamilyObject(FamilyObjectBody),
    FamilyProarrow(FamilyProarrowBody),
    Theory(TheoryPresentation),
    Model(Box<ModelBody>),
    Transformation(Box<TransformationBody>),
    Report(Report),
}

impl Entry {
    pub fn kind(&self) -> &'static str {
        match self {
            Entry::Finset(_) => "finset",
            Entry::Function(_) => "function",
            Entry::Span(_) => "span",
            Entry::FamilyObject(_) => "family-object",
            Entry::FamilyProarrow(_) => "family-proarrow",
            Entry::Theory(_) => "theory",
            Entry::Model(_) => "model",
            Entry::Transformation(_) => "transformation",
            Entry::Report(_) => "report",
        }
    }
}
