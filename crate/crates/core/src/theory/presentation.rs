use serde::{Deserialize, Serialize};

use super::words::{ArrWord, CellWord, ObWord, ProWord};
use super::{TheoryError, TheoryResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowGenerator {
    pub name: String,
    pub src: ObWord,
    pub dst: ObWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProarrowGenerator {
    pub name: String,
    pub src: ObWord,
    pub dst: ObWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellGenerator {
    pub name: String,
    pub top: ProWord,
    pub bottom: ProWord,
    pub left: ArrWord,
    pub right: ArrWord,
}

/// An equation between parallel cell words. Names of the form
/// `family.case` group several equations into one family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub name: String,
    pub lhs: CellWord,
    pub rhs: CellWord,
}

impl Equation {
    pub fn family(&self) -> &str {
        self.name.split('.').next().unwrap_or(&self.name)
    }
}

/// Generators and equations of a finite-product double theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryPresentation {
    pub name: String,
    pub objects: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowGenerator>,
    #[serde(default)]
    pub proarrows: Vec<ProarrowGenerator>,
    #[serde(default)]
    pub cells: Vec<CellGenerator>,
    #[serde(default)]
    pub equations: Vec<Equation>,
}

impl TheoryPresentation {
    pub fn arrow(&self, name: &str) -> Option<&ArrowGenerator> {
        self.arrows.iter().find(|g| g.name == name)
    }

    pub fn proarrow(&self, name: &str) -> Option<&ProarrowGenerator> {
        self.proarrows.iter().find(|g| g.name == name)
    }

    pub fn cell(&self, name: &str) -> Option<&CellGenerator> {
        self.cells.iter().find(|g| g.name == name)
    }

    pub fn equation_families(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for e in &self.equations {
            if !out.contains(&e.family()) {
                out.push(e.family());
            }
        }
        out
    }

    /// Checks that names are distinct, every frame is well typed and every
    /// equation relates parallel words.
    pub fn validate(&self) -> TheoryResult<()> {
        let mut names: Vec<&str> = self.objects.iter().map(String::as_str).collect();
        names.extend(self.arrows.iter().map(|g| g.name.as_str()));
        names.extend(self.proarrows.iter().map(|g| g.name.as_str()));
        names.extend(self.cells.iter().map(|g| g.name.as_str()));
        let mut sorted = names.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(TheoryError::IllTypedWord(format!("generator name `{}` is used twice", w[0])));
        }
        for g in &self.arrows {
            self.arr_frame(&ArrWord::Id(g.src.clone()))?;
            self.arr_frame(&ArrWord::Id(g.dst.clone()))?;
        }
        for g in &self.proarrows {
            self.arr_frame(&ArrWord::Id(g.src.clone()))?;
            self.arr_frame(&ArrWord::Id(g.dst.clone()))?;
        }
        for g in &self.cells {
            self.cell_frame(&CellWord::Gen(g.name.clone()))?;
        }
        for e in &self.equations {
            let (l, r) = (self.cell_frame(&e.lhs)?, self.cell_frame(&e.rhs)?);
            if l != r {
                return Err(TheoryError::IllTypedWord(format!("equation `{}` relates cells with different frames", e.name)));
            }
        }
        Ok(())
    }
}

/// The theory of local commutative monoids: one object `x`, a
/// multiplication `μ : id ∧ id => id` and a unit `η : ⊤ => id`, subject to
/// associativity, unitality and commutativity.
pub fn builtin_lc_mon_theory() -> TheoryPresentation {
    let x = ObWord::gen("x");
    let id = ProWord::Id(x.clone());
    let meet = |k: usize| ProWord::local_product(x.clone(), x.clone(), vec![id.clone(); k]);
    let top = ProWord::local_product(x.clone(), x.clone(), vec![]);
    let (id2, id3) = (meet(2), meet(3));
    let mu = CellWord::gen("mu");
    let eta = CellWord::gen("eta");
    let pair = |top: &ProWord, components: Vec<CellWord>| CellWord::globular_pair(&x, top.clone(), id2.clone(), components);
    let p3 = |k| CellWord::proj(id3.clone(), k);

    let left_first = pair(&id3, vec![pair(&id3, vec![p3(0), p3(1)]).vert(mu.clone()), p3(2)]);
    let right_first = pair(&id3, vec![p3(0), pair(&id3, vec![p3(1), p3(2)]).vert(mu.clone())]);
    let top_id = ProWord::local_product(x.clone(), x.clone(), vec![top.clone(), id.clone()]);
    let id_top = ProWord::local_product(x.clone(), x.clone(), vec![id.clone(), top.clone()]);
    let swap = pair(&id2, vec![CellWord::proj(id2.clone(), 1), CellWord::proj(id2.clone(), 0)]);

    let globular = |name: &str, top: ProWord| CellGenerator {
        name: name.into(),
        top,
        bottom: id.clone(),
        left: ArrWord::Id(x.clone()),
        right: ArrWord::Id(x.clone()),
    };
    TheoryPresentation {
        name: "lcMon".into(),
        objects: vec!["x".into()],
        arrows: vec![],
        proarrows: vec![],
        cells: vec![globular("mu", id2.clone()), globular("eta", top)],
        equations: vec![
            Equation {
                name: "associativity".into(),
                lhs: left_first.vert(mu.clone()),
                rhs: right_first.vert(mu.clone()),
            },
            Equation {
                name: "unitality.left".into(),
                lhs: pair(&top_id, vec![CellWord::proj(top_id.clone(), 0).vert(eta.clone()), CellWord::proj(top_id.clone(), 1)]).vert(mu.clone()),
                rhs: CellWord::proj(top_id.clone(), 1),
            },
            Equation {
                name: "unitality.right".into(),
                lhs: pair(&id_top, vec![CellWord::proj(id_top.clone(), 0), CellWord::proj(id_top.clone(), 1).vert(eta)]).vert(mu.clone()),
                rhs: CellWord::proj(id_top.clone(), 0),
            },
            Equation {
                name: "commutativity".into(),
                lhs: swap.vert(mu.clone()),
                rhs: mu,
            },
        ],
    }
}
