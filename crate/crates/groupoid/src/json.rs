//! JSON documents for groupoids, homomorphisms, bibundles and Weinstein
//! structures. Everything is referenced by label.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bibundle::{Bibundle, GroupoidAction, Side};
use crate::groupoid::{Arr, Arrow, FiniteGroupoid, Obj};
use crate::hom::Homomorphism;
use crate::weinstein::WeinsteinGroupoid;
use crate::GroupoidError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    /// Triples `[a, b, a.b]`.
    pub mult: Vec<[String; 3]>,
    pub unit: BTreeMap<String, String>,
    pub inv: BTreeMap<String, String>,
}

fn lookup<T: Copy>(map: &HashMap<String, T>, label: &str) -> Result<T, GroupoidError> {
    map.get(label).copied().ok_or_else(|| GroupoidError::UnknownLabel(label.to_string()))
}

fn label_map(labels: impl IntoIterator<Item = String>) -> HashMap<String, usize> {
    labels.into_iter().enumerate().map(|(i, l)| (l, i)).collect()
}

fn objects_of(g: &FiniteGroupoid) -> HashMap<String, Obj> {
    label_map(g.objects().iter().cloned())
}

fn arrows_of(g: &FiniteGroupoid) -> HashMap<String, Arr> {
    label_map(g.arrows().iter().map(|a| a.label.clone()))
}

impl GroupoidDoc {
    pub fn to_groupoid(&self) -> Result<FiniteGroupoid, GroupoidError> {
        let obj = label_map(self.objects.iter().cloned());
        let arr = label_map(self.arrows.iter().map(|a| a.id.clone()));
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    label: a.id.clone(),
                    src: lookup(&obj, &a.src)?,
                    tgt: lookup(&obj, &a.tgt)?,
                })
            })
            .collect::<Result<Vec<_>, GroupoidError>>()?;
        let mult = self
            .mult
            .iter()
            .map(|[a, b, c]| Ok((lookup(&arr, a)?, lookup(&arr, b)?, lookup(&arr, c)?)))
            .collect::<Result<Vec<_>, GroupoidError>>()?;
        let unit = self
            .objects
            .iter()
            .map(|x| {
                let u = self
                    .unit
                    .get(x)
                    .ok_or_else(|| GroupoidError::Malformed(format!("no unit for {x}")))?;
                lookup(&arr, u)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let inv = self
            .arrows
            .iter()
            .map(|a| {
                let i = self
                    .inv
                    .get(&a.id)
                    .ok_or_else(|| GroupoidError::Malformed(format!("no inverse for {}", a.id)))?;
                lookup(&arr, i)
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteGroupoid::new(self.objects.clone(), arrows, mult, unit, inv)
    }

    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let n = g.num_arrows();
        let mult = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter_map(|(a, b)| {
                let c = g.mul(a, b)?;
                Some([g.label(a), g.label(b), g.label(c)].map(str::to_string))
            })
            .collect();
        Self {
            objects: g.objects().to_vec(),
            arrows: g
                .arrows()
                .iter()
                .map(|a| ArrowDoc {
                    id: a.label.clone(),
                    src: g.object_label(a.src).to_string(),
                    tgt: g.object_label(a.tgt).to_string(),
                })
                .collect(),
            mult,
            unit: (0..g.num_objects())
                .map(|x| (g.object_label(x).to_string(), g.label(g.unit(x)).to_string()))
                .collect(),
            inv: (0..n)
                .map(|a| (g.label(a).to_string(), g.label(g.inv(a)).to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomomorphismDoc {
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

impl HomomorphismDoc {
    pub fn to_homomorphism(&self, from: &FiniteGroupoid, to: &FiniteGroupoid) -> Result<Homomorphism, GroupoidError> {
        let to_obj = objects_of(to);
        let to_arr = arrows_of(to);
        let objects = from
            .objects()
            .iter()
            .map(|x| lookup(&to_obj, self.objects.get(x).ok_or_else(|| GroupoidError::UnknownLabel(x.clone()))?))
            .collect::<Result<Vec<_>, _>>()?;
        let arrows = from
            .arrows()
            .iter()
            .map(|a| {
                let image = self
                    .arrows
                    .get(&a.label)
                    .ok_or_else(|| GroupoidError::UnknownLabel(a.label.clone()))?;
                lookup(&to_arr, image)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Homomorphism::new(from, to, objects, arrows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BibundleDoc {
    pub left: GroupoidDoc,
    pub right: GroupoidDoc,
    pub elements: Vec<String>,
    pub left_moment: BTreeMap<String, String>,
    pub right_moment: BTreeMap<String, String>,
    /// Triples `[g, x, g.x]`.
    pub left_action: Vec<[String; 3]>,
    /// Triples `[x, h, x.h]`.
    pub right_action: Vec<[String; 3]>,
}

impl BibundleDoc {
    pub fn to_bibundle(&self) -> Result<Bibundle, GroupoidError> {
        let g = Arc::new(self.left.to_groupoid()?);
        let h = Arc::new(self.right.to_groupoid()?);
        let elem = label_map(self.elements.iter().cloned());
        let left = action(&g, Side::Left, &elem, &self.elements, &self.left_moment, &self.left_action, true)?;
        let right = action(&h, Side::Right, &elem, &self.elements, &self.right_moment, &self.right_action, false)?;
        Bibundle::new(g, h, self.elements.clone(), left, right)
    }

    pub fn from_bibundle(e: &Bibundle) -> Self {
        let (g, h) = (e.left_groupoid(), e.right_groupoid());
        let el = e.elements();
        let moment = |action: &GroupoidAction, gr: &FiniteGroupoid| {
            el.iter()
                .enumerate()
                .map(|(x, l)| (l.clone(), gr.object_label(action.moment()[x]).to_string()))
                .collect()
        };
        let mut left_action = Vec::new();
        let mut right_action = Vec::new();
        for x in 0..e.len() {
            for a in 0..g.num_arrows() {
                if let Some(y) = e.left_action().apply(x, a) {
                    left_action.push([g.label(a).to_string(), el[x].clone(), el[y].clone()]);
                }
            }
            for b in 0..h.num_arrows() {
                if let Some(y) = e.right_action().apply(x, b) {
                    right_action.push([el[x].clone(), h.label(b).to_string(), el[y].clone()]);
                }
            }
        }
        Self {
            left: GroupoidDoc::from_groupoid(g),
            right: GroupoidDoc::from_groupoid(h),
            elements: el.to_vec(),
            left_moment: moment(e.left_action(), g),
            right_moment: moment(e.right_action(), h),
            left_action,
            right_action,
        }
    }
}

fn action(
    g: &FiniteGroupoid,
    side: Side,
    elem: &HashMap<String, usize>,
    elements: &[String],
    moment: &BTreeMap<String, String>,
    table: &[[String; 3]],
    arrow_first: bool,
) -> Result<GroupoidAction, GroupoidError> {
    let obj = objects_of(g);
    let arr = arrows_of(g);
    let moment = elements
        .iter()
        .map(|e| {
            let j = moment
                .get(e)
                .ok_or_else(|| GroupoidError::BadAction(format!("no moment for {e}")))?;
            lookup(&obj, j)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut entries = HashMap::new();
    for row in table {
        let (a, x) = if arrow_first { (&row[0], &row[1]) } else { (&row[1], &row[0]) };
        entries.insert((lookup(elem, x)?, lookup(&arr, a)?), lookup(elem, &row[2])?);
    }
    for x in 0..elements.len() {
        for a in 0..g.num_arrows() {
            let defined = match side {
                Side::Left => g.src(a) == moment[x],
                Side::Right => g.tgt(a) == moment[x],
            };
            if defined && !entries.contains_key(&(x, a)) {
                return Err(GroupoidError::BadAction(format!(
                    "no entry for {} acting on {}",
                    g.label(a),
                    elements[x]
                )));
            }
        }
    }
    GroupoidAction::new(g, side, moment, |x, a| entries[&(x, a)])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeinsteinDoc {
    pub presentation: GroupoidDoc,
    pub base: Vec<String>,
    #[serde(default)]
    pub source: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub target: Option<BTreeMap<String, String>>,
    /// Triples `[a, b, m(a,b)]` over composable pairs of arrows.
    #[serde(default)]
    pub mult: Option<Vec<[String; 3]>>,
    /// Identity section, base point to object.
    #[serde(default)]
    pub unit: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub inverse: Option<BTreeMap<String, String>>,
    /// Rows `[x, y, z, alpha(x,y,z)]`.
    #[serde(default)]
    pub associator: Option<Vec<[String; 4]>>,
}

impl WeinsteinDoc {
    pub fn to_weinstein(&self) -> Result<WeinsteinGroupoid, GroupoidError> {
        let missing = |what: &str| GroupoidError::MissingStructure(what.to_string());
        let g = self.presentation.to_groupoid()?;
        let obj = objects_of(&g);
        let arr = arrows_of(&g);
        let base = label_map(self.base.iter().cloned());
        let base_map = |m: &Option<BTreeMap<String, String>>, what: &str| -> Result<Vec<usize>, GroupoidError> {
            let m = m.as_ref().ok_or_else(|| missing(what))?;
            g.objects()
                .iter()
                .map(|x| lookup(&base, m.get(x).ok_or_else(|| missing(what))?))
                .collect()
        };
        let source = base_map(&self.source, "source")?;
        let target = base_map(&self.target, "target")?;
        let unit_doc = self.unit.as_ref().ok_or_else(|| missing("unit"))?;
        let unit = self
            .base
            .iter()
            .map(|p| lookup(&obj, unit_doc.get(p).ok_or_else(|| missing("unit"))?))
            .collect::<Result<Vec<_>, _>>()?;
        let inv_doc = self.inverse.as_ref().ok_or_else(|| missing("inverse"))?;
        let inverse = g
            .arrows()
            .iter()
            .map(|a| lookup(&arr, inv_doc.get(&a.label).ok_or_else(|| missing("inverse"))?))
            .collect::<Result<Vec<_>, _>>()?;
        let mut mult = HashMap::new();
        for [a, b, c] in self.mult.as_ref().ok_or_else(|| missing("mult"))? {
            mult.insert((lookup(&arr, a)?, lookup(&arr, b)?), lookup(&arr, c)?);
        }
        for a in 0..g.num_arrows() {
            for b in 0..g.num_arrows() {
                if source[g.src(a)] == target[g.src(b)] && !mult.contains_key(&(a, b)) {
                    return Err(missing(&format!("mult on ({}, {})", g.label(a), g.label(b))));
                }
            }
        }
        let mut w = WeinsteinGroupoid::new(
            Arc::new(g.clone()),
            self.base.clone(),
            source,
            target,
            |a, b| mult[&(a, b)],
            unit,
            |a| inverse[a],
        )?;
        if let Some(rows) = &self.associator {
            let mut table = HashMap::new();
            for [x, y, z, a] in rows {
                table.insert((lookup(&obj, x)?, lookup(&obj, y)?, lookup(&obj, z)?), lookup(&arr, a)?);
            }
            for t in &w.triples.object_tuples {
                if !table.contains_key(&(t[0], t[1], t[2])) {
                    return Err(missing("associator on every composable triple"));
                }
            }
            w = w.with_associator(|x, y, z| table[&(x, y, z)]);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groupoid_round_trip() {
        let p = FiniteGroupoid::pair(3);
        let doc = GroupoidDoc::from_groupoid(&p);
        assert_eq!(doc.to_groupoid().unwrap(), p);
    }

    #[test]
    fn bibundle_round_trip() {
        let e = Bibundle::identity(Arc::new(FiniteGroupoid::cyclic(3)));
        let doc = BibundleDoc::from_bibundle(&e);
        let back = doc.to_bibundle().unwrap();
        assert_eq!(back.elements(), e.elements());
        assert!(back.is_morita());
    }

    #[test]
    fn unknown_labels_are_reported() {
        let mut doc = GroupoidDoc::from_groupoid(&FiniteGroupoid::z2());
        doc.mult[0][2] = "nope".into();
        assert_eq!(doc.to_groupoid(), Err(GroupoidError::UnknownLabel("nope".into())));
    }

    #[test]
    fn weinstein_without_mult_is_missing_structure() {
        let doc = WeinsteinDoc {
            presentation: GroupoidDoc::from_groupoid(&FiniteGroupoid::z2()),
            base: vec!["pt".into()],
            source: Some([("pt".to_string(), "pt".to_string())].into()),
            target: Some([("pt".to_string(), "pt".to_string())].into()),
            mult: None,
            unit: Some([("pt".to_string(), "pt".to_string())].into()),
            inverse: Some([("1".to_string(), "1".to_string()), ("-1".to_string(), "-1".to_string())].into()),
            associator: None,
        };
        assert!(matches!(doc.to_weinstein(), Err(GroupoidError::MissingStructure(_))));
    }
}
