use std::collections::HashMap;

use crate::GroupoidError;

pub type Obj = usize;
pub type Arr = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A groupoid `G1 => G0` on finite sets, validated on construction.
///
/// Composition follows the arrow convention: `compose(a, b)` is `a . b`,
/// "first `b`, then `a`", defined when `src(a) == tgt(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    // row-major arrows x arrows
    mult: Vec<Option<Arr>>,
    unit: Vec<Arr>,
    inv: Vec<Arr>,
    obj_index: HashMap<String, Obj>,
    arr_index: HashMap<String, Arr>,
}

impl FiniteGroupoid {
    /// Builds and validates a groupoid. `mult` lists the triples
    /// `(a, b, a.b)` for every composable pair.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        mult: impl IntoIterator<Item = (Arr, Arr, Arr)>,
        unit: Vec<Arr>,
        inv: Vec<Arr>,
    ) -> Result<Self, GroupoidError> {
        let n = arrows.len();
        let mut table = vec![None; n * n];
        for (a, b, c) in mult {
            if a >= n || b >= n || c >= n {
                return Err(GroupoidError::Malformed(format!(
                    "multiplication entry ({a}, {b}, {c}) out of range"
                )));
            }
            if table[a * n + b].replace(c).is_some_and(|old| old != c) {
                return Err(GroupoidError::Malformed(format!(
                    "arrows {} . {} composed twice",
                    arrows[a].label, arrows[b].label
                )));
            }
        }
        let obj_index = index_labels(objects.iter())?;
        let arr_index = index_labels(arrows.iter().map(|a| &a.label))?;
        let g = Self {
            objects,
            arrows,
            mult: table,
            unit,
            inv,
            obj_index,
            arr_index,
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds a groupoid from a composition function that is consulted on
    /// every composable pair.
    pub fn from_fn(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        compose: impl Fn(Arr, Arr) -> Arr,
        unit: Vec<Arr>,
        inv: Vec<Arr>,
    ) -> Result<Self, GroupoidError> {
        let pairs: Vec<_> = (0..arrows.len())
            .flat_map(|a| (0..arrows.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| arrows[a].src == arrows[b].tgt)
            .map(|(a, b)| (a, b, compose(a, b)))
            .collect();
        Self::new(objects, arrows, pairs, unit, inv)
    }

    fn validate(&self) -> Result<(), GroupoidError> {
        let bad = |msg: String| Err(GroupoidError::Malformed(msg));
        let n_obj = self.objects.len();
        let n = self.arrows.len();
        if self.unit.len() != n_obj || self.inv.len() != n {
            return bad("unit/inverse tables have the wrong length".into());
        }
        if let Some(a) = self.arrows.iter().find(|a| a.src >= n_obj || a.tgt >= n_obj) {
            return bad(format!("arrow {} has an unknown endpoint", a.label));
        }
        for a in 0..n {
            for b in 0..n {
                let composable = self.src(a) == self.tgt(b);
                match (composable, self.mult[a * n + b]) {
                    (true, None) => {
                        return bad(format!("missing product {} . {}", self.label(a), self.label(b)))
                    }
                    (false, Some(_)) => {
                        return bad(format!(
                            "product of non-composable {} . {}",
                            self.label(a),
                            self.label(b)
                        ))
                    }
                    (true, Some(c)) if self.src(c) != self.src(b) || self.tgt(c) != self.tgt(a) => {
                        return bad(format!(
                            "{} . {} has the wrong endpoints",
                            self.label(a),
                            self.label(b)
                        ))
                    }
                    _ => {}
                }
            }
        }
        for (x, &u) in self.unit.iter().enumerate() {
            if u >= n || self.src(u) != x || self.tgt(u) != x {
                return bad(format!("unit of {} is not a loop at it", self.objects[x]));
            }
        }
        for a in 0..n {
            let (s, t) = (self.src(a), self.tgt(a));
            if self.mul(self.unit[t], a) != Some(a) || self.mul(a, self.unit[s]) != Some(a) {
                return bad(format!("unit law fails at {}", self.label(a)));
            }
            let i = self.inv[a];
            if i >= n
                || self.mul(i, a) != Some(self.unit[s])
                || self.mul(a, i) != Some(self.unit[t])
            {
                return bad(format!("inverse law fails at {}", self.label(a)));
            }
        }
        for a in 0..n {
            for b in self.arrows_into(self.src(a)) {
                let ab = self.mul(a, b).expect("composable");
                for c in self.arrows_into(self.src(b)) {
                    let left = self.mul(ab, c);
                    let right = self.mul(b, c).and_then(|bc| self.mul(a, bc));
                    if left != right {
                        return bad(format!(
                            "associativity fails on ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn src(&self, a: Arr) -> Obj {
        self.arrows[a].src
    }

    pub fn tgt(&self, a: Arr) -> Obj {
        self.arrows[a].tgt
    }

    pub fn label(&self, a: Arr) -> &str {
        &self.arrows[a].label
    }

    pub fn object_label(&self, x: Obj) -> &str {
        &self.objects[x]
    }

    pub fn object(&self, label: &str) -> Option<Obj> {
        self.obj_index.get(label).copied()
    }

    pub fn arrow(&self, label: &str) -> Option<Arr> {
        self.arr_index.get(label).copied()
    }

    /// `a . b` when `src(a) == tgt(b)`.
    pub fn mul(&self, a: Arr, b: Arr) -> Option<Arr> {
        self.mult[a * self.arrows.len() + b]
    }

    pub fn unit(&self, x: Obj) -> Arr {
        self.unit[x]
    }

    pub fn inv(&self, a: Arr) -> Arr {
        self.inv[a]
    }

    pub fn is_unit(&self, a: Arr) -> bool {
        self.unit[self.src(a)] == a
    }

    pub fn arrows_into(&self, x: Obj) -> impl Iterator<Item = Arr> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.tgt(a) == x)
    }

    pub fn arrows_from(&self, x: Obj) -> impl Iterator<Item = Arr> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.src(a) == x)
    }

    pub fn hom(&self, from: Obj, to: Obj) -> impl Iterator<Item = Arr> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.src(a) == from && self.tgt(a) == to)
    }

    /// Connected components (orbits) as sorted object lists, ordered by
    /// their smallest object.
    pub fn orbits(&self) -> Vec<Vec<Obj>> {
        let mut uf = UnionFind::new(self.objects.len());
        for a in &self.arrows {
            uf.union(a.src, a.tgt);
        }
        uf.classes()
    }

    pub fn isotropy_order(&self, x: Obj) -> usize {
        self.hom(x, x).count()
    }

    /// A group as a one-object groupoid. `mul` works on element indices and
    /// `identity` is the index of the neutral element.
    pub fn from_group(
        object: &str,
        elements: Vec<String>,
        identity: usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupoidError> {
        let n = elements.len();
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul(a, b) == identity)
                    .ok_or_else(|| GroupoidError::Malformed(format!("{} has no inverse", elements[a])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arrows = elements
            .into_iter()
            .map(|label| Arrow { label, src: 0, tgt: 0 })
            .collect();
        Self::from_fn(vec![object.to_string()], arrows, mul, vec![identity], inv)
    }

    /// `Z/n` written additively, one object `pt`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|k| k.to_string()).collect();
        Self::from_group("pt", labels, 0, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// `Z_2 = {1, -1}` written multiplicatively over the point.
    pub fn z2() -> Self {
        Self::from_group("pt", vec!["1".into(), "-1".into()], 0, |a, b| a ^ b).expect("Z2")
    }

    /// The groupoid with only identity arrows on the given objects.
    pub fn trivial(objects: Vec<String>) -> Self {
        let n = objects.len();
        let arrows = objects
            .iter()
            .enumerate()
            .map(|(x, l)| Arrow {
                label: format!("1_{l}"),
                src: x,
                tgt: x,
            })
            .collect();
        Self::from_fn(objects, arrows, |a, _| a, (0..n).collect(), (0..n).collect())
            .expect("trivial groupoid")
    }

    pub fn point() -> Self {
        Self::trivial(vec!["pt".into()])
    }

    /// Pair groupoid on `n` objects: one arrow `(i,j): j -> i` for each pair.
    pub fn pair(n: usize) -> Self {
        let objects = (0..n).map(|k| k.to_string()).collect();
        let arrows = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| Arrow {
                label: format!("({i},{j})"),
                src: j,
                tgt: i,
            })
            .collect();
        let idx = |i: usize, j: usize| i * n + j;
        Self::from_fn(
            objects,
            arrows,
            |a, b| idx(a / n, b % n),
            (0..n).map(|i| idx(i, i)).collect(),
            (0..n * n).map(|a| idx(a % n, a / n)).collect(),
        )
        .expect("pair groupoid")
    }

    /// Product groupoid; objects and arrows are labelled `(a,b)`.
    pub fn product(g: &Self, h: &Self) -> Self {
        let ng = g.arrows.len();
        let nh = h.arrows.len();
        let objects = product_labels(&g.objects, &h.objects);
        let arrows = (0..ng)
            .flat_map(|a| (0..nh).map(move |b| (a, b)))
            .map(|(a, b)| Arrow {
                label: format!("({},{})", g.label(a), h.label(b)),
                src: g.src(a) * h.objects.len() + h.src(b),
                tgt: g.tgt(a) * h.objects.len() + h.tgt(b),
            })
            .collect();
        Self::from_fn(
            objects,
            arrows,
            |p, q| {
                let a = g.mul(p / nh, q / nh).expect("composable");
                let b = h.mul(p % nh, q % nh).expect("composable");
                a * nh + b
            },
            (0..g.objects.len())
                .flat_map(|x| (0..h.objects.len()).map(move |y| (x, y)))
                .map(|(x, y)| g.unit(x) * nh + h.unit(y))
                .collect(),
            (0..ng * nh)
                .map(|p| g.inv(p / nh) * nh + h.inv(p % nh))
                .collect(),
        )
        .expect("product of groupoids")
    }

    /// Full subgroupoid on `objects` (given in the order they should be
    /// indexed). Returns the subgroupoid and the arrow embedding.
    pub fn full_subgroupoid(&self, objects: &[Obj]) -> (Self, Vec<Arr>) {
        let pos: HashMap<Obj, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let kept: Vec<Arr> = (0..self.arrows.len())
            .filter(|&a| pos.contains_key(&self.src(a)) && pos.contains_key(&self.tgt(a)))
            .collect();
        let arr_pos: HashMap<Arr, usize> = kept.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let arrows = kept
            .iter()
            .map(|&a| Arrow {
                label: self.label(a).to_string(),
                src: pos[&self.src(a)],
                tgt: pos[&self.tgt(a)],
            })
            .collect();
        let sub = Self::from_fn(
            objects.iter().map(|&x| self.objects[x].clone()).collect(),
            arrows,
            |a, b| arr_pos[&self.mul(kept[a], kept[b]).expect("composable")],
            objects.iter().map(|&x| arr_pos[&self.unit(x)]).collect(),
            kept.iter().map(|&a| arr_pos[&self.inv(a)]).collect(),
        )
        .expect("full subgroupoid of a valid groupoid");
        (sub, kept)
    }

    /// Action groupoid of a group (given as a one-object groupoid) acting on
    /// a finite set from the left: arrows `(x, g): x -> g.x`, labelled
    /// `(x,g)`.
    pub fn action(
        group: &Self,
        set: Vec<String>,
        act: impl Fn(Arr, Obj) -> Obj,
    ) -> Result<Self, GroupoidError> {
        if group.num_objects() != 1 {
            return Err(GroupoidError::Malformed("action needs a group".into()));
        }
        let n_set = set.len();
        let n_g = group.num_arrows();
        let arrows: Vec<Arrow> = (0..n_set)
            .flat_map(|x| (0..n_g).map(move |g| (x, g)))
            .map(|(x, g)| Arrow {
                label: format!("({},{})", set[x], group.label(g)),
                src: x,
                tgt: act(g, x),
            })
            .collect();
        let idx = |x: Obj, g: Arr| x * n_g + g;
        let unit_g = group.unit(0);
        let targets: Vec<Obj> = arrows.iter().map(|a| a.tgt).collect();
        Self::from_fn(
            set,
            arrows,
            |p, q| {
                // p = (y, g) after q = (x, h) with y = h.x gives (x, g h)
                let x = q / n_g;
                idx(x, group.mul(p % n_g, q % n_g).expect("group"))
            },
            (0..n_set).map(|x| idx(x, unit_g)).collect(),
            (0..n_set * n_g)
                .map(|p| idx(targets[p], group.inv(p % n_g)))
                .collect(),
        )
    }
}

fn product_labels(a: &[String], b: &[String]) -> Vec<String> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| format!("({x},{y})")))
        .collect()
}

fn index_labels<'a>(labels: impl Iterator<Item = &'a String>) -> Result<HashMap<String, usize>, GroupoidError> {
    let mut map = HashMap::new();
    for (i, l) in labels.enumerate() {
        if map.insert(l.clone(), i).is_some() {
            return Err(GroupoidError::Malformed(format!("duplicate label {l}")));
        }
    }
    Ok(map)
}

/// Union-find whose class representative is always the smallest member.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            cur = std::mem::replace(&mut self.parent[cur], root);
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        assert_eq!(FiniteGroupoid::z2().num_arrows(), 2);
        assert_eq!(FiniteGroupoid::cyclic(3).num_arrows(), 3);
        let p = FiniteGroupoid::pair(3);
        assert_eq!(p.num_arrows(), 9);
        assert_eq!(p.orbits(), vec![vec![0, 1, 2]]);
        assert_eq!(p.isotropy_order(1), 1);
        let prod = FiniteGroupoid::product(&FiniteGroupoid::z2(), &FiniteGroupoid::pair(2));
        assert_eq!(prod.num_arrows(), 8);
        assert_eq!(prod.num_objects(), 2);
    }

    #[test]
    fn rejects_non_associative_table() {
        // Z3 elements with a broken product 1*1 = 1.
        let r = FiniteGroupoid::from_group("pt", vec!["0".into(), "1".into(), "2".into()], 0, |a, b| {
            if a == 1 && b == 1 {
                1
            } else {
                (a + b) % 3
            }
        });
        assert!(r.is_err());
    }

    #[test]
    fn rejects_missing_product() {
        let arrows = vec![Arrow {
            label: "e".into(),
            src: 0,
            tgt: 0,
        }];
        let r = FiniteGroupoid::new(vec!["x".into()], arrows, vec![], vec![0], vec![0]);
        assert!(matches!(r, Err(GroupoidError::Malformed(_))));
    }

    #[test]
    fn trivial_action_groupoid_is_a_bundle_of_groups() {
        let z2 = FiniteGroupoid::z2();
        let g = FiniteGroupoid::action(&z2, vec!["1".into(), "-1".into()], |_, x| x).unwrap();
        assert_eq!(g.orbits().len(), 2);
        assert_eq!(g.isotropy_order(0), 2);
        assert!(g.arrow("(-1,-1)").is_some());
    }

    #[test]
    fn union_find_keeps_minimum() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(2, 3);
        assert_eq!(uf.find(4), 2);
        uf.union(3, 0);
        assert_eq!(uf.find(4), 0);
    }
}
