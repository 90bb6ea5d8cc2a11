use std::collections::HashMap;
use std::sync::Arc;

use crate::groupoid::{Arr, FiniteGroupoid, Obj, UnionFind};
use crate::hom::Homomorphism;
use crate::GroupoidError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An action of a finite groupoid on a finite set `E` along a moment map.
///
/// A right action `x.h` is defined when `J(x) = t(h)` and lands in the fibre
/// over `s(h)`; a left action `g.x` is defined when `s(g) = J(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidAction {
    side: Side,
    moment: Vec<Obj>,
    // indexed [x * arrows + a]
    table: Vec<Option<usize>>,
    arrows: usize,
}

impl GroupoidAction {
    pub fn new(
        groupoid: &FiniteGroupoid,
        side: Side,
        moment: Vec<Obj>,
        act: impl Fn(usize, Arr) -> usize,
    ) -> Result<Self, GroupoidError> {
        let n = moment.len();
        let arrows = groupoid.num_arrows();
        if moment.iter().any(|&j| j >= groupoid.num_objects()) {
            return Err(GroupoidError::BadAction("moment map outside the objects".into()));
        }
        let defined = |x: usize, a: Arr| match side {
            Side::Left => groupoid.src(a) == moment[x],
            Side::Right => groupoid.tgt(a) == moment[x],
        };
        let mut table = vec![None; n * arrows];
        for x in 0..n {
            for a in 0..arrows {
                if defined(x, a) {
                    let y = act(x, a);
                    if y >= n {
                        return Err(GroupoidError::BadAction(format!("element {y} out of range")));
                    }
                    table[x * arrows + a] = Some(y);
                }
            }
        }
        let action = Self {
            side,
            moment,
            table,
            arrows,
        };
        action.validate(groupoid)?;
        Ok(action)
    }

    fn validate(&self, g: &FiniteGroupoid) -> Result<(), GroupoidError> {
        let bad = |msg: String| Err(GroupoidError::BadAction(msg));
        for x in 0..self.moment.len() {
            let j = self.moment[x];
            if self.apply(x, g.unit(j)) != Some(x) {
                return bad(format!("unit does not act trivially on element {x}"));
            }
            for a in 0..g.num_arrows() {
                let Some(y) = self.apply(x, a) else { continue };
                let expected = match self.side {
                    Side::Left => g.tgt(a),
                    Side::Right => g.src(a),
                };
                if self.moment[y] != expected {
                    return bad(format!("moment of the image of {x} under {} is wrong", g.label(a)));
                }
                // second arrow acts after `a`
                let next: Vec<Arr> = match self.side {
                    Side::Left => g.arrows_from(g.tgt(a)).collect(),
                    Side::Right => g.arrows_into(g.src(a)).collect(),
                };
                for b in next {
                    let stepwise = self.apply(y, b);
                    let combined = match self.side {
                        Side::Left => g.mul(b, a),
                        Side::Right => g.mul(a, b),
                    }
                    .and_then(|ab| self.apply(x, ab));
                    if stepwise.is_none() || stepwise != combined {
                        return bad(format!(
                            "action of {} then {} on {x} is not compatible",
                            g.label(a),
                            g.label(b)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn moment(&self) -> &[Obj] {
        &self.moment
    }

    /// Result of acting with `a` on `x`, when defined.
    pub fn apply(&self, x: usize, a: Arr) -> Option<usize> {
        self.table[x * self.arrows + a]
    }

    /// Whether every stabilizer is trivial.
    pub fn is_free(&self, g: &FiniteGroupoid) -> bool {
        (0..self.moment.len()).all(|x| {
            let j = self.moment[x];
            g.hom(j, j).all(|a| a == g.unit(j) || self.apply(x, a) != Some(x))
        })
    }
}

/// A Hilsum-Skandalis bibundle `G -> H`: a set with commuting left `G` and
/// right `H` actions, each moment map invariant under the other action.
#[derive(Debug, Clone)]
pub struct Bibundle {
    left_groupoid: Arc<FiniteGroupoid>,
    right_groupoid: Arc<FiniteGroupoid>,
    elements: Vec<String>,
    left: GroupoidAction,
    right: GroupoidAction,
}

impl Bibundle {
    pub fn new(
        left_groupoid: Arc<FiniteGroupoid>,
        right_groupoid: Arc<FiniteGroupoid>,
        elements: Vec<String>,
        left: GroupoidAction,
        right: GroupoidAction,
    ) -> Result<Self, GroupoidError> {
        let bad = |msg: String| Err(GroupoidError::BadBibundle(msg));
        let n = elements.len();
        if left.side != Side::Left || right.side != Side::Right {
            return bad("actions are on the wrong sides".into());
        }
        if left.moment.len() != n || right.moment.len() != n {
            return bad("moment maps do not cover the total set".into());
        }
        if left.arrows != left_groupoid.num_arrows() || right.arrows != right_groupoid.num_arrows() {
            return bad("actions belong to different groupoids".into());
        }
        let (g, h) = (&*left_groupoid, &*right_groupoid);
        for x in 0..n {
            for a in 0..g.num_arrows() {
                let Some(y) = left.apply(x, a) else { continue };
                if right.moment[y] != right.moment[x] {
                    return bad(format!("right moment is not invariant under {}", g.label(a)));
                }
                for b in 0..h.num_arrows() {
                    let Some(xb) = right.apply(x, b) else { continue };
                    if left.moment[xb] != left.moment[x] {
                        return bad(format!("left moment is not invariant under {}", h.label(b)));
                    }
                    if right.apply(y, b) != left.apply(xb, a) {
                        return bad(format!(
                            "actions of {} and {} do not commute on {}",
                            g.label(a),
                            h.label(b),
                            elements[x]
                        ));
                    }
                }
            }
        }
        Ok(Self {
            left_groupoid,
            right_groupoid,
            elements,
            left,
            right,
        })
    }

    /// The bibundle `G_0 x_{f,t} H_1` of a homomorphism `f: G -> H`, with
    /// `g.(x,h) = (t g, f(g) h)` and `(x,h).h' = (x, h h')`.
    pub fn from_homomorphism(
        g: Arc<FiniteGroupoid>,
        h: Arc<FiniteGroupoid>,
        f: &Homomorphism,
    ) -> Result<Self, GroupoidError> {
        let f = Homomorphism::new(&g, &h, f.objects.clone(), f.arrows.clone())?;
        let pairs: Vec<(Obj, Arr)> = (0..g.num_objects())
            .flat_map(|x| h.arrows_into(f.obj(x)).map(move |a| (x, a)))
            .collect();
        let index: HashMap<(Obj, Arr), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let elements = pairs
            .iter()
            .map(|&(x, a)| format!("({},{})", g.object_label(x), h.label(a)))
            .collect();
        let left = GroupoidAction::new(&g, Side::Left, pairs.iter().map(|p| p.0).collect(), |e, ga| {
            let (_, a) = pairs[e];
            index[&(g.tgt(ga), h.mul(f.arr(ga), a).expect("composable"))]
        })?;
        let right = GroupoidAction::new(&h, Side::Right, pairs.iter().map(|p| h.src(p.1)).collect(), |e, hb| {
            let (x, a) = pairs[e];
            index[&(x, h.mul(a, hb).expect("composable"))]
        })?;
        Self::new(g, h, elements, left, right)
    }

    /// The identity bibundle `G_1` with left and right multiplication.
    pub fn identity(g: Arc<FiniteGroupoid>) -> Self {
        let n = g.num_arrows();
        let left = GroupoidAction::new(&g, Side::Left, (0..n).map(|a| g.tgt(a)).collect(), |e, a| {
            g.mul(a, e).expect("composable")
        })
        .expect("left multiplication");
        let right = GroupoidAction::new(&g, Side::Right, (0..n).map(|a| g.src(a)).collect(), |e, a| {
            g.mul(e, a).expect("composable")
        })
        .expect("right multiplication");
        let elements = g.arrows().iter().map(|a| a.label.clone()).collect();
        Self::new(g.clone(), g, elements, left, right).expect("identity bibundle")
    }

    /// The bibundle `{g : s(g) in U}` from `G` to its full subgroupoid on
    /// `U`, returned together with that subgroupoid.
    pub fn restriction(g: Arc<FiniteGroupoid>, objects: &[Obj]) -> (Self, Arc<FiniteGroupoid>) {
        let (sub, embed) = g.full_subgroupoid(objects);
        let sub = Arc::new(sub);
        let pos: HashMap<Obj, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let total: Vec<Arr> = (0..g.num_arrows()).filter(|&a| pos.contains_key(&g.src(a))).collect();
        let index: HashMap<Arr, usize> = total.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let left = GroupoidAction::new(&g, Side::Left, total.iter().map(|&a| g.tgt(a)).collect(), |e, a| {
            index[&g.mul(a, total[e]).expect("composable")]
        })
        .expect("left multiplication");
        let right = GroupoidAction::new(
            &sub,
            Side::Right,
            total.iter().map(|&a| pos[&g.src(a)]).collect(),
            |e, u| index[&g.mul(total[e], embed[u]).expect("composable")],
        )
        .expect("right multiplication");
        let elements = total.iter().map(|&a| g.label(a).to_string()).collect();
        let bib = Self::new(g, sub.clone(), elements, left, right).expect("restriction bibundle");
        (bib, sub)
    }

    /// Composite `G -> K` of `self: G -> H` and `other: H -> K`: the orbit set
    /// of `E x_{H_0} F` under `(x,y).h = (x h, h^-1 y)`.
    pub fn compose(&self, other: &Self) -> Result<Self, GroupoidError> {
        if !same_groupoid(&self.right_groupoid, &other.left_groupoid) {
            return Err(GroupoidError::BadBibundle(
                "middle groupoids of the composite differ".into(),
            ));
        }
        let h = &*self.right_groupoid;
        let pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| {
                (0..other.len())
                    .filter(move |&y| self.right.moment[x] == other.left.moment[y])
                    .map(move |y| (x, y))
            })
            .collect();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut uf = UnionFind::new(pairs.len());
        for (i, &(x, y)) in pairs.iter().enumerate() {
            for a in h.arrows_into(self.right.moment[x]) {
                let xa = self.right.apply(x, a).expect("defined");
                let ay = other.left.apply(y, h.inv(a)).expect("defined");
                uf.union(i, index[&(xa, ay)]);
            }
        }
        // Pairs are enumerated lexicographically, so the smallest index in a
        // class is its lexicographic minimum.
        let classes = uf.classes();
        let mut class_of = vec![0; pairs.len()];
        for (c, members) in classes.iter().enumerate() {
            for &m in members {
                class_of[m] = c;
            }
        }
        let reps: Vec<(usize, usize)> = classes.iter().map(|c| pairs[c[0]]).collect();
        let elements = reps
            .iter()
            .map(|&(x, y)| format!("[{},{}]", self.elements[x], other.elements[y]))
            .collect();
        let left = GroupoidAction::new(
            &self.left_groupoid,
            Side::Left,
            reps.iter().map(|&(x, _)| self.left.moment[x]).collect(),
            |c, g| {
                let (x, y) = reps[c];
                class_of[index[&(self.left.apply(x, g).expect("defined"), y)]]
            },
        )?;
        let right = GroupoidAction::new(
            &other.right_groupoid,
            Side::Right,
            reps.iter().map(|&(_, y)| other.right.moment[y]).collect(),
            |c, k| {
                let (x, y) = reps[c];
                class_of[index[&(x, other.right.apply(y, k).expect("defined"))]]
            },
        )?;
        Self::new(
            self.left_groupoid.clone(),
            other.right_groupoid.clone(),
            elements,
            left,
            right,
        )
    }

    /// The reversed bibundle `H -> G` with `h.x = x h^-1` and `x.g = g^-1 x`.
    pub fn flip(&self) -> Self {
        let (g, h) = (&self.left_groupoid, &self.right_groupoid);
        let left = GroupoidAction::new(h, Side::Left, self.right.moment.clone(), |x, a| {
            self.right.apply(x, h.inv(a)).expect("defined")
        })
        .expect("flipped right action");
        let right = GroupoidAction::new(g, Side::Right, self.left.moment.clone(), |x, a| {
            self.left.apply(x, g.inv(a)).expect("defined")
        })
        .expect("flipped left action");
        Self::new(h.clone(), g.clone(), self.elements.clone(), left, right).expect("flipped bibundle")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn left_groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.left_groupoid
    }

    pub fn right_groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.right_groupoid
    }

    pub fn left_action(&self) -> &GroupoidAction {
        &self.left
    }

    pub fn right_action(&self) -> &GroupoidAction {
        &self.right
    }

    /// Right `H`-principal over `G_0`: the left moment is onto and `H` acts
    /// freely and transitively on each of its fibres.
    pub fn is_principal(&self) -> bool {
        principal_over(&self.right, &self.left.moment, &self.right_groupoid, self.left_groupoid.num_objects())
    }

    /// Left `G`-principal over `H_0`.
    pub fn is_left_principal(&self) -> bool {
        principal_over(&self.left, &self.right.moment, &self.left_groupoid, self.right_groupoid.num_objects())
    }

    pub fn is_morita(&self) -> bool {
        self.is_principal() && self.is_left_principal()
    }

    /// Orbits of the combined `G x H` action, ordered by smallest element.
    fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            for a in 0..self.left_groupoid.num_arrows() {
                if let Some(y) = self.left.apply(x, a) {
                    uf.union(x, y);
                }
            }
            for b in 0..self.right_groupoid.num_arrows() {
                if let Some(y) = self.right.apply(x, b) {
                    uf.union(x, y);
                }
            }
        }
        uf.classes()
    }
}

fn principal_over(action: &GroupoidAction, base_moment: &[Obj], acting: &FiniteGroupoid, base: usize) -> bool {
    let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); base];
    for (x, &j) in base_moment.iter().enumerate() {
        fibres[j].push(x);
    }
    if fibres.iter().any(Vec::is_empty) || !action.is_free(acting) {
        return false;
    }
    fibres.iter().all(|fibre| {
        let x0 = fibre[0];
        fibre.iter().all(|&y| {
            (0..acting.num_arrows()).any(|a| action.apply(x0, a) == Some(y))
        })
    })
}

fn same_groupoid(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A bi-equivariant bijection between two bibundles with the same ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoMorphism {
    pub map: Vec<usize>,
}

/// Whether `map` is a bijection `E1 -> E2` preserving both moments and both
/// actions.
pub fn check_two_morphism(e1: &Bibundle, e2: &Bibundle, map: &[usize]) -> bool {
    if !compatible(e1, e2) || map.len() != e1.len() || map.iter().any(|&y| y >= e2.len()) {
        return false;
    }
    let mut hit = vec![false; e2.len()];
    for &y in map {
        if std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..e1.len()).all(|x| {
        let y = map[x];
        e1.left.moment[x] == e2.left.moment[y]
            && e1.right.moment[x] == e2.right.moment[y]
            && (0..e1.left_groupoid.num_arrows())
                .all(|a| e1.left.apply(x, a).map(|z| map[z]) == e2.left.apply(y, a))
            && (0..e1.right_groupoid.num_arrows())
                .all(|b| e1.right.apply(x, b).map(|z| map[z]) == e2.right.apply(y, b))
    })
}

fn compatible(e1: &Bibundle, e2: &Bibundle) -> bool {
    same_groupoid(&e1.left_groupoid, &e2.left_groupoid) && same_groupoid(&e1.right_groupoid, &e2.right_groupoid)
}

/// The first 2-morphism `E1 => E2` in lexicographic order of the map table.
pub fn find_two_morphism(e1: &Bibundle, e2: &Bibundle) -> Option<TwoMorphism> {
    two_morphisms(e1, e2, 1).into_iter().next()
}

/// Up to `limit` 2-morphisms `E1 => E2` in lexicographic order.
///
/// A bi-equivariant map is fixed on a whole `G x H` orbit by its value at
/// the orbit's smallest element, so the search branches once per orbit.
pub fn two_morphisms(e1: &Bibundle, e2: &Bibundle, limit: usize) -> Vec<TwoMorphism> {
    let mut out = Vec::new();
    if !compatible(e1, e2) || e1.len() != e2.len() || limit == 0 {
        return out;
    }
    let orbits = e1.orbits();
    let mut state = Search {
        e1,
        e2,
        map: vec![None; e1.len()],
        used: vec![false; e2.len()],
    };
    state.run(&orbits, 0, limit, &mut out);
    out
}

pub fn count_two_morphisms(e1: &Bibundle, e2: &Bibundle) -> usize {
    two_morphisms(e1, e2, usize::MAX).len()
}

struct Search<'a> {
    e1: &'a Bibundle,
    e2: &'a Bibundle,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, orbits: &[Vec<usize>], next: usize, limit: usize, out: &mut Vec<TwoMorphism>) {
        if out.len() >= limit {
            return;
        }
        let Some(orbit) = orbits.get(next) else {
            out.push(TwoMorphism {
                map: self.map.iter().map(|y| y.expect("complete")).collect(),
            });
            return;
        };
        let rep = orbit[0];
        for y in 0..self.e2.len() {
            if self.used[y] {
                continue;
            }
            if self.propagate(rep, y) {
                self.run(orbits, next + 1, limit, out);
            }
            for &x in orbit {
                if let Some(z) = self.map[x].take() {
                    self.used[z] = false;
                }
            }
            if out.len() >= limit {
                return;
            }
        }
    }

    /// Extends `rep -> y` along the orbit; false on any conflict.
    fn propagate(&mut self, rep: usize, y: usize) -> bool {
        let (e1, e2) = (self.e1, self.e2);
        if !self.assign(rep, y) {
            return false;
        }
        let mut queue = vec![rep];
        while let Some(x) = queue.pop() {
            let fx = self.map[x].expect("assigned");
            let images = (0..e1.left_groupoid.num_arrows())
                .filter_map(|a| Some((e1.left.apply(x, a)?, e2.left.apply(fx, a))))
                .chain(
                    (0..e1.right_groupoid.num_arrows())
                        .filter_map(|b| Some((e1.right.apply(x, b)?, e2.right.apply(fx, b)))),
                )
                .collect::<Vec<_>>();
            for (x2, y2) in images {
                let Some(y2) = y2 else { return false };
                match self.map[x2] {
                    Some(existing) if existing == y2 => {}
                    Some(_) => return false,
                    None => {
                        if !self.assign(x2, y2) {
                            return false;
                        }
                        queue.push(x2);
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, x: usize, y: usize) -> bool {
        let (e1, e2) = (self.e1, self.e2);
        if self.used[y]
            || e1.left.moment[x] != e2.left.moment[y]
            || e1.right.moment[x] != e2.right.moment[y]
        {
            return false;
        }
        self.used[y] = true;
        self.map[x] = Some(y);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::z2())
    }

    #[test]
    fn identity_bibundle_of_bz2_has_two_automorphisms() {
        let e = Bibundle::identity(z2());
        assert!(e.is_morita());
        assert_eq!(find_two_morphism(&e, &e).unwrap().map, vec![0, 1]);
        assert_eq!(count_two_morphisms(&e, &e), 2);
    }

    #[test]
    fn homomorphism_bibundles() {
        let g = z2();
        let id = Homomorphism::identity(&g);
        let e = Bibundle::from_homomorphism(g.clone(), g.clone(), &id).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e.is_morita());
        assert!(find_two_morphism(&e, &Bibundle::identity(g.clone())).is_some());

        let pt = Arc::new(FiniteGroupoid::point());
        let constant = Homomorphism::new(&g, &pt, vec![0], vec![0, 0]).unwrap();
        let c = Bibundle::from_homomorphism(g, pt, &constant).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.is_principal());
        assert!(!c.is_left_principal());
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let g = z2();
        let f = Homomorphism {
            objects: vec![0],
            arrows: vec![1, 1],
        };
        assert!(Bibundle::from_homomorphism(g.clone(), g, &f).is_err());
    }

    #[test]
    fn pair_groupoid_is_morita_to_a_point() {
        let p = Arc::new(FiniteGroupoid::pair(3));
        let (e, sub) = Bibundle::restriction(p, &[0]);
        assert_eq!(e.len(), 3);
        assert_eq!(sub.num_arrows(), 1);
        assert!(e.is_morita());
        let back = e.flip().compose(&e).unwrap();
        assert!(find_two_morphism(&back, &Bibundle::identity(sub)).is_some());
    }

    #[test]
    fn trivial_action_is_not_free() {
        let g = z2();
        let a = GroupoidAction::new(&g, Side::Right, vec![0], |x, _| x).unwrap();
        assert!(!a.is_free(&g));
    }

    #[test]
    fn broken_action_is_rejected() {
        let g = FiniteGroupoid::cyclic(3);
        // x.h = x + h^2 does not respect composition
        let r = GroupoidAction::new(&g, Side::Right, vec![0; 3], |x, h| (x + h * h) % 3);
        assert!(r.is_err());
    }

    #[test]
    fn different_cardinalities_have_no_two_morphism() {
        let g = z2();
        let pt = Arc::new(FiniteGroupoid::point());
        let c = Homomorphism::new(&g, &pt, vec![0], vec![0, 0]).unwrap();
        let small = Bibundle::from_homomorphism(g.clone(), pt.clone(), &c).unwrap();
        // a two-element bibundle Z2 -> pt: Z2 acting on itself, trivial right action
        let left = GroupoidAction::new(&g, Side::Left, vec![0, 0], |x, a| x ^ a).unwrap();
        let right = GroupoidAction::new(&pt, Side::Right, vec![0, 0], |x, _| x).unwrap();
        let big = Bibundle::new(g, pt, vec!["1".into(), "-1".into()], left, right).unwrap();
        assert!(find_two_morphism(&small, &big).is_none());
    }
}
