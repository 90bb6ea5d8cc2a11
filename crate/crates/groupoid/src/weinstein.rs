//! Weinstein group(oid) structures presented by a finite groupoid, the
//! axiom checker and the associator obstruction on quadruples.

use std::collections::HashMap;
use std::sync::Arc;

use crate::groupoid::{Arr, Arrow, FiniteGroupoid, Obj};
use crate::hom::{check_hom_two_morphism, count_natural_transformations, natural_transformations, Homomorphism};
use crate::GroupoidError;

/// Composable `k`-tuples `(x_1, ..., x_k)` with `s(x_i) = t(x_{i+1})`, as a
/// subgroupoid of the `k`-fold product.
#[derive(Debug, Clone)]
pub struct ChainGroupoid {
    pub groupoid: FiniteGroupoid,
    pub object_tuples: Vec<Vec<Obj>>,
    pub arrow_tuples: Vec<Vec<Arr>>,
    obj_index: HashMap<Vec<Obj>, Obj>,
    arr_index: HashMap<Vec<Arr>, Arr>,
}

impl ChainGroupoid {
    pub fn new(g: &FiniteGroupoid, source: &[usize], target: &[usize], k: usize) -> Self {
        let chain_ok = |xs: &[Obj]| xs.windows(2).all(|w| source[w[0]] == target[w[1]]);
        let object_tuples: Vec<Vec<Obj>> = tuples(g.num_objects(), k).filter(|t| chain_ok(t)).collect();
        let obj_index: HashMap<Vec<Obj>, Obj> =
            object_tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let arrow_tuples: Vec<Vec<Arr>> = tuples(g.num_arrows(), k)
            .filter(|t| obj_index.contains_key(&t.iter().map(|&a| g.src(a)).collect::<Vec<_>>()))
            .collect();
        let arr_index: HashMap<Vec<Arr>, Arr> =
            arrow_tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let join = |labels: Vec<&str>| format!("({})", labels.join(","));
        let objects = object_tuples
            .iter()
            .map(|t| join(t.iter().map(|&x| g.object_label(x)).collect()))
            .collect();
        let arrows = arrow_tuples
            .iter()
            .map(|t| Arrow {
                label: join(t.iter().map(|&a| g.label(a)).collect()),
                src: obj_index[&t.iter().map(|&a| g.src(a)).collect::<Vec<_>>()],
                tgt: obj_index[&t.iter().map(|&a| g.tgt(a)).collect::<Vec<_>>()],
            })
            .collect();
        let groupoid = FiniteGroupoid::from_fn(
            objects,
            arrows,
            |p, q| {
                let t: Vec<Arr> = arrow_tuples[p]
                    .iter()
                    .zip(&arrow_tuples[q])
                    .map(|(&a, &b)| g.mul(a, b).expect("composable"))
                    .collect();
                arr_index[&t]
            },
            object_tuples
                .iter()
                .map(|t| arr_index[&t.iter().map(|&x| g.unit(x)).collect::<Vec<_>>()])
                .collect(),
            arrow_tuples
                .iter()
                .map(|t| arr_index[&t.iter().map(|&a| g.inv(a)).collect::<Vec<_>>()])
                .collect(),
        )
        .expect("chain groupoid of a valid groupoid");
        Self {
            groupoid,
            object_tuples,
            arrow_tuples,
            obj_index,
            arr_index,
        }
    }

    pub fn object(&self, tuple: &[Obj]) -> Option<Obj> {
        self.obj_index.get(tuple).copied()
    }

    pub fn arrow(&self, tuple: &[Arr]) -> Option<Arr> {
        self.arr_index.get(tuple).copied()
    }
}

fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(k as u32).expect("tuple count overflow");
    (0..total).map(move |mut i| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        t
    })
}

/// A Weinstein group(oid) structure on a finite presentation `G_1 => G_0`
/// over a finite base `M`. Structure maps are groupoid homomorphisms;
/// `source` and `target` are invariant maps `G_0 -> M`.
#[derive(Debug, Clone)]
pub struct WeinsteinGroupoid {
    pub presentation: Arc<FiniteGroupoid>,
    pub base: Vec<String>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub pairs: ChainGroupoid,
    pub triples: ChainGroupoid,
    pub mult: Homomorphism,
    /// `e` on objects; on arrows it sends units to units.
    pub unit: Vec<Obj>,
    pub inverse: Homomorphism,
    /// Components of `m(m x id) => m(id x m)` indexed by objects of `triples`.
    pub associator: Option<Vec<Arr>>,
    /// Always true for finite discrete data.
    pub etale: bool,
}

impl WeinsteinGroupoid {
    /// `mult` maps a composable pair of arrows to an arrow; on objects it is
    /// read off from units.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        presentation: Arc<FiniteGroupoid>,
        base: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        mult: impl Fn(Arr, Arr) -> Arr,
        unit: Vec<Obj>,
        inverse: impl Fn(Arr) -> Arr,
    ) -> Result<Self, GroupoidError> {
        let g = &*presentation;
        let missing = |what: &str| Err(GroupoidError::MissingStructure(what.to_string()));
        if base.is_empty() {
            return missing("base");
        }
        if source.len() != g.num_objects() || target.len() != g.num_objects() {
            return missing("source/target on every object");
        }
        if unit.len() != base.len() {
            return missing("identity section on every base point");
        }
        let in_base = |v: &[usize]| v.iter().all(|&p| p < base.len());
        if !in_base(&source) || !in_base(&target) || unit.iter().any(|&x| x >= g.num_objects()) {
            return Err(GroupoidError::Malformed("structure map outside its codomain".into()));
        }
        for a in g.arrows() {
            if source[a.src] != source[a.tgt] || target[a.src] != target[a.tgt] {
                return Err(GroupoidError::Malformed(format!(
                    "source/target not invariant along {}",
                    a.label
                )));
            }
        }
        let pairs = ChainGroupoid::new(g, &source, &target, 2);
        let triples = ChainGroupoid::new(g, &source, &target, 3);
        let mult_arrows: Vec<Arr> = pairs.arrow_tuples.iter().map(|t| mult(t[0], t[1])).collect();
        let mult_objects: Vec<Obj> = pairs
            .object_tuples
            .iter()
            .map(|t| g.tgt(mult(g.unit(t[0]), g.unit(t[1]))))
            .collect();
        let mult = Homomorphism::new(&pairs.groupoid, g, mult_objects, mult_arrows)?;
        let inv_arrows: Vec<Arr> = (0..g.num_arrows()).map(&inverse).collect();
        let inv_objects: Vec<Obj> = (0..g.num_objects()).map(|x| g.tgt(inverse(g.unit(x)))).collect();
        let inverse = Homomorphism::new(g, g, inv_objects, inv_arrows)?;
        Ok(Self {
            presentation,
            base,
            source,
            target,
            pairs,
            triples,
            mult,
            unit,
            inverse,
            associator: None,
            etale: true,
        })
    }

    pub fn with_associator(mut self, alpha: impl Fn(Obj, Obj, Obj) -> Arr) -> Self {
        let table = self
            .triples
            .object_tuples
            .iter()
            .map(|t| alpha(t[0], t[1], t[2]))
            .collect();
        self.associator = Some(table);
        self
    }

    fn m_obj(&self, x: Obj, y: Obj) -> Option<Obj> {
        self.pairs.object(&[x, y]).map(|p| self.mult.obj(p))
    }

    fn m_arr(&self, a: Arr, b: Arr) -> Option<Arr> {
        self.pairs.arrow(&[a, b]).map(|p| self.mult.arr(p))
    }

    /// `m(m x id)` and `m(id x m)` as homomorphisms from composable triples.
    pub fn associativity_sides(&self) -> (Homomorphism, Homomorphism) {
        let t = &self.triples;
        let left_obj = t
            .object_tuples
            .iter()
            .map(|v| self.m_obj(self.m_obj(v[0], v[1]).expect("pair"), v[2]).expect("pair"))
            .collect();
        let left_arr = t
            .arrow_tuples
            .iter()
            .map(|v| self.m_arr(self.m_arr(v[0], v[1]).expect("pair"), v[2]).expect("pair"))
            .collect();
        let right_obj = t
            .object_tuples
            .iter()
            .map(|v| self.m_obj(v[0], self.m_obj(v[1], v[2]).expect("pair")).expect("pair"))
            .collect();
        let right_arr = t
            .arrow_tuples
            .iter()
            .map(|v| self.m_arr(v[0], self.m_arr(v[1], v[2]).expect("pair")).expect("pair"))
            .collect();
        (
            Homomorphism {
                objects: left_obj,
                arrows: left_arr,
            },
            Homomorphism {
                objects: right_obj,
                arrows: right_arr,
            },
        )
    }

    /// Associator value at a composable triple of objects.
    pub fn alpha(&self, x: Obj, y: Obj, z: Obj) -> Option<Arr> {
        let i = self.triples.object(&[x, y, z])?;
        Some(match &self.associator {
            Some(table) => table[i],
            None => self.presentation.unit(self.associativity_sides().0.obj(i)),
        })
    }

    /// Builds an endomorphism-like homomorphism `G -> G` from object and
    /// arrow rules.
    fn endo(&self, obj: impl Fn(Obj) -> Obj, arr: impl Fn(Arr) -> Arr) -> Homomorphism {
        let g = &*self.presentation;
        Homomorphism {
            objects: (0..g.num_objects()).map(obj).collect(),
            arrows: (0..g.num_arrows()).map(arr).collect(),
        }
    }

    pub fn check(&self) -> WeinsteinReport {
        let g = &*self.presentation;
        let mut axioms = Vec::new();

        // Strict compatibilities of the structure maps with s and t.
        let pairs = &self.pairs;
        let st_ok = pairs.object_tuples.iter().enumerate().all(|(p, v)| {
            let m = self.mult.obj(p);
            self.target[m] == self.target[v[0]] && self.source[m] == self.source[v[1]]
        });
        axioms.push(AxiomResult::strict("t.m = t.pr1, s.m = s.pr2", st_ok));
        let e_ok = (0..self.base.len())
            .all(|p| self.source[self.unit[p]] == p && self.target[self.unit[p]] == p);
        axioms.push(AxiomResult::strict("s.e = id, t.e = id", e_ok));
        let i_ok = (0..g.num_objects()).all(|x| {
            let ix = self.inverse.obj(x);
            self.source[ix] == self.target[x] && self.target[ix] == self.source[x]
        });
        axioms.push(AxiomResult::strict("s.i = t, t.i = s", i_ok));
        if !(st_ok && e_ok && i_ok) {
            return WeinsteinReport::from_axioms(axioms);
        }

        // Associativity.
        let (lhs, rhs) = self.associativity_sides();
        let triples = &self.triples.groupoid;
        let identity_triples: Vec<Obj> = (0..self.base.len())
            .filter_map(|p| {
                let e = self.unit[p];
                self.triples.object(&[e, e, e])
            })
            .collect();
        axioms.push(self.two_cell_axiom(
            "m.(m x id) => m.(id x m)",
            triples,
            &lhs,
            &rhs,
            &identity_triples,
            self.associator.as_deref(),
        ));

        // Identity axioms.
        let on_section: Vec<Obj> = self.unit.clone();
        let left_unit = self.endo(
            |x| self.m_obj(self.unit[self.target[x]], x).expect("pair"),
            |a| {
                let e = g.unit(self.unit[self.target[g.src(a)]]);
                self.m_arr(e, a).expect("pair")
            },
        );
        let right_unit = self.endo(
            |x| self.m_obj(x, self.unit[self.source[x]]).expect("pair"),
            |a| {
                let e = g.unit(self.unit[self.source[g.src(a)]]);
                self.m_arr(a, e).expect("pair")
            },
        );
        let id = Homomorphism::identity(g);
        axioms.push(self.two_cell_axiom("m.((e.t) x id) => id", g, &left_unit, &id, &on_section, None));
        axioms.push(self.two_cell_axiom("m.(id x (e.s)) => id", g, &right_unit, &id, &on_section, None));

        // Inverse axioms.
        let left_inv = self.endo(
            |x| self.m_obj(self.inverse.obj(x), x).expect("pair"),
            |a| self.m_arr(self.inverse.arr(a), a).expect("pair"),
        );
        let right_inv = self.endo(
            |x| self.m_obj(x, self.inverse.obj(x)).expect("pair"),
            |a| self.m_arr(a, self.inverse.arr(a)).expect("pair"),
        );
        let e_s = self.endo(
            |x| self.unit[self.source[x]],
            |a| g.unit(self.unit[self.source[g.src(a)]]),
        );
        let e_t = self.endo(
            |x| self.unit[self.target[x]],
            |a| g.unit(self.unit[self.target[g.src(a)]]),
        );
        axioms.push(self.two_cell_axiom("m.(i x id).diag => e.s", g, &left_inv, &e_s, &on_section, None));
        axioms.push(self.two_cell_axiom("m.(id x i).diag => e.t", g, &right_inv, &e_t, &on_section, None));

        WeinsteinReport::from_axioms(axioms)
    }

    /// Searches (or checks the supplied) 2-morphism `f => k` whose
    /// components on `section` are units.
    fn two_cell_axiom(
        &self,
        name: &str,
        domain: &FiniteGroupoid,
        f: &Homomorphism,
        k: &Homomorphism,
        section: &[Obj],
        supplied: Option<&[Arr]>,
    ) -> AxiomResult {
        let g = &*self.presentation;
        let strict = f == k;
        let count = count_natural_transformations(domain, g, f, k);
        let restricts = |alpha: &[Arr]| section.iter().all(|&x| g.is_unit(alpha[x]));
        let chosen: Option<Vec<Arr>> = match supplied {
            Some(alpha) => check_hom_two_morphism(domain, g, f, k, alpha).then(|| alpha.to_vec()),
            None => {
                // Prefer units when both sides agree, then the first restricting cell.
                let units: Vec<Arr> = (0..domain.num_objects()).map(|x| g.unit(f.obj(x))).collect();
                if strict {
                    Some(units)
                } else {
                    let all = natural_transformations(domain, g, f, k, usize::MAX);
                    all.iter().find(|a| restricts(a)).or(all.first()).cloned()
                }
            }
        };
        let restricts_to_identity = chosen.as_deref().is_some_and(restricts);
        AxiomResult {
            name: name.to_string(),
            holds: chosen.is_some(),
            strict,
            two_morphism: chosen.map(|alpha| {
                alpha
                    .iter()
                    .enumerate()
                    .map(|(x, &a)| (domain.object_label(x).to_string(), g.label(a).to_string()))
                    .collect()
            }),
            count,
            restricts_to_identity,
        }
    }

    /// Composite of the six associator faces around the cube of bracketings
    /// of a composable quadruple.
    pub fn associator_obstruction(
        &self,
        quadruple: [Obj; 4],
        rule: FaceRule,
    ) -> Result<Obstruction, GroupoidError> {
        let g = &*self.presentation;
        if let Some(alpha) = &self.associator {
            let (lhs, rhs) = self.associativity_sides();
            if !check_hom_two_morphism(&self.triples.groupoid, g, &lhs, &rhs, alpha) {
                return Err(GroupoidError::NotTwoMorphism(
                    "associator is not a 2-morphism m.(m x id) => m.(id x m)".into(),
                ));
            }
        }
        let [x1, x2, x3, x4] = quadruple;
        let not_chain = || GroupoidError::NotComposable("quadruple is not composable".into());
        let m = |a: Obj, b: Obj| self.m_obj(a, b).ok_or_else(not_chain);
        let alpha = |a: Obj, b: Obj, c: Obj| self.alpha(a, b, c).ok_or_else(not_chain);
        let whisker = |a: Arr, b: Arr| self.m_arr(a, b).ok_or_else(not_chain);
        let (x12, x23, x34) = (m(x1, x2)?, m(x2, x3)?, m(x3, x4)?);
        let f1 = m(m(x12, x3)?, x4)?;
        let f2 = m(x12, x34)?;

        let a1 = alpha(x12, x3, x4)?;
        let a2 = g.unit(f2);
        let a3 = alpha(x1, x2, x34)?;
        let (a4, a5, a6) = match rule {
            FaceRule::Whiskered => (
                whisker(g.unit(x1), g.inv(alpha(x2, x3, x4)?))?,
                g.inv(alpha(x1, x23, x4)?),
                whisker(g.inv(alpha(x1, x2, x3)?), g.unit(x4))?,
            ),
            FaceRule::Absorbed => (
                g.inv(alpha(x12, x3, x4)?),
                g.inv(alpha(x1, x23, x4)?),
                g.inv(alpha(x1, x2, x34)?),
            ),
        };
        let faces = [a1, a2, a3, a4, a5, a6];
        let mut composite = a1;
        for (i, &face) in faces.iter().enumerate().skip(1) {
            composite = g.mul(face, composite).ok_or_else(|| {
                GroupoidError::NotComposable(format!("face {} does not follow face {}", i + 1, i))
            })?;
        }
        if g.tgt(composite) != g.src(a1) {
            return Err(GroupoidError::NotComposable("faces do not close up".into()));
        }
        let expected = g.unit(f1);
        Ok(Obstruction {
            faces: faces.iter().map(|&a| g.label(a).to_string()).collect(),
            composite: g.label(composite).to_string(),
            expected_identity: g.label(expected).to_string(),
            is_identity: composite == expected,
        })
    }
}

/// How the whiskered faces of the associator cube are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FaceRule {
    /// Each whiskered face evaluates the associator on the triple obtained
    /// by absorbing the outer factor into its neighbour, so every
    /// non-degenerate face is a value of the associator.
    #[default]
    Absorbed,
    /// Faces are whiskered with units through the multiplication.
    Whiskered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub faces: Vec<String>,
    pub composite: String,
    pub expected_identity: String,
    pub is_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: String,
    pub holds: bool,
    /// Both sides agree on the nose.
    pub strict: bool,
    /// Components `(object, arrow)` of the 2-morphism used.
    pub two_morphism: Option<Vec<(String, String)>>,
    /// Number of 2-morphisms between the two sides.
    pub count: u128,
    pub restricts_to_identity: bool,
}

impl AxiomResult {
    fn strict(name: &str, holds: bool) -> Self {
        Self {
            name: name.to_string(),
            holds,
            strict: holds,
            two_morphism: None,
            count: u128::from(holds),
            restricts_to_identity: holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeinsteinReport {
    pub axioms: Vec<AxiomResult>,
    pub pass: bool,
}

impl WeinsteinReport {
    fn from_axioms(axioms: Vec<AxiomResult>) -> Self {
        let pass = axioms.iter().all(|a| a.holds && a.restricts_to_identity);
        Self { axioms, pass }
    }
}

/// `BG` for a finite abelian group `G` presented as a one-object groupoid,
/// with `m(a,b) = ab`, `e = 1`, `i(a) = a^-1` and trivial associator.
pub fn abelian_bg(group: FiniteGroupoid) -> Result<WeinsteinGroupoid, GroupoidError> {
    if group.num_objects() != 1 {
        return Err(GroupoidError::Malformed("expected a one-object groupoid".into()));
    }
    let g = Arc::new(group);
    let g2 = g.clone();
    let g3 = g.clone();
    WeinsteinGroupoid::new(
        g,
        vec!["pt".into()],
        vec![0],
        vec![0],
        move |a, b| g2.mul(a, b).expect("one object"),
        vec![0],
        move |a| g3.inv(a),
    )
}

pub fn bz2() -> WeinsteinGroupoid {
    abelian_bg(FiniteGroupoid::z2()).expect("BZ2")
}

/// The trivial Weinstein group `pt => pt`.
pub fn point() -> WeinsteinGroupoid {
    abelian_bg(FiniteGroupoid::point()).expect("point")
}

/// `Z2 x Z2 => Z2`, the trivial action groupoid, with componentwise
/// multiplication and the associator `(g1,g2,g3) -> (g1g2g3, g1g2g3)`.
/// Arrows are labelled `(object, group element)` with `1` and `-1`.
pub fn z2_star_bz2() -> WeinsteinGroupoid {
    let z2 = FiniteGroupoid::z2();
    let gamma = FiniteGroupoid::action(&z2, vec!["1".into(), "-1".into()], |_, x| x).expect("action groupoid");
    // arrow index = object * 2 + group element, with 0 <-> 1 and 1 <-> -1
    let arrow = |x: usize, a: usize| x * 2 + a;
    WeinsteinGroupoid::new(
        Arc::new(gamma),
        vec!["pt".into()],
        vec![0, 0],
        vec![0, 0],
        move |p, q| arrow((p / 2) ^ (q / 2), (p % 2) ^ (q % 2)),
        vec![0],
        |p| p,
    )
    .expect("Z2*BZ2")
    .with_associator(move |x, y, z| {
        let prod = x ^ y ^ z;
        arrow(prod, prod)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(w: &WeinsteinGroupoid, labels: [&str; 4]) -> [Obj; 4] {
        labels.map(|l| w.presentation.object(l).unwrap())
    }

    #[test]
    fn bz2_passes_with_trivial_associator() {
        let w = bz2();
        let report = w.check();
        assert!(report.pass, "{report:?}");
        let assoc = &report.axioms[3];
        assert!(assoc.strict);
        assert_eq!(assoc.two_morphism.as_ref().unwrap()[0].1, "1");
    }

    #[test]
    fn z2_star_bz2_associator_and_obstruction() {
        let w = z2_star_bz2();
        let report = w.check();
        assert!(report.pass, "{report:?}");
        let assoc = &report.axioms[3];
        assert_eq!(assoc.count, 256);
        let o = w.associator_obstruction(obj(&w, ["1", "1", "1", "-1"]), FaceRule::Absorbed).unwrap();
        assert_eq!(o.composite, "(-1,-1)");
        assert_eq!(o.expected_identity, "(-1,1)");
        assert!(!o.is_identity);
        assert_eq!(o.faces[1], "(-1,1)");
        let all_ones = w.associator_obstruction(obj(&w, ["1", "1", "1", "1"]), FaceRule::Absorbed).unwrap();
        assert!(all_ones.is_identity);
        assert_eq!(all_ones.composite, "(1,1)");
    }

    #[test]
    fn whiskered_faces_see_the_coboundary_in_the_middle_pair() {
        let w = z2_star_bz2();
        let o = w.associator_obstruction(obj(&w, ["1", "1", "1", "-1"]), FaceRule::Whiskered).unwrap();
        assert!(o.is_identity);
        let o = w.associator_obstruction(obj(&w, ["1", "-1", "1", "1"]), FaceRule::Whiskered).unwrap();
        assert!(!o.is_identity);
    }

    #[test]
    fn corrupted_associator_is_rejected() {
        let w = z2_star_bz2();
        let (lhs, rhs) = w.associativity_sides();
        let mut alpha = w.associator.clone().unwrap();
        assert!(check_hom_two_morphism(&w.triples.groupoid, &w.presentation, &lhs, &rhs, &alpha));
        // (1,-1) is a loop at object 1; swap a value to a loop at the wrong object
        alpha[0] = w.presentation.arrow("(-1,-1)").unwrap();
        assert!(!check_hom_two_morphism(&w.triples.groupoid, &w.presentation, &lhs, &rhs, &alpha));
        let broken = w.clone().with_associator(|_, _, _| 3);
        assert!(broken.associator_obstruction([0, 0, 0, 0], FaceRule::Absorbed).is_err());
    }

    #[test]
    fn point_and_bg_z3() {
        assert!(point().check().pass);
        let w = abelian_bg(FiniteGroupoid::cyclic(3)).unwrap();
        let report = w.check();
        assert!(report.pass);
        for q in [[0, 0, 0, 0]] {
            assert!(w.associator_obstruction(q, FaceRule::Absorbed).unwrap().is_identity);
        }
    }

    #[test]
    fn missing_structure_is_reported() {
        let g = Arc::new(FiniteGroupoid::z2());
        let r = WeinsteinGroupoid::new(g, vec!["pt".into()], vec![0], vec![0], |a, b| a ^ b, vec![], |a| a);
        assert!(matches!(r, Err(GroupoidError::MissingStructure(_))));
    }
}
