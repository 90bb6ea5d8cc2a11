use crate::groupoid::{Arr, FiniteGroupoid, Obj};
use crate::GroupoidError;

/// A functor between finite groupoids, stored as object and arrow tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub objects: Vec<Obj>,
    pub arrows: Vec<Arr>,
}

impl Homomorphism {
    /// Checks the functor laws exhaustively.
    pub fn new(
        from: &FiniteGroupoid,
        to: &FiniteGroupoid,
        objects: Vec<Obj>,
        arrows: Vec<Arr>,
    ) -> Result<Self, GroupoidError> {
        let bad = |msg: String| Err(GroupoidError::NotHomomorphism(msg));
        if objects.len() != from.num_objects() || arrows.len() != from.num_arrows() {
            return bad("table sizes do not match the domain".into());
        }
        if objects.iter().any(|&x| x >= to.num_objects()) || arrows.iter().any(|&a| a >= to.num_arrows()) {
            return bad("image outside the codomain".into());
        }
        for a in 0..from.num_arrows() {
            let fa = arrows[a];
            if to.src(fa) != objects[from.src(a)] || to.tgt(fa) != objects[from.tgt(a)] {
                return bad(format!("arrow {} is sent to a mismatched arrow", from.label(a)));
            }
        }
        for x in 0..from.num_objects() {
            if arrows[from.unit(x)] != to.unit(objects[x]) {
                return bad(format!("unit at {} is not preserved", from.object_label(x)));
            }
        }
        for a in 0..from.num_arrows() {
            for b in from.arrows_into(from.src(a)) {
                let ab = from.mul(a, b).expect("composable");
                if to.mul(arrows[a], arrows[b]) != Some(arrows[ab]) {
                    return bad(format!(
                        "product {} . {} is not preserved",
                        from.label(a),
                        from.label(b)
                    ));
                }
            }
        }
        Ok(Self { objects, arrows })
    }

    pub fn identity(g: &FiniteGroupoid) -> Self {
        Self {
            objects: (0..g.num_objects()).collect(),
            arrows: (0..g.num_arrows()).collect(),
        }
    }

    /// `other . self`: first `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self {
            objects: self.objects.iter().map(|&x| other.objects[x]).collect(),
            arrows: self.arrows.iter().map(|&a| other.arrows[a]).collect(),
        }
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.objects[x]
    }

    pub fn arr(&self, a: Arr) -> Arr {
        self.arrows[a]
    }
}

/// Checks that `alpha` (one arrow of `h` per object of `g`) is a natural
/// transformation `f => k`: `alpha(x): f(x) -> k(x)` and
/// `alpha(t a) . f(a) = k(a) . alpha(s a)` for every arrow `a`.
pub fn check_hom_two_morphism(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    f: &Homomorphism,
    k: &Homomorphism,
    alpha: &[Arr],
) -> bool {
    if alpha.len() != g.num_objects() || alpha.iter().any(|&a| a >= h.num_arrows()) {
        return false;
    }
    let endpoints_ok = (0..g.num_objects())
        .all(|x| h.src(alpha[x]) == f.obj(x) && h.tgt(alpha[x]) == k.obj(x));
    endpoints_ok
        && (0..g.num_arrows()).all(|a| {
            let lhs = h.mul(alpha[g.tgt(a)], f.arr(a));
            let rhs = h.mul(k.arr(a), alpha[g.src(a)]);
            lhs.is_some() && lhs == rhs
        })
}

/// Natural transformations `f => k` in lexicographic order of their
/// component tables, stopping after `limit` results.
///
/// On each connected component of `g` a transformation is determined by its
/// value at the smallest object, so the search only branches there. The
/// odometer below runs over components ordered by smallest object, which is
/// exactly lexicographic order on the tables.
pub fn natural_transformations(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    f: &Homomorphism,
    k: &Homomorphism,
    limit: usize,
) -> Vec<Vec<Arr>> {
    // Per component: the admissible root choices and the propagated tables.
    let mut per_component: Vec<Vec<Vec<(Obj, Arr)>>> = Vec::new();
    for component in g.orbits() {
        let root = component[0];
        let tree = spanning_arrows(g, root, &component);
        let options: Vec<Vec<(Obj, Arr)>> = h
            .hom(f.obj(root), k.obj(root))
            .filter_map(|a0| extend_from_root(g, h, f, k, root, a0, &tree, &component))
            .collect();
        if options.is_empty() {
            return Vec::new();
        }
        per_component.push(options);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_component.len()];
    'outer: loop {
        if out.len() >= limit {
            break;
        }
        let mut alpha = vec![0; g.num_objects()];
        for (c, &i) in choice.iter().enumerate() {
            for &(x, a) in &per_component[c][i] {
                alpha[x] = a;
            }
        }
        out.push(alpha);
        // Odometer with the first component most significant.
        for c in (0..choice.len()).rev() {
            choice[c] += 1;
            if choice[c] < per_component[c].len() {
                continue 'outer;
            }
            choice[c] = 0;
        }
        break;
    }
    out
}

/// Number of natural transformations `f => k`.
pub fn count_natural_transformations(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    f: &Homomorphism,
    k: &Homomorphism,
) -> u128 {
    g.orbits()
        .iter()
        .map(|component| {
            let root = component[0];
            let tree = spanning_arrows(g, root, component);
            h.hom(f.obj(root), k.obj(root))
                .filter(|&a0| extend_from_root(g, h, f, k, root, a0, &tree, component).is_some())
                .count() as u128
        })
        .product()
}

/// For each non-root object of the component, an arrow from the root to it.
fn spanning_arrows(g: &FiniteGroupoid, root: Obj, component: &[Obj]) -> Vec<(Obj, Arr)> {
    component
        .iter()
        .skip(1)
        .map(|&x| (x, g.hom(root, x).next().expect("objects in one orbit")))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn extend_from_root(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    f: &Homomorphism,
    k: &Homomorphism,
    root: Obj,
    a0: Arr,
    tree: &[(Obj, Arr)],
    component: &[Obj],
) -> Option<Vec<(Obj, Arr)>> {
    // alpha(x) = k(a) . alpha(root) . f(a)^-1 for a: root -> x
    let mut values = vec![(root, a0)];
    for &(x, a) in tree {
        let v = h.mul(h.mul(k.arr(a), a0)?, h.inv(f.arr(a)))?;
        values.push((x, v));
    }
    let mut alpha = vec![usize::MAX; g.num_objects()];
    for &(x, v) in &values {
        alpha[x] = v;
    }
    let ok = component.iter().all(|&x| {
        g.arrows_from(x).all(|a| {
            let lhs = h.mul(alpha[g.tgt(a)], f.arr(a));
            lhs.is_some() && lhs == h.mul(k.arr(a), alpha[x])
        })
    });
    if ok {
        values.sort();
        Some(values)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_inversion() -> (FiniteGroupoid, Homomorphism) {
        let z2 = FiniteGroupoid::z2();
        let f = Homomorphism::new(&z2, &z2, vec![0], vec![0, 1]).unwrap();
        (z2, f)
    }

    #[test]
    fn identity_and_composition() {
        let (z2, f) = z2_inversion();
        assert_eq!(f, Homomorphism::identity(&z2));
        assert_eq!(f.then(&f), f);
    }

    #[test]
    fn rejects_non_functor() {
        let z2 = FiniteGroupoid::z2();
        assert!(Homomorphism::new(&z2, &z2, vec![0], vec![1, 1]).is_err());
        let p = FiniteGroupoid::pair(2);
        // sends (0,1) to a loop while its endpoints differ
        assert!(Homomorphism::new(&p, &p, vec![0, 1], vec![0, 0, 2, 3]).is_err());
    }

    #[test]
    fn z2_self_transformations_are_central_elements() {
        let (z2, f) = z2_inversion();
        let all = natural_transformations(&z2, &z2, &f, &f, usize::MAX);
        assert_eq!(all, vec![vec![0], vec![1]]);
        assert!(check_hom_two_morphism(&z2, &z2, &f, &f, &[1]));
    }

    #[test]
    fn z3_conjugation_is_trivial_but_s3_is_not() {
        let z3 = FiniteGroupoid::cyclic(3);
        let id = Homomorphism::identity(&z3);
        assert_eq!(natural_transformations(&z3, &z3, &id, &id, 10).len(), 3);
        // Pair groupoid: transformations id => id are all units only.
        let p = FiniteGroupoid::pair(3);
        let idp = Homomorphism::identity(&p);
        let all = natural_transformations(&p, &p, &idp, &idp, 10);
        assert_eq!(all.len(), 1);
        assert!(all[0].iter().all(|&a| p.is_unit(a)));
    }

    #[test]
    fn swap_on_pair_groupoid_is_naturally_isomorphic_to_identity() {
        let p = FiniteGroupoid::pair(2);
        let swap_arr = |a: usize| {
            let (i, j) = (a / 2, a % 2);
            (1 - i) * 2 + (1 - j)
        };
        let swap = Homomorphism::new(&p, &p, vec![1, 0], (0..4).map(swap_arr).collect()).unwrap();
        let id = Homomorphism::identity(&p);
        let all = natural_transformations(&p, &p, &id, &swap, 10);
        assert_eq!(all.len(), 1);
        assert!(check_hom_two_morphism(&p, &p, &id, &swap, &all[0]));
        // the wrong direction table is rejected
        assert!(!check_hom_two_morphism(&p, &p, &id, &swap, &[0, 3]));
    }
}
