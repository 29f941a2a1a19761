//! Constructors for the built-in Galois models and for user-supplied ones.
//!
//! A model packages a faithful transitive permutation group together with the
//! meaning of its root labels. The affine model realizes the Galois group of
//! x^n − c for odd n as Z/n ⋊ (Z/n)^× acting by j ↦ α + u·j; the symmetric
//! model is the full symmetric group in its natural action; custom models
//! come from generator closures.

use std::fmt;

use crate::numtheory::{euler_phi, gcd};
use crate::permgroup::{close, Perm, Subgroup};
use crate::{Error, Result};

/// Largest n·φ(n) an affine model may have. Keeps single models in the tens
/// of megabytes; (3,5,7,11) with n = 1155 is deliberately over this line.
pub const AFFINE_ELEMENT_CAP: u64 = 200_000;

/// Largest m accepted by `symmetric_model` (9! = 362880 elements).
pub const SYMMETRIC_DEGREE_CAP: usize = 9;

/// One element (α, u) of Z/n ⋊ (Z/n)^×, with group law
/// (α,u)·(β,v) = (α + u·β, u·v).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineElement {
    pub alpha: u64,
    pub u: u64,
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.u)
    }
}

impl AffineElement {
    pub fn new(alpha: u64, u: u64, n: u64) -> Result<AffineElement> {
        if n == 0 || alpha >= n {
            return Err(Error::domain(format!("alpha = {alpha} is not a residue mod {n}")));
        }
        if u >= n || gcd(u as i64, n as i64) != 1 {
            return Err(Error::domain(format!("u = {u} is not a unit mod {n}")));
        }
        Ok(AffineElement { alpha, u })
    }

    pub fn is_identity(&self) -> bool {
        self.alpha == 0 && self.u == 1
    }
}

/// Semidirect-product group law: (α,u)·(β,v) = (α + u·β, u·v) mod n.
pub fn affine_compose(x: AffineElement, y: AffineElement, n: u64) -> Result<AffineElement> {
    let x = AffineElement::new(x.alpha, x.u, n)?;
    let y = AffineElement::new(y.alpha, y.u, n)?;
    Ok(AffineElement {
        alpha: (x.alpha + x.u * y.alpha) % n,
        u: (x.u * y.u) % n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelFamily {
    /// Z/n ⋊ (Z/n)^× acting on the roots of x^n − c; c is symbolic.
    Affine { n: usize },
    /// Full symmetric group on m points.
    Symmetric { m: usize },
    /// Generator closure supplied by the user.
    Custom { name: String },
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelFamily::Affine { n } => write!(f, "affine(n={n})"),
            ModelFamily::Symmetric { m } => write!(f, "symmetric(m={m})"),
            ModelFamily::Custom { name } => write!(f, "custom({name})"),
        }
    }
}

/// A faithful transitive permutation model of a Galois group, plus label
/// metadata.
#[derive(Debug, Clone)]
pub struct GaloisModel {
    n: usize,
    group: Subgroup,
    /// For affine models: the (α,u) label of each group element, parallel to
    /// `group.elements()`. A bijection by construction.
    labels: Option<Vec<AffineElement>>,
    family: ModelFamily,
    root_meaning: String,
}

impl GaloisModel {
    pub fn root_count(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn family(&self) -> &ModelFamily {
        &self.family
    }

    pub fn root_meaning(&self) -> &str {
        &self.root_meaning
    }

    /// The (α,u) label of a group element, for affine models.
    pub fn label_of(&self, p: &Perm) -> Option<AffineElement> {
        let labels = self.labels.as_ref()?;
        let idx = self.group.elements().binary_search(p).ok()?;
        Some(labels[idx])
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }
}

fn affine_perm(n: u64, e: AffineElement) -> Perm {
    let images: Vec<u16> = (0..n).map(|j| ((e.alpha + e.u * j) % n) as u16).collect();
    Perm::from_raw(images)
}

/// The affine model for odd n ≥ 3: all n·φ(n) maps j ↦ α + u·j on Z/n.
///
/// Only odd n is accepted; for even n the Galois group of x^n − c is not the
/// full semidirect product in general, so constructing it here would be
/// unsound.
pub fn affine_model(n: usize) -> Result<GaloisModel> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::domain(format!(
            "affine model requires odd n ≥ 3 (got {n}); for even n the group \
             Z/n ⋊ (Z/n)^× is not guaranteed to be the Galois group of x^n − c"
        )));
    }
    let nn = n as u64;
    let phi = euler_phi(nn)?;
    if nn * phi > AFFINE_ELEMENT_CAP {
        return Err(Error::resource(format!(
            "affine model n = {n} has n·φ(n) = {} elements, over the cap of {}",
            nn * phi,
            AFFINE_ELEMENT_CAP
        )));
    }
    let mut pairs: Vec<(Perm, AffineElement)> = Vec::with_capacity((nn * phi) as usize);
    for u in 1..nn {
        if gcd(u as i64, nn as i64) != 1 {
            continue;
        }
        for alpha in 0..nn {
            let e = AffineElement { alpha, u };
            pairs.push((affine_perm(nn, e), e));
        }
    }
    pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let (elements, labels): (Vec<Perm>, Vec<AffineElement>) = pairs.into_iter().unzip();
    let group = Subgroup::from_elements_unchecked(elements)?;
    if group.order() as u64 != nn * phi {
        return Err(Error::invariant(format!(
            "affine model n = {n}: expected {} elements, built {}",
            nn * phi,
            group.order()
        )));
    }
    Ok(GaloisModel {
        n,
        group,
        labels: Some(labels),
        family: ModelFamily::Affine { n },
        root_meaning: format!(
            "label j stands for the root a·ζ^j of x^{n} − c, with a = c^(1/{n}) \
             the positive real root and ζ a primitive {n}-th root of unity"
        ),
    })
}

/// The subgroup fixing root j in the affine model: {(j − v·j, v) : v unit}.
/// Equals the brute-force stabilizer of j; has order φ(n).
pub fn affine_point_stabilizer(n: usize, j: usize) -> Result<Subgroup> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::domain(format!("affine model requires odd n ≥ 3 (got {n})")));
    }
    if j >= n {
        return Err(Error::domain(format!("root label {j} out of range for n = {n}")));
    }
    let nn = n as u64;
    let jj = j as u64;
    let mut elements = Vec::new();
    for v in 1..nn {
        if gcd(v as i64, nn as i64) != 1 {
            continue;
        }
        let alpha = (jj + nn * nn - v * jj % nn) % nn; // j − v·j mod n
        elements.push(affine_perm(nn, AffineElement { alpha, u: v }));
    }
    Subgroup::from_elements_unchecked(elements)
}

/// Full symmetric group on m points in its natural action.
pub fn symmetric_model(m: usize) -> Result<GaloisModel> {
    if m < 2 {
        return Err(Error::domain(format!("symmetric model requires m ≥ 2 (got {m})")));
    }
    if m > SYMMETRIC_DEGREE_CAP {
        return Err(Error::resource(format!(
            "symmetric model m = {m} would have m! > {}! elements",
            SYMMETRIC_DEGREE_CAP
        )));
    }
    let group = Subgroup::symmetric(m)?;
    Ok(GaloisModel {
        n: m,
        group,
        labels: None,
        family: ModelFamily::Symmetric { m },
        root_meaning: format!(
            "labels 0..{m} stand for the roots of an irreducible degree-{m} \
             polynomial with full symmetric Galois group"
        ),
    })
}

/// Close the generators and wrap the result as a model. Rejects
/// non-transitive or non-faithful groups: the engine models irreducible
/// polynomials, whose Galois action on roots is transitive.
pub fn custom_model(
    n: usize,
    generators: &[Perm],
    name: &str,
    closure_budget: u64,
) -> Result<GaloisModel> {
    if generators.is_empty() {
        return Err(Error::domain("custom model requires at least one generator"));
    }
    if generators.iter().any(|p| p.degree() != n) {
        return Err(Error::domain(format!("generators must act on {n} points")));
    }
    let group = close(generators, closure_budget)?;
    if !group.is_transitive() {
        return Err(Error::domain(
            "a model stands for an irreducible polynomial, so the action must be \
             transitive; the given generators produce more than one orbit",
        ));
    }
    if !group.is_faithful() {
        return Err(Error::domain("the action must be faithful"));
    }
    Ok(GaloisModel {
        n,
        group,
        labels: None,
        family: ModelFamily::Custom { name: name.to_string() },
        root_meaning: format!("labels 0..{n} are the roots in user-supplied order"),
    })
}

/// Regular cyclic model on n points (the n-cycle closure); convenient for
/// the Galois single-cluster case.
pub fn cyclic_model(n: usize) -> Result<GaloisModel> {
    if n < 1 {
        return Err(Error::domain("cyclic model requires n ≥ 1"));
    }
    let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    custom_model(n, &[Perm::new(images)?], &format!("cyclic{n}"), n as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_model_small() {
        let m = affine_model(3).unwrap();
        assert_eq!(m.group().order(), 6);
        assert_eq!(m.group(), &Subgroup::symmetric(3).unwrap());

        let m = affine_model(9).unwrap();
        assert_eq!(m.group().order(), 54);

        assert!(affine_model(4).is_err());
        assert!(affine_model(1).is_err());
    }

    #[test]
    fn affine_model_105() {
        let m = affine_model(105).unwrap();
        assert_eq!(m.group().order(), 5040);
        assert!(m.group().is_transitive());
        assert!(m.group().is_faithful());
    }

    #[test]
    fn affine_model_over_cap() {
        assert!(matches!(affine_model(1155), Err(Error::Resource(_))));
    }

    #[test]
    fn affine_compose_examples() {
        let id = AffineElement { alpha: 0, u: 1 };
        let y = AffineElement { alpha: 3, u: 7 };
        assert_eq!(affine_compose(id, y, 15).unwrap(), y);

        let x = AffineElement { alpha: 2, u: 4 };
        assert_eq!(
            affine_compose(x, y, 15).unwrap(),
            AffineElement { alpha: 14, u: 13 }
        );

        // oracle: compose the labeled permutations and look up the label
        let m = affine_model(9).unwrap();
        let a = AffineElement { alpha: 6, u: 2 };
        let b = AffineElement { alpha: 6, u: 5 };
        let composed = affine_compose(a, b, 9).unwrap();
        assert_eq!(composed, AffineElement { alpha: 0, u: 1 });
        let pa = affine_perm(9, a);
        let pb = affine_perm(9, b);
        let pc = pa.compose(&pb).unwrap();
        assert_eq!(m.label_of(&pc).unwrap(), composed);

        assert!(affine_compose(AffineElement { alpha: 0, u: 3 }, y, 15).is_err());
    }

    #[test]
    fn label_homomorphism_exhaustive_n15() {
        let m = affine_model(15).unwrap();
        let elems = m.group().elements();
        for p in elems {
            for q in elems {
                let pq = p.compose(q).unwrap();
                let expect =
                    affine_compose(m.label_of(p).unwrap(), m.label_of(q).unwrap(), 15).unwrap();
                assert_eq!(m.label_of(&pq).unwrap(), expect);
            }
        }
    }

    #[test]
    fn point_stabilizer_closed_forms_n9() {
        // j = 0 forces α = 0
        let h0 = affine_point_stabilizer(9, 0).unwrap();
        let m = affine_model(9).unwrap();
        assert_eq!(h0.order(), 6);
        for p in h0.elements() {
            let e = m.label_of(p).unwrap();
            assert_eq!(e.alpha, 0);
        }
        // j = 3: (3 − 3v, v) mod 9
        let h3 = affine_point_stabilizer(9, 3).unwrap();
        let labels: Vec<AffineElement> =
            h3.elements().iter().map(|p| m.label_of(p).unwrap()).collect();
        let mut expect = vec![
            AffineElement { alpha: 0, u: 1 },
            AffineElement { alpha: 6, u: 2 },
            AffineElement { alpha: 0, u: 4 },
            AffineElement { alpha: 6, u: 5 },
            AffineElement { alpha: 0, u: 7 },
            AffineElement { alpha: 6, u: 8 },
        ];
        let mut got = labels.clone();
        got.sort();
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn point_stabilizer_matches_brute_force() {
        for n in (3..=45usize).step_by(2) {
            let m = affine_model(n).unwrap();
            for j in 0..n {
                assert_eq!(
                    affine_point_stabilizer(n, j).unwrap(),
                    m.group().stabilizer(j).unwrap(),
                    "n = {n}, j = {j}"
                );
            }
        }
    }

    #[test]
    fn symmetric_model_examples() {
        assert_eq!(symmetric_model(2).unwrap().group().order(), 2);
        let m = symmetric_model(4).unwrap();
        assert_eq!(m.group().order(), 24);
        assert!(m.group().is_transitive());
        assert!(m.group().is_faithful());
        assert_eq!(m.group().stabilizer(0).unwrap().order(), 6);
        assert!(matches!(symmetric_model(10), Err(Error::Resource(_))));
        assert!(symmetric_model(1).is_err());
    }

    #[test]
    fn custom_model_examples() {
        let c3 = cyclic_model(3).unwrap();
        assert_eq!(c3.group().order(), 3);

        let swap = Perm::new(vec![1, 0]).unwrap();
        let quad = custom_model(2, &[swap], "quadratic", 100).unwrap();
        assert_eq!(quad.group().order(), 2);

        let id4 = Perm::identity(4);
        assert!(matches!(custom_model(4, &[id4], "bad", 100), Err(Error::Domain(_))));
    }
}
