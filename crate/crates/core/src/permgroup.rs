//! Explicit finite permutation groups.
//!
//! Subgroups are stored as full element sets in a canonical order
//! (lexicographic on image sequences), so subgroup equality, intersection and
//! chain deduplication are exact set operations. This trades asymptotics for
//! auditability; every group in scope has at most a few hundred thousand
//! elements.
//!
//! Composition convention, fixed repo-wide: `compose(p, q)` applies `q`
//! first, i.e. the result maps `i ↦ p(q(i))`.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// A bijection on root labels {0, …, n−1}; one Galois automorphism.
///
/// Images are stored as u16, which caps the degree at 65535 — far beyond the
/// enumeration budgets anyway.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u16>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl Perm {
    /// Build from an image sequence; position i holds the image of root i.
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n == 0 {
            return Err(Error::domain("permutation must have positive degree"));
        }
        if n > u16::MAX as usize {
            return Err(Error::domain(format!("degree {n} exceeds supported maximum")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::domain(format!("image {x} out of range for degree {n}")));
            }
            if seen[x] {
                return Err(Error::domain(format!("image {x} repeated; not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Perm {
        Perm { images }
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n as u16).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// p ∘ q with q applied first: (p∘q)(i) = p(q(i)).
    pub fn compose(&self, q: &Perm) -> Result<Perm> {
        if self.degree() != q.degree() {
            return Err(Error::domain(format!(
                "compose: degree mismatch ({} vs {})",
                self.degree(),
                q.degree()
            )));
        }
        let images = q.images.iter().map(|&x| self.images[x as usize]).collect();
        Ok(Perm { images })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm { images: inv }
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.images[i] as usize == i
    }
}

/// An explicit subgroup of the symmetric group on {0, …, n−1}.
///
/// Under the Galois correspondence each `Subgroup` stands for exactly one
/// intermediate field of the splitting field.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    degree: usize,
    /// Sorted ascending (lexicographic on image sequences), no duplicates.
    elements: Vec<Perm>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(degree={}, order={})", self.degree, self.elements.len())
    }
}

impl Subgroup {
    /// Build from an element list, checking the subgroup axioms: identity
    /// present, closed under composition and inverse. Quadratic in the
    /// element count; intended for user-supplied sets, not for the large
    /// groups produced by the model constructors (those are closed by
    /// construction).
    pub fn new(elements: Vec<Perm>) -> Result<Subgroup> {
        let group = Subgroup::from_elements_unchecked(elements)?;
        group.check_closed()?;
        Ok(group)
    }

    /// Build from elements known to form a subgroup (stabilizers,
    /// intersections, generator closures). Sorts and dedups, checks degrees
    /// and the identity, but skips the quadratic closure check.
    pub(crate) fn from_elements_unchecked(mut elements: Vec<Perm>) -> Result<Subgroup> {
        let degree = match elements.first() {
            Some(p) => p.degree(),
            None => return Err(Error::domain("subgroup must be nonempty")),
        };
        if elements.iter().any(|p| p.degree() != degree) {
            return Err(Error::domain("subgroup elements must share one degree"));
        }
        elements.sort_unstable();
        elements.dedup();
        if !elements[0].is_identity() {
            return Err(Error::invariant("subgroup does not contain the identity"));
        }
        Ok(Subgroup { degree, elements })
    }

    /// Full closure check; cost O(|H|² log |H|).
    pub fn check_closed(&self) -> Result<()> {
        for p in &self.elements {
            if !self.contains(&p.inverse()) {
                return Err(Error::domain(format!("set not closed under inverse at {p}")));
            }
            for q in &self.elements {
                let pq = p.compose(q)?;
                if !self.contains(&pq) {
                    return Err(Error::domain(format!(
                        "set not closed under composition at {p} * {q}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(degree: usize) -> Subgroup {
        Subgroup {
            degree,
            elements: vec![Perm::identity(degree)],
        }
    }

    /// All m! permutations of m points.
    pub fn symmetric(m: usize) -> Result<Subgroup> {
        if m == 0 {
            return Err(Error::domain("symmetric group needs at least one point"));
        }
        let mut elements = Vec::new();
        let mut current: Vec<u16> = (0..m as u16).collect();
        // Heap's algorithm, iterative form.
        let mut c = vec![0usize; m];
        elements.push(Perm::from_raw(current.clone()));
        let mut i = 0;
        while i < m {
            if c[i] < i {
                if i % 2 == 0 {
                    current.swap(0, i);
                } else {
                    current.swap(c[i], i);
                }
                elements.push(Perm::from_raw(current.clone()));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        Subgroup::from_elements_unchecked(elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    /// Least nontrivial element in the canonical order, if any.
    pub fn least_nontrivial(&self) -> Option<&Perm> {
        self.elements.iter().find(|p| !p.is_identity())
    }

    /// {g ∈ G : g(i) = i} — the subgroup fixing one root, i.e. the field
    /// generated by that root.
    pub fn stabilizer(&self, i: usize) -> Result<Subgroup> {
        self.check_label(i)?;
        let elements: Vec<Perm> = self.elements.iter().filter(|p| p.fixes(i)).cloned().collect();
        Subgroup::from_elements_unchecked(elements)
    }

    /// Intersection of the single-root stabilizers over S; for empty S the
    /// whole group.
    pub fn pointwise_stabilizer(&self, labels: &[usize]) -> Result<Subgroup> {
        for &i in labels {
            self.check_label(i)?;
        }
        if labels.is_empty() {
            return Ok(self.clone());
        }
        let elements: Vec<Perm> = self
            .elements
            .iter()
            .filter(|p| labels.iter().all(|&i| p.fixes(i)))
            .cloned()
            .collect();
        Subgroup::from_elements_unchecked(elements)
    }

    /// Set intersection; automatically a subgroup.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.degree != other.degree {
            return Err(Error::domain(format!(
                "intersect: degree mismatch ({} vs {})",
                self.degree, other.degree
            )));
        }
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let elements: Vec<Perm> = small
            .elements
            .iter()
            .filter(|p| large.contains(p))
            .cloned()
            .collect();
        Subgroup::from_elements_unchecked(elements)
    }

    /// Labels fixed by every element; the roots lying in the fixed field.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&i| self.elements.iter().all(|p| p.fixes(i)))
            .collect()
    }

    /// [G : H]. By Lagrange the division is exact; a remainder means the
    /// inputs were not actually nested subgroups.
    pub fn index_of(&self, h: &Subgroup) -> Result<u64> {
        if !h.is_subgroup_of(self) {
            return Err(Error::domain("index: H is not a subgroup of G"));
        }
        if self.order() % h.order() != 0 {
            return Err(Error::invariant(format!(
                "|H| = {} does not divide |G| = {}",
                h.order(),
                self.order()
            )));
        }
        Ok((self.order() / h.order()) as u64)
    }

    pub fn orbit(&self, i: usize) -> Result<Vec<usize>> {
        self.check_label(i)?;
        let mut seen = vec![false; self.degree];
        for p in &self.elements {
            seen[p.apply(i)] = true;
        }
        Ok((0..self.degree).filter(|&j| seen[j]).collect())
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return false;
        }
        self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    pub fn is_faithful(&self) -> bool {
        self.elements.iter().filter(|p| p.is_identity()).count() == 1
            && self
                .elements
                .iter()
                .all(|p| p.is_identity() || (0..self.degree).any(|i| !p.fixes(i)))
    }

    fn check_label(&self, i: usize) -> Result<()> {
        if i >= self.degree {
            return Err(Error::domain(format!(
                "root label {i} out of range for degree {}",
                self.degree
            )));
        }
        Ok(())
    }
}

/// Smallest subgroup containing the generators, by breadth-first closure
/// under right composition. Aborts with a resource error once the element
/// count exceeds `budget`.
pub fn close(generators: &[Perm], budget: u64) -> Result<Subgroup> {
    let degree = match generators.first() {
        Some(p) => p.degree(),
        None => return Err(Error::domain("close: at least one generator required")),
    };
    if generators.iter().any(|p| p.degree() != degree) {
        return Err(Error::domain("close: generators must share one degree"));
    }
    let mut set: BTreeSet<Perm> = BTreeSet::new();
    set.insert(Perm::identity(degree));
    let mut frontier: Vec<Perm> = vec![Perm::identity(degree)];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let pg = p.compose(g)?;
            if set.insert(pg.clone()) {
                if set.len() as u64 > budget {
                    return Err(Error::resource(format!(
                        "closure exceeded budget of {budget} elements ({} found so far)",
                        set.len()
                    )));
                }
                frontier.push(pg);
            }
        }
    }
    Subgroup::from_elements_unchecked(set.into_iter().collect())
}

/// Parse the plain-text generator format: one permutation per line as
/// comma-separated images, blank lines and `#` comments ignored, optional
/// leading `n=<degree>` line.
pub fn parse_generator_file(text: &str) -> Result<(Option<usize>, Vec<Perm>)> {
    let mut degree: Option<usize> = None;
    let mut perms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            if degree.is_some() || !perms.is_empty() {
                return Err(Error::domain(format!(
                    "line {}: n=<degree> must be the first non-comment line",
                    lineno + 1
                )));
            }
            degree = Some(rest.trim().parse::<usize>().map_err(|e| {
                Error::domain(format!("line {}: bad degree: {e}", lineno + 1))
            })?);
            continue;
        }
        let images: Vec<usize> = line
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::domain(format!("line {}: bad image: {e}", lineno + 1)))
            })
            .collect::<Result<_>>()?;
        if let Some(n) = degree {
            if images.len() != n {
                return Err(Error::domain(format!(
                    "line {}: permutation has {} images, expected degree {n}",
                    lineno + 1,
                    images.len()
                )));
            }
        }
        perms.push(Perm::new(images)?);
    }
    Ok((degree, perms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let p = perm(&[1, 2, 0]);
        let id = Perm::identity(3);
        assert_eq!(id.compose(&p).unwrap(), p);
        // inverse pair
        let q = perm(&[2, 0, 1]);
        assert!(p.compose(&q).unwrap().is_identity());
        // direct evaluation: i ↦ p(q(i))
        let p = perm(&[1, 0, 2]);
        let q = perm(&[0, 2, 1]);
        assert_eq!(p.compose(&q).unwrap(), perm(&[1, 2, 0]));
        // degree mismatch
        assert!(p.compose(&Perm::identity(4)).is_err());
    }

    #[test]
    fn perm_validation() {
        assert!(Perm::new(vec![]).is_err());
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(Perm::new(vec![0, 2]).is_err());
    }

    #[test]
    fn close_examples() {
        let g = close(&[Perm::identity(4)], 1000).unwrap();
        assert_eq!(g.order(), 1);

        let g = close(&[perm(&[1, 2, 3, 0])], 1000).unwrap();
        assert_eq!(g.order(), 4);

        // n-cycle plus a transposition generates all of S_n; frozen from the
        // brute-force closure.
        let g = close(&[perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])], 1000).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g, Subgroup::symmetric(4).unwrap());
    }

    #[test]
    fn close_budget() {
        let err = close(&[perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])], 10).unwrap_err();
        assert!(matches!(err, crate::Error::Resource(_)));
    }

    #[test]
    fn stabilizer_in_s3() {
        let s3 = Subgroup::symmetric(3).unwrap();
        let h = s3.stabilizer(0).unwrap();
        assert_eq!(h.order(), 2);
        assert!(h.contains(&perm(&[0, 2, 1])));

        let t = Subgroup::trivial(5);
        assert_eq!(t.stabilizer(3).unwrap(), t);
        assert!(s3.stabilizer(7).is_err());
    }

    #[test]
    fn pointwise_stabilizer_empty_set_is_whole_group() {
        let s4 = Subgroup::symmetric(4).unwrap();
        assert_eq!(s4.pointwise_stabilizer(&[]).unwrap(), s4);
    }

    #[test]
    fn intersect_examples() {
        let s4 = Subgroup::symmetric(4).unwrap();
        let h = s4.stabilizer(0).unwrap();
        assert_eq!(h.intersect(&h).unwrap(), h);
        let t = Subgroup::trivial(4);
        assert_eq!(h.intersect(&t).unwrap(), t);
        assert!(h.intersect(&Subgroup::trivial(3)).is_err());
    }

    #[test]
    fn fixed_points_examples() {
        assert_eq!(Subgroup::trivial(5).fixed_points(), vec![0, 1, 2, 3, 4]);
        assert!(Subgroup::symmetric(3).unwrap().fixed_points().is_empty());
    }

    #[test]
    fn index_examples() {
        let s4 = Subgroup::symmetric(4).unwrap();
        assert_eq!(s4.index_of(&s4).unwrap(), 1);
        assert_eq!(s4.index_of(&s4.stabilizer(1).unwrap()).unwrap(), 4);
        let s3 = Subgroup::symmetric(3).unwrap();
        assert!(s4.index_of(&s3).is_err());
    }

    #[test]
    fn transitive_and_faithful() {
        assert!(Subgroup::trivial(1).is_transitive());
        assert!(Subgroup::trivial(1).is_faithful());
        assert!(!Subgroup::trivial(2).is_transitive());
        let s4 = Subgroup::symmetric(4).unwrap();
        assert!(s4.is_transitive());
        assert!(s4.is_faithful());
    }

    #[test]
    fn subgroup_new_rejects_unclosed_sets() {
        let bad = vec![Perm::identity(3), perm(&[1, 2, 0])];
        assert!(Subgroup::new(bad).is_err());
        let good = vec![Perm::identity(3), perm(&[1, 2, 0]), perm(&[2, 0, 1])];
        assert_eq!(Subgroup::new(good).unwrap().order(), 3);
    }

    #[test]
    fn generator_file_parsing() {
        let text = "# a comment\nn=4\n1,2,3,0\n\n1,0,2,3 # trailing\n";
        let (n, perms) = parse_generator_file(text).unwrap();
        assert_eq!(n, Some(4));
        assert_eq!(perms, vec![perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])]);

        assert!(parse_generator_file("n=3\n0,1").is_err());
        assert!(parse_generator_file("0,1\nn=2").is_err());
        assert_eq!(parse_generator_file("").unwrap(), (None, vec![]));
    }

    #[test]
    fn orbit_stabilizer_on_s4() {
        let s4 = Subgroup::symmetric(4).unwrap();
        for i in 0..4 {
            let orbit = s4.orbit(i).unwrap();
            let stab = s4.stabilizer(i).unwrap();
            assert_eq!(orbit.len() * stab.order(), s4.order());
        }
    }
}
