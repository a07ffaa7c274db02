//! Space functions: bottom- and join-preserving self-maps of a lattice.

mod enumerate;
mod scs;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

pub use enumerate::{enumerate_space_functions, for_each_space_function, function_meet_oracle};
pub use scs::{AgentImages, LatticeSource, Scs, ScsFile};

/// Which space-function axiom failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `f(⊥) ≠ ⊥`; carries the offending image.
    Bottom { image: Elem },
    /// `f(a ⊔ b) ≠ f(a) ⊔ f(b)`.
    Join { a: Elem, b: Elem },
}

impl Violation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::Bottom { .. } => "S.1",
            Violation::Join { .. } => "S.2",
        }
    }

    pub fn describe(&self, lattice: &FiniteLattice) -> String {
        match *self {
            Violation::Bottom { image } => format!(
                "S.1 fails: image of bottom `{}` is `{}`",
                lattice.label(lattice.bottom()),
                lattice.label(image)
            ),
            Violation::Join { a, b } => {
                format!("S.2 fails on (`{}`, `{}`)", lattice.label(a), lattice.label(b))
            }
        }
    }
}

/// Checks S.1 and S.2 for a total map given by its images in element order.
///
/// Join preservation is checked on pairs `(a, j)` with `j` join-irreducible,
/// which implies it for all pairs since every element is a join of
/// irreducibles. The first failing pair in `(a, j)` order is returned.
pub fn validate_space_function(lattice: &FiniteLattice, images: &[Elem]) -> Result<()> {
    check_images(lattice, images)?;
    match find_violation(lattice, images) {
        None => Ok(()),
        Some(v) => Err(Error::NotASpaceFunction(v.describe(lattice))),
    }
}

pub(crate) fn check_images(lattice: &FiniteLattice, images: &[Elem]) -> Result<()> {
    if images.len() != lattice.len() {
        return Err(Error::InvalidElement(format!(
            "map has {} images, lattice has {} elements",
            images.len(),
            lattice.len()
        )));
    }
    for &e in images {
        lattice.check(e)?;
    }
    Ok(())
}

/// First violated axiom of a total map, if any.
pub fn find_violation(lattice: &FiniteLattice, images: &[Elem]) -> Option<Violation> {
    let bottom = lattice.bottom();
    if images[bottom.index()] != bottom {
        return Some(Violation::Bottom {
            image: images[bottom.index()],
        });
    }
    let irreducibles = lattice.join_irreducibles();
    for a in lattice.elements() {
        for &j in irreducibles {
            let lhs = images[lattice.join(a, j).index()];
            let rhs = lattice.join(images[a.index()], images[j.index()]);
            if lhs != rhs {
                return Some(Violation::Join { a, b: j });
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub idempotent: bool,
    pub extensive: bool,
}

/// Idempotence (`f ∘ f = f`) and extensiveness (`f(c) ⊒ c`) of a total map.
pub fn classify_images(lattice: &FiniteLattice, images: &[Elem]) -> Classification {
    Classification {
        idempotent: lattice
            .elements()
            .all(|c| images[images[c.index()].index()] == images[c.index()]),
        extensive: lattice.elements().all(|c| lattice.geq(images[c.index()], c)),
    }
}

/// A validated space function over a shared lattice.
#[derive(Clone)]
pub struct SpaceFunction {
    lattice: Arc<FiniteLattice>,
    images: Vec<Elem>,
}

impl PartialEq for SpaceFunction {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && same_lattice(&self.lattice, &other.lattice)
    }
}

impl Eq for SpaceFunction {}

impl fmt::Debug for SpaceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.lattice
                    .elements()
                    .map(|c| (self.lattice.label(c), self.lattice.label(self.apply(c)))),
            )
            .finish()
    }
}

pub(crate) fn same_lattice(a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SpaceFunction {
    pub fn new(lattice: Arc<FiniteLattice>, images: Vec<Elem>) -> Result<Self> {
        validate_space_function(&lattice, &images)?;
        Ok(SpaceFunction { lattice, images })
    }

    /// Builds from a closure over elements.
    pub fn from_fn(lattice: Arc<FiniteLattice>, f: impl Fn(Elem) -> Elem) -> Result<Self> {
        let images = lattice.elements().map(f).collect();
        Self::new(lattice, images)
    }

    /// Builds from image labels listed in element order.
    pub fn from_labels<S: AsRef<str>>(lattice: Arc<FiniteLattice>, labels: &[S]) -> Result<Self> {
        let images = labels
            .iter()
            .map(|s| lattice.elem(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, images)
    }

    pub(crate) fn trusted(lattice: Arc<FiniteLattice>, images: Vec<Elem>) -> Self {
        debug_assert!(find_violation(&lattice, &images).is_none());
        SpaceFunction { lattice, images }
    }

    pub fn identity(lattice: Arc<FiniteLattice>) -> Self {
        let images = lattice.elements().collect();
        SpaceFunction { lattice, images }
    }

    /// `λ⊥`: everything goes to bottom.
    pub fn bottom_space(lattice: Arc<FiniteLattice>) -> Self {
        let images = vec![lattice.bottom(); lattice.len()];
        SpaceFunction { lattice, images }
    }

    /// `λ⊤`: bottom to bottom, everything else to top.
    pub fn top_space(lattice: Arc<FiniteLattice>) -> Self {
        let (bottom, top) = (lattice.bottom(), lattice.top());
        let images = lattice
            .elements()
            .map(|c| if c == bottom { bottom } else { top })
            .collect();
        SpaceFunction { lattice, images }
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, c: Elem) -> Elem {
        self.images[c.index()]
    }

    pub fn classify(&self) -> Classification {
        classify_images(&self.lattice, &self.images)
    }

    /// Point-wise order: `self(c) ⊑ other(c)` for every `c`.
    pub fn leq(&self, other: &SpaceFunction) -> Result<bool> {
        if !same_lattice(&self.lattice, &other.lattice) {
            return Err(Error::LatticeMismatch);
        }
        Ok(self
            .lattice
            .elements()
            .all(|c| self.lattice.leq(self.apply(c), other.apply(c))))
    }

    /// `⊔{e | f(e) ⊑ c}`.
    pub fn projection(&self, c: Elem) -> Result<Elem> {
        let c = self.lattice.check(c)?;
        Ok(project(&self.lattice, &self.images, c))
    }

    /// `"x→y"` entries in element order.
    pub fn arrows(&self) -> Vec<String> {
        self.lattice
            .elements()
            .map(|c| format!("{}→{}", self.lattice.label(c), self.lattice.label(self.apply(c))))
            .collect()
    }

    pub fn image_labels(&self) -> Vec<String> {
        self.images.iter().map(|&e| self.lattice.label(e).to_string()).collect()
    }
}

/// Galois lower adjoint of a monotone map given by its images.
pub(crate) fn project(lattice: &FiniteLattice, images: &[Elem], c: Elem) -> Elem {
    lattice.join_iter(lattice.elements().filter(|&e| lattice.leq(images[e.index()], c)))
}

/// `f ⊑ g` point-wise.
pub fn function_leq(f: &SpaceFunction, g: &SpaceFunction) -> Result<bool> {
    f.leq(g)
}

/// `πf(c)`: the join of every `e` with `f(e) ⊑ c`.
pub fn agent_projection(f: &SpaceFunction, c: Elem) -> Result<Elem> {
    f.projection(c)
}

fn common_lattice(fs: &[&SpaceFunction]) -> Result<Arc<FiniteLattice>> {
    let first = fs
        .first()
        .ok_or_else(|| Error::Unsupported("empty function list".into()))?;
    if fs.iter().any(|f| !same_lattice(&f.lattice, &first.lattice)) {
        return Err(Error::LatticeMismatch);
    }
    Ok(first.lattice.clone())
}

/// Point-wise join; always a space function.
pub fn pointwise_join(fs: &[&SpaceFunction]) -> Result<SpaceFunction> {
    let lattice = common_lattice(fs)?;
    let images = lattice
        .elements()
        .map(|c| lattice.join_iter(fs.iter().map(|f| f.apply(c))))
        .collect();
    Ok(SpaceFunction::trusted(lattice, images))
}

/// Point-wise meet as a raw map. Usually *not* a space function.
pub fn pointwise_meet_raw(fs: &[&SpaceFunction]) -> Result<Vec<Elem>> {
    let lattice = common_lattice(fs)?;
    Ok(lattice
        .elements()
        .map(|c| lattice.meet_iter(fs.iter().map(|f| f.apply(c))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{knowledge6, m2, m3};

    fn m2_agents() -> (Arc<FiniteLattice>, SpaceFunction, SpaceFunction) {
        let l = Arc::new(m2());
        let s1 = SpaceFunction::from_labels(l.clone(), &["p∨¬p", "¬p", "p", "p∧¬p"]).unwrap();
        let s2 = SpaceFunction::from_labels(l.clone(), &["p∨¬p", "p∧¬p", "¬p", "p∧¬p"]).unwrap();
        (l, s1, s2)
    }

    #[test]
    fn identity_and_figure_functions_validate() {
        let (l, _, _) = m2_agents();
        assert!(validate_space_function(&l, &SpaceFunction::identity(l.clone()).images).is_ok());
    }

    #[test]
    fn bottom_must_map_to_bottom() {
        let l = m2();
        let p = l.elem("p").unwrap();
        let images = vec![p, p, l.elem("¬p").unwrap(), l.top()];
        assert_eq!(find_violation(&l, &images), Some(Violation::Bottom { image: p }));
        let err = validate_space_function(&l, &images).unwrap_err();
        assert!(err.to_string().contains("S.1"));
    }

    #[test]
    fn short_or_out_of_range_maps_are_invalid_elements() {
        let l = m2();
        assert!(matches!(
            validate_space_function(&l, &[l.bottom()]),
            Err(Error::InvalidElement(_))
        ));
        assert!(matches!(
            validate_space_function(&l, &[Elem(0), Elem(1), Elem(2), Elem(7)]),
            Err(Error::InvalidElement(_))
        ));
    }

    #[test]
    fn classification() {
        let l = Arc::new(m3());
        let id = SpaceFunction::identity(l.clone());
        let c = id.classify();
        assert!(c.idempotent && c.extensive);
        let bot = SpaceFunction::bottom_space(l.clone()).classify();
        assert!(bot.idempotent && !bot.extensive);
    }

    #[test]
    fn knowledge_figure_map_is_idempotent_extensive_but_not_monotone() {
        let l = knowledge6();
        let images: Vec<Elem> = ["true", "p", "p", "q", "p∧q", "false"]
            .iter()
            .map(|s| l.elem(s).unwrap())
            .collect();
        let c = classify_images(&l, &images);
        assert!(c.idempotent && c.extensive);
        // p∨q ⊑ q yet the map sends p∨q to p, which is not below q
        let v = find_violation(&l, &images).unwrap();
        assert_eq!(v.axiom(), "S.2");
    }

    #[test]
    fn order_and_extremes() {
        let (l, s1, s2) = m2_agents();
        let bot = SpaceFunction::bottom_space(l.clone());
        let top = SpaceFunction::top_space(l.clone());
        for f in [&s1, &s2, &bot, &top] {
            assert!(bot.leq(f).unwrap());
            assert!(f.leq(&top).unwrap());
            assert!(f.leq(f).unwrap());
        }
        assert!(!s1.leq(&s2).unwrap());
        let other = SpaceFunction::identity(Arc::new(m3()));
        assert!(matches!(s1.leq(&other), Err(Error::LatticeMismatch)));
    }

    #[test]
    fn pointwise_join_of_figure_functions() {
        let (l, s1, s2) = m2_agents();
        let j = pointwise_join(&[&s1, &s2]).unwrap();
        assert_eq!(j.image_labels(), ["p∨¬p", "p∧¬p", "p∧¬p", "p∧¬p"]);
        assert!(validate_space_function(&l, j.images()).is_ok());
        assert_eq!(pointwise_join(&[&s1]).unwrap(), s1);
        let bot = SpaceFunction::bottom_space(l);
        assert_eq!(pointwise_join(&[&bot, &s2]).unwrap(), s2);
    }

    #[test]
    fn pointwise_meet_is_not_a_space_function() {
        let (l, s1, s2) = m2_agents();
        let raw = pointwise_meet_raw(&[&s1, &s2]).unwrap();
        let lbl: Vec<&str> = raw.iter().map(|&e| l.label(e)).collect();
        assert_eq!(lbl, ["p∨¬p", "¬p", "p∨¬p", "p∧¬p"]);
        let v = find_violation(&l, &raw).unwrap();
        assert_eq!(
            v,
            Violation::Join {
                a: l.elem("p").unwrap(),
                b: l.elem("¬p").unwrap()
            }
        );
        let top = SpaceFunction::top_space(l.clone());
        assert_eq!(pointwise_meet_raw(&[&top, &s1]).unwrap(), s1.images());
        assert_eq!(pointwise_meet_raw(&[&s2]).unwrap(), s2.images());
    }

    #[test]
    fn projections_of_figure_functions() {
        let (l, s1, s2) = m2_agents();
        let p = l.elem("p").unwrap();
        assert_eq!(l.label(agent_projection(&s1, p).unwrap()), "¬p");
        assert_eq!(agent_projection(&s2, p).unwrap(), l.bottom());
        for f in [&s1, &s2] {
            assert_eq!(agent_projection(f, l.top()).unwrap(), l.top());
        }
        // dashed and dotted arrows of the projection picture
        let pi1: Vec<&str> = l.elements().map(|c| l.label(s1.projection(c).unwrap())).collect();
        assert_eq!(pi1, ["p∨¬p", "¬p", "p", "p∧¬p"]);
        let pi2: Vec<&str> = l.elements().map(|c| l.label(s2.projection(c).unwrap())).collect();
        assert_eq!(pi2, ["p∨¬p", "p∨¬p", "¬p", "p∧¬p"]);
    }
}
