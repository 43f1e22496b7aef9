//! Finite linearly ordered base posets with an involution, and the graded
//! elements `[u, i]` of `Y × Z` under the anti-lexicographic order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A finite chain `y_0 < y_1 < …` with an involution `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoset {
    names: Vec<String>,
    sigma: Vec<usize>,
    index: HashMap<String, usize>,
}

impl BasePoset {
    /// `pairs` lists σ-orbits of size two; every other element is fixed.
    pub fn new<S: AsRef<str>>(names: &[S], pairs: &[(S, S)]) -> Result<BasePoset> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Duplicate(n.clone()));
            }
        }
        let mut sigma: Vec<usize> = (0..names.len()).collect();
        let mut set = vec![false; names.len()];
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index.get(a).ok_or_else(|| Error::Unknown(a.to_string()))?;
            let j = *index.get(b).ok_or_else(|| Error::Unknown(b.to_string()))?;
            let consistent = (!set[i] || sigma[i] == j) && (!set[j] || sigma[j] == i);
            if !consistent {
                return Err(Error::NotInvolution(format!("{a} and {b} are paired twice")));
            }
            sigma[i] = j;
            sigma[j] = i;
            set[i] = true;
            set[j] = true;
        }
        BasePoset::from_parts(names, sigma)
    }

    /// Builds from element names and the involution as an index permutation.
    pub fn from_parts(names: Vec<String>, sigma: Vec<usize>) -> Result<BasePoset> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Duplicate(n.clone()));
            }
        }
        if sigma.len() != names.len() {
            return Err(Error::NotInvolution("wrong length".into()));
        }
        for (i, &j) in sigma.iter().enumerate() {
            if j >= names.len() || sigma[j] != i {
                return Err(Error::NotInvolution(format!("σ²({}) ≠ {}", names[i], names[i])));
            }
        }
        Ok(BasePoset { names, sigma, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, base: usize) -> &str {
        &self.names[base]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn sigma(&self, base: usize) -> usize {
        self.sigma[base]
    }

    /// Pairs `(u, σ(u))` with `u < σ(u)`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sigma
            .iter()
            .enumerate()
            .filter(|(i, j)| i < *j)
            .map(|(i, &j)| (i, j))
    }

    pub fn element(&self, name: &str, degree: i64) -> Result<GradedElement> {
        let base = self.index_of(name).ok_or_else(|| Error::Unknown(name.to_string()))?;
        Ok(GradedElement { degree, base })
    }

    pub fn contains(&self, x: GradedElement) -> bool {
        x.base < self.names.len()
    }

    /// Anti-lexicographic comparison: degree first, then base position.
    pub fn compare(&self, a: GradedElement, b: GradedElement) -> Result<Ordering> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::ForeignElement);
        }
        Ok(a.cmp(&b))
    }

    pub fn involution(&self, a: GradedElement) -> GradedElement {
        GradedElement { degree: a.degree, base: self.sigma[a.base] }
    }

    pub fn label(&self, x: GradedElement) -> String {
        format!("[{},{}]", self.names[x.base], x.degree)
    }
}

/// The element `[u, i]`. Field order makes the derived `Ord` anti-lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedElement {
    pub degree: i64,
    pub base: usize,
}

impl GradedElement {
    pub const MIN: GradedElement = GradedElement { degree: i64::MIN, base: 0 };
    pub const MAX: GradedElement = GradedElement { degree: i64::MAX, base: usize::MAX };

    pub fn new(base: usize, degree: i64) -> GradedElement {
        GradedElement { degree, base }
    }

    /// Same base, degree moved by `k`.
    pub fn offset(self, k: i64) -> Result<GradedElement> {
        let degree = self.degree.checked_add(k).ok_or(Error::DegreeOverflow)?;
        Ok(GradedElement { degree, base: self.base })
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[#{},{}]", self.base, self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uavb() -> BasePoset {
        BasePoset::new(&["u", "a", "v", "b"], &[("u", "v"), ("a", "b")]).unwrap()
    }

    #[test]
    fn degree_dominates() {
        let p = uavb();
        for u in ["u", "a", "v", "b"] {
            for v in ["u", "a", "v", "b"] {
                let x = p.element(u, 0).unwrap();
                let y = p.element(v, 1).unwrap();
                assert_eq!(p.compare(x, y).unwrap(), Ordering::Less);
            }
        }
    }

    #[test]
    fn base_breaks_ties() {
        let p = uavb();
        let u1 = p.element("u", 1).unwrap();
        let a1 = p.element("a", 1).unwrap();
        assert_eq!(p.compare(u1, a1).unwrap(), Ordering::Less);
        assert_eq!(p.compare(a1, a1).unwrap(), Ordering::Equal);
    }

    #[test]
    fn foreign_elements_rejected() {
        let p = uavb();
        let x = GradedElement::new(9, 0);
        assert_eq!(p.compare(x, x), Err(Error::ForeignElement));
    }

    #[test]
    fn involution_maps_base() {
        let p = uavb();
        let u7 = p.element("u", 7).unwrap();
        assert_eq!(p.involution(u7), p.element("v", 7).unwrap());
        let a2 = p.element("a", 2).unwrap();
        assert_eq!(p.involution(p.involution(a2)), a2);
        let q = BasePoset::new(&["w"], &[]).unwrap();
        let w = q.element("w", 3).unwrap();
        assert_eq!(q.involution(w), w);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(BasePoset::new(&["u", "u"], &[]), Err(Error::Duplicate(_))));
        assert!(matches!(
            BasePoset::new(&["u", "v", "w"], &[("u", "v"), ("v", "w")]),
            Err(Error::NotInvolution(_))
        ));
        assert!(matches!(BasePoset::new(&["u"], &[("u", "z")]), Err(Error::Unknown(_))));
        assert!(BasePoset::from_parts(vec!["a".into(), "b".into()], vec![1, 1]).is_err());
    }

    #[test]
    fn shift_overflow() {
        let x = GradedElement::new(0, i64::MIN);
        assert_eq!(x.offset(-1), Err(Error::DegreeOverflow));
        assert_eq!(x.offset(1).unwrap().degree, i64::MIN + 1);
    }

    proptest! {
        #[test]
        fn compare_is_a_strict_total_order(
            elems in prop::collection::vec((0usize..4, -3i64..4), 1..9)
        ) {
            let p = uavb();
            let xs: Vec<GradedElement> = elems.iter().map(|&(b, d)| GradedElement::new(b, d)).collect();
            for &a in &xs {
                for &b in &xs {
                    let ab = p.compare(a, b).unwrap();
                    prop_assert_eq!(ab, p.compare(b, a).unwrap().reverse());
                    prop_assert_eq!(ab == Ordering::Equal, a == b);
                    let expected = (a.degree, a.base).cmp(&(b.degree, b.base));
                    prop_assert_eq!(ab, expected);
                    for &c in &xs {
                        if ab == Ordering::Less && p.compare(b, c).unwrap() == Ordering::Less {
                            prop_assert_eq!(p.compare(a, c).unwrap(), Ordering::Less);
                        }
                    }
                }
            }
        }

        #[test]
        fn involution_is_graded_and_of_order_two(b in 0usize..4, d in -5i64..5) {
            let p = uavb();
            let x = GradedElement::new(b, d);
            let y = p.involution(x);
            prop_assert_eq!(y.degree, d);
            prop_assert_eq!(p.involution(y), x);
        }
    }
}
