use std::collections::BTreeSet;

use super::Quiver;

/// A path: a trivial `e_v` or a nonempty composable arrow sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub(crate) fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Path {
        let source = quiver.arrow(arrows[0]).source;
        let target = quiver.arrow(*arrows.last().expect("nonempty")).target;
        Path { source, target, arrows }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)] // see is_trivial
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Vertex reached after `l` arrows.
    pub fn vertex_at(&self, quiver: &Quiver, l: usize) -> usize {
        if l == 0 {
            self.source
        } else {
            quiver.arrow(self.arrows[l - 1]).target
        }
    }

    /// Arrows `s..e`; trivial at the vertex reached after `s` when `s == e`.
    pub fn subpath(&self, quiver: &Quiver, s: usize, e: usize) -> Path {
        if s == e {
            Path::trivial(self.vertex_at(quiver, s))
        } else {
            Path { source: self.vertex_at(quiver, s), target: self.vertex_at(quiver, e), arrows: self.arrows[s..e].to_vec() }
        }
    }

    /// Concatenation without a relation check; endpoints must match.
    pub(crate) fn concat(&self, other: &Path) -> Path {
        debug_assert_eq!(self.target, other.source);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Path { source: self.source, target: other.target, arrows }
    }
}

fn successors<'a>(quiver: &'a Quiver, rel: &'a BTreeSet<(usize, usize)>, a: usize) -> impl Iterator<Item = usize> + 'a {
    (0..quiver.arrows().len()).filter(move |&b| quiver.arrow(a).target == quiver.arrow(b).source && !rel.contains(&(a, b)))
}

/// Trivial paths by vertex, then nontrivial ones by length and arrows.
pub(crate) fn enumerate(quiver: &Quiver, rel: &BTreeSet<(usize, usize)>) -> Vec<Path> {
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..quiver.arrows().len()).map(|a| vec![a]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for b in successors(quiver, rel, *p.last().expect("nonempty")) {
                let mut q = p.clone();
                q.push(b);
                next.push(q);
            }
        }
        found.append(&mut frontier);
        frontier = next;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut out: Vec<Path> = (0..quiver.vertices().len()).map(Path::trivial).collect();
    out.extend(found.into_iter().map(|a| Path::from_arrows(quiver, a)));
    out
}

/// Maximal paths in vertex-major order: at each vertex, a trivial path if
/// the vertex has no arrows at all, else the maximal paths starting there.
pub(crate) fn maximal(quiver: &Quiver, rel: &BTreeSet<(usize, usize)>, paths: &[Path]) -> Vec<Path> {
    let n = quiver.arrows().len();
    let extendable_left = |p: &Path| {
        let first = p.arrows[0];
        (0..n).any(|g| quiver.arrow(g).target == p.source && !rel.contains(&(g, first)))
    };
    let extendable_right = |p: &Path| successors(quiver, rel, *p.arrows.last().expect("nonempty")).next().is_some();
    let mut out = Vec::new();
    for v in 0..quiver.vertices().len() {
        let isolated = quiver.arrows().iter().all(|a| a.source != v && a.target != v);
        if isolated {
            out.push(Path::trivial(v));
        }
        out.extend(
            paths
                .iter()
                .filter(|p| !p.is_trivial() && p.source == v && !extendable_left(p) && !extendable_right(p))
                .cloned(),
        );
    }
    out
}
