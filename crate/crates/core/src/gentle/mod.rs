//! Gentle algebras: quivers with length-two relations, the path basis,
//! maximal paths and the algebra poset with its involution.

mod paths;
mod poset;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::report::{Condition, Report};

pub use paths::Path;
pub use poset::AlgebraPoset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are `(name, from, to)` with vertex names.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::Duplicate(v.clone()));
            }
        }
        let find = |n: &str| vertices.iter().position(|v| v == n).ok_or_else(|| Error::Unknown(n.to_string()));
        let mut out = Vec::new();
        let mut names = BTreeSet::new();
        for (name, from, to) in arrows {
            let name = name.as_ref().to_string();
            if !names.insert(name.clone()) {
                return Err(Error::Duplicate(name));
            }
            out.push(Arrow { name, source: find(from.as_ref())?, target: find(to.as_ref())? });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    fn composable(&self, a: usize, b: usize) -> bool {
        self.arrows[a].target == self.arrows[b].source
    }
}

/// Checks the four gentleness conditions. Relations are ordered arrow
/// pairs `(α, β)` meaning `αβ ∈ I`.
///
/// Fails with [`Error::NotFiniteDimensional`] if some oriented cycle
/// avoids every relation.
pub fn validate_gentle(quiver: &Quiver, relations: &BTreeSet<(usize, usize)>) -> Result<Report> {
    let mut report = Report::new();
    let n = quiver.arrows.len();
    for (v, name) in quiver.vertices.iter().enumerate() {
        let out = quiver.arrows.iter().filter(|a| a.source == v).count();
        let inc = quiver.arrows.iter().filter(|a| a.target == v).count();
        if out > 2 || inc > 2 {
            report.push(Condition::ArrowCount, format!("vertex {name}"));
        }
    }
    for &(a, b) in relations {
        if !quiver.composable(a, b) {
            report.push(Condition::RelationLength, format!("{}{}", quiver.arrows[a].name, quiver.arrows[b].name));
        }
    }
    for a in 0..n {
        let name = &quiver.arrows[a].name;
        let after: Vec<usize> = (0..n).filter(|&b| quiver.composable(a, b)).collect();
        let before: Vec<usize> = (0..n).filter(|&g| quiver.composable(g, a)).collect();
        let free_after = after.iter().filter(|&&b| !relations.contains(&(a, b))).count();
        let free_before = before.iter().filter(|&&g| !relations.contains(&(g, a))).count();
        let rel_after = after.iter().filter(|&&b| relations.contains(&(a, b))).count();
        let rel_before = before.iter().filter(|&&g| relations.contains(&(g, a))).count();
        if free_after > 1 {
            report.push(Condition::NonRelationBranching, format!("after {name}"));
        }
        if free_before > 1 {
            report.push(Condition::NonRelationBranching, format!("before {name}"));
        }
        if rel_after > 1 {
            report.push(Condition::RelationBranching, format!("after {name}"));
        }
        if rel_before > 1 {
            report.push(Condition::RelationBranching, format!("before {name}"));
        }
    }
    if let Some(cycle) = free_cycle(quiver, relations) {
        let names: Vec<&str> = cycle.iter().map(|&a| quiver.arrows[a].name.as_str()).collect();
        return Err(Error::NotFiniteDimensional(format!("oriented cycle {} avoids every relation", names.join(""))));
    }
    Ok(report)
}

/// A cycle in the graph `α → β` whenever `αβ` is a nonzero path.
fn free_cycle(quiver: &Quiver, relations: &BTreeSet<(usize, usize)>) -> Option<Vec<usize>> {
    let n = quiver.arrows.len();
    let next: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| quiver.composable(a, b) && !relations.contains(&(a, b))).collect())
        .collect();
    // 0 unvisited, 1 on stack, 2 done
    fn visit(a: usize, next: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[a] = 1;
        stack.push(a);
        for &b in &next[a] {
            if state[b] == 1 {
                let at = stack.iter().position(|&x| x == b).expect("on stack");
                return Some(stack[at..].to_vec());
            }
            if state[b] == 0 {
                if let Some(c) = visit(b, next, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[a] = 2;
        None
    }
    let mut state = vec![0u8; n];
    (0..n).find_map(|a| if state[a] == 0 { visit(a, &next, &mut state, &mut Vec::new()) } else { None })
}

/// A gentle algebra with its derived path data.
#[derive(Clone, Debug, PartialEq)]
pub struct GentleAlgebra {
    quiver: Quiver,
    relations: BTreeSet<(usize, usize)>,
    paths: Vec<Path>,
    maximal: Vec<Path>,
    names: HashMap<String, usize>,
    embedding: HashMap<Path, (usize, usize)>,
}

impl GentleAlgebra {
    /// Builds and validates. `maximal_order`, if given, lists every maximal
    /// path by name and fixes their linear order.
    pub fn new(quiver: Quiver, relations: &[(&str, &str)], maximal_order: Option<&[&str]>) -> Result<GentleAlgebra> {
        let find = |n: &str| quiver.arrow_index(n).ok_or_else(|| Error::Unknown(n.to_string()));
        let mut rel = BTreeSet::new();
        for (a, b) in relations {
            rel.insert((find(a)?, find(b)?));
        }
        let report = validate_gentle(&quiver, &rel)?;
        if !report.is_valid() {
            return Err(Error::Invalid(format!("not gentle:\n{report}")));
        }
        let paths = paths::enumerate(&quiver, &rel);
        let mut maximal = paths::maximal(&quiver, &rel, &paths);
        let mut alg = GentleAlgebra { quiver, relations: rel, paths, maximal: Vec::new(), names: HashMap::new(), embedding: HashMap::new() };
        let names: Vec<String> = alg.paths.iter().map(|p| alg.path_name(p)).collect();
        for (i, name) in names.into_iter().enumerate() {
            if alg.names.insert(name.clone(), i).is_some() {
                return Err(Error::Duplicate(name));
            }
        }
        if let Some(order) = maximal_order {
            let mut chosen = Vec::new();
            for name in order {
                let p = alg.parse_path(name)?;
                if !maximal.contains(&p) || chosen.contains(&p) {
                    return Err(Error::Invalid(format!("`{name}` is not a maximal path or is repeated")));
                }
                chosen.push(p);
            }
            if chosen.len() != maximal.len() {
                return Err(Error::Invalid("maximal_order must list every maximal path".into()));
            }
            maximal = chosen;
        }
        for (m, mp) in maximal.iter().enumerate() {
            for s in 0..mp.len() {
                for e in s + 1..=mp.len() {
                    let sub = mp.subpath(&alg.quiver, s, e);
                    if alg.embedding.insert(sub.clone(), (m, s)).is_some() {
                        return Err(Error::Invalid(format!("path {} embeds twice in maximal paths", alg.path_name(&sub))));
                    }
                }
            }
        }
        alg.maximal = maximal;
        Ok(alg)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &BTreeSet<(usize, usize)> {
        &self.relations
    }

    /// The path basis: trivial paths by vertex, then by length and arrows.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn maximal_paths(&self) -> &[Path] {
        &self.maximal
    }

    pub fn trivial(&self, v: usize) -> Path {
        Path::trivial(v)
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", self.quiver.vertex_name(p.source()))
        } else {
            p.arrows().iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect()
        }
    }

    pub fn parse_path(&self, name: &str) -> Result<Path> {
        self.names.get(name).map(|&i| self.paths[i].clone()).ok_or_else(|| Error::Unknown(format!("path {name}")))
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.names.get(&self.path_name(p)).is_some_and(|&i| &self.paths[i] == p)
    }

    /// `w·w2`, or `None` if a relation appears at the junction.
    pub fn path_mul(&self, w: &Path, w2: &Path) -> Result<Option<Path>> {
        if w.target() != w2.source() {
            return Err(Error::EndpointMismatch(format!("{} · {}", self.path_name(w), self.path_name(w2))));
        }
        if let (Some(&a), Some(&b)) = (w.arrows().last(), w2.arrows().first()) {
            if self.relations.contains(&(a, b)) {
                return Ok(None);
            }
        }
        Ok(Some(w.concat(w2)))
    }

    /// All `(w1, w2)` with `w1·w2 = w`, trivial factors included.
    pub fn decompositions(&self, w: &Path) -> Vec<(Path, Path)> {
        (0..=w.len()).map(|k| (w.subpath(&self.quiver, 0, k), w.subpath(&self.quiver, k, w.len()))).collect()
    }

    /// Unique `(m, start)` with `w` = arrows `start..start+len` of `m`.
    pub fn embedding(&self, w: &Path) -> Option<(usize, usize)> {
        self.embedding.get(w).copied()
    }

    /// Vertex reached after `l` arrows of maximal path `m`.
    pub fn target_at(&self, m: usize, l: usize) -> usize {
        self.maximal[m].vertex_at(&self.quiver, l)
    }

    pub fn algebra_poset(&self) -> Result<AlgebraPoset> {
        AlgebraPoset::new(self)
    }
}

#[cfg(test)]
mod tests;
