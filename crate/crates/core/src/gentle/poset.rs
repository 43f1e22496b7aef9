use std::collections::HashMap;
use std::sync::Arc;

use super::GentleAlgebra;
use crate::error::{Error, Result};
use crate::poset::BasePoset;

/// The poset `𝒴(A)`: elements `(m, ℓ)` for every maximal path `m` and
/// prefix length `0 ≤ ℓ ≤ len(m)`, ordered by `m` then `ℓ`; `σ` pairs the
/// elements sharing a target vertex.
#[derive(Clone, Debug)]
pub struct AlgebraPoset {
    poset: Arc<BasePoset>,
    coords: Vec<(usize, usize)>,
    targets: Vec<usize>,
    index: HashMap<(usize, usize), usize>,
}

impl AlgebraPoset {
    pub(super) fn new(alg: &GentleAlgebra) -> Result<AlgebraPoset> {
        let q = alg.quiver();
        let mut coords = Vec::new();
        let mut targets = Vec::new();
        for (m, mp) in alg.maximal_paths().iter().enumerate() {
            for l in 0..=mp.len() {
                coords.push((m, l));
                targets.push(mp.vertex_at(q, l));
            }
        }
        let starts = |v: usize| alg.maximal_paths().iter().filter(|p| p.source() == v).count();
        let names: Vec<String> = coords
            .iter()
            .map(|&(m, l)| {
                let mp = &alg.maximal_paths()[m];
                if l > 0 {
                    alg.path_name(&mp.subpath(q, 0, l))
                } else if starts(mp.source()) == 1 {
                    format!("e{}", q.vertex_name(mp.source()))
                } else {
                    format!("e_s({})", alg.path_name(mp))
                }
            })
            .collect();
        let mut sigma: Vec<usize> = (0..coords.len()).collect();
        for v in 0..q.vertices().len() {
            let at: Vec<usize> = (0..coords.len()).filter(|&i| targets[i] == v).collect();
            match at.as_slice() {
                [] | [_] => {}
                [a, b] => {
                    sigma[*a] = *b;
                    sigma[*b] = *a;
                }
                _ => {
                    let listed: Vec<&str> = at.iter().map(|&i| names[i].as_str()).collect();
                    return Err(Error::InvolutionArity(format!("{} ({})", q.vertex_name(v), listed.join(", "))));
                }
            }
        }
        let index = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let poset = Arc::new(BasePoset::from_parts(names, sigma)?);
        Ok(AlgebraPoset { poset, coords, targets, index })
    }

    pub fn poset(&self) -> &Arc<BasePoset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Base index of `(m, ℓ)`.
    pub fn base(&self, m: usize, l: usize) -> Option<usize> {
        self.index.get(&(m, l)).copied()
    }

    pub fn coords(&self, base: usize) -> (usize, usize) {
        self.coords[base]
    }

    pub fn target(&self, base: usize) -> usize {
        self.targets[base]
    }

    /// Every element with target vertex `v`.
    pub fn copies(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.coords.len()).filter(move |&i| self.targets[i] == v)
    }
}
