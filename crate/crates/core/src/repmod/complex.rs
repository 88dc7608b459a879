use super::{CatModule, ModuleError, ModuleHom, Side};

/// Modules `T_0, ..., T_n` and maps `d_t: T_t -> T_{t+1}`, with zero
/// modules implicitly attached at both ends.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    side: Side,
    terms: Vec<CatModule>,
    maps: Vec<ModuleHom>,
}

/// Homology at one position, per object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionHomology {
    pub position: usize,
    pub dims: Vec<usize>,
}

impl PositionHomology {
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    pub positions: Vec<PositionHomology>,
    /// Positions `t` where `d_t ∘ d_{t-1} ≠ 0`.
    pub not_a_complex: Vec<usize>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.not_a_complex.is_empty() && self.positions.iter().all(PositionHomology::is_zero)
    }

    /// Positions with nonzero homology.
    pub fn failures(&self) -> Vec<usize> {
        self.positions
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.position)
            .collect()
    }
}

impl ChainComplex {
    /// The maps must chain: `maps[t]` goes from `terms[t]` to `terms[t + 1]`.
    pub fn new(terms: Vec<CatModule>, maps: Vec<ModuleHom>) -> Result<Self, ModuleError> {
        let first = terms.first().expect("complex with no terms");
        let side = first.side();
        if maps.len() + 1 != terms.len() {
            return Err(ModuleError::Arity {
                expected: terms.len().saturating_sub(1),
                found: maps.len(),
            });
        }
        for t in &terms {
            first.check_compatible(t)?;
        }
        for (t, d) in maps.iter().enumerate() {
            if !d.source().same(&terms[t]) || !d.target().same(&terms[t + 1]) {
                return Err(ModuleError::NotComposable);
            }
        }
        Ok(ChainComplex { side, terms, maps })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> &[CatModule] {
        &self.terms
    }

    pub fn maps(&self) -> &[ModuleHom] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The complex with every map transposed and the order reversed.
    pub fn dualize(&self) -> ChainComplex {
        let terms: Vec<CatModule> = self.terms.iter().rev().map(CatModule::dualize).collect();
        let n = terms.len();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .rev()
            .map(|(t, d)| {
                // d_t: T_t -> T_{t+1} becomes D T_{t+1} -> D T_t, which sit at
                // positions n-2-t and n-1-t of the reversed list.
                d.dualize_between(&terms[n - 2 - t], &terms[n - 1 - t])
            })
            .collect();
        ChainComplex {
            side: self.side.flip(),
            terms,
            maps,
        }
    }

    /// Per-object homology at every position.
    pub fn exactness(&self) -> ExactnessReport {
        let cat = self.terms[0].cat();
        let mut positions = Vec::new();
        let mut not_a_complex = Vec::new();
        for t in 0..self.terms.len() {
            if t >= 1 && t < self.maps.len() {
                let dd = self.maps[t].after(&self.maps[t - 1]).expect("chained");
                if !dd.is_zero() {
                    not_a_complex.push(t);
                }
            }
            let dims = cat
                .objects()
                .map(|i| {
                    let dim = self.terms[t].dim(i);
                    let rank_out = self.maps.get(t).map_or(0, |d| d.block(i).rank());
                    let rank_in = if t == 0 {
                        0
                    } else {
                        self.maps[t - 1].block(i).rank()
                    };
                    (dim - rank_out).saturating_sub(rank_in)
                })
                .collect();
            positions.push(PositionHomology { position: t, dims });
        }
        ExactnessReport {
            positions,
            not_a_complex,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness().is_exact()
    }

    /// Replaces one map by zero; for exercising the checks.
    pub fn with_zero_map(&self, t: usize) -> ChainComplex {
        let mut maps = self.maps.clone();
        maps[t] = ModuleHom::zero(maps[t].source(), maps[t].target());
        ChainComplex {
            side: self.side,
            terms: self.terms.clone(),
            maps,
        }
    }
}
