//! Finite EI-categories as explicit composition tables.
//!
//! Objects and morphisms are identified externally by strings and internally
//! by dense indices ([`Obj`], [`Mor`]). Indices follow the lexicographic order
//! of the ids, so any category built from the same data has the same indices
//! regardless of insertion order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Object index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub usize);

/// Morphism index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub usize);

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("duplicate object id {0:?}")]
    DuplicateObject(String),
    #[error("duplicate morphism id {0:?}")]
    DuplicateMorphism(String),
    #[error("unknown object id {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism id {0:?}")]
    UnknownMorphism(String),
    #[error("conflicting composites recorded for ({g}, {f})")]
    ConflictingComposite { g: String, f: String },
    #[error("conflicting identities recorded for object {0:?}")]
    ConflictingIdentity(String),
}

/// Collects objects, morphisms, identities and composites in any order.
#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    objects: Vec<(String, Option<u32>)>,
    object_index: HashMap<String, usize>,
    morphisms: Vec<(String, usize, usize)>,
    morphism_index: HashMap<String, usize>,
    identities: Vec<Option<usize>>,
    composites: HashMap<(usize, usize), usize>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, id: &str, level: Option<u32>) -> Result<usize, CategoryError> {
        if self.object_index.contains_key(id) {
            return Err(CategoryError::DuplicateObject(id.to_string()));
        }
        let idx = self.objects.len();
        self.objects.push((id.to_string(), level));
        self.object_index.insert(id.to_string(), idx);
        self.identities.push(None);
        Ok(idx)
    }

    pub fn add_morphism(
        &mut self,
        id: &str,
        src: usize,
        dst: usize,
    ) -> Result<usize, CategoryError> {
        if self.morphism_index.contains_key(id) {
            return Err(CategoryError::DuplicateMorphism(id.to_string()));
        }
        assert!(src < self.objects.len() && dst < self.objects.len());
        let idx = self.morphisms.len();
        self.morphisms.push((id.to_string(), src, dst));
        self.morphism_index.insert(id.to_string(), idx);
        Ok(idx)
    }

    pub fn set_identity(&mut self, object: usize, morphism: usize) -> Result<(), CategoryError> {
        match self.identities[object] {
            Some(m) if m != morphism => Err(CategoryError::ConflictingIdentity(
                self.objects[object].0.clone(),
            )),
            _ => {
                self.identities[object] = Some(morphism);
                Ok(())
            }
        }
    }

    /// Records `g ∘ f = gf`.
    pub fn set_composite(&mut self, g: usize, f: usize, gf: usize) -> Result<(), CategoryError> {
        match self.composites.insert((g, f), gf) {
            Some(old) if old != gf => Err(CategoryError::ConflictingComposite {
                g: self.morphisms[g].0.clone(),
                f: self.morphisms[f].0.clone(),
            }),
            _ => Ok(()),
        }
    }

    pub fn object_index(&self, id: &str) -> Result<usize, CategoryError> {
        self.object_index
            .get(id)
            .copied()
            .ok_or_else(|| CategoryError::UnknownObject(id.to_string()))
    }

    pub fn morphism_index(&self, id: &str) -> Result<usize, CategoryError> {
        self.morphism_index
            .get(id)
            .copied()
            .ok_or_else(|| CategoryError::UnknownMorphism(id.to_string()))
    }

    /// Sorts everything by id and freezes the tables. Missing identities or
    /// composites are not errors here; [`FiniteEICategory::validate`] reports
    /// them.
    pub fn build(self) -> FiniteEICategory {
        let mut obj_order: Vec<usize> = (0..self.objects.len()).collect();
        obj_order.sort_by(|&a, &b| self.objects[a].0.cmp(&self.objects[b].0));
        let mut obj_new = vec![0; self.objects.len()];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_new[old] = new;
        }
        let mut mor_order: Vec<usize> = (0..self.morphisms.len()).collect();
        mor_order.sort_by(|&a, &b| self.morphisms[a].0.cmp(&self.morphisms[b].0));
        let mut mor_new = vec![0; self.morphisms.len()];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_new[old] = new;
        }

        let n = self.objects.len();
        let m = self.morphisms.len();
        let object_ids: Vec<String> = obj_order
            .iter()
            .map(|&o| self.objects[o].0.clone())
            .collect();
        let levels = obj_order.iter().map(|&o| self.objects[o].1).collect();
        let morphism_ids: Vec<String> = mor_order
            .iter()
            .map(|&o| self.morphisms[o].0.clone())
            .collect();
        let src: Vec<Obj> = mor_order
            .iter()
            .map(|&o| Obj(obj_new[self.morphisms[o].1]))
            .collect();
        let dst: Vec<Obj> = mor_order
            .iter()
            .map(|&o| Obj(obj_new[self.morphisms[o].2]))
            .collect();
        let identity = obj_order
            .iter()
            .map(|&o| self.identities[o].map(|x| Mor(mor_new[x])))
            .collect();
        let mut compose = vec![NONE; m * m];
        for (&(g, f), &gf) in &self.composites {
            compose[mor_new[g] * m + mor_new[f]] = mor_new[gf] as u32;
        }
        let mut hom = vec![Vec::new(); n * n];
        let mut pos_in_hom = vec![0; m];
        for k in 0..m {
            let list = &mut hom[src[k].0 * n + dst[k].0];
            pos_in_hom[k] = list.len();
            list.push(Mor(k));
        }
        let object_index = object_ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), Obj(i)))
            .collect();
        let morphism_index = morphism_ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), Mor(i)))
            .collect();
        FiniteEICategory {
            object_ids,
            levels,
            object_index,
            morphism_ids,
            morphism_index,
            src,
            dst,
            identity,
            compose,
            hom,
            pos_in_hom,
            heights: OnceLock::new(),
            generating: OnceLock::new(),
        }
    }
}

/// A finite category given by its full composition table.
pub struct FiniteEICategory {
    object_ids: Vec<String>,
    levels: Vec<Option<u32>>,
    object_index: HashMap<String, Obj>,
    morphism_ids: Vec<String>,
    morphism_index: HashMap<String, Mor>,
    src: Vec<Obj>,
    dst: Vec<Obj>,
    identity: Vec<Option<Mor>>,
    /// `compose[g * m + f] = g ∘ f`.
    compose: Vec<u32>,
    /// `hom[i * n + j]`, ascending.
    hom: Vec<Vec<Mor>>,
    pos_in_hom: Vec<usize>,
    heights: OnceLock<Vec<usize>>,
    generating: OnceLock<Vec<Mor>>,
}

impl PartialEq for FiniteEICategory {
    fn eq(&self, other: &Self) -> bool {
        self.object_ids == other.object_ids
            && self.levels == other.levels
            && self.morphism_ids == other.morphism_ids
            && self.src == other.src
            && self.dst == other.dst
            && self.identity == other.identity
            && self.compose == other.compose
    }
}

impl Eq for FiniteEICategory {}

impl fmt::Debug for FiniteEICategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteEICategory")
            .field("objects", &self.object_ids)
            .field("morphisms", &self.morphism_ids.len())
            .finish()
    }
}

/// One failed axiom or structural defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingIdentity { object: String },
    IdentityWrongEnds { object: String, morphism: String },
    MissingComposite { g: String, f: String },
    SpuriousComposite { g: String, f: String },
    CompositeWrongEnds { g: String, f: String, gf: String },
    NotUnital { morphism: String },
    NotAssociative { h: String, g: String, f: String },
    EiViolated { morphism: String, object: String },
    NotSkeletal { a: String, b: String },
}

impl Violation {
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Violation::MissingIdentity { .. }
                | Violation::IdentityWrongEnds { .. }
                | Violation::MissingComposite { .. }
                | Violation::SpuriousComposite { .. }
                | Violation::CompositeWrongEnds { .. }
        )
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingIdentity { object } => {
                write!(fm, "incomplete: object {object} has no identity")
            }
            Violation::IdentityWrongEnds { object, morphism } => write!(
                fm,
                "incomplete: identity {morphism} of {object} is not an endomorphism of it"
            ),
            Violation::MissingComposite { g, f } => {
                write!(fm, "incomplete: composite {g} ∘ {f} missing")
            }
            Violation::SpuriousComposite { g, f } => {
                write!(
                    fm,
                    "incomplete: composite recorded for non-composable {g} ∘ {f}"
                )
            }
            Violation::CompositeWrongEnds { g, f, gf } => {
                write!(
                    fm,
                    "incomplete: {g} ∘ {f} = {gf} has the wrong source or target"
                )
            }
            Violation::NotUnital { morphism } => {
                write!(fm, "identity law fails for {morphism}")
            }
            Violation::NotAssociative { h, g, f } => {
                write!(fm, "associativity fails for ({h}, {g}, {f})")
            }
            Violation::EiViolated { morphism, object } => write!(
                fm,
                "EI violated: endomorphism {morphism} of {object} has no inverse"
            ),
            Violation::NotSkeletal { a, b } => write!(
                fm,
                "not skeletal: distinct objects {a} and {b} have morphisms both ways"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.to_string()).collect()
    }
}

/// Full subcategory together with its embedding into the parent.
#[derive(Debug, Clone)]
pub struct Subcategory {
    pub category: Arc<FiniteEICategory>,
    /// Sub-object index -> parent object.
    pub objects: Vec<Obj>,
    /// Sub-morphism index -> parent morphism.
    pub morphisms: Vec<Mor>,
}

impl Clone for FiniteEICategory {
    fn clone(&self) -> Self {
        FiniteEICategory {
            object_ids: self.object_ids.clone(),
            levels: self.levels.clone(),
            object_index: self.object_index.clone(),
            morphism_ids: self.morphism_ids.clone(),
            morphism_index: self.morphism_index.clone(),
            src: self.src.clone(),
            dst: self.dst.clone(),
            identity: self.identity.clone(),
            compose: self.compose.clone(),
            hom: self.hom.clone(),
            pos_in_hom: self.pos_in_hom.clone(),
            heights: OnceLock::new(),
            generating: OnceLock::new(),
        }
    }
}

impl FiniteEICategory {
    pub fn num_objects(&self) -> usize {
        self.object_ids.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphism_ids.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.num_objects()).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.num_morphisms()).map(Mor)
    }

    pub fn object(&self, id: &str) -> Result<Obj, CategoryError> {
        self.object_index
            .get(id)
            .copied()
            .ok_or_else(|| CategoryError::UnknownObject(id.to_string()))
    }

    pub fn morphism(&self, id: &str) -> Result<Mor, CategoryError> {
        self.morphism_index
            .get(id)
            .copied()
            .ok_or_else(|| CategoryError::UnknownMorphism(id.to_string()))
    }

    pub fn object_id(&self, i: Obj) -> &str {
        &self.object_ids[i.0]
    }

    pub fn morphism_id(&self, f: Mor) -> &str {
        &self.morphism_ids[f.0]
    }

    /// Ordinal label supplied by a generator, for reporting only.
    pub fn level(&self, i: Obj) -> Option<u32> {
        self.levels[i.0]
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.src[f.0]
    }

    pub fn dst(&self, f: Mor) -> Obj {
        self.dst[f.0]
    }

    pub fn try_identity(&self, i: Obj) -> Option<Mor> {
        self.identity[i.0]
    }

    /// Panics on a structurally incomplete table; validate first.
    pub fn identity(&self, i: Obj) -> Mor {
        self.identity[i.0].unwrap_or_else(|| panic!("object {} has no identity", self.object_id(i)))
    }

    /// `g ∘ f`, if recorded.
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        let c = self.compose[g.0 * self.num_morphisms() + f.0];
        (c != NONE).then_some(Mor(c as usize))
    }

    /// `g ∘ f`. Panics when the pair is not composable or the table is
    /// incomplete; validate first.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "composite {} ∘ {} missing",
                self.morphism_id(g),
                self.morphism_id(f)
            )
        })
    }

    /// `C(i, j)` in id order.
    pub fn hom(&self, i: Obj, j: Obj) -> &[Mor] {
        &self.hom[i.0 * self.num_objects() + j.0]
    }

    /// Position of `f` inside its hom-set; this is its basis index in free
    /// modules.
    pub fn position_in_hom(&self, f: Mor) -> usize {
        self.pos_in_hom[f.0]
    }

    pub fn automorphisms(&self, i: Obj) -> &[Mor] {
        self.hom(i, i)
    }

    pub fn is_endomorphism(&self, f: Mor) -> bool {
        self.src(f) == self.dst(f)
    }

    /// `i ⩽ j` iff `C(i, j)` is nonempty.
    pub fn leq(&self, i: Obj, j: Obj) -> bool {
        !self.hom(i, j).is_empty()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = self.structural_violations();
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        let m = self.num_morphisms();
        let id = |f: Mor| self.morphism_id(f).to_string();
        for f in self.morphisms() {
            let (s, t) = (self.src(f), self.dst(f));
            if self.compose(self.identity(t), f) != f || self.compose(f, self.identity(s)) != f {
                violations.push(Violation::NotUnital { morphism: id(f) });
            }
        }
        'assoc: for f in 0..m {
            let f = Mor(f);
            for k in self.objects() {
                for &g in self.hom(self.dst(f), k) {
                    let gf = self.compose(g, f);
                    for l in self.objects() {
                        for &h in self.hom(k, l) {
                            if self.compose(self.compose(h, g), f) != self.compose(h, gf) {
                                violations.push(Violation::NotAssociative {
                                    h: id(h),
                                    g: id(g),
                                    f: id(f),
                                });
                                // One witness per f keeps reports readable.
                                continue 'assoc;
                            }
                        }
                    }
                }
            }
        }
        for i in self.objects() {
            let e = self.identity(i);
            for &a in self.automorphisms(i) {
                let invertible = self
                    .automorphisms(i)
                    .iter()
                    .any(|&b| self.compose(a, b) == e && self.compose(b, a) == e);
                if !invertible {
                    violations.push(Violation::EiViolated {
                        morphism: id(a),
                        object: self.object_id(i).to_string(),
                    });
                }
            }
        }
        for i in self.objects() {
            for j in self.objects() {
                if i < j && self.leq(i, j) && self.leq(j, i) {
                    violations.push(Violation::NotSkeletal {
                        a: self.object_id(i).to_string(),
                        b: self.object_id(j).to_string(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let id = |f: Mor| self.morphism_id(f).to_string();
        for i in self.objects() {
            match self.try_identity(i) {
                None => out.push(Violation::MissingIdentity {
                    object: self.object_id(i).to_string(),
                }),
                Some(e) if self.src(e) != i || self.dst(e) != i => {
                    out.push(Violation::IdentityWrongEnds {
                        object: self.object_id(i).to_string(),
                        morphism: id(e),
                    })
                }
                Some(_) => {}
            }
        }
        for g in self.morphisms() {
            for f in self.morphisms() {
                let composable = self.src(g) == self.dst(f);
                match (composable, self.try_compose(g, f)) {
                    (true, None) => out.push(Violation::MissingComposite { g: id(g), f: id(f) }),
                    (false, Some(_)) => {
                        out.push(Violation::SpuriousComposite { g: id(g), f: id(f) })
                    }
                    (true, Some(gf))
                        if self.src(gf) != self.src(f) || self.dst(gf) != self.dst(g) =>
                    {
                        out.push(Violation::CompositeWrongEnds {
                            g: id(g),
                            f: id(f),
                            gf: id(gf),
                        })
                    }
                    _ => {}
                }
            }
        }
        out
    }

    /// Left-cancellability checked exhaustively against every parallel pair.
    pub fn is_monomorphism(&self, f: Mor) -> bool {
        let j = self.src(f);
        self.objects().all(|i| {
            let mut seen = HashSet::new();
            self.hom(i, j)
                .iter()
                .all(|&g| seen.insert(self.compose(f, g)))
        })
    }

    pub fn non_monomorphisms(&self) -> Vec<Mor> {
        self.morphisms()
            .filter(|&f| !self.is_monomorphism(f))
            .collect()
    }

    /// Objects below some member of `set`, sorted.
    pub fn downward_closure(&self, set: &[Obj]) -> Vec<Obj> {
        self.objects()
            .filter(|&i| set.iter().any(|&j| self.leq(i, j)))
            .collect()
    }

    pub fn is_right_closed(&self, set: &[Obj]) -> bool {
        let mut sorted: Vec<Obj> = set.to_vec();
        sorted.sort();
        sorted.dedup();
        self.downward_closure(&sorted) == sorted
    }

    /// No chain `i ⩽ j ⩽ k` leaves `set` at `j` while `i, k` lie in it.
    pub fn is_convex(&self, set: &[Obj]) -> bool {
        let inside: HashSet<Obj> = set.iter().copied().collect();
        self.objects()
            .filter(|j| !inside.contains(j))
            .all(|j| !(set.iter().any(|&i| self.leq(i, j)) && set.iter().any(|&k| self.leq(j, k))))
    }

    /// Members of `set` with nothing else in `set` above them.
    pub fn maximal_objects(&self, set: &[Obj]) -> Vec<Obj> {
        let mut out: Vec<Obj> = set
            .iter()
            .copied()
            .filter(|&i| !set.iter().any(|&j| j != i && self.leq(i, j)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn full_subcategory(&self, set: &[Obj]) -> Subcategory {
        let mut objects: Vec<Obj> = set.to_vec();
        objects.sort();
        objects.dedup();
        let inside: HashSet<Obj> = objects.iter().copied().collect();
        let mut b = CategoryBuilder::new();
        for &o in &objects {
            b.add_object(self.object_id(o), self.level(o))
                .expect("distinct ids");
        }
        let local = |o: Obj| objects.binary_search(&o).expect("inside");
        let morphisms: Vec<Mor> = self
            .morphisms()
            .filter(|&f| inside.contains(&self.src(f)) && inside.contains(&self.dst(f)))
            .collect();
        let mut new_index = HashMap::new();
        for &f in &morphisms {
            let k = b
                .add_morphism(self.morphism_id(f), local(self.src(f)), local(self.dst(f)))
                .expect("distinct ids");
            new_index.insert(f, k);
        }
        for &o in &objects {
            if let Some(e) = self.try_identity(o) {
                b.set_identity(local(o), new_index[&e])
                    .expect("single identity");
            }
        }
        for &g in &morphisms {
            for &f in &morphisms {
                if let Some(gf) = self.try_compose(g, f) {
                    if let Some(&k) = new_index.get(&gf) {
                        b.set_composite(new_index[&g], new_index[&f], k)
                            .expect("table");
                    }
                }
            }
        }
        // Ids are preserved and both sides sort by id, so index order agrees.
        Subcategory {
            category: Arc::new(b.build()),
            objects,
            morphisms,
        }
    }

    /// Smallest right-closed full subcategory containing `set`.
    pub fn right_closed_subcategory(&self, set: &[Obj]) -> Subcategory {
        self.full_subcategory(&self.downward_closure(set))
    }

    /// Length of the longest strictly increasing chain ending at each object.
    pub fn heights(&self) -> &[usize] {
        self.heights.get_or_init(|| {
            let n = self.num_objects();
            let mut h = vec![0usize; n];
            for _ in 0..n {
                let mut changed = false;
                for j in 0..n {
                    for i in 0..n {
                        if i != j
                            && self.leq(Obj(i), Obj(j))
                            && !self.leq(Obj(j), Obj(i))
                            && h[j] < h[i] + 1
                        {
                            h[j] = h[i] + 1;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            h
        })
    }

    /// Objects sorted by height, then index: every object comes after all
    /// objects strictly below it.
    pub fn bottom_up_order(&self) -> Vec<Obj> {
        let h = self.heights();
        let mut order: Vec<Obj> = self.objects().collect();
        order.sort_by_key(|o| (h[o.0], o.0));
        order
    }

    /// A set of non-identity morphisms whose composites (with identities)
    /// exhaust the category. Automorphisms come first, so the generators
    /// lying in `C(i, i)` generate `Aut(i)` for skeletal EI input.
    pub fn generating_set(&self) -> &[Mor] {
        self.generating.get_or_init(|| {
            let h = self.heights();
            let mut candidates: Vec<Mor> = self
                .morphisms()
                .filter(|&f| self.try_identity(self.src(f)) != Some(f))
                .collect();
            candidates.sort_by_key(|&f| {
                let d = h[self.dst(f).0] as isize - h[self.src(f).0] as isize;
                (d, f.0)
            });
            let mut gens = Vec::new();
            let mut closure = self.closure_of(&gens);
            for f in candidates {
                if !closure[f.0] {
                    gens.push(f);
                    closure = self.closure_of(&gens);
                }
            }
            gens
        })
    }

    /// Generators of `Aut(i)` taken from [`Self::generating_set`].
    pub fn automorphism_generators(&self, i: Obj) -> Vec<Mor> {
        self.generating_set()
            .iter()
            .copied()
            .filter(|&f| self.src(f) == i && self.dst(f) == i)
            .collect()
    }

    fn closure_of(&self, gens: &[Mor]) -> Vec<bool> {
        let mut seen = vec![false; self.num_morphisms()];
        let mut queue = VecDeque::new();
        for i in self.objects() {
            if let Some(e) = self.try_identity(i) {
                seen[e.0] = true;
                queue.push_back(e);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                if self.src(s) != self.dst(x) {
                    continue;
                }
                if let Some(y) = self.try_compose(s, x) {
                    if !seen[y.0] {
                        seen[y.0] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        seen
    }
}

/// A category read covariantly (`op = false`) or as its opposite.
///
/// Right modules over a category are left modules over its opposite with the
/// same action matrices, so module code is written once against a view.
#[derive(Clone, Copy)]
pub(crate) struct View<'a> {
    pub cat: &'a FiniteEICategory,
    pub op: bool,
}

impl<'a> View<'a> {
    pub fn new(cat: &'a FiniteEICategory, op: bool) -> Self {
        View { cat, op }
    }

    pub fn src(&self, f: Mor) -> Obj {
        if self.op {
            self.cat.dst(f)
        } else {
            self.cat.src(f)
        }
    }

    pub fn dst(&self, f: Mor) -> Obj {
        if self.op {
            self.cat.src(f)
        } else {
            self.cat.dst(f)
        }
    }

    /// `g ∘ f` in the viewed category.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        if self.op {
            self.cat.compose(f, g)
        } else {
            self.cat.compose(g, f)
        }
    }

    pub fn hom(&self, i: Obj, j: Obj) -> &'a [Mor] {
        if self.op {
            self.cat.hom(j, i)
        } else {
            self.cat.hom(i, j)
        }
    }

    pub fn pos(&self, f: Mor) -> usize {
        self.cat.position_in_hom(f)
    }

    /// Objects ordered so that every view-morphism goes forward or stays.
    pub fn bottom_up_order(&self) -> Vec<Obj> {
        let mut order = self.cat.bottom_up_order();
        if self.op {
            order.reverse();
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Objects 0, 1 and a single arrow between them.
    fn arrow() -> FiniteEICategory {
        let mut b = CategoryBuilder::new();
        let o0 = b.add_object("0", Some(0)).unwrap();
        let o1 = b.add_object("1", Some(1)).unwrap();
        let e0 = b.add_morphism("e0", o0, o0).unwrap();
        let e1 = b.add_morphism("e1", o1, o1).unwrap();
        let a = b.add_morphism("a", o0, o1).unwrap();
        b.set_identity(o0, e0).unwrap();
        b.set_identity(o1, e1).unwrap();
        b.set_composite(e0, e0, e0).unwrap();
        b.set_composite(e1, e1, e1).unwrap();
        b.set_composite(a, e0, a).unwrap();
        b.set_composite(e1, a, a).unwrap();
        b.build()
    }

    #[test]
    fn terminal_category_is_valid() {
        let mut b = CategoryBuilder::new();
        let o = b.add_object("*", None).unwrap();
        let e = b.add_morphism("id", o, o).unwrap();
        b.set_identity(o, e).unwrap();
        b.set_composite(e, e, e).unwrap();
        let c = b.build();
        assert!(c.validate().is_ok());
        assert!(c.generating_set().is_empty());
    }

    #[test]
    fn ei_violation_reported() {
        // One object, idempotent x with x∘x = x: not invertible.
        let mut b = CategoryBuilder::new();
        let o = b.add_object("*", None).unwrap();
        let e = b.add_morphism("e", o, o).unwrap();
        let x = b.add_morphism("x", o, o).unwrap();
        b.set_identity(o, e).unwrap();
        b.set_composite(e, e, e).unwrap();
        b.set_composite(e, x, x).unwrap();
        b.set_composite(x, e, x).unwrap();
        b.set_composite(x, x, x).unwrap();
        let report = b.build().validate();
        assert!(report.messages().iter().any(|m| m.contains("EI violated")));
    }

    #[test]
    fn missing_composite_is_structural() {
        let mut b = CategoryBuilder::new();
        let o = b.add_object("*", None).unwrap();
        let e = b.add_morphism("e", o, o).unwrap();
        b.set_identity(o, e).unwrap();
        let report = b.build().validate();
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].is_structural());
    }

    #[test]
    fn non_skeletal_reported() {
        let mut b = CategoryBuilder::new();
        let x = b.add_object("x", None).unwrap();
        let y = b.add_object("y", None).unwrap();
        let ex = b.add_morphism("ex", x, x).unwrap();
        let ey = b.add_morphism("ey", y, y).unwrap();
        let u = b.add_morphism("u", x, y).unwrap();
        let v = b.add_morphism("v", y, x).unwrap();
        b.set_identity(x, ex).unwrap();
        b.set_identity(y, ey).unwrap();
        for (g, f, gf) in [
            (ex, ex, ex),
            (ey, ey, ey),
            (u, ex, u),
            (ey, u, u),
            (v, ey, v),
            (ex, v, v),
            (v, u, ex),
            (u, v, ey),
        ] {
            b.set_composite(g, f, gf).unwrap();
        }
        let report = b.build().validate();
        assert!(matches!(
            report.violations[..],
            [Violation::NotSkeletal { .. }]
        ));
    }

    #[test]
    fn order_predicates_on_arrow() {
        let c = arrow();
        assert!(c.validate().is_ok());
        let (o0, o1) = (c.object("0").unwrap(), c.object("1").unwrap());
        assert!(c.leq(o0, o1));
        assert!(!c.leq(o1, o0));
        assert!(c.leq(o0, o0));
        assert_eq!(c.maximal_objects(&[o0, o1]), vec![o1]);
        assert_eq!(c.maximal_objects(&[o0]), vec![o0]);
        assert_eq!(c.downward_closure(&[o1]), vec![o0, o1]);
        assert!(c.is_right_closed(&[o0]));
        assert!(!c.is_right_closed(&[o1]));
        assert!(c.object("7").is_err());
        assert_eq!(c.heights(), &[0, 1]);
    }

    #[test]
    fn subcategory_preserves_ids() {
        let c = arrow();
        let sub = c.right_closed_subcategory(&[c.object("0").unwrap()]);
        assert_eq!(sub.category.num_objects(), 1);
        assert_eq!(sub.category.num_morphisms(), 1);
        assert!(sub.category.validate().is_ok());
        let whole = c.right_closed_subcategory(&[c.object("1").unwrap()]);
        assert_eq!(*whole.category, c);
    }

    #[test]
    fn insertion_order_does_not_matter() {
        let mut b = CategoryBuilder::new();
        let o1 = b.add_object("1", Some(1)).unwrap();
        let o0 = b.add_object("0", Some(0)).unwrap();
        let a = b.add_morphism("a", o0, o1).unwrap();
        let e1 = b.add_morphism("e1", o1, o1).unwrap();
        let e0 = b.add_morphism("e0", o0, o0).unwrap();
        b.set_identity(o0, e0).unwrap();
        b.set_identity(o1, e1).unwrap();
        b.set_composite(e0, e0, e0).unwrap();
        b.set_composite(e1, e1, e1).unwrap();
        b.set_composite(a, e0, a).unwrap();
        b.set_composite(e1, a, a).unwrap();
        assert_eq!(b.build(), arrow());
    }
}
