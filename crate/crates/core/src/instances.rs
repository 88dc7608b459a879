//! Generators for truncations of FI_G and VI_q, plus the finite groups and
//! fields they are built from.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eicat::{CategoryBuilder, FiniteEICategory};

pub const DEFAULT_CAP: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("group table invalid: {}", .0.join("; "))]
    InvalidGroup(Vec<String>),
    #[error("field tables invalid: {}", .0.join("; "))]
    InvalidField(Vec<String>),
    #[error("{0} is not prime; supply addition and multiplication tables for prime powers")]
    NotPrime(u64),
    #[error("hom-set C({m},{n}) would have {size} morphisms, above the cap of {cap}")]
    CapExceeded {
        m: usize,
        n: usize,
        size: u128,
        cap: u64,
    },
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
    #[error("instance spec: {0}")]
    Spec(String),
}

/// A finite group as a multiplication table on `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("validated group")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// Checks closure, associativity, identity and inverses; every failure is
/// listed.
pub fn group_from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup, InstanceError> {
    let n = table.len();
    let mut problems = Vec::new();
    if n == 0 {
        return Err(InstanceError::InvalidGroup(vec!["empty table".into()]));
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            problems.push(format!("row {a} has length {} instead of {n}", row.len()));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            problems.push(format!("row {a} contains {x}, outside 0..{n}"));
        }
    }
    if !problems.is_empty() {
        return Err(InstanceError::InvalidGroup(problems));
    }
    let m = |a: usize, b: usize| table[a][b];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    problems.push(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
    }
    let identity = (0..n).find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a));
    match identity {
        None => problems.push("no two-sided identity".into()),
        Some(e) => {
            for a in 0..n {
                if !(0..n).any(|b| m(a, b) == e && m(b, a) == e) {
                    problems.push(format!("element {a} has no inverse"));
                }
            }
        }
    }
    if problems.is_empty() {
        Ok(FiniteGroup {
            table,
            identity: identity.expect("checked"),
        })
    } else {
        Err(InstanceError::InvalidGroup(problems))
    }
}

pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order 0");
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    group_from_table(table).expect("cyclic table is a group")
}

/// Permutations of `0..k` in lexicographic order; `a * b` applies `b` first.
pub fn symmetric_group(k: usize) -> FiniteGroup {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        perms.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index: HashMap<Vec<usize>, usize> = perms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let table = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    group_from_table(table).expect("symmetric table is a group")
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len())
        .rev()
        .find(|&j| p[j] > p[i])
        .expect("exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// The one-object category whose morphisms are the group elements.
pub fn group_category(group: &FiniteGroup) -> FiniteEICategory {
    let n = group.order();
    let width = (n - 1).to_string().len();
    let mut b = CategoryBuilder::new();
    let o = b.add_object("*", Some(0)).expect("fresh");
    let ids: Vec<usize> = (0..n)
        .map(|g| {
            b.add_morphism(&format!("g{g:0width$}"), o, o)
                .expect("fresh")
        })
        .collect();
    b.set_identity(o, ids[group.identity()]).expect("fresh");
    for x in 0..n {
        for y in 0..n {
            b.set_composite(ids[x], ids[y], ids[group.mul(x, y)])
                .expect("table");
        }
    }
    b.build()
}

/// A finite field on `0..q` with `0` and `1` as the additive and
/// multiplicative identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self, InstanceError> {
        if !is_prime(p) {
            return Err(InstanceError::NotPrime(p));
        }
        let p = p as usize;
        Ok(FiniteField {
            add: (0..p)
                .map(|a| (0..p).map(|b| (a + b) % p).collect())
                .collect(),
            mul: (0..p)
                .map(|a| (0..p).map(|b| (a * b) % p).collect())
                .collect(),
        })
    }

    /// Field given by explicit tables, checked exhaustively.
    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        let q = add.len();
        let mut problems = Vec::new();
        if q < 2 {
            problems.push("a field has at least two elements".to_string());
        }
        let square = |t: &Vec<Vec<usize>>| {
            t.len() == q && t.iter().all(|r| r.len() == q && r.iter().all(|&x| x < q))
        };
        if !square(&add) || !square(&mul) {
            problems.push(format!("tables must be {q}x{q} with entries below {q}"));
        }
        if !problems.is_empty() {
            return Err(InstanceError::InvalidField(problems));
        }
        let a = |x: usize, y: usize| add[x][y];
        let m = |x: usize, y: usize| mul[x][y];
        for x in 0..q {
            if a(0, x) != x || a(x, 0) != x {
                problems.push(format!("0 is not an additive identity for {x}"));
            }
            if m(1, x) != x || m(x, 1) != x {
                problems.push(format!("1 is not a multiplicative identity for {x}"));
            }
            if !(0..q).any(|y| a(x, y) == 0) {
                problems.push(format!("{x} has no additive inverse"));
            }
            if x != 0 && !(0..q).any(|y| m(x, y) == 1) {
                problems.push(format!("{x} has no multiplicative inverse"));
            }
            for y in 0..q {
                if a(x, y) != a(y, x) || m(x, y) != m(y, x) {
                    problems.push(format!("operations not commutative at ({x}, {y})"));
                }
                for z in 0..q {
                    if a(a(x, y), z) != a(x, a(y, z)) || m(m(x, y), z) != m(x, m(y, z)) {
                        problems.push(format!("associativity fails at ({x}, {y}, {z})"));
                    }
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        problems.push(format!("distributivity fails at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        if problems.is_empty() {
            Ok(FiniteField { add, mul })
        } else {
            problems.truncate(20);
            Err(InstanceError::InvalidField(problems))
        }
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "FI_G", alias = "FI")]
    FiG,
    #[serde(rename = "VI_q", alias = "VI")]
    ViQ,
}

/// Group named in a spec file: `"trivial"`, `"Z/n"`, `"S_n"`, or an explicit
/// table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Table { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, InstanceError> {
        match self {
            GroupSpec::Table { table } => group_from_table(table.clone()),
            GroupSpec::Named(name) => {
                let name = name.trim();
                if name == "trivial" || name == "1" {
                    return Ok(cyclic_group(1));
                }
                let parse = |rest: &str| rest.parse::<usize>().ok().filter(|&n| n >= 1);
                if let Some(n) = name.strip_prefix("Z/").and_then(parse) {
                    return Ok(cyclic_group(n));
                }
                if let Some(n) = name
                    .strip_prefix("S_")
                    .or_else(|| name.strip_prefix('S'))
                    .and_then(parse)
                {
                    return Ok(symmetric_group(n));
                }
                Err(InstanceError::UnknownGroup(name.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTables {
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

/// Recipe for a truncation, as read from TOML or JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldTables>,
    pub level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
}

impl InstanceSpec {
    pub fn fi(group: Option<&str>, level: usize) -> Self {
        InstanceSpec {
            family: Family::FiG,
            group: group.map(|g| GroupSpec::Named(g.to_string())),
            q: None,
            field: None,
            level,
            cap: None,
        }
    }

    pub fn vi(q: u64, level: usize) -> Self {
        InstanceSpec {
            family: Family::ViQ,
            group: None,
            q: Some(q),
            field: None,
            level,
            cap: None,
        }
    }

    pub fn with_level(&self, level: usize) -> Self {
        InstanceSpec {
            level,
            ..self.clone()
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, InstanceError> {
        toml::from_str(text).map_err(|e| InstanceError::Spec(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::Spec(e.to_string()))
    }

    /// JSON when the text starts with `{`, TOML otherwise.
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_toml(text)
        }
    }

    pub fn build(&self) -> Result<FiniteEICategory, InstanceError> {
        self.build_with_cap(self.cap.unwrap_or(DEFAULT_CAP))
    }

    /// Builds with an explicit cap that overrides the one in the spec.
    pub fn build_with_cap(&self, cap: u64) -> Result<FiniteEICategory, InstanceError> {
        match self.family {
            Family::FiG => {
                if self.q.is_some() || self.field.is_some() {
                    return Err(InstanceError::Spec(
                        "FI_G takes a group, not a field".into(),
                    ));
                }
                let group = match &self.group {
                    Some(g) => g.build()?,
                    None => cyclic_group(1),
                };
                fi_g_truncation(&group, self.level, cap)
            }
            Family::ViQ => {
                if self.group.is_some() {
                    return Err(InstanceError::Spec(
                        "VI_q takes a field, not a group".into(),
                    ));
                }
                let field = match (&self.field, self.q) {
                    (Some(t), q) => {
                        let f = FiniteField::from_tables(t.add.clone(), t.mul.clone())?;
                        if q.is_some_and(|q| q as usize != f.order()) {
                            return Err(InstanceError::Spec(
                                "q disagrees with the field tables".into(),
                            ));
                        }
                        f
                    }
                    (None, Some(q)) => FiniteField::prime(q)?,
                    (None, None) => {
                        return Err(InstanceError::Spec("VI_q needs q or field tables".into()))
                    }
                };
                viq_truncation(&field, self.level, cap)
            }
        }
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::FiG => {
                let g = match &self.group {
                    None => "trivial".to_string(),
                    Some(GroupSpec::Named(n)) => n.clone(),
                    Some(GroupSpec::Table { table }) => format!("table of order {}", table.len()),
                };
                write!(f, "FI_G (G = {g}) up to level {}", self.level)
            }
            Family::ViQ => {
                let q = self
                    .q
                    .map(|q| q.to_string())
                    .or_else(|| self.field.as_ref().map(|t| t.add.len().to_string()))
                    .unwrap_or_default();
                write!(f, "VI_{q} up to level {}", self.level)
            }
        }
    }
}

/// `|G|^m * n!/(n-m)!`, zero when `m > n`.
pub fn fi_g_hom_size(group_order: usize, m: usize, n: usize) -> u128 {
    if m > n {
        return 0;
    }
    let falling: u128 = ((n - m + 1)..=n).map(|x| x as u128).product();
    (group_order as u128)
        .saturating_pow(m as u32)
        .saturating_mul(falling)
}

/// `(q^n - 1)(q^n - q)...(q^n - q^{m-1})`, zero when `m > n`.
pub fn viq_hom_size(q: usize, m: usize, n: usize) -> u128 {
    if m > n {
        return 0;
    }
    let qn = (q as u128).saturating_pow(n as u32);
    (0..m)
        .map(|k| qn - (q as u128).saturating_pow(k as u32))
        .fold(1u128, |acc, x| acc.saturating_mul(x))
}

fn check_cap(
    level: usize,
    cap: u64,
    size: impl Fn(usize, usize) -> u128,
) -> Result<(), InstanceError> {
    for n in 0..=level {
        for m in 0..=n {
            let s = size(m, n);
            if s > cap as u128 {
                return Err(InstanceError::CapExceeded { m, n, size: s, cap });
            }
        }
    }
    Ok(())
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Objects `0..=level` are the sets `{1..m}`; a morphism `m -> n` is an
/// injection together with a colouring `{1..m} -> G`. Ids read
/// `"m-n:images|colours"` with 1-based images.
pub fn fi_g_truncation(
    group: &FiniteGroup,
    level: usize,
    cap: u64,
) -> Result<FiniteEICategory, InstanceError> {
    check_cap(level, cap, |m, n| fi_g_hom_size(group.order(), m, n))?;
    type Key = (usize, usize, Vec<usize>, Vec<usize>);
    let mut b = CategoryBuilder::new();
    let objects: Vec<usize> = (0..=level)
        .map(|k| b.add_object(&k.to_string(), Some(k as u32)).expect("fresh"))
        .collect();
    let mut data: Vec<Key> = Vec::new();
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); level + 1];
    for n in 0..=level {
        for m in 0..=n {
            for images in injections(m, n) {
                for colours in tuples(group.order(), m) {
                    let id = format!(
                        "{m}-{n}:{}|{}",
                        join(&images.iter().map(|x| x + 1).collect::<Vec<_>>()),
                        join(&colours)
                    );
                    let k = b.add_morphism(&id, objects[m], objects[n]).expect("fresh");
                    let key = (m, n, images.clone(), colours);
                    index.insert(key.clone(), k);
                    data.push(key);
                    by_src[m].push(k);
                }
            }
        }
    }
    for k in 0..=level {
        let e = index[&(k, k, (0..k).collect(), vec![group.identity(); k])];
        b.set_identity(objects[k], e).expect("fresh");
    }
    for (f, (m, n, img_f, col_f)) in data.iter().enumerate() {
        for &g in &by_src[*n] {
            let (_, p, img_g, col_g) = &data[g];
            let images: Vec<usize> = img_f.iter().map(|&x| img_g[x]).collect();
            let colours: Vec<usize> = (0..*m)
                .map(|x| group.mul(col_g[img_f[x]], col_f[x]))
                .collect();
            let gf = index[&(*m, *p, images, colours)];
            b.set_composite(g, f, gf).expect("table");
        }
    }
    Ok(b.build())
}

fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    let mut used = vec![false; n];
    fn rec(
        m: usize,
        n: usize,
        current: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for y in 0..n {
            if !used[y] {
                used[y] = true;
                current.push(y);
                rec(m, n, current, used, out);
                current.pop();
                used[y] = false;
            }
        }
    }
    rec(m, n, &mut current, &mut used, &mut out);
    out
}

/// All length-`len` tuples over `0..base`, lexicographically.
fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Objects `0..=level` are the spaces `F^m`; a morphism `m -> n` is an
/// injective `n x m` matrix. Ids read `"m-n:"` followed by the columns, each
/// written top to bottom and separated by commas.
pub fn viq_truncation(
    field: &FiniteField,
    level: usize,
    cap: u64,
) -> Result<FiniteEICategory, InstanceError> {
    let q = field.order();
    check_cap(level, cap, |m, n| viq_hom_size(q, m, n))?;
    // Columns as vectors of field elements.
    type Key = (usize, usize, Vec<Vec<usize>>);
    let mut b = CategoryBuilder::new();
    let objects: Vec<usize> = (0..=level)
        .map(|k| b.add_object(&k.to_string(), Some(k as u32)).expect("fresh"))
        .collect();
    let sep = if q > 10 { "." } else { "" };
    let encode = |col: &Vec<usize>| {
        col.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    };
    let mut data: Vec<Key> = Vec::new();
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); level + 1];
    for n in 0..=level {
        let vectors = tuples(q, n);
        for m in 0..=n {
            for cols in injective_matrices(field, &vectors, n, m) {
                let id = format!(
                    "{m}-{n}:{}",
                    cols.iter().map(&encode).collect::<Vec<_>>().join(",")
                );
                let k = b.add_morphism(&id, objects[m], objects[n]).expect("fresh");
                let key = (m, n, cols);
                index.insert(key.clone(), k);
                data.push(key);
                by_src[m].push(k);
            }
        }
    }
    for k in 0..=level {
        let cols: Vec<Vec<usize>> = (0..k)
            .map(|c| (0..k).map(|r| usize::from(r == c)).collect())
            .collect();
        b.set_identity(objects[k], index[&(k, k, cols)])
            .expect("fresh");
    }
    for (f, (m, n, cols_f)) in data.iter().enumerate() {
        for &g in &by_src[*n] {
            let (_, p, cols_g) = &data[g];
            // Column c of G*F is G applied to column c of F.
            let cols: Vec<Vec<usize>> = cols_f
                .iter()
                .map(|col| {
                    let mut out = vec![0; *p];
                    for (j, &x) in col.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (r, o) in out.iter_mut().enumerate() {
                            *o = field.add(*o, field.mul(cols_g[j][r], x));
                        }
                    }
                    out
                })
                .collect();
            let gf = index[&(*m, *p, cols)];
            b.set_composite(g, f, gf).expect("table");
        }
    }
    Ok(b.build())
}

fn injective_matrices(
    field: &FiniteField,
    vectors: &[Vec<usize>],
    n: usize,
    m: usize,
) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        field: &FiniteField,
        vectors: &[Vec<usize>],
        m: usize,
        cols: &mut Vec<Vec<usize>>,
        span: &HashSet<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if cols.len() == m {
            out.push(cols.clone());
            return;
        }
        for v in vectors {
            if span.contains(v) {
                continue;
            }
            let mut next = span.clone();
            for s in span {
                for c in 0..field.order() {
                    let w: Vec<usize> = s
                        .iter()
                        .zip(v)
                        .map(|(&a, &b)| field.add(a, field.mul(c, b)))
                        .collect();
                    next.insert(w);
                }
            }
            cols.push(v.clone());
            rec(field, vectors, m, cols, &next, out);
            cols.pop();
        }
    }
    let mut out = Vec::new();
    let span: HashSet<Vec<usize>> = [vec![0; n]].into_iter().collect();
    rec(field, vectors, m, &mut Vec::new(), &span, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eicat::Obj;

    fn hom_size(c: &FiniteEICategory, m: usize, n: usize) -> usize {
        c.hom(
            c.object(&m.to_string()).unwrap(),
            c.object(&n.to_string()).unwrap(),
        )
        .len()
    }

    #[test]
    fn fi_level_two_has_eight_morphisms() {
        let c = InstanceSpec::fi(None, 2).build().unwrap();
        assert_eq!(c.num_morphisms(), 8);
        assert!(c.validate().is_ok());
        assert_eq!(hom_size(&c, 1, 2), 2);
        assert_eq!(hom_size(&c, 2, 1), 0);
        assert!(c.morphism("1-2:1|0").is_ok());
        assert!(c.morphism("0-2:|").is_ok());
    }

    #[test]
    fn fi_z2_level_one() {
        let c = InstanceSpec::fi(Some("Z/2"), 1).build().unwrap();
        assert_eq!(c.num_morphisms(), 4);
        assert_eq!(hom_size(&c, 1, 1), 2);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn vi2_level_two() {
        let c = InstanceSpec::vi(2, 2).build().unwrap();
        assert_eq!(c.num_morphisms(), 13);
        assert_eq!(hom_size(&c, 1, 2), 3);
        assert_eq!(hom_size(&c, 2, 2), 6);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn vi3_level_one_scalars() {
        let c = InstanceSpec::vi(3, 1).build().unwrap();
        assert_eq!(hom_size(&c, 1, 1), 2);
        assert_eq!(hom_size(&c, 0, 1), 1);
    }

    #[test]
    fn counts_match_formulas() {
        for (spec, order) in [
            (InstanceSpec::fi(None, 3), 1),
            (InstanceSpec::fi(Some("Z/2"), 2), 2),
        ] {
            let c = spec.build().unwrap();
            for m in 0..=spec.level {
                for n in 0..=spec.level {
                    assert_eq!(hom_size(&c, m, n) as u128, fi_g_hom_size(order, m, n));
                }
            }
        }
        let c = InstanceSpec::vi(2, 3).build().unwrap();
        for m in 0..=3 {
            for n in 0..=3 {
                assert_eq!(hom_size(&c, m, n) as u128, viq_hom_size(2, m, n));
            }
        }
        assert_eq!(hom_size(&c, 3, 3), 168);
    }

    #[test]
    fn generated_categories_are_valid_and_mono() {
        for spec in [
            InstanceSpec::fi(None, 3),
            InstanceSpec::fi(Some("Z/2"), 2),
            InstanceSpec::fi(Some("S_3"), 1),
            InstanceSpec::vi(2, 2),
            InstanceSpec::vi(3, 2),
        ] {
            let c = spec.build().unwrap();
            assert!(c.validate().is_ok(), "{spec}");
            assert!(c.non_monomorphisms().is_empty(), "{spec}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = InstanceSpec::vi(3, 3).build().unwrap_err();
        assert!(matches!(err, InstanceError::CapExceeded { .. }));
        let mut spec = InstanceSpec::vi(2, 3);
        spec.cap = Some(100);
        assert!(spec.build().is_err());
    }

    #[test]
    fn groups() {
        assert_eq!(cyclic_group(1).order(), 1);
        let z2 = cyclic_group(2);
        assert_eq!(z2.mul(1, 1), 0);
        let s3 = symmetric_group(3);
        assert_eq!(s3.order(), 6);
        assert!(group_from_table(s3.table().to_vec()).is_ok());
        // Not associative and no identity.
        let err = group_from_table(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, InstanceError::InvalidGroup(ref p) if !p.is_empty()));
        let c = group_category(&s3);
        assert!(c.validate().is_ok());
        assert_eq!(c.automorphisms(Obj(0)).len(), 6);
    }

    #[test]
    fn field_from_tables() {
        // F_4 = F_2[x]/(x^2+x+1) with 2 = x, 3 = x+1.
        let add = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let mul = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 3, 1],
            vec![0, 3, 1, 2],
        ];
        let f = FiniteField::from_tables(add.clone(), mul).unwrap();
        let c = viq_truncation(&f, 1, DEFAULT_CAP).unwrap();
        assert_eq!(c.automorphisms(c.object("1").unwrap()).len(), 3);
        assert!(FiniteField::from_tables(add.clone(), add).is_err());
        assert!(matches!(
            FiniteField::prime(4),
            Err(InstanceError::NotPrime(4))
        ));
    }

    #[test]
    fn spec_parsing() {
        let s = InstanceSpec::parse("family = \"FI_G\"\ngroup = \"Z/2\"\nlevel = 2\n").unwrap();
        assert_eq!(s, InstanceSpec::fi(Some("Z/2"), 2));
        let s =
            InstanceSpec::parse(r#"{"family": "VI_q", "q": 2, "level": 2, "cap": 50}"#).unwrap();
        assert_eq!(s.cap, Some(50));
        assert!(InstanceSpec::parse("family = \"XY\"\nlevel = 1").is_err());
        assert!(InstanceSpec::parse(r#"{"family": "FI", "level": 1, "bogus": 1}"#).is_err());
    }
}
