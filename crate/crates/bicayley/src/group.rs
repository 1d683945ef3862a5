//! Finite groups as explicit multiplication tables.
//!
//! Every group here is small enough to materialize in full: an `n × n`
//! product table, an inverse table, and the convention that element id 0 is
//! always the identity (explicit table input is re-canonicalized to satisfy
//! this). Groups are immutable after construction and safe to share across
//! threads.
//!
//! The descriptor mini-language understood by [`FiniteGroup::from_descriptor`]:
//!
//! ```text
//! cyclic:6
//! dihedral:4
//! symmetric:4
//! product:cyclic:2,cyclic:4          (operands may nest, e.g. product:cyclic:2,product:cyclic:2,cyclic:2)
//! table:/path/to/group.json          (JSON document {"order": n, "table": [[..]], "label": ".."})
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order accepted by [`FiniteGroup::all_subgroups`].
pub const SUBGROUP_ENUMERATION_BOUND: usize = 64;

/// Largest `k` for which `symmetric:k` is constructed (k! grows fast).
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

/// A canonical, duplicate-free, ascending set of element ids.
///
/// Element sets are value-semantic: two sets are equal exactly when their
/// sorted member lists are equal. They carry no pointer to a parent group;
/// group operations validate ids against the group they are invoked on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(Vec<usize>);

impl ElementSet {
    pub fn new(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }

    pub fn empty() -> Self {
        ElementSet(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet::new(self.iter().chain(other.iter()))
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    /// Members without one element (used for "all of T except t" products).
    pub fn without(&self, excluded: &[usize]) -> ElementSet {
        ElementSet(
            self.0
                .iter()
                .copied()
                .filter(|x| !excluded.contains(x))
                .collect(),
        )
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// A validated subgroup: contains the identity and is closed under product
/// and inverse. Only constructible through [`FiniteGroup`] methods.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subgroup(ElementSet);

impl Subgroup {
    pub fn carrier(&self) -> &ElementSet {
        &self.0
    }

    pub fn members(&self) -> &[usize] {
        self.0.members()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // subgroups always contain the identity
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.contains(id)
    }
}

#[derive(Deserialize)]
struct TableFile {
    order: usize,
    table: Vec<Vec<usize>>,
    label: String,
}

/// A finite group given by its full multiplication table.
///
/// `product[a][b]` is the id of `a·b`; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    product: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    label: String,
}

impl FiniteGroup {
    /// Cyclic group of order `n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "cyclic group order must be >= 1".into(),
            ));
        }
        let product = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Ok(Self::from_valid_table(product, format!("Z{n}")))
    }

    /// Dihedral group of order `2n` (`n >= 3`). Ids `0..n` are the rotations
    /// `r^i`, ids `n..2n` are the reflections `r^i s`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(
                "dihedral parameter must be >= 3".into(),
            ));
        }
        let id = |i: usize, refl: usize| refl * n + i;
        let mut product = vec![vec![0usize; 2 * n]; 2 * n];
        for i in 0..n {
            for e in 0..2 {
                for k in 0..n {
                    for f in 0..2 {
                        // r^i s^e · r^k s^f = r^(i ± k) s^(e xor f), sign by e
                        let j = if e == 0 { (i + k) % n } else { (i + n - k) % n };
                        product[id(i, e)][id(k, f)] = id(j, e ^ f);
                    }
                }
            }
        }
        Ok(Self::from_valid_table(product, format!("D{n}")))
    }

    /// Symmetric group on `k` letters (`1 <= k <= 5`), permutations ordered
    /// lexicographically by one-line notation so the identity gets id 0.
    /// Composition is `(p·q)(x) = p(q(x))`.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k == 0 || k > MAX_SYMMETRIC_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "symmetric group degree must be in 1..={MAX_SYMMETRIC_DEGREE}, got {k}"
            )));
        }
        let perms = permutations_lex(k);
        let index: BTreeMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let n = perms.len();
        let mut product = vec![vec![0usize; n]; n];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..k).map(|x| p[q[x]]).collect();
                product[a][b] = index[composed.as_slice()];
            }
        }
        Ok(Self::from_valid_table(product, format!("S{k}")))
    }

    /// Direct product `A × B` with row-major element ids `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.order * b.order;
        let id = |x: usize, y: usize| x * b.order + y;
        let mut product = vec![vec![0usize; n]; n];
        for xa in 0..a.order {
            for xb in 0..b.order {
                for ya in 0..a.order {
                    for yb in 0..b.order {
                        product[id(xa, xb)][id(ya, yb)] = id(a.product[xa][ya], b.product[xb][yb]);
                    }
                }
            }
        }
        Self::from_valid_table(product, format!("{}x{}", a.label, b.label))
    }

    /// Build from an untrusted multiplication table. The table is validated
    /// against all four group axioms and relabeled so the identity is 0.
    pub fn from_table(table: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::GroupConstruction {
                axiom: "closure",
                detail: "empty table".into(),
            });
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::GroupConstruction {
                    axiom: "closure",
                    detail: format!("row {a} has length {} but order is {n}", row.len()),
                });
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::GroupConstruction {
                        axiom: "closure",
                        detail: format!("entry ({a},{b}) = {v} is not an element id"),
                    });
                }
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::GroupConstruction {
                axiom: "identity",
                detail: "no two-sided identity element".into(),
            })?;

        // Re-canonicalize: swap labels 0 <-> identity.
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut canon = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                canon[relabel(a)][relabel(b)] = relabel(table[a][b]);
            }
        }

        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| canon[a][b] == 0 && canon[b][a] == 0) {
                Some(b) => inverse[a] = b,
                None => {
                    return Err(Error::GroupConstruction {
                        axiom: "inverse",
                        detail: format!("element {a} has no two-sided inverse"),
                    })
                }
            }
        }

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if canon[canon[a][b]][c] != canon[a][canon[b][c]] {
                        return Err(Error::GroupConstruction {
                            axiom: "associativity",
                            detail: format!("(a·b)·c != a·(b·c) at (a,b,c) = ({a},{b},{c})"),
                        });
                    }
                }
            }
        }

        Ok(FiniteGroup {
            order: n,
            product: canon,
            inverse,
            label: label.into(),
        })
    }

    /// Load an explicit table from a JSON file `{"order", "table", "label"}`.
    pub fn from_table_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        let file: TableFile = serde_json::from_str(&text)
            .map_err(|e| Error::TableFormat(format!("{}: {e}", path.as_ref().display())))?;
        if file.order != file.table.len() {
            return Err(Error::TableFormat(format!(
                "declared order {} does not match table size {}",
                file.order,
                file.table.len()
            )));
        }
        Self::from_table(file.table, file.label)
    }

    /// Parse a group descriptor (see module docs for the grammar).
    pub fn from_descriptor(desc: &str) -> Result<Self> {
        let (group, rest) = parse_descriptor_prefix(desc.trim())?;
        if !rest.is_empty() {
            return Err(Error::Descriptor(format!(
                "trailing input {rest:?} after descriptor in {desc:?}"
            )));
        }
        Ok(group)
    }

    /// Internal constructor for tables known to be valid by construction.
    fn from_valid_table(product: Vec<Vec<usize>>, label: String) -> Self {
        let n = product.len();
        let mut inverse = vec![0usize; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| product[a][b] == 0)
                .expect("group row lacks identity");
        }
        debug_assert!((0..n).all(|x| product[0][x] == x && product[x][0] == x));
        FiniteGroup {
            order: n,
            product,
            inverse,
            label,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Always 0 by the canonicalization convention.
    pub fn identity(&self) -> usize {
        0
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "element id {a} out of range for {} (order {})",
                self.label, self.order
            )))
        }
    }

    pub fn check_set(&self, s: &ElementSet) -> Result<()> {
        match s.members().last() {
            Some(&max) if max >= self.order => Err(Error::InvalidArgument(format!(
                "set {s} is not a subset of {} (order {})",
                self.label, self.order
            ))),
            _ => Ok(()),
        }
    }

    pub fn multiply(&self, a: usize, b: usize) -> Result<usize> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.product[a][b])
    }

    pub fn inverse(&self, a: usize) -> Result<usize> {
        self.check_element(a)?;
        Ok(self.inverse[a])
    }

    /// Unchecked table lookups for internal hot paths (ids pre-validated).
    #[inline]
    pub(crate) fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    #[inline]
    pub(crate) fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, a: usize) -> Result<usize> {
        self.check_element(a)?;
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.product[x][a];
            k += 1;
        }
        Ok(k)
    }

    /// The whole group as an element set.
    pub fn full_set(&self) -> ElementSet {
        ElementSet((0..self.order).collect())
    }

    /// `{a·b : a ∈ A, b ∈ B}`, deduplicated.
    pub fn product_set(&self, a: &ElementSet, b: &ElementSet) -> Result<ElementSet> {
        self.check_set(a)?;
        self.check_set(b)?;
        let mut out = BTreeSet::new();
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.product[x][y]);
            }
        }
        Ok(ElementSet(out.into_iter().collect()))
    }

    /// `{a⁻¹ : a ∈ A}`.
    pub fn inverse_set(&self, a: &ElementSet) -> Result<ElementSet> {
        self.check_set(a)?;
        Ok(ElementSet::new(a.iter().map(|x| self.inverse[x])))
    }

    /// Left coset `g·H` of a member set.
    pub fn left_translate(&self, g: usize, h: &ElementSet) -> Result<ElementSet> {
        self.check_element(g)?;
        self.check_set(h)?;
        Ok(ElementSet::new(h.iter().map(|x| self.product[g][x])))
    }

    /// Right coset `H·g` of a member set.
    pub fn right_translate(&self, h: &ElementSet, g: usize) -> Result<ElementSet> {
        self.check_element(g)?;
        self.check_set(h)?;
        Ok(ElementSet::new(h.iter().map(|x| self.product[x][g])))
    }

    /// Smallest subgroup containing `S`, by closure iteration. `⟨∅⟩` is the
    /// trivial subgroup.
    pub fn generated_subgroup(&self, s: &ElementSet) -> Result<Subgroup> {
        self.check_set(s)?;
        let mut members = BTreeSet::new();
        members.insert(0usize);
        let mut frontier: Vec<usize> = s.iter().filter(|&x| members.insert(x)).collect();
        while let Some(x) = frontier.pop() {
            let known: Vec<usize> = members.iter().copied().collect();
            for y in known {
                for z in [self.product[x][y], self.product[y][x]] {
                    if members.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        Ok(Subgroup(ElementSet(members.into_iter().collect())))
    }

    /// Identity membership, closure under product, closure under inverse.
    /// Sets containing out-of-range ids are simply not subgroups.
    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        if self.check_set(s).is_err() || !s.contains(0) {
            return false;
        }
        for a in s.iter() {
            if !s.contains(self.inverse[a]) {
                return false;
            }
            for b in s.iter() {
                if !s.contains(self.product[a][b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Validate a member set and wrap it as a [`Subgroup`].
    pub fn subgroup_from_set(&self, s: &ElementSet) -> Result<Subgroup> {
        if self.is_subgroup(s) {
            Ok(Subgroup(s.clone()))
        } else {
            Err(Error::InvalidArgument(format!(
                "{s} is not a subgroup of {}",
                self.label
            )))
        }
    }

    /// Complete subgroup list, sorted by (size, carrier). Seeds with the
    /// cyclic subgroups `⟨a⟩` and closes under pairwise joins
    /// `⟨H ∪ K⟩` until no new subgroup appears.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order > SUBGROUP_ENUMERATION_BOUND {
            return Err(Error::ResourceLimit(format!(
                "subgroup enumeration supports order <= {SUBGROUP_ENUMERATION_BOUND}, \
                 got {}",
                self.order
            )));
        }
        let mut found: BTreeSet<ElementSet> = BTreeSet::new();
        for a in 0..self.order {
            found.insert(self.generated_subgroup(&ElementSet::new([a]))?.0);
        }
        loop {
            let snapshot: Vec<ElementSet> = found.iter().cloned().collect();
            let mut grew = false;
            for i in 0..snapshot.len() {
                for j in (i + 1)..snapshot.len() {
                    let join = self.generated_subgroup(&snapshot[i].union(&snapshot[j]))?.0;
                    if found.insert(join) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(Subgroup).collect();
        out.sort_by(|a, b| (a.len(), a.members()).cmp(&(b.len(), b.members())));
        Ok(out)
    }

    /// Partition of the group into left cosets `g·H`, ordered by their
    /// smallest member.
    pub fn left_cosets(&self, h: &Subgroup) -> Result<Vec<ElementSet>> {
        if !self.is_subgroup(h.carrier()) {
            return Err(Error::InvalidArgument(format!(
                "{} is not a subgroup of {}",
                h.carrier(),
                self.label
            )));
        }
        let mut seen = vec![false; self.order];
        let mut cells = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let coset = self.left_translate(g, h.carrier())?;
            for x in coset.iter() {
                seen[x] = true;
            }
            cells.push(coset);
        }
        Ok(cells)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order)
    }
}

fn permutations_lex(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn parse_descriptor_prefix(s: &str) -> Result<(FiniteGroup, &str)> {
    if let Some(rest) = s.strip_prefix("cyclic:") {
        let (n, rest) = parse_usize_prefix(rest, "cyclic")?;
        return Ok((FiniteGroup::cyclic(n)?, rest));
    }
    if let Some(rest) = s.strip_prefix("dihedral:") {
        let (n, rest) = parse_usize_prefix(rest, "dihedral")?;
        return Ok((FiniteGroup::dihedral(n)?, rest));
    }
    if let Some(rest) = s.strip_prefix("symmetric:") {
        let (k, rest) = parse_usize_prefix(rest, "symmetric")?;
        return Ok((FiniteGroup::symmetric(k)?, rest));
    }
    if let Some(rest) = s.strip_prefix("product:") {
        let (a, rest) = parse_descriptor_prefix(rest)?;
        let rest = rest.strip_prefix(',').ok_or_else(|| {
            Error::Descriptor("product: expects two comma-separated operands".into())
        })?;
        let (b, rest) = parse_descriptor_prefix(rest)?;
        return Ok((FiniteGroup::direct_product(&a, &b), rest));
    }
    if let Some(path) = s.strip_prefix("table:") {
        if path.is_empty() {
            return Err(Error::Descriptor("table: expects a file path".into()));
        }
        // A table path consumes the rest of the descriptor.
        return Ok((FiniteGroup::from_table_file(path)?, ""));
    }
    Err(Error::Descriptor(format!(
        "unknown group descriptor {s:?} (expected cyclic:/dihedral:/symmetric:/product:/table:)"
    )))
}

fn parse_usize_prefix<'a>(s: &'a str, what: &str) -> Result<(usize, &'a str)> {
    let digits = s.len() - s.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 {
        return Err(Error::Descriptor(format!(
            "{what}: expects an integer parameter"
        )));
    }
    let n = s[..digits]
        .parse::<usize>()
        .map_err(|e| Error::Descriptor(format!("{what}: bad integer: {e}")))?;
    Ok((n, &s[digits..]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> ElementSet {
        ElementSet::new(ids.iter().copied())
    }

    #[test]
    fn cyclic_trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.product, vec![vec![0]]);
    }

    #[test]
    fn cyclic_six_is_addition_mod_six() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(g.multiply(4, 5).unwrap(), 3);
        assert_eq!(g.inverse(2).unwrap(), 4);
        for a in 0..6 {
            assert_eq!(g.multiply(0, a).unwrap(), a);
        }
    }

    #[test]
    fn dihedral_four_has_two_elements_of_order_four() {
        let g = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        let count = (0..8).filter(|&a| g.element_order(a).unwrap() == 4).count();
        assert_eq!(count, 2);
    }

    #[test]
    fn associativity_exhaustive_on_catalog() {
        let groups = [
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(2).unwrap(),
                &FiniteGroup::cyclic(4).unwrap(),
            ),
        ];
        for g in &groups {
            assert!(g.order() <= 24);
            for a in 0..g.order() {
                assert_eq!(g.multiply(a, g.inverse(a).unwrap()).unwrap(), 0);
                for b in 0..g.order() {
                    for c in 0..g.order() {
                        let ab_c = g.mul(g.mul(a, b), c);
                        let a_bc = g.mul(a, g.mul(b, c));
                        assert_eq!(ab_c, a_bc, "{}: ({a}·{b})·{c}", g.label());
                    }
                }
            }
        }
    }

    #[test]
    fn construction_errors_name_the_violated_axiom() {
        assert!(matches!(
            FiniteGroup::cyclic(0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            FiniteGroup::dihedral(2),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            FiniteGroup::symmetric(6),
            Err(Error::InvalidArgument(_))
        ));

        // Z3 table with one corrupted entry: 2+2 = 0 replaced by 2.
        let bad = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 2]];
        match FiniteGroup::from_table(bad, "bad") {
            Err(Error::GroupConstruction { axiom, .. }) => {
                assert!(axiom == "inverse" || axiom == "associativity" || axiom == "identity")
            }
            other => panic!("expected construction error, got {other:?}"),
        }

        let out_of_range = vec![vec![0, 1], vec![1, 7]];
        match FiniteGroup::from_table(out_of_range, "oor") {
            Err(Error::GroupConstruction {
                axiom: "closure", ..
            }) => {}
            other => panic!("expected closure error, got {other:?}"),
        }
    }

    #[test]
    fn explicit_table_identity_is_recanonicalized_to_zero() {
        // Z3 written with the identity as element 2:
        // a=0, b=1, e=2 with a·a=b, a·b=e, b·b=a.
        let table = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(table, "shifted-Z3").unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.order(), 3);
        // Isomorphic to Z3: two elements of order 3, identity of order 1.
        let orders: Vec<usize> = (0..3).map(|a| g.element_order(a).unwrap()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
    }

    #[test]
    fn product_and_inverse_sets() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.inverse_set(&set(&[0, 2])).unwrap(), set(&[0, 2]));
        assert_eq!(
            z4.product_set(&set(&[0, 2]), &set(&[0, 1, 2])).unwrap(),
            set(&[0, 1, 2, 3])
        );
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(z6.product_set(&set(&[2]), &set(&[3])).unwrap(), set(&[5]));
        assert!(z4.product_set(&set(&[5]), &set(&[0])).is_err());
    }

    #[test]
    fn generated_subgroups() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(
            z6.generated_subgroup(&set(&[2])).unwrap().members(),
            &[0, 2, 4]
        );
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(
            z4.generated_subgroup(&set(&[2])).unwrap().members(),
            &[0, 2]
        );
        assert_eq!(
            z4.generated_subgroup(&ElementSet::empty())
                .unwrap()
                .members(),
            &[0]
        );
        // result passes is_subgroup and contains the generators
        let d4 = FiniteGroup::dihedral(4).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                let h = d4.generated_subgroup(&set(&[a, b])).unwrap();
                assert!(d4.is_subgroup(h.carrier()));
                assert!(h.contains(a) && h.contains(b));
            }
        }
    }

    #[test]
    fn subgroup_counts_and_bruteforce_cross_check() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.all_subgroups().unwrap().len(), 3);
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(z6.all_subgroups().unwrap().len(), 4);
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.all_subgroups().unwrap().len(), 10);

        // Exhaustive subset filter agrees for every catalog group of order <= 12.
        for g in [
            FiniteGroup::cyclic(1).unwrap(),
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::cyclic(12).unwrap(),
            d4,
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(2).unwrap(),
                &FiniteGroup::cyclic(2).unwrap(),
            ),
        ] {
            let n = g.order();
            let mut brute: Vec<ElementSet> = Vec::new();
            for mask in 1u64..(1u64 << n) {
                let s = ElementSet::new((0..n).filter(|&i| mask >> i & 1 == 1));
                if g.is_subgroup(&s) {
                    brute.push(s);
                }
            }
            brute.sort_by(|a, b| (a.len(), a.members()).cmp(&(b.len(), b.members())));
            let enumerated: Vec<ElementSet> = g
                .all_subgroups()
                .unwrap()
                .into_iter()
                .map(|h| h.0)
                .collect();
            assert_eq!(
                enumerated,
                brute,
                "subgroup lattice mismatch for {}",
                g.label()
            );
            // Lagrange
            for h in &enumerated {
                assert_eq!(n % h.len(), 0);
            }
        }
    }

    #[test]
    fn is_subgroup_and_cosets() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert!(!z4.is_subgroup(&set(&[0, 1])));
        let h = z4.subgroup_from_set(&set(&[0, 2])).unwrap();
        let cosets = z4.left_cosets(&h).unwrap();
        assert_eq!(cosets, vec![set(&[0, 2]), set(&[1, 3])]);
        let whole = z4.subgroup_from_set(&z4.full_set()).unwrap();
        assert_eq!(z4.left_cosets(&whole).unwrap(), vec![z4.full_set()]);

        // cells are disjoint and cover G
        let d4 = FiniteGroup::dihedral(4).unwrap();
        for h in d4.all_subgroups().unwrap() {
            let cells = d4.left_cosets(&h).unwrap();
            assert_eq!(cells.len(), d4.order() / h.len());
            let mut seen = vec![false; d4.order()];
            for cell in &cells {
                assert_eq!(cell.len(), h.len());
                for x in cell.iter() {
                    assert!(!seen[x]);
                    seen[x] = true;
                }
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!(FiniteGroup::from_descriptor("cyclic:6").unwrap().order(), 6);
        assert_eq!(
            FiniteGroup::from_descriptor("dihedral:4").unwrap().order(),
            8
        );
        assert_eq!(
            FiniteGroup::from_descriptor("symmetric:4").unwrap().order(),
            24
        );
        let p = FiniteGroup::from_descriptor("product:cyclic:2,cyclic:4").unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.label(), "Z2xZ4");
        let z2cubed =
            FiniteGroup::from_descriptor("product:cyclic:2,product:cyclic:2,cyclic:2").unwrap();
        assert_eq!(z2cubed.order(), 8);
        assert!((0..8).all(|a| z2cubed.element_order(a).unwrap() <= 2));
        assert!(FiniteGroup::from_descriptor("cyclic:").is_err());
        assert!(FiniteGroup::from_descriptor("frobnicate:3").is_err());
        assert!(FiniteGroup::from_descriptor("cyclic:3,cyclic:2").is_err());
    }

    #[test]
    fn table_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("bicayley-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("klein.json");
        std::fs::write(
            &path,
            r#"{"order": 4, "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]], "label": "V4"}"#,
        )
        .unwrap();
        let g = FiniteGroup::from_descriptor(&format!("table:{}", path.display())).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.label(), "V4");
        assert!((1..4).all(|a| g.element_order(a).unwrap() == 2));
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn direct_product_uses_row_major_pairing() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let p = FiniteGroup::direct_product(&z2, &z4);
        // (1,2) has id 1*4+2 = 6; (1,2)·(1,3) = (0,1) -> id 1
        assert_eq!(p.multiply(6, 7).unwrap(), 1);
    }
}
