//! Depth-first enumeration of multiplicative maps.
//!
//! The variables are the monoid generators of the domain plus its identity,
//! in ascending index order. Assigning the first `t` variables decides every
//! element of the subsemigroup they generate; that set depends only on `t`,
//! so the forced images and the checks that become decidable at each level
//! are compiled once into a [`LevelPlan`].
//!
//! Multiplicativity reduces to `φ(y·g) = φ(y)φ(g)` for every element `y`
//! and variable `g`: any `x` other than the identity is a product of
//! variables, and the identity is itself a variable.
//!
//! Every non-variable element is generated by variables of smaller index, so
//! lexicographic order on variable assignments is lexicographic order on
//! image arrays.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::generators::monoid_generators;
use crate::error::{Error, Result};
use crate::finring::{Elem, MatrixRingView, RingTable};
use crate::maps::MapTable;
use crate::spec::RingSpec;

pub const DEFAULT_LIMIT: u64 = 100_000;

/// Extra predicates on top of multiplicativity, checked as soon as decidable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FilterSet {
    pub unital: bool,
    pub star: bool,
    pub corner_relation: bool,
    pub i_relation: bool,
    /// Distinct images; used for isomorphism probes.
    pub injective: bool,
}

impl FilterSet {
    /// Accepts canonical names and a few aliases (`corner`, `eq_e`, `i-relation`, ...).
    pub fn insert_name(&mut self, name: &str) -> Result<()> {
        let norm: String = name.trim().chars().map(|c| if c == '-' { '_' } else { c.to_ascii_lowercase() }).collect();
        match norm.as_str() {
            "multiplicative" | "mult" => {}
            "unital" => self.unital = true,
            "star" => self.star = true,
            "corner_relation" | "corner" | "eq_e" => self.corner_relation = true,
            "i_relation" | "i_rel" | "equ_i" => self.i_relation = true,
            "injective" => self.injective = true,
            _ => return Err(Error::InvalidParameter(alloc::format!("unknown filter `{name}`"))),
        }
        Ok(())
    }

    pub fn parse<I: IntoIterator<Item = S>, S: AsRef<str>>(names: I) -> Result<Self> {
        let mut f = FilterSet::default();
        for n in names {
            f.insert_name(n.as_ref())?;
        }
        Ok(f)
    }

    /// Canonical names of the enabled filters.
    pub fn names(&self) -> Vec<&'static str> {
        let flags = [
            (self.unital, "unital"),
            (self.star, "star"),
            (self.corner_relation, "corner_relation"),
            (self.i_relation, "i_relation"),
            (self.injective, "injective"),
        ];
        flags.iter().filter(|f| f.0).map(|f| f.1).collect()
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for FilterSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.names())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for FilterSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let names = <Vec<String> as serde::Deserialize>::deserialize(d)?;
        FilterSet::parse(&names).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Order {
    #[default]
    Lexicographic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnumerationQuery {
    pub dom: RingSpec,
    pub cod: RingSpec,
    #[cfg_attr(feature = "serde", serde(default))]
    pub filters: FilterSet,
    #[cfg_attr(feature = "serde", serde(default = "default_limit"))]
    pub limit: u64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub order: Order,
    /// Search nodes allowed per top-level branch; unbounded when absent.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub node_cap: Option<u64>,
}

#[cfg(feature = "serde")]
fn default_limit() -> u64 {
    DEFAULT_LIMIT
}

impl EnumerationQuery {
    pub fn new(dom: RingSpec, cod: RingSpec) -> Self {
        EnumerationQuery { dom, cod, filters: FilterSet::default(), limit: DEFAULT_LIMIT, order: Order::Lexicographic, node_cap: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.limit == 0 {
            return Err(Error::InvalidParameter("limit must be at least 1".into()));
        }
        if self.node_cap == Some(0) {
            return Err(Error::InvalidParameter("node cap must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
enum Special {
    Corner { one: Elem, e11: Elem, e22: Elem },
    IRelation { i: Elem, e11: Elem, e22: Elem, ci: Elem },
}

#[derive(Debug, Clone, Default)]
struct LevelPlan {
    var: Elem,
    fixed: Option<Elem>,
    /// `(y, g, z)` with `z` first decided here: `φ(z) = φ(y)φ(g)`.
    define: Vec<(Elem, Elem, Elem)>,
    /// `(y, g, z)` checks `φ(z) = φ(y)φ(g)`.
    check: Vec<(Elem, Elem, Elem)>,
    /// `x` checks `φ(x*) = φ(x)*`.
    star: Vec<Elem>,
    special: Vec<Special>,
    /// Elements decided at this level, the variable first.
    fresh: Vec<Elem>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BranchResult {
    pub maps: Vec<Vec<Elem>>,
    pub capped: bool,
    pub nodes: u64,
}

/// Merged enumeration result. `complete` means no branch hit the node cap
/// among those that contributed; `truncated` means more maps exist beyond
/// the limit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub maps: Vec<Vec<Elem>>,
    pub complete: bool,
    pub truncated: bool,
    pub capped_branches: u64,
}

/// Compiled search plan for one `(dom, cod, filters)` triple.
#[derive(Debug, Clone)]
pub struct Enumerator {
    dom: Arc<RingTable>,
    cod: Arc<RingTable>,
    filters: FilterSet,
    vars: Vec<Elem>,
    levels: Vec<LevelPlan>,
    split: usize,
}

struct Search<'a> {
    plan: &'a Enumerator,
    img: Vec<Elem>,
    used: Vec<u32>,
    nodes: u64,
    node_cap: Option<u64>,
    capped: bool,
}

impl Enumerator {
    pub fn new(dom: Arc<RingTable>, cod: Arc<RingTable>, filters: FilterSet) -> Result<Self> {
        let (d, c) = (&*dom, &*cod);
        if filters.star {
            d.require_star()?;
            c.require_star()?;
        }
        let mut specials = Vec::new();
        if filters.corner_relation || filters.i_relation {
            let view = MatrixRingView::of_2x2(&dom)?;
            let (e11, e22) = (view.unit(0, 0), view.unit(1, 1));
            if filters.corner_relation {
                specials.push(Special::Corner { one: d.one(), e11, e22 });
            }
            if filters.i_relation {
                specials.push(Special::IRelation { i: d.require_i()?, e11, e22, ci: c.require_i()? });
            }
        }

        let mut vars = monoid_generators(d).gens;
        vars.push(d.one());
        vars.sort_unstable();
        vars.dedup();

        let n = d.size();
        let mut level_of: Vec<Option<usize>> = vec![None; n];
        let mut is_define = vec![false; n * vars.len()];
        let mut levels: Vec<LevelPlan> = Vec::with_capacity(vars.len());
        let mut decided: Vec<Elem> = Vec::new();

        for (t, &v) in vars.iter().enumerate() {
            let mut lp = LevelPlan { var: v, ..Default::default() };
            if filters.unital && v == d.one() {
                lp.fixed = Some(c.one());
            }
            debug_assert!(level_of[v as usize].is_none());
            level_of[v as usize] = Some(t);
            lp.fresh.push(v);
            let mut mark = |y: Elem, gi: usize, lp: &mut LevelPlan, level_of: &mut Vec<Option<usize>>| {
                let z = d.mul(y, vars[gi]);
                if level_of[z as usize].is_none() {
                    level_of[z as usize] = Some(t);
                    is_define[y as usize * vars.len() + gi] = true;
                    lp.define.push((y, vars[gi], z));
                    lp.fresh.push(z);
                }
            };
            for &y in &decided {
                mark(y, t, &mut lp, &mut level_of);
            }
            let mut head = 0;
            while head < lp.fresh.len() {
                let y = lp.fresh[head];
                head += 1;
                for gi in 0..=t {
                    mark(y, gi, &mut lp, &mut level_of);
                }
            }
            decided.extend_from_slice(&lp.fresh);
            levels.push(lp);
        }
        let level = |x: Elem| level_of[x as usize].expect("generators must generate the domain");

        for y in d.elements() {
            for (gi, &g) in vars.iter().enumerate() {
                if is_define[y as usize * vars.len() + gi] {
                    continue;
                }
                let z = d.mul(y, g);
                let t = level(y).max(gi).max(level(z));
                levels[t].check.push((y, g, z));
            }
        }
        if filters.star {
            let s = d.star_table().unwrap();
            for x in d.elements() {
                if x <= s[x as usize] {
                    levels[level(x).max(level(s[x as usize]))].star.push(x);
                }
            }
        }
        for sp in specials {
            let t = match sp {
                Special::Corner { one, e11, e22 } => level(one).max(level(e11)).max(level(e22)),
                Special::IRelation { i, e11, e22, .. } => level(i).max(level(e11)).max(level(e22)),
            };
            levels[t].special.push(sp);
        }

        let split = vars.len().min(2);
        Ok(Enumerator { dom, cod, filters, vars, levels, split })
    }

    pub fn from_query(q: &EnumerationQuery, cap: usize) -> Result<Self> {
        q.validate()?;
        Self::new(q.dom.build(cap)?, q.cod.build(cap)?, q.filters)
    }

    pub fn dom(&self) -> &Arc<RingTable> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<RingTable> {
        &self.cod
    }

    pub fn filters(&self) -> FilterSet {
        self.filters
    }

    /// Variables in assignment order.
    pub fn variables(&self) -> &[Elem] {
        &self.vars
    }

    /// Consistent assignments of the leading variables, ascending. Each one
    /// roots an independent subtree.
    pub fn branches(&self) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        let mut s = Search::new(self, None);
        s.prefixes(0, self.split, &mut out);
        out
    }

    /// Explores one subtree, calling `f` on each complete image array in
    /// lexicographic order until it returns false.
    pub fn for_each_in_branch(&self, prefix: &[Elem], node_cap: Option<u64>, f: &mut dyn FnMut(&[Elem]) -> bool) -> BranchResult {
        let mut s = Search::new(self, node_cap);
        let mut ok = true;
        for (t, &val) in prefix.iter().enumerate() {
            ok = s.enter(t, val);
            debug_assert!(ok, "prefix must come from branches()");
        }
        if ok {
            s.dfs(prefix.len(), f);
        }
        BranchResult { maps: Vec::new(), capped: s.capped, nodes: s.nodes }
    }

    /// Collects up to `limit + 1` maps from one subtree, enough for
    /// [`Enumerator::merge`] to detect truncation.
    pub fn run_branch(&self, prefix: &[Elem], limit: u64, node_cap: Option<u64>) -> BranchResult {
        let mut maps = Vec::new();
        let keep = limit.saturating_add(1);
        let mut r = self.for_each_in_branch(prefix, node_cap, &mut |img| {
            maps.push(img.to_vec());
            (maps.len() as u64) < keep
        });
        r.maps = maps;
        r
    }

    /// Concatenates branch results in branch order, stopping once more than
    /// `limit` maps are known. Only branches reached count toward
    /// `capped_branches`, so the result does not depend on which later
    /// branches were actually run.
    pub fn merge(results: impl IntoIterator<Item = BranchResult>, limit: u64) -> Outcome {
        let mut out = Outcome { complete: true, ..Default::default() };
        for r in results {
            if r.capped {
                out.capped_branches += 1;
                out.complete = false;
            }
            out.maps.extend(r.maps);
            if out.maps.len() as u64 > limit {
                out.maps.truncate(limit as usize);
                out.truncated = true;
                break;
            }
        }
        out
    }

    /// Sequential run; stops at the first branch that overflows the limit.
    pub fn run(&self, limit: u64, node_cap: Option<u64>) -> Outcome {
        let mut results = Vec::new();
        let mut total = 0u64;
        for prefix in self.branches() {
            let r = self.run_branch(&prefix, limit, node_cap);
            total += r.maps.len() as u64;
            results.push(r);
            if total > limit {
                break;
            }
        }
        Self::merge(results, limit)
    }

    pub fn to_map(&self, img: Vec<Elem>) -> MapTable {
        MapTable::new(self.dom.clone(), self.cod.clone(), img).expect("enumerated images are in range")
    }
}

/// Convenience wrapper: builds the rings of a query and runs it sequentially.
pub fn enumerate_multiplicative_maps(q: &EnumerationQuery, cap: usize) -> Result<Outcome> {
    Ok(Enumerator::from_query(q, cap)?.run(q.limit, q.node_cap))
}

impl<'a> Search<'a> {
    fn new(plan: &'a Enumerator, node_cap: Option<u64>) -> Self {
        let used = if plan.filters.injective { vec![0; plan.cod.size()] } else { Vec::new() };
        Search { plan, img: vec![0; plan.dom.size()], used, nodes: 0, node_cap, capped: false }
    }

    /// Assigns variable `t` and runs that level's propagation and checks.
    /// On failure the level is left partially applied; [`Search::leave`]
    /// must still be called.
    fn enter(&mut self, t: usize, val: Elem) -> bool {
        let lp = &self.plan.levels[t];
        let c = &*self.plan.cod;
        let img = &mut self.img;
        img[lp.var as usize] = val;
        for &(y, g, z) in &lp.define {
            img[z as usize] = c.mul(img[y as usize], img[g as usize]);
        }
        if self.plan.filters.injective && !self.claim(t) {
            return false;
        }
        let img = &self.img;
        if !lp.check.iter().all(|&(y, g, z)| img[z as usize] == c.mul(img[y as usize], img[g as usize])) {
            return false;
        }
        if !lp.star.is_empty() {
            let (ds, cs) = (self.plan.dom.star_table().unwrap(), c.star_table().unwrap());
            if !lp.star.iter().all(|&x| img[ds[x as usize] as usize] == cs[img[x as usize] as usize]) {
                return false;
            }
        }
        lp.special.iter().all(|sp| match *sp {
            Special::Corner { one, e11, e22 } => img[one as usize] == c.add(img[e11 as usize], img[e22 as usize]),
            Special::IRelation { i, e11, e22, ci } => {
                img[i as usize] == c.add(c.mul(ci, img[e11 as usize]), c.mul(ci, img[e22 as usize]))
            }
        })
    }

    /// Marks the images of this level's fresh elements; fails on a repeat.
    fn claim(&mut self, t: usize) -> bool {
        let lp = &self.plan.levels[t];
        let mut ok = true;
        for &z in &lp.fresh {
            let slot = &mut self.used[self.img[z as usize] as usize];
            ok &= *slot == 0;
            *slot += 1;
        }
        ok
    }

    fn leave(&mut self, t: usize) {
        if self.plan.filters.injective {
            for &z in &self.plan.levels[t].fresh {
                self.used[self.img[z as usize] as usize] -= 1;
            }
        }
    }

    fn candidates(&self, t: usize) -> core::ops::Range<Elem> {
        match self.plan.levels[t].fixed {
            Some(v) => v..v + 1,
            None => self.plan.cod.elements(),
        }
    }

    fn prefixes(&mut self, t: usize, stop: usize, out: &mut Vec<Vec<Elem>>) {
        if t == stop {
            out.push(self.plan.vars[..stop].iter().map(|&v| self.img[v as usize]).collect());
            return;
        }
        for val in self.candidates(t) {
            if self.enter(t, val) {
                self.prefixes(t + 1, stop, out);
            }
            self.leave(t);
        }
    }

    /// Returns false once the callback asks to stop or the cap is hit.
    fn dfs(&mut self, t: usize, f: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
        if t == self.plan.levels.len() {
            return f(&self.img);
        }
        for val in self.candidates(t) {
            self.nodes += 1;
            if self.node_cap.is_some_and(|cap| self.nodes > cap) {
                self.capped = true;
                return false;
            }
            let ok = self.enter(t, val);
            let go_on = !ok || self.dfs(t + 1, f);
            self.leave(t);
            if !go_on {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_gaussian, make_matrix_ring, make_zmod, DEFAULT_SIZE_CAP};
    use crate::maps::{corner_relation_holds, is_additive, is_multiplicative};
    use matsemi_oracle as oracle;

    fn z(n: u32) -> Arc<RingTable> {
        Arc::new(make_zmod(n).unwrap())
    }

    fn m2(base: Arc<RingTable>) -> Arc<RingTable> {
        make_matrix_ring(&base, 2, DEFAULT_SIZE_CAP).unwrap().ring().clone()
    }

    fn tables(r: &RingTable) -> oracle::Tables {
        let n = r.size();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in r.elements() {
            for y in r.elements() {
                add.push(r.add(x, y));
                mul.push(r.mul(x, y));
            }
        }
        oracle::Tables { n, add, mul }
    }

    fn all(dom: &Arc<RingTable>, cod: &Arc<RingTable>, f: FilterSet) -> Vec<Vec<Elem>> {
        let e = Enumerator::new(dom.clone(), cod.clone(), f).unwrap();
        let out = e.run(u64::MAX - 1, None);
        assert!(out.complete && !out.truncated);
        out.maps
    }

    #[test]
    fn z2_to_z2_has_three_maps() {
        let maps = all(&z(2), &z(2), FilterSet::default());
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn matches_oracle_on_small_pairs() {
        let rings = [z(1), z(2), z(3), z(4), Arc::new(make_gaussian(2).unwrap()), z(5)];
        for d in &rings {
            for c in &rings {
                if (c.size() as f64).powi(d.size() as i32) > (1u64 << 20) as f64 {
                    continue;
                }
                let expected = oracle::multiplicative_maps(&tables(d), &tables(c));
                assert_eq!(all(d, c, FilterSet::default()), expected, "{} -> {}", d.label(), c.label());
            }
        }
    }

    #[test]
    fn matrix_domain_matches_oracle() {
        let (d, c) = (m2(z(2)), z(2));
        let expected = oracle::multiplicative_maps(&tables(&d), &tables(&c));
        let got = all(&d, &c, FilterSet::default());
        assert_eq!(got, expected);
        let corner = all(&d, &c, FilterSet { corner_relation: true, ..Default::default() });
        for img in &corner {
            let m = MapTable::new(d.clone(), c.clone(), img.clone()).unwrap();
            assert!(is_additive(&m).pass && corner_relation_holds(&m).unwrap().pass);
        }
        assert!(corner.len() < got.len());
    }

    #[test]
    fn unital_and_injective_filters() {
        let f = FilterSet { unital: true, ..Default::default() };
        assert_eq!(all(&z(2), &z(2), f), vec![vec![0, 1], vec![1, 1]]);
        let f = FilterSet { injective: true, ..Default::default() };
        assert_eq!(all(&z(4), &z(4), f), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn star_and_i_filters_on_gaussian_matrices() {
        let g = Arc::new(make_gaussian(2).unwrap());
        let d = m2(g.clone());
        let f = FilterSet { star: true, i_relation: true, ..Default::default() };
        let e = Enumerator::new(d.clone(), g.clone(), f).unwrap();
        let out = e.run(1000, None);
        assert!(out.complete);
        for img in out.maps {
            let m = e.to_map(img);
            assert!(is_multiplicative(&m).pass);
            assert!(crate::maps::respects_star(&m).unwrap().pass);
            assert!(crate::maps::i_relation_holds(&m).unwrap().pass);
        }
    }

    #[test]
    fn filters_need_structure() {
        let f = FilterSet { corner_relation: true, ..Default::default() };
        assert!(matches!(Enumerator::new(z(4), z(4), f), Err(Error::NotAMatrixRing(_))));
        let f = FilterSet { i_relation: true, ..Default::default() };
        assert!(Enumerator::new(m2(z(3)), z(3), f).is_err());
    }

    #[test]
    fn limit_and_merge() {
        let e = Enumerator::new(z(4), z(4), FilterSet::default()).unwrap();
        let full = e.run(1000, None);
        let one = e.run(1, None);
        assert_eq!(one.maps, full.maps[..1].to_vec());
        assert!(one.truncated);
        let parts: Vec<BranchResult> = e.branches().iter().map(|p| e.run_branch(p, 3, None)).collect();
        let merged = Enumerator::merge(parts, 3);
        assert_eq!(merged.maps, full.maps[..3].to_vec());
    }

    #[test]
    fn node_cap_marks_incomplete() {
        let e = Enumerator::new(m2(z(2)), m2(z(2)), FilterSet::default()).unwrap();
        let out = e.run(u64::MAX - 1, Some(5));
        assert!(!out.complete);
        assert!(out.capped_branches > 0);
    }

    #[test]
    fn filter_names() {
        let f = FilterSet::parse(["corner", "i-relation", "multiplicative"]).unwrap();
        assert_eq!(f.names(), vec!["corner_relation", "i_relation"]);
        assert!(FilterSet::parse(["bogus"]).is_err());
        let q = EnumerationQuery::new("zmod:2".parse().unwrap(), "zmod:2".parse().unwrap());
        assert!(q.validate().is_ok());
        assert!(EnumerationQuery { limit: 0, ..q }.validate().is_err());
    }
}
