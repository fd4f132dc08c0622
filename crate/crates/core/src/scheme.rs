//! Real schemes on the plane, the hyperboloid and the ellipsoid.
//!
//! A scheme is stored in canonical form: siblings are sorted by
//! (subtree size, rendered text), and on the hyperboloid the cyclic
//! sequence of annuli is normalized over rotations and reflections.
//! The same type carries orientation data when the mark is a `bool`.

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::notation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Surface {
    Plane,
    Hyperboloid,
    Ellipsoid,
}

impl Surface {
    pub fn name(self) -> &'static str {
        match self {
            Surface::Plane => "plane",
            Surface::Hyperboloid => "hyperboloid",
            Surface::Ellipsoid => "ellipsoid",
        }
    }

    pub fn from_name(s: &str) -> Option<Surface> {
        match s.to_ascii_lowercase().as_str() {
            "plane" => Some(Surface::Plane),
            "hyperboloid" => Some(Surface::Hyperboloid),
            "ellipsoid" => Some(Surface::Ellipsoid),
            _ => None,
        }
    }

    /// Euler characteristic of the real surface.
    pub fn euler(self) -> i64 {
        match self {
            Surface::Plane => 1,
            Surface::Hyperboloid => 0,
            Surface::Ellipsoid => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveClass {
    Degree(u32),
    Bidegree(u32, u32),
}

impl CurveClass {
    pub fn genus(self) -> i64 {
        match self {
            CurveClass::Degree(m) => {
                let m = m as i64;
                (m - 1) * (m - 2) / 2
            }
            CurveClass::Bidegree(a, b) => (a as i64 - 1) * (b as i64 - 1),
        }
    }

    /// Harnack number g + 1.
    pub fn harnack(self) -> i64 {
        self.genus() + 1
    }

    pub fn text(self) -> String {
        match self {
            CurveClass::Degree(m) => m.to_string(),
            CurveClass::Bidegree(a, b) => format!("{},{}", a, b),
        }
    }

    pub fn check_for(self, surface: Surface) -> Result<()> {
        match (surface, self) {
            (Surface::Plane, CurveClass::Degree(m)) if m >= 1 => Ok(()),
            (Surface::Plane, _) => Err(Error::InvalidScheme("plane curves need a positive degree".into())),
            (Surface::Ellipsoid, CurveClass::Bidegree(a, b)) if a == b && a >= 1 => Ok(()),
            (Surface::Ellipsoid, _) => {
                Err(Error::InvalidScheme("ellipsoid curves need a bidegree (m,m) with m >= 1".into()))
            }
            (Surface::Hyperboloid, CurveClass::Bidegree(a, b)) if a + b >= 1 => Ok(()),
            (Surface::Hyperboloid, _) => Err(Error::InvalidScheme("hyperboloid curves need a nonzero bidegree".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TypeClaim {
    TypeI,
    TypeII,
    Unknown,
}

impl TypeClaim {
    pub fn from_name(s: &str) -> Option<TypeClaim> {
        match s {
            "I" | "i" | "1" => Some(TypeClaim::TypeI),
            "II" | "ii" | "2" => Some(TypeClaim::TypeII),
            "unknown" | "?" => Some(TypeClaim::Unknown),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TypeClaim::TypeI => "I",
            TypeClaim::TypeII => "II",
            TypeClaim::Unknown => "unknown",
        }
    }
}

/// Data attached to every component. `()` for real schemes, an absolute
/// counterclockwise bit for oriented ones.
pub trait Mark: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    /// Suffix printed after a component. `parent` is the mark of the
    /// immediately surrounding oval, if any.
    fn suffix(&self, parent: Option<&Self>) -> &'static str;
    fn flipped(&self) -> Self;
}

impl Mark for () {
    fn suffix(&self, _parent: Option<&()>) -> &'static str {
        ""
    }
    fn flipped(&self) {}
}

impl Mark for bool {
    fn suffix(&self, parent: Option<&bool>) -> &'static str {
        let plus = match parent {
            None => *self,
            // a pair is positive when the bits differ
            Some(p) => p != self,
        };
        if plus {
            "^+"
        } else {
            "^-"
        }
    }
    fn flipped(&self) -> bool {
        !*self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Oval<M> {
    pub mark: M,
    pub children: Vec<Oval<M>>,
}

impl<M: Mark> Oval<M> {
    pub fn new(mark: M, children: Vec<Oval<M>>) -> Self {
        Oval { mark, children }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Oval::size).sum::<usize>()
    }

    pub fn height(&self) -> u32 {
        1 + self.children.iter().map(Oval::height).max().unwrap_or(0)
    }

    fn canonicalize(&mut self) {
        for c in &mut self.children {
            c.canonicalize();
        }
        sort_siblings(&mut self.children, Some(&self.mark));
    }

    fn map<N, F: Fn(&M) -> N + Copy>(&self, f: F) -> Oval<N> {
        Oval { mark: f(&self.mark), children: self.children.iter().map(|c| c.map(f)).collect() }
    }

    fn preorder<'a>(&'a self, out: &mut Vec<&'a Oval<M>>) {
        out.push(self);
        for c in &self.children {
            c.preorder(out);
        }
    }
}

impl Oval<()> {
    pub fn empty() -> Self {
        Oval { mark: (), children: Vec::new() }
    }

    pub fn with(children: Vec<Oval<()>>) -> Self {
        Oval { mark: (), children }
    }
}

fn sort_siblings<M: Mark>(sibs: &mut [Oval<M>], parent: Option<&M>) {
    let mut keyed: Vec<(usize, String, Oval<M>)> =
        sibs.iter().map(|o| (o.size(), notation::oval_text(o, parent), o.clone())).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    for (slot, (_, _, o)) in sibs.iter_mut().zip(keyed) {
        *slot = o;
    }
}

pub fn forest_size<M: Mark>(f: &[Oval<M>]) -> usize {
    f.iter().map(Oval::size).sum()
}

/// Noncontractible components on the hyperboloid: all of them realize the
/// same primitive homology class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Noncontractible<M> {
    pub homclass: (i64, i64),
    pub marks: Vec<M>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scheme<M> {
    surface: Surface,
    class: CurveClass,
    one_sided: Option<M>,
    noncontractible: Option<Noncontractible<M>>,
    forests: Vec<Vec<Oval<M>>>,
}

pub type RealScheme = Scheme<()>;
pub type OrientedScheme = Scheme<bool>;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Sign normalization of a homology class: the last nonzero coordinate
/// is made positive.
pub fn normalize_class(c: (i64, i64)) -> (i64, i64) {
    if c.1 < 0 || (c.1 == 0 && c.0 < 0) {
        (-c.0, -c.1)
    } else {
        c
    }
}

impl<M: Mark> Scheme<M> {
    /// Builds and canonicalizes a scheme.
    ///
    /// `forests` holds one forest, except on the hyperboloid with
    /// noncontractible components, where forest `i` lies in the annulus
    /// between components `i` and `i + 1` (cyclically).
    pub fn new(
        surface: Surface,
        class: CurveClass,
        one_sided: Option<M>,
        noncontractible: Option<Noncontractible<M>>,
        forests: Vec<Vec<Oval<M>>>,
    ) -> Result<Self> {
        class.check_for(surface)?;
        let odd_plane = matches!((surface, class), (Surface::Plane, CurveClass::Degree(m)) if m % 2 == 1);
        if odd_plane != one_sided.is_some() {
            return Err(Error::InvalidScheme(if odd_plane {
                "a curve of odd degree has a one-sided component J".into()
            } else {
                "J exists only for plane curves of odd degree".into()
            }));
        }
        let mut nc = noncontractible;
        if let Some(n) = &mut nc {
            if surface != Surface::Hyperboloid {
                return Err(Error::InvalidScheme("noncontractible components exist only on the hyperboloid".into()));
            }
            if n.marks.is_empty() {
                return Err(Error::InvalidScheme("empty list of noncontractible components".into()));
            }
            let (c1, c2) = n.homclass;
            if (c1, c2) == (0, 0) {
                return Err(Error::InvalidScheme("homology class (0,0)".into()));
            }
            if gcd(c1, c2) != 1 {
                return Err(Error::InvalidScheme(format!("homology class ({},{}) is not primitive", c1, c2)));
            }
            n.homclass = normalize_class(n.homclass);
            if forests.len() != n.marks.len() {
                return Err(Error::InvalidScheme(
                    "one annulus forest per noncontractible component is required".into(),
                ));
            }
        } else if forests.len() != 1 {
            return Err(Error::InvalidScheme("exactly one forest expected".into()));
        }
        let mut s = Scheme { surface, class, one_sided, noncontractible: nc, forests };
        s.canonicalize();
        Ok(s)
    }

    fn canonicalize(&mut self) {
        for f in &mut self.forests {
            for o in f.iter_mut() {
                o.canonicalize();
            }
            sort_siblings(f, None);
        }
        if let Some(nc) = &self.noncontractible {
            let h = nc.marks.len();
            let segs: Vec<(M, Vec<Oval<M>>)> = nc.marks.iter().cloned().zip(self.forests.iter().cloned()).collect();
            let key = |seq: &[(M, Vec<Oval<M>>)]| -> Vec<(usize, String, &'static str)> {
                seq.iter().map(|(m, f)| (forest_size(f), notation::forest_text(f), m.suffix(None))).collect()
            };
            let mut best = segs.clone();
            let mut best_key = key(&best);
            // reflection: components reversed, annulus j sits between new j and j+1
            let reflected: Vec<(M, Vec<Oval<M>>)> = (0..h)
                .map(|j| {
                    let comp = segs[h - 1 - j].0.clone();
                    let forest = segs[(2 * h - 2 - j) % h].1.clone();
                    (comp, forest)
                })
                .collect();
            for base in [&segs, &reflected] {
                for r in 0..h {
                    let cand: Vec<_> = (0..h).map(|i| base[(i + r) % h].clone()).collect();
                    let k = key(&cand);
                    if k > best_key {
                        best_key = k;
                        best = cand;
                    }
                }
            }
            let nc = self.noncontractible.as_mut().unwrap();
            nc.marks = best.iter().map(|s| s.0.clone()).collect();
            self.forests = best.into_iter().map(|s| s.1).collect();
        }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn class(&self) -> CurveClass {
        self.class
    }

    pub fn one_sided(&self) -> Option<&M> {
        self.one_sided.as_ref()
    }

    pub fn noncontractible(&self) -> Option<&Noncontractible<M>> {
        self.noncontractible.as_ref()
    }

    pub fn forests(&self) -> &[Vec<Oval<M>>] {
        &self.forests
    }

    /// Homology class of the noncontractible components, if any.
    pub fn homclass(&self) -> Option<(i64, i64)> {
        self.noncontractible.as_ref().map(|n| n.homclass)
    }

    pub fn h(&self) -> usize {
        self.noncontractible.as_ref().map_or(0, |n| n.marks.len())
    }

    pub fn l(&self) -> usize {
        self.forests.iter().map(|f| forest_size(f)).sum()
    }

    /// (l, h, total); total counts J as well.
    pub fn component_counts(&self) -> (usize, usize, usize) {
        let l = self.l();
        let h = self.h();
        (l, h, l + h + usize::from(self.one_sided.is_some()))
    }

    pub fn genus(&self) -> i64 {
        self.class.genus()
    }

    /// g + 1 - total. Negative values mean the Harnack bound is broken.
    pub fn m_defect(&self) -> i64 {
        self.genus() + 1 - self.component_counts().2 as i64
    }

    /// Degree 2k of an even plane curve gives Some(k).
    pub fn half_degree(&self) -> Option<i64> {
        match (self.surface, self.class) {
            (Surface::Plane, CurveClass::Degree(m)) if m % 2 == 0 => Some(m as i64 / 2),
            _ => None,
        }
    }

    /// Number of even and odd ovals of an even degree plane curve.
    pub fn parity_counts(&self) -> Result<(usize, usize)> {
        if self.half_degree().is_none() {
            return Err(Error::NotApplicable("parity counts need a plane curve of even degree".into()));
        }
        Ok(self.depth_parity_counts())
    }

    /// Ovals at depth 0, 2, ... versus depth 1, 3, ... (roots have depth 0).
    pub fn depth_parity_counts(&self) -> (usize, usize) {
        fn walk<M>(o: &Oval<M>, d: usize, acc: &mut (usize, usize)) {
            if d.is_multiple_of(2) {
                acc.0 += 1
            } else {
                acc.1 += 1
            }
            for c in &o.children {
                walk(c, d + 1, acc);
            }
        }
        let mut acc = (0, 0);
        for f in &self.forests {
            for o in f {
                walk(o, 0, &mut acc);
            }
        }
        acc
    }

    /// Maximal depth-profiles of sets of pairwise disjoint nests.
    ///
    /// Every antichain of ovals gives the multiset of heights of the
    /// subtrees rooted at its members. Profiles are sorted in decreasing
    /// order and only those not dominated by another one are kept. The
    /// empty profile is omitted.
    pub fn disjoint_nest_profiles(&self) -> Vec<Vec<u32>> {
        let all: Vec<&Oval<M>> = self.forests.iter().flatten().collect();
        let mut acc: Vec<Vec<u32>> = vec![vec![]];
        for o in all {
            acc = combine(&acc, &tree_profiles(o));
        }
        acc.retain(|p| !p.is_empty());
        acc.sort_by(|a, b| b.cmp(a));
        acc
    }

    /// Oval of maximal nest depth.
    pub fn max_depth(&self) -> u32 {
        self.forests.iter().flatten().map(Oval::height).max().unwrap_or(0)
    }

    /// Euler characteristics of the two halves cut out by the curve.
    pub fn chi_halves(&self) -> Result<ChiHalves> {
        match self.surface {
            Surface::Plane => Err(Error::NotApplicable("chi halves are defined for quadrics".into())),
            Surface::Ellipsoid => {
                let f = &self.forests[0];
                let (e, o) = inner_chi(f, 0);
                Ok(ChiHalves { plus: 2 - f.len() as i64 + e, minus: o, ambiguous: false })
            }
            Surface::Hyperboloid => {
                let (m1, m2) = match self.class {
                    CurveClass::Bidegree(a, b) => (a, b),
                    _ => unreachable!(),
                };
                if m1 % 2 == 1 || m2 % 2 == 1 {
                    return Err(Error::NoSeparation(format!("bidegree ({},{}) has an odd entry", m1, m2)));
                }
                let h = self.h();
                if h % 2 == 1 {
                    return Err(Error::NoSeparation("odd number of noncontractible components".into()));
                }
                // annulus i has color i mod 2, an oval at depth d inside
                // annulus i bounds a region of color (i + d + 1) mod 2
                let mut by_color = [0i64; 2];
                for (i, f) in self.forests.iter().enumerate() {
                    by_color[i % 2] -= f.len() as i64;
                    let (same, opposite) = inner_chi(f, 0);
                    by_color[i % 2] += same;
                    by_color[(i + 1) % 2] += opposite;
                }
                Ok(ChiHalves { plus: by_color[0], minus: by_color[1], ambiguous: h > 0 })
            }
        }
    }

    pub fn map_marks<N: Mark, F: Fn(&M) -> N + Copy>(&self, f: F) -> Scheme<N> {
        let mut s = Scheme {
            surface: self.surface,
            class: self.class,
            one_sided: self.one_sided.as_ref().map(f),
            noncontractible: self
                .noncontractible
                .as_ref()
                .map(|n| Noncontractible { homclass: n.homclass, marks: n.marks.iter().map(f).collect() }),
            forests: self.forests.iter().map(|fo| fo.iter().map(|o| o.map(f)).collect()).collect(),
        };
        s.canonicalize();
        s
    }

    pub fn forget(&self) -> RealScheme {
        self.map_marks(|_| ())
    }

    /// Marks in component order: J, noncontractible components, then the
    /// ovals of each forest in preorder.
    pub fn marks(&self) -> Vec<M> {
        let mut out = Vec::new();
        if let Some(j) = &self.one_sided {
            out.push(j.clone());
        }
        if let Some(n) = &self.noncontractible {
            out.extend(n.marks.iter().cloned());
        }
        for f in &self.forests {
            for o in f {
                let mut v = Vec::new();
                o.preorder(&mut v);
                out.extend(v.into_iter().map(|x| x.mark.clone()));
            }
        }
        out
    }

    /// Ovals in component order, with their parent index into the same
    /// list (J and noncontractible components are not included).
    pub fn oval_table(&self) -> Vec<(Option<usize>, &Oval<M>)> {
        fn walk<'a, M>(o: &'a Oval<M>, parent: Option<usize>, out: &mut Vec<(Option<usize>, &'a Oval<M>)>) {
            let me = out.len();
            out.push((parent, o));
            for c in &o.children {
                walk(c, Some(me), out);
            }
        }
        let mut out = Vec::new();
        for f in &self.forests {
            for o in f {
                walk(o, None, &mut out);
            }
        }
        out
    }

    /// Replaces the marks in component order (see [`Scheme::marks`]).
    pub fn with_marks<N: Mark>(&self, marks: &[N]) -> Result<Scheme<N>> {
        if marks.len() != self.component_counts().2 {
            return Err(Error::InvalidScheme(format!(
                "{} marks for {} components",
                marks.len(),
                self.component_counts().2
            )));
        }
        let mut it = marks.iter().cloned();
        fn rebuild<M, N>(o: &Oval<M>, it: &mut impl Iterator<Item = N>) -> Oval<N> {
            let mark = it.next().unwrap();
            Oval { mark, children: o.children.iter().map(|c| rebuild(c, it)).collect() }
        }
        let one_sided = self.one_sided.as_ref().map(|_| it.next().unwrap());
        let noncontractible = self.noncontractible.as_ref().map(|n| Noncontractible {
            homclass: n.homclass,
            marks: n.marks.iter().map(|_| it.next().unwrap()).collect(),
        });
        let forests = self.forests.iter().map(|f| f.iter().map(|o| rebuild(o, &mut it)).collect()).collect();
        let mut s = Scheme { surface: self.surface, class: self.class, one_sided, noncontractible, forests };
        s.canonicalize();
        Ok(s)
    }

    pub fn flip(&self) -> Scheme<M> {
        self.map_marks(|m| m.flipped())
    }

    pub fn render(&self) -> String {
        notation::render(self)
    }
}

impl RealScheme {
    pub fn plane(degree: u32, forest: Vec<Oval<()>>) -> Result<RealScheme> {
        let j = if degree % 2 == 1 { Some(()) } else { None };
        Scheme::new(Surface::Plane, CurveClass::Degree(degree), j, None, vec![forest])
    }

    pub fn ellipsoid(m: u32, forest: Vec<Oval<()>>) -> Result<RealScheme> {
        Scheme::new(Surface::Ellipsoid, CurveClass::Bidegree(m, m), None, None, vec![forest])
    }

    pub fn hyperboloid(
        bidegree: (u32, u32),
        nc: Option<((i64, i64), usize)>,
        forests: Vec<Vec<Oval<()>>>,
    ) -> Result<RealScheme> {
        let noncontractible = nc.map(|(c, h)| Noncontractible { homclass: c, marks: vec![(); h] });
        Scheme::new(Surface::Hyperboloid, CurveClass::Bidegree(bidegree.0, bidegree.1), None, noncontractible, forests)
    }
}

/// `n` empty ovals.
pub fn empties(n: usize) -> Vec<Oval<()>> {
    vec![Oval::empty(); n]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChiHalves {
    pub plus: i64,
    pub minus: i64,
    pub ambiguous: bool,
}

/// Euler characteristics of the regions strictly inside the ovals of a
/// forest, split by the parity of the depth of the bounding oval
/// relative to `d`.
fn inner_chi<M>(f: &[Oval<M>], d: usize) -> (i64, i64) {
    let mut acc = (0i64, 0i64);
    for o in f {
        let chi = 1 - o.children.len() as i64;
        // the region inside a root (d = 0) has the color opposite to the outside
        if d.is_multiple_of(2) {
            acc.1 += chi
        } else {
            acc.0 += chi
        }
        let (a, b) = inner_chi(&o.children, d + 1);
        acc.0 += a;
        acc.1 += b;
    }
    acc
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.len() >= b.len() && b.iter().zip(a).all(|(x, y)| y >= x)
}

fn prune(mut ps: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    ps.sort();
    ps.dedup();
    let mut keep: Vec<Vec<u32>> = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        let dominated = ps.iter().enumerate().any(|(j, q)| j != i && dominates(q, p) && (q != p));
        if !dominated {
            keep.push(p.clone());
        }
    }
    keep
}

fn merge_desc(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = a.iter().chain(b).copied().collect();
    v.sort_by(|x, y| y.cmp(x));
    v
}

fn combine(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(merge_desc(x, y));
        }
    }
    prune(out)
}

fn tree_profiles<M>(o: &Oval<M>) -> Vec<Vec<u32>> {
    fn height<M>(o: &Oval<M>) -> u32 {
        1 + o.children.iter().map(height).max().unwrap_or(0)
    }
    let mut acc: Vec<Vec<u32>> = vec![vec![]];
    for c in &o.children {
        acc = combine(&acc, &tree_profiles(c));
    }
    acc.push(vec![height(o)]);
    prune(acc)
}
