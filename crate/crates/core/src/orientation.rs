//! Complex orientations of plane curves: Rokhlin's and Orevkov's formulas
//! and the search for orientations compatible with both.
//!
//! An orientation bit is the counterclockwise flag of an oval in a fixed
//! affine chart. A nested pair is positive (in Rokhlin's sense) when the
//! bits differ, i.e. when the orientations are induced from the annulus.
//! Orevkov's pair sign is the opposite one. Nonempty ovals are positive
//! when their bit agrees with the bit of the outermost nonempty oval.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scheme::{Mark, OrientedScheme, RealScheme, Scheme, Surface, TypeClaim};
use crate::verdict::Verdict;

pub const DEFAULT_SEARCH_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PairCensus {
    pub pi_plus: u64,
    pub pi_minus: u64,
    /// `pi[e][s]`: pairs with empty inner oval, Orevkov sign `e` and
    /// outer oval of sign `s`; index 0 is `+`, 1 is `-`.
    pub pi: [[u64; 2]; 2],
    pub k_plus: u64,
    pub k_minus: u64,
}

/// Combinatorial data of a plane scheme needed to evaluate the census for
/// any bit vector in component order.
#[derive(Debug, Clone)]
pub struct PairTable {
    offset: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
    inner_empty: Vec<bool>,
    nonempty: Vec<usize>,
    outer: Vec<usize>,
    chain: bool,
    l: i64,
    k: Option<i64>,
    defect: i64,
    max_depth: u32,
}

impl PairTable {
    pub fn new<M: Mark>(s: &Scheme<M>) -> Result<PairTable> {
        if s.surface() != Surface::Plane {
            return Err(Error::NotApplicable("orientation formulas are stated for plane curves".into()));
        }
        let offset = usize::from(s.one_sided().is_some());
        let table = s.oval_table();
        let mut pairs = Vec::new();
        for (i, _) in table.iter().enumerate() {
            let mut p = table[i].0;
            while let Some(a) = p {
                pairs.push((a + offset, i + offset));
                p = table[a].0;
            }
        }
        let inner_empty: Vec<bool> = table.iter().map(|(_, o)| o.children.is_empty()).collect();
        let nonempty: Vec<usize> = (0..table.len()).filter(|&i| !inner_empty[i]).collect();
        // nonempty ovals are pairwise nested iff each one after the first
        // has the previous as an ancestor (preorder lists them top-down)
        let chain = nonempty.windows(2).all(|w| {
            let mut p = table[w[1]].0;
            while let Some(a) = p {
                if a == w[0] {
                    return true;
                }
                p = table[a].0;
            }
            false
        });
        Ok(PairTable {
            offset,
            n: s.component_counts().2,
            pairs,
            inner_empty: inner_empty.clone(),
            nonempty: nonempty.iter().map(|i| i + offset).collect(),
            outer: nonempty.iter().filter(|&&i| table[i].0.is_none()).map(|i| i + offset).collect(),
            chain,
            l: s.component_counts().2 as i64,
            k: s.half_degree(),
            defect: s.m_defect(),
            max_depth: s.max_depth(),
        })
    }

    pub fn components(&self) -> usize {
        self.n
    }

    pub fn nested_pairs(&self) -> usize {
        self.pairs.len()
    }

    /// Census for a bit vector in component order. With several outermost
    /// nonempty ovals the reference giving the larger k+ is used, so the
    /// result does not depend on the order of siblings.
    pub fn census(&self, bits: &[bool]) -> PairCensus {
        let refs: Vec<bool> = self.outer.iter().map(|&i| bits[i]).collect();
        if refs.is_empty() {
            return self.census_from(bits, None);
        }
        let mut best: Option<PairCensus> = None;
        for b in [true, false] {
            if refs.contains(&b) {
                let c = self.census_from(bits, Some(b));
                let key = |c: &PairCensus| (c.k_plus, c.pi);
                if best.as_ref().is_none_or(|x| key(&c) > key(x)) {
                    best = Some(c);
                }
            }
        }
        best.unwrap()
    }

    fn census_from(&self, bits: &[bool], outer_bit: Option<bool>) -> PairCensus {
        let mut c = PairCensus::default();
        let sign_of = |i: usize| -> usize {
            match outer_bit {
                Some(b) if bits[i] == b => 0,
                _ => 1,
            }
        };
        for &(a, b) in &self.pairs {
            let rokhlin_plus = bits[a] != bits[b];
            if rokhlin_plus {
                c.pi_plus += 1
            } else {
                c.pi_minus += 1
            }
            if self.inner_empty[b - self.offset] {
                let e = usize::from(rokhlin_plus);
                c.pi[e][sign_of(a)] += 1;
            }
        }
        for &i in &self.nonempty {
            if sign_of(i) == 0 {
                c.k_plus += 1
            } else {
                c.k_minus += 1
            }
        }
        c
    }

    fn rokhlin(&self, c: &PairCensus) -> Verdict {
        let k = match self.k {
            Some(k) => k,
            None => return Verdict::not_applicable("rokhlin", "stated for curves of even degree"),
        };
        let lhs = 2 * (c.pi_plus as i64 - c.pi_minus as i64);
        let rhs = self.l - k * k;
        Verdict::checked("rokhlin", lhs == rhs, vec![lhs], vec![rhs], "=", "2(Pi+ - Pi-) = l - k^2")
    }

    /// Why Orevkov's formula does not apply, if it does not.
    fn orevkov_obstacle(&self) -> Option<String> {
        let k = self.k?;
        if self.defect != 0 {
            return Some("stated for M-curves".into());
        }
        if (self.max_depth as i64) < k - 1 {
            return Some(format!("needs a nest of depth {}", k - 1));
        }
        if !self.chain {
            return Some("nonempty ovals are not pairwise nested".into());
        }
        None
    }

    fn orevkov_applies(&self) -> bool {
        self.k.is_some() && self.orevkov_obstacle().is_none()
    }

    fn orevkov(&self, c: &PairCensus) -> Verdict {
        if self.k.is_none() {
            return Verdict::not_applicable("orevkov", "stated for curves of even degree");
        }
        if let Some(why) = self.orevkov_obstacle() {
            return Verdict::not_applicable("orevkov", why);
        }
        let l1 = c.pi[1][0] as i64 - c.pi[0][0] as i64;
        let l2 = c.pi[0][1] as i64 - c.pi[1][1] as i64;
        let r1 = (c.k_plus * c.k_plus) as i64;
        let r2 = (c.k_minus * c.k_minus) as i64;
        Verdict::checked(
            "orevkov",
            l1 == r1 && l2 == r2,
            vec![l1, l2],
            vec![r1, r2],
            "=",
            "pi-+ - pi++ = k+^2, pi+- - pi-- = k-^2",
        )
    }

    fn admissible_bits(&self, bits: &[bool]) -> bool {
        let c = self.census(bits);
        if !self.rokhlin(&c).passed() {
            return false;
        }
        !self.orevkov_applies() || self.orevkov(&c).passed()
    }
}

pub fn pair_census(o: &OrientedScheme) -> Result<PairCensus> {
    Ok(PairTable::new(o)?.census(&o.marks()))
}

pub fn rokhlin_check(o: &OrientedScheme) -> Verdict {
    match PairTable::new(o) {
        Ok(t) => t.rokhlin(&t.census(&o.marks())),
        Err(e) => Verdict::not_applicable("rokhlin", e.to_string()),
    }
}

pub fn orevkov_check(o: &OrientedScheme) -> Verdict {
    match PairTable::new(o) {
        Ok(t) => t.orevkov(&t.census(&o.marks())),
        Err(e) => Verdict::not_applicable("orevkov", e.to_string()),
    }
}

/// Bit vectors in component order, the first bit fixed to `true`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationClass {
    pub bits: Vec<bool>,
}

impl OrientationClass {
    pub fn apply(&self, s: &RealScheme) -> Result<OrientedScheme> {
        s.with_marks(&self.bits)
    }
}

fn bits_of(index: u64, n: usize) -> Vec<bool> {
    let mut bits = vec![true; n];
    // component 1 is the most significant free bit; a zero bit means +
    for j in 1..n {
        bits[j] = (index >> (n - 1 - j)) & 1 == 0;
    }
    bits
}

/// All orientations, modulo the global flip, that satisfy Rokhlin's
/// formula and, when it applies, Orevkov's formula. Ordered with the
/// components taken root first and `+` before `-`.
pub fn admissible_orientations(s: &RealScheme, limit: usize) -> Result<Vec<OrientationClass>> {
    let t = PairTable::new(s)?;
    if t.k.is_none() {
        return Err(Error::NotApplicable("orientation search needs an even degree".into()));
    }
    let n = t.components();
    if n == 0 {
        return Ok(admissible_empty(&t).into_iter().collect());
    }
    if n > limit {
        return Err(Error::SearchTooLarge {
            estimate: 1u128 << (n - 1).min(127),
            limit: 1u128 << (limit.max(1) - 1).min(127),
        });
    }
    let total = 1u64 << (n - 1);
    let found: Vec<OrientationClass> = (0..total)
        .into_par_iter()
        .filter_map(|i| {
            let bits = bits_of(i, n);
            if t.admissible_bits(&bits) {
                Some(OrientationClass { bits })
            } else {
                None
            }
        })
        .collect();
    Ok(found)
}

fn admissible_empty(t: &PairTable) -> Option<OrientationClass> {
    if t.admissible_bits(&[]) {
        Some(OrientationClass { bits: vec![] })
    } else {
        None
    }
}

/// TypeII when no orientation survives, Unknown otherwise.
pub fn type_constraint(s: &RealScheme, limit: usize) -> Result<TypeClaim> {
    Ok(if admissible_orientations(s, limit)?.is_empty() { TypeClaim::TypeII } else { TypeClaim::Unknown })
}
