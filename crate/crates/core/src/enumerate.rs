//! Exhaustive enumeration of real schemes of a given degree or bidegree,
//! each checked against every prohibition under the three type claims.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rules::{check_all, CheckOptions};
use crate::scheme::{CurveClass, Oval, RealScheme, Surface, TypeClaim};
use crate::verdict::Report;

/// Candidate count above which enumeration refuses to run.
pub const MAX_CANDIDATES: u128 = 5_000_000;
/// Largest number of ovals in a generated forest.
pub const MAX_FOREST_NODES: usize = 14;

/// The three M-sextic schemes, in canonical notation.
pub const CLASSICAL_M_SEXTICS: [&str; 3] = ["<1 + 1<9>>", "<5 + 1<5>>", "<9 + 1<1>>"];

pub const CLAIMS: [TypeClaim; 3] = [TypeClaim::TypeI, TypeClaim::TypeII, TypeClaim::Unknown];

/// Number of unordered rooted forests with exactly `n` nodes, for
/// n = 0..=max, as the coefficients of prod_k (1 - x^k)^(-t_k) where t_k
/// counts rooted trees with k nodes.
pub fn forest_counts(max: usize) -> Vec<u128> {
    let mut f = vec![0u128; max + 1];
    f[0] = 1;
    // each pass multiplies in the factor for trees of size k, whose count
    // is the forest count of size k - 1 (already final)
    for k in 1..=max {
        let t = f[k - 1];
        let mut next = vec![0u128; max + 1];
        for (n, slot) in next.iter_mut().enumerate() {
            // choose j trees of size k with repetition: C(t + j - 1, j)
            let mut choose: u128 = 1;
            let mut j = 0;
            while j * k <= n {
                *slot += choose * f[n - j * k];
                j += 1;
                choose = choose * (t + j as u128 - 1) / j as u128;
            }
        }
        f = next;
    }
    f
}

type Forest = Vec<Oval<()>>;

static TREES: [OnceLock<Vec<Oval<()>>>; MAX_FOREST_NODES + 1] = [const { OnceLock::new() }; MAX_FOREST_NODES + 1];
static FORESTS: [OnceLock<Vec<Forest>>; MAX_FOREST_NODES + 1] = [const { OnceLock::new() }; MAX_FOREST_NODES + 1];

/// Rooted trees with `n` nodes, built lazily from the forests of size n - 1.
fn trees(n: usize) -> &'static [Oval<()>] {
    TREES[n].get_or_init(|| {
        if n == 0 {
            return vec![];
        }
        forest_table(n - 1).iter().map(|f| Oval::with(f.clone())).collect()
    })
}

fn forest_table(n: usize) -> &'static [Forest] {
    FORESTS[n].get_or_init(|| {
        if n == 0 {
            return vec![vec![]];
        }
        let all: Vec<&'static [Oval<()>]> = (0..=n).map(trees).collect();
        let mut out = Vec::new();
        multisets(&all, n, (n, all[n].len() - 1), &mut Vec::new(), &mut out);
        out
    })
}

/// Forests of total size `left` made of trees with key at most `max`,
/// keys (size, index) taken in nonincreasing order.
fn multisets(trees: &[&[Oval<()>]], left: usize, max: (usize, usize), cur: &mut Forest, out: &mut Vec<Forest>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for size in (1..=max.0.min(left)).rev() {
        let top = if size == max.0 { max.1 + 1 } else { trees[size].len() };
        let top = top.min(trees[size].len());
        for idx in (0..top).rev() {
            cur.push(trees[size][idx].clone());
            multisets(trees, left - size, (size, idx), cur, out);
            cur.pop();
        }
    }
}

/// All unordered rooted forests with exactly `n` nodes.
pub fn forests(n: usize) -> Result<&'static [Forest]> {
    if n > MAX_FOREST_NODES {
        return Err(Error::SearchTooLarge {
            estimate: forest_counts(n)[n],
            limit: forest_counts(MAX_FOREST_NODES)[MAX_FOREST_NODES],
        });
    }
    Ok(forest_table(n))
}

/// One enumerated scheme with its reports under each claim.
#[derive(Debug, Clone)]
pub struct Entry {
    pub scheme: RealScheme,
    pub text: String,
    pub reports: Vec<Report>,
}

impl Entry {
    pub fn report(&self, claim: TypeClaim) -> &Report {
        self.reports.iter().find(|r| r.claim == claim).expect("one report per claim")
    }

    pub fn admissible_claims(&self) -> Vec<TypeClaim> {
        self.reports.iter().filter(|r| r.admissible).map(|r| r.claim).collect()
    }

    pub fn admissible(&self) -> bool {
        self.reports.iter().any(|r| r.admissible)
    }
}

/// Classes (c1, c2) of noncontractible components, h of them, that pass
/// the Bezout restrictions against the two rulings.
pub fn noncontractible_candidates(m1: u32, m2: u32, max_h: usize) -> Vec<(usize, (i64, i64))> {
    let (m1, m2) = (m1 as i64, m2 as i64);
    let mut out = Vec::new();
    for h in 1..=max_h as i64 {
        for c2 in 0..=m2 {
            for c1 in -m1..=m1 {
                if c2 == 0 && c1 <= 0 {
                    continue;
                }
                if num_integer::gcd(c1, c2) != 1 {
                    continue;
                }
                if h * c1.abs() > m1 || h * c2 > m2 {
                    continue;
                }
                if (h * c1 - m1).rem_euclid(2) != 0 || (h * c2 - m2).rem_euclid(2) != 0 {
                    continue;
                }
                out.push((h as usize, (c1, c2)));
            }
        }
    }
    out
}

/// Number of h-tuples of forests with at most `total` nodes altogether.
fn tuple_count(h: usize, total: usize, counts: &[u128]) -> u128 {
    let mut ways = vec![0u128; total + 1];
    ways[0] = 1;
    for _ in 0..h {
        let mut next = vec![0u128; total + 1];
        for a in 0..=total {
            if ways[a] == 0 {
                continue;
            }
            for b in 0..=total - a {
                next[a + b] = next[a + b].saturating_add(ways[a].saturating_mul(counts[b]));
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Upper bound on the number of candidates before removing duplicates.
pub fn candidate_estimate(surface: Surface, class: CurveClass, limit: usize) -> u128 {
    let counts = forest_counts(limit);
    let plain = tuple_count(1, limit, &counts);
    match (surface, class) {
        (Surface::Plane, CurveClass::Degree(d)) => {
            let l = if d % 2 == 1 { limit.saturating_sub(1) } else { limit };
            tuple_count(1, l, &counts)
        }
        (Surface::Hyperboloid, CurveClass::Bidegree(a, b)) => noncontractible_candidates(a, b, limit)
            .iter()
            .map(|&(h, _)| tuple_count(h, limit - h, &counts))
            .fold(plain, |x, y| x.saturating_add(y)),
        _ => plain,
    }
}

/// Every scheme with at most `limit` components (default: the Harnack
/// bound), in order of rendered text, each with its reports.
pub fn enumerate(surface: Surface, class: CurveClass, limit: Option<usize>, opts: &CheckOptions) -> Result<Vec<Entry>> {
    class.check_for(surface)?;
    let limit = limit.unwrap_or(class.harnack().max(0) as usize);
    let estimate = candidate_estimate(surface, class, limit);
    if estimate > MAX_CANDIDATES || limit > MAX_FOREST_NODES + 1 {
        return Err(Error::SearchTooLarge { estimate, limit: MAX_CANDIDATES });
    }
    let schemes = candidates(surface, class, limit)?;
    let entries: Vec<Entry> = schemes
        .into_par_iter()
        .map(|(text, scheme)| {
            let reports = CLAIMS.iter().map(|&c| check_all(&scheme, c, None, opts)).collect();
            Entry { scheme, text, reports }
        })
        .collect();
    Ok(entries)
}

/// Distinct candidate schemes keyed and ordered by their text.
pub fn candidates(surface: Surface, class: CurveClass, limit: usize) -> Result<Vec<(String, RealScheme)>> {
    let mut out: BTreeMap<String, RealScheme> = BTreeMap::new();
    let mut add = |s: RealScheme| {
        out.entry(s.render()).or_insert(s);
    };
    match (surface, class) {
        (Surface::Plane, CurveClass::Degree(d)) => {
            let l = if d % 2 == 1 { limit.saturating_sub(1) } else { limit };
            for n in 0..=l {
                for f in forests(n)? {
                    add(RealScheme::plane(d, f.clone())?);
                }
            }
        }
        (Surface::Ellipsoid, CurveClass::Bidegree(m, _)) => {
            for n in 0..=limit {
                for f in forests(n)? {
                    add(RealScheme::ellipsoid(m, f.clone())?);
                }
            }
        }
        (Surface::Hyperboloid, CurveClass::Bidegree(a, b)) => {
            for n in 0..=limit {
                for f in forests(n)? {
                    add(RealScheme::hyperboloid((a, b), None, vec![f.clone()])?);
                }
            }
            for (h, c) in noncontractible_candidates(a, b, limit) {
                let mut tuple = Vec::with_capacity(h);
                annuli(h, limit - h, &mut tuple, &mut |fs: &[Forest]| -> Result<()> {
                    add(RealScheme::hyperboloid((a, b), Some((c, h)), fs.to_vec())?);
                    Ok(())
                })?;
            }
        }
        _ => return Err(Error::InvalidScheme(format!("class {} does not fit the {}", class.text(), surface.name()))),
    }
    Ok(out.into_iter().collect())
}

fn annuli(h: usize, left: usize, cur: &mut Vec<Forest>, emit: &mut dyn FnMut(&[Forest]) -> Result<()>) -> Result<()> {
    if cur.len() == h {
        return emit(cur);
    }
    for n in 0..=left {
        for f in forests(n)? {
            cur.push(f.clone());
            annuli(h, left - n, cur, emit)?;
            cur.pop();
        }
    }
    Ok(())
}
