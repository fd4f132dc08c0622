//! Prohibitions: Harnack, Klein, the plane and quadric congruences, the
//! Bezout consequences on nests and generatrices, and the aggregator.

use crate::orientation::{orevkov_check, rokhlin_check};
use crate::scheme::{CurveClass, OrientedScheme, RealScheme, Surface, TypeClaim};
use crate::verdict::{Report, Verdict, FORCES_TYPE_I};

/// Known values and bounds for the constants used by the nest rules.
#[derive(Debug, Clone, Copy, Default)]
pub struct AuxTables;

impl AuxTables {
    const KNOWN: [u64; 4] = [2, 5, 8, 13];

    /// Certified lower bound for c(q): exact values up to q = 4, then the
    /// additivity c(a + b) >= c(a) + c(b) - 1 and c(q) >= 3q - 1, with
    /// 3q + 1 when 4 divides q.
    pub fn c_lower(q: u32) -> u64 {
        if q == 0 {
            return 0;
        }
        let mut best = vec![0u64; q as usize + 1];
        for d in 1..=q as usize {
            let mut b = if d <= 4 { Self::KNOWN[d - 1] } else { 3 * d as u64 - 1 };
            if d % 4 == 0 {
                b = b.max(3 * d as u64 + 1);
            }
            for a in 1..d {
                b = b.max(best[a] + best[d - a] - 1);
            }
            best[d] = b;
        }
        best[q as usize]
    }

    /// Certified lower bound for c'(q). No better bound than c(q) is known
    /// beyond the exact values.
    pub fn cprime_lower(q: u32) -> u64 {
        Self::c_lower(q)
    }

    /// Upper bound for c'(q), kept for reference only.
    pub fn cprime_upper(q: u32) -> u64 {
        let q = q as u64;
        if (1..=4).contains(&q) {
            return Self::KNOWN[q as usize - 1];
        }
        if q == 6 {
            return 23;
        }
        let base = q * (q + 3) / 2;
        if q % 2 == 1 {
            base - (q * q - 1) / 8
        } else {
            base - q * (q - 2) / 8
        }
    }

    /// Maximin number of components in a pencil-free linear system of plane
    /// curves of degree d: d(d - 3)/2 + 2.
    pub fn mu0(d: u32) -> i64 {
        let d = d as i64;
        (d * d - 3 * d) / 2 + 2
    }

    pub fn harnack_number(class: CurveClass) -> i64 {
        class.harnack()
    }
}

/// Options of the nest rules.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub aux_degrees: Vec<u32>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { aux_degrees: (1..=6).collect() }
    }
}

fn m8(x: i64) -> i64 {
    x.rem_euclid(8)
}

fn m4(x: i64) -> i64 {
    x.rem_euclid(4)
}

pub fn check_harnack(s: &RealScheme) -> Verdict {
    let total = s.component_counts().2 as i64;
    let bound = s.class().harnack();
    Verdict::checked("harnack", total <= bound, vec![total], vec![bound], "<=", "components <= g + 1")
}

pub fn check_klein(s: &RealScheme, claim: TypeClaim) -> Verdict {
    if s.surface() != Surface::Plane {
        return Verdict::not_applicable("klein", "plane curves only");
    }
    if claim != TypeClaim::TypeI {
        return Verdict::not_applicable("klein", "needs a type I claim");
    }
    let m = match s.class() {
        CurveClass::Degree(m) => m as i64,
        _ => unreachable!(),
    };
    // degree 2k or 2k - 1
    let k = (m + 1) / 2;
    let l = s.component_counts().2 as i64;
    let pass = l >= k && (l - k).rem_euclid(2) == 0;
    Verdict::checked(
        "klein",
        pass,
        vec![l, l.rem_euclid(2)],
        vec![k, k.rem_euclid(2)],
        ">= k and = k mod 2",
        if m % 2 == 0 { "l = k mod 2, l >= k" } else { "components (J included) >= k and = k mod 2" },
    )
}

/// Gudkov, the (M-1) and (M-2) congruences, Arnold and Slepian.
pub fn check_plane_congruences(s: &RealScheme, claim: TypeClaim) -> Vec<Verdict> {
    let ids = ["gudkov", "kgk", "m2-force", "arnold", "slepian"];
    let k = match s.half_degree() {
        Some(k) => k,
        None => return ids.iter().map(|id| Verdict::not_applicable(id, "plane curves of even degree only")).collect(),
    };
    let (p, n) = s.depth_parity_counts();
    let x = p as i64 - n as i64;
    let k2 = k * k;
    let d = s.m_defect();
    let mut out = Vec::new();

    out.push(if d == 0 {
        Verdict::checked("gudkov", m8(x - k2) == 0, vec![m8(x)], vec![m8(k2)], "= mod 8", "p - n = k^2 mod 8")
    } else {
        Verdict::not_applicable("gudkov", "M-curves only")
    });
    out.push(if d == 1 {
        let r = m8(x - k2);
        Verdict::checked(
            "kgk",
            r == 1 || r == 7,
            vec![m8(x)],
            vec![m8(k2 + 1), m8(k2 - 1)],
            "= one of, mod 8",
            "p - n = k^2 +- 1 mod 8",
        )
    } else {
        Verdict::not_applicable("kgk", "(M-1)-curves only")
    });
    out.push(if d == 2 {
        let triggered = m8(x - k2 - 4) == 0;
        let note = if triggered { FORCES_TYPE_I } else { "premise p - n = k^2 + 4 mod 8 not met" };
        Verdict::checked(
            "m2-force",
            !(triggered && claim == TypeClaim::TypeII),
            vec![m8(x)],
            vec![m8(k2 + 4)],
            "= mod 8 implies type I",
            note,
        )
    } else {
        Verdict::not_applicable("m2-force", "(M-2)-curves only")
    });
    out.push(if claim == TypeClaim::TypeI {
        Verdict::checked("arnold", m4(x - k2) == 0, vec![m4(x)], vec![m4(k2)], "= mod 4", "p - n = k^2 mod 4")
    } else {
        Verdict::not_applicable("arnold", "needs a type I claim")
    });
    out.push(if claim != TypeClaim::TypeI {
        Verdict::not_applicable("slepian", "needs a type I claim")
    } else if !slepian_premise(s) {
        Verdict::not_applicable("slepian", "some odd oval holds an even number of even ovals")
    } else {
        Verdict::checked("slepian", m8(x - k2) == 0, vec![m8(x)], vec![m8(k2)], "= mod 8", "p - n = k^2 mod 8")
    });
    out
}

/// Every odd oval immediately contains an odd number of (even) ovals.
fn slepian_premise(s: &RealScheme) -> bool {
    fn walk(o: &crate::scheme::Oval<()>, depth: usize) -> bool {
        if depth % 2 == 1 && o.children.len().is_multiple_of(2) {
            return false;
        }
        o.children.iter().all(|c| walk(c, depth + 1))
    }
    s.forests().iter().flatten().all(|o| walk(o, 0))
}

const QUADRIC_IDS: [&str; 4] = ["quadric.m", "quadric.m1", "quadric.m2-force", "quadric.typeI"];

/// Congruences for curves on quadrics.
///
/// On the hyperboloid the targets are taken for the half of genus one
/// with the residue R = -m1 m2 / 2: chi = R (M), R +- 1 (M-1), R + 4
/// forces type I (M-2), chi = R mod 4 for type I. On the ellipsoid both
/// halves are tested against R = (m^2 + 1)/2. When the curve has
/// noncontractible components the halves cannot be told apart and either
/// labeling is accepted.
pub fn check_quadric_congruences(s: &RealScheme, claim: TypeClaim) -> Vec<Verdict> {
    let na = |why: &str| QUADRIC_IDS.iter().map(|id| Verdict::not_applicable(id, why)).collect();
    let (m1, m2) = match (s.surface(), s.class()) {
        (Surface::Plane, _) => return na("quadrics only"),
        (_, CurveClass::Bidegree(a, b)) => (a as i64, b as i64),
        _ => unreachable!(),
    };
    // candidate values of the tested Euler characteristics, per labeling
    let (labelings, target, note): (Vec<Vec<i64>>, i64, String) = match s.surface() {
        Surface::Ellipsoid => {
            if m1 % 2 == 0 {
                return na("needs m odd");
            }
            let c = s.chi_halves().expect("ellipsoid always separates");
            (vec![vec![c.plus, c.minus]], (m1 * m1 + 1) / 2, "both halves".into())
        }
        _ => {
            let c = match s.chi_halves() {
                Ok(c) => c,
                Err(e) => return na(&e.to_string()),
            };
            if let Some((c1, c2)) = s.homclass() {
                if ((m1 * c2 + m2 * c1) / 2 - c1 * c2).rem_euclid(2) != 0 {
                    return na("(m1 c2 + m2 c1)/2 != c1 c2 mod 2");
                }
            }
            if c.ambiguous {
                (
                    vec![vec![c.plus], vec![c.minus]],
                    -(m1 * m2) / 2,
                    "halves not distinguished, either labeling accepted".into(),
                )
            } else {
                (vec![vec![c.plus]], -(m1 * m2) / 2, "half of genus one".into())
            }
        }
    };
    let d = s.m_defect();
    let any = |pred: &dyn Fn(i64) -> bool| labelings.iter().any(|lab| lab.iter().all(|&x| pred(x)));
    let lhs: Vec<i64> = labelings[0].iter().map(|&x| m8(x)).collect();
    let mut out = Vec::new();
    out.push(if d == 0 {
        Verdict::checked(
            "quadric.m",
            any(&|x| m8(x - target) == 0),
            lhs.clone(),
            vec![m8(target)],
            "= mod 8",
            note.clone(),
        )
    } else {
        Verdict::not_applicable("quadric.m", "M-curves only")
    });
    out.push(if d == 1 {
        Verdict::checked(
            "quadric.m1",
            any(&|x| matches!(m8(x - target), 1 | 7)),
            lhs.clone(),
            vec![m8(target + 1), m8(target - 1)],
            "= one of, mod 8",
            note.clone(),
        )
    } else {
        Verdict::not_applicable("quadric.m1", "(M-1)-curves only")
    });
    out.push(if d == 2 {
        // with ambiguous halves the premise must hold for both labelings
        let triggered = labelings.iter().all(|lab| lab.iter().all(|&x| m8(x - target - 4) == 0));
        let n = if triggered { format!("{}; {}", FORCES_TYPE_I, note) } else { format!("premise not met; {}", note) };
        Verdict::checked(
            "quadric.m2-force",
            !(triggered && claim == TypeClaim::TypeII),
            lhs.clone(),
            vec![m8(target + 4)],
            "= mod 8 implies type I",
            n,
        )
    } else {
        Verdict::not_applicable("quadric.m2-force", "(M-2)-curves only")
    });
    out.push(if claim == TypeClaim::TypeI {
        Verdict::checked(
            "quadric.typeI",
            any(&|x| m4(x - target) == 0),
            labelings[0].iter().map(|&x| m4(x)).collect(),
            vec![m4(target)],
            "= mod 4",
            note,
        )
    } else {
        Verdict::not_applicable("quadric.typeI", "needs a type I claim")
    });
    out
}

/// Intersections with the generatrices: h c_i = m_i mod 2 and h |c_i| <= m_i.
pub fn check_bezout_generatrices(s: &RealScheme) -> Verdict {
    let (m1, m2) = match (s.surface(), s.class()) {
        (Surface::Hyperboloid, CurveClass::Bidegree(a, b)) => (a as i64, b as i64),
        _ => return Verdict::not_applicable("bezout.generatrix", "hyperboloid only"),
    };
    let h = s.h() as i64;
    let (c1, c2) = s.homclass().unwrap_or((0, 0));
    let pass = (h * c1 - m1).rem_euclid(2) == 0
        && (h * c2 - m2).rem_euclid(2) == 0
        && h * c1.abs() <= m1
        && h * c2.abs() <= m2;
    Verdict::checked(
        "bezout.generatrix",
        pass,
        vec![h * c1, h * c2, h * c1.abs(), h * c2.abs()],
        vec![m1, m2, m1, m2],
        "= mod 2, = mod 2, <=, <=",
        "index-matched reading; the printed statement bounds both h|c_i| by m1",
    )
}

/// Largest total depth of r pairwise disjoint nests, for r = 1, 2, ...
fn best_sums(profiles: &[Vec<u32>]) -> Vec<i64> {
    let maxlen = profiles.iter().map(Vec::len).max().unwrap_or(0);
    let mut best = vec![0i64; maxlen + 1];
    for p in profiles {
        let mut acc = 0i64;
        for (i, &x) in p.iter().enumerate() {
            acc += x as i64;
            best[i + 1] = best[i + 1].max(acc);
        }
    }
    best
}

pub fn check_nest_bounds(s: &RealScheme, opts: &CheckOptions) -> Vec<Verdict> {
    let profiles = s.disjoint_nest_profiles();
    let best = best_sums(&profiles);
    let mut out = Vec::new();
    match (s.surface(), s.class()) {
        (Surface::Hyperboloid, CurveClass::Bidegree(a, b)) => {
            let (m1, m2) = (a as i64, b as i64);
            let h = s.h() as i64;
            let (c1, c2) = s.homclass().unwrap_or((0, 0));
            // the instance with the least slack over both rulings
            let mut tight: Option<(i64, usize, i64, i64, &str)> = None;
            for (ma, ca, mb, cb, tag) in [(m1, c1, m2, c2, ""), (m2, c2, m1, c1, " (rulings swapped)")] {
                for r in 1..best.len() {
                    let lhs = 2 * best[r];
                    let rhs = ma - h * ca.abs() + (r as i64 / 2) * (mb + h * cb.abs());
                    if tight.is_none_or(|t| lhs - rhs > t.0) {
                        tight = Some((lhs - rhs, r, lhs, rhs, tag));
                    }
                }
            }
            out.push(match tight {
                Some((slack, r, lhs, rhs, tag)) => Verdict::checked(
                    "nests.hyperboloid",
                    slack <= 0,
                    vec![lhs],
                    vec![rhs],
                    "<=",
                    format!("twice the depth of {} disjoint nests{}", r, tag),
                ),
                None => Verdict::checked("nests.hyperboloid", true, vec![0], vec![], "<=", "no nests"),
            });
        }
        _ => out.push(Verdict::not_applicable("nests.hyperboloid", "hyperboloid only")),
    }
    match (s.surface(), s.class()) {
        (Surface::Ellipsoid, CurveClass::Bidegree(m, _)) => {
            let top = best[best.len().min(4) - 1];
            out.push(Verdict::checked(
                "nests.ellipsoid",
                top <= m as i64,
                vec![top],
                vec![m as i64],
                "<=",
                "ovals in three disjoint nests",
            ));
        }
        _ => out.push(Verdict::not_applicable("nests.ellipsoid", "ellipsoid only")),
    }
    match s.class() {
        CurveClass::Degree(m) if s.surface() == Surface::Plane => {
            let m = m as i64;
            for &q in &opts.aux_degrees {
                out.push(match q {
                    _ if q as i64 >= m => {
                        Verdict::not_applicable("nests.aux", format!("auxiliary degree {} is not below the degree", q))
                    }
                    1 => line_rule(s, m),
                    _ => aux_rule(&best, m, q),
                });
            }
            for &d in &opts.aux_degrees {
                out.push(if d as i64 >= m {
                    Verdict::not_applicable(
                        "nests.total-weight",
                        format!("auxiliary degree {} is not below the degree", d),
                    )
                } else {
                    total_weight_rule(&profiles, m, d)
                });
            }
        }
        _ => {
            out.push(Verdict::not_applicable("nests.aux", "plane curves only"));
            out.push(Verdict::not_applicable("nests.total-weight", "plane curves only"));
        }
    }
    out
}

/// A line through points inside two ovals crosses twice every oval
/// around either point, so 2 |ancestors(x) + ancestors(y)| <= m. The
/// ovals may be nested in each other.
fn line_rule(s: &RealScheme, m: i64) -> Verdict {
    let table = s.oval_table();
    let chains: Vec<Vec<usize>> = (0..table.len())
        .map(|i| {
            let mut c = vec![i];
            let mut p = table[i].0;
            while let Some(a) = p {
                c.push(a);
                p = table[a].0;
            }
            c
        })
        .collect();
    let mut worst = 0i64;
    for x in &chains {
        for y in &chains {
            let shared = y.iter().filter(|a| x.contains(a)).count();
            worst = worst.max((x.len() + y.len() - shared) as i64);
        }
    }
    if table.is_empty() {
        return Verdict::not_applicable("nests.aux", "auxiliary degree 1: no ovals");
    }
    Verdict::checked("nests.aux", 2 * worst <= m, vec![2 * worst], vec![m], "<=", "auxiliary line through two ovals")
}

/// c <= L disjoint nests of depths h_j, outside each other unless c = 1,
/// and a curve of degree q < m traced through L points:
/// sum h_j + floor((L - c)/2) <= m q / 2. A lone nest of depth > 1 may be
/// enveloped by the traced component, so it counts with depth 1 only.
fn aux_rule(best: &[i64], m: i64, q: u32) -> Verdict {
    let big_l = AuxTables::cprime_lower(q) as i64;
    let rhs = m * q as i64;
    let mut worst: Option<(usize, i64)> = None;
    for c in 1..best.len().min(big_l as usize + 1) {
        let depth = if c == 1 { 1 } else { best[c] };
        let lhs = 2 * (depth + (big_l - c as i64) / 2);
        if worst.is_none_or(|w| lhs > w.1) {
            worst = Some((c, lhs));
        }
    }
    match worst {
        Some((c, lhs)) => Verdict::checked(
            "nests.aux",
            lhs <= rhs,
            vec![lhs],
            vec![rhs],
            "<=",
            format!("auxiliary degree {} through {} points, {} nests", q, big_l, c),
        ),
        None => Verdict::not_applicable("nests.aux", format!("auxiliary degree {}: no nests", q)),
    }
}

/// d(d + 3)/2 nests outside each other contain 3d - 1 nests of total depth
/// at most (m d - d(d - 3))/2 - 1.
fn total_weight_rule(profiles: &[Vec<u32>], m: i64, d: u32) -> Verdict {
    let di = d as i64;
    let s = (di * (di + 3) / 2) as usize;
    let r = (3 * di - 1) as usize;
    let bound2 = m * di - di * di + 3 * di - 2;
    let worst =
        profiles.iter().filter(|p| p.len() >= s).map(|p| 2 * p[s - r..s].iter().map(|&x| x as i64).sum::<i64>()).max();
    match worst {
        None => Verdict::not_applicable(
            "nests.total-weight",
            format!("auxiliary degree {}: fewer than {} nests outside each other", d, s),
        ),
        Some(w) => Verdict::checked(
            "nests.total-weight",
            w <= bound2,
            vec![w],
            vec![bound2],
            "<=",
            format!("auxiliary degree {}: twice the depth of the {} shallowest of {} nests", d, r, s),
        ),
    }
}

/// 2 Pi >= |l - k^2| for dividing curves of even degree.
pub fn check_pi_bound(s: &RealScheme) -> Verdict {
    let k = match s.half_degree() {
        Some(k) => k,
        None => return Verdict::not_applicable("pi-bound", "plane curves of even degree only"),
    };
    let pi: i64 = {
        fn walk(o: &crate::scheme::Oval<()>, depth: i64) -> i64 {
            depth + o.children.iter().map(|c| walk(c, depth + 1)).sum::<i64>()
        }
        s.forests().iter().flatten().map(|o| walk(o, 0)).sum()
    };
    let l = s.component_counts().2 as i64;
    let gap = (l - k * k).abs();
    Verdict::checked(
        "pi-bound",
        2 * pi >= gap,
        vec![2 * pi],
        vec![gap],
        ">=",
        "derived from Rokhlin's formula; the stronger Pi >= |l - k^2| is not verified",
    )
}

/// Runs every rule. Rules that do not apply are reported with
/// `applicable = false`.
pub fn check_all(
    s: &RealScheme,
    claim: TypeClaim,
    orientation: Option<&OrientedScheme>,
    opts: &CheckOptions,
) -> Report {
    let mut v = vec![check_harnack(s), check_klein(s, claim)];
    v.extend(check_plane_congruences(s, claim));
    v.extend(check_quadric_congruences(s, claim));
    v.push(check_bezout_generatrices(s));
    v.extend(check_nest_bounds(s, opts));
    match orientation {
        Some(o) if o.forget() != *s => {
            let note = format!("orientation is given on a different scheme: {}", o.render());
            v.push(Verdict::checked("rokhlin", false, vec![], vec![], "", note));
            v.push(Verdict::not_applicable("orevkov", "orientation does not match the scheme"));
        }
        Some(o) => {
            v.push(rokhlin_check(o));
            v.push(orevkov_check(o));
        }
        None => {
            v.push(Verdict::not_applicable("rokhlin", "no orientation given"));
            v.push(Verdict::not_applicable("orevkov", "no orientation given"));
        }
    }
    if claim == TypeClaim::TypeI || orientation.is_some() {
        v.push(check_pi_bound(s));
    } else {
        v.push(Verdict::not_applicable("pi-bound", "needs a type I claim or an orientation"));
    }
    Report::new(s.clone(), claim, v)
}
