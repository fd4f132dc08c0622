// Random generators shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realcurves::forms::intmat::{self, Mat};
use realcurves::forms::{BilinearSpace2, IntegralLattice, QuadraticSpace};
use realcurves::scheme::{empties, Noncontractible};
use realcurves::{CurveClass, OrientedScheme, Oval, RealScheme, Scheme, Surface};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random forest with exactly `n` nodes (not uniform, but every shape occurs).
pub fn forest<R: Rng>(r: &mut R, n: usize) -> Vec<Oval<()>> {
    let mut out = Vec::new();
    let mut left = n;
    while left > 0 {
        let size = r.gen_range(1..=left);
        out.push(Oval::with(forest(r, size - 1)));
        left -= size;
    }
    out
}

/// Random forest with at most `max` nodes.
pub fn sized_forest<R: Rng>(r: &mut R, max: usize) -> Vec<Oval<()>> {
    let n = r.gen_range(0..=max);
    forest(r, n)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A random well-formed real scheme on a random surface.
pub fn scheme<R: Rng>(r: &mut R, max_nodes: usize) -> RealScheme {
    match r.gen_range(0..3) {
        0 => {
            let d = r.gen_range(1..=9);
            RealScheme::plane(d, sized_forest(r, max_nodes)).unwrap()
        }
        1 => {
            let m = r.gen_range(1..=7);
            RealScheme::ellipsoid(m, sized_forest(r, max_nodes)).unwrap()
        }
        _ => {
            let bd = (r.gen_range(1..=7), r.gen_range(1..=7));
            if r.gen_bool(0.4) {
                RealScheme::hyperboloid(bd, None, vec![sized_forest(r, max_nodes)]).unwrap()
            } else {
                let h = r.gen_range(1..=4);
                let c = loop {
                    let c = (r.gen_range(-4..=4), r.gen_range(-4..=4));
                    if c != (0, 0) && gcd(c.0, c.1) == 1 {
                        break c;
                    }
                };
                let mut left = r.gen_range(0..=max_nodes);
                let mut fs = Vec::new();
                for i in 0..h {
                    let n = if i + 1 == h { left } else { r.gen_range(0..=left) };
                    left -= n;
                    fs.push(forest(r, n));
                }
                RealScheme::hyperboloid(bd, Some((c, h)), fs).unwrap()
            }
        }
    }
}

/// Random orientation bits on a real scheme.
pub fn oriented<R: Rng>(r: &mut R, s: &RealScheme) -> OrientedScheme {
    let bits: Vec<bool> = (0..s.component_counts().2).map(|_| r.gen_bool(0.5)).collect();
    s.with_marks(&bits).unwrap()
}

/// Random scheme with separation on a quadric (even bidegree, even h).
pub fn separating_scheme<R: Rng>(r: &mut R, max_nodes: usize) -> RealScheme {
    if r.gen_bool(0.5) {
        let m = r.gen_range(1..=7);
        return RealScheme::ellipsoid(m, sized_forest(r, max_nodes)).unwrap();
    }
    let bd = (2 * r.gen_range(1..=4), 2 * r.gen_range(1..=4));
    let h = 2 * r.gen_range(0..=2);
    if h == 0 {
        return RealScheme::hyperboloid(bd, None, vec![sized_forest(r, max_nodes)]).unwrap();
    }
    let mut left = r.gen_range(0..=max_nodes);
    let mut fs = Vec::new();
    for i in 0..h {
        let n = if i + 1 == h { left } else { r.gen_range(0..=left) };
        left -= n;
        fs.push(forest(r, n));
    }
    let c = *[(1, 0), (0, 1), (1, 1), (1, -1), (1, 2)].choose(r).unwrap();
    Scheme::new(
        Surface::Hyperboloid,
        CurveClass::Bidegree(bd.0, bd.1),
        None,
        Some(Noncontractible { homclass: c, marks: vec![(); h] }),
        fs,
    )
    .unwrap()
}

/// Random quadratic form on F2^d (possibly degenerate), as a symmetric
/// matrix and q values on the basis compatible with its diagonal.
pub fn form<R: Rng>(r: &mut R, d: usize) -> QuadraticSpace {
    let mut rows = vec![0u64; d];
    for i in 0..d {
        for j in i + 1..d {
            if r.gen_bool(0.5) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    let mut q = vec![0u8; d];
    for i in 0..d {
        q[i] = if r.gen_bool(0.5) {
            rows[i] |= 1 << i;
            if r.gen_bool(0.5) {
                1
            } else {
                3
            }
        } else if r.gen_bool(0.5) {
            2
        } else {
            0
        };
    }
    QuadraticSpace::new(BilinearSpace2::new(rows).unwrap(), q).unwrap()
}

pub fn nondegenerate_form<R: Rng>(r: &mut R, d: usize) -> QuadraticSpace {
    loop {
        let f = form(r, d);
        if f.is_nondegenerate() {
            return f;
        }
    }
}

/// Random invertible matrix over F2, columns as bit masks.
pub fn gl2<R: Rng>(r: &mut R, d: usize) -> Vec<u64> {
    loop {
        let cols: Vec<u64> = (0..d).map(|_| r.gen::<u64>() & ((1u64 << d) - 1)).collect();
        if rank2(&cols) == d {
            return cols;
        }
    }
}

pub fn rank2(vs: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Random unimodular integer matrix: a product of elementary moves.
pub fn unimodular<R: Rng>(r: &mut R, n: usize, moves: usize) -> Mat {
    let mut m = intmat::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..moves {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = BigInt::from(*[-1i64, 1, 1, 2, -2].choose(r).unwrap());
        // column i += k * column j
        for row in m.iter_mut() {
            let t = &row[j] * &k;
            row[i] += t;
        }
        if r.gen_bool(0.2) {
            for row in m.iter_mut() {
                row[i] = -row[i].clone();
            }
        }
    }
    m
}

/// Even lattices of rank <= 8 whose discriminant has period <= 2, built
/// from standard pieces and hidden by a random change of basis.
pub fn even_lattice<R: Rng>(r: &mut R) -> IntegralLattice {
    let u2 = IntegralLattice::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap();
    let e7 = {
        // E8 without the end of its long arm
        let g = IntegralLattice::e8().gram_i64().unwrap();
        let rows: Vec<Vec<i64>> = g[1..].iter().map(|row| row[1..].to_vec()).collect();
        IntegralLattice::from_rows(&rows).unwrap()
    };
    let pieces: Vec<IntegralLattice> = vec![
        IntegralLattice::diag(&[2]),
        IntegralLattice::diag(&[-2]),
        IntegralLattice::u(),
        u2,
        IntegralLattice::d4(),
        IntegralLattice::d4().scaled(-1),
        e7.clone(),
        e7.scaled(-1),
        IntegralLattice::e8(),
        IntegralLattice::e8().scaled(-1),
    ];
    let mut l: Option<IntegralLattice> = None;
    let target = r.gen_range(1..=8);
    for _ in 0..20 {
        let cur = l.as_ref().map_or(0, |x| x.rank());
        let fits: Vec<&IntegralLattice> = pieces.iter().filter(|p| cur + p.rank() <= target).collect();
        if fits.is_empty() {
            break;
        }
        let p = (*fits.choose(r).unwrap()).clone();
        l = Some(match l {
            None => p,
            Some(x) => x.direct_sum(&p),
        });
    }
    let l = l.unwrap_or_else(|| IntegralLattice::diag(&[2]));
    let p = unimodular(r, l.rank(), 3 * l.rank());
    l.transform(&p)
}

/// Milgram's Gauss sum over the discriminant of a 2-elementary even
/// lattice, as integer coordinates in the basis 1, z, z^2, z^3 (z^4 = -1).
pub fn milgram_sum(l: &IntegralLattice) -> [i64; 4] {
    let g = l.gram_i64().unwrap();
    let n = g.len();
    let mut s = [0i64; 4];
    for v in 0u64..1 << n {
        let x: Vec<i64> = (0..n).map(|i| (v >> i & 1) as i64).collect();
        if (0..n).any(|i| (0..n).map(|j| g[i][j] * x[j]).sum::<i64>() % 2 != 0) {
            continue;
        }
        let vv: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * g[i][j] * x[j]).sum::<i64>()).sum();
        let k = vv.rem_euclid(8) as usize;
        if k < 4 {
            s[k] += 1
        } else {
            s[k - 4] -= 1
        }
    }
    s
}

pub fn rotate(mut s: [i64; 4], k: i64) -> [i64; 4] {
    for _ in 0..k.rem_euclid(8) {
        s = [-s[3], s[0], s[1], s[2]];
    }
    s
}

/// sqrt(|D|) z^sigma with |D| a power of two.
pub fn milgram_rhs(order: u32, sigma: i64) -> [i64; 4] {
    let half = 1i64 << (order / 2);
    let base = if order.is_multiple_of(2) { [half, 0, 0, 0] } else { [0, half, 0, -half] };
    rotate(base, sigma)
}

pub fn two_power(d: &BigInt) -> u32 {
    let mut d = d.abs();
    let mut e = 0;
    while d > BigInt::one() {
        assert!((&d % 2u32) == BigInt::from(0), "discriminant is not 2-elementary");
        d /= 2u32;
        e += 1;
    }
    e
}

/// Unimodular lattices with an involution, hidden by a change of basis.
pub fn involution<R: Rng>(r: &mut R) -> (IntegralLattice, Mat) {
    type Piece = (Vec<Vec<i64>>, Vec<Vec<i64>>);
    let pieces: Vec<Piece> = vec![
        (vec![vec![0, 1], vec![1, 0]], vec![vec![0, 1], vec![1, 0]]),
        (vec![vec![0, 1], vec![1, 0]], vec![vec![0, -1], vec![-1, 0]]),
        (vec![vec![0, 1], vec![1, 0]], vec![vec![-1, 0], vec![0, -1]]),
        (vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]),
        (vec![vec![-1, 0], vec![0, -1]], vec![vec![0, 1], vec![1, 0]]),
        (vec![vec![1]], vec![vec![1]]),
        (vec![vec![1]], vec![vec![-1]]),
        (vec![vec![-1]], vec![vec![-1]]),
        (vec![vec![1, 0], vec![0, -1]], vec![vec![1, 0], vec![0, -1]]),
    ];
    let count = r.gen_range(1..=4);
    let mut gram: Vec<Vec<i64>> = vec![];
    let mut inv: Vec<Vec<i64>> = vec![];
    for _ in 0..count {
        let (g, c) = &pieces[r.gen_range(0..pieces.len())];
        let (n, k) = (gram.len(), g.len());
        for row in gram.iter_mut().chain(inv.iter_mut()) {
            row.extend(std::iter::repeat_n(0, k));
        }
        for i in 0..k {
            let mut gr = vec![0; n];
            gr.extend(&g[i]);
            gram.push(gr);
            let mut cr = vec![0; n];
            cr.extend(&c[i]);
            inv.push(cr);
        }
    }
    let l = IntegralLattice::from_rows(&gram).unwrap();
    let p = unimodular(r, l.rank(), 2 * l.rank());
    let pinv = intmat::unimodular_inverse(&p).unwrap();
    let c = intmat::mul(&pinv, &intmat::mul(&intmat::from_i64(&inv), &p));
    (l.transform(&p), c)
}

/// q(x) from the basis values and the bilinear matrix, by definition.
pub fn value(f: &QuadraticSpace, x: u64) -> u8 {
    let d = f.dim();
    let mut v = 0u32;
    for i in 0..d {
        if x >> i & 1 == 0 {
            continue;
        }
        v += f.basis_values()[i] as u32;
        for j in i + 1..d {
            if x >> j & 1 == 1 {
                v += 2 * f.bilinear().entry(i, j) as u32;
            }
        }
    }
    (v % 4) as u8
}

/// Brown invariant of a nondegenerate form from the Gaussian integer
/// sum of i^q(x) over all x.
pub fn brown_oracle(f: &QuadraticSpace) -> u8 {
    let d = f.dim();
    let (mut re, mut im) = (0i64, 0i64);
    for x in 0..1u64 << d {
        match value(f, x) {
            0 => re += 1,
            1 => im += 1,
            2 => re -= 1,
            _ => im -= 1,
        }
    }
    let scale = 1i64 << (d / 2);
    assert!(re % scale == 0 && im % scale == 0);
    let (a, b) = (re / scale, im / scale);
    // even d: S / 2^(d/2) is a power of i; odd d: sqrt2 z^k = (+-1) + (+-1) i
    let k = if d.is_multiple_of(2) {
        match (a, b) {
            (1, 0) => 0,
            (0, 1) => 2,
            (-1, 0) => 4,
            (0, -1) => 6,
            _ => panic!("bad sum {} {}", re, im),
        }
    } else {
        match (a, b) {
            (1, 1) => 1,
            (-1, 1) => 3,
            (-1, -1) => 5,
            (1, -1) => 7,
            _ => panic!("bad sum {} {}", re, im),
        }
    };
    k
}

/// <a + 1<b>> built directly, so that a = 0 or b = 0 need no special text.
pub fn one_nest(a: usize, b: usize) -> Vec<Oval<()>> {
    let mut f = empties(a);
    f.push(Oval::with(empties(b)));
    f
}

/// Ovals in component order with the list of their ancestors.
pub fn ancestry<M: realcurves::scheme::Mark>(s: &Scheme<M>) -> Vec<(Vec<usize>, bool)> {
    let mut out: Vec<(Vec<usize>, bool)> = Vec::new();
    let mut stack: Vec<(&Oval<M>, Vec<usize>)> = Vec::new();
    for f in s.forests() {
        for o in f.iter().rev() {
            stack.push((o, vec![]));
        }
        while let Some((o, anc)) = stack.pop() {
            let me = out.len();
            out.push((anc.clone(), o.children.is_empty()));
            let mut inner = anc.clone();
            inner.push(me);
            for c in o.children.iter().rev() {
                stack.push((c, inner.clone()));
            }
        }
    }
    out
}

/// Admissibility of a bit vector for an even degree plane scheme,
/// computed from the definitions.
pub fn oracle_admissible(s: &RealScheme, table: &[(Vec<usize>, bool)], bits: &[bool]) -> bool {
    let k = match s.class() {
        CurveClass::Degree(d) => d as i64 / 2,
        _ => unreachable!(),
    };
    let l = table.len() as i64;
    let mut plus = 0i64;
    let mut minus = 0i64;
    for (i, (anc, _)) in table.iter().enumerate() {
        for &a in anc {
            if bits[a] != bits[i] {
                plus += 1;
            } else {
                minus += 1;
            }
        }
    }
    if 2 * (plus - minus) != l - k * k {
        return false;
    }
    let genus = (2 * k - 1) * (2 * k - 2) / 2;
    let nonempty: Vec<usize> = (0..table.len()).filter(|&i| !table[i].1).collect();
    let depth = table.iter().map(|(a, _)| a.len() as i64 + 1).max().unwrap_or(0);
    let chain = nonempty.windows(2).all(|w| table[w[1]].0.contains(&w[0]));
    if l != genus + 1 || depth < k - 1 || !chain {
        return true;
    }
    let outer = nonempty.first().map(|&i| bits[i]);
    let positive = |i: usize| Some(bits[i]) == outer;
    let kp = nonempty.iter().filter(|&&i| positive(i)).count() as i64;
    let km = nonempty.len() as i64 - kp;
    // orevkov's pair sign: + when the two bits agree
    let (mut pp, mut mp, mut pm, mut mm) = (0i64, 0i64, 0i64, 0i64);
    for (i, (anc, empty)) in table.iter().enumerate() {
        if !empty {
            continue;
        }
        for &a in anc {
            let e_plus = bits[a] == bits[i];
            match (e_plus, positive(a)) {
                (true, true) => pp += 1,
                (false, true) => mp += 1,
                (true, false) => pm += 1,
                (false, false) => mm += 1,
            }
        }
    }
    mp - pp == kp * kp && pm - mm == km * km
}

/// Explicit region graph: one vertex per complementary region, one edge
/// per component, two-colored by breadth-first search.
pub fn chi_oracle(s: &RealScheme) -> (i64, i64) {
    // region 0..h-1 (or region 0) are the outer regions; each oval adds the
    // region it bounds from inside
    let outer = s.h().max(1);
    let mut chi: Vec<i64> = Vec::new();
    let mut boundary: Vec<i64> = vec![0; outer];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..outer {
        chi.push(0);
        if s.h() > 0 {
            // annulus between two noncontractible components
            boundary[i] += 0;
            edges.push((i, (i + 1) % outer));
        }
    }
    fn walk(
        o: &Oval<()>,
        outside: usize,
        chi: &mut Vec<i64>,
        boundary: &mut Vec<i64>,
        edges: &mut Vec<(usize, usize)>,
    ) {
        let me = chi.len();
        chi.push(0);
        boundary.push(1);
        boundary[outside] += 1;
        edges.push((outside, me));
        for c in &o.children {
            walk(c, me, chi, boundary, edges);
        }
    }
    for (i, f) in s.forests().iter().enumerate() {
        for o in f {
            walk(o, i, &mut chi, &mut boundary, &mut edges);
        }
    }
    for r in 0..chi.len() {
        // genus 0 pieces have chi = 2 - holes; the torus piece and the
        // annuli have chi = -holes (annuli: their two noncontractible
        // boundaries contribute nothing)
        chi[r] = if r < outer {
            match s.surface() {
                Surface::Ellipsoid => 2 - boundary[r],
                _ => -boundary[r],
            }
        } else {
            2 - boundary[r]
        };
    }
    let mut color = vec![usize::MAX; chi.len()];
    let mut queue = VecDeque::from([0usize]);
    color[0] = 0;
    while let Some(v) = queue.pop_front() {
        for &(a, b) in &edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if color[w] == usize::MAX {
                color[w] = 1 - color[v];
                queue.push_back(w);
            } else {
                assert_ne!(color[w], color[v], "region graph is not bipartite");
            }
        }
    }
    let mut sums = (0, 0);
    for r in 0..chi.len() {
        if color[r] == 0 {
            sums.0 += chi[r]
        } else {
            sums.1 += chi[r]
        }
    }
    sums
}
