//! Integral lattices given by Gram matrices: signature, determinant,
//! discriminant forms of period 2, and eigenlattices of involutions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intmat::{self, Mat};
use super::quadratic::{BilinearSpace2, QuadraticSpace};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: Mat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn sigma(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeInvariants {
    pub signature: i64,
    pub determinant: BigInt,
    pub even: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discriminant {
    /// Invariant factors greater than 1.
    pub factors: Vec<BigInt>,
    /// The discriminant quadratic form when the lattice is even and of
    /// period at most 2.
    pub form: Option<QuadraticSpace>,
    pub unsupported: Option<String>,
}

impl Discriminant {
    pub fn order(&self) -> BigInt {
        self.factors.iter().fold(BigInt::one(), |a, f| a * f)
    }

    pub fn form(&self) -> Result<&QuadraticSpace> {
        self.form.as_ref().ok_or_else(|| Error::Unsupported(self.unsupported.clone().unwrap_or_default()))
    }
}

impl IntegralLattice {
    pub fn new(gram: Mat) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidForm("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidForm(format!("Gram matrix is not symmetric at ({}, {})", i, j)));
                }
            }
        }
        Ok(IntegralLattice { gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(intmat::from_i64(rows))
    }

    pub fn diag(values: &[i64]) -> Self {
        let n = values.len();
        let rows: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { values[i] } else { 0 }).collect()).collect();
        Self::from_rows(&rows).expect("diagonal Gram matrices are symmetric")
    }

    /// The hyperbolic plane.
    pub fn u() -> Self {
        Self::from_rows(&[vec![0, 1], vec![1, 0]]).expect("symmetric")
    }

    pub fn d4() -> Self {
        Self::from_rows(&[vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]])
            .expect("symmetric")
    }

    pub fn e8() -> Self {
        let mut g = vec![vec![0i64; 8]; 8];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 2;
        }
        // chain 0-1-2-3-4-5-6 with node 7 attached to node 4
        for &(a, b) in &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
            g[a][b] = -1;
            g[b][a] = -1;
        }
        Self::from_rows(&g).expect("symmetric")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn gram_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.gram.iter().map(|r| r.iter().map(|v| v.to_i64()).collect()).collect()
    }

    pub fn scaled(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        IntegralLattice { gram: self.gram.iter().map(|r| r.iter().map(|v| v * &k).collect()).collect() }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let mut g = intmat::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[a + i][a + j] = other.gram[i][j].clone();
            }
        }
        IntegralLattice { gram: g }
    }

    /// The Gram matrix B^T G B of the vectors given by the columns of B.
    pub fn transform(&self, b: &Mat) -> Self {
        IntegralLattice { gram: intmat::mul(&intmat::mul(&intmat::transpose(b), &self.gram), b) }
    }

    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * &self.gram[i][j] * yj;
            }
        }
        acc
    }

    pub fn determinant(&self) -> BigInt {
        intmat::determinant(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i].is_even())
    }

    /// Inertia by rational symmetric elimination. A zero diagonal with a
    /// nonzero off-diagonal entry is repaired by adding row and column j to i.
    pub fn inertia(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> =
            self.gram.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut pos, mut neg) = (0, 0);
        while !active.is_empty() {
            let pivot = active.iter().position(|&i| !a[i][i].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    let pair = active.iter().enumerate().find_map(|(ii, &i)| {
                        active.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (ii, i, j))
                    });
                    match pair {
                        Some((ii, i, j)) => {
                            for k in 0..n {
                                let v = a[j][k].clone();
                                a[i][k] += v;
                            }
                            for k in 0..n {
                                let v = a[k][j].clone();
                                a[k][i] += v;
                            }
                            ii
                        }
                        None => break,
                    }
                }
            };
            let i = active.remove(p);
            let d = a[i][i].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &j in &active {
                if a[j][i].is_zero() {
                    continue;
                }
                let f = &a[j][i] / &d;
                for &k in &active {
                    let v = &f * &a[i][k];
                    a[j][k] -= v;
                }
            }
        }
        Signature { positive: pos, negative: neg, zero: n - pos - neg }
    }

    pub fn signature(&self) -> Result<i64> {
        let s = self.inertia();
        if s.zero > 0 {
            return Err(Error::Degenerate(format!("Gram matrix has a kernel of rank {}", s.zero)));
        }
        Ok(s.sigma())
    }

    pub fn invariants(&self) -> Result<LatticeInvariants> {
        let signature = self.signature()?;
        Ok(LatticeInvariants { signature, determinant: self.determinant(), even: self.is_even() })
    }

    pub fn discriminant(&self) -> Result<Discriminant> {
        let det = self.determinant();
        if det.is_zero() {
            return Err(Error::Degenerate("determinant is zero".into()));
        }
        let s = intmat::smith(&self.gram);
        let n = self.rank();
        let factors: Vec<BigInt> = s.diag.iter().filter(|d| !d.is_one()).cloned().collect();
        let two = BigInt::from(2);
        let unsupported = if factors.iter().any(|d| d != &two) {
            Some("discriminant group has period greater than 2".to_string())
        } else if !self.is_even() {
            Some("discriminant quadratic form needs an even lattice".to_string())
        } else {
            None
        };
        if unsupported.is_some() {
            return Ok(Discriminant { factors, form: None, unsupported });
        }
        // L^dual / L is generated by v_i / d_i, v_i the columns of V
        let gens: Vec<Vec<BigInt>> =
            (0..n).filter(|&i| s.diag[i] == two).map(|i| (0..n).map(|r| s.v[r][i].clone()).collect()).collect();
        let k = gens.len();
        let four = BigInt::from(4);
        let mut rows = vec![0u64; k];
        let mut q = vec![0u8; k];
        for i in 0..k {
            for j in 0..k {
                // (v_i/2).(v_j/2) = v_i G v_j / 4, in units of 1/2 mod 1
                let p = self.dot(&gens[i], &gens[j]);
                if i == j {
                    q[i] = (&p / &two).mod_floor(&four).to_u8().expect("residue mod 4");
                }
                if (&p / &two).is_odd() {
                    rows[i] |= 1 << j;
                }
            }
        }
        let bil = BilinearSpace2::new(rows)?;
        let form = QuadraticSpace::new(bil, q)?;
        Ok(Discriminant { factors, form: Some(form), unsupported: None })
    }

    /// L + Z v/2 for an even L, v with G v = 0 mod 2 and v.v = 0 mod 8.
    pub fn overlattice(&self, v: &[i64]) -> Result<Self> {
        let n = self.rank();
        if v.len() != n {
            return Err(Error::InvalidForm("vector length differs from the rank".into()));
        }
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x.rem_euclid(2))).collect();
        let i = v.iter().position(|x| x.is_one()).ok_or_else(|| Error::InvalidForm("v is zero mod 2".into()))?;
        for r in 0..n {
            let e: Vec<BigInt> = (0..n).map(|c| BigInt::from(u8::from(c == r))).collect();
            if self.dot(&e, &v).is_odd() {
                return Err(Error::InvalidForm("v/2 is not in the dual lattice".into()));
            }
        }
        if !self.dot(&v, &v).mod_floor(&BigInt::from(8)).is_zero() {
            return Err(Error::InvalidForm("(v/2)^2 is not even".into()));
        }
        // basis: e_j for j != i, and v/2; work with the doubled Gram
        let mut b = intmat::identity(n);
        for r in 0..n {
            b[r][i] = v[r].clone();
        }
        let g4 = self.transform(&b);
        let mut g = g4.gram;
        for r in 0..n {
            for c in 0..n {
                let mut d = BigInt::one();
                if r == i {
                    d *= 2;
                }
                if c == i {
                    d *= 2;
                }
                g[r][c] = &g[r][c] / d;
            }
        }
        IntegralLattice::new(g)
    }

    /// Parses "r" then r rows of r integers; an optional line "involution"
    /// followed by r rows gives an involution matrix.
    pub fn parse(text: &str) -> Result<(IntegralLattice, Option<Mat>)> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let bad = |m: &str| Error::InvalidForm(m.to_string());
        let r: usize = lines
            .next()
            .ok_or_else(|| bad("empty lattice file"))?
            .parse()
            .map_err(|_| bad("first line must be the rank"))?;
        let gram = read_rows(&mut lines, r, "Gram")?;
        let lattice = IntegralLattice::new(gram)?;
        let inv = match lines.next() {
            None => None,
            Some("involution") => Some(read_rows(&mut lines, r, "involution")?),
            Some(other) => return Err(bad(&format!("unexpected line '{}'", other))),
        };
        if lines.next().is_some() {
            return Err(bad("trailing lines after the lattice"));
        }
        Ok((lattice, inv))
    }
}

fn read_rows<'a>(lines: &mut impl Iterator<Item = &'a str>, r: usize, what: &str) -> Result<Mat> {
    let bad = |m: String| Error::InvalidForm(m);
    (0..r)
        .map(|i| {
            let line = lines.next().ok_or_else(|| bad(format!("{} row {} missing", what, i + 1)))?;
            let row: Vec<BigInt> = line
                .split_whitespace()
                .map(|t| t.parse::<BigInt>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(format!("{} row {} is not a list of integers", what, i + 1)))?;
            if row.len() != r {
                return Err(bad(format!("{} row {} has {} entries, expected {}", what, i + 1, row.len(), r)));
            }
            Ok(row)
        })
        .collect()
}

/// Van der Blij's lemma Br(discr L) = sigma(L) mod 8, plus the case of
/// its corollary that matches the discriminant.
pub fn van_der_blij_check(l: &IntegralLattice) -> Result<Vec<Verdict>> {
    if !l.is_even() {
        return Err(Error::Unsupported("van der Blij's lemma is stated for even lattices".into()));
    }
    let sigma = l.signature()?;
    let disc = l.discriminant()?;
    let form = disc.form()?;
    let br = form.brown()? as i64;
    let s8 = sigma.rem_euclid(8);
    let mut out = vec![Verdict::checked(
        "vdb",
        br == s8,
        vec![br],
        vec![s8],
        "= mod 8",
        format!("Br(discr L) = sigma(L) mod 8, sigma = {}", sigma),
    )];
    let det = l.determinant().abs();
    let corollary = if det.is_one() {
        Some((s8 == 0, vec![0], "unimodular: sigma = 0 mod 8"))
    } else if det == BigInt::from(2) {
        Some((s8 == 1 || s8 == 7, vec![1, 7], "|det| = 2: sigma = +-1 mod 8"))
    } else if det == BigInt::from(4) && !form.is_even() {
        Some((matches!(s8, 0 | 2 | 6), vec![0, 2, 6], "|det| = 4, odd discriminant: sigma in {0, +-2} mod 8"))
    } else if form.is_even() {
        Some((s8 % 4 == 0, vec![0, 4], "even discriminant: sigma = 0 mod 4"))
    } else {
        None
    };
    out.push(match corollary {
        Some((pass, rhs, note)) => Verdict::checked("vdb.corollary", pass, vec![s8], rhs, "in mod 8", note),
        None => Verdict::not_applicable("vdb.corollary", "no case matches this discriminant"),
    });
    Ok(out)
}

/// An involutive auto-isometry c of L, acting on coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeInvolution {
    lattice: IntegralLattice,
    matrix: Mat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenlattices {
    pub plus: IntegralLattice,
    pub minus: IntegralLattice,
    /// Bases of L+ and L- as columns, in the coordinates of L.
    pub plus_basis: Mat,
    pub minus_basis: Mat,
    pub dim_j: usize,
}

impl LatticeInvolution {
    pub fn new(lattice: IntegralLattice, matrix: Mat) -> Result<Self> {
        let n = lattice.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInvolution("matrix size differs from the rank".into()));
        }
        if intmat::mul(&matrix, &matrix) != intmat::identity(n) {
            return Err(Error::InvalidInvolution("c^2 is not the identity".into()));
        }
        if lattice.transform(&matrix) != lattice {
            return Err(Error::InvalidInvolution("c does not preserve the form".into()));
        }
        Ok(LatticeInvolution { lattice, matrix })
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn eigenlattices(&self) -> Result<Eigenlattices> {
        if !self.lattice.determinant().abs().is_one() {
            return Err(Error::Unsupported("eigenlattices are computed for unimodular lattices".into()));
        }
        let n = self.lattice.rank();
        let shifted = |s: i64| -> Mat {
            let mut m = self.matrix.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] -= s;
            }
            m
        };
        let plus_basis = intmat::kernel(&shifted(1), n);
        let minus_basis = intmat::kernel(&shifted(-1), n);
        // J = dimension of L / Fix over F2 complement: n - dim Fix(c mod 2)
        let rows: Vec<u64> = (0..n)
            .map(|i| {
                (0..n).fold(0u64, |acc, j| {
                    let mut e = self.matrix[i][j].clone();
                    if i == j {
                        e -= 1;
                    }
                    acc | (u64::from(e.is_odd()) << j)
                })
            })
            .collect();
        let fix = super::quadratic::nullspace(&rows, n).len();
        Ok(Eigenlattices {
            plus: self.lattice.transform(&plus_basis),
            minus: self.lattice.transform(&minus_basis),
            plus_basis,
            minus_basis,
            dim_j: n - fix,
        })
    }
}
