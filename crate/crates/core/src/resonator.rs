//! Harmonic-balance systems for driven nonlinear resonators.
//!
//! The steady states of
//! `Ẍ + ω₀²(1 − λ cos 2ωt) X + γ Ẋ + α₁ X³ + ... + α_{n−1} X^{2n−1} = 0`
//! under the ansatz `X = u cos ωt + v sin ωt` satisfy a pair of polynomial
//! equations
//!
//! ```text
//! p = a0 + a1 u + a2 v + a3 u r² + ... + a_{n+1} u r^{2n−2}
//! q = b0 + b1 u + b2 v + b3 v r² + ... + b_{n+1} v r^{2n−2}
//! ```
//!
//! with `r² = u² + v²`. This module builds those systems for one resonator,
//! for `N` linearly coupled resonators, and for one resonator with `M`
//! incommensurate harmonics (cubic nonlinearity).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::polyring::{format_rational, rat, rational_str, PolySystem, Polynomial, Rational, Ring};
use crate::{Error, Result};

/// Range of the random integer coefficients drawn in symbolic mode.
pub const COEFF_RANGE: i64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    SymbolicGeneric,
    Physical,
}

/// How coupled resonators enter each other's equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// `p_i += ½ Σ J_{j,i} u_j`, `q_i += ½ Σ J_{j,i} v_j`.
    HalfJ,
    /// `p_i += Σ c_{j,i} v_j`, `q_i += Σ d_{j,i} u_j`.
    General,
}

/// Physical parameters of one resonator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    #[serde(with = "rational_str")]
    pub omega0: Rational,
    #[serde(with = "rational_str")]
    pub omega: Rational,
    /// Per-harmonic frequencies `ω_1..ω_M`; defaults to `ω` for every harmonic.
    #[serde(
        default,
        with = "rational_str::option_vec",
        skip_serializing_if = "Option::is_none"
    )]
    pub omegas: Option<Vec<Rational>>,
    #[serde(with = "rational_str")]
    pub lambda: Rational,
    #[serde(with = "rational_str")]
    pub gamma: Rational,
    /// `α_1..α_{n−1}`.
    #[serde(with = "rational_str::vec")]
    pub alphas: Vec<Rational>,
}

impl PhysicalParams {
    fn omega_k(&self, k: usize) -> Rational {
        self.omegas
            .as_ref()
            .and_then(|w| w.get(k).cloned())
            .unwrap_or_else(|| self.omega.clone())
    }
}

/// Description of a harmonic-balance problem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HBConfig {
    /// Number of resonators `N`.
    pub resonators: usize,
    /// Half-degree `n`; the nonlinearity has degree `2n − 1`.
    pub n: usize,
    /// Number of harmonics `M`.
    pub harmonics: usize,
    pub mode: Mode,
    /// One entry, or one per resonator.
    #[serde(default)]
    pub physical: Vec<PhysicalParams>,
    /// Coupling matrix `J` (zero diagonal); random in symbolic mode if absent.
    #[serde(default, with = "rational_str::option_matrix")]
    pub coupling: Option<Vec<Vec<Rational>>>,
    pub convention: Coupling,
    pub seed: u64,
}

impl HBConfig {
    pub fn single(n: usize, seed: u64) -> Self {
        HBConfig {
            resonators: 1,
            n,
            harmonics: 1,
            mode: Mode::SymbolicGeneric,
            physical: Vec::new(),
            coupling: None,
            convention: Coupling::HalfJ,
            seed,
        }
    }

    pub fn coupled(resonators: usize, n: usize, seed: u64) -> Self {
        HBConfig {
            resonators,
            ..HBConfig::single(n, seed)
        }
    }

    pub fn multifreq(harmonics: usize, seed: u64) -> Self {
        HBConfig {
            harmonics,
            ..HBConfig::single(2, seed)
        }
    }

    pub fn with_physical(mut self, params: PhysicalParams) -> Self {
        self.mode = Mode::Physical;
        self.physical = vec![params];
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.resonators == 0 || self.harmonics == 0 {
            return Err(Error::InvalidParameter("N and M must be at least 1".into()));
        }
        if self.n < 2 {
            return Err(Error::InvalidParameter("n must be at least 2".into()));
        }
        if self.resonators > 1 && self.harmonics > 1 {
            return Err(Error::InvalidParameter(
                "coupled resonators with several harmonics are not supported".into(),
            ));
        }
        if self.harmonics > 1 && self.n != 2 {
            return Err(Error::InvalidParameter(
                "several harmonics require a cubic nonlinearity (n = 2)".into(),
            ));
        }
        if self.mode == Mode::Physical {
            if self.physical.is_empty() {
                return Err(Error::InvalidParameter("physical mode needs parameters".into()));
            }
            if self.physical.len() != 1 && self.physical.len() != self.resonators {
                return Err(Error::DimensionMismatch {
                    expected: self.resonators,
                    found: self.physical.len(),
                });
            }
            for p in &self.physical {
                if p.alphas.len() != self.n - 1 {
                    return Err(Error::DimensionMismatch {
                        expected: self.n - 1,
                        found: p.alphas.len(),
                    });
                }
            }
        }
        if let Some(j) = &self.coupling {
            if j.len() != self.resonators || j.iter().any(|r| r.len() != self.resonators) {
                return Err(Error::DimensionMismatch {
                    expected: self.resonators,
                    found: j.len(),
                });
            }
        }
        Ok(())
    }

    /// Coefficients for this configuration.
    pub fn coefficients(&self) -> Result<CoefficientMap> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        if self.harmonics > 1 {
            return match self.mode {
                Mode::Physical => CoefficientMap::physical_multifreq(self.harmonics, &self.physical[0]),
                Mode::SymbolicGeneric => Ok(CoefficientMap::symbolic_multifreq(
                    self.harmonics,
                    &mut rng,
                    self.seed,
                )),
            };
        }
        let mut map = match self.mode {
            Mode::Physical => {
                let params: Vec<PhysicalParams> = (0..self.resonators)
                    .map(|i| self.physical[i.min(self.physical.len() - 1)].clone())
                    .collect();
                CoefficientMap::physical(self.n, &params)?
            }
            Mode::SymbolicGeneric => CoefficientMap::symbolic(self.resonators, self.n, &mut rng, self.seed),
        };
        if self.resonators > 1 {
            map.set_coupling(self.convention, self.coupling.as_ref(), &mut rng)?;
        }
        Ok(map)
    }

    /// The polynomial system together with the coefficients that produced it.
    pub fn generate(&self) -> Result<(PolySystem, CoefficientMap)> {
        let coeffs = self.coefficients()?;
        let sys = if self.harmonics > 1 {
            generate_multifreq(self.harmonics, &coeffs)?
        } else if self.resonators > 1 {
            generate_coupled(self.resonators, self.n, &coeffs)?
        } else {
            generate_single(self.n, &coeffs)?
        };
        Ok((sys, coeffs))
    }
}

/// A linear relation among coefficients and whether it holds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearRelation {
    pub block: usize,
    pub relation: String,
    pub holds: bool,
}

/// Coefficients of a harmonic-balance system, block by block.
///
/// Block `i` (a resonator, or a harmonic) uses `a[i][k]` and `b[i][k]` for
/// `k = 0..=n+1` in the single-resonator layout. For several harmonics the
/// layout is `[a_{k,0}, a_{k,1}, c_k, d_k]` and `[b_{k,0}, −c_k, b_{k,1}, d_k]`.
/// `cross_p[i][j]` and `cross_q[i][j]` are the coupling coefficients of
/// resonator `j` in the equations of resonator `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientMap {
    pub mode: Mode,
    #[serde(with = "rational_str::matrix")]
    pub a: Vec<Vec<Rational>>,
    #[serde(with = "rational_str::matrix")]
    pub b: Vec<Vec<Rational>>,
    #[serde(default, with = "rational_str::matrix", skip_serializing_if = "Vec::is_empty")]
    pub cross_p: Vec<Vec<Rational>>,
    #[serde(default, with = "rational_str::matrix", skip_serializing_if = "Vec::is_empty")]
    pub cross_q: Vec<Vec<Rational>>,
    pub convention: Coupling,
    pub relations: Vec<LinearRelation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let x = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        if x != 0 {
            return rat(x);
        }
    }
}

impl CoefficientMap {
    /// Explicit coefficients for one resonator, `a` and `b` of length `n + 2`.
    pub fn from_single(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        if a.len() != b.len() || a.len() < 4 {
            return Err(Error::InvalidParameter(
                "coefficient vectors must both have length n + 2 >= 4".into(),
            ));
        }
        Ok(CoefficientMap {
            mode: Mode::SymbolicGeneric,
            a: vec![a],
            b: vec![b],
            cross_p: Vec::new(),
            cross_q: Vec::new(),
            convention: Coupling::HalfJ,
            relations: Vec::new(),
            seed: None,
        })
    }

    /// Random nonzero integer coefficients for `blocks` resonators.
    pub fn symbolic(blocks: usize, n: usize, rng: &mut ChaCha8Rng, seed: u64) -> Self {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for _ in 0..blocks {
            a.push((0..n + 2).map(|_| random_coeff(rng)).collect());
            b.push((0..n + 2).map(|_| random_coeff(rng)).collect());
        }
        CoefficientMap {
            mode: Mode::SymbolicGeneric,
            a,
            b,
            cross_p: Vec::new(),
            cross_q: Vec::new(),
            convention: Coupling::HalfJ,
            relations: Vec::new(),
            seed: Some(seed),
        }
    }

    /// Random coefficients with the shared `c_k`, `d_k` of the multi-harmonic layout.
    pub fn symbolic_multifreq(m: usize, rng: &mut ChaCha8Rng, seed: u64) -> Self {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for _ in 0..m {
            let (a0, a1, c, d, b0, b1) = (
                random_coeff(rng),
                random_coeff(rng),
                random_coeff(rng),
                random_coeff(rng),
                random_coeff(rng),
                random_coeff(rng),
            );
            a.push(vec![a0, a1, c.clone(), d.clone()]);
            b.push(vec![b0, -c, b1, d]);
        }
        CoefficientMap {
            mode: Mode::SymbolicGeneric,
            a,
            b,
            cross_p: Vec::new(),
            cross_q: Vec::new(),
            convention: Coupling::HalfJ,
            relations: Vec::new(),
            seed: Some(seed),
        }
    }

    /// Harmonic-balance coefficients from physical parameters, one set per resonator.
    pub fn physical(n: usize, params: &[PhysicalParams]) -> Result<Self> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut relations = Vec::new();
        for (i, p) in params.iter().enumerate() {
            if p.alphas.len() != n - 1 {
                return Err(Error::DimensionMismatch {
                    expected: n - 1,
                    found: p.alphas.len(),
                });
            }
            let (ai, bi) = physical_block(p, &p.omega, true);
            let mut ai = ai;
            let mut bi = bi;
            for (k, alpha) in p.alphas.iter().enumerate() {
                let f = alpha * fourier_coefficient(k as u32 + 1);
                ai.push(f.clone());
                bi.push(f);
            }
            relations.extend(check_relations(
                i,
                &ai,
                &bi,
                &(&p.omega0 * &p.omega0 - &p.omega * &p.omega),
            ));
            a.push(ai);
            b.push(bi);
        }
        let map = CoefficientMap {
            mode: Mode::Physical,
            a,
            b,
            cross_p: Vec::new(),
            cross_q: Vec::new(),
            convention: Coupling::HalfJ,
            relations,
            seed: None,
        };
        map.assert_relations()?;
        Ok(map)
    }

    /// Physical coefficients for one resonator with `m` harmonics.
    pub fn physical_multifreq(m: usize, p: &PhysicalParams) -> Result<Self> {
        if p.alphas.len() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: p.alphas.len(),
            });
        }
        let d = &p.alphas[0] * fourier_coefficient(1);
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut relations = Vec::new();
        for k in 0..m {
            let w = p.omega_k(k);
            let (mut ak, mut bk) = physical_block(p, &w, k == 0);
            ak.push(d.clone());
            bk.push(d.clone());
            relations.extend(check_relations(k, &ak, &bk, &(&p.omega0 * &p.omega0 - &w * &w)));
            a.push(ak);
            b.push(bk);
        }
        let map = CoefficientMap {
            mode: Mode::Physical,
            a,
            b,
            cross_p: Vec::new(),
            cross_q: Vec::new(),
            convention: Coupling::HalfJ,
            relations,
            seed: None,
        };
        map.assert_relations()?;
        Ok(map)
    }

    fn assert_relations(&self) -> Result<()> {
        match self.relations.iter().find(|r| !r.holds) {
            Some(r) => Err(Error::InvalidParameter(format!(
                "relation {} fails in block {}",
                r.relation, r.block
            ))),
            None => Ok(()),
        }
    }

    /// Fills the coupling coefficients; `j` is used as given, or drawn at random.
    pub fn set_coupling(
        &mut self,
        convention: Coupling,
        j: Option<&Vec<Vec<Rational>>>,
        rng: &mut ChaCha8Rng,
    ) -> Result<()> {
        let nres = self.a.len();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let mut p = vec![vec![Rational::zero(); nres]; nres];
        let mut q = vec![vec![Rational::zero(); nres]; nres];
        for i in 0..nres {
            for jj in 0..nres {
                if i == jj {
                    continue;
                }
                match convention {
                    Coupling::HalfJ => {
                        let jji = match j {
                            Some(m) => m[jj][i].clone(),
                            None => random_coeff(rng),
                        };
                        p[i][jj] = &half * &jji;
                        q[i][jj] = &half * &jji;
                    }
                    Coupling::General => {
                        p[i][jj] = random_coeff(rng);
                        q[i][jj] = random_coeff(rng);
                    }
                }
            }
        }
        if let Some(m) = j {
            if (0..nres).any(|i| !m[i][i].is_zero()) {
                return Err(Error::InvalidParameter(
                    "coupling matrix must have zero diagonal".into(),
                ));
            }
        }
        self.cross_p = p;
        self.cross_q = q;
        self.convention = convention;
        Ok(())
    }
}

/// `[a0, a1, a2]` and `[b0, b1, b2]` of the linear part.
fn physical_block(p: &PhysicalParams, w: &Rational, parametric: bool) -> (Vec<Rational>, Vec<Rational>) {
    let two = rat(2);
    let four = rat(4);
    let detune = (&p.omega0 * &p.omega0 - w * w) / &two;
    let param = if parametric {
        &p.lambda * &p.omega0 * &p.omega0 / &four
    } else {
        Rational::zero()
    };
    let damp = &p.gamma * w / &two;
    let a = vec![Rational::zero(), &detune - &param, damp.clone()];
    let b = vec![Rational::zero(), -damp, &detune + &param];
    (a, b)
}

fn check_relations(block: usize, a: &[Rational], b: &[Rational], detune: &Rational) -> Vec<LinearRelation> {
    let mut out = vec![
        LinearRelation {
            block,
            relation: "a1 + b2 = w0^2 - w^2".into(),
            holds: &a[1] + &b[2] == *detune,
        },
        LinearRelation {
            block,
            relation: "a2 + b1 = 0".into(),
            holds: (&a[2] + &b[1]).is_zero(),
        },
    ];
    for k in 3..a.len() {
        out.push(LinearRelation {
            block,
            relation: format!("a{k} = b{k}"),
            holds: a[k] == b[k],
        });
    }
    out
}

fn r_squared(ring: &Arc<Ring>, u: usize, v: usize) -> Polynomial {
    &Polynomial::var(ring, u).pow(2) + &Polynomial::var(ring, v).pow(2)
}

/// `(p, q)` of one block in variables `u`, `v`.
fn block_pair(
    ring: &Arc<Ring>,
    u: usize,
    v: usize,
    a: &[Rational],
    b: &[Rational],
) -> (Polynomial, Polynomial) {
    let pu = Polynomial::var(ring, u);
    let pv = Polynomial::var(ring, v);
    let r2 = r_squared(ring, u, v);
    let mut p = Polynomial::constant(ring, a[0].clone()) + pu.scale(&a[1]) + pv.scale(&a[2]);
    let mut q = Polynomial::constant(ring, b[0].clone()) + pu.scale(&b[1]) + pv.scale(&b[2]);
    let mut rp = Polynomial::one(ring);
    for k in 3..a.len() {
        rp = &rp * &r2;
        p = p + (&pu * &rp).scale(&a[k]);
        q = q + (&pv * &rp).scale(&b[k]);
    }
    (p, q)
}

/// The pair `p, q` for one resonator in variables `u, v`.
pub fn generate_single(n: usize, coeffs: &CoefficientMap) -> Result<PolySystem> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let (a, b) = block_coeffs(coeffs, 0, n)?;
    let ring = Ring::new(["u", "v"]);
    let (p, q) = block_pair(&ring, 0, 1, a, b);
    PolySystem::new(&ring, vec![p, q])
}

fn block_coeffs(coeffs: &CoefficientMap, i: usize, n: usize) -> Result<(&[Rational], &[Rational])> {
    let (Some(a), Some(b)) = (coeffs.a.get(i), coeffs.b.get(i)) else {
        return Err(Error::InvalidParameter(format!("no coefficients for block {i}")));
    };
    if a.len() != n + 2 || b.len() != n + 2 {
        return Err(Error::DimensionMismatch {
            expected: n + 2,
            found: a.len().min(b.len()),
        });
    }
    Ok((a, b))
}

/// Variables `u1, v1, ..., uN, vN`.
pub fn pair_ring(blocks: usize) -> Arc<Ring> {
    Ring::new((1..=blocks).flat_map(|i| [format!("u{i}"), format!("v{i}")]))
}

/// `2N` equations of `N` coupled resonators.
pub fn generate_coupled(nres: usize, n: usize, coeffs: &CoefficientMap) -> Result<PolySystem> {
    if nres == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let ring = pair_ring(nres);
    let mut eqs = Vec::new();
    for i in 0..nres {
        let (a, b) = block_coeffs(coeffs, i, n)?;
        let (mut p, mut q) = block_pair(&ring, 2 * i, 2 * i + 1, a, b);
        if !coeffs.cross_p.is_empty() {
            for j in 0..nres {
                if j == i {
                    continue;
                }
                let (uj, vj) = (Polynomial::var(&ring, 2 * j), Polynomial::var(&ring, 2 * j + 1));
                match coeffs.convention {
                    Coupling::HalfJ => {
                        p = p + uj.scale(&coeffs.cross_p[i][j]);
                        q = q + vj.scale(&coeffs.cross_q[i][j]);
                    }
                    Coupling::General => {
                        p = p + vj.scale(&coeffs.cross_p[i][j]);
                        q = q + uj.scale(&coeffs.cross_q[i][j]);
                    }
                }
            }
        }
        eqs.push(p);
        eqs.push(q);
    }
    PolySystem::new(&ring, eqs)
}

/// `2M` equations of one cubic resonator with `M` harmonics.
pub fn generate_multifreq(m: usize, coeffs: &CoefficientMap) -> Result<PolySystem> {
    if m == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    let ring = pair_ring(m);
    let two = rat(2);
    let mut eqs = Vec::new();
    for k in 0..m {
        let (a, b) = block_coeffs(coeffs, k, 2)?;
        let (mut p, mut q) = block_pair(&ring, 2 * k, 2 * k + 1, a, b);
        let (uk, vk) = (Polynomial::var(&ring, 2 * k), Polynomial::var(&ring, 2 * k + 1));
        for j in 0..m {
            if j == k {
                continue;
            }
            let rj = r_squared(&ring, 2 * j, 2 * j + 1);
            p = p + (&uk * &rj).scale(&(&two * &a[3]));
            q = q + (&vk * &rj).scale(&(&two * &b[3]));
        }
        eqs.push(p);
        eqs.push(q);
    }
    PolySystem::new(&ring, eqs)
}

/// `C(2k+1, k) / 2^{2k+1}`.
pub fn fourier_coefficient(k: u32) -> Rational {
    let mut c = BigInt::from(1);
    for i in 0..k {
        c = c * (2 * k + 1 - i) / (i + 1);
    }
    Rational::new(c, BigInt::from(1) << (2 * k + 1))
}

/// Outcome of a numerical check of the Fourier identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureCheck {
    pub value: Complex64,
    pub expected: Complex64,
    pub deviation: f64,
}

/// Trapezoidal quadrature of `(1/2π) ∫ (a e^{iθ} + ā e^{−iθ})^{2k+1} e^{−iθ} dθ`
/// against `C(2k+1, k) a |a|^{2k}`.
pub fn fourier_quadrature_check(k: u32, a: (Rational, Rational), grid: usize) -> Result<QuadratureCheck> {
    if grid < 4 * k as usize + 4 {
        return Err(Error::InvalidParameter(format!(
            "grid {grid} too coarse for k = {k}; need at least {}",
            4 * k + 4
        )));
    }
    let to_f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
    let a = Complex64::new(to_f(&a.0), to_f(&a.1));
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..grid {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / grid as f64;
        let e = Complex64::from_polar(1.0, theta);
        let x = a * e + a.conj() * e.conj();
        sum += x.powu(2 * k + 1) * e.conj();
    }
    let value = sum / grid as f64;
    let binom = (fourier_coefficient(k) * Rational::from_integer(BigInt::from(1) << (2 * k + 1)))
        .to_integer()
        .to_f64()
        .unwrap_or(f64::NAN);
    let expected = a * a.norm_sqr().powi(k as i32) * binom;
    Ok(QuadratureCheck {
        value,
        expected,
        deviation: (value - expected).norm(),
    })
}

/// Specialized systems with a known number of solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LowerBoundKind {
    /// One resonator with nonlinearity `2n − 1`: `4n − 3` solutions.
    Single(usize),
    /// One cubic resonator with `M` harmonics: `5^M` solutions.
    Multi(usize),
}

impl fmt::Display for LowerBoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerBoundKind::Single(n) => write!(f, "single(n={n})"),
            LowerBoundKind::Multi(m) => write!(f, "multi(M={m})"),
        }
    }
}

/// `{c u + v + u r^{2n−2}, −u + v r^{2n−2}}` for a single resonator, and the
/// block system `c u_k + v_k + u_k t_k`, `−u_k + v_k t_k` with
/// `t_k = r_k² + 2 Σ_{j≠k} r_j²` for several harmonics.
pub fn lower_bound_system(kind: LowerBoundKind, c: &Rational) -> Result<PolySystem> {
    if c.is_zero() || *c == rat(2) || *c == rat(-2) {
        return Err(Error::DegenerateParameter(format!(
            "parameter {} lies in {{0, 2, -2}}",
            format_rational(c)
        )));
    }
    match kind {
        LowerBoundKind::Single(n) => {
            if n < 2 {
                return Err(Error::InvalidParameter("n must be at least 2".into()));
            }
            let ring = Ring::new(["u", "v"]);
            let (u, v) = (Polynomial::var(&ring, 0), Polynomial::var(&ring, 1));
            let t = r_squared(&ring, 0, 1).pow(n as u32 - 1);
            let p = u.scale(c) + v.clone() + &u * &t;
            let q = -u + &v * &t;
            PolySystem::new(&ring, vec![p, q])
        }
        LowerBoundKind::Multi(m) => {
            if m == 0 {
                return Err(Error::InvalidParameter("M must be at least 1".into()));
            }
            let ring = pair_ring(m);
            let mut eqs = Vec::new();
            for k in 0..m {
                let (u, v) = (Polynomial::var(&ring, 2 * k), Polynomial::var(&ring, 2 * k + 1));
                let mut t = r_squared(&ring, 2 * k, 2 * k + 1);
                for j in 0..m {
                    if j != k {
                        t = t + r_squared(&ring, 2 * j, 2 * j + 1).scale(&rat(2));
                    }
                }
                eqs.push(u.scale(c) + v.clone() + &u * &t);
                eqs.push(-u + &v * &t);
            }
            PolySystem::new(&ring, eqs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::ratio;

    fn params(alphas: Vec<Rational>) -> PhysicalParams {
        PhysicalParams {
            omega0: rat(3),
            omega: rat(2),
            omegas: None,
            lambda: ratio(1, 5),
            gamma: ratio(1, 10),
            alphas,
        }
    }

    #[test]
    fn fourier_values() {
        assert_eq!(fourier_coefficient(0), ratio(1, 2));
        assert_eq!(fourier_coefficient(1), ratio(3, 8));
        assert_eq!(fourier_coefficient(2), ratio(5, 16));
    }

    #[test]
    fn quadrature_agrees() {
        let c = fourier_quadrature_check(1, (rat(1), rat(0)), 16).unwrap();
        assert!(c.deviation < 1e-12);
        assert!((c.value.re - 3.0).abs() < 1e-12);
        let c = fourier_quadrature_check(0, (rat(0), rat(1)), 8).unwrap();
        assert!((c.value - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(fourier_quadrature_check(3, (rat(1), rat(1)), 8).is_err());
    }

    #[test]
    fn physical_cubic_coefficient() {
        let cfg = HBConfig::single(2, 0).with_physical(params(vec![rat(1)]));
        let (sys, coeffs) = cfg.generate().unwrap();
        assert!(coeffs.relations.iter().all(|r| r.holds));
        let ring = sys.ring();
        let u3 = crate::polyring::Monomial::new(vec![3, 0]);
        let v3 = crate::polyring::Monomial::new(vec![0, 3]);
        assert_eq!(sys.equations()[0].coefficient(&u3), ratio(3, 8));
        assert_eq!(sys.equations()[1].coefficient(&v3), ratio(3, 8));
        assert_eq!(ring.vars(), &["u", "v"]);
    }

    #[test]
    fn coupling_half_factor() {
        let mut cfg = HBConfig::coupled(2, 2, 0);
        cfg.coupling = Some(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]);
        let (sys, _) = cfg.generate().unwrap();
        let u2 = crate::polyring::Monomial::new(vec![0, 0, 1, 0]);
        assert_eq!(sys.equations()[0].coefficient(&u2), ratio(1, 2));
    }

    #[test]
    fn degenerate_lower_bound() {
        for c in [0, 2, -2] {
            assert!(matches!(
                lower_bound_system(LowerBoundKind::Single(2), &rat(c)),
                Err(Error::DegenerateParameter(_))
            ));
        }
    }
}
