//! Floer invariants read off from spaces of type SWF.
//!
//! Two entry points lead to an [`InvariantReport`]: a [`SwfClass`] together
//! with its grading normalization ([`invariants`]), or critical-point data
//! assembled through the attractor-repeller sequences ([`assemble_moy`]).
//! All fractional quantities are exact multiples of 1/8.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::f2::BitMatrix;
use crate::rational::Characteristic;
use crate::rmodule::{
    abc_from_ideal, infinity_part, r_dim, Convention, FiniteRModule, IdealTriple, InfinityPart,
};
use crate::swfclass::{dp, SwfClass, Verdict, Violation};

/// A rational number `value / 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Eighths(pub i64);

impl Eighths {
    pub const ZERO: Eighths = Eighths(0);

    pub fn from_int(n: i64) -> Self {
        Eighths(8 * n)
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 8 == 0
    }

    /// Representative in `[0, 2)`, i.e. `value mod 16`.
    pub fn mod_two(self) -> Eighths {
        Eighths(self.0.rem_euclid(16))
    }

    /// Reduced numerator and denominator.
    pub fn fraction(self) -> (i64, i64) {
        let g = gcd(self.0.unsigned_abs(), 8) as i64;
        (self.0 / g, 8 / g)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Eighths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.fraction() {
            (n, 1) => write!(f, "{n}"),
            (n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl Neg for Eighths {
    type Output = Eighths;

    fn neg(self) -> Eighths {
        Eighths(-self.0)
    }
}

impl Add for Eighths {
    type Output = Eighths;

    fn add(self, rhs: Eighths) -> Eighths {
        Eighths(self.0 + rhs.0)
    }
}

impl Sub for Eighths {
    type Output = Eighths;

    fn sub(self, rhs: Eighths) -> Eighths {
        Eighths(self.0 - rhs.0)
    }
}

/// Grading normalization of a finite-dimensional approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloerContext {
    /// Dimension of the real part `V^0_τ` of the approximation.
    pub dim_v0tau: u32,
    /// `n(Y, s, g)`.
    pub n: Eighths,
}

/// Dimensions of Pin(2)-equivariant Floer homology: an explicit window and,
/// from `tail_from` on, copies of `R` shifted to start at `tail_origin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwfhTable {
    pub window: BTreeMap<i64, usize>,
    pub tail_from: i64,
    pub tail_origin: i64,
    /// False when only the tail is determined.
    pub torsion_known: bool,
    /// Set when the normalization shift `-2n` is not an integer; degrees are
    /// then listed before that shift.
    pub fractional_shift: Option<Eighths>,
}

impl SwfhTable {
    pub fn dim(&self, d: i64) -> Option<usize> {
        if let Some(n) = self.window.get(&d) {
            Some(*n)
        } else if d >= self.tail_from {
            Some(r_dim((d - self.tail_origin).rem_euclid(4)))
        } else if self.torsion_known {
            Some(0)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub alpha: Eighths,
    pub beta: Eighths,
    pub gamma: Eighths,
    pub delta: BTreeMap<Characteristic, Eighths>,
    /// `(-β) mod 2`, in `[0, 2)`.
    pub mu: Eighths,
    pub swfh: Option<SwfhTable>,
    /// Casson invariant, attached to presets as reference data.
    pub lambda_reference: Option<i64>,
    pub provenance: Vec<String>,
}

impl InvariantReport {
    /// The `(α, β, γ, δ_0, δ_2)` part, for comparisons.
    pub fn numbers(&self) -> (Eighths, Eighths, Eighths, Option<Eighths>, Option<Eighths>) {
        (
            self.alpha,
            self.beta,
            self.gamma,
            self.delta.get(&Characteristic::Zero).copied(),
            self.delta.get(&Characteristic::Two).copied(),
        )
    }
}

fn mu_from_beta(beta: Eighths) -> Eighths {
    (-beta).mod_two()
}

/// Invariants of a space of type SWF under the normalization `ctx`:
/// `α = (a - dim V^0_τ)/2 - n`, likewise `β` from `b`, `γ` from `c` and
/// `δ_p` from `d_p`.
pub fn invariants(x: &SwfClass, ctx: FloerContext) -> Result<InvariantReport> {
    if (i64::from(ctx.dim_v0tau) - i64::from(x.level)).rem_euclid(4) != 0 {
        return Err(Error::Context(format!(
            "dim V^0 = {} is not congruent to the level {} mod 4",
            ctx.dim_v0tau, x.level
        )));
    }
    let dim_v = i64::from(ctx.dim_v0tau);
    let norm = |deg: i64| Eighths(4 * (deg - dim_v)) - ctx.n;
    let abc = x.abc();
    let beta = norm(abc.b);
    let delta = Characteristic::ALL
        .iter()
        .filter_map(|p| dp(x, *p).ok().map(|d| (*p, norm(d))))
        .collect();

    // Degrees move by -dim V and by -2n when 2n is an integer.
    let (shift, fractional_shift) = if ctx.n.0 % 4 == 0 {
        (-dim_v - ctx.n.0 / 4, None)
    } else {
        (-dim_v, Some(Eighths(-2 * ctx.n.0)))
    };
    let window = x
        .borel
        .window()
        .iter()
        .map(|(d, n)| (d + shift, *n))
        .collect();
    let swfh = SwfhTable {
        window,
        tail_from: x.borel.pattern_from() + shift,
        tail_origin: i64::from(x.level) + shift,
        torsion_known: x.borel.torsion_known(),
        fractional_shift,
    };
    let mut provenance = x.provenance.clone();
    provenance.push(format!(
        "normalized(dim_v0tau={}, n={})",
        ctx.dim_v0tau, ctx.n
    ));
    Ok(InvariantReport {
        alpha: norm(abc.a),
        beta,
        gamma: norm(abc.c),
        delta,
        mu: mu_from_beta(beta),
        swfh: Some(swfh),
        lambda_reference: None,
        provenance,
    })
}

/// A connecting-map rank, either given or left to be determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Explicit(u32),
    Auto,
}

/// Critical points of a Chern-Simons-Dirac flow, in normalized grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoyData {
    /// Grading of the bottom of the reducible's tail.
    pub reducible_degree: i64,
    /// `(degree, number of j-orbit pairs)`.
    pub irreducibles: Vec<(i64, u32)>,
    pub g_rank: Rank,
    pub s1_rank: Rank,
}

impl MoyData {
    /// Pin(2)-equivariant classes of the irreducibles: one per pair.
    fn g_irreducible_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (d, pairs) in &self.irreducibles {
            *out.entry(*d).or_insert(0) += *pairs as usize;
        }
        out
    }

    /// Circle-equivariant classes: two per pair.
    fn s1_irreducible_dims(&self) -> BTreeMap<i64, usize> {
        self.g_irreducible_dims()
            .into_iter()
            .map(|(d, n)| (d, 2 * n))
            .collect()
    }
}

/// The tail `R` shifted to `r0` in homological degrees, bottom up.
fn g_tail_degrees(r0: i64) -> impl Iterator<Item = i64> + Clone {
    (0..).filter(|t| t % 4 != 3).map(move |t| r0 + t)
}

fn s1_tail_degrees(r0: i64) -> impl Iterator<Item = i64> + Clone {
    (0..).map(move |e| r0 + 2 * e)
}

/// Kills the lowest `rank` tail classes, each against an irreducible class
/// one degree above. Returns the killed degrees and the irreducibles left.
fn kill_lowest(
    tail: impl Iterator<Item = i64>,
    irreducibles: &BTreeMap<i64, usize>,
    rank: u32,
) -> Option<(Vec<i64>, BTreeMap<i64, usize>)> {
    let mut left = irreducibles.clone();
    let mut killed = Vec::new();
    for d in tail.take(rank as usize) {
        let slot = left.get_mut(&(d + 1)).filter(|n| **n > 0)?;
        *slot -= 1;
        killed.push(d);
    }
    Some((killed, left))
}

fn max_feasible_rank(
    tail: impl Iterator<Item = i64> + Clone,
    irreducibles: &BTreeMap<i64, usize>,
) -> u32 {
    let total: usize = irreducibles.values().sum();
    (0..=total as u32)
        .rev()
        .find(|r| kill_lowest(tail.clone(), irreducibles, *r).is_some())
        .unwrap_or(0)
}

fn resolve(
    rank: Rank,
    what: &str,
    tail: impl Iterator<Item = i64> + Clone,
    irreducibles: &BTreeMap<i64, usize>,
) -> Result<u32> {
    let max = max_feasible_rank(tail.clone(), irreducibles);
    match rank {
        Rank::Explicit(r) if r <= max => Ok(r),
        Rank::Explicit(r) => Err(Error::InvalidInput(format!(
            "{what} {r} exceeds the irreducible classes available to the connecting map (at most {max})"
        ))),
        Rank::Auto if max == 0 => Ok(0),
        Rank::Auto => Err(Error::Ambiguous {
            what: what.to_string(),
            alternatives: (0..=max).collect(),
        }),
    }
}

/// Result of the attractor-repeller assembly.
#[derive(Debug, Clone)]
pub struct MoyAssembly {
    pub data: MoyData,
    pub g_rank: u32,
    pub s1_rank: u32,
    /// The assembled Pin(2)-equivariant homology in homological convention.
    pub module: FiniteRModule,
    pub infinity: InfinityPart,
    pub triple: IdealTriple,
    pub swfh: SwfhTable,
    /// Circle-equivariant dimensions on the module's window.
    pub s1_dims: BTreeMap<i64, usize>,
    /// Lowest surviving degree of the circle tail.
    pub s1_min: i64,
}

impl MoyAssembly {
    pub fn report(&self) -> InvariantReport {
        let r0 = self.data.reducible_degree;
        let abc = abc_from_ideal(0, self.triple);
        let beta = Eighths(4 * (r0 + abc.b));
        let delta = Eighths(4 * self.s1_min);
        InvariantReport {
            alpha: Eighths(4 * (r0 + abc.a)),
            beta,
            gamma: Eighths(4 * (r0 + abc.c)),
            delta: Characteristic::ALL.iter().map(|p| (*p, delta)).collect(),
            mu: mu_from_beta(beta),
            swfh: Some(self.swfh.clone()),
            lambda_reference: None,
            provenance: vec![format!(
                "moy(reducible={r0}, irreducibles={:?}, g_rank={}, s1_rank={})",
                self.data.irreducibles, self.g_rank, self.s1_rank
            )],
        }
    }

    /// Alternating sums over the window before and after the connecting maps.
    pub fn euler_ledger(&self) -> (i64, i64) {
        let sign = |d: i64| if d.rem_euclid(2) == 0 { 1 } else { -1 };
        let r0 = self.data.reducible_degree;
        let before: i64 = self
            .module
            .degrees()
            .map(|d| {
                let irr = self.data.g_irreducible_dims().get(&d).copied().unwrap_or(0);
                sign(d) * (r_dim(d - r0) + irr) as i64
            })
            .sum();
        let after: i64 = self
            .module
            .degrees()
            .map(|d| sign(d) * self.module.dim(d) as i64)
            .sum();
        (before, after)
    }
}

/// Floer homology from critical points: the reducible contributes a tail
/// `R` starting at its degree, each pair of irreducibles one free class,
/// and a connecting map of the given rank cancels the lowest tail classes
/// against irreducible classes one degree up.
pub fn assemble_moy(data: &MoyData) -> Result<MoyAssembly> {
    let r0 = data.reducible_degree;
    let g_irr = data.g_irreducible_dims();
    let s1_irr = data.s1_irreducible_dims();
    let g_rank = resolve(data.g_rank, "g_rank", g_tail_degrees(r0), &g_irr)?;
    let s1_rank = resolve(data.s1_rank, "s1_rank", s1_tail_degrees(r0), &s1_irr)?;
    let (killed, g_left) =
        kill_lowest(g_tail_degrees(r0), &g_irr, g_rank).expect("rank is feasible");
    let (s1_killed, s1_left) =
        kill_lowest(s1_tail_degrees(r0), &s1_irr, s1_rank).expect("rank is feasible");

    let lo = g_irr.keys().next().copied().unwrap_or(r0).min(r0) - 1;
    let hi = g_irr.keys().next_back().copied().unwrap_or(r0).max(r0) + 8;
    let tail_dim = |d: i64| {
        if killed.contains(&d) {
            0
        } else {
            r_dim(d - r0)
        }
    };
    let dims = (lo..=hi)
        .map(|d| tail_dim(d) + g_left.get(&d).copied().unwrap_or(0))
        .collect();
    let mut module = FiniteRModule::new(Convention::Homological, lo, dims, Some(r0));
    // Tail classes sit first in each degree; irreducibles carry no action.
    for d in lo..=hi {
        if tail_dim(d) == 0 {
            continue;
        }
        let t = d - r0;
        if t.rem_euclid(4) != 0 && tail_dim(d - 1) == 1 {
            let mut m = BitMatrix::zeros(module.dim(d - 1), module.dim(d));
            m.set(0, 0, true);
            module.set_q(d, m)?;
        }
        if t >= 4 && tail_dim(d - 4) == 1 {
            let mut m = BitMatrix::zeros(module.dim(d - 4), module.dim(d));
            m.set(0, 0, true);
            module.set_v(d, m)?;
        }
    }
    let infinity = infinity_part(&module)?;
    let triple = infinity.triple.ok_or_else(|| {
        Error::Inconsistent("the assembled homology has no v-periodic tail".into())
    })?;
    let swfh = SwfhTable {
        window: module.degrees().map(|d| (d, module.dim(d))).collect(),
        tail_from: hi + 1,
        tail_origin: r0,
        torsion_known: true,
        fractional_shift: None,
    };
    let s1_dims = (lo..=hi)
        .map(|d| {
            let tail = usize::from(d >= r0 && (d - r0) % 2 == 0 && !s1_killed.contains(&d));
            (d, tail + s1_left.get(&d).copied().unwrap_or(0))
        })
        .collect();
    let s1_min = r0 + 2 * i64::from(s1_rank);
    Ok(MoyAssembly {
        data: data.clone(),
        g_rank,
        s1_rank,
        module,
        infinity,
        triple,
        swfh,
        s1_dims,
        s1_min,
    })
}

/// The four families of Brieskorn spheres `Σ(2, 3, n)`, by `n mod 12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BrieskornFamily {
    /// `n = 12k - 5`
    MinusFive,
    /// `n = 12k - 1`
    MinusOne,
    /// `n = 12k + 1`
    PlusOne,
    /// `n = 12k + 5`
    PlusFive,
}

impl BrieskornFamily {
    pub const ALL: [BrieskornFamily; 4] = [
        BrieskornFamily::MinusFive,
        BrieskornFamily::MinusOne,
        BrieskornFamily::PlusOne,
        BrieskornFamily::PlusFive,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BrieskornFamily::MinusFive => "12k-5",
            BrieskornFamily::MinusOne => "12k-1",
            BrieskornFamily::PlusOne => "12k+1",
            BrieskornFamily::PlusFive => "12k+5",
        }
    }

    pub fn n(self, k: u64) -> i64 {
        let k = k as i64;
        match self {
            BrieskornFamily::MinusFive => 12 * k - 5,
            BrieskornFamily::MinusOne => 12 * k - 1,
            BrieskornFamily::PlusOne => 12 * k + 1,
            BrieskornFamily::PlusFive => 12 * k + 5,
        }
    }

    /// Family and `k` of `n`, which must be coprime to 6.
    pub fn classify(n: u64) -> Result<(BrieskornFamily, u64)> {
        if n == 0 || gcd(n, 6) != 1 {
            return Err(Error::InvalidInput(format!(
                "n = {n} must be a positive integer coprime to 6"
            )));
        }
        Ok(match n % 12 {
            7 => (BrieskornFamily::MinusFive, (n + 5) / 12),
            11 => (BrieskornFamily::MinusOne, (n + 1) / 12),
            1 => (BrieskornFamily::PlusOne, (n - 1) / 12),
            _ => (BrieskornFamily::PlusFive, (n - 5) / 12),
        })
    }

    /// Critical-point data for the member with parameter `k`.
    pub fn moy(self, k: u64) -> MoyData {
        let pairs = u32::try_from(k).expect("k fits in u32");
        let (r0, irr_degree, rank) = match self {
            BrieskornFamily::MinusFive => (-2, -1, 1),
            BrieskornFamily::MinusOne => (0, 1, 1),
            BrieskornFamily::PlusOne => (0, -1, 0),
            BrieskornFamily::PlusFive => (2, 1, 0),
        };
        let rank = if k == 0 { 0 } else { rank };
        MoyData {
            reducible_degree: r0,
            irreducibles: if k == 0 {
                Vec::new()
            } else {
                vec![(irr_degree, pairs)]
            },
            g_rank: Rank::Explicit(rank),
            s1_rank: Rank::Explicit(rank),
        }
    }

    /// Casson invariant of the member with parameter `k`.
    pub fn lambda(self, k: u64) -> i64 {
        let k = k as i64;
        match self {
            BrieskornFamily::MinusFive => -2 * k + 1,
            BrieskornFamily::MinusOne | BrieskornFamily::PlusOne => -2 * k,
            BrieskornFamily::PlusFive => -2 * k - 1,
        }
    }
}

/// Invariants of `Σ(2, 3, n)`; `n = 1` is the three-sphere.
pub fn brieskorn(n: u64) -> Result<InvariantReport> {
    let (family, k) = BrieskornFamily::classify(n)?;
    let assembly = assemble_moy(&family.moy(k))?;
    let mut report = assembly.report();
    report.lambda_reference = Some(family.lambda(k));
    report.provenance.insert(
        0,
        format!(
            "brieskorn(2, 3, {n}): family {} with k = {k}",
            family.label()
        ),
    );
    Ok(report)
}

/// The same invariants for `-Y`: `α ↦ -γ`, `β ↦ -β`, `γ ↦ -α`, `δ ↦ -δ`.
/// The Floer homology table of `-Y` is not determined by these data.
pub fn orientation_reverse(r: &InvariantReport) -> InvariantReport {
    let beta = -r.beta;
    let mut provenance = r.provenance.clone();
    provenance.push("orientation reversed".to_string());
    InvariantReport {
        alpha: -r.gamma,
        beta,
        gamma: -r.alpha,
        delta: r.delta.iter().map(|(p, d)| (*p, -*d)).collect(),
        mu: mu_from_beta(beta),
        swfh: None,
        lambda_reference: r.lambda_reference.map(|l| -l),
        provenance,
    }
}

/// Topology of a cobordism `W` from `Y0` to `Y1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CobordismData {
    pub b2: u32,
    pub spin: bool,
    pub negative_definite: bool,
}

/// Constraints a spin cobordism imposes: equal invariants when `b2 = 0`,
/// and `α(Y1) >= α(Y0) + b2/8` (same for `β`, `γ`) when negative definite.
pub fn cobordism_check(
    r0: &InvariantReport,
    r1: &InvariantReport,
    c: CobordismData,
) -> Result<Verdict> {
    if !c.spin {
        return Err(Error::NotApplicable(
            "the cobordism constraints need a spin structure".into(),
        ));
    }
    if c.b2 > 0 && !c.negative_definite {
        return Err(Error::NotApplicable(
            "with b2 > 0 the constraints need a negative-definite cobordism".into(),
        ));
    }
    let pairs = [
        ("alpha", r0.alpha, r1.alpha),
        ("beta", r0.beta, r1.beta),
        ("gamma", r0.gamma, r1.gamma),
    ];
    let b2 = Eighths(i64::from(c.b2));
    let violations = pairs
        .into_iter()
        .filter_map(|(name, x0, x1)| {
            if c.b2 == 0 && x0 != x1 {
                Some(Violation {
                    quantity: name.to_string(),
                    detail: format!("{x0} != {x1}"),
                })
            } else if c.b2 > 0 && x1 < x0 + b2 {
                Some(Violation {
                    quantity: name.to_string(),
                    detail: format!("{x1} < {x0} + {b2}"),
                })
            } else {
                None
            }
        })
        .collect();
    Ok(Verdict::from_violations(violations))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionVerdict {
    /// `Y # Y` is not homology cobordant to the three-sphere.
    Obstructed,
    NoObstruction,
    /// Only meaningful for integral homology spheres.
    NotApplicable,
}

/// Whether `μ = 1` rules out `Y # Y ~ S^3` for a homology sphere `Y`.
pub fn two_torsion_obstruction(r: &InvariantReport, homology_sphere: bool) -> TorsionVerdict {
    if !homology_sphere {
        TorsionVerdict::NotApplicable
    } else if r.mu == Eighths(8) {
        TorsionVerdict::Obstructed
    } else {
        TorsionVerdict::NoObstruction
    }
}

/// Violations of `α >= β >= γ`, `α ≡ β ≡ γ (mod 2)` and `μ = (-β) mod 2`.
pub fn report_consistency(r: &InvariantReport) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut flag = |q: &str, detail: String| {
        out.push(Violation {
            quantity: q.to_string(),
            detail,
        })
    };
    if !(r.alpha >= r.beta && r.beta >= r.gamma) {
        flag(
            "order",
            format!("{} >= {} >= {} fails", r.alpha, r.beta, r.gamma),
        );
    }
    if r.alpha.mod_two() != r.beta.mod_two() || r.beta.mod_two() != r.gamma.mod_two() {
        flag(
            "parity",
            format!("{}, {}, {} differ mod 2", r.alpha, r.beta, r.gamma),
        );
    }
    if r.mu != mu_from_beta(r.beta) {
        flag("mu", format!("{} is not -{} mod 2", r.mu, r.beta));
    }
    out
}
