//! The ring `R = F2[q, v]/(q^3)` (q in degree 1, v in degree 4), its
//! v-saturated graded ideals, and finite windows of graded R-modules.
//!
//! Every v-saturated graded ideal of `R` has the normal form
//! `(v^i, q v^j, q^2 v^k)` with `i >= j >= k >= 0`, so ideals are carried
//! around as an [`IdealTriple`]; [`GradedIdeal`] is the explicit monomial set
//! used for validation and display.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{solve, BitMatrix, BitVector, Subspace};

/// A monomial `q^qpow v^vpow` of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RMonomial {
    pub qpow: u8,
    pub vpow: u32,
}

impl RMonomial {
    pub const ONE: RMonomial = RMonomial { qpow: 0, vpow: 0 };

    pub fn new(qpow: u8, vpow: u32) -> Result<Self> {
        if qpow > 2 {
            return Err(Error::InvalidInput(format!(
                "q^{qpow} vanishes in R (q^3 = 0)"
            )));
        }
        Ok(Self { qpow, vpow })
    }

    pub fn degree(self) -> i64 {
        i64::from(self.qpow) + 4 * i64::from(self.vpow)
    }

    /// The unique monomial of degree `d`, if `R` is nonzero there.
    pub fn in_degree(d: i64) -> Option<Self> {
        if d < 0 || d.rem_euclid(4) == 3 {
            return None;
        }
        Some(Self {
            qpow: (d % 4) as u8,
            vpow: (d / 4) as u32,
        })
    }

    /// `q · self`, or `None` when the product vanishes.
    pub fn times_q(self) -> Option<Self> {
        (self.qpow < 2).then_some(Self {
            qpow: self.qpow + 1,
            vpow: self.vpow,
        })
    }

    pub fn times_v(self) -> Self {
        Self {
            qpow: self.qpow,
            vpow: self.vpow + 1,
        }
    }
}

impl fmt::Display for RMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = match self.qpow {
            0 => String::new(),
            1 => "q".to_string(),
            a => format!("q^{a}"),
        };
        let v = match self.vpow {
            0 => String::new(),
            1 => "v".to_string(),
            b => format!("v^{b}"),
        };
        if q.is_empty() && v.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{q}{v}")
        }
    }
}

/// `dim R_d`: one in degrees `≡ 0, 1, 2 (mod 4)` from zero on.
pub fn r_dim(d: i64) -> usize {
    usize::from(RMonomial::in_degree(d).is_some())
}

/// Dimension of `R` shifted so that `1` sits in degree `origin`.
pub fn shifted_r_dim(d: i64, origin: i64) -> usize {
    r_dim(d - origin)
}

/// Normal form `(v^i, q v^j, q^2 v^k)` of a v-saturated graded ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealTriple {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl IdealTriple {
    pub const UNIT: IdealTriple = IdealTriple { i: 0, j: 0, k: 0 };

    pub fn new(i: i64, j: i64, k: i64) -> Result<Self> {
        if !(i >= j && j >= k && k >= 0) || i > i64::from(u32::MAX) {
            return Err(Error::InvalidTriple { i, j, k });
        }
        Ok(Self {
            i: i as u32,
            j: j as u32,
            k: k as u32,
        })
    }

    /// Minimal v-power in each q-row.
    pub fn row(&self, qpow: u8) -> u32 {
        match qpow {
            0 => self.i,
            1 => self.j,
            _ => self.k,
        }
    }
}

impl fmt::Display for IdealTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(v^{}, qv^{}, q^2v^{})", self.i, self.j, self.k)
    }
}

/// The correction terms `a >= b >= c >= 0` of a space of type SWF.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbcTriple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl AbcTriple {
    /// Checks `a >= b >= c >= 0` and `a ≡ b ≡ c ≡ level (mod 4)`.
    pub fn is_consistent_with(&self, level: i64) -> bool {
        self.a >= self.b
            && self.b >= self.c
            && self.c >= 0
            && [self.a, self.b, self.c]
                .iter()
                .all(|x| (x - level).rem_euclid(4) == 0)
    }
}

/// Explicit monomial set of a graded ideal, truncated at `vpow <= horizon`.
///
/// Monomials above the horizon are taken to be members, which is what
/// v-saturation forces once every q-row has a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    horizon: u32,
    members: BTreeSet<RMonomial>,
}

impl GradedIdeal {
    pub fn from_members<I: IntoIterator<Item = RMonomial>>(
        horizon: u32,
        members: I,
    ) -> Result<Self> {
        let members: BTreeSet<RMonomial> = members.into_iter().collect();
        if let Some(m) = members.iter().find(|m| m.vpow > horizon || m.qpow > 2) {
            return Err(Error::InvalidIdeal(format!(
                "monomial {m} lies beyond the horizon v^{horizon}"
            )));
        }
        Ok(Self { horizon, members })
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn members(&self) -> impl Iterator<Item = &RMonomial> {
        self.members.iter()
    }

    pub fn contains(&self, m: RMonomial) -> bool {
        m.vpow > self.horizon || self.members.contains(&m)
    }

    /// Members of a given degree range, for display.
    pub fn members_up_to_degree(&self, max_degree: i64) -> Vec<RMonomial> {
        (0..=max_degree)
            .filter_map(RMonomial::in_degree)
            .filter(|m| self.contains(*m))
            .collect()
    }
}

/// Reads off `(i, j, k)` after checking closure under `q`, `v` and
/// v-saturation.
pub fn classify_ideal(ideal: &GradedIdeal) -> Result<IdealTriple> {
    let mut minima = [0u32; 3];
    for qpow in 0..3u8 {
        minima[qpow as usize] = ideal
            .members
            .iter()
            .filter(|m| m.qpow == qpow)
            .map(|m| m.vpow)
            .min()
            .ok_or_else(|| {
                Error::InvalidIdeal(format!(
                    "not v-saturated: no member of the form q^{qpow}v^b"
                ))
            })?;
    }
    for m in &ideal.members {
        if !ideal.contains(m.times_v()) {
            return Err(Error::InvalidIdeal(format!(
                "not closed under v: {m} is a member but {} is not",
                m.times_v()
            )));
        }
        if let Some(qm) = m.times_q() {
            if !ideal.contains(qm) {
                return Err(Error::InvalidIdeal(format!(
                    "not closed under q: {m} is a member but {qm} is not"
                )));
            }
        }
    }
    let [i, j, k] = minima.map(i64::from);
    IdealTriple::new(i, j, k)
}

/// The ideal generated by `v^i, q v^j, q^2 v^k`.
pub fn ideal_from_triple(t: IdealTriple) -> Result<GradedIdeal> {
    let t = IdealTriple::new(t.i.into(), t.j.into(), t.k.into())?;
    let horizon = t.i + 2;
    let members =
        (0..3u8).flat_map(|qpow| (t.row(qpow)..=horizon).map(move |vpow| RMonomial { qpow, vpow }));
    GradedIdeal::from_members(horizon, members)
}

/// `a = level + 4i`, `b = level + 4j`, `c = level + 4k`.
pub fn abc_from_ideal(level: u32, t: IdealTriple) -> AbcTriple {
    let s = i64::from(level);
    AbcTriple {
        a: s + 4 * i64::from(t.i),
        b: s + 4 * i64::from(t.j),
        c: s + 4 * i64::from(t.k),
    }
}

/// Direction in which `q` and `v` move degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// `q` raises degree by 1 and `v` by 4.
    Cohomological,
    /// `q` lowers degree by 1 and `v` by 4.
    Homological,
}

impl Convention {
    fn step(self) -> i64 {
        match self {
            Convention::Cohomological => 1,
            Convention::Homological => -1,
        }
    }

    fn flipped(self) -> Self {
        match self {
            Convention::Cohomological => Convention::Homological,
            Convention::Homological => Convention::Cohomological,
        }
    }
}

/// A graded R-module given on the finite window `[lo, hi]`.
///
/// `q(d)` and `v(d)` are the maps out of degree `d`; maps whose target falls
/// outside the window have zero rows. When `tail_origin` is set the module
/// continues above `hi` as `R` shifted to start at that origin: the top four
/// window degrees must already have that shape, and `v` is an isomorphism
/// between them and the degrees beyond the window.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRModule {
    convention: Convention,
    lo: i64,
    dims: Vec<usize>,
    q: Vec<BitMatrix>,
    v: Vec<BitMatrix>,
    tail_origin: Option<i64>,
}

impl FiniteRModule {
    /// A module with the given pieces and all maps zero.
    pub fn new(
        convention: Convention,
        lo: i64,
        dims: Vec<usize>,
        tail_origin: Option<i64>,
    ) -> Self {
        let mut m = Self {
            convention,
            lo,
            dims,
            q: Vec::new(),
            v: Vec::new(),
            tail_origin,
        };
        m.q = m.degrees().map(|d| m.zero_map(d, 1)).collect();
        m.v = m.degrees().map(|d| m.zero_map(d, 4)).collect();
        m
    }

    /// `R` shifted to start at `origin`, on the window `[lo, hi]`.
    pub fn free(convention: Convention, origin: i64, lo: i64, hi: i64) -> Self {
        let dims = (lo..=hi).map(|d| shifted_r_dim(d, origin)).collect();
        let mut m = Self::new(convention, lo, dims, Some(origin));
        for d in lo..=hi {
            let Some(mono) = RMonomial::in_degree(d - origin) else {
                continue;
            };
            // The homological structure is the transpose of the cohomological
            // one: q and v strip a factor instead of adding one.
            let (q_hit, v_hit) = match convention {
                Convention::Cohomological => (mono.times_q().is_some(), true),
                Convention::Homological => (mono.qpow > 0, mono.vpow > 0),
            };
            let i = m.idx(d);
            if q_hit && m.dim(m.q_target(d)) == 1 {
                m.q[i] = BitMatrix::identity(1);
            }
            if v_hit && m.dim(m.v_target(d)) == 1 {
                m.v[i] = BitMatrix::identity(1);
            }
        }
        m
    }

    fn zero_map(&self, d: i64, shift: i64) -> BitMatrix {
        BitMatrix::zeros(self.dim(d + shift * self.convention.step()), self.dim(d))
    }

    fn idx(&self, d: i64) -> usize {
        (d - self.lo) as usize
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn tail_origin(&self) -> Option<i64> {
        self.tail_origin
    }

    pub fn dim(&self, d: i64) -> usize {
        if d < self.lo || d > self.hi() {
            0
        } else {
            self.dims[self.idx(d)]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn q_target(&self, d: i64) -> i64 {
        d + self.convention.step()
    }

    pub fn v_target(&self, d: i64) -> i64 {
        d + 4 * self.convention.step()
    }

    pub fn q(&self, d: i64) -> BitMatrix {
        if d < self.lo || d > self.hi() {
            return BitMatrix::zeros(self.dim(self.q_target(d)), 0);
        }
        self.q[self.idx(d)].clone()
    }

    pub fn v(&self, d: i64) -> BitMatrix {
        if d < self.lo || d > self.hi() {
            return BitMatrix::zeros(self.dim(self.v_target(d)), 0);
        }
        self.v[self.idx(d)].clone()
    }

    fn check_shape(&self, d: i64, target: i64, m: &BitMatrix) -> Result<()> {
        if d < self.lo || d > self.hi() {
            return Err(Error::Dimension(format!(
                "degree {d} is outside the window"
            )));
        }
        let expected = (self.dim(target), self.dim(d));
        if m.shape() != expected {
            return Err(Error::Dimension(format!(
                "map out of degree {d} has shape {:?}, expected {expected:?}",
                m.shape()
            )));
        }
        Ok(())
    }

    pub fn set_q(&mut self, d: i64, m: BitMatrix) -> Result<()> {
        self.check_shape(d, self.q_target(d), &m)?;
        let i = self.idx(d);
        self.q[i] = m;
        Ok(())
    }

    pub fn set_v(&mut self, d: i64, m: BitMatrix) -> Result<()> {
        self.check_shape(d, self.v_target(d), &m)?;
        let i = self.idx(d);
        self.v[i] = m;
        Ok(())
    }

    /// The dual module: same pieces, transposed maps, opposite convention.
    pub fn dual(&self) -> Self {
        let mut out = Self::new(
            self.convention.flipped(),
            self.lo,
            self.dims.clone(),
            self.tail_origin,
        );
        for d in self.degrees() {
            let (qt, vt) = (self.q_target(d), self.v_target(d));
            if (self.lo..=self.hi()).contains(&qt) {
                out.set_q(qt, self.q(d).transpose())
                    .expect("transpose has the dual shape");
            }
            if (self.lo..=self.hi()).contains(&vt) {
                out.set_v(vt, self.v(d).transpose())
                    .expect("transpose has the dual shape");
            }
        }
        out
    }

    /// Degreewise direct sum; the summands' bases are concatenated
    /// (`self` first). At most one summand may carry a tail.
    pub fn direct_sum(&self, other: &FiniteRModule) -> Result<FiniteRModule> {
        if self.convention != other.convention {
            return Err(Error::InvalidInput(
                "direct sum of modules in different conventions".into(),
            ));
        }
        let tail = match (self.tail_origin, other.tail_origin) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidInput(
                    "direct sum of two modules with tails".into(),
                ))
            }
            (a, b) => a.or(b),
        };
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let dims = (lo..=hi).map(|d| self.dim(d) + other.dim(d)).collect();
        let mut out = FiniteRModule::new(self.convention, lo, dims, tail);
        for d in lo..=hi {
            out.set_q(
                d,
                block_diag(
                    &self.q(d),
                    &other.q(d),
                    out.dim(out.q_target(d)),
                    self.dim(self.q_target(d)),
                ),
            )?;
            out.set_v(
                d,
                block_diag(
                    &self.v(d),
                    &other.v(d),
                    out.dim(out.v_target(d)),
                    self.dim(self.v_target(d)),
                ),
            )?;
        }
        Ok(out)
    }
}

/// Block diagonal `a ⊕ b` with the row split at `a_rows`; blocks whose rows
/// fall outside the window (zero-row blocks) are dropped.
fn block_diag(a: &BitMatrix, b: &BitMatrix, rows: usize, a_rows: usize) -> BitMatrix {
    let mut out = BitMatrix::zeros(rows, a.cols() + b.cols());
    for r in 0..a.rows().min(a_rows) {
        for c in 0..a.cols() {
            if a.get(r, c) {
                out.set(r, c, true);
            }
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            if b.get(r, c) {
                out.set(a_rows + r, a.cols() + c, true);
            }
        }
    }
    out
}

impl fmt::Debug for FiniteRModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRModule")
            .field("convention", &self.convention)
            .field("lo", &self.lo)
            .field("dims", &self.dims)
            .field("tail_origin", &self.tail_origin)
            .finish()
    }
}

/// A degree where a ring relation fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    /// `q^3 ≠ 0` on the piece in this degree.
    QCubed(i64),
    /// `qv ≠ vq` on the piece in this degree.
    NotCommuting(i64),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::QCubed(d) => write!(f, "q^3 != 0 in degree {d}"),
            AxiomViolation::NotCommuting(d) => write!(f, "qv != vq in degree {d}"),
        }
    }
}

/// Every degree of the window where `q^3 = 0` or `qv = vq` fails as composed
/// matrices. An empty list means the module is valid.
pub fn check_module_axioms(m: &FiniteRModule) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    let compose = |a: BitMatrix, b: BitMatrix| a.mul(&b).expect("adjacent maps compose");
    for d in m.degrees() {
        let q1 = m.q_target(d);
        let q2 = m.q_target(q1);
        let q3 = compose(m.q(q2), compose(m.q(q1), m.q(d)));
        if !q3.is_zero() {
            out.push(AxiomViolation::QCubed(d));
        }
        let qv = compose(m.q(m.v_target(d)), m.v(d));
        let vq = compose(m.v(q1), m.q(d));
        if qv != vq {
            out.push(AxiomViolation::NotCommuting(d));
        }
    }
    out
}

/// The v-saturated part `⋂_l im(v^l)` of a module, degreewise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinityPart {
    /// Dimensions on the module's window; above it the tail pattern (if any)
    /// continues.
    pub dims: BTreeMap<i64, usize>,
    /// Normal form relative to the tail origin, when the infinity part is
    /// one-dimensional per degree and v-periodic.
    pub triple: Option<IdealTriple>,
    pub tail_origin: Option<i64>,
}

/// Computes `⋂_l im(v^l)`.
///
/// A cohomological module is handled through its dual, where the same
/// intersection measures the classes that survive every power of `v`. The
/// images are iterated (`I_{l+1}(d) = v(I_l(d ± 4))`) until they stop
/// shrinking; for a finite window this happens within `width/4 + 2` steps.
pub fn infinity_part(m: &FiniteRModule) -> Result<InfinityPart> {
    let (hom, spaces) = saturate(m)?;
    let dims: BTreeMap<i64, usize> = hom
        .degrees()
        .zip(spaces.iter().map(Subspace::dim))
        .collect();
    let triple = m
        .tail_origin
        .and_then(|origin| read_triple(&dims, hom.hi(), origin));
    Ok(InfinityPart {
        dims,
        triple,
        tail_origin: m.tail_origin,
    })
}

/// The infinity part as a module in the input's convention: a submodule in
/// homological convention, the quotient by v-torsion in cohomological.
pub fn infinity_submodule(m: &FiniteRModule) -> Result<FiniteRModule> {
    let (hom, spaces) = saturate(m)?;
    let basis = |d: i64| -> Vec<BitVector> {
        if (hom.lo..=hom.hi()).contains(&d) {
            spaces[(d - hom.lo) as usize].basis().to_vec()
        } else {
            Vec::new()
        }
    };
    let dims = hom.degrees().map(|d| basis(d).len()).collect();
    let mut sub = FiniteRModule::new(Convention::Homological, hom.lo, dims, hom.tail_origin);
    for d in hom.degrees() {
        let src = basis(d);
        for (target, map, set) in [
            (
                hom.q_target(d),
                hom.q(d),
                FiniteRModule::set_q as fn(&mut FiniteRModule, i64, BitMatrix) -> Result<()>,
            ),
            (hom.v_target(d), hom.v(d), FiniteRModule::set_v),
        ] {
            let tgt = basis(target);
            let frame = BitMatrix::from_columns(hom.dim(target), &tgt);
            let mut restricted = BitMatrix::zeros(tgt.len(), src.len());
            for (c, x) in src.iter().enumerate() {
                let y = map.mul_vec(x)?;
                if tgt.is_empty() {
                    continue;
                }
                let coords = solve(&frame, &y)?.ok_or_else(|| {
                    Error::InvalidModule(vec![format!(
                        "infinity part is not closed under the action in degree {d}"
                    )])
                })?;
                for r in 0..tgt.len() {
                    restricted.set(r, c, coords.get(r));
                }
            }
            set(&mut sub, d, restricted)?;
        }
    }
    Ok(match m.convention {
        Convention::Homological => sub,
        Convention::Cohomological => sub.dual(),
    })
}

/// Iterates `I_{l+1}(d) = v(I_l(d + 4))` on the homological form of `m`.
fn saturate(m: &FiniteRModule) -> Result<(FiniteRModule, Vec<Subspace>)> {
    let violations = check_module_axioms(m);
    if !violations.is_empty() {
        return Err(Error::InvalidModule(
            violations.iter().map(|v| v.to_string()).collect(),
        ));
    }
    if let Some(origin) = m.tail_origin {
        if m.dims.len() < 4 {
            return Err(Error::InvalidInput(
                "a module with a tail needs a window of at least four degrees".into(),
            ));
        }
        for d in m.hi() - 3..=m.hi() {
            if m.dim(d) != shifted_r_dim(d, origin) {
                return Err(Error::InvalidInput(format!(
                    "degree {d} at the top of the window does not match the tail from {origin}"
                )));
            }
        }
    }
    let hom = match m.convention {
        Convention::Homological => m.clone(),
        Convention::Cohomological => m.dual(),
    };
    let (lo, hi) = (hom.lo, hom.hi());
    let full: Vec<Subspace> = hom.degrees().map(|d| Subspace::full(hom.dim(d))).collect();
    let cap = hom.dims.len() / 4 + 2;
    let mut current = full.clone();
    for _ in 0..cap {
        let mut next = Vec::with_capacity(current.len());
        for d in lo..=hi {
            let src = d + 4;
            let sub = if src <= hi {
                current[(src - lo) as usize].image(&hom.v(src))?
            } else if hom.tail_origin.is_some() {
                full[(d - lo) as usize].clone()
            } else {
                Subspace::zero(hom.dim(d))
            };
            next.push(sub);
        }
        if next == current {
            return Ok((hom, current));
        }
        current = next;
    }
    Err(Error::NotStabilized(cap))
}

/// Minimal degree in each residue class `origin + r (mod 4)`, provided the
/// infinity part looks like an ideal of shifted `R`.
fn read_triple(dims: &BTreeMap<i64, usize>, hi: i64, origin: i64) -> Option<IdealTriple> {
    if dims.values().any(|&n| n > 1) {
        return None;
    }
    let mut minima = [0i64; 3];
    for (r, slot) in minima.iter_mut().enumerate() {
        let r = r as i64;
        let in_class = |d: &i64| (d - origin - r).rem_euclid(4) == 0;
        let first = dims
            .iter()
            .find(|(d, n)| in_class(d) && **n == 1)
            .map(|(d, _)| *d)
            .unwrap_or_else(|| {
                // Nothing in the window: the class starts with the tail.
                let mut d = hi + 1;
                while !in_class(&d) {
                    d += 1;
                }
                d
            });
        // v-periodic: once present, present in every later degree of the class.
        if dims
            .iter()
            .any(|(d, n)| in_class(d) && *d > first && *n == 0)
        {
            return None;
        }
        *slot = (first - origin - r).div_euclid(4);
        if (first - origin - r).rem_euclid(4) != 0 {
            return None;
        }
    }
    if dims
        .iter()
        .any(|(d, n)| (d - origin).rem_euclid(4) == 3 && *n != 0)
    {
        return None;
    }
    IdealTriple::new(minima[0], minima[1], minima[2]).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(qpow: u8, vpow: u32) -> RMonomial {
        RMonomial { qpow, vpow }
    }

    #[test]
    fn monomial_degrees() {
        assert_eq!(mono(1, 2).degree(), 9);
        assert_eq!(RMonomial::in_degree(9), Some(mono(1, 2)));
        assert_eq!(RMonomial::in_degree(7), None);
        assert_eq!(RMonomial::in_degree(-1), None);
        assert_eq!(mono(2, 0).times_q(), None);
        assert!(RMonomial::new(3, 0).is_err());
    }

    #[test]
    fn classify_unit_ideal() {
        let all =
            GradedIdeal::from_members(3, (0..3u8).flat_map(|a| (0..=3).map(move |b| mono(a, b))))
                .unwrap();
        assert_eq!(classify_ideal(&all).unwrap(), IdealTriple::UNIT);
    }

    #[test]
    fn classify_positive_degree_ideal() {
        let positive = GradedIdeal::from_members(
            3,
            (0..3u8)
                .flat_map(|a| (0..=3).map(move |b| mono(a, b)))
                .filter(|m| m.degree() >= 1),
        )
        .unwrap();
        assert_eq!(
            classify_ideal(&positive).unwrap(),
            IdealTriple::new(1, 0, 0).unwrap()
        );
    }

    #[test]
    fn classify_enumerated_ideal() {
        // {v^b: b>=2} ∪ {qv^b: b>=1} ∪ {q^2v^b: b>=1}, enumerated to vpow 6
        let members = (2..=6)
            .map(|b| mono(0, b))
            .chain((1..=6).map(|b| mono(1, b)))
            .chain((1..=6).map(|b| mono(2, b)));
        let j = GradedIdeal::from_members(6, members).unwrap();
        assert_eq!(
            classify_ideal(&j).unwrap(),
            IdealTriple::new(2, 1, 1).unwrap()
        );
    }

    #[test]
    fn classify_rejects_non_ideals() {
        // missing the q^2 row entirely
        let j =
            GradedIdeal::from_members(2, [mono(0, 0), mono(0, 1), mono(1, 0), mono(1, 1)]).unwrap();
        assert!(matches!(classify_ideal(&j), Err(Error::InvalidIdeal(_))));
        // v^1 present without q v^1
        let j = GradedIdeal::from_members(
            3,
            [
                mono(0, 1),
                mono(0, 2),
                mono(0, 3),
                mono(1, 2),
                mono(1, 3),
                mono(2, 0),
                mono(2, 1),
                mono(2, 2),
                mono(2, 3),
            ],
        )
        .unwrap();
        assert!(matches!(classify_ideal(&j), Err(Error::InvalidIdeal(_))));
        // hole in the v-row
        let j = GradedIdeal::from_members(
            3,
            [
                mono(0, 0),
                mono(0, 2),
                mono(0, 3),
                mono(1, 0),
                mono(1, 1),
                mono(1, 2),
                mono(1, 3),
                mono(2, 0),
                mono(2, 1),
                mono(2, 2),
                mono(2, 3),
            ],
        )
        .unwrap();
        assert!(matches!(classify_ideal(&j), Err(Error::InvalidIdeal(_))));
    }

    #[test]
    fn ideal_from_triple_examples() {
        let unit = ideal_from_triple(IdealTriple::UNIT).unwrap();
        assert_eq!(unit.members_up_to_degree(10).len(), 9);

        let g = ideal_from_triple(IdealTriple::new(1, 0, 0).unwrap()).unwrap();
        let listed: Vec<i64> = g
            .members_up_to_degree(10)
            .iter()
            .map(|m| m.degree())
            .collect();
        assert_eq!(listed, vec![1, 2, 4, 5, 6, 8, 9, 10]);

        // closure of v^2, qv, q^2 up to vpow 4
        let t = ideal_from_triple(IdealTriple::new(2, 1, 0).unwrap()).unwrap();
        let listed: Vec<String> = t
            .members_up_to_degree(18)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            listed,
            vec![
                "q^2", "qv", "q^2v", "v^2", "qv^2", "q^2v^2", "v^3", "qv^3", "q^2v^3", "v^4",
                "qv^4", "q^2v^4"
            ]
        );
    }

    #[test]
    fn invalid_triple_rejected() {
        assert!(matches!(
            IdealTriple::new(0, 1, 0),
            Err(Error::InvalidTriple { .. })
        ));
        assert!(matches!(
            IdealTriple::new(2, 2, -1),
            Err(Error::InvalidTriple { .. })
        ));
    }

    #[test]
    fn abc_examples() {
        let abc = |s, i, j, k| abc_from_ideal(s, IdealTriple::new(i, j, k).unwrap());
        assert_eq!(abc(0, 0, 0, 0), AbcTriple { a: 0, b: 0, c: 0 });
        assert_eq!(abc(0, 1, 0, 0), AbcTriple { a: 4, b: 0, c: 0 });
        assert_eq!(abc(2, 1, 1, 0), AbcTriple { a: 6, b: 6, c: 2 });
        assert!(abc(2, 1, 1, 0).is_consistent_with(2));
    }

    #[test]
    fn free_module_satisfies_axioms() {
        for conv in [Convention::Cohomological, Convention::Homological] {
            let r = FiniteRModule::free(conv, 0, 0, 15);
            assert!(check_module_axioms(&r).is_empty());
            assert_eq!(r.dual(), FiniteRModule::free(conv.flipped(), 0, 0, 15));
        }
    }

    #[test]
    fn q_cubed_is_flagged() {
        let mut m = FiniteRModule::new(Convention::Cohomological, 0, vec![1, 1, 1, 1], None);
        for d in 0..3 {
            m.set_q(d, BitMatrix::identity(1)).unwrap();
        }
        assert_eq!(check_module_axioms(&m), vec![AxiomViolation::QCubed(0)]);
    }

    #[test]
    fn noncommuting_is_flagged() {
        let mut m = FiniteRModule::new(Convention::Cohomological, 0, vec![1, 1, 0, 0, 1, 1], None);
        m.set_q(0, BitMatrix::identity(1)).unwrap();
        m.set_v(0, BitMatrix::identity(1)).unwrap();
        m.set_q(4, BitMatrix::identity(1)).unwrap();
        // v on degree 1 is zero while q·v on degree 0 is not
        assert_eq!(
            check_module_axioms(&m),
            vec![AxiomViolation::NotCommuting(0)]
        );
    }

    #[test]
    fn infinity_of_free_module() {
        let r = FiniteRModule::free(Convention::Cohomological, 0, 0, 11);
        let inf = infinity_part(&r).unwrap();
        assert_eq!(inf.triple, Some(IdealTriple::UNIT));
        assert!(inf.dims.iter().all(|(d, n)| *n == r_dim(*d)));
    }

    #[test]
    fn infinity_kills_torsion() {
        let r = FiniteRModule::free(Convention::Cohomological, 0, 0, 11);
        let mut torsion = FiniteRModule::new(Convention::Cohomological, 5, vec![1], None);
        torsion.set_v(5, BitMatrix::zeros(0, 1)).unwrap();
        let m = r.direct_sum(&torsion).unwrap();
        assert_eq!(m.dim(5), 2);
        let inf = infinity_part(&m).unwrap();
        assert_eq!(inf.dims[&5], 1);
        assert_eq!(inf.triple, Some(IdealTriple::UNIT));
    }

    #[test]
    fn infinity_of_g_tilde_presentation() {
        // Borel cohomology of the unreduced suspension of G: R in degrees >= 1.
        let r = FiniteRModule::free(Convention::Cohomological, 0, 0, 15);
        let mut m = FiniteRModule::new(
            Convention::Cohomological,
            0,
            (0..=15)
                .map(|d| if d == 0 { 0 } else { r_dim(d) })
                .collect(),
            Some(0),
        );
        for d in 1..=15 {
            if m.dim(d) == 1 {
                if m.dim(d + 1) == 1 {
                    m.set_q(d, r.q(d)).unwrap();
                }
                if m.dim(d + 4) == 1 {
                    m.set_v(d, r.v(d)).unwrap();
                }
            }
        }
        assert!(check_module_axioms(&m).is_empty());
        let inf = infinity_part(&m).unwrap();
        assert_eq!(inf.triple, Some(IdealTriple::new(1, 0, 0).unwrap()));
        let abc = abc_from_ideal(0, inf.triple.unwrap());
        assert_eq!((abc.a, abc.b, abc.c), (4, 0, 0));
    }

    #[test]
    fn infinity_submodule_is_saturated() {
        let r = FiniteRModule::free(Convention::Cohomological, 0, 0, 11);
        let torsion = FiniteRModule::new(Convention::Cohomological, 5, vec![1], None);
        let m = r.direct_sum(&torsion).unwrap();
        let sub = infinity_submodule(&m).unwrap();
        assert!(check_module_axioms(&sub).is_empty());
        assert_eq!(sub.dim(5), 1);
        assert_eq!(infinity_part(&sub).unwrap(), infinity_part(&m).unwrap());
    }

    #[test]
    fn infinity_rejects_invalid_modules() {
        let mut m = FiniteRModule::new(Convention::Homological, 0, vec![1, 1, 1, 1], None);
        for d in 1..4 {
            m.set_q(d, BitMatrix::identity(1)).unwrap();
        }
        assert!(matches!(infinity_part(&m), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn tail_window_must_match_pattern() {
        let m = FiniteRModule::new(Convention::Homological, 0, vec![1, 1, 1, 1], Some(0));
        assert!(matches!(infinity_part(&m), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn shape_checks_on_maps() {
        let mut m = FiniteRModule::new(Convention::Cohomological, 0, vec![1, 2], None);
        assert!(m.set_q(0, BitMatrix::zeros(1, 1)).is_err());
        assert!(m.set_q(0, BitMatrix::zeros(2, 1)).is_ok());
        assert!(m.set_q(7, BitMatrix::zeros(0, 0)).is_err());
    }
}
