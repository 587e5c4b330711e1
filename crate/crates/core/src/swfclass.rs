//! Spaces of type SWF, seen through their Borel cohomology.
//!
//! A [`SwfClass`] keeps the level `s`, the image of Borel cohomology in the
//! localized theory (an [`IdealTriple`] relative to `R` shifted to start at
//! `s`), the Borel dimension table and the circle-equivariant minima `d_p`.
//! Classes are built from representation spheres and from unreduced
//! suspensions of free spaces, then moved around by suspension and duality.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::f2::BitVector;
use crate::rational::{rank_over, Characteristic};
use crate::rmodule::{
    abc_from_ideal, classify_ideal, r_dim, AbcTriple, GradedIdeal, IdealTriple, RMonomial,
};

/// `rt` copies of the sign representation plus `quat` copies of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RepDesc {
    pub rt: u32,
    pub quat: u32,
}

impl RepDesc {
    pub fn new(rt: u32, quat: u32) -> Self {
        Self { rt, quat }
    }

    pub fn dim(&self) -> i64 {
        i64::from(self.rt) + 4 * i64::from(self.quat)
    }
}

impl std::ops::Add for RepDesc {
    type Output = RepDesc;

    fn add(self, rhs: RepDesc) -> RepDesc {
        RepDesc::new(self.rt + rhs.rt, self.quat + rhs.quat)
    }
}

/// Dimensions of reduced Borel cohomology: an explicit window, and from
/// `pattern_from` on the localized pattern (1 in degrees `≡ level, level+1,
/// level+2 (mod 4)`, 0 in degrees `≡ level+3`).
///
/// When `torsion_known` is false only the pattern is determined and degrees
/// below it are unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorelDims {
    level: u32,
    window: BTreeMap<i64, usize>,
    pattern_from: i64,
    torsion_known: bool,
}

impl BorelDims {
    /// The localized pattern alone, starting at `from`, zero below.
    pub fn pattern(level: u32, from: i64) -> Self {
        Self {
            level,
            window: BTreeMap::new(),
            pattern_from: from,
            torsion_known: true,
        }
    }

    pub fn pattern_only(level: u32, from: i64) -> Self {
        Self {
            torsion_known: false,
            ..Self::pattern(level, from)
        }
    }

    pub fn with_window(level: u32, window: BTreeMap<i64, usize>, pattern_from: i64) -> Self {
        Self {
            level,
            window,
            pattern_from,
            torsion_known: true,
        }
    }

    pub fn pattern_dim(&self, d: i64) -> usize {
        r_dim((d - i64::from(self.level)).rem_euclid(4))
    }

    pub fn pattern_from(&self) -> i64 {
        self.pattern_from
    }

    pub fn torsion_known(&self) -> bool {
        self.torsion_known
    }

    pub fn window(&self) -> &BTreeMap<i64, usize> {
        &self.window
    }

    /// Overrides a single window entry.
    pub fn set(&mut self, d: i64, n: usize) {
        self.window.insert(d, n);
    }

    /// Dimension in degree `d`, or `None` when it is not determined.
    pub fn dim(&self, d: i64) -> Option<usize> {
        if let Some(n) = self.window.get(&d) {
            Some(*n)
        } else if d >= self.pattern_from {
            Some(self.pattern_dim(d))
        } else if self.torsion_known {
            Some(0)
        } else {
            None
        }
    }

    fn shifted(&self, level: u32, by: i64) -> Self {
        Self {
            level,
            window: self.window.iter().map(|(d, n)| (d + by, *n)).collect(),
            pattern_from: self.pattern_from + by,
            torsion_known: self.torsion_known,
        }
    }
}

/// The homological shadow of a space of type SWF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwfClass {
    pub level: u32,
    pub ideal: IdealTriple,
    pub borel: BorelDims,
    pub s1_min: BTreeMap<Characteristic, i64>,
    pub provenance: Vec<String>,
}

impl SwfClass {
    pub fn abc(&self) -> AbcTriple {
        abc_from_ideal(self.level, self.ideal)
    }

    /// Same level, ideal and `d_p`; Borel tables and provenance ignored.
    pub fn same_invariants(&self, other: &SwfClass) -> bool {
        self.level == other.level && self.ideal == other.ideal && self.s1_min == other.s1_min
    }
}

/// The sphere of `rt` sign representations and `quat` quaternion lines.
pub fn from_rep_sphere(rt: u32, quat: u32) -> SwfClass {
    let v = RepDesc::new(rt, quat);
    SwfClass {
        level: rt,
        ideal: IdealTriple {
            i: quat,
            j: quat,
            k: quat,
        },
        borel: BorelDims::pattern(rt, v.dim()),
        s1_min: Characteristic::ALL.iter().map(|p| (*p, v.dim())).collect(),
        provenance: vec![format!("rep_sphere(rt={rt}, quat={quat})")],
    }
}

/// Classifying-map data of a free G-space: the cohomology of the quotient
/// `Q`, the pullback of each monomial of `R` and the pullbacks of powers of
/// the circle generator `U`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KappaData {
    /// `dim H^d(Q; F2)`.
    pub qdims: BTreeMap<i64, usize>,
    /// Image of each monomial; missing monomials map to zero.
    pub kappa: BTreeMap<RMonomial, BitVector>,
    /// Image of `U^e` in `H^{2e}(Q)` as integer coordinates; missing powers
    /// map to zero.
    pub kappa_s1: BTreeMap<u32, Vec<i64>>,
}

impl KappaData {
    pub fn qdim(&self, d: i64) -> usize {
        self.qdims.get(&d).copied().unwrap_or(0)
    }

    /// Highest degree with nonzero cohomology, `-1` for an empty quotient.
    pub fn top_degree(&self) -> i64 {
        self.qdims
            .iter()
            .filter(|(_, n)| **n > 0)
            .map(|(d, _)| *d)
            .max()
            .unwrap_or(-1)
    }

    fn validate(&self) -> Result<()> {
        if let Some(d) = self.qdims.keys().find(|d| **d < 0) {
            return Err(Error::InvalidInput(format!(
                "qdims has negative degree {d}"
            )));
        }
        for (m, img) in &self.kappa {
            if img.len() != self.qdim(m.degree()) {
                return Err(Error::InvalidInput(format!(
                    "kappa({m}) has length {}, but H^{}(Q) has dimension {}",
                    img.len(),
                    m.degree(),
                    self.qdim(m.degree())
                )));
            }
        }
        for (e, img) in &self.kappa_s1 {
            let d = 2 * i64::from(*e);
            if img.len() != self.qdim(d) {
                return Err(Error::InvalidInput(format!(
                    "kappa_s1[{e}] has length {}, but H^{d}(Q) has dimension {}",
                    img.len(),
                    self.qdim(d)
                )));
            }
        }
        Ok(())
    }

    /// Rank (0 or 1) of `κ*` on the one-dimensional `R_d`.
    pub fn kappa_rank(&self, d: i64) -> usize {
        RMonomial::in_degree(d)
            .and_then(|m| self.kappa.get(&m))
            .map_or(0, |img| usize::from(!img.is_zero()))
    }

    /// `min { e : U^e ↦ 0 }` over a field of characteristic `p`.
    fn first_vanishing_power(&self, p: Characteristic) -> Result<u32> {
        let top = self.top_degree();
        let vanishes = |e: u32| {
            self.kappa_s1
                .get(&e)
                .is_none_or(|img| img.is_empty() || rank_over(std::slice::from_ref(img), p) == 0)
        };
        let last = u32::try_from((top.max(0) / 2) + 1).unwrap_or(u32::MAX);
        let first = (0..=last).find(|e| vanishes(*e)).unwrap_or(last);
        if let Some(e) = self.kappa_s1.keys().find(|e| **e > first && !vanishes(**e)) {
            return Err(Error::Inconsistent(format!(
                "U^{first} pulls back to zero in characteristic {} but U^{e} does not",
                p.as_u32()
            )));
        }
        Ok(first)
    }
}

/// The unreduced suspension of a free G-space with fixed set `S^0`, from
/// the pullback `κ*: R → H*(Q)`.
///
/// The localized image is the kernel of `κ*`; the Borel table comes from the
/// long exact sequence of the pair, `H̃^d = ker κ*_d ⊕ coker κ*_{d-1}`.
pub fn from_unreduced_suspension(k: &KappaData) -> Result<SwfClass> {
    k.validate()?;
    let top = k.top_degree();
    if k.qdim(0) > 0 && k.kappa_rank(0) == 0 {
        return Err(Error::InvalidInput(
            "kappa(1) must be nonzero when Q is nonempty".into(),
        ));
    }
    let horizon = u32::try_from(top.max(0) / 4 + 1).expect("degree fits in u32");
    let kernel = (0..3u8)
        .flat_map(|qpow| (0..=horizon).map(move |vpow| RMonomial { qpow, vpow }))
        .filter(|m| k.kappa_rank(m.degree()) == 0);
    let ideal = GradedIdeal::from_members(horizon, kernel)?;
    let ideal = classify_ideal(&ideal).map_err(|e| match e {
        Error::InvalidIdeal(msg) => {
            Error::Inconsistent(format!("kernel of kappa is not an ideal: {msg}"))
        }
        other => other,
    })?;
    let a = 4 * i64::from(ideal.i);
    let window_hi = (top + 1).max(a + 3);
    let window = (0..=window_hi)
        .map(|d| {
            let kernel = r_dim(d) - k.kappa_rank(d);
            let coker = k.qdim(d - 1).saturating_sub(k.kappa_rank(d - 1));
            (d, kernel + coker)
        })
        .collect();
    let s1_min = Characteristic::ALL
        .iter()
        .map(|p| Ok((*p, 2 * i64::from(k.first_vanishing_power(*p)?))))
        .collect::<Result<_>>()?;
    Ok(SwfClass {
        level: 0,
        ideal,
        borel: BorelDims::with_window(0, window, a),
        s1_min,
        provenance: vec![format!("unreduced_suspension(top={top})")],
    })
}

/// `Σ^V x`: every invariant moves up by `dim V`.
pub fn suspend(x: &SwfClass, v: RepDesc) -> SwfClass {
    let m = v.dim();
    let mut provenance = x.provenance.clone();
    if v != RepDesc::default() {
        provenance.push(format!("suspend(rt={}, quat={})", v.rt, v.quat));
    }
    SwfClass {
        level: x.level + v.rt,
        ideal: IdealTriple {
            i: x.ideal.i + v.quat,
            j: x.ideal.j + v.quat,
            k: x.ideal.k + v.quat,
        },
        borel: x.borel.shifted(x.level + v.rt, m),
        s1_min: x.s1_min.iter().map(|(p, d)| (*p, d + m)).collect(),
        provenance,
    }
}

/// The V-dual: `(a, b, c) ↦ (m - c, m - b, m - a)` and `d_p ↦ m - d_p`
/// with `m = dim V`.
///
/// Only the localized pattern of the dual's Borel table is determined.
pub fn dualize(x: &SwfClass, v: RepDesc) -> Result<SwfClass> {
    if x.level > v.rt {
        return Err(Error::DualityRange(format!(
            "level {} exceeds the {} sign representations of V",
            x.level, v.rt
        )));
    }
    let abc = x.abc();
    if abc.a > v.dim() || x.ideal.i > v.quat {
        return Err(Error::DualityRange(format!(
            "a = {} is too large for V = (rt={}, quat={})",
            abc.a, v.rt, v.quat
        )));
    }
    let q = v.quat;
    let ideal = IdealTriple {
        i: q - x.ideal.k,
        j: q - x.ideal.j,
        k: q - x.ideal.i,
    };
    let level = v.rt - x.level;
    let a = abc_from_ideal(level, ideal).a;
    let mut provenance = x.provenance.clone();
    provenance.push(format!(
        "dualize(rt={}, quat={}): pattern-only",
        v.rt, v.quat
    ));
    Ok(SwfClass {
        level,
        ideal,
        borel: BorelDims::pattern_only(level, a),
        s1_min: x.s1_min.iter().map(|(p, d)| (*p, v.dim() - d)).collect(),
        provenance,
    })
}

/// A 4-periodic graded dimension function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicGraded {
    /// Residue mod 4 of the degree `period[0]` describes.
    pub base_residue: u8,
    pub period: [usize; 4],
}

impl PeriodicGraded {
    pub fn dim(&self, d: i64) -> usize {
        self.period[(d - i64::from(self.base_residue)).rem_euclid(4) as usize]
    }

    /// Same function of the degree, with `period` rotated to start at `d`.
    pub fn normalized(&self) -> Self {
        let mut period = [0; 4];
        for (r, slot) in period.iter_mut().enumerate() {
            *slot = self.dim(r as i64);
        }
        Self {
            base_residue: 0,
            period,
        }
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self {
            base_residue: (i64::from(self.base_residue) + by).rem_euclid(4) as u8,
            period: self.period,
        }
    }
}

/// Tate cohomology: the localized pattern, periodic in both directions.
pub fn tate(x: &SwfClass) -> PeriodicGraded {
    PeriodicGraded {
        base_residue: (x.level % 4) as u8,
        period: [1, 0, 1, 1],
    }
}

/// Co-Borel dimensions `cH̃_d = dim(dual)_{m-d}` from the Borel table of a
/// V-dual with `dim V = m`.
pub fn coborel_from_dual(dual_dims: &BTreeMap<i64, usize>, m: i64) -> BTreeMap<i64, usize> {
    dual_dims.iter().map(|(d, n)| (m - d, *n)).collect()
}

/// One failed inequality or equality in a consistency check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub quantity: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.quantity, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Violated(Vec<Violation>),
}

impl Verdict {
    pub fn from_violations(v: Vec<Violation>) -> Self {
        if v.is_empty() {
            Verdict::Consistent
        } else {
            Verdict::Violated(v)
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent)
    }
}

/// Whether an equivariant map `x → x2` that is an equivalence on fixed sets
/// could exist: it forces `a, b, c` to weakly increase.
pub fn monotonicity_check(x: &SwfClass, x2: &SwfClass) -> Result<Verdict> {
    if x.level != x2.level {
        return Err(Error::LevelMismatch(x.level, x2.level));
    }
    let (l, r) = (x.abc(), x2.abc());
    let violations = [("a", l.a, r.a), ("b", l.b, r.b), ("c", l.c, r.c)]
        .into_iter()
        .filter(|(_, s, t)| s > t)
        .map(|(name, s, t)| Violation {
            quantity: name.to_string(),
            detail: format!("{s} > {t}"),
        })
        .collect();
    Ok(Verdict::from_violations(violations))
}

/// True iff every known Borel dimension in degrees `>= a` follows the
/// localized pattern.
pub fn localization_check(x: &SwfClass) -> bool {
    let a = x.abc().a;
    let window_hi = x.borel.window.keys().next_back().copied().unwrap_or(a);
    (a..=window_hi.max(x.borel.pattern_from))
        .all(|d| x.borel.dim(d).is_none_or(|n| n == x.borel.pattern_dim(d)))
}

/// The minimal surviving degree `d_p` over characteristic `p`.
pub fn dp(x: &SwfClass, p: Characteristic) -> Result<i64> {
    x.s1_min.get(&p).copied().ok_or_else(|| {
        Error::Unavailable(format!("d_{} is not recorded for this class", p.as_u32()))
    })
}

/// Ready-made classifying data for the examples in the documentation and
/// the bundled inputs.
pub mod presets {
    use super::*;

    /// `Q` a point: the unreduced suspension of `G` itself.
    pub fn point() -> KappaData {
        let mut k = KappaData::default();
        k.qdims.insert(0, 1);
        k.kappa.insert(RMonomial::ONE, BitVector::from_bits([1]));
        k.kappa_s1.insert(0, vec![1]);
        k
    }

    /// `Q = CP^{n-1}`, the quotient of `S(H^n)` by `G`.
    pub fn complex_projective(n: u32) -> KappaData {
        let mut k = KappaData::default();
        for e in 0..n {
            k.qdims.insert(2 * i64::from(e), 1);
            k.kappa_s1.insert(e, vec![1]);
        }
        for b in 0..n {
            let m = RMonomial { qpow: 0, vpow: b };
            if 2 * b < n {
                k.kappa.insert(m, BitVector::from_bits([1]));
            }
        }
        k
    }

    /// `Q = RP^2` with `q ↦ w`, `q^2 ↦ w^2` and `v ↦ 0`.
    pub fn real_projective_plane() -> KappaData {
        let mut k = KappaData::default();
        for d in 0..3 {
            k.qdims.insert(d, 1);
            let m = RMonomial::in_degree(d).expect("degrees 0..2 are nonzero in R");
            k.kappa.insert(m, BitVector::from_bits([1]));
        }
        k.kappa_s1.insert(0, vec![1]);
        k.kappa_s1.insert(1, vec![0]);
        k
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    fn abc(x: &SwfClass) -> (i64, i64, i64) {
        let t = x.abc();
        (t.a, t.b, t.c)
    }

    fn ceil_half(n: i64) -> i64 {
        (n + 1) / 2
    }

    #[test]
    fn rep_sphere_examples() {
        let s0 = from_rep_sphere(0, 0);
        assert_eq!((s0.level, abc(&s0)), (0, (0, 0, 0)));
        assert_eq!(dp(&s0, Characteristic::Two).unwrap(), 0);
        let x = from_rep_sphere(1, 0);
        assert_eq!((x.level, abc(&x)), (1, (1, 1, 1)));
        let x = from_rep_sphere(0, 2);
        assert_eq!((x.level, abc(&x)), (0, (8, 8, 8)));
        assert_eq!(dp(&x, Characteristic::Zero).unwrap(), 8);
        assert!(localization_check(&x));
        assert_eq!(x.borel.dim(7), Some(0));
        assert_eq!(x.borel.dim(8), Some(1));
        assert_eq!(x.borel.dim(11), Some(0));
    }

    #[test]
    fn g_tilde_borel_table() {
        let g = from_unreduced_suspension(&point()).unwrap();
        assert_eq!(abc(&g), (4, 0, 0));
        let dims: Vec<usize> = (0..=20).map(|d| g.borel.dim(d).unwrap()).collect();
        let expected: Vec<usize> = (0..=20)
            .map(|d| usize::from(d != 0 && d % 4 != 3))
            .collect();
        assert_eq!(dims, expected);
        assert!(localization_check(&g));
        assert_eq!(dp(&g, Characteristic::Two).unwrap(), 2);
    }

    #[test]
    fn z_tilde_family() {
        for n in 1..=6u32 {
            let z = from_unreduced_suspension(&complex_projective(n)).unwrap();
            let n = i64::from(n);
            assert_eq!(abc(&z), (4 * ceil_half(n), 0, 0), "n = {n}");
            for p in Characteristic::ALL {
                assert_eq!(dp(&z, p).unwrap(), 2 * n);
            }
            assert!(localization_check(&z));
        }
    }

    #[test]
    fn z_prime_family_by_duality() {
        for n in 1..=6u32 {
            let z = from_unreduced_suspension(&complex_projective(n)).unwrap();
            let zp = dualize(&z, RepDesc::new(0, n)).unwrap();
            let n = i64::from(n);
            assert_eq!(abc(&zp), (4 * n, 4 * n, 4 * n - 4 * ceil_half(n)));
            assert_eq!(dp(&zp, Characteristic::Zero).unwrap(), 2 * n);
            assert!(zp.provenance.last().unwrap().contains("pattern-only"));
        }
    }

    #[test]
    fn rp2_example() {
        let x = from_unreduced_suspension(&real_projective_plane()).unwrap();
        assert_eq!(abc(&x), (4, 4, 4));
    }

    #[test]
    fn kappa_of_unit_must_be_nonzero() {
        let mut k = point();
        k.kappa.insert(RMonomial::ONE, BitVector::from_bits([0]));
        assert!(matches!(
            from_unreduced_suspension(&k),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn non_ideal_kernel_is_inconsistent() {
        // q ↦ 0 while q^2 ↦ nonzero: q is in the kernel but q·q is not
        let mut k = real_projective_plane();
        k.kappa
            .insert(RMonomial { qpow: 1, vpow: 0 }, BitVector::from_bits([0]));
        assert!(matches!(
            from_unreduced_suspension(&k),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn circle_data_must_vanish_upward() {
        let mut k = complex_projective(3);
        k.kappa_s1.insert(1, vec![0]);
        assert!(matches!(
            from_unreduced_suspension(&k),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn circle_minimum_depends_on_characteristic() {
        let mut k = point();
        k.kappa_s1.insert(0, vec![2]);
        let x = from_unreduced_suspension(&k).unwrap();
        assert_eq!(dp(&x, Characteristic::Zero).unwrap(), 2);
        assert_eq!(dp(&x, Characteristic::Two).unwrap(), 0);
    }

    #[test]
    fn kappa_lengths_checked() {
        let mut k = point();
        k.kappa.insert(RMonomial::ONE, BitVector::from_bits([1, 0]));
        assert!(matches!(
            from_unreduced_suspension(&k),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn suspension_examples() {
        let s0 = from_rep_sphere(0, 0);
        assert!(suspend(&s0, RepDesc::new(1, 0)).same_invariants(&from_rep_sphere(1, 0)));
        let g = from_unreduced_suspension(&point()).unwrap();
        let sg = suspend(&g, RepDesc::new(0, 1));
        assert_eq!((sg.level, abc(&sg)), (0, (8, 4, 4)));
        assert_eq!(sg.borel.dim(4), Some(0));
        assert_eq!(sg.borel.dim(5), Some(1));
        assert_eq!(suspend(&g, RepDesc::default()), g);
    }

    #[test]
    fn duality_examples() {
        let s0 = from_rep_sphere(0, 0);
        assert!(dualize(&s0, RepDesc::default())
            .unwrap()
            .same_invariants(&s0));
        let x = from_rep_sphere(2, 0);
        assert!(matches!(
            dualize(&x, RepDesc::new(1, 3)),
            Err(Error::DualityRange(_))
        ));
        let g = from_unreduced_suspension(&point()).unwrap();
        assert!(matches!(
            dualize(&g, RepDesc::new(3, 0)),
            Err(Error::DualityRange(_))
        ));
        let d = dualize(&g, RepDesc::new(1, 1)).unwrap();
        assert_eq!((d.level, abc(&d)), (1, (5, 5, 1)));
        assert_eq!(d.borel.dim(0), None);
        assert_eq!(d.borel.dim(6), Some(1));
        assert_eq!(d.borel.dim(8), Some(0));
        let back = dualize(&d, RepDesc::new(1, 1)).unwrap();
        assert!(back.same_invariants(&g));
    }

    #[test]
    fn tate_examples() {
        let t = tate(&from_rep_sphere(0, 0));
        for d in -20..20 {
            assert_eq!(t.dim(d), usize::from(d.rem_euclid(4) != 1));
        }
        let t1 = tate(&from_rep_sphere(1, 0));
        for d in -20..20 {
            assert_eq!(t1.dim(d), t.dim(d - 1));
        }
        let g = from_unreduced_suspension(&point()).unwrap();
        assert_eq!(tate(&suspend(&g, RepDesc::new(0, 1))), tate(&g));
        assert_eq!(t.shifted(4).normalized(), t.normalized());
    }

    #[test]
    fn coborel_examples() {
        assert!(coborel_from_dual(&BTreeMap::new(), 3).is_empty());
        let s0: BTreeMap<i64, usize> = (0..8).map(|d| (d, r_dim(d))).collect();
        let c = coborel_from_dual(&s0, 0);
        assert_eq!(c[&0], 1);
        assert_eq!(c[&-1], 1);
        assert_eq!(c[&-3], 0);
        assert_eq!(c[&-4], 1);
        assert!(c.keys().all(|d| *d <= 0));
    }

    #[test]
    fn monotonicity_examples() {
        let s0 = from_rep_sphere(0, 0);
        let g = from_unreduced_suspension(&point()).unwrap();
        assert!(monotonicity_check(&g, &g).unwrap().is_consistent());
        assert!(monotonicity_check(&s0, &g).unwrap().is_consistent());
        match monotonicity_check(&g, &s0).unwrap() {
            Verdict::Violated(v) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].quantity, "a");
            }
            Verdict::Consistent => panic!("expected a violation"),
        }
        assert!(matches!(
            monotonicity_check(&s0, &from_rep_sphere(1, 0)),
            Err(Error::LevelMismatch(0, 1))
        ));
    }

    #[test]
    fn corrupted_table_fails_localization() {
        let mut g = from_unreduced_suspension(&point()).unwrap();
        let a = g.abc().a;
        g.borel.set(a + 3, 1);
        assert!(!localization_check(&g));
    }

    #[test]
    fn dp_requires_data() {
        let mut x = from_rep_sphere(0, 1);
        x.s1_min.remove(&Characteristic::Zero);
        assert!(matches!(
            dp(&x, Characteristic::Zero),
            Err(Error::Unavailable(_))
        ));
    }

    #[test]
    fn euler_characteristic_of_pair_sequence() {
        for n in 1..=6 {
            let k = complex_projective(n);
            let x = from_unreduced_suspension(&k).unwrap();
            let sign = |d: i64| if d % 2 == 0 { 1 } else { -1 };
            let lhs: i64 = x
                .borel
                .window()
                .iter()
                .map(|(d, n)| sign(*d) * *n as i64)
                .sum();
            let rhs: i64 = x
                .borel
                .window()
                .keys()
                .map(|d| sign(*d) * (r_dim(*d) as i64 - k.qdim(*d) as i64))
                .sum();
            assert_eq!(lhs, rhs);
        }
    }
}
