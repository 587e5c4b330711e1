//! Seeded random instances, brute-force oracles and the property suites run
//! by `swfcalc verify`.
//!
//! The oracles never call into [`crate::f2`] elimination or the saturation
//! loop of [`crate::rmodule`]: they enumerate vectors and image sets
//! directly, which is only feasible at the small sizes generated here.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::f2::{self, BitMatrix, BitVector, ChainComplexF2};
use crate::floer::{
    assemble_moy, brieskorn, invariants, orientation_reverse, report_consistency, BrieskornFamily,
    Eighths, FloerContext, MoyData, Rank,
};
use crate::rational::Characteristic;
use crate::rmodule::{
    abc_from_ideal, check_module_axioms, classify_ideal, ideal_from_triple, infinity_part,
    infinity_submodule, r_dim, Convention, FiniteRModule, IdealTriple, RMonomial,
};
use crate::swfclass::{
    dp, dualize, from_rep_sphere, from_unreduced_suspension, localization_check, suspend, tate,
    KappaData, RepDesc, SwfClass,
};

/// Independent reference computations.
pub mod oracle {
    use super::*;

    pub type Dense = Vec<Vec<u8>>;

    pub fn dense(m: &BitMatrix) -> Dense {
        (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| u8::from(m.get(r, c))).collect())
            .collect()
    }

    pub fn apply(m: &Dense, x: &[u8]) -> Vec<u8> {
        m.iter()
            .map(|row| row.iter().zip(x).fold(0, |acc, (a, b)| acc ^ (a & b)))
            .collect()
    }

    /// Every vector of `F2^n`.
    pub fn all_vectors(n: usize) -> impl Iterator<Item = Vec<u8>> {
        (0u64..1 << n).map(move |mask| (0..n).map(|i| ((mask >> i) & 1) as u8).collect())
    }

    /// The image of `m` as an explicit set.
    pub fn image_set(m: &Dense, cols: usize) -> HashSet<Vec<u8>> {
        all_vectors(cols).map(|x| apply(m, &x)).collect()
    }

    fn log2(n: usize) -> usize {
        n.trailing_zeros() as usize
    }

    /// Rank as `log2 |image|`.
    pub fn rank(m: &Dense, cols: usize) -> usize {
        log2(image_set(m, cols).len())
    }

    /// Homology by counting cycles and boundaries.
    pub fn homology(c: &ChainComplexF2) -> BTreeMap<i64, usize> {
        c.dims()
            .iter()
            .map(|(d, n)| {
                let out = dense(&c.boundary(*d));
                let cycles = all_vectors(*n)
                    .filter(|x| apply(&out, x).iter().all(|b| *b == 0))
                    .count();
                let incoming = dense(&c.boundary(d + 1));
                let boundaries = image_set(&incoming, c.dim(d + 1)).len();
                (*d, log2(cycles) - log2(boundaries))
            })
            .collect()
    }

    /// `⋂_l im(v^l)` by enumerating the image of every composite `v^l`.
    pub fn infinity_dims(m: &FiniteRModule) -> BTreeMap<i64, usize> {
        // In cohomological convention the v-maps are transposed to the dual,
        // where the intersection of images is the homological statement.
        let (lo, hi) = (m.lo(), m.hi());
        let v_into = |d: i64| -> Dense {
            match m.convention() {
                Convention::Homological => dense(&m.v(d + 4)),
                Convention::Cohomological => {
                    let fwd = dense(&m.v(d));
                    let (rows, cols) = (m.dim(d + 4), m.dim(d));
                    (0..cols)
                        .map(|c| (0..rows).map(|r| fwd[r][c]).collect())
                        .collect()
                }
            }
        };
        let mut out = BTreeMap::new();
        for d in lo..=hi {
            let mut survivors: HashSet<Vec<u8>> = all_vectors(m.dim(d)).collect();
            let mut l = 1;
            loop {
                let src = d + 4 * l;
                if src > hi {
                    if m.tail_origin().is_none() {
                        survivors.retain(|x| x.iter().all(|b| *b == 0));
                    }
                    break;
                }
                let image: HashSet<Vec<u8>> = all_vectors(m.dim(src))
                    .map(|mut x| {
                        for step in (0..l).rev() {
                            x = apply(&v_into(d + 4 * step), &x);
                        }
                        x
                    })
                    .collect();
                survivors.retain(|x| image.contains(x));
                l += 1;
            }
            out.insert(d, log2(survivors.len()));
        }
        out
    }

    /// `(i, j, k)` read from dimensions, if they have the shape of a
    /// shifted ideal of `R`.
    pub fn triple(dims: &BTreeMap<i64, usize>, hi: i64, origin: i64) -> Option<IdealTriple> {
        let mut minima = [0i64; 3];
        for r in 0..4i64 {
            let class: Vec<(i64, usize)> = dims
                .iter()
                .filter(|(d, _)| (**d - origin).rem_euclid(4) == r)
                .map(|(d, n)| (*d, *n))
                .collect();
            if class.iter().any(|(_, n)| *n > 1) {
                return None;
            }
            if r == 3 {
                if class.iter().any(|(_, n)| *n != 0) {
                    return None;
                }
                continue;
            }
            let first = match class.iter().position(|(_, n)| *n == 1) {
                Some(p) => {
                    if class[p..].iter().any(|(_, n)| *n == 0) {
                        return None;
                    }
                    class[p].0
                }
                None => (hi + 1..)
                    .find(|d| (d - origin).rem_euclid(4) == r)
                    .unwrap(),
            };
            minima[r as usize] = (first - origin - r) / 4;
        }
        IdealTriple::new(minima[0], minima[1], minima[2]).ok()
    }
}

/// Random instances.
pub mod generate {
    use super::*;

    pub fn triple(rng: &mut ChaCha8Rng, max: u32) -> IdealTriple {
        let i = rng.gen_range(0..=max);
        let j = rng.gen_range(0..=i);
        let k = rng.gen_range(0..=j);
        IdealTriple { i, j, k }
    }

    /// A random invertible matrix and its inverse, as a product of row
    /// operations.
    pub fn invertible(rng: &mut ChaCha8Rng, n: usize) -> (BitMatrix, BitMatrix) {
        let mut p = BitMatrix::identity(n);
        let mut inv = BitMatrix::identity(n);
        if n < 2 {
            return (p, inv);
        }
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            for c in 0..n {
                let v = p.get(i, c) ^ p.get(j, c);
                p.set(i, c, v);
            }
            for r in 0..n {
                let v = inv.get(r, j) ^ inv.get(r, i);
                inv.set(r, j, v);
            }
        }
        (p, inv)
    }

    /// Conjugates every map by a random change of basis in each degree.
    pub fn change_basis(rng: &mut ChaCha8Rng, m: &FiniteRModule) -> FiniteRModule {
        let frames: BTreeMap<i64, (BitMatrix, BitMatrix)> = m
            .degrees()
            .map(|d| (d, invertible(rng, m.dim(d))))
            .collect();
        let fwd = |d: i64| {
            frames
                .get(&d)
                .map_or(BitMatrix::identity(0), |f| f.0.clone())
        };
        let mut out = m.clone();
        for d in m.degrees() {
            let inv = &frames[&d].1;
            let q = fwd(m.q_target(d))
                .mul(&m.q(d))
                .and_then(|x| x.mul(inv))
                .expect("shapes agree");
            let v = fwd(m.v_target(d))
                .mul(&m.v(d))
                .and_then(|x| x.mul(inv))
                .expect("shapes agree");
            out.set_q(d, q).expect("shape preserved");
            out.set_v(d, v).expect("shape preserved");
        }
        out
    }

    /// The span of the monomials selected by `member`, shifted to start at
    /// `origin`, on the window `[lo, hi]` (cohomological convention). The
    /// selection must be closed upward (a submodule) or downward (a quotient).
    pub fn monomial_module(
        origin: i64,
        lo: i64,
        hi: i64,
        member: impl Fn(RMonomial) -> bool,
        tail: bool,
    ) -> FiniteRModule {
        let present = |d: i64| {
            RMonomial::in_degree(d - origin).filter(|m| (lo..=hi).contains(&d) && member(*m))
        };
        let dims = (lo..=hi)
            .map(|d| usize::from(present(d).is_some()))
            .collect();
        let mut m = FiniteRModule::new(Convention::Cohomological, lo, dims, tail.then_some(origin));
        for d in lo..=hi {
            let Some(mono) = present(d) else { continue };
            if mono.times_q().is_some() && present(d + 1).is_some() {
                m.set_q(d, BitMatrix::identity(1)).expect("1x1");
            }
            if present(d + 4).is_some() {
                m.set_v(d, BitMatrix::identity(1)).expect("1x1");
            }
        }
        m
    }

    /// A random valid module of total dimension at most 20, with the triple
    /// its infinity part must have (when it has a tail).
    pub fn module(rng: &mut ChaCha8Rng) -> (FiniteRModule, Option<IdealTriple>) {
        let origin = rng.gen_range(-4..=4);
        let with_tail = rng.gen_bool(0.7);
        let lo = origin - rng.gen_range(0..=3);
        let (mut m, expected, free_hi) = if with_tail {
            let t = triple(rng, 2);
            let hi = origin + 4 * i64::from(t.i) + 3 + rng.gen_range(0..=4);
            let in_ideal = move |x: RMonomial| x.vpow >= t.row(x.qpow);
            (
                monomial_module(origin, lo, hi, in_ideal, true),
                Some(t),
                hi - 4,
            )
        } else {
            let hi = lo + rng.gen_range(3..=14);
            (
                FiniteRModule::new(
                    Convention::Cohomological,
                    lo,
                    vec![0; (hi - lo + 1) as usize],
                    None,
                ),
                None,
                hi,
            )
        };
        for _ in 0..rng.gen_range(0..=4) {
            if free_hi < lo {
                break;
            }
            let at = rng.gen_range(lo..=free_hi);
            let qcut = rng.gen_range(1..=3u8);
            let vcut = rng.gen_range(1..=3u32);
            let piece = monomial_module(
                at,
                lo,
                free_hi,
                move |x| x.qpow < qcut && x.vpow < vcut,
                false,
            );
            if m.total_dim() + piece.total_dim() > 20 {
                break;
            }
            m = m.direct_sum(&piece).expect("at most one tail");
        }
        let m = change_basis(rng, &m);
        let m = if rng.gen_bool(0.5) { m.dual() } else { m };
        (m, expected)
    }

    /// A chain complex built from isolated cells and cancelling pairs, then
    /// scrambled; returns it with its homology.
    pub fn complex(rng: &mut ChaCha8Rng) -> (ChainComplexF2, BTreeMap<i64, usize>) {
        let mut dims: BTreeMap<i64, usize> = (0..=3).map(|d| (d, 0)).collect();
        let mut homology = dims.clone();
        let mut pairs: Vec<(i64, usize, usize)> = Vec::new();
        let budget = rng.gen_range(0..=12);
        let mut total = 0;
        while total < budget {
            let d = rng.gen_range(0..=3i64);
            if rng.gen_bool(0.5) || d == 0 || total + 2 > budget {
                *dims.get_mut(&d).unwrap() += 1;
                *homology.get_mut(&d).unwrap() += 1;
                total += 1;
            } else {
                let top = dims[&d];
                let bottom = dims[&(d - 1)];
                pairs.push((d, top, bottom));
                *dims.get_mut(&d).unwrap() += 1;
                *dims.get_mut(&(d - 1)).unwrap() += 1;
                total += 2;
            }
        }
        let mut c = ChainComplexF2::new(dims.clone());
        let frames: BTreeMap<i64, (BitMatrix, BitMatrix)> = dims
            .iter()
            .map(|(d, n)| (*d, invertible(rng, *n)))
            .collect();
        for d in 1..=3 {
            let mut b = BitMatrix::zeros(dims[&(d - 1)], dims[&d]);
            for (deg, top, bottom) in &pairs {
                if *deg == d {
                    b.set(*bottom, *top, true);
                }
            }
            let b = frames[&(d - 1)]
                .0
                .mul(&b)
                .and_then(|x| x.mul(&frames[&d].1))
                .expect("shapes agree");
            c.set_boundary(d, b).expect("shape agrees");
        }
        homology.retain(|_, n| *n > 0);
        (c, homology)
    }

    pub fn matrix(rng: &mut ChaCha8Rng, max: usize) -> BitMatrix {
        let (r, c) = (rng.gen_range(0..=max), rng.gen_range(0..=max));
        let mut m = BitMatrix::zeros(r, c);
        let density = rng.gen_range(0.1..0.9);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, rng.gen_bool(density));
            }
        }
        m
    }

    /// Classifying data whose kernel is the ideal of the returned triple and
    /// whose circle pullbacks vanish from the returned power on.
    pub fn kappa(rng: &mut ChaCha8Rng) -> (KappaData, IdealTriple, u32) {
        let t = triple(rng, 3);
        let e0 = if t.i == 0 { 0 } else { rng.gen_range(1..=4u32) };
        let outside = |m: RMonomial| m.vpow < t.row(m.qpow);
        let max_outside = (0..3u8)
            .filter(|q| t.row(*q) > 0)
            .map(|q| i64::from(q) + 4 * (i64::from(t.row(q)) - 1))
            .max()
            .unwrap_or(-1);
        let top = max_outside.max(2 * i64::from(e0) - 2) + rng.gen_range(0..=2);
        let mut k = KappaData::default();
        for d in 0..=top {
            let needed = RMonomial::in_degree(d).is_some_and(outside)
                || (d % 2 == 0 && d / 2 < i64::from(e0));
            let n = if needed {
                rng.gen_range(1..=2)
            } else {
                rng.gen_range(0..=2)
            };
            k.qdims.insert(d, if d == 0 && t.i == 0 { 0 } else { n });
        }
        for d in 0..=top {
            let Some(m) = RMonomial::in_degree(d) else {
                continue;
            };
            let n = k.qdim(d);
            if outside(m) {
                let mut v = BitVector::zeros(n);
                while v.is_zero() {
                    v = BitVector::from_bits((0..n).map(|_| rng.gen_range(0..=1u8)));
                }
                k.kappa.insert(m, v);
            } else if rng.gen_bool(0.5) {
                k.kappa.insert(m, BitVector::zeros(n));
            }
        }
        for e in 0..=(top / 2) as u32 {
            let n = k.qdim(2 * i64::from(e));
            if e < e0 {
                let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
                v[0] = 2 * rng.gen_range(-1..=1) + 1;
                k.kappa_s1.insert(e, v);
            } else if rng.gen_bool(0.5) {
                k.kappa_s1.insert(e, vec![0; n]);
            }
        }
        (k, t, e0)
    }

    pub fn rep(rng: &mut ChaCha8Rng, max: u32) -> RepDesc {
        RepDesc::new(rng.gen_range(0..=max), rng.gen_range(0..=max))
    }

    /// A rep sphere or unreduced suspension, suspended a random amount.
    pub fn class(rng: &mut ChaCha8Rng) -> SwfClass {
        let base = if rng.gen_bool(0.3) {
            from_rep_sphere(rng.gen_range(0..=3), rng.gen_range(0..=3))
        } else {
            from_unreduced_suspension(&kappa(rng).0).expect("generated data is consistent")
        };
        suspend(&base, rep(rng, 2))
    }

    pub fn moy(rng: &mut ChaCha8Rng) -> MoyData {
        let r0 = rng.gen_range(-4..=4);
        let irreducibles = (0..rng.gen_range(0..=3))
            .map(|_| (r0 + rng.gen_range(-3..=6), rng.gen_range(0..=3)))
            .collect();
        MoyData {
            reducible_degree: r0,
            irreducibles,
            g_rank: Rank::Explicit(rng.gen_range(0..=3)),
            s1_rank: Rank::Explicit(rng.gen_range(0..=3)),
        }
    }
}

/// Outcome of one property suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Suite {
    report: SuiteReport,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self {
            report: SuiteReport {
                name,
                cases: 0,
                failures: Vec::new(),
            },
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.report.cases += 1;
        if !ok && self.report.failures.len() < 10 {
            self.report.failures.push(what());
        }
    }
}

fn rng_for(seed: u64, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ suite.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn linear_algebra(iters: usize, seed: u64) -> SuiteReport {
    let mut s = Suite::new("f2 rank, solve and homology vs oracle");
    let mut rng = rng_for(seed, 1);
    for _ in 0..iters {
        let m = generate::matrix(&mut rng, 8);
        let r = f2::rank(&m);
        s.check(r <= m.rows().min(m.cols()), || {
            format!("rank {r} exceeds shape {:?}", m.shape())
        });
        s.check(r == f2::rank(&m.transpose()), || {
            format!("rank differs from transpose for {m:?}")
        });
        let o = oracle::rank(&oracle::dense(&m), m.cols());
        s.check(r == o, || format!("rank {r} but oracle {o} for {m:?}"));
        let x = BitVector::from_bits((0..m.cols()).map(|_| rng.gen_range(0..=1u8)));
        let y = m.mul_vec(&x).expect("length matches");
        let solved = f2::solve(&m, &y).ok().flatten();
        s.check(
            solved.is_some_and(|z| m.mul_vec(&z).ok() == Some(y.clone())),
            || format!("solve failed on an attainable target for {m:?}"),
        );

        let (c, expected) = generate::complex(&mut rng);
        match f2::homology_dims(&c) {
            Ok(h) => {
                let o = oracle::homology(&c);
                s.check(h == o, || format!("homology {h:?} but oracle {o:?}"));
                let nonzero: BTreeMap<i64, usize> = h
                    .iter()
                    .filter(|(_, n)| **n > 0)
                    .map(|(d, n)| (*d, *n))
                    .collect();
                s.check(nonzero == expected, || {
                    format!("homology {h:?} but built with {expected:?}")
                });
                let euler = |m: &BTreeMap<i64, usize>| {
                    m.iter()
                        .map(|(d, n)| if d % 2 == 0 { *n as i64 } else { -(*n as i64) })
                        .sum::<i64>()
                };
                s.check(euler(&h) == euler(c.dims()), || {
                    "Euler characteristic changed".into()
                });
            }
            Err(e) => s.check(false, || format!("generated complex rejected: {e}")),
        }
    }
    s.report
}

pub fn ideal_roundtrip(iters: usize, seed: u64) -> SuiteReport {
    let mut s = Suite::new("ideal classification roundtrip");
    let mut rng = rng_for(seed, 2);
    for _ in 0..iters {
        let t = generate::triple(&mut rng, 8);
        let back = ideal_from_triple(t).and_then(|j| classify_ideal(&j));
        s.check(back == Ok(t), || format!("{t} came back as {back:?}"));
        let level = rng.gen_range(0..=7);
        let abc = abc_from_ideal(level, t);
        s.check(abc.is_consistent_with(level.into()), || {
            format!("{abc:?} at level {level}")
        });
    }
    s.report
}

pub fn infinity_vs_oracle(iters: usize, seed: u64) -> SuiteReport {
    let mut s = Suite::new("infinity part vs brute-force oracle");
    let mut rng = rng_for(seed, 3);
    for _ in 0..iters {
        let (m, expected) = generate::module(&mut rng);
        let axioms = check_module_axioms(&m);
        s.check(axioms.is_empty(), || {
            format!("generated module fails axioms: {axioms:?}")
        });
        let inf = match infinity_part(&m) {
            Ok(inf) => inf,
            Err(e) => {
                s.check(false, || format!("infinity_part failed on {m:?}: {e}"));
                continue;
            }
        };
        let o = oracle::infinity_dims(&m);
        s.check(inf.dims == o, || {
            format!("dims {:?} but oracle {o:?} on {m:?}", inf.dims)
        });
        if let Some(origin) = m.tail_origin() {
            let ot = oracle::triple(&o, m.hi(), origin);
            s.check(inf.triple == ot, || {
                format!("triple {:?} but oracle {ot:?}", inf.triple)
            });
            s.check(inf.triple == expected, || {
                format!("triple {:?} but built with {expected:?}", inf.triple)
            });
        }
        match infinity_submodule(&m).and_then(|sub| infinity_part(&sub)) {
            Ok(again) => s.check(again.dims == inf.dims, || {
                "infinity part is not idempotent".into()
            }),
            Err(e) => s.check(false, || format!("saturating twice failed: {e}")),
        }
    }
    s.report
}

fn class_is_consistent(x: &SwfClass) -> bool {
    x.abc().is_consistent_with(x.level.into())
}

pub fn class_laws(iters: usize, seed: u64) -> SuiteReport {
    let mut s = Suite::new("suspension, duality and periodicity laws");
    let mut rng = rng_for(seed, 4);
    for _ in 0..iters {
        let (k, t, e0) = generate::kappa(&mut rng);
        match from_unreduced_suspension(&k) {
            Ok(z) => {
                s.check(z.ideal == t, || {
                    format!("kernel triple {} but built with {t}", z.ideal)
                });
                for p in Characteristic::ALL {
                    let got = dp(&z, p).ok();
                    s.check(got == Some(2 * i64::from(e0)), || {
                        format!("d_{} = {got:?}, expected {}", p.as_u32(), 2 * e0)
                    });
                }
                let above_q = k.top_degree() + 2;
                let stable =
                    (above_q..above_q + 12).all(|d| z.borel.dim(d) == Some(z.borel.pattern_dim(d)));
                s.check(stable, || {
                    "Borel table is not periodic above the quotient".into()
                });
                if above_q <= z.abc().a {
                    s.check(localization_check(&z), || {
                        "unreduced suspension fails localization".into()
                    });
                }
                let sign = |d: i64| if d % 2 == 0 { 1 } else { -1 };
                let lhs: i64 = z
                    .borel
                    .window()
                    .iter()
                    .map(|(d, n)| sign(*d) * *n as i64)
                    .sum();
                let rhs: i64 = z
                    .borel
                    .window()
                    .keys()
                    .map(|d| sign(*d) * (r_dim(*d) as i64 - k.qdim(*d) as i64))
                    .sum();
                s.check(lhs == rhs, || {
                    format!("Euler characteristic {lhs} vs {rhs}")
                });
            }
            Err(e) => s.check(false, || format!("generated kappa data rejected: {e}")),
        }

        let x = generate::class(&mut rng);
        s.check(class_is_consistent(&x), || {
            format!("{:?} violates the abc constraints", x.abc())
        });
        let (v1, v2) = (generate::rep(&mut rng, 3), generate::rep(&mut rng, 3));
        let stepwise = suspend(&suspend(&x, v1), v2);
        let at_once = suspend(&x, v1 + v2);
        s.check(
            stepwise.same_invariants(&at_once) && stepwise.borel == at_once.borel,
            || format!("suspension by {v1:?} then {v2:?} is not additive"),
        );
        s.check(suspend(&x, RepDesc::default()) == x, || {
            "suspension by zero changed the class".into()
        });

        let v = RepDesc::new(
            x.level + rng.gen_range(0..=2),
            x.ideal.i + rng.gen_range(0..=2),
        );
        match dualize(&x, v).and_then(|d| Ok((dualize(&d, v)?, d))) {
            Ok((back, d)) => {
                s.check(class_is_consistent(&d), || {
                    format!("dual {:?} violates the abc constraints", d.abc())
                });
                s.check(back.same_invariants(&x), || {
                    format!("double dual by {v:?} differs")
                });
            }
            Err(e) => s.check(false, || format!("dualizing by {v:?} failed: {e}")),
        }

        let t0 = tate(&x);
        s.check(tate(&suspend(&x, RepDesc::new(0, 1))) == t0, || {
            "Tate is not 4-periodic".into()
        });
        let t1 = tate(&suspend(&x, RepDesc::new(1, 0)));
        s.check((0..8).all(|d| t1.dim(d) == t0.dim(d - 1)), || {
            "Tate does not shift by one".into()
        });
    }
    s.report
}

pub fn report_congruences(iters: usize, seed: u64) -> SuiteReport {
    let mut s = Suite::new("report congruences and reversal");
    for fam in BrieskornFamily::ALL {
        for k in 1..=10 {
            let n = fam.n(k) as u64;
            match brieskorn(n) {
                Ok(r) => {
                    let v = report_consistency(&r);
                    s.check(v.is_empty(), || format!("Σ(2,3,{n}): {v:?}"));
                    let back = orientation_reverse(&orientation_reverse(&r));
                    s.check(back.numbers() == r.numbers(), || {
                        format!("Σ(2,3,{n}): reversal is not an involution")
                    });
                    let expected_mu = match fam {
                        BrieskornFamily::MinusFive => Some(Eighths(8)),
                        BrieskornFamily::MinusOne => Some(Eighths(0)),
                        _ => None,
                    };
                    s.check(expected_mu.is_none_or(|m| m == r.mu), || {
                        format!("Σ(2,3,{n}): mu = {}", r.mu)
                    });
                }
                Err(e) => s.check(false, || format!("Σ(2,3,{n}): {e}")),
            }
        }
    }
    let mut rng = rng_for(seed, 5);
    for _ in 0..iters {
        let x = generate::class(&mut rng);
        let dim = x.level + 4 * rng.gen_range(0..=3);
        let ctx = FloerContext {
            dim_v0tau: dim,
            n: Eighths(rng.gen_range(-40..=40)),
        };
        let v = generate::rep(&mut rng, 2);
        let base = invariants(&x, ctx);
        let moved = invariants(
            &suspend(&x, v),
            FloerContext {
                dim_v0tau: dim + v.rt + 4 * v.quat,
                ..ctx
            },
        );
        match (base, moved) {
            (Ok(b), Ok(m)) => {
                let v = report_consistency(&b);
                s.check(v.is_empty(), || format!("{v:?}"));
                s.check(b.numbers() == m.numbers(), || {
                    "suspension changed the normalized invariants".into()
                });
            }
            (b, m) => s.check(false, || format!("normalization failed: {b:?} / {m:?}")),
        }
    }
    s.report
}

pub fn moy_ledger(iters: usize, seed: u64) -> SuiteReport {
    let mut s = Suite::new("attractor-repeller exactness ledger");
    let mut rng = rng_for(seed, 6);
    for _ in 0..iters {
        let data = generate::moy(&mut rng);
        let a = match assemble_moy(&data) {
            Ok(a) => a,
            Err(crate::Error::InvalidInput(_)) => continue,
            Err(e) => {
                s.check(false, || format!("{data:?}: {e}"));
                continue;
            }
        };
        let (before, after) = a.euler_ledger();
        s.check(before == after, || {
            format!("{data:?}: alternating sum {before} became {after}")
        });
        if a.g_rank == 0 {
            let r0 = data.reducible_degree;
            let sum_ok = a.module.degrees().all(|d| {
                let irr: usize = data
                    .irreducibles
                    .iter()
                    .filter(|(e, _)| *e == d)
                    .map(|(_, n)| *n as usize)
                    .sum();
                a.module.dim(d) == r_dim(d - r0) + irr
            });
            s.check(sum_ok, || {
                format!("{data:?}: zero rank is not a direct sum")
            });
            s.check(a.triple == IdealTriple::UNIT, || {
                format!("{data:?}: zero rank moved the tail")
            });
        }
        let r = a.report();
        let v = report_consistency(&r);
        s.check(v.is_empty(), || format!("{data:?}: {v:?}"));
    }
    s.report
}

/// Every suite, in a fixed order.
pub fn run_all(iters: usize, seed: u64) -> Vec<SuiteReport> {
    vec![
        linear_algebra(iters, seed),
        ideal_roundtrip(iters, seed),
        infinity_vs_oracle(iters, seed),
        class_laws(iters, seed),
        report_congruences(iters, seed),
        moy_ledger(iters, seed),
    ]
}
