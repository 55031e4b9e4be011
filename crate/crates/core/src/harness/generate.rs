//! Seeded random fixtures. Instance `id` of a run draws from its own ChaCha
//! stream, so output does not depend on how instances are scheduled.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::error::{HarnessError, Result};
use crate::category::examples::{arrow, codiscrete, cyclic, terminal};
use crate::category::{coproduct, phi, product, FiniteCategory, FunctorData, LogCfg, LogCfgSpec};
use crate::models::{build_finite_logsch, structure_classify, CharLogPointDatum, CurvePointDatum, CurveStructure};
use crate::monoid::{monoid_pushout, FgAbelianGroup, FgMonoid, GroupElement, IntegralMono, MonoidHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    IntegralMono,
    LogcfgTower,
    CurveDatum,
    PointDatum,
}

impl Kind {
    pub const ALL: [Kind; 4] = [
        Kind::IntegralMono,
        Kind::LogcfgTower,
        Kind::CurveDatum,
        Kind::PointDatum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::IntegralMono => "integral-mono",
            Kind::LogcfgTower => "logcfg-tower",
            Kind::CurveDatum => "curve-datum",
            Kind::PointDatum => "point-datum",
        }
    }

    fn stream(self) -> u64 {
        Kind::ALL.iter().position(|k| *k == self).unwrap() as u64
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Size caps for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenBounds {
    /// Largest ambient dimension of a generated monoid.
    pub rank: usize,
    /// Largest object count of any category in a LogCfg fixture.
    pub objects: usize,
    /// Largest morphism count of any category in a LogCfg fixture.
    pub morphisms: usize,
    /// Rejected samples allowed per instance.
    pub attempts: usize,
}

impl Default for GenBounds {
    fn default() -> Self {
        GenBounds {
            rank: 4,
            objects: 20,
            morphisms: 120,
            attempts: 200,
        }
    }
}

impl GenBounds {
    /// Parses `key=value` pairs separated by commas; keys are `rank`,
    /// `objects`, `morphisms` and `attempts`. Missing keys keep defaults.
    pub fn parse(s: &str) -> Result<Self> {
        let mut b = GenBounds::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| HarnessError::input("--bounds", format!("expected key=value, got {part:?}")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|e| HarnessError::input("--bounds", format!("{k}: {e}")))?;
            if v == 0 {
                return Err(HarnessError::input("--bounds", format!("{k} must be positive")));
            }
            match k.trim() {
                "rank" => b.rank = v,
                "objects" => b.objects = v,
                "morphisms" => b.morphisms = v,
                "attempts" => b.attempts = v,
                other => return Err(HarnessError::input("--bounds", format!("unknown key {other:?}"))),
            }
        }
        Ok(b)
    }
}

/// A generated instance together with the data it was built from.
#[derive(Clone, Debug)]
pub enum Instance {
    IntegralMono(IntegralMono),
    LogCfg(Arc<LogCfg>),
    Curve(CurvePointDatum),
    Point(CharLogPointDatum),
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::IntegralMono(_) => Kind::IntegralMono,
            Instance::LogCfg(_) => Kind::LogcfgTower,
            Instance::Curve(_) => Kind::CurveDatum,
            Instance::Point(_) => Kind::PointDatum,
        }
    }

    /// The JSON fixture for this instance, in the dialect `--input` reads.
    pub fn fixture(&self) -> Value {
        let v = match self {
            Instance::IntegralMono(h) => serde_json::to_value(h),
            Instance::LogCfg(c) => serde_json::to_value(LogCfgSpec::from_cfg(c)),
            Instance::Curve(d) => serde_json::to_value(d),
            Instance::Point(d) => serde_json::to_value(d),
        };
        v.expect("fixtures serialize")
    }
}

pub fn rng_for(kind: Kind, seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((kind.stream() << 48) | id);
    rng
}

/// `count` instances of `kind`, in id order.
pub fn generate_instances(kind: Kind, seed: u64, count: usize, bounds: &GenBounds) -> Result<Vec<Instance>> {
    (0..count as u64)
        .into_par_iter()
        .map(|id| generate_one(kind, seed, id, bounds))
        .collect()
}

pub fn generate_one(kind: Kind, seed: u64, id: u64, bounds: &GenBounds) -> Result<Instance> {
    match kind {
        Kind::IntegralMono => integral_mono_where(seed, id, bounds, |_| true).map(Instance::IntegralMono),
        _ => {
            let mut rng = rng_for(kind, seed, id);
            retry(kind, bounds, || match kind {
                Kind::LogcfgTower => logcfg(&mut rng, bounds).map(|c| Instance::LogCfg(Arc::new(c))),
                Kind::CurveDatum => curve_datum(&mut rng).map(Instance::Curve),
                Kind::PointDatum => point_datum(&mut rng, bounds).map(Instance::Point),
                Kind::IntegralMono => unreachable!(),
            })
        }
    }
}

/// An integral monomorphism satisfying `keep`, drawn from the
/// `integral-mono` stream for `(seed, id)`.
pub fn integral_mono_where(
    seed: u64,
    id: u64,
    bounds: &GenBounds,
    keep: impl Fn(&IntegralMono) -> bool,
) -> Result<IntegralMono> {
    let mut rng = rng_for(Kind::IntegralMono, seed, id);
    retry(Kind::IntegralMono, bounds, || {
        integral_mono(&mut rng, bounds).filter(&keep)
    })
}

fn retry<T>(kind: Kind, bounds: &GenBounds, mut sample: impl FnMut() -> Option<T>) -> Result<T> {
    for _ in 0..bounds.attempts {
        if let Some(x) = sample() {
            return Ok(x);
        }
    }
    Err(HarnessError::BoundsTooTight {
        kind: kind.name().into(),
        attempts: bounds.attempts,
    })
}

/// Nonzero vectors with entries in `0..=max`; the monoid they generate is sharp.
fn random_positive_monoid(rng: &mut ChaCha8Rng, rank: usize, max: i64) -> FgMonoid {
    let available = (max as usize + 1).pow(rank as u32) - 1;
    let count = rng.gen_range(rank.max(1)..=rank + 2).min(available);
    let mut gens: Vec<Vec<i64>> = Vec::new();
    while gens.len() < count {
        let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=max)).collect();
        if v.iter().any(|&x| x != 0) && !gens.contains(&v) {
            gens.push(v);
        }
    }
    FgMonoid::in_lattice(rank, &gens).expect("positive generators")
}

/// A random element of `m`: a sum of one or two generators, possibly doubled.
fn random_element(rng: &mut ChaCha8Rng, m: &FgMonoid) -> GroupElement {
    let a = m.ambient();
    let gens = m.generators();
    let mut x = gens.choose(rng).expect("nonzero monoid").clone();
    if rng.gen_bool(0.4) {
        x = a.add(&x, gens.choose(rng).unwrap());
    }
    if rng.gen_bool(0.2) {
        x = a.add(&x, &x);
    }
    x
}

fn integral_mono(rng: &mut ChaCha8Rng, bounds: &GenBounds) -> Option<IntegralMono> {
    IntegralMono::new(candidate_hom(rng, bounds)?).ok()
}

/// A hom between sharp monoids of the shapes the `integral-mono` generator
/// draws from, before any integrality check. Some are not integral, and
/// some are not injective.
pub fn candidate_hom(rng: &mut ChaCha8Rng, bounds: &GenBounds) -> Option<MonoidHom> {
    let max_rank = bounds.rank.max(1);
    let hom = match rng.gen_range(0..4) {
        // N into a random positive monoid; N is valuative, so these are integral.
        0 => {
            let r = rng.gen_range(1..=max_rank.min(3));
            let p = random_positive_monoid(rng, r, 2);
            let q = random_element(rng, &p);
            MonoidHom::new(FgMonoid::free(1), p, q.coords().iter().map(|&x| vec![x]).collect()).ok()?
        }
        // N^a ⊕ P' with N^a mapped diagonally with small multipliers.
        1 => {
            let a = rng.gen_range(1..=max_rank.min(2));
            let b = rng.gen_range(0..=(max_rank - a).min(2));
            let extra = random_positive_monoid(rng, b, 2);
            let mut gens: Vec<Vec<i64>> = (0..a)
                .map(|i| (0..a + b).map(|j| i64::from(i == j)).collect())
                .collect();
            for g in extra.generators() {
                let mut v = vec![0; a];
                v.extend_from_slice(g.coords());
                gens.push(v);
            }
            let p = FgMonoid::in_lattice(a + b, &gens).ok()?;
            let matrix = (0..a + b)
                .map(|i| {
                    (0..a)
                        .map(|j| if i == j { *[1, 1, 2].choose(rng).unwrap() } else { 0 })
                        .collect()
                })
                .collect();
            MonoidHom::new(FgMonoid::free(a), p, matrix).ok()?
        }
        // Ambient Z ⊕ Z/n: P generated by (1,0), (1,1) and perhaps (2,0).
        2 => {
            let n = rng.gen_range(2..=4);
            let amb = FgAbelianGroup::new(1, vec![n]).ok()?;
            let mut gens = vec![GroupElement::new(vec![1, 0]), GroupElement::new(vec![1, 1])];
            if rng.gen_bool(0.5) {
                gens.push(GroupElement::new(vec![2, 0]));
            }
            let p = FgMonoid::new(amb, gens).ok()?;
            let q = random_element(rng, &p);
            MonoidHom::new(FgMonoid::free(1), p, q.coords().iter().map(|&x| vec![x]).collect()).ok()?
        }
        // Arbitrary nonnegative matrices between positive monoids; rarely integral.
        _ => {
            let r = rng.gen_range(2..=max_rank.clamp(2, 4));
            let s = rng.gen_range(1..r);
            let p = random_positive_monoid(rng, r, 2);
            let images: Vec<GroupElement> = (0..s).map(|_| random_element(rng, &p)).collect();
            MonoidHom::from_generator_images(&FgMonoid::free(s), &p, &images).ok()?
        }
    };
    (hom.codomain().dim() <= bounds.rank).then_some(hom)
}

/// One connected piece of the groupoid `H` in `X = Sch × H`.
enum Piece {
    Point,
    /// `Z/2`, acting on `N^2` by the swap when `swap` is set.
    Involution {
        swap: bool,
    },
    /// Two isomorphic objects.
    Pair,
}

/// `X = Sch × H` over `Sch × L`, where `L` is the category of characteristic
/// monoids drawn from `0`, `N`, `N^2` with hom images of length at most 1, and
/// `M` assigns a monoid to each component of `H` (with swap monodromy on
/// some `N^2` involutions).
fn logcfg(rng: &mut ChaCha8Rng, bounds: &GenBounds) -> Option<LogCfg> {
    let sch = Arc::new(match rng.gen_range(0..3) {
        0 => terminal(),
        1 => arrow(),
        _ => cyclic(2),
    });
    let pool = [
        ("0", FgMonoid::zero()),
        ("N", FgMonoid::free(1)),
        ("N2", FgMonoid::free(2)),
    ];
    let mut chosen: Vec<usize> = (0..pool.len()).filter(|_| rng.gen_bool(0.5)).collect();
    if chosen.is_empty() {
        chosen.push(1);
    }
    let names: Vec<String> = chosen.iter().map(|&i| pool[i].0.to_string()).collect();
    let chars: Vec<FgMonoid> = chosen.iter().map(|&i| pool[i].1.clone()).collect();
    let l = build_finite_logsch(&names, &chars, 1).ok()?;
    let swap_of = |o: usize| {
        l.logsch
            .hom(o, o)
            .iter()
            .copied()
            .find(|&m| l.homs[m].matrix() == [vec![0, 1], vec![1, 0]])
    };

    let mut parts: Vec<FiniteCategory> = Vec::new();
    let (mut obj_char, mut mor_char) = (Vec::new(), Vec::new());
    for _ in 0..rng.gen_range(1..=2) {
        let c = rng.gen_range(0..names.len());
        let id = l.logsch.identity(c);
        let piece = match rng.gen_range(0..3) {
            0 => Piece::Point,
            1 => Piece::Involution {
                swap: names[c] == "N2" && rng.gen_bool(0.7),
            },
            _ => Piece::Pair,
        };
        let part = match piece {
            Piece::Point => terminal(),
            Piece::Involution { .. } => cyclic(2),
            Piece::Pair => codiscrete("h", 2),
        };
        obj_char.extend(std::iter::repeat_n(c, part.num_objects()));
        for m in part.morphisms() {
            let image = match piece {
                Piece::Involution { swap: true } if !part.is_identity(m) => swap_of(c)?,
                _ => id,
            };
            mor_char.push(image);
        }
        parts.push(part);
    }
    let h = Arc::new(coproduct(&parts).ok()?);
    let (x, _, _) = product(&sch, &h).ok()?;
    let (logsch, forget, _) = product(&sch, &l.logsch).ok()?;
    let (nh, mh) = (h.num_objects(), h.num_morphisms());
    let (nl, ml) = (l.logsch.num_objects(), l.logsch.num_morphisms());
    let objects = (0..x.num_objects()).map(|o| (o / nh) * nl + obj_char[o % nh]).collect();
    let morphisms = (0..x.num_morphisms())
        .map(|m| (m / mh) * ml + mor_char[m % mh])
        .collect();
    let m = FunctorData::new(x.clone(), logsch.clone(), objects, morphisms).ok()?;
    let fits = |c: &FiniteCategory| c.num_objects() <= bounds.objects && c.num_morphisms() <= bounds.morphisms;
    if !fits(&x) || !fits(&logsch) {
        return None;
    }
    let cfg = LogCfg::new(m, forget).ok()?;
    let p = phi(&cfg).ok()?;
    fits(p.category()).then_some(cfg)
}

fn curve_datum(rng: &mut ChaCha8Rng) -> Option<CurvePointDatum> {
    let k = rng.gen_range(0..=2);
    let q = if k == 1 && rng.gen_bool(0.3) {
        FgMonoid::in_lattice(1, &[vec![2], vec![3]]).ok()?
    } else {
        FgMonoid::free(k)
    };
    let mut shape = rng.gen_range(0..3);
    if q.is_trivial() && shape == 2 {
        shape = 1;
    }
    let dq = q.dim();
    let h = match shape {
        0 => MonoidHom::identity(&q),
        1 => {
            let mut gens: Vec<Vec<i64>> = q
                .generators()
                .iter()
                .map(|g| {
                    let mut v = g.to_vec();
                    v.push(0);
                    v
                })
                .collect();
            gens.push((0..=dq).map(|i| i64::from(i == dq)).collect());
            let p = FgMonoid::in_lattice(dq + 1, &gens).ok()?;
            let matrix = (0..=dq).map(|i| (0..dq).map(|j| i64::from(i == j)).collect()).collect();
            MonoidHom::new(q, p, matrix).ok()?
        }
        _ => {
            let q0 = random_element(rng, &q);
            let f = MonoidHom::new(FgMonoid::free(1), q, q0.coords().iter().map(|&x| vec![x]).collect()).ok()?;
            let delta =
                IntegralMono::new(MonoidHom::new(FgMonoid::free(1), FgMonoid::free(2), vec![vec![1], vec![1]]).ok()?)
                    .ok()?;
            monoid_pushout(&delta, &f).ok()?.in_r
        }
    };
    let d = CurvePointDatum::new(h).ok()?;
    match structure_classify(&d).ok()? {
        CurveStructure::Smooth | CurveStructure::Marked { .. } | CurveStructure::Node { .. } => Some(d),
    }
}

fn point_datum(rng: &mut ChaCha8Rng, bounds: &GenBounds) -> Option<CharLogPointDatum> {
    let k = rng.gen_range(1..=bounds.rank.clamp(1, 3));
    let mx = if rng.gen_bool(0.5) {
        FgMonoid::free(k)
    } else {
        random_positive_monoid(rng, k, 2)
    };
    let my = FgMonoid::free(rng.gen_range(0..=2));
    let p = FgMonoid::free(rng.gen_range(1..=2));
    let mut matrix = |rows: usize| -> Vec<Vec<i64>> {
        (0..rows)
            .map(|_| (0..k).map(|_| rng.gen_range(0..=1)).collect())
            .collect()
    };
    let (am, hm) = (matrix(my.dim()), matrix(p.dim()));
    let a = MonoidHom::new(mx.clone(), my, am).ok()?;
    let h = MonoidHom::new(mx, p, hm).ok()?;
    CharLogPointDatum::new(a, h).ok()
}
