//! Seeded random scenarios and the invariant suite run over them.
//!
//! Generation only emits scenarios that certify (rejection sampling), so a
//! failure here is always an invariant failure, never an input problem.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algext::{conjugate_distances_by_resultant, AlgebraicElement};
use crate::basefield::{BaseField, PAdicRationals, TAdicFunctionField, ValuedField};
use crate::error::{Error, Result};
use crate::exactpoly::{Field, Poly, RationalFunctionField};
use crate::gaussval::GaussValuation;
use crate::minpair::MinimalPair;
use crate::ordvals::OrderedValue;
use crate::report::{analyze_in, AnalysisReport};
use crate::scenario::{build_pair, format_poly, MinimalitySpec, Scenario, SCHEMA_VERSION};
use crate::verifier::{self, Status};

pub const PROPERTIES: [&str; 14] = [
    "analysis",
    "thm_1_1",
    "lemma_4_1",
    "eq_7_ic_degree",
    "cor_5_3",
    "distance_oracle",
    "vg_multiplicativity",
    "vg_ultrametric",
    "vg_restriction",
    "graded_reduce_multiplicativity",
    "fjhqe_degree",
    "j_monotone",
    "linear_check",
    "report_roundtrip",
];

#[derive(Clone, Copy, Debug)]
pub struct HarnessConfig {
    pub seed: u64,
    pub count: usize,
    /// Random checks of each valuation axiom per scenario.
    pub vg_checks: usize,
    /// Random unit pairs for graded-reduction multiplicativity per scenario.
    pub unit_pairs: usize,
}

impl HarnessConfig {
    pub fn new(seed: u64, count: usize) -> Self {
        HarnessConfig {
            seed,
            count,
            vg_checks: 2,
            unit_pairs: 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyFailure {
    pub property: String,
    pub message: String,
    pub minimized: Scenario,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarnessSummary {
    pub seed: u64,
    pub scenarios: usize,
    pub rejected_candidates: usize,
    pub properties: BTreeMap<String, Counts>,
    pub failures: Vec<PropertyFailure>,
}

impl HarnessSummary {
    pub fn all_passed(&self) -> bool {
        self.properties.values().all(|c| c.failed == 0)
    }

    pub fn count(&self, property: &str) -> &Counts {
        &self.properties[property]
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "seed {} scenarios {} (rejected {})\n",
            self.seed, self.scenarios, self.rejected_candidates
        );
        for (name, c) in &self.properties {
            s.push_str(&format!("  {name:<32} passed {:>6}  failed {:>4}\n", c.passed, c.failed));
        }
        for f in &self.failures {
            s.push_str(&format!("FAILED {}: {}\n{}\n", f.property, f.message, f.minimized.to_json()));
        }
        if self.all_passed() {
            s.push_str("all properties passed\n");
        }
        s
    }
}

/// Outcome of one property on one scenario; several entries per property
/// when it is checked repeatedly.
type Outcomes = Vec<(&'static str, std::result::Result<(), String>)>;

pub fn run(cfg: HarnessConfig) -> HarnessSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut summary = HarnessSummary {
        seed: cfg.seed,
        scenarios: cfg.count,
        rejected_candidates: 0,
        properties: PROPERTIES.iter().map(|p| (p.to_string(), Counts::default())).collect(),
        failures: Vec::new(),
    };
    for index in 0..cfg.count {
        let (sc, rejected) = generate(&mut rng);
        summary.rejected_candidates += rejected;
        let check_seed = rng.gen::<u64>();
        let outcomes = check(&sc, check_seed, &cfg);
        let mut failed: BTreeMap<&str, String> = BTreeMap::new();
        for (name, r) in outcomes {
            let c = summary.properties.get_mut(name).expect("known property");
            match r {
                Ok(()) => c.passed += 1,
                Err(m) => {
                    c.failed += 1;
                    failed.entry(name).or_insert(m);
                }
            }
        }
        for (name, message) in failed {
            let minimized = minimize(&sc, name, check_seed, &cfg);
            summary.failures.push(PropertyFailure {
                property: name.into(),
                message: format!("scenario #{index}: {message}"),
                minimized,
            });
        }
    }
    summary
}

/// Runs all properties on one scenario.
pub fn check(sc: &Scenario, seed: u64, cfg: &HarnessConfig) -> Outcomes {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = match sc.base {
        BaseField::Qp { p } => check_in(&PAdicRationals::new(p), sc, &mut rng, cfg),
        BaseField::Fpt { p } => check_in(&TAdicFunctionField::new(p), sc, &mut rng, cfg),
    };
    r.unwrap_or_else(|e| vec![("analysis", Err(e.to_string()))])
}

fn verdict_ok(report: &AnalysisReport, name: &str) -> std::result::Result<(), String> {
    for v in report.verdicts_named(name) {
        if v.status == Status::Fail {
            return Err(v.message.clone());
        }
    }
    Ok(())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_in<K: ValuedField>(k: &K, sc: &Scenario, rng: &mut ChaCha8Rng, cfg: &HarnessConfig) -> Result<Outcomes> {
    let (report, gv) = analyze_in(k, sc)?;
    let pair = gv.pair();
    let a = pair.element();
    let mut out: Outcomes = vec![("analysis", Ok(()))];
    for name in [verifier::THM_1_1, verifier::LEMMA_4_1, verifier::EQ_7, verifier::COR_5_3] {
        let name: &'static str = PROPERTIES.iter().find(|p| **p == name).expect("listed");
        out.push((name, verdict_ok(&report, name)));
    }

    let oracle = conjugate_distances_by_resultant(a.min_poly())?;
    out.push((
        "distance_oracle",
        ensure(&oracle == a.conjugate_distances(), || {
            format!("Taylor {} vs resultant {oracle}", a.conjugate_distances())
        }),
    ));

    for _ in 0..cfg.vg_checks {
        out.extend(valuation_axioms(&gv, rng)?);
    }
    for _ in 0..cfg.unit_pairs {
        out.push(("graded_reduce_multiplicativity", graded_multiplicativity(&gv, rng)?));
    }

    if pair.rank() == 1 {
        let d = gv.fjhqe_degree()?;
        out.push((
            "fjhqe_degree",
            ensure(d == Some(gv.j()), || format!("deg (f^j h Q^E)v = {d:?}, j = {}", gv.j())),
        ));
    }

    let step = OrderedValue::from_ratio(1, *[1, 2, 3].choose(rng).expect("nonempty")).embed(pair.rank())?;
    let bigger = pair.gamma().checked_add(&step)?;
    let (p2, _) = MinimalPair::certify(pair.element_arc().clone(), bigger.clone(), &[])?;
    let (j1, j2) = (pair.compute_j()?, p2.compute_j()?);
    out.push((
        "j_monotone",
        ensure(j2 <= j1, || format!("j({}) = {j1} < j({bigger}) = {j2}", pair.gamma())),
    ));

    let ord = rng.gen_range(-1..=3);
    let b = random_elem(k, rng, ord);
    let (direct, predicted) = gv.linear_check(&b)?;
    out.push((
        "linear_check",
        ensure(direct == predicted, || {
            format!("v(X - {}) = {direct}, predicted {predicted}", k.format(&b))
        }),
    ));

    let json = serde_json::to_string(&report).map_err(|e| Error::Internal(e.to_string()))?;
    let back: std::result::Result<AnalysisReport, _> = serde_json::from_str(&json);
    out.push((
        "report_roundtrip",
        ensure(back.as_ref().ok() == Some(&report), || format!("round trip differs: {back:?}")),
    ));
    Ok(out)
}

/// `u = Σ_{i<3} c_i π^i` with `c_0 ≠ 0`, occasionally divided by another
/// such unit.
fn random_unit<K: ValuedField>(k: &K, rng: &mut impl Rng) -> K::Elem {
    let p = k.prime();
    let draw = |rng: &mut dyn rand::RngCore| {
        let mut u = k.from_residue(rng.gen_range(1..p));
        for i in 1..3 {
            let c = k.from_residue(rng.gen_range(0..p));
            u = k.add(&u, &k.mul(&c, &k.uniformizer_pow(i)));
        }
        u
    };
    let u = draw(rng);
    if rng.gen_ratio(1, 4) {
        let d = draw(rng);
        k.div(&u, &d).expect("unit")
    } else {
        u
    }
}

/// A random element of valuation exactly `ord`.
pub fn random_elem<K: ValuedField>(k: &K, rng: &mut impl Rng, ord: i64) -> K::Elem {
    k.mul(&random_unit(k, rng), &k.uniformizer_pow(ord))
}

/// A nonzero polynomial of degree `<= max_deg` with sparse random coefficients.
pub fn random_poly<K: ValuedField>(k: &K, rng: &mut impl Rng, max_deg: usize) -> Poly<K> {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            let ord = rng.gen_range(-1..=2);
            c.push(if rng.gen_ratio(1, 3) { k.zero() } else { random_elem(k, rng, ord) });
        }
        let p = Poly::new(k.clone(), c);
        if !p.is_zero() {
            return p;
        }
    }
}

fn valuation_axioms<K: ValuedField>(gv: &GaussValuation<K>, rng: &mut ChaCha8Rng) -> Result<Outcomes> {
    let k = gv.pair().element().base();
    let n = gv.pair().element().degree();
    let f = random_poly(k, rng, n + 1);
    let g = random_poly(k, rng, n + 1);
    let (vf, vg) = (gv.vg_eval(&f)?, gv.vg_eval(&g)?);
    let vfg = gv.vg_eval(&(&f * &g))?;
    let sum = vf.checked_add(&vg)?;
    let mult = ensure(vfg == sum, || format!("v({f}·{g}) = {vfg}, v + v = {sum}"));

    let vs = gv.vg_eval(&(&f + &g))?;
    let lower = vf.clone().min_of(vg.clone())?;
    let mut ultra = ensure(vs.compare(&lower)?.is_ge(), || format!("v({f} + {g}) = {vs} < {lower}"));
    if ultra.is_ok() && vf != vg {
        ultra = ensure(vs == lower, || format!("v({f} + {g}) = {vs}, but values {vf} != {vg}"));
    }

    let ord = rng.gen_range(-3..=3);
    let c = random_elem(k, rng, ord);
    let vc = gv.vg_eval(&Poly::constant(k.clone(), c.clone()))?;
    let want = k.valuation(&c).embed(gv.rank())?;
    let restr = ensure(vc == want, || format!("v({}) = {vc}, base value {want}", k.format(&c)));
    Ok(vec![
        ("vg_multiplicativity", mult),
        ("vg_ultrametric", ultra),
        ("vg_restriction", restr),
    ])
}

/// A random `v_{a,γ}`-unit `N/D` of `K(X)`: `A·c·Q^m / B` with the monomial
/// `c` and exponent `m` chosen to cancel `v(A) - v(B)`.
pub fn random_unit_fraction<K: ValuedField>(gv: &GaussValuation<K>, rng: &mut impl Rng) -> Result<(Poly<K>, Poly<K>)> {
    let a = gv.pair().element();
    let k = a.base();
    let n = a.degree();
    let num = random_poly(k, rng, n + 1);
    let den = random_poly(k, rng, n + 1);
    let w = &gv.vg_eval(&den)? - &gv.vg_eval(&num)?;
    for m in (0..=64i64).flat_map(|m| [m, -m]).skip(1) {
        let u = &w - &gv.v_q().scale(m);
        if !gv.vka().contains(&u)? {
            continue;
        }
        let target = u.leading().ok_or(Error::InfiniteValue)?;
        let c = a
            .element_of_value(target)
            .ok_or_else(|| Error::Internal(format!("no monomial of value {u}")))?;
        let q = a.min_poly();
        let (qn, qd) = if m >= 0 {
            (q.pow(m as u64), Poly::one(k.clone()))
        } else {
            (Poly::one(k.clone()), q.pow((-m) as u64))
        };
        let n_poly = &(&num * &c) * &qn;
        let d_poly = &den * &qd;
        let v = gv.vg_eval_rat(&n_poly, &d_poly)?;
        if !v.is_zero() {
            return Err(Error::Internal(format!("constructed unit has value {v}")));
        }
        return Ok((n_poly, d_poly));
    }
    Err(Error::Internal(format!("{w} is not in vK(X)")))
}

/// `(xy)v = xv · yv` for one random pair of units.
pub fn graded_multiplicativity<K: ValuedField>(gv: &GaussValuation<K>, rng: &mut impl Rng) -> Result<std::result::Result<(), String>> {
    let (n1, d1) = random_unit_fraction(gv, rng)?;
    let (n2, d2) = random_unit_fraction(gv, rng)?;
    let r1 = gv.graded_reduce(&n1, &d1)?;
    let r2 = gv.graded_reduce(&n2, &d2)?;
    let r12 = gv.graded_reduce(&(&n1 * &n2), &(&d1 * &d2))?;
    let field = RationalFunctionField::new(gv.pair().element().residue_field().clone());
    let prod = field.mul(&r1.value, &r2.value);
    if r1.value.is_zero() || r2.value.is_zero() {
        return Ok(Err(format!("unit reduced to zero: {r1}, {r2}")));
    }
    Ok(ensure(prod == r12.value, || {
        format!("({n1}/{d1})·({n2}/{d2}): {r1} · {r2} != {r12}")
    }))
}

const PRIMES: [u64; 3] = [2, 3, 5];

/// One certified random scenario and the number of rejected candidates.
pub fn generate(rng: &mut ChaCha8Rng) -> (Scenario, usize) {
    let p = *PRIMES.choose(rng).expect("nonempty");
    if rng.gen_bool(0.5) {
        generate_in(&PAdicRationals::new(p), rng)
    } else {
        generate_in(&TAdicFunctionField::new(p), rng)
    }
}

fn generate_in<K: ValuedField>(k: &K, rng: &mut ChaCha8Rng) -> (Scenario, usize) {
    let mut rejected = 0;
    loop {
        let q = random_min_poly(k, rng);
        let a = match AlgebraicElement::certify(k.clone(), q.clone()) {
            Ok(a) => a,
            Err(_) => {
                rejected += 1;
                continue;
            }
        };
        let Some(gamma) = random_gamma(&a, rng) else {
            rejected += 1;
            continue;
        };
        let sc = Scenario {
            schema_version: SCHEMA_VERSION,
            id: String::new(),
            description: String::new(),
            base: k.descriptor(),
            q: format_poly(&q),
            gamma,
            minimality: MinimalitySpec::krasner(),
            expect: None,
            equivalents: Vec::new(),
            subfields: Vec::new(),
        };
        if build_pair(k, &sc.q, &sc.gamma, &sc.minimality).is_err() {
            rejected += 1;
            continue;
        }
        return (
            Scenario {
                id: format!("rand-{}", k.descriptor()),
                ..sc
            },
            rejected,
        );
    }
}

/// Eisenstein, unramified, binomial or general single-slope shapes of degree
/// at most 4.
fn random_min_poly<K: ValuedField>(k: &K, rng: &mut ChaCha8Rng) -> Poly<K> {
    let p = k.prime();
    // degrees divisible by p carry the wild and inseparable cases where j > 1
    let n = if p <= 4 && rng.gen_bool(0.35) {
        p as usize * rng.gen_range(1..=4 / p as usize)
    } else {
        rng.gen_range(1..=4usize)
    };
    let mut c: Vec<K::Elem> = vec![k.zero(); n];
    match rng.gen_range(0..4) {
        0 => {
            c[0] = random_elem(k, rng, 1);
            for ci in c.iter_mut().skip(1) {
                if rng.gen_bool(0.5) {
                    let ord = rng.gen_range(1..=2);
                    *ci = random_elem(k, rng, ord);
                }
            }
        }
        1 => {
            for ci in c.iter_mut() {
                *ci = k.from_residue(rng.gen_range(0..p));
                if rng.gen_bool(0.3) {
                    *ci = k.add(ci, &random_elem(k, rng, 1));
                }
            }
        }
        2 => {
            let ord = rng.gen_range(-2..=3);
            c[0] = k.neg(&random_elem(k, rng, ord));
        }
        _ => {
            let h = rng.gen_range(-1..=3i64);
            c[0] = random_elem(k, rng, h);
            for (i, ci) in c.iter_mut().enumerate().skip(1) {
                if rng.gen_bool(0.5) {
                    let min = ((n - i) as i64 * h).div_euclid(n as i64) + 1;
                    let ord = min + rng.gen_range(0..=1);
                    *ci = random_elem(k, rng, ord);
                }
            }
        }
    }
    c.push(k.one());
    Poly::new(k.clone(), c)
}

/// `γ` on a grid with denominators in {1, 2, 3, 4, 6}: beyond the Krasner
/// radius, or (for totally ramified `a`) between `v(a)` and it; sometimes of
/// rank 2.
fn random_gamma<K: ValuedField>(a: &AlgebraicElement<K>, rng: &mut ChaCha8Rng) -> Option<OrderedValue> {
    let d = *[1i64, 2, 3, 4, 6].choose(rng).expect("nonempty");
    let step = OrderedValue::from_ratio(rng.gen_range(1..=6), d);
    let va = OrderedValue::rational(a.value().clone());
    let first = if a.degree() == 1 {
        OrderedValue::from_ratio(rng.gen_range(-6..=12), d)
    } else {
        let ramified = a.e() == a.degree() as u64;
        match a.kras() {
            Some(kr) if !(ramified && rng.gen_bool(0.6)) => kr.checked_add(&step).ok()?,
            _ if ramified => va.checked_add(&step).ok()?,
            _ => return None,
        }
    };
    if rng.gen_ratio(1, 5) {
        let second = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        let c = first.leading()?.clone();
        Some(OrderedValue::pair(c, num_rational::BigRational::from_integer(second.into())))
    } else {
        Some(first)
    }
}

/// Greedy shrinking: simplify coefficients and `γ` while the property still
/// fails on a scenario that still certifies.
pub fn minimize(sc: &Scenario, property: &str, seed: u64, cfg: &HarnessConfig) -> Scenario {
    let fails = |s: &Scenario| check(s, seed, cfg).iter().any(|(n, r)| *n == property && r.is_err());
    let p = sc.base.prime() as i64;
    let simple: Vec<String> = ["0", "1", "-1"]
        .iter()
        .map(|s| s.to_string())
        .chain([p.to_string(), (-p).to_string()])
        .collect();
    let mut best = sc.clone();
    for _ in 0..8 {
        let mut improved = false;
        for i in 0..best.q.len().saturating_sub(1) {
            for cand in &simple {
                if &best.q[i] == cand {
                    break;
                }
                let mut trial = best.clone();
                trial.q[i] = cand.clone();
                if fails(&trial) {
                    best = trial;
                    improved = true;
                    break;
                }
            }
        }
        if let Some(g) = best.gamma.leading().cloned() {
            let rounded = OrderedValue::rational(num_rational::BigRational::from_integer(g.ceil().to_integer()));
            let target = match best.gamma.rank() {
                Some(2) => OrderedValue::pair(
                    rounded.leading().expect("finite").clone(),
                    best.gamma.coords().expect("finite")[1].clone(),
                ),
                _ => rounded,
            };
            if target != best.gamma {
                let trial = Scenario {
                    gamma: target,
                    ..best.clone()
                };
                if fails(&trial) {
                    best = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    best
}
