use serde::Serialize;

use super::config::{configuration_type, Configuration, Info};
use super::{make_link, LinkDescriptor};
use crate::arith::{linear_factor, Field, MultiPoly};
use crate::error::{Error, Result};
use crate::hirzebruch::{FmCurve, FmPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    /// Links centered at the transversal point `p`.
    Transversal,
    /// Links centered at the double point `s`.
    Singular,
}

/// Predicted values use `None` for "no claim".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub c2: Option<i64>,
    pub s2: Option<i64>,
    pub k: Option<i64>,
    pub i_ps: Option<i64>,
    pub m: Option<u32>,
}

impl Prediction {
    fn first_mismatch(&self, actual: &Info) -> Option<(&'static str, String, String)> {
        fn cmp<T: PartialEq + ToString>(
            name: &'static str,
            p: Option<T>,
            a: Option<T>,
        ) -> Option<(&'static str, String, String)> {
            match p {
                Some(v) if Some(&v) != a.as_ref() => Some((
                    name,
                    v.to_string(),
                    a.map_or_else(|| "•".to_string(), |x| x.to_string()),
                )),
                _ => None,
            }
        }
        cmp("C^2", self.c2, Some(actual.c2))
            .or_else(|| cmp("S^2", self.s2, actual.s2))
            .or_else(|| cmp("type", self.k, actual.k))
            .or_else(|| cmp("I_p(C,S)", self.i_ps, actual.i_ps))
            .or_else(|| cmp("m", self.m, Some(actual.m)))
    }
}

/// One link of a chain with the predicted and recomputed data after it.
#[derive(Clone, Debug, Serialize)]
pub struct StepRecord<K: Field> {
    pub link: LinkDescriptor<K>,
    pub predicted: Prediction,
    pub actual: Info,
    /// Multiplicity of the new curve at the inverse point: predicted, found.
    pub inverse_multiplicity: (u32, u32),
    #[serde(skip)]
    pub config: Configuration<K>,
}

/// Hypotheses and outcome of a landing statement for a whole chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LandingCheck {
    pub predicted: Info,
    pub actual: Info,
    /// The final section is `S_−`.
    pub section_is_s_minus: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainTrace<K: Field> {
    pub kind: ChainKind,
    #[serde(skip)]
    pub initial: Configuration<K>,
    pub initial_info: Info,
    pub steps: Vec<StepRecord<K>>,
    /// Cumulative prediction for the final configuration.
    pub cumulative: Prediction,
    pub landing: Option<LandingCheck>,
}

impl<K: Field> ChainTrace<K> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_config(&self) -> &Configuration<K> {
        self.steps.last().map_or(&self.initial, |s| &s.config)
    }

    pub fn final_info(&self) -> Info {
        self.steps.last().map_or(self.initial_info, |s| s.actual)
    }

    pub fn config_at(&self, i: usize) -> &Configuration<K> {
        if i == 0 {
            &self.initial
        } else {
            &self.steps[i - 1].config
        }
    }

    pub fn info_at(&self, i: usize) -> Info {
        if i == 0 {
            self.initial_info
        } else {
            self.steps[i - 1].actual
        }
    }

    /// The chain run backwards through the inverse links, starting from the
    /// final configuration.
    pub fn inverse(&self) -> Result<ChainTrace<K>> {
        let links = self
            .steps
            .iter()
            .rev()
            .map(|s| s.link.inverse())
            .collect::<Result<Vec<_>>>()?;
        let kind = match self.kind {
            ChainKind::Transversal => ChainKind::Singular,
            ChainKind::Singular => ChainKind::Transversal,
        };
        run_chain(
            self.final_config(),
            kind,
            links.into_iter().map(Some).collect(),
        )
    }
}

fn section_tangent_at_p<K: Field>(cfg: &Configuration<K>, info: &Info) -> bool {
    match (&cfg.section, info.i_ps) {
        (Some(sec), Some(i)) => i >= 1 && i == cfg.curve.class().dot(&sec.class()),
        _ => false,
    }
}

fn section_misses_or_tangent<K: Field>(cfg: &Configuration<K>, info: &Info) -> bool {
    match (&cfg.section, info.i_ps) {
        (Some(sec), Some(i)) => i == cfg.curve.class().dot(&sec.class()),
        _ => false,
    }
}

/// Root of a linear binary form `A·X + B·Y`.
fn linear_root<K: Field>(l: &MultiPoly<K>) -> Result<[K; 2]> {
    if l.degree() != Some(1) {
        return Err(Error::Consistency(format!("{} is not linear", l)));
    }
    let a = l.coeff_of(&[1, 0]);
    let b = l.coeff_of(&[0, 1]);
    Ok([-b, a])
}

/// The point of `C` on the fiber of `s` other than `s`, when `s` absorbs
/// `a − 1` of the `a` intersections.
pub(crate) fn cofibered_point<K: Field>(c: &FmCurve<K>, s: &FmPoint<K>) -> Result<FmPoint<K>> {
    let r = c.restrict_to_fiber(&s.y);
    if r.is_zero() {
        return Err(Error::FiberComponent);
    }
    let lin = linear_factor(&s.x);
    let q = r.exact_div(&lin.pow(c.a() - 1)).ok_or_else(|| {
        Error::Consistency(format!("{} is not an {}-fold fiber point", s, c.a() - 1))
    })?;
    FmPoint::new(c.m(), linear_root(&q)?, s.y.clone())
}

fn step_with<K: Field>(
    cfg: &Configuration<K>,
    info: &Info,
    kind: ChainKind,
    link: Option<LinkDescriptor<K>>,
) -> Result<StepRecord<K>> {
    let a = cfg.a() as i64;
    let center = match kind {
        ChainKind::Transversal => cfg.p.clone(),
        ChainKind::Singular => {
            let k = info.k.unwrap_or(-1);
            if k < 1 {
                return Err(Error::Precondition(format!(
                    "singular links need type >= 1, got {}",
                    k
                )));
            }
            cfg.s
                .clone()
                .ok_or_else(|| Error::Precondition("no double point s".into()))?
        }
    };
    let link = match link {
        Some(l) => l,
        None => make_link(cfg.m(), &center)?,
    };
    if link.center != center {
        return Err(Error::Precondition(format!(
            "link centered at {} but the chain needs {}",
            link.center, center
        )));
    }
    let curve = link.apply(&cfg.curve)?;
    let section = cfg.section.as_ref().map(|s| link.apply(s)).transpose()?;
    let markers = cfg
        .markers
        .iter()
        .map(|(n, q)| Ok((n.clone(), link.map_point(q)?)))
        .collect::<Result<Vec<_>>>()?;
    let (s, p, expected_mult) = match kind {
        ChainKind::Transversal => {
            let s = link.inverse_point.clone();
            let p = cofibered_point(&curve, &s)?;
            (if a >= 2 { Some(s) } else { None }, p, (a - 1) as u32)
        }
        ChainKind::Singular => {
            let p = link.inverse_point.clone();
            let s = if a == 3 {
                configuration_type(&curve, &p)?.1
            } else {
                None
            };
            (s, p, 1)
        }
    };
    let found_mult = curve.multiplicity_at(&link.inverse_point)?;
    let mut next = Configuration::new(curve, section, s, p)?;
    next.markers = markers;
    let actual = next.info()?;

    let through_p = section_tangent_at_p(cfg, info);
    let predicted = match kind {
        ChainKind::Transversal => Prediction {
            c2: Some(info.c2 + a * a - 2 * a),
            s2: info.s2.map(|s2| {
                if cfg.section.as_ref().is_some_and(|s| s.contains(&cfg.p)) {
                    s2 - 1
                } else {
                    s2 + 1
                }
            }),
            k: info.k.map(|k| k + 2),
            i_ps: if through_p {
                info.i_ps.map(|i| i - 1)
            } else {
                None
            },
            m: Some(link.target_m),
        },
        ChainKind::Singular => Prediction {
            c2: Some(info.c2 - 3),
            s2: info.s2.map(|s2| s2 + 1),
            k: info.k.map(|k| k - 2),
            i_ps: if section_misses_or_tangent(cfg, info) {
                info.i_ps.map(|i| i + 1)
            } else {
                None
            },
            m: Some(link.target_m),
        },
    };
    if let Some((what, p, a)) = predicted.first_mismatch(&actual) {
        return Err(Error::Consistency(format!(
            "{} after link {}: predicted {}, found {}",
            what, link, p, a
        )));
    }
    if found_mult != expected_mult {
        return Err(Error::Consistency(format!(
            "multiplicity at the inverse point: predicted {}, found {}",
            expected_mult, found_mult
        )));
    }
    Ok(StepRecord {
        link,
        predicted,
        actual,
        inverse_multiplicity: (expected_mult, found_mult),
        config: next,
    })
}

fn run_chain<K: Field>(
    cfg: &Configuration<K>,
    kind: ChainKind,
    links: Vec<Option<LinkDescriptor<K>>>,
) -> Result<ChainTrace<K>> {
    let n = links.len() as i64;
    let a = cfg.a() as i64;
    let initial_info = cfg.info()?;
    let mut steps: Vec<StepRecord<K>> = Vec::with_capacity(links.len());
    for link in links {
        let (c, i) = match steps.last() {
            Some(s) => (&s.config, s.actual),
            None => (cfg, initial_info),
        };
        steps.push(step_with(c, &i, kind, link)?);
    }
    let info = initial_info;
    let cumulative = match kind {
        ChainKind::Transversal => Prediction {
            c2: Some(info.c2 + n * (a * a - 2 * a)),
            s2: if section_tangent_at_p(cfg, &info) {
                info.s2.map(|s| s - n)
            } else {
                None
            },
            k: info.k.map(|k| k + 2 * n),
            i_ps: if section_tangent_at_p(cfg, &info) {
                info.i_ps.map(|i| i - n)
            } else {
                None
            },
            m: None,
        },
        ChainKind::Singular => Prediction {
            c2: Some(info.c2 - 3 * n),
            s2: if section_misses_or_tangent(cfg, &info) {
                info.s2.map(|s| s + n)
            } else {
                None
            },
            k: info.k.map(|k| k - 2 * n),
            i_ps: if section_misses_or_tangent(cfg, &info) {
                info.i_ps.map(|i| i + n)
            } else {
                None
            },
            m: None,
        },
    };
    let mut trace = ChainTrace {
        kind,
        initial: cfg.clone(),
        initial_info,
        steps,
        cumulative,
        landing: None,
    };
    let fin = trace.final_info();
    if let Some((what, p, a)) = cumulative.first_mismatch(&fin) {
        return Err(Error::Consistency(format!(
            "{} after {} links: predicted {}, found {}",
            what, n, p, a
        )));
    }
    trace.landing = match kind {
        ChainKind::Transversal => transversal_landing(cfg, &info, n as u32)?,
        ChainKind::Singular => singular_landing_hypotheses(cfg, &info, n as u32)
            .map(|_| predicted_singular_landing(info.m, n as u32, info.k.unwrap())),
    }
    .map(|predicted| {
        let fc = trace.final_config();
        let section_is_s_minus = fc
            .section
            .as_ref()
            .is_some_and(|s| s.same_curve(&FmCurve::s_minus(fc.m())));
        let class_ok = kind == ChainKind::Singular || fc.curve.b() == a * fc.m() as i64;
        LandingCheck {
            predicted,
            actual: fin,
            section_is_s_minus,
            holds: predicted == fin
                && class_ok
                && (kind == ChainKind::Singular || section_is_s_minus),
        }
    });
    if let Some(l) = &trace.landing {
        if !l.holds {
            return Err(Error::Consistency(format!(
                "landing predicted {}, found {}",
                l.predicted, l.actual
            )));
        }
    }
    Ok(trace)
}

/// When the section is tangent at `p`, `S² ≤ n ≤ I_p(S,C)` and
/// `C² = 2an − a²S²`, the chain lands on `F_{n−S²}` with `S' = S_−` and
/// `C' ~ a·S_+`; returns the predicted final info in that case.
pub fn transversal_landing<K: Field>(
    cfg: &Configuration<K>,
    info: &Info,
    n: u32,
) -> Result<Option<Info>> {
    let (Some(s2), Some(i)) = (info.s2, info.i_ps) else {
        return Ok(None);
    };
    let a = cfg.a() as i64;
    let n = n as i64;
    if !cfg.is_tangent()? || s2 > n || n > i || info.c2 != 2 * a * n - a * a * s2 {
        return Ok(None);
    }
    let m = (n - s2) as u32;
    Ok(Some(Info {
        c2: a * a * m as i64,
        s2: Some(-(m as i64)),
        k: info.k.map(|k| k + 2 * n),
        i_ps: Some(i - n),
        m,
    }))
}

fn singular_landing_hypotheses<K: Field>(
    cfg: &Configuration<K>,
    info: &Info,
    n: u32,
) -> Option<()> {
    let m = cfg.m();
    let sec = cfg.section.as_ref()?;
    let k = info.k?;
    let ok = cfg.a() == 3
        && cfg.curve.b() == 3 * m as i64
        && sec.same_curve(&FmCurve::s_minus(m))
        && (n as i64 - m as i64).rem_euclid(2) == 1
        && info.c2 - 3 * n as i64 <= 17
        && k >= 1
        && 2 * n as i64 <= k + 1;
    ok.then_some(())
}

/// `[9m − 3n, −m + n, k − 2n, n; 1]`.
pub fn predicted_singular_landing(m: u32, n: u32, k: i64) -> Info {
    let (m, n) = (m as i64, n as i64);
    Info {
        c2: 9 * m - 3 * n,
        s2: Some(n - m),
        k: Some(k - 2 * n),
        i_ps: Some(n),
        m: 1,
    }
}

pub fn transversal_step<K: Field>(cfg: &Configuration<K>) -> Result<StepRecord<K>> {
    step_with(cfg, &cfg.info()?, ChainKind::Transversal, None)
}

pub fn singular_step<K: Field>(cfg: &Configuration<K>) -> Result<StepRecord<K>> {
    step_with(cfg, &cfg.info()?, ChainKind::Singular, None)
}

/// `n` links, each centered at the current transversal point.
pub fn transversal_chain<K: Field>(cfg: &Configuration<K>, n: usize) -> Result<ChainTrace<K>> {
    if let (Some(_), Some(i)) = (&cfg.section, cfg.tangency()?) {
        if cfg.is_tangent()? && n as i64 > i {
            return Err(Error::Precondition(format!(
                "chain of {} links exceeds I_p(S,C) = {}",
                n, i
            )));
        }
    }
    run_chain(cfg, ChainKind::Transversal, vec![None; n])
}

/// `n ≤ ⌈k/2⌉` links, each centered at the current double point.
pub fn singular_chain<K: Field>(cfg: &Configuration<K>, n: usize) -> Result<ChainTrace<K>> {
    let k = cfg.info()?.k.unwrap_or(-1);
    if k < 1 || 2 * n as i64 > k + 1 {
        return Err(Error::Precondition(format!(
            "a singular chain of {} links needs type >= {}, got {}",
            n,
            2 * n as i64 - 1,
            k
        )));
    }
    run_chain(cfg, ChainKind::Singular, vec![None; n])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Node index, 0 for the initial configuration.
    pub step: usize,
    pub quantity: String,
    pub cached: String,
    pub recomputed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub checks: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl TraceReport {
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Recomputes every cached quantity of a trace from the stored curves and
/// reports the first disagreement.
pub fn verify_trace<K: Field>(t: &ChainTrace<K>) -> TraceReport {
    let mut checks = 0usize;
    let report = |step: usize, quantity: &str, cached: String, recomputed: String| {
        Some(Mismatch {
            step,
            quantity: quantity.to_string(),
            cached,
            recomputed,
        })
    };
    let mut first = None;
    let mut check = |step: usize, quantity: &str, cached: String, recomputed: String| -> bool {
        checks += 1;
        if cached != recomputed {
            first = report(step, quantity, cached, recomputed);
            false
        } else {
            true
        }
    };
    let fields = |i: &Info| {
        [
            ("C^2", i.c2.to_string()),
            ("S^2", opt(i.s2)),
            ("type", opt(i.k)),
            ("I_p(C,S)", opt(i.i_ps)),
            ("m", i.m.to_string()),
        ]
    };
    'outer: for node in 0..=t.len() {
        let cfg = t.config_at(node);
        let cached = t.info_at(node);
        let recomputed = match cfg.validate().and_then(|_| cfg.info()) {
            Ok(i) => i,
            Err(e) => {
                check(node, "configuration", "valid".into(), e.to_string());
                break;
            }
        };
        for ((name, c), (_, r)) in fields(&cached).into_iter().zip(fields(&recomputed)) {
            if !check(node, name, c, r) {
                break 'outer;
            }
        }
        if node == 0 {
            continue;
        }
        let step = &t.steps[node - 1];
        let prev = t.config_at(node - 1);
        let pushed = match step.link.apply(&prev.curve) {
            Ok(c) => c.same_curve(&cfg.curve).to_string(),
            Err(e) => e.to_string(),
        };
        if !check(node, "C = link(previous C)", "true".into(), pushed) {
            break;
        }
        if let Some((name, p, a)) = step.predicted.first_mismatch(&recomputed) {
            check(node, &format!("{} (predicted)", name), p, a);
            break;
        }
        let delta = match t.kind {
            ChainKind::Transversal => 2,
            ChainKind::Singular => -2,
        };
        if let (Some(k0), Some(k1)) = (t.info_at(node - 1).k, recomputed.k) {
            if !check(
                node,
                "type change",
                delta.to_string(),
                (k1 - k0).to_string(),
            ) {
                break;
            }
        }
        let mult = cfg
            .curve
            .multiplicity_at(&step.link.inverse_point)
            .map_or_else(|e| e.to_string(), |v| v.to_string());
        if !check(
            node,
            "multiplicity at inverse point",
            step.inverse_multiplicity.0.to_string(),
            mult,
        ) {
            break;
        }
        let dm = (recomputed.m as i64 - t.info_at(node - 1).m as i64).abs();
        if !check(node, "|m change|", "1".into(), dm.to_string()) {
            break;
        }
    }
    TraceReport {
        checks,
        first_mismatch: first,
    }
}

fn opt(v: Option<i64>) -> String {
    v.map_or_else(|| "•".to_string(), |x| x.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, FieldDescriptor, QuadFieldElement};

    type Q = QuadFieldElement;

    fn curve(m: u32, s: &str) -> FmCurve<Q> {
        FmCurve::new(m, parse_poly(s, 4, FieldDescriptor::RATIONAL).unwrap()).unwrap()
    }

    fn f0_config() -> Configuration<Q> {
        let c = curve(
            0,
            "x0^3*(y0 + 7*y1) + x0^2*x1*(21*y0 + 35*y1) + x0*x1^2*(35*y0 + 21*y1) + x1^3*(7*y0 + y1)",
        );
        let s = curve(0, "x0*y1^2 - x1*y0^2");
        Configuration::new(c, Some(s), None, FmPoint::from_ints(0, [1, 1, 1, -1])).unwrap()
    }

    #[test]
    fn f0_chain_lands_on_f3() {
        let t = transversal_chain(&f0_config(), 7).unwrap();
        assert_eq!(t.final_info().to_string(), "[27,-3,13,0;3]");
        assert!(t.landing.as_ref().unwrap().holds);
        assert!(verify_trace(&t).ok());
    }

    #[test]
    fn inverse_chain_returns_home() {
        let cfg = f0_config();
        let t = transversal_chain(&cfg, 4).unwrap();
        let back = t.inverse().unwrap();
        assert_eq!(back.kind, ChainKind::Singular);
        assert!(back.final_config().curve.same_curve(&cfg.curve));
        assert_eq!(back.final_config().p, cfg.p);
        assert_eq!(back.final_info(), t.initial_info);
    }

    #[test]
    fn singular_chain_on_witness_and_back() {
        let t = transversal_chain(&f0_config(), 7).unwrap();
        let start = t.final_config().clone();
        let sing = singular_chain(&start, 6).unwrap();
        assert_eq!(sing.final_info().to_string(), "[9,3,1,6;1]");
        assert!(sing.landing.as_ref().unwrap().holds);
        assert!(verify_trace(&sing).ok());
        let back = sing.inverse().unwrap();
        assert_eq!(back.kind, ChainKind::Transversal);
        let fin = back.final_config();
        assert!(fin.curve.same_curve(&start.curve));
        assert_eq!(fin.p, start.p);
        assert!(fin
            .section
            .as_ref()
            .unwrap()
            .same_curve(start.section.as_ref().unwrap()));
        assert!(singular_chain(&start, 8).is_err());
    }

    #[test]
    fn singular_landing_formula() {
        assert_eq!(
            predicted_singular_landing(3, 6, 14).to_string(),
            "[9,3,2,6;1]"
        );
        let k = 20;
        let i = predicted_singular_landing(4, 9, k);
        assert_eq!((i.c2, i.s2, i.i_ps, i.m), (9, Some(5), Some(9), 1));
    }

    #[test]
    fn corrupted_trace_is_flagged() {
        let mut t = transversal_chain(&f0_config(), 3).unwrap();
        t.steps[1].actual.c2 += 1;
        let r = verify_trace(&t);
        let m = r.first_mismatch.unwrap();
        assert_eq!((m.step, m.quantity.as_str()), (2, "C^2"));
    }

    #[test]
    fn empty_chains() {
        let cfg = f0_config();
        let t = transversal_chain(&cfg, 0).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.final_info(), t.initial_info);
        assert!(singular_chain(&cfg, 1).is_err());
    }
}
