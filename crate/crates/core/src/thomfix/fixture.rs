use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use super::{BundleSummand, FixedComponent, LinClass, SpecialPointData};
use crate::equivrep::VirtualRep;
use crate::error::{Error, Result};
use crate::lattice::{special_points, SpecialPointSource};
use crate::nilpotent::{Generator, NilpotentRing};
use crate::theta::ThetaFunction;

/// A special point in the coordinates of the character lattice, with the
/// orientation signs of every component.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialSpec {
    pub coords: (f64, f64),
    pub n: u64,
    pub delta: Vec<u8>,
    pub delta_prime: Vec<u8>,
    /// Components of `X^{Z/n}`, as lists of indices into the model's
    /// components. `None` falls back to the model's groups.
    pub groups: Option<Vec<Vec<usize>>>,
}

impl SpecialSpec {
    pub fn data(&self, theta: &dyn ThetaFunction) -> Result<SpecialPointData> {
        SpecialPointData::new(theta, self.coords, self.n)
    }
}

/// Fixed-point data of a circle manifold: components of the fixed set,
/// isotropy orders, and (optionally) an explicit list of special points.
#[derive(Clone, Debug)]
pub struct FixedPointModel {
    pub name: String,
    pub components: Vec<FixedComponent>,
    pub isotropy: Vec<u64>,
    pub special: Option<Vec<SpecialSpec>>,
    pub groups: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorJson {
    name: String,
    degree: u32,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntegralJson {
    Monomial(String),
    Weighted(BTreeMap<String, i64>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RingJson {
    #[serde(default)]
    generators: Vec<GeneratorJson>,
    cap: u32,
    integral: Option<IntegralJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RootJson {
    Term(String, i64),
    Terms(Vec<(String, i64)>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SummandJson {
    m: i64,
    d: Option<usize>,
    roots: Option<Vec<RootJson>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentJson {
    name: Option<String>,
    ring: Option<RingJson>,
    #[serde(rename = "T", default)]
    t: Vec<SummandJson>,
    #[serde(rename = "V", default)]
    v: Vec<SummandJson>,
    #[serde(rename = "T0", default)]
    t0: Vec<RootJson>,
    #[serde(rename = "V0", default)]
    v0: Vec<RootJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DeltaJson {
    All(u8),
    Each(Vec<u8>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecialJson {
    a: (f64, f64),
    n: u64,
    delta: Option<DeltaJson>,
    delta_prime: Option<DeltaJson>,
    groups: Option<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    name: Option<String>,
    ring: Option<RingJson>,
    #[serde(rename = "T")]
    t: Option<Vec<SummandJson>>,
    #[serde(rename = "V")]
    v: Option<Vec<SummandJson>>,
    #[serde(rename = "T0")]
    t0: Option<Vec<RootJson>>,
    #[serde(rename = "V0")]
    v0: Option<Vec<RootJson>>,
    components: Option<Vec<ComponentJson>>,
    #[serde(default)]
    isotropy: Vec<u64>,
    special: Option<Vec<SpecialJson>>,
    groups: Option<Vec<Vec<usize>>>,
}

fn prefix_schema(prefix: &str, e: Error) -> Error {
    match e {
        Error::Schema { path, message } => Error::schema(format!("{prefix}{path}"), message),
        other => other,
    }
}

fn build_ring(j: Option<&RingJson>, path: &str) -> Result<Arc<NilpotentRing>> {
    let Some(j) = j else { return Ok(NilpotentRing::point()) };
    let gens: Vec<Generator> =
        j.generators.iter().map(|g| Generator { name: g.name.clone(), degree: g.degree }).collect();
    for (i, g) in gens.iter().enumerate() {
        if gens[..i].iter().any(|h| h.name == g.name) {
            return Err(Error::schema(format!("{path}ring.generators[{i}].name"), format!("duplicate generator {}", g.name)));
        }
    }
    let mut integral = Vec::new();
    let mono = |s: &str| {
        NilpotentRing::parse_monomial(&gens, s).map_err(|m| Error::schema(format!("{path}ring.integral"), m))
    };
    match &j.integral {
        None if gens.is_empty() => integral.push((vec![], 1)),
        None => {}
        Some(IntegralJson::Monomial(s)) => integral.push((mono(s)?, 1)),
        Some(IntegralJson::Weighted(map)) => {
            for (s, w) in map {
                integral.push((mono(s)?, *w));
            }
        }
    }
    NilpotentRing::new(gens, j.cap, integral).map_err(|e| prefix_schema(path, e))
}

fn build_root(ring: &NilpotentRing, r: &RootJson, path: &str) -> Result<LinClass> {
    let terms: Vec<(String, i64)> = match r {
        RootJson::Term(n, c) => vec![(n.clone(), *c)],
        RootJson::Terms(t) => t.clone(),
    };
    let mut x = LinClass::zero(ring.generators().len());
    for (name, c) in terms {
        let i = ring
            .generator_index(&name)
            .ok_or_else(|| Error::schema(path, format!("unknown generator {name:?}")))?;
        if ring.generators()[i].degree != 2 {
            return Err(Error::schema(path, format!("roots must have degree 2, but {name} has degree {}", ring.generators()[i].degree)));
        }
        x.gens[i] += c;
    }
    Ok(x)
}

fn build_component(
    name: String,
    ring: Option<&RingJson>,
    t: &[SummandJson],
    v: &[SummandJson],
    t0: &[RootJson],
    v0: &[RootJson],
    path: &str,
) -> Result<FixedComponent> {
    let ring = build_ring(ring, path)?;
    let ng = ring.generators().len();
    let mut fixed = [Vec::new(), Vec::new()];
    let mut lists = [Vec::new(), Vec::new()];
    for (k, (key, src)) in [("T", t), ("V", v)].into_iter().enumerate() {
        for (i, s) in src.iter().enumerate() {
            let p = format!("{path}{key}[{i}]");
            let roots = match &s.roots {
                Some(rs) => rs
                    .iter()
                    .enumerate()
                    .map(|(j, r)| build_root(&ring, r, &format!("{p}.roots[{j}]")))
                    .collect::<Result<Vec<_>>>()?,
                None => {
                    let d = s.d.ok_or_else(|| Error::schema(format!("{p}.d"), "either d or roots is required"))?;
                    vec![LinClass::zero(ng); d]
                }
            };
            if let Some(d) = s.d {
                if d != roots.len() {
                    return Err(Error::schema(format!("{p}.d"), format!("d = {d} but {} roots given", roots.len())));
                }
            }
            if roots.is_empty() {
                return Err(Error::schema(format!("{p}.d"), "a summand needs positive rank"));
            }
            if s.m == 0 {
                fixed[k].extend(roots);
            } else {
                lists[k].push(BundleSummand::new(s.m, roots));
            }
        }
    }
    for (k, (key, src)) in [("T0", t0), ("V0", v0)].into_iter().enumerate() {
        for (i, r) in src.iter().enumerate() {
            fixed[k].push(build_root(&ring, r, &format!("{path}{key}[{i}]"))?);
        }
    }
    let [t0, v0] = fixed;
    let [t, v] = lists;
    Ok(FixedComponent { name, ring, t, v, t0, v0 })
}

fn expand_delta(d: Option<&DeltaJson>, count: usize, path: &str) -> Result<Vec<u8>> {
    let out = match d {
        None => vec![0; count],
        Some(DeltaJson::All(x)) => vec![*x; count],
        Some(DeltaJson::Each(v)) => {
            if v.len() != count {
                return Err(Error::schema(path, format!("expected {count} entries, one per component, got {}", v.len())));
            }
            v.clone()
        }
    };
    if out.iter().any(|&x| x > 1) {
        return Err(Error::schema(path, "orientation signs take values 0 or 1"));
    }
    Ok(out)
}

fn check_groups(groups: &[Vec<usize>], count: usize, path: &str) -> Result<()> {
    let mut seen = vec![false; count];
    for (i, g) in groups.iter().enumerate() {
        for &c in g {
            if c >= count {
                return Err(Error::schema(format!("{path}[{i}]"), format!("component index {c} out of range")));
            }
            if seen[c] {
                return Err(Error::schema(format!("{path}[{i}]"), format!("component {c} listed twice")));
            }
            seen[c] = true;
        }
    }
    Ok(())
}

impl FixedPointModel {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let j: ModelJson = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::schema(e.path().to_string(), e.inner().to_string()))?;

        let single = j.ring.is_some() || j.t.is_some() || j.v.is_some() || j.t0.is_some() || j.v0.is_some();
        let components = match (&j.components, single) {
            (Some(_), true) => {
                return Err(Error::schema("components", "give either a components list or a single component, not both"))
            }
            (Some(list), false) => list
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    build_component(
                        c.name.clone().unwrap_or_else(|| format!("F{i}")),
                        c.ring.as_ref(),
                        &c.t,
                        &c.v,
                        &c.t0,
                        &c.v0,
                        &format!("components[{i}]."),
                    )
                })
                .collect::<Result<Vec<_>>>()?,
            (None, true) => vec![build_component(
                "F0".into(),
                j.ring.as_ref(),
                j.t.as_deref().unwrap_or(&[]),
                j.v.as_deref().unwrap_or(&[]),
                j.t0.as_deref().unwrap_or(&[]),
                j.v0.as_deref().unwrap_or(&[]),
                "",
            )?],
            (None, false) => return Err(Error::schema("components", "no fixed-point data")),
        };
        let count = components.len();

        let groups = match j.groups {
            Some(g) => {
                check_groups(&g, count, "groups")?;
                g
            }
            None => (0..count).map(|i| vec![i]).collect(),
        };
        if j.isotropy.contains(&0) {
            return Err(Error::schema("isotropy", "isotropy orders must be positive"));
        }

        let special = match j.special {
            None => None,
            Some(list) => {
                let mut out = Vec::new();
                for (i, sp) in list.iter().enumerate() {
                    let p = format!("special[{i}]");
                    if sp.n < 2 {
                        return Err(Error::schema(format!("{p}.n"), "order must be at least 2"));
                    }
                    let delta = expand_delta(sp.delta.as_ref(), count, &format!("{p}.delta"))?;
                    let delta_prime = expand_delta(sp.delta_prime.as_ref(), count, &format!("{p}.delta_prime"))?;
                    if sp.n % 2 == 1 && (delta.iter().any(|&d| d != 0) || delta_prime.iter().any(|&d| d != 0)) {
                        return Err(Error::schema(format!("{p}.delta"), "orientation signs must vanish at points of odd order"));
                    }
                    if sp.n % 2 == 0 {
                        let h = sp.n as i64 / 2;
                        for (c, comp) in components.iter().enumerate() {
                            let has = |l: &[BundleSummand]| l.iter().any(|s| s.m.rem_euclid(sp.n as i64) == h);
                            if delta[c] == 1 && !has(&comp.t) {
                                return Err(Error::schema(format!("{p}.delta"), format!("component {c} has no summand of T with m = n/2 mod n")));
                            }
                            if delta_prime[c] == 1 && !has(&comp.v) {
                                return Err(Error::schema(format!("{p}.delta_prime"), format!("component {c} has no summand of V with m = n/2 mod n")));
                            }
                        }
                    }
                    if let Some(g) = &sp.groups {
                        check_groups(g, count, &format!("{p}.groups"))?;
                    }
                    out.push(SpecialSpec { coords: sp.a, n: sp.n, delta, delta_prime, groups: sp.groups.clone() });
                }
                Some(out)
            }
        };

        Ok(FixedPointModel { name: j.name.unwrap_or_else(|| "fixture".into()), components, isotropy: j.isotropy, special, groups })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let s = std::fs::read_to_string(path)?;
        Self::from_json_str(&s)
    }

    /// The one-point model of a virtual representation.
    pub fn from_virtual_rep(f: &VirtualRep) -> Self {
        FixedPointModel {
            name: f.to_string(),
            components: vec![FixedComponent::from_virtual_rep(f)],
            isotropy: vec![],
            special: None,
            groups: vec![vec![0]],
        }
    }

    /// The listed special points, or else every nonzero special point
    /// derived from the isotropy and rotation data, with zero orientation
    /// signs.
    pub fn special_specs(&self, theta: &dyn ThetaFunction) -> Result<Vec<SpecialSpec>> {
        if let Some(s) = &self.special {
            return Ok(s.clone());
        }
        let ch = theta.character();
        let lat = ch.lattice();
        let count = self.components.len();
        let mut orders: Vec<u64> = self.isotropy.clone();
        orders.extend(self.rotation_numbers().iter().map(|m| m.unsigned_abs()));
        let max = orders.into_iter().max().unwrap_or(1) * ch.level();
        let mut out = Vec::new();
        for p in special_points(lat, self, ch.level())? {
            let n = lat.torsion_order(p.z, max).unwrap_or(1);
            if n < 2 {
                continue;
            }
            out.push(SpecialSpec { coords: p.coords(), n, delta: vec![0; count], delta_prime: vec![0; count], groups: None });
        }
        Ok(out)
    }

    pub fn groups_for<'a>(&'a self, spec: &'a SpecialSpec) -> &'a [Vec<usize>] {
        spec.groups.as_deref().unwrap_or(&self.groups)
    }
}

impl SpecialPointSource for FixedPointModel {
    fn isotropy_orders(&self) -> Vec<u64> {
        self.isotropy.clone()
    }

    fn rotation_numbers(&self) -> Vec<i64> {
        self.components.iter().flat_map(|c| c.rotation_numbers()).collect()
    }
}
