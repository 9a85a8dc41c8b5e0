use super::quantities::effective;
use super::{FixedComponent, LinClass};

/// `Strict` checks every congruence; `Weak` keeps only the identities that
/// follow from the vanishing of the first Pontryagin class (`z^2` and `z^1`
/// terms and the mod-`n` congruences), dropping the mod-2 conditions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CcrMode {
    #[default]
    Strict,
    Weak,
}

#[derive(Clone, Debug)]
pub struct CcrCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct CcrReport {
    pub checks: Vec<CcrCheck>,
}

impl CcrReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CcrCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: String) {
        self.checks.push(CcrCheck { name: name.into(), pass, detail });
    }
}

/// Checks the conditions that the equivariant `p_1` of `V - T` vanishes
/// along `F`:
///
/// * `ccr-z-3`: `sum d m = sum d' m' (mod 2)`,
/// * `ccr-z-2`: `sum d m^2 = sum d' m'^2`,
/// * `ccr-z-1`: `sum m c_1(T(m)) = sum m' c_1(V(m'))`,
///
/// and, for each order `n` in `orders`, the consequence
/// `K = sum_{0<r<n/2} r (c_1 T_r - c_1 V_r) = 0 (mod n)` for odd `n`, or
/// `K = 0 (mod n/2)` and `K/(n/2) = c_1(V_h - T_h) (mod 2)` for even `n`.
pub fn ccr_validate(f: &FixedComponent, orders: &[u64], mode: CcrMode) -> CcrReport {
    let ng = f.ngens();
    let mut rep = CcrReport::default();
    let sum = |l: &[super::BundleSummand], g: &dyn Fn(&super::BundleSummand) -> i64| l.iter().map(g).sum::<i64>();

    if mode == CcrMode::Strict {
        let a = sum(&f.t, &|s| s.d() * s.m);
        let b = sum(&f.v, &|s| s.d() * s.m);
        rep.push("ccr-z-3", (a - b).rem_euclid(2) == 0, format!("sum dm = {a}, sum d'm' = {b}"));
    }
    let a = sum(&f.t, &|s| s.d() * s.m * s.m);
    let b = sum(&f.v, &|s| s.d() * s.m * s.m);
    rep.push("ccr-z-2", a == b, format!("sum dm^2 = {a}, sum d'm'^2 = {b}"));

    let lin = |l: &[super::BundleSummand]| l.iter().fold(LinClass::zero(ng), |acc, s| acc.add(&s.c1(ng).scale(s.m)));
    let (lt, lv) = (lin(&f.t), lin(&f.v));
    rep.push(
        "ccr-z-1",
        lt == lv,
        format!("sum m c1(T) = {}, sum m' c1(V) = {}", lt.fmt_with(&f.ring), lv.fmt_with(&f.ring)),
    );

    for &n in orders {
        if n < 2 {
            continue;
        }
        let ni = n as i64;
        let te = effective(&f.t, n);
        let ve = effective(&f.v, n);
        let mut k = LinClass::zero(ng);
        let mut h_block = LinClass::zero(ng);
        for (list, sign) in [(&te, 1i64), (&ve, -1i64)] {
            for s in list.iter() {
                let c1 = s.roots.iter().fold(LinClass::zero(ng), |acc, x| acc.add(x));
                if s.dec.r > 0 && 2 * s.dec.r < ni {
                    k = k.add(&c1.scale(sign * s.dec.r));
                }
                if n % 2 == 0 && 2 * s.dec.r == ni {
                    h_block = h_block.sub(&c1.scale(sign));
                }
            }
        }
        if n % 2 == 1 {
            rep.push(
                format!("ccr-z-n[n={n}]"),
                k.gens_divisible_by(ni),
                format!("K = {} must vanish mod {n}", k.fmt_with(&f.ring)),
            );
        } else {
            let h = ni / 2;
            let div = k.gens_divisible_by(h);
            rep.push(
                format!("ccr-z-n[n={n}]"),
                div,
                format!("K = {} must vanish mod {h}", k.fmt_with(&f.ring)),
            );
            if mode == CcrMode::Strict {
                let parity = div && k.gens_div(h).sub(&h_block).gens_divisible_by(2);
                rep.push(
                    format!("ccr-z-n-parity[n={n}]"),
                    parity,
                    format!(
                        "K/h = {} against c1(V_h - T_h) = {} mod 2",
                        k.gens_div(h).fmt_with(&f.ring),
                        h_block.fmt_with(&f.ring)
                    ),
                );
            }
        }
    }
    rep
}
