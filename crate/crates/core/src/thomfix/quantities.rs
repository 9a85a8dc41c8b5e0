use num_rational::Rational64;

use super::{BundleSummand, FixedComponent, LinClass, SpecialPointData};

/// `m = n l + r` for the (possibly sign-flipped) rotation number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RotationDecomposition {
    pub ell: i64,
    pub r: i64,
    pub flipped: bool,
    pub m_eff: i64,
}

/// Writes `m` or `-m` as `n l + r` with `0 <= r <= n/2`. Residues `0` and
/// `n/2` are never flipped.
pub fn decompose(m: i64, n: u64) -> RotationDecomposition {
    let n = n as i64;
    let r = m.rem_euclid(n);
    if 2 * r > n {
        let mf = -m;
        let rf = mf.rem_euclid(n);
        RotationDecomposition { ell: (mf - rf) / n, r: rf, flipped: true, m_eff: mf }
    } else {
        RotationDecomposition { ell: (m - r) / n, r, flipped: false, m_eff: m }
    }
}

/// A summand written in the sign convention adapted to a special point.
#[derive(Clone, Debug)]
pub struct EffectiveSummand {
    pub dec: RotationDecomposition,
    pub roots: Vec<LinClass>,
}

impl EffectiveSummand {
    pub fn new(s: &BundleSummand, n: u64) -> Self {
        let dec = decompose(s.m, n);
        let roots = if dec.flipped { s.roots.iter().map(|x| x.scale(-1)).collect() } else { s.roots.clone() };
        EffectiveSummand { dec, roots }
    }

    pub fn d(&self) -> i64 {
        self.roots.len() as i64
    }

    /// `d m z + sum x` in the effective signs.
    pub fn c1_equivariant(&self, ngens: usize) -> LinClass {
        let mut c = self.roots.iter().fold(LinClass::zero(ngens), |acc, x| acc.add(x));
        c.z += self.d() * self.dec.m_eff;
        c
    }
}

pub(crate) fn effective(list: &[BundleSummand], n: u64) -> Vec<EffectiveSummand> {
    list.iter().map(|s| EffectiveSummand::new(s, n)).collect()
}

/// The quantities attached to a component and a special point.
#[derive(Clone, Debug)]
pub struct Quantities {
    pub n: u64,
    pub epsilon: i8,
    pub alpha: Rational64,
    pub g: Rational64,
    /// `H = sum l'(d'm'z + sum x') - sum l(dmz + sum x)`.
    pub h_class: LinClass,
    /// `c_1` of `prod det(V_r)^{-r} det(T_r)^{r}` over `0 < r < n/2`.
    pub c1_script_v: LinClass,
    /// `c_1(V_h) - c_1(T_h)` for even `n` (zero for odd `n`).
    pub c1_h_block: LinClass,
    /// `(r, e_r, e'_r)` for `1 <= r <= n/2`.
    pub ranks: Vec<(i64, i64, i64)>,
}

impl Quantities {
    pub fn alpha_equals_g(&self) -> bool {
        self.alpha == self.g
    }

    /// `c_1(script V) = n H` (odd `n`) or `n H + h (c_1 V_h - c_1 T_h)` (even `n`).
    pub fn root_identity_holds(&self) -> bool {
        let n = self.n as i64;
        let mut rhs = self.h_class.scale(n);
        if self.n % 2 == 0 {
            rhs = rhs.add(&self.c1_h_block.scale(n / 2));
        }
        rhs == self.c1_script_v
    }
}

/// `eps, alpha, G, H` and `c_1(script V)` for `f` at `sp`, with the
/// orientation signs `delta` (of `T_h`) and `delta_prime` (of `V_h`).
pub fn quantities(f: &FixedComponent, sp: &SpecialPointData, delta: u8, delta_prime: u8) -> Quantities {
    let n = sp.n;
    let ni = n as i64;
    let ng = f.ngens();
    let te = effective(&f.t, n);
    let ve = effective(&f.v, n);
    let is_h = |r: i64| n % 2 == 0 && 2 * r == ni;
    let generic = |r: i64| r > 0 && 2 * r < ni;

    let sum_dl = |l: &[EffectiveSummand]| l.iter().map(|s| s.d() * s.dec.ell).sum::<i64>();
    let eps_exp = delta_prime as i64 + sum_dl(&ve) - delta as i64 - sum_dl(&te);
    let epsilon = sp.c_multiple(eps_exp);

    let mut ranks = Vec::new();
    let mut alpha_num = 0i64;
    for r in 1..=(ni / 2) {
        let e = te.iter().filter(|s| s.dec.r == r).map(|s| s.d()).sum::<i64>();
        let ep = ve.iter().filter(|s| s.dec.r == r).map(|s| s.d()).sum::<i64>();
        alpha_num += (ep - e) * r * r;
        ranks.push((r, e, ep));
    }
    let alpha = Rational64::new(-alpha_num, 2 * ni);

    let half_n = Rational64::new(ni, 2);
    let g_part = |l: &[EffectiveSummand]| {
        l.iter().fold(Rational64::from_integer(0), |acc, s| {
            let (d, ell, r) = (s.d(), s.dec.ell, s.dec.r);
            acc + half_n * (d * ell * ell) + Rational64::from_integer(d * ell * r)
        })
    };
    let g = g_part(&ve) - g_part(&te);

    let mut h_class = LinClass::zero(ng);
    let mut c1_script_v = LinClass::zero(ng);
    let mut c1_h_block = LinClass::zero(ng);
    for s in &ve {
        let c = s.c1_equivariant(ng);
        h_class = h_class.add(&c.scale(s.dec.ell));
        if generic(s.dec.r) {
            c1_script_v = c1_script_v.sub(&c.scale(s.dec.r));
        }
        if is_h(s.dec.r) {
            c1_h_block = c1_h_block.add(&c);
        }
    }
    for s in &te {
        let c = s.c1_equivariant(ng);
        h_class = h_class.sub(&c.scale(s.dec.ell));
        if generic(s.dec.r) {
            c1_script_v = c1_script_v.add(&c.scale(s.dec.r));
        }
        if is_h(s.dec.r) {
            c1_h_block = c1_h_block.sub(&c);
        }
    }
    Quantities { n, epsilon, alpha, g, h_class, c1_script_v, c1_h_block, ranks }
}
